use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use surreal_core::deriv::{derive, dominant_path, path_derivative, pre_derive_monomial, DerivationConfig};
use surreal_core::explog;
use surreal_core::integrate::{integrate, Status};
use surreal_core::nested::{check_elt4, check_t4, nested_trunc_le, ntrank, proper_nested_truncations};
use surreal_core::order::{compare, dominance, kappa_compare, level_compare, level_representative, Relation};
use surreal_core::{Coefficient, Error, Monomial, PrecisionContext, Transseries};

use super::{GenSpec, Generator};
use crate::textio::{self, structured, Style};

/// Result of running one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Case index and message of the first failure.
    pub first_failure: Option<(usize, String)>,
    /// Outcome tallies for suites that distinguish kinds of success.
    pub tally: BTreeMap<String, usize>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {}/{} passed (seed {})",
            self.suite, self.passed, self.cases, self.seed
        )?;
        for (k, v) in &self.tally {
            write!(f, " {k}={v}")?;
        }
        if let Some((i, msg)) = &self.first_failure {
            write!(f, "\n  first failure at case {i}: {msg}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

type Outcome = Result<&'static str, String>;
type Case = fn(&mut Generator, &Env) -> Outcome;

struct Env {
    ctx: PrecisionContext,
    spec: GenSpec,
}

const S: DerivationConfig = DerivationConfig::SIMPLEST;
const NK: DerivationConfig = DerivationConfig::NO_KAPPA;

fn d(x: &Transseries, env: &Env) -> Transseries {
    derive(x, &S, &env.ctx)
}

fn mul(x: &Transseries, y: &Transseries, env: &Env) -> Transseries {
    x.mul(y, &env.ctx)
}

/// Equality up to the coarser of the two remainder markers.
fn expect_eq(what: &str, lhs: &Transseries, rhs: &Transseries) -> Outcome {
    let inexact = !lhs.is_exact() || !rhs.is_exact();
    if lhs == rhs || (inexact && lhs.sub(rhs).without_marker().is_zero()) {
        Ok("pass")
    } else {
        Err(format!("{what}: {lhs} != {rhs}"))
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok("pass")
    } else {
        Err(msg())
    }
}

fn leibniz(g: &mut Generator, env: &Env) -> Outcome {
    let (x, y) = (g.value(), g.value());
    let lhs = d(&mul(&x, &y, env), env);
    let rhs = mul(&x, &d(&y, env), env).add(&mul(&y, &d(&x, env), env));
    expect_eq(&format!("x = {x}, y = {y}"), &lhs, &rhs)
}

fn additivity(g: &mut Generator, env: &Env) -> Outcome {
    let xs = [g.value(), g.value(), g.value()];
    let sum = xs.iter().fold(Transseries::zero(), |a, x| a.add(x));
    let dsum = xs.iter().fold(Transseries::zero(), |a, x| a.add(&d(x, env)));
    expect_eq("sum", &d(&sum, env), &dsum)?;
    let q = g.coeff();
    expect_eq("scale", &d(&xs[0].scale(&q), env), &d(&xs[0], env).scale(&q))
}

fn purely_infinite_part(x: &Transseries) -> Transseries {
    let (j, _, _) = x.decompose().expect("exact");
    let j = j.into_inner();
    if j.is_zero() {
        Transseries::omega()
    } else {
        j
    }
}

fn exp_compat(g: &mut Generator, env: &Env) -> Outcome {
    let gamma = purely_infinite_part(&g.value());
    let e = explog::exp(&gamma, &env.ctx).map_err(|e| e.to_string())?;
    expect_eq(&format!("gamma = {gamma}"), &d(&e, env), &mul(&e, &d(&gamma, env), env))
}

fn kernel(g: &mut Generator, env: &Env) -> Outcome {
    let x = if g.rng_bool(0.3) {
        Transseries::from_coeff(g.coeff())
    } else {
        g.value()
    };
    let dx = d(&x, env);
    require(dx.is_zero() == x.is_constant(), || format!("x = {x}, ∂x = {dx}"))
}

fn hfield(g: &mut Generator, env: &Env) -> Outcome {
    let x = g.positive_infinite();
    let dx = d(&x, env);
    match dx.signum() {
        Ok(Some(Ordering::Greater)) => Ok("pass"),
        other => Err(format!("x = {x}, ∂x = {dx}, sign {other:?}")),
    }
}

fn is_unital(x: &Transseries) -> bool {
    x.leading_monomial().is_ok_and(|m| m.is_one())
}

fn monotone(g: &mut Generator, env: &Env) -> Outcome {
    let x = g.value();
    let y = if g.rng_bool(0.5) {
        g.value()
    } else {
        // same leading term, different tail end
        x.add(&g.infinitesimal())
    };
    let r = dominance(&x, &y).map_err(|e| e.to_string())?;
    let (dx, dy) = (d(&x, env), d(&y, env));
    let dr = match dominance(&dx, &dy) {
        Ok(r) => r,
        Err(e) if e.is_indeterminate() => return Ok("indeterminate"),
        Err(e) => return Err(e.to_string()),
    };
    let msg = || format!("x = {x}, y = {y}, ∂x = {dx}, ∂y = {dy}");
    match r.dominance {
        Relation::Below if !y.is_zero() && !is_unital(&y) => require(dr.dominance == Relation::Below, msg)?,
        Relation::Above if !x.is_zero() && !is_unital(&x) => require(dr.dominance == Relation::Above, msg)?,
        _ => "pass",
    };
    if r.asymptotic && !x.is_zero() && !is_unital(&x) {
        require(dr.asymptotic, msg)?;
    }
    Ok("pass")
}

fn loglog(g: &mut Generator, env: &Env) -> Outcome {
    let lam = g.log_atomic(env.spec.kappa_depth);
    let mu = g.log_atomic(env.spec.kappa_depth);
    let top = if lam > mu { lam.clone() } else { mu.clone() };
    for cfg in [S, NK] {
        let a = pre_derive_monomial(&lam, &cfg).expect("atom").log();
        let b = pre_derive_monomial(&mu, &cfg).expect("atom").log();
        let diff = a.sub(&b);
        if diff.is_zero() {
            continue;
        }
        let lead = diff.leading_monomial().map_err(|e| e.to_string())?;
        require(lead < top, || {
            format!("{cfg:?}: lambda = {lam}, mu = {mu}, difference {diff}")
        })?;
    }
    Ok("pass")
}

fn leading_term(g: &mut Generator, env: &Env) -> Outcome {
    let x = g.value();
    if x.is_constant() {
        return Ok("constant");
    }
    let lt = d(&x, env).leading_term().map_err(|e| format!("x = {x}: {e}"))?;
    let p = dominant_path(&x).map_err(|e| e.to_string())?;
    let pd = path_derivative(&p, &S).map_err(|e| e.to_string())?;
    require(lt == pd, || format!("x = {x}: LT(∂x) = {lt}, dominant path gives {pd}"))
}

fn strictly_decreasing(h: &[Monomial]) -> bool {
    h.windows(2).all(|w| w[1] < w[0])
}

fn integrate_roundtrip(g: &mut Generator, env: &Env) -> Outcome {
    let x = g.value();
    if x.is_zero() {
        return Ok("exact");
    }
    let ctx = env.ctx.with_fuel(env.ctx.fuel.min(16));
    match integrate(&x, &S, &ctx) {
        Ok(r) => {
            require(strictly_decreasing(&r.history), || {
                format!("x = {x}: residuals not decreasing")
            })?;
            require(r.residual == x.sub(&derive(&r.antiderivative, &S, &ctx)), || {
                format!("x = {x}: residual mismatch")
            })?;
            match r.status {
                Status::Exact => {
                    let back = derive(&r.antiderivative, &S, &ctx);
                    expect_eq(&format!("∫{x}"), &back, &x)?;
                    Ok("exact")
                }
                Status::Exhausted => {
                    require(!r.residual.is_zero(), || format!("x = {x}: empty residual")).map(|_| "exhausted")
                }
                Status::PrecisionLimit => Ok("precision-limit"),
            }
        }
        Err(Error::NeedsDeeperKappa(_)) => Ok("needs-deeper-kappa"),
        Err(e) => Err(format!("x = {x}: {e}")),
    }
}

fn smallness(g: &mut Generator, env: &Env) -> Outcome {
    let eps = g.infinitesimal();
    let de = d(&eps, env);
    let ok = de.bound().is_none_or(|m| m < Monomial::One);
    require(ok, || format!("eps = {eps}, ∂eps = {de}"))
}

fn rank_monotone(g: &mut Generator, _: &Env) -> Outcome {
    let x = g.value();
    if x.is_zero() {
        return Ok("zero");
    }
    if !x.is_tail_free_deep() {
        return Ok("tails");
    }
    let rx = ntrank(&x).map_err(|e| e.to_string())?;
    for p in proper_nested_truncations(&x).map_err(|e| e.to_string())? {
        let rp = ntrank(&p).map_err(|e| e.to_string())?;
        require(rp < rx, || format!("{p} ⊲ {x} but ranks {rp} >= {rx}"))?;
        require(nested_trunc_le(&p, &x) == Ok(true), || {
            format!("{p} listed but not ⊴ {x}")
        })?;
    }
    Ok("pass")
}

fn rank_props(g: &mut Generator, _: &Env) -> Outcome {
    let x = g.value();
    if !x.is_tail_free_deep() {
        return Ok("tails");
    }
    let m = match x.terms().iter().find(|t| !t.mono.is_one()) {
        Some(t) => t.mono.clone(),
        None => return Ok("constant"),
    };
    let rm = ntrank(&Transseries::monomial(m.clone())).map_err(|e| e.to_string())?;
    let mut r = g.coeff();
    if r.abs().is_one() {
        r *= Coefficient::from_integer(BigInt::from(5));
    }
    let rr = ntrank(&Transseries::term(r.clone(), m.clone())).map_err(|e| e.to_string())?;
    require(rr == rm + 1, || format!("rank({r}*{m}) = {rr}, rank({m}) = {rm}"))?;
    let gamma = m.log();
    let rg = ntrank(&gamma).map_err(|e| e.to_string())?;
    let rneg = ntrank(&Transseries::monomial(m.clone()).neg()).map_err(|e| e.to_string())?;
    require(rm == rg && rneg == rg, || {
        format!("rank(exp({gamma})) = {rm}, rank(gamma) = {rg}")
    })?;
    for t in x.terms().iter().take(x.terms().len().saturating_sub(1)) {
        let rt = ntrank(&Transseries::from_term(t.clone())).map_err(|e| e.to_string())?;
        let rx = ntrank(&x).map_err(|e| e.to_string())?;
        require(rt < rx, || format!("term {t} of {x}: rank {rt} >= {rx}"))?;
    }
    Ok("pass")
}

fn t4(g: &mut Generator, env: &Env) -> Outcome {
    let x = g.value();
    let r = check_t4(&x, &env.ctx);
    require(r.satisfied(), || format!("x = {x}: T4 refuted"))
}

fn elt4(g: &mut Generator, env: &Env) -> Outcome {
    let x = g.value();
    let r = check_elt4(&x, &env.ctx);
    require(r.satisfied(), || format!("x = {x}: path without log-atomic entry"))
}

fn order(g: &mut Generator, _: &Env) -> Outcome {
    let (x, y, z) = (g.value(), g.value(), g.value());
    let c = |a: &Transseries, b: &Transseries| compare(a, b).map_err(|e| e.to_string());
    let (xy, yx, yz, xz) = (c(&x, &y)?, c(&y, &x)?, c(&y, &z)?, c(&x, &z)?);
    require(xy == yx.reverse(), || format!("antisymmetry fails on {x}, {y}"))?;
    require((xy == Ordering::Equal) == (x == y), || {
        format!("equality mismatch on {x}, {y}")
    })?;
    if xy != Ordering::Greater && yz != Ordering::Greater {
        require(xz != Ordering::Greater, || {
            format!("transitivity fails on {x}, {y}, {z}")
        })?;
    }
    Ok("pass")
}

fn exp_homomorphism(g: &mut Generator, env: &Env) -> Outcome {
    let a = purely_infinite_part(&g.value());
    let b = purely_infinite_part(&g.value());
    let e = |x: &Transseries| explog::exp(x, &env.ctx).map_err(|e| e.to_string());
    let (ea, eb) = (e(&a)?, e(&b)?);
    expect_eq("exp(a+b)", &e(&a.add(&b))?, &mul(&ea, &eb, env))?;
    let ord = compare(&a, &b).map_err(|e| e.to_string())?;
    let eord = compare(&ea, &eb).map_err(|e| e.to_string())?;
    require(ord == eord, || format!("exp not monotone on {a}, {b}"))?;
    expect_eq(
        "log(exp(a))",
        &explog::log(&ea, &env.ctx).map_err(|e| e.to_string())?,
        &a,
    )?;
    if a.signum() == Ok(Some(Ordering::Greater)) {
        for n in 1..=5i64 {
            let p = explog::pow(&a, &Coefficient::from_integer(n.into()), &env.ctx).map_err(|e| e.to_string())?;
            let r = dominance(&ea, &p).map_err(|e| e.to_string())?;
            require(r.dominance == Relation::Above, || format!("exp({a}) not ≻ ({a})^{n}"))?;
        }
    }
    Ok("pass")
}

fn levels(g: &mut Generator, _: &Env) -> Outcome {
    let (x, y) = (g.positive_infinite(), g.positive_infinite());
    let e = |r: Result<Relation, Error>| r.map_err(|e| e.to_string());
    if e(level_compare(&x, &y))? == Relation::Equivalent {
        require(e(kappa_compare(&x, &y))? == Relation::Equivalent, || {
            format!("{x} ≍_L {y} but not ≍_K")
        })?;
    }
    let rep = level_representative(&x).map_err(|e| e.to_string())?;
    require(rep.is_atom(), || {
        format!("representative {rep} of {x} is not log-atomic")
    })?;
    if !x.is_tail_free_deep() {
        return Ok("tails");
    }
    let rt = Transseries::monomial(rep.clone());
    require(nested_trunc_le(&rt, &x) == Ok(true), || format!("{rep} is not ⊴ {x}"))
}

fn parse_roundtrip(g: &mut Generator, _: &Env) -> Outcome {
    let x = g.value();
    let plain = textio::format(&x, Style::Plain);
    let back = textio::parse(&plain).map_err(|e| format!("`{plain}`: {e}"))?;
    expect_eq(&format!("parse(`{plain}`)"), &back, &x)?;
    let again = textio::format(&back, Style::Plain);
    require(again == plain, || format!("`{plain}` reformats as `{again}`"))?;
    let tree = structured::encode(&x);
    let dec = structured::decode(&tree).map_err(|e| e.to_string())?;
    expect_eq("structured", &dec, &x)
}

fn ring_laws(g: &mut Generator, env: &Env) -> Outcome {
    let (x, y, z) = (g.value(), g.value(), g.value());
    expect_eq("x+y", &x.add(&y), &y.add(&x))?;
    expect_eq("(x+y)+z", &x.add(&y).add(&z), &x.add(&y.add(&z)))?;
    expect_eq("xy", &mul(&x, &y, env), &mul(&y, &x, env))?;
    expect_eq(
        "(xy)z",
        &mul(&mul(&x, &y, env), &z, env),
        &mul(&x, &mul(&y, &z, env), env),
    )?;
    expect_eq(
        "x(y+z)",
        &mul(&x, &y.add(&z), env),
        &mul(&x, &y, env).add(&mul(&x, &z, env)),
    )?;
    expect_eq("x-x", &x.sub(&x), &Transseries::zero())
}

fn inverse(g: &mut Generator, env: &Env) -> Outcome {
    let x = g.value();
    if x.is_zero() {
        return Ok("zero");
    }
    let inv = x.inverse(&env.ctx).map_err(|e| e.to_string())?;
    let p = mul(&x, &inv, env);
    let one = Transseries::one();
    if x.as_term().is_some() {
        return expect_eq(&format!("{x} * inverse"), &p, &one);
    }
    let ok = p.without_marker() == one && p.marker().is_none_or(|m| *m < Monomial::One);
    require(ok, || format!("{x} * inverse = {p}"))
}

/// Ψ structure: `y(beta)` is a proper truncation of `y(alpha)` and larger.
fn psi(_: &mut Generator, env: &Env) -> Outcome {
    let y = |a: u32| pre_derive_monomial(&Monomial::kappa(a), &S).expect("atom").log();
    for alpha in 0..=env.spec.kappa_depth.max(4) {
        for beta in 0..alpha {
            let (yb, ya) = (y(beta), y(alpha));
            require(yb != ya && yb.is_truncation_of(&ya), || {
                format!("y({beta}) = {yb} not ◁ y({alpha}) = {ya}")
            })?;
            require(compare(&yb, &ya) == Ok(Ordering::Greater), || {
                format!("y({beta}) <= y({alpha})")
            })?;
        }
    }
    Ok("pass")
}

pub const SUITES: &[(&str, &str)] = &[
    ("leibniz", "∂(xy) = x∂y + y∂x"),
    ("additivity", "∂ is additive and Q-linear"),
    ("exp-compat", "∂exp(x) = exp(x)∂x"),
    ("kernel", "∂x = 0 exactly for constants"),
    ("hfield-positivity", "x > N implies ∂x > 0"),
    ("monotone", "∂ respects ≺ and ~ away from 1"),
    ("loglog", "log-log inequality in both derivation modes"),
    ("leading-term", "LT(∂x) is the dominant path derivative"),
    (
        "integrate-roundtrip",
        "integration residuals decrease and exact results differentiate back",
    ),
    ("smallness", "∂ maps infinitesimals to infinitesimals"),
    ("rank-monotone", "rank strictly decreases along ⊲"),
    ("rank-props", "rank(rm) = rank(m)+1 and rank(±exp γ) = rank(γ)"),
    ("t4", "every path satisfies T4"),
    ("elt4", "every explored path enters the log-atomic class"),
    ("order", "compare is antisymmetric and transitive"),
    (
        "exp-homomorphism",
        "exp(a+b) = exp(a)exp(b), monotone, log inverse, fast growth",
    ),
    (
        "levels",
        "≍_L implies ≍_K and representatives are log-atomic nested truncations",
    ),
    ("parse-roundtrip", "parse(format(x)) = x"),
    ("ring-laws", "field axioms on exact values"),
    ("inverse", "x * inverse(x) = 1 + O(m), m < 1"),
    ("psi", "y(beta) is a proper truncation of y(alpha) and larger"),
];

fn case_fn(name: &str) -> Option<Case> {
    Some(match name {
        "leibniz" => leibniz,
        "additivity" => additivity,
        "exp-compat" => exp_compat,
        "kernel" => kernel,
        "hfield-positivity" => hfield,
        "monotone" => monotone,
        "loglog" => loglog,
        "leading-term" => leading_term,
        "integrate-roundtrip" => integrate_roundtrip,
        "smallness" => smallness,
        "rank-monotone" => rank_monotone,
        "rank-props" => rank_props,
        "t4" => t4,
        "elt4" => elt4,
        "order" => order,
        "exp-homomorphism" => exp_homomorphism,
        "levels" => levels,
        "parse-roundtrip" => parse_roundtrip,
        "ring-laws" => ring_laws,
        "inverse" => inverse,
        "psi" => psi,
        _ => return None,
    })
}

fn case_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64)
}

/// Runs `cases` random cases of a suite under the default precision.
/// Case `i` depends only on `(name, spec, i)`, so any failure can be replayed.
pub fn run_suite(name: &str, cases: usize, spec: &GenSpec) -> Result<Report, UnknownSuite> {
    run_suite_with(name, cases, spec, &PrecisionContext::default())
}

pub fn run_suite_with(
    name: &str,
    cases: usize,
    spec: &GenSpec,
    ctx: &PrecisionContext,
) -> Result<Report, UnknownSuite> {
    let f = case_fn(name).ok_or_else(|| UnknownSuite(name.to_string()))?;
    let env = Env { ctx: *ctx, spec: *spec };
    let mut report = Report {
        suite: name.to_string(),
        seed: spec.seed,
        cases,
        passed: 0,
        failed: 0,
        first_failure: None,
        tally: BTreeMap::new(),
    };
    for i in 0..cases {
        let mut g = Generator::new(spec.with_seed(case_seed(spec.seed, i)));
        match f(&mut g, &env) {
            Ok(kind) => {
                report.passed += 1;
                if kind != "pass" {
                    *report.tally.entry(kind.to_string()).or_default() += 1;
                }
            }
            Err(msg) => {
                report.failed += 1;
                if report.first_failure.is_none() {
                    report.first_failure = Some((i, msg));
                }
            }
        }
    }
    Ok(report)
}

impl Generator {
    fn rng_bool(&mut self, p: f64) -> bool {
        use rand::Rng;
        self.rng().gen_bool(p)
    }
}
