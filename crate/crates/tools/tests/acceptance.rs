//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
use std::path::PathBuf;
use std::time::{Duration, Instant};

use surreal_core::deriv::{derive, DerivationConfig};
use surreal_core::integrate::{integrate, Status};
use surreal_core::{Monomial, PrecisionContext, Transseries};
use surreal_tools::bench::universe::{self, UniverseReport};
use surreal_tools::bench::{run_suite, GenSpec, Generator, Report};
use surreal_tools::textio::{format, parse, Style};

const S: DerivationConfig = DerivationConfig::SIMPLEST;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn suites(names: &[&str], cases: usize, spec: &GenSpec) -> Check {
    let mut notes = Vec::new();
    for name in names {
        let r: Report = run_suite(name, cases, spec).map_err(|e| e.to_string())?;
        if !r.ok() {
            return Err(r.to_string());
        }
        notes.push(format!("{name} {}/{}", r.passed, r.cases));
    }
    Ok(notes.join(", "))
}

fn universe_ok(what: &str, r: UniverseReport) -> Check {
    if r.ok() {
        Ok(format!("{what} {}/{}", r.checked, r.size))
    } else {
        Err(format!("{what}: {}", r.failures.join("; ")))
    }
}

fn within(t: Instant, limit: Duration) -> Check {
    let e = t.elapsed();
    if e <= limit {
        Ok(format!("{:.2}s", e.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.2}s, limit {:.0}s",
            e.as_secs_f64(),
            limit.as_secs_f64()
        ))
    }
}

fn eq(what: &str, got: &Transseries, want: &Transseries) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

fn exact_identities() -> Check {
    let t = Instant::now();
    let c = ctx();
    let d = |x: &Transseries| derive(x, &S, &c);
    eq("∂w", &d(&Transseries::omega()), &Transseries::one())?;
    for n in 1..=4 {
        let want = (1..=n).fold(Transseries::one(), |acc, i| acc.mul(&Transseries::atom(0, i), &c));
        eq(&format!("∂exp_{n}(w)"), &d(&Transseries::atom(0, n)), &want)?;
        let den = (0..n).fold(Transseries::one(), |acc, i| acc.mul(&Transseries::atom(0, -i), &c));
        let want = den.inverse(&c).map_err(|e| e.to_string())?;
        eq(&format!("∂log_{n}(w)"), &d(&Transseries::atom(0, -n)), &want)?;
    }
    let minus_tail = Transseries::tail(0, 1, -Transseries::one().as_constant().unwrap());
    let want = Transseries::monomial(Monomial::from_log(&minus_tail).map_err(|e| e.to_string())?);
    eq("∂k(-1)", &d(&Transseries::kappa(1)), &want)?;
    within(t, Duration::from_secs(1))
}

fn axioms() -> Check {
    let t = Instant::now();
    let names = ["leibniz", "additivity", "exp-compat", "kernel", "hfield-positivity"];
    let notes = suites(&names, 1000, &GenSpec::default().with_seed(1))?;
    Ok(format!("{notes}, {}", within(t, Duration::from_secs(30))?))
}

fn loglog() -> Check {
    let spec = GenSpec {
        kappa_depth: 4,
        ..GenSpec::default().with_seed(2)
    };
    suites(&["loglog"], 500, &spec)
}

fn leading_term() -> Check {
    suites(&["leading-term"], 1000, &GenSpec::default().with_seed(3))
}

fn integration() -> Check {
    let c = ctx();
    let w = Transseries::omega();
    let logw = Transseries::atom(0, -1);
    let cases = [
        ("1", Transseries::one(), w.clone()),
        ("1/w", w.inverse(&c).unwrap(), logw.clone()),
        ("log w", logw.clone(), w.mul(&logw, &c).sub(&w)),
        ("exp w", Transseries::atom(0, 1), Transseries::atom(0, 1)),
    ];
    for (name, x, want) in cases {
        let r = integrate(&x, &S, &c.with_fuel(3)).map_err(|e| format!("∫{name}: {e}"))?;
        if r.status != Status::Exact || !r.residual.is_zero() || r.steps > 3 {
            return Err(format!(
                "∫{name}: {:?} after {} steps, residual {}",
                r.status, r.steps, r.residual
            ));
        }
        eq(&format!("∫{name}"), &r.antiderivative, &want)?;
    }
    let fuel = c.with_fuel(8);
    let (mut exact, mut exhausted) = (0, 0);
    for i in 0..200u64 {
        let x = Generator::new(GenSpec::default().with_seed(5000 + i)).value();
        if x.is_zero() {
            exact += 1;
            continue;
        }
        let r = integrate(&x, &S, &fuel).map_err(|e| format!("∫{x}: {e}"))?;
        if !r.history.windows(2).all(|h| h[1] < h[0]) {
            return Err(format!("∫{x}: residuals not decreasing"));
        }
        match r.status {
            Status::Exact => {
                eq(&format!("∂∫{x}"), &derive(&r.antiderivative, &S, &c), &x)?;
                exact += 1;
            }
            Status::Exhausted => exhausted += 1,
            Status::PrecisionLimit => return Err(format!("∫{x}: precision limit")),
        }
    }
    let small = suites(&["smallness"], 50, &GenSpec::default().with_seed(5))?;
    Ok(format!(
        "closed forms ok, random exact {exact} exhausted {exhausted}, {small}"
    ))
}

fn rank(u: &[Transseries]) -> Check {
    let spec = GenSpec::default().with_seed(6);
    let s = suites(&["rank-props", "rank-monotone"], 500, &spec)?;
    let z = universe_ok("rank-zero", universe::check_rank_zero(u))?;
    Ok(format!("{s}, {z}"))
}

fn t4(u: &[Transseries]) -> Check {
    let a = universe_ok("universe", universe::check_t4_all(u, &ctx()))?;
    let b = suites(&["t4"], 500, &GenSpec::default().with_seed(7))?;
    Ok(format!("{a}, {b}"))
}

fn psi() -> Check {
    suites(
        &["psi"],
        1,
        &GenSpec {
            kappa_depth: 4,
            ..GenSpec::default()
        },
    )
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn parse_roundtrip() -> Check {
    let s = suites(
        &["parse-roundtrip"],
        1000,
        &GenSpec::default().with_seed(9).with_tails(true),
    )?;
    let inputs = std::fs::read_to_string(golden_dir().join("inputs.txt")).map_err(|e| e.to_string())?;
    for (file, style) in [
        ("plain.golden", Style::Plain),
        ("latex.golden", Style::Latex),
        ("structured.golden", Style::Structured),
    ] {
        let mut out = String::new();
        for src in inputs.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
            let x = parse(src).map_err(|e| format!("`{src}`: {e}"))?;
            out.push_str(&format!("{src}\n  {}\n", format(&x, style)));
        }
        let want = std::fs::read_to_string(golden_dir().join(file)).map_err(|e| e.to_string())?;
        if out != want {
            return Err(format!("{file} differs from the current output"));
        }
    }
    Ok(format!("{s}, golden files stable"))
}

fn main() {
    let u = universe::enumerate(10_000);
    let criteria: Vec<Criterion> = vec![
        ("1 exact derivation identities", Box::new(exact_identities)),
        ("2 derivation axioms", Box::new(axioms)),
        ("3 log-log inequality", Box::new(loglog)),
        ("4 leading term of the derivative", Box::new(leading_term)),
        ("5 integration round trip", Box::new(integration)),
        ("6 rank", Box::new(|| rank(&u))),
        ("7 T4", Box::new(|| t4(&u))),
        ("8 psi structure", Box::new(psi)),
        ("9 parser round trip", Box::new(parse_roundtrip)),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(note) => println!("PASS {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
