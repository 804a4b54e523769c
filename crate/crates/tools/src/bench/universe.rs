//! A finite universe of small exact elements, enumerated in a fixed order.
use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use surreal_core::nested::{check_t4, nested_trunc_le, ntrank};
use surreal_core::order::compare;
use surreal_core::{Coefficient, Monomial, PrecisionContext, Transseries};

fn c(n: i64, d: i64) -> Coefficient {
    Coefficient::new(BigInt::from(n), BigInt::from(d))
}

/// Infinite log-atomic monomials `exp_m(k(-alpha))` for `alpha <= 1`, `|m| <= 2`.
fn atoms() -> Vec<Monomial> {
    let mut v = Vec::new();
    for alpha in 0..=1 {
        for m in -2..=2 {
            v.push(Monomial::atom(alpha, m));
        }
    }
    v
}

/// Monomials of the universe: atoms, their inverses, then `exp(g)` for
/// exponents `g` with one or two atom terms.
pub fn monomials() -> Vec<Monomial> {
    let a = atoms();
    let mut out: Vec<Monomial> = Vec::new();
    let push = |m: Monomial, out: &mut Vec<Monomial>| {
        if !out.contains(&m) {
            out.push(m);
        }
    };
    for m in &a {
        push(m.clone(), &mut out);
        push(m.inv(), &mut out);
    }
    let cs = [c(1, 1), c(2, 1), c(-1, 1)];
    for (i, m) in a.iter().enumerate() {
        for p in &cs {
            let g = Transseries::term(p.clone(), m.clone());
            push(Monomial::from_log(&g).expect("purely infinite"), &mut out);
            for n in &a[..i] {
                for q in &cs {
                    let g = g.add(&Transseries::term(q.clone(), n.clone()));
                    push(Monomial::from_log(&g).expect("purely infinite"), &mut out);
                }
            }
        }
    }
    out
}

/// At most `limit` elements: rationals, single terms `c*m`, then two-term sums.
pub fn enumerate(limit: usize) -> Vec<Transseries> {
    let monos = monomials();
    let consts = [c(0, 1), c(1, 1), c(-1, 1), c(2, 1), c(1, 2), c(-3, 2)];
    let mut out: Vec<Transseries> = consts.iter().map(|q| Transseries::from_coeff(q.clone())).collect();
    let term_cs = [c(1, 1), c(-1, 1), c(2, 1), c(-1, 2)];
    for m in &monos {
        for q in &term_cs {
            out.push(Transseries::term(q.clone(), m.clone()));
        }
    }
    let head: Vec<Monomial> = monos.iter().take(40).cloned().chain([Monomial::One]).collect();
    let pair_cs = [
        (c(1, 1), c(1, 1)),
        (c(1, 1), c(-1, 1)),
        (c(-1, 1), c(2, 1)),
        (c(2, 1), c(1, 2)),
    ];
    'outer: for (i, m) in head.iter().enumerate() {
        for n in &head[i + 1..] {
            for (p, q) in &pair_cs {
                if out.len() >= limit {
                    break 'outer;
                }
                out.push(Transseries::term(p.clone(), m.clone()).add(&Transseries::term(q.clone(), n.clone())));
            }
        }
    }
    out.truncate(limit);
    out
}

/// Rank-zero oracle: rationals and `±lambda^{±1}` with `lambda` log-atomic.
pub fn expected_rank_zero(x: &Transseries) -> bool {
    if x.is_constant() || x.is_zero() {
        return true;
    }
    match x.as_term() {
        Some(t) => t.coeff.abs().is_one() && (t.mono.is_atom() || t.mono.inv().is_atom()),
        None => false,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniverseReport {
    pub size: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl UniverseReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

pub fn check_rank_zero(universe: &[Transseries]) -> UniverseReport {
    let mut r = UniverseReport {
        size: universe.len(),
        ..Default::default()
    };
    for x in universe {
        r.checked += 1;
        match ntrank(x) {
            Ok(k) if (k == 0) == expected_rank_zero(x) => {}
            Ok(k) => r.fail(format!("{x}: rank {k}")),
            Err(e) => r.fail(format!("{x}: {e}")),
        }
    }
    r
}

pub fn check_t4_all(universe: &[Transseries], ctx: &PrecisionContext) -> UniverseReport {
    let mut r = UniverseReport {
        size: universe.len(),
        ..Default::default()
    };
    for x in universe {
        r.checked += 1;
        if !check_t4(x, ctx).satisfied() {
            r.fail(format!("T4 refuted at {x}"));
        }
    }
    r
}

/// Reflexivity, antisymmetry and transitivity of `⊴` on the nonzero
/// elements of `sample`.
pub fn check_partial_order(sample: &[Transseries]) -> UniverseReport {
    let xs: Vec<&Transseries> = sample.iter().filter(|x| !x.is_zero()).collect();
    let n = xs.len();
    let mut r = UniverseReport {
        size: n,
        ..Default::default()
    };
    let rel: Vec<Vec<bool>> = xs
        .iter()
        .map(|a| xs.iter().map(|b| nested_trunc_le(a, b).unwrap_or(false)).collect())
        .collect();
    for i in 0..n {
        r.checked += 1;
        if !rel[i][i] {
            r.fail(format!("{} not ⊴ itself", xs[i]));
        }
        for j in 0..n {
            if i != j && rel[i][j] && rel[j][i] {
                r.fail(format!("{} and {} are mutually ⊴", xs[i], xs[j]));
            }
            if !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if rel[j][k] && !rel[i][k] {
                    r.fail(format!("{} ⊴ {} ⊴ {} but not transitive", xs[i], xs[j], xs[k]));
                }
            }
        }
    }
    r
}

/// `{y : x ⊴ y}` meets the sample in an order-convex set.
pub fn check_convexity(sample: &[Transseries]) -> UniverseReport {
    let mut xs: Vec<&Transseries> = sample.iter().filter(|x| !x.is_zero()).collect();
    xs.sort_by(|a, b| compare(a, b).unwrap_or(Ordering::Equal));
    let mut r = UniverseReport {
        size: xs.len(),
        ..Default::default()
    };
    for x in &xs {
        r.checked += 1;
        let above: Vec<usize> = (0..xs.len())
            .filter(|&i| nested_trunc_le(x, xs[i]).unwrap_or(false))
            .collect();
        let (lo, hi) = match (above.first(), above.last()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => continue,
        };
        for u in &xs[lo..=hi] {
            if !nested_trunc_le(x, u).unwrap_or(false) {
                r.fail(format!("{x} ⊴ {} and {}, not ⊴ {u}", xs[lo], xs[hi]));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_and_duplicate_free() {
        let u = enumerate(10_000);
        assert!(u.len() <= 10_000);
        for (i, x) in u.iter().enumerate().take(300) {
            assert!(!u[..i].contains(x), "{x}");
        }
    }

    #[test]
    fn oracle_examples() {
        let w = Transseries::omega();
        assert!(expected_rank_zero(&w));
        assert!(expected_rank_zero(
            &w.inverse(&PrecisionContext::default()).unwrap().neg()
        ));
        assert!(!expected_rank_zero(&w.scale(&c(2, 1))));
        assert!(!expected_rank_zero(&w.add(&Transseries::one())));
        assert!(expected_rank_zero(&Transseries::from_coeff(c(-3, 2))));
    }
}
