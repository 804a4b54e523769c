//! Nested truncations, their foundation rank, and the T4 / ELT4 path checks.
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::context::PrecisionContext;
use crate::deriv::{enumerate_paths, Path};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::{Coefficient, Term, Transseries};

pub type Rank = usize;

fn check(x: &Transseries) -> Result<()> {
    if !x.is_exact() {
        return Err(Error::Inexact);
    }
    if !x.is_tail_free_deep() {
        return Err(Error::UnsupportedTails);
    }
    Ok(())
}

fn sign(c: &Coefficient) -> Coefficient {
    if c.is_negative() {
        -Coefficient::one()
    } else {
        Coefficient::one()
    }
}

/// `±lambda` for an atom: such values have no proper nested truncations.
fn is_signed_atom(x: &Transseries) -> bool {
    match x.as_term() {
        Some(t) => t.mono.is_atom() && t.coeff.abs().is_one(),
        None => false,
    }
}

fn le(x: &Transseries, y: &Transseries) -> bool {
    if x == y {
        return true;
    }
    if is_signed_atom(y) {
        return false;
    }
    let (xs, ys) = (x.terms(), y.terms());
    if xs.len() <= ys.len() && xs == &ys[..xs.len()] {
        return true;
    }
    let j = xs.len() - 1;
    if j >= ys.len() || xs[..j] != ys[..j] {
        return false;
    }
    let (a, b) = (&xs[j], &ys[j]);
    if a.mono.is_one() || b.mono.is_one() || a.coeff != sign(&b.coeff) {
        return false;
    }
    le(&a.mono.log(), &b.mono.log())
}

/// Decides `x ⊴ y`. Only nonzero values are related.
pub fn nested_trunc_le(x: &Transseries, y: &Transseries) -> Result<bool> {
    check(x)?;
    check(y)?;
    if x.is_zero() || y.is_zero() {
        return Ok(false);
    }
    Ok(le(x, y))
}

fn preds(x: &Transseries) -> Vec<Transseries> {
    let mut out: Vec<Transseries> = Vec::new();
    if x.is_zero() || is_signed_atom(x) {
        return out;
    }
    let xs = x.terms();
    for i in 1..xs.len() {
        out.push(Transseries::from_parts(xs[..i].to_vec(), Vec::new(), None));
    }
    for (j, t) in xs.iter().enumerate() {
        if t.mono.is_one() {
            continue;
        }
        let delta = t.mono.log();
        let mut gammas = preds(&delta);
        gammas.insert(0, delta);
        for g in gammas {
            let m = Monomial::from_log_unchecked(g);
            if j > 0 && m >= xs[j - 1].mono {
                continue;
            }
            let mut parts = xs[..j].to_vec();
            parts.push(Term::new(sign(&t.coeff), m));
            let cand = Transseries::from_parts(parts, Vec::new(), None);
            if cand != *x && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Every `y` with `y ⊲ x`.
pub fn proper_nested_truncations(x: &Transseries) -> Result<Vec<Transseries>> {
    check(x)?;
    Ok(preds(x))
}

fn rank_memo(x: &Transseries, memo: &mut BTreeMap<String, Rank>) -> Rank {
    let key = x.to_string();
    if let Some(r) = memo.get(&key) {
        return *r;
    }
    let r = preds(x).iter().map(|p| rank_memo(p, memo) + 1).max().unwrap_or(0);
    memo.insert(key, r);
    r
}

/// Foundation rank of `⊴`, with `ntrank(0) = 0`.
pub fn ntrank(x: &Transseries) -> Result<Rank> {
    check(x)?;
    Ok(rank_memo(x, &mut BTreeMap::new()))
}

/// The split `ℓ(P(i)) = gamma + P(i+1) + delta` at one step of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub gamma: Transseries,
    pub coeff: Coefficient,
    pub delta: Transseries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathT4 {
    pub path: Path,
    pub splits: Vec<Split>,
    /// Least `k` with `r_{i+1} = ±1` and `delta_{i+1} = 0` for all `i >= k`.
    pub k: Option<usize>,
    /// False for the sentinel standing for unexpanded tail members.
    pub explored: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T4Report {
    pub paths: Vec<PathT4>,
}

impl T4Report {
    pub fn satisfied(&self) -> bool {
        self.paths.iter().all(|p| !p.explored || p.k.is_some())
    }

    pub fn unexplored(&self) -> usize {
        self.paths.iter().filter(|p| !p.explored).count()
    }
}

fn splits_of(terms: &[Term]) -> Option<Vec<Split>> {
    let mut out = Vec::new();
    for w in terms.windows(2) {
        let ell = w[0].mono.log();
        let next = &w[1];
        let gamma = ell.truncate_at(&next.mono);
        let rest = ell.sub(&gamma);
        if rest.leading_term().ok()? != *next {
            return None;
        }
        let delta = rest.sub(&Transseries::from_term(next.clone()));
        out.push(Split {
            gamma,
            coeff: next.coeff.clone(),
            delta,
        });
    }
    Some(out)
}

fn t4_of(p: Path) -> PathT4 {
    let explored = !p.is_truncated();
    let terms = p.terms();
    let splits = splits_of(&terms);
    let k = splits.as_ref().and_then(|s| {
        if explored && !p.leaf().is_some_and(|l| l.is_atom()) {
            return None;
        }
        let trailing = s
            .iter()
            .rev()
            .take_while(|sp| sp.coeff.abs().is_one() && sp.delta.is_zero())
            .count();
        Some(s.len() - trailing)
    });
    PathT4 {
        path: p,
        splits: splits.unwrap_or_default(),
        k,
        explored,
    }
}

/// Per-path T4 data. A path satisfies T4 when its splits are consistent and it
/// reaches a log-atomic leaf, after which every step is trivial.
pub fn check_t4(x: &Transseries, ctx: &PrecisionContext) -> T4Report {
    T4Report {
        paths: enumerate_paths(x, ctx).into_iter().map(t4_of).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathElt4 {
    pub path: Path,
    /// Index of the first entry lying in the log-atomic class.
    pub enters_at: Option<usize>,
    pub explored: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elt4Report {
    pub paths: Vec<PathElt4>,
}

impl Elt4Report {
    pub fn satisfied(&self) -> bool {
        self.paths.iter().all(|p| !p.explored || p.enters_at.is_some())
    }
}

pub fn check_elt4(x: &Transseries, ctx: &PrecisionContext) -> Elt4Report {
    let paths = enumerate_paths(x, ctx)
        .into_iter()
        .map(|p| {
            let explored = !p.is_truncated();
            let enters_at = match p.leaf() {
                Some(l) if l.is_atom() => Some(p.entries.len()),
                _ => None,
            };
            PathElt4 {
                path: p,
                enters_at,
                explored,
            }
        })
        .collect();
    Elt4Report { paths }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;

    fn w() -> Transseries {
        Transseries::omega()
    }

    fn e(x: &Transseries) -> Transseries {
        Transseries::monomial(Monomial::from_log(x).unwrap())
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn relation_examples() {
        assert_eq!(nested_trunc_le(&w(), &(w() + Transseries::one())), Ok(true));
        let y = e(&(w() + Transseries::atom(0, -1)));
        assert_eq!(nested_trunc_le(&e(&w()), &y), Ok(true));
        assert_eq!(nested_trunc_le(&w(), &e(&w())), Ok(false));
        assert_eq!(
            nested_trunc_le(&w(), &Transseries::tail(0, 1, q(1))),
            Err(Error::UnsupportedTails)
        );
    }

    #[test]
    fn predecessor_examples() {
        assert_eq!(proper_nested_truncations(&w().scale(&q(2))), Ok(alloc::vec![w()]));
        assert_eq!(
            proper_nested_truncations(&(w() + Transseries::atom(0, -1))),
            Ok(alloc::vec![w()])
        );
        let y = e(&(w() + Transseries::atom(0, -1)));
        assert_eq!(proper_nested_truncations(&y), Ok(alloc::vec![e(&w())]));
        assert!(proper_nested_truncations(&e(&w())).unwrap().is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ntrank(&w()), Ok(0));
        assert_eq!(ntrank(&w().scale(&q(2))), Ok(1));
        assert_eq!(ntrank(&e(&(w() + Transseries::atom(0, -1)))), Ok(1));
        assert_eq!(ntrank(&Transseries::from_int(7)), Ok(0));
        assert_eq!(ntrank(&Transseries::zero()), Ok(0));
    }

    #[test]
    fn t4_examples() {
        let x = e(&(w().scale(&q(2)) + Transseries::atom(0, -1).scale(&q(3))));
        let r = check_t4(&x, &ctx());
        assert!(r.satisfied());
        assert_eq!(r.paths.len(), 2);
        assert!(r.paths.iter().all(|p| p.k == Some(1)));
        let r = check_t4(&w(), &ctx());
        assert_eq!(r.paths[0].k, Some(0));
        assert!(check_t4(&Transseries::kappa(1), &ctx()).satisfied());
    }

    #[test]
    fn t4_through_tails() {
        let r = check_t4(&e(&Transseries::tail(0, 1, q(-2))), &ctx().with_tail_expand(4));
        assert!(r.satisfied());
        assert_eq!(r.unexplored(), 1);
        assert!(r.paths.iter().filter(|p| p.explored).all(|p| p.k.is_some()));
    }

    #[test]
    fn elt4_examples() {
        let r = check_elt4(&e(&(w() + Transseries::atom(0, -1))), &ctx());
        assert!(r.satisfied());
        assert!(r.paths.iter().all(|p| p.enters_at.unwrap() <= 2));
        let r = check_elt4(&Transseries::tail(0, 1, q(1)), &ctx());
        assert!(r.paths.iter().filter(|p| p.explored).all(|p| p.enters_at == Some(0)));
        assert!(check_elt4(&Transseries::from_int(7), &ctx()).paths.is_empty());
    }
}
