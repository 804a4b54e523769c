//! Order, dominance, levels and kappa classes.
use core::cmp::Ordering;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::Transseries;

/// Outcome of a coarse comparison such as `≼`, `≤_L` or `≤_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Below,
    Equivalent,
    Above,
}

impl Relation {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Relation::Below,
            Ordering::Equal => Relation::Equivalent,
            Ordering::Greater => Relation::Above,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Relation::Below => Relation::Above,
            Relation::Equivalent => Relation::Equivalent,
            Relation::Above => Relation::Below,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceReport {
    pub strict_order: Ordering,
    pub dominance: Relation,
    /// `x ~ y`: the leading terms agree.
    pub asymptotic: bool,
}

fn indeterminate(e: Error) -> Error {
    if e.is_indeterminate() {
        Error::Indeterminate
    } else {
        e
    }
}

pub fn compare(x: &Transseries, y: &Transseries) -> Result<Ordering> {
    let d = x.sub(y);
    match d.signum().map_err(indeterminate)? {
        None => Ok(Ordering::Equal),
        Some(o) => Ok(o),
    }
}

pub fn dominance(x: &Transseries, y: &Transseries) -> Result<DominanceReport> {
    let strict_order = compare(x, y)?;
    let lx = lead_or_zero(x)?;
    let ly = lead_or_zero(y)?;
    let (dominance, asymptotic) = match (lx, ly) {
        (None, None) => (Relation::Equivalent, true),
        (None, Some(_)) => (Relation::Below, false),
        (Some(_), None) => (Relation::Above, false),
        (Some(a), Some(b)) => (Relation::from_ordering(a.mono.cmp(&b.mono)), a == b),
    };
    Ok(DominanceReport {
        strict_order,
        dominance,
        asymptotic,
    })
}

fn lead_or_zero(x: &Transseries) -> Result<Option<crate::series::Term>> {
    match x.leading_term() {
        Ok(t) => Ok(Some(t)),
        Err(Error::ZeroValue) => Ok(None),
        Err(e) => Err(indeterminate(e)),
    }
}

/// The log-atomic monomial `lambda` with `lambda ⊴ x`, found by descending
/// through leading monomials of exponents.
pub fn level_representative(x: &Transseries) -> Result<Monomial> {
    let lead = x.leading_term().map_err(|e| match e {
        Error::ZeroValue => Error::NotPositiveInfinite,
        e => indeterminate(e),
    })?;
    if !lead.coeff.is_positive() || lead.mono <= Monomial::One {
        return Err(Error::NotPositiveInfinite);
    }
    let mut m = lead.mono;
    let mut n: i64 = 0;
    loop {
        match m {
            Monomial::Atom { alpha, m: k } => return Ok(Monomial::atom(alpha, k + n)),
            Monomial::Exp(g) => {
                m = g.leading_term().map_err(indeterminate)?.mono;
                n += 1;
            }
            Monomial::One => unreachable!("exponents are purely infinite"),
        }
    }
}

pub fn level_compare(x: &Transseries, y: &Transseries) -> Result<Relation> {
    let a = level_representative(x)?;
    let b = level_representative(y)?;
    Ok(Relation::from_ordering(a.cmp(&b)))
}

/// `≤_K` comparison. Two values share a kappa class exactly when their level
/// representatives sit on the same atom tower, and a smaller index is higher.
pub fn kappa_compare(x: &Transseries, y: &Transseries) -> Result<Relation> {
    let a = level_representative(x)?;
    let b = level_representative(y)?;
    match (a, b) {
        (Monomial::Atom { alpha: p, .. }, Monomial::Atom { alpha: r, .. }) => Ok(Relation::from_ordering(r.cmp(&p))),
        _ => unreachable!("level representatives are atoms"),
    }
}

pub fn is_log_atomic(m: &Monomial) -> bool {
    m.is_atom()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;

    fn w() -> Transseries {
        Transseries::omega()
    }

    fn exp_mono(x: &Transseries) -> Transseries {
        Transseries::monomial(Monomial::from_log(x).unwrap())
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            compare(&Transseries::kappa(1), &Transseries::atom(0, -3)),
            Ok(Ordering::Less)
        );
        assert_eq!(compare(&w(), &exp_mono(&w())), Ok(Ordering::Less));
        assert_eq!(
            compare(&exp_mono(&w().neg()), &Transseries::zero()),
            Ok(Ordering::Greater)
        );
        let a = w().with_marker(Monomial::One);
        assert_eq!(compare(&a, &w()), Err(Error::Indeterminate));
    }

    #[test]
    fn dominance_examples() {
        let r = dominance(&(w().scale(&q(2)) + Transseries::one()), &w()).unwrap();
        assert_eq!(r.dominance, Relation::Equivalent);
        assert!(!r.asymptotic);
        let r = dominance(&(w().scale(&q(2)) + Transseries::one()), &w().scale(&q(2))).unwrap();
        assert!(r.asymptotic);
        let r = dominance(&Transseries::atom(0, -1), &w()).unwrap();
        assert_eq!(r.dominance, Relation::Below);
        let e2 = exp_mono(&w().scale(&q(2)));
        let e1 = exp_mono(&w());
        let sq = e1.mul(&e1, &Default::default());
        let r = dominance(&e2, &sq).unwrap();
        assert_eq!(
            (r.dominance, r.asymptotic, r.strict_order),
            (Relation::Equivalent, true, Ordering::Equal)
        );
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_compare(&exp_mono(&w()), &w()), Ok(Relation::Equivalent));
        assert_eq!(kappa_compare(&Transseries::kappa(1), &w()), Ok(Relation::Below));
        assert_eq!(
            kappa_compare(&Transseries::atom(0, 2), &Transseries::kappa(2)),
            Ok(Relation::Above)
        );
        assert_eq!(
            kappa_compare(&Transseries::one(), &w()),
            Err(Error::NotPositiveInfinite)
        );
    }

    #[test]
    fn level_examples() {
        let w2 = Transseries::monomial(Monomial::omega().powi(2));
        assert_eq!(level_compare(&w2, &w()), Ok(Relation::Equivalent));
        let wl = Transseries::monomial(Monomial::omega().mul(&Monomial::atom(0, -1)));
        assert_eq!(level_compare(&wl, &w()), Ok(Relation::Equivalent));
        assert_eq!(level_compare(&Transseries::atom(0, -1), &w()), Ok(Relation::Below));
    }

    #[test]
    fn representatives() {
        assert_eq!(level_representative(&(w() + Transseries::one())), Ok(Monomial::omega()));
        assert_eq!(
            level_representative(&exp_mono(&w().scale(&q(2)))),
            Ok(Monomial::atom(0, 1))
        );
        let wl = Transseries::monomial(Monomial::omega().mul(&Monomial::atom(0, -1)));
        assert_eq!(level_representative(&wl), Ok(Monomial::omega()));
        assert_eq!(level_representative(&w().neg()), Err(Error::NotPositiveInfinite));
    }

    #[test]
    fn log_atomic_detection() {
        assert!(is_log_atomic(&Monomial::omega()));
        assert!(!is_log_atomic(&Monomial::omega().powi(2)));
        let m = Monomial::from_log(&(w() + Transseries::atom(0, -1))).unwrap();
        assert!(!is_log_atomic(&m));
    }
}
