use alloc::sync::Arc;
use core::cmp::Ordering;

use num_traits::{One as _, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{Coefficient, Term, Transseries};

/// A monomial `exp(gamma)` with `gamma` purely infinite.
///
/// `Atom { alpha, m }` is `exp_m(kappa_{-alpha})`, so `Atom { 0, 0 }` is omega,
/// `Atom { 0, -1 }` is `log omega` and `Atom { 0, 1 }` is `exp(omega)`. An
/// exponent consisting of a single coefficient-1 atom never appears inside
/// `Exp`; it is folded into the atom tower instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Monomial {
    One,
    Atom { alpha: u32, m: i64 },
    Exp(Arc<Transseries>),
}

impl Monomial {
    pub fn omega() -> Self {
        Monomial::Atom { alpha: 0, m: 0 }
    }

    /// `kappa_{-alpha}`.
    pub fn kappa(alpha: u32) -> Self {
        Monomial::Atom { alpha, m: 0 }
    }

    pub fn atom(alpha: u32, m: i64) -> Self {
        Monomial::Atom { alpha, m }
    }

    /// `log_i(kappa_{-alpha})`.
    pub fn log_atom(alpha: u32, i: u64) -> Self {
        Monomial::Atom { alpha, m: -(i as i64) }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Monomial::One)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Monomial::Atom { .. })
    }

    /// The exponent `gamma` with `self = exp(gamma)`.
    pub fn log(&self) -> Transseries {
        match self {
            Monomial::One => Transseries::zero(),
            Monomial::Atom { alpha, m } => Transseries::monomial(Monomial::Atom {
                alpha: *alpha,
                m: m - 1,
            }),
            Monomial::Exp(g) => (**g).clone(),
        }
    }

    /// Builds `exp(gamma)` for an exact purely infinite `gamma`.
    pub fn from_log(gamma: &Transseries) -> Result<Self> {
        if !gamma.is_exact() {
            return Err(Error::Inexact);
        }
        if !gamma.is_purely_infinite() {
            return Err(Error::NotPurelyInfinite);
        }
        Ok(Self::from_log_unchecked(gamma.clone()))
    }

    pub(crate) fn from_log_unchecked(gamma: Transseries) -> Self {
        if gamma.is_zero() {
            return Monomial::One;
        }
        if gamma.tails().is_empty() && gamma.terms().len() == 1 {
            let t = &gamma.terms()[0];
            if t.coeff.is_one() {
                if let Monomial::Atom { alpha, m } = t.mono {
                    return Monomial::Atom { alpha, m: m + 1 };
                }
            }
        }
        Monomial::Exp(Arc::new(gamma))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        match (self, other) {
            (Monomial::One, x) | (x, Monomial::One) => x.clone(),
            _ => Self::from_log_unchecked(self.log().add(&other.log())),
        }
    }

    pub fn inv(&self) -> Monomial {
        match self {
            Monomial::One => Monomial::One,
            _ => Self::from_log_unchecked(self.log().neg()),
        }
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, q: &Coefficient) -> Monomial {
        if q.is_zero() {
            return Monomial::One;
        }
        match self {
            Monomial::One => Monomial::One,
            _ => Self::from_log_unchecked(self.log().scale(q)),
        }
    }

    pub fn powi(&self, n: i64) -> Monomial {
        self.pow(&Coefficient::from_integer(n.into()))
    }

    /// Nesting depth of `exp` applications in the representation.
    pub fn depth(&self) -> usize {
        match self {
            Monomial::One | Monomial::Atom { .. } => 0,
            Monomial::Exp(g) => 1 + g.depth(),
        }
    }

    /// True when `self < log_i(kappa_{-alpha})` for every `i`.
    pub fn below_all_logs(&self, alpha: u32) -> bool {
        match self {
            Monomial::One => true,
            Monomial::Atom { alpha: b, .. } => *b > alpha,
            Monomial::Exp(g) => match g.leading_term() {
                Ok(t) => t.coeff.is_negative() || t.mono.below_all_logs(alpha),
                Err(_) => false,
            },
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        use Monomial::*;
        match (self, other) {
            (One, One) => Ordering::Equal,
            (One, Atom { .. }) => Ordering::Less,
            (Atom { .. }, One) => Ordering::Greater,
            (One, Exp(g)) => sign_of(g).reverse(),
            (Exp(g), One) => sign_of(g),
            (Atom { alpha: a, m: k }, Atom { alpha: b, m: l }) => {
                if a != b {
                    b.cmp(a)
                } else {
                    k.cmp(l)
                }
            }
            (Atom { alpha, m }, Exp(g)) => {
                let lhs = Transseries::monomial(Atom {
                    alpha: *alpha,
                    m: m - 1,
                });
                cmp_exact(&lhs, g)
            }
            (Exp(g), Atom { alpha, m }) => {
                let rhs = Transseries::monomial(Atom {
                    alpha: *alpha,
                    m: m - 1,
                });
                cmp_exact(g, &rhs)
            }
            (Exp(g), Exp(h)) => cmp_exact(g, h),
        }
    }
}

fn sign_of(x: &Transseries) -> Ordering {
    match x.leading_term() {
        Ok(t) => {
            if t.coeff.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        Err(_) => Ordering::Equal,
    }
}

fn coeff_sign(c: &Coefficient) -> Ordering {
    if c.is_positive() {
        Ordering::Greater
    } else if c.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Order of two exact values. Tail-free inputs are compared by a merge walk,
/// anything else through the sign of the difference.
pub(crate) fn cmp_exact(a: &Transseries, b: &Transseries) -> Ordering {
    if a.tails().is_empty() && b.tails().is_empty() {
        let (xs, ys) = (a.terms(), b.terms());
        let mut i = 0;
        loop {
            match (xs.get(i), ys.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(t), None) => return coeff_sign(&t.coeff),
                (None, Some(t)) => return coeff_sign(&t.coeff).reverse(),
                (Some(s), Some(t)) => match s.mono.cmp(&t.mono) {
                    Ordering::Greater => return coeff_sign(&s.coeff),
                    Ordering::Less => return coeff_sign(&t.coeff).reverse(),
                    Ordering::Equal => {
                        if s.coeff != t.coeff {
                            return s.coeff.cmp(&t.coeff);
                        }
                    }
                },
            }
            i += 1;
        }
    }
    sign_of(&a.sub(b))
}

impl From<Monomial> for Term {
    fn from(mono: Monomial) -> Term {
        Term {
            coeff: Coefficient::one(),
            mono,
        }
    }
}
