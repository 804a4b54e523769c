//! Asymptotic integrals and fuel-bounded antidifferentiation.
use alloc::vec::Vec;

use crate::context::PrecisionContext;
use crate::deriv::{derive, dominant_path, path_derivative, pre_derive_monomial, DerivationConfig};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::{Term, Transseries};

fn lead_derivative(t: &Term, cfg: &DerivationConfig) -> Result<Term> {
    path_derivative(&dominant_path(&Transseries::from_term(t.clone()))?, cfg)
}

/// A term `y` with `∂y ~ x`.
///
/// Tries `u = kappa_{-alpha}` for increasing `alpha` in
/// `y = x * (x u / ∂u) / ∂(x u / ∂u)`, keeping only leading terms, and accepts
/// the first candidate whose derivative has the same leading term as `x`.
pub fn asymptotic_integral(x: &Transseries, cfg: &DerivationConfig, ctx: &PrecisionContext) -> Result<Term> {
    let lt = x.leading_term()?;
    for alpha in 0..=ctx.kappa_depth {
        let u = Monomial::kappa(alpha);
        let du = pre_derive_monomial(&u, cfg)?;
        let v = Term::new(lt.coeff.clone(), lt.mono.mul(&u).div(&du));
        if v.mono.is_one() {
            continue;
        }
        let dv = lead_derivative(&v, cfg)?;
        let y = lt.mul(&v).div(&dv);
        // a constant leading term says nothing about A(x)
        if y.mono.is_one() {
            continue;
        }
        if lead_derivative(&y, cfg)? == lt {
            return Ok(y);
        }
    }
    Err(Error::NeedsDeeperKappa(ctx.kappa_depth))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// The residual is exactly zero.
    Exact,
    /// Fuel ran out with a nonzero residual.
    Exhausted,
    /// The residual's leading term is hidden by a remainder marker.
    PrecisionLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integral {
    pub antiderivative: Transseries,
    /// `x - ∂(antiderivative)`.
    pub residual: Transseries,
    pub steps: usize,
    pub status: Status,
    /// Leading monomial (or bound) of the residual before each step.
    pub history: Vec<Monomial>,
}

/// Runs `t_k = A(x - sum_{j<k} ∂t_j)` for at most `fuel` steps.
pub fn integrate(x: &Transseries, cfg: &DerivationConfig, ctx: &PrecisionContext) -> Result<Integral> {
    let mut anti = Transseries::zero();
    let mut residual = x.clone();
    let mut history = Vec::new();
    let mut steps = 0;
    let status = loop {
        if residual.is_zero() {
            break Status::Exact;
        }
        if steps >= ctx.fuel {
            break Status::Exhausted;
        }
        let lead = match residual.leading_term() {
            Ok(t) => t,
            Err(e) if e.is_indeterminate() => break Status::PrecisionLimit,
            Err(e) => return Err(e),
        };
        let t = asymptotic_integral(&residual, cfg, ctx)?;
        let next = residual.sub(&derive(&Transseries::from_term(t.clone()), cfg, ctx));
        if let Some(b) = next.bound() {
            if b >= lead.mono {
                break Status::PrecisionLimit;
            }
        }
        history.push(lead.mono);
        anti = anti.add(&Transseries::from_term(t));
        residual = next;
        steps += 1;
    };
    Ok(Integral {
        antiderivative: anti,
        residual,
        steps,
        status,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;

    const S: DerivationConfig = DerivationConfig::SIMPLEST;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn w() -> Transseries {
        Transseries::omega()
    }

    #[test]
    fn asymptotic_integral_examples() {
        let a = asymptotic_integral(&Transseries::one(), &S, &ctx()).unwrap();
        assert_eq!(a, Term::from(Monomial::omega()));
        let winv = Transseries::monomial(Monomial::omega().inv());
        let a = asymptotic_integral(&winv, &S, &ctx()).unwrap();
        assert_eq!(a, Term::from(Monomial::atom(0, -1)));
        let a = asymptotic_integral(&Transseries::atom(0, -1), &S, &ctx()).unwrap();
        assert_eq!(a, Term::from(Monomial::omega().mul(&Monomial::atom(0, -1))));
        assert_eq!(
            asymptotic_integral(&Transseries::zero(), &S, &ctx()),
            Err(Error::ZeroValue)
        );
    }

    #[test]
    fn integrals() {
        let r = integrate(&Transseries::one(), &S, &ctx()).unwrap();
        assert_eq!((r.antiderivative, r.steps, r.status), (w(), 1, Status::Exact));
        let r = integrate(&Transseries::atom(0, -1), &S, &ctx()).unwrap();
        let wl = Transseries::monomial(Monomial::omega().mul(&Monomial::atom(0, -1)));
        assert_eq!(r.antiderivative, wl - w());
        assert_eq!((r.steps, r.status), (2, Status::Exact));
        let r = integrate(&Transseries::atom(0, 1), &S, &ctx()).unwrap();
        assert_eq!(r.antiderivative, Transseries::atom(0, 1));
    }

    #[test]
    fn no_kappa_mode_cannot_integrate_one() {
        let r = integrate(&Transseries::one(), &DerivationConfig::NO_KAPPA, &ctx());
        assert!(matches!(r, Err(Error::NeedsDeeperKappa(_))));
    }

    #[test]
    fn exhausted_is_reported() {
        let x = Transseries::atom(0, -1).scale(&q(3)) + Transseries::monomial(Monomial::omega().inv());
        let r = integrate(&x, &S, &ctx().with_fuel(1)).unwrap();
        assert_eq!(r.status, Status::Exhausted);
        assert!(!r.residual.is_zero());
    }
}
