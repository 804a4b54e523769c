//! `exp`, `log` and rational powers.
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::{Coefficient, Term, Transseries};

/// Sums `sum_{n=from}^{to-1} c_n eps^n` and bounds the rest by `O(b^to)`.
fn power_series(
    eps: &Transseries,
    from: usize,
    to: usize,
    coeff: impl Fn(usize) -> Coefficient,
    ctx: &PrecisionContext,
) -> Transseries {
    let b = eps.bound().expect("nonzero series");
    let cut = b.powi(to as i64);
    let mut sum = Transseries::zero();
    let mut p = Transseries::one();
    for n in 0..to {
        if n > 0 {
            p = p.mul(eps, ctx).with_marker(cut.clone());
        }
        if n >= from {
            sum = sum.add(&p.scale(&coeff(n)));
        }
    }
    sum.with_marker(cut)
}

pub fn exp(x: &Transseries, ctx: &PrecisionContext) -> Result<Transseries> {
    let (j, r, eps) = x.decompose()?;
    if !r.is_zero() {
        return Err(Error::RealPartNotZero);
    }
    let m = Monomial::from_log_unchecked(j.into_inner());
    if eps.is_zero() {
        return Ok(Transseries::monomial(m));
    }
    let n = ctx.series_order.max(1);
    let mut fact = Coefficient::one();
    let mut facts = alloc::vec::Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            fact *= Coefficient::from_integer(BigInt::from(k));
        }
        facts.push(fact.recip());
    }
    let s = power_series(&eps, 0, n, |k| facts[k].clone(), ctx);
    Ok(s.mul_term(&Term::from(m), ctx))
}

pub fn log(x: &Transseries, ctx: &PrecisionContext) -> Result<Transseries> {
    if x.is_zero() {
        return Err(Error::NonpositiveArgument);
    }
    let lt = x.leading_term()?;
    if !lt.coeff.is_positive() {
        return Err(Error::NonpositiveArgument);
    }
    if !lt.coeff.is_one() {
        return Err(Error::NonunitalLeadingCoefficient);
    }
    let lm = lt.mono.log();
    let eps = x.mul_term(&Term::from(lt.mono.inv()), ctx).sub(&Transseries::one());
    if eps.is_zero() {
        return Ok(lm);
    }
    let n = ctx.series_order.max(1);
    let s = power_series(
        &eps,
        1,
        n + 1,
        |k| {
            let c = Coefficient::new(BigInt::one(), BigInt::from(k));
            if k % 2 == 0 {
                -c
            } else {
                c
            }
        },
        ctx,
    );
    Ok(lm.add(&s))
}

fn binomial(q: &Coefficient, k: usize) -> Coefficient {
    let mut c = Coefficient::one();
    for i in 0..k {
        let i = Coefficient::from_integer(BigInt::from(i));
        c = c * (q - &i) / (&i + Coefficient::one());
    }
    c
}

fn powi(x: &Transseries, n: u64, ctx: &PrecisionContext) -> Transseries {
    let mut result = Transseries::one();
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base, ctx);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, ctx);
        }
    }
    result
}

/// `x^q`. Integer exponents use exact multiplication; other exponents need a
/// positive leading coefficient equal to 1.
pub fn pow(x: &Transseries, q: &Coefficient, ctx: &PrecisionContext) -> Result<Transseries> {
    if q.is_integer() {
        let n = q.to_integer();
        let mag = n.abs().to_u64().ok_or(Error::Inexact)?;
        let p = powi(x, mag, ctx);
        return if n.is_negative() { p.inverse(ctx) } else { Ok(p) };
    }
    if x.is_zero() {
        return Err(Error::NonpositiveArgument);
    }
    let lt = x.leading_term()?;
    if !lt.coeff.is_positive() {
        return Err(Error::NonpositiveArgument);
    }
    if !lt.coeff.is_one() {
        return Err(Error::NonunitalLeadingCoefficient);
    }
    let mq = lt.mono.pow(q);
    let eps = x.mul_term(&Term::from(lt.mono.inv()), ctx).sub(&Transseries::one());
    if eps.is_zero() {
        return Ok(Transseries::monomial(mq));
    }
    let n = ctx.series_order.max(1);
    let s = power_series(&eps, 0, n, |k| binomial(q, k), ctx);
    Ok(s.mul_term(&Term::from(mq), ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn w() -> Transseries {
        Transseries::omega()
    }

    fn winv() -> Transseries {
        Transseries::monomial(Monomial::omega().inv())
    }

    #[test]
    fn exp_examples() {
        assert_eq!(exp(&Transseries::zero(), &ctx()), Ok(Transseries::one()));
        assert_eq!(exp(&Transseries::atom(0, -1), &ctx()), Ok(w()));
        let c = ctx().with_series_order(4);
        let e = exp(&winv(), &c).unwrap();
        let expect = Transseries::one()
            + winv()
            + Transseries::term(Coefficient::new(1.into(), 2.into()), Monomial::omega().powi(-2))
            + Transseries::term(Coefficient::new(1.into(), 6.into()), Monomial::omega().powi(-3));
        assert_eq!(e, expect.with_marker(Monomial::omega().powi(-4)));
        assert_eq!(exp(&Transseries::one(), &ctx()), Err(Error::RealPartNotZero));
    }

    #[test]
    fn log_examples() {
        assert_eq!(log(&w(), &ctx()), Ok(Transseries::atom(0, -1)));
        let c = ctx().with_series_order(3);
        let l = log(&(Transseries::one() + winv()), &c).unwrap();
        let expect = winv() - Transseries::term(Coefficient::new(1.into(), 2.into()), Monomial::omega().powi(-2))
            + Transseries::term(Coefficient::new(1.into(), 3.into()), Monomial::omega().powi(-3));
        assert_eq!(l, expect.with_marker(Monomial::omega().powi(-4)));
        assert_eq!(log(&w().neg(), &ctx()), Err(Error::NonpositiveArgument));
        assert_eq!(log(&w().scale(&q(2)), &ctx()), Err(Error::NonunitalLeadingCoefficient));
    }

    #[test]
    fn log_factors_leading_monomial() {
        let ew = Transseries::monomial(Monomial::from_log(&w()).unwrap());
        let emw = Transseries::monomial(Monomial::from_log(&w().neg()).unwrap());
        let x = ew.add(&Transseries::one());
        let c = ctx().with_series_order(2);
        let l = log(&x, &c).unwrap();
        let e2 = Monomial::from_log(&w().scale(&q(-2))).unwrap();
        let expect = w() + emw - Transseries::term(Coefficient::new(1.into(), 2.into()), e2.clone());
        assert_eq!(l, expect.with_marker(e2.mul(&Monomial::from_log(&w().neg()).unwrap())));
    }

    #[test]
    fn pow_examples() {
        let w3 = pow(&w(), &q(3), &ctx()).unwrap();
        assert_eq!(
            w3,
            Transseries::monomial(Monomial::from_log(&Transseries::atom(0, -1).scale(&q(3))).unwrap())
        );
        let e2 = Transseries::monomial(Monomial::from_log(&w().scale(&q(2))).unwrap());
        let half = Coefficient::new(1.into(), 2.into());
        assert_eq!(pow(&e2, &half, &ctx()), Ok(Transseries::atom(0, 1)));
        let x = Transseries::one() + winv();
        assert_eq!(pow(&x, &q(2), &ctx()).unwrap(), x.mul(&x, &ctx()));
        assert!(pow(&x, &q(2), &ctx()).unwrap().is_exact());
    }

    #[test]
    fn fractional_pow_series() {
        let c = ctx().with_series_order(6);
        let x = Transseries::one() + winv();
        let half = Coefficient::new(1.into(), 2.into());
        let r = pow(&x, &half, &c).unwrap();
        let sq = r.mul(&r, &c);
        assert_eq!(sq.terms(), x.terms());
        assert!(sq.marker().unwrap() < &Monomial::omega().powi(-1));
    }
}
