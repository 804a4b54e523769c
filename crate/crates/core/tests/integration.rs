mod common;

use common::*;
use proptest::prelude::*;
use surreal_core::deriv::{derive, DerivationConfig};
use surreal_core::integrate::{asymptotic_integral, integrate, Status};
use surreal_core::{Error, Monomial, Transseries};

const S: DerivationConfig = DerivationConfig::SIMPLEST;

fn exact_within(x: &Transseries, fuel: usize) -> Transseries {
    let r = integrate(x, &S, &ctx().with_fuel(fuel)).unwrap();
    assert_eq!(r.status, Status::Exact, "∫{x}: residual {}", r.residual);
    assert!(r.steps <= fuel);
    r.antiderivative
}

#[test]
fn closed_forms() {
    let w = Transseries::omega();
    let logw = Transseries::atom(0, -1);
    assert_eq!(exact_within(&Transseries::one(), 3), w);
    assert_eq!(exact_within(&w.inverse(&ctx()).unwrap(), 3), logw);
    let want = w.mul(&logw, &ctx()).sub(&w);
    assert_eq!(exact_within(&logw, 3), want);
    let e = Transseries::atom(0, 1);
    assert_eq!(exact_within(&e, 3), e);
}

#[test]
fn derivative_of_kappa_integrates_back() {
    let dk = derive(&Transseries::kappa(1), &S, &ctx());
    assert_eq!(exact_within(&dk, 3), Transseries::kappa(1));
}

#[test]
fn no_kappa_mode_cannot_reach_one() {
    let r = integrate(&Transseries::one(), &DerivationConfig::NO_KAPPA, &ctx().with_fuel(4));
    assert!(matches!(r, Err(Error::NeedsDeeperKappa(_))), "{r:?}");
}

#[test]
fn asymptotic_integral_of_zero_fails() {
    assert!(asymptotic_integral(&Transseries::zero(), &S, &ctx()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn residuals_strictly_decrease(x in nonzero()) {
        match integrate(&x, &S, &ctx().with_fuel(8)) {
            Ok(r) => {
                prop_assert!(r.history.windows(2).all(|w| w[1] < w[0]));
                prop_assert_eq!(r.residual.clone(), x.sub(&derive(&r.antiderivative, &S, &ctx())));
                if r.status == Status::Exact {
                    prop_assert!(r.residual.is_zero());
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::NeedsDeeperKappa(_)), "{e}"),
        }
    }

    #[test]
    fn asymptotic_integral_matches_leading_term(c in coeff(), m in monomial()) {
        let x = Transseries::term(c, m);
        if let Ok(t) = asymptotic_integral(&x, &S, &ctx()) {
            let back = derive(&Transseries::from_term(t), &S, &ctx());
            prop_assert_eq!(back.leading_term().unwrap(), x.leading_term().unwrap());
        }
    }

    #[test]
    fn derivatives_of_terms_integrate_back(c in coeff(), m in infinite_monomial()) {
        prop_assume!(m != Monomial::One);
        let y = Transseries::term(c, m);
        let dy = derive(&y, &S, &ctx());
        let r = integrate(&dy, &S, &ctx().with_fuel(6)).unwrap();
        if r.status == Status::Exact {
            prop_assert_eq!(r.antiderivative, y);
        }
    }
}
