#![allow(dead_code)]
use num_bigint::BigInt;
use proptest::prelude::*;
use surreal_core::{Coefficient, Monomial, PrecisionContext, Transseries};

pub fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

pub fn q(n: i64, d: i64) -> Coefficient {
    Coefficient::new(BigInt::from(n), BigInt::from(d))
}

pub fn coeff() -> impl Strategy<Value = Coefficient> {
    (prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=3).prop_map(|(n, d)| q(n, d))
}

pub fn atom() -> impl Strategy<Value = Monomial> {
    (0u32..=2, -2i64..=2).prop_map(|(a, m)| Monomial::atom(a, m))
}

fn flip_up(m: Monomial) -> Monomial {
    if m > Monomial::One {
        m
    } else {
        m.inv()
    }
}

/// Infinite monomials, nested up to two exponentials deep.
pub fn infinite_monomial() -> impl Strategy<Value = Monomial> {
    atom().prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec((coeff(), inner.prop_map(flip_up)), 1..=3).prop_map(|ts| {
            let g = ts
                .into_iter()
                .fold(Transseries::zero(), |acc, (c, m)| acc.add(&Transseries::term(c, m)));
            if g.is_zero() {
                Monomial::omega()
            } else {
                flip_up(Monomial::from_log(&g).expect("purely infinite"))
            }
        })
    })
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    (infinite_monomial(), any::<bool>()).prop_map(|(m, up)| if up { m } else { m.inv() })
}

/// Exact, tail-free values with up to four terms.
pub fn value() -> impl Strategy<Value = Transseries> {
    prop::collection::vec((coeff(), prop_oneof![1 => Just(Monomial::One), 4 => monomial()]), 0..=4).prop_map(|ts| {
        ts.into_iter()
            .fold(Transseries::zero(), |acc, (c, m)| acc.add(&Transseries::term(c, m)))
    })
}

pub fn nonzero() -> impl Strategy<Value = Transseries> {
    value().prop_filter("nonzero", |x| !x.is_zero())
}

/// Nonzero purely infinite values.
pub fn purely_infinite() -> impl Strategy<Value = Transseries> {
    prop::collection::vec((coeff(), infinite_monomial()), 1..=3).prop_filter_map("cancelled", |ts| {
        let g = ts
            .into_iter()
            .fold(Transseries::zero(), |acc, (c, m)| acc.add(&Transseries::term(c, m)));
        (!g.is_zero()).then_some(g)
    })
}

/// Values above every integer.
pub fn positive_infinite() -> impl Strategy<Value = Transseries> {
    (
        infinite_monomial(),
        coeff().prop_map(|c| if c < q(0, 1) { -c } else { c }),
        value(),
    )
        .prop_map(|(m, c, rest)| {
            let low = Transseries::from_parts(
                rest.terms().iter().filter(|t| t.mono < m).cloned().collect(),
                Vec::new(),
                None,
            );
            Transseries::term(c, m).add(&low)
        })
}
