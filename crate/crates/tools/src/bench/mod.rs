//! Random value generation and the property suites.
mod suites;
pub mod universe;

pub use suites::{run_suite, run_suite_with, Report, UnknownSuite, SUITES};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surreal_core::{Coefficient, Monomial, Transseries};

/// Shape of randomly generated values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    /// Upper bound on the number of terms, counted through exponents.
    pub size: usize,
    /// Maximum nesting of `exp`.
    pub depth: usize,
    /// Largest kappa index used by atoms.
    pub kappa_depth: u32,
    pub allow_tails: bool,
    pub seed: u64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            size: 5,
            depth: 2,
            kappa_depth: 2,
            allow_tails: false,
            seed: 0,
        }
    }
}

impl GenSpec {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tails(mut self, on: bool) -> Self {
        self.allow_tails = on;
        self
    }
}

const COEFFS: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (3, 2)];

/// Grammar-directed sampler. One generator can draw several values.
pub struct Generator {
    rng: ChaCha8Rng,
    spec: GenSpec,
    budget: usize,
}

impl Generator {
    pub fn new(spec: GenSpec) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            spec,
            budget: 0,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coeff(&mut self) -> Coefficient {
        let (n, d) = COEFFS[self.rng.gen_range(0..COEFFS.len())];
        Coefficient::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn atom(&mut self) -> Monomial {
        let alpha = self.rng.gen_range(0..=self.spec.kappa_depth);
        let m = self.rng.gen_range(-2..=1);
        Monomial::atom(alpha, m)
    }

    /// A log-atomic monomial with a wider tower range.
    pub fn log_atomic(&mut self, kappa_depth: u32) -> Monomial {
        let alpha = self.rng.gen_range(0..=kappa_depth);
        let m = self.rng.gen_range(-4..=3);
        Monomial::atom(alpha, m)
    }

    fn infinite_monomial(&mut self, depth: usize) -> Monomial {
        if depth > 0 && self.budget > 0 && self.rng.gen_bool(0.4) {
            let g = self.purely_infinite(depth - 1);
            let g = match g.signum() {
                Ok(Some(core::cmp::Ordering::Less)) => g.neg(),
                _ => g,
            };
            Monomial::from_log(&g).expect("exact purely infinite")
        } else {
            self.atom()
        }
    }

    fn monomial(&mut self, depth: usize) -> Monomial {
        let m = self.infinite_monomial(depth);
        if self.rng.gen_bool(0.35) {
            m.inv()
        } else {
            m
        }
    }

    /// Nonzero, exact and purely infinite.
    pub fn purely_infinite(&mut self, depth: usize) -> Transseries {
        let n = self.rng.gen_range(1..=self.budget.clamp(1, 3));
        let mut acc = Transseries::zero();
        for _ in 0..n {
            self.budget = self.budget.saturating_sub(1);
            if self.spec.allow_tails && self.rng.gen_bool(0.2) {
                let alpha = self.rng.gen_range(0..=self.spec.kappa_depth);
                let s = self.rng.gen_range(1..=2);
                acc = acc.add(&Transseries::tail(alpha, s, self.coeff()));
            } else {
                let m = self.infinite_monomial(depth);
                acc = acc.add(&Transseries::term(self.coeff(), m));
            }
            if self.budget == 0 {
                break;
            }
        }
        if acc.is_zero() {
            Transseries::omega()
        } else {
            acc
        }
    }

    /// An exact value of the configured shape.
    pub fn value(&mut self) -> Transseries {
        self.budget = self.spec.size.max(1);
        let n = self.rng.gen_range(1..=self.budget.min(4));
        let mut acc = Transseries::zero();
        for _ in 0..n {
            if self.budget == 0 {
                break;
            }
            self.budget -= 1;
            let r = self.rng.gen_range(0..100);
            let t = if r < 12 {
                Transseries::from_coeff(self.coeff())
            } else if r < 18 && self.spec.allow_tails {
                let alpha = self.rng.gen_range(0..=self.spec.kappa_depth);
                Transseries::tail(alpha, self.rng.gen_range(1..=2), self.coeff())
            } else {
                let m = self.monomial(self.spec.depth);
                Transseries::term(self.coeff(), m)
            };
            acc = acc.add(&t);
        }
        acc
    }

    /// A nonzero value whose support lies below 1.
    pub fn infinitesimal(&mut self) -> Transseries {
        let x = self.value();
        let (_, _, eps) = x.decompose().expect("exact");
        if eps.is_zero() {
            Transseries::term(self.coeff(), self.infinite_monomial(self.spec.depth).inv())
        } else {
            eps
        }
    }

    /// A value above every integer.
    pub fn positive_infinite(&mut self) -> Transseries {
        loop {
            let x = self.value();
            if let Ok(t) = x.leading_term() {
                if t.mono > Monomial::One {
                    return if t.is_positive() { x } else { x.neg() };
                }
            }
        }
    }
}

/// A single value drawn from `spec`; the same spec always gives the same value.
pub fn gen_random(spec: &GenSpec) -> Transseries {
    Generator::new(*spec).value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use surreal_core::nested::ntrank;

    #[test]
    fn deterministic() {
        let s = GenSpec::default().with_seed(42);
        assert_eq!(gen_random(&s), gen_random(&s));
    }

    #[test]
    fn smallest_productions() {
        for seed in 0..50 {
            let s = GenSpec {
                size: 1,
                depth: 0,
                seed,
                ..GenSpec::default()
            };
            let x = gen_random(&s);
            assert!(x.terms().len() <= 1);
            assert!(x.depth() <= 1);
        }
    }

    #[test]
    fn tail_free_values_have_ranks() {
        for seed in 0..30 {
            let x = gen_random(&GenSpec::default().with_seed(seed));
            assert!(ntrank(&x).is_ok(), "{x}");
        }
    }
}
