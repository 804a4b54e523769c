use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::convert::TryFrom;
use core::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// Exact rational coefficient.
pub type Coefficient = BigRational;

pub(crate) fn q(n: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(n))
}

/// A nonzero coefficient times a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coeff: Coefficient,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: Coefficient, mono: Monomial) -> Self {
        Term { coeff, mono }
    }

    pub fn mul(&self, other: &Term) -> Term {
        Term::new(&self.coeff * &other.coeff, self.mono.mul(&other.mono))
    }

    /// Panics on a zero coefficient; stored terms never have one.
    pub fn inv(&self) -> Term {
        Term::new(self.coeff.recip(), self.mono.inv())
    }

    pub fn div(&self, other: &Term) -> Term {
        self.mul(&other.inv())
    }

    pub fn neg(&self) -> Term {
        Term::new(-&self.coeff, self.mono.clone())
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }
}

/// `coeff * sum_{i >= start} log_i(kappa_{-alpha})`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TailFamily {
    pub alpha: u32,
    pub start: u64,
    pub coeff: Coefficient,
}

impl TailFamily {
    pub fn head(&self) -> Monomial {
        Monomial::log_atom(self.alpha, self.start)
    }

    pub fn member(&self, i: u64) -> Monomial {
        Monomial::log_atom(self.alpha, i)
    }
}

/// A finite Hahn series with optional tail families and an optional
/// remainder bound `O(marker)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Transseries {
    terms: Vec<Term>,
    tails: Vec<TailFamily>,
    marker: Option<Monomial>,
}

/// Accumulates terms, tails and markers and produces the normal form.
#[derive(Default)]
pub(crate) struct Acc {
    terms: BTreeMap<Monomial, Coefficient>,
    tails: BTreeMap<u32, (u64, Coefficient)>,
    marker: Option<Monomial>,
}

impl Acc {
    pub(crate) fn new() -> Self {
        Acc::default()
    }

    pub(crate) fn term(&mut self, c: Coefficient, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub(crate) fn tail(&mut self, alpha: u32, start: u64, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let start = start.max(1);
        match self.tails.remove(&alpha) {
            None => {
                self.tails.insert(alpha, (start, c));
            }
            Some((s0, c0)) => {
                let (lo, hi, early) = if s0 <= start {
                    (s0, start, c0.clone())
                } else {
                    (start, s0, c.clone())
                };
                for i in lo..hi {
                    self.term(early.clone(), Monomial::log_atom(alpha, i));
                }
                let sum = c0 + c;
                if !sum.is_zero() {
                    self.tails.insert(alpha, (hi, sum));
                }
            }
        }
    }

    pub(crate) fn marker(&mut self, m: Monomial) {
        match &self.marker {
            Some(old) if *old >= m => {}
            _ => self.marker = Some(m),
        }
    }

    pub(crate) fn series(&mut self, x: &Transseries) {
        for t in &x.terms {
            self.term(t.coeff.clone(), t.mono.clone());
        }
        for f in &x.tails {
            self.tail(f.alpha, f.start, f.coeff.clone());
        }
        if let Some(m) = &x.marker {
            self.marker(m.clone());
        }
    }

    pub(crate) fn finish(mut self) -> Transseries {
        let mut tails = Vec::new();
        let tail_list: Vec<(u32, (u64, Coefficient))> = core::mem::take(&mut self.tails).into_iter().collect();
        for (alpha, (start, c)) in tail_list {
            let mut start = start;
            // explicit terms inside the family's range are split out
            let inside: Vec<u64> = self
                .terms
                .keys()
                .filter_map(|m| match m {
                    Monomial::Atom { alpha: a, m: k } if *a == alpha && *k <= -(start as i64) => Some((-*k) as u64),
                    _ => None,
                })
                .collect();
            if let Some(&imax) = inside.iter().max() {
                for i in start..=imax {
                    self.term(c.clone(), Monomial::log_atom(alpha, i));
                }
                start = imax + 1;
            }
            while start > 1 {
                let below = Monomial::log_atom(alpha, start - 1);
                if self.terms.get(&below) == Some(&c) {
                    self.terms.remove(&below);
                    start -= 1;
                } else {
                    break;
                }
            }
            tails.push(TailFamily { alpha, start, coeff: c });
        }

        if let Some(mk) = &self.marker {
            self.terms.retain(|m, _| m > mk);
            let mut kept = Vec::new();
            for f in tails {
                if f.head() <= *mk {
                    continue;
                }
                if mk.below_all_logs(f.alpha) {
                    kept.push(f);
                    continue;
                }
                let mut i = f.start;
                while f.member(i) > *mk {
                    self.terms.insert(f.member(i), f.coeff.clone());
                    i += 1;
                }
            }
            tails = kept;
        }

        let terms = self
            .terms
            .into_iter()
            .rev()
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        Transseries {
            terms,
            tails,
            marker: self.marker,
        }
    }
}

impl Transseries {
    pub fn zero() -> Self {
        Transseries::default()
    }

    pub fn one() -> Self {
        Self::from_coeff(Coefficient::one())
    }

    pub fn from_coeff(c: Coefficient) -> Self {
        Self::term(c, Monomial::One)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(q(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_coeff(Coefficient::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Coefficient::one(), m)
    }

    pub fn term(c: Coefficient, m: Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Transseries {
            terms: alloc::vec![Term { coeff: c, mono: m }],
            tails: Vec::new(),
            marker: None,
        }
    }

    pub fn from_term(t: Term) -> Self {
        Self::term(t.coeff, t.mono)
    }

    pub fn omega() -> Self {
        Self::monomial(Monomial::omega())
    }

    pub fn kappa(alpha: u32) -> Self {
        Self::monomial(Monomial::kappa(alpha))
    }

    pub fn atom(alpha: u32, m: i64) -> Self {
        Self::monomial(Monomial::atom(alpha, m))
    }

    /// `c * sum_{i >= start} log_i(kappa_{-alpha})`; `start` is clamped to 1.
    pub fn tail(alpha: u32, start: u64, c: Coefficient) -> Self {
        let mut acc = Acc::new();
        acc.tail(alpha, start, c);
        acc.finish()
    }

    /// The bare remainder `O(m)`.
    pub fn big_o(m: Monomial) -> Self {
        Transseries {
            terms: Vec::new(),
            tails: Vec::new(),
            marker: Some(m),
        }
    }

    /// Normalizes arbitrary parts; duplicate monomials and tails are summed.
    pub fn from_parts(terms: Vec<Term>, tails: Vec<TailFamily>, marker: Option<Monomial>) -> Self {
        let mut acc = Acc::new();
        for t in terms {
            acc.term(t.coeff, t.mono);
        }
        for f in tails {
            acc.tail(f.alpha, f.start, f.coeff);
        }
        if let Some(m) = marker {
            acc.marker(m);
        }
        acc.finish()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn tails(&self) -> &[TailFamily] {
        &self.tails
    }

    pub fn marker(&self) -> Option<&Monomial> {
        self.marker.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.tails.is_empty() && self.marker.is_none()
    }

    pub fn is_exact(&self) -> bool {
        self.marker.is_none()
    }

    pub fn is_tail_free(&self) -> bool {
        self.tails.is_empty()
    }

    /// No tails anywhere, including inside exponents.
    pub fn is_tail_free_deep(&self) -> bool {
        self.tails.is_empty()
            && self.terms.iter().all(|t| match &t.mono {
                Monomial::Exp(g) => g.is_tail_free_deep(),
                _ => true,
            })
            && match &self.marker {
                Some(Monomial::Exp(g)) => g.is_tail_free_deep(),
                _ => true,
            }
    }

    pub fn is_purely_infinite(&self) -> bool {
        self.terms.iter().all(|t| t.mono > Monomial::One) && self.marker.as_ref().is_none_or(|m| *m > Monomial::One)
    }

    /// Coefficient of the monomial 1.
    pub fn constant_coeff(&self) -> Coefficient {
        self.terms
            .iter()
            .find(|t| t.mono.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Coefficient::zero)
    }

    pub fn as_constant(&self) -> Option<Coefficient> {
        if !self.is_exact() || !self.tails.is_empty() {
            return None;
        }
        match self.terms.as_slice() {
            [] => Some(Coefficient::zero()),
            [t] if t.mono.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// The value as a single exact term, if it is one.
    pub fn as_term(&self) -> Option<&Term> {
        if self.is_exact() && self.tails.is_empty() && self.terms.len() == 1 {
            Some(&self.terms[0])
        } else {
            None
        }
    }

    pub fn depth(&self) -> usize {
        self.terms.iter().map(|t| t.mono.depth()).max().unwrap_or(0)
    }

    /// Number of terms and tail families, counted through exponents.
    pub fn size(&self) -> usize {
        self.tails.len()
            + self
                .terms
                .iter()
                .map(|t| match &t.mono {
                    Monomial::Exp(g) => 1 + g.size(),
                    _ => 1,
                })
                .sum::<usize>()
    }

    pub fn with_marker(&self, m: Monomial) -> Self {
        let mut acc = Acc::new();
        acc.series(self);
        acc.marker(m);
        acc.finish()
    }

    /// Drops the remainder marker.
    pub fn without_marker(&self) -> Self {
        Transseries {
            terms: self.terms.clone(),
            tails: self.tails.clone(),
            marker: None,
        }
    }

    pub fn add(&self, other: &Transseries) -> Transseries {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut acc = Acc::new();
        acc.series(self);
        acc.series(other);
        acc.finish()
    }

    pub fn sub(&self, other: &Transseries) -> Transseries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Transseries {
        self.scale(&-Coefficient::one())
    }

    /// Exact multiplication by a rational; tails stay tails.
    pub fn scale(&self, c: &Coefficient) -> Transseries {
        if c.is_zero() {
            return Transseries::zero();
        }
        Transseries {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(&t.coeff * c, t.mono.clone()))
                .collect(),
            tails: self
                .tails
                .iter()
                .map(|f| TailFamily {
                    alpha: f.alpha,
                    start: f.start,
                    coeff: &f.coeff * c,
                })
                .collect(),
            marker: self.marker.clone(),
        }
    }

    /// Replaces every tail by its first `t` members and a marker at the next one.
    pub fn expand_tails(&self, t: usize) -> Transseries {
        if self.tails.is_empty() {
            return self.clone();
        }
        let mut acc = Acc::new();
        for term in &self.terms {
            acc.term(term.coeff.clone(), term.mono.clone());
        }
        for f in &self.tails {
            for i in f.start..f.start + t as u64 {
                acc.term(f.coeff.clone(), f.member(i));
            }
            acc.marker(f.member(f.start + t as u64));
        }
        if let Some(m) = &self.marker {
            acc.marker(m.clone());
        }
        acc.finish()
    }

    /// Largest monomial that may carry a nonzero coefficient, markers included.
    pub fn bound(&self) -> Option<Monomial> {
        let mut best = self.terms.first().map(|t| t.mono.clone());
        for f in &self.tails {
            let h = f.head();
            if best.as_ref().is_none_or(|b| h > *b) {
                best = Some(h);
            }
        }
        if let Some(m) = &self.marker {
            if best.as_ref().is_none_or(|b| m > b) {
                best = Some(m.clone());
            }
        }
        best
    }

    pub fn mul(&self, other: &Transseries, ctx: &PrecisionContext) -> Transseries {
        if (self.is_exact() && self.terms.is_empty() && self.tails.is_empty())
            || (other.is_exact() && other.terms.is_empty() && other.tails.is_empty())
        {
            return Transseries::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let x = self.expand_tails(ctx.tail_expand);
        let y = other.expand_tails(ctx.tail_expand);
        let mut acc = Acc::new();
        for s in &x.terms {
            for t in &y.terms {
                acc.term(&s.coeff * &t.coeff, s.mono.mul(&t.mono));
            }
        }
        if let (Some(mx), Some(by)) = (&x.marker, y.bound()) {
            acc.marker(mx.mul(&by));
        }
        if let (Some(my), Some(bx)) = (&y.marker, x.bound()) {
            acc.marker(my.mul(&bx));
        }
        acc.finish()
    }

    pub fn mul_term(&self, t: &Term, ctx: &PrecisionContext) -> Transseries {
        self.mul(&Transseries::from_term(t.clone()), ctx)
    }

    /// Geometric-series inverse with `series_order` terms.
    pub fn inverse(&self, ctx: &PrecisionContext) -> Result<Transseries> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let x = self.expand_tails(ctx.tail_expand);
        let lead = x.leading_term().map_err(|e| match e {
            Error::ZeroValue => Error::ZeroDivision,
            e => e,
        })?;
        let tinv = lead.inv();
        let eps = x.mul_term(&tinv, ctx).sub(&Transseries::one());
        if eps.is_zero() {
            return Ok(Transseries::from_term(tinv));
        }
        let b = eps.bound().expect("nonzero remainder has a bound");
        let cut = b.powi(ctx.series_order.max(1) as i64);
        let neg_eps = eps.neg();
        let mut sum = Transseries::one();
        let mut p = Transseries::one();
        for _ in 1..ctx.series_order {
            p = p.mul(&neg_eps, ctx).with_marker(cut.clone());
            sum = sum.add(&p);
        }
        Ok(sum.with_marker(cut).mul_term(&tinv, ctx))
    }

    pub fn div(&self, other: &Transseries, ctx: &PrecisionContext) -> Result<Transseries> {
        if let Some(t) = other.as_term() {
            return Ok(self.mul_term(&t.inv(), ctx));
        }
        Ok(self.mul(&other.inverse(ctx)?, ctx))
    }

    /// The truncation `x|m`: everything strictly above `m`.
    pub fn truncate_at(&self, m: &Monomial) -> Transseries {
        let mut acc = Acc::new();
        for t in self.terms.iter().filter(|t| t.mono > *m) {
            acc.term(t.coeff.clone(), t.mono.clone());
        }
        for f in &self.tails {
            if f.head() <= *m {
                continue;
            }
            if m.below_all_logs(f.alpha) {
                acc.tail(f.alpha, f.start, f.coeff.clone());
            } else {
                let mut i = f.start;
                while f.member(i) > *m {
                    acc.term(f.coeff.clone(), f.member(i));
                    i += 1;
                }
            }
        }
        if let Some(mk) = &self.marker {
            if mk > m {
                acc.marker(mk.clone());
            }
        }
        acc.finish()
    }

    /// Splits `x = j + r + eps` with `j` purely infinite and `eps` infinitesimal.
    pub fn decompose(&self) -> Result<(PurelyInfinite, Coefficient, Transseries)> {
        if let Some(mk) = &self.marker {
            if *mk >= Monomial::One {
                return Err(Error::IndeterminateSplit);
            }
        }
        let j = Transseries {
            terms: self.terms.iter().filter(|t| t.mono > Monomial::One).cloned().collect(),
            tails: self.tails.clone(),
            marker: None,
        };
        let r = self.constant_coeff();
        let eps = Transseries {
            terms: self.terms.iter().filter(|t| t.mono < Monomial::One).cloned().collect(),
            tails: Vec::new(),
            marker: self.marker.clone(),
        };
        Ok((PurelyInfinite(j), r, eps))
    }

    pub fn leading_term(&self) -> Result<Term> {
        let mut best: Option<Term> = self.terms.first().cloned();
        for f in &self.tails {
            let h = f.head();
            if best.as_ref().is_none_or(|b| h > b.mono) {
                best = Some(Term::new(f.coeff.clone(), h));
            }
        }
        match (best, &self.marker) {
            (None, None) => Err(Error::ZeroValue),
            (None, Some(_)) => Err(Error::IndeterminateLeading),
            (Some(b), Some(mk)) if *mk >= b.mono => Err(Error::IndeterminateLeading),
            (Some(b), _) => Ok(b),
        }
    }

    pub fn leading_monomial(&self) -> Result<Monomial> {
        self.leading_term().map(|t| t.mono)
    }

    /// Sign of the value; `None` for exact zero.
    pub fn signum(&self) -> Result<Option<core::cmp::Ordering>> {
        if self.is_zero() {
            return Ok(None);
        }
        let t = self.leading_term()?;
        Ok(Some(if t.coeff.is_positive() {
            core::cmp::Ordering::Greater
        } else {
            core::cmp::Ordering::Less
        }))
    }

    /// Every monomial that occurs explicitly, tails excluded.
    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.mono)
    }

    /// True when `self` is an initial segment of `other` (plain truncation).
    pub fn is_truncation_of(&self, other: &Transseries) -> bool {
        let d = other.sub(self);
        if d.is_zero() {
            return true;
        }
        let lead = match d.bound() {
            Some(m) => m,
            None => return true,
        };
        self.terms.iter().all(|t| lead < t.mono) && self.tails.iter().all(|f| lead.below_all_logs(f.alpha))
    }
}

/// An exact-or-marked value whose support lies strictly above 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PurelyInfinite(Transseries);

impl PurelyInfinite {
    pub fn as_series(&self) -> &Transseries {
        &self.0
    }

    pub fn into_inner(self) -> Transseries {
        self.0
    }

    /// `exp` of this value as a monomial.
    pub fn exp(&self) -> Result<Monomial> {
        Monomial::from_log(&self.0)
    }
}

impl TryFrom<Transseries> for PurelyInfinite {
    type Error = Error;

    fn try_from(x: Transseries) -> Result<Self> {
        if x.is_purely_infinite() {
            Ok(PurelyInfinite(x))
        } else {
            Err(Error::NotPurelyInfinite)
        }
    }
}

impl From<PurelyInfinite> for Transseries {
    fn from(p: PurelyInfinite) -> Transseries {
        p.0
    }
}

impl From<Term> for Transseries {
    fn from(t: Term) -> Transseries {
        Transseries::from_term(t)
    }
}

impl From<Monomial> for Transseries {
    fn from(m: Monomial) -> Transseries {
        Transseries::monomial(m)
    }
}

impl From<i64> for Transseries {
    fn from(n: i64) -> Transseries {
        Transseries::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl ops::$tr<&Transseries> for &Transseries {
            type Output = Transseries;
            fn $f(self, rhs: &Transseries) -> Transseries {
                let g: fn(&Transseries, &Transseries) -> Transseries = $body;
                g(self, rhs)
            }
        }
        impl ops::$tr<Transseries> for Transseries {
            type Output = Transseries;
            fn $f(self, rhs: Transseries) -> Transseries {
                let g: fn(&Transseries, &Transseries) -> Transseries = $body;
                g(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add(b));
binop!(Sub, sub, |a, b| a.sub(b));
binop!(Mul, mul, |a, b| a.mul(b, &PrecisionContext::default()));

impl ops::Neg for Transseries {
    type Output = Transseries;
    fn neg(self) -> Transseries {
        Transseries::neg(&self)
    }
}

impl ops::Neg for &Transseries {
    type Output = Transseries;
    fn neg(self) -> Transseries {
        Transseries::neg(self)
    }
}
