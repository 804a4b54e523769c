//! The derivation, built from a pre-derivation on log-atomic monomials and
//! extended along paths.
use alloc::vec::Vec;

use num_traits::One;

use crate::context::PrecisionContext;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::series::{Acc, Coefficient, Term, Transseries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Pre-derivation with the kappa correction `-sum_{beta<alpha} tail(beta,1)`.
    #[default]
    Simplest,
    /// Pre-derivation `exp(S + tail(alpha,1))` without kappa terms.
    NoKappaCorrection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct DerivationConfig {
    pub mode: Mode,
}

impl DerivationConfig {
    pub const SIMPLEST: DerivationConfig = DerivationConfig { mode: Mode::Simplest };
    pub const NO_KAPPA: DerivationConfig = DerivationConfig {
        mode: Mode::NoKappaCorrection,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    LogAtomic(Monomial),
    /// `log_index(kappa_{-alpha})`, reached through a tail family.
    TailLeaf {
        alpha: u32,
        index: u64,
    },
    /// Members `from, from+1, ...` of a tail family that were not expanded.
    Truncated {
        alpha: u32,
        from: u64,
        coeff: Coefficient,
    },
}

/// A descent `P(0), P(1), ...` where each term is a term of the exponent of
/// the previous one. `entries` holds the terms before the first log-atomic one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub entries: Vec<Term>,
    pub terminal: Terminal,
}

impl Path {
    /// The log-atomic monomial the path ends in.
    pub fn leaf(&self) -> Option<Monomial> {
        match &self.terminal {
            Terminal::LogAtomic(m) => Some(m.clone()),
            Terminal::TailLeaf { alpha, index } => Some(Monomial::log_atom(*alpha, *index)),
            Terminal::Truncated { .. } => None,
        }
    }

    pub fn is_truncated(&self) -> bool {
        matches!(self.terminal, Terminal::Truncated { .. })
    }

    /// The full sequence of terms, the log-atomic leaf included.
    pub fn terms(&self) -> Vec<Term> {
        let mut v = self.entries.clone();
        if let Some(l) = self.leaf() {
            v.push(Term::from(l));
        }
        v
    }
}

/// `S(alpha, m)`: `sum_{j<m} exp_j(kappa_{-alpha})` for `m >= 0`, otherwise
/// `-sum_{1<=i<=|m|} log_i(kappa_{-alpha})`.
fn tower_sum(alpha: u32, m: i64) -> Transseries {
    let mut acc = Acc::new();
    if m >= 0 {
        for j in 0..m {
            acc.term(Coefficient::one(), Monomial::atom(alpha, j));
        }
    } else {
        for i in 1..=(-m) {
            acc.term(-Coefficient::one(), Monomial::atom(alpha, -i));
        }
    }
    acc.finish()
}

pub fn pre_derive_monomial(lam: &Monomial, cfg: &DerivationConfig) -> Result<Monomial> {
    let (alpha, m) = match lam {
        Monomial::Atom { alpha, m } => (*alpha, *m),
        _ => return Err(Error::NotLogAtomic),
    };
    let mut acc = Acc::new();
    acc.series(&tower_sum(alpha, m));
    match cfg.mode {
        Mode::Simplest => {
            for beta in 0..alpha {
                acc.tail(beta, 1, -Coefficient::one());
            }
        }
        Mode::NoKappaCorrection => acc.tail(alpha, 1, Coefficient::one()),
    }
    Ok(Monomial::from_log_unchecked(acc.finish()))
}

/// The pre-derivation on a log-atomic monomial. Always an exact monomial.
pub fn pre_derive(lam: &Monomial, cfg: &DerivationConfig) -> Result<Transseries> {
    pre_derive_monomial(lam, cfg).map(Transseries::monomial)
}

fn push_leaf(out: &mut Vec<Path>, prefix: &mut Vec<Term>, t: &Term, tail_index: Option<u64>) {
    if let Monomial::Atom { alpha, m } = t.mono {
        let terminal = |shift: u64| match tail_index {
            Some(i) => Terminal::TailLeaf {
                alpha,
                index: i + shift,
            },
            None => Terminal::LogAtomic(Monomial::atom(alpha, m - shift as i64)),
        };
        if t.coeff.is_one() {
            out.push(Path {
                entries: prefix.clone(),
                terminal: terminal(0),
            });
        } else {
            prefix.push(t.clone());
            out.push(Path {
                entries: prefix.clone(),
                terminal: terminal(1),
            });
            prefix.pop();
        }
    }
}

fn walk(x: &Transseries, prefix: &mut Vec<Term>, out: &mut Vec<Path>, ctx: &PrecisionContext) {
    for t in x.terms() {
        match &t.mono {
            Monomial::One => {}
            Monomial::Atom { .. } => push_leaf(out, prefix, t, None),
            Monomial::Exp(g) => {
                prefix.push(t.clone());
                walk(g, prefix, out, ctx);
                prefix.pop();
            }
        }
    }
    for f in x.tails() {
        let end = f.start + ctx.tail_expand as u64;
        for i in f.start..end {
            push_leaf(out, prefix, &Term::new(f.coeff.clone(), f.member(i)), Some(i));
        }
        out.push(Path {
            entries: prefix.clone(),
            terminal: Terminal::Truncated {
                alpha: f.alpha,
                from: end,
                coeff: f.coeff.clone(),
            },
        });
    }
}

/// All paths of `x`, depth first. Tails contribute `tail_expand` members and
/// one `Truncated` sentinel each.
pub fn enumerate_paths(x: &Transseries, ctx: &PrecisionContext) -> Vec<Path> {
    let mut out = Vec::new();
    walk(x, &mut Vec::new(), &mut out, ctx);
    out
}

fn prefix_product(entries: &[Term]) -> Term {
    entries.iter().fold(Term::from(Monomial::One), |acc, t| acc.mul(t))
}

pub fn path_derivative(p: &Path, cfg: &DerivationConfig) -> Result<Term> {
    let leaf = p.leaf().ok_or(Error::TruncatedPath)?;
    let d = pre_derive_monomial(&leaf, cfg)?;
    debug_assert_eq!(
        pre_derive_monomial(&leaf.log().leading_monomial()?, cfg)?.mul(&leaf),
        d,
        "path derivative depends on where the path is cut"
    );
    Ok(prefix_product(&p.entries).mul(&Term::from(d)))
}

/// Monomial of the derivative of the first unexpanded member of a tail.
fn truncated_bound(p: &Path, cfg: &DerivationConfig) -> Monomial {
    let (alpha, from, coeff) = match &p.terminal {
        Terminal::Truncated { alpha, from, coeff } => (*alpha, *from, coeff),
        _ => unreachable!(),
    };
    let mut entries = p.entries.clone();
    let leaf = if coeff.is_one() {
        Monomial::log_atom(alpha, from)
    } else {
        entries.push(Term::new(coeff.clone(), Monomial::log_atom(alpha, from)));
        Monomial::log_atom(alpha, from + 1)
    };
    let d = pre_derive_monomial(&leaf, cfg).expect("atom");
    prefix_product(&entries).mono.mul(&d)
}

/// `∂x` as the sum of all path derivatives. Unexpanded tail members and the
/// input's own remainder turn into a remainder marker.
pub fn derive(x: &Transseries, cfg: &DerivationConfig, ctx: &PrecisionContext) -> Transseries {
    let mut acc = Acc::new();
    for p in enumerate_paths(x, ctx) {
        if p.is_truncated() {
            acc.marker(truncated_bound(&p, cfg));
        } else {
            let t = path_derivative(&p, cfg).expect("complete path");
            acc.term(t.coeff, t.mono);
        }
    }
    if let Some(m) = x.marker() {
        if m.is_one() {
            acc.marker(Monomial::One);
        } else {
            let p = dominant_path(&Transseries::monomial(m.clone())).expect("nonconstant");
            acc.marker(path_derivative(&p, cfg).expect("complete path").mono);
        }
    }
    acc.finish()
}

/// The path through leading terms of `x` minus its constant coefficient.
pub fn dominant_path(x: &Transseries) -> Result<Path> {
    let y = x.sub(&Transseries::from_coeff(x.constant_coeff()));
    if y.is_zero() {
        return Err(Error::ConstantValue);
    }
    let mut cur = y.leading_term()?;
    let mut entries = Vec::new();
    loop {
        match &cur.mono {
            Monomial::Atom { alpha, m } => {
                let (alpha, m) = (*alpha, *m);
                if cur.coeff.is_one() {
                    return Ok(Path {
                        entries,
                        terminal: Terminal::LogAtomic(cur.mono),
                    });
                }
                entries.push(cur);
                return Ok(Path {
                    entries,
                    terminal: Terminal::LogAtomic(Monomial::atom(alpha, m - 1)),
                });
            }
            Monomial::Exp(g) => {
                let next = g.leading_term()?;
                entries.push(cur);
                cur = next;
            }
            Monomial::One => return Err(Error::ConstantValue),
        }
    }
}

/// `∂x / x`, exact when `x` is a single term.
pub fn log_derivative(x: &Transseries, cfg: &DerivationConfig, ctx: &PrecisionContext) -> Result<Transseries> {
    if x.is_zero() {
        return Err(Error::ZeroDivision);
    }
    let d = derive(x, cfg, ctx);
    match x.as_term() {
        Some(t) => Ok(d.mul_term(&t.inv(), ctx)),
        None => Ok(d.mul(&x.inverse(ctx)?, ctx)),
    }
}
