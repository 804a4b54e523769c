// Plain text rendering. The output is accepted back by the expression parser.
use core::fmt::{self, Display, Formatter, Write};

use num_traits::{One, Signed};

use crate::monomial::Monomial;
use crate::series::{Coefficient, TailFamily, Term, Transseries};

fn write_atom(f: &mut Formatter<'_>, alpha: u32, m: i64) -> fmt::Result {
    let base = |f: &mut Formatter<'_>| {
        if alpha == 0 {
            f.write_char('w')
        } else {
            write!(f, "k(-{alpha})")
        }
    };
    if m < 0 {
        if m == -1 {
            f.write_str("log(")?;
        } else {
            write!(f, "log{}(", -m)?;
        }
        base(f)?;
        f.write_char(')')
    } else {
        for _ in 0..m {
            f.write_str("exp(")?;
        }
        base(f)?;
        for _ in 0..m {
            f.write_char(')')?;
        }
        Ok(())
    }
}

impl Display for Monomial {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::One => f.write_char('1'),
            Monomial::Atom { alpha, m } => write_atom(f, *alpha, *m),
            Monomial::Exp(g) => {
                if let Some(t) = g.as_term() {
                    if let Monomial::Atom { alpha, m } = t.mono {
                        if t.coeff == -Coefficient::one() {
                            f.write_str("1/")?;
                            return write_atom(f, alpha, m + 1);
                        }
                    }
                }
                write!(f, "exp({g})")
            }
        }
    }
}

fn write_coeff_mono(f: &mut Formatter<'_>, c: &Coefficient, mono: &dyn Display, one: bool) -> fmt::Result {
    if one {
        return write!(f, "{c}");
    }
    if c.is_one() {
        write!(f, "{mono}")
    } else if *c == -Coefficient::one() {
        write!(f, "-{mono}")
    } else {
        write!(f, "{c}*{mono}")
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_coeff_mono(f, &self.coeff, &self.mono, self.mono.is_one())
    }
}

struct TailName<'a>(&'a TailFamily);

impl Display for TailName<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "tail({},{})", self.0.alpha, self.0.start)
    }
}

impl Display for TailFamily {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_coeff_mono(f, &self.coeff, &TailName(self), false)
    }
}

impl Display for Transseries {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        // terms and tails interleaved by head monomial, largest first
        let mut pieces: alloc::vec::Vec<(Monomial, Coefficient, Piece<'_>)> = self
            .terms()
            .iter()
            .map(|t| (t.mono.clone(), t.coeff.clone(), Piece::Term(&t.mono)))
            .chain(
                self.tails()
                    .iter()
                    .map(|tf| (tf.head(), tf.coeff.clone(), Piece::Tail(tf))),
            )
            .collect();
        pieces.sort_by(|a, b| b.0.cmp(&a.0));
        let mut first = true;
        for (_, c, p) in &pieces {
            let c = if first {
                c.clone()
            } else if c.is_negative() {
                f.write_str(" - ")?;
                -c
            } else {
                f.write_str(" + ")?;
                c.clone()
            };
            match p {
                Piece::Term(m) => write_coeff_mono(f, &c, m, m.is_one())?,
                Piece::Tail(tf) => write_coeff_mono(f, &c, &TailName(tf), false)?,
            }
            first = false;
        }
        if let Some(m) = self.marker() {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O({m})")?;
            first = false;
        }
        if first {
            f.write_char('0')?;
        }
        Ok(())
    }
}

enum Piece<'a> {
    Term(&'a Monomial),
    Tail(&'a TailFamily),
}
