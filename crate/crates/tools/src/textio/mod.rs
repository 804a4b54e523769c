//! Text input and output.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ['^' exponent]
//! exponent := ['('] ['-'] nat ['/' nat] [')']
//! atom   := nat | 'w' | 'k' '(' ['-'] nat ')' | 'tail' '(' nat ',' nat ')'
//!         | 'exp' '(' expr ')' | 'log' '(' expr ')' | 'logN' '(' expr ')'
//!         | 'O' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Plain output lists terms largest first as `c*m`, writes `w`, `k(-a)`,
//! `logN(..)` and `exp(..)` towers for atoms, `1/m` for the inverse of an
//! atom and `exp(gamma)` for every other monomial. Tails print as
//! `c*tail(a,s)` at the position of their head and the remainder as a final
//! `O(m)`.
pub mod latex;
mod parser;
pub mod structured;

pub use parser::{parse, parse_rational, parse_with, ParseError};
use surreal_core::Transseries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Latex,
    Structured,
}

pub fn format(x: &Transseries, style: Style) -> String {
    match style {
        Style::Plain => x.to_string(),
        Style::Latex => latex::series(x),
        Style::Structured => structured::encode(x).to_string(),
    }
}
