use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use surreal_core::explog;
use surreal_core::{Coefficient, Error, PrecisionContext, Transseries};
use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum ParseError {
    #[error("{line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{col}: {source}")]
    Domain {
        line: usize,
        col: usize,
        #[source]
        source: Error,
    },
}

impl ParseError {
    /// The engine error behind a domain failure, if any.
    pub fn domain_error(&self) -> Option<&Error> {
        match self {
            ParseError::Domain { source, .. } => Some(source),
            ParseError::Syntax { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(src: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[s..i].iter().collect();
            col += i - s;
            toks.push((Tok::Int(text.parse().expect("digits")), l0, c0));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            col += i - s;
            toks.push((Tok::Ident(chars[s..i].iter().collect()), l0, c0));
        } else if "+-*/^(),".contains(c) {
            toks.push((Tok::Sym(c), l0, c0));
            i += 1;
            col += 1;
        } else {
            return Err(ParseError::Syntax {
                line,
                col,
                expected: vec!["an expression".into()],
                found: format!("`{c}`"),
            });
        }
    }
    toks.push((Tok::Eof, line, col));
    Ok(Lexer { toks })
}

struct Parser<'c> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    ctx: &'c PrecisionContext,
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError::Syntax {
            line,
            col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn domain<T>(&self, at: (usize, usize), r: Result<T, Error>) -> PResult<T> {
        r.map_err(|source| ParseError::Domain {
            line: at.0,
            col: at.1,
            source,
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn nat(&mut self) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["a natural number"]),
        }
    }

    fn small_nat(&mut self) -> PResult<u64> {
        let at = self.here();
        let n = self.nat()?;
        match n.to_u64() {
            Some(v) => Ok(v),
            None => self.domain(at, Err(Error::KappaIndex(i64::MAX))),
        }
    }

    fn expr(&mut self) -> PResult<Transseries> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Transseries> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?, self.ctx);
            } else if *self.peek() == Tok::Sym('/') {
                let at = self.here();
                self.bump();
                let d = self.unary()?;
                acc = self.domain(at, acc.div(&d, self.ctx))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<Transseries> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.factor()
        }
    }

    fn rational_exponent(&mut self) -> PResult<Coefficient> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let n = self.nat()?;
        let at = self.here();
        let d = if self.eat('/') { self.nat()? } else { BigInt::from(1) };
        if d.is_zero() {
            return self.domain(at, Err(Error::ZeroDivision));
        }
        if paren {
            self.expect(')')?;
        }
        let q = Coefficient::new(n, d);
        Ok(if neg { -q } else { q })
    }

    fn factor(&mut self) -> PResult<Transseries> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            let at = self.here();
            self.bump();
            let q = self.rational_exponent()?;
            return self.domain(at, explog::pow(&base, &q, self.ctx));
        }
        Ok(base)
    }

    fn call_arg(&mut self) -> PResult<Transseries> {
        self.expect('(')?;
        let v = self.expr()?;
        self.expect(')')?;
        Ok(v)
    }

    fn atom(&mut self) -> PResult<Transseries> {
        let at = self.here();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Transseries::from_coeff(Coefficient::from_integer(n)))
            }
            Tok::Sym('(') => self.call_arg(),
            Tok::Ident(name) => {
                self.bump();
                self.named(&name, at)
            }
            _ => self.fail(&["a number", "`w`", "`k`", "`tail`", "`exp`", "`log`", "`O`", "`(`"]),
        }
    }

    fn named(&mut self, name: &str, at: (usize, usize)) -> PResult<Transseries> {
        match name {
            "w" => Ok(Transseries::omega()),
            "k" => {
                self.expect('(')?;
                let neg = self.eat('-');
                let n = self.small_nat()?;
                self.expect(')')?;
                if !neg && n != 0 {
                    return self.domain(at, Err(Error::KappaIndex(n as i64)));
                }
                let alpha = u32::try_from(n).map_err(|_| ParseError::Domain {
                    line: at.0,
                    col: at.1,
                    source: Error::KappaIndex(-(n as i64)),
                })?;
                Ok(Transseries::kappa(alpha))
            }
            "tail" => {
                self.expect('(')?;
                let alpha = self.small_nat()?;
                self.expect(',')?;
                let s = self.small_nat()?;
                self.expect(')')?;
                if s == 0 || alpha > u32::MAX as u64 {
                    return self.domain(at, Err(Error::KappaIndex(alpha as i64)));
                }
                Ok(Transseries::tail(alpha as u32, s, Coefficient::from_integer(1.into())))
            }
            "exp" => {
                let v = self.call_arg()?;
                self.domain(at, explog::exp(&v, self.ctx))
            }
            "O" => {
                let v = self.call_arg()?;
                match v.as_term() {
                    Some(t) => Ok(Transseries::big_o(t.mono.clone())),
                    None => self.domain(at, Err(Error::Inexact)),
                }
            }
            _ => {
                if let Some(k) = log_index(name) {
                    let mut v = self.call_arg()?;
                    for _ in 0..k {
                        v = self.domain(at, explog::log(&v, self.ctx))?;
                    }
                    return Ok(v);
                }
                let (line, col) = at;
                Err(ParseError::Syntax {
                    line,
                    col,
                    expected: vec!["`w`, `k`, `tail`, `exp`, `log`, `logN` or `O`".into()],
                    found: format!("`{name}`"),
                })
            }
        }
    }
}

fn log_index(name: &str) -> Option<u64> {
    let rest = name.strip_prefix("log")?;
    if rest.is_empty() {
        return Some(1);
    }
    if rest.starts_with('0') {
        return None;
    }
    rest.parse().ok().filter(|n| *n >= 1)
}

/// Parses an expression under the given precision.
pub fn parse_with(src: &str, ctx: &PrecisionContext) -> Result<Transseries, ParseError> {
    let lexer = lex(src)?;
    let mut p = Parser {
        toks: lexer.toks,
        pos: 0,
        ctx,
    };
    let v = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["`+`", "`-`", "`*`", "`/`", "end of input"]);
    }
    Ok(v)
}

pub fn parse(src: &str) -> Result<Transseries, ParseError> {
    parse_with(src, &PrecisionContext::default())
}

/// Parses a plain rational such as `-3/2`.
pub fn parse_rational(src: &str) -> Option<Coefficient> {
    let (neg, body) = match src.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, src),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (body.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() || n.is_negative() || d.is_negative() {
        return None;
    }
    let q = Coefficient::new(n, d);
    Some(if neg { -q } else { q })
}
