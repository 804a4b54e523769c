//! Lossless JSON tree encoding.
//!
//! A value is `{"kind":"add","args":[...]}` whose arguments are
//! `{"kind":"mul","coeff":"a/b","monomial":M}`, `{"kind":"tail","alpha":a,"start":s,"coeff":"a/b"}`
//! and at most one `{"kind":"marker","monomial":M}`. A monomial `M` is
//! `{"kind":"num","value":"1"}`, `{"kind":"atom","alpha":a,"m":k}` or
//! `{"kind":"exp","arg":V}`.
use serde_json::{json, Value};
use surreal_core::{Coefficient, Monomial, TailFamily, Term, Transseries};

use super::parser::parse_rational;

fn rational(c: &Coefficient) -> String {
    c.to_string()
}

fn monomial(m: &Monomial) -> Value {
    match m {
        Monomial::One => json!({"kind": "num", "value": "1"}),
        Monomial::Atom { alpha, m } => json!({"kind": "atom", "alpha": alpha, "m": m}),
        Monomial::Exp(g) => json!({"kind": "exp", "arg": encode(g)}),
    }
}

pub fn encode(x: &Transseries) -> Value {
    let mut args: Vec<Value> = x
        .terms()
        .iter()
        .map(|t| json!({"kind": "mul", "coeff": rational(&t.coeff), "monomial": monomial(&t.mono)}))
        .collect();
    args.extend(
        x.tails()
            .iter()
            .map(|f| json!({"kind": "tail", "alpha": f.alpha, "start": f.start, "coeff": rational(&f.coeff)})),
    );
    if let Some(m) = x.marker() {
        args.push(json!({"kind": "marker", "monomial": monomial(m)}));
    }
    json!({"kind": "add", "args": args})
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed structured value: {0}")]
pub struct DecodeError(pub String);

fn bad<T>(what: &str) -> Result<T, DecodeError> {
    Err(DecodeError(what.into()))
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, DecodeError> {
    v.get(k).ok_or_else(|| DecodeError(format!("missing `{k}`")))
}

fn coeff(v: &Value) -> Result<Coefficient, DecodeError> {
    match v.as_str().and_then(parse_rational) {
        Some(c) => Ok(c),
        None => bad("coefficient must be an \"a/b\" string"),
    }
}

fn decode_monomial(v: &Value) -> Result<Monomial, DecodeError> {
    match field(v, "kind")?.as_str() {
        Some("num") => match field(v, "value")?.as_str() {
            Some("1") => Ok(Monomial::One),
            _ => bad("monomial number must be \"1\""),
        },
        Some("atom") => {
            let alpha = field(v, "alpha")?.as_u64().and_then(|a| u32::try_from(a).ok());
            let m = field(v, "m")?.as_i64();
            match (alpha, m) {
                (Some(alpha), Some(m)) => Ok(Monomial::atom(alpha, m)),
                _ => bad("atom needs integer `alpha` and `m`"),
            }
        }
        Some("exp") => {
            let g = decode(field(v, "arg")?)?;
            Monomial::from_log(&g).map_err(|e| DecodeError(e.to_string()))
        }
        _ => bad("unknown monomial kind"),
    }
}

pub fn decode(v: &Value) -> Result<Transseries, DecodeError> {
    if field(v, "kind")?.as_str() != Some("add") {
        return bad("top level must be `add`");
    }
    let args = match field(v, "args")?.as_array() {
        Some(a) => a,
        None => return bad("`args` must be an array"),
    };
    let (mut terms, mut tails, mut marker) = (Vec::new(), Vec::new(), None);
    for a in args {
        match field(a, "kind")?.as_str() {
            Some("mul") => terms.push(Term::new(
                coeff(field(a, "coeff")?)?,
                decode_monomial(field(a, "monomial")?)?,
            )),
            Some("tail") => {
                let alpha = field(a, "alpha")?.as_u64().and_then(|x| u32::try_from(x).ok());
                let start = field(a, "start")?.as_u64().filter(|s| *s >= 1);
                match (alpha, start) {
                    (Some(alpha), Some(start)) => tails.push(TailFamily {
                        alpha,
                        start,
                        coeff: coeff(field(a, "coeff")?)?,
                    }),
                    _ => return bad("tail needs `alpha` and `start >= 1`"),
                }
            }
            Some("marker") => marker = Some(decode_monomial(field(a, "monomial")?)?),
            _ => return bad("unknown summand kind"),
        }
    }
    Ok(Transseries::from_parts(terms, tails, marker))
}
