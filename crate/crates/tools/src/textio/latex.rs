use num_traits::{One, Signed};
use surreal_core::{Coefficient, Monomial, TailFamily, Transseries};

fn kappa(alpha: u32) -> String {
    if alpha == 0 {
        "\\omega".into()
    } else {
        format!("\\kappa_{{-{alpha}}}")
    }
}

fn atom(alpha: u32, m: i64) -> String {
    let base = kappa(alpha);
    match m {
        0 => base,
        -1 => format!("\\log {base}"),
        m if m < 0 => format!("\\log_{{{}}} {base}", -m),
        m => {
            let mut s = base;
            for _ in 0..m {
                s = format!("\\exp\\left({s}\\right)");
            }
            s
        }
    }
}

fn monomial(m: &Monomial) -> String {
    match m {
        Monomial::One => "1".into(),
        Monomial::Atom { alpha, m } => atom(*alpha, *m),
        Monomial::Exp(g) => match g.as_term() {
            Some(t) if t.coeff == -Coefficient::one() && t.mono.is_atom() && g.tails().is_empty() => {
                let Monomial::Atom { alpha, m } = t.mono else {
                    unreachable!()
                };
                format!("\\frac{{1}}{{{}}}", atom(alpha, m + 1))
            }
            _ => format!("\\exp\\left({}\\right)", series(g)),
        },
    }
}

fn coeff(c: &Coefficient) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn tail(f: &TailFamily) -> String {
    format!("\\sum_{{i\\ge {}}}\\log_i{}", f.start, kappa(f.alpha))
}

fn scaled(c: &Coefficient, body: String, is_one: bool) -> String {
    if is_one {
        coeff(c)
    } else if c.is_one() {
        body
    } else {
        format!("{} {body}", coeff(c))
    }
}

pub fn series(x: &Transseries) -> String {
    let mut pieces: Vec<(Monomial, Coefficient, String, bool)> = x
        .terms()
        .iter()
        .map(|t| (t.mono.clone(), t.coeff.clone(), monomial(&t.mono), t.mono.is_one()))
        .chain(x.tails().iter().map(|f| (f.head(), f.coeff.clone(), tail(f), false)))
        .collect();
    pieces.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = String::new();
    for (i, (_, c, body, one)) in pieces.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        out.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        out.push_str(&scaled(&mag, body, one));
    }
    if let Some(m) = x.marker() {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("O\\left({}\\right)", monomial(m)));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
