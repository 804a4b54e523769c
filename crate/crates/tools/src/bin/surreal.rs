use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use surreal_core::deriv::{derive, enumerate_paths, path_derivative, DerivationConfig, Mode};
use surreal_core::integrate::integrate;
use surreal_core::nested::{check_t4, ntrank};
use surreal_core::order::{compare, dominance, kappa_compare, level_compare, level_representative, Relation};
use surreal_core::{Error, PrecisionContext, Transseries};
use surreal_tools::bench::{run_suite_with, GenSpec, SUITES};
use surreal_tools::textio::{self, structured, ParseError, Style};

#[derive(Parser)]
#[command(name = "surreal", version, about = "Exact transseries calculator")]
struct Cli {
    /// Terms kept from Taylor, geometric and Mercator series.
    #[arg(long, global = true, default_value_t = 12)]
    order: usize,
    /// Tail-family members expanded when a tail must be multiplied.
    #[arg(long, global = true, default_value_t = 12)]
    tail: usize,
    /// Largest kappa index tried during integration.
    #[arg(long = "kappa-depth", global = true, default_value_t = 4)]
    kappa_depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Read expressions from a file, one per line.
    #[arg(long, global = true)]
    file: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Simplest,
    Nokappa,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and normalize.
    Eval { exprs: Vec<String> },
    /// Apply the derivation.
    Derive {
        #[arg(long, value_enum, default_value_t = ModeArg::Simplest)]
        mode: ModeArg,
        exprs: Vec<String>,
    },
    /// Antiderivative by repeated asymptotic integration.
    Integrate {
        #[arg(long, default_value_t = 64)]
        fuel: usize,
        exprs: Vec<String>,
    },
    /// Compare pairs of values.
    Compare { exprs: Vec<String> },
    /// Dominance and asymptotic equivalence of pairs.
    Dominance { exprs: Vec<String> },
    /// Level and kappa comparison of pairs of positive infinite values.
    Level { exprs: Vec<String> },
    /// Nested-truncation rank.
    Rank { exprs: Vec<String> },
    /// Paths and their derivatives.
    Paths { exprs: Vec<String> },
    /// T4 check of every path.
    T4 { exprs: Vec<String> },
    /// LaTeX rendering.
    Latex { exprs: Vec<String> },
    /// Run property suites.
    Selftest {
        /// Suite to run; repeat for several, omit for all.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long)]
        tails: bool,
        /// List suites and exit.
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Domain(String),
    Indeterminate(String),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_indeterminate() {
            Failure::Indeterminate(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e.domain_error() {
            Some(d) if d.is_indeterminate() => Failure::Indeterminate(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct App {
    ctx: PrecisionContext,
    format: Format,
}

impl App {
    fn show(&self, x: &Transseries) -> String {
        match self.format {
            Format::Plain => textio::format(x, Style::Plain),
            Format::Latex => textio::format(x, Style::Latex),
            Format::Structured => textio::format(x, Style::Structured),
        }
    }

    fn emit(&self, input: &str, plain: String, value: serde_json::Value) {
        match self.format {
            Format::Structured => println!("{}", json!({"input": input, "result": value})),
            _ => println!("{plain}"),
        }
    }

    fn parse(&self, s: &str) -> Result<Transseries, Failure> {
        Ok(textio::parse_with(s, &self.ctx)?)
    }
}

fn relation(r: Relation) -> &'static str {
    match r {
        Relation::Below => "<",
        Relation::Equivalent => "=",
        Relation::Above => ">",
    }
}

fn ordering(o: std::cmp::Ordering) -> &'static str {
    relation(match o {
        std::cmp::Ordering::Less => Relation::Below,
        std::cmp::Ordering::Equal => Relation::Equivalent,
        std::cmp::Ordering::Greater => Relation::Above,
    })
}

fn inputs(exprs: Vec<String>, file: &Option<std::path::PathBuf>) -> io::Result<Vec<String>> {
    let text = if !exprs.is_empty() {
        return Ok(exprs);
    } else if let Some(p) = file {
        std::fs::read_to_string(p)?
    } else {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    };
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn pairs(xs: &[String]) -> Result<Vec<(&String, &String)>, Failure> {
    if !xs.len().is_multiple_of(2) {
        return Err(Failure::Domain("expected an even number of expressions".into()));
    }
    Ok(xs.chunks(2).map(|c| (&c[0], &c[1])).collect())
}

fn unary(app: &App, xs: &[String], f: impl Fn(&Transseries) -> Result<Transseries, Failure>) -> Result<(), Failure> {
    for s in xs {
        let y = f(&app.parse(s)?)?;
        app.emit(s, app.show(&y), structured::encode(&y));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = PrecisionContext::default()
        .with_series_order(cli.order)
        .with_tail_expand(cli.tail)
        .with_kappa_depth(cli.kappa_depth);
    let app = App {
        ctx,
        format: cli.format,
    };
    let read = |v: Vec<String>| inputs(v, &cli.file).map_err(|e| Failure::Domain(e.to_string()));
    match cli.cmd {
        Cmd::Eval { exprs } => unary(&app, &read(exprs)?, |x| Ok(x.clone())),
        Cmd::Latex { exprs } => {
            for s in read(exprs)? {
                println!("{}", textio::format(&app.parse(&s)?, Style::Latex));
            }
            Ok(())
        }
        Cmd::Derive { mode, exprs } => {
            let cfg = DerivationConfig {
                mode: match mode {
                    ModeArg::Simplest => Mode::Simplest,
                    ModeArg::Nokappa => Mode::NoKappaCorrection,
                },
            };
            unary(&app, &read(exprs)?, |x| Ok(derive(x, &cfg, &app.ctx)))
        }
        Cmd::Integrate { fuel, exprs } => {
            let ctx = app.ctx.with_fuel(fuel);
            for s in read(exprs)? {
                let r = integrate(&app.parse(&s)?, &DerivationConfig::SIMPLEST, &ctx)?;
                let status = format!("{:?}", r.status).to_lowercase();
                let plain = format!(
                    "{}\n  residual: {}\n  status: {status}, steps: {}",
                    app.show(&r.antiderivative),
                    app.show(&r.residual),
                    r.steps
                );
                let v = json!({
                    "antiderivative": structured::encode(&r.antiderivative),
                    "residual": structured::encode(&r.residual),
                    "status": status,
                    "steps": r.steps,
                });
                app.emit(&s, plain, v);
            }
            Ok(())
        }
        Cmd::Compare { exprs } => {
            for (a, b) in pairs(&read(exprs)?)? {
                let o = ordering(compare(&app.parse(a)?, &app.parse(b)?)?);
                app.emit(a, o.to_string(), json!(o));
            }
            Ok(())
        }
        Cmd::Dominance { exprs } => {
            for (a, b) in pairs(&read(exprs)?)? {
                let r = dominance(&app.parse(a)?, &app.parse(b)?)?;
                let d = relation(r.dominance);
                app.emit(
                    a,
                    format!("dominance {d}, asymptotic {}", r.asymptotic),
                    json!({"dominance": d, "asymptotic": r.asymptotic}),
                );
            }
            Ok(())
        }
        Cmd::Level { exprs } => {
            for (a, b) in pairs(&read(exprs)?)? {
                let (x, y) = (app.parse(a)?, app.parse(b)?);
                let l = relation(level_compare(&x, &y)?);
                let k = relation(kappa_compare(&x, &y)?);
                let (rx, ry) = (level_representative(&x)?, level_representative(&y)?);
                app.emit(
                    a,
                    format!("level {l}, kappa {k} ({rx} vs {ry})"),
                    json!({"level": l, "kappa": k, "representatives": [rx.to_string(), ry.to_string()]}),
                );
            }
            Ok(())
        }
        Cmd::Rank { exprs } => {
            for s in read(exprs)? {
                let r = ntrank(&app.parse(&s)?)?;
                app.emit(&s, r.to_string(), json!(r));
            }
            Ok(())
        }
        Cmd::Paths { exprs } => {
            for s in read(exprs)? {
                let x = app.parse(&s)?;
                let mut lines = Vec::new();
                let mut vals = Vec::new();
                for p in enumerate_paths(&x, &app.ctx) {
                    let terms: Vec<String> = p.terms().iter().map(|t| t.to_string()).collect();
                    let d = path_derivative(&p, &DerivationConfig::SIMPLEST)?;
                    let tag = if p.is_truncated() { " (truncated)" } else { "" };
                    lines.push(format!("{} => {d}{tag}", terms.join(" -> ")));
                    vals.push(json!({"terms": terms, "derivative": d.to_string(), "truncated": p.is_truncated()}));
                }
                app.emit(&s, lines.join("\n"), json!(vals));
            }
            Ok(())
        }
        Cmd::T4 { exprs } => {
            for s in read(exprs)? {
                let r = check_t4(&app.parse(&s)?, &app.ctx);
                let mut lines = Vec::new();
                for p in &r.paths {
                    let terms: Vec<String> = p.path.terms().iter().map(|t| t.to_string()).collect();
                    let k = match (p.explored, p.k) {
                        (false, _) => "unexplored".to_string(),
                        (true, Some(k)) => format!("k = {k}"),
                        (true, None) => "refuted".to_string(),
                    };
                    lines.push(format!("{}: {k}", terms.join(" -> ")));
                }
                lines.push(format!("T4 {}", if r.satisfied() { "holds" } else { "refuted" }));
                app.emit(
                    &s,
                    lines.join("\n"),
                    json!({"satisfied": r.satisfied(), "paths": r.paths.len()}),
                );
            }
            Ok(())
        }
        Cmd::Selftest {
            suite,
            cases,
            seed,
            size,
            tails,
            list,
        } => {
            if list {
                for (name, about) in SUITES {
                    println!("{name:22} {about}");
                }
                return Ok(());
            }
            let names: Vec<String> = if suite.is_empty() {
                SUITES.iter().map(|(n, _)| n.to_string()).collect()
            } else {
                suite
            };
            let spec = GenSpec {
                size,
                seed,
                kappa_depth: cli.kappa_depth.min(4),
                ..GenSpec::default()
            }
            .with_tails(tails);
            let mut failed = false;
            for name in names {
                let r = run_suite_with(&name, cases, &spec, &app.ctx).map_err(|e| Failure::Domain(e.to_string()))?;
                failed |= !r.ok();
                println!("{} {r}", if r.ok() { "PASS" } else { "FAIL" });
            }
            if failed {
                Err(Failure::Suite)
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Indeterminate(m)) => {
            eprintln!("indeterminate: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Suite) => ExitCode::from(3),
    }
}
