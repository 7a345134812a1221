use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use projsym_core::verify::{self, Suite, VerifyConfig};
use projsym_core::{
    classify_shift, critical_values_in, format_poly, format_scalar, gamma, parse_poly,
    parse_scalar, quantize, resonance, symbol_map, BidiffOp, Context, Error, ExactScalar,
    ResonanceTuple, ShiftClass, SpectralLabel, SymbolPoly,
};

#[derive(Parser)]
#[command(name = "projsym", version, about = "Projectively equivariant symbols of bidifferential operators")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Casimir eigenvalues on the symbol spaces up to a given order.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        delta: ExactScalar,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Critical shifts in a closed interval, with witnessing tuples.
    Critical {
        #[arg(long)]
        n: usize,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], value_parser = scalar, allow_hyphen_values = true)]
        range: Vec<ExactScalar>,
    },
    /// Resonance tuples up to an order, or the classification of one shift.
    Resonances {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        max_order: usize,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        delta: Option<ExactScalar>,
    },
    /// Equivariant quantization of a symbol.
    Quantize(WeightedExpr),
    /// Projectively equivariant symbol of an operator.
    Symbol(WeightedExpr),
    /// Run a seeded verification suite.
    Verify {
        /// One of equivariance, casimir, spectrum, resonance, roundtrip; all when omitted.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_order: usize,
    },
}

#[derive(Args)]
struct WeightedExpr {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true, default_value = "0")]
    lambda1: ExactScalar,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true, default_value = "0")]
    lambda2: ExactScalar,
    #[arg(long, value_parser = scalar, allow_hyphen_values = true, conflicts_with = "delta", required_unless_present = "delta")]
    mu: Option<ExactScalar>,
    /// Shift μ − λ₁ − λ₂, as an alternative to `--mu`.
    #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
    delta: Option<ExactScalar>,
    /// Polynomial in x1..xn, a1..an, b1..bn.
    #[arg(allow_hyphen_values = true)]
    expr: String,
}

impl WeightedExpr {
    fn context(&self) -> Result<Context, Failure> {
        let weights = vec![self.lambda1.clone(), self.lambda2.clone()];
        let ctx = match (&self.mu, &self.delta) {
            (Some(mu), _) => Context::new(self.n, weights, mu.clone()),
            (None, Some(d)) => Context::with_shift(self.n, weights, d.clone()),
            (None, None) => unreachable!("clap requires one of --mu and --delta"),
        };
        ctx.map_err(Failure::usage)
    }
}

fn scalar(text: &str) -> Result<ExactScalar, String> {
    parse_scalar(text).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Obstruction(String),
    Failed(String),
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    json: Value,
    text: String,
}

fn label(l: SpectralLabel) -> Value {
    json!([l.i, l.p])
}

fn tuple_json(t: &ResonanceTuple) -> Value {
    json!({
        "i": t.i,
        "p": t.p,
        "j": t.j,
        "q": t.q,
        "delta": format_scalar(&t.delta),
        "critical": t.critical,
    })
}

fn tuple_text(t: &ResonanceTuple) -> String {
    format!(
        "({},{};{},{}) delta={}{}",
        t.i,
        t.p,
        t.j,
        t.q,
        format_scalar(&t.delta),
        if t.critical { " critical" } else { "" }
    )
}

fn spectrum(n: usize, delta: &ExactScalar, max_order: usize) -> Result<Output, Failure> {
    let mut rows = Vec::new();
    let mut text = String::from("i p gamma\n");
    for i in 0..=max_order {
        let top = if n >= 2 { i / 2 } else { 0 };
        for p in 0..=top {
            let g = format_scalar(&gamma(n, delta, i, p).map_err(Failure::usage)?);
            let _ = writeln!(text, "{i} {p} {g}");
            rows.push(json!({ "i": i, "p": p, "gamma": g }));
        }
    }
    Ok(Output {
        json: json!({ "delta": format_scalar(delta), "gamma": rows }),
        text,
    })
}

fn critical(n: usize, lo: &ExactScalar, hi: &ExactScalar) -> Result<Output, Failure> {
    if lo > hi {
        return Err(Failure::Usage(format!(
            "empty range: {} > {}",
            format_scalar(lo),
            format_scalar(hi)
        )));
    }
    let found = critical_values_in(n, lo, hi).map_err(Failure::usage)?;
    let mut text = String::new();
    let mut values = Vec::new();
    let mut tuples = Vec::new();
    for (delta, ts) in &found {
        let _ = writeln!(text, "{}", format_scalar(delta));
        values.push(json!(format_scalar(delta)));
        for t in ts {
            let _ = writeln!(text, "  {}", tuple_text(t));
            tuples.push(tuple_json(t));
        }
    }
    if found.is_empty() {
        text.push_str("no critical values\n");
    }
    Ok(Output {
        json: json!({ "delta": values, "tuples": tuples }),
        text,
    })
}

fn resonances(n: usize, max_order: usize, delta: Option<&ExactScalar>) -> Result<Output, Failure> {
    let Some(delta) = delta else {
        let all = resonance::resonance_tuples(n, max_order).map_err(Failure::usage)?;
        let text = all.iter().map(|t| tuple_text(t) + "\n").collect();
        return Ok(Output {
            json: json!({ "delta": Value::Null, "tuples": all.iter().map(tuple_json).collect::<Vec<_>>() }),
            text,
        });
    };
    let report = classify_shift(n, delta, max_order).map_err(Failure::usage)?;
    let class = match &report.class {
        ShiftClass::Generic => "generic",
        ShiftClass::Resonant(_) => "resonant",
        ShiftClass::Critical(_) => "critical",
    };
    let mut text = format!(
        "delta={} {} (orders <= {})\n",
        format_scalar(delta),
        class,
        report.order_cap
    );
    for t in report.tuples() {
        let _ = writeln!(text, "  {}", tuple_text(t));
    }
    Ok(Output {
        json: json!({
            "delta": format_scalar(delta),
            "tuples": report.tuples().iter().map(tuple_json).collect::<Vec<_>>(),
        }),
        text,
    })
}

fn obstruction_failure(input: &str, err: Error, json_mode: bool) -> Failure {
    match err {
        Error::Obstruction(o) => {
            if json_mode {
                let v = json!({
                    "input": input,
                    "obstruction": {
                        "source": label(o.source),
                        "blocked": label(o.blocked),
                        "component": format_poly(&o.obstruction),
                    },
                });
                Failure::Obstruction(v.to_string())
            } else {
                Failure::Obstruction(o.to_string())
            }
        }
        other => Failure::usage(other),
    }
}

fn slots_json(slots: &std::collections::BTreeSet<SpectralLabel>) -> Value {
    Value::Array(slots.iter().copied().map(label).collect())
}

fn slots_text(slots: &std::collections::BTreeSet<SpectralLabel>) -> String {
    slots.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn run_quantize(args: &WeightedExpr, json_mode: bool) -> Result<Output, Failure> {
    let ctx = args.context()?;
    let body = parse_poly(&args.expr, args.n).map_err(Failure::usage)?;
    let sym = SymbolPoly::new(body, ctx).map_err(Failure::usage)?;
    let q = quantize(&sym).map_err(|e| obstruction_failure(&args.expr, e, json_mode))?;
    let op = format_poly(&q.operator.body);
    let mut text = format!("{op}\n");
    if !q.unique {
        let _ = writeln!(text, "free slots: {}", slots_text(&q.free_slots));
    }
    Ok(Output {
        json: json!({
            "input": args.expr,
            "operator": op,
            "free_slots": slots_json(&q.free_slots),
            "unique": q.unique,
        }),
        text,
    })
}

fn run_symbol(args: &WeightedExpr, json_mode: bool) -> Result<Output, Failure> {
    let ctx = args.context()?;
    let body = parse_poly(&args.expr, args.n).map_err(Failure::usage)?;
    let op = BidiffOp::new(body, ctx).map_err(Failure::usage)?;
    let s = symbol_map(&op).map_err(|e| obstruction_failure(&args.expr, e, json_mode))?;
    let sym = format_poly(&s.symbol.body);
    let mut text = format!("{sym}\n");
    if !s.unique {
        let _ = writeln!(text, "free slots: {}", slots_text(&s.free_slots));
    }
    Ok(Output {
        json: json!({
            "input": args.expr,
            "symbol": sym,
            "free_slots": slots_json(&s.free_slots),
            "unique": s.unique,
        }),
        text,
    })
}

fn run_verify(suite: Option<&str>, cfg: VerifyConfig, json_mode: bool) -> Result<Output, Failure> {
    let suites = match suite {
        Some(name) => vec![name.parse::<Suite>().map_err(Failure::usage)?],
        None => Suite::ALL.to_vec(),
    };
    let mut checks = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for s in suites {
        let report = verify::run(s, cfg).map_err(Failure::usage)?;
        ok &= report.passed();
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(text, "{s}/{}: {status}", c.name);
            let _ = if c.detail.is_empty() { writeln!(text) } else { writeln!(text, " {}", c.detail) };
            checks.push(json!({
                "suite": s.name(),
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            }));
        }
    }
    let out = Output {
        json: json!({ "checks": checks }),
        text,
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Failed(if json_mode { out.json.to_string() } else { out.text }))
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Spectrum { n, delta, max_order } => spectrum(*n, delta, *max_order),
        Command::Critical { n, range } => critical(*n, &range[0], &range[1]),
        Command::Resonances { n, max_order, delta } => resonances(*n, *max_order, delta.as_ref()),
        Command::Quantize(args) => run_quantize(args, cli.json),
        Command::Symbol(args) => run_symbol(args, cli.json),
        Command::Verify { suite, n, seed, max_order } => run_verify(
            suite.as_deref(),
            VerifyConfig { n: *n, seed: *seed, max_order: *max_order },
            cli.json,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Obstruction(msg)) => {
            println!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            print!("{msg}");
            if cli.json {
                println!();
            }
            ExitCode::from(1)
        }
    }
}
