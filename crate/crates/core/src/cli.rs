//! Command-line front end: argument parsing, suite dispatch and output formatting.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::characters::ideal_char;
use crate::covariant::{octavic_display_variant, octavic_suite, OctavicReport};
use crate::error::{Error, Result};
use crate::generating::z_series_report;
use crate::hypergeo::n2_closed;
use crate::lemma::{existence_choice, lemma_a_report, lemma_b_cells, lemma_b_direct, GENERIC_Q_MAX_E};
use crate::scalar::fmt_short;
use crate::ternary::ternary_suite;

const E_LIMIT: u32 = 8;
const R_LIMIT: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Octavic,
    Ternary,
}

#[derive(Debug, Parser)]
#[command(name = "transvect", version, about = "Exact verification suites for transvectant identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for independent grid cells.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Lift the default bounds e <= 8, r <= 4.
    #[arg(long, global = true)]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Four routes to the constant N^I(e, p).
    LemmaA {
        #[arg(long, default_value_t = 5)]
        e_max: u32,
    },
    /// Direct and closed N^II(r, e, p', p), plus the existence choice.
    LemmaB {
        #[arg(long, default_value_t = 3)]
        r_max: u32,
        #[arg(long, default_value_t = 2)]
        e_max: u32,
    },
    /// Irreducible summands of the degree-r piece of the ideal.
    Characters {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
    },
    /// Vanishing of the octavic covariants or ternary concomitants.
    Covariants {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Truncated generating-function identity.
    ZSeries {
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LemmaA { .. } => "lemma-a",
            Command::LemmaB { .. } => "lemma-b",
            Command::Characters { .. } => "characters",
            Command::Covariants { .. } => "covariants",
            Command::ZSeries { .. } => "z-series",
        }
    }
}

/// Result of one command: `{command, config, rows, pass}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Output {
    pub command: String,
    pub config: Value,
    pub rows: Vec<Value>,
    pub pass: bool,
    /// Lines printed in text mode instead of the generic table.
    #[serde(skip)]
    pub text: Option<Vec<String>>,
}

fn row<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("rows serialize")
}

fn check_bounds(cli: &Cli) -> Result<()> {
    if cli.allow_large {
        return Ok(());
    }
    let (e, r) = match cli.command {
        Command::LemmaA { e_max } => (e_max, 0),
        Command::LemmaB { r_max, e_max } => (e_max, r_max),
        Command::Characters { r, .. } => (0, r),
        Command::ZSeries { r, e, .. } => (e, r),
        Command::Covariants { .. } => (0, 0),
    };
    if e > E_LIMIT || r > R_LIMIT {
        return Err(Error::OutOfRange(format!("e <= {E_LIMIT} and r <= {R_LIMIT} unless --allow-large")));
    }
    Ok(())
}

fn config(cli: &Cli) -> Value {
    let mut v = row(&cli.command);
    if let Value::Object(m) = &mut v {
        m.remove("command");
        m.insert("format".into(), row(&cli.format));
        m.insert("jobs".into(), json!(cli.jobs));
    }
    v
}

fn lemma_a(e_max: u32) -> Result<(Vec<Value>, bool)> {
    if e_max < 1 {
        return Err(Error::OutOfRange("e-max must be at least 1".into()));
    }
    let cells: Vec<(u32, u32)> = (1..=e_max).flat_map(|e| (0..=e).map(move |p| (e, p))).collect();
    let reports = cells
        .par_iter()
        .map(|&(e, p)| lemma_a_report(e, p, GENERIC_Q_MAX_E))
        .collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.agree());
    let rows = reports
        .iter()
        .map(|r| {
            json!({
                "e": r.e,
                "p": r.p,
                "n1_direct": fmt_short(&r.n_direct_special),
                "generic_q": r.proportionality_ok,
                "n1_graphs": fmt_short(&r.n_graphs),
                "n1_dixon": fmt_short(&r.n_dixon),
                "n1_closed": fmt_short(&r.n_closed),
                "agree": r.agree(),
            })
        })
        .collect();
    Ok((rows, pass))
}

fn lemma_b(r_max: u32, e_max: u32) -> Result<(Vec<Value>, bool)> {
    if r_max < 2 || e_max < 1 {
        return Err(Error::OutOfRange("need r-max >= 2 and e-max >= 1".into()));
    }
    let mut jobs: Vec<(&str, u32, u32, u32, u32)> = Vec::new();
    for r in 2..=r_max {
        for e in 1..=e_max {
            for (pp, p) in lemma_b_cells(r, e) {
                jobs.push(("cell", r, e, pp, p));
            }
            for pp in 0..=(r + 1) * e / 2 {
                jobs.push(("existence", r, e, pp, existence_choice(r, e, pp)?));
            }
        }
    }
    let values = jobs
        .par_iter()
        .map(|&(_, r, e, pp, p)| Ok((lemma_b_direct(r, e, pp, p)?, n2_closed(r, e, pp, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut pass = true;
    let rows = jobs
        .iter()
        .zip(&values)
        .map(|(&(kind, r, e, pp, p), (direct, closed))| {
            let ok = direct == closed && (kind == "cell" || !closed.is_zero());
            pass &= ok;
            json!({
                "kind": kind,
                "r": r,
                "e": e,
                "p_prime": pp,
                "p": p,
                "n2_direct": fmt_short(direct),
                "n2_closed": fmt_short(closed),
                "agree": ok,
            })
        })
        .collect();
    Ok((rows, pass))
}

fn characters(r: u32, d: u32) -> Result<(Vec<Value>, bool, Vec<String>)> {
    let ideal = ideal_char(r, d)?;
    let rows = ideal.0.iter().rev().map(|(m, k)| json!({"m": m, "multiplicity": k})).collect();
    Ok((rows, true, vec![ideal.to_string()]))
}

fn octavic_rows(rep: &OctavicReport) -> (Vec<Value>, Vec<String>) {
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for r in &rep.ratios {
        rows.push(json!({
            "kind": "ratio",
            "expression": r.basis.join(", "),
            "specialization": "x1^4 x2^4",
            "derived_ratio": r.derived.join(":"),
            "published_ratio": r.published.join(":"),
            "matches_published": r.matches_published,
        }));
        text.push(format!("ratio [{}] at x1^4 x2^4: {} (published {})", r.basis.join(", "), r.derived.join(":"), r.published.join(":")));
    }
    text.push(format!("convention mismatch: {}", rep.convention_mismatch));
    text.push(format!("orders: {:?} ok={}", rep.orders, rep.orders_ok));
    text.push(format!("independence witness at x1^6 x2^2 + x1 x2^7: {}", rep.independence_witness));
    for c in &rep.rows {
        let mut v = row(c);
        if let Value::Object(m) = &mut v {
            let mut out = Map::new();
            out.insert("kind".into(), json!("covariant"));
            out.extend(std::mem::take(m));
            *m = out;
        }
        rows.push(v);
        text.push(format!("{} | {} | zero={}", c.expression, c.specialization, c.result_is_zero));
    }
    rows.push(json!({
        "kind": "variant",
        "expression": octavic_display_variant().to_string(),
        "specialization": "(l1 x1 + l2 x2)^4 (m1 x1 + m2 x2)^4",
        "result_is_zero": rep.display_variant_vanishes,
    }));
    text.push(format!("variant {} vanishes on the pair locus: {}", octavic_display_variant(), rep.display_variant_vanishes));
    text.push(format!("seed {} trials {} generic nonzero: {}", rep.seed, rep.trials, rep.generic_nonzero));
    (rows, text)
}

/// Runs the parsed command (inside a pool of `jobs` threads).
pub fn execute(cli: &Cli) -> Result<Output> {
    check_bounds(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build()
        .map_err(|e| Error::OutOfRange(e.to_string()))?;
    pool.install(|| {
        let (rows, pass, text) = match &cli.command {
            Command::LemmaA { e_max } => {
                let (rows, pass) = lemma_a(*e_max)?;
                (rows, pass, None)
            }
            Command::LemmaB { r_max, e_max } => {
                let (rows, pass) = lemma_b(*r_max, *e_max)?;
                (rows, pass, None)
            }
            Command::Characters { r, d } => {
                let (rows, pass, text) = characters(*r, *d)?;
                (rows, pass, Some(text))
            }
            Command::Covariants { suite: Suite::Octavic, trials, seed } => {
                let rep = octavic_suite(*trials, *seed)?;
                let (rows, text) = octavic_rows(&rep);
                (rows, rep.pass, Some(text))
            }
            Command::Covariants { suite: Suite::Ternary, trials, seed } => {
                let rep = ternary_suite(*trials, *seed)?;
                let rows = rep.rows.iter().map(row).collect();
                (rows, rep.pass, None)
            }
            Command::ZSeries { r, e, order } => {
                let rep = z_series_report(*r, *e, *order)?;
                (vec![row(&rep)], rep.pass, None)
            }
        };
        Ok(Output { command: cli.command.name().into(), config: config(cli), rows, pass, text })
    })
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

fn cells(r: &Value, cols: &[String]) -> Vec<String> {
    cols.iter().map(|c| r.get(c).map(cell_text).unwrap_or_default()).collect()
}

pub fn render(out: &Output, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(out).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let cols = columns(&out.rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Parse(e.to_string());
            if !cols.is_empty() {
                w.write_record(&cols).map_err(io)?;
            }
            for r in &out.rows {
                w.write_record(cells(r, &cols)).map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?).map_err(|e| Error::Parse(e.to_string()))
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(lines) = &out.text {
                for l in lines {
                    s.push_str(l);
                    s.push('\n');
                }
            } else {
                let cols = columns(&out.rows);
                let table: Vec<Vec<String>> = out.rows.iter().map(|r| cells(r, &cols)).collect();
                let widths: Vec<usize> = (0..cols.len())
                    .map(|i| table.iter().map(|r| r[i].chars().count()).chain([cols[i].len()]).max().unwrap_or(0))
                    .collect();
                let line = |vals: &[String]| {
                    let padded: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                s.push_str(&line(&cols));
                for r in &table {
                    s.push_str(&line(r));
                }
                s.push_str(&format!("pass: {}\n", out.pass));
            }
            Ok(s)
        }
    }
}

/// Parses `args`, runs the command and writes to `stdout`/`stderr`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    match execute(&cli).and_then(|o| Ok((render(&o, cli.format)?, o.pass))) {
        Ok((text, pass)) => {
            let _ = stdout.write_all(text.as_bytes());
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
