//! Command-line front end. `main.rs` only forwards to [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{classify, unified_signature, ClassLabel};
use crate::error::Error;
use crate::format::{round_sig, sig};
use crate::gaussian::{CovarianceMatrix, StsParams};
use crate::measures::{CorrelationReport, Direction};
use crate::scan::{
    run_scan, AxisRange, Quantity, ScanMode, ScanSpec, DEFAULT_RANGE, DEFAULT_STEPS,
};
use crate::teleport::teleport_report;
use crate::thresholds::closed_form_thresholds;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNPHYSICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gqc",
    version,
    about = "Gaussian quantum correlations of two-mode squeezed thermal states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full measure report, classification and teleportation diagnostics.
    #[command(group(ArgGroup::new("state").required(true).args(["sts", "cm"])))]
    Analyze {
        /// Squeezed thermal state `r,nA,nB`.
        #[arg(long, value_name = "r,nA,nB", allow_hyphen_values = true)]
        sts: Option<String>,
        /// Raw covariance entries `n,m,c` (c1 = c, c2 = -c).
        #[arg(long, value_name = "n,m,c", allow_hyphen_values = true)]
        cm: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form squeezing thresholds for thermal noises `nA,nB`.
    Thresholds {
        #[arg(long, value_name = "nA,nB", allow_hyphen_values = true)]
        noise: String,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep a parameter grid and write CSV or JSON.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// JSON scan spec; axis flags are ignored when given.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Thermal noise on A, `lo:hi:steps`.
    #[arg(long, value_name = "lo:hi:steps")]
    pub grid_na: Option<String>,
    #[arg(long, value_name = "lo:hi:steps")]
    pub grid_nb: Option<String>,
    /// Squeezing of the noise grid.
    #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Variance of A, `lo:hi:steps` (raw grid).
    #[arg(long, value_name = "lo:hi:steps")]
    pub grid_n: Option<String>,
    #[arg(long, value_name = "lo:hi:steps")]
    pub grid_m: Option<String>,
    /// Correlation of the raw grid.
    #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Comma-separated quantities (default: all).
    #[arg(long, value_name = "LIST")]
    pub quantities: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

/// Parses the arguments, runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Analyze { sts, cm, output } => {
            let (params, state) = match (sts, cm) {
                (Some(s), None) => {
                    let [r, na, nb] = parse_triple(&s, "--sts")?;
                    let p = StsParams::new(r, na, nb).map_err(err)?;
                    (Some(p), p.covariance().map_err(err)?)
                }
                (None, Some(s)) => {
                    let [n, m, c] = parse_triple(&s, "--cm")?;
                    (None, CovarianceMatrix::sts(n, m, c).map_err(err)?)
                }
                _ => return Err("exactly one of --sts or --cm is required".into()),
            };
            let doc = analyze_document(params, &state)?;
            emit(&doc, &output, stdout)?;
            Ok(if state.is_physical() {
                EXIT_OK
            } else {
                EXIT_UNPHYSICAL
            })
        }
        Command::Thresholds { noise, output } => {
            let [na, nb] = parse_pair(&noise, "--noise")?;
            let t = closed_form_thresholds(na, nb).map_err(err)?;
            let doc = json!({ "n_a": na, "n_b": nb, "thresholds": t });
            emit(&doc, &output, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Scan(args) => {
            let spec = scan_spec(&args)?;
            let result = run_scan(&spec).map_err(err)?;
            let text = match args.output.format {
                Format::Csv => result.to_csv(),
                Format::Json => pretty(&result.to_json()),
                Format::Table => return Err("scan supports --format json or csv".into()),
            };
            write_out(&text, args.output.out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn parse_list(s: &str, flag: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("{flag}: cannot parse {t:?} as a number"))
        })
        .collect()
}

fn parse_triple(s: &str, flag: &str) -> Result<[f64; 3], String> {
    parse_list(s, flag)?
        .try_into()
        .map_err(|_| format!("{flag}: expected three comma-separated numbers, got {s:?}"))
}

fn parse_pair(s: &str, flag: &str) -> Result<[f64; 2], String> {
    parse_list(s, flag)?
        .try_into()
        .map_err(|_| format!("{flag}: expected two comma-separated numbers, got {s:?}"))
}

/// The analyze report. Unphysical states keep the spectrum and label and
/// carry `null` for everything derived from the measures.
pub fn analyze_document(params: Option<StsParams>, cm: &CovarianceMatrix) -> Result<Value, String> {
    let spectrum = cm.spectrum().ok();
    let physical = cm.is_physical();
    let (flags, label) = classify(cm).map_err(err)?;
    let (report, signature) = if physical {
        let report = CorrelationReport::evaluate(cm).map_err(err)?;
        let sig_ab = unified_signature(cm, Direction::AB).map_err(err)?;
        let sig_ba = unified_signature(cm, Direction::BA).map_err(err)?;
        (json!(report), json!({ "A|B": sig_ab, "B|A": sig_ba }))
    } else {
        (Value::Null, Value::Null)
    };
    let teleport = if physical && label != ClassLabel::Product {
        json!(teleport_report(cm).map_err(err)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "sts": params,
        "covariance": cm,
        "physical": physical,
        "spectrum": spectrum,
        "label": label,
        "flags": flags,
        "report": report,
        "signature": signature,
        "teleport": teleport,
    }))
}

fn scan_spec(args: &ScanArgs) -> Result<ScanSpec, String> {
    let mut spec = if let Some(path) = &args.spec {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read spec {}: {e}", path.display()))?;
        serde_json::from_str::<ScanSpec>(&text).map_err(|e| format!("invalid scan spec: {e}"))?
    } else {
        let raw = args.grid_n.is_some() || args.grid_m.is_some() || args.c.is_some();
        let sts = args.grid_na.is_some() || args.grid_nb.is_some() || args.r.is_some();
        if raw && sts {
            return Err(
                "noise-grid flags (--grid-na/--grid-nb/--r) and raw-grid flags \
                        (--grid-n/--grid-m/--c) are mutually exclusive"
                    .into(),
            );
        }
        let axis = |s: &Option<String>, default: (f64, f64)| -> Result<AxisRange, String> {
            match s {
                Some(s) => AxisRange::parse(s).map_err(err),
                None => Ok(AxisRange::new(default.0, default.1, DEFAULT_STEPS)),
            }
        };
        if raw {
            let c = args.c.ok_or("raw grid needs --c")?;
            ScanSpec {
                mode: ScanMode::RawNmGrid,
                fixed: c,
                axis1: axis(&args.grid_n, (1.0, 5.0))?,
                axis2: axis(&args.grid_m, (1.0, 5.0))?,
                quantities: Quantity::NUMERIC.to_vec(),
            }
        } else {
            ScanSpec {
                mode: ScanMode::StsNoiseGrid,
                fixed: args.r.unwrap_or(0.6),
                axis1: axis(&args.grid_na, DEFAULT_RANGE)?,
                axis2: axis(&args.grid_nb, DEFAULT_RANGE)?,
                quantities: Quantity::NUMERIC.to_vec(),
            }
        }
    };
    if let Some(list) = &args.quantities {
        spec.quantities = list
            .split(',')
            .map(Quantity::parse)
            .collect::<Result<_, _>>()
            .map_err(err)?;
    }
    spec.validate().map_err(err)?;
    Ok(spec)
}

/// Rounds every float in the document to 12 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn pretty(v: &Value) -> String {
    let mut v = v.clone();
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Flattens nested objects into dotted `key, value` rows.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, inner, rows);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            rows.push((prefix.to_string(), parts.join(" ")));
        }
        _ => rows.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => sig(x),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

fn emit(doc: &Value, output: &Output, stdout: &mut dyn Write) -> Result<(), String> {
    let text = match output.format {
        Format::Json => pretty(doc),
        Format::Csv | Format::Table => {
            let mut rows = Vec::new();
            flatten("", doc, &mut rows);
            if output.format == Format::Csv {
                let mut s = String::from("key,value\n");
                for (k, v) in rows {
                    s.push_str(&format!("{k},{v}\n"));
                }
                s
            } else {
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                rows.iter()
                    .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                    .collect()
            }
        }
    };
    write_out(&text, output.out.as_deref(), stdout)
}

fn write_out(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut errs = Vec::new();
        let mut full = vec!["gqc"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut errs);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(errs).unwrap(),
        )
    }

    #[test]
    fn parse_helpers() {
        assert_eq!(parse_triple("0.6, 0,1", "--sts").unwrap(), [0.6, 0.0, 1.0]);
        assert!(parse_triple("0.6,0", "--sts").is_err());
        assert!(parse_triple("a,b,c", "--sts").is_err());
        assert_eq!(parse_pair("1,2", "--noise").unwrap(), [1.0, 2.0]);
    }

    #[test]
    fn both_state_flags_is_a_usage_error() {
        let (code, _, err) = call(&["analyze", "--sts", "0.6,0,1", "--cm", "1,1,0"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(!err.is_empty());
        let (code, _, _) = call(&["analyze"]);
        assert_eq!(code, EXIT_ERROR);
    }

    #[test]
    fn negative_noise_is_rejected() {
        let (code, out, err) = call(&["analyze", "--sts", "0.6,-1,0"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(out.is_empty());
        assert!(err.contains("nA"));
    }

    #[test]
    fn mixed_scan_flags_rejected() {
        let (code, _, err) = call(&["scan", "--r", "0.6", "--c", "1"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("mutually exclusive"));
    }

    #[test]
    fn table_and_csv_render() {
        let (code, out, _) = call(&["thresholds", "--noise", "0,1", "--format", "table"]);
        assert_eq!(code, 0);
        assert!(out.contains("thresholds.r_steer_ba"));
        let (_, out, _) = call(&["thresholds", "--noise", "0,1", "--format", "csv"]);
        assert!(out.starts_with("key,value\n"));
        assert!(out.contains("thresholds.r_steer_ba,0.658478948462\n"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("analyze"));
    }
}
