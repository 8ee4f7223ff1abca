//! `excat` command-line interface.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on runtime errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::monte_carlo::{monte_carlo, TrialPlan};
use super::presets::ConcatPreset;
use super::probe::{probe_bz, probe_epsilon, probe_expander, ProbeReport};
use super::{HarnessError, SCHEMA_VERSION};
use crate::analysis::{self, BoundConstants, FieldVariant};
use crate::concat::{theorem1_check, Theorem1Input};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbModel {
    /// `1 / (n_in ε⁴)`
    Poly,
    /// `exp(-n_in ε²)`
    Exp,
    /// constant 1
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbeKind {
    Expander,
    Bz,
    Epsilon,
}

#[derive(Debug, Parser)]
#[command(
    name = "excat",
    version,
    about = "Expander-based concatenated codes: construction, simulation and bounds"
)]
struct Cli {
    /// Output format; defaults to csv for `exponent` and `probe`, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a code from a preset and report its parameters and bounds.
    Build {
        #[arg(long, value_name = "FILE")]
        preset: PathBuf,
    },
    /// Estimate the block error probability over a BSC.
    Simulate {
        #[arg(long, value_name = "FILE")]
        preset: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Error exponent curves E(C, ε) for several t.
    Exponent {
        #[arg(long = "C", default_value_t = 0.8)]
        capacity: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 3.0])]
        t: Vec<f64>,
        /// Explicit ε values; otherwise an even grid on [0, eps-max].
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<f64>,
        #[arg(long, default_value_t = 0.2)]
        eps_max: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
    },
    /// Optimal (η, ϱ) and the exponent constant Υ.
    Optimize,
    /// Check the conditions of the positive-exponent argument for one ε.
    CheckTheorem1 {
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 0.125)]
        theta: f64,
        /// Defaults to b + 5 for `poly` and 3 otherwise.
        #[arg(long)]
        h0: Option<f64>,
        #[arg(long = "C", default_value_t = 1.0)]
        capacity: f64,
        #[arg(long, value_enum, default_value_t = ProbModel::Poly)]
        prob: ProbModel,
    },
    /// Degree bounds for ML-decoded baseline expander codes.
    BzBounds {
        #[arg(long, default_value_t = 0.11)]
        p: f64,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Degree at which to evaluate the exponent term and positivity.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Operation-count scaling probes.
    Probe {
        #[arg(long, value_enum, default_value_t = ProbeKind::Expander)]
        kind: ProbeKind,
        /// Vertices per side (expander) or degrees (bz).
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<f64>,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        ell: u32,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 0.05)]
        error_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(text) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(HarnessError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn versioned(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn to_json(v: Value) -> Result<String, HarnessError> {
    Ok(serde_json::to_string_pretty(&versioned(v))? + "\n")
}

/// Flat objects as a two-line CSV; nested values are written as JSON.
fn object_csv(v: &Value) -> String {
    let Value::Object(m) = v else {
        return format!("{v}\n");
    };
    let cell = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => {
            let s = other.to_string();
            if s.contains(',') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        }
    };
    let keys: Vec<&str> = m.keys().map(String::as_str).collect();
    let vals: Vec<String> = m.values().map(cell).collect();
    format!("{}\n{}\n", keys.join(","), vals.join(","))
}

fn emit(format: Format, v: Value) -> Result<String, HarnessError> {
    match format {
        Format::Json => to_json(v),
        Format::Csv => Ok(object_csv(&versioned(v))),
    }
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<String, HarnessError> {
    let json_default = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Build { preset } => {
            let (preset, base) = ConcatPreset::load(preset)?;
            let (outer, code) = preset.build(&base)?;
            let mut v = json!({ "outer": outer.describe()? });
            if let Some(c) = code {
                v["inner"] = json!({
                    "n_in": c.inner().n_in(),
                    "k_in": c.inner().k_in(),
                    "rate": c.inner().rate(),
                    "profile": c.inner().profile(),
                });
                v["n_cont"] = json!(c.length());
                v["r_cont"] = json!(c.rate());
            }
            emit(json_default, v)
        }
        Command::Simulate {
            preset,
            p,
            trials,
            seed,
            threads,
        } => {
            if *trials == 0 {
                return Err(invalid("--trials must be at least 1"));
            }
            if *threads == Some(0) {
                return Err(invalid("--threads must be at least 1"));
            }
            let (preset, base) = ConcatPreset::load(preset)?;
            let (_, code) = preset.build(&base)?;
            let code = code.ok_or_else(|| invalid("simulate needs a preset with an inner code"))?;
            let start = Instant::now();
            let est = monte_carlo(
                &code,
                &TrialPlan {
                    p: *p,
                    trials: *trials,
                    seed: *seed,
                    threads: *threads,
                },
            )?;
            let _ = writeln!(err, "wall time: {:.3} s", start.elapsed().as_secs_f64());
            emit(
                json_default,
                json!({
                    "p": p,
                    "seed": seed,
                    "trials": est.trials,
                    "failures": est.failures,
                    "estimate": est.estimate,
                    "lower": est.lower,
                    "upper": est.upper,
                    "mean_ops": est.mean_ops,
                    "n_cont": code.length(),
                    "r_cont": code.rate(),
                    "beta": code.outer().beta(),
                }),
            )
        }
        Command::Exponent {
            capacity,
            t,
            epsilon,
            eps_max,
            points,
        } => {
            if t.is_empty() {
                return Err(invalid("--t needs at least one value"));
            }
            let eps: Vec<f64> = if epsilon.is_empty() {
                if *points < 2 {
                    return Err(invalid("--points must be at least 2"));
                }
                (0..*points)
                    .map(|i| eps_max * i as f64 / (*points - 1) as f64)
                    .collect()
            } else {
                epsilon.clone()
            };
            let mut rows = Vec::new();
            for &tt in t {
                for &e in &eps {
                    rows.push((e, tt, analysis::error_exponent(*capacity, e, tt)?));
                }
            }
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut s = String::from("epsilon,t,E\n");
                    for (e, tt, v) in rows {
                        let _ = writeln!(s, "{e},{tt},{v:e}");
                    }
                    Ok(s)
                }
                Format::Json => to_json(json!({
                    "C": capacity,
                    "rows": rows.iter().map(|(e, tt, v)| json!({"epsilon": e, "t": tt, "E": v})).collect::<Vec<_>>(),
                })),
            }
        }
        Command::Optimize => {
            let o = analysis::upsilon_optimize();
            emit(
                json_default,
                json!({ "eta": o.eta, "rho": o.rho, "upsilon": o.upsilon }),
            )
        }
        Command::CheckTheorem1 {
            epsilon,
            b,
            theta,
            h0,
            capacity,
            prob,
        } => {
            let h0 = h0.unwrap_or(match prob {
                ProbModel::Poly => b + 5.0,
                _ => 3.0,
            });
            let f: &dyn Fn(f64, f64) -> f64 = match prob {
                ProbModel::Poly => &|gap: f64, n: f64| 1.0 / (n * gap.powi(4)),
                ProbModel::Exp => &|gap: f64, n: f64| (-n * gap * gap).exp(),
                ProbModel::One => &|_: f64, _: f64| 1.0,
            };
            let input = Theorem1Input {
                eps: *epsilon,
                b: *b,
                theta: *theta,
                h0,
                capacity: *capacity,
            };
            let report = theorem1_check(&input, f, None)?;
            let mut v = serde_json::to_value(&report)?;
            v["input"] = serde_json::to_value(input)?;
            emit(json_default, v)
        }
        Command::BzBounds { p, epsilon, degree } => {
            let k = BoundConstants::default();
            let cap = analysis::bsc_capacity(*p)?;
            let rate = (1.0 - epsilon) * cap;
            let mut v = json!({
                "p": p,
                "epsilon": epsilon,
                "capacity": cap,
                "rate": rate,
                "bz2_min_degree_binary": analysis::bz2_min_degree(*epsilon, *p, FieldVariant::Binary, k)?,
                "bz2_min_degree_large_field": analysis::bz2_min_degree(*epsilon, *p, FieldVariant::LargeField, k)?,
            });
            match analysis::bz3_threshold_degree(*p, *epsilon) {
                Ok(d) => v["bz3_threshold_degree"] = json!(d),
                Err(e) => v["bz3_threshold_degree"] = json!(e.to_string()),
            }
            if let Some(d) = degree {
                let b = analysis::bz2_exponent_term(rate, *p, *d, FieldVariant::Binary, k)?;
                let l = analysis::bz2_exponent_term(rate, *p, *d, FieldVariant::LargeField, k)?;
                v["degree"] = json!(d);
                v["bz2_term_binary"] = serde_json::to_value(b)?;
                v["bz2_term_large_field"] = serde_json::to_value(l)?;
                v["bz3"] = match analysis::bz3_positivity(*d, *p, *epsilon) {
                    Ok(r) => serde_json::to_value(r)?,
                    Err(e) => json!(e.to_string()),
                };
            }
            emit(json_default, v)
        }
        Command::Probe {
            kind,
            sizes,
            epsilon,
            degree,
            ell,
            k,
            m,
            error_fraction,
            seed,
        } => {
            let report = match kind {
                ProbeKind::Expander => {
                    let sizes = if sizes.is_empty() {
                        vec![12, 24, 48, 96]
                    } else {
                        sizes.clone()
                    };
                    probe_expander(&sizes, *degree, *ell, *k, *m, *error_fraction, *seed)?
                }
                ProbeKind::Bz => {
                    let sizes = if sizes.is_empty() {
                        vec![8, 10, 12, 14]
                    } else {
                        sizes.clone()
                    };
                    probe_bz(&sizes, *seed)?
                }
                ProbeKind::Epsilon => {
                    let eps = if epsilon.is_empty() {
                        vec![0.5, 0.4, 0.3, 0.25]
                    } else {
                        epsilon.clone()
                    };
                    probe_epsilon(&eps, *seed)?
                }
            };
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(probe_csv(&report)),
                Format::Json => to_json(serde_json::to_value(&report)?),
            }
        }
    }
}

fn probe_csv(r: &ProbeReport) -> String {
    let mut s = format!("{},ops\n", r.x_label);
    for p in &r.points {
        let _ = writeln!(s, "{},{}", p.x, p.ops);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("excat").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn optimize_json() {
        let (code, out, _) = call(&["optimize", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert!((v["eta"].as_f64().unwrap() - 0.6667).abs() < 1e-4);
        assert!((v["rho"].as_f64().unwrap() - 162.0).abs() < 0.05);
        assert!((v["upsilon"].as_f64().unwrap() - 6.8587e-4).abs() < 5e-9);
    }

    #[test]
    fn exponent_csv() {
        let (code, out, _) = call(&["exponent", "--C", "0.8", "--t", "1,2,3"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("epsilon,t,E"));
        assert_eq!(lines.count(), 63);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["optimize", "--bogus"]).0, 1);
        assert_eq!(call(&["nonsense"]).0, 1);
        assert_eq!(call(&["exponent", "--points", "1"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn runtime_errors_exit_two() {
        let (code, _, err) = call(&["build", "--preset", "/nonexistent/preset.json"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
        assert_eq!(call(&["bz-bounds", "--p", "0.7"]).0, 2);
    }

    #[test]
    fn theorem1_models() {
        for (model, holds) in [("poly", true), ("exp", true), ("one", false)] {
            let (code, out, _) = call(&["check-theorem1", "--prob", model]);
            assert_eq!(code, 0);
            let v: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["condition_holds"], holds, "{model}");
        }
    }
}
