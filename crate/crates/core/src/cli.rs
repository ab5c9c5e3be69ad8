//! Command-line front end. Every invocation writes one JSON document (or its
//! flattened table form) to stdout and diagnostics to stderr.
//!
//! Exit codes: 0 success, 2 invalid input or failed validation, 1 anything else.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::archimedean::{arch_I_quadrature, zeta_infinity, ArchParams};
use crate::arith::{series_expand, DEFAULT_ORDER};
use crate::error::{Error, Result};
use crate::global::{
    global_product, global_z_at_zero, inner_product_value, nonvanishing, y_infinity, y_table,
    GlobalConfig,
};
use crate::local_data::{LocalSetupJson, RepData};
use crate::local_zeta::{oracle_mismatch, zeta_for_setup};
use crate::verify;
use crate::waldspurger::{
    spherical_generating_series, spherical_values_recurrence, steinberg_table,
};

#[derive(Parser, Debug)]
#[command(
    name = "waldzeta",
    version,
    about = "Waldspurger-model values and zeta integrals"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spherical values A_m or the Steinberg coset table for a local setup.
    Waldspurger {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_m: u32,
    },
    /// Closed-form local zeta integral, checked against the coset sum.
    LocalZeta {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Archimedean integral Z_inf(s) with a quadrature cross-check.
    ArchZeta {
        #[arg(long)]
        ell: u32,
        #[arg(long = "D")]
        d: u64,
        #[arg(long, default_value = "0,0", value_parser = parse_complex)]
        s: Complex64,
        /// Weight of the first section component; defaults to ell/2.
        #[arg(long)]
        ell1: Option<u32>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Validate a global configuration and evaluate the product formula.
    Global {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "0,0", value_parser = parse_complex)]
        s: Complex64,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
    },
}

/// `re,im` or a bare real part.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|e| format!("bad number {t:?}: {e}"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE,IM; got {s:?}")),
    }
}

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: Option<String>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return Outcome {
                code,
                stdout: String::new(),
                stderr: Some(e.render().to_string()),
            };
        }
    };
    let format = cli.format;
    let (code, value, diag) = match dispatch(cli.command) {
        Ok((code, v)) => (code, v, None),
        Err(e) => {
            let code = exit_code(&e);
            let mut v = json!({ "error": e.to_string() });
            if let Error::Validation(list) = &e {
                v["violations"] = json!(list);
            }
            if let Error::MissingPrimes(list) = &e {
                v["missing_primes"] = json!(list);
            }
            (code, v, Some(e.to_string()))
        }
    };
    Outcome {
        code,
        stdout: render(&value, format),
        stderr: diag,
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::Validation(_)
        | Error::MissingPrimes(_)
        | Error::Domain(_)
        | Error::Scope(_)
        | Error::NoModel(_) => 2,
        _ => 1,
    }
}

fn render(v: &Value, format: Format) -> String {
    let mut v = v.clone();
    clear_negative_zero(&mut v);
    let v = &v;
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable") + "\n",
        Format::Table => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter()
                .map(|(k, v)| format!("{k:<w$}  {v}\n"))
                .collect()
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) && !is_pair(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        _ => out.push((prefix.to_string(), v.to_string())),
    }
}

/// `-0.0` prints as `-0.0`; exact zeros should not carry a sign.
fn clear_negative_zero(v: &mut Value) {
    match v {
        Value::Number(n) if n.as_f64() == Some(0.0) && n.is_f64() => *v = json!(0.0),
        Value::Array(a) => a.iter_mut().for_each(clear_negative_zero),
        Value::Object(m) => m.values_mut().for_each(clear_negative_zero),
        _ => {}
    }
}

fn is_pair(a: &[Value]) -> bool {
    a.len() == 2 && a.iter().all(Value::is_number)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn dispatch(cmd: Command) -> Result<(i32, Value)> {
    match cmd {
        Command::Waldspurger { config, max_m } => {
            let setup = read_json::<LocalSetupJson>(&config)?.to_setup()?;
            let omega = setup.effective_omega()?;
            let f = &setup.field;
            Ok((
                0,
                match &setup.rep {
                    RepData::UnramifiedPS { .. } => {
                        let gen = spherical_generating_series(f, &setup.rep, &omega)?;
                        let a = spherical_values_recurrence(f, &setup.rep, &omega, max_m as usize)?;
                        let oracle_ok =
                            series_expand(&gen.gen, max_m as usize)?.coeffs() == a.as_slice();
                        json!({ "A": to_value(&a), "genfun": to_value(&gen.gen),
                            "conductor": gen.conductor, "oracle_ok": oracle_ok })
                    }
                    RepData::SteinbergTwist { .. } => {
                        to_value(&steinberg_table(f, &setup.rep, &omega, max_m)?)
                    }
                },
            ))
        }
        Command::LocalZeta { config, order } => {
            let setup = read_json::<LocalSetupJson>(&config)?.to_setup()?;
            let (kind, z) = zeta_for_setup(&setup)?;
            let mismatch = oracle_mismatch(&setup, order)?;
            let ok = mismatch.is_none();
            let mut v = json!({
                "kind": to_value(&kind),
                "closed_form": to_value(&z.closed_form),
                "y_factor": to_value(&z.y_factor),
                "oracle_ok": ok,
                "oracle_order": order,
            });
            if let Some(e) = mismatch {
                v["first_mismatch"] = json!(e);
            }
            Ok((if ok { 0 } else { 1 }, v))
        }
        Command::ArchZeta {
            ell,
            d,
            s,
            ell1,
            tol,
        } => {
            let ell1 = ell1.unwrap_or(ell / 2);
            if ell1 == 0 || ell1 >= ell {
                return Err(Error::InvalidInput("need 0 < ell1 < ell".into()));
            }
            let p = ArchParams::split_model(ell, ell1, ell - ell1, d);
            let value = zeta_infinity(&p, s)?;
            let scale = 2f64.powf((ell1 as f64 - (ell - ell1) as f64) / 2.0)
                * ((-(ell as f64) / 4.0 - s) * (d as f64).ln()).exp();
            let quad = scale * arch_I_quadrature(ell / 2, s, tol)?;
            Ok((
                0,
                json!({
                    "value": to_value(&value),
                    "quadrature_check": to_value(&quad),
                    "abs_diff": (value - quad).norm(),
                }),
            ))
        }
        Command::Global { config, s } => {
            let cfg: GlobalConfig = read_json(&config)?;
            let violations = cfg.validate();
            if !violations.is_empty() {
                return Err(Error::Validation(violations));
            }
            let table = y_table(&cfg)?;
            let g = global_product(&cfg, s)?;
            let mut v = json!({
                "violations": violations,
                "y_table": to_value(&table.entries),
                "Y_inf": to_value(&y_infinity(&cfg, s)?),
                "value": to_value(&g.value),
                "prime_bound": g.prime_bound,
                "factors": to_value(&g.factors),
            });
            if let Some(lv) = &cfg.l_values {
                v["nonvanishing"] = json!(nonvanishing(lv));
                if cfg.ell == 2 {
                    v["Z_at_zero"] = to_value(&global_z_at_zero(&cfg)?);
                    v["inner_product"] = to_value(&inner_product_value(&cfg)?);
                }
            }
            Ok((0, v))
        }
        Command::Verify { seed } => {
            let report = verify::run(seed);
            Ok((if report.passed { 0 } else { 1 }, to_value(&report)))
        }
    }
}
