//! Command-line interface.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gwcalc::gw_table;
use crate::numeric::{set_precision, Precision, C64};
use crate::partitions::{BoxShape, Partition};
use crate::qring::{multiply, pieri_multiply, RingElement};
use crate::rootdata::IndexTuple;
use crate::toeplitz::point_at;
use crate::totalpos::{dense_diff, factor_params, positive_point, reconstruct_dense, canonical_order, FactorGrid};
use crate::verify::{check_classical_limit, check_duality, check_orthogonality, inequality_sweep, Orthogonality, Report};

#[derive(Parser, Debug)]
#[command(name = "qgrass", version, about = "Quantum cohomology of Grassmannians: exact and numeric engines")]
pub struct Cli {
    /// Numeric carrier: `double` or `extended:<bits>` (falls back to QGRASS_PRECISION).
    #[arg(long, global = true)]
    pub precision: Option<String>,
    /// Tolerance override for the chosen command.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Every nonzero Gromov–Witten invariant, from both engines.
    GwTable {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a named identity check; exit 0 iff it passes.
    Verify {
        /// littlewood, orthogonality1..3, row-char, row-pd, duality, lr, oracle
        #[arg(long)]
        check: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Scale `t` for the identities that take one.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
    },
    /// The point u_n(t zeta^I) as JSON.
    Point {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        /// Entries like `-1/2,1/2`; defaults to I_0.
        #[arg(long, allow_hyphen_values = true)]
        index: Option<String>,
        /// Print the dense matrix as CSV instead.
        #[arg(long)]
        matrix: bool,
    },
    /// Factor parameters of u_{>0}(t) and the round-trip error.
    Factorize {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// |S_lambda(zeta^I)| <= S_lambda(zeta^{I_0}) over every box with n <= n-max.
    Inequality {
        #[arg(long)]
        n_max: usize,
    },
    /// X_k * s_lambda in the Schubert basis.
    Pieri {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "")]
        lambda: String,
    },
    /// s_lambda * s_mu in the Schubert basis.
    Multiply {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long, default_value = "")]
        mu: String,
    },
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidBox { .. }
            | Error::OutsideBox { .. }
            | Error::NotAPartition(_)
            | Error::NotAnIndexTuple { .. }
            | Error::PieriDegree { .. }
            | Error::Parse(_)
    )
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidBox { .. } => "invalid_box",
        Error::OutsideBox { .. } => "outside_box",
        Error::NotAPartition(_) => "not_a_partition",
        Error::NotAnIndexTuple { .. } => "not_an_index_tuple",
        Error::PieriDegree { .. } => "pieri_degree",
        Error::BoxMismatch => "box_mismatch",
        Error::Degenerate(_) => "degenerate",
        Error::PrecisionFailure { .. } => "precision_failure",
        Error::NotInVariety { .. } => "not_in_variety",
        Error::NotReal { .. } => "not_real",
        Error::SingularMinor { .. } => "singular_minor",
        Error::TooLarge(_) => "too_large",
        Error::Parse(_) => "parse",
    }
}

fn parse_complex(s: &str) -> Result<C64> {
    let bad = || Error::Parse(format!("bad complex value {s:?}; use `re` or `re,im`"));
    let mut parts = s.split(',').map(|x| x.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(v) => v.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

fn emit<W: Write>(out: &mut W, v: &Value) -> Result<()> {
    writeln!(out, "{v}").map_err(|e| Error::Parse(e.to_string()))
}

/// Runs the CLI on `argv` (including the program name); returns the exit code.
pub fn run<W: Write, E: Write>(argv: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let _ = writeln!(err, "{}", json!({ "error": "usage", "message": msg.trim() }));
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": error_kind(&e), "message": e.to_string() }));
            if usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn report_code(r: &Report) -> i32 {
    if r.pass {
        0
    } else {
        1
    }
}

fn execute<W: Write>(cli: Cli, out: &mut W) -> Result<i32> {
    if let Some(p) = &cli.precision {
        set_precision(p.parse::<Precision>()?);
    }
    let current = crate::numeric::precision();
    match cli.command {
        Command::GwTable { d, n, format } => {
            let shape = BoxShape::new(d, n)?;
            let mut table = gw_table(shape)?;
            if let Some(tol) = cli.tol {
                table.threshold = tol;
            }
            match format {
                Format::Json => table.write_json_lines(&mut *out)?,
                Format::Csv => table.write_csv(&mut *out)?,
            }
            Ok(if table.ok() { 0 } else { 1 })
        }
        Command::Verify { check, d, n, t } => {
            let shape = BoxShape::new(d, n)?;
            let t = parse_complex(&t)?;
            let report = match check.as_str() {
                "duality" => check_duality(shape, cli.tol.unwrap_or(1e-10))?,
                "lr" | "classical" => check_classical_limit(shape)?,
                "oracle" => {
                    let table = gw_table(shape)?;
                    let tol = cli.tol.unwrap_or(current.rounding_threshold());
                    let worst = table
                        .rows
                        .iter()
                        .max_by(|a, b| a.residual.total_cmp(&b.residual))
                        .map(|r| serde_json::to_value(r).expect("row serializes"))
                        .unwrap_or(Value::Null);
                    let mismatches = table.mismatches().len();
                    let max_residual = table.max_residual();
                    Report {
                        check: "oracle".into(),
                        shape,
                        max_residual,
                        witness: json!({ "worst": worst, "mismatches": mismatches }),
                        tol,
                        pass: mismatches == 0 && max_residual < tol,
                    }
                }
                name => {
                    let which: Orthogonality = name.parse()?;
                    check_orthogonality(shape, which, t, cli.tol.unwrap_or(1e-9))?
                }
            };
            emit(out, &report.to_json())?;
            Ok(report_code(&report))
        }
        Command::Point { d, n, t, index, matrix } => {
            let shape = BoxShape::new(d, n)?;
            let index = match index {
                Some(s) => IndexTuple::parse(&s, shape)?,
                None => IndexTuple::i0(shape),
            };
            let u = point_at(parse_complex(&t)?, &index);
            if matrix {
                u.write_matrix_csv(&mut *out)?;
            } else {
                emit(out, &u.to_json())?;
            }
            Ok(0)
        }
        Command::Factorize { d, n, t } => {
            let shape = BoxShape::new(d, n)?;
            let u = positive_point(t, shape);
            let grid = factor_params(&u, 1e-12)?;
            let dense = reconstruct_dense(&grid, &canonical_order(shape))?;
            let scale = u.bands().iter().map(|v| v.norm()).fold(1.0, f64::max);
            let roundtrip = dense_diff(&dense, &u);
            let closed = grid.max_abs_diff(&FactorGrid::closed_form(t, shape));
            let tol = cli.tol.unwrap_or(1e-10);
            let pass = roundtrip <= tol * scale;
            emit(
                out,
                &json!({
                    "grid": grid.to_json(),
                    "roundtrip_error": roundtrip,
                    "closed_form_error": closed,
                    "pass": pass,
                }),
            )?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Inequality { n_max } => {
            let tol = cli.tol.unwrap_or(1e-9);
            let reports = inequality_sweep(n_max, tol)?;
            let mut total = 0;
            for r in &reports {
                total += r.violations;
                emit(
                    out,
                    &json!({ "box": r.shape, "violations": r.violations, "max_excess": r.max_excess }),
                )?;
            }
            emit(out, &json!({ "n_max": n_max, "boxes": reports.len(), "violations": total, "tol": tol }))?;
            Ok(if total == 0 { 0 } else { 1 })
        }
        Command::Pieri { d, n, k, lambda } => {
            let shape = BoxShape::new(d, n)?;
            let lambda: Partition = lambda.parse()?;
            let el = pieri_multiply(&RingElement::schubert(&lambda, shape)?, k)?;
            emit(
                out,
                &json!({ "box": shape, "k": k, "lambda": lambda, "terms": el.to_json(), "display": el.to_string() }),
            )?;
            Ok(0)
        }
        Command::Multiply { d, n, lambda, mu } => {
            let shape = BoxShape::new(d, n)?;
            let (lambda, mu): (Partition, Partition) = (lambda.parse()?, mu.parse()?);
            let el = multiply(&RingElement::schubert(&lambda, shape)?, &RingElement::schubert(&mu, shape)?)?;
            emit(
                out,
                &json!({ "box": shape, "lambda": lambda, "mu": mu, "terms": el.to_json(), "display": el.to_string() }),
            )?;
            Ok(0)
        }
    }
}
