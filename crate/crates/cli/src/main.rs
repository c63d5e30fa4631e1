use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use level3_cli::input::{CurveInputDoc, InputError};
use level3_cli::suites::{self, error_name, Options};
use level3_core::exact_rings::{BElem, QOmega};
use level3_core::landweber;
use level3_core::level3::{curve_c, curve_c_at, invariant_formulas};
use level3_core::{fibers, literal, Error};
use serde_json::json;

/// Exact verification of the level-3 structure on the curve
/// y^2 + 3v xy + (v^3 - 1) y = x^3.
#[derive(Parser)]
#[command(name = "level3", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite, or `all` of them.
    Verify {
        target: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Series precision for the formal group checks.
        #[arg(long, default_value_t = 50)]
        precision: usize,
        /// Comma-separated primes for the ordinary-fiber search.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u32>>,
        #[arg(long, hide = true)]
        inject_failure: Option<String>,
    },
    /// Print c4, c6, delta and j, symbolically or at a value of v in Q(w).
    Invariants {
        /// Exact literal for v; may use `w`.
        #[arg(long)]
        nu: Option<String>,
    },
    /// Classify a curve with a pair of 3-torsion points read from JSON.
    Classify {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Print the formal group law of the supersingular fiber at p = 2.
    FormalGroup {
        #[arg(long, default_value_t = 12)]
        precision: usize,
    },
    /// Point counts of ordinary witnesses and the supersingular fiber.
    Landweber {
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u32>>,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn math_error(e: &Error) -> ExitCode {
    eprintln!("error: {}: {e}", error_name(e));
    ExitCode::from(1)
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. } | Error::InvalidInput(_) | Error::InvalidField(_)
    )
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            target,
            format,
            precision,
            primes,
            inject_failure,
        } => {
            let mut opts = Options {
                precision,
                ..Options::default()
            };
            if let Some(p) = primes {
                opts.primes = p;
            }
            let Some(mut report) = suites::run(&target, &opts) else {
                return usage_error(format!(
                    "unknown target '{target}'; expected all or one of {}",
                    suites::SUITES.join(", ")
                ));
            };
            if let Some(id) = inject_failure {
                if !report.inject_failure(&id) {
                    return usage_error(format!("no check with id '{id}' ran"));
                }
            }
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Markdown => print!("{}", report.to_markdown()),
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Invariants { nu } => invariants(nu.as_deref()),
        Command::Classify { input } => {
            let src = match std::fs::read_to_string(&input) {
                Ok(s) => s,
                Err(e) => return usage_error(format!("{}: {e}", input.display())),
            };
            match CurveInputDoc::from_json(&src).and_then(|d| d.classify()) {
                Ok(out) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("output serializes")
                    );
                    ExitCode::SUCCESS
                }
                Err(InputError::Document(msg)) => usage_error(msg),
                Err(InputError::Math(e)) if is_input_error(&e) => usage_error(e),
                Err(InputError::Math(e)) => math_error(&e),
            }
        }
        Command::FormalGroup { precision } => match fibers::formal_group_law(precision) {
            Ok(law) => {
                let z = fibers::z_series(precision);
                let neg = fibers::neg_series(precision);
                let two = fibers::two_series(precision);
                let doc = json!({
                    "field": "F_4",
                    "precision": precision,
                    "z": z.to_string(),
                    "inverse": neg.to_string(),
                    "two_series": two.to_string(),
                    "law": law.to_string(),
                    "height": fibers::height_check().ok(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                ExitCode::SUCCESS
            }
            Err(e) if matches!(e, Error::PrecisionTooLow(_)) => usage_error(e),
            Err(e) => math_error(&e),
        },
        Command::Landweber { primes } => {
            let primes = primes.unwrap_or_else(|| landweber::DEFAULT_PRIMES.to_vec());
            let mut rows = Vec::new();
            for (p, w) in landweber::ordinary_witnesses(&primes) {
                match w {
                    Ok(w) => rows.push(json!({
                        "p": p, "q": w.q, "nu0": w.nu0.to_string(), "count": w.count,
                        "trace": w.trace, "ordinary": w.ordinary(),
                    })),
                    Err(e) if is_input_error(&e) => return usage_error(e),
                    Err(e) => return math_error(&e),
                }
            }
            let ss = match landweber::supersingular_confirmation() {
                Ok(r) => {
                    json!({ "q": r.count.q, "nu0": r.count.nu0.to_string(), "count": r.count.count, "trace": r.count.trace, "height": r.height })
                }
                Err(e) => return math_error(&e),
            };
            let doc = json!({ "witnesses": rows, "supersingular": ss });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            ExitCode::SUCCESS
        }
    }
}

fn invariants(nu: Option<&str>) -> ExitCode {
    let names = ["c4", "c6", "delta", "j"];
    let Some(src) = nu else {
        let inv = curve_c().invariants();
        let computed = [Some(inv.c4), Some(inv.c6), Some(inv.delta), inv.j];
        let closed = invariant_formulas();
        let rows: Vec<_> = names
            .iter()
            .zip(computed)
            .zip(closed)
            .map(|((n, c), f): ((&&str, Option<BElem>), BElem)| {
                json!({
                    "name": n,
                    "value": c.as_ref().map(ToString::to_string),
                    "closed_form": f.to_string(),
                    "matches": c.as_ref() == Some(&f),
                })
            })
            .collect();
        let ok = rows.iter().all(|r| r["matches"] == true);
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "nu": "v", "invariants": rows })).expect("json")
        );
        return if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        };
    };
    let ctx = QOmega::from_int(0);
    let nu = match literal::eval_str(src, &ctx, &[("w", QOmega::omega())]) {
        Ok(n) => n,
        Err(e) => return usage_error(e),
    };
    let curve = match curve_c_at(&nu, &QOmega::omega()) {
        Ok(c) => c,
        Err(e) => return math_error(&e),
    };
    let inv = curve.invariants();
    let values = [&inv.c4, &inv.c6, &inv.delta].map(ToString::to_string);
    let mut doc = json!({ "nu": nu.to_string() });
    for (n, v) in names.iter().zip(&values) {
        doc[*n] = json!(v);
    }
    let Some(j) = inv.j else {
        doc["j"] = serde_json::Value::Null;
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        return usage_error(format!("j is undefined at v = {nu}: delta = 0"));
    };
    doc["j"] = json!(j.to_string());
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    ExitCode::SUCCESS
}
