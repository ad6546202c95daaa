//! Command-line front end: table generation, basis construction,
//! verification suites and numeric evaluation.

use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;
use weyl_e8_core::analytic::{eval_form, standard_numeric_reports, NumericContext};
use weyl_e8_core::basis::{jacobi_basis, lb_generator_counts};
use weyl_e8_core::catalog::Catalog;
use weyl_e8_core::jacobi_ring::{verify_identity, IDENTITY_NAMES};
use weyl_e8_core::semiinvariants::{
    check_semiinvariance_at, random_unimodular, roberts_lift, roberts_roundtrip_at, source,
};

#[derive(Parser)]
#[command(name = "weyl-e8", version, about = "Weyl invariant E8 Jacobi forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all 194 catalog generators with their grades and recipes
    Generators {
        /// Write the list as JSON to a file instead of text to stdout
        #[arg(long)]
        json: Option<String>,
    },
    /// Print the (index, order) generator count table as CSV
    Table2 {
        /// Write the CSV to a file instead of stdout
        #[arg(long)]
        csv: Option<String>,
    },
    /// Compute a basis of the weight/index space
    Basis {
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        index: i64,
        /// Write the basis as JSON to a file
        #[arg(long)]
        json: Option<String>,
    },
    /// Generator counts of the extremal subring up to an index bound
    LbTable {
        #[arg(long, default_value_t = 10)]
        max_index: i64,
        /// Write the CSV to a file instead of stdout
        #[arg(long)]
        csv: Option<String>,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 271828)]
        seed: u64,
        /// Write the full report as JSON to a file
        #[arg(long)]
        json: Option<String>,
    },
    /// Evaluate a named form or function at a point
    Eval {
        /// One of A1..A5, B2..B6, E4, E6, Delta, a0..b6, c0..d6, P165
        #[arg(long)]
        form: String,
        /// tau as re,im
        #[arg(long, default_value = "0,1.2")]
        tau: String,
        /// eight comma-separated complex numbers like 0.1,0.07i,1+2i,0,...
        #[arg(long, default_value = "0,0,0,0,0,0,0,0")]
        z: String,
        #[arg(long, default_value_t = 24)]
        order: u32,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Identities,
    Semiinvariance,
    Roberts,
    Equivariance,
    Numeric,
    All,
}

struct CheckLine {
    id: String,
    pass: bool,
    detail: String,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let err = || format!("cannot parse complex number {t:?}");
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(imag) = t.strip_suffix('i') {
        // forms: "bi", "a+bi", "a-bi"
        let split = imag
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i);
        return match split {
            None => {
                let b = if imag.is_empty() || imag == "+" {
                    1.0
                } else if imag == "-" {
                    -1.0
                } else {
                    imag.parse::<f64>().map_err(|_| err())?
                };
                Ok(Complex64::new(0.0, b))
            }
            Some(i) => {
                let re = imag[..i].parse::<f64>().map_err(|_| err())?;
                let rest = &imag[i..];
                let b = if rest == "+" {
                    1.0
                } else if rest == "-" {
                    -1.0
                } else {
                    rest.parse::<f64>().map_err(|_| err())?
                };
                Ok(Complex64::new(re, b))
            }
        };
    }
    Err(err())
}

fn parse_context(tau: &str, z: &str, order: u32, tol: f64) -> Result<NumericContext, String> {
    let parts: Vec<&str> = tau.split(',').collect();
    if parts.len() != 2 {
        return Err("--tau expects re,im".to_string());
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| "bad tau".to_string())?;
    let im: f64 = parts[1].trim().parse().map_err(|_| "bad tau".to_string())?;
    let zs: Vec<&str> = z.split(',').collect();
    if zs.len() != 8 {
        return Err("--z expects eight comma-separated complex numbers".to_string());
    }
    let mut zv = [Complex64::new(0.0, 0.0); 8];
    for (slot, s) in zv.iter_mut().zip(zs.iter()) {
        *slot = parse_complex(s)?;
    }
    NumericContext::new(Complex64::new(re, im), zv, order, tol).map_err(|e| e.to_string())
}

fn write_or_print(path: &Option<String>, contents: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, contents).map_err(|e| format!("cannot write {p}: {e}")),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn run_identities(checks: &mut Vec<CheckLine>) {
    for id in IDENTITY_NAMES {
        match verify_identity(id) {
            Ok(report) => checks.push(CheckLine {
                id: format!("identity/{id}"),
                pass: report.pass,
                detail: report.detail.unwrap_or_default(),
            }),
            Err(e) => checks.push(CheckLine {
                id: format!("identity/{id}"),
                pass: false,
                detail: e.to_string(),
            }),
        }
    }
}

fn run_semiinvariance(catalog: &Catalog, seed: u64, checks: &mut Vec<CheckLine>) {
    let mut failures = Vec::new();
    for (i, entry) in catalog.entries().iter().enumerate() {
        let s = source(&entry.covariant).expect("catalog generators are nonzero");
        let report = check_semiinvariance_at(&s, 5, seed.wrapping_add(i as u64));
        if !report.all_pass() {
            failures.push(entry.label.to_string());
        }
    }
    checks.push(CheckLine {
        id: "semiinvariance/catalog-sources".to_string(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} sources, 5 (kappa, lambda) trials each", catalog.len())
        } else {
            format!("failing: {}", failures.join(", "))
        },
    });
}

fn run_roberts(catalog: &Catalog, seed: u64, checks: &mut Vec<CheckLine>) {
    let mut failures = Vec::new();
    for (i, entry) in catalog.entries().iter().enumerate() {
        // symbolic roundtrip while the hat substitution stays small, exact
        // pointwise roundtrip for the large generators
        let ok = if entry.label.d_a + entry.label.d_b <= 4 {
            let s = source(&entry.covariant).expect("catalog generators are nonzero");
            matches!(roberts_lift(&s), Ok(lifted) if lifted == entry.covariant)
        } else {
            roberts_roundtrip_at(&entry.covariant, 3, seed.wrapping_add(i as u64))
                .unwrap_or(false)
        };
        if !ok {
            failures.push(entry.label.to_string());
        }
    }
    checks.push(CheckLine {
        id: "roberts/roundtrip".to_string(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("lift(source(c)) = c for all {} generators", catalog.len())
        } else {
            format!("failing: {}", failures.join(", "))
        },
    });
    // multiplicativity of source on random pairs of small generators
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let small: Vec<usize> = catalog
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.label.m <= 4)
        .map(|(i, _)| i)
        .collect();
    let mut bad = 0usize;
    for _ in 0..50 {
        let e1 = &catalog.entries()[small[rng.gen_range(0..small.len())]];
        let e2 = &catalog.entries()[small[rng.gen_range(0..small.len())]];
        let product = e1.covariant.mul(&e2.covariant);
        let lhs = source(&product).expect("product of generators is nonzero");
        let rhs = source(&e1.covariant).unwrap().poly.mul(&source(&e2.covariant).unwrap().poly);
        if lhs.poly != rhs {
            bad += 1;
        }
    }
    checks.push(CheckLine {
        id: "roberts/source-multiplicative".to_string(),
        pass: bad == 0,
        detail: format!("{bad} of 50 random pairs failed"),
    });
}

fn run_equivariance(catalog: &Catalog, seed: u64, checks: &mut Vec<CheckLine>) {
    use rand::SeedableRng;
    use weyl_e8_core::binary_forms::{alpha_var, beta_var, is_equivariant_at};
    use weyl_e8_core::semiinvariants::random_integer;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for entry in catalog.entries() {
        for _ in 0..5 {
            let t = random_unimodular(&mut rng);
            let mut point = std::collections::HashMap::new();
            for i in 0..=4 {
                point.insert(alpha_var(i), random_integer(&mut rng, false));
            }
            for j in 0..=6 {
                point.insert(beta_var(j), random_integer(&mut rng, false));
            }
            point.insert(weyl_e8_core::poly::var("u"), random_integer(&mut rng, true));
            point.insert(weyl_e8_core::poly::var("v"), random_integer(&mut rng, false));
            if !is_equivariant_at(&entry.covariant, &t, &point).unwrap_or(false) {
                failures.push(entry.label.to_string());
                break;
            }
        }
    }
    checks.push(CheckLine {
        id: "equivariance/catalog".to_string(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} generators, 5 unimodular matrices each", catalog.len())
        } else {
            format!("failing: {}", failures.join(", "))
        },
    });
}

fn run_numeric(checks: &mut Vec<CheckLine>) {
    let ctx = NumericContext::generic();
    match standard_numeric_reports(&ctx) {
        Ok(reports) => {
            for report in reports {
                checks.push(CheckLine {
                    id: format!("numeric/{}", report.check),
                    pass: report.pass,
                    detail: format!("max residual {:.3e}", report.max_residual),
                });
            }
        }
        Err(e) => checks.push(CheckLine {
            id: "numeric".to_string(),
            pass: false,
            detail: e.to_string(),
        }),
    }
}

fn run_verify(suite: Suite, seed: u64, json: Option<String>) -> Result<bool, String> {
    let mut checks = Vec::new();
    let needs_catalog = matches!(
        suite,
        Suite::Semiinvariance | Suite::Roberts | Suite::Equivariance | Suite::All
    );
    let catalog = if needs_catalog {
        Some(Catalog::build().map_err(|e| e.to_string())?)
    } else {
        None
    };
    match suite {
        Suite::Identities => run_identities(&mut checks),
        Suite::Semiinvariance => run_semiinvariance(catalog.as_ref().unwrap(), seed, &mut checks),
        Suite::Roberts => run_roberts(catalog.as_ref().unwrap(), seed, &mut checks),
        Suite::Equivariance => run_equivariance(catalog.as_ref().unwrap(), seed, &mut checks),
        Suite::Numeric => run_numeric(&mut checks),
        Suite::All => {
            let catalog = catalog.as_ref().unwrap();
            run_identities(&mut checks);
            run_semiinvariance(catalog, seed, &mut checks);
            run_roberts(catalog, seed, &mut checks);
            run_equivariance(catalog, seed, &mut checks);
            run_numeric(&mut checks);
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.id);
        } else {
            println!("{status} {} ({})", c.id, c.detail);
        }
    }
    if let Some(path) = json {
        let report = json!({
            "seed": seed,
            "pass": all_pass,
            "checks": checks.iter().map(|c| json!({
                "id": c.id,
                "pass": c.pass,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        });
        std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap())
            .map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    Ok(all_pass)
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Generators { json } => {
            let catalog = Catalog::build().map_err(|e| e.to_string())?;
            if let Some(path) = json {
                let items: Vec<_> = catalog
                    .entries()
                    .iter()
                    .map(|e| {
                        json!({
                            "label": e.label.to_string(),
                            "d_a": e.label.d_a,
                            "d_b": e.label.d_b,
                            "index": e.label.m,
                            "order": e.label.omega,
                            "recipe": e.recipe,
                        })
                    })
                    .collect();
                std::fs::write(&path, serde_json::to_string_pretty(&items).unwrap())
                    .map_err(|e| format!("cannot write {path}: {e}"))?;
            } else {
                for e in catalog.entries() {
                    println!("{:18} m={:2} omega={:2}  {}", e.label.to_string(), e.label.m, e.label.omega, e.recipe);
                }
            }
            Ok(true)
        }
        Command::Table2 { csv } => {
            let catalog = Catalog::build().map_err(|e| e.to_string())?;
            let table = catalog.table();
            write_or_print(&csv, table.to_csv().trim_end())?;
            table.check_expected().map_err(|e| e.to_string())?;
            Ok(true)
        }
        Command::Basis { weight, index, json } => {
            let start = Instant::now();
            let result = jacobi_basis(weight, index);
            let elapsed = start.elapsed();
            println!(
                "weight {weight} index {index}: dimension {} ({} ms)",
                result.dimension,
                elapsed.as_millis()
            );
            for b in &result.basis {
                println!("  {}", b.poly);
            }
            if let Some(path) = json {
                let report = json!({
                    "weight": weight,
                    "index": index,
                    "dimension": result.dimension,
                    "elapsed_ms": elapsed.as_millis() as u64,
                    "basis": result.basis.iter().map(|b| b.poly.to_json()).collect::<Vec<_>>(),
                });
                std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap())
                    .map_err(|e| format!("cannot write {path}: {e}"))?;
            }
            Ok(true)
        }
        Command::LbTable { max_index, csv } => {
            let start = Instant::now();
            let counts = lb_generator_counts(max_index);
            let mut out = String::from("m,generators\n");
            for (m, c) in counts.iter().enumerate() {
                out.push_str(&format!("{m},{c}\n"));
            }
            write_or_print(&csv, out.trim_end())?;
            eprintln!("computed in {} ms", start.elapsed().as_millis());
            Ok(true)
        }
        Command::Verify { suite, seed, json } => run_verify(suite, seed, json),
        Command::Eval { form, tau, z, order, tol } => {
            let ctx = parse_context(&tau, &z, order, tol)?;
            let value = eval_form(&form, &ctx).map_err(|e| e.to_string())?;
            println!("{form} = {} + {}i", value.re, value.im);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
