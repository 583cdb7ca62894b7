//! Command implementations behind the `slocc` binary.
//!
//! Exit codes: `0` firm classification / success, `1` parse or usage error,
//! `2` zero state, `3` boundary-confidence classification, `4` self-test or
//! fuzz failure.

use crate::labels::{GenuineFamily, StructuralClass};
use crate::orbits::{canonical_state, random_local_op};
use crate::quad::classify4;
use crate::report::{JsonQuadReport, JsonTriReport};
use crate::state::StateVector;
use crate::tripartite::{classify3, hyperdeterminant, TriClass};
use crate::{Confidence, Error, Tolerances};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_ZERO_STATE: i32 = 2;
pub const EXIT_BOUNDARY: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;

/// SLOCC entanglement classification of 3- and 4-qubit pure states.
#[derive(Debug, Parser)]
#[command(name = "slocc", version, about)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a state file (JSON amplitudes).
    Classify {
        /// Path to the state file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
        /// Relative numerical-rank cutoff.
        #[arg(long = "tol-rank")]
        tol_rank: Option<f64>,
        /// Relative discriminant cutoff.
        #[arg(long = "tol-disc")]
        tol_disc: Option<f64>,
    },
    /// Emit the canonical state of a class as a state file on stdout.
    Canon {
        /// Class label, e.g. `GHZ`, `W`, `Phi4`, `01GHZ`, `Psi13Psi24`,
        /// `000-01Psi`, `01Psi-GHZ`, `GHZ-W`.
        #[arg(long = "class")]
        class_label: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the class catalog: 34 structural classes, 8 genuine families.
    Table {
        #[arg(long, value_enum, default_value = "human")]
        format: OutputFormat,
    },
    /// Canonical round-trips, degenerate signatures, family census, and a
    /// hyperdeterminant agreement batch.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orbit-invariance campaign: random bounded local operations must not
    /// change any label.
    Fuzz {
        /// Restrict to one class (default: all 34).
        #[arg(long = "class")]
        class_label: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Condition-number bound for the sampled local operations.
        #[arg(long = "cond-max")]
        cond_max: Option<f64>,
        #[arg(long = "tol-rank")]
        tol_rank: Option<f64>,
        #[arg(long = "tol-disc")]
        tol_disc: Option<f64>,
    },
}

fn tolerances(tol_rank: Option<f64>, tol_disc: Option<f64>, cond_max: Option<f64>) -> Tolerances {
    let mut tol = Tolerances::default();
    if let Some(r) = tol_rank {
        tol.rank_rel = r;
    }
    if let Some(d) = tol_disc {
        tol.disc_rel = d;
    }
    if let Some(c) = cond_max {
        tol.cond_max = c;
    }
    tol
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    match &cfg.command {
        Command::Classify {
            input,
            format,
            tol_rank,
            tol_disc,
        } => cmd_classify(input, *format, tolerances(*tol_rank, *tol_disc, None)),
        Command::Canon { class_label, seed } => cmd_canon(class_label, *seed),
        Command::Table { format } => cmd_table(*format),
        Command::Selftest { seed } => cmd_selftest(*seed),
        Command::Fuzz {
            class_label,
            trials,
            seed,
            cond_max,
            tol_rank,
            tol_disc,
        } => cmd_fuzz(
            class_label.as_deref(),
            *trials,
            *seed,
            tolerances(*tol_rank, *tol_disc, *cond_max),
        ),
    }
}

fn load_state(path: &PathBuf) -> Result<StateVector, i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(EXIT_PARSE);
        }
    };
    match StateVector::from_json(&text) {
        Ok(s) => Ok(s),
        Err(Error::ZeroState) => {
            eprintln!("error: state vector is numerically zero");
            Err(EXIT_ZERO_STATE)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_PARSE)
        }
    }
}

fn cmd_classify(input: &PathBuf, format: OutputFormat, tol: Tolerances) -> i32 {
    if let Err(e) = tol.validate() {
        eprintln!("error: {e}");
        return EXIT_PARSE;
    }
    let state = match load_state(input) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let state = state.normalize();
    match state.n_qubits() {
        3 => {
            let report = match classify3(&state, &tol) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_PARSE;
                }
            };
            let det = hyperdeterminant(&state);
            match format {
                OutputFormat::Json => {
                    let json = JsonTriReport::from_report(&report, det);
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                OutputFormat::Human => {
                    println!("class: {}", report.class);
                    println!("partition ranks: {:?}", report.ranks);
                    println!("w-block ranks: {:?}", report.w_ranks);
                    println!("hyperdeterminant: {det:.6e}");
                    println!("confidence: {:?}", report.confidence);
                }
            }
            if report.confidence.is_boundary() {
                EXIT_BOUNDARY
            } else {
                EXIT_OK
            }
        }
        _ => {
            let report = match classify4(&state, &tol) {
                Ok(r) => r,
                Err(Error::UnresolvedPencil(msg)) => {
                    eprintln!("unresolved at the working tolerances: {msg}");
                    return EXIT_BOUNDARY;
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_PARSE;
                }
            };
            match format {
                OutputFormat::Json => {
                    let json = JsonQuadReport::from_report(&report);
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                OutputFormat::Human => {
                    println!("structural: {}", report.label);
                    println!("family: {}", report.family);
                    if let Some(sub) = report.subcase {
                        println!("canonical variant: {sub}");
                    }
                    println!("single-qubit ranks: {:?}", report.single_ranks);
                    println!("pair ranks: {:?}", report.pair_ranks);
                    if let Some(p) = &report.pencil {
                        println!(
                            "pencil: {} product point(s), {} zero-psi point(s), generic {}",
                            p.product_points.len(),
                            p.zero_psi_points.len(),
                            p.generic_class
                        );
                    }
                    println!("confidence: {:?}", report.confidence);
                }
            }
            if report.confidence.is_boundary() {
                EXIT_BOUNDARY
            } else {
                EXIT_OK
            }
        }
    }
}

fn cmd_canon(class_label: &str, seed: u64) -> i32 {
    let label: StructuralClass = match class_label.parse() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    // the constructor re-classifies its output before returning it
    match canonical_state(&label, None, seed) {
        Ok(state) => {
            println!("{}", state.to_json());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_PARSE
        }
    }
}

fn cmd_table(format: OutputFormat) -> i32 {
    let entries = crate::labels::catalog();
    match format {
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "structural": e.structural.to_string(),
                        "family": e.family.to_string(),
                        "genuine": e.structural.is_genuine(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema": crate::report::SCHEMA_VERSION,
                "classes": rows,
                "degenerate_count": entries.iter().filter(|e| !e.structural.is_genuine()).count(),
                "genuine_count": entries.iter().filter(|e| e.structural.is_genuine()).count(),
                "genuine_families": GenuineFamily::all().len(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        OutputFormat::Human => {
            println!("{:<16} {:<24} kind", "structural", "family");
            for e in &entries {
                println!(
                    "{:<16} {:<24} {}",
                    e.structural.to_string(),
                    e.family.to_string(),
                    if e.structural.is_genuine() {
                        "genuine"
                    } else {
                        "degenerate"
                    }
                );
            }
            let degenerate = entries.iter().filter(|e| !e.structural.is_genuine()).count();
            println!(
                "\n{} structural classes: {} degenerate + {} genuine; {} genuine families",
                entries.len(),
                degenerate,
                entries.len() - degenerate,
                GenuineFamily::all().len()
            );
        }
    }
    EXIT_OK
}

fn cmd_selftest(seed: u64) -> i32 {
    let tol = Tolerances::default();
    let mut failed = Vec::new();

    println!("{:<18} {}", "class", "canonical round-trip");
    for entry in crate::labels::catalog() {
        let ok = canonical_state(&entry.structural, None, seed)
            .and_then(|s| classify4(&s, &tol))
            .map(|r| r.label == entry.structural)
            .unwrap_or(false);
        println!(
            "{:<18} {}",
            entry.structural.to_string(),
            if ok { "pass" } else { "FAIL" }
        );
        if !ok {
            failed.push(entry.structural.to_string());
        }
    }

    let families = GenuineFamily::all().len();
    let family_ok = families == 8;
    println!(
        "genuine family census: {families} {}",
        if family_ok { "(pass)" } else { "(FAIL)" }
    );
    if !family_ok {
        failed.push("family census".into());
    }

    // hyperdeterminant agreement batch on random tripartite states
    let mut disagreements = 0usize;
    let batch = 2000u64;
    for i in 0..batch {
        let s = crate::orbits::haar_random_state(3, seed.wrapping_add(i));
        let r = match classify3(&s, &tol) {
            Ok(r) => r,
            Err(_) => {
                disagreements += 1;
                continue;
            }
        };
        let det = hyperdeterminant(&s);
        if det > 0.1 * tol.disc_rel && det < 10.0 * tol.disc_rel {
            continue; // declared boundary band
        }
        if (r.class == TriClass::Ghz) != (det > tol.disc_rel) {
            disagreements += 1;
        }
    }
    println!(
        "hyperdeterminant agreement: {}/{batch} {}",
        batch as usize - disagreements,
        if disagreements == 0 { "(pass)" } else { "(FAIL)" }
    );
    if disagreements > 0 {
        failed.push("hyperdeterminant agreement".into());
    }

    if failed.is_empty() {
        println!("selftest: all checks passed");
        EXIT_OK
    } else {
        eprintln!("selftest failed: {}", failed.join(", "));
        EXIT_FAILURE
    }
}

fn cmd_fuzz(class_label: Option<&str>, trials: u64, seed: u64, tol: Tolerances) -> i32 {
    if trials == 0 {
        eprintln!("error: --trials must be positive");
        return EXIT_PARSE;
    }
    let targets: Vec<StructuralClass> = match class_label {
        Some(name) => match name.parse() {
            Ok(label) => vec![label],
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_PARSE;
            }
        },
        None => StructuralClass::all(),
    };

    let mut flips = 0u64;
    let mut boundary = 0u64;
    let mut total = 0u64;
    for label in &targets {
        let base = match canonical_state(label, None, seed) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: canonical state for {label}: {e}");
                return EXIT_FAILURE;
            }
        };
        for t in 0..trials {
            let op_seed = seed
                .wrapping_mul(0x9e37_79b9)
                .wrapping_add(t)
                .wrapping_add(structural_index(label) as u64 * 1_000_003);
            let op = random_local_op(4, tol.cond_max, op_seed);
            let moved = match op.apply(&base) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_FAILURE;
                }
            };
            total += 1;
            match classify4(&moved, &tol) {
                Ok(report) => {
                    if report.label != *label {
                        flips += 1;
                        eprintln!(
                            "flip: {label} -> {} (trial {t}, seed {op_seed})",
                            report.label
                        );
                    }
                    if report.confidence == Confidence::Boundary {
                        boundary += 1;
                    }
                }
                Err(_) => {
                    boundary += 1;
                }
            }
        }
    }
    println!(
        "fuzz: {total} trials, {flips} flips, boundary rate {:.3}%",
        100.0 * boundary as f64 / total as f64
    );
    if flips == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn structural_index(label: &StructuralClass) -> usize {
    StructuralClass::all()
        .iter()
        .position(|l| l == label)
        .unwrap_or(0)
}
