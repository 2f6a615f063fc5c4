//! `vknot`: virtual knots as Gauss diagrams on the command line.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when a
//! verification fails (invalid unknotting sequence, census mismatch, or an
//! exhausted search).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;
use vknot_core::bounds::BoundReport;
use vknot_core::census;
use vknot_core::diagram::{GaussDiagram, Parity};
use vknot_core::families::FamilySpec;
use vknot_core::invariants;
use vknot_core::moves::{enumerate_moves, MoveKind, MoveSequence, NON_ADDITION_KINDS};
use vknot_core::search::{
    certify_forbidden_number, unknotting_search, verify_sequence, SearchConfig, SearchStatus,
};

#[derive(Parser)]
#[command(
    name = "vknot",
    version,
    about = "Gauss diagrams, forbidden moves, and odd-writhe invariants for virtual knots"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a signed Gauss code and print its structure.
    Parse { code: String },
    /// Odd writhe, odd writhe polynomial, parities, arc labels.
    Invariants { code: String },
    /// Lower/upper bounds on the forbidden number, itemized.
    Bounds {
        code: String,
        /// Also search for a certificate and tighten the interval.
        #[arg(long)]
        certify: bool,
    },
    /// List the applicable moves.
    Moves {
        code: String,
        /// Include the addition moves.
        #[arg(long)]
        additions: bool,
    },
    /// Search for a minimal forbidden-move unknotting certificate.
    Search {
        code: String,
        /// Maximum forbidden moves to spend.
        #[arg(long, default_value_t = 8)]
        budget: u32,
        /// Crossing ceiling for intermediate diagrams (default: initial + 2).
        #[arg(long)]
        ceiling: Option<usize>,
        /// Visited-state cap.
        #[arg(long = "max-states", default_value_t = 1_000_000)]
        max_states: usize,
        /// Allow R3 and the addition moves during the free closure.
        #[arg(long)]
        additions: bool,
    },
    /// Replay a move sequence and check it unknots the diagram.
    Verify {
        code: String,
        /// Sequence in the text notation, e.g. "FO(1,2), R1(1), R2(2,3)".
        #[arg(long)]
        seq: String,
    },
    /// Generate family diagrams: torus2-min:p, torus2-bridge:p, twist:n,
    /// vtwist:n, ring:n, complete:c.
    Family {
        spec: String,
        /// Print a bound report (including family bounds) per diagram.
        #[arg(long)]
        bounds: bool,
    },
    /// Load a census file and report invariants and bounds per entry.
    Census {
        file: PathBuf,
        /// Compare against published values (name, OW bound, F).
        #[arg(long)]
        expected: Option<PathBuf>,
        /// Replay the built-in unknotting sequences for the 4.x knots.
        #[arg(long)]
        table3: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn parse_diagram(code: &str) -> Result<GaussDiagram> {
    GaussDiagram::parse(code).map_err(|e| anyhow!("bad Gauss code: {e}"))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Parse { code } => {
            let d = parse_diagram(&code)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "chords": d.chord_count(),
                        "code": d.serialize(0),
                        "canonical": d.canonical_form(),
                        "complete": d.is_complete(),
                        "head_run": d.longest_head_run(),
                    })
                );
            } else {
                println!("chords:    {}", d.chord_count());
                println!("code:      {}", d.serialize(0));
                println!("canonical: {}", d.canonical_form());
                println!("complete:  {}", d.is_complete());
                println!("head run:  {}", d.longest_head_run());
            }
            Ok(0)
        }
        Cmd::Invariants { code } => {
            let d = parse_diagram(&code)?;
            let w_o = invariants::odd_writhe(&d);
            let poly = invariants::odd_writhe_polynomial(&d);
            let labels = invariants::arc_labels(&d);
            let chords: Vec<_> = d
                .chord_ids()
                .map(|c| {
                    let parity = d.parity(c).unwrap();
                    let n = invariants::chord_index(&d, &labels, c).unwrap();
                    (c, d.sign(c).unwrap(), parity, n)
                })
                .collect();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "odd_writhe": w_o,
                        "owp": poly,
                        "owp_text": poly.to_string(),
                        "arc_labels": labels.labels(),
                        "chords": chords.iter().map(|(c, s, p, n)| json!({
                            "chord": c,
                            "sign": s.value(),
                            "parity": match p { Parity::Odd => "odd", Parity::Even => "even" },
                            "index": n,
                        })).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("odd writhe: {w_o}");
                println!("odd writhe polynomial: {poly}");
                println!("arc labels: {:?}", labels.labels());
                for (c, sign, parity, n) in chords {
                    let p = match parity {
                        Parity::Odd => "odd",
                        Parity::Even => "even",
                    };
                    println!("chord {c}: sign {}, {p}, N = {n}", sign.value());
                }
            }
            Ok(0)
        }
        Cmd::Bounds { code, certify } => {
            let d = parse_diagram(&code)?;
            let report = if certify {
                certify_forbidden_number(&d, &SearchConfig::default())
            } else {
                vknot_core::best_bounds(&d)
            };
            print_bound_report(&report, cli.json);
            Ok(0)
        }
        Cmd::Moves { code, additions } => {
            let d = parse_diagram(&code)?;
            let mut kinds = NON_ADDITION_KINDS.to_vec();
            if additions {
                kinds.push(MoveKind::R1Add);
                kinds.push(MoveKind::R2Add);
            }
            let moves = enumerate_moves(&d, &kinds);
            if cli.json {
                let list: Vec<String> = moves.iter().map(ToString::to_string).collect();
                println!("{}", json!({ "moves": list }));
            } else {
                for m in &moves {
                    println!("{m}");
                }
                println!("{} applicable moves", moves.len());
            }
            Ok(0)
        }
        Cmd::Search {
            code,
            budget,
            ceiling,
            max_states,
            additions,
        } => {
            let d = parse_diagram(&code)?;
            let cfg = SearchConfig {
                max_forbidden: budget,
                crossing_ceiling: ceiling,
                max_states,
                allow_additions: additions,
            };
            let outcome = unknotting_search(&d, &cfg);
            if cli.json {
                println!("{}", serde_json::to_string(&outcome)?);
            } else {
                match &outcome.status {
                    SearchStatus::Unknotted(seq) => {
                        println!("unknotted with {} forbidden moves", outcome.forbidden_used);
                        println!("certificate: {seq}");
                    }
                    SearchStatus::ExhaustedBudget => {
                        println!(
                            "exhausted budget {} (ceiling-relative; no conclusion about larger budgets)",
                            budget
                        );
                    }
                    SearchStatus::ExhaustedStates => {
                        println!("exhausted state cap {max_states}");
                    }
                }
                println!("states visited: {}", outcome.states_visited);
            }
            Ok(match outcome.status {
                SearchStatus::Unknotted(_) => 0,
                _ => 2,
            })
        }
        Cmd::Verify { code, seq } => {
            let d = parse_diagram(&code)?;
            let seq: MoveSequence = seq.parse().map_err(|e| anyhow!("bad move sequence: {e}"))?;
            let outcome = verify_sequence(&d, &seq);
            if cli.json {
                println!("{}", serde_json::to_string(&outcome)?);
            } else {
                if outcome.valid_unknotting {
                    println!(
                        "valid unknotting, forbidden cost {}",
                        outcome.forbidden_cost
                    );
                } else if let Some(i) = outcome.failed_at {
                    println!("invalid: move {i} not applicable");
                } else {
                    println!(
                        "invalid: final diagram not empty ({})",
                        outcome.final_diagram.serialize(0)
                    );
                }
            }
            Ok(if outcome.valid_unknotting { 0 } else { 2 })
        }
        Cmd::Family { spec, bounds } => {
            let spec: FamilySpec = spec.parse().map_err(|e| anyhow!("{e}"))?;
            let diagrams = spec.diagrams().map_err(|e| anyhow!("{e}"))?;
            for d in &diagrams {
                if cli.json {
                    let mut obj = json!({
                        "family": spec.to_string(),
                        "code": d.serialize(0),
                    });
                    if bounds {
                        let report = vknot_core::best_bounds_with_family(d, Some(&spec));
                        obj["bounds"] = serde_json::to_value(&report)?;
                    }
                    println!("{obj}");
                } else {
                    println!("{}", d.serialize(0));
                    if bounds {
                        let report = vknot_core::best_bounds_with_family(d, Some(&spec));
                        print_bound_report(&report, false);
                    }
                }
            }
            Ok(0)
        }
        Cmd::Census {
            file,
            expected,
            table3,
        } => {
            let entries = census::load_census(&file)
                .with_context(|| format!("loading census {}", file.display()))?;
            let expected_rows = expected
                .map(|p| {
                    census::load_expected(&p).with_context(|| format!("loading {}", p.display()))
                })
                .transpose()?;
            let report = census::report(&entries, expected_rows.as_deref());
            let mut failed = !report.is_clean();
            if cli.json {
                print!("{}", report.json_lines());
            } else {
                print!("{}", report.text());
            }
            if table3 {
                let t3 = census::verify_table3(&entries);
                if cli.json {
                    println!("{}", serde_json::to_string(&t3)?);
                } else {
                    for v in &t3.verdicts {
                        let status = if v.valid && v.forbidden_cost == v.expected_cost {
                            "ok"
                        } else {
                            "FAIL"
                        };
                        println!(
                            "{}: {status} (cost {}, expected {})",
                            v.name, v.forbidden_cost, v.expected_cost
                        );
                    }
                    if !t3.missing.is_empty() {
                        println!("missing entries: {}", t3.missing.join(", "));
                    }
                }
                failed |= !t3.all_valid();
            }
            Ok(if failed { 2 } else { 0 })
        }
    }
}

fn print_bound_report(report: &BoundReport, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(report).unwrap());
        return;
    }
    println!("crossings:  {}", report.crossings);
    println!("head run:   {}", report.head_run);
    println!("complete:   {}", report.is_complete);
    println!("odd writhe: {}", report.odd_writhe);
    println!("owp:        {}", report.owp);
    let interval = match report.exact {
        Some(v) => format!("{v} (exact)"),
        None => format!("{}-{}", report.lower, report.upper),
    };
    println!("F(K):       {interval}");
    for item in &report.lower_items {
        let tag = if item.diagram_relative {
            " [diagram-relative]"
        } else {
            ""
        };
        println!("  lower {:<24} {}{tag}", item.name, item.value);
    }
    for item in &report.upper_items {
        let tag = if item.diagram_relative {
            " [diagram-relative]"
        } else {
            ""
        };
        println!("  upper {:<24} {}{tag}", item.name, item.value);
    }
    for w in &report.warnings {
        println!("  warning: {w}");
    }
}
