//! Command-line surface over the presentation/Hopf-term engine. Every
//! command is a thin shell over library operations; JSON is the machine
//! output format (pass `--json`), human-readable text is the default.
//!
//! Exit codes: 0 success/equivalent, 2 distinguished/non-equivalent or a
//! failed check, 3 bounds exhausted, 1 error.

use clap::{Args, Parser, Subcommand};
use hopfpres::axioms::{axiom_suite, check_axioms};
use hopfpres::model::{builtin_group, make_group, FiniteGroup, GroupSpec};
use hopfpres::text::{parse_presentation, parse_term, print_presentation, print_term};
use hopfpres::{
    compose_p, eliminate, eval_term, hom_count, hom_oracle, omega, omega_bar, search_equiv,
    tensor_p, tensor_t, then, verify_certificate, Certificate, OmegaBarChoices, RelPresentation,
    SearchBounds, SearchOutcome,
};
use serde::Deserialize;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hopfpres", version, about = "Relative presentations modulo AC-moves, Hopf-algebra terms, the functors between them, exact finite-group evaluation and certificate-producing equivalence search")]
struct Cli {
    /// TOML config with default search bounds and group list.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Thread count for search and batch evaluation (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Kind {
    Pres,
    Term,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation or term and echo it back normalized.
    Parse {
        #[arg(long, value_enum, default_value = "pres")]
        kind: Kind,
        /// Input file, or '-' for stdin.
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Normalize: eliminate redundant internal generators (presentations)
    /// or compact the printed layout (terms).
    Normalize {
        #[arg(long, value_enum, default_value = "pres")]
        kind: Kind,
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Compose two morphisms in diagrammatic order (first then second).
    Compose {
        #[arg(long, value_enum, default_value = "pres")]
        kind: Kind,
        first: String,
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Tensor two morphisms.
    Tensor {
        #[arg(long, value_enum, default_value = "pres")]
        kind: Kind,
        first: String,
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Translate a term into a presentation.
    Omega {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Translate a presentation into a term.
    Omegabar {
        input: String,
        /// JSON file with internal_order / relator_order / sigma_strategy.
        #[arg(long)]
        choices: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a term (exact functor) or a presentation (hom oracle) in a
    /// finite group; prints the matrix as JSON.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "term")]
        kind: Kind,
        input: String,
    },
    /// Homomorphism count of a closed presentation.
    Homcount {
        #[arg(long)]
        group: String,
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Bounded bidirectional AC-equivalence search.
    AcEquiv {
        first: String,
        second: String,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Write the found certificate to this JSON file.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Replay a certificate between two presentations.
    VerifyCert {
        first: String,
        certificate: PathBuf,
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate both sides of every in-scope identity in each group.
    AxiomsCheck {
        /// Comma-separated groups (default: config list or z2,z3,z6,s3).
        #[arg(long)]
        groups: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_rel: Option<usize>,
    #[arg(long)]
    max_int: Option<u32>,
    #[arg(long)]
    max_ac1: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Deserialize, Default)]
struct ConfigFile {
    #[serde(default)]
    groups: Option<Vec<String>>,
    #[serde(default)]
    bounds: Option<ConfigBounds>,
}

#[derive(Deserialize, Default, Clone, Copy)]
struct ConfigBounds {
    max_relator_len: Option<usize>,
    max_relators: Option<usize>,
    max_internal: Option<u32>,
    max_ac1_len: Option<usize>,
    depth: Option<usize>,
    nodes: Option<usize>,
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn load_presentation(path: &str) -> Result<RelPresentation, String> {
    let text = read_input(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let p: RelPresentation = serde_json::from_str(trimmed).map_err(|e| e.to_string())?;
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    } else {
        parse_presentation(&text).map_err(|e| e.to_string())
    }
}

fn load_group(name: &str) -> Result<FiniteGroup, String> {
    if let Some(g) = builtin_group(name) {
        return Ok(g);
    }
    if name.ends_with(".json") {
        let text = fs::read_to_string(name).map_err(|e| format!("{name}: {e}"))?;
        let spec: GroupSpec = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        return make_group(&spec).map_err(|e| e.to_string());
    }
    Err(format!("unknown group '{name}' (expected z2, z3, z6, s3 or a .json table)"))
}

fn resolve_bounds(args: &BoundArgs, config: &ConfigFile) -> SearchBounds {
    let mut bounds = SearchBounds::default();
    if let Some(cb) = &config.bounds {
        if let Some(v) = cb.max_relator_len {
            bounds.max_relator_len = v;
        }
        if let Some(v) = cb.max_relators {
            bounds.max_relators = v;
        }
        if let Some(v) = cb.max_internal {
            bounds.max_internal = v;
        }
        if let Some(v) = cb.max_ac1_len {
            bounds.max_ac1_len = v;
        }
        if let Some(v) = cb.depth {
            bounds.depth = v;
        }
        if let Some(v) = cb.nodes {
            bounds.nodes = v;
        }
    }
    if let Some(v) = args.max_len {
        bounds.max_relator_len = v;
    }
    if let Some(v) = args.max_rel {
        bounds.max_relators = v;
    }
    if let Some(v) = args.max_int {
        bounds.max_internal = v;
    }
    if let Some(v) = args.max_ac1 {
        bounds.max_ac1_len = v;
    }
    if let Some(v) = args.depth {
        bounds.depth = v;
    }
    if let Some(v) = args.nodes {
        bounds.nodes = v;
    }
    bounds
}

fn emit_presentation(p: &RelPresentation, json: bool) -> Result<(), String> {
    if json {
        println!("{}", serde_json::to_string_pretty(p).map_err(|e| e.to_string())?);
    } else {
        println!("{}", print_presentation(p));
    }
    Ok(())
}

fn emit_term(t: &hopfpres::HopfTerm, json: bool) -> Result<(), String> {
    if json {
        println!("{}", serde_json::to_string_pretty(t).map_err(|e| e.to_string())?);
    } else {
        println!("{}", print_term(t));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, String> {
    let config: ConfigFile = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            toml::from_str(&text).map_err(|e| e.to_string())?
        }
        None => ConfigFile::default(),
    };
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| e.to_string())?;
    }

    match cli.command {
        Command::Parse { kind, input, json } => {
            match kind {
                Kind::Pres => emit_presentation(&load_presentation(&input)?, json)?,
                Kind::Term => {
                    let t = parse_term(&read_input(&input)?).map_err(|e| e.to_string())?;
                    emit_term(&t, json)?;
                }
            }
            Ok(0)
        }
        Command::Normalize { kind, input, json } => {
            match kind {
                Kind::Pres => {
                    let p = eliminate(&load_presentation(&input)?);
                    emit_presentation(&p, json)?;
                }
                Kind::Term => {
                    let t = parse_term(&read_input(&input)?).map_err(|e| e.to_string())?;
                    emit_term(&t.normalize_layout(), json)?;
                }
            }
            Ok(0)
        }
        Command::Compose { kind, first, second, json } => {
            match kind {
                Kind::Pres => {
                    let p = load_presentation(&first)?;
                    let q = load_presentation(&second)?;
                    let composed = compose_p(&p, &q).map_err(|e| e.to_string())?;
                    emit_presentation(&composed, json)?;
                }
                Kind::Term => {
                    let f = parse_term(&read_input(&first)?).map_err(|e| e.to_string())?;
                    let g = parse_term(&read_input(&second)?).map_err(|e| e.to_string())?;
                    emit_term(&then(&f, &g).map_err(|e| e.to_string())?, json)?;
                }
            }
            Ok(0)
        }
        Command::Tensor { kind, first, second, json } => {
            match kind {
                Kind::Pres => {
                    let p = load_presentation(&first)?;
                    let q = load_presentation(&second)?;
                    emit_presentation(&tensor_p(&p, &q), json)?;
                }
                Kind::Term => {
                    let f = parse_term(&read_input(&first)?).map_err(|e| e.to_string())?;
                    let g = parse_term(&read_input(&second)?).map_err(|e| e.to_string())?;
                    emit_term(&tensor_t(&f, &g), json)?;
                }
            }
            Ok(0)
        }
        Command::Omega { input, json } => {
            let t = parse_term(&read_input(&input)?).map_err(|e| e.to_string())?;
            emit_presentation(&omega(&t), json)?;
            Ok(0)
        }
        Command::Omegabar { input, choices, json } => {
            let p = load_presentation(&input)?;
            let choices: OmegaBarChoices = match choices {
                Some(path) => {
                    let text =
                        fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    serde_json::from_str(&text).map_err(|e| e.to_string())?
                }
                None => OmegaBarChoices::default(),
            };
            let t = omega_bar(&p, &choices).map_err(|e| e.to_string())?;
            emit_term(&t, json)?;
            Ok(0)
        }
        Command::Eval { group, kind, input } => {
            let g = load_group(&group)?;
            let matrix = match kind {
                Kind::Term => {
                    let t = parse_term(&read_input(&input)?).map_err(|e| e.to_string())?;
                    eval_term(&t, &g).map_err(|e| e.to_string())?
                }
                Kind::Pres => {
                    let p = load_presentation(&input)?;
                    hom_oracle(&p, &g).map_err(|e| e.to_string())?
                }
            };
            println!("{}", serde_json::to_string(&matrix).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Command::Homcount { group, input, json } => {
            let g = load_group(&group)?;
            let p = load_presentation(&input)?;
            let count = hom_count(&p, &g).map_err(|e| e.to_string())?;
            if json {
                println!("{{\"count\": \"{count}\"}}");
            } else {
                println!("{count}");
            }
            Ok(0)
        }
        Command::AcEquiv { first, second, bounds, cert, json } => {
            let p = load_presentation(&first)?;
            let q = load_presentation(&second)?;
            let bounds = resolve_bounds(&bounds, &config);
            let outcome = search_equiv(&p, &q, &bounds).map_err(|e| e.to_string())?;
            match outcome {
                SearchOutcome::Found(certificate) => {
                    if let Some(path) = cert {
                        fs::write(
                            &path,
                            serde_json::to_string_pretty(&certificate).map_err(|e| e.to_string())?,
                        )
                        .map_err(|e| e.to_string())?;
                    }
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "outcome": "equivalent",
                                "moves": certificate.moves.len(),
                                "certificate": certificate,
                            })
                        );
                    } else {
                        println!("equivalent ({} moves)", certificate.moves.len());
                    }
                    Ok(0)
                }
                SearchOutcome::Distinguished { group, row, col, lhs, rhs } => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "outcome": "distinguished",
                                "group": group, "row": row, "col": col,
                                "lhs": lhs, "rhs": rhs,
                            })
                        );
                    } else {
                        println!(
                            "not equivalent: {group} evaluation differs at ({row}, {col}): {lhs} vs {rhs}"
                        );
                    }
                    Ok(2)
                }
                SearchOutcome::ExhaustedBounds { nodes } => {
                    if json {
                        println!(
                            "{}",
                            serde_json::json!({"outcome": "exhausted", "nodes": nodes})
                        );
                    } else {
                        println!("bounds exhausted after {nodes} states");
                    }
                    Ok(3)
                }
            }
        }
        Command::VerifyCert { first, certificate, second, json } => {
            let p = load_presentation(&first)?;
            let q = load_presentation(&second)?;
            let text = fs::read_to_string(&certificate)
                .map_err(|e| format!("{}: {e}", certificate.display()))?;
            let cert: Certificate = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let outcome = verify_certificate(&p, &cert, &q);
            let valid = outcome.is_valid();
            if json {
                println!(
                    "{}",
                    serde_json::json!({"valid": valid, "detail": format!("{outcome:?}")})
                );
            } else {
                match &outcome {
                    hopfpres::VerifyOutcome::Valid => println!("valid"),
                    hopfpres::VerifyOutcome::MoveFailed { step, reason } => {
                        println!("invalid: move {step} not applicable: {reason}")
                    }
                    hopfpres::VerifyOutcome::KeyMismatch => {
                        println!("invalid: final presentation does not match the target")
                    }
                }
            }
            Ok(if valid { 0 } else { 2 })
        }
        Command::AxiomsCheck { groups, json } => {
            let names: Vec<String> = match (groups, &config.groups) {
                (Some(list), _) => list.split(',').map(|s| s.trim().to_string()).collect(),
                (None, Some(list)) => list.clone(),
                (None, None) => ["z2", "z3", "z6", "s3"].iter().map(|s| s.to_string()).collect(),
            };
            let groups: Vec<FiniteGroup> =
                names.iter().map(|n| load_group(n)).collect::<Result<_, _>>()?;
            let report = check_axioms(&axiom_suite(), &groups);
            if json {
                println!("{}", serde_json::to_string(&report).map_err(|e| e.to_string())?);
            } else {
                for r in &report.results {
                    if r.passed {
                        println!("PASS {} @ {}", r.axiom, r.group);
                    } else {
                        println!("FAIL {} @ {} witness {:?}", r.axiom, r.group, r.witness);
                    }
                }
                let failed = report.failures().len();
                println!(
                    "{} identities x {} groups: {} failures",
                    report.results.len() / groups.len().max(1),
                    groups.len(),
                    failed
                );
            }
            Ok(if report.all_passed() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
