//! Command-line front end. Every subcommand is a thin veneer over the
//! library: parse input, call one library entry point, serialize.
//!
//! Exit codes: 0 success, 1 parse or input error, 2 cap exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Serialize;

use argsem::af::{ArgumentationFramework, Extension, Semantics};
use argsem::lp::{parse_program, DEFAULT_STABLE_CAP};
use argsem::{hypo, oracle, repr, transfer, Error};

#[derive(Parser)]
#[command(name = "argsem", version, about = "Argumentation semantics and their transfer to logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutputMode {
    Json,
    Text,
}

impl std::str::FromStr for OutputMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputMode::Json),
            "text" => Ok(OutputMode::Text),
            other => Err(format!("unknown output mode `{other}` (expected json or text)")),
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Input file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Output format.
    #[arg(long, default_value = "json")]
    output: OutputMode,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the extensions of an argumentation framework (APX input).
    AfSolve {
        #[arg(long, value_parser = parse_semantics)]
        sem: Semantics,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Transfer an argumentation semantics to a logic program (LP input).
    LpTransfer {
        #[arg(long, value_parser = parse_semantics)]
        sem: Semantics,
        /// Repair inconsistent outcomes via maximal consistent rule subsets.
        #[arg(long)]
        repair: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Enumerate the stable models of a logic program (LP input).
    LpStable {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Represent a framework as a logic program, one rule per argument.
    ToLp {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit the canonical program: one rule per attack plus isolated facts.
    ToCanonical {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check whether a program represents a framework and recover it.
    FromLp {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify that extensions survive the trip through the representing
    /// program.
    Roundtrip {
        #[arg(long, value_parser = parse_semantics)]
        sem: Semantics,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build the hypothesis framework of a program and transfer a
    /// semantics through it.
    Hypo {
        #[arg(long, value_parser = parse_semantics)]
        sem: Semantics,
        /// Consider only subset-maximal hypotheses of each extension.
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        maximal_only: bool,
        /// Maximum language size for the 2^n hypothesis sweep.
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Differential testing of solvers against definitional oracles.
    OracleCheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// Output format.
        #[arg(long, default_value = "json")]
        output: OutputMode,
    },
}

fn parse_semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn env_cap(default: usize) -> usize {
    std::env::var("ARGSEM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("failed to read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("failed to read `{path}`: {e}")))
    }
}

fn ext_labels(e: &Extension) -> Vec<String> {
    e.iter().map(|a| a.to_string()).collect()
}

fn atom_names(m: &argsem::lp::AtomSet) -> Vec<String> {
    m.iter().map(|a| a.to_string()).collect()
}

#[derive(Serialize)]
struct ExtensionsOut {
    semantics: String,
    extensions: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct OutcomeOut {
    rule_in: Vec<String>,
    in_as: Vec<String>,
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    derived: Option<Vec<String>>,
}

#[derive(Serialize)]
struct TransferOut {
    semantics: String,
    outcomes: Vec<OutcomeOut>,
}

#[derive(Serialize)]
struct RepairOut {
    semantics: String,
    repair: bool,
    derived: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct StableOut {
    stable_models: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct FrameworkOut {
    args: Vec<String>,
    attacks: Vec<(String, String)>,
}

impl FrameworkOut {
    fn from_af(af: &ArgumentationFramework) -> Self {
        FrameworkOut {
            args: af.args().iter().map(|a| a.to_string()).collect(),
            attacks: af
                .attacks()
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct FromLpOut {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    framework: Option<FrameworkOut>,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct RoundtripOut {
    semantics: String,
    equal: bool,
    af_extensions: Vec<Vec<String>>,
    transferred: Vec<Vec<String>>,
    inconsistent_outcomes: usize,
    missing_in_transfer: Vec<Vec<String>>,
    extra_in_transfer: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct HypoExtensionOut {
    hypotheses: Vec<Vec<String>>,
    atom_sets: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct HypoOut {
    semantics: String,
    maximal_only: bool,
    arguments: Vec<Vec<String>>,
    extensions: Vec<HypoExtensionOut>,
}

fn render_extensions(sem: Semantics, exts: &[Extension], mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => {
            let out = ExtensionsOut {
                semantics: sem.to_string(),
                extensions: exts.iter().map(ext_labels).collect(),
            };
            serde_json::to_string(&out).unwrap()
        }
        OutputMode::Text => {
            let mut lines = vec![format!("{sem}: {} extension(s)", exts.len())];
            for e in exts {
                lines.push(format!("  {{{}}}", ext_labels(e).join(", ")));
            }
            lines.join("\n")
        }
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::AfSolve { sem, common } => {
            let af = ArgumentationFramework::parse_apx(&read_input(&common.input)?)?;
            Ok(render_extensions(sem, &af.extensions(sem), common.output))
        }
        Command::LpTransfer { sem, repair, common } => {
            let p = parse_program(&read_input(&common.input)?)?;
            if repair {
                let derived = transfer::derived_atoms_maximal(&p, sem);
                match common.output {
                    OutputMode::Json => {
                        let out = RepairOut {
                            semantics: sem.to_string(),
                            repair: true,
                            derived: derived.iter().map(atom_names).collect(),
                        };
                        Ok(serde_json::to_string(&out).unwrap())
                    }
                    OutputMode::Text => Ok(derived
                        .iter()
                        .map(|m| format!("{{{}}}", atom_names(m).join(", ")))
                        .collect::<Vec<_>>()
                        .join("\n")),
                }
            } else {
                let outcomes = transfer::derived_atoms(&p, sem);
                match common.output {
                    OutputMode::Json => {
                        let out = TransferOut {
                            semantics: sem.to_string(),
                            outcomes: outcomes
                                .iter()
                                .map(|o| OutcomeOut {
                                    rule_in: o.rule_in.iter().map(|r| r.to_string()).collect(),
                                    in_as: atom_names(&o.in_as),
                                    consistent: o.consistent,
                                    derived: o.derived.as_ref().map(atom_names),
                                })
                                .collect(),
                        };
                        Ok(serde_json::to_string(&out).unwrap())
                    }
                    OutputMode::Text => Ok(outcomes
                        .iter()
                        .map(|o| {
                            let rules: Vec<String> =
                                o.rule_in.iter().map(|r| r.to_string()).collect();
                            match &o.derived {
                                Some(m) => format!(
                                    "rules {{{}}} derive {{{}}}",
                                    rules.join(", "),
                                    atom_names(m).join(", ")
                                ),
                                None => format!(
                                    "rules {{{}}} inconsistent (in_as {{{}}})",
                                    rules.join(", "),
                                    atom_names(&o.in_as).join(", ")
                                ),
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("\n")),
                }
            }
        }
        Command::LpStable { common } => {
            let p = parse_program(&read_input(&common.input)?)?;
            let (models, warning) = p.stable_models_checked(env_cap(DEFAULT_STABLE_CAP));
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            match common.output {
                OutputMode::Json => {
                    let out = StableOut {
                        stable_models: models.iter().map(atom_names).collect(),
                    };
                    Ok(serde_json::to_string(&out).unwrap())
                }
                OutputMode::Text => Ok(models
                    .iter()
                    .map(|m| format!("{{{}}}", atom_names(m).join(", ")))
                    .collect::<Vec<_>>()
                    .join("\n")),
            }
        }
        Command::ToLp { common } => {
            let af = ArgumentationFramework::parse_apx(&read_input(&common.input)?)?;
            Ok(repr::af_to_program(&af)?.serialize().trim_end().to_string())
        }
        Command::ToCanonical { common } => {
            let af = ArgumentationFramework::parse_apx(&read_input(&common.input)?)?;
            Ok(repr::canonical_program(&af)?.serialize().trim_end().to_string())
        }
        Command::FromLp { common } => {
            let p = parse_program(&read_input(&common.input)?)?;
            let report = repr::program_represents_af(&p);
            match common.output {
                OutputMode::Json => {
                    let out = FromLpOut {
                        valid: report.valid,
                        framework: report.framework.as_ref().map(FrameworkOut::from_af),
                        violations: report.violations,
                    };
                    Ok(serde_json::to_string(&out).unwrap())
                }
                OutputMode::Text => {
                    if report.valid {
                        Ok(format!(
                            "valid\n{}",
                            report.framework.map(|f| f.to_apx()).unwrap_or_default()
                        ))
                    } else {
                        Ok(format!("invalid\n{}", report.violations.join("\n")))
                    }
                }
            }
        }
        Command::Roundtrip { sem, common } => {
            let af = ArgumentationFramework::parse_apx(&read_input(&common.input)?)?;
            let report = repr::roundtrip_check(&af, sem)?;
            match common.output {
                OutputMode::Json => {
                    let out = RoundtripOut {
                        semantics: sem.to_string(),
                        equal: report.equal,
                        af_extensions: report.af_extensions.iter().map(ext_labels).collect(),
                        transferred: report.transferred.iter().map(ext_labels).collect(),
                        inconsistent_outcomes: report.inconsistent_outcomes,
                        missing_in_transfer: report
                            .missing_in_transfer
                            .iter()
                            .map(ext_labels)
                            .collect(),
                        extra_in_transfer: report
                            .extra_in_transfer
                            .iter()
                            .map(ext_labels)
                            .collect(),
                    };
                    Ok(serde_json::to_string(&out).unwrap())
                }
                OutputMode::Text => Ok(if report.equal {
                    format!("{sem}: extension sets coincide")
                } else {
                    format!("{sem}: MISMATCH ({report:?})")
                }),
            }
        }
        Command::Hypo {
            sem,
            maximal_only,
            cap,
            common,
        } => {
            let p = parse_program(&read_input(&common.input)?)?;
            let cap = cap.unwrap_or_else(|| env_cap(hypo::DEFAULT_HYPOTHESIS_CAP));
            let haf = hypo::build_hypothesis_af(&p, cap)?;
            let characterizations = hypo::hypothesis_transfer(&p, sem, maximal_only, cap)?;
            match common.output {
                OutputMode::Json => {
                    let out = HypoOut {
                        semantics: sem.to_string(),
                        maximal_only,
                        arguments: haf
                            .hypotheses()
                            .iter()
                            .map(|h| atom_names(h.assumed_false()))
                            .collect(),
                        extensions: characterizations
                            .iter()
                            .map(|c| HypoExtensionOut {
                                hypotheses: c
                                    .extension
                                    .iter()
                                    .map(|h| atom_names(h.assumed_false()))
                                    .collect(),
                                atom_sets: c.atom_sets.iter().map(atom_names).collect(),
                            })
                            .collect(),
                    };
                    Ok(serde_json::to_string(&out).unwrap())
                }
                OutputMode::Text => {
                    let mut lines = Vec::new();
                    for (i, c) in characterizations.iter().enumerate() {
                        let hyps: Vec<String> =
                            c.extension.iter().map(|h| h.to_string()).collect();
                        lines.push(format!("extension {}: {}", i + 1, hyps.join(" ")));
                        for m in &c.atom_sets {
                            lines.push(format!("  characterizes {{{}}}", atom_names(m).join(", ")));
                        }
                    }
                    Ok(lines.join("\n"))
                }
            }
        }
        Command::OracleCheck {
            seed,
            count,
            max_size,
            output,
        } => {
            if max_size > 8 {
                return Err(Error::CapExceeded {
                    size: max_size,
                    cap: 8,
                });
            }
            let report = oracle::oracle_check(seed, count, max_size);
            match output {
                OutputMode::Json => Ok(serde_json::to_string(&report).unwrap()),
                OutputMode::Text => Ok(format!(
                    "semantics {}/{} roundtrip {}/{} proposition {}/{} stable-agreement {}/{}{}",
                    report.semantics_checks.passed,
                    report.semantics_checks.passed + report.semantics_checks.failed,
                    report.roundtrip_checks.passed,
                    report.roundtrip_checks.passed + report.roundtrip_checks.failed,
                    report.proposition_checks.passed,
                    report.proposition_checks.passed + report.proposition_checks.failed,
                    report.stable_agreement.passed,
                    report.stable_agreement.passed + report.stable_agreement.failed,
                    if report.all_passed { "" } else { "\nFAILURES" },
                )),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
