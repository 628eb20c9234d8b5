use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use earring_core::hall::{self, GradingSequence};
use earring_core::hilton_milnor;
use earring_core::registry::{CechRequest, Registry, VerifyRequest};
use earring_core::SphereGroupTable;

#[derive(Parser, Debug)]
#[command(name = "earring", version, about = "Cech homotopy groups of shrinking wedges of spheres")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Sphere-group table: `seed`, `empty`, or a file merged onto the seed values.
    #[arg(long, env = "EARRING_TABLE", default_value = "seed", global = true)]
    table: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cech group pi_n of a shrinking wedge.
    Cech {
        /// `earring` or `wedge`.
        route: String,
        #[arg(short)]
        n: u32,
        /// Sphere dimension of the earring E_m.
        #[arg(short, conflicts_with = "grading")]
        m: Option<u32>,
        /// Grading `r1,...,rp;t` (sphere dimensions r_i + 1).
        #[arg(long, allow_hyphen_values = true)]
        grading: Option<String>,
    },
    /// List a Hall set by weight.
    Hall {
        #[arg(short)]
        k: u32,
        #[arg(short = 'J')]
        max_weight: usize,
        #[arg(long)]
        grading: Option<String>,
    },
    /// Number of Hall words of weight j on k letters.
    Count {
        #[arg(short)]
        k: u32,
        #[arg(short)]
        j: u32,
    },
    /// Hilton-Milnor decomposition of pi_n of a finite wedge.
    Hm {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short, conflicts_with = "grading")]
        m: Option<u32>,
        #[arg(long)]
        grading: Option<String>,
    },
    /// Run one of the verification checks.
    Verify {
        /// `coherence`, `edge`, `theta` or `stabilize`.
        check: String,
        /// Use seeded random cases.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(short, long = "m")]
        m: Option<u32>,
        #[arg(short, long = "n")]
        n: Option<u32>,
        #[arg(long, default_value_t = 6)]
        levels: u32,
        /// Element description file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Offset s in pi_{m+s}(E_m).
        #[arg(short, default_value_t = 1)]
        s: u32,
        #[arg(long, default_value = "3..6", value_parser = parse_range)]
        m_range: RangeInclusive<u32>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: u32 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let hi: u32 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Check,
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

fn load_table(spec: &str) -> Result<SphereGroupTable, String> {
    match spec {
        "seed" => Ok(SphereGroupTable::seed()),
        "empty" => Ok(SphereGroupTable::empty()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read table {path}: {e}"))?;
            let mut table = SphereGroupTable::seed();
            table.merge_text(&text).map_err(|e| format!("{path}: {e}"))?;
            Ok(table)
        }
    }
}

fn grading_from(m: Option<u32>, grading: Option<&str>) -> Result<GradingSequence, String> {
    match (m, grading) {
        (_, Some(g)) => g.parse().map_err(|e: hall::HallError| e.to_string()),
        (Some(m), None) => GradingSequence::earring(m).map_err(|e| e.to_string()),
        (None, None) => Err("give -m <m> or --grading <spec>".into()),
    }
}

fn emit(format: Format, text: &[String], value: serde_json::Value) {
    match format {
        Format::Text => {
            for line in text {
                println!("{line}");
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let table = load_table(&cli.table)?;
    let registry = Registry::default();
    match cli.command {
        Command::Cech { route, n, m, grading } => {
            let grading = grading_from(m, grading.as_deref())?;
            let decomposer = registry.decomposer(&route).map_err(|e| e.to_string())?;
            let out = decomposer
                .decompose(&CechRequest { n, grading }, &table)
                .map_err(|e| e.to_string())?;
            let mut lines = Vec::new();
            if out.trivial_by_connectivity {
                lines.push("0 (trivial by connectivity)".to_string());
            } else {
                lines.push(out.expr.render_text());
                lines.extend(out.notes.iter().map(|l| format!("  {l}")));
                for (sn, sq) in out.expr.unresolved() {
                    lines.push(format!("  unresolved: pi_{sn}(S^{sq})"));
                }
            }
            emit(
                cli.format,
                &lines,
                json!({
                    "route": route,
                    "n": n,
                    "text": out.expr.render_text(),
                    "expr": out.expr.to_machine(),
                    "notes": out.notes,
                    "trivial_by_connectivity": out.trivial_by_connectivity,
                }),
            );
        }
        Command::Hall { k, max_weight, grading } => {
            let grading = grading_from(Some(2), grading.as_deref())?;
            let set = hall::generate(k, max_weight).map_err(|e| e.to_string())?;
            let mut lines = vec!["weight\theight\tword".to_string()];
            let mut rows = Vec::new();
            for w in set.iter() {
                let h = w.height(&grading);
                lines.push(format!("{}\t{h}\t{w}", w.weight()));
                rows.push(json!({"word": w, "weight": w.weight(), "height": h}));
            }
            emit(cli.format, &lines, json!({"k": k, "max_weight": max_weight, "words": rows}));
        }
        Command::Count { k, j } => {
            let c = hall::necklace_count(k, j);
            emit(cli.format, &[c.to_string()], json!({"k": k, "j": j, "count": c.to_string()}));
        }
        Command::Hm { n, k, m, grading } => {
            let grading = grading_from(m, grading.as_deref())?;
            let d = hilton_milnor::decompose_wedge(n, k, &grading, &table).map_err(|e| e.to_string())?;
            let lines = if d.trivial_by_connectivity {
                vec!["0 (trivial by connectivity)".to_string()]
            } else {
                d.summands
                    .iter()
                    .map(|s| format!("{}\th={}\tpi_{n}(S^{}) = {}", s.word, s.height, s.height + 1, s.group))
                    .collect()
            };
            let value = serde_json::to_value(&d).expect("serializable");
            emit(cli.format, &lines, value);
        }
        Command::Verify {
            check,
            random,
            seed,
            trials,
            m,
            n,
            levels,
            file,
            s,
            m_range,
        } => {
            let verifier = registry.verifier(&check).map_err(|e| e.to_string())?;
            let element = match &file {
                Some(path) => Some(
                    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?,
                ),
                None => None,
            };
            if check != "stabilize" && element.is_none() && !random {
                return Err(Failure::Usage(format!("verify {check} needs --file <path> or --random")));
            }
            let request = VerifyRequest {
                seed,
                trials,
                m,
                n,
                levels,
                element,
                offset: s,
                m_range,
            };
            let report = verifier.verify(&request, &table).map_err(|e| e.to_string())?;
            emit(
                cli.format,
                &report.lines,
                json!({"check": check, "passed": report.passed, "lines": report.lines}),
            );
            if !report.passed {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
