use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nilary_core::corpus::{Caps, Corpus, CorpusConfig};
use nilary_core::hunt::{hunt, Query, Target};
use nilary_core::ideal::{enumerate_ideals_bruteforce, ideal_generated_by, BRUTEFORCE_MAX_ORDER};
use nilary_core::theorems::run_selected;
use nilary_core::{parse_ring_spec_with, Classifier, Exhaustive, IdealKind, Ring};

mod render;

const PREDICATE_HELP: &str = "\
Predicate abbreviations used in text tables:
  cP   completely_prime           P    prime
  cSP  completely_semiprime       SP   semiprime
  cN   completely_nilary          N    nilary
  pN   p_nilary                   RP   right_primary
  LP   left_primary               pRP  p_right_primary
  pLP  p_left_primary             cRP  completely_right_primary
  cLP  completely_left_primary    wN   weakly_nilary
  wpN  weakly_p_nilary            wNr  weakly_nilary_right
  wNl  weakly_nilary_left
Cells read Y (holds), n (fails) or - (does not apply).

Ring specs: Zn:<n> | zmul:<n> | M:<k>:<spec> | T:<k>:<spec> | dsum(<spec>,<spec>)
            | quot(<spec>,gen(<e1>[,<e2>...])) | file:<path>

Exit codes: 0 success, 1 hunt found nothing or a theorem case failed,
2 usage or configuration error.
Environment: NILARY_MAX_ORDER sets the default ring size cap.";

#[derive(Parser)]
#[command(name = "nilary", version, about = "Classify ideals of finite rings by nilary-type predicates")]
#[command(after_help = PREDICATE_HELP)]
struct Cli {
    /// Largest ring order any spec may build (overrides NILARY_MAX_ORDER).
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every predicate for each two-sided ideal, or for one generated ideal.
    Classify {
        spec: String,
        /// Generators of the ideal to report on; pass the flag with no value for the zero ideal.
        #[arg(long, num_args = 0..=1, default_missing_value = "", value_name = "E1,E2,...")]
        ideal: Option<String>,
    },
    /// List the ideal lattice of a ring.
    Ideals {
        spec: String,
        #[arg(long, default_value = "two-sided")]
        kind: IdealKind,
        /// Cross-check against subset enumeration (rings of order at most 16).
        #[arg(long)]
        oracle: bool,
    },
    /// Check the implication cases over a corpus.
    Verify {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Run only this case; repeatable.
        #[arg(long = "case", value_name = "ID")]
        cases: Vec<String>,
    },
    /// Search a corpus for (ring, ideal) pairs matching a boolean query.
    Hunt {
        query: String,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Inspect only the zero ideal of each ring, or every two-sided ideal.
        #[arg(long, default_value = "any", value_parser = ["zero", "any"])]
        target: String,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Use the builtin corpus (the default when no corpus file is given).
    #[arg(long, conflicts_with = "corpus")]
    builtin: bool,
    /// JSON corpus: a list of ring specs, or {"rings": [...], "max_order": n, ...}.
    #[arg(long, value_name = "FILE")]
    corpus: Option<PathBuf>,
}

/// Failures that map to exit code 1 rather than 2.
struct Negative;

fn caps(cli_cap: Option<usize>) -> Result<Caps> {
    let mut caps = Caps::from_env()?;
    if let Some(n) = cli_cap {
        if n == 0 {
            bail!("--max-order must be positive");
        }
        caps.max_order = n;
    }
    Ok(caps)
}

fn load_corpus(args: &CorpusArgs, caps: Caps) -> Result<Corpus> {
    let config = match &args.corpus {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading corpus {}", path.display()))?;
            CorpusConfig::from_json(&text, caps).with_context(|| format!("corpus {}", path.display()))?
        }
        None => CorpusConfig::builtin(caps),
    };
    Ok(config.build()?)
}

fn parse_elements(text: &str, r: &Ring) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let e: usize = s.parse().with_context(|| format!("bad element {s:?}"))?;
            if e >= r.order() {
                bail!("element {e} out of range for a ring of order {}", r.order());
            }
            Ok(e)
        })
        .collect()
}

fn classify(spec: &str, ideal: Option<&str>, caps: Caps, json: bool) -> Result<String> {
    let ring = parse_ring_spec_with(spec, caps.max_order)?;
    let cx = Classifier::with_caps(&ring, caps.lattice);
    let reports = match ideal {
        Some(gens) => {
            let gens = parse_elements(gens, &ring)?;
            vec![cx.report(&ideal_generated_by(&ring, gens, IdealKind::TwoSided))?]
        }
        None => cx.full_report()?,
    };
    Ok(if json {
        if ideal.is_some() {
            serde_json::to_string_pretty(&reports[0])?
        } else {
            serde_json::to_string_pretty(&reports)?
        }
    } else {
        render::classify_table(&ring, &reports)
    })
}

fn ideals(spec: &str, kind: IdealKind, oracle: bool, caps: Caps, json: bool) -> Result<(String, bool)> {
    let ring = parse_ring_spec_with(spec, caps.max_order)?;
    let cx = Classifier::with_caps(&ring, caps.lattice);
    let lattice = cx.lattice(kind)?;
    let check = if oracle && ring.order() <= BRUTEFORCE_MAX_ORDER {
        Some(enumerate_ideals_bruteforce(&ring, kind)?.masks() == lattice.masks())
    } else {
        if oracle {
            eprintln!("oracle skipped: order {} exceeds {BRUTEFORCE_MAX_ORDER}", ring.order());
        }
        None
    };
    let out =
        if json { render::ideals_json(&ring, lattice, check) } else { render::ideals_table(&ring, lattice, check) };
    Ok((out, check != Some(false)))
}

fn run(cli: Cli) -> Result<std::result::Result<String, (String, Negative)>> {
    let caps = caps(cli.max_order)?;
    match cli.command {
        Command::Classify { spec, ideal } => Ok(Ok(classify(&spec, ideal.as_deref(), caps, cli.json)?)),
        Command::Ideals { spec, kind, oracle } => {
            let (out, ok) = ideals(&spec, kind, oracle, caps, cli.json)?;
            Ok(if ok { Ok(out) } else { Err((out, Negative)) })
        }
        Command::Verify { corpus, cases } => {
            let corpus = load_corpus(&corpus, caps)?;
            let ids: Vec<&str> = cases.iter().map(String::as_str).collect();
            let report = run_selected(&corpus, &Exhaustive, &ids)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let pass = report.pass();
            let out = if cli.json {
                serde_json::to_string_pretty(&report.without_timing())?
            } else {
                render::harness_table(&report)
            };
            Ok(if pass { Ok(out) } else { Err((out, Negative)) })
        }
        Command::Hunt { query, corpus, target } => {
            let q: Query = query.parse().map_err(|e| anyhow::anyhow!("query {query:?}: {e}"))?;
            let target: Target = target.parse().map_err(anyhow::Error::msg)?;
            let corpus = load_corpus(&corpus, caps)?;
            let report = hunt(&corpus, &q, target, &Exhaustive)?;
            let found = !report.matches.is_empty();
            let out = if cli.json { serde_json::to_string_pretty(&report)? } else { render::hunt_lines(&report) };
            Ok(if found { Ok(out) } else { Err((out, Negative)) })
        }
    }
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(out: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{out}").and_then(|_| stdout.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Ok(out)) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Ok(Err((out, Negative))) => {
            emit(&out);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
