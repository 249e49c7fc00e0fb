use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use satlab::cache::Cache;
use satlab::constructors::{derive_sporadics_with, SearchMemo};
use satlab::enumerate::SearchOptions;
use satlab::formulas::{sat_book, sat_generalized_book_b3p2, sat_k1_path, sat_k2_path, sat_kt_minus_p4, FormulaValue};
use satlab::saturation::Status;
use satlab::verify::{suite, Verifier, SUITES};
use satlab::{graph6, is_saturated, Error, PatternSpec};

#[derive(Parser)]
#[command(name = "satlab", version, about = "Saturation numbers of K_s v P_k by exhaustive search")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Do not read or write the result cache ($SATLAB_CACHE).
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute sat(n, pattern) and list the minimal saturated classes.
    Sat {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: PatternSpec,
        /// Skip classes failing the structural necessary conditions.
        #[arg(long)]
        prune: bool,
        /// Also write the result as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the saturated classes with exactly the given edge count.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: PatternSpec,
        #[arg(long)]
        edges: usize,
        /// Write the graph6 list into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test one graph for saturation.
    Check {
        #[arg(long)]
        g6: String,
        #[arg(long)]
        pattern: PatternSpec,
        /// Print the verdict as JSON with a witness for every non-edge.
        #[arg(long)]
        certificates: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = suite_names())]
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the comparison of earlier bounds with the closed forms.
    Table {
        #[arg(long)]
        tsv: bool,
    },
    /// Sporadic minimal graphs.
    Sporadics {
        #[command(subcommand)]
        action: SporadicsAction,
    },
}

#[derive(Subcommand)]
enum SporadicsAction {
    /// Search, classify and store the sporadic minimal graphs.
    Derive {
        #[arg(long, default_value = "sporadics")]
        store: PathBuf,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(SUITES.iter().map(|s| s.name))
}

enum Failure {
    Lib(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn write_json(path: &Path, value: serde_json::Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(&value).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

fn cache(cli: &Cli) -> Option<Cache> {
    (!cli.no_cache).then(Cache::from_env)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Sat { n, pattern, prune, json } => {
            let options = SearchOptions { use_pruning: *prune, sequential: false };
            let result = match cache(cli) {
                Some(c) => c.find_saturation_number(*n, pattern, options)?.0,
                None => satlab::enumerate::find_saturation_number_with(*n, pattern, options)?,
            };
            println!("sat={}", result.sat_number);
            println!(
                "classes={} scanned={} pruned={}",
                result.minimal_graphs.len(),
                result.scanned,
                result.pruned
            );
            for key in &result.minimal_graphs {
                println!("{key}");
            }
            if let Some(path) = json {
                write_json(path, serde_json::to_value(&result).map_err(|e| Error::Io(e.to_string()))?)?;
            }
        }
        Command::Enumerate { n, pattern, edges, out } => {
            let keys = match cache(cli) {
                Some(c) => c.enumerate_minimal_saturated(*n, pattern, *edges)?.0,
                None => satlab::enumerate_minimal_saturated(*n, pattern, *edges)?,
            };
            println!("classes={}", keys.len());
            for key in &keys {
                println!("{key}");
            }
            if let Some(dir) = out {
                fs::create_dir_all(dir).map_err(Error::from)?;
                let body: String = keys.iter().map(|k| format!("{k}\n")).collect();
                fs::write(dir.join(format!("n{n}-{pattern}-m{edges}.g6")), body).map_err(Error::from)?;
            }
        }
        Command::Check { g6, pattern, certificates } => {
            let g = graph6::decode(g6)?;
            let verdict = is_saturated(&g, pattern, *certificates)?;
            if *certificates {
                let text = serde_json::to_string_pretty(&verdict.to_json(&g, pattern)).expect("json value");
                println!("{text}");
            } else {
                println!("{}", verdict.status.as_str());
                match verdict.status {
                    Status::ContainsCopy => {
                        let w = verdict.copy_witness.expect("copy witness");
                        println!("center={:?} path={:?}", w.center, w.path);
                    }
                    Status::MissesNonedge => {
                        let (u, v) = verdict.failing_nonedge.expect("failing non-edge");
                        println!("failing_nonedge={u}-{v}");
                    }
                    Status::Saturated => {}
                }
            }
        }
        Command::Verify { suite: name, n_max, json } => {
            let suite = suite(name).expect("validated by clap");
            let report = Verifier { cache: cache(cli) }.run(suite, *n_max)?;
            print!("{}", report.to_text());
            if let Some(path) = json {
                fs::write(path, report.to_json()).map_err(Error::from)?;
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Table { tsv } => print_table(*tsv)?,
        Command::Sporadics { action: SporadicsAction::Derive { store, n_max } } => {
            let mut memo = match cache(cli) {
                Some(c) => SearchMemo::with_search(move |n, p| {
                    Ok(c.find_saturation_number(n, p, SearchOptions::default())?.0)
                }),
                None => SearchMemo::default(),
            };
            let derivation = derive_sporadics_with(&mut memo, &[3, 4, 5], *n_max, Some(store))?;
            for c in &derivation.searches {
                println!(
                    "{} sat={} join-form={} sporadic={}",
                    c.query,
                    c.result.sat_number,
                    c.join_count(),
                    c.sporadics().count()
                );
            }
            for e in &derivation.entries {
                println!("{} {} n={} edges={} {}", e.id, e.pattern, e.order, e.edges, e.key);
            }
            println!("wrote {}", store.join("index.json").display());
        }
    }
    Ok(())
}

/// Smallest `n` in `0..limit` where the closed form is proven.
fn threshold(f: impl Fn(usize) -> Result<FormulaValue, Error>, limit: usize) -> Result<Option<usize>, Error> {
    for n in 0..limit {
        if f(n)?.valid() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Smallest `n` of the given parity where the closed form is proven.
fn parity_threshold(f: impl Fn(usize) -> Result<FormulaValue, Error>, parity: usize) -> Result<usize, Error> {
    let n = threshold(|n| if n % 2 == parity { f(n) } else { Ok(FormulaValue { value: None, source: "" }) }, 4096)?;
    Ok(n.expect("closed form valid somewhere below 4096"))
}

fn print_table(tsv: bool) -> Result<(), Error> {
    let at_least = |n: Option<usize>| n.map_or("never".to_string(), |n| format!("n>={n}"));
    let cone3 = "floor((3n-3)/2)";
    let double3 = "floor((5n-8)/2)";
    let cone4 = |even: usize, odd: usize| format!("3n/2 for even n>={even}; (3n-3)/2 for odd n>={odd}");
    let rows = [
        [
            "book bounds".to_string(),
            format!("{cone3}, {}", at_least(threshold(|n| sat_book(n, 2), 4096)?)),
            format!("{double3}, {}", at_least(threshold(|n| Ok(sat_generalized_book_b3p2(n)), 4096)?)),
            cone4(parity_threshold(|n| sat_kt_minus_p4(n, 5), 0)?, parity_threshold(|n| sat_kt_minus_p4(n, 5), 1)?),
        ],
        [
            "join formulas".to_string(),
            format!("{cone3}, {}", at_least(threshold(|n| sat_k1_path(n, 3), 4096)?)),
            format!("{double3}, {}", at_least(threshold(|n| sat_k2_path(n, 3), 4096)?)),
            cone4(parity_threshold(|n| sat_k1_path(n, 4), 0)?, parity_threshold(|n| sat_k1_path(n, 4), 1)?),
        ],
    ];
    let header = ["source", "K1vP3", "K2vP3", "K1vP4"];
    if tsv {
        println!("{}", header.join("\t"));
        for row in &rows {
            println!("{}", row.join("\t"));
        }
    } else {
        let widths: Vec<usize> = (0..4)
            .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            println!("{}", padded.join("  ").trim_end());
        };
        line(header.to_vec());
        for row in &rows {
            line(row.iter().map(String::as_str).collect());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("satlab: cannot start {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("satlab: {e}");
            ExitCode::from(if e.is_capacity() { 3 } else { 2 })
        }
    }
}
