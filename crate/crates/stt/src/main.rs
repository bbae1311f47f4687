use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use stt::experiment;
use stt::format::{
    parse_frequencies, parse_sequence, parse_stt, parse_tree, write_sequence, write_stt, write_tree,
};
use stt::gen::{sequence, tree, Shape, Workload};
use stt::suites::{self, Suite};
use stt_core::fix::{fix, fix_improved};
use stt_core::opt::{brute_opt, opt_kcut, ptas, static_cost, FrequencyMap, BRUTE_FORCE_CAP};
use stt_core::rotdist::{rotation_bound, transform};
use stt_core::{CostLedger, NodeId, SearchTree, SplayTT, UnrootedTree};

/// Search trees on trees: construction, rotation distance, and SplayTT.
///
/// Exit status is 0 on success, 1 when a checked property fails, and 2 on
/// usage or input errors.
#[derive(Parser)]
#[command(name = "stt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tree file.
    GenTree {
        #[arg(long, value_enum, default_value = "random")]
        shape: Shape,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Generate a search sequence over nodes `0..n`.
    GenSeq {
        #[arg(long, value_enum, default_value = "uniform")]
        dist: Dist,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Zipf exponent.
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// The node repeated by `--dist single`.
        #[arg(long, default_value_t = 0)]
        node: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Build a static search tree minimizing the weighted depth.
    Opt {
        tree: PathBuf,
        /// Frequency file (`node count` lines).
        #[arg(long, conflicts_with = "seq")]
        freq: Option<PathBuf>,
        /// Derive frequencies from a sequence file instead.
        #[arg(long)]
        seq: Option<PathBuf>,
        #[command(flatten)]
        method: OptMethod,
        #[command(flatten)]
        out: Out,
    },
    /// Repair a search tree into a k-cut tree.
    Fix {
        tree: PathBuf,
        stt: PathBuf,
        #[arg(long)]
        k: usize,
        /// Use the basic repair (k >= 3) instead of the improved one.
        #[arg(long)]
        basic: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Print a rotation script turning one k-cut tree into another.
    Transform {
        tree: PathBuf,
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Serve a sequence with SplayTT.
    Splay {
        tree: PathBuf,
        seq: PathBuf,
        /// Starting search tree; must be Steiner-closed. Defaults to the
        /// tree rooted at node 0.
        #[arg(long)]
        init: Option<PathBuf>,
        /// Write the cost ledger as CSV.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Emit one CSV row per search instead of the final tree.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Run a randomized property suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest tree size.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare SplayTT with the best static tree on random instances.
    Experiment {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dist {
    Uniform,
    Zipf,
    Sequential,
    Single,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OptMethod {
    /// Optimal k-cut tree.
    #[arg(long)]
    k: Option<usize>,
    /// Approximation scheme with parameter t (optimal 2t-cut tree).
    #[arg(long)]
    t: Option<usize>,
    /// Exact optimum by exhaustive search (small trees only).
    #[arg(long)]
    brute: bool,
    /// Best tree obtained by rooting the space at a single node.
    #[arg(long)]
    rooted: bool,
}

#[derive(Args)]
struct Out {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Out {
    fn write(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// Finished without usage errors; `false` means a property failed.
type Passed = bool;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_tree(path: &Path) -> Result<UnrootedTree> {
    parse_tree(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_stt<'s>(path: &Path, space: &'s UnrootedTree) -> Result<SearchTree<'s>> {
    parse_stt(&read(path)?, space).with_context(|| format!("parsing {}", path.display()))
}

fn load_seq(path: &Path, n: usize) -> Result<Vec<NodeId>> {
    parse_sequence(&read(path)?, n).with_context(|| format!("parsing {}", path.display()))
}

fn run(command: Command) -> Result<Passed> {
    match command {
        Command::GenTree {
            shape,
            n,
            seed,
            out,
        } => {
            out.write(&write_tree(&tree(shape, n, seed)?))?;
        }
        Command::GenSeq {
            dist,
            n,
            m,
            s,
            node,
            seed,
            out,
        } => {
            let workload = match dist {
                Dist::Uniform => Workload::Uniform,
                Dist::Zipf => Workload::Zipf { s },
                Dist::Sequential => Workload::Sequential,
                Dist::Single => Workload::Single { node },
            };
            out.write(&write_sequence(
                &sequence(workload, n, m, seed).map_err(anyhow::Error::msg)?,
            ))?;
        }
        Command::Opt {
            tree,
            freq,
            seq,
            method,
            out,
        } => {
            let space = load_tree(&tree)?;
            let n = space.len();
            let p = match (freq, seq) {
                (Some(f), _) => parse_frequencies(&read(&f)?, n)
                    .with_context(|| format!("parsing {}", f.display()))?,
                (_, Some(s)) => FrequencyMap::from_sequence(n, &load_seq(&s, n)?)?,
                (None, None) => bail!("one of --freq or --seq is required"),
            };
            let (best, cost) = if let Some(k) = method.k {
                opt_kcut(&space, k, &p)?
            } else if let Some(t) = method.t {
                ptas(&space, t, &p)?
            } else if method.brute {
                brute_opt(&space, &p, BRUTE_FORCE_CAP)?
            } else {
                best_rooted(&space, &p)?
            };
            out.write(&format!("{}# cost={cost}\n", write_stt(&best)))?;
        }
        Command::Fix {
            tree,
            stt,
            k,
            basic,
            out,
        } => {
            let space = load_tree(&tree)?;
            let t = load_stt(&stt, &space)?;
            let fixed = if basic {
                fix(&t, k)?
            } else {
                fix_improved(&t, k)?
            };
            out.write(&write_stt(&fixed))?;
        }
        Command::Transform {
            tree,
            src,
            dst,
            k,
            out,
        } => {
            let space = load_tree(&tree)?;
            let a = load_stt(&src, &space)?;
            let b = load_stt(&dst, &space)?;
            let script = transform(&a, &b, k)?;
            let bound = rotation_bound(space.len(), k);
            let mut text: String = script.nodes().iter().map(|v| format!("{v}\n")).collect();
            text.push_str(&format!("rotations={} bound={bound}\n", script.len()));
            out.write(&text)?;
            return Ok(script.len() <= bound);
        }
        Command::Splay {
            tree,
            seq,
            init,
            ledger,
            trace,
            out,
        } => {
            let space = load_tree(&tree)?;
            let seq = load_seq(&seq, space.len())?;
            let start = match init {
                Some(path) => load_stt(&path, &space)?,
                None => SearchTree::rooted_at(&space, NodeId::new(0))?,
            };
            let mut splay = SplayTT::new(start)?;
            let mut rows = String::from("search,node,depth,rotations,zigzig,zigzag,zig\n");
            for (i, &x) in seq.iter().enumerate() {
                let s = splay.search(x)?;
                rows.push_str(&format!(
                    "{i},{x},{},{},{},{},{}\n",
                    s.depth, s.rotations, s.zigzig, s.zigzag, s.zig
                ));
            }
            if let Some(path) = ledger {
                let csv = format!("{}\n{}\n", CostLedger::CSV_HEADER, splay.ledger());
                fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
            }
            out.write(&if trace { rows } else { write_stt(splay.tree()) })?;
        }
        Command::Verify {
            suite,
            n,
            trials,
            seed,
        } => {
            let report = suites::run(suite, n, trials, seed);
            for (trial, message) in &report.failures {
                println!("trial {trial}: {message}");
            }
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            println!(
                "{verdict} {suite:?} trials={} failures={}",
                report.trials,
                report.failures.len()
            );
            return Ok(report.passed());
        }
        Command::Experiment {
            n,
            m,
            trials,
            seed,
            out,
        } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let rows = experiment::run(n, m, trials, seed).map_err(anyhow::Error::msg)?;
            out.write(&experiment::to_csv(&rows))?;
            return Ok(rows.iter().all(|r| r.violations == 0));
        }
    }
    Ok(true)
}

/// Smallest-cost tree among the `n` rootings of the space, ties to the
/// smallest root.
fn best_rooted<'s>(space: &'s UnrootedTree, p: &FrequencyMap) -> Result<(SearchTree<'s>, u64)> {
    let mut best: Option<(SearchTree<'s>, u64)> = None;
    for r in space.nodes() {
        let t = SearchTree::rooted_at(space, r)?;
        let c = static_cost(&t, p);
        if best.as_ref().is_none_or(|b| c < b.1) {
            best = Some((t, c));
        }
    }
    Ok(best.expect("trees are non-empty"))
}
