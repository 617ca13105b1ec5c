use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use snlib::analysis::{cost_table, CostColumns, CostModel};
use snlib::bench::{
    best_cutoff, cutoff_sweep, fill_keys, ilp_bench, run_bench, write_csv, write_sweep_csv, BenchConfig, TimerKind,
};
use snlib::codegen::{default_name, emit_sorter, emit_staged_insertion, ComparatorStyle, EmitTarget, InsertionStage};
use snlib::generators::{
    best_network, bubble_network, fallback_network, insertion_network, parallel_blocks_network, Objective,
};
use snlib::network::{parse_network, ComparatorNetwork, Direction, LayeredNetwork, Network};
use snlib::sort::{Algorithm, BaseCase, SortStats};

#[derive(Parser)]
#[command(name = "snlib", version, about = "Sorting networks and network-based small sorts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated network in the text format.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        /// Channel count (all kinds except blocks).
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "size")]
        objective: ObjectiveArg,
        /// Comparator count (blocks).
        #[arg(long)]
        total: Option<usize>,
        /// Comparators per block (blocks).
        #[arg(long)]
        m: Option<usize>,
        /// Pack comparators into parallel layers instead of one per line.
        #[arg(long)]
        compress: bool,
    },
    /// Print the expected Quicksort cost table as CSV.
    Analyze {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "classic")]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "both")]
        costs: CostsArg,
        /// Write to this file instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print straight-line sorter source.
    Emit {
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value = "cmov")]
        style: ComparatorStyle,
        #[arg(long, default_value = "c")]
        target: EmitTarget,
        /// Network file to emit instead of the catalog network for `n`.
        #[arg(long, conflicts_with = "stage")]
        network: Option<PathBuf>,
        /// Emit a staged insertion sort (C only): loops, unrolled, oblivious,
        /// oblivious_unrolled, layered.
        #[arg(long)]
        stage: Option<InsertionStage>,
        /// Function name; defaults to sort<n>_<style>.
        #[arg(long)]
        name: Option<String>,
    },
    /// Sort a seeded random array and report counters.
    Sort {
        /// qsort-hybrid, insertion, insertion-unrolled, selection, bubble, shell, net-free, net-branch.
        #[arg(long)]
        algo: String,
        /// Quicksort cutoff.
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Quicksort base case: none, insertion, insertion-unrolled, net-branch, net-free.
        #[arg(long, default_value = "none")]
        base: BaseCase,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print comparison, exchange and partition-stage counts.
        #[arg(long)]
        stats: bool,
        /// Print the sorted keys.
        #[arg(long)]
        print: bool,
    },
    /// Run a timing suite and write CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Timed repetitions per point; suite default when omitted.
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value = "ns")]
        timer: TimerKind,
        /// Input length for the cutoff suite.
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
    /// Verify that a network file sorts, and print its size and depth.
    Check {
        network: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Insertion,
    Bubble,
    Best,
    Blocks,
    Fallback,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Size,
    Depth,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Classic,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostsArg {
    Comparisons,
    Swaps,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    SmallN,
    Ilp,
    Cutoff,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed downstream pipe (e.g. `| head`) is not a failure.
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Gen { kind, n, objective, total, m, compress } => {
            let net = generate(kind, n, objective, total, m, compress)?;
            write!(out, "{net}")?;
        }
        Command::Analyze { max_n, model, costs, csv } => {
            let (c, s) = match model {
                ModelArg::Classic => (CostModel::classic_comparisons(), CostModel::classic_swaps()),
                ModelArg::Hybrid => (CostModel::hybrid_comparisons(), CostModel::hybrid_swaps()),
            };
            let columns = match costs {
                CostsArg::Comparisons => CostColumns::Comparisons,
                CostsArg::Swaps => CostColumns::Swaps,
                CostsArg::Both => CostColumns::Both,
            };
            let text = cost_table(max_n, &c, &s).to_csv(columns);
            match csv {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Emit { n, style, target, network, stage, name } => {
            let text = if let Some(stage) = stage {
                if target != EmitTarget::CSource {
                    bail!("staged insertion sorts are emitted as C only");
                }
                emit_staged_insertion(n, stage)?
            } else {
                let net = match network {
                    Some(path) => {
                        let net = read_network(&path)?;
                        if net.channels() != n {
                            bail!("{} has {} channels, not {n}", path.display(), net.channels());
                        }
                        net
                    }
                    None => best_network(n, Objective::Size)?.network.clone(),
                };
                let name = name.unwrap_or_else(|| default_name(n, style));
                emit_sorter(&net, style, target, &name)?
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Sort { algo, m, base, len, seed, stats, print } => {
            let alg = if algo == "qsort-hybrid" {
                Algorithm::Quicksort { cutoff: m, base }
            } else {
                algo.parse()?
            };
            let mut keys = vec![0i64; len];
            fill_keys(&mut ChaCha8Rng::seed_from_u64(seed), &mut keys);
            let mut counters = SortStats::default();
            alg.sort(&mut keys, seed, &mut counters)?;
            if !keys.is_sorted() {
                bail!("{alg} produced unsorted output");
            }
            if print {
                let text: Vec<String> = keys.iter().map(i64::to_string).collect();
                writeln!(out, "{}", text.join(" "))?;
            }
            if stats {
                writeln!(out, "{counters}")?;
            }
        }
        Command::Bench { suite, reps, seed, csv, timer, n } => bench(suite, reps, seed, &csv, timer, n, &mut out)?,
        Command::Check { network } => {
            let net = read_network(&network)?;
            let sorts = net.is_sorting_network(Direction::Ascending)?;
            writeln!(
                out,
                "channels={} size={} depth={} sorting={sorts}",
                net.channels(),
                net.size(),
                net.depth()
            )?;
            if !sorts {
                bail!("{} is not a sorting network", network.display());
            }
        }
    }
    Ok(())
}

fn generate(
    kind: GenKind,
    n: Option<usize>,
    objective: ObjectiveArg,
    total: Option<usize>,
    m: Option<usize>,
    compress: bool,
) -> Result<LayeredNetwork> {
    let need_n = || n.context("--n is required for this kind");
    let sequence: ComparatorNetwork = match kind {
        GenKind::Insertion => insertion_network(need_n()?)?,
        GenKind::Bubble => bubble_network(need_n()?)?,
        GenKind::Blocks => parallel_blocks_network(
            total.context("--total is required for blocks")?,
            m.context("--m is required for blocks")?,
        )?,
        GenKind::Best => {
            let objective = match objective {
                ObjectiveArg::Size => Objective::Size,
                ObjectiveArg::Depth => Objective::Depth,
            };
            return Ok(best_network(need_n()?, objective)?.network.clone());
        }
        GenKind::Fallback => return Ok(fallback_network(need_n()?)?),
    };
    Ok(if compress { sequence.to_layers() } else { LayeredNetwork::from_sequence(&sequence) })
}

fn read_network(path: &PathBuf) -> Result<LayeredNetwork> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_network(&text).with_context(|| format!("parsing {}", path.display()))
}

fn bench(
    suite: Suite,
    reps: Option<usize>,
    seed: u64,
    csv: &PathBuf,
    timer: TimerKind,
    n: usize,
    out: &mut impl Write,
) -> Result<()> {
    match suite {
        Suite::SmallN => {
            let mut config = BenchConfig::small_n(seed);
            config.algorithms.insert(1, Algorithm::NetworkBranching);
            config.timer = timer;
            if let Some(reps) = reps {
                config.repetitions = reps;
                config.warmup = config.warmup.min(reps);
            }
            let records = run_bench(&config)?;
            write_csv(&records, csv)?;
            writeln!(out, "wrote {} records to {}", records.len(), csv.display())?;
        }
        Suite::Ilp => {
            let records = ilp_bench(1000, &(1..=9).collect::<Vec<_>>(), reps.unwrap_or(100_000), seed, timer)?;
            for r in &records {
                writeln!(out, "m={} mean={:.1}{}", r.n, r.mean, r.unit)?;
            }
            write_csv(&records, csv)?;
        }
        Suite::Cutoff => {
            let bases = [BaseCase::InsertionSort, BaseCase::UnrolledInsertion, BaseCase::NetworkBranchFree];
            let ms: Vec<usize> = (2..=16).collect();
            let rows = cutoff_sweep(n, &ms, &bases, reps.unwrap_or(300), 10, seed, timer)?;
            for base in bases {
                let best = best_cutoff(&rows, base).expect("base was swept");
                writeln!(out, "{base}: best M={} reduction={:.1}%", best.cutoff, best.reduction_pct)?;
            }
            write_sweep_csv(&rows, csv)?;
        }
    }
    Ok(())
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        cause.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || matches!(cause.downcast_ref::<snlib::Error>(), Some(snlib::Error::Io(io)) if io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}
