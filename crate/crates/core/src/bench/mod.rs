//! Timing harness.
//!
//! Inputs are generated from seeded streams before each timed region and
//! every output is checked for sortedness after it, so neither is timed. A
//! single timed region only ever runs one algorithm.
//!
//! Sorting 16 keys takes a few tens of nanoseconds, which is close to the
//! resolution and overhead of the clock, so [`run_bench`] times batches of
//! sorts and reports per-sort means; the standard deviation is taken over
//! batch means.

mod csvio;
mod timer;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codegen::cswap_at;
use crate::error::{Error, Result};
use crate::generators::parallel_blocks_network;
use crate::network::Network;
use crate::sort::{
    insertion_sort_unrolled, network_sort_smalln, network_sort_smalln_branching, quicksort_hybrid,
    reference_sort, Algorithm, BaseCase, NoStats, SortStats,
};

pub use csvio::{read_csv, write_csv, write_sweep_csv};
pub use timer::TimerKind;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub lengths: Vec<usize>,
    /// Timed sorts per (algorithm, length).
    pub repetitions: usize,
    /// Untimed sorts run first per (algorithm, length).
    pub warmup: usize,
    pub seed: u64,
    pub timer: TimerKind,
    /// Sorts per timed region.
    pub batch: usize,
}

impl BenchConfig {
    /// Insertion sort against the branch-free network sorter for `n = 2..=14`.
    pub fn small_n(seed: u64) -> Self {
        BenchConfig {
            algorithms: vec![Algorithm::InsertionUnrolled, Algorithm::NetworkBranchFree],
            lengths: (2..=14).collect(),
            repetitions: 1_000_000,
            warmup: 10_000,
            seed,
            timer: TimerKind::MonotonicNs,
            batch: 1000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be at least 1".into()));
        }
        if self.batch == 0 {
            return Err(Error::Config("batch must be at least 1".into()));
        }
        if self.lengths.is_empty() {
            return Err(Error::Config("no input lengths given".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms given".into()));
        }
        if !self.timer.is_available() {
            return Err(Error::Config(format!("timer `{}` is not available on this platform", self.timer)));
        }
        for alg in &self.algorithms {
            if let Some(max) = alg.max_len() {
                if let Some(&n) = self.lengths.iter().find(|&&n| n > max) {
                    return Err(Error::Config(format!("{alg} supports lengths up to {max}, got {n}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub n: usize,
    pub mean: f64,
    pub stddev: f64,
    pub repetitions: usize,
    pub unit: String,
}

/// Seed of the input stream for length `n`; independent of the algorithm.
pub fn stream_seed(seed: u64, n: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Fills `buf` with keys drawn from `rng`.
pub fn fill_keys(rng: &mut ChaCha8Rng, buf: &mut [i64]) {
    for k in buf {
        *k = rng.random();
    }
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    for &alg in &config.algorithms {
        for &n in &config.lengths {
            records.push(bench_one(alg, n, config)?);
        }
    }
    Ok(records)
}

fn bench_one(alg: Algorithm, n: usize, config: &BenchConfig) -> Result<BenchRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(config.seed, n));
    let mut buf = vec![0i64; config.batch * n];
    let mut timer = config.timer.start()?;

    let mut left = config.warmup;
    while left > 0 {
        let count = left.min(config.batch);
        let chunk = &mut buf[..count * n];
        fill_keys(&mut rng, chunk);
        sort_batch(alg, chunk, n, config.seed)?;
        left -= count;
    }

    let mut samples = Vec::new();
    let mut total = 0.0;
    let mut left = config.repetitions;
    while left > 0 {
        let count = left.min(config.batch);
        let chunk = &mut buf[..count * n];
        fill_keys(&mut rng, chunk);
        timer.reset();
        sort_batch(alg, chunk, n, config.seed)?;
        let elapsed = timer.elapsed();
        check_sorted(alg, chunk, n)?;
        total += elapsed;
        samples.push(elapsed / count as f64);
        left -= count;
    }
    Ok(BenchRecord {
        algorithm: alg.to_string(),
        n,
        mean: total / config.repetitions as f64,
        stddev: stddev(&samples),
        repetitions: config.repetitions,
        unit: config.timer.unit().to_string(),
    })
}

/// Sorts each length-`n` chunk of `buf`, dispatching once outside the loop.
#[inline(never)]
fn sort_batch(alg: Algorithm, buf: &mut [i64], n: usize, seed: u64) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    let chunks = buf.chunks_exact_mut(n);
    match alg {
        Algorithm::Reference(kind) => chunks.for_each(|a| reference_sort(kind, a, &mut NoStats)),
        Algorithm::InsertionUnrolled => chunks.for_each(|a| insertion_sort_unrolled(a, &mut NoStats)),
        Algorithm::NetworkBranchFree => {
            for a in chunks {
                network_sort_smalln(a, &mut NoStats)?;
            }
        }
        Algorithm::NetworkBranching => {
            for a in chunks {
                network_sort_smalln_branching(a, &mut NoStats)?;
            }
        }
        Algorithm::Quicksort { cutoff, base } => {
            chunks.for_each(|a| quicksort_hybrid(a, cutoff, base, seed, &mut NoStats))
        }
    }
    Ok(())
}

fn check_sorted(alg: Algorithm, buf: &[i64], n: usize) -> Result<()> {
    if n > 0 && !buf.chunks_exact(n).all(|a| a.is_sorted()) {
        return Err(Error::Unsorted { algorithm: alg.to_string(), n });
    }
    Ok(())
}

fn stddev(samples: &[f64]) -> f64 {
    if samples.len() < 2 {
        return 0.0;
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (samples.len() - 1) as f64;
    var.sqrt()
}

/// Times branch-free execution of `parallel_blocks_network(total, m)` for
/// each `m`, one record per `m` with `n = m` and algorithm `blocks-<total>`.
pub fn ilp_bench(
    total: usize,
    m_values: &[usize],
    repetitions: usize,
    seed: u64,
    timer: TimerKind,
) -> Result<Vec<BenchRecord>> {
    if m_values.is_empty() {
        return Err(Error::Config("no block widths given".into()));
    }
    if repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    let nets = m_values
        .iter()
        .map(|&m| {
            let net = parallel_blocks_network(total, m)?;
            Ok(net.comparators().map(|c| (c.lo(), c.hi())).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut clock = timer.start()?;
    let mut samples = vec![Vec::with_capacity(repetitions); m_values.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keys = Vec::new();
    // round-robin over m so slow drift of the machine hits every width alike
    for _ in 0..repetitions {
        for (i, (&m, net)) in m_values.iter().zip(&nets).enumerate() {
            keys.resize(2 * m, 0);
            fill_keys(&mut rng, &mut keys);
            clock.reset();
            run_comparators(&mut keys, net);
            samples[i].push(clock.elapsed());
            std::hint::black_box(&keys);
        }
    }
    Ok(m_values
        .iter()
        .zip(samples)
        .map(|(&m, s)| BenchRecord {
            algorithm: format!("blocks-{total}"),
            n: m,
            mean: s.iter().sum::<f64>() / s.len() as f64,
            stddev: stddev(&s),
            repetitions,
            unit: timer.unit().to_string(),
        })
        .collect())
}

#[inline(never)]
fn run_comparators(keys: &mut [i64], net: &[(usize, usize)]) {
    for &(lo, hi) in net {
        cswap_at(keys, lo, hi);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub base: BaseCase,
    pub cutoff: usize,
    pub record: BenchRecord,
    /// Runtime reduction against the `M = 2` row of the same base, in percent.
    pub reduction_pct: f64,
}

/// Times hybrid Quicksort on length-`n` inputs for every (base, M) pair.
///
/// Each repetition draws one input and sorts a copy of it under every
/// configuration, so all configurations see identical inputs. `m_values`
/// must lie in `2..=16` and include 2, the baseline at which no base case
/// does any work beyond what a comparison would.
pub fn cutoff_sweep(
    n: usize,
    m_values: &[usize],
    bases: &[BaseCase],
    repetitions: usize,
    warmup: usize,
    seed: u64,
    timer: TimerKind,
) -> Result<Vec<SweepRow>> {
    if let Some(m) = m_values.iter().find(|m| !(2..=16).contains(*m)) {
        return Err(Error::Config(format!("cutoff {m} outside 2..=16")));
    }
    if !m_values.contains(&2) {
        return Err(Error::Config("cutoff values must include the baseline 2".into()));
    }
    if bases.is_empty() || bases.contains(&BaseCase::None) {
        return Err(Error::Config("bases must be non-empty and exclude `none`".into()));
    }
    if repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    let configs: Vec<(BaseCase, usize)> =
        bases.iter().flat_map(|&b| m_values.iter().map(move |&m| (b, m))).collect();
    let mut samples = vec![Vec::with_capacity(repetitions); configs.len()];
    let mut clock = timer.start()?;
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, n));
    let mut input = vec![0i64; n];
    let mut work = vec![0i64; n];
    for rep in 0..warmup + repetitions {
        fill_keys(&mut rng, &mut input);
        for k in 0..configs.len() {
            // rotate the starting configuration to spread cache and drift effects
            let idx = (k + rep) % configs.len();
            let (base, cutoff) = configs[idx];
            work.copy_from_slice(&input);
            clock.reset();
            quicksort_hybrid(&mut work, cutoff, base, seed, &mut NoStats);
            let elapsed = clock.elapsed();
            if !work.is_sorted() {
                return Err(Error::Unsorted {
                    algorithm: Algorithm::Quicksort { cutoff, base }.to_string(),
                    n,
                });
            }
            if rep >= warmup {
                samples[idx].push(elapsed);
            }
        }
    }
    let records: Vec<(BaseCase, usize, BenchRecord)> = configs
        .iter()
        .zip(samples)
        .map(|(&(base, cutoff), s)| {
            let record = BenchRecord {
                algorithm: Algorithm::Quicksort { cutoff, base }.to_string(),
                n,
                mean: s.iter().sum::<f64>() / s.len() as f64,
                stddev: stddev(&s),
                repetitions,
                unit: timer.unit().to_string(),
            };
            (base, cutoff, record)
        })
        .collect();
    Ok(records
        .iter()
        .map(|(base, cutoff, record)| {
            let baseline = records
                .iter()
                .find(|(b, m, _)| b == base && *m == 2)
                .map(|(_, _, r)| r.mean)
                .expect("baseline present");
            SweepRow {
                base: *base,
                cutoff: *cutoff,
                record: record.clone(),
                reduction_pct: 100.0 * (baseline - record.mean) / baseline,
            }
        })
        .collect())
}

/// The sweep row of `base` with the lowest mean.
pub fn best_cutoff(rows: &[SweepRow], base: BaseCase) -> Option<&SweepRow> {
    rows.iter()
        .filter(|r| r.base == base)
        .min_by(|a, b| a.record.mean.total_cmp(&b.record.mean))
}

/// Deterministic stand-in for hardware branch counters.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchProxy {
    pub algorithm: String,
    pub n: usize,
    /// Data-dependent branches evaluated per sort.
    pub branches: f64,
    /// Of those, the ones that led to an exchange.
    pub taken: f64,
}

/// Counts guarded compare-exchanges over `repetitions` seeded inputs.
/// Branch-free network sorts evaluate no data-dependent branches at all.
pub fn branch_proxy(alg: Algorithm, n: usize, repetitions: usize, seed: u64) -> Result<BranchProxy> {
    if repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, n));
    let mut buf = vec![0i64; n];
    let mut stats = SortStats::default();
    for _ in 0..repetitions {
        fill_keys(&mut rng, &mut buf);
        alg.sort(&mut buf, seed, &mut stats)?;
    }
    let per = |x: u64| x as f64 / repetitions as f64;
    let (branches, taken) = match alg {
        Algorithm::NetworkBranchFree => (0.0, 0.0),
        _ => (per(stats.comparisons), per(stats.exchanges)),
    };
    Ok(BranchProxy { algorithm: alg.to_string(), n, branches, taken })
}
