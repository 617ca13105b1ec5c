//! Expected comparison and swap counts of Quicksort with an optional
//! small-subproblem base case.
//!
//! The cost of sorting a random permutation of length `n` obeys
//!
//! ```text
//! T(n) = a*n + b + (2/n) * sum_{i<n} T(i)    for n > M
//! T(n) = g(n)                                 for n <= M
//! ```
//!
//! where `M` is the base-case cutoff and `g` the expected cost of the base
//! case. [`Recurrence`] evaluates this directly; [`closed_form_cost`] uses the
//! explicit solution with `t(n) = a*n + b`.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::network::Network;

/// Average comparisons of the size-optimal networks for n = 1..=14.
pub const HYBRID_BASE_COMPARISONS: [f64; 14] =
    [0.0, 1.0, 3.0, 5.0, 9.0, 12.0, 16.0, 19.0, 25.0, 29.0, 35.0, 39.0, 45.0, 51.0];

/// Average swaps of the same networks for n = 1..=14, as published (one decimal).
pub const HYBRID_BASE_SWAPS: [f64; 14] =
    [0.0, 0.5, 1.5, 2.7, 4.8, 6.6, 8.6, 10.6, 13.0, 11.1, 19.4, 22.4, 20.0, 26.5];

/// Cutoff used with the hybrid base costs.
pub const HYBRID_CUTOFF: usize = 14;

/// Largest channel count for exhaustive permutation enumeration (10! runs).
pub const EXHAUSTIVE_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct CostModel {
    pub a: f64,
    pub b: f64,
    pub cutoff: usize,
    g: Vec<f64>,
}

impl CostModel {
    /// `g` holds the base cost for sizes `0..=cutoff`.
    pub fn new(a: f64, b: f64, cutoff: usize, g: Vec<f64>) -> Result<Self> {
        if g.len() != cutoff + 1 {
            return Err(Error::Domain(format!(
                "base-cost table must cover 0..={cutoff}, got {} values",
                g.len()
            )));
        }
        if g[0] != 0.0 {
            return Err(Error::Domain("base cost of the empty input must be 0".into()));
        }
        if g.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::Domain("base costs must be non-negative".into()));
        }
        Ok(CostModel { a, b, cutoff, g })
    }

    pub fn classic_comparisons() -> Self {
        CostModel::new(1.0, -1.0, 0, vec![0.0]).unwrap()
    }

    pub fn classic_swaps() -> Self {
        CostModel::new(1.0 / 6.0, 2.0 / 3.0, 0, vec![0.0]).unwrap()
    }

    pub fn hybrid_comparisons() -> Self {
        Self::with_table(1.0, -1.0, &HYBRID_BASE_COMPARISONS)
    }

    pub fn hybrid_swaps() -> Self {
        Self::with_table(1.0 / 6.0, 2.0 / 3.0, &HYBRID_BASE_SWAPS)
    }

    fn with_table(a: f64, b: f64, table: &[f64]) -> Self {
        let g = std::iter::once(0.0).chain(table.iter().copied()).collect();
        CostModel::new(a, b, table.len(), g).unwrap()
    }

    pub fn base_cost(&self, n: usize) -> Option<f64> {
        self.g.get(n).copied()
    }

    /// The toll function `t(n) = a*n + b`.
    pub fn toll(&self, n: usize) -> f64 {
        self.a * n as f64 + self.b
    }
}

/// Memoized evaluation of the recurrence.
#[derive(Clone, Debug)]
pub struct Recurrence<'a> {
    model: &'a CostModel,
    costs: Vec<f64>,
    prefix_sum: f64,
}

impl<'a> Recurrence<'a> {
    pub fn new(model: &'a CostModel) -> Self {
        Recurrence {
            model,
            costs: Vec::new(),
            prefix_sum: 0.0,
        }
    }

    pub fn cost(&mut self, n: usize) -> f64 {
        while self.costs.len() <= n {
            let k = self.costs.len();
            let value = match self.model.base_cost(k) {
                Some(g) => g,
                None => self.model.toll(k) + 2.0 * self.prefix_sum / k as f64,
            };
            self.costs.push(value);
            self.prefix_sum += value;
        }
        self.costs[n]
    }

    /// Costs for `0..=n`.
    pub fn costs_through(&mut self, n: usize) -> &[f64] {
        self.cost(n);
        &self.costs[..=n]
    }
}

pub fn recurrence_cost(model: &CostModel, n: usize) -> f64 {
    Recurrence::new(model).cost(n)
}

/// Explicit solution, valid for `n > M`:
///
/// `T(n) = 2(n+1) * sum_{M+2<=k<=n} dt(k)/(k+1) + (n+1)/(M+2) * (t(M+1) + T(M+1)) - t(n)`
/// with `dt(k) = t(k) - t(k-1)`.
pub fn closed_form_cost(model: &CostModel, n: usize) -> Result<f64> {
    let m = model.cutoff;
    if n <= m {
        return Err(Error::Domain(format!(
            "closed form needs n > M (n={n}, M={m})"
        )));
    }
    let anchor = recurrence_cost(model, m + 1);
    Ok(closed_form_with_anchor(model, n, anchor))
}

fn closed_form_with_anchor(model: &CostModel, n: usize, anchor: f64) -> f64 {
    let m = model.cutoff;
    let sum: f64 = (m + 2..=n)
        .map(|k| (model.toll(k) - model.toll(k - 1)) / (k + 1) as f64)
        .sum();
    let n1 = (n + 1) as f64;
    2.0 * n1 * sum + n1 / (m + 2) as f64 * (model.toll(m + 1) + anchor) - model.toll(n)
}

/// Closed-form costs for every `n` in `M+1..=max_n`, sharing one running sum.
pub fn closed_form_costs(model: &CostModel, max_n: usize) -> Vec<(usize, f64)> {
    let m = model.cutoff;
    let anchor = recurrence_cost(model, m + 1);
    let factor = (model.toll(m + 1) + anchor) / (m + 2) as f64;
    let mut sum = 0.0;
    let mut out = Vec::new();
    for n in m + 1..=max_n {
        if n >= m + 2 {
            sum += (model.toll(n) - model.toll(n - 1)) / (n + 1) as f64;
        }
        let n1 = (n + 1) as f64;
        out.push((n, 2.0 * n1 * sum + n1 * factor - model.toll(n)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leading {
    /// `2 n ln(n+1)`
    Comparisons,
    /// `(1/3) n ln(n+1)`
    Swaps,
}

impl Leading {
    pub fn term(self, n: usize) -> f64 {
        let x = n as f64;
        let coeff = match self {
            Leading::Comparisons => 2.0,
            Leading::Swaps => 1.0 / 3.0,
        };
        coeff * x * (x + 1.0).ln()
    }
}

/// `(T(n) - L(n)) / n`: the linear coefficient once the `n ln n` term is removed.
pub fn asymptotic_constant(model: &CostModel, n: usize, leading: Leading) -> Result<f64> {
    let cost = closed_form_cost(model, n)?;
    Ok((cost - leading.term(n)) / n as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Every permutation of `0..n`.
    Exhaustive,
    /// `count` uniformly random permutations from a seeded generator.
    Sample { count: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseCost {
    pub comparisons: f64,
    pub swaps: f64,
}

/// Average comparator evaluations and exchanges of `net` (ascending) over
/// random permutations.
pub fn empirical_g<N: Network>(net: &N, mode: Enumeration) -> Result<BaseCost> {
    let n = net.channels();
    let pairs: Vec<(usize, usize)> = net.comparators().map(|c| (c.lo(), c.hi())).collect();
    let mut keys: Vec<u32> = (0..n as u32).collect();
    let mut work = keys.clone();
    let mut runs = 0u64;
    let mut exchanges = 0u64;

    let mut run = |perm: &[u32]| {
        work.copy_from_slice(perm);
        for &(lo, hi) in &pairs {
            if work[hi] < work[lo] {
                work.swap(lo, hi);
                exchanges += 1;
            }
        }
        runs += 1;
    };

    match mode {
        Enumeration::Exhaustive => {
            if n > EXHAUSTIVE_CAP {
                return Err(Error::Capacity {
                    what: "exhaustive permutation enumeration",
                    requested: n,
                    cap: EXHAUSTIVE_CAP,
                });
            }
            loop {
                run(&keys);
                if !next_permutation(&mut keys) {
                    break;
                }
            }
        }
        Enumeration::Sample { count, seed } => {
            if count == 0 {
                return Err(Error::Domain("sample count must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                keys.shuffle(&mut rng);
                run(&keys);
            }
        }
    }

    Ok(BaseCost {
        comparisons: pairs.len() as f64,
        swaps: exchanges as f64 / runs as f64,
    })
}

/// Rearranges into the next lexicographic permutation; false after the last.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|x| v[i] < *x).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostRow {
    pub n: usize,
    pub comparisons: f64,
    pub swaps: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CostTable {
    pub rows: Vec<CostRow>,
}

pub fn cost_table(max_n: usize, comparisons: &CostModel, swaps: &CostModel) -> CostTable {
    if max_n == 0 {
        return CostTable::default();
    }
    let mut c = Recurrence::new(comparisons);
    let mut s = Recurrence::new(swaps);
    let cs = c.costs_through(max_n);
    let ss = s.costs_through(max_n);
    CostTable {
        rows: (1..=max_n)
            .map(|n| CostRow {
                n,
                comparisons: cs[n],
                swaps: ss[n],
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostColumns {
    Comparisons,
    Swaps,
    Both,
}

impl CostTable {
    /// CSV with header `n,comparisons,swaps`; deselected columns are left empty.
    pub fn to_csv(&self, columns: CostColumns) -> String {
        let mut out = String::from("n,comparisons,swaps\n");
        for row in &self.rows {
            let c = match columns {
                CostColumns::Swaps => String::new(),
                _ => row.comparisons.to_string(),
            };
            let s = match columns {
                CostColumns::Comparisons => String::new(),
                _ => row.swaps.to_string(),
            };
            writeln!(out, "{},{c},{s}", row.n).unwrap();
        }
        out
    }
}
