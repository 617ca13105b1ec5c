//! Instrumented sorting: textbook small-n sorts, catalog-network sorters, and
//! Quicksort with a pluggable base case.
//!
//! Every sorter is generic over a [`Counter`]. [`SortStats`] records
//! comparisons, exchanges and partition stages; [`NoStats`] compiles to
//! nothing, so the timed path and the counted path are the same code.

mod quicksort;
mod reference;
mod unrolled;

use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use quicksort::{quicksort_hybrid, BaseCase};
pub use reference::{insertion_sort, insertion_sort_unrolled, reference_sort, ReferenceKind};

/// Longest input the unrolled catalog sorters accept.
pub const SMALLN_MAX: usize = 16;

pub trait Counter {
    fn compare(&mut self, count: u64);
    fn exchange(&mut self, count: u64);
    fn stage(&mut self);
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SortStats {
    pub comparisons: u64,
    pub exchanges: u64,
    pub partition_stages: u64,
}

impl Counter for SortStats {
    #[inline(always)]
    fn compare(&mut self, count: u64) {
        self.comparisons += count;
    }

    #[inline(always)]
    fn exchange(&mut self, count: u64) {
        self.exchanges += count;
    }

    #[inline(always)]
    fn stage(&mut self) {
        self.partition_stages += 1;
    }
}

impl AddAssign for SortStats {
    fn add_assign(&mut self, rhs: Self) {
        self.comparisons += rhs.comparisons;
        self.exchanges += rhs.exchanges;
        self.partition_stages += rhs.partition_stages;
    }
}

impl fmt::Display for SortStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "comparisons={} exchanges={} stages={}",
            self.comparisons, self.exchanges, self.partition_stages
        )
    }
}

/// A counter that records nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoStats;

impl Counter for NoStats {
    #[inline(always)]
    fn compare(&mut self, _: u64) {}

    #[inline(always)]
    fn exchange(&mut self, _: u64) {}

    #[inline(always)]
    fn stage(&mut self) {}
}

/// Sorts `data` with the size-objective catalog network for its exact
/// length, using branch-free compare-exchanges. Adds the network size to the
/// comparison count regardless of the input.
pub fn network_sort_smalln<C: Counter>(data: &mut [i64], stats: &mut C) -> Result<()> {
    check_smalln(data.len())?;
    unrolled::net_free(data, stats);
    Ok(())
}

/// As [`network_sort_smalln`], with each comparator compiled as a branch.
pub fn network_sort_smalln_branching<C: Counter>(data: &mut [i64], stats: &mut C) -> Result<()> {
    check_smalln(data.len())?;
    unrolled::net_branch(data, stats);
    Ok(())
}

fn check_smalln(len: usize) -> Result<()> {
    if len > SMALLN_MAX {
        return Err(Error::Capacity {
            what: "network sort length",
            requested: len,
            cap: SMALLN_MAX,
        });
    }
    Ok(())
}

/// Catalog size used by the unrolled sorter of length `len <= 16`.
pub fn smalln_size(len: usize) -> Result<usize> {
    check_smalln(len)?;
    Ok(unrolled::UNROLLED_SIZE[len])
}

/// Every sorter reachable from the command line and the benchmark harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Reference(ReferenceKind),
    InsertionUnrolled,
    NetworkBranchFree,
    NetworkBranching,
    Quicksort { cutoff: usize, base: BaseCase },
}

impl Algorithm {
    /// Sorts `data`; `seed` drives pivot selection and is ignored elsewhere.
    pub fn sort<C: Counter>(self, data: &mut [i64], seed: u64, stats: &mut C) -> Result<()> {
        match self {
            Algorithm::Reference(kind) => reference_sort(kind, data, stats),
            Algorithm::InsertionUnrolled => insertion_sort_unrolled(data, stats),
            Algorithm::NetworkBranchFree => return network_sort_smalln(data, stats),
            Algorithm::NetworkBranching => return network_sort_smalln_branching(data, stats),
            Algorithm::Quicksort { cutoff, base } => quicksort_hybrid(data, cutoff, base, seed, stats),
        }
        Ok(())
    }

    /// Longest input accepted, if bounded.
    pub fn max_len(self) -> Option<usize> {
        matches!(self, Algorithm::NetworkBranchFree | Algorithm::NetworkBranching).then_some(SMALLN_MAX)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Reference(kind) => f.write_str(kind.tag()),
            Algorithm::InsertionUnrolled => f.write_str("insertion-unrolled"),
            Algorithm::NetworkBranchFree => f.write_str("net-free"),
            Algorithm::NetworkBranching => f.write_str("net-branch"),
            Algorithm::Quicksort { cutoff, base } => write!(f, "qsort-hybrid/{base}/m{cutoff}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("qsort-hybrid/") {
            let (base, cutoff) = rest
                .rsplit_once("/m")
                .ok_or_else(|| Error::Config(format!("`{s}`: expected qsort-hybrid/<base>/m<cutoff>")))?;
            let cutoff = cutoff
                .parse()
                .map_err(|_| Error::Config(format!("`{s}`: bad cutoff `{cutoff}`")))?;
            return Ok(Algorithm::Quicksort { cutoff, base: base.parse()? });
        }
        match s {
            "insertion-unrolled" => Ok(Algorithm::InsertionUnrolled),
            "net-free" => Ok(Algorithm::NetworkBranchFree),
            "net-branch" => Ok(Algorithm::NetworkBranching),
            _ => s.parse().map(Algorithm::Reference),
        }
    }
}
