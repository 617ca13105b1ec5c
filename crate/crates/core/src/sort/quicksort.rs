//! Quicksort that hands subarrays of length `<= M` to a base case.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::reference::{insertion_sort, insertion_sort_unrolled};
use super::{unrolled, Counter, SMALLN_MAX};
use crate::codegen::cswap_at;
use crate::error::{Error, Result};
use crate::generators::fallback_network;
use crate::network::Network;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BaseCase {
    /// Partition all the way down; the cutoff is ignored.
    #[default]
    None,
    InsertionSort,
    UnrolledInsertion,
    NetworkBranching,
    NetworkBranchFree,
}

impl BaseCase {
    pub const ALL: [BaseCase; 5] = [
        BaseCase::None,
        BaseCase::InsertionSort,
        BaseCase::UnrolledInsertion,
        BaseCase::NetworkBranching,
        BaseCase::NetworkBranchFree,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BaseCase::None => "none",
            BaseCase::InsertionSort => "insertion",
            BaseCase::UnrolledInsertion => "insertion-unrolled",
            BaseCase::NetworkBranching => "net-branch",
            BaseCase::NetworkBranchFree => "net-free",
        }
    }
}

impl fmt::Display for BaseCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BaseCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaseCase::ALL
            .into_iter()
            .find(|b| b.tag() == s)
            .ok_or_else(|| Error::Config(format!("unknown base case `{s}`")))
    }
}

/// Sorts `data` ascending.
///
/// A subarray of length `m` is finished if `m <= 1`, handed to `base` if
/// `m <= cutoff`, and partitioned otherwise. Partitioning picks a uniformly
/// random pivot (from `seed`), moves it to the end, and scans left to right,
/// so one stage costs exactly `m - 1` comparisons. Exchanges count swaps of
/// two distinct positions.
///
/// Network base cases use the catalog for lengths up to 16 and a Batcher
/// network beyond that.
pub fn quicksort_hybrid<C: Counter>(data: &mut [i64], cutoff: usize, base: BaseCase, seed: u64, stats: &mut C) {
    let mut ctx = Context {
        cutoff: if base == BaseCase::None { 0 } else { cutoff },
        base,
        rng: ChaCha8Rng::seed_from_u64(seed),
        fallback: Vec::new(),
    };
    ctx.sort(data, stats);
}

struct Context {
    cutoff: usize,
    base: BaseCase,
    rng: ChaCha8Rng,
    /// Flattened Batcher networks by length, built on first use.
    fallback: Vec<Option<Vec<(usize, usize)>>>,
}

impl Context {
    fn sort<C: Counter>(&mut self, data: &mut [i64], c: &mut C) {
        let mut a = data;
        loop {
            let m = a.len();
            if m <= 1 {
                return;
            }
            if m <= self.cutoff {
                self.base_case(a, c);
                return;
            }
            let p = self.partition(a, c);
            let (left, right) = a.split_at_mut(p);
            let right = &mut right[1..];
            // recurse into the shorter side so the stack stays logarithmic
            if left.len() < right.len() {
                self.sort(left, c);
                a = right;
            } else {
                self.sort(right, c);
                a = left;
            }
        }
    }

    fn partition<C: Counter>(&mut self, a: &mut [i64], c: &mut C) -> usize {
        c.stage();
        let last = a.len() - 1;
        let k = self.rng.random_range(0..=last);
        if k != last {
            a.swap(k, last);
            c.exchange(1);
        }
        let pivot = a[last];
        let mut i = 0;
        for j in 0..last {
            c.compare(1);
            if a[j] < pivot {
                if i != j {
                    a.swap(i, j);
                    c.exchange(1);
                }
                i += 1;
            }
        }
        if i != last {
            a.swap(i, last);
            c.exchange(1);
        }
        i
    }

    fn base_case<C: Counter>(&mut self, a: &mut [i64], c: &mut C) {
        match self.base {
            BaseCase::None => unreachable!("cutoff is zero without a base case"),
            BaseCase::InsertionSort => insertion_sort(a, c),
            BaseCase::UnrolledInsertion => insertion_sort_unrolled(a, c),
            BaseCase::NetworkBranchFree if a.len() <= SMALLN_MAX => unrolled::net_free(a, c),
            BaseCase::NetworkBranching if a.len() <= SMALLN_MAX => unrolled::net_branch(a, c),
            BaseCase::NetworkBranchFree | BaseCase::NetworkBranching => {
                let branching = self.base == BaseCase::NetworkBranching;
                let net = self.fallback_for(a.len());
                c.compare(net.len() as u64);
                for &(lo, hi) in net {
                    if branching {
                        if a[hi] < a[lo] {
                            a.swap(lo, hi);
                            c.exchange(1);
                        }
                    } else {
                        c.exchange(u64::from(cswap_at(a, lo, hi)));
                    }
                }
            }
        }
    }

    fn fallback_for(&mut self, len: usize) -> &[(usize, usize)] {
        if self.fallback.len() <= len {
            self.fallback.resize(len + 1, None);
        }
        self.fallback[len].get_or_insert_with(|| {
            let net = fallback_network(len).expect("len >= 1");
            net.comparators().map(|c| (c.lo(), c.hi())).collect()
        })
    }
}
