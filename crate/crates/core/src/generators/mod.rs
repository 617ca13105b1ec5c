//! Network constructors: oblivious insertion and bubble sort, a Batcher
//! fallback for arbitrary `n`, the embedded best-known catalog, and the
//! block-structured networks used for the ILP experiment.

pub mod catalog;

use crate::error::{Error, Result};
use crate::network::{Comparator, ComparatorNetwork, LayeredNetwork};

pub use catalog::{best_network, CatalogEntry, Objective};

fn pair(lo: usize, hi: usize) -> Comparator {
    Comparator::new(lo, hi).expect("generator produced lo >= hi")
}

fn require_channels(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("a network needs at least one channel".into()));
    }
    Ok(())
}

/// Oblivious insertion sort: iteration `i` sinks channel `i` with the run
/// `(i-1,i), (i-2,i-1), ..., (0,1)`.
pub fn insertion_network(n: usize) -> Result<ComparatorNetwork> {
    require_channels(n)?;
    let comparators = (1..n)
        .flat_map(|i| (0..i).rev().map(|j| pair(j, j + 1)))
        .collect();
    ComparatorNetwork::new(n, comparators)
}

/// Oblivious bubble sort: pass `p` runs `(0,1), (1,2), ..., (n-p-1,n-p)`,
/// carrying the maximum of the unsorted prefix up to channel `n-p`.
pub fn bubble_network(n: usize) -> Result<ComparatorNetwork> {
    require_channels(n)?;
    let comparators = (1..n)
        .flat_map(|p| (0..n - p).map(|j| pair(j, j + 1)))
        .collect();
    ComparatorNetwork::new(n, comparators)
}

/// Batcher's odd-even merge sort on the next power of two, with every
/// comparator that touches a channel `>= n` removed.
///
/// Dropping those comparators is sound: padding channels can be read as
/// holding `+inf`, and a comparator `(i, j)` with `j` a padding channel never
/// exchanges.
pub fn fallback_network(n: usize) -> Result<LayeredNetwork> {
    require_channels(n)?;
    let width = n.next_power_of_two();
    let mut out = Vec::new();
    odd_even_sort(0, width, &mut out);
    let comparators = out
        .into_iter()
        .filter(|&(_, hi)| hi < n)
        .map(|(lo, hi)| pair(lo, hi))
        .collect();
    Ok(ComparatorNetwork::new(n, comparators)?.to_layers())
}

fn odd_even_sort(lo: usize, len: usize, out: &mut Vec<(usize, usize)>) {
    if len > 1 {
        let half = len / 2;
        odd_even_sort(lo, half, out);
        odd_even_sort(lo + half, half, out);
        odd_even_merge(lo, len, 1, out);
    }
}

fn odd_even_merge(lo: usize, len: usize, stride: usize, out: &mut Vec<(usize, usize)>) {
    let step = stride * 2;
    if step < len {
        odd_even_merge(lo, len, step, out);
        odd_even_merge(lo + stride, len, step, out);
        let mut i = lo + stride;
        while i + stride < lo + len {
            out.push((i, i + stride));
            i += step;
        }
    } else {
        out.push((lo, lo + stride));
    }
}

/// A non-sorting network of exactly `total` comparators on `2m` channels,
/// issued in blocks of `m` channel-disjoint comparators.
///
/// Even blocks pair channels `(2i, 2i+1)`; odd blocks shift the pairing by one
/// channel, `(2i+1, 2i+2 mod 2m)`, so every block depends on the one before.
/// With `m = 1` each comparator depends on its predecessor; larger `m` gives
/// `m` independent comparators per block.
pub fn parallel_blocks_network(total: usize, m: usize) -> Result<ComparatorNetwork> {
    if total == 0 || m == 0 {
        return Err(Error::Domain(format!(
            "parallel blocks need total >= 1 and m >= 1 (got total={total}, m={m})"
        )));
    }
    let channels = 2 * m;
    let comparators = (0..total)
        .map(|k| {
            let (block, i) = (k / m, k % m);
            let (a, b) = if block % 2 == 0 {
                (2 * i, 2 * i + 1)
            } else {
                (2 * i + 1, (2 * i + 2) % channels)
            };
            pair(a.min(b), a.max(b))
        })
        .collect();
    ComparatorNetwork::new(channels, comparators)
}
