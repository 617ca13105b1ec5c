//! Comparator networks: representation, execution, 0/1 verification and
//! layer compression.
//!
//! Channels are 0-based. A comparator `lo:hi` always has `lo < hi`; under
//! [`Direction::Ascending`] it leaves the smaller key on `lo`, under
//! [`Direction::Descending`] the larger one. Equal keys are never exchanged.

mod format;
mod layers;
mod verify;

use std::fmt;
use std::ops::AddAssign;

use crate::error::{Error, Result};

pub use format::parse_network;
pub use layers::channel_sharing_inversions;
pub use verify::{find_unsorted_input, VERIFY_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comparator {
    lo: usize,
    hi: usize,
}

impl Comparator {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo >= hi {
            return Err(Error::ReversedComparator { lo, hi });
        }
        Ok(Comparator { lo, hi })
    }

    #[inline]
    pub fn lo(self) -> usize {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> usize {
        self.hi
    }

    #[inline]
    pub fn touches(self, channel: usize) -> bool {
        self.lo == channel || self.hi == channel
    }

    pub fn shares_channel(self, other: Comparator) -> bool {
        self.touches(other.lo) || self.touches(other.hi)
    }

    fn check(self, channels: usize) -> Result<()> {
        if self.hi >= channels {
            return Err(Error::InvalidComparator {
                lo: self.lo,
                hi: self.hi,
                channels,
            });
        }
        Ok(())
    }
}

impl TryFrom<(usize, usize)> for Comparator {
    type Error = Error;

    fn try_from((lo, hi): (usize, usize)) -> Result<Self> {
        Comparator::new(lo, hi)
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Smaller key to the lower channel.
    #[default]
    Ascending,
    /// Larger key to the lower channel (the convention that maps 10101 to 11100).
    Descending,
}

impl Direction {
    #[inline]
    fn should_exchange<T: Ord>(self, lo: &T, hi: &T) -> bool {
        match self {
            Direction::Ascending => hi < lo,
            Direction::Descending => lo < hi,
        }
    }

    pub fn is_sorted<T: Ord>(self, keys: &[T]) -> bool {
        keys.windows(2).all(|w| match self {
            Direction::Ascending => w[0] <= w[1],
            Direction::Descending => w[0] >= w[1],
        })
    }
}

/// Counters collected while a network is applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExecStats {
    pub comparator_evaluations: u64,
    pub exchanges: u64,
}

impl AddAssign for ExecStats {
    fn add_assign(&mut self, rhs: Self) {
        self.comparator_evaluations += rhs.comparator_evaluations;
        self.exchanges += rhs.exchanges;
    }
}

/// Anything that is a fixed sequence of comparators on a fixed channel count.
pub trait Network {
    fn channels(&self) -> usize;

    /// Comparators in execution order.
    fn comparators(&self) -> impl Iterator<Item = Comparator> + '_;

    fn size(&self) -> usize {
        self.comparators().count()
    }

    /// Applies the network to `keys` in place.
    fn apply_in_place<T: Ord>(&self, keys: &mut [T], dir: Direction) -> Result<ExecStats> {
        if keys.len() != self.channels() {
            return Err(Error::InputShape {
                expected: self.channels(),
                actual: keys.len(),
            });
        }
        let mut stats = ExecStats::default();
        for c in self.comparators() {
            stats.comparator_evaluations += 1;
            if dir.should_exchange(&keys[c.lo], &keys[c.hi]) {
                keys.swap(c.lo, c.hi);
                stats.exchanges += 1;
            }
        }
        Ok(stats)
    }

    fn apply<T: Ord + Clone>(&self, input: &[T], dir: Direction) -> Result<(Vec<T>, ExecStats)> {
        let mut out = input.to_vec();
        let stats = self.apply_in_place(&mut out, dir)?;
        Ok((out, stats))
    }

    /// Exhaustive 0/1 check: true iff every binary input leaves sorted in `dir`.
    fn is_sorting_network(&self, dir: Direction) -> Result<bool> {
        Ok(find_unsorted_input(self, dir)?.is_none())
    }
}

/// A comparator sequence on `channels` channels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComparatorNetwork {
    channels: usize,
    comparators: Vec<Comparator>,
}

impl ComparatorNetwork {
    pub fn new(channels: usize, comparators: Vec<Comparator>) -> Result<Self> {
        if channels == 0 {
            return Err(Error::ZeroChannels);
        }
        for c in &comparators {
            c.check(channels)?;
        }
        Ok(ComparatorNetwork {
            channels,
            comparators,
        })
    }

    pub fn empty(channels: usize) -> Result<Self> {
        Self::new(channels, Vec::new())
    }

    pub fn from_pairs(channels: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let comparators = pairs
            .iter()
            .map(|&p| Comparator::try_from(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(channels, comparators)
    }

    pub fn as_slice(&self) -> &[Comparator] {
        &self.comparators
    }

    pub fn push(&mut self, c: Comparator) -> Result<()> {
        c.check(self.channels)?;
        self.comparators.push(c);
        Ok(())
    }

    /// Drops the comparator at `index`.
    pub fn without(&self, index: usize) -> Self {
        let mut comparators = self.comparators.clone();
        comparators.remove(index);
        ComparatorNetwork {
            channels: self.channels,
            comparators,
        }
    }
}

impl Network for ComparatorNetwork {
    fn channels(&self) -> usize {
        self.channels
    }

    fn comparators(&self) -> impl Iterator<Item = Comparator> + '_ {
        self.comparators.iter().copied()
    }

    fn size(&self) -> usize {
        self.comparators.len()
    }
}

/// A network partitioned into layers of channel-disjoint comparators.
///
/// Layers are stored sorted by `(lo, hi)`; order inside a layer does not
/// affect the result because its comparators touch disjoint channels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LayeredNetwork {
    channels: usize,
    layers: Vec<Vec<Comparator>>,
}

impl LayeredNetwork {
    pub fn new(channels: usize, layers: Vec<Vec<Comparator>>) -> Result<Self> {
        if channels == 0 {
            return Err(Error::ZeroChannels);
        }
        let mut layers = layers;
        let mut seen = vec![usize::MAX; channels];
        for (index, layer) in layers.iter_mut().enumerate() {
            if layer.is_empty() {
                return Err(Error::EmptyLayer { layer: index });
            }
            for c in layer.iter() {
                c.check(channels)?;
                for ch in [c.lo, c.hi] {
                    if seen[ch] == index {
                        return Err(Error::ChannelConflict {
                            layer: index,
                            channel: ch,
                        });
                    }
                    seen[ch] = index;
                }
            }
            layer.sort_unstable();
        }
        Ok(LayeredNetwork { channels, layers })
    }

    pub fn empty(channels: usize) -> Result<Self> {
        Self::new(channels, Vec::new())
    }

    pub fn from_pairs(channels: usize, layers: &[&[(usize, usize)]]) -> Result<Self> {
        let layers = layers
            .iter()
            .map(|l| l.iter().map(|&p| Comparator::try_from(p)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::new(channels, layers)
    }

    /// One comparator per layer, keeping the sequence order exactly.
    pub fn from_sequence(net: &ComparatorNetwork) -> Self {
        LayeredNetwork {
            channels: net.channels,
            layers: net.comparators.iter().map(|&c| vec![c]).collect(),
        }
    }

    pub fn layers(&self) -> &[Vec<Comparator>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

impl Network for LayeredNetwork {
    fn channels(&self) -> usize {
        self.channels
    }

    fn comparators(&self) -> impl Iterator<Item = Comparator> + '_ {
        self.layers.iter().flatten().copied()
    }

    fn size(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}
