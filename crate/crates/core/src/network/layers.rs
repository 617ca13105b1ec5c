use super::{Comparator, ComparatorNetwork, LayeredNetwork};

impl ComparatorNetwork {
    /// Greedy left-packing into layers.
    ///
    /// Each comparator goes into the first layer after the last layer that
    /// already holds a comparator on one of its channels, so comparators that
    /// share a channel keep their relative order.
    pub fn to_layers(&self) -> LayeredNetwork {
        // last_layer[c] = 1 + index of the last layer touching channel c
        let mut last_layer = vec![0usize; self.channels];
        let mut layers: Vec<Vec<Comparator>> = Vec::new();
        for &c in &self.comparators {
            let layer = last_layer[c.lo].max(last_layer[c.hi]);
            if layer == layers.len() {
                layers.push(Vec::new());
            }
            layers[layer].push(c);
            last_layer[c.lo] = layer + 1;
            last_layer[c.hi] = layer + 1;
        }
        for layer in &mut layers {
            layer.sort_unstable();
        }
        LayeredNetwork {
            channels: self.channels,
            layers,
        }
    }
}

impl LayeredNetwork {
    /// Concatenates the layers; within a layer comparators come in `(lo, hi)` order.
    pub fn flatten(&self) -> ComparatorNetwork {
        ComparatorNetwork {
            channels: self.channels,
            comparators: self.layers.iter().flatten().copied().collect(),
        }
    }
}

/// Number of comparator pairs that share a channel and appear in the
/// opposite order in `b` compared to `a`. Both must hold the same comparators
/// at the same multiplicity.
pub fn channel_sharing_inversions(a: &ComparatorNetwork, b: &ComparatorNetwork) -> usize {
    // position in b of the k-th occurrence of each comparator of a
    let mut used = vec![false; b.comparators.len()];
    let pos: Vec<usize> = a
        .comparators
        .iter()
        .map(|c| {
            let p = (0..b.comparators.len())
                .find(|&i| !used[i] && b.comparators[i] == *c)
                .expect("networks hold different comparators");
            used[p] = true;
            p
        })
        .collect();
    let cs = &a.comparators;
    let mut count = 0;
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if cs[i].shares_channel(cs[j]) && pos[i] > pos[j] {
                count += 1;
            }
        }
    }
    count
}
