//! Straight-line catalog sorters generated by the build script, one per
//! length, in a branch-free and a branching flavor.

use super::Counter;
use crate::codegen::branchfree_conditional_swap;

include!(concat!(env!("OUT_DIR"), "/unrolled.rs"));

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{best_network, Objective};
    use crate::network::{Direction, Network};
    use crate::sort::SortStats;

    #[test]
    fn sizes_match_catalog() {
        for n in 1..=16 {
            assert_eq!(UNROLLED_SIZE[n], best_network(n, Objective::Size).unwrap().network.size());
        }
    }

    #[test]
    fn both_flavors_match_the_network() {
        for n in 1..=12 {
            let net = &best_network(n, Objective::Size).unwrap().network;
            for x in 0u32..1 << n {
                let input: Vec<i64> = (0..n).map(|c| i64::from((x >> c) & 1)).collect();
                let (want, exec) = net.apply(&input, Direction::Ascending).unwrap();
                for branching in [false, true] {
                    let mut got = input.clone();
                    let mut stats = SortStats::default();
                    if branching {
                        net_branch(&mut got, &mut stats);
                    } else {
                        net_free(&mut got, &mut stats);
                    }
                    assert_eq!(got, want);
                    assert_eq!(stats.comparisons, net.size() as u64);
                    assert_eq!(stats.exchanges, exec.exchanges);
                }
            }
        }
    }
}
