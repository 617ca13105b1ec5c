use super::{Direction, Network};
use crate::error::{Error, Result};

/// Largest channel count accepted by the exhaustive 0/1 check.
pub const VERIFY_CAP: usize = 20;

/// Bit `k` of `LANE_PATTERN[c]` is bit `c` of `k`, for the six channels whose
/// value varies within one 64-input word.
const LANE_PATTERN: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Searches the 2^n binary inputs for one the network fails to sort.
///
/// Inputs are numbered so that bit `c` of the returned value is the key on
/// channel `c`. Evaluation is bit-sliced: each channel carries a 64-bit word
/// holding its value for 64 consecutive inputs, so a comparator is one AND
/// and one OR.
pub fn find_unsorted_input<N: Network + ?Sized>(net: &N, dir: Direction) -> Result<Option<u64>> {
    let n = net.channels();
    if n > VERIFY_CAP {
        return Err(Error::Capacity {
            what: "exhaustive 0/1 verification",
            requested: n,
            cap: VERIFY_CAP,
        });
    }
    let pairs: Vec<(usize, usize)> = net.comparators().map(|c| (c.lo(), c.hi())).collect();
    let total: u64 = 1 << n;
    let words = total.div_ceil(64);
    let valid = if total >= 64 { u64::MAX } else { (1u64 << total) - 1 };
    let mut lanes = vec![0u64; n];

    for word in 0..words {
        for (c, lane) in lanes.iter_mut().enumerate() {
            *lane = if c < 6 {
                LANE_PATTERN[c]
            } else if (word >> (c - 6)) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
        }
        for &(lo, hi) in &pairs {
            let (a, b) = (lanes[lo], lanes[hi]);
            let (min, max) = (a & b, a | b);
            match dir {
                Direction::Ascending => {
                    lanes[lo] = min;
                    lanes[hi] = max;
                }
                Direction::Descending => {
                    lanes[lo] = max;
                    lanes[hi] = min;
                }
            }
        }
        let mut bad = 0u64;
        for w in lanes.windows(2) {
            bad |= match dir {
                // a 1 above a 0
                Direction::Ascending => w[0] & !w[1],
                Direction::Descending => !w[0] & w[1],
            };
        }
        bad &= valid;
        if bad != 0 {
            return Ok(Some(word * 64 + u64::from(bad.trailing_zeros())));
        }
    }
    Ok(None)
}
