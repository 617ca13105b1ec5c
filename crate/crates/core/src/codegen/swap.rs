use std::hint::select_unpredictable;

/// Compare-exchange without data-dependent control flow: one comparison and
/// two selects, returning `(min, max)`. Equal keys are left in place.
#[inline(always)]
pub fn branchfree_conditional_swap<T: Copy + Ord>(lo: T, hi: T) -> (T, T) {
    let swap = hi < lo;
    (select_unpredictable(swap, hi, lo), select_unpredictable(swap, lo, hi))
}

/// The XOR form: one select for the low channel, then the high channel is
/// recovered as `hi ^ lo ^ new_lo` (which is `lo` if the pair was exchanged
/// and `hi` otherwise).
#[inline(always)]
pub fn xor_conditional_swap(lo: i64, hi: i64) -> (i64, i64) {
    let saved = lo;
    let new_lo = select_unpredictable(hi < saved, hi, lo);
    (new_lo, hi ^ saved ^ new_lo)
}

/// Compare-exchange on two slots of `keys`, returning whether they were exchanged.
#[inline(always)]
pub fn cswap_at<T: Copy + Ord>(keys: &mut [T], lo: usize, hi: usize) -> bool {
    let (a, b) = (keys[lo], keys[hi]);
    let (x, y) = branchfree_conditional_swap(a, b);
    keys[lo] = x;
    keys[hi] = y;
    b < a
}
