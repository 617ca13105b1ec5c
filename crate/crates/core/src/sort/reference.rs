//! Textbook small-n sorts, instrumented.

use std::str::FromStr;

use super::Counter;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReferenceKind {
    Insertion,
    Selection,
    /// No early exit: always `n(n-1)/2` comparisons.
    Bubble,
    /// Gaps `1, 4, 13, 40, ...` (`h -> 3h + 1`).
    Shell,
}

impl ReferenceKind {
    pub const ALL: [ReferenceKind; 4] =
        [ReferenceKind::Insertion, ReferenceKind::Selection, ReferenceKind::Bubble, ReferenceKind::Shell];

    pub fn tag(self) -> &'static str {
        match self {
            ReferenceKind::Insertion => "insertion",
            ReferenceKind::Selection => "selection",
            ReferenceKind::Bubble => "bubble",
            ReferenceKind::Shell => "shell",
        }
    }
}

impl FromStr for ReferenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReferenceKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

pub fn reference_sort<C: Counter>(kind: ReferenceKind, data: &mut [i64], stats: &mut C) {
    match kind {
        ReferenceKind::Insertion => insertion_sort(data, stats),
        ReferenceKind::Selection => selection_sort(data, stats),
        ReferenceKind::Bubble => bubble_sort(data, stats),
        ReferenceKind::Shell => shell_sort(data, stats),
    }
}

/// Sinks each key with the guard `j > 0 && a[j] < a[j-1]`.
#[inline]
pub fn insertion_sort<C: Counter>(a: &mut [i64], c: &mut C) {
    for i in 1..a.len() {
        let mut j = i;
        while j > 0 {
            c.compare(1);
            if a[j] >= a[j - 1] {
                break;
            }
            a.swap(j - 1, j);
            c.exchange(1);
            j -= 1;
        }
    }
}

/// Insertion sort with the length fixed at compile time for `len <= 16`, so
/// the outer loop is unrolled.
#[inline]
pub fn insertion_sort_unrolled<C: Counter>(a: &mut [i64], c: &mut C) {
    macro_rules! dispatch {
        ($($n:literal)*) => {
            match a.len() {
                $($n => insertion_fixed::<$n, C>(a.try_into().unwrap(), c),)*
                _ => insertion_sort(a, c),
            }
        };
    }
    dispatch!(2 3 4 5 6 7 8 9 10 11 12 13 14 15 16)
}

#[inline(always)]
fn insertion_fixed<const N: usize, C: Counter>(a: &mut [i64; N], c: &mut C) {
    for i in 1..N {
        let mut j = i;
        while j > 0 {
            c.compare(1);
            if a[j] >= a[j - 1] {
                break;
            }
            a.swap(j - 1, j);
            c.exchange(1);
            j -= 1;
        }
    }
}

fn selection_sort<C: Counter>(a: &mut [i64], c: &mut C) {
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        let mut min = i;
        for j in i + 1..n {
            c.compare(1);
            if a[j] < a[min] {
                min = j;
            }
        }
        a.swap(i, min);
        c.exchange(1);
    }
}

fn bubble_sort<C: Counter>(a: &mut [i64], c: &mut C) {
    let n = a.len();
    for i in 0..n {
        for j in (i + 1..n).rev() {
            c.compare(1);
            if a[j] < a[j - 1] {
                a.swap(j - 1, j);
                c.exchange(1);
            }
        }
    }
}

fn shell_sort<C: Counter>(a: &mut [i64], c: &mut C) {
    let n = a.len();
    let mut h = 1;
    while h < n / 3 {
        h = 3 * h + 1;
    }
    while h >= 1 {
        for i in h..n {
            let mut j = i;
            while j >= h {
                c.compare(1);
                if a[j] >= a[j - h] {
                    break;
                }
                a.swap(j - h, j);
                c.exchange(1);
                j -= h;
            }
        }
        h /= 3;
    }
}
