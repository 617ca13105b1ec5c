//! Insertion sort for a fixed `n`, unrolled step by step until it is a
//! sorting network.

use std::fmt::Write as _;
use std::str::FromStr;

use super::interp::MACRO_COMP;
use crate::error::{Error, Result};
use crate::generators::insertion_network;
use crate::network::{Comparator, Network};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InsertionStage {
    /// Two nested loops with the data-dependent inner guard.
    Loops,
    /// The outer loop unrolled into `n-1` inner loops.
    OuterUnrolled,
    /// Inner loops run to 1 unconditionally; the comparison moves into the body.
    Oblivious,
    /// Every loop unrolled: the insertion network, one row per iteration.
    FullyUnrolled,
    /// The same comparators regrouped into parallel layers.
    Layered,
}

impl InsertionStage {
    pub const ALL: [InsertionStage; 5] = [
        InsertionStage::Loops,
        InsertionStage::OuterUnrolled,
        InsertionStage::Oblivious,
        InsertionStage::FullyUnrolled,
        InsertionStage::Layered,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            InsertionStage::Loops => "loops",
            InsertionStage::OuterUnrolled => "unrolled",
            InsertionStage::Oblivious => "oblivious",
            InsertionStage::FullyUnrolled => "oblivious_unrolled",
            InsertionStage::Layered => "layered",
        }
    }
}

impl FromStr for InsertionStage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InsertionStage::ALL
            .into_iter()
            .find(|stage| stage.tag() == s)
            .ok_or_else(|| Error::Config(format!("unknown insertion stage `{s}`")))
    }
}

const SWAP_MACRO: &str = "#define SWAP(x, y) { int64_t tmp = a[x]; a[x] = a[y]; a[y] = tmp; }\n";

/// C source for `sort<n>_<stage>`, `2 <= n <= 16`.
pub fn emit_staged_insertion(n: usize, stage: InsertionStage) -> Result<String> {
    if !(2..=16).contains(&n) {
        return Err(Error::Domain(format!("staged insertion sort needs 2 <= n <= 16, got {n}")));
    }
    let mut out = String::from("#include <stdint.h>\n\n");
    out.push_str(SWAP_MACRO);
    if matches!(stage, InsertionStage::FullyUnrolled | InsertionStage::Layered) {
        out.push_str(MACRO_COMP);
        out.push('\n');
    }
    out.push('\n');
    writeln!(out, "static inline void sort{n}_{}(int64_t *a) {{", stage.tag()).unwrap();

    match stage {
        InsertionStage::Loops => {
            writeln!(out, "  for (int i = 1; i < {n}; i++)").unwrap();
            out.push_str("    for (int j = i; j > 0 && a[j] < a[j-1]; j--)\n");
            out.push_str("      SWAP(j-1, j)\n");
        }
        InsertionStage::OuterUnrolled => {
            for i in 1..n {
                writeln!(out, "  for (int j = {i}; j > 0 && a[j] < a[j-1]; j--)").unwrap();
                out.push_str("    SWAP(j-1, j)\n");
            }
        }
        InsertionStage::Oblivious => {
            for i in 1..n {
                writeln!(out, "  for (int j = {i}; j > 0; j--)").unwrap();
                out.push_str("    if (a[j] < a[j-1]) SWAP(j-1, j)\n");
            }
        }
        InsertionStage::FullyUnrolled => {
            let net = insertion_network(n)?;
            let mut rest = net.as_slice();
            for i in 1..n {
                let (row, tail) = rest.split_at(i);
                write_comp_row(&mut out, row);
                rest = tail;
            }
        }
        InsertionStage::Layered => {
            let layered = insertion_network(n)?.to_layers();
            debug_assert_eq!(layered.size(), n * (n - 1) / 2);
            for layer in layered.layers() {
                write_comp_row(&mut out, layer);
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

fn write_comp_row(out: &mut String, row: &[Comparator]) {
    let calls: Vec<String> = row.iter().map(|c| format!("COMP({}, {})", c.lo(), c.hi())).collect();
    writeln!(out, "  {}", calls.join("  ")).unwrap();
}
