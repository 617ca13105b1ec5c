// Generates straight-line sorters from the size-objective catalog files.
// The catalog module re-verifies the same files at runtime, so this script
// only parses them.

use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

const MAX: usize = 16;

fn comparators(text: &str, n: usize) -> Vec<(usize, usize)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().expect("catalog file without header");
    assert_eq!(header, format!("channels {n}"), "catalog header mismatch for n={n}");
    lines
        .flat_map(str::split_whitespace)
        .map(|tok| {
            let (lo, hi) = tok.split_once(':').expect("malformed comparator");
            let (lo, hi): (usize, usize) = (lo.parse().unwrap(), hi.parse().unwrap());
            assert!(lo < hi && hi < n, "bad comparator {tok} for n={n}");
            (lo, hi)
        })
        .collect()
}

fn main() {
    println!("cargo:rerun-if-changed=catalog");
    println!("cargo:rerun-if-changed=build.rs");
    let mut out = String::new();
    let mut sizes = vec![0usize; MAX + 1];

    for n in 1..=MAX {
        let path = format!("catalog/size-{n:02}.net");
        println!("cargo:rerun-if-changed={path}");
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        let net = comparators(&text, n);
        sizes[n] = net.len();
        let keys: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
        let bindings: Vec<String> = keys.iter().map(|k| format!("mut {k}")).collect();

        for branching in [false, true] {
            let kind = if branching { "branch" } else { "free" };
            writeln!(out, "#[inline(always)]").unwrap();
            writeln!(out, "#[allow(unused_mut, unused_variables)]").unwrap();
            writeln!(out, "pub(crate) fn net_{kind}_{n}<C: Counter>(a: &mut [i64; {n}], c: &mut C) {{").unwrap();
            writeln!(out, "    let [{}] = *a;", bindings.join(", ")).unwrap();
            writeln!(out, "    c.compare({});", net.len()).unwrap();
            for &(lo, hi) in &net {
                if branching {
                    writeln!(
                        out,
                        "    if k{hi} < k{lo} {{ ::std::mem::swap(&mut k{lo}, &mut k{hi}); c.exchange(1); }}"
                    )
                    .unwrap();
                } else {
                    writeln!(out, "    c.exchange(u64::from(k{hi} < k{lo}));").unwrap();
                    writeln!(out, "    (k{lo}, k{hi}) = branchfree_conditional_swap(k{lo}, k{hi});").unwrap();
                }
            }
            writeln!(out, "    *a = [{}];", keys.join(", ")).unwrap();
            writeln!(out, "}}\n").unwrap();
        }
    }

    for kind in ["free", "branch"] {
        writeln!(out, "/// Sorts `a` with the catalog network for `a.len()`; `a.len() <= {MAX}`.").unwrap();
        writeln!(out, "#[inline]").unwrap();
        writeln!(out, "pub(crate) fn net_{kind}<C: Counter>(a: &mut [i64], c: &mut C) {{").unwrap();
        writeln!(out, "    match a.len() {{").unwrap();
        writeln!(out, "        0 => {{}}").unwrap();
        for n in 1..=MAX {
            writeln!(out, "        {n} => net_{kind}_{n}(a.try_into().unwrap(), c),").unwrap();
        }
        writeln!(out, "        len => unreachable!(\"no unrolled network for length {{len}}\"),").unwrap();
        writeln!(out, "    }}\n}}\n").unwrap();
    }

    writeln!(out, "/// Comparator count of each unrolled network, indexed by length.").unwrap();
    writeln!(out, "pub(crate) const UNROLLED_SIZE: [usize; {}] = {sizes:?};", MAX + 1).unwrap();

    let dest = Path::new(&env::var("OUT_DIR").unwrap()).join("unrolled.rs");
    fs::write(dest, out).unwrap();
}
