//! Straight-line sorter synthesis.
//!
//! [`emit_sorter`] turns a layered network into a single function with one
//! source line per layer and one comparator block per comparator. The C
//! blocks follow the macro idiom of a per-block temporary copy, so that with
//! an optimizing compiler a [`ComparatorStyle::CondMove`] block can become
//! `MOV, CMP, CMOV, CMOV` and a [`ComparatorStyle::XorSwap`] block
//! `MOV, CMP, CMOV, XOR, XOR`.
//!
//! [`interp`] parses and executes the emitted text, which is how the output
//! is checked against [`crate::network::Network::apply`].

pub mod interp;
mod staged;
mod swap;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::network::{Comparator, Direction, LayeredNetwork, Network};

pub use staged::{emit_staged_insertion, InsertionStage};
pub use swap::{branchfree_conditional_swap, cswap_at, xor_conditional_swap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComparatorStyle {
    /// `if (a[y] < a[x]) swap`: compiles to a conditional branch.
    BranchingIf,
    /// Copy, compare, two conditional assignments.
    CondMove,
    /// Copy, compare, one conditional assignment, one XOR combine.
    XorSwap,
    /// Copy plus `MIN`/`MAX`. Emitted for completeness; compilers do not
    /// reliably turn it into branch-free code, so prefer `CondMove`.
    MinMax,
}

impl ComparatorStyle {
    pub const ALL: [ComparatorStyle; 4] = [
        ComparatorStyle::BranchingIf,
        ComparatorStyle::CondMove,
        ComparatorStyle::XorSwap,
        ComparatorStyle::MinMax,
    ];

    /// Short name used in generated identifiers and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            ComparatorStyle::BranchingIf => "if",
            ComparatorStyle::CondMove => "cmov",
            ComparatorStyle::XorSwap => "xor",
            ComparatorStyle::MinMax => "minmax",
        }
    }
}

impl fmt::Display for ComparatorStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ComparatorStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComparatorStyle::ALL
            .into_iter()
            .find(|style| style.tag() == s)
            .ok_or_else(|| Error::Config(format!("unknown comparator style `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmitTarget {
    CSource,
    Pseudocode,
}

impl FromStr for EmitTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" => Ok(EmitTarget::CSource),
            "pseudo" => Ok(EmitTarget::Pseudocode),
            _ => Err(Error::Config(format!("unknown emit target `{s}`"))),
        }
    }
}

/// `sort<n>_<style>`
pub fn default_name(channels: usize, style: ComparatorStyle) -> String {
    format!("sort{channels}_{}", style.tag())
}

/// Emits a sorter for `layered`, refusing networks that do not sort.
pub fn emit_sorter(
    layered: &LayeredNetwork,
    style: ComparatorStyle,
    target: EmitTarget,
    name: &str,
) -> Result<String> {
    if !layered.is_sorting_network(Direction::Ascending)? {
        return Err(Error::NotSorting {
            channels: layered.channels(),
        });
    }
    check_identifier(name)?;
    Ok(emit_rows(layered.channels(), layered.layers(), style, target, name))
}

fn check_identifier(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!("`{name}` is not a valid identifier")))
    }
}

/// One output line per row; no verification.
pub(crate) fn emit_rows(
    channels: usize,
    rows: &[Vec<Comparator>],
    style: ComparatorStyle,
    target: EmitTarget,
    name: &str,
) -> String {
    let mut out = String::new();
    match target {
        EmitTarget::CSource => {
            out.push_str("#include <stdint.h>\n");
            if style == ComparatorStyle::MinMax {
                out.push_str("#define MIN(x, y) ((y) < (x) ? (y) : (x))\n");
                out.push_str("#define MAX(x, y) ((y) < (x) ? (x) : (y))\n");
            }
            out.push('\n');
            writeln!(out, "static inline void {name}(int64_t *a) {{").unwrap();
        }
        EmitTarget::Pseudocode => {
            writeln!(out, "procedure {name}(a[0..{}])", channels - 1).unwrap();
        }
    }
    let separator = match target {
        EmitTarget::CSource => "  ",
        EmitTarget::Pseudocode => "  |  ",
    };
    let mut block = 0;
    for row in rows {
        let blocks: Vec<String> = row
            .iter()
            .map(|&c| {
                let text = match target {
                    EmitTarget::CSource => c_block(c, style, block),
                    EmitTarget::Pseudocode => pseudo_block(c, style, block),
                };
                block += 1;
                text
            })
            .collect();
        writeln!(out, "  {}", blocks.join(separator)).unwrap();
    }
    match target {
        EmitTarget::CSource => out.push_str("}\n"),
        EmitTarget::Pseudocode => out.push_str("end procedure\n"),
    }
    out
}

fn c_block(c: Comparator, style: ComparatorStyle, k: usize) -> String {
    let (x, y) = (c.lo(), c.hi());
    match style {
        ComparatorStyle::BranchingIf => {
            format!("if (a[{y}] < a[{x}]) {{ int64_t t{k} = a[{x}]; a[{x}] = a[{y}]; a[{y}] = t{k}; }}")
        }
        ComparatorStyle::CondMove => format!(
            "{{ int64_t t{k} = a[{x}]; int c{k} = a[{y}] < t{k}; \
             a[{x}] = c{k} ? a[{y}] : a[{x}]; a[{y}] = c{k} ? t{k} : a[{y}]; }}"
        ),
        ComparatorStyle::XorSwap => format!(
            "{{ int64_t t{k} = a[{x}]; int c{k} = a[{y}] < t{k}; \
             a[{x}] = c{k} ? a[{y}] : a[{x}]; a[{y}] ^= t{k} ^ a[{x}]; }}"
        ),
        ComparatorStyle::MinMax => format!(
            "{{ int64_t t{k} = a[{x}]; a[{x}] = MIN(t{k}, a[{y}]); a[{y}] = MAX(t{k}, a[{y}]); }}"
        ),
    }
}

fn pseudo_block(c: Comparator, style: ComparatorStyle, k: usize) -> String {
    let (x, y) = (c.lo(), c.hi());
    match style {
        ComparatorStyle::BranchingIf => format!("if a[{y}] < a[{x}] then swap(a[{x}], a[{y}])"),
        ComparatorStyle::CondMove => format!(
            "t{k} <- a[{x}]; c{k} <- a[{y}] < t{k}; \
             a[{x}] <- select(c{k}, a[{y}], a[{x}]); a[{y}] <- select(c{k}, t{k}, a[{y}])"
        ),
        ComparatorStyle::XorSwap => format!(
            "t{k} <- a[{x}]; c{k} <- a[{y}] < t{k}; \
             a[{x}] <- select(c{k}, a[{y}], a[{x}]); a[{y}] <- a[{y}] xor t{k} xor a[{x}]"
        ),
        ComparatorStyle::MinMax => {
            format!("t{k} <- a[{x}]; a[{x}] <- min(t{k}, a[{y}]); a[{y}] <- max(t{k}, a[{y}])")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::interp::{parse_program, BlockShape};
    use super::*;
    use crate::generators::{best_network, Objective};

    fn best5() -> &'static LayeredNetwork {
        &best_network(5, Objective::Size).unwrap().network
    }

    #[test]
    fn best5_cmov_has_six_rows_of_nine_blocks() {
        let text = emit_sorter(best5(), ComparatorStyle::CondMove, EmitTarget::CSource, "sort5_cmov").unwrap();
        let program = parse_program(&text, EmitTarget::CSource).unwrap();
        assert_eq!(program.name, "sort5_cmov");
        assert_eq!(program.rows.len(), 6);
        assert_eq!(program.blocks().count(), 9);
        for b in program.blocks() {
            assert_eq!(
                b.shape(),
                BlockShape { copies: 1, comparisons: 1, conditional_assignments: 2, ..Default::default() }
            );
        }
        assert!(!text.contains("if ") && !text.contains("for ") && !text.contains("while"));
    }

    #[test]
    fn xor_blocks_combine_copy_old_and_new() {
        for target in [EmitTarget::CSource, EmitTarget::Pseudocode] {
            let text = emit_sorter(best5(), ComparatorStyle::XorSwap, target, "s").unwrap();
            let program = parse_program(&text, target).unwrap();
            for b in program.blocks() {
                assert_eq!(
                    b.shape(),
                    BlockShape { copies: 1, comparisons: 1, conditional_assignments: 1, xor_combines: 1, ..Default::default() }
                );
            }
        }
        let text = emit_sorter(best5(), ComparatorStyle::XorSwap, EmitTarget::CSource, "s").unwrap();
        assert_eq!(text.matches("^=").count(), 9);
        assert!(text.contains("a[1] ^= t0 ^ a[0];"));
    }

    #[test]
    fn one_channel_gives_empty_body() {
        let net = LayeredNetwork::empty(1).unwrap();
        let text = emit_sorter(&net, ComparatorStyle::CondMove, EmitTarget::CSource, "sort1_cmov").unwrap();
        assert_eq!(text, "#include <stdint.h>\n\nstatic inline void sort1_cmov(int64_t *a) {\n}\n");
        let text = emit_sorter(&net, ComparatorStyle::CondMove, EmitTarget::Pseudocode, "sort1_cmov").unwrap();
        assert_eq!(text, "procedure sort1_cmov(a[0..0])\nend procedure\n");
    }

    #[test]
    fn refuses_non_sorting_networks() {
        let net = LayeredNetwork::from_pairs(3, &[&[(0, 1)]]).unwrap();
        assert!(matches!(
            emit_sorter(&net, ComparatorStyle::CondMove, EmitTarget::CSource, "x"),
            Err(Error::NotSorting { channels: 3 })
        ));
        assert!(emit_sorter(best5(), ComparatorStyle::CondMove, EmitTarget::CSource, "9bad").is_err());
    }

    #[test]
    fn style_names_round_trip() {
        for style in ComparatorStyle::ALL {
            assert_eq!(style.tag().parse::<ComparatorStyle>().unwrap(), style);
        }
        assert_eq!(default_name(5, ComparatorStyle::XorSwap), "sort5_xor");
        assert!("cmove".parse::<ComparatorStyle>().is_err());
    }

    #[test]
    fn emitted_code_matches_network_on_binary_inputs() {
        for n in 1..=8 {
            let net = &best_network(n, Objective::Size).unwrap().network;
            for style in ComparatorStyle::ALL {
                for target in [EmitTarget::CSource, EmitTarget::Pseudocode] {
                    let text = emit_sorter(net, style, target, "f").unwrap();
                    let program = parse_program(&text, target).unwrap();
                    for x in 0u32..1 << n {
                        let input: Vec<i64> = (0..n).map(|c| i64::from((x >> c) & 1)).collect();
                        let mut got = input.clone();
                        program.run(&mut got).unwrap();
                        let (want, _) = net.apply(&input, Direction::Ascending).unwrap();
                        assert_eq!(got, want, "n={n} {style} {target:?} x={x:b}");
                    }
                }
            }
        }
    }
}
