//! Best-known sorting networks for 1 to 16 channels.
//!
//! Each entry ships as a network-format text file under `catalog/`, carrying
//! a `# claim size=<s> depth=<d>` comment. Every entry is checked against its
//! claim and re-verified with the 0/1 principle when the catalog is first
//! used, so a transcription error panics instead of being trusted.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::network::{parse_network, Direction, LayeredNetwork, Network};

pub const CATALOG_MAX: usize = 16;

/// Best known size `s_n`, indexed by `n` (index 0 unused). Optimal for `n <= 10`.
pub const BEST_KNOWN_SIZE: [usize; CATALOG_MAX + 1] =
    [0, 0, 1, 3, 5, 9, 12, 16, 19, 25, 29, 35, 39, 45, 51, 56, 60];

/// Lower bounds on size for `n = 11..=16`; below 11 the size column is exact.
pub const SIZE_LOWER_BOUND: [usize; CATALOG_MAX + 1] =
    [0, 0, 1, 3, 5, 9, 12, 16, 19, 25, 29, 33, 37, 41, 45, 49, 53];

/// Optimal depth `t_n`, indexed by `n`.
pub const OPTIMAL_DEPTH: [usize; CATALOG_MAX + 1] = [0, 0, 1, 3, 3, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 9, 9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    Size,
    Depth,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub channels: usize,
    pub objective: Objective,
    pub network: LayeredNetwork,
    pub claimed_size: usize,
    pub claimed_depth: usize,
}

macro_rules! catalog_files {
    ($($n:literal),*) => {
        [$(
            (
                include_str!(concat!("../../catalog/size-", $n, ".net")),
                include_str!(concat!("../../catalog/depth-", $n, ".net")),
            ),
        )*]
    };
}

static SOURCES: [(&str, &str); CATALOG_MAX] = catalog_files!(
    "01", "02", "03", "04", "05", "06", "07", "08", "09", "10", "11", "12", "13", "14", "15", "16"
);

/// Raw text of the embedded catalog file.
pub fn source(n: usize, objective: Objective) -> Result<&'static str> {
    if !(1..=CATALOG_MAX).contains(&n) {
        return Err(Error::CatalogMiss { channels: n });
    }
    let (size, depth) = SOURCES[n - 1];
    Ok(match objective {
        Objective::Size => size,
        Objective::Depth => depth,
    })
}

fn parse_claim(text: &str) -> Option<(usize, usize)> {
    let line = text.lines().find_map(|l| l.trim().strip_prefix("# claim"))?;
    let mut size = None;
    let mut depth = None;
    for kv in line.split_whitespace() {
        match kv.split_once('=')? {
            ("size", v) => size = v.parse().ok(),
            ("depth", v) => depth = v.parse().ok(),
            _ => {}
        }
    }
    Some((size?, depth?))
}

fn load_entry(n: usize, objective: Objective) -> CatalogEntry {
    let text = source(n, objective).expect("index within catalog");
    let network = parse_network(text)
        .unwrap_or_else(|e| panic!("catalog {objective:?} n={n} does not parse: {e}"));
    let (claimed_size, claimed_depth) =
        parse_claim(text).unwrap_or_else(|| panic!("catalog {objective:?} n={n} has no claim line"));
    assert_eq!(network.channels(), n, "catalog {objective:?} n={n}: channel count");
    assert_eq!(network.size(), claimed_size, "catalog {objective:?} n={n}: size");
    assert_eq!(network.depth(), claimed_depth, "catalog {objective:?} n={n}: depth");
    assert!(
        network.is_sorting_network(Direction::Ascending).expect("n within verify cap"),
        "catalog {objective:?} n={n} is not a sorting network"
    );
    assert!(
        claimed_size >= SIZE_LOWER_BOUND[n],
        "catalog {objective:?} n={n} claims size below the known lower bound"
    );
    match objective {
        Objective::Size => assert_eq!(claimed_size, BEST_KNOWN_SIZE[n], "size entry n={n}"),
        Objective::Depth => assert_eq!(claimed_depth, OPTIMAL_DEPTH[n], "depth entry n={n}"),
    }
    CatalogEntry {
        channels: n,
        objective,
        network,
        claimed_size,
        claimed_depth,
    }
}

fn catalog() -> &'static [(CatalogEntry, CatalogEntry)] {
    static CATALOG: OnceLock<Vec<(CatalogEntry, CatalogEntry)>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        (1..=CATALOG_MAX)
            .map(|n| (load_entry(n, Objective::Size), load_entry(n, Objective::Depth)))
            .collect()
    })
}

/// The embedded best-known network for `n` channels under `objective`.
///
/// Fails with [`Error::CatalogMiss`] outside `1..=16`; callers that need
/// larger networks can use [`super::fallback_network`].
pub fn best_network(n: usize, objective: Objective) -> Result<&'static CatalogEntry> {
    if !(1..=CATALOG_MAX).contains(&n) {
        return Err(Error::CatalogMiss { channels: n });
    }
    let (size, depth) = &catalog()[n - 1];
    Ok(match objective {
        Objective::Size => size,
        Objective::Depth => depth,
    })
}

pub fn entries() -> impl Iterator<Item = &'static CatalogEntry> {
    catalog().iter().flat_map(|(s, d)| [s, d])
}
