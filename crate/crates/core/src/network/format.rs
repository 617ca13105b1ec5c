//! Text form of a layered network:
//!
//! ```text
//! # comment
//! channels 5
//! 0:1 3:4
//! 0:2
//! ```
//!
//! One line per layer, comparators `lo:hi` separated by spaces. The canonical
//! form written by `Display` sorts each layer and ends with a newline.

use std::fmt;
use std::str::FromStr;

use super::{Comparator, LayeredNetwork};
use crate::error::{Error, Result};

impl fmt::Display for LayeredNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "channels {}", self.channels)?;
        for layer in &self.layers {
            let mut first = true;
            for c in layer {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for LayeredNetwork {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_network(text)
    }
}

pub fn parse_network(text: &str) -> Result<LayeredNetwork> {
    let mut channels: Option<usize> = None;
    let mut layers = Vec::new();
    let mut last_line = 0;

    for (index, line) in text.lines().enumerate() {
        let lineno = index + 1;
        last_line = lineno;
        let line = line.trim_end_matches('\r');
        if line.trim_start().starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some(n) = channels else {
            channels = Some(parse_header(line, lineno)?);
            continue;
        };
        let mut seen = vec![false; n];
        let mut layer = Vec::new();
        for token in line.split_whitespace() {
            let c = parse_comparator(token, n, lineno)?;
            for ch in [c.lo(), c.hi()] {
                if seen[ch] {
                    return Err(Error::parse(lineno, format!("channel {ch} used twice in one layer")));
                }
                seen[ch] = true;
            }
            layer.push(c);
        }
        layers.push(layer);
    }

    let Some(n) = channels else {
        return Err(Error::parse(last_line.max(1), "missing `channels <n>` header"));
    };
    if !text.ends_with('\n') {
        return Err(Error::parse(last_line, "missing trailing newline"));
    }
    LayeredNetwork::new(n, layers)
}

fn parse_header(line: &str, lineno: usize) -> Result<usize> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("channels"), Some(n), None) => match n.parse::<usize>() {
            Ok(0) => Err(Error::parse(lineno, "channel count must be positive")),
            Ok(n) => Ok(n),
            Err(_) => Err(Error::parse(lineno, format!("bad channel count `{n}`"))),
        },
        _ => Err(Error::parse(lineno, "expected `channels <n>`")),
    }
}

fn parse_comparator(token: &str, channels: usize, lineno: usize) -> Result<Comparator> {
    let bad = || Error::parse(lineno, format!("malformed comparator `{token}`"));
    let (lo, hi) = token.split_once(':').ok_or_else(bad)?;
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo >= hi {
        return Err(Error::parse(lineno, format!("comparator `{token}` needs lo < hi")));
    }
    if hi >= channels {
        return Err(Error::parse(
            lineno,
            format!("comparator `{token}` out of range for {channels} channels"),
        ));
    }
    Ok(Comparator::new(lo, hi).expect("checked above"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Network;
    use proptest::prelude::*;

    const BEST5: &str = "channels 5\n3:4 0:1\n0:2\n1:2 0:3\n1:4\n2:4 1:3\n2:3\n";

    #[test]
    fn parses_best5() {
        let net: LayeredNetwork = BEST5.parse().unwrap();
        assert_eq!(net.depth(), 6);
        assert_eq!(net.size(), 9);
        assert_eq!(
            net.to_string(),
            "channels 5\n0:1 3:4\n0:2\n0:3 1:2\n1:4\n1:3 2:4\n2:3\n"
        );
    }

    #[test]
    fn minimal_round_trip_is_byte_identical() {
        let text = "channels 2\n0:1\n";
        assert_eq!(parse_network(text).unwrap().to_string(), text);
    }

    #[test]
    fn comments_and_header_only() {
        let net = parse_network("# nothing to do\nchannels 1\n").unwrap();
        assert_eq!(net.depth(), 0);
    }

    fn parse_err_line(text: &str) -> usize {
        match parse_network(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_repeated_channel() {
        assert_eq!(parse_err_line("channels 3\n0:1 1:2\n"), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_err_line("channels 3\n0:1\n2:1\n"), 3);
        assert_eq!(parse_err_line("channels 3\n0:3\n"), 2);
        assert_eq!(parse_err_line("channels 3\n0-1\n"), 2);
        assert_eq!(parse_err_line("# hi\nchannel 3\n"), 2);
        assert_eq!(parse_err_line("channels 0\n"), 1);
        assert_eq!(parse_err_line("channels 2\n0:1"), 2);
        assert_eq!(parse_err_line(""), 1);
    }

    fn arb_layered() -> impl Strategy<Value = LayeredNetwork> {
        (1usize..=10).prop_flat_map(|n| {
            let layer = (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 1..=(n / 2).max(1));
            prop::collection::vec(layer, 0..12).prop_map(move |raw| {
                let layers = raw
                    .into_iter()
                    .map(|(chans, pairs)| {
                        chans
                            .chunks_exact(2)
                            .take(pairs)
                            .map(|p| Comparator::new(p[0].min(p[1]), p[0].max(p[1])).unwrap())
                            .collect::<Vec<_>>()
                    })
                    .filter(|l| !l.is_empty())
                    .collect();
                LayeredNetwork::new(n, layers).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(net in arb_layered()) {
            let text = net.to_string();
            let back = parse_network(&text).unwrap();
            prop_assert_eq!(&back, &net);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
