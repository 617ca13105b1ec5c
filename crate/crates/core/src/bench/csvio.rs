use std::io;
use std::path::Path;

use serde::Serialize;

use super::{BenchRecord, SweepRow};
use crate::error::Result;

/// Writes `records` sorted by algorithm, then `n`.
pub fn write_csv(records: &[BenchRecord], path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_records(records, file)
}

pub(crate) fn write_records(records: &[BenchRecord], out: impl io::Write) -> Result<()> {
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.algorithm.cmp(&b.algorithm).then(a.n.cmp(&b.n)));
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(["algorithm", "n", "mean", "stddev", "repetitions", "unit"])?;
    for r in sorted {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<BenchRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    Ok(reader.deserialize().collect::<std::result::Result<_, _>>()?)
}

#[derive(Serialize)]
struct SweepLine<'a> {
    base: &'a str,
    cutoff: usize,
    n: usize,
    mean: f64,
    stddev: f64,
    repetitions: usize,
    unit: &'a str,
    reduction_pct: f64,
}

/// Sweep rows with their reduction column, in base then cutoff order.
pub fn write_sweep_csv(rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    let mut sorted: Vec<&SweepRow> = rows.iter().collect();
    sorted.sort_by(|a, b| a.base.tag().cmp(b.base.tag()).then(a.cutoff.cmp(&b.cutoff)));
    let mut writer = csv::Writer::from_path(path)?;
    for r in sorted {
        writer.serialize(SweepLine {
            base: r.base.tag(),
            cutoff: r.cutoff,
            n: r.record.n,
            mean: r.record.mean,
            stddev: r.record.stddev,
            repetitions: r.record.repetitions,
            unit: &r.record.unit,
            reduction_pct: r.reduction_pct,
        })?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algorithm: &str, n: usize, mean: f64) -> BenchRecord {
        BenchRecord { algorithm: algorithm.into(), n, mean, stddev: 0.25, repetitions: 10, unit: "ns".into() }
    }

    #[test]
    fn empty_is_header_only() {
        let mut out = Vec::new();
        write_records(&[], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "algorithm,n,mean,stddev,repetitions,unit\n");
    }

    #[test]
    fn sorted_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let records = vec![record("net-free", 10, 1.5), record("insertion", 3, 0.1 + 0.2), record("net-free", 2, 7.0)];
        write_csv(&records, &path).unwrap();
        let back = read_csv(&path).unwrap();
        assert_eq!(back, vec![records[1].clone(), records[2].clone(), records[0].clone()]);
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("r.csv");
        assert!(matches!(write_csv(&[], &path), Err(crate::Error::Io(_))));
    }
}
