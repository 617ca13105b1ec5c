use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TimerKind {
    /// `std::time::Instant`, reported in nanoseconds.
    #[default]
    MonotonicNs,
    /// The x86-64 time stamp counter, reported in reference cycles.
    CycleCounter,
}

impl TimerKind {
    pub fn unit(self) -> &'static str {
        match self {
            TimerKind::MonotonicNs => "ns",
            TimerKind::CycleCounter => "cycles",
        }
    }

    pub fn is_available(self) -> bool {
        match self {
            TimerKind::MonotonicNs => true,
            TimerKind::CycleCounter => cfg!(target_arch = "x86_64"),
        }
    }

    pub(crate) fn start(self) -> Result<Timer> {
        if !self.is_available() {
            return Err(Error::Config("the cycle counter is only available on x86_64".into()));
        }
        Ok(Timer { kind: self, instant: Instant::now(), cycles: read_tsc() })
    }
}

impl fmt::Display for TimerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.unit())
    }
}

impl FromStr for TimerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ns" => Ok(TimerKind::MonotonicNs),
            "cycles" => Ok(TimerKind::CycleCounter),
            _ => Err(Error::Config(format!("unknown timer `{s}` (expected ns or cycles)"))),
        }
    }
}

pub(crate) struct Timer {
    kind: TimerKind,
    instant: Instant,
    cycles: u64,
}

impl Timer {
    /// Restarts the clock.
    #[inline(always)]
    pub(crate) fn reset(&mut self) {
        match self.kind {
            TimerKind::MonotonicNs => self.instant = Instant::now(),
            TimerKind::CycleCounter => self.cycles = read_tsc(),
        }
    }

    /// Time since the last reset, in the unit of the timer kind.
    #[inline(always)]
    pub(crate) fn elapsed(&self) -> f64 {
        match self.kind {
            TimerKind::MonotonicNs => self.instant.elapsed().as_nanos() as f64,
            TimerKind::CycleCounter => read_tsc().wrapping_sub(self.cycles) as f64,
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[inline(always)]
fn read_tsc() -> u64 {
    use std::arch::x86_64::{_mm_lfence, _rdtsc};
    // SAFETY: lfence and rdtsc are part of the x86_64 baseline.
    unsafe {
        _mm_lfence();
        let t = _rdtsc();
        _mm_lfence();
        t
    }
}

#[cfg(not(target_arch = "x86_64"))]
#[inline(always)]
fn read_tsc() -> u64 {
    0
}
