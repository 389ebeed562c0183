//! Per-`n` verification sweeps with deterministic, ordered reports.

use rayon::prelude::*;

/// Outcome of one identity checked over a range of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub name: &'static str,
    /// `(n, Err(reason))` per checked `n`, in ascending `n`.
    pub results: Vec<(u32, Result<(), String>)>,
}

impl SweepReport {
    /// Runs `check` for every `n` in `range`, in parallel; results stay ordered by `n`.
    pub fn run<F>(name: &'static str, range: std::ops::RangeInclusive<u32>, check: F) -> Self
    where
        F: Fn(u32) -> Result<(), String> + Sync,
    {
        let ns: Vec<u32> = range.collect();
        let results = ns.par_iter().map(|&n| (n, check(n))).collect();
        SweepReport { name, results }
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }

    /// The smallest `n` that failed, with the reason.
    pub fn first_failure(&self) -> Option<(u32, &str)> {
        self.results.iter().find_map(|(n, r)| match r {
            Ok(()) => None,
            Err(e) => Some((*n, e.as_str())),
        })
    }

    /// Appends `other`'s results; used to merge several identities into one report.
    pub fn merge(mut self, other: SweepReport) -> Self {
        self.results.extend(other.results);
        self.results.sort_by_key(|(n, _)| *n);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_first_failure() {
        let r = SweepReport::run("parity", 1..=50, |n| {
            if n % 7 == 0 {
                Err(format!("{n} divisible by 7"))
            } else {
                Ok(())
            }
        });
        assert!(!r.passed());
        assert_eq!(r.first_failure(), Some((7, "7 divisible by 7")));
        let ns: Vec<u32> = r.results.iter().map(|(n, _)| *n).collect();
        assert_eq!(ns, (1..=50).collect::<Vec<_>>());
    }
}
