//! Runs the law registry with deterministic per-trial seeds and collects a report.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::laws::{registry, Law, Mode, Setup};

#[derive(Debug, Clone)]
pub struct LawReport {
    pub suite: &'static str,
    pub name: &'static str,
    pub runs: usize,
    pub failures: usize,
    /// Trial index and description of the first failure.
    pub first_failure: Option<(usize, String)>,
    pub skipped: Option<&'static str>,
    pub note: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub laws: Vec<LawReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let skipped = self.laws.iter().filter(|l| l.skipped.is_some()).count();
        let failed = self.laws.iter().filter(|l| !l.passed()).count();
        (self.laws.len() - skipped - failed, failed, skipped)
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.laws {
            let title = format!("{} / {}", l.suite, l.name);
            if let Some(why) = l.skipped {
                writeln!(f, "[SKIP] {title}: {why}")?;
            } else if l.passed() {
                let unit = if l.runs == 1 { "run" } else { "trials" };
                writeln!(f, "[PASS] {title} ({} {unit})", l.runs)?;
            } else {
                writeln!(f, "[FAIL] {title}: {}/{} failed", l.failures, l.runs)?;
                if let Some((trial, what)) = &l.first_failure {
                    writeln!(f, "       first counterexample (trial {trial}): {what}")?;
                }
            }
            if let Some(note) = &l.note {
                writeln!(f, "       note: {note}")?;
            }
        }
        let (passed, failed, skipped) = self.counts();
        write!(f, "summary: {passed} passed, {failed} failed, {skipped} skipped")
    }
}

/// FNV-1a, so that each law's seed depends on its name and not its position.
fn name_hash(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// splitmix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trial_seed(seed: u64, law: &str, trial: usize) -> u64 {
    mix(mix(seed ^ name_hash(law)) ^ trial as u64)
}

fn run_trial(law: &Law, setup: &Setup, seed: u64, trial: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, law.name, trial));
    match catch_unwind(AssertUnwindSafe(|| (law.run)(setup, &mut rng))) {
        Ok(outcome) => outcome,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Err(format!("panicked: {msg}"))
        }
    }
}

fn run_law(law: &Law, setup: &Setup, trials: usize, seed: u64) -> LawReport {
    let mut report = LawReport {
        suite: law.suite,
        name: law.name,
        runs: 0,
        failures: 0,
        first_failure: None,
        skipped: None,
        note: law.note.and_then(|f| f(setup)),
    };
    if let Err(why) = setup.satisfies(law.needs) {
        report.skipped = Some(why);
        return report;
    }
    let runs = match law.mode {
        Mode::Random => trials,
        Mode::Once => 1,
    };
    #[cfg(feature = "parallel")]
    let outcomes: Vec<_> = (0..runs)
        .into_par_iter()
        .map(|t| run_trial(law, setup, seed, t))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<_> = (0..runs).map(|t| run_trial(law, setup, seed, t)).collect();
    report.runs = runs;
    for (t, o) in outcomes.into_iter().enumerate() {
        if let Err(what) = o {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some((t, what));
            }
        }
    }
    report
}

/// Runs every law whose suite or name contains `filter` (all when `None`).
pub fn run_check(setup: &Setup, trials: usize, seed: u64, filter: Option<&str>) -> Report {
    let laws: Vec<Law> = registry()
        .into_iter()
        .filter(|l| filter.is_none_or(|f| l.suite.contains(f) || l.name.contains(f)))
        .collect();
    #[cfg(feature = "parallel")]
    let reports = laws.par_iter().map(|l| run_law(l, setup, trials, seed)).collect();
    #[cfg(not(feature = "parallel"))]
    let reports = laws.iter().map(|l| run_law(l, setup, trials, seed)).collect();
    Report { laws: reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(trial_seed(0, "a", 1), trial_seed(0, "a", 1));
        assert_ne!(trial_seed(0, "a", 1), trial_seed(0, "a", 2));
        assert_ne!(trial_seed(0, "a", 1), trial_seed(0, "b", 1));
        assert_ne!(trial_seed(0, "a", 1), trial_seed(1, "a", 1));
    }
}
