//! n-term B-form union versus the 2^n - 1 term expansion.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tomography;
use crate::whitney::{instrument, TermCounter, WhitneyOracle, DEFAULT_CAP};
use crate::workload;

pub const CSV_HEADER: &str = "n,bform_calls,whitney_terms,bform_ns,whitney_ns,agree";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("n_max must be in 1..={cap}, got {n_max}")]
    SizeOutOfRange { n_max: usize, cap: usize },
    #[error("probes_per_n must be positive")]
    NoProbes,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub n_max: usize,
    pub probes_per_n: usize,
    pub seed: u64,
    /// Each timing loop repeats until at least this much time has passed.
    pub min_sample: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { n_max: 16, probes_per_n: 32, seed: 1, min_sample: Duration::from_millis(20) }
    }
}

/// One collection size. Calls and terms are per probe; times are mean
/// nanoseconds per probe evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub bform_calls: u64,
    pub whitney_terms: u64,
    pub bform_ns: f64,
    pub whitney_ns: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

fn mean_ns<F: FnMut()>(min_sample: Duration, mut f: F) -> f64 {
    let start = Instant::now();
    let mut reps = 0u64;
    loop {
        f();
        reps += 1;
        let elapsed = start.elapsed();
        if elapsed >= min_sample {
            return elapsed.as_nanos() as f64 / reps as f64;
        }
    }
}

/// Runs both evaluators on the same random collection and probes for every
/// `n` in `1..=n_max`. Timing is single-threaded.
pub fn run(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.n_max == 0 || cfg.n_max > DEFAULT_CAP {
        return Err(BenchError::SizeOutOfRange { n_max: cfg.n_max, cap: DEFAULT_CAP });
    }
    if cfg.probes_per_n == 0 {
        return Err(BenchError::NoProbes);
    }
    let oracle = WhitneyOracle::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.n_max);
    for n in 1..=cfg.n_max {
        let c = workload::interval_collection(&mut rng, n);
        let probes = workload::probes(&mut rng, cfg.probes_per_n);

        let (counted, calls) = instrument(&c);
        let mut bform_calls = 0;
        let mut whitney_terms = 0;
        let mut agree = true;
        for x in &probes {
            calls.reset();
            let fast = tomography::union(&counted, x);
            bform_calls = bform_calls.max(calls.get());
            let mut counter = TermCounter::default();
            let slow = oracle.union(&c, x, &mut counter).expect("n within cap");
            whitney_terms = whitney_terms.max(counter.terms_evaluated);
            agree &= fast == slow;
        }

        let bform_ns = mean_ns(cfg.min_sample, || {
            for x in &probes {
                black_box(tomography::union(&c, black_box(x)));
            }
        }) / probes.len() as f64;
        let whitney_ns = mean_ns(cfg.min_sample, || {
            for x in &probes {
                let mut counter = TermCounter::default();
                black_box(oracle.union(&c, black_box(x), &mut counter).expect("n within cap"));
            }
        }) / probes.len() as f64;

        rows.push(BenchRow { n, bform_calls, whitney_terms, bform_ns, whitney_ns, agree });
    }
    Ok(BenchReport { rows })
}

impl BenchReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn row(&self, n: usize) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{:.1},{:.1},{}",
                r.n, r.bform_calls, r.whitney_terms, r.bform_ns, r.whitney_ns, r.agree
            )
            .expect("writing to a String");
        }
        out
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "{:>3} {:>11} {:>13} {:>12} {:>14} {:>7}\n",
            "n", "bform_calls", "whitney_terms", "bform_ns", "whitney_ns", "agree"
        );
        for r in &self.rows {
            writeln!(
                out,
                "{:>3} {:>11} {:>13} {:>12.1} {:>14.1} {:>7}",
                r.n, r.bform_calls, r.whitney_terms, r.bform_ns, r.whitney_ns, r.agree
            )
            .expect("writing to a String");
        }
        out
    }

    /// Checks the growth pattern across `checkpoints` (increasing sizes present
    /// in the report): the time ratio whitney/bform strictly increases, and
    /// whitney time grows faster than `n` between consecutive checkpoints.
    pub fn check_growth(&self, checkpoints: &[usize]) -> Result<(), String> {
        let rows: Vec<&BenchRow> = checkpoints
            .iter()
            .map(|&n| self.row(n).ok_or_else(|| format!("no row for n = {n}")))
            .collect::<Result<_, _>>()?;
        for pair in rows.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let (ra, rb) = (a.whitney_ns / a.bform_ns, b.whitney_ns / b.bform_ns);
            if rb.partial_cmp(&ra) != Some(Ordering::Greater) {
                return Err(format!("ratio did not grow from n = {} ({ra:.2}) to n = {} ({rb:.2})", a.n, b.n));
            }
            let growth = b.whitney_ns / a.whitney_ns;
            let linear = b.n as f64 / a.n as f64;
            if growth.partial_cmp(&linear) != Some(Ordering::Greater) {
                return Err(format!(
                    "whitney time grew by {growth:.2} from n = {} to n = {}, not more than {linear:.2}",
                    a.n, b.n
                ));
            }
        }
        Ok(())
    }
}

/// Exact expected term count for one probe of the expansion.
pub fn expected_terms(n: usize) -> u64 {
    (1u64 << n) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(n_max: usize) -> BenchConfig {
        BenchConfig { n_max, probes_per_n: 4, seed: 3, min_sample: Duration::from_micros(50) }
    }

    #[test]
    fn small_rows() {
        let report = run(&quick(3)).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert_eq!(report.row(2).unwrap().whitney_terms, 3);
        assert_eq!(report.row(3).unwrap().whitney_terms, 7);
        for r in &report.rows {
            assert_eq!(r.bform_calls, r.n as u64);
            assert!(r.agree);
        }
        let csv = report.to_csv();
        assert!(csv.starts_with("n,bform_calls,whitney_terms,bform_ns,whitney_ns,agree\n1,1,1,"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(run(&quick(0)), Err(BenchError::SizeOutOfRange { n_max: 0, cap: 24 }));
        assert!(run(&quick(25)).is_err());
        let mut cfg = quick(2);
        cfg.probes_per_n = 0;
        assert_eq!(run(&cfg), Err(BenchError::NoProbes));
    }

    #[test]
    fn growth_check_reports_missing_rows() {
        let report = run(&quick(2)).unwrap();
        assert!(report.check_growth(&[1, 5]).is_err());
        assert_eq!(expected_terms(3), 7);
    }
}
