//! The acceptance suite: eleven exact checks over random and exhaustive
//! instances, each reporting a single pass or fail line.

use std::time::{Duration, Instant};

mod algebra;
mod combinatorics;
pub mod oracle;
mod serialization;

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    /// Time budget, if the criterion has one.
    pub budget: Option<Duration>,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "AC{:<2} {} {} ({:.2}s) {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn() -> Result<String, String>;

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub budget: Option<Duration>,
    check: Check,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "cohomology oracle", budget: secs(10), check: algebra::cohomology_oracle },
    Criterion { id: 2, name: "long exact sequence", budget: secs(15), check: algebra::les_exactness },
    Criterion { id: 3, name: "hom and ext grid", budget: None, check: algebra::ext_grid },
    Criterion { id: 4, name: "fraction class functoriality", budget: secs(30), check: algebra::fraction_functoriality },
    Criterion { id: 5, name: "roof and diamond soundness", budget: None, check: algebra::diamond_soundness },
    Criterion { id: 6, name: "butterfly functoriality", budget: secs(20), check: algebra::butterfly_functoriality },
    Criterion { id: 7, name: "roof complex", budget: None, check: algebra::roof_complex },
    Criterion { id: 8, name: "lambda sweep", budget: secs(60), check: combinatorics::lambda_sweep },
    Criterion { id: 9, name: "psi trichotomy", budget: None, check: combinatorics::psi_trichotomy },
    Criterion { id: 10, name: "phi sample", budget: None, check: combinatorics::phi_sample },
    Criterion { id: 11, name: "serialization", budget: None, check: serialization::round_trips },
];

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let result = std::panic::catch_unwind(self.check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(b) = self.budget {
            if passed && elapsed > b {
                passed = false;
                detail = format!("{detail}; over the {}s budget", b.as_secs());
            }
        }
        Outcome {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed,
            budget: self.budget,
        }
    }
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(Criterion::run).collect()
}

/// Fails the enclosing check with a formatted message.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}
pub(crate) use ensure;

/// Turns a library error into a check failure with context.
pub(crate) trait Context<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T, E: std::fmt::Display> Context<T> for Result<T, E> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}
