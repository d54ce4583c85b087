use std::fmt;

use serde::Serialize;

/// Typed operation counters charged by elimination and search.
///
/// Counters only ever grow during a run. `control_ops` counts the loop
/// checks that decide whether another elimination round is needed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CostLedger {
    pub multiplications: u64,
    pub additions: u64,
    pub subtractions: u64,
    pub comparisons: u64,
    pub control_ops: u64,
    pub grover_iterations: u64,
    pub oracle_queries: u64,
    pub measurements: u64,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.multiplications
            + self.additions
            + self.subtractions
            + self.comparisons
            + self.control_ops
            + self.grover_iterations
            + self.oracle_queries
            + self.measurements
    }

    /// Adds every counter of `other` into `self`.
    pub fn absorb(&mut self, other: &CostLedger) {
        self.multiplications += other.multiplications;
        self.additions += other.additions;
        self.subtractions += other.subtractions;
        self.comparisons += other.comparisons;
        self.control_ops += other.control_ops;
        self.grover_iterations += other.grover_iterations;
        self.oracle_queries += other.oracle_queries;
        self.measurements += other.measurements;
    }

    /// `(name, value)` pairs in a fixed order, for reports.
    pub fn entries(&self) -> [(&'static str, u64); 8] {
        [
            ("multiplications", self.multiplications),
            ("additions", self.additions),
            ("subtractions", self.subtractions),
            ("comparisons", self.comparisons),
            ("control_ops", self.control_ops),
            ("grover_iterations", self.grover_iterations),
            ("oracle_queries", self.oracle_queries),
            ("measurements", self.measurements),
        ]
    }
}

impl fmt::Display for CostLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in self.entries() {
            writeln!(f, "{name:<18} {value}")?;
        }
        write!(f, "{:<18} {}", "total", self.total())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_is_sum_of_counters() {
        let ledger = CostLedger {
            multiplications: 1,
            additions: 2,
            subtractions: 3,
            comparisons: 4,
            control_ops: 5,
            grover_iterations: 6,
            oracle_queries: 7,
            measurements: 8,
        };
        assert_eq!(ledger.total(), 36);
        let mut acc = CostLedger::new();
        acc.absorb(&ledger);
        acc.absorb(&ledger);
        assert_eq!(acc.total(), 72);
        assert_eq!(acc.entries().iter().map(|e| e.1).sum::<u64>(), 72);
    }
}
