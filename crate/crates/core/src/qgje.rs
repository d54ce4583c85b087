//! Gauss-Jordan elimination whose pivot search runs Grover's algorithm on
//! the simulator, together with the run report that sets the simulated
//! ledger next to the closed-form operation counts.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cost::{self, CostModel};
use crate::grover::{grover_search, GroverPlan, Oracle};
use crate::labeled_rng;
use crate::ledger::CostLedger;
use crate::linalg::{rref, rref_classical, AugmentedSystem, Matrix, PivotStrategy, RrefResult};
use crate::rational::Rational;

/// Searches `column[start..]` for a nonzero entry with Grover's algorithm.
///
/// The register has `max(1, ⌈log2(len - start)⌉)` qubits; padding indices
/// past the end of the column are unmarked, so measuring one fails
/// verification and triggers a retry. Misses on every rung of the retry
/// ladder end in a classical scan, so the answer is exact: a verified
/// nonzero row, or `None` for an all-zero tail.
pub fn grover_pivot<R: Rng + ?Sized>(
    column: &[Rational],
    start: usize,
    ledger: &mut CostLedger,
    rng: &mut R,
) -> Option<usize> {
    let len = column.len().saturating_sub(start);
    if len == 0 {
        return None;
    }
    let n_qubits = (len.next_power_of_two().trailing_zeros() as usize).max(1);
    let tail = &column[start..];
    let mut oracle = Oracle::from_predicate(n_qubits, |i| i < len && !tail[i].is_zero())
        .expect("at least one qubit");
    let plan = GroverPlan::new(n_qubits, None).expect("at least one qubit");
    let result = grover_search(&mut oracle, rng, &plan, true).expect("plan matches oracle");
    ledger.grover_iterations += result.grover_iterations;
    ledger.oracle_queries += result.oracle_queries;
    ledger.measurements += result.measurements;
    result.found.map(|i| start + i)
}

/// [`PivotStrategy`] backed by [`grover_pivot`].
#[derive(Debug, Clone)]
pub struct GroverPivotStrategy {
    rng: ChaCha8Rng,
    searches: u64,
}

impl GroverPivotStrategy {
    pub fn new(seed: u64) -> Self {
        GroverPivotStrategy {
            rng: labeled_rng(seed, "pivot"),
            searches: 0,
        }
    }

    pub fn from_rng(rng: ChaCha8Rng) -> Self {
        GroverPivotStrategy { rng, searches: 0 }
    }

    /// Number of pivot searches run so far.
    pub fn searches(&self) -> u64 {
        self.searches
    }
}

impl PivotStrategy for GroverPivotStrategy {
    fn find_pivot(
        &mut self,
        column: &[Rational],
        start: usize,
        ledger: &mut CostLedger,
    ) -> Option<usize> {
        self.searches += 1;
        grover_pivot(column, start, ledger, &mut self.rng)
    }

    fn name(&self) -> &'static str {
        "grover"
    }
}

#[derive(Debug, Clone)]
pub struct QgjeReport {
    pub rref_result: RrefResult,
    pub ledger: CostLedger,
    pub model: CostModel,
    /// Number of elimination rounds the formulas are evaluated at.
    pub rounds: u64,
    pub paper_total: f64,
    pub closed_form_total: f64,
    pub printed_form_total: f64,
    pub ratio_to_2_half_n: f64,
}

/// RREF of `system` with Grover pivot search, seeded by `seed`.
///
/// The formulas are evaluated at `N` = number of rows.
pub fn qgje_rref(system: &AugmentedSystem, seed: u64) -> QgjeReport {
    let mut ledger = CostLedger::new();
    let mut strategy = GroverPivotStrategy::new(seed);
    let rref_result = rref(system, &mut strategy, &mut ledger);
    let rounds = system.coefficients().rows() as u64;
    QgjeReport {
        rref_result,
        ledger,
        model: CostModel::Simulated,
        rounds,
        paper_total: cost::paper_cost_total(rounds),
        closed_form_total: cost::closed_form_cost(rounds),
        printed_form_total: cost::printed_theorem_cost(rounds),
        ratio_to_2_half_n: cost::ratio_to_half_power(rounds),
    }
}

/// Random `n × n` system with integer entries in `[-9, 9]` and a
/// nonsingular coefficient matrix.
pub fn random_invertible_system<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AugmentedSystem {
    loop {
        let entries = (0..n * n)
            .map(|_| Rational::from_integer(rng.random_range(-9..=9)))
            .collect();
        let rhs = (0..n)
            .map(|_| Rational::from_integer(rng.random_range(-9..=9)))
            .collect();
        let a = Matrix::new(n, n, entries).expect("n >= 1");
        let sys = AugmentedSystem::new(a, rhs).expect("rhs matches rows");
        if rref_classical(&sys).coefficient_rank() == n {
            return sys;
        }
    }
}

/// Settings for the simulated column of [`cost_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimulationSettings {
    pub seed: u64,
    pub trials: usize,
    /// Largest `N` that gets a simulated mean.
    pub max_n: u64,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        SimulationSettings {
            seed: 0,
            trials: 8,
            max_n: 10,
        }
    }
}

/// Mean simulated ledger total over random invertible `n × n` systems.
pub fn simulated_mean_total(n: usize, settings: &SimulationSettings) -> f64 {
    let mut rng = labeled_rng(settings.seed, &format!("cost-sim-{n}"));
    let trials = settings.trials.max(1);
    let total: u64 = (0..trials)
        .map(|_| {
            let sys = random_invertible_system(n, &mut rng);
            let run_seed = rng.random();
            qgje_rref(&sys, run_seed).ledger.total()
        })
        .sum();
    total as f64 / trials as f64
}

/// One row per `N = 1..=n_max`: formula columns always, simulated mean when
/// `sim` is given and `N <= sim.max_n`.
pub fn cost_report(n_max: u64, sim: Option<&SimulationSettings>) -> Vec<cost::CostRow> {
    (1..=n_max)
        .map(|n| {
            let mut row = cost::CostRow::formulas(n);
            if let Some(settings) = sim.filter(|s| n <= s.max_n) {
                row.simulated_mean = Some(simulated_mean_total(n as usize, settings));
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::replay_row_ops;
    use rand::SeedableRng;

    fn seeded(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn col(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn pivot_single_nonzero() {
        let mut ledger = CostLedger::new();
        let mut rng = seeded(0);
        assert_eq!(
            grover_pivot(&col(&[0, 0, 5, 0]), 0, &mut ledger, &mut rng),
            Some(2)
        );
        // K = 4, t = 1: one iterate, one measurement, one verification
        assert_eq!(ledger.grover_iterations, 1);
        assert_eq!(ledger.measurements, 1);
        assert_eq!(ledger.oracle_queries, 2);
    }

    #[test]
    fn pivot_all_zero() {
        let mut ledger = CostLedger::new();
        let mut rng = seeded(1);
        assert_eq!(
            grover_pivot(&col(&[0, 0, 0]), 0, &mut ledger, &mut rng),
            None
        );
        assert_eq!(grover_pivot(&col(&[3, 0]), 2, &mut ledger, &mut rng), None);
        assert_eq!(grover_pivot(&col(&[3, 0]), 1, &mut ledger, &mut rng), None);
        assert_eq!(grover_pivot(&[], 0, &mut ledger, &mut rng), None);
    }

    #[test]
    fn pivot_any_nonzero() {
        let c = col(&[3, 1, 4, 1, 5, 9, 2, 6]);
        for seed in 0..100 {
            let mut rng = seeded(seed);
            let i = grover_pivot(&c, 0, &mut CostLedger::new(), &mut rng).unwrap();
            assert!(!c[i].is_zero());
        }
    }

    #[test]
    fn pivot_respects_start() {
        let c = col(&[7, 0, 0, 2, 0]);
        for seed in 0..20 {
            let mut rng = seeded(seed);
            assert_eq!(
                grover_pivot(&c, 1, &mut CostLedger::new(), &mut rng),
                Some(3)
            );
        }
    }

    #[test]
    fn identity_needs_no_elimination() {
        let a = Matrix::identity(3).unwrap();
        let sys = AugmentedSystem::new(a, col(&[1, 2, 3])).unwrap();
        let report = qgje_rref(&sys, 5);
        assert_eq!(report.rref_result.reduced, sys.augmented());
        assert_eq!(report.rref_result.rank, 3);
        assert_eq!(report.ledger.additions, 0);
        assert_eq!(report.ledger.multiplications, 0);
        assert!(report.ledger.grover_iterations > 0);
    }

    #[test]
    fn matches_classical_on_random_systems() {
        let mut rng = seeded(77);
        for n in 1..=5 {
            let sys = random_invertible_system(n, &mut rng);
            let classical = rref_classical(&sys);
            let report = qgje_rref(&sys, n as u64);
            assert_eq!(report.rref_result.reduced, classical.reduced);
            assert_eq!(report.rref_result.pivot_columns, classical.pivot_columns);
            let (replayed, mults) =
                replay_row_ops(&sys.augmented(), &report.rref_result.row_op_log).unwrap();
            assert_eq!(replayed, report.rref_result.reduced);
            assert_eq!(mults, report.ledger.multiplications);
        }
    }

    #[test]
    fn report_formulas() {
        let sys = random_invertible_system(4, &mut seeded(3));
        let report = qgje_rref(&sys, 0);
        assert_eq!(report.rounds, 4);
        assert_eq!(report.paper_total, report.closed_form_total);
        assert_eq!(report.model, CostModel::Simulated);
    }

    #[test]
    fn report_rows() {
        let rows = cost_report(
            4,
            Some(&SimulationSettings {
                seed: 1,
                trials: 2,
                max_n: 3,
            }),
        );
        assert_eq!(rows.len(), 4);
        assert!(rows[2].simulated_mean.is_some());
        assert!(rows[3].simulated_mean.is_none());
        assert!(cost_report(3, None)
            .iter()
            .all(|r| r.simulated_mean.is_none()));
    }
}
