//! Grover search on the state-vector simulator, with classical
//! verification of every measured candidate, and Deutsch's one-query
//! constant/balanced test.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::qsim::{GateMatrix1Q, QsimError, StateVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroverError {
    #[error("oracle acts on {oracle} qubits but the state has {state}")]
    SizeMismatch { oracle: usize, state: usize },
    #[error("invalid counts: need 1 <= t <= K, got K = {k}, t = {t}")]
    InvalidCounts { k: usize, t: usize },
    #[error("marked index {index} out of range for {len} basis states")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Qsim(#[from] QsimError),
}

/// Marks a subset of the `2^n` basis indices and counts how often it is
/// consulted: once per classical predicate evaluation, once per quantum
/// phase-flip application.
#[derive(Debug, Clone)]
pub struct Oracle {
    n_qubits: usize,
    marked: Vec<bool>,
    query_count: u64,
}

impl Oracle {
    pub fn from_predicate(
        n_qubits: usize,
        pred: impl Fn(usize) -> bool,
    ) -> Result<Self, GroverError> {
        if n_qubits == 0 {
            return Err(QsimError::ZeroQubits.into());
        }
        Ok(Oracle {
            n_qubits,
            marked: (0..1usize << n_qubits).map(pred).collect(),
            query_count: 0,
        })
    }

    pub fn from_indices(n_qubits: usize, indices: &[usize]) -> Result<Self, GroverError> {
        let len = 1usize << n_qubits;
        if let Some(&index) = indices.iter().find(|&&i| i >= len) {
            return Err(GroverError::IndexOutOfRange { index, len });
        }
        Self::from_predicate(n_qubits, |i| indices.contains(&i))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn search_size(&self) -> usize {
        self.marked.len()
    }

    /// Classical query; counts one oracle call.
    pub fn is_marked(&mut self, index: usize) -> bool {
        self.query_count += 1;
        self.marked.get(index).copied().unwrap_or(false)
    }

    /// The marked set, read without charging a query.
    pub fn marked_indices(&self) -> Vec<usize> {
        (0..self.marked.len()).filter(|&i| self.marked[i]).collect()
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    /// Total probability mass on marked indices, without charging a query.
    pub fn marked_probability(&self, state: &StateVector) -> f64 {
        state
            .amplitudes()
            .iter()
            .zip(&self.marked)
            .filter(|(_, &m)| m)
            .map(|(a, _)| a.norm_sqr())
            .sum()
    }
}

/// Iteration counts `⌊(π/4)·√(K/2^j)⌋` for `j = 0..=log2 K`, the retry
/// ladder used when the number of marked items is unknown.
pub fn default_retry_schedule(search_size: usize) -> Vec<usize> {
    let levels = search_size.trailing_zeros() as usize;
    (0..=levels)
        .map(|j| (FRAC_PI_4 * (search_size as f64 / (1u64 << j) as f64).sqrt()).floor() as usize)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroverPlan {
    pub n_qubits: usize,
    pub search_size: usize,
    pub t_hint: Option<usize>,
    /// Iterations of the first attempt.
    pub iterations: usize,
    /// Iteration counts of later attempts, tried in order.
    pub retry_schedule: Vec<usize>,
    pub max_retries: usize,
}

impl GroverPlan {
    /// With `t_hint = Some(t)` the first attempt runs `⌊(π/4)·√(K/t)⌋`
    /// iterations and falls back to the default ladder; without a hint
    /// the ladder is used from its first rung.
    pub fn new(n_qubits: usize, t_hint: Option<usize>) -> Result<Self, GroverError> {
        if n_qubits == 0 {
            return Err(QsimError::ZeroQubits.into());
        }
        let k = 1usize << n_qubits;
        let ladder = default_retry_schedule(k);
        let (iterations, retry_schedule) = match t_hint {
            Some(t) => {
                if t == 0 || t > k {
                    return Err(GroverError::InvalidCounts { k, t });
                }
                (
                    (FRAC_PI_4 * (k as f64 / t as f64).sqrt()).floor() as usize,
                    ladder,
                )
            }
            None => (ladder[0], ladder[1..].to_vec()),
        };
        Ok(GroverPlan {
            n_qubits,
            search_size: k,
            t_hint,
            iterations,
            max_retries: retry_schedule.len(),
            retry_schedule,
        })
    }

    pub fn with_iterations(mut self, m: usize) -> Self {
        self.iterations = m;
        self
    }

    /// Iteration counts of every attempt, first attempt included.
    pub fn attempts(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.iterations)
            .chain(self.retry_schedule.iter().copied().take(self.max_retries))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SearchResult {
    pub found: Option<usize>,
    pub verified: bool,
    pub oracle_queries: u64,
    pub grover_iterations: u64,
    pub measurements: u64,
    /// Indices inspected by the classical fallback.
    pub fallback_scanned: u64,
}

/// `|S⟩`, the uniform superposition over all `2^n` basis states.
pub fn uniform_state(n: usize) -> Result<StateVector, GroverError> {
    let mut s = StateVector::basis_state(n, 0)?;
    for w in 0..n {
        s.hadamard_mut(w);
    }
    Ok(s)
}

/// Negates the amplitudes of marked indices. Counts one oracle query.
pub fn oracle_reflect(
    state: &StateVector,
    oracle: &mut Oracle,
) -> Result<StateVector, GroverError> {
    if state.n_qubits() != oracle.n_qubits {
        return Err(GroverError::SizeMismatch {
            oracle: oracle.n_qubits,
            state: state.n_qubits(),
        });
    }
    oracle.query_count += 1;
    let mut out = state.clone();
    for (a, &m) in out.amps_mut().iter_mut().zip(&oracle.marked) {
        if m {
            *a = -*a;
        }
    }
    Ok(out)
}

/// Reflection `2|S⟩⟨S| - I`: every amplitude `a` becomes `2·mean - a`.
pub fn diffusion(state: &StateVector) -> StateVector {
    let mut out = state.clone();
    let amps = out.amps_mut();
    let mean = amps.iter().sum::<Complex64>() / amps.len() as f64;
    for a in amps.iter_mut() {
        *a = 2.0 * mean - *a;
    }
    out
}

/// One Grover iterate: oracle reflection, then diffusion.
pub fn grover_iterate(
    state: &StateVector,
    oracle: &mut Oracle,
) -> Result<StateVector, GroverError> {
    Ok(diffusion(&oracle_reflect(state, oracle)?))
}

/// `max(0, round(π/(4·asin√(t/K)) - 1/2))`.
pub fn iteration_count(search_size: usize, marked: usize) -> Result<usize, GroverError> {
    if marked == 0 || marked > search_size {
        return Err(GroverError::InvalidCounts {
            k: search_size,
            t: marked,
        });
    }
    let phi = (marked as f64 / search_size as f64).sqrt().asin();
    Ok((FRAC_PI_4 / phi - 0.5).round().max(0.0) as usize)
}

/// Success probability `sin²((2m+1)·asin√(t/K))` after `m` iterates.
pub fn rotation_law(search_size: usize, marked: usize, m: usize) -> f64 {
    let phi = (marked as f64 / search_size as f64).sqrt().asin();
    ((2 * m + 1) as f64 * phi).sin().powi(2)
}

/// Marked-probability after each of `0..=m` iterates from `|S⟩`.
pub fn marked_probability_trace(oracle: &mut Oracle, m: usize) -> Result<Vec<f64>, GroverError> {
    let mut state = uniform_state(oracle.n_qubits)?;
    let mut trace = vec![oracle.marked_probability(&state)];
    for _ in 0..m {
        state = grover_iterate(&state, oracle)?;
        trace.push(oracle.marked_probability(&state));
    }
    Ok(trace)
}

/// Runs the attempts of `plan`, verifying every measured index with one
/// classical query. When all attempts miss and `classical_fallback` is set,
/// scans the indices in order. A returned index is always verified.
pub fn grover_search<R: Rng + ?Sized>(
    oracle: &mut Oracle,
    rng: &mut R,
    plan: &GroverPlan,
    classical_fallback: bool,
) -> Result<SearchResult, GroverError> {
    if plan.n_qubits != oracle.n_qubits {
        return Err(GroverError::SizeMismatch {
            oracle: oracle.n_qubits,
            state: plan.n_qubits,
        });
    }
    let start_queries = oracle.query_count;
    let mut result = SearchResult::default();
    let finish = |mut r: SearchResult, oracle: &Oracle| {
        r.oracle_queries = oracle.query_count - start_queries;
        r
    };

    let uniform = uniform_state(oracle.n_qubits)?;
    for m in plan.attempts() {
        let mut state = uniform.clone();
        for _ in 0..m {
            state = grover_iterate(&state, oracle)?;
        }
        result.grover_iterations += m as u64;
        let candidate = state.measure(rng).basis_index;
        result.measurements += 1;
        if oracle.is_marked(candidate) {
            result.found = Some(candidate);
            result.verified = true;
            return Ok(finish(result, oracle));
        }
    }

    if classical_fallback {
        for i in 0..oracle.search_size() {
            result.fallback_scanned += 1;
            if oracle.is_marked(i) {
                result.found = Some(i);
                result.verified = true;
                break;
            }
        }
    }
    Ok(finish(result, oracle))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeutschClass {
    Constant,
    Balanced,
}

/// Classifies `f: {0,1} → {0,1}`, given as its truth table, with a single
/// application of `U_f |x, y⟩ = |x, y ⊕ f(x)⟩`.
///
/// Wire 1 holds `x`, wire 0 the ancilla prepared in `|1⟩`. After
/// `H⊗H`, `U_f` and `H` on wire 1, wire 1 reads 0 for a constant `f`
/// and 1 for a balanced one, with certainty.
pub fn deutsch_classify(table: [bool; 2]) -> DeutschClass {
    let run = || -> Result<f64, QsimError> {
        let mut s = StateVector::basis_state(2, 0b01)?
            .apply_hadamard(0)?
            .apply_hadamard(1)?;
        if table[0] != table[1] {
            s = s.apply_cnot(1, 0)?;
        }
        if table[0] {
            s = s.apply_gate(0, &GateMatrix1Q::pauli_x())?;
        }
        s.apply_hadamard(1)?.wire_probability(1)
    };
    let p_one = run().expect("two-qubit circuit is well formed");
    if p_one > 0.5 {
        DeutschClass::Balanced
    } else {
        DeutschClass::Constant
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_states() {
        let s = uniform_state(1).unwrap();
        let h = StateVector::basis_state(1, 0)
            .unwrap()
            .apply_hadamard(0)
            .unwrap();
        assert!(s.distance(&h) < 1e-15);
        let s = uniform_state(2).unwrap();
        assert!(s
            .amplitudes()
            .iter()
            .all(|a| (a - Complex64::new(0.5, 0.0)).norm() < 1e-15));
        let p = uniform_state(5).unwrap().probabilities();
        assert!(p.iter().all(|&x| (x - 1.0 / 32.0).abs() < 1e-15));
    }

    #[test]
    fn oracle_reflection() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = StateVector::random(3, &mut rng).unwrap();
        let mut o = Oracle::from_indices(3, &[5]).unwrap();
        let r = oracle_reflect(&s, &mut o).unwrap();
        for i in 0..8 {
            let want = if i == 5 {
                -s.amplitudes()[i]
            } else {
                s.amplitudes()[i]
            };
            assert_eq!(r.amplitudes()[i], want);
        }
        assert_eq!(o.query_count(), 1);
        let mut empty = Oracle::from_indices(3, &[]).unwrap();
        assert_eq!(oracle_reflect(&s, &mut empty).unwrap(), s);
        let twice = oracle_reflect(&r, &mut o).unwrap();
        assert_eq!(twice, s);
        assert_eq!(o.query_count(), 2);
        let mut small = Oracle::from_indices(2, &[1]).unwrap();
        assert!(matches!(
            oracle_reflect(&s, &mut small),
            Err(GroverError::SizeMismatch { .. })
        ));
        assert!(Oracle::from_indices(2, &[4]).is_err());
    }

    #[test]
    fn diffusion_examples() {
        let s = uniform_state(3).unwrap();
        assert!(diffusion(&s).distance(&s) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = StateVector::random(4, &mut rng).unwrap();
        assert!(diffusion(&diffusion(&r)).distance(&r) < 1e-12);
        let d = diffusion(&StateVector::basis_state(2, 3).unwrap());
        let want = [0.5, 0.5, 0.5, -0.5];
        for (a, w) in d.amplitudes().iter().zip(want) {
            assert!((a - Complex64::new(w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn diffusion_matches_hadamard_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = StateVector::random(3, &mut rng).unwrap();
        let mut s = r.clone();
        for w in 0..3 {
            s = s.apply_hadamard(w).unwrap();
        }
        // 2|0⟩⟨0| - I
        for (i, a) in s.amps_mut().iter_mut().enumerate() {
            if i != 0 {
                *a = -*a;
            }
        }
        for w in 0..3 {
            s = s.apply_hadamard(w).unwrap();
        }
        assert!(s.distance(&diffusion(&r)) < 1e-12);
    }

    #[test]
    fn single_iterate_solves_four_items() {
        for k in 0..4 {
            let mut o = Oracle::from_indices(2, &[k]).unwrap();
            let s = grover_iterate(&uniform_state(2).unwrap(), &mut o).unwrap();
            assert!((s.probabilities()[k] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn all_marked_is_fixed() {
        let mut o = Oracle::from_predicate(3, |_| true).unwrap();
        let trace = marked_probability_trace(&mut o, 5).unwrap();
        assert!(trace.iter().all(|p| (p - 1.0).abs() < 1e-12));
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(iteration_count(4, 1).unwrap(), 1);
        assert_eq!(iteration_count(64, 64).unwrap(), 0);
        let m = iteration_count(1 << 20, 1).unwrap();
        assert_eq!(m, 804);
        assert!(rotation_law(1 << 20, 1, m) >= 0.999);
        assert!(iteration_count(4, 0).is_err());
        assert!(iteration_count(4, 5).is_err());
    }

    #[test]
    fn schedule() {
        assert_eq!(default_retry_schedule(64), vec![6, 4, 3, 2, 1, 1, 0]);
        let plan = GroverPlan::new(2, Some(1)).unwrap();
        assert_eq!(plan.iterations, 1);
        let plan = GroverPlan::new(6, None).unwrap();
        assert_eq!(
            plan.attempts().collect::<Vec<_>>(),
            vec![6, 4, 3, 2, 1, 1, 0]
        );
        assert!(GroverPlan::new(2, Some(0)).is_err());
    }

    #[test]
    fn search_four_items() {
        let mut o = Oracle::from_indices(2, &[2]).unwrap();
        let plan = GroverPlan::new(2, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = grover_search(&mut o, &mut rng, &plan, true).unwrap();
        assert_eq!(r.found, Some(2));
        assert!(r.verified);
        assert_eq!(r.grover_iterations, 1);
        assert_eq!(r.oracle_queries, 2);
        assert_eq!(r.measurements, 1);
    }

    #[test]
    fn search_empty_set() {
        let mut o = Oracle::from_indices(3, &[]).unwrap();
        let plan = GroverPlan::new(3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = grover_search(&mut o, &mut rng, &plan, true).unwrap();
        assert_eq!(r.found, None);
        assert!(!r.verified);
        assert_eq!(r.fallback_scanned, 8);
        assert_eq!(
            r.oracle_queries,
            r.grover_iterations + r.measurements + r.fallback_scanned
        );
        assert_eq!(o.query_count(), r.oracle_queries);
    }

    #[test]
    fn search_three_of_sixty_four() {
        let marked = [7, 30, 51];
        for seed in 0..100 {
            let mut o = Oracle::from_indices(6, &marked).unwrap();
            let plan = GroverPlan::new(6, None).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = grover_search(&mut o, &mut rng, &plan, true).unwrap();
            assert!(r.verified);
            assert!(marked.contains(&r.found.unwrap()));
            assert_eq!(
                o.query_count(),
                r.grover_iterations + r.measurements + r.fallback_scanned
            );
        }
    }

    #[test]
    fn deutsch_tables() {
        assert_eq!(deutsch_classify([false, false]), DeutschClass::Constant);
        assert_eq!(deutsch_classify([false, true]), DeutschClass::Balanced);
        assert_eq!(deutsch_classify([true, false]), DeutschClass::Balanced);
        assert_eq!(deutsch_classify([true, true]), DeutschClass::Constant);
    }
}
