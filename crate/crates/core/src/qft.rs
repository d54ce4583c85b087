//! Fourier-basis arithmetic.
//!
//! Contains base-`q` reference arithmetic, the unitary characters of
//! `(Z/q^n)^n`, the quantum Fourier transform built from Hadamard and
//! controlled-phase gates, and a phase-rotation adder that adds a classical
//! constant to a register while it sits in the Fourier basis.

use std::f64::consts::{PI, TAU};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::qsim::{GateMatrix1Q, QsimError, StateVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArithError {
    #[error("base {0} is not >= 2")]
    InvalidBase(u64),
    #[error("digit {digit} is not below base {q}")]
    DigitOutOfRange { digit: u64, q: u64 },
    #[error("operands use different bases ({left} and {right})")]
    BaseMismatch { left: u64, right: u64 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("modulus q^n = {q}^{n} is too large")]
    ModulusTooLarge { q: u64, n: usize },
    #[error("operand {value} does not fit in {n} qubits")]
    OperandOutOfRange { value: u64, n: usize },
    #[error(transparent)]
    Qsim(#[from] QsimError),
}

/// Little-endian base-`q` digits of a non-negative integer.
///
/// Stored without trailing (most-significant) zeros; zero is `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseQDigits {
    q: u64,
    digits: Vec<u64>,
}

impl BaseQDigits {
    pub fn new(q: u64, mut digits: Vec<u64>) -> Result<Self, ArithError> {
        if q < 2 {
            return Err(ArithError::InvalidBase(q));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= q) {
            return Err(ArithError::DigitOutOfRange { digit, q });
        }
        while digits.len() > 1 && digits.last() == Some(&0) {
            digits.pop();
        }
        if digits.is_empty() {
            digits.push(0);
        }
        Ok(BaseQDigits { q, digits })
    }

    pub fn from_value(value: &BigUint, q: u64) -> Result<Self, ArithError> {
        if q < 2 {
            return Err(ArithError::InvalidBase(q));
        }
        let base = BigUint::from(q);
        let mut v = value.clone();
        let mut digits = Vec::new();
        while !v.is_zero() {
            let (quot, rem) = v.div_rem(&base);
            digits.push(rem.to_u64().expect("digit below base"));
            v = quot;
        }
        Self::new(q, digits)
    }

    pub fn from_u64(value: u64, q: u64) -> Result<Self, ArithError> {
        Self::from_value(&BigUint::from(value), q)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// `Σ digits[i] · q^i`.
    pub fn value(&self) -> BigUint {
        let base = BigUint::from(self.q);
        self.digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &base + d)
    }

    fn same_base(&self, other: &Self) -> Result<u64, ArithError> {
        if self.q != other.q {
            return Err(ArithError::BaseMismatch {
                left: self.q,
                right: other.q,
            });
        }
        Ok(self.q)
    }
}

/// Digit-wise addition: `c_i = a_i + b_i + carry_i (mod q)` with
/// `carry_{i+1} = ⌊(a_i + b_i + carry_i) / q⌋`.
pub fn classical_add_base_q(a: &BaseQDigits, b: &BaseQDigits) -> Result<BaseQDigits, ArithError> {
    let q = a.same_base(b)?;
    let len = a.digits.len().max(b.digits.len());
    let mut out = Vec::with_capacity(len + 1);
    let mut carry = 0u128;
    for i in 0..len {
        let s =
            *a.digits.get(i).unwrap_or(&0) as u128 + *b.digits.get(i).unwrap_or(&0) as u128 + carry;
        out.push((s % q as u128) as u64);
        carry = s / q as u128;
    }
    if carry > 0 {
        out.push(carry as u64);
    }
    BaseQDigits::new(q, out)
}

/// Schoolbook product, all cross terms `a_i b_j` included.
pub fn classical_mul_base_q(a: &BaseQDigits, b: &BaseQDigits) -> Result<BaseQDigits, ArithError> {
    let q = a.same_base(b)? as u128;
    let mut acc = vec![0u128; a.digits.len() + b.digits.len()];
    for (i, &ai) in a.digits.iter().enumerate() {
        let mut carry = 0u128;
        for (j, &bj) in b.digits.iter().enumerate() {
            let t = acc[i + j] + ai as u128 * bj as u128 + carry;
            acc[i + j] = t % q;
            carry = t / q;
        }
        let mut k = i + b.digits.len();
        while carry > 0 {
            let t = acc[k] + carry;
            acc[k] = t % q;
            carry = t / q;
            k += 1;
        }
    }
    BaseQDigits::new(q as u64, acc.into_iter().map(|d| d as u64).collect())
}

/// Parameters of the character `χ_a(x) = exp(2πi/qⁿ · Σ a_i x_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterParams {
    pub q: u64,
    pub a: Vec<i64>,
}

impl CharacterParams {
    pub fn new(q: u64, a: Vec<i64>) -> Result<Self, ArithError> {
        if q < 2 {
            return Err(ArithError::InvalidBase(q));
        }
        let params = CharacterParams { q, a };
        params.modulus()?;
        Ok(params)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `q^n`, bounded so that products of reduced residues fit in `u128`.
    pub fn modulus(&self) -> Result<u64, ArithError> {
        let too_large = || ArithError::ModulusTooLarge {
            q: self.q,
            n: self.n(),
        };
        let exp = u32::try_from(self.n()).map_err(|_| too_large())?;
        match self.q.checked_pow(exp) {
            Some(m) if m <= 1 << 62 => Ok(m),
            _ => Err(too_large()),
        }
    }

    /// Evaluates `χ_a(x)`. Each component is reduced mod `q^n` first, so
    /// the exponent is computed exactly and `χ_a(0)` is exactly one.
    pub fn character(&self, x: &[i64]) -> Result<Complex64, ArithError> {
        if x.len() != self.n() {
            return Err(ArithError::LengthMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        let modulus = self.modulus()? as i128;
        let sum = self.a.iter().zip(x).fold(0i128, |acc, (&ai, &xi)| {
            let p = (ai as i128).rem_euclid(modulus) * (xi as i128).rem_euclid(modulus);
            (acc + p % modulus) % modulus
        });
        if sum == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        Ok(Complex64::from_polar(
            1.0,
            TAU * sum as f64 / modulus as f64,
        ))
    }
}

/// Convenience wrapper for [`CharacterParams::character`].
pub fn character(params: &CharacterParams, x: &[i64]) -> Result<Complex64, ArithError> {
    params.character(x)
}

/// Phase angle `2π·⌊(a_i+b_i)/q⌋ / q^{i-1}` of the carry correction for
/// digit `i`, to be used with [`StateVector::apply_phase`].
pub fn carry_phase_angle(a_i: u64, b_i: u64, q: u64, i: i32) -> f64 {
    let carry = ((a_i + b_i) / q) as f64;
    TAU * carry / (q as f64).powi(i - 1)
}

fn controlled_phase_mut(state: &mut StateVector, control: usize, target: usize, phi: f64) {
    let gate = GateMatrix1Q::phase(phi).expect("finite angle");
    state.apply_1q_mut(target, &gate, 1 << control);
}

fn reverse_wires_mut(state: &mut StateVector) {
    let n = state.n_qubits();
    let amps = state.amps_mut();
    for i in 0..amps.len() {
        let j = reverse_bits(i, n);
        if i < j {
            amps.swap(i, j);
        }
    }
}

fn reverse_bits(i: usize, n: usize) -> usize {
    (0..n).fold(0, |acc, b| acc | ((i >> b & 1) << (n - 1 - b)))
}

/// Number of one- and two-qubit gates in the transform circuit
/// (`n` Hadamards plus `n(n-1)/2` controlled phases; the final wire
/// reversal is a relabelling).
pub fn qft_gate_count(n: usize) -> usize {
    n + n * (n.saturating_sub(1)) / 2
}

/// Unitary discrete Fourier transform of the register,
/// `|y⟩ ↦ 2^{-n/2} Σ_k e^{2πi yk/2^n} |k⟩`.
pub fn qft(state: &StateVector) -> StateVector {
    let n = state.n_qubits();
    let mut s = state.clone();
    for j in (0..n).rev() {
        s.hadamard_mut(j);
        for m in (0..j).rev() {
            controlled_phase_mut(&mut s, m, j, PI / (1u64 << (j - m)) as f64);
        }
    }
    reverse_wires_mut(&mut s);
    s
}

/// Inverse of [`qft`]: the same circuit reversed with negated angles.
pub fn iqft(state: &StateVector) -> StateVector {
    let n = state.n_qubits();
    let mut s = state.clone();
    reverse_wires_mut(&mut s);
    for j in 0..n {
        for m in 0..j {
            controlled_phase_mut(&mut s, m, j, -PI / (1u64 << (j - m)) as f64);
        }
        s.hadamard_mut(j);
    }
    s
}

/// Adds the constant `b` to a Fourier-basis register.
///
/// Multiplies the amplitude of `|k⟩` by `e^{2πi bk/2^n}` through one phase
/// rotation per wire: wire `w` (weight `2^w`) turns by `2π·b·2^w / 2^n`.
/// Carries need no register of their own, they accumulate in the phases.
pub fn phase_add(state: &StateVector, b: u64) -> Result<StateVector, ArithError> {
    let n = state.n_qubits();
    check_operand(b, n)?;
    let modulus = 1u128 << n;
    let mut s = state.clone();
    for w in 0..n {
        let turns = (b as u128 * (1u128 << w)) % modulus;
        if turns != 0 {
            s = s.apply_phase(w, TAU * turns as f64 / modulus as f64)?;
        }
    }
    Ok(s)
}

fn check_operand(value: u64, n: usize) -> Result<(), ArithError> {
    if n == 0 {
        return Err(QsimError::ZeroQubits.into());
    }
    if n < 64 && value >> n != 0 {
        return Err(ArithError::OperandOutOfRange { value, n });
    }
    Ok(())
}

/// Reads the integer encoded in a Fourier-basis register: the relative
/// phase of `|1⟩` against `|0⟩` is `2π·v/2^n`.
pub fn phase_word(state: &StateVector) -> u64 {
    let amps = state.amplitudes();
    let rel = (amps[1] / amps[0]).arg();
    let modulus = (1u64 << state.n_qubits()) as f64;
    let v = (rel / TAU * modulus).round().rem_euclid(modulus);
    v as u64
}

/// `v / 2^n` as a binary fraction, most significant bit first.
pub fn binary_fraction(v: u64, n: usize) -> String {
    let bits: String = (0..n)
        .rev()
        .map(|b| if v >> b & 1 == 1 { '1' } else { '0' })
        .collect();
    format!("0.{bits}")
}

/// One stage of the traced adder: after adding `digit · 2^position`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseStage {
    pub position: usize,
    pub digit: u64,
    pub phase_word: u64,
    pub fraction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AddTrace {
    pub n: usize,
    pub a: u64,
    pub b: u64,
    pub sum: u64,
    pub probability: f64,
    pub initial_word: u64,
    pub initial_fraction: String,
    pub stages: Vec<PhaseStage>,
}

/// `(a + b) mod 2^n` computed as `iqft(phase_add(qft(|a⟩), b))` followed
/// by a measurement. The final state is a basis state, so the outcome is
/// certain.
pub fn quantum_add(a: u64, b: u64, n: usize) -> Result<u64, ArithError> {
    check_operand(a, n)?;
    check_operand(b, n)?;
    let fourier = qft(&StateVector::basis_state(n, a as usize)?);
    let summed = iqft(&phase_add(&fourier, b)?);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    Ok(summed.measure(&mut rng).basis_index as u64)
}

/// Like [`quantum_add`], but adds `b` one binary digit at a time and
/// records the phase word of the register after every stage.
pub fn quantum_add_traced(a: u64, b: u64, n: usize) -> Result<AddTrace, ArithError> {
    check_operand(a, n)?;
    check_operand(b, n)?;
    let mut state = qft(&StateVector::basis_state(n, a as usize)?);
    let initial_word = phase_word(&state);
    let mut stages = Vec::with_capacity(n);
    for position in 0..n {
        let digit = b >> position & 1;
        state = phase_add(&state, digit << position)?;
        let word = phase_word(&state);
        stages.push(PhaseStage {
            position,
            digit,
            phase_word: word,
            fraction: binary_fraction(word, n),
        });
    }
    let out = iqft(&state);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let m = out.measure(&mut rng);
    Ok(AddTrace {
        n,
        a,
        b,
        sum: m.basis_index as u64,
        probability: m.probability,
        initial_word,
        initial_fraction: binary_fraction(initial_word, n),
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(q: u64, v: u64) -> BaseQDigits {
        BaseQDigits::from_u64(v, q).unwrap()
    }

    /// Direct DFT: `out_k = 2^{-n/2} Σ_y v_y e^{2πi yk/2^n}`.
    fn dft(state: &StateVector, sign: f64) -> Vec<Complex64> {
        let dim = state.dim();
        let scale = 1.0 / (dim as f64).sqrt();
        (0..dim)
            .map(|k| {
                state
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .map(|(y, v)| {
                        v * Complex64::from_polar(
                            1.0,
                            sign * TAU * (y * k % dim) as f64 / dim as f64,
                        )
                    })
                    .sum::<Complex64>()
                    * scale
            })
            .collect()
    }

    #[test]
    fn base_q_addition() {
        assert_eq!(
            classical_add_base_q(&d(10, 7), &d(10, 5)).unwrap().digits(),
            &[2, 1]
        );
        assert_eq!(
            classical_add_base_q(&d(2, 1), &d(2, 1)).unwrap().digits(),
            &[0, 1]
        );
        let s = classical_add_base_q(&d(3, 8), &d(3, 8)).unwrap();
        assert_eq!(s.digits(), &[1, 2, 1]);
        assert_eq!(s.value(), BigUint::from(16u32));
        assert_eq!(
            classical_add_base_q(&d(3, 1), &d(5, 1)),
            Err(ArithError::BaseMismatch { left: 3, right: 5 })
        );
    }

    #[test]
    fn base_q_multiplication() {
        assert_eq!(
            classical_mul_base_q(&d(7, 123), &d(7, 0)).unwrap().digits(),
            &[0]
        );
        assert_eq!(
            classical_mul_base_q(&d(10, 3), &d(10, 4)).unwrap().digits(),
            &[2, 1]
        );
        assert_eq!(
            classical_mul_base_q(&d(2, 5), &d(2, 6)).unwrap().digits(),
            &[0, 1, 1, 1, 1]
        );
        // the cross terms a0*b1 + a1*b0 matter: 12 * 13 = 156 in base 10
        assert_eq!(
            classical_mul_base_q(&d(10, 12), &d(10, 13))
                .unwrap()
                .digits(),
            &[6, 5, 1]
        );
        assert!(classical_mul_base_q(&d(2, 1), &d(10, 1)).is_err());
    }

    #[test]
    fn digit_validation() {
        assert_eq!(
            BaseQDigits::new(1, vec![0]),
            Err(ArithError::InvalidBase(1))
        );
        assert_eq!(
            BaseQDigits::new(3, vec![1, 3]),
            Err(ArithError::DigitOutOfRange { digit: 3, q: 3 })
        );
        assert_eq!(BaseQDigits::new(3, vec![1, 0, 0]).unwrap().digits(), &[1]);
        assert_eq!(BaseQDigits::new(3, vec![]).unwrap().digits(), &[0]);
    }

    #[test]
    fn characters() {
        let zero = CharacterParams::new(5, vec![0, 0, 0]).unwrap();
        assert_eq!(
            zero.character(&[3, 1, 4]).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let sign = CharacterParams::new(2, vec![1]).unwrap();
        assert!((sign.character(&[1]).unwrap() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let p = CharacterParams::new(3, vec![2, -7]).unwrap();
        assert_eq!(p.character(&[0, 0]).unwrap(), Complex64::new(1.0, 0.0));
        assert!((p.character(&[4, 5]).unwrap().norm() - 1.0).abs() < 1e-12);
        assert!(matches!(
            p.character(&[1]),
            Err(ArithError::LengthMismatch { .. })
        ));
        assert!(CharacterParams::new(1 << 20, vec![1; 4]).is_err());
    }

    #[test]
    fn carry_angle() {
        // digits 1 + 1 in base 2 carry once; at i = 1 the correction is a full turn
        assert!((carry_phase_angle(1, 1, 2, 1) - TAU).abs() < 1e-12);
        assert_eq!(carry_phase_angle(0, 1, 2, 3), 0.0);
        assert!((carry_phase_angle(4, 3, 5, 2) - TAU / 5.0).abs() < 1e-12);
    }

    #[test]
    fn qft_on_one_qubit_is_hadamard() {
        for y in 0..2 {
            let s = StateVector::basis_state(1, y).unwrap();
            assert!(qft(&s).distance(&s.apply_hadamard(0).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn qft_matches_dft_matrix() {
        for n in 1..=4 {
            for y in 0..1usize << n {
                let s = StateVector::basis_state(n, y).unwrap();
                let f = qft(&s);
                for (got, want) in f.amplitudes().iter().zip(dft(&s, 1.0)) {
                    assert!((got - want).norm() < 1e-10, "n={n} y={y}");
                }
                let modulus = 2f64.powf(-(n as f64) / 2.0);
                assert!(f
                    .amplitudes()
                    .iter()
                    .all(|a| (a.norm() - modulus).abs() < 1e-12));
                let inv = iqft(&s);
                for (got, want) in inv.amplitudes().iter().zip(dft(&s, -1.0)) {
                    assert!((got - want).norm() < 1e-10, "inverse n={n} y={y}");
                }
            }
        }
    }

    #[test]
    fn iqft_undoes_qft() {
        let s = StateVector::basis_state(3, 5).unwrap();
        assert!(iqft(&qft(&s)).distance(&s) < 1e-12);
    }

    #[test]
    fn phase_add_examples() {
        let s = qft(&StateVector::basis_state(3, 6).unwrap());
        assert!(phase_add(&s, 0).unwrap().distance(&s) < 1e-15);
        assert!(matches!(
            phase_add(&s, 8),
            Err(ArithError::OperandOutOfRange { value: 8, n: 3 })
        ));
        for a in 0..16 {
            for b in 0..16 {
                let lhs =
                    phase_add(&qft(&StateVector::basis_state(4, a).unwrap()), b as u64).unwrap();
                let rhs = qft(&StateVector::basis_state(4, (a + b) % 16).unwrap());
                assert!(lhs.distance(&rhs) < 1e-9, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn adder_examples() {
        assert_eq!(quantum_add(3, 5, 4).unwrap(), 8);
        assert_eq!(quantum_add(11, 0, 4).unwrap(), 11);
        assert_eq!(quantum_add(15, 1, 4).unwrap(), 0);
        assert!(quantum_add(16, 1, 4).is_err());
        assert!(quantum_add(0, 0, 0).is_err());
    }

    #[test]
    fn traced_adder_phase_words() {
        let t = quantum_add_traced(5, 6, 4).unwrap();
        assert_eq!(t.initial_word, 5);
        assert_eq!(t.initial_fraction, "0.0101");
        let words: Vec<u64> = t.stages.iter().map(|s| s.phase_word).collect();
        // 6 = 0b0110: digits enter at positions 1 and 2
        assert_eq!(words, vec![5, 7, 11, 11]);
        assert_eq!(t.sum, 11);
        assert!((t.probability - 1.0).abs() < 1e-9);
        assert_eq!(binary_fraction(11, 4), "0.1011");
    }
}
