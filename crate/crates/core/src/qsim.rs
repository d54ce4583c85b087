//! Dense state-vector simulation of an n-qubit register.
//!
//! Qubit 0 is the least-significant bit of a basis index, so basis state
//! `|k⟩` has wire `w` set iff `k >> w & 1 == 1`. Every gate returns a new
//! [`StateVector`]; the input is never modified.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

pub type Amplitude = Complex64;

/// Tolerance for the normalisation invariant.
pub const NORM_TOLERANCE: f64 = 1e-10;
/// Tolerance for `U U† = I` when accepting a gate matrix.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsimError {
    #[error("a register needs at least one qubit")]
    ZeroQubits,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("control and target are both wire {0}")]
    SameWire(usize),
    #[error("rotation angle {0} is not finite")]
    NonFiniteAngle(f64),
    #[error("gate matrix is not unitary (max deviation {0:e})")]
    NonUnitary(f64),
    #[error("amplitude vector length {0} is not a power of two >= 2")]
    InvalidLength(usize),
    #[error("state is not normalised (squared norm {0})")]
    NotNormalized(f64),
}

/// A 2×2 unitary, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateMatrix1Q([[Complex64; 2]; 2]);

impl GateMatrix1Q {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self, QsimError> {
        let dev = unitarity_deviation(&m);
        if !dev.is_finite() || dev > UNITARY_TOLERANCE {
            return Err(QsimError::NonUnitary(dev));
        }
        Ok(GateMatrix1Q(m))
    }

    pub fn identity() -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        GateMatrix1Q([[l, o], [o, l]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        GateMatrix1Q([[h, h], [h, -h]])
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        GateMatrix1Q([[o, l], [l, o]])
    }

    /// `diag(1, e^{iφ})`.
    pub fn phase(phi: f64) -> Result<Self, QsimError> {
        if !phi.is_finite() {
            return Err(QsimError::NonFiniteAngle(phi));
        }
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        Ok(GateMatrix1Q([[l, o], [o, Complex64::from_polar(1.0, phi)]]))
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        GateMatrix1Q([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }
}

fn unitarity_deviation(m: &[[Complex64; 2]; 2]) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let dot: Complex64 = (0..2).map(|k| m[i][k] * m[j][k].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((dot - target).norm());
        }
    }
    dev
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcome {
    pub basis_index: usize,
    /// Born probability of `basis_index` before the measurement.
    pub probability: f64,
}

/// Normalised amplitudes of an `n`-qubit register, `2^n` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    pub fn basis_state(n: usize, index: usize) -> Result<Self, QsimError> {
        if n == 0 {
            return Err(QsimError::ZeroQubits);
        }
        let len = 1usize << n;
        if index >= len {
            return Err(QsimError::IndexOutOfRange { index, len });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits: n, amps })
    }

    /// Wraps an amplitude vector, checking length, finiteness and norm.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self, QsimError> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QsimError::InvalidLength(len));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(QsimError::NotNormalized(norm));
        }
        Ok(StateVector {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    /// Haar-ish random state: Gaussian components, then normalised.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self, QsimError> {
        if n == 0 {
            return Err(QsimError::ZeroQubits);
        }
        let gauss = |rng: &mut R| {
            // Box-Muller
            let u1: f64 = 1.0 - rng.random::<f64>();
            let u2: f64 = rng.random();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        };
        let mut amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(gauss(rng), gauss(rng)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { n_qubits: n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Euclidean distance to another state of the same size.
    pub fn distance(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Amplitude] {
        &mut self.amps
    }

    pub(crate) fn check_wire(&self, wire: usize) -> Result<(), QsimError> {
        if wire >= self.n_qubits {
            Err(QsimError::IndexOutOfRange {
                index: wire,
                len: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, control: usize, target: usize) -> Result<(), QsimError> {
        self.check_wire(control)?;
        self.check_wire(target)?;
        if control == target {
            return Err(QsimError::SameWire(control));
        }
        Ok(())
    }

    /// Applies `u` to every amplitude pair differing only at `wire`, limited
    /// to basis states where all bits of `control_mask` are set.
    pub(crate) fn apply_1q_mut(&mut self, wire: usize, u: &GateMatrix1Q, control_mask: usize) {
        let bit = 1usize << wire;
        let [[u00, u01], [u10, u11]] = u.0;
        for i in 0..self.amps.len() {
            if i & bit != 0 || i & control_mask != control_mask {
                continue;
            }
            let j = i | bit;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            self.amps[i] = u00 * a0 + u01 * a1;
            self.amps[j] = u10 * a0 + u11 * a1;
        }
    }

    /// Multiplies amplitudes whose bits in `mask` are all set by `e^{iφ}`.
    pub(crate) fn phase_mask_mut(&mut self, mask: usize, phi: f64) {
        let rot = Complex64::from_polar(1.0, phi);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *a *= rot;
            }
        }
    }

    pub(crate) fn hadamard_mut(&mut self, wire: usize) {
        let bit = 1usize << wire;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let j = i | bit;
                let (a0, a1) = (self.amps[i], self.amps[j]);
                self.amps[i] = (a0 + a1) * FRAC_1_SQRT_2;
                self.amps[j] = (a0 - a1) * FRAC_1_SQRT_2;
            }
        }
    }

    pub fn apply_hadamard(&self, wire: usize) -> Result<Self, QsimError> {
        self.check_wire(wire)?;
        let mut out = self.clone();
        out.hadamard_mut(wire);
        Ok(out)
    }

    /// `diag(1, e^{iφ})` on `wire`.
    ///
    /// The carry correction of a digit-wise phase adder, with angle
    /// `2π·⌊(a_i+b_i)/q⌋ / q^{i-1}`, is one instance of this gate.
    pub fn apply_phase(&self, wire: usize, phi: f64) -> Result<Self, QsimError> {
        self.check_wire(wire)?;
        if !phi.is_finite() {
            return Err(QsimError::NonFiniteAngle(phi));
        }
        let mut out = self.clone();
        out.phase_mask_mut(1 << wire, phi);
        Ok(out)
    }

    /// Applies an arbitrary single-qubit unitary to `wire`.
    pub fn apply_gate(&self, wire: usize, u: &GateMatrix1Q) -> Result<Self, QsimError> {
        self.check_wire(wire)?;
        let mut out = self.clone();
        out.apply_1q_mut(wire, u, 0);
        Ok(out)
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> Result<Self, QsimError> {
        self.check_pair(control, target)?;
        let mut out = self.clone();
        let (c, t) = (1usize << control, 1usize << target);
        for i in 0..out.amps.len() {
            if i & c != 0 && i & t == 0 {
                out.amps.swap(i, i | t);
            }
        }
        Ok(out)
    }

    /// Applies `u` to `target` where the `control` bit is one.
    pub fn apply_controlled_unitary(
        &self,
        control: usize,
        target: usize,
        u: &GateMatrix1Q,
    ) -> Result<Self, QsimError> {
        self.check_pair(control, target)?;
        let dev = unitarity_deviation(&u.0);
        if dev > UNITARY_TOLERANCE {
            return Err(QsimError::NonUnitary(dev));
        }
        let mut out = self.clone();
        out.apply_1q_mut(target, u, 1 << control);
        Ok(out)
    }

    /// Born-rule probabilities `|v_i|^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Probability that `wire` reads one.
    pub fn wire_probability(&self, wire: usize) -> Result<f64, QsimError> {
        self.check_wire(wire)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i >> wire & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Samples a basis index with probability `|v_i|^2`.
    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> MeasurementOutcome {
        let probs = self.probabilities();
        let total: f64 = probs.iter().sum();
        let u = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (i, &p) in probs.iter().enumerate() {
            if p > 0.0 {
                last_nonzero = i;
            }
            acc += p;
            if u < acc {
                return MeasurementOutcome {
                    basis_index: i,
                    probability: p,
                };
            }
        }
        // rounding left `u` past the final partial sum
        MeasurementOutcome {
            basis_index: last_nonzero,
            probability: probs[last_nonzero],
        }
    }
}
