//! Exact Gauss-Jordan elimination with pivot search by a simulated Grover
//! algorithm.
//!
//! The crate is organised bottom-up:
//!
//! - [`rational`] and [`linalg`]: exact rational matrices, elementary row
//!   operations, RREF with a pluggable [`linalg::PivotStrategy`] and the
//!   solution set of `A x = b`.
//! - [`qsim`]: a dense state-vector simulator with Hadamard, phase, CNOT
//!   and controlled-unitary gates plus seeded measurement.
//! - [`qft`]: the quantum Fourier transform, a phase-rotation adder and
//!   base-`q` reference arithmetic.
//! - [`grover`]: oracle reflection, diffusion, verified search and
//!   Deutsch's constant/balanced test.
//! - [`qgje`] and [`cost`]: elimination with Grover pivots, the operation
//!   ledger, and the closed-form operation counts it is audited against.
//! - [`cli`]: the `qgje` command-line front end.
//!
//! ```
//! use qgje::linalg::{text::parse_system, rref_classical};
//! use qgje::qgje::qgje_rref;
//!
//! let sys = parse_system("2 3\n1 1 2\n1 -1 0\n").unwrap();
//! let report = qgje_rref(&sys, 7);
//! assert_eq!(report.rref_result.reduced, rref_classical(&sys).reduced);
//! ```

pub mod cli;
pub mod cost;
pub mod grover;
pub mod ledger;
pub mod linalg;
pub mod qft;
pub mod qgje;
pub mod qsim;
pub mod rational;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use ledger::CostLedger;
pub use rational::Rational;

/// Generator for one named subsystem of a seeded run.
///
/// Every label selects its own ChaCha stream under the same key, so
/// subsystems never share random draws.
pub fn labeled_rng(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a
    let stream = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
