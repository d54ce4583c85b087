#![allow(dead_code)]

use num_complex::Complex64;
use qgje::linalg::{AugmentedSystem, Matrix};
use qgje::qsim::StateVector;
use qgje::Rational;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemClass {
    /// Entries drawn independently with a consistent right-hand side.
    Generic,
    /// Coefficient rank below `min(m, n)`, consistent right-hand side.
    RankDeficient,
    /// Contains a row combination whose right-hand side is off by one.
    Inconsistent,
}

/// Small rational with about one third zeros.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    if rng.random_bool(0.3) {
        return Rational::zero();
    }
    Rational::new(rng.random_range(-6..=6), rng.random_range(1..=4))
}

fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| small_rational(rng)).collect())
        .collect()
}

fn product(b: &[Vec<Rational>], c: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    b.iter()
        .map(|brow| {
            (0..cols)
                .map(|j| {
                    brow.iter()
                        .zip(c)
                        .fold(Rational::zero(), |acc, (x, crow)| acc + x * &crow[j])
                })
                .collect()
        })
        .collect()
}

fn build(a: Vec<Vec<Rational>>, rhs: Vec<Rational>, cols: usize) -> AugmentedSystem {
    let rows = a.len();
    let m = Matrix::new(rows, cols, a.into_iter().flatten().collect()).unwrap();
    AugmentedSystem::new(m, rhs).unwrap()
}

/// Random system with `1..=max_dim` rows and unknowns: 25% rank-deficient,
/// 10% inconsistent, the rest generic.
pub fn random_system<R: Rng>(max_dim: usize, rng: &mut R) -> (AugmentedSystem, SystemClass) {
    let roll: f64 = rng.random();
    let class = if roll < 0.25 {
        SystemClass::RankDeficient
    } else if roll < 0.35 {
        SystemClass::Inconsistent
    } else {
        SystemClass::Generic
    };
    (system_of_class(class, max_dim, rng), class)
}

pub fn system_of_class<R: Rng>(class: SystemClass, max_dim: usize, rng: &mut R) -> AugmentedSystem {
    let m = rng.random_range(1..=max_dim);
    let n = rng.random_range(1..=max_dim);
    match class {
        SystemClass::Generic => {
            let a = random_matrix(m, n, rng);
            let x = random_matrix(n, 1, rng);
            let rhs = product(&a, &x, 1)
                .into_iter()
                .map(|v| v[0].clone())
                .collect();
            build(a, rhs, n)
        }
        SystemClass::RankDeficient => {
            // A = B·C with inner dimension below min(m, n); b = A·x.
            let r = rng.random_range(0..m.min(n));
            let b = random_matrix(m, r, rng);
            let c = random_matrix(r, n, rng);
            let x = random_matrix(n, 1, rng);
            let a = product(&b, &c, n);
            let rhs = product(&a, &x, 1)
                .into_iter()
                .map(|v| v[0].clone())
                .collect();
            build(a, rhs, n)
        }
        SystemClass::Inconsistent => {
            let mut a = random_matrix(m, n, rng);
            let mut rhs: Vec<Rational> = (0..m).map(|_| small_rational(rng)).collect();
            // Last row = Σ c_i row_i over the others, right-hand side + 1.
            let coeffs: Vec<Rational> = (0..m - 1).map(|_| small_rational(rng)).collect();
            let mut last = vec![Rational::zero(); n];
            let mut last_rhs = Rational::one();
            for (i, c) in coeffs.iter().enumerate() {
                for (j, e) in last.iter_mut().enumerate() {
                    *e = &*e + &(c * &a[i][j]);
                }
                last_rhs = last_rhs + c * &rhs[i];
            }
            a[m - 1] = last;
            rhs[m - 1] = last_rhs;
            build(a, rhs, n)
        }
    }
}

/// Columns of the `2^n × 2^n` matrix of a linear map on `n` qubits.
pub fn explicit_matrix(n: usize, op: impl Fn(&StateVector) -> StateVector) -> Vec<Vec<Complex64>> {
    (0..1usize << n)
        .map(|k| {
            op(&StateVector::basis_state(n, k).unwrap())
                .amplitudes()
                .to_vec()
        })
        .collect()
}

/// Largest entry of `|U†U - I|` for a matrix given by its columns.
pub fn unitarity_defect(cols: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, ci) in cols.iter().enumerate() {
        for (j, cj) in cols.iter().enumerate() {
            let dot: Complex64 = ci.iter().zip(cj).map(|(a, b)| a.conj() * b).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}
