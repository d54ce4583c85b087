use serde::Serialize;

use super::{rref_classical, AugmentedSystem, RrefResult};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolutionKind {
    Unique,
    Affine,
    Inconsistent,
}

/// Solution set of `A x = b`: `particular + span(basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    pub kind: SolutionKind,
    /// `None` exactly when the system is inconsistent.
    pub particular: Option<Vec<Rational>>,
    /// One vector per free variable, in increasing free-column order.
    pub basis: Vec<Vec<Rational>>,
}

impl SolutionSpace {
    /// Dimension of the solution flat, `n - r`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn solve(system: &AugmentedSystem) -> SolutionSpace {
    solve_from_rref(&rref_classical(system))
}

/// Reads the solution set off a reduced augmented matrix.
///
/// The particular point carries the reduced right-hand side in pivot
/// coordinates and zero in free coordinates. Each basis vector has a one in
/// its free coordinate, the negated reduced entries of that column in the
/// pivot coordinates, and zero elsewhere.
pub fn solve_from_rref(res: &RrefResult) -> SolutionSpace {
    if !res.is_consistent() {
        return SolutionSpace {
            kind: SolutionKind::Inconsistent,
            particular: None,
            basis: Vec::new(),
        };
    }
    let n = res.rhs_column();
    let m = &res.reduced;

    let mut particular = vec![Rational::zero(); n];
    for (row, &pc) in res.pivot_columns.iter().enumerate() {
        particular[pc] = m.get(row, n).clone();
    }

    let mut is_pivot = vec![false; n];
    for &pc in &res.pivot_columns {
        is_pivot[pc] = true;
    }
    let basis: Vec<Vec<Rational>> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &pc) in res.pivot_columns.iter().enumerate() {
                v[pc] = -m.get(row, free);
            }
            v
        })
        .collect();

    SolutionSpace {
        kind: if basis.is_empty() {
            SolutionKind::Unique
        } else {
            SolutionKind::Affine
        },
        particular: Some(particular),
        basis,
    }
}
