use serde::Serialize;

use super::{AugmentedSystem, LinalgError, Matrix};
use crate::ledger::CostLedger;
use crate::rational::Rational;

/// Finds a pivot row in a column during elimination.
///
/// Implementations receive the full column and the first row still open
/// for pivoting. A returned index must be `>= start` and point at a nonzero
/// entry; `rref` panics otherwise.
pub trait PivotStrategy {
    fn find_pivot(
        &mut self,
        column: &[Rational],
        start: usize,
        ledger: &mut CostLedger,
    ) -> Option<usize>;

    /// Short identifier used in reports.
    fn name(&self) -> &'static str;
}

/// Linear scan for the first nonzero entry at or after `start`.
///
/// Charges one comparison per inspected entry.
pub fn classical_pivot_scan(
    column: &[Rational],
    start: usize,
    ledger: &mut CostLedger,
) -> Option<usize> {
    for (i, v) in column.iter().enumerate().skip(start) {
        ledger.comparisons += 1;
        if !v.is_zero() {
            return Some(i);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassicalScan;

impl PivotStrategy for ClassicalScan {
    fn find_pivot(
        &mut self,
        column: &[Rational],
        start: usize,
        ledger: &mut CostLedger,
    ) -> Option<usize> {
        classical_pivot_scan(column, start, ledger)
    }

    fn name(&self) -> &'static str {
        "classical"
    }
}

/// One elementary row operation, recorded in application order.
///
/// `pivot_col` is the column whose pivot the operation serves; every entry
/// left of it in the source row is zero at that point of the elimination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum RowOperation {
    Swap {
        i: usize,
        j: usize,
    },
    Scale {
        row: usize,
        #[serde(serialize_with = "ser_rational")]
        factor: Rational,
        pivot_col: usize,
    },
    Axpy {
        src: usize,
        dst: usize,
        #[serde(serialize_with = "ser_rational")]
        factor: Rational,
        pivot_col: usize,
    },
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl RowOperation {
    /// Applies the operation to every column of `m`.
    pub fn apply(&self, m: &Matrix) -> Result<Matrix, LinalgError> {
        match self {
            RowOperation::Swap { i, j } => m.swap_rows(*i, *j),
            RowOperation::Scale { row, factor, .. } => m.scale_row(*row, factor),
            RowOperation::Axpy {
                src, dst, factor, ..
            } => m.axpy_row(*src, *dst, factor),
        }
    }
}

/// Output of Gauss-Jordan elimination on `[A|b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    /// Reduced `m × (n+1)` augmented matrix.
    pub reduced: Matrix,
    /// Rank of `[A|b]`; counts a pivot in the right-hand-side column.
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub row_op_log: Vec<RowOperation>,
    pub strategy: &'static str,
}

impl RrefResult {
    /// Index of the right-hand-side column.
    pub fn rhs_column(&self) -> usize {
        self.reduced.cols() - 1
    }

    /// Rank of the coefficient block `A`.
    pub fn coefficient_rank(&self) -> usize {
        self.pivot_columns
            .iter()
            .filter(|&&c| c < self.rhs_column())
            .count()
    }

    pub fn is_consistent(&self) -> bool {
        self.pivot_columns.last() != Some(&self.rhs_column())
    }
}

/// Replays `log` against `original`, returning the resulting matrix and the
/// number of multiplications the elimination charges for those operations.
pub fn replay_row_ops(
    original: &Matrix,
    log: &[RowOperation],
) -> Result<(Matrix, u64), LinalgError> {
    let width = original.cols() as u64;
    let mut m = original.clone();
    let mut mults = 0;
    for op in log {
        m = op.apply(&m)?;
        match op {
            RowOperation::Scale { pivot_col, .. } | RowOperation::Axpy { pivot_col, .. } => {
                mults += width - *pivot_col as u64 - 1;
            }
            RowOperation::Swap { .. } => {}
        }
    }
    Ok((m, mults))
}

/// Gauss-Jordan elimination of `[A|b]` into reduced row echelon form.
///
/// Forward phase: for each column, ask `pivot` for a nonzero row, swap it
/// into place, normalise it to a leading one and clear the entries below.
/// Backward phase: clear the entries above every pivot, last pivot first.
///
/// Charges per processed pivot: `w - c - 1` multiplications for the
/// normalisation (`w` = augmented width, `c` = pivot column), the same
/// number of multiplications and additions for every eliminated row, and one
/// subtraction plus one control check for each loop decrement of both
/// phases. Operations with a trivial effect (unit scale, zero factor, swap
/// of a row with itself) are neither performed nor charged.
pub fn rref(
    system: &AugmentedSystem,
    pivot: &mut dyn PivotStrategy,
    ledger: &mut CostLedger,
) -> RrefResult {
    let mut m = system.augmented();
    let rows = m.rows();
    let width = m.cols();
    let mut log = Vec::new();
    let mut pivot_columns = Vec::new();
    let mut pivot_row = 0;

    for col in 0..width {
        if pivot_row >= rows {
            break;
        }
        let column = m.column(col);
        let Some(found) = pivot.find_pivot(&column, pivot_row, ledger) else {
            continue;
        };
        assert!(
            found >= pivot_row && found < rows && !column[found].is_zero(),
            "pivot strategy `{}` returned invalid row {found} for column {col}",
            pivot.name()
        );
        let span = (width - col - 1) as u64;

        if found != pivot_row {
            m.swap_rows_in_place(found, pivot_row)
                .expect("rows in range");
            log.push(RowOperation::Swap {
                i: found,
                j: pivot_row,
            });
        }

        let lead = m.get(pivot_row, col).clone();
        if !lead.is_one() {
            let factor = lead.recip().expect("pivot is nonzero");
            m.scale_row_in_place(pivot_row, &factor, col)
                .expect("nonzero factor");
            ledger.multiplications += span;
            log.push(RowOperation::Scale {
                row: pivot_row,
                factor,
                pivot_col: col,
            });
        }

        for r in pivot_row + 1..rows {
            eliminate(&mut m, pivot_row, r, col, span, ledger, &mut log);
        }

        ledger.subtractions += 1;
        ledger.control_ops += 1;
        pivot_columns.push(col);
        pivot_row += 1;
    }

    for (k, &col) in pivot_columns.iter().enumerate().rev() {
        let span = (width - col - 1) as u64;
        for r in 0..k {
            eliminate(&mut m, k, r, col, span, ledger, &mut log);
        }
        ledger.subtractions += 1;
        ledger.control_ops += 1;
    }

    RrefResult {
        reduced: m,
        rank: pivot_columns.len(),
        pivot_columns,
        row_op_log: log,
        strategy: pivot.name(),
    }
}

fn eliminate(
    m: &mut Matrix,
    src: usize,
    dst: usize,
    col: usize,
    span: u64,
    ledger: &mut CostLedger,
    log: &mut Vec<RowOperation>,
) {
    let entry = m.get(dst, col);
    if entry.is_zero() {
        return;
    }
    let factor = -entry;
    m.axpy_row_in_place(src, dst, &factor, col)
        .expect("distinct rows in range");
    ledger.multiplications += span;
    ledger.additions += span;
    log.push(RowOperation::Axpy {
        src,
        dst,
        factor,
        pivot_col: col,
    });
}

/// `rref` with [`ClassicalScan`] and a throwaway ledger.
pub fn rref_classical(system: &AugmentedSystem) -> RrefResult {
    rref(system, &mut ClassicalScan, &mut CostLedger::new())
}
