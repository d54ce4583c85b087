//! Operation-count model of Gauss-Jordan elimination with Grover pivot
//! search.
//!
//! Per elimination round `n = 1..=N` the model charges `2^{n/2}` for the
//! pivot search, `2(n-1)^2` for clearing the column, `2(n-1)` for the
//! backward pass and one subtraction plus one control check for the loop.
//!
//! Every value of `√2^n` lies in `Z[√2]`, so both the term-by-term sum and
//! the closed form are carried out exactly as `a + b·√2` with integer `a`,
//! `b` and only converted to `f64` at the end. Equal exact values therefore
//! convert to bit-identical floats.

use std::f64::consts::SQRT_2;

use serde::Serialize;

/// Largest `N` evaluated exactly; beyond it both routes fall back to `f64`.
pub const EXACT_LIMIT: u64 = 200;

/// `a + b·√2` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Surd {
    int: i128,
    sqrt2: i128,
}

impl Surd {
    fn to_f64(self) -> f64 {
        self.int as f64 + self.sqrt2 as f64 * SQRT_2
    }

    /// `√2^n`.
    fn sqrt2_pow(n: u64) -> Surd {
        let half = 1i128 << (n / 2);
        if n.is_multiple_of(2) {
            Surd {
                int: half,
                sqrt2: 0,
            }
        } else {
            Surd {
                int: 0,
                sqrt2: half,
            }
        }
    }

    fn add(self, o: Surd) -> Surd {
        Surd {
            int: self.int + o.int,
            sqrt2: self.sqrt2 + o.sqrt2,
        }
    }

    fn mul(self, o: Surd) -> Surd {
        Surd {
            int: self.int * o.int + 2 * self.sqrt2 * o.sqrt2,
            sqrt2: self.int * o.sqrt2 + self.sqrt2 * o.int,
        }
    }
}

/// Which quantity a cost figure describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CostModel {
    /// Pivot search costs `2^{n/2}` at round `n`, summed over rounds.
    PaperFormula,
    /// Counters filled by an actual simulated run.
    Simulated,
}

impl CostModel {
    pub fn description(&self) -> &'static str {
        match self {
            CostModel::PaperFormula => {
                "sum over rounds n=1..N of 2^(n/2) + 2(n-1)^2 + 2(n-1) + 1 + 1"
            }
            CostModel::Simulated => {
                "arithmetic, control, Grover iteration, oracle query and measurement counters of a simulated run"
            }
        }
    }
}

/// Polynomial part of one round, `2(n-1)^2 + 2(n-1) + 2`.
fn round_polynomial(n: u64) -> i128 {
    let k = n as i128 - 1;
    2 * k * k + 2 * k + 2
}

/// Term-by-term evaluation of the round sum for `N` rounds.
pub fn paper_cost_total(n_rounds: u64) -> f64 {
    if n_rounds > EXACT_LIMIT {
        return (1..=n_rounds)
            .map(|n| 2f64.powf(n as f64 / 2.0) + round_polynomial(n) as f64)
            .sum();
    }
    (1..=n_rounds)
        .map(|n| {
            Surd::sqrt2_pow(n).add(Surd {
                int: round_polynomial(n),
                sqrt2: 0,
            })
        })
        .fold(Surd::default(), Surd::add)
        .to_f64()
}

/// `N(N+1) + (N-1)N(2N-1)/3`, the exact polynomial part of the round sum.
pub fn closed_form_polynomial(n: u64) -> i128 {
    let n = n as i128;
    n * (n + 1) + (n - 1) * n * (2 * n - 1) / 3
}

/// Exact geometric part `√2(√2^N - 1)/(√2 - 1) = (2 + √2)(√2^N - 1)`.
fn geometric_part(n: u64) -> Surd {
    let two_plus_root = Surd { int: 2, sqrt2: 1 };
    two_plus_root.mul(Surd::sqrt2_pow(n).add(Surd { int: -1, sqrt2: 0 }))
}

fn geometric_part_f64(n: u64) -> f64 {
    SQRT_2 * (SQRT_2.powi(n as i32) - 1.0) / (SQRT_2 - 1.0)
}

/// Closed form `N(N+1) + (N-1)N(2N-1)/3 + √2(√2^N - 1)/(√2 - 1)`,
/// without integer-part brackets.
pub fn closed_form_cost(n: u64) -> f64 {
    if n > EXACT_LIMIT {
        return closed_form_polynomial(n) as f64 + geometric_part_f64(n);
    }
    geometric_part(n)
        .add(Surd {
            int: closed_form_polynomial(n),
            sqrt2: 0,
        })
        .to_f64()
}

/// Closed form with the geometric term floored, as a display value.
pub fn floored_closed_form_cost(n: u64) -> f64 {
    closed_form_polynomial(n) as f64 + geometric_part_value(n).floor()
}

fn geometric_part_value(n: u64) -> f64 {
    if n > EXACT_LIMIT {
        geometric_part_f64(n)
    } else {
        geometric_part(n).to_f64()
    }
}

/// The bound as printed with the theorem, `N(N-1)(2N+1)/3 + [geometric]`.
/// Its polynomial differs from that of the round sum; kept for comparison.
pub fn printed_theorem_cost(n: u64) -> f64 {
    let m = n as i128;
    (m * (m - 1) * (2 * m + 1)) as f64 / 3.0 + geometric_part_value(n).floor()
}

/// `Σ_{k=1}^{N} k² = N(N+1)(2N+1)/6`.
pub fn sum_of_squares(n: u64) -> u128 {
    let n = n as u128;
    n * (n + 1) * (2 * n + 1) / 6
}

/// `closed_form_cost(N) / 2^{N/2}`.
pub fn ratio_to_half_power(n: u64) -> f64 {
    closed_form_cost(n) / 2f64.powf(n as f64 / 2.0)
}

/// One row of the cost table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostRow {
    pub n: u64,
    pub paper_total: f64,
    pub closed_form: f64,
    pub floored_closed_form: f64,
    pub printed_form: f64,
    pub simulated_mean: Option<f64>,
    pub ratio: f64,
}

impl CostRow {
    pub fn formulas(n: u64) -> Self {
        CostRow {
            n,
            paper_total: paper_cost_total(n),
            closed_form: closed_form_cost(n),
            floored_closed_form: floored_closed_form_cost(n),
            printed_form: printed_theorem_cost(n),
            simulated_mean: None,
            ratio: ratio_to_half_power(n),
        }
    }
}

/// Rounds to five significant digits and prints in fixed notation.
pub fn format_sig5(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = 4 - magnitude;
    if decimals >= 0 {
        format!("{:.*}", decimals as usize, x)
    } else {
        let scale = 10f64.powi(-decimals);
        format!("{:.0}", (x / scale).round() * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_totals() {
        assert!((paper_cost_total(1) - (2.0 + SQRT_2)).abs() < 1e-12);
        // n=1 term 2+√2, n=2 term 2 + 2 + 2 + 2 = 8
        assert!((paper_cost_total(2) - (10.0 + SQRT_2)).abs() < 1e-12);
        assert!((closed_form_cost(1) - paper_cost_total(1)).abs() < 1e-12);
    }

    #[test]
    fn ten_rounds() {
        assert_eq!(closed_form_polynomial(10), 680);
        let geo = geometric_part(10).to_f64();
        assert!((geo - 105.840_620_433_565_95).abs() < 1e-9, "{geo}");
        assert!((paper_cost_total(10) - 785.840_620_433_565_9).abs() < 1e-9);
        assert_eq!(closed_form_cost(10), paper_cost_total(10));
    }

    #[test]
    fn asymptotic_ratio() {
        let r = ratio_to_half_power(60);
        let limit = SQRT_2 / (SQRT_2 - 1.0);
        assert!((r - limit).abs() / limit < 1e-3, "{r}");
        assert!((3.41..=3.42).contains(&r));
    }

    #[test]
    fn printed_form_differs() {
        // N(N-1)(2N+1)/3 at N=2 is 10/3, the round sum's polynomial is 8
        assert_eq!(closed_form_polynomial(2), 8);
        // geometric part at N=2 is 2 + √2, floored to 3
        assert!((printed_theorem_cost(2) - (10.0 / 3.0 + 3.0)).abs() < 1e-12);
    }

    #[test]
    fn squares() {
        assert_eq!(sum_of_squares(0), 0);
        assert_eq!(sum_of_squares(3), 14);
        assert_eq!(sum_of_squares(1000), 333_833_500);
    }

    #[test]
    fn float_fallback_is_close() {
        let n = EXACT_LIMIT + 1;
        let a = paper_cost_total(n);
        let b = closed_form_cost(n);
        assert!(((a - b) / b).abs() < 1e-12);
    }

    #[test]
    fn sig5() {
        assert_eq!(format_sig5(3.414_213_56), "3.4142");
        assert_eq!(format_sig5(785.982_756), "785.98");
        assert_eq!(format_sig5(11.414_21), "11.414");
        assert_eq!(format_sig5(0.000_134_2), "0.00013420");
        assert_eq!(format_sig5(3_665_991_123.0), "3666000000");
        assert_eq!(format_sig5(0.0), "0");
    }
}
