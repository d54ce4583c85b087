//! Operation-count audit: the round sum, its closed form, the bound as
//! printed with the theorem, and ledger totals from simulated runs.
//!
//!     cargo run --release --example cost_audit

use qgje::cost::{format_sig5, CostModel};
use qgje::qgje::{cost_report, SimulationSettings};

fn main() {
    let settings = SimulationSettings {
        seed: 1,
        trials: 16,
        max_n: 8,
    };
    println!("model: {}", CostModel::PaperFormula.description());
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>12} {:>9}",
        "N", "round sum", "closed form", "printed", "simulated", "ratio"
    );
    for row in cost_report(30, Some(&settings)) {
        assert_eq!(row.paper_total, row.closed_form);
        println!(
            "{:>3} {:>12} {:>12} {:>12} {:>12} {:>9}",
            row.n,
            format_sig5(row.paper_total),
            format_sig5(row.closed_form),
            format_sig5(row.printed_form),
            row.simulated_mean.map(format_sig5).unwrap_or_default(),
            format_sig5(row.ratio)
        );
    }
    let limit = std::f64::consts::SQRT_2 / (std::f64::consts::SQRT_2 - 1.0);
    println!("ratio tends to sqrt2/(sqrt2 - 1) = {}", format_sig5(limit));
}
