//! Amplitude amplification on a 6-qubit register: the marked probability
//! per iterate against the closed-form rotation, then a verified search.
//!
//!     cargo run --example grover_search

use qgje::grover::{
    grover_search, iteration_count, marked_probability_trace, rotation_law, GroverPlan, Oracle,
};
use qgje::labeled_rng;

fn main() {
    let n = 6;
    let marked = [11, 42];
    let oracle = Oracle::from_indices(n, &marked).unwrap();
    let (k, t) = (oracle.search_size(), oracle.marked_count());
    let best = iteration_count(k, t).unwrap();
    println!("K = {k}, t = {t}, optimal iterates = {best}");

    let trace = marked_probability_trace(&mut oracle.clone(), 2 * best).unwrap();
    for (m, p) in trace.iter().enumerate() {
        let bar = "#".repeat((p * 40.0).round() as usize);
        println!(
            "m={m:>2}  p={p:.6}  law={:.6}  {bar}",
            rotation_law(k, t, m)
        );
    }

    let plan = GroverPlan::new(n, None).unwrap();
    println!(
        "\nunknown t: attempts {:?} then a classical scan",
        plan.retry_schedule
    );
    for seed in 0..5 {
        let mut o = oracle.clone();
        let r = grover_search(&mut o, &mut labeled_rng(seed, "example"), &plan, true).unwrap();
        println!(
            "seed {seed}: found {:?} after {} iterates, {} measurements, {} queries",
            r.found, r.grover_iterations, r.measurements, r.oracle_queries
        );
    }
}
