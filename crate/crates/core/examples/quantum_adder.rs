//! Adds two integers in the Fourier basis and shows how the phase word
//! absorbs carries one digit at a time.
//!
//!     cargo run --example quantum_adder -- 13 7 5

use qgje::qft::{qft_gate_count, quantum_add, quantum_add_traced};

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let (a, b, n) = match args[..] {
        [a, b, n] => (a, b, n as usize),
        _ => (13, 7, 5),
    };

    let trace = quantum_add_traced(a, b, n).expect("operands fit in n qubits");
    println!("QFT on {n} qubits: {} gates", qft_gate_count(n));
    println!(
        "|{a}> -> phase word {} ({})",
        trace.initial_fraction, trace.initial_word
    );
    for s in &trace.stages {
        println!(
            "  + {}*2^{}  -> {} ({})",
            s.digit, s.position, s.fraction, s.phase_word
        );
    }
    println!(
        "inverse QFT and measure: {} (probability {:.6})",
        trace.sum, trace.probability
    );

    let m = 1u64 << n;
    let wrong = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .filter(|&(x, y)| quantum_add(x, y, n).unwrap() != (x + y) % m)
        .count();
    println!("exhaustive check over {} pairs: {wrong} wrong", m * m);
}
