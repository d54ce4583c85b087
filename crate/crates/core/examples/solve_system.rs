//! Solution sets of unique, underdetermined and inconsistent systems.
//!
//!     cargo run --example solve_system

use qgje::linalg::text::parse_system;
use qgje::linalg::{solve, SolutionKind};
use qgje::Rational;

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    let systems = [
        ("unique", "2 3\n1 1 2\n1 -1 0\n"),
        ("fractions", "2 3\n1/2 1/3 1\n1/4 -1 1/6\n"),
        ("plane in R^3", "2 4\n1 2 -1 3\n2 4 -2 6\n"),
        ("inconsistent", "2 3\n1 1 1\n1 1 2\n"),
    ];
    for (label, text) in systems {
        let system = parse_system(text).unwrap();
        let space = solve(&system);
        println!("{label}: {:?}", space.kind);
        if space.kind == SolutionKind::Inconsistent {
            continue;
        }
        let xp = space.particular.as_ref().unwrap();
        println!("  particular {}", show(xp));
        for v in &space.basis {
            println!("  direction  {}", show(v));
        }
        assert_eq!(system.coefficients().mul_vec(xp).unwrap(), system.rhs());
    }
}
