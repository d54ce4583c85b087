//! Row-reduces a system with Grover pivot search and checks the result
//! against classical pivoting and against a replay of the row-op log.
//!
//!     cargo run --example rref_grover_pivot

use qgje::linalg::text::parse_system;
use qgje::linalg::{replay_row_ops, rref_classical};
use qgje::qgje::qgje_rref;

const SYSTEM: &str = "\
# 2x +  y -  z =   8
#-3x -  y + 2z = -11
#-2x +  y + 2z =  -3
3 4
 2  1 -1   8
-3 -1  2 -11
-2  1  2  -3
";

fn main() {
    let system = parse_system(SYSTEM).expect("valid system");
    let report = qgje_rref(&system, 42);
    let res = &report.rref_result;

    println!("reduced [A|b] ({} pivot search):", res.strategy);
    print!("{}", res.reduced);
    println!("pivot columns {:?}, rank {}", res.pivot_columns, res.rank);
    println!("\n{}", report.ledger);

    let classical = rref_classical(&system);
    assert_eq!(classical.reduced, res.reduced);
    let (replayed, mults) = replay_row_ops(&system.augmented(), &res.row_op_log).unwrap();
    assert_eq!(replayed, res.reduced);
    assert_eq!(mults, report.ledger.multiplications);
    println!(
        "\nclassical pivoting agrees; replaying {} row operations reproduces the result",
        res.row_op_log.len()
    );

    println!(
        "formula total at N = {}: {:.4} (ratio to 2^(N/2): {:.4})",
        report.rounds, report.paper_total, report.ratio_to_2_half_n
    );
}
