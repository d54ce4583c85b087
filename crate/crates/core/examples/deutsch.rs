//! Classifies every one-bit function with a single oracle application.
//!
//!     cargo run --example deutsch

use qgje::grover::deutsch_classify;

fn main() {
    for table in [[false, false], [false, true], [true, false], [true, true]] {
        let class = deutsch_classify(table);
        println!(
            "f(0)={} f(1)={}  ->  {class:?}",
            table[0] as u8, table[1] as u8
        );
    }
}
