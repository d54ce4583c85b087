//! Digit-string arithmetic in base q and additive characters of Z/q^n.
//!
//!     cargo run --example base_q_arithmetic

use num_bigint::BigUint;
use qgje::qft::{
    carry_phase_angle, classical_add_base_q, classical_mul_base_q, BaseQDigits, CharacterParams,
};

fn main() {
    let q = 7;
    let a = BaseQDigits::from_u64(2024, q).unwrap();
    let b = BaseQDigits::from_u64(1567, q).unwrap();
    let sum = classical_add_base_q(&a, &b).unwrap();
    let product = classical_mul_base_q(&a, &b).unwrap();
    println!("base {q}, least significant digit first");
    println!("a     = {:?} = {}", a.digits(), a.value());
    println!("b     = {:?} = {}", b.digits(), b.value());
    println!("a + b = {:?} = {}", sum.digits(), sum.value());
    println!("a * b = {:?} = {}", product.digits(), product.value());
    assert_eq!(product.value(), BigUint::from(2024u32 * 1567));

    for (i, (&x, &y)) in a.digits().iter().zip(b.digits()).enumerate() {
        let angle = carry_phase_angle(x, y, q, i as i32 + 1);
        println!("digit {i}: {x} + {y}, carry phase {angle:.6}");
    }

    let chi = CharacterParams::new(3, vec![1, 2]).unwrap();
    let (x, y) = ([4, 5], [7, -2]);
    let lhs = chi.character(&[x[0] + y[0], x[1] + y[1]]).unwrap();
    let rhs = chi.character(&x).unwrap() * chi.character(&y).unwrap();
    println!("chi(x+y) = {lhs:.6}, chi(x)chi(y) = {rhs:.6}");
}
