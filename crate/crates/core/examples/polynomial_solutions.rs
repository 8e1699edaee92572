//! The polynomial solutions P_α of D Δ^m f = 0.
//!
//! Run with `cargo run --example polynomial_solutions`.

use cliffordian::calculus::{is_holomorphic_cliffordian, laplacian, dirac};
use cliffordian::solutions::{multiset_arrangements, p_alpha, p_alpha_shifted, MultiIndex};
use cliffordian::{Paravector, Rational, Result, Scalar};

pub fn run_example() -> Result<()> {
    let m = 1;
    for alpha in ["1,0,0,0", "1,1,0,0", "0,2,1,0", "1,1,1,1"] {
        let alpha: MultiIndex = alpha.parse()?;
        let p = p_alpha::<Rational>(&alpha, m)?;
        let orderings = multiset_arrangements(&alpha)?.count();
        println!(
            "P{alpha}: degree {:?}, {orderings} distinct orderings, holomorphic {}",
            p.degree(),
            is_holomorphic_cliffordian(&p)
        );
        if alpha.order() <= 2 {
            println!("  = {p}");
        }
    }

    // P_α is not monogenic in general: D P_α ≠ 0 while D Δ P_α = 0
    let p = p_alpha::<Rational>(&"0,2,1,0".parse()?, m)?;
    println!("D P is zero: {}", dirac(&p).is_zero());
    println!("D Δ P is zero: {}", dirac(&laplacian(&p, 1)).is_zero());

    let a = Paravector::new(vec![Rational::from_int(1), Rational::ratio(1, 2), Rational::from_int(0), Rational::from_int(0)])?;
    let shifted = p_alpha_shifted::<Rational>(&"1,1,0,0".parse()?, &a)?;
    println!("P(1,1,0,0)(x - a) = {shifted}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
