//! Singular solutions S_β built from x^{-1}, and their relation to the
//! derivatives of x^{-1}.
//!
//! Run with `cargo run --example singular_solutions`.

use cliffordian::calculus::is_holomorphic_cliffordian;
use cliffordian::solutions::{inverse_derivative, s_beta, s_beta_derivative_oracle, MultiIndex};
use cliffordian::{Paravector, Rational, Result, Scalar};

pub fn run_example() -> Result<()> {
    let m = 1;
    let x = Paravector::new(vec![Rational::ratio(1, 2), Rational::from_int(1), Rational::ratio(-1, 3), Rational::ratio(1, 4)])?;
    for beta in ["1,0,0,0", "0,1,1,0", "2,0,0,1"] {
        let beta: MultiIndex = beta.parse()?;
        let s = s_beta::<Rational>(&beta, m)?;
        let via_derivatives = s_beta_derivative_oracle::<Rational>(&beta, m)?;
        let at_x = s.eval_paravector(&x)?;
        println!("S{beta}(x) = {at_x}");
        println!(
            "  holomorphic {}, matches the derivative formula: {}",
            is_holomorphic_cliffordian(&s),
            at_x == via_derivatives.eval_paravector(&x)?
        );
    }

    let d = inverse_derivative::<Rational>(&"1,0,1,0".parse()?, m)?;
    println!("∂_0 ∂_2 x^-1 at x = {}", d.eval_paravector(&x)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
