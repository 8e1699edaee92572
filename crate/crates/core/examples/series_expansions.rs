//! Neumann, Taylor and Laurent expansions in exact arithmetic.
//!
//! Run with `cargo run --example series_expansions`.

use cliffordian::calculus::RationalMvFunction;
use cliffordian::sampling;
use cliffordian::series::{laurent_fit, neumann_inverse_series, shifted_inverse_laurent_study, taylor_fit};
use cliffordian::{Paravector, Rational, Result, Scalar};

pub fn run_example() -> Result<()> {
    // (x - Ω)^{-1} as a geometric series in Ω^{-1} x
    let x = Paravector::new(vec![0.3, -0.2, 0.1, 0.4])?;
    let omega = Paravector::new(vec![2.0, 0.0, 1.0, 0.0])?;
    let exact = x.checked_sub(&omega)?.inverse()?.to_multivector();
    for order in [0, 2, 4, 8] {
        let s = neumann_inverse_series(&x, &omega, order)?;
        println!(
            "P = {order}: error {:.2e} <= bound {:.2e}",
            (&s.partial_sum - &exact).norm(),
            s.tail_bound
        );
    }

    let mut rng = sampling::rng(7);
    let f = sampling::p_alpha_combination(&mut rng, 1, 3, 3)?;
    let center = Paravector::new(vec![Rational::from_int(1), Rational::ratio(-1, 2), Rational::from_int(0), Rational::ratio(1, 3)])?;
    let fit = taylor_fit(&f, &center, 2)?;
    println!("Taylor about a: {} coefficients, exact: {}", fit.coefficients.len(), fit.residual_zero);

    let g = RationalMvFunction::from_polynomial(sampling::p_alpha_combination(&mut rng, 1, 2, 2)?)
        .checked_add(&sampling::s_beta_combination(&mut rng, 1, 2, 2)?)?;
    let fit = laurent_fit(&g, 2, 2)?;
    println!(
        "Laurent about 0: {} regular + {} singular coefficients, exact: {}",
        fit.polynomial_coefficients.len(),
        fit.singular_coefficients.len(),
        fit.residual_zero
    );

    // a pole away from the origin is only approximated by finite Laurent sums
    let a = Paravector::new(vec![Rational::ratio(1, 2), Rational::from_int(0), Rational::from_int(0), Rational::from_int(0)])?;
    let samples = vec![Paravector::new(vec![2.0, 1.0, 0.0, -1.0])?, Paravector::new(vec![-1.5, 0.5, 2.0, 0.0])?];
    for row in shifted_inverse_laurent_study(&a, &[1, 2, 3], &samples)? {
        println!("(x - a)^-1 with |β| <= {}: exact {}, max error {:.2e}", row.bmax, row.fit_exact, row.max_error);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
