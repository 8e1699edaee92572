//! The Cliffordian Weierstrass zeta function on the cubic lattice.
//!
//! Run with `cargo run --release --example weierstrass_zeta`.

use cliffordian::elliptic::{convergence_certificate, oddness_defect, periodicity_study, zeta_truncated, Lattice, TruncatedZeta};
use cliffordian::{Multivector, Paravector, Rational, Result, Scalar};

/// Drops round-off noise below 1e-12 before printing.
fn chop(v: &Multivector<f64>) -> Multivector<f64> {
    v.map_scalars(|c| if c.abs() < 1e-12 { 0.0 } else { *c })
}

pub fn run_example() -> Result<()> {
    // m = 0 is the classical case; on the square lattice ζ(1) = π/4
    let z = zeta_truncated(&Paravector::new(vec![1.0, 0.0])?, &Lattice::cubic(0), 60.5)?;
    println!("m = 0: ζ(1) ≈ {:.10} (π/4 = {})", z.value.coeffs()[0], std::f64::consts::FRAC_PI_4);

    let lattice = Lattice::<f64>::cubic(1);
    let x = Paravector::new(vec![0.3, -0.2, 0.1, 0.25])?;
    for radius in [4.1, 8.1] {
        let z = zeta_truncated(&x, &lattice, radius)?;
        println!("R = {radius}: {} terms, ζ_R(x) = {}, tail <= {:.2e}", z.terms, chop(&z.value), z.tail_estimate);
    }
    for row in convergence_certificate(&x, &lattice, &[4.0, 8.0, 16.0], 0)? {
        println!("Σ term bounds up to R = {}: {:.6} ({} points)", row.radius, row.bound_sum, row.points);
    }

    // ζ itself is not periodic, but its derivatives of order >= 2m+1 are
    let study = periodicity_study(&x, &lattice, &[5.1, 10.1], 0, 0, 4)?;
    println!("periodicity defects {:?}, ratio {:?}", study.defects, study.decay_ratios);

    let exact = TruncatedZeta::new(Lattice::<Rational>::cubic(1), 3.0)?;
    let xq = Paravector::new(vec![Rational::ratio(1, 3), Rational::ratio(-2, 5), Rational::from_int(0), Rational::ratio(1, 7)])?;
    println!("ζ_R(-x) + ζ_R(x) = {} (exact)", oddness_defect(&xq, &exact)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
