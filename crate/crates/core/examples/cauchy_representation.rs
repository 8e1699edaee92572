//! Numerical reproduction of the Cauchy-type representation on the unit ball
//! of R^4 (m = 1): calibrate the measure convention and normalization, then
//! watch the defect fall with the quadrature level.
//!
//! Run with `cargo run --release --example cauchy_representation`.

use cliffordian::acceptance::{cauchy_test_points, p_alpha_family};
use cliffordian::cauchy::{calibration_scan, cauchy_reconstruct, convergence_study, kernel_n, relative_defect, Ball, Convention};
use cliffordian::solutions::p_alpha;
use cliffordian::{Multivector, Result};

/// Drops quadrature noise below 1e-9 before printing.
fn chop(v: &Multivector<f64>) -> Multivector<f64> {
    v.map_scalars(|c| if c.abs() < 1e-9 { 0.0 } else { *c })
}

pub fn run_example() -> Result<()> {
    let m = 1;
    let ball = Ball::unit(m);
    let kernel = kernel_n(m);
    println!("N(x) = {} π^-{} x^-1", kernel.prefactor.rational, kernel.prefactor.inverse_pi_power);

    let functions = p_alpha_family(m, 2)?;
    let points = cauchy_test_points();
    let report = calibration_scan(&functions, &points, &ball, 8, &Convention::ALL)?;
    for c in &report.conventions {
        println!(
            "{:12} lambda in [{:.6}, {:.6}], spread {:.1e}, accepted {}",
            c.convention.name(),
            c.lambda_min,
            c.lambda_max,
            c.spread,
            c.accepted
        );
    }
    let convention = report.accepted.unwrap_or(Convention::Mixed);

    let study = convergence_study(&functions, &points, &ball, &[4, 6, 8, 12], convention)?;
    println!("lambda (finest level) = {:.10}", study.lambda);
    for level in &study.levels {
        println!("level {:2} ({:5} nodes): max defect {:.2e}", level.level, level.nodes, level.max_defect);
    }

    let f = p_alpha(&"1,1,0,0".parse()?, m)?;
    let rec = cauchy_reconstruct(&f, &ball, &points[1], 12, convention)?;
    println!(
        "f = P(1,1,0,0) at {:?}: f(x) = {}, value / lambda = {}, defect {:.1e}",
        points[1].components(),
        rec.expected,
        chop(&rec.value.scale(&(1.0 / study.lambda))),
        relative_defect(&rec.value, &rec.expected, study.lambda)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
