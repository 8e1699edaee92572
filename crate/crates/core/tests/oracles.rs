//! Checks against values computed independently of the library code paths.

use cliffordian::cauchy::{sphere_area, sphere_quadrature, Ball};
use cliffordian::elliptic::{zeta_truncated, Lattice};
use cliffordian::solutions::{p_alpha, MultiIndex};
use cliffordian::{Multivector, MvPolynomial, Paravector, Rational};
use statrs::function::gamma::gamma;

/// `∫_{S^{d-1}} Π y_i^{e_i} dσ = 2 Π Γ((e_i+1)/2) / Γ((|e|+d)/2)` for even
/// exponents, zero otherwise.
fn sphere_moment(exps: &[u32]) -> f64 {
    if exps.iter().any(|e| e % 2 == 1) {
        return 0.0;
    }
    let d = exps.len() as f64;
    let total: u32 = exps.iter().sum();
    2.0 * exps.iter().map(|&e| gamma((e as f64 + 1.0) / 2.0)).product::<f64>() / gamma((total as f64 + d) / 2.0)
}

#[test]
fn sphere_rule_reproduces_gamma_moments() {
    for m in 0..=2 {
        let d = 2 * m + 2;
        let center = Paravector::new((0..d).map(|i| 0.1 * i as f64 - 0.05).collect()).unwrap();
        let radius = 0.7;
        let ball = Ball::new(center.clone(), radius).unwrap();
        let rule = sphere_quadrature(&ball, 6).unwrap();
        assert!((rule.total_weight() - sphere_area(m, radius)).abs() < 1e-12);
        assert!((sphere_moment(&vec![0; d]) - sphere_area(m, 1.0)).abs() < 1e-12);
        let exponent_sets: Vec<Vec<u32>> = match d {
            2 => vec![vec![2, 0], vec![4, 2], vec![1, 3], vec![6, 4]],
            4 => vec![vec![2, 0, 0, 0], vec![2, 2, 0, 0], vec![0, 4, 2, 0], vec![2, 2, 2, 2], vec![3, 1, 0, 0], vec![0, 0, 0, 6]],
            _ => vec![vec![2, 0, 0, 0, 0, 0], vec![0, 2, 2, 0, 0, 2], vec![4, 0, 0, 0, 2, 0], vec![1, 0, 0, 0, 0, 1]],
        };
        for exps in exponent_sets {
            let total: u32 = exps.iter().sum();
            let got = rule.integrate(|y| {
                y.iter()
                    .zip(center.components())
                    .zip(&exps)
                    .map(|((yi, ci), &e)| ((yi - ci) / radius).powi(e as i32))
                    .product()
            });
            // scale back: (y - c)/r lies on the unit sphere, dσ carries r^{d-1}
            let want = sphere_moment(&exps) * radius.powi(d as i32 - 1);
            assert!((got - want).abs() < 1e-12, "m = {m}, exponents {exps:?}: {got} vs {want} (degree {total})");
        }
    }
}

#[test]
fn p_alpha_matches_hand_expansion() {
    // symmetrizing e_0 x e_1 and e_1 x e_0 with x = x_0 + x_1 e_1 + ...
    // gives x_0 e_1 - x_1 for α = (1,1,0,0)
    let p = p_alpha::<Rational>(&MultiIndex::new(vec![1, 1, 0, 0]), 1).unwrap();
    let mut want = MvPolynomial::<Rational>::zero(1);
    want.add_term(vec![1, 0, 0, 0], &Multivector::generator(1, 1));
    want.add_term(vec![0, 1, 0, 0], &Multivector::scalar(1, Rational::from_integer((-1).into())));
    assert_eq!(p, want);
}

#[test]
fn lemniscatic_zeta_at_half_period() {
    // For m = 0 the algebra is ℂ and ζ is the classical Weierstrass zeta of
    // the square lattice 2ℤ + 2iℤ. Its symmetry ζ(iz) = -iζ(z) together with
    // the Legendre relation η_1 ω_3 - η_3 ω_1 = πi/2 gives ζ(1) = π/4.
    let x = Paravector::new(vec![1.0, 0.0]).unwrap();
    for radius in [40.5, 120.5] {
        let z = zeta_truncated(&x, &Lattice::cubic(0), radius).unwrap();
        let want = std::f64::consts::FRAC_PI_4;
        let err = ((z.value.coeffs()[0] - want).powi(2) + z.value.coeffs()[1].powi(2)).sqrt();
        assert!(err <= z.tail_estimate, "R = {radius}: error {err:e}, tail {:e}", z.tail_estimate);
        assert!(err < 1e-5, "R = {radius}: error {err:e}");
    }
}
