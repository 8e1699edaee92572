//! Exact differential operators on multivector-valued polynomials and
//! rational functions.
//!
//! `D = Σ e_i ∂_i` acts from the left. A function is holomorphic Cliffordian
//! when `D Δ^m f` vanishes identically.

mod polynomial;
mod rational;

pub use polynomial::{Exponents, MvPolynomial, PolynomialDoc, PolynomialTermDoc};
pub use rational::{RationalDoc, RationalMvFunction, RationalTerm, RationalTermDoc};

use crate::algebra::{variable_count, Multivector};
use crate::error::Result;
use crate::scalar::Scalar;

/// Functions of a paravector argument that can be differentiated exactly.
pub trait CliffordField<T: Scalar>: Clone + Sized {
    fn algebra_m(&self) -> usize;

    fn zero_like(&self) -> Self;

    fn partial(&self, axis: usize) -> Result<Self>;

    fn left_mul_mv(&self, a: &Multivector<T>) -> Self;

    /// `x * self` with x the paravector variable.
    fn left_mul_x(&self) -> Self;

    fn add(&self, other: &Self) -> Self;

    fn sub(&self, other: &Self) -> Self;

    fn is_identically_zero(&self) -> bool;
}

impl<T: Scalar> CliffordField<T> for MvPolynomial<T> {
    fn algebra_m(&self) -> usize {
        self.m()
    }

    fn zero_like(&self) -> Self {
        MvPolynomial::zero(self.m())
    }

    fn partial(&self, axis: usize) -> Result<Self> {
        MvPolynomial::partial(self, axis)
    }

    fn left_mul_mv(&self, a: &Multivector<T>) -> Self {
        MvPolynomial::left_mul_mv(self, a)
    }

    fn left_mul_x(&self) -> Self {
        MvPolynomial::left_mul_x(self)
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("same algebra")
    }

    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("same algebra")
    }

    fn is_identically_zero(&self) -> bool {
        self.is_zero()
    }
}

impl<T: Scalar> CliffordField<T> for RationalMvFunction<T> {
    fn algebra_m(&self) -> usize {
        self.m()
    }

    fn zero_like(&self) -> Self {
        RationalMvFunction::zero(self.m())
    }

    fn partial(&self, axis: usize) -> Result<Self> {
        RationalMvFunction::partial(self, axis)
    }

    fn left_mul_mv(&self, a: &Multivector<T>) -> Self {
        RationalMvFunction::left_mul_mv(self, a)
    }

    fn left_mul_x(&self) -> Self {
        RationalMvFunction::left_mul_x(self)
    }

    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("same algebra")
    }

    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("same algebra")
    }

    fn is_identically_zero(&self) -> bool {
        RationalMvFunction::is_identically_zero(self)
    }
}

/// `D f = Σ_i e_i ∂_i f`.
pub fn dirac<T: Scalar, F: CliffordField<T>>(f: &F) -> F {
    let m = f.algebra_m();
    let mut out = f.zero_like();
    for i in 0..variable_count(m) {
        let d = f.partial(i).expect("axis in range");
        out = out.add(&d.left_mul_mv(&Multivector::generator(m, i)));
    }
    out
}

/// `D̄ f = ∂_0 f - Σ_{i>=1} e_i ∂_i f`.
pub fn dirac_bar<T: Scalar, F: CliffordField<T>>(f: &F) -> F {
    let m = f.algebra_m();
    let mut out = f.zero_like();
    for i in 0..variable_count(m) {
        let d = f.partial(i).expect("axis in range");
        out = out.add(&d.left_mul_mv(&Multivector::generator(m, i).conjugate()));
    }
    out
}

/// `Δ^times f`.
pub fn laplacian<T: Scalar, F: CliffordField<T>>(f: &F, times: u32) -> F {
    let m = f.algebra_m();
    let mut cur = f.clone();
    for _ in 0..times {
        let mut next = cur.zero_like();
        for i in 0..variable_count(m) {
            let d2 = cur
                .partial(i)
                .and_then(|d| d.partial(i))
                .expect("axis in range");
            next = next.add(&d2);
        }
        cur = next;
    }
    cur
}

/// `D Δ^m f`, with m the algebra parameter of `f`.
pub fn lhc_residual<T: Scalar, F: CliffordField<T>>(f: &F) -> F {
    let m = f.algebra_m() as u32;
    dirac(&laplacian(f, m))
}

/// Exact holomorphic-Cliffordian test.
pub fn is_holomorphic_cliffordian<T: Scalar, F: CliffordField<T>>(f: &F) -> bool {
    lhc_residual(f).is_identically_zero()
}

/// `(Δ^{m+1} f, Δ^{m+1}(x f))`.
///
/// Both vanish iff `D Δ^m f = 0`, through the identity
/// `Δ^{m+1}(x f) = x Δ^{m+1} f + 2(m+1) D Δ^m f`.
pub fn remark2_residuals<T: Scalar, F: CliffordField<T>>(f: &F) -> (F, F) {
    let m = f.algebra_m() as u32;
    let r1 = laplacian(f, m + 1);
    let r2 = laplacian(&f.left_mul_x(), m + 1);
    (r1, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Paravector;
    use crate::scalar::Rational;

    type Poly = MvPolynomial<Rational>;
    type Rf = RationalMvFunction<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn dirac_of_x() {
        for m in 0..=2 {
            let x = Poly::paravector_variable(m);
            let expected = Multivector::scalar(m, q(-2 * m as i64));
            assert_eq!(dirac(&x), Poly::constant(expected));
            let expected_bar = Multivector::scalar(m, q(2 * m as i64 + 2));
            assert_eq!(dirac_bar(&x), Poly::constant(expected_bar));
        }
    }

    #[test]
    fn dirac_annihilates_first_order_solution() {
        let p = Poly::variable(1, 0)
            .left_mul_mv(&Multivector::generator(1, 1))
            .checked_sub(&Poly::variable(1, 1))
            .unwrap();
        assert!(dirac(&p).is_zero());
        let c = Poly::constant(Multivector::generator(1, 3));
        assert!(dirac(&c).is_zero());
        assert!(dirac_bar(&c).is_zero());
    }

    #[test]
    fn laplacian_examples() {
        let x0 = Poly::variable(1, 0);
        let x1 = Poly::variable(1, 1);
        let f = x0.checked_mul(&x0).unwrap().checked_add(&x1.checked_mul(&x1).unwrap()).unwrap();
        assert_eq!(laplacian(&f, 1), Poly::constant(Multivector::scalar(1, q(4))));
        assert_eq!(laplacian(&f, 0), f);
    }

    #[test]
    fn laplacian_of_inverse_in_four_dimensions() {
        // Δ x^{-1} = -4 bar(x) / |x|^4
        let lap = laplacian(&Rf::inverse(1), 1);
        let conj = Poly::paravector_variable(1).conjugate();
        let expected = Rf::from_term(conj.scale(&q(-4)), Paravector::zero(1), 2).unwrap();
        assert!(lap.checked_sub(&expected).unwrap().is_identically_zero());
    }

    #[test]
    fn inverse_is_holomorphic_but_not_polyharmonic_of_order_m() {
        for m in 0..=2usize {
            let inv = Rf::inverse(m);
            assert!(is_holomorphic_cliffordian(&inv), "m = {m}");
            if m >= 1 {
                assert!(!laplacian(&inv, m as u32).is_identically_zero());
            }
        }
    }

    #[test]
    fn residual_of_high_power_is_nonzero() {
        for m in 0..=1usize {
            let x0 = Poly::variable(m, 0);
            let mut p = Poly::constant(Multivector::one(m));
            for _ in 0..(2 * m + 2) {
                p = p.checked_mul(&x0).unwrap();
            }
            assert!(!lhc_residual(&p).is_zero());
        }
        let c = Poly::constant(Multivector::generator(1, 2));
        assert!(lhc_residual(&c).is_zero());
    }

    #[test]
    fn remark2_on_quartic_power() {
        let x0 = Poly::variable(1, 0);
        let mut p = Poly::constant(Multivector::one(1));
        for _ in 0..4 {
            p = p.checked_mul(&x0).unwrap();
        }
        let (_, r2) = remark2_residuals(&p);
        assert!(!r2.is_zero());
    }
}
