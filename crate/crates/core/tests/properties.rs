use cliffordian::calculus::{dirac, laplacian, lhc_residual, CliffordField, MvPolynomial, RationalMvFunction};
use cliffordian::series::{neumann_inverse_series, neumann_tail_bound};
use cliffordian::solutions::MultiIndex;
use cliffordian::{Multivector, Paravector, Rational, Scalar};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn multivector(m: usize) -> impl Strategy<Value = Multivector<Rational>> {
    prop::collection::vec(small_rational(), 1 << (2 * m + 1))
        .prop_map(move |c| Multivector::from_coeffs(m, c).unwrap())
}

fn paravector(m: usize) -> impl Strategy<Value = Paravector<Rational>> {
    prop::collection::vec(small_rational(), 2 * m + 2).prop_map(|c| Paravector::new(c).unwrap())
}

/// Sparse polynomial in 4 variables (m = 1) of degree <= 4.
fn polynomial() -> impl Strategy<Value = MvPolynomial<Rational>> {
    prop::collection::vec((prop::collection::vec(0u32..=1, 4), multivector(1)), 1..4).prop_map(|terms| {
        let mut p = MvPolynomial::zero(1);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(a in multivector(1), b in multivector(1), c in multivector(1)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn paravector_norm_is_multiplicative(x in paravector(1), a in multivector(1)) {
        let xm = x.to_multivector();
        prop_assert_eq!((&xm * &a).norm_sqr(), x.norm_sqr() * a.norm_sqr());
        prop_assert_eq!((&a * &xm).norm_sqr(), x.norm_sqr() * a.norm_sqr());
    }

    #[test]
    fn paravector_inverse(x in paravector(1)) {
        prop_assume!(!x.is_zero());
        let p = &x.to_multivector() * &x.inverse().unwrap().to_multivector();
        prop_assert_eq!(p, Multivector::one(1));
    }

    #[test]
    fn operators_are_right_linear(f in polynomial(), c in multivector(1)) {
        // D acts from the left, so right multiplication by a constant commutes with it
        prop_assert_eq!(dirac(&f.right_mul_mv(&c)), dirac(&f).right_mul_mv(&c));
        prop_assert_eq!(laplacian(&f.right_mul_mv(&c), 1), laplacian(&f, 1).right_mul_mv(&c));
        prop_assert_eq!(lhc_residual(&f.right_mul_mv(&c)), lhc_residual(&f).right_mul_mv(&c));
    }

    #[test]
    fn laplacian_factors_through_dirac(f in polynomial()) {
        // D̄ D = Δ, with D̄ = ∂_0 - Σ e_i ∂_i
        let df = dirac(&f);
        let mut dbar = df.partial(0).unwrap();
        for i in 1..4 {
            let term = df.partial(i).unwrap().left_mul_mv(&Multivector::generator(1, i));
            dbar = CliffordField::sub(&dbar, &term);
        }
        prop_assert_eq!(dbar, laplacian(&f, 1));
    }

    #[test]
    fn multivector_document_round_trip(a in multivector(1)) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Multivector<Rational>>(&text).unwrap(), a);
    }

    #[test]
    fn polynomial_document_round_trip(f in polynomial()) {
        let text = serde_json::to_string(&f.to_doc()).unwrap();
        let back = MvPolynomial::<Rational>::from_doc(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rational_document_round_trip(f in polynomial(), c in paravector(1)) {
        let mut r = RationalMvFunction::from_polynomial(f.clone());
        r.push(f, c, 2);
        let text = serde_json::to_string(&r.to_doc()).unwrap();
        let back = RationalMvFunction::<Rational>::from_doc(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn multi_index_text_round_trip(v in prop::collection::vec(0u32..6, 4)) {
        let a = MultiIndex::new(v);
        prop_assert_eq!(a.to_string().parse::<MultiIndex>().unwrap(), a);
    }

    #[test]
    fn neumann_bound_holds_in_exact_arithmetic(x in paravector(1), w in paravector(1), order in 0u32..=8) {
        prop_assume!(!w.is_zero());
        prop_assume!(x.norm_sqr() * Rational::from_int(4) <= w.norm_sqr());
        let s = neumann_inverse_series(&x, &w, order).unwrap();
        let exact = x.checked_sub(&w).unwrap().inverse().unwrap().to_multivector();
        let err = (&s.partial_sum - &exact).norm_sqr().to_float().sqrt();
        prop_assert!(err <= neumann_tail_bound(x.norm(), w.norm(), order));
    }
}
