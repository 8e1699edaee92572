//! Neumann, Taylor and Laurent expansions.
//!
//! Fits are exact: coefficients come from rational linear systems and every
//! fit is checked by subtracting the reconstruction and zero-testing the
//! difference. Since the families `{P_α}` and `{S_β}` are linearly dependent,
//! coefficients are not unique; the minimum-norm solution is returned.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{algebra_dim, variable_count, Blade, Multivector, Paravector};
use crate::calculus::{MvPolynomial, RationalMvFunction};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::scalar::{Rational, Scalar};
use crate::solutions::{homogeneous_coordinates, monomials_of_degree, p_alpha, p_alpha_shifted, s_beta, MultiIndex};

/// Truncated expansion `(x - Ω)^{-1} = -Σ_{p=0}^{P} (Ω^{-1} x)^p Ω^{-1} + tail`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct NeumannSum<T> {
    pub partial_sum: Multivector<T>,
    /// `|x|^{P+1} / (|Ω|^{P+2} (1 - |x|/|Ω|))`
    pub tail_bound: f64,
    pub order: u32,
}

/// Each term has norm exactly `|x|^p / |Ω|^{p+1}` (the norm is
/// multiplicative on products with paravector factors), so the geometric tail
/// is a rigorous bound.
pub fn neumann_tail_bound(norm_x: f64, norm_omega: f64, order: u32) -> f64 {
    let r = norm_x / norm_omega;
    r.powi(order as i32 + 1) / (norm_omega * (1.0 - r))
}

pub fn neumann_inverse_series<T: Scalar>(x: &Paravector<T>, omega: &Paravector<T>, order: u32) -> Result<NeumannSum<T>> {
    if x.m() != omega.m() {
        return Err(Error::DimensionMismatch("x and Ω".into()));
    }
    if omega.is_zero() {
        return Err(Error::SingularPoint("Ω = 0".into()));
    }
    if x.norm_sqr() >= omega.norm_sqr() {
        return Err(Error::Divergence(format!(
            "|x| = {} is not below |Ω| = {}",
            x.norm(),
            omega.norm()
        )));
    }
    let omega_inv = omega.inverse()?.to_multivector();
    let ratio = &omega_inv * &x.to_multivector();
    let mut term = omega_inv;
    let mut sum = -&term;
    for _ in 0..order {
        term = &ratio * &term;
        sum = &sum - &term;
    }
    Ok(NeumannSum {
        partial_sum: sum,
        tail_bound: neumann_tail_bound(x.norm(), omega.norm(), order),
        order,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct IndexedCoefficient<T> {
    pub index: MultiIndex,
    pub coeff: Multivector<T>,
}

/// `f(x) = Σ_α P_α(x - a) c_α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorFit {
    pub center: Paravector<Rational>,
    pub dmax: u32,
    pub coefficients: Vec<IndexedCoefficient<Rational>>,
    pub residual_zero: bool,
}

impl TaylorFit {
    pub fn reconstruct(&self) -> Result<MvPolynomial<Rational>> {
        let mut out = MvPolynomial::zero(self.center.m());
        for c in &self.coefficients {
            let p = p_alpha_shifted(&c.index, &self.center)?;
            out = out.checked_add(&p.right_mul_mv(&c.coeff))?;
        }
        Ok(out)
    }
}

/// Solution of `Σ_j dict_j c_j = target` with right multivector coefficients,
/// all polynomials homogeneous of `degree`.
enum BlockFit {
    Exact(Vec<Multivector<Rational>>),
    LeastSquares(Vec<Multivector<Rational>>),
}

fn fit_block(
    target: &MvPolynomial<Rational>,
    dictionary: &[MvPolynomial<Rational>],
    degree: u32,
    allow_least_squares: bool,
) -> Result<Option<BlockFit>> {
    let m = target.m();
    let dim = algebra_dim(m);
    if target.is_zero() {
        return Ok(Some(BlockFit::Exact(vec![Multivector::zero(m); dictionary.len()])));
    }
    let monos = monomials_of_degree(variable_count(m), degree);
    let mut columns = Vec::with_capacity(dictionary.len() * dim);
    for p in dictionary {
        for b in 0..dim {
            let pe = p.right_mul_mv(&Multivector::basis(m, Blade::from_mask(b as u32)));
            columns.push(homogeneous_coordinates(&pe, &monos));
        }
    }
    let a = RationalMatrix::from_columns(monos.len() * dim, &columns)?;
    let rhs = homogeneous_coordinates(target, &monos);
    let to_coeffs = |x: Vec<Rational>| -> Result<Vec<Multivector<Rational>>> {
        x.chunks(dim)
            .map(|c| Multivector::from_coeffs(m, c.to_vec()))
            .collect()
    };
    match a.min_norm_solution(&rhs)? {
        Some(x) => Ok(Some(BlockFit::Exact(to_coeffs(x)?))),
        None if allow_least_squares => Ok(Some(BlockFit::LeastSquares(to_coeffs(a.min_norm_least_squares(&rhs)?)?))),
        None => Ok(None),
    }
}

fn collect_nonzero(
    out: &mut Vec<IndexedCoefficient<Rational>>,
    indices: Vec<MultiIndex>,
    coeffs: Vec<Multivector<Rational>>,
) {
    for (index, coeff) in indices.into_iter().zip(coeffs) {
        if !coeff.is_zero() {
            out.push(IndexedCoefficient { index, coeff });
        }
    }
}

/// Expands a holomorphic Cliffordian polynomial around `a`.
///
/// `P_α` is homogeneous of degree `|α| - 1`, so after the shift `u = x - a`
/// the system splits into one block per degree.
pub fn taylor_fit(f: &MvPolynomial<Rational>, a: &Paravector<Rational>, dmax: u32) -> Result<TaylorFit> {
    let m = f.m();
    if a.m() != m {
        return Err(Error::DimensionMismatch("expansion center".into()));
    }
    if let Some(deg) = f.degree() {
        if deg > dmax {
            return Err(Error::InvalidInput(format!("degree {deg} exceeds dmax = {dmax}")));
        }
    }
    let g = f.shift(a)?;
    let nvars = variable_count(m);
    let mut coefficients = Vec::new();
    for k in 0..=dmax {
        let target = g.homogeneous_part(k);
        let alphas = MultiIndex::with_order(nvars, k + 1);
        let dict = alphas.iter().map(|al| p_alpha(al, m)).collect::<Result<Vec<_>>>()?;
        match fit_block(&target, &dict, k, false)? {
            Some(BlockFit::Exact(c)) | Some(BlockFit::LeastSquares(c)) => collect_nonzero(&mut coefficients, alphas, c),
            None => {
                return Err(Error::CompletenessViolation(format!(
                    "the degree-{k} part is not a right combination of the P_α with |α| = {}",
                    k + 1
                )))
            }
        }
    }
    let mut fit = TaylorFit {
        center: a.clone(),
        dmax,
        coefficients,
        residual_zero: false,
    };
    fit.residual_zero = fit.reconstruct()?.checked_sub(f)?.is_zero();
    Ok(fit)
}

/// `f(x) = Σ_α P_α(x) c_α + Σ_β S_β(x) d_β` around the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentFit {
    pub m: usize,
    pub dmax: u32,
    pub bmax: u32,
    pub polynomial_coefficients: Vec<IndexedCoefficient<Rational>>,
    pub singular_coefficients: Vec<IndexedCoefficient<Rational>>,
    /// Homogeneous degrees that could not be matched exactly.
    pub unmatched_degrees: Vec<i64>,
    pub residual_zero: bool,
}

impl LaurentFit {
    pub fn reconstruct(&self) -> Result<RationalMvFunction<Rational>> {
        let mut out = RationalMvFunction::zero(self.m);
        for c in &self.polynomial_coefficients {
            let p = RationalMvFunction::from_polynomial(p_alpha(&c.index, self.m)?);
            out = out.checked_add(&p.right_mul_mv(&c.coeff))?;
        }
        for d in &self.singular_coefficients {
            out = out.checked_add(&s_beta(&d.index, self.m)?.right_mul_mv(&d.coeff))?;
        }
        Ok(out)
    }
}

fn r2_power(m: usize, k: u32) -> MvPolynomial<Rational> {
    let r2 = MvPolynomial::squared_distance(&Paravector::zero(m));
    let mut out = MvPolynomial::constant(Multivector::one(m));
    for _ in 0..k {
        out = out.checked_mul(&r2).expect("same algebra");
    }
    out
}

fn divide_r2(p: &MvPolynomial<Rational>, times: u32) -> Option<MvPolynomial<Rational>> {
    let origin = Paravector::zero(p.m());
    let mut cur = p.clone();
    for _ in 0..times {
        cur = cur.div_exact_by_squared_distance(&origin)?;
    }
    Some(cur)
}

/// Splits `f` (poles only at 0) into homogeneous pieces `M_h / |x|^{2K_h}`.
fn homogeneous_pieces(f: &RationalMvFunction<Rational>) -> Result<BTreeMap<i64, (MvPolynomial<Rational>, u32)>> {
    let m = f.m();
    let mut raw: BTreeMap<i64, Vec<(MvPolynomial<Rational>, u32)>> = BTreeMap::new();
    for t in f.terms() {
        if t.k > 0 && !t.center.is_zero() {
            return Err(Error::InvalidInput(format!(
                "Laurent expansion is around 0, but f has a pole at {:?}",
                t.center.to_float().components()
            )));
        }
        let degrees: BTreeSet<u32> = t.numerator.terms().map(|(e, _)| e.iter().sum()).collect();
        for j in degrees {
            let h = j as i64 - 2 * t.k as i64;
            raw.entry(h).or_default().push((t.numerator.homogeneous_part(j), t.k));
        }
    }
    let mut out = BTreeMap::new();
    for (h, parts) in raw {
        let kmax = parts.iter().map(|(_, k)| *k).max().unwrap_or(0);
        let mut num = MvPolynomial::zero(m);
        for (p, k) in parts {
            num = num.checked_add(&p.checked_mul(&r2_power(m, kmax - k))?)?;
        }
        if !num.is_zero() {
            out.insert(h, (num, kmax));
        }
    }
    Ok(out)
}

/// Joint fit in `{P_α : |α| <= dmax + 1}` and `{S_β : |β| <= bmax}`.
///
/// Both families are homogeneous (`P_α` of degree `|α| - 1`, `S_β` of degree
/// `-|β|`), so each homogeneous piece of `f` is fitted separately. Pieces
/// outside the index bounds, or not of the required shape, are left in the
/// residual; the fit never fails on non-representable input.
pub fn laurent_fit(f: &RationalMvFunction<Rational>, dmax: u32, bmax: u32) -> Result<LaurentFit> {
    let m = f.m();
    let nvars = variable_count(m);
    let mut polynomial_coefficients = Vec::new();
    let mut singular_coefficients = Vec::new();
    let mut unmatched_degrees = Vec::new();
    for (h, (num, k)) in homogeneous_pieces(f)? {
        let fitted = if h >= 0 {
            let h = h as u32;
            match (h <= dmax).then(|| divide_r2(&num, k)).flatten() {
                Some(target) => {
                    let alphas = MultiIndex::with_order(nvars, h + 1);
                    let dict = alphas.iter().map(|a| p_alpha(a, m)).collect::<Result<Vec<_>>>()?;
                    fit_block(&target, &dict, h, true)?.map(|fit| (fit, alphas, &mut polynomial_coefficients))
                }
                None => None,
            }
        } else {
            let n = (-h) as u32;
            let target = if n > bmax {
                None
            } else if k >= n {
                divide_r2(&num, k - n)
            } else {
                Some(num.checked_mul(&r2_power(m, n - k))?)
            };
            match target {
                Some(target) => {
                    let betas = MultiIndex::with_order(nvars, n);
                    let dict = betas
                        .iter()
                        .map(|b| Ok(s_beta::<Rational>(b, m)?.terms()[0].numerator.clone()))
                        .collect::<Result<Vec<_>>>()?;
                    fit_block(&target, &dict, n, true)?.map(|fit| (fit, betas, &mut singular_coefficients))
                }
                None => None,
            }
        };
        match fitted {
            Some((BlockFit::Exact(c), idx, out)) => collect_nonzero(out, idx, c),
            Some((BlockFit::LeastSquares(c), idx, out)) => {
                unmatched_degrees.push(h);
                collect_nonzero(out, idx, c);
            }
            None => unmatched_degrees.push(h),
        }
    }
    let mut fit = LaurentFit {
        m,
        dmax,
        bmax,
        polynomial_coefficients,
        singular_coefficients,
        unmatched_degrees,
        residual_zero: false,
    };
    fit.residual_zero = fit.reconstruct()?.checked_sub(f)?.is_identically_zero();
    Ok(fit)
}

/// `Σ_{p=0}^{order} (x^{-1} a)^p x^{-1}`, the expansion of `(x - a)^{-1}`
/// valid for `|x| > |a|`, as an exact rational function with its only pole at 0.
pub fn shifted_inverse_outer_expansion(a: &Paravector<Rational>, order: u32) -> Result<RationalMvFunction<Rational>> {
    let m = a.m();
    let bar_x = MvPolynomial::<Rational>::paravector_variable(m).conjugate();
    let step = bar_x.right_mul_mv(&a.to_multivector());
    let mut out = RationalMvFunction::zero(m);
    let mut chain = MvPolynomial::constant(Multivector::one(m));
    for p in 0..=order {
        let num = chain.checked_mul(&bar_x)?;
        out = out.checked_add(&RationalMvFunction::from_term(num, Paravector::zero(m), p + 1)?)?;
        chain = chain.checked_mul(&step)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OuterFitRow {
    pub bmax: u32,
    /// The truncated expansion is reproduced exactly by the fit.
    pub fit_exact: bool,
    /// Largest `|fit(x) - (x - a)^{-1}|` over the sample points.
    pub max_error: f64,
}

/// Laurent fits of `(x - a)^{-1}` on `|x| > |a|` for growing `bmax`.
///
/// The function has its pole at `a`, not at 0, so it is first replaced by
/// its outer expansion truncated at order `bmax - 1`; the fit of that is exact
/// and the error against the true function is measured at the samples.
pub fn shifted_inverse_laurent_study(
    a: &Paravector<Rational>,
    bmaxes: &[u32],
    samples: &[Paravector<f64>],
) -> Result<Vec<OuterFitRow>> {
    let a_f = a.to_float();
    let na = a_f.norm();
    for x in samples {
        if x.norm() <= na {
            return Err(Error::InvalidInput(format!(
                "sample with |x| = {} is not outside |a| = {na}",
                x.norm()
            )));
        }
    }
    let mut rows = Vec::with_capacity(bmaxes.len());
    for &bmax in bmaxes {
        if bmax == 0 {
            return Err(Error::InvalidInput("bmax must be at least 1".into()));
        }
        let g = shifted_inverse_outer_expansion(a, bmax - 1)?;
        let fit = laurent_fit(&g, 0, bmax)?;
        let recon = fit.reconstruct()?.to_float();
        let mut max_error: f64 = 0.0;
        for x in samples {
            let exact = x.checked_sub(&a_f)?.inverse()?.to_multivector();
            max_error = max_error.max((&recon.eval_paravector(x)? - &exact).norm());
        }
        rows.push(OuterFitRow {
            bmax,
            fit_exact: fit.residual_zero,
            max_error,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn para(v: &[Rational]) -> Paravector<Rational> {
        Paravector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn neumann_at_origin() {
        let omega = para(&[q(2), q(0), q(1), q(0)]);
        let s = neumann_inverse_series(&Paravector::zero(1), &omega, 5).unwrap();
        assert_eq!(s.partial_sum, -&omega.inverse().unwrap().to_multivector());
        assert_eq!(s.tail_bound, 0.0);
    }

    #[test]
    fn neumann_complex_case_matches_geometric_series() {
        // m = 0: paravectors are complex numbers x_0 + x_1 i
        let x = para(&[Rational::ratio(1, 3), Rational::ratio(1, 4)]);
        let omega = para(&[q(1), q(1)]);
        let s = neumann_inverse_series(&x, &omega, 30).unwrap().partial_sum.to_float();
        // 1/(z - w) = conj(d)/|d|^2 with d = z - w
        let (dr, di) = (1.0 / 3.0 - 1.0, 0.25 - 1.0);
        let n2 = dr * dr + di * di;
        assert!((s.coeffs()[0] - dr / n2).abs() < 1e-12);
        assert!((s.coeffs()[1] + di / n2).abs() < 1e-12);
    }

    #[test]
    fn neumann_rejects_divergent_input() {
        let x = para(&[q(1), q(1), q(0), q(0)]);
        let omega = para(&[q(0), q(1), q(1), q(0)]);
        assert!(matches!(neumann_inverse_series(&x, &omega, 3), Err(Error::Divergence(_))));
        assert!(matches!(
            neumann_inverse_series(&x, &Paravector::zero(1), 3),
            Err(Error::SingularPoint(_))
        ));
    }

    #[test]
    fn taylor_of_family_members() {
        let f = p_alpha::<Rational>(&mi("1,1,0,0"), 1).unwrap();
        let fit = taylor_fit(&f, &Paravector::zero(1), 1).unwrap();
        assert!(fit.residual_zero);
        let x = MvPolynomial::<Rational>::paravector_variable(1);
        let fit = taylor_fit(&x, &Paravector::zero(1), 1).unwrap();
        assert!(fit.residual_zero);
        let shifted = taylor_fit(&x, &para(&[q(1), q(-2), Rational::ratio(1, 2), q(0)]), 2).unwrap();
        assert!(shifted.residual_zero);
    }

    #[test]
    fn taylor_rejects_non_solutions() {
        let x0 = MvPolynomial::<Rational>::variable(0, 0);
        let f = x0.checked_mul(&x0).unwrap();
        assert!(matches!(
            taylor_fit(&f, &Paravector::zero(0), 2),
            Err(Error::CompletenessViolation(_))
        ));
    }

    #[test]
    fn laurent_of_dictionary_members() {
        let s = s_beta::<Rational>(&mi("0,2,0,0"), 1).unwrap();
        let p = RationalMvFunction::from_polynomial(p_alpha::<Rational>(&mi("2,0,0,0"), 1).unwrap());
        let fit = laurent_fit(&s.checked_add(&p).unwrap(), 1, 2).unwrap();
        assert!(fit.residual_zero);
        assert!(fit.unmatched_degrees.is_empty());
        let fit = laurent_fit(&RationalMvFunction::inverse(1), 0, 1).unwrap();
        assert!(fit.residual_zero);
        // the four S_β with |β| = 1 all equal x^{-1}; the minimum-norm
        // solution splits the weight evenly
        assert_eq!(fit.singular_coefficients.len(), 4);
        let total = fit
            .singular_coefficients
            .iter()
            .fold(Multivector::zero(1), |acc, c| &acc + &c.coeff);
        assert_eq!(total, Multivector::one(1));
    }

    #[test]
    fn laurent_reports_out_of_bounds_pieces() {
        let s = s_beta::<Rational>(&mi("1,1,0,0"), 1).unwrap();
        let fit = laurent_fit(&s, 0, 1).unwrap();
        assert!(!fit.residual_zero);
        assert_eq!(fit.unmatched_degrees, vec![-2]);
        assert!(laurent_fit(&RationalMvFunction::shifted_inverse(&para(&[q(1), q(0), q(0), q(0)])), 0, 1).is_err());
    }

    #[test]
    fn outer_expansion_matches_inverse() {
        let a = para(&[Rational::ratio(1, 4), q(0), Rational::ratio(1, 8), q(0)]);
        let g = shifted_inverse_outer_expansion(&a, 14).unwrap().to_float();
        let x = Paravector::new(vec![1.0, 0.5, -0.2, 0.3]).unwrap();
        let exact = x.checked_sub(&a.to_float()).unwrap().inverse().unwrap().to_multivector();
        assert!((&g.eval_paravector(&x).unwrap() - &exact).norm() < 1e-9);
    }

    #[test]
    fn outer_study_error_decreases() {
        let a = para(&[Rational::ratio(1, 4), q(0), Rational::ratio(1, 8), q(0)]);
        let samples: Vec<_> = [[1.0, 0.0, 0.0, 0.0], [0.0, -1.0, 0.5, 0.0], [0.3, 0.3, 0.3, -0.9]]
            .iter()
            .map(|v| Paravector::new(v.to_vec()).unwrap())
            .collect();
        let rows = shifted_inverse_laurent_study(&a, &[1, 2, 3], &samples).unwrap();
        assert!(rows.iter().all(|r| r.fit_exact));
        assert!(rows.windows(2).all(|w| w[1].max_error < w[0].max_error));
    }
}
