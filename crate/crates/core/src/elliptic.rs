//! The Cliffordian Weierstrass zeta function
//!
//! ```text
//! ζ(x) = x^{-1} + Σ_{K≠0} [ (x - Ω_K)^{-1} + Σ_{p=0}^{2m+1} (Ω_K^{-1} x)^p Ω_K^{-1} ]
//! ```
//!
//! over the lattice `Ω_K = 2 Σ k_j ω_j`, truncated to `|Ω_K| <= R`, together
//! with a tail estimate for the omitted terms.
//!
//! Each bracket equals `-Σ_{p>=2m+2} (Ω^{-1}x)^p Ω^{-1}` and the norm is
//! multiplicative on these products, so its norm is bounded by
//! `Σ_{p>=2m+2} |x|^p/|Ω|^{p+1}`. Only the number of lattice points per shell
//! is modelled: `κ r^{2m+1} dr` with `κ` the sphere area over the covolume,
//! scaled up by the observed point density and a safety factor of 2.

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{variable_count, Multivector, Paravector, MAX_M};
use crate::calculus::{MvPolynomial, RationalMvFunction};
use crate::cauchy::sphere_area;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Safety factor on the modelled shell count.
pub const TAIL_SAFETY: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Lattice<T> {
    periods: Vec<Paravector<T>>,
}

impl<T: Scalar> Lattice<T> {
    /// Requires `2m+2` periods that are linearly independent over ℝ.
    pub fn new(periods: Vec<Paravector<T>>) -> Result<Self> {
        let Some(first) = periods.first() else {
            return Err(Error::DegenerateLattice("no periods".into()));
        };
        let m = first.m();
        if m > MAX_M || periods.len() != variable_count(m) || periods.iter().any(|p| p.m() != m) {
            return Err(Error::DegenerateLattice(format!(
                "need {} periods in R_{{0,{}}}",
                variable_count(m),
                2 * m + 1
            )));
        }
        let lattice = Lattice { periods };
        let scale: f64 = lattice.periods.iter().map(|p| p.norm_sqr().to_float()).product();
        let det = determinant(lattice.gram());
        if det.is_nan() || det.abs() <= 1e-12 * scale {
            return Err(Error::DegenerateLattice(format!("Gram determinant {det:e}")));
        }
        Ok(lattice)
    }

    /// `ω_j = e_j`, so `Ω_K = 2K`.
    pub fn cubic(m: usize) -> Self {
        Lattice {
            periods: (0..variable_count(m)).map(|j| Paravector::unit(m, j)).collect(),
        }
    }

    /// `ω_0 = e_0`, `ω_j = e_j ± e_{j-1}/4`: unimodular but not orthogonal.
    pub fn skewed(m: usize) -> Self {
        let d = variable_count(m);
        let periods = (0..d)
            .map(|j| {
                let mut c = vec![T::zero(); d];
                c[j] = T::one();
                if j > 0 {
                    c[j - 1] = T::ratio(if j % 2 == 1 { 1 } else { -1 }, 4);
                }
                Paravector::new(c).expect("even length")
            })
            .collect();
        Lattice::new(periods).expect("independent periods")
    }

    pub fn m(&self) -> usize {
        self.periods[0].m()
    }

    pub fn periods(&self) -> &[Paravector<T>] {
        &self.periods
    }

    pub fn gram(&self) -> Vec<Vec<f64>> {
        let w = self.period_matrix();
        w.iter()
            .map(|a| w.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect()
    }

    /// Rows are the periods `ω_j`.
    fn period_matrix(&self) -> Vec<Vec<f64>> {
        self.periods
            .iter()
            .map(|p| p.components().iter().map(Scalar::to_float).collect())
            .collect()
    }

    /// Volume of a fundamental cell of `{Ω_K}` (twice the periods).
    pub fn covolume(&self) -> f64 {
        let d = self.periods.len() as i32;
        2f64.powi(d) * determinant(self.period_matrix()).abs()
    }

    /// `Ω_K = 2 Σ k_j ω_j`.
    pub fn point(&self, k: &[i64]) -> Paravector<T> {
        let m = self.m();
        let mut acc = Paravector::zero(m);
        for (kj, w) in k.iter().zip(&self.periods) {
            if *kj != 0 {
                acc = acc.checked_add(&w.scale(&T::from_int(2 * kj))).expect("same algebra");
            }
        }
        acc
    }
}

fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .expect("non-empty");
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        let (top, bottom) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in bottom {
            let f = row[c] / pivot[c];
            for (v, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *v -= f * p;
            }
        }
    }
    det
}

/// Inverse by Gauss–Jordan with partial pivoting.
fn inverse(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| aug[i][c].abs().total_cmp(&aug[j][c].abs()))
            .expect("non-empty");
        aug.swap(p, c);
        let piv = aug[c][c];
        for v in aug[c].iter_mut() {
            *v /= piv;
        }
        let row = aug[c].clone();
        for (r, other) in aug.iter_mut().enumerate() {
            if r != c {
                let f = other[c];
                for (v, w) in other.iter_mut().zip(&row) {
                    *v -= f * w;
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LatticePoint<T> {
    pub k: Vec<i64>,
    pub omega: Paravector<T>,
}

/// All `K ≠ 0` with `|Ω_K| <= radius`, in lexicographic order of `K`.
pub fn lattice_enumerate<T: Scalar>(lattice: &Lattice<T>, radius: f64) -> Result<Vec<LatticePoint<T>>> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let d = lattice.periods.len();
    // Ω = 2 W^T k, so k_j = (1/2) Σ_i (W^{-1})_{j i}... bounded by |Ω|/2 times a column norm.
    let inv = inverse(&lattice.period_matrix());
    let bounds: Vec<i64> = (0..d)
        .map(|j| {
            let col: f64 = inv.iter().map(|row| row[j] * row[j]).sum::<f64>().sqrt();
            (0.5 * radius * col * (1.0 + 1e-12)).floor() as i64
        })
        .collect();
    let r = T::from_float(radius).ok_or_else(|| Error::InvalidInput("radius".into()))?;
    let r2 = r.clone() * r;
    let mut out = Vec::new();
    let mut k: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        if k.iter().any(|&v| v != 0) {
            let omega = lattice.point(&k);
            if omega.norm_sqr() <= r2 {
                out.push(LatticePoint { k: k.clone(), omega });
            }
        }
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if k[j] < bounds[j] {
                k[j] += 1;
                break;
            }
            k[j] = -bounds[j];
        }
    }
}

/// Norm bound for `∂_axis^order` of one bracket term at `|x| = s`, `|Ω| = rho`.
///
/// Differentiating `(Ω^{-1}x)^p Ω^{-1}` k times replaces k of the p factors by
/// `Ω^{-1} e_axis`, giving at most `p!/(p-k)!` products of norm
/// `s^{p-k}/ρ^{p+1}`. Requires `s < ρ`.
pub fn term_bound(s: f64, rho: f64, m: usize, order: u32) -> f64 {
    let k = order as u64;
    let start = (2 * m as u64 + 2).max(k);
    let q = s / rho;
    if start == k {
        // Σ_{p>=k} p!/(p-k)! s^{p-k}/ρ^{p+1} = k!/(ρ - s)^{k+1}
        let k_fact: f64 = (1..=k).map(|i| i as f64).product();
        return k_fact / (rho - s).powi(order as i32 + 1);
    }
    // coefficient p!/(p-k)! at p = start
    let mut coeff: f64 = ((start - k + 1)..=start).map(|i| i as f64).product();
    let mut term = coeff * q.powi((start - k) as i32) / rho.powi(k as i32 + 1);
    let mut sum = 0.0;
    let mut p = start;
    while term > 1e-18 * sum || sum == 0.0 {
        sum += term;
        let next = p + 1;
        let new_coeff = coeff * next as f64 / (next - k) as f64;
        term *= new_coeff / coeff * q;
        coeff = new_coeff;
        p = next;
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// Shell-count model for the points beyond the enumerated radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    /// Sphere area over covolume.
    pub kappa: f64,
    /// Enumerated count over the volume prediction at the truncation radius.
    pub count_ratio: f64,
    pub safety: f64,
}

impl TailModel {
    fn calibrate<T: Scalar>(lattice: &Lattice<T>, radius: f64, count: usize) -> Self {
        let m = lattice.m();
        let d = variable_count(m) as i32;
        let kappa = sphere_area(m, 1.0) / lattice.covolume();
        let predicted = kappa * radius.powi(d) / d as f64;
        TailModel {
            kappa,
            count_ratio: count as f64 / predicted,
            safety: TAIL_SAFETY,
        }
    }

    /// `safety · κ · max(1, ratio) · ∫_R^∞ ρ^{2m+1} b(ρ) dρ`, integrated in
    /// `t = R/ρ ∈ (0, 1]` by Gauss–Legendre.
    pub fn tail(&self, s: f64, radius: f64, m: usize, order: u32) -> f64 {
        let gl = GaussLegendre::new(std::num::NonZeroUsize::new(48).expect("nonzero"));
        let integral = gl.integrate(0.0, 1.0, |t| {
            if t <= 0.0 {
                return 0.0;
            }
            let rho = radius / t;
            rho.powi(2 * m as i32 + 1) * term_bound(s, rho, m, order) * radius / (t * t)
        });
        self.safety * self.kappa * self.count_ratio.max(1.0) * integral
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ZetaValue<T> {
    pub value: Multivector<T>,
    pub tail_estimate: f64,
    pub radius: f64,
    pub terms: usize,
    pub axis: usize,
    pub order: u32,
}

/// The truncated sum for a fixed lattice and radius, ready for repeated
/// evaluation.
#[derive(Clone, Debug)]
pub struct TruncatedZeta<T> {
    lattice: Lattice<T>,
    radius: f64,
    points: Vec<LatticePoint<T>>,
    omega_inverses: Vec<Multivector<T>>,
    tail_model: TailModel,
}

impl<T: Scalar> TruncatedZeta<T> {
    pub fn new(lattice: Lattice<T>, radius: f64) -> Result<Self> {
        let points = lattice_enumerate(&lattice, radius)?;
        let omega_inverses = points
            .iter()
            .map(|p| Ok(p.omega.inverse()?.to_multivector()))
            .collect::<Result<_>>()?;
        let tail_model = TailModel::calibrate(&lattice, radius, points.len());
        Ok(TruncatedZeta {
            lattice,
            radius,
            points,
            omega_inverses,
            tail_model,
        })
    }

    pub fn lattice(&self) -> &Lattice<T> {
        &self.lattice
    }

    pub fn points(&self) -> &[LatticePoint<T>] {
        &self.points
    }

    pub fn tail_model(&self) -> &TailModel {
        &self.tail_model
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `ζ_R(x)`.
    pub fn value(&self, x: &Paravector<T>) -> Result<ZetaValue<T>> {
        self.derivative(x, 0, 0)
    }

    /// `∂_axis^order ζ_R(x)`, differentiated term by term.
    pub fn derivative(&self, x: &Paravector<T>, axis: usize, order: u32) -> Result<ZetaValue<T>> {
        let m = self.lattice.m();
        if x.m() != m {
            return Err(Error::DimensionMismatch("evaluation point and lattice".into()));
        }
        if axis >= variable_count(m) {
            return Err(Error::AxisOutOfRange {
                axis,
                nvars: variable_count(m),
            });
        }
        let s = x.norm();
        if self.radius < 2.0 * s {
            return Err(Error::InvalidInput(format!(
                "radius {} is below 2|x| = {}",
                self.radius,
                2.0 * s
            )));
        }
        let xm = x.to_multivector();
        let e = Multivector::generator(m, axis);
        let terms: Vec<Multivector<T>> = self
            .points
            .par_iter()
            .zip(&self.omega_inverses)
            .map(|(p, oi)| bracket_derivative(x, &xm, &p.omega, oi, &e, m, order))
            .collect::<Result<_>>()?;
        let mut value = pairwise_mv_sum(&terms, m);
        value.add_assign_ref(&inverse_derivative(x, &e, order)?);
        Ok(ZetaValue {
            value,
            tail_estimate: self.tail_model.tail(s, self.radius, m, order),
            radius: self.radius,
            terms: self.points.len(),
            axis,
            order,
        })
    }

    /// The truncated sum as an exact rational function of `x`.
    pub fn to_rational_function(&self) -> Result<RationalMvFunction<T>> {
        let m = self.lattice.m();
        let x = MvPolynomial::<T>::paravector_variable(m);
        let mut f = RationalMvFunction::inverse(m);
        for (p, oi) in self.points.iter().zip(&self.omega_inverses) {
            f = f.checked_add(&RationalMvFunction::shifted_inverse(&p.omega))?;
            let step = x.left_mul_mv(oi);
            let mut chain = MvPolynomial::constant(Multivector::one(m));
            let mut poly = MvPolynomial::zero(m);
            for _ in 0..=(2 * m + 1) {
                poly = poly.checked_add(&chain.right_mul_mv(oi))?;
                chain = chain.checked_mul(&step)?;
            }
            f = f.checked_add(&RationalMvFunction::from_polynomial(poly))?;
        }
        Ok(f)
    }
}

fn pairwise_mv_sum<T: Scalar>(items: &[Multivector<T>], m: usize) -> Multivector<T> {
    match items.len() {
        0 => Multivector::zero(m),
        1 => items[0].clone(),
        n => {
            let (a, b) = items.split_at(n / 2);
            let mut left = pairwise_mv_sum(a, m);
            left.add_assign_ref(&pairwise_mv_sum(b, m));
            left
        }
    }
}

/// `∂_e^k y^{-1} = (-1)^k k! (y^{-1} e)^k y^{-1}`.
fn inverse_derivative<T: Scalar>(y: &Paravector<T>, e: &Multivector<T>, order: u32) -> Result<Multivector<T>> {
    let yi = y.inverse()?.to_multivector();
    let step = &yi * e;
    let mut out = yi;
    for _ in 0..order {
        out = &step * &out;
    }
    let k_fact: i64 = (1..=order as i64).product();
    let sign = if order.is_multiple_of(2) { 1 } else { -1 };
    Ok(out.scale(&T::from_int(sign * k_fact)))
}

/// `∂_e^k [ (x - Ω)^{-1} + Σ_{p=0}^{2m+1} (Ω^{-1} x)^p Ω^{-1} ]`.
fn bracket_derivative<T: Scalar>(
    x: &Paravector<T>,
    xm: &Multivector<T>,
    omega: &Paravector<T>,
    omega_inv: &Multivector<T>,
    e: &Multivector<T>,
    m: usize,
    order: u32,
) -> Result<Multivector<T>> {
    let y = x.checked_sub(omega)?;
    if y.is_zero() {
        return Err(Error::SingularPoint(format!(
            "x coincides with the lattice point {:?}",
            omega.to_float().components()
        )));
    }
    let mut out = inverse_derivative(&y, e, order)?;
    let k = order as usize;
    let top = 2 * m + 1;
    if k > top {
        return Ok(out);
    }
    // dp[c] = Σ over products of the first j factors with c of them
    // differentiated; factor Ω^{-1} x, derivative Ω^{-1} e.
    let a = omega_inv * xm;
    let b = omega_inv * e;
    let mut dp: Vec<Multivector<T>> = vec![Multivector::zero(m); k + 1];
    dp[0] = Multivector::one(m);
    let k_fact = T::from_int((1..=k as i64).product());
    for p in 0..=top {
        if p >= k {
            let term = &dp[k] * omega_inv;
            out.add_scaled_assign(&k_fact, &term);
        }
        // extend by one factor
        for c in (0..=k).rev() {
            let mut next = &dp[c] * &a;
            if c > 0 {
                next.add_assign_ref(&(&dp[c - 1] * &b));
            }
            dp[c] = next;
        }
    }
    Ok(out)
}

/// `ζ_R(x)` with its tail estimate.
pub fn zeta_truncated<T: Scalar>(x: &Paravector<T>, lattice: &Lattice<T>, radius: f64) -> Result<ZetaValue<T>> {
    TruncatedZeta::new(lattice.clone(), radius)?.value(x)
}

/// `∂_axis^order ζ_R(x)`.
pub fn zeta_partial_derivative<T: Scalar>(
    x: &Paravector<T>,
    lattice: &Lattice<T>,
    radius: f64,
    axis: usize,
    order: u32,
) -> Result<ZetaValue<T>> {
    TruncatedZeta::new(lattice.clone(), radius)?.derivative(x, axis, order)
}

/// `|G(x + 2ω_j) - G(x)|` with `G = ∂_axis^order ζ_R`.
pub fn periodicity_check(
    x: &Paravector<f64>,
    lattice: &Lattice<f64>,
    radius: f64,
    period: usize,
    axis: usize,
    order: u32,
) -> Result<f64> {
    periodicity_defect(&TruncatedZeta::new(lattice.clone(), radius)?, x, period, axis, order)
}

fn periodicity_defect(z: &TruncatedZeta<f64>, x: &Paravector<f64>, period: usize, axis: usize, order: u32) -> Result<f64> {
    let m = z.lattice.m();
    if order < 2 * m as u32 + 1 {
        return Err(Error::InvalidInput(format!(
            "periodicity needs derivative order at least {}",
            2 * m + 1
        )));
    }
    let shift = z
        .lattice
        .periods()
        .get(period)
        .ok_or_else(|| Error::InvalidInput(format!("period index {period} out of range")))?
        .scale(&2.0);
    let shifted = x.checked_add(&shift)?;
    let g0 = z.derivative(x, axis, order)?;
    let g1 = z.derivative(&shifted, axis, order)?;
    Ok((&g1.value - &g0.value).norm())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicityStudy {
    pub radii: Vec<f64>,
    pub defects: Vec<f64>,
    /// `defect[i+1] / defect[i]`.
    pub decay_ratios: Vec<f64>,
    pub period: usize,
    pub axis: usize,
    pub order: u32,
}

/// Periodicity defects at several radii.
pub fn periodicity_study(
    x: &Paravector<f64>,
    lattice: &Lattice<f64>,
    radii: &[f64],
    period: usize,
    axis: usize,
    order: u32,
) -> Result<PeriodicityStudy> {
    let mut defects = Vec::with_capacity(radii.len());
    for &r in radii {
        defects.push(periodicity_check(x, lattice, r, period, axis, order)?);
    }
    let decay_ratios = defects.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(PeriodicityStudy {
        radii: radii.to_vec(),
        defects,
        decay_ratios,
        period,
        axis,
        order,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub radius: f64,
    pub points: usize,
    /// Σ of per-term bounds over the enumerated points.
    pub bound_sum: f64,
}

/// Partial sums of the per-term bounds over growing radii. The absolute
/// series converges iff these stay bounded; the rows should be increasing
/// with shrinking increments.
pub fn convergence_certificate(x: &Paravector<f64>, lattice: &Lattice<f64>, radii: &[f64], order: u32) -> Result<Vec<CertificateRow>> {
    let m = lattice.m();
    let s = x.norm();
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let pts = lattice_enumerate(lattice, r)?;
        let mut bounds = Vec::with_capacity(pts.len());
        for p in &pts {
            let rho = p.omega.norm();
            if rho <= s {
                return Err(Error::Divergence(format!(
                    "lattice point with |Ω| = {rho} inside |x| = {s}"
                )));
            }
            bounds.push(term_bound(s, rho, m, order));
        }
        rows.push(CertificateRow {
            radius: r,
            points: pts.len(),
            bound_sum: crate::numeric::pairwise_sum(&bounds),
        });
    }
    Ok(rows)
}

/// Exact oddness defect `ζ_R(-x) + ζ_R(x)` over the rationals.
pub fn oddness_defect(x: &Paravector<Rational>, zeta: &TruncatedZeta<Rational>) -> Result<Multivector<Rational>> {
    let a = zeta.value(x)?.value;
    let b = zeta.value(&x.neg())?.value;
    Ok(&a + &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::is_holomorphic_cliffordian;

    fn para(v: &[f64]) -> Paravector<f64> {
        Paravector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cubic_lattice_small_radius() {
        let pts = lattice_enumerate(&Lattice::<f64>::cubic(1), 2.0).unwrap();
        assert_eq!(pts.len(), 8);
        for p in &pts {
            assert!((p.omega.norm() - 2.0).abs() < 1e-15);
            assert_eq!(p.k.iter().map(|v| v.abs()).sum::<i64>(), 1);
        }
    }

    #[test]
    fn enumeration_is_symmetric() {
        for lattice in [Lattice::<f64>::cubic(1), Lattice::skewed(1)] {
            let pts = lattice_enumerate(&lattice, 7.3).unwrap();
            for p in &pts {
                let neg: Vec<i64> = p.k.iter().map(|v| -v).collect();
                assert!(pts.iter().any(|q| q.k == neg));
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_skewed_lattice() {
        let lattice = Lattice::<f64>::skewed(1);
        let r = 5.0;
        let pts = lattice_enumerate(&lattice, r).unwrap();
        let mut count = 0;
        let b = 6i64;
        for a in -b..=b {
            for c in -b..=b {
                for d in -b..=b {
                    for e in -b..=b {
                        let k = [a, c, d, e];
                        if k != [0; 4] && lattice.point(&k).norm() <= r {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(pts.len(), count);
    }

    #[test]
    fn degenerate_lattice_rejected() {
        let w = vec![para(&[1.0, 0.0, 0.0, 0.0]), para(&[2.0, 0.0, 0.0, 0.0]), para(&[0.0, 0.0, 1.0, 0.0]), para(&[0.0, 0.0, 0.0, 1.0])];
        assert!(matches!(Lattice::new(w), Err(Error::DegenerateLattice(_))));
        assert!(Lattice::new(vec![para(&[1.0, 0.0])]).is_err());
    }

    #[test]
    fn covolume_of_cubic_lattice() {
        assert!((Lattice::<f64>::cubic(1).covolume() - 16.0).abs() < 1e-12);
        assert!((Lattice::<f64>::skewed(1).covolume() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn order_four_term_is_pure_inverse_power() {
        // ∂_0^4 bracket = 24 (x - Ω)^{-5}
        let x = para(&[0.1, 0.2, -0.3, 0.05]);
        let omega = para(&[2.0, 0.0, 0.0, 0.0]);
        let oi = omega.inverse().unwrap().to_multivector();
        let e0 = Multivector::one(1);
        let got = bracket_derivative(&x, &x.to_multivector(), &omega, &oi, &e0, 1, 4).unwrap();
        let yi = x.checked_sub(&omega).unwrap().inverse().unwrap().to_multivector();
        let mut p = yi.clone();
        for _ in 0..4 {
            p = &p * &yi;
        }
        assert!((&got - &p.scale(&24.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let z = TruncatedZeta::new(Lattice::<f64>::skewed(1), 6.0).unwrap();
        let x = para(&[0.3, -0.2, 0.1, 0.25]);
        for axis in [0, 2] {
            for order in 1..=3 {
                let exact = z.derivative(&x, axis, order).unwrap().value;
                let h = 1e-3;
                let mut xp = x.components().to_vec();
                let mut xm = x.components().to_vec();
                xp[axis] += h;
                xm[axis] -= h;
                let fp = z.derivative(&para(&xp), axis, order - 1).unwrap().value;
                let fm = z.derivative(&para(&xm), axis, order - 1).unwrap().value;
                let fd = (&fp - &fm).scale(&(0.5 / h));
                assert!((&fd - &exact).norm() < 1e-4 * exact.norm().max(1.0), "axis {axis}, order {order}");
            }
        }
    }

    #[test]
    fn term_bound_holds_on_random_cases() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let e = Multivector::one(1);
        for _ in 0..100 {
            let omega = para(&(0..4).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<_>>());
            let rho = omega.norm();
            let x = para(&(0..4).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>()).scale(&(0.45 * rho / 2.0));
            let oi = omega.inverse().unwrap().to_multivector();
            for order in [0, 1, 3, 4] {
                let v = bracket_derivative(&x, &x.to_multivector(), &omega, &oi, &e, 1, order).unwrap();
                assert!(v.norm() <= term_bound(x.norm(), rho, 1, order) * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn truncated_sum_is_holomorphic() {
        let z = TruncatedZeta::new(Lattice::<Rational>::cubic(1), 2.0).unwrap();
        assert!(is_holomorphic_cliffordian(&z.to_rational_function().unwrap()));
    }

    #[test]
    fn exact_oddness() {
        let z = TruncatedZeta::new(Lattice::<Rational>::cubic(1), 3.0).unwrap();
        let x = Paravector::new(vec![Rational::ratio(1, 3), Rational::ratio(-2, 7), Rational::ratio(1, 5), Rational::ratio(1, 11)]).unwrap();
        assert!(oddness_defect(&x, &z).unwrap().is_zero());
    }

    #[test]
    fn rejects_lattice_points_and_small_radius() {
        let z = TruncatedZeta::new(Lattice::<f64>::cubic(1), 5.0).unwrap();
        assert!(matches!(z.value(&para(&[2.0, 0.0, 0.0, 0.0])), Err(Error::SingularPoint(_))));
        assert!(matches!(z.value(&Paravector::zero(1)), Err(Error::SingularPoint(_))));
        assert!(matches!(z.value(&para(&[3.0, 0.0, 0.0, 0.1])), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn periodicity_from_order_2m_plus_1() {
        let x = para(&[0.3, -0.2, 0.1, 0.25]);
        for lattice in [Lattice::<f64>::cubic(1), Lattice::skewed(1)] {
            for (axis, period) in [(0, 0), (1, 2), (3, 1)] {
                let s = periodicity_study(&x, &lattice, &[5.1, 10.1], period, axis, 3).unwrap();
                assert!(s.decay_ratios[0] < 0.2, "{s:?}");
            }
            assert!(periodicity_check(&x, &lattice, 5.1, 0, 0, 2).is_err());
        }
    }

    #[test]
    fn self_consistency_across_radii() {
        let lattice = Lattice::<f64>::cubic(1);
        let x = para(&[0.3, -0.2, 0.1, 0.25]);
        let a = zeta_truncated(&x, &lattice, 6.1).unwrap();
        let b = zeta_truncated(&x, &lattice, 12.2).unwrap();
        assert!((&a.value - &b.value).norm() <= a.tail_estimate);
        assert!(b.tail_estimate < a.tail_estimate);
    }
}
