//! The kernel `N`, sphere quadrature and the Cauchy-type integral
//! representation on balls.
//!
//! For `f` with `D Δ^m f = 0` and `x` inside a ball `Γ`,
//!
//! ```text
//! λ f(x) = ∫ Δ^m N(y-x) n f dS
//!        - Σ_k ∫ ∂_n Δ^{m-k} N(y-x) · D Δ^{k-1} f dS
//!        + Σ_k ∫ Δ^{m-k} N(y-x) · ∂_n D Δ^{k-1} f dS
//! ```
//!
//! where the placement of the unit normal `n` in the first integrand is set
//! by a [`Convention`] and `λ` is measured by [`calibration_scan`].

use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use gauss_quad::jacobi::GaussJacobi;
use gauss_quad::FiniteAboveNegOneF64;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{algebra_dim, variable_count, Multivector, Paravector, MAX_M};
use crate::calculus::{self, MvPolynomial, RationalMvFunction};
use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, pairwise_sum_vectors};
use crate::scalar::{Rational, Scalar};

/// Nodes per parallel work unit; fixed so reductions do not depend on the
/// thread count.
const BLOCK: usize = 512;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    center: Paravector<f64>,
    radius: f64,
}

impl Ball {
    pub fn new(center: Paravector<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Ball { center, radius })
    }

    pub fn unit(m: usize) -> Self {
        Ball {
            center: Paravector::zero(m),
            radius: 1.0,
        }
    }

    pub fn center(&self) -> &Paravector<f64> {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn m(&self) -> usize {
        self.center.m()
    }

    /// Distance from `x` to the center divided by the radius.
    pub fn relative_position(&self, x: &Paravector<f64>) -> Result<f64> {
        Ok(x.checked_sub(&self.center)?.norm() / self.radius)
    }

    fn require_interior(&self, x: &Paravector<f64>) -> Result<()> {
        let r = self.relative_position(x)?;
        if r < 1.0 - 1e-12 {
            Ok(())
        } else {
            Err(Error::NotInterior(format!(
                "point at relative radius {r} is not strictly inside the ball"
            )))
        }
    }

    /// Outward unit normal at a boundary point.
    pub fn normal(&self, y: &[f64]) -> Vec<f64> {
        y.iter()
            .zip(self.center.components())
            .map(|(a, c)| (a - c) / self.radius)
            .collect()
    }
}

/// `(-1)^m (m+1) / (2^{2m+1} m!)` times `π^{-(m+1)}`, the π power kept apart.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPrefactor {
    pub rational: Rational,
    pub inverse_pi_power: u32,
}

impl KernelPrefactor {
    pub fn for_m(m: usize) -> Self {
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        let m_fact: BigInt = (1..=m as u64).map(BigInt::from).product();
        let den = (BigInt::from(1) << (2 * m + 1)) * m_fact;
        KernelPrefactor {
            rational: Rational::new(BigInt::from(sign * (m as i64 + 1)), den),
            inverse_pi_power: m as u32 + 1,
        }
    }

    pub fn to_float(&self) -> f64 {
        self.rational.to_float() / std::f64::consts::PI.powi(self.inverse_pi_power as i32)
    }
}

/// A kernel `prefactor · r(x)` with `r` an exact rational function.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledKernel {
    pub prefactor: KernelPrefactor,
    pub rational_part: RationalMvFunction<Rational>,
}

impl ScaledKernel {
    pub fn to_float(&self) -> RationalMvFunction<f64> {
        self.rational_part.to_float().scale(&self.prefactor.to_float())
    }
}

/// `N(x)`: prefactor and the rational part `x^{-1}`.
pub fn kernel_n(m: usize) -> ScaledKernel {
    ScaledKernel {
        prefactor: KernelPrefactor::for_m(m),
        rational_part: RationalMvFunction::inverse(m),
    }
}

/// `[N, Δ N, ..., Δ^m N]`, computed exactly.
pub fn kernel_laplacians(m: usize) -> Vec<ScaledKernel> {
    let mut out = vec![kernel_n(m)];
    for _ in 0..m {
        let last = out.last().expect("non-empty");
        out.push(ScaledKernel {
            prefactor: last.prefactor.clone(),
            rational_part: calculus::laplacian(&last.rational_part, 1),
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub level: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let v: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(y, w)| w * f(y))
            .collect();
        pairwise_sum(&v)
    }
}

/// Product rule on the sphere `S^{2m+1}` bounding `ball`.
///
/// Hyperspherical coordinates with polar angles `θ_1..θ_{d-2}` and azimuth
/// `φ`. The surface element carries `sin^{d-1-j} θ_j`; substituting
/// `t = cos θ_j` turns it into the Jacobi weight `(1-t²)^{(d-2-j)/2 - 1/2}`,
/// so each polar angle gets a `level`-point Gauss–Jacobi rule (Gauss–Legendre
/// for the last one) and the azimuth gets `2·level` equispaced nodes. Sphere
/// harmonics of degree below `2·level` integrate exactly. Node count:
/// `2·level^{2m+1}`.
pub fn sphere_quadrature(ball: &Ball, level: usize) -> Result<QuadratureRule> {
    let m = ball.m();
    if m > MAX_M {
        return Err(Error::Unsupported(format!("sphere quadrature for m = {m}")));
    }
    let level_nz = NonZeroUsize::new(level)
        .ok_or_else(|| Error::InvalidInput("quadrature level must be at least 1".into()))?;
    let d = variable_count(m);
    let polar = d - 2;
    // (cos θ, sin θ, weight) per polar angle
    let angle_rules: Vec<Vec<(f64, f64, f64)>> = (0..polar)
        .map(|j| {
            let exponent = (d - 3 - j) as f64 / 2.0;
            let a = FiniteAboveNegOneF64::new(exponent).expect("non-negative exponent");
            GaussJacobi::new(level_nz, a, a)
                .as_node_weight_pairs()
                .iter()
                .map(|&(t, w)| (t, (1.0 - t * t).max(0.0).sqrt(), w))
                .collect()
        })
        .collect();
    let n_phi = 2 * level;
    let dphi = std::f64::consts::TAU / n_phi as f64;

    let r = ball.radius();
    let area_scale = r.powi(d as i32 - 1);
    let mut nodes = Vec::with_capacity(level.pow(polar as u32) * n_phi);
    let mut weights = Vec::with_capacity(nodes.capacity());
    let mut idx = vec![0usize; polar];
    loop {
        let mut point = vec![0.0; d];
        let mut sin_prod = 1.0;
        let mut w = dphi * area_scale;
        for (j, &i) in idx.iter().enumerate() {
            let (cos, sin, wt) = angle_rules[j][i];
            point[j] = sin_prod * cos;
            w *= wt;
            sin_prod *= sin;
        }
        for k in 0..n_phi {
            let phi = k as f64 * dphi;
            let mut y = point.clone();
            y[d - 2] = sin_prod * phi.cos();
            y[d - 1] = sin_prod * phi.sin();
            for (yi, ci) in y.iter_mut().zip(ball.center().components()) {
                *yi = ci + r * *yi;
            }
            nodes.push(y);
            weights.push(w);
        }
        // odometer over the polar indices
        let mut j = polar;
        loop {
            if j == 0 {
                return Ok(QuadratureRule {
                    level,
                    nodes,
                    weights,
                });
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < level {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Surface area of `S^{2m+1}` with radius `r`: `2 π^{m+1} r^{2m+1} / m!`.
pub fn sphere_area(m: usize, r: f64) -> f64 {
    let m_fact: f64 = (1..=m).map(|k| k as f64).product();
    2.0 * std::f64::consts::PI.powi(m as i32 + 1) * r.powi(2 * m as i32 + 1) / m_fact
}

/// Gradient of a rational function, prepared for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Gradient {
    partials: Vec<RationalMvFunction<f64>>,
}

impl Gradient {
    pub fn new(f: &RationalMvFunction<f64>) -> Result<Self> {
        let partials = (0..f.nvars()).map(|i| f.partial(i)).collect::<Result<_>>()?;
        Ok(Gradient { partials })
    }

    /// `Σ_i n_i (∂_i f)(point)`.
    pub fn directional(&self, point: &[f64], n: &[f64]) -> Result<Multivector<f64>> {
        let m = self.partials[0].m();
        let mut acc = Multivector::zero(m);
        for (p, &ni) in self.partials.iter().zip(n) {
            if ni != 0.0 {
                acc.add_scaled_assign(&ni, &p.eval(point)?);
            }
        }
        Ok(acc)
    }
}

/// Outward normal derivative of `f` at a point `y` of the sphere bounding `ball`.
pub fn normal_derivative(f: &RationalMvFunction<f64>, ball: &Ball, y: &[f64]) -> Result<Multivector<f64>> {
    if y.len() != variable_count(ball.m()) || f.m() != ball.m() {
        return Err(Error::DimensionMismatch("normal derivative".into()));
    }
    Gradient::new(f)?.directional(y, &ball.normal(y))
}

/// Where the unit normal enters the first boundary integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `Δ^m N · n · f`
    Mixed,
    /// `Δ^m N · f · n`
    MixedRight,
    /// `n · Δ^m N · f`
    MixedLeft,
    /// `Δ^m N · f` with scalar measure
    Scalar,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::Mixed,
        Convention::MixedRight,
        Convention::MixedLeft,
        Convention::Scalar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Mixed => "mixed",
            Convention::MixedRight => "mixed-right",
            Convention::MixedLeft => "mixed-left",
            Convention::Scalar => "scalar",
        }
    }

    fn first_integrand(
        self,
        kernel: &Multivector<f64>,
        n: &Multivector<f64>,
        f: &Multivector<f64>,
    ) -> Multivector<f64> {
        match self {
            Convention::Mixed => &(kernel * n) * f,
            Convention::MixedRight => &(kernel * f) * n,
            Convention::MixedLeft => &(n * kernel) * f,
            Convention::Scalar => kernel * f,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Convention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown convention {s:?}")))
    }
}

/// Float data attached to one test function.
struct FunctionData {
    value: RationalMvFunction<f64>,
    /// `D Δ^{k-1} f` for k = 1..m, with gradients.
    chain: Vec<(RationalMvFunction<f64>, Gradient)>,
}

impl FunctionData {
    fn new(f: &MvPolynomial<Rational>) -> Result<Self> {
        let m = f.m() as u32;
        let mut chain = Vec::new();
        for k in 1..=m {
            let g = calculus::dirac(&calculus::laplacian(f, k - 1)).to_float();
            let g = RationalMvFunction::from_polynomial(g);
            let grad = Gradient::new(&g)?;
            chain.push((g, grad));
        }
        Ok(FunctionData {
            value: RationalMvFunction::from_polynomial(f.to_float()),
            chain,
        })
    }
}

/// Float kernels `Δ^j N`, j = 0..m, with gradients for j < m.
struct KernelData {
    top: RationalMvFunction<f64>,
    /// Index k-1 holds `Δ^{m-k} N` for k = 1..m.
    lower: Vec<(RationalMvFunction<f64>, Gradient)>,
}

impl KernelData {
    fn new(m: usize) -> Result<Self> {
        let lap: Vec<RationalMvFunction<f64>> = kernel_laplacians(m).iter().map(ScaledKernel::to_float).collect();
        let mut lower = Vec::new();
        for k in 1..=m {
            let h = lap[m - k].clone();
            let grad = Gradient::new(&h)?;
            lower.push((h, grad));
        }
        Ok(KernelData {
            top: lap[m].clone(),
            lower,
        })
    }
}

/// Quadrature values of the representation for every convention, function and
/// point: `out[c][f][p]`.
pub fn cauchy_reconstruct_batch(
    functions: &[MvPolynomial<Rational>],
    points: &[Paravector<f64>],
    ball: &Ball,
    level: usize,
    conventions: &[Convention],
) -> Result<Vec<Vec<Vec<Multivector<f64>>>>> {
    let m = ball.m();
    for f in functions {
        if f.m() != m {
            return Err(Error::DimensionMismatch("test function and ball".into()));
        }
    }
    for x in points {
        if x.m() != m {
            return Err(Error::DimensionMismatch("test point and ball".into()));
        }
        ball.require_interior(x)?;
    }
    let rule = sphere_quadrature(ball, level)?;
    let kernels = KernelData::new(m)?;
    let fdata = functions.iter().map(FunctionData::new).collect::<Result<Vec<_>>>()?;
    let dim = algebra_dim(m);
    let (nc, nf, np) = (conventions.len(), functions.len(), points.len());
    let slot = |c: usize, f: usize, p: usize| ((c * nf + f) * np + p) * dim;

    let node_ids: Vec<usize> = (0..rule.len()).collect();
    let partials: Vec<Vec<f64>> = node_ids
        .par_chunks(BLOCK)
        .map(|block| -> Result<Vec<f64>> {
            let mut acc = vec![0.0; nc * nf * np * dim];
            for &j in block {
                let y = &rule.nodes[j];
                let w = rule.weights[j];
                let n = ball.normal(y);
                let n_mv = Paravector::new(n.clone())?.to_multivector();
                // function-side values at y
                let mut fvals = Vec::with_capacity(nf);
                for fd in &fdata {
                    let v = fd.value.eval(y)?;
                    let mut chain = Vec::with_capacity(fd.chain.len());
                    for (g, grad) in &fd.chain {
                        chain.push((g.eval(y)?, grad.directional(y, &n)?));
                    }
                    fvals.push((v, chain));
                }
                for (p, x) in points.iter().enumerate() {
                    let z: Vec<f64> = y.iter().zip(x.components()).map(|(a, b)| a - b).collect();
                    let top = kernels.top.eval(&z)?;
                    let mut lower = Vec::with_capacity(kernels.lower.len());
                    for (h, grad) in &kernels.lower {
                        lower.push((h.eval(&z)?, grad.directional(&z, &n)?));
                    }
                    for (f, (fv, chain)) in fvals.iter().enumerate() {
                        // convention-independent sum terms
                        let mut sums = Multivector::zero(m);
                        for ((h, dh), (g, dg)) in lower.iter().zip(chain) {
                            sums.sub_assign_ref(&(dh * g));
                            sums.add_assign_ref(&(h * dg));
                        }
                        for (c, conv) in conventions.iter().enumerate() {
                            let mut v = conv.first_integrand(&top, &n_mv, fv);
                            v.add_assign_ref(&sums);
                            let base = slot(c, f, p);
                            for (a, b) in acc[base..base + dim].iter_mut().zip(v.coeffs()) {
                                *a += w * b;
                            }
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = pairwise_sum_vectors(partials);
    let mut out = Vec::with_capacity(nc);
    for c in 0..nc {
        let mut per_f = Vec::with_capacity(nf);
        for f in 0..nf {
            let mut per_p = Vec::with_capacity(np);
            for p in 0..np {
                let base = slot(c, f, p);
                per_p.push(Multivector::from_coeffs(m, total[base..base + dim].to_vec())?);
            }
            per_f.push(per_p);
        }
        out.push(per_f);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub value: Multivector<f64>,
    pub expected: Multivector<f64>,
    /// `norm(value - f(x)) / max(1, norm(f(x)))`, before any λ normalization.
    pub defect: f64,
    pub level: usize,
    pub nodes: usize,
    pub convention: Convention,
}

/// Evaluates the representation of `f` at one interior point.
pub fn cauchy_reconstruct(
    f: &MvPolynomial<Rational>,
    ball: &Ball,
    x: &Paravector<f64>,
    level: usize,
    convention: Convention,
) -> Result<Reconstruction> {
    let value = cauchy_reconstruct_batch(std::slice::from_ref(f), std::slice::from_ref(x), ball, level, &[convention])?
        .remove(0)
        .remove(0)
        .remove(0);
    let expected = f.to_float().eval_paravector(x)?;
    Ok(Reconstruction {
        defect: relative_defect(&value, &expected, 1.0),
        value,
        expected,
        level,
        nodes: 2 * level.pow(2 * ball.m() as u32 + 1),
        convention,
    })
}

/// `norm(value/λ - expected) / max(1, norm(expected))`.
pub fn relative_defect(value: &Multivector<f64>, expected: &Multivector<f64>, lambda: f64) -> f64 {
    let scaled = value.scale(&(1.0 / lambda));
    (&scaled - expected).norm() / expected.norm().max(1.0)
}

/// Least-squares ratio `⟨v, f⟩ / ⟨f, f⟩`, or `None` when `f` is too small.
fn lambda_estimate(value: &Multivector<f64>, expected: &Multivector<f64>) -> Option<f64> {
    let ff = expected.norm_sqr();
    if ff < 1e-6 {
        return None;
    }
    let vf: f64 = value.coeffs().iter().zip(expected.coeffs()).map(|(a, b)| a * b).sum();
    Some(vf / ff)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaSample {
    pub function: usize,
    pub point: usize,
    pub lambda: f64,
    /// Defect after dividing by this sample's own λ: how far the value is
    /// from being a scalar multiple of `f(x)`.
    pub shape_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConventionReport {
    pub convention: Convention,
    pub lambda_mean: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `(max - min) / |mean|`.
    pub spread: f64,
    pub max_shape_defect: f64,
    pub accepted: bool,
    pub samples: Vec<LambdaSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub m: usize,
    pub level: usize,
    pub tolerance: f64,
    pub conventions: Vec<ConventionReport>,
    pub accepted: Option<Convention>,
    pub lambda: Option<f64>,
}

/// Spread tolerance for accepting a convention.
pub const SPREAD_TOLERANCE: f64 = 1e-3;

/// Measures `λ` per (function, point) for each convention.
///
/// A convention is accepted when `λ` is the same across the whole test set
/// within [`SPREAD_TOLERANCE`] and each value is a scalar multiple of `f(x)`
/// within the same tolerance; the first accepted convention in the given order
/// is reported.
pub fn calibration_scan(
    functions: &[MvPolynomial<Rational>],
    points: &[Paravector<f64>],
    ball: &Ball,
    level: usize,
    conventions: &[Convention],
) -> Result<CalibrationReport> {
    let values = cauchy_reconstruct_batch(functions, points, ball, level, conventions)?;
    let expected = expected_values(functions, points)?;
    let mut reports = Vec::with_capacity(conventions.len());
    for (c, conv) in conventions.iter().enumerate() {
        let mut samples = Vec::new();
        for (f, row) in values[c].iter().enumerate() {
            for (p, v) in row.iter().enumerate() {
                if let Some(lambda) = lambda_estimate(v, &expected[f][p]) {
                    samples.push(LambdaSample {
                        function: f,
                        point: p,
                        lambda,
                        shape_defect: relative_defect(v, &expected[f][p], lambda),
                    });
                }
            }
        }
        let lambdas: Vec<f64> = samples.iter().map(|s| s.lambda).collect();
        let mean = pairwise_sum(&lambdas) / lambdas.len().max(1) as f64;
        let min = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
        let max = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let spread = if lambdas.is_empty() { f64::INFINITY } else { (max - min) / mean.abs() };
        let max_shape_defect = samples.iter().map(|s| s.shape_defect).fold(0.0, f64::max);
        reports.push(ConventionReport {
            convention: *conv,
            lambda_mean: mean,
            lambda_min: min,
            lambda_max: max,
            spread,
            max_shape_defect,
            accepted: spread <= SPREAD_TOLERANCE && max_shape_defect <= SPREAD_TOLERANCE,
            samples,
        });
    }
    let accepted = reports.iter().find(|r| r.accepted);
    Ok(CalibrationReport {
        m: ball.m(),
        level,
        tolerance: SPREAD_TOLERANCE,
        accepted: accepted.map(|r| r.convention),
        lambda: accepted.map(|r| r.lambda_mean),
        conventions: reports,
    })
}

fn expected_values(functions: &[MvPolynomial<Rational>], points: &[Paravector<f64>]) -> Result<Vec<Vec<Multivector<f64>>>> {
    functions
        .iter()
        .map(|f| {
            let ff = f.to_float();
            points.iter().map(|x| ff.eval_paravector(x)).collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceLevel {
    pub level: usize,
    pub nodes: usize,
    /// Largest λ-normalized defect over all (function, point) pairs.
    pub max_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub convention: Convention,
    /// Fitted at the finest level.
    pub lambda: f64,
    pub levels: Vec<ConvergenceLevel>,
    pub monotone: bool,
}

/// Defects across increasing quadrature levels, normalized by the λ fitted
/// (over all pairs) at the finest level.
pub fn convergence_study(
    functions: &[MvPolynomial<Rational>],
    points: &[Paravector<f64>],
    ball: &Ball,
    levels: &[usize],
    convention: Convention,
) -> Result<ConvergenceStudy> {
    if levels.is_empty() {
        return Err(Error::InvalidInput("no quadrature levels given".into()));
    }
    let expected = expected_values(functions, points)?;
    let mut runs = Vec::with_capacity(levels.len());
    for &level in levels {
        runs.push(cauchy_reconstruct_batch(functions, points, ball, level, &[convention])?.remove(0));
    }
    let finest = runs.last().expect("non-empty");
    let (mut vf, mut ff) = (0.0, 0.0);
    for (row_v, row_e) in finest.iter().zip(&expected) {
        for (v, e) in row_v.iter().zip(row_e) {
            vf += v.coeffs().iter().zip(e.coeffs()).map(|(a, b)| a * b).sum::<f64>();
            ff += e.norm_sqr();
        }
    }
    if ff == 0.0 {
        return Err(Error::InvalidInput("all test values vanish".into()));
    }
    let lambda = vf / ff;
    let mut out = Vec::with_capacity(levels.len());
    for (&level, run) in levels.iter().zip(&runs) {
        let mut max_defect: f64 = 0.0;
        for (row_v, row_e) in run.iter().zip(&expected) {
            for (v, e) in row_v.iter().zip(row_e) {
                max_defect = max_defect.max(relative_defect(v, e, lambda));
            }
        }
        out.push(ConvergenceLevel {
            level,
            nodes: 2 * level.pow(2 * ball.m() as u32 + 1),
            max_defect,
        });
    }
    let monotone = out.windows(2).all(|w| w[1].max_defect < w[0].max_defect);
    Ok(ConvergenceStudy {
        convention,
        lambda,
        levels: out,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solutions::{p_alpha, MultiIndex};

    fn para(v: &[f64]) -> Paravector<f64> {
        Paravector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn prefactor_values() {
        let k1 = KernelPrefactor::for_m(1);
        assert_eq!(k1.rational, Rational::new((-1).into(), 4.into()));
        assert_eq!(k1.inverse_pi_power, 2);
        let k0 = KernelPrefactor::for_m(0);
        assert_eq!(k0.rational, Rational::new(1.into(), 2.into()));
        assert!((k0.to_float() - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn kernel_laplacians_are_cauchy_kernels() {
        for m in 0..=2 {
            let lap = kernel_laplacians(m);
            assert_eq!(lap.len(), m + 1);
            assert!(calculus::dirac(&lap[m].rational_part).is_identically_zero(), "m = {m}");
        }
    }

    #[test]
    fn quadrature_area_and_node_count() {
        for m in 0..=2 {
            let rule = sphere_quadrature(&Ball::unit(m), 6).unwrap();
            assert_eq!(rule.len(), 2 * 6usize.pow(2 * m as u32 + 1));
            let area = sphere_area(m, 1.0);
            assert!((rule.total_weight() - area).abs() / area < 1e-12, "m = {m}");
            for y in &rule.nodes {
                let r: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
                assert!((r - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn quadrature_on_shifted_ball() {
        let ball = Ball::new(para(&[1.0, -2.0, 0.5, 0.0]), 2.5).unwrap();
        let rule = sphere_quadrature(&ball, 10).unwrap();
        let area = sphere_area(1, 2.5);
        assert!((rule.total_weight() - area).abs() / area < 1e-12);
        for y in &rule.nodes {
            assert!((ball.relative_position(&para(y)).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_moments() {
        let rule = sphere_quadrature(&Ball::unit(1), 10).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((rule.integrate(|y| y[0] * y[0]) - pi2 / 2.0).abs() < 1e-12);
        assert!(rule.integrate(|y| y[0]).abs() < 1e-13);
    }

    #[test]
    fn normal_derivatives() {
        let ball = Ball::unit(1);
        let y = [0.5, 0.5, 0.5, 0.5];
        let mut r2 = MvPolynomial::<f64>::zero(1);
        for i in 0..4 {
            r2.add_term(
                (0..4).map(|j| if j == i { 2 } else { 0 }).collect(),
                &Multivector::one(1),
            );
        }
        let d = normal_derivative(&RationalMvFunction::from_polynomial(r2), &ball, &y).unwrap();
        assert!((d.coeffs()[0] - 2.0).abs() < 1e-14);
        let c = RationalMvFunction::from_polynomial(MvPolynomial::constant(Multivector::generator(1, 2)));
        assert!(normal_derivative(&c, &ball, &y).unwrap().is_zero());
        let through_pole = Ball::new(para(&[0.5, 0.0, 0.0, 0.0]), 0.5).unwrap();
        assert!(matches!(
            normal_derivative(&RationalMvFunction::inverse(1), &through_pole, &[0.0; 4]),
            Err(Error::SingularPoint(_))
        ));
    }

    #[test]
    fn boundary_point_rejected() {
        let f = p_alpha::<Rational>(&MultiIndex::new(vec![1, 1, 0, 0]), 1).unwrap();
        let err = cauchy_reconstruct(&f, &Ball::unit(1), &para(&[1.0, 0.0, 0.0, 0.0]), 4, Convention::Mixed);
        assert!(matches!(err, Err(Error::NotInterior(_))));
    }

    #[test]
    fn constant_in_complex_case_is_exact() {
        // m = 0: single boundary integral, λ = 1
        let one = MvPolynomial::constant(Multivector::one(0));
        let r = cauchy_reconstruct(&one, &Ball::unit(0), &para(&[0.2, -0.1]), 32, Convention::Mixed).unwrap();
        assert!(r.defect < 1e-12, "{}", r.defect);
    }

    #[test]
    fn convention_names_round_trip() {
        for c in Convention::ALL {
            assert_eq!(c.name().parse::<Convention>().unwrap(), c);
        }
        assert!("other".parse::<Convention>().is_err());
    }
}
