//! Elementary solutions: the polynomials `P_α` and the singular functions `S_β`.
//!
//! Both are symmetrized products over all orderings of the multiset holding
//! `α_i` copies of `e_i`:
//!
//! ```text
//! P_α(x) = 1/|α|! Σ_σ (e_σ(1) x)(e_σ(2) x)...(e_σ(n-1) x) e_σ(n)
//! S_β(x) = 1/|β|! Σ_σ (x^{-1} e_σ(1))...(x^{-1} e_σ(n-1)) x^{-1}
//! ```
//!
//! The sums are taken over distinct arrangements, each weighted by `∏ α_i!`,
//! which equals the sum over all `|α|!` labelled permutations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{algebra_dim, variable_count, Blade, Multivector, Paravector};
use crate::calculus::{self, MvPolynomial, RationalMvFunction};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::scalar::{Rational, Scalar};

/// Multi-index `α ∈ ℕ^{2m+2}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |α|
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `∏ α_i!`
    pub fn factorial_product(&self) -> BigInt {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    fn check_for(&self, m: usize) -> Result<()> {
        if self.0.len() != variable_count(m) {
            return Err(Error::InvalidMultiIndex(format!(
                "{self} has {} entries, expected {} for m = {m}",
                self.0.len(),
                variable_count(m)
            )));
        }
        if self.order() == 0 {
            return Err(Error::InvalidMultiIndex(format!("{self} has |α| = 0")));
        }
        Ok(())
    }

    /// All multi-indices of the given length and order, in lexicographic order.
    pub fn with_order(len: usize, order: u32) -> Vec<MultiIndex> {
        fn rec(len: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == len {
                prefix.push(remaining);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for v in (0..=remaining).rev() {
                prefix.push(v);
                rec(len, remaining - v, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        rec(len, order, &mut Vec::with_capacity(len), &mut out);
        out
    }

    /// All multi-indices with `1 <= |α| <= max_order`, grouped by order.
    pub fn up_to(len: usize, max_order: u32) -> Vec<MultiIndex> {
        (1..=max_order).flat_map(|k| Self::with_order(len, k)).collect()
    }

    /// `α - δ_j`, if `α_j > 0`.
    pub fn decrement(&self, j: usize) -> Option<MultiIndex> {
        if self.0.get(j).copied().unwrap_or(0) == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[j] -= 1;
        Some(MultiIndex(e))
    }

    /// The sorted multiset `{e_i repeated α_i times}` as generator indices.
    pub fn multiset(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize))
            .collect()
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Graded: by order first, then reverse-lexicographic so `(1,0,..)` leads.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Comma list such as `"2,0,0,0"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multi-index entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// One distinct ordering of a multiset, with the number of labelled
/// permutations that produce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub sequence: Vec<usize>,
    pub weight: BigInt,
}

/// Iterator over the distinct arrangements of a multiset (lexicographic
/// next-permutation on the sorted sequence).
pub struct Arrangements {
    current: Option<Vec<usize>>,
    weight: BigInt,
}

impl Iterator for Arrangements {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        let seq = self.current.take()?;
        let mut next = seq.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(Arrangement {
            sequence: seq,
            weight: self.weight.clone(),
        })
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct sequences of the multiset `{e_i × α_i}`, each with weight `∏ α_i!`.
pub fn multiset_arrangements(alpha: &MultiIndex) -> Result<Arrangements> {
    if alpha.order() == 0 {
        return Err(Error::InvalidMultiIndex(format!("{alpha} has |α| = 0")));
    }
    Ok(Arrangements {
        current: Some(alpha.multiset()),
        weight: alpha.factorial_product(),
    })
}

/// `P_α` as an exact polynomial.
pub fn p_alpha<T: Scalar>(alpha: &MultiIndex, m: usize) -> Result<MvPolynomial<T>> {
    p_alpha_in(alpha, &MvPolynomial::paravector_variable(m))
}

/// `P_α(x - a)`.
pub fn p_alpha_shifted<T: Scalar>(alpha: &MultiIndex, a: &Paravector<T>) -> Result<MvPolynomial<T>> {
    p_alpha_in(alpha, &MvPolynomial::shifted_variable(a))
}

/// `P_α` with the paravector variable replaced by `var`.
fn p_alpha_in<T: Scalar>(alpha: &MultiIndex, var: &MvPolynomial<T>) -> Result<MvPolynomial<T>> {
    let m = var.m();
    alpha.check_for(m)?;
    let n = alpha.order();
    let factors: Vec<MvPolynomial<T>> = (0..variable_count(m))
        .map(|i| var.left_mul_mv(&Multivector::generator(m, i)))
        .collect();
    let mut sum = MvPolynomial::zero(m);
    let mut weight = BigInt::from(0);
    for arr in multiset_arrangements(alpha)? {
        weight = arr.weight;
        let (last, head) = arr.sequence.split_last().expect("|α| >= 1");
        let mut prod = MvPolynomial::constant(Multivector::one(m));
        for &s in head {
            prod = prod.checked_mul(&factors[s])?;
        }
        sum = sum.checked_add(&prod.right_mul_mv(&Multivector::generator(m, *last)))?;
    }
    Ok(sum.scale(&ratio_as::<T>(&weight, &factorial(n))))
}

fn ratio_as<T: Scalar>(num: &BigInt, den: &BigInt) -> T {
    let r = Rational::new(num.clone(), den.clone());
    if T::EXACT {
        T::from_doc(&r.to_doc()).expect("rational literal")
    } else {
        T::from_float(r.to_float()).expect("finite")
    }
}

/// `S_β`, implemented literally: each product uses the first `|β| - 1`
/// entries of the arrangement, so the final entry never appears.
///
/// Result: `N(x) / |x|^{2|β|}` with `N = Σ bar(x) e_s1 bar(x) ... e_s(n-1) bar(x)`.
pub fn s_beta<T: Scalar>(beta: &MultiIndex, m: usize) -> Result<RationalMvFunction<T>> {
    beta.check_for(m)?;
    let n = beta.order();
    let bar_x = MvPolynomial::<T>::paravector_variable(m).conjugate();
    let mut sum = MvPolynomial::zero(m);
    let mut weight = BigInt::from(0);
    for arr in multiset_arrangements(beta)? {
        weight = arr.weight;
        let mut prod = MvPolynomial::constant(Multivector::one(m));
        for &s in &arr.sequence[..arr.sequence.len() - 1] {
            prod = prod
                .checked_mul(&bar_x)?
                .right_mul_mv(&Multivector::generator(m, s));
        }
        prod = prod.checked_mul(&bar_x)?;
        sum = sum.checked_add(&prod)?;
    }
    let numerator = sum.scale(&ratio_as::<T>(&weight, &factorial(n)));
    RationalMvFunction::from_term(numerator, Paravector::zero(m), n)
}

/// `∂^γ x^{-1}` by repeated quotient-rule differentiation.
pub fn inverse_derivative<T: Scalar>(gamma: &MultiIndex, m: usize) -> Result<RationalMvFunction<T>> {
    if gamma.len() != variable_count(m) {
        return Err(Error::InvalidMultiIndex(format!("{gamma} for m = {m}")));
    }
    let mut f = RationalMvFunction::inverse(m);
    for (axis, &count) in gamma.entries().iter().enumerate() {
        for _ in 0..count {
            f = f.partial(axis)?;
        }
    }
    Ok(f)
}

/// Independent construction of `S_β` from derivatives of `x^{-1}`:
///
/// `S_β = Σ_j (β_j / n) · (-1)^{n-1}/(n-1)! · ∂^{β - δ_j} x^{-1}`, n = |β|.
///
/// Grouping the permutations by their (unused) final entry `e_j` leaves the
/// symmetrized chain `Σ_τ x^{-1} e_τ1 ... x^{-1}` over `β - δ_j`, which is
/// `(-1)^{n-1} ∂^{β-δ_j} x^{-1}`.
pub fn s_beta_derivative_oracle<T: Scalar>(beta: &MultiIndex, m: usize) -> Result<RationalMvFunction<T>> {
    beta.check_for(m)?;
    let n = beta.order() as i64;
    let mut out = RationalMvFunction::zero(m);
    for j in 0..beta.len() {
        let Some(gamma) = beta.decrement(j) else { continue };
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        let num = BigInt::from(sign * beta.entries()[j] as i64);
        let den = BigInt::from(n) * factorial((n - 1) as u32);
        let term = inverse_derivative::<T>(&gamma, m)?.scale(&ratio_as::<T>(&num, &den));
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

/// Comparison between the kernel of `D Δ^m` on polynomials of degree `<= d`
/// and the right span of `{P_α e_A : |α| <= d + 1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub m: usize,
    pub d: u32,
    /// Real dimension of multivector-valued polynomials of degree <= d.
    pub space_dim: usize,
    pub kernel_dim: usize,
    pub span_rank: usize,
    /// Every `P_α e_A` lies in the kernel.
    pub span_in_kernel: bool,
    pub spans_equal: bool,
    pub per_degree: Vec<DegreeBreakdown>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeBreakdown {
    pub degree: u32,
    pub space_dim: usize,
    pub kernel_dim: usize,
    pub span_rank: usize,
}

/// Default bound on `rows * cols` for one exact elimination.
pub const DEFAULT_MATRIX_LIMIT: usize = 4_000_000;

/// Monomials of total degree exactly `degree` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    MultiIndex::with_order(nvars, degree)
        .into_iter()
        .map(|a| a.0)
        .collect()
}

/// Coordinates of a homogeneous polynomial in the basis
/// `(monomial, blade)` of the given monomial list.
pub fn homogeneous_coordinates(p: &MvPolynomial<Rational>, monomials: &[Vec<u32>]) -> Vec<Rational> {
    let dim = algebra_dim(p.m());
    let mut v = vec![Rational::from_int(0); monomials.len() * dim];
    for (mi, mono) in monomials.iter().enumerate() {
        if let Some(c) = p.coefficient(mono) {
            for (b, val) in c.nonzero_terms() {
                v[mi * dim + b.index()] = val.clone();
            }
        }
    }
    v
}

/// Exact rank comparison; `D Δ^m` and the `P_α` are homogeneous, so the
/// computation splits into one block per degree.
pub fn solution_space_compare(d: u32, m: usize, matrix_limit: usize) -> Result<SpaceReport> {
    if m > crate::algebra::MAX_M {
        return Err(Error::Unsupported(format!("m = {m}")));
    }
    let nvars = variable_count(m);
    let dim = algebra_dim(m);
    let order = 2 * m as u32 + 1;
    let mut per_degree = Vec::new();
    let mut span_in_kernel = true;
    for k in 0..=d {
        let monos = monomials_of_degree(nvars, k);
        let block_dim = monos.len() * dim;

        // Operator block: degree k -> degree k - (2m+1).
        let kernel_dim = if k < order {
            block_dim
        } else {
            let targets = monomials_of_degree(nvars, k - order);
            check_limit(targets.len() * dim, block_dim, matrix_limit)?;
            let mut columns = Vec::with_capacity(block_dim);
            for mono in &monos {
                for b in 0..dim {
                    let basis = MvPolynomial::monomial(
                        mono.clone(),
                        Multivector::basis(m, Blade::from_mask(b as u32)),
                    );
                    columns.push(homogeneous_coordinates(&calculus::lhc_residual(&basis), &targets));
                }
            }
            let rank = RationalMatrix::from_columns(targets.len() * dim, &columns)?.rank();
            block_dim - rank
        };

        // Span block: P_α e_A with |α| = k + 1.
        let alphas = MultiIndex::with_order(nvars, k + 1);
        check_limit(block_dim, alphas.len() * dim, matrix_limit)?;
        let mut columns = Vec::with_capacity(alphas.len() * dim);
        for alpha in &alphas {
            let p = p_alpha::<Rational>(alpha, m)?;
            if !calculus::lhc_residual(&p).is_zero() {
                span_in_kernel = false;
            }
            for b in 0..dim {
                let pe = p.right_mul_mv(&Multivector::basis(m, Blade::from_mask(b as u32)));
                columns.push(homogeneous_coordinates(&pe, &monos));
            }
        }
        let span_rank = RationalMatrix::from_columns(block_dim, &columns)?.rank();
        per_degree.push(DegreeBreakdown {
            degree: k,
            space_dim: block_dim,
            kernel_dim,
            span_rank,
        });
    }
    let space_dim = per_degree.iter().map(|b| b.space_dim).sum();
    let kernel_dim = per_degree.iter().map(|b| b.kernel_dim).sum();
    let span_rank = per_degree.iter().map(|b| b.span_rank).sum();
    // Right-multiplying by e_A keeps the kernel, so the span lies in the kernel
    // as soon as every P_α does; equal dimensions then give equal spaces.
    let spans_equal = span_in_kernel && span_rank == kernel_dim;
    Ok(SpaceReport {
        m,
        d,
        space_dim,
        kernel_dim,
        span_rank,
        span_in_kernel,
        spans_equal,
        per_degree,
    })
}

fn check_limit(rows: usize, cols: usize, limit: usize) -> Result<()> {
    if rows.saturating_mul(cols) > limit {
        return Err(Error::ResourceLimit(format!(
            "{rows}x{cols} matrix exceeds the limit of {limit} entries"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{is_holomorphic_cliffordian, lhc_residual};
    use itertools_free_permutations as perms;

    type Poly = MvPolynomial<Rational>;
    type Rf = RationalMvFunction<Rational>;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    mod itertools_free_permutations {
        /// All n! orderings of 0..n (Heap's algorithm).
        pub fn all(n: usize) -> Vec<Vec<usize>> {
            let mut a: Vec<usize> = (0..n).collect();
            let mut out = vec![a.clone()];
            let mut c = vec![0; n];
            let mut i = 0;
            while i < n {
                if c[i] < i {
                    if i % 2 == 0 {
                        a.swap(0, i);
                    } else {
                        a.swap(c[i], i);
                    }
                    out.push(a.clone());
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            out
        }
    }

    /// Literal sum over all |α|! labelled permutations.
    fn p_alpha_brute_force(alpha: &MultiIndex, m: usize) -> Poly {
        let labels = alpha.multiset();
        let n = labels.len();
        let x = Poly::paravector_variable(m);
        let mut sum = Poly::zero(m);
        for sigma in perms::all(n) {
            let mut prod = Poly::constant(Multivector::one(m));
            for &s in &sigma[..n - 1] {
                prod = prod
                    .checked_mul(&x.left_mul_mv(&Multivector::generator(m, labels[s])))
                    .unwrap();
            }
            prod = prod.right_mul_mv(&Multivector::generator(m, labels[sigma[n - 1]]));
            sum = sum.checked_add(&prod).unwrap();
        }
        sum.scale(&Rational::new(1.into(), factorial(n as u32)))
    }

    #[test]
    fn arrangements_examples() {
        let a: Vec<_> = multiset_arrangements(&mi("2,0,0,0")).unwrap().collect();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].sequence, vec![0, 0]);
        assert_eq!(a[0].weight, BigInt::from(2));
        let b: Vec<_> = multiset_arrangements(&mi("1,1,0,0")).unwrap().collect();
        assert_eq!(
            b.iter().map(|x| x.sequence.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert!(b.iter().all(|x| x.weight == BigInt::from(1)));
        assert!(multiset_arrangements(&mi("0,0,0,0")).is_err());
    }

    #[test]
    fn arrangement_count_is_multinomial() {
        for order in 1..=6 {
            for alpha in MultiIndex::with_order(4, order) {
                let distinct: Vec<_> = multiset_arrangements(&alpha).unwrap().collect();
                // exhaustive enumeration of labelled permutations, deduplicated
                let labels = alpha.multiset();
                let mut seen: Vec<Vec<usize>> = perms::all(labels.len())
                    .into_iter()
                    .map(|s| s.iter().map(|&i| labels[i]).collect())
                    .collect();
                seen.sort();
                seen.dedup();
                assert_eq!(distinct.len(), seen.len(), "{alpha}");
                let multinomial = factorial(order) / alpha.factorial_product();
                assert_eq!(BigInt::from(distinct.len()), multinomial);
            }
        }
    }

    #[test]
    fn p_alpha_examples() {
        let m = 1;
        let one = Poly::constant(Multivector::one(m));
        assert_eq!(p_alpha::<Rational>(&mi("1,0,0,0"), m).unwrap(), one);
        assert_eq!(p_alpha::<Rational>(&mi("2,0,0,0"), m).unwrap(), Poly::paravector_variable(m));
        let expected = Poly::variable(m, 0)
            .left_mul_mv(&Multivector::generator(m, 1))
            .checked_sub(&Poly::variable(m, 1))
            .unwrap();
        assert_eq!(p_alpha::<Rational>(&mi("1,1,0,0"), m).unwrap(), expected);
        // -x_0 - x_1 e_1 + x_2 e_2 + x_3 e_3
        let mut e = Poly::variable(m, 0).scale(&q(-1));
        e = e.checked_sub(&Poly::variable(m, 1).left_mul_mv(&Multivector::generator(m, 1))).unwrap();
        e = e.checked_add(&Poly::variable(m, 2).left_mul_mv(&Multivector::generator(m, 2))).unwrap();
        e = e.checked_add(&Poly::variable(m, 3).left_mul_mv(&Multivector::generator(m, 3))).unwrap();
        assert_eq!(p_alpha::<Rational>(&mi("0,2,0,0"), m).unwrap(), e);
        assert!(matches!(
            p_alpha::<Rational>(&mi("0,0,0,0"), m),
            Err(Error::InvalidMultiIndex(_))
        ));
        assert!(p_alpha::<Rational>(&mi("1,0"), m).is_err());
    }

    #[test]
    fn p_alpha_matches_brute_force() {
        for m in 0..=1 {
            for alpha in MultiIndex::up_to(variable_count(m), 4) {
                assert_eq!(
                    p_alpha::<Rational>(&alpha, m).unwrap(),
                    p_alpha_brute_force(&alpha, m),
                    "{alpha}"
                );
            }
        }
    }

    #[test]
    fn p_alpha_degree_and_homogeneity() {
        for m in 0..=1 {
            for alpha in MultiIndex::up_to(variable_count(m), 5) {
                let p = p_alpha::<Rational>(&alpha, m).unwrap();
                let deg = alpha.order() - 1;
                assert_eq!(p.degree(), Some(deg), "{alpha}");
                assert!(p.is_homogeneous(deg));
            }
        }
    }

    #[test]
    fn p_alpha_shift_matches_composition() {
        let a = Paravector::new(vec![q(1), Rational::ratio(1, 2), q(0), q(-2)]).unwrap();
        let alpha = mi("1,1,1,0");
        let shifted = p_alpha_shifted(&alpha, &a).unwrap();
        let composed = p_alpha::<Rational>(&alpha, 1).unwrap().shift(&a.neg()).unwrap();
        assert_eq!(shifted, composed);
    }

    #[test]
    fn s_beta_examples() {
        let m = 1;
        let inv = Rf::inverse(m);
        assert!(s_beta::<Rational>(&mi("1,0,0,0"), m).unwrap().checked_sub(&inv).unwrap().is_identically_zero());
        assert!(s_beta::<Rational>(&mi("0,1,0,0"), m).unwrap().checked_sub(&inv).unwrap().is_identically_zero());
        let minus_d1 = inv.partial(1).unwrap().neg();
        assert!(s_beta::<Rational>(&mi("0,2,0,0"), m).unwrap().checked_sub(&minus_d1).unwrap().is_identically_zero());
        let s = s_beta::<Rational>(&mi("1,0,0,0"), m).unwrap();
        assert!(matches!(s.eval_paravector(&Paravector::zero(m)), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn s_beta_oracle_examples() {
        let m = 1;
        let inv = Rf::inverse(m);
        let o = s_beta_derivative_oracle::<Rational>(&mi("0,2,0,0"), m).unwrap();
        assert!(o.checked_sub(&inv.partial(1).unwrap().neg()).unwrap().is_identically_zero());
        // β = (2,0,0,0): -∂_0 x^{-1} = x^{-2}
        let o = s_beta_derivative_oracle::<Rational>(&mi("2,0,0,0"), m).unwrap();
        let x = Paravector::new(vec![q(1), q(2), Rational::ratio(-1, 3), q(1)]).unwrap();
        let xi = x.inverse().unwrap().to_multivector();
        assert_eq!(o.eval_paravector(&x).unwrap(), &xi * &xi);
    }

    #[test]
    fn s_beta_agrees_with_oracle() {
        for m in 0..=1 {
            for beta in MultiIndex::up_to(variable_count(m), 3) {
                let s = s_beta::<Rational>(&beta, m).unwrap();
                let o = s_beta_derivative_oracle::<Rational>(&beta, m).unwrap();
                assert!(s.checked_sub(&o).unwrap().is_identically_zero(), "{beta}");
            }
        }
    }

    #[test]
    fn elementary_solutions_are_holomorphic() {
        for m in 0..=1 {
            for alpha in MultiIndex::up_to(variable_count(m), 4) {
                assert!(lhc_residual(&p_alpha::<Rational>(&alpha, m).unwrap()).is_zero(), "{alpha}");
            }
        }
        for beta in MultiIndex::up_to(4, 2) {
            assert!(is_holomorphic_cliffordian(&s_beta::<Rational>(&beta, 1).unwrap()), "{beta}");
        }
    }

    #[test]
    fn derivative_of_singular_solution_is_holomorphic() {
        let s = s_beta::<Rational>(&mi("1,1,0,0"), 1).unwrap();
        for axis in 0..4 {
            assert!(is_holomorphic_cliffordian(&s.partial(axis).unwrap()));
        }
    }

    #[test]
    fn space_report_below_operator_order() {
        let r = solution_space_compare(2, 1, DEFAULT_MATRIX_LIMIT).unwrap();
        assert_eq!(r.space_dim, 120);
        assert_eq!(r.kernel_dim, 120);
        assert!(r.spans_equal);
    }

    #[test]
    fn space_report_complex_case() {
        // m = 0: kernel of D on degree <= 1 is {c + x c'}: real dimension 4.
        let r = solution_space_compare(1, 0, DEFAULT_MATRIX_LIMIT).unwrap();
        assert_eq!(r.space_dim, 6);
        assert_eq!(r.kernel_dim, 4);
        assert_eq!(r.span_rank, 4);
        assert!(r.spans_equal);
    }

    #[test]
    fn space_report_resource_guard() {
        assert!(matches!(
            solution_space_compare(3, 1, 100),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn multi_index_parsing_and_order() {
        assert_eq!(mi("2,0,0,0").entries(), &[2, 0, 0, 0]);
        assert_eq!(mi("(1, 1,0,0)").order(), 2);
        assert!("1,x".parse::<MultiIndex>().is_err());
        assert_eq!(MultiIndex::with_order(4, 2).len(), 10);
        assert_eq!(MultiIndex::up_to(4, 4).len(), 69);
    }
}
