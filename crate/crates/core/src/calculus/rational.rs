use std::fmt;

use serde::{Deserialize, Serialize};

use super::polynomial::{MvPolynomial, PolynomialDoc};
use crate::algebra::{variable_count, Multivector, Paravector, MAX_M};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarDoc};

/// One summand `numerator(x) / |x - center|^{2k}`.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalTerm<T> {
    pub numerator: MvPolynomial<T>,
    pub center: Paravector<T>,
    pub k: u32,
}

/// Finite sum of terms `P_t(x) / |x - c_t|^{2 k_t}`.
///
/// Terms with equal `(center, k)` are merged on insertion; terms with `k = 0`
/// form the polynomial part and carry the zero center.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalMvFunction<T> {
    m: usize,
    terms: Vec<RationalTerm<T>>,
}

impl<T: Scalar> RationalMvFunction<T> {
    pub fn zero(m: usize) -> Self {
        RationalMvFunction { m, terms: Vec::new() }
    }

    pub fn from_polynomial(p: MvPolynomial<T>) -> Self {
        let mut r = Self::zero(p.m());
        r.push(p, Paravector::zero(r.m), 0);
        r
    }

    pub fn from_term(numerator: MvPolynomial<T>, center: Paravector<T>, k: u32) -> Result<Self> {
        if numerator.m() != center.m() {
            return Err(Error::DimensionMismatch("numerator and center".into()));
        }
        let mut r = Self::zero(numerator.m());
        r.push(numerator, center, k);
        Ok(r)
    }

    /// (x - c)^{-1} = bar(x - c) / |x - c|^2.
    pub fn shifted_inverse(c: &Paravector<T>) -> Self {
        let m = c.m();
        let mut num = MvPolynomial::zero(m);
        for (exps, coeff) in MvPolynomial::shifted_variable(c).terms() {
            num.add_term(exps.clone(), &coeff.conjugate());
        }
        let mut r = Self::zero(m);
        r.push(num, c.clone(), 1);
        r
    }

    /// x^{-1}.
    pub fn inverse(m: usize) -> Self {
        Self::shifted_inverse(&Paravector::zero(m))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[RationalTerm<T>] {
        &self.terms
    }

    pub fn nvars(&self) -> usize {
        variable_count(self.m)
    }

    /// Adds a term, merging with an existing one of the same center and order.
    pub fn push(&mut self, numerator: MvPolynomial<T>, center: Paravector<T>, k: u32) {
        debug_assert_eq!(numerator.m(), self.m);
        if numerator.is_zero() {
            return;
        }
        let center = if k == 0 { Paravector::zero(self.m) } else { center };
        if let Some(pos) = self
            .terms
            .iter()
            .position(|t| t.k == k && t.center == center)
        {
            let merged = self.terms[pos]
                .numerator
                .checked_add(&numerator)
                .expect("same algebra");
            if merged.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].numerator = merged;
            }
        } else {
            self.terms.push(RationalTerm { numerator, center, k });
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch("rational functions over different algebras".into()));
        }
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.numerator.clone(), t.center.clone(), t.k);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_numerators(|p| p.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map_numerators(|p| p.scale(s))
    }

    fn map_numerators(&self, f: impl Fn(&MvPolynomial<T>) -> MvPolynomial<T>) -> Self {
        let mut out = Self::zero(self.m);
        for t in &self.terms {
            out.push(f(&t.numerator), t.center.clone(), t.k);
        }
        out
    }

    pub fn left_mul_mv(&self, a: &Multivector<T>) -> Self {
        self.map_numerators(|p| p.left_mul_mv(a))
    }

    pub fn right_mul_mv(&self, a: &Multivector<T>) -> Self {
        self.map_numerators(|p| p.right_mul_mv(a))
    }

    /// `p * self` for a polynomial `p` (multiplied on the left).
    pub fn left_mul_poly(&self, p: &MvPolynomial<T>) -> Self {
        self.map_numerators(|n| p.checked_mul(n).expect("same algebra"))
    }

    /// `self * p` for a polynomial `p` (multiplied on the right).
    pub fn right_mul_poly(&self, p: &MvPolynomial<T>) -> Self {
        self.map_numerators(|n| n.checked_mul(p).expect("same algebra"))
    }

    pub fn left_mul_x(&self) -> Self {
        self.left_mul_poly(&MvPolynomial::paravector_variable(self.m))
    }

    /// Quotient rule: ∂_i(P/q^k) = ∂_iP/q^k - 2k (x_i - c_i) P / q^{k+1}.
    pub fn partial(&self, axis: usize) -> Result<Self> {
        if axis >= self.nvars() {
            return Err(Error::AxisOutOfRange {
                axis,
                nvars: self.nvars(),
            });
        }
        let mut out = Self::zero(self.m);
        for t in &self.terms {
            out.push(t.numerator.partial(axis)?, t.center.clone(), t.k);
            if t.k > 0 {
                let mut lin = MvPolynomial::variable(self.m, axis);
                let ci = t.center.components()[axis].clone();
                lin.add_term(vec![0; self.nvars()], &Multivector::scalar(self.m, -ci));
                let factor = T::from_int(-2 * t.k as i64);
                let num = lin.checked_mul(&t.numerator)?.scale(&factor);
                out.push(num, t.center.clone(), t.k + 1);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[T]) -> Result<Multivector<T>> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "evaluation point has {} coordinates, expected {}",
                point.len(),
                self.nvars()
            )));
        }
        let mut acc = Multivector::zero(self.m);
        for t in &self.terms {
            let value = t.numerator.eval(point)?;
            if t.k == 0 {
                acc.add_assign_ref(&value);
                continue;
            }
            let mut d2 = T::zero();
            for (x, c) in point.iter().zip(t.center.components()) {
                let diff = x.clone() - c.clone();
                T::mul_add_to(&mut d2, &diff, &diff);
            }
            if d2.is_zero() {
                return Err(Error::SingularPoint(format!(
                    "evaluation at the pole {:?}",
                    t.center.components()
                )));
            }
            let mut denom = T::one();
            for _ in 0..t.k {
                denom = denom * d2.clone();
            }
            acc.add_scaled_assign(&(T::one() / denom), &value);
        }
        Ok(acc)
    }

    pub fn eval_paravector(&self, x: &Paravector<T>) -> Result<Multivector<T>> {
        self.eval(x.components())
    }

    /// Distinct pole centers, in order of first appearance.
    pub fn centers(&self) -> Vec<Paravector<T>> {
        let mut out: Vec<Paravector<T>> = Vec::new();
        for t in self.terms.iter().filter(|t| t.k > 0) {
            if !out.contains(&t.center) {
                out.push(t.center.clone());
            }
        }
        out
    }

    /// The `k = 0` part.
    pub fn polynomial_part(&self) -> MvPolynomial<T> {
        self.terms
            .iter()
            .find(|t| t.k == 0)
            .map(|t| t.numerator.clone())
            .unwrap_or_else(|| MvPolynomial::zero(self.m))
    }

    /// Reduced form: one term per center over its common denominator, with
    /// every factor |x - c|^2 that divides the numerator cancelled, and all
    /// pole-free remainders collected into the polynomial part.
    ///
    /// Distinct centers give pairwise coprime irreducible denominators (sums of
    /// at least two squares), so the function vanishes identically iff the
    /// reduced form is empty.
    pub fn normalize(&self) -> Self {
        let mut poly = self.polynomial_part();
        let mut reduced: Vec<RationalTerm<T>> = Vec::new();
        for center in self.centers() {
            let group: Vec<&RationalTerm<T>> = self
                .terms
                .iter()
                .filter(|t| t.k > 0 && t.center == center)
                .collect();
            let kmax = group.iter().map(|t| t.k).max().unwrap_or(0);
            let q = MvPolynomial::squared_distance(&center);
            let mut num = MvPolynomial::zero(self.m);
            for t in group {
                let mut lifted = t.numerator.clone();
                for _ in t.k..kmax {
                    lifted = lifted.checked_mul(&q).expect("same algebra");
                }
                num = num.checked_add(&lifted).expect("same algebra");
            }
            let mut k = kmax;
            while k > 0 && !num.is_zero() {
                match num.div_exact_by_squared_distance(&center) {
                    Some(quot) => {
                        num = quot;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if num.is_zero() {
                continue;
            }
            if k == 0 {
                poly = poly.checked_add(&num).expect("same algebra");
            } else {
                reduced.push(RationalTerm {
                    numerator: num,
                    center,
                    k,
                });
            }
        }
        let mut out = Self::zero(self.m);
        out.push(poly, Paravector::zero(self.m), 0);
        for t in reduced {
            out.push(t.numerator, t.center, t.k);
        }
        out
    }

    /// Exact identity test via [`normalize`](Self::normalize).
    pub fn is_identically_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        self.normalize().terms.is_empty()
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> RationalMvFunction<U> {
        let mut out = RationalMvFunction::zero(self.m);
        for t in &self.terms {
            out.push(t.numerator.map_scalars(f), t.center.map_scalars(f), t.k);
        }
        out
    }

    pub fn to_float(&self) -> RationalMvFunction<f64> {
        self.map_scalars(|c| c.to_float())
    }

    pub fn to_doc(&self) -> RationalDoc {
        RationalDoc {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|t| RationalTermDoc {
                    numerator: t.numerator.to_doc(),
                    center: t.center.to_doc(),
                    k: t.k,
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &RationalDoc) -> Result<Self> {
        if doc.m > MAX_M {
            return Err(Error::Unsupported(format!("m = {}", doc.m)));
        }
        let mut r = Self::zero(doc.m);
        for t in &doc.terms {
            let num = MvPolynomial::from_doc(&t.numerator)?;
            let center = Paravector::from_doc(&t.center)?;
            if num.m() != doc.m || center.m() != doc.m {
                return Err(Error::Parse("term algebra differs from function".into()));
            }
            r.push(num, center, t.k);
        }
        Ok(r)
    }
}

impl<T: Scalar> From<MvPolynomial<T>> for RationalMvFunction<T> {
    fn from(p: MvPolynomial<T>) -> Self {
        Self::from_polynomial(p)
    }
}

impl<T: Scalar> fmt::Display for RationalMvFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.k == 0 {
                write!(f, "[{}]", t.numerator)?;
            } else if t.center.is_zero() {
                write!(f, "[{}] / |x|^{}", t.numerator, 2 * t.k)?;
            } else {
                let c: Vec<String> = t.center.components().iter().map(|v| v.to_doc().to_string()).collect();
                write!(f, "[{}] / |x - ({})|^{}", t.numerator, c.join(","), 2 * t.k)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub m: usize,
    pub terms: Vec<RationalTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalTermDoc {
    pub numerator: PolynomialDoc,
    pub center: Vec<ScalarDoc>,
    pub k: u32,
}
