use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{variable_count, Multivector, MultivectorDoc, Paravector, MAX_M};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector over x_0..x_{2m+1}.
pub type Exponents = Vec<u32>;

/// Polynomial in x_0..x_{2m+1} with multivector coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration is
/// lexicographic with x_0 most significant. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MvPolynomial<T> {
    m: usize,
    terms: BTreeMap<Exponents, Multivector<T>>,
}

impl<T: Scalar> MvPolynomial<T> {
    pub fn zero(m: usize) -> Self {
        MvPolynomial {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Multivector<T>) -> Self {
        let m = c.m();
        Self::monomial(vec![0; variable_count(m)], c)
    }

    pub fn monomial(exps: Exponents, coeff: Multivector<T>) -> Self {
        let mut p = Self::zero(coeff.m());
        assert_eq!(exps.len(), variable_count(p.m), "exponent vector length");
        p.add_term(exps, &coeff);
        p
    }

    /// The scalar polynomial x_i.
    pub fn variable(m: usize, i: usize) -> Self {
        let mut exps = vec![0; variable_count(m)];
        exps[i] = 1;
        Self::monomial(exps, Multivector::one(m))
    }

    /// The paravector variable x = Σ x_i e_i.
    pub fn paravector_variable(m: usize) -> Self {
        let mut p = Self::zero(m);
        for i in 0..variable_count(m) {
            let mut exps = vec![0; variable_count(m)];
            exps[i] = 1;
            p.add_term(exps, &Multivector::generator(m, i));
        }
        p
    }

    /// Paravector-valued affine polynomial x - c.
    pub fn shifted_variable(c: &Paravector<T>) -> Self {
        let m = c.m();
        let mut p = Self::paravector_variable(m);
        p.add_term(vec![0; variable_count(m)], &(-&c.to_multivector()));
        p
    }

    /// Scalar polynomial |x - c|^2.
    pub fn squared_distance(c: &Paravector<T>) -> Self {
        let m = c.m();
        let n = variable_count(m);
        let mut p = Self::zero(m);
        let mut constant = T::zero();
        for (i, ci) in c.components().iter().enumerate() {
            let mut e2 = vec![0; n];
            e2[i] = 2;
            p.add_term(e2, &Multivector::one(m));
            if !ci.is_zero() {
                let mut e1 = vec![0; n];
                e1[i] = 1;
                p.add_term(e1, &Multivector::scalar(m, -(T::from_int(2) * ci.clone())));
                T::mul_add_to(&mut constant, ci, ci);
            }
        }
        p.add_term(vec![0; n], &Multivector::scalar(m, constant));
        p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        variable_count(self.m)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Multivector<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&Multivector<T>> {
        self.terms.get(exps)
    }

    /// Adds `coeff * x^exps`, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: Exponents, coeff: &Multivector<T>) {
        debug_assert_eq!(coeff.m(), self.m);
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                existing.add_assign_ref(coeff);
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff.clone());
            }
        }
    }

    fn add_scaled_term(&mut self, exps: Exponents, s: &T, coeff: &Multivector<T>) {
        if s.is_zero() {
            return;
        }
        let scaled = coeff.scale(s);
        self.add_term(exps, &scaled);
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        MvPolynomial {
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "polynomials over m = {} and m = {}",
                self.m, other.m
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &(-c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    /// Clifford conjugation applied to every coefficient; maps `x` to `bar(x)`.
    pub fn conjugate(&self) -> Self {
        self.map_coeffs(|c| c.conjugate())
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.m);
        }
        self.map_coeffs(|c| c.scale(s))
    }

    fn map_coeffs(&self, f: impl Fn(&Multivector<T>) -> Multivector<T>) -> Self {
        let mut out = Self::zero(self.m);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out
    }

    /// Ordered product `self * other`; coefficients multiply in that order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.m);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `a * self` for a constant multivector `a`.
    pub fn left_mul_mv(&self, a: &Multivector<T>) -> Self {
        self.map_coeffs(|c| a * c)
    }

    /// `self * a` for a constant multivector `a`.
    pub fn right_mul_mv(&self, a: &Multivector<T>) -> Self {
        self.map_coeffs(|c| c * a)
    }

    /// `x * self` with x the paravector variable.
    pub fn left_mul_x(&self) -> Self {
        Self::paravector_variable(self.m)
            .checked_mul(self)
            .expect("same algebra")
    }

    pub fn partial(&self, axis: usize) -> Result<Self> {
        if axis >= self.nvars() {
            return Err(Error::AxisOutOfRange {
                axis,
                nvars: self.nvars(),
            });
        }
        let mut out = Self::zero(self.m);
        for (e, c) in &self.terms {
            let k = e[axis];
            if k == 0 {
                continue;
            }
            let mut de = e.clone();
            de[axis] -= 1;
            out.add_scaled_term(de, &T::from_int(k as i64), c);
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
        for (e, c) in &self.terms {
            let mut mono = T::one();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    mono = mono * x.clone();
                }
            }
            acc.add_scaled_assign(&mono, c);
        }
        Ok(acc)
    }

    pub fn eval_paravector(&self, x: &Paravector<T>) -> Result<Multivector<T>> {
        self.eval(x.components())
    }

    /// `u ↦ self(u + a)`.
    pub fn shift(&self, a: &Paravector<T>) -> Result<Self> {
        if a.m() != self.m {
            return Err(Error::DimensionMismatch("shift vector".into()));
        }
        let n = self.nvars();
        // Powers of (u_i + a_i) as scalar polynomials, cached per axis.
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lin = Self::variable(self.m, i);
            lin.add_term(vec![0; n], &Multivector::scalar(self.m, a.components()[i].clone()));
            let maxk = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
            let mut row = vec![Self::constant(Multivector::one(self.m))];
            for k in 1..=maxk as usize {
                let next = row[k - 1].checked_mul(&lin)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Self::zero(self.m);
        for (e, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    prod = prod.checked_mul(&powers[i][k as usize])?;
                }
            }
            out = out.checked_add(&prod)?;
        }
        Ok(out)
    }

    /// Exact quotient by |x - c|^2, or `None` when it does not divide.
    ///
    /// |x - c|^2 is monic in x_0 with leading monomial x_0^2 under the
    /// lexicographic order, so single-divisor division is exact: the
    /// remainder vanishes iff the divisor divides.
    pub fn div_exact_by_squared_distance(&self, c: &Paravector<T>) -> Option<Self> {
        let q = Self::squared_distance(c);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.m);
        while let Some((lead_e, lead_c)) = rem.terms.iter().next_back() {
            if lead_e[0] < 2 {
                return None;
            }
            let mut t = lead_e.clone();
            t[0] -= 2;
            let coeff = lead_c.clone();
            for (qe, qc) in &q.terms {
                let s = qc.get(crate::algebra::Blade::SCALAR);
                let exps: Exponents = t.iter().zip(qe).map(|(a, b)| a + b).collect();
                rem.add_term(exps, &coeff.scale(&-s.clone()));
            }
            quot.add_term(t, &coeff);
        }
        Some(quot)
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> MvPolynomial<U> {
        let mut out = MvPolynomial::zero(self.m);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &c.map_scalars(f));
        }
        out
    }

    pub fn to_float(&self) -> MvPolynomial<f64> {
        self.map_scalars(|c| c.to_float())
    }

    pub fn to_doc(&self) -> PolynomialDoc {
        PolynomialDoc {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| PolynomialTermDoc {
                    exponents: e.clone(),
                    coeff: c.to_doc(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &PolynomialDoc) -> Result<Self> {
        if doc.m > MAX_M {
            return Err(Error::Unsupported(format!("m = {}", doc.m)));
        }
        let mut p = Self::zero(doc.m);
        for t in &doc.terms {
            if t.exponents.len() != variable_count(doc.m) {
                return Err(Error::Parse(format!(
                    "exponent vector {:?} must have {} entries",
                    t.exponents,
                    variable_count(doc.m)
                )));
            }
            let c = Multivector::from_doc(&t.coeff)?;
            if c.m() != doc.m {
                return Err(Error::Parse("coefficient algebra differs from polynomial".into()));
            }
            p.add_term(t.exponents.clone(), &c);
        }
        Ok(p)
    }
}

impl<T: Scalar> fmt::Display for MvPolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub m: usize,
    pub terms: Vec<PolynomialTermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialTermDoc {
    pub exponents: Vec<u32>,
    pub coeff: MultivectorDoc,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Poly = MvPolynomial<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn partial_of_square() {
        let x0 = Poly::variable(1, 0);
        let sq = x0.checked_mul(&x0).unwrap();
        let d = sq.partial(0).unwrap();
        assert_eq!(d, x0.scale(&q(2)));
    }

    #[test]
    fn partial_of_constant_is_zero() {
        let c = Poly::constant(Multivector::generator(1, 2));
        for i in 0..4 {
            assert!(c.partial(i).unwrap().is_zero());
        }
        assert!(matches!(c.partial(4), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn partial_of_first_order_solution() {
        // x_0 e_1 - x_1
        let p = Poly::variable(1, 0)
            .left_mul_mv(&Multivector::generator(1, 1))
            .checked_sub(&Poly::variable(1, 1))
            .unwrap();
        assert_eq!(p.partial(1).unwrap(), Poly::constant(Multivector::scalar(1, q(-1))));
    }

    #[test]
    fn shift_matches_pointwise_evaluation() {
        let x = Poly::paravector_variable(1);
        let p = x.checked_mul(&x).unwrap().checked_mul(&x).unwrap();
        let a = Paravector::new(vec![q(1), q(-2), Rational::ratio(1, 3), q(0)]).unwrap();
        let shifted = p.shift(&a).unwrap();
        let u = Paravector::new(vec![q(2), Rational::ratio(1, 2), q(-1), q(3)]).unwrap();
        let ua = u.checked_add(&a).unwrap();
        assert_eq!(shifted.eval_paravector(&u).unwrap(), p.eval_paravector(&ua).unwrap());
    }

    #[test]
    fn division_by_squared_distance() {
        let c = Paravector::new(vec![q(1), q(0), q(-1), q(2)]).unwrap();
        let d = Poly::squared_distance(&c);
        let f = Poly::paravector_variable(1).left_mul_x();
        let prod = f.checked_mul(&d).unwrap();
        assert_eq!(prod.div_exact_by_squared_distance(&c).unwrap(), f);
        assert!(f.div_exact_by_squared_distance(&c).is_none());
        assert!(Poly::zero(1).div_exact_by_squared_distance(&c).unwrap().is_zero());
    }

    #[test]
    fn doc_round_trip() {
        let x = Poly::paravector_variable(1);
        let p = x.checked_mul(&x).unwrap().scale(&Rational::ratio(3, 7));
        assert_eq!(Poly::from_doc(&p.to_doc()).unwrap(), p);
    }
}
