//! Arithmetic in the Clifford algebra R_{0,2m+1}.
//!
//! Generators e_1..e_{2m+1} square to -1 and anticommute; e_0 = 1 is the
//! scalar unit. Basis blades are bitmasks (bit i-1 set when e_i is present)
//! and multivectors store all 2^(2m+1) coefficients densely.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarDoc};

/// Largest algebra parameter the crate supports (dimension 2^5 = 32).
pub const MAX_M: usize = 2;

/// Number of vector generators e_1..e_n, n = 2m+1.
pub const fn generator_count(m: usize) -> usize {
    2 * m + 1
}

/// Real dimension of R_{0,2m+1}.
pub const fn algebra_dim(m: usize) -> usize {
    1 << generator_count(m)
}

/// Number of real variables x_0..x_{2m+1} of a paravector argument.
pub const fn variable_count(m: usize) -> usize {
    2 * m + 2
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Blade(u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub const fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// `e_i`, with `e_0` the scalar unit.
    pub const fn generator(i: usize) -> Self {
        if i == 0 {
            Blade::SCALAR
        } else {
            Blade(1 << (i - 1))
        }
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Generator indices in ascending order.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    /// `"1"`, `"e1"`, `"e12"`, ...
    pub fn name(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let mut s = String::from("e");
        for g in self.generators() {
            s.push_str(&g.to_string());
        }
        s
    }

    pub fn parse(name: &str, m: usize) -> Result<Self> {
        let name = name.trim();
        if name == "1" {
            return Ok(Blade::SCALAR);
        }
        let digits = name
            .strip_prefix('e')
            .ok_or_else(|| Error::Parse(format!("bad blade name {name:?}")))?;
        if digits.is_empty() {
            return Err(Error::Parse(format!("bad blade name {name:?}")));
        }
        let mut mask = 0u32;
        let mut last = 0;
        for c in digits.chars() {
            let g = c
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("bad blade name {name:?}")))? as usize;
            if g == 0 || g <= last || g > generator_count(m) {
                return Err(Error::Parse(format!(
                    "blade {name:?} must list distinct generators 1..={} in ascending order",
                    generator_count(m)
                )));
            }
            last = g;
            mask |= 1 << (g - 1);
        }
        Ok(Blade(mask))
    }

    /// Sign of the Clifford conjugation on this blade: (-1)^{k(k+1)/2}.
    pub fn conjugation_sign(self) -> i8 {
        match self.grade() % 4 {
            0 | 3 => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `e_a e_b = sign * e_{a xor b}`.
///
/// The sign counts the transpositions needed to sort the concatenated
/// generator list plus one factor -1 for every generator present in both.
#[inline]
pub fn blade_product(a: Blade, b: Blade) -> (i8, Blade) {
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    swaps += (a.0 & b.0).count_ones();
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    (sign, Blade(a.0 ^ b.0))
}

/// Dense element of R_{0,2m+1}.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<T> {
    m: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(m: usize) -> Self {
        Multivector {
            m,
            coeffs: vec![T::zero(); algebra_dim(m)],
        }
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, T::one())
    }

    pub fn scalar(m: usize, value: T) -> Self {
        let mut mv = Self::zero(m);
        mv.coeffs[0] = value;
        mv
    }

    pub fn basis(m: usize, blade: Blade) -> Self {
        let mut mv = Self::zero(m);
        mv.coeffs[blade.index()] = T::one();
        mv
    }

    /// `e_i` for `0 <= i <= 2m+1`.
    pub fn generator(m: usize, i: usize) -> Self {
        Self::basis(m, Blade::generator(i))
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != algebra_dim(m) {
            return Err(Error::DimensionMismatch(format!(
                "R_{{0,{}}} needs {} coefficients, got {}",
                generator_count(m),
                algebra_dim(m),
                coeffs.len()
            )));
        }
        Ok(Multivector { m, coeffs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn get(&self, blade: Blade) -> &T {
        &self.coeffs[blade.index()]
    }

    pub fn set(&mut self, blade: Blade, value: T) {
        self.coeffs[blade.index()] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero `(blade, coefficient)` pairs in blade order.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Blade(i as u32), c))
    }

    fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "operands live in R_{{0,{}}} and R_{{0,{}}}",
                generator_count(self.m),
                generator_count(other.m)
            )));
        }
        Ok(())
    }

    /// Geometric product, the bilinear extension of [`blade_product`].
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        self.check_same_algebra(rhs)?;
        let mut out = Self::zero(self.m);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (sign, c) = blade_product(Blade(i as u32), Blade(j as u32));
                if sign > 0 {
                    T::mul_add_to(&mut out.coeffs[c.index()], a, b);
                } else {
                    T::mul_sub_from(&mut out.coeffs[c.index()], a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_algebra(rhs)?;
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        Ok(out)
    }

    pub(crate) fn add_assign_ref(&mut self, rhs: &Self) {
        debug_assert_eq!(self.m, rhs.m);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }

    pub(crate) fn sub_assign_ref(&mut self, rhs: &Self) {
        debug_assert_eq!(self.m, rhs.m);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }

    /// `self += s * rhs`
    pub(crate) fn add_scaled_assign(&mut self, s: &T, rhs: &Self) {
        debug_assert_eq!(self.m, rhs.m);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                T::mul_add_to(a, s, b);
            }
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Multivector {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Clifford conjugation: the anti-automorphism with bar(e_i) = -e_i.
    pub fn conjugate(&self) -> Self {
        Multivector {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if Blade(i as u32).conjugation_sign() > 0 {
                        c.clone()
                    } else {
                        -c.clone()
                    }
                })
                .collect(),
        }
    }

    /// Sum of squared coefficients.
    pub fn norm_sqr(&self) -> T {
        let mut acc = T::zero();
        for c in &self.coeffs {
            T::mul_add_to(&mut acc, c, c);
        }
        acc
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().to_float().sqrt()
    }

    /// Grade 0 and grade 1 parts only.
    pub fn is_paravector(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| Blade(i as u32).grade() <= 1 || c.is_zero())
    }

    pub fn to_paravector(&self) -> Result<Paravector<T>> {
        if !self.is_paravector() {
            return Err(Error::InvalidInput("multivector has grade >= 2 parts".into()));
        }
        Ok(Paravector {
            components: (0..variable_count(self.m))
                .map(|i| self.get(Blade::generator(i)).clone())
                .collect(),
        })
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Multivector<U> {
        Multivector {
            m: self.m,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> Multivector<f64> {
        self.map_scalars(|c| c.to_float())
    }

    pub fn to_doc(&self) -> MultivectorDoc {
        MultivectorDoc {
            m: self.m,
            coeffs: self
                .nonzero_terms()
                .map(|(b, c)| BladeCoeffDoc {
                    blade: b.name(),
                    value: c.to_doc(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &MultivectorDoc) -> Result<Self> {
        if doc.m > MAX_M {
            return Err(Error::Unsupported(format!("m = {} (supported: 0..={MAX_M})", doc.m)));
        }
        let mut mv = Self::zero(doc.m);
        for entry in &doc.coeffs {
            let blade = Blade::parse(&entry.blade, doc.m)?;
            let v = T::from_doc(&entry.value)?;
            mv.coeffs[blade.index()] += &v;
        }
        Ok(mv)
    }
}

impl<T: Scalar> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.nonzero_terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if b == Blade::SCALAR {
                write!(f, "{}", c.to_doc())?;
            } else {
                write!(f, "{}*{b}", c.to_doc())?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// Operator impls panic on mismatched algebras; use `product` / `checked_add`
// to get the error instead.
impl<T: Scalar> Mul for &Multivector<T> {
    type Output = Multivector<T>;
    fn mul(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.product(rhs).expect("multivector product")
    }
}

impl<T: Scalar> Add for &Multivector<T> {
    type Output = Multivector<T>;
    fn add(self, rhs: &Multivector<T>) -> Multivector<T> {
        self.checked_add(rhs).expect("multivector sum")
    }
}

impl<T: Scalar> Sub for &Multivector<T> {
    type Output = Multivector<T>;
    fn sub(self, rhs: &Multivector<T>) -> Multivector<T> {
        assert_eq!(self.m, rhs.m, "multivector difference across algebras");
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        self.map_scalars(|c| -c.clone())
    }
}

/// Element of S ⊕ V: x = x_0 + Σ x_i e_i.
#[derive(Clone, PartialEq, Debug)]
pub struct Paravector<T> {
    components: Vec<T>,
}

impl<T: Scalar> Paravector<T> {
    pub fn new(components: Vec<T>) -> Result<Self> {
        let n = components.len();
        if n < 2 || !n.is_multiple_of(2) || (n - 2) / 2 > MAX_M {
            return Err(Error::DimensionMismatch(format!(
                "a paravector has 2m+2 components with m <= {MAX_M}, got {n}"
            )));
        }
        Ok(Paravector { components })
    }

    pub fn zero(m: usize) -> Self {
        Paravector {
            components: vec![T::zero(); variable_count(m)],
        }
    }

    /// Unit along axis `i` (`i = 0` is the scalar unit).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut p = Self::zero(m);
        p.components[i] = T::one();
        p
    }

    pub fn m(&self) -> usize {
        (self.components.len() - 2) / 2
    }

    pub fn components(&self) -> &[T] {
        &self.components
    }

    pub fn to_multivector(&self) -> Multivector<T> {
        let m = self.m();
        let mut mv = Multivector::zero(m);
        for (i, c) in self.components.iter().enumerate() {
            mv.coeffs[Blade::generator(i).index()] = c.clone();
        }
        mv
    }

    pub fn conjugate(&self) -> Self {
        let mut components = self.components.clone();
        for c in components.iter_mut().skip(1) {
            *c = -c.clone();
        }
        Paravector { components }
    }

    pub fn norm_sqr(&self) -> T {
        let mut acc = T::zero();
        for c in &self.components {
            T::mul_add_to(&mut acc, c, c);
        }
        acc
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().to_float().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// x^{-1} = bar(x) / |x|^2.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2.is_zero() {
            return Err(Error::SingularPoint("inverse of the zero paravector".into()));
        }
        let conj = self.conjugate();
        Ok(Paravector {
            components: conj.components.into_iter().map(|c| c / n2.clone()).collect(),
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        Paravector {
            components: self.components.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        if self.components.len() != rhs.components.len() {
            return Err(Error::DimensionMismatch("paravector lengths differ".into()));
        }
        Ok(Paravector {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.components.len() != rhs.components.len() {
            return Err(Error::DimensionMismatch("paravector lengths differ".into()));
        }
        Ok(Paravector {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Paravector {
            components: self.components.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Paravector<U> {
        Paravector {
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> Paravector<f64> {
        self.map_scalars(|c| c.to_float())
    }

    pub fn to_doc(&self) -> Vec<ScalarDoc> {
        self.components.iter().map(|c| c.to_doc()).collect()
    }

    pub fn from_doc(doc: &[ScalarDoc]) -> Result<Self> {
        Self::new(doc.iter().map(T::from_doc).collect::<Result<Vec<_>>>()?)
    }
}

/// Serialized multivector; only nonzero coefficients are listed.
impl<T: Scalar> Serialize for Multivector<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Multivector<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MultivectorDoc::deserialize(d)?;
        Multivector::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

impl<T: Scalar> Serialize for Paravector<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Paravector<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = Vec::<ScalarDoc>::deserialize(d)?;
        Paravector::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultivectorDoc {
    pub m: usize,
    pub coeffs: Vec<BladeCoeffDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BladeCoeffDoc {
    pub blade: String,
    pub value: ScalarDoc,
}
