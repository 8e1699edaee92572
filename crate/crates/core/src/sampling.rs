//! Seeded random inputs for property checks.
//!
//! Every generator takes an explicit RNG, so the same seed reproduces the
//! same sample on any machine.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{algebra_dim, variable_count, Multivector, Paravector};
use crate::calculus::{MvPolynomial, RationalMvFunction};
use crate::error::Result;
use crate::scalar::{Rational, Scalar};
use crate::solutions::{p_alpha, s_beta, MultiIndex};

pub const DEFAULT_SEED: u64 = 0x5eed_2718;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 9`, `1 <= q <= 7`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7))
}

pub fn paravector<R: Rng>(rng: &mut R, m: usize) -> Paravector<Rational> {
    Paravector::new((0..variable_count(m)).map(|_| rational(rng)).collect()).expect("even length")
}

pub fn multivector<R: Rng>(rng: &mut R, m: usize) -> Multivector<Rational> {
    Multivector::from_coeffs(m, (0..algebra_dim(m)).map(|_| rational(rng)).collect()).expect("full length")
}

/// Paravector with components uniform in `[-scale, scale]`.
pub fn float_paravector<R: Rng>(rng: &mut R, m: usize, scale: f64) -> Paravector<f64> {
    Paravector::new((0..variable_count(m)).map(|_| rng.gen_range(-scale..=scale)).collect()).expect("even length")
}

/// Sparse polynomial with `terms` random monomials of degree `<= max_degree`.
pub fn polynomial<R: Rng>(rng: &mut R, m: usize, max_degree: u32, terms: usize) -> MvPolynomial<Rational> {
    let nvars = variable_count(m);
    let mut p = MvPolynomial::zero(m);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; nvars];
        for _ in 0..degree {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(exps, &multivector(rng, m));
    }
    p
}

fn random_index<R: Rng>(rng: &mut R, m: usize, max_order: u32) -> MultiIndex {
    let order = rng.gen_range(1..=max_order);
    let all = MultiIndex::with_order(variable_count(m), order);
    all.choose(rng).expect("non-empty").clone()
}

/// `Σ P_α c_α` over `count` random `α` with `1 <= |α| <= max_order`.
pub fn p_alpha_combination<R: Rng>(rng: &mut R, m: usize, max_order: u32, count: usize) -> Result<MvPolynomial<Rational>> {
    let mut f = MvPolynomial::zero(m);
    for _ in 0..count {
        let alpha = random_index(rng, m, max_order);
        f = f.checked_add(&p_alpha::<Rational>(&alpha, m)?.right_mul_mv(&multivector(rng, m)))?;
    }
    Ok(f)
}

/// `Σ S_β d_β` over `count` random `β` with `1 <= |β| <= max_order`.
pub fn s_beta_combination<R: Rng>(rng: &mut R, m: usize, max_order: u32, count: usize) -> Result<RationalMvFunction<Rational>> {
    let mut f = RationalMvFunction::zero(m);
    for _ in 0..count {
        let beta = random_index(rng, m, max_order);
        f = f.checked_add(&s_beta::<Rational>(&beta, m)?.right_mul_mv(&multivector(rng, m)))?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sample() {
        let a = polynomial(&mut rng(5), 1, 4, 6);
        let b = polynomial(&mut rng(5), 1, 4, 6);
        assert_eq!(a, b);
        assert!(a.degree().unwrap_or(0) <= 4);
    }
}
