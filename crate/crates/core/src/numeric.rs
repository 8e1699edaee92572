//! Deterministic float reductions.

/// Pairwise (tree) sum of `f64` values. The association order depends only
/// on the length, so results are reproducible across thread counts.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Element-wise pairwise sum of equal-length vectors.
pub fn pairwise_sum_vectors(mut parts: Vec<Vec<f64>>) -> Vec<f64> {
    if parts.is_empty() {
        return Vec::new();
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
            }
            next.push(a);
        }
        parts = next;
    }
    parts.pop().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_agree_with_naive() {
        let v: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let naive: f64 = v.iter().sum();
        assert!((pairwise_sum(&v) - naive).abs() < 1e-12);
        let parts: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64, 1.0]).collect();
        assert_eq!(pairwise_sum_vectors(parts), vec![21.0, 7.0]);
    }
}
