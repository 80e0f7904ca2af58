//! Exact statistic accumulation and histogramming for Monte-Carlo runs.
//!
//! Per-sample statistics are small nonnegative integers, so sums and power
//! sums accumulate exactly in i128 and merging is associative: parallel and
//! serial runs produce identical aggregates. Floating point enters only in
//! the final divisions.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Exact moment accumulator (up to fourth power sums).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MomentAccumulator {
    pub count: u64,
    sum: i128,
    sum2: i128,
    sum3: i128,
    sum4: i128,
    min: i64,
    max: i64,
}

impl MomentAccumulator {
    pub fn new() -> Self {
        MomentAccumulator {
            count: 0,
            sum: 0,
            sum2: 0,
            sum3: 0,
            sum4: 0,
            min: i64::MAX,
            max: i64::MIN,
        }
    }

    pub fn push(&mut self, x: i64) {
        let x = x as i128;
        self.count += 1;
        self.sum += x;
        self.sum2 += x * x;
        self.sum3 += x * x * x;
        self.sum4 += x * x * x * x;
        self.min = self.min.min(x as i64);
        self.max = self.max.max(x as i64);
    }

    pub fn merge(&mut self, other: &Self) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum2 += other.sum2;
        self.sum3 += other.sum3;
        self.sum4 += other.sum4;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let mean = self.mean();
        let m2 = self.sum2 as f64 / n - mean * mean;
        m2 * n / (n - 1.0)
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }

    /// Standardized third central moment.
    pub fn skewness(&self) -> f64 {
        let n = self.count as f64;
        let m = self.mean();
        let m2 = self.sum2 as f64 / n - m * m;
        let m3 = self.sum3 as f64 / n - 3.0 * m * (self.sum2 as f64 / n) + 2.0 * m * m * m;
        m3 / m2.powf(1.5)
    }

    /// Excess kurtosis.
    pub fn kurtosis_excess(&self) -> f64 {
        let n = self.count as f64;
        let m = self.mean();
        let s2 = self.sum2 as f64 / n;
        let s3 = self.sum3 as f64 / n;
        let s4 = self.sum4 as f64 / n;
        let m2 = s2 - m * m;
        let m4 = s4 - 4.0 * m * s3 + 6.0 * m * m * s2 - 3.0 * m.powi(4);
        m4 / (m2 * m2) - 3.0
    }

    pub fn min(&self) -> i64 {
        self.min
    }

    pub fn max(&self) -> i64 {
        self.max
    }

    pub fn summary(&self) -> StatSummary {
        StatSummary {
            mean: self.mean(),
            variance: self.variance(),
            std_error: self.std_error(),
            min: self.min,
            max: self.max,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StatSummary {
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    pub min: i64,
    pub max: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub bin_width: f64,
    /// len(edges) = len(counts) + 1; bin i covers [edges[i], edges[i+1]).
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

/// Freedman-Diaconis default bin width: 2 IQR / n^(1/3), floored at 1 for
/// integer data; `bins` overrides the width with an explicit bin count.
pub fn histogram(values: &[i64], bins: Option<usize>) -> Histogram {
    assert!(!values.is_empty());
    let mut sorted: Vec<i64> = values.to_vec();
    sorted.sort_unstable();
    let lo = sorted[0] as f64;
    let hi = *sorted.last().unwrap() as f64;
    let width = match bins {
        Some(b) => ((hi - lo + 1.0) / b.max(1) as f64).max(1.0),
        None => {
            let q1 = sorted[sorted.len() / 4] as f64;
            let q3 = sorted[(3 * sorted.len()) / 4] as f64;
            let fd = 2.0 * (q3 - q1) / (sorted.len() as f64).cbrt();
            fd.floor().max(1.0)
        }
    };
    let n_bins = (((hi - lo + 1.0) / width).ceil() as usize).max(1);
    let mut counts = vec![0u64; n_bins];
    for &v in values {
        let idx = (((v as f64 - lo) / width) as usize).min(n_bins - 1);
        counts[idx] += 1;
    }
    let edges = (0..=n_bins).map(|i| lo + i as f64 * width).collect();
    Histogram {
        bin_width: width,
        edges,
        counts,
    }
}

/// Chi-square p-value for observed counts against uniform expectation.
pub fn chi_square_uniform_p(observed: &[u64], total: u64) -> f64 {
    let k = observed.len();
    assert!(k >= 2);
    let expected = total as f64 / k as f64;
    let stat: f64 = observed
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum();
    let dist = ChiSquared::new((k - 1) as f64).expect("positive dof");
    1.0 - dist.cdf(stat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_and_merge() {
        let xs = [3i64, 1, 4, 1, 5, 9, 2, 6];
        let mut a = MomentAccumulator::new();
        for &x in &xs {
            a.push(x);
        }
        let mut left = MomentAccumulator::new();
        let mut right = MomentAccumulator::new();
        for &x in &xs[..3] {
            left.push(x);
        }
        for &x in &xs[3..] {
            right.push(x);
        }
        left.merge(&right);
        assert_eq!(left, a);
        assert!((a.mean() - 3.875).abs() < 1e-12);
        assert_eq!(a.min(), 1);
        assert_eq!(a.max(), 9);
    }

    #[test]
    fn histogram_counts_sum() {
        let xs: Vec<i64> = (0..1000).map(|i| (i * i) % 97).collect();
        let h = histogram(&xs, None);
        assert_eq!(h.counts.iter().sum::<u64>(), 1000);
        assert_eq!(h.edges.len(), h.counts.len() + 1);
        let h12 = histogram(&xs, Some(12));
        assert_eq!(h12.counts.iter().sum::<u64>(), 1000);
    }

    #[test]
    fn chi_square_sane() {
        // perfectly uniform observation has p = 1, a wild one has p ~ 0
        let p_uniform = chi_square_uniform_p(&[100, 100, 100, 100], 400);
        assert!(p_uniform > 0.99);
        let p_bad = chi_square_uniform_p(&[400, 0, 0, 0], 400);
        assert!(p_bad < 1e-12);
    }

    #[test]
    fn skewness_of_symmetric_data() {
        let mut a = MomentAccumulator::new();
        for x in [-3i64, -1, 0, 1, 3, -2, 2] {
            a.push(x);
        }
        assert!(a.skewness().abs() < 1e-12);
    }
}
