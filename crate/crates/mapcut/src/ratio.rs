//! Small helpers around `BigRational` used throughout the crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational from an integer.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rational n/d.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convert to f64 without overflowing on huge numerators/denominators.
///
/// `Ratio::to_f64` divides the converted parts, which turns values like
/// 12^400 / 12^399 into inf/inf. Scale both parts into range first.
pub fn to_f64(r: &BigRational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    let shift_n = (nb - 96).max(0) as u64;
    let shift_d = (db - 96).max(0) as u64;
    let nf = (numer >> shift_n).to_f64().unwrap_or(f64::NAN);
    let df = (denom >> shift_d).to_f64().unwrap_or(f64::NAN);
    let diff = shift_n as i64 - shift_d as i64;
    if diff > 1023 {
        return if numer.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    if diff < -1074 {
        return 0.0;
    }
    (nf / df) * 2f64.powi(diff as i32)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact square root of a rational, if it is a perfect square.
pub fn sqrt_exact(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_f64_handles_huge_parts() {
        let big = BigInt::from(12u32).pow(400u32);
        let r = BigRational::new(&big * BigInt::from(4), &big * BigInt::from(3));
        assert!((to_f64(&r) - 4.0 / 3.0).abs() < 1e-14);
        let neg = BigRational::new(-&big, BigInt::from(1));
        assert_eq!(to_f64(&neg), f64::NEG_INFINITY);
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(sqrt_exact(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(sqrt_exact(&frac(2, 1)), None);
        assert_eq!(sqrt_exact(&frac(-1, 1)), None);
    }
}
