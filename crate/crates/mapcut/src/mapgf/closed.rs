//! Closed forms: the map counting series, the branch parametrization of
//! 2-connected maps, and the kernel-method formulas derived from it.
//!
//! Everything here works at a generic argument series t, so the same code
//! serves the base series (t = z) and the core substitution (t = z M(z)^2).

use num::bigint::BigInt;
use num::rational::BigRational;

use super::{addx, divx, mulx, subx, GfError, GfResult};
use crate::qseries::{solve_implicit, PowerSeries};
use crate::ratio::{self, factorial};

/// Number of rooted planar maps with n edges: 2 (2n)! 3^n / ((n+2)! n!).
pub fn map_count(n: u64) -> BigInt {
    let num = BigInt::from(2) * factorial(2 * n) * BigInt::from(3).pow(n as u32);
    let den = factorial(n + 2) * factorial(n);
    debug_assert_eq!(&num % &den, BigInt::from(0));
    num / den
}

/// Counting series of rooted planar maps: (18z - 1 + (1-12z)^{3/2}) / (54 z^2).
pub fn map_series(order: usize) -> PowerSeries {
    let p = order + 2;
    let one = PowerSeries::one(p);
    let z = PowerSeries::z(p);
    let lin = &one - &z.scale(&ratio::int(12));
    let radical = &lin * &lin.sqrt().expect("1 - 12z has unit constant term");
    let num = &(&z.scale(&ratio::int(18)) - &one) + &radical;
    let den = PowerSeries::monomial(ratio::int(54), 2, p);
    let m = num.div(&den).expect("numerator vanishes to second order");
    debug_assert_eq!(m.order(), order);
    m
}

/// Branch parameter W(t): the solution of W (1-W)^2 = t with W(0) = 0.
/// For t = z this parametrizes the 2-connected counting series.
pub fn branch_param_at(t: &PowerSeries) -> GfResult<PowerSeries> {
    let n = t.order();
    let one = PowerSeries::one(n);
    let three = ratio::int(3);
    let w = solve_implicit(
        n,
        &PowerSeries::zero(n),
        |x| {
            let omx = &one - x;
            Ok(&(x * &(&omx * &omx)) - t)
        },
        |x| {
            let omx = &one - x;
            let om3x = &one - &x.scale(&three);
            Ok(&omx * &om3x)
        },
    )?;
    Ok(w)
}

/// (V, u1) at the base argument: V solves z = V(1-V)^2 and the kernel root
/// u1 solves u1 = 1 + z u1^3; both are solved independently so the identity
/// u1 (1-V) = 1 stays a genuine cross-check.
pub fn branch_and_kernel(order: usize) -> GfResult<(PowerSeries, PowerSeries)> {
    let z = PowerSeries::z(order);
    let v = branch_param_at(&z)?;
    let one = PowerSeries::one(order);
    let three = ratio::int(3);
    let u1 = solve_implicit(
        order,
        &one,
        |x| {
            let x3 = &(x * x) * x;
            Ok(&(x - &one) - &(&z * &x3))
        },
        |x| {
            let x2 = x * x;
            Ok(&one - &(&z * &x2).scale(&three))
        },
    )?;
    Ok((v, u1))
}

/// The 2-connected series B(t, 1, s) from the radical closed form, with w
/// the branch parameter at t and s any substitution series with s(0) = 1.
///
/// In the parametrization U = V = w, t = w(1-w)^2 the closed form reads
///   B = -1/2 (1 - (1 + w^2 - 2w^3) s + t s^2)
///       + 1/2 (1 - (1-w) s) sqrt(1 - 2w(1 + w - 2w^2) s + t w s^2).
pub fn biconn_eval(t: &PowerSeries, w: &PowerSeries, s: &PowerSeries) -> GfResult<PowerSeries> {
    let one = PowerSeries::one(t.order());
    let two = ratio::int(2);
    let w2 = mulx(w, w);
    let w3 = mulx(&w2, w);
    let s2 = mulx(s, s);

    let a1 = subx(&addx(&one, &w2), &w3.scale(&two)); // 1 + w^2 - 2w^3
    let poly = addx(&subx(&one, &mulx(&a1, s)), &mulx(t, &s2));

    // 2w (1 + w - 2w^2)
    let inner = subx(&addx(&one, w), &w2.scale(&two));
    let rad_lin = mulx(&mulx(w, &inner), s).scale(&two);
    let rad_quad = mulx(&mulx(t, w), &s2);
    let radicand = addx(&subx(&one, &rad_lin), &rad_quad);
    let root = radicand.sqrt()?;

    let front = subx(&one, &mulx(&subx(&one, w), s));
    let b = subx(&mulx(&front, &root), &poly).scale(&ratio::frac(1, 2));
    Ok(b)
}

/// B(z,1,1): counting series of 2-connected maps (one-edge map and loop
/// excluded). Equals V^2 - 2V^3 in the branch parametrization; the radical
/// evaluation is checked against that reduction.
pub fn biconn_series(order: usize) -> GfResult<PowerSeries> {
    let z = PowerSeries::z(order);
    let v = branch_param_at(&z)?;
    biconn_one_from_branch(&z, &v)
}

pub(crate) fn biconn_one_from_branch(
    t: &PowerSeries,
    w: &PowerSeries,
) -> GfResult<PowerSeries> {
    let b = biconn_eval(t, w, &PowerSeries::one(t.order()))?;
    let v2 = mulx(w, w);
    let v3 = mulx(&v2, w);
    let reduced = subx(&v2, &v3.scale(&ratio::int(2)));
    if b != reduced {
        return Err(GfError::Consistency(
            "radical form of B(t,1,1) disagrees with its branch reduction".into(),
        ));
    }
    Ok(b)
}

/// The kernel value Q(t) = (W^2 - u1 B(t,1,1)) / (u1 - 1) + t u1.
/// Costs one truncation order (exact division by a valuation-1 series).
pub fn kernel_value_at(
    t: &PowerSeries,
    u1: &PowerSeries,
    b11: &PowerSeries,
    w: &PowerSeries,
) -> GfResult<PowerSeries> {
    let w2 = mulx(w, w);
    let num = subx(&w2, &mulx(u1, b11));
    let den = subx(u1, &PowerSeries::one(u1.order()));
    let quot = divx(&num, &den)?;
    Ok(addx(&quot, &mulx(t, u1)))
}

/// Face-marked and z-derivative series of 2-connected maps at argument t:
///   Bx(t,1,1) = ((u1-1)/u1) Q (1-Q)
///   Bz(t,1,1) = ((u1-1)/(t u1)) Q (1-Q) + u1 - 1
/// Output orders drop by 1 resp. 2 from the input order.
pub fn biconn_marked_at(
    t: &PowerSeries,
    w: &PowerSeries,
) -> GfResult<(PowerSeries, PowerSeries)> {
    let one = PowerSeries::one(t.order());
    let u1 = divx(&one, &subx(&one, w))?;
    let b11 = biconn_one_from_branch(t, w)?;
    let q = kernel_value_at(t, &u1, &b11, w)?;
    let u1m1 = subx(&u1, &one);
    let core = mulx(&mulx(&u1m1, &q), &subx(&PowerSeries::one(q.order()), &q));
    let bx = divx(&core, &u1)?;
    let bz_main = divx(&core, &mulx(t, &u1))?;
    let bz = addx(&bz_main, &u1m1);
    Ok((bx, bz))
}

/// Convenience: (Bx, Bz) at the base argument t = z, both at `order`.
pub fn biconn_marked_series(order: usize) -> GfResult<(PowerSeries, PowerSeries)> {
    let p = order + 2;
    let z = PowerSeries::z(p);
    let v = branch_param_at(&z)?;
    let (bx, bz) = biconn_marked_at(&z, &v)?;
    Ok((bx.truncated(order), bz.truncated(order)))
}

/// Exact coefficient-wise derivative check helper: d/dz of a series.
pub fn z_derivative(f: &PowerSeries) -> PowerSeries {
    f.derivative()
}

/// Exact rational n-th coefficient of E[X_n]-style quotients.
pub fn coeff_ratio(num: &PowerSeries, den_coeff: &BigRational, n: usize) -> BigRational {
    num.coeff(n) / den_coeff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    #[test]
    fn map_count_small_values() {
        let expect: [i64; 7] = [1, 2, 9, 54, 378, 2916, 24057];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(map_count(n as u64), BigInt::from(e));
        }
    }

    #[test]
    fn map_series_matches_closed_count() {
        let m = map_series(100);
        for n in [0usize, 1, 2, 3, 10, 50, 100] {
            assert_eq!(
                m.coeff(n),
                &BigRational::from_integer(map_count(n as u64)),
                "coefficient {n}"
            );
        }
    }

    #[test]
    fn map_series_partial_sum_near_value_at_singularity() {
        // M(1/12) = 4/3; order-400 partial sum is within the n^{-3/2} tail
        let m = map_series(400);
        let got = ratio::to_f64(&m.eval_exact(&ratio::frac(1, 12)));
        assert!((got - 4.0 / 3.0).abs() < 2e-4, "got {got}");
    }

    #[test]
    fn kernel_root_and_branch_identity() {
        let (v, u1) = branch_and_kernel(40).unwrap();
        let one = PowerSeries::one(40);
        assert_eq!(&u1 * &(&one - &v), one, "u1 (1 - V) = 1");
    }

    #[test]
    fn biconn_counts() {
        // 2-connected rooted maps (excluding the two one-edge maps):
        // 1, 2, 6, 22 for n = 2..5
        let b = biconn_series(8).unwrap();
        assert_eq!(b.coeff(0), &int(0));
        assert_eq!(b.coeff(1), &int(0));
        assert_eq!(b.coeff(2), &int(1));
        assert_eq!(b.coeff(3), &int(2));
        assert_eq!(b.coeff(4), &int(6));
        assert_eq!(b.coeff(5), &int(22));
    }

    #[test]
    fn marked_series_consistency() {
        // Bz is the formal z-derivative of B(z,1,1)
        let order = 30;
        let b = biconn_series(order + 1).unwrap();
        let (_, bz) = biconn_marked_series(order).unwrap();
        assert_eq!(z_derivative(&b), bz);
    }
}
