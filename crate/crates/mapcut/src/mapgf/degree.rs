//! Limiting degree laws of large random maps and the probability that the
//! root of the vertex-rerooted local limit is a cut vertex.
//!
//! Chain: the root-degree law d, the uniform-vertex degree law s via
//! z s' = 4 d, the root-degree law r of the edge-weighted (critical
//! parameter 1/12) random map, and the reduced-root degree law q defined by
//! s(z) = q(z r(z)). The root-cut probability is p = 1 - q(3/4), because an
//! attached map is trivial with probability 3/4 independently per corner.

use num::rational::BigRational;
use num::Zero;

use super::{GfError, GfResult};
use crate::qseries::PowerSeries;
use crate::ratio::{self, frac, int};

pub struct DegreeSeries {
    pub order: usize,
    /// Limiting root-degree probabilities of a uniform map.
    pub d: PowerSeries,
    /// Limiting uniform-vertex degree probabilities.
    pub s: PowerSeries,
    /// Root-degree probability series of the critical edge-weighted map.
    pub r: PowerSeries,
    /// Reduced-root degree law: s(z) = q(z r(z)).
    pub q: PowerSeries,
}

/// The root-degree and uniform-vertex degree laws (d, s) to `order`;
/// cheap at high order since only radicals over rationals are involved.
pub fn degree_laws(order: usize) -> GfResult<(PowerSeries, PowerSeries)> {
    let p = order;
    let z = PowerSeries::z(p);

    // d = z sqrt(3 / ((2+z)(6-5z)^3))
    let f_2z = z.add_constant(&int(2));
    let f_65 = &PowerSeries::constant(int(6), p) - &z.scale(&int(5));
    let den = &f_2z * &(&(&f_65 * &f_65) * &f_65);
    let inner = PowerSeries::constant(int(3), p).div(&den)?;
    let d = &z * &inner.sqrt()?;

    // z s' = 4 d  =>  s_k = 4 d_k / k, s_0 = 0
    let s = PowerSeries::from_fn(p, |k| {
        if k == 0 {
            BigRational::zero()
        } else {
            d.coeff(k) * frac(4, k as i64)
        }
    });
    Ok((d, s))
}

/// Build d, s, r, q exactly to `order`. The compositional inversion that
/// defines q is the expensive step; orders up to ~100 are comfortable and
/// entirely sufficient since the q series converges geometrically on the
/// whole evaluation range (radius 3/2).
pub fn degree_series(order: usize) -> GfResult<DegreeSeries> {
    let p = order + 3;
    let z = PowerSeries::z(p);
    let (d, s) = degree_laws(p)?;

    // r(u) = 3/4 * (-3u^2 + 36u - 36 + sqrt(3 (u+2)(6-5u)^3)) / (6 u^2 (u-1))
    let r = {
        let u = PowerSeries::z(p + 2);
        let one = PowerSeries::one(p + 2);
        let g_2u = u.add_constant(&int(2));
        let g_65 = &PowerSeries::constant(int(6), p + 2) - &u.scale(&int(5));
        let radicand = (&g_2u * &(&(&g_65 * &g_65) * &g_65)).scale(&int(3));
        let num = &(&u.scale(&int(36)) - &(&u * &u).scale(&int(3)))
            .add_constant(&int(-36))
            + &radicand.sqrt()?;
        // divide by (u-1) first (unit constant), then by 6u^2 (valuation 2)
        let stage = num.div(&(&u - &one))?;
        stage
            .div(&PowerSeries::monomial(int(6), 2, p + 2))?
            .scale(&frac(3, 4))
    };
    debug_assert!(r.order() >= p);
    let r = r.truncated(p);

    // q is defined by s = q(z r(z)); rather than composing s with the
    // reversion of z r(z) we extract q's coefficients from the triangular
    // system directly, which is the same series at a fraction of the cost.
    // The reversion route is asserted equal at low order in the tests.
    let phi = &z * &r;
    let q = compose_through(&s, &phi)?;

    Ok(DegreeSeries {
        order,
        d: d.truncated(order),
        s: s.truncated(order),
        r: r.truncated(order),
        q: q.truncated(order),
    })
}

/// Solve q(phi(z)) = s(z) for q, order by order; phi must have zero
/// constant and nonzero linear term. Maintains the powers of phi, so the
/// cost is one series product per order.
fn compose_through(s: &PowerSeries, phi: &PowerSeries) -> GfResult<PowerSeries> {
    use crate::qseries::SeriesError;
    let n = s.order();
    assert_eq!(phi.order(), n);
    if !phi.coeff(0).is_zero() {
        return Err(GfError::Series(SeriesError::InnerConstantNonzero));
    }
    if phi.coeff(1).is_zero() {
        return Err(GfError::Series(SeriesError::NonInvertible));
    }
    let mut q = vec![BigRational::zero(); n + 1];
    q[0] = s.coeff(0).clone();
    let mut power = PowerSeries::one(n); // phi^k
    let mut acc = PowerSeries::constant(q[0].clone(), n); // sum_{j<=k} q_j phi^j
    for k in 1..=n {
        power = &power * phi;
        let qk = (s.coeff(k) - acc.coeff(k)) / power.coeff(k);
        if !qk.is_zero() {
            acc = &acc + &power.scale(&qk);
        }
        q[k] = qk;
    }
    Ok(PowerSeries::new(q))
}

/// Closed form of q(z) on 0 <= z < 3/2, radicals arranged so every
/// intermediate is real: the imaginary parts of the raw nested surds cancel
/// pairwise. The branch is validated against the series before use.
pub fn q_closed(z: f64) -> f64 {
    let s1 = (27.0 - 2.0 * z).sqrt() * (3.0 - 2.0 * z).powf(1.5);
    let num = (20.0 * z * z + 48.0 * z + 123.0 - s1) / (4.0 * z * z + 3.0 * z + 24.0);
    let s2 = ((27.0 - 2.0 * z) * (3.0 - 2.0 * z)).sqrt();
    let den_inner = (6.0 - 4.0 * z) / (51.0 - 14.0 * z - 5.0 * s2);
    0.5 * (num.sqrt() / (2.0 * den_inner.sqrt()) - 1.0)
}

#[derive(Debug, Clone)]
pub struct RootCutReport {
    /// p = 1 - q(3/4) from the closed form (authoritative).
    pub p_closed: f64,
    /// Partial-sum value of the q series at 3/4.
    pub p_series: f64,
    /// |last retained term| at 3/4, an empirical tail monitor.
    pub series_tail: f64,
    pub series_order: usize,
    /// |p_closed - p_series|.
    pub difference: f64,
}

/// Evaluate the root-cut probability both ways.
///
/// The closed form's nested radicals are branch-validated by comparing
/// against exact series values at interior points before the evaluation at
/// 3/4 is trusted.
pub fn prob_root_cut() -> GfResult<RootCutReport> {
    let order = 80;
    let ds = degree_series(order)?;
    for (num, den) in [(1i64, 10i64), (1, 4), (1, 2)] {
        let x = num as f64 / den as f64;
        let series_val = ratio::to_f64(&ds.q.eval_exact(&frac(num, den)));
        let closed = q_closed(x);
        if (series_val - closed).abs() > 1e-9 {
            return Err(GfError::Branch(format!(
                "closed form disagrees with the series at z = {num}/{den}: {closed} vs {series_val}"
            )));
        }
    }
    let x = frac(3, 4);
    let p_series = 1.0 - ratio::to_f64(&ds.q.eval_exact(&x));
    let series_tail = ratio::to_f64(&(ds.q.coeff(order) * x.pow(order as i32))).abs();
    let p_closed = 1.0 - q_closed(0.75);
    Ok(RootCutReport {
        p_closed,
        p_series,
        series_tail,
        series_order: order,
        difference: (p_closed - p_series).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_prefix_is_exact() {
        let ds = degree_series(5).unwrap();
        assert_eq!(ds.q.coeff(0), &int(0));
        assert_eq!(ds.q.coeff(1), &frac(4, 9));
        assert_eq!(ds.q.coeff(2), &frac(56, 243));
        assert_eq!(ds.q.coeff(3), &frac(848, 6561));
        assert_eq!(ds.q.coeff(4), &frac(13408, 177147));
        assert_eq!(ds.q.coeff(5), &frac(217664, 4782969));
    }

    #[test]
    fn s_matches_its_closed_form() {
        // s = (-1 + sqrt((6+3z)/(6-5z))) / 2
        let order = 40;
        let ds = degree_series(order).unwrap();
        let one = PowerSeries::one(order);
        let z = PowerSeries::z(order);
        let top = z.scale(&int(3)).add_constant(&int(6));
        let bot = &PowerSeries::constant(int(6), order) - &z.scale(&int(5));
        let closed = (&top.div(&bot).unwrap().sqrt().unwrap() - &one).scale(&frac(1, 2));
        assert_eq!(ds.s, closed);
    }

    #[test]
    fn degree_laws_normalize() {
        // d(1) = s(1) = 1; partial sums at order 300 are well within 1e-6
        let (d, s) = degree_laws(300).unwrap();
        let d1 = ratio::to_f64(&d.eval_exact(&int(1)));
        let s1 = ratio::to_f64(&s.eval_exact(&int(1)));
        assert!((d1 - 1.0).abs() < 1e-6, "d(1) = {d1}");
        assert!((s1 - 1.0).abs() < 1e-6, "s(1) = {s1}");
    }

    #[test]
    fn q_degenerate_point() {
        assert!(q_closed(0.0).abs() < 1e-12, "q(0) = 0 so p = 1 there");
    }

    #[test]
    fn q_matches_reversion_route() {
        // same series as composing s with the compositional inverse of z r
        let order = 16;
        let ds = degree_series(order).unwrap();
        let z = PowerSeries::z(order);
        let phi = &z * &ds.r;
        let q_rev = ds.s.compose(&phi.revert().unwrap()).unwrap();
        assert_eq!(ds.q, q_rev);
        // and the defining relation holds exactly
        assert_eq!(ds.q.compose(&phi).unwrap(), ds.s);
    }

    #[test]
    fn root_cut_probability() {
        let report = prob_root_cut().unwrap();
        let target = (5.0 - 17.0f64.sqrt()) / 2.0;
        assert!(
            (report.p_closed - target).abs() < 1e-9,
            "closed form p = {}",
            report.p_closed
        );
        // the series converges geometrically at 3/4 (radius 3/2)
        assert!(report.difference < 1e-9, "difference {}", report.difference);
        assert!(report.series_tail < 1e-12);
    }
}
