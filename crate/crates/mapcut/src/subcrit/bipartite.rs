//! Bipartite outerplanar maps: the block series of bipartite polygon
//! dissections and the numerically continued cut-vertex singularity.
//!
//! A dissection is bipartite iff its series decomposition has an odd number
//! of parts, giving A = z + A^3/(1 - A^2), i.e. the cleared cubic
//!   F(A, z) = A - 2 A^3 + z A^2 - z = 0
//! on the branch with A(0) = 0. The branch point (simultaneous root of F
//! and F_A) sits at A*^2 = (5 - sqrt(17))/4. No closed form is available
//! for the cut-vertex-marked singularity rho(y); it is continued
//! numerically from the unmarked branch point.

use super::{bisect, SubcritError};
use crate::qseries::{solve_implicit, PowerSeries};
use crate::ratio::int;

/// F and its partial derivatives.
fn f(a: f64, z: f64) -> f64 {
    a - 2.0 * a * a * a + z * a * a - z
}

fn f_a(a: f64, z: f64) -> f64 {
    1.0 - 6.0 * a * a + 2.0 * z * a
}

/// Branch-point ordinate: A* with 2A*^4 - 5A*^2 + 1 = 0 on the small branch.
pub fn branch_ordinate() -> f64 {
    ((5.0 - 17.0f64.sqrt()) / 4.0).sqrt()
}

/// Radius of the bipartite dissection series,
/// z0 = (6 A*^2 - 1) / (2 A*) = 0.33674...
pub fn block_radius() -> f64 {
    let a = branch_ordinate();
    (6.0 * a * a - 1.0) / (2.0 * a)
}

/// Block value A(z) on [0, z0), the branch through the origin.
pub fn block_value(z: f64) -> f64 {
    let hi = branch_ordinate();
    if z <= 0.0 {
        return 0.0;
    }
    // F(. , z) increases from -z to F(A*, z) >= 0 on [0, A*]
    bisect(|a| f(a, z), 0.0, hi, 80)
}

/// A'(z) by implicit differentiation: (1 - A^2) / (1 - 6A^2 + 2zA).
pub fn block_derivative(z: f64) -> f64 {
    let a = block_value(z);
    (1.0 - a * a) / f_a(a, z)
}

/// Second derivative, differentiating the quotient once more.
pub fn block_second_derivative(z: f64) -> f64 {
    let a = block_value(z);
    let ap = (1.0 - a * a) / f_a(a, z);
    let d = f_a(a, z);
    let d_prime = -12.0 * a * ap + 2.0 * a + 2.0 * z * ap;
    (-2.0 * a * ap * d - (1.0 - a * a) * d_prime) / (d * d)
}

/// Exact series of the cleared cubic, branch A(0) = 0.
pub fn block_series(order: usize) -> Result<PowerSeries, SubcritError> {
    let z = PowerSeries::z(order);
    let one = PowerSeries::one(order);
    let two = int(2);
    let a = solve_implicit(
        order,
        &PowerSeries::zero(order),
        |x| {
            let x2 = x * x;
            let x3 = &x2 * x;
            Ok(&(x - &x3.scale(&two)) + &(&(&z * &x2) - &z))
        },
        |x| {
            let x2 = x * x;
            Ok(&(&one - &x2.scale(&int(6))) + &(&z * x).scale(&two))
        },
    )
    .map_err(|e| SubcritError::Gf(e.into()))?;
    Ok(a)
}

/// The y-deformed singular system. For the tree convention with cut-vertex
/// marking, M = z / (1 - A(z + y(M - z))); with t = z(1-y) + yM the branch
/// condition is m y A'(t) / (1 - A(t)) = 1 where z = m (1 - A(t)).
/// Solves t for given (m, y), then locates the critical m by bisection.
fn t_of(m: f64, y: f64, z0: f64) -> f64 {
    // t = m ((1-y)(1 - A(t)) + y), decreasing in t for y <= 1; solve by
    // bisection on H(t) = m((1-y)(1-A(t)) + y) - t which decreases from m
    bisect(|t| -(m * ((1.0 - y) * (1.0 - block_value(t)) + y) - t), 0.0, z0 * (1.0 - 1e-12), 80)
}

/// Cut-vertex-marked singularity rho(y) = z1(y), continued numerically.
pub fn rho(y: f64) -> f64 {
    let z0 = block_radius();
    let kappa = |m: f64| {
        let t = t_of(m, y, z0);
        m * y * block_derivative(t) / (1.0 - block_value(t)) - 1.0
    };
    // critical m: kappa rises through zero before t(m) reaches z0
    let mut hi = z0;
    // keep t(hi) inside the block radius
    while t_of(hi, y, z0) >= z0 * (1.0 - 1e-9) {
        hi *= 0.999;
    }
    let m_star = bisect(kappa, 1e-9, hi, 80);
    let t = t_of(m_star, y, z0);
    m_star * (1.0 - block_value(t))
}

/// Coefficients of A(tau z) in f64 up to k_max: the tilted block series
/// for sampling tables. All coefficients lie in [0, 1) when tau is inside
/// the radius, so the recurrences stay well-conditioned.
pub(crate) fn tilted_block_series_f64(tau: f64, k_max: usize) -> Vec<f64> {
    let n = k_max;
    let mut a = vec![0.0; n + 1];
    a[1] = tau;
    let iters = (usize::BITS - n.leading_zeros()) + 3;
    for _ in 0..iters {
        let a2 = f64_mul(&a, &a);
        let a3 = f64_mul(&a2, &a);
        // F = A - 2A^3 + tau z A^2 - tau z
        let mut f = vec![0.0; n + 1];
        for k in 0..=n {
            f[k] = a[k] - 2.0 * a3[k];
        }
        for k in 1..=n {
            f[k] += tau * a2[k - 1];
        }
        f[1] -= tau;
        // F_A = 1 - 6A^2 + 2 tau z A
        let mut fa = vec![0.0; n + 1];
        fa[0] = 1.0;
        for k in 0..=n {
            fa[k] -= 6.0 * a2[k];
        }
        for k in 1..=n {
            fa[k] += 2.0 * tau * a[k - 1];
        }
        let step = f64_div(&f, &fa);
        let mut moved = 0.0;
        for k in 0..=n {
            moved += step[k].abs();
            a[k] -= step[k];
        }
        if moved == 0.0 {
            break;
        }
    }
    a
}

fn f64_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len() - 1;
    let mut out = vec![0.0; n + 1];
    for i in 0..=n {
        if a[i] == 0.0 {
            continue;
        }
        for j in 0..=(n - i) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn f64_div(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len() - 1;
    debug_assert!(b[0] != 0.0);
    let mut q = vec![0.0; n + 1];
    for k in 0..=n {
        let mut acc = a[k];
        for j in 0..k {
            acc -= q[j] * b[k - j];
        }
        q[k] = acc / b[0];
    }
    q
}

#[derive(Debug, Clone)]
pub struct BipartiteForms {
    /// Block series coefficients.
    pub block_series: PowerSeries,
    pub z0: f64,
    /// Composed singularity z1 = -5 + 3 sqrt(3).
    pub z1: f64,
    /// Class value at z1: (2/3)(2 sqrt(3) - 3).
    pub m_value: f64,
}

pub fn bipartite_forms(order: usize) -> Result<BipartiteForms, SubcritError> {
    let report = super::check_subcritical(super::MapClass::BipartiteOuterplanar);
    if !report.subcritical {
        return Err(SubcritError::RootFinding(
            "bipartite outerplanar class did not verify as subcritical".into(),
        ));
    }
    Ok(BipartiteForms {
        block_series: block_series(order)?,
        z0: report.z0,
        z1: report.z1,
        m_value: report.m_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapgf::constants::clt_constants_with_step;

    #[test]
    fn radius_matches_closed_form() {
        let closed = -0.125 * (5.0 - 17.0f64.sqrt()).sqrt() * (17.0f64.sqrt() - 7.0);
        assert!((block_radius() - closed).abs() < 1e-14);
        assert!((block_radius() - 0.33674).abs() < 1e-5);
    }

    #[test]
    fn series_solves_parts_decomposition() {
        // A = z + A^3/(1-A^2) term by term
        let order = 20;
        let a = block_series(order).unwrap();
        let one = PowerSeries::one(order);
        let a2 = &a * &a;
        let rhs = &PowerSeries::z(order)
            + &(&(&a2 * &a) * &one.div(&(&one - &a2)).unwrap());
        assert_eq!(a, rhs);
    }

    #[test]
    fn composed_singularity_values() {
        let r = super::super::check_subcritical(super::super::MapClass::BipartiteOuterplanar);
        let z1 = -5.0 + 3.0 * 3.0f64.sqrt();
        let m = (2.0 / 3.0) * (2.0 * 3.0f64.sqrt() - 3.0);
        assert!((r.z1 - z1).abs() < 1e-10, "z1 = {}", r.z1);
        assert!((r.m_value - m).abs() < 1e-10, "m = {}", r.m_value);
        assert!(r.subcritical);
        // block value at the singularity is (sqrt(3)-1)/2
        let a = block_value(r.m_value);
        assert!((a - (3.0f64.sqrt() - 1.0) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn rho_continuation_constants() {
        assert!((rho(1.0) - (-5.0 + 3.0 * 3.0f64.sqrt())).abs() < 1e-10);
        let k = clt_constants_with_step(&rho, 1e-3).unwrap();
        let c = (3.0f64.sqrt() - 1.0) / 2.0;
        let s2 = (11.0 * 3.0f64.sqrt() - 17.0) / 12.0;
        assert!((k.c - c).abs() < 1e-6, "c = {}", k.c);
        assert!((k.sigma2 - s2).abs() < 1e-6, "sigma2 = {}", k.sigma2);
    }
}
