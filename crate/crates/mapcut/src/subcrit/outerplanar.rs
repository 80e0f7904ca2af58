//! Outerplanar maps: closed forms, the cut-vertex-marked singularity, and
//! the exact critical offspring law.
//!
//! The block series (polygon dissections plus the single edge, counted by
//! non-root vertices) solves 2 A^2 - (1+z) A + z = 0:
//!   A(z) = (1 + z - sqrt(1 - 6z + z^2)) / 4,  radius 3 - 2 sqrt(2).
//! The class satisfies M(z) = z / (1 - A(M(z))) with closed form
//!   M(z) = z (3 - sqrt(1 - 8z)) / (2 (1 + z)),  radius 1/8, M(1/8) = 1/6.
//!
//! Marking cut vertices moves the singularity to
//!   rho(y) = (3 + y - 2 sqrt(2 + 2y)) / (y - 1)^2 = 2 / (2 + sqrt(2 + 2y))^2;
//! the second form is the same function with the removable point y = 1
//! cancelled algebraically, so it evaluates stably near 1 (value 1/8).

use num::rational::BigRational;

use super::SubcritError;
use crate::jet::Jet2;
use crate::mapgf::GfError;
use crate::qseries::PowerSeries;
use crate::ratio::{frac, int};

pub fn block_value(t: f64) -> f64 {
    let r = (1.0 - 6.0 * t + t * t).max(0.0).sqrt();
    0.25 * (1.0 + t - r)
}

pub fn block_derivative(t: f64) -> f64 {
    let r = (1.0 - 6.0 * t + t * t).max(f64::MIN_POSITIVE).sqrt();
    0.25 * (1.0 - (t - 3.0) / r)
}

/// Exact block series: (1 + z - sqrt(1 - 6z + z^2)) / 4.
pub fn block_series(order: usize) -> Result<PowerSeries, GfError> {
    let z = PowerSeries::z(order);
    let one = PowerSeries::one(order);
    let rad = &(&one - &z.scale(&int(6))) + &(&z * &z);
    let a = (&z.add_constant(&int(1)) - &rad.sqrt()?).scale(&frac(1, 4));
    Ok(a)
}

/// Exact class series from the closed form z (3 - sqrt(1-8z)) / (2 (1+z)).
pub fn class_series(order: usize) -> Result<PowerSeries, GfError> {
    let p = order + 1;
    let z = PowerSeries::z(p);
    let one = PowerSeries::one(p);
    let rad = (&one - &z.scale(&int(8))).sqrt()?;
    let num = &z * &(&PowerSeries::constant(int(3), p) - &rad);
    let den = (&one + &z).scale(&int(2));
    Ok(num.div(&den)?.truncated(order))
}

/// Closed form of the class value, for scalar checks.
pub fn class_value(z: f64) -> f64 {
    z * (3.0 - (1.0 - 8.0 * z).max(0.0).sqrt()) / (2.0 * (1.0 + z))
}

/// Bivariate closed form with y marking cut vertices.
pub fn class_value_marked(z: f64, y: f64) -> f64 {
    let rad = ((y - 1.0) * z * z - (6.0 + 2.0 * y) * z + 1.0).max(0.0).sqrt();
    z * (3.0 - z + y * z - rad) / (2.0 * (1.0 + y * z))
}

/// Singularity of the cut-vertex-marked series, stable form
/// 2 / (2 + sqrt(2 + 2y))^2 on y > -1.
pub fn rho(y: f64) -> f64 {
    let s = 2.0 + (2.0 + 2.0 * y).sqrt();
    2.0 / (s * s)
}

/// Exact 2-jet of rho at y = 1 (sqrt(4) = 2 keeps everything rational).
pub fn rho_jet() -> Jet2 {
    let y = Jet2::variable(int(1));
    let s = y
        .scale(&int(2))
        .add(&Jet2::constant(int(2)))
        .sqrt()
        .expect("2 + 2y is a perfect square at y = 1")
        .add(&Jet2::constant(int(2)));
    s.mul(&s).scale(&frac(1, 2)).recip()
}

/// The exact critical offspring data of the tree encoding: the weight
/// series is 1/(1 - A(w)) tilted at tau = M(1/8) = 1/6, where A(1/6) = 1/4
/// exactly, so the normalizer is 4/3 and every moment is rational.
pub struct ExactOffspring {
    pub tau: BigRational,
    pub normalizer: BigRational,
    pub p0: BigRational,
    pub mean: BigRational,
    pub variance: BigRational,
}

pub fn exact_offspring() -> Result<ExactOffspring, SubcritError> {
    let tau = frac(1, 6);
    // jets of phi(w) = 1/(1 - A(w)) at w = 1/6: the radicand
    // 1 - 6w + w^2 equals 1/36 there, again a perfect square
    let w = Jet2::variable(tau.clone());
    let rad = w
        .mul(&w)
        .sub(&w.scale(&int(6)))
        .add(&Jet2::constant(int(1)))
        .sqrt()
        .ok_or_else(|| SubcritError::RootFinding("radicand not a square at 1/6".into()))?;
    let a = w
        .add(&Jet2::constant(int(1)))
        .sub(&rad)
        .scale(&frac(1, 4));
    let phi = Jet2::constant(int(1)).sub(&a).recip();
    let mean = &tau * &phi.d1 / &phi.v;
    let second_factorial = &tau * &tau * &phi.d2 / &phi.v;
    let variance = &second_factorial + &mean - &mean * &mean;
    Ok(ExactOffspring {
        p0: phi.v.recip(),
        normalizer: phi.v,
        tau,
        mean,
        variance,
    })
}

/// Exact offspring probabilities p_k = phi_k tau^k / phi(tau) up to `k_max`.
pub fn offspring_probs(k_max: usize) -> Result<Vec<BigRational>, SubcritError> {
    let a = block_series(k_max).map_err(SubcritError::Gf)?;
    let phi = PowerSeries::one(k_max)
        .div(&(&PowerSeries::one(k_max) - &a))
        .map_err(|e| SubcritError::Gf(e.into()))?;
    let data = exact_offspring()?;
    let inv_norm = data.normalizer.recip();
    let mut tau_pow = BigRational::from_integer(1.into());
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        out.push(phi.coeff(k) * &tau_pow * &inv_norm);
        tau_pow *= &data.tau;
    }
    Ok(out)
}

/// Functional-equation residual of the exact class series, for tests:
/// M - z/(1 - A(M)) must vanish identically.
pub fn class_equation_residual(order: usize) -> Result<PowerSeries, GfError> {
    let m = class_series(order)?;
    let a = block_series(order)?;
    // A(M): composition with zero-constant inner series
    let a_of_m = a.compose(&m)?;
    let denom = &PowerSeries::one(order) - &a_of_m;
    let z = PowerSeries::z(order);
    Ok(&m - &z.div(&denom)?)
}
