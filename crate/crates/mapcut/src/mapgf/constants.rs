//! Central-limit constants from the movement of a square-root singularity.
//!
//! When a counting series has singularity rho(y) in the marking variable y,
//! the marked statistic satisfies mean ~ c n and variance ~ sigma^2 n with
//!   c = -rho'(1)/rho(1),
//!   sigma^2 = c + c^2 - rho''(1)/rho(1).
//! Two evaluation routes: exact rational 2-jets (when rho is built from
//! rationals and perfect-square roots at y=1) and floating central
//! differences with one Richardson refinement at step h = 1e-4.

use num::rational::BigRational;
use num::Signed;

use super::{GfError, GfResult};
use crate::jet::Jet2;
use crate::ratio;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltConstants {
    /// Linear mean coefficient.
    pub c: f64,
    /// Linear variance coefficient.
    pub sigma2: f64,
    pub rho_at_1: f64,
}

/// Floating route: central differences at h = 1e-4, refined once by
/// Richardson extrapolation (error ~ h^4).
pub fn clt_constants(rho: &dyn Fn(f64) -> f64) -> GfResult<CltConstants> {
    clt_constants_with_step(rho, 1e-4)
}

/// Same, with a caller-chosen step: numerically continued singularities
/// carry root-finding noise that favors a larger h (noise enters the
/// second difference as eps/h^2).
pub fn clt_constants_with_step(rho: &dyn Fn(f64) -> f64, h: f64) -> GfResult<CltConstants> {
    let r1 = rho(1.0);
    if !(r1 > 0.0) {
        return Err(GfError::Domain(format!(
            "rho(1) = {r1} must be positive"
        )));
    }
    let d1 = {
        let est = |h: f64| (rho(1.0 + h) - rho(1.0 - h)) / (2.0 * h);
        richardson2(est(h), est(h / 2.0))
    };
    let d2 = {
        let est = |h: f64| (rho(1.0 + h) - 2.0 * r1 + rho(1.0 - h)) / (h * h);
        richardson2(est(h), est(h / 2.0))
    };
    let c = -d1 / r1;
    Ok(CltConstants {
        c,
        sigma2: c + c * c - d2 / r1,
        rho_at_1: r1,
    })
}

fn richardson2(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Exact route: the caller evaluates rho on a rational 2-jet at y = 1.
pub fn clt_constants_exact(rho_jet: &Jet2) -> GfResult<(BigRational, BigRational)> {
    if !rho_jet.v.is_positive() {
        return Err(GfError::Domain("rho(1) must be positive".into()));
    }
    let c = -&rho_jet.d1 / &rho_jet.v;
    let sigma2 = &c + &c * &c - &rho_jet.d2 / &rho_jet.v;
    Ok((c, sigma2))
}

/// Convenience: exact route packaged as floats alongside the rationals.
pub fn clt_constants_from_jet(rho_jet: &Jet2) -> GfResult<CltConstants> {
    let (c, sigma2) = clt_constants_exact(rho_jet)?;
    Ok(CltConstants {
        c: ratio::to_f64(&c),
        sigma2: ratio::to_f64(&sigma2),
        rho_at_1: ratio::to_f64(&rho_jet.v),
    })
}

/// The block-marking singularity of general rooted maps,
/// rho(w) = 4 / (3 (w + 3)^2), as an exact jet at w = 1.
pub fn block_rho_jet() -> Jet2 {
    let w = Jet2::variable(ratio::int(1));
    let w3 = w.add(&Jet2::constant(ratio::int(3)));
    w3.mul(&w3).scale(&ratio::frac(3, 4)).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};

    #[test]
    fn blocks_constants_exact() {
        let (c, s2) = clt_constants_exact(&block_rho_jet()).unwrap();
        assert_eq!(c, frac(1, 2));
        assert_eq!(s2, frac(3, 8));
        assert_eq!(block_rho_jet().v, frac(1, 12));
    }

    #[test]
    fn blocks_constants_float_route() {
        let rho = |w: f64| 4.0 / (3.0 * (w * w + 6.0 * w + 9.0));
        let k = clt_constants(&rho).unwrap();
        assert!((k.c - 0.5).abs() < 1e-9);
        assert!((k.sigma2 - 0.375).abs() < 1e-6);
    }

    #[test]
    fn constant_rho_gives_zero() {
        let k = clt_constants(&|_| 0.25).unwrap();
        assert_eq!(k.c, 0.0);
        assert!(k.sigma2.abs() < 1e-12);
    }

    #[test]
    fn nonpositive_rho_rejected() {
        assert!(clt_constants(&|_| 0.0).is_err());
        let bad = Jet2::constant(int(-1));
        assert!(clt_constants_exact(&bad).is_err());
    }
}
