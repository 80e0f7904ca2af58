//! Subcritical map classes: block generating functions, singularity
//! locations, subcriticality gaps, critical offspring laws, and conditioned
//! Galton-Watson simulation of cut-vertex statistics.
//!
//! A class couples a block series A with a composition convention:
//! - `Corner`: M(z) = 1 + A(z M(z)^2) (block decomposition attaching a map
//!   to every corner of the root block); the composed argument is z M^2.
//! - `Tree`: M(z) = z / (1 - A(M(z))) (vertex-rooted tree-like classes);
//!   the composed argument is M itself.
//!
//! Subcritical means the composed argument stays strictly below the block
//! series' radius z0 at the composed singularity z1, so the class looks
//! tree-like globally and linear statistics obey central limit theorems.

pub mod bipartite;
pub mod gw;
pub mod outerplanar;

use crate::mapgf::GfError;

#[derive(Debug, thiserror::Error)]
pub enum SubcritError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("offspring law inconsistent: {0}")]
    LawConsistency(String),
    #[error("conditioned sampling rejected too often ({attempts} attempts at n = {n})")]
    ExcessiveRejection { attempts: u64, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composition {
    Corner,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    General,
    SeriesParallel,
    Outerplanar,
    BipartiteOuterplanar,
}

impl MapClass {
    pub const ALL: [MapClass; 4] = [
        MapClass::General,
        MapClass::SeriesParallel,
        MapClass::Outerplanar,
        MapClass::BipartiteOuterplanar,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "general" => Some(MapClass::General),
            "series-parallel" => Some(MapClass::SeriesParallel),
            "outerplanar" => Some(MapClass::Outerplanar),
            "bipartite-outerplanar" => Some(MapClass::BipartiteOuterplanar),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MapClass::General => "general",
            MapClass::SeriesParallel => "series-parallel",
            MapClass::Outerplanar => "outerplanar",
            MapClass::BipartiteOuterplanar => "bipartite-outerplanar",
        }
    }

    pub fn composition(&self) -> Composition {
        match self {
            MapClass::General | MapClass::SeriesParallel => Composition::Corner,
            MapClass::Outerplanar | MapClass::BipartiteOuterplanar => Composition::Tree,
        }
    }

    /// Radius of convergence of the block series.
    pub fn z0(&self) -> f64 {
        match self {
            MapClass::General => 4.0 / 27.0,
            MapClass::SeriesParallel | MapClass::Outerplanar => 3.0 - 2.0 * 2.0f64.sqrt(),
            MapClass::BipartiteOuterplanar => bipartite::block_radius(),
        }
    }

    /// Block series value A(t) on [0, z0).
    pub fn block_value(&self, t: f64) -> f64 {
        match self {
            MapClass::General => {
                let v = general_branch_value(t);
                v * v - 2.0 * v * v * v + 2.0 * t
            }
            MapClass::SeriesParallel => {
                let r = (1.0 - 6.0 * t + t * t).max(0.0).sqrt();
                t + 0.5 * t * (1.0 - t - r)
            }
            MapClass::Outerplanar => outerplanar::block_value(t),
            MapClass::BipartiteOuterplanar => bipartite::block_value(t),
        }
    }

    /// Derivative A'(t) on [0, z0).
    pub fn block_derivative(&self, t: f64) -> f64 {
        match self {
            MapClass::General => {
                let v = general_branch_value(t);
                2.0 / (1.0 - v)
            }
            MapClass::SeriesParallel => {
                let r = (1.0 - 6.0 * t + t * t).max(f64::MIN_POSITIVE).sqrt();
                1.0 + 0.5 * (1.0 - t - r) + 0.5 * t * (-1.0 - (t - 3.0) / r)
            }
            MapClass::Outerplanar => outerplanar::block_derivative(t),
            MapClass::BipartiteOuterplanar => bipartite::block_derivative(t),
        }
    }
}

/// Branch value V(t) solving V(1-V)^2 = t on [0, 4/27], V in [0, 1/3].
/// Bisection: robust at the fold point where Newton would crawl.
pub(crate) fn general_branch_value(t: f64) -> f64 {
    bisect(|v| v * (1.0 - v) * (1.0 - v) - t, 0.0, 1.0 / 3.0, 90)
}

/// Bisection for a increasing-through-zero function on [lo, hi].
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: u32) -> f64 {
    let flo = f(lo);
    debug_assert!(flo <= 0.0 || f(hi) <= flo);
    let rising = flo <= 0.0;
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone)]
pub struct SubcritReport {
    pub class: &'static str,
    pub composition: Composition,
    /// Radius of the block series.
    pub z0: f64,
    /// Radius of the composed class series.
    pub z1: f64,
    /// Value of the class series at its singularity.
    pub m_value: f64,
    /// Argument fed to the block series at z1 (z1 M^2 or M).
    pub composed_arg: f64,
    /// z0 - composed_arg; positive means subcritical.
    pub gap: f64,
    pub subcritical: bool,
}

/// Locate the composed singularity and evaluate the subcriticality gap.
///
/// Corner convention: along the branch, z(t) = t/(1+A(t))^2 for t in
/// [0, z0]; a branch point exists iff phi(t) = (1+A) - 2 t A' vanishes
/// before z0. If it never does, the singularity is inherited from the
/// block series (critical composition, gap 0).
/// Tree convention: z(m) = m (1 - A(m)); branch point iff
/// psi(m) = 1 - A(m) - m A'(m) vanishes before z0.
pub fn check_subcritical(class: MapClass) -> SubcritReport {
    let z0 = class.z0();
    let eps = 1e-12;
    match class.composition() {
        Composition::Corner => {
            let phi = |t: f64| 1.0 + class.block_value(t) - 2.0 * t * class.block_derivative(t);
            let t_star = find_root_before(&phi, z0);
            match t_star {
                Some(t) => {
                    let m = 1.0 + class.block_value(t);
                    SubcritReport {
                        class: class.name(),
                        composition: Composition::Corner,
                        z0,
                        z1: t / (m * m),
                        m_value: m,
                        composed_arg: t,
                        gap: z0 - t,
                        subcritical: z0 - t > eps,
                    }
                }
                None => {
                    let m = 1.0 + class.block_value(z0);
                    SubcritReport {
                        class: class.name(),
                        composition: Composition::Corner,
                        z0,
                        z1: z0 / (m * m),
                        m_value: m,
                        composed_arg: z0,
                        gap: 0.0,
                        subcritical: false,
                    }
                }
            }
        }
        Composition::Tree => {
            let psi = |m: f64| 1.0 - class.block_value(m) - m * class.block_derivative(m);
            let m_star = find_root_before(&psi, z0);
            match m_star {
                Some(m) => SubcritReport {
                    class: class.name(),
                    composition: Composition::Tree,
                    z0,
                    z1: m * (1.0 - class.block_value(m)),
                    m_value: m,
                    composed_arg: m,
                    gap: z0 - m,
                    subcritical: z0 - m > eps,
                },
                None => SubcritReport {
                    class: class.name(),
                    composition: Composition::Tree,
                    z0,
                    z1: z0 * (1.0 - class.block_value(z0)),
                    m_value: z0,
                    composed_arg: z0,
                    gap: 0.0,
                    subcritical: false,
                },
            }
        }
    }
}

/// First sign change of f on (0, limit), scanned then bisected; f(0+) > 0.
fn find_root_before(f: &dyn Fn(f64) -> f64, limit: f64) -> Option<f64> {
    let steps = 4096;
    let mut prev_t = limit * 1e-9;
    let mut prev = f(prev_t);
    for i in 1..=steps {
        let t = limit * (i as f64 / steps as f64) * (1.0 - 1e-12);
        let v = f(t);
        if prev > 0.0 && v <= 0.0 {
            let root = bisect(|x| -f(x), prev_t, t, 90);
            return Some(root);
        }
        prev_t = t;
        prev = v;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_parallel_triple() {
        let r = check_subcritical(MapClass::SeriesParallel);
        assert!(r.subcritical);
        assert!((r.z1 - 0.1119109).abs() < 1e-6, "z1 = {}", r.z1);
        assert!((r.m_value - 1.23150).abs() < 1e-4, "M = {}", r.m_value);
        assert!((r.composed_arg - 0.16972).abs() < 1e-4);
        assert!(r.gap > 0.0);
    }

    #[test]
    fn general_maps_are_critical() {
        let r = check_subcritical(MapClass::General);
        assert!(!r.subcritical);
        assert!((r.composed_arg - 4.0 / 27.0).abs() < 1e-9);
        assert!((r.z1 - 1.0 / 12.0).abs() < 1e-9, "z1 = {}", r.z1);
        assert!((r.m_value - 4.0 / 3.0).abs() < 1e-9);
        // the critical identity z1 M(z1)^2 = 4/27 holds to high accuracy
        assert!((r.z1 * r.m_value * r.m_value - 4.0 / 27.0).abs() < 1e-9);
    }

    #[test]
    fn outerplanar_gap_positive() {
        let r = check_subcritical(MapClass::Outerplanar);
        assert!(r.subcritical);
        assert!((r.z1 - 0.125).abs() < 1e-10, "z1 = {}", r.z1);
        assert!((r.m_value - 1.0 / 6.0).abs() < 1e-10, "M = {}", r.m_value);
        assert!((r.z0 - (3.0 - 2.0 * 2.0f64.sqrt())).abs() < 1e-14);
        assert!(r.gap > 0.004);
    }

    #[test]
    fn class_registry_roundtrip() {
        for c in MapClass::ALL {
            assert_eq!(MapClass::from_name(c.name()), Some(c));
        }
        assert_eq!(MapClass::from_name("unknown"), None);
    }
}
