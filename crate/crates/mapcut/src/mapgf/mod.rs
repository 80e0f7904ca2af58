//! Exact generating functions for rooted planar maps: counting series,
//! 2-connected cores via the quadratic and kernel methods, cut-vertex and
//! block statistics, degree laws, and the asymptotic constants they imply.
//!
//! Sub-modules:
//! - [`closed`]: closed forms and the branch parametrization (everything
//!   follows from one implicit solve, so no generic series composition is
//!   ever needed on the hot path);
//! - [`catalytic_eqs`]: the catalytic functional equations, solved order by
//!   order; these are the independent oracles for the closed forms;
//! - [`cut_gf`]: the cut-vertex and block pipeline at the core substitution
//!   t = z M(z)^2;
//! - [`degree`]: limiting degree laws and the root-cut probability;
//! - [`constants`]: central-limit constants from singularity locations;
//! - [`asymptotics`]: slope fits and singular-constant extrapolation.

pub mod asymptotics;
pub mod catalytic_eqs;
pub mod closed;
pub mod constants;
pub mod cut_gf;
pub mod degree;

use crate::qseries::{PowerSeries, SeriesError};

pub use asymptotics::{
    estimate_c_from_series, fit_line, fit_line_with_inverse_sqrt, singular_constant_check,
    SingularChecks, SlopeFit,
};
pub use catalytic_eqs::{
    biconn_catalytic, biconn_functional, biconn_functional_dx, biconn_vertex_marked,
    blocks_catalytic, map_series_catalytic,
};
pub use closed::{
    biconn_eval, biconn_marked_series, biconn_series, branch_and_kernel, branch_param_at,
    map_count, map_series,
};
pub use constants::{clt_constants, clt_constants_exact, clt_constants_with_step, CltConstants};
pub use cut_gf::{block_moments, core_pipeline, BlockMoments, CorePipeline};
pub use degree::{degree_laws, degree_series, prob_root_cut, DegreeSeries, RootCutReport};

#[derive(Debug, thiserror::Error)]
pub enum GfError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("branch validation failed: {0}")]
    Branch(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type GfResult<T> = Result<T, GfError>;

// Internal arithmetic helpers that align truncation orders to the shorter
// operand; exact valuation-cancelling divisions shorten series, and these
// keep the formula code readable. The strict equal-order contract stays on
// the public PowerSeries operations.
pub(crate) fn mulx(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    let k = a.order().min(b.order());
    &a.truncated(k) * &b.truncated(k)
}

pub(crate) fn addx(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    let k = a.order().min(b.order());
    &a.truncated(k) + &b.truncated(k)
}

pub(crate) fn subx(a: &PowerSeries, b: &PowerSeries) -> PowerSeries {
    let k = a.order().min(b.order());
    &a.truncated(k) - &b.truncated(k)
}

pub(crate) fn divx(a: &PowerSeries, b: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let k = a.order().min(b.order());
    a.truncated(k).div(&b.truncated(k))
}

/// The bundle of generating-function data used by identity tests and the
/// CLI: univariate members at `order`, catalytic members at
/// `catalytic_order` (they carry per-order polynomials and are only needed
/// at the orders the cross-checks use).
pub struct GfBundle {
    pub order: usize,
    pub catalytic_order: usize,
    /// Counting series of rooted maps.
    pub m: PowerSeries,
    /// Catalytic counting series by root-face valency.
    pub m_u: crate::CatalyticSeries,
    /// Branch parameter V (z = V(1-V)^2).
    pub v: PowerSeries,
    /// Kernel root u1 = 1 + z u1^3 = 1/(1-V).
    pub u1: PowerSeries,
    /// 2-connected series by root-face valency, radical route.
    pub b_u: crate::CatalyticSeries,
    /// Face-marked 2-connected series Bx(z,1,1).
    pub bx: PowerSeries,
    /// z-derivative series Bz(z,1,1).
    pub bz: PowerSeries,
    /// Vertex-marked 2-connected series by marked-vertex degree.
    pub bbullet_w: crate::CatalyticSeries,
    /// Total cut-vertex incidence series.
    pub ea: PowerSeries,
    /// Maps whose root vertex is not a cut vertex.
    pub m0: PowerSeries,
    /// Maps by number of non-root blocks.
    pub m_w: crate::CatalyticSeries,
}

impl GfBundle {
    pub fn new(order: usize, catalytic_order: usize) -> GfResult<Self> {
        let m = map_series(order);
        let (v, u1) = branch_and_kernel(order)?;
        // kernel-root cubic and the reciprocal identity
        let one = PowerSeries::one(order);
        if &u1 * &(&one - &v) != one {
            return Err(GfError::Consistency("u1 (1-V) != 1".into()));
        }
        let b_u = biconn_catalytic(order)?;
        // Lemma-style identity: substituting the kernel root into the
        // catalytic 2-connected series collapses it to V^2
        let b_at_u1 = b_u.eval_u_series(&u1);
        if b_at_u1 != &v * &v {
            return Err(GfError::Consistency("B(z,1,u1) != V^2".into()));
        }
        let (bx, bz) = biconn_marked_series(order)?;
        let pipeline = core_pipeline(order)?;
        let m_u = map_series_catalytic(catalytic_order)?;
        if m_u.at_one() != m.truncated(catalytic_order) {
            return Err(GfError::Consistency("M(z,1) != M(z)".into()));
        }
        let bbullet_w = biconn_vertex_marked(catalytic_order)?;
        let m_w = blocks_catalytic(catalytic_order)?;
        Ok(GfBundle {
            order,
            catalytic_order,
            m,
            m_u,
            v,
            u1,
            b_u,
            bx,
            bz,
            bbullet_w,
            ea: pipeline.ea,
            m0: pipeline.m0,
            m_w,
        })
    }

    /// Bundle with catalytic members capped at a cheap default.
    pub fn with_default_catalytic(order: usize) -> GfResult<Self> {
        Self::new(order, order.min(24))
    }
}
