//! Cut-vertex and block statistics of rooted maps, assembled exactly at the
//! core substitution t = z M(z)^2.
//!
//! The block decomposition attaches a rooted map to every corner of a core
//! 2-connected block (with the one-edge map and the loop allowed as cores),
//! which turns every needed quantity into an algebraic expression in
//!   M(z),  W = V(z M^2),  u1 = 1/(1-W),  B(t,1,s) for s in {1, 1/M, u1},
//! plus the face-marked and z-derivative forms at t. Only one implicit
//! solve (for W) is needed; no generic series composition appears.
//!
//! The marked-vertex value B*(t,1,1,1/M) has an exactly cancelling division
//! by (1/M - u1(t)), a valuation-1 series; the cancellation is verified by
//! the exact division itself.

use num::rational::BigRational;

use super::closed::{biconn_eval, biconn_one_from_branch, branch_param_at, map_series};
use super::{addx, divx, mulx, subx, GfError, GfResult};
use crate::qseries::PowerSeries;
use crate::ratio;

/// All series of the cut-vertex pipeline, truncated at `order`.
pub struct CorePipeline {
    pub order: usize,
    /// Counting series M(z).
    pub m: PowerSeries,
    /// Core substitution t = z M(z)^2.
    pub t: PowerSeries,
    /// Branch parameter at the substitution, W = V(t).
    pub w: PowerSeries,
    /// Block series value A(t,1,1) = B(t,1,1) + 2t.
    pub a_t: PowerSeries,
    /// Face-marked value A_x(t,1,1) = Bx(t,1,1) + t.
    pub a_x: PowerSeries,
    /// Derivative value A_z(t,1,1) = Bz(t,1,1) + 2.
    pub a_z: PowerSeries,
    /// B(t, 1, 1/M): root-degree-discounted 2-connected value.
    pub b_inv_m: PowerSeries,
    /// Marked-vertex value B*(t,1,1,1/M).
    pub bbullet: PowerSeries,
    /// Maps with at least one edge whose root is not a cut vertex:
    /// B(t,1,1/M) + zM + z.
    pub m0: PowerSeries,
    /// Total cut-vertex incidence: sum over n-edge maps of their
    /// cut-vertex count, as the z^n coefficient.
    pub ea: PowerSeries,
}

pub fn core_pipeline(order: usize) -> GfResult<CorePipeline> {
    let p = order + 6;
    let one = PowerSeries::one(p);
    let z = PowerSeries::z(p);
    let m = map_series(p);
    let t = &z * &(&m * &m);
    let w = branch_param_at(&t)?;
    let u1t = one.div(&(&one - &w))?;
    let inv_m = m.recip()?;

    let b_inv_m = biconn_eval(&t, &w, &inv_m)?;
    let w2 = &w * &w;
    let b_u1 = biconn_eval(&t, &w, &u1t)?;
    if b_u1 != w2 {
        return Err(GfError::Consistency(
            "kernel identity B(t,1,u1(t)) = W^2 failed at the core substitution".into(),
        ));
    }
    let b11 = biconn_one_from_branch(&t, &w)?;

    // A-specializations: the block series adds the one-edge core and the
    // loop core, A(t,x,u) = B + t x u + t u^2, so at (t,1,1):
    //   A = B + 2t, A_x = Bx + t, A_z = Bz + 2.
    let a_t = addx(&b11, &t.scale(&ratio::int(2)));
    let q = super::closed::kernel_value_at(&t, &u1t, &b11, &w)?;
    let u1m1 = subx(&u1t, &one);
    let core = mulx(&mulx(&u1m1, &q), &subx(&PowerSeries::one(q.order()), &q));
    let bx_t = divx(&core, &u1t)?;
    let bz_t = addx(&divx(&core, &mulx(&t, &u1t))?, &u1m1);
    let a_x = addx(&bx_t, &t);
    let a_z = bz_t.add_constant(&ratio::int(2));

    // marked-vertex value at w = 1/M via the kernel formula
    let num = subx(&mulx(&u1t, &b_inv_m), &mulx(&inv_m, &w2));
    let den = subx(&inv_m, &u1t);
    let frac = divx(&num, &den)?;
    let zm = &z * &m;
    let zmu1 = mulx(&zm, &u1t);
    let ntil = addx(&frac, &zmu1);
    let dtil = subx(&subx(&PowerSeries::one(frac.order()), &frac), &zmu1);
    let bbullet = mulx(&zm, &divx(&ntil, &dtil)?);

    // root-not-cut series
    let m0 = addx(&addx(&b_inv_m, &zm), &z);

    // total cut-vertex incidence
    let two_zm_az = mulx(&zm.scale(&ratio::int(2)), &a_z);
    let bracket_tail = addx(
        &subx(&addx(&addx(&b_inv_m, &zm), &z), &m),
        &one,
    );
    let num_e = addx(
        &subx(
            &subx(
                &subx(
                    &subx(&addx(&a_t, &a_x), &zm.scale(&ratio::int(2))),
                    &z,
                ),
                &b_inv_m,
            ),
            &bbullet,
        ),
        &mulx(&two_zm_az, &bracket_tail),
    );
    let den_e = subx(&PowerSeries::one(num_e.order()), &two_zm_az);
    let ea = divx(&num_e, &den_e)?;

    let fit = |s: &PowerSeries| s.truncated(order);
    Ok(CorePipeline {
        order,
        m: fit(&m),
        t: fit(&t),
        w: fit(&w),
        a_t: fit(&a_t),
        a_x: fit(&a_x),
        a_z: fit(&a_z),
        b_inv_m: fit(&b_inv_m),
        bbullet: fit(&bbullet),
        m0: fit(&m0),
        ea: fit(&ea),
    })
}

/// Mean and second-factorial-moment numerators for the number of non-root
/// blocks, from the w-derivatives of M(z,w) = 1 + A(z (1 + w(M-1))^2) at
/// w = 1. Dividing the z^n coefficient by M_n gives E[blocks - 1] and
/// E[(blocks-1)(blocks-2)] for a uniform n-edge map (total block count is
/// the non-root count plus one for maps with at least one edge).
pub struct BlockMoments {
    pub order: usize,
    /// Numerator of E[#non-root blocks]: sum over maps of (blocks - 1).
    pub mean_num: PowerSeries,
    /// Numerator of the second factorial moment of the non-root count.
    pub second_factorial_num: PowerSeries,
}

pub fn block_moments(order: usize) -> GfResult<BlockMoments> {
    let p = order + 6;
    let pipe = core_pipeline(p)?;
    let (m, t, a_z) = (&pipe.m, &pipe.t, &pipe.a_z);
    let z = PowerSeries::z(pipe.m.order());
    let one = PowerSeries::one(pipe.m.order());
    let zm = mulx(&z, m);

    // s = 2 z M A'(t); first derivative M1 = s (M-1) / (1-s)
    let s = mulx(&zm.scale(&ratio::int(2)), a_z);
    let m_minus_1 = subx(m, &one);
    let one_minus_s = subx(&PowerSeries::one(s.order()), &s);
    let m1 = divx(&mulx(&s, &m_minus_1), &one_minus_s)?;

    // second derivative: M2 (1 - s) = A''(t) G1^2 + 2 z A'(t) (M-1+M1)^2 + 2 s M1,
    // with G1 = 2 z M (M-1+M1) and A''(t) by the chain rule as
    // (d/dz of A'(t))/ (dt/dz), both exact formal derivatives.
    let g1 = mulx(&zm.scale(&ratio::int(2)), &addx(&m_minus_1, &m1));
    let az_prime = a_z.derivative();
    let t_prime = t.derivative();
    let a2_t = divx(&az_prime, &t_prime)?;
    let rhs = addx(
        &addx(
            &mulx(&a2_t, &mulx(&g1, &g1)),
            &mulx(
                &mulx(&z.scale(&ratio::int(2)), a_z),
                &{
                    let b = addx(&m_minus_1, &m1);
                    mulx(&b, &b)
                },
            ),
        ),
        &mulx(&s.scale(&ratio::int(2)), &m1),
    );
    let m2 = divx(&rhs, &one_minus_s)?;

    Ok(BlockMoments {
        order,
        mean_num: m1.truncated(order),
        second_factorial_num: m2.truncated(order),
    })
}

impl BlockMoments {
    /// (mean, variance) of the total block count of a uniform n-edge map.
    pub fn mean_var_at(&self, n: usize, map_count_n: &BigRational) -> (f64, f64) {
        let mean_nonroot = self.mean_num.coeff(n) / map_count_n;
        let second = self.second_factorial_num.coeff(n) / map_count_n;
        let var = &second + &mean_nonroot - &mean_nonroot * &mean_nonroot;
        (
            ratio::to_f64(&mean_nonroot) + 1.0,
            ratio::to_f64(&var),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapgf::closed::map_count;
    use crate::ratio::int;
    use num::rational::BigRational;

    #[test]
    fn low_coefficients_are_zero() {
        let p = core_pipeline(8).unwrap();
        // no 0- or 1-edge map has a cut vertex
        assert_eq!(p.ea.coeff(0), &int(0));
        assert_eq!(p.ea.coeff(1), &int(0));
        // both one-edge maps have a non-cut root
        assert_eq!(p.m0.coeff(0), &int(0));
        assert_eq!(p.m0.coeff(1), &int(2));
    }

    #[test]
    fn composition_identity() {
        // M = 1 + A(z M^2, 1, 1) exactly
        let p = core_pipeline(40).unwrap();
        let one = PowerSeries::one(40);
        assert_eq!(p.m, &one + &p.a_t);
    }

    #[test]
    fn block_mean_at_one_edge() {
        // every one-edge map is a single block: non-root mean numerator 0
        let bm = block_moments(6).unwrap();
        assert_eq!(bm.mean_num.coeff(1), &int(0));
        let (mean, var) = bm.mean_var_at(1, &BigRational::from_integer(map_count(1)));
        assert!((mean - 1.0).abs() < 1e-12);
        assert!(var.abs() < 1e-12);
    }
}
