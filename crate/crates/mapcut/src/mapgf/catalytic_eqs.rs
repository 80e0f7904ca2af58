//! Catalytic functional equations solved order by order.
//!
//! These are the root-edge-deletion equations. Each rewrites as a fixed
//! point X = Phi(X) where every X-dependent term carries a factor of
//! valuation >= 1 in z, so one pass per z-order converges; passes run at a
//! growing truncation (pass k computes order k) to stay near O(N^5) total
//! work, and a final full evaluation verifies the fixed point exactly.
//!
//! The divisions by (u - 1) and (w - u1(z)) must cancel exactly at every
//! order; failures surface as `InexactCancellation` errors, never as silent
//! approximation.

use num::rational::BigRational;
use num::One;

use super::closed::{biconn_series, branch_and_kernel, branch_param_at};
use super::{GfError, GfResult};
use crate::qseries::catalytic::CatalyticSeries;
use crate::qseries::PowerSeries;
use crate::ratio;

fn extended(s: &CatalyticSeries, order: usize) -> CatalyticSeries {
    let mut out = CatalyticSeries::zero(order, s.name());
    for n in 0..=s.order().min(order) {
        for (k, c) in s.z_coeff(n).iter().enumerate() {
            if !num::Zero::is_zero(c) {
                out = out.add(&CatalyticSeries::monomial(c.clone(), n, k, order, s.name()));
            }
        }
    }
    out
}

/// One pass of the root-face-valency equation
/// M = 1 + z u^2 M^2 + z u (u M - M(z,1)) / (u - 1).
fn map_eq_pass(m: &CatalyticSeries) -> GfResult<CatalyticSeries> {
    let order = m.order();
    let name = m.name();
    let one = CatalyticSeries::one(order, name);
    let m1 = m.at_one();
    let num = m.mul_u().sub(&CatalyticSeries::from_series(&m1, name));
    let quot = num.div_u_minus_one("root-face equation")?;
    let zu = CatalyticSeries::monomial(BigRational::one(), 1, 1, order, name);
    let zu2 = CatalyticSeries::monomial(BigRational::one(), 1, 2, order, name);
    Ok(one
        .add(&zu2.mul(&m.mul(m)))
        .add(&zu.mul(&quot)))
}

/// Counting series of rooted maps by root-face valency, from the root-edge
/// deletion equation. The z^n coefficient has degree at most 2n.
pub fn map_series_catalytic(order: usize) -> GfResult<CatalyticSeries> {
    let mut m = CatalyticSeries::one(0, 'u');
    for k in 1..=order {
        m = map_eq_pass(&extended(&m, k))?;
    }
    let m = if order == 0 { m } else { m };
    // exact fixed point, plus the degree bound
    if map_eq_pass(&m)? != m {
        return Err(GfError::Consistency(
            "root-face equation not at a fixed point".into(),
        ));
    }
    for n in 0..=order {
        if m.degree_of(n) > 2 * n {
            return Err(GfError::Consistency(format!(
                "root-face valency degree {} exceeds 2n at z^{n}",
                m.degree_of(n)
            )));
        }
    }
    Ok(m)
}

/// One pass of the 2-connected equation in product form
/// B = Q0 (z x u + B),  Q0 = (u B(z,x,1) - B) / (1 - u) + z u.
fn biconn_eq_pass(b: &CatalyticSeries, x: &BigRational) -> GfResult<CatalyticSeries> {
    let order = b.order();
    let name = b.name();
    let b1 = b.at_one();
    let num = CatalyticSeries::from_series(&b1, name).mul_u().sub(b);
    let q0 = num
        .div_one_minus_u("2-connected equation")?
        .add(&CatalyticSeries::monomial(BigRational::one(), 1, 1, order, name));
    let zxu = CatalyticSeries::monomial(x.clone(), 1, 1, order, name);
    Ok(q0.mul(&zxu.add(b)))
}

/// B(z, x, u) solved order by order from the root-edge deletion equation
/// for 2-connected maps; the independent oracle for the radical form.
pub fn biconn_functional(order: usize, x: &BigRational) -> GfResult<CatalyticSeries> {
    let mut b = CatalyticSeries::zero(0, 'u');
    for k in 1..=order {
        b = biconn_eq_pass(&extended(&b, k), x)?;
    }
    if biconn_eq_pass(&b, x)? != b {
        return Err(GfError::Consistency(
            "2-connected equation not at a fixed point".into(),
        ));
    }
    for n in 0..=order {
        if b.degree_of(n) > n + 1 {
            return Err(GfError::Consistency(format!(
                "2-connected valency degree {} exceeds n+1 at z^{n}",
                b.degree_of(n)
            )));
        }
    }
    Ok(b)
}

/// d/dx of the 2-connected equation at x = 1: a linear catalytic equation
/// for C = Bx(z,1,u), solved the same way. Oracle for the kernel-method
/// closed form of the face-marked series.
pub fn biconn_functional_dx(order: usize) -> GfResult<CatalyticSeries> {
    let one = BigRational::one();
    let b = biconn_functional(order, &one)?;
    let b1 = b.at_one();
    let name = b.name();
    let zu = CatalyticSeries::monomial(BigRational::one(), 1, 1, order, name);
    // Q0 at x = 1
    let q0 = CatalyticSeries::from_series(&b1, name)
        .mul_u()
        .sub(&b)
        .div_one_minus_u("2-connected equation")?
        .add(&zu);
    let zu_plus_b = zu.add(&b);

    let mut c = CatalyticSeries::zero(0, 'u');
    let pass = |c: &CatalyticSeries| -> GfResult<CatalyticSeries> {
        let k = c.order();
        let c1 = c.at_one();
        let dq0 = CatalyticSeries::from_series(&c1, name)
            .mul_u()
            .sub(c)
            .div_one_minus_u("face-marked equation")?;
        let zu_k = CatalyticSeries::monomial(BigRational::one(), 1, 1, k, name);
        Ok(dq0
            .mul(&zu_plus_b.truncated(k))
            .add(&q0.truncated(k).mul(&zu_k.add(c))))
    };
    for k in 1..=order {
        c = pass(&extended(&c, k))?;
    }
    if pass(&c)? != c {
        return Err(GfError::Consistency(
            "face-marked equation not at a fixed point".into(),
        ));
    }
    Ok(c)
}

/// B(z,1,u) from the radical closed form, as a catalytic series: the
/// whole formula is evaluated in the ring of polynomials-in-u over
/// truncated series, including the square root.
pub fn biconn_catalytic(order: usize) -> GfResult<CatalyticSeries> {
    let name = 'u';
    let z = PowerSeries::z(order);
    let v = branch_param_at(&z)?;
    let one_s = PowerSeries::one(order);
    let two = ratio::int(2);
    let v2 = &v * &v;
    let v3 = &v2 * &v;

    let cat = |f: &PowerSeries| CatalyticSeries::from_series(f, name);
    let one = CatalyticSeries::one(order, name);

    // 1 - (1 + V^2 - 2V^3) u + z u^2
    let a1 = &(&one_s + &v2) - &v3.scale(&two);
    let poly = one
        .sub(&cat(&a1).mul_u())
        .add(&cat(&z).mul_u().mul_u());
    // 1 - 2V(1 + V - 2V^2) u + zV u^2
    let rad_lin = (&v * &(&(&one_s + &v) - &v2.scale(&two))).scale(&two);
    let radicand = one
        .sub(&cat(&rad_lin).mul_u())
        .add(&cat(&(&z * &v)).mul_u().mul_u());
    let root = radicand.sqrt()?;
    let front = one.sub(&cat(&(&one_s - &v)).mul_u());
    let b = front.mul(&root).sub(&poly).scale(&ratio::frac(1, 2));
    for n in 0..=order {
        if b.degree_of(n) > n + 1 {
            return Err(GfError::Consistency(format!(
                "radical route valency degree {} exceeds n+1 at z^{n}",
                b.degree_of(n)
            )));
        }
    }
    Ok(b)
}

/// Vertex-marked 2-connected maps B*(z,1,1,w): w tracks the degree of a
/// marked non-root vertex. Kernel-method closed form
///   B* = z w (N / D),
///   N = (u1 B(z,1,w) - w V^2)/(w - u1) + z w u1,
///   D = 1 - (u1 B(z,1,w) - w V^2)/(w - u1) - z w u1,
/// where the division by (w - u1(z)) must cancel exactly.
pub fn biconn_vertex_marked(order: usize) -> GfResult<CatalyticSeries> {
    let name = 'w';
    let (v, u1) = branch_and_kernel(order)?;
    let b_w = {
        // same object as biconn_catalytic, with the variable read as w
        let b = biconn_catalytic(order)?;
        let mut out = CatalyticSeries::zero(order, name);
        for n in 0..=order {
            for (k, c) in b.z_coeff(n).iter().enumerate() {
                if !num::Zero::is_zero(c) {
                    out = out.add(&CatalyticSeries::monomial(c.clone(), n, k, order, name));
                }
            }
        }
        out
    };
    let v2 = &v * &v;
    let num = b_w
        .mul_series(&u1)
        .sub(&CatalyticSeries::from_series(&v2, name).mul_u());
    let frac = num.div_u_minus_series(&u1, "kernel cancellation at w = u1")?;
    let zwu1 = CatalyticSeries::from_series(&(&PowerSeries::z(order) * &u1), name).mul_u();
    let n_cat = frac.add(&zwu1);
    let d_cat = CatalyticSeries::one(order, name).sub(&frac).sub(&zwu1);
    let zw = CatalyticSeries::monomial(BigRational::one(), 1, 1, order, name);
    let b_bullet = zw.mul(&n_cat).mul(&d_cat.recip()?);
    Ok(b_bullet)
}

/// Maps by number of non-root blocks: M(z,w) = 1 + A(z (1 + w(M-1))^2)
/// with A(t) = B(t,1,1) + 2t the block series (bridges and loops count as
/// blocks). Solved by the same growing-truncation fixed point.
pub fn blocks_catalytic(order: usize) -> GfResult<CatalyticSeries> {
    let name = 'w';
    let a = {
        let b = biconn_series(order)?;
        &b + &PowerSeries::monomial(ratio::int(2), 1, order)
    };
    let pass = |m: &CatalyticSeries| -> GfResult<CatalyticSeries> {
        let k = m.order();
        let one = CatalyticSeries::one(k, name);
        let w_shift = m.sub(&one).mul_u(); // w (M - 1)
        let z_cat = CatalyticSeries::monomial(BigRational::one(), 1, 0, k, name);
        let base = one.add(&w_shift);
        let g = z_cat.mul(&base.mul(&base));
        Ok(CatalyticSeries::one(k, name)
            .add(&CatalyticSeries::compose_outer(&a.truncated(k), &g)?))
    };
    let mut m = CatalyticSeries::one(0, name);
    for k in 1..=order {
        m = pass(&extended(&m, k))?;
    }
    if pass(&m)? != m {
        return Err(GfError::Consistency(
            "block-marking equation not at a fixed point".into(),
        ));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    #[test]
    fn catalytic_map_series_low_orders() {
        let m = map_series_catalytic(6).unwrap();
        // z^0: the vertex map
        assert_eq!(m.z_coeff(0), &[int(1)][..]);
        // z^1: u + u^2 (loop and edge by root-face valency)
        assert_eq!(m.z_coeff(1), &[int(0), int(1), int(1)][..]);
        // at u = 1 the counting series returns
        let at_one = m.at_one();
        for (n, &e) in [1i64, 2, 9, 54, 378, 2916, 24057].iter().enumerate() {
            assert_eq!(at_one.coeff(n), &int(e));
        }
    }

    #[test]
    fn functional_matches_radical_route() {
        let order = 24;
        let oracle = biconn_functional(order, &BigRational::one()).unwrap();
        let radical = biconn_catalytic(order).unwrap();
        assert_eq!(oracle, radical);
    }

    #[test]
    fn functional_dx_low_orders() {
        // the x-derivative at x=1 counts 2-connected maps weighted by
        // non-root faces; the double edge (1 non-root face) gives z^2 u^2
        let c = biconn_functional_dx(5).unwrap();
        assert_eq!(c.z_coeff(0), &[][..]);
        assert_eq!(c.z_coeff(1), &[][..]);
        assert_eq!(c.z_coeff(2), &[int(0), int(0), int(1)][..]);
    }

    #[test]
    fn finite_difference_brackets_dx() {
        // central difference (B(x=1+h) - B(x=1-h)) / 2h at h = 1/1000 and
        // h/2: the defect against the exact derivative shrinks by ~4
        let order = 12;
        let exact = biconn_functional_dx(order).unwrap().at_one();
        let fd = |h: &BigRational| {
            let plus = biconn_functional(order, &(BigRational::one() + h)).unwrap().at_one();
            let minus = biconn_functional(order, &(BigRational::one() - h)).unwrap().at_one();
            (&plus - &minus).scale(&(ratio::int(1) / (h + h)))
        };
        let h1 = ratio::frac(1, 1000);
        let h2 = ratio::frac(1, 2000);
        let d1 = &fd(&h1) - &exact;
        let d2 = &fd(&h2) - &exact;
        for n in 0..=order {
            if num::Zero::is_zero(d1.coeff(n)) {
                assert!(num::Zero::is_zero(d2.coeff(n)));
                continue;
            }
            let ratio = crate::ratio::to_f64(&(d1.coeff(n) / d2.coeff(n)));
            assert!(
                (ratio - 4.0).abs() < 0.2,
                "coefficient {n}: second-order convergence, got factor {ratio}"
            );
        }
    }

    #[test]
    fn blocks_low_orders() {
        let m = blocks_catalytic(3).unwrap();
        // one-edge maps: one block, which is the root block: 2 z w^0
        assert_eq!(m.z_coeff(1), &[int(2)][..]);
        // at w=1 the counting series returns
        let at_one = m.at_one();
        assert_eq!(at_one.coeff(2), &int(9));
        assert_eq!(at_one.coeff(3), &int(54));
    }
}
