//! Series in z whose z^n coefficient is a polynomial in a catalytic variable.
//!
//! This is the ring Q[[z]][u] truncated in z: enough structure to run the
//! quadratic-method and kernel-method equations order by order while keeping
//! every division exact. Polynomial degrees stay finite per z-order and are
//! tracked so degree bounds can be asserted.

use num::rational::BigRational;
use num::{One, Zero};

use super::{PowerSeries, SeriesError, SeriesResult};
use crate::ratio;

type UPoly = Vec<BigRational>;

fn poly_trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add_into(acc: &mut UPoly, p: &UPoly) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
    poly_trim(acc);
}

fn poly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_eval(p: &UPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Truncated series in z with polynomial coefficients in one catalytic variable.
#[derive(Clone, PartialEq, Debug)]
pub struct CatalyticSeries {
    coeffs: Vec<UPoly>,
    name: char,
}

impl CatalyticSeries {
    pub fn zero(order: usize, name: char) -> Self {
        CatalyticSeries {
            coeffs: vec![Vec::new(); order + 1],
            name,
        }
    }

    pub fn one(order: usize, name: char) -> Self {
        let mut s = Self::zero(order, name);
        s.coeffs[0] = vec![BigRational::one()];
        s
    }

    /// c * z^zk * u^uk.
    pub fn monomial(c: BigRational, zk: usize, uk: usize, order: usize, name: char) -> Self {
        let mut s = Self::zero(order, name);
        if zk <= order && !c.is_zero() {
            let mut p = vec![BigRational::zero(); uk + 1];
            p[uk] = c;
            s.coeffs[zk] = p;
        }
        s
    }

    /// Embed a plain power series (no catalytic content).
    pub fn from_series(f: &PowerSeries, name: char) -> Self {
        let mut s = Self::zero(f.order(), name);
        for (n, c) in f.coeffs().iter().enumerate() {
            if !c.is_zero() {
                s.coeffs[n] = vec![c.clone()];
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn name(&self) -> char {
        self.name
    }

    /// Polynomial coefficient of z^n (dense in the catalytic variable).
    pub fn z_coeff(&self, n: usize) -> &[BigRational] {
        &self.coeffs[n]
    }

    pub fn coeff(&self, n: usize, k: usize) -> BigRational {
        self.coeffs[n].get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree_of(&self, n: usize) -> usize {
        self.coeffs[n].len().saturating_sub(1)
    }

    pub fn max_degree(&self) -> usize {
        (0..=self.order()).map(|n| self.degree_of(n)).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_empty())
    }

    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order());
        CatalyticSeries {
            coeffs: self.coeffs[..=order].to_vec(),
            name: self.name,
        }
    }

    fn check_compat(&self, o: &Self) {
        assert_eq!(self.name, o.name, "catalytic variable mismatch");
        assert_eq!(self.order(), o.order(), "catalytic order mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compat(o);
        let mut out = self.clone();
        for (acc, p) in out.coeffs.iter_mut().zip(&o.coeffs) {
            poly_add_into(acc, p);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CatalyticSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.iter().map(|c| -c.clone()).collect())
                .collect(),
            name: self.name,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_compat(o);
        let n = self.order();
        let mut out = Self::zero(n, self.name);
        for i in 0..=n {
            if self.coeffs[i].is_empty() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_empty() {
                    continue;
                }
                let prod = poly_mul(&self.coeffs[i], &o.coeffs[j]);
                poly_add_into(&mut out.coeffs[i + j], &prod);
            }
        }
        out
    }

    pub fn mul_series(&self, f: &PowerSeries) -> Self {
        self.mul(&Self::from_series(f, self.name))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CatalyticSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| {
                    let mut q: UPoly = p.iter().map(|x| x * c).collect();
                    poly_trim(&mut q);
                    q
                })
                .collect(),
            name: self.name,
        }
    }

    /// Multiply by the catalytic variable.
    pub fn mul_u(&self) -> Self {
        CatalyticSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| {
                    if p.is_empty() {
                        Vec::new()
                    } else {
                        let mut q = vec![BigRational::zero()];
                        q.extend(p.iter().cloned());
                        q
                    }
                })
                .collect(),
            name: self.name,
        }
    }

    /// Specialize the catalytic variable to 1.
    pub fn at_one(&self) -> PowerSeries {
        self.eval_u_const(&BigRational::one())
    }

    /// Specialize the catalytic variable to a rational constant.
    pub fn eval_u_const(&self, x: &BigRational) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|p| poly_eval(p, x)).collect())
    }

    /// Substitute a power series for the catalytic variable: sum_n z^n P_n(s(z)).
    pub fn eval_u_series(&self, s: &PowerSeries) -> PowerSeries {
        assert_eq!(s.order(), self.order(), "substitution order mismatch");
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (shift, p) in self.coeffs.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            // Horner at reduced order: only z^0..z^(n-shift) of P(s) survive
            let avail = n - shift;
            let st = s.truncated(avail);
            let mut acc = PowerSeries::constant(p[p.len() - 1].clone(), avail);
            for c in p.iter().rev().skip(1) {
                acc = (&acc * &st).add_constant(c);
            }
            for (k, v) in acc.coeffs().iter().enumerate() {
                out[shift + k] += v;
            }
        }
        PowerSeries::new(out)
    }

    /// Exact division by (1 - u); errors unless every z-coefficient
    /// vanishes at u = 1.
    pub fn div_one_minus_u(&self, context: &str) -> SeriesResult<Self> {
        let mut out = Self::zero(self.order(), self.name);
        for (n, p) in self.coeffs.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            // (1-u) q = p  =>  q_k = p_k + q_{k-1}
            let mut q = vec![BigRational::zero(); p.len().saturating_sub(1)];
            let mut carry = BigRational::zero();
            for k in 0..p.len() {
                let v = &p[k] + &carry;
                if k + 1 == p.len() {
                    if !v.is_zero() {
                        return Err(SeriesError::InexactCancellation {
                            context: format!("{context}: z^{n} remainder at u=1 is {v}"),
                        });
                    }
                } else {
                    q[k] = v.clone();
                    carry = v;
                }
            }
            poly_trim(&mut q);
            out.coeffs[n] = q;
        }
        Ok(out)
    }

    /// Exact division by (u - 1).
    pub fn div_u_minus_one(&self, context: &str) -> SeriesResult<Self> {
        Ok(self.div_one_minus_u(context)?.neg())
    }

    /// Exact division by (u - c(z)) where c has a unit z-constant term.
    ///
    /// Works on the transposed representation (polynomial in u with series
    /// coefficients); the remainder, which is the numerator evaluated at
    /// u = c(z), must vanish to the truncation order.
    pub fn div_u_minus_series(&self, c: &PowerSeries, context: &str) -> SeriesResult<Self> {
        assert_eq!(c.order(), self.order());
        let n = self.order();
        let deg = self.max_degree();
        if deg == 0 {
            if self.is_zero() {
                return Ok(self.clone());
            }
            return Err(SeriesError::InexactCancellation {
                context: format!("{context}: constant polynomial not divisible"),
            });
        }
        // transpose: column k = series coefficient of u^k
        let col = |k: usize| -> PowerSeries {
            PowerSeries::from_fn(n, |zn| self.coeff(zn, k))
        };
        let mut quotient_cols: Vec<PowerSeries> = vec![PowerSeries::zero(n); deg];
        let mut acc = col(deg);
        for k in (0..deg).rev() {
            quotient_cols[k] = acc.clone();
            acc = &(&acc * c) + &col(k);
        }
        if !acc.is_zero() {
            return Err(SeriesError::InexactCancellation {
                context: format!("{context}: remainder has valuation {:?}", acc.valuation()),
            });
        }
        let mut out = Self::zero(n, self.name);
        for zn in 0..=n {
            let mut p: UPoly = quotient_cols.iter().map(|q| q.coeff(zn).clone()).collect();
            poly_trim(&mut p);
            out.coeffs[zn] = p;
        }
        Ok(out)
    }

    /// Multiplicative inverse; the z^0 coefficient must be a nonzero constant.
    pub fn recip(&self) -> SeriesResult<Self> {
        let c0 = &self.coeffs[0];
        if c0.len() != 1 || c0[0].is_zero() {
            return Err(SeriesError::SingularDivision {
                dividend_val: None,
                divisor_val: if c0.is_empty() { None } else { Some(0) },
            });
        }
        let inv0 = c0[0].recip();
        let n = self.order();
        let mut out = Self::zero(n, self.name);
        out.coeffs[0] = vec![inv0.clone()];
        for m in 1..=n {
            let mut acc: UPoly = Vec::new();
            for k in 1..=m {
                if self.coeffs[k].is_empty() || out.coeffs[m - k].is_empty() {
                    continue;
                }
                let prod = poly_mul(&self.coeffs[k], &out.coeffs[m - k]);
                poly_add_into(&mut acc, &prod);
            }
            let mut p: UPoly = acc.iter().map(|c| -(c * &inv0)).collect();
            poly_trim(&mut p);
            out.coeffs[m] = p;
        }
        Ok(out)
    }

    /// Square root; requires the z^0 coefficient to be the constant 1.
    pub fn sqrt(&self) -> SeriesResult<Self> {
        let c0 = &self.coeffs[0];
        if c0.len() != 1 || !c0[0].is_one() {
            return Err(SeriesError::NonSquareConstant);
        }
        let n = self.order();
        let half = ratio::frac(1, 2);
        let mut out = Self::zero(n, self.name);
        out.coeffs[0] = vec![BigRational::one()];
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                if out.coeffs[k].is_empty() || out.coeffs[m - k].is_empty() {
                    continue;
                }
                let prod = poly_mul(&out.coeffs[k], &out.coeffs[m - k]);
                let negp: UPoly = prod.iter().map(|c| -c.clone()).collect();
                poly_add_into(&mut acc, &negp);
            }
            let mut p: UPoly = acc.iter().map(|c| c * &half).collect();
            poly_trim(&mut p);
            out.coeffs[m] = p;
        }
        Ok(out)
    }

    /// Compose a univariate series with a catalytic inner argument
    /// (inner must have zero z-constant coefficient).
    pub fn compose_outer(outer: &PowerSeries, inner: &Self) -> SeriesResult<Self> {
        if !inner.coeffs[0].is_empty() {
            return Err(SeriesError::InnerConstantNonzero);
        }
        assert_eq!(outer.order(), inner.order(), "composition order mismatch");
        let n = inner.order();
        let mut acc = Self::zero(n, inner.name);
        acc.coeffs[0] = vec![outer.coeff(n).clone()];
        poly_trim(&mut acc.coeffs[0]);
        for k in (0..n).rev() {
            acc = acc.mul(inner);
            let c = outer.coeff(k);
            if !c.is_zero() {
                let mut p0 = std::mem::take(&mut acc.coeffs[0]);
                poly_add_into(&mut p0, &vec![c.clone()]);
                acc.coeffs[0] = p0;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    fn upoly(cs: &[i64]) -> UPoly {
        let mut p: UPoly = cs.iter().map(|&c| int(c)).collect();
        poly_trim(&mut p);
        p
    }

    #[test]
    fn mul_and_at_one() {
        // (1 + zu)(1 - zu) = 1 - z^2 u^2
        let mut a = CatalyticSeries::one(3, 'u');
        a.coeffs[1] = upoly(&[0, 1]);
        let mut b = CatalyticSeries::one(3, 'u');
        b.coeffs[1] = upoly(&[0, -1]);
        let p = a.mul(&b);
        assert_eq!(p.coeff(2, 2), int(-1));
        assert_eq!(p.coeff(2, 0), int(0));
        assert_eq!(
            p.at_one(),
            PowerSeries::from_ints(&[1, 0, -1, 0])
        );
    }

    #[test]
    fn division_by_one_minus_u() {
        // (u - u^3) / (1 - u) = u + u^2
        let mut a = CatalyticSeries::zero(1, 'u');
        a.coeffs[0] = upoly(&[0, 1, 0, -1]);
        let q = a.div_one_minus_u("test").unwrap();
        assert_eq!(q.coeffs[0], upoly(&[0, 1, 1]));

        let mut bad = CatalyticSeries::zero(1, 'u');
        bad.coeffs[0] = upoly(&[0, 1, 1]);
        assert!(bad.div_one_minus_u("test").is_err());
    }

    #[test]
    fn division_by_u_minus_series() {
        // ((u - c)(u + 1)) / (u - c) = u + 1 with c = 1 + z
        let n = 4;
        let c = PowerSeries::from_ints(&[1, 1, 0, 0, 0]);
        let mut f = CatalyticSeries::zero(n, 'u');
        f.coeffs[0] = upoly(&[0, 1]); // u
        let one_plus_u = {
            let mut s = CatalyticSeries::zero(n, 'u');
            s.coeffs[0] = upoly(&[1, 1]);
            s
        };
        let u_minus_c = f.sub(&CatalyticSeries::from_series(&c, 'u'));
        let prod = u_minus_c.mul(&one_plus_u);
        let q = prod.div_u_minus_series(&c, "test").unwrap();
        assert_eq!(q, one_plus_u);

        assert!(one_plus_u.div_u_minus_series(&c, "test").is_err());
    }

    #[test]
    fn recip_and_sqrt() {
        // 1/(1 - zu) = sum z^n u^n
        let mut a = CatalyticSeries::one(5, 'u');
        a.coeffs[1] = upoly(&[0, -1]);
        let inv = a.recip().unwrap();
        for k in 0..=5 {
            assert_eq!(inv.coeff(k, k), int(1));
        }
        assert_eq!(a.mul(&inv), CatalyticSeries::one(5, 'u'));

        // sqrt((1+zu)^2) = 1 + zu
        let mut b = CatalyticSeries::one(6, 'u');
        b.coeffs[1] = upoly(&[0, 1]);
        assert_eq!(b.mul(&b).sqrt().unwrap(), b);
    }

    #[test]
    fn eval_u_series_mixes_orders() {
        // f = z*u at u = z gives z^2
        let mut f = CatalyticSeries::zero(3, 'u');
        f.coeffs[1] = upoly(&[0, 1]);
        let got = f.eval_u_series(&PowerSeries::z(3));
        assert_eq!(got, PowerSeries::from_ints(&[0, 0, 1, 0]));
    }

    #[test]
    fn compose_outer_geometric() {
        // 1/(1-t) at t = z(1+u): coefficient of z^n is (1+u)^n
        let n = 5;
        let outer = PowerSeries::from_fn(n, |_| int(1));
        let mut inner = CatalyticSeries::zero(n, 'u');
        inner.coeffs[1] = upoly(&[1, 1]);
        let got = CatalyticSeries::compose_outer(&outer, &inner).unwrap();
        for m in 0..=n {
            for k in 0..=m {
                assert_eq!(
                    got.coeff(m, k),
                    BigRational::from_integer(crate::ratio::binomial(m as u64, k as u64)),
                );
            }
        }
    }
}
