//! Truncated dense power series over exact rationals.
//!
//! A `PowerSeries` holds coefficients for z^0 .. z^N (N = truncation order)
//! as `BigRational`s. All arithmetic is exact; there is no floating point
//! anywhere in this module except the explicit `eval_f64` convenience.
//!
//! Invariants:
//! - `coeffs.len() == order + 1` (never empty)
//! - every coefficient is an exact rational
//!
//! Binary operators (`+`, `-`, `*`) require equal truncation orders and
//! panic otherwise; the fallible entry points (`try_mul`, `div`, `sqrt`,
//! `compose`, `revert`, `solve_implicit`) report structured errors.
//! Divisions by a series of valuation v lose the top v orders of the
//! quotient, so pipelines that divide should carry slack orders.

pub mod catalytic;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ratio;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("singular division: divisor valuation {divisor_val:?}, dividend valuation {dividend_val:?}")]
    SingularDivision {
        dividend_val: Option<usize>,
        divisor_val: Option<usize>,
    },
    #[error("square root branch error: constant term is not a perfect rational square")]
    NonSquareConstant,
    #[error("composition error: inner series has nonzero constant term")]
    InnerConstantNonzero,
    #[error("no compositional inverse: linear coefficient is zero")]
    NonInvertible,
    #[error("implicit solve stalled: residual valuation stuck at {stuck_at} (target {target})")]
    NewtonStalled { stuck_at: usize, target: usize },
    #[error("exact cancellation failed in {context}")]
    InexactCancellation { context: String },
}

pub type SeriesResult<T> = Result<T, SeriesError>;

/// Dense truncated power series with exact rational coefficients.
#[derive(Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.coeffs.iter().take(8).map(|c| c.to_string()).collect();
        write!(f, "PowerSeries[N={}]({}..)", self.order(), shown.join(", "))
    }
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series z (truncated at `order`).
    pub fn z(order: usize) -> Self {
        Self::monomial(BigRational::one(), 1, order)
    }

    /// c * z^k.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| ratio::int(c)).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        PowerSeries::new((0..=order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Copy truncated to a (weakly) smaller order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot extend a truncated series ({} -> {})",
            self.order(),
            order
        );
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add_constant(&self, c: &BigRational) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_orders(&self, other: &Self) -> SeriesResult<()> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Cauchy product truncated at the common order.
    ///
    /// When both factors have small common denominators (the typical case:
    /// counting series are integral) the convolution runs on scaled
    /// integers with a single rational reduction per output coefficient,
    /// avoiding per-term gcd work.
    pub fn try_mul(&self, other: &Self) -> SeriesResult<Self> {
        self.check_orders(other)?;
        let n = self.order();
        if let (Some(da), Some(db)) = (small_common_denom(&self.coeffs), small_common_denom(&other.coeffs)) {
            let ia = scaled_ints(&self.coeffs, &da);
            let ib = scaled_ints(&other.coeffs, &db);
            let mut out = vec![BigInt::zero(); n + 1];
            for (i, a) in ia.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in ib.iter().take(n + 1 - i).enumerate() {
                    if !b.is_zero() {
                        out[i + j] += a * b;
                    }
                }
            }
            let d = da * db;
            return Ok(PowerSeries {
                coeffs: out.into_iter().map(|c| BigRational::new(c, d.clone())).collect(),
            });
        }
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Quotient q with q*b = a to the available order.
    ///
    /// If the divisor has valuation v > 0, the dividend must have valuation
    /// >= v and the quotient comes back with order reduced by v.
    pub fn div(&self, b: &Self) -> SeriesResult<Self> {
        self.check_orders(b)?;
        let bv = match b.valuation() {
            Some(v) => v,
            None => {
                return Err(SeriesError::SingularDivision {
                    dividend_val: self.valuation(),
                    divisor_val: None,
                })
            }
        };
        if bv > 0 {
            match self.valuation() {
                Some(av) if av < bv => {
                    return Err(SeriesError::SingularDivision {
                        dividend_val: Some(av),
                        divisor_val: Some(bv),
                    })
                }
                _ => {}
            }
        }
        let n = self.order() - bv;
        let a = &self.coeffs[bv..];
        let b = &b.coeffs[bv..];
        // integer fast path: unit leading divisor coefficient keeps the
        // whole back-substitution in integers
        if let (Some(da), Some(db)) = (small_common_denom(a), small_common_denom(b)) {
            let ia = scaled_ints(a, &da);
            let ib = scaled_ints(b, &db);
            if ib[0].magnitude() == &num::BigUint::from(1u32) {
                let negate = ib[0] < BigInt::zero();
                let mut q = vec![BigInt::zero(); n + 1];
                for k in 0..=n {
                    let mut acc = &ia[k] * &db;
                    for j in 0..k {
                        if !q[j].is_zero() && !ib[k - j].is_zero() {
                            acc -= &q[j] * &ib[k - j];
                        }
                    }
                    q[k] = if negate { -acc } else { acc };
                }
                return Ok(PowerSeries {
                    coeffs: q
                        .into_iter()
                        .map(|c| BigRational::new(c, da.clone()))
                        .collect(),
                });
            }
        }
        let mut q = vec![BigRational::zero(); n + 1];
        for k in 0..=n {
            let mut acc = a[k].clone();
            for j in 0..k {
                if !q[j].is_zero() && !b[k - j].is_zero() {
                    acc -= &q[j] * &b[k - j];
                }
            }
            q[k] = acc / &b[0];
        }
        Ok(PowerSeries { coeffs: q })
    }

    /// Multiplicative inverse (constant term must be nonzero).
    pub fn recip(&self) -> SeriesResult<Self> {
        Self::one(self.order()).div(self)
    }

    /// Square root with positive constant term.
    pub fn sqrt(&self) -> SeriesResult<Self> {
        let s0 = ratio::sqrt_exact(&self.coeffs[0]).ok_or(SeriesError::NonSquareConstant)?;
        if s0.is_zero() {
            // even-valuation square roots are not needed anywhere here
            return Err(SeriesError::NonSquareConstant);
        }
        let n = self.order();
        let two_s0 = &s0 + &s0;
        let mut s = vec![BigRational::zero(); n + 1];
        s[0] = s0;
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                if !s[j].is_zero() && !s[k - j].is_zero() {
                    acc -= &s[j] * &s[k - j];
                }
            }
            s[k] = acc / &two_s0;
        }
        Ok(PowerSeries { coeffs: s })
    }

    /// Taylor composition self(inner); inner must have zero constant term.
    pub fn compose(&self, inner: &Self) -> SeriesResult<Self> {
        self.check_orders(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantNonzero);
        }
        let n = self.order();
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.try_mul(inner)?;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse g with self(g(z)) = z.
    pub fn revert(&self) -> SeriesResult<Self> {
        let n = self.order();
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::InnerConstantNonzero);
        }
        if n == 0 || self.coeffs[1].is_zero() {
            return Err(SeriesError::NonInvertible);
        }
        let deriv = self.derivative_padded();
        let z = Self::z(n);
        // Newton: g <- g - (f(g) - z)/f'(g); correct order doubles per step.
        let mut g = Self::monomial(self.coeffs[1].recip(), 1, n);
        let mut correct = 1usize;
        loop {
            let res = self.compose(&g)? - z.clone();
            match res.valuation() {
                None => return Ok(g),
                Some(v) if v > n => return Ok(g),
                Some(v) => {
                    if v <= correct {
                        return Err(SeriesError::NewtonStalled {
                            stuck_at: v,
                            target: n + 1,
                        });
                    }
                    correct = v;
                }
            }
            let slope = deriv.compose(&g)?;
            let step = res.div(&slope)?;
            g = g - step;
        }
    }

    /// Formal derivative, same truncation order (top coefficient unknown -> order drops by one,
    /// then we keep the convention of returning order-1).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        PowerSeries::new(
            (1..=n)
                .map(|k| &self.coeffs[k] * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Derivative padded back to the original order with a zero top
    /// coefficient; callers must not rely on that top coefficient.
    fn derivative_padded(&self) -> Self {
        let mut d = self.derivative();
        d.coeffs.push(BigRational::zero());
        if d.coeffs.len() < self.coeffs.len() {
            d.coeffs.resize(self.coeffs.len(), BigRational::zero());
        }
        d
    }

    /// Exact partial sum at a rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating partial sum. Only safe when coefficients fit in f64.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + ratio::to_f64(c);
        }
        acc
    }

    pub fn coeff_f64(&self, k: usize) -> f64 {
        ratio::to_f64(&self.coeffs[k])
    }
}

impl Add for PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: PowerSeries) -> PowerSeries {
        &self + &rhs
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.check_orders(rhs).expect("series order mismatch in +");
        PowerSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: PowerSeries) -> PowerSeries {
        &self - &rhs
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.check_orders(rhs).expect("series order mismatch in -");
        PowerSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.try_mul(rhs).expect("series order mismatch in *")
    }
}

impl Mul for PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: PowerSeries) -> PowerSeries {
        &self * &rhs
    }
}

/// Least common denominator of a coefficient slice, if it stays small
/// enough (512 bits) that scaling to integers is a win.
fn small_common_denom(coeffs: &[BigRational]) -> Option<BigInt> {
    let mut l = BigInt::one();
    for c in coeffs {
        let d = c.denom();
        if !d.is_one() {
            l = num::integer::lcm(l, d.clone());
            if l.bits() > 512 {
                return None;
            }
        }
    }
    Some(l)
}

fn scaled_ints(coeffs: &[BigRational], denom: &BigInt) -> Vec<BigInt> {
    coeffs
        .iter()
        .map(|c| c.numer() * (denom / c.denom()))
        .collect()
}

/// Solve F(x) = 0 for a series x by Newton iteration.
///
/// `residual` maps a candidate to F(candidate), `residual_dx` to the formal
/// derivative dF/dx evaluated at the candidate. The seed must be correct at
/// order 0 and the residual derivative must have a unit constant term; the
/// residual valuation then at least doubles per step, which is checked.
pub fn solve_implicit(
    order: usize,
    seed: &PowerSeries,
    residual: impl Fn(&PowerSeries) -> SeriesResult<PowerSeries>,
    residual_dx: impl Fn(&PowerSeries) -> SeriesResult<PowerSeries>,
) -> SeriesResult<PowerSeries> {
    let mut x = if seed.order() == order {
        seed.clone()
    } else {
        let mut c = seed.coeffs.clone();
        c.resize(order + 1, BigRational::zero());
        PowerSeries::new(c)
    };
    let mut best = 0usize;
    loop {
        let r = residual(&x)?;
        let val = match r.valuation() {
            None => return Ok(x),
            Some(v) if v > order => return Ok(x),
            Some(v) => v,
        };
        if val <= best {
            return Err(SeriesError::NewtonStalled {
                stuck_at: val,
                target: order + 1,
            });
        }
        best = val;
        let slope = residual_dx(&x)?;
        let step = r.truncated(x.order()).div(&slope.truncated(x.order()))?;
        // division by a unit keeps the full order; anything else is a bug
        debug_assert_eq!(step.order(), x.order());
        x = &x - &step;
    }
}

/// Serialization scheme for golden-file tests: order + "p/q" strings.
#[derive(Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl PowerSeries {
    pub fn to_json(&self) -> String {
        let doc = SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("series serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let doc: SeriesJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if doc.coeffs.len() != doc.order + 1 {
            return Err(format!(
                "coefficient count {} does not match order {}",
                doc.coeffs.len(),
                doc.order
            ));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PowerSeries::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{binomial, frac, int};

    fn catalan(n: u64) -> BigRational {
        BigRational::new(binomial(2 * n, n), BigInt::from(n + 1))
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = PowerSeries::from_ints(&[1, 1, 0]);
        let b = PowerSeries::from_ints(&[1, -1, 0]);
        assert_eq!(&a * &b, PowerSeries::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn mul_identity() {
        let a = PowerSeries::from_ints(&[3, -5, 7, 11]);
        let one = PowerSeries::one(3);
        assert_eq!(&a * &one, a);
    }

    #[test]
    fn mul_order_mismatch_is_an_error() {
        let a = PowerSeries::zero(3);
        let b = PowerSeries::zero(4);
        assert!(matches!(
            a.try_mul(&b),
            Err(SeriesError::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn catalan_square_matches_recurrence() {
        // C(z) = 1 + z C(z)^2 with C_n the Catalan numbers
        let n = 20;
        let c = PowerSeries::from_fn(n, |k| catalan(k as u64));
        let c2 = &c * &c;
        let shifted = PowerSeries::from_fn(n, |k| {
            if k == 0 {
                int(1)
            } else {
                c2.coeff(k - 1).clone()
            }
        });
        assert_eq!(shifted, c);
    }

    #[test]
    fn div_geometric_factor() {
        let a = PowerSeries::from_ints(&[1, 0, -1]);
        let b = PowerSeries::from_ints(&[1, -1, 0]);
        assert_eq!(a.div(&b).unwrap(), PowerSeries::from_ints(&[1, 1, 0]));
    }

    #[test]
    fn div_geometric_series() {
        let one = PowerSeries::one(50);
        let b = PowerSeries::from_fn(50, |k| if k == 0 { int(1) } else if k == 1 { int(-1) } else { int(0) });
        let g = one.div(&b).unwrap();
        assert!(g.coeffs().iter().all(|c| c == &int(1)));
    }

    #[test]
    fn div_cancels_valuation() {
        // (z - 2 z^2 + 5 z^3)/z drops the order by one
        let a = PowerSeries::from_ints(&[0, 1, -2, 5]);
        let z = PowerSeries::z(3);
        let q = a.div(&z).unwrap();
        assert_eq!(q, PowerSeries::from_ints(&[1, -2, 5]));
    }

    #[test]
    fn div_uncancelled_valuation_is_singular() {
        let a = PowerSeries::from_ints(&[1, 1]);
        let z = PowerSeries::z(1);
        assert!(matches!(
            a.div(&z),
            Err(SeriesError::SingularDivision { .. })
        ));
    }

    #[test]
    fn div_roundtrip_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let a = PowerSeries::from_fn(12, |_| frac(rng.random_range(-9..10), rng.random_range(1..5)));
            let mut b = PowerSeries::from_fn(12, |_| frac(rng.random_range(-9..10), rng.random_range(1..5)));
            if b.coeff(0).is_zero() {
                b = b.add_constant(&int(1));
            }
            let q = (&a * &b).div(&b).unwrap();
            assert_eq!(q, a);
        }
    }

    #[test]
    fn sqrt_of_one_minus_12z() {
        let a = PowerSeries::from_ints(&[1, -12, 0, 0, 0, 0]);
        let s = a.sqrt().unwrap();
        assert_eq!(s.coeff(1), &int(-6));
        assert_eq!(s.coeff(2), &int(-18));
        assert_eq!(&s * &s, a);
    }

    #[test]
    fn sqrt_trivial_and_branch() {
        assert_eq!(PowerSeries::one(4).sqrt().unwrap(), PowerSeries::one(4));
        let sq = PowerSeries::from_ints(&[1, 2, 1]);
        assert_eq!(sq.sqrt().unwrap(), PowerSeries::from_ints(&[1, 1, 0]));
        let bad = PowerSeries::from_ints(&[2, 1]);
        assert!(matches!(bad.sqrt(), Err(SeriesError::NonSquareConstant)));
    }

    #[test]
    fn compose_basics() {
        let outer = PowerSeries::from_ints(&[0, 0, 1, 0, 0]);
        let inner = PowerSeries::from_ints(&[0, 1, 1, 0, 0]);
        let got = outer.compose(&inner).unwrap();
        assert_eq!(got, PowerSeries::from_ints(&[0, 0, 1, 2, 1]));

        let any = PowerSeries::from_ints(&[4, -2, 3, 1, 9]);
        assert_eq!(any.compose(&PowerSeries::z(4)).unwrap(), any);

        let bad = PowerSeries::one(4);
        assert!(matches!(
            any.compose(&bad),
            Err(SeriesError::InnerConstantNonzero)
        ));
    }

    #[test]
    fn compose_geometric_oracle() {
        // 1/(1-(z+z^2)) computed two ways, order 15
        let n = 15;
        let inner = PowerSeries::from_fn(n, |k| if k == 1 || k == 2 { int(1) } else { int(0) });
        let geom = PowerSeries::one(n)
            .div(&(PowerSeries::one(n) - inner.clone()))
            .unwrap();
        let outer = PowerSeries::from_fn(n, |_| int(1));
        assert_eq!(outer.compose(&inner).unwrap(), geom);
    }

    #[test]
    fn revert_catalan() {
        let n = 10;
        let f = PowerSeries::from_fn(n, |k| match k {
            1 => int(1),
            2 => int(-1),
            _ => int(0),
        });
        let g = f.revert().unwrap();
        for k in 1..=n {
            assert_eq!(g.coeff(k), &catalan(k as u64 - 1), "coefficient {k}");
        }
        assert_eq!(f.compose(&g).unwrap(), PowerSeries::z(n));
    }

    #[test]
    fn revert_identity_and_moebius() {
        let n = 12;
        assert_eq!(PowerSeries::z(n).revert().unwrap(), PowerSeries::z(n));
        // z/(1-z) reverts to z/(1+z)
        let f = PowerSeries::from_fn(n, |k| if k >= 1 { int(1) } else { int(0) });
        let g = f.revert().unwrap();
        let expect = PowerSeries::from_fn(n, |k| {
            if k == 0 {
                int(0)
            } else if k % 2 == 1 {
                int(1)
            } else {
                int(-1)
            }
        });
        assert_eq!(g, expect);
    }

    #[test]
    fn revert_rejects_zero_linear_term() {
        let f = PowerSeries::from_ints(&[0, 0, 1]);
        assert!(matches!(f.revert(), Err(SeriesError::NonInvertible)));
    }

    #[test]
    fn newton_ternary_trees() {
        // u = 1 + z u^3 has coefficients binom(3n,n)/(2n+1)
        let n = 12;
        let u = solve_implicit(
            n,
            &PowerSeries::one(n),
            |x| {
                let x3 = &(x * x) * x;
                Ok(&(x - &PowerSeries::one(n)) - &(&PowerSeries::z(n) * &x3))
            },
            |x| {
                let x2 = x * x;
                Ok(PowerSeries::one(n) - (&PowerSeries::z(n) * &x2).scale(&int(3)))
            },
        )
        .unwrap();
        for k in 0..=n {
            let expect = BigRational::new(binomial(3 * k as u64, k as u64), BigInt::from(2 * k + 1));
            assert_eq!(u.coeff(k), &expect, "coefficient {k}");
        }
    }

    #[test]
    fn newton_branch_parameter() {
        // z = V(1-V)^2: [z^n]V = binom(3n-2, n-1)/n
        let n = 10;
        let v = solve_implicit(
            n,
            &PowerSeries::zero(n),
            |x| {
                let omx = PowerSeries::one(n) - x.clone();
                Ok(&(x * &(&omx * &omx)) - &PowerSeries::z(n))
            },
            |x| {
                let omx = PowerSeries::one(n) - x.clone();
                let om3x = PowerSeries::one(n) - x.scale(&int(3));
                Ok(&omx * &om3x)
            },
        )
        .unwrap();
        assert_eq!(v.coeff(1), &int(1));
        assert_eq!(v.coeff(2), &int(2));
        assert_eq!(v.coeff(3), &int(7));
        assert_eq!(v.coeff(4), &int(30));
        for k in 1..=n {
            let expect =
                BigRational::new(binomial(3 * k as u64 - 2, k as u64 - 1), BigInt::from(k));
            assert_eq!(v.coeff(k), &expect, "coefficient {k}");
        }
    }

    #[test]
    fn newton_trivial_residual() {
        let n = 6;
        let x = solve_implicit(
            n,
            &PowerSeries::zero(n),
            |x| Ok(x - &PowerSeries::z(n)),
            |_| Ok(PowerSeries::one(n)),
        )
        .unwrap();
        assert_eq!(x, PowerSeries::z(n));
    }

    #[test]
    fn newton_stall_detected() {
        // residual independent of x never improves
        let n = 6;
        let err = solve_implicit(
            n,
            &PowerSeries::zero(n),
            |_| Ok(PowerSeries::z(n)),
            |_| Ok(PowerSeries::one(n)),
        );
        assert!(matches!(err, Err(SeriesError::NewtonStalled { .. })));
    }

    #[test]
    fn eval_partial_sums() {
        let f = PowerSeries::from_ints(&[1, 2, 9, 54]);
        assert_eq!(f.eval_exact(&int(0)), int(1));

        let geo = PowerSeries::from_fn(50, |_| int(1));
        let expect = int(2) - frac(1, 2).pow(50);
        assert_eq!(geo.eval_exact(&frac(1, 2)), expect);
    }

    #[test]
    fn revert_compose_roundtrip_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            let f = PowerSeries::from_fn(10, |k| {
                if k == 0 {
                    int(0)
                } else if k == 1 {
                    int([1, -1, 2][rng.random_range(0..3)])
                } else {
                    int(rng.random_range(-3..4))
                }
            });
            let g = f.revert().unwrap();
            assert_eq!(f.compose(&g).unwrap(), PowerSeries::z(10));
            assert_eq!(g.compose(&f).unwrap(), PowerSeries::z(10));
        }
    }

    #[test]
    fn json_roundtrip() {
        let f = PowerSeries::new(vec![frac(1, 3), int(-4), frac(22, 7)]);
        let back = PowerSeries::from_json(&f.to_json()).unwrap();
        assert_eq!(f, back);
    }
}
