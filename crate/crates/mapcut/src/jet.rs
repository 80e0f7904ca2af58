//! Second-order Taylor jets over exact rationals.
//!
//! A `Jet2` carries (f, f', f'') at a fixed expansion point and propagates
//! them through arithmetic. Square roots are supported only when the value
//! itself is a perfect rational square, which is exactly the situation in
//! which we want exact derivative data (e.g. sqrt(2+2y) at y=1).

use num::rational::BigRational;
use num::{One, Zero};

use crate::ratio;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub v: BigRational,
    pub d1: BigRational,
    pub d2: BigRational,
}

impl Jet2 {
    pub fn constant(v: BigRational) -> Self {
        Jet2 {
            v,
            d1: BigRational::zero(),
            d2: BigRational::zero(),
        }
    }

    /// The identity function evaluated at `at`.
    pub fn variable(at: BigRational) -> Self {
        Jet2 {
            v: at,
            d1: BigRational::one(),
            d2: BigRational::zero(),
        }
    }

    pub fn add(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: &self.v + &o.v,
            d1: &self.d1 + &o.d1,
            d2: &self.d2 + &o.d2,
        }
    }

    pub fn sub(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: &self.v - &o.v,
            d1: &self.d1 - &o.d1,
            d2: &self.d2 - &o.d2,
        }
    }

    pub fn mul(&self, o: &Jet2) -> Jet2 {
        Jet2 {
            v: &self.v * &o.v,
            d1: &self.v * &o.d1 + &self.d1 * &o.v,
            d2: &self.v * &o.d2 + ratio::int(2) * &self.d1 * &o.d1 + &self.d2 * &o.v,
        }
    }

    /// Reciprocal; panics on zero value.
    pub fn recip(&self) -> Jet2 {
        assert!(!self.v.is_zero(), "jet reciprocal of zero");
        let v2 = &self.v * &self.v;
        let v3 = &v2 * &self.v;
        Jet2 {
            v: v2.recip() * &self.v, // 1/v
            d1: -&self.d1 / &v2,
            d2: (ratio::int(2) * &self.d1 * &self.d1 - &self.v * &self.d2) / v3,
        }
    }

    pub fn div(&self, o: &Jet2) -> Jet2 {
        self.mul(&o.recip())
    }

    /// Square root; `None` unless the value is a perfect rational square.
    pub fn sqrt(&self) -> Option<Jet2> {
        let s = ratio::sqrt_exact(&self.v)?;
        if s.is_zero() {
            return None;
        }
        let d1 = &self.d1 / (ratio::int(2) * &s);
        let d2 = (&self.d2 / ratio::int(2) - &d1 * &d1) / &s;
        Some(Jet2 { v: s, d1, d2 })
    }

    pub fn scale(&self, c: &BigRational) -> Jet2 {
        Jet2 {
            v: c * &self.v,
            d1: c * &self.d1,
            d2: c * &self.d2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};

    #[test]
    fn jet_of_rational_function() {
        // f(y) = 1/(y^2 + 3) at y = 1: f = 1/4, f' = -2/16, f'' = (8*2-... )
        let y = Jet2::variable(int(1));
        let f = y.mul(&y).add(&Jet2::constant(int(3))).recip();
        assert_eq!(f.v, frac(1, 4));
        assert_eq!(f.d1, frac(-1, 8));
        // f'' = (6y^2 - 6)/(y^2+3)^3 evaluated at 1 is 0
        assert_eq!(f.d2, int(0));
    }

    #[test]
    fn jet_sqrt_perfect_square() {
        // g(y) = sqrt(2 + 2y) at y = 1: g = 2, g' = 1/2, g'' = -1/8
        let y = Jet2::variable(int(1));
        let g = y.scale(&int(2)).add(&Jet2::constant(int(2))).sqrt().unwrap();
        assert_eq!(g.v, int(2));
        assert_eq!(g.d1, frac(1, 2));
        assert_eq!(g.d2, frac(-1, 8));
    }
}
