//! Quadratic surds `a + b·√2` with rational coefficients.
//!
//! `1` and `√2` are linearly independent over `ℚ`, so the representation is
//! unique and comparisons can be decided exactly by sign tests on rational
//! quantities.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigRational, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// Exact value `a + b·√2` with `a`, `b` rational.
#[derive(Clone, PartialEq, Eq)]
pub struct Surd {
    a: Rational,
    b: Rational,
}

/// Rationals serialize as `"p/q"` strings; a surd is the pair of its parts.
impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Surd", 2)?;
        st.serialize_field("rational", &super::format_rational(&self.a))?;
        st.serialize_field("sqrt2", &super::format_rational(&self.b))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rational: String,
            sqrt2: String,
        }
        let raw = Raw::deserialize(de)?;
        let a = super::parse_rational(&raw.rational).map_err(D::Error::custom)?;
        let b = super::parse_rational(&raw.sqrt2).map_err(D::Error::custom)?;
        Ok(Surd { a, b })
    }
}

impl Surd {
    pub fn new(a: Rational, b: Rational) -> Self {
        Surd { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Surd { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `√2` itself.
    pub fn sqrt2() -> Self {
        Surd { a: Rational::zero(), b: Rational::from_integer(1.into()) }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (a, b) if a >= 0 && b >= 0 => 1,
            (a, b) if a <= 0 && b <= 0 => -1,
            // Mixed signs: a + b√2 > 0 ⟺ a > -b√2 ⟺ sign decided by a² vs 2b².
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = BigRational::from_integer(2.into()) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    // a² = 2b² with a, b rational forces a = b = 0, handled above.
                    Ordering::Equal => unreachable!("√2 is irrational"),
                }
            }
        }
    }

    pub fn abs(&self) -> Surd {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse `(a - b√2) / (a² - 2b²)`.
    ///
    /// Panics on zero; `a² - 2b²` vanishes only at zero.
    pub fn inverse(&self) -> Surd {
        let norm = &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b;
        assert!(!norm.is_zero(), "inverse of zero surd");
        Surd { a: &self.a / &norm, b: -(&self.b / &norm) }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√2", self.a, self.b)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

macro_rules! surd_binop {
    ($trait:ident, $method:ident, |$lhs:ident, $rhs:ident| $body:expr) => {
        impl $trait for &Surd {
            type Output = Surd;
            fn $method(self, rhs: &Surd) -> Surd {
                let $lhs = self;
                let $rhs = rhs;
                $body
            }
        }
        impl $trait for Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                (&self).$method(&rhs)
            }
        }
    };
}

surd_binop!(Add, add, |x, y| Surd { a: &x.a + &y.a, b: &x.b + &y.b });
surd_binop!(Sub, sub, |x, y| Surd { a: &x.a - &y.a, b: &x.b - &y.b });
surd_binop!(Mul, mul, |x, y| {
    // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
    let two = BigRational::from_integer(2.into());
    Surd {
        a: &x.a * &y.a + &two * &x.b * &y.b,
        b: &x.a * &y.b + &x.b * &y.a,
    }
});
surd_binop!(Div, div, |x, y| x * &y.inverse());

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -&self.a, b: -&self.b }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn surd(an: i64, ad: i64, bn: i64, bd: i64) -> Surd {
        Surd::new(ratio(an, ad), ratio(bn, bd))
    }

    #[test]
    fn sign_and_order() {
        // √2 - 1.41 > 0 and √2 - 1.42 < 0
        assert_eq!(surd(-141, 100, 1, 1).signum(), 1);
        assert_eq!(surd(-142, 100, 1, 1).signum(), -1);
        assert_eq!(surd(0, 1, 0, 1).signum(), 0);
        assert_eq!(surd(3, 2, -1, 1).signum(), 1); // 3/2 - √2 > 0
        assert_eq!(surd(7, 5, -1, 1).signum(), -1); // 7/5 - √2 < 0
        assert!(Surd::sqrt2() > Surd::from_int(1));
        assert!(Surd::sqrt2() < Surd::from_int(2));
    }

    #[test]
    fn arithmetic() {
        let x = Surd::sqrt2();
        assert_eq!(&x * &x, Surd::from_int(2));
        let inv = x.inverse();
        // 1/√2 = √2/2
        assert_eq!(inv, Surd::new(ratio(0, 1), ratio(1, 2)));
        assert_eq!(&x * &inv, Surd::from_int(1));
        let y = surd(1, 1, 1, 1); // 1 + √2
        let z = &y * &y.inverse();
        assert_eq!(z, Surd::from_int(1));
    }

    #[test]
    fn f64_conversion() {
        let x = surd(-1, 1, 1, 1); // √2 - 1
        assert!((x.to_f64() - 0.41421356237).abs() < 1e-10);
    }
}
