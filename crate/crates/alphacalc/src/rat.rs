//! Exact arbitrary-precision rational numbers.
//!
//! `Rat` is the coefficient and exponent type for every symbolic path in the
//! kernel. It is a thin wrapper around `num::BigRational` that fixes the
//! surface syntax (`p/q` decimal strings, denominator omitted when 1) and
//! adds the few helpers the series code needs. Values are always in lowest
//! terms with a positive denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::CalcError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Exact rational `num/den`. Panics on a zero denominator; use
    /// [`Rat::from_str`] for fallible surface input.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Rat(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Integer power with negative exponents allowed (base must be nonzero
    /// for negative `e`).
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Rat::one();
        }
        let p = self.0.pow(
            i32::try_from(e.abs()).expect("exponent out of range"),
        );
        if e < 0 {
            Rat(p.recip())
        } else {
            Rat(p)
        }
    }

    /// Exact `r`-th root when one exists in the rationals, `None` otherwise.
    /// Only nonnegative values have roots here; `r >= 1`.
    pub fn nth_root(&self, r: u32) -> Option<Self> {
        assert!(r >= 1);
        if self.is_negative() {
            return None;
        }
        let num = self.0.numer().nth_root(r);
        let den = self.0.denom().nth_root(r);
        let candidate = BigRational::new(num, den);
        if candidate.clone().pow(r as i32) == self.0 {
            Some(Rat(candidate))
        } else {
            None
        }
    }

    /// Smallest integer `>= self`, as i64 when it fits.
    pub fn ceil_i64(&self) -> Option<i64> {
        Rat(self.0.ceil()).numer_i64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Fall back on a quotient of lossy conversions for huge values.
            let n = self.0.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.0.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    /// Denominator as i64; `None` if it does not fit.
    pub fn denom_i64(&self) -> Option<i64> {
        self.0.denom().to_i64()
    }

    pub fn numer_i64(&self) -> Option<i64> {
        self.0.numer().to_i64()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = CalcError;

    /// Accepts `p`, `-p`, `p/q` with arbitrary-precision decimal integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |msg: &str| CalcError::Invalid(format!("bad rational {s:?}: {msg}"));
        let parse_int = |t: &str| -> Result<BigInt, CalcError> {
            BigInt::from_str(t.trim()).map_err(|_| bad("not an integer"))
        };
        match s.split_once('/') {
            None => Ok(Rat(BigRational::from_integer(parse_int(s)?))),
            Some((n, d)) => {
                let num = parse_int(n)?;
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Rat(BigRational::new(num, den)))
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

/// Sign of the numerator: -1, 0, or 1.
pub fn sign(r: &Rat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm_i64(a: i64, b: i64) -> i64 {
    assert!(a > 0 && b > 0);
    a / gcd_i64(a, b) * b
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
