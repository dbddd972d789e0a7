//! The derivative basis `alpha = m/n`.

use std::fmt;

use crate::error::{CalcError, Result};
use crate::rat::{gcd_i64, Rat};

/// Rational derivative basis `alpha = m/n` with `0 < m/n <= 1`, stored in
/// lowest terms. `alpha = 1` is the ordinary derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlphaBasis {
    m: i64,
    n: i64,
}

impl AlphaBasis {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m <= 0 || n <= 0 || m > n {
            return Err(CalcError::InvalidBasis { m, n });
        }
        let g = gcd_i64(m, n);
        Ok(AlphaBasis { m: m / g, n: n / g })
    }

    /// The ordinary derivative, `alpha = 1`.
    pub fn one() -> Self {
        AlphaBasis { m: 1, n: 1 }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn as_rat(&self) -> Rat {
        Rat::new(self.m, self.n)
    }

    /// Parses `"m/n"` or an integer string (only `"1"` is in range).
    pub fn parse(s: &str) -> Result<Self> {
        let r: Rat = s.parse()?;
        let (m, n) = (r.numer_i64(), r.denom_i64());
        match (m, n) {
            (Some(m), Some(n)) => AlphaBasis::new(m, n),
            _ => Err(CalcError::Invalid(format!("basis out of range: {s}"))),
        }
    }
}

impl fmt::Display for AlphaBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "{}", self.m)
        } else {
            write!(f, "{}/{}", self.m, self.n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_validates() {
        assert_eq!(AlphaBasis::new(2, 4).unwrap(), AlphaBasis::new(1, 2).unwrap());
        assert!(AlphaBasis::new(3, 2).is_err());
        assert!(AlphaBasis::new(0, 2).is_err());
        assert_eq!(AlphaBasis::parse("1").unwrap(), AlphaBasis::one());
        assert_eq!(AlphaBasis::parse("3/5").unwrap().to_string(), "3/5");
    }
}
