//! Sparse multivariate polynomials over exact rationals.
//!
//! Used as the "ordinary function" side of the chain rule and as the class
//! of connection components that may be composed with curves. Exponents are
//! nonnegative integers; the ordinary partial derivative is the classical
//! power rule.

use std::collections::BTreeMap;

use crate::error::{CalcError, Result};
use crate::multi::MultiPuiseux;
use crate::puiseux::PuiseuxSeries;
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn new(num_vars: usize, terms: &[(Vec<u32>, Rat)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(CalcError::DimensionMismatch(exps.len(), num_vars));
            }
            let entry = map.entry(exps.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Poly {
            num_vars,
            terms: map,
        })
    }

    pub fn zero(num_vars: usize) -> Self {
        Poly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: &Rat) -> Self {
        Poly::new(num_vars, &[(vec![0; num_vars], c.clone())]).expect("constant")
    }

    /// The coordinate monomial `x_var` (0-based).
    pub fn coordinate(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars);
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        Poly::new(num_vars, &[(exps, Rat::one())]).expect("coordinate")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        if self.num_vars != other.num_vars {
            return Err(CalcError::DimensionMismatch(self.num_vars, other.num_vars));
        }
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly {
            num_vars: self.num_vars,
            terms,
        })
    }

    pub fn neg(&self) -> Poly {
        Poly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        if self.num_vars != other.num_vars {
            return Err(CalcError::DimensionMismatch(self.num_vars, other.num_vars));
        }
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(key).or_insert_with(Rat::zero);
                *entry += &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly {
            num_vars: self.num_vars,
            terms,
        })
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        let mut terms: BTreeMap<Vec<u32>, Rat> =
            self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect();
        terms.retain(|_, v| !v.is_zero());
        Poly {
            num_vars: self.num_vars,
            terms,
        }
    }

    /// Ordinary (integer-calculus) partial derivative in variable `var`
    /// (0-based): the classical power rule.
    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < self.num_vars);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (key, c) in &self.terms {
            let e = key[var];
            if e == 0 {
                continue;
            }
            let mut k = key.clone();
            k[var] = e - 1;
            let entry = terms.entry(k).or_insert_with(Rat::zero);
            *entry += &(c * &Rat::from_int(e as i64));
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            num_vars: self.num_vars,
            terms,
        }
    }

    /// Substitutes one univariate Puiseux series per variable; the finite
    /// sum and products are computed in the series ring, so the result
    /// carries the tightest exact window.
    pub fn eval_series(&self, args: &[PuiseuxSeries]) -> Result<PuiseuxSeries> {
        if args.len() != self.num_vars {
            return Err(CalcError::DimensionMismatch(args.len(), self.num_vars));
        }
        let window = args
            .iter()
            .map(|a| a.truncation_order())
            .min()
            .ok_or_else(|| CalcError::Invalid("composition needs at least one argument".into()))?;
        let mut acc = PuiseuxSeries::zero(&window);
        for (key, c) in &self.terms {
            let mut factor: Option<PuiseuxSeries> = None;
            for (var, e) in key.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let p = args[var].pow(*e);
                factor = Some(match factor {
                    None => p,
                    Some(f) => f.mul(&p),
                });
            }
            let term = match factor {
                None => PuiseuxSeries::constant(c, &window),
                Some(f) => f.scale(c),
            };
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Exact numeric value at a rational point.
    pub fn eval_rat(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.num_vars {
            return Err(CalcError::DimensionMismatch(point.len(), self.num_vars));
        }
        let mut acc = Rat::zero();
        for (key, c) in &self.terms {
            let mut v = c.clone();
            for (var, e) in key.iter().enumerate() {
                v *= &point[var].pow(*e as i64);
            }
            acc += &v;
        }
        Ok(acc)
    }
}

/// Reads a multivariate Puiseux series as a polynomial when every exponent
/// is a nonnegative integer; errors otherwise. Content beyond the series
/// window is unknown, so the caller must make sure the window covers the
/// intended polynomial (constructor-built connection inputs do).
pub fn poly_from_multi(f: &MultiPuiseux, label: &str) -> Result<Poly> {
    let n = f.ramification();
    let mut terms = Vec::new();
    for (key, c) in f.index_terms() {
        let mut exps = Vec::with_capacity(key.len());
        for k in key {
            if *k < 0 || k % n != 0 {
                return Err(CalcError::NonPolynomialConnection(label.to_string()));
            }
            exps.push(u32::try_from(k / n).map_err(|_| {
                CalcError::NonPolynomialConnection(label.to_string())
            })?);
        }
        terms.push((exps, c.clone()));
    }
    Poly::new(f.num_vars(), &terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn classical_partial_power_rule() {
        // f = 3 x^2 y + y^3
        let f = Poly::new(
            2,
            &[(vec![2, 1], r(3, 1)), (vec![0, 3], r(1, 1))],
        )
        .unwrap();
        let fx = f.partial(0);
        assert_eq!(fx, Poly::new(2, &[(vec![1, 1], r(6, 1))]).unwrap());
        let fy = f.partial(1);
        assert_eq!(
            fy,
            Poly::new(2, &[(vec![2, 0], r(3, 1)), (vec![0, 2], r(3, 1))]).unwrap()
        );
    }

    #[test]
    fn eval_series_composition() {
        // F(u) = u^2 at u = z^(1/2) gives z
        let f = Poly::new(1, &[(vec![2], r(1, 1))]).unwrap();
        let z_half =
            PuiseuxSeries::make_series(&[(r(1, 2), r(1, 1))], &r(4, 1)).unwrap();
        let composed = f.eval_series(&[z_half]).unwrap();
        assert_eq!(composed.coeff(&r(1, 1)), r(1, 1));
        assert_eq!(composed.num_terms(), 1);
    }

    #[test]
    fn eval_rat_point() {
        let f = Poly::new(2, &[(vec![1, 1], r(1, 1)), (vec![0, 0], r(5, 1))]).unwrap();
        assert_eq!(f.eval_rat(&[r(2, 1), r(3, 1)]).unwrap(), r(11, 1));
    }
}
