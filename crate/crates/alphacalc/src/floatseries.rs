//! Puiseux series with double-precision coefficients.
//!
//! The alpha-trigonometric series carry the factors `cos(alpha pi k / 2)`
//! and `sin(alpha pi k / 2)`, which are irrational for most bases, so they
//! cannot live in the exact-rational ring. This mirror of [`PuiseuxSeries`]
//! keeps the same index/window bookkeeping with `f64` coefficients and no
//! ramification reduction.

use std::collections::BTreeMap;

use crate::alpha::AlphaBasis;
use crate::puiseux::{EvalPoint, PuiseuxSeries};
use crate::rat::{lcm_i64, Rat};

#[derive(Clone, Debug)]
pub struct FloatPuiseux {
    ramification: i64,
    terms: BTreeMap<i64, f64>,
    truncation_index: i64,
}

impl FloatPuiseux {
    pub(crate) fn from_raw(
        ramification: i64,
        mut terms: BTreeMap<i64, f64>,
        truncation_index: i64,
    ) -> Self {
        terms.retain(|k, c| {
            debug_assert!(*k < truncation_index);
            *c != 0.0
        });
        FloatPuiseux {
            ramification,
            terms,
            truncation_index,
        }
    }

    pub fn from_exact(f: &PuiseuxSeries) -> Self {
        let terms = f
            .index_terms()
            .iter()
            .map(|(k, c)| (*k, c.to_f64()))
            .collect();
        Self::from_raw(f.ramification(), terms, f.truncation_index())
    }

    pub fn ramification(&self) -> i64 {
        self.ramification
    }

    pub fn truncation_order(&self) -> Rat {
        Rat::new(self.truncation_index, self.ramification)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: &Rat) -> f64 {
        let scaled = exponent * &Rat::from_int(self.ramification);
        if !scaled.is_integer() {
            return 0.0;
        }
        match scaled.numer_i64() {
            Some(k) => self.terms.get(&k).copied().unwrap_or(0.0),
            None => 0.0,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rat, f64)> + '_ {
        self.terms
            .iter()
            .map(|(k, c)| (Rat::new(*k, self.ramification), *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest coefficient magnitude; 0 for the empty series.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> FloatPuiseux {
        let terms = self.terms.iter().map(|(k, c)| (*k, c * s)).collect();
        Self::from_raw(self.ramification, terms, self.truncation_index)
    }

    pub fn sub(&self, other: &FloatPuiseux) -> FloatPuiseux {
        let n = lcm_i64(self.ramification, other.ramification);
        let (fa, fb) = (n / self.ramification, n / other.ramification);
        let truncation = (self.truncation_index * fa).min(other.truncation_index * fb);
        let mut terms: BTreeMap<i64, f64> = self
            .terms
            .iter()
            .map(|(k, c)| (k * fa, *c))
            .collect();
        for (k, c) in &other.terms {
            *terms.entry(k * fb).or_insert(0.0) -= c;
        }
        terms.retain(|k, c| *k < truncation && *c != 0.0);
        FloatPuiseux {
            ramification: n,
            terms,
            truncation_index: truncation,
        }
    }

    /// Term-wise alpha-derivative, same rule as the exact ring.
    pub fn alpha_deriv(&self, alpha: AlphaBasis) -> FloatPuiseux {
        let n = lcm_i64(self.ramification, alpha.n());
        let factor = n / self.ramification;
        let shift = alpha.m() * (n / alpha.n());
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let k = k * factor;
                (k - shift, c * (k as f64 / n as f64))
            })
            .collect();
        Self::from_raw(n, terms, self.truncation_index * factor - shift)
    }

    pub fn eval(&self, z: EvalPoint) -> f64 {
        let n = self.ramification as f64;
        let z = z.value();
        self.terms
            .iter()
            .map(|(k, c)| c * z.powf(*k as f64 / n))
            .sum()
    }
}
