//! Truncated generalized Puiseux series with exact rational coefficients.
//!
//! A series is a finite map from integer indices `k` to nonzero rational
//! coefficients, read as `sum c_k * z^(k/n)` for a fixed ramification index
//! `n`, together with a truncation index `K`: the stored data is exact
//! modulo `z^(K/n)`, every coefficient at an exponent below `K/n` is fully
//! known, everything at or above it is unknown. Finitely many negative
//! indices are allowed (the principal part).
//!
//! Every constructor and operation returns the canonical form: zero
//! coefficients pruned and the ramification reduced by the gcd of `n`, `K`
//! and every stored index, so structural equality is semantic equality of
//! "known content plus claimed window". Every operation computes the largest
//! window for which all reported coefficients are exact.

use std::collections::BTreeMap;

use crate::error::{CalcError, Result};
use crate::rat::{gcd_i64, lcm_i64, Rat};

/// A positive evaluation point. Fractional powers are only evaluated on the
/// positive real axis.
#[derive(Clone, Copy, Debug)]
pub struct EvalPoint(f64);

impl EvalPoint {
    pub fn new(z: f64) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(CalcError::NonpositiveEvalPoint(z));
        }
        Ok(EvalPoint(z))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Truncated generalized Puiseux series over exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxSeries {
    ramification: i64,
    terms: BTreeMap<i64, Rat>,
    truncation_index: i64,
}

impl PuiseuxSeries {
    /// Builds a series from `(exponent, coefficient)` pairs, exact modulo
    /// `z^truncation_order`. The ramification is the lcm of all exponent
    /// denominators and the truncation-order denominator.
    ///
    /// Rejects duplicate exponents and exponents at or beyond the
    /// truncation order. Zero coefficients are pruned.
    pub fn make_series(terms: &[(Rat, Rat)], truncation_order: &Rat) -> Result<Self> {
        let mut n: i64 = denom_as_i64(truncation_order)?;
        for (exponent, _) in terms {
            if exponent >= truncation_order {
                return Err(CalcError::ExponentBeyondTruncation {
                    exponent: exponent.clone(),
                    order: truncation_order.clone(),
                });
            }
            n = lcm_i64(n, denom_as_i64(exponent)?);
        }
        let mut map = BTreeMap::new();
        for (exponent, coeff) in terms {
            let k = index_on(exponent, n)?;
            if map.contains_key(&k) {
                return Err(CalcError::DuplicateExponent(exponent.clone()));
            }
            if !coeff.is_zero() {
                map.insert(k, coeff.clone());
            }
        }
        let truncation_index = index_on(truncation_order, n)?;
        Ok(Self::from_raw(n, map, truncation_index))
    }

    /// The zero series, exact modulo `z^truncation_order`.
    pub fn zero(truncation_order: &Rat) -> Self {
        Self::make_series(&[], truncation_order).expect("zero series")
    }

    pub fn constant(c: &Rat, truncation_order: &Rat) -> Self {
        Self::make_series(&[(Rat::zero(), c.clone())], truncation_order)
            .expect("constant below truncation")
    }

    pub fn monomial(exponent: &Rat, coeff: &Rat, truncation_order: &Rat) -> Result<Self> {
        Self::make_series(&[(exponent.clone(), coeff.clone())], truncation_order)
    }

    /// Canonicalizing constructor over a fixed index lattice. All stored
    /// indices must be `< truncation_index`.
    pub(crate) fn from_raw(
        ramification: i64,
        mut terms: BTreeMap<i64, Rat>,
        truncation_index: i64,
    ) -> Self {
        debug_assert!(ramification >= 1);
        terms.retain(|k, c| {
            debug_assert!(*k < truncation_index, "term index {k} beyond window");
            !c.is_zero()
        });
        let mut g = gcd_i64(ramification, truncation_index);
        for k in terms.keys() {
            g = gcd_i64(g, *k);
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            terms = terms.into_iter().map(|(k, c)| (k / g, c)).collect();
            return PuiseuxSeries {
                ramification: ramification / g,
                terms,
                truncation_index: truncation_index / g,
            };
        }
        PuiseuxSeries {
            ramification,
            terms,
            truncation_index,
        }
    }

    pub fn ramification(&self) -> i64 {
        self.ramification
    }

    pub fn truncation_index(&self) -> i64 {
        self.truncation_index
    }

    /// The exponent `K/n` below which every coefficient is exact.
    pub fn truncation_order(&self) -> Rat {
        Rat::new(self.truncation_index, self.ramification)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest stored index, `None` for the zero series.
    pub fn lowest_index(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// The order `O(f)`: the exponent of the leading nonzero term. `None`
    /// marks the infinite order of the zero series.
    pub fn order(&self) -> Option<Rat> {
        self.lowest_index().map(|k| Rat::new(k, self.ramification))
    }

    /// Coefficient at the given exponent (zero when absent or off-lattice).
    pub fn coeff(&self, exponent: &Rat) -> Rat {
        match index_on(exponent, self.ramification) {
            Ok(k) => self.terms.get(&k).cloned().unwrap_or_else(Rat::zero),
            Err(_) => Rat::zero(),
        }
    }

    /// Terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rat, &Rat)> + '_ {
        self.terms
            .iter()
            .map(|(k, c)| (Rat::new(*k, self.ramification), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn index_terms(&self) -> &BTreeMap<i64, Rat> {
        &self.terms
    }

    /// The series re-expressed on ramification `n * factor` without
    /// reduction; inverse of the canonical gcd reduction.
    pub(crate) fn refined_raw(&self, factor: i64) -> (i64, BTreeMap<i64, Rat>, i64) {
        assert!(factor >= 1);
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k * factor, c.clone()))
            .collect();
        (
            self.ramification * factor,
            terms,
            self.truncation_index * factor,
        )
    }

    /// Splits into `(principal, regular)`: the sub-series of negative and of
    /// nonnegative exponents, each keeping the full truncation window.
    pub fn split(&self) -> (PuiseuxSeries, PuiseuxSeries) {
        let (neg, nonneg): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .terms
            .iter()
            .map(|(k, c)| (*k, c.clone()))
            .partition(|(k, _)| *k < 0);
        (
            Self::from_raw(self.ramification, neg, self.truncation_index),
            Self::from_raw(self.ramification, nonneg, self.truncation_index),
        )
    }

    pub fn neg(&self) -> PuiseuxSeries {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c)).collect();
        Self::from_raw(self.ramification, terms, self.truncation_index)
    }

    pub fn scale(&self, c: &Rat) -> PuiseuxSeries {
        let terms = self.terms.iter().map(|(k, v)| (*k, c * v)).collect();
        Self::from_raw(self.ramification, terms, self.truncation_index)
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let n = lcm_i64(self.ramification, other.ramification);
        let (_, mut terms, k_self) = self.refined_raw(n / self.ramification);
        let (_, other_terms, k_other) = other.refined_raw(n / other.ramification);
        let truncation = k_self.min(k_other);
        for (k, c) in other_terms {
            let entry = terms.entry(k).or_insert_with(Rat::zero);
            *entry += &c;
        }
        terms.retain(|k, c| *k < truncation && !c.is_zero());
        Self::from_raw(n, terms, truncation)
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self.add(&other.neg())
    }

    /// Cauchy product. The result window is the largest one on which every
    /// reported coefficient is exact: `min(K_f + low(g), K_g + low(f))` on
    /// the common ramification, where `low` is the lowest stored index, or
    /// the truncation index for a series with no stored terms.
    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let n = lcm_i64(self.ramification, other.ramification);
        let (_, lhs, k_lhs) = self.refined_raw(n / self.ramification);
        let (_, rhs, k_rhs) = other.refined_raw(n / other.ramification);
        let low_lhs = lhs.keys().next().copied().unwrap_or(k_lhs);
        let low_rhs = rhs.keys().next().copied().unwrap_or(k_rhs);
        let truncation = (k_lhs + low_rhs).min(k_rhs + low_lhs);
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ka, ca) in &lhs {
            for (kb, cb) in &rhs {
                let k = ka + kb;
                if k >= truncation {
                    break; // rhs ascending: later kb only grow
                }
                let entry = terms.entry(k).or_insert_with(Rat::zero);
                *entry += &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self::from_raw(n, terms, truncation)
    }

    /// Integer power by repeated multiplication (`e >= 0`).
    pub fn pow(&self, e: u32) -> PuiseuxSeries {
        // The window of a power is driven by mul's bookkeeping; start from a
        // constant-one factor wide enough that it never binds.
        let mut acc: Option<PuiseuxSeries> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul(self),
            });
        }
        match acc {
            Some(a) => a,
            None => {
                // pow 0: constant 1; keep the operand's window as claim.
                PuiseuxSeries::constant(&Rat::one(), &self.truncation_order())
            }
        }
    }

    /// Drops every term at or beyond `order` and tightens the window to it.
    /// `order` must not exceed the current truncation order.
    pub fn truncated_to_order(&self, order: &Rat) -> PuiseuxSeries {
        assert!(
            order <= &self.truncation_order(),
            "cannot widen a truncation window"
        );
        let n = lcm_i64(self.ramification, denom_as_i64(order).expect("order denominator"));
        let (_, mut terms, _) = self.refined_raw(n / self.ramification);
        let cut = index_on(order, n).expect("order on lattice");
        terms.retain(|k, _| *k < cut);
        Self::from_raw(n, terms, cut)
    }

    /// Structural equality after tightening both operands to the smaller of
    /// the two truncation windows.
    pub fn agrees_with(&self, other: &PuiseuxSeries) -> bool {
        let window = self.truncation_order().min(other.truncation_order());
        self.truncated_to_order(&window) == other.truncated_to_order(&window)
    }

    /// Numeric sum of the stored terms at `z > 0`, in double precision.
    /// Truncation error is the caller's concern.
    pub fn eval(&self, z: EvalPoint) -> f64 {
        let n = self.ramification as f64;
        let z = z.value();
        self.terms
            .iter()
            .map(|(k, c)| c.to_f64() * z.powf(*k as f64 / n))
            .sum()
    }
}

fn denom_as_i64(r: &Rat) -> Result<i64> {
    r.denom_i64()
        .ok_or_else(|| CalcError::Invalid(format!("denominator of {r} too large")))
}

/// Index of `exponent` on the lattice with ramification `n`; errors when the
/// exponent is not a multiple of `1/n` or overflows.
fn index_on(exponent: &Rat, n: i64) -> Result<i64> {
    let scaled = exponent * &Rat::from_int(n);
    if !scaled.is_integer() {
        return Err(CalcError::Invalid(format!(
            "exponent {exponent} not on the 1/{n} lattice"
        )));
    }
    scaled
        .numer_i64()
        .ok_or_else(|| CalcError::Invalid(format!("exponent {exponent} out of range")))
}
