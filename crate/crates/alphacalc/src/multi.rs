//! Multivariate truncated Puiseux series.
//!
//! All variables share one ramification index `n`; a term maps a multi-index
//! `(k_1, ..., k_N)` to a rational coefficient and reads
//! `c * x_1^(k_1/n) * ... * x_N^(k_N/n)`. Truncation is a per-variable box:
//! the coefficient of every multi-index with `k_j < K_j` for all `j` is
//! exact.
//!
//! Unlike the univariate case, a sound product window needs a lower bound
//! valid for the *unknown* tail as well, and cancellation in `add` can push
//! the smallest stored index above that bound. The bound is therefore
//! tracked explicitly in `floor` and propagated through every operation
//! instead of being re-derived from the stored terms. `floor` is
//! bookkeeping, not content: equality compares ramification, terms and
//! window only.

use std::collections::BTreeMap;

use crate::error::{CalcError, Result};
use crate::rat::{gcd_i64, lcm_i64, Rat};

#[derive(Clone, Debug)]
pub struct MultiPuiseux {
    num_vars: usize,
    ramification: i64,
    terms: BTreeMap<Vec<i64>, Rat>,
    /// Per-variable truncation indices `K_j`.
    truncation: Vec<i64>,
    /// Per-variable lower bound for any term, known or unknown.
    floor: Vec<i64>,
}

impl PartialEq for MultiPuiseux {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars
            && self.ramification == other.ramification
            && self.terms == other.terms
            && self.truncation == other.truncation
    }
}

impl Eq for MultiPuiseux {}

impl MultiPuiseux {
    /// Builds an `N`-variable series from `(exponents, coefficient)` pairs,
    /// exact modulo the per-variable truncation orders.
    pub fn make_multi(
        terms: &[(Vec<Rat>, Rat)],
        truncation_orders: &[Rat],
    ) -> Result<Self> {
        let num_vars = truncation_orders.len();
        if num_vars == 0 {
            return Err(CalcError::Invalid("series needs at least one variable".into()));
        }
        let mut n: i64 = 1;
        for order in truncation_orders {
            n = lcm_i64(n, denom_i64(order)?);
        }
        for (exponents, _) in terms {
            if exponents.len() != num_vars {
                return Err(CalcError::DimensionMismatch(exponents.len(), num_vars));
            }
            for (exponent, order) in exponents.iter().zip(truncation_orders) {
                if exponent >= order {
                    return Err(CalcError::ExponentBeyondTruncation {
                        exponent: exponent.clone(),
                        order: order.clone(),
                    });
                }
                n = lcm_i64(n, denom_i64(exponent)?);
            }
        }
        let mut map = BTreeMap::new();
        for (exponents, coeff) in terms {
            let key: Vec<i64> = exponents
                .iter()
                .map(|e| index_on(e, n))
                .collect::<Result<_>>()?;
            if map.contains_key(&key) {
                return Err(CalcError::DuplicateExponent(exponents[0].clone()));
            }
            if !coeff.is_zero() {
                map.insert(key, coeff.clone());
            }
        }
        let truncation: Vec<i64> = truncation_orders
            .iter()
            .map(|o| index_on(o, n))
            .collect::<Result<_>>()?;
        let floor = derive_floor(&map, num_vars);
        Ok(Self::from_raw(num_vars, n, map, truncation, floor))
    }

    pub fn zero(num_vars: usize, truncation_orders: &[Rat]) -> Result<Self> {
        if truncation_orders.len() != num_vars {
            return Err(CalcError::DimensionMismatch(truncation_orders.len(), num_vars));
        }
        Self::make_multi(&[], truncation_orders)
    }

    pub fn constant(c: &Rat, truncation_orders: &[Rat]) -> Result<Self> {
        let exps = vec![Rat::zero(); truncation_orders.len()];
        Self::make_multi(&[(exps, c.clone())], truncation_orders)
    }

    pub(crate) fn from_raw(
        num_vars: usize,
        ramification: i64,
        mut terms: BTreeMap<Vec<i64>, Rat>,
        truncation: Vec<i64>,
        floor: Vec<i64>,
    ) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let mut g = truncation
            .iter()
            .fold(ramification, |acc, k| gcd_i64(acc, *k));
        for f in &floor {
            g = gcd_i64(g, *f);
        }
        'outer: for key in terms.keys() {
            for k in key {
                g = gcd_i64(g, *k);
                if g == 1 {
                    break 'outer;
                }
            }
        }
        if g > 1 {
            terms = terms
                .into_iter()
                .map(|(key, c)| (key.into_iter().map(|k| k / g).collect(), c))
                .collect();
            return MultiPuiseux {
                num_vars,
                ramification: ramification / g,
                terms,
                truncation: truncation.into_iter().map(|k| k / g).collect(),
                floor: floor.into_iter().map(|k| k / g).collect(),
            };
        }
        MultiPuiseux {
            num_vars,
            ramification,
            terms,
            truncation,
            floor,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn ramification(&self) -> i64 {
        self.ramification
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncation_orders(&self) -> Vec<Rat> {
        self.truncation
            .iter()
            .map(|k| Rat::new(*k, self.ramification))
            .collect()
    }

    pub(crate) fn truncation_indices(&self) -> &[i64] {
        &self.truncation
    }

    pub(crate) fn floor_indices(&self) -> &[i64] {
        &self.floor
    }

    pub(crate) fn index_terms(&self) -> &BTreeMap<Vec<i64>, Rat> {
        &self.terms
    }

    pub fn coeff(&self, exponents: &[Rat]) -> Rat {
        if exponents.len() != self.num_vars {
            return Rat::zero();
        }
        let key: Option<Vec<i64>> = exponents
            .iter()
            .map(|e| index_on(e, self.ramification).ok())
            .collect();
        match key {
            Some(k) => self.terms.get(&k).cloned().unwrap_or_else(Rat::zero),
            None => Rat::zero(),
        }
    }

    /// Terms as `(exponents, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<Rat>, &Rat)> + '_ {
        self.terms.iter().map(|(key, c)| {
            (
                key.iter()
                    .map(|k| Rat::new(*k, self.ramification))
                    .collect(),
                c,
            )
        })
    }

    pub(crate) fn refined_raw(
        &self,
        factor: i64,
    ) -> (i64, BTreeMap<Vec<i64>, Rat>, Vec<i64>, Vec<i64>) {
        assert!(factor >= 1);
        let terms = self
            .terms
            .iter()
            .map(|(key, c)| {
                (
                    key.iter().map(|k| k * factor).collect::<Vec<i64>>(),
                    c.clone(),
                )
            })
            .collect();
        (
            self.ramification * factor,
            terms,
            self.truncation.iter().map(|k| k * factor).collect(),
            self.floor.iter().map(|k| k * factor).collect(),
        )
    }

    pub fn neg(&self) -> MultiPuiseux {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect();
        Self::from_raw(
            self.num_vars,
            self.ramification,
            terms,
            self.truncation.clone(),
            self.floor.clone(),
        )
    }

    pub fn scale(&self, c: &Rat) -> MultiPuiseux {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect();
        Self::from_raw(
            self.num_vars,
            self.ramification,
            terms,
            self.truncation.clone(),
            self.floor.clone(),
        )
    }

    pub fn add(&self, other: &MultiPuiseux) -> Result<MultiPuiseux> {
        if self.num_vars != other.num_vars {
            return Err(CalcError::DimensionMismatch(self.num_vars, other.num_vars));
        }
        let n = lcm_i64(self.ramification, other.ramification);
        let (_, mut terms, k_self, floor_self) = self.refined_raw(n / self.ramification);
        let (_, other_terms, k_other, floor_other) = other.refined_raw(n / other.ramification);
        let truncation: Vec<i64> = k_self
            .iter()
            .zip(&k_other)
            .map(|(a, b)| *a.min(b))
            .collect();
        let floor: Vec<i64> = floor_self
            .iter()
            .zip(&floor_other)
            .map(|(a, b)| *a.min(b))
            .collect();
        for (key, c) in other_terms {
            let entry = terms.entry(key).or_insert_with(Rat::zero);
            *entry += &c;
        }
        terms.retain(|key, c| inside(key, &truncation) && !c.is_zero());
        Ok(Self::from_raw(self.num_vars, n, terms, truncation, floor))
    }

    pub fn sub(&self, other: &MultiPuiseux) -> Result<MultiPuiseux> {
        self.add(&other.neg())
    }

    /// Cauchy product with the per-variable window
    /// `K_j = min(K_f_j + floor_g_j, K_g_j + floor_f_j)`.
    pub fn mul(&self, other: &MultiPuiseux) -> Result<MultiPuiseux> {
        if self.num_vars != other.num_vars {
            return Err(CalcError::DimensionMismatch(self.num_vars, other.num_vars));
        }
        let n = lcm_i64(self.ramification, other.ramification);
        let (_, lhs, k_lhs, floor_lhs) = self.refined_raw(n / self.ramification);
        let (_, rhs, k_rhs, floor_rhs) = other.refined_raw(n / other.ramification);
        let truncation: Vec<i64> = (0..self.num_vars)
            .map(|j| (k_lhs[j] + floor_rhs[j]).min(k_rhs[j] + floor_lhs[j]))
            .collect();
        let floor: Vec<i64> = (0..self.num_vars)
            .map(|j| floor_lhs[j] + floor_rhs[j])
            .collect();
        let mut terms: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (ka, ca) in &lhs {
            for (kb, cb) in &rhs {
                let key: Vec<i64> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                if !inside(&key, &truncation) {
                    continue;
                }
                let entry = terms.entry(key).or_insert_with(Rat::zero);
                *entry += &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Self::from_raw(self.num_vars, n, terms, truncation, floor))
    }

    /// Tightens the per-variable window; each new order must not exceed the
    /// current one.
    pub fn truncated_to_orders(&self, orders: &[Rat]) -> Result<MultiPuiseux> {
        if orders.len() != self.num_vars {
            return Err(CalcError::DimensionMismatch(orders.len(), self.num_vars));
        }
        let mut n = self.ramification;
        for order in orders {
            n = lcm_i64(n, denom_i64(order)?);
        }
        let (_, mut terms, current, floor) = self.refined_raw(n / self.ramification);
        let mut cut = Vec::with_capacity(self.num_vars);
        for (order, have) in orders.iter().zip(&current) {
            let k = index_on(order, n)?;
            if k > *have {
                return Err(CalcError::Invalid(
                    "cannot widen a truncation window".into(),
                ));
            }
            cut.push(k);
        }
        terms.retain(|key, _| inside(key, &cut));
        Ok(Self::from_raw(self.num_vars, n, terms, cut, floor))
    }

    /// Structural equality after tightening both operands to the common
    /// window (per-variable minimum of the truncation orders).
    pub fn agrees_with(&self, other: &MultiPuiseux) -> bool {
        if self.num_vars != other.num_vars {
            return false;
        }
        let mine = self.truncation_orders();
        let theirs = other.truncation_orders();
        let window: Vec<Rat> = mine
            .iter()
            .zip(&theirs)
            .map(|(a, b)| a.clone().min(b.clone()))
            .collect();
        match (
            self.truncated_to_orders(&window),
            other.truncated_to_orders(&window),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

fn inside(key: &[i64], truncation: &[i64]) -> bool {
    key.iter().zip(truncation).all(|(k, t)| k < t)
}

fn derive_floor(terms: &BTreeMap<Vec<i64>, Rat>, num_vars: usize) -> Vec<i64> {
    let mut floor = vec![0i64; num_vars];
    for key in terms.keys() {
        for (f, k) in floor.iter_mut().zip(key) {
            *f = (*f).min(*k);
        }
    }
    floor
}

fn denom_i64(r: &Rat) -> Result<i64> {
    r.denom_i64()
        .ok_or_else(|| CalcError::Invalid(format!("denominator of {r} too large")))
}

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

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn orders(q: i64, n: usize) -> Vec<Rat> {
        vec![Rat::from_int(q); n]
    }

    #[test]
    fn make_and_lookup() {
        // x^(1/2) * y
        let f = MultiPuiseux::make_multi(
            &[(vec![r(1, 2), r(1, 1)], r(1, 1))],
            &orders(3, 2),
        )
        .unwrap();
        assert_eq!(f.ramification(), 2);
        assert_eq!(f.coeff(&[r(1, 2), r(1, 1)]), r(1, 1));
        assert_eq!(f.coeff(&[r(1, 2), r(0, 1)]), r(0, 1));
    }

    #[test]
    fn product_of_coordinates() {
        let x = MultiPuiseux::make_multi(
            &[(vec![r(1, 1), r(0, 1)], r(1, 1))],
            &orders(4, 2),
        )
        .unwrap();
        let y = MultiPuiseux::make_multi(
            &[(vec![r(0, 1), r(1, 1)], r(1, 1))],
            &orders(4, 2),
        )
        .unwrap();
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.coeff(&[r(1, 1), r(1, 1)]), r(1, 1));
        assert_eq!(xy.index_terms().len(), 1);
    }

    #[test]
    fn add_tracks_floor_through_cancellation() {
        let a = MultiPuiseux::make_multi(
            &[
                (vec![r(-1, 1), r(0, 1)], r(1, 1)),
                (vec![r(0, 1), r(1, 1)], r(1, 1)),
            ],
            &orders(3, 2),
        )
        .unwrap();
        let b = MultiPuiseux::make_multi(
            &[(vec![r(-1, 1), r(0, 1)], r(-1, 1))],
            &orders(3, 2),
        )
        .unwrap();
        let sum = a.add(&b).unwrap();
        // only y survives, but the floor still records the vanished 1/x term
        assert_eq!(sum.index_terms().len(), 1);
        assert_eq!(sum.floor_indices(), &[-1, 0]);
    }

    #[test]
    fn mul_window_guards_tails() {
        // f known only below x^2 with floor 0, g = x: the window formula
        // K' = min(K_f + floor_g, K_g + floor_f) caps the product at x^2.
        let f = MultiPuiseux::make_multi(
            &[(vec![r(0, 1)], r(1, 1))],
            &[r(2, 1)],
        )
        .unwrap();
        let g = MultiPuiseux::make_multi(
            &[(vec![r(1, 1)], r(1, 1))],
            &[r(9, 1)],
        )
        .unwrap();
        let fg = f.mul(&g).unwrap();
        assert_eq!(fg.truncation_orders(), vec![r(2, 1)]);
        assert_eq!(fg.coeff(&[r(1, 1)]), r(1, 1));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = MultiPuiseux::zero(1, &orders(2, 1)).unwrap();
        let b = MultiPuiseux::zero(2, &orders(2, 2)).unwrap();
        assert!(matches!(
            a.add(&b),
            Err(CalcError::DimensionMismatch(1, 2))
        ));
    }
}
