//! The alpha-exponential and alpha-trigonometric functions.
//!
//! `E_alpha(z) = sum_k (z^alpha/alpha)^k / k! = exp(z^alpha/alpha)` is the
//! eigenfunction of the alpha-derivative. Its rotation by the imaginary
//! unit splits, for `z > 0`, into the alpha-cosine and alpha-sine
//!
//! `C_alpha(z) = sum_k cos(alpha pi k/2) (z^alpha/alpha)^k / k!`,
//! `S_alpha(z) = sum_{k>=1} sin(alpha pi k/2) (z^alpha/alpha)^k / k!`,
//!
//! with closed forms `exp((z^alpha/alpha) cos(alpha pi/2)) * cos/sin((z^alpha/alpha) sin(alpha pi/2))`.
//! `E_alpha` stays in the exact ring; the trigonometric series carry
//! double-precision coefficients, exact where the angle factor is 0 or +-1.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::alpha::AlphaBasis;
use crate::calculus::alpha_deriv;
use crate::error::{CalcError, Result};
use crate::floatseries::FloatPuiseux;
use crate::puiseux::{EvalPoint, PuiseuxSeries};
use crate::rat::Rat;

/// Exact coefficients `1/(k! alpha^k)` for `k = 0..terms`, on the
/// `z^(k alpha)` lattice.
fn e_alpha_coeffs(alpha: AlphaBasis, terms: usize) -> Vec<Rat> {
    let inv_alpha = alpha.as_rat().recip();
    let mut coeffs = Vec::with_capacity(terms);
    let mut c = Rat::one();
    for k in 0..terms {
        if k > 0 {
            c = c * &inv_alpha * Rat::new(1, k as i64);
        }
        coeffs.push(c.clone());
    }
    coeffs
}

/// The alpha-exponent as an exact series with `terms` coefficients:
/// constant term 1, truncation order `terms * alpha`.
pub fn e_alpha_series(alpha: AlphaBasis, terms: usize) -> PuiseuxSeries {
    assert!(terms >= 1, "need at least one term");
    let map: BTreeMap<i64, Rat> = e_alpha_coeffs(alpha, terms)
        .into_iter()
        .enumerate()
        .map(|(k, c)| (k as i64 * alpha.m(), c))
        .collect();
    PuiseuxSeries::from_raw(alpha.n(), map, terms as i64 * alpha.m())
}

/// Closed-form value `exp(z^alpha/alpha)` for `z > 0`.
pub fn e_alpha_eval(alpha: AlphaBasis, z: EvalPoint) -> f64 {
    let a = alpha.as_rat().to_f64();
    (z.value().powf(a) / a).exp()
}

/// Residual of the scaled eigen-equation
/// `lambda^alpha * a/az E_alpha(z/lambda) - E_alpha(z/lambda)`.
pub enum ScaledEResidual {
    /// `lambda^(1/n)` is rational: the residual is exact (and zero).
    Exact(PuiseuxSeries),
    /// Irrational scale root: coefficients evaluated per term in `f64`.
    Numeric(FloatPuiseux),
}

pub fn scaled_e_alpha_residual(
    alpha: AlphaBasis,
    lambda: &Rat,
    terms: usize,
) -> Result<ScaledEResidual> {
    if lambda.is_zero() || lambda.is_negative() {
        return Err(CalcError::NonpositiveScale(lambda.clone()));
    }
    let coeffs = e_alpha_coeffs(alpha, terms);
    let window = terms as i64 * alpha.m();
    match lambda.nth_root(alpha.n() as u32) {
        Some(root) => {
            // lambda^(k alpha) = root^(k m), exact.
            let map: BTreeMap<i64, Rat> = coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| {
                    let k = k as i64;
                    (k * alpha.m(), c * root.pow(-k * alpha.m()))
                })
                .collect();
            let scaled = PuiseuxSeries::from_raw(alpha.n(), map, window);
            let lambda_alpha = root.pow(alpha.m());
            let residual = alpha_deriv(&scaled, alpha)
                .scale(&lambda_alpha)
                .sub(&scaled);
            Ok(ScaledEResidual::Exact(residual))
        }
        None => {
            let lam = lambda.to_f64();
            let a = alpha.as_rat().to_f64();
            let map: BTreeMap<i64, f64> = coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| {
                    let scale = lam.powf(-(k as f64) * a);
                    (k as i64 * alpha.m(), c.to_f64() * scale)
                })
                .collect();
            let scaled = FloatPuiseux::from_raw(alpha.n(), map, window);
            let residual = scaled.alpha_deriv(alpha).scale(lam.powf(a)).sub(&scaled);
            Ok(ScaledEResidual::Numeric(residual))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    /// `C_alpha`, the alpha-cosine.
    Cos,
    /// `S_alpha`, the alpha-sine.
    Sin,
}

/// `cos/sin(pi * (k m) / (2 n))`, snapped to exact 0/+-1 when the angle is
/// a multiple of pi/2.
fn angle_factor(kind: TrigKind, alpha: AlphaBasis, k: i64) -> f64 {
    let (m, n) = (alpha.m(), alpha.n());
    let km = k * m;
    if km % n == 0 {
        let quarter = (km / n).rem_euclid(4);
        return match (kind, quarter) {
            (TrigKind::Cos, 0) => 1.0,
            (TrigKind::Cos, 2) => -1.0,
            (TrigKind::Sin, 1) => 1.0,
            (TrigKind::Sin, 3) => -1.0,
            _ => 0.0,
        };
    }
    let theta = PI * km as f64 / (2.0 * n as f64);
    match kind {
        TrigKind::Cos => theta.cos(),
        TrigKind::Sin => theta.sin(),
    }
}

/// Alpha-trigonometric series with `terms` coefficients on the
/// `z^(k alpha)` lattice; coefficients are `f64`.
pub fn trig_alpha_series(kind: TrigKind, alpha: AlphaBasis, terms: usize) -> FloatPuiseux {
    assert!(terms >= 1, "need at least one term");
    let map: BTreeMap<i64, f64> = e_alpha_coeffs(alpha, terms)
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            (
                k as i64 * alpha.m(),
                angle_factor(kind, alpha, k as i64) * c.to_f64(),
            )
        })
        .collect();
    FloatPuiseux::from_raw(alpha.n(), map, terms as i64 * alpha.m())
}

/// Closed-form value of `C_alpha` or `S_alpha` at `z > 0`.
pub fn trig_alpha_eval(kind: TrigKind, alpha: AlphaBasis, z: EvalPoint) -> f64 {
    let a = alpha.as_rat().to_f64();
    let u = z.value().powf(a) / a;
    let half = a * PI / 2.0;
    let modulus = (u * half.cos()).exp();
    let phase = u * half.sin();
    match kind {
        TrigKind::Cos => modulus * phase.cos(),
        TrigKind::Sin => modulus * phase.sin(),
    }
}

/// `E_alpha(z1 + z2) - E_alpha(z1) E_alpha(z2)` by closed-form evaluation;
/// nonzero for `0 < alpha < 1`, identically zero at `alpha = 1`.
pub fn semigroup_defect(alpha: AlphaBasis, z1: EvalPoint, z2: EvalPoint) -> f64 {
    let sum = EvalPoint::new(z1.value() + z2.value()).expect("positive sum");
    e_alpha_eval(alpha, sum) - e_alpha_eval(alpha, z1) * e_alpha_eval(alpha, z2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(m: i64, n: i64) -> AlphaBasis {
        AlphaBasis::new(m, n).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn ev(z: f64) -> EvalPoint {
        EvalPoint::new(z).unwrap()
    }

    #[test]
    fn e_series_alpha_one_is_exp() {
        let e = e_alpha_series(a(1, 1), 6);
        let mut fact = Rat::one();
        for k in 0..6i64 {
            if k > 0 {
                fact = fact * Rat::new(1, k);
            }
            assert_eq!(e.coeff(&Rat::from_int(k)), fact);
        }
    }

    #[test]
    fn e_series_alpha_half_coefficients() {
        // coefficients 2^k / k! on the z^(k/2) lattice
        let e = e_alpha_series(a(1, 2), 5);
        assert_eq!(e.coeff(&r(0, 1)), r(1, 1));
        assert_eq!(e.coeff(&r(1, 2)), r(2, 1));
        assert_eq!(e.coeff(&r(1, 1)), r(2, 1));
        assert_eq!(e.coeff(&r(3, 2)), r(4, 3));
        assert_eq!(e.truncation_order(), r(5, 2));
    }

    #[test]
    fn e_constant_term_is_one() {
        for basis in [a(1, 2), a(2, 3), a(3, 5), a(1, 1)] {
            assert_eq!(e_alpha_series(basis, 3).coeff(&Rat::zero()), Rat::one());
        }
    }

    #[test]
    fn e_satisfies_its_defining_equation() {
        for basis in [a(1, 2), a(1, 3), a(2, 3), a(1, 1)] {
            let e = e_alpha_series(basis, 20);
            let de = alpha_deriv(&e, basis);
            assert!(de.agrees_with(&e), "basis {basis}");
        }
    }

    #[test]
    fn e_eval_closed_form() {
        assert!((e_alpha_eval(a(1, 2), ev(1.0)) - 2.0f64.exp()).abs() < 1e-12);
        assert!((e_alpha_eval(a(1, 1), ev(1.0)) - 1.0f64.exp()).abs() < 1e-12);
        assert!((e_alpha_eval(a(1, 2), ev(4.0)) - 4.0f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn e_eval_matches_series_sum() {
        let e = e_alpha_series(a(1, 2), 30);
        let z = ev(1.0);
        assert!((e.eval(z) - e_alpha_eval(a(1, 2), z)).abs() < 1e-10);
    }

    #[test]
    fn scaled_eigen_equation_exact_cases() {
        // lambda = 1: the defining equation itself
        match scaled_e_alpha_residual(a(1, 2), &r(1, 1), 12).unwrap() {
            ScaledEResidual::Exact(res) => assert!(res.is_zero()),
            _ => panic!("expected exact branch"),
        }
        // lambda = 4 with alpha = 1/2: sqrt(4) rational
        match scaled_e_alpha_residual(a(1, 2), &r(4, 1), 12).unwrap() {
            ScaledEResidual::Exact(res) => assert!(res.is_zero()),
            _ => panic!("expected exact branch"),
        }
        // ordinary exponential, any scale
        match scaled_e_alpha_residual(a(1, 1), &r(7, 3), 12).unwrap() {
            ScaledEResidual::Exact(res) => assert!(res.is_zero()),
            _ => panic!("expected exact branch"),
        }
    }

    #[test]
    fn scaled_eigen_equation_numeric_branch() {
        match scaled_e_alpha_residual(a(1, 2), &r(2, 1), 12).unwrap() {
            ScaledEResidual::Numeric(res) => {
                assert!(res.max_abs_coeff() < 1e-12);
            }
            _ => panic!("expected numeric branch"),
        }
        assert!(matches!(
            scaled_e_alpha_residual(a(1, 2), &r(-1, 1), 4),
            Err(CalcError::NonpositiveScale(_))
        ));
    }

    #[test]
    fn trig_alpha_one_reduces_to_cos_sin() {
        let c = trig_alpha_series(TrigKind::Cos, a(1, 1), 6);
        assert_eq!(c.coeff(&r(0, 1)), 1.0);
        assert_eq!(c.coeff(&r(1, 1)), 0.0);
        assert_eq!(c.coeff(&r(2, 1)), -0.5);
        assert_eq!(c.coeff(&r(4, 1)), 1.0 / 24.0);
        let s = trig_alpha_series(TrigKind::Sin, a(1, 1), 6);
        assert_eq!(s.coeff(&r(0, 1)), 0.0);
        assert_eq!(s.coeff(&r(1, 1)), 1.0);
        assert_eq!(s.coeff(&r(3, 1)), -1.0 / 6.0);
    }

    #[test]
    fn trig_constant_terms() {
        for basis in [a(1, 2), a(1, 3), a(2, 3), a(3, 5)] {
            let c = trig_alpha_series(TrigKind::Cos, basis, 4);
            assert_eq!(c.coeff(&r(0, 1)), 1.0);
            let s = trig_alpha_series(TrigKind::Sin, basis, 4);
            assert_eq!(s.coeff(&r(0, 1)), 0.0);
        }
    }

    // Independent oracle: real/imaginary parts of E_alpha(i z) built from
    // repeated complex multiplication by the unit e^(i alpha pi / 2).
    fn complex_exponential_coeffs(alpha: AlphaBasis, terms: usize) -> Vec<(f64, f64)> {
        let half = alpha.as_rat().to_f64() * PI / 2.0;
        let (ur, ui) = (half.cos(), half.sin());
        let base = e_alpha_coeffs(alpha, terms);
        let mut out = Vec::with_capacity(terms);
        let (mut pr, mut pi_) = (1.0f64, 0.0f64);
        for (k, c) in base.iter().enumerate() {
            if k > 0 {
                let (nr, ni) = (pr * ur - pi_ * ui, pr * ui + pi_ * ur);
                pr = nr;
                pi_ = ni;
            }
            let c = c.to_f64();
            out.push((pr * c, pi_ * c));
        }
        out
    }

    #[test]
    fn trig_series_match_complex_exponential_oracle() {
        for basis in [a(1, 2), a(1, 3), a(2, 3)] {
            let terms = 12;
            let c = trig_alpha_series(TrigKind::Cos, basis, terms);
            let s = trig_alpha_series(TrigKind::Sin, basis, terms);
            for (k, (re, im)) in complex_exponential_coeffs(basis, terms).iter().enumerate() {
                let e = Rat::new(k as i64 * basis.m(), basis.n());
                assert!((c.coeff(&e) - re).abs() < 1e-12, "cos k={k} basis {basis}");
                assert!((s.coeff(&e) - im).abs() < 1e-12, "sin k={k} basis {basis}");
            }
        }
    }

    #[test]
    fn trig_alpha_half_leading_terms() {
        let c = trig_alpha_series(TrigKind::Cos, a(1, 2), 5);
        let sqrt2 = 2.0f64.sqrt();
        assert!((c.coeff(&r(1, 2)) - sqrt2).abs() < 1e-15);
        assert_eq!(c.coeff(&r(1, 1)), 0.0); // exact zero by the angle snap
        assert!((c.coeff(&r(3, 2)) + 2.0 * sqrt2 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn deriv_advances_the_rotation() {
        // a/az C-series has coefficients cos(alpha pi (k+1)/2)/(k! alpha^k):
        // the same series with the angle advanced one increment.
        for basis in [a(1, 2), a(2, 3), a(3, 5)] {
            let terms = 10;
            let c = trig_alpha_series(TrigKind::Cos, basis, terms);
            let s = trig_alpha_series(TrigKind::Sin, basis, terms);
            let base = e_alpha_coeffs(basis, terms);
            let dc = c.alpha_deriv(basis);
            let ds = s.alpha_deriv(basis);
            for k in 0..terms - 1 {
                let e = Rat::new(k as i64 * basis.m(), basis.n());
                let expect_c =
                    angle_factor(TrigKind::Cos, basis, k as i64 + 1) * base[k].to_f64();
                let expect_s =
                    angle_factor(TrigKind::Sin, basis, k as i64 + 1) * base[k].to_f64();
                assert!((dc.coeff(&e) - expect_c).abs() < 1e-12);
                assert!((ds.coeff(&e) - expect_s).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trig_eval_closed_forms() {
        assert!((trig_alpha_eval(TrigKind::Cos, a(1, 1), ev(PI)) + 1.0).abs() < 1e-12);
        // frozen from 30-digit evaluation of exp(sqrt 2) cos/sin(sqrt 2)
        let c = trig_alpha_eval(TrigKind::Cos, a(1, 2), ev(1.0));
        assert!((c - 0.641435461562485784).abs() < 1e-12);
        let s = trig_alpha_eval(TrigKind::Sin, a(1, 2), ev(1.0));
        assert!((s - 4.062928651503496132).abs() < 1e-12);
    }

    #[test]
    fn trig_eval_matches_series() {
        for basis in [a(1, 2), a(1, 3), a(2, 3)] {
            for z in [0.1, 0.5, 1.0] {
                let z = ev(z);
                let c40 = trig_alpha_series(TrigKind::Cos, basis, 40);
                let s40 = trig_alpha_series(TrigKind::Sin, basis, 40);
                assert!((c40.eval(z) - trig_alpha_eval(TrigKind::Cos, basis, z)).abs() < 1e-8);
                assert!((s40.eval(z) - trig_alpha_eval(TrigKind::Sin, basis, z)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn euler_modulus_identity() {
        for basis in [a(1, 2), a(1, 3), a(2, 3)] {
            for z in [0.25, 1.0, 2.0] {
                let z = ev(z);
                let c = trig_alpha_eval(TrigKind::Cos, basis, z);
                let s = trig_alpha_eval(TrigKind::Sin, basis, z);
                let a_f = basis.as_rat().to_f64();
                let u = z.value().powf(a_f) / a_f;
                let expected = (2.0 * u * (a_f * PI / 2.0).cos()).exp();
                assert!((c * c + s * s - expected).abs() < 1e-10 * expected.max(1.0));
            }
        }
    }

    #[test]
    fn semigroup_defect_values() {
        // ordinary exponential: exact semigroup
        assert!(semigroup_defect(a(1, 1), ev(1.0), ev(2.0)).abs() < 1e-10);
        // frozen from 30-digit evaluation of exp(2 sqrt 2) - exp(4)
        let d = semigroup_defect(a(1, 2), ev(1.0), ev(1.0));
        assert!((d - (-37.6793213545863424)).abs() < 1e-10);
        // continuity: defect -> 0 as z2 -> 0+ (like 2 sqrt(z2))
        let coarse = semigroup_defect(a(1, 2), ev(1.0), ev(1e-6));
        let fine = semigroup_defect(a(1, 2), ev(1.0), ev(1e-12));
        assert!(fine.abs() < coarse.abs());
        assert!(fine.abs() < 1e-4);
    }
}
