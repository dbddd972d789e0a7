//! The alpha-derivative and alpha-integral.
//!
//! The derivative of basis `alpha` acts on a monomial by
//! `z^beta -> beta * z^(beta - alpha)`; the coefficient `beta` (rather than
//! a Gamma-function ratio) is exactly what makes the binomial Leibniz rule
//! hold, and it is the unique such choice up to a global constant. The
//! operator maps generalized Puiseux series to generalized Puiseux series
//! term by term; the exponent-zero term is annihilated.
//!
//! For contrast, [`rl_monomial_coeff`] exposes the Riemann-Liouville
//! monomial coefficient `Gamma(beta+1)/Gamma(beta-alpha+1)`, whose failure
//! to be additive in `beta` is the Leibniz defect measured by
//! [`leibniz_defect_rl`].

use std::collections::BTreeMap;

use statrs::function::gamma::gamma;

use crate::alpha::AlphaBasis;
use crate::error::{CalcError, Result};
use crate::multi::MultiPuiseux;
use crate::poly::Poly;
use crate::puiseux::PuiseuxSeries;
use crate::rat::{lcm_i64, Rat};

/// Term-wise alpha-derivative: `c z^(k/n) -> (k/n) c z^(k/n - alpha)`.
/// The truncation order drops by `alpha`.
pub fn alpha_deriv(f: &PuiseuxSeries, alpha: AlphaBasis) -> PuiseuxSeries {
    let n = lcm_i64(f.ramification(), alpha.n());
    let (_, terms, k_trunc) = f.refined_raw(n / f.ramification());
    let shift = alpha.m() * (n / alpha.n());
    let mapped: BTreeMap<i64, Rat> = terms
        .into_iter()
        .map(|(k, c)| (k - shift, c * Rat::new(k, n)))
        .collect();
    PuiseuxSeries::from_raw(n, mapped, k_trunc - shift)
}

/// The `l`-fold alpha-derivative; `l = 0` is the identity. On a monomial
/// `z^beta` the result is `prod_{i=0}^{l-1} (beta - i alpha) * z^(beta - l alpha)`.
pub fn alpha_deriv_iter(f: &PuiseuxSeries, alpha: AlphaBasis, l: u32) -> PuiseuxSeries {
    let mut out = f.clone();
    for _ in 0..l {
        out = alpha_deriv(&out, alpha);
    }
    out
}

/// Term-wise alpha-integral: `c z^beta -> c z^(beta+alpha) / (beta+alpha)`,
/// defined only when no term has `beta = -alpha`. No integration constant
/// is added; the truncation order grows by `alpha`.
pub fn alpha_integral(f: &PuiseuxSeries, alpha: AlphaBasis) -> Result<PuiseuxSeries> {
    let n = lcm_i64(f.ramification(), alpha.n());
    let (_, terms, k_trunc) = f.refined_raw(n / f.ramification());
    let shift = alpha.m() * (n / alpha.n());
    let mut mapped = BTreeMap::new();
    for (k, c) in terms {
        let target = k + shift;
        if target == 0 {
            return Err(CalcError::IntegralPole(Rat::new(k, n)));
        }
        mapped.insert(target, c * Rat::new(n, target));
    }
    Ok(PuiseuxSeries::from_raw(n, mapped, k_trunc + shift))
}

/// Alpha-partial derivative of a multivariate series in variable `j`
/// (1-based); the other exponents are untouched.
pub fn alpha_partial(f: &MultiPuiseux, j: usize, alpha: AlphaBasis) -> Result<MultiPuiseux> {
    if j == 0 || j > f.num_vars() {
        return Err(CalcError::VariableIndex {
            index: j,
            dim: f.num_vars(),
        });
    }
    let axis = j - 1;
    let n = lcm_i64(f.ramification(), alpha.n());
    let (_, terms, mut trunc, mut floor) = f.refined_raw(n / f.ramification());
    let shift = alpha.m() * (n / alpha.n());
    let mapped: BTreeMap<Vec<i64>, Rat> = terms
        .into_iter()
        .map(|(mut key, c)| {
            let k = key[axis];
            key[axis] = k - shift;
            (key, c * Rat::new(k, n))
        })
        .collect();
    trunc[axis] -= shift;
    floor[axis] -= shift;
    Ok(MultiPuiseux::from_raw(
        f.num_vars(),
        n,
        mapped,
        trunc,
        floor,
    ))
}

/// Chain rule for an ordinary polynomial `F` of `r` series arguments:
/// `a/az F(g_1,...,g_r) = sum_k (dF/du_k)(g_1,...,g_r) * a g_k/az`,
/// where `dF/du_k` is the classical polynomial partial derivative.
pub fn chain_rule_deriv(
    f: &Poly,
    args: &[PuiseuxSeries],
    alpha: AlphaBasis,
) -> Result<PuiseuxSeries> {
    if args.len() != f.num_vars() {
        return Err(CalcError::DimensionMismatch(args.len(), f.num_vars()));
    }
    let window = args
        .iter()
        .map(|a| a.truncation_order())
        .min()
        .ok_or_else(|| CalcError::Invalid("chain rule needs at least one argument".into()))?;
    let mut acc = PuiseuxSeries::zero(&window);
    for k in 0..f.num_vars() {
        let outer = f.partial(k).eval_series(args)?;
        let inner = alpha_deriv(&args[k], alpha);
        acc = acc.add(&outer.mul(&inner));
    }
    Ok(acc)
}

/// Riemann-Liouville monomial coefficient
/// `C*(beta, alpha) = Gamma(beta+1)/Gamma(beta-alpha+1)`, in double
/// precision. Requires `beta > -1` and `beta - alpha + 1` away from the
/// Gamma poles.
pub fn rl_monomial_coeff(beta: &Rat, alpha: &Rat) -> Result<f64> {
    if beta <= &Rat::from_int(-1) {
        return Err(CalcError::RlExponentRange(beta.clone()));
    }
    let arg = beta - alpha + Rat::one();
    if arg.is_integer() && arg <= Rat::zero() {
        return Err(CalcError::GammaPole(arg));
    }
    let numer = gamma((beta + &Rat::one()).to_f64());
    let denom = gamma(arg.to_f64());
    Ok(numer / denom)
}

/// The binomial-Leibniz defect of the Riemann-Liouville monomial rule:
/// `C*(b1+b2, a) - C*(b1, a) - C*(b2, a)`. Nonzero for fractional `a`.
pub fn leibniz_defect_rl(beta1: &Rat, beta2: &Rat, alpha: &Rat) -> Result<f64> {
    let joint = rl_monomial_coeff(&(beta1 + beta2), alpha)?;
    let first = rl_monomial_coeff(beta1, alpha)?;
    let second = rl_monomial_coeff(beta2, alpha)?;
    Ok(joint - first - second)
}

/// The same defect for the alpha-derivative coefficient rule
/// `C(beta) = beta`: `(b1+b2) - b1 - b2`, identically zero.
pub fn leibniz_defect_alpha(beta1: &Rat, beta2: &Rat) -> Rat {
    let joint = beta1 + beta2;
    joint - beta1.clone() - beta2.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn a(m: i64, n: i64) -> AlphaBasis {
        AlphaBasis::new(m, n).unwrap()
    }

    fn mono(e: Rat, c: Rat, order: Rat) -> PuiseuxSeries {
        PuiseuxSeries::monomial(&e, &c, &order).unwrap()
    }

    #[test]
    fn deriv_of_z_alpha_is_alpha() {
        let f = mono(r(1, 2), r(1, 1), r(2, 1));
        let df = alpha_deriv(&f, a(1, 2));
        assert_eq!(df.coeff(&Rat::zero()), r(1, 2));
        assert_eq!(df.num_terms(), 1);
        // window dropped by alpha
        assert_eq!(df.truncation_order(), r(3, 2));
    }

    #[test]
    fn deriv_of_constant_is_zero() {
        let f = PuiseuxSeries::constant(&Rat::one(), &r(2, 1));
        for basis in [a(1, 2), a(1, 3), a(1, 1)] {
            assert!(alpha_deriv(&f, basis).is_zero());
        }
    }

    #[test]
    fn deriv_monomial_rule() {
        // z^(3/2) with alpha = 1/2 -> (3/2) z
        let f = mono(r(3, 2), r(1, 1), r(3, 1));
        let df = alpha_deriv(&f, a(1, 2));
        assert_eq!(df.coeff(&r(1, 1)), r(3, 2));
    }

    #[test]
    fn iterated_deriv_telescopes() {
        // z with alpha = 1/2, twice: 1 * (1 - 1/2) = 1/2 at exponent 0
        let f = mono(r(1, 1), r(1, 1), r(3, 1));
        let d2 = alpha_deriv_iter(&f, a(1, 2), 2);
        assert_eq!(d2.coeff(&Rat::zero()), r(1, 2));

        // z^(2 alpha), three derivatives: factor beta - 2 alpha kills it
        let basis = a(3, 5);
        let g = mono(r(6, 5), r(1, 1), r(3, 1));
        assert!(alpha_deriv_iter(&g, basis, 3).is_zero());

        // l = 0 is the identity
        assert_eq!(alpha_deriv_iter(&f, a(1, 2), 0), f);
    }

    #[test]
    fn iterated_deriv_matches_product_formula() {
        let beta = r(7, 3);
        let basis = a(2, 3);
        let f = mono(beta.clone(), r(1, 1), r(4, 1));
        for l in 0..6u32 {
            let lhs = alpha_deriv_iter(&f, basis, l);
            let mut coeff = Rat::one();
            for i in 0..l {
                coeff *= &(&beta - &(basis.as_rat() * Rat::from_int(i as i64)));
            }
            let expeonent = &beta - &(basis.as_rat() * Rat::from_int(l as i64));
            if coeff.is_zero() {
                assert!(lhs.is_zero());
            } else {
                assert_eq!(lhs.coeff(&expeonent), coeff);
                assert_eq!(lhs.num_terms(), 1);
            }
        }
    }

    #[test]
    fn integral_of_constant() {
        let f = PuiseuxSeries::constant(&Rat::one(), &r(2, 1));
        let int = alpha_integral(&f, a(1, 2)).unwrap();
        assert_eq!(int.coeff(&r(1, 2)), r(2, 1));
        assert_eq!(int.truncation_order(), r(5, 2));
    }

    #[test]
    fn integral_power_rule_and_pole() {
        let f = mono(r(1, 2), r(1, 1), r(2, 1));
        let int = alpha_integral(&f, a(1, 2)).unwrap();
        assert_eq!(int.coeff(&r(1, 1)), r(1, 1));

        let bad = mono(r(-1, 2), r(1, 1), r(2, 1));
        match alpha_integral(&bad, a(1, 2)) {
            Err(CalcError::IntegralPole(e)) => assert_eq!(e, r(-1, 2)),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn fundamental_theorem_round_trip() {
        let f = PuiseuxSeries::make_series(
            &[(r(-1, 3), r(2, 1)), (r(1, 2), r(-3, 1)), (r(2, 1), r(1, 5))],
            &r(3, 1),
        )
        .unwrap();
        let basis = a(1, 2);
        let back = alpha_deriv(&alpha_integral(&f, basis).unwrap(), basis);
        assert_eq!(back, f);
        // integral of derivative restores constant-free series
        let back2 = alpha_integral(&alpha_deriv(&f, basis), basis).unwrap();
        assert_eq!(back2, f);
    }

    #[test]
    fn cauchy_split_consequence() {
        // a/az (z^(beta-eps) * z^eps) = a/az z^beta
        let basis = a(2, 3);
        for (beta, eps) in [(r(5, 2), r(1, 3)), (r(-1, 2), r(3, 4)), (r(2, 1), r(-1, 6))] {
            let order = r(6, 1);
            let f = mono(&beta - &eps, r(1, 1), order.clone());
            let g = mono(eps.clone(), r(1, 1), order.clone());
            let lhs = alpha_deriv(&f.mul(&g), basis);
            let rhs = alpha_deriv(&mono(beta, r(1, 1), order), basis);
            assert!(lhs.agrees_with(&rhs));
        }
    }

    #[test]
    fn partial_on_multivariate() {
        let orders = vec![r(3, 1), r(3, 1)];
        // F = x^(1/2) y
        let f = MultiPuiseux::make_multi(&[(vec![r(1, 2), r(1, 1)], r(1, 1))], &orders).unwrap();
        let fx = alpha_partial(&f, 1, a(1, 2)).unwrap();
        assert_eq!(fx.coeff(&[r(0, 1), r(1, 1)]), r(1, 2));

        // no x dependence -> zero
        let g = MultiPuiseux::make_multi(&[(vec![r(0, 1), r(2, 1)], r(1, 1))], &orders).unwrap();
        assert!(alpha_partial(&g, 1, a(1, 2)).unwrap().is_zero());

        // partials commute
        let h = MultiPuiseux::make_multi(&[(vec![r(1, 1), r(1, 1)], r(1, 1))], &orders).unwrap();
        let xy = alpha_partial(&alpha_partial(&h, 1, a(1, 2)).unwrap(), 2, a(1, 2)).unwrap();
        let yx = alpha_partial(&alpha_partial(&h, 2, a(1, 2)).unwrap(), 1, a(1, 2)).unwrap();
        assert_eq!(xy, yx);

        assert!(matches!(
            alpha_partial(&h, 3, a(1, 2)),
            Err(CalcError::VariableIndex { index: 3, dim: 2 })
        ));
    }

    #[test]
    fn chain_rule_consistency() {
        let basis = a(1, 2);
        // F(u) = u^2 with u = z^(1/2): both routes give a/az z = z^(1/2)
        let f = Poly::new(1, &[(vec![2], r(1, 1))]).unwrap();
        let u = mono(r(1, 2), r(1, 1), r(4, 1));
        let via_chain = chain_rule_deriv(&f, std::slice::from_ref(&u), basis).unwrap();
        let direct = alpha_deriv(&u.mul(&u), basis);
        assert!(via_chain.agrees_with(&direct));
        assert_eq!(via_chain.coeff(&r(1, 2)), r(1, 1));

        // F(u, v) = u v reproduces the product rule
        let fuv = Poly::new(2, &[(vec![1, 1], r(1, 1))]).unwrap();
        let g1 = PuiseuxSeries::make_series(
            &[(r(0, 1), r(2, 1)), (r(1, 2), r(1, 1))],
            &r(4, 1),
        )
        .unwrap();
        let g2 = PuiseuxSeries::make_series(
            &[(r(1, 3), r(1, 1)), (r(1, 1), r(-1, 1))],
            &r(4, 1),
        )
        .unwrap();
        let via_chain = chain_rule_deriv(&fuv, &[g1.clone(), g2.clone()], basis).unwrap();
        let leibniz = g2
            .mul(&alpha_deriv(&g1, basis))
            .add(&g1.mul(&alpha_deriv(&g2, basis)));
        assert!(via_chain.agrees_with(&leibniz));

        // F(u) = u is the plain derivative
        let id = Poly::coordinate(1, 0);
        let via_chain = chain_rule_deriv(&id, std::slice::from_ref(&g1), basis).unwrap();
        assert!(via_chain.agrees_with(&alpha_deriv(&g1, basis)));
    }

    #[test]
    fn rl_coefficients_match_exact_gamma_values() {
        // ordinary derivative of z
        assert!((rl_monomial_coeff(&r(1, 1), &r(1, 1)).unwrap() - 1.0).abs() < 1e-12);
        // Gamma(2)/Gamma(3/2) = 2/sqrt(pi)
        let v = rl_monomial_coeff(&r(1, 1), &r(1, 2)).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-12);
        // Gamma(1)/Gamma(1/2) = 1/sqrt(pi): nonzero, unlike the
        // alpha-derivative of a constant
        let v = rl_monomial_coeff(&r(0, 1), &r(1, 2)).unwrap();
        assert!((v - 1.0 / PI.sqrt()).abs() < 1e-12);
        assert!(v != 0.0);
    }

    #[test]
    fn rl_rejections() {
        assert!(matches!(
            rl_monomial_coeff(&r(-3, 2), &r(1, 2)),
            Err(CalcError::RlExponentRange(_))
        ));
        // beta - alpha + 1 = 0
        assert!(matches!(
            rl_monomial_coeff(&r(1, 1), &r(2, 1)),
            Err(CalcError::GammaPole(_))
        ));
    }

    #[test]
    fn rl_leibniz_defect_values() {
        // alpha = 1: ordinary derivative, no defect
        let v = leibniz_defect_rl(&r(1, 1), &r(1, 1), &r(1, 1)).unwrap();
        assert!(v.abs() < 1e-12);
        // Gamma(3)/Gamma(5/2) - 2 Gamma(2)/Gamma(3/2) = -4/(3 sqrt(pi))
        let v = leibniz_defect_rl(&r(1, 1), &r(1, 1), &r(1, 2)).unwrap();
        assert!((v - (-4.0 / (3.0 * PI.sqrt()))).abs() < 1e-12);
        // beta2 = 0: defect is -C*(0, 1/2) = -1/sqrt(pi)
        let v = leibniz_defect_rl(&r(1, 1), &r(0, 1), &r(1, 2)).unwrap();
        assert!((v - (-1.0 / PI.sqrt())).abs() < 1e-12);
        // the alpha-derivative analogue vanishes identically
        assert!(leibniz_defect_alpha(&r(1, 1), &r(1, 1)).is_zero());
        assert!(leibniz_defect_alpha(&r(7, 3), &r(-2, 5)).is_zero());
    }
}
