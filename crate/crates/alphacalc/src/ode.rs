//! Linear constant-coefficient alpha-differential equations.
//!
//! An [`OdeSpec`] describes `sum_l a_l (a^l/az^l) f = h` for a basis
//! `alpha = m/n` and a forcing series on the `z^(k/n)` lattice. Substituting
//! the regular ansatz `f = sum c_k z^(k/n)` and equating exponents gives,
//! for every `j >= 0`,
//!
//! `sum_{l=0}^M a_l c_{j+lm} prod_{i=0}^{l-1} (j + lm - im)/n = h_j`,
//!
//! a recurrence whose leading product never vanishes for `j >= 0`, so each
//! `c_{j+Mm}` is determined by the `M*m` free leading coefficients.
//!
//! For `m = 1` the same coefficients solve an ordinary "co-joint" equation
//! with `a~_l = a_l alpha^l`: [`cojoint_map`] performs the mapping and
//! [`cojoint_taylor_coeffs`] solves the ordinary equation by its own
//! factorial recurrence, so the two routes cross-check each other.
//!
//! For `m > 1` the `j >= 0` recurrence is still well defined, but the plug-in
//! residual also samples exponents `j/n < 0`, where it vanishes only when
//! the initial data is supported on the `m`-lattice (`c_k = 0` for
//! `0 < k < M*m` with `m` not dividing `k`). [`indicial_residual_recurrence`]
//! documents this; [`solve_second_order`] always works on the `z^(k alpha)`
//! lattice and its residual vanishes identically for every basis.

use crate::alpha::AlphaBasis;
use crate::calculus::{alpha_deriv, alpha_deriv_iter};
use crate::error::{CalcError, Result};
use crate::puiseux::{EvalPoint, PuiseuxSeries};
use crate::rat::Rat;

/// `sum_{l=0}^M a_l (a^l/az^l) f = h` with exact rational coefficients,
/// `a_M != 0`, and a forcing series of nonnegative order whose ramification
/// divides the basis denominator.
#[derive(Clone, Debug)]
pub struct OdeSpec {
    coeffs: Vec<Rat>,
    forcing: PuiseuxSeries,
    alpha: AlphaBasis,
}

impl OdeSpec {
    pub fn new(coeffs: Vec<Rat>, forcing: PuiseuxSeries, alpha: AlphaBasis) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(CalcError::Invalid("equation order must be at least 1".into()));
        }
        match coeffs.last() {
            Some(a) if !a.is_zero() => {}
            _ => return Err(CalcError::Invalid("leading coefficient a_M must be nonzero".into())),
        }
        if alpha.n() % forcing.ramification() != 0 {
            return Err(CalcError::Invalid(format!(
                "forcing ramification {} does not divide the basis denominator {}",
                forcing.ramification(),
                alpha.n()
            )));
        }
        if let Some(order) = forcing.order() {
            if order.is_negative() {
                return Err(CalcError::Invalid(
                    "forcing must have nonnegative order".into(),
                ));
            }
        }
        Ok(OdeSpec {
            coeffs,
            forcing,
            alpha,
        })
    }

    /// The homogeneous damped-oscillator equation
    /// `a^2 f + 2 d (a f) + omega^2 f = 0`, with the forcing window wide
    /// enough for `terms` solution coefficients.
    pub fn second_order(params: &SecondOrderParams, alpha: AlphaBasis, terms: usize) -> Self {
        let window = Rat::new(terms as i64 * alpha.m(), alpha.n());
        let two_d = Rat::from_int(2) * params.d();
        let omega_sq = params.omega().pow(2);
        OdeSpec::new(
            vec![omega_sq, two_d, Rat::one()],
            PuiseuxSeries::zero(&window),
            alpha,
        )
        .expect("valid oscillator spec")
    }

    /// Equation order `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn forcing(&self) -> &PuiseuxSeries {
        &self.forcing
    }

    pub fn alpha(&self) -> AlphaBasis {
        self.alpha
    }

    /// Number of free leading coefficients, `M * m`.
    pub fn initial_len(&self) -> usize {
        self.order() * self.alpha.m() as usize
    }
}

/// The `M*m` free leading Puiseux coefficients `c_0 .. c_{M m - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialData(Vec<Rat>);

impl InitialData {
    pub fn new(values: Vec<Rat>) -> Self {
        InitialData(values)
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `prod_{i=0}^{l-1} (j + l m - i m) / n` — the factor the `l`-fold
/// derivative puts in front of `c_{j+lm}` at output exponent `j/n`.
fn falling_product(j: i64, l: usize, alpha: AlphaBasis) -> Rat {
    let mut p = Rat::one();
    for i in 0..l as i64 {
        p *= &Rat::new(j + (l as i64) * alpha.m() - i * alpha.m(), alpha.n());
    }
    p
}

/// Solves the indicial recurrence for all coefficients below the truncation
/// index `k_trunc` (on the `1/n` lattice), starting from the free leading
/// block. Requires `k_trunc > M*m` and exactly `M*m` initial values.
pub fn indicial_residual_recurrence(
    spec: &OdeSpec,
    init: &InitialData,
    k_trunc: i64,
) -> Result<PuiseuxSeries> {
    let head = spec.initial_len();
    if init.len() != head {
        return Err(CalcError::Invalid(format!(
            "initial data must have length {head}, got {}",
            init.len()
        )));
    }
    if k_trunc <= head as i64 {
        return Err(CalcError::Invalid(format!(
            "truncation index {k_trunc} must exceed M*m = {head}"
        )));
    }
    if k_trunc > 1_000_000 {
        return Err(CalcError::Invalid("truncation index too large".into()));
    }
    let (m, n) = (spec.alpha.m(), spec.alpha.n());
    let big_m = spec.order();
    let count = k_trunc as usize;
    let mut c: Vec<Rat> = Vec::with_capacity(count);
    c.extend(init.values().iter().cloned());
    let lead = &spec.coeffs[big_m];
    for j in 0.. {
        let target = j as usize + head;
        if target >= count {
            break;
        }
        let h_j = spec.forcing.coeff(&Rat::new(j, n));
        let mut acc = h_j;
        for l in 0..big_m {
            let idx = j as usize + l * m as usize;
            acc -= &(spec.coeffs[l].clone() * &c[idx] * falling_product(j, l, spec.alpha));
        }
        let denom = lead.clone() * falling_product(j, big_m, spec.alpha);
        debug_assert!(!denom.is_zero(), "leading product vanished at j = {j}");
        c.push(acc / denom);
    }
    let terms = c
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k as i64, v))
        .collect();
    Ok(PuiseuxSeries::from_raw(n, terms, k_trunc))
}

/// Plug-in check: `sum_l a_l (a^l/az^l) f - h`, truncated to the window
/// where every term is exact.
pub fn residual(spec: &OdeSpec, f: &PuiseuxSeries) -> PuiseuxSeries {
    let mut acc: Option<PuiseuxSeries> = None;
    for (l, a_l) in spec.coeffs.iter().enumerate() {
        let term = alpha_deriv_iter(f, spec.alpha, l as u32).scale(a_l);
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    acc.expect("at least two coefficients").sub(&spec.forcing)
}

/// The ordinary equation `sum_l a~_l F^(l) = H` carrying the same
/// coefficient stream as an alpha-equation with `m = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CojointSpec {
    coeffs: Vec<Rat>,
    forcing: PuiseuxSeries,
}

impl CojointSpec {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn forcing(&self) -> &PuiseuxSeries {
        &self.forcing
    }
}

/// Normalization of the co-joint coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CojointScaling {
    /// `a~_l = a_l alpha^l`: the Taylor coefficients of the co-joint
    /// solution coincide index-for-index with the Puiseux coefficients of
    /// the alpha-solution, forcing included.
    CoefficientMatched,
    /// `a~_l = a_l alpha^(l-1)`: every coefficient of the matched form
    /// divided by `alpha`. Same solution set for zero forcing; kept as the
    /// alternative global normalization.
    AlphaShifted,
}

/// Maps an alpha-equation with basis `1/n` to its co-joint ordinary
/// equation under the matched scaling.
pub fn cojoint_map(spec: &OdeSpec) -> Result<CojointSpec> {
    cojoint_map_with_scaling(spec, CojointScaling::CoefficientMatched)
}

pub fn cojoint_map_with_scaling(
    spec: &OdeSpec,
    scaling: CojointScaling,
) -> Result<CojointSpec> {
    if spec.alpha.m() != 1 {
        return Err(CalcError::CojointBasis(spec.alpha.as_rat()));
    }
    let alpha = spec.alpha.as_rat();
    let coeffs = spec
        .coeffs
        .iter()
        .enumerate()
        .map(|(l, a)| {
            let power = match scaling {
                CojointScaling::CoefficientMatched => alpha.pow(l as i64),
                CojointScaling::AlphaShifted => alpha.pow(l as i64 - 1),
            };
            a * &power
        })
        .collect();
    // H_k = h_k: same coefficient stream reread on the integer lattice.
    let n = spec.alpha.n();
    let k_trunc =
        (spec.forcing.truncation_order() * Rat::from_int(n)).numer_i64().ok_or_else(|| {
            CalcError::Invalid("forcing window out of range".into())
        })?;
    let terms = (0..k_trunc.max(0))
        .filter_map(|k| {
            let c = spec.forcing.coeff(&Rat::new(k, n));
            (!c.is_zero()).then_some((k, c))
        })
        .collect();
    let forcing = PuiseuxSeries::from_raw(1, terms, k_trunc);
    Ok(CojointSpec { coeffs, forcing })
}

/// Taylor coefficients `C_0..C_{count-1}` of the co-joint solution with
/// leading data `C_0..C_{M-1}`, solved by the ordinary factorial
/// recurrence `sum_l a~_l C_{j+l} (j+1)...(j+l) = H_j`.
pub fn cojoint_taylor_coeffs(
    cj: &CojointSpec,
    init: &[Rat],
    count: usize,
) -> Result<Vec<Rat>> {
    let big_m = cj.order();
    if init.len() != big_m {
        return Err(CalcError::Invalid(format!(
            "co-joint initial data must have length {big_m}, got {}",
            init.len()
        )));
    }
    if count < big_m {
        return Err(CalcError::Invalid("count below equation order".into()));
    }
    let rising = |j: usize, l: usize| -> Rat {
        let mut p = Rat::one();
        for s in 1..=l {
            p *= &Rat::from_int((j + s) as i64);
        }
        p
    };
    let mut c: Vec<Rat> = init.to_vec();
    let lead = &cj.coeffs[big_m];
    for j in 0..count.saturating_sub(big_m) {
        let h_j = cj.forcing.coeff(&Rat::from_int(j as i64));
        let mut acc = h_j;
        for l in 0..big_m {
            acc -= &(cj.coeffs[l].clone() * &c[j + l] * rising(j, l));
        }
        c.push(acc / (lead.clone() * rising(j, big_m)));
    }
    Ok(c)
}

/// Reinterprets ordinary Taylor coefficients `C_k x^k` as Puiseux
/// coefficients of `z^(k/n)`.
pub fn lift_taylor_to_puiseux(coeffs: &[Rat], n: i64) -> PuiseuxSeries {
    assert!(n >= 1);
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| (k as i64, c.clone()))
        .collect();
    PuiseuxSeries::from_raw(n, terms, coeffs.len() as i64)
}

/// Damping/frequency pair of the second-order equation
/// `a^2 f + 2 d (a f) + omega^2 f = 0` with `omega != 0`.
///
/// The radicals `nu = sqrt(omega^2 - d^2)` (oscillatory branch) and
/// `p = sqrt(d^2 - omega^2)` enter only the closed-form evaluation; the
/// shift `q = -d + p` appears in the derivation of the coefficient formula
/// and is carried for traceability, no solver consumes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderParams {
    d: Rat,
    omega: Rat,
}

impl SecondOrderParams {
    pub fn new(d: Rat, omega: Rat) -> Result<Self> {
        if omega.is_zero() {
            return Err(CalcError::Invalid("omega must be nonzero".into()));
        }
        Ok(SecondOrderParams { d, omega })
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    pub fn omega(&self) -> &Rat {
        &self.omega
    }

    /// `omega^2 - d^2`, exact.
    pub fn nu_squared(&self) -> Rat {
        self.omega.pow(2) - self.d.pow(2)
    }

    /// `d^2 - omega^2`, exact.
    pub fn p_squared(&self) -> Rat {
        -self.nu_squared()
    }

    pub fn is_underdamped(&self) -> bool {
        !self.nu_squared().is_negative() && !self.nu_squared().is_zero()
    }

    /// `nu = sqrt(omega^2 - d^2)` when real.
    pub fn nu(&self) -> Option<f64> {
        let v = self.nu_squared();
        (!v.is_negative() && !v.is_zero()).then(|| v.to_f64().sqrt())
    }

    /// `p = sqrt(d^2 - omega^2)` when real.
    pub fn p(&self) -> Option<f64> {
        let v = self.p_squared();
        (!v.is_negative()).then(|| v.to_f64().sqrt())
    }

    /// `q = -d + p` when `p` is real; derivation bookkeeping only.
    pub fn q(&self) -> Option<f64> {
        self.p().map(|p| p - self.d.to_f64())
    }
}

/// Series solution of the damped-oscillator equation on the `z^(k alpha)`
/// lattice: leading coefficients `(c0, c1)`, the rest from
/// `alpha^2 (k+1)(k+2) c_{k+2} + 2 d alpha (k+1) c_{k+1} + omega^2 c_k = 0`.
pub fn solve_second_order(
    params: &SecondOrderParams,
    alpha: AlphaBasis,
    c0: &Rat,
    c1: &Rat,
    terms: usize,
) -> Result<PuiseuxSeries> {
    if terms <= 2 {
        return Err(CalcError::Invalid("need more than two coefficients".into()));
    }
    let a = alpha.as_rat();
    let a_sq = a.pow(2);
    let two_d_a = Rat::from_int(2) * params.d() * &a;
    let omega_sq = params.omega().pow(2);
    let mut c: Vec<Rat> = vec![c0.clone(), c1.clone()];
    for k in 0..terms - 2 {
        let k1 = Rat::from_int(k as i64 + 1);
        let k2 = Rat::from_int(k as i64 + 2);
        let value = -((two_d_a.clone() * &k1 * &c[k + 1]) + (omega_sq.clone() * &c[k]))
            / (a_sq.clone() * &k1 * &k2);
        c.push(value);
    }
    let map = c
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k as i64 * alpha.m(), v))
        .collect();
    Ok(PuiseuxSeries::from_raw(
        alpha.n(),
        map,
        terms as i64 * alpha.m(),
    ))
}

/// The four closed-form building blocks of the oscillatory branch: the
/// solution is `f = c0 f0 + c1 f1` and its alpha-derivative
/// `g = c0 g0 + c1 g1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionPart {
    F0,
    F1,
    G0,
    G1,
}

/// Evaluates the closed forms of the underdamped branch at `z > 0`. With
/// `u = z^alpha/alpha`, `E = exp(-d u)` and `theta = nu u`:
///
/// * `f0 = E (cos theta + (d/nu) sin theta)`, `f0(0+) = 1`
/// * `f1 = (alpha/nu) E sin theta`, `f1(0+) = 0`
/// * `g0 = -(omega^2/nu) E sin theta`, `g0(0+) = 0`
/// * `g1 = (alpha/nu) E (nu cos theta - d sin theta)`, `g1(0+) = alpha`
pub fn second_order_closed_eval(
    params: &SecondOrderParams,
    alpha: AlphaBasis,
    part: SolutionPart,
    z: EvalPoint,
) -> Result<f64> {
    let nu = params.nu().ok_or(CalcError::Overdamped)?;
    let a = alpha.as_rat().to_f64();
    let d = params.d().to_f64();
    let omega_sq = params.omega().pow(2).to_f64();
    let u = z.value().powf(a) / a;
    let envelope = (-d * u).exp();
    let theta = nu * u;
    let value = match part {
        SolutionPart::F0 => envelope * (theta.cos() + (d / nu) * theta.sin()),
        SolutionPart::F1 => (a / nu) * envelope * theta.sin(),
        SolutionPart::G0 => -(omega_sq / nu) * envelope * theta.sin(),
        SolutionPart::G1 => (a / nu) * envelope * (nu * theta.cos() - d * theta.sin()),
    };
    Ok(value)
}
