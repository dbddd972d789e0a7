//! Alpha-differential geometry over multivariate Puiseux coefficients.
//!
//! Vector fields and connection components are multivariate Puiseux series
//! in the coordinates; derivatives are alpha-partials throughout, so at
//! `alpha = 1` everything reduces to the classical integer-calculus
//! objects. Tensor indices are 1-based in the public API.
//!
//! The connection is stored symmetrized (`gamma^i_jk = gamma^i_kj` by
//! construction), which makes the torsion of every constructible connection
//! vanish; [`torsion_raw`] keeps the subtraction formula exercisable on
//! unsymmetrized component arrays.

use crate::alpha::AlphaBasis;
use crate::calculus::{alpha_deriv, alpha_partial};
use crate::error::{CalcError, Result};
use crate::multi::MultiPuiseux;
use crate::poly::{poly_from_multi, Poly};
use crate::puiseux::PuiseuxSeries;
use crate::rat::Rat;

/// A vector field: one multivariate Puiseux component per coordinate.
/// Components are tightened to a shared truncation window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<MultiPuiseux>,
}

impl VectorField {
    pub fn new(components: Vec<MultiPuiseux>) -> Result<Self> {
        let dim = components.len();
        if dim == 0 {
            return Err(CalcError::Invalid("vector field needs dimension >= 1".into()));
        }
        for c in &components {
            if c.num_vars() != dim {
                return Err(CalcError::DimensionMismatch(c.num_vars(), dim));
            }
        }
        let window = shared_window(&components);
        let components = components
            .iter()
            .map(|c| c.truncated_to_orders(&window))
            .collect::<Result<_>>()?;
        Ok(VectorField { components })
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    /// Component `V^i`, `i` 1-based.
    pub fn component(&self, i: usize) -> &MultiPuiseux {
        assert!(i >= 1 && i <= self.components.len(), "index out of range");
        &self.components[i - 1]
    }

    pub fn components(&self) -> &[MultiPuiseux] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// `f V`: every component multiplied by the scalar Puiseux function.
    pub fn scaled_by(&self, f: &MultiPuiseux) -> Result<VectorField> {
        let components = self
            .components
            .iter()
            .map(|c| c.mul(f))
            .collect::<Result<_>>()?;
        VectorField::new(components)
    }
}

/// Per-axis minimum of the truncation orders over a component list.
fn shared_window(components: &[MultiPuiseux]) -> Vec<Rat> {
    let mut window = components[0].truncation_orders();
    for c in &components[1..] {
        for (w, o) in window.iter_mut().zip(c.truncation_orders()) {
            if o < *w {
                *w = o;
            }
        }
    }
    window
}

/// The symmetric alpha-affine connection `gamma^i_jk = gamma^i_kj`: one
/// multivariate Puiseux component per `(i, j <= k)`, missing entries zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionField {
    dim: usize,
    // upper index major, then the (j <= k) triangle
    components: Vec<MultiPuiseux>,
}

impl ConnectionField {
    /// Builds from `(i, j, k, series)` entries with 1-based indices. The
    /// lower pair is symmetrized (`(j, k)` and `(k, j)` address one slot);
    /// listing a slot twice is rejected. All components are tightened to a
    /// shared window.
    pub fn new(dim: usize, entries: Vec<(usize, usize, usize, MultiPuiseux)>) -> Result<Self> {
        if dim == 0 {
            return Err(CalcError::Invalid("connection needs dimension >= 1".into()));
        }
        if entries.is_empty() {
            return Err(CalcError::Invalid(
                "connection needs at least one component; use flat() for zero".into(),
            ));
        }
        let tri = dim * (dim + 1) / 2;
        let mut slots: Vec<Option<MultiPuiseux>> = vec![None; dim * tri];
        for (i, j, k, series) in entries {
            for idx in [i, j, k] {
                if idx == 0 || idx > dim {
                    return Err(CalcError::VariableIndex { index: idx, dim });
                }
            }
            if series.num_vars() != dim {
                return Err(CalcError::DimensionMismatch(series.num_vars(), dim));
            }
            let slot = slot_index(dim, i - 1, j - 1, k - 1);
            if slots[slot].is_some() {
                return Err(CalcError::Invalid(format!(
                    "component ({i},{j},{k}) listed twice (lower indices are symmetrized)"
                )));
            }
            slots[slot] = Some(series);
        }
        let given: Vec<&MultiPuiseux> = slots.iter().flatten().collect();
        let window = shared_window_refs(&given);
        let zero = MultiPuiseux::zero(dim, &window)?;
        let components = slots
            .into_iter()
            .map(|s| match s {
                Some(series) => series.truncated_to_orders(&window),
                None => Ok(zero.clone()),
            })
            .collect::<Result<_>>()?;
        Ok(ConnectionField { dim, components })
    }

    /// The zero (flat) connection on the given window.
    pub fn flat(dim: usize, truncation_orders: &[Rat]) -> Result<Self> {
        if truncation_orders.len() != dim {
            return Err(CalcError::DimensionMismatch(truncation_orders.len(), dim));
        }
        let zero = MultiPuiseux::zero(dim, truncation_orders)?;
        let tri = dim * (dim + 1) / 2;
        Ok(ConnectionField {
            dim,
            components: vec![zero; dim * tri],
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// `gamma^i_jk` with 1-based indices; the lower pair is symmetric.
    pub fn component(&self, i: usize, j: usize, k: usize) -> &MultiPuiseux {
        assert!(
            i >= 1 && i <= self.dim && j >= 1 && j <= self.dim && k >= 1 && k <= self.dim,
            "index out of range"
        );
        &self.components[slot_index(self.dim, i - 1, j - 1, k - 1)]
    }
}

fn shared_window_refs(components: &[&MultiPuiseux]) -> Vec<Rat> {
    let mut window = components[0].truncation_orders();
    for c in &components[1..] {
        for (w, o) in window.iter_mut().zip(c.truncation_orders()) {
            if o < *w {
                *w = o;
            }
        }
    }
    window
}

fn slot_index(dim: usize, upper: usize, j: usize, k: usize) -> usize {
    let (j, k) = if j <= k { (j, k) } else { (k, j) };
    let tri = dim * (dim + 1) / 2;
    upper * tri + (j * dim - j * (j + 1) / 2 + k)
}

/// A curve: one univariate Puiseux coordinate function per dimension, in
/// the curve parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSeries {
    coords: Vec<PuiseuxSeries>,
}

impl CurveSeries {
    pub fn new(coords: Vec<PuiseuxSeries>) -> Result<Self> {
        if coords.is_empty() {
            return Err(CalcError::Invalid("curve needs dimension >= 1".into()));
        }
        let window = coords
            .iter()
            .map(|c| c.truncation_order())
            .min()
            .expect("nonempty");
        let coords = coords
            .iter()
            .map(|c| c.truncated_to_order(&window))
            .collect();
        Ok(CurveSeries { coords })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &PuiseuxSeries {
        assert!(i >= 1 && i <= self.coords.len(), "index out of range");
        &self.coords[i - 1]
    }

    pub fn coords(&self) -> &[PuiseuxSeries] {
        &self.coords
    }
}

/// Alpha-tangent of a curve: component-wise alpha-derivative in the
/// parameter.
pub fn tangent(curve: &CurveSeries, alpha: AlphaBasis) -> Vec<PuiseuxSeries> {
    curve
        .coords()
        .iter()
        .map(|x| alpha_deriv(x, alpha))
        .collect()
}

/// Commutator `[V, W]^j = sum_i (V^i aW^j/ax_i - W^i aV^j/ax_i)` with
/// alpha-partials.
pub fn commutator(v: &VectorField, w: &VectorField, alpha: AlphaBasis) -> Result<VectorField> {
    let dim = v.dimension();
    if w.dimension() != dim {
        return Err(CalcError::DimensionMismatch(dim, w.dimension()));
    }
    let mut components = Vec::with_capacity(dim);
    for j in 1..=dim {
        let mut acc: Option<MultiPuiseux> = None;
        for i in 1..=dim {
            let forward = v.component(i).mul(&alpha_partial(w.component(j), i, alpha)?)?;
            let backward = w.component(i).mul(&alpha_partial(v.component(j), i, alpha)?)?;
            let term = forward.sub(&backward)?;
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term)?,
            });
        }
        components.push(acc.expect("dim >= 1"));
    }
    VectorField::new(components)
}

/// Covariant derivative `(nabla_U V)^k = sum_i U^i aV^k/ax_i
/// + sum_{i,j} U^i V^j gamma^k_ji`.
pub fn covariant_deriv(
    u: &VectorField,
    v: &VectorField,
    gamma: &ConnectionField,
    alpha: AlphaBasis,
) -> Result<VectorField> {
    let dim = u.dimension();
    if v.dimension() != dim {
        return Err(CalcError::DimensionMismatch(dim, v.dimension()));
    }
    if gamma.dimension() != dim {
        return Err(CalcError::DimensionMismatch(dim, gamma.dimension()));
    }
    let mut components = Vec::with_capacity(dim);
    for k in 1..=dim {
        let mut acc: Option<MultiPuiseux> = None;
        for i in 1..=dim {
            let directional = u.component(i).mul(&alpha_partial(v.component(k), i, alpha)?)?;
            acc = Some(match acc {
                None => directional,
                Some(s) => s.add(&directional)?,
            });
            for j in 1..=dim {
                let connection = u
                    .component(i)
                    .mul(v.component(j))?
                    .mul(gamma.component(k, j, i))?;
                acc = Some(acc.unwrap().add(&connection)?);
            }
        }
        components.push(acc.expect("dim >= 1"));
    }
    VectorField::new(components)
}

/// Torsion components `T^k_ji`, 1-based indices `(k, j, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionComponents {
    dim: usize,
    components: Vec<MultiPuiseux>,
}

impl TorsionComponents {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn component(&self, k: usize, j: usize, i: usize) -> &MultiPuiseux {
        assert!(
            k >= 1 && k <= self.dim && j >= 1 && j <= self.dim && i >= 1 && i <= self.dim,
            "index out of range"
        );
        &self.components[((k - 1) * self.dim + (j - 1)) * self.dim + (i - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// `T^k_ji = gamma^k_ij - gamma^k_ji` on a full (possibly unsymmetrized)
/// component array `full[k][j][i]` of 0-based row-major layout
/// `((k * dim) + j) * dim + i`. Coordinate-basis commutators vanish, so
/// this subtraction is the whole formula.
pub fn torsion_raw(dim: usize, full: &[MultiPuiseux]) -> Result<TorsionComponents> {
    if full.len() != dim * dim * dim {
        return Err(CalcError::DimensionMismatch(full.len(), dim * dim * dim));
    }
    let at = |k: usize, j: usize, i: usize| &full[(k * dim + j) * dim + i];
    let mut components = Vec::with_capacity(dim * dim * dim);
    for k in 0..dim {
        for j in 0..dim {
            for i in 0..dim {
                components.push(at(k, i, j).sub(at(k, j, i))?);
            }
        }
    }
    Ok(TorsionComponents { dim, components })
}

/// Torsion of a symmetric connection: identically zero, still computed by
/// the subtraction formula.
pub fn torsion(gamma: &ConnectionField) -> TorsionComponents {
    let dim = gamma.dimension();
    let mut full = Vec::with_capacity(dim * dim * dim);
    for k in 1..=dim {
        for j in 1..=dim {
            for i in 1..=dim {
                full.push(gamma.component(k, j, i).clone());
            }
        }
    }
    torsion_raw(dim, &full).expect("shape by construction")
}

/// Curvature components `R^l_kij`, 1-based indices, antisymmetric in the
/// last pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannComponents {
    dim: usize,
    components: Vec<MultiPuiseux>,
}

impl RiemannComponents {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn component(&self, l: usize, k: usize, i: usize, j: usize) -> &MultiPuiseux {
        for idx in [l, k, i, j] {
            assert!(idx >= 1 && idx <= self.dim, "index out of range");
        }
        &self.components[(((l - 1) * self.dim + (k - 1)) * self.dim + (i - 1)) * self.dim + (j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Iterates `(l, k, i, j, component)` with 1-based indices.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &MultiPuiseux)> + '_ {
        let dim = self.dim;
        self.components.iter().enumerate().map(move |(idx, c)| {
            let j = idx % dim;
            let i = (idx / dim) % dim;
            let k = (idx / (dim * dim)) % dim;
            let l = idx / (dim * dim * dim);
            (l + 1, k + 1, i + 1, j + 1, c)
        })
    }
}

/// Curvature of the connection:
/// `R^l_kij = a gamma^l_kj / a x_i - a gamma^l_ki / a x_j
/// + sum_m (gamma^m_kj gamma^l_mi - gamma^m_ki gamma^l_mj)`,
/// with alpha-partials for the derivative terms. Antisymmetry in `(i, j)`
/// holds by construction and is re-verified on every call.
pub fn riemann(gamma: &ConnectionField, alpha: AlphaBasis) -> Result<RiemannComponents> {
    let dim = gamma.dimension();
    let mut components = Vec::with_capacity(dim * dim * dim * dim);
    for l in 1..=dim {
        for k in 1..=dim {
            for i in 1..=dim {
                for j in 1..=dim {
                    let mut acc = alpha_partial(gamma.component(l, k, j), i, alpha)?
                        .sub(&alpha_partial(gamma.component(l, k, i), j, alpha)?)?;
                    for m in 1..=dim {
                        let plus = gamma.component(m, k, j).mul(gamma.component(l, m, i))?;
                        let minus = gamma.component(m, k, i).mul(gamma.component(l, m, j))?;
                        acc = acc.add(&plus.sub(&minus)?)?;
                    }
                    components.push(acc);
                }
            }
        }
    }
    let out = RiemannComponents { dim, components };
    for l in 1..=dim {
        for k in 1..=dim {
            for i in 1..=dim {
                for j in 1..=dim {
                    assert!(
                        out.component(l, k, i, j) == &out.component(l, k, j, i).neg(),
                        "curvature antisymmetry violated at ({l},{k},{i},{j})"
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Residuals of the autoparallel equation
/// `a/al (a x^i/al) + sum_{j,k} gamma^i_jk(x(l)) (a x^j/al)(a x^k/al)`
/// per coordinate; the curve is an alpha-autoparallel iff all residuals
/// vanish through their windows. Connection components must be polynomial
/// in the coordinates (nonnegative integer exponents) so that the
/// composition `gamma(x(l))` is a finite exact substitution.
pub fn autoparallel_residual(
    gamma: &ConnectionField,
    curve: &CurveSeries,
    alpha: AlphaBasis,
) -> Result<Vec<PuiseuxSeries>> {
    let dim = gamma.dimension();
    if curve.dimension() != dim {
        return Err(CalcError::DimensionMismatch(curve.dimension(), dim));
    }
    let mut polys: Vec<Vec<Poly>> = Vec::with_capacity(dim);
    for i in 1..=dim {
        let mut row = Vec::new();
        for j in 1..=dim {
            for k in j..=dim {
                let label = format!("gamma^{i}_{j}{k}");
                row.push(poly_from_multi(gamma.component(i, j, k), &label)?);
            }
        }
        polys.push(row);
    }
    let velocity = tangent(curve, alpha);
    let mut residuals = Vec::with_capacity(dim);
    for i in 1..=dim {
        let mut acc = alpha_deriv(&velocity[i - 1], alpha);
        let mut tri = 0usize;
        for j in 1..=dim {
            for k in j..=dim {
                let composed = polys[i - 1][tri].eval_series(curve.coords())?;
                tri += 1;
                if composed.is_zero() {
                    continue;
                }
                let vv = velocity[j - 1].mul(&velocity[k - 1]);
                let mut term = composed.mul(&vv);
                if j != k {
                    term = term.scale(&Rat::from_int(2));
                }
                acc = acc.add(&term);
            }
        }
        residuals.push(acc);
    }
    Ok(residuals)
}
