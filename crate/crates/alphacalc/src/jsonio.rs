//! Canonical JSON encodings.
//!
//! Rationals travel as decimal strings (arbitrary precision), never as
//! floats. Series terms are sorted by index; emission uses compact
//! `serde_json` output so identical inputs give identical bytes.

use serde::{Deserialize, Serialize};

use crate::alpha::AlphaBasis;
use crate::error::{CalcError, Result};
use crate::floatseries::FloatPuiseux;
use crate::geometry::{ConnectionField, CurveSeries};
use crate::multi::MultiPuiseux;
use crate::ode::{InitialData, OdeSpec};
use crate::puiseux::PuiseuxSeries;
use crate::rat::Rat;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesJson {
    pub ramification: i64,
    pub truncation_k: i64,
    pub terms: Vec<SeriesTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesTermJson {
    pub k: i64,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AlphaJson {
    pub m: i64,
    pub n: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OdeJson {
    pub alpha: AlphaJson,
    pub coeffs: Vec<String>,
    pub forcing: SeriesJson,
    pub init: Vec<String>,
    #[serde(rename = "K")]
    pub k: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MultiJson {
    pub dimension: usize,
    pub ramification: i64,
    pub truncation_k: Vec<i64>,
    pub terms: Vec<MultiTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MultiTermJson {
    pub k: Vec<i64>,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GammaEntryJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub series: MultiJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GeometryJson {
    pub dimension: usize,
    pub alpha: AlphaJson,
    pub gamma: Vec<GammaEntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<SeriesJson>>,
}

/// Float-coefficient series (the alpha-trigonometric family); coefficients
/// are JSON numbers, not rational strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FloatSeriesJson {
    pub ramification: i64,
    pub truncation_k: i64,
    pub terms: Vec<FloatTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FloatTermJson {
    pub k: i64,
    pub value: f64,
}

fn invalid_json(e: serde_json::Error) -> CalcError {
    CalcError::Invalid(format!("malformed JSON: {e}"))
}

fn parse_rat(s: &str) -> Result<Rat> {
    s.parse()
}

fn rat_from_parts(num: &str, den: &str) -> Result<Rat> {
    let n = num
        .trim()
        .parse()
        .map_err(|_| CalcError::Invalid(format!("bad numerator {num:?}")))?;
    let d = den
        .trim()
        .parse()
        .map_err(|_| CalcError::Invalid(format!("bad denominator {den:?}")))?;
    Rat::from_big(n, d).ok_or_else(|| CalcError::Invalid("zero denominator".into()))
}

pub fn series_to_json(f: &PuiseuxSeries) -> SeriesJson {
    SeriesJson {
        ramification: f.ramification(),
        truncation_k: f.truncation_index(),
        terms: f
            .index_terms()
            .iter()
            .map(|(k, c)| SeriesTermJson {
                k: *k,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect(),
    }
}

pub fn series_to_json_string(f: &PuiseuxSeries) -> String {
    serde_json::to_string(&series_to_json(f)).expect("series serializes")
}

pub fn series_from_json(doc: &SeriesJson) -> Result<PuiseuxSeries> {
    if doc.ramification < 1 {
        return Err(CalcError::Invalid("ramification must be >= 1".into()));
    }
    let order = Rat::new(doc.truncation_k, doc.ramification);
    let terms: Vec<(Rat, Rat)> = doc
        .terms
        .iter()
        .map(|t| {
            Ok((
                Rat::new(t.k, doc.ramification),
                rat_from_parts(&t.num, &t.den)?,
            ))
        })
        .collect::<Result<_>>()?;
    PuiseuxSeries::make_series(&terms, &order)
}

pub fn series_from_json_str(s: &str) -> Result<PuiseuxSeries> {
    let doc: SeriesJson = serde_json::from_str(s).map_err(invalid_json)?;
    series_from_json(&doc)
}

pub fn float_series_to_json(f: &FloatPuiseux) -> FloatSeriesJson {
    let k_trunc = {
        let order = f.truncation_order();
        // order = K/n reduced; re-express on the stored ramification
        (order * Rat::from_int(f.ramification()))
            .numer_i64()
            .expect("window in range")
    };
    FloatSeriesJson {
        ramification: f.ramification(),
        truncation_k: k_trunc,
        terms: f
            .terms()
            .map(|(e, v)| FloatTermJson {
                k: (e * Rat::from_int(f.ramification()))
                    .numer_i64()
                    .expect("index in range"),
                value: v,
            })
            .collect(),
    }
}

pub fn alpha_to_json(a: AlphaBasis) -> AlphaJson {
    AlphaJson { m: a.m(), n: a.n() }
}

pub fn alpha_from_json(a: &AlphaJson) -> Result<AlphaBasis> {
    AlphaBasis::new(a.m, a.n)
}

pub fn multi_to_json(f: &MultiPuiseux) -> MultiJson {
    MultiJson {
        dimension: f.num_vars(),
        ramification: f.ramification(),
        truncation_k: f.truncation_indices().to_vec(),
        terms: f
            .index_terms()
            .iter()
            .map(|(k, c)| MultiTermJson {
                k: k.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect(),
    }
}

pub fn multi_from_json(doc: &MultiJson) -> Result<MultiPuiseux> {
    if doc.ramification < 1 {
        return Err(CalcError::Invalid("ramification must be >= 1".into()));
    }
    if doc.truncation_k.len() != doc.dimension {
        return Err(CalcError::DimensionMismatch(
            doc.truncation_k.len(),
            doc.dimension,
        ));
    }
    let orders: Vec<Rat> = doc
        .truncation_k
        .iter()
        .map(|k| Rat::new(*k, doc.ramification))
        .collect();
    let terms: Vec<(Vec<Rat>, Rat)> = doc
        .terms
        .iter()
        .map(|t| {
            if t.k.len() != doc.dimension {
                return Err(CalcError::DimensionMismatch(t.k.len(), doc.dimension));
            }
            Ok((
                t.k.iter().map(|k| Rat::new(*k, doc.ramification)).collect(),
                rat_from_parts(&t.num, &t.den)?,
            ))
        })
        .collect::<Result<_>>()?;
    MultiPuiseux::make_multi(&terms, &orders)
}

/// The full ODE problem: spec, initial data and the requested truncation
/// index.
pub fn ode_from_json_str(s: &str) -> Result<(OdeSpec, InitialData, i64)> {
    let doc: OdeJson = serde_json::from_str(s).map_err(invalid_json)?;
    let alpha = alpha_from_json(&doc.alpha)?;
    let coeffs: Vec<Rat> = doc
        .coeffs
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<_>>()?;
    let forcing = series_from_json(&doc.forcing)?;
    let init: Vec<Rat> = doc
        .init
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<_>>()?;
    let spec = OdeSpec::new(coeffs, forcing, alpha)?;
    Ok((spec, InitialData::new(init), doc.k))
}

pub fn ode_to_json(spec: &OdeSpec, init: &InitialData, k: i64) -> OdeJson {
    OdeJson {
        alpha: alpha_to_json(spec.alpha()),
        coeffs: spec.coeffs().iter().map(|c| c.to_string()).collect(),
        forcing: series_to_json(spec.forcing()),
        init: init.values().iter().map(|c| c.to_string()).collect(),
        k,
    }
}

/// Geometry input: connection, basis, and an optional curve (required by
/// the autoparallel check).
pub struct GeometryInput {
    pub alpha: AlphaBasis,
    pub gamma: ConnectionField,
    pub curve: Option<CurveSeries>,
}

pub fn geometry_from_json_str(s: &str) -> Result<GeometryInput> {
    let doc: GeometryJson = serde_json::from_str(s).map_err(invalid_json)?;
    let alpha = alpha_from_json(&doc.alpha)?;
    let entries = doc
        .gamma
        .iter()
        .map(|e| Ok((e.i, e.j, e.k, multi_from_json(&e.series)?)))
        .collect::<Result<Vec<_>>>()?;
    let gamma = if entries.is_empty() {
        return Err(CalcError::Invalid(
            "geometry input needs at least one gamma entry".into(),
        ));
    } else {
        ConnectionField::new(doc.dimension, entries)?
    };
    let curve = match doc.curve {
        None => None,
        Some(series) => {
            let coords = series
                .iter()
                .map(series_from_json)
                .collect::<Result<Vec<_>>>()?;
            Some(CurveSeries::new(coords)?)
        }
    };
    Ok(GeometryInput {
        alpha,
        gamma,
        curve,
    })
}
