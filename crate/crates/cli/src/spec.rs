//! JSON spec files for surfaces, maps and vector fields.
//!
//! Surface: `{"family": {"name": "mm", "m": 1}}`, `{"expr": "u*z*zb"}` or
//! `{"series": [{"a": 1, "b": 1, "c": 1, "re": "1", "im": "0"}]}`, each with an
//! optional `"order"`.
//!
//! Map: `{"f": [{"l": 0, "k": 2, "re": "1"}], "g": [...]}` or
//! `{"builtin": "ht", "m": 1, "t": "1"}`.
//!
//! Field: `{"xz": [...], "xw": [...]}` or `{"builtin": "x", "m": 1, "T": "1"}`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use nfc_core::families::{gen_ht, gen_x, gen_x_displayed, FamilySpec};
use nfc_core::scalar::{rational_string, GaussianRational, Rational};
use nfc_core::series::{graded_key, FormalMap, HoloSeries2, Series3};
use nfc_core::surface::{GraphSurface, VectorField};

use crate::expr::parse_expression;
use crate::CliError;

fn zero() -> Rational {
    Rational::zero()
}

/// One coefficient `(re + i im) z^a zb^b u^c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTerm {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    #[serde(default = "zero", with = "rational_string")]
    pub re: Rational,
    #[serde(default = "zero", with = "rational_string")]
    pub im: Rational,
}

/// One coefficient `(re + i im) z^l w^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoloTerm {
    pub l: u32,
    pub k: u32,
    #[serde(default = "zero", with = "rational_string")]
    pub re: Rational,
    #[serde(default = "zero", with = "rational_string")]
    pub im: Rational,
}

/// Terms of `s` in graded order.
pub fn series_terms(s: &Series3) -> Vec<SeriesTerm> {
    let mut v: Vec<_> = s.terms().collect();
    v.sort_by_key(|(e, _)| graded_key(*e));
    v.into_iter().map(|(e, c)| SeriesTerm { a: e.0, b: e.1, c: e.2, re: c.re.clone(), im: c.im.clone() }).collect()
}

pub fn holo_terms(h: &HoloSeries2) -> Vec<HoloTerm> {
    let mut v: Vec<_> = h.terms().collect();
    v.sort_by_key(|((l, k), _)| (l + k, *k, *l));
    v.into_iter().map(|((l, k), c)| HoloTerm { l, k, re: c.re.clone(), im: c.im.clone() }).collect()
}

fn holo_from_terms(order: u32, terms: &[HoloTerm]) -> HoloSeries2 {
    let mut h = HoloSeries2::zero(order);
    for t in terms {
        h.add_term((t.l, t.k), &GaussianRational::new(t.re.clone(), t.im.clone()));
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceSource {
    Family(FamilySpec),
    Expr(String),
    Series(Vec<SeriesTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSurface", into = "RawSurface")]
pub struct SurfaceSpec {
    pub source: SurfaceSource,
    pub order: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    series: Option<Vec<SeriesTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
}

impl TryFrom<RawSurface> for SurfaceSpec {
    type Error = String;

    fn try_from(r: RawSurface) -> Result<Self, String> {
        let source = match (r.family, r.expr, r.series) {
            (Some(f), None, None) => SurfaceSource::Family(f),
            (None, Some(e), None) => SurfaceSource::Expr(e),
            (None, None, Some(s)) => SurfaceSource::Series(s),
            _ => return Err("a surface spec needs exactly one of \"family\", \"expr\" or \"series\"".into()),
        };
        Ok(SurfaceSpec { source, order: r.order })
    }
}

impl From<SurfaceSpec> for RawSurface {
    fn from(s: SurfaceSpec) -> Self {
        let mut r = RawSurface { family: None, expr: None, series: None, order: s.order };
        match s.source {
            SurfaceSource::Family(f) => r.family = Some(f),
            SurfaceSource::Expr(e) => r.expr = Some(e),
            SurfaceSource::Series(t) => r.series = Some(t),
        }
        r
    }
}

impl SurfaceSpec {
    /// The graphing function at truncation order `order`.
    ///
    /// Bad expressions and non-Hermitian input are usage errors; generator
    /// failures (order too small, bad parameters) are domain errors.
    pub fn build(&self, order: u32) -> Result<GraphSurface, CliError> {
        let phi = match &self.source {
            SurfaceSource::Family(f) => return f.generate(order).map_err(CliError::Domain),
            SurfaceSource::Expr(text) => {
                parse_expression(text).map_err(|e| CliError::Usage(format!("expression: {e}")))?.to_series(order)
            }
            SurfaceSource::Series(terms) => {
                let mut s = Series3::zero(order);
                for t in terms {
                    s.add_term((t.a, t.b, t.c), &GaussianRational::new(t.re.clone(), t.im.clone()));
                }
                s
            }
        };
        GraphSurface::new(phi).map_err(|e| CliError::Usage(format!("surface: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum MapSpec {
    Builtin {
        builtin: MapBuiltin,
        m: u32,
        #[serde(with = "rational_string")]
        t: Rational,
    },
    Terms {
        #[serde(default)]
        f: Vec<HoloTerm>,
        #[serde(default)]
        g: Vec<HoloTerm>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapBuiltin {
    Ht,
}

impl MapSpec {
    pub fn build(&self, order: u32) -> Result<FormalMap, CliError> {
        match self {
            MapSpec::Builtin { builtin: MapBuiltin::Ht, m, t } => gen_ht(*m, t, order).map_err(CliError::Domain),
            MapSpec::Terms { f, g } => FormalMap::new(holo_from_terms(order, f), holo_from_terms(order, g))
                .map_err(|e| CliError::Usage(format!("map: {e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FieldSpec {
    Builtin {
        builtin: FieldBuiltin,
        m: u32,
        #[serde(rename = "T", with = "rational_string")]
        t: Rational,
    },
    Terms {
        #[serde(default)]
        xz: Vec<HoloTerm>,
        #[serde(default)]
        xw: Vec<HoloTerm>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldBuiltin {
    X,
    /// The field exactly as printed alongside the family, kept for comparison;
    /// it is not tangent.
    XDisplayed,
}

impl FieldSpec {
    pub fn build(&self, order: u32) -> Result<VectorField, CliError> {
        match self {
            FieldSpec::Builtin { builtin: FieldBuiltin::X, m, t } => gen_x(*m, t, order).map_err(CliError::Domain),
            FieldSpec::Builtin { builtin: FieldBuiltin::XDisplayed, m, t } => {
                gen_x_displayed(*m, t, order).map_err(CliError::Domain)
            }
            FieldSpec::Terms { xz, xw } => VectorField::new(holo_from_terms(order, xz), holo_from_terms(order, xw))
                .map_err(|e| CliError::Usage(format!("field: {e}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nfc_core::scalar::rat;

    fn round_trip(text: &str) -> SurfaceSpec {
        let spec: SurfaceSpec = serde_json::from_str(text).unwrap();
        let again: SurfaceSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, again);
        spec
    }

    #[test]
    fn surface_specs_round_trip() {
        let s = round_trip(r#"{"family": {"name": "mmt", "m": 2, "T": "1/3"}, "order": 11}"#);
        assert_eq!(s.order, Some(11));
        assert_eq!(s.source, SurfaceSource::Family(FamilySpec::Mmt { m: 2, t: rat(1, 3) }));
        round_trip(r#"{"expr": "u*z*zb"}"#);
        let s =
            round_trip(r#"{"series": [{"a": 1, "b": 1, "c": 1, "re": "1"}, {"a": 2, "b": 2, "c": 1, "re": "-3/4"}]}"#);
        assert_eq!(s.build(5).unwrap().phi().coeff((2, 2, 1)), GaussianRational::real(rat(-3, 4)));
    }

    #[test]
    fn surface_spec_needs_one_source() {
        assert!(serde_json::from_str::<SurfaceSpec>(r#"{"order": 5}"#).is_err());
        assert!(serde_json::from_str::<SurfaceSpec>(r#"{"expr": "u", "family": {"name": "quadric"}}"#).is_err());
        assert!(serde_json::from_str::<SurfaceSpec>(r#"{"expr": "u", "colour": 1}"#).is_err());
    }

    #[test]
    fn expression_and_series_agree() {
        let from_expr = SurfaceSpec { source: SurfaceSource::Expr("u*(z*zb + 1/4*z^2*zb^2)".into()), order: None };
        let m = from_expr.build(9).unwrap();
        let terms = series_terms(m.phi());
        let from_series = SurfaceSpec { source: SurfaceSource::Series(terms), order: None };
        assert_eq!(from_series.build(9).unwrap(), m);
        let cd =
            SurfaceSpec { source: SurfaceSource::Family(FamilySpec::Cd { c: rat(1, 1), d: rat(0, 1) }), order: None };
        assert_eq!(cd.build(9).unwrap(), m);
    }

    #[test]
    fn non_hermitian_expression_is_rejected() {
        let s = SurfaceSpec { source: SurfaceSource::Expr("u*(z*zb + i*z^2*zb)".into()), order: None };
        let err = s.build(7).unwrap_err().to_string();
        assert!(err.contains("(2,1,1)"), "{err}");
    }

    #[test]
    fn map_and_field_specs() {
        let m: MapSpec = serde_json::from_str(r#"{"builtin": "ht", "m": 1, "t": "-2"}"#).unwrap();
        assert_eq!(m, MapSpec::Builtin { builtin: MapBuiltin::Ht, m: 1, t: rat(-2, 1) });
        let m: MapSpec = serde_json::from_str(r#"{"f": [{"l": 0, "k": 2, "re": "1"}], "g": []}"#).unwrap();
        let map = m.build(4).unwrap();
        assert_eq!(map.f().coeff((0, 2)), GaussianRational::from_int(1));
        let bad: MapSpec = serde_json::from_str(r#"{"g": [{"l": 0, "k": 1, "re": "1"}]}"#).unwrap();
        assert!(bad.build(4).is_err());
        let f: FieldSpec = serde_json::from_str(r#"{"builtin": "x", "m": 1, "T": "1"}"#).unwrap();
        assert!(matches!(f, FieldSpec::Builtin { builtin: FieldBuiltin::X, .. }));
    }
}
