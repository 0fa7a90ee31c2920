use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use nfc_core::families::FamilySpec;
use nfc_core::normalizer::{max_stage, normalize, prenormalize_level1, Policy};
use nfc_core::resonance::{displayed, matrix_b, ResonanceReport};
use nfc_core::scalar::{KPoly, DEFAULT_ROOT_CEILING};
use nfc_core::selftest;
use nfc_core::series::{degree, graded_key, Series3};
use nfc_core::surface::{infinitesimal_defect, jet7, map_defect, transform, GraphSurface};

use crate::args::{
    CharpolyArgs, Cli, Command, FamilyName, MapArgs, MatrixChoice, NormalizeArgs, SelftestArgs, SurfaceArgs,
    TransformArgs, VerifyFieldArgs, VerifyMapArgs, DEFAULT_ORDER,
};
use crate::report::Outcome;
use crate::spec::{holo_terms, series_terms, FieldBuiltin, FieldSpec, MapBuiltin, MapSpec, SurfaceSource, SurfaceSpec};
use crate::CliError;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Charpoly(a) => charpoly(a, false),
        Command::Resonances(a) => charpoly(a, true),
        Command::Normalize(a) => normalize_cmd(a),
        Command::Transform(a) => transform_cmd(a),
        Command::VerifyMap(a) => verify_map(a),
        Command::VerifyField(a) => verify_field(a),
        Command::Selftest(a) => selftest_cmd(a),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{what} file {}: {e}", path.display())))
}

fn required<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Usage(format!("--family {family} needs {flag}")))
}

/// The surface spec with its order resolved (flag, then file, then default).
fn surface_spec(a: &SurfaceArgs, order_flag: Option<u32>) -> Result<SurfaceSpec, CliError> {
    let mut spec = if let Some(family) = a.family {
        let f = match family {
            FamilyName::Quadric => FamilySpec::Quadric,
            FamilyName::Cd => FamilySpec::Cd { c: required(&a.c, "--C", "cd")?, d: required(&a.d, "--D", "cd")? },
            FamilyName::Mm => FamilySpec::Mm { m: required(&a.m, "--m", "mm")? },
            FamilyName::Mmt => {
                FamilySpec::Mmt { m: required(&a.m, "--m", "mmt")?, t: required(&a.big_t, "--T", "mmt")? }
            }
        };
        SurfaceSpec { source: SurfaceSource::Family(f), order: None }
    } else if let Some(e) = &a.expr {
        SurfaceSpec { source: SurfaceSource::Expr(e.clone()), order: None }
    } else if let Some(path) = &a.surface {
        read_json(path, "surface")?
    } else {
        return Err(CliError::Usage("one of --family, --expr or --surface is required".into()));
    };
    spec.order = Some(order_flag.or(spec.order).unwrap_or(DEFAULT_ORDER));
    Ok(spec)
}

fn load_surface(a: &SurfaceArgs, order_flag: Option<u32>) -> Result<(SurfaceSpec, GraphSurface, u32), CliError> {
    let spec = surface_spec(a, order_flag)?;
    let n = spec.order.unwrap_or(DEFAULT_ORDER);
    let m = spec.build(n)?;
    Ok((spec, m, n))
}

fn map_spec(a: &MapArgs, m: Option<u32>) -> Result<MapSpec, CliError> {
    if a.map == "ht" {
        let m = m.ok_or_else(|| CliError::Usage("--map ht needs --m".into()))?;
        let t = a.t.clone().ok_or_else(|| CliError::Usage("--map ht needs --t".into()))?;
        return Ok(MapSpec::Builtin { builtin: MapBuiltin::Ht, m, t });
    }
    read_json(Path::new(&a.map), "map")
}

fn poly_value(p: &KPoly) -> Value {
    json!({
        "coefficients": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

fn surface_value(s: &Series3, max_degree: u32) -> Value {
    let shown = s.filter(|e| degree(e) <= max_degree);
    json!({ "order": s.order(), "series": series_terms(&shown), "expr": shown.to_expr() })
}

/// `"zero to order N"`, or the lowest nonzero monomial.
fn defect_value(d: &Series3) -> (Value, String, bool) {
    let mut terms: Vec<_> = d.terms().collect();
    terms.sort_by_key(|(e, _)| graded_key(*e));
    match terms.first() {
        None => {
            let s = format!("zero to order {}", d.order());
            (json!({ "defect": s, "first_nonzero": null }), format!("defect: {s}"), true)
        }
        Some(((a, b, c), x)) => {
            let first = json!({ "a": a, "b": b, "c": c, "re": x.re.to_string(), "im": x.im.to_string() });
            let text = format!("defect: nonzero; first nonzero monomial z^{a} zb^{b} u^{c} with coefficient {x}");
            (json!({ "defect": "nonzero", "first_nonzero": first }), text, false)
        }
    }
}

fn charpoly(a: &CharpolyArgs, only_resonances: bool) -> Result<Outcome, CliError> {
    let (spec, m, n) = load_surface(&a.surface, a.order.order_total)?;
    let (pre, pre_map) = prenormalize_level1(&m)?;
    let j = jet7(&pre)?;
    let (matrix, det_b) = match a.matrix {
        MatrixChoice::Derived => ("derived", matrix_b(&j).det()),
        MatrixChoice::Displayed => ("displayed", displayed::matrix_b(&j).det()),
    };
    let r = ResonanceReport::from_det_b(det_b, &j, DEFAULT_ROOT_CEILING)?;
    let input = json!({ "surface": spec, "matrix": matrix });
    let resonances: Vec<i64> = r.resonances.iter().copied().collect();
    let mut text = Vec::new();
    let result = if only_resonances {
        text.push(format!("resonances: {resonances:?}"));
        json!({ "order": n, "matrix": matrix, "resonances": resonances })
    } else {
        text.push(format!("char poly: {}", r.char_poly));
        text.push(format!("monic constant: {}", r.monic_constant));
        text.push(format!("det B: {}", r.det_b));
        text.push(format!("resonances: {resonances:?}"));
        json!({
            "order": n,
            "matrix": matrix,
            "prenormalized": !pre_map.is_identity(),
            "jet": r.jet,
            "char_poly": poly_value(&r.char_poly),
            "monic_constant": r.monic_constant.to_string(),
            "det_b": poly_value(&r.det_b),
            "resonances": resonances,
        })
    };
    Ok(Outcome { input, result, text, ok: true })
}

fn normalize_cmd(a: &NormalizeArgs) -> Result<Outcome, CliError> {
    let (spec, m, n) = load_surface(&a.surface, a.order_total)?;
    let k = a.stages.unwrap_or_else(|| max_stage(n.max(6)));
    let policy: Policy = a.policy.into();
    let shown = a.display_degree.unwrap_or(n);
    let input = json!({ "surface": spec, "stages": k, "policy": policy, "display_degree": shown });
    let res = normalize(&m, k, policy)?;
    let (defect, defect_text, defect_ok) = defect_value(&map_defect(&m, &res.map, &res.normal_form)?);
    let mut text = vec![format!("char poly: {}", res.resonance.char_poly)];
    text.push(format!("resonances predicted: {:?}", res.resonances_predicted));
    text.push(format!("resonances observed: {:?}", res.resonances_observed));
    for s in &res.stages {
        let mut line = format!("stage {}: {}", s.k, to_value(&s.status).as_str().unwrap_or_default());
        if !s.residuals.is_empty() {
            let r: Vec<String> = s.residuals.iter().map(|r| format!("{} = {}", r.condition, r.value)).collect();
            line.push_str(&format!("; residuals {}", r.join(", ")));
        }
        if !s.gauge.is_empty() {
            let g: Vec<String> = s.gauge.iter().map(ToString::to_string).collect();
            line.push_str(&format!("; gauge {}", g.join(", ")));
        }
        text.push(line);
    }
    text.push(format!("normal form check through level {}: {}", k, if res.check.holds { "holds" } else { "fails" }));
    text.push(format!("map {defect_text}"));
    text.push(format!("normal form: {}", res.normal_form.phi().filter(|e| degree(e) <= shown).to_expr()));
    let result = json!({
        "order": res.order,
        "stages_through": res.max_stage,
        "policy": res.policy,
        "char_poly": poly_value(&res.resonance.char_poly),
        "resonances_predicted": res.resonances_predicted,
        "resonances_observed": res.resonances_observed,
        "stages": res.stages,
        "check": res.check,
        "normal_form": surface_value(res.normal_form.phi(), shown),
        "map": { "f": holo_terms(res.map.f()), "g": holo_terms(res.map.g()) },
        "map_defect": defect,
    });
    Ok(Outcome { input, result, text, ok: res.check.holds && defect_ok })
}

fn transform_cmd(a: &TransformArgs) -> Result<Outcome, CliError> {
    let (spec, m, n) = load_surface(&a.surface, a.order.order_total)?;
    let map = map_spec(&a.map, a.surface.m)?;
    let input = json!({ "surface": spec, "map": map });
    let out = transform(&m, &map.build(n)?)?;
    let text = vec![format!("image: {}", out.phi().to_expr())];
    Ok(Outcome { input, result: surface_value(out.phi(), n), text, ok: true })
}

fn verify_map(a: &VerifyMapArgs) -> Result<Outcome, CliError> {
    let (spec, m, n) = load_surface(&a.surface, a.order.order_total)?;
    let map = map_spec(&a.map, a.surface.m)?;
    let target_spec = match &a.target {
        Some(path) => {
            let mut t: SurfaceSpec = read_json(path, "target")?;
            t.order = Some(n);
            Some(t)
        }
        None => None,
    };
    let target = match &target_spec {
        Some(t) => t.build(n)?,
        None => m.clone(),
    };
    let input = json!({ "surface": spec, "map": map, "target": target_spec });
    let (result, line, ok) = defect_value(&map_defect(&m, &map.build(n)?, &target)?);
    Ok(Outcome { input, result, text: vec![line], ok })
}

fn verify_field(a: &VerifyFieldArgs) -> Result<Outcome, CliError> {
    let (spec, m, n) = load_surface(&a.surface, a.order.order_total)?;
    let builtin = match a.field.as_str() {
        "x" => Some(FieldBuiltin::X),
        "x-displayed" => Some(FieldBuiltin::XDisplayed),
        _ => None,
    };
    let field = match builtin {
        Some(builtin) => {
            let m = a.surface.m.ok_or_else(|| CliError::Usage(format!("--field {} needs --m", a.field)))?;
            let t = a.surface.big_t.clone().ok_or_else(|| CliError::Usage(format!("--field {} needs --T", a.field)))?;
            FieldSpec::Builtin { builtin, m, t }
        }
        None => read_json(Path::new(&a.field), "field")?,
    };
    let input = json!({ "surface": spec, "field": field });
    let (result, line, ok) = defect_value(&infinitesimal_defect(&m, &field.build(n)?)?);
    Ok(Outcome { input, result, text: vec![line], ok })
}

fn selftest_cmd(a: &SelftestArgs) -> Result<Outcome, CliError> {
    let outcomes: Vec<_> = match a.criterion {
        Some(i) => vec![selftest::CRITERIA[i as usize - 1]()],
        None => selftest::run_all(),
    };
    let passed = outcomes.iter().all(|o| o.passed);
    let mut text = Vec::new();
    for o in &outcomes {
        text.push(format!("criterion {:02} {}: {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.title));
        text.extend(o.details.iter().map(|d| format!("    {d}")));
    }
    let input = json!({ "criterion": a.criterion });
    Ok(Outcome { input, result: json!({ "passed": passed, "criteria": outcomes }), text, ok: passed })
}
