//! Prenormalization at u-level 1, then stage-by-stage normalization by exact
//! probing of the transform.

mod group;
mod level1;
mod stage;

pub use group::{apply_group_action, GroupElement};
pub use level1::prenormalize_level1;
pub use stage::{
    max_stage, solve_stage, stage_system, stage_system_with, tail_system, tail_system_with, Component, Condition, Part,
    Policy, Probe, StageSolution, StageSystem, Unknown,
};

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::resonance::{char_poly, ResonanceReport};
use crate::scalar::Rational;
use crate::series::{compose_maps, FormalMap};
use crate::surface::{check_normal_form, jet7, transform, GraphSurface, NormalFormOptions, NormalFormReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Solved,
    Resonant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub condition: Condition,
    #[serde(with = "crate::scalar::rational_string")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub k: u32,
    pub status: StageStatus,
    /// Whether the 9x9 block on the distinguished unknowns was singular.
    pub block_singular: bool,
    /// Conditions of the stage left nonzero.
    pub residuals: Vec<Residual>,
    /// Unknowns left free and set to zero.
    pub gauge: Vec<Unknown>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationResult {
    pub order: u32,
    pub max_stage: u32,
    pub policy: Policy,
    pub normal_form: GraphSurface,
    /// Maps the input surface onto `normal_form`.
    pub map: FormalMap,
    pub stages: Vec<StageRecord>,
    pub resonance: ResonanceReport,
    /// Resonances within `2..=max_stage`.
    pub resonances_predicted: BTreeSet<u32>,
    /// Stages whose 9x9 block was singular.
    pub resonances_observed: BTreeSet<u32>,
    /// The normal form conditions up to `max_stage`, resonant stages exempt.
    pub check: NormalFormReport,
}

/// Normalizes `m` through stage `k_max`, then restores normal coordinates
/// (`phi_{a0c} = phi_{l1c} = 0`, `l >= 3`) at the remaining levels.
pub fn normalize(m: &GraphSurface, k_max: u32, policy: Policy) -> Result<NormalizationResult> {
    let n = m.order();
    if k_max > max_stage(n) {
        return Err(Error::OrderTooSmall { order: n, needed: k_max + 6, what: "the requested stages" });
    }
    let (mut current, mut map) = prenormalize_level1(m)?;
    let resonance = char_poly(&jet7(&current)?)?;
    let resonances_predicted =
        resonance.resonances.iter().filter(|&&r| r >= 2 && r <= i64::from(k_max)).map(|&r| r as u32).collect();
    let mut stages = Vec::new();
    let mut resonances_observed = BTreeSet::new();
    for k in 2..=k_max {
        let sys = stage_system(&current, k)?;
        let block_singular = sys.block_is_singular();
        if block_singular {
            resonances_observed.insert(k);
        }
        let sol = solve_stage(&sys, policy)?;
        if !sol.map.is_identity() {
            current = transform(&current, &sol.map)?;
            map = compose_maps(&sol.map, &map)?;
        }
        let residuals: Vec<Residual> = sys
            .conditions
            .iter()
            .filter_map(|c| {
                let value = c.value(&current);
                (!value.is_zero()).then_some(Residual { condition: *c, value })
            })
            .collect();
        let status = if sol.singular { StageStatus::Resonant } else { StageStatus::Solved };
        stages.push(StageRecord { k, status, block_singular, residuals, gauge: sol.gauge });
    }
    for c in (k_max + 1).max(2)..=n {
        let sys = tail_system(&current, c)?;
        let sol = solve_stage(&sys, Policy::Strict)?;
        if !sol.map.is_identity() {
            current = transform(&current, &sol.map)?;
            map = compose_maps(&sol.map, &map)?;
        }
    }
    let exempt = stages.iter().filter(|s| s.status == StageStatus::Resonant).map(|s| s.k).collect();
    let check = check_normal_form(&current, &NormalFormOptions { max_level: Some(k_max), exempt_levels: exempt })?;
    Ok(NormalizationResult {
        order: n,
        max_stage: k_max,
        policy,
        normal_form: current,
        map,
        stages,
        resonance,
        resonances_predicted,
        resonances_observed,
        check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;
    use crate::series::Series3;
    use crate::surface::map_defect;

    #[test]
    fn quadric_is_a_fixed_point() {
        let q = GraphSurface::new(Series3::monomial(12, (1, 1, 1), GaussianRational::from_int(1))).unwrap();
        let r = normalize(&q, 6, Policy::Strict).unwrap();
        assert_eq!(r.normal_form, q);
        assert!(r.map.is_identity());
        assert!(r.check.holds);
        assert!(r.stages.iter().all(|s| s.status == StageStatus::Solved && s.residuals.is_empty()));
        assert!(map_defect(&q, &r.map, &r.normal_form).unwrap().is_zero());
    }

    #[test]
    fn cd_family_nonresonant() {
        let m = crate::families::gen_cd(&crate::scalar::rat(0, 1), &crate::scalar::rat(-24, 1), 13).unwrap();
        let t = std::time::Instant::now();
        let r = normalize(&m, 7, Policy::Strict).unwrap();
        eprintln!("normalize {:?}", t.elapsed());
        assert!(r.check.holds, "{:?}", r.check.violations);
        assert!(r.resonances_observed.is_empty());
        let t = std::time::Instant::now();
        assert!(map_defect(&m, &r.map, &r.normal_form).unwrap().is_zero());
        eprintln!("defect {:?}", t.elapsed());
        let again = normalize(&r.normal_form, 7, Policy::Strict).unwrap();
        assert!(again.map.is_identity());
        assert_eq!(again.normal_form, r.normal_form);
    }

    #[test]
    fn mm_one_resonant_stages() {
        let m = crate::families::gen_mm(1, 13).unwrap();
        let t = std::time::Instant::now();
        let r = normalize(&m, 6, Policy::GaugeZero).unwrap();
        eprintln!("normalize mm {:?}", t.elapsed());
        assert_eq!(r.resonances_observed, BTreeSet::from([2, 3]));
        assert_eq!(r.resonances_predicted, BTreeSet::from([2, 3]));
        for s in &r.stages {
            eprintln!("{} {:?} {:?} gauge {:?}", s.k, s.status, s.residuals, s.gauge);
        }
        assert!(r.check.holds, "{:?}", r.check.violations);
        assert!(map_defect(&m, &r.map, &r.normal_form).unwrap().is_zero());
        assert!(matches!(normalize(&m, 6, Policy::Strict), Err(Error::Resonant { k: 2 })));
    }
}
