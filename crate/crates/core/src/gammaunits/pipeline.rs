//! The full gl₁ pipeline for a finite commutative ring: `Ω•HR`, its units,
//! the Γ-space of the units, Segal maps, delooping and group completion,
//! checked against the brute-force unit group.

use std::sync::Arc;

use serde::Serialize;

use crate::barcat::{hocolim, DiagramF, FinCat};
use crate::dkspec::ring::FinCommRing;
use crate::dkspec::spectrum::em_spectrum;
use crate::error::{Error, Result};
use crate::linalg::AbGroup;
use crate::sset::homology::integral_homology;

use super::gamma::{gamma_construct_named, FunctorialityReport, GammaProvenance};
use super::monoid::{gl1_bullet, FinMonoid};
use super::segal::{group_completion_pi0, segal_check, segal_machine_delooping, DeloopingReport, SegalReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gl1Config {
    /// bound `N` of `𝕀≤N`
    pub bound: usize,
    /// simplicial truncation `D`
    pub truncation: usize,
    pub n_max: usize,
    /// homology degrees checked on the Segal maps
    pub k_max: usize,
}

impl Default for Gl1Config {
    fn default() -> Self {
        Gl1Config { bound: 3, truncation: 4, n_max: 3, k_max: 1 }
    }
}

impl Gl1Config {
    pub fn validate(&self) -> Result<()> {
        if self.bound < 1 {
            return Err(Error::TruncationTooSmall("N must be at least 1".into()));
        }
        if self.truncation < 2 {
            return Err(Error::TruncationTooSmall(format!("D = {} but at least 2 is needed", self.truncation)));
        }
        if self.k_max + 2 > self.truncation {
            return Err(Error::TruncationTooSmall(format!(
                "k_max = {} exceeds D − 2 = {}",
                self.k_max,
                self.truncation - 2
            )));
        }
        if self.n_max < 2 {
            return Err(Error::InsufficientGammaRange { needed: 2, available: self.n_max });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gl1Report {
    pub ring: String,
    pub config: Gl1Config,
    /// `π₀ Ω•HR` as a multiplicative monoid
    pub omega_pi0: FinMonoid,
    /// units of the ring, computed from its multiplication table
    pub unit_group: AbGroup,
    /// components of the units FCP at its stable level
    pub units_pi0_order: usize,
    /// group completion of `π₀` of the units FCP
    pub units_completion: AbGroup,
    /// group completion of `π₀ H(1⁺)` under the fold map
    pub gamma_completion: AbGroup,
    pub grouplike: bool,
    pub functoriality: FunctorialityReport,
    pub ordering_checks: usize,
    /// homology of `H(n⁺)` through `k_max`, for `n = 0, …, n_max`
    pub level_homology: Vec<Vec<AbGroup>>,
    pub segal: SegalReport,
    pub delooping: DeloopingReport,
    /// `H₁` of the bar construction of the unit group
    pub unit_group_bar_h1: AbGroup,
    pub gamma: GammaProvenance,
}

impl Gl1Report {
    /// `π₀ gl₁` agrees with the unit group along both routes.
    pub fn pi0_agrees(&self) -> bool {
        self.gamma_completion == self.unit_group && self.units_completion == self.gamma_completion
    }

    pub fn delooping_agrees(&self) -> bool {
        self.delooping.h1() == Some(&self.unit_group_bar_h1)
    }

    pub fn passed(&self) -> bool {
        self.pi0_agrees() && self.grouplike && self.segal.passed() && self.delooping_agrees()
    }
}

/// `H₁(BG)` for a finite group given as a monoid table.
pub fn group_bar_h1(g: &FinMonoid) -> Result<AbGroup> {
    let c = Arc::new(FinCat::group(&g.table, g.unit)?);
    let b = hocolim(&c, &DiagramF::point(c.clone()), 3)?;
    Ok(integral_homology(&b, 1)?.swap_remove(1))
}

fn units_monoid(ring: &FinCommRing) -> Result<FinMonoid> {
    let units = ring.units();
    let pos = |x: u32| units.iter().position(|&u| u == x).expect("units are closed") as u32;
    let table = units.iter().map(|&a| units.iter().map(|&b| pos(ring.mul(a, b))).collect()).collect();
    let labels = units.iter().map(|&u| ring.label(u).to_string()).collect();
    FinMonoid::new(labels, table, pos(ring.one()))
}

/// An error together with the pipeline stage that raised it.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{stage}: {error}")]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

fn at(stage: &'static str) -> impl Fn(Error) -> StageError {
    move |error| StageError { stage, error }
}

pub fn gl1_pipeline(ring: Arc<FinCommRing>, config: Gl1Config) -> Result<Gl1Report> {
    gl1_pipeline_staged(ring, config).map_err(|e| e.error)
}

/// As [`gl1_pipeline`], naming the stage of the first failure.
pub fn gl1_pipeline_staged(ring: Arc<FinCommRing>, config: Gl1Config) -> std::result::Result<Gl1Report, StageError> {
    config.validate().map_err(at("configuration"))?;
    let hr = em_spectrum(ring.clone(), config.bound).map_err(at("em_spectrum"))?;
    let gl1 = gl1_bullet(&hr).map_err(at("gl1_bullet"))?;
    let units = &gl1.units;
    let units_completion = units.pi0.monoid.group_completion().map_err(at("units_fcp"))?.group;
    let source = format!("GL₁•H{}", ring.name());
    let h = gamma_construct_named(&units.fcp, config.n_max, config.truncation, &source).map_err(at("gamma_construct"))?;
    let functoriality = h.functoriality_audit().map_err(at("functoriality_audit"))?;
    let ordering_checks = h.ordering_independence_audit().map_err(at("ordering_audit"))?;
    let level_homology = (0..=config.n_max)
        .map(|n| integral_homology(h.level(n), config.k_max))
        .collect::<Result<Vec<_>>>()
        .map_err(at("gamma_levels"))?;
    let completion = group_completion_pi0(&h).map_err(at("group_completion_pi0"))?;
    let segal = segal_check(&h, config.k_max).map_err(at("segal_check"))?;
    // H₁ of the delooping is certified only when D' − 2 ≥ 1.
    let levels = config.truncation.min(config.n_max);
    let delooping = if levels < 3 {
        Err(Error::TruncationTooSmall(format!("the delooping needs min(D, n_max) ≥ 3 to certify H₁, got {levels}")))
    } else {
        segal_machine_delooping(&h, levels)
    }
    .map_err(at("segal_machine_delooping"))?;
    let unit_group_bar_h1 = units_monoid(&ring).and_then(|g| group_bar_h1(&g)).map_err(at("bar_oracle"))?;
    Ok(Gl1Report {
        ring: ring.name().to_string(),
        config,
        omega_pi0: units.monoid.monoid.clone(),
        unit_group: ring.unit_group(),
        units_pi0_order: units.pi0.monoid.len(),
        units_completion,
        gamma_completion: completion.completion.group.clone(),
        grouplike: completion.grouplike(),
        functoriality,
        ordering_checks,
        level_homology,
        segal,
        delooping,
        unit_group_bar_h1,
        gamma: h.provenance.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pipeline_matches_the_unit_group() {
        let cfg = Gl1Config { bound: 2, truncation: 3, n_max: 3, k_max: 1 };
        let r = gl1_pipeline(Arc::new(FinCommRing::parse("Z/4").unwrap()), cfg).unwrap();
        assert_eq!(r.unit_group, AbGroup::cyclic(2));
        assert!(r.pi0_agrees(), "{r:?}");
        assert!(r.segal.passed());
        assert!(r.delooping_agrees());
    }

    #[test]
    fn two_levels_cannot_certify_the_delooping() {
        let cfg = Gl1Config { bound: 2, truncation: 3, n_max: 2, k_max: 1 };
        let e = gl1_pipeline_staged(Arc::new(FinCommRing::parse("Z/4").unwrap()), cfg).unwrap_err();
        assert_eq!(e.stage, "segal_machine_delooping");
        assert!(matches!(e.error, Error::TruncationTooSmall(_)));
    }

    #[test]
    fn configuration_is_validated() {
        let bad = Gl1Config { k_max: 3, ..Gl1Config::default() };
        assert!(matches!(bad.validate(), Err(Error::TruncationTooSmall(_))));
        let narrow = Gl1Config { n_max: 1, ..Gl1Config::default() };
        assert!(matches!(narrow.validate(), Err(Error::InsufficientGammaRange { .. })));
    }
}
