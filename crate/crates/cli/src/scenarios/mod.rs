//! Builtin scenarios. Each produces a list of residual checks.

mod algebra;
mod hopf;
mod suites;

use std::time::Instant;

use gencx_core::error::Result;
use gencx_core::sampling::{with_workers, SampleRng};
use rayon::prelude::*;

use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ScenarioId {
    HopfJ1Reduction,
    HopfJ2Reduction,
    HopfSymmetrySuite,
    AxiomSuite,
    LinearReductionDemo,
    CuttingDemo,
    DhDemo,
    CohomologySuite,
    SpinorSuite,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 9] = [
        ScenarioId::HopfJ1Reduction,
        ScenarioId::HopfJ2Reduction,
        ScenarioId::HopfSymmetrySuite,
        ScenarioId::AxiomSuite,
        ScenarioId::LinearReductionDemo,
        ScenarioId::CuttingDemo,
        ScenarioId::DhDemo,
        ScenarioId::CohomologySuite,
        ScenarioId::SpinorSuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::HopfJ1Reduction => "hopf_j1_reduction",
            ScenarioId::HopfJ2Reduction => "hopf_j2_reduction",
            ScenarioId::HopfSymmetrySuite => "hopf_symmetry_suite",
            ScenarioId::AxiomSuite => "axiom_suite",
            ScenarioId::LinearReductionDemo => "linear_reduction_demo",
            ScenarioId::CuttingDemo => "cutting_demo",
            ScenarioId::DhDemo => "dh_demo",
            ScenarioId::CohomologySuite => "cohomology_suite",
            ScenarioId::SpinorSuite => "spinor_suite",
        }
    }

    pub fn anchors(self) -> &'static [&'static str] {
        match self {
            ScenarioId::HopfJ1Reduction => &[hopf::OPPOSITE_COMPLEX, hopf::TWIST_VANISHES],
            ScenarioId::HopfJ2Reduction => &[hopf::OPPOSITE_SYMPLECTIC, hopf::PRINTED_J2],
            ScenarioId::HopfSymmetrySuite => &[hopf::FIXTURE, hopf::GENERATORS, hopf::POLAR_H, hopf::PRINTED_J1],
            ScenarioId::AxiomSuite => &[suites::AXIOMS],
            ScenarioId::LinearReductionDemo => &[suites::LINEAR],
            ScenarioId::CuttingDemo => &[suites::CUT_PLANE, suites::CUT_HOPF],
            ScenarioId::DhDemo => &[suites::DH, suites::CONNECTION],
            ScenarioId::CohomologySuite => &[algebra::COBOUNDARY, algebra::EXTENSION, algebra::BRIDGE],
            ScenarioId::SpinorSuite => &[algebra::SPINOR_LINES, algebra::DH_COMPAT],
        }
    }

    fn checks(self, cfg: &Config) -> Result<Vec<Check>> {
        match self {
            ScenarioId::HopfJ1Reduction => hopf::j1_reduction(cfg),
            ScenarioId::HopfJ2Reduction => hopf::j2_reduction(cfg),
            ScenarioId::HopfSymmetrySuite => hopf::symmetry_suite(cfg),
            ScenarioId::AxiomSuite => suites::axioms(cfg),
            ScenarioId::LinearReductionDemo => suites::linear(cfg),
            ScenarioId::CuttingDemo => suites::cutting(cfg),
            ScenarioId::DhDemo => suites::dh(cfg),
            ScenarioId::CohomologySuite => algebra::cohomology(cfg),
            ScenarioId::SpinorSuite => algebra::spinors(cfg),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub scenario: ScenarioId,
    pub seed: u64,
    /// Overrides the scenario's default sample count.
    pub samples: Option<usize>,
    /// Replaces every check tolerance.
    pub tol: Option<f64>,
    /// Radial sampling bounds for scenarios on `ℂ²`.
    pub rmin: f64,
    pub rmax: f64,
    /// Report `elapsed_ms = 0` so output depends only on the configuration.
    pub no_timing: bool,
}

impl Config {
    pub fn new(scenario: ScenarioId, seed: u64) -> Self {
        Config {
            scenario,
            seed,
            samples: None,
            tol: None,
            rmin: 0.3,
            rmax: 2.5,
            no_timing: false,
        }
    }

    pub(crate) fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default).max(1)
    }

    /// Independent stream `k` for this seed.
    pub(crate) fn rng(&self, k: u64) -> SampleRng {
        gencx_core::sampling::rng(self.seed.wrapping_mul(1000).wrapping_add(k))
    }
}

/// Largest value of `f` over the points, evaluated in parallel.
pub(crate) fn max_over<F>(points: &[Vec<f64>], f: F) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let vals: Vec<f64> = points.par_iter().map(|p| f(p)).collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

pub fn run(cfg: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut checks = with_workers(|| cfg.scenario.checks(cfg))?;
    if let Some(t) = cfg.tol {
        checks = checks.into_iter().map(|c| c.with_tol(t)).collect();
    }
    let elapsed = if cfg.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    Ok(Report::new(cfg.scenario.name(), cfg.seed, checks, elapsed))
}
