//! Job specifications read from `--job`.

use cyclic_core::catalog::{CyclicityVerdict, SpaceSpec};
use cyclic_core::lab::{Thresholds, WeightSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const DEFAULT_DIGITS: u32 = 70;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Job {
    CheckCyclic(CheckJob),
    ScanMaxdomain(ScanJob),
    GramDump(GramJob),
    CatalogInfo(CatalogJob),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJob {
    pub space: SpaceSpec,
    /// Polynomials in the text grammar, variables `z1, …, zd`.
    pub family: Vec<String>,
    /// Run the joint pipeline even for a single polynomial.
    #[serde(default)]
    pub joint: bool,
    #[serde(default)]
    pub options: CheckOptions,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckOptions {
    /// Residual tolerance for the variety solver.
    pub tolerance: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanJob {
    pub weight: WeightSpec,
    pub n: u32,
    /// Increasing truncation degrees; the largest sets the Gram size.
    pub schedule: Vec<usize>,
    #[serde(default)]
    pub points: Vec<Complex64>,
    pub grid: Option<BoundaryGrid>,
    pub precision: Option<u32>,
    #[serde(default)]
    pub thresholds: Thresholds,
    pub seed: Option<u64>,
}

/// `count` equally spaced points `radius · e^{2πik/count}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryGrid {
    pub count: usize,
    #[serde(default = "unit")]
    pub radius: f64,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramJob {
    pub weight: WeightSpec,
    pub n: u32,
    pub degree_cap: usize,
    pub precision: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogJob {
    pub space: SpaceSpec,
}

/// Contents of `verdict.json`, self-contained for `--verify`.
#[derive(Debug, Serialize, Deserialize)]
pub struct VerdictFile {
    pub space: SpaceSpec,
    pub input: Vec<String>,
    /// Canonical term lists, one per family member.
    pub family: Vec<Vec<String>>,
    pub joint: bool,
    pub seed: u64,
    pub verdict: CyclicityVerdict,
}
