//! Machine-readable extraction reports: phase logs, val-sequence history,
//! and either a certificate or a structured failure.

use crate::minor::SubdivisionCertificate;
use crate::poset::PointSet;
use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionReport {
    pub schema_version: u32,
    pub pipeline: &'static str,
    pub mode: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    pub input_elements: usize,
    pub reduced: bool,
    pub dual_side: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsReport>,
    pub phase1: Vec<Phase1Record>,
    pub phase1_terminated: bool,
    pub phase2: Vec<Phase2Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SubdivisionCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureRecord>,
}

impl ExtractionReport {
    pub(crate) fn new(pipeline: &'static str, mode: &'static str, n: usize, input_elements: usize) -> Self {
        ExtractionReport {
            schema_version: REPORT_SCHEMA_VERSION,
            pipeline,
            mode,
            n,
            height_bound: None,
            chain_bound: None,
            thresholds: None,
            cap: None,
            input_elements,
            reduced: false,
            dual_side: false,
            constants: None,
            phase1: Vec::new(),
            phase1_terminated: false,
            phase2: Vec::new(),
            certificate: None,
            certificate_verified: None,
            failure: None,
        }
    }

    pub(crate) fn fail(&mut self, phase: &'static str, step: usize, kind: FailureKind, state: Option<serde_json::Value>) {
        self.failure = Some(FailureRecord { phase, step, kind, state });
    }

    pub fn succeeded(&self) -> bool {
        self.certificate.is_some() && self.certificate_verified == Some(true) && self.failure.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    /// Decimal rendering of M.
    pub m: String,
    /// Decimal rendering of L.
    pub l: String,
    /// Number of decimal digits of n^L, the dimension the hypothesis needs.
    pub dim_threshold_digits: f64,
}

/// Structured failure: which guarantee failed, at which step, with a state
/// snapshot when one exists.
#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub phase: &'static str,
    pub step: usize,
    pub kind: FailureKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FailureKind {
    BadParameters { detail: String },
    /// Paper-exact thresholds exceed any computable input.
    PaperModeInfeasible { required_dimension_digits: f64 },
    HeightExceedsBound { height: usize, bound: usize },
    ChiBelowThreshold { chi: usize, threshold: String, iteration: usize },
    ChiTooSmallForSupport { chi: usize, iteration: usize },
    NotKkFree { chain_a: Vec<usize>, chain_b: Vec<usize> },
    NoStandardExample { found: usize, threshold: String },
    NoFreshMaximal { round: usize },
    DescentReachedMinimal { round: usize, vertex: usize },
    StageBoundFailed { round: usize, size: usize, bound: usize },
    AssignmentExhausted { have: usize, need: usize },
    /// A threshold-independent structural guarantee broke: an implementation
    /// bug, surfaced loudly rather than ignored.
    InvariantViolation { clause: String, detail: String },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum Phase1Action {
    Init,
    Q1Update { point: usize, removed_sets: usize },
    Q2Update { point: usize, removed_sets: usize },
    Q3ExtendC { layer: usize, set_size: usize },
    Q3ExtendD { layer: usize, set_size: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Phase1Record {
    pub iteration: usize,
    #[serde(flatten)]
    pub action: Phase1Action,
    pub chi: usize,
    pub a_size: usize,
    pub b_size: usize,
    pub cc_size: usize,
    pub dd_size: usize,
    pub val_c: Vec<u32>,
    pub val_d: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Phase2Record {
    pub round: usize,
    pub start_maximal: usize,
    pub principal: usize,
    /// The descent trajectory from the starting maximal to the principal.
    pub descent: Vec<usize>,
    pub cover_subset: Vec<usize>,
    pub kept_sets: usize,
    pub stage_bound: usize,
}

pub(crate) fn points(s: &PointSet) -> Vec<usize> {
    s.iter().collect()
}

pub(crate) fn phase1_snapshot(
    a: &PointSet,
    b: &PointSet,
    cc: &[PointSet],
    dd: &[PointSet],
    iteration: usize,
) -> serde_json::Value {
    serde_json::json!({
        "iteration": iteration,
        "a": points(a),
        "b": points(b),
        "cc": cc.iter().map(points).collect::<Vec<_>>(),
        "dd": dd.iter().map(points).collect::<Vec<_>>(),
    })
}

pub(crate) fn phase2_snapshot(v: &[usize], ee: &[PointSet]) -> serde_json::Value {
    serde_json::json!({
        "v": v,
        "ee": ee.iter().map(points).collect::<Vec<_>>(),
    })
}
