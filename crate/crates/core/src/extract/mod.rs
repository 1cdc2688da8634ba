//! The two-phase extraction pipeline: Phase 1 maintains shrinking extreme
//! sets with two collections of connected support sets, Phase 2 refines one
//! full collection while fixing principal vertices, and the final step wires
//! the principals into a clique subdivision of the cover graph.
//!
//! Paper-exact thresholds are astronomically out of reach (for n = 3, h = 2
//! the hypothesis needs dimension above a number with twenty million digits),
//! so the pipeline also runs in a best-effort mode with user thresholds while
//! keeping every structural rule and invariant checkable. Failures are data:
//! every violated guarantee yields a machine-readable diagnosis.

mod phase1;
mod phase2;
mod report;
mod subdivision;
mod valseq;

pub use phase1::{phase1_init, phase1_step, q1_find, q2_find, Phase1Ctx, Phase1State, Phase1Step};
pub use phase2::{phase2_step, Phase2Ctx, Phase2State, Phase2Step};
pub use report::{
    ConstantsReport, ExtractionReport, FailureKind, FailureRecord, Phase1Action, Phase1Record,
    Phase2Record, REPORT_SCHEMA_VERSION,
};
pub use subdivision::build_subdivision;
pub use valseq::ValSeq;

use crate::bits::Bits;
use crate::dim;
use crate::minor::{self, UGraph};
use crate::poset::{PointSet, Poset};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

/// A structural guarantee that holds independently of the threshold schedule
/// was violated; this always signals an implementation bug.
#[derive(Debug, Error, Clone)]
#[error("invariant {clause} violated: {detail}")]
pub struct InvariantViolation {
    pub clause: String,
    pub detail: String,
}

impl InvariantViolation {
    pub(crate) fn new(clause: &str, detail: impl Into<String>) -> Self {
        InvariantViolation { clause: clause.into(), detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub enum Mode {
    /// The exact thresholds n^(L-i); infeasible for any desk-scale input,
    /// reported as such together with the exact constants.
    Paper,
    /// User-supplied per-iteration chi thresholds and collection cap.
    BestEffort { thresholds: Vec<u64>, cap: usize },
}

#[derive(Clone, Debug)]
pub struct ExtractParams {
    /// Target clique size n.
    pub n: usize,
    /// Height bound h.
    pub h: usize,
    pub mode: Mode,
}

impl ExtractParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.n < 3 {
            return Err("target clique size must be at least 3".into());
        }
        if self.h < 2 {
            return Err("height bound must be at least 2".into());
        }
        validate_mode(&self.mode)
    }
}

pub(crate) fn validate_mode(mode: &Mode) -> Result<(), String> {
    match mode {
        Mode::Paper => Ok(()),
        Mode::BestEffort { thresholds, cap } => {
            if thresholds.is_empty() {
                return Err("best-effort mode needs at least one threshold".into());
            }
            if thresholds.contains(&0) {
                return Err("thresholds must be strictly positive".into());
            }
            if thresholds.windows(2).any(|w| w[1] > w[0]) {
                return Err("thresholds must be non-increasing".into());
            }
            if *cap == 0 || *cap > 4096 {
                return Err("collection cap must be in 1..=4096".into());
            }
            Ok(())
        }
    }
}

/// The per-iteration threshold as used in comparisons `chi > tau_i`. The
/// best-effort list repeats its last entry forever; paper-exact thresholds
/// dominate every computable chi at any reachable iteration.
#[derive(Clone, Copy, Debug)]
pub enum Schedule<'a> {
    Paper,
    List(&'a [u64]),
}

impl Schedule<'_> {
    pub fn exceeds(&self, value: usize, i: usize) -> bool {
        match self {
            Schedule::Paper => false,
            Schedule::List(v) => value as u64 > v[i.min(v.len() - 1)],
        }
    }

    pub fn describe(&self, i: usize) -> String {
        match self {
            Schedule::Paper => format!("n^(L-{i})"),
            Schedule::List(v) => v[i.min(v.len() - 1)].to_string(),
        }
    }
}

/// Exact big-integer constants of the bounded-height theorem:
/// M = C(n,2)^(h^n) and L = 2*C(M+h, h) - 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PaperConstants {
    pub m: BigUint,
    pub l: BigUint,
    /// Decimal digit count of n^L, documenting why no desk-scale input can
    /// meet the dimension hypothesis.
    pub dim_threshold_digits: f64,
}

pub fn paper_constants(n: u32, h: u32) -> PaperConstants {
    assert!(n >= 3 && h >= 2);
    constants_for(n, h)
}

/// The (k+k)-free variant: M = C(n,2)^((k-1)^n) and L = 2*C(M+k-1, k-1) - 1.
pub fn kk_constants(n: u32, k: u32) -> PaperConstants {
    assert!(n >= 3 && k >= 2);
    constants_for(n, k - 1)
}

fn constants_for(n: u32, steps: u32) -> PaperConstants {
    let pairs = BigUint::from(n) * BigUint::from(n - 1) / BigUint::from(2u32);
    let exponent = (steps as u64)
        .checked_pow(n)
        .expect("exponent h^n exceeds u64; constants not representable");
    let m = pow_big(&pairs, exponent);
    let l = BigUint::from(2u32) * binom_shifted(&m, steps) - BigUint::from(1u32);
    let digits = (l.to_f64().unwrap_or(f64::INFINITY) * (n as f64).log10()).floor() + 1.0;
    PaperConstants { m, l, dim_threshold_digits: digits }
}

fn pow_big(base: &BigUint, mut exp: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// C(m + h, h) by the exact stepwise product.
fn binom_shifted(m: &BigUint, h: u32) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for t in 1..=h {
        acc = acc * (m + BigUint::from(t)) / BigUint::from(t);
    }
    acc
}

/// Upper bound on Phase 1 iterations: 2*C(cap + h, h) - 1, saturating.
pub(crate) fn phase1_step_bound(cap: usize, h: usize) -> u128 {
    let mut acc: u128 = 1;
    for t in 1..=h as u128 {
        match acc.checked_mul(cap as u128 + t) {
            Some(v) => acc = v / t,
            None => return u128::MAX,
        }
    }
    acc.checked_mul(2).map_or(u128::MAX, |v| v - 1)
}

pub(crate) fn closed_up(p: &Poset, x: usize) -> Bits {
    let mut b = p.up_set(x).clone();
    b.insert(x);
    b
}

pub(crate) fn closed_dn(p: &Poset, x: usize) -> Bits {
    let mut b = p.dn_set(x).clone();
    b.insert(x);
    b
}

/// Runs the full pipeline on `p`: the min-max preprocessing when some point
/// is non-extreme, Phase 1, Phase 2 on whichever collection filled up, and
/// the subdivision construction. Never errors; failures are recorded in the
/// report.
pub fn extract(p: &Poset, params: &ExtractParams) -> ExtractionReport {
    let mut rep = ExtractionReport::new("extract", mode_name(&params.mode), params.n, p.n());
    rep.height_bound = Some(params.h);
    if let Mode::BestEffort { thresholds, cap } = &params.mode {
        rep.thresholds = Some(thresholds.clone());
        rep.cap = Some(*cap);
    }
    if let Err(detail) = params.validate() {
        rep.fail("setup", 0, FailureKind::BadParameters { detail }, None);
        return rep;
    }

    let (thresholds, cap) = match &params.mode {
        Mode::Paper => {
            let c = paper_constants(params.n as u32, params.h as u32);
            rep.constants = Some(ConstantsReport {
                m: c.m.to_string(),
                l: c.l.to_string(),
                dim_threshold_digits: c.dim_threshold_digits,
            });
            rep.fail(
                "setup",
                0,
                FailureKind::PaperModeInfeasible {
                    required_dimension_digits: c.dim_threshold_digits,
                },
                None,
            );
            return rep;
        }
        Mode::BestEffort { thresholds, cap } => (thresholds.as_slice(), *cap),
    };

    if p.height() > params.h {
        rep.fail(
            "setup",
            0,
            FailureKind::HeightExceedsBound { height: p.height(), bound: params.h },
            None,
        );
        return rep;
    }

    // Preprocessing: when the min-max pairs of the input do not clear the
    // opening threshold, attach pendant extremes to every interior point so
    // that the dimension is witnessed by min-max pairs. Height and the cover
    // graph (up to degree-1 vertices) are preserved.
    let schedule = Schedule::List(thresholds);
    let plain_chi = dim::chi(p, &p.minimals(), &p.maximals());
    let reducible = (0..p.n()).any(|x| !p.dn_set(x).is_empty());
    let q = if schedule.exceeds(plain_chi, 0) || !reducible {
        p.clone()
    } else {
        let reduced = p.min_max_reduction();
        let red_chi = dim::chi(&reduced, &reduced.minimals(), &reduced.maximals());
        if schedule.exceeds(red_chi, 0) {
            rep.reduced = true;
            reduced
        } else {
            // Neither attempt clears the threshold; report the input's chi.
            rep.fail(
                "phase1",
                0,
                FailureKind::ChiBelowThreshold {
                    chi: plain_chi,
                    threshold: schedule.describe(0),
                    iteration: 0,
                },
                None,
            );
            return rep;
        }
    };
    let cover = q.cover_digraph();
    let ctx = phase1::Phase1Ctx {
        p: &q,
        cover: &cover,
        h: params.h,
        cap,
        schedule,
    };

    let state = match phase1::run_phase1(&ctx, &mut rep) {
        Some(st) => st,
        None => return rep,
    };

    // One collection is full; Phase 2 consumes it. A full D-side collection
    // runs the same machinery on the dual poset.
    let (p2, b_side, ee0, dual) = if state.cc.len() == cap {
        (q.clone(), state.b.clone(), state.cc.clone(), false)
    } else if state.dd.len() == cap {
        (q.dual(), state.a.clone(), state.dd.clone(), true)
    } else {
        rep.fail(
            "phase1",
            state.iteration,
            FailureKind::InvariantViolation {
                clause: "termination".into(),
                detail: "terminated with neither collection full".into(),
            },
            Some(report::phase1_snapshot(&state.a, &state.b, &state.cc, &state.dd, state.iteration)),
        );
        return rep;
    };
    rep.dual_side = dual;
    run_phase2_and_build(&mut rep, &p2, &b_side, ee0, params.n, params.h);
    rep
}

pub(crate) fn mode_name(mode: &Mode) -> &'static str {
    match mode {
        Mode::Paper => "paper",
        Mode::BestEffort { .. } => "best-effort",
    }
}

/// Phase 2 rounds followed by the subdivision construction and verification,
/// shared by the bounded-height and (k+k)-free pipelines.
pub(crate) fn run_phase2_and_build(
    rep: &mut ExtractionReport,
    p2: &Poset,
    b_side: &PointSet,
    ee0: Vec<PointSet>,
    n: usize,
    h_eff: usize,
) {
    if h_eff < 2 {
        rep.fail(
            "phase2",
            0,
            FailureKind::BadParameters {
                detail: format!("descent needs a height surrogate of at least 2, got {h_eff}"),
            },
            None,
        );
        return;
    }
    let cover2 = p2.cover_digraph();
    let ctx = phase2::Phase2Ctx {
        p: p2,
        cover: &cover2,
        h: h_eff,
        m_base: ee0.len(),
        b: b_side,
    };
    let mut st = Phase2State { v: Vec::new(), ee: ee0 };
    for round in 1..=n {
        match phase2::phase2_step(&ctx, &st, round) {
            Err(v) => {
                rep.fail(
                    "phase2",
                    round,
                    FailureKind::InvariantViolation { clause: v.clause, detail: v.detail },
                    Some(report::phase2_snapshot(&st.v, &st.ee)),
                );
                return;
            }
            Ok(Phase2Step::Failed(kind)) => {
                rep.fail("phase2", round, kind, Some(report::phase2_snapshot(&st.v, &st.ee)));
                return;
            }
            Ok(Phase2Step::Advanced { state, record }) => {
                rep.phase2.push(record);
                st = state;
            }
        }
    }

    match subdivision::build_subdivision(p2, &cover2, &st.v, &st.ee) {
        Err(v) => {
            rep.fail(
                "subdivision",
                n,
                FailureKind::InvariantViolation { clause: v.clause, detail: v.detail },
                Some(report::phase2_snapshot(&st.v, &st.ee)),
            );
        }
        Ok(Err(kind)) => {
            rep.fail("subdivision", n, kind, Some(report::phase2_snapshot(&st.v, &st.ee)));
        }
        Ok(Ok(cert)) => {
            let g = UGraph::from_cover(&cover2);
            match minor::verify_subdivision(&g, &cert, n) {
                Ok(()) => {
                    rep.certificate = Some(cert);
                    rep.certificate_verified = Some(true);
                }
                Err(defect) => {
                    rep.certificate = Some(cert);
                    rep.certificate_verified = Some(false);
                    rep.fail(
                        "subdivision",
                        n,
                        FailureKind::InvariantViolation {
                            clause: "certificate".into(),
                            detail: defect.to_string(),
                        },
                        None,
                    );
                }
            }
        }
    }
}
