//! Phase 1: iteratively improve the structure (A, B, C-collection,
//! D-collection) by answering the three questions, with every invariant
//! re-verified after each step.

use super::report::{self, ExtractionReport, FailureKind, Phase1Action, Phase1Record};
use super::valseq::ValSeq;
use super::{closed_dn, closed_up, phase1_step_bound, InvariantViolation, Schedule};
use crate::bits::Bits;
use crate::dim;
use crate::poset::{CoverDigraph, PointSet, Poset};
use crate::unfold::{self, SupportCase, UnfoldError};

/// The maintained structure. `cc` and `dd` are the collections of pairwise
/// disjoint connected support sets below B and above A respectively.
#[derive(Clone, Debug)]
pub struct Phase1State {
    pub a: PointSet,
    pub b: PointSet,
    pub cc: Vec<PointSet>,
    pub dd: Vec<PointSet>,
    pub iteration: usize,
}

/// Shared immutable context of a Phase 1 run.
pub struct Phase1Ctx<'a> {
    pub p: &'a Poset,
    pub cover: &'a CoverDigraph,
    pub h: usize,
    pub cap: usize,
    pub schedule: Schedule<'a>,
}

pub enum Phase1Step {
    Updated { state: Phase1State, action: Phase1Action },
    Terminated,
    Failed(FailureKind),
}

enum StateCheck {
    Pass,
    ThresholdFailed { chi: usize },
}

/// Initial structure: A = Min(P), B = Max(P), both collections empty.
/// Fails when chi(Min, Max) does not clear the opening threshold.
pub fn phase1_init(ctx: &Phase1Ctx) -> Result<Phase1State, FailureKind> {
    let a = ctx.p.minimals();
    let b = ctx.p.maximals();
    let chi = dim::chi(ctx.p, &a, &b);
    if !ctx.schedule.exceeds(chi, 0) {
        return Err(FailureKind::ChiBelowThreshold {
            chi,
            threshold: ctx.schedule.describe(0),
            iteration: 0,
        });
    }
    Ok(Phase1State { a, b, cc: Vec::new(), dd: Vec::new(), iteration: 0 })
}

/// Runs Phase 1 to termination, appending a record per step; returns the
/// final state, or `None` after recording a failure in the report.
pub(crate) fn run_phase1(ctx: &Phase1Ctx, rep: &mut ExtractionReport) -> Option<Phase1State> {
    let mut state = match phase1_init(ctx) {
        Ok(st) => st,
        Err(kind) => {
            rep.fail("phase1", 0, kind, None);
            return None;
        }
    };
    rep.phase1.push(record(ctx, &state, Phase1Action::Init));
    let bound = phase1_step_bound(ctx.cap, ctx.h);
    let mut steps: u128 = 0;
    loop {
        steps += 1;
        if steps > bound {
            rep.fail(
                "phase1",
                state.iteration,
                FailureKind::InvariantViolation {
                    clause: "termination-bound".into(),
                    detail: format!("exceeded {bound} iterations"),
                },
                Some(snapshot(&state)),
            );
            return None;
        }
        match phase1_step(ctx, &state) {
            Err(v) => {
                rep.fail(
                    "phase1",
                    state.iteration + 1,
                    FailureKind::InvariantViolation { clause: v.clause, detail: v.detail },
                    Some(snapshot(&state)),
                );
                return None;
            }
            Ok(Phase1Step::Failed(kind)) => {
                rep.fail("phase1", state.iteration + 1, kind, Some(snapshot(&state)));
                return None;
            }
            Ok(Phase1Step::Terminated) => {
                rep.phase1_terminated = true;
                return Some(state);
            }
            Ok(Phase1Step::Updated { state: next, action }) => {
                rep.phase1.push(record(ctx, &next, action));
                state = next;
            }
        }
    }
}

fn snapshot(st: &Phase1State) -> serde_json::Value {
    report::phase1_snapshot(&st.a, &st.b, &st.cc, &st.dd, st.iteration)
}

fn record(ctx: &Phase1Ctx, st: &Phase1State, action: Phase1Action) -> Phase1Record {
    Phase1Record {
        iteration: st.iteration,
        action,
        chi: dim::chi(ctx.p, &st.a, &st.b),
        a_size: st.a.count(),
        b_size: st.b.count(),
        cc_size: st.cc.len(),
        dd_size: st.dd.len(),
        val_c: val_seq_c(ctx, &st.cc, &st.b).entries().to_vec(),
        val_d: val_seq_d(ctx, &st.dd, &st.a).entries().to_vec(),
    }
}

/// One loop iteration: Q1, then Q2, then Q3. Structural invariant breaks
/// surface as `InvariantViolation`; threshold shortfalls are data.
pub fn phase1_step(
    ctx: &Phase1Ctx,
    st: &Phase1State,
) -> Result<Phase1Step, InvariantViolation> {
    let i = st.iteration + 1;
    if let Some(point) = q1_find_at(ctx, st, i) {
        let dp = closed_dn(ctx.p, point);
        let kept: Vec<PointSet> = st.cc.iter().filter(|c| c.is_disjoint(&dp)).cloned().collect();
        let removed = st.cc.len() - kept.len();
        if removed == 0 {
            return Err(InvariantViolation::new(
                "q1-removal",
                "witness point is above no collected set",
            ));
        }
        let mut cc = kept;
        cc.push(Bits::from_indices(ctx.p.n(), [point]));
        let next = Phase1State {
            a: st.a.difference(&dp),
            b: st.b.intersection(&closed_up(ctx.p, point)),
            cc,
            dd: st.dd.clone(),
            iteration: i,
        };
        return commit(ctx, st, next, Phase1Action::Q1Update { point, removed_sets: removed });
    }
    if let Some(point) = q2_find_at(ctx, st, i) {
        let up = closed_up(ctx.p, point);
        let kept: Vec<PointSet> = st.dd.iter().filter(|d| d.is_disjoint(&up)).cloned().collect();
        let removed = st.dd.len() - kept.len();
        if removed == 0 {
            return Err(InvariantViolation::new(
                "q2-removal",
                "witness point is below no collected set",
            ));
        }
        let mut dd = kept;
        dd.push(Bits::from_indices(ctx.p.n(), [point]));
        let next = Phase1State {
            a: st.a.intersection(&closed_dn(ctx.p, point)),
            b: st.b.difference(&up),
            cc: st.cc.clone(),
            dd,
            iteration: i,
        };
        return commit(ctx, st, next, Phase1Action::Q2Update { point, removed_sets: removed });
    }
    if st.cc.len() < ctx.cap && st.dd.len() < ctx.cap {
        let chi = dim::chi(ctx.p, &st.a, &st.b);
        if chi < 3 {
            return Ok(Phase1Step::Failed(FailureKind::ChiTooSmallForSupport {
                chi,
                iteration: i,
            }));
        }
        let sel = match unfold::select_support(ctx.p, &st.a, &st.b) {
            Ok(sel) => sel,
            Err(UnfoldError::ChiTooSmall { chi }) => {
                return Ok(Phase1Step::Failed(FailureKind::ChiTooSmallForSupport {
                    chi,
                    iteration: i,
                }))
            }
            Err(e) => return Err(InvariantViolation::new("support-selection", e.to_string())),
        };
        let set_size = sel.s.count();
        let (next, action) = match sel.case_tag {
            SupportCase::APrimeAvoidsS => {
                let mut cc = st.cc.clone();
                cc.push(sel.s);
                (
                    Phase1State {
                        a: sel.a_prime,
                        b: sel.b_prime,
                        cc,
                        dd: st.dd.clone(),
                        iteration: i,
                    },
                    Phase1Action::Q3ExtendC { layer: sel.ell, set_size },
                )
            }
            SupportCase::APrimeBelowS => {
                let mut dd = st.dd.clone();
                dd.push(sel.s);
                (
                    Phase1State {
                        a: sel.a_prime,
                        b: sel.b_prime,
                        cc: st.cc.clone(),
                        dd,
                        iteration: i,
                    },
                    Phase1Action::Q3ExtendD { layer: sel.ell, set_size },
                )
            }
        };
        return commit(ctx, st, next, action);
    }
    Ok(Phase1Step::Terminated)
}

fn commit(
    ctx: &Phase1Ctx,
    old: &Phase1State,
    next: Phase1State,
    action: Phase1Action,
) -> Result<Phase1Step, InvariantViolation> {
    match verify_state(ctx, &next)? {
        StateCheck::ThresholdFailed { chi } => Ok(Phase1Step::Failed(FailureKind::ChiBelowThreshold {
            chi,
            threshold: ctx.schedule.describe(next.iteration),
            iteration: next.iteration,
        })),
        StateCheck::Pass => {
            check_quality_improved(ctx, old, &next, &action)?;
            Ok(Phase1Step::Updated { state: next, action })
        }
    }
}

/// Deterministic Q1 scan: the lowest point strictly above some collected
/// C-set for which chi(A, B ∩ Up(p)) still clears the current threshold.
pub fn q1_find(p: &Poset, st: &Phase1State, thresholds: &[u64]) -> Option<usize> {
    q1_scan(p, st, Schedule::List(thresholds), st.iteration + 1)
}

/// Dual scan for the D-side collection.
pub fn q2_find(p: &Poset, st: &Phase1State, thresholds: &[u64]) -> Option<usize> {
    q2_scan(p, st, Schedule::List(thresholds), st.iteration + 1)
}

fn q1_find_at(ctx: &Phase1Ctx, st: &Phase1State, i: usize) -> Option<usize> {
    q1_scan(ctx.p, st, ctx.schedule, i)
}

fn q2_find_at(ctx: &Phase1Ctx, st: &Phase1State, i: usize) -> Option<usize> {
    q2_scan(ctx.p, st, ctx.schedule, i)
}

fn q1_scan(p: &Poset, st: &Phase1State, schedule: Schedule, i: usize) -> Option<usize> {
    let mut members = Bits::new(p.n());
    for c in &st.cc {
        members.union_with(c);
    }
    if members.is_empty() {
        return None;
    }
    (0..p.n()).find(|&pt| {
        if p.dn_set(pt).is_disjoint(&members) {
            return false;
        }
        let bup = st.b.intersection(&closed_up(p, pt));
        if bup.is_empty() {
            return false;
        }
        schedule.exceeds(dim::chi(p, &st.a, &bup), i)
    })
}

fn q2_scan(p: &Poset, st: &Phase1State, schedule: Schedule, i: usize) -> Option<usize> {
    let mut members = Bits::new(p.n());
    for d in &st.dd {
        members.union_with(d);
    }
    if members.is_empty() {
        return None;
    }
    (0..p.n()).find(|&pt| {
        if p.up_set(pt).is_disjoint(&members) {
            return false;
        }
        let adn = st.a.intersection(&closed_dn(p, pt));
        if adn.is_empty() {
            return false;
        }
        schedule.exceeds(dim::chi(p, &adn, &st.b), i)
    })
}

/// Value of one C-side set against the current B: h for non-singletons, the
/// longest directed cover path into B for singletons.
fn val_c(ctx: &Phase1Ctx, set: &PointSet, b: &PointSet) -> u32 {
    if set.count() > 1 {
        return ctx.h as u32;
    }
    let c = set.first().expect("collection sets are nonempty");
    let best = b
        .iter()
        .filter_map(|t| ctx.p.longest_path_between(c, t))
        .max()
        .unwrap_or(0);
    best as u32
}

fn val_d(ctx: &Phase1Ctx, set: &PointSet, a: &PointSet) -> u32 {
    if set.count() > 1 {
        return ctx.h as u32;
    }
    let d = set.first().expect("collection sets are nonempty");
    let best = a
        .iter()
        .filter_map(|s| ctx.p.longest_path_between(s, d))
        .max()
        .unwrap_or(0);
    best as u32
}

pub(crate) fn val_seq_c(ctx: &Phase1Ctx, cc: &[PointSet], b: &PointSet) -> ValSeq {
    let vals = cc.iter().map(|c| val_c(ctx, c, b)).collect();
    ValSeq::new(vals, ctx.cap, ctx.h as u32 + 1)
}

pub(crate) fn val_seq_d(ctx: &Phase1Ctx, dd: &[PointSet], a: &PointSet) -> ValSeq {
    let vals = dd.iter().map(|d| val_d(ctx, d, a)).collect();
    ValSeq::new(vals, ctx.cap, ctx.h as u32 + 1)
}

fn check_quality_improved(
    ctx: &Phase1Ctx,
    old: &Phase1State,
    new: &Phase1State,
    action: &Phase1Action,
) -> Result<(), InvariantViolation> {
    let old_c = val_seq_c(ctx, &old.cc, &old.b);
    let old_d = val_seq_d(ctx, &old.dd, &old.a);
    let new_c = val_seq_c(ctx, &new.cc, &new.b);
    let new_d = val_seq_d(ctx, &new.dd, &new.a);
    let ok = match action {
        Phase1Action::Q1Update { .. } | Phase1Action::Q3ExtendC { .. } => {
            new_c < old_c && new_d <= old_d
        }
        Phase1Action::Q2Update { .. } | Phase1Action::Q3ExtendD { .. } => {
            new_c <= old_c && new_d < old_d
        }
        Phase1Action::Init => true,
    };
    if ok {
        Ok(())
    } else {
        Err(InvariantViolation::new(
            "val-decrease",
            format!(
                "(val C, val D) must strictly improve: {:?}/{:?} -> {:?}/{:?}",
                old_c.entries(),
                old_d.entries(),
                new_c.entries(),
                new_d.entries()
            ),
        ))
    }
}

/// Full invariant audit of a state: sides extreme, threshold cleared, and
/// both collections within their structural clauses.
fn verify_state(ctx: &Phase1Ctx, st: &Phase1State) -> Result<StateCheck, InvariantViolation> {
    let min = ctx.p.minimals();
    let max = ctx.p.maximals();
    if !st.a.is_subset(&min) {
        return Err(InvariantViolation::new("a-minimal", "A contains a non-minimal point"));
    }
    if !st.b.is_subset(&max) {
        return Err(InvariantViolation::new("b-maximal", "B contains a non-maximal point"));
    }
    let chi = dim::chi(ctx.p, &st.a, &st.b);
    if !ctx.schedule.exceeds(chi, st.iteration) {
        return Ok(StateCheck::ThresholdFailed { chi });
    }
    check_collection(ctx, &st.cc, &st.a, &st.b, true)?;
    check_collection(ctx, &st.dd, &st.a, &st.b, false)?;
    for (set, pad) in st
        .cc
        .iter()
        .map(|c| (c, val_c(ctx, c, &st.b)))
        .chain(st.dd.iter().map(|d| (d, val_d(ctx, d, &st.a))))
    {
        if pad as usize > ctx.h {
            return Err(InvariantViolation::new(
                "val-range",
                format!("set {:?} has val {} above the height bound", report::points(set), pad),
            ));
        }
    }
    Ok(StateCheck::Pass)
}

/// Clauses (i)-(iii) for one collection; `c_side` selects the orientation.
fn check_collection(
    ctx: &Phase1Ctx,
    sets: &[PointSet],
    a: &PointSet,
    b: &PointSet,
    c_side: bool,
) -> Result<(), InvariantViolation> {
    let clause = if c_side { "collection-C" } else { "collection-D" };
    let fail = |detail: String| Err(InvariantViolation::new(clause, detail));
    if sets.len() > ctx.cap {
        return fail(format!("{} sets exceed cap {}", sets.len(), ctx.cap));
    }
    for (ix, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return fail("empty member".into());
        }
        for other in &sets[ix + 1..] {
            if !set.is_disjoint(other) {
                return fail("members are not pairwise disjoint".into());
            }
        }
        if !unfold::connected_within(ctx.cover, set) {
            return fail("member is not connected in the cover graph".into());
        }
        let dset = ctx.p.downset_of(set);
        let uset = ctx.p.upset_of(set);
        if c_side {
            if !a.is_disjoint(&dset) {
                return fail("A meets the downset of a member".into());
            }
            if !b.is_subset(&uset) {
                return fail("B is not contained in the upset of a member".into());
            }
        } else {
            if !b.is_disjoint(&uset) {
                return fail("B meets the upset of a member".into());
            }
            if !a.is_subset(&dset) {
                return fail("A is not contained in the downset of a member".into());
            }
        }
    }
    // Singleton clause: the reach of a singleton avoids every other member.
    for (ix, set) in sets.iter().enumerate() {
        if set.count() != 1 {
            continue;
        }
        let x = set.first().unwrap();
        let reach = if c_side { closed_dn(ctx.p, x) } else { closed_up(ctx.p, x) };
        for (jx, other) in sets.iter().enumerate() {
            if ix != jx && !reach.is_disjoint(other) {
                return fail(format!("singleton {x} reaches another member"));
            }
        }
    }
    Ok(())
}
