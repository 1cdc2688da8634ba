//! The (k+k)-free variant of the pipeline: Phase 1 maintains a standard
//! example with two antichains of collected points, replacing the height
//! bound by the far/close path-length split; Phase 2 and the subdivision
//! construction are shared with the bounded-height pipeline.

use crate::bits::Bits;
use crate::dim;
use crate::extract::{
    kk_constants, mode_name, phase1_step_bound, run_phase2_and_build, validate_mode,
    ConstantsReport, ExtractionReport, FailureKind, InvariantViolation, Mode, Phase1Action,
    Phase1Record, Schedule, ValSeq,
};
use crate::poset::{PointSet, Poset};

#[derive(Clone, Debug)]
pub struct KKParams {
    /// Target clique size n.
    pub n: usize,
    /// Chain-pair bound k of the (k+k)-freeness hypothesis.
    pub k: usize,
    pub mode: Mode,
}

impl KKParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.n < 3 {
            return Err("target clique size must be at least 3".into());
        }
        if self.k < 2 {
            return Err("chain-pair bound must be at least 2".into());
        }
        validate_mode(&self.mode)
    }
}

/// Phase 1 structure: the extreme sets of a standard example plus the two
/// collected antichains.
#[derive(Clone, Debug)]
pub struct KKPhase1State {
    pub a: PointSet,
    pub b: PointSet,
    pub c: PointSet,
    pub d: PointSet,
    pub iteration: usize,
}

pub(crate) struct KKCtx<'a> {
    pub p: &'a Poset,
    pub k: usize,
    pub cap: usize,
    pub schedule: Schedule<'a>,
}

pub enum KKPhase1Step {
    Updated { state: KKPhase1State, action: Phase1Action },
    Terminated,
    Failed(FailureKind),
}

/// Splits `side - {pivot_mate}` by directed path length to/from the pivot:
/// far members reach it with a path of at least `k` vertices. Forward
/// (`from_side` true) measures paths side -> pivot, backward pivot -> side.
pub fn far_close_split(
    p: &Poset,
    side: &PointSet,
    exclude: usize,
    pivot: usize,
    k: usize,
    from_side: bool,
) -> (PointSet, PointSet) {
    let mut far = Bits::new(p.n());
    let mut close = Bits::new(p.n());
    for x in side.iter() {
        if x == exclude {
            continue;
        }
        let len = if from_side {
            p.longest_path_between(x, pivot)
        } else {
            p.longest_path_between(pivot, x)
        };
        if len.is_some_and(|l| l >= k) {
            far.insert(x);
        } else {
            close.insert(x);
        }
    }
    (far, close)
}

/// The partner of `x` inside the opposite side of a standard example: the
/// unique incomparable point.
fn partner(p: &Poset, x: usize, other: &PointSet) -> Option<usize> {
    let mut found = None;
    for y in other.iter() {
        if p.incomparable(x, y) {
            if found.is_some() {
                return None;
            }
            found = Some(y);
        }
    }
    found
}

/// Points of `side` incomparable to at least one point of `chosen`.
fn partners_of(p: &Poset, side: &PointSet, chosen: &PointSet) -> PointSet {
    Bits::from_indices(
        p.n(),
        side.iter().filter(|&x| chosen.iter().any(|y| p.incomparable(x, y))),
    )
}

pub(crate) fn kk_phase1_init(ctx: &KKCtx) -> Result<KKPhase1State, FailureKind> {
    let (size, witness) = dim::largest_standard_example(ctx.p);
    if !ctx.schedule.exceeds(size, 0) {
        return Err(FailureKind::NoStandardExample {
            found: size,
            threshold: ctx.schedule.describe(0),
        });
    }
    let w = witness.expect("size above a positive threshold implies a witness");
    Ok(KKPhase1State {
        a: Bits::from_indices(ctx.p.n(), w.a.iter().copied()),
        b: Bits::from_indices(ctx.p.n(), w.b.iter().copied()),
        c: Bits::new(ctx.p.n()),
        d: Bits::new(ctx.p.n()),
        iteration: 0,
    })
}

/// One loop iteration of the (k+k)-free Phase 1.
pub(crate) fn kk_phase1_step(
    ctx: &KKCtx,
    st: &KKPhase1State,
) -> Result<KKPhase1Step, InvariantViolation> {
    let i = st.iteration + 1;
    // Q1: a point above a collected c whose upset keeps a large B-side.
    let q1 = (0..ctx.p.n()).find(|&pt| {
        !ctx.p.dn_set(pt).is_disjoint(&st.c)
            && ctx
                .schedule
                .exceeds(st.b.intersection(&closed_up(ctx.p, pt)).count(), i)
    });
    if let Some(pt) = q1 {
        let b2 = st.b.intersection(&closed_up(ctx.p, pt));
        let a2 = partners_of(ctx.p, &st.a, &b2);
        let mut c2 = st.c.difference(ctx.p.dn_set(pt));
        c2.insert(pt);
        let removed = st.c.count() - st.c.difference(ctx.p.dn_set(pt)).count();
        let next = KKPhase1State { a: a2, b: b2, c: c2, d: st.d.clone(), iteration: i };
        return commit(ctx, st, next, Phase1Action::Q1Update { point: pt, removed_sets: removed });
    }
    // Q2: dual.
    let q2 = (0..ctx.p.n()).find(|&pt| {
        !ctx.p.up_set(pt).is_disjoint(&st.d)
            && ctx
                .schedule
                .exceeds(st.a.intersection(&closed_dn(ctx.p, pt)).count(), i)
    });
    if let Some(pt) = q2 {
        let a2 = st.a.intersection(&closed_dn(ctx.p, pt));
        let b2 = partners_of(ctx.p, &st.b, &a2);
        let mut d2 = st.d.difference(ctx.p.up_set(pt));
        d2.insert(pt);
        let removed = st.d.count() - st.d.difference(ctx.p.up_set(pt)).count();
        let next = KKPhase1State { a: a2, b: b2, c: st.c.clone(), d: d2, iteration: i };
        return commit(ctx, st, next, Phase1Action::Q2Update { point: pt, removed_sets: removed });
    }
    // Q3: grow one antichain from the far/close split.
    if st.c.count() < ctx.cap && st.d.count() < ctx.cap {
        let a0 = st.a.first().expect("standard example has minimal side");
        let b0 = partner(ctx.p, a0, &st.b).ok_or_else(|| {
            InvariantViolation::new("standard-example", format!("{a0} has no unique partner"))
        })?;
        let (_, a_cl) = far_close_split(ctx.p, &st.a, a0, b0, ctx.k, true);
        let (_, b_cl) = far_close_split(ctx.p, &st.b, b0, a0, ctx.k, false);
        // The dichotomy driven by (k+k)-freeness: every remaining partner
        // pair has a close end.
        for a in st.a.iter() {
            if a == a0 {
                continue;
            }
            let b = partner(ctx.p, a, &st.b).ok_or_else(|| {
                InvariantViolation::new("standard-example", format!("{a} has no unique partner"))
            })?;
            if !a_cl.contains(a) && !b_cl.contains(b) {
                return Err(InvariantViolation::new(
                    "far-close-dichotomy",
                    format!("pair ({a}, {b}) is far on both sides"),
                ));
            }
        }
        let total = st.b.count();
        // Pigeonhole over the dichotomy: one close side covers half the
        // remaining pairs.
        if 2 * b_cl.count() < total.saturating_sub(1)
            && 2 * a_cl.count() < total.saturating_sub(1)
        {
            return Err(InvariantViolation::new(
                "close-side-size",
                format!(
                    "both close sides below ({total} - 1)/2: |A_cl| = {}, |B_cl| = {}",
                    a_cl.count(),
                    b_cl.count()
                ),
            ));
        }
        let (next, action) = if 2 * b_cl.count() >= total.saturating_sub(1) {
            let a2 = partners_of(ctx.p, &st.a, &b_cl);
            let mut c2 = st.c.clone();
            c2.insert(a0);
            (
                KKPhase1State { a: a2, b: b_cl, c: c2, d: st.d.clone(), iteration: i },
                Phase1Action::Q3ExtendC { layer: 0, set_size: 1 },
            )
        } else {
            let b2 = partners_of(ctx.p, &st.b, &a_cl);
            let mut d2 = st.d.clone();
            d2.insert(b0);
            (
                KKPhase1State { a: a_cl, b: b2, c: st.c.clone(), d: d2, iteration: i },
                Phase1Action::Q3ExtendD { layer: 0, set_size: 1 },
            )
        };
        return commit(ctx, st, next, action);
    }
    Ok(KKPhase1Step::Terminated)
}

fn closed_up(p: &Poset, x: usize) -> Bits {
    let mut b = p.up_set(x).clone();
    b.insert(x);
    b
}

fn closed_dn(p: &Poset, x: usize) -> Bits {
    let mut b = p.dn_set(x).clone();
    b.insert(x);
    b
}

fn commit(
    ctx: &KKCtx,
    old: &KKPhase1State,
    next: KKPhase1State,
    action: Phase1Action,
) -> Result<KKPhase1Step, InvariantViolation> {
    let size = next.a.count();
    if !ctx.schedule.exceeds(size, next.iteration) {
        return Ok(KKPhase1Step::Failed(FailureKind::ChiBelowThreshold {
            chi: size,
            threshold: ctx.schedule.describe(next.iteration),
            iteration: next.iteration,
        }));
    }
    verify_kk_state(ctx, &next)?;
    check_quality(ctx, old, &next, &action)?;
    Ok(KKPhase1Step::Updated { state: next, action })
}

fn val_of(ctx: &KKCtx, x: usize, targets: &PointSet, downward: bool) -> u32 {
    let best = targets
        .iter()
        .filter_map(|t| {
            if downward {
                ctx.p.longest_path_between(x, t)
            } else {
                ctx.p.longest_path_between(t, x)
            }
        })
        .max()
        .unwrap_or(0);
    best as u32
}

pub(crate) fn kk_val_seq_c(ctx: &KKCtx, c: &PointSet, b: &PointSet) -> ValSeq {
    let vals = c.iter().map(|x| val_of(ctx, x, b, true)).collect();
    ValSeq::new(vals, ctx.cap, ctx.k as u32)
}

pub(crate) fn kk_val_seq_d(ctx: &KKCtx, d: &PointSet, a: &PointSet) -> ValSeq {
    let vals = d.iter().map(|x| val_of(ctx, x, a, false)).collect();
    ValSeq::new(vals, ctx.cap, ctx.k as u32)
}

fn check_quality(
    ctx: &KKCtx,
    old: &KKPhase1State,
    new: &KKPhase1State,
    action: &Phase1Action,
) -> Result<(), InvariantViolation> {
    let old_c = kk_val_seq_c(ctx, &old.c, &old.b);
    let old_d = kk_val_seq_d(ctx, &old.d, &old.a);
    let new_c = kk_val_seq_c(ctx, &new.c, &new.b);
    let new_d = kk_val_seq_d(ctx, &new.d, &new.a);
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
        Err(InvariantViolation::new("val-decrease", "quality pair did not improve"))
    }
}

/// The full (k+k) invariant audit: A/B induce a standard example, both
/// collected sets are antichains, each collected point brackets the current
/// extreme sets, and all its directed paths to them are short.
fn verify_kk_state(ctx: &KKCtx, st: &KKPhase1State) -> Result<(), InvariantViolation> {
    let fail = |clause: &str, detail: String| Err(InvariantViolation::new(clause, detail));
    if st.a.count() != st.b.count() {
        return fail("standard-example", "sides differ in size".into());
    }
    for a in st.a.iter() {
        let mut inc = 0;
        for b in st.b.iter() {
            if ctx.p.incomparable(a, b) {
                inc += 1;
            } else if !ctx.p.lt(a, b) {
                return fail("standard-example", format!("{a} not below {b}"));
            }
        }
        if inc != 1 {
            return fail("standard-example", format!("{a} has {inc} partners"));
        }
    }
    for (set, name) in [(&st.c, "antichain-C"), (&st.d, "antichain-D")] {
        if set.count() > ctx.cap {
            return fail(name, "exceeds cap".into());
        }
        for x in set.iter() {
            if !set.intersection(ctx.p.up_set(x)).is_empty() {
                return fail(name, format!("{x} comparable to another member"));
            }
        }
    }
    for c in st.c.iter() {
        if !st.a.is_disjoint(&closed_dn(ctx.p, c)) {
            return fail("collection-C", format!("A meets the downset of {c}"));
        }
        if !st.b.is_subset(ctx.p.up_set(c)) {
            return fail("collection-C", format!("B not above {c}"));
        }
        for b in st.b.iter() {
            if ctx.p.longest_path_between(c, b).is_some_and(|l| l >= ctx.k) {
                return fail("collection-C", format!("path {c} -> {b} has at least {} vertices", ctx.k));
            }
        }
    }
    for d in st.d.iter() {
        if !st.b.is_disjoint(&closed_up(ctx.p, d)) {
            return fail("collection-D", format!("B meets the upset of {d}"));
        }
        if !st.a.is_subset(ctx.p.dn_set(d)) {
            return fail("collection-D", format!("A not below {d}"));
        }
        for a in st.a.iter() {
            if ctx.p.longest_path_between(a, d).is_some_and(|l| l >= ctx.k) {
                return fail("collection-D", format!("path {a} -> {d} has at least {} vertices", ctx.k));
            }
        }
    }
    Ok(())
}

fn kk_record(ctx: &KKCtx, st: &KKPhase1State, action: Phase1Action) -> Phase1Record {
    Phase1Record {
        iteration: st.iteration,
        action,
        chi: st.a.count(),
        a_size: st.a.count(),
        b_size: st.b.count(),
        cc_size: st.c.count(),
        dd_size: st.d.count(),
        val_c: kk_val_seq_c(ctx, &st.c, &st.b).entries().to_vec(),
        val_d: kk_val_seq_d(ctx, &st.d, &st.a).entries().to_vec(),
    }
}

/// Full (k+k)-free pipeline. Refuses non-(k+k)-free inputs up front; all
/// other shortfalls are reported as structured failures.
pub fn kk_extract(p: &Poset, params: &KKParams) -> ExtractionReport {
    let mut rep = ExtractionReport::new("kk-extract", mode_name(&params.mode), params.n, p.n());
    rep.chain_bound = Some(params.k);
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
            let c = kk_constants(params.n as u32, params.k as u32);
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

    if let Some((chain_a, chain_b)) = p.kk_witness(params.k) {
        rep.fail("setup", 0, FailureKind::NotKkFree { chain_a, chain_b }, None);
        return rep;
    }

    let ctx = KKCtx { p, k: params.k, cap, schedule: Schedule::List(thresholds) };
    let mut st = match kk_phase1_init(&ctx) {
        Ok(st) => st,
        Err(kind) => {
            rep.fail("phase1", 0, kind, None);
            return rep;
        }
    };
    rep.phase1.push(kk_record(&ctx, &st, Phase1Action::Init));
    let bound = phase1_step_bound(cap, params.k - 1);
    let mut steps: u128 = 0;
    loop {
        steps += 1;
        if steps > bound {
            rep.fail(
                "phase1",
                st.iteration,
                FailureKind::InvariantViolation {
                    clause: "termination-bound".into(),
                    detail: format!("exceeded {bound} iterations"),
                },
                Some(kk_snapshot(&st)),
            );
            return rep;
        }
        match kk_phase1_step(&ctx, &st) {
            Err(v) => {
                rep.fail(
                    "phase1",
                    st.iteration + 1,
                    FailureKind::InvariantViolation { clause: v.clause, detail: v.detail },
                    Some(kk_snapshot(&st)),
                );
                return rep;
            }
            Ok(KKPhase1Step::Failed(kind)) => {
                rep.fail("phase1", st.iteration + 1, kind, Some(kk_snapshot(&st)));
                return rep;
            }
            Ok(KKPhase1Step::Terminated) => {
                rep.phase1_terminated = true;
                break;
            }
            Ok(KKPhase1Step::Updated { state, action }) => {
                rep.phase1.push(kk_record(&ctx, &state, action));
                st = state;
            }
        }
    }

    // Phase 2 consumes whichever antichain filled up, as singleton sets; the
    // D-side runs on the dual poset. The short-path invariant bounds the
    // height of the traversed region by k - 1.
    let singletons = |set: &PointSet| -> Vec<PointSet> {
        set.iter().map(|x| Bits::from_indices(p.n(), [x])).collect()
    };
    let (p2, b_side, ee0, dual) = if st.c.count() == cap {
        (p.clone(), st.b.clone(), singletons(&st.c), false)
    } else if st.d.count() == cap {
        (p.dual(), st.a.clone(), singletons(&st.d), true)
    } else {
        rep.fail(
            "phase1",
            st.iteration,
            FailureKind::InvariantViolation {
                clause: "termination".into(),
                detail: "terminated with neither antichain full".into(),
            },
            Some(kk_snapshot(&st)),
        );
        return rep;
    };
    rep.dual_side = dual;
    run_phase2_and_build(&mut rep, &p2, &b_side, ee0, params.n, params.k - 1);
    rep
}

fn kk_snapshot(st: &KKPhase1State) -> serde_json::Value {
    serde_json::json!({
        "iteration": st.iteration,
        "a": st.a.iter().collect::<Vec<_>>(),
        "b": st.b.iter().collect::<Vec<_>>(),
        "c": st.c.iter().collect::<Vec<_>>(),
        "d": st.d.iter().collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    fn best_effort(thresholds: Vec<u64>, cap: usize) -> Mode {
        Mode::BestEffort { thresholds, cap }
    }

    #[test]
    fn refuses_non_kk_free_input() {
        // Kelly's example carries two long incomparable cover chains.
        let p = gens::kelly(6);
        let rep = kk_extract(&p, &KKParams { n: 3, k: 3, mode: best_effort(vec![4, 2, 1], 3) });
        assert!(matches!(
            rep.failure.as_ref().unwrap().kind,
            FailureKind::NotKkFree { .. }
        ));
    }

    #[test]
    fn chain_fails_at_init() {
        let p = gens::chain(6);
        let rep = kk_extract(&p, &KKParams { n: 3, k: 3, mode: best_effort(vec![2, 1], 2) });
        assert!(matches!(
            rep.failure.as_ref().unwrap().kind,
            FailureKind::NoStandardExample { found: 0, .. }
        ));
    }

    #[test]
    fn interval_orders_lack_standard_examples() {
        // (2+2)-free means S_2-free, so the k = 2 pipeline can never start.
        let p = gens::random_interval_order(12, 5);
        let rep = kk_extract(&p, &KKParams { n: 3, k: 2, mode: best_effort(vec![1], 2) });
        assert!(matches!(
            rep.failure.as_ref().unwrap().kind,
            FailureKind::NoStandardExample { .. }
        ));
    }

    #[test]
    fn far_sets_on_tall_fixture() {
        // Chain 0 < 1 < 2 next to the incomparable pivot 3 above 0:
        // 0 < 1 < 2, 0 < 3.
        let p = Poset::from_cover(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let side = Bits::from_indices(4, [0]);
        let (far, close) = far_close_split(&p, &side, usize::MAX, 2, 2, true);
        assert_eq!(far.iter().collect::<Vec<_>>(), vec![0], "0 -> 2 has 3 vertices");
        assert!(close.is_empty());
        let (far, close) = far_close_split(&p, &side, usize::MAX, 3, 2, true);
        assert_eq!(far.iter().collect::<Vec<_>>(), vec![0], "0 -> 3 has exactly 2 vertices");
        assert!(close.is_empty());
        let (far, close) = far_close_split(&p, &side, usize::MAX, 3, 3, true);
        assert!(far.is_empty(), "no path with 3 vertices reaches 3");
        assert_eq!(close.iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn standard_example_run_succeeds() {
        // S_8 is (3+3)-free; the run mirrors the bounded-height pipeline on
        // height-2 input with surrogate k - 1 = 2.
        let p = gens::standard_example(8);
        let rep = kk_extract(
            &p,
            &KKParams { n: 3, k: 3, mode: best_effort(vec![7, 6, 5, 4, 3, 2, 1], 4) },
        );
        assert!(rep.failure.is_none(), "failure: {:?}", rep.failure);
        assert!(rep.succeeded());
        assert_eq!(rep.certificate.as_ref().unwrap().principals.len(), 3);
    }
}
