//! Phase 2: fix one principal vertex per round while refining the surviving
//! collection, keeping the branching invariants (D1)-(D3).

use super::report::{FailureKind, Phase2Record};
use super::{closed_dn, closed_up, InvariantViolation};
use crate::bits::Bits;
use crate::poset::{CoverDigraph, PointSet, Poset};

/// The ordered principal vertices fixed so far and the surviving collection.
#[derive(Clone, Debug)]
pub struct Phase2State {
    pub v: Vec<usize>,
    pub ee: Vec<PointSet>,
}

/// Shared immutable context of a Phase 2 run.
pub struct Phase2Ctx<'a> {
    pub p: &'a Poset,
    pub cover: &'a CoverDigraph,
    /// Height bound of the region the descent moves through (k-1 in the
    /// (k+k)-free pipeline).
    pub h: usize,
    /// Collection size entering Phase 2; the stage bounds are its iterated
    /// h-th roots.
    pub m_base: usize,
    pub b: &'a PointSet,
}

pub enum Phase2Step {
    Advanced { state: Phase2State, record: Phase2Record },
    Failed(FailureKind),
}

/// Indices of collection members with an element below or equal to `x`.
fn sets_below(p: &Poset, ee: &[PointSet], x: usize) -> Vec<usize> {
    let dx = closed_dn(p, x);
    ee.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_disjoint(&dx))
        .map(|(i, _)| i)
        .collect()
}

/// Largest `t` with `t^r <= m`.
fn floor_root(m: usize, r: u64) -> usize {
    if m <= 1 {
        return m;
    }
    let mut t = 1usize;
    while pow_le(t + 1, r, m as u128) {
        t += 1;
    }
    t
}

fn pow_le(base: usize, exp: u64, cap: u128) -> bool {
    if base <= 1 {
        return true;
    }
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base as u128) {
            Some(v) if v <= cap => v,
            _ => return false,
        };
    }
    true
}

/// Stage bound for round `j`: floor(m_base^(1/h^j)).
pub(crate) fn stage_bound(m_base: usize, h: usize, j: usize) -> usize {
    let r = (h as u64).saturating_pow(j as u32);
    floor_root(m_base, r)
}

/// Descent rule: from `v`, move to the cover-child `x` maximizing the number
/// of reachable sets, provided `|E^x|^(h-1) * m0 > |E^v|^(h-1)` in exact
/// integer arithmetic. `m0` is the collection size entering this round.
fn descend(ctx: &Phase2Ctx, ee: &[PointSet], start: usize, m0: usize) -> Vec<usize> {
    let exp = (ctx.h - 1) as u32;
    let mut trajectory = vec![start];
    let mut v = start;
    loop {
        let ev = sets_below(ctx.p, ee, v).len() as u128;
        let mut best: Option<(usize, usize)> = None; // (count, vertex)
        for &x in ctx.cover.covers_below(v) {
            let ex = sets_below(ctx.p, ee, x).len();
            let moves = (ex as u128).pow(exp) * m0 as u128 > ev.pow(exp);
            if moves && best.is_none_or(|(c, _)| ex > c) {
                best = Some((ex, x));
            }
        }
        match best {
            Some((_, x)) => {
                v = x;
                trajectory.push(x);
            }
            None => return trajectory,
        }
    }
}

/// One Phase 2 round: pick a fresh maximal, descend to the new principal,
/// thin the covers to a minimal subset, and keep one private set per kept
/// cover. Verifies (D1)-(D3) on the result.
pub fn phase2_step(
    ctx: &Phase2Ctx,
    st: &Phase2State,
    round: usize,
) -> Result<Phase2Step, InvariantViolation> {
    // A maximal not above any fixed principal.
    let mut blocked = Bits::new(ctx.p.n());
    for &v in &st.v {
        blocked.union_with(&closed_up(ctx.p, v));
    }
    let avail = ctx.b.difference(&blocked);
    let Some(b_start) = avail.first() else {
        return Ok(Phase2Step::Failed(FailureKind::NoFreshMaximal { round }));
    };

    let m0 = st.ee.len();
    let trajectory = descend(ctx, &st.ee, b_start, m0);
    let v = *trajectory.last().unwrap();
    if ctx.p.dn_set(v).is_empty() {
        return Ok(Phase2Step::Failed(FailureKind::DescentReachedMinimal { round, vertex: v }));
    }

    // Remove the at-most-one member containing the principal.
    let containing: Vec<usize> = st
        .ee
        .iter()
        .enumerate()
        .filter(|(_, c)| c.contains(v))
        .map(|(i, _)| i)
        .collect();
    if containing.len() > 1 {
        return Err(InvariantViolation::new(
            "collection-disjoint",
            format!("{} members contain the principal {v}", containing.len()),
        ));
    }
    let estar: Vec<usize> = (0..st.ee.len()).filter(|i| !containing.contains(i)).collect();

    let xs: Vec<usize> = ctx.cover.covers_below(v).to_vec();
    let star_below = |x: usize| -> Bits {
        let dx = closed_dn(ctx.p, x);
        Bits::from_indices(
            st.ee.len(),
            estar.iter().copied().filter(|&i| !st.ee[i].is_disjoint(&dx)),
        )
    };
    let ex: Vec<Bits> = xs.iter().map(|&x| star_below(x)).collect();
    let ev_star = star_below(v);
    let mut union_all = Bits::new(st.ee.len());
    for b in &ex {
        union_all.union_with(b);
    }
    if union_all != ev_star {
        return Err(InvariantViolation::new(
            "cover-union",
            "sets reaching the principal differ from those reaching its covers",
        ));
    }

    // Minimal cover subset: greedy removal in descending index order.
    let mut keep: Vec<bool> = vec![true; xs.len()];
    for drop_ix in (0..xs.len()).rev() {
        if !keep[drop_ix] {
            continue;
        }
        let mut union = Bits::new(st.ee.len());
        for (i, b) in ex.iter().enumerate() {
            if keep[i] && i != drop_ix {
                union.union_with(b);
            }
        }
        if union == ev_star {
            keep[drop_ix] = false;
        }
    }
    let x_prime: Vec<usize> = (0..xs.len()).filter(|&i| keep[i]).collect();

    // Minimality: every kept cover owns a private set; pick the lowest as
    // its representative.
    let mut new_ee = Vec::with_capacity(x_prime.len());
    for &i in &x_prime {
        let mut private = ex[i].clone();
        for &jx in &x_prime {
            if jx != i {
                private.difference_with(&ex[jx]);
            }
        }
        let Some(rep_ix) = private.first() else {
            return Err(InvariantViolation::new(
                "cover-subset-minimal",
                format!("cover {} of principal {v} kept without a private set", xs[i]),
            ));
        };
        new_ee.push(st.ee[rep_ix].clone());
    }

    let mut new_v = st.v.clone();
    new_v.push(v);
    let state = Phase2State { v: new_v, ee: new_ee };

    let bound = stage_bound(ctx.m_base, ctx.h, round);
    if state.ee.len() < bound {
        return Ok(Phase2Step::Failed(FailureKind::StageBoundFailed {
            round,
            size: state.ee.len(),
            bound,
        }));
    }
    verify_branching(ctx, &state, round)?;

    let record = Phase2Record {
        round,
        start_maximal: b_start,
        principal: v,
        descent: trajectory,
        cover_subset: x_prime.iter().map(|&i| xs[i]).collect(),
        kept_sets: state.ee.len(),
        stage_bound: bound,
    };
    Ok(Phase2Step::Advanced { state, record })
}

/// (D1) size already checked by the caller; (D2) principals disjoint from
/// every kept set; (D3) for every principal and kept set there is a cover of
/// the principal reaching exactly that set.
fn verify_branching(ctx: &Phase2Ctx, st: &Phase2State, round: usize) -> Result<(), InvariantViolation> {
    if st.v.len() != round {
        return Err(InvariantViolation::new(
            "principal-count",
            format!("{} principals after round {round}", st.v.len()),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for &v in &st.v {
        if !seen.insert(v) {
            return Err(InvariantViolation::new("principal-distinct", format!("{v} repeated")));
        }
        for set in &st.ee {
            if set.contains(v) {
                return Err(InvariantViolation::new(
                    "principal-disjoint",
                    format!("principal {v} inside a kept set"),
                ));
            }
        }
    }
    for &v in &st.v {
        for (ix, _) in st.ee.iter().enumerate() {
            let found = ctx.cover.covers_below(v).iter().any(|&x| {
                let below = sets_below_filtered(ctx.p, &st.ee, x);
                below == vec![ix]
            });
            if !found {
                return Err(InvariantViolation::new(
                    "clean-branching",
                    format!("principal {v} has no cover reaching only set {ix}"),
                ));
            }
        }
    }
    Ok(())
}

fn sets_below_filtered(p: &Poset, ee: &[PointSet], x: usize) -> Vec<usize> {
    sets_below(p, ee, x)
}
