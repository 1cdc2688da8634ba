//! Final construction: wire every pair of principals through its own
//! collected set, yielding internally disjoint cover-graph paths.

use super::report::FailureKind;
use super::{closed_dn, InvariantViolation};
use crate::minor::{CertPath, SubdivisionCertificate};
use crate::poset::{CoverDigraph, PointSet, Poset};

/// Connects each unordered pair of principals inside the union of its
/// assigned set and the two cover chains hanging below the principals.
/// Pairs are assigned sets lexicographically; the construction needs at
/// least n(n-1)/2 surviving sets.
pub fn build_subdivision(
    p: &Poset,
    cover: &CoverDigraph,
    principals: &[usize],
    ee: &[PointSet],
) -> Result<Result<SubdivisionCertificate, FailureKind>, InvariantViolation> {
    let n = principals.len();
    let need = n * (n - 1) / 2;
    if ee.len() < need {
        return Ok(Err(FailureKind::AssignmentExhausted { have: ee.len(), need }));
    }
    // Deterministic assignment: sets ordered by smallest element (disjoint
    // sets have distinct minima), pairs in lexicographic order.
    let mut order: Vec<usize> = (0..ee.len()).collect();
    order.sort_by_key(|&i| ee[i].first().expect("collection sets are nonempty"));

    let mut paths = Vec::with_capacity(need);
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            let set = &ee[order[t]];
            t += 1;
            let path = connect_pair(p, cover, ee, principals[i], principals[j], set)?;
            paths.push(path);
        }
    }
    Ok(Ok(SubdivisionCertificate { principals: principals.to_vec(), paths }))
}

/// The cover chain and connecting walk for one principal pair: find covers
/// x1 < v1 and x2 < v2 reaching exactly the assigned set, drop cover chains
/// from them into the set, and take the shortest cover-graph path inside
/// chain + set + chain.
fn connect_pair(
    p: &Poset,
    cover: &CoverDigraph,
    ee: &[PointSet],
    v1: usize,
    v2: usize,
    set: &PointSet,
) -> Result<CertPath, InvariantViolation> {
    let mut allowed = set.clone();
    for v in [v1, v2] {
        let x = branch_cover(p, cover, ee, v, set)?;
        let c = set
            .intersection(&closed_dn(p, x))
            .first()
            .ok_or_else(|| {
                InvariantViolation::new("branch-chain", format!("no set element below cover {x}"))
            })?;
        for w in chain_between(p, cover, c, x) {
            allowed.insert(w);
        }
        allowed.insert(v);
    }
    let vertices = cover.bfs_path_within(v1, v2, &allowed).ok_or_else(|| {
        InvariantViolation::new(
            "pair-connection",
            format!("no path between principals {v1} and {v2} inside the assigned region"),
        )
    })?;
    Ok(CertPath { ends: (v1, v2), vertices })
}

/// The lowest cover-child of `v` whose reachable collection members are
/// exactly the assigned set; guaranteed by the clean-branching invariant.
fn branch_cover(
    p: &Poset,
    cover: &CoverDigraph,
    ee: &[PointSet],
    v: usize,
    set: &PointSet,
) -> Result<usize, InvariantViolation> {
    'outer: for &x in cover.covers_below(v) {
        let dx = closed_dn(p, x);
        let mut hits_assigned = false;
        for member in ee {
            if !member.is_disjoint(&dx) {
                if member == set {
                    hits_assigned = true;
                } else {
                    continue 'outer;
                }
            }
        }
        if hits_assigned {
            return Ok(x);
        }
    }
    Err(InvariantViolation::new(
        "clean-branching",
        format!("principal {v} has no cover reaching only its assigned set"),
    ))
}

/// A saturated chain `lo = w_1 < ... < w_r = hi` walked top-down through
/// lowest-index cover-children.
fn chain_between(p: &Poset, cover: &CoverDigraph, lo: usize, hi: usize) -> Vec<usize> {
    let mut chain = vec![hi];
    let mut cur = hi;
    while cur != lo {
        let next = cover
            .covers_below(cur)
            .iter()
            .copied()
            .find(|&w| p.le(lo, w))
            .expect("interval between comparable points is cover-connected");
        chain.push(next);
        cur = next;
    }
    chain.reverse();
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Bits;
    use crate::gens;
    use crate::minor::{self, UGraph};

    #[test]
    fn wires_principals_through_assigned_minimals() {
        // S_8 with collected singletons {a_1..a_4} and principals b_5..b_7.
        let p = gens::standard_example(8);
        let cover = p.cover_digraph();
        let ee: Vec<_> = (0..4).map(|i| Bits::from_indices(p.n(), [i])).collect();
        let principals = [12, 13, 14];
        let cert = build_subdivision(&p, &cover, &principals, &ee)
            .unwrap()
            .expect("enough sets for K_3");
        let g = UGraph::from_cover(&cover);
        assert_eq!(minor::verify_subdivision(&g, &cert, 3), Ok(()));
        // Each path runs through its own assigned minimal.
        assert_eq!(cert.paths[0].vertices, vec![12, 0, 13]);
        assert_eq!(cert.paths[1].vertices, vec![12, 1, 14]);
        assert_eq!(cert.paths[2].vertices, vec![13, 2, 14]);
    }

    #[test]
    fn too_few_sets_is_data() {
        let p = gens::standard_example(8);
        let cover = p.cover_digraph();
        let ee: Vec<_> = (0..2).map(|i| Bits::from_indices(p.n(), [i])).collect();
        match build_subdivision(&p, &cover, &[12, 13, 14], &ee).unwrap() {
            Err(FailureKind::AssignmentExhausted { have: 2, need: 3 }) => {}
            _ => panic!("expected exhaustion"),
        }
    }
}
