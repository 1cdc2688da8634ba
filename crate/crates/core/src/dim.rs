//! Incomparable pairs, alternating cycles, reversibility, and exact
//! dimension / dim* / chi computation.
//!
//! A set of incomparable pairs is reversible exactly when the digraph it
//! induces on pairs (arc `i -> j` when `x_i <= y_j`) is acyclic; directed
//! cycles are alternating cycles. Dimension and chi are minimum partitions
//! into acyclic classes, found by branch and bound: a clique of mutually
//! 2-cycling pairs gives the lower bound, greedy first-fit the upper bound,
//! and backtracking with incremental cycle checks closes the gap. All
//! tie-breaking is lowest-index-first so outputs are deterministic.

use crate::bits::Bits;
use crate::poset::{PointSet, Poset};
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimError {
    #[error("pair ({0}, {1}) is not an incomparable pair of the poset")]
    PairNotIncomparable(usize, usize),
}

/// An ordered pair of incomparable points.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncPair {
    pub x: usize,
    pub y: usize,
}

impl IncPair {
    pub fn new(x: usize, y: usize) -> Self {
        IncPair { x, y }
    }
}

impl std::fmt::Debug for IncPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for IncPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.end()
    }
}

/// All ordered incomparable pairs of `p`, lexicographically.
pub fn inc_pairs(p: &Poset) -> Vec<IncPair> {
    let mut out = Vec::new();
    for x in 0..p.n() {
        for y in 0..p.n() {
            if x != y && p.incomparable(x, y) {
                out.push(IncPair::new(x, y));
            }
        }
    }
    out
}

/// The min-max pairs: `x` minimal and `y` maximal in `p`.
pub fn inc_minmax_pairs(p: &Poset) -> Vec<IncPair> {
    let min = p.minimals();
    let max = p.maximals();
    inc_pairs(p)
        .into_iter()
        .filter(|pr| min.contains(pr.x) && max.contains(pr.y))
        .collect()
}

/// Incomparable pairs with the first point in `a` and the second in `b`.
pub fn inc_pairs_between(p: &Poset, a: &PointSet, b: &PointSet) -> Vec<IncPair> {
    let mut out = Vec::new();
    for x in a.iter() {
        for y in b.iter() {
            if x != y && p.incomparable(x, y) {
                out.push(IncPair::new(x, y));
            }
        }
    }
    out
}

/// Digraph on incomparable pairs encoding alternating-cycle reachability:
/// arc `i -> j` present iff `x_i <= y_j` in the poset and `i != j`. A set of
/// pairs contains an alternating cycle iff its induced subdigraph has a
/// directed cycle.
pub struct PairDigraph {
    pairs: Vec<IncPair>,
    succ: Vec<Bits>,
    pred: Vec<Bits>,
}

impl PairDigraph {
    pub fn new(p: &Poset, pairs: Vec<IncPair>) -> Result<Self, DimError> {
        for pr in &pairs {
            if pr.x >= p.n() || pr.y >= p.n() || !p.incomparable(pr.x, pr.y) {
                return Err(DimError::PairNotIncomparable(pr.x, pr.y));
            }
        }
        let m = pairs.len();
        let mut succ = vec![Bits::new(m); m];
        let mut pred = vec![Bits::new(m); m];
        for i in 0..m {
            for j in 0..m {
                if i != j && p.le(pairs[i].x, pairs[j].y) {
                    succ[i].insert(j);
                    pred[j].insert(i);
                }
            }
        }
        Ok(PairDigraph { pairs, succ, pred })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[IncPair] {
        &self.pairs
    }

    /// Would adding `v` to the class `members` close a directed cycle?
    fn creates_cycle(&self, members: &Bits, v: usize) -> bool {
        if !self.succ[v].is_disjoint(&self.pred[v].intersection(members)) {
            // 2-cycle fast path
            let two = self.succ[v].intersection(&self.pred[v]);
            if !two.intersection(members).is_empty() {
                return true;
            }
        }
        let mut visited = Bits::new(self.len());
        let mut stack: Vec<usize> = self.succ[v].intersection(members).iter().collect();
        for &s in &stack {
            visited.insert(s);
        }
        while let Some(u) = stack.pop() {
            if self.pred[v].contains(u) {
                return true;
            }
            for w in self.succ[u].intersection(members).iter() {
                if !visited.contains(w) {
                    visited.insert(w);
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Shortest directed cycle, as pair indices in arc order; ties resolved
    /// by lowest starting index. `None` when acyclic.
    fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let m = self.len();
        let mut best: Option<Vec<usize>> = None;
        for start in 0..m {
            // BFS from start; a cycle closes on reaching a predecessor of start.
            let mut prev = vec![usize::MAX; m];
            let mut queue = std::collections::VecDeque::new();
            prev[start] = start;
            queue.push_back(start);
            let mut found: Option<usize> = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for w in self.succ[u].iter() {
                    if prev[w] == usize::MAX {
                        prev[w] = u;
                        if self.pred[start].contains(w) {
                            found = Some(w);
                            break 'bfs;
                        }
                        queue.push_back(w);
                    } else if w == start && u != start && self.pred[start].contains(u) {
                        // direct closure already handled via found above
                    }
                }
                // closing arc u -> start without introducing new vertex
                if u != start && self.pred[start].contains(u) {
                    found = Some(u);
                    break 'bfs;
                }
            }
            if let Some(end) = found {
                let mut cyc = vec![end];
                let mut cur = end;
                while cur != start {
                    cur = prev[cur];
                    cyc.push(cur);
                }
                cyc.reverse();
                if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                    best = Some(cyc);
                }
            }
        }
        best
    }
}

/// Result of a reversibility check.
pub enum Reversibility {
    /// The pairs are simultaneously reversible; a witnessing linear extension
    /// placing `y` before `x` for every pair is attached.
    Reversible(Vec<usize>),
    /// An alternating cycle obstructs reversal: consecutive pairs satisfy
    /// `x_i <= y_{i+1}` cyclically.
    AlternatingCycle(Vec<IncPair>),
}

/// Decides whether `pairs` is reversible in `p` (Trotter-Moore: no
/// alternating cycle), returning a witness either way.
pub fn is_reversible(p: &Poset, pairs: &[IncPair]) -> Result<Reversibility, DimError> {
    let dg = PairDigraph::new(p, pairs.to_vec())?;
    match dg.shortest_cycle() {
        Some(cycle) => Ok(Reversibility::AlternatingCycle(
            cycle.into_iter().map(|i| dg.pairs[i]).collect(),
        )),
        None => {
            let ext = reversing_extension(p, pairs)
                .expect("acyclic pair sets always admit a reversing extension");
            Ok(Reversibility::Reversible(ext))
        }
    }
}

/// A linear extension of `p` placing `y` before `x` for every `(x, y)` in
/// `pairs`; `None` if the constraints are cyclic. Lowest-index-first
/// topological order for determinism.
pub fn reversing_extension(p: &Poset, pairs: &[IncPair]) -> Option<Vec<usize>> {
    let n = p.n();
    let mut succ: Vec<Bits> = (0..n).map(|u| p.up_set(u).clone()).collect();
    for pr in pairs {
        succ[pr.y].insert(pr.x);
    }
    let mut indeg = vec![0usize; n];
    for row in &succ {
        for w in row.iter() {
            indeg[w] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<bool> = indeg.iter().map(|&d| d == 0).collect();
    for _ in 0..n {
        let v = (0..n).find(|&v| ready[v])?;
        ready[v] = false;
        indeg[v] = usize::MAX;
        order.push(v);
        for w in succ[v].iter() {
            if indeg[w] != usize::MAX {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready[w] = true;
                }
            }
        }
    }
    Some(order)
}

/// Checks that `ext` is a linear extension of `p`.
pub fn is_linear_extension(p: &Poset, ext: &[usize]) -> bool {
    if ext.len() != p.n() {
        return false;
    }
    let mut pos = vec![usize::MAX; p.n()];
    for (i, &v) in ext.iter().enumerate() {
        if v >= p.n() || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for u in 0..p.n() {
        for v in p.up_set(u).iter() {
            if pos[u] > pos[v] {
                return false;
            }
        }
    }
    true
}

/// A partition of a pair set into reversible classes together with one
/// reversing linear extension per class.
#[derive(Clone, Debug, Serialize)]
pub struct DimCertificate {
    pub classes: Vec<Vec<IncPair>>,
    pub extensions: Vec<Vec<usize>>,
}

impl DimCertificate {
    /// Full self-verification: classes partition `expected`, every class is
    /// reversible, and each extension is a linear extension reversing its
    /// class.
    pub fn verify(&self, p: &Poset, expected: &[IncPair]) -> Result<(), String> {
        let mut seen = std::collections::HashSet::new();
        for class in &self.classes {
            for pr in class {
                if !seen.insert(*pr) {
                    return Err(format!("pair {pr:?} occurs twice"));
                }
            }
        }
        if seen.len() != expected.len() || expected.iter().any(|pr| !seen.contains(pr)) {
            return Err("classes do not partition the expected pair set".into());
        }
        if self.extensions.len() != self.classes.len() {
            return Err("one extension required per class".into());
        }
        for (class, ext) in self.classes.iter().zip(&self.extensions) {
            if !is_linear_extension(p, ext) {
                return Err("witness is not a linear extension".into());
            }
            let mut pos = vec![0usize; p.n()];
            for (i, &v) in ext.iter().enumerate() {
                pos[v] = i;
            }
            for pr in class {
                if pos[pr.y] > pos[pr.x] {
                    return Err(format!("extension does not reverse {pr:?}"));
                }
            }
            match is_reversible(p, class).map_err(|e| e.to_string())? {
                Reversibility::Reversible(_) => {}
                Reversibility::AlternatingCycle(c) => {
                    return Err(format!("class contains alternating cycle {c:?}"))
                }
            }
        }
        Ok(())
    }
}

/// Exact dimension with a verifying certificate. Dimension 1 for chains
/// (empty incomparability), per the usual convention.
pub fn dim_exact(p: &Poset) -> (usize, DimCertificate) {
    let pairs = inc_pairs(p);
    if pairs.is_empty() {
        let ext = reversing_extension(p, &[]).expect("poset order is acyclic");
        return (
            1,
            DimCertificate {
                classes: vec![Vec::new()],
                extensions: vec![ext],
            },
        );
    }
    let (d, cert) = solve_partition(p, pairs);
    (d, cert)
}

/// Exact dim*: the minimum partition of the min-max pairs; 1 when there are
/// none.
pub fn dim_star_exact(p: &Poset) -> (usize, DimCertificate) {
    let pairs = inc_minmax_pairs(p);
    if pairs.is_empty() {
        let ext = reversing_extension(p, &[]).expect("poset order is acyclic");
        return (
            1,
            DimCertificate {
                classes: vec![Vec::new()],
                extensions: vec![ext],
            },
        );
    }
    solve_partition(p, pairs)
}

/// chi(A, B): minimum number of classes partitioning Inc(A, B) with no class
/// containing an alternating cycle; 0 when Inc(A, B) is empty.
pub fn chi(p: &Poset, a: &PointSet, b: &PointSet) -> usize {
    chi_partition(p, a, b).0
}

/// chi together with an optimal partition into acyclic classes.
pub fn chi_partition(p: &Poset, a: &PointSet, b: &PointSet) -> (usize, Vec<Vec<IncPair>>) {
    let pairs = inc_pairs_between(p, a, b);
    if pairs.is_empty() {
        return (0, Vec::new());
    }
    let (d, cert) = solve_partition(p, pairs);
    (d, cert.classes)
}

fn solve_partition(p: &Poset, pairs: Vec<IncPair>) -> (usize, DimCertificate) {
    let dg = PairDigraph::new(p, pairs).expect("pairs drawn from Inc(P)");
    let (d, class_bits) = min_acyclic_partition(&dg);
    let classes: Vec<Vec<IncPair>> = class_bits
        .iter()
        .map(|b| b.iter().map(|i| dg.pairs[i]).collect())
        .collect();
    let extensions = classes
        .iter()
        .map(|c| reversing_extension(p, c).expect("classes are reversible"))
        .collect();
    (d, DimCertificate { classes, extensions })
}

/// Minimum number of acyclic classes covering all vertices of the pair
/// digraph, with one optimal partition. Deterministic.
fn min_acyclic_partition(dg: &PairDigraph) -> (usize, Vec<Bits>) {
    let m = dg.len();
    if m == 0 {
        return (0, Vec::new());
    }
    // Mutual 2-cycles are hard conflicts; a clique of them lower-bounds the
    // answer, and an odd cycle among them rules out two classes.
    let conflict: Vec<Bits> = (0..m).map(|i| dg.succ[i].intersection(&dg.pred[i])).collect();
    let clique = max_clique(&conflict);
    let mut lb = clique.len().max(1);
    if lb < 3 && !is_bipartite(&conflict) {
        lb = 3;
    }

    let mut order: Vec<usize> = (0..m).collect();
    let in_clique = Bits::from_indices(m, clique.iter().copied());
    order.retain(|v| !in_clique.contains(*v));
    order.sort_by_key(|&v| {
        (
            std::cmp::Reverse(conflict[v].count()),
            std::cmp::Reverse(dg.succ[v].count() + dg.pred[v].count()),
            v,
        )
    });
    let full_order: Vec<usize> = clique.iter().copied().chain(order.iter().copied()).collect();

    let (ub, greedy) = greedy_partition(dg, &full_order);
    if ub == lb {
        return (ub, greedy);
    }
    for d in lb..ub {
        if let Some(classes) = search_partition(dg, &clique, &order, d) {
            return (d, classes);
        }
    }
    (ub, greedy)
}

fn greedy_partition(dg: &PairDigraph, order: &[usize]) -> (usize, Vec<Bits>) {
    let mut classes: Vec<Bits> = Vec::new();
    for &v in order {
        let slot = classes.iter().position(|c| !dg.creates_cycle(c, v));
        match slot {
            Some(i) => classes[i].insert(v),
            None => {
                let mut b = Bits::new(dg.len());
                b.insert(v);
                classes.push(b);
            }
        }
    }
    (classes.len(), classes)
}

fn search_partition(dg: &PairDigraph, clique: &[usize], order: &[usize], d: usize) -> Option<Vec<Bits>> {
    if clique.len() > d {
        return None;
    }
    let mut classes = vec![Bits::new(dg.len()); d];
    for (c, &v) in clique.iter().enumerate() {
        classes[c].insert(v);
    }
    let mut used = clique.len().max(usize::from(!order.is_empty() && clique.is_empty()));
    if dfs_assign(dg, order, 0, &mut classes, &mut used, d) {
        Some(classes)
    } else {
        None
    }
}

fn dfs_assign(
    dg: &PairDigraph,
    order: &[usize],
    idx: usize,
    classes: &mut Vec<Bits>,
    used: &mut usize,
    d: usize,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let limit = (*used + 1).min(d);
    for c in 0..limit {
        if dg.creates_cycle(&classes[c], v) {
            continue;
        }
        classes[c].insert(v);
        let opened = c == *used;
        if opened {
            *used += 1;
        }
        if dfs_assign(dg, order, idx + 1, classes, used, d) {
            return true;
        }
        if opened {
            *used -= 1;
        }
        classes[c].remove(v);
    }
    false
}

fn is_bipartite(adj: &[Bits]) -> bool {
    let n = adj.len();
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in adj[v].iter() {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
/// Deterministic for a fixed adjacency.
pub(crate) fn max_clique(adj: &[Bits]) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best = Vec::new();
    // Greedy seed: improves the initial bound.
    for s in 0..n {
        let mut cand = adj[s].clone();
        let mut cl = vec![s];
        while let Some(v) = cand.iter().max_by_key(|&v| (cand.intersection(&adj[v]).count(), std::cmp::Reverse(v))) {
            cl.push(v);
            cand.intersect_with(&adj[v]);
        }
        if cl.len() > best.len() {
            best = cl;
        }
    }
    best.sort_unstable();
    let all = Bits::from_indices(n, 0..n);
    let mut cur = Vec::new();
    clique_expand(adj, &all, &mut cur, &mut best);
    best.sort_unstable();
    best
}

fn clique_expand(adj: &[Bits], cand: &Bits, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cand.is_empty() {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return;
    }
    // Greedy coloring of candidates; color number bounds the clique size.
    let mut remaining = cand.clone();
    let mut ordered: Vec<(usize, usize)> = Vec::new(); // (vertex, color)
    let mut color = 0;
    while !remaining.is_empty() {
        color += 1;
        let mut avail = remaining.clone();
        while let Some(v) = avail.first() {
            ordered.push((v, color));
            remaining.remove(v);
            avail.remove(v);
            avail.difference_with(&adj[v]);
        }
    }
    for &(v, c) in ordered.iter().rev() {
        if cur.len() + c <= best.len() {
            return;
        }
        cur.push(v);
        clique_expand(adj, &cand.intersection(&adj[v]), cur, best);
        cur.pop();
    }
}

/// A witness standard example: `a[i]` is incomparable to `b[i]` and below
/// every `b[j]` with `j != i`.
#[derive(Clone, Debug, Serialize)]
pub struct StandardExampleWitness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl StandardExampleWitness {
    pub fn verify(&self, p: &Poset) -> bool {
        let d = self.a.len();
        if d < 2 || self.b.len() != d {
            return false;
        }
        let mut all: Vec<usize> = self.a.iter().chain(&self.b).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != 2 * d {
            return false;
        }
        for i in 0..d {
            for j in 0..d {
                let ok = if i == j {
                    p.incomparable(self.a[i], self.b[j])
                } else {
                    p.lt(self.a[i], self.b[j])
                };
                if !ok {
                    return false;
                }
            }
        }
        // The a-side and b-side must each be antichains for the subposet to
        // be the standard example itself.
        for i in 0..d {
            for j in i + 1..d {
                if !p.incomparable(self.a[i], self.a[j]) || !p.incomparable(self.b[i], self.b[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Largest `d` such that `p` contains the standard example `S_d` as a
/// subposet on 2d distinct points. Returns 0 (no witness) when not even
/// `S_2` embeds.
pub fn largest_standard_example(p: &Poset) -> (usize, Option<StandardExampleWitness>) {
    // Candidate principal pairs are ordered incomparable pairs; two pairs are
    // compatible when they can play distinct indices of a standard example.
    let cand = inc_pairs(p);
    let m = cand.len();
    if m == 0 {
        return (0, None);
    }
    let mut adj = vec![Bits::new(m); m];
    for i in 0..m {
        for j in i + 1..m {
            let (u, v) = (cand[i], cand[j]);
            let distinct = u.x != v.x && u.y != v.y && u.x != v.y && v.x != u.y;
            if distinct
                && p.incomparable(u.x, v.x)
                && p.incomparable(u.y, v.y)
                && p.lt(u.x, v.y)
                && p.lt(v.x, u.y)
            {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let clique = max_clique(&adj);
    if clique.len() < 2 {
        return (0, None);
    }
    let witness = StandardExampleWitness {
        a: clique.iter().map(|&i| cand[i].x).collect(),
        b: clique.iter().map(|&i| cand[i].y).collect(),
    };
    debug_assert!(witness.verify(p));
    (clique.len(), Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Poset::from_cover(n, &pairs).unwrap()
    }

    fn standard(d: usize) -> Poset {
        let mut pairs = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    pairs.push((i, d + j));
                }
            }
        }
        Poset::from_cover(2 * d, &pairs).unwrap()
    }

    #[test]
    fn inc_pair_listing() {
        assert!(inc_pairs(&chain(4)).is_empty());

        let s2 = standard(2);
        let inc = inc_pairs(&s2);
        assert_eq!(inc.len(), 8);
        let star = inc_minmax_pairs(&s2);
        assert_eq!(star, vec![IncPair::new(0, 2), IncPair::new(1, 3)]);

        let anti = Poset::from_cover(2, &[]).unwrap();
        let inc = inc_pairs(&anti);
        assert_eq!(inc.len(), 2);
        assert_eq!(inc_minmax_pairs(&anti).len(), 2);
    }

    #[test]
    fn reversibility_witnesses() {
        let s2 = standard(2);
        // Both partner pairs together close a length-2 alternating cycle.
        let set = [IncPair::new(0, 2), IncPair::new(1, 3)];
        match is_reversible(&s2, &set).unwrap() {
            Reversibility::AlternatingCycle(c) => assert_eq!(c.len(), 2),
            Reversibility::Reversible(_) => panic!("expected a cycle"),
        }
        // Singletons are always reversible.
        match is_reversible(&s2, &set[..1]).unwrap() {
            Reversibility::Reversible(ext) => {
                assert!(is_linear_extension(&s2, &ext));
                let pos: Vec<usize> = {
                    let mut p = vec![0; 4];
                    for (i, &v) in ext.iter().enumerate() {
                        p[v] = i;
                    }
                    p
                };
                assert!(pos[2] < pos[0]);
            }
            _ => panic!("singleton must be reversible"),
        }

        // S_3 partner pairs: the 3-cycle a1<=b2, a2<=b3, a3<=b1.
        let s3 = standard(3);
        let set = [IncPair::new(0, 3), IncPair::new(1, 4), IncPair::new(2, 5)];
        match is_reversible(&s3, &set).unwrap() {
            Reversibility::AlternatingCycle(c) => assert!(c.len() >= 2),
            _ => panic!("expected a cycle"),
        }

        assert_eq!(
            is_reversible(&s2, &[IncPair::new(0, 3)]).map(|_| ()),
            Err(DimError::PairNotIncomparable(0, 3))
        );
    }

    #[test]
    fn dim_small_cases() {
        let (d, cert) = dim_exact(&chain(5));
        assert_eq!(d, 1);
        cert.verify(&chain(5), &[]).unwrap();

        for k in 2..=4 {
            let p = standard(k);
            let (d, cert) = dim_exact(&p);
            assert_eq!(d, k, "dim(S_{k})");
            cert.verify(&p, &inc_pairs(&p)).unwrap();
        }
    }

    #[test]
    fn dim_star_cases() {
        let s3 = standard(3);
        let (d, cert) = dim_star_exact(&s3);
        assert_eq!(d, 3);
        cert.verify(&s3, &inc_minmax_pairs(&s3)).unwrap();
        assert_eq!(dim_star_exact(&chain(3)).0, 1);
    }

    #[test]
    fn chi_cases() {
        let s3 = standard(3);
        assert_eq!(chi(&s3, &s3.minimals(), &s3.maximals()), 3);
        assert_eq!(chi(&s3, &s3.minimals(), &s3.maximals()), dim_star_exact(&s3).0);

        let c = chain(2);
        let bot = Bits::from_indices(2, [0]);
        let top = Bits::from_indices(2, [1]);
        assert_eq!(chi(&c, &bot, &top), 0);

        // Dropping one index from each side of S_3 leaves a 2-cycle.
        let a = Bits::from_indices(6, [1, 2]);
        let b = Bits::from_indices(6, [4, 5]);
        assert_eq!(chi(&s3, &a, &b), 2);
    }

    #[test]
    fn largest_standard_example_cases() {
        let (d, w) = largest_standard_example(&standard(4));
        assert_eq!(d, 4);
        assert!(w.unwrap().verify(&standard(4)));

        assert_eq!(largest_standard_example(&chain(6)).0, 0);

        // Boolean lattice on 2 atoms contains no S_2... it does not: the two
        // atoms are the only incomparable pair and they share bounds.
        let b2 = Poset::from_cover(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(largest_standard_example(&b2).0, 0);
    }

    #[test]
    fn boolean_lattice_dim_three() {
        // Subsets of {0,1,2} ordered by inclusion; brute-force-checkable.
        let mut pairs = Vec::new();
        for s in 0u8..8 {
            for t in 0u8..8 {
                if s != t && s & t == s {
                    pairs.push((s as usize, t as usize));
                }
            }
        }
        let p = Poset::from_cover(8, &pairs).unwrap();
        let (d, cert) = dim_exact(&p);
        assert_eq!(d, 3);
        cert.verify(&p, &inc_pairs(&p)).unwrap();
    }
}
