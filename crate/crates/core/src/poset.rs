//! Finite posets stored as bitset strict-order matrices.
//!
//! The strict order is the canonical representation; cover arcs are always
//! derived from it, never stored as authoritative. Elements are dense indices
//! `0..n`. Values are immutable after construction, so all queries are pure
//! and safe to share across threads.

use crate::bits::Bits;
use thiserror::Error;

/// A subset of the elements of a poset.
pub type PointSet = Bits;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation closure contains a cycle through element {0}")]
    CycleInRelation(usize),
    #[error("element index {index} out of range for poset on {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("posets must have at least one element")]
    ZeroElements,
    #[error("induced subposet requires a nonempty point set")]
    EmptySet,
}

/// A finite poset on elements `0..n`, as its strict-order relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    up: Vec<Bits>,
    dn: Vec<Bits>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.cover_digraph().arcs())
    }
}

impl Poset {
    /// Builds a poset as the transitive closure of arbitrary relation pairs.
    ///
    /// The pairs do not have to be cover relations; any acyclic relation is
    /// accepted and closed. Rejects closures violating antisymmetry.
    pub fn from_cover(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::ZeroElements);
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(u, v) in pairs {
            for ix in [u, v] {
                if ix >= n {
                    return Err(PosetError::IndexOutOfRange { index: ix, n });
                }
            }
            if u == v {
                return Err(PosetError::CycleInRelation(u));
            }
            out[u].push(v);
            indeg[v] += 1;
        }
        // Kahn toposort; leftover in-degree pinpoints a cycle element.
        let mut order = Vec::with_capacity(n);
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = queue.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if order.len() < n {
            let culprit = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(PosetError::CycleInRelation(culprit));
        }
        let mut up = vec![Bits::new(n); n];
        for &v in order.iter().rev() {
            let mut acc = Bits::new(n);
            for &w in &out[v] {
                acc.insert(w);
                acc.union_with(&up[w]);
            }
            up[v] = acc;
        }
        let mut dn = vec![Bits::new(n); n];
        for (v, row) in up.iter().enumerate() {
            for w in row.iter() {
                dn[w].insert(v);
            }
        }
        Ok(Poset { n, up, dn })
    }

    /// Builds a poset directly from strict-order rows. `up[x]` must already be
    /// transitively closed and antisymmetric; intended for generators that
    /// construct the relation explicitly.
    pub(crate) fn from_closed_rows(up: Vec<Bits>) -> Self {
        let n = up.len();
        let mut dn = vec![Bits::new(n); n];
        for (v, row) in up.iter().enumerate() {
            debug_assert!(!row.contains(v));
            for w in row.iter() {
                dn[w].insert(v);
            }
        }
        Poset { n, up, dn }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Strict order: `u < v`.
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.up[u].contains(v)
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        u == v || self.lt(u, v)
    }

    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        u != v && !self.lt(u, v) && !self.lt(v, u)
    }

    /// `{ y : x < y }`
    pub fn up_set(&self, x: usize) -> &Bits {
        &self.up[x]
    }

    /// `{ y : y < x }`
    pub fn dn_set(&self, x: usize) -> &Bits {
        &self.dn[x]
    }

    /// Elements incomparable to `x`.
    pub fn inc_set(&self, x: usize) -> Bits {
        let mut b = Bits::from_indices(self.n, 0..self.n);
        b.difference_with(&self.up[x]);
        b.difference_with(&self.dn[x]);
        b.remove(x);
        b
    }

    /// Upset of a point set: `{ x : exists z in s with z <= x }`.
    pub fn upset_of(&self, s: &PointSet) -> PointSet {
        let mut r = s.clone();
        for z in s.iter() {
            r.union_with(&self.up[z]);
        }
        r
    }

    /// Downset of a point set: `{ x : exists z in s with x <= z }`.
    pub fn downset_of(&self, s: &PointSet) -> PointSet {
        let mut r = s.clone();
        for z in s.iter() {
            r.union_with(&self.dn[z]);
        }
        r
    }

    pub fn minimals(&self) -> PointSet {
        Bits::from_indices(self.n, (0..self.n).filter(|&x| self.dn[x].is_empty()))
    }

    pub fn maximals(&self) -> PointSet {
        Bits::from_indices(self.n, (0..self.n).filter(|&x| self.up[x].is_empty()))
    }

    pub fn all_points(&self) -> PointSet {
        Bits::from_indices(self.n, 0..self.n)
    }

    /// Indices sorted by downset size; a valid linear extension order since
    /// `u < v` implies `dn(u)` is a proper subset of `dn(v)`.
    pub fn topo_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (self.dn[x].count(), x));
        order
    }

    /// Longest chain ending at `x`, counted in elements; minimal points have
    /// height 1.
    pub fn height_of(&self, x: usize) -> usize {
        self.heights()[x]
    }

    pub fn height(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    fn heights(&self) -> Vec<usize> {
        let mut h = vec![1usize; self.n];
        for x in self.topo_order() {
            for y in self.dn[x].iter() {
                h[x] = h[x].max(h[y] + 1);
            }
        }
        h
    }

    /// Maximum number of vertices of a directed cover-graph path from `a` to
    /// `b`; equals the longest chain in the interval `[a, b]`. `None` when
    /// there is no directed path, length 1 when `a == b`.
    pub fn longest_path_between(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return Some(1);
        }
        if !self.lt(a, b) {
            return None;
        }
        let mut interval = self.up[a].clone();
        interval.intersect_with(&self.dn[b]);
        interval.insert(a);
        interval.insert(b);
        let mut members: Vec<usize> = interval.iter().collect();
        members.sort_by_key(|&x| (self.dn[x].count(), x));
        let mut best = vec![0usize; self.n];
        best[a] = 1;
        for &x in &members {
            if x == a {
                continue;
            }
            let mut m = 0;
            for y in self.dn[x].intersection(&interval).iter() {
                m = m.max(best[y]);
            }
            best[x] = m + 1;
        }
        Some(best[b])
    }

    /// Searches for two chains of `k` elements each whose points are pairwise
    /// incomparable across the chains. `None` means the poset is (k+k)-free.
    pub fn kk_witness(&self, k: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        assert!(k >= 2, "kk-freeness is defined for k >= 2");
        let mut chain = Vec::with_capacity(k);
        for x in 0..self.n {
            chain.push(x);
            if let Some(w) = self.kk_extend(k, &mut chain) {
                return Some(w);
            }
            chain.pop();
        }
        None
    }

    fn kk_extend(&self, k: usize, chain: &mut Vec<usize>) -> Option<(Vec<usize>, Vec<usize>)> {
        if chain.len() == k {
            // Candidate partner elements: incomparable to the whole chain.
            let mut allowed = self.inc_set(chain[0]);
            for &u in &chain[1..] {
                allowed.intersect_with(&self.inc_set(u));
            }
            return self.longest_chain_within(&allowed, k).map(|other| (chain.clone(), other));
        }
        let last = *chain.last().unwrap();
        for y in self.up[last].iter() {
            chain.push(y);
            if let Some(w) = self.kk_extend(k, chain) {
                return Some(w);
            }
            chain.pop();
        }
        None
    }

    /// A chain of exactly `k` elements inside `allowed`, if one exists.
    fn longest_chain_within(&self, allowed: &Bits, k: usize) -> Option<Vec<usize>> {
        let mut members: Vec<usize> = allowed.iter().collect();
        members.sort_by_key(|&x| (self.dn[x].count(), x));
        let mut best = vec![0usize; self.n];
        let mut pred = vec![usize::MAX; self.n];
        for &x in &members {
            best[x] = 1;
            for y in self.dn[x].intersection(allowed).iter() {
                if best[y] + 1 > best[x] || (best[y] + 1 == best[x] && y < pred[x]) {
                    best[x] = best[y] + 1;
                    pred[x] = y;
                }
            }
            if best[x] >= k {
                let mut chain = Vec::with_capacity(k);
                let mut cur = x;
                while chain.len() < k {
                    chain.push(cur);
                    cur = pred[cur];
                }
                chain.reverse();
                return Some(chain);
            }
        }
        None
    }

    pub fn is_kk_free(&self, k: usize) -> bool {
        self.kk_witness(k).is_none()
    }

    /// Attaches a fresh minimal point below every non-minimal point and a
    /// fresh maximal point above every non-maximal point, each by a single
    /// cover arc. Preserves height and the order among the original
    /// elements; new points get indices `n..`. The result has every
    /// incomparable pair witnessed by a min-max pair, so dim(P) <= dim*(Q).
    pub fn min_max_reduction(&self) -> Poset {
        let cover = self.cover_digraph();
        let mut pairs = cover.arcs().to_vec();
        let mut next = self.n;
        for x in 0..self.n {
            if !self.dn[x].is_empty() {
                pairs.push((next, x));
                next += 1;
            }
            if !self.up[x].is_empty() {
                pairs.push((x, next));
                next += 1;
            }
        }
        Poset::from_cover(next, &pairs).expect("reduction preserves acyclicity")
    }

    /// Connected components of the undirected cover graph, sorted by their
    /// smallest element.
    pub fn components_cover(&self) -> Vec<PointSet> {
        let cover = self.cover_digraph();
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Bits::new(self.n);
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in cover.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// The order restricted to `s`. Returns the subposet together with the
    /// map from new indices back to elements of `self`. Note the induced
    /// poset's cover arcs may differ from the restriction of this poset's
    /// cover arcs.
    pub fn induced(&self, s: &PointSet) -> Result<(Poset, Vec<usize>), PosetError> {
        if s.is_empty() {
            return Err(PosetError::EmptySet);
        }
        let back: Vec<usize> = s.iter().collect();
        let m = back.len();
        let mut up = vec![Bits::new(m); m];
        for (i, &x) in back.iter().enumerate() {
            for (j, &y) in back.iter().enumerate() {
                if self.lt(x, y) {
                    up[i].insert(j);
                }
            }
        }
        Ok((Poset::from_closed_rows(up), back))
    }

    /// The order-theoretic dual: same elements, relation flipped.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            up: self.dn.clone(),
            dn: self.up.clone(),
        }
    }

    /// The transitive reduction of the strict order.
    pub fn cover_digraph(&self) -> CoverDigraph {
        let mut arcs = Vec::new();
        for u in 0..self.n {
            for v in self.up[u].iter() {
                if self.up[u].is_disjoint(&self.dn[v]) {
                    arcs.push((u, v));
                }
            }
        }
        CoverDigraph::new(self.n, arcs)
    }
}

/// The cover relation of a poset as an explicit digraph, with adjacency in
/// both directions plus the undirected view used for path searches.
#[derive(Clone, Debug)]
pub struct CoverDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

impl CoverDigraph {
    fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
            inn[v].push(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        CoverDigraph { n, arcs, out, inn, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cover arcs `(u, v)` with `u` covered by `v`, sorted.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Elements covering `v`.
    pub fn covers_above(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Elements covered by `v`.
    pub fn covers_below(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Undirected cover-graph neighbors, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }

    /// Shortest undirected path from `from` to `to` staying inside `allowed`,
    /// as a vertex list including both endpoints. Deterministic: BFS visits
    /// neighbors in increasing order.
    pub fn bfs_path_within(&self, from: usize, to: usize, allowed: &Bits) -> Option<Vec<usize>> {
        if !allowed.contains(from) || !allowed.contains(to) {
            return None;
        }
        if from == to {
            return Some(vec![from]);
        }
        let mut prev = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        prev[from] = from;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if allowed.contains(w) && prev[w] == usize::MAX {
                    prev[w] = v;
                    if w == to {
                        let mut path = vec![to];
                        let mut cur = to;
                        while cur != from {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }
}
