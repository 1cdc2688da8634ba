//! Clique-subdivision certificates: verification against a graph and a
//! brute-force topological-minor oracle for small graphs.

use crate::bits::Bits;
use crate::poset::CoverDigraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard default on the oracle's exhaustive search.
pub const DEFAULT_ORACLE_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinorError {
    #[error("graph has {n} vertices, above the oracle limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Simple undirected graph: no loops, no parallel edges.
#[derive(Clone, Debug)]
pub struct UGraph {
    n: usize,
    adj: Vec<Bits>,
}

impl UGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Bits::new(n); n];
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v, "edge ({u}, {v}) invalid for n = {n}");
            adj[u].insert(v);
            adj[v].insert(u);
        }
        UGraph { n, adj }
    }

    pub fn from_cover(cover: &CoverDigraph) -> Self {
        UGraph::new(cover.n(), cover.arcs())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }
}

/// Principal vertices of a clique subdivision plus one connecting path per
/// unordered principal pair. Paths list all vertices including endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionCertificate {
    pub principals: Vec<usize>,
    pub paths: Vec<CertPath>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertPath {
    pub ends: (usize, usize),
    pub vertices: Vec<usize>,
}

/// The first violated clause of the subdivision definition, if any.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubdivisionDefect {
    #[error("expected {expected} principal vertices, found {found}")]
    PrincipalCount { expected: usize, found: usize },
    #[error("principal {0} out of range or repeated")]
    PrincipalInvalid(usize),
    #[error("expected {expected} paths, found {found}")]
    PathCount { expected: usize, found: usize },
    #[error("paths do not cover every principal pair exactly once")]
    PairCoverage,
    #[error("path for ({0}, {1}) does not start and end at its principals")]
    EndpointMismatch(usize, usize),
    #[error("path for ({0}, {1}) repeats a vertex or uses a non-edge")]
    NotAPath(usize, usize),
    #[error("path for ({0}, {1}) passes through a principal vertex")]
    InteriorHitsPrincipal(usize, usize),
    #[error("paths for ({0}, {1}) and ({2}, {3}) share an interior vertex")]
    InteriorsOverlap(usize, usize, usize, usize),
}

/// Checks a clique-subdivision certificate clause by clause: `n` distinct
/// principals, exactly n(n-1)/2 paths covering each principal pair once,
/// every path a real path of `g` between its principals, interiors avoiding
/// all principals, and interiors pairwise disjoint.
pub fn verify_subdivision(
    g: &UGraph,
    cert: &SubdivisionCertificate,
    n: usize,
) -> Result<(), SubdivisionDefect> {
    if cert.principals.len() != n {
        return Err(SubdivisionDefect::PrincipalCount {
            expected: n,
            found: cert.principals.len(),
        });
    }
    let mut principal_set = Bits::new(g.n());
    for &v in &cert.principals {
        if v >= g.n() || principal_set.contains(v) {
            return Err(SubdivisionDefect::PrincipalInvalid(v));
        }
        principal_set.insert(v);
    }
    let expected_paths = n * (n - 1) / 2;
    if cert.paths.len() != expected_paths {
        return Err(SubdivisionDefect::PathCount {
            expected: expected_paths,
            found: cert.paths.len(),
        });
    }
    let mut covered = std::collections::HashSet::new();
    for path in &cert.paths {
        let (u, v) = path.ends;
        let key = (u.min(v), u.max(v));
        if u == v || !principal_set.contains(u) || !principal_set.contains(v) || !covered.insert(key)
        {
            return Err(SubdivisionDefect::PairCoverage);
        }
    }
    let mut interiors = Bits::new(g.n());
    for path in &cert.paths {
        let (u, v) = path.ends;
        if path.vertices.first() != Some(&u) || path.vertices.last() != Some(&v) {
            return Err(SubdivisionDefect::EndpointMismatch(u, v));
        }
        let mut seen = Bits::new(g.n());
        for w in path.vertices.windows(2) {
            if w[0] >= g.n() || w[1] >= g.n() || !g.has_edge(w[0], w[1]) {
                return Err(SubdivisionDefect::NotAPath(u, v));
            }
        }
        for &w in &path.vertices {
            if seen.contains(w) {
                return Err(SubdivisionDefect::NotAPath(u, v));
            }
            seen.insert(w);
        }
        for &w in &path.vertices[1..path.vertices.len() - 1] {
            if principal_set.contains(w) {
                return Err(SubdivisionDefect::InteriorHitsPrincipal(u, v));
            }
            if interiors.contains(w) {
                let other = cert
                    .paths
                    .iter()
                    .find(|q| {
                        q.ends != path.ends
                            && q.vertices[1..q.vertices.len() - 1].contains(&w)
                    })
                    .map(|q| q.ends)
                    .unwrap_or((usize::MAX, usize::MAX));
                return Err(SubdivisionDefect::InteriorsOverlap(u, v, other.0, other.1));
            }
            interiors.insert(w);
        }
    }
    Ok(())
}

/// Exhaustive search for a K_n subdivision under the default vertex limit.
pub fn find_clique_subdivision(
    g: &UGraph,
    n: usize,
) -> Result<Option<SubdivisionCertificate>, MinorError> {
    find_clique_subdivision_with_limit(g, n, DEFAULT_ORACLE_LIMIT)
}

/// Exhaustive search with an explicit vertex cutoff. The cutoff is a hard
/// parameter: graphs above it are rejected, never silently truncated.
///
/// Principals are enumerated in lexicographic order over vertices of degree
/// at least n-1; paths are tried shortest-first with backtracking over
/// vertex-disjoint interiors, so the returned certificate is deterministic.
/// `None` means no K_n subdivision exists.
pub fn find_clique_subdivision_with_limit(
    g: &UGraph,
    n: usize,
    limit: usize,
) -> Result<Option<SubdivisionCertificate>, MinorError> {
    assert!(n >= 2);
    if g.n() > limit {
        return Err(MinorError::TooLarge { n: g.n(), limit });
    }
    let candidates: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= n - 1).collect();
    if candidates.len() < n {
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(n);
    let found = choose_principals(g, n, &candidates, 0, &mut chosen);
    Ok(found)
}

fn choose_principals(
    g: &UGraph,
    n: usize,
    candidates: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
) -> Option<SubdivisionCertificate> {
    if chosen.len() == n {
        let mut used = Bits::new(g.n());
        for &v in chosen.iter() {
            used.insert(v);
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let mut paths = Vec::new();
        if connect_pairs(g, chosen, &pairs, 0, &mut used, &mut paths) {
            return Some(SubdivisionCertificate {
                principals: chosen.clone(),
                paths,
            });
        }
        return None;
    }
    for i in from..candidates.len() {
        chosen.push(candidates[i]);
        if let Some(cert) = choose_principals(g, n, candidates, i + 1, chosen) {
            return Some(cert);
        }
        chosen.pop();
    }
    None
}

fn connect_pairs(
    g: &UGraph,
    principals: &[usize],
    pairs: &[(usize, usize)],
    idx: usize,
    used: &mut Bits,
    paths: &mut Vec<CertPath>,
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (pi, pj) = pairs[idx];
    let (u, v) = (principals[pi], principals[pj]);
    let free = g.n() - used.count();
    // Shortest-first: try every interior size before giving up on the pair.
    for interior_len in 0..=free {
        let mut path = vec![u];
        if extend_path(g, v, interior_len, used, &mut path, principals, pairs, idx, paths) {
            return true;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn extend_path(
    g: &UGraph,
    target: usize,
    remaining: usize,
    used: &mut Bits,
    path: &mut Vec<usize>,
    principals: &[usize],
    pairs: &[(usize, usize)],
    idx: usize,
    paths: &mut Vec<CertPath>,
) -> bool {
    let cur = *path.last().unwrap();
    if remaining == 0 {
        if !g.has_edge(cur, target) {
            return false;
        }
        path.push(target);
        paths.push(CertPath {
            ends: (path[0], target),
            vertices: path.clone(),
        });
        let marked: Vec<usize> = path[1..path.len() - 1].to_vec();
        for &w in &marked {
            used.insert(w);
        }
        if connect_pairs(g, principals, pairs, idx + 1, used, paths) {
            return true;
        }
        for &w in &marked {
            used.remove(w);
        }
        paths.pop();
        path.pop();
        return false;
    }
    for w in g.neighbors(cur).collect::<Vec<_>>() {
        if used.contains(w) || path.contains(&w) || w == target {
            continue;
        }
        path.push(w);
        if extend_path(g, target, remaining - 1, used, path, principals, pairs, idx, paths) {
            return true;
        }
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> UGraph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        UGraph::new(n, &edges)
    }

    #[test]
    fn k4_identity_subdivision() {
        let g = complete(4);
        let cert = SubdivisionCertificate {
            principals: vec![0, 1, 2, 3],
            paths: (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .map(|(u, v)| CertPath { ends: (u, v), vertices: vec![u, v] })
                .collect(),
        };
        assert_eq!(verify_subdivision(&g, &cert, 4), Ok(()));
    }

    #[test]
    fn shared_interior_rejected() {
        // K_4 on {0..3} plus vertex 4 adjacent to everything; route two paths
        // through vertex 4.
        let mut edges: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        edges.retain(|&e| e != (0, 1) && e != (2, 3));
        for v in 0..4 {
            edges.push((v, 4));
        }
        let g = UGraph::new(5, &edges);
        let mut paths: Vec<CertPath> = vec![
            CertPath { ends: (0, 1), vertices: vec![0, 4, 1] },
            CertPath { ends: (2, 3), vertices: vec![2, 4, 3] },
        ];
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            paths.push(CertPath { ends: (u, v), vertices: vec![u, v] });
        }
        let cert = SubdivisionCertificate { principals: vec![0, 1, 2, 3], paths };
        assert!(matches!(
            verify_subdivision(&g, &cert, 4),
            Err(SubdivisionDefect::InteriorsOverlap(..))
        ));
    }

    #[test]
    fn oracle_finds_k5_in_k5() {
        let g = complete(5);
        let cert = find_clique_subdivision(&g, 5).unwrap().expect("K_5 is its own subdivision");
        assert_eq!(verify_subdivision(&g, &cert, 5), Ok(()));
    }

    #[test]
    fn oracle_rejects_trees() {
        let g = UGraph::new(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]);
        assert_eq!(find_clique_subdivision(&g, 3).unwrap().map(|_| ()), None);
    }

    #[test]
    fn oracle_finds_subdivided_triangle() {
        // A 6-cycle is a subdivision of K_3.
        let g = UGraph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let cert = find_clique_subdivision(&g, 3).unwrap().expect("cycle contains K_3 subdivision");
        assert_eq!(verify_subdivision(&g, &cert, 3), Ok(()));
    }

    #[test]
    fn oracle_limit_is_hard() {
        let g = complete(13);
        assert_eq!(
            find_clique_subdivision(&g, 3),
            Err(MinorError::TooLarge { n: 13, limit: 12 })
        );
        assert!(find_clique_subdivision_with_limit(&g, 3, 13).unwrap().is_some());
    }

    #[test]
    fn oracle_monotone_in_n() {
        let g = complete(6);
        for n in (3..=5).rev() {
            assert!(find_clique_subdivision(&g, n).unwrap().is_some());
        }
    }
}
