//! Test-corpus generators: standard examples, Kelly's planar family, chains,
//! antichains, boolean lattices, and seeded random posets.
//!
//! All generators are deterministic: identical parameters (and seed) yield
//! identical posets, byte for byte under the text serialization.

use crate::bits::Bits;
use crate::poset::{Poset, PosetError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("bad generator parameters: {0}")]
    BadParameters(String),
}

/// A generator family with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GenSpec {
    Chain { n: usize },
    Antichain { n: usize },
    Standard { d: usize },
    Kelly { d: usize },
    BooleanLattice { atoms: u32 },
    Random { n: usize, prob: f64, seed: u64 },
    TreeCover { n: usize, seed: u64 },
    IntervalOrder { n: usize, seed: u64 },
}

pub fn corpus(spec: &GenSpec) -> Result<Poset, GenError> {
    match *spec {
        GenSpec::Chain { n } => {
            check((1..=10_000).contains(&n), "chain needs 1 <= n <= 10000")?;
            Ok(chain(n))
        }
        GenSpec::Antichain { n } => {
            check((1..=10_000).contains(&n), "antichain needs 1 <= n <= 10000")?;
            Ok(antichain(n))
        }
        GenSpec::Standard { d } => {
            check((2..=1000).contains(&d), "standard example needs 2 <= d <= 1000")?;
            Ok(standard_example(d))
        }
        GenSpec::Kelly { d } => {
            check((3..=1000).contains(&d), "kelly needs 3 <= d <= 1000")?;
            Ok(kelly(d))
        }
        GenSpec::BooleanLattice { atoms } => {
            check((1..=12).contains(&atoms), "boolean lattice needs 1 <= atoms <= 12")?;
            Ok(boolean_lattice(atoms))
        }
        GenSpec::Random { n, prob, seed } => {
            check((1..=500).contains(&n), "random poset needs 1 <= n <= 500")?;
            check((0.0..=1.0).contains(&prob), "probability must be in [0, 1]")?;
            Ok(random_poset(n, prob, seed))
        }
        GenSpec::TreeCover { n, seed } => {
            check((1..=1000).contains(&n), "tree cover needs 1 <= n <= 1000")?;
            Ok(random_tree_cover(n, seed))
        }
        GenSpec::IntervalOrder { n, seed } => {
            check((1..=1000).contains(&n), "interval order needs 1 <= n <= 1000")?;
            Ok(random_interval_order(n, seed))
        }
    }
}

fn check(ok: bool, msg: &str) -> Result<(), GenError> {
    if ok {
        Ok(())
    } else {
        Err(GenError::BadParameters(msg.into()))
    }
}

pub fn chain(n: usize) -> Poset {
    let pairs: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Poset::from_cover(n, &pairs).expect("chain is acyclic")
}

pub fn antichain(n: usize) -> Poset {
    Poset::from_cover(n, &[]).expect("empty relation")
}

/// The standard example S_d: minimal points a_1..a_d at indices `0..d`,
/// maximal points b_1..b_d at indices `d..2d`, and `a_i < b_j` iff `i != j`.
pub fn standard_example(d: usize) -> Poset {
    assert!(d >= 2);
    let n = 2 * d;
    let mut rows = vec![Bits::new(n); n];
    for (i, row) in rows.iter_mut().take(d).enumerate() {
        for j in 0..d {
            if i != j {
                row.insert(d + j);
            }
        }
    }
    Poset::from_closed_rows(rows)
}

/// Kelly's planar family: a poset containing S_d on designated extreme
/// points, with a planar cover graph whose height grows with d.
///
/// Layout: `a_i` at `i - 1`, `b_j` at `d + j - 1`, the two internal cover
/// chains `x_1 < .. < x_{d-1}` at `2d ..` and `y_1 < .. < y_{d-1}` at
/// `3d - 1 ..`. Covers: `a_i < x_i` (i <= d-1), `x_{j-1} < b_j` (j >= 2),
/// `a_i < y_{d-i+1}` (i >= 2), `y_{d-j} < b_j` (j <= d-1). Then `a_i <= b_j`
/// holds via the x-chain iff `i < j` and via the y-chain iff `i > j`, so the
/// closure realizes the S_d comparability pattern.
pub fn kelly(d: usize) -> Poset {
    assert!(d >= 3);
    let a = |i: usize| i - 1;
    let b = |j: usize| d + j - 1;
    let x = |t: usize| 2 * d + t - 1;
    let y = |t: usize| 3 * d - 1 + t - 1;
    let n = 4 * d - 2;
    let mut pairs = Vec::new();
    for t in 1..d - 1 {
        pairs.push((x(t), x(t + 1)));
        pairs.push((y(t), y(t + 1)));
    }
    for i in 1..=d - 1 {
        pairs.push((a(i), x(i)));
    }
    for j in 2..=d {
        pairs.push((x(j - 1), b(j)));
    }
    for i in 2..=d {
        pairs.push((a(i), y(d - i + 1)));
    }
    for j in 1..=d - 1 {
        pairs.push((y(d - j), b(j)));
    }
    let p = Poset::from_cover(n, &pairs).expect("kelly covers are acyclic");
    debug_assert!({
        (1..=d).all(|i| (1..=d).all(|j| p.lt(a(i), b(j)) == (i != j)))
    });
    p
}

/// The designated extreme points of `kelly(d)`: (a-indices, b-indices).
pub fn kelly_points(d: usize) -> (Vec<usize>, Vec<usize>) {
    ((0..d).collect(), (d..2 * d).collect())
}

/// Subsets of an `atoms`-element set ordered by inclusion.
pub fn boolean_lattice(atoms: u32) -> Poset {
    let n = 1usize << atoms;
    let mut rows = vec![Bits::new(n); n];
    for (s, row) in rows.iter_mut().enumerate() {
        for t in 0..n {
            if s != t && s & t == s {
                row.insert(t);
            }
        }
    }
    Poset::from_closed_rows(rows)
}

/// Random DAG on the identity topological order with arc probability `prob`,
/// transitively closed.
pub fn random_poset(n: usize, prob: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(prob) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_cover(n, &pairs).expect("forward arcs are acyclic")
}

/// A poset whose cover graph is a uniformly attached random tree with each
/// edge oriented at random.
pub fn random_tree_cover(n: usize, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        if rng.gen_bool(0.5) {
            pairs.push((u, v));
        } else {
            pairs.push((v, u));
        }
    }
    Poset::from_cover(n, &pairs).expect("tree orientations are acyclic")
}

/// Random interval order: `x < y` iff the interval of `x` ends strictly
/// before the interval of `y` begins. Interval orders are exactly the
/// (2+2)-free posets.
pub fn random_interval_order(n: usize, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 4 * n.max(1) as u64;
    let intervals: Vec<(u64, u64)> = (0..n)
        .map(|_| {
            let l = rng.gen_range(0..span);
            let r = l + 1 + rng.gen_range(0..span / 2 + 1);
            (l, r)
        })
        .collect();
    let mut rows = vec![Bits::new(n); n];
    for (u, row) in rows.iter_mut().enumerate() {
        for v in 0..n {
            if u != v && intervals[u].1 < intervals[v].0 {
                row.insert(v);
            }
        }
    }
    Poset::from_closed_rows(rows)
}

/// Height-2 random poset: `mins` minimal and `maxs` maximal points with each
/// upward relation present independently with probability `prob`. Useful as
/// a source of posets whose dimension is witnessed by min-max pairs.
pub fn random_bipartite(mins: usize, maxs: usize, prob: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = mins + maxs;
    let mut rows = vec![Bits::new(n); n];
    for row in rows.iter_mut().take(mins) {
        for j in 0..maxs {
            if rng.gen_bool(prob) {
                row.insert(mins + j);
            }
        }
    }

    Poset::from_closed_rows(rows)
}

#[allow(unused)]
fn _gen_spec_is_error_free(spec: &GenSpec) -> Result<Poset, GenError> {
    corpus(spec)
}

impl From<PosetError> for GenError {
    fn from(e: PosetError) -> Self {
        GenError::BadParameters(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim;
    use crate::io::write_poset;

    #[test]
    fn standard_small() {
        let s2 = standard_example(2);
        assert_eq!(s2.cover_digraph().arcs(), &[(0, 3), (1, 2)]);
        let s4 = standard_example(4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s4.lt(i, 4 + j), i != j);
            }
        }
        assert_eq!(s4.height(), 2);
    }

    #[test]
    fn standard_dimension() {
        for d in 2..=4 {
            assert_eq!(dim::dim_exact(&standard_example(d)).0, d);
        }
    }

    #[test]
    fn kelly_contract() {
        for d in 3..=10 {
            let p = kelly(d);
            let (a, b) = kelly_points(d);
            assert_eq!(p.n(), 4 * d - 2);
            for (i, &ai) in a.iter().enumerate() {
                assert!(p.dn_set(ai).is_empty(), "a_{} must be minimal", i + 1);
                for (j, &bj) in b.iter().enumerate() {
                    assert_eq!(p.lt(ai, bj), i != j, "kelly({d}) a_{} vs b_{}", i + 1, j + 1);
                }
            }
            for &bj in &b {
                assert!(p.up_set(bj).is_empty());
            }
            // Planarity evidence: the edge bound for planar graphs.
            let v = p.n();
            let e = p.cover_digraph().edge_count();
            assert!(e <= 3 * v - 6, "kelly({d}): {e} edges on {v} vertices");
            assert_eq!(e, 6 * d - 8);
            assert_eq!(p.components_cover().len(), 1);
        }
    }

    #[test]
    fn kelly_height_grows() {
        assert!(kelly(4).height() > kelly(3).height());
        assert_eq!(kelly(4).height(), 5); // a_1 < x_1 < x_2 < x_3 < b_4
    }

    #[test]
    fn kelly_contains_standard() {
        let (d, w) = dim::largest_standard_example(&kelly(4));
        assert_eq!(d, 4);
        assert!(w.unwrap().verify(&kelly(4)));
    }

    #[test]
    fn kelly_dimension_exact() {
        for d in 3..=4 {
            assert_eq!(dim::dim_exact(&kelly(d)).0, d, "dim(kelly({d}))");
        }
    }

    #[test]
    fn kelly_internal_chain_length() {
        // a_1 reaches b_4 through the whole x-chain: at least 3 vertices.
        let p = kelly(4);
        let len = p.longest_path_between(0, 7).expect("a_1 < b_4");
        assert!(len >= 3, "got {len}");
        assert_eq!(len, 5); // a_1 < x_1 < x_2 < x_3 < b_4
    }

    #[test]
    fn boolean_lattice_shape() {
        let p = boolean_lattice(3);
        assert_eq!(p.n(), 8);
        assert_eq!(p.height(), 4);
        assert_eq!(dim::dim_exact(&p).0, 3);
    }

    #[test]
    fn tree_cover_is_tree() {
        for seed in 0..20 {
            let p = random_tree_cover(12, seed);
            let cov = p.cover_digraph();
            assert_eq!(cov.edge_count(), 11);
            assert_eq!(p.components_cover().len(), 1);
        }
    }

    #[test]
    fn interval_orders_are_two_two_free() {
        for seed in 0..20 {
            let p = random_interval_order(10, seed);
            assert!(p.is_kk_free(2), "interval orders are (2+2)-free (seed {seed})");
        }
    }

    #[test]
    fn determinism() {
        let spec = GenSpec::Random { n: 20, prob: 0.3, seed: 99 };
        assert_eq!(
            write_poset(&corpus(&spec).unwrap()),
            write_poset(&corpus(&spec).unwrap())
        );
        let spec = GenSpec::IntervalOrder { n: 15, seed: 7 };
        assert_eq!(
            write_poset(&corpus(&spec).unwrap()),
            write_poset(&corpus(&spec).unwrap())
        );
    }

    #[test]
    fn corpus_rejects_bad_parameters() {
        assert!(matches!(
            corpus(&GenSpec::Standard { d: 1 }),
            Err(GenError::BadParameters(_))
        ));
        assert!(matches!(
            corpus(&GenSpec::Random { n: 5, prob: 1.5, seed: 0 }),
            Err(GenError::BadParameters(_))
        ));
    }
}
