//! Module-level properties cross-checked against independent brute-force
//! oracles: linear-extension enumeration, chain enumeration, and exhaustive
//! chain-pair search.

mod common;

use common::*;
use coverdim::bits::Bits;
use coverdim::dim::{self, Reversibility};
use coverdim::gens;
use coverdim::poset::Poset;
use coverdim::unfold;
use proptest::prelude::*;

fn random_poset_strategy(max_n: usize) -> impl Strategy<Value = Poset> {
    (2..=max_n, 0u64..1_000_000, 1..=7u32)
        .prop_map(|(n, seed, p10)| gens::random_poset(n, p10 as f64 / 10.0, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// lt equals the closure of the cover arcs, both ways round.
    #[test]
    fn closure_cover_roundtrip(p in random_poset_strategy(9)) {
        let cover = p.cover_digraph();
        let q = Poset::from_cover(p.n(), cover.arcs()).unwrap();
        prop_assert_eq!(p, q);
    }

    /// Removing any cover arc changes the closure: the reduction is minimal.
    #[test]
    fn reduction_is_minimal(p in random_poset_strategy(8)) {
        let arcs = p.cover_digraph().arcs().to_vec();
        for drop in 0..arcs.len() {
            let rest: Vec<_> = arcs.iter().enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &a)| a)
                .collect();
            let q = Poset::from_cover(p.n(), &rest).unwrap();
            let (u, v) = arcs[drop];
            prop_assert!(!q.lt(u, v), "dropping cover ({u}, {v}) must lose the relation");
        }
    }

    /// Pendant attachment preserves height and only adds degree-1 vertices.
    #[test]
    fn min_max_reduction_shape(p in random_poset_strategy(9)) {
        let q = p.min_max_reduction();
        prop_assert_eq!(q.height(), p.height());
        let old_cover: std::collections::HashSet<(usize, usize)> =
            p.cover_digraph().arcs().iter().copied().collect();
        let qc = q.cover_digraph();
        for &(u, v) in qc.arcs() {
            if u < p.n() && v < p.n() {
                prop_assert!(old_cover.contains(&(u, v)), "old arcs unchanged");
            }
        }
        for x in p.n()..q.n() {
            prop_assert_eq!(qc.degree(x), 1, "new vertices are pendant");
        }
        // Every old cover arc survives.
        let new_cover: std::collections::HashSet<(usize, usize)> = qc.arcs().iter().copied().collect();
        for arc in &old_cover {
            prop_assert!(new_cover.contains(arc));
        }
    }

    /// (k+k)-freeness agrees with the exhaustive chain-pair search.
    #[test]
    fn kk_free_matches_brute_force(p in random_poset_strategy(8), k in 2usize..=3) {
        prop_assert_eq!(p.is_kk_free(k), kk_free_brute(&p, k));
        if let Some((ca, cb)) = p.kk_witness(k) {
            prop_assert_eq!(ca.len(), k);
            prop_assert_eq!(cb.len(), k);
            for w in ca.windows(2) {
                prop_assert!(p.lt(w[0], w[1]));
            }
            for w in cb.windows(2) {
                prop_assert!(p.lt(w[0], w[1]));
            }
            for &x in &ca {
                for &y in &cb {
                    prop_assert!(p.incomparable(x, y));
                }
            }
        }
    }

    /// Directed cover-path length equals the longest chain in the interval,
    /// and exists exactly for comparable endpoints.
    #[test]
    fn longest_path_matches_chain_enumeration(p in random_poset_strategy(8)) {
        for a in 0..p.n() {
            for b in 0..p.n() {
                let got = p.longest_path_between(a, b);
                prop_assert_eq!(got, longest_chain_brute(&p, a, b));
                prop_assert_eq!(got.is_none(), !p.le(a, b));
            }
        }
    }

    /// Observation 2.1 at property-test scale: reversibility of a random
    /// subset of Inc(P) agrees with the linear-extension oracle.
    #[test]
    fn reversibility_matches_extension_oracle(
        p in random_poset_strategy(6),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..6),
    ) {
        let inc = dim::inc_pairs(&p);
        prop_assume!(!inc.is_empty());
        let masks = reversal_masks(&p, &inc);
        let mut subset_ix: Vec<usize> = picks.iter().map(|i| i.index(inc.len())).collect();
        subset_ix.sort_unstable();
        subset_ix.dedup();
        let subset: Vec<_> = subset_ix.iter().map(|&i| inc[i]).collect();
        let mask: u64 = subset_ix.iter().map(|&i| 1u64 << i).sum();
        let brute = reversible_by_extension(&masks, mask);
        match dim::is_reversible(&p, &subset).unwrap() {
            Reversibility::Reversible(ext) => {
                prop_assert!(brute, "library says reversible, oracle disagrees");
                prop_assert!(dim::is_linear_extension(&p, &ext));
            }
            Reversibility::AlternatingCycle(cycle) => {
                prop_assert!(!brute, "library says cycle, oracle disagrees");
                // The witness really is an alternating cycle inside the set.
                prop_assert!(cycle.len() >= 2);
                for (i, pr) in cycle.iter().enumerate() {
                    let next = &cycle[(i + 1) % cycle.len()];
                    prop_assert!(p.le(pr.x, next.y));
                    prop_assert!(subset.contains(pr));
                }
            }
        }
    }

    /// Exact dimension equals the brute-force minimum over extension covers.
    #[test]
    fn dim_matches_brute_force(p in random_poset_strategy(6)) {
        let (d, cert) = dim::dim_exact(&p);
        prop_assert_eq!(d, brute_force_dim(&p));
        cert.verify(&p, &dim::inc_pairs(&p)).unwrap();
    }

    /// Dimension is monotone under induced subposets.
    #[test]
    fn dim_monotone_under_induced(p in random_poset_strategy(7), keep in any::<u8>()) {
        let members: Vec<usize> = (0..p.n()).filter(|&i| keep >> (i % 8) & 1 == 1).collect();
        prop_assume!(!members.is_empty());
        let set = Bits::from_indices(p.n(), members);
        let (q, _) = p.induced(&set).unwrap();
        prop_assert!(dim::dim_exact(&q).0 <= dim::dim_exact(&p).0);
    }

    /// Unfolding a random connected poset partitions its extremes and has
    /// the two-layer reach property.
    #[test]
    fn unfold_partitions_and_star(p in random_poset_strategy(9), root_pick in any::<prop::sample::Index>()) {
        prop_assume!(p.components_cover().len() == 1);
        let mins = p.minimals();
        let maxs = p.maximals();
        prop_assume!(mins.is_disjoint(&maxs)); // no isolated points
        let roots: Vec<usize> = mins.iter().collect();
        let root = roots[root_pick.index(roots.len())];
        let u = unfold::unfold(&p, &mins, &maxs, root).unwrap();
        prop_assert!(unfold::verify_star(&p, &u));
        prop_assert_eq!(&u.a_union(), &mins);
        prop_assert_eq!(&u.b_union(), &maxs);
        let mut total = 0;
        for layer in u.a_layers.iter().chain(&u.b_layers) {
            total += layer.count();
        }
        prop_assert_eq!(total, mins.count() + maxs.count(), "layers are disjoint");
    }
}

/// dim*(Q) bounds dim(P) after the pendant reduction (Observation 2.2 (3)).
#[test]
fn reduction_bounds_dimension() {
    for seed in 0..40 {
        let p = gens::random_poset(7, 0.35, seed);
        let q = p.min_max_reduction();
        let dp = dim::dim_exact(&p).0;
        let (dq_star, cert) = dim::dim_star_exact(&q);
        assert!(
            dp <= dq_star,
            "seed {seed}: dim(P) = {dp} > dim*(Q) = {dq_star}"
        );
        cert.verify(&q, &dim::inc_minmax_pairs(&q)).unwrap();
    }
}

/// chi(Min, Max) coincides with dim* whenever min-max pairs exist.
#[test]
fn chi_min_max_is_dim_star() {
    for (name, p) in small_corpus() {
        if dim::inc_minmax_pairs(&p).is_empty() {
            continue;
        }
        assert_eq!(
            dim::chi(&p, &p.minimals(), &p.maximals()),
            dim::dim_star_exact(&p).0,
            "{name}"
        );
    }
}

/// The exact dimension dominates the largest embedded standard example.
#[test]
fn dim_bounds_standard_examples() {
    for (name, p) in small_corpus() {
        if p.n() > 14 {
            continue; // keep exact dimension affordable
        }
        let (d, w) = dim::largest_standard_example(&p);
        if let Some(w) = &w {
            assert!(w.verify(&p), "{name}: witness invalid");
        }
        assert!(dim::dim_exact(&p).0 >= d, "{name}");
    }
}

/// Combined layer colorings stay proper on every corpus poset that unfolds.
#[test]
fn combined_colorings_are_proper() {
    for (name, p) in small_corpus() {
        if p.components_cover().len() != 1 || !p.minimals().is_disjoint(&p.maximals()) {
            continue;
        }
        let u = unfold::unfold(&p, &p.minimals(), &p.maximals(), p.minimals().first().unwrap())
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        let lc = unfold::optimal_layer_colorings(&p, &u);
        let phi = unfold::combine_colorings(&p, &u, &lc).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(unfold::coloring_is_proper(&p, &phi), "{name}");
        let chi1 = lc.same.iter().flatten().map(|&(_, c)| c).max().unwrap_or(0);
        let chi2 = lc.next.iter().flatten().map(|&(_, c)| c).max().unwrap_or(0);
        let used: std::collections::HashSet<usize> = phi.iter().map(|&(_, c)| c).collect();
        // Both palettes in the generic case; a degenerate palette costs one
        // extra special color.
        assert!(
            used.len() <= chi1.max(1) + chi2.max(1),
            "{name}: {} colors exceed the lemma's bound ({chi1} + {chi2})",
            used.len(),
        );
    }
}

/// Oracle self-consistency: whatever the search finds, the verifier accepts,
/// and success is monotone in the clique size.
#[test]
fn oracle_certificates_verify() {
    use coverdim::minor::{find_clique_subdivision, verify_subdivision, UGraph};
    for (name, p) in small_corpus() {
        if p.n() > 10 {
            continue;
        }
        let g = UGraph::from_cover(&p.cover_digraph());
        let mut prev_found = true;
        for n in (3..=5).rev() {
            let found = find_clique_subdivision(&g, n).unwrap();
            if let Some(cert) = &found {
                assert_eq!(verify_subdivision(&g, cert, n), Ok(()), "{name} n={n}");
            }
            if !prev_found {
                // monotone: success at n+1 implies success at n
            } else if found.is_none() {
                prev_found = false;
            }
        }
        // Explicit monotonicity check upward.
        for n in 3..=4 {
            let small = find_clique_subdivision(&g, n).unwrap().is_some();
            let big = find_clique_subdivision(&g, n + 1).unwrap().is_some();
            assert!(!big || small, "{name}: K_{} found but not K_{}", n + 1, n);
        }
    }
}

/// The far/close split agrees with exhaustive chain enumeration, on random
/// posets and on (2+2)-free interval orders.
#[test]
fn far_close_matches_chain_lengths() {
    use coverdim::kk::far_close_split;
    let mut fixtures: Vec<Poset> = (0..20).map(|s| gens::random_poset(9, 0.3, s)).collect();
    fixtures.extend((0..10).map(|s| gens::random_interval_order(8, s)));
    for (seed, p) in fixtures.into_iter().enumerate() {
        for pivot in 0..p.n() {
            let side = p.minimals();
            for k in 2..=3 {
                let (far, close) = far_close_split(&p, &side, usize::MAX, pivot, k, true);
                for x in side.iter() {
                    let len = longest_chain_brute(&p, x, pivot);
                    let is_far = len.is_some_and(|l| l >= k);
                    assert_eq!(far.contains(x), is_far, "fixture {seed} x={x} pivot={pivot} k={k}");
                    assert_eq!(close.contains(x), !is_far);
                }
            }
        }
    }
}
