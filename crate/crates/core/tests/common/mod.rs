#![allow(dead_code)] // each suite uses its own subset of the oracles

//! Independent brute-force oracles shared by the integration suites. These
//! deliberately avoid the library's pair-digraph machinery: reversibility and
//! dimension are decided by enumerating linear extensions, path lengths by
//! enumerating chains, and (k+k)-freeness by enumerating chain pairs.

use coverdim::dim::IncPair;
use coverdim::poset::Poset;

/// Every linear extension, by recursive removal of minimal points.
pub fn all_linear_extensions(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.n();
    let mut used = vec![false; n];
    let mut prefix = Vec::with_capacity(n);
    let mut out = Vec::new();
    fn rec(p: &Poset, used: &mut [bool], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == p.n() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..p.n() {
            if used[v] {
                continue;
            }
            if p.dn_set(v).iter().any(|u| !used[u]) {
                continue;
            }
            used[v] = true;
            prefix.push(v);
            rec(p, used, prefix, out);
            prefix.pop();
            used[v] = false;
        }
    }
    rec(p, &mut used, &mut prefix, &mut out);
    out
}

/// For each linear extension, the bitmask (over `pairs`) of ordered pairs it
/// reverses, i.e. places y before x.
pub fn reversal_masks(p: &Poset, pairs: &[IncPair]) -> Vec<u64> {
    assert!(pairs.len() <= 64, "mask oracle limited to 64 pairs");
    let mut masks = Vec::new();
    for ext in all_linear_extensions(p) {
        let mut pos = vec![0usize; p.n()];
        for (i, &v) in ext.iter().enumerate() {
            pos[v] = i;
        }
        let mut m = 0u64;
        for (ix, pr) in pairs.iter().enumerate() {
            if pos[pr.y] < pos[pr.x] {
                m |= 1 << ix;
            }
        }
        masks.push(m);
    }
    masks.sort_unstable();
    masks.dedup();
    // Dominated masks never help a cover or a subset query.
    let maximal: Vec<u64> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&o| o != m && o & m == m))
        .collect();
    maximal
}

/// Brute-force reversibility: some linear extension reverses every chosen
/// pair.
pub fn reversible_by_extension(masks: &[u64], subset: u64) -> bool {
    masks.iter().any(|&m| m & subset == subset)
}

/// Brute-force dimension: the least number of reversal masks covering all
/// incomparable pairs, by exact set cover. Chains have dimension 1.
pub fn brute_force_dim(p: &Poset) -> usize {
    let pairs = coverdim::dim::inc_pairs(p);
    if pairs.is_empty() {
        return 1;
    }
    let target: u64 = if pairs.len() == 64 { !0 } else { (1 << pairs.len()) - 1 };
    let masks = reversal_masks(p, &pairs);
    for d in 1..=pairs.len() {
        if cover_exists(&masks, target, 0, d) {
            return d;
        }
    }
    unreachable!("every pair is reversed by some extension");
}

fn cover_exists(masks: &[u64], target: u64, acc: u64, budget: usize) -> bool {
    if acc & target == target {
        return true;
    }
    if budget == 0 {
        return false;
    }
    // Branch on the first uncovered pair: some chosen mask must reverse it.
    let first = (target & !acc).trailing_zeros();
    for &m in masks {
        if m >> first & 1 == 1 && cover_exists(masks, target, acc | m, budget - 1) {
            return true;
        }
    }
    false
}

/// Longest chain from `a` to `b` by exhaustive chain enumeration (vertices
/// counted), independent of the DP in the library.
pub fn longest_chain_brute(p: &Poset, a: usize, b: usize) -> Option<usize> {
    if a == b {
        return Some(1);
    }
    if !p.lt(a, b) {
        return None;
    }
    let mut best = 2;
    let mut stack = vec![(a, 1usize)];
    while let Some((v, len)) = stack.pop() {
        for w in p.up_set(v).iter() {
            if w == b {
                best = best.max(len + 1);
            } else if p.lt(w, b) {
                stack.push((w, len + 1));
            }
        }
    }
    Some(best)
}

/// Exhaustive (k+k)-freeness: enumerate all pairs of k-element chains and
/// test cross-incomparability directly.
pub fn kk_free_brute(p: &Poset, k: usize) -> bool {
    let chains = all_chains(p, k);
    for (i, ca) in chains.iter().enumerate() {
        for cb in chains.iter().skip(i + 1) {
            let cross_incomparable = ca
                .iter()
                .all(|&x| cb.iter().all(|&y| p.incomparable(x, y)));
            if cross_incomparable {
                return false;
            }
        }
    }
    true
}

/// Chains listed as tuples ascending in the poset order; the tuple is
/// determined by its element set, so there are no duplicates.
fn all_chains(p: &Poset, k: usize) -> Vec<Vec<usize>> {
    fn rec(p: &Poset, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let last = cur.last().copied();
        for v in 0..p.n() {
            if last.is_none_or(|l| p.lt(l, v)) {
                cur.push(v);
                rec(p, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p, k, &mut Vec::new(), &mut out);
    out
}

/// Deterministic mixed corpus of small posets for identity-style checks.
pub fn small_corpus() -> Vec<(String, Poset)> {
    use coverdim::gens::*;
    let mut out: Vec<(String, Poset)> = Vec::new();
    for d in 2..=5 {
        out.push((format!("standard({d})"), standard_example(d)));
    }
    for d in 3..=5 {
        out.push((format!("kelly({d})"), kelly(d)));
    }
    out.push(("chain(6)".into(), chain(6)));
    out.push(("antichain(4)".into(), antichain(4)));
    out.push(("boolean(2)".into(), boolean_lattice(2)));
    out.push(("boolean(3)".into(), boolean_lattice(3)));
    for seed in 0..6 {
        out.push((format!("random(8,0.3,{seed})"), random_poset(8, 0.3, seed)));
    }
    for seed in 0..4 {
        out.push((format!("tree(10,{seed})"), random_tree_cover(10, seed)));
    }
    for seed in 0..4 {
        out.push((format!("interval(9,{seed})"), random_interval_order(9, seed)));
    }
    for seed in 0..4 {
        out.push((format!("bipartite(4,4,0.5,{seed})"), random_bipartite(4, 4, 0.5, seed)));
    }
    out
}
