//! The unfolding decomposition of a connected poset's extreme points, the
//! heavy-layer bound, coloring combination, and support-set selection.

use crate::bits::Bits;
use crate::dim::{self, IncPair};
use crate::poset::{PointSet, Poset};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnfoldError {
    #[error("the restriction spanned by the given extreme sets is disconnected")]
    Disconnected,
    #[error("the unfolding root must belong to the minimal side")]
    RootNotMinimal,
    #[error("the given sides are not the extreme antichains of their restriction")]
    SidesNotExtreme,
    #[error("chi(A, B) = {chi} but the construction requires at least 3")]
    ChiTooSmall { chi: usize },
    #[error("input coloring is not a proper per-layer coloring: {0}")]
    ImproperInputColoring(String),
    #[error("all per-layer pair sets are empty yet chi(A, B) >= 3")]
    DegenerateLayerColorings,
    #[error("construction guarantee failed: {0}")]
    GuaranteeFailed(String),
}

/// The layered sequence A_0, B_1, ..., A_{m-1}, B_m obtained by unfolding
/// from a root minimal element. `a_layers[i]` is A_i and `b_layers[i]` is
/// B_{i+1}.
#[derive(Clone, Debug)]
pub struct Unfolding {
    pub root: usize,
    pub a_layers: Vec<PointSet>,
    pub b_layers: Vec<PointSet>,
}

impl Unfolding {
    pub fn m(&self) -> usize {
        self.b_layers.len()
    }

    pub fn a_union(&self) -> PointSet {
        let mut r = self.a_layers[0].clone();
        for l in &self.a_layers[1..] {
            r.union_with(l);
        }
        r
    }

    pub fn b_union(&self) -> PointSet {
        let mut r = self.b_layers[0].clone();
        for l in &self.b_layers[1..] {
            r.union_with(l);
        }
        r
    }

    /// B-layer number (1-based) containing `b`, if any.
    fn b_layer_of(&self, b: usize) -> Option<usize> {
        self.b_layers.iter().position(|l| l.contains(b)).map(|i| i + 1)
    }

    /// A-layer number (0-based) containing `a`, if any.
    fn a_layer_of(&self, a: usize) -> Option<usize> {
        self.a_layers.iter().position(|l| l.contains(a))
    }
}

/// Unfolds the restriction of `p` spanned by the extreme antichains `a` and
/// `b` from the root `a0`.
///
/// Requires `a0` in `a`, both sides antichains supporting each other
/// (`a` below `b`, `b` above `a`), and the restriction `Up(a) ∩ D(b)`
/// connected in the cover graph. The layers then partition `a` and `b`.
pub fn unfold(p: &Poset, a: &PointSet, b: &PointSet, a0: usize) -> Result<Unfolding, UnfoldError> {
    if !a.contains(a0) {
        return Err(UnfoldError::RootNotMinimal);
    }
    // Antichain sides that support each other make them exactly the extreme
    // points of the restriction.
    for x in a.iter() {
        if !a.is_disjoint(p.up_set(x)) {
            return Err(UnfoldError::SidesNotExtreme);
        }
        if p.up_set(x).is_disjoint(b) && !b.contains(x) {
            return Err(UnfoldError::SidesNotExtreme);
        }
    }
    for y in b.iter() {
        if !b.is_disjoint(p.dn_set(y)) {
            return Err(UnfoldError::SidesNotExtreme);
        }
        if p.dn_set(y).is_disjoint(a) && !a.contains(y) {
            return Err(UnfoldError::SidesNotExtreme);
        }
    }
    let region = p.upset_of(a).intersection(&p.downset_of(b));
    let cover = p.cover_digraph();
    if !connected_within(&cover, &region) {
        return Err(UnfoldError::Disconnected);
    }

    let mut a_rem = a.clone();
    a_rem.remove(a0);
    let mut b_rem = b.clone();
    let mut a_layers = vec![Bits::from_indices(p.n(), [a0])];
    let mut b_layers: Vec<PointSet> = Vec::new();
    loop {
        let prev = a_layers.last().unwrap();
        let bi = b_rem.intersection(&p.upset_of(prev));
        b_rem.difference_with(&bi);
        let ai = a_rem.intersection(&p.downset_of(&bi));
        b_layers.push(bi);
        if ai.is_empty() {
            break;
        }
        a_rem.difference_with(&ai);
        a_layers.push(ai);
    }
    if !a_rem.is_empty() || !b_rem.is_empty() {
        return Err(UnfoldError::Disconnected);
    }
    let u = Unfolding { root: a0, a_layers, b_layers };
    debug_assert!(verify_star(p, &u));
    Ok(u)
}

pub(crate) fn connected_within(cover: &crate::poset::CoverDigraph, set: &Bits) -> bool {
    let Some(start) = set.first() else { return true };
    let mut seen = Bits::new(cover.n());
    seen.insert(start);
    let mut stack = vec![start];
    let mut visited = 1;
    while let Some(v) = stack.pop() {
        for &w in cover.neighbors(v) {
            if set.contains(w) && !seen.contains(w) {
                seen.insert(w);
                visited += 1;
                stack.push(w);
            }
        }
    }
    visited == set.count()
}

/// Checks the two clauses of the unfolding property: a comparable pair
/// `a <= b` with `a` in A_i forces `b` into B_i or B_{i+1}, and with `b` in
/// B_i forces `a` into A_{i-1} or A_i.
pub fn verify_star(p: &Poset, u: &Unfolding) -> bool {
    let b_all = u.b_union();
    for (i, layer) in u.a_layers.iter().enumerate() {
        for a in layer.iter() {
            for b in p.up_set(a).intersection(&b_all).iter() {
                match u.b_layer_of(b) {
                    Some(j) if j == i || j == i + 1 => {}
                    _ => return false,
                }
            }
            if b_all.contains(a) {
                return false;
            }
        }
    }
    let a_all = u.a_union();
    for (ix, layer) in u.b_layers.iter().enumerate() {
        let i = ix + 1;
        for b in layer.iter() {
            for a in p.dn_set(b).intersection(&a_all).iter() {
                match u.a_layer_of(a) {
                    Some(j) if j + 1 == i || j == i => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LayerCase {
    SameLayer,
    NextLayer,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeavyLayer {
    pub ell: usize,
    pub case: LayerCase,
    pub chi_value: usize,
}

/// Finds the layer pair attaining the maximum chi among chi(A_l, B_l) and
/// chi(A_l, B_{l+1}) over l in [m-1]. The maximum is guaranteed to reach
/// chi(A, B) / 2; anything less is flagged loudly.
pub fn heavy_layer(p: &Poset, u: &Unfolding) -> Result<HeavyLayer, UnfoldError> {
    let a = u.a_union();
    let b = u.b_union();
    let chi_ab = dim::chi(p, &a, &b);
    if chi_ab < 3 {
        return Err(UnfoldError::ChiTooSmall { chi: chi_ab });
    }
    let hl = scan_heavy(p, u).ok_or_else(|| {
        UnfoldError::GuaranteeFailed("unfolding has no internal layer to scan".into())
    })?;
    if 2 * hl.chi_value < chi_ab {
        return Err(UnfoldError::GuaranteeFailed(format!(
            "no layer reaches chi/2: best {} vs chi {}",
            hl.chi_value, chi_ab
        )));
    }
    Ok(hl)
}

/// Maximum-chi scan over internal layers; ties prefer the lower layer index
/// and the same-layer case.
fn scan_heavy(p: &Poset, u: &Unfolding) -> Option<HeavyLayer> {
    let m = u.m();
    let mut best: Option<HeavyLayer> = None;
    for ell in 1..m {
        let same = dim::chi(p, &u.a_layers[ell], &u.b_layers[ell - 1]);
        let next = dim::chi(p, &u.a_layers[ell], &u.b_layers[ell]);
        for (case, value) in [(LayerCase::SameLayer, same), (LayerCase::NextLayer, next)] {
            if best.as_ref().is_none_or(|b| value > b.chi_value) {
                best = Some(HeavyLayer { ell, case, chi_value: value });
            }
        }
    }
    best
}

/// Per-layer colorings feeding the combination step: `same[i-1]` colors
/// Inc(A_i, B_i) for i in [1, m-1]; `next[i]` colors Inc(A_i, B_{i+1}) for
/// i in [0, m-1]. Colors are 1-based within each family.
#[derive(Clone, Debug, Default)]
pub struct LayerColorings {
    pub same: Vec<Vec<(IncPair, usize)>>,
    pub next: Vec<Vec<(IncPair, usize)>>,
}

/// Optimal per-layer colorings produced by the exact chi solver.
pub fn optimal_layer_colorings(p: &Poset, u: &Unfolding) -> LayerColorings {
    let m = u.m();
    let color_of = |a: &PointSet, b: &PointSet| -> Vec<(IncPair, usize)> {
        let (_, classes) = dim::chi_partition(p, a, b);
        classes
            .into_iter()
            .enumerate()
            .flat_map(|(c, class)| class.into_iter().map(move |pr| (pr, c + 1)))
            .collect()
    };
    let mut lc = LayerColorings::default();
    for ell in 1..m {
        lc.same.push(color_of(&u.a_layers[ell], &u.b_layers[ell - 1]));
    }
    for i in 0..m {
        let b_next = &u.b_layers[i];
        lc.next.push(match u.a_layers.get(i) {
            Some(ai) => color_of(ai, b_next),
            None => Vec::new(),
        });
    }
    lc
}

/// Combines proper per-layer colorings into one proper coloring of
/// Inc(A, B): same-layer and next-layer pairs keep their colors in two
/// disjoint palettes, pairs pointing backwards get a shared color `c`, and
/// pairs jumping more than one layer forward get `c'`.
pub fn combine_colorings(
    p: &Poset,
    u: &Unfolding,
    lc: &LayerColorings,
) -> Result<Vec<(IncPair, usize)>, UnfoldError> {
    let m = u.m();
    if lc.same.len() + 1 != m || lc.next.len() != m {
        return Err(UnfoldError::ImproperInputColoring(format!(
            "expected {} same-layer and {} next-layer colorings",
            m - 1,
            m
        )));
    }
    let mut assigned: std::collections::HashMap<IncPair, usize> = std::collections::HashMap::new();
    let mut chi1 = 0usize;
    let mut chi2 = 0usize;
    for (ix, coloring) in lc.same.iter().enumerate() {
        let ell = ix + 1;
        validate_layer_coloring(p, coloring, &u.a_layers[ell], &u.b_layers[ell - 1])?;
        for &(pr, c) in coloring {
            chi1 = chi1.max(c);
            assigned.insert(pr, c);
        }
    }
    let mut next_colors: std::collections::HashMap<IncPair, usize> = std::collections::HashMap::new();
    for (i, coloring) in lc.next.iter().enumerate() {
        validate_layer_coloring(p, coloring, &u.a_layers[i], &u.b_layers[i])?;
        for &(pr, c) in coloring {
            chi2 = chi2.max(c);
            next_colors.insert(pr, c);
        }
    }

    let a = u.a_union();
    let b = u.b_union();
    let (c_back, c_far);
    if chi1 > 0 {
        c_back = 1;
        c_far = chi1 + 1;
    } else if chi2 > 0 {
        c_far = 1;
        c_back = chi2 + 1;
    } else {
        // Only back/far pairs exist; the two special colors suffice unless
        // chi(A, B) >= 3, which the lemma's counting rules out.
        if dim::chi(p, &a, &b) >= 3 {
            return Err(UnfoldError::DegenerateLayerColorings);
        }
        c_far = 1;
        c_back = 2;
    }

    let mut out = Vec::new();
    for pr in dim::inc_pairs_between(p, &a, &b) {
        let i = u.a_layer_of(pr.x).ok_or_else(|| {
            UnfoldError::ImproperInputColoring(format!("point {} not in any A layer", pr.x))
        })?;
        let j = u.b_layer_of(pr.y).ok_or_else(|| {
            UnfoldError::ImproperInputColoring(format!("point {} not in any B layer", pr.y))
        })?;
        let color = if j == i {
            *assigned.get(&pr).ok_or_else(|| {
                UnfoldError::ImproperInputColoring(format!("same-layer pair {pr:?} uncolored"))
            })?
        } else if j == i + 1 {
            chi1 + *next_colors.get(&pr).ok_or_else(|| {
                UnfoldError::ImproperInputColoring(format!("next-layer pair {pr:?} uncolored"))
            })?
        } else if j < i {
            c_back
        } else {
            c_far
        };
        out.push((pr, color));
    }
    debug_assert!(coloring_is_proper(p, &out));
    Ok(out)
}

/// No color class may contain an alternating cycle.
pub fn coloring_is_proper(p: &Poset, coloring: &[(IncPair, usize)]) -> bool {
    let max_color = coloring.iter().map(|&(_, c)| c).max().unwrap_or(0);
    for color in 1..=max_color {
        let class: Vec<IncPair> = coloring
            .iter()
            .filter(|&&(_, c)| c == color)
            .map(|&(pr, _)| pr)
            .collect();
        match dim::is_reversible(p, &class) {
            Ok(dim::Reversibility::Reversible(_)) => {}
            _ => return false,
        }
    }
    true
}

fn validate_layer_coloring(
    p: &Poset,
    coloring: &[(IncPair, usize)],
    a: &PointSet,
    b: &PointSet,
) -> Result<(), UnfoldError> {
    let expected = dim::inc_pairs_between(p, a, b);
    if coloring.len() != expected.len() {
        return Err(UnfoldError::ImproperInputColoring(format!(
            "layer coloring covers {} of {} pairs",
            coloring.len(),
            expected.len()
        )));
    }
    let mut seen: std::collections::HashSet<IncPair> = std::collections::HashSet::new();
    for &(pr, c) in coloring {
        if c == 0 || !expected.contains(&pr) || !seen.insert(pr) {
            return Err(UnfoldError::ImproperInputColoring(format!(
                "pair {pr:?} invalid or repeated"
            )));
        }
    }
    if !coloring_is_proper(p, coloring) {
        return Err(UnfoldError::ImproperInputColoring(
            "a color class contains an alternating cycle".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SupportCase {
    /// A' avoids D(S) while B' lies in Up(S); S joins the C-side collection.
    APrimeAvoidsS,
    /// A' lies in D(S) while B' avoids Up(S); S joins the D-side collection.
    APrimeBelowS,
}

/// The outcome of the support-set construction: a connected set S threaded
/// between the surviving extreme sets A' and B'.
#[derive(Clone, Debug)]
pub struct SupportSelection {
    pub a_prime: PointSet,
    pub b_prime: PointSet,
    pub s: PointSet,
    pub case_tag: SupportCase,
    pub root: usize,
    pub ell: usize,
    pub chi_input: usize,
    pub chi_prime: usize,
}

/// Selects A' ⊆ a, B' ⊆ b and a connected support set S with
/// chi(A', B') >= chi(a, b) / 2, where S either supports B' from below while
/// avoiding A', or supports A' from above while avoiding B'.
///
/// The construction restricts to the cover-graph component preserving chi,
/// unfolds it from the lowest-index root, applies the heavy-layer bound, and
/// takes S as a union of breadth-first cover paths back to the root.
pub fn select_support(p: &Poset, a: &PointSet, b: &PointSet) -> Result<SupportSelection, UnfoldError> {
    let chi_input = dim::chi(p, a, b);
    if chi_input < 3 {
        return Err(UnfoldError::ChiTooSmall { chi: chi_input });
    }

    // Points of a below nothing of b (and dually) sit in no alternating
    // cycle, so dropping them preserves chi >= 2.
    let a0set = a.intersection(&p.downset_of(b));
    let b0set = b.intersection(&p.upset_of(a));

    // Restrict to the component of Up(A) ∩ D(B) attaining chi.
    let region = p.upset_of(&a0set).intersection(&p.downset_of(&b0set));
    let cover = p.cover_digraph();
    let mut comps: Vec<Bits> = Vec::new();
    let mut seen = Bits::new(p.n());
    for s in region.iter() {
        if seen.contains(s) {
            continue;
        }
        let mut comp = Bits::new(p.n());
        let mut stack = vec![s];
        seen.insert(s);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &w in cover.neighbors(v) {
                if region.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        comps.push(comp);
    }
    let mut best: Option<(usize, Bits, Bits)> = None;
    for comp in comps {
        let ac = a0set.intersection(&comp);
        let bc = b0set.intersection(&comp);
        let chi_c = dim::chi(p, &ac, &bc);
        if best.as_ref().is_none_or(|(c, _, _)| chi_c > *c) {
            best = Some((chi_c, ac, bc));
        }
    }
    let (chi_comp, a_comp, b_comp) =
        best.ok_or_else(|| UnfoldError::GuaranteeFailed("empty support region".into()))?;
    if chi_comp != chi_input {
        // Folklore single-component witness; never silently accept a gap.
        return Err(UnfoldError::GuaranteeFailed(format!(
            "no single component witnesses chi: best {chi_comp} vs {chi_input}"
        )));
    }

    let root = a_comp.first().expect("component side nonempty");
    let u = unfold(p, &a_comp, &b_comp, root)?;
    let hl = heavy_layer(p, &u)?;
    let ell = hl.ell;

    let up_prefix = |upto: usize| {
        let mut r = Bits::new(p.n());
        for layer in &u.a_layers[..=upto] {
            r.union_with(&p.upset_of(layer));
        }
        r
    };
    let dn_prefix = |from_b1_upto: usize| {
        let mut r = Bits::new(p.n());
        for layer in &u.b_layers[..from_b1_upto] {
            r.union_with(&p.downset_of(layer));
        }
        r
    };

    let (a_prime, b_prime, s, case_tag) = match hl.case {
        LayerCase::SameLayer => {
            let a_prime = u.a_layers[ell].clone();
            let b_prime = u.b_layers[ell - 1].clone();
            let mut s = Bits::new(p.n());
            if ell == 1 {
                s.insert(root);
            } else {
                let allowed = up_prefix(ell - 1).intersection(&dn_prefix(ell - 1));
                for src in u.a_layers[ell - 1].iter() {
                    let path = cover.bfs_path_within(src, root, &allowed).ok_or_else(|| {
                        UnfoldError::GuaranteeFailed(format!(
                            "no support path from {src} to root {root}"
                        ))
                    })?;
                    for v in path {
                        s.insert(v);
                    }
                }
            }
            (a_prime, b_prime, s, SupportCase::APrimeAvoidsS)
        }
        LayerCase::NextLayer => {
            let a_prime = u.a_layers[ell].clone();
            let b_prime = u.b_layers[ell].clone();
            let allowed = up_prefix(ell - 1).intersection(&dn_prefix(ell));
            let mut s = Bits::new(p.n());
            for src in u.b_layers[ell - 1].iter() {
                let path = cover.bfs_path_within(src, root, &allowed).ok_or_else(|| {
                    UnfoldError::GuaranteeFailed(format!(
                        "no support path from {src} to root {root}"
                    ))
                })?;
                for v in path {
                    s.insert(v);
                }
            }
            (a_prime, b_prime, s, SupportCase::APrimeBelowS)
        }
    };

    let sel = SupportSelection {
        a_prime,
        b_prime,
        s,
        case_tag,
        root,
        ell,
        chi_input,
        chi_prime: hl.chi_value,
    };
    verify_selection(p, a, b, &sel)?;
    Ok(sel)
}

fn verify_selection(
    p: &Poset,
    a: &PointSet,
    b: &PointSet,
    sel: &SupportSelection,
) -> Result<(), UnfoldError> {
    let fail = |msg: &str| Err(UnfoldError::GuaranteeFailed(msg.into()));
    let cover = p.cover_digraph();
    if !connected_within(&cover, &sel.s) {
        return fail("support set is not connected");
    }
    if !sel.s.is_subset(&p.upset_of(a).intersection(&p.downset_of(b))) {
        return fail("support set leaves Up(A) ∩ D(B)");
    }
    if 2 * sel.chi_prime < sel.chi_input {
        return fail("chi(A', B') below half of chi(A, B)");
    }
    let d_s = p.downset_of(&sel.s);
    let up_s = p.upset_of(&sel.s);
    let ok = match sel.case_tag {
        SupportCase::APrimeAvoidsS => sel.a_prime.is_disjoint(&d_s) && sel.b_prime.is_subset(&up_s),
        SupportCase::APrimeBelowS => sel.a_prime.is_subset(&d_s) && sel.b_prime.is_disjoint(&up_s),
    };
    if !ok {
        return fail("support case clause violated");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    fn sets(p: &Poset, xs: &[usize]) -> PointSet {
        Bits::from_indices(p.n(), xs.iter().copied())
    }

    #[test]
    fn unfold_s3() {
        // S_3 from a_1: A_0 = {a_1}, B_1 = {b_2, b_3}, A_1 = {a_2, a_3},
        // B_2 = {b_1}, with m = 2.
        let p = gens::standard_example(3);
        let u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        assert_eq!(u.m(), 2);
        assert_eq!(u.a_layers[0].iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(u.b_layers[0].iter().collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(u.a_layers[1].iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(u.b_layers[1].iter().collect::<Vec<_>>(), vec![3]);
        assert!(verify_star(&p, &u));
    }

    #[test]
    fn unfold_two_chain() {
        let p = gens::chain(2);
        let u = unfold(&p, &sets(&p, &[0]), &sets(&p, &[1]), 0).unwrap();
        assert_eq!(u.m(), 1);
        assert_eq!(u.b_layers[0].iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn unfold_kelly_partitions() {
        let p = gens::kelly(4);
        let u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        assert_eq!(u.a_union(), p.minimals());
        assert_eq!(u.b_union(), p.maximals());
        assert!(verify_star(&p, &u));
    }

    #[test]
    fn unfold_rejects_bad_inputs() {
        let p = gens::standard_example(2); // two disjoint cover edges
        assert_eq!(
            unfold(&p, &p.minimals(), &p.maximals(), 0).map(|_| ()),
            Err(UnfoldError::Disconnected)
        );
        let p = gens::standard_example(3);
        assert_eq!(
            unfold(&p, &p.minimals(), &p.maximals(), 3).map(|_| ()),
            Err(UnfoldError::RootNotMinimal)
        );
    }

    #[test]
    fn star_detects_corruption() {
        let p = gens::standard_example(3);
        let mut u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        // Move b_2 from B_1 into B_2: now a_1 <= b_2 lands two layers ahead.
        u.b_layers[0].remove(4);
        u.b_layers[1].insert(4);
        assert!(!verify_star(&p, &u));
    }

    #[test]
    fn heavy_layer_s3() {
        let p = gens::standard_example(3);
        let u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        let hl = heavy_layer(&p, &u).unwrap();
        assert_eq!(hl.ell, 1);
        assert_eq!(hl.case, LayerCase::SameLayer);
        assert_eq!(hl.chi_value, 2);
    }

    #[test]
    fn heavy_layer_rejects_small_chi() {
        let p = gens::chain(3);
        let u = unfold(&p, &sets(&p, &[0]), &sets(&p, &[2]), 0).unwrap();
        assert!(matches!(
            heavy_layer(&p, &u),
            Err(UnfoldError::ChiTooSmall { chi: 0 })
        ));
    }

    #[test]
    fn combine_s3() {
        let p = gens::standard_example(3);
        let u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        let lc = optimal_layer_colorings(&p, &u);
        let phi = combine_colorings(&p, &u, &lc).unwrap();
        assert!(coloring_is_proper(&p, &phi));
        let colors: std::collections::HashSet<usize> = phi.iter().map(|&(_, c)| c).collect();
        // chi1 + chi2 colors suffice; here chi(A_1,B_1)=2 and no next-layer
        // conflicts beyond one color.
        assert!(colors.len() <= 4);
        assert_eq!(phi.len(), dim::inc_pairs_between(&p, &p.minimals(), &p.maximals()).len());
    }

    /// S_3 plus an extra maximal above a_1 only: the next-layer family is
    /// empty of conflicts while a far pair (a_1, b_1) needs the fresh color
    /// chi1 + 1.
    #[test]
    fn combine_uses_fresh_far_color() {
        let mut pairs = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    pairs.push((i, 3 + j));
                }
            }
        }
        pairs.push((0, 6));
        let p = Poset::from_cover(7, &pairs).unwrap();
        let u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        let lc = optimal_layer_colorings(&p, &u);
        let phi = combine_colorings(&p, &u, &lc).unwrap();
        assert!(coloring_is_proper(&p, &phi));
        let chi1 = lc.same.iter().flatten().map(|&(_, c)| c).max().unwrap_or(0);
        assert_eq!(chi1, 2);
        let far = phi.iter().find(|&&(pr, _)| pr == IncPair::new(0, 3)).unwrap();
        assert_eq!(far.1, chi1 + 1, "far pair takes the fresh color");
        let used: std::collections::HashSet<usize> = phi.iter().map(|&(_, c)| c).collect();
        assert_eq!(used.len(), chi1 + 1);
    }

    /// Hand-built layer assignment placing every pair two layers ahead: the
    /// special colors alone would 2-color Inc(A, B), which chi >= 3 forbids.
    #[test]
    fn combine_rejects_degenerate_layers() {
        let p = gens::standard_example(3);
        let u = Unfolding {
            root: 0,
            a_layers: vec![sets(&p, &[0, 1, 2]), sets(&p, &[])],
            b_layers: vec![sets(&p, &[]), sets(&p, &[3, 4, 5])],
        };
        let lc = LayerColorings { same: vec![Vec::new()], next: vec![Vec::new(), Vec::new()] };
        assert_eq!(
            combine_colorings(&p, &u, &lc).map(|_| ()),
            Err(UnfoldError::DegenerateLayerColorings)
        );
    }

    #[test]
    fn combine_rejects_improper_input() {
        let p = gens::standard_example(3);
        let u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        let mut lc = optimal_layer_colorings(&p, &u);
        // Force the same-layer 2-cycle monochromatic.
        for entry in lc.same[0].iter_mut() {
            entry.1 = 1;
        }
        assert!(matches!(
            combine_colorings(&p, &u, &lc),
            Err(UnfoldError::ImproperInputColoring(_))
        ));
    }

    #[test]
    fn select_support_s3() {
        let p = gens::standard_example(3);
        let sel = select_support(&p, &p.minimals(), &p.maximals()).unwrap();
        assert_eq!(sel.case_tag, SupportCase::APrimeAvoidsS);
        assert_eq!(sel.ell, 1);
        assert_eq!(sel.s.iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(sel.a_prime.iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(sel.b_prime.iter().collect::<Vec<_>>(), vec![4, 5]);
    }

    #[test]
    fn select_support_kelly() {
        let p = gens::kelly(5);
        let sel = select_support(&p, &p.minimals(), &p.maximals()).unwrap();
        assert!(2 * sel.chi_prime >= sel.chi_input);
    }

    /// A hub maximal over every minimal with the conflict structure one
    /// layer further out: the only heavy pair is (A_1, B_2), forcing the
    /// next-layer case and a support set on the D side.
    fn tower(d: usize) -> Poset {
        // a_0..a_d at 0..=d, b_0 at d+1, b_1..b_d at d+2..
        let hub = d + 1;
        let mut pairs = Vec::new();
        for i in 0..=d {
            pairs.push((i, hub));
        }
        for i in 1..=d {
            for j in 1..=d {
                if i != j {
                    pairs.push((i, hub + j));
                }
            }
        }
        Poset::from_cover(2 * d + 2, &pairs).unwrap()
    }

    #[test]
    fn select_support_next_layer_case() {
        let p = tower(5);
        let sel = select_support(&p, &p.minimals(), &p.maximals()).unwrap();
        assert_eq!(sel.case_tag, SupportCase::APrimeBelowS);
        assert_eq!(sel.ell, 1);
        // S is the walk from the hub back to the root.
        assert_eq!(sel.s.iter().collect::<Vec<_>>(), vec![0, 6]);
        assert_eq!(sel.a_prime.iter().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
        assert_eq!(sel.b_prime.iter().collect::<Vec<_>>(), (7..12).collect::<Vec<_>>());
        assert_eq!(sel.chi_prime, 5);
    }

    #[test]
    fn heavy_layer_selects_the_only_conflicting_band() {
        let p = tower(4);
        let u = unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        assert_eq!(u.m(), 2);
        let hl = heavy_layer(&p, &u).unwrap();
        assert_eq!(hl.case, LayerCase::NextLayer);
        assert_eq!(hl.ell, 1);
        assert_eq!(hl.chi_value, 4);
    }

    #[test]
    fn select_support_rejects_small_chi() {
        let p = gens::standard_example(2);
        assert!(matches!(
            select_support(&p, &p.minimals(), &p.maximals()),
            Err(UnfoldError::ChiTooSmall { chi: 2 })
        ));
    }
}
