//! DOT renderings of cover graphs, optionally layered by an unfolding or
//! styled by a subdivision certificate.

use crate::minor::SubdivisionCertificate;
use crate::poset::Poset;
use crate::unfold::Unfolding;

/// Cover digraph as a DOT `digraph`, drawn bottom-up.
pub fn poset_dot(p: &Poset) -> String {
    let mut s = String::from("digraph cover {\n  rankdir=BT;\n  node [shape=circle];\n");
    for v in 0..p.n() {
        s.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
    }
    for (u, v) in p.cover_digraph().arcs() {
        s.push_str(&format!("  v{u} -> v{v};\n"));
    }
    s.push_str("}\n");
    s
}

/// Cover digraph with unfolding layers pinned to shared ranks.
pub fn poset_dot_layered(p: &Poset, u: &Unfolding) -> String {
    let mut s = String::from("digraph cover {\n  rankdir=BT;\n  node [shape=circle];\n");
    for v in 0..p.n() {
        s.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
    }
    for (i, layer) in u.a_layers.iter().enumerate() {
        s.push_str(&format!("  {{ rank=same; /* A_{i} */"));
        for v in layer.iter() {
            s.push_str(&format!(" v{v};"));
        }
        s.push_str(" }\n");
    }
    for (i, layer) in u.b_layers.iter().enumerate() {
        s.push_str(&format!("  {{ rank=same; /* B_{} */", i + 1));
        for v in layer.iter() {
            s.push_str(&format!(" v{v};"));
        }
        s.push_str(" }\n");
    }
    for (a, b) in p.cover_digraph().arcs() {
        s.push_str(&format!("  v{a} -> v{b};\n"));
    }
    s.push_str("}\n");
    s
}

/// Cover digraph with a certificate's principal vertices double-circled and
/// its path edges bold, one color per path.
pub fn poset_dot_highlighted(p: &Poset, cert: &SubdivisionCertificate) -> String {
    const PALETTE: [&str; 6] = ["red", "blue", "forestgreen", "darkorange", "purple", "teal"];
    let mut s = String::from("digraph cover {\n  rankdir=BT;\n  node [shape=circle];\n");
    let mut interior = vec![None; p.n()];
    for (ix, path) in cert.paths.iter().enumerate() {
        for &v in &path.vertices[1..path.vertices.len() - 1] {
            interior[v] = Some(ix);
        }
    }
    for (v, slot) in interior.iter().enumerate() {
        if cert.principals.contains(&v) {
            s.push_str(&format!("  v{v} [label=\"{v}\", shape=doublecircle, style=bold];\n"));
        } else if let Some(ix) = *slot {
            let color = PALETTE[ix % PALETTE.len()];
            s.push_str(&format!("  v{v} [label=\"{v}\", style=filled, fillcolor=\"{color}\", fontcolor=white];\n"));
        } else {
            s.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
        }
    }
    let mut styled: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    for (ix, path) in cert.paths.iter().enumerate() {
        for w in path.vertices.windows(2) {
            styled.insert((w[0].min(w[1]), w[0].max(w[1])), ix);
        }
    }
    for &(u, v) in p.cover_digraph().arcs() {
        match styled.get(&(u.min(v), u.max(v))) {
            Some(&ix) => {
                let color = PALETTE[ix % PALETTE.len()];
                s.push_str(&format!("  v{u} -> v{v} [color=\"{color}\", penwidth=2.5];\n"));
            }
            None => s.push_str(&format!("  v{u} -> v{v};\n")),
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens;

    #[test]
    fn dot_mentions_all_arcs() {
        let p = gens::chain(3);
        let dot = poset_dot(&p);
        assert!(dot.contains("v0 -> v1"));
        assert!(dot.contains("v1 -> v2"));
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn layered_dot_groups_layers() {
        let p = gens::standard_example(3);
        let u = crate::unfold::unfold(&p, &p.minimals(), &p.maximals(), 0).unwrap();
        let dot = poset_dot_layered(&p, &u);
        assert!(dot.contains("rank=same"));
        assert!(dot.contains("/* A_0 */ v0;"));
    }
}
