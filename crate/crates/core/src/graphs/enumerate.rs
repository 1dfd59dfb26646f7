//! Isomorphism classes of small graphs by vertex extension and brute-force
//! canonical forms.

use std::collections::HashMap;

use super::Graph;
use crate::vertex_set::VertexSet;

/// Largest vertex count accepted by [`canonical_form`].
pub const MAX_CANONICAL_VERTICES: usize = 11;

/// A canonical edge bitmask: equal for two graphs iff they are isomorphic.
///
/// Vertices are first split into cells by the invariant (degree, sorted
/// neighbor degrees); the minimum bitmask is taken over all relabelings that
/// list the cells in invariant order.
pub fn canonical_form(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= MAX_CANONICAL_VERTICES, "canonical_form supports at most {MAX_CANONICAL_VERTICES} vertices");

    let invariant = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|u| g.degree(u)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut order: Vec<(_, usize)> = (1..=n).map(|v| (invariant(v), v)).collect();
    order.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (k, (inv, v)) in order.iter().enumerate() {
        if k > 0 && order[k - 1].0 == *inv {
            cells.last_mut().expect("non-empty").push(*v);
        } else {
            cells.push(vec![*v]);
        }
    }

    let pair_bit = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        // position of (a, b), 0-based labels, in lexicographic order of pairs
        a * (2 * n - a - 1) / 2 + (b - a - 1)
    };

    let mut best = u64::MAX;
    let mut label = vec![0usize; n + 1];
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut cell_perms: Vec<Vec<usize>> = cells.clone();
    loop {
        for (new, &v) in cell_perms.iter().flatten().enumerate() {
            label[v] = new;
        }
        let mask = edges.iter().fold(0u64, |m, &(u, v)| m | 1 << pair_bit(label[u], label[v]));
        best = best.min(mask);
        if !advance(&mut cell_perms, &cells) {
            break;
        }
    }
    best
}

// Odometer over the product of per-cell permutations.
fn advance(perms: &mut [Vec<usize>], cells: &[Vec<usize>]) -> bool {
    for (p, cell) in perms.iter_mut().zip(cells) {
        if next_permutation(p) {
            return true;
        }
        p.clone_from(cell);
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("exists by choice of i");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// One representative per isomorphism class of graphs on exactly `n` vertices,
/// ordered by edge count and then canonical form.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=MAX_CANONICAL_VERTICES).contains(&n));
    if n == 1 {
        return vec![Graph::edgeless(1).expect("one vertex")];
    }
    // Deleting vertex n from any graph on n vertices leaves a graph on n - 1
    // vertices, so extending every class of the smaller order reaches all classes.
    let mut classes: HashMap<u64, Graph> = HashMap::new();
    for base in nonisomorphic_graphs(n - 1) {
        for nbrs in VertexSet::full(n - 1).subsets() {
            let g = Graph::new(n, base.edges().chain(nbrs.iter().map(|u| (u, n)))).expect("valid extension");
            classes.entry(canonical_form(&g)).or_insert(g);
        }
    }
    let mut out: Vec<(usize, u64, Graph)> = classes.into_iter().map(|(c, g)| (g.edge_count(), c, g)).collect();
    out.sort_unstable_by_key(|(e, c, _)| (*e, *c));
    out.into_iter().map(|(_, _, g)| g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, star};

    #[test]
    fn class_counts_match_known_values() {
        let counts: Vec<usize> = (1..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let g = star(5).unwrap();
        let h = g.relabel(&[3, 1, 2, 5, 4]).unwrap();
        assert_ne!(g, h);
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert_ne!(canonical_form(&g), canonical_form(&complete(5).unwrap()));
    }
}
