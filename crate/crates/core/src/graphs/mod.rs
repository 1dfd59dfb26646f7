//! Simple graphs on vertices `1..=n`, independent sets and whiskering.
//!
//! Adjacency is stored as one [`VertexSet`] per vertex, so graphs are limited to
//! [`MAX_VERTICES`] vertices. Whiskering doubles the vertex count: the whisker of
//! vertex `i` is vertex `i + n`.

mod enumerate;
mod generators;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use enumerate::{canonical_form, nonisomorphic_graphs};
pub(crate) use generators::parse_fields;
pub use generators::{broom, complete, parse_graph, star, Family, Generator, Modifier};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// An undirected simple graph on the vertex set `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adjacency: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adjacency: vec![VertexSet::EMPTY; n] })
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::edgeless(n)?;
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adjacency[u - 1] = self.adjacency[u - 1].with(v);
        self.adjacency[v - 1] = self.adjacency[v - 1].with(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (1..=self.n).contains(&u) && self.adjacency[u - 1].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |u| self.adjacency[u - 1].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.is_subset(self.vertices()) && set.iter().all(|v| self.adjacency[v - 1].intersection(set).is_empty())
    }

    /// The whiskered graph on `2n` vertices: all edges of `self` plus `{i, i + n}`.
    pub fn whisker(&self) -> Result<Graph> {
        let n = self.n;
        let mut w = Graph::edgeless(2 * n)?;
        for (u, v) in self.edges() {
            w.insert_edge(u, v)?;
        }
        for i in 1..=n {
            w.insert_edge(i, i + n)?;
        }
        Ok(w)
    }

    /// Removes the listed edges; every pair must currently be an edge.
    pub fn remove_edges(&self, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in pairs {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.has_edge(u, v) {
                return Err(Error::NotAnEdge(u.min(v), u.max(v)));
            }
            g.adjacency[u - 1] = g.adjacency[u - 1].without(v);
            g.adjacency[v - 1] = g.adjacency[v - 1].without(u);
        }
        Ok(g)
    }

    /// The graph with vertex `v` relabeled to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Dimension(format!("relabeling has {} entries for {} vertices", perm.len(), self.n)));
        }
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u - 1], perm[v - 1])))
    }

    /// Independent-set counts by size.
    pub fn independence_sequence(&self) -> IndependenceSequence {
        let mut counts = vec![0u64];
        count_independent(&self.adjacency, self.vertices(), 0, &mut counts);
        IndependenceSequence { counts }
    }

    /// Number of independent sets (the empty set included), or `None` once it exceeds `limit`.
    /// Costs O(limit · n), so it is safe as a guard before enumerating.
    pub fn count_independent_sets_up_to(&self, limit: u64) -> Option<u64> {
        fn go(adj: &[VertexSet], candidates: VertexSet, seen: &mut u64, limit: u64) -> bool {
            *seen += 1;
            if *seen > limit {
                return false;
            }
            let mut rest = candidates;
            while let Some(v) = rest.first() {
                rest = rest.without(v);
                if !go(adj, rest.difference(adj[v - 1]), seen, limit) {
                    return false;
                }
            }
            true
        }
        let mut seen = 0;
        go(&self.adjacency, self.vertices(), &mut seen, limit).then_some(seen)
    }

    pub fn independence_number(&self) -> usize {
        // Every maximum independent set is maximal, so the largest maximal set suffices.
        let mut best = 0;
        bron_kerbosch_independent(
            &self.adjacency,
            self.n,
            VertexSet::EMPTY,
            self.vertices(),
            VertexSet::EMPTY,
            &mut |s| best = best.max(s.len()),
        );
        best
    }

    /// All maximal independent sets, sorted by decreasing bitmask.
    pub fn maximal_independent_sets(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        bron_kerbosch_independent(
            &self.adjacency,
            self.n,
            VertexSet::EMPTY,
            self.vertices(),
            VertexSet::EMPTY,
            &mut |s| out.push(s),
        );
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_well_covered(&self) -> bool {
        let mut size = None;
        let mut uniform = true;
        bron_kerbosch_independent(
            &self.adjacency,
            self.n,
            VertexSet::EMPTY,
            self.vertices(),
            VertexSet::EMPTY,
            &mut |s| match size {
                None => size = Some(s.len()),
                Some(k) => uniform &= k == s.len(),
            },
        );
        uniform
    }

    /// Two-colorability.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![None::<bool>; self.n];
        for start in 1..=self.n {
            if color[start - 1].is_some() {
                continue;
            }
            color[start - 1] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let cu = color[u - 1].expect("colored before push");
                for v in self.adjacency[u - 1].iter() {
                    match color[v - 1] {
                        None => {
                            color[v - 1] = Some(!cu);
                            stack.push(v);
                        }
                        Some(cv) if cv == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Edge-list text: `n m` followed by one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr { n: self.n, edges: self.edges().collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        Graph::new(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Independent-set counts `(i_0, i_1, ..., i_alpha)` of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndependenceSequence {
    counts: Vec<u64>,
}

impl IndependenceSequence {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.first() != Some(&1) {
            return Err(Error::InvalidSequence("i_0 must equal 1".into()));
        }
        if counts.len() > 1 && counts.last() == Some(&0) {
            return Err(Error::InvalidSequence("trailing zero count".into()));
        }
        Ok(IndependenceSequence { counts })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `i_k`, zero outside `0..=alpha`.
    pub fn get(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn alpha(&self) -> usize {
        self.counts.len() - 1
    }

    /// Total number of independent sets, the empty set included.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

// Visits every independent set inside `candidates` exactly once, extending by
// vertices larger than those already chosen.
fn count_independent(adj: &[VertexSet], candidates: VertexSet, size: usize, counts: &mut Vec<u64>) {
    if counts.len() <= size {
        counts.resize(size + 1, 0);
    }
    counts[size] += 1;
    let mut rest = candidates;
    while let Some(v) = rest.first() {
        rest = rest.without(v);
        count_independent(adj, rest.difference(adj[v - 1]), size + 1, counts);
    }
}

// Bron-Kerbosch with pivoting on the complement graph: reports each maximal
// independent set once.
fn bron_kerbosch_independent(
    adj: &[VertexSet],
    n: usize,
    chosen: VertexSet,
    mut candidates: VertexSet,
    mut excluded: VertexSet,
    report: &mut dyn FnMut(VertexSet),
) {
    if candidates.is_empty() && excluded.is_empty() {
        report(chosen);
        return;
    }
    let all = VertexSet::full(n);
    let non_neighbors = |v: usize| all.difference(adj[v - 1]).without(v);
    let pivot = candidates
        .union(excluded)
        .iter()
        .max_by_key(|&u| non_neighbors(u).intersection(candidates).len())
        .expect("candidates or excluded is non-empty");
    for v in candidates.difference(non_neighbors(pivot)).iter() {
        let nv = non_neighbors(v);
        bron_kerbosch_independent(
            adj,
            n,
            chosen.with(v),
            candidates.intersection(nv),
            excluded.intersection(nv),
            report,
        );
        candidates = candidates.without(v);
        excluded = excluded.with(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute force over all 2^n subsets.
    fn brute_independent_sets(g: &Graph) -> Vec<VertexSet> {
        (0..1u64 << g.vertex_count()).map(VertexSet).filter(|&s| g.is_independent(s)).collect()
    }

    fn brute_maximal(g: &Graph) -> Vec<VertexSet> {
        let all = brute_independent_sets(g);
        let mut out: Vec<_> = all
            .iter()
            .copied()
            .filter(|&s| g.vertices().difference(s).iter().all(|v| !g.is_independent(s.with(v))))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    fn brute_sequence(g: &Graph) -> Vec<u64> {
        let mut counts = vec![0u64; g.vertex_count() + 1];
        for s in brute_independent_sets(g) {
            counts[s.len()] += 1;
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    fn path3() -> Graph {
        Graph::new(3, [(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn bounded_independent_count_matches_sequence() {
        for n in 1..=6 {
            for g in super::enumerate::nonisomorphic_graphs(n) {
                let total = g.independence_sequence().total();
                assert_eq!(g.count_independent_sets_up_to(total), Some(total));
                assert_eq!(g.count_independent_sets_up_to(total - 1), None);
            }
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(0, []), Err(Error::EmptyGraph));
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::Loop(1)));
        assert_eq!(Graph::new(3, [(1, 2), (2, 1)]), Err(Error::DuplicateEdge(1, 2)));
        assert_eq!(Graph::new(3, [(1, 4)]), Err(Error::VertexOutOfRange { vertex: 4, n: 3 }));
        assert_eq!(Graph::new(65, []).unwrap_err(), Error::TooManyVertices { count: 65, max: 64 });
    }

    #[test]
    fn whisker_small_cases() {
        let k1 = complete(1).unwrap().whisker().unwrap();
        assert_eq!(k1.vertex_count(), 2);
        assert_eq!(k1.edges().collect::<Vec<_>>(), vec![(1, 2)]);

        let k2 = complete(2).unwrap().whisker().unwrap();
        assert_eq!(k2.vertex_count(), 4);
        assert_eq!(k2.edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 4)]);

        let h4 = star(4).unwrap().whisker().unwrap();
        assert_eq!(h4.vertex_count(), 8);
        assert_eq!(h4.edge_count(), 7);
    }

    #[test]
    fn independence_sequences() {
        assert_eq!(complete(3).unwrap().independence_sequence().counts(), &[1, 3]);
        let wk2 = complete(2).unwrap().whisker().unwrap();
        assert_eq!(wk2.independence_sequence().counts(), &[1, 4, 3]);
        assert_eq!(brute_sequence(&wk2), vec![1, 4, 3]);
        assert_eq!(star(4).unwrap().independence_sequence().counts(), &[1, 4, 3, 1]);
    }

    #[test]
    fn independence_numbers_of_families() {
        for n in 1..=7 {
            assert_eq!(complete(n).unwrap().independence_number(), 1);
        }
        for n in 2..=9 {
            assert_eq!(star(n).unwrap().independence_number(), n - 1);
        }
        for m in 1..=6 {
            assert_eq!(broom(m).unwrap().independence_number(), m + 1);
        }
    }

    #[test]
    fn well_covered_examples() {
        assert!(!path3().is_well_covered());
        assert!(complete(5).unwrap().is_well_covered());
        assert!(path3().whisker().unwrap().is_well_covered());
    }

    #[test]
    fn maximal_sets_examples() {
        assert_eq!(
            complete(2).unwrap().maximal_independent_sets(),
            vec![VertexSet::from_vertices([2]), VertexSet::from_vertices([1])]
        );
        let wk2 = complete(2).unwrap().whisker().unwrap();
        assert_eq!(
            wk2.maximal_independent_sets(),
            vec![VertexSet::from_vertices([3, 4]), VertexSet::from_vertices([1, 4]), VertexSet::from_vertices([2, 3]),]
        );
        for n in 2..=7 {
            let w = star(n).unwrap().whisker().unwrap();
            assert_eq!(w.maximal_independent_sets().len(), (1 << (n - 1)) + 1);
        }
    }

    #[test]
    fn bipartite_and_removal() {
        assert!(!complete(3).unwrap().is_bipartite());
        assert!(star(5).unwrap().is_bipartite());
        assert!(path3().is_bipartite());
        let g = complete(4).unwrap().remove_edges(&[(1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.remove_edges(&[(2, 1)]), Err(Error::NotAnEdge(1, 2)));
    }

    // Exhaustive on every labeled graph with at most 5 vertices, plus all
    // 6-vertex graphs up to isomorphism.
    fn small_graphs() -> Vec<Graph> {
        let mut out = Vec::new();
        for n in 1..=5 {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
                out.push(Graph::new(n, edges).unwrap());
            }
        }
        out.extend(nonisomorphic_graphs(6));
        out
    }

    #[test]
    fn sequence_matches_brute_force_and_alpha() {
        for g in small_graphs() {
            let seq = g.independence_sequence();
            assert_eq!(seq.counts(), brute_sequence(&g).as_slice(), "{g:?}");
            assert_eq!(seq.alpha(), g.independence_number());
            assert_eq!(seq.get(0), 1);
            assert_eq!(seq.get(1), g.vertex_count() as u64);
        }
    }

    #[test]
    fn maximal_sets_match_brute_force() {
        for g in small_graphs() {
            assert_eq!(g.maximal_independent_sets(), brute_maximal(&g), "{g:?}");
            let sizes: std::collections::BTreeSet<_> = brute_maximal(&g).iter().map(|s| s.len()).collect();
            assert_eq!(g.is_well_covered(), sizes.len() == 1);
        }
    }

    #[test]
    fn whiskering_invariants() {
        for g in small_graphs().into_iter().filter(|g| g.vertex_count() <= 5) {
            let w = g.whisker().unwrap();
            assert_eq!(w.independence_number(), g.vertex_count());
            assert!(w.is_well_covered());
            // each independent set of g extends to exactly one maximal set of w(g)
            assert_eq!(w.maximal_independent_sets().len() as u64, g.independence_sequence().total());
        }
    }

    #[test]
    fn serde_round_trip() {
        let g = broom(3).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }
}
