//! Simplicial complexes given by their facets.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simplicial complex on the vertex range `1..=m`, stored by its facets.
///
/// Vertices of the range that lie in no facet are allowed; the algebra built
/// over such a complex annihilates their variables.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<VertexSet>,
    faces: OnceLock<Vec<Vec<VertexSet>>>,
}

impl SimplicialComplex {
    /// Builds a complex from its facets, kept in the given order.
    ///
    /// The complex `{∅}` is given by the single facet `∅`.
    pub fn new(vertex_count: usize, facets: Vec<VertexSet>) -> Result<Self> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: vertex_count, max: MAX_VERTICES });
        }
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let range = VertexSet::full(vertex_count);
        for (k, f) in facets.iter().enumerate() {
            if !f.is_subset(range) {
                return Err(Error::InvalidComplex(format!("facet {f} leaves the vertex range 1..={vertex_count}")));
            }
            if f.is_empty() && facets.len() > 1 {
                return Err(Error::InvalidComplex("the empty face cannot be a facet alongside others".into()));
            }
            if let Some(g) = facets.iter().enumerate().find(|&(j, g)| j != k && f.is_subset(*g)) {
                return Err(Error::InvalidComplex(format!("facet {f} is contained in {}", g.1)));
            }
        }
        Ok(SimplicialComplex { vertex_count, facets, faces: OnceLock::new() })
    }

    /// The complex `{∅}` on `vertex_count` ghost vertices.
    pub fn empty_face(vertex_count: usize) -> Result<Self> {
        Self::new(vertex_count, vec![VertexSet::EMPTY])
    }

    /// `Ind(g)`: facets are the maximal independent sets of `g`.
    pub fn independence_complex(g: &Graph) -> Self {
        SimplicialComplex {
            vertex_count: g.vertex_count(),
            facets: g.maximal_independent_sets(),
            faces: OnceLock::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// `max |F| - 1`; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Faces grouped by cardinality: entry `k` lists faces with `k` vertices in
    /// increasing bitmask order. Computed once per complex.
    pub fn faces_by_size(&self) -> &[Vec<VertexSet>] {
        self.faces.get_or_init(|| {
            let top = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
            let mut seen: HashSet<VertexSet> = HashSet::new();
            for f in &self.facets {
                seen.extend(f.subsets());
            }
            let mut by_size = vec![Vec::new(); top + 1];
            for s in seen {
                by_size[s.len()].push(s);
            }
            for faces in &mut by_size {
                faces.sort_unstable();
            }
            by_size
        })
    }

    /// Number of faces (the empty face included), or `None` once it exceeds `limit`.
    pub fn count_faces_up_to(&self, limit: u64) -> Option<u64> {
        fn go(c: &SimplicialComplex, face: VertexSet, from: usize, seen: &mut u64, limit: u64) -> bool {
            *seen += 1;
            if *seen > limit {
                return false;
            }
            for v in from..=c.vertex_count {
                let next = face.union(VertexSet::singleton(v));
                if c.is_face(next) && !go(c, next, v + 1, seen, limit) {
                    return false;
                }
            }
            true
        }
        let mut seen = 0;
        go(self, VertexSet::EMPTY, 1, &mut seen, limit).then_some(seen)
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// `(f_{-1}, f_0, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<u64> {
        self.faces_by_size().iter().map(|faces| faces.len() as u64).collect()
    }

    /// `Σ (-1)^i f_i` over `i = -1..=dim`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) }).sum()
    }

    /// Minimal nonfaces: sets outside the complex all of whose proper subsets are faces.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let support = self.facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        let ghosts = VertexSet::full(self.vertex_count).difference(support);
        let mut out: Vec<VertexSet> = ghosts.iter().map(VertexSet::singleton).collect();
        for faces in self.faces_by_size() {
            for &f in faces {
                for v in support.difference(f).iter() {
                    let cand = f.with(v);
                    if !self.is_face(cand) && cand.iter().all(|u| self.is_face(cand.without(u))) {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Facet-list text: `m s` followed by one line of vertex labels per facet.
    pub fn to_facet_list(&self) -> String {
        let mut s = format!("{} {}\n", self.vertex_count, self.facets.len());
        for f in &self.facets {
            let labels: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            s.push_str(&labels.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Parses the facet-list format: a header `m s`, then `s` lines of vertex labels.
///
/// An empty facet line denotes the empty face; `#` starts a comment.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
    let [m, s] = crate::graphs::parse_fields::<2>(header, header_line)?;
    if m > MAX_VERTICES {
        return Err(Error::Parse { line: header_line, message: format!("at most {MAX_VERTICES} vertices supported") });
    }
    let mut facets = Vec::with_capacity(s);
    let mut last_line = header_line;
    for (line, content) in lines.take(s) {
        last_line = line;
        let mut f = VertexSet::EMPTY;
        for field in content.split_whitespace() {
            let v: usize =
                field.parse().map_err(|_| Error::Parse { line, message: format!("not a vertex label: {field:?}") })?;
            if v == 0 || v > m {
                return Err(Error::Parse { line, message: format!("vertex {v} out of range 1..={m}") });
            }
            if f.contains(v) {
                return Err(Error::Parse { line, message: format!("vertex {v} repeated") });
            }
            f = f.with(v);
        }
        facets.push(f);
    }
    if facets.len() != s {
        return Err(Error::Parse {
            line: last_line + 1,
            message: format!("expected {s} facets, found {}", facets.len()),
        });
    }
    SimplicialComplex::new(m, facets).map_err(|e| Error::Parse { line: header_line, message: e.to_string() })
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertex_count", &self.vertex_count)
            .field("facets", &self.facets)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    vertex_count: usize,
    facets: Vec<VertexSet>,
}

impl TryFrom<ComplexRepr> for SimplicialComplex {
    type Error = Error;

    fn try_from(r: ComplexRepr) -> Result<Self> {
        SimplicialComplex::new(r.vertex_count, r.facets)
    }
}

impl From<SimplicialComplex> for ComplexRepr {
    fn from(c: SimplicialComplex) -> Self {
        ComplexRepr { vertex_count: c.vertex_count, facets: c.facets }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, nonisomorphic_graphs, star};

    fn vs<const K: usize>(v: [usize; K]) -> VertexSet {
        VertexSet::from_vertices(v)
    }

    #[test]
    fn bounded_face_count_matches_f_vector() {
        for n in 1..=5 {
            for g in nonisomorphic_graphs(n) {
                let c = SimplicialComplex::independence_complex(&g.whisker().unwrap());
                let total: u64 = c.f_vector().iter().sum();
                assert_eq!(c.count_faces_up_to(total), Some(total));
                assert_eq!(c.count_faces_up_to(total - 1), None);
            }
        }
    }

    #[test]
    fn rejects_invalid_facets() {
        assert!(SimplicialComplex::new(3, vec![]).is_err());
        assert!(SimplicialComplex::new(3, vec![vs([1, 2]), vs([1])]).is_err());
        assert!(SimplicialComplex::new(2, vec![vs([3])]).is_err());
        assert!(SimplicialComplex::new(2, vec![VertexSet::EMPTY, vs([1])]).is_err());
    }

    #[test]
    fn dimension_and_purity() {
        let e = SimplicialComplex::empty_face(0).unwrap();
        assert_eq!(e.dimension(), -1);
        assert_eq!(e.f_vector(), vec![1]);
        let tri = SimplicialComplex::new(3, vec![vs([1, 2, 3])]).unwrap();
        assert_eq!(tri.dimension(), 2);
        assert!(tri.is_pure());
        let mixed = SimplicialComplex::new(3, vec![vs([1, 2]), vs([3])]).unwrap();
        assert!(!mixed.is_pure());
    }

    #[test]
    fn f_vectors() {
        let edge = SimplicialComplex::new(2, vec![vs([1, 2])]).unwrap();
        assert_eq!(edge.f_vector(), vec![1, 2, 1]);
        let wk2 = SimplicialComplex::independence_complex(&complete(2).unwrap().whisker().unwrap());
        assert_eq!(wk2.facets(), &[vs([3, 4]), vs([1, 4]), vs([2, 3])]);
        assert_eq!(wk2.f_vector(), vec![1, 4, 3]);
        let h4 = SimplicialComplex::independence_complex(&star(4).unwrap());
        assert_eq!(h4.f_vector(), vec![1, 4, 3, 1]);
        assert_eq!(SimplicialComplex::independence_complex(&complete(2).unwrap()).facets(), &[vs([2]), vs([1])]);
    }

    #[test]
    fn independence_complexes_are_flag_and_match_sequences() {
        for n in 1..=6 {
            for g in nonisomorphic_graphs(n) {
                let c = SimplicialComplex::independence_complex(&g);
                assert_eq!(c.f_vector(), g.independence_sequence().counts());
                assert!(c.minimal_nonfaces().iter().all(|s| s.len() == 2), "{g:?}");
                let _ = c.reduced_euler_characteristic();
                if n <= 5 {
                    let w = SimplicialComplex::independence_complex(&g.whisker().unwrap());
                    assert!(w.is_pure());
                    assert_eq!(w.dimension(), n as isize - 1);
                }
            }
        }
    }

    #[test]
    fn minimal_nonfaces_of_a_non_flag_complex() {
        // boundary of a triangle: the only minimal nonface is {1,2,3}
        let c = SimplicialComplex::new(3, vec![vs([1, 2]), vs([1, 3]), vs([2, 3])]).unwrap();
        assert_eq!(c.minimal_nonfaces(), vec![vs([1, 2, 3])]);
        let ghost = SimplicialComplex::new(3, vec![vs([1, 2])]).unwrap();
        assert_eq!(ghost.minimal_nonfaces(), vec![vs([3])]);
    }

    #[test]
    fn facet_list_parsing() {
        let c = parse_complex("4 2\n1 2 3\n3 4\n").unwrap();
        assert_eq!(c.facets(), &[vs([1, 2, 3]), vs([3, 4])]);
        assert_eq!(parse_complex(&c.to_facet_list()).unwrap(), c);
        assert!(matches!(parse_complex("3 1\n1 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_complex("3 2\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("3 2\n1 2\n1\n"), Err(Error::Parse { .. })));
        let e = parse_complex("2 1\n\n").unwrap();
        assert_eq!(e.dimension(), -1);
    }
}
