use std::collections::HashMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{ExponentVector, GradedMonomialAlgebra};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linalg::rank_exact;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTerm {
    pub coefficient: i64,
    pub monomial: ExponentVector,
}

/// A nonzero element of `A(w(g))_i` killed by differentiation along `L`,
/// certifying that `×L: A_{i-1} -> A_i` is not surjective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSurjectivityWitness {
    pub independent_set: VertexSet,
    pub degree: usize,
    /// Terms in the order of the degree-`i` basis.
    pub terms: Vec<WitnessTerm>,
}

impl NonSurjectivityWitness {
    /// Signed sum rendering, e.g. `y1 - y2`.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let mono = t.monomial.display_with(names);
            let (sign, abs) = (t.coefficient < 0, t.coefficient.unsigned_abs());
            match (k, sign) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if abs != 1 {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&mono);
        }
        out
    }

    /// Confirms non-surjectivity with the rank engine:
    /// `rank(×L: A_{i-1} -> A_i) < dim A_i`.
    pub fn confirm_rank(&self, alg: &GradedMonomialAlgebra) -> bool {
        if self.degree == 0 {
            return alg.dim(0) > 0;
        }
        let m = alg.mult_map_matrix(self.degree - 1, 1);
        rank_exact(&m).rank < alg.dim(self.degree)
    }
}

/// The witness for an independent set `c` of `g`, in a freshly built `A(w(g))`.
pub fn non_surjectivity_witness(g: &Graph, c: VertexSet) -> Result<NonSurjectivityWitness> {
    let alg = GradedMonomialAlgebra::whiskered(g, &vec![2; g.vertex_count()])?;
    non_surjectivity_witness_in(&alg, g, c)
}

/// As [`non_surjectivity_witness`], reusing an already built `A(w(g))`.
///
/// With `k = n - |c|`, the vertices outside `c` are paired off in increasing
/// order and `f = Π (y_a - y_b) · Π_{j∈c} (x_j - y_j)`; this is the usual
/// construction after renumbering `c` to the last labels, mapped back.
pub fn non_surjectivity_witness_in(
    alg: &GradedMonomialAlgebra,
    g: &Graph,
    c: VertexSet,
) -> Result<NonSurjectivityWitness> {
    let n = g.vertex_count();
    if alg.variable_count() != 2 * n {
        return Err(Error::Dimension(format!(
            "algebra has {} variables, expected {} for a whiskered graph on {n} vertices",
            alg.variable_count(),
            2 * n
        )));
    }
    if !alg.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if !c.is_subset(g.vertices()) || !g.is_independent(c) {
        return Err(Error::NotIndependent);
    }

    let rest: Vec<usize> = g.vertices().difference(c).iter().collect();
    let y = |v: usize| n + v - 1;
    let x = |v: usize| v - 1;
    let mut factors: Vec<[(usize, i64); 2]> = rest.chunks_exact(2).map(|p| [(y(p[0]), 1), (y(p[1]), -1)]).collect();
    factors.extend(c.iter().map(|j| [(x(j), 1), (y(j), -1)]));
    let degree = factors.len();

    // Expand the product; every factor uses fresh variables, so products stay squarefree.
    let mut poly: HashMap<Vec<u8>, i64> = HashMap::from([(vec![0u8; 2 * n], 1)]);
    for factor in &factors {
        let mut next = HashMap::with_capacity(poly.len() * 2);
        for (mono, coef) in &poly {
            for &(var, sign) in factor {
                let mut m = mono.clone();
                m[var] += 1;
                *next.entry(m).or_insert(0) += coef * sign;
            }
        }
        poly = next;
    }

    let mut terms: Vec<(usize, WitnessTerm)> = poly
        .into_iter()
        .filter(|&(_, coef)| coef != 0)
        .filter_map(|(mono, coefficient)| {
            let monomial = ExponentVector::new(mono);
            alg.index_of(degree, &monomial).map(|k| (k, WitnessTerm { coefficient, monomial }))
        })
        .collect();
    if terms.is_empty() {
        return Err(Error::DegenerateWitness);
    }
    terms.sort_by_key(|(k, _)| *k);
    let terms: Vec<WitnessTerm> = terms.into_iter().map(|(_, t)| t).collect();

    // Differentiate along L inside the algebra and insist on zero.
    let mut derivative: HashMap<usize, i64> = HashMap::new();
    for t in &terms {
        for v in t.monomial.support().iter() {
            let mut lower = t.monomial.clone();
            lower.0[v - 1] -= 1;
            if let Some(r) = alg.index_of(degree - 1, &lower) {
                *derivative.entry(r).or_insert(0) += t.coefficient;
            }
        }
    }
    if let Some((r, coef)) = derivative.into_iter().find(|&(_, coef)| coef != 0) {
        return Err(Error::WitnessCheck(format!(
            "derivative has coefficient {coef} on {}",
            alg.basis(degree - 1)[r].display_with(alg.variable_names())
        )));
    }

    Ok(NonSurjectivityWitness { independent_set: c, degree, terms })
}

/// Degrees `i` where `×L: A_{i-1} -> A_i` in `A(w(g))` must fail surjectivity
/// by the independence-number criterion, or `None` when `α(g) < n/3 + 2`.
pub fn alpha_criterion(g: &Graph) -> Option<RangeInclusive<usize>> {
    let n = g.vertex_count();
    let alpha = g.independence_number();
    if 3 * alpha < n + 6 {
        return None;
    }
    Some((2 * n + 2).div_ceil(3)..=(n + alpha) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{broom, complete, nonisomorphic_graphs, star};

    #[test]
    fn edge_with_empty_set() {
        let g = complete(2).unwrap();
        let w = non_surjectivity_witness(&g, VertexSet::EMPTY).unwrap();
        assert_eq!(w.degree, 1);
        let names: Vec<String> = ["x1", "x2", "y1", "y2"].map(String::from).to_vec();
        assert_eq!(w.display_with(&names), "y1 - y2");
        let alg = GradedMonomialAlgebra::whiskered(&g, &[2, 2]).unwrap();
        assert!(w.confirm_rank(&alg));
    }

    #[test]
    fn star_leaves() {
        let g = star(4).unwrap();
        let c = VertexSet::from_vertices([2, 3, 4]);
        let w = non_surjectivity_witness(&g, c).unwrap();
        assert_eq!(w.degree, 3);
        assert_eq!(w.terms.len(), 8);
        // sign is (-1)^(number of y's)
        for t in &w.terms {
            let ys = t.monomial.exponents()[4..].iter().filter(|&&e| e == 1).count() as u32;
            assert_eq!(t.coefficient, (-1i64).pow(ys));
        }
        let alg = GradedMonomialAlgebra::whiskered(&g, &[2; 4]).unwrap();
        assert!(w.confirm_rank(&alg));
    }

    #[test]
    fn unsorted_sets_are_relabeled_internally() {
        // c = {1,3} in a path 1-2-3-4: the remaining vertices 2,4 pair up
        let g = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let w = non_surjectivity_witness(&g, VertexSet::from_vertices([1, 3])).unwrap();
        assert_eq!(w.degree, 3);
        assert_eq!(w.terms.len(), 8);
    }

    #[test]
    fn rejects_dependent_sets() {
        let g = complete(3).unwrap();
        assert_eq!(non_surjectivity_witness(&g, VertexSet::from_vertices([1, 2])), Err(Error::NotIndependent));
        assert_eq!(non_surjectivity_witness(&g, VertexSet::singleton(7)), Err(Error::NotIndependent));
        let capped = GradedMonomialAlgebra::whiskered(&g, &[3, 2, 2]).unwrap();
        assert_eq!(non_surjectivity_witness_in(&capped, &g, VertexSet::EMPTY), Err(Error::NotSquarefree));
    }

    #[test]
    fn every_maximal_set_on_five_vertices() {
        for g in nonisomorphic_graphs(5) {
            let alg = GradedMonomialAlgebra::whiskered(&g, &[2; 5]).unwrap();
            for c in g.maximal_independent_sets() {
                let w = non_surjectivity_witness_in(&alg, &g, c).unwrap();
                assert_eq!(w.degree, (5 + c.len()) / 2);
                assert!(w.confirm_rank(&alg));
            }
        }
    }

    #[test]
    fn alpha_criterion_examples() {
        assert_eq!(alpha_criterion(&star(5).unwrap()), Some(4..=4));
        assert!(alpha_criterion(&star(4).unwrap()).is_none());
        let b3 = broom(3).unwrap();
        assert_eq!(alpha_criterion(&b3), Some(5..=5));
        for n in 1..=8 {
            assert!(alpha_criterion(&complete(n).unwrap()).is_none());
        }
        assert_eq!(alpha_criterion(&Graph::edgeless(6).unwrap()), Some(5..=6));
    }
}
