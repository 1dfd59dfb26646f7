//! Graded artinian monomial algebras `A(Δ, d̄)` and their Lefschetz properties.
//!
//! `A(Δ, d̄)` is the polynomial ring modulo the Stanley-Reisner ideal of `Δ`
//! and the powers `x_i^{d_i}`. Its monomial basis in degree `k` consists of the
//! exponent vectors of total degree `k` whose support is a face of `Δ` and
//! whose entries stay below the caps. Multiplication by `L`, the sum of all
//! variables, is represented in these bases.

mod blocks;
mod report;
mod witness;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use blocks::{block_structure_complete, BlockDecomposition, CompleteIntersection};
pub use report::{
    slp_check, slp_check_over, wlp_check, wlp_check_over, Failure, LefschetzReport, MapRecord, MapStatus,
};
pub use witness::{
    alpha_criterion, non_surjectivity_witness, non_surjectivity_witness_in, NonSurjectivityWitness, WitnessTerm,
};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linalg::IntegerMatrix;
use crate::vertex_set::VertexSet;

/// Exponents of a monomial, one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u8>);

impl ExponentVector {
    pub fn new(exponents: Vec<u8>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(vars: usize) -> Self {
        ExponentVector(vec![0; vars])
    }

    /// The squarefree monomial of a vertex set.
    pub fn squarefree(vars: usize, support: VertexSet) -> Self {
        let mut e = vec![0; vars];
        for v in support.iter() {
            e[v - 1] = 1;
        }
        ExponentVector(e)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, _)| k + 1))
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Renders the monomial with the given variable names, `1` for the unit.
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { names[k].clone() } else { format!("{}^{e}", names[k]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `A(Δ, d̄)` with its graded monomial basis.
#[derive(Clone, Debug)]
pub struct GradedMonomialAlgebra {
    complex: SimplicialComplex,
    caps: Vec<u8>,
    names: Vec<String>,
    basis: Vec<Vec<ExponentVector>>,
    index: Vec<HashMap<ExponentVector, usize>>,
}

impl GradedMonomialAlgebra {
    /// Builds `A(Δ, d̄)`; every cap must be at least 2.
    pub fn build(complex: SimplicialComplex, caps: &[u8]) -> Result<Self> {
        let m = complex.vertex_count();
        check_caps(caps, m)?;
        let names = (1..=m).map(|v| format!("x{v}")).collect();
        Ok(Self::assemble(complex, caps.to_vec(), names))
    }

    /// `A(Δ)`: all caps equal to 2.
    pub fn squarefree(complex: SimplicialComplex) -> Self {
        let caps = vec![2; complex.vertex_count()];
        let names = (1..=complex.vertex_count()).map(|v| format!("x{v}")).collect();
        Self::assemble(complex, caps, names)
    }

    /// `A(w(g), d̄)`: variables `x_1..x_n, y_1..y_n`, the cap `d_i` shared by
    /// `x_i` and `y_i`.
    pub fn whiskered(g: &Graph, caps: &[u8]) -> Result<Self> {
        let n = g.vertex_count();
        check_caps(caps, n)?;
        let w = g.whisker()?;
        let doubled: Vec<u8> = caps.iter().chain(caps).copied().collect();
        let names = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect();
        Ok(Self::assemble(SimplicialComplex::independence_complex(&w), doubled, names))
    }

    fn assemble(complex: SimplicialComplex, caps: Vec<u8>, names: Vec<String>) -> Self {
        let m = complex.vertex_count();
        let mut basis: Vec<Vec<ExponentVector>> = vec![vec![ExponentVector::zero(m)]];
        let mut exps = vec![0u8; m];
        for faces in complex.faces_by_size().iter().skip(1) {
            for &face in faces {
                let support: Vec<usize> = face.iter().map(|v| v - 1).collect();
                fill_exponents(&support, &caps, &mut exps, 0, &mut basis);
            }
        }
        for level in &mut basis {
            level.sort_unstable_by(|a, b| b.cmp(a));
        }
        let index =
            basis.iter().map(|level| level.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect()).collect();
        GradedMonomialAlgebra { complex, caps, names, basis, index }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn caps(&self) -> &[u8] {
        &self.caps
    }

    pub fn variable_count(&self) -> usize {
        self.caps.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn is_squarefree(&self) -> bool {
        self.caps.iter().all(|&c| c == 2)
    }

    /// Last degree with a non-empty basis.
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis.get(degree).map_or(0, Vec::len)
    }

    pub fn basis(&self, degree: usize) -> &[ExponentVector] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, degree: usize, monomial: &ExponentVector) -> Option<usize> {
        self.index.get(degree)?.get(monomial).copied()
    }

    /// Per-degree basis sizes `h_0, ..., h_top`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// Images of a degree-`degree` basis monomial under `×L`, as target indices
    /// with multiplicity one each.
    fn successors(&self, degree: usize, source: usize) -> impl Iterator<Item = usize> + '_ {
        let mono = &self.basis[degree][source];
        let mut scratch = mono.clone();
        (0..self.caps.len()).filter_map(move |j| {
            if mono.0[j] + 1 >= self.caps[j] {
                return None;
            }
            scratch.0[j] += 1;
            let hit = self.index_of(degree + 1, &scratch);
            scratch.0[j] -= 1;
            hit
        })
    }

    /// Matrix of `×L^s: A_i -> A_{i+s}` in the monomial bases (rows index the
    /// target, columns the source). Entries are the multinomial coefficients
    /// of the surviving terms of `L^s · m`.
    pub fn mult_map_matrix(&self, i: usize, s: usize) -> IntegerMatrix {
        let (cols, rows) = (self.dim(i), self.dim(i + s));
        let mut m = IntegerMatrix::zeros(rows, cols);
        if rows == 0 || cols == 0 {
            return m;
        }
        for c in 0..cols {
            // sparse vector of coefficients, propagated one factor of L at a time
            let mut current: HashMap<usize, i64> = HashMap::from([(c, 1)]);
            for step in 0..s {
                let mut next: HashMap<usize, i64> = HashMap::new();
                for (&src, &coef) in &current {
                    for t in self.successors(i + step, src) {
                        *next.entry(t).or_insert(0) += coef;
                    }
                }
                current = next;
            }
            for (r, coef) in current {
                m.set(r, c, coef);
            }
        }
        m
    }

    /// Matrix of the derivative along `L`, `A_{i+1} -> A_i`, on squarefree
    /// bases: `m ↦ Σ_j ∂m/∂x_j`.
    pub fn derivative_matrix(&self, i: usize) -> Result<IntegerMatrix> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let (rows, cols) = (self.dim(i), self.dim(i + 1));
        let mut d = IntegerMatrix::zeros(rows, cols);
        for (c, mono) in self.basis(i + 1).iter().enumerate() {
            for v in mono.support().iter() {
                let mut lower = mono.clone();
                lower.0[v - 1] -= 1;
                if let Some(r) = self.index_of(i, &lower) {
                    d.set(r, c, d.get(r, c) + 1);
                }
            }
        }
        Ok(d)
    }

    /// Whether the transpose of `×L: A_i -> A_{i+1}` equals the derivative
    /// along `L` on the squarefree bases.
    pub fn transpose_is_derivative(&self, i: usize) -> Result<bool> {
        let d = self.derivative_matrix(i)?;
        Ok(self.mult_map_matrix(i, 1).transpose() == d)
    }
}

fn check_caps(caps: &[u8], expected: usize) -> Result<()> {
    if caps.len() != expected {
        return Err(Error::CapCount { expected, got: caps.len() });
    }
    if let Some((k, &cap)) = caps.iter().enumerate().find(|(_, &c)| c < 2) {
        return Err(Error::DegenerateCap { variable: k + 1, cap });
    }
    Ok(())
}

// All exponent vectors with support exactly `support` and entries in 1..cap.
fn fill_exponents(support: &[usize], caps: &[u8], exps: &mut [u8], depth: usize, basis: &mut Vec<Vec<ExponentVector>>) {
    if depth == support.len() {
        let e = ExponentVector(exps.to_vec());
        let d = e.degree();
        if basis.len() <= d {
            basis.resize(d + 1, Vec::new());
        }
        basis[d].push(e);
        return;
    }
    let v = support[depth];
    for a in 1..caps[v] {
        exps[v] = a;
        fill_exponents(support, caps, exps, depth + 1, basis);
    }
    exps[v] = 0;
}

/// Hilbert function of `A(Δ, d̄)` from the faces alone, without building the
/// basis: each face `σ` contributes `Π_{v∈σ} (t + t^2 + … + t^{d_v-1})`.
pub fn predicted_hilbert_function(complex: &SimplicialComplex, caps: &[u8]) -> Result<Vec<u64>> {
    check_caps(caps, complex.vertex_count())?;
    let mut total: Vec<u64> = vec![];
    for faces in complex.faces_by_size() {
        for &face in faces {
            let mut poly = vec![1u64];
            for v in face.iter() {
                let cap = caps[v - 1] as usize;
                let mut next = vec![0u64; poly.len() + cap - 1];
                for (d, &c) in poly.iter().enumerate() {
                    for a in 1..cap {
                        next[d + a] += c;
                    }
                }
                poly = next;
            }
            if total.len() < poly.len() {
                total.resize(poly.len(), 0);
            }
            for (t, c) in total.iter_mut().zip(poly) {
                *t += c;
            }
        }
    }
    Ok(total)
}
