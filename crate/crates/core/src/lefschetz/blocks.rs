use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{ExponentVector, GradedMonomialAlgebra};
use crate::error::{Error, Result};
use crate::graphs::complete;
use crate::linalg::IntegerMatrix;

/// The monomial complete intersection `K[z_1..z_n]/(z_1^{d_1}, ..., z_n^{d_n})`.
/// Caps of 1 are allowed here (the variable simply vanishes).
#[derive(Clone, Debug)]
pub struct CompleteIntersection {
    caps: Vec<u8>,
    basis: Vec<Vec<ExponentVector>>,
    index: Vec<HashMap<ExponentVector, usize>>,
}

impl CompleteIntersection {
    pub fn new(caps: &[u8]) -> Result<Self> {
        if let Some((k, &cap)) = caps.iter().enumerate().find(|(_, &c)| c == 0) {
            return Err(Error::DegenerateCap { variable: k + 1, cap });
        }
        let socle: usize = caps.iter().map(|&c| c as usize - 1).sum();
        let mut basis = vec![Vec::new(); socle + 1];
        let mut exps = vec![0u8; caps.len()];
        loop {
            let e = ExponentVector::new(exps.clone());
            basis[e.degree()].push(e);
            // odometer over the box Π [0, d_k)
            let Some(k) = (0..caps.len()).rev().find(|&k| exps[k] + 1 < caps[k]) else { break };
            exps[k] += 1;
            exps[k + 1..].iter_mut().for_each(|e| *e = 0);
        }
        for level in &mut basis {
            level.sort_unstable_by(|a, b| b.cmp(a));
        }
        let index = basis.iter().map(|l| l.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect()).collect();
        Ok(CompleteIntersection { caps: caps.to_vec(), basis, index })
    }

    pub fn caps(&self) -> &[u8] {
        &self.caps
    }

    pub fn socle_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis.get(degree).map_or(0, Vec::len)
    }

    pub fn basis(&self, degree: usize) -> &[ExponentVector] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn index_of(&self, degree: usize, m: &ExponentVector) -> Option<usize> {
        self.index.get(degree)?.get(m).copied()
    }

    /// `×L^s: B_i -> B_{i+s}`, entries `s! / Π (t_k - m_k)!` for every target
    /// `t` dominating the source `m`.
    pub fn mult_map_matrix(&self, i: usize, s: usize) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.dim(i + s), self.dim(i));
        for (c, m) in self.basis(i).iter().enumerate() {
            for (r, t) in self.basis(i + s).iter().enumerate() {
                let diff: Option<Vec<u32>> =
                    t.exponents().iter().zip(m.exponents()).map(|(&a, &b)| a.checked_sub(b).map(u32::from)).collect();
                if let Some(diff) = diff {
                    out.set(r, c, multinomial(&diff));
                }
            }
        }
        out
    }
}

fn multinomial(parts: &[u32]) -> i64 {
    // product of binomials C(k_1+..+k_j, k_j)
    let mut total = 0u64;
    let mut acc = 1u128;
    for &k in parts {
        for t in 1..=k as u64 {
            total += 1;
            acc = acc * total as u128 / t as u128;
        }
    }
    i64::try_from(acc).expect("multinomial coefficient overflows i64")
}

/// The reordered `×L^s` matrix of `A(w(K_n), d̄)` and its diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub n: usize,
    pub caps: Vec<u8>,
    pub degree: usize,
    pub shift: usize,
    /// Sizes of the pure-`y` block and the `n` blocks `x_j·(…)`, in the source.
    pub source_blocks: Vec<usize>,
    /// The same for the target degree.
    pub target_blocks: Vec<usize>,
    pub matrix: IntegerMatrix,
    /// `×L^s` of the complete intersection with caps `d̄`.
    pub top: IntegerMatrix,
    /// `×L^s` of the complete intersection with `d_j` lowered by one, one degree down.
    pub diagonal: Vec<IntegerMatrix>,
}

/// Basis order of one summand: the algebra indices of its monomials, listed in
/// the order of the matching complete-intersection basis.
fn block_order(
    alg: &GradedMonomialAlgebra,
    ci: &CompleteIntersection,
    degree: usize,
    ci_degree: Option<usize>,
    lift: impl Fn(&ExponentVector) -> ExponentVector,
) -> Result<Vec<usize>> {
    let Some(cd) = ci_degree else { return Ok(vec![]) };
    ci.basis(cd)
        .iter()
        .map(|z| {
            let m = lift(z);
            alg.index_of(degree, &m).ok_or_else(|| {
                Error::BlockStructure(format!(
                    "{} is missing from degree {degree}",
                    m.display_with(alg.variable_names())
                ))
            })
        })
        .collect()
}

fn lower_degree(degree: usize) -> Option<usize> {
    degree.checked_sub(1)
}

/// Decomposes `×L^s: A_i -> A_{i+s}` on `A(w(K_n), d̄)` into the pure-`y`
/// summand and the summands `x_j·K[x_j, y_k (k≠j)]`, checking that the matrix
/// is block lower-triangular with block-diagonal lower-right corner, and that
/// the diagonal blocks are the complete-intersection maps.
pub fn block_structure_complete(n: usize, caps: &[u8], i: usize, s: usize) -> Result<BlockDecomposition> {
    if s == 0 {
        return Err(Error::BlockStructure("the shift must be positive".into()));
    }
    let alg = GradedMonomialAlgebra::whiskered(&complete(n)?, caps)?;
    let vars = 2 * n;
    let top_ci = CompleteIntersection::new(caps)?;
    let lowered: Vec<CompleteIntersection> = (0..n)
        .map(|j| {
            let mut c = caps.to_vec();
            c[j] -= 1;
            CompleteIntersection::new(&c)
        })
        .collect::<Result<_>>()?;

    // z^a  ↦  y^a
    let pure_y = |z: &ExponentVector| {
        let mut e = vec![0u8; vars];
        e[n..].copy_from_slice(z.exponents());
        ExponentVector::new(e)
    };
    // z^a (degree k, caps with d_j - 1)  ↦  x_j^{a_j + 1} Π_{k≠j} y_k^{a_k}
    let x_block = |j: usize| {
        move |z: &ExponentVector| {
            let mut e = vec![0u8; vars];
            for (k, &a) in z.exponents().iter().enumerate() {
                if k == j {
                    e[j] = a + 1;
                } else {
                    e[n + k] = a;
                }
            }
            ExponentVector::new(e)
        }
    };

    let layout = |degree: usize| -> Result<(Vec<usize>, Vec<usize>)> {
        let mut order = block_order(&alg, &top_ci, degree, Some(degree), pure_y)?;
        let mut sizes = vec![order.len()];
        for (j, ci) in lowered.iter().enumerate() {
            let block = block_order(&alg, ci, degree, lower_degree(degree), x_block(j))?;
            sizes.push(block.len());
            order.extend(block);
        }
        if order.len() != alg.dim(degree) {
            return Err(Error::BlockStructure(format!(
                "summands cover {} of the {} basis monomials in degree {degree}",
                order.len(),
                alg.dim(degree)
            )));
        }
        Ok((order, sizes))
    };
    let (cols, source_blocks) = layout(i)?;
    let (rows, target_blocks) = layout(i + s)?;
    let matrix = alg.mult_map_matrix(i, s).select(&rows, &cols);

    let offsets = |sizes: &[usize]| -> Vec<usize> {
        sizes
            .iter()
            .scan(0, |acc, &k| {
                *acc += k;
                Some(*acc - k)
            })
            .collect()
    };
    let (row_off, col_off) = (offsets(&target_blocks), offsets(&source_blocks));
    let block = |a: usize, b: usize| -> IntegerMatrix {
        let r: Vec<usize> = (row_off[a]..row_off[a] + target_blocks[a]).collect();
        let c: Vec<usize> = (col_off[b]..col_off[b] + source_blocks[b]).collect();
        matrix.select(&r, &c)
    };

    for a in 0..=n {
        for b in 1..=n {
            if a != b && !block(a, b).is_zero() {
                return Err(Error::BlockStructure(format!("off-diagonal block ({a}, {b}) is nonzero")));
            }
        }
    }
    let top = block(0, 0);
    if top != top_ci.mult_map_matrix(i, s) {
        return Err(Error::BlockStructure("top block differs from the complete intersection".into()));
    }
    let mut diagonal = Vec::with_capacity(n);
    for (j, ci) in lowered.iter().enumerate() {
        let t = block(j + 1, j + 1);
        let expected = match lower_degree(i) {
            Some(k) => ci.mult_map_matrix(k, s),
            None => IntegerMatrix::zeros(ci.dim(s - 1), 0),
        };
        if t != expected {
            return Err(Error::BlockStructure(format!("diagonal block {} differs from the lowered truncation", j + 1)));
        }
        diagonal.push(t);
    }

    Ok(BlockDecomposition {
        n,
        caps: caps.to_vec(),
        degree: i,
        shift: s,
        source_blocks,
        target_blocks,
        matrix,
        top,
        diagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_exact;

    #[test]
    fn complete_intersection_basics() {
        let ci = CompleteIntersection::new(&[2, 3]).unwrap();
        let h: Vec<usize> = (0..=ci.socle_degree()).map(|k| ci.dim(k)).collect();
        assert_eq!(h, vec![1, 2, 2, 1]);
        // L^2 · 1 = z1^2 + 2 z1 z2 + z2^2 → z1^2 dies
        let m = ci.mult_map_matrix(0, 2);
        let mut col: Vec<i64> = (0..m.rows()).map(|r| m.get(r, 0)).collect();
        col.sort();
        assert_eq!(col, vec![1, 2]);
        let trivial = CompleteIntersection::new(&[1, 1]).unwrap();
        assert_eq!(trivial.socle_degree(), 0);
        assert!(CompleteIntersection::new(&[0]).is_err());
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1, 1]), 12);
        assert_eq!(multinomial(&[0, 3]), 1);
        assert_eq!(multinomial(&[]), 1);
    }

    #[test]
    fn two_vertices_degree_one() {
        let b = block_structure_complete(2, &[2, 2], 1, 1).unwrap();
        // A_1 = span{y1, y2} ⊕ x1·K ⊕ x2·K
        assert_eq!(b.source_blocks, vec![2, 1, 1]);
        // A_2 = span{y1y2} ⊕ x1y2 ⊕ x2y1
        assert_eq!(b.target_blocks, vec![1, 1, 1]);
        assert_eq!(b.top, IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap());
        for t in &b.diagonal {
            assert_eq!(*t, IntegerMatrix::identity(1));
        }
    }

    #[test]
    fn mixed_caps() {
        let b = block_structure_complete(3, &[2, 3, 2], 2, 1).unwrap();
        assert_eq!(b.diagonal.len(), 3);
        assert_eq!(b.source_blocks.iter().sum::<usize>(), b.matrix.cols());
    }

    #[test]
    fn single_vertex_has_two_blocks() {
        for i in 0..=2 {
            let b = block_structure_complete(1, &[3], i, 1).unwrap();
            assert_eq!(b.source_blocks.len(), 2);
            assert_eq!(b.diagonal.len(), 1);
        }
    }

    #[test]
    fn every_small_instance_decomposes_and_ranks_add_up() {
        for n in 1..=3usize {
            for code in 0..(1u32 << n) {
                let caps: Vec<u8> = (0..n).map(|k| 2 + (code >> k & 1) as u8).collect();
                let d: usize = caps.iter().map(|&c| c as usize - 1).sum();
                for s in 1..=d + 1 {
                    for i in 0..=d + 1 - s {
                        let b = block_structure_complete(n, &caps, i, s).unwrap();
                        // maximal rank of both diagonal parts gives maximal rank overall
                        let parts =
                            rank_exact(&b.top).rank + b.diagonal.iter().map(|t| rank_exact(t).rank).sum::<usize>();
                        let full = rank_exact(&b.matrix).rank;
                        assert!(full >= parts, "n={n} caps={caps:?} i={i} s={s}");
                    }
                }
            }
        }
    }
}
