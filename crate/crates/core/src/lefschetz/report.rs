use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::GradedMonomialAlgebra;
use crate::error::Result;
use crate::linalg::{has_maximal_rank_over, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapStatus {
    Injective,
    Surjective,
    Bijective,
    Deficient,
}

/// Which maximal-rank property a deficient map misses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Failure {
    NotInjective,
    NotSurjective,
}

/// Rank data of one map `×L^s: A_i -> A_{i+s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    #[serde(rename = "i")]
    pub degree: usize,
    #[serde(rename = "s")]
    pub shift: usize,
    /// `(dim A_i, dim A_{i+s})`
    pub dims: (usize, usize),
    pub required_rank: usize,
    pub rank: usize,
    pub status: MapStatus,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failures: Vec<Failure>,
}

impl MapRecord {
    /// Classifies a map of the given dimensions and rank.
    pub fn new(degree: usize, shift: usize, dims: (usize, usize), rank: usize) -> Self {
        let (a, b) = dims;
        let required_rank = a.min(b);
        let (status, failures) = if rank == required_rank {
            let status = match a.cmp(&b) {
                std::cmp::Ordering::Less => MapStatus::Injective,
                std::cmp::Ordering::Equal => MapStatus::Bijective,
                std::cmp::Ordering::Greater => MapStatus::Surjective,
            };
            (status, vec![])
        } else {
            let mut failures = vec![];
            if a <= b {
                failures.push(Failure::NotInjective);
            }
            if a >= b {
                failures.push(Failure::NotSurjective);
            }
            (MapStatus::Deficient, failures)
        };
        MapRecord { degree, shift, dims, required_rank, rank, status, failures }
    }

    pub fn has_maximal_rank(&self) -> bool {
        self.status != MapStatus::Deficient
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.dims.0
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.dims.1
    }
}

/// Hilbert function plus per-map rank records of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub field: Field,
    pub hilbert: Vec<usize>,
    /// Sorted by shift, then degree.
    pub maps: Vec<MapRecord>,
    pub wlp: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slp: Option<bool>,
}

impl LefschetzReport {
    pub fn map(&self, degree: usize, shift: usize) -> Option<&MapRecord> {
        self.maps.iter().find(|m| m.degree == degree && m.shift == shift)
    }

    pub fn deficient_maps(&self) -> impl Iterator<Item = &MapRecord> {
        self.maps.iter().filter(|m| !m.has_maximal_rank())
    }

    /// Degrees `i` where `×L: A_{i-1} -> A_i` is deficient and labeled not surjective.
    pub fn surjectivity_failures(&self) -> Vec<usize> {
        self.maps
            .iter()
            .filter(|m| m.shift == 1 && m.failures.contains(&Failure::NotSurjective))
            .map(|m| m.degree + 1)
            .collect()
    }

    /// Checks the propagation rules for `×L` that hold in a level algebra:
    /// surjectivity passes to higher degrees and injectivity to lower ones.
    pub fn propagation_consistent(&self) -> bool {
        let linear: Vec<&MapRecord> = self.maps.iter().filter(|m| m.shift == 1).collect();
        let first_surjective = linear.iter().position(|m| m.is_surjective());
        let last_injective = linear.iter().rposition(|m| m.is_injective());
        let surj_ok = first_surjective.is_none_or(|k| linear[k..].iter().all(|m| m.is_surjective()));
        let inj_ok = last_injective.is_none_or(|k| linear[..=k].iter().all(|m| m.is_injective()));
        surj_ok && inj_ok
    }
}

fn record(alg: &GradedMonomialAlgebra, i: usize, s: usize, field: Field) -> Result<MapRecord> {
    let m = alg.mult_map_matrix(i, s);
    let (_, rank) = has_maximal_rank_over(&m, field)?;
    Ok(MapRecord::new(i, s, (alg.dim(i), alg.dim(i + s)), rank.rank))
}

fn records(alg: &GradedMonomialAlgebra, pairs: Vec<(usize, usize)>, field: Field) -> Result<Vec<MapRecord>> {
    pairs.into_par_iter().map(|(i, s)| record(alg, i, s, field)).collect()
}

/// Weak Lefschetz test over the rationals.
pub fn wlp_check(alg: &GradedMonomialAlgebra) -> LefschetzReport {
    wlp_check_over(alg, Field::Rationals).expect("rational ranks cannot fail")
}

/// Weak Lefschetz test: every `×L: A_i -> A_{i+1}`, `0 <= i < top`.
pub fn wlp_check_over(alg: &GradedMonomialAlgebra, field: Field) -> Result<LefschetzReport> {
    let pairs = (0..alg.top_degree()).map(|i| (i, 1)).collect();
    let maps = records(alg, pairs, field)?;
    let wlp = maps.iter().all(MapRecord::has_maximal_rank);
    Ok(LefschetzReport { field, hilbert: alg.hilbert_function(), maps, wlp, slp: None })
}

/// Strong Lefschetz test over the rationals.
pub fn slp_check(alg: &GradedMonomialAlgebra) -> LefschetzReport {
    slp_check_over(alg, Field::Rationals).expect("rational ranks cannot fail")
}

/// Strong Lefschetz test: every `×L^s: A_i -> A_{i+s}` with `s >= 1` and
/// `i + s <= top`.
pub fn slp_check_over(alg: &GradedMonomialAlgebra, field: Field) -> Result<LefschetzReport> {
    let top = alg.top_degree();
    let pairs = (1..=top).flat_map(|s| (0..=top - s).map(move |i| (i, s))).collect();
    let maps = records(alg, pairs, field)?;
    let wlp = maps.iter().filter(|m| m.shift == 1).all(MapRecord::has_maximal_rank);
    let slp = maps.iter().all(MapRecord::has_maximal_rank);
    Ok(LefschetzReport { field, hilbert: alg.hilbert_function(), maps, wlp, slp: Some(slp) })
}
