//! Simplicial forms `F(Δ) = Σ x_i u_{F_i}`, log matrices, and the Gorenstein
//! algebras `A_F = R/Ann(F)` they define via Macaulay duality.
//!
//! Hilbert functions of `A_F` are catalecticant ranks: `dim (A_F)_i` is the
//! dimension of the span of all order-`i` partial derivatives of `F`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::lefschetz::{alpha_criterion, ExponentVector, GradedMonomialAlgebra, LefschetzReport, MapRecord};
use crate::linalg::{has_maximal_rank, rank_exact, Field, IntegerMatrix};

/// A homogeneous form in `x_1..x_s, u_1..u_m` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    x_count: usize,
    u_count: usize,
    degree: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl HomogeneousForm {
    /// Collects terms, merging repeated monomials and dropping zero coefficients.
    pub fn new<I>(x_count: usize, u_count: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let vars = x_count + u_count;
        let mut merged: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        let mut degree = None;
        for (mono, coef) in terms {
            if mono.exponents().len() != vars {
                return Err(Error::InvalidForm(format!(
                    "monomial has {} exponents, expected {vars}",
                    mono.exponents().len()
                )));
            }
            match degree {
                None => degree = Some(mono.degree()),
                Some(d) if d != mono.degree() => {
                    return Err(Error::InvalidForm(format!("mixed degrees {d} and {}", mono.degree())));
                }
                _ => {}
            }
            *merged.entry(mono).or_insert_with(BigRational::zero) += coef;
        }
        merged.retain(|_, c| !c.is_zero());
        if merged.is_empty() {
            return Err(Error::InvalidForm("the form is zero".into()));
        }
        Ok(HomogeneousForm { x_count, u_count, degree: degree.unwrap_or(0), terms: merged })
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn u_count(&self) -> usize {
        self.u_count
    }

    pub fn variable_count(&self) -> usize {
        self.x_count + self.u_count
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigRational> {
        &self.terms
    }

    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.x_count).map(|k| format!("x{k}")).chain((1..=self.u_count).map(|k| format!("u{k}"))).collect()
    }

    /// `L ∘ F = Σ_v ∂F/∂v`, or `None` for a constant form.
    pub fn derivative_along_l(&self) -> Option<HomogeneousForm> {
        let mut out = vec![];
        for (mono, coef) in &self.terms {
            for (v, &e) in mono.exponents().iter().enumerate() {
                if e > 0 {
                    let mut lower = mono.exponents().to_vec();
                    lower[v] -= 1;
                    out.push((ExponentVector::new(lower), coef * BigInt::from(e)));
                }
            }
        }
        HomogeneousForm::new(self.x_count, self.u_count, out).ok()
    }

    // Coefficients scaled to integers by the common denominator.
    fn integral_terms(&self) -> Result<Vec<(&ExponentVector, i64)>> {
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.terms
            .iter()
            .map(|(m, c)| {
                let scaled = (c * BigRational::from_integer(lcm.clone())).to_integer();
                scaled.to_i64().map(|v| (m, v)).ok_or_else(|| Error::Overflow(format!("coefficient {c} of {m:?}")))
            })
            .collect()
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.variable_names();
        // display in descending exponent order, matching the term order of construction
        for (k, (mono, coef)) in self.terms.iter().rev().enumerate() {
            let neg = coef.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = coef.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", mono.display_with(&names))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    x_count: usize,
    u_count: usize,
    /// `(exponents, numerator, denominator)`; integers as decimal strings.
    terms: Vec<(Vec<u8>, String, String)>,
}

impl Serialize for HomogeneousForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            x_count: self.x_count,
            u_count: self.u_count,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.exponents().to_vec(), c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HomogeneousForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FormRepr::deserialize(deserializer)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|(e, n, d)| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let d: BigInt = d.parse().map_err(D::Error::custom)?;
                if d.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok((ExponentVector::new(e), BigRational::new(n, d)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        HomogeneousForm::new(repr.x_count, repr.u_count, terms).map_err(D::Error::custom)
    }
}

/// `F(Δ) = Σ_i x_i u_{F_i}` over the facets of a pure complex, in facet order.
pub fn simplicial_form(c: &SimplicialComplex) -> Result<HomogeneousForm> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let (s, m) = (c.facets().len(), c.vertex_count());
    let terms = c.facets().iter().enumerate().map(|(i, &facet)| {
        let mut e = vec![0u8; s + m];
        e[i] = 1;
        for v in facet.iter() {
            e[s + v - 1] = 1;
        }
        (ExponentVector::new(e), BigRational::one())
    });
    HomogeneousForm::new(s, m, terms)
}

/// Rows are the exponent vectors of the monomials.
pub fn log_matrix(monomials: &[ExponentVector]) -> Result<IntegerMatrix> {
    let cols = monomials.first().map_or(0, |m| m.exponents().len());
    let rows: Vec<Vec<i64>> = monomials
        .iter()
        .map(|m| {
            if m.exponents().len() != cols {
                return Err(Error::Dimension("monomials have different variable counts".into()));
            }
            Ok(m.exponents().iter().map(|&e| i64::from(e)).collect())
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(IntegerMatrix::zeros(0, 0));
    }
    IntegerMatrix::from_rows(&rows)
}

/// Ranks behind the Perazzo test of a pure complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerazzoReport {
    pub facets: usize,
    pub vertices: usize,
    /// Rank of the log matrix of the facet monomials.
    pub log_rank: usize,
    /// Rank of `×L^d: A(Δ)_1 -> A(Δ)_{d+1}`, `d = dim Δ`.
    pub mult_rank: usize,
    pub is_perazzo: bool,
}

/// Whether `F(Δ)` is a Perazzo form: the facet monomials are algebraically
/// dependent, i.e. their log matrix has rank below the facet count.
pub fn is_perazzo(c: &SimplicialComplex) -> Result<bool> {
    Ok(perazzo_report(c)?.is_perazzo)
}

/// The log-matrix test together with the rank of `×L^d: A(Δ)_1 -> A(Δ)_{d+1}`,
/// which must agree with it.
pub fn perazzo_report(c: &SimplicialComplex) -> Result<PerazzoReport> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let m = c.vertex_count();
    let facets: Vec<ExponentVector> = c.facets().iter().map(|&f| ExponentVector::squarefree(m, f)).collect();
    let log_rank = has_maximal_rank(&log_matrix(&facets)?).1.rank;
    let d = c.dimension().max(0) as usize;
    let alg = GradedMonomialAlgebra::squarefree(c.clone());
    let mult_rank = has_maximal_rank(&alg.mult_map_matrix(1, d)).1.rank;
    if c.dimension() >= 0 && mult_rank != log_rank {
        return Err(Error::Consistency(format!("log-matrix rank {log_rank} but ×L^{d} has rank {mult_rank}")));
    }
    Ok(PerazzoReport { facets: facets.len(), vertices: m, log_rank, mult_rank, is_perazzo: log_rank < facets.len() })
}

/// Hilbert function of the idealization of `A(Δ)`: `h_i = dim A(Δ)_i + dim A(Δ)_{d-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealizationHilbert {
    /// Socle degree, `dim Δ + 2`.
    pub d: usize,
    pub h: Vec<u64>,
}

pub fn idealization_hilbert(c: &SimplicialComplex) -> Result<IdealizationHilbert> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let f = c.f_vector();
    let d = (c.dimension() + 2) as usize;
    let dim = |k: usize| f.get(k).copied().unwrap_or(0);
    Ok(IdealizationHilbert { d, h: (0..=d).map(|i| dim(i) + dim(d - i)).collect() })
}

fn falling_factorial(gamma: &[u8], beta: &[u8]) -> i64 {
    gamma.iter().zip(beta).map(|(&g, &b)| ((b + 1)..=g).map(i64::from).product::<i64>()).product()
}

// Every α ≤ γ with |α| = k, as (α, γ - α).
fn split_exponents(gamma: &[u8], k: usize, out: &mut Vec<(Vec<u8>, Vec<u8>)>) {
    fn go(gamma: &[u8], pos: usize, left: usize, alpha: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, Vec<u8>)>) {
        if pos == gamma.len() {
            if left == 0 {
                let beta = gamma.iter().zip(alpha.iter()).map(|(g, a)| g - a).collect();
                out.push((alpha.clone(), beta));
            }
            return;
        }
        let rest: usize = gamma[pos + 1..].iter().map(|&e| e as usize).sum();
        let lo = left.saturating_sub(rest);
        for a in lo..=left.min(gamma[pos] as usize) {
            alpha[pos] = a as u8;
            go(gamma, pos + 1, left - a, alpha, out);
        }
        alpha[pos] = 0;
    }
    go(gamma, 0, k, &mut vec![0; gamma.len()], out);
}

/// The `i`-th catalecticant: rows are the order-`i` derivation monomials `α`
/// dividing some term, columns the degree-`(d-i)` monomials, and entry
/// `(α, β)` is the coefficient of `β` in `∂^α F` (after clearing denominators).
pub fn catalecticant(f: &HomogeneousForm, i: usize) -> Result<IntegerMatrix> {
    if i > f.degree() {
        return Ok(IntegerMatrix::zeros(0, 0));
    }
    let mut rows: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut cols: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut entries: HashMap<(usize, usize), i64> = HashMap::new();
    let mut splits = vec![];
    for (gamma, coef) in f.integral_terms()? {
        splits.clear();
        split_exponents(gamma.exponents(), i, &mut splits);
        for (alpha, beta) in splits.drain(..) {
            let value = coef
                .checked_mul(falling_factorial(gamma.exponents(), &beta))
                .ok_or_else(|| Error::Overflow("catalecticant entry".into()))?;
            let nr = rows.len();
            let r = *rows.entry(alpha).or_insert(nr);
            let nc = cols.len();
            let c = *cols.entry(beta).or_insert(nc);
            let slot = entries.entry((r, c)).or_insert(0);
            *slot = slot.checked_add(value).ok_or_else(|| Error::Overflow("catalecticant entry".into()))?;
        }
    }
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for ((r, c), v) in entries {
        m.set(r, c, v);
    }
    Ok(m)
}

fn catalecticant_rank(f: &HomogeneousForm, i: usize) -> Result<usize> {
    Ok(has_maximal_rank(&catalecticant(f, i)?).1.rank)
}

/// Hilbert function `h_0..h_d` of `A_F`.
pub fn apolarity_dims(f: &HomogeneousForm) -> Result<Vec<usize>> {
    (0..=f.degree()).into_par_iter().map(|i| catalecticant_rank(f, i)).collect()
}

/// Rank of `×L: (A_F)_i -> (A_F)_{i+1}`, the `i`-th catalecticant rank of `L ∘ F`.
pub fn gorenstein_mult_rank(f: &HomogeneousForm, i: usize) -> Result<usize> {
    if i >= f.degree() {
        return Err(Error::Dimension(format!("degree {i} is not below the socle degree {}", f.degree())));
    }
    match f.derivative_along_l() {
        Some(df) => catalecticant_rank(&df, i),
        None => Ok(0),
    }
}

/// Every `×L: (A_F)_i -> (A_F)_{i+1}` of the Gorenstein algebra of `f`.
pub fn gorenstein_wlp_report(f: &HomogeneousForm) -> Result<LefschetzReport> {
    let hilbert = apolarity_dims(f)?;
    let maps: Vec<MapRecord> = (0..f.degree())
        .into_par_iter()
        .map(|i| Ok(MapRecord::new(i, 1, (hilbert[i], hilbert[i + 1]), gorenstein_mult_rank(f, i)?)))
        .collect::<Result<_>>()?;
    let wlp = maps.iter().all(MapRecord::has_maximal_rank);
    Ok(LefschetzReport { field: Field::Rationals, hilbert, maps, wlp, slp: None })
}

/// Outcome of the WLP prediction for the Gorenstein algebra of `F(w(g))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerazzoWlpPrediction {
    /// Degrees where `×L` on `A(w(g))` must fail surjectivity.
    pub range: RangeInclusive<usize>,
    /// `i = ⌈(2n+2)/3⌉`.
    pub degree: usize,
    /// Rank and dimensions of the restriction `×L: A(w(g))_{i-1} -> A(w(g))_i`.
    pub restriction_rank: usize,
    pub restriction_dims: (usize, usize),
    /// First deficient map of the Gorenstein algebra, when it was computed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gorenstein_failure: Option<MapRecord>,
    pub wlp_fails: bool,
}

/// Vertex bound for the direct Gorenstein cross-check.
pub const GORENSTEIN_CHECK_MAX_VERTICES: usize = 6;

/// `None` when `α(g) < n/3 + 2`. Otherwise confirms the surjectivity failure of
/// the restriction to `A(w(g))` and, for graphs with at most
/// [`GORENSTEIN_CHECK_MAX_VERTICES`] vertices, locates a deficient map of the
/// Gorenstein algebra of `F(w(g))` directly.
pub fn perazzo_wlp_predicate(g: &Graph) -> Result<Option<PerazzoWlpPrediction>> {
    let Some(range) = alpha_criterion(g) else { return Ok(None) };
    let n = g.vertex_count();
    let i = *range.start();
    let alg = GradedMonomialAlgebra::whiskered(g, &vec![2; n])?;
    let m = alg.mult_map_matrix(i - 1, 1);
    let restriction_rank = rank_exact(&m).rank;
    let restriction_dims = (alg.dim(i - 1), alg.dim(i));
    if restriction_rank >= restriction_dims.1 {
        return Err(Error::Consistency(format!("×L: A_{} -> A_{i} is surjective", i - 1)));
    }
    let gorenstein_failure = if n <= GORENSTEIN_CHECK_MAX_VERTICES {
        let f = simplicial_form(alg.complex())?;
        let report = gorenstein_wlp_report(&f)?;
        let first = report.deficient_maps().next().cloned();
        if first.is_none() {
            return Err(Error::Consistency("the Gorenstein algebra has the WLP".into()));
        }
        first
    } else {
        None
    };
    Ok(Some(PerazzoWlpPrediction {
        range,
        degree: i,
        restriction_rank,
        restriction_dims,
        gorenstein_failure,
        wlp_fails: true,
    }))
}
