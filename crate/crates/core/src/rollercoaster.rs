//! Target sequences whose pair sums `a_k + a_{q-k+1}` follow a prescribed
//! order, the ratio condition for approximate well-covered independence
//! polynomials, ε-certificates, and the Gorenstein h-vectors
//! `h_k = i_k + i_{d-k}` they feed into.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{Graph, IndependenceSequence};

/// A bijection of `{start, ..., start + len - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    start: usize,
    images: Vec<usize>,
}

impl Permutation {
    /// `images[k]` is the image of `start + k`.
    pub fn new(start: usize, images: Vec<usize>) -> Result<Self> {
        let end = start + images.len();
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if !(start..end).contains(&v) {
                return Err(Error::InvalidPermutation(format!("{v} is outside {start}..={}", end.saturating_sub(1))));
            }
            if std::mem::replace(&mut seen[v - start], true) {
                return Err(Error::InvalidPermutation(format!("{v} appears twice")));
            }
        }
        Ok(Permutation { start, images })
    }

    pub fn identity(domain: RangeInclusive<usize>) -> Self {
        Permutation { start: *domain.start(), images: domain.collect() }
    }

    /// Parses a one-line image list such as `5 3 4` or `5,3,4`.
    pub fn parse(start: usize, text: &str) -> Result<Self> {
        let images = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::InvalidPermutation(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(start, images)
    }

    pub fn domain(&self) -> RangeInclusive<usize> {
        self.start..=self.start + self.images.len() - 1
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        i.checked_sub(self.start).and_then(|k| self.images.get(k)).copied()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
}

/// `a_1..a_q` with `a_i = C(q, i)` below `⌈q/2⌉` and `a_i = 3^q + π(i)·c`
/// from `⌈q/2⌉` on, where `c = C(q, ⌈q/2⌉ + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSequence {
    pub q: usize,
    pub pi: Permutation,
    pub a: Vec<BigInt>,
    pub c: BigInt,
}

impl TargetSequence {
    /// `a_i`, 1-indexed.
    pub fn get(&self, i: usize) -> &BigInt {
        &self.a[i - 1]
    }
}

/// The domain `{⌈q/2⌉, ..., q}` the permutation acts on.
pub fn upper_half(q: usize) -> RangeInclusive<usize> {
    q.div_ceil(2)..=q
}

pub fn target_sequence(q: usize, pi: &Permutation) -> Result<TargetSequence> {
    if q < 2 {
        return Err(Error::InvalidSequence(format!("q = {q}; need q >= 2")));
    }
    if pi.domain() != upper_half(q) {
        let (lo, hi) = (q.div_ceil(2), q);
        return Err(Error::InvalidPermutation(format!(
            "expected a permutation of {lo}..={hi}, got one of {:?}",
            pi.domain()
        )));
    }
    let half = q.div_ceil(2);
    let c = binomial(q, half + 1);
    let base: BigInt = Pow::pow(BigInt::from(3), q as u32);
    let a = (1..=q)
        .map(|i| match pi.apply(i) {
            Some(p) if i >= half => &base + &c * p,
            _ => binomial(q, i),
        })
        .collect();
    Ok(TargetSequence { q, pi: pi.clone(), a, c })
}

/// Whether `a_k / C(q, k)` is nondecreasing, with `q = a.len()`.
pub fn ratio_condition(a: &[BigInt]) -> bool {
    let q = a.len();
    (1..q).all(|k| &a[k - 1] * binomial(q, k + 1) <= &a[k] * binomial(q, k))
}

fn pair_sum(a: &[BigInt], k: usize) -> BigInt {
    let q = a.len();
    &a[k - 1] + &a[q - k]
}

/// The ε bound `¼·min |s_ℓ - s_k|` over pairs with different pair sums
/// `s_k = a_k + a_{q-k+1}`; pairs with equal sums are listed separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonBound {
    pub bound: BigRational,
    pub zero_pairs: Vec<(usize, usize)>,
}

pub fn epsilon_bound(a: &[BigInt]) -> Result<EpsilonBound> {
    let q = a.len();
    if q < 2 {
        return Err(Error::InvalidSequence(format!("length {q}; need at least 2")));
    }
    let sums: Vec<BigInt> = (1..=q).map(|k| pair_sum(a, k)).collect();
    let mut min: Option<BigInt> = None;
    let mut zero_pairs = vec![];
    for k in 1..=q {
        for l in k + 1..=q {
            let gap = (&sums[l - 1] - &sums[k - 1]).abs();
            if gap.is_zero() {
                zero_pairs.push((k, l));
            } else if min.as_ref().is_none_or(|m| gap < *m) {
                min = Some(gap);
            }
        }
    }
    let min = min.ok_or(Error::DegenerateSequence)?;
    Ok(EpsilonBound { bound: BigRational::new(min, BigInt::from(4)), zero_pairs })
}

/// A pair `k < ℓ` where the pair-sum order disagrees with `π`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairViolation {
    pub k: usize,
    pub l: usize,
    pub sum_k: BigInt,
    pub sum_l: BigInt,
    /// `k + ℓ = q + 1`: the two pair sums are the same expression.
    pub tie: bool,
}

/// The default range `{⌊q/2⌋ + 2, ..., q}` on which the pair-sum order is claimed.
pub fn default_pair_range(q: usize) -> RangeInclusive<usize> {
    q / 2 + 2..=q
}

/// All `k < ℓ` in `range` where `s_k < s_ℓ` and `π(k) < π(ℓ)` disagree.
pub fn pair_order_violations(
    a: &[BigInt],
    pi: &Permutation,
    range: RangeInclusive<usize>,
) -> Result<Vec<PairViolation>> {
    let q = a.len();
    if !range.is_empty() && !(pi.domain().contains(range.start()) && pi.domain().contains(range.end())) {
        return Err(Error::InvalidSequence(format!("range {range:?} is not inside {:?}", pi.domain())));
    }
    let mut out = vec![];
    for k in range.clone() {
        for l in k + 1..=*range.end() {
            let (sk, sl) = (pair_sum(a, k), pair_sum(a, l));
            let pk = pi.apply(k).expect("range checked");
            let pl = pi.apply(l).expect("range checked");
            if (sk < sl) != (pk < pl) {
                out.push(PairViolation { k, l, sum_k: sk, sum_l: sl, tie: k + l == q + 1 });
            }
        }
    }
    Ok(out)
}

/// True iff `s_k < s_ℓ ⟺ π(k) < π(ℓ)` for all `k < ℓ` in `range`.
pub fn pair_order_check(a: &[BigInt], pi: &Permutation, range: RangeInclusive<usize>) -> Result<bool> {
    Ok(pair_order_violations(a, pi, range)?.is_empty())
}

/// A graph claimed to approximate `T·a` within `T·ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: Graph,
    #[serde(rename = "T", with = "rational_string")]
    pub scale: BigRational,
    #[serde(with = "rational_string")]
    pub epsilon: BigRational,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.trim().parse().map_err(serde::de::Error::custom)
    }
}

impl Certificate {
    pub fn new(graph: Graph, scale: BigRational, epsilon: BigRational) -> Result<Self> {
        if !scale.is_positive() || !epsilon.is_positive() {
            return Err(Error::InvalidCertificate("T and ε must be positive".into()));
        }
        Ok(Certificate { graph, scale, epsilon })
    }
}

/// Whether `|i_k(G)/T - a_k| < ε` for every `1 <= k <= q`.
pub fn certificate_check(cert: &Certificate, a: &[BigInt]) -> Result<bool> {
    if !cert.scale.is_positive() || !cert.epsilon.is_positive() {
        return Err(Error::InvalidCertificate("T and ε must be positive".into()));
    }
    if !cert.graph.is_well_covered() {
        return Err(Error::NotWellCovered);
    }
    let seq = cert.graph.independence_sequence();
    if seq.alpha() != a.len() {
        return Err(Error::IndependenceNumber { expected: a.len(), got: seq.alpha() });
    }
    Ok((1..=a.len()).all(|k| {
        let ratio = BigRational::from_integer(BigInt::from(seq.get(k))) / &cert.scale;
        (ratio - BigRational::from_integer(a[k - 1].clone())).abs() < cert.epsilon
    }))
}

/// `h_k = i_k + i_{d-k}` for `0 <= k <= d`, with `i_j = 0` outside `0..=α`.
pub fn roller_coaster_hvector(iseq: &IndependenceSequence, d: usize) -> Result<Vec<u64>> {
    let alpha = iseq.alpha();
    if d < alpha + 1 {
        return Err(Error::SocleDegree { d, min: alpha + 1 });
    }
    let i = |k: usize| if k <= alpha { iseq.get(k) } else { 0 };
    let h: Vec<u64> = (0..=d).map(|k| i(k) + i(d - k)).collect();
    debug_assert!(h.iter().eq(h.iter().rev()) && h[0] == 1);
    Ok(h)
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses `start:images`, e.g. `3:5 3 4`.
    fn from_str(s: &str) -> Result<Self> {
        let (start, images) =
            s.split_once(':').ok_or_else(|| Error::InvalidPermutation(format!("expected start:images, got {s:?}")))?;
        let start = start.trim().parse().map_err(|e| Error::InvalidPermutation(format!("{start:?}: {e}")))?;
        Self::parse(start, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn random_pi(q: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let mut images: Vec<usize> = upper_half(q).collect();
        images.shuffle(rng);
        Permutation::new(q.div_ceil(2), images).unwrap()
    }

    #[test]
    fn permutations() {
        assert!(Permutation::new(3, vec![5, 3, 4]).is_ok());
        assert!(Permutation::new(3, vec![5, 3, 3]).is_err());
        assert!(Permutation::new(3, vec![6, 3, 4]).is_err());
        let p: Permutation = "3:5,3,4".parse().unwrap();
        assert_eq!(p.apply(3), Some(5));
        assert_eq!(p.apply(6), None);
        assert_eq!(p.to_string(), "5 3 4");
        assert!(Permutation::parse(3, "5 x 4").is_err());
    }

    #[test]
    fn target_sequence_examples() {
        let t = target_sequence(4, &Permutation::identity(upper_half(4))).unwrap();
        assert_eq!(t.a, ints(&[4, 89, 93, 97]));
        assert_eq!(t.c, BigInt::from(4));
        let t = target_sequence(5, &Permutation::identity(upper_half(5))).unwrap();
        assert_eq!(t.a, ints(&[5, 10, 258, 263, 268]));
        assert!(target_sequence(5, &Permutation::identity(2..=5)).is_err());
        assert!(target_sequence(1, &Permutation::identity(1..=1)).is_err());
    }

    #[test]
    fn ratio_condition_examples() {
        assert!(ratio_condition(&ints(&[1, 1])));
        assert!(!ratio_condition(&ints(&[3, 1])));
    }

    #[test]
    fn epsilon_bound_examples() {
        let e = epsilon_bound(&ints(&[4, 89, 93, 97])).unwrap();
        assert_eq!(e.bound, q(81, 4));
        assert_eq!(e.zero_pairs, vec![(1, 4), (2, 3)]);
        assert_eq!(epsilon_bound(&ints(&[2, 2, 2])), Err(Error::DegenerateSequence));
        let t = target_sequence(5, &Permutation::identity(upper_half(5))).unwrap();
        assert!(epsilon_bound(&t.a).unwrap().bound.is_positive());
    }

    #[test]
    fn pair_order_examples() {
        let id = |q| Permutation::identity(upper_half(q));
        let t = target_sequence(8, &id(8)).unwrap();
        assert!(pair_order_check(&t.a, &t.pi, 6..=8).unwrap());

        let t = target_sequence(4, &id(4)).unwrap();
        let bad = pair_order_violations(&t.a, &t.pi, 2..=4).unwrap();
        let tie = bad.iter().find(|v| (v.k, v.l) == (2, 3)).unwrap();
        assert!(tie.tie);
        assert_eq!((tie.sum_k.clone(), tie.sum_l.clone()), (BigInt::from(182), BigInt::from(182)));
        assert!(!pair_order_check(&t.a, &t.pi, 2..=4).unwrap());
        assert!(pair_order_check(&t.a, &t.pi, 3..=3).unwrap());
        assert!(pair_order_check(&t.a, &t.pi, 1..=4).is_err());
    }

    #[test]
    fn ratio_condition_sweep_straddles_ten() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in 2..=20 {
            for _ in 0..200 {
                let pi = random_pi(q, &mut rng);
                let t = target_sequence(q, &pi).unwrap();
                assert!(ratio_condition(&t.a), "q={q} pi={pi}");
            }
        }
    }

    #[test]
    fn pair_order_fails_for_odd_lengths() {
        // q = 5: a_4 + a_2 = a_5 + a_1 whenever π(5) = π(4) + 1
        let t = target_sequence(5, &Permutation::identity(upper_half(5))).unwrap();
        let bad = pair_order_violations(&t.a, &t.pi, default_pair_range(5)).unwrap();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].k, bad[0].l, bad[0].tie), (4, 5, false));
        assert_eq!(bad[0].sum_k, bad[0].sum_l);
        // q = 7: C(7,3) - C(7,1) = 28 exceeds c = C(7,5) = 21, so π(7) = π(5) + 1 reverses the order
        let pi = Permutation::new(4, vec![7, 4, 6, 5]).unwrap();
        let t = target_sequence(7, &pi).unwrap();
        let bad = pair_order_violations(&t.a, &pi, default_pair_range(7)).unwrap();
        assert!(bad.iter().any(|v| (v.k, v.l) == (5, 7) && v.sum_k > v.sum_l));
        for q in (5..=15).step_by(2) {
            let m = (q - 1) / 2;
            let mut images: Vec<usize> = upper_half(q).collect();
            // make π(q) = π(m+2) + 1
            let (k, l) = (m + 2 - upper_half(q).start(), q - upper_half(q).start());
            images.swap(k, l - 1);
            let pi = Permutation::new(*upper_half(q).start(), images).unwrap();
            let t = target_sequence(q, &pi).unwrap();
            assert!(!pair_order_check(&t.a, &pi, default_pair_range(q)).unwrap(), "q={q} pi={pi}");
        }
    }

    #[test]
    fn certificate_examples() {
        let g = complete(2).unwrap().whisker().unwrap();
        let cert = Certificate::new(g.clone(), q(1, 1), q(1, 2)).unwrap();
        assert!(certificate_check(&cert, &ints(&[4, 3])).unwrap());
        // shifted target: off by 2εT rounded up
        assert!(!certificate_check(&cert, &ints(&[5, 4])).unwrap());
        assert_eq!(certificate_check(&cert, &ints(&[4, 3, 1])), Err(Error::IndependenceNumber { expected: 3, got: 2 }));
        let star = crate::graphs::star(3).unwrap();
        let bad = Certificate::new(star, q(1, 1), q(1, 2)).unwrap();
        assert_eq!(certificate_check(&bad, &ints(&[3, 1])), Err(Error::NotWellCovered));
        assert!(Certificate::new(g, q(0, 1), q(1, 2)).is_err());

        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["T"], "1");
        assert_eq!(json["epsilon"], "1/2");
        let back: Certificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn scaled_exact_certificate() {
        // i_k = T·a_k exactly
        let g = complete(3).unwrap().whisker().unwrap();
        let seq = g.independence_sequence();
        // T = 1/2, so a_k = 2·i_k
        let a: Vec<BigInt> = seq.counts()[1..].iter().map(|&c| BigInt::from(2 * c)).collect();
        let cert = Certificate::new(g, q(1, 2), q(1, 1000)).unwrap();
        assert!(certificate_check(&cert, &a).unwrap());
    }

    #[test]
    fn hvector_examples() {
        let w = complete(2).unwrap().whisker().unwrap().independence_sequence();
        assert_eq!(roller_coaster_hvector(&w, 3).unwrap(), vec![1, 7, 7, 1]);
        assert_eq!(roller_coaster_hvector(&w, 2), Err(Error::SocleDegree { d: 2, min: 3 }));
        let h5 = crate::graphs::star(5).unwrap().whisker().unwrap().independence_sequence();
        let h = roller_coaster_hvector(&h5, 6).unwrap();
        assert_eq!(h[1], 27);
        let c = crate::complexes::SimplicialComplex::independence_complex(
            &crate::graphs::star(5).unwrap().whisker().unwrap(),
        );
        assert_eq!(h, crate::perazzo::idealization_hilbert(&c).unwrap().h);
    }

    proptest! {
        #[test]
        fn hvectors_are_palindromic(counts in proptest::collection::vec(1u64..1000, 1..8), extra in 0usize..3) {
            let mut counts = counts;
            counts[0] = 1;
            let iseq = IndependenceSequence::from_counts(counts).unwrap();
            let d = iseq.alpha() + 1 + extra;
            let h = roller_coaster_hvector(&iseq, d).unwrap();
            prop_assert_eq!(h.len(), d + 1);
            prop_assert_eq!(h[0], 1);
            prop_assert_eq!(h[d], 1);
            let rev: Vec<u64> = h.iter().rev().copied().collect();
            prop_assert_eq!(h, rev);
        }

        #[test]
        fn certificates_are_monotone_in_epsilon(n in 1usize..5, num in 1i64..50, den in 1i64..10, bump in 1i64..20) {
            let g = complete(n).unwrap().whisker().unwrap();
            let a: Vec<BigInt> = g.independence_sequence().counts()[1..].iter().map(|&c| BigInt::from(c) + 1).collect();
            let eps = q(num, den);
            let small = Certificate::new(g.clone(), q(1, 1), eps.clone()).unwrap();
            let large = Certificate::new(g, q(1, 1), eps + q(bump, 7)).unwrap();
            if certificate_check(&small, &a).unwrap() {
                prop_assert!(certificate_check(&large, &a).unwrap());
            }
        }

        #[test]
        fn pair_order_holds_on_the_default_range_for_even_lengths(half in 1usize..=10, seed in any::<u64>()) {
            let q = 2 * half;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pi = random_pi(q, &mut rng);
            let t = target_sequence(q, &pi).unwrap();
            prop_assert!(pair_order_check(&t.a, &pi, default_pair_range(q)).unwrap());
        }
    }
}
