//! Exact rank of integer matrices over the rationals and over prime fields.
//!
//! Maximal-rank questions are answered with a modular fast path: a rank
//! computed modulo a prime never exceeds the rational rank, so a full modular
//! rank settles the question. A deficient modular rank is always re-checked
//! with exact integer elimination before it is reported.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Probe primes for the modular fast path.
pub const PROBE_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from equal-length rows. The column count of an empty
    /// row list is zero.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("ragged rows: {} vs {cols}", bad.len())));
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, entries: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// The submatrix with the given row and column indices, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| self.get(r, c))).collect();
        IntegerMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c);
                    let add = a
                        .checked_mul(other.get(k, c))
                        .and_then(|p| p.checked_add(cur))
                        .ok_or_else(|| Error::Overflow("matrix product".into()))?;
                    out.set(r, c, add);
                }
            }
        }
        Ok(out)
    }

    fn max_rank(&self) -> usize {
        self.rows.min(self.cols)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// The field a rank is computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// `0` selects the rationals, anything else must be a prime below `2^32`.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            return Ok(Field::Rationals);
        }
        check_modulus(p)?;
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub field: Field,
    /// True when the rank is exact over `field`.
    pub certified: bool,
}

/// Deterministic primality for 64-bit integers (Miller-Rabin with a fixed base set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn check_modulus(p: u64) -> Result<()> {
    if p >= 1 << 32 {
        return Err(Error::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p.
    let (mut base, mut e, mut r) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Rank over `GF(p)` by Gaussian elimination on residues.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> Result<RankResult> {
    check_modulus(p)?;
    let (rows, cols) = (m.rows, m.cols);
    let pi = p as i64;
    let mut a: Vec<u64> = m.entries.iter().map(|&e| e.rem_euclid(pi) as u64).collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if pr != rank {
            for k in c..cols {
                a.swap(pr * cols + k, rank * cols + k);
            }
        }
        let inv = inverse_mod(a[rank * cols + c], p);
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot = &head[rank * cols + c..(rank + 1) * cols];
        for row in tail.chunks_exact_mut(cols) {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            // row -= (lead / pivot) * pivot_row, written as an addition of p - factor
            let factor = p - lead * inv % p;
            for (x, &y) in row[c..].iter_mut().zip(pivot) {
                if y != 0 {
                    *x = (*x + factor * y) % p;
                }
            }
        }
        rank += 1;
    }
    Ok(RankResult { rank, field: Field::Prime(p), certified: true })
}

/// Exact rank over the rationals.
///
/// Fraction-free elimination on integers: each reduction step replaces a row
/// by an integer combination with the pivot row and then divides out the row
/// content. Runs on `i128` and restarts on arbitrary-precision integers if an
/// intermediate value overflows.
pub fn rank_exact(m: &IntegerMatrix) -> RankResult {
    let rank = match fraction_free_rank::<i128>(m) {
        Some(r) => r,
        None => fraction_free_rank::<BigInt>(m).expect("arbitrary precision cannot overflow"),
    };
    RankResult { rank, field: Field::Rationals, certified: true }
}

/// Exact rank over the rationals by classic Bareiss elimination, where every
/// intermediate entry is a minor of the input. Slower than [`rank_exact`] on
/// large inputs; kept as an independent second route.
pub fn bareiss_rank(m: &IntegerMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| m.row(r).iter().map(|&e| BigInt::from(e)).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| !Zero::is_zero(&a[r][c])) else {
            continue;
        };
        a.swap(pr, rank);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for k in c + 1..cols {
                let v = (&pivot * &row[k] - &lead * &pivot_row[k]) / &prev;
                row[k] = v;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Whether `m` has rank `min(rows, cols)` over the rationals. The returned
/// rank is always exact over the rationals.
pub fn has_maximal_rank(m: &IntegerMatrix) -> (bool, RankResult) {
    let target = m.max_rank();
    let full = RankResult { rank: target, field: Field::Rationals, certified: true };
    if target == 0 {
        return (true, full);
    }
    for p in PROBE_PRIMES {
        let r = rank_mod_p(m, p).expect("probe primes are valid moduli");
        if r.rank == target {
            return (true, full);
        }
    }
    let exact = rank_exact(m);
    (exact.rank == target, exact)
}

/// [`has_maximal_rank`] over an arbitrary field.
pub fn has_maximal_rank_over(m: &IntegerMatrix, field: Field) -> Result<(bool, RankResult)> {
    match field {
        Field::Rationals => Ok(has_maximal_rank(m)),
        Field::Prime(p) => {
            let r = rank_mod_p(m, p)?;
            Ok((r.rank == m.max_rank(), r))
        }
    }
}

/// Rank over an arbitrary field.
pub fn rank_over(m: &IntegerMatrix, field: Field) -> Result<RankResult> {
    match field {
        Field::Rationals => Ok(rank_exact(m)),
        Field::Prime(p) => rank_mod_p(m, p),
    }
}

// Integer arithmetic needed by fraction-free elimination; `None` signals overflow.
trait ExactInt: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn abs_cmp_key(&self) -> u128;
    /// `a * b - c * d`
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn abs_cmp_key(&self) -> u128 {
        self.unsigned_abs()
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        // Entries stay far below i128::MIN in magnitude, checked_mul guarantees that.
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp_key(&self) -> u128 {
        let bits = self.bits();
        if bits >= 128 {
            u128::MAX
        } else {
            u128::try_from(self.abs()).unwrap_or(u128::MAX)
        }
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

fn fraction_free_rank<T: ExactInt>(m: &IntegerMatrix) -> Option<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<T>> = (0..rows).map(|r| m.row(r).iter().map(|&e| T::from_i64(e)).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        // smallest nonzero entry in magnitude keeps the multipliers small
        let Some(pr) = (rank..rows).filter(|&r| !a[r][c].vanishes()).min_by_key(|&r| a[r][c].abs_cmp_key()) else {
            continue;
        };
        a.swap(pr, rank);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].vanishes() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let (pm, rm) = (pivot.div_exact(&g), row[c].div_exact(&g));
            let mut content: Option<T> = None;
            for k in c + 1..cols {
                if pivot_row[k].vanishes() && row[k].vanishes() {
                    continue;
                }
                row[k] = T::cross(&pm, &row[k], &rm, &pivot_row[k])?;
                if !row[k].vanishes() {
                    content = Some(match content {
                        None => row[k].clone(),
                        Some(cur) if cur.is_one() => cur,
                        Some(cur) => cur.gcd(&row[k]),
                    });
                }
            }
            row[c] = T::from_i64(0);
            if let Some(g) = content.filter(|g| !g.is_one()) {
                for x in row[c + 1..].iter_mut() {
                    if !x.vanishes() {
                        *x = x.div_exact(&g);
                    }
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Textbook Gaussian elimination over exact rationals.
    fn rational_rank(m: &IntegerMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> =
            (0..m.rows()).map(|r| m.row(r).iter().map(|&e| BigRational::from_integer(e.into())).collect()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(pr) = (rank..m.rows()).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(pr, rank);
            for r in 0..m.rows() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    let pivot = a[rank].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn modular_examples() {
        assert_eq!(rank_mod_p(&IntegerMatrix::zeros(3, 4), 7).unwrap().rank, 0);
        assert_eq!(rank_mod_p(&IntegerMatrix::identity(3), 5).unwrap().rank, 3);
        assert_eq!(rank_mod_p(&m(&[&[1, 1], &[1, 1]]), 2).unwrap().rank, 1);
        assert_eq!(rank_mod_p(&m(&[&[2, 0], &[0, 1]]), 2).unwrap().rank, 1);
        assert_eq!(rank_mod_p(&m(&[&[-1, 3], &[2, -6]]), 3).unwrap().rank, 1);
        assert_eq!(rank_mod_p(&IntegerMatrix::identity(2), 4), Err(Error::NotPrime(4)));
        assert_eq!(rank_mod_p(&IntegerMatrix::identity(2), 1), Err(Error::NotPrime(1)));
        assert!(matches!(rank_mod_p(&IntegerMatrix::identity(2), 4_294_967_311), Err(Error::ModulusTooLarge(_))));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(rank_exact(&m(&[&[2, 4], &[1, 2]])).rank, 1);
        let vandermonde = m(&[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9]]);
        assert_eq!(rank_exact(&vandermonde).rank, 3);
        assert_eq!(bareiss_rank(&vandermonde), 3);
        assert_eq!(rank_exact(&IntegerMatrix::zeros(0, 5)).rank, 0);
        assert_eq!(rank_exact(&IntegerMatrix::zeros(5, 0)).rank, 0);
        assert!(rank_exact(&vandermonde).certified);
    }

    #[test]
    fn maximal_rank_examples() {
        let (ok, r) = has_maximal_rank(&IntegerMatrix::identity(4));
        assert!(ok);
        assert_eq!(r.rank, 4);
        let (ok, r) = has_maximal_rank(&m(&[&[1, 1], &[1, 1]]));
        assert!(!ok);
        assert_eq!(r, RankResult { rank: 1, field: Field::Rationals, certified: true });
        // a unit minor of size min(r, c) suffices
        let (ok, _) = has_maximal_rank(&m(&[&[1, 0, 5, 7], &[3, 1, 2, 2]]));
        assert!(ok);
        // full over QQ but deficient mod 2
        let (ok, _) = has_maximal_rank_over(&m(&[&[1, 1], &[1, -1]]), Field::Prime(2)).unwrap();
        assert!(!ok);
        assert!(has_maximal_rank(&m(&[&[1, 1], &[1, -1]])).0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // Hilbert-like matrix with huge entries forces the BigInt path.
        let big = i64::MAX / 3;
        let a = m(&[&[big, big - 1, 7], &[big - 5, big, 11], &[3, big - 2, big]]);
        assert!(fraction_free_rank::<i128>(&a).is_none() || rank_exact(&a).rank == 3);
        assert_eq!(rank_exact(&a).rank, rational_rank(&a));
        assert_eq!(bareiss_rank(&a), rational_rank(&a));
    }

    #[test]
    fn primality() {
        for p in PROBE_PRIMES {
            assert!(is_prime(p));
            assert!(p > 1 << 20);
        }
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, spread: i64) -> IntegerMatrix {
        // low-rank products mixed with sparse 0/1 patterns
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(0..=rows.min(cols));
            let a: Vec<i64> = (0..rows * k).map(|_| rng.gen_range(-spread..=spread)).collect();
            let b: Vec<i64> = (0..k * cols).map(|_| rng.gen_range(-spread..=spread)).collect();
            IntegerMatrix::new(rows, k, a).unwrap().mul(&IntegerMatrix::new(k, cols, b).unwrap()).unwrap()
        } else {
            let e = (0..rows * cols).map(|_| i64::from(rng.gen_bool(0.3))).collect();
            IntegerMatrix::new(rows, cols, e).unwrap()
        }
    }

    #[test]
    fn agrees_with_rational_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..400 {
            let (r, c) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
            let a = random_matrix(&mut rng, r, c, 4);
            let expected = rational_rank(&a);
            assert_eq!(rank_exact(&a).rank, expected, "{a:?}");
            assert_eq!(bareiss_rank(&a), expected, "{a:?}");
            assert_eq!(has_maximal_rank(&a).0, expected == r.min(c));
        }
    }

    proptest! {
        #[test]
        fn modular_rank_bounded_by_rational_rank(
            rows in 0usize..8,
            cols in 0usize..8,
            seed in any::<u64>(),
            p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 2_147_483_647]),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, rows, cols, 6);
            prop_assert!(rank_mod_p(&a, p).unwrap().rank <= rank_exact(&a).rank);
        }

        #[test]
        fn rank_invariant_under_permutation_and_transpose(
            rows in 1usize..9,
            cols in 1usize..9,
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, rows, cols, 3);
            let mut rp: Vec<usize> = (0..rows).collect();
            let mut cp: Vec<usize> = (0..cols).collect();
            for i in (1..rows).rev() { rp.swap(i, rng.gen_range(0..=i)); }
            for i in (1..cols).rev() { cp.swap(i, rng.gen_range(0..=i)); }
            let r = rank_exact(&a).rank;
            prop_assert_eq!(rank_exact(&a.select(&rp, &cp)).rank, r);
            prop_assert_eq!(rank_exact(&a.transpose()).rank, r);
            prop_assert_eq!(rank_mod_p(&a.transpose(), 2_147_483_629).unwrap().rank,
                            rank_mod_p(&a, 2_147_483_629).unwrap().rank);
        }
    }
}
