//! Exact integer and modular linear algebra.
//!
//! Determinants are computed with fraction-free (Bareiss) elimination over
//! arbitrary-precision integers. Ranks modulo a prime use ordinary Gaussian
//! elimination over `Z/pZ`. [`generates_z`] decides whether a finite set of
//! integer vectors generates `Z^n` as an additive group by reducing the
//! question to finitely many primes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix::from_big_rows(big)
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        let n = rows.len();
        Ok(IntMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], dim: usize) -> Result<Self> {
        let mut m = IntMatrix::zeros(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: col.len() });
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> IntMatrix {
        let m = BigInt::from(m);
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.mod_floor(&m)).collect() }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Exact determinant by Bareiss elimination.
pub fn det(matrix: &IntMatrix) -> Result<BigInt> {
    if !matrix.is_square() {
        return Err(Error::NotSquare { rows: matrix.rows, cols: matrix.cols });
    }
    let n = matrix.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = matrix.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact division: every leading minor divides the next
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization of `|k|` by trial division, with multiplicity and in
/// increasing order.
pub fn prime_factors(k: &BigInt) -> Result<Vec<u64>> {
    if k.is_zero() {
        return Err(Error::Zero);
    }
    let mut n: BigUint = k.magnitude().clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    // big-integer trial division until the cofactor fits in 64 bits
    while n.to_u64().is_none() {
        let big_d = BigUint::from(d);
        if &big_d * &big_d > n {
            break;
        }
        while (&n % &big_d).is_zero() {
            out.push(d);
            n /= &big_d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if let Some(mut small) = n.to_u64() {
        while (d as u128) * (d as u128) <= small as u128 {
            while small % d == 0 {
                out.push(d);
                small /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if small > 1 {
            out.push(small);
        }
        return Ok(out);
    }
    Err(Error::Unsupported(format!("prime factor {n} exceeds 64 bits")))
}

/// An ordered list of integer vectors of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntVectorSet {
    dim: usize,
    #[serde(serialize_with = "bigint_json::rows")]
    vectors: Vec<Vec<BigInt>>,
}

impl IntVectorSet {
    pub fn new(dim: usize, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        Ok(IntVectorSet { dim, vectors })
    }

    pub fn from_i64(dim: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let vectors = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntVectorSet::new(dim, vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Row-echelon basis over `Z/pZ`, filled one vector at a time.
#[derive(Debug, Clone)]
pub(crate) struct EchelonModP {
    p: u64,
    dim: usize,
    // (pivot column, row normalized so the pivot is 1)
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonModP {
    pub(crate) fn new(dim: usize, p: u64) -> Self {
        EchelonModP { p, dim, rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p as u128;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                let sub = (c as u128 * *r as u128) % p;
                *x = ((*x as u128 + p - sub) % p) as u64;
            }
        }
        v
    }

    /// Whether `v` (entries already in `[0, p)`) lies in the current span.
    pub(crate) fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds `v` (entries already in `[0, p)`); returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = mod_inverse_u64(v[pivot], self.p).expect("p is prime");
        for x in v.iter_mut() {
            *x = ((*x as u128 * inv as u128) % self.p as u128) as u64;
        }
        // keep earlier rows reduced against the new pivot
        let p = self.p as u128;
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    let sub = (c as u128 * *r as u128) % p;
                    *x = ((*x as u128 + p - sub) % p) as u64;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

fn reduce_vec(v: &[BigInt], p: u64) -> Vec<u64> {
    let big_p = BigInt::from(p);
    v.iter().map(|x| x.mod_floor(&big_p).to_u64().expect("residue fits")).collect()
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Rank of the vectors reduced modulo the prime `p`.
pub fn rank_mod_p(set: &IntVectorSet, p: u64) -> Result<usize> {
    check_prime(p)?;
    let mut echelon = EchelonModP::new(set.dim, p);
    for v in &set.vectors {
        echelon.insert(reduce_vec(v, p));
        if echelon.is_full() {
            break;
        }
    }
    Ok(echelon.rank())
}

/// Whether the vectors reduced modulo `p` generate `(Z/pZ)^n`.
pub fn generates_mod_p(set: &IntVectorSet, p: u64) -> Result<bool> {
    Ok(rank_mod_p(set, p)? == set.dim)
}

/// Outcome of [`generates_z`] together with the data needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationCertificate {
    pub answer: bool,
    pub initial_prime: u64,
    /// Positions in the input of the basis chosen modulo the initial prime.
    pub basis_indices: Vec<usize>,
    #[serde(serialize_with = "bigint_json::rows")]
    pub basis: Vec<Vec<BigInt>>,
    /// Integer determinant of the basis, when a basis exists.
    #[serde(serialize_with = "bigint_json::option")]
    pub k: Option<BigInt>,
    pub primes_checked: Vec<u64>,
    pub failing_prime: Option<u64>,
}

pub const INITIAL_PRIME: u64 = 2;

/// Decides whether `set` generates `Z^n` as an additive group.
///
/// First the set must span `(Z/2Z)^n`. If it does, the first `n` vectors
/// (in input order) that are independent modulo 2 form a basis with integer
/// determinant `k != 0`; the set then spans `(Z/qZ)^n` for every prime `q`
/// not dividing `k`, so only the prime divisors of `k` remain to be checked.
pub fn generates_z(set: &IntVectorSet) -> Result<GenerationCertificate> {
    two_stage_generation(set.dim, &set.vectors, |p| generates_mod_p(set, p))
}

/// The two-stage decision with the per-prime test supplied by the caller.
///
/// `candidates` must contain a basis modulo [`INITIAL_PRIME`] whenever
/// `spans_mod(INITIAL_PRIME)` holds; `spans_mod(p)` answers whether the full
/// (possibly infinite) family spans `(Z/pZ)^n`.
pub(crate) fn two_stage_generation<F>(
    dim: usize,
    candidates: &[Vec<BigInt>],
    mut spans_mod: F,
) -> Result<GenerationCertificate>
where
    F: FnMut(u64) -> Result<bool>,
{
    if dim == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    if let Some(v) = candidates.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
    }
    let p = INITIAL_PRIME;
    let mut cert = GenerationCertificate {
        answer: false,
        initial_prime: p,
        basis_indices: Vec::new(),
        basis: Vec::new(),
        k: None,
        primes_checked: vec![p],
        failing_prime: None,
    };
    if !spans_mod(p)? {
        cert.failing_prime = Some(p);
        return Ok(cert);
    }

    let mut echelon = EchelonModP::new(dim, p);
    for (i, v) in candidates.iter().enumerate() {
        if echelon.insert(reduce_vec(v, p)) {
            cert.basis_indices.push(i);
            cert.basis.push(v.clone());
            if echelon.is_full() {
                break;
            }
        }
    }
    if !echelon.is_full() {
        return Err(Error::Internal(format!(
            "candidate vectors have rank {} < {dim} modulo {p} although the family spans",
            echelon.rank()
        )));
    }

    let k = det(&IntMatrix::from_columns(&cert.basis, dim)?)?;
    debug_assert!(!k.is_zero());
    let mut primes = prime_factors(&k)?;
    primes.dedup();
    cert.k = Some(k);
    for q in primes {
        cert.primes_checked.push(q);
        if !spans_mod(q)? {
            cert.failing_prime = Some(q);
            return Ok(cert);
        }
    }
    cert.answer = true;
    Ok(cert)
}

/// Inverse of `matrix` modulo `m`, via the adjugate.
pub fn inverse_mod_m(matrix: &IntMatrix, m: u64) -> Result<IntMatrix> {
    if !matrix.is_square() {
        return Err(Error::NotSquare { rows: matrix.rows, cols: matrix.cols });
    }
    if m == 0 {
        return Err(Error::BadModulus { min: 1, got: m });
    }
    let n = matrix.rows;
    let big_m = BigInt::from(m);
    let d = det(matrix)?.mod_floor(&big_m);
    let g = d.gcd(&big_m);
    if !g.is_one() {
        return Err(Error::NotInvertibleMod { modulus: m, gcd: g.to_u64().unwrap_or(m) });
    }
    let d_inv = {
        let e = d.extended_gcd(&big_m);
        e.x.mod_floor(&big_m)
    };
    let mut inv = IntMatrix::zeros(n, n);
    if n == 1 {
        inv.data[0] = d_inv;
        return Ok(inv);
    }
    for i in 0..n {
        for j in 0..n {
            let cofactor = det(&matrix.minor(i, j))?;
            let signed = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
            // adjugate is the transposed cofactor matrix
            inv.data[j * n + i] = (signed * &d_inv).mod_floor(&big_m);
        }
    }
    Ok(inv)
}

/// Serializes a big integer as a JSON number when it fits in 64 bits, and as
/// a decimal string otherwise.
pub(crate) mod bigint_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::ser::{Serialize, SerializeSeq, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(x),
        }
    }

    struct Num<'a>(&'a BigInt);

    impl Serialize for Num<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize(self.0, s)
        }
    }

    struct Row<'a>(&'a [BigInt]);

    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(self.0.iter().map(Num))
        }
    }

    pub fn option<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in rows {
            seq.serialize_element(&Row(r))?;
        }
        seq.end()
    }
}

pub(crate) fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn set(dim: usize, v: &[&[i64]]) -> IntVectorSet {
        IntVectorSet::from_i64(dim, &v.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&m(&[&[1, 1, 1], &[0, 2, 1], &[1, 0, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(det(&m(&[&[1, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 1], &[1, 1]])).unwrap(), BigInt::from(0));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(det(&m(&[&[0, 2, 3], &[4, 0, 6], &[7, 8, 0]])).unwrap(), BigInt::from(180));
        assert_eq!(det(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn det_rejects_non_square() {
        assert_eq!(det(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn det_exceeds_64_bits() {
        let big = 1i64 << 40;
        let d = det(&m(&[&[big, 0], &[0, big]])).unwrap();
        assert_eq!(d, BigInt::from(1u128 << 80));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(&set(3, &[&[1, 1, 0], &[1, 1, 1]]), 2).unwrap(), 2);
        assert_eq!(rank_mod_p(&set(3, &[&[1, 1, 0], &[1, 1, 1], &[1, 0, 0]]), 2).unwrap(), 3);
        assert_eq!(rank_mod_p(&set(3, &[]), 5).unwrap(), 0);
        assert_eq!(rank_mod_p(&set(2, &[&[3, 6]]), 3).unwrap(), 0);
        assert_eq!(rank_mod_p(&set(2, &[&[1, 1]]), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn generates_mod_p_examples() {
        assert!(!generates_mod_p(&set(3, &[&[1, 1, 0], &[1, 1, 1]]), 2).unwrap());
        for p in [2, 3, 5, 7] {
            assert!(generates_mod_p(&set(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), p).unwrap());
        }
        assert!(generates_mod_p(&set(3, &[&[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]), 3).unwrap());
    }

    #[test]
    fn generates_z_examples() {
        let cx = generates_z(&set(3, &[&[1, 1, 0], &[1, 1, 1]])).unwrap();
        assert!(!cx.answer);
        assert_eq!(cx.failing_prime, Some(2));
        assert_eq!(cx.primes_checked, vec![2]);

        let trib = generates_z(&set(3, &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]])).unwrap();
        assert!(trib.answer);
        assert_eq!(trib.k, Some(BigInt::from(1)));
        assert_eq!(trib.basis_indices, vec![0, 1, 2]);
        assert_eq!(trib.primes_checked, vec![2]);

        let even = generates_z(&set(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert!(!even.answer);
        assert_eq!(even.failing_prime, Some(2));
    }

    #[test]
    fn generates_z_checks_divisors_of_the_basis_determinant() {
        // basis (1,0),(0,3) has k = 3; (0,1) fixes prime 3
        let yes = generates_z(&set(2, &[&[1, 0], &[0, 3], &[0, 1]])).unwrap();
        assert!(yes.answer);
        assert_eq!(yes.basis_indices, vec![0, 1]);
        assert_eq!(yes.k, Some(BigInt::from(3)));
        assert_eq!(yes.primes_checked, vec![2, 3]);

        let no = generates_z(&set(2, &[&[1, 0], &[0, 3], &[0, 6]])).unwrap();
        assert!(!no.answer);
        assert_eq!(no.failing_prime, Some(3));
    }

    #[test]
    fn generates_z_errors() {
        assert!(matches!(
            IntVectorSet::from_i64(2, &[vec![1, 2, 3]]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(generates_z(&set(0, &[])).is_err());
    }

    #[test]
    fn inverse_examples() {
        for modulus in [2, 7, 50] {
            assert_eq!(inverse_mod_m(&IntMatrix::identity(3), modulus).unwrap(), IntMatrix::identity(3));
        }
        assert_eq!(inverse_mod_m(&m(&[&[1, 1], &[1, 0]]), 5).unwrap(), m(&[&[0, 1], &[1, 4]]));
        assert_eq!(inverse_mod_m(&m(&[&[1, 1], &[1, 1]]), 2), Err(Error::NotInvertibleMod { modulus: 2, gcd: 2 }));
        assert_eq!(inverse_mod_m(&m(&[&[3]]), 7).unwrap(), m(&[&[5]]));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(prime_factors(&BigInt::from(12)).unwrap(), vec![2, 2, 3]);
        assert_eq!(prime_factors(&BigInt::from(1)).unwrap(), Vec::<u64>::new());
        assert_eq!(prime_factors(&BigInt::from(-7)).unwrap(), vec![7]);
        assert_eq!(prime_factors(&BigInt::from(0)), Err(Error::Zero));
        assert_eq!(prime_factors(&BigInt::from(1_000_003u64 * 97)).unwrap(), vec![97, 1_000_003]);
    }

    #[test]
    fn echelon_membership() {
        let mut e = EchelonModP::new(3, 3);
        assert!(e.insert(vec![1, 2, 0]));
        assert!(!e.insert(vec![2, 1, 0]));
        assert!(e.contains(&[2, 1, 0]));
        assert!(!e.contains(&[0, 0, 1]));
        assert!(e.insert(vec![0, 1, 1]));
        assert_eq!(e.rank(), 2);
    }
}
