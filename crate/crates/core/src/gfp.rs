//! Dense matrices over `Z/pZ`.
//!
//! Storage is row-major. For `p = 2` each row is packed 64 entries per word
//! and elimination is word-wide XOR; for `p < 256` entries are bytes; larger
//! primes use one `u32` per entry. Elimination always takes the lowest
//! remaining row with a nonzero entry in the current column as pivot, so
//! echelon forms are reproducible.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{inv_mod_p, is_prime};
use crate::rng::{below, rng_for};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Storage {
    Bits { words: usize, data: Vec<u64> },
    Bytes(Vec<u8>),
    Wide(Vec<u32>),
}

/// A dense matrix over `Z/pZ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatGFp {
    p: u32,
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl MatGFp {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::OutOfRange(format!("prime {p} too large for matrix entries")));
        }
        let len = rows.checked_mul(cols).ok_or(Error::OutOfRange("matrix too large".into()))?;
        let storage = if p == 2 {
            let words = cols.div_ceil(64);
            Storage::Bits { words, data: vec![0; rows * words] }
        } else if p < 256 {
            Storage::Bytes(vec![0; len])
        } else {
            Storage::Wide(vec![0; len])
        };
        Ok(MatGFp { p: p as u32, rows, cols, storage })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Build from a closure; values are reduced mod `p`.
    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Result<Self> {
        let mut m = Self::zeros(p, rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                let v = (f(i, j) % p) as u32;
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Build from explicit rows; every row must have the same length and
    /// entries below `p`.
    pub fn from_rows<R: AsRef<[u32]>>(p: u64, cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            for (j, &v) in r.iter().enumerate() {
                if v as u64 >= p {
                    return Err(Error::OutOfRange(format!("entry {v} >= p = {p}")));
                }
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Uniformly random matrix, reproducible from `seed`.
    pub fn random(p: u64, rows: usize, cols: usize, seed: u64) -> Result<Self> {
        let mut rng = rng_for(seed, 0);
        Self::from_fn(p, rows, cols, |_, _| below(&mut rng, p))
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_packed(&self) -> bool {
        matches!(self.storage, Storage::Bits { .. })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i < self.rows && j < self.cols);
        match &self.storage {
            Storage::Bits { words, data } => ((data[i * words + j / 64] >> (j % 64)) & 1) as u32,
            Storage::Bytes(d) => d[i * self.cols + j] as u32,
            Storage::Wide(d) => d[i * self.cols + j],
        }
    }

    /// Set entry `(i, j)`; `v` is reduced mod `p`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(i < self.rows && j < self.cols);
        let v = v % self.p;
        let cols = self.cols;
        match &mut self.storage {
            Storage::Bits { words, data } => {
                let w = &mut data[i * *words + j / 64];
                let mask = 1u64 << (j % 64);
                if v == 1 {
                    *w |= mask;
                } else {
                    *w &= !mask;
                }
            }
            Storage::Bytes(d) => d[i * cols + j] = v as u8,
            Storage::Wide(d) => d[i * cols + j] = v,
        }
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// All entries as unpacked rows.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Bits { data, .. } => data.iter().all(|&w| w == 0),
            Storage::Bytes(d) => d.iter().all(|&v| v == 0),
            Storage::Wide(d) => d.iter().all(|&v| v == 0),
        }
    }

    pub fn transpose(&self) -> MatGFp {
        let mut t = Self::zeros(self.p as u64, self.cols, self.rows).expect("same prime");
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v != 0 {
                    t.set(j, i, v);
                }
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &MatGFp) -> Result<MatGFp> {
        if self.p != other.p {
            return Err(Error::InvalidContext("matrices over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.p as u64;
        let rhs = other.to_rows();
        let mut out = Self::zeros(p, self.rows, other.cols)?;
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (l, r) in rhs.iter().enumerate() {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                for (s, &b) in acc.iter_mut().zip(r) {
                    *s = (*s + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                if v != 0 {
                    out.set(i, j, v as u32);
                }
            }
        }
        Ok(out)
    }

    /// Stack `self` above `other`.
    pub fn vstack(&self, other: &MatGFp) -> Result<MatGFp> {
        if self.p != other.p {
            return Err(Error::InvalidContext("matrices over different fields".into()));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let storage = match (&self.storage, &other.storage) {
            (Storage::Bits { words, data: a }, Storage::Bits { data: b, .. }) => {
                Storage::Bits { words: *words, data: [a.as_slice(), b].concat() }
            }
            (Storage::Bytes(a), Storage::Bytes(b)) => Storage::Bytes([a.as_slice(), b].concat()),
            (Storage::Wide(a), Storage::Wide(b)) => Storage::Wide([a.as_slice(), b].concat()),
            _ => unreachable!("storage kind is determined by p"),
        };
        Ok(MatGFp { p: self.p, rows: self.rows + other.rows, cols: self.cols, storage })
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> MatGFp {
        let mut out = Self::zeros(self.p as u64, self.rows, cols.len()).expect("same prime");
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                let v = self.get(i, j);
                if v != 0 {
                    out.set(i, jj, v);
                }
            }
        }
        out
    }

    /// Rank over `Z/pZ`.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate(false)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (MatGFp, Vec<usize>) {
        let mut work = self.clone();
        let r = work.eliminate(true);
        let pivots = work.pivot_columns(r);
        (work, pivots)
    }

    /// Coefficients `c` with `c · self = v`, or `None` when `v` is not in the
    /// row space. The certificate is re-multiplied before it is returned.
    pub fn in_span(&self, v: &[u32]) -> Result<Option<Vec<u32>>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.p as u64;
        if let Some(bad) = v.iter().find(|&&x| x as u64 >= p) {
            return Err(Error::OutOfRange(format!("entry {bad} >= p = {p}")));
        }
        // Solve selfᵀ c = v through the echelon form of [selfᵀ | v].
        let m = self.rows;
        let mut aug = Self::zeros(p, self.cols, m + 1)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x != 0 {
                    aug.set(j, i, x);
                }
            }
        }
        for (j, &x) in v.iter().enumerate() {
            if x != 0 {
                aug.set(j, m, x);
            }
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&m) {
            return Ok(None);
        }
        let mut c = vec![0u32; m];
        for (r, &col) in pivots.iter().enumerate() {
            c[col] = red.get(r, m);
        }
        if self.combine_rows(&c) != v {
            return Err(Error::Invariant("span certificate does not reproduce the vector".into()));
        }
        Ok(Some(c))
    }

    /// `Σ_i c_i · row_i`.
    pub fn combine_rows(&self, c: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + ci as u64 * self.get(i, j) as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// True when both matrices have the same row space.
    pub fn same_row_space(&self, other: &MatGFp) -> Result<bool> {
        let r = self.rank();
        Ok(r == other.rank() && self.vstack(other)?.rank() == r)
    }

    fn pivot_columns(&self, rank: usize) -> Vec<usize> {
        let mut pivots = Vec::with_capacity(rank);
        let mut j = 0;
        for i in 0..rank {
            while self.get(i, j) == 0 {
                j += 1;
            }
            pivots.push(j);
        }
        pivots
    }

    /// In-place elimination; with `reduce`, also clears above pivots and
    /// scales them to one. Returns the rank.
    fn eliminate(&mut self, reduce: bool) -> usize {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        match &mut self.storage {
            Storage::Bits { words, data } => eliminate_bits(data, rows, cols, *words, reduce),
            Storage::Bytes(d) => eliminate_dense(d, rows, cols, p, reduce),
            Storage::Wide(d) => eliminate_dense(d, rows, cols, p, reduce),
        }
    }
}

fn eliminate_bits(data: &mut [u64], rows: usize, cols: usize, words: usize, reduce: bool) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (w, mask) = (c / 64, 1u64 << (c % 64));
        let Some(piv) = (r..rows).find(|&i| data[i * words + w] & mask != 0) else {
            continue;
        };
        if piv != r {
            for t in 0..words {
                data.swap(piv * words + t, r * words + t);
            }
        }
        let (head, tail) = data.split_at_mut((r + 1) * words);
        let pivot_row = &head[r * words..];
        for row in tail.chunks_exact_mut(words) {
            if row[w] & mask != 0 {
                for (a, b) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                    *a ^= b;
                }
            }
        }
        if reduce {
            let (head, tail) = data.split_at_mut(r * words);
            let pivot_row = &tail[..words];
            for row in head.chunks_exact_mut(words) {
                if row[w] & mask != 0 {
                    for (a, b) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                        *a ^= b;
                    }
                }
            }
        }
        r += 1;
    }
    r
}

trait Cell: Copy + Eq {
    /// Per-elimination lookup state.
    type Mul;
    fn get(self) -> u32;
    fn put(v: u32) -> Self;
    fn mul_state(p: u32) -> Self::Mul;
    /// `row[idx[t]] -= f · val[t]` for every `t`.
    fn axpy(m: &Self::Mul, row: &mut [Self], idx: &[u32], val: &[Self], f: u32, p: u32);
    /// `dst[j] -= f · src[j]` over the whole slices.
    fn axpy_dense(m: &Self::Mul, dst: &mut [Self], src: &[Self], f: u32, p: u32) {
        let idx: Vec<u32> = (0..src.len() as u32).collect();
        Self::axpy(m, dst, &idx, src, f, p);
    }
}

impl Cell for u8 {
    /// `(p − f)·b mod p` at `f·p + b`, then `s mod p` for `s < 2p` at `p² + s`.
    type Mul = Vec<u8>;
    #[inline]
    fn get(self) -> u32 {
        self as u32
    }
    #[inline]
    fn put(v: u32) -> Self {
        v as u8
    }
    fn mul_state(p: u32) -> Vec<u8> {
        let p = p as usize;
        let mut t = vec![0u8; p * p + 2 * p];
        for f in 0..p {
            for b in 0..p {
                t[f * p + b] = ((p - f) * b % p) as u8;
            }
        }
        for s in 0..2 * p {
            t[p * p + s] = (s % p) as u8;
        }
        t
    }
    #[inline]
    fn axpy(m: &Vec<u8>, row: &mut [u8], idx: &[u32], val: &[u8], f: u32, p: u32) {
        // Lookups only: a data-dependent branch here mispredicts half the time.
        let p = p as usize;
        let f = f as usize;
        let prod = &m[f * p..(f + 1) * p];
        let red = &m[p * p..p * p + 2 * p];
        for (&j, &b) in idx.iter().zip(val) {
            let a = &mut row[j as usize];
            *a = red[*a as usize + prod[b as usize] as usize];
        }
    }
    #[inline]
    fn axpy_dense(_: &Vec<u8>, dst: &mut [u8], src: &[u8], f: u32, p: u32) {
        // a + (p − f)·b < 2^16; the quotient by `m = ⌈2^16 / p⌉` is exact or
        // one too large, and the sign fix-up corrects the latter.
        let neg = (p - f) as u16;
        let m = 65536u32.div_ceil(p);
        let p = p as u16;
        for (a, &b) in dst.iter_mut().zip(src) {
            let x = (*a as u16).wrapping_add(neg.wrapping_mul(b as u16));
            let q = ((x as u32 * m) >> 16) as u16;
            let r = x.wrapping_sub(q.wrapping_mul(p));
            *a = r.wrapping_add(p & (((r as i16) >> 15) as u16)) as u8;
        }
    }
}

impl Cell for u32 {
    type Mul = ();
    #[inline]
    fn get(self) -> u32 {
        self
    }
    #[inline]
    fn put(v: u32) -> Self {
        v
    }
    fn mul_state(_: u32) {}
    #[inline(always)]
    fn axpy(_: &(), row: &mut [u32], idx: &[u32], val: &[u32], f: u32, p: u32) {
        let neg = (p - f) as u64;
        let p64 = p as u64;
        for (&j, &b) in idx.iter().zip(val) {
            let a = &mut row[j as usize];
            *a = ((*a as u64 + neg * b as u64) % p64) as u32;
        }
    }
}

fn eliminate_dense<T: Cell>(data: &mut [T], rows: usize, cols: usize, p: u32, reduce: bool) -> usize {
    let mul = T::mul_state(p);
    let mut idx: Vec<u32> = Vec::with_capacity(cols);
    let mut val: Vec<T> = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| data[i * cols + c].get() != 0) else {
            continue;
        };
        if piv != r {
            for t in c..cols {
                data.swap(piv * cols + t, r * cols + t);
            }
        }
        // Normalize the pivot to one.
        let inv = inv_mod_p(data[r * cols + c].get() as u64, p as u64);
        if inv != 1 {
            for t in c..cols {
                let v = data[r * cols + t].get() as u64;
                data[r * cols + t] = T::put((v * inv % p as u64) as u32);
            }
        }
        // Rows are sparse here; touch only the pivot row's support.
        idx.clear();
        val.clear();
        for (t, &v) in data[r * cols..(r + 1) * cols].iter().enumerate().skip(c) {
            if v.get() != 0 {
                idx.push(t as u32);
                val.push(v);
            }
        }
        // Sparse pivot rows go by their support, dense ones by the full tail.
        let dense = 4 * idx.len() > cols - c;
        let (head, tail) = data.split_at_mut((r + 1) * cols);
        let (above, pivot_row) = head.split_at_mut(r * cols);
        let pivot_row = &pivot_row[c..];
        let apply = |row: &mut [T]| {
            let f = row[c].get();
            if f != 0 {
                if dense {
                    T::axpy_dense(&mul, &mut row[c..], pivot_row, f, p);
                } else {
                    T::axpy(&mul, row, &idx, &val, f, p);
                }
            }
        };
        tail.chunks_exact_mut(cols).for_each(apply);
        if reduce {
            above.chunks_exact_mut(cols).for_each(apply);
        }
        r += 1;
    }
    r
}

/// Rank by plain elimination on unpacked rows; the reference for the packed paths.
pub fn rank_reference(m: &MatGFp) -> usize {
    let p = m.p();
    let mut rows: Vec<Vec<u64>> = m.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod_p(rows[rank][c], p);
        let pivot: Vec<u64> = rows[rank].iter().map(|&v| v * inv % p).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f != 0 {
                for (a, &b) in row.iter_mut().zip(&pivot) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dump format: a `p rows cols` header line, then one line per row of
/// space-separated entries.
impl fmt::Display for MatGFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(MatGFp::identity(2, 4).unwrap().rank(), 4);
        assert_eq!(MatGFp::from_fn(3, 3, 3, |_, _| 1).unwrap().rank(), 1);
        assert_eq!(MatGFp::zeros(5, 3, 7).unwrap().rank(), 0);
        assert_eq!(MatGFp::zeros(4, 1, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn rref_examples() {
        let id = MatGFp::identity(3, 3).unwrap();
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = MatGFp::zeros(2, 2, 3).unwrap();
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let m = MatGFp::from_rows(2, 2, &[[1, 1], [1, 1]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(r.to_rows(), vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_scales_pivots() {
        let m = MatGFp::from_rows(5, 3, &[[2, 4, 1], [3, 2, 0]]).unwrap();
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.get(0, 0), 1);
        assert_eq!(r.get(0, 1), 0);
        assert_eq!(r.get(1, 1), 1);
        assert_eq!(r.rref().0, r);
    }

    #[test]
    fn in_span_examples() {
        let m = MatGFp::from_rows(3, 3, &[[1, 2, 0], [0, 1, 1]]).unwrap();
        let c = m.in_span(&[1, 2, 0]).unwrap().unwrap();
        assert_eq!(m.combine_rows(&c), vec![1, 2, 0]);
        assert_eq!(m.in_span(&[0, 0, 0]).unwrap(), Some(vec![0, 0]));
        assert_eq!(m.in_span(&[0, 0, 1]).unwrap(), None);
        assert!(m.in_span(&[0, 0]).is_err());
        let c = m.in_span(&[2, 2, 1]).unwrap().unwrap();
        assert_eq!(m.combine_rows(&c), vec![2, 2, 1]);
    }

    #[test]
    fn wide_prime_storage() {
        let m = MatGFp::from_rows(257, 2, &[[256, 1], [1, 256]]).unwrap();
        assert!(!m.is_packed());
        assert_eq!(m.rank(), 1);
        assert_eq!(rank_reference(&m), 1);
    }

    #[test]
    fn packed_bits_across_words() {
        let m = MatGFp::from_fn(2, 70, 130, |i, j| u64::from(j == 2 * i || j == 129)).unwrap();
        assert!(m.is_packed());
        assert_eq!(m.rank(), rank_reference(&m));
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn dump_format() {
        let m = MatGFp::from_rows(3, 2, &[[1, 2], [0, 1]]).unwrap();
        assert_eq!(alloc::string::ToString::to_string(&m), "3 2 2\n1 2\n0 1\n");
    }
}
