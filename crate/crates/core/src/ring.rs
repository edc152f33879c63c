//! Arithmetic in `R = Z/p^kZ` and the index codecs for `R^n`.
//!
//! Elements are stored as their canonical representative in `[0, p^k)`.
//! Points of `R^n` are encoded as `Σ x_i · (p^k)^i` with coordinate 1 as the
//! least significant digit; every matrix row/column order and every file
//! format in this workspace depends on that ordering.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// `C(a, b) mod p` for single digits `a, b < p`.
fn digit_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let m = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..b {
        num = num * ((a - i) as u128) % m;
        den = den * ((i + 1) as u128) % m;
    }
    (num * inv_mod_p(den as u64, p) as u128 % m) as u64
}

/// `C(x, m) mod p` by Lucas's theorem: the product of digitwise binomials.
///
/// `C(a, b) = 0` for `a < b` and `C(0, 0) = 1`.
pub fn binom_mod_p(mut x: u64, mut m: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while m > 0 {
        let (xd, md) = (x % p, m % p);
        if md > xd {
            return 0;
        }
        acc = (acc as u128 * digit_binom(xd, md, p) as u128 % p as u128) as u64;
        x /= p;
        m /= p;
    }
    acc % p
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binom_u128(n: u128, r: u128) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc·(n-i)/(i+1) is exact; divide by the gcd first so the product stays small.
        let g = gcd(acc, i + 1);
        let (a, d) = (acc / g, (i + 1) / g);
        let t = (n - i) / d;
        acc = a.checked_mul(t)?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// An element of `Z/p^kZ`, stored as its representative in `[0, p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RingElem(u64);

impl RingElem {
    pub fn value(self) -> u64 {
        self.0
    }
}

/// A point of `R^n` (or of `R_ℓ^n` after projection), as a coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point(pub Vec<u64>);

impl Point {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<u64>> for Point {
    fn from(v: Vec<u64>) -> Self {
        Point(v)
    }
}

/// The ambient parameters `(p, k, n)` with `p^k` and `p^(kn)` cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RingCtx {
    p: u64,
    k: u32,
    n: usize,
    pk: u64,
    size: usize,
}

impl RingCtx {
    pub fn new(p: u64, k: u32, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidContext("exponent k must be at least 1".into()));
        }
        if n == 0 {
            return Err(Error::InvalidContext("dimension n must be at least 1".into()));
        }
        let overflow = Error::Overflow { p, k, n };
        let pk = p.checked_pow(k).ok_or(overflow.clone())?;
        let mut size: usize = 1;
        for _ in 0..n {
            size = size.checked_mul(usize::try_from(pk).map_err(|_| overflow.clone())?).ok_or(overflow.clone())?;
        }
        Ok(RingCtx { p, k, n, pk, size })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// `p^k`, the ring size.
    pub fn pk(&self) -> u64 {
        self.pk
    }
    /// `p^(kn)`, the number of points of `R^n`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Same `(p, k)` in another dimension.
    pub fn with_dim(&self, n: usize) -> Result<Self> {
        RingCtx::new(self.p, self.k, n)
    }

    /// Same `(p, n)` with another exponent.
    pub fn with_exponent(&self, k: u32) -> Result<Self> {
        RingCtx::new(self.p, k, self.n)
    }

    /// `p^ℓ` for `0 ≤ ℓ ≤ k`.
    pub fn p_pow(&self, l: u32) -> u64 {
        self.p.pow(l)
    }

    pub fn elem(&self, v: u64) -> RingElem {
        RingElem(v % self.pk)
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        RingElem(self.add_raw(a.0, b.0))
    }
    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        RingElem(self.sub_raw(a.0, b.0))
    }
    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        RingElem(self.mul_raw(a.0, b.0))
    }
    pub fn neg(&self, a: RingElem) -> RingElem {
        RingElem(self.sub_raw(0, a.0))
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.pk {
            s - self.pk
        } else {
            s
        }
    }
    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.pk - b
        }
    }
    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.pk as u128) as u64
    }

    /// The base-`p` digits `(x_0, …, x_{k-1})`, least significant first.
    pub fn digits(&self, x: RingElem) -> Vec<u64> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<RingElem> {
        if digits.len() != self.k as usize {
            return Err(Error::DimensionMismatch { expected: self.k as usize, found: digits.len() });
        }
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            if d >= self.p {
                return Err(Error::OutOfRange(alloc::format!("digit {d} >= p = {}", self.p)));
            }
            v = v * self.p + d;
        }
        Ok(RingElem(v))
    }

    /// Largest `j ≤ k` with `p^j | a`; `k` for `a = 0`.
    pub fn valuation(&self, a: RingElem) -> u32 {
        self.valuation_raw(a.0)
    }

    pub(crate) fn valuation_raw(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut j = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            j += 1;
        }
        j
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        !a.0.is_multiple_of(self.p)
    }

    /// Inverse in `R`; errors when `a` is not a unit.
    pub fn inverse(&self, a: RingElem) -> Result<RingElem> {
        self.inverse_raw(a.0).map(RingElem)
    }

    pub(crate) fn inverse_raw(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::NotUnit(a));
        }
        // Extended Euclid over i128.
        let (mut old_r, mut r) = (a as i128, self.pk as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        Ok(old_s.rem_euclid(self.pk as i128) as u64)
    }

    /// Encode a coordinate vector as a point index.
    pub fn point_index(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: coords.len() });
        }
        let mut idx = 0usize;
        for &c in coords.iter().rev() {
            if c >= self.pk {
                return Err(Error::OutOfRange(alloc::format!("coordinate {c} >= p^k = {}", self.pk)));
            }
            idx = idx * self.pk as usize + c as usize;
        }
        Ok(idx)
    }

    /// Index of a coordinate slice that is already reduced; no checks.
    #[inline]
    pub(crate) fn index_of(&self, coords: &[u64]) -> usize {
        let mut idx = 0usize;
        for &c in coords.iter().rev() {
            idx = idx * self.pk as usize + c as usize;
        }
        idx
    }

    /// Decode an index into the caller's buffer (length `n`).
    #[inline]
    pub fn decode_into(&self, mut index: usize, out: &mut [u64]) {
        let pk = self.pk as usize;
        for c in out.iter_mut() {
            *c = (index % pk) as u64;
            index /= pk;
        }
    }

    pub fn point(&self, index: usize) -> Point {
        let mut v = vec![0u64; self.n];
        self.decode_into(index, &mut v);
        Point(v)
    }

    /// All points in index order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size).map(move |i| self.point(i))
    }

    /// `Σ x_i y_i mod p^k`.
    pub fn inner(&self, x: &Point, y: &Point) -> Result<RingElem> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
        }
        Ok(RingElem(self.inner_raw(x.coords(), y.coords())))
    }

    #[inline]
    pub(crate) fn inner_raw(&self, x: &[u64], y: &[u64]) -> u64 {
        let mut acc: u128 = 0;
        for (a, b) in x.iter().zip(y) {
            acc += *a as u128 * *b as u128;
        }
        (acc % self.pk as u128) as u64
    }

    /// Componentwise reduction mod `p^ℓ`. `ℓ = 0` yields the all-zero point.
    pub fn project(&self, x: &Point, l: u32) -> Result<Point> {
        if l > self.k {
            return Err(Error::OutOfRange(alloc::format!("scale {l} > k = {}", self.k)));
        }
        let m = self.p_pow(l);
        Ok(Point(x.coords().iter().map(|c| c % m).collect()))
    }

    /// Componentwise `a + t·b`.
    pub(crate) fn affine_raw(&self, a: &[u64], t: u64, b: &[u64], out: &mut [u64]) {
        for ((o, &ai), &bi) in out.iter_mut().zip(a).zip(b) {
            *o = self.add_raw(ai, self.mul_raw(t, bi));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, k: u32, n: usize) -> RingCtx {
        RingCtx::new(p, k, n).unwrap()
    }

    #[test]
    fn digits_examples() {
        assert_eq!(ctx(2, 3, 1).digits(RingElem(6)), vec![0, 1, 1]);
        assert_eq!(ctx(3, 2, 1).digits(RingElem(7)), vec![1, 2]);
        assert_eq!(ctx(2, 2, 1).digits(RingElem(0)), vec![0, 0]);
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(binom_mod_p(7, 5, 2), 1);
        assert_eq!(binom_mod_p(3, 5, 2), 0);
        assert_eq!(binom_mod_p(4, 4, 3), 1);
        assert_eq!(binom_mod_p(0, 0, 5), 1);
    }

    #[test]
    fn valuation_and_units() {
        assert_eq!(ctx(2, 4, 1).valuation(RingElem(12)), 2);
        assert_eq!(ctx(3, 2, 1).valuation(RingElem(5)), 0);
        assert_eq!(ctx(2, 2, 1).valuation(RingElem(0)), 2);
        assert!(ctx(2, 2, 1).is_unit(RingElem(3)));
        assert!(!ctx(2, 2, 1).is_unit(RingElem(2)));
        assert!(!ctx(3, 1, 1).is_unit(RingElem(0)));
    }

    #[test]
    fn project_examples() {
        let c = ctx(2, 2, 2);
        let x = Point(vec![3, 2]);
        assert_eq!(c.project(&x, 1).unwrap(), Point(vec![1, 0]));
        assert_eq!(c.project(&x, 2).unwrap(), x);
        assert_eq!(c.project(&x, 0).unwrap(), Point(vec![0, 0]));
        assert!(c.project(&x, 3).is_err());
    }

    #[test]
    fn inner_examples() {
        let c = ctx(2, 2, 2);
        assert_eq!(c.inner(&Point(vec![1, 2]), &Point(vec![2, 1])).unwrap().value(), 0);
        assert_eq!(c.inner(&Point(vec![0, 0]), &Point(vec![3, 1])).unwrap().value(), 0);
        let c = ctx(3, 2, 2);
        assert_eq!(c.inner(&Point(vec![2, 2]), &Point(vec![2, 2])).unwrap().value(), 8);
        assert!(c.inner(&Point(vec![2]), &Point(vec![2, 2])).is_err());
    }

    #[test]
    fn context_validation() {
        assert_eq!(RingCtx::new(4, 1, 1), Err(Error::NotPrime(4)));
        assert!(RingCtx::new(2, 0, 1).is_err());
        assert!(RingCtx::new(2, 1, 0).is_err());
        assert!(matches!(RingCtx::new(2, 40, 2), Err(Error::Overflow { .. })));
        assert_eq!(ctx(3, 2, 2).size(), 81);
    }

    #[test]
    fn inverses() {
        let c = ctx(3, 3, 1);
        for a in 0..27 {
            match c.inverse(RingElem(a)) {
                Ok(inv) => assert_eq!(c.mul(RingElem(a), inv).value(), 1),
                Err(_) => assert_eq!(a % 3, 0),
            }
        }
    }

    #[test]
    fn exact_binomials() {
        assert_eq!(binom_u128(5, 2), Some(10));
        assert_eq!(binom_u128(130, 3), Some(357_760));
        assert_eq!(binom_u128(3, 5), Some(0));
        assert_eq!(binom_u128(0, 0), Some(1));
    }
}
