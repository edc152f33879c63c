//! Generalized polynomials on `R^n`: the binomial basis `φ_α(x) = Π C(x_i, α_i) mod p`.
//!
//! A function `R^n → Z/pZ` is held as a dense [`FnTable`] indexed by the point
//! codec of [`RingCtx`]. [`expand`] writes it in the tensor basis
//! `{φ_α : α ∈ [p^k]^n}`; the coefficient table uses the same codec with `α`
//! in place of the point.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{binom_mod_p, inv_mod_p, Point, RingCtx, RingElem};
use crate::rng::{below, rng_for};

/// Degree of a function; the zero function has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    /// `true` when the degree is at most `m` (with `m < 0` meaning only the zero function).
    pub fn at_most(self, m: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => m >= 0 && d <= m as u64,
        }
    }

    pub fn as_i64(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d as i64),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A dense table of a function `R^n → Z/pZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnTable {
    ctx: RingCtx,
    values: Vec<u32>,
}

impl FnTable {
    pub fn new(ctx: RingCtx, values: Vec<u32>) -> Result<Self> {
        if values.len() != ctx.size() {
            return Err(Error::DimensionMismatch { expected: ctx.size(), found: values.len() });
        }
        if let Some(v) = values.iter().find(|&&v| v as u64 >= ctx.p()) {
            return Err(Error::OutOfRange(format!("table entry {v} >= p = {}", ctx.p())));
        }
        Ok(FnTable { ctx, values })
    }

    pub fn zero(ctx: RingCtx) -> Self {
        FnTable { ctx, values: vec![0; ctx.size()] }
    }

    /// Tabulate `f` over all points; results are reduced mod `p`.
    pub fn from_fn(ctx: RingCtx, mut f: impl FnMut(&[u64]) -> u64) -> Self {
        let mut buf = vec![0u64; ctx.n()];
        let values = (0..ctx.size())
            .map(|i| {
                ctx.decode_into(i, &mut buf);
                (f(&buf) % ctx.p()) as u32
            })
            .collect();
        FnTable { ctx, values }
    }

    /// The indicator of a set of point indices.
    pub fn indicator(ctx: RingCtx, points: &[usize]) -> Self {
        let mut values = vec![0u32; ctx.size()];
        for &i in points {
            values[i] = 1;
        }
        FnTable { ctx, values }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn get(&self, index: usize) -> u32 {
        self.values[index]
    }

    pub fn at(&self, x: &Point) -> Result<u32> {
        Ok(self.values[self.ctx.point_index(x.coords())?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Pointwise `a·self + b·other` mod `p`.
    pub fn combine(&self, a: u64, other: &FnTable, b: u64) -> Result<FnTable> {
        self.check_same(other)?;
        let p = self.ctx.p();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&x, &y)| ((a % p * x as u64 + b % p * y as u64) % p) as u32)
            .collect();
        Ok(FnTable { ctx: self.ctx, values })
    }

    pub fn sub(&self, other: &FnTable) -> Result<FnTable> {
        self.combine(1, other, self.ctx.p() - 1)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &FnTable) -> Result<FnTable> {
        self.check_same(other)?;
        let p = self.ctx.p();
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| (x as u64 * y as u64 % p) as u32).collect();
        Ok(FnTable { ctx: self.ctx, values })
    }

    fn check_same(&self, other: &FnTable) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::InvalidContext("tables live in different contexts".into()));
        }
        Ok(())
    }
}

/// A multi-index `α ∈ [p^k]^n` with its weight `|α|` cached.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    alpha: Vec<u64>,
    weight: u64,
}

impl MultiIndex {
    pub fn new(ctx: &RingCtx, alpha: Vec<u64>) -> Result<Self> {
        if alpha.len() != ctx.n() {
            return Err(Error::DimensionMismatch { expected: ctx.n(), found: alpha.len() });
        }
        if let Some(a) = alpha.iter().find(|&&a| a >= ctx.pk()) {
            return Err(Error::OutOfRange(format!("multi-index entry {a} >= p^k = {}", ctx.pk())));
        }
        let weight = alpha.iter().sum();
        Ok(MultiIndex { alpha, weight })
    }

    pub fn from_index(ctx: &RingCtx, index: usize) -> Self {
        let alpha = ctx.point(index).0;
        let weight = alpha.iter().sum();
        MultiIndex { alpha, weight }
    }

    pub fn entries(&self) -> &[u64] {
        &self.alpha
    }

    /// `|α| = Σ α_i`.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn index(&self, ctx: &RingCtx) -> usize {
        ctx.index_of(&self.alpha)
    }
}

/// `φ_m(x)` with `φ_m ≡ 0` for `m < 0` or `m ≥ p^k`.
pub fn phi_total(ctx: &RingCtx, m: i64, x: u64) -> u64 {
    if m < 0 || m as u64 >= ctx.pk() {
        return 0;
    }
    binom_mod_p(x % ctx.pk(), m as u64, ctx.p())
}

/// `φ_α(x) = Π_i C(x_i, α_i) mod p`.
pub fn phi_eval(ctx: &RingCtx, alpha: &MultiIndex, x: &Point) -> Result<u64> {
    if x.dim() != alpha.entries().len() {
        return Err(Error::DimensionMismatch { expected: alpha.entries().len(), found: x.dim() });
    }
    let p = ctx.p();
    let mut acc = 1u64;
    for (&a, &xi) in alpha.entries().iter().zip(x.coords()) {
        acc = acc * binom_mod_p(xi % ctx.pk(), a, p) % p;
        if acc == 0 {
            break;
        }
    }
    Ok(acc)
}

/// The univariate matrix `Φ_{m,x} = φ_m(x)` for `m, x ∈ [p^k]`, built by the
/// Pascal recurrence `φ_m(x+1) = φ_m(x) + φ_{m-1}(x)`.
#[derive(Debug, Clone)]
pub struct PhiTable {
    pk: usize,
    p: u32,
    data: Vec<u32>,
}

impl PhiTable {
    pub fn new(ctx: &RingCtx) -> Self {
        let pk = ctx.pk() as usize;
        let p = ctx.p() as u32;
        let mut data = vec![0u32; pk * pk];
        // column x = 0: φ_0(0) = 1, φ_m(0) = 0 otherwise
        data[0] = 1;
        for x in 0..pk.saturating_sub(1) {
            for m in 0..pk {
                let above = if m == 0 { 0 } else { data[(m - 1) * pk + x] };
                data[m * pk + x + 1] = (data[m * pk + x] + above) % p;
            }
        }
        PhiTable { pk, p, data }
    }

    #[inline]
    pub fn get(&self, m: usize, x: usize) -> u32 {
        self.data[m * self.pk + x]
    }

    /// Row `m`, i.e. the values of `φ_m` over `R`.
    pub fn row(&self, m: usize) -> &[u32] {
        &self.data[m * self.pk..(m + 1) * self.pk]
    }

    pub fn pk(&self) -> usize {
        self.pk
    }

    /// Solve `f(x) = Σ_{m ≤ x} c_m φ_m(x)` in place by forward substitution
    /// (the matrix is unit upper triangular).
    pub fn solve_in_place(&self, fiber: &mut [u32]) {
        let p = self.p as u64;
        for x in 0..self.pk {
            let mut acc = fiber[x] as u64;
            for (m, &c) in fiber[..x].iter().enumerate() {
                let c = c as u64;
                if c != 0 {
                    let phi = self.get(m, x) as u64;
                    acc += (p - c * phi % p) % p;
                }
            }
            fiber[x] = (acc % p) as u32;
        }
    }
}

/// Coefficients of a function in the tensor basis `{φ_α}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiCoeffs {
    ctx: RingCtx,
    coeffs: Vec<u32>,
    degree: Degree,
}

impl PhiCoeffs {
    /// Wrap a coefficient table; the degree is recomputed.
    pub fn new(ctx: RingCtx, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != ctx.size() {
            return Err(Error::DimensionMismatch { expected: ctx.size(), found: coeffs.len() });
        }
        if coeffs.iter().any(|&c| c as u64 >= ctx.p()) {
            return Err(Error::OutOfRange("coefficient >= p".into()));
        }
        let degree = degree_of_coeffs(&ctx, &coeffs);
        Ok(PhiCoeffs { ctx, coeffs, degree })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn get(&self, alpha: &MultiIndex) -> u32 {
        self.coeffs[alpha.index(&self.ctx)]
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// Nonzero coefficients as `(α, c_α)` in index order.
    pub fn support(&self) -> impl Iterator<Item = (MultiIndex, u32)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (MultiIndex::from_index(&self.ctx, i), c))
    }

    /// `Σ c_α φ_α` as a table: the inverse of [`expand`].
    pub fn synthesize(&self) -> FnTable {
        let table = PhiTable::new(&self.ctx);
        let mut data = self.coeffs.clone();
        apply_axes(&self.ctx, &mut data, |fiber, scratch| {
            // f(x) = Σ_m c_m φ_m(x)
            let p = table.p as u64;
            for (x, out) in scratch.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (m, &c) in fiber.iter().enumerate().take(x + 1) {
                    acc += c as u64 * table.get(m, x) as u64;
                }
                *out = (acc % p) as u32;
            }
            fiber.copy_from_slice(scratch);
        });
        FnTable { ctx: self.ctx, values: data }
    }
}

fn degree_of_coeffs(ctx: &RingCtx, coeffs: &[u32]) -> Degree {
    let mut buf = vec![0u64; ctx.n()];
    let mut best = Degree::NegInfinity;
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            ctx.decode_into(i, &mut buf);
            best = best.max(Degree::Finite(buf.iter().sum()));
        }
    }
    best
}

/// Run `f` on every fiber along every axis in turn.
fn apply_axes(ctx: &RingCtx, data: &mut [u32], mut f: impl FnMut(&mut [u32], &mut [u32])) {
    let pk = ctx.pk() as usize;
    let mut fiber = vec![0u32; pk];
    let mut scratch = vec![0u32; pk];
    let mut stride = 1usize;
    for _ in 0..ctx.n() {
        let block = stride * pk;
        for start in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (j, slot) in fiber.iter_mut().enumerate() {
                    *slot = data[base + j * stride];
                }
                f(&mut fiber, &mut scratch);
                for (j, &v) in fiber.iter().enumerate() {
                    data[base + j * stride] = v;
                }
            }
        }
        stride = block;
    }
}

/// Expand `f` in the tensor phi basis by a triangular solve along each axis.
pub fn expand(f: &FnTable) -> PhiCoeffs {
    expand_with(f, &PhiTable::new(f.ctx()))
}

/// [`expand`] reusing a precomputed univariate table.
pub fn expand_with(f: &FnTable, table: &PhiTable) -> PhiCoeffs {
    let ctx = *f.ctx();
    let mut data = f.values.clone();
    apply_axes(&ctx, &mut data, |fiber, _| table.solve_in_place(fiber));
    let degree = degree_of_coeffs(&ctx, &data);
    PhiCoeffs { ctx, coeffs: data, degree }
}

pub fn degree(f: &FnTable) -> Degree {
    expand(f).degree()
}

/// Univariate coefficients from forward differences at zero:
/// `c_ℓ = D^ℓ f(0) = Σ_{i ≤ ℓ} (-1)^{ℓ-i} C(ℓ,i) f(i)`.
///
/// Independent of the triangular solve; used to cross-check [`expand`].
pub fn coeffs_by_forward_differences(values: &[u32], p: u64) -> Vec<u32> {
    let mut diffs: Vec<u64> = values.iter().map(|&v| v as u64).collect();
    let mut out = Vec::with_capacity(values.len());
    for _ in 0..values.len() {
        out.push(diffs[0] as u32);
        for i in 0..diffs.len().saturating_sub(1) {
            diffs[i] = (diffs[i + 1] + p - diffs[i]) % p;
        }
        diffs.pop();
    }
    out
}

/// The table of `φ_α`.
pub fn phi_table(ctx: &RingCtx, alpha: &MultiIndex) -> FnTable {
    let p = ctx.p();
    let alpha = alpha.entries().to_vec();
    FnTable::from_fn(*ctx, |x| {
        let mut acc = 1;
        for (&a, &xi) in alpha.iter().zip(x) {
            acc = acc * binom_mod_p(xi, a, p) % p;
        }
        acc
    })
}

/// `Δ_r f(x) = f(x + r) − f(x)`; with `normalize`, `D_c f = c⁻¹ Δ_c f` for a
/// unit `c = r` in dimension one (the inverse taken mod `p`).
pub fn difference(f: &FnTable, r: &Point, normalize: bool) -> Result<FnTable> {
    let ctx = *f.ctx();
    if r.dim() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: ctx.n(), found: r.dim() });
    }
    let scale = if normalize {
        if ctx.n() != 1 {
            return Err(Error::InvalidContext("normalized derivative needs n = 1".into()));
        }
        let c = r.coords()[0] % ctx.pk();
        if !ctx.is_unit(ctx.elem(c)) {
            return Err(Error::NotUnit(c));
        }
        inv_mod_p(c % ctx.p(), ctx.p())
    } else {
        1
    };
    let shift = r.coords().iter().map(|c| c % ctx.pk()).collect::<Vec<_>>();
    Ok(difference_raw(f, &shift, scale))
}

fn difference_raw(f: &FnTable, shift: &[u64], scale: u64) -> FnTable {
    let ctx = *f.ctx();
    let p = ctx.p();
    let mut buf = vec![0u64; ctx.n()];
    let values = (0..ctx.size())
        .map(|i| {
            ctx.decode_into(i, &mut buf);
            for (c, s) in buf.iter_mut().zip(shift) {
                *c = ctx.add_raw(*c, *s);
            }
            let j = ctx.index_of(&buf);
            let d = (f.values[j] as u64 + p - f.values[i] as u64) % p;
            (d * scale % p) as u32
        })
        .collect();
    FnTable { ctx, values }
}

/// `Δ_{r_1} ⋯ Δ_{r_d} f`, folding [`difference`] over the steps.
pub fn iterated_difference(f: &FnTable, steps: &[Point]) -> Result<FnTable> {
    let mut g = f.clone();
    for r in steps {
        g = difference(&g, r, false)?;
    }
    Ok(g)
}

/// The alternating box sum `Σ_{ε ∈ {0,1}^d} (-1)^{|ε|+d} f(x + Σ ε_j r_j)`,
/// evaluated at a single point.
pub fn box_sum(f: &FnTable, steps: &[Point], x: &Point) -> Result<u32> {
    let ctx = *f.ctx();
    if x.dim() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: ctx.n(), found: x.dim() });
    }
    let d = steps.len();
    if d >= 64 {
        return Err(Error::OutOfRange("box order must be below 64".into()));
    }
    let p = ctx.p();
    let mut acc = 0u64;
    let mut buf = vec![0u64; ctx.n()];
    for mask in 0u64..(1u64 << d) {
        buf.copy_from_slice(x.coords());
        for (j, r) in steps.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (c, s) in buf.iter_mut().zip(r.coords()) {
                    *c = ctx.add_raw(*c, s % ctx.pk());
                }
            }
        }
        let v = f.values[ctx.index_of(&buf)] as u64;
        let negative = (mask.count_ones() as usize + d) % 2 == 1;
        acc += if negative { (p - v) % p } else { v };
    }
    Ok((acc % p) as u32)
}

/// How [`is_d_null`] explores step tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullMode {
    /// Every tuple in `(R^n)^d`.
    Exhaustive,
    /// `count` seeded random tuples.
    Sampled { seed: u64, count: u64 },
}

/// Default budget for exhaustive null tests, in evaluated table entries.
pub const DEFAULT_NULL_BUDGET: u128 = 10_000_000;

/// `true` iff every order-`d` iterated difference of `f` vanishes.
///
/// Exhaustive mode walks the set of distinct partial differences level by
/// level: since differences commute and the result of a tuple only depends on
/// its partial results, the level-`d` set contains the result of every tuple in
/// `(R^n)^d`. `budget` caps the number of table entries evaluated.
pub fn is_d_null(f: &FnTable, d: u32, mode: NullMode, budget: u128) -> Result<bool> {
    let ctx = *f.ctx();
    if d == 0 {
        return Ok(f.is_zero());
    }
    match mode {
        NullMode::Exhaustive => {
            let mut frontier: BTreeSet<Vec<u32>> = BTreeSet::new();
            frontier.insert(f.values.clone());
            let mut spent: u128 = 0;
            let steps: Vec<Vec<u64>> = ctx.points().map(|pt| pt.0).collect();
            for _ in 0..d {
                let cost = frontier.len() as u128 * ctx.size() as u128 * ctx.size() as u128;
                spent += cost;
                if spent > budget {
                    return Err(Error::BudgetExceeded {
                        what: "exhaustive null test".into(),
                        needed: spent,
                        limit: budget,
                    });
                }
                let mut next = BTreeSet::new();
                for g in &frontier {
                    let g = FnTable { ctx, values: g.clone() };
                    for r in &steps {
                        let h = difference_raw(&g, r, 1);
                        if !h.is_zero() {
                            next.insert(h.values);
                        }
                    }
                }
                if next.is_empty() {
                    return Ok(true);
                }
                frontier = next;
            }
            Ok(false)
        }
        NullMode::Sampled { seed, count } => {
            for i in 0..count {
                let mut rng = rng_for(seed, i);
                let mut g = f.clone();
                for _ in 0..d {
                    let r: Vec<u64> = (0..ctx.n()).map(|_| below(&mut rng, ctx.pk())).collect();
                    g = difference_raw(&g, &r, 1);
                    if g.is_zero() {
                        break;
                    }
                }
                if !g.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `dim Ω_m^n = C(m+n, n)` for `m ≤ p^k − 1`.
pub fn omega_dim(ctx: &RingCtx, m: u64) -> Result<u128> {
    if m >= ctx.pk() {
        return Err(Error::OutOfRange(format!("m = {m} must be below p^k = {}", ctx.pk())));
    }
    crate::ring::binom_u128(m as u128 + ctx.n() as u128, ctx.n() as u128)
        .ok_or_else(|| Error::OutOfRange("binomial overflow".into()))
}

/// Coefficients `c_{m,(α₁,α₂)}` of `φ_m(xy) = Σ c_{m,α} φ_{α₁}(x) φ_{α₂}(y)`,
/// as a table over the bivariate context `(p, k, 2)`.
pub fn product_coeff_tensor(ctx: &RingCtx, m: u64) -> Result<PhiCoeffs> {
    if m >= ctx.pk() {
        return Err(Error::OutOfRange(format!("m = {m} must be below p^k = {}", ctx.pk())));
    }
    let biv = ctx.with_dim(2)?;
    let table = PhiTable::new(&biv);
    Ok(product_coeff_tensor_with(&biv, &table, m))
}

pub(crate) fn product_coeff_tensor_with(biv: &RingCtx, table: &PhiTable, m: u64) -> PhiCoeffs {
    let row = table.row(m as usize);
    let g = FnTable::from_fn(*biv, |xy| row[biv.mul_raw(xy[0], xy[1]) as usize] as u64);
    expand_with(&g, table)
}

/// `A_{m,ℓ}(a) = Δ_a^ℓ φ_m(0)` for `ℓ = 0..=m`, so that
/// `φ_m(ax) = Σ_ℓ A_{m,ℓ}(a) φ_ℓ(x)`.
pub fn scale_coeffs(ctx: &RingCtx, m: u64, a: RingElem) -> Result<Vec<u32>> {
    if m >= ctx.pk() {
        return Err(Error::OutOfRange(format!("m = {m} must be below p^k = {}", ctx.pk())));
    }
    let p = ctx.p();
    // s_i = φ_m(i·a); Δ_a^ℓ φ_m(0) is the ℓ-th forward difference of s at 0.
    let s: Vec<u32> = (0..=m).map(|i| phi_total(ctx, m as i64, ctx.mul_raw(i % ctx.pk(), a.value())) as u32).collect();
    Ok(coeffs_by_forward_differences(&s, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, k: u32, n: usize) -> RingCtx {
        RingCtx::new(p, k, n).unwrap()
    }

    fn uni_phi(c: &RingCtx, m: u64) -> FnTable {
        phi_table(c, &MultiIndex::new(c, vec![m]).unwrap())
    }

    #[test]
    fn phi_eval_examples() {
        let c = ctx(2, 2, 2);
        let a = MultiIndex::new(&c, vec![2, 1]).unwrap();
        assert_eq!(phi_eval(&c, &a, &Point(vec![2, 1])).unwrap(), 1);
        assert_eq!(phi_eval(&c, &a, &Point(vec![0, 0])).unwrap(), 0);
        let c1 = ctx(2, 2, 1);
        let a = MultiIndex::new(&c1, vec![2]).unwrap();
        assert_eq!(phi_eval(&c1, &a, &Point(vec![3])).unwrap(), 1);
        assert_eq!(phi_total(&c1, 4, 3), 0);
        assert_eq!(phi_total(&c1, -1, 3), 0);
    }

    #[test]
    fn pascal_table_matches_lucas() {
        for (p, k) in [(2, 4), (3, 3), (5, 2), (7, 1)] {
            let c = ctx(p, k, 1);
            let t = PhiTable::new(&c);
            for m in 0..c.pk() {
                for x in 0..c.pk() {
                    assert_eq!(t.get(m as usize, x as usize) as u64, binom_mod_p(x, m, p));
                }
            }
        }
    }

    #[test]
    fn expand_indicator_of_zero() {
        let c = ctx(2, 2, 1);
        let f = FnTable::indicator(c, &[0]);
        let e = expand(&f);
        // oracle: forward differences at zero
        assert_eq!(coeffs_by_forward_differences(f.values(), 2), vec![1, 1, 1, 1]);
        assert_eq!(e.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(e.synthesize(), f);
    }

    #[test]
    fn expand_basis_and_zero() {
        let c = ctx(3, 2, 2);
        for idx in [0usize, 5, 17, 80] {
            let a = MultiIndex::from_index(&c, idx);
            let e = expand(&phi_table(&c, &a));
            for (i, &v) in e.coeffs().iter().enumerate() {
                assert_eq!(v, u32::from(i == idx));
            }
            assert_eq!(e.degree(), Degree::Finite(a.weight()));
        }
        let z = expand(&FnTable::zero(c));
        assert!(z.coeffs().iter().all(|&v| v == 0));
        assert_eq!(z.degree(), Degree::NegInfinity);
    }

    #[test]
    fn degree_examples() {
        let c = ctx(2, 2, 1);
        for m in 0..4 {
            assert_eq!(degree(&uni_phi(&c, m)), Degree::Finite(m));
        }
        assert_eq!(degree(&FnTable::from_fn(c, |_| 1)), Degree::Finite(0));
        let c2 = ctx(2, 2, 2);
        let a = MultiIndex::new(&c2, vec![2, 1]).unwrap();
        assert_eq!(degree(&phi_table(&c2, &a)), Degree::Finite(3));
    }

    #[test]
    fn derivative_lowers_index() {
        let c = ctx(2, 3, 1);
        for m in 1..c.pk() {
            let d = difference(&uni_phi(&c, m), &Point(vec![1]), true).unwrap();
            assert_eq!(d, uni_phi(&c, m - 1));
        }
        let f = uni_phi(&c, 5);
        assert!(difference(&f, &Point(vec![0]), false).unwrap().is_zero());
        assert_eq!(difference(&f, &Point(vec![2]), true), Err(Error::NotUnit(2)));
    }

    #[test]
    fn unit_step_difference_drops_degree() {
        let c = ctx(2, 2, 1);
        for m in 1..4u64 {
            for cc in 0..4u64 {
                let delta = difference(&uni_phi(&c, m), &Point(vec![cc]), false).unwrap();
                let lower = uni_phi(&c, m - 1);
                let rest = delta.combine(1, &lower, (2 - cc % 2) % 2).unwrap();
                assert!(degree(&rest).at_most(m as i64 - 2), "m={m} c={cc}");
            }
        }
    }

    #[test]
    fn iterated_difference_examples() {
        let c = ctx(2, 2, 2);
        let a = MultiIndex::new(&c, vec![1, 0]).unwrap();
        let f = phi_table(&c, &a);
        let g = iterated_difference(&f, &[Point(vec![1, 0])]).unwrap();
        assert!(g.values().iter().all(|&v| v == 1));
        assert_eq!(iterated_difference(&f, &[]).unwrap(), f);
        let steps = [Point(vec![1, 3]), Point(vec![2, 1])];
        let h = iterated_difference(&f, &steps).unwrap();
        for (i, x) in c.points().enumerate() {
            assert_eq!(box_sum(&f, &steps, &x).unwrap(), h.get(i));
        }
    }

    #[test]
    fn null_examples() {
        let c = ctx(2, 2, 2);
        let a = MultiIndex::new(&c, vec![2, 1]).unwrap();
        let f = phi_table(&c, &a);
        assert!(is_d_null(&f, 4, NullMode::Exhaustive, DEFAULT_NULL_BUDGET).unwrap());
        assert!(!is_d_null(&f, 3, NullMode::Exhaustive, DEFAULT_NULL_BUDGET).unwrap());
        assert!(is_d_null(&FnTable::zero(c), 1, NullMode::Exhaustive, DEFAULT_NULL_BUDGET).unwrap());
        assert!(is_d_null(&f, 4, NullMode::Sampled { seed: 3, count: 50 }, 0).unwrap());
        assert!(matches!(is_d_null(&f, 4, NullMode::Exhaustive, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn omega_dim_examples() {
        assert_eq!(omega_dim(&ctx(2, 2, 2), 3).unwrap(), 10);
        assert_eq!(omega_dim(&ctx(2, 2, 2), 0).unwrap(), 1);
        assert_eq!(omega_dim(&ctx(3, 1, 2), 2).unwrap(), 6);
        assert!(omega_dim(&ctx(3, 1, 2), 3).is_err());
    }

    #[test]
    fn product_tensor_small() {
        let c = ctx(2, 2, 1);
        let t0 = product_coeff_tensor(&c, 0).unwrap();
        for (i, &v) in t0.coeffs().iter().enumerate() {
            assert_eq!(v, u32::from(i == 0));
        }
        // φ₁(xy) mod 2 only sees the lowest digits: x₀y₀ = φ₁(x)φ₁(y).
        let t1 = product_coeff_tensor(&c, 1).unwrap();
        let biv = ctx(2, 2, 2);
        let expected = expand(&FnTable::from_fn(biv, |xy| (xy[0] % 2) * (xy[1] % 2)));
        assert_eq!(t1, expected);
        assert_eq!(t1.coeffs()[1 + 4], 1);
        assert_eq!(t1.support().count(), 1);
    }

    #[test]
    fn scale_coeff_examples() {
        let c = ctx(2, 2, 1);
        assert_eq!(scale_coeffs(&c, 1, c.elem(3)).unwrap(), vec![0, 1]);
        for m in 0..4 {
            let a1 = scale_coeffs(&c, m, c.elem(1)).unwrap();
            for (l, &v) in a1.iter().enumerate() {
                assert_eq!(v, u32::from(l as u64 == m));
            }
            if m > 0 {
                assert!(scale_coeffs(&c, m, c.elem(0)).unwrap().iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn table_validation() {
        let c = ctx(2, 1, 2);
        assert!(FnTable::new(c, vec![0, 1, 1]).is_err());
        assert!(FnTable::new(c, vec![0, 1, 2, 0]).is_err());
        assert!(FnTable::new(c, vec![0, 1, 1, 0]).is_ok());
    }
}
