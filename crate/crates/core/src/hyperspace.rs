//! The span of hyperplane indicators as a space of functions `R^n → Z/pZ`.
//!
//! Spanning rows are `x ↦ φ_ℓ(⟨x, b⟩)` over `ℓ ∈ [p^k]` and directions `b`
//! (row `ℓ + p^k·d` for the `d`-th direction). Indicator rows `1{⟨x, b⟩ = c}`
//! span the same space, so the rank of either family is its dimension.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::check::{Check, Relation};
use crate::error::{Error, Result};
use crate::gfp::MatGFp;
use crate::incidence::{build_incidence, directions, Direction, IncidenceKind};
use crate::phi::{expand_with, product_coeff_tensor_with, FnTable, PhiTable};
use crate::ring::{binom_u128, RingCtx};

/// Which spanning family a [`HyperSpanBasis`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SpanFamily {
    /// `φ_ℓ(⟨x, b⟩)`.
    Phi,
    /// `1{⟨x, b⟩ = c}`.
    Indicator,
}

#[derive(Debug, Clone)]
pub struct HyperSpanBasis {
    ctx: RingCtx,
    dirs: Vec<Direction>,
    rows: MatGFp,
    family: SpanFamily,
}

/// Coefficients over the spanning rows that reproduce a function.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpanCertificate {
    /// `(ℓ or c, direction, coefficient)` for every nonzero coefficient.
    pub terms: Vec<(u64, Vec<u64>, u32)>,
}

impl HyperSpanBasis {
    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn rows(&self) -> &MatGFp {
        &self.rows
    }

    pub fn family(&self) -> SpanFamily {
        self.family
    }

    pub fn directions(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn dim(&self) -> usize {
        self.rows.rank()
    }

    /// Present iff `f` lies in the span.
    pub fn membership(&self, f: &FnTable) -> Result<Option<SpanCertificate>> {
        if f.ctx() != &self.ctx {
            return Err(Error::InvalidContext("function and basis contexts differ".into()));
        }
        let pk = self.ctx.pk() as usize;
        Ok(self.rows.in_span(f.values())?.map(|c| SpanCertificate {
            terms: c
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(r, &v)| ((r % pk) as u64, self.dirs[r / pk].coords().to_vec(), v))
                .collect(),
        }))
    }

    /// The rows with `b` restricted to the homogeneous hyperplanes through zero,
    /// i.e. `1{⟨x, b⟩ = 0}`; only meaningful for `k = 1`.
    pub fn homogeneous(&self) -> Result<MatGFp> {
        if self.ctx.k() != 1 {
            return Err(Error::Hypothesis("homogeneous span is only defined here for k = 1".into()));
        }
        build_incidence(IncidenceKind::Wstar, &self.ctx, &Budget::default())
    }
}

fn span_entries_check(ctx: &RingCtx, budget: &Budget) -> Result<()> {
    let dirs = crate::incidence::direction_count(ctx);
    budget.check_entries("hyperplane span", dirs * ctx.pk() as u128, ctx.size() as u128)
}

/// The `φ_ℓ(⟨x, b⟩)` spanning rows.
pub fn span_basis(ctx: &RingCtx, budget: &Budget) -> Result<HyperSpanBasis> {
    span_entries_check(ctx, budget)?;
    let dirs = directions(ctx);
    let table = PhiTable::new(ctx);
    let pk = ctx.pk() as usize;
    let mut buf = vec![0u64; ctx.n()];
    let mut rows = MatGFp::zeros(ctx.p(), dirs.len() * pk, ctx.size())?;
    for (d, b) in dirs.iter().enumerate() {
        for x in 0..ctx.size() {
            ctx.decode_into(x, &mut buf);
            let t = ctx.inner_raw(&buf, b.coords()) as usize;
            for l in 0..=t {
                let v = table.get(l, t);
                if v != 0 {
                    rows.set(d * pk + l, x, v);
                }
            }
        }
    }
    Ok(HyperSpanBasis { ctx: *ctx, dirs, rows, family: SpanFamily::Phi })
}

/// The indicator rows `1{⟨x, b⟩ = c}`.
pub fn indicator_basis(ctx: &RingCtx, budget: &Budget) -> Result<HyperSpanBasis> {
    span_entries_check(ctx, budget)?;
    let rows = build_incidence(IncidenceKind::AstarReduced, ctx, budget)?;
    Ok(HyperSpanBasis { ctx: *ctx, dirs: directions(ctx), rows, family: SpanFamily::Indicator })
}

pub fn hyperspan_dim(ctx: &RingCtx, budget: &Budget) -> Result<usize> {
    let dirs = crate::incidence::direction_count(ctx);
    budget.check_elimination(
        "hyperplane span",
        dirs * ctx.pk() as u128,
        ctx.size() as u128,
        crate::incidence::trivial_dim_bound(ctx),
    )?;
    Ok(span_basis(ctx, budget)?.dim())
}

/// Exact membership of `f` in the hyperplane span.
pub fn is_hyperplane_function(f: &FnTable, budget: &Budget) -> Result<Option<SpanCertificate>> {
    span_basis(f.ctx(), budget)?.membership(f)
}

/// The matrices of `H = Ψ · B · Φ` in dimension `n ≥ 2`.
///
/// Rows of `H`, `Ψ` and `B` are pairs `(m, t)` with `t ∈ [p^k]^{n-1}`, at index
/// `m·p^{k(n-1)} + t`; `t` is a point `ã` for `H` and `Ψ`'s rows and a
/// multi-index `α̃` for `Ψ`'s columns and `B`'s rows. Columns of `B` and rows
/// of `Φ` are multi-indices `β ∈ [p^k]^n`; columns of `H` and `Φ` are points.
#[derive(Debug, Clone)]
pub struct BFactorization {
    pub ctx: RingCtx,
    pub h: MatGFp,
    pub psi: MatGFp,
    pub b: MatGFp,
    pub phi: MatGFp,
}

/// Largest `p^{kn}` for which the factorization is built.
pub const FACTORIZATION_MAX_POINTS: usize = 4096;

pub fn build_factorization(ctx: &RingCtx, budget: &Budget) -> Result<BFactorization> {
    let n = ctx.n();
    if n < 2 {
        return Err(Error::Hypothesis("factorization needs n >= 2".into()));
    }
    if ctx.size() > FACTORIZATION_MAX_POINTS {
        return Err(Error::BudgetExceeded {
            what: "factorization".into(),
            needed: ctx.size() as u128,
            limit: FACTORIZATION_MAX_POINTS as u128,
        });
    }
    let size = ctx.size();
    budget.check_entries("factorization", size as u128, size as u128)?;
    let p = ctx.p();
    let pk = ctx.pk() as usize;
    let tail = ctx.with_dim(n - 1)?;
    let s = tail.size();
    let table = PhiTable::new(ctx);

    let mut xb = vec![0u64; n];
    let mut ab = vec![0u64; n - 1];

    // H[(m, ã), x] = φ_m(⟨ã, x̃⟩ + x_n)
    let mut h = MatGFp::zeros(p, size, size)?;
    for a in 0..s {
        tail.decode_into(a, &mut ab);
        for x in 0..size {
            ctx.decode_into(x, &mut xb);
            let t = ctx.add_raw(ctx.inner_raw(&ab, &xb[..n - 1]), xb[n - 1]) as usize;
            for m in 0..=t {
                let v = table.get(m, t);
                if v != 0 {
                    h.set(m * s + a, x, v);
                }
            }
        }
    }

    // Ψ[(m, ã), (μ, α̃)] = 1{m = μ} φ_α̃(ã)
    let mut psi = MatGFp::zeros(p, size, size)?;
    let mut alb = vec![0u64; n - 1];
    for a in 0..s {
        tail.decode_into(a, &mut ab);
        for al in 0..s {
            tail.decode_into(al, &mut alb);
            let v = ab
                .iter()
                .zip(&alb)
                .fold(1u32, |acc, (&x, &e)| (acc as u64 * table.get(e as usize, x as usize) as u64 % p) as u32);
            if v != 0 {
                for m in 0..pk {
                    psi.set(m * s + a, m * s + al, v);
                }
            }
        }
    }

    // Φ[β, x] = φ_β(x)
    let mut phi = MatGFp::zeros(p, size, size)?;
    let mut bb = vec![0u64; n];
    for beta in 0..size {
        ctx.decode_into(beta, &mut bb);
        for x in 0..size {
            ctx.decode_into(x, &mut xb);
            let v = bb
                .iter()
                .zip(&xb)
                .fold(1u32, |acc, (&e, &y)| (acc as u64 * table.get(e as usize, y as usize) as u64 % p) as u32);
            if v != 0 {
                phi.set(beta, x, v);
            }
        }
    }

    // c[ℓ][α + p^k β]: coefficients of φ_ℓ(xy) in φ_α(x) φ_β(y)
    let biv = ctx.with_dim(2)?;
    let biv_table = PhiTable::new(&biv);
    let coeffs: Vec<Vec<u32>> =
        (0..pk as u64).map(|l| product_coeff_tensor_with(&biv, &biv_table, l).coeffs().to_vec()).collect();

    // B[(m, α̃), β] = Σ_{ℓ₁+…+ℓ_{n-1} = m − β_n} Π_j c[ℓ_j][α_j, β_j]
    let mut b = MatGFp::zeros(p, size, size)?;
    let mut betab = vec![0u64; n - 1];
    let mut conv = vec![0u64; pk];
    let mut next = vec![0u64; pk];
    for al in 0..s {
        tail.decode_into(al, &mut alb);
        for bt in 0..s {
            tail.decode_into(bt, &mut betab);
            conv.iter_mut().for_each(|c| *c = 0);
            conv[0] = 1;
            for j in 0..n - 1 {
                let col = alb[j] as usize + pk * betab[j] as usize;
                next.iter_mut().for_each(|c| *c = 0);
                for (i, &ci) in conv.iter().enumerate().filter(|(_, &c)| c != 0) {
                    for l in 0..pk - i {
                        let c = coeffs[l][col] as u64;
                        if c != 0 {
                            next[i + l] = (next[i + l] + ci * c) % p;
                        }
                    }
                }
                core::mem::swap(&mut conv, &mut next);
            }
            for bn in 0..pk {
                let beta = bt + s * bn;
                for m in bn..pk {
                    let v = conv[m - bn];
                    if v != 0 {
                        b.set(m * s + al, beta, v as u32);
                    }
                }
            }
        }
    }

    Ok(BFactorization { ctx: *ctx, h, psi, b, phi })
}

/// Outcome of [`BFactorization::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FactorizationReport {
    pub p: u64,
    pub k: u32,
    pub n: usize,
    /// `(rows, cols)` of `H`, `Ψ`, `B`, `Φ`.
    pub dims: [(usize, usize); 4],
    pub entrywise_equal: bool,
    pub mismatches: usize,
    pub rank_h: usize,
    pub rank_b: usize,
    pub rank_psi: usize,
    pub rank_phi: usize,
    pub dim_h: Option<usize>,
    /// `(row, col)` of every nonzero of `B` outside the predicted support.
    pub zero_pattern_violations: Vec<(usize, usize)>,
    pub checks: Vec<Check>,
}

impl BFactorization {
    /// Weight bound `m + 2(n−1)(p−1)` beyond which `B` vanishes.
    pub fn support_bound(&self, m: u64) -> u64 {
        m + 2 * (self.ctx.n() as u64 - 1) * (self.ctx.p() - 1)
    }

    /// Entries of `B` that are nonzero although `|α̃| + |β| > m + 2(n−1)(p−1)`.
    pub fn zero_pattern_violations(&self) -> Vec<(usize, usize)> {
        let ctx = &self.ctx;
        let n = ctx.n();
        let tail = ctx.with_dim(n - 1).expect("n >= 2");
        let s = tail.size();
        let weight = |c: &RingCtx, i: usize| {
            let mut v = vec![0u64; c.n()];
            c.decode_into(i, &mut v);
            v.iter().sum::<u64>()
        };
        let wa: Vec<u64> = (0..s).map(|i| weight(&tail, i)).collect();
        let wb: Vec<u64> = (0..ctx.size()).map(|i| weight(ctx, i)).collect();
        let mut out = Vec::new();
        for r in 0..self.b.rows() {
            let (m, al) = ((r / s) as u64, r % s);
            for (beta, &w) in wb.iter().enumerate() {
                if wa[al] + w > self.support_bound(m) && self.b.get(r, beta) != 0 {
                    out.push((r, beta));
                }
            }
        }
        out
    }

    /// Check `H = ΨBΦ`, the rank equalities and the support of `B`.
    /// `dim_h` adds the check `dim ≤ n · rank H`.
    pub fn verify(&self, dim_h: Option<usize>) -> Result<FactorizationReport> {
        let prod = self.psi.mul(&self.b)?.mul(&self.phi)?;
        let mut mismatches = 0;
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                if prod.get(i, j) != self.h.get(i, j) {
                    mismatches += 1;
                }
            }
        }
        let (rank_h, rank_b) = (self.h.rank(), self.b.rank());
        let (rank_psi, rank_phi) = (self.psi.rank(), self.phi.rank());
        let violations = self.zero_pattern_violations();
        let size = self.ctx.size() as u128;
        let mut checks = vec![
            Check::violations("h_eq_psi_b_phi_mismatches", mismatches as u128),
            Check::new("rank_h_eq_rank_b", rank_h as u128, Relation::Eq, rank_b as u128),
            Check::new("psi_nonsingular", rank_psi as u128, Relation::Eq, size),
            Check::new("phi_nonsingular", rank_phi as u128, Relation::Eq, size),
            Check::violations("b_zero_pattern_violations", violations.len() as u128),
        ];
        if let Some(d) = dim_h {
            checks.push(Check::new(
                "dim_h_le_n_rank_h",
                d as u128,
                Relation::Le,
                self.ctx.n() as u128 * rank_h as u128,
            ));
        }
        let dims = [&self.h, &self.psi, &self.b, &self.phi].map(|m| (m.rows(), m.cols()));
        Ok(FactorizationReport {
            p: self.ctx.p(),
            k: self.ctx.k(),
            n: self.ctx.n(),
            dims,
            entrywise_equal: mismatches == 0,
            mismatches,
            rank_h,
            rank_b,
            rank_psi,
            rank_phi,
            dim_h,
            zero_pattern_violations: violations,
            checks,
        })
    }
}

/// Closed-form upper bounds for the dimension of the hyperplane span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TheoremBounds {
    /// `C(p^k − 1 + n, n)`.
    pub trivial_bound: u128,
    /// `2n · C(⌊p^k/2⌋ + (n−1)(p−1) + n, n)`.
    pub fan_bound: u128,
    /// `2 · C(⌊p^k/2⌋ + (n−1)(p−1) + n, n)`, bounding `rank B`.
    pub ubn_bound: u128,
}

pub fn theorem_bounds(ctx: &RingCtx) -> Result<TheoremBounds> {
    let overflow = || Error::OutOfRange("bound overflows u128".into());
    let (p, n) = (ctx.p() as u128, ctx.n() as u128);
    let pk = ctx.pk() as u128;
    let trivial_bound = binom_u128(pk - 1 + n, n).ok_or_else(overflow)?;
    let top = (pk / 2)
        .checked_add((n - 1).checked_mul(p - 1).ok_or_else(overflow)?)
        .and_then(|t| t.checked_add(n))
        .ok_or_else(overflow)?;
    let c = binom_u128(top, n).ok_or_else(overflow)?;
    Ok(TheoremBounds {
        trivial_bound,
        fan_bound: c.checked_mul(2 * n).ok_or_else(overflow)?,
        ubn_bound: c.checked_mul(2).ok_or_else(overflow)?,
    })
}

impl TheoremBounds {
    /// Checks of computed ranks against the bounds.
    pub fn checks(&self, dim_h: Option<u128>, rank_b: Option<u128>) -> Vec<Check> {
        let mut out = Vec::new();
        if let Some(d) = dim_h {
            out.push(Check::new("dim_h_le_trivial_bound", d, Relation::Le, self.trivial_bound));
            out.push(Check::new("dim_h_le_fan_bound", d, Relation::Le, self.fan_bound));
        }
        if let Some(r) = rank_b {
            out.push(Check::new("rank_b_le_ubn_bound", r, Relation::Le, self.ubn_bound));
        }
        out
    }
}

/// Outcome of [`verify_k1_spans`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1SpanReport {
    /// Span of `⟨x, b⟩^d` equals span of the degree-`d` monomials.
    pub homogeneous: bool,
    /// Span of `⟨x − a, b⟩^d` equals span of monomials of degree `≤ d`.
    pub affine: bool,
    /// `1 = 1{x₁ = 0} + Σ_c 1{x₂ = c x₁}`; `None` unless `n = 2`.
    pub plane_identity: Option<bool>,
}

impl K1SpanReport {
    pub fn all(&self) -> bool {
        self.homogeneous && self.affine && self.plane_identity.unwrap_or(true)
    }
}

/// Power-of-linear-form spans over the prime field for degree `d ≤ p − 1`.
pub fn verify_k1_spans(p: u64, n: usize, d: u64) -> Result<K1SpanReport> {
    let ctx = RingCtx::new(p, 1, n)?;
    if d >= p {
        return Err(Error::Hypothesis(format!("degree {d} must be below p = {p}")));
    }
    if ctx.size() > 4096 {
        return Err(Error::BudgetExceeded { what: "k = 1 spans".into(), needed: ctx.size() as u128, limit: 4096 });
    }
    let size = ctx.size();
    let pts: Vec<Vec<u64>> = ctx.points().map(|x| x.0).collect();
    let pow = |base: u64, e: u64| {
        let mut acc = 1u64;
        for _ in 0..e {
            acc = acc * base % p;
        }
        acc
    };
    let dirs = directions(&ctx);

    let monomials = |exact: bool| -> Result<MatGFp> {
        let exps: Vec<Vec<u64>> = ctx
            .with_exponent(1)?
            .points()
            .map(|e| e.0)
            .filter(|e| {
                let w: u64 = e.iter().sum();
                if exact {
                    w == d
                } else {
                    w <= d
                }
            })
            .collect();
        MatGFp::from_fn(p, exps.len(), size, |r, x| {
            exps[r].iter().zip(&pts[x]).fold(1, |acc, (&e, &xi)| acc * pow(xi, e) % p)
        })
    };

    let forms = MatGFp::from_fn(p, dirs.len(), size, |r, x| pow(ctx.inner_raw(&pts[x], dirs[r].coords()), d))?;
    let homogeneous = forms.same_row_space(&monomials(true)?)?;

    let affine_rows = dirs.len() * size;
    let affine_forms = MatGFp::from_fn(p, affine_rows, size, |r, x| {
        let (a, b) = (&pts[r / dirs.len()], dirs[r % dirs.len()].coords());
        let t = ctx.sub_raw(ctx.inner_raw(&pts[x], b), ctx.inner_raw(a, b));
        pow(t, d)
    })?;
    let affine = affine_forms.same_row_space(&monomials(false)?)?;

    let plane_identity = (n == 2).then(|| {
        pts.iter().all(|x| {
            let mut s = u64::from(x[0] == 0);
            for c in 0..p {
                s += u64::from(x[1] == c * x[0] % p);
            }
            s % p == 1
        })
    });

    Ok(K1SpanReport { homogeneous, affine, plane_identity })
}

/// Degrees of the spanning rows, all of which must stay at most `p^k − 1`.
pub fn span_row_degrees(basis: &HyperSpanBasis) -> Vec<crate::phi::Degree> {
    let ctx = *basis.ctx();
    let table = PhiTable::new(&ctx);
    (0..basis.rows().rows())
        .map(|r| {
            let f = FnTable::new(ctx, basis.rows().row(r)).expect("row length matches");
            expand_with(&f, &table).degree()
        })
        .collect()
}

/// `C(p + n − 2, n − 1) + 1`.
pub fn prime_field_rank_formula(p: u64, n: usize) -> u128 {
    binom_u128(p as u128 + n as u128 - 2, n as u128 - 1).unwrap_or(u128::MAX) + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phi::{phi_table, Degree, MultiIndex};
    use crate::ring::Point;

    fn ctx(p: u64, k: u32, n: usize) -> RingCtx {
        RingCtx::new(p, k, n).unwrap()
    }

    #[test]
    fn dims_at_small_contexts() {
        let b = Budget::default();
        assert_eq!(hyperspan_dim(&ctx(2, 1, 2), &b).unwrap(), 3);
        assert_eq!(hyperspan_dim(&ctx(3, 1, 2), &b).unwrap(), 6);
        assert_eq!(hyperspan_dim(&ctx(2, 1, 3), &b).unwrap(), 4);
        assert_eq!(hyperspan_dim(&ctx(2, 2, 2), &b).unwrap(), 9);
    }

    #[test]
    fn first_row_is_all_ones() {
        let basis = span_basis(&ctx(2, 2, 2), &Budget::default()).unwrap();
        assert!(basis.rows().row(0).iter().all(|&v| v == 1));
    }

    #[test]
    fn phi_and_indicator_families_agree() {
        for c in [ctx(2, 2, 2), ctx(3, 1, 2), ctx(2, 3, 2), ctx(2, 2, 3)] {
            let b = Budget::default();
            let phi = span_basis(&c, &b).unwrap();
            let ind = indicator_basis(&c, &b).unwrap();
            assert!(phi.rows().same_row_space(ind.rows()).unwrap());
        }
    }

    #[test]
    fn membership_examples() {
        let c = ctx(2, 2, 2);
        let b = Budget::default();
        let basis = span_basis(&c, &b).unwrap();
        let phi21 = phi_table(&c, &MultiIndex::new(&c, vec![2, 1]).unwrap());
        assert_eq!(basis.membership(&phi21).unwrap(), None);
        let low_digit = FnTable::from_fn(c, |x| x[0] % 2);
        assert!(basis.membership(&low_digit).unwrap().is_some());
        let h = crate::incidence::Hyperplane::with_level(
            &c,
            crate::incidence::canonical_direction(&c, &Point(vec![1, 3])).unwrap(),
            2,
        );
        let ind = FnTable::indicator(c, &h.points(&c));
        assert!(basis.membership(&ind).unwrap().is_some());
    }

    #[test]
    fn span_rows_have_low_degree() {
        let c = ctx(2, 2, 2);
        let basis = span_basis(&c, &Budget::default()).unwrap();
        assert!(span_row_degrees(&basis).iter().all(|d| d.at_most(3)));
        assert!(span_row_degrees(&basis).contains(&Degree::Finite(3)));
    }

    #[test]
    fn factorization_small() {
        for c in [ctx(2, 1, 2), ctx(2, 2, 2), ctx(3, 1, 2), ctx(2, 1, 3), ctx(2, 2, 3)] {
            let f = build_factorization(&c, &Budget::default()).unwrap();
            let rep = f.verify(None).unwrap();
            assert!(rep.checks.iter().all(|ch| ch.pass), "{c:?} {:?}", rep.checks);
        }
        assert!(build_factorization(&ctx(2, 2, 1), &Budget::default()).is_err());
    }

    #[test]
    fn bound_examples() {
        let t = theorem_bounds(&ctx(2, 2, 2)).unwrap();
        assert_eq!((t.trivial_bound, t.fan_bound, t.ubn_bound), (10, 40, 20));
        assert_eq!(theorem_bounds(&ctx(3, 1, 2)).unwrap().trivial_bound, 6);
        let t = theorem_bounds(&ctx(2, 7, 3)).unwrap();
        assert_eq!(t.trivial_bound, 357_760);
        assert_eq!(t.fan_bound, 6 * 52_394);
        assert!(t.fan_bound < t.trivial_bound);
    }

    #[test]
    fn k1_span_examples() {
        assert!(verify_k1_spans(3, 2, 2).unwrap().all());
        let r = verify_k1_spans(2, 2, 1).unwrap();
        assert!(r.all());
        assert_eq!(r.plane_identity, Some(true));
        assert!(matches!(verify_k1_spans(3, 2, 3), Err(Error::Hypothesis(_))));
    }
}
