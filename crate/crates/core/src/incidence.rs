//! Directions, hyperplanes and lines in `R^n`, and the point/hyperplane
//! incidence matrices with their rank relations.
//!
//! Directions are enumerated block by block (block `i` holds the canonical
//! vectors whose first unit coordinate is `i`) and by point index inside a
//! block. Matrix rows and columns follow this order and the point codec.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::check::{Check, Relation};
use crate::error::{Error, Result};
use crate::gfp::MatGFp;
use crate::ring::{binom_u128, Point, RingCtx};

/// A canonical direction: the first unit coordinate is one and the earlier
/// coordinates are multiples of `p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Direction(Point);

impl Direction {
    pub fn rep(&self) -> &Point {
        &self.0
    }

    pub fn coords(&self) -> &[u64] {
        self.0.coords()
    }

    /// Wrap coordinates already known to be canonical.
    pub(crate) fn from_canonical(coords: Vec<u64>) -> Direction {
        Direction(Point(coords))
    }

    /// Position of the first unit coordinate.
    pub fn block(&self, ctx: &RingCtx) -> usize {
        self.coords().iter().position(|&c| c % ctx.p() != 0).expect("canonical")
    }
}

/// Scale `v` by the inverse of its first unit coordinate.
pub fn canonical_direction(ctx: &RingCtx, v: &Point) -> Result<Direction> {
    if v.dim() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: ctx.n(), found: v.dim() });
    }
    let coords: Vec<u64> = v.coords().iter().map(|c| c % ctx.pk()).collect();
    let lead = coords.iter().find(|&&c| c % ctx.p() != 0).ok_or(Error::DegenerateDirection)?;
    let inv = ctx.inverse_raw(*lead)?;
    Ok(Direction(Point(coords.iter().map(|&c| ctx.mul_raw(c, inv)).collect())))
}

fn is_canonical(ctx: &RingCtx, x: &[u64]) -> bool {
    match x.iter().position(|&c| c % ctx.p() != 0) {
        Some(i) => x[i] == 1,
        None => false,
    }
}

/// One canonical representative per projective class of nondegenerate vectors.
pub fn directions(ctx: &RingCtx) -> Vec<Direction> {
    let mut out: Vec<(usize, Direction)> = ctx
        .points()
        .filter(|x| is_canonical(ctx, x.coords()))
        .map(|x| {
            let d = Direction(x);
            (d.block(ctx), d)
        })
        .collect();
    // stable: keeps index order inside a block
    out.sort_by_key(|(b, _)| *b);
    out.into_iter().map(|(_, d)| d).collect()
}

/// `p^{(k-1)(n-1)} (p^n - 1)/(p - 1)`.
pub fn direction_count(ctx: &RingCtx) -> u128 {
    let p = ctx.p() as u128;
    let n = ctx.n() as u32;
    p.pow((ctx.k() - 1) * (n - 1)) * (p.pow(n) - 1) / (p - 1)
}

/// `H_b(a) = {x : ⟨x − a, b⟩ = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Hyperplane {
    pub b: Direction,
    pub a: Point,
}

impl Hyperplane {
    pub fn new(ctx: &RingCtx, b: Direction, a: Point) -> Result<Self> {
        ctx.point_index(a.coords())?;
        Ok(Hyperplane { b, a })
    }

    /// The hyperplane `{x : ⟨x, b⟩ = c}`.
    pub fn with_level(ctx: &RingCtx, b: Direction, c: u64) -> Self {
        // a = c·e_i at the leading unit coordinate i, where b_i = 1
        let mut a = vec![0u64; ctx.n()];
        a[b.block(ctx)] = c % ctx.pk();
        Hyperplane { b, a: Point(a) }
    }

    /// `⟨a, b⟩`, the level shared by all members.
    pub fn level(&self, ctx: &RingCtx) -> u64 {
        ctx.inner_raw(self.a.coords(), self.b.coords())
    }

    pub fn contains(&self, ctx: &RingCtx, x: &[u64]) -> bool {
        ctx.inner_raw(x, self.b.coords()) == self.level(ctx)
    }

    /// Sorted member indices.
    pub fn points(&self, ctx: &RingCtx) -> Vec<usize> {
        let level = self.level(ctx);
        let mut buf = vec![0u64; ctx.n()];
        (0..ctx.size())
            .filter(|&i| {
                ctx.decode_into(i, &mut buf);
                ctx.inner_raw(&buf, self.b.coords()) == level
            })
            .collect()
    }
}

/// Every hyperplane, once: `(b, c)` over directions and levels `c ∈ R`.
pub fn all_hyperplanes(ctx: &RingCtx) -> Vec<Hyperplane> {
    directions(ctx)
        .into_iter()
        .flat_map(|b| (0..ctx.pk()).map(move |c| (b.clone(), c)))
        .map(|(b, c)| Hyperplane::with_level(ctx, b, c))
        .collect()
}

/// `L_b(a) = {a + t b : t ∈ R}`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Line {
    pub b: Direction,
    pub a: Point,
}

impl Line {
    pub fn new(ctx: &RingCtx, b: Direction, a: Point) -> Result<Self> {
        ctx.point_index(a.coords())?;
        Ok(Line { b, a })
    }

    /// Point indices `a + t b` in order of `t`.
    pub fn trace(&self, ctx: &RingCtx) -> Vec<usize> {
        let mut buf = vec![0u64; ctx.n()];
        (0..ctx.pk())
            .map(|t| {
                ctx.affine_raw(self.a.coords(), t, self.b.coords(), &mut buf);
                ctx.index_of(&buf)
            })
            .collect()
    }

    /// Sorted member indices.
    pub fn points(&self, ctx: &RingCtx) -> Vec<usize> {
        let mut pts = self.trace(ctx);
        pts.sort_unstable();
        pts
    }

    /// Same line as a set: same direction and `other.a` lies on `self`.
    pub fn same_as(&self, ctx: &RingCtx, other: &Line) -> bool {
        self.b == other.b && self.points(ctx).binary_search(&ctx.index_of(other.a.coords())).is_ok()
    }
}

/// Which incidence matrix to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncidenceKind {
    /// Points × points, entry 1 iff `⟨x, y⟩ = 0`.
    W,
    /// Directions × points, entry 1 iff `x ∈ H_b`.
    Wstar,
    /// Affine hyperplanes `(a, b)` × points, entry 1 iff `x ∈ H_b(a)`; one row
    /// per base point and direction, so every hyperplane repeats `p^{k(n-1)}` times.
    AstarLiteral,
    /// Affine hyperplanes `(b, c)` × points, entry 1 iff `⟨x, b⟩ = c`; the
    /// distinct rows of [`IncidenceKind::AstarLiteral`].
    AstarReduced,
}

/// Largest `p^{kn}` for which the literal affine matrix is built.
pub const LITERAL_ASTAR_MAX_POINTS: usize = 256;

pub fn build_incidence(kind: IncidenceKind, ctx: &RingCtx, budget: &Budget) -> Result<MatGFp> {
    let size = ctx.size();
    let p = ctx.p();
    let mut buf = vec![0u64; ctx.n()];
    match kind {
        IncidenceKind::W => {
            budget.check_entries("W", size as u128, size as u128)?;
            let pts: Vec<Vec<u64>> = ctx.points().map(|x| x.0).collect();
            MatGFp::from_fn(p, size, size, |i, j| u64::from(ctx.inner_raw(&pts[i], &pts[j]) == 0))
        }
        IncidenceKind::Wstar => {
            let dirs = directions(ctx);
            budget.check_entries("W*", dirs.len() as u128, size as u128)?;
            MatGFp::from_fn(p, dirs.len(), size, |i, j| {
                ctx.decode_into(j, &mut buf);
                u64::from(ctx.inner_raw(&buf, dirs[i].coords()) == 0)
            })
        }
        IncidenceKind::AstarLiteral => {
            if size > LITERAL_ASTAR_MAX_POINTS {
                return Err(Error::BudgetExceeded {
                    what: "literal A* (use the reduced spanning set)".into(),
                    needed: size as u128,
                    limit: LITERAL_ASTAR_MAX_POINTS as u128,
                });
            }
            let dirs = directions(ctx);
            let rows = size * dirs.len();
            budget.check_entries("literal A*", rows as u128, size as u128)?;
            let pts: Vec<Vec<u64>> = ctx.points().map(|x| x.0).collect();
            MatGFp::from_fn(p, rows, size, |r, j| {
                let (a, b) = (&pts[r / dirs.len()], dirs[r % dirs.len()].coords());
                u64::from(ctx.inner_raw(&pts[j], b) == ctx.inner_raw(a, b))
            })
        }
        IncidenceKind::AstarReduced => {
            let dirs = directions(ctx);
            let pk = ctx.pk() as usize;
            let rows = dirs.len() * pk;
            budget.check_entries("reduced A*", rows as u128, size as u128)?;
            let mut m = MatGFp::zeros(p, rows, size)?;
            for (d, b) in dirs.iter().enumerate() {
                for j in 0..size {
                    ctx.decode_into(j, &mut buf);
                    let c = ctx.inner_raw(&buf, b.coords()) as usize;
                    m.set(d * pk + c, j, 1);
                }
            }
            Ok(m)
        }
    }
}

/// Which construction supplied the affine rank in a [`RankReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AstarPath {
    Literal,
    Reduced,
}

/// Ranks of the incidence matrices at one context, with every rank relation
/// that applies there.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankReport {
    pub p: u64,
    pub k: u32,
    pub n: usize,
    pub rank_w: Option<u128>,
    pub rank_wstar: Option<u128>,
    /// `rank A* = dim` of the hyperplane function space.
    pub dim_h: Option<u128>,
    pub astar_path: Option<AstarPath>,
    /// `rank W*_{p^j, n}` for `j = 1..=k`.
    pub rank_wstar_by_scale: Vec<u128>,
    pub checks: Vec<Check>,
    /// Quantities skipped because of the budget, with the reason.
    pub omitted: Vec<String>,
}

impl RankReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn ranked(kind: IncidenceKind, ctx: &RingCtx, budget: &Budget, rank_bound: u128) -> Result<u128> {
    let (rows, cols) = match kind {
        IncidenceKind::W => (ctx.size() as u128, ctx.size() as u128),
        IncidenceKind::Wstar => (direction_count(ctx), ctx.size() as u128),
        IncidenceKind::AstarReduced => (direction_count(ctx) * ctx.pk() as u128, ctx.size() as u128),
        IncidenceKind::AstarLiteral => (direction_count(ctx) * ctx.size() as u128, ctx.size() as u128),
    };
    budget.check_elimination(&format!("{kind:?}"), rows, cols, rank_bound)?;
    Ok(build_incidence(kind, ctx, budget)?.rank() as u128)
}

/// `C(p^k − 1 + n, n)`, the dimension bound for the hyperplane span.
pub fn trivial_dim_bound(ctx: &RingCtx) -> u128 {
    binom_u128(ctx.pk() as u128 - 1 + ctx.n() as u128, ctx.n() as u128).unwrap_or(u128::MAX)
}

/// Ranks of `W`, `W*` and `A*` at `ctx` and the relations among them.
///
/// Quantities over budget are left out and listed in `omitted`, together with
/// every check that needs them.
pub fn rank_report(ctx: &RingCtx, budget: &Budget) -> RankReport {
    rank_report_within(ctx, budget, u128::MAX)
}

/// As [`rank_report`], but the dimension `n+1` comparison is only attempted
/// when `R^{n+1}` has at most `next_dim_max_points` points.
pub fn rank_report_within(ctx: &RingCtx, budget: &Budget, next_dim_max_points: u128) -> RankReport {
    let (p, k, n) = (ctx.p(), ctx.k(), ctx.n());
    let mut omitted = Vec::new();
    let mut note = |what: &str, e: Error| omitted.push(format!("{what}: {e}"));

    let rank_w = ranked(IncidenceKind::W, ctx, budget, u128::MAX).map_err(|e| note("rank_W", e)).ok();
    let mut by_scale = Vec::new();
    for j in 1..=k {
        let sub = ctx.with_exponent(j).expect("smaller exponent");
        match ranked(IncidenceKind::Wstar, &sub, budget, u128::MAX) {
            Ok(r) => by_scale.push(r),
            Err(e) => {
                note(&format!("rank_Wstar at p^{j}"), e);
                break;
            }
        }
    }
    let rank_wstar = (by_scale.len() == k as usize).then(|| by_scale[k as usize - 1]);

    let bound = trivial_dim_bound(ctx);
    let (dim_h, astar_path) = if ctx.size() <= LITERAL_ASTAR_MAX_POINTS
        && budget.check_entries("literal A*", direction_count(ctx) * ctx.size() as u128, ctx.size() as u128).is_ok()
    {
        match ranked(IncidenceKind::AstarLiteral, ctx, budget, bound) {
            Ok(r) => (Some(r), Some(AstarPath::Literal)),
            Err(e) => {
                note("dim_H", e);
                (None, None)
            }
        }
    } else {
        match ranked(IncidenceKind::AstarReduced, ctx, budget, bound) {
            Ok(r) => (Some(r), Some(AstarPath::Reduced)),
            Err(e) => {
                note("dim_H", e);
                (None, None)
            }
        }
    };

    let mut checks = Vec::new();
    if let (Some(w), Some(ws)) = (rank_w, rank_wstar) {
        checks.push(Check::new("rank_Wstar_le_rank_W", ws, Relation::Le, w));
        if n == 2 && k >= 2 {
            checks.push(Check::new("rank_Wstar_lt_rank_W_planar", ws, Relation::Lt, w));
        }
    }
    if n >= 2 {
        if let (Some(w), Some(ws)) = (rank_w, rank_wstar) {
            checks.push(Check::new("rank_W_le_1_plus_k_rank_Wstar", w, Relation::Le, 1 + k as u128 * ws));
        }
        if let (Some(w), true) = (rank_w, by_scale.len() == k as usize) {
            let sum: u128 = by_scale.iter().sum();
            checks.push(Check::new("rank_W_le_1_plus_sum_scales", w, Relation::Le, 1 + sum));
        }
        if k >= 2 {
            match column_block_checks(ctx, &by_scale, budget) {
                Ok(mut c) => checks.append(&mut c),
                Err(e) => note("column blocks", e),
            }
        }
    }
    if let Some(dh) = dim_h {
        if let Some(ws) = rank_wstar {
            checks.push(Check::new("rank_Wstar_le_dim_H", ws, Relation::Le, dh));
        }
        checks.push(Check::new("dim_H_le_binomial", dh, Relation::Le, bound));
        if k == 1 {
            checks.push(Check::new("dim_H_eq_binomial", dh, Relation::Eq, bound));
        }
        let up = ctx.with_dim(n + 1);
        let next_points = up.as_ref().map_or(u128::MAX, |u| u.size() as u128);
        let ws_up = if next_points > next_dim_max_points {
            Err(Error::BudgetExceeded {
                what: String::from("points in dimension n+1"),
                needed: next_points,
                limit: next_dim_max_points,
            })
        } else {
            up.and_then(|up| ranked(IncidenceKind::Wstar, &up, budget, u128::MAX))
        };
        match ws_up {
            Ok(ws_up) => {
                checks.push(Check::new("dim_H_le_rank_Wstar_next_dim", dh, Relation::Le, ws_up));
                checks.push(Check::new(
                    "rank_Wstar_next_dim_le_2_k_plus_1_dim_H",
                    ws_up,
                    Relation::Le,
                    2 * (k as u128 + 1) * dh,
                ));
            }
            Err(e) => note("rank_Wstar in dimension n+1", e),
        }
    }
    if k == 1 {
        if let Some(w) = rank_w {
            let expect = binom_u128(p as u128 + n as u128 - 2, n as u128 - 1).unwrap_or(u128::MAX) + 1;
            checks.push(Check::new("rank_W_prime_field_formula", w, Relation::Eq, expect));
        }
    }

    RankReport { p, k, n, rank_w, rank_wstar, dim_h, astar_path, rank_wstar_by_scale: by_scale, checks, omitted }
}

/// Columns of `W` whose minimal coordinate valuation is exactly `j` have the
/// rank of `W*` at modulus `p^{k−j}`, for `0 ≤ j < k`.
pub fn column_block_checks(ctx: &RingCtx, wstar_by_scale: &[u128], budget: &Budget) -> Result<Vec<Check>> {
    let k = ctx.k();
    let w = build_incidence(IncidenceKind::W, ctx, budget)?;
    let mut buf = vec![0u64; ctx.n()];
    let mut out = Vec::new();
    for j in 0..k {
        let cols: Vec<usize> = (0..ctx.size())
            .filter(|&y| {
                ctx.decode_into(y, &mut buf);
                buf.iter().map(|&c| ctx.valuation_raw(c)).min() == Some(j)
            })
            .collect();
        let r = w.select_cols(&cols).rank() as u128;
        let expect = match wstar_by_scale.get((k - j) as usize - 1) {
            Some(&e) => e,
            None => ranked(IncidenceKind::Wstar, &ctx.with_exponent(k - j)?, budget, u128::MAX)?,
        };
        out.push(Check::new(format!("column_block_{j}_rank"), r, Relation::Eq, expect));
    }
    Ok(out)
}
