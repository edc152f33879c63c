//! Multiscale geometry of `R^n`: cubes, p-adic angles, the rescaling maps,
//! neighbourhoods of sets, and fans.
//!
//! Point sets are sorted lists of point indices.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::incidence::{canonical_direction, directions, Direction, Line};
use crate::phi::{degree, Degree, FnTable};
use crate::ring::{Point, RingCtx};
use crate::rng::{below, rng_for, SampleRng};

/// `{y : y ≡ base mod p^scale}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Cube {
    pub scale: u32,
    /// Representative reduced mod `p^scale`.
    pub base: Point,
}

impl Cube {
    /// The cube on `scale` containing `x`.
    pub fn containing(ctx: &RingCtx, scale: u32, x: &Point) -> Result<Self> {
        ctx.point_index(x.coords())?;
        Ok(Cube { scale, base: ctx.project(x, scale)? })
    }

    pub fn contains(&self, ctx: &RingCtx, x: &[u64]) -> bool {
        let m = ctx.p_pow(self.scale);
        x.iter().zip(self.base.coords()).all(|(&c, &b)| c % m == b)
    }

    /// `other ⊆ self`.
    pub fn contains_cube(&self, ctx: &RingCtx, other: &Cube) -> bool {
        other.scale >= self.scale && self.contains(ctx, other.base.coords())
    }

    /// Sorted member indices.
    pub fn points(&self, ctx: &RingCtx) -> Vec<usize> {
        let mut buf = vec![0u64; ctx.n()];
        (0..ctx.size())
            .filter(|&i| {
                ctx.decode_into(i, &mut buf);
                self.contains(ctx, &buf)
            })
            .collect()
    }
}

/// All cubes on `scale`, ordered by base index.
pub fn cubes(ctx: &RingCtx, scale: u32) -> Vec<Cube> {
    let m = ctx.p_pow(scale);
    let mut out: Vec<Cube> =
        ctx.points().filter(|x| x.coords().iter().all(|&c| c < m)).map(|base| Cube { scale, base }).collect();
    out.sort();
    out
}

/// The p-adic angle `p^{-s}` between two canonical directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Angle {
    /// `p^s ∥ (b − b′)`; `s = 0` is angle one.
    Scale(u32),
    /// The directions coincide.
    Equal,
}

impl Angle {
    pub fn is_one(self) -> bool {
        self == Angle::Scale(0)
    }
}

pub fn angle(ctx: &RingCtx, b: &Direction, b2: &Direction) -> Angle {
    b.coords()
        .iter()
        .zip(b2.coords())
        .filter(|(x, y)| x != y)
        .map(|(&x, &y)| ctx.valuation_raw(ctx.sub_raw(x, y)))
        .min()
        .map_or(Angle::Equal, Angle::Scale)
}

/// `ι_Q(x' + p^ℓ x'') = x''`: the points of `S ⊆ Q` as points of `R_{k−ℓ}^n`.
pub fn iota(ctx: &RingCtx, q: &Cube, s: &[usize]) -> Result<Vec<Point>> {
    let m = ctx.p_pow(q.scale);
    let mut buf = vec![0u64; ctx.n()];
    s.iter()
        .map(|&i| {
            ctx.decode_into(i, &mut buf);
            if !q.contains(ctx, &buf) {
                return Err(Error::OutOfRange(format!("point {buf:?} is outside the cube")));
            }
            Ok(Point(buf.iter().map(|&c| c / m).collect()))
        })
        .collect()
}

/// `π_j^{-1}(π_j(S))`: points within `p^{-j}` of `S`. Empty for empty `S`.
pub fn neighborhood(ctx: &RingCtx, s: &[usize], j: u32) -> Vec<usize> {
    let m = ctx.p_pow(j);
    let mut buf = vec![0u64; ctx.n()];
    let classes: BTreeSet<Vec<u64>> = s
        .iter()
        .map(|&i| {
            ctx.decode_into(i, &mut buf);
            buf.iter().map(|&c| c % m).collect()
        })
        .collect();
    (0..ctx.size())
        .filter(|&i| {
            ctx.decode_into(i, &mut buf);
            let key: Vec<u64> = buf.iter().map(|&c| c % m).collect();
            classes.contains(&key)
        })
        .collect()
}

/// `|S ∩ T|` of two sorted index lists, and its residue mod `p`.
pub fn incidence_count(s: &[usize], t: &[usize], p: u64) -> (usize, u64) {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < s.len() && j < t.len() {
        match s[i].cmp(&t[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    (n, n as u64 % p)
}

/// Sorted intersection of sorted index lists.
pub fn intersect(s: &[usize], t: &[usize]) -> Vec<usize> {
    s.iter().copied().filter(|x| t.binary_search(x).is_ok()).collect()
}

/// `Q′ ∩ 𝓝_{ℓ+1}(a + span(u, v))`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Plane2Nbhd {
    pub anchor: Point,
    pub u: Direction,
    pub v: Direction,
    /// Neighbourhood scale `ℓ + 1`.
    pub nbhd_scale: u32,
}

impl Plane2Nbhd {
    pub fn new(ctx: &RingCtx, anchor: Point, u: Direction, v: Direction, nbhd_scale: u32) -> Result<Self> {
        ctx.point_index(anchor.coords())?;
        if !angle(ctx, &u, &v).is_one() {
            return Err(Error::Invariant("plane directions must make angle one".into()));
        }
        if nbhd_scale > ctx.k() {
            return Err(Error::OutOfRange(format!("scale {nbhd_scale} > k")));
        }
        Ok(Plane2Nbhd { anchor, u, v, nbhd_scale })
    }

    /// Sorted indices of `a + s u + t v` over `s, t ∈ R`.
    pub fn plane_points(&self, ctx: &RingCtx) -> Vec<usize> {
        let mut buf = vec![0u64; ctx.n()];
        let mut out = BTreeSet::new();
        for s in 0..ctx.pk() {
            for t in 0..ctx.pk() {
                for (i, c) in buf.iter_mut().enumerate() {
                    let su = ctx.mul_raw(s, self.u.coords()[i]);
                    let tv = ctx.mul_raw(t, self.v.coords()[i]);
                    *c = ctx.add_raw(self.anchor.coords()[i], ctx.add_raw(su, tv));
                }
                out.insert(ctx.index_of(&buf));
            }
        }
        out.into_iter().collect()
    }

    /// Sorted indices of `Π` inside the cube `outer`.
    pub fn points(&self, ctx: &RingCtx, outer: &Cube) -> Vec<usize> {
        let nb = neighborhood(ctx, &self.plane_points(ctx), self.nbhd_scale);
        let mut buf = vec![0u64; ctx.n()];
        nb.into_iter()
            .filter(|&i| {
                ctx.decode_into(i, &mut buf);
                outer.contains(ctx, &buf)
            })
            .collect()
    }
}

/// `X = ∪ (L_i ∩ Q′) ∖ Q` for `p + 1` lines through `Q` with pairwise angle one.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fan {
    pub scale: u32,
    pub qprime: Cube,
    pub q: Cube,
    pub lines: Vec<Line>,
    pub plane: Option<Plane2Nbhd>,
    /// Sorted indices of `X`.
    pub points: Vec<usize>,
}

/// Points of `L ∩ C`, sorted.
pub fn line_in_cube(ctx: &RingCtx, l: &Line, c: &Cube) -> Vec<usize> {
    let mut buf = vec![0u64; ctx.n()];
    let mut out: Vec<usize> = (0..ctx.pk())
        .filter_map(|t| {
            ctx.affine_raw(l.a.coords(), t, l.b.coords(), &mut buf);
            c.contains(ctx, &buf).then(|| ctx.index_of(&buf))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Validate a fan configuration and materialize `X`.
///
/// Requires `scale ≤ k − 2`; `plane` is required for `n > 2` and checked when given.
pub fn make_fan(
    ctx: &RingCtx,
    scale: u32,
    qprime: Cube,
    q: Cube,
    lines: Vec<Line>,
    plane: Option<Plane2Nbhd>,
) -> Result<Fan> {
    let k = ctx.k();
    if k < 2 || scale > k - 2 {
        return Err(Error::Hypothesis(format!("fan scale {scale} needs scale <= k - 2 (k = {k})")));
    }
    if qprime.scale != scale || q.scale != scale + 1 {
        return Err(Error::Invariant(format!(
            "cube scales ({}, {}) must be ({scale}, {})",
            qprime.scale,
            q.scale,
            scale + 1
        )));
    }
    if !qprime.contains_cube(ctx, &q) {
        return Err(Error::Invariant("inner cube is not inside the outer cube".into()));
    }
    let p = ctx.p();
    if lines.len() as u64 != p + 1 {
        return Err(Error::Invariant(format!("a fan needs {} lines, got {}", p + 1, lines.len())));
    }
    for (i, l) in lines.iter().enumerate() {
        if line_in_cube(ctx, l, &q).is_empty() {
            return Err(Error::Invariant(format!("line {i} misses the inner cube")));
        }
        for (j, l2) in lines.iter().enumerate().skip(i + 1) {
            if !angle(ctx, &l.b, &l2.b).is_one() {
                return Err(Error::Invariant(format!("lines {i} and {j} do not make angle one")));
            }
        }
    }
    if ctx.n() > 2 && plane.is_none() {
        return Err(Error::Invariant("fans in dimension n > 2 need a plane".into()));
    }
    let segments: Vec<Vec<usize>> = lines.iter().map(|l| line_in_cube(ctx, l, &qprime)).collect();
    if let Some(pl) = &plane {
        if pl.nbhd_scale != scale + 1 {
            return Err(Error::Invariant("plane neighbourhood must be on scale + 1".into()));
        }
        if !q.contains(ctx, pl.anchor.coords()) {
            return Err(Error::Invariant("inner cube must contain the plane anchor".into()));
        }
        let pi = pl.points(ctx, &qprime);
        for (i, seg) in segments.iter().enumerate() {
            if seg.iter().any(|x| pi.binary_search(x).is_err()) {
                return Err(Error::Invariant(format!("line {i} leaves the plane neighbourhood")));
            }
        }
    }
    let mut buf = vec![0u64; ctx.n()];
    let mut points: Vec<usize> = segments
        .into_iter()
        .flatten()
        .filter(|&i| {
            ctx.decode_into(i, &mut buf);
            !q.contains(ctx, &buf)
        })
        .collect();
    points.sort_unstable();
    points.dedup();
    Ok(Fan { scale, qprime, q, lines, plane, points })
}

/// How [`fan_family`] produces fans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanMode {
    /// Every distinct configuration of segments (dimension two only).
    Exhaustive,
    /// `count` fans, fan `i` drawn from `(seed, i)`.
    Sampled { seed: u64, count: u64 },
}

pub fn fan_family(ctx: &RingCtx, scale: u32, mode: FanMode, budget: &Budget) -> Result<Vec<Fan>> {
    let k = ctx.k();
    if k < 2 || scale > k - 2 {
        return Err(Error::Hypothesis(format!("fan scale {scale} needs scale <= k - 2 (k = {k})")));
    }
    match mode {
        FanMode::Exhaustive => exhaustive_fans(ctx, scale, budget),
        FanMode::Sampled { seed, count } => (0..count).map(|i| sample_fan(ctx, scale, &mut rng_for(seed, i))).collect(),
    }
}

fn exhaustive_fans(ctx: &RingCtx, scale: u32, budget: &Budget) -> Result<Vec<Fan>> {
    if ctx.n() != 2 {
        return Err(Error::Hypothesis("exhaustive fan enumeration is for n = 2; use sampling".into()));
    }
    let classes = directions(&ctx.with_exponent(1)?);
    let dirs = directions(ctx);
    let mut out = Vec::new();
    for qp in cubes(ctx, scale) {
        for q in cubes(ctx, scale + 1).into_iter().filter(|q| qp.contains_cube(ctx, q)) {
            let q_pts = q.points(ctx);
            // distinct segments L ∩ Q′ per direction class
            let options: Vec<Vec<Line>> = classes
                .iter()
                .map(|c| {
                    let mut seen = BTreeSet::new();
                    let mut opts = Vec::new();
                    for b in dirs.iter().filter(|b| reduces_to(ctx, b, c)) {
                        for &a in &q_pts {
                            let l = Line { b: b.clone(), a: ctx.point(a) };
                            if seen.insert(line_in_cube(ctx, &l, &qp)) {
                                opts.push(l);
                            }
                        }
                    }
                    opts
                })
                .collect();
            let total = options.iter().try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128));
            let needed = total.unwrap_or(u128::MAX).saturating_add(out.len() as u128);
            budget.check_exhaustive("exhaustive fan family", needed)?;
            let mut odo = vec![0usize; options.len()];
            loop {
                let lines = odo.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
                out.push(make_fan(ctx, scale, qp.clone(), q.clone(), lines, None)?);
                let mut pos = 0;
                loop {
                    if pos == odo.len() {
                        break;
                    }
                    odo[pos] += 1;
                    if odo[pos] < options[pos].len() {
                        break;
                    }
                    odo[pos] = 0;
                    pos += 1;
                }
                if pos == odo.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn reduces_to(ctx: &RingCtx, b: &Direction, class: &Direction) -> bool {
    b.coords().iter().zip(class.coords()).all(|(&x, &c)| x % ctx.p() == c)
}

fn random_point(ctx: &RingCtx, rng: &mut SampleRng) -> Vec<u64> {
    (0..ctx.n()).map(|_| below(rng, ctx.pk())).collect()
}

/// A canonical direction reducing to `class` mod `p`.
fn random_lift(ctx: &RingCtx, class: &Direction, rng: &mut SampleRng) -> Direction {
    let p = ctx.p();
    let lead = class.block(&ctx.with_exponent(1).expect("k >= 1"));
    let coords = class
        .coords()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i == lead { 1 } else { ctx.add_raw(c, ctx.mul_raw(p, below(rng, ctx.pk()))) })
        .collect();
    Direction::from_canonical(coords)
}

fn sample_fan(ctx: &RingCtx, scale: u32, rng: &mut SampleRng) -> Result<Fan> {
    let n = ctx.n();
    let fine = ctx.p_pow(scale + 1);
    let anchor = random_point(ctx, rng);
    let qprime = Cube::containing(ctx, scale, &Point(anchor.clone()))?;
    let q = Cube::containing(ctx, scale + 1, &Point(anchor.clone()))?;
    let base_in_q = |rng: &mut SampleRng| -> Point {
        Point(anchor.iter().map(|&c| ctx.add_raw(c, ctx.mul_raw(fine, below(rng, ctx.pk())))).collect())
    };
    let plane_classes = directions(&RingCtx::new(ctx.p(), 1, 2)?);
    let (dirs, plane) = if n == 2 {
        let dirs: Vec<Direction> = plane_classes.iter().map(|c| random_lift(ctx, c, rng)).collect();
        (dirs, None)
    } else {
        let classes = directions(&ctx.with_exponent(1)?);
        let u_class = &classes[below(rng, classes.len() as u64) as usize];
        let v_class = loop {
            let c = &classes[below(rng, classes.len() as u64) as usize];
            if c != u_class {
                break c;
            }
        };
        let u = random_lift(ctx, u_class, rng);
        let v = random_lift(ctx, v_class, rng);
        let p = ctx.p();
        let dirs = plane_classes
            .iter()
            .map(|st| {
                let s = ctx.add_raw(st.coords()[0], ctx.mul_raw(p, below(rng, ctx.pk())));
                let t = ctx.add_raw(st.coords()[1], ctx.mul_raw(p, below(rng, ctx.pk())));
                let w: Vec<u64> =
                    (0..n).map(|i| ctx.add_raw(ctx.mul_raw(s, u.coords()[i]), ctx.mul_raw(t, v.coords()[i]))).collect();
                canonical_direction(ctx, &Point(w))
            })
            .collect::<Result<Vec<_>>>()?;
        let plane = Plane2Nbhd::new(ctx, Point(anchor.clone()), u, v, scale + 1)?;
        (dirs, Some(plane))
    };
    let lines = dirs.into_iter().map(|b| Line { b, a: base_in_q(rng) }).collect();
    make_fan(ctx, scale, qprime, q, lines, plane)
}

/// A fan on which `f` does not sum to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FanViolation {
    pub fan_index: usize,
    pub sum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FanTestReport {
    pub fans_checked: usize,
    pub violations: Vec<FanViolation>,
}

impl FanTestReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Σ_{x ∈ X} f(x) mod p`.
pub fn fan_sum(f: &FnTable, fan: &Fan) -> u64 {
    let p = f.ctx().p();
    fan.points.iter().map(|&i| f.get(i) as u64).sum::<u64>() % p
}

/// Sum `f` over every fan; a nonzero sum shows `f` is outside the hyperplane span.
pub fn fan_test<'a>(f: &FnTable, fans: impl IntoIterator<Item = &'a Fan>) -> FanTestReport {
    let mut violations = Vec::new();
    let mut fans_checked = 0;
    for (i, fan) in fans.into_iter().enumerate() {
        fans_checked += 1;
        let sum = fan_sum(f, fan);
        if sum != 0 {
            violations.push(FanViolation { fan_index: i, sum });
        }
    }
    FanTestReport { fans_checked, violations }
}

/// Compare the sums of `f` over `L ∩ Q` and `L′ ∩ Q` for parallel lines
/// through `Q`. Requires `deg f ≤ p^k − 1`.
pub fn parallel_line_check(f: &FnTable, q: &Cube, b: &Direction, l: &Line, l2: &Line) -> Result<bool> {
    let ctx = f.ctx();
    if &l.b != b || &l2.b != b {
        return Err(Error::Hypothesis("both lines must have the given direction".into()));
    }
    if let Degree::Finite(d) = degree(f) {
        if d > ctx.pk() - 1 {
            return Err(Error::Hypothesis(format!(
                "function has a term of weight |alpha| = {d} > p^k - 1 = {}",
                ctx.pk() - 1
            )));
        }
    }
    let s1 = line_in_cube(ctx, l, q);
    let s2 = line_in_cube(ctx, l2, q);
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::Hypothesis("both lines must meet the cube".into()));
    }
    let p = ctx.p();
    let sum = |s: &[usize]| s.iter().map(|&i| f.get(i) as u64).sum::<u64>() % p;
    Ok(sum(&s1) == sum(&s2))
}
