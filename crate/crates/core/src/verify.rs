//! Property suites over one context. Each suite returns named [`Check`]s,
//! plus the parts it skipped (budget or hypothesis) and counts of what it
//! examined.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::Budget;
use crate::check::{Check, Relation};
use crate::error::{Error, Result};
use crate::geometry::{
    angle, cubes, fan_family, fan_test, incidence_count, intersect, iota, line_in_cube, neighborhood,
    parallel_line_check, Cube, Fan, FanMode, Plane2Nbhd,
};
use crate::gfp::MatGFp;
use crate::hyperspace::{
    build_factorization, hyperspan_dim, indicator_basis, span_basis, span_row_degrees, theorem_bounds, verify_k1_spans,
    FACTORIZATION_MAX_POINTS,
};
use crate::incidence::{
    all_hyperplanes, build_incidence, canonical_direction, direction_count, directions, rank_report, Direction,
    Hyperplane, IncidenceKind, Line,
};
use crate::phi::{
    coeffs_by_forward_differences, degree, difference, expand_with, is_d_null, omega_dim, phi_table,
    product_coeff_tensor, scale_coeffs, Degree, FnTable, MultiIndex, NullMode, PhiCoeffs, PhiTable,
};
use crate::ring::{binom_mod_p, binom_u128, Point, RingCtx};
use crate::rng::{below, rng_for, SampleRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Suite {
    Phi,
    Incidence,
    Factorization,
    Geometry,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Phi, Suite::Incidence, Suite::Factorization, Suite::Geometry];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Phi => "phi",
            Suite::Incidence => "incidence",
            Suite::Factorization => "factorization",
            Suite::Geometry => "geometry",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::OutOfRange(format!("unknown suite {s:?}")))
    }
}

/// Seed, sample count and budget shared by the suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Sample size for the sampled parts (fans, random tables, parallel lines).
    pub samples: u64,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: 1000, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Skipped parts with the reason.
    pub omitted: Vec<String>,
    /// How many objects each sweep examined.
    pub stats: Vec<(String, u128)>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checks: Vec::new(), omitted: Vec::new(), stats: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn stat(&self, name: &str) -> Option<u128> {
        self.stats.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    fn violations(&mut self, name: impl Into<String>, count: usize) {
        self.checks.push(Check::violations(name, count as u128));
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    fn stat_add(&mut self, name: &str, v: u128) {
        match self.stats.iter_mut().find(|(n, _)| n == name) {
            Some((_, x)) => *x += v,
            None => self.stats.push((String::from(name), v)),
        }
    }

    /// Run `part`; budget and hypothesis errors become an omission note.
    fn part(&mut self, name: &str, part: impl FnOnce(&mut Self) -> Result<()>) -> Result<()> {
        match part(self) {
            Ok(()) => Ok(()),
            Err(e @ (Error::BudgetExceeded { .. } | Error::Hypothesis(_))) => {
                self.omitted.push(format!("{name}: {e}"));
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

pub fn run_suite(suite: Suite, ctx: &RingCtx, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Phi => phi_suite(ctx, cfg),
        Suite::Incidence => incidence_suite(ctx, cfg),
        Suite::Factorization => factorization_suite(ctx, cfg),
        Suite::Geometry => geometry_suite(ctx, cfg),
    }
}

fn random_table(ctx: &RingCtx, rng: &mut SampleRng) -> FnTable {
    let p = ctx.p();
    FnTable::from_fn(*ctx, |_| below(rng, p))
}

fn pow_mod(base: u64, e: u64, p: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * (base % p) % p)
}

fn uni_phi(table: &PhiTable, ctx: &RingCtx, m: usize) -> FnTable {
    FnTable::new(*ctx, table.row(m).to_vec()).expect("row has p^k entries")
}

// ---------------------------------------------------------------- phi

pub fn phi_suite(ctx: &RingCtx, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Phi);
    let budget = &cfg.budget;
    let uni = ctx.with_dim(1)?;
    let (p, pk) = (ctx.p(), ctx.pk());
    let pku = pk as u128;

    rep.part("ring codecs", |rep| ring_part(rep, ctx, budget))?;
    rep.part("univariate identities", |rep| {
        budget.check_entries("univariate phi table", pku, pku)?;
        budget.check_exhaustive("univariate identities", pku.pow(3))?;
        let table = PhiTable::new(&uni);
        univariate_part(rep, &uni, &table)
    })?;
    rep.part("vandermonde", |rep| {
        budget.check_exhaustive("vandermonde", pku.pow(4) / 2)?;
        let table = PhiTable::new(&uni);
        let mut bad = 0;
        for m in 0..pk as usize {
            for x in 0..pk as usize {
                for y in 0..pk as usize {
                    let lhs = table.get(m, (x + y) % pk as usize) as u64;
                    let rhs = (0..=m).map(|i| table.get(i, x) as u64 * table.get(m - i, y) as u64).sum::<u64>() % p;
                    bad += usize::from(lhs != rhs);
                }
            }
        }
        rep.violations("vandermonde_violations", bad);
        Ok(())
    })?;
    rep.part("derivative rules", |rep| {
        budget.check_exhaustive("derivative rules", pku.pow(4))?;
        derivative_part(rep, &uni)
    })?;
    rep.part("expansion paths", |rep| {
        budget.check_exhaustive("expansion paths", pku.pow(4))?;
        expansion_part(rep, &uni, cfg)
    })?;
    rep.part("product and unit scaling", |rep| {
        budget.check_exhaustive("product and unit scaling", pku.pow(4))?;
        product_part(rep, &uni)
    })?;
    rep.part("digit locality", |rep| digit_locality_part(rep, &uni, cfg))?;
    rep.part("difference characterization", |rep| dm0_part(rep, &uni, budget))?;
    rep.part("null characterization", |rep| null_part(rep, ctx, cfg))?;
    rep.part("polynomial identification", |rep| polynomial_part(rep, ctx, budget))?;
    rep.part("digit product degree", |rep| digit_product_part(rep, ctx, budget))?;
    rep.part("product coefficients", |rep| {
        budget.check_exhaustive("product coefficients", pku.pow(5))?;
        let mut bad = 0;
        for m in 0..pk {
            let c = product_coeff_tensor(ctx, m)?;
            bad += c.support().filter(|(a, _)| a.weight() > m + 2 * (p - 1)).count();
        }
        rep.violations("product_coeff_zero_pattern_violations", bad);
        Ok(())
    })?;
    Ok(rep)
}

fn ring_part(rep: &mut SuiteReport, ctx: &RingCtx, budget: &Budget) -> Result<()> {
    let (p, pk) = (ctx.p(), ctx.pk());
    let lim = pk.min(128);
    let mut bad = 0;
    for x in 0..lim {
        for m in 0..lim {
            let direct = binom_u128(x as u128, m as u128).map(|v| (v % p as u128) as u64);
            bad += usize::from(direct != Some(binom_mod_p(x, m, p)));
        }
    }
    rep.violations("lucas_vs_direct_binomial_violations", bad);

    let uni = ctx.with_dim(1)?;
    let bad = (0..pk.min(1 << 16))
        .filter(|&x| {
            let d = uni.digits(uni.elem(x));
            d.iter().any(|&c| c >= p) || uni.from_digits(&d).map(|e| e.value()) != Ok(x)
        })
        .count();
    rep.violations("digit_roundtrip_violations", bad);

    budget.check_exhaustive("point codec", ctx.size() as u128)?;
    let bad = (0..ctx.size()).filter(|&i| ctx.point_index(ctx.point(i).coords()) != Ok(i)).count();
    rep.violations("point_codec_roundtrip_violations", bad);

    budget.check_exhaustive("projection homomorphism", (pk as u128).pow(2) * ctx.k() as u128)?;
    let mut bad = 0;
    for l in 0..=ctx.k() {
        let m = ctx.p_pow(l);
        let pi = |v: u64| uni.project(&Point(vec![v]), l).map(|x| x.coords()[0]);
        for x in 0..pk {
            for y in 0..pk {
                let (px, py) = (pi(x)?, pi(y)?);
                let sum = pi(uni.add(uni.elem(x), uni.elem(y)).value())?;
                let prod = pi(uni.mul(uni.elem(x), uni.elem(y)).value())?;
                bad += usize::from(sum != (px + py) % m || prod != px * py % m);
            }
        }
    }
    rep.violations("projection_homomorphism_violations", bad);
    Ok(())
}

fn univariate_part(rep: &mut SuiteReport, uni: &RingCtx, table: &PhiTable) -> Result<()> {
    let (p, pk) = (uni.p(), uni.pk() as usize);
    let mut bad = 0;
    for m in 0..pk {
        for x in 0..pk {
            bad += usize::from(table.get(m, x) as u64 != binom_mod_p(x as u64, m as u64, p));
        }
    }
    rep.violations("pascal_table_vs_lucas_violations", bad);

    let mut bad = 0;
    for m in 0..pk {
        for x in 0..=m {
            let want = u32::from(x == m);
            bad += usize::from(table.get(m, x) != want);
        }
    }
    rep.violations("triangularity_violations", bad);
    let full = MatGFp::from_fn(p, pk, pk, |m, x| table.get(m, x) as u64)?;
    rep.push(Check::new("phi_rows_independent", full.rank() as u128, Relation::Eq, pk as u128));

    // φ_{p^j m}(p^j x) = φ_m(x) and φ_m(p^j x) = 0 unless p^j | m
    let mut bad = 0;
    for j in 1..uni.k() {
        let s = uni.p_pow(j) as usize;
        for x in 0..pk {
            let sx = s * x % pk;
            for m in 0..pk {
                if m * s < pk {
                    bad += usize::from(table.get(m * s, sx) != table.get(m, x));
                }
                if m % s != 0 {
                    bad += usize::from(table.get(m, sx) != 0);
                }
            }
        }
    }
    rep.violations("scale_nesting_violations", bad);
    Ok(())
}

fn derivative_part(rep: &mut SuiteReport, uni: &RingCtx) -> Result<()> {
    let (p, pk) = (uni.p(), uni.pk() as usize);
    let table = PhiTable::new(uni);
    let phis: Vec<FnTable> = (0..pk).map(|m| uni_phi(&table, uni, m)).collect();
    let deg = |f: &FnTable| expand_with(f, &table).degree();

    let mut bad = 0;
    for m in 0..pk {
        let d = difference(&phis[m], &Point(vec![1]), false)?;
        let want = if m == 0 { FnTable::zero(*uni) } else { phis[m - 1].clone() };
        bad += usize::from(d != want);
    }
    rep.violations("unit_step_lowers_index_violations", bad);

    let (mut delta_bad, mut unit_bad) = (0, 0);
    for c in 0..pk as u64 {
        let unit = uni.is_unit(uni.elem(c));
        for m in 1..pk {
            let prev = &phis[m - 1];
            let d = difference(&phis[m], &Point(vec![c]), false)?;
            let r = d.combine(1, prev, (p - c % p) % p)?;
            delta_bad += usize::from(!deg(&r).at_most(m as i64 - 2));
            if unit {
                let dc = difference(&phis[m], &Point(vec![c]), true)?;
                unit_bad += usize::from(!deg(&dc.sub(prev)?).at_most(m as i64 - 2));
            }
        }
    }
    rep.violations("shift_difference_leading_term_violations", delta_bad);
    rep.violations("unit_derivative_leading_term_violations", unit_bad);
    Ok(())
}

fn expansion_part(rep: &mut SuiteReport, uni: &RingCtx, cfg: &SuiteConfig) -> Result<()> {
    let (p, pk) = (uni.p(), uni.pk());
    let table = PhiTable::new(uni);
    let mut bad = 0;
    for i in 0..200 {
        let f = random_table(uni, &mut rng_for(cfg.seed, i));
        let a = expand_with(&f, &table);
        bad += usize::from(a.coeffs() != coeffs_by_forward_differences(f.values(), p).as_slice());
    }
    rep.violations("expansion_paths_disagree", bad);
    rep.stat_add("random_univariate_tables", 200);

    // φ_m(a·) = Σ_ℓ Δ_a^ℓ φ_m(0) φ_ℓ
    let mut bad = 0;
    for a in 0..pk {
        for m in 0..pk {
            let row = table.row(m as usize);
            let g = FnTable::from_fn(*uni, |x| row[uni.mul_raw(x[0], a) as usize] as u64);
            let mut want = scale_coeffs(uni, m, uni.elem(a))?;
            want.resize(pk as usize, 0);
            bad += usize::from(expand_with(&g, &table).coeffs() != want.as_slice());
        }
    }
    rep.violations("dilation_coefficients_violations", bad);
    Ok(())
}

fn product_part(rep: &mut SuiteReport, uni: &RingCtx) -> Result<()> {
    let (p, pk) = (uni.p(), uni.pk() as usize);
    let table = PhiTable::new(uni);
    let phis: Vec<FnTable> = (0..pk).map(|m| uni_phi(&table, uni, m)).collect();
    let deg = |f: &FnTable| expand_with(f, &table).degree();

    let mut bad = 0;
    for l in 0..pk {
        for m in 0..pk - l {
            let c = binom_mod_p((l + m) as u64, l as u64, p);
            let r = phis[l].mul(&phis[m])?.combine(1, &phis[l + m], (p - c) % p)?;
            bad += usize::from(!deg(&r).at_most((l + m) as i64 - 1));
        }
    }
    rep.violations("product_rule_violations", bad);

    let mut bad = 0;
    for b in (0..pk as u64).filter(|&b| uni.is_unit(uni.elem(b))) {
        for (m, phi) in phis.iter().enumerate().take(pk) {
            let row = table.row(m);
            let g = FnTable::from_fn(*uni, |x| row[uni.mul_raw(x[0], b) as usize] as u64);
            let bm = pow_mod(b, m as u64, p);
            let r = g.combine(1, phi, (p - bm) % p)?;
            bad += usize::from(!deg(&r).at_most(m as i64 - 1));
        }
    }
    rep.violations("unit_scaling_violations", bad);
    Ok(())
}

/// Functions of `g` indexed by `0..count`, exhaustively when there are at most
/// `limit` of them, otherwise `samples` seeded draws.
fn enumerate_or_sample(count: u128, limit: u128, samples: u64, seed: u64) -> (Vec<u128>, bool) {
    if count <= limit {
        ((0..count).collect(), true)
    } else {
        let ids = (0..samples)
            .map(|i| {
                let mut rng = rng_for(seed, i);
                let hi = below(&mut rng, u64::MAX) as u128;
                let lo = below(&mut rng, u64::MAX) as u128;
                ((hi << 64) | lo) % count
            })
            .collect();
        (ids, false)
    }
}

fn base_p_digits(mut id: u128, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = (id % p as u128) as u64;
            id /= p as u128;
            d
        })
        .collect()
}

fn digit_locality_part(rep: &mut SuiteReport, uni: &RingCtx, cfg: &SuiteConfig) -> Result<()> {
    let (p, pk, k) = (uni.p(), uni.pk(), uni.k());
    cfg.budget.check_entries("univariate phi table", pk as u128, pk as u128)?;
    let table = PhiTable::new(uni);
    let limit = 4096u128;
    let (mut bad_low, mut bad_digit) = (0, 0);
    let mut all_exhaustive = true;
    for l in 0..k {
        let pl = uni.p_pow(l);
        let count = (p as u128).checked_pow(pl as u32).unwrap_or(u128::MAX);
        let (ids, ex) = enumerate_or_sample(count, limit, cfg.samples.min(256), cfg.seed ^ l as u64);
        all_exhaustive &= ex;
        for id in ids {
            let g = base_p_digits(id, p, pl as usize);
            // a function of the first l digits has degree < p^l
            let f = FnTable::from_fn(*uni, |x| g[(x[0] % pl) as usize]);
            bad_low += usize::from(!expand_with(&f, &table).degree().at_most(pl as i64 - 1));
            // and a combination of φ_0..φ_{p^l−1} depends only on the first l digits
            let mut c = vec![0u32; pk as usize];
            for (i, &v) in g.iter().enumerate() {
                c[i] = v as u32;
            }
            let h = PhiCoeffs::new(*uni, c)?.synthesize();
            bad_low += (0..pk).filter(|&x| h.get(x as usize) != h.get((x % pl) as usize)).count();
        }

        let count = (p as u128).pow(p as u32);
        let (ids, ex) = enumerate_or_sample(count, limit, cfg.samples.min(256), cfg.seed ^ 0x100 ^ l as u64);
        all_exhaustive &= ex;
        let digit_ctx = RingCtx::new(p, 1, 1)?;
        for id in ids {
            let g = base_p_digits(id, p, p as usize);
            let f = FnTable::from_fn(*uni, |x| g[((x[0] / pl) % p) as usize]);
            let g_deg = degree(&FnTable::new(digit_ctx, g.iter().map(|&v| v as u32).collect())?);
            let top = g_deg.as_i64().unwrap_or(-1);
            // support inside {j p^l : j ≤ deg g}
            bad_digit += expand_with(&f, &table)
                .support()
                .filter(|(a, _)| {
                    let m = a.entries()[0];
                    m % pl != 0 || (m / pl) as i64 > top
                })
                .count();
            // and the converse: span{φ_{j p^l}} depends only on digit l
            let mut c = vec![0u32; pk as usize];
            for (j, &v) in g.iter().enumerate() {
                c[j * pl as usize] = v as u32;
            }
            let h = PhiCoeffs::new(*uni, c)?.synthesize();
            bad_digit += (0..pk).filter(|&x| h.get(x as usize) != h.get((((x / pl) % p) * pl) as usize)).count();
        }
    }
    rep.violations("low_digit_locality_violations", bad_low);
    rep.violations("single_digit_locality_violations", bad_digit);
    if !all_exhaustive {
        rep.omitted.push(String::from("digit locality: sampled, too many digit functions"));
    }
    Ok(())
}

/// `D^m f = 0` ⇔ `deg f ≤ m − 1` ⇔ every `m`-step difference vanishes, over
/// every univariate `f`.
fn dm0_part(rep: &mut SuiteReport, uni: &RingCtx, budget: &Budget) -> Result<()> {
    let (p, pk) = (uni.p(), uni.pk());
    let count = (p as u128).checked_pow(pk as u32).unwrap_or(u128::MAX);
    budget.check_exhaustive("all univariate functions", count.saturating_mul((pk as u128).pow(4)))?;
    let one = Point(vec![1]);
    let mut bad = 0;
    for id in 0..count {
        let g = base_p_digits(id, p, pk as usize);
        let f = FnTable::new(*uni, g.iter().map(|&v| v as u32).collect())?;
        let deg = degree(&f);
        let mut d = f.clone();
        for m in 1..=pk as u32 {
            d = difference(&d, &one, false)?;
            let by_degree = deg.at_most(m as i64 - 1);
            let by_unit_steps = d.is_zero();
            let by_all_steps = is_d_null(&f, m, NullMode::Exhaustive, budget.max_exhaustive)?;
            bad += usize::from(by_degree != by_unit_steps || by_degree != by_all_steps);
        }
    }
    rep.violations("difference_characterization_violations", bad);
    rep.stat_add("univariate_functions_enumerated", count);
    Ok(())
}

fn random_in_omega(ctx: &RingCtx, d: u64, rng: &mut SampleRng) -> FnTable {
    let p = ctx.p();
    let coeffs = (0..ctx.size())
        .map(|i| {
            let a = MultiIndex::from_index(ctx, i);
            if a.weight() <= d {
                below(rng, p) as u32
            } else {
                0
            }
        })
        .collect();
    PhiCoeffs::new(*ctx, coeffs).expect("size matches").synthesize()
}

/// `f` is `(d+1)`-null iff `f ∈ Ω_d`, at every degree of the basis functions
/// and of random members of each `Ω_d`.
fn null_part(rep: &mut SuiteReport, ctx: &RingCtx, cfg: &SuiteConfig) -> Result<()> {
    let budget = &cfg.budget;
    let max_deg = ctx.n() as u64 * (ctx.pk() - 1);
    let mut fns: Vec<FnTable> = Vec::new();
    if ctx.size() <= 64 {
        fns.extend((0..ctx.size()).map(|i| phi_table(ctx, &MultiIndex::from_index(ctx, i))));
    }
    let per_degree = (cfg.samples / 50).clamp(1, 8);
    for d in 0..=max_deg {
        for i in 0..per_degree {
            fns.push(random_in_omega(ctx, d, &mut rng_for(cfg.seed ^ 0x5eed, d * 64 + i)));
        }
    }
    let exhaustive = ctx.size() <= 16;
    let (mut sound, mut sharp) = (0, 0);
    for f in &fns {
        let Degree::Finite(d) = degree(f) else { continue };
        if exhaustive {
            sound += usize::from(!is_d_null(f, d as u32 + 1, NullMode::Exhaustive, budget.max_exhaustive)?);
            sharp += usize::from(is_d_null(f, d as u32, NullMode::Exhaustive, budget.max_exhaustive)?);
        } else {
            let mode = NullMode::Sampled { seed: cfg.seed, count: 64 };
            sound += usize::from(!is_d_null(f, d as u32 + 1, mode, budget.max_exhaustive)?);
        }
    }
    rep.violations("null_iff_low_degree_violations", sound + sharp);
    rep.stat_add("null_test_functions", fns.len() as u128);
    if !exhaustive {
        rep.omitted.push(String::from(
            "null characterization: step tuples sampled; only the low degree => null direction is checked",
        ));
    }
    Ok(())
}

/// Monomials of degree at most `d < p` have phi degree at most `d` and span `Ω_d`.
fn polynomial_part(rep: &mut SuiteReport, ctx: &RingCtx, budget: &Budget) -> Result<()> {
    let p = ctx.p();
    let top = (p - 1).min(ctx.pk() - 1);
    let exps_ctx = RingCtx::new(p, 1, ctx.n())?;
    budget.check_exhaustive("monomial tables", exps_ctx.size() as u128 * ctx.size() as u128 * 4)?;
    let table = PhiTable::new(ctx);
    let (mut bad, mut count_bad, mut span_bad) = (0, 0, 0);
    for d in 0..=top {
        let exps: Vec<Vec<u64>> = exps_ctx.points().map(|e| e.0).filter(|e| e.iter().sum::<u64>() <= d).collect();
        let tables: Vec<FnTable> = exps
            .iter()
            .map(|e| {
                FnTable::from_fn(*ctx, |x| e.iter().zip(x).fold(1, |acc, (&ei, &xi)| acc * pow_mod(xi, ei, p) % p))
            })
            .collect();
        bad += tables.iter().filter(|f| !expand_with(f, &table).degree().at_most(d as i64)).count();
        let dim = omega_dim(ctx, d)?;
        count_bad += usize::from(exps.len() as u128 != dim);
        let m = MatGFp::from_fn(p, tables.len(), ctx.size(), |r, c| tables[r].get(c) as u64)?;
        span_bad += usize::from(m.rank() as u128 != dim);
    }
    rep.violations("monomial_degree_violations", bad);
    rep.violations("monomial_count_vs_omega_dim_violations", count_bad);
    rep.violations("monomial_span_rank_violations", span_bad);
    Ok(())
}

/// `deg φ_m(x_i y_j) ≤ m p^{i+j}`, with equality only at `p = 2, i = j = m = 1`.
fn digit_product_part(rep: &mut SuiteReport, ctx: &RingCtx, budget: &Budget) -> Result<()> {
    let (p, k, pk) = (ctx.p(), ctx.k(), ctx.pk());
    if k < 2 {
        return Err(Error::Hypothesis("digit products need k >= 2".into()));
    }
    let biv = ctx.with_dim(2)?;
    budget.check_exhaustive("digit product tables", (biv.size() as u128).pow(2) / 4 * (k as u128).pow(2))?;
    let table = PhiTable::new(&biv);
    let (mut over, mut equal_elsewhere, mut equal_at_exception) = (0, 0, 0);
    for i in 1..k {
        for j in 1..k {
            let (pi, pj) = (ctx.p_pow(i), ctx.p_pow(j));
            for m in 1..pk {
                let row = table.row(m as usize);
                let f = FnTable::from_fn(biv, |xy| {
                    let t = ((xy[0] / pi) % p) * ((xy[1] / pj) % p);
                    row[t as usize] as u64
                });
                let bound = m as i64 * (p as i64).pow(i + j);
                let Degree::Finite(d) = expand_with(&f, &table).degree() else { continue };
                if d as i64 > bound {
                    over += 1;
                } else if d as i64 == bound {
                    if p == 2 && i == 1 && j == 1 && m == 1 {
                        equal_at_exception += 1;
                    } else {
                        equal_elsewhere += 1;
                    }
                }
            }
        }
    }
    rep.violations("digit_product_degree_bound_violations", over);
    rep.violations("digit_product_equality_outside_exception", equal_elsewhere);
    if p == 2 {
        rep.push(Check::new("digit_product_equality_at_exception", equal_at_exception, Relation::Eq, 1));
    }
    Ok(())
}

// ---------------------------------------------------------------- incidence

pub fn incidence_suite(ctx: &RingCtx, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Incidence);
    let budget = &cfg.budget;
    let ranks = rank_report(ctx, budget);
    rep.checks.extend(ranks.checks.iter().cloned());
    rep.omitted.extend(ranks.omitted.iter().cloned());
    for (name, v) in [("rank_W", ranks.rank_w), ("rank_Wstar", ranks.rank_wstar), ("dim_H", ranks.dim_h)] {
        if let Some(v) = v {
            rep.stats.push((String::from(name), v));
        }
    }

    rep.part("direction count", |rep| {
        budget.check_exhaustive("direction orbits", ctx.size() as u128 * ctx.pk() as u128)?;
        let mut seen = vec![false; ctx.size()];
        let mut orbits = 0u128;
        let units: Vec<u64> = (0..ctx.pk()).filter(|&u| ctx.is_unit(ctx.elem(u))).collect();
        let mut buf = vec![0u64; ctx.n()];
        for i in 0..ctx.size() {
            ctx.decode_into(i, &mut buf);
            if seen[i] || buf.iter().all(|&c| c % ctx.p() == 0) {
                continue;
            }
            orbits += 1;
            let x = buf.clone();
            for &u in &units {
                let y: Vec<u64> = x.iter().map(|&c| ctx.mul_raw(c, u)).collect();
                seen[ctx.index_of(&y)] = true;
            }
        }
        rep.push(Check::new("direction_count_vs_orbits", direction_count(ctx), Relation::Eq, orbits));
        rep.push(Check::new("directions_listed", directions(ctx).len() as u128, Relation::Eq, orbits));
        Ok(())
    })?;

    rep.part("object sizes", |rep| {
        let dirs = directions(ctx);
        let hyperplanes = dirs.len() as u128 * ctx.pk() as u128;
        budget.check_exhaustive("object sizes", (hyperplanes + dirs.len() as u128) * ctx.size() as u128)?;
        let expect = ctx.size() as u64 / ctx.pk();
        let bad = all_hyperplanes(ctx).iter().filter(|h| h.points(ctx).len() as u64 != expect).count();
        rep.violations("hyperplane_size_violations", bad);
        // lines in each direction partition R^n into p^{k(n-1)} lines of p^k points
        let mut bad = 0;
        for b in &dirs {
            let mut covered = vec![false; ctx.size()];
            let mut lines = 0u64;
            for i in 0..ctx.size() {
                if covered[i] {
                    continue;
                }
                lines += 1;
                let pts = Line { b: b.clone(), a: ctx.point(i) }.points(ctx);
                let mut distinct = pts.clone();
                distinct.dedup();
                bad += usize::from(distinct.len() as u64 != ctx.pk());
                for j in pts {
                    covered[j] = true;
                }
            }
            bad += usize::from(lines != expect);
        }
        rep.violations("line_size_violations", bad);
        Ok(())
    })?;

    rep.part("affine spanning sets", |rep| {
        if ctx.size() > 64 {
            return Err(Error::Hypothesis("literal affine matrix compared only for p^(kn) <= 64".into()));
        }
        let literal = build_incidence(IncidenceKind::AstarLiteral, ctx, budget)?.rank() as u128;
        let reduced = build_incidence(IncidenceKind::AstarReduced, ctx, budget)?.rank() as u128;
        let phi_form = span_basis(ctx, budget)?.dim() as u128;
        rep.push(Check::new("literal_affine_rank_eq_reduced", literal, Relation::Eq, reduced));
        rep.push(Check::new("phi_form_span_dim_eq_literal_affine_rank", phi_form, Relation::Eq, literal));
        Ok(())
    })?;
    Ok(rep)
}

// ---------------------------------------------------------------- factorization

pub fn factorization_suite(ctx: &RingCtx, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Factorization);
    let budget = &cfg.budget;
    let bounds = theorem_bounds(ctx)?;
    rep.stats.push((String::from("trivial_bound"), bounds.trivial_bound));
    rep.stats.push((String::from("fan_bound"), bounds.fan_bound));
    rep.stats.push((String::from("ubn_bound"), bounds.ubn_bound));

    let mut dim_h = None;
    rep.part("span dimension", |rep| {
        let d = hyperspan_dim(ctx, budget)?;
        dim_h = Some(d);
        rep.stats.push((String::from("dim_H"), d as u128));
        if ctx.k() == 1 {
            rep.push(Check::new("dim_h_eq_trivial_bound", d as u128, Relation::Eq, bounds.trivial_bound));
        }
        let ind = indicator_basis(ctx, budget)?.dim();
        rep.push(Check::new("indicator_span_dim_eq_phi_span_dim", ind as u128, Relation::Eq, d as u128));
        Ok(())
    })?;

    let mut rank_b = None;
    rep.part("factorization", |rep| {
        if ctx.n() < 2 {
            return Err(Error::Hypothesis("the factorization needs n >= 2".into()));
        }
        if ctx.size() > FACTORIZATION_MAX_POINTS {
            return Err(Error::BudgetExceeded {
                what: "factorization".into(),
                needed: ctx.size() as u128,
                limit: FACTORIZATION_MAX_POINTS as u128,
            });
        }
        let f = build_factorization(ctx, budget)?;
        let r = f.verify(dim_h)?;
        rank_b = Some(r.rank_b as u128);
        rep.stats.push((String::from("rank_H"), r.rank_h as u128));
        rep.checks.extend(r.checks);
        Ok(())
    })?;
    rep.checks.extend(bounds.checks(dim_h.map(|d| d as u128), rank_b));

    rep.part("span row degrees", |rep| {
        let basis = span_basis(ctx, budget)?;
        budget.check_exhaustive(
            "span row expansions",
            basis.rows().rows() as u128 * ctx.size() as u128 * ctx.pk() as u128,
        )?;
        let top = ctx.pk() as i64 - 1;
        let bad = span_row_degrees(&basis).iter().filter(|d| !d.at_most(top)).count();
        rep.violations("span_row_degree_violations", bad);
        Ok(())
    })?;

    if ctx.k() == 1 {
        rep.part("prime field spans", |rep| {
            let (mut bad, mut runs) = (0, 0u128);
            for d in 0..ctx.p() {
                let r = verify_k1_spans(ctx.p(), ctx.n(), d)?;
                bad += usize::from(!r.all());
                runs += 1;
            }
            rep.violations("prime_field_power_span_violations", bad);
            rep.stat_add("prime_field_degrees", runs);
            Ok(())
        })?;
    }
    Ok(rep)
}

// ---------------------------------------------------------------- geometry

struct Objects {
    lines: Vec<(Line, Vec<usize>)>,
    hyperplanes: Vec<(Hyperplane, Vec<usize>)>,
}

fn distinct_lines(ctx: &RingCtx) -> Vec<(Line, Vec<usize>)> {
    let mut out = Vec::new();
    for b in directions(ctx) {
        let mut covered = vec![false; ctx.size()];
        for i in 0..ctx.size() {
            if covered[i] {
                continue;
            }
            let l = Line { b: b.clone(), a: ctx.point(i) };
            let pts = l.points(ctx);
            for &j in &pts {
                covered[j] = true;
            }
            out.push((l, pts));
        }
    }
    out
}

fn objects(ctx: &RingCtx, budget: &Budget) -> Result<Objects> {
    let dirs = direction_count(ctx);
    budget.check_exhaustive("lines and hyperplanes", dirs * ctx.pk() as u128 * ctx.size() as u128 * 2)?;
    let lines = distinct_lines(ctx);
    let hyperplanes = all_hyperplanes(ctx)
        .into_iter()
        .map(|h| {
            let pts = h.points(ctx);
            (h, pts)
        })
        .collect();
    Ok(Objects { lines, hyperplanes })
}

/// Indices of `S` mapped into the context `sub` by `x ↦ f(x)`.
fn map_set(ctx: &RingCtx, sub: &RingCtx, s: &[usize], mut f: impl FnMut(&[u64]) -> Vec<u64>) -> Vec<usize> {
    let mut buf = vec![0u64; ctx.n()];
    let mut out: Vec<usize> = s
        .iter()
        .map(|&i| {
            ctx.decode_into(i, &mut buf);
            sub.index_of(&f(&buf))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn sub_indices(sub: &RingCtx, pts: &[Point]) -> Vec<usize> {
    let mut out: Vec<usize> = pts.iter().map(|x| sub.index_of(x.coords())).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn reduce_dir(sub: &RingCtx, b: &Direction) -> Result<Direction> {
    canonical_direction(sub, &Point(b.coords().iter().map(|c| c % sub.pk()).collect()))
}

fn cube_of(ctx: &RingCtx, scale: u32, i: usize) -> usize {
    let m = ctx.p_pow(scale);
    let x = ctx.point(i);
    let r: Vec<u64> = x.coords().iter().map(|c| c % m).collect();
    ctx.index_of(&r)
}

fn random_subset(rng: &mut SampleRng, s: &[usize]) -> Vec<usize> {
    s.iter().copied().filter(|_| below(rng, 2) == 1).collect()
}

pub fn geometry_suite(ctx: &RingCtx, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Geometry);
    if ctx.n() < 2 {
        rep.omitted.push(String::from("geometry: needs n >= 2"));
        return Ok(rep);
    }
    let budget = &cfg.budget;
    let obj = match objects(ctx, budget) {
        Ok(o) => Some(o),
        Err(e @ Error::BudgetExceeded { .. }) => {
            rep.omitted.push(format!("exhaustive line and hyperplane sweeps: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(obj) = &obj {
        rep.stats.push((String::from("lines"), obj.lines.len() as u128));
        rep.stats.push((String::from("hyperplanes"), obj.hyperplanes.len() as u128));
        rep.part("rescaling to a cube", |rep| iota_part(rep, ctx, obj, cfg))?;
        rep.part("reduction mod p^l", |rep| pi_part(rep, ctx, obj, cfg))?;
        rep.part("angle-one lines meet inside a shared cube", |rep| shared_cube_part(rep, ctx, obj, budget))?;
        rep.part("line and hyperplane intersections", |rep| line_hyperplane_part(rep, ctx, obj, budget))?;
        if ctx.n() == 2 {
            rep.part("planar line pairs", |rep| planar_pairs_part(rep, ctx, obj, budget))?;
        }
    }
    let fans = fan_part(&mut rep, ctx, obj.as_ref(), cfg)?;
    rep.part("parallel lines", |rep| parallel_part(rep, ctx, cfg))?;
    rep.part("fans and the span", |rep| fan_span_part(rep, ctx, &fans, cfg))?;
    if (ctx.p(), ctx.k(), ctx.n()) == (2, 2, 2) {
        rep.part("worked example", |rep| worked_example_part(rep, ctx, budget))?;
    }
    Ok(rep)
}

fn iota_part(rep: &mut SuiteReport, ctx: &RingCtx, obj: &Objects, cfg: &SuiteConfig) -> Result<()> {
    let k = ctx.k();
    let (mut line_bad, mut hyper_bad, mut plane_bad, mut nbhd_bad) = (0, 0, 0, 0);
    let dirs = directions(ctx);
    let mut rng = rng_for(cfg.seed, 0x107a);
    for l in 0..k {
        let sub = ctx.with_exponent(k - l)?;
        for q in cubes(ctx, l) {
            let q_pts = q.points(ctx);
            for (line, pts) in &obj.lines {
                let seg = intersect(pts, &q_pts);
                if seg.is_empty() {
                    continue;
                }
                let img = iota(ctx, &q, &seg)?;
                let want = Line { b: reduce_dir(&sub, &line.b)?, a: img[0].clone() }.points(&sub);
                line_bad += usize::from(sub_indices(&sub, &img) != want);
                // neighbourhoods commute with the rescaling
                let s = random_subset(&mut rng, &seg);
                for j in l..=k {
                    let lhs = sub_indices(&sub, &iota(ctx, &q, &neighborhood(ctx, &s, j))?);
                    let rhs = neighborhood(&sub, &sub_indices(&sub, &iota(ctx, &q, &s)?), j - l);
                    nbhd_bad += usize::from(lhs != rhs);
                }
            }
            for (h, pts) in &obj.hyperplanes {
                let seg = intersect(pts, &q_pts);
                if seg.is_empty() {
                    continue;
                }
                let img = iota(ctx, &q, &seg)?;
                let want = Hyperplane { b: reduce_dir(&sub, &h.b)?, a: img[0].clone() }.points(&sub);
                hyper_bad += usize::from(sub_indices(&sub, &img) != want);
            }
            // 2-planes through a point of Q
            for _ in 0..dirs.len().min(16) {
                let u = &dirs[below(&mut rng, dirs.len() as u64) as usize];
                let v = &dirs[below(&mut rng, dirs.len() as u64) as usize];
                if !angle(ctx, u, v).is_one() {
                    continue;
                }
                let a = ctx.point(q_pts[below(&mut rng, q_pts.len() as u64) as usize]);
                let plane = Plane2Nbhd::new(ctx, a, u.clone(), v.clone(), k)?;
                let seg = intersect(&plane.plane_points(ctx), &q_pts);
                let img = iota(ctx, &q, &seg)?;
                let sub_plane =
                    Plane2Nbhd::new(&sub, img[0].clone(), reduce_dir(&sub, u)?, reduce_dir(&sub, v)?, sub.k())?;
                plane_bad += usize::from(sub_indices(&sub, &img) != sub_plane.plane_points(&sub));
            }
        }
    }
    rep.violations("cube_rescaling_line_violations", line_bad);
    rep.violations("cube_rescaling_hyperplane_violations", hyper_bad);
    rep.violations("cube_rescaling_plane_violations", plane_bad);
    rep.violations("cube_rescaling_neighbourhood_violations", nbhd_bad);
    Ok(())
}

fn pi_part(rep: &mut SuiteReport, ctx: &RingCtx, obj: &Objects, cfg: &SuiteConfig) -> Result<()> {
    let k = ctx.k();
    if k < 2 {
        return Err(Error::Hypothesis("reduction to a smaller nonzero ring needs k >= 2".into()));
    }
    let dirs = directions(ctx);
    let mut rng = rng_for(cfg.seed, 0x91);
    let (mut line_bad, mut angle_bad, mut hyper_bad, mut plane_bad, mut nbhd_bad) = (0, 0, 0, 0, 0);
    for l in 1..k {
        let sub = ctx.with_exponent(l)?;
        let m = ctx.p_pow(l);
        let proj = |x: &[u64]| x.iter().map(|c| c % m).collect::<Vec<u64>>();
        for (line, pts) in &obj.lines {
            let img = map_set(ctx, &sub, pts, proj);
            let want = Line { b: reduce_dir(&sub, &line.b)?, a: Point(proj(line.a.coords())) }.points(&sub);
            line_bad += usize::from(img != want);
            let s = random_subset(&mut rng, pts);
            for j in l..=k {
                nbhd_bad +=
                    usize::from(map_set(ctx, &sub, &neighborhood(ctx, &s, j), proj) != map_set(ctx, &sub, &s, proj));
            }
        }
        for (h, pts) in &obj.hyperplanes {
            let img = map_set(ctx, &sub, pts, proj);
            let want = Hyperplane { b: reduce_dir(&sub, &h.b)?, a: Point(proj(h.a.coords())) }.points(&sub);
            hyper_bad += usize::from(img != want);
        }
        for u in &dirs {
            for v in &dirs {
                if angle(ctx, u, v).is_one() {
                    let (pu, pv) = (reduce_dir(&sub, u)?, reduce_dir(&sub, v)?);
                    angle_bad += usize::from(!angle(&sub, &pu, &pv).is_one());
                }
            }
        }
        for _ in 0..cfg.samples.min(64) {
            let u = &dirs[below(&mut rng, dirs.len() as u64) as usize];
            let v = &dirs[below(&mut rng, dirs.len() as u64) as usize];
            if !angle(ctx, u, v).is_one() {
                continue;
            }
            let a = ctx.point(below(&mut rng, ctx.size() as u64) as usize);
            let plane = Plane2Nbhd::new(ctx, a.clone(), u.clone(), v.clone(), k)?;
            let img = map_set(ctx, &sub, &plane.plane_points(ctx), proj);
            let sub_plane =
                Plane2Nbhd::new(&sub, Point(proj(a.coords())), reduce_dir(&sub, u)?, reduce_dir(&sub, v)?, sub.k())?;
            plane_bad += usize::from(img != sub_plane.plane_points(&sub));
        }
    }
    rep.violations("reduction_line_violations", line_bad);
    rep.violations("reduction_angle_one_violations", angle_bad);
    rep.violations("reduction_hyperplane_violations", hyper_bad);
    rep.violations("reduction_plane_violations", plane_bad);
    rep.violations("reduction_neighbourhood_violations", nbhd_bad);
    Ok(())
}

fn shared_cube_part(rep: &mut SuiteReport, ctx: &RingCtx, obj: &Objects, budget: &Budget) -> Result<()> {
    let n_lines = obj.lines.len() as u128;
    budget.check_exhaustive("line pairs", n_lines * n_lines / 2)?;
    let cubes_met: Vec<BTreeSet<usize>> =
        obj.lines.iter().map(|(_, pts)| pts.iter().map(|&i| cube_of(ctx, 1, i)).collect()).collect();
    let (mut bad, mut pairs) = (0, 0u128);
    for i in 0..obj.lines.len() {
        for j in i + 1..obj.lines.len() {
            let (l1, p1) = &obj.lines[i];
            let (l2, p2) = &obj.lines[j];
            if !angle(ctx, &l1.b, &l2.b).is_one() {
                continue;
            }
            pairs += 1;
            let meet = intersect(p1, p2);
            for c in cubes_met[i].intersection(&cubes_met[j]) {
                bad += meet.iter().filter(|&&x| cube_of(ctx, 1, x) != *c).count();
            }
        }
    }
    rep.violations("angle_one_meet_outside_shared_cube", bad);
    rep.stat_add("angle_one_line_pairs", pairs);
    Ok(())
}

fn line_hyperplane_part(rep: &mut SuiteReport, ctx: &RingCtx, obj: &Objects, budget: &Budget) -> Result<()> {
    budget.check_exhaustive("line/hyperplane pairs", obj.lines.len() as u128 * obj.hyperplanes.len() as u128)?;
    let k = ctx.k();
    let (mut bad, mut pairs) = (0, 0u128);
    for (l, lp) in &obj.lines {
        for (h, hp) in &obj.hyperplanes {
            let meet = intersect(lp, hp);
            if meet.is_empty() {
                continue;
            }
            pairs += 1;
            let j = ctx.valuation_raw(ctx.inner_raw(l.b.coords(), h.b.coords()));
            if meet.len() as u64 != ctx.p_pow(j) {
                bad += 1;
                continue;
            }
            let c = cube_of(ctx, k - j, meet[0]);
            bad += usize::from(meet.iter().any(|&x| cube_of(ctx, k - j, x) != c));
        }
    }
    rep.violations("line_hyperplane_intersection_violations", bad);
    rep.stat_add("meeting_line_hyperplane_pairs", pairs);
    Ok(())
}

fn planar_pairs_part(rep: &mut SuiteReport, ctx: &RingCtx, obj: &Objects, budget: &Budget) -> Result<()> {
    let n_lines = obj.lines.len() as u128;
    budget.check_exhaustive("planar line pairs", n_lines * n_lines)?;
    let p = ctx.p();
    let normal = |b: &Direction| {
        let c = b.coords();
        canonical_direction(ctx, &Point(vec![ctx.sub_raw(0, c[1]), c[0]]))
    };
    let (mut as_hyperplane_bad, mut transversal_bad, mut tangent_bad) = (0, 0, 0);
    let sq = cubes(ctx, 1);
    let sq_pts: Vec<Vec<usize>> = sq.iter().map(|q| q.points(ctx)).collect();
    for (l2, p2) in &obj.lines {
        let v = normal(&l2.b)?;
        as_hyperplane_bad += usize::from(&Hyperplane { b: v.clone(), a: l2.a.clone() }.points(ctx) != p2);
        for (l1, p1) in &obj.lines {
            let dot = ctx.inner_raw(l1.b.coords(), v.coords());
            let meet = intersect(p1, p2);
            if angle(ctx, &l1.b, &l2.b).is_one() {
                transversal_bad += usize::from(dot.is_multiple_of(p) || meet.len() != 1);
            } else if ctx.k() == 1 && meet.len() as u64 == ctx.pk() {
                // a line against itself: each scale-1 square is a single point
                continue;
            } else {
                tangent_bad += usize::from(!dot.is_multiple_of(p));
                tangent_bad += sq_pts.iter().filter(|q| incidence_count(&meet, q, p).1 != 0).count();
            }
        }
    }
    rep.violations("line_as_normal_hyperplane_violations", as_hyperplane_bad);
    rep.violations("transversal_lines_unique_meet_violations", transversal_bad);
    rep.violations("tangent_lines_square_count_violations", tangent_bad);
    Ok(())
}

fn fan_part(rep: &mut SuiteReport, ctx: &RingCtx, obj: Option<&Objects>, cfg: &SuiteConfig) -> Result<Vec<Fan>> {
    let mut all = Vec::new();
    if ctx.k() < 2 {
        rep.omitted.push(String::from("fans: need k >= 2"));
        return Ok(all);
    }
    let budget = &cfg.budget;
    let hyperplanes: Vec<Vec<usize>> = match obj {
        Some(o) => o.hyperplanes.iter().map(|(_, pts)| pts.clone()).collect(),
        None => {
            rep.omitted.push(String::from("fans: hyperplane list over budget"));
            return Ok(all);
        }
    };
    for scale in 0..=ctx.k() - 2 {
        let mut fans = None;
        if ctx.n() == 2 {
            match fan_family(ctx, scale, FanMode::Exhaustive, budget) {
                Ok(f) => {
                    rep.stat_add("exhaustive_fans", f.len() as u128);
                    fans = Some(f);
                }
                Err(Error::BudgetExceeded { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let fans = match fans {
            Some(f) => f,
            None => {
                let f = fan_family(
                    ctx,
                    scale,
                    FanMode::Sampled { seed: cfg.seed ^ scale as u64, count: cfg.samples },
                    budget,
                )?;
                rep.stat_add("sampled_fans", f.len() as u128);
                f
            }
        };
        budget.check_exhaustive("fan/hyperplane pairs", fans.len() as u128 * hyperplanes.len() as u128)?;
        let mut bad = 0;
        for fan in &fans {
            bad += hyperplanes.iter().filter(|h| incidence_count(h, &fan.points, ctx.p()).1 != 0).count();
        }
        rep.stat_add("fan_hyperplane_pairs", fans.len() as u128 * hyperplanes.len() as u128);
        rep.violations(format!("fan_hyperplane_count_violations_scale_{scale}"), bad);
        all.extend(fans);
    }
    Ok(all)
}

/// Multi-indices with `|α| ≤ p^k − 1`.
fn low_weight_indices(ctx: &RingCtx) -> Vec<MultiIndex> {
    (0..ctx.size()).map(|i| MultiIndex::from_index(ctx, i)).filter(|a| a.weight() < ctx.pk()).collect()
}

fn parallel_part(rep: &mut SuiteReport, ctx: &RingCtx, cfg: &SuiteConfig) -> Result<()> {
    let budget = &cfg.budget;
    let alphas = low_weight_indices(ctx);
    let dirs = directions(ctx);
    let tables: Vec<FnTable> = alphas.iter().map(|a| phi_table(ctx, a)).collect();
    let p = ctx.p();
    let cube_total: u128 = (0..=ctx.k()).map(|l| (ctx.p_pow(l) as u128).pow(ctx.n() as u32)).sum();
    let work = cube_total * dirs.len() as u128 * ctx.size() as u128 * (alphas.len() as u128 + 1);
    if budget.check_exhaustive("parallel lines", work).is_ok() {
        let (mut bad, mut groups) = (0, 0u128);
        for l in 0..=ctx.k() {
            for q in cubes(ctx, l) {
                let q_pts = q.points(ctx);
                for b in &dirs {
                    // distinct segments of lines in direction b through q
                    let mut segs: BTreeSet<Vec<usize>> = BTreeSet::new();
                    for &a in &q_pts {
                        segs.insert(line_in_cube(ctx, &Line { b: b.clone(), a: ctx.point(a) }, &q));
                    }
                    if segs.len() < 2 {
                        continue;
                    }
                    groups += 1;
                    for f in &tables {
                        let mut sums = segs.iter().map(|s| s.iter().map(|&i| f.get(i) as u64).sum::<u64>() % p);
                        let first = sums.next().expect("nonempty");
                        bad += usize::from(sums.any(|s| s != first));
                    }
                }
            }
        }
        rep.violations("parallel_segment_sum_violations", bad);
        rep.stat_add("parallel_segment_groups", groups);
        rep.stat_add("parallel_basis_functions", tables.len() as u128);
    } else {
        let mut bad = 0;
        for i in 0..cfg.samples {
            let mut rng = rng_for(cfg.seed ^ 0x9a7a, i);
            let l = below(&mut rng, ctx.k() as u64 + 1) as u32;
            let x = ctx.point(below(&mut rng, ctx.size() as u64) as usize);
            let q = Cube::containing(ctx, l, &x)?;
            let b = dirs[below(&mut rng, dirs.len() as u64) as usize].clone();
            let q_pts = q.points(ctx);
            let y = ctx.point(q_pts[below(&mut rng, q_pts.len() as u64) as usize]);
            let f = &tables[below(&mut rng, tables.len() as u64) as usize];
            let l1 = Line { b: b.clone(), a: x };
            let l2 = Line { b: b.clone(), a: y };
            bad += usize::from(!parallel_line_check(f, &q, &b, &l1, &l2)?);
        }
        rep.violations("parallel_segment_sum_violations", bad);
        rep.stat_add("parallel_sampled_pairs", cfg.samples as u128);
        rep.omitted.push(String::from("parallel lines: sampled"));
    }
    Ok(())
}

fn fan_span_part(rep: &mut SuiteReport, ctx: &RingCtx, fans: &[Fan], cfg: &SuiteConfig) -> Result<()> {
    if fans.is_empty() {
        return Err(Error::Hypothesis("no fans at this context".into()));
    }
    let budget = &cfg.budget;
    let basis = span_basis(ctx, budget)?;
    // an evenly spaced subfamily of at most `samples` fans
    let step = fans.len().div_ceil(cfg.samples.max(1) as usize).max(1);
    let fans: Vec<Fan> = fans.iter().step_by(step).cloned().collect();
    let fan_points: usize = fans.iter().map(|f| f.points.len()).sum();
    budget.check_exhaustive("fan/span consistency", (ctx.size() as u128 + 64) * fan_points as u128)?;
    rep.stat_add("span_screen_fans", fans.len() as u128);
    let (mut bad, mut members) = (0, 0u128);
    for i in 0..ctx.size() {
        let f = phi_table(ctx, &MultiIndex::from_index(ctx, i));
        if basis.membership(&f)?.is_some() {
            members += 1;
            bad += usize::from(!fan_test(&f, &fans).passed());
        }
    }
    let ind = indicator_basis(ctx, budget)?;
    let rows = ind.rows();
    for s in 0..cfg.samples.min(64) {
        let mut rng = rng_for(cfg.seed ^ 0x5a, s);
        let coeffs: Vec<u64> = (0..rows.rows()).map(|_| below(&mut rng, ctx.p())).collect();
        let mut values = vec![0u32; ctx.size()];
        for (r, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (j, v) in values.iter_mut().enumerate() {
                    *v = ((*v as u64 + c * rows.get(r, j) as u64) % ctx.p()) as u32;
                }
            }
        }
        let f = FnTable::new(*ctx, values)?;
        bad += usize::from(!fan_test(&f, &fans).passed());
        members += 1;
    }
    rep.violations("span_member_fails_fan_test", bad);
    rep.stat_add("span_members_screened", members);
    Ok(())
}

/// The `φ_{(2,1)}` table over `(Z/4Z)^2`, the fan through `(0,1)` with
/// directions `(1,0), (1,1), (0,1)`, and the span verdict.
fn worked_example_part(rep: &mut SuiteReport, ctx: &RingCtx, budget: &Budget) -> Result<()> {
    let f = phi_table(ctx, &MultiIndex::new(ctx, vec![2, 1])?);
    let order = [0u64, 2, 1, 3];
    let expect = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 1], [0, 1, 0, 1]];
    let mut bad = 0;
    for (r, &y) in order.iter().enumerate() {
        for (c, &x) in order.iter().enumerate() {
            bad += usize::from(f.at(&Point(vec![x, y]))? != expect[r][c]);
        }
    }
    rep.violations("worked_table_mismatches", bad);
    let fan = worked_fan(ctx)?;
    let supp: Vec<usize> = (0..ctx.size()).filter(|&i| f.get(i) != 0).collect();
    let hit = intersect(&fan.points, &supp);
    let target = ctx.point_index(&[3, 1])?;
    rep.push(Check::new("worked_fan_support_hits", hit.len() as u128, Relation::Eq, 1));
    rep.push(Check::new(
        "worked_fan_support_point",
        hit.first().map_or(u128::MAX, |&i| i as u128),
        Relation::Eq,
        target as u128,
    ));
    rep.push(Check::new("worked_fan_sum", crate::geometry::fan_sum(&f, &fan) as u128, Relation::Eq, 1));
    let member = span_basis(ctx, budget)?.membership(&f)?.is_some();
    rep.push(Check::new("worked_function_in_span", u128::from(member), Relation::Eq, 0));
    Ok(())
}

/// The fan of the worked example at `(2, 2, 2)`.
pub fn worked_fan(ctx: &RingCtx) -> Result<Fan> {
    let a = Point(vec![0, 1]);
    let lines = [[1u64, 0], [1, 1], [0, 1]]
        .iter()
        .map(|b| Ok(Line { b: canonical_direction(ctx, &Point(b.to_vec()))?, a: a.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let qp = Cube::containing(ctx, 0, &a)?;
    let q = Cube::containing(ctx, 1, &a)?;
    crate::geometry::make_fan(ctx, 0, qp, q, lines, None)
}

/// Run every suite; suites that do not apply report their omissions.
pub fn run_all(ctx: &RingCtx, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, ctx, cfg)).collect()
}
