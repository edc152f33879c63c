//! Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
//!
//! Run with `cargo test -p hyperphi --test acceptance`. Limits are wall-clock
//! on one core with the workspace test profile (optimized).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperphi_core::geometry::{fan_sum, intersect};
use hyperphi_core::gfp::{rank_reference, MatGFp};
use hyperphi_core::hyperspace::{hyperspan_dim, span_basis, theorem_bounds};
use hyperphi_core::incidence::{build_incidence, rank_report_within, IncidenceKind};
use hyperphi_core::phi::{phi_table, product_coeff_tensor, MultiIndex};
use hyperphi_core::ring::{binom_u128, Point, RingCtx};
use hyperphi_core::verify::{factorization_suite, geometry_suite, phi_suite, worked_fan, SuiteConfig, SuiteReport};
use hyperphi_core::{Budget, Check};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ctx(p: u64, k: u32, n: usize) -> RingCtx {
    RingCtx::new(p, k, n).expect("valid context")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failures(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.pass).map(|c| c.to_string()).collect()
}

/// Every check passes and each name in `required` is present.
fn suite_ok(tag: &str, r: &SuiteReport, required: &[&str]) -> Result<(), String> {
    let bad = failures(&r.checks);
    ensure(bad.is_empty(), || format!("{tag}: {}", bad.join("; ")))?;
    for name in required {
        ensure(r.check(name).is_some(), || format!("{tag}: check {name} missing; omitted {:?}", r.omitted))?;
    }
    Ok(())
}

fn cfg() -> SuiteConfig {
    SuiteConfig { seed: 0, samples: 1000, budget: Budget::default() }
}

fn k1_rank_formula() -> Outcome {
    let expected = [((2, 2), 3), ((3, 2), 4), ((5, 2), 6), ((2, 3), 4), ((3, 3), 7)];
    let mut got = Vec::new();
    for ((p, n), want) in expected {
        let c = ctx(p, 1, n);
        let r = build_incidence(IncidenceKind::W, &c, &Budget::default()).map_err(|e| e.to_string())?.rank();
        let formula = binom_u128(p as u128 + n as u128 - 2, n as u128 - 1).unwrap() + 1;
        ensure(r == want && r as u128 == formula, || format!("(p,n)=({p},{n}): rank {r}, expected {want}"))?;
        got.push(format!("({p},{n})={r}"));
    }
    Ok(got.join(" "))
}

fn strict_w_vs_wstar() -> Outcome {
    let frozen = [((2, 2, 2), 7, 6), ((2, 3, 2), 15, 12), ((3, 2, 2), 13, 12)];
    let b = Budget::default();
    let mut got = Vec::new();
    for ((p, k, n), w_want, ws_want) in frozen {
        let c = ctx(p, k, n);
        let w = build_incidence(IncidenceKind::W, &c, &b).map_err(|e| e.to_string())?.rank();
        let ws = build_incidence(IncidenceKind::Wstar, &c, &b).map_err(|e| e.to_string())?.rank();
        ensure(w > ws, || format!("({p},{k},{n}): rank W {w} not above rank W* {ws}"))?;
        ensure((w, ws) == (w_want, ws_want), || {
            format!("({p},{k},{n}): ranks ({w},{ws}) differ from recorded ({w_want},{ws_want})")
        })?;
        got.push(format!("({p},{k},{n}) W={w} W*={ws}"));
    }
    Ok(got.join(", "))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// All `(p, k, n)` with `n ≥ 2` and `p^(kn) ≤ max`.
fn contexts_up_to(max: u64) -> Vec<(u64, u32, usize)> {
    let mut out = Vec::new();
    for p in (2..=max).filter(|&p| is_prime(p) && p * p <= max) {
        let mut k = 1;
        while p.pow(2 * k) <= max {
            let mut n = 2;
            while p.checked_pow(k * n as u32).is_some_and(|s| s <= max) {
                out.push((p, k, n));
                n += 1;
            }
            k += 1;
        }
    }
    out
}

fn incidence_inequality_sweep() -> Outcome {
    const MAX_POINTS: u64 = 4096;
    let budget = Budget { max_matrix_entries: 1 << 28, max_elimination_work: 1 << 46, ..Budget::default() };
    let always = ["rank_Wstar_le_rank_W", "rank_W_le_1_plus_k_rank_Wstar", "rank_W_le_1_plus_sum_scales"];
    let next_dim = ["dim_H_le_rank_Wstar_next_dim", "rank_Wstar_next_dim_le_2_k_plus_1_dim_H"];
    let contexts = contexts_up_to(MAX_POINTS);
    let (mut checks, mut with_next) = (0, 0);
    for &(p, k, n) in &contexts {
        let rr = rank_report_within(&ctx(p, k, n), &budget, MAX_POINTS as u128);
        let bad = failures(&rr.checks);
        ensure(bad.is_empty(), || format!("({p},{k},{n}): {}", bad.join("; ")))?;
        let needs_next = p.checked_pow(k * (n as u32 + 1)).is_some_and(|s| s <= MAX_POINTS);
        let required = always.iter().chain(if needs_next { &next_dim[..] } else { &[] });
        for name in required {
            ensure(rr.checks.iter().any(|c| c.name == *name), || {
                format!("({p},{k},{n}): {name} missing; omitted {:?}", rr.omitted)
            })?;
        }
        checks += rr.checks.len();
        with_next += usize::from(needs_next);
    }
    Ok(format!("{} contexts, {with_next} with dimension n+1, {checks} checks", contexts.len()))
}

fn hyperspan_dimensions() -> Outcome {
    let b = Budget::default();
    let mut got = Vec::new();
    for (p, n) in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)] {
        let c = ctx(p, 1, n);
        let d = hyperspan_dim(&c, &b).map_err(|e| e.to_string())?;
        let want = binom_u128(p as u128 - 1 + n as u128, n as u128).unwrap();
        ensure(d as u128 == want, || format!("({p},1,{n}): dim {d}, expected {want}"))?;
        got.push(format!("({p},1,{n})={d}"));
    }
    let c = ctx(2, 2, 2);
    let d = hyperspan_dim(&c, &b).map_err(|e| e.to_string())?;
    ensure(d == 9, || format!("(2,2,2): dim {d}, expected 9"))?;
    let phi21 = phi_table(&c, &MultiIndex::new(&c, vec![2, 1]).unwrap());
    let member = span_basis(&c, &b).and_then(|s| s.membership(&phi21)).map_err(|e| e.to_string())?;
    ensure(member.is_none(), || "phi_21 reported as a member".into())?;
    got.push(format!("(2,2,2)={d}<10, phi_21 absent"));
    Ok(got.join(" "))
}

fn factorization() -> Outcome {
    let required = ["h_eq_psi_b_phi_mismatches", "rank_h_eq_rank_b", "dim_h_le_n_rank_h", "b_zero_pattern_violations"];
    for (p, k, n) in [(2, 2, 2), (3, 2, 2), (2, 3, 2)] {
        let r = factorization_suite(&ctx(p, k, n), &cfg()).map_err(|e| e.to_string())?;
        suite_ok(&format!("({p},{k},{n})"), &r, &required)?;
        ensure(r.omitted.is_empty(), || format!("({p},{k},{n}): omitted {:?}", r.omitted))?;
    }
    Ok("3 contexts exhaustive".into())
}

fn product_coefficient_zeros() -> Outcome {
    let mut examined = 0usize;
    for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let c = ctx(p, k, 1);
        for m in 0..c.pk() {
            let t = product_coeff_tensor(&c, m).map_err(|e| e.to_string())?;
            let bad = t.support().filter(|(a, _)| a.weight() > m + 2 * (p - 1)).count();
            ensure(bad == 0, || format!("p^k={}: m={m} has {bad} coefficients past the bound", c.pk()))?;
            examined += t.coeffs().len();
        }
    }
    Ok(format!("p^k in {{4,8,9,16}}, {examined} coefficients"))
}

fn phi_identities() -> Outcome {
    let required = [
        "lucas_vs_direct_binomial_violations",
        "vandermonde_violations",
        "scale_nesting_violations",
        "triangularity_violations",
        "unit_derivative_leading_term_violations",
        "shift_difference_leading_term_violations",
        "expansion_paths_disagree",
        "low_digit_locality_violations",
        "single_digit_locality_violations",
        "product_rule_violations",
        "unit_scaling_violations",
        "null_iff_low_degree_violations",
        "monomial_span_rank_violations",
    ];
    let contexts = [(2, 2, 1), (2, 2, 2), (2, 3, 1), (3, 2, 1), (2, 4, 1), (3, 1, 2), (2, 3, 2)];
    let mut checks = 0;
    for (p, k, n) in contexts {
        let r = phi_suite(&ctx(p, k, n), &cfg()).map_err(|e| e.to_string())?;
        let req: &[&str] = if p.pow(k) == 4 { &required } else { &[] };
        suite_ok(&format!("({p},{k},{n})"), &r, req)?;
        if p.pow(k) == 4 {
            ensure(r.omitted.is_empty(), || format!("({p},{k},{n}): omitted {:?}", r.omitted))?;
        }
        checks += r.checks.len();
    }
    Ok(format!("{} contexts, {checks} checks", contexts.len()))
}

fn geometry() -> Outcome {
    let required = [
        "cube_rescaling_line_violations",
        "reduction_angle_one_violations",
        "line_hyperplane_intersection_violations",
        "fan_hyperplane_count_violations_scale_0",
        "parallel_segment_sum_violations",
    ];
    let mut got = Vec::new();
    for (p, k, n) in [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)] {
        let tag = format!("({p},{k},{n})");
        let r = geometry_suite(&ctx(p, k, n), &cfg()).map_err(|e| e.to_string())?;
        suite_ok(&tag, &r, &required)?;
        let fans = match (r.stat("exhaustive_fans"), r.stat("sampled_fans")) {
            (Some(e), _) => format!("{e} fans exhaustive"),
            (None, Some(s)) if s >= 1000 => format!("{s} fans sampled"),
            _ => return Err(format!("{tag}: fewer than 1000 fans examined")),
        };
        if (p, k, n) == (2, 2, 2) {
            ensure(r.stat("exhaustive_fans") == Some(256), || format!("{tag}: fan sweep not exhaustive"))?;
        }
        got.push(format!("{tag} {fans}"));
    }
    Ok(got.join(", "))
}

fn worked_example() -> Outcome {
    let c = ctx(2, 2, 2);
    let f = phi_table(&c, &MultiIndex::new(&c, vec![2, 1]).unwrap());
    // Rows y and columns x both in the order 0, 2, 1, 3.
    let printed = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 1], [0, 1, 0, 1]];
    let order = [0u64, 2, 1, 3];
    for (r, &y) in order.iter().enumerate() {
        for (col, &x) in order.iter().enumerate() {
            let v = f.at(&Point(vec![x, y])).map_err(|e| e.to_string())?;
            ensure(v == printed[r][col], || format!("phi_21({x},{y}) = {v}"))?;
        }
    }
    let fan = worked_fan(&c).map_err(|e| e.to_string())?;
    let supp: Vec<usize> = (0..c.size()).filter(|&i| f.get(i) != 0).collect();
    let hit = intersect(&fan.points, &supp);
    let target = c.point_index(&[3, 1]).unwrap();
    ensure(hit == [target], || format!("fan meets the support at {hit:?}, expected [{target}]"))?;
    let sum = fan_sum(&f, &fan);
    ensure(sum == 1, || format!("fan sum {sum}"))?;
    let member = span_basis(&c, &Budget::default()).and_then(|s| s.membership(&f)).map_err(|e| e.to_string())?;
    ensure(member.is_none(), || "phi_21 reported as a member".into())?;
    Ok(format!("table matches, X∩supp = {{(3,1)}} (index {target}), sum 1, absent"))
}

fn bound_arithmetic() -> Outcome {
    let big = theorem_bounds(&ctx(2, 7, 3)).map_err(|e| e.to_string())?;
    ensure((big.trivial_bound, big.fan_bound) == (357_760, 314_364), || format!("(2,7,3): {big:?}"))?;
    ensure(big.fan_bound < big.trivial_bound, || "(2,7,3): fan bound not below trivial".into())?;
    let small = theorem_bounds(&ctx(2, 2, 2)).map_err(|e| e.to_string())?;
    ensure((small.trivial_bound, small.fan_bound) == (10, 40), || format!("(2,2,2): {small:?}"))?;
    Ok(format!(
        "(2,7,3) fan {} < trivial {}; (2,2,2) fan {} > trivial {}",
        big.fan_bound, big.trivial_bound, small.fan_bound, small.trivial_bound
    ))
}

fn packed_rank() -> Outcome {
    let w = build_incidence(IncidenceKind::W, &ctx(2, 4, 3), &Budget::default()).map_err(|e| e.to_string())?;
    ensure(w.is_packed() && w.rows() == 4096 && w.cols() == 4096, || "W is not a packed 4096x4096 matrix".into())?;
    let t = Instant::now();
    let r = w.rank();
    let packed = t.elapsed();
    ensure(packed < Duration::from_secs(5), || format!("packed rank took {packed:?}"))?;
    let r_ref = rank_reference(&w);
    ensure(r == r_ref, || format!("packed rank {r}, unpacked {r_ref}"))?;
    let mut cases = 0;
    for seed in 0..200 {
        let (rows, cols) = (1 + (seed as usize * 37) % 150, 1 + (seed as usize * 53) % 150);
        let m = MatGFp::random(2, rows, cols, seed).map_err(|e| e.to_string())?;
        let low = m.mul(&MatGFp::random(2, cols, cols, seed + 1000).unwrap()).unwrap();
        for x in [&m, &low] {
            ensure(x.rank() == rank_reference(x), || format!("seed {seed}: packed and unpacked disagree"))?;
            cases += 1;
        }
    }
    Ok(format!("rank {r} in {:.3} s, {cases} random cases agree", packed.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("prime-field W ranks", 1, k1_rank_formula),
        ("W strictly above W*", 5, strict_w_vs_wstar),
        ("incidence inequality sweep", 60, incidence_inequality_sweep),
        ("hyperplane span dimensions", 5, hyperspan_dimensions),
        ("factorization", 30, factorization),
        ("product coefficient zeros", 30, product_coefficient_zeros),
        ("phi identity suites", 60, phi_identities),
        ("geometry suites", 120, geometry),
        ("worked fan example", 5, worked_example),
        ("bound arithmetic", 1, bound_arithmetic),
        ("packed rank performance", 60, packed_rank),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        let (ok, detail) = match outcome {
            Ok(d) if secs < limit as f64 => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} {:>2} {name}: {detail} [{secs:.3} s < {limit} s]", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
