//! The cross-verification suite: brute-force closure, functional-equation
//! iteration and the algebraic closed forms checked against each other and
//! against reference sequences, plus the structural laws of the order and
//! the bijection.
//!
//! Every check is deterministic; timings are collected separately so that
//! the rendered report is byte-identical across runs.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::bijection::{phi, phi_inv};
use crate::gf::{self, Quintic};
use crate::path::{
    class_of, ds_statistic, enumerate_dyck, enumerate_motzkin, enumerate_nnn_avoiding_dyck,
    is_primitive, type_of, ClassSignature, Step, TypeWord,
};
use crate::poly::UPoly;
use crate::poset::{
    connected_components, count_intervals, dual_type_counts, motzkin_covers, motzkin_poset,
    refined_interval_polynomial, schroder_poset, synchronized_interval_polynomial,
    transitive_closure, verify_order_isomorphism, Budget, IntervalFamily,
};

/// Intervals of the Motzkin order on `n` steps, `n = 1..=9`.
/// The `n = 8` term is 1683; the value 1638 that circulates for it is a
/// transposition, refuted by the closure, the closed form and the catalytic
/// iteration independently.
pub const MOTZKIN_INTERVALS: [u64; 9] = [1, 2, 5, 14, 43, 140, 477, 1683, 6106];
/// Intervals of the Schröder order of length `2n`, `n = 1..=8`.
pub const SCHRODER_INTERVALS: [u64; 8] = [2, 8, 46, 320, 2500, 21120, 188758, 1760256];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest `n` for the brute-force Motzkin interval counts.
    pub motzkin_brute_max: usize,
    /// Largest `n` for the brute-force Schröder interval counts (length `2n`).
    pub schroder_brute_max: usize,
    /// Largest `n` checked against the reference Schröder sequence.
    pub schroder_series_max: usize,
    pub motzkin_order: usize,
    pub schroder_identity_order: usize,
    pub quintic_order: usize,
    pub system_order: usize,
    pub isomorphism_max: usize,
    pub motzkin_components_max: usize,
    pub class_partition_max: usize,
    pub schroder_components_max: usize,
    /// Largest semilength for the synchronized-interval comparison.
    pub synchronized_max: usize,
    pub bijection_max: usize,
    pub dual_type_max: usize,
    /// Solve `X` from a deliberately corrupted quintic (sign of the `X²`
    /// term flipped) before checking residuals. Test fixture only.
    pub corrupt_quintic: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            motzkin_brute_max: 9,
            schroder_brute_max: 6,
            schroder_series_max: 8,
            motzkin_order: gf::DEFAULT_MOTZKIN_ORDER,
            schroder_identity_order: gf::DEFAULT_SCHRODER_ORDER,
            quintic_order: 30,
            system_order: 15,
            isomorphism_max: 8,
            motzkin_components_max: 12,
            class_partition_max: 10,
            schroder_components_max: 8,
            synchronized_max: 7,
            bijection_max: 10,
            dual_type_max: 6,
            corrupt_quintic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if timings {
                out.push_str(&format!(
                    "{status} {} ({:.3}s): {}\n",
                    c.name,
                    c.elapsed.as_secs_f64(),
                    c.detail
                ));
            } else {
                out.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{} checks, {} failed: {}\n",
            self.checks.len(),
            failed,
            if failed == 0 { "OK" } else { "FAILED" }
        ));
        out
    }
}

/// Result of one check: `Ok(detail)` on success, `Err(detail)` on failure.
pub type Outcome = Result<String, String>;

fn timed(name: &str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
        elapsed,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn run(config: &VerifyConfig) -> VerificationReport {
    let checks = vec![
        timed("motzkin-interval-counts", || {
            check_motzkin_interval_counts(config.motzkin_brute_max)
        }),
        timed("pipeline-triangle", || {
            check_pipeline_triangle(config.motzkin_brute_max, config.motzkin_order)
        }),
        timed("schroder-interval-counts", || {
            check_schroder_interval_counts(config.schroder_series_max, config.schroder_brute_max)
        }),
        timed("schroder-substitution-identity", || {
            check_schroder_identity(config.schroder_identity_order)
        }),
        timed("order-isomorphism", || check_order_isomorphism(config.isomorphism_max)),
        timed("components", || {
            check_components(
                config.motzkin_components_max,
                config.class_partition_max,
                config.schroder_components_max,
            )
        }),
        timed("residuals", || {
            check_residuals(config.quintic_order, config.system_order, config.corrupt_quintic)
        }),
        timed("refined-statistics", || check_refined_statistics(config.synchronized_max)),
        timed("bijection-laws", || check_bijection_laws(config.bijection_max)),
        timed("cover-invariants", || check_cover_invariants(config.class_partition_max)),
        timed("dual-type-counts", || check_dual_types(config.dual_type_max)),
    ];
    VerificationReport { checks }
}

/// Brute-force interval counts of the Motzkin order against the reference
/// sequence, `n = 1..=max_n`.
pub fn check_motzkin_interval_counts(max_n: usize) -> Outcome {
    let mut got = Vec::new();
    for n in 1..=max_n {
        let h = motzkin_poset(n).map_err(err)?;
        let m = transitive_closure(&h).map_err(err)?;
        got.push(count_intervals(&m));
    }
    let want = &MOTZKIN_INTERVALS[..max_n.min(MOTZKIN_INTERVALS.len())];
    ensure(got[..want.len()] == *want, || {
        format!("brute counts {got:?} differ from {want:?}")
    })?;
    Ok(format!("n=1..{max_n}: {got:?}"))
}

/// Closed form, functional-equation iteration and brute force agree on every
/// coefficient of `F₁(t, u)` up to `brute_max`; the two series routes agree
/// to `order`.
pub fn check_pipeline_triangle(brute_max: usize, order: usize) -> Outcome {
    let closed = gf::compute_f1(order).map_err(err)?;
    let fe = gf::f1_via_functional_equation(order).map_err(err)?;
    if let Some(n) = (0..order).find(|&n| closed.coeffs()[n] != fe.coeffs()[n]) {
        return Err(format!(
            "t^{n}: closed form {} vs functional equation {}",
            closed.coeffs()[n],
            fe.coeffs()[n]
        ));
    }
    ensure(closed.coeffs().iter().all(UPoly::has_nonnegative_coeffs), || {
        "negative coefficient in F1".into()
    })?;
    let budget = Budget::default();
    for n in 1..=brute_max.min(order.saturating_sub(1)) {
        let brute =
            refined_interval_polynomial(n, IntervalFamily::Motzkin, &budget).map_err(err)?;
        ensure(brute == closed.coeffs()[n], || {
            format!("t^{n}: brute {brute} vs series {}", closed.coeffs()[n])
        })?;
    }
    Ok(format!(
        "series agree to t^{}, brute agrees for n<={brute_max}",
        order - 1
    ))
}

pub fn check_schroder_interval_counts(series_max: usize, brute_max: usize) -> Outcome {
    let g = gf::compute_g(series_max + 1).map_err(err)?;
    let got: Vec<BigInt> = gf::at_u_one(&g)[1..].to_vec();
    let want: Vec<BigInt> = SCHRODER_INTERVALS[..series_max.min(SCHRODER_INTERVALS.len())]
        .iter()
        .map(|&v| v.into())
        .collect();
    ensure(got[..want.len()] == want[..], || {
        format!("G(t,1) coefficients {got:?} differ from {want:?}")
    })?;
    ensure(g.coeffs().iter().all(UPoly::has_nonnegative_coeffs), || {
        "negative coefficient in G".into()
    })?;
    // The functional-equation route through G(t², u) = F₁(t, u t).
    let fe = gf::g_from_f1(
        &gf::f1_via_functional_equation(2 * series_max + 1).map_err(err)?,
        series_max + 1,
    )
    .map_err(err)?;
    if let Some(n) = (0..=series_max).find(|&n| fe.coeffs()[n] != g.coeffs()[n]) {
        return Err(format!(
            "t^{n}: closed form {} vs functional equation {}",
            g.coeffs()[n],
            fe.coeffs()[n]
        ));
    }
    let budget = Budget::default();
    for n in 1..=brute_max.min(series_max) {
        let brute =
            refined_interval_polynomial(n, IntervalFamily::Schroder, &budget).map_err(err)?;
        ensure(brute == g.coeffs()[n], || {
            format!("t^{n}: brute {brute} vs series {}", g.coeffs()[n])
        })?;
    }
    Ok(format!("G(t,1) = {got:?}; brute agrees for n<={brute_max}"))
}

pub fn check_schroder_identity(order: usize) -> Outcome {
    let r = gf::schroder_identity_check(order).map_err(err)?;
    match r.first_mismatch {
        None => Ok(format!("G(t^2,u) = F1(t,ut) mod t^{}", r.compared_order)),
        Some(n) => Err(format!("mismatch at t^{n}")),
    }
}

pub fn check_order_isomorphism(max_n: usize) -> Outcome {
    let budget = Budget::default();
    for n in 3..=max_n {
        ensure(verify_order_isomorphism(n, &budget).map_err(err)?, || {
            format!("comparability matrices differ at n={n}")
        })?;
    }
    Ok(format!("n=3..{max_n}"))
}

/// Component totals and per-diagonal-count refinement for the Motzkin order,
/// component/class agreement, and `2^n` components for Schröder paths.
pub fn check_components(motzkin_max: usize, partition_max: usize, schroder_max: usize) -> Outcome {
    let mut totals = Vec::new();
    for n in 1..=motzkin_max {
        let h = motzkin_poset(n).map_err(err)?;
        // connected_components fails if components and classes disagree.
        let parts = connected_components(&h).map_err(|e| format!("n={n}: {e}"))?;
        let mut per_k: HashMap<usize, u64> = HashMap::new();
        for c in &parts.classes {
            let d = c.0.len();
            ensure((n - d) % 2 == 0, || format!("n={n}: class {c} has odd N+E count"))?;
            *per_k.entry((n - d) / 2).or_default() += 1;
        }
        for k in 0..=n / 2 {
            let want = binomial(n - k, k);
            let got = per_k.get(&k).copied().unwrap_or(0);
            ensure(got == want, || {
                format!("n={n}, k={k}: {got} components, expected C({},{k})={want}", n - k)
            })?;
        }
        let want_total: u64 = (0..=n / 2).map(|k| binomial(n - k, k)).sum();
        ensure(parts.count() as u64 == want_total, || {
            format!("n={n}: {} components, expected {want_total}", parts.count())
        })?;
        if n <= partition_max {
            // Every class present in M_n is exactly one component.
            let distinct: std::collections::HashSet<ClassSignature> =
                h.elements().iter().map(class_of).collect();
            ensure(distinct.len() == parts.count(), || {
                format!("n={n}: {} classes vs {} components", distinct.len(), parts.count())
            })?;
        }
        totals.push(parts.count());
    }
    let mut schroder = Vec::new();
    for n in 1..=schroder_max {
        let h = schroder_poset(2 * n).map_err(err)?;
        let parts = connected_components(&h).map_err(|e| format!("2n={}: {e}", 2 * n))?;
        ensure(parts.count() == 1 << n, || {
            format!("2n={}: {} components, expected 2^{n}", 2 * n, parts.count())
        })?;
        schroder.push(parts.count());
    }
    Ok(format!("motzkin {totals:?}; schroder {schroder:?}"))
}

pub fn check_residuals(quintic_order: usize, system_order: usize, corrupt: bool) -> Outcome {
    for family in [IntervalFamily::Motzkin, IntervalFamily::Schroder] {
        let genuine = Quintic::for_family(family);
        let solver = if corrupt {
            genuine.with_negated_term(2)
        } else {
            genuine.clone()
        };
        let x = solver.solve(quintic_order).map_err(err)?;
        let residual = genuine.residual(&x);
        if let Some(n) = residual.valuation() {
            return Err(format!("{family:?} quintic residual nonzero at t^{n}"));
        }
    }
    let sys = gf::residual_system_check(system_order).map_err(err)?;
    if let Some((i, n)) = sys
        .first_nonzero()
        .iter()
        .enumerate()
        .find_map(|(i, v)| v.map(|n| (i, n)))
    {
        return Err(format!("system relation {} nonzero at t^{n}", i + 1));
    }
    Ok(format!(
        "quintics vanish mod t^{quintic_order}; system vanishes mod t^{system_order}"
    ))
}

/// `F∘` coefficients against brute-force synchronized intervals avoiding
/// `NNN`, and the Motzkin refined count against their `x = 1` specialisation.
pub fn check_refined_statistics(max_n: usize) -> Outcome {
    let f = gf::iterate_f_circ(max_n + 1).map_err(err)?;
    let budget = Budget::default();
    ensure(f.coeffs()[2].to_string() == "u^2x^2+x", || {
        format!("t^2 coefficient {}", f.coeffs()[2])
    })?;
    for n in 1..=max_n {
        let brute = synchronized_interval_polynomial(2 * n, true, &budget).map_err(err)?;
        ensure(brute == f.coeffs()[n], || {
            format!("t^{n}: brute {brute} vs iteration {}", f.coeffs()[n])
        })?;
        ensure(brute.has_nonnegative_coeffs(), || format!("t^{n}: negative coefficient"))?;
        let refined =
            refined_interval_polynomial(n, IntervalFamily::Motzkin, &budget).map_err(err)?;
        ensure(refined == brute.eval_x_at_one(), || {
            format!("n={n}: Motzkin {refined} vs synchronized at x=1 {}", brute.eval_x_at_one())
        })?;
    }
    Ok(format!("2n<={}", 2 * max_n))
}

/// Round trips, length doubling, type/class and primitivity transport and
/// `ds` transport, exhaustively for sizes `1..=max_n`.
pub fn check_bijection_laws(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        let motzkin = enumerate_motzkin(n).map_err(err)?;
        for p in &motzkin {
            let r = phi_inv(p);
            ensure(r.len() == 2 * p.len(), || format!("|φ⁻¹({p})| = {}", r.len()))?;
            ensure(!r.contains_nnn(), || format!("φ⁻¹({p}) = {r} contains NNN"))?;
            ensure(phi(&r).map_err(err)? == *p, || format!("φ(φ⁻¹({p})) ≠ {p}"))?;
        }
        let dyck = enumerate_nnn_avoiding_dyck(2 * n).map_err(err)?;
        ensure(dyck.len() == motzkin.len(), || {
            format!("n={n}: {} NNN-avoiding Dyck vs {} Motzkin", dyck.len(), motzkin.len())
        })?;
        let mut type_to_class: HashMap<TypeWord, ClassSignature> = HashMap::new();
        let mut class_to_type: HashMap<ClassSignature, TypeWord> = HashMap::new();
        for r in &dyck {
            let p = phi(r).map_err(err)?;
            ensure(phi_inv(&p) == *r, || format!("φ⁻¹(φ({r})) ≠ {r}"))?;
            ensure(is_primitive(r) == is_primitive(&p), || {
                format!("primitivity differs for {r} and {p}")
            })?;
            ensure(ds_statistic(r).map_err(err)? == p.d_step_count(), || {
                format!("ds({r}) ≠ #D({p})")
            })?;
            let ty = type_of(r).map_err(err)?;
            let cls = class_of(&p);
            let a = type_to_class.entry(ty.clone()).or_insert(cls.clone());
            ensure(*a == cls, || format!("type {ty} maps to classes {a} and {cls}"))?;
            let b = class_to_type.entry(cls.clone()).or_insert(ty.clone());
            ensure(*b == ty, || format!("class {cls} maps to types {b} and {ty}"))?;
        }
    }
    for n in 1..=max_n.min(8) {
        for r in enumerate_dyck(2 * n).map_err(err)? {
            let ty = type_of(&r).map_err(err)?;
            ensure(r.contains_nnn() == ty.contains_factor(Step::E, Step::E), || {
                format!("{r}: NNN vs EE in type {ty} disagree")
            })?;
        }
    }
    Ok(format!("n<={max_n}"))
}

/// Covers preserve class, length and step multiset, and move an east step
/// strictly later.
pub fn check_cover_invariants(max_n: usize) -> Outcome {
    let mut edges = 0usize;
    for n in 1..=max_n {
        for p in enumerate_motzkin(n).map_err(err)? {
            let cls = class_of(&p);
            let potential = east_potential(p.steps());
            for q in motzkin_covers(&p) {
                edges += 1;
                ensure(class_of(&q) == cls, || format!("{p} ⋖ {q} changes class"))?;
                ensure(q.len() == p.len(), || format!("{p} ⋖ {q} changes length"))?;
                ensure(
                    [Step::N, Step::E, Step::D]
                        .iter()
                        .all(|&s| q.count(s) == p.count(s)),
                    || format!("{p} ⋖ {q} changes the step multiset"),
                )?;
                ensure(east_potential(q.steps()) > potential, || {
                    format!("{p} ⋖ {q} does not move east steps later")
                })?;
            }
        }
    }
    Ok(format!("{edges} cover edges, n<={max_n}"))
}

fn east_potential(steps: &[Step]) -> usize {
    steps
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Step::E)
        .map(|(i, _)| i)
        .sum()
}

pub fn check_dual_types(max_n: usize) -> Outcome {
    let budget = Budget::default();
    let mut rows = 0;
    for n in 2..=max_n {
        for row in dual_type_counts(2 * n, &budget).map_err(err)? {
            rows += 1;
            ensure(row.matches(), || {
                format!(
                    "2n={}: type {} {:?} vs reversed {} {:?}",
                    2 * n,
                    row.ty,
                    row.fiber,
                    row.reversed,
                    row.reversed_fiber
                )
            })?;
        }
    }
    Ok(format!("{rows} type pairs, 2n<={}", 2 * max_n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let config = VerifyConfig {
            motzkin_brute_max: 5,
            schroder_brute_max: 3,
            schroder_series_max: 4,
            motzkin_order: 8,
            schroder_identity_order: 5,
            quintic_order: 10,
            system_order: 8,
            isomorphism_max: 5,
            motzkin_components_max: 7,
            class_partition_max: 6,
            schroder_components_max: 4,
            synchronized_max: 4,
            bijection_max: 6,
            dual_type_max: 4,
            corrupt_quintic: false,
        };
        let a = run(&config);
        assert!(a.passed(), "{}", a.render_text(false));
        let b = run(&config);
        assert_eq!(a.render_text(false), b.render_text(false));
    }

    #[test]
    fn corrupted_quintic_fails_residuals() {
        let out = check_residuals(10, 5, true);
        assert!(out.is_err());
    }
}
