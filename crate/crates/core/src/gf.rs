//! Interval generating functions, computed two independent ways:
//!
//! * order-by-order iteration of the catalytic functional equation for
//!   `F∘(t, u, x)`, where `x` marks contacts of the lower path;
//! * the algebraic route: the quintic for `X` solved as a `t`-adic fixed
//!   point, followed by exact evaluation of the rational expression for
//!   `F₁(t, u) = F∘(t, u, 1)` (Motzkin) or `G(t, u)` (Schröder).
//!
//! Everything is exact; every division is checked to be exact.

use num_bigint::BigInt;

use crate::poly::{Coefficient, UPoly, UXPoly};
use crate::poset::IntervalFamily;
use crate::series::{SeriesError, TSeries};

pub const DEFAULT_MOTZKIN_ORDER: usize = 25;
pub const DEFAULT_SCHRODER_ORDER: usize = 20;

/// A polynomial in `t` with [`UPoly`] coefficients, used for the fixed
/// coefficients of the algebraic equations.
type TPoly = Vec<UPoly>;

fn tpoly(terms: &[(usize, &[i64])]) -> TPoly {
    let len = terms.iter().map(|(k, _)| k + 1).max().unwrap_or(0);
    let mut out = vec![UPoly::zero(); len];
    for (k, c) in terms {
        out[*k].add_assign(&UPoly::from_i64s(c));
    }
    out
}

fn as_series(p: &TPoly, order: usize) -> TSeries<UPoly> {
    TSeries::new(order, p.iter().take(order).cloned().collect())
}

/// `Σ_k c_k(t, u) X^k = 0`, a polynomial equation of degree five in `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quintic {
    coeffs: [TPoly; 6],
}

impl Quintic {
    /// `u²t²X⁵ − t²(1 + u²)X⁴ − 2utX³ + 2utX² + X − 1 = 0`.
    pub fn motzkin() -> Quintic {
        Quintic {
            coeffs: [
                tpoly(&[(0, &[-1])]),
                tpoly(&[(0, &[1])]),
                tpoly(&[(1, &[0, 2])]),
                tpoly(&[(1, &[0, -2])]),
                tpoly(&[(2, &[-1, 0, -1])]),
                tpoly(&[(2, &[0, 0, 1])]),
            ],
        }
    }

    /// `u²t²X⁵ − t(1 + u²t)X⁴ − 2utX³ + 2utX² + X − 1 = 0`.
    pub fn schroder() -> Quintic {
        Quintic {
            coeffs: [
                tpoly(&[(0, &[-1])]),
                tpoly(&[(0, &[1])]),
                tpoly(&[(1, &[0, 2])]),
                tpoly(&[(1, &[0, -2])]),
                tpoly(&[(1, &[-1]), (2, &[0, 0, -1])]),
                tpoly(&[(2, &[0, 0, 1])]),
            ],
        }
    }

    pub fn for_family(family: IntervalFamily) -> Quintic {
        match family {
            IntervalFamily::Motzkin => Quintic::motzkin(),
            IntervalFamily::Schroder => Quintic::schroder(),
        }
    }

    /// The same equation with the coefficient of `X^k` negated.
    pub fn with_negated_term(&self, k: usize) -> Quintic {
        let mut q = self.clone();
        q.coeffs[k] = q.coeffs[k].iter().map(UPoly::neg).collect();
        q
    }

    pub fn residual(&self, x: &TSeries<UPoly>) -> TSeries<UPoly> {
        let order = x.order();
        let cs: Vec<_> = self.coeffs.iter().map(|c| as_series(c, order)).collect();
        x.eval_polynomial(&cs)
    }

    /// Right-hand side of `X = −c₀ − Σ_{k≠1} c_k X^k` (requires `c₁ = 1`).
    fn fixed_point_step(&self, x: &TSeries<UPoly>) -> TSeries<UPoly> {
        let order = x.order();
        let mut cs: Vec<_> = self.coeffs.iter().map(|c| as_series(c, order).neg()).collect();
        cs[1] = TSeries::zero(order);
        x.eval_polynomial(&cs)
    }

    /// The fixed-point form contracts `t`-adically when `c₁ = 1` and every
    /// `c_k`, `k ≥ 2`, vanishes at `t = 0`.
    fn is_contracting(&self) -> bool {
        self.coeffs[1] == tpoly(&[(0, &[1])])
            && self.coeffs[2..]
                .iter()
                .all(|c| c.first().is_none_or(UPoly::is_zero))
    }

    /// The unique power-series root with constant term `−c₀(0)`, known mod
    /// `t^order`. Each pass is computed one order deeper than the last and
    /// must reproduce every coefficient already fixed.
    pub fn solve(&self, order: usize) -> Result<TSeries<UPoly>, SeriesError> {
        if order == 0 {
            return Ok(TSeries::zero(0));
        }
        if !self.is_contracting() {
            return Err(SeriesError::NonConvergence { reached: 0, target: order });
        }
        let mut x = TSeries::new(1, vec![self.coeffs[0].first().cloned().unwrap_or_default().neg()]);
        loop {
            let prec = (x.order() + 1).min(order);
            let padded = TSeries::new(prec, x.coeffs().to_vec());
            let next = self.fixed_point_step(&padded);
            if next.truncate(x.order()) != x {
                return Err(SeriesError::NonConvergence {
                    reached: x.order(),
                    target: order,
                });
            }
            if prec == order && next == padded {
                break;
            }
            x = next;
        }
        if !self.residual(&x).is_zero() {
            return Err(SeriesError::NonConvergence {
                reached: self.residual(&x).valuation().unwrap_or(order),
                target: order,
            });
        }
        Ok(x)
    }

    /// Plain fixed-point iteration at full precision for a given number of
    /// passes, starting from `X = 1`. Used to check that the root does not
    /// depend on how it is computed.
    pub fn iterate_plain(&self, order: usize, passes: usize) -> TSeries<UPoly> {
        let mut x = TSeries::one(order);
        for _ in 0..passes {
            x = self.fixed_point_step(&x);
        }
        x
    }
}

pub fn solve_x(order: usize, family: IntervalFamily) -> Result<TSeries<UPoly>, SeriesError> {
    Quintic::for_family(family).solve(order)
}

/// Evaluates `num / (t^shift · X · (u t X² − 1))`, checking that `num` is
/// divisible by `t^shift`.
fn divide_by_kernel(
    num: &TSeries<UPoly>,
    x: &TSeries<UPoly>,
    shift: usize,
) -> Result<TSeries<UPoly>, SeriesError> {
    let quotient = num.divide_exact_t_power(shift)?;
    let order = quotient.order();
    let x = x.truncate(order);
    let ut = TSeries::monomial(UPoly::u(), 1, order);
    // u t X² − 1 = −(1 − u t X²)
    let one_minus = TSeries::one(order).sub(&ut.mul(&x).mul(&x));
    Ok(quotient
        .mul(&x.invert_unit()?)
        .mul(&one_minus.invert_unit()?)
        .neg())
}

fn series_from(terms: &[(usize, &[i64])], order: usize) -> TSeries<UPoly> {
    as_series(&tpoly(terms), order)
}

/// `F₁(t, u)` mod `t^order` from the closed form in `X`:
/// `(u²t²X⁴ − t(u²t + ut² + u + 2t)X³ + (1 + ut + t²)X − 1) / (t²X(utX² − 1))`.
pub fn compute_f1(order: usize) -> Result<TSeries<UPoly>, SeriesError> {
    let work = order + 2;
    let x = solve_x(work, IntervalFamily::Motzkin)?;
    let c4 = series_from(&[(2, &[0, 0, 1])], work);
    let c3 = series_from(&[(1, &[0, -1]), (2, &[-2, 0, -1]), (3, &[0, -1])], work);
    let c1 = series_from(&[(0, &[1]), (1, &[0, 1]), (2, &[1])], work);
    let c0 = series_from(&[(0, &[-1])], work);
    let num = x.eval_polynomial(&[c0, c1, TSeries::zero(work), c3, c4]);
    divide_by_kernel(&num, &x, 2)
}

/// `G(t, u)` mod `t^order` from the closed form in `X′`:
/// `(u²t²X′⁴ − (u²t² + ut² + ut + 2t)X′³ + (1 + ut + t)X′ − 1) / (tX′(utX′² − 1))`.
pub fn compute_g(order: usize) -> Result<TSeries<UPoly>, SeriesError> {
    let work = order + 1;
    let x = solve_x(work, IntervalFamily::Schroder)?;
    let c4 = series_from(&[(2, &[0, 0, 1])], work);
    let c3 = series_from(&[(1, &[-2, -1]), (2, &[0, -1, -1])], work);
    let c1 = series_from(&[(0, &[1]), (1, &[1, 1])], work);
    let c0 = series_from(&[(0, &[-1])], work);
    let num = x.eval_polynomial(&[c0, c1, TSeries::zero(work), c3, c4]);
    divide_by_kernel(&num, &x, 1)
}

/// Per `t`-coefficient, `(x p(x) − p(1)) / (x − 1)`.
pub fn divided_difference(f: &TSeries<UXPoly>) -> Result<TSeries<UXPoly>, SeriesError> {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, p)| divided_difference_poly(p).map_err(|e| SeriesError::InexactDivision {
            power: n,
            value: e.remainder,
        }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TSeries::new(f.order(), coeffs))
}

fn divided_difference_poly(p: &UXPoly) -> Result<UXPoly, crate::poly::InexactDivision> {
    p.shift_x(1)
        .sub(&UXPoly::from_upoly(p.eval_x_at_one()))
        .div_x_minus_one()
}

/// Right-hand side `t x (1 + F)(u + t + t Δ(F))` of the functional equation.
pub fn functional_equation_rhs(f: &TSeries<UXPoly>) -> Result<TSeries<UXPoly>, SeriesError> {
    let order = f.order();
    let one_plus_f = TSeries::one(order).add(f);
    let u_plus_t = TSeries::new(
        order,
        vec![UXPoly::from_upoly(UPoly::u()), UXPoly::one()],
    );
    let inner = u_plus_t.add(&divided_difference(f)?.shift(1));
    Ok(one_plus_f
        .mul(&inner)
        .shift(1)
        .map(|p| p.shift_x(1)))
}

/// `F∘(t, u, x)` mod `t^order` by order-by-order iteration of the functional
/// equation from `F = 0`. The right side carries a factor `t`, so its `t^n`
/// coefficient depends only on coefficients of `F` below `n`; each step fixes
/// one more coefficient. The result is checked against the full right side.
pub fn iterate_f_circ(order: usize) -> Result<TSeries<UXPoly>, SeriesError> {
    // a = 1 + F, b = 1 + Δ(F); [t^n] F = x (u a_{n−1} + Σ_{i+j=n−2} a_i b_j).
    let mut a: Vec<UXPoly> = vec![UXPoly::one()];
    let mut b: Vec<UXPoly> = vec![UXPoly::one()];
    let u = UPoly::u();
    for n in 1..order {
        let mut acc = a[n - 1].mul_upoly(&u);
        if n >= 2 {
            for i in 0..=n - 2 {
                acc.add_assign(&a[i].mul(&b[n - 2 - i]));
            }
        }
        let fn_ = acc.shift_x(1);
        let dn = divided_difference_poly(&fn_).map_err(|e| SeriesError::InexactDivision {
            power: n,
            value: e.remainder,
        })?;
        a.push(fn_);
        b.push(dn);
    }
    let mut coeffs = a;
    if let Some(c0) = coeffs.first_mut() {
        *c0 = UXPoly::zero();
    }
    let f = TSeries::new(order, coeffs);
    let rhs = functional_equation_rhs(&f)?;
    if rhs != f {
        return Err(SeriesError::NonConvergence {
            reached: rhs.sub(&f).valuation().unwrap_or(order),
            target: order,
        });
    }
    Ok(f)
}

/// `F₁` mod `t^order` via the functional equation, specialised at `x = 1`.
pub fn f1_via_functional_equation(order: usize) -> Result<TSeries<UPoly>, SeriesError> {
    Ok(iterate_f_circ(order)?.eval_x_at_one())
}

/// `G` mod `t^order` from a series `F₁` known mod `t^(2 order − 1)` or
/// better, using `G(t², u) = F₁(t, u t)`: `[t^n] G = Σ_d [t^(2n−d) u^d] F₁ · u^d`.
pub fn g_from_f1(f1: &TSeries<UPoly>, order: usize) -> Result<TSeries<UPoly>, SeriesError> {
    let stretched = f1.scale_u_by_t();
    let coeffs = (0..order)
        .map(|n| stretched.coefficient(2 * n).cloned())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TSeries::new(order, coeffs))
}

/// Residuals of the three kernel-method relations after substituting
/// `x := X`, each as a series in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemResiduals {
    pub order: usize,
    pub residuals: [TSeries<UPoly>; 3],
}

impl SystemResiduals {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(TSeries::is_zero)
    }

    /// Lowest nonvanishing `t`-order of each residual.
    pub fn first_nonzero(&self) -> [Option<usize>; 3] {
        [
            self.residuals[0].valuation(),
            self.residuals[1].valuation(),
            self.residuals[2].valuation(),
        ]
    }
}

/// Evaluates the relation obtained by clearing denominators in the
/// functional equation (as a polynomial `P(F∘, F₁, t, u, x)`), its
/// `F∘`-derivative and its `x`-derivative at `x := X`, `F∘ := F∘(X)`.
pub fn system_residuals(
    x: &TSeries<UPoly>,
    f1: &TSeries<UPoly>,
    f_circ: &TSeries<UXPoly>,
) -> SystemResiduals {
    let order = x.order().min(f1.order()).min(f_circ.order());
    let x = x.truncate(order);
    let f1 = f1.truncate(order);
    let fx = f_circ.truncate(order).compose_x(&x);
    let k = |terms: &[(usize, &[i64])]| series_from(terms, order);
    let t2 = k(&[(2, &[1])]);
    let ut = k(&[(1, &[0, 1])]);
    let one = TSeries::one(order);
    let x2 = x.mul(&x);
    let t2x = t2.mul(&x);
    let t2x2 = t2.mul(&x2);
    let t2xf1 = t2x.mul(&f1);
    let t2f1 = t2.mul(&f1);

    // t²x²F² + (2t²x² + x²ut − xut − t²x − x + 1 − t²xF₁)F
    //   + t²x² − t²x + x²ut − xut − t²xF₁
    let lin1 = t2x2
        .scale(&UPoly::constant(2))
        .add(&x2.mul(&ut))
        .sub(&x.mul(&ut))
        .sub(&t2x)
        .sub(&x)
        .add(&one)
        .sub(&t2xf1);
    let const1 = t2x2
        .sub(&t2x)
        .add(&x2.mul(&ut))
        .sub(&x.mul(&ut))
        .sub(&t2xf1);
    let sys1 = t2x2.mul(&fx).mul(&fx).add(&lin1.mul(&fx)).add(&const1);

    // 2t²x²F + (2t²x² + x²ut − xut − t²x − x + 1 − t²xF₁)
    let sys2 = t2x2.scale(&UPoly::constant(2)).mul(&fx).add(&lin1);

    // 2t²xF² + (4t²x + 2xut − ut − t² − 1 − t²F₁)F + 2t²x − t² + 2xut − ut − t²F₁
    let two = UPoly::constant(2);
    let lin3 = t2x
        .scale(&UPoly::constant(4))
        .add(&x.mul(&ut).scale(&two))
        .sub(&ut)
        .sub(&t2)
        .sub(&one)
        .sub(&t2f1);
    let const3 = t2x
        .scale(&two)
        .sub(&t2)
        .add(&x.mul(&ut).scale(&two))
        .sub(&ut)
        .sub(&t2f1);
    let sys3 = t2x
        .scale(&two)
        .mul(&fx)
        .mul(&fx)
        .add(&lin3.mul(&fx))
        .add(&const3);

    SystemResiduals {
        order,
        residuals: [sys1, sys2, sys3],
    }
}

/// Computes `X`, `F₁` (closed form) and `F∘` (functional equation) at
/// `order` and evaluates the three relations.
pub fn residual_system_check(order: usize) -> Result<SystemResiduals, SeriesError> {
    if order == 0 {
        let z = TSeries::zero(0);
        return Ok(SystemResiduals {
            order: 0,
            residuals: [z.clone(), z.clone(), z],
        });
    }
    let x = solve_x(order, IntervalFamily::Motzkin)?;
    let f1 = compute_f1(order)?;
    let f_circ = iterate_f_circ(order)?;
    Ok(system_residuals(&x, &f1, &f_circ))
}

/// Algebraic solution for one family.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicSolution {
    pub family: IntervalFamily,
    pub x: TSeries<UPoly>,
    pub f1: TSeries<UPoly>,
}

impl AlgebraicSolution {
    pub fn motzkin(order: usize) -> Result<AlgebraicSolution, SeriesError> {
        Ok(AlgebraicSolution {
            family: IntervalFamily::Motzkin,
            x: solve_x(order, IntervalFamily::Motzkin)?,
            f1: compute_f1(order)?,
        })
    }

    /// The Schröder solution; `f1` holds `G(t, u)`.
    pub fn schroder(order: usize) -> Result<AlgebraicSolution, SeriesError> {
        Ok(AlgebraicSolution {
            family: IntervalFamily::Schroder,
            x: solve_x(order, IntervalFamily::Schroder)?,
            f1: compute_g(order)?,
        })
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.f1.coeffs().iter().all(UPoly::has_nonnegative_coeffs)
    }
}

/// Outcome of comparing `G(t², u)` with `F₁(t, u t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    /// Both sides are compared mod `t^compared_order`.
    pub compared_order: usize,
    pub first_mismatch: Option<usize>,
}

/// Computes `G` (Schröder closed form) mod `t^order` and `F₁` (Motzkin closed
/// form) mod `t^(2 order)`, and compares `G(t², u)` with `F₁(t, u t)`.
pub fn schroder_identity_check(order: usize) -> Result<IdentityCheck, SeriesError> {
    let g = compute_g(order)?;
    let f1 = compute_f1(2 * order)?;
    let lhs = g.substitute_t_power(2);
    let rhs = f1.scale_u_by_t();
    let compared_order = lhs.order().min(rhs.order());
    let first_mismatch = (0..compared_order).find(|&n| lhs.coeffs()[n] != rhs.coeffs()[n]);
    Ok(IdentityCheck {
        compared_order,
        first_mismatch,
    })
}

/// Coefficients of a `u`-series at `u = 1`.
pub fn at_u_one(s: &TSeries<UPoly>) -> Vec<BigInt> {
    s.eval_u_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_i64s(c)
    }

    #[test]
    fn x_leading_terms() {
        // X = 1 + t² + 2u t³ + O(t⁴)
        let x = solve_x(4, IntervalFamily::Motzkin).unwrap();
        assert_eq!(
            x.coeffs(),
            &[up(&[1]), up(&[]), up(&[1]), up(&[0, 2])]
        );
        assert_eq!(solve_x(1, IntervalFamily::Schroder).unwrap().coeffs(), &[up(&[1])]);
    }

    #[test]
    fn quintic_residuals_vanish() {
        for family in [IntervalFamily::Motzkin, IntervalFamily::Schroder] {
            let q = Quintic::for_family(family);
            let x = q.solve(30).unwrap();
            assert!(q.residual(&x).is_zero());
        }
    }

    #[test]
    fn corrupted_quintic_is_detected() {
        let good = Quintic::motzkin();
        let bad = good.with_negated_term(2);
        let x_bad = bad.solve(12).unwrap();
        assert!(!good.residual(&x_bad).is_zero());
    }

    #[test]
    fn non_contracting_equation_is_rejected() {
        let q = Quintic::motzkin().with_negated_term(1);
        assert!(matches!(q.solve(5), Err(SeriesError::NonConvergence { .. })));
    }

    #[test]
    fn plain_iteration_agrees() {
        let q = Quintic::motzkin();
        let x = q.solve(12).unwrap();
        assert_eq!(q.iterate_plain(12, 12), x);
        assert_eq!(q.iterate_plain(12, 20), x);
    }

    #[test]
    fn divided_difference_examples() {
        let one_coeff = |p: UXPoly| TSeries::new(1, vec![p]);
        let dd = |p: UXPoly| divided_difference(&one_coeff(p)).unwrap().coeffs()[0].clone();
        // x -> x + 1
        assert_eq!(dd(UXPoly::x()), UXPoly::x().add(&UXPoly::one()));
        // c -> c
        let c = UXPoly::from_upoly(up(&[0, 3]));
        assert_eq!(dd(c.clone()), c);
        // x² -> x² + x + 1
        assert_eq!(
            dd(UXPoly::monomial(1, 0, 2)),
            UXPoly::monomial(1, 0, 2).add(&UXPoly::x()).add(&UXPoly::one())
        );
    }

    #[test]
    fn f_circ_leading_terms() {
        let f = iterate_f_circ(4).unwrap();
        assert!(f.coeffs()[0].is_zero());
        assert_eq!(f.coeffs()[1].to_string(), "ux");
        assert_eq!(f.coeffs()[2].to_string(), "u^2x^2+x");
    }

    #[test]
    fn f1_leading_terms() {
        let f1 = compute_f1(4).unwrap();
        assert!(f1.coefficient(0).unwrap().is_zero());
        assert_eq!(f1.coefficient(1).unwrap(), &up(&[0, 1]));
        assert_eq!(f1.coefficient(2).unwrap(), &up(&[1, 0, 1]));
        assert!(f1.coefficient(4).is_err());
    }

    #[test]
    fn schroder_leading_term() {
        let g = compute_g(3).unwrap();
        assert_eq!(g.coefficient(1).unwrap(), &up(&[1, 1]));
    }

    #[test]
    fn degenerate_system_check() {
        assert!(residual_system_check(0).unwrap().all_zero());
    }

    #[test]
    fn perturbed_f1_breaks_system() {
        let order = 10;
        let x = solve_x(order, IntervalFamily::Motzkin).unwrap();
        let f1 = compute_f1(order).unwrap();
        let fc = iterate_f_circ(order).unwrap();
        assert!(system_residuals(&x, &f1, &fc).all_zero());
        let bumped = f1.add(&TSeries::monomial(UPoly::one(), 3, order));
        let res = system_residuals(&x, &bumped, &fc);
        assert!(!res.residuals[0].is_zero());
        // The perturbation enters sys-1 through t²x·F₁(1 + F∘(X)).
        assert_eq!(res.first_nonzero()[0], Some(5));
    }
}
