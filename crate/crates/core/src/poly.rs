//! Exact integer polynomials in `u`, and in `u` and `x`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Minimal ring interface shared by the series coefficients.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn add_assign(&mut self, other: &Self) {
        *self = Coefficient::add(self, other);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inexact polynomial division: nonzero remainder {remainder}")]
pub struct InexactDivision {
    pub remainder: String,
}

/// Polynomial in `u` with big-integer coefficients, stored low degree first
/// with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> UPoly {
        let mut p = UPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> UPoly {
        UPoly::from_coeffs(vec![c.into()])
    }

    /// `c * u^deg`.
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> UPoly {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        UPoly::from_coeffs(coeffs)
    }

    pub fn u() -> UPoly {
        UPoly::monomial(1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> BigInt {
        self.coeffs.get(deg).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, u: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * u + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.coeffs.is_empty() {
            return UPoly::default();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Coefficient for UPoly {
    fn zero() -> Self {
        UPoly::default()
    }

    fn one() -> Self {
        UPoly::constant(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        UPoly::from_coeffs(coeffs)
    }

    fn sub(&self, other: &Self) -> Self {
        Coefficient::add(self, &other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::default();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(coeffs)
    }

    fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] if c.is_one() || (-c).is_one() => Some(self.clone()),
            _ => None,
        }
    }

    fn add_assign(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

/// Writes `c·m` where `m` is a (possibly empty) monomial string.
fn write_term(out: &mut String, c: &BigInt, monomial: &str) {
    let first = out.is_empty();
    let neg = c.is_negative();
    let abs = c.abs();
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    if monomial.is_empty() {
        out.push_str(&abs.to_string());
    } else {
        if !abs.is_one() {
            out.push_str(&abs.to_string());
        }
        out.push_str(monomial);
    }
}

fn var_power(var: char, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl UPoly {
    /// Renders with `var` in place of `u`.
    pub fn render_in(&self, var: char) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                write_term(&mut out, c, &var_power(var, d));
            }
        }
        out
    }
}

/// Canonical rendering, highest degree first: `u^2+1`, `-2u+3`, `0`.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_in('u'))
    }
}

/// Polynomial in `x` whose coefficients are [`UPoly`]s, low degree first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UXPoly {
    coeffs: Vec<UPoly>,
}

impl UXPoly {
    pub fn from_coeffs(coeffs: Vec<UPoly>) -> UXPoly {
        let mut p = UXPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_upoly(p: UPoly) -> UXPoly {
        UXPoly::from_coeffs(vec![p])
    }

    /// `c * u^du * x^dx`.
    pub fn monomial(c: impl Into<BigInt>, du: usize, dx: usize) -> UXPoly {
        let mut coeffs = vec![UPoly::default(); dx + 1];
        coeffs[dx] = UPoly::monomial(c, du);
        UXPoly::from_coeffs(coeffs)
    }

    pub fn x() -> UXPoly {
        UXPoly::monomial(1, 0, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Coefficients of `x^0, x^1, ...`.
    pub fn x_coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn x_coeff(&self, k: usize) -> UPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_x_at_one(&self) -> UPoly {
        let mut acc = UPoly::default();
        for c in &self.coeffs {
            acc.add_assign(c);
        }
        acc
    }

    /// Specialises `u = 1`; the result is a polynomial in `x`, stored as a
    /// [`UPoly`] (render it with [`UPoly::render_in`]).
    pub fn eval_u_at_one(&self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(UPoly::eval_at_one).collect())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(UPoly::has_nonnegative_coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift_x(&self, k: usize) -> UXPoly {
        if self.coeffs.is_empty() {
            return UXPoly::default();
        }
        let mut coeffs = vec![UPoly::default(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UXPoly { coeffs }
    }

    pub fn mul_upoly(&self, p: &UPoly) -> UXPoly {
        UXPoly::from_coeffs(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    /// Exact quotient by `x - 1` (synthetic division).
    pub fn div_x_minus_one(&self) -> Result<UXPoly, InexactDivision> {
        let Some(deg) = self.x_degree() else {
            return Ok(UXPoly::default());
        };
        let mut quotient = vec![UPoly::default(); deg];
        let mut carry = UPoly::default();
        for k in (1..=deg).rev() {
            carry = carry.add(&self.coeffs[k]);
            quotient[k - 1] = carry.clone();
        }
        let remainder = carry.add(&self.coeffs[0]);
        if !remainder.is_zero() {
            return Err(InexactDivision {
                remainder: remainder.to_string(),
            });
        }
        Ok(UXPoly::from_coeffs(quotient))
    }
}

impl Coefficient for UXPoly {
    fn zero() -> Self {
        UXPoly::default()
    }

    fn one() -> Self {
        UXPoly::from_upoly(UPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UXPoly::from_coeffs(coeffs)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UXPoly::default();
        }
        let mut coeffs = vec![UPoly::default(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].add_assign(&a.mul(b));
                }
            }
        }
        UXPoly::from_coeffs(coeffs)
    }

    fn neg(&self) -> Self {
        UXPoly {
            coeffs: self.coeffs.iter().map(UPoly::neg).collect(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => c.unit_inverse().map(UXPoly::from_upoly),
            _ => None,
        }
    }
}

/// Canonical rendering: terms ordered by descending `x` degree, then
/// descending `u` degree, e.g. `u^2x^2+x`.
impl fmt::Display for UXPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (dx, p) in self.coeffs.iter().enumerate().rev() {
            for (du, c) in p.coeffs().iter().enumerate().rev() {
                if !c.is_zero() {
                    let m = format!("{}{}", var_power('u', du), var_power('x', dx));
                    write_term(&mut out, c, &m);
                }
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_i64s(c)
    }

    #[test]
    fn canonical_form_and_rendering() {
        assert_eq!(up(&[1, 0, 1, 0, 0]).coeffs().len(), 3);
        assert_eq!(up(&[1, 0, 1]).to_string(), "u^2+1");
        assert_eq!(up(&[3, -2]).to_string(), "-2u+3");
        assert_eq!(up(&[0, 1]).to_string(), "u");
        assert_eq!(up(&[]).to_string(), "0");
        assert_eq!(up(&[-1]).to_string(), "-1");
        let ux = UXPoly::monomial(1, 2, 2).add(&UXPoly::x());
        assert_eq!(ux.to_string(), "u^2x^2+x");
        assert_eq!(UXPoly::monomial(-3, 1, 0).to_string(), "-3u");
    }

    #[test]
    fn arithmetic() {
        let a = up(&[1, 1]);
        let b = up(&[1, -1]);
        assert_eq!(a.mul(&b), up(&[1, 0, -1]));
        assert_eq!(a.sub(&a), UPoly::zero());
        assert_eq!(a.eval(&BigInt::from(3)), BigInt::from(4));
        assert_eq!(up(&[1, 0, 1]).eval_at_one(), BigInt::from(2));
        assert_eq!(up(&[2, 1]).shift(2), up(&[0, 0, 2, 1]));
    }

    #[test]
    fn units() {
        assert_eq!(UPoly::one().unit_inverse(), Some(UPoly::one()));
        assert_eq!(up(&[-1]).unit_inverse(), Some(up(&[-1])));
        assert_eq!(up(&[2]).unit_inverse(), None);
        assert_eq!(up(&[1, 1]).unit_inverse(), None);
        assert_eq!(UPoly::zero().unit_inverse(), None);
    }

    #[test]
    fn division_by_x_minus_one() {
        // x^2 - 1 = (x - 1)(x + 1)
        let p = UXPoly::from_coeffs(vec![up(&[-1]), up(&[]), up(&[1])]);
        assert_eq!(
            p.div_x_minus_one().unwrap(),
            UXPoly::from_coeffs(vec![up(&[1]), up(&[1])])
        );
        let q = UXPoly::from_coeffs(vec![up(&[1]), up(&[1])]);
        assert!(q.div_x_minus_one().is_err());
    }

    fn arb_upoly() -> impl Strategy<Value = UPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|c| UPoly::from_i64s(&c))
    }

    fn arb_uxpoly() -> impl Strategy<Value = UXPoly> {
        prop::collection::vec(arb_upoly(), 0..5).prop_map(UXPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_uxpoly(), b in arb_uxpoly(), c in arb_uxpoly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn exact_division_inverts_multiplication(a in arb_uxpoly()) {
            let x_minus_one = UXPoly::from_coeffs(vec![up(&[-1]), up(&[1])]);
            prop_assert_eq!(a.mul(&x_minus_one).div_x_minus_one().unwrap(), a);
        }
    }
}
