//! Truncated power series in `t` with exact polynomial coefficients.
//!
//! A `TSeries` of order `n` is known modulo `t^n`: it stores exactly `n`
//! coefficients. Binary operations on series of different orders work at the
//! smaller order.

use thiserror::Error;

use crate::poly::{Coefficient, UPoly, UXPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a unit")]
    NotAUnit(String),
    #[error("inexact division: coefficient of t^{power} is {value}, expected 0")]
    InexactDivision { power: usize, value: String },
    #[error("coefficient t^{requested} requested from a series known mod t^{order}")]
    OrderExceeded { requested: usize, order: usize },
    #[error("fixed-point iteration stalled at t-order {reached} (target {target})")]
    NonConvergence { reached: usize, target: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TSeries<C> {
    /// Builds a series known mod `t^order`, padding or truncating `coeffs`.
    pub fn new(order: usize, mut coeffs: Vec<C>) -> TSeries<C> {
        coeffs.resize(order, C::zero());
        TSeries { coeffs }
    }

    pub fn zero(order: usize) -> TSeries<C> {
        TSeries::new(order, Vec::new())
    }

    pub fn constant(c: C, order: usize) -> TSeries<C> {
        TSeries::new(order, vec![c])
    }

    pub fn one(order: usize) -> TSeries<C> {
        TSeries::constant(C::one(), order)
    }

    /// `c * t^k`.
    pub fn monomial(c: C, k: usize, order: usize) -> TSeries<C> {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        TSeries::new(order, coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> Result<&C, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::OrderExceeded {
            requested: n,
            order: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> TSeries<C> {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TSeries {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &TSeries<C>) -> TSeries<C> {
        TSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TSeries<C>) -> TSeries<C> {
        TSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> TSeries<C> {
        TSeries {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn mul(&self, other: &TSeries<C>) -> TSeries<C> {
        let order = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].add_assign(&a.mul(b));
                }
            }
        }
        TSeries { coeffs }
    }

    pub fn scale(&self, c: &C) -> TSeries<C> {
        TSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplies by `t^k`; the result is known to the same order.
    pub fn shift(&self, k: usize) -> TSeries<C> {
        let order = self.order();
        let mut coeffs = vec![C::zero(); k.min(order)];
        coeffs.extend(self.coeffs.iter().take(order.saturating_sub(k)).cloned());
        TSeries { coeffs }
    }

    pub fn pow(&self, k: u32) -> TSeries<C> {
        let mut acc = TSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn invert_unit(&self) -> Result<TSeries<C>, SeriesError> {
        let order = self.order();
        if order == 0 {
            return Ok(TSeries::zero(0));
        }
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| SeriesError::NotAUnit(format!("{:?}", self.coeffs[0])))?;
        let mut out = Vec::with_capacity(order);
        out.push(inv0.clone());
        for n in 1..order {
            let mut acc = C::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc.add_assign(&self.coeffs[k].mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(TSeries { coeffs: out })
    }

    /// Divides by `t^k`, requiring the first `k` coefficients to vanish. The
    /// quotient is known mod `t^(order - k)`.
    pub fn divide_exact_t_power(&self, k: usize) -> Result<TSeries<C>, SeriesError> {
        if let Some(power) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(SeriesError::InexactDivision {
                power,
                value: format!("{:?}", self.coeffs[power]),
            });
        }
        Ok(TSeries {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// Substitutes `t -> t^k`. A series known mod `t^n` becomes known mod
    /// `t^(k n)`.
    pub fn substitute_t_power(&self, k: usize) -> TSeries<C> {
        assert!(k >= 1);
        let mut coeffs = vec![C::zero(); k * self.order()];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[k * n] = c.clone();
        }
        TSeries { coeffs }
    }

    pub fn map<D, F>(&self, f: F) -> TSeries<D>
    where
        F: FnMut(&C) -> D,
    {
        TSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Evaluates `Σ coeffs[k] · self^k` by Horner's scheme.
    pub fn eval_polynomial(&self, coeffs: &[TSeries<C>]) -> TSeries<C> {
        let mut acc = TSeries::zero(self.order());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(c);
        }
        acc
    }
}

impl TSeries<UPoly> {
    /// Substitutes `u -> u t`: the term `c u^d t^n` moves to `t^(n + d)`.
    pub fn scale_u_by_t(&self) -> TSeries<UPoly> {
        let order = self.order();
        let mut coeffs = vec![UPoly::default(); order];
        for (n, p) in self.coeffs.iter().enumerate() {
            for (d, c) in p.coeffs().iter().enumerate() {
                if n + d < order {
                    coeffs[n + d].add_assign(&UPoly::monomial(c.clone(), d));
                }
            }
        }
        TSeries { coeffs }
    }

    pub fn eval_u_at_one(&self) -> Vec<num_bigint::BigInt> {
        self.coeffs.iter().map(UPoly::eval_at_one).collect()
    }
}

impl TSeries<UXPoly> {
    pub fn eval_x_at_one(&self) -> TSeries<UPoly> {
        self.map(UXPoly::eval_x_at_one)
    }

    /// Substitutes the series `x` into the `x` variable. Each `t^n`
    /// coefficient is a polynomial in `x`, so the composition is exact to the
    /// common order; evaluated by Horner's scheme in `x`.
    pub fn compose_x(&self, x: &TSeries<UPoly>) -> TSeries<UPoly> {
        let order = self.order().min(x.order());
        let max_dx = self
            .coeffs
            .iter()
            .filter_map(UXPoly::x_degree)
            .max();
        let Some(max_dx) = max_dx else {
            return TSeries::zero(order);
        };
        // by_x[k] = Σ_n [x^k][t^n] self · t^n
        let by_x: Vec<TSeries<UPoly>> = (0..=max_dx)
            .map(|k| {
                TSeries::new(
                    order,
                    self.coeffs.iter().take(order).map(|p| p.x_coeff(k)).collect(),
                )
            })
            .collect();
        x.truncate(order).eval_polynomial(&by_x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(order: usize, c: &[i64]) -> TSeries<UPoly> {
        TSeries::new(order, c.iter().map(|&v| UPoly::constant(v)).collect())
    }

    #[test]
    fn product_truncates() {
        let a = s(4, &[1, 1]);
        let b = s(4, &[1, -1]);
        assert_eq!(a.mul(&b), s(4, &[1, 0, -1]));
        assert_eq!(s(3, &[1, 1]).mul(&s(5, &[1, 1])).order(), 3);
    }

    #[test]
    fn geometric_inverse() {
        let inv = s(6, &[1, -1]).invert_unit().unwrap();
        assert_eq!(inv, s(6, &[1, 1, 1, 1, 1, 1]));
        assert!(matches!(
            s(4, &[2, 1]).invert_unit(),
            Err(SeriesError::NotAUnit(_))
        ));
        assert!(s(4, &[0, 1]).invert_unit().is_err());
    }

    #[test]
    fn exact_t_division() {
        // t^2 (1 + u t)
        let p = TSeries::new(5, vec![UPoly::zero(), UPoly::zero(), UPoly::one(), UPoly::u()]);
        let q = p.divide_exact_t_power(2).unwrap();
        assert_eq!(q, TSeries::new(3, vec![UPoly::one(), UPoly::u()]));
        assert!(matches!(
            s(4, &[0, 3]).divide_exact_t_power(2),
            Err(SeriesError::InexactDivision { power: 1, .. })
        ));
    }

    #[test]
    fn coefficient_bounds() {
        let a = s(3, &[1, 2, 3]);
        assert_eq!(a.coefficient(2).unwrap(), &UPoly::constant(3));
        assert_eq!(
            a.coefficient(3),
            Err(SeriesError::OrderExceeded { requested: 3, order: 3 })
        );
    }

    #[test]
    fn substitutions() {
        let a = s(3, &[1, 2, 3]);
        assert_eq!(a.substitute_t_power(2), s(6, &[1, 0, 2, 0, 3, 0]));
        // 1 + u t  ->  1 + u t^2
        let b = TSeries::new(4, vec![UPoly::one(), UPoly::u()]);
        assert_eq!(
            b.scale_u_by_t(),
            TSeries::new(4, vec![UPoly::one(), UPoly::zero(), UPoly::u()])
        );
        assert_eq!(a.shift(2), s(3, &[0, 0, 1]));
    }

    #[test]
    fn compose_x_with_constant_one() {
        // F = t x + t^2 x^2 at x = 1 + t gives t + 2t^2 + O(t^3) (order 3).
        let f = TSeries::new(
            3,
            vec![
                UXPoly::default(),
                UXPoly::x(),
                UXPoly::monomial(1, 0, 2),
            ],
        );
        let x = s(3, &[1, 1]);
        assert_eq!(f.compose_x(&x), s(3, &[0, 1, 2]));
        assert_eq!(f.compose_x(&s(3, &[1])), f.eval_x_at_one());
    }
}
