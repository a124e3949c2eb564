//! Truncated power series over an arbitrary exact coefficient ring.
//!
//! A series carries the order up to which its coefficients are known, and
//! every operation propagates that bound conservatively, so a coefficient
//! the API hands out is always fully determined by the inputs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::ratfunc::RatPoly;
use crate::poly::Var;
use crate::textio::{join_terms, series_term};

/// Coefficient ring operations a series needs. `one_like` and
/// `from_int_like` build constants carrying whatever context the receiver
/// has (precision, quotient modulus), which a bare `zero()` could not.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn inv(&self) -> Result<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn zero_like(&self) -> Self {
        self.sub(self)
    }
}

impl Coeff for RatPoly {
    fn add(&self, other: &Self) -> Self {
        RatPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        RatPoly::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        RatPoly::int(n)
    }
    fn inv(&self) -> Result<Self> {
        RatPoly::inv(self)
    }
}

/// Power series known modulo `var^order`. Exponents are nonnegative;
/// stored coefficients are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    var: Var,
    one: C,
    coeffs: BTreeMap<i64, C>,
    order: i64,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(var: Var, one: C, order: i64) -> TruncSeries<C> {
        assert!(order >= 0);
        TruncSeries {
            var,
            one,
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn from_terms(
        var: Var,
        one: C,
        order: i64,
        terms: impl IntoIterator<Item = (i64, C)>,
    ) -> TruncSeries<C> {
        let mut s = TruncSeries::zero(var, one, order);
        for (e, c) in terms {
            s.add_assign_term(e, c);
        }
        s
    }

    /// The identity series `var`.
    pub fn identity(var: Var, one: C, order: i64) -> TruncSeries<C> {
        let c = one.clone();
        TruncSeries::from_terms(var, one, order, [(1, c)])
    }

    pub fn constant(var: Var, value: C, one: C, order: i64) -> TruncSeries<C> {
        TruncSeries::from_terms(var, one, order, [(0, value)])
    }

    fn add_assign_term(&mut self, e: i64, c: C) {
        debug_assert!(e >= 0, "negative exponent in truncated series");
        if e >= self.order || c.is_zero() {
            return;
        }
        let entry = match self.coeffs.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !entry.is_zero() {
            self.coeffs.insert(e, entry);
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn one_coeff(&self) -> &C {
        &self.one
    }

    /// Smallest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Coefficient of `var^k`; refuses to answer past the known order.
    pub fn coeff(&self, k: i64) -> Result<C> {
        if k >= self.order {
            return Err(Error::TruncationInsufficient {
                needed: k.max(0) as u32,
                available: self.order.max(0) as u32,
            });
        }
        Ok(self
            .coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| self.one.zero_like()))
    }

    pub fn truncated(&self, order: i64) -> TruncSeries<C> {
        let order = order.min(self.order).max(0);
        let mut out = TruncSeries::zero(self.var, self.one.clone(), order);
        for (&e, c) in &self.coeffs {
            if e < order {
                out.coeffs.insert(e, c.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &TruncSeries<C>) -> TruncSeries<C> {
        let order = self.order.min(other.order);
        let mut out = TruncSeries::zero(self.var, self.one.clone(), order);
        for (&e, c) in &self.coeffs {
            out.add_assign_term(e, c.clone());
        }
        for (&e, c) in &other.coeffs {
            out.add_assign_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> TruncSeries<C> {
        let mut out = self.clone();
        out.coeffs = out.coeffs.into_iter().map(|(e, c)| (e, c.neg())).collect();
        out
    }

    pub fn sub(&self, other: &TruncSeries<C>) -> TruncSeries<C> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> TruncSeries<C> {
        let mut out = TruncSeries::zero(self.var, self.one.clone(), self.order);
        for (&e, a) in &self.coeffs {
            out.add_assign_term(e, a.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &TruncSeries<C>) -> TruncSeries<C> {
        let v1 = self.valuation().unwrap_or(self.order);
        let v2 = other.valuation().unwrap_or(other.order);
        let order = (self.order + v2).min(other.order + v1).max(0);
        let mut out = TruncSeries::zero(self.var, self.one.clone(), order);
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                if e1 + e2 < order {
                    out.add_assign_term(e1 + e2, c1.mul(c2));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> TruncSeries<C> {
        let mut acc = TruncSeries::constant(
            self.var,
            self.one.clone(),
            self.one.clone(),
            self.order,
        );
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: i64) -> TruncSeries<C> {
        assert!(k >= 0);
        let mut out = TruncSeries::zero(self.var, self.one.clone(), self.order + k);
        for (&e, c) in &self.coeffs {
            out.coeffs.insert(e + k, c.clone());
        }
        out
    }

    /// Divide by `var^k`; every known term must clear it.
    pub fn shift_down(&self, k: i64) -> Result<TruncSeries<C>> {
        assert!(k >= 0);
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(Error::InexactDivision(format!(
                    "series has valuation {}, cannot divide by {}^{}",
                    v,
                    self.var.name(),
                    k
                )));
            }
        }
        let mut out = TruncSeries::zero(self.var, self.one.clone(), (self.order - k).max(0));
        for (&e, c) in &self.coeffs {
            out.coeffs.insert(e - k, c.clone());
        }
        Ok(out)
    }

    /// Inverse of a series with unit constant term.
    pub fn invert(&self) -> Result<TruncSeries<C>> {
        let c0 = match self.coeffs.get(&0) {
            Some(c) => c.clone(),
            None => {
                return Err(Error::NonUnitLeading(
                    "series has no constant term".to_string(),
                ))
            }
        };
        let c0_inv = c0.inv()?;
        let n = self.order;
        let mut inv: Vec<C> = Vec::with_capacity(n.max(0) as usize);
        inv.push(c0_inv.clone());
        for k in 1..n {
            let mut s = self.one.zero_like();
            for j in 1..=k {
                if let Some(aj) = self.coeffs.get(&j) {
                    s = s.add(&aj.mul(&inv[(k - j) as usize]));
                }
            }
            inv.push(c0_inv.mul(&s).neg());
        }
        Ok(TruncSeries::from_terms(
            self.var,
            self.one.clone(),
            n,
            inv.into_iter().enumerate().map(|(k, c)| (k as i64, c)),
        ))
    }

    /// Quotient, allowing a common power of the variable.
    pub fn div(&self, other: &TruncSeries<C>) -> Result<TruncSeries<C>> {
        let v = other.valuation().unwrap_or(0);
        let num = self.shift_down(v)?;
        let den = other.shift_down(v)?;
        Ok(num.mul(&den.invert()?))
    }

    /// Substitute `inner` (valuation at least one) for the variable.
    pub fn compose(&self, inner: &TruncSeries<C>) -> Result<TruncSeries<C>> {
        let v = match inner.valuation() {
            Some(v) if v >= 1 => v,
            Some(_) => {
                return Err(Error::NonzeroConstantTerm(
                    "substituted series must vanish at the origin".to_string(),
                ))
            }
            None => inner.order,
        };
        let order = inner.order.min(self.order.saturating_mul(v)).max(0);
        let mut result = TruncSeries::zero(inner.var, self.one.clone(), order);
        let mut power = TruncSeries::constant(
            inner.var,
            self.one.clone(),
            self.one.clone(),
            order,
        );
        for k in 0..self.order {
            if let Some(a) = self.coeffs.get(&k) {
                result = result.add(&power.scale(a));
            }
            if k + 1 < self.order {
                power = power.mul(&inner.truncated(order));
                if power.is_zero() {
                    break;
                }
            }
        }
        Ok(result.truncated(order))
    }

    pub fn map_coeffs<D: Coeff>(
        &self,
        one: D,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<TruncSeries<D>> {
        let mut out = TruncSeries::zero(self.var, one, self.order);
        for (&e, c) in &self.coeffs {
            out.add_assign_term(e, f(c)?);
        }
        Ok(out)
    }
}

/// Iterate `x <- step(x)` at fixed truncation order until stable.
pub fn solve_fixed_point<C: Coeff>(
    initial: TruncSeries<C>,
    step: impl Fn(&TruncSeries<C>) -> Result<TruncSeries<C>>,
    max_iter: u32,
) -> Result<TruncSeries<C>> {
    let target = initial.order();
    let mut x = initial;
    for _ in 0..max_iter {
        let next = step(&x)?.truncated(target);
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(Error::NoContraction {
        order: target.max(0) as u32,
        iterations: max_iter,
    })
}

/// Ascending rendering of a series with fraction coefficients, known
/// terms only.
pub fn series_text(s: &TruncSeries<RatPoly>) -> String {
    let parts: Vec<_> = s.terms().map(|(e, c)| series_term(c, s.var(), e)).collect();
    join_terms(&parts)
}

/// Same, with an explicit remainder marker.
pub fn series_text_with_tail(s: &TruncSeries<RatPoly>) -> String {
    format!(
        "{} + O({}^{})",
        series_text(s),
        s.var().name(),
        s.order()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::parse_ratpoly;
    use proptest::prelude::*;

    fn rs(terms: &[(i64, &str)], order: i64) -> TruncSeries<RatPoly> {
        TruncSeries::from_terms(
            Var::U,
            RatPoly::one(),
            order,
            terms
                .iter()
                .map(|&(e, src)| (e, parse_ratpoly(src).unwrap())),
        )
    }

    #[test]
    fn geometric_series() {
        let f = rs(&[(0, "1"), (1, "-1")], 8);
        let inv = f.invert().unwrap();
        for k in 0..8 {
            assert_eq!(inv.coeff(k).unwrap(), RatPoly::one());
        }
        assert!(inv.coeff(8).is_err());
        assert_eq!(f.mul(&inv).coeff(0).unwrap(), RatPoly::one());
    }

    #[test]
    fn order_tracking_through_products() {
        // (u + O(u^5)) * (u^2 + O(u^4)) is known through u^4 + u^5 - 1
        let f = rs(&[(1, "1")], 5);
        let g = rs(&[(2, "1")], 4);
        let p = f.mul(&g);
        assert_eq!(p.order(), 5);
        assert_eq!(p.coeff(3).unwrap(), RatPoly::one());
    }

    #[test]
    fn composition() {
        let f = rs(&[(1, "1"), (2, "1")], 6);
        let g = rs(&[(2, "1")], 7);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.coeff(2).unwrap(), RatPoly::one());
        assert_eq!(h.coeff(4).unwrap(), RatPoly::one());
        assert_eq!(h.coeff(3).unwrap(), RatPoly::zero());
        assert!(f
            .compose(&rs(&[(0, "1")], 4))
            .is_err());
    }

    #[test]
    fn catalan_numbers_from_fixed_point() {
        // x = u + x^2 generates the Catalan numbers
        let init = TruncSeries::zero(Var::U, RatPoly::one(), 8);
        let solved = solve_fixed_point(
            init,
            |x| {
                let base = TruncSeries::identity(Var::U, RatPoly::one(), 8);
                Ok(base.add(&x.mul(x)))
            },
            32,
        )
        .unwrap();
        let expect = [0i64, 1, 1, 2, 5, 14, 42, 132];
        for (k, &c) in expect.iter().enumerate() {
            assert_eq!(solved.coeff(k as i64).unwrap(), RatPoly::int(c));
        }
    }

    #[test]
    fn shifts_and_division() {
        let f = rs(&[(3, "1"), (4, "-1")], 9);
        let down = f.shift_down(3).unwrap();
        assert_eq!(down.coeff(0).unwrap(), RatPoly::one());
        assert!(f.shift_down(4).is_err());
        let g = rs(&[(1, "2")], 5);
        let q = f.div(&g).unwrap();
        assert_eq!(q.coeff(2).unwrap(), parse_ratpoly("1/2").unwrap());
    }

    #[test]
    fn text_rendering() {
        let f = rs(&[(3, "1"), (4, "-a"), (5, "a^2 + b")], 6);
        assert_eq!(series_text(&f), "u^3 - a*u^4 + (a^2 + b)*u^5");
        assert_eq!(
            series_text_with_tail(&f),
            "u^3 - a*u^4 + (a^2 + b)*u^5 + O(u^6)"
        );
    }

    fn small_series() -> impl Strategy<Value = TruncSeries<RatPoly>> {
        prop::collection::vec(-3i64..=3, 0..5).prop_map(|cs| {
            TruncSeries::from_terms(
                Var::U,
                RatPoly::one(),
                6,
                cs.into_iter()
                    .enumerate()
                    .map(|(e, c)| (e as i64, RatPoly::int(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn distributive(f in small_series(), g in small_series(), h in small_series()) {
            let lhs = f.add(&g).mul(&h);
            let rhs = f.mul(&h).add(&g.mul(&h));
            let o = lhs.order().min(rhs.order());
            prop_assert_eq!(lhs.truncated(o), rhs.truncated(o));
        }

        #[test]
        fn associative(f in small_series(), g in small_series(), h in small_series()) {
            let lhs = f.mul(&g).mul(&h);
            let rhs = f.mul(&g.mul(&h));
            let o = lhs.order().min(rhs.order());
            prop_assert_eq!(lhs.truncated(o), rhs.truncated(o));
        }
    }
}
