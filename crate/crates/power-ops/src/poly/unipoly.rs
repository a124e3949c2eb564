//! Univariate polynomials in one distinguished variable whose coefficients
//! are fractions in the remaining variables. This is the workhorse for
//! division with remainder, extended gcd, and quotient-ring arithmetic.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::ratfunc::{is_monoid_unit, RatPoly};
use crate::poly::{MultiPoly, Var};
use crate::textio::{join_terms, series_term};

/// Dense coefficient list, `coeffs[k]` multiplying `var^k`. Coefficients
/// never mention `var`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<RatPoly>,
}

impl UniPoly {
    pub fn zero(var: Var) -> UniPoly {
        UniPoly {
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(var: Var, coeffs: Vec<RatPoly>) -> UniPoly {
        let mut p = UniPoly { var, coeffs };
        p.trim();
        p
    }

    /// Split a polynomial by powers of `var`. Negative powers are rejected.
    pub fn from_poly(p: &MultiPoly, var: Var) -> Result<UniPoly> {
        match p.degree_span(var) {
            None => Ok(UniPoly::zero(var)),
            Some((lo, hi)) => {
                if lo < 0 {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("negative power of {} in univariate view", var.name()),
                    });
                }
                let coeffs = (0..=hi)
                    .map(|k| RatPoly::from(p.coeff_of(var, k)))
                    .collect();
                Ok(UniPoly::from_coeffs(var, coeffs))
            }
        }
    }

    /// Split a fraction whose denominator is free of `var`.
    pub fn from_ratpoly(r: &RatPoly, var: Var) -> Result<UniPoly> {
        if r.den().contains_var(var) {
            return Err(Error::NonInvertibleDenominator(format!(
                "denominator {} involves {}",
                r.den(),
                var.name()
            )));
        }
        let den = RatPoly::from(r.den().clone());
        let num = UniPoly::from_poly(r.num(), var)?;
        let inv = den.inv()?;
        Ok(num.scale(&inv))
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&RatPoly> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> RatPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(RatPoly::zero)
    }

    pub fn coeffs(&self) -> &[RatPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        UniPoly::from_coeffs(self.var, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &RatPoly) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|x| x.mul(c)).collect();
        UniPoly::from_coeffs(self.var, coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![RatPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, cj) in self.coeffs.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            for (k, ck) in other.coeffs.iter().enumerate() {
                coeffs[j + k] = coeffs[j + k].add(&cj.mul(ck));
            }
        }
        UniPoly::from_coeffs(self.var, coeffs)
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RatPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { var: self.var, coeffs }
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&crate::poly::big(k as i64)))
            .collect();
        UniPoly::from_coeffs(self.var, coeffs)
    }

    /// Horner evaluation; the point may involve any variables.
    pub fn eval(&self, x: &RatPoly) -> RatPoly {
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Reassemble into a single fraction.
    pub fn to_ratpoly(&self) -> RatPoly {
        let v = RatPoly::var(self.var);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&v).add(c);
        }
        acc
    }

    /// Division with remainder over the coefficient field.
    pub fn divrem_field(&self, div: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let db = div.degree().ok_or(Error::ZeroDivision)?;
        let lead_inv = div.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quo = vec![
            RatPoly::zero();
            self.coeffs.len().saturating_sub(db).max(1)
        ];
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let t = rem.leading().unwrap().mul(&lead_inv);
            let k = dr - db;
            quo[k] = quo[k].add(&t);
            let piece = div.shift(k).scale(&t);
            rem = rem.sub(&piece);
            debug_assert!(rem.degree().map_or(true, |d| d < dr));
        }
        Ok((UniPoly::from_coeffs(self.var, quo), rem))
    }

    /// Division with remainder that insists the divisor's leading coefficient
    /// is invertible in the base ring, not just in its fraction field.
    pub fn divrem_unit(&self, div: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        match div.leading() {
            None => Err(Error::ZeroDivision),
            Some(lc) if !is_monoid_unit(lc) => {
                Err(Error::NonUnitLeadingCoefficient(lc.to_string()))
            }
            Some(_) => self.divrem_field(div),
        }
    }

    pub fn rem_by(&self, div: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem_field(div)?.1)
    }

    pub fn monic(&self) -> Result<UniPoly> {
        let lc = self.leading().ok_or(Error::ZeroDivision)?;
        Ok(self.scale(&lc.inv()?))
    }

    /// Extended Euclid: returns `(g, m, n)` with `m*self + n*other = g`,
    /// `g` monic.
    pub fn gcd_bezout(&self, other: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let one = UniPoly::from_coeffs(self.var, vec![RatPoly::one()]);
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = one.clone();
        let mut s1 = UniPoly::zero(self.var);
        let mut t0 = UniPoly::zero(self.var);
        let mut t1 = one;
        while !r1.is_zero() {
            let (q, r2) = r0.divrem_field(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc_inv = r0.leading().unwrap().inv()?;
        Ok((
            r0.scale(&lc_inv),
            s0.scale(&lc_inv),
            t0.scale(&lc_inv),
        ))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| series_term(c, self.var, k as i64))
            .collect();
        write!(f, "{}", join_terms(&parts))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
