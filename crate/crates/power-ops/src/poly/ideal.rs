//! Residues and membership tests at the prime generated by 3 and a^2 + b.
//!
//! Over the base ring the quotient by (3, a^2 + b) is the polynomial ring
//! over GF(3) obtained by substituting b = -a^2, so membership reduces to
//! "vanishes after reducing mod 3 and eliminating b". Second-power
//! membership uses the exact digit expansion along a^2 + b, which is monic
//! of degree one in b.

use num::{BigInt, Integer, Zero};

use crate::error::{Error, Result};
use crate::poly::ratfunc::RatPoly;
use crate::poly::{MultiPoly, Var};

/// The generator a^2 + b.
pub fn h_poly() -> MultiPoly {
    MultiPoly::var_pow(Var::A, 2).add(&MultiPoly::var(Var::B))
}

fn minus_a_squared() -> MultiPoly {
    MultiPoly::var_pow(Var::A, 2).neg()
}

/// Residue in GF(3)[a, ...]: coefficients mod 3 and b eliminated.
pub fn residue_mod_3h(p: &MultiPoly) -> Result<MultiPoly> {
    let q = p.reduce_mod3()?;
    let q = q.substitute(Var::B, &minus_a_squared())?;
    q.reduce_mod3()
}

pub fn in_ideal_3h(p: &MultiPoly) -> Result<bool> {
    Ok(residue_mod_3h(p)?.is_zero())
}

/// First `k + 1` digits of the expansion `p = c0 + c1*(a^2+b) + ...`,
/// each digit free of b. Exact over the integers because a^2 + b is monic
/// in b.
fn h_digits(p: &MultiPoly, k: usize) -> Result<Vec<MultiPoly>> {
    let h = h_poly();
    let mut rest = p.clone();
    let mut digits = Vec::with_capacity(k + 1);
    for _ in 0..=k {
        let digit = rest.substitute(Var::B, &minus_a_squared())?;
        let diff = rest.sub(&digit);
        rest = match diff.exact_div(&h) {
            Some(q) => q,
            None => {
                return Err(Error::ReductionMismatch(format!(
                    "digit expansion of {} stalled",
                    p
                )))
            }
        };
        digits.push(digit);
    }
    Ok(digits)
}

/// Every coefficient an integer multiple of `n`, denominators prime to 3
/// treated as units.
fn coeffs_divisible(p: &MultiPoly, n: i64) -> Result<bool> {
    let modulus = BigInt::from(n);
    for (_, c) in p.terms() {
        if c.denom().mod_floor(&BigInt::from(3)).is_zero() {
            return Err(Error::ReductionMismatch(format!(
                "coefficient {} has denominator divisible by 3",
                c
            )));
        }
        if !c.numer().mod_floor(&modulus).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the square of the ideal, generated by 9, 3*(a^2+b),
/// and (a^2+b)^2.
pub fn in_ideal_3h_squared(p: &MultiPoly) -> Result<bool> {
    let digits = h_digits(p, 1)?;
    Ok(coeffs_divisible(&digits[0], 9)? && coeffs_divisible(&digits[1], 3)?)
}

/// Eisenstein criterion at the ideal for a polynomial in `var`: leading
/// coefficient outside, all lower coefficients inside, constant
/// coefficient outside the square.
pub fn eisenstein_at_3h(p: &MultiPoly, var: Var) -> Result<bool> {
    let (lo, hi) = match p.degree_span(var) {
        Some(span) => span,
        None => return Ok(false),
    };
    if lo < 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("negative power of {} in Eisenstein check", var.name()),
        });
    }
    if in_ideal_3h(&p.coeff_of(var, hi))? {
        return Ok(false);
    }
    for k in 0..hi {
        let c = p.coeff_of(var, k);
        if !in_ideal_3h(&c)? {
            return Ok(false);
        }
    }
    if in_ideal_3h_squared(&p.coeff_of(var, 0))? {
        return Ok(false);
    }
    Ok(true)
}

/// Whether a fraction's residue at the prime equals `target`. The
/// denominator must not vanish there.
pub fn residue_equals(r: &RatPoly, target: &MultiPoly) -> Result<bool> {
    let num_res = residue_mod_3h(r.num())?;
    let den_res = residue_mod_3h(r.den())?;
    if den_res.is_zero() {
        return Err(Error::NonInvertibleDenominator(format!(
            "{} vanishes at the prime",
            r.den()
        )));
    }
    let rhs = target.mul(&den_res).reduce_mod3()?;
    Ok(num_res == rhs)
}

pub fn vanishes_mod_3h(r: &RatPoly) -> Result<bool> {
    residue_equals(r, &MultiPoly::zero())
}
