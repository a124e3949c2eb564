//! Sparse multivariate polynomials over the rationals.
//!
//! The variable universe is fixed: the curve parameters `a`, `b`, the chart
//! parameter `c`, a generic torsion point `(d, e)`, coordinates `u`, `v`,
//! `x`, `y`, the quotient generators `alpha`, `kappa`, `lambda`, the
//! supersingular parameter `h`, a square root of -1 written `i`, and three
//! auxiliary formal variables `u1`, `u2`, `u3` used for group-law expansions.
//!
//! Exponents may be negative (Laurent monomials show up in the `c`-formulas),
//! and `i^2` rewrites to `-1` inside monomial multiplication, so `i` never
//! carries an exponent outside {0, 1}.

pub mod algext;
pub mod gcd;
pub mod ideal;
pub mod linsolve;
pub mod ratfunc;
pub mod unipoly;

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Number of variables in the fixed universe.
pub const NVARS: usize = 17;

/// Identifier of a polynomial variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Var {
    A,
    B,
    C,
    D,
    E,
    U,
    V,
    X,
    Y,
    Alpha,
    Kappa,
    Lambda,
    H,
    ISym,
    U1,
    U2,
    U3,
}

pub const ALL_VARS: [Var; NVARS] = [
    Var::A,
    Var::B,
    Var::C,
    Var::D,
    Var::E,
    Var::U,
    Var::V,
    Var::X,
    Var::Y,
    Var::Alpha,
    Var::Kappa,
    Var::Lambda,
    Var::H,
    Var::ISym,
    Var::U1,
    Var::U2,
    Var::U3,
];

/// Grading weight of each variable, in the convention that makes every
/// curve and isogeny formula homogeneous: |a|=1, |b|=2, and uv-plane
/// coordinates carry the weight of the corresponding coordinate functions
/// (|u|=-1, |v|=-3, |x|=2, |y|=3, |d|=-1, |e|=-3, |kappa|=-2, |lambda|=-6).
pub const WEIGHTS: [i64; NVARS] = [1, 2, 0, -1, -3, -1, -3, 2, 3, 0, -2, -6, 0, 0, -1, -1, -1];

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::D => "d",
            Var::E => "e",
            Var::U => "u",
            Var::V => "v",
            Var::X => "x",
            Var::Y => "y",
            Var::Alpha => "alpha",
            Var::Kappa => "kappa",
            Var::Lambda => "lambda",
            Var::H => "h",
            Var::ISym => "i",
            Var::U1 => "u1",
            Var::U2 => "u2",
            Var::U3 => "u3",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        ALL_VARS.iter().copied().find(|v| v.name() == name)
    }

    pub fn weight(self) -> i64 {
        WEIGHTS[self.index()]
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically in the
/// fixed variable order, so reverse iteration over a term map prints highest
/// terms first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [i16; NVARS],
}

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial { exps: [0; NVARS] }
    }

    pub fn var(v: Var, e: i16) -> Monomial {
        let mut m = Monomial::unit();
        m.exps[v.index()] = e;
        m
    }

    #[inline]
    pub fn exp(&self, v: Var) -> i16 {
        self.exps[v.index()]
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn graded_degree(&self) -> i64 {
        self.exps
            .iter()
            .zip(WEIGHTS.iter())
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Multiply two monomials, returning the reduced monomial and a sign
    /// carried out of the rewrite `i^2 -> -1`.
    pub fn mul(&self, other: &Monomial) -> (Monomial, i32) {
        let mut exps = [0i16; NVARS];
        for k in 0..NVARS {
            exps[k] = self.exps[k]
                .checked_add(other.exps[k])
                .expect("monomial exponent overflow");
        }
        Monomial { exps }.reduce_i()
    }

    /// Normalize the `i` exponent into {0, 1}, extracting the sign.
    pub fn reduce_i(mut self) -> (Monomial, i32) {
        let idx = Var::ISym.index();
        let e = self.exps[idx];
        let q = e.div_euclid(2);
        self.exps[idx] = e.rem_euclid(2);
        let sign = if q % 2 == 0 { 1 } else { -1 };
        (self, sign)
    }

    pub fn with_exp(mut self, v: Var, e: i16) -> Monomial {
        self.exps[v.index()] = e;
        self
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in ALL_VARS {
            let e = self.exp(v);
            if e != 0 {
                if !first {
                    write!(fm, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(fm, "{}", v.name())?;
                } else {
                    write!(fm, "{}^{}", v.name(), e)?;
                }
            }
        }
        if first {
            write!(fm, "1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MultiPoly { terms }
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(big(n))
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i16) -> MultiPoly {
        let (m, sign) = Monomial::var(v, e).reduce_i();
        let mut p = MultiPoly::zero();
        p.add_term(m, big(sign as i64));
        p
    }

    pub fn term(coeff: i64, parts: &[(Var, i16)]) -> MultiPoly {
        let mut m = Monomial::unit();
        for &(v, e) in parts {
            m = m.with_exp(v, m.exp(v) + e);
        }
        let (m, sign) = m.reduce_i();
        let mut p = MultiPoly::zero();
        p.add_term(m, big(coeff * sign as i64));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<&BigRational> {
        if self.terms.is_empty() {
            return None;
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c);
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Terms from highest to lowest in the canonical monomial order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let (m, sign) = m1.mul(m2);
                let mut c = c1 * c2;
                if sign < 0 {
                    c = -c;
                }
                out.add_term(m, c);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> MultiPoly {
        self.scale(&big(n))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        out
    }

    /// Multiply by `v^e` (a pure exponent shift; `e` may be negative).
    pub fn mul_var_pow(&self, v: Var, e: i16) -> MultiPoly {
        if e == 0 {
            return self.clone();
        }
        self.mul(&MultiPoly::var_pow(v, e))
    }

    /// Minimum and maximum exponent of `v` over all terms.
    pub fn degree_span(&self, v: Var) -> Option<(i16, i16)> {
        let mut lo = i16::MAX;
        let mut hi = i16::MIN;
        for m in self.terms.keys() {
            let e = m.exp(v);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        if self.terms.is_empty() {
            None
        } else {
            Some((lo, hi))
        }
    }

    pub fn degree_in(&self, v: Var) -> i16 {
        self.degree_span(v).map(|(_, hi)| hi).unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) != 0)
    }

    pub fn vars_present(&self) -> Vec<Var> {
        ALL_VARS
            .iter()
            .copied()
            .filter(|&v| self.contains_var(v))
            .collect()
    }

    /// Coefficient of `v^k`, with the `v`-power removed.
    pub fn coeff_of(&self, v: Var, k: i16) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                out.add_term(m.with_exp(v, 0), c.clone());
            }
        }
        out
    }

    /// Substitute a polynomial for a variable. All exponents of `v` must be
    /// non-negative unless the replacement is invertible as a monomial.
    pub fn substitute(&self, v: Var, rep: &MultiPoly) -> Result<MultiPoly> {
        let (lo, _) = match self.degree_span(v) {
            None => return Ok(MultiPoly::zero()),
            Some(s) => s,
        };
        if lo < 0 {
            // Negative powers are only substitutable when the replacement is
            // a single invertible term.
            if rep.terms.len() != 1 {
                return Err(Error::NonInvertibleDenominator(format!(
                    "cannot substitute into {}^{}",
                    v.name(),
                    lo
                )));
            }
        }
        let mut cache: BTreeMap<i16, MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let base = m.with_exp(v, 0);
            let powed = cache.entry(e).or_insert_with(|| {
                if e >= 0 {
                    rep.pow(e as u32)
                } else {
                    let (mono, coeff) = rep.terms.iter().next().unwrap();
                    // invert the single term
                    let mut inv_m = Monomial::unit();
                    for var in ALL_VARS {
                        inv_m = inv_m.with_exp(var, -mono.exp(var));
                    }
                    let mut p = MultiPoly::zero();
                    p.add_term(inv_m, BigRational::one() / coeff);
                    p.pow((-e) as u32)
                }
            });
            let mut mono_poly = MultiPoly::zero();
            mono_poly.add_term(base, c.clone());
            out = out.add(&mono_poly.mul(powed));
        }
        Ok(out)
    }

    /// Total degree of the highest term (plain exponent sum).
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Graded degree under the fixed weights, if homogeneous.
    pub fn graded_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let first = it.next()?.graded_degree();
        for m in it {
            if m.graded_degree() != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigRational) -> BigRational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn is_integer(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Largest content: (integer-primitive polynomial, rational scale) with
    /// `self = scale * primitive`, primitive having integer coefficients with
    /// gcd 1 and positive leading coefficient.
    pub fn primitive_parts(&self) -> (MultiPoly, BigRational) {
        if self.is_zero() {
            return (MultiPoly::zero(), BigRational::one());
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&denom_lcm / c.denom());
            num_gcd = num::integer::gcd(num_gcd, n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        let mut scale = BigRational::new(num_gcd, denom_lcm);
        let lead_sign = self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead_sign {
            scale = -scale;
        }
        let prim = self.map_coeffs(|c| c / &scale);
        (prim, scale)
    }

    /// Reduce all coefficients modulo 3 to representatives in {0, 1, 2}.
    /// Denominators must be prime to 3.
    pub fn reduce_mod3(&self) -> Result<MultiPoly> {
        let three = BigInt::from(3);
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let d = c.denom().mod_floor_3();
            if d == 0 {
                return Err(Error::NonInvertibleDenominator(format!(
                    "coefficient {} has denominator divisible by 3",
                    c
                )));
            }
            let dinv = if d == 1 { 1 } else { 2 };
            let n = c.numer().mod_floor(&three) * BigInt::from(dinv);
            let r = n.mod_floor(&three);
            out.add_term(*m, BigRational::from_integer(r));
        }
        Ok(out)
    }

    /// Exact multivariate division; `None` when the division does not come
    /// out even.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        gcd::exact_div(self, divisor)
    }
}

trait ModFloor3 {
    fn mod_floor_3(&self) -> u8;
}

impl ModFloor3 for BigInt {
    fn mod_floor_3(&self) -> u8 {
        use num::Integer;
        let r = self.mod_floor(&BigInt::from(3));
        if r.is_zero() {
            0
        } else if r.is_one() {
            1
        } else {
            2
        }
    }
}

use num::Integer;

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // canonical text form lives in textio; Debug delegates to it
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> MultiPoly {
        MultiPoly::var(Var::A).mul(&MultiPoly::var(Var::B))
    }

    #[test]
    fn i_squares_to_minus_one() {
        let i = MultiPoly::var(Var::ISym);
        let sq = i.mul(&i);
        assert_eq!(sq, MultiPoly::int(-1));
        let quad = sq.mul(&sq);
        assert_eq!(quad, MultiPoly::one());
        // i^-1 = -i
        let inv = MultiPoly::var_pow(Var::ISym, -1);
        assert_eq!(inv, i.neg());
    }

    #[test]
    fn arithmetic_basics() {
        let a = MultiPoly::var(Var::A);
        let b = MultiPoly::var(Var::B);
        let s = a.add(&b);
        let sq = s.mul(&s);
        // (a+b)^2 = a^2 + 2ab + b^2
        let expect = a
            .mul(&a)
            .add(&ab().scale_int(2))
            .add(&b.mul(&b));
        assert_eq!(sq, expect);
        assert_eq!(s.sub(&s), MultiPoly::zero());
        assert_eq!(s.pow(2), sq);
    }

    #[test]
    fn ordering_puts_high_degree_last() {
        // a^2*b vs a*b^2: same total degree, a^2*b is lexicographically larger
        let m1 = Monomial::var(Var::A, 2).mul(&Monomial::var(Var::B, 1)).0;
        let m2 = Monomial::var(Var::A, 1).mul(&Monomial::var(Var::B, 2)).0;
        assert!(m1 > m2);
        assert!(Monomial::var(Var::A, 3) > m1.clone());
    }

    #[test]
    fn coeff_extraction() {
        // p = 3*u^2*a + u^2*b + 5*u
        let p = MultiPoly::term(3, &[(Var::U, 2), (Var::A, 1)])
            .add(&MultiPoly::term(1, &[(Var::U, 2), (Var::B, 1)]))
            .add(&MultiPoly::term(5, &[(Var::U, 1)]));
        let c2 = p.coeff_of(Var::U, 2);
        let expect = MultiPoly::var(Var::A).scale_int(3).add(&MultiPoly::var(Var::B));
        assert_eq!(c2, expect);
        assert_eq!(p.degree_in(Var::U), 2);
    }

    #[test]
    fn substitution() {
        // (a^2 + b) with b -> -a^2 gives 0
        let h = MultiPoly::term(1, &[(Var::A, 2)]).add(&MultiPoly::var(Var::B));
        let r = h
            .substitute(Var::B, &MultiPoly::term(-1, &[(Var::A, 2)]))
            .unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn grading_of_curve_equation() {
        // v + a*u*v + a*b*v^2 - u^3 - b*u^2*v is homogeneous of weight -3
        let eq = MultiPoly::var(Var::V)
            .add(&MultiPoly::term(1, &[(Var::A, 1), (Var::U, 1), (Var::V, 1)]))
            .add(&MultiPoly::term(1, &[(Var::A, 1), (Var::B, 1), (Var::V, 2)]))
            .sub(&MultiPoly::term(1, &[(Var::U, 3)]))
            .sub(&MultiPoly::term(1, &[(Var::B, 1), (Var::U, 2), (Var::V, 1)]));
        assert_eq!(eq.graded_degree(), Some(-3));
    }

    #[test]
    fn primitive_parts_normalizes() {
        let p = MultiPoly::term(4, &[(Var::A, 1)]).add(&MultiPoly::int(6));
        let (prim, scale) = p.primitive_parts();
        assert_eq!(scale, big(2));
        assert_eq!(prim, MultiPoly::term(2, &[(Var::A, 1)]).add(&MultiPoly::int(3)));
        let neg = p.neg();
        let (prim2, scale2) = neg.primitive_parts();
        assert_eq!(prim2, prim);
        assert_eq!(scale2, big(-2));
    }

    #[test]
    fn mod3_reduction() {
        let p = MultiPoly::term(7, &[(Var::A, 1)])
            .add(&MultiPoly::constant(BigRational::new(
                BigInt::from(1),
                BigInt::from(2),
            )));
        // 7 = 1 mod 3, 1/2 = 2 mod 3
        let r = p.reduce_mod3().unwrap();
        assert_eq!(
            r,
            MultiPoly::var(Var::A).add(&MultiPoly::int(2))
        );
        let bad = MultiPoly::constant(BigRational::new(BigInt::from(1), BigInt::from(3)));
        assert!(bad.reduce_mod3().is_err());
    }
}
