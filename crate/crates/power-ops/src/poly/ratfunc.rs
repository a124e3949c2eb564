//! Canonically reduced fractions of multivariate polynomials.
//!
//! Invariants maintained by every constructor:
//! * the denominator is nonzero, `i`-free, has integer coefficients with
//!   content 1 and positive leading coefficient, and no negative exponents;
//! * the numerator has no negative exponents (Laurent content of the input
//!   migrates into the denominator as a monomial factor);
//! * numerator and denominator share no factor, monomial or otherwise.
//!
//! With those invariants structural equality is mathematical equality, and
//! the canonical text emitted for a fraction is reproducible byte for byte.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::gcd;
use crate::poly::{Monomial, MultiPoly, Var, ALL_VARS};

#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatPoly {
    pub fn zero() -> RatPoly {
        RatPoly {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> RatPoly {
        RatPoly::from(MultiPoly::one())
    }

    pub fn int(n: i64) -> RatPoly {
        RatPoly::from(MultiPoly::int(n))
    }

    pub fn constant(c: BigRational) -> RatPoly {
        RatPoly::from(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> RatPoly {
        RatPoly::from(MultiPoly::var(v))
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatPoly> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(mut num: MultiPoly, mut den: MultiPoly) -> RatPoly {
        if num.is_zero() {
            return RatPoly::zero();
        }
        // 1. clear i from the denominator by conjugation
        if den.contains_var(Var::ISym) {
            let d1 = den.coeff_of(Var::ISym, 1);
            if !d1.is_zero() {
                let d0 = den.coeff_of(Var::ISym, 0);
                let conj = d0.sub(&d1.mul(&MultiPoly::var(Var::ISym)));
                num = num.mul(&conj);
                den = den.mul(&conj);
            }
            debug_assert!(!den.contains_var(Var::ISym));
        }
        // 2. move Laurent content into a polynomial fraction
        let mut extra_den = Monomial::unit();
        let mut extra_num = Monomial::unit();
        for v in ALL_VARS {
            let ln = num.degree_span(v).map(|(lo, _)| lo).unwrap_or(0).min(0);
            let ld = den.degree_span(v).map(|(lo, _)| lo).unwrap_or(0).min(0);
            if ln < 0 {
                extra_den = extra_den.mul(&Monomial::var(v, -ln)).0;
            }
            if ld < 0 {
                extra_num = extra_num.mul(&Monomial::var(v, -ld)).0;
            }
        }
        if !extra_den.is_unit() {
            num = shift(&num, &extra_den);
            den = shift(&den, &extra_den);
        }
        if !extra_num.is_unit() {
            num = shift(&num, &extra_num);
            den = shift(&den, &extra_num);
        }
        // the two shifts above multiply num and den by the same monomial, so
        // the fraction is unchanged; cancellation below restores coprimality
        // 3. cancel common monomial content
        for v in ALL_VARS {
            let ln = num.degree_span(v).map(|(lo, _)| lo).unwrap_or(0);
            let ld = den.degree_span(v).map(|(lo, _)| lo).unwrap_or(0);
            let m = ln.min(ld);
            if m > 0 {
                let mono = Monomial::var(v, -m);
                num = shift(&num, &mono);
                den = shift(&den, &mono);
            }
        }
        // 4. cancel the polynomial gcd
        let g = gcd::gcd(&num, &den);
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides numerator");
            den = den.exact_div(&g).expect("gcd divides denominator");
        }
        // 5. scalar-normalize the denominator
        let (den_prim, den_scale) = den.primitive_parts();
        den = den_prim;
        num = num.scale(&(BigRational::one() / den_scale));
        RatPoly { num, den }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The underlying polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.den.is_one() {
            return None;
        }
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        self.num.as_constant().cloned()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = gcd::gcd(&self.den, &other.den);
        let d1 = self.den.exact_div(&g).unwrap();
        let d2 = other.den.exact_div(&g).unwrap();
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        let den = self.den.mul(&d2);
        Self::reduce(num, den)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatPoly {
        Self::reduce(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        RatPoly::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatPoly) -> Result<RatPoly> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatPoly> {
        if e < 0 {
            return Ok(self.inv()?.pow(-e)?);
        }
        let mut out = RatPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        Ok(out)
    }

    /// Substitute a polynomial for a variable in both numerator and
    /// denominator.
    pub fn substitute(&self, v: Var, rep: &MultiPoly) -> Result<RatPoly> {
        let num = self.num.substitute(v, rep)?;
        let den = self.den.substitute(v, rep)?;
        RatPoly::new(num, den)
    }

    /// Graded degree when both parts are homogeneous.
    pub fn graded_degree(&self) -> Option<i64> {
        Some(self.num.graded_degree()? - self.den.graded_degree()?)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }
}

impl From<MultiPoly> for RatPoly {
    fn from(p: MultiPoly) -> RatPoly {
        RatPoly::reduce(p, MultiPoly::one())
    }
}

fn shift(p: &MultiPoly, m: &Monomial) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (mm, c) in p.terms() {
        let (r, sign) = mm.mul(m);
        let mut cc = c.clone();
        if sign < 0 {
            cc = -cc;
        }
        out.add_term(r, cc);
    }
    out
}

/// Factorization of a polynomial over the unit monoid generated by
/// 2, a, b and a^2-16b, when one exists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnitExponents {
    pub two: i32,
    pub a: i32,
    pub b: i32,
    pub disc: i32,
    pub negative: bool,
}

pub fn disc_poly() -> MultiPoly {
    MultiPoly::term(1, &[(Var::A, 2)]).sub(&MultiPoly::term(16, &[(Var::B, 1)]))
}

/// Try to factor `p` as `(+-) 2^t * a^j * b^k * (a^2-16b)^l`.
pub fn unit_monoid_exponents(p: &MultiPoly) -> Option<UnitExponents> {
    if p.is_zero() {
        return None;
    }
    let mut out = UnitExponents::default();
    let mut rest = p.clone();
    for (v, slot) in [(Var::A, 0usize), (Var::B, 1)] {
        if let Some((lo, _)) = rest.degree_span(v) {
            if lo != 0 {
                rest = shift(&rest, &Monomial::var(v, -lo));
                match slot {
                    0 => out.a = lo as i32,
                    _ => out.b = lo as i32,
                }
            }
        }
    }
    let disc = disc_poly();
    loop {
        match rest.exact_div(&disc) {
            Some(q) => {
                rest = q;
                out.disc += 1;
            }
            None => break,
        }
    }
    let c = rest.as_constant()?.clone();
    out.negative = c.is_negative();
    let mut n = c.numer().abs();
    let mut d = c.denom().abs();
    let two = BigInt::from(2);
    while (&n % &two).is_zero() {
        n /= &two;
        out.two += 1;
    }
    while (&d % &two).is_zero() {
        d /= &two;
        out.two -= 1;
    }
    if n.is_one() && d.is_one() {
        Some(out)
    } else {
        None
    }
}

/// A fraction is a unit of the localized coefficient ring when both parts
/// factor over the unit monoid.
pub fn is_monoid_unit(r: &RatPoly) -> bool {
    if r.is_zero() {
        return false;
    }
    unit_monoid_exponents(r.num()).is_some() && unit_monoid_exponents(r.den()).is_some()
}

/// Whether x - y is a fraction with numerator divisible by 3 and
/// denominator invertible modulo 3.
pub fn congruent_mod3(x: &RatPoly, y: &RatPoly) -> Result<bool> {
    let diff = x.sub(y);
    if diff.is_zero() {
        return Ok(true);
    }
    let den = diff.den().reduce_mod3()?;
    if den.is_zero() {
        return Err(Error::NonInvertibleDenominator(
            "denominator vanishes modulo 3".into(),
        ));
    }
    // a rational coefficient with 3 in its denominator means the
    // difference is not integral at 3, hence not congruent
    match diff.num().reduce_mod3() {
        Ok(p) => Ok(p.is_zero()),
        Err(Error::NonInvertibleDenominator(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::big;

    fn a() -> RatPoly {
        RatPoly::var(Var::A)
    }
    fn b() -> RatPoly {
        RatPoly::var(Var::B)
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (a^2 - b^2) / (a + b) = a - b
        let num = a().mul(&a()).sub(&b().mul(&b()));
        let den = a().add(&b());
        let q = num.div(&den).unwrap();
        assert_eq!(q, a().sub(&b()));
        assert!(q.as_poly().is_some());
    }

    #[test]
    fn denominator_sign_is_canonical() {
        // 1 / (-a) gets a positive denominator
        let q = RatPoly::one().div(&a().neg()).unwrap();
        assert_eq!(q.den(), &MultiPoly::var(Var::A));
        assert_eq!(q.num(), &MultiPoly::int(-1));
    }

    #[test]
    fn i_leaves_denominator() {
        // 1 / (1 + i) = (1 - i) / 2
        let den = RatPoly::one().add(&RatPoly::var(Var::ISym));
        let q = RatPoly::one().div(&den).unwrap();
        assert!(!q.den().contains_var(Var::ISym));
        let two_q = q.scale(&big(2));
        let expect = RatPoly::one().sub(&RatPoly::var(Var::ISym));
        assert_eq!(two_q, expect);
    }

    #[test]
    fn laurent_numerator_becomes_fraction() {
        // c^-1 is stored as 1/c
        let q = RatPoly::from(MultiPoly::var_pow(Var::C, -1));
        assert_eq!(q.num(), &MultiPoly::one());
        assert_eq!(q.den(), &MultiPoly::var(Var::C));
    }

    #[test]
    fn field_axioms_smoke() {
        let x = a().add(&RatPoly::int(3)).div(&b()).unwrap();
        let y = b().sub(&RatPoly::int(1)).div(&a().mul(&a())).unwrap();
        let z = RatPoly::int(7).div(&a().add(&b())).unwrap();
        let lhs = x.add(&y).mul(&z);
        let rhs = x.mul(&z).add(&y.mul(&z));
        assert_eq!(lhs, rhs);
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn unit_monoid_detection() {
        // -1/4 * a^2 * (a^2-16b)^2 / b is a unit of the localized ring
        let disc = RatPoly::from(disc_poly());
        let u = RatPoly::constant(BigRational::new(BigInt::from(-1), BigInt::from(4)))
            .mul(&a())
            .mul(&a())
            .mul(&disc)
            .mul(&disc)
            .div(&b())
            .unwrap();
        assert!(is_monoid_unit(&u));
        let tags = unit_monoid_exponents(u.num()).unwrap();
        assert!(tags.negative);
        assert_eq!(tags.a, 2);
        assert_eq!(tags.disc, 2);
        // 3 and a+b lie outside the monoid
        assert!(unit_monoid_exponents(&MultiPoly::int(3)).is_none());
        assert!(!is_monoid_unit(&a().add(&b())));
    }
}
