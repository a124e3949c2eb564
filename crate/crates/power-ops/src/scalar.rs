//! Scalar domains beyond plain rationals: truncated 3-adic integers with an
//! adjoined square root of -1, Hensel lifting of simple roots, and
//! membership checks for the localized coefficient ring whose only
//! inverted elements are 2, a, b and the discriminant.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::ratfunc::{unit_monoid_exponents, RatPoly, UnitExponents};

/// Residues mod 3^40 still fit in a u64.
pub const MAX_PREC: u32 = 40;

pub fn pow3(k: u32) -> u64 {
    assert!(k <= MAX_PREC, "precision {} out of range", k);
    let mut r = 1u64;
    for _ in 0..k {
        r *= 3;
    }
    r
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse mod `m` by extended Euclid, if coprime.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        r0 -= q * r1;
        t0 -= q * t1;
        std::mem::swap(&mut r0, &mut r1);
        std::mem::swap(&mut t0, &mut t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

fn big_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

/// Element of Z_3[i] known modulo 3^prec. Mixed-precision arithmetic
/// meets at the lower precision, which is the honest thing a truncated
/// approximation can do.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct PadicGauss {
    re: u64,
    im: u64,
    prec: u32,
}

impl PadicGauss {
    pub fn new(re: i128, im: i128, prec: u32) -> PadicGauss {
        let m = pow3(prec) as i128;
        PadicGauss {
            re: re.rem_euclid(m) as u64,
            im: im.rem_euclid(m) as u64,
            prec,
        }
    }

    pub fn zero(prec: u32) -> PadicGauss {
        PadicGauss::new(0, 0, prec)
    }

    pub fn one(prec: u32) -> PadicGauss {
        PadicGauss::new(1, 0, prec)
    }

    pub fn from_int(n: i128, prec: u32) -> PadicGauss {
        PadicGauss::new(n, 0, prec)
    }

    pub fn i_unit(prec: u32) -> PadicGauss {
        PadicGauss::new(0, 1, prec)
    }

    /// Reduce a rational with denominator prime to 3.
    pub fn from_rational(q: &BigRational, prec: u32) -> Result<PadicGauss> {
        let m = pow3(prec);
        let den = big_mod(q.denom(), m);
        let den_inv = inv_mod(den, m)
            .ok_or_else(|| Error::DivisionByNonUnit(q.denom().to_string()))?;
        let num = big_mod(q.numer(), m);
        Ok(PadicGauss {
            re: mulmod(num, den_inv, m),
            im: 0,
            prec,
        })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn re(&self) -> u64 {
        self.re
    }

    pub fn im(&self) -> u64 {
        self.im
    }

    pub fn truncate(&self, prec: u32) -> PadicGauss {
        assert!(prec <= self.prec);
        let m = pow3(prec);
        PadicGauss {
            re: self.re % m,
            im: self.im % m,
            prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn add(&self, other: &PadicGauss) -> PadicGauss {
        let prec = self.prec.min(other.prec);
        let m = pow3(prec);
        PadicGauss {
            re: (self.re % m + other.re % m) % m,
            im: (self.im % m + other.im % m) % m,
            prec,
        }
    }

    pub fn neg(&self) -> PadicGauss {
        let m = pow3(self.prec);
        PadicGauss {
            re: (m - self.re) % m,
            im: (m - self.im) % m,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &PadicGauss) -> PadicGauss {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicGauss) -> PadicGauss {
        let prec = self.prec.min(other.prec);
        let m = pow3(prec);
        let (a, b) = (self.re % m, self.im % m);
        let (c, d) = (other.re % m, other.im % m);
        let ac = mulmod(a, c, m);
        let bd = mulmod(b, d, m);
        let ad = mulmod(a, d, m);
        let bc = mulmod(b, c, m);
        PadicGauss {
            re: (ac + m - bd) % m,
            im: (ad + bc) % m,
            prec,
        }
    }

    pub fn conj(&self) -> PadicGauss {
        let m = pow3(self.prec);
        PadicGauss {
            re: self.re,
            im: (m - self.im) % m,
            prec: self.prec,
        }
    }

    pub fn norm(&self) -> u64 {
        let m = pow3(self.prec);
        (mulmod(self.re, self.re, m) + mulmod(self.im, self.im, m)) % m
    }

    pub fn is_unit(&self) -> bool {
        self.norm() % 3 != 0
    }

    pub fn inv(&self) -> Result<PadicGauss> {
        let m = pow3(self.prec);
        let n = self.norm();
        let n_inv = inv_mod(n, m).ok_or_else(|| {
            Error::DivisionByNonUnit(format!("{:?}", self))
        })?;
        let c = self.conj();
        Ok(PadicGauss {
            re: mulmod(c.re, n_inv, m),
            im: mulmod(c.im, n_inv, m),
            prec: self.prec,
        })
    }

    /// Agreement at the shared precision.
    pub fn congruent(&self, other: &PadicGauss) -> bool {
        let prec = self.prec.min(other.prec);
        self.truncate(prec) == other.truncate(prec)
    }

    /// Representatives in (-3^prec / 2, 3^prec / 2).
    pub fn balanced(&self) -> (i128, i128) {
        let m = pow3(self.prec) as i128;
        let lift = |r: u64| {
            let r = r as i128;
            if 2 * r > m {
                r - m
            } else {
                r
            }
        };
        (lift(self.re), lift(self.im))
    }
}

impl std::fmt::Debug for PadicGauss {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (re, im) = self.balanced();
        if im == 0 {
            write!(f, "{} (mod 3^{})", re, self.prec)
        } else {
            write!(f, "{} + {}*i (mod 3^{})", re, im, self.prec)
        }
    }
}

/// Newton-lift a simple root of an integer polynomial from its residue
/// mod 3 to a root mod 3^prec. `coeffs[k]` multiplies x^k.
pub fn hensel_lift_root(coeffs: &[i64], seed: u64, prec: u32) -> Result<u64> {
    let m = pow3(prec);
    let eval = |x: u64, cs: &[i64]| -> u64 {
        let mut acc: u64 = 0;
        for &c in cs.iter().rev() {
            acc = (mulmod(acc, x, m) + (c as i128).rem_euclid(m as i128) as u64) % m;
        }
        acc
    };
    let deriv: Vec<i64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as i64)
        .collect();
    if eval(seed % m, coeffs) % 3 != 0 {
        return Err(Error::NoRoot(format!("{} is not a root mod 3", seed)));
    }
    if eval(seed % m, &deriv) % 3 == 0 {
        return Err(Error::NonsimpleRoot(format!(
            "derivative vanishes at {} mod 3",
            seed
        )));
    }
    let mut x = seed % m;
    for _ in 0..prec {
        let fx = eval(x, coeffs);
        if fx == 0 {
            break;
        }
        let fpx = eval(x, &deriv);
        let step = mulmod(fx, inv_mod(fpx, m).unwrap(), m);
        x = (x + m - step) % m;
    }
    if eval(x, coeffs) != 0 {
        return Err(Error::NoConvergence(prec));
    }
    Ok(x)
}

/// Exponent record for an element of the localized coefficient ring: which
/// powers of 2, a, b and the discriminant its denominator uses. The
/// canonical fraction keeps integer content in the coefficients, so the
/// 2-power is read off the coefficient denominators. Errors if the
/// denominator leaves the inverted monoid.
pub fn denominator_exponents(r: &RatPoly) -> Result<UnitExponents> {
    let two = BigInt::from(2);
    let mut two_power = 0i32;
    for (_, c) in r.num().terms() {
        let mut d = c.denom().abs();
        let mut v = 0i32;
        while d.is_even() {
            d = &d / &two;
            v += 1;
        }
        if !d.is_one() {
            return Err(Error::NonInvertibleDenominator(format!(
                "coefficient denominator {}",
                c.denom()
            )));
        }
        two_power = two_power.max(v);
    }
    let mut tags = unit_monoid_exponents(r.den())
        .ok_or_else(|| Error::NonInvertibleDenominator(r.den().to_string()))?;
    tags.two += two_power;
    Ok(tags)
}

pub fn in_base_ring(r: &RatPoly) -> bool {
    denominator_exponents(r).is_ok()
}
