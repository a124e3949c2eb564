//! Chord-tangent arithmetic on a Weierstrass curve, generic over the
//! coefficient ring, plus point counting over small finite fields.

use crate::error::{Error, Result};
use crate::series::Coeff;

/// A point in (x, y) coordinates, or the identity at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<C> {
    Infinity,
    Affine { x: C, y: C },
}

impl<C> Point<C> {
    pub fn affine(x: C, y: C) -> Point<C> {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&C, &C)> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }
}

/// `y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6` with its group law.
#[derive(Clone, Debug)]
pub struct CurveOps<C> {
    pub a1: C,
    pub a2: C,
    pub a3: C,
    pub a4: C,
    pub a6: C,
}

impl<C: Coeff> CurveOps<C> {
    /// The family member with parameters a and b:
    /// `y^2 + a*x*y + a*b*y = x^3 + b*x^2`.
    pub fn from_ab(a: C, b: C) -> CurveOps<C> {
        let zero = a.zero_like();
        CurveOps {
            a1: a.clone(),
            a2: b.clone(),
            a3: a.mul(&b),
            a4: zero.clone(),
            a6: zero,
        }
    }

    pub fn on_curve(&self, p: &Point<C>) -> bool {
        let (x, y) = match p.coords() {
            None => return true,
            Some(c) => c,
        };
        let lhs = y.mul(y).add(&self.a1.mul(x).mul(y)).add(&self.a3.mul(y));
        let rhs = x
            .mul(x)
            .mul(x)
            .add(&self.a2.mul(x).mul(x))
            .add(&self.a4.mul(x))
            .add(&self.a6);
        lhs.sub(&rhs).is_zero()
    }

    pub fn neg(&self, p: &Point<C>) -> Point<C> {
        match p.coords() {
            None => Point::Infinity,
            Some((x, y)) => {
                let ny = y.neg().sub(&self.a1.mul(x)).sub(&self.a3);
                Point::affine(x.clone(), ny)
            }
        }
    }

    /// Finishes an addition once the chord or tangent slope is known.
    fn from_slope(&self, lambda: &C, nu: &C, x1: &C, x2: &C) -> Point<C> {
        let x3 = lambda
            .mul(lambda)
            .add(&self.a1.mul(lambda))
            .sub(&self.a2)
            .sub(x1)
            .sub(x2);
        let y3 = lambda.add(&self.a1).mul(&x3).neg().sub(nu).sub(&self.a3);
        Point::affine(x3, y3)
    }

    pub fn double(&self, p: &Point<C>) -> Result<Point<C>> {
        let (x, y) = match p.coords() {
            None => return Ok(Point::Infinity),
            Some(c) => c,
        };
        let den = y.add(y).add(&self.a1.mul(x)).add(&self.a3);
        if den.is_zero() {
            return Ok(Point::Infinity);
        }
        let den_inv = den.inv()?;
        let three_x2 = x.mul(x).mul(&x.from_int_like(3));
        let lam_num = three_x2
            .add(&self.a2.mul(x).add(&self.a2.mul(x)))
            .add(&self.a4)
            .sub(&self.a1.mul(y));
        let lambda = lam_num.mul(&den_inv);
        let nu_num = x
            .mul(x)
            .mul(x)
            .neg()
            .add(&self.a4.mul(x))
            .add(&self.a6.add(&self.a6))
            .sub(&self.a3.mul(y));
        let nu = nu_num.mul(&den_inv);
        Ok(self.from_slope(&lambda, &nu, x, x))
    }

    pub fn add(&self, p: &Point<C>, q: &Point<C>) -> Result<Point<C>> {
        let (x1, y1) = match p.coords() {
            None => return Ok(q.clone()),
            Some(c) => c,
        };
        let (x2, y2) = match q.coords() {
            None => return Ok(p.clone()),
            Some(c) => c,
        };
        if x1.sub(x2).is_zero() {
            if y1.sub(y2).is_zero() {
                return self.double(p);
            }
            return Ok(Point::Infinity);
        }
        let dx_inv = x2.sub(x1).inv()?;
        let lambda = y2.sub(y1).mul(&dx_inv);
        let nu = y1.mul(x2).sub(&y2.mul(x1)).mul(&dx_inv);
        Ok(self.from_slope(&lambda, &nu, x1, x2))
    }

    pub fn scalar_mul(&self, k: i64, p: &Point<C>) -> Result<Point<C>> {
        if k < 0 {
            return self.scalar_mul(-k, &self.neg(p));
        }
        let mut acc = Point::Infinity;
        let mut addend = p.clone();
        let mut n = k;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &addend)?;
            }
            n >>= 1;
            if n > 0 {
                addend = self.double(&addend)?;
            }
        }
        Ok(acc)
    }
}

/// The field with nine elements, presented as `F_3(i)` with `i^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GF9 {
    re: u8,
    im: u8,
}

impl GF9 {
    pub fn new(re: i64, im: i64) -> GF9 {
        GF9 {
            re: re.rem_euclid(3) as u8,
            im: im.rem_euclid(3) as u8,
        }
    }

    pub fn int(n: i64) -> GF9 {
        GF9::new(n, 0)
    }

    pub fn all() -> Vec<GF9> {
        let mut out = Vec::with_capacity(9);
        for re in 0..3 {
            for im in 0..3 {
                out.push(GF9 { re, im });
            }
        }
        out
    }

    pub fn in_prime_field(&self) -> bool {
        self.im == 0
    }

    fn norm(&self) -> u8 {
        ((self.re * self.re + self.im * self.im) % 3) as u8
    }
}

impl Coeff for GF9 {
    fn add(&self, other: &Self) -> Self {
        GF9::new((self.re + other.re) as i64, (self.im + other.im) as i64)
    }
    fn mul(&self, other: &Self) -> Self {
        let re = self.re as i64 * other.re as i64 - self.im as i64 * other.im as i64;
        let im = self.re as i64 * other.im as i64 + self.im as i64 * other.re as i64;
        GF9::new(re, im)
    }
    fn neg(&self) -> Self {
        GF9::new(-(self.re as i64), -(self.im as i64))
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    fn one_like(&self) -> Self {
        GF9::int(1)
    }
    fn from_int_like(&self, n: i64) -> Self {
        GF9::int(n)
    }
    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0 {
            return Err(Error::ZeroDivision);
        }
        // norm is 1 or 2 and both are self-inverse mod 3
        let conj = GF9::new(self.re as i64, -(self.im as i64));
        Ok(conj.mul(&GF9::int(n as i64)))
    }
}

/// Number of points of the (a, b) family member over `F_9`, infinity
/// included.
pub fn point_count_gf9(a: GF9, b: GF9) -> usize {
    count_over(&CurveOps::from_ab(a, b), &GF9::all())
}

/// Same count over the prime field `F_3`; only meaningful when a and b
/// both lie in it.
pub fn point_count_gf3(a: GF9, b: GF9) -> usize {
    let f3: Vec<GF9> = GF9::all().into_iter().filter(|c| c.in_prime_field()).collect();
    count_over(&CurveOps::from_ab(a, b), &f3)
}

fn count_over(curve: &CurveOps<GF9>, field: &[GF9]) -> usize {
    let mut n = 1;
    for x in field {
        for y in field {
            if curve.on_curve(&Point::affine(*x, *y)) {
                n += 1;
            }
        }
    }
    n
}

/// Result of sweeping every smooth member of the family over `F_9`.
pub struct FieldScan {
    pub smooth_members: usize,
    pub supersingular: Vec<(GF9, GF9)>,
}

/// Walks all (a, b) with nonzero discriminant and records the members
/// whose point count is 1 mod 3, which over `F_9` picks out exactly the
/// supersingular ones. Returns an error if that locus ever disagrees
/// with the vanishing of `a^2 + b`.
pub fn supersingular_scan() -> Result<FieldScan> {
    let mut scan = FieldScan {
        smooth_members: 0,
        supersingular: Vec::new(),
    };
    for a in GF9::all() {
        for b in GF9::all() {
            if CurveOps::from_ab(a, b).discriminant().is_zero() {
                continue;
            }
            scan.smooth_members += 1;
            let supersingular = point_count_gf9(a, b) % 3 == 1;
            let hasse_zero = a.mul(&a).add(&b).is_zero();
            if supersingular != hasse_zero {
                return Err(Error::ReductionMismatch(format!(
                    "count criterion and a^2 + b disagree at ({:?}, {:?})",
                    a, b
                )));
            }
            if supersingular {
                scan.supersingular.push((a, b));
            }
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::family_curve;
    use crate::poly::ratfunc::RatPoly;
    use crate::poly::Var;
    use crate::textio::parse_ratpoly;

    fn origin() -> Point<RatPoly> {
        Point::affine(RatPoly::int(0), RatPoly::int(0))
    }

    #[test]
    fn origin_has_order_four() {
        let ops = family_curve();
        assert!(ops.on_curve(&origin()));
        let twice = ops.double(&origin()).unwrap();
        let minus_b = RatPoly::var(Var::B).neg();
        assert_eq!(twice, Point::affine(minus_b, RatPoly::int(0)));
        assert!(ops.on_curve(&twice));
        assert!(ops.scalar_mul(4, &origin()).unwrap().is_infinity());
        let thrice = ops.scalar_mul(3, &origin()).unwrap();
        assert_eq!(thrice, ops.neg(&origin()));
        let (x3, y3) = thrice.coords().unwrap();
        assert!(x3.is_zero());
        assert_eq!(*y3, parse_ratpoly("-a*b").unwrap());
    }

    #[test]
    fn addition_matches_repeated_doubling() {
        let ops = family_curve();
        let p = origin();
        let two_p = ops.double(&p).unwrap();
        let via_add = ops.add(&p, &ops.add(&p, &p).unwrap()).unwrap();
        let via_mul = ops.scalar_mul(3, &p).unwrap();
        assert_eq!(
            ops.add(&two_p, &p).unwrap(),
            via_add
        );
        assert_eq!(via_add, via_mul);
        assert!(ops
            .add(&via_mul, &p)
            .unwrap()
            .is_infinity());
    }

    #[test]
    fn reference_member_counts() {
        // y^2 + xy - y = x^3 - x^2 has trace zero over F_3: four points
        // there, and 9 + 1 - (0^2 - 2*3) = 16 over F_9.
        let a = GF9::int(1);
        let b = GF9::int(-1);
        assert_eq!(point_count_gf3(a, b), 4);
        assert_eq!(point_count_gf9(a, b), 16);
        let two_torsion = Point::affine(GF9::int(1), GF9::int(0));
        let ops = CurveOps::from_ab(a, b);
        assert!(ops.on_curve(&two_torsion));
        assert!(ops.double(&two_torsion).unwrap().is_infinity());
    }

    #[test]
    fn supersingular_locus_is_cut_out_by_hasse_invariant() {
        let scan = supersingular_scan().unwrap();
        assert!(scan.supersingular.contains(&(GF9::int(1), GF9::int(-1))));
        // every fiber over the locus stays smooth, so each of the eight
        // nonzero values of a contributes b = -a^2
        assert_eq!(scan.supersingular.len(), 8);
        assert!(scan.smooth_members > 8);
    }

    #[test]
    fn gf9_is_a_field() {
        for c in GF9::all() {
            if c.is_zero() {
                assert!(c.inv().is_err());
                continue;
            }
            assert_eq!(c.mul(&c.inv().unwrap()), GF9::int(1));
        }
        let i = GF9::new(0, 1);
        assert_eq!(i.mul(&i), GF9::int(-1));
    }
}
