//! The two-parameter family of elliptic curves
//! `y^2 + a*x*y + a*b*y = x^3 + b*x^2` and everything derived from its
//! 3-torsion: Weierstrass invariants, the division polynomial, the
//! degree-8 torsion polynomial, and the formal group law in the
//! coordinate u = x/y.

pub mod formal;
pub mod points;
pub mod torsion;

use crate::poly::ratfunc::RatPoly;
use crate::poly::{MultiPoly, Var};
use crate::series::Coeff;

pub use points::{CurveOps, Point};

/// The universal member, with coefficients symbolic in a and b.
pub fn family_curve() -> CurveOps<RatPoly> {
    CurveOps::from_ab(RatPoly::var(Var::A), RatPoly::var(Var::B))
}

impl<C: Coeff> CurveOps<C> {
    /// Standard quantities attached to a Weierstrass equation.
    pub fn b_invariants(&self) -> [C; 4] {
        let two = self.a1.from_int_like(2);
        let four = self.a1.from_int_like(4);
        let b2 = self.a1.mul(&self.a1).add(&four.mul(&self.a2));
        let b4 = two.mul(&self.a4).add(&self.a1.mul(&self.a3));
        let b6 = self.a3.mul(&self.a3).add(&four.mul(&self.a6));
        let b8 = self
            .a1
            .mul(&self.a1)
            .mul(&self.a6)
            .add(&four.mul(&self.a2).mul(&self.a6))
            .sub(&self.a1.mul(&self.a3).mul(&self.a4))
            .add(&self.a2.mul(&self.a3).mul(&self.a3))
            .sub(&self.a4.mul(&self.a4));
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> C {
        let [b2, b4, b6, b8] = self.b_invariants();
        let c = |n: i64| self.a1.from_int_like(n);
        b2.mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&c(8).mul(&b4.pow3()))
            .sub(&c(27).mul(&b6.mul(&b6)))
            .add(&c(9).mul(&b2).mul(&b4).mul(&b6))
    }

    /// Coefficients of the 3-division polynomial
    /// `3x^4 + b2*x^3 + 3*b4*x^2 + 3*b6*x + b8`, constant first.
    pub fn three_division_coeffs(&self) -> [C; 5] {
        let [b2, b4, b6, b8] = self.b_invariants();
        let three = self.a1.from_int_like(3);
        [b8, three.mul(&b6), three.mul(&b4), b2, three]
    }
}

trait Pow3 {
    fn pow3(&self) -> Self;
}

impl<C: Coeff> Pow3 for C {
    fn pow3(&self) -> C {
        self.mul(self).mul(self)
    }
}

/// The division polynomial of the family as a polynomial in x.
pub fn three_division_poly() -> MultiPoly {
    let coeffs = family_curve().three_division_coeffs();
    let mut acc = MultiPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        let p = c.as_poly().expect("family coefficients are polynomial");
        acc = acc.add(&p.mul(&MultiPoly::var_pow(Var::X, k as i16)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::{parse_poly, parse_ratpoly};

    #[test]
    fn discriminant_factors() {
        let disc = family_curve().discriminant();
        let expect = parse_ratpoly("a^2*b^4*(a^2 - 16*b)").unwrap();
        assert_eq!(disc, expect);
    }

    #[test]
    fn division_polynomial_expands() {
        let expect =
            parse_poly("3*x^4 + (a^2 + 4*b)*x^3 + 3*a^2*b*x^2 + 3*a^2*b^2*x + a^2*b^3").unwrap();
        assert_eq!(three_division_poly(), expect);
    }

    #[test]
    fn invariants_of_the_family() {
        let [b2, b4, b6, b8] = family_curve().b_invariants();
        assert_eq!(b2, parse_ratpoly("a^2 + 4*b").unwrap());
        assert_eq!(b4, parse_ratpoly("a^2*b").unwrap());
        assert_eq!(b6, parse_ratpoly("a^2*b^2").unwrap());
        assert_eq!(b8, parse_ratpoly("a^2*b^3").unwrap());
    }
}
