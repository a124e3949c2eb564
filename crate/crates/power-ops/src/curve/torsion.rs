//! The subscheme of points of exact order 3 in the coordinate u = x/y.
//!
//! On the chart where the curve reads `v + a*u*v + a*b*v^2 = u^3 + b*u^2*v`
//! with v = 1/y, a nontrivial 3-torsion point has u-coordinate d killed by
//! a degree-8 polynomial f, and its v-coordinate is a polynomial g(d).
//! Both come out of one resultant computation and a Euclidean chain, with
//! the Bezout cofactors of f and K kept because later constructions reuse
//! them.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::ratfunc::RatPoly;
use crate::poly::unipoly::UniPoly;
use crate::poly::{MultiPoly, Var};

/// Everything the order-3 locus determines.
pub struct TorsionData {
    /// Division polynomial rewritten in (u, v), homogeneous of degree 4.
    pub division_uv: MultiPoly,
    /// Minimal polynomial of the u-coordinate d, degree 8 over Z[a, b].
    pub f: MultiPoly,
    /// v-coordinate of the torsion point as a polynomial in u of degree 7,
    /// with denominator a*(a^2 - 16*b).
    pub g: RatPoly,
    /// Linear and constant parts of the first Euclidean remainder, as
    /// polynomials in u.
    pub k_poly: RatPoly,
    pub l_poly: RatPoly,
    /// Bezout cofactors with m*f + n*K = 1.
    pub m_poly: RatPoly,
    pub n_poly: RatPoly,
    /// The chain itself, in the variable v over coefficients in d.
    pub chain_q1: UniPoly,
    pub chain_r1: UniPoly,
    pub chain_q2: UniPoly,
    pub chain_r2: UniPoly,
}

/// The division polynomial pushed to the (u, v) chart: v^4 times its
/// value at x = u/v.
pub fn division_poly_uv() -> MultiPoly {
    let psi = super::three_division_poly();
    let mut out = MultiPoly::zero();
    for k in 0..=4i16 {
        let c = psi.coeff_of(Var::X, k);
        let m = MultiPoly::var_pow(Var::U, k).mul(&MultiPoly::var_pow(Var::V, 4 - k));
        out = out.add(&c.mul(&m));
    }
    out
}

/// The curve equation on the (u, v) chart, as a quadratic in v whose
/// u-coordinate variable is the caller's choice (u itself, or d for the
/// torsion point).
pub fn chart_quadratic(u_var: Var) -> UniPoly {
    let u = RatPoly::var(u_var);
    let a = RatPoly::var(Var::A);
    let b = RatPoly::var(Var::B);
    let c0 = u.pow(3).unwrap().neg();
    let c1 = RatPoly::one().add(&a.mul(&u)).sub(&b.mul(&u.mul(&u)));
    let c2 = a.mul(&b);
    UniPoly::from_coeffs(Var::V, vec![c0, c1, c2])
}

/// Eliminates v between the division polynomial and the curve equation.
/// The two roots of the chart quadratic are conjugate values v, vbar;
/// multiplying the division polynomial at both and clearing the factor
/// u^4/(-a^2*b) leaves the degree-8 torsion polynomial.
pub fn torsion_poly() -> Result<MultiPoly> {
    let psi_uv = RatPoly::from(division_poly_uv());
    let psi_v = UniPoly::from_ratpoly(&psi_uv, Var::V)?;

    let a = RatPoly::var(Var::A);
    let b = RatPoly::var(Var::B);
    let u = RatPoly::var(Var::U);
    let ab_inv = a.mul(&b).inv()?;
    // elementary symmetric functions of v and vbar
    let e1 = b.mul(&u).mul(&u).sub(&a.mul(&u)).sub(&RatPoly::one()).mul(&ab_inv);
    let e2 = u.pow(3)?.neg().mul(&ab_inv);
    let modulus = UniPoly::from_coeffs(Var::V, vec![e2.clone(), e1.neg(), RatPoly::one()]);

    let rem = psi_v.rem_by(&modulus)?;
    let r0 = rem.coeff(0);
    let r1 = rem.coeff(1);
    let norm = r1
        .mul(&r1)
        .mul(&e2)
        .add(&r0.mul(&r1).mul(&e1))
        .add(&r0.mul(&r0));

    let cleared = norm
        .mul(&a.mul(&a).mul(&b).neg())
        .mul(&u.pow(-4)?);
    match cleared.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::FactorizationMismatch(
            "u^4 does not clear from the resultant".into(),
        )),
    }
}

/// Cached result of [`derive_torsion`]; the derivation is deterministic
/// and several later constructions start from it.
pub fn torsion_data() -> Result<&'static TorsionData> {
    static CACHE: OnceLock<TorsionData> = OnceLock::new();
    if let Some(d) = CACHE.get() {
        return Ok(d);
    }
    let d = derive_torsion()?;
    Ok(CACHE.get_or_init(|| d))
}

/// Runs the Euclidean chain at u = d and assembles the full torsion data.
pub fn derive_torsion() -> Result<TorsionData> {
    let division_uv = division_poly_uv();
    let f = torsion_poly()?;

    let d = MultiPoly::var(Var::D);
    let division_at_d = division_uv.substitute(Var::U, &d)?;
    let chain_a = UniPoly::from_poly(&division_at_d, Var::V)?;
    let chain_b = chart_quadratic(Var::D);

    // leading coefficient a*b is invertible in the base ring, so the first
    // division stays inside it
    let (chain_q1, chain_r1) = chain_a.divrem_unit(&chain_b)?;
    if chain_r1.degree() != Some(1) {
        return Err(Error::FactorizationMismatch(
            "first remainder should be linear in v".into(),
        ));
    }
    // the second division happens over the fraction field; K(d) is not a
    // unit, and the denominators it introduces are cleared again in g
    let (chain_q2, chain_r2) = chain_b.divrem_field(&chain_r1)?;
    if chain_r2.degree() != Some(0) {
        return Err(Error::FactorizationMismatch(
            "second remainder should be constant in v".into(),
        ));
    }

    let u = MultiPoly::var(Var::U);
    let k_poly = chain_r1.coeff(1).substitute(Var::D, &u)?;
    let l_poly = chain_r1.coeff(0).substitute(Var::D, &u)?;

    let f_u = UniPoly::from_poly(&f, Var::U)?;
    let k_u = UniPoly::from_ratpoly(&k_poly, Var::U)?;
    let (common, m_u, n_u) = f_u.gcd_bezout(&k_u)?;
    if common.degree() != Some(0) {
        return Err(Error::FactorizationMismatch(
            "torsion polynomial shares a factor with K".into(),
        ));
    }
    let m_poly = m_u.to_ratpoly();
    let n_poly = n_u.to_ratpoly();

    let l_u = UniPoly::from_ratpoly(&l_poly, Var::U)?;
    let g_u = n_u.mul(&l_u).neg().rem_by(&f_u)?;
    let g = g_u.to_ratpoly();

    // the point (d, g(d)) must satisfy both defining equations modulo f
    let on_chart = chart_quadratic(Var::U).eval(&g);
    let killed = UniPoly::from_ratpoly(&psi_at(&division_uv, &g)?, Var::U)?.rem_by(&f_u)?;
    let chart_rem = UniPoly::from_ratpoly(&on_chart, Var::U)?.rem_by(&f_u)?;
    if !killed.is_zero() || !chart_rem.is_zero() {
        return Err(Error::ResidueNonzero(
            "candidate torsion point misses the curve or the division polynomial".into(),
        ));
    }

    Ok(TorsionData {
        division_uv,
        f,
        g,
        k_poly,
        l_poly,
        m_poly,
        n_poly,
        chain_q1,
        chain_r1,
        chain_q2,
        chain_r2,
    })
}

fn psi_at(division_uv: &MultiPoly, v_value: &RatPoly) -> Result<RatPoly> {
    let mut out = RatPoly::zero();
    for k in 0..=4i16 {
        let c = RatPoly::from(division_uv.coeff_of(Var::V, k));
        out = out.add(&c.mul(&v_value.pow(k as i32)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ideal::{eisenstein_at_3h, h_poly};
    use crate::scalar::denominator_exponents;
    use crate::textio::{parse_poly, parse_ratpoly};

    fn data() -> &'static TorsionData {
        torsion_data().unwrap()
    }

    #[test]
    fn division_polynomial_on_chart() {
        let expect = parse_poly(
            "3*u^4 + (a^2 + 4*b)*u^3*v + 3*a^2*b*u^2*v^2 + 3*a^2*b^2*u*v^3 + a^2*b^3*v^4",
        )
        .unwrap();
        assert_eq!(division_poly_uv(), expect);
    }

    #[test]
    fn torsion_polynomial_closed_form() {
        let expect = parse_poly(
            "b^4*u^8 + 3*a*b^3*u^7 + 3*a^2*b^2*u^6 + (a^3*b + 7*a*b^2)*u^5 \
             + (6*a^2*b - 6*b^2)*u^4 + 9*a*b*u^3 + (-a^2 + 8*b)*u^2 - 3*a*u - 3",
        )
        .unwrap();
        assert_eq!(torsion_poly().unwrap(), expect);
    }

    #[test]
    fn torsion_polynomial_is_eisenstein() {
        let f = torsion_poly().unwrap();
        assert!(eisenstein_at_3h(&f, Var::U).unwrap());
        assert_eq!(f.coeff_of(Var::U, 8), parse_poly("b^4").unwrap());
        assert_eq!(f.coeff_of(Var::U, 0), parse_poly("-3").unwrap());
    }

    #[test]
    fn torsion_polynomial_mod_three_factors() {
        let f = torsion_poly().unwrap();
        let h = h_poly();
        let inner = parse_poly("b^4*u^6").unwrap()
            .add(&parse_poly("a*b*u^3").unwrap().mul(&h))
            .sub(&h);
        let expect = parse_poly("u^2").unwrap().mul(&inner).reduce_mod3().unwrap();
        assert_eq!(f.reduce_mod3().unwrap(), expect);
    }

    #[test]
    fn v_coordinate_closed_form() {
        let g = data().g.clone();
        let expect = parse_ratpoly(
            "-(a*b^3*u^7 + (3*a^2*b^2 - 2*b^3)*u^6 + (3*a^3*b - 6*a*b^2)*u^5 \
             + (a^4 + a^2*b + 2*b^2)*u^4 + (4*a^3 - 15*a*b)*u^3 + 18*b*u^2 \
             - 12*a*u - 18) / (a*(a^2 - 16*b))",
        )
        .unwrap();
        assert_eq!(g, expect);
        let tags = denominator_exponents(&g).unwrap();
        assert_eq!((tags.two, tags.a, tags.b, tags.disc), (0, 1, 0, 1));
    }

    #[test]
    fn first_remainder_closed_form() {
        let d = data();
        let k_expect = parse_ratpoly(
            "b^3*u^6/a + 2*b^2*u^5 + (a*b - 3*b^2/a)*u^4 + 2*b*u^3 + 3*b*u^2/a - 1/a",
        )
        .unwrap();
        let l_expect =
            parse_ratpoly("b^2*u^7/a + 2*b*u^6 + (a - 2*b/a)*u^5 + 2*u^4 + u^3/a").unwrap();
        assert_eq!(d.k_poly, k_expect);
        assert_eq!(d.l_poly, l_expect);
    }

    #[test]
    fn bezout_identity_holds() {
        let d = data();
        let f = RatPoly::from(d.f.clone());
        let combo = d.m_poly.mul(&f).add(&d.n_poly.mul(&d.k_poly));
        assert!(combo.is_one());
    }

    #[test]
    fn final_remainder_carries_torsion_polynomial() {
        let d = data();
        let r2 = d.chain_r2.coeff(0);
        let a = RatPoly::var(Var::A);
        let dd = RatPoly::var(Var::D);
        let f_d = RatPoly::from(d.f.substitute(Var::U, &MultiPoly::var(Var::D)).unwrap());
        let ak = a.mul(&d.k_poly.substitute(Var::U, &MultiPoly::var(Var::D)).unwrap());
        let expect = a
            .mul(&dd.pow(4).unwrap())
            .mul(&f_d)
            .div(&ak.mul(&ak))
            .unwrap()
            .neg();
        assert_eq!(r2, expect);
    }

    #[test]
    fn chain_reassembles() {
        let d = data();
        let div_at_d = division_poly_uv()
            .substitute(Var::U, &MultiPoly::var(Var::D))
            .unwrap();
        let chain_a = UniPoly::from_poly(&div_at_d, Var::V).unwrap();
        let chain_b = chart_quadratic(Var::D);
        assert_eq!(
            chain_a,
            d.chain_q1.mul(&chain_b).add(&d.chain_r1)
        );
        assert_eq!(
            chain_b,
            d.chain_q2.mul(&d.chain_r1).add(&d.chain_r2)
        );
    }

    #[test]
    fn resultant_carries_chart_factor() {
        // before clearing denominators, the elimination of v leaves the
        // torsion polynomial times -u^4 / (a^2 b)
        let f = RatPoly::from(torsion_poly().unwrap());
        let resultant = parse_ratpoly(
            "-u^4/(a^2*b) * (b^4*u^8 + 3*a*b^3*u^7 + 3*a^2*b^2*u^6 \
             + (a^3*b + 7*a*b^2)*u^5 + (6*a^2*b - 6*b^2)*u^4 + 9*a*b*u^3 \
             + (-a^2 + 8*b)*u^2 - 3*a*u - 3)",
        )
        .unwrap();
        let u4 = RatPoly::var(Var::U).pow(4).unwrap();
        let scale = parse_ratpoly("-1/(a^2*b)").unwrap();
        assert_eq!(f.mul(&u4).mul(&scale), resultant);
    }

    #[test]
    fn bezout_cofactors_closed_form() {
        let d = data();
        let m_expect = parse_ratpoly(
            "b/(a^2*(a^2 - 16*b)^2) * ((10*a^3*b^3 - 112*a*b^4)*u^5 \
             + (19*a^4*b^2 - 217*a^2*b^3 - 16*b^4)*u^4 \
             + (8*a^5*b - 126*a^3*b^2 + 304*a*b^3)*u^3 \
             + (-a^6 + 34*a^4*b - 266*a^2*b^2 + 32*b^3)*u^2 \
             + (28*a^3*b - 384*a*b^2)*u - 4*a^4 + 51*a^2*b - 16*b^2)",
        )
        .unwrap();
        let n_expect = parse_ratpoly(
            "-1/(a*(a^2 - 16*b)^2) * ((10*a^3*b^5 - 112*a*b^6)*u^7 \
             + (29*a^4*b^4 - 329*a^2*b^5 - 16*b^6)*u^6 \
             + (27*a^5*b^3 - 313*a^3*b^4 - 48*a*b^5)*u^5 \
             + (7*a^6*b^2 - 15*a^4*b^3 - 837*a^2*b^4 - 16*b^5)*u^4 \
             + (-a^7*b + 66*a^5*b^2 - 714*a^3*b^3 + 528*a*b^4)*u^3 \
             + (-4*a^6*b + 137*a^4*b^2 - 1147*a^2*b^3 + 80*b^4)*u^2 \
             + (-12*a^5*b + 237*a^3*b^2 - 1200*a*b^3)*u \
             + a^6 - 44*a^4*b + 409*a^2*b^2 - 48*b^3)",
        )
        .unwrap();
        assert_eq!(d.m_poly, m_expect);
        assert_eq!(d.n_poly, n_expect);
    }

    #[test]
    fn quotients_closed_form() {
        let d = data();
        let q1_expect = parse_ratpoly(
            "a*b^2*v^2 + (b^2*d^2 + 2*a*b*d - b)*v + b^2*d^4/a + 2*b*d^3 \
             + a*d^2 - 2*b*d^2/a - d + 1/a",
        )
        .unwrap();
        let q2_expect = parse_ratpoly(
            "a/(b^3*d^6 + 2*a*b^2*d^5 + a^2*b*d^4 - 3*b^2*d^4 + 2*a*b*d^3 \
             + 3*b*d^2 - 1)^2 * ((a*b^4*d^6 + 2*a^2*b^3*d^5 + a^3*b^2*d^4 \
             - 3*a*b^3*d^4 + 2*a^2*b^2*d^3 + 3*a*b^2*d^2 - a*b)*v \
             - b^4*d^8 - 2*a*b^3*d^7 - a^2*b^2*d^6 + 4*b^3*d^6 - a*b^2*d^5 \
             + a^2*b*d^4 - 6*b^2*d^4 + 4*a*b*d^3 + 4*b*d^2 - a*d - 1)",
        )
        .unwrap();
        assert_eq!(d.chain_q1.to_ratpoly(), q1_expect);
        assert_eq!(d.chain_q2.to_ratpoly(), q2_expect);
    }
}
