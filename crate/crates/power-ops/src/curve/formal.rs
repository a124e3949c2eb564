//! The formal group of the family in the parameter u = x/y: the branch
//! of the curve at the identity, the negation series, the two-variable
//! addition law, and the multiplication-by-n series built from it.

use crate::error::{Error, Result};
use crate::poly::ratfunc::RatPoly;
use crate::poly::{MultiPoly, Var};
use crate::series::{solve_fixed_point, TruncSeries};

/// Expands v as a series in u along the branch of
/// `v + a*u*v + a*b*v^2 = u^3 + b*u^2*v` at the origin.
pub fn v_series(order: i64) -> Result<TruncSeries<RatPoly>> {
    let a = RatPoly::var(Var::A);
    let b = RatPoly::var(Var::B);
    let u = TruncSeries::identity(Var::U, RatPoly::one(), order);
    let u2 = u.mul(&u);
    let u3 = u2.mul(&u);
    let initial = TruncSeries::zero(Var::U, RatPoly::one(), order);
    solve_fixed_point(
        initial,
        |v| {
            let uv = u.mul(v);
            Ok(u3
                .add(&u2.mul(v).scale(&b))
                .sub(&uv.scale(&a))
                .sub(&v.mul(v).scale(&a.mul(&b))))
        },
        (order + 2) as u32,
    )
}

/// Series of u(-P) in u(P); starts -u + a*u^2.
pub fn negation_series(order: i64) -> Result<TruncSeries<RatPoly>> {
    let v = v_series(order + 2)?;
    let u = TruncSeries::identity(Var::U, RatPoly::one(), order + 2);
    let b = RatPoly::var(Var::B);
    let den = u.mul(&u.add(&v.scale(&b)));
    Ok(v.neg().div(&den)?.truncated(order))
}

fn u_degree(m: &crate::poly::Monomial) -> i64 {
    [Var::U, Var::U1, Var::U2, Var::U3]
        .iter()
        .map(|&v| m.exp(v) as i64)
        .sum()
}

/// Truncation by degree in the u-variables only; a and b are part of the
/// coefficients and never count toward the order.
fn truncate_total(p: &MultiPoly, order: i16) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        if u_degree(m) < order as i64 {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

fn one_var_series(s: &TruncSeries<RatPoly>, var: Var, order: i16) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for k in 0..(order as i64).min(s.order()) {
        let c = s.coeff(k)?;
        let p = c
            .as_poly()
            .ok_or_else(|| Error::NonInvertibleDenominator("series coefficient".into()))?;
        out = out.add(&p.mul(&MultiPoly::var_pow(var, k as i16)));
    }
    Ok(out)
}

/// Coordinates of -(P1 + P2) from the chord through P1 and P2, as
/// polynomials in u1, u2 modulo total degree `order`. The slope and
/// intercept of the chord are `k = (v1 - v2)/(u1 - u2)` and
/// `m = (u1*v2 - u2*v1)/(u1 - u2)`, and the third intersection is at
/// `u3 = a*k - b*m/(1 + b*k) - u1 - u2`, `v3 = k*u3 + m`.
fn chord_neg_coords(order: i16) -> Result<(MultiPoly, MultiPoly)> {
    let v = v_series(order as i64 + 2)?;
    let u1 = MultiPoly::var(Var::U1);
    let u2 = MultiPoly::var(Var::U2);
    let v1 = one_var_series(&v, Var::U1, order + 2)?;
    let v2 = one_var_series(&v, Var::U2, order + 2)?;

    let du = u1.sub(&u2);
    let k = v1
        .sub(&v2)
        .exact_div(&du)
        .ok_or_else(|| Error::FactorizationMismatch("chord slope is not polynomial".into()))?;
    let m = u1
        .mul(&v2)
        .sub(&u2.mul(&v1))
        .exact_div(&du)
        .ok_or_else(|| Error::FactorizationMismatch("chord intercept is not polynomial".into()))?;

    let a = MultiPoly::var(Var::A);
    let b = MultiPoly::var(Var::B);
    // k vanishes to order 2 at the origin, so 1/(1 + b*k) expands
    // geometrically
    let bk = truncate_total(&b.mul(&k), order);
    let mut inv = MultiPoly::one();
    let mut pow = MultiPoly::one();
    while !pow.is_zero() {
        pow = truncate_total(&pow.mul(&bk).neg(), order);
        inv = inv.add(&pow);
    }

    let u3 = a
        .mul(&truncate_total(&k, order))
        .sub(&truncate_total(&b.mul(&m).mul(&inv), order))
        .sub(&u1)
        .sub(&u2);
    let u3 = truncate_total(&u3, order);
    let v3 = truncate_total(&k.mul(&u3).add(&m), order);
    Ok((u3, v3))
}

/// The addition law F(u1, u2) of the formal group, a polynomial in
/// u1, u2 over Z[a, b] modulo total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditionLaw {
    poly: MultiPoly,
    order: i16,
}

impl AdditionLaw {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn order(&self) -> i16 {
        self.order
    }

    /// Coefficient of u1^j * u2^k, a polynomial in a and b.
    pub fn coeff(&self, j: i16, k: i16) -> MultiPoly {
        self.poly.coeff_of(Var::U1, j).coeff_of(Var::U2, k)
    }

    /// Evaluates the law on two polynomial arguments, truncating by total
    /// degree. The arguments must vanish at the origin.
    pub fn apply_poly(&self, x: &MultiPoly, y: &MultiPoly, order: i16) -> MultiPoly {
        let order = order.min(self.order);
        let mut x_pows = vec![MultiPoly::one()];
        let mut y_pows = vec![MultiPoly::one()];
        for j in 1..=self.order as usize {
            let xp = truncate_total(&x_pows[j - 1].mul(x), order);
            x_pows.push(xp);
            let yp = truncate_total(&y_pows[j - 1].mul(y), order);
            y_pows.push(yp);
        }
        let mut acc = MultiPoly::zero();
        for (mono, c) in self.poly.terms() {
            let j = mono.exp(Var::U1) as usize;
            let k = mono.exp(Var::U2) as usize;
            let mut scalar = MultiPoly::zero();
            scalar.add_term(
                mono.clone().with_exp(Var::U1, 0).with_exp(Var::U2, 0),
                c.clone(),
            );
            let term = scalar.mul(&x_pows[j]).mul(&y_pows[k]);
            acc = acc.add(&truncate_total(&term, order));
        }
        acc
    }

    /// Evaluates the law on two series in the same variable.
    pub fn apply(
        &self,
        x: &TruncSeries<RatPoly>,
        y: &TruncSeries<RatPoly>,
    ) -> Result<TruncSeries<RatPoly>> {
        let order = x.order().min(y.order()).min(self.order as i64);
        let mut acc = TruncSeries::zero(Var::U, RatPoly::one(), order);
        for (mono, c) in self.poly.terms() {
            let j = mono.exp(Var::U1);
            let k = mono.exp(Var::U2);
            let mut scalar = MultiPoly::zero();
            scalar.add_term(
                mono.clone().with_exp(Var::U1, 0).with_exp(Var::U2, 0),
                c.clone(),
            );
            let term = TruncSeries::constant(
                Var::U,
                RatPoly::from(scalar),
                RatPoly::one(),
                order,
            )
            .mul(&x.pow(j as u32))
            .mul(&y.pow(k as u32));
            acc = acc.add(&term);
        }
        Ok(acc.truncated(order))
    }
}

/// Builds the addition law by composing the chord construction with the
/// negation series.
pub fn addition_law(order: i16) -> Result<AdditionLaw> {
    let (u3, _) = chord_neg_coords(order)?;
    let iota = negation_series(order as i64)?;
    let mut sum = MultiPoly::zero();
    let mut u3_pow = MultiPoly::one();
    for j in 0..order as i64 {
        if j > 0 {
            u3_pow = truncate_total(&u3_pow.mul(&u3), order);
        }
        if j >= 1 {
            let c = iota.coeff(j)?;
            let cp = c
                .as_poly()
                .ok_or_else(|| Error::NonInvertibleDenominator("negation coefficient".into()))?;
            sum = sum.add(&truncate_total(&cp.mul(&u3_pow), order));
        }
    }
    Ok(AdditionLaw {
        poly: truncate_total(&sum, order),
        order,
    })
}

/// Multiplication by n in the formal group, as a series in u.
pub fn multiplication_series(n: i64, order: i16) -> Result<TruncSeries<RatPoly>> {
    if n == 0 {
        return Ok(TruncSeries::zero(Var::U, RatPoly::one(), order as i64));
    }
    let law = addition_law(order)?;
    let u = TruncSeries::identity(Var::U, RatPoly::one(), order as i64);
    let mut acc = u.clone();
    for _ in 1..n.abs() {
        acc = law.apply(&acc, &u)?;
    }
    if n < 0 {
        let iota = negation_series(order as i64)?;
        acc = iota.compose(&acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::series_text;
    use crate::textio::parse_poly;

    #[test]
    fn branch_series_prefix() {
        let v = v_series(13).unwrap();
        let text = series_text(&v);
        assert_eq!(
            text,
            "u^3 - a*u^4 + (a^2 + b)*u^5 + (-a^3 - 3*a*b)*u^6 + (a^4 + 6*a^2*b + b^2)*u^7 \
             + (-a^5 - 10*a^3*b - 6*a*b^2)*u^8 + (a^6 + 15*a^4*b + 20*a^2*b^2 + b^3)*u^9 \
             + (-a^7 - 21*a^5*b - 50*a^3*b^2 - 10*a*b^3)*u^10 \
             + (a^8 + 28*a^6*b + 105*a^4*b^2 + 50*a^2*b^3 + b^4)*u^11 \
             + (-a^9 - 36*a^7*b - 196*a^5*b^2 - 175*a^3*b^3 - 15*a*b^4)*u^12"
        );
    }

    #[test]
    fn branch_satisfies_chart_equation() {
        let order = 12;
        let v = v_series(order).unwrap();
        let u = TruncSeries::identity(Var::U, RatPoly::one(), order);
        let a = RatPoly::var(Var::A);
        let b = RatPoly::var(Var::B);
        let lhs = v
            .add(&u.mul(&v).scale(&a))
            .add(&v.mul(&v).scale(&a.mul(&b)));
        let rhs = u.mul(&u).mul(&u).add(&u.mul(&u).mul(&v).scale(&b));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn negation_is_an_involution() {
        let iota = negation_series(9).unwrap();
        assert_eq!(iota.coeff(1).unwrap(), RatPoly::int(-1));
        assert_eq!(iota.coeff(2).unwrap(), RatPoly::var(Var::A));
        let twice = iota.compose(&iota).unwrap();
        let u = TruncSeries::identity(Var::U, RatPoly::one(), twice.order());
        assert!(twice.sub(&u).is_zero());
    }

    #[test]
    fn chord_image_stays_on_curve() {
        let order = 8;
        let (u3, v3) = chord_neg_coords(order).unwrap();
        let a = MultiPoly::var(Var::A);
        let b = MultiPoly::var(Var::B);
        let residual = v3
            .add(&a.mul(&u3).mul(&v3))
            .add(&a.mul(&b).mul(&v3).mul(&v3))
            .sub(&u3.mul(&u3).mul(&u3))
            .sub(&b.mul(&u3).mul(&u3).mul(&v3));
        assert!(truncate_total(&residual, order).is_zero());
    }

    #[test]
    fn addition_law_shape() {
        let law = addition_law(6).unwrap();
        assert_eq!(law.coeff(1, 0), MultiPoly::one());
        assert_eq!(law.coeff(0, 1), MultiPoly::one());
        assert_eq!(law.coeff(0, 2), MultiPoly::zero());
        assert_eq!(law.coeff(2, 0), MultiPoly::zero());
        assert_eq!(law.coeff(1, 1), parse_poly("a").unwrap());
        for j in 0..6 {
            for k in 0..j {
                assert_eq!(law.coeff(j, k), law.coeff(k, j));
            }
        }
    }

    #[test]
    fn law_is_associative() {
        let order = 6;
        let law = addition_law(order).unwrap();
        // F(u2, u3) by renaming the variables of F in a collision-free
        // order
        let f23 = law
            .poly()
            .substitute(Var::U2, &MultiPoly::var(Var::U3))
            .unwrap()
            .substitute(Var::U1, &MultiPoly::var(Var::U2))
            .unwrap();
        let left = law.apply_poly(law.poly(), &MultiPoly::var(Var::U3), order);
        let right = law.apply_poly(&MultiPoly::var(Var::U1), &f23, order);
        assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels_in_the_law() {
        let order = 8;
        let law = addition_law(order as i16).unwrap();
        let u = TruncSeries::identity(Var::U, RatPoly::one(), order);
        let iota = negation_series(order).unwrap();
        let cancel = law.apply(&u, &iota).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn doubling_cancels_against_its_negative() {
        let two = multiplication_series(2, 8).unwrap();
        assert_eq!(two.coeff(1).unwrap(), RatPoly::int(2));
        assert_eq!(two.coeff(2).unwrap(), RatPoly::var(Var::A));
        let minus_two = multiplication_series(-2, 8).unwrap();
        let law = addition_law(8).unwrap();
        let cancel = law.apply(&two, &minus_two).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn triplication_has_height_two_on_the_supersingular_locus() {
        let tri = multiplication_series(3, 11).unwrap();
        assert_eq!(tri.coeff(1).unwrap(), RatPoly::int(3));
        let minus_a2 = parse_poly("-a^2").unwrap();
        for k in 0..9 {
            let c = tri.coeff(k).unwrap();
            let p = c.as_poly().unwrap();
            let restricted = p.substitute(Var::B, &minus_a2).unwrap();
            assert!(
                restricted.reduce_mod3().unwrap().is_zero(),
                "coefficient of u^{} should vanish",
                k
            );
        }
        let top = tri
            .coeff(9)
            .unwrap()
            .as_poly()
            .unwrap()
            .substitute(Var::B, &minus_a2)
            .unwrap()
            .reduce_mod3()
            .unwrap();
        assert!(!top.is_zero());
    }
}

