//! The cube power operation on the completed coefficient ring and the
//! relation families satisfied by its four components.
//!
//! Everything here is a specialization of the quotient-curve data: the
//! chart keeps only the degree-0 parameter (a = c, b = 1), the quartic
//! of the tangent coefficient becomes the defining relation w(alpha) of
//! a rank-4 extension, and the image curve coefficient becomes the
//! operation's value on c. The h-form rewrites even powers of c through
//! h = c^2 + 1.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::isogeny::isogeny_data;
use crate::poly::ratfunc::{congruent_mod3, RatPoly};
use crate::poly::unipoly::UniPoly;
use crate::poly::{MultiPoly, Var};

pub struct PowerOpData {
    /// w(alpha) with its degree-1 coefficient written in c.
    pub modulus_c: UniPoly,
    /// w(alpha) with the same coefficient written as h - 9.
    pub modulus_h: UniPoly,
    /// Image of c: the quotient-curve coefficient in the chart.
    pub psi_c: UniPoly,
    /// Image of h, derived as psi(c)^2 + 1.
    pub psi_h: UniPoly,
    /// Image of i: the square root of -1 matching the Frobenius.
    pub psi_i: RatPoly,
    /// Image of alpha: the dual tangent coefficient.
    pub psi_alpha: UniPoly,
    /// comm_h[k][j]: coefficient of Q_j(x) in Q_k(h x).
    pub comm_h: [[RatPoly; 4]; 4],
    /// comm_c[k][j]: coefficient of Q_j(x) in Q_k(c x).
    pub comm_c: [[RatPoly; 4]; 4],
    /// adem[m-1][k][j]: coefficient of Q_j Q_k(x) in Q_m Q_0(x), for
    /// the rewritten composites m = 1, 2, 3. Inner index k runs over
    /// 1..=3; the k = 0 plane stays zero.
    pub adem: [[[RatPoly; 4]; 4]; 3],
    /// alpha_powers[n][m]: alpha-coordinate m of alpha^n mod w. Row n
    /// collects the Cartan coefficients of the products Q_j(x)Q_k(y)
    /// with j + k = n.
    pub alpha_powers: Vec<[RatPoly; 4]>,
}

/// Substitutes the chart a = c, b = 1.
fn chart_c(r: &RatPoly) -> Result<RatPoly> {
    r.substitute(Var::A, &MultiPoly::var(Var::C))?
        .substitute(Var::B, &MultiPoly::term(1, &[]))
}

/// Rewrites a polynomial that is even in c through c^2 = h - 1.
fn c_even_to_h(r: &RatPoly) -> Result<RatPoly> {
    let as_c = UniPoly::from_ratpoly(r, Var::C)?;
    let hm1 = RatPoly::var(Var::H).sub(&RatPoly::one());
    let mut out = RatPoly::zero();
    let mut pow = RatPoly::one();
    for k in 0..=as_c.degree().unwrap_or(0) {
        let c_k = as_c.coeff(k);
        if k % 2 == 1 {
            if !c_k.is_zero() {
                return Err(Error::ReductionMismatch(format!(
                    "odd power c^{k} survives the rewrite to h"
                )));
            }
        } else {
            out = out.add(&c_k.mul(&pow));
            pow = pow.mul(&hm1);
        }
    }
    Ok(out)
}

fn coords4(p: &UniPoly) -> [RatPoly; 4] {
    std::array::from_fn(|k| p.coeff(k))
}

/// The matrix of multiplication by `g` on the basis 1, alpha, alpha^2,
/// alpha^3 of the quotient by `w`. Column j holds g * alpha^j.
fn mult_matrix(g: &UniPoly, w: &UniPoly) -> Result<[[RatPoly; 4]; 4]> {
    let alpha = UniPoly::from_coeffs(w.var(), vec![RatPoly::zero(), RatPoly::one()]);
    let mut cols = Vec::with_capacity(4);
    let mut cur = g.rem_by(w)?;
    for _ in 0..4 {
        cols.push(coords4(&cur));
        cur = cur.mul(&alpha).rem_by(w)?;
    }
    Ok(std::array::from_fn(|k| {
        std::array::from_fn(|j| cols[j][k].clone())
    }))
}

/// Evaluates `p` at `image` inside the quotient by `modulus`. The
/// coefficients of `p` pass through unchanged.
fn eval_in_quotient(p: &UniPoly, image: &UniPoly, modulus: &UniPoly) -> Result<UniPoly> {
    let var = modulus.var();
    let mut acc = UniPoly::zero(var);
    let deg = match p.degree() {
        Some(d) => d,
        None => return Ok(acc),
    };
    for k in (0..=deg).rev() {
        acc = acc.mul(image).rem_by(modulus)?;
        acc = acc.add(&UniPoly::from_coeffs(var, vec![p.coeff(k)]));
    }
    Ok(acc)
}

/// Applies the operation to a polynomial in h and i.
pub fn psi_of_scalar(p: &RatPoly, data: &PowerOpData) -> Result<UniPoly> {
    let i_image = data
        .psi_i
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::ReductionMismatch("image of i is not polynomial".into()))?;
    let twisted = p.substitute(Var::ISym, &i_image)?;
    let as_h = UniPoly::from_ratpoly(&twisted, Var::H)?;
    eval_in_quotient(&as_h, &data.psi_h, &data.modulus_h)
}

/// Applies the operation to a polynomial in c and i.
pub fn psi_of_scalar_c(p: &RatPoly, data: &PowerOpData) -> Result<UniPoly> {
    let i_image = data
        .psi_i
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::ReductionMismatch("image of i is not polynomial".into()))?;
    let twisted = p.substitute(Var::ISym, &i_image)?;
    let as_c = UniPoly::from_ratpoly(&twisted, Var::C)?;
    eval_in_quotient(&as_c, &data.psi_c, &data.modulus_c)
}

/// The four component operations of an image element: Q_k of the
/// preimage is the alpha^k coordinate.
pub fn q_components(e: &UniPoly) -> [RatPoly; 4] {
    coords4(e)
}

pub fn derive_power_ops() -> Result<PowerOpData> {
    let iso = isogeny_data()?;

    let q_c: Vec<RatPoly> = iso.quartic.iter().map(chart_c).collect::<Result<_>>()?;
    let mut w_coeffs = q_c.clone();
    w_coeffs.push(RatPoly::one());
    let modulus_c = UniPoly::from_coeffs(Var::Alpha, w_coeffs);

    let q_h: Vec<RatPoly> = q_c.iter().map(c_even_to_h).collect::<Result<_>>()?;
    let mut wh_coeffs = q_h.clone();
    wh_coeffs.push(RatPoly::one());
    let modulus_h = UniPoly::from_coeffs(Var::Alpha, wh_coeffs);

    // the constant term of w must vanish mod 3 for alpha = 0 to cut out
    // the special fiber's formal branch
    if !congruent_mod3(&modulus_h.coeff(0), &RatPoly::zero())? {
        return Err(Error::ReductionMismatch(
            "constant term of w(alpha) is a unit mod 3".into(),
        ));
    }

    let psi_c = UniPoly::from_coeffs(
        Var::Alpha,
        iso.target_a_coeffs
            .iter()
            .map(chart_c)
            .collect::<Result<_>>()?,
    );

    // psi(h) = psi(c)^2 + 1; the inverse powers of c must cancel and
    // leave an even polynomial
    let sq = psi_c.mul(&psi_c).rem_by(&modulus_c)?;
    let one = UniPoly::from_coeffs(Var::Alpha, vec![RatPoly::one()]);
    let psi_h = UniPoly::from_coeffs(
        Var::Alpha,
        (0..4)
            .map(|k| c_even_to_h(&sq.add(&one).coeff(k)))
            .collect::<Result<Vec<_>>>()?,
    );

    // the square root of -1 congruent to i^3 mod 3
    let i = RatPoly::var(Var::ISym);
    let icube = i.pow(3)?;
    let psi_i = [i.clone(), i.neg()]
        .into_iter()
        .find(|cand| matches!(congruent_mod3(cand, &icube), Ok(true)))
        .ok_or_else(|| {
            Error::ReductionMismatch("no square root of -1 matches the Frobenius mod 3".into())
        })?;

    // dividing w by its root leaves the dual: -(alpha^3 + q3 alpha^2
    // + q2 alpha + q1)
    let psi_alpha = UniPoly::from_coeffs(
        Var::Alpha,
        vec![q_h[1].neg(), q_h[2].neg(), q_h[3].neg(), RatPoly::int(-1)],
    );

    // the image of alpha must satisfy w with psi-applied coefficients
    let mut pa_pows = vec![one.clone()];
    for k in 1..=4 {
        pa_pows.push(pa_pows[k - 1].mul(&psi_alpha).rem_by(&modulus_h)?);
    }
    let mut resid = UniPoly::zero(Var::Alpha);
    for (k, wk) in modulus_h.coeffs().iter().enumerate() {
        let wk_img = eval_in_quotient(
            &UniPoly::from_ratpoly(wk, Var::H)?,
            &psi_h,
            &modulus_h,
        )?;
        resid = resid.add(&wk_img.mul(&pa_pows[k]).rem_by(&modulus_h)?);
    }
    if !resid.is_zero() {
        return Err(Error::ReductionMismatch(
            "image of alpha does not satisfy the twisted quartic".into(),
        ));
    }

    let comm_h = mult_matrix(&psi_h, &modulus_h)?;
    let comm_c = mult_matrix(&psi_c, &modulus_c)?;

    // powers of alpha mod w, enough for products of two cubics
    let alpha = UniPoly::from_coeffs(Var::Alpha, vec![RatPoly::zero(), RatPoly::one()]);
    let mut alpha_powers = Vec::with_capacity(7);
    let mut cur = one.clone();
    for _ in 0..=6 {
        alpha_powers.push(coords4(&cur));
        cur = cur.mul(&alpha).rem_by(&modulus_h)?;
    }

    // the composite operation expands as
    //   sum_{j,k} Q_j Q_k(x) alpha^j psi(alpha)^k
    // and its alpha^1..alpha^3 components vanish; the inner-k = 0 block
    // contributes Q_m Q_0 with unit coefficient, so each relation reads
    // off directly
    let mut adem: [[[RatPoly; 4]; 4]; 3] =
        std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| RatPoly::zero())));
    let mut apow = one.clone();
    for j in 0..4 {
        for (k, pa_k) in pa_pows.iter().enumerate().take(4) {
            let prod = apow.mul(pa_k).rem_by(&modulus_h)?;
            let t = coords4(&prod);
            for m in 1..4 {
                if k == 0 {
                    let expect = if j == m { RatPoly::one() } else { RatPoly::zero() };
                    if t[m] != expect {
                        return Err(Error::UnsolvableSystem(format!(
                            "composite coefficient of the plain alpha^{j} block is not triangular"
                        )));
                    }
                } else {
                    adem[m - 1][k][j] = t[m].neg();
                }
            }
        }
        apow = apow.mul(&alpha).rem_by(&modulus_h)?;
    }

    Ok(PowerOpData {
        modulus_c,
        modulus_h,
        psi_c,
        psi_h,
        psi_i,
        psi_alpha,
        comm_h,
        comm_c,
        adem,
        alpha_powers,
    })
}

pub fn power_op_data() -> Result<&'static PowerOpData> {
    static CACHE: OnceLock<PowerOpData> = OnceLock::new();
    if let Some(d) = CACHE.get() {
        return Ok(d);
    }
    let d = derive_power_ops()?;
    Ok(CACHE.get_or_init(|| d))
}
