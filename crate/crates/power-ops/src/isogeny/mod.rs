//! The degree-3 quotient of the universal curve.
//!
//! The kernel is generated by the order-3 point Q = (d, e). Near the
//! identity the quotient map multiplies the u-coordinates of P, P - Q
//! and P + Q, and likewise the v-coordinates; both products are
//! computed here as truncated series with coefficients in the torsion
//! field. The linear coefficient kappa of the u-image satisfies a
//! monic quartic over the base, and the image curve has the same shape
//! of equation, with coefficients recovered by an exact linear fit.

pub mod torsion_field;

use std::sync::{Mutex, OnceLock};

use crate::curve::formal;
use crate::curve::torsion::torsion_data;
use crate::error::{Error, Result};
use crate::poly::linsolve::solve_exact;
use crate::poly::ratfunc::RatPoly;
use crate::poly::unipoly::UniPoly;
use crate::poly::{MultiPoly, Var};
use crate::series::{Coeff, TruncSeries};
use crate::poly::algext::ExtElem;
use torsion_field::torsion_context;

type ExtSeries = TruncSeries<ExtElem>;

/// Smallest truncation order that still determines the image curve.
pub const MIN_ORDER: i64 = 10;

/// Everything the quotient construction produces at a fixed order.
pub struct IsogenyData {
    pub order: i64,
    /// Image of u, vanishing to first order.
    pub u_image: ExtSeries,
    /// Image of v, vanishing to third order.
    pub v_image: ExtSeries,
    /// The v-image rescaled by kappa^3 / lambda, so that the image
    /// point satisfies the chart equation of the target curve.
    pub v_image_scaled: ExtSeries,
    /// Linear coefficient of the u-image.
    pub kappa: ExtElem,
    /// Cubic coefficient of the v-image.
    pub lambda: ExtElem,
    /// Constant term of u(P - Q) u(P + Q), equal to kappa.
    pub neighbor_norm: ExtElem,
    /// Coefficients q0..q3 of the monic quartic
    /// `t^4 + q3 t^3 + q2 t^2 + q1 t + q0` satisfied by kappa.
    pub quartic: [RatPoly; 4],
    /// Coefficients of the target curve chart
    /// `v + a' u v + a' b' v^2 = u^3 + b' u^2 v`.
    pub target_a: ExtElem,
    pub target_b: ExtElem,
    /// The coefficient a' written in powers of kappa.
    pub target_a_coeffs: [RatPoly; 4],
}

impl IsogenyData {
    /// The quartic assembled as a fraction in the kappa variable.
    pub fn quartic_in_kappa(&self) -> RatPoly {
        let t = RatPoly::var(Var::Kappa);
        let mut out = t.pow(4).expect("nonnegative power");
        for (i, c) in self.quartic.iter().enumerate() {
            out = out.add(&c.mul(&t.pow(i as i32).expect("nonnegative power")));
        }
        out
    }

    /// The coefficient a' assembled as a fraction in the kappa variable.
    pub fn target_a_in_kappa(&self) -> RatPoly {
        let t = RatPoly::var(Var::Kappa);
        let mut out = RatPoly::zero();
        for (i, c) in self.target_a_coeffs.iter().enumerate() {
            out = out.add(&c.mul(&t.pow(i as i32).expect("nonnegative power")));
        }
        out
    }
}

/// Evaluate a fraction in the kappa variable at an element of the
/// torsion field. The denominator must be free of kappa.
pub fn eval_in_kappa(r: &RatPoly, kappa: &ExtElem) -> Result<ExtElem> {
    let up = UniPoly::from_ratpoly(r, Var::Kappa)?;
    let mut acc = kappa.zero_like();
    for c in up.coeffs().iter().rev() {
        acc = acc.mul(kappa).add(&ExtElem::scalar(c, kappa.ctx()));
    }
    Ok(acc)
}

/// Cached quotient data at the default order.
pub fn isogeny_data() -> Result<&'static IsogenyData> {
    static CACHE: OnceLock<IsogenyData> = OnceLock::new();
    static GATE: Mutex<()> = Mutex::new(());
    if let Some(d) = CACHE.get() {
        return Ok(d);
    }
    // serialize the expensive derivation across test threads
    let _g = GATE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(d) = CACHE.get() {
        return Ok(d);
    }
    let d = derive_isogeny(MIN_ORDER)?;
    Ok(CACHE.get_or_init(|| d))
}

/// Runs the whole construction at the requested truncation order.
pub fn derive_isogeny(order: i64) -> Result<IsogenyData> {
    if order < MIN_ORDER {
        return Err(Error::TruncationInsufficient {
            needed: MIN_ORDER as u32,
            available: order as u32,
        });
    }
    // dividing by the coordinates of -P costs one order of precision;
    // any further shortfall surfaces as a hard error from coeff()
    let n = order + 1;
    let ctx = torsion_context()?;
    let one = ExtElem::scalar(&RatPoly::one(), ctx.clone());
    let a_c = ExtElem::scalar(&RatPoly::var(Var::A), ctx.clone());
    let b_c = ExtElem::scalar(&RatPoly::var(Var::B), ctx.clone());
    let d_c = ExtElem::generator(ctx.clone());
    let g_d = torsion_data()?
        .g
        .substitute(Var::U, &MultiPoly::var(Var::D))?;
    let e_c = ExtElem::from_ratpoly(&g_d, ctx.clone())?;
    // coordinates of -Q via the same negation formula, as constants
    let tilt = d_c.add(&b_c.mul(&e_c));
    let d_bar = e_c.neg().mul(&d_c.mul(&tilt).inv()?);
    let e_bar = d_bar.mul(&d_bar).mul(&tilt).neg();

    let u_s = TruncSeries::identity(Var::U, one.clone(), n);
    let v_s = formal::v_series(n)?
        .map_coeffs(one.clone(), |c| ExtElem::from_ratpoly(c, ctx.clone()))?;

    // the chord through -P and Q meets the curve in P - Q itself, and
    // the one through -P and -Q in P + Q
    let (nu, nv) = negate(&u_s, &v_s, &b_c)?;
    let (mu, mv) = third_point(&nu, &nv, &a_c, &b_c, &d_c, &e_c, &one)?;
    let (pu, pv) = third_point(&nu, &nv, &a_c, &b_c, &d_bar, &e_bar, &one)?;

    let u_image = u_s.mul(&mu).mul(&pu);
    let v_image = v_s.mul(&mv).mul(&pv);
    for (j, c) in [(0, u_image.coeff(0)?), (0, v_image.coeff(0)?),
                   (1, v_image.coeff(1)?), (2, v_image.coeff(2)?)]
    {
        if !c.is_zero() {
            return Err(Error::MismatchAtOrder {
                order: j as u32,
                detail: "image series has terms below its expected valuation".into(),
            });
        }
    }
    let kappa = u_image.coeff(1)?;
    let lambda = v_image.coeff(3)?;
    let neighbor_norm = mu.coeff(0)?.mul(&pu.coeff(0)?);

    // kappa^4 + q3 kappa^3 + ... + q0 = 0 with coefficients over the base
    let k2 = kappa.mul(&kappa);
    let k3 = k2.mul(&kappa);
    let quartic: [RatPoly; 4] = in_power_basis(&k3.mul(&kappa).neg(), &kappa, 4)?
        .try_into()
        .expect("one coefficient per basis power");
    // the quartic also hands us the inverse of kappa in closed form
    let kappa_inv = k3
        .add(&ExtElem::scalar(&quartic[3], ctx.clone()).mul(&k2))
        .add(&ExtElem::scalar(&quartic[2], ctx.clone()).mul(&kappa))
        .add(&ExtElem::scalar(&quartic[1], ctx.clone()))
        .mul(&ExtElem::scalar(&quartic[0].neg().inv()?, ctx.clone()));
    if !kappa.mul(&kappa_inv).sub(&one).is_zero() {
        return Err(Error::FitFailed(
            "closed-form inverse of the tangent coefficient failed".into(),
        ));
    }

    let scale = k3.mul(&lambda.inv()?);
    let v_scaled = v_image.scale(&scale);

    // the scaled image satisfies v + X uv + Z v^2 = u^3 + Y u^2 v; the
    // u^4, u^5, u^6 coefficients determine X, Y, Z one after another
    // since uv, u^2 v and v^2 open with known powers of kappa
    let u_t = u_image.truncated(order);
    let v_t = v_scaled.truncated(order);
    let uv = u_t.mul(&v_t);
    let uuv = u_t.mul(&uv);
    let vv = v_t.mul(&v_t);
    let uuu = u_t.pow(3);
    let pow_inv = |k: u32| -> ExtElem {
        let mut acc = one.clone();
        for _ in 0..k {
            acc = acc.mul(&kappa_inv);
        }
        acc
    };
    let target_a = uuu
        .coeff(4)?
        .sub(&v_t.coeff(4)?)
        .mul(&pow_inv(4));
    let target_b = v_t
        .coeff(5)?
        .add(&target_a.mul(&uv.coeff(5)?))
        .sub(&uuu.coeff(5)?)
        .mul(&pow_inv(5));
    let cross = uuu
        .coeff(6)?
        .add(&target_b.mul(&uuv.coeff(6)?))
        .sub(&v_t.coeff(6)?)
        .sub(&target_a.mul(&uv.coeff(6)?))
        .mul(&pow_inv(6));
    if cross != target_a.mul(&target_b) {
        return Err(Error::FitFailed(
            "image curve coefficients do not factor as a' times b'".into(),
        ));
    }
    // every remaining coefficient of the chart relation must close
    let residual = v_t
        .add(&uv.scale(&target_a))
        .add(&vv.scale(&cross))
        .sub(&uuu)
        .sub(&uuv.scale(&target_b));
    for j in 4..order {
        if !residual.coeff(j)?.is_zero() {
            return Err(Error::MismatchAtOrder {
                order: j as u32,
                detail: "image series does not satisfy the target chart equation".into(),
            });
        }
    }
    let target_a_coeffs: [RatPoly; 4] = in_power_basis(&target_a, &kappa, 4)?
        .try_into()
        .expect("one coefficient per basis power");

    Ok(IsogenyData {
        order,
        u_image: u_image.truncated(order),
        v_image: v_image.truncated(order),
        v_image_scaled: v_scaled.truncated(order),
        kappa,
        lambda,
        neighbor_norm,
        quartic,
        target_a,
        target_b,
        target_a_coeffs,
    })
}

/// Coordinates of -P in the same chart.
fn negate(u: &ExtSeries, v: &ExtSeries, b: &ExtElem) -> Result<(ExtSeries, ExtSeries)> {
    let w = u.add(&v.scale(b));
    let nu = v.div(&u.mul(&w))?.neg();
    let nv = nu.mul(&nu).mul(&w).neg();
    Ok((nu, nv))
}

/// Third point of the curve on the chord through (u1, v1) and the
/// torsion point (d, e); this is minus the sum of the two.
fn third_point(
    u1: &ExtSeries,
    v1: &ExtSeries,
    a: &ExtElem,
    b: &ExtElem,
    d: &ExtElem,
    e: &ExtElem,
    one: &ExtElem,
) -> Result<(ExtSeries, ExtSeries)> {
    let var = u1.var();
    let n = u1.order().min(v1.order());
    let d_s = TruncSeries::constant(var, d.clone(), one.clone(), n);
    let e_s = TruncSeries::constant(var, e.clone(), one.clone(), n);
    let unit = TruncSeries::constant(var, one.clone(), one.clone(), n);
    // both chord coefficients share the inverse of u1 - d
    let du_inv = u1.sub(&d_s).invert()?;
    let k = v1.sub(&e_s).mul(&du_inv);
    let m = u1.scale(e).sub(&v1.scale(d)).mul(&du_inv);
    let u3 = k
        .scale(a)
        .sub(&m.scale(b).mul(&unit.add(&k.scale(b)).invert()?))
        .sub(u1)
        .sub(&d_s);
    let v3 = k.mul(&u3).add(&m);
    Ok((u3, v3))
}

/// Writes x in the basis 1, base, ..., base^(deg-1) over the fraction
/// field of the base ring, solving the overdetermined system on the
/// d-power coordinates.
fn in_power_basis(x: &ExtElem, base: &ExtElem, deg: usize) -> Result<Vec<RatPoly>> {
    let mut pows = Vec::with_capacity(deg);
    let mut p = base.one_like();
    for _ in 0..deg {
        pows.push(p.clone());
        p = p.mul(base);
    }
    let rows: Vec<Vec<RatPoly>> = (0..8)
        .map(|k| pows.iter().map(|q| q.rep().coeff(k)).collect())
        .collect();
    let rhs: Vec<RatPoly> = (0..8).map(|k| x.rep().coeff(k)).collect();
    solve_exact(&rows, &rhs)
}
