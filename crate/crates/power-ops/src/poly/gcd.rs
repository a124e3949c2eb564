//! Multivariate polynomial gcd (primitive pseudo-remainder sequences) and
//! exact division. Both routines tolerate Laurent inputs by shifting
//! exponents to a non-negative window first; monomials are units there.

use std::collections::BTreeMap;

use num::{BigRational, One};

use super::{Monomial, MultiPoly, Var, ALL_VARS};

/// Shift every variable so all exponents are >= 0 and the minimum exponent of
/// each shifted variable is 0. Returns the shifted polynomial.
fn laurent_normalize(p: &MultiPoly) -> MultiPoly {
    let mut shift = Monomial::unit();
    let mut need = false;
    for v in ALL_VARS {
        if let Some((lo, _)) = p.degree_span(v) {
            if lo != 0 && p.contains_var(v) {
                // only shift when some exponent is negative; positive minima
                // are genuine content and get handled by gcd itself
                if lo < 0 {
                    shift = shift.mul(&Monomial::var(v, -lo)).0;
                    need = true;
                }
            }
        }
    }
    if !need {
        return p.clone();
    }
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let (mm, sign) = m.mul(&shift);
        let mut cc = c.clone();
        if sign < 0 {
            cc = -cc;
        }
        out.add_term(mm, cc);
    }
    out
}

fn main_var(p: &MultiPoly, q: &MultiPoly) -> Option<Var> {
    for v in ALL_VARS.iter().rev() {
        if p.contains_var(*v) || q.contains_var(*v) {
            return Some(*v);
        }
    }
    None
}

fn to_uni(p: &MultiPoly, v: Var) -> BTreeMap<i16, MultiPoly> {
    let mut out: BTreeMap<i16, MultiPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exp(v);
        let mut stripped = MultiPoly::zero();
        let mut mm = *m;
        mm = {
            let mut t = Monomial::unit();
            for var in ALL_VARS {
                let ex = if var == v { 0 } else { mm.exp(var) };
                t = t.mul(&Monomial::var(var, ex)).0;
            }
            t
        };
        stripped.add_term(mm, c.clone());
        out.entry(e)
            .and_modify(|acc| *acc = acc.add(&stripped))
            .or_insert(stripped);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn from_uni(coeffs: &BTreeMap<i16, MultiPoly>, v: Var) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (&e, c) in coeffs {
        out = out.add(&c.mul_var_pow(v, e));
    }
    out
}

fn uni_degree(c: &BTreeMap<i16, MultiPoly>) -> Option<i16> {
    c.keys().next_back().copied()
}

/// Exact division of multivariate polynomials. Returns `None` if `p` is not
/// a polynomial multiple of `q`.
pub fn exact_div(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    if q.is_zero() {
        return None;
    }
    if p.is_zero() {
        return Some(MultiPoly::zero());
    }
    if let Some(c) = q.as_constant() {
        return Some(p.scale(&(BigRational::one() / c)));
    }
    // Laurent inputs: divide shifted representatives, then shift back.
    let pn = laurent_normalize(p);
    let qn = laurent_normalize(q);
    let quot_shifted = exact_div_nonneg(&pn, &qn)?;
    // p = P / s_p, q = Q / s_q with shifts s_*; p/q = (P/Q) * s_q/s_p.
    let shift_back = shift_ratio(p, q);
    Some(apply_shift(&quot_shifted, &shift_back))
}

fn shift_ratio(p: &MultiPoly, q: &MultiPoly) -> Monomial {
    let mut m = Monomial::unit();
    for v in ALL_VARS {
        let lp = p.degree_span(v).map(|(lo, _)| lo.min(0)).unwrap_or(0);
        let lq = q.degree_span(v).map(|(lo, _)| lo.min(0)).unwrap_or(0);
        // pn = p * v^-lp and qn = q * v^-lq, so p/q = (pn/qn) * v^(lp-lq)
        m = m.mul(&Monomial::var(v, lp - lq)).0;
    }
    m
}

fn apply_shift(p: &MultiPoly, shift: &Monomial) -> MultiPoly {
    if shift.is_unit() {
        return p.clone();
    }
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        let (mm, sign) = m.mul(shift);
        let mut cc = c.clone();
        if sign < 0 {
            cc = -cc;
        }
        out.add_term(mm, cc);
    }
    out
}

fn exact_div_nonneg(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    if q.is_zero() {
        return None;
    }
    if p.is_zero() {
        return Some(MultiPoly::zero());
    }
    if let Some(c) = q.as_constant() {
        return Some(p.scale(&(BigRational::one() / c)));
    }
    let v = main_var(p, q)?;
    if !q.contains_var(v) {
        // main var occurs only in p; divide each coefficient
        let pu = to_uni(p, v);
        let mut out = BTreeMap::new();
        for (e, c) in pu {
            out.insert(e, exact_div_nonneg(&c, q)?);
        }
        return Some(from_uni(&out, v));
    }
    let mut pu = to_uni(p, v);
    let qu = to_uni(q, v);
    let dq = uni_degree(&qu)?;
    let qlead = qu.get(&dq).unwrap().clone();
    let mut quot: BTreeMap<i16, MultiPoly> = BTreeMap::new();
    while let Some(dp) = uni_degree(&pu) {
        if dp < dq {
            return None;
        }
        let plead = pu.get(&dp).unwrap().clone();
        let c = exact_div_nonneg(&plead, &qlead)?;
        let k = dp - dq;
        // subtract c * T^k * q
        for (&e, qc) in &qu {
            let sub = c.mul(qc);
            let slot = pu.entry(e + k).or_insert_with(MultiPoly::zero);
            *slot = slot.sub(&sub);
        }
        pu.retain(|_, cc| !cc.is_zero());
        quot.insert(k, c);
    }
    Some(from_uni(&quot, v))
}

/// Primitive gcd of two polynomials. The result has integer coefficients,
/// content 1, non-negative exponents with zero minimum, and positive leading
/// coefficient; constants collapse to 1. `i` is treated as an ordinary
/// variable here, which is sound (a polynomial-ring divisor still divides in
/// the quotient by `i^2+1`).
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let p = laurent_normalize(p);
    let q = laurent_normalize(q);
    let (p, _) = p.primitive_parts();
    let (q, _) = q.primitive_parts();
    let g = gcd_prim(&p, &q);
    let (g, _) = g.primitive_parts();
    g
}

fn gcd_prim(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.as_constant().is_some() || q.as_constant().is_some() {
        return MultiPoly::one();
    }
    let v = match main_var(p, q) {
        Some(v) => v,
        None => return MultiPoly::one(),
    };
    if !p.contains_var(v) || !q.contains_var(v) {
        // One side is free of the main variable: gcd divides its content.
        let (with, without) = if p.contains_var(v) { (p, q) } else { (q, p) };
        let cont = content_wrt(with, v);
        return gcd_prim(&cont, without);
    }
    let cont_p = content_wrt(p, v);
    let cont_q = content_wrt(q, v);
    let cont_g = gcd_prim(&cont_p, &cont_q);
    let pp_p = exact_div_nonneg(p, &cont_p).expect("content divides");
    let pp_q = exact_div_nonneg(q, &cont_q).expect("content divides");

    let mut a = to_uni(&pp_p, v);
    let mut b = to_uni(&pp_q, v);
    if uni_degree(&a) < uni_degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let db = match uni_degree(&b) {
            None => {
                let g = from_uni(&a, v);
                let (g, _) = primitive_wrt(&g, v);
                return cont_g.mul(&g);
            }
            Some(d) => d,
        };
        if db == 0 {
            // coprime up to content
            return cont_g;
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = match r {
            None => BTreeMap::new(),
            Some(r) => {
                let rp = from_uni(&r, v);
                let (rp, _) = primitive_wrt(&rp, v);
                to_uni(&rp, v)
            }
        };
    }
}

/// Content of `p` with respect to `v`: gcd of its `v`-coefficients.
fn content_wrt(p: &MultiPoly, v: Var) -> MultiPoly {
    let pu = to_uni(p, v);
    let mut g = MultiPoly::zero();
    for c in pu.values() {
        g = gcd_prim_entry(&g, c);
        if g.as_constant().is_some() {
            return MultiPoly::one();
        }
    }
    if g.is_zero() {
        MultiPoly::one()
    } else {
        let (g, _) = g.primitive_parts();
        g
    }
}

fn gcd_prim_entry(g: &MultiPoly, c: &MultiPoly) -> MultiPoly {
    if g.is_zero() {
        let (c, _) = c.primitive_parts();
        return c;
    }
    gcd_prim(g, c)
}

fn primitive_wrt(p: &MultiPoly, v: Var) -> (MultiPoly, MultiPoly) {
    let cont = content_wrt(p, v);
    let pp = exact_div_nonneg(p, &cont).expect("content divides");
    let (pp, _) = pp.primitive_parts();
    (pp, cont)
}

/// One pseudo-remainder: returns `lead(b)^k * a mod b` in `v`, or `None`
/// when the remainder is zero.
fn pseudo_rem(
    a: &BTreeMap<i16, MultiPoly>,
    b: &BTreeMap<i16, MultiPoly>,
    _v: Var,
) -> Option<BTreeMap<i16, MultiPoly>> {
    let db = uni_degree(b).expect("divisor nonzero");
    let blead = b.get(&db).unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = uni_degree(&r) {
        if dr < db {
            break;
        }
        let rlead = r.get(&dr).unwrap().clone();
        // r <- blead * r - rlead * T^(dr-db) * b
        let mut next: BTreeMap<i16, MultiPoly> = BTreeMap::new();
        for (&e, c) in &r {
            next.insert(e, c.mul(&blead));
        }
        for (&e, c) in b {
            let slot = next.entry(e + dr - db).or_insert_with(MultiPoly::zero);
            *slot = slot.sub(&c.mul(&rlead));
        }
        next.retain(|_, c| !c.is_zero());
        r = next;
    }
    if r.is_empty() {
        None
    } else {
        Some(r)
    }
}

/// Convenience: true when `q` divides `p` exactly.
pub fn divides(q: &MultiPoly, p: &MultiPoly) -> bool {
    exact_div(p, q).is_some()
}
