//! The operation pushed to the completed Laurent-coefficient ring where
//! the quartic w(alpha) picks up a distinguished root. Mod 3 the quartic
//! factors as alpha * (alpha^3 + h) with a simple root at alpha = 0; the
//! root lifts to a 3-adic Laurent series by a fixed-point iteration, and
//! substituting it into the operation's images of h and c gives their
//! one-variable expansions.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::ratfunc::{congruent_mod3, RatPoly};
use crate::poly::unipoly::UniPoly;
use crate::poly::Var;
use crate::powerops::power_op_data;
use crate::scalar::{PadicGauss, MAX_PREC};
use crate::series::laurent::PadicLaurent;

pub struct KOneData {
    pub h_terms: u32,
    pub padic_prec: u32,
    /// Distinguished root of w in the h chart, supported on h^-1 and below.
    pub alpha_h: PadicLaurent,
    /// The same root solved independently in the c chart.
    pub alpha_c: PadicLaurent,
    /// Image of h under the operation, h^3 leading.
    pub psi_f_h: PadicLaurent,
    /// Image of c, c^3 leading and odd in c.
    pub psi_f_c: PadicLaurent,
}

/// Exact Laurent polynomial from a rational function whose denominator is
/// a monomial in `var`.
fn ratpoly_to_laurent(r: &RatPoly, var: Var, prec: u32) -> Result<PadicLaurent> {
    for shift in 0..=12i32 {
        let shifted = r.mul(&RatPoly::var(var).pow(shift)?);
        let Ok(up) = UniPoly::from_ratpoly(&shifted, var) else {
            continue;
        };
        let mut terms = Vec::new();
        for (k, c) in up.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = c.as_constant().ok_or_else(|| {
                Error::ReductionMismatch(format!("coefficient {c} is not rational"))
            })?;
            terms.push((k as i64 - shift as i64, PadicGauss::from_rational(&q, prec)?));
        }
        return Ok(PadicLaurent::from_terms(var, prec, None, terms));
    }
    Err(Error::NonInvertibleDenominator(format!("{r}")))
}

/// Evaluate a polynomial in alpha with coefficients in the chart variable
/// at a Laurent series point.
fn eval_at_series(p: &UniPoly, point: &PadicLaurent) -> Result<PadicLaurent> {
    let var = point.var();
    let prec = point.prec();
    let deg = match p.degree() {
        Some(d) => d,
        None => return Ok(PadicLaurent::zero(var, prec)),
    };
    let mut acc = PadicLaurent::zero(var, prec);
    for k in (0..=deg).rev() {
        acc = acc
            .mul(point)
            .add(&ratpoly_to_laurent(&p.coeff(k), var, prec)?);
    }
    Ok(acc)
}

/// Fixed point of alpha = (3 + 6 alpha^2 - alpha^4) / lin, truncated
/// below `floor`. The iteration gains an order per pass, so it stabilizes
/// once the working window fills up.
fn solve_in_chart(lin: &PadicLaurent, floor: i64, max_iter: u32) -> Result<PadicLaurent> {
    let var = lin.var();
    let prec = lin.prec();
    let inv = lin.invert_to(floor - 4)?;
    let three = PadicLaurent::int(var, prec, 3);
    let mut alpha = PadicLaurent::zero(var, prec).truncate_below(floor);
    for _ in 0..max_iter {
        let a2 = alpha.mul(&alpha);
        let a4 = a2.mul(&a2);
        let rhs = three.add(&a2.scale_int(6)).sub(&a4);
        let next = rhs.mul(&inv).truncate_below(floor);
        if next == alpha {
            return Ok(alpha);
        }
        alpha = next;
    }
    Err(Error::NoConvergence(max_iter))
}

/// The root must live on the formal branch: negative support, real
/// coefficients, every coefficient divisible by 3.
fn check_formal_branch(alpha: &PadicLaurent) -> Result<()> {
    for (e, c) in alpha.terms() {
        if e >= 0 {
            return Err(Error::ResidueNonzero(format!(
                "root has support at exponent {e}"
            )));
        }
        if c.im() != 0 {
            return Err(Error::ResidueNonzero(format!(
                "imaginary part at exponent {e}"
            )));
        }
        if c.re() % 3 != 0 {
            return Err(Error::ResidueNonzero(format!(
                "coefficient at exponent {e} is a 3-adic unit"
            )));
        }
    }
    Ok(())
}

/// Re-expand an h-chart Laurent series in the c chart through h = c^2 + 1.
fn eval_h_as_c(expr: &PadicLaurent) -> Result<PadicLaurent> {
    let prec = expr.prec();
    let base = PadicLaurent::from_int_terms(Var::C, prec, &[(2, 1), (0, 1)]);
    let deep = expr.floor().map(|f| 2 * f - 1).unwrap_or(-40) - 8;
    let base_inv = base.invert_to(deep)?;
    let mut out = PadicLaurent::zero(Var::C, prec);
    for (e, coeff) in expr.terms() {
        let mut pw = PadicLaurent::int(Var::C, prec, 1);
        for _ in 0..e.unsigned_abs() {
            pw = pw.mul(if e >= 0 { &base } else { &base_inv });
        }
        out = out.add(&pw.scale(coeff));
    }
    // the unknown h-tail starts at twice its exponent in c
    if let Some(f) = expr.floor() {
        out = out.truncate_below(2 * f - 1);
    }
    Ok(out)
}

pub fn derive_k1(h_terms: u32, padic_prec: u32) -> Result<KOneData> {
    if h_terms < 1 {
        return Err(Error::PrecisionInsufficient(
            "need at least one principal-part term".to_string(),
        ));
    }
    if !(2..=MAX_PREC).contains(&padic_prec) {
        return Err(Error::PrecisionInsufficient(format!(
            "3-adic precision {padic_prec} outside 2..={MAX_PREC}"
        )));
    }
    let ops = power_op_data()?;
    let prec = padic_prec;
    let h_floor = -(h_terms as i64);
    let c_floor = 2 * h_floor - 1;
    let max_iter = h_terms + padic_prec + 16;

    let lin_h = ratpoly_to_laurent(&ops.modulus_h.coeff(1), Var::H, prec)?;
    let lin_c = ratpoly_to_laurent(&ops.modulus_c.coeff(1), Var::C, prec)?;
    let alpha_h = solve_in_chart(&lin_h, h_floor, max_iter)?;
    let alpha_c = solve_in_chart(&lin_c, c_floor, max_iter)?;

    for (alpha, modulus) in [(&alpha_h, &ops.modulus_h), (&alpha_c, &ops.modulus_c)] {
        check_formal_branch(alpha)?;
        let residual = eval_at_series(modulus, alpha)?;
        if !residual.known_zero() {
            return Err(Error::ResidueNonzero(format!(
                "w does not vanish at the lifted root: {residual}"
            )));
        }
    }

    let psi_f_h = eval_at_series(&ops.psi_h, &alpha_h)?;
    let psi_f_c = eval_at_series(&ops.psi_c, &alpha_c)?;

    // the two charts must present the same operation: the image of
    // h = c^2 + 1 equals the image of c squared plus one
    let via_c = psi_f_c
        .mul(&psi_f_c)
        .add(&PadicLaurent::int(Var::C, prec, 1));
    let via_h = eval_h_as_c(&psi_f_h)?;
    if !via_c.agrees_with(&via_h) {
        return Err(Error::CoefficientMismatch(
            "chart images disagree under h = c^2 + 1".to_string(),
        ));
    }

    Ok(KOneData {
        h_terms,
        padic_prec,
        alpha_h,
        alpha_c,
        psi_f_h,
        psi_f_c,
    })
}

/// Derivation at the default working window.
pub fn k1_data() -> Result<&'static KOneData> {
    static CACHE: OnceLock<KOneData> = OnceLock::new();
    if let Some(d) = CACHE.get() {
        return Ok(d);
    }
    let d = derive_k1(10, 24)?;
    Ok(CACHE.get_or_init(|| d))
}

/// Mod 3 the quartic factors with a simple linear factor alpha and a
/// cubic cofactor alpha^3 + h. Returns the factored form after checking
/// it against the quartic, and that the cofactor has no Laurent root:
/// such a root would need its valuation v to satisfy 3 v = 1.
pub fn unique_root_check() -> Result<RatPoly> {
    let ops = power_op_data()?;
    let alpha = RatPoly::var(Var::Alpha);
    let cofactor = alpha.pow(3)?.add(&RatPoly::var(Var::H));
    let factored = alpha.mul(&cofactor);
    if !congruent_mod3(&ops.modulus_h.to_ratpoly(), &factored)? {
        return Err(Error::FactorizationMismatch(
            "quartic does not reduce to alpha * (alpha^3 + h)".to_string(),
        ));
    }
    let h_valuation = 1i64;
    let cofactor_degree = 3i64;
    if h_valuation % cofactor_degree == 0 {
        return Err(Error::FactorizationMismatch(
            "cubic cofactor admits a Laurent root".to_string(),
        ));
    }
    Ok(factored)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::{record, record_ratpoly};

    fn data() -> &'static KOneData {
        k1_data().unwrap()
    }

    fn int_coeff(series: &PadicLaurent, e: i64) -> i128 {
        let c = series.coeff(e).unwrap();
        let (re, im) = c.balanced();
        assert_eq!(im, 0, "imaginary part at exponent {e}");
        re
    }

    #[test]
    fn image_of_h_matches_frozen_text() {
        let d = data();
        assert_eq!(
            d.psi_f_h.prefix_text(-2).unwrap(),
            record("sec4.psiF_h").unwrap().body
        );
        for (e, c) in [(3, 1), (2, -27), (1, 183), (0, -180), (-1, 186), (-2, 1674)] {
            assert_eq!(int_coeff(&d.psi_f_h, e), c, "exponent {e}");
        }
    }

    #[test]
    fn image_of_c_matches_frozen_text() {
        let d = data();
        assert_eq!(
            d.psi_f_c.prefix_text(-7).unwrap(),
            record("sec4.psiF_c").unwrap().body
        );
        for (e, c) in [
            (3, 1),
            (1, -12),
            (-1, -6),
            (-3, -84),
            (-5, -933),
            (-7, -10956),
        ] {
            assert_eq!(int_coeff(&d.psi_f_c, e), c, "exponent {e}");
        }
        // the image of c is odd, so even exponents vanish
        for e in [2, 0, -2, -4, -6] {
            assert_eq!(int_coeff(&d.psi_f_c, e), 0, "exponent {e}");
        }
    }

    #[test]
    fn lifted_root_lies_on_the_formal_branch() {
        let d = data();
        assert!(check_formal_branch(&d.alpha_h).is_ok());
        assert!(check_formal_branch(&d.alpha_c).is_ok());
        // leading behavior 3 / h
        assert_eq!(int_coeff(&d.alpha_h, -1), 3);
        assert_eq!(int_coeff(&d.alpha_c, -2), 3);
    }

    #[test]
    fn quartic_vanishes_at_the_root() {
        let d = data();
        let ops = power_op_data().unwrap();
        let res_h = eval_at_series(&ops.modulus_h, &d.alpha_h).unwrap();
        assert!(res_h.known_zero(), "h chart residual {res_h}");
        let res_c = eval_at_series(&ops.modulus_c, &d.alpha_c).unwrap();
        assert!(res_c.known_zero(), "c chart residual {res_c}");
    }

    #[test]
    fn coarser_window_reproduces_the_expansion() {
        let fine = data();
        let coarse = derive_k1(6, 12).unwrap();
        assert!(coarse.alpha_h.agrees_with(&fine.alpha_h));
        assert!(coarse.psi_f_h.agrees_with(&fine.psi_f_h));
        assert!(coarse.psi_f_c.agrees_with(&fine.psi_f_c));
        assert_eq!(
            coarse.psi_f_h.prefix_text(-2).unwrap(),
            record("sec4.psiF_h").unwrap().body
        );
    }

    #[test]
    fn deeper_coefficients_agree_across_precisions() {
        let fine = data();
        let other = derive_k1(8, 20).unwrap();
        let a = int_coeff(&fine.psi_f_h, -3);
        let b = int_coeff(&other.psi_f_h, -3);
        assert_eq!(a, b);
        assert_ne!(a, 0);
    }

    #[test]
    fn special_fiber_has_a_unique_formal_root() {
        let factored = unique_root_check().unwrap();
        let frozen = record_ratpoly("sec4.w_mod3").unwrap();
        assert!(congruent_mod3(&factored, &frozen).unwrap());
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(matches!(
            derive_k1(0, 24),
            Err(Error::PrecisionInsufficient(_))
        ));
        assert!(matches!(
            derive_k1(10, 1),
            Err(Error::PrecisionInsufficient(_))
        ));
        assert!(matches!(
            derive_k1(10, 99),
            Err(Error::PrecisionInsufficient(_))
        ));
        let d = data();
        assert!(matches!(
            d.psi_f_h.coeff(-(d.h_terms as i64) - 1),
            Err(Error::PrecisionInsufficient(_))
        ));
    }
}
