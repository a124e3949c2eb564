//! Laurent series with truncated 3-adic coefficients. Support is bounded
//! above; below a floor the coefficients are unknown. Exact elements
//! (finite sums, typically polynomials) carry no floor at all, so the
//! representation distinguishes "zero" from "zero as far as we know".

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Var;
use crate::scalar::PadicGauss;
use crate::series::trunc::Coeff;
use crate::textio::join_terms;

#[derive(Clone, Debug, PartialEq)]
pub struct PadicLaurent {
    var: Var,
    prec: u32,
    /// Exponents below this are unknown; `None` means the element is exact.
    floor: Option<i64>,
    coeffs: BTreeMap<i64, PadicGauss>,
}

fn meet_floor(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) => x,
        (x, None) => x,
        (Some(p), Some(q)) => Some(p.max(q)),
    }
}

impl PadicLaurent {
    pub fn zero(var: Var, prec: u32) -> PadicLaurent {
        PadicLaurent {
            var,
            prec,
            floor: None,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn int(var: Var, prec: u32, n: i128) -> PadicLaurent {
        PadicLaurent::monomial(var, PadicGauss::from_int(n, prec), 0)
    }

    pub fn monomial(var: Var, coeff: PadicGauss, exp: i64) -> PadicLaurent {
        let mut out = PadicLaurent::zero(var, coeff.prec());
        if !coeff.is_zero() {
            out.coeffs.insert(exp, coeff);
        }
        out
    }

    pub fn from_terms(
        var: Var,
        prec: u32,
        floor: Option<i64>,
        terms: impl IntoIterator<Item = (i64, PadicGauss)>,
    ) -> PadicLaurent {
        let mut out = PadicLaurent {
            var,
            prec,
            floor,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in terms {
            out.insert_term(e, c);
        }
        out
    }

    pub fn from_int_terms(var: Var, prec: u32, terms: &[(i64, i64)]) -> PadicLaurent {
        PadicLaurent::from_terms(
            var,
            prec,
            None,
            terms
                .iter()
                .map(|&(e, c)| (e, PadicGauss::from_int(c as i128, prec))),
        )
    }

    fn insert_term(&mut self, e: i64, c: PadicGauss) {
        if let Some(f) = self.floor {
            if e < f {
                return;
            }
        }
        let merged = match self.coeffs.remove(&e) {
            Some(old) => old.add(&c),
            None => c.truncate(c.prec().min(self.prec)),
        };
        if !merged.is_zero() {
            self.coeffs.insert(e, merged);
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    /// No nonzero known coefficients. For exact elements this means zero;
    /// for floored elements it only means zero as far as the floor shows.
    pub fn known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.floor.is_none()
    }

    /// Largest exponent that could carry a nonzero coefficient.
    fn top_bound(&self) -> Option<i64> {
        let sup = self.coeffs.keys().next_back().copied();
        match (sup, self.floor) {
            (None, None) => None,
            (None, Some(f)) => Some(f - 1),
            (Some(t), None) => Some(t),
            (Some(t), Some(f)) => Some(t.max(f - 1)),
        }
    }

    pub fn coeff(&self, k: i64) -> Result<PadicGauss> {
        if let Some(f) = self.floor {
            if k < f {
                return Err(Error::PrecisionInsufficient(format!(
                    "coefficient of {}^{} is below the floor {}",
                    self.var.name(),
                    k,
                    f
                )));
            }
        }
        Ok(self
            .coeffs
            .get(&k)
            .copied()
            .unwrap_or_else(|| PadicGauss::zero(self.prec)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &PadicGauss)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn truncate_below(&self, floor: i64) -> PadicLaurent {
        let new_floor = meet_floor(self.floor, Some(floor));
        let mut out = self.clone();
        out.floor = new_floor;
        out.coeffs.retain(|&e, _| e >= new_floor.unwrap());
        out
    }

    pub fn add(&self, other: &PadicLaurent) -> PadicLaurent {
        let mut out = PadicLaurent {
            var: self.var,
            prec: self.prec.min(other.prec),
            floor: meet_floor(self.floor, other.floor),
            coeffs: BTreeMap::new(),
        };
        for (&e, c) in &self.coeffs {
            out.insert_term(e, *c);
        }
        for (&e, c) in &other.coeffs {
            out.insert_term(e, *c);
        }
        out
    }

    pub fn neg(&self) -> PadicLaurent {
        let mut out = self.clone();
        out.coeffs = out.coeffs.into_iter().map(|(e, c)| (e, c.neg())).collect();
        out
    }

    pub fn sub(&self, other: &PadicLaurent) -> PadicLaurent {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &PadicGauss) -> PadicLaurent {
        let mut out = PadicLaurent {
            var: self.var,
            prec: self.prec.min(c.prec()),
            floor: self.floor,
            coeffs: BTreeMap::new(),
        };
        for (&e, a) in &self.coeffs {
            out.insert_term(e, a.mul(c));
        }
        out
    }

    pub fn scale_int(&self, n: i128) -> PadicLaurent {
        self.scale(&PadicGauss::from_int(n, self.prec))
    }

    pub fn mul(&self, other: &PadicLaurent) -> PadicLaurent {
        let prec = self.prec.min(other.prec);
        let (t1, t2) = (self.top_bound(), other.top_bound());
        if t1.is_none() || t2.is_none() {
            return PadicLaurent::zero(self.var, prec);
        }
        let floor = meet_floor(
            self.floor.map(|f| f + t2.unwrap()),
            other.floor.map(|f| f + t1.unwrap()),
        );
        let mut out = PadicLaurent {
            var: self.var,
            prec,
            floor,
            coeffs: BTreeMap::new(),
        };
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.insert_term(e1 + e2, c1.mul(c2));
            }
        }
        out
    }

    /// Product truncated at a working floor, ignoring the honest error
    /// floors of the inputs. Only for self-correcting iterations.
    fn mul_trunc(&self, other: &PadicLaurent, wfloor: i64) -> PadicLaurent {
        let mut out = PadicLaurent {
            var: self.var,
            prec: self.prec.min(other.prec),
            floor: Some(wfloor),
            coeffs: BTreeMap::new(),
        };
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                if e1 + e2 >= wfloor {
                    out.insert_term(e1 + e2, c1.mul(c2));
                }
            }
        }
        out
    }

    /// Inverse computed down to the working floor. The top coefficient
    /// must be a 3-adic unit. Newton bootstrapping self-corrects, and the
    /// result is verified against the honest product afterwards.
    pub fn invert_to(&self, wfloor: i64) -> Result<PadicLaurent> {
        let (&top, lead) = self
            .coeffs
            .iter()
            .next_back()
            .ok_or_else(|| Error::DivisionByNonUnit("no known leading term".to_string()))?;
        if !lead.is_unit() {
            return Err(Error::DivisionByNonUnit(format!("{:?}", lead)));
        }
        // exact monomials invert exactly
        if self.floor.is_none() && self.coeffs.len() == 1 {
            return Ok(PadicLaurent::monomial(self.var, lead.inv()?, -top));
        }
        let mut y = PadicLaurent::monomial(self.var, lead.inv()?, -top);
        y.floor = Some(wfloor);
        let two = PadicLaurent::int(self.var, self.prec, 2);
        for _ in 0..64 {
            let correction = two.sub(&self.mul_trunc(&y, wfloor + top));
            let next = y.mul_trunc(&correction, wfloor);
            if next == y {
                break;
            }
            y = next;
        }
        let residual = self.mul(&y).sub(&PadicLaurent::int(self.var, self.prec, 1));
        if !residual.known_zero() {
            return Err(Error::NoConvergence(64));
        }
        // error in the input propagates through 1/f^2
        let honest = self.floor.map(|f| f - 2 * top);
        y.floor = meet_floor(Some(wfloor), honest);
        y.coeffs.retain(|&e, _| e >= y.floor.unwrap());
        Ok(y)
    }

    pub fn div_to(&self, other: &PadicLaurent, wfloor: i64) -> Result<PadicLaurent> {
        Ok(self.mul(&other.invert_to(wfloor - self.top_bound().unwrap_or(0).max(0))?)
            .truncate_below(wfloor))
    }

    pub fn pow_int(&self, k: i32, wfloor: i64) -> Result<PadicLaurent> {
        let base = if k < 0 {
            self.invert_to(wfloor)?
        } else {
            self.clone()
        };
        let mut acc = PadicLaurent::int(self.var, self.prec, 1);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Agreement on the window both sides know, at the shared precision.
    pub fn agrees_with(&self, other: &PadicLaurent) -> bool {
        let floor = meet_floor(self.floor, other.floor);
        let prec = self.prec.min(other.prec);
        let window = |s: &PadicLaurent| -> BTreeMap<i64, PadicGauss> {
            s.coeffs
                .iter()
                .filter(|(&e, _)| floor.map_or(true, |f| e >= f))
                .map(|(&e, c)| (e, c.truncate(prec)))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        };
        window(self) == window(other)
    }

    /// Render terms with exponent at least `lo`, highest first, with
    /// balanced integer lifts.
    pub fn prefix_text(&self, lo: i64) -> Result<String> {
        if let Some(f) = self.floor {
            if f > lo {
                return Err(Error::PrecisionInsufficient(format!(
                    "floor {} is above requested cut {}",
                    f, lo
                )));
            }
        }
        let parts: Vec<(bool, String)> = self
            .coeffs
            .iter()
            .rev()
            .filter(|(&e, _)| e >= lo)
            .map(|(&e, c)| render_term(self.var, e, c))
            .collect();
        Ok(join_terms(&parts))
    }
}

fn render_term(var: Var, e: i64, c: &PadicGauss) -> (bool, String) {
    let (re, im) = c.balanced();
    let power = if e == 0 {
        String::new()
    } else if e == 1 {
        var.name().to_string()
    } else {
        format!("{}^{}", var.name(), e)
    };
    if im == 0 {
        let mag = re.unsigned_abs();
        let body = if power.is_empty() {
            mag.to_string()
        } else if mag == 1 {
            power
        } else {
            format!("{}*{}", mag, power)
        };
        (re < 0, body)
    } else {
        let inner = if im > 0 {
            format!("({} + {}*i)", re, im)
        } else {
            format!("({} - {}*i)", re, -im)
        };
        let body = if power.is_empty() {
            inner
        } else {
            format!("{}*{}", inner, power)
        };
        (false, body)
    }
}

impl fmt::Display for PadicLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.floor.unwrap_or_else(|| {
            self.coeffs.keys().next().copied().unwrap_or(0)
        });
        write!(f, "{}", self.prefix_text(lo).unwrap())?;
        if let Some(fl) = self.floor {
            write!(f, " + O({}^{})", self.var.name(), fl - 1)?;
        }
        Ok(())
    }
}

impl Coeff for PadicLaurent {
    fn add(&self, other: &Self) -> Self {
        PadicLaurent::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        PadicLaurent::mul(self, other)
    }
    fn neg(&self) -> Self {
        PadicLaurent::neg(self)
    }
    /// Only exact zeros may be dropped from surrounding containers;
    /// a floored element that merely looks zero still carries information.
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn one_like(&self) -> Self {
        PadicLaurent::int(self.var, self.prec, 1)
    }
    fn from_int_like(&self, n: i64) -> Self {
        PadicLaurent::int(self.var, self.prec, n as i128)
    }
    fn inv(&self) -> Result<Self> {
        match self.floor {
            None if self.coeffs.len() <= 1 => self.invert_to(0),
            None => Err(Error::PrecisionInsufficient(
                "inverse of an exact multi-term element needs a floor".to_string(),
            )),
            Some(f) => {
                let top = self.top_bound().unwrap();
                self.invert_to(f - 2 * top)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h_minus_9(prec: u32) -> PadicLaurent {
        PadicLaurent::from_int_terms(Var::H, prec, &[(1, 1), (0, -9)])
    }

    #[test]
    fn geometric_inverse() {
        let inv = h_minus_9(8).invert_to(-4).unwrap();
        assert_eq!(inv.coeff(-1).unwrap(), PadicGauss::from_int(1, 8));
        assert_eq!(inv.coeff(-2).unwrap(), PadicGauss::from_int(9, 8));
        assert_eq!(inv.coeff(-3).unwrap(), PadicGauss::from_int(81, 8));
        assert_eq!(inv.coeff(-4).unwrap(), PadicGauss::from_int(729, 8));
        assert_eq!(inv.coeff(0).unwrap(), PadicGauss::zero(8));
        assert!(inv.coeff(-5).is_err());
        let product = h_minus_9(8).mul(&inv);
        assert_eq!(product.coeff(0).unwrap(), PadicGauss::one(8));
        assert!(product
            .sub(&PadicLaurent::int(Var::H, 8, 1))
            .known_zero());
    }

    #[test]
    fn floors_propagate() {
        let mut a = PadicLaurent::int(Var::H, 6, 1);
        a.floor = Some(0);
        let h = PadicLaurent::from_int_terms(Var::H, 6, &[(1, 1)]);
        let p = a.mul(&h);
        assert_eq!(p.floor(), Some(1));
        assert_eq!(p.coeff(1).unwrap(), PadicGauss::one(6));
        assert!(p.coeff(0).is_err());
        let s = a.add(&PadicLaurent::int(Var::H, 6, 5));
        assert_eq!(s.floor(), Some(0));
        assert_eq!(s.coeff(0).unwrap(), PadicGauss::from_int(6, 6));
    }

    #[test]
    fn rendering() {
        let p = PadicLaurent::from_int_terms(Var::H, 9, &[(3, 1), (2, -27), (0, -180), (-1, 186)]);
        assert_eq!(
            p.prefix_text(-1).unwrap(),
            "h^3 - 27*h^2 - 180 + 186*h^-1"
        );
        assert_eq!(p.prefix_text(0).unwrap(), "h^3 - 27*h^2 - 180");
    }

    #[test]
    fn non_unit_leading_rejected() {
        let f = PadicLaurent::from_int_terms(Var::H, 6, &[(1, 3)]);
        assert!(matches!(
            f.invert_to(-3),
            Err(Error::DivisionByNonUnit(_))
        ));
    }

    #[test]
    fn exact_monomial_inverse() {
        let h = PadicLaurent::from_int_terms(Var::H, 6, &[(1, 1)]);
        let inv = h.pow_int(-2, -10).unwrap();
        assert_eq!(inv.floor(), None);
        assert_eq!(inv.coeff(-2).unwrap(), PadicGauss::one(6));
    }

    fn element() -> impl Strategy<Value = PadicLaurent> {
        prop::collection::btree_map(-3i64..=3, -20i64..=20, 0..5).prop_map(|m| {
            PadicLaurent::from_terms(
                Var::H,
                8,
                Some(-5),
                m.into_iter()
                    .map(|(e, c)| (e, PadicGauss::from_int(c as i128, 8))),
            )
        })
    }

    proptest! {
        #[test]
        fn multiplication_associates(a in element(), b in element(), c in element()) {
            let lhs = a.mul(&b).mul(&c);
            let rhs = a.mul(&b.mul(&c));
            prop_assert!(lhs.agrees_with(&rhs));
        }

        #[test]
        fn distributes(a in element(), b in element(), c in element()) {
            let lhs = a.add(&b).mul(&c);
            let rhs = a.mul(&c).add(&b.mul(&c));
            prop_assert!(lhs.agrees_with(&rhs));
        }

        #[test]
        fn floored_inverse_inverts(a in element()) {
            prop_assume!(a.coeffs.iter().next_back().map_or(false, |(_, c)| c.is_unit()));
            let inv = Coeff::inv(&a).unwrap();
            let prod = a.mul(&inv);
            prop_assert_eq!(prod.coeff(0).unwrap(), PadicGauss::one(prod.prec()));
        }
    }
}
