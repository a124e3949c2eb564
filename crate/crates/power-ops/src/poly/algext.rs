//! Arithmetic in an extension of the coefficient fraction field by one
//! polynomial relation m(t). Elements are kept reduced to degree below
//! the modulus, which makes equality a plain comparison.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::linsolve::solve_exact;
use crate::poly::ratfunc::RatPoly;
use crate::poly::unipoly::UniPoly;
use crate::poly::Var;
use crate::series::Coeff;

#[derive(Debug)]
pub struct ExtCtx {
    modulus: UniPoly,
}

impl ExtCtx {
    pub fn new(modulus: UniPoly) -> Result<Arc<ExtCtx>> {
        match modulus.degree() {
            Some(d) if d >= 1 => Ok(Arc::new(ExtCtx { modulus })),
            _ => Err(Error::NonUnitLeadingCoefficient(
                "extension modulus must have positive degree".into(),
            )),
        }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn var(&self) -> Var {
        self.modulus.var()
    }

    fn degree(&self) -> usize {
        self.modulus.degree().expect("validated on construction")
    }
}

/// An element of the extension, reduced modulo m(t).
#[derive(Clone, Debug)]
pub struct ExtElem {
    rep: UniPoly,
    ctx: Arc<ExtCtx>,
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl ExtElem {
    pub fn new(rep: UniPoly, ctx: Arc<ExtCtx>) -> Result<ExtElem> {
        let rep = rep.rem_by(&ctx.modulus)?;
        Ok(ExtElem { rep, ctx })
    }

    /// Embeds a fraction whose denominator is free of the extension
    /// variable.
    pub fn from_ratpoly(r: &RatPoly, ctx: Arc<ExtCtx>) -> Result<ExtElem> {
        let rep = UniPoly::from_ratpoly(r, ctx.var())?;
        ExtElem::new(rep, ctx)
    }

    /// A coefficient not involving the extension variable.
    pub fn scalar(c: &RatPoly, ctx: Arc<ExtCtx>) -> ExtElem {
        ExtElem {
            rep: UniPoly::from_coeffs(ctx.var(), vec![c.clone()]),
            ctx,
        }
    }

    pub fn generator(ctx: Arc<ExtCtx>) -> ExtElem {
        ExtElem {
            rep: UniPoly::from_coeffs(ctx.var(), vec![RatPoly::zero(), RatPoly::one()]),
            ctx,
        }
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    /// The reduced representative as a plain fraction.
    pub fn to_ratpoly(&self) -> RatPoly {
        self.rep.to_ratpoly()
    }

    pub fn ctx(&self) -> Arc<ExtCtx> {
        self.ctx.clone()
    }
}

impl Coeff for ExtElem {
    fn add(&self, other: &Self) -> Self {
        ExtElem {
            rep: self.rep.add(&other.rep),
            ctx: self.ctx.clone(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let prod = self.rep.mul(&other.rep);
        let rep = prod
            .rem_by(&self.ctx.modulus)
            .expect("reduction by a fixed unit-leading modulus cannot fail");
        ExtElem {
            rep,
            ctx: self.ctx.clone(),
        }
    }

    fn neg(&self) -> Self {
        ExtElem {
            rep: self.rep.neg(),
            ctx: self.ctx.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn one_like(&self) -> Self {
        ExtElem::scalar(&RatPoly::one(), self.ctx.clone())
    }

    fn from_int_like(&self, n: i64) -> Self {
        ExtElem::scalar(&RatPoly::int(n), self.ctx.clone())
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if self.rep.degree() == Some(0) {
            return Ok(ExtElem::scalar(&self.rep.coeff(0).inv()?, self.ctx.clone()));
        }
        // solve x * self = 1 on the power coordinates; this stays far
        // tamer than a Euclidean chain over the fraction field
        let n = self.ctx.degree();
        let t = UniPoly::from_coeffs(
            self.ctx.var(),
            vec![RatPoly::zero(), RatPoly::one()],
        );
        let mut cols = Vec::with_capacity(n);
        let mut col = self.rep.clone();
        for _ in 0..n {
            cols.push(col.clone());
            col = col.mul(&t).rem_by(&self.ctx.modulus)?;
        }
        let rows: Vec<Vec<RatPoly>> = (0..n)
            .map(|k| cols.iter().map(|c| c.coeff(k)).collect())
            .collect();
        let mut rhs = vec![RatPoly::zero(); n];
        rhs[0] = RatPoly::one();
        let sol = solve_exact(&rows, &rhs).map_err(|_| {
            Error::DivisionByNonUnit(
                "element shares a factor with the extension modulus".into(),
            )
        })?;
        ExtElem::new(UniPoly::from_coeffs(self.ctx.var(), sol), self.ctx.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic_ctx() -> Arc<ExtCtx> {
        // x^2 = c
        let m = UniPoly::from_coeffs(
            Var::X,
            vec![RatPoly::var(Var::C).neg(), RatPoly::zero(), RatPoly::one()],
        );
        ExtCtx::new(m).unwrap()
    }

    #[test]
    fn generator_squares_to_the_constant() {
        let ctx = quadratic_ctx();
        let g = ExtElem::generator(ctx.clone());
        let c = ExtElem::scalar(&RatPoly::var(Var::C), ctx);
        assert_eq!(g.mul(&g), c);
    }

    #[test]
    fn inverse_by_rationalizing() {
        let ctx = quadratic_ctx();
        let g = ExtElem::generator(ctx.clone());
        let x = g.add(&g.one_like());
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), g.one_like());
        // (1 + g)^-1 = (1 - g) / (1 - c)
        let den = RatPoly::one().sub(&RatPoly::var(Var::C));
        let expect = ExtElem::from_ratpoly(
            &RatPoly::one().sub(&RatPoly::var(Var::X)).div(&den).unwrap(),
            ctx,
        )
        .unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn zero_divisor_is_rejected() {
        // modulus x^2 makes the generator nilpotent
        let m = UniPoly::from_coeffs(
            Var::X,
            vec![RatPoly::zero(), RatPoly::zero(), RatPoly::one()],
        );
        let ctx = ExtCtx::new(m).unwrap();
        let g = ExtElem::generator(ctx);
        assert!(g.inv().is_err());
        assert!(g.mul(&g).is_zero());
    }

    #[test]
    fn constant_modulus_is_rejected() {
        let m = UniPoly::from_coeffs(Var::X, vec![RatPoly::one()]);
        assert!(ExtCtx::new(m).is_err());
    }
}
