//! Coefficient field for the quotient construction: the fraction field
//! of the curve constants extended by one root d of the subgroup
//! polynomial f. Arithmetic lives in [`crate::poly::algext`]; this
//! module just fixes the modulus.

use std::sync::Arc;

use crate::curve::torsion::torsion_data;
use crate::error::Result;
use crate::poly::algext::ExtCtx;
use crate::poly::unipoly::UniPoly;
use crate::poly::{MultiPoly, Var};

/// Context whose modulus is f with its variable renamed to d, so that
/// series in u keep their own symbol.
pub fn torsion_context() -> Result<Arc<ExtCtx>> {
    let data = torsion_data()?;
    let f_d = data.f.substitute(Var::U, &MultiPoly::var(Var::D))?;
    ExtCtx::new(UniPoly::from_poly(&f_d, Var::D)?)
}
