use std::collections::HashMap;

use super::charts::build_chart;
use super::{ChartIndex, FlagError, FlagType};
use crate::supercalc::{CalcError, Rational, SuperMatrix, SuperPolynomial, Var};

/// Coordinate matrices of chart `J` from the level matrices of another
/// chart: `Z_J1 = Z_1 C_1^{-1}` and `Z_Js = C_{s-1} Z_s C_s^{-1}`.
///
/// The entries may be polynomials as long as every `C_s` has an invertible
/// numeric part and a nilpotent remainder.
pub fn transition_matrices(
    f: &FlagType,
    zs: &[SuperMatrix],
    j: &ChartIndex,
) -> Result<Vec<SuperMatrix>, FlagError> {
    j.validate(f)?;
    let mut out = Vec::with_capacity(zs.len());
    let mut prev: Option<SuperMatrix> = None;
    for (s, z) in zs.iter().enumerate() {
        let w = match &prev {
            None => z.clone(),
            Some(c) => c.mul(z)?,
        };
        let c = w.select_rows(&j.identity_rows(s + 1, f.k[s]));
        let cinv = c.inverse().map_err(|e| match e {
            CalcError::NotNumericCore => FlagError::SingularOverlap,
            other => FlagError::Calc(other),
        })?;
        out.push(w.mul(&cinv)?);
        prev = Some(c);
    }
    Ok(out)
}

/// Chart `J` coordinates as functions of the odd coordinates of chart `I`,
/// with the even coordinates of `I` fixed at `point`.
pub fn transition(
    f: &FlagType,
    i: &ChartIndex,
    j: &ChartIndex,
    point: &HashMap<Var, Rational>,
) -> Result<Vec<SuperMatrix>, FlagError> {
    let chart = build_chart(f, i)?;
    let bind: HashMap<Var, SuperPolynomial> = point
        .iter()
        .map(|(v, r)| (*v, SuperPolynomial::constant(r.clone())))
        .collect();
    let zs: Vec<SuperMatrix> = chart
        .levels
        .iter()
        .map(|z| z.substitute(&bind))
        .collect::<Result<_, _>>()?;
    transition_matrices(f, &zs, j)
}
