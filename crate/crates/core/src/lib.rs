//! Exact computations with matrix Lie superalgebras, flag supermanifold
//! atlases, fundamental vector fields and Borel-Weil-Bott weight data.

pub mod supercalc;
pub mod liesuperalg;
pub mod flagatlas;
pub mod fundfields;
pub mod weightsbwb;
pub mod harness;
pub mod par;
