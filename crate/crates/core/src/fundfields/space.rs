use std::collections::HashMap;

use super::{field_row, VectorField};
use crate::flagatlas::ChartIndex;
use crate::supercalc::linalg::Echelon;
use crate::supercalc::{Monomial, Var};

/// Linear span of vector fields on one chart, kept in echelon form over
/// their (coordinate, monomial) coefficients.
#[derive(Clone, Debug)]
pub struct FieldSpace {
    pub chart: ChartIndex,
    columns: HashMap<(Var, Monomial), usize>,
    echelon: Echelon,
}

impl FieldSpace {
    pub fn new(chart: ChartIndex, fields: impl IntoIterator<Item = VectorField>) -> Self {
        let mut s = Self {
            chart,
            columns: HashMap::new(),
            echelon: Echelon::new(0),
        };
        for v in fields {
            s.insert(&v);
        }
        s
    }

    /// Returns whether the span grew.
    pub fn insert(&mut self, v: &VectorField) -> bool {
        assert_eq!(v.chart, self.chart, "field on a different chart");
        let row = field_row(v, &mut self.columns);
        self.echelon.grow(self.columns.len());
        self.echelon.insert(row)
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, v: &VectorField) -> bool {
        let mut columns = self.columns.clone();
        let row = field_row(v, &mut columns);
        // a monomial the span has never seen cannot be cancelled
        if columns.len() > self.columns.len() {
            return v.is_zero();
        }
        self.echelon.reduce(row).is_empty()
    }
}
