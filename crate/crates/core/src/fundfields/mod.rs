//! Fundamental vector fields of the linear actions on flag charts.

mod space;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::flagatlas::{build_chart, enumerate_charts, Chart, ChartIndex, FlagError, FlagKind, FlagType};
use crate::liesuperalg::{
    build_gl, build_osp, build_pisp, check_invariance, AlgebraError, AlgebraPresentation,
    StructureConstants,
};
use crate::par;
use crate::supercalc::linalg::{Echelon, SparseRow};
use crate::supercalc::{rational, Monomial, Parity, Rational, SuperMatrix, SuperPolynomial, Var};

pub use space::FieldSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("matrix is not a homogeneous element of the acting algebra")]
    NotInAlgebra,
    #[error("fields live on different charts")]
    ChartMismatch,
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Vector field `sum_z V(z) d/dz` on one chart, coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub chart: ChartIndex,
    pub parity: Parity,
    pub coeffs: BTreeMap<Var, SuperPolynomial>,
}

impl VectorField {
    pub fn zero(chart: ChartIndex, parity: Parity) -> Self {
        Self {
            chart,
            parity,
            coeffs: BTreeMap::new(),
        }
    }

    /// The coordinate field `d/dv`.
    pub fn coordinate(chart: ChartIndex, v: Var) -> Self {
        let mut f = Self::zero(chart, v.parity());
        f.coeffs.insert(v, SuperPolynomial::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(SuperPolynomial::is_zero)
    }

    pub fn coeff(&self, v: Var) -> SuperPolynomial {
        self.coeffs.get(&v).cloned().unwrap_or_default()
    }

    /// `V(p) = sum_z V(z) dp/dz` with left derivatives.
    pub fn apply(&self, p: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero();
        for (z, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let d = p.derivative(*z);
            if !d.is_zero() {
                out.add_assign_ref(&c.mul(&d));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = v.scale(c);
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        out
    }

    /// Sum of fields on the same chart. Parities may differ; the result
    /// keeps the parity of `self`.
    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        if self.chart != other.chart {
            return Err(FieldError::ChartMismatch);
        }
        let mut out = self.clone();
        for (v, p) in &other.coeffs {
            out.coeffs.entry(*v).or_default().add_assign_ref(p);
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Largest even-variable degree among the coefficients.
    pub fn max_even_degree(&self) -> u32 {
        self.coeffs.values().map(SuperPolynomial::max_even_degree).max().unwrap_or(0)
    }

    /// Canonical sparse form for JSON.
    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            chart: self.chart.to_string(),
            parity: self.parity,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(v, p)| (v.to_string(), p.to_string()))
                .collect(),
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, p) in &self.coeffs {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({p}) d/d{v}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldJson {
    pub chart: String,
    pub parity: Parity,
    pub coeffs: Vec<(String, String)>,
}

/// Graded commutator `[V, W](z) = V(W(z)) - (-1)^{p(V)p(W)} W(V(z))`.
pub fn field_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField, FieldError> {
    if v.chart != w.chart {
        return Err(FieldError::ChartMismatch);
    }
    let neg = v.parity.koszul(w.parity);
    let mut out = VectorField::zero(v.chart.clone(), v.parity + w.parity);
    let vars: std::collections::BTreeSet<Var> = v.coeffs.keys().chain(w.coeffs.keys()).copied().collect();
    for z in vars {
        let a = v.apply(&w.coeff(z));
        let b = w.apply(&v.coeff(z));
        let c = if neg { &a + &b } else { &a - &b };
        if !c.is_zero() {
            out.coeffs.insert(z, c);
        }
    }
    Ok(out)
}

/// The acting algebra of a flag type: gl, osp or the periplectic algebra.
pub fn acting_algebra(f: &FlagType) -> Result<AlgebraPresentation, FieldError> {
    Ok(match f.kind {
        FlagKind::Plain => build_gl(f.m(), f.n())?,
        FlagKind::EvenIsotropic => build_osp(f.m(), f.n())?,
        FlagKind::OddIsotropic => build_pisp(f.m())?,
    })
}

fn validate_element(x: &SuperMatrix, f: &FlagType) -> Result<Parity, FieldError> {
    if x.rows() != f.m() + f.n() || x.row_parities() != x.col_parities() {
        return Err(FieldError::NotInAlgebra);
    }
    let p = x.element_parity().ok_or(FieldError::NotInAlgebra)?;
    if f.kind != FlagKind::Plain {
        let g = acting_algebra(f)?;
        let form = g.form.expect("isotropic algebras carry a form");
        if !check_invariance(x, &form)?.is_zero() {
            return Err(FieldError::NotInAlgebra);
        }
    }
    Ok(p)
}

/// Velocity of the action of `E + tX` on the chart, at `t = 0`.
///
/// For odd `X` the parameter is odd; moving it to the left of a chart
/// matrix negates the odd entries, hence the twist on `Z_s`.
pub fn fundamental_field_on(chart: &Chart, x: &SuperMatrix) -> Result<VectorField, FieldError> {
    let f = &chart.flag;
    let parity = validate_element(x, f)?;
    fundamental_field_unchecked(chart, x, parity)
}

pub(crate) fn fundamental_field_unchecked(
    chart: &Chart,
    x: &SuperMatrix,
    parity: Parity,
) -> Result<VectorField, FieldError> {
    let f = &chart.flag;
    let mut d = x.clone();
    let mut out = VectorField::zero(chart.index.clone(), parity);
    let positions = chart.coordinate_positions();
    let mut velocities = Vec::with_capacity(f.length());
    for (s, z) in chart.levels.iter().enumerate() {
        let w = d.mul(z).map_err(FlagError::from)?;
        let ds = w.select_rows(&chart.index.identity_rows(s + 1, f.k[s]));
        let zt = if parity.is_odd() { z.parity_twist() } else { z.clone() };
        let v = w.sub(&zt.mul(&ds).map_err(FlagError::from)?).map_err(FlagError::from)?;
        velocities.push(v);
        d = ds;
    }
    for (var, (s, i, j)) in positions {
        let c = velocities[s].get(i, j);
        if !c.is_zero() {
            out.coeffs.insert(var, c.clone());
        }
    }
    Ok(out)
}

/// `mu(X)` on chart `I` of `f`.
pub fn fundamental_field(x: &SuperMatrix, f: &FlagType, i: &ChartIndex) -> Result<VectorField, FieldError> {
    let chart = build_chart(f, i)?;
    fundamental_field_on(&chart, x)
}

/// Velocity at the eliminated entries agrees with the field applied to
/// their expressions in the free coordinates.
pub fn field_consistency(chart: &Chart, x: &SuperMatrix) -> Result<bool, FieldError> {
    let v = fundamental_field_on(chart, x)?;
    let parity = v.parity;
    let f = &chart.flag;
    let mut d = x.clone();
    let z = &chart.levels[0];
    let w = d.mul(z).map_err(FlagError::from)?;
    let ds = w.select_rows(&chart.index.identity_rows(1, f.k[0]));
    let zt = if parity.is_odd() { z.parity_twist() } else { z.clone() };
    let vel = w.sub(&zt.mul(&ds).map_err(FlagError::from)?).map_err(FlagError::from)?;
    d = ds;
    let _ = d;
    for i in 0..z.rows() {
        for j in 0..z.cols() {
            if v.apply(z.get(i, j)) != *vel.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Fields of every basis element on one chart.
pub fn basis_fields(g: &AlgebraPresentation, chart: &Chart) -> Result<Vec<VectorField>, FieldError> {
    for b in &g.basis {
        validate_element(&b.matrix, &chart.flag)?;
    }
    par::map(&g.basis, |b| fundamental_field_unchecked(chart, &b.matrix, b.parity))
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismFailure {
    pub pair: (String, String),
    pub difference: String,
}

/// Sign `e` in `[mu X, mu Y] = e mu[X, Y]`, by parity class of the pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassSigns {
    pub even_even: Option<i64>,
    pub even_odd: Option<i64>,
    pub odd_odd: Option<i64>,
}

impl ClassSigns {
    fn slot(&mut self, p: Parity, q: Parity) -> &mut Option<i64> {
        match (p.is_odd(), q.is_odd()) {
            (false, false) => &mut self.even_even,
            (true, true) => &mut self.odd_odd,
            _ => &mut self.even_odd,
        }
    }
}

/// Expected sign for fields defined by the velocity of `E + tX`, with an
/// odd parameter `t` to the left when `X` is odd: `-(-1)^{p(X)p(Y)}`.
/// Equivalently `tX -> -t mu(X)` is a homomorphism of the Grassmann
/// envelope.
pub fn expected_sign(p: Parity, q: Parity) -> i64 {
    if p.koszul(q) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub chart: String,
    pub pairs: usize,
    /// Signs seen on pairs with a nonzero bracket; `None` if a class never
    /// occurred or was not a multiple of the expected field.
    pub observed: ClassSigns,
    pub failures: Vec<HomomorphismFailure>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `sum_k c_k mu(b_k)` from sparse structure constants.
fn combine(fields: &[VectorField], chart: &ChartIndex, parity: Parity, coeffs: &[(usize, Rational)]) -> VectorField {
    let mut out = VectorField::zero(chart.clone(), parity);
    for (k, c) in coeffs {
        out = out.add(&fields[*k].scale(c)).expect("same chart");
    }
    out
}

/// Compare `[mu b_i, mu b_j]` with `e mu [b_i, b_j]` for all pairs `i <= j`,
/// `e` from [`expected_sign`], using the supplied structure constants for
/// the right-hand side.
pub fn check_homomorphism_with(
    g: &AlgebraPresentation,
    sc: &StructureConstants,
    chart: &Chart,
) -> Result<HomomorphismReport, FieldError> {
    let fields = basis_fields(g, chart)?;
    let n = g.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let results = par::map(&pairs, |&(i, j)| -> Result<(VectorField, VectorField), FieldError> {
        let lhs = field_bracket(&fields[i], &fields[j])?;
        let p = g.basis[i].parity + g.basis[j].parity;
        let rhs = combine(&fields, &chart.index, p, sc.get(&(i, j)).map_or(&[][..], Vec::as_slice));
        Ok((lhs, rhs))
    });
    let mut observed = ClassSigns::default();
    let mut mismatched = ClassSigns::default();
    let mut failures = Vec::new();
    for (&(i, j), r) in pairs.iter().zip(results) {
        let (lhs, rhs) = r?;
        let (p, q) = (g.basis[i].parity, g.basis[j].parity);
        if !rhs.is_zero() {
            let seen = if lhs == rhs {
                Some(1)
            } else if lhs == rhs.scale(&-Rational::one()) {
                Some(-1)
            } else {
                None
            };
            match (*observed.slot(p, q), seen) {
                (_, None) => *mismatched.slot(p, q) = Some(0),
                (None, s) => *observed.slot(p, q) = s,
                (Some(a), Some(b)) if a != b => *mismatched.slot(p, q) = Some(0),
                _ => {}
            }
        }
        let e = Rational::from_integer(expected_sign(p, q).into());
        let diff = lhs.sub(&rhs.scale(&e))?;
        if !diff.is_zero() {
            failures.push(HomomorphismFailure {
                pair: (g.basis[i].label.clone(), g.basis[j].label.clone()),
                difference: diff.to_string(),
            });
        }
    }
    for (o, m) in [
        (&mut observed.even_even, mismatched.even_even),
        (&mut observed.even_odd, mismatched.even_odd),
        (&mut observed.odd_odd, mismatched.odd_odd),
    ] {
        if m.is_some() {
            *o = None;
        }
    }
    Ok(HomomorphismReport {
        chart: chart.index.to_string(),
        pairs: pairs.len(),
        observed,
        failures,
    })
}

pub fn check_homomorphism(
    g: &AlgebraPresentation,
    f: &FlagType,
    i: &ChartIndex,
) -> Result<HomomorphismReport, FieldError> {
    let chart = build_chart(f, i)?;
    check_homomorphism_with(g, &g.structure_constants()?, &chart)
}

/// Coefficient-vector columns for a set of fields: (coordinate, monomial).
pub(crate) fn field_row(
    v: &VectorField,
    columns: &mut HashMap<(Var, Monomial), usize>,
) -> Vec<(usize, Rational)> {
    let mut row: Vec<(usize, Rational)> = Vec::new();
    for (z, p) in &v.coeffs {
        for (m, c) in p.terms() {
            let next = columns.len();
            let col = *columns.entry((*z, m.clone())).or_insert(next);
            row.push((col, c.clone()));
        }
    }
    row.sort_by_key(|(c, _)| *c);
    row
}

/// Basis of `{X in g : mu(X) = 0 on every supported chart}`.
pub fn kernel_of_action(g: &AlgebraPresentation, f: &FlagType) -> Result<Vec<SuperMatrix>, FieldError> {
    let n = g.dim();
    // transpose system: unknowns are the basis coefficients
    let mut columns_per_entry: HashMap<(usize, Var, Monomial), SparseRow> = HashMap::new();
    for (ci, idx) in enumerate_charts(f).iter().enumerate() {
        let chart = build_chart(f, idx)?;
        let fields = basis_fields(g, &chart)?;
        for (k, v) in fields.iter().enumerate() {
            for (z, p) in &v.coeffs {
                for (m, c) in p.terms() {
                    columns_per_entry
                        .entry((ci, *z, m.clone()))
                        .or_default()
                        .push((k, c.clone()));
                }
            }
        }
    }
    let mut ech = Echelon::new(n);
    let mut keys: Vec<_> = columns_per_entry.keys().cloned().collect();
    keys.sort();
    for key in keys {
        ech.insert(columns_per_entry.remove(&key).unwrap());
    }
    Ok(ech.nullspace().iter().map(|c| g.combine(c)).collect())
}

/// Superdimension of the span of all fundamental fields on chart `I`.
pub fn span_dimension(g: &AlgebraPresentation, f: &FlagType, i: &ChartIndex) -> Result<(usize, usize), FieldError> {
    let chart = build_chart(f, i)?;
    let fields = basis_fields(g, &chart)?;
    Ok(span_of(&fields))
}

pub(crate) fn span_of(fields: &[VectorField]) -> (usize, usize) {
    let mut dims = [0, 0];
    for parity in [Parity::Even, Parity::Odd] {
        let mut columns = HashMap::new();
        let mut ech = Echelon::new(0);
        for v in fields.iter().filter(|v| v.parity == parity) {
            let row = field_row(v, &mut columns);
            ech.grow(columns.len());
            ech.insert(row);
        }
        dims[usize::from(parity.is_odd())] = ech.rank();
    }
    (dims[0], dims[1])
}

/// Whether `d/dv` lies in the span of the fundamental fields on chart `I`.
pub fn coordinate_field_membership(f: &FlagType, i: &ChartIndex, v: Var) -> Result<bool, FieldError> {
    let chart = build_chart(f, i)?;
    if !chart.coords.contains(&v) {
        return Err(FlagError::UnsupportedChart(format!("{v} is not a free coordinate of {i}")).into());
    }
    let g = acting_algebra(f)?;
    let space = FieldSpace::new(chart.index.clone(), basis_fields(&g, &chart)?);
    Ok(space.contains(&VectorField::coordinate(chart.index.clone(), v)))
}

/// Human-readable rendering of a basis coefficient vector.
pub fn describe_combination(g: &AlgebraPresentation, c: &[Rational]) -> String {
    let parts: Vec<String> = c
        .iter()
        .zip(&g.basis)
        .filter(|(v, _)| !v.is_zero())
        .map(|(v, b)| format!("{}*{}", rational::to_string(v), b.label))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
