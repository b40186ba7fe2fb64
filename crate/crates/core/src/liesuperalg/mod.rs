//! Matrix Lie superalgebras gl(m|n), osp(m|2n) and the periplectic
//! algebra, given by their block forms.

mod blocks;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::supercalc::linalg::{Echelon, SparseRow};
use crate::supercalc::rational::{self, Rational};
use crate::supercalc::{block_parities, CalcError, Parity, SuperMatrix, SuperPolynomial};

pub use blocks::{build_gl, build_osp, build_pisp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error("element is not parity-homogeneous")]
    NonHomogeneous,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Gl,
    Osp,
    Pisp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    EvenSymmetric,
    OddSkew,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearFormMatrix {
    pub kind: FormKind,
    pub matrix: SuperMatrix,
}

/// One basis element: a free parameter of the block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub parity: Parity,
    pub matrix: SuperMatrix,
    // entry that only this basis element touches, with its value
    pivot: (usize, usize, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub kind: AlgebraKind,
    pub params: (usize, usize),
    pub basis: Vec<BasisElement>,
    pub form: Option<BilinearFormMatrix>,
    even: usize,
    odd: usize,
}

/// Sparse structure constants: `[b_i, b_j] = sum_k c_k b_k`.
pub type StructureConstants = BTreeMap<(usize, usize), Vec<(usize, Rational)>>;

impl AlgebraPresentation {
    pub(crate) fn new(
        kind: AlgebraKind,
        params: (usize, usize),
        even: usize,
        odd: usize,
        basis: Vec<BasisElement>,
        form: Option<BilinearFormMatrix>,
    ) -> Self {
        Self {
            kind,
            params,
            basis,
            form,
            even,
            odd,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size `(even, odd)` of the underlying vector space `C^{p|q}`.
    pub fn vector_superdim(&self) -> (usize, usize) {
        (self.even, self.odd)
    }

    pub fn zero_element(&self) -> SuperMatrix {
        SuperMatrix::square(self.even, self.odd)
    }

    /// Coordinates of `x` in the basis, or `None` if `x` is not in the span.
    pub fn coordinates(&self, x: &SuperMatrix) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .basis
            .iter()
            .map(|b| {
                let (i, j, v) = b.pivot;
                x.get(i, j).constant_term() / rational::int(v)
            })
            .collect();
        (self.combine(&coords) == *x).then_some(coords)
    }

    /// `sum_k c_k b_k`.
    pub fn combine(&self, coeffs: &[Rational]) -> SuperMatrix {
        let mut out = self.zero_element();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (i, j, p) in b.matrix.entries() {
                if !p.is_zero() {
                    out.get_mut(i, j).add_assign_ref(&p.scale(c));
                }
            }
        }
        out
    }

    pub fn structure_constants(&self) -> Result<StructureConstants, AlgebraError> {
        let mut out = BTreeMap::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let br = bracket(&self.basis[i].matrix, &self.basis[j].matrix)?;
                let c = self.coordinates(&br).ok_or_else(|| {
                    AlgebraError::InvalidParameters(format!(
                        "bracket of {} and {} leaves the algebra",
                        self.basis[i].label, self.basis[j].label
                    ))
                })?;
                let sparse: Vec<(usize, Rational)> = c
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                if !sparse.is_empty() {
                    out.insert((i, j), sparse);
                }
            }
        }
        Ok(out)
    }

    pub fn dump(&self) -> Result<AlgebraDump, AlgebraError> {
        let (even, odd) = superdimension(self);
        let basis = self
            .basis
            .iter()
            .map(|b| BasisDump {
                label: b.label.clone(),
                parity: b.parity,
                entries: b
                    .matrix
                    .entries()
                    .filter(|(_, _, p)| !p.is_zero())
                    .map(|(i, j, p)| (i, j, rational::to_string(&p.constant_term())))
                    .collect(),
            })
            .collect();
        let structure_constants = self
            .structure_constants()?
            .into_iter()
            .map(|((i, j), c)| StructureDump {
                i,
                j,
                coeffs: c
                    .into_iter()
                    .map(|(k, v)| (k, rational::to_string(&v)))
                    .collect(),
            })
            .collect();
        Ok(AlgebraDump {
            name: self.kind,
            params: self.params,
            superdimension: (even, odd),
            basis,
            structure_constants,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraDump {
    pub name: AlgebraKind,
    pub params: (usize, usize),
    pub superdimension: (usize, usize),
    pub basis: Vec<BasisDump>,
    pub structure_constants: Vec<StructureDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisDump {
    pub label: String,
    pub parity: Parity,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureDump {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, String)>,
}

/// Graded commutator `XY - (-1)^{p(X)p(Y)} YX` of numeric matrices.
pub fn bracket(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix, AlgebraError> {
    let px = x.element_parity().ok_or(AlgebraError::NonHomogeneous)?;
    let py = y.element_parity().ok_or(AlgebraError::NonHomogeneous)?;
    let xy = x.mul(y)?;
    let yx = y.mul(x)?;
    Ok(if px.koszul(py) { xy.add(&yx)? } else { xy.sub(&yx)? })
}

/// Basis of the center, as matrices.
pub fn center(g: &AlgebraPresentation) -> Result<Vec<SuperMatrix>, AlgebraError> {
    let n = g.dim();
    let mut ech = Echelon::new(n);
    // column k of the system holds [b_k, b_j] for every j
    let mut brackets = Vec::with_capacity(n);
    for bk in &g.basis {
        let row: Vec<SuperMatrix> = g
            .basis
            .iter()
            .map(|bj| bracket(&bk.matrix, &bj.matrix))
            .collect::<Result<_, _>>()?;
        brackets.push(row);
    }
    let (p, q) = g.vector_superdim();
    let size = p + q;
    for j in 0..n {
        for a in 0..size {
            for b in 0..size {
                let row: SparseRow = (0..n)
                    .filter_map(|k| {
                        let v = brackets[k][j].get(a, b).constant_term();
                        (!v.is_zero()).then_some((k, v))
                    })
                    .collect();
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    Ok(ech.nullspace().iter().map(|c| g.combine(c)).collect())
}

/// Sign applied to `X^{ST}` in the linearised invariance condition, per
/// parity of `X`. Chosen so that every block-form basis element of osp and
/// the periplectic algebra has zero residual.
pub fn invariance_sign(_p: Parity) -> Rational {
    Rational::one()
}

/// Residual `s X^{ST} F + F X` of the linearised invariance condition.
pub fn check_invariance(
    x: &SuperMatrix,
    form: &BilinearFormMatrix,
) -> Result<SuperMatrix, AlgebraError> {
    let p = x.element_parity().ok_or(AlgebraError::NonHomogeneous)?;
    invariance_residual(x, form, &invariance_sign(p))
}

/// Residual with an explicit sign on the supertransposed term.
pub fn invariance_residual(
    x: &SuperMatrix,
    form: &BilinearFormMatrix,
    sign: &Rational,
) -> Result<SuperMatrix, AlgebraError> {
    let st = x.supertranspose()?.scale(sign);
    Ok(st.mul(&form.matrix)?.add(&form.matrix.mul(x)?)?)
}

pub fn superdimension(g: &AlgebraPresentation) -> (usize, usize) {
    let odd = g.basis.iter().filter(|b| b.parity.is_odd()).count();
    (g.dim() - odd, odd)
}

/// Gram matrix of the even symmetric form on `C^{m|2n}`.
pub fn gamma(m: usize, n: usize) -> BilinearFormMatrix {
    let s = m / 2;
    let mut g = SuperMatrix::square(m, 2 * n);
    for i in 0..s {
        g.set(i, s + i, SuperPolynomial::one());
        g.set(s + i, i, SuperPolynomial::one());
    }
    if m % 2 == 1 {
        g.set(2 * s, 2 * s, SuperPolynomial::one());
    }
    for i in 0..n {
        g.set(m + i, m + n + i, SuperPolynomial::one());
        g.set(m + n + i, m + i, SuperPolynomial::int(-1));
    }
    BilinearFormMatrix {
        kind: FormKind::EvenSymmetric,
        matrix: g,
    }
}

/// Gram matrix of the odd skew form on `C^{n|n}`.
pub fn upsilon(n: usize) -> BilinearFormMatrix {
    let mut g = SuperMatrix::square(n, n);
    for i in 0..n {
        g.set(i, n + i, SuperPolynomial::one());
        g.set(n + i, i, SuperPolynomial::one());
    }
    BilinearFormMatrix {
        kind: FormKind::OddSkew,
        matrix: g,
    }
}

/// Elementary matrix `E_{ab}` in `gl(m|n)`.
pub fn elementary(m: usize, n: usize, a: usize, b: usize) -> SuperMatrix {
    let p = block_parities(m, n);
    let mut e = SuperMatrix::zeros(p.clone(), p);
    e.set(a, b, SuperPolynomial::one());
    e
}


/// Triples of basis indices where the graded Jacobi identity fails for
/// the given structure constants.
pub fn jacobi_defects(g: &AlgebraPresentation, sc: &StructureConstants) -> Vec<(usize, usize, usize)> {
    let d = g.dim();
    let par: Vec<Parity> = g.basis.iter().map(|b| b.parity).collect();
    // [b_a, sum_l c_l b_l] as a dense vector
    let act = |a: usize, v: &BTreeMap<usize, Rational>, out: &mut BTreeMap<usize, Rational>, sign: &Rational| {
        for (l, c) in v {
            if let Some(row) = sc.get(&(a, *l)) {
                for (m, e) in row {
                    *out.entry(*m).or_insert_with(Rational::zero) += sign * c * e;
                }
            }
        }
    };
    let br = |a: usize, b: usize| -> BTreeMap<usize, Rational> {
        sc.get(&(a, b)).map(|r| r.iter().cloned().collect()).unwrap_or_default()
    };
    let sgn = |a: usize, b: usize| if par[a].koszul(par[b]) { -Rational::one() } else { Rational::one() };
    let per_i = crate::par::map_range(d, |x| {
        let mut bad = Vec::new();
        for y in 0..d {
            for z in 0..d {
                let mut acc = BTreeMap::new();
                act(x, &br(y, z), &mut acc, &sgn(x, z));
                act(y, &br(z, x), &mut acc, &sgn(y, x));
                act(z, &br(x, y), &mut acc, &sgn(z, y));
                if acc.values().any(|v| !v.is_zero()) {
                    bad.push((x, y, z));
                }
            }
        }
        bad
    });
    per_i.into_iter().flatten().collect()
}
