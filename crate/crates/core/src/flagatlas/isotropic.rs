//! Charts on isotropic flag supermanifolds of maximal type.
//!
//! The distinguished chart is written down directly; other supported
//! charts are its images under signed permutation matrices that preserve
//! the form, renormalised so that the identity block sits at the new rows.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::charts::{combinations, generic_level, generic_var};
use super::{FlagError, FlagKind, FlagType, LevelIndex};
use crate::liesuperalg::{gamma, upsilon};
use crate::supercalc::rational::int;
use crate::supercalc::{Block, SuperMatrix, SuperPolynomial, Var};

/// Level-1 chart of an isotropic flag with the isotropy equations solved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicChart {
    pub index: LevelIndex,
    /// Generic level-1 matrix before elimination.
    pub base: SuperMatrix,
    /// Level-1 matrix in the free coordinates.
    pub matrix: SuperMatrix,
    pub free: Vec<Var>,
    pub bindings: BTreeMap<Var, SuperPolynomial>,
}

/// A form-preserving signed permutation of the ambient basis, acting on
/// rows: row `i` of `g Z` is `sign * Z[src]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitElement {
    pub index: LevelIndex,
    pub rows: Vec<(usize, i64)>,
    /// Whether `g` lies in the identity component of the group.
    pub identity_component: bool,
}

impl OrbitElement {
    /// The numeric matrix of `g`.
    pub fn matrix(&self, f: &FlagType) -> SuperMatrix {
        let mut g = SuperMatrix::square(f.k[0], f.l[0]);
        for (i, &(src, sign)) in self.rows.iter().enumerate() {
            g.set(i, src, SuperPolynomial::int(sign));
        }
        g
    }
}

fn require_supported(f: &FlagType) -> Result<(), FlagError> {
    match f.kind {
        FlagKind::Plain => Err(FlagError::KindMismatch),
        FlagKind::EvenIsotropic if f.k[0] % 2 == 1 => Err(FlagError::UnsupportedChart(
            "charts for odd orthogonal dimension are not implemented".into(),
        )),
        _ => Ok(()),
    }
}

pub fn distinguished_index(f: &FlagType) -> Result<LevelIndex, FlagError> {
    require_supported(f)?;
    let (k1, l1) = (f.k[1], f.l[1]);
    Ok(match f.kind {
        FlagKind::EvenIsotropic => LevelIndex {
            even: (k1..2 * k1).collect(),
            odd: (l1..2 * l1).collect(),
        },
        _ => LevelIndex {
            even: (l1..k1 + l1).collect(),
            odd: (0..l1).collect(),
        },
    })
}

/// Distinguished chart: generic matrix, bindings of the eliminated entries
/// and the free coordinates.
fn distinguished(f: &FlagType) -> Result<(SuperMatrix, BTreeMap<Var, SuperPolynomial>, Vec<Var>), FlagError> {
    let lv = distinguished_index(f)?;
    let (z, vars) = generic_level(f, &lv, 1);
    let (k1, l1) = (f.k[1], f.l[1]);
    let v = |b: Block, r: usize, c: usize| Var::new(1, b, r, c);
    let p = |b: Block, r: usize, c: usize| SuperPolynomial::var(v(b, r, c));
    let mut bind = BTreeMap::new();
    if f.kind == FlagKind::EvenIsotropic {
        // X skew, Y symmetric, Eta = -Xi^t
        for i in 0..k1 {
            bind.insert(v(Block::X, i, i), SuperPolynomial::zero());
            for j in 0..i {
                bind.insert(v(Block::X, i, j), -p(Block::X, j, i));
            }
        }
        for i in 0..l1 {
            for j in 0..i {
                bind.insert(v(Block::Y, i, j), p(Block::Y, j, i));
            }
        }
        for i in 0..l1 {
            for j in 0..k1 {
                bind.insert(v(Block::Eta, i, j), -p(Block::Xi, j, i));
            }
        }
    } else {
        // Xi symmetric, Eta skew, lower right block = -X^t
        for i in 0..l1 {
            for j in 0..i {
                bind.insert(v(Block::Xi, i, j), p(Block::Xi, j, i));
            }
        }
        for i in 0..k1 {
            bind.insert(v(Block::Eta, l1 + i, i), SuperPolynomial::zero());
            for j in 0..i {
                bind.insert(v(Block::Eta, l1 + i, j), -p(Block::Eta, l1 + j, i));
            }
            for j in 0..l1 {
                bind.insert(v(Block::Y, l1 + i, j), -p(Block::X, j, i));
            }
        }
    }
    let free: Vec<Var> = vars.into_iter().filter(|x| !bind.contains_key(x)).collect();
    Ok((z, bind, free))
}

/// Supported level-1 charts: images of the distinguished chart under
/// form-preserving signed permutations. With `all_components` false only
/// the component of the distinguished chart is returned.
pub fn orbit_charts(f: &FlagType, all_components: bool) -> Result<Vec<OrbitElement>, FlagError> {
    require_supported(f)?;
    let (m, n) = (f.k[0], f.l[0]);
    let (k1, l1) = (f.k[1], f.l[1]);
    let mut out = Vec::new();
    if f.kind == FlagKind::EvenIsotropic {
        for omask in 0u32..(1 << k1) {
            let component = omask.count_ones() % 2 == 0;
            if !all_components && !component {
                continue;
            }
            for smask in 0u32..(1 << l1) {
                let mut rows: Vec<(usize, i64)> = (0..m + n).map(|i| (i, 1)).collect();
                let mut even = Vec::new();
                let mut odd = Vec::new();
                for i in 0..k1 {
                    if omask >> i & 1 == 1 {
                        rows[i] = (k1 + i, 1);
                        rows[k1 + i] = (i, 1);
                        even.push(i);
                    } else {
                        even.push(k1 + i);
                    }
                }
                for j in 0..l1 {
                    // e_j -> e_{j+l1}, e_{j+l1} -> -e_j
                    if smask >> j & 1 == 1 {
                        rows[m + j] = (m + l1 + j, -1);
                        rows[m + l1 + j] = (m + j, 1);
                        odd.push(j);
                    } else {
                        odd.push(l1 + j);
                    }
                }
                even.sort_unstable();
                odd.sort_unstable();
                out.push(OrbitElement {
                    index: LevelIndex { even, odd },
                    rows,
                    identity_component: component,
                });
            }
        }
    } else {
        for s in combinations(n, k1) {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            let t: Vec<usize> = (0..n).filter(|i| !set.contains(i)).collect();
            // pi maps l1.. onto s and 0..l1 onto t, both order preserving
            let mut pi = vec![0; n];
            for (a, &x) in s.iter().enumerate() {
                pi[l1 + a] = x;
            }
            for (b, &x) in t.iter().enumerate() {
                pi[b] = x;
            }
            let mut rows = vec![(0, 1); 2 * n];
            for r in 0..n {
                rows[pi[r]] = (r, 1);
                rows[n + pi[r]] = (n + r, 1);
            }
            out.push(OrbitElement {
                index: LevelIndex { even: s, odd: t },
                rows,
                identity_component: true,
            });
        }
    }
    out.sort_by(|a, b| a.index.cmp(&b.index));
    Ok(out)
}

/// Level-1 chart at index `lv` with the isotropy equations solved.
pub fn reduce_isotropic_chart(f: &FlagType, lv: &LevelIndex) -> Result<IsotropicChart, FlagError> {
    let orbit = orbit_charts(f, true)?;
    let g = orbit
        .into_iter()
        .find(|o| &o.index == lv)
        .ok_or_else(|| FlagError::UnsupportedChart(format!("level-1 index {lv:?} is outside the orbit")))?;
    let (tmpl, tbind, tfree) = distinguished(f)?;
    let tmpl_red = tmpl.substitute(&tbind.iter().map(|(k, v)| (*k, v.clone())).collect())?;
    let (base, _) = generic_level(f, lv, 1);

    // where the identity row of each template column lands
    let k0 = f.k[0];
    let tident = distinguished_index(f)?.identity_rows(k0);
    let mut target_of_src = vec![(0usize, 0i64); g.rows.len()];
    for (t, &(src, sign)) in g.rows.iter().enumerate() {
        target_of_src[src] = (t, sign);
    }
    let ident = lv.identity_rows(k0);
    // chart column a comes from template column col_src[a] with sign
    let mut col_src = vec![(0usize, 0i64); ident.len()];
    for (c, &r) in tident.iter().enumerate() {
        let (t, sign) = target_of_src[r];
        let a = ident.iter().position(|&x| x == t).expect("orbit maps identity rows onto the index");
        col_src[a] = (c, sign);
    }

    let free_set: BTreeSet<Var> = tfree.iter().copied().collect();
    let mut rename: HashMap<Var, SuperPolynomial> = HashMap::new();
    let mut raw = base.clone();
    for i in 0..base.rows() {
        let (src, rs) = g.rows[i];
        for a in 0..base.cols() {
            let (c, cs) = col_src[a];
            let sign = rs * cs;
            raw.set(i, a, tmpl_red.get(src, c).scale(&int(sign)));
            let tv = generic_var(&tmpl, 1, src, c);
            if free_set.contains(&tv) && !ident.contains(&i) {
                rename.insert(tv, SuperPolynomial::var(generic_var(&base, 1, i, a)).scale(&int(sign)));
            }
        }
    }
    let matrix = raw.substitute(&rename)?;
    let mut free = Vec::new();
    let mut bindings = BTreeMap::new();
    for i in 0..base.rows() {
        if ident.contains(&i) {
            continue;
        }
        for a in 0..base.cols() {
            let v = generic_var(&base, 1, i, a);
            let e = matrix.get(i, a);
            if *e == SuperPolynomial::var(v) {
                free.push(v);
            } else {
                bindings.insert(v, e.clone());
            }
        }
    }
    free.sort();
    debug_assert_eq!(free.len(), tfree.len());
    Ok(IsotropicChart {
        index: lv.clone(),
        base,
        matrix,
        free,
        bindings,
    })
}

/// `Z^{ST} F Z` for the form `F` of the isotropic flag type.
pub fn isotropy_residual(f: &FlagType, z1: &SuperMatrix) -> Result<SuperMatrix, FlagError> {
    let form = match f.kind {
        FlagKind::Plain => return Err(FlagError::KindMismatch),
        FlagKind::EvenIsotropic => gamma(f.k[0], f.l[0] / 2),
        FlagKind::OddIsotropic => upsilon(f.k[0]),
    };
    Ok(z1.supertranspose()?.mul(&form.matrix)?.mul(z1)?)
}
