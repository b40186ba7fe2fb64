//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Gauss-Jordan inverse of a dense square matrix, `None` if singular.
pub fn invert_dense(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "matrix is not square");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in &mut m[col] {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (src, dst) = if r < col {
                    let (lo, hi) = m.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = m.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Sparse row, strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incremental row echelon form for sparse rational rows.
///
/// Rows are kept with leading coefficient one. Inserting a row reduces it
/// against the current pivots; a row that reduces to zero is dependent.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &SparseRow, f: &Rational, piv: &SparseRow) -> SparseRow {
    // row - f * piv
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j == piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i == row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((piv[j].0, -(f * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - f * &piv[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Widen the column range; existing rows are unaffected.
    pub fn grow(&mut self, ncols: usize) {
        self.ncols = self.ncols.max(ncols);
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Reduce a row against the pivots without storing it.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.len() {
            let (c, ref v) = row[k];
            if let Some(p) = self.pivots.get(&c) {
                let f = v.clone();
                let reduced = axpy(&row[k..].to_vec(), &f, p);
                row.truncate(k);
                row.extend(reduced);
            } else {
                k += 1;
            }
        }
        row
    }

    /// Insert a row. Returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        let mut row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        loop {
            let Some((c, v)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, &v, p),
                None => {
                    let inv = v.recip();
                    for (_, x) in &mut row {
                        *x *= &inv;
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
    }

    /// Basis of the solution space of `A x = 0`, one vector per free
    /// column, in dense form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        // back substitution to reduced form
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&c, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let (cc, ref v) = r[k];
                if let Some(p) = reduced.get(&cc) {
                    let f = v.clone();
                    let tail = axpy(&r[k..].to_vec(), &f, p);
                    r.truncate(k);
                    r.extend(tail);
                } else {
                    k += 1;
                }
            }
            reduced.insert(c, r);
        }
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (&c, row) in &reduced {
                    if let Ok(pos) = row.binary_search_by_key(&f, |(k, _)| *k) {
                        v[c] = -row[pos].1.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank of a dense matrix.
pub fn rank_dense(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(to_sparse(r));
    }
    e.rank()
}

pub fn to_sparse(r: &[Rational]) -> SparseRow {
    r.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = invert_dense(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3).map(|k| &a[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { int(1) } else { int(0) });
            }
        }
        assert!(invert_dense(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        assert_eq!(rank_dense(&a), 2);
        let mut e = Echelon::new(4);
        for r in &a {
            e.insert(to_sparse(r));
        }
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &a {
                let s: Rational = r.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }
}
