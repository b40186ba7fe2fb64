use std::fmt;

use num_traits::{One, Zero};

use super::linalg::invert_dense;
use super::poly::SuperPolynomial;
use super::rational::Rational;
use super::var::Parity;
use super::CalcError;

/// Dense matrix over the supercommutative polynomial ring, with a parity
/// attached to every row and column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperMatrix {
    row_parities: Vec<Parity>,
    col_parities: Vec<Parity>,
    entries: Vec<SuperPolynomial>,
}

/// `[Even; even] ++ [Odd; odd]`.
pub fn block_parities(even: usize, odd: usize) -> Vec<Parity> {
    let mut v = vec![Parity::Even; even];
    v.extend(std::iter::repeat(Parity::Odd).take(odd));
    v
}

impl SuperMatrix {
    pub fn zeros(row_parities: Vec<Parity>, col_parities: Vec<Parity>) -> Self {
        let n = row_parities.len() * col_parities.len();
        Self {
            row_parities,
            col_parities,
            entries: vec![SuperPolynomial::zero(); n],
        }
    }

    pub fn identity(parities: Vec<Parity>) -> Self {
        let mut m = Self::zeros(parities.clone(), parities);
        for i in 0..m.rows() {
            m.set(i, i, SuperPolynomial::one());
        }
        m
    }

    /// Square matrix over `C^{m|n}` with even indices first.
    pub fn square(m: usize, n: usize) -> Self {
        let p = block_parities(m, n);
        Self::zeros(p.clone(), p)
    }

    pub fn from_rationals(
        row_parities: Vec<Parity>,
        col_parities: Vec<Parity>,
        rows: &[Vec<Rational>],
    ) -> Self {
        let mut m = Self::zeros(row_parities, col_parities);
        assert_eq!(rows.len(), m.rows());
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), m.cols());
            for (j, c) in r.iter().enumerate() {
                m.set(i, j, SuperPolynomial::constant(c.clone()));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.row_parities.len()
    }

    pub fn cols(&self) -> usize {
        self.col_parities.len()
    }

    pub fn row_parities(&self) -> &[Parity] {
        &self.row_parities
    }

    pub fn col_parities(&self) -> &[Parity] {
        &self.col_parities
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperPolynomial {
        &self.entries[i * self.cols() + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut SuperPolynomial {
        let c = self.cols();
        &mut self.entries[i * c + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SuperPolynomial) {
        let c = self.cols();
        self.entries[i * c + j] = p;
    }

    /// Parity of the slot `(i, j)`.
    pub fn slot_parity(&self, i: usize, j: usize) -> Parity {
        self.row_parities[i] + self.col_parities[j]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SuperPolynomial)> {
        let c = self.cols();
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, p)| (k / c, k % c, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SuperPolynomial::is_zero)
    }

    /// Every entry has the parity of its slot.
    pub fn is_homogeneous_layout(&self) -> bool {
        self.entries()
            .all(|(i, j, p)| p.parity().fits(self.slot_parity(i, j)))
    }

    /// Parity of a numeric (constant) matrix regarded as an element of
    /// `gl(m|n)`: even if supported on diagonal blocks, odd if supported
    /// on off-diagonal blocks. `None` for mixed or non-numeric input;
    /// the zero matrix counts as even.
    pub fn element_parity(&self) -> Option<Parity> {
        let mut seen = [false, false];
        for (i, j, p) in self.entries() {
            if p.is_zero() {
                continue;
            }
            if p.terms().any(|(m, _)| !m.is_one()) {
                return None;
            }
            seen[usize::from(self.slot_parity(i, j).is_odd())] = true;
        }
        match seen {
            [_, false] => Some(Parity::Even),
            [false, true] => Some(Parity::Odd),
            [true, true] => None,
        }
    }

    pub fn is_block_sorted(&self) -> bool {
        let sorted = |p: &[Parity]| p.windows(2).all(|w| w[0] <= w[1]);
        sorted(&self.row_parities) && sorted(&self.col_parities)
    }

    pub fn mul(&self, other: &SuperMatrix) -> Result<SuperMatrix, CalcError> {
        if self.col_parities != other.row_parities {
            return Err(CalcError::ShapeMismatch(format!(
                "{}x{} times {}x{} (or column/row parities differ)",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        let mut out = SuperMatrix::zeros(self.row_parities.clone(), other.col_parities.clone());
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols() {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    out.get_mut(i, j).add_assign_ref(&prod);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SuperMatrix) -> Result<SuperMatrix, CalcError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            e.add_assign_ref(o);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SuperMatrix) -> Result<SuperMatrix, CalcError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            e.sub_assign_ref(o);
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &SuperMatrix) -> Result<(), CalcError> {
        if self.row_parities != other.row_parities || self.col_parities != other.col_parities {
            return Err(CalcError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> SuperMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.scale(c);
        }
        out
    }

    pub fn map(&self, f: impl Fn(&SuperPolynomial) -> SuperPolynomial) -> SuperMatrix {
        SuperMatrix {
            row_parities: self.row_parities.clone(),
            col_parities: self.col_parities.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Negate the entries in odd slots. Moving an odd scalar from the right
    /// of this matrix to its left produces exactly this twist.
    pub fn parity_twist(&self) -> SuperMatrix {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if self.slot_parity(i, j).is_odd() {
                    let e = out.get_mut(i, j);
                    *e = -std::mem::take(e);
                }
            }
        }
        out
    }

    /// Block supertranspose `(A B; C D) -> (A^T C^T; -B^T D^T)`.
    pub fn supertranspose(&self) -> Result<SuperMatrix, CalcError> {
        if !self.is_block_sorted() {
            return Err(CalcError::ShapeMismatch(
                "supertranspose needs even rows/columns first".into(),
            ));
        }
        let mut out = SuperMatrix::zeros(self.col_parities.clone(), self.row_parities.clone());
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                let e = self.get(j, i);
                let neg = out.row_parities[i].is_odd() && !out.col_parities[j].is_odd();
                out.set(i, j, if neg { -e } else { e.clone() });
            }
        }
        Ok(out)
    }

    /// Ordinary transpose (no signs).
    pub fn transpose(&self) -> SuperMatrix {
        let mut out = SuperMatrix::zeros(self.col_parities.clone(), self.row_parities.clone());
        for (i, j, e) in self.entries() {
            out.set(j, i, e.clone());
        }
        out
    }

    /// Rows with the given indices, in order.
    pub fn select_rows(&self, idx: &[usize]) -> SuperMatrix {
        let mut out = SuperMatrix::zeros(
            idx.iter().map(|&i| self.row_parities[i]).collect(),
            self.col_parities.clone(),
        );
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols() {
                out.set(r, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Replace every entry by the result of a substitution.
    pub fn substitute(
        &self,
        bindings: &std::collections::HashMap<super::var::Var, SuperPolynomial>,
    ) -> Result<SuperMatrix, CalcError> {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.substitute(bindings)?;
        }
        Ok(out)
    }

    /// Split into the numeric core (constant terms) and the remainder.
    pub fn numeric_split(&self) -> (Vec<Vec<Rational>>, SuperMatrix) {
        let mut core = vec![vec![Rational::zero(); self.cols()]; self.rows()];
        let mut rest = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let c = self.get(i, j).constant_term();
                if !c.is_zero() {
                    let e = rest.get_mut(i, j);
                    e.add_term(super::monomial::Monomial::one(), -c.clone());
                    core[i][j] = c;
                }
            }
        }
        (core, rest)
    }

    /// Exact inverse of a matrix whose non-constant part is nilpotent.
    pub fn inverse(&self) -> Result<SuperMatrix, CalcError> {
        if self.row_parities != self.col_parities {
            return Err(CalcError::ShapeMismatch(
                "inverse needs a square matrix with matching parities".into(),
            ));
        }
        let (core, rest) = self.numeric_split();
        if rest.entries.iter().any(SuperPolynomial::has_even_vars) {
            return Err(CalcError::NonNilpotentRemainder);
        }
        let core_inv = invert_dense(&core).ok_or(CalcError::NotNumericCore)?;
        let n_inv = SuperMatrix::from_rationals(
            self.row_parities.clone(),
            self.col_parities.clone(),
            &core_inv,
        );
        // (N + R)^{-1} = sum_j (-N^{-1} R)^j N^{-1}
        let step = n_inv.mul(&rest)?.scale(&-Rational::one());
        let mut term = n_inv.clone();
        let mut acc = n_inv;
        loop {
            term = step.mul(&term)?;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            f.write_str("[")?;
            for j in 0..self.cols() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::poly::PolyParity;
    use crate::supercalc::rational::{frac, int};
    use crate::supercalc::var::Var;

    fn xi(i: usize) -> SuperPolynomial {
        SuperPolynomial::var(Var::odd(i))
    }

    fn numeric(m: usize, n: usize, rows: &[&[i64]]) -> SuperMatrix {
        let p = block_parities(m, n);
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        SuperMatrix::from_rationals(p.clone(), p, &rows)
    }

    #[test]
    fn identity_is_neutral() {
        let mut m = SuperMatrix::square(1, 1);
        m.set(0, 0, SuperPolynomial::var(Var::even(1)));
        m.set(0, 1, xi(1));
        m.set(1, 0, xi(2));
        m.set(1, 1, SuperPolynomial::int(3));
        let e = SuperMatrix::identity(block_parities(1, 1));
        assert_eq!(e.mul(&m).unwrap(), m);
    }

    #[test]
    fn odd_row_times_odd_column_is_even() {
        let mut r = SuperMatrix::zeros(vec![Parity::Even], vec![Parity::Odd, Parity::Odd]);
        r.set(0, 0, xi(1));
        r.set(0, 1, xi(2));
        let mut c = SuperMatrix::zeros(vec![Parity::Odd, Parity::Odd], vec![Parity::Even]);
        c.set(0, 0, xi(3));
        c.set(1, 0, xi(4));
        let p = r.mul(&c).unwrap();
        assert!(p.is_homogeneous_layout());
        assert_eq!(p.get(0, 0).parity(), PolyParity::Even);
    }

    #[test]
    fn shape_mismatch() {
        let a = SuperMatrix::square(2, 0);
        let b = SuperMatrix::square(1, 1);
        assert!(matches!(a.mul(&b), Err(CalcError::ShapeMismatch(_))));
    }

    #[test]
    fn supertranspose_examples() {
        let e = SuperMatrix::identity(block_parities(2, 2));
        assert_eq!(e.supertranspose().unwrap(), e);

        let mut odd = SuperMatrix::square(1, 1);
        odd.set(0, 1, SuperPolynomial::int(2));
        odd.set(1, 0, SuperPolynomial::int(5));
        let twice = odd.supertranspose().unwrap().supertranspose().unwrap();
        assert_eq!(twice, odd.scale(&int(-1)));

        let m = numeric(2, 0, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.supertranspose().unwrap(), m.transpose());
    }

    #[test]
    fn inverse_examples() {
        let d = numeric(2, 0, &[&[2, 0], &[0, 3]]);
        let inv = d.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &SuperPolynomial::constant(frac(1, 2)));
        assert_eq!(inv.get(1, 1), &SuperPolynomial::constant(frac(1, 3)));

        let n = xi(1).mul(&xi(2));
        let e = SuperMatrix::identity(block_parities(2, 0));
        let m = e.map(|p| p + &p.mul(&n));
        let expected = e.map(|p| p - &p.mul(&n));
        assert_eq!(m.inverse().unwrap(), expected);

        let zero = SuperMatrix::square(1, 1).map(|_| xi(1));
        assert!(matches!(zero.inverse(), Err(CalcError::NotNumericCore)));

        let mut ev = SuperMatrix::identity(block_parities(1, 0));
        ev.set(0, 0, &SuperPolynomial::one() + &SuperPolynomial::var(Var::even(1)));
        assert!(matches!(ev.inverse(), Err(CalcError::NonNilpotentRemainder)));
    }

    #[test]
    fn gamma_block_form_inverts() {
        // Gram matrix of the even symmetric form for m = 2, n = 1 (sizes 2|2)
        let g = numeric(2, 2, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        let inv = g.inverse().unwrap();
        let expected = numeric(2, 2, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        assert_eq!(inv, expected);
        assert_eq!(g.mul(&inv).unwrap(), SuperMatrix::identity(block_parities(2, 2)));
    }
}
