use super::{gamma, upsilon, AlgebraError, AlgebraKind, AlgebraPresentation, BasisElement};
use crate::supercalc::{Parity, SuperMatrix, SuperPolynomial};

struct Builder {
    even: usize,
    odd: usize,
    basis: Vec<BasisElement>,
}

impl Builder {
    fn new(even: usize, odd: usize) -> Self {
        Self {
            even,
            odd,
            basis: Vec::new(),
        }
    }

    /// One free parameter; the first entry is its pivot.
    fn param(&mut self, label: String, entries: &[(usize, usize, i64)]) {
        let mut m = SuperMatrix::square(self.even, self.odd);
        for &(i, j, v) in entries {
            m.set(i, j, SuperPolynomial::int(v));
        }
        let parity = m.element_parity().expect("block-form parameter is homogeneous");
        let (i, j, v) = entries[0];
        self.basis.push(BasisElement {
            label,
            parity,
            matrix: m,
            pivot: (i, j, v),
        });
    }
}

fn lbl(block: &str, i: usize, j: usize) -> String {
    format!("{block}[{},{}]", i + 1, j + 1)
}

pub fn build_gl(m: usize, n: usize) -> Result<AlgebraPresentation, AlgebraError> {
    if m + n == 0 {
        return Err(AlgebraError::InvalidParameters("gl needs m + n >= 1".into()));
    }
    let mut b = Builder::new(m, n);
    let size = m + n;
    for a in 0..size {
        for c in 0..size {
            b.param(lbl("E", a, c), &[(a, c, 1)]);
        }
    }
    let g = AlgebraPresentation::new(AlgebraKind::Gl, (m, n), m, n, b.basis, None);
    debug_assert!(g.basis.iter().all(|e| e.parity
        == Parity::from_bit(e.pivot.0 >= m && e.pivot.1 < m || e.pivot.0 < m && e.pivot.1 >= m)));
    Ok(g)
}

/// `osp(m|n2)` from its block form, `m = 2s` or `2s + 1`.
pub fn build_osp(m: usize, n2: usize) -> Result<AlgebraPresentation, AlgebraError> {
    if m == 0 || n2 % 2 != 0 {
        return Err(AlgebraError::InvalidParameters(format!(
            "osp needs m >= 1 and an even second parameter, got ({m}, {n2})"
        )));
    }
    let s = m / 2;
    let n = n2 / 2;
    let odd_m = m % 2 == 1;
    let (r1, r2, mid, b1, b2) = (0, s, 2 * s, m, m + n);
    let mut b = Builder::new(m, n2);

    for i in 0..s {
        for j in 0..s {
            b.param(lbl("A11", i, j), &[(r1 + i, r1 + j, 1), (r2 + j, r2 + i, -1)]);
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            b.param(lbl("A12", i, j), &[(r1 + i, r2 + j, 1), (r1 + j, r2 + i, -1)]);
        }
    }
    if odd_m {
        for i in 0..s {
            b.param(format!("G1[{}]", i + 1), &[(r1 + i, mid, 1), (mid, r2 + i, -1)]);
        }
    }
    for i in 0..s {
        for j in 0..n {
            b.param(lbl("C11", i, j), &[(r1 + i, b1 + j, 1), (b2 + j, r2 + i, 1)]);
        }
    }
    for i in 0..s {
        for j in 0..n {
            b.param(lbl("C12", i, j), &[(r1 + i, b2 + j, 1), (b1 + j, r2 + i, -1)]);
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            b.param(lbl("A21", i, j), &[(r2 + i, r1 + j, 1), (r2 + j, r1 + i, -1)]);
        }
    }
    if odd_m {
        for i in 0..s {
            b.param(format!("G2[{}]", i + 1), &[(r2 + i, mid, 1), (mid, r1 + i, -1)]);
        }
    }
    for i in 0..s {
        for j in 0..n {
            b.param(lbl("C21", i, j), &[(r2 + i, b1 + j, 1), (b2 + j, r1 + i, 1)]);
        }
    }
    for i in 0..s {
        for j in 0..n {
            b.param(lbl("C22", i, j), &[(r2 + i, b2 + j, 1), (b1 + j, r1 + i, -1)]);
        }
    }
    if odd_m {
        for j in 0..n {
            b.param(format!("G3[{}]", j + 1), &[(mid, b1 + j, 1), (b2 + j, mid, 1)]);
        }
        for j in 0..n {
            b.param(format!("G4[{}]", j + 1), &[(mid, b2 + j, 1), (b1 + j, mid, -1)]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            b.param(lbl("B11", i, j), &[(b1 + i, b1 + j, 1), (b2 + j, b2 + i, -1)]);
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                b.param(lbl("B12", i, j), &[(b1 + i, b2 + i, 1)]);
            } else {
                b.param(lbl("B12", i, j), &[(b1 + i, b2 + j, 1), (b1 + j, b2 + i, 1)]);
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                b.param(lbl("B21", i, j), &[(b2 + i, b1 + i, 1)]);
            } else {
                b.param(lbl("B21", i, j), &[(b2 + i, b1 + j, 1), (b2 + j, b1 + i, 1)]);
            }
        }
    }
    Ok(AlgebraPresentation::new(
        AlgebraKind::Osp,
        (m, n2),
        m,
        n2,
        b.basis,
        Some(gamma(m, n)),
    ))
}

/// The periplectic algebra preserving the odd skew form on `C^{n|n}`.
pub fn build_pisp(n: usize) -> Result<AlgebraPresentation, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidParameters("pisp needs n >= 1".into()));
    }
    let mut b = Builder::new(n, n);
    for i in 0..n {
        for j in 0..n {
            b.param(lbl("A", i, j), &[(i, j, 1), (n + j, n + i, -1)]);
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                b.param(lbl("B", i, j), &[(i, n + i, 1)]);
            } else {
                b.param(lbl("B", i, j), &[(i, n + j, 1), (j, n + i, 1)]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            b.param(lbl("C", i, j), &[(n + i, j, 1), (n + j, i, -1)]);
        }
    }
    Ok(AlgebraPresentation::new(
        AlgebraKind::Pisp,
        (n, n),
        n,
        n,
        b.basis,
        Some(upsilon(n)),
    ))
}
