//! Matrix arithmetic over the coefficient rings used by the oracle, and
//! first-order perturbations `A + tau B` with `tau` on the left.

use std::collections::HashMap;

use num_traits::One;

use super::series::{self, Laurent};
use crate::supercalc::{EvenDivisor, Monomial, Rational, SuperPolynomial, Var};

pub(crate) trait Ring: Sync {
    type E: Clone + Send + Sync;

    fn zero(&self) -> Self::E;
    fn lift(&self, p: &SuperPolynomial) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// Negate the odd part.
    fn involution(&self, a: &Self::E) -> Self::E;
    /// Drop every term containing an odd generator.
    fn body(&self, a: &Self::E) -> Self::E;
    /// Inverse of a body element, if it is a unit.
    fn invert_body(&self, a: &Self::E) -> Option<Self::E>;

    fn one(&self) -> Self::E {
        self.lift(&SuperPolynomial::one())
    }

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

pub(crate) type Mat<E> = Vec<Vec<E>>;

pub(crate) fn lift_matrix<R: Ring>(r: &R, m: &crate::supercalc::SuperMatrix) -> Mat<R::E> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| r.lift(m.get(i, j))).collect())
        .collect()
}

pub(crate) fn mat_mul<R: Ring>(r: &R, a: &Mat<R::E>, b: &Mat<R::E>) -> Mat<R::E> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = r.zero();
                    for (k, x) in row.iter().enumerate() {
                        if r.is_zero(x) || r.is_zero(&b[k][j]) {
                            continue;
                        }
                        acc = r.add(&acc, &r.mul(x, &b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub(crate) fn mat_add<R: Ring>(r: &R, a: &Mat<R::E>, b: &Mat<R::E>) -> Mat<R::E> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| r.add(p, q)).collect())
        .collect()
}

pub(crate) fn mat_map<R: Ring>(a: &Mat<R::E>, f: impl Fn(&R::E) -> R::E) -> Mat<R::E> {
    a.iter().map(|row| row.iter().map(&f).collect()).collect()
}

pub(crate) fn select_rows<E: Clone>(a: &Mat<E>, rows: &[usize]) -> Mat<E> {
    rows.iter().map(|&i| a[i].clone()).collect()
}

fn minor<E: Clone>(a: &Mat<E>, skip_row: usize, skip_col: usize) -> Mat<E> {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion; only meant for commuting entries.
pub(crate) fn det<R: Ring>(r: &R, a: &Mat<R::E>) -> R::E {
    match a.len() {
        0 => r.one(),
        1 => a[0][0].clone(),
        n => {
            let mut acc = r.zero();
            for j in 0..n {
                if r.is_zero(&a[0][j]) {
                    continue;
                }
                let t = r.mul(&a[0][j], &det(r, &minor(a, 0, j)));
                acc = if j % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
            }
            acc
        }
    }
}

/// Inverse of a matrix whose body is invertible: the body is inverted by
/// the adjugate, the nilpotent rest by the geometric series.
pub(crate) fn inverse<R: Ring>(r: &R, a: &Mat<R::E>) -> Option<Mat<R::E>> {
    let n = a.len();
    let body: Mat<R::E> = mat_map::<R>(a, |x| r.body(x));
    let d_inv = r.invert_body(&det(r, &body))?;
    let mut b_inv: Mat<R::E> = vec![vec![r.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = if n == 1 { r.one() } else { det(r, &minor(&body, j, i)) };
            let c = r.mul(&c, &d_inv);
            b_inv[i][j] = if (i + j) % 2 == 0 { c } else { r.neg(&c) };
        }
    }
    let rest: Mat<R::E> = a
        .iter()
        .zip(&body)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| r.sub(p, q)).collect())
        .collect();
    if rest.iter().flatten().all(|x| r.is_zero(x)) {
        return Some(b_inv);
    }
    let step = mat_map::<R>(&mat_mul(r, &b_inv, &rest), |x| r.neg(x));
    let mut term = b_inv.clone();
    let mut acc = b_inv;
    for _ in 0..64 {
        term = mat_mul(r, &step, &term);
        if term.iter().flatten().all(|x| r.is_zero(x)) {
            return Some(acc);
        }
        acc = mat_add(r, &acc, &term);
    }
    None
}

/// `A + tau B`.
#[derive(Clone, Debug)]
pub(crate) struct Dual<E> {
    pub base: Mat<E>,
    pub tangent: Mat<E>,
}

fn hat<R: Ring>(r: &R, a: &Mat<R::E>, odd: bool) -> Mat<R::E> {
    if odd {
        mat_map::<R>(a, |x| r.involution(x))
    } else {
        a.clone()
    }
}

/// `(A + tau B)(C + tau D) = AC + tau (BC + A^ D)`.
pub(crate) fn dual_mul<R: Ring>(r: &R, x: &Dual<R::E>, y: &Dual<R::E>, odd: bool) -> Dual<R::E> {
    Dual {
        base: mat_mul(r, &x.base, &y.base),
        tangent: mat_add(
            r,
            &mat_mul(r, &x.tangent, &y.base),
            &mat_mul(r, &hat(r, &x.base, odd), &y.tangent),
        ),
    }
}

/// Inverse of `A + tau B` given `A^{-1}`.
pub(crate) fn dual_inverse<R: Ring>(r: &R, x: &Dual<R::E>, base_inv: Mat<R::E>, odd: bool) -> Dual<R::E> {
    let t = mat_mul(r, &mat_mul(r, &hat(r, &base_inv, odd), &x.tangent), &base_inv);
    Dual {
        base: base_inv,
        tangent: mat_map::<R>(&t, |v| r.neg(v)),
    }
}

pub(crate) fn dual_rows<E: Clone>(x: &Dual<E>, rows: &[usize]) -> Dual<E> {
    Dual {
        base: select_rows(&x.base, rows),
        tangent: select_rows(&x.tangent, rows),
    }
}

/// Values of monomials at a point, built up one factor at a time.
pub(crate) struct MonomialCache<'a, R: Ring> {
    ring: &'a R,
    values: &'a HashMap<Var, R::E>,
    cache: HashMap<Monomial, R::E>,
}

impl<'a, R: Ring> MonomialCache<'a, R> {
    pub fn new(ring: &'a R, values: &'a HashMap<Var, R::E>) -> Self {
        Self {
            ring,
            values,
            cache: HashMap::new(),
        }
    }

    /// Value of the monomial with its odd factors in canonical order.
    pub fn get(&mut self, m: &Monomial) -> R::E {
        if let Some(v) = self.cache.get(m) {
            return v.clone();
        }
        let v = if m.is_one() {
            self.ring.one()
        } else if let Some(&last) = m.odd_part().last() {
            let rest = &m.odd_part()[..m.odd_part().len() - 1];
            let (prev, _) = Monomial::from_parts(m.even_part(), rest).expect("sorted odd part");
            let p = self.get(&prev);
            self.ring.mul(&p, &self.values[&last])
        } else {
            let &(v, e) = m.even_part().last().unwrap();
            let mut even = m.even_part().to_vec();
            if e == 1 {
                even.pop();
            } else {
                even.last_mut().unwrap().1 -= 1;
            }
            let (prev, _) = Monomial::from_parts(&even, &[]).unwrap();
            let p = self.get(&prev);
            self.ring.mul(&p, &self.values[&v])
        };
        self.cache.insert(m.clone(), v.clone());
        v
    }

    pub fn eval(&mut self, p: &SuperPolynomial) -> R::E {
        let mut acc = self.ring.zero();
        for (m, c) in p.terms() {
            let v = self.get(m);
            let c = self.ring.lift(&SuperPolynomial::constant(c.clone()));
            acc = self.ring.add(&acc, &self.ring.mul(&c, &v));
        }
        acc
    }
}

/// Plain polynomials; only nonzero constants are units.
pub(crate) struct PolyRing;

impl Ring for PolyRing {
    type E = SuperPolynomial;

    fn zero(&self) -> SuperPolynomial {
        SuperPolynomial::zero()
    }

    fn lift(&self, p: &SuperPolynomial) -> SuperPolynomial {
        p.clone()
    }

    fn add(&self, a: &SuperPolynomial, b: &SuperPolynomial) -> SuperPolynomial {
        a + b
    }

    fn neg(&self, a: &SuperPolynomial) -> SuperPolynomial {
        -a
    }

    fn mul(&self, a: &SuperPolynomial, b: &SuperPolynomial) -> SuperPolynomial {
        a.mul(b)
    }

    fn is_zero(&self, a: &SuperPolynomial) -> bool {
        a.is_zero()
    }

    fn involution(&self, a: &SuperPolynomial) -> SuperPolynomial {
        series::involution(a)
    }

    fn body(&self, a: &SuperPolynomial) -> SuperPolynomial {
        a.body()
    }

    fn invert_body(&self, a: &SuperPolynomial) -> Option<SuperPolynomial> {
        if a.is_zero() || a.has_even_vars() || a.has_odd() {
            return None;
        }
        Some(SuperPolynomial::constant(Rational::one() / a.constant_term()))
    }
}

/// Series in one parameter with a fixed number of terms kept after every
/// inversion.
pub(crate) struct LaurentRing {
    pub s: Var,
    pub terms: i32,
}

impl Ring for LaurentRing {
    type E = Laurent;

    fn zero(&self) -> Laurent {
        Laurent::zero()
    }

    fn lift(&self, p: &SuperPolynomial) -> Laurent {
        Laurent::from_poly(p, self.s)
    }

    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        a.add(b)
    }

    fn neg(&self, a: &Laurent) -> Laurent {
        a.neg()
    }

    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        a.mul(b)
    }

    fn is_zero(&self, a: &Laurent) -> bool {
        a.is_zero()
    }

    fn involution(&self, a: &Laurent) -> Laurent {
        a.involution()
    }

    fn body(&self, a: &Laurent) -> Laurent {
        a.body()
    }

    fn invert_body(&self, a: &Laurent) -> Option<Laurent> {
        a.inverse(self.terms)
    }
}

/// Fractions `num / D^e` for one fixed even polynomial `D`.
pub(crate) struct DenRing {
    den: SuperPolynomial,
    divisor: EvenDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Frac {
    pub num: SuperPolynomial,
    pub exp: u32,
}

impl DenRing {
    pub fn new(den: SuperPolynomial) -> Option<Self> {
        let divisor = EvenDivisor::new(&den).ok()?;
        Some(Self { den, divisor })
    }

    fn raise(&self, a: &Frac, exp: u32) -> SuperPolynomial {
        let mut n = a.num.clone();
        for _ in a.exp..exp {
            n = n.mul(&self.den);
        }
        n
    }

    /// Cancel powers of `D`; the result has a numerator prime to `D` or a
    /// zero exponent.
    pub fn reduce(&self, a: &Frac) -> Frac {
        let mut out = a.clone();
        while out.exp > 0 && !out.num.is_zero() {
            let (q, r) = self.divisor.divide(&out.num);
            if !r.is_zero() {
                break;
            }
            out = Frac { num: q, exp: out.exp - 1 };
        }
        if out.num.is_zero() {
            out.exp = 0;
        }
        out
    }
}

impl Ring for DenRing {
    type E = Frac;

    fn zero(&self) -> Frac {
        Frac { num: SuperPolynomial::zero(), exp: 0 }
    }

    fn lift(&self, p: &SuperPolynomial) -> Frac {
        Frac { num: p.clone(), exp: 0 }
    }

    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        let e = a.exp.max(b.exp);
        let sum = &self.raise(a, e) + &self.raise(b, e);
        if sum.is_zero() {
            return self.zero();
        }
        Frac { num: sum, exp: e }
    }

    fn neg(&self, a: &Frac) -> Frac {
        Frac { num: -&a.num, exp: a.exp }
    }

    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        let num = a.num.mul(&b.num);
        if num.is_zero() {
            return self.zero();
        }
        self.reduce(&Frac { num, exp: a.exp + b.exp })
    }

    fn is_zero(&self, a: &Frac) -> bool {
        a.num.is_zero()
    }

    fn involution(&self, a: &Frac) -> Frac {
        Frac { num: series::involution(&a.num), exp: a.exp }
    }

    fn body(&self, a: &Frac) -> Frac {
        Frac { num: a.num.body(), exp: a.exp }
    }

    /// Units are `c D^k / D^e`.
    fn invert_body(&self, a: &Frac) -> Option<Frac> {
        let mut n = a.num.clone();
        let mut k = 0u32;
        while n.has_even_vars() {
            let (q, r) = self.divisor.divide(&n);
            if !r.is_zero() {
                return None;
            }
            n = q;
            k += 1;
        }
        if n.is_zero() || n.has_odd() {
            return None;
        }
        let c = Rational::one() / n.constant_term();
        let inv = Frac { num: SuperPolynomial::constant(c), exp: k };
        Some(self.reduce(&Frac { num: self.raise(&Frac { num: inv.num, exp: 0 }, a.exp), exp: k }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::rational::int;

    #[test]
    fn nilpotent_inverse_over_fractions() {
        let x = SuperPolynomial::var(Var::even(0));
        let th = SuperPolynomial::var(Var::odd(0));
        let eta = SuperPolynomial::var(Var::odd(1));
        let r = DenRing::new(x.clone()).unwrap();
        let a: Mat<Frac> = vec![
            vec![r.lift(&x), r.lift(&th)],
            vec![r.lift(&eta), r.lift(&SuperPolynomial::one())],
        ];
        let inv = inverse(&r, &a).unwrap();
        let id = mat_mul(&r, &a, &inv);
        for (i, row) in id.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let v = r.reduce(v);
                let expect = if i == j { SuperPolynomial::one() } else { SuperPolynomial::zero() };
                assert_eq!(v, Frac { num: expect, exp: 0 });
            }
        }
        assert!(r.invert_body(&r.lift(&(&x + &SuperPolynomial::int(1)))).is_none());
        assert_eq!(
            r.invert_body(&r.lift(&x.scale(&int(2)))).unwrap(),
            Frac { num: SuperPolynomial::constant(Rational::new(1.into(), 2.into())), exp: 1 }
        );
    }

    #[test]
    fn dual_inverse_is_first_order_inverse() {
        let r = LaurentRing { s: Var::even(50), terms: 6 };
        let th = SuperPolynomial::var(Var::odd(0));
        let a = Dual {
            base: vec![vec![r.lift(&SuperPolynomial::int(2))]],
            tangent: vec![vec![r.lift(&th)]],
        };
        let inv = dual_inverse(&r, &a, vec![vec![r.lift(&SuperPolynomial::constant(Rational::new(1.into(), 2.into())))]], true);
        let prod = dual_mul(&r, &a, &inv, true);
        assert_eq!(prod.base[0][0], Laurent::one());
        assert!(prod.tangent[0][0].is_zero());
    }
}
