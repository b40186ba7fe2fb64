//! Truncated Laurent series in one even parameter with Grassmann
//! coefficients.

use std::fmt;

use num_traits::One;

use crate::supercalc::{Monomial, Rational, SuperPolynomial, Var};

/// Precision marker for series known exactly.
pub const EXACT: i32 = 1 << 28;

/// `sum_{n >= val} c_n s^n`, known for `n < prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    val: i32,
    prec: i32,
    coeffs: Vec<SuperPolynomial>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self {
            val: EXACT,
            prec: EXACT,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: SuperPolynomial) -> Self {
        Self::normalised(0, EXACT, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(SuperPolynomial::one())
    }

    fn normalised(val: i32, prec: i32, mut coeffs: Vec<SuperPolynomial>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            return Self {
                val: prec,
                prec,
                coeffs: Vec::new(),
            };
        };
        coeffs.drain(..lead);
        while coeffs.last().is_some_and(SuperPolynomial::is_zero) {
            coeffs.pop();
        }
        let val = val + lead as i32;
        let keep = (prec - val).max(0) as usize;
        coeffs.truncate(keep);
        Self { val, prec, coeffs }
    }

    /// Expand a polynomial in `s` (and other variables) as a series in `s`.
    pub fn from_poly(p: &SuperPolynomial, s: Var) -> Self {
        let mut by_deg: Vec<SuperPolynomial> = Vec::new();
        for (m, c) in p.terms() {
            let e = m.exponent(s) as usize;
            let rest = if e == 0 {
                m.clone()
            } else {
                let se = Monomial::from_parts(&[(s, e as u32)], &[]).unwrap().0;
                m.even_div(&se).expect("s^e divides the monomial")
            };
            if by_deg.len() <= e {
                by_deg.resize(e + 1, SuperPolynomial::zero());
            }
            by_deg[e].add_term(rest, c.clone());
        }
        Self::normalised(0, EXACT, by_deg)
    }

    pub fn val(&self) -> i32 {
        self.val
    }

    pub fn prec(&self) -> i32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `s^n`; `None` beyond the known precision.
    pub fn coeff(&self, n: i32) -> Option<SuperPolynomial> {
        if n >= self.prec {
            return None;
        }
        if n < self.val || n - self.val >= self.coeffs.len() as i32 {
            return Some(SuperPolynomial::zero());
        }
        Some(self.coeffs[(n - self.val) as usize].clone())
    }

    fn get(&self, n: i32) -> Option<&SuperPolynomial> {
        if n < self.val {
            return None;
        }
        self.coeffs.get((n - self.val) as usize)
    }

    /// Exponent one past the last stored coefficient.
    fn end(&self) -> i32 {
        self.val + self.coeffs.len() as i32
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        if other.is_zero() {
            return Self::normalised(self.val, prec, self.coeffs.clone());
        }
        if self.is_zero() {
            return Self::normalised(other.val, prec, other.coeffs.clone());
        }
        let lo = self.val.min(other.val);
        let hi = self.end().max(other.end()).min(prec);
        if hi <= lo {
            return Self::normalised(prec, prec, Vec::new());
        }
        let coeffs = (lo..hi)
            .map(|n| match (self.get(n), other.get(n)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => SuperPolynomial::zero(),
            })
            .collect();
        Self::normalised(lo, prec, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_below(other, EXACT)
    }

    /// Product with only the coefficients of `s^n`, `n < bound`, computed.
    pub fn mul_below(&self, other: &Self, bound_n: i32) -> Self {
        let (a, b) = (self, other);
        let exact_zero = |x: &Self| x.is_zero() && x.prec >= EXACT;
        if exact_zero(a) || exact_zero(b) {
            return Self::normalised(bound_n, bound_n, Vec::new());
        }
        let bound = |p: i32, v: i32| if p >= EXACT { EXACT as i64 } else { p as i64 + v as i64 };
        let prec = bound(a.prec, b.val).min(bound(b.prec, a.val)).min(EXACT as i64) as i32;
        let prec = prec.min(bound_n);
        if a.is_zero() || b.is_zero() {
            return Self::normalised(prec, prec, Vec::new());
        }
        let lo = a.val + b.val;
        let hi = (a.end() + b.end() - 1).min(prec);
        let mut coeffs = vec![SuperPolynomial::zero(); (hi - lo).max(0) as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let n = i + j;
                if lo + n as i32 >= hi {
                    break;
                }
                if !y.is_zero() {
                    coeffs[n].add_assign_ref(&x.mul(y));
                }
            }
        }
        Self::normalised(lo, prec, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalised(self.val, self.prec, self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    /// Negate the odd part of every coefficient.
    pub fn involution(&self) -> Self {
        Self {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(involution).collect(),
        }
    }

    /// Coefficients with the odd generators removed.
    pub fn body(&self) -> Self {
        Self::normalised(self.val, self.prec, self.coeffs.iter().map(SuperPolynomial::body).collect())
    }

    /// Inverse of a series whose lowest coefficient is a nonzero rational,
    /// with `terms` coefficients beyond the leading one.
    pub fn inverse(&self, terms: i32) -> Option<Self> {
        let lead = self.coeffs.first()?;
        if lead.has_odd() || lead.has_even_vars() || lead.is_zero() {
            return None;
        }
        let inv0 = Rational::one() / lead.constant_term();
        let avail = if self.prec >= EXACT { terms } else { (self.prec - self.val).min(terms) };
        let n = avail.max(1) as usize;
        let mut b: Vec<SuperPolynomial> = Vec::with_capacity(n);
        b.push(SuperPolynomial::constant(inv0.clone()));
        for k in 1..n {
            let mut acc = SuperPolynomial::zero();
            for j in 1..=k {
                if let Some(u) = self.coeffs.get(j) {
                    if !u.is_zero() {
                        acc.add_assign_ref(&u.mul(&b[k - j]));
                    }
                }
            }
            b.push(acc.scale(&-inv0.clone()));
        }
        Some(Self::normalised(-self.val, -self.val + n as i32, b))
    }

    /// Coefficients of negative powers, keyed by exponent.
    pub fn principal_part(&self) -> Option<Vec<(i32, SuperPolynomial)>> {
        if self.prec < 0 {
            return None;
        }
        Some(
            (self.val..0)
                .filter_map(|n| self.get(n).filter(|c| !c.is_zero()).map(|c| (n, c.clone())))
                .collect(),
        )
    }
}

/// Negate the terms of odd degree.
pub fn involution(p: &SuperPolynomial) -> SuperPolynomial {
    SuperPolynomial::from_terms(p.terms().map(|(m, c)| {
        let c = if m.odd_degree() % 2 == 1 { -c.clone() } else { c.clone() };
        (m.clone(), c)
    }))
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})s^{}", self.val + k as i32)?;
        }
        if first {
            f.write_str("0")?;
        }
        if self.prec < EXACT {
            write!(f, " + O(s^{})", self.prec)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::rational::{frac, int};

    fn s() -> Var {
        Var::even(99)
    }

    #[test]
    fn inverse_of_shifted_polynomial() {
        // (s + s^2)^{-1} = s^{-1} (1 - s + s^2 - ...)
        let q = &SuperPolynomial::var(s()) + &SuperPolynomial::var(s()).pow(2);
        let l = Laurent::from_poly(&q, s());
        let inv = l.inverse(6).unwrap();
        assert_eq!(inv.val(), -1);
        assert_eq!(inv.prec(), 5);
        for n in -1..5 {
            let expect = if (n + 1) % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(inv.coeff(n).unwrap(), SuperPolynomial::constant(expect));
        }
        let one = l.mul(&inv);
        assert_eq!(one.prec(), 6);
        assert_eq!(one.coeff(0).unwrap(), SuperPolynomial::one());
        for n in 1..6 {
            assert!(one.coeff(n).unwrap().is_zero());
        }
    }

    #[test]
    fn principal_part_with_grassmann_coefficients() {
        let th = SuperPolynomial::var(Var::odd(0));
        let a = Laurent::from_poly(&(&SuperPolynomial::var(s()) * &SuperPolynomial::int(2)), s())
            .inverse(4)
            .unwrap();
        let b = Laurent::constant(th.clone()).add(&Laurent::from_poly(&SuperPolynomial::var(s()), s()));
        let p = a.mul(&b).principal_part().unwrap();
        assert_eq!(p, vec![(-1, th.scale(&frac(1, 2)))]);
        assert_eq!(Laurent::constant(th.clone()).involution(), Laurent::constant(-th));
    }
}
