use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::rational::Rational;
use super::var::{Parity, Var};
use super::CalcError;

/// Parity of a polynomial as a whole.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyParity {
    Zero,
    Even,
    Odd,
    Mixed,
}

impl PolyParity {
    /// Whether a polynomial of this parity may sit in a slot of parity `p`.
    pub fn fits(self, p: Parity) -> bool {
        match self {
            PolyParity::Zero => true,
            PolyParity::Even => p == Parity::Even,
            PolyParity::Odd => p == Parity::Odd,
            PolyParity::Mixed => false,
        }
    }
}

/// Element of the free supercommutative algebra over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SuperPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::rational::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Product of variables in the given order, e.g. `[xi2, xi1]` gives
    /// `-xi1*xi2`.
    pub fn product(vars: &[Var]) -> Self {
        vars.iter()
            .fold(Self::one(), |acc, v| acc.mul(&Self::var(*v)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`
    pub fn add_scaled_product(&mut self, c: &Rational, m: &Monomial, other: &SuperPolynomial) {
        for (n, d) in &other.terms {
            if let Some((mn, neg)) = m.mul(n) {
                let v = c * d;
                self.add_term(mn, if neg { -v } else { v });
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &SuperPolynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &SuperPolynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SuperPolynomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_scaled_product(c, m, other);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn parity(&self) -> PolyParity {
        let mut seen_even = false;
        let mut seen_odd = false;
        for m in self.terms.keys() {
            match m.parity() {
                Parity::Even => seen_even = true,
                Parity::Odd => seen_odd = true,
            }
        }
        match (seen_even, seen_odd) {
            (false, false) => PolyParity::Zero,
            (true, false) => PolyParity::Even,
            (false, true) => PolyParity::Odd,
            (true, true) => PolyParity::Mixed,
        }
    }

    /// True if some term involves an odd generator.
    pub fn has_odd(&self) -> bool {
        self.terms.keys().any(|m| m.odd_degree() > 0)
    }

    /// True if some term involves an even variable.
    pub fn has_even_vars(&self) -> bool {
        self.terms.keys().any(|m| m.has_even_vars())
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Terms without odd generators.
    pub fn body(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.odd_degree() == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_even_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.even_degree()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Left partial derivative with respect to an odd generator.
    pub fn odd_derivative(&self, v: Var) -> Self {
        assert!(v.is_odd(), "{v} is not odd");
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((r, neg)) = m.odd_derivative(v) {
                out.add_term(r, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Partial derivative with respect to an even variable.
    pub fn even_derivative(&self, v: Var) -> Self {
        assert!(!v.is_odd(), "{v} is not even");
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, r)) = m.even_derivative(v) {
                out.add_term(r, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Left derivative with respect to any variable.
    pub fn derivative(&self, v: Var) -> Self {
        if v.is_odd() {
            self.odd_derivative(v)
        } else {
            self.even_derivative(v)
        }
    }

    /// Simultaneous substitution. Unbound variables stay as they are.
    pub fn substitute(&self, bindings: &HashMap<Var, SuperPolynomial>) -> Result<Self, CalcError> {
        for (v, p) in bindings {
            if !p.parity().fits(v.parity()) {
                return Err(CalcError::ParityMismatch {
                    var: v.to_string(),
                    expected: v.parity(),
                });
            }
        }
        Ok(self.substitute_unchecked(bindings))
    }

    pub(crate) fn substitute_unchecked(&self, bindings: &HashMap<Var, SuperPolynomial>) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut cache: HashMap<(Var, u32), SuperPolynomial> = HashMap::new();
        let mut power = |v: Var, e: u32| -> SuperPolynomial {
            cache
                .entry((v, e))
                .or_insert_with(|| match bindings.get(&v) {
                    Some(p) => p.pow(e),
                    None if v.is_odd() => Self::var(v),
                    None => {
                        let (m, _) = Monomial::from_parts(&[(v, e)], &[]).unwrap();
                        Self::term(m, Rational::one())
                    }
                })
                .clone()
        };
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for &(v, e) in m.even_part() {
                acc = acc.mul(&power(v, e));
                if acc.is_zero() {
                    break;
                }
            }
            for &v in m.odd_part() {
                if acc.is_zero() {
                    break;
                }
                acc = acc.mul(&power(v, 1));
            }
            out.add_assign_ref(&acc);
        }
        out
    }

    /// Substitute rationals for even variables only.
    pub fn evaluate_even(&self, point: &HashMap<Var, Rational>) -> Self {
        let b: HashMap<Var, SuperPolynomial> = point
            .iter()
            .map(|(v, r)| (*v, SuperPolynomial::constant(r.clone())))
            .collect();
        self.substitute_unchecked(&b)
    }

    /// Group terms by odd part: odd monomial -> purely even coefficient.
    pub fn split_by_odd(&self) -> BTreeMap<Monomial, SuperPolynomial> {
        let mut out: BTreeMap<Monomial, SuperPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.odd_only())
                .or_default()
                .add_term(m.even_only(), c.clone());
        }
        out
    }

    /// Inverse of `split_by_odd`.
    pub fn join_by_odd(parts: &BTreeMap<Monomial, SuperPolynomial>) -> Self {
        let mut out = Self::zero();
        for (o, p) in parts {
            for (e, c) in &p.terms {
                let (m, neg) = e.mul(o).expect("even part times odd part");
                debug_assert!(!neg);
                out.add_term(m, c.clone());
            }
        }
        out
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        SuperPolynomial::mul(self, rhs)
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn neg(self) -> SuperPolynomial {
        SuperPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SuperPolynomial {
    type Output = SuperPolynomial;

    fn neg(mut self) -> SuperPolynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl From<Var> for SuperPolynomial {
    fn from(v: Var) -> Self {
        SuperPolynomial::var(v)
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&super::rational::to_string(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", super::rational::to_string(&a))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::rational::int;

    fn x() -> SuperPolynomial {
        SuperPolynomial::var(Var::even(1))
    }
    fn xi(i: usize) -> SuperPolynomial {
        SuperPolynomial::var(Var::odd(i))
    }

    #[test]
    fn anticommutativity() {
        let s = &xi(1).mul(&xi(2)) + &xi(2).mul(&xi(1));
        assert!(s.is_zero());
    }

    #[test]
    fn nilpotence() {
        assert!(xi(1).mul(&xi(1)).is_zero());
    }

    #[test]
    fn square_difference_kills_nilpotent() {
        let n = xi(1).mul(&xi(2));
        let a = &x() + &n;
        let b = &x() - &n;
        assert_eq!(a.mul(&b), x().mul(&x()));
    }

    #[test]
    fn odd_derivative_examples() {
        let p = xi(1).mul(&xi(2));
        assert_eq!(p.odd_derivative(Var::odd(1)), xi(2));
        assert_eq!(p.odd_derivative(Var::odd(2)), -xi(1));
        assert!(x().mul(&x()).odd_derivative(Var::odd(1)).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let mut b = HashMap::new();
        b.insert(Var::even(1), SuperPolynomial::int(2));
        assert_eq!(x().mul(&xi(1)).substitute(&b).unwrap(), xi(1).scale(&int(2)));

        let eta = Var::new(0, crate::supercalc::Block::Eta, 1, 0);
        let mut b = HashMap::new();
        b.insert(eta, -xi(1));
        assert_eq!(SuperPolynomial::var(eta).substitute(&b).unwrap(), -xi(1));

        let mut b = HashMap::new();
        b.insert(Var::odd(1), xi(2));
        assert!(xi(1).mul(&xi(2)).substitute(&b).unwrap().is_zero());

        let mut b = HashMap::new();
        b.insert(Var::even(1), xi(1));
        assert!(matches!(
            x().substitute(&b),
            Err(CalcError::ParityMismatch { .. })
        ));
    }

    #[test]
    fn parity_detection() {
        assert_eq!(x().parity(), PolyParity::Even);
        assert_eq!(xi(1).parity(), PolyParity::Odd);
        assert_eq!((&x() + &xi(1)).parity(), PolyParity::Mixed);
        assert_eq!(SuperPolynomial::zero().parity(), PolyParity::Zero);
    }

    #[test]
    fn split_join_roundtrip() {
        let p = &(&x().mul(&xi(2)).mul(&xi(1)) + &x()) + &xi(3).scale(&int(5));
        assert_eq!(SuperPolynomial::join_by_odd(&p.split_by_odd()), p);
    }
}
