//! Division by purely even polynomials.
//!
//! Division by a single polynomial has a unique remainder for a fixed
//! term order, so `remainder(n, d) == 0` iff `d` divides `n`, and the
//! remainder map is linear in `n`. The global-field search relies on both.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::SuperPolynomial;
use super::rational::Rational;
use super::CalcError;

#[derive(Clone, PartialEq, Eq)]
struct Grevlex(Monomial);

impl Ord for Grevlex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.grevlex_cmp(&other.0)
    }
}

impl PartialOrd for Grevlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Precomputed even divisor.
#[derive(Clone, Debug)]
pub struct EvenDivisor {
    lead: Monomial,
    lead_coeff: Rational,
    // remaining terms of the divisor, already negated and divided by the
    // leading coefficient
    tail: Vec<(Monomial, Rational)>,
}

impl EvenDivisor {
    pub fn new(den: &SuperPolynomial) -> Result<Self, CalcError> {
        if den.is_zero() {
            return Err(CalcError::ZeroDenominator);
        }
        if den.has_odd() {
            return Err(CalcError::OddDenominator);
        }
        let (lead, lead_coeff) = den
            .terms()
            .max_by(|a, b| a.0.grevlex_cmp(b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let tail = den
            .terms()
            .filter(|(m, _)| **m != lead)
            .map(|(m, c)| (m.clone(), -(c / &lead_coeff)))
            .collect();
        Ok(Self {
            lead,
            lead_coeff,
            tail,
        })
    }

    pub fn is_monomial(&self) -> bool {
        self.tail.is_empty()
    }

    /// Quotient and remainder of a purely even polynomial.
    fn divide_even(&self, num: &SuperPolynomial) -> (SuperPolynomial, SuperPolynomial) {
        let mut work: BTreeMap<Grevlex, Rational> =
            num.terms().map(|(m, c)| (Grevlex(m.clone()), c.clone())).collect();
        let mut quot = SuperPolynomial::zero();
        let mut rem = SuperPolynomial::zero();
        while let Some((Grevlex(m), c)) = work.pop_last() {
            match m.even_div(&self.lead) {
                Some(q) => {
                    let f = &c / &self.lead_coeff;
                    for (t, d) in &self.tail {
                        let (qt, _) = q.mul(t).unwrap();
                        let add = &c * d;
                        match work.entry(Grevlex(qt)) {
                            Entry::Vacant(v) => {
                                v.insert(add);
                            }
                            Entry::Occupied(mut o) => {
                                *o.get_mut() += add;
                                if o.get().is_zero() {
                                    o.remove();
                                }
                            }
                        }
                    }
                    quot.add_term(q, f);
                }
                None => rem.add_term(m, c),
            }
        }
        (quot, rem)
    }

    /// Quotient and remainder, coefficientwise over the odd monomials.
    pub fn divide(&self, num: &SuperPolynomial) -> (SuperPolynomial, SuperPolynomial) {
        if !num.has_odd() {
            return self.divide_even(num);
        }
        let mut q = BTreeMap::new();
        let mut r = BTreeMap::new();
        for (o, p) in num.split_by_odd() {
            let (qp, rp) = self.divide_even(&p);
            if !qp.is_zero() {
                q.insert(o.clone(), qp);
            }
            if !rp.is_zero() {
                r.insert(o, rp);
            }
        }
        (
            SuperPolynomial::join_by_odd(&q),
            SuperPolynomial::join_by_odd(&r),
        )
    }

    pub fn remainder(&self, num: &SuperPolynomial) -> SuperPolynomial {
        self.divide(num).1
    }
}

/// `Some(q)` with `q * den == num` if the division is exact in the
/// polynomial ring, `None` otherwise.
pub fn divides(
    den: &SuperPolynomial,
    num: &SuperPolynomial,
) -> Result<Option<SuperPolynomial>, CalcError> {
    let d = EvenDivisor::new(den)?;
    let (q, r) = d.divide(num);
    Ok(if r.is_zero() { Some(q) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::var::Var;

    fn x() -> SuperPolynomial {
        SuperPolynomial::var(Var::even(1))
    }
    fn y() -> SuperPolynomial {
        SuperPolynomial::var(Var::even(2))
    }
    fn xi() -> SuperPolynomial {
        SuperPolynomial::var(Var::odd(1))
    }

    #[test]
    fn exact_division_with_odd_coefficients() {
        let num = x().pow(2).mul(&xi());
        assert_eq!(divides(&x(), &num).unwrap(), Some(x().mul(&xi())));
    }

    #[test]
    fn non_division() {
        let num = &x() + &SuperPolynomial::one();
        assert_eq!(divides(&x(), &num).unwrap(), None);
    }

    #[test]
    fn difference_of_squares() {
        let den = &x().pow(2) - &y().pow(2);
        let num = (&x() - &y()).mul(&(&x() + &y())).mul(&x());
        let q = divides(&den, &num).unwrap().unwrap();
        assert_eq!(q.mul(&den), num);
    }

    #[test]
    fn leading_coefficient_not_one() {
        // -(xy - 1)^2 divides itself and 2(xy - 1)^2 x
        let base = &x().mul(&y()) - &SuperPolynomial::one();
        let den = base.mul(&base).scale(&Rational::from_integer((-1).into()));
        assert_eq!(divides(&den, &den).unwrap(), Some(SuperPolynomial::one()));
        let num = base.mul(&base).mul(&x()).scale(&Rational::from_integer(2.into()));
        let q = divides(&den, &num).unwrap().unwrap();
        assert_eq!(q.mul(&den), num);
        let twice = den.scale(&Rational::from_integer(2.into()));
        assert_eq!(divides(&twice, &(&num + &y())).unwrap(), None);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            divides(&SuperPolynomial::zero(), &x()),
            Err(CalcError::ZeroDenominator)
        ));
        assert!(matches!(
            divides(&xi(), &x()),
            Err(CalcError::OddDenominator)
        ));
    }
}
