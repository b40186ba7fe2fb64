use std::fmt;

use super::divide::divides;
use super::poly::SuperPolynomial;
use super::CalcError;

/// Quotient `num / den` with a purely even denominator. Not reduced.
#[derive(Clone, Debug)]
pub struct RationalSuperFunction {
    num: SuperPolynomial,
    den: SuperPolynomial,
}

impl RationalSuperFunction {
    pub fn new(num: SuperPolynomial, den: SuperPolynomial) -> Result<Self, CalcError> {
        if den.is_zero() {
            return Err(CalcError::ZeroDenominator);
        }
        if den.has_odd() {
            return Err(CalcError::OddDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn polynomial(p: SuperPolynomial) -> Self {
        Self {
            num: p,
            den: SuperPolynomial::one(),
        }
    }

    pub fn numerator(&self) -> &SuperPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &SuperPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        Self {
            num: &self.num.mul(&other.den) + &other.num.mul(&self.den),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // even denominators are central, so the order of factors is free
        Self {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    /// The polynomial this function equals, if it is one.
    pub fn to_polynomial(&self) -> Option<SuperPolynomial> {
        divides(&self.den, &self.num).expect("denominator checked at construction")
    }
}

impl PartialEq for RationalSuperFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalSuperFunction {}

impl fmt::Display for RationalSuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::var::Var;

    #[test]
    fn cross_multiplied_equality() {
        let x = SuperPolynomial::var(Var::even(1));
        let xi = SuperPolynomial::var(Var::odd(1));
        let a = RationalSuperFunction::new(x.mul(&xi), x.pow(2)).unwrap();
        let b = RationalSuperFunction::new(xi.clone(), x.clone()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sub(&b).to_polynomial(), Some(SuperPolynomial::zero()));
        assert_eq!(b.to_polynomial(), None);
        assert!(matches!(
            RationalSuperFunction::new(x, xi),
            Err(CalcError::OddDenominator)
        ));
    }
}
