use std::cmp::Ordering;
use std::fmt;

use super::var::{Parity, Var};

/// Product of even variable powers and distinct odd generators.
///
/// The odd generators are stored strictly increasing; the monomial denotes
/// the product taken in that order. Sign normalisation happens when a
/// monomial is built from an arbitrary product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    even: Vec<(Var, u32)>,
    odd: Vec<Var>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var) -> Monomial {
        if v.is_odd() {
            Monomial {
                even: Vec::new(),
                odd: vec![v],
            }
        } else {
            Monomial {
                even: vec![(v, 1)],
                odd: Vec::new(),
            }
        }
    }

    /// Build from an even exponent list and an odd product in the given
    /// order. Returns `None` when an odd generator repeats, otherwise the
    /// canonical monomial and whether reordering flipped the sign.
    pub fn from_parts(even: &[(Var, u32)], odd: &[Var]) -> Option<(Monomial, bool)> {
        let mut ev: Vec<(Var, u32)> = even.iter().copied().filter(|(_, e)| *e > 0).collect();
        ev.sort_by_key(|(v, _)| *v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(ev.len());
        for (v, e) in ev {
            assert!(!v.is_odd(), "odd variable {v} in even part");
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        let mut od = odd.to_vec();
        // insertion sort counting transpositions
        let mut neg = false;
        for i in 1..od.len() {
            let mut j = i;
            while j > 0 && od[j - 1] > od[j] {
                od.swap(j - 1, j);
                neg = !neg;
                j -= 1;
            }
        }
        if od.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        assert!(od.iter().all(|v| v.is_odd()), "even variable in odd part");
        Some((
            Monomial {
                even: merged,
                odd: od,
            },
            neg,
        ))
    }

    pub fn even_part(&self) -> &[(Var, u32)] {
        &self.even
    }

    pub fn odd_part(&self) -> &[Var] {
        &self.odd
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.len() % 2 == 1)
    }

    pub fn even_degree(&self) -> u32 {
        self.even.iter().map(|(_, e)| e).sum()
    }

    pub fn odd_degree(&self) -> usize {
        self.odd.len()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        if v.is_odd() {
            u32::from(self.odd.binary_search(&v).is_ok())
        } else {
            self.even
                .binary_search_by_key(&v, |(w, _)| *w)
                .map(|i| self.even[i].1)
                .unwrap_or(0)
        }
    }

    pub fn has_even_vars(&self) -> bool {
        !self.even.is_empty()
    }

    /// Same monomial with the odd part dropped.
    pub fn even_only(&self) -> Monomial {
        Monomial {
            even: self.even.clone(),
            odd: Vec::new(),
        }
    }

    /// Same monomial with the even part dropped.
    pub fn odd_only(&self) -> Monomial {
        Monomial {
            even: Vec::new(),
            odd: self.odd.clone(),
        }
    }

    /// Product `self * other`, or `None` if an odd generator repeats.
    /// The flag is true when the product picks up a minus sign.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut neg = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() || j < other.odd.len() {
            if j == other.odd.len() {
                odd.push(self.odd[i]);
                i += 1;
            } else if i == self.odd.len() {
                odd.push(other.odd[j]);
                j += 1;
            } else {
                match self.odd[i].cmp(&other.odd[j]) {
                    Ordering::Less => {
                        odd.push(self.odd[i]);
                        i += 1;
                    }
                    Ordering::Greater => {
                        // other.odd[j] jumps over the remaining self.odd[i..]
                        if (self.odd.len() - i) % 2 == 1 {
                            neg = !neg;
                        }
                        odd.push(other.odd[j]);
                        j += 1;
                    }
                    Ordering::Equal => return None,
                }
            }
        }
        Some((
            Monomial {
                even: merge_even(&self.even, &other.even),
                odd,
            },
            neg,
        ))
    }

    /// Quotient of the even parts if `other`'s even part divides ours.
    /// Odd parts are ignored.
    pub fn even_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.even.len());
        let mut j = 0;
        for &(v, e) in &self.even {
            if j < other.even.len() && other.even[j].0 < v {
                return None;
            }
            if j < other.even.len() && other.even[j].0 == v {
                let f = other.even[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((v, e - f));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < other.even.len() {
            return None;
        }
        Some(Monomial {
            even: out,
            odd: Vec::new(),
        })
    }

    /// Left derivative with respect to an odd generator: move it to the
    /// front and delete it. Returns the remaining monomial and the sign.
    pub fn odd_derivative(&self, v: Var) -> Option<(Monomial, bool)> {
        let pos = self.odd.binary_search(&v).ok()?;
        let mut odd = self.odd.clone();
        odd.remove(pos);
        Some((
            Monomial {
                even: self.even.clone(),
                odd,
            },
            pos % 2 == 1,
        ))
    }

    /// Derivative with respect to an even variable: exponent and remainder.
    pub fn even_derivative(&self, v: Var) -> Option<(u32, Monomial)> {
        let pos = self.even.binary_search_by_key(&v, |(w, _)| *w).ok()?;
        let mut even = self.even.clone();
        let e = even[pos].1;
        if e == 1 {
            even.remove(pos);
        } else {
            even[pos].1 -= 1;
        }
        Some((
            e,
            Monomial {
                even,
                odd: self.odd.clone(),
            },
        ))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.even.iter().map(|(v, _)| *v).chain(self.odd.iter().copied())
    }

    /// Graded-reverse-lex comparison of the even parts, used as the term
    /// order for polynomial division.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        let d = self.even_degree().cmp(&other.even_degree());
        if d != Ordering::Equal {
            return d;
        }
        // Compare exponents from the last variable backwards; smaller
        // exponent in the last differing variable is the larger monomial.
        let (mut i, mut j) = (self.even.len(), other.even.len());
        while i > 0 || j > 0 {
            let a = if i > 0 { Some(self.even[i - 1]) } else { None };
            let b = if j > 0 { Some(other.even[j - 1]) } else { None };
            match (a, b) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i -= 1;
                        j -= 1;
                    }
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                },
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (None, None) => unreachable!(),
            }
        }
        Ordering::Equal
    }
}

fn merge_even(a: &[(Var, u32)], b: &[(Var, u32)]) -> Vec<(Var, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.odd
            .len()
            .cmp(&other.odd.len())
            .then_with(|| self.odd.cmp(&other.odd))
            .then_with(|| self.even_degree().cmp(&other.even_degree()))
            .then_with(|| self.even.cmp(&other.even))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in &self.even {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        for v in &self.odd {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
