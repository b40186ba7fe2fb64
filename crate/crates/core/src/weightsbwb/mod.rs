//! Root data of the even parts of osp and the periplectic algebra, the
//! isotropy representations on the fibre of `W_0`, and Borel-Weil-Bott
//! filtering of their highest weights.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::supercalc::rational::{self, int};
use crate::supercalc::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not integral")]
    NonIntegral(String),
    #[error("weight has shape ({0}, {1}), root system expects ({2}, {3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("k1 = l1 = 1 is excluded: the fibre has nonconstant global functions")]
    ExcludedCase,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Weight in the orthonormal basis `(mu_1.., lambda_1..)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub mu: Vec<Rational>,
    pub lambda: Vec<Rational>,
}

/// One basis vector of the weight space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    Mu(usize),
    Lambda(usize),
}

impl Weight {
    pub fn zero(s: usize, n: usize) -> Self {
        Self {
            mu: vec![Rational::zero(); s],
            lambda: vec![Rational::zero(); n],
        }
    }

    /// Integer combination of basis vectors, indices 1-based.
    pub fn from_terms(s: usize, n: usize, terms: &[(i64, Coord)]) -> Self {
        let mut w = Self::zero(s, n);
        for &(c, e) in terms {
            *w.slot_mut(e) += int(c);
        }
        w
    }

    fn slot_mut(&mut self, e: Coord) -> &mut Rational {
        match e {
            Coord::Mu(i) => &mut self.mu[i - 1],
            Coord::Lambda(i) => &mut self.lambda[i - 1],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.mu.len(), self.lambda.len())
    }

    fn coords(&self) -> impl Iterator<Item = &Rational> {
        self.mu.iter().chain(&self.lambda)
    }

    pub fn dot(&self, other: &Weight) -> Rational {
        self.coords().zip(other.coords()).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let z = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Weight {
            mu: z(&self.mu, &other.mu),
            lambda: z(&self.lambda, &other.lambda),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight {
            mu: self.mu.iter().map(|x| x * c).collect(),
            lambda: self.lambda.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords().all(|x| x.is_integer())
    }

    pub fn to_json(&self) -> WeightJson {
        WeightJson {
            text: self.to_string(),
            mu: self.mu.iter().map(rational::to_string).collect(),
            lambda: self.lambda.iter().map(rational::to_string).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let terms = self
            .mu
            .iter()
            .enumerate()
            .map(|(i, c)| (c, "mu", i + 1))
            .chain(self.lambda.iter().enumerate().map(|(i, c)| (c, "lambda", i + 1)));
        for (c, name, i) in terms {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sign}{name}{i}")?;
            } else {
                write!(f, "{sign}{}{name}{i}", rational::to_string(&a))?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightJson {
    pub text: String,
    pub mu: Vec<String>,
    pub lambda: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootCase {
    /// `so_{2s} + sp_{2n}`
    SoEvenSp,
    /// `so_{2s+1} + sp_{2n}`
    SoOddSp,
    /// `gl_n`, read as `sl_n` root data
    Gl,
}

#[derive(Clone, Debug)]
pub struct RootSystemCase {
    pub case: RootCase,
    /// `(s, n)`, or `(n, 0)` for `gl_n`.
    pub params: (usize, usize),
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
    /// Factor each positive root belongs to: 0 for `so`/`gl`, 1 for `sp`.
    pub root_factor: Vec<usize>,
}

pub fn build_root_system(case: RootCase, params: (usize, usize)) -> RootSystemCase {
    let (s, n) = match case {
        RootCase::Gl => (params.0, 0),
        _ => params,
    };
    let w = |terms: &[(i64, Coord)]| Weight::from_terms(s, n, terms);
    let mut pos = Vec::new();
    let mut factor = Vec::new();
    let mut simple = Vec::new();
    use Coord::{Lambda as L, Mu as M};
    for i in 1..=s {
        for j in i + 1..=s {
            pos.push(w(&[(1, M(i)), (-1, M(j))]));
        }
    }
    if case != RootCase::Gl {
        for i in 1..=s {
            for j in i + 1..=s {
                pos.push(w(&[(1, M(i)), (1, M(j))]));
            }
        }
    }
    if case == RootCase::SoOddSp {
        for i in 1..=s {
            pos.push(w(&[(1, M(i))]));
        }
    }
    factor.resize(pos.len(), 0);
    if case != RootCase::Gl {
        for p in 1..=n {
            for q in p + 1..=n {
                pos.push(w(&[(1, L(p)), (-1, L(q))]));
            }
        }
        for p in 1..=n {
            for q in p..=n {
                pos.push(w(&[(1, L(p)), (1, L(q))]));
            }
        }
    }
    factor.resize(pos.len(), 1);

    for i in 1..s {
        simple.push(w(&[(1, M(i)), (-1, M(i + 1))]));
    }
    match case {
        RootCase::SoEvenSp if s >= 2 => simple.push(w(&[(1, M(s - 1)), (1, M(s))])),
        RootCase::SoOddSp if s >= 1 => simple.push(w(&[(1, M(s))])),
        _ => {}
    }
    if case != RootCase::Gl {
        for j in 1..n {
            simple.push(w(&[(1, L(j)), (-1, L(j + 1))]));
        }
        if n >= 1 {
            simple.push(w(&[(2, L(n))]));
        }
    }
    RootSystemCase {
        case,
        params: (s, n),
        positive_roots: pos,
        simple_roots: simple,
        root_factor: factor,
    }
}

impl RootSystemCase {
    pub fn weight_shape(&self) -> (usize, usize) {
        self.params
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Weight {
        let (s, n) = self.params;
        let sum = self
            .positive_roots
            .iter()
            .fold(Weight::zero(s, n), |acc, a| acc.add(a));
        sum.scale(&rational::frac(1, 2))
    }

    fn check_shape(&self, w: &Weight) -> Result<(), WeightError> {
        let (s, n) = self.params;
        if w.shape() != (s, n) {
            let (a, b) = w.shape();
            return Err(WeightError::DimensionMismatch(a, b, s, n));
        }
        Ok(())
    }

    /// `(w, alpha)` for every positive root.
    pub fn pairings(&self, w: &Weight) -> Vec<Rational> {
        self.positive_roots.iter().map(|a| w.dot(a)).collect()
    }
}

pub fn is_dominant(w: &Weight, rs: &RootSystemCase) -> Result<bool, WeightError> {
    rs.check_shape(w)?;
    Ok(rs.pairings(w).iter().all(|p| !p.is_negative()))
}

/// Weyl dimension formula, factor by factor.
pub fn weyl_dimension(hw: &Weight, rs: &RootSystemCase) -> Result<u64, WeightError> {
    factor_dimensions(hw, rs).map(|d| d.iter().product())
}

/// Dimensions of the factor modules (`so`/`gl` first, then `sp`).
pub fn factor_dimensions(hw: &Weight, rs: &RootSystemCase) -> Result<Vec<u64>, WeightError> {
    rs.check_shape(hw)?;
    if !hw.is_integral() {
        return Err(WeightError::NonIntegral(hw.to_string()));
    }
    if !is_dominant(hw, rs)? {
        return Err(WeightError::NotDominant(hw.to_string()));
    }
    let rho = rs.rho();
    let shifted = hw.add(&rho);
    let nfactors = if rs.case == RootCase::Gl { 1 } else { 2 };
    let mut out = Vec::with_capacity(nfactors);
    for fct in 0..nfactors {
        let mut d = Rational::one();
        for (a, _) in rs.positive_roots.iter().zip(&rs.root_factor).filter(|(_, &f)| f == fct) {
            d *= shifted.dot(a) / rho.dot(a);
        }
        assert!(d.is_integer() && d.is_positive(), "Weyl formula gave {d}");
        out.push(u64::try_from(d.to_integer()).expect("dimension fits in u64"));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RepLabel {
    #[serde(rename = "Ad_1")]
    Ad1,
    #[serde(rename = "Ad_2")]
    Ad2,
    #[serde(rename = "rho_1^* x rho_2")]
    Rho1DualRho2,
    #[serde(rename = "rho_1 x rho_2^*")]
    Rho1Rho2Dual,
    #[serde(rename = "rho_1 x rho_2")]
    Rho1Rho2,
    #[serde(rename = "rho_1^* x rho_2^*")]
    Rho1DualRho2Dual,
    #[serde(rename = "1")]
    Trivial,
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepLabel::Ad1 => "Ad_1",
            RepLabel::Ad2 => "Ad_2",
            RepLabel::Rho1DualRho2 => "rho_1^* x rho_2",
            RepLabel::Rho1Rho2Dual => "rho_1 x rho_2^*",
            RepLabel::Rho1Rho2 => "rho_1 x rho_2",
            RepLabel::Rho1DualRho2Dual => "rho_1^* x rho_2^*",
            RepLabel::Trivial => "1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsotropicCase {
    Even,
    Odd,
}

impl IsotropicCase {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "even" | "e" => Some(Self::Even),
            "odd" | "o" => Some(Self::Odd),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDecomposition {
    pub summands: Vec<(Weight, RepLabel)>,
}

/// Root system of the reductive part of the group for a maximal-type
/// isotropic Grassmannian with parameters `(k1, l1)`.
pub fn ambient_root_system(case: IsotropicCase, k1: usize, l1: usize) -> RootSystemCase {
    match case {
        IsotropicCase::Even => build_root_system(RootCase::SoEvenSp, (k1, l1)),
        IsotropicCase::Odd => build_root_system(RootCase::Gl, (k1 + l1, 0)),
    }
}

/// Levi factors `GL_{k1} x GL_{l1}` as runs of weight coordinates.
fn levi(case: IsotropicCase, k1: usize, l1: usize) -> (Vec<Coord>, Vec<Coord>) {
    match case {
        IsotropicCase::Even => (
            (1..=k1).map(Coord::Mu).collect(),
            (1..=l1).map(Coord::Lambda).collect(),
        ),
        IsotropicCase::Odd => (
            (l1 + 1..=k1 + l1).map(Coord::Mu).collect(),
            (1..=l1).map(Coord::Mu).collect(),
        ),
    }
}

/// Highest weights of the summands of the isotropy representation on the
/// fibre of `W_0`, restricted to the Levi factor.
pub fn psi_decomposition(case: IsotropicCase, k1: usize, l1: usize) -> Result<RepDecomposition, WeightError> {
    if k1 + l1 == 0 {
        return Err(WeightError::InvalidParameters("k1 + l1 must be positive".into()));
    }
    let rs = ambient_root_system(case, k1, l1);
    let (s, n) = rs.params;
    let (f1, f2) = levi(case, k1, l1);
    let w = |t: &[(i64, Coord)]| Weight::from_terms(s, n, t);
    // highest weights of rho, rho^* and Ad for a run of coordinates
    let std = |f: &[Coord]| (1, f[0]);
    let dual = |f: &[Coord]| (-1, f[f.len() - 1]);
    let mut out = Vec::new();
    if k1 > 1 {
        out.push((w(&[std(&f1), dual(&f1)]), RepLabel::Ad1));
    }
    if l1 > 1 {
        out.push((w(&[std(&f2), dual(&f2)]), RepLabel::Ad2));
    }
    if k1 > 0 && l1 > 0 {
        match case {
            IsotropicCase::Even => {
                out.push((w(&[dual(&f1), std(&f2)]), RepLabel::Rho1DualRho2));
                out.push((w(&[std(&f1), dual(&f2)]), RepLabel::Rho1Rho2Dual));
            }
            IsotropicCase::Odd => {
                out.push((w(&[std(&f1), std(&f2)]), RepLabel::Rho1Rho2));
                out.push((w(&[dual(&f1), dual(&f2)]), RepLabel::Rho1DualRho2Dual));
            }
        }
        out.push((Weight::zero(s, n), RepLabel::Trivial));
    }
    Ok(RepDecomposition { summands: out })
}

/// Dominant summands, in order.
pub fn bwb_sections(rep: &RepDecomposition, rs: &RootSystemCase) -> Result<Vec<(Weight, RepLabel)>, WeightError> {
    let mut out = Vec::new();
    for (w, l) in &rep.summands {
        if is_dominant(w, rs)? {
            out.push((w.clone(), *l));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaBranch {
    /// `C`
    Trivial,
    /// `C + r_1`
    TrivialPlusR1,
    /// `C + r_2`
    TrivialPlusR2,
}

/// The case table of the lemma on sections of `W_0`, transcribed directly.
pub fn lemma_branch(case: IsotropicCase, k1: usize, l1: usize) -> Result<LemmaBranch, WeightError> {
    if k1 == 0 || l1 == 0 {
        return Err(WeightError::InvalidParameters("k1 and l1 must be positive".into()));
    }
    if (k1, l1) == (1, 1) {
        return Err(WeightError::ExcludedCase);
    }
    Ok(match case {
        IsotropicCase::Even if k1 > 2 => LemmaBranch::Trivial,
        IsotropicCase::Even if k1 == 2 => LemmaBranch::TrivialPlusR1,
        IsotropicCase::Even => LemmaBranch::TrivialPlusR2,
        IsotropicCase::Odd if k1 > 1 && l1 > 1 => LemmaBranch::Trivial,
        IsotropicCase::Odd if k1 == 1 => LemmaBranch::TrivialPlusR1,
        IsotropicCase::Odd => LemmaBranch::TrivialPlusR2,
    })
}

/// Highest weight of the extra module named by the lemma, if any.
pub fn lemma_module(case: IsotropicCase, k1: usize, l1: usize) -> Result<Option<Weight>, WeightError> {
    let rs = ambient_root_system(case, k1, l1);
    let (s, n) = rs.params;
    use Coord::{Lambda as L, Mu as M};
    let w = |t: &[(i64, Coord)]| Weight::from_terms(s, n, t);
    Ok(match (case, lemma_branch(case, k1, l1)?) {
        (_, LemmaBranch::Trivial) => None,
        (IsotropicCase::Even, LemmaBranch::TrivialPlusR1) => Some(w(&[(1, M(1)), (-1, M(2))])),
        // the lemma names the sp factor's hw lambda_1; on so_2 the weight is -mu_1
        (IsotropicCase::Even, LemmaBranch::TrivialPlusR2) => Some(w(&[(1, L(1)), (-1, M(1))])),
        (IsotropicCase::Odd, LemmaBranch::TrivialPlusR1) => Some(w(&[(-1, M(l1)), (-1, M(l1 + 1))])),
        (IsotropicCase::Odd, LemmaBranch::TrivialPlusR2) => Some(w(&[(1, M(1)), (1, M(2))])),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub label: RepLabel,
    pub highest_weight: WeightJson,
    /// `(alpha, (hw, alpha))` for every positive root.
    pub pairings: Vec<(String, String)>,
    pub dominant: bool,
    pub dimension: Option<u64>,
    pub factor_dimensions: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionsReport {
    pub case: IsotropicCase,
    pub k1: usize,
    pub l1: usize,
    pub n: usize,
    pub root_case: RootCase,
    pub root_params: (usize, usize),
    pub summands: Vec<SummandReport>,
    pub sections: Vec<SummandReport>,
    pub total_dimension: u64,
    pub lemma_branch: LemmaBranch,
    /// Whether the BWB route reproduces the lemma's table, including the
    /// extra module's highest weight.
    pub agrees_with_lemma: bool,
    pub notes: Vec<String>,
}

/// Global sections of `W_0` on the base via Borel-Weil-Bott, compared
/// with the lemma. `n` is the odd ambient dimension for the even case
/// (`2 l1`) and `k1 + l1` for the odd case.
pub fn sections_report(case: IsotropicCase, k1: usize, l1: usize, n: usize) -> Result<SectionsReport, WeightError> {
    let expect_n = match case {
        IsotropicCase::Even => 2 * l1,
        IsotropicCase::Odd => k1 + l1,
    };
    if n != expect_n {
        return Err(WeightError::InvalidParameters(format!(
            "maximal type needs n = {expect_n} for k1 = {k1}, l1 = {l1}, got {n}"
        )));
    }
    let branch = lemma_branch(case, k1, l1)?;
    let rs = ambient_root_system(case, k1, l1);
    let rep = psi_decomposition(case, k1, l1)?;
    let summary = |w: &Weight, l: RepLabel| -> Result<SummandReport, WeightError> {
        let dominant = is_dominant(w, &rs)?;
        let dims = if dominant { Some(factor_dimensions(w, &rs)?) } else { None };
        Ok(SummandReport {
            label: l,
            highest_weight: w.to_json(),
            pairings: rs
                .positive_roots
                .iter()
                .zip(rs.pairings(w))
                .map(|(a, p)| (a.to_string(), rational::to_string(&p)))
                .collect(),
            dominant,
            dimension: dims.as_ref().map(|d| d.iter().product()),
            factor_dimensions: dims,
        })
    };
    let summands: Vec<SummandReport> = rep
        .summands
        .iter()
        .map(|(w, l)| summary(w, *l))
        .collect::<Result<_, _>>()?;
    let dominant = bwb_sections(&rep, &rs)?;
    let sections: Vec<SummandReport> = dominant
        .iter()
        .map(|(w, l)| summary(w, *l))
        .collect::<Result<_, _>>()?;
    let total_dimension = sections.iter().filter_map(|s| s.dimension).sum();

    let extra = lemma_module(case, k1, l1)?;
    let nontrivial: Vec<&Weight> = dominant.iter().map(|(w, _)| w).filter(|w| !w.is_zero()).collect();
    let has_trivial = dominant.iter().any(|(w, _)| w.is_zero());
    let agrees = has_trivial
        && match &extra {
            None => nontrivial.is_empty(),
            Some(e) => nontrivial.len() == 1 && nontrivial[0] == e,
        };

    let mut notes = Vec::new();
    match case {
        IsotropicCase::Even => {
            notes.push(format!("root data of so_{} + sp_{}", 2 * k1, 2 * l1));
            if branch == LemmaBranch::TrivialPlusR1 {
                notes.push("r_1: sp factor acts trivially, its highest weight is recorded as 0".into());
            }
        }
        IsotropicCase::Odd => {
            let (s, _) = rs.params;
            notes.push(format!(
                "gl_{s} read as sl_{s}: weights are taken modulo mu1+...+mu{s}"
            ));
            for (w, l) in &dominant {
                let tr: Rational = w.mu.iter().sum::<Rational>() / int(s as i64);
                notes.push(format!("{l}: trace component {}", rational::to_string(&tr)));
            }
        }
    }
    Ok(SectionsReport {
        case,
        k1,
        l1,
        n,
        root_case: rs.case,
        root_params: rs.params,
        summands,
        sections,
        total_dimension,
        lemma_branch: branch,
        agrees_with_lemma: agrees,
        notes,
    })
}

#[cfg(test)]
mod tests;
