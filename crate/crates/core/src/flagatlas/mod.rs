//! Flag types, atlases, transition functions and isotropic charts.

mod charts;
mod cocycle;
mod isotropic;
mod predicates;
mod transition;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::supercalc::CalcError;

pub use charts::{binomial, build_chart, coordinate_counts, enumerate_charts, enumerate_plain_charts, Chart};
pub use cocycle::{
    cocycle_check, coverage_check, random_point, roundtrip_check, CocycleReport, CoverageReport,
    PointSampler, MAX_RETRIES,
};
pub use isotropic::{
    distinguished_index, isotropy_residual, orbit_charts, reduce_isotropic_chart, IsotropicChart,
    OrbitElement,
};
pub use predicates::{functions_predicate, gl_hypotheses_predicate, FunctionsBranch, GlHypotheses};
pub use transition::{transition, transition_matrices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagKind {
    Plain,
    EvenIsotropic,
    OddIsotropic,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlagError {
    #[error("chain condition violated: {0}")]
    ChainViolation(String),
    #[error("not of maximal type: {0}")]
    MaximalTypeViolation(String),
    #[error("operation needs an isotropic flag type")]
    KindMismatch,
    #[error("unsupported chart: {0}")]
    UnsupportedChart(String),
    #[error("invalid chart index: {0}")]
    InvalidIndex(String),
    #[error("point lies off the chart overlap")]
    SingularOverlap,
    #[error(transparent)]
    Calc(#[from] CalcError),
}

/// Flag type `k|l` with `k_0 = m`, `l_0 = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagType {
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub kind: FlagKind,
}

impl FlagType {
    /// Length `r` of the flag.
    pub fn length(&self) -> usize {
        self.k.len() - 1
    }

    pub fn m(&self) -> usize {
        self.k[0]
    }

    pub fn n(&self) -> usize {
        self.l[0]
    }

    /// The flag type `k'|l'` of the fiber over the level-1 Grassmannian.
    pub fn fiber(&self) -> Option<FlagType> {
        (self.length() > 1).then(|| FlagType {
            k: self.k[1..].to_vec(),
            l: self.l[1..].to_vec(),
            kind: FlagKind::Plain,
        })
    }

    pub fn plain(&self) -> FlagType {
        FlagType {
            kind: FlagKind::Plain,
            ..self.clone()
        }
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let tag = match self.kind {
            FlagKind::Plain => "",
            FlagKind::EvenIsotropic => "e",
            FlagKind::OddIsotropic => "o",
        };
        write!(f, "F{tag}({}|{})", join(&self.k), join(&self.l))
    }
}

/// Parses `F(3,1|2,1)`, `Fe(4,2|4,2)`, `Fo(5,3|5,2)` or a bare `3,1|2,1`,
/// then validates.
impl std::str::FromStr for FlagType {
    type Err = FlagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FlagError::ChainViolation(format!("cannot parse flag type {s:?}"));
        let (kind, body) = if let Some(rest) = s.strip_prefix("Fe(") {
            (FlagKind::EvenIsotropic, rest.strip_suffix(')').ok_or_else(bad)?)
        } else if let Some(rest) = s.strip_prefix("Fo(") {
            (FlagKind::OddIsotropic, rest.strip_suffix(')').ok_or_else(bad)?)
        } else if let Some(rest) = s.strip_prefix("F(") {
            (FlagKind::Plain, rest.strip_suffix(')').ok_or_else(bad)?)
        } else {
            (FlagKind::Plain, s)
        };
        let (k, l) = body.split_once('|').ok_or_else(bad)?;
        let nums = |t: &str| -> Result<Vec<usize>, FlagError> {
            t.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
        };
        validate_flag_type(&nums(k)?, &nums(l)?, kind)
    }
}

pub fn validate_flag_type(k: &[usize], l: &[usize], kind: FlagKind) -> Result<FlagType, FlagError> {
    if k.len() != l.len() {
        return Err(FlagError::ChainViolation(format!(
            "k and l have different lengths {} and {}",
            k.len(),
            l.len()
        )));
    }
    if k.len() < 2 {
        return Err(FlagError::ChainViolation("length r must be at least 1".into()));
    }
    for s in 1..k.len() {
        if k[s] > k[s - 1] {
            return Err(FlagError::ChainViolation(format!("k_{s} > k_{}", s - 1)));
        }
        if l[s] > l[s - 1] {
            return Err(FlagError::ChainViolation(format!("l_{s} > l_{}", s - 1)));
        }
        if k[s] + l[s] >= k[s - 1] + l[s - 1] {
            return Err(FlagError::ChainViolation(format!(
                "k_{s}+l_{s} = {} is not less than k_{p}+l_{p} = {}",
                k[s] + l[s],
                k[s - 1] + l[s - 1],
                p = s - 1
            )));
        }
    }
    let r = k.len() - 1;
    if k[r] + l[r] == 0 {
        return Err(FlagError::ChainViolation("k_r + l_r must be positive".into()));
    }
    match kind {
        FlagKind::Plain => {}
        FlagKind::EvenIsotropic => {
            if k[0] != 2 * k[1] && k[0] != 2 * k[1] + 1 {
                return Err(FlagError::MaximalTypeViolation(format!(
                    "k_0 = {} must be 2k_1 or 2k_1+1 with k_1 = {}",
                    k[0], k[1]
                )));
            }
            if l[0] != 2 * l[1] {
                return Err(FlagError::MaximalTypeViolation(format!(
                    "l_0 = {} must be 2l_1 with l_1 = {}",
                    l[0], l[1]
                )));
            }
        }
        FlagKind::OddIsotropic => {
            if k[0] != l[0] || k[0] != k[1] + l[1] {
                return Err(FlagError::MaximalTypeViolation(format!(
                    "need k_0 = l_0 = k_1 + l_1, got k_0 = {}, l_0 = {}, k_1 + l_1 = {}",
                    k[0],
                    l[0],
                    k[1] + l[1]
                )));
            }
        }
    }
    Ok(FlagType {
        k: k.to_vec(),
        l: l.to_vec(),
        kind,
    })
}

/// Chart index `I = (I_1, ..., I_r)`; 0-based sorted subsets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChartIndex {
    pub levels: Vec<LevelIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LevelIndex {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl ChartIndex {
    pub fn validate(&self, f: &FlagType) -> Result<(), FlagError> {
        if self.levels.len() != f.length() {
            return Err(FlagError::InvalidIndex(format!(
                "{} levels for a flag of length {}",
                self.levels.len(),
                f.length()
            )));
        }
        for (s, lv) in self.levels.iter().enumerate() {
            let ok = |set: &[usize], size: usize, bound: usize| {
                set.len() == size
                    && set.windows(2).all(|w| w[0] < w[1])
                    && set.iter().all(|&i| i < bound)
            };
            if !ok(&lv.even, f.k[s + 1], f.k[s]) || !ok(&lv.odd, f.l[s + 1], f.l[s]) {
                return Err(FlagError::InvalidIndex(format!("level {} of {self}", s + 1)));
            }
        }
        Ok(())
    }

    /// Row numbers of the identity block at level `s` (1-based).
    pub fn identity_rows(&self, s: usize, k_prev: usize) -> Vec<usize> {
        self.levels[s - 1].identity_rows(k_prev)
    }
}

impl LevelIndex {
    /// Rows `i in I_0` and `k_prev + i, i in I_1`, in column order.
    pub fn identity_rows(&self, k_prev: usize) -> Vec<usize> {
        self.even
            .iter()
            .copied()
            .chain(self.odd.iter().map(|i| k_prev + i))
            .collect()
    }
}

impl fmt::Display for ChartIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[usize]| {
            v.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let parts: Vec<String> = self
            .levels
            .iter()
            .map(|lv| format!("{{{}|{}}}", set(&lv.even), set(&lv.odd)))
            .collect();
        write!(f, "I({})", parts.join(";"))
    }
}

#[cfg(test)]
mod tests;
