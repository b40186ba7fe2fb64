use serde::Serialize;

use super::FlagType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionsBranch {
    ConstantFunctions,
    GrassmannAlgebra,
}

/// Global functions on a plain flag supermanifold: a Grassmann algebra
/// with `mn` generators when some level `i >= 1` has `(k_i, l_i)` equal to
/// `(m, 0)` or `(0, n)`, constants otherwise.
pub fn functions_predicate(f: &FlagType) -> FunctionsBranch {
    let (m, n) = (f.m(), f.n());
    let hit = (1..=f.length()).any(|i| (f.k[i], f.l[i]) == (m, 0) || (f.k[i], f.l[i]) == (0, n));
    if hit {
        FunctionsBranch::GrassmannAlgebra
    } else {
        FunctionsBranch::ConstantFunctions
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "violated", rename_all = "kebab-case")]
pub enum GlHypotheses {
    Satisfied,
    Violated(Vec<String>),
}

/// Restrictions on the flag type under which every vector field on the
/// plain flag supermanifold comes from `gl(m|n)`.
pub fn gl_hypotheses_predicate(f: &FlagType) -> GlHypotheses {
    let (k, l) = (&f.k, &f.l);
    let (m, n) = (f.m(), f.n());
    let r = f.length();
    let mut bad = Vec::new();
    for i in 2..=r {
        if (k[i], l[i]) == (k[i - 1], 0) {
            bad.push(format!("(k_{i},l_{i}) = (k_{p},0)", p = i - 1));
        }
        if (k[i], l[i]) == (0, l[i - 1]) {
            bad.push(format!("(k_{i},l_{i}) = (0,l_{p})", p = i - 1));
        }
    }
    for i in 1..=r {
        let (kp, ki, lp, li) = (k[i - 1], k[i], l[i - 1], l[i]);
        if kp == 1 && ki == 0 && lp >= 1 && li == lp - 1 {
            bad.push(format!("(k_{p},k_{i}|l_{p},l_{i}) = (1,0|l,l-1)", p = i - 1));
        }
        if kp == 1 && ki == 1 && li == 1 {
            bad.push(format!("(k_{p},k_{i}|l_{p},l_{i}) = (1,1|l,1)", p = i - 1));
        }
        if lp == 1 && li == 0 && kp >= 1 && ki == kp - 1 {
            bad.push(format!("(k_{p},k_{i}|l_{p},l_{i}) = (k,k-1|1,0)", p = i - 1));
        }
        if lp == 1 && li == 1 && ki == 1 {
            bad.push(format!("(k_{p},k_{i}|l_{p},l_{i}) = (k,1|1,1)", p = i - 1));
        }
    }
    if k[1..].iter().all(|&x| x == 0) && l[1] == n {
        bad.push("k|l = (0,...,0|n,l_2,...,l_r)".into());
    }
    if k[1] == m && l[1..].iter().all(|&x| x == 0) {
        bad.push("k|l = (m,k_2,...,k_r|0,...,0)".into());
    }
    if bad.is_empty() {
        GlHypotheses::Satisfied
    } else {
        GlHypotheses::Violated(bad)
    }
}
