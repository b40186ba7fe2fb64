//! Which main theorem, if any, covers a flag type.

use serde::Serialize;

use crate::flagatlas::{functions_predicate, gl_hypotheses_predicate, FlagKind, FlagType, FunctionsBranch, GlHypotheses};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Full isotropic flags, even form: `v = osp(2m|2n)`.
    OspFlag,
    /// Full isotropic flags, odd form: `v = pisp(n)`.
    PispFlag,
    /// Isotropic super-Grassmannians of maximal type.
    OspGrassmannian,
    PispGrassmannian,
    /// Plain flags of length at least two: `v = pgl(m|n)`.
    GlFlag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub flag: String,
    pub theorem: Option<Theorem>,
    pub approved: bool,
    pub checks: Vec<GateCheck>,
    pub notes: Vec<String>,
}

impl GateReport {
    /// Names of the failed checks.
    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> GateCheck {
    GateCheck {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// `(k_i, l_i) != (k_{i-1}, 0), (0, l_{i-1})` for `i >= 2`.
fn step_conditions(f: &FlagType) -> GateCheck {
    let mut bad = Vec::new();
    for i in 2..=f.length() {
        if (f.k[i], f.l[i]) == (f.k[i - 1], 0) {
            bad.push(format!("(k_{i},l_{i}) = (k_{},0)", i - 1));
        }
        if (f.k[i], f.l[i]) == (0, f.l[i - 1]) {
            bad.push(format!("(k_{i},l_{i}) = (0,l_{})", i - 1));
        }
    }
    check("no full or empty steps", bad.is_empty(), bad.join("; "))
}

fn bounds(f: &FlagType) -> GateCheck {
    let (k1, l1) = (f.k[1], f.l[1]);
    match f.kind {
        FlagKind::OddIsotropic => check(
            "k_1 >= 3, l_1 >= 2",
            k1 >= 3 && l1 >= 2,
            format!("k_1 = {k1}, l_1 = {l1}"),
        ),
        _ => check(
            "k_1 >= 1, l_1 >= 1",
            k1 >= 1 && l1 >= 1,
            format!("k_1 = {k1}, l_1 = {l1}"),
        ),
    }
}

fn maximal_type(f: &FlagType) -> GateCheck {
    let (k0, l0, k1, l1) = (f.k[0], f.l[0], f.k[1], f.l[1]);
    match f.kind {
        FlagKind::EvenIsotropic => check(
            "maximal type, m = 2k_1, n = 2l_1",
            k0 == 2 * k1 && l0 == 2 * l1,
            format!("C^{{{k0}|{l0}}}, k_1 = {k1}, l_1 = {l1}"),
        ),
        FlagKind::OddIsotropic => check(
            "maximal type, n = k_1 + l_1",
            k0 == l0 && k0 == k1 + l1,
            format!("C^{{{k0}|{l0}}}, k_1 = {k1}, l_1 = {l1}"),
        ),
        FlagKind::Plain => check("isotropic kind", false, "plain flag"),
    }
}

pub fn hypothesis_gate(f: &FlagType) -> GateReport {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let r = f.length();
    let theorem = match (f.kind, r) {
        (FlagKind::Plain, 1) => None,
        (FlagKind::Plain, _) => Some(Theorem::GlFlag),
        (FlagKind::EvenIsotropic, 1) => Some(Theorem::OspGrassmannian),
        (FlagKind::OddIsotropic, 1) => Some(Theorem::PispGrassmannian),
        (FlagKind::EvenIsotropic, _) => Some(Theorem::OspFlag),
        (FlagKind::OddIsotropic, _) => Some(Theorem::PispFlag),
    };
    match theorem {
        None => notes.push("plain super-Grassmannian: no theorem of this family applies".into()),
        Some(Theorem::GlFlag) => {
            let gl = gl_hypotheses_predicate(f);
            let detail = match &gl {
                GlHypotheses::Satisfied => String::new(),
                GlHypotheses::Violated(v) => v.join("; "),
            };
            checks.push(check("gl flag restrictions", gl == GlHypotheses::Satisfied, detail));
        }
        Some(Theorem::OspGrassmannian) | Some(Theorem::PispGrassmannian) => {
            checks.push(maximal_type(f));
            checks.push(bounds(f));
        }
        Some(Theorem::OspFlag) | Some(Theorem::PispFlag) => {
            checks.push(maximal_type(f));
            checks.push(bounds(f));
            checks.push(step_conditions(f));
            let fiber = f.fiber().expect("length at least two");
            let functions = functions_predicate(&fiber);
            checks.push(check(
                "constant functions on the fiber",
                functions == FunctionsBranch::ConstantFunctions,
                format!("fiber {fiber}"),
            ));
            let gl = gl_hypotheses_predicate(&fiber);
            let detail = match &gl {
                GlHypotheses::Satisfied => format!("fiber {fiber}"),
                GlHypotheses::Violated(v) => v.join("; "),
            };
            checks.push(check("fiber fields are pgl(k_1|l_1)", gl == GlHypotheses::Satisfied, detail));
            if fiber.length() == 1 {
                notes.push(format!(
                    "fiber {fiber} is a super-Grassmannian; the gl restrictions are evaluated as stated for flags"
                ));
            }
        }
    }
    let approved = theorem.is_some() && checks.iter().all(|c| c.passed);
    GateReport {
        flag: f.to_string(),
        theorem,
        approved,
        checks,
        notes,
    }
}
