//! Named verification suites: parameterized checks read from a TOML
//! config, run in parallel and merged in declaration order.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use super::gate::hypothesis_gate;
use super::oracle::{oracle_global_fields, CertStatus, OracleProblem, Stability};
use crate::flagatlas::{
    build_chart, cocycle_check, enumerate_charts, isotropy_residual, orbit_charts, reduce_isotropic_chart,
    FlagType,
};
use crate::fundfields::{
    acting_algebra, basis_fields, check_homomorphism_with, coordinate_field_membership, kernel_of_action,
    span_dimension, FieldSpace, VectorField,
};
use crate::liesuperalg::{
    build_gl, build_osp, build_pisp, center, jacobi_defects, superdimension, AlgebraPresentation, StructureConstants,
};
use crate::supercalc::{Rational, SuperPolynomial};
use crate::weightsbwb::{sections_report, IsotropicCase, WeightError};

/// The shipped suites.
pub const DEFAULT_CONFIG: &str = include_str!("../../suites.toml");

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("bad suite config: {0}")]
    Config(String),
}

#[derive(Clone, Debug, Deserialize)]
pub struct SuiteConfig {
    #[serde(rename = "suite", default)]
    pub suites: Vec<SuiteSpec>,
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self, SuiteError> {
        toml::from_str(text).map_err(|e| SuiteError::Config(e.to_string()))
    }

    pub fn shipped() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("shipped suite config parses")
    }

    pub fn names(&self) -> Vec<&str> {
        self.suites.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&SuiteSpec> {
        self.suites.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct SuiteSpec {
    pub name: String,
    #[serde(default)]
    pub description: String,
    /// Only run with `slow` set in the options; otherwise every check is
    /// skipped.
    #[serde(default)]
    pub slow: bool,
    #[serde(rename = "check", default)]
    pub checks: Vec<CheckSpec>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    #[default]
    Pass,
    /// Negative control: the check is supposed to come out red.
    Fail,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CheckSpec {
    pub name: String,
    pub anchor: String,
    #[serde(default)]
    pub expect: Expect,
    #[serde(flatten)]
    pub kind: CheckKind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckKind {
    /// Closure, graded Jacobi and superdimension of one algebra.
    Algebra {
        algebra: String,
        params: Vec<usize>,
        superdim: Option<(usize, usize)>,
        #[serde(default)]
        corrupt: bool,
    },
    /// Closure and Jacobi for every gl(m|n), osp(m|n) (m >= 1) and
    /// pisp(n) with `m + n <= max_sum`.
    AlgebraSweep { max_sum: usize },
    Center {
        algebra: String,
        params: Vec<usize>,
        dim: usize,
    },
    Cocycle { flag: String, points: usize },
    /// Isotropy residual of every reduced orbit chart.
    Isotropy { flag: String },
    Homomorphism {
        flag: String,
        #[serde(default)]
        corrupt: bool,
    },
    Kernel { flag: String, dim: usize },
    Span { flag: String, superdim: (usize, usize) },
    /// Level-1 odd coordinate fields on the first chart are fundamental.
    FundamentalLemma { flag: String },
    Gate {
        flag: String,
        approved: bool,
        closed_by: Option<String>,
    },
    BwbTable { max_sum: usize },
    Oracle {
        flag: String,
        degree: u32,
        superdim: Option<(usize, usize)>,
        /// Compare with the acting algebra's superdimension minus its center.
        #[serde(default)]
        against_algebra: bool,
        /// Compare with the span of the fundamental fields.
        #[serde(default)]
        against_span: bool,
        max_unknowns: Option<usize>,
        points_per_overlap: Option<usize>,
        /// Test containment of a perturbed fundamental field instead.
        #[serde(default)]
        corrupt: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// Dimensions known only between bounds.
    Bracket,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl SuiteReport {
    /// A check is good when it passes as expected, is skipped, is a bracket,
    /// or is a negative control that failed.
    pub fn success(&self, config: &SuiteSpec) -> bool {
        self.checks.iter().zip(&config.checks).all(|(r, c)| match (r.status, c.expect) {
            (Status::Skip | Status::Bracket, _) => true,
            (Status::Pass, Expect::Pass) | (Status::Fail, Expect::Fail) => true,
            _ => false,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub slow: bool,
    /// Record wall time; off by default so reports are reproducible.
    pub timing: bool,
}

pub fn run_suite(name: &str, config: &SuiteConfig, opts: RunOptions) -> Result<SuiteReport, SuiteError> {
    let spec = config.get(name).ok_or_else(|| SuiteError::UnknownSuite(name.into()))?;
    let start = Instant::now();
    let indexed: Vec<(usize, &CheckSpec)> = spec.checks.iter().enumerate().collect();
    let checks = crate::par::map(&indexed, |&(i, c)| {
        let (status, data) = if spec.slow && !opts.slow {
            (Status::Skip, json!({ "reason": "slow suite; run with --slow" }))
        } else {
            run_check(&c.kind, opts.seed.wrapping_add(i as u64))
        };
        CheckResult {
            name: c.name.clone(),
            anchor: c.anchor.clone(),
            status,
            data,
        }
    });
    Ok(SuiteReport {
        suite: name.into(),
        seed: opts.seed,
        checks,
        runtime_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn error(e: impl std::fmt::Display) -> (Status, Value) {
    (Status::Fail, json!({ "error": e.to_string() }))
}

fn algebra(name: &str, params: &[usize]) -> Result<AlgebraPresentation, String> {
    let p = |i: usize| params.get(i).copied().ok_or_else(|| format!("{name} needs {} parameters", i + 1));
    match name {
        "gl" => build_gl(p(0)?, p(1)?),
        "osp" => build_osp(p(0)?, p(1)?),
        "pisp" => build_pisp(p(0)?),
        _ => return Err(format!("unknown algebra {name:?}")),
    }
    .map_err(|e| e.to_string())
}

/// Shift the first nonzero structure constant by one.
fn corrupt(sc: &mut StructureConstants) -> Option<(usize, usize, usize)> {
    let ((i, j), row) = sc.iter_mut().find(|(_, r)| !r.is_empty())?;
    row[0].1 += Rational::one();
    Some((*i, *j, row[0].0))
}

fn algebra_check(g: &AlgebraPresentation, superdim: Option<(usize, usize)>, corrupted: bool) -> (Status, Value) {
    let mut sc = match g.structure_constants() {
        Ok(sc) => sc,
        Err(e) => return (Status::Fail, json!({ "closure": false, "error": e.to_string() })),
    };
    let shifted = if corrupted { corrupt(&mut sc) } else { None };
    let defects = jacobi_defects(g, &sc);
    let sd = superdimension(g);
    let ok = defects.is_empty() && superdim.is_none_or(|s| s == sd);
    let label = |t: &(usize, usize, usize)| {
        vec![g.basis[t.0].label.clone(), g.basis[t.1].label.clone(), g.basis[t.2].label.clone()]
    };
    (
        verdict(ok),
        json!({
            "algebra": format!("{:?}", g.kind).to_lowercase(),
            "params": g.params,
            "superdim": sd,
            "expected_superdim": superdim,
            "closure": true,
            "jacobi_defects": defects.len(),
            "first_defect": defects.first().map(label),
            "corrupted_constant": shifted,
        }),
    )
}

fn algebra_sweep(max_sum: usize) -> (Status, Value) {
    let mut cases: Vec<(&str, Vec<usize>)> = Vec::new();
    for m in 0..=max_sum {
        for n in 0..=max_sum - m {
            if m + n > 0 {
                cases.push(("gl", vec![m, n]));
            }
            if n % 2 == 0 && m > 0 {
                cases.push(("osp", vec![m, n]));
            }
        }
    }
    for n in 1..=max_sum {
        cases.push(("pisp", vec![n]));
    }
    let results = crate::par::map(&cases, |(name, params)| match algebra(name, params) {
        Ok(g) => algebra_check(&g, None, false).0 == Status::Pass,
        Err(_) => false,
    });
    let failed: Vec<String> = cases
        .iter()
        .zip(&results)
        .filter(|(_, ok)| !**ok)
        .map(|((n, p), _)| format!("{n}{p:?}"))
        .collect();
    (verdict(failed.is_empty()), json!({ "algebras": cases.len(), "failed": failed }))
}

/// Superdimension of a span of homogeneous elements of `g`.
fn superdim_of(g: &AlgebraPresentation, xs: &[crate::supercalc::SuperMatrix]) -> (usize, usize) {
    let odd = xs
        .iter()
        .filter(|x| {
            g.coordinates(x)
                .is_some_and(|c| c.iter().zip(&g.basis).any(|(c, b)| !c.is_zero() && b.parity.is_odd()))
        })
        .count();
    (xs.len() - odd, odd)
}

fn with_flag(flag: &str, f: impl FnOnce(FlagType) -> (Status, Value)) -> (Status, Value) {
    match flag.parse::<FlagType>() {
        Ok(t) => f(t),
        Err(e) => error(e),
    }
}

fn run_check(kind: &CheckKind, seed: u64) -> (Status, Value) {
    match kind {
        CheckKind::Algebra {
            algebra: name,
            params,
            superdim,
            corrupt,
        } => match algebra(name, params) {
            Ok(g) => algebra_check(&g, *superdim, *corrupt),
            Err(e) => error(e),
        },
        CheckKind::AlgebraSweep { max_sum } => algebra_sweep(*max_sum),
        CheckKind::Center {
            algebra: name,
            params,
            dim,
        } => match algebra(name, params).and_then(|g| center(&g).map_err(|e| e.to_string())) {
            Ok(z) => (verdict(z.len() == *dim), json!({ "center_dim": z.len(), "expected": dim })),
            Err(e) => error(e),
        },
        CheckKind::Cocycle { flag, points } => with_flag(flag, |f| match cocycle_check(&f, seed, *points) {
            Ok(r) => (
                verdict(r.passed()),
                json!({
                    "flag": r.flag,
                    "seed": seed,
                    "charts": r.charts,
                    "triples": r.triples,
                    "checked": r.checked,
                    "exhausted": r.exhausted,
                    "failures": r.failures,
                }),
            ),
            Err(e) => error(e),
        }),
        CheckKind::Isotropy { flag } => with_flag(flag, isotropy),
        CheckKind::Homomorphism { flag, corrupt: bad } => with_flag(flag, |f| homomorphism(&f, *bad)),
        CheckKind::Kernel { flag, dim } => with_flag(flag, |f| {
            match acting_algebra(&f).and_then(|g| kernel_of_action(&g, &f)) {
                Ok(k) => (verdict(k.len() == *dim), json!({ "flag": f.to_string(), "kernel_dim": k.len(), "expected": dim })),
                Err(e) => error(e),
            }
        }),
        CheckKind::Span { flag, superdim } => with_flag(flag, |f| {
            let i = enumerate_charts(&f).remove(0);
            match acting_algebra(&f).and_then(|g| span_dimension(&g, &f, &i)) {
                Ok(s) => (
                    verdict(s == *superdim),
                    json!({ "flag": f.to_string(), "chart": i.to_string(), "span": s, "expected": superdim }),
                ),
                Err(e) => error(e),
            }
        }),
        CheckKind::FundamentalLemma { flag } => with_flag(flag, fundamental_lemma),
        CheckKind::Gate {
            flag,
            approved,
            closed_by,
        } => with_flag(flag, |f| {
            let r = hypothesis_gate(&f);
            let failed = r.failed();
            let named = closed_by.as_deref().is_none_or(|c| failed.contains(&c));
            (
                verdict(r.approved == *approved && named),
                serde_json::to_value(&r).expect("gate report serializes"),
            )
        }),
        CheckKind::BwbTable { max_sum } => bwb_table(*max_sum),
        CheckKind::Oracle {
            flag,
            degree,
            superdim,
            against_algebra,
            against_span,
            max_unknowns,
            points_per_overlap,
            corrupt: bad,
        } => with_flag(flag, |f| {
            let mut p = OracleProblem::new(f, *degree);
            p.seed = seed;
            if let Some(m) = max_unknowns {
                p.max_unknowns = *m;
            }
            if let Some(k) = points_per_overlap {
                p.points_per_overlap = *k;
            }
            oracle(&p, *superdim, *against_algebra, *against_span, *bad)
        }),
    }
}

fn isotropy(f: FlagType) -> (Status, Value) {
    let orbit = match orbit_charts(&f, false) {
        Ok(o) => o,
        Err(e) => return error(e),
    };
    let mut bad = Vec::new();
    for o in &orbit {
        match reduce_isotropic_chart(&f, &o.index).and_then(|c| isotropy_residual(&f, &c.matrix)) {
            Ok(r) if r.is_zero() => {}
            Ok(_) => bad.push(format!("{:?}", o.index)),
            Err(e) => bad.push(format!("{:?}: {e}", o.index)),
        }
    }
    (verdict(bad.is_empty()), json!({ "flag": f.to_string(), "charts": orbit.len(), "nonzero": bad }))
}

fn homomorphism(f: &FlagType, corrupted: bool) -> (Status, Value) {
    let run = || -> Result<(Status, Value), String> {
        let g = acting_algebra(f).map_err(|e| e.to_string())?;
        let mut sc = g.structure_constants().map_err(|e| e.to_string())?;
        let shifted = if corrupted { corrupt(&mut sc) } else { None };
        let i = enumerate_charts(f).remove(0);
        let chart = build_chart(f, &i).map_err(|e| e.to_string())?;
        let r = check_homomorphism_with(&g, &sc, &chart).map_err(|e| e.to_string())?;
        Ok((
            verdict(r.passed()),
            json!({
                "flag": f.to_string(),
                "chart": r.chart,
                "pairs": r.pairs,
                "observed_signs": r.observed,
                "failures": r.failures.len(),
                "first_failure": r.failures.first(),
                "corrupted_constant": shifted,
            }),
        ))
    };
    run().unwrap_or_else(error)
}

fn fundamental_lemma(f: FlagType) -> (Status, Value) {
    let i = enumerate_charts(&f).remove(0);
    let chart = match build_chart(&f, &i) {
        Ok(c) => c,
        Err(e) => return error(e),
    };
    let pos = chart.coordinate_positions();
    let odd: Vec<_> = chart.odd_coords().filter(|v| pos[v].0 == 0).collect();
    let mut missing = Vec::new();
    for v in &odd {
        match coordinate_field_membership(&f, &i, *v) {
            Ok(true) => {}
            Ok(false) => missing.push(v.to_string()),
            Err(e) => missing.push(format!("{v}: {e}")),
        }
    }
    (
        verdict(!odd.is_empty() && missing.is_empty()),
        json!({ "flag": f.to_string(), "chart": i.to_string(), "odd_coordinates": odd.len(), "not_fundamental": missing }),
    )
}

fn bwb_table(max_sum: usize) -> (Status, Value) {
    let mut cases = Vec::new();
    for case in [IsotropicCase::Even, IsotropicCase::Odd] {
        for k1 in 1..max_sum {
            for l1 in 1..=max_sum - k1 {
                cases.push((case, k1, l1));
            }
        }
    }
    let mut rows = BTreeMap::new();
    let (mut agree, mut excluded, mut bad) = (0, 0, Vec::new());
    for (case, k1, l1) in cases {
        let n = match case {
            IsotropicCase::Even => 2 * l1,
            IsotropicCase::Odd => k1 + l1,
        };
        let key = format!("{case:?}({k1},{l1})").to_lowercase();
        match sections_report(case, k1, l1, n) {
            Ok(r) if r.agrees_with_lemma => {
                agree += 1;
                rows.insert(key, json!({ "branch": r.lemma_branch, "dimension": r.total_dimension }));
            }
            Ok(r) => bad.push(json!({ "case": key, "branch": r.lemma_branch, "notes": r.notes })),
            Err(WeightError::ExcludedCase) => excluded += 1,
            Err(e) => bad.push(json!({ "case": key, "error": e.to_string() })),
        }
    }
    (
        verdict(bad.is_empty()),
        json!({ "agree": agree, "excluded": excluded, "disagree": bad, "table": rows }),
    )
}

/// A fundamental field plus `z_a^2 d/dz_b` for the first two even
/// coordinates.
fn perturbed(fields: &[VectorField]) -> Option<VectorField> {
    let v = fields.iter().find(|v| !v.parity.is_odd())?;
    let evens: Vec<_> = v.coeffs.keys().filter(|z| !z.is_odd()).copied().collect();
    let (a, b) = (*evens.first()?, *evens.get(1).or(evens.first())?);
    let mut extra = VectorField::zero(v.chart.clone(), v.parity);
    extra.coeffs.insert(b, SuperPolynomial::var(a).pow(2));
    v.add(&extra).ok()
}

fn oracle(
    p: &OracleProblem,
    superdim: Option<(usize, usize)>,
    against_algebra: bool,
    against_span: bool,
    corrupted: bool,
) -> (Status, Value) {
    let o = match oracle_global_fields(p) {
        Ok(o) => o,
        Err(e) => return (Status::Fail, json!({ "flag": p.flag.to_string(), "seed": p.seed, "error": e.to_string() })),
    };
    let dims = (o.even_dim, o.odd_dim);
    let mut data = json!({
        "flag": p.flag.to_string(),
        "seed": p.seed,
        "degree": p.degree_bound,
        "source": o.source.to_string(),
        "dims": dims,
        "unknowns": o.unknowns,
        "blocks": o.blocks,
        "lines": o.lines,
        "stability": o.stability,
        "certificate": o.certificate,
        "coverage": o.coverage,
    });
    let mut ok = o.certificate.status != CertStatus::Failed;
    if let Some(s) = superdim {
        data["expected"] = json!(s);
        ok &= dims == s;
    }
    let fundamental = acting_algebra(&p.flag).and_then(|g| {
        let chart = build_chart(&p.flag, &o.source)?;
        Ok((basis_fields(&g, &chart)?, g))
    });
    let (fields, g) = match fundamental {
        Ok(x) => x,
        Err(e) => return error(e),
    };
    if corrupted {
        let Some(v) = perturbed(&fields) else {
            return error("no even field to perturb");
        };
        let inside = o.basis.contains(&v);
        data["perturbed_field"] = json!(v.to_string());
        data["perturbed_contained"] = json!(inside);
        return (verdict(inside), data);
    }
    let outside = fields.iter().filter(|v| !o.basis.contains(v)).count();
    data["fundamental_outside_oracle"] = json!(outside);
    ok &= outside == 0;
    if against_span {
        let span = FieldSpace::new(o.source.clone(), fields.iter().cloned());
        let split = {
            let odd = fields.iter().filter(|v| v.parity.is_odd()).collect::<Vec<_>>();
            let even = FieldSpace::new(o.source.clone(), fields.iter().filter(|v| !v.parity.is_odd()).cloned());
            (even.dim(), FieldSpace::new(o.source.clone(), odd.into_iter().cloned()).dim())
        };
        data["span"] = json!(split);
        data["span_dim"] = json!(span.dim());
        ok &= split == dims;
    }
    if against_algebra {
        match center(&g) {
            Ok(z) => {
                let (ge, go) = superdimension(&g);
                let (ze, zo) = superdim_of(&g, &z);
                let expect = (ge - ze, go - zo);
                data["algebra_mod_center"] = json!(expect);
                ok &= expect == dims;
            }
            Err(e) => return error(e),
        }
    }
    let status = match (&o.stability, ok) {
        (_, false) => Status::Fail,
        (Stability::Stable { .. }, true) => Status::Pass,
        (_, true) => Status::Bracket,
    };
    (status, data)
}
