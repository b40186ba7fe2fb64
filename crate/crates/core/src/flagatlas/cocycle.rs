//! Randomised exact checks of the atlas: cocycle identity, round trips and
//! coverage of the underlying manifold by the supported charts.

use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::charts::{build_chart, Chart};
use super::isotropic::{distinguished_index, isotropy_residual, orbit_charts};
use super::transition::transition_matrices;
use super::{enumerate_charts, ChartIndex, FlagError, FlagKind, FlagType};
use crate::liesuperalg::build_osp;
use crate::liesuperalg::build_pisp;
use crate::par;
use crate::supercalc::linalg::invert_dense;
use crate::supercalc::rational::{self, frac};
use crate::supercalc::{Rational, SuperMatrix, SuperPolynomial, Var};

pub const MAX_HEIGHT: i64 = 13;
pub const MAX_RETRIES: usize = 32;

/// Seeded source of small rationals; one independent stream per task.
pub struct PointSampler {
    pub(crate) rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT);
        let den = self.rng.gen_range(1..=MAX_HEIGHT);
        frac(num, den)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }
}

/// Random values for the even coordinates of a chart.
pub fn random_point(chart: &Chart, sampler: &mut PointSampler) -> HashMap<Var, Rational> {
    chart.even_coords().map(|v| (v, sampler.rational())).collect()
}

fn evaluate(chart: &Chart, point: &HashMap<Var, Rational>) -> Result<Vec<SuperMatrix>, FlagError> {
    let bind: HashMap<Var, SuperPolynomial> = point
        .iter()
        .map(|(v, r)| (*v, SuperPolynomial::constant(r.clone())))
        .collect();
    Ok(chart
        .levels
        .iter()
        .map(|z| z.substitute(&bind))
        .collect::<Result<_, _>>()?)
}

/// Whether `zs` has the shape of chart `target`: reading the free
/// coordinates off their positions and substituting reproduces `zs`.
pub(crate) fn consistent_with_chart(target: &Chart, zs: &[SuperMatrix]) -> Result<bool, FlagError> {
    let pos = target.coordinate_positions();
    let bind: HashMap<Var, SuperPolynomial> = pos
        .iter()
        .map(|(v, &(s, i, j))| (*v, zs[s].get(i, j).clone()))
        .collect();
    for (z, expect) in target.levels.iter().zip(zs) {
        if &z.substitute(&bind)? != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleFailure {
    pub charts: Vec<String>,
    pub point: Vec<(String, String)>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub flag: String,
    pub charts: usize,
    pub triples: usize,
    pub points_per_triple: usize,
    pub checked: usize,
    /// Triples where no point on the triple overlap was found.
    pub exhausted: usize,
    pub failures: Vec<CocycleFailure>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.exhausted == 0 && self.checked > 0
    }
}

fn describe(point: &HashMap<Var, Rational>) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = point
        .iter()
        .map(|(k, r)| (k.to_string(), rational::to_string(r)))
        .collect();
    v.sort();
    v
}

struct TripleOutcome {
    checked: usize,
    exhausted: bool,
    failures: Vec<CocycleFailure>,
}

fn check_triple(
    f: &FlagType,
    charts: &[Chart],
    (a, b, c): (usize, usize, usize),
    points: usize,
    sampler: &mut PointSampler,
) -> Result<TripleOutcome, FlagError> {
    let (ci, cj, ck) = (&charts[a], &charts[b], &charts[c]);
    let mut out = TripleOutcome {
        checked: 0,
        exhausted: false,
        failures: Vec::new(),
    };
    for _ in 0..points {
        let mut done = false;
        for _ in 0..MAX_RETRIES {
            let p = random_point(ci, sampler);
            let zi = evaluate(ci, &p)?;
            let composed = transition_matrices(f, &zi, &cj.index)
                .and_then(|zj| Ok((transition_matrices(f, &zj, &ck.index)?, zj)));
            let direct = transition_matrices(f, &zi, &ck.index);
            let ((via, zj), direct) = match (composed, direct) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(FlagError::SingularOverlap), _) | (_, Err(FlagError::SingularOverlap)) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            let names = vec![ci.index.to_string(), cj.index.to_string(), ck.index.to_string()];
            let mut fail = |reason: &str| {
                out.failures.push(CocycleFailure {
                    charts: names.clone(),
                    point: describe(&p),
                    reason: reason.into(),
                })
            };
            if via != direct {
                fail("composed transition differs from direct transition");
            }
            if !consistent_with_chart(cj, &zj)? || !consistent_with_chart(ck, &direct)? {
                fail("transition leaves the target chart's coordinate form");
            }
            if f.kind != FlagKind::Plain && !isotropy_residual(f, &direct[0])?.is_zero() {
                fail("isotropy residual is not preserved");
            }
            out.checked += 1;
            done = true;
            break;
        }
        if !done {
            out.exhausted = true;
            break;
        }
    }
    Ok(out)
}

/// Exact cocycle check over every ordered chart triple.
pub fn cocycle_check(f: &FlagType, seed: u64, points: usize) -> Result<CocycleReport, FlagError> {
    let idx = enumerate_charts(f);
    let charts: Vec<Chart> = idx.iter().map(|i| build_chart(f, i)).collect::<Result<_, _>>()?;
    let n = charts.len();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
        .collect();
    let outcomes = par::map_range(triples.len(), |t| {
        let mut sampler = PointSampler::new(seed, t as u64);
        check_triple(f, &charts, triples[t], points, &mut sampler)
    });
    let mut report = CocycleReport {
        flag: f.to_string(),
        charts: n,
        triples: triples.len(),
        points_per_triple: points,
        checked: 0,
        exhausted: 0,
        failures: Vec::new(),
    };
    for o in outcomes {
        let o = o?;
        report.checked += o.checked;
        report.exhausted += usize::from(o.exhausted);
        report.failures.extend(o.failures);
    }
    Ok(report)
}

/// `I -> J -> I` returns the original coordinates, for every ordered pair.
pub fn roundtrip_check(f: &FlagType, seed: u64, points: usize) -> Result<CocycleReport, FlagError> {
    let idx = enumerate_charts(f);
    let charts: Vec<Chart> = idx.iter().map(|i| build_chart(f, i)).collect::<Result<_, _>>()?;
    let n = charts.len();
    let mut report = CocycleReport {
        flag: f.to_string(),
        charts: n,
        triples: n * n,
        points_per_triple: points,
        checked: 0,
        exhausted: 0,
        failures: Vec::new(),
    };
    for a in 0..n {
        for b in 0..n {
            let mut sampler = PointSampler::new(seed, (a * n + b) as u64);
            let t = check_triple(f, &charts, (a, b, a), points, &mut sampler)?;
            report.checked += t.checked;
            report.exhausted += usize::from(t.exhausted);
            report.failures.extend(t.failures);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub flag: String,
    pub samples: usize,
    /// Samples lying in some chart of the atlas component.
    pub covered: usize,
    /// Samples that also lie in a chart of the other component.
    pub covered_by_other_component: usize,
    pub charts: usize,
    pub other_component_charts: usize,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.covered == self.samples && self.covered_by_other_component == 0
    }
}

/// Sample points of the underlying isotropic flag manifold (level 1) as
/// images of the base point under random unipotent elements of the even
/// part of the group, and test which supported charts contain them.
pub fn coverage_check(f: &FlagType, seed: u64, samples: usize) -> Result<CoverageReport, FlagError> {
    let g = match f.kind {
        FlagKind::Plain => return Err(FlagError::KindMismatch),
        FlagKind::EvenIsotropic => build_osp(f.k[0], f.l[0]).map_err(|e| FlagError::UnsupportedChart(e.to_string()))?,
        FlagKind::OddIsotropic => build_pisp(f.k[0]).map_err(|e| FlagError::UnsupportedChart(e.to_string()))?,
    };
    let nilpotent: Vec<SuperMatrix> = g
        .basis
        .iter()
        .filter(|b| !b.parity.is_odd())
        .map(|b| b.matrix.clone())
        .filter(|x| x.mul(x).map(|s| s.is_zero()).unwrap_or(false))
        .collect();
    let dist = distinguished_index(f)?;
    let base = {
        let idx = ChartIndex { levels: vec![dist] };
        let short = FlagType {
            k: f.k[..2].to_vec(),
            l: f.l[..2].to_vec(),
            kind: f.kind,
        };
        let chart = build_chart(&short, &idx)?;
        let zero: HashMap<Var, SuperPolynomial> =
            chart.coords.iter().map(|v| (*v, SuperPolynomial::zero())).collect();
        chart.levels[0].substitute(&zero)?
    };
    let orbit = orbit_charts(f, true)?;
    let (mut covered, mut other) = (0, 0);
    let size = f.k[0] + f.l[0];
    for t in 0..samples {
        let mut sampler = PointSampler::new(seed, t as u64);
        let mut z = base.clone();
        for _ in 0..3 * nilpotent.len().max(1) {
            let x = &nilpotent[sampler.rng.gen_range(0..nilpotent.len())];
            let u = SuperMatrix::identity(z.row_parities().to_vec())
                .add(&x.scale(&sampler.rational()))?;
            z = u.mul(&z)?;
        }
        debug_assert_eq!(z.rows(), size);
        let core: Vec<Vec<Rational>> = (0..z.rows())
            .map(|i| (0..z.cols()).map(|j| z.get(i, j).constant_term()).collect())
            .collect();
        let (mut in_comp, mut in_other) = (false, false);
        for o in &orbit {
            let rows = o.index.identity_rows(f.k[0]);
            let c: Vec<Vec<Rational>> = rows.iter().map(|&r| core[r].clone()).collect();
            if invert_dense(&c).is_some() {
                if o.identity_component {
                    in_comp = true;
                } else {
                    in_other = true;
                }
            }
        }
        covered += usize::from(in_comp);
        other += usize::from(in_other);
    }
    let comp = orbit.iter().filter(|o| o.identity_component).count();
    Ok(CoverageReport {
        flag: f.to_string(),
        samples,
        covered,
        covered_by_other_component: other,
        charts: comp,
        other_component_charts: orbit.len() - comp,
    })
}
