//! Brute-force space of global vector fields with polynomial coefficients.
//!
//! A field is written on the source chart with unknown coefficients. For
//! every other chart of the family it is pushed through the exact
//! transition along random lines that cross the divisor where the source
//! chart stops, and the principal parts at the crossing are required to
//! vanish. The unknowns are split by torus weight and parity, which the
//! conditions respect, so each block is solved on its own.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use super::ring::{
    det, dual_inverse, dual_mul, dual_rows, inverse, lift_matrix, mat_mul, select_rows, DenRing,
    Dual, LaurentRing, Mat, MonomialCache, PolyRing, Ring,
};
use crate::flagatlas::MAX_RETRIES;
use crate::flagatlas::{
    build_chart, coverage_check, enumerate_charts, Chart, ChartIndex, CoverageReport, FlagError,
    FlagKind, FlagType, PointSampler,
};
use crate::fundfields::{FieldSpace, VectorField};
use crate::liesuperalg::{gamma, upsilon};
use crate::par;
use crate::supercalc::linalg::{Echelon, SparseRow};
use crate::supercalc::{Block, Monomial, Parity, Rational, SuperMatrix, SuperPolynomial, Var};

pub const MAX_UNKNOWNS: usize = 50_000;
const MAX_BATCHES: usize = 12;
const START_TERMS: i32 = 6;
const MAX_TERMS: i32 = 96;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleProblem {
    pub flag: FlagType,
    pub degree_bound: u32,
    /// Source chart first.
    pub chart_family: Vec<ChartIndex>,
    pub seed: u64,
    /// Lines per chart in each round.
    pub points_per_overlap: usize,
    pub max_unknowns: usize,
}

impl OracleProblem {
    pub fn new(flag: FlagType, degree_bound: u32) -> Self {
        let chart_family = enumerate_charts(&flag);
        Self {
            flag,
            degree_bound,
            chart_family,
            seed: 1,
            points_per_overlap: 4,
            max_unknowns: MAX_UNKNOWNS,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("degree bound {0} is below 2")]
    DegreeTooSmall(u32),
    #[error("ansatz has {unknowns} unknowns, the limit is {limit}")]
    AnsatzTooLarge { unknowns: usize, limit: usize },
    #[error("the chart family is empty")]
    EmptyFamily,
    #[error("no line with a rational crossing found on chart {0}")]
    NoLine(String),
    #[error("series precision limit reached on chart {0}")]
    Precision(String),
    #[error(transparent)]
    Flag(#[from] FlagError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Stability {
    Stable { degrees: (u32, u32) },
    /// Dimensions at the bound and one above disagree.
    Bracket { lower: (usize, usize), upper: (usize, usize) },
    /// The higher bound could not be run.
    Unchecked { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertStatus {
    Certified,
    Failed,
    Skipped,
}

/// Symbolic recheck of the basis on one chart pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub status: CertStatus,
    pub chart: Option<String>,
    pub fields: usize,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub flag: FlagType,
    pub source: ChartIndex,
    pub degree_bound: u32,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub fields: Vec<VectorField>,
    pub basis: FieldSpace,
    pub unknowns: usize,
    pub blocks: usize,
    pub lines: usize,
    pub stability: Stability,
    pub certificate: Certificate,
    /// Isotropic flags only.
    pub coverage: Option<CoverageReport>,
}

/// Fields found at one degree bound.
#[derive(Clone, Debug)]
pub struct DegreeSolution {
    pub degree: u32,
    pub fields: Vec<VectorField>,
    pub unknowns: usize,
    pub blocks: usize,
    pub lines: usize,
}

impl DegreeSolution {
    pub fn dims(&self) -> (usize, usize) {
        let odd = self.fields.iter().filter(|v| v.parity.is_odd()).count();
        (self.fields.len() - odd, odd)
    }
}

fn line_var() -> Var {
    Var::new(0, Block::X, 60_000, 0)
}

/// Torus weights of the ambient basis vectors, reduced modulo the
/// relations imposed by the form.
fn ambient_weights(f: &FlagType) -> Vec<Vec<i32>> {
    let n = f.k[0] + f.l[0];
    let mut w: Vec<Vec<i32>> = (0..n)
        .map(|a| {
            let mut v = vec![0; n];
            v[a] = 1;
            v
        })
        .collect();
    let form = match f.kind {
        FlagKind::Plain => return w,
        FlagKind::EvenIsotropic => gamma(f.k[0], f.l[0] / 2).matrix,
        FlagKind::OddIsotropic => upsilon(f.k[0]).matrix,
    };
    for (a, b, p) in form.entries() {
        if p.is_zero() || a > b {
            continue;
        }
        if a == b {
            w[a] = vec![0; n];
        } else {
            w[b] = w[a].iter().map(|x| -x).collect();
        }
    }
    w
}

/// Ambient index behind each column of each level of a chart.
fn column_sources(f: &FlagType, idx: &ChartIndex) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![(0..f.k[0] + f.l[0]).collect()];
    for s in 1..=f.length() {
        let rows = idx.identity_rows(s, f.k[s - 1]);
        let prev = &out[s - 1];
        let cur = rows.iter().map(|&r| prev[r]).collect();
        out.push(cur);
    }
    out
}

struct Grading {
    var_weight: HashMap<Var, Vec<i32>>,
}

impl Grading {
    /// `None` if some entry of the chart is not homogeneous.
    fn of_chart(chart: &Chart) -> Option<Self> {
        let f = &chart.flag;
        let amb = ambient_weights(f);
        let src = column_sources(f, &chart.index);
        let entry_weight = |s: usize, i: usize, j: usize| -> Vec<i32> {
            let a = &amb[src[s][i]];
            let b = &amb[src[s + 1][j]];
            a.iter().zip(b).map(|(x, y)| x - y).collect()
        };
        let mut var_weight = HashMap::new();
        for (v, (s, i, j)) in chart.coordinate_positions() {
            var_weight.insert(v, entry_weight(s, i, j));
        }
        let g = Self { var_weight };
        for (s, z) in chart.levels.iter().enumerate() {
            for (i, j, p) in z.entries() {
                let w = entry_weight(s, i, j);
                if p.terms().any(|(m, _)| g.monomial(m) != w) {
                    return None;
                }
            }
        }
        Some(g)
    }

    fn monomial(&self, m: &Monomial) -> Vec<i32> {
        let n = self.var_weight.values().next().map_or(0, Vec::len);
        let mut out = vec![0; n];
        for (v, e) in m.even_part() {
            for (o, x) in out.iter_mut().zip(&self.var_weight[v]) {
                *o += x * *e as i32;
            }
        }
        for v in m.odd_part() {
            for (o, x) in out.iter_mut().zip(&self.var_weight[v]) {
                *o += x;
            }
        }
        out
    }
}

/// Unknown coefficients `c (z_i, m)` sharing one parity and weight.
struct Sector {
    parity: Parity,
    unknowns: Vec<(usize, Monomial)>,
}

fn even_monomials(vars: &[Var], degree: u32) -> Vec<Vec<(Var, u32)>> {
    fn rec(vars: &[Var], left: u32, cur: &mut Vec<(Var, u32)>, out: &mut Vec<Vec<(Var, u32)>>) {
        let Some((&v, rest)) = vars.split_first() else {
            out.push(cur.clone());
            return;
        };
        for e in 0..=left {
            if e > 0 {
                cur.push((v, e));
            }
            rec(rest, left - e, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, degree, &mut Vec::new(), &mut out);
    out
}

fn odd_subsets(vars: &[Var]) -> Vec<Vec<Var>> {
    (0..1usize << vars.len())
        .map(|mask| {
            vars.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v)
                .collect()
        })
        .collect()
}

fn ansatz(chart: &Chart, degree: u32, limit: usize) -> Result<Vec<Sector>, OracleError> {
    let even: Vec<Var> = chart.even_coords().collect();
    let odd: Vec<Var> = chart.odd_coords().collect();
    let evens = even_monomials(&even, degree);
    let odds = odd_subsets(&odd);
    let unknowns = chart.coords.len() * evens.len() * odds.len();
    if unknowns > limit {
        return Err(OracleError::AnsatzTooLarge { unknowns, limit });
    }
    let grading = Grading::of_chart(chart);
    let mut blocks: BTreeMap<(Parity, Vec<i32>), Vec<(usize, Monomial)>> = BTreeMap::new();
    for (i, z) in chart.coords.iter().enumerate() {
        for e in &evens {
            for o in &odds {
                let (m, _) = Monomial::from_parts(e, o).expect("distinct sorted odd variables");
                let parity = m.parity() + z.parity();
                let weight = match &grading {
                    Some(g) => {
                        let a = g.monomial(&m);
                        let b = &g.var_weight[z];
                        a.iter().zip(b).map(|(x, y)| x - y).collect()
                    }
                    None => Vec::new(),
                };
                blocks.entry((parity, weight)).or_default().push((i, m));
            }
        }
    }
    Ok(blocks
        .into_iter()
        .map(|((parity, _), unknowns)| Sector { parity, unknowns })
        .collect())
}

/// Partial derivatives of the source chart's level matrices.
fn level_derivatives(chart: &Chart) -> Vec<Vec<SuperMatrix>> {
    chart
        .coords
        .iter()
        .map(|&z| chart.levels.iter().map(|m| m.map(|p| p.derivative(z))).collect())
        .collect()
}

struct Target {
    chart: Chart,
    positions: Vec<(usize, usize, usize)>,
    evens: Vec<Var>,
    /// Per level, see `level_divisor`.
    divisors: Vec<SuperPolynomial>,
}

impl Target {
    fn new(f: &FlagType, source: &ChartIndex, idx: &ChartIndex) -> Result<Self, OracleError> {
        let chart = build_chart(f, idx)?;
        let pos = chart.coordinate_positions();
        let positions = chart.coords.iter().map(|v| pos[v]).collect();
        let evens = chart.even_coords().collect();
        let divisors = (0..f.length())
            .map(|s| level_divisor(f, source, &chart, s))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            chart,
            positions,
            evens,
            divisors,
        })
    }
}

#[derive(Clone, Debug)]
struct Line {
    dir: Var,
    base: HashMap<Var, Rational>,
}

/// Rational roots of a polynomial in one variable.
fn rational_roots(p: &SuperPolynomial, x: Var) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed};
    let deg = p.terms().map(|(m, _)| m.exponent(x)).max().unwrap_or(0) as usize;
    let mut c = vec![Rational::zero(); deg + 1];
    for (m, v) in p.terms() {
        c[m.exponent(x) as usize] += v;
    }
    let mut roots = Vec::new();
    let low = c.iter().position(|v| !v.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
    }
    let c = &c[low..];
    if c.len() < 2 {
        return roots;
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = c.iter().map(|v| (v * Rational::from(lcm.clone())).to_integer()).collect();
    let limit = BigInt::from(1u64 << 40);
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    if a0 > limit || an > limit {
        return roots;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                out.push(d.clone());
                let e = n / &d;
                if e != d {
                    out.push(e);
                }
            }
            d += 1;
        }
        out
    };
    let eval = |r: &Rational| c.iter().rev().fold(Rational::zero(), |acc, v| acc * r + v);
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1, -1] {
                let r = Rational::new(&p * sign, q.clone());
                if !roots.contains(&r) && eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Determinant of the body of `C'_s` on the target chart: the divisor
/// where the source chart stops, seen from level `s`.
fn level_divisor(f: &FlagType, source: &ChartIndex, target: &Chart, level: usize) -> Result<SuperPolynomial, OracleError> {
    let bind: HashMap<Var, SuperPolynomial> =
        target.odd_coords().map(|v| (v, SuperPolynomial::zero())).collect();
    let mut prev: Option<SuperMatrix> = None;
    for s in 0..=level {
        let z = target.levels[s].substitute(&bind).map_err(FlagError::from)?;
        let w = match &prev {
            None => z,
            Some(c) => c.mul(&z).map_err(FlagError::from)?,
        };
        prev = Some(w.select_rows(&source.identity_rows(s + 1, f.k[s])));
    }
    let c = prev.unwrap();
    Ok(det(&PolyRing, &lift_matrix(&PolyRing, &c)))
}

fn find_line(target: &Target, sampler: &mut PointSampler, count: usize) -> Option<Line> {
    let live: Vec<&SuperPolynomial> = target.divisors.iter().filter(|d| d.has_even_vars()).collect();
    if live.is_empty() {
        return None;
    }
    for attempt in 0..MAX_RETRIES {
        let d = live[(count + attempt) % live.len()];
        let vars: Vec<Var> = d.vars().into_iter().collect();
        let dir = vars[sampler.rng.gen_range(0..vars.len())];
        let mut base: HashMap<Var, Rational> =
            target.evens.iter().map(|v| (*v, sampler.rational())).collect();
        let point: HashMap<Var, SuperPolynomial> = base
            .iter()
            .map(|(v, r)| {
                let p = if *v == dir { SuperPolynomial::var(line_var()) } else { SuperPolynomial::constant(r.clone()) };
                (*v, p)
            })
            .collect();
        let on_line = d.substitute(&point).expect("even substitution");
        if !on_line.has_even_vars() {
            continue;
        }
        let roots = rational_roots(&on_line, line_var());
        if roots.is_empty() {
            continue;
        }
        let r = roots[sampler.rng.gen_range(0..roots.len())].clone();
        base.insert(dir, r);
        return Some(Line { dir, base });
    }
    None
}

enum LineFailure {
    Precision,
    Singular,
}

struct Context<'a> {
    flag: &'a FlagType,
    source: &'a Chart,
    source_positions: Vec<(usize, usize, usize)>,
    derivatives: Vec<Vec<SuperMatrix>>,
    blocks: &'a [Sector],
}

/// Chart-`J` values of the source chart's level matrices, and the
/// matrices `C'_s` of the transition back.
fn pull_back<R: Ring>(
    ring: &R,
    f: &FlagType,
    source: &ChartIndex,
    target_levels: &[SuperMatrix],
) -> Option<(Vec<Mat<R::E>>, Vec<Mat<R::E>>)> {
    let mut zs = Vec::new();
    let mut cs = Vec::new();
    let mut prev: Option<Mat<R::E>> = None;
    for (s, z) in target_levels.iter().enumerate() {
        let z = lift_matrix(ring, z);
        let w = match &prev {
            None => z,
            Some(c) => mat_mul(ring, c, &z),
        };
        let c = select_rows(&w, &source.identity_rows(s + 1, f.k[s]));
        let cinv = inverse(ring, &c)?;
        zs.push(mat_mul(ring, &w, &cinv));
        cs.push(c.clone());
        prev = Some(c);
    }
    Some((zs, cs))
}

/// `G[i][j]`: derivative of target coordinate `j` along source
/// coordinate `i`, at the pulled-back point.
fn jacobian<R: Ring>(
    ring: &R,
    ctx: &Context<'_>,
    target: &Target,
    zs: &[Mat<R::E>],
    cs: &[Mat<R::E>],
    cache: &mut MonomialCache<'_, R>,
) -> Vec<Vec<R::E>> {
    let f = ctx.flag;
    ctx.source
        .coords
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let odd = z.is_odd();
            let mut out: Vec<Mat<R::E>> = Vec::new();
            let mut prev: Option<Dual<R::E>> = None;
            for (s, zl) in zs.iter().enumerate() {
                let dz = &ctx.derivatives[i][s];
                let tangent: Mat<R::E> = (0..dz.rows())
                    .map(|a| (0..dz.cols()).map(|b| cache.eval(dz.get(a, b))).collect())
                    .collect();
                let here = Dual {
                    base: zl.clone(),
                    tangent,
                };
                let w = match &prev {
                    None => here,
                    Some(c) => dual_mul(ring, c, &here, odd),
                };
                let c = dual_rows(&w, &target.chart.index.identity_rows(s + 1, f.k[s]));
                let cinv = dual_inverse(ring, &c, cs[s].clone(), odd);
                out.push(dual_mul(ring, &w, &cinv, odd).tangent);
                prev = Some(c);
            }
            target
                .positions
                .iter()
                .map(|&(s, a, b)| out[s][a][b].clone())
                .collect()
        })
        .collect()
}

fn source_values<E: Clone>(ctx: &Context<'_>, zs: &[Mat<E>]) -> HashMap<Var, E> {
    ctx.source
        .coords
        .iter()
        .zip(&ctx.source_positions)
        .map(|(v, &(s, a, b))| (*v, zs[s][a][b].clone()))
        .collect()
}

/// Linear conditions from one line, per block; inactive blocks get none.
fn line_conditions(
    ctx: &Context<'_>,
    target: &Target,
    line: &Line,
    active: &[bool],
    terms: i32,
) -> Result<Vec<Vec<SparseRow>>, LineFailure> {
    let s = line_var();
    let ring = LaurentRing { s, terms };
    let mut bind: HashMap<Var, SuperPolynomial> = HashMap::new();
    for v in &target.chart.coords {
        let p = if v.is_odd() {
            SuperPolynomial::var(*v)
        } else if *v == line.dir {
            &SuperPolynomial::constant(line.base[v].clone()) + &SuperPolynomial::var(s)
        } else {
            SuperPolynomial::constant(line.base[v].clone())
        };
        bind.insert(*v, p);
    }
    let levels: Vec<SuperMatrix> = target
        .chart
        .levels
        .iter()
        .map(|z| z.substitute(&bind).expect("even substitution"))
        .collect();
    let (zs, cs) = pull_back(&ring, ctx.flag, &ctx.source.index, &levels).ok_or(LineFailure::Singular)?;
    let values = source_values(ctx, &zs);
    let mut cache = MonomialCache::new(&ring, &values);
    let g = jacobian(&ring, ctx, target, &zs, &cs, &mut cache);
    let mut out = Vec::with_capacity(ctx.blocks.len());
    for (k, block) in ctx.blocks.iter().enumerate() {
        if !active[k] {
            out.push(Vec::new());
            continue;
        }
        let mut rows: BTreeMap<(usize, i32, Monomial), SparseRow> = BTreeMap::new();
        for (col, (i, m)) in block.unknowns.iter().enumerate() {
            let mv = cache.get(m);
            for (j, gij) in g[*i].iter().enumerate() {
                if gij.is_zero() {
                    continue;
                }
                let pp = mv.mul_below(gij, 0).principal_part().ok_or(LineFailure::Precision)?;
                for (n, coeff) in pp {
                    for (o, c) in coeff.terms() {
                        rows.entry((j, n, o.clone())).or_default().push((col, c.clone()));
                    }
                }
            }
        }
        out.push(rows.into_values().collect());
    }
    Ok(out)
}

fn line_conditions_adaptive(
    ctx: &Context<'_>,
    target: &Target,
    line: &Line,
    active: &[bool],
) -> Result<Vec<Vec<SparseRow>>, LineFailure> {
    let mut terms = START_TERMS;
    loop {
        match line_conditions(ctx, target, line, active, terms) {
            Err(LineFailure::Precision) if terms < MAX_TERMS => terms *= 2,
            other => return other,
        }
    }
}

/// Solve for the global fields of even degree at most `degree`.
pub fn solve_degree(p: &OracleProblem, degree: u32) -> Result<DegreeSolution, OracleError> {
    let f = &p.flag;
    let source_idx = p.chart_family.first().ok_or(OracleError::EmptyFamily)?;
    let source = build_chart(f, source_idx)?;
    let blocks = ansatz(&source, degree, p.max_unknowns)?;
    let unknowns = blocks.iter().map(|b| b.unknowns.len()).sum();
    let pos = source.coordinate_positions();
    let ctx = Context {
        flag: f,
        source: &source,
        source_positions: source.coords.iter().map(|v| pos[v]).collect(),
        derivatives: level_derivatives(&source),
        blocks: &blocks,
    };
    let mut echelons: Vec<Echelon> = blocks.iter().map(|b| Echelon::new(b.unknowns.len())).collect();
    let mut lines = 0;
    for (t, idx) in p.chart_family.iter().enumerate().skip(1) {
        if idx == source_idx {
            continue;
        }
        let target = Target::new(f, source_idx, idx)?;
        let mut sampler = PointSampler::new(p.seed, 0x0dac_0000 + t as u64);
        let mut count = 0;
        for _ in 0..MAX_BATCHES {
            let active: Vec<bool> = echelons.iter().map(|e| e.nullity() > 0).collect();
            if !active.iter().any(|a| *a) {
                break;
            }
            let mut batch = Vec::with_capacity(p.points_per_overlap);
            for _ in 0..p.points_per_overlap.max(1) {
                let line = find_line(&target, &mut sampler, count)
                    .ok_or_else(|| OracleError::NoLine(idx.to_string()))?;
                count += 1;
                batch.push(line);
            }
            let results = par::map(&batch, |l| line_conditions_adaptive(&ctx, &target, l, &active));
            let mut grew = false;
            for r in results {
                let per_block = match r {
                    Ok(b) => b,
                    Err(LineFailure::Precision) => return Err(OracleError::Precision(idx.to_string())),
                    // a line inside the locus where the pull-back is not defined
                    Err(LineFailure::Singular) => continue,
                };
                lines += 1;
                for (k, rows) in per_block.into_iter().enumerate() {
                    for row in rows {
                        grew |= echelons[k].insert(row);
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    let mut fields = Vec::new();
    for (block, e) in blocks.iter().zip(&echelons) {
        for v in e.nullspace() {
            let mut field = VectorField::zero(source_idx.clone(), block.parity);
            for ((i, m), c) in block.unknowns.iter().zip(&v) {
                if c.is_zero() {
                    continue;
                }
                field
                    .coeffs
                    .entry(source.coords[*i])
                    .or_insert_with(SuperPolynomial::zero)
                    .add_term(m.clone(), c.clone());
            }
            field.coeffs.retain(|_, p| !p.is_zero());
            fields.push(field);
        }
    }
    fields.sort_by_key(|v| v.parity.is_odd());
    Ok(DegreeSolution {
        degree,
        fields,
        unknowns,
        blocks: blocks.len(),
        lines,
    })
}

/// Check exactly that the fields have polynomial transports to one chart.
pub fn certify(p: &OracleProblem, fields: &[VectorField], target_idx: &ChartIndex) -> Result<Certificate, OracleError> {
    let f = &p.flag;
    let chart_name = Some(target_idx.to_string());
    if f.length() > 1 {
        return Ok(Certificate {
            status: CertStatus::Skipped,
            chart: chart_name,
            fields: fields.len(),
            note: "symbolic check implemented for one-step flags only".into(),
        });
    }
    let source_idx = &p.chart_family[0];
    let source = build_chart(f, source_idx)?;
    let target = Target::new(f, source_idx, target_idx)?;
    let c = target.chart.levels[0].select_rows(&source_idx.identity_rows(1, f.k[0]));
    let body = c.map(SuperPolynomial::body);
    let d = det(&PolyRing, &lift_matrix(&PolyRing, &body));
    let fail = |note: &str| Certificate {
        status: CertStatus::Failed,
        chart: chart_name.clone(),
        fields: fields.len(),
        note: note.into(),
    };
    if !d.has_even_vars() {
        return Ok(fail("charts do not overlap along a divisor"));
    }
    let ring = DenRing::new(d).expect("nonzero even divisor");
    let (zs, cs) = pull_back(&ring, f, source_idx, &target.chart.levels)
        .ok_or(OracleError::Flag(FlagError::SingularOverlap))?;
    let pos = source.coordinate_positions();
    let blocks: Vec<Sector> = Vec::new();
    let ctx = Context {
        flag: f,
        source: &source,
        source_positions: source.coords.iter().map(|v| pos[v]).collect(),
        derivatives: level_derivatives(&source),
        blocks: &blocks,
    };
    let values = source_values(&ctx, &zs);
    let mut cache = MonomialCache::new(&ring, &values);
    let g = jacobian(&ring, &ctx, &target, &zs, &cs, &mut cache);
    // the pulled-back coordinates must reproduce the target chart
    let back = jacobian_base_check(&ring, &ctx, &target, &zs, &cs);
    if !back {
        return Ok(fail("transition round trip mismatch"));
    }
    for (n, v) in fields.iter().enumerate() {
        for j in 0..target.positions.len() {
            let mut acc = ring.zero();
            for (i, z) in source.coords.iter().enumerate() {
                let Some(coeff) = v.coeffs.get(z) else { continue };
                let cv = cache.eval(coeff);
                acc = ring.add(&acc, &ring.mul(&cv, &g[i][j]));
            }
            if ring.reduce(&acc).exp > 0 {
                return Ok(fail(&format!("field {n} has a pole along coordinate {}", target.chart.coords[j])));
            }
        }
    }
    Ok(Certificate {
        status: CertStatus::Certified,
        chart: chart_name,
        fields: fields.len(),
        note: String::new(),
    })
}

/// The forward transition applied to the pulled-back point returns the
/// target coordinates.
fn jacobian_base_check<R: Ring>(ring: &R, ctx: &Context<'_>, target: &Target, zs: &[Mat<R::E>], cs: &[Mat<R::E>]) -> bool {
    let f = ctx.flag;
    let mut prev: Option<Mat<R::E>> = None;
    for (s, zl) in zs.iter().enumerate() {
        let w = match &prev {
            None => zl.clone(),
            Some(c) => mat_mul(ring, c, zl),
        };
        let c = select_rows(&w, &target.chart.index.identity_rows(s + 1, f.k[s]));
        let zj = mat_mul(ring, &w, &cs[s]);
        let expect = lift_matrix(ring, &target.chart.levels[s]);
        for (a, row) in zj.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if !ring.is_zero(&ring.sub(x, &expect[a][b])) {
                    return false;
                }
            }
        }
        prev = Some(c);
    }
    true
}

pub fn oracle_global_fields(p: &OracleProblem) -> Result<OracleOutcome, OracleError> {
    if p.degree_bound < 2 {
        return Err(OracleError::DegreeTooSmall(p.degree_bound));
    }
    let low = solve_degree(p, p.degree_bound)?;
    let stability = match solve_degree(p, p.degree_bound + 1) {
        Ok(high) if high.dims() == low.dims() => Stability::Stable {
            degrees: (p.degree_bound, p.degree_bound + 1),
        },
        Ok(high) => Stability::Bracket {
            lower: low.dims(),
            upper: high.dims(),
        },
        Err(e @ OracleError::AnsatzTooLarge { .. }) => Stability::Unchecked { reason: e.to_string() },
        Err(e) => return Err(e),
    };
    let certificate = if p.chart_family.len() < 2 {
        Certificate {
            status: CertStatus::Skipped,
            chart: None,
            fields: low.fields.len(),
            note: "single chart".into(),
        }
    } else {
        let mut sampler = PointSampler::new(p.seed, 0xce27);
        let t = sampler.rng.gen_range(1..p.chart_family.len());
        certify(p, &low.fields, &p.chart_family[t])?
    };
    let coverage = match p.flag.kind {
        FlagKind::Plain => None,
        _ => Some(coverage_check(&p.flag, p.seed, 16)?),
    };
    let (even_dim, odd_dim) = low.dims();
    let basis = FieldSpace::new(p.chart_family[0].clone(), low.fields.iter().cloned());
    Ok(OracleOutcome {
        flag: p.flag.clone(),
        source: p.chart_family[0].clone(),
        degree_bound: p.degree_bound,
        even_dim,
        odd_dim,
        fields: low.fields,
        basis,
        unknowns: low.unknowns,
        blocks: low.blocks,
        lines: low.lines,
        stability,
        certificate,
        coverage,
    })
}
