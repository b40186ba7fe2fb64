use std::collections::{BTreeMap, BTreeSet};

use super::isotropic::{orbit_charts, reduce_isotropic_chart};
use super::{ChartIndex, FlagError, FlagKind, FlagType, LevelIndex};
use crate::supercalc::{block_parities, Block, SuperMatrix, SuperPolynomial, Var};

/// A chart of a flag supermanifold: the coordinate matrices of every level
/// written in the free coordinates of the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub flag: FlagType,
    pub index: ChartIndex,
    pub levels: Vec<SuperMatrix>,
    /// Free coordinates, sorted.
    pub coords: Vec<Var>,
    /// Generic entries eliminated by isotropy, in terms of `coords`.
    pub bindings: BTreeMap<Var, SuperPolynomial>,
}

impl Chart {
    pub fn even_coords(&self) -> impl Iterator<Item = Var> + '_ {
        self.coords.iter().copied().filter(|v| !v.is_odd())
    }

    pub fn odd_coords(&self) -> impl Iterator<Item = Var> + '_ {
        self.coords.iter().copied().filter(|v| v.is_odd())
    }

    pub fn superdim(&self) -> (usize, usize) {
        let odd = self.odd_coords().count();
        (self.coords.len() - odd, odd)
    }

    /// Matrix entry holding each free coordinate: (level, row, col).
    pub fn coordinate_positions(&self) -> BTreeMap<Var, (usize, usize, usize)> {
        let mut out = BTreeMap::new();
        let free: BTreeSet<Var> = self.coords.iter().copied().collect();
        for (s, z) in self.levels.iter().enumerate() {
            for (i, j, p) in z.entries() {
                let v = generic_var(z, s + 1, i, j);
                if free.contains(&v) && *p == SuperPolynomial::var(v) {
                    out.insert(v, (s, i, j));
                }
            }
        }
        out
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn level_indices(f: &FlagType, s: usize) -> Vec<LevelIndex> {
    let mut out = Vec::new();
    for e in combinations(f.k[s - 1], f.k[s]) {
        for o in combinations(f.l[s - 1], f.l[s]) {
            out.push(LevelIndex {
                even: e.clone(),
                odd: o,
            });
        }
    }
    out
}

fn product(first: Vec<LevelIndex>, f: &FlagType) -> Vec<ChartIndex> {
    let mut acc: Vec<Vec<LevelIndex>> = first.into_iter().map(|l| vec![l]).collect();
    for s in 2..=f.length() {
        let lv = level_indices(f, s);
        acc = acc
            .into_iter()
            .flat_map(|p| {
                lv.iter().map(move |l| {
                    let mut q = p.clone();
                    q.push(l.clone());
                    q
                })
            })
            .collect();
    }
    acc.into_iter().map(|levels| ChartIndex { levels }).collect()
}

/// Every chart index of the plain flag supermanifold.
pub fn enumerate_plain_charts(f: &FlagType) -> Vec<ChartIndex> {
    product(level_indices(f, 1), f)
}

/// Chart indices of the atlas. For isotropic kinds the first level runs
/// over the supported orbit charts on the component of the distinguished
/// chart.
pub fn enumerate_charts(f: &FlagType) -> Vec<ChartIndex> {
    match f.kind {
        FlagKind::Plain => enumerate_plain_charts(f),
        _ => match orbit_charts(f, false) {
            Ok(orbit) => product(orbit.into_iter().map(|o| o.index).collect(), f),
            Err(_) => Vec::new(),
        },
    }
}

/// Canonical name of the generic coordinate in entry `(i, j)` of a
/// level-`s` matrix.
pub(crate) fn generic_var(z: &SuperMatrix, s: usize, i: usize, j: usize) -> Var {
    let rp = z.row_parities()[i];
    let cp = z.col_parities()[j];
    let even_rows = z.row_parities().iter().filter(|p| !p.is_odd()).count();
    let even_cols = z.col_parities().iter().filter(|p| !p.is_odd()).count();
    let r = if rp.is_odd() { i - even_rows } else { i };
    let c = if cp.is_odd() { j - even_cols } else { j };
    Var::new(s as u8, Block::for_slot(rp, cp), r, c)
}

/// Generic level-`s` matrix of chart `I` and its coordinates.
pub(crate) fn generic_level(f: &FlagType, lv: &LevelIndex, s: usize) -> (SuperMatrix, Vec<Var>) {
    let (kp, lp, k, l) = (f.k[s - 1], f.l[s - 1], f.k[s], f.l[s]);
    let mut z = SuperMatrix::zeros(block_parities(kp, lp), block_parities(k, l));
    let ident = lv.identity_rows(kp);
    let mut vars = Vec::new();
    for i in 0..kp + lp {
        if let Some(a) = ident.iter().position(|&r| r == i) {
            z.set(i, a, SuperPolynomial::one());
            continue;
        }
        for j in 0..k + l {
            let v = generic_var(&z, s, i, j);
            z.set(i, j, SuperPolynomial::var(v));
            vars.push(v);
        }
    }
    (z, vars)
}

pub fn build_chart(f: &FlagType, idx: &ChartIndex) -> Result<Chart, FlagError> {
    idx.validate(f)?;
    let mut levels = Vec::with_capacity(f.length());
    let mut coords = Vec::new();
    let mut bindings = BTreeMap::new();
    for s in 1..=f.length() {
        if s == 1 && f.kind != FlagKind::Plain {
            let iso = reduce_isotropic_chart(f, &idx.levels[0])?;
            coords.extend(iso.free.iter().copied());
            bindings = iso.bindings;
            levels.push(iso.matrix);
        } else {
            let (z, vars) = generic_level(f, &idx.levels[s - 1], s);
            coords.extend(vars);
            levels.push(z);
        }
    }
    coords.sort();
    Ok(Chart {
        flag: f.clone(),
        index: idx.clone(),
        levels,
        coords,
        bindings,
    })
}

/// Coordinate superdimension of a plain flag supermanifold.
pub fn coordinate_counts(f: &FlagType) -> (usize, usize) {
    let mut even = 0;
    let mut odd = 0;
    for s in 1..=f.length() {
        let (kp, lp, k, l) = (f.k[s - 1], f.l[s - 1], f.k[s], f.l[s]);
        even += (kp - k) * k + (lp - l) * l;
        odd += (kp - k) * l + (lp - l) * k;
    }
    (even, odd)
}
