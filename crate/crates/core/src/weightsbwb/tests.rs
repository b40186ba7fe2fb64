use std::collections::BTreeSet;

use super::*;
use Coord::{Lambda as L, Mu as M};

fn set(ws: &[Weight]) -> BTreeSet<Weight> {
    ws.iter().cloned().collect()
}

fn hw_set(rep: &RepDecomposition) -> BTreeSet<Weight> {
    rep.summands.iter().map(|(w, _)| w.clone()).collect()
}

#[test]
fn root_lists() {
    let w = |s, n, t: &[(i64, Coord)]| Weight::from_terms(s, n, t);
    let rs = build_root_system(RootCase::SoEvenSp, (2, 1));
    assert_eq!(
        set(&rs.positive_roots),
        set(&[w(2, 1, &[(1, M(1)), (-1, M(2))]), w(2, 1, &[(1, M(1)), (1, M(2))]), w(2, 1, &[(2, L(1))])])
    );
    let rs = build_root_system(RootCase::SoOddSp, (1, 1));
    assert_eq!(set(&rs.positive_roots), set(&[w(1, 1, &[(1, M(1))]), w(1, 1, &[(2, L(1))])]));
    let rs = build_root_system(RootCase::Gl, (3, 0));
    assert_eq!(
        set(&rs.positive_roots),
        set(&[
            w(3, 0, &[(1, M(1)), (-1, M(2))]),
            w(3, 0, &[(1, M(1)), (-1, M(3))]),
            w(3, 0, &[(1, M(2)), (-1, M(3))]),
        ])
    );
}

#[test]
fn root_counts() {
    for s in 1..=4 {
        for n in 0..=4 {
            let d = build_root_system(RootCase::SoEvenSp, (s, n));
            assert_eq!(d.positive_roots.len(), s * (s - 1) + n * n);
            let b = build_root_system(RootCase::SoOddSp, (s, n));
            assert_eq!(b.positive_roots.len(), s * s + n * n);
        }
        let a = build_root_system(RootCase::Gl, (s, 0));
        assert_eq!(a.positive_roots.len(), s * (s - 1) / 2);
    }
}

/// A positive root is simple or a positive root plus a simple root.
fn generated_by_simple(rs: &RootSystemCase) -> bool {
    let pos = set(&rs.positive_roots);
    let mut reached: BTreeSet<Weight> = rs.simple_roots.iter().cloned().collect();
    if !reached.is_subset(&pos) {
        return false;
    }
    loop {
        let mut grew = false;
        for r in reached.clone() {
            for a in &rs.simple_roots {
                let t = r.add(a);
                if pos.contains(&t) && reached.insert(t) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    reached == pos
}

#[test]
fn simple_roots_generate_positive_roots() {
    for s in 1..=4 {
        for n in 0..=4 {
            for case in [RootCase::SoEvenSp, RootCase::SoOddSp] {
                let rs = build_root_system(case, (s, n));
                assert!(generated_by_simple(&rs), "{case:?} {s} {n}");
                let expect = if case == RootCase::SoEvenSp && s == 1 { 0 } else { s } + n;
                assert_eq!(rs.simple_roots.len(), expect);
            }
        }
        assert!(generated_by_simple(&build_root_system(RootCase::Gl, (s, 0))));
    }
}

#[test]
fn dominance_examples() {
    let rs = build_root_system(RootCase::SoEvenSp, (2, 1));
    assert!(is_dominant(&Weight::zero(2, 1), &rs).unwrap());
    assert!(is_dominant(&Weight::from_terms(2, 1, &[(1, M(1)), (-1, M(2))]), &rs).unwrap());
    let bad = Weight::from_terms(2, 1, &[(1, L(1)), (-1, M(1))]);
    assert!(!is_dominant(&bad, &rs).unwrap());
    assert_eq!(bad.dot(&Weight::from_terms(2, 1, &[(1, M(1)), (-1, M(2))])), int(-1));
    assert!(matches!(
        is_dominant(&Weight::zero(3, 1), &rs),
        Err(WeightError::DimensionMismatch(..))
    ));
}

#[test]
fn weyl_dimensions() {
    for case in [RootCase::SoEvenSp, RootCase::SoOddSp] {
        let rs = build_root_system(case, (3, 2));
        assert_eq!(weyl_dimension(&Weight::zero(3, 2), &rs).unwrap(), 1);
    }
    let so4 = build_root_system(RootCase::SoEvenSp, (2, 1));
    assert_eq!(weyl_dimension(&Weight::from_terms(2, 1, &[(1, M(1)), (-1, M(2))]), &so4).unwrap(), 3);
    let gl4 = build_root_system(RootCase::Gl, (4, 0));
    assert_eq!(weyl_dimension(&Weight::from_terms(4, 0, &[(1, M(1)), (1, M(2))]), &gl4).unwrap(), 6);
    // standard modules: so_{2s} vector 2s, so_{2s+1} vector 2s+1, sp_{2n} standard 2n
    for s in 2..=4 {
        let d = build_root_system(RootCase::SoEvenSp, (s, 2));
        assert_eq!(weyl_dimension(&Weight::from_terms(s, 2, &[(1, M(1))]), &d).unwrap(), 2 * s as u64);
        let b = build_root_system(RootCase::SoOddSp, (s, 2));
        assert_eq!(weyl_dimension(&Weight::from_terms(s, 2, &[(1, M(1))]), &b).unwrap(), 2 * s as u64 + 1);
        assert_eq!(weyl_dimension(&Weight::from_terms(s, 2, &[(1, L(1))]), &b).unwrap(), 4);
        // adjoint of sp_4 has dimension 10
        assert_eq!(weyl_dimension(&Weight::from_terms(s, 2, &[(2, L(1))]), &b).unwrap(), 10);
    }
    // gl_n exterior powers against binomials, trace shift invariance
    for n in 2..=5usize {
        let rs = build_root_system(RootCase::Gl, (n, 0));
        for k in 0..=n {
            let t: Vec<(i64, Coord)> = (1..=k).map(|i| (1, M(i))).collect();
            let w = Weight::from_terms(n, 0, &t);
            let binom = crate::flagatlas::binomial(n, k) as u64;
            assert_eq!(weyl_dimension(&w, &rs).unwrap(), binom);
            let shifted = w.add(&Weight { mu: vec![int(3); n], lambda: vec![] });
            assert_eq!(weyl_dimension(&shifted, &rs).unwrap(), binom);
        }
    }
    let half = Weight {
        mu: vec![rational::frac(1, 2), rational::frac(1, 2)],
        lambda: vec![Rational::zero()],
    };
    assert!(matches!(weyl_dimension(&half, &so4), Err(WeightError::NonIntegral(_))));
    let neg = Weight::from_terms(2, 1, &[(-1, M(1))]);
    assert!(matches!(weyl_dimension(&neg, &so4), Err(WeightError::NotDominant(_))));
}

/// Highest weights as listed in the proof of the lemma on sections.
fn listed_even(k1: usize, l1: usize) -> BTreeSet<Weight> {
    let w = |t: &[(i64, Coord)]| Weight::from_terms(k1, l1, t);
    let z = Weight::zero(k1, l1);
    let v = match (k1 > 1, l1 > 1) {
        (true, true) => vec![
            w(&[(1, M(1)), (-1, M(k1))]),
            w(&[(1, M(1)), (-1, L(l1))]),
            w(&[(1, L(1)), (-1, M(k1))]),
            w(&[(1, L(1)), (-1, L(l1))]),
            z,
        ],
        (false, true) => vec![
            w(&[(1, M(1)), (-1, L(l1))]),
            w(&[(1, L(1)), (-1, M(1))]),
            w(&[(1, L(1)), (-1, L(l1))]),
            z,
        ],
        (true, false) => vec![
            w(&[(1, M(1)), (-1, M(k1))]),
            w(&[(1, M(1)), (-1, L(1))]),
            w(&[(1, L(1)), (-1, M(k1))]),
            z,
        ],
        (false, false) => vec![w(&[(1, M(1)), (-1, L(1))]), w(&[(1, L(1)), (-1, M(1))]), z],
    };
    set(&v)
}

fn listed_odd(k1: usize, l1: usize) -> BTreeSet<Weight> {
    let n = k1 + l1;
    let w = |t: &[(i64, Coord)]| Weight::from_terms(n, 0, t);
    let z = Weight::zero(n, 0);
    let v = match (k1 > 1, l1 > 1) {
        (true, true) => vec![
            w(&[(1, M(l1 + 1)), (-1, M(n))]),
            w(&[(1, M(l1 + 1)), (1, M(1))]),
            w(&[(-1, M(n)), (-1, M(l1))]),
            w(&[(1, M(1)), (-1, M(l1))]),
            z,
        ],
        (false, true) => vec![
            w(&[(1, M(l1 + 1)), (1, M(1))]),
            w(&[(-1, M(l1)), (-1, M(l1 + 1))]),
            w(&[(1, M(1)), (-1, M(l1))]),
            z,
        ],
        (true, false) => vec![
            w(&[(1, M(2)), (-1, M(n))]),
            w(&[(1, M(2)), (1, M(1))]),
            w(&[(-1, M(n)), (-1, M(1))]),
            z,
        ],
        (false, false) => vec![w(&[(1, M(1)), (1, M(2))]), w(&[(-1, M(2)), (-1, M(1))]), z],
    };
    set(&v)
}

#[test]
fn psi_matches_listed_weights() {
    for k1 in 1..=5 {
        for l1 in 1..=5 {
            let e = psi_decomposition(IsotropicCase::Even, k1, l1).unwrap();
            assert_eq!(hw_set(&e), listed_even(k1, l1), "even {k1} {l1}");
            let o = psi_decomposition(IsotropicCase::Odd, k1, l1).unwrap();
            assert_eq!(hw_set(&o), listed_odd(k1, l1), "odd {k1} {l1}");
        }
    }
}

#[test]
fn psi_degenerate_branches() {
    let r = psi_decomposition(IsotropicCase::Even, 3, 0).unwrap();
    assert_eq!(r.summands.len(), 1);
    assert_eq!(r.summands[0].1, RepLabel::Ad1);
    let r = psi_decomposition(IsotropicCase::Even, 0, 3).unwrap();
    assert_eq!(r.summands.len(), 1);
    assert_eq!(r.summands[0].1, RepLabel::Ad2);
    let r = psi_decomposition(IsotropicCase::Odd, 2, 2).unwrap();
    let labels: Vec<RepLabel> = r.summands.iter().map(|s| s.1).collect();
    assert_eq!(
        labels,
        vec![RepLabel::Ad1, RepLabel::Ad2, RepLabel::Rho1Rho2, RepLabel::Rho1DualRho2Dual, RepLabel::Trivial]
    );
}

#[test]
fn bwb_examples() {
    let dom = |c, k1, l1| -> BTreeSet<Weight> {
        let rs = ambient_root_system(c, k1, l1);
        bwb_sections(&psi_decomposition(c, k1, l1).unwrap(), &rs)
            .unwrap()
            .into_iter()
            .map(|(w, _)| w)
            .collect()
    };
    for k1 in 3..=5 {
        for l1 in 1..=3 {
            assert_eq!(dom(IsotropicCase::Even, k1, l1), set(&[Weight::zero(k1, l1)]));
        }
    }
    for l1 in 1..=3 {
        assert_eq!(
            dom(IsotropicCase::Even, 2, l1),
            set(&[Weight::zero(2, l1), Weight::from_terms(2, l1, &[(1, M(1)), (-1, M(2))])])
        );
    }
    for k1 in 2..=4 {
        let n = k1 + 1;
        assert_eq!(
            dom(IsotropicCase::Odd, k1, 1),
            set(&[Weight::zero(n, 0), Weight::from_terms(n, 0, &[(1, M(1)), (1, M(2))])])
        );
    }
}

#[test]
fn filtering_is_idempotent_subset() {
    for case in [IsotropicCase::Even, IsotropicCase::Odd] {
        for k1 in 1..=4 {
            for l1 in 1..=4 {
                let rs = ambient_root_system(case, k1, l1);
                let rep = psi_decomposition(case, k1, l1).unwrap();
                let once = bwb_sections(&rep, &rs).unwrap();
                assert!(once.iter().all(|s| rep.summands.contains(s)));
                let twice = bwb_sections(&RepDecomposition { summands: once.clone() }, &rs).unwrap();
                assert_eq!(once, twice);
            }
        }
    }
}

#[test]
fn sections_examples() {
    let r = sections_report(IsotropicCase::Even, 3, 1, 2).unwrap();
    assert_eq!(r.total_dimension, 1);
    assert_eq!(r.lemma_branch, LemmaBranch::Trivial);
    let r = sections_report(IsotropicCase::Even, 2, 1, 2).unwrap();
    assert_eq!(r.total_dimension, 4);
    assert_eq!(r.lemma_branch, LemmaBranch::TrivialPlusR1);
    let r = sections_report(IsotropicCase::Odd, 1, 2, 3).unwrap();
    assert_eq!(r.total_dimension, 4);
    assert_eq!(r.lemma_branch, LemmaBranch::TrivialPlusR1);
    // r_2 in the even case is the standard sp_{2 l1} module
    let r = sections_report(IsotropicCase::Even, 1, 3, 6).unwrap();
    assert_eq!(r.total_dimension, 1 + 6);
    assert_eq!(
        sections_report(IsotropicCase::Even, 1, 1, 2).unwrap_err(),
        WeightError::ExcludedCase
    );
    assert_eq!(
        sections_report(IsotropicCase::Odd, 1, 1, 2).unwrap_err(),
        WeightError::ExcludedCase
    );
    assert!(matches!(
        sections_report(IsotropicCase::Even, 2, 1, 3),
        Err(WeightError::InvalidParameters(_))
    ));
}

#[test]
fn branch_table_agrees() {
    for case in [IsotropicCase::Even, IsotropicCase::Odd] {
        for k1 in 1..=5 {
            for l1 in 1..=5 {
                if k1 + l1 > 6 || (k1, l1) == (1, 1) {
                    continue;
                }
                let n = if case == IsotropicCase::Even { 2 * l1 } else { k1 + l1 };
                let r = sections_report(case, k1, l1, n).unwrap();
                assert!(r.agrees_with_lemma, "{case:?} {k1} {l1}");
            }
        }
    }
}

#[test]
fn display_and_json() {
    let w = Weight::from_terms(2, 1, &[(1, M(1)), (-2, L(1))]);
    assert_eq!(w.to_string(), "mu1-2lambda1");
    assert_eq!(Weight::zero(1, 1).to_string(), "0");
    let r = sections_report(IsotropicCase::Odd, 2, 1, 3).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["lemma_branch"], "trivial-plus-r2");
    assert_eq!(v["sections"][0]["highest_weight"]["mu"][0], "1");
}
