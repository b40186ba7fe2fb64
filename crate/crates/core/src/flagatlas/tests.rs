use std::collections::HashMap;

use super::*;
use crate::supercalc::rational::{frac, int};
use crate::supercalc::{Block, SuperPolynomial, Var};

fn plain(k: &[usize], l: &[usize]) -> FlagType {
    validate_flag_type(k, l, FlagKind::Plain).unwrap()
}

fn even_iso(k: &[usize], l: &[usize]) -> FlagType {
    validate_flag_type(k, l, FlagKind::EvenIsotropic).unwrap()
}

fn odd_iso(k: &[usize], l: &[usize]) -> FlagType {
    validate_flag_type(k, l, FlagKind::OddIsotropic).unwrap()
}

/// Every valid plain flag type with `m + n <= total` and length 1 or 2.
fn small_flag_types(total: usize) -> Vec<FlagType> {
    let mut out = Vec::new();
    for m in 0..=total {
        for n in 0..=total - m {
            for k1 in 0..=m {
                for l1 in 0..=n {
                    if let Ok(f) = validate_flag_type(&[m, k1], &[n, l1], FlagKind::Plain) {
                        out.push(f);
                    }
                    for k2 in 0..=k1 {
                        for l2 in 0..=l1 {
                            if let Ok(f) = validate_flag_type(&[m, k1, k2], &[n, l1, l2], FlagKind::Plain) {
                                out.push(f);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn validation_examples() {
    assert!(validate_flag_type(&[2, 1], &[2, 2], FlagKind::Plain).is_ok());
    assert!(matches!(
        validate_flag_type(&[2, 2], &[2, 2], FlagKind::Plain),
        Err(FlagError::ChainViolation(_))
    ));
    // ambient C^{4|4} with k_1 = l_1 = 2
    assert!(validate_flag_type(&[4, 2, 1], &[4, 2, 1], FlagKind::EvenIsotropic).is_ok());
    // the literal tuples repeat k_0 + l_0 and break the chain
    assert!(matches!(
        validate_flag_type(&[2, 2, 1], &[2, 2, 1], FlagKind::EvenIsotropic),
        Err(FlagError::ChainViolation(_))
    ));
    assert!(matches!(
        validate_flag_type(&[4, 1], &[4, 2], FlagKind::EvenIsotropic),
        Err(FlagError::MaximalTypeViolation(_))
    ));
    assert!(matches!(
        validate_flag_type(&[3, 1], &[3, 1], FlagKind::OddIsotropic),
        Err(FlagError::MaximalTypeViolation(_))
    ));
    assert!(matches!(
        validate_flag_type(&[1, 0], &[1, 0], FlagKind::Plain),
        Err(FlagError::ChainViolation(_))
    ));
}

#[test]
fn chart_counts() {
    assert_eq!(enumerate_charts(&plain(&[2, 1], &[0, 0])).len(), 2);
    assert_eq!(enumerate_charts(&plain(&[2, 1], &[2, 1])).len(), 4);
    assert_eq!(enumerate_charts(&plain(&[3, 2, 1], &[0, 0, 0])).len(), 6);
    for f in small_flag_types(5) {
        let expect: usize = (1..=f.length())
            .map(|s| binomial(f.k[s - 1], f.k[s]) * binomial(f.l[s - 1], f.l[s]))
            .product();
        assert_eq!(enumerate_charts(&f).len(), expect, "{f}");
    }
}

#[test]
fn coordinate_counts_match_charts() {
    for f in small_flag_types(6) {
        let idx = &enumerate_charts(&f)[0];
        let c = build_chart(&f, idx).unwrap();
        assert_eq!(c.superdim(), coordinate_counts(&f), "{f}");
    }
    let f = plain(&[2, 1], &[2, 1]);
    assert_eq!(coordinate_counts(&f), (2, 2));
}

#[test]
fn identity_rows_hold_identity() {
    let f = plain(&[3, 2, 1], &[2, 1, 1]);
    for idx in enumerate_charts(&f) {
        let c = build_chart(&f, &idx).unwrap();
        for s in 1..=f.length() {
            let z = &c.levels[s - 1];
            for (a, r) in idx.identity_rows(s, f.k[s - 1]).into_iter().enumerate() {
                for j in 0..z.cols() {
                    let e = if j == a { SuperPolynomial::one() } else { SuperPolynomial::zero() };
                    assert_eq!(z.get(r, j), &e);
                }
            }
            assert!(z.is_homogeneous_layout());
        }
    }
}

fn x(level: u8, b: Block, r: usize, c: usize) -> SuperPolynomial {
    SuperPolynomial::var(Var::new(level, b, r, c))
}

#[test]
fn distinguished_even_chart_has_displayed_shape() {
    let f = even_iso(&[4, 2], &[4, 2]);
    let lv = distinguished_index(&f).unwrap();
    let c = reduce_isotropic_chart(&f, &lv).unwrap();
    let z = &c.matrix;
    // X_1 skew
    assert!(z.get(0, 0).is_zero());
    assert_eq!(z.get(1, 0), &-x(1, Block::X, 0, 1));
    // identity below X_1
    assert_eq!(z.get(2, 0), &SuperPolynomial::one());
    assert_eq!(z.get(3, 1), &SuperPolynomial::one());
    // -Xi^t below, Y symmetric
    assert_eq!(z.get(4, 1), &-x(1, Block::Xi, 1, 0));
    assert_eq!(z.get(5, 2), &x(1, Block::Y, 0, 1));
    assert_eq!(z.get(6, 2), &SuperPolynomial::one());
    let odd = c.free.iter().filter(|v| v.is_odd()).count();
    assert_eq!((c.free.len() - odd, odd), (4, 4));
}

#[test]
fn distinguished_odd_chart_counts() {
    let f = odd_iso(&[5, 3], &[5, 2]);
    let lv = distinguished_index(&f).unwrap();
    let c = reduce_isotropic_chart(&f, &lv).unwrap();
    let odd = c.free.iter().filter(|v| v.is_odd()).count();
    assert_eq!((c.free.len() - odd, odd), (6, 6));
    // lower right block is -X^t
    assert_eq!(c.matrix.get(5 + 2, 3), &-x(1, Block::X, 0, 0));
}

#[test]
fn free_counts_follow_closed_forms() {
    for k1 in 1..4 {
        for l1 in 1..3 {
            let f = even_iso(&[2 * k1, k1], &[2 * l1, l1]);
            let c = reduce_isotropic_chart(&f, &distinguished_index(&f).unwrap()).unwrap();
            let odd = c.free.iter().filter(|v| v.is_odd()).count();
            assert_eq!(c.free.len() - odd, k1 * (k1 - 1) / 2 + l1 * (l1 + 1) / 2);
            assert_eq!(odd, k1 * l1);
            let n = k1 + l1;
            let f = odd_iso(&[n, k1], &[n, l1]);
            let c = reduce_isotropic_chart(&f, &distinguished_index(&f).unwrap()).unwrap();
            let odd = c.free.iter().filter(|v| v.is_odd()).count();
            assert_eq!(c.free.len() - odd, k1 * l1);
            assert_eq!(odd, l1 * (l1 + 1) / 2 + k1 * (k1 - 1) / 2);
        }
    }
}

#[test]
fn residual_vanishes_on_every_supported_chart() {
    for f in [
        even_iso(&[4, 2], &[4, 2]),
        even_iso(&[2, 1], &[4, 2]),
        even_iso(&[6, 3], &[2, 1]),
        odd_iso(&[3, 2], &[3, 1]),
        odd_iso(&[4, 2], &[4, 2]),
    ] {
        let orbit = orbit_charts(&f, true).unwrap();
        for o in &orbit {
            let c = reduce_isotropic_chart(&f, &o.index).unwrap();
            assert!(isotropy_residual(&f, &c.matrix).unwrap().is_zero(), "{f} {:?}", o.index);
            // g preserves the form
            let g = o.matrix(&f);
            let form = match f.kind {
                FlagKind::EvenIsotropic => crate::liesuperalg::gamma(f.k[0], f.l[0] / 2),
                _ => crate::liesuperalg::upsilon(f.k[0]),
            };
            let gtg = g.supertranspose().unwrap().mul(&form.matrix).unwrap().mul(&g).unwrap();
            assert_eq!(gtg, form.matrix);
        }
    }
    assert_eq!(orbit_charts(&odd_iso(&[4, 2], &[4, 2]), true).unwrap().len(), 6);
    assert_eq!(orbit_charts(&even_iso(&[4, 2], &[4, 2]), false).unwrap().len(), 8);
}

#[test]
fn generic_chart_is_not_isotropic() {
    let f = even_iso(&[2, 1], &[2, 1]);
    let c = build_chart(&f.plain(), &enumerate_charts(&f.plain())[0]).unwrap();
    assert!(!isotropy_residual(&f, &c.levels[0]).unwrap().is_zero());
    assert_eq!(isotropy_residual(&f.plain(), &c.levels[0]), Err(FlagError::KindMismatch));
}

#[test]
fn odd_orthogonal_charts_are_unsupported() {
    let f = even_iso(&[3, 1], &[2, 1]);
    assert!(matches!(
        distinguished_index(&f),
        Err(FlagError::UnsupportedChart(_))
    ));
}

#[test]
fn identity_transition() {
    let f = plain(&[2, 1], &[2, 1]);
    let i = &enumerate_charts(&f)[1];
    let c = build_chart(&f, i).unwrap();
    let mut sampler = PointSampler::new(7, 0);
    let p = random_point(&c, &mut sampler);
    let zs = transition(&f, i, i, &p).unwrap();
    let bind = p.iter().map(|(v, r)| (*v, SuperPolynomial::constant(r.clone()))).collect();
    assert_eq!(zs[0], c.levels[0].substitute(&bind).unwrap());
}

#[test]
fn projective_line_flip() {
    let f = plain(&[2, 1], &[0, 0]);
    let charts = enumerate_charts(&f);
    // chart {2} has coordinate x in row 1, chart {1} has it in row 2
    let i = &charts[1];
    let j = &charts[0];
    let v = Var::new(1, Block::X, 0, 0);
    let p: HashMap<Var, _> = [(v, int(2))].into_iter().collect();
    let zs = transition(&f, i, j, &p).unwrap();
    assert_eq!(zs[0].get(1, 0), &SuperPolynomial::constant(frac(1, 2)));
    assert_eq!(zs[0].get(0, 0), &SuperPolynomial::one());
    let zero: HashMap<Var, _> = [(v, int(0))].into_iter().collect();
    assert_eq!(transition(&f, i, j, &zero), Err(FlagError::SingularOverlap));
}

#[test]
fn cocycle_plain() {
    let r = cocycle_check(&plain(&[2, 1], &[2, 1]), 1, 20).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.triples, 64);
    assert_eq!(r.checked, 64 * 20);
    let r = cocycle_check(&plain(&[2, 1, 0], &[1, 1, 1]), 2, 3).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn roundtrip_plain() {
    let r = roundtrip_check(&plain(&[3, 1], &[2, 1]), 3, 5).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn cocycle_isotropic() {
    for f in [
        even_iso(&[2, 1], &[2, 1]),
        even_iso(&[4, 2], &[2, 1]),
        odd_iso(&[2, 1], &[2, 1]),
        odd_iso(&[3, 2], &[3, 1]),
    ] {
        let r = cocycle_check(&f, 4, 3).unwrap();
        assert!(r.passed(), "{f}: {r:?}");
    }
    let r = cocycle_check(&even_iso(&[4, 2, 1], &[2, 1, 1]), 5, 1).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn coverage_of_orbit_charts() {
    for f in [
        even_iso(&[4, 2], &[2, 1]),
        even_iso(&[6, 3], &[2, 1]),
        odd_iso(&[3, 2], &[3, 1]),
    ] {
        let r = coverage_check(&f, 9, 40).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn functions_examples() {
    assert_eq!(functions_predicate(&plain(&[2, 1], &[2, 1])), FunctionsBranch::ConstantFunctions);
    assert_eq!(functions_predicate(&plain(&[1, 0], &[1, 1])), FunctionsBranch::GrassmannAlgebra);
    assert_eq!(functions_predicate(&plain(&[2, 2, 1], &[2, 0, 0])), FunctionsBranch::GrassmannAlgebra);
    assert_eq!(functions_predicate(&plain(&[2, 2, 1], &[2, 1, 0])), FunctionsBranch::ConstantFunctions);
}

#[test]
fn gl_hypotheses_examples() {
    assert_eq!(gl_hypotheses_predicate(&plain(&[2, 1], &[2, 1])), GlHypotheses::Satisfied);
    match gl_hypotheses_predicate(&plain(&[1, 0, 0], &[2, 2, 1])) {
        GlHypotheses::Violated(v) => assert!(v.iter().any(|s| s.contains("(0,...,0|n"))),
        GlHypotheses::Satisfied => panic!("expected a violation"),
    }
    match gl_hypotheses_predicate(&plain(&[3, 1], &[1, 1])) {
        GlHypotheses::Violated(v) => assert!(v.iter().any(|s| s.contains("(k,1|1,1)"))),
        GlHypotheses::Satisfied => panic!("expected a violation"),
    }
}

#[test]
fn flag_type_parse_roundtrip() {
    for f in small_flag_types(5) {
        assert_eq!(f.to_string().parse::<FlagType>().unwrap(), f);
    }
    assert_eq!("Fe(4,2,1|4,2,1)".parse::<FlagType>().unwrap(), even_iso(&[4, 2, 1], &[4, 2, 1]));
    assert_eq!("2,1|2,1".parse::<FlagType>().unwrap(), plain(&[2, 1], &[2, 1]));
    assert!("Fe(4,1|2,1)".parse::<FlagType>().is_err());
    assert!("F(2,1)".parse::<FlagType>().is_err());
}
