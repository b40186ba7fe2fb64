use proptest::prelude::*;

use superflag::flagatlas::{validate_flag_type, FlagKind, FlagType};
use superflag::liesuperalg::{bracket, build_gl, build_osp, build_pisp, AlgebraPresentation};
use superflag::supercalc::{divides, rational, Parity, Rational, SuperMatrix, SuperPolynomial, Var};

const EVENS: usize = 3;
const ODDS: usize = 4;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Sum of terms `c x^e theta_S` with `|S|` of the given parity.
fn poly(odd: bool) -> impl Strategy<Value = SuperPolynomial> {
    let term = (
        prop::collection::vec(0u32..3, EVENS),
        0u32..(1 << ODDS),
        -4i64..=4,
    );
    prop::collection::vec(term, 0..5).prop_map(move |ts| {
        let mut p = SuperPolynomial::zero();
        for (exps, mask, c) in ts {
            if (mask.count_ones() % 2 == 1) != odd {
                continue;
            }
            let mut t = SuperPolynomial::constant(q(c));
            for (i, e) in exps.iter().enumerate() {
                t = t.mul(&SuperPolynomial::var(Var::even(i)).pow(*e));
            }
            for j in 0..ODDS {
                if mask & (1 << j) != 0 {
                    t = t.mul(&SuperPolynomial::var(Var::odd(j)));
                }
            }
            p.add_assign_ref(&t);
        }
        p
    })
}

fn homogeneous() -> impl Strategy<Value = (bool, SuperPolynomial)> {
    any::<bool>().prop_flat_map(|odd| poly(odd).prop_map(move |p| (odd, p)))
}

fn sign(a: bool, b: bool) -> Rational {
    if a && b {
        q(-1)
    } else {
        q(1)
    }
}

fn algebra() -> impl Strategy<Value = AlgebraPresentation> {
    prop_oneof![
        (1usize..3, 0usize..3).prop_map(|(m, n)| build_gl(m, n).unwrap()),
        (1usize..4, 0usize..2).prop_map(|(m, h)| build_osp(m, 2 * h).unwrap()),
        (1usize..4).prop_map(|n| build_pisp(n).unwrap()),
    ]
}

/// Random combination of the basis elements of one parity.
fn element(g: &AlgebraPresentation, odd: bool, coeffs: &[i64]) -> SuperMatrix {
    let c: Vec<Rational> = g
        .basis
        .iter()
        .zip(coeffs.iter().cycle())
        .map(|(b, c)| if b.parity.is_odd() == odd { q(*c) } else { q(0) })
        .collect();
    g.combine(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn supercommutative((pa, a) in homogeneous(), (pb, b) in homogeneous()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a).scale(&sign(pa, pb)));
    }

    #[test]
    fn ring_axioms(a in poly(false), b in poly(true), c in poly(true)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
        prop_assert!(b.mul(&b).is_zero());
    }

    #[test]
    fn left_derivative_leibniz((pa, a) in homogeneous(), b in poly(false), v in 0usize..ODDS, w in 0usize..EVENS) {
        let t = Var::odd(v);
        let lhs = a.mul(&b).derivative(t);
        let rhs = &a.derivative(t).mul(&b) + &a.mul(&b.derivative(t)).scale(&sign(pa, true));
        prop_assert_eq!(lhs, rhs);
        let x = Var::even(w);
        let lhs = a.mul(&b).derivative(x);
        prop_assert_eq!(lhs, &a.derivative(x).mul(&b) + &a.mul(&b.derivative(x)));
    }

    #[test]
    fn odd_derivatives_anticommute(a in poly(false), i in 0usize..ODDS, j in 0usize..ODDS) {
        let (s, t) = (Var::odd(i), Var::odd(j));
        prop_assert_eq!(a.derivative(s).derivative(t), -a.derivative(t).derivative(s));
    }

    #[test]
    fn exact_division(d in poly(false), r in poly(false), lead in prop_oneof![Just(1i64), Just(-1), Just(3)]) {
        let d = d.body();
        prop_assume!(d.has_even_vars());
        let d = d.scale(&q(lead));
        prop_assert_eq!(divides(&d, &r.mul(&d)).unwrap(), Some(r.clone()));
    }

    #[test]
    fn rational_roundtrip(n in -10_000i64..10_000, m in 1i64..10_000) {
        let r = Rational::new(n.into(), m.into());
        prop_assert_eq!(rational::parse(&rational::to_string(&r)), Some(r));
    }

    #[test]
    fn bracket_closure_and_jacobi(
        g in algebra(),
        px in any::<bool>(), py in any::<bool>(), pz in any::<bool>(),
        cs in prop::collection::vec(-3i64..=3, 3..9),
    ) {
        let x = element(&g, px, &cs);
        let y = element(&g, py, &cs[1..]);
        let z = element(&g, pz, &cs[2..]);
        let xy = bracket(&x, &y).unwrap();
        prop_assert!(g.coordinates(&xy).is_some());
        // graded antisymmetry
        prop_assert_eq!(xy.clone(), bracket(&y, &x).unwrap().scale(&-sign(px, py)));
        let term = |a: &SuperMatrix, b: &SuperMatrix, c: &SuperMatrix, pa: bool, pc: bool| {
            bracket(a, &bracket(b, c).unwrap()).unwrap().scale(&sign(pa, pc))
        };
        let sum = term(&x, &y, &z, px, pz)
            .add(&term(&y, &z, &x, py, px)).unwrap()
            .add(&term(&z, &x, &y, pz, py)).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn flag_type_roundtrip(k in prop::collection::vec(0usize..4, 2..4), l in prop::collection::vec(0usize..4, 2..4)) {
        let r = k.len().min(l.len());
        let mut k: Vec<usize> = k[..r].to_vec();
        let mut l: Vec<usize> = l[..r].to_vec();
        k.sort_unstable_by(|a, b| b.cmp(a));
        l.sort_unstable_by(|a, b| b.cmp(a));
        if let Ok(f) = validate_flag_type(&k, &l, FlagKind::Plain) {
            prop_assert_eq!(f.to_string().parse::<FlagType>().unwrap(), f);
        }
    }
}

#[test]
fn odd_parity_of_combination() {
    let g = build_osp(2, 2).unwrap();
    let x = element(&g, true, &[1, 2, 3]);
    assert_eq!(x.element_parity(), Some(Parity::Odd));
}
