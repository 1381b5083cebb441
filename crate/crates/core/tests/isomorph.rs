use acalc::algebra::{fixtures, ElementKind};
use acalc::calculus::builtin;
use acalc::expr::ExprFn;
use acalc::isomorph::{rxr_to_hyperbolic, wave_isomorphism, LinMap};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn maps() -> Vec<LinMap<f64>> {
    let c = fixtures::complex::<f64>();
    let conj = LinMap::new(c.clone(), c, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])).unwrap();
    vec![
        rxr_to_hyperbolic().verify().unwrap().0,
        wave_isomorphism(2.0).unwrap(),
        wave_isomorphism(0.5).unwrap(),
        conj.verify().unwrap().0,
    ]
}

fn coords() -> impl Strategy<Value = (usize, [f64; 2])> {
    (0..4usize, [-2.0f64..2.0, -2.0f64..2.0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inverses_map_to_inverses((m, x) in coords()) {
        let psi = &maps()[m];
        let x = psi.source().element(x.to_vec()).unwrap();
        prop_assume!(psi.source().is_unit(&x));
        let lhs = psi.apply(&psi.source().inverse(&x).unwrap()).unwrap();
        let rhs = psi.target().inverse(&psi.apply(&x).unwrap()).unwrap();
        prop_assert!(lhs.dist(&rhs) <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn zero_divisors_map_to_zero_divisors((m, x) in coords(), on_line in any::<bool>()) {
        let psi = &maps()[m];
        let src = psi.source();
        // push onto the non-units through a real eigenvalue when there is one
        let mut x = src.element(x.to_vec()).unwrap();
        let mut shifted = false;
        if on_line {
            let eig = src.regrep(&x).unwrap().complex_eigenvalues();
            if let Some(l) = eig.iter().find(|z| z.im.abs() < 1e-12) {
                x = x.sub(&src.scalar(l.re)).unwrap();
                shifted = true;
            }
        }
        let k = src.classify(&x).unwrap().kind;
        let k2 = psi.target().classify(&psi.apply(&x).unwrap()).unwrap().kind;
        prop_assert_eq!(k, k2);
        if shifted {
            prop_assert_ne!(k, ElementKind::Unit);
        }
    }

    #[test]
    fn transfer_round_trips((m, x) in coords(), power in 1..5usize) {
        let psi = &maps()[m];
        let src = psi.source();
        let f = builtin(src, &format!("zeta{power}")).unwrap().unwrap();
        let g = psi.transfer(&f).unwrap();
        let back = psi.inverse().unwrap().transfer(&g).unwrap();
        let x = src.element(x.to_vec()).unwrap();
        let want = f.eval_at(src, &x).unwrap();
        prop_assert!(back.eval_at(src, &x).unwrap().dist(&want) <= 1e-10 * (1.0 + want.norm()));
        let via = psi.apply(&want).unwrap();
        let direct = g.eval_at(psi.target(), &psi.apply(&x).unwrap()).unwrap();
        prop_assert!(via.dist(&direct) <= 1e-10 * (1.0 + via.norm()));
    }
}

#[test]
fn unverified_maps_refuse_to_transfer() {
    let h = fixtures::hyperbolic::<f64>();
    let c = fixtures::complex::<f64>();
    let bad = LinMap::new(h.clone(), c, DMatrix::identity(2, 2)).unwrap();
    let (bad, report) = bad.verify().unwrap();
    assert!(!report.is_isomorphism() && !report.multiplicative);
    assert!(bad.transfer(&ExprFn::identity(&h)).is_err());
    assert!(bad.kind_transfer(10, 0).is_err());
}
