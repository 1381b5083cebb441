use acalc::expr::{Expr, Func, VarSet};
use proptest::prelude::*;

const N: usize = 3;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![(0..N).prop_map(Expr::var), (-3.0f64..3.0).prop_map(|x| Expr::num((x * 8.0).round() / 8.0)),]
}

/// Smooth expressions on `[-1, 1]^3`; no division or logarithms.
fn smooth() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            inner.clone().prop_map(Expr::neg),
            (inner.clone(), 2..4i32).prop_map(|(a, k)| Expr::pow(a, k)),
            inner.clone().prop_map(|a| Expr::call(Func::Sin, a)),
            inner.clone().prop_map(|a| Expr::call(Func::Cos, a)),
            inner.prop_map(|a| Expr::call(Func::Exp, Expr::mul(Expr::num(0.25), a))),
        ]
    })
}

fn point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, N)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_preserves_values(e in smooth(), x in point()) {
        let vars = VarSet::Indexed(N);
        let text = e.display(&vars).to_string();
        let back = Expr::parse(&text, &vars).unwrap();
        let (a, b) = (e.eval(&x).unwrap(), back.eval(&x).unwrap());
        prop_assert!(close(a, b, 1e-12), "{text}: {a} vs {b}");
    }

    #[test]
    fn symbolic_derivatives_match_central_differences(e in smooth(), x in point(), i in 0..N) {
        let h = 1e-5;
        let d = e.diff(i).eval(&x).unwrap();
        let (mut xp, mut xm) = (x.clone(), x.clone());
        xp[i] += h;
        xm[i] -= h;
        let fd = (e.eval(&xp).unwrap() - e.eval(&xm).unwrap()) / (2.0 * h);
        prop_assert!((d - fd).abs() <= 1e-6 * (1.0 + d.abs()), "{d} vs {fd}");
    }

    #[test]
    fn simplification_keeps_values(e in smooth(), x in point()) {
        prop_assert!(close(e.eval(&x).unwrap(), e.simplify().eval(&x).unwrap(), 1e-12));
    }
}

#[test]
fn named_variables_round_trip() {
    let vars = VarSet::Named(vec!["x".into(), "t".into()]);
    let e = Expr::parse("sin(x - 2*t)^2 + exp(-t)/(1 + x^2)", &vars).unwrap();
    let back = Expr::parse(&e.display(&vars).to_string(), &vars).unwrap();
    for p in [[0.3, -1.2], [2.0, 0.5]] {
        assert!(close(e.eval(&p).unwrap(), back.eval(&p).unwrap(), 1e-14));
    }
}
