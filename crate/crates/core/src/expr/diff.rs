use super::{Expr, Func};

pub(super) fn diff(e: &Expr, i: usize) -> Expr {
    use Expr::*;
    match e {
        Num(_) => Num(0.0),
        Var(j) => Num(if *j == i { 1.0 } else { 0.0 }),
        Neg(a) => Expr::neg(diff(a, i)),
        Add(a, b) => Expr::add(diff(a, i), diff(b, i)),
        Sub(a, b) => Expr::sub(diff(a, i), diff(b, i)),
        Mul(a, b) => Expr::add(
            Expr::mul(diff(a, i), (**b).clone()),
            Expr::mul((**a).clone(), diff(b, i)),
        ),
        Div(a, b) => {
            let da = diff(a, i);
            let db = diff(b, i);
            if db.is_zero() {
                return Expr::div(da, (**b).clone());
            }
            Expr::div(
                Expr::sub(Expr::mul(da, (**b).clone()), Expr::mul((**a).clone(), db)),
                Expr::pow((**b).clone(), 2),
            )
        }
        Pow(a, k) => Expr::mul(
            Expr::mul(Num(*k as f64), Expr::pow((**a).clone(), k - 1)),
            diff(a, i),
        ),
        Call(f, a) => {
            let da = diff(a, i);
            if da.is_zero() {
                return Num(0.0);
            }
            let a = (**a).clone();
            let outer = match f {
                Func::Sin => Expr::call(Func::Cos, a),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, a)),
                Func::Exp => Expr::call(Func::Exp, a),
                Func::Log => return Expr::div(da, a),
                Func::Sqrt => return Expr::div(da, Expr::mul(Num(2.0), Expr::call(Func::Sqrt, a))),
            };
            Expr::mul(outer, da)
        }
    }
}
