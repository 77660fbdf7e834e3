use proptest::prelude::*;
use warpgeo_core::expr::{parse, BinOp, Expr, Func, Jet3};

/// Builds `c0 + c1 r + … + cd r^d` in one of three shapes so the evaluator
/// sees sums, products and integer powers.
fn polynomial_ast(coeffs: &[f64], shape: u8) -> Expr {
    let r = || Expr::Var;
    match shape % 3 {
        0 => {
            let mut acc = Expr::num(coeffs[coeffs.len() - 1]);
            for &c in coeffs.iter().rev().skip(1) {
                acc = Expr::binary(BinOp::Add, Expr::binary(BinOp::Mul, acc, r()), Expr::num(c));
            }
            acc
        }
        1 => coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                Expr::binary(
                    BinOp::Mul,
                    Expr::num(c),
                    Expr::binary(BinOp::Pow, r(), Expr::num(k as f64)),
                )
            })
            .reduce(|a, b| Expr::binary(BinOp::Add, a, b))
            .unwrap(),
        _ => coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let mut term = Expr::num(c);
                for _ in 0..k {
                    term = Expr::binary(BinOp::Mul, term, r());
                }
                term
            })
            .reduce(|a, b| Expr::binary(BinOp::Sub, a, Expr::Neg(Box::new(b))))
            .unwrap(),
    }
}

/// Value and first three derivatives of the polynomial, together with the
/// same sums taken over absolute values for a round-off scale.
fn polynomial_oracle(coeffs: &[f64], x: f64) -> ([f64; 4], [f64; 4]) {
    let mut out = [0.0; 4];
    let mut scale = [0.0; 4];
    for (k, &c) in coeffs.iter().enumerate() {
        for d in 0..4 {
            if k >= d {
                let falling: f64 = (0..d).map(|i| (k - i) as f64).product();
                let term = c * falling * x.powi((k - d) as i32);
                out[d] += term;
                scale[d] += term.abs();
            }
        }
    }
    (out, scale)
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.0f64..1000.0).prop_map(Expr::num),
        (-5i32..6).prop_map(|k| Expr::num(k as f64)),
        Just(Expr::Var),
        Just(Expr::Pi),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        let funcs = prop::sample::select(vec![
            Func::Sin,
            Func::Cos,
            Func::Tan,
            Func::Sinh,
            Func::Cosh,
            Func::Tanh,
            Func::Exp,
            Func::Log,
            Func::Sqrt,
            Func::Asinh,
            Func::Atan,
        ]);
        let ops = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]);
        prop_oneof![
            (ops, inner.clone(), inner.clone()).prop_map(|(op, a, b)| Expr::binary(op, a, b)),
            (inner.clone(), -4i32..5).prop_map(|(a, k)| Expr::binary(BinOp::Pow, a, Expr::num(k as f64))),
            (inner.clone(), 0.0f64..3.0).prop_map(|(a, p)| Expr::binary(BinOp::Pow, a, Expr::num(p))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (funcs, inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

fn arb_jet() -> impl Strategy<Value = Jet3> {
    prop::array::uniform4(-10.0f64..10.0).prop_map(|[a, b, c, d]| Jet3::new(a, b, c, d))
}

fn abs_jet(j: Jet3) -> Jet3 {
    Jet3::new(j.v0.abs(), j.v1.abs(), j.v2.abs(), j.v3.abs())
}

fn close(a: Jet3, b: Jet3, scale: Jet3, rel: f64) -> bool {
    let (a, b, s) = (a.to_array(), b.to_array(), scale.to_array());
    (0..4).all(|i| (a[i] - b[i]).abs() <= rel * s[i].max(f64::MIN_POSITIVE))
}

proptest! {
    #[test]
    fn polynomial_jets_are_exact(
        coeffs in prop::collection::vec(-3.0f64..3.0, 1..=6),
        shape in 0u8..3,
        points in prop::collection::vec(-2.0f64..2.0, 100),
    ) {
        let ast = polynomial_ast(&coeffs, shape);
        for x in points {
            let jet = ast.eval_jet(x).unwrap().to_array();
            let (oracle, scale) = polynomial_oracle(&coeffs, x);
            for d in 0..4 {
                prop_assert!(
                    (jet[d] - oracle[d]).abs() <= 1e-12 * (1.0 + scale[d]),
                    "derivative {} at {}: {} vs {}", d, x, jet[d], oracle[d]
                );
            }
        }
    }

    #[test]
    fn print_then_parse_round_trips(e in arb_expr()) {
        let text = e.display("r").to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back, e, "printed as {}", text);
    }

    #[test]
    fn jet_addition_is_associative_and_commutative(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
        let scale = abs_jet(a) + abs_jet(b) + abs_jet(c);
        prop_assert!(close((a + b) + c, a + (b + c), scale, 1e-14));
        prop_assert!(close(a + b, b + a, scale, 1e-14));
    }

    #[test]
    fn jet_multiplication_is_associative_and_commutative(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
        let scale = abs_jet(a) * abs_jet(b) * abs_jet(c);
        prop_assert!(close((a * b) * c, a * (b * c), scale, 1e-14));
        prop_assert!(close(a * b, b * a, abs_jet(a) * abs_jet(b), 1e-14));
    }
}
