use proptest::prelude::*;

use tangle_cli::{parse_expr, Builtin, Expr, GenKind};

fn leaf() -> impl Strategy<Value = Expr> {
    let label = -9i64..=9;
    prop_oneof![
        label.clone().prop_map(|k| Expr::Gen(GenKind::Cup, vec![k])),
        label.clone().prop_map(|k| Expr::Gen(GenKind::Cap, vec![k])),
        (label.clone(), label.clone()).prop_map(|(a, b)| Expr::Gen(GenKind::CrossPos, vec![a, b])),
        (label.clone(), label.clone()).prop_map(|(a, b)| Expr::Gen(GenKind::CrossNeg, vec![a, b])),
        prop::collection::vec(label, 0..4).prop_map(Expr::IdWord),
        prop_oneof![Just(Builtin::Unknot), Just(Builtin::Hopf), Just(Builtin::Trefoil)].prop_map(Expr::Named),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Seq(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Par(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #[test]
    fn parse_inverts_print(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e);
    }

    #[test]
    fn whitespace_is_ignored(e in expr()) {
        let text = e.to_string();
        let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse_expr(&squeezed).unwrap(), e);
    }
}
