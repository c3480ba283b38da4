use std::collections::BTreeMap;

use proptest::prelude::*;
use zda_core::scenario::{
    parse_scenario, ActionExpr, ConstructionExpr, ElementExpr, HomExpr, IdealExpr, Poly, ProductsExpr, RingExpr,
    Scenario,
};

fn poly(var: &'static str) -> impl Strategy<Value = Poly> {
    prop::collection::btree_map(0u32..5, (-9i64..10).prop_filter("nonzero", |c| *c != 0), 0..4).prop_map(
        move |terms: BTreeMap<u32, i64>| {
            let var = terms.keys().any(|&e| e > 0).then(|| var.to_string());
            Poly { var, terms }
        },
    )
}

fn ring() -> impl Strategy<Value = RingExpr> {
    let leaf = (2u64..40).prop_map(RingExpr::Zn);
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RingExpr::Product(Box::new(a), Box::new(b))),
            (inner, poly("t")).prop_map(|(b, m)| RingExpr::Quotient { base: Box::new(b), var: "t".into(), modulus: m }),
        ]
    })
}

fn element() -> impl Strategy<Value = ElementExpr> {
    poly("x").prop_map(ElementExpr::Poly).prop_recursive(2, 8, 3, |inner| {
        prop::collection::vec(inner, 2..4).prop_map(ElementExpr::Tuple)
    })
}

fn scenario() -> impl Strategy<Value = Scenario> {
    let hom = prop_oneof![
        Just(HomExpr::Identity),
        Just(HomExpr::Natural),
        prop::collection::vec((element(), element()), 1..3).prop_map(HomExpr::Map),
    ];
    let ideal = prop_oneof![
        prop::collection::vec(element(), 1..3).prop_map(IdealExpr::Gen),
        prop::collection::vec(element(), 1..4).prop_map(IdealExpr::Set),
    ];
    let construction = prop_oneof![
        Just(ConstructionExpr::Amalgamation),
        Just(ConstructionExpr::Duplication),
        Just(ConstructionExpr::Idealization),
        (1usize..5).prop_map(ConstructionExpr::TrivialExt),
    ];
    let action = prop_oneof![Just(ActionExpr::Natural), (0usize..3).prop_map(ActionExpr::Project)];
    let products = prop_oneof![Just(ProductsExpr::Ring), Just(ProductsExpr::Zero)];
    (
        prop::option::of(ring()),
        prop::option::of(ring()),
        prop::option::of(ring()),
        prop::option::of(hom),
        prop::option::of(ideal),
        prop::option::of(action),
        prop::option::of(products),
        prop::option::of(construction),
    )
        .prop_map(|(r, s, m, f, j, action, products, construction)| Scenario {
            r,
            s,
            m,
            f,
            j,
            action,
            products,
            construction,
            spans: Default::default(),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn display_reparses_to_same_scenario(sc in scenario()) {
        let text = sc.to_string();
        let back = parse_scenario(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, sc, "{}", text);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_scenario("R = Z6\nJ = gen(3\n").unwrap_err().to_string();
    assert!(err.starts_with("3:1:"), "{err}");
    let err = parse_scenario("R = Z6; J = gen(7)").unwrap().resolve().unwrap_err().to_string();
    assert!(err.contains('7'), "{err}");
}
