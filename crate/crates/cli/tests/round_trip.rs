use proptest::prelude::*;

use secondary_cli::doc::ElementDoc;
use secondary_cli::eval::{evaluate, Ring, Value};

fn sq() -> impl Strategy<Value = String> {
    prop::collection::vec(0u32..4, 0..3).prop_map(|r| {
        let parts: Vec<String> = r.iter().map(u32::to_string).collect();
        format!("Sq({})", parts.join(","))
    })
}

fn pair(lo: i32) -> impl Strategy<Value = (i32, i32)> {
    (lo..2, 0i32..3)
}

/// A random sum of products, using the atoms allowed in `ring`.
fn expression(ring: Ring) -> BoxedStrategy<String> {
    let atom = match ring {
        Ring::A => sq().boxed(),
        Ring::D0 => prop_oneof![sq(), (0u32..4).prop_map(|c| c.to_string()), pair(-1).prop_map(|(k, l)| format!("Y[{k},{l}]"))].boxed(),
        Ring::E0 => prop_oneof![
            sq(),
            pair(-1).prop_map(|(k, l)| format!("Y[{k},{l}]")),
            pair(-1).prop_map(|(k, l)| format!("X[{k},{l}]")),
            pair(0).prop_map(|(k, l)| format!("u0 X[{k},{l}]")),
        ]
        .boxed(),
        Ring::D1 => prop_oneof![
            (sq(), sq()).prop_map(|(a, b)| format!("{a}*u0*{b}")),
            (sq(), pair(-1)).prop_map(|(a, (k, l))| format!("{a}*U[{k},{l}]")),
            sq().prop_map(|a| format!("iota({a})")),
        ]
        .boxed(),
    };
    let product = if ring == Ring::D1 {
        atom.boxed()
    } else {
        prop::collection::vec(atom, 1..3).prop_map(|fs| fs.join("*")).boxed()
    };
    prop::collection::vec(product, 1..4).prop_map(|ts| ts.join(" + ")).boxed()
}

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::A), Just(Ring::D0), Just(Ring::D1), Just(Ring::E0)]
}

fn element() -> impl Strategy<Value = (String, Value)> {
    ring().prop_flat_map(|r| expression(r).prop_map(move |e| {
        let v = evaluate(&e, Some(r)).expect("generated expressions evaluate");
        (e, v)
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_text_parses_back((_, v) in element()) {
        let doc = ElementDoc::from_value(&v);
        prop_assert_eq!(evaluate(&doc.render(), Some(v.ring())).unwrap(), v);
    }

    #[test]
    fn json_is_stable((_, v) in element()) {
        let json = ElementDoc::from_value(&v).to_json().unwrap();
        let doc = ElementDoc::from_json(&json).unwrap();
        prop_assert_eq!(doc.to_json().unwrap(), json.clone());
        prop_assert_eq!(ElementDoc::from_value(&doc.to_value().unwrap()).to_json().unwrap(), json);
    }

    #[test]
    fn terms_are_ordered_by_degree((_, v) in element()) {
        let doc = ElementDoc::from_value(&v);
        let degrees: Vec<u64> = doc.terms.iter().map(|t| t.degree()).collect();
        prop_assert!(degrees.windows(2).all(|w| w[0] <= w[1]));
    }
}
