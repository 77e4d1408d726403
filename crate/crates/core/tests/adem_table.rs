mod common;

use common::{expected, TABLE};
use secondary::ehat::{adem_element, adem_pairs, in_e0};

#[test]
fn table_covers_all_pairs_up_to_seven() {
    let pairs: Vec<(u32, u32)> = TABLE.iter().map(|r| (r.n, r.m)).collect();
    let mut want = adem_pairs(7);
    let mut got = pairs.clone();
    want.sort();
    got.sort();
    assert_eq!(got, want);
    assert_eq!(pairs.len(), 14);
}

#[test]
fn adem_elements_match_table() {
    for row in TABLE {
        let got = adem_element(row.n, row.m).unwrap();
        assert_eq!(got, expected(row), "[{},{}]", row.n, row.m);
    }
}

#[test]
fn adem_elements_are_relations_in_e0() {
    for (n, m) in adem_pairs(10) {
        let e = adem_element(n, m).unwrap();
        assert!(e.is_relation(), "[{n},{m}]");
        assert!(in_e0(&e), "[{n},{m}]");
        assert_eq!(e.degree(), Some((n + m) as u64), "[{n},{m}]");
    }
}
