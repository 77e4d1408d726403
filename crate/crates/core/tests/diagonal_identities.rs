use secondary::d0::D0Elt;
use secondary::diagonal::{
    left_operator, left_relation_map, linearity_defect, linearity_defect_closed, symmetry_operator,
};
use secondary::ehat::{adem_element, adem_pairs, adem_tensor, rho, EHatElt};
use secondary::milnor::{kappa, q_element, sequences_of_degree, AElt, ExpSeq, TensorAA};

fn right_basis(max_index: i32) -> Vec<(String, EHatElt)> {
    let e = ExpSeq::empty();
    let mut out = vec![("2".to_string(), EHatElt::from_d0(D0Elt::sq(e.clone(), 2)))];
    for k in 0..=max_index {
        let z = EHatElt::x(-1, k, e.clone())
            .unwrap()
            .add(&EHatElt::from_d0(D0Elt::y(-1, k, e.clone()).unwrap()));
        out.push((format!("Z_{k}"), z));
        for l in 0..=max_index {
            if k < l {
                out.push((format!("Y_{k}{l}"), EHatElt::from_d0(D0Elt::y(k, l, e.clone()).unwrap())));
            }
            out.push((format!("X_{k}{l}"), EHatElt::x(k, l, e.clone()).unwrap()));
            out.push((format!("mu0X_{k}{l}"), EHatElt::mu0x(k, l, e.clone()).unwrap()));
        }
    }
    out
}

#[test]
fn left_operator_matches_relation_map() {
    for (n, m) in adem_pairs(10) {
        let got = left_operator(&adem_element(n, m).unwrap()).unwrap();
        assert_eq!(got, left_relation_map(&adem_tensor(n, m)), "[{n},{m}]");
    }
}

#[test]
fn linearity_defect_matches_closed_form() {
    let mut nonzero = 0;
    for (name, r) in right_basis(2) {
        for d in 0..=10 {
            for s in sequences_of_degree(d).iter() {
                let a = AElt::basis(s.clone());
                let phi = linearity_defect(&a, &r).unwrap();
                assert!(phi.mu0.is_zero(), "{a}, {name}: {phi}");
                assert_eq!(phi.plain, linearity_defect_closed(&a, &r).unwrap(), "{a}, {name}");
                nonzero += usize::from(!phi.plain.is_zero());
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn symmetry_operator_separates_equal_images() {
    let r32 = adem_element(3, 2).unwrap();
    let r22 = adem_element(2, 2).unwrap().star(&EHatElt::from_a(&AElt::sqn(1)));
    let (q0, q1) = (q_element(0), q_element(1));
    let want = TensorAA::tensor(&q1, &q0).add(&TensorAA::tensor(&q0, &q1));
    assert_eq!(symmetry_operator(&r32).unwrap(), want);
    assert!(symmetry_operator(&r22).unwrap().is_zero());
    assert_eq!(rho(&r32), rho(&r22));
}

#[test]
fn symmetry_operator_linearity() {
    let relations: Vec<EHatElt> = adem_pairs(6).into_iter().map(|(n, m)| adem_element(n, m).unwrap()).collect();
    for r in &relations {
        let d = r.degree().unwrap();
        for e in 0..=(12 - d) {
            for s in sequences_of_degree(e).iter() {
                let a = AElt::basis(s.clone());
                let sa = EHatElt::from_a(&a);
                let right = symmetry_operator(&r.star(&sa)).unwrap();
                assert_eq!(right, symmetry_operator(r).unwrap().right_act(&a), "{r} . {a}");
                let left = symmetry_operator(&sa.star(r)).unwrap();
                let want = symmetry_operator(r)
                    .unwrap()
                    .left_act(&a)
                    .add(&left_operator(r).unwrap().left_act(&kappa(&a)).symmetrize());
                assert_eq!(left, want, "{a} . {r}");
            }
        }
    }
}
