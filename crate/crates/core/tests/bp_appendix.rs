use secondary::bp::{
    coassociativity_sides, differential, eta_r_v, eta_r_v_mod_i2, eta_r_w, eta_r_w_mod_i2,
    homology_dimensions, i_adic_valuation, monomial_basis, mu_unit_consistency, p2_failure_witness,
    t1_linear_part,
    t_coproduct, t_coproduct_mod_i2, tau_boundary, tau_coproduct, tau_coproduct_mod_i2, to_v_basis,
    w, Poly, Var,
};

const P: u64 = 3;
const BOUND: u32 = 3;

fn valuation(x: &Poly, p: u64) -> u32 {
    i_adic_valuation(x, p).unwrap().unwrap_or(u32::MAX)
}

#[test]
fn t_coproduct_mod_i2_formula() {
    for n in 0..=3 {
        let d = t_coproduct(n, P, BOUND).unwrap().sub(&t_coproduct_mod_i2(n, P));
        assert!(valuation(&d, P) >= 2, "n = {n}");
    }
}

#[test]
fn tau_coproduct_mod_i2_formula() {
    for n in 0..=3 {
        let exact = tau_coproduct(n, P, BOUND).unwrap();
        let d = exact.sub(&tau_coproduct_mod_i2(n, P, -1));
        assert!(valuation(&d, P) >= 2, "n = {n}");
        let d = exact.sub(&tau_coproduct_mod_i2(n, P, 1));
        if n >= 2 {
            assert_eq!(valuation(&d, P), 1, "n = {n}");
        } else {
            assert!(valuation(&d, P) >= 2, "n = {n}");
        }
    }
}

#[test]
fn right_unit_mod_i2_formulas() {
    for n in 0..=3 {
        let d = to_v_basis(&eta_r_v(n, P), P).sub(&eta_r_v_mod_i2(n, P));
        assert!(valuation(&d, P) >= 2, "v_{n}");
        let d = to_v_basis(&eta_r_w(n, P), P).sub(&eta_r_w_mod_i2(n, P, true));
        assert!(valuation(&d, P) >= 2, "w_{n}");
    }
}

#[test]
fn displayed_w_congruence_misses_top_term() {
    for n in 1..=3 {
        let d = to_v_basis(&eta_r_w(n, P), P).sub(&eta_r_w_mod_i2(n, P, false));
        assert_eq!(valuation(&d, P), 1, "w_{n}");
        assert!(valuation(&d.sub(&w(n, P)), P) >= 2, "w_{n}");
    }
}

#[test]
fn tau_boundary_lies_in_i_cubed() {
    for n in 0..=3 {
        assert!(valuation(&tau_boundary(n, P), P) >= 3, "n = {n}");
    }
}

#[test]
fn tau_boundary_at_two() {
    for n in 1..=2u32 {
        let x = p2_failure_witness(n).unwrap();
        let v = Poly::v(n - 1, 2);
        let want = v.mul(&v).mul(&Poly::var(Var::T(1, 1)));
        assert!(valuation(&t1_linear_part(&x).sub(&want), 2) >= 3, "n = {n}");
        assert!(valuation(&x, 2) < 3, "n = {n}");
    }
    let x = p2_failure_witness(1).unwrap();
    assert!(valuation(&x.sub(&Poly::int(4).mul(&Poly::var(Var::T(1, 1)))), 2) >= 3);
    let x = p2_failure_witness(2).unwrap();
    let v1 = Poly::v(1, 2);
    let t1 = Poly::var(Var::T(1, 1));
    let want = v1.mul(&v1).mul(&t1).add(&Poly::int(4).mul(&t1.pow(3)));
    assert!(valuation(&x.sub(&want), 2) >= 3);
}

#[test]
fn coassociativity() {
    for n in 0..=2 {
        let (l, r) = coassociativity_sides(&t_coproduct(n, P, BOUND).unwrap(), n, P, BOUND).unwrap();
        assert_eq!(l, r, "t_{n}");
        let (l, r) = coassociativity_sides(&tau_coproduct(n, P, BOUND).unwrap(), n, P, BOUND).unwrap();
        assert_eq!(l, r, "tau_{n}");
    }
}

#[test]
fn right_unit_consistency() {
    for n in 0..=2 {
        let (l, r) = mu_unit_consistency(n, P, BOUND).unwrap();
        assert_eq!(l, r, "mu_{n}");
    }
}

#[test]
fn differential_squares_to_zero() {
    for d in 0..=12 {
        for m in monomial_basis(d, P) {
            let x = Poly::var(Var::Mu(0)).mul(&Poly::zero().add(&mono(&m)));
            for y in [mono(&m), x] {
                assert!(differential(&differential(&y, P), P).is_zero(), "{y}");
            }
        }
    }
}

fn mono(m: &[(Var, u32)]) -> Poly {
    let mut x = Poly::one();
    for (v, e) in m {
        x = x.mul(&Poly::var(*v).pow(*e as u64));
    }
    x
}

#[test]
fn homology_matches_dual_steenrod_algebra() {
    for h in homology_dimensions(10, P).unwrap() {
        assert_eq!(h.free_rank, 0, "degree {}", h.degree);
        assert!(h.max_exponent <= 1, "degree {}", h.degree);
        assert_eq!(h.dimension, h.expected, "degree {}", h.degree);
    }
}
