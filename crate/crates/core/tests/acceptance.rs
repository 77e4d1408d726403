//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use secondary::bp::{
    eta_r_v, eta_r_v_mod_i2, eta_r_w, eta_r_w_mod_i2, homology_dimensions, i_adic_valuation,
    p2_failure_witness, t1_linear_part, t_coproduct, t_coproduct_mod_i2, tau_boundary,
    tau_coproduct, tau_coproduct_mod_i2, to_v_basis, Poly,
};
use secondary::d0::{sigma, D0Elt};
use secondary::d1::D1Elt;
use secondary::diagonal::{left_operator, left_relation_map, symmetry_operator};
use secondary::ehat::{adem_element, adem_pairs, adem_tensor, rho, EHatElt};
use secondary::massey::{corollary_candidate, corollary_sweep, tau, triple_massey};
use secondary::milnor::{p_element, q_element, AElt, ExpSeq, TensorAA};
use secondary::verify::{run_suite, Bounds, Suite};

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            summary: String::new(),
            details: Vec::new(),
        }
    }

    /// Records one sub-check.
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.passed = false;
        }
        self.details.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("note {}", what.into()));
    }
}

fn d0(a: &AElt) -> D0Elt {
    sigma(a)
}

fn y(k: i32, l: i32, r: ExpSeq) -> D0Elt {
    D0Elt::y(k, l, r).expect("valid Y indices")
}

fn intro_identities() -> Outcome {
    let mut out = Outcome::new();
    let sq1 = d0(&AElt::sqn(1));
    let want = D0Elt::sq(ExpSeq::from(vec![2]), 2).add(&y(-1, 0, ExpSeq::empty()));
    out.check(sq1.mul(&sq1) == want, "Sq^1 Sq^1 = 2Sq(2) + Y_{-1,0}");

    let y10 = y(-1, 0, ExpSeq::empty());
    let want = y(-1, 0, ExpSeq::from(vec![1])).add(&D0Elt::sq(ExpSeq::from(vec![0, 1]), 2));
    out.check(sq1.mul(&y10) == want, "Sq^1 Y_{-1,0} = Y_{-1,0}Sq^1 + 2Sq(0,1)");

    let q0 = d0(&q_element(0));
    let mut count = 0;
    for k in 1..=4 {
        let qk = d0(&q_element(k));
        let product = q0.mul(&qk);
        let sq = D0Elt::sq(ExpSeq::delta(1).add(&ExpSeq::delta(k + 1)), 1);
        let yk = y(-1, k as i32, ExpSeq::empty());
        out.check(product == sq.add(&yk), format!("Q_0 Q_{k} = Sq(D_1 + D_{}) + Y_{{-1,{k}}} (got {product})", k + 1));
        let mirrored = qk.mul(&q0);
        out.check(product.sub(&mirrored) == yk, format!("[Q_0, Q_{k}] = Y_{{-1,{k}}}"));
        if mirrored == sq.add(&yk) {
            out.note(format!("Q_{k} Q_0 = {mirrored}: the Y term sits on the other side"));
        }
        count += 2;
    }

    for t in 1..=4usize {
        for s in 0..t as u32 {
            let p = d0(&p_element(t, s).expect("valid P"));
            let mut want = D0Elt::sq(ExpSeq::delta(t).scale(1 << (s + 1)), 2);
            if s as usize + 1 == t {
                let tail = ExpSeq::delta(t).scale((1 << s) - 1);
                want.add_assign(&y(t as i32 - 2, 2 * s as i32, tail));
            }
            let got = p.mul(&p);
            out.check(got == want, format!("P_{t}^{s} P_{t}^{s} = {want} (got {got})"));
            count += 1;
        }
    }
    out.summary = format!("{} identities", count + 2);
    out
}

fn massey_flagship() -> Outcome {
    let mut out = Outcome::new();
    let a = AElt::sq(&[0, 2]);
    let want_tau = D1Elt::mu0(&AElt::sq(&[0, 4]))
        .add(&D1Elt::u(0, 2, ExpSeq::from(vec![0, 1])).expect("valid U indices"));
    let got_tau = tau(&a, &a);
    out.check(got_tau == want_tau, format!("tau(Sq(0,2), Sq(0,2)) = {got_tau}"));
    match triple_massey(&a, &a, &a) {
        Ok(m) => out.check(m.value == AElt::sq(&[0, 1, 2]), format!("<Sq(0,2), Sq(0,2), Sq(0,2)> = {}", m.value)),
        Err(e) => out.check(false, format!("bracket failed: {e}")),
    }
    out.summary = "bracket and intermediate tau".into();
    out
}

fn corollary() -> Outcome {
    let mut out = Outcome::new();
    let rows = match corollary_sweep(3, 84) {
        Ok(rows) => rows,
        Err(e) => {
            out.check(false, format!("sweep failed: {e}"));
            return out;
        }
    };
    for row in &rows {
        let (t, s) = (row.t, row.s);
        if row.expects_zero {
            out.check(row.value.is_zero(), format!("<P_{t}^{s}, P_{t}^{s}, P_{t}^{s}> = {}", row.value));
        } else if t == 2 {
            out.check(row.value == AElt::sq(&[0, 1, 2]), format!("<P_2^1, P_2^1, P_2^1> = {}", row.value));
        } else if t == 3 {
            let bracket_degree = 3 * p_element(3, 2).expect("valid P").degree().unwrap_or(0) - 1;
            let candidate = corollary_candidate(3, 4, 4);
            out.note(format!(
                "<P_3^2, P_3^2, P_3^2> = {} in degree {bracket_degree}",
                row.value
            ));
            out.note(format!(
                "3D_3 + 4D_4 gives {candidate} in degree {}: {}",
                candidate.degree().unwrap_or(0),
                if candidate == row.value { "matches" } else { "does not match" }
            ));
            let fit = corollary_candidate(3, 2, 5);
            out.note(format!(
                "3D_3 + 2D_5 gives {fit}: {}",
                if fit == row.value { "matches" } else { "does not match" }
            ));
        } else {
            out.note(format!("<P_{t}^{s}, P_{t}^{s}, P_{t}^{s}> = {}", row.value));
        }
    }
    out.summary = format!("{} brackets, t <= 3", rows.len());
    out
}

fn figure_rows() -> Outcome {
    let mut out = Outcome::new();
    for row in common::TABLE {
        let (n, m) = (row.n, row.m);
        match adem_element(n, m) {
            Ok(got) => out.check(got == common::expected(row), format!("[{n},{m}] = {got}")),
            Err(e) => out.check(false, format!("[{n},{m}]: {e}")),
        }
    }
    let mut pairs: Vec<(u32, u32)> = common::TABLE.iter().map(|r| (r.n, r.m)).collect();
    pairs.sort();
    let mut all = adem_pairs(7);
    all.sort();
    out.check(pairs == all, "table lists every [n,m] with 0 < n < 2m, n + m <= 7");
    out.summary = format!("{} rows, [1,1] through [1,6]", common::TABLE.len());
    out
}

fn operator_values() -> Outcome {
    let mut out = Outcome::new();
    let r32 = adem_element(3, 2).expect("Adem pair");
    let r22 = adem_element(2, 2).expect("Adem pair").star(&EHatElt::from_a(&AElt::sqn(1)));
    let (q0, q1) = (q_element(0), q_element(1));
    let want = TensorAA::tensor(&q1, &q0).add(&TensorAA::tensor(&q0, &q1));
    match (symmetry_operator(&r32), symmetry_operator(&r22)) {
        (Ok(s32), Ok(s22)) => {
            out.check(s32 == want, format!("S([3,2]) = {s32}"));
            out.check(s22.is_zero(), format!("S([2,2]Sq^1) = {s22}"));
        }
        (a, b) => out.check(false, format!("S failed: {a:?}, {b:?}")),
    }
    let (a, b) = (rho(&r32), rho(&r22));
    out.check(a == b, format!("rho([3,2]) = rho([2,2]Sq^1) = {a}"));
    out.summary = "S and rho on [3,2], [2,2]Sq^1".into();
    out
}

fn left_identification() -> Outcome {
    let mut out = Outcome::new();
    let pairs = adem_pairs(10);
    for &(n, m) in &pairs {
        let got = adem_element(n, m).and_then(|r| left_operator(&r));
        match got {
            Ok(l) => out.check(l == left_relation_map(&adem_tensor(n, m)), format!("L([{n},{m}]) = {l}")),
            Err(e) => out.check(false, format!("[{n},{m}]: {e}")),
        }
    }
    out.summary = format!("{} Adem pairs, n + m <= 10", pairs.len());
    out
}

fn property_suites() -> Outcome {
    let mut out = Outcome::new();
    let mut cases = 0;
    for suite in [Suite::D0, Suite::D1, Suite::EHat, Suite::Diagonal, Suite::Homogeneity] {
        let report = run_suite(suite, &Bounds::for_suite(suite));
        for c in &report.checks {
            let detail = match &c.failure {
                None => format!("{suite} (degree <= {}): {} [{} cases]", report.bounds.max_degree, c.name, c.cases),
                Some(f) => format!("{suite}: {}: {f}", c.name),
            };
            out.check(c.passed(), detail);
            cases += c.cases;
        }
    }
    out.summary = format!("{cases} cases");
    out
}

fn valuation(x: &Poly, p: u64) -> u32 {
    i_adic_valuation(x, p).ok().flatten().unwrap_or(u32::MAX)
}

fn show(v: u32) -> String {
    if v == u32::MAX {
        "inf".into()
    } else {
        v.to_string()
    }
}

fn appendix() -> Outcome {
    let mut out = Outcome::new();
    const P: u64 = 3;
    const N: u32 = 3;
    for n in 0..=N {
        let exact = t_coproduct(n, P, N).expect("t coproduct");
        let v = valuation(&exact.sub(&t_coproduct_mod_i2(n, P)), P);
        out.check(v >= 2, format!("Delta t_{n} mod I^2: valuation {}", show(v)));
    }
    for n in 0..=N {
        let exact = tau_coproduct(n, P, N).expect("tau coproduct");
        let stated = valuation(&exact.sub(&tau_coproduct_mod_i2(n, P, 1)), P);
        let flipped = valuation(&exact.sub(&tau_coproduct_mod_i2(n, P, -1)), P);
        out.check(stated >= 2, format!("Delta tau_{n} mod I^2 with +w_k Phi: valuation {}", show(stated)));
        if stated < 2 {
            out.note(format!("Delta tau_{n} with -w_k Phi: valuation {}", show(flipped)));
        }
    }
    for n in 0..=N {
        let v = valuation(&to_v_basis(&eta_r_v(n, P), P).sub(&eta_r_v_mod_i2(n, P)), P);
        out.check(v >= 2, format!("eta_R(v_{n}) mod I^2: valuation {}", show(v)));
    }
    for n in 0..=N {
        let exact = to_v_basis(&eta_r_w(n, P), P);
        let stated = valuation(&exact.sub(&eta_r_w_mod_i2(n, P, false)), P);
        let full = valuation(&exact.sub(&eta_r_w_mod_i2(n, P, true)), P);
        out.check(stated >= 2, format!("eta_R(w_{n}) mod I^2 summed over k < n: valuation {}", show(stated)));
        if stated < 2 {
            out.note(format!("eta_R(w_{n}) summed over k <= n: valuation {}", show(full)));
        }
    }
    for n in 0..=N {
        let v = valuation(&tau_boundary(n, P), P);
        out.check(v >= 3, format!("d tau_{n} at p = 3: valuation {}", show(v)));
    }
    for n in 1..=2 {
        let x = p2_failure_witness(n).expect("p = 2 boundary");
        let want = Poly::v(n - 1, 2).pow(2).mul(&Poly::t(1, 1));
        let v = valuation(&x.sub(&want), 2);
        out.check(v >= 3, format!("p = 2: d tau_{n} - v_{}^2 t_1 has valuation {}", n - 1, show(v)));
        if v < 3 {
            let linear = valuation(&t1_linear_part(&x).sub(&want), 2);
            out.note(format!("p = 2: d tau_{n} = {x}; its t_1-linear part agrees to valuation {}", show(linear)));
        }
    }
    match homology_dimensions(10, P) {
        Ok(rows) => {
            for h in rows {
                out.check(
                    h.dimension == h.expected && h.free_rank == 0 && h.max_exponent <= 1,
                    format!("homology in degree {}: {} (monomial count {})", h.degree, h.dimension, h.expected),
                );
            }
        }
        Err(e) => out.check(false, format!("homology: {e}")),
    }
    out.summary = "p = 3, n <= 3; p = 2, n <= 2; homology degree <= 10".into();
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("intro identities", intro_identities),
        ("Massey flagship", massey_flagship),
        ("corollary sweep", corollary),
        ("Adem table", figure_rows),
        ("operator values", operator_values),
        ("L identification", left_identification),
        ("property suites", property_suites),
        ("cooperation algebroid", appendix),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        for line in &outcome.details {
            println!("    {line}");
        }
        println!(
            "criterion {} ({name}): {} [{}; {:.1}s]",
            i + 1,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.summary,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!outcome.passed);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
