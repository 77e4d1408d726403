//! The subcommands, each producing a [`Report`].

use rayon::prelude::*;
use serde_json::json;

use secondary::bp::{
    eta_r_v, eta_r_v_mod_i2, eta_r_w, eta_r_w_mod_i2, homology_dimensions, i_adic_valuation,
    p2_failure_witness, t1_linear_part, t_coproduct, t_coproduct_mod_i2, tau_boundary,
    tau_coproduct, tau_coproduct_mod_i2, to_v_basis, Poly,
};
use secondary::d0::D0Elt;
use secondary::diagonal::{left_operator, symmetry_operator};
use secondary::ehat::{adem_element, adem_pairs, adem_tensor, rho, EHatElt};
use secondary::massey::{corollary_sweep, triple_massey};
use secondary::milnor::AElt;
use secondary::verify::{run_suite, Bounds, Suite};

use crate::doc::ElementDoc;
use crate::error::{CliError, Result};
use crate::eval::{evaluate, infer_ring, Ring, Value};
use crate::expr::parse;
use crate::report::Report;

/// Largest `n` accepted by `bp-check`.
pub const BP_MAX_N: u32 = 4;

pub fn eval(input: &str, ring: Option<Ring>) -> Result<Report> {
    let v = evaluate(input, ring)?;
    Report::element(&ElementDoc::from_value(&v).with_source(format!("eval {input}")))
}

/// `a * b`, each factor evaluated in the product's ring (or in `D_0` when the
/// product lands in `D_1`).
pub fn mul(a: &str, b: &str, ring: Option<Ring>) -> Result<Report> {
    let (ea, eb) = (parse(a)?, parse(b)?);
    let (ra, rb) = (infer_ring(&ea)?, infer_ring(&eb)?);
    let target = match ring {
        Some(r) => r,
        None if ra.embeds_in(rb) => rb,
        None if rb.embeds_in(ra) => ra,
        None => return Err(CliError::ring(0, format!("no common ring for {ra} and {rb}"))),
    };
    let operand = |text: &str, inferred: Ring| {
        let r = if target == Ring::D1 && inferred != Ring::D1 { Ring::D0 } else { target };
        evaluate(text, Some(r))
    };
    let product = operand(a, ra)?.mul(operand(b, rb)?, Some(target))?;
    Report::element(&ElementDoc::from_value(&product).with_source(format!("mul {a} {b}")))
}

fn a_operand(text: &str) -> Result<AElt> {
    match evaluate(text, Some(Ring::A))? {
        Value::A(a) => Ok(a),
        _ => unreachable!("evaluated in A"),
    }
}

pub fn massey(a: &str, b: &str, c: &str) -> Result<Report> {
    let m = triple_massey(&a_operand(a)?, &a_operand(b)?, &a_operand(c)?)?;
    Report::element(&ElementDoc::from_value(&Value::A(m.value)).with_source(format!("massey {a} {b} {c}")))
}

/// `1*4 + 5` for `[1,4] = Sq^1 Sq^4 + Sq^5`.
fn adem_definition(n: u32, m: u32) -> String {
    let mut parts: Vec<String> = adem_tensor(n, m).iter().map(|(a, b)| format!("{a}*{b}")).collect();
    // Lucas: C(m - 1, n) is odd iff the bits of n lie inside those of m - 1.
    if n & !(m - 1) == 0 {
        parts.push((n + m).to_string());
    }
    parts.join(" + ")
}

/// The Adem elements `[n,m]` with `n + m <= max_sum`: definition, `D_0`
/// part, and `X + mu_0 X` part.
pub fn adem(max_sum: u32, bound: u32) -> Result<Report> {
    if max_sum > bound {
        return Err(CliError::Bound(format!("adem table up to n + m = {max_sum}, limit {bound}")));
    }
    let rows: Vec<(u32, u32, String, ElementDoc, ElementDoc)> = adem_pairs(max_sum)
        .into_par_iter()
        .map(|(n, m)| {
            let e = adem_element(n, m)?;
            let d0 = ElementDoc::from_value(&Value::D0(rho(&e)));
            let x = ElementDoc::from_value(&Value::E0(EHatElt {
                d0: D0Elt::zero(),
                xp: e.xp,
            }));
            Ok((n, m, adem_definition(n, m), d0, x))
        })
        .collect::<Result<_>>()?;
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|(n, m, def, d0, x)| vec![format!("[{n},{m}]"), def.clone(), d0.render(), x.render()])
        .collect();
    let json = rows
        .iter()
        .map(|(n, m, def, d0, x)| json!({"n": n, "m": m, "definition": def, "d0": d0, "x": x}))
        .collect();
    Ok(Report {
        lines: table.iter().map(|row| row.join(" | ")).collect(),
        headers: vec!["relation".into(), "definition".into(), "D0".into(), "X + u0 X".into()],
        rows: table,
        json: serde_json::Value::Array(json),
        passed: true,
    })
}

/// The sweep over `<P_t^s, P_t^s, P_t^s>`; fails if a bracket that should
/// vanish does not.
pub fn corollary(max_t: usize, max_degree: u64) -> Result<Report> {
    let rows = corollary_sweep(max_t, max_degree)?;
    let (mut lines, mut table, mut json) = (Vec::new(), Vec::new(), Vec::new());
    for row in &rows {
        let value = ElementDoc::from_value(&Value::A(row.value.clone()));
        let name = format!("<P_{t}^{s}, P_{t}^{s}, P_{t}^{s}>", t = row.t, s = row.s);
        let status = if !row.expects_zero {
            ""
        } else if row.zero_ok() {
            " (vanishes)"
        } else {
            " (FAIL: should vanish)"
        };
        lines.push(format!("{name} = {}{status}", value.render()));
        let mut candidates = Vec::new();
        for c in &row.candidates {
            let doc = ElementDoc::from_value(&Value::A(c.element.clone()));
            lines.push(format!(
                "  candidate {}: {} ({}, {})",
                c.label,
                doc.render(),
                if c.degree_ok { "degree ok" } else { "wrong degree" },
                if c.matches { "matches" } else { "differs" }
            ));
            candidates.push(json!({
                "label": c.label, "element": doc, "degree_ok": c.degree_ok, "matches": c.matches,
            }));
        }
        table.push(vec![
            row.t.to_string(),
            row.s.to_string(),
            value.render(),
            row.expects_zero.to_string(),
            row.candidates.iter().filter(|c| c.matches).map(|c| c.label).collect::<Vec<_>>().join(" "),
        ]);
        json.push(json!({
            "t": row.t, "s": row.s, "value": value, "expects_zero": row.expects_zero,
            "zero_ok": row.zero_ok(), "candidates": candidates,
        }));
    }
    Ok(Report {
        lines,
        headers: vec!["t".into(), "s".into(), "value".into(), "expects_zero".into(), "matching".into()],
        rows: table,
        json: serde_json::Value::Array(json),
        passed: rows.iter().all(|r| r.zero_ok()),
    })
}

/// The left operator `L` and the symmetry operator `S` on a relation of `E_0`.
pub fn ls_ops(input: &str) -> Result<Report> {
    let Value::E0(r) = evaluate(input, Some(Ring::E0))? else {
        unreachable!("evaluated in E0")
    };
    let l = ElementDoc::from_tensor(&left_operator(&r)?).with_source(format!("L {input}"));
    let s = ElementDoc::from_tensor(&symmetry_operator(&r)?).with_source(format!("S {input}"));
    Ok(Report {
        lines: vec![format!("L = {}", l.render()), format!("S = {}", s.render())],
        headers: vec!["operator".into(), "value".into()],
        rows: vec![vec!["L".into(), l.render()], vec!["S".into(), s.render()]],
        json: json!({"L": l, "S": s}),
        passed: true,
    })
}

/// Overrides for [`verify`]; unset fields keep each suite's defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub max_degree: Option<u64>,
    pub samples: Option<usize>,
    pub prime: Option<u64>,
}

pub fn verify(suites: &[Suite], opts: VerifyOptions) -> Result<Report> {
    let (mut lines, mut table, mut json) = (Vec::new(), Vec::new(), Vec::new());
    let (mut total, mut failed) = (0, 0);
    for &suite in suites {
        let mut bounds = Bounds::for_suite(suite);
        bounds.max_degree = opts.max_degree.unwrap_or(bounds.max_degree);
        bounds.samples = opts.samples.unwrap_or(bounds.samples);
        bounds.prime = opts.prime.unwrap_or(bounds.prime);
        let report = run_suite(suite, &bounds);
        for check in &report.checks {
            total += 1;
            failed += usize::from(!check.passed());
            let status = if check.passed() { "ok  " } else { "FAIL" };
            let detail = check.failure.as_deref().map_or(String::new(), |f| format!(": {f}"));
            lines.push(format!("{status} {suite}/{} ({} cases){detail}", check.name, check.cases));
            table.push(vec![
                suite.to_string(),
                check.name.to_string(),
                check.cases.to_string(),
                check.passed().to_string(),
                check.failure.clone().unwrap_or_default(),
            ]);
            json.push(json!({
                "suite": suite.name(), "check": check.name, "max_degree": bounds.max_degree,
                "cases": check.cases, "passed": check.passed(), "failure": check.failure,
            }));
        }
    }
    lines.push(format!("verify: {} of {total} checks pass", total - failed));
    Ok(Report {
        lines,
        headers: ["suite", "check", "cases", "passed", "failure"].map(String::from).to_vec(),
        rows: table,
        json: serde_json::Value::Array(json),
        passed: failed == 0,
    })
}

/// Collects `(name, valuation, required)` rows and informational notes.
struct BpLog {
    lines: Vec<String>,
    rows: Vec<Vec<String>>,
    json: Vec<serde_json::Value>,
    failed: usize,
}

impl BpLog {
    fn check(&mut self, name: String, valuation: Option<u32>, required: u32) {
        let ok = valuation.is_none_or(|v| v >= required);
        self.failed += usize::from(!ok);
        let shown = valuation.map_or("inf".to_string(), |v| v.to_string());
        self.lines
            .push(format!("{} {name}: valuation {shown} (need >= {required})", if ok { "ok  " } else { "FAIL" }));
        self.rows.push(vec![name.clone(), shown, required.to_string(), ok.to_string()]);
        self.json.push(json!({"check": name, "valuation": valuation, "required": required, "passed": ok}));
    }

    fn note(&mut self, text: String) {
        self.lines.push(format!("note {text}"));
    }
}

/// Checks the mod-`I^2` structure formulas of `EBP_* EBP` for `n <= max_n`,
/// the `I^3` bound on the boundary of `tau_n`, and (at odd `p`) the homology
/// in degrees `<= max_degree`.
pub fn bp_check(p: u64, max_n: u32, max_degree: u64) -> Result<Report> {
    if max_n > BP_MAX_N {
        return Err(CliError::Bound(format!("n = {max_n}, limit {BP_MAX_N}")));
    }
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(CliError::Bound(format!("{p} is not a prime")));
    }
    let val = |x: &Poly| i_adic_valuation(x, p);
    let mut log = BpLog {
        lines: Vec::new(),
        rows: Vec::new(),
        json: Vec::new(),
        failed: 0,
    };
    for n in 0..=max_n {
        let exact = t_coproduct(n, p, max_n)?;
        log.check(format!("Delta t_{n}"), val(&exact.sub(&t_coproduct_mod_i2(n, p)))?, 2);
    }
    for n in 0..=max_n {
        let exact = tau_coproduct(n, p, max_n)?;
        log.check(format!("Delta tau_{n}"), val(&exact.sub(&tau_coproduct_mod_i2(n, p, -1)))?, 2);
        if let Some(v) = val(&exact.sub(&tau_coproduct_mod_i2(n, p, 1)))?.filter(|v| *v < 2) {
            log.note(format!("Delta tau_{n} with +w_k Phi instead: valuation {v}"));
        }
    }
    if p > 2 {
        for n in 0..=max_n {
            let exact = to_v_basis(&eta_r_v(n, p), p);
            log.check(format!("eta_R(v_{n})"), val(&exact.sub(&eta_r_v_mod_i2(n, p)))?, 2);
        }
        for n in 0..=max_n {
            let exact = to_v_basis(&eta_r_w(n, p), p);
            log.check(format!("eta_R(w_{n})"), val(&exact.sub(&eta_r_w_mod_i2(n, p, true)))?, 2);
            if let Some(v) = val(&exact.sub(&eta_r_w_mod_i2(n, p, false)))?.filter(|v| *v < 2) {
                log.note(format!("eta_R(w_{n}) without the k = n term: valuation {v}"));
            }
        }
        for n in 0..=max_n {
            log.check(format!("d tau_{n}"), val(&tau_boundary(n, p))?, 3);
        }
        for h in homology_dimensions(max_degree, p)? {
            let ok = h.dimension == h.expected && h.free_rank == 0 && h.max_exponent <= 1;
            log.failed += usize::from(!ok);
            log.lines.push(format!(
                "{} homology in degree {}: {} (monomial count {})",
                if ok { "ok  " } else { "FAIL" },
                h.degree,
                h.dimension,
                h.expected
            ));
            log.rows.push(vec![format!("homology degree {}", h.degree), h.dimension.to_string(), h.expected.to_string(), ok.to_string()]);
            log.json.push(json!({
                "check": format!("homology degree {}", h.degree), "dimension": h.dimension,
                "expected": h.expected, "passed": ok,
            }));
        }
    } else {
        for n in 1..=max_n.min(2) {
            let x = p2_failure_witness(n)?;
            let want = Poly::v(n - 1, 2).pow(2).mul(&Poly::t(1, 1));
            log.check(format!("t_1-linear part of d tau_{n} - v_{}^2 t_1", n - 1), val(&t1_linear_part(&x).sub(&want))?, 3);
            log.note(format!("d tau_{n} = {x}"));
        }
        log.note("right unit and homology checks need an odd prime".into());
    }
    let total = log.rows.len();
    log.lines.push(format!("bp-check: {} of {total} checks pass at p = {p}", total - log.failed));
    Ok(Report {
        lines: log.lines,
        headers: ["check", "value", "required", "passed"].map(String::from).to_vec(),
        rows: log.rows,
        json: serde_json::Value::Array(log.json),
        passed: log.failed == 0,
    })
}
