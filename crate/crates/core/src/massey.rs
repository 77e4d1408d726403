//! Triple Massey products in `A`, computed in `D_*` with the sections
//! `sigma` (lift coefficients `0, 1`) and `u` (`2 Sq(R) -> mu_0 Sq(R)`,
//! `Y_{k,l} Sq(R) -> U_{k,l} Sq(R)`).

use crate::d0::{sigma, RDElt};
use crate::d1::{u_split, D1Elt};
use crate::error::{AlgebraError, Result};
use crate::milnor::{milnor_product, p_element, AElt, ExpSeq};

/// `tau(a, b) = u(sigma(ab) - sigma(a) sigma(b))`.
pub fn tau(a: &AElt, b: &AElt) -> D1Elt {
    let defect = sigma(&milnor_product(a, b)).sub(&sigma(a).mul(&sigma(b)));
    let r = RDElt::new(defect).expect("sigma(ab) - sigma(a)sigma(b) lies over zero");
    u_split(&r)
}

/// A bracket representative for the fixed sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyResult {
    pub a: AElt,
    pub b: AElt,
    pub c: AElt,
    pub value: AElt,
    /// The non-`iota` part of the bracket; zero on success.
    pub defect: D1Elt,
}

/// `<a, b, c> = tau(ab, c) - tau(a, b) c - tau(a, bc) + a tau(b, c)`.
///
/// The inputs need `ab = bc = 0` for the result to be a Massey product;
/// the formula itself is evaluated regardless.
pub fn triple_massey(a: &AElt, b: &AElt, c: &AElt) -> Result<MasseyResult> {
    let ab = milnor_product(a, b);
    let bc = milnor_product(b, c);
    let mut bracket = tau(&ab, c);
    bracket.add_assign(&tau(a, b).right_act(c));
    bracket.add_assign(&tau(a, &bc));
    bracket.add_assign(&tau(b, c).left_act(a));
    let value = bracket.iota_part().clone();
    let defect = bracket.add(&D1Elt::iota(&value));
    if !defect.is_zero() {
        return Err(AlgebraError::NonCycle(format!("<{a}, {b}, {c}>: {defect}")));
    }
    Ok(MasseyResult {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        value,
        defect,
    })
}

/// A closed-form guess for the top bracket `<P_t^{t-1}, P_t^{t-1}, P_t^{t-1}>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub label: &'static str,
    pub element: AElt,
    /// `true` when the candidate has the bracket degree `3|P_t^s| - 1`.
    pub degree_ok: bool,
    pub matches: bool,
}

/// One row of the sweep over `<P_t^s, P_t^s, P_t^s>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryRow {
    pub t: usize,
    pub s: u32,
    pub value: AElt,
    /// `true` for `s < t - 1`, where the bracket should vanish.
    pub expects_zero: bool,
    /// Closed-form candidates for `s = t - 1`.
    pub candidates: Vec<Candidate>,
}

impl CorollaryRow {
    /// `true` for a vanishing row that does vanish.
    pub fn zero_ok(&self) -> bool {
        !self.expects_zero || self.value.is_zero()
    }
}

/// `Sq((2^{t-1} - 1) Delta_t + e Delta_n)`.
pub fn corollary_candidate(t: usize, e: u32, n: usize) -> AElt {
    let r = ExpSeq::delta(t)
        .scale((1 << (t - 1)) - 1)
        .add(&ExpSeq::delta(n).scale(e));
    AElt::basis(r)
}

fn candidates(t: usize, bracket_degree: u64, value: &AElt) -> Vec<Candidate> {
    [
        ("2^{t-1} Delta_{t+1}", corollary_candidate(t, 1 << (t - 1), t + 1)),
        ("2^t Delta_{t+1}", corollary_candidate(t, 1 << t, t + 1)),
        ("2 Delta_{2t-1}", corollary_candidate(t, 2, 2 * t - 1)),
    ]
    .into_iter()
    .map(|(label, element)| Candidate {
        label,
        degree_ok: element.degree() == Some(bracket_degree),
        matches: &element == value,
        element,
    })
    .collect()
}

/// Evaluates `<P_t^s, P_t^s, P_t^s>` for `1 <= t <= t_max`, `0 <= s < t`.
pub fn corollary_sweep(t_max: usize, max_degree: u64) -> Result<Vec<CorollaryRow>> {
    let mut rows = Vec::new();
    for t in 1..=t_max {
        for s in 0..t as u32 {
            rows.push(corollary_row(t, s, max_degree)?);
        }
    }
    Ok(rows)
}

/// A single entry of [`corollary_sweep`].
pub fn corollary_row(t: usize, s: u32, max_degree: u64) -> Result<CorollaryRow> {
    let p = p_element(t, s)?;
    let d = p.degree().unwrap_or(0);
    if 3 * d > max_degree {
        return Err(AlgebraError::DegreeBound(format!(
            "<P_{t}^{s}> needs degree {} > {max_degree}",
            3 * d
        )));
    }
    let value = triple_massey(&p, &p, &p)?.value;
    let expects_zero = (s as usize) + 1 < t;
    let candidates = if expects_zero {
        Vec::new()
    } else {
        candidates(t, 3 * d - 1, &value)
    };
    Ok(CorollaryRow {
        t,
        s,
        value,
        expects_zero,
        candidates,
    })
}
