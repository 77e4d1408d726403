//! Invariant suites over bounded degree ranges, shared by the command line
//! `verify` command and the acceptance tests.
//!
//! Each suite is a list of named checks. A check either passes with a case
//! count or reports the first counterexample it met. Checks within a suite
//! run in parallel on the current rayon pool; the report order is fixed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bp;
use crate::d0::{
    d0_product, d0_product_by_pairing, dual_coproduct, dual_monomials_of_degree, pi, sigma,
    y_degree, y_left_action, D0DualMonomial, D0Elt, RDElt,
};
use crate::d1::{boundary, mult_map_op, mult_map_op_closed, normalize_u, u_split, D1Elt};
use crate::diagonal::{
    left_operator, left_relation_map, linearity_defect, linearity_defect_closed, nabla,
    symmetry_operator,
};
use crate::ehat::{
    adem_element, adem_pairs, adem_tensor, delta0, ehat_basis_of_degree, in_e0, theta_e,
    theta_hat_d, EBasis, EHatElt, VElt,
};
use crate::error::AlgebraError;
use crate::milnor::{
    contract_monomial, coproduct, kappa, milnor_product, sequences_of_degree, AElt, ExpSeq,
};

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    D0,
    D1,
    EHat,
    Diagonal,
    Homogeneity,
    Bp,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::D0,
        Suite::D1,
        Suite::EHat,
        Suite::Diagonal,
        Suite::Homogeneity,
        Suite::Bp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::D0 => "d0",
            Suite::D1 => "d1",
            Suite::EHat => "ehat",
            Suite::Diagonal => "diagonal",
            Suite::Homogeneity => "homogeneity",
            Suite::Bp => "bp",
        }
    }

    /// The degree bound used when none is given.
    pub fn default_bound(self) -> u64 {
        match self {
            Suite::D0 | Suite::EHat => 16,
            Suite::D1 => 20,
            Suite::Diagonal | Suite::Bp => 10,
            Suite::Homogeneity => 14,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| AlgebraError::UnknownSuite(s.to_string()))
    }
}

/// Bounds for one suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_degree: u64,
    /// Elements taken per degree slot in sampled checks.
    pub samples: usize,
    /// The prime for the `bp` suite.
    pub prime: u64,
}

impl Bounds {
    pub fn for_suite(suite: Suite) -> Self {
        Bounds {
            max_degree: suite.default_bound(),
            samples: 3,
            prime: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bounds: Bounds,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

type CheckResult = Result<usize, String>;
type Check = (&'static str, fn(&Bounds) -> CheckResult);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Runs every check of `suite`.
pub fn run_suite(suite: Suite, bounds: &Bounds) -> SuiteReport {
    let checks: &[Check] = match suite {
        Suite::D0 => D0_CHECKS,
        Suite::D1 => D1_CHECKS,
        Suite::EHat => EHAT_CHECKS,
        Suite::Diagonal => DIAGONAL_CHECKS,
        Suite::Homogeneity => HOMOGENEITY_CHECKS,
        Suite::Bp => BP_CHECKS,
    };
    let checks = checks
        .par_iter()
        .map(|(name, f)| {
            let result = f(bounds);
            CheckOutcome {
                name,
                cases: *result.as_ref().unwrap_or(&0),
                failure: result.err(),
            }
        })
        .collect();
    SuiteReport {
        suite,
        bounds: *bounds,
        checks,
    }
}

// Bases.

fn max_index(d: u64) -> i32 {
    let mut l = 0;
    while (1u64 << (l + 2)) <= d + 1 {
        l += 1;
    }
    l
}

fn a_basis(d: u64) -> Vec<AElt> {
    sequences_of_degree(d).iter().cloned().map(AElt::basis).collect()
}

fn ehat_basis(d: u64) -> Vec<EBasis> {
    ehat_basis_of_degree(d, max_index(d + 1))
}

fn d0_basis(d: u64) -> Vec<D0Elt> {
    ehat_basis(d)
        .into_iter()
        .filter(|b| matches!(b, EBasis::Sq(_) | EBasis::Y(_)))
        .map(|b| b.to_elt().d0)
        .collect()
}

fn rd_basis(d: u64) -> Vec<D0Elt> {
    ehat_basis(d)
        .into_iter()
        .filter_map(|b| match b {
            EBasis::Sq(r) => Some(D0Elt::sq(r, 2)),
            EBasis::Y(_) => Some(b.to_elt().d0),
            _ => None,
        })
        .collect()
}

fn d1_basis(d: u64) -> Vec<D1Elt> {
    let mut out = Vec::new();
    if d > 0 {
        out.extend(a_basis(d - 1).iter().map(D1Elt::iota));
    }
    out.extend(a_basis(d).iter().map(D1Elt::mu0));
    for b in ehat_basis(d) {
        if let EBasis::Y(key) = b {
            out.push(D1Elt::u(key.k, key.l, key.r).expect("basis key"));
        }
    }
    out
}

/// Elements of `E_0`: `Sq(R)`, `Y_{k,l}` with `k >= 0`, `X_{k,l}` and
/// `mu_0 X_{k,l}` with `k, l >= 0`, and `X_{-1,l} + Y_{-1,l}`.
fn e0_basis(d: u64) -> Vec<EHatElt> {
    let mut out = Vec::new();
    for b in ehat_basis(d) {
        match &b {
            EBasis::Y(key) if key.k == -1 => {
                let x = EHatElt::x(-1, key.l, key.r.clone()).expect("basis key");
                out.push(b.to_elt().add(&x));
            }
            EBasis::X(key) if key.k == -1 || key.l == -1 => {}
            _ => out.push(b.to_elt()),
        }
    }
    out
}

/// Up to `n` evenly spaced entries of `v`.
fn sample<T: Clone>(v: Vec<T>, n: usize) -> Vec<T> {
    if v.len() <= n {
        return v;
    }
    (0..n).map(|i| v[i * v.len() / n].clone()).collect()
}

/// All `(d1, d2)` with both parts in `lo..` and `d1 + d2 <= max`.
fn degree_pairs(lo: u64, max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for d1 in lo..=max {
        for d2 in lo..=max.saturating_sub(d1) {
            if d1 + d2 <= max {
                out.push((d1, d2));
            }
        }
    }
    out
}

fn sampled_pairs<T: Clone>(max: u64, n: usize, basis: impl Fn(u64) -> Vec<T>) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for (d1, d2) in degree_pairs(0, max) {
        for x in sample(basis(d1), n) {
            for y in sample(basis(d2), n) {
                out.push((x.clone(), y));
            }
        }
    }
    out
}

fn sampled_triples<T: Clone>(max: u64, n: usize, basis: impl Fn(u64) -> Vec<T>) -> Vec<(T, T, T)> {
    let mut out = Vec::new();
    for (d1, d2) in degree_pairs(0, max) {
        for d3 in 0..=(max - d1 - d2) {
            for x in sample(basis(d1), n) {
                for y in sample(basis(d2), n) {
                    for z in sample(basis(d3), n) {
                        out.push((x.clone(), y.clone(), z));
                    }
                }
            }
        }
    }
    out
}

fn count_all<T: Sync>(cases: &[T], f: impl Fn(&T) -> Result<(), String> + Sync + Send) -> CheckResult {
    cases.par_iter().try_for_each(f)?;
    Ok(cases.len())
}

// D_0.

const D0_CHECKS: &[Check] = &[
    ("product matches pairing oracle", d0_product_oracle),
    ("associativity", d0_associativity),
    ("projection is multiplicative", d0_projection),
    ("relation module squares to zero", d0_square_zero),
    ("dual coproduct coassociative and counital", d0_dual_coproduct),
    ("Y part is 2-torsion", d0_two_torsion),
    ("left action on Y closed form", d0_y_action),
];

fn d0_product_oracle(b: &Bounds) -> CheckResult {
    let pairs: Vec<(D0Elt, D0Elt)> = degree_pairs(0, b.max_degree)
        .into_iter()
        .flat_map(|(d1, d2)| {
            let right = d0_basis(d2);
            d0_basis(d1)
                .into_iter()
                .flat_map(move |x| right.clone().into_iter().map(move |y| (x.clone(), y)))
        })
        .collect();
    count_all(&pairs, |(x, y)| {
        ensure(d0_product(x, y) == d0_product_by_pairing(x, y), || format!("{x} * {y}"))
    })
}

fn d0_associativity(b: &Bounds) -> CheckResult {
    let triples = sampled_triples(b.max_degree + 4, b.samples, d0_basis);
    count_all(&triples, |(x, y, z)| {
        let lhs = d0_product(&d0_product(x, y), z);
        ensure(lhs == d0_product(x, &d0_product(y, z)), || format!("({x})({y})({z})"))
    })
}

fn d0_projection(b: &Bounds) -> CheckResult {
    let pairs = sampled_pairs(b.max_degree + 4, b.samples, d0_basis);
    count_all(&pairs, |(x, y)| {
        let lhs = pi(&d0_product(x, y));
        ensure(lhs == milnor_product(&pi(x), &pi(y)), || format!("pi({x} * {y})"))
    })
}

fn d0_square_zero(b: &Bounds) -> CheckResult {
    let mut n = 0;
    for (d1, d2) in degree_pairs(1, b.max_degree) {
        let right = rd_basis(d2);
        let left = rd_basis(d1);
        n += count_all(&left, |r| {
            for s in &right {
                ensure(d0_product(r, s).is_zero(), || format!("{r} * {s}"))?;
            }
            Ok(())
        })? * right.len();
    }
    Ok(n)
}

type Triple = HashMap<(D0DualMonomial, D0DualMonomial, D0DualMonomial), u8>;

fn add_triple(t: &mut Triple, key: (D0DualMonomial, D0DualMonomial, D0DualMonomial), c: u8) {
    let twos = [&key.0, &key.1, &key.2]
        .into_iter()
        .filter(|m| matches!(m, D0DualMonomial::Two(..)))
        .count();
    // 2 xi_{k,l} has order two, and a product of two such factors vanishes.
    if twos >= 2 {
        return;
    }
    let modulus = if twos == 1 { 2 } else { 4 };
    let e = t.entry(key).or_insert(0);
    *e = (*e + c) % modulus;
}

fn d0_dual_coproduct(b: &Bounds) -> CheckResult {
    let unit = D0DualMonomial::Plain(ExpSeq::empty());
    let monomials: Vec<D0DualMonomial> = (0..=b.max_degree).flat_map(dual_monomials_of_degree).collect();
    count_all(&monomials, |m| {
        let delta = dual_coproduct(m);
        let (mut left, mut right) = (Triple::new(), Triple::new());
        for ((x, y), c) in delta.iter() {
            for ((x1, x2), c1) in dual_coproduct(x).iter() {
                add_triple(&mut left, (x1.clone(), x2.clone(), y.clone()), c * c1 % 4);
            }
            for ((y1, y2), c2) in dual_coproduct(y).iter() {
                add_triple(&mut right, (x.clone(), y1.clone(), y2.clone()), c * c2 % 4);
            }
        }
        left.retain(|_, c| *c != 0);
        right.retain(|_, c| *c != 0);
        ensure(left == right, || format!("coassociativity at {m:?}"))?;
        let mut sides: [BTreeMap<D0DualMonomial, u8>; 2] = Default::default();
        for ((x, y), c) in delta.iter() {
            if *x == unit {
                *sides[0].entry(y.clone()).or_insert(0) += c;
            }
            if *y == unit {
                *sides[1].entry(x.clone()).or_insert(0) += c;
            }
        }
        let want = BTreeMap::from([(m.clone(), 1u8)]);
        for mut side in sides {
            side.retain(|_, c| *c % 4 != 0);
            ensure(side == want, || format!("counit at {m:?}"))?;
        }
        Ok(())
    })
}

fn d0_two_torsion(b: &Bounds) -> CheckResult {
    let ys: Vec<D0Elt> = (0..=b.max_degree)
        .flat_map(d0_basis)
        .filter(|y| y.sq_terms().next().is_none())
        .collect();
    count_all(&ys, |y| {
        ensure(y.add(y).is_zero() && y.scale(2).is_zero() && &y.neg() == y, || format!("{y}"))
    })
}

fn d0_y_action(b: &Bounds) -> CheckResult {
    let max = b.max_degree.min(12);
    let a: Vec<AElt> = (0..=max).flat_map(a_basis).collect();
    let mut n = 0;
    for l in 0..=3 {
        for k in -1..l {
            let y = D0Elt::y(k, l, ExpSeq::empty()).expect("valid indices");
            n += count_all(&a, |a| {
                let got = y_left_action(a, k, l, &ExpSeq::empty()).map_err(|e| e.to_string())?;
                ensure(got == sigma(a).mul(&y), || format!("{a} Y_{{{k},{l}}}"))
            })?;
        }
    }
    Ok(n)
}

// D_1.

const D1_CHECKS: &[Check] = &[
    ("boundary sequence exact by rank", d1_exactness),
    ("splitting is a section of the boundary", d1_section),
    ("multiplication map identity and closed form", d1_mult_map),
    ("relations compatible with the left action", d1_relations),
    ("boundary is a bimodule map", d1_bimodule),
    ("crossed algebra identity", d1_peiffer),
];

/// Rank over `F_2` of vectors given as coordinate sets.
fn rank_f2(rows: Vec<BTreeSet<String>>) -> usize {
    let mut pivots: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for mut row in rows {
        while let Some(lead) = row.iter().next().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = row.symmetric_difference(p).cloned().collect(),
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn rd_coordinates(x: &D0Elt) -> Result<BTreeSet<String>, String> {
    let mut out = BTreeSet::new();
    for (r, c) in x.sq_terms() {
        ensure(c == 2, || format!("{x} is not in the relation module"))?;
        out.insert(format!("2{r}"));
    }
    for key in x.y_terms() {
        out.insert(format!("Y{},{}{}", key.k, key.l, key.r));
    }
    Ok(out)
}

fn d1_exactness(b: &Bounds) -> CheckResult {
    let degrees: Vec<u64> = (0..=b.max_degree).collect();
    count_all(&degrees, |&d| {
        let basis = d1_basis(d);
        let images = basis
            .iter()
            .map(|x| rd_coordinates(&boundary(x)))
            .collect::<Result<Vec<_>, _>>()?;
        let rank = rank_f2(images);
        let below = if d > 0 { sequences_of_degree(d - 1).len() } else { 0 };
        ensure(basis.iter().take(below).all(|x| boundary(x).is_zero()), || {
            format!("boundary of iota nonzero in degree {d}")
        })?;
        ensure(basis.len() - rank == below, || format!("kernel rank in degree {d}"))?;
        ensure(rank == rd_basis(d).len(), || format!("image rank in degree {d}"))?;
        ensure(a_basis(d).iter().all(|a| &pi(&sigma(a)) == a), || format!("pi sigma in degree {d}"))
    })
}

fn d1_section(b: &Bounds) -> CheckResult {
    let rs: Vec<D0Elt> = (0..=b.max_degree).flat_map(rd_basis).collect();
    count_all(&rs, |r| {
        let rd = RDElt::new(r.clone()).map_err(|e| e.to_string())?;
        ensure(&boundary(&u_split(&rd)) == r, || format!("{r}"))
    })
}

fn d1_mult_map(b: &Bounds) -> CheckResult {
    let max = b.max_degree.saturating_sub(6);
    let pairs: Vec<(AElt, D0Elt)> = degree_pairs(0, max)
        .into_iter()
        .filter(|(_, dr)| *dr > 0)
        .flat_map(|(da, dr)| {
            let rs = rd_basis(dr);
            a_basis(da)
                .into_iter()
                .flat_map(move |a| rs.clone().into_iter().map(move |r| (a.clone(), r)))
        })
        .collect();
    count_all(&pairs, |(a, r)| {
        let rd = RDElt::new(r.clone()).map_err(|e| e.to_string())?;
        let op = mult_map_op(a, &rd).map_err(|e| e.to_string())?;
        ensure(op == mult_map_op_closed(a, &rd), || format!("op({a}, {r}) closed form"))?;
        let ar = RDElt::new(sigma(a).mul(r)).map_err(|e| e.to_string())?;
        let lhs = u_split(&rd).left_act(a);
        ensure(lhs == u_split(&ar).add(&D1Elt::iota(&op)), || format!("a u(r) at {a}, {r}"))
    })
}

fn xi_pair(i: usize, p: u32, j: usize, q: u32) -> ExpSeq {
    ExpSeq::delta(i).scale(p).add(&ExpSeq::delta(j).scale(q))
}

fn d1_relations(b: &Bounds) -> CheckResult {
    let max = b.max_degree.saturating_sub(10);
    let a: Vec<AElt> = (0..=max).flat_map(a_basis).collect();
    let mut n = 0;
    for l in 0..=3 {
        for k in l..=3 {
            let normalized = normalize_u(k, l, &AElt::one()).map_err(|e| e.to_string())?;
            let (pk, pl) = (1u32 << (k + 1), 1u32 << (l + 1));
            n += count_all(&a, |a| {
                let mut direct = D1Elt::zero();
                for i in 0..6 {
                    for j in 0..6 {
                        let c = contract_monomial(&xi_pair(i, pk, j, pl), a);
                        if !c.is_zero() {
                            let term = normalize_u(k + i as i32, l + j as i32, &c).map_err(|e| e.to_string())?;
                            direct.add_assign(&term);
                        }
                    }
                }
                ensure(normalized.left_act(a) == direct, || format!("{a} U_{{{k},{l}}}"))
            })?;
        }
    }
    Ok(n)
}

fn d1_bimodule(b: &Bounds) -> CheckResult {
    let max = b.max_degree.saturating_sub(2);
    let mut cases = Vec::new();
    for (da, dx) in degree_pairs(0, max) {
        for dc in 0..=(max - da - dx) {
            for a in sample(a_basis(da), 1) {
                for x in sample(d1_basis(dx), b.samples) {
                    for c in sample(a_basis(dc), 1) {
                        cases.push((a.clone(), x.clone(), c));
                    }
                }
            }
        }
    }
    count_all(&cases, |(a, x, c)| {
        let lhs = boundary(&x.left_act(a).right_act(c));
        let rhs = sigma(a).mul(&boundary(x)).mul(&sigma(c));
        ensure(lhs == rhs, || format!("{a} ({x}) {c}"))
    })
}

fn d1_peiffer(b: &Bounds) -> CheckResult {
    let pairs = sampled_pairs(b.max_degree.saturating_sub(2), b.samples, d1_basis);
    count_all(&pairs, |(x, y)| {
        let lhs = y.left_act_d0(&boundary(x));
        ensure(lhs == x.right_act_d0(&boundary(y)), || format!("{x}, {y}"))
    })
}

// E^_0.

const EHAT_CHECKS: &[Check] = &[
    ("star product associativity", ehat_associativity),
    ("theta_E product rule", ehat_theta_e),
    ("theta^_D derivation", ehat_theta_hat),
    ("E_0 closed under the product", ehat_closure),
    ("Delta_0 multiplicative modulo torsion (x) torsion", ehat_delta_mult),
    ("Delta_0 counital and lifts the coproduct", ehat_delta_counit),
    ("Adem elements are relations of E_0", ehat_adem),
];

fn ehat_elements(d: u64) -> Vec<EHatElt> {
    ehat_basis(d).iter().map(EBasis::to_elt).collect()
}

fn ehat_associativity(b: &Bounds) -> CheckResult {
    let triples = sampled_triples(b.max_degree, b.samples, ehat_elements);
    count_all(&triples, |(x, y, z)| {
        ensure(x.star(y).star(z) == x.star(&y.star(z)), || format!("({x})({y})({z})"))
    })
}

fn ehat_theta_e(b: &Bounds) -> CheckResult {
    let pairs = sampled_pairs(b.max_degree, b.samples, ehat_elements);
    count_all(&pairs, |(x, y)| {
        let (a, c) = (pi(&x.d0), pi(&y.d0));
        let want = theta_e(x)
            .right_act(&c)
            .add(&theta_e(y).left_act(&a))
            .add(&VElt::from_psi(&a).right_act(&kappa(&c)));
        ensure(theta_e(&x.star(y)) == want, || format!("{x}, {y}"))
    })
}

fn ehat_theta_hat(b: &Bounds) -> CheckResult {
    let pairs = sampled_pairs(b.max_degree, b.samples, d0_basis);
    count_all(&pairs, |(x, y)| {
        let want = theta_hat_d(x).right_act(&pi(y)).add(&theta_hat_d(y).left_act(&pi(x)));
        ensure(theta_hat_d(&x.mul(y)) == want, || format!("{x}, {y}"))
    })
}

fn ehat_closure(b: &Bounds) -> CheckResult {
    let pairs = sampled_pairs(b.max_degree, b.samples, e0_basis);
    count_all(&pairs, |(x, y)| {
        ensure(in_e0(x) && in_e0(y) && in_e0(&x.star(y)), || format!("{x}, {y}"))
    })
}

fn ehat_delta_mult(b: &Bounds) -> CheckResult {
    let pairs = sampled_pairs(b.max_degree.saturating_sub(4), b.samples, e0_basis);
    count_all(&pairs, |(x, y)| {
        let lhs = delta0(&x.star(y)).reduced();
        ensure(lhs == delta0(x).star(&delta0(y)).reduced(), || format!("{x}, {y}"))
    })
}

fn ehat_delta_counit(b: &Bounds) -> CheckResult {
    let xs: Vec<EHatElt> = (0..=b.max_degree.saturating_sub(4)).flat_map(ehat_elements).collect();
    count_all(&xs, |x| {
        let t = delta0(x);
        ensure(&t.counit_left() == x && &t.counit_right() == x, || format!("counit at {x}"))?;
        if x.xp.is_zero() && x.d0.y_terms().next().is_none() {
            let a = pi(&x.d0);
            ensure(t.project() == coproduct(&a), || format!("projection at {x}"))?;
        }
        Ok(())
    })
}

fn ehat_adem(b: &Bounds) -> CheckResult {
    let pairs = adem_pairs(b.max_degree.min(10) as u32);
    count_all(&pairs, |&(n, m)| {
        let r = adem_element(n, m).map_err(|e| e.to_string())?;
        ensure(r.is_relation() && in_e0(&r), || format!("[{n},{m}] = {r}"))?;
        ensure(r.degree() == Some((n + m) as u64), || format!("[{n},{m}] degree"))
    })
}

// Diagonal.

const DIAGONAL_CHECKS: &[Check] = &[
    ("linearity defect equals Delta op + op#", diagonal_defect),
    ("left operator equals relation map on Adem elements", diagonal_left_operator),
    ("symmetry operator linearity", diagonal_symmetry),
];

/// Right generators of the relations of `E_0` with indices `<= max_index`.
pub fn relation_generators(max_index: i32) -> Vec<(String, EHatElt)> {
    let e = ExpSeq::empty();
    let mut out = vec![("2".to_string(), EHatElt::from_d0(D0Elt::sq(e.clone(), 2)))];
    for k in 0..=max_index {
        let z = EHatElt::x(-1, k, e.clone())
            .expect("valid indices")
            .add(&EHatElt::from_d0(D0Elt::y(-1, k, e.clone()).expect("valid indices")));
        out.push((format!("Z_{k}"), z));
        for l in 0..=max_index {
            if k < l {
                let y = D0Elt::y(k, l, e.clone()).expect("valid indices");
                out.push((format!("Y_{{{k},{l}}}"), EHatElt::from_d0(y)));
            }
            out.push((format!("X_{{{k},{l}}}"), EHatElt::x(k, l, e.clone()).expect("valid indices")));
            out.push((format!("u0X_{{{k},{l}}}"), EHatElt::mu0x(k, l, e.clone()).expect("valid indices")));
        }
    }
    out
}

fn diagonal_defect(b: &Bounds) -> CheckResult {
    let a: Vec<AElt> = (0..=b.max_degree).flat_map(a_basis).collect();
    let mut cases = Vec::new();
    for (name, r) in relation_generators(2) {
        for x in &a {
            cases.push((name.clone(), r.clone(), x.clone()));
        }
    }
    count_all(&cases, |(name, r, a)| {
        let phi = linearity_defect(a, r).map_err(|e| e.to_string())?;
        let closed = linearity_defect_closed(a, r).map_err(|e| e.to_string())?;
        ensure(phi.mu0.is_zero() && phi.plain == closed, || format!("{a}, {name}"))
    })
}

fn diagonal_left_operator(b: &Bounds) -> CheckResult {
    let pairs = adem_pairs(b.max_degree as u32);
    count_all(&pairs, |&(n, m)| {
        let got = left_operator(&adem_element(n, m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(got == left_relation_map(&adem_tensor(n, m)), || format!("[{n},{m}]"))
    })
}

fn diagonal_symmetry(b: &Bounds) -> CheckResult {
    let top = b.max_degree + 2;
    let mut cases = Vec::new();
    for (n, m) in adem_pairs(6) {
        let r = adem_element(n, m).map_err(|e| e.to_string())?;
        let d = (n + m) as u64;
        for e in 0..=top.saturating_sub(d) {
            for a in a_basis(e) {
                cases.push((r.clone(), a));
            }
        }
    }
    count_all(&cases, |(r, a)| {
        let sa = EHatElt::from_a(a);
        let s_r = symmetry_operator(r).map_err(|e| e.to_string())?;
        let right = symmetry_operator(&r.star(&sa)).map_err(|e| e.to_string())?;
        ensure(right == s_r.right_act(a), || format!("({r}) {a}"))?;
        let left = symmetry_operator(&sa.star(r)).map_err(|e| e.to_string())?;
        let l_r = left_operator(r).map_err(|e| e.to_string())?;
        let want = s_r.left_act(a).add(&l_r.left_act(&kappa(a)).symmetrize());
        ensure(left == want, || format!("{a} ({r})"))
    })
}

// Homogeneity.

const HOMOGENEITY_CHECKS: &[Check] = &[
    ("D_0 product", homogeneous_d0),
    ("D_1 actions, boundary and splitting", homogeneous_d1),
    ("U relations", homogeneous_u),
    ("star product, Delta_0 and nabla", homogeneous_ehat),
    ("dual coproduct", homogeneous_dual),
];

fn same_degree(got: Option<u64>, want: u64) -> bool {
    got.is_none_or(|d| d == want)
}

fn homogeneous_d0(b: &Bounds) -> CheckResult {
    let mut cases = Vec::new();
    for (d1, d2) in degree_pairs(0, b.max_degree) {
        for x in sample(d0_basis(d1), b.samples * 2) {
            for y in sample(d0_basis(d2), b.samples * 2) {
                cases.push((x.clone(), y, d1 + d2));
            }
        }
    }
    count_all(&cases, |(x, y, d)| {
        ensure(same_degree(d0_product(x, y).degree(), *d), || format!("{x} * {y}"))
    })
}

fn homogeneous_d1(b: &Bounds) -> CheckResult {
    let mut cases = Vec::new();
    for (d, da) in degree_pairs(0, b.max_degree) {
        for x in sample(d1_basis(d), b.samples * 2) {
            for a in sample(a_basis(da), b.samples) {
                cases.push((x.clone(), a, d, da));
            }
        }
    }
    count_all(&cases, |(x, a, d, da)| {
        ensure(x.degree() == Some(*d), || format!("degree of {x}"))?;
        ensure(same_degree(boundary(x).degree(), *d), || format!("boundary of {x}"))?;
        ensure(same_degree(x.left_act(a).degree(), d + da), || format!("{a} ({x})"))?;
        ensure(same_degree(x.right_act(a).degree(), d + da), || format!("({x}) {a}"))?;
        let r = boundary(x);
        let rd = RDElt::new(r.clone()).map_err(|e| e.to_string())?;
        ensure(same_degree(u_split(&rd).degree(), *d), || format!("u({r})"))?;
        if *d > 0 {
            let op = mult_map_op_closed(a, &rd);
            ensure(same_degree(op.degree(), d + da - 1), || format!("op({a}, {r})"))?;
        }
        Ok(())
    })
}

fn homogeneous_u(_: &Bounds) -> CheckResult {
    let mut n = 0;
    for k in -1..=4 {
        for l in 0..=4 {
            let u = normalize_u(k, l, &AElt::one()).map_err(|e| e.to_string())?;
            let want = if k < l { y_degree(k, l) } else { y_degree(l, k) };
            ensure(u.degree() == Some(want), || format!("U_{{{k},{l}}} = {u}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn homogeneous_ehat(b: &Bounds) -> CheckResult {
    let pairs = sampled_pairs(b.max_degree, b.samples, ehat_elements);
    let n = count_all(&pairs, |(x, y)| {
        let d = x.degree().unwrap_or(0) + y.degree().unwrap_or(0);
        ensure(same_degree(x.star(y).degree(), d), || format!("{x} * {y}"))
    })?;
    let es: Vec<EHatElt> = (1..=b.max_degree).flat_map(e0_basis).collect();
    let m = count_all(&es, |x| {
        let d = x.degree().unwrap_or(0);
        for ((l, r), _) in delta0(x).terms() {
            let total = l.to_elt().degree().unwrap_or(0) + r.to_elt().degree().unwrap_or(0);
            ensure(total == d, || format!("Delta_0 of {x}"))?;
        }
        if x.is_relation() {
            let t = nabla(x).map_err(|e| e.to_string())?;
            ensure(same_degree(t.plain.degree(), d - 1) && same_degree(t.mu0.degree(), d), || {
                format!("nabla of {x}")
            })?;
        }
        Ok(())
    })?;
    Ok(n + m)
}

fn homogeneous_dual(b: &Bounds) -> CheckResult {
    let monomials: Vec<D0DualMonomial> = (0..=b.max_degree).flat_map(dual_monomials_of_degree).collect();
    count_all(&monomials, |m| {
        let d = m.degree();
        ensure(dual_coproduct(m).keys().all(|(x, y)| x.degree() + y.degree() == d), || format!("{m:?}"))
    })
}

// BP.

const BP_CHECKS: &[Check] = &[
    ("t coproduct mod I^2", bp_t_coproduct),
    ("tau coproduct mod I^2", bp_tau_coproduct),
    ("right unit on v_n and w_n mod I^2", bp_right_unit),
    ("boundary of tau_n in I^3", bp_tau_boundary),
    ("coassociativity", bp_coassociativity),
    ("right unit on mu_n", bp_mu_unit),
    ("differential squares to zero", bp_square_zero),
    ("homology dimensions", bp_homology),
];

const BP_RANGE: u32 = 3;

fn valuation(x: &bp::Poly, p: u64) -> Result<u32, String> {
    Ok(bp::i_adic_valuation(x, p).map_err(|e| e.to_string())?.unwrap_or(u32::MAX))
}

fn odd_prime(p: u64) -> Result<(), String> {
    ensure(p > 2, || format!("needs an odd prime, got {p}"))
}

fn bp_t_coproduct(b: &Bounds) -> CheckResult {
    let p = b.prime;
    for n in 0..=BP_RANGE {
        let exact = bp::t_coproduct(n, p, BP_RANGE).map_err(|e| e.to_string())?;
        let v = valuation(&exact.sub(&bp::t_coproduct_mod_i2(n, p)), p)?;
        ensure(v >= 2, || format!("t_{n}: valuation {v}"))?;
    }
    Ok(BP_RANGE as usize + 1)
}

fn bp_tau_coproduct(b: &Bounds) -> CheckResult {
    let p = b.prime;
    for n in 0..=BP_RANGE {
        let exact = bp::tau_coproduct(n, p, BP_RANGE).map_err(|e| e.to_string())?;
        let v = valuation(&exact.sub(&bp::tau_coproduct_mod_i2(n, p, -1)), p)?;
        ensure(v >= 2, || format!("tau_{n}: valuation {v}"))?;
    }
    Ok(BP_RANGE as usize + 1)
}

fn bp_right_unit(b: &Bounds) -> CheckResult {
    let p = b.prime;
    odd_prime(p)?;
    for n in 0..=BP_RANGE {
        let v = valuation(&bp::to_v_basis(&bp::eta_r_v(n, p), p).sub(&bp::eta_r_v_mod_i2(n, p)), p)?;
        ensure(v >= 2, || format!("v_{n}: valuation {v}"))?;
        let exact = bp::to_v_basis(&bp::eta_r_w(n, p), p);
        let v = valuation(&exact.sub(&bp::eta_r_w_mod_i2(n, p, true)), p)?;
        ensure(v >= 2, || format!("w_{n}: valuation {v}"))?;
    }
    Ok(2 * (BP_RANGE as usize + 1))
}

fn bp_tau_boundary(b: &Bounds) -> CheckResult {
    let p = b.prime;
    if p == 2 {
        for n in 1..=2 {
            let x = bp::p2_failure_witness(n).map_err(|e| e.to_string())?;
            let want = bp::Poly::v(n - 1, 2).pow(2).mul(&bp::Poly::t(1, 1));
            let v = valuation(&bp::t1_linear_part(&x).sub(&want), 2)?;
            ensure(v >= 3, || format!("t_1-linear part of d tau_{n}: valuation {v}"))?;
        }
        return Ok(2);
    }
    for n in 0..=BP_RANGE {
        let v = valuation(&bp::tau_boundary(n, p), p)?;
        ensure(v >= 3, || format!("d tau_{n}: valuation {v}"))?;
    }
    Ok(BP_RANGE as usize + 1)
}

fn bp_coassociativity(b: &Bounds) -> CheckResult {
    let p = b.prime;
    for n in 0..=2 {
        for (name, delta) in [("t", bp::t_coproduct(n, p, 2)), ("tau", bp::tau_coproduct(n, p, 2))] {
            let delta = delta.map_err(|e| e.to_string())?;
            let (l, r) = bp::coassociativity_sides(&delta, n, p, 2).map_err(|e| e.to_string())?;
            ensure(l == r, || format!("{name}_{n}"))?;
        }
    }
    Ok(6)
}

fn bp_mu_unit(b: &Bounds) -> CheckResult {
    let p = b.prime;
    for n in 0..=2 {
        let (l, r) = bp::mu_unit_consistency(n, p, 2).map_err(|e| e.to_string())?;
        ensure(l == r, || format!("mu_{n}"))?;
    }
    Ok(3)
}

fn bp_square_zero(b: &Bounds) -> CheckResult {
    let p = b.prime;
    let mut cases = Vec::new();
    for d in 0..=b.max_degree + 2 {
        for m in bp::monomial_basis(d, p) {
            let mut x = bp::Poly::one();
            for (v, e) in &m {
                x = x.mul(&bp::Poly::var(*v).pow(*e as u64));
            }
            cases.push(bp::Poly::var(bp::Var::Mu(0)).mul(&x));
            cases.push(x);
        }
    }
    count_all(&cases, |x| ensure(bp::differential(&bp::differential(x, p), p).is_zero(), || format!("{x}")))
}

fn bp_homology(b: &Bounds) -> CheckResult {
    let p = b.prime;
    odd_prime(p)?;
    let rows = bp::homology_dimensions(b.max_degree, p).map_err(|e| e.to_string())?;
    for h in &rows {
        ensure(h.free_rank == 0 && h.max_exponent <= 1 && h.dimension == h.expected, || {
            format!("degree {}: dimension {} expected {}", h.degree, h.dimension, h.expected)
        })?;
    }
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn sampling_is_even() {
        assert_eq!(sample((0..10).collect(), 3), vec![0, 3, 6]);
        assert_eq!(sample(vec![1, 2], 3), vec![1, 2]);
    }

    #[test]
    fn small_d0_suite_passes() {
        let bounds = Bounds {
            max_degree: 6,
            ..Bounds::for_suite(Suite::D0)
        };
        let report = run_suite(Suite::D0, &bounds);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checks.len(), D0_CHECKS.len());
    }
}
