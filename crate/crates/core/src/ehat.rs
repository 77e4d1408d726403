//! The extension `E^_0 = D_0 + X' + mu_0 X'` with the `*` product, the
//! subalgebra `E_0`, `E^_1` with its boundary, Adem elements and the
//! coproduct `Delta_0`.
//!
//! `X` is a copy of the free bimodule on `X_{k,l}` (`k, l >= -1`, not both
//! `-1`) with `a X_{k,l} = sum X_{k+i,l+j} cont(xi_i^{2^{k+1}} xi_j^{2^{l+1}}, a)`.
//! `mu_0` commutes with `X` and satisfies `a mu_0 = mu_0 a + kappa(a)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::d0::{d0_product, index_contractions, pi, sigma, y_degree, D0Elt, YKey};
use crate::d1::{boundary, u_split, D1Elt};
use crate::error::{AlgebraError, Result};
use crate::milnor::{
    contract_monomial, kappa, milnor_product, sequences_of_degree, AElt, ExpSeq,
};

/// `X_k cont(xi_{k+1}, a)` for `k >= 0`: the nonzero `(k, coefficient)` pairs.
pub fn psi(a: &AElt) -> Vec<(i32, AElt)> {
    let mut out = Vec::new();
    for k in 0.. {
        let d = (1u64 << (k + 1)) - 1;
        if a.terms().all(|r| r.degree() < d) {
            break;
        }
        let c = contract_monomial(&ExpSeq::delta(k as usize + 1), a);
        if !c.is_zero() {
            out.push((k, c));
        }
    }
    out
}

/// The nonzero `(i, cont(xi_i^{2^{l+1}}, a))`.
fn single_contractions(a: &AElt, l: i32) -> impl Iterator<Item = (i32, AElt)> {
    index_contractions(a, -1, l)
        .into_iter()
        .filter(|(i, _, _)| *i == 0)
        .map(|(_, j, c)| (j as i32, c))
}

fn toggle(set: &mut BTreeSet<YKey>, k: i32, l: i32, r: ExpSeq) {
    let key = YKey { k, l, r };
    if !set.remove(&key) {
        set.insert(key);
    }
}

fn toggle_all(set: &mut BTreeSet<YKey>, k: i32, l: i32, a: &AElt) {
    for r in a.terms() {
        toggle(set, k, l, r.clone());
    }
}

/// `a X_{k,l} c` in the free bimodule `X`.
fn x_left(a: &AElt, key: &YKey, out: &mut BTreeSet<YKey>) {
    let tail = AElt::basis(key.r.clone());
    for (i, j, c) in index_contractions(a, key.k, key.l) {
        toggle_all(out, key.k + i as i32, key.l + j as i32, &milnor_product(&c, &tail));
    }
}

fn x_right(set: &BTreeSet<YKey>, a: &AElt) -> BTreeSet<YKey> {
    let mut out = BTreeSet::new();
    for key in set {
        toggle_all(&mut out, key.k, key.l, &milnor_product(&AElt::basis(key.r.clone()), a));
    }
    out
}

/// The `X + mu_0 X` component shared by `E^_0` and `E^_1`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Debug)]
pub struct XPart {
    pub x: BTreeSet<YKey>,
    pub mu0x: BTreeSet<YKey>,
}

impl XPart {
    pub fn is_zero(&self) -> bool {
        self.x.is_empty() && self.mu0x.is_empty()
    }

    pub fn add_assign(&mut self, other: &XPart) {
        for key in &other.x {
            toggle(&mut self.x, key.k, key.l, key.r.clone());
        }
        for key in &other.mu0x {
            toggle(&mut self.mu0x, key.k, key.l, key.r.clone());
        }
    }

    /// `a * self`, with `a mu_0 X = mu_0 a X + kappa(a) X`.
    pub fn left_act(&self, a: &AElt) -> XPart {
        let mut out = XPart::default();
        for key in &self.x {
            x_left(a, key, &mut out.x);
        }
        let ka = kappa(a);
        for key in &self.mu0x {
            x_left(a, key, &mut out.mu0x);
            x_left(&ka, key, &mut out.x);
        }
        out
    }

    pub fn right_act(&self, a: &AElt) -> XPart {
        XPart {
            x: x_right(&self.x, a),
            mu0x: x_right(&self.mu0x, a),
        }
    }

    fn degrees(&self) -> impl Iterator<Item = u64> + '_ {
        self.x
            .iter()
            .map(YKey::degree)
            .chain(self.mu0x.iter().map(|k| k.degree() - 1))
    }
}

/// An element of `E^_0`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct EHatElt {
    pub d0: D0Elt,
    pub xp: XPart,
}

impl EHatElt {
    pub fn zero() -> Self {
        EHatElt::default()
    }

    pub fn from_d0(d: D0Elt) -> Self {
        EHatElt {
            d0: d,
            xp: XPart::default(),
        }
    }

    pub fn from_a(a: &AElt) -> Self {
        EHatElt::from_d0(sigma(a))
    }

    /// `X_{k,l} Sq(R)` for `k, l >= -1`, not both `-1`.
    pub fn x(k: i32, l: i32, r: ExpSeq) -> Result<Self> {
        if k < -1 || l < -1 || (k == -1 && l == -1) {
            return Err(AlgebraError::InvalidIndex(format!("X_{{{k},{l}}}")));
        }
        let mut e = EHatElt::zero();
        toggle(&mut e.xp.x, k, l, r);
        Ok(e)
    }

    /// `mu_0 X_{k,l} Sq(R)` for `k, l >= 0`.
    pub fn mu0x(k: i32, l: i32, r: ExpSeq) -> Result<Self> {
        if k < 0 || l < 0 {
            return Err(AlgebraError::InvalidIndex(format!("mu0 X_{{{k},{l}}}")));
        }
        let mut e = EHatElt::zero();
        toggle(&mut e.xp.mu0x, k, l, r);
        Ok(e)
    }

    pub fn x_terms(&self) -> impl Iterator<Item = &YKey> {
        self.xp.x.iter()
    }

    pub fn mu0x_terms(&self) -> impl Iterator<Item = &YKey> {
        self.xp.mu0x.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.d0.is_zero() && self.xp.is_zero()
    }

    pub fn add(&self, other: &EHatElt) -> EHatElt {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &EHatElt) {
        self.d0.add_assign(&other.d0);
        self.xp.add_assign(&other.xp);
    }

    pub fn neg(&self) -> EHatElt {
        EHatElt {
            d0: self.d0.neg(),
            xp: self.xp.clone(),
        }
    }

    pub fn sub(&self, other: &EHatElt) -> EHatElt {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u8) -> EHatElt {
        EHatElt {
            d0: self.d0.scale(c),
            xp: if c % 2 == 1 {
                self.xp.clone()
            } else {
                XPart::default()
            },
        }
    }

    pub fn star(&self, other: &EHatElt) -> EHatElt {
        star_product(self, other)
    }

    /// The common degree of all terms, if any.
    pub fn degree(&self) -> Option<u64> {
        let mut it = self
            .d0
            .sq_terms()
            .map(|(r, _)| r.degree())
            .chain(self.d0.y_terms().map(YKey::degree))
            .chain(self.xp.degrees());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `true` if the image in `A` vanishes.
    pub fn is_relation(&self) -> bool {
        self.d0.is_relation()
    }
}

impl fmt::Debug for EHatElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EHatElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.d0.is_zero() {
            parts.push(self.d0.to_string());
        }
        for key in &self.xp.x {
            parts.push(format!("X_{{{},{}}}{}", key.k, key.l, key.r));
        }
        for key in &self.xp.mu0x {
            parts.push(format!("mu0 X_{{{},{}}}{}", key.k, key.l, key.r));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `psi(a) psi(b) mu_0 + X_{-1} psi(a) kappa(b)` as an element of `X + mu_0 X`.
fn star_correction(a: &AElt, b: &AElt) -> XPart {
    let mut out = XPart::default();
    let pa = psi(a);
    let pb = psi(b);
    // psi(a) psi(b) = sum X_k a_k X_l b_l, with a_k X_l = sum_i X_{l+i} cont(xi_i^{2^{l+1}}, a_k)
    let mut pp = BTreeSet::new();
    for (k, ak) in &pa {
        for (l, bl) in &pb {
            for (i, c) in single_contractions(ak, *l) {
                toggle_all(&mut pp, *k, l + i, &milnor_product(&c, bl));
            }
        }
    }
    // X c mu_0 = mu_0 X c + X kappa(c)
    for key in &pp {
        toggle(&mut out.mu0x, key.k, key.l, key.r.clone());
        toggle_all(&mut out.x, key.k, key.l, &kappa(&AElt::basis(key.r.clone())));
    }
    let kb = kappa(b);
    for (k, ak) in &pa {
        toggle_all(&mut out.x, -1, *k, &milnor_product(ak, &kb));
    }
    out
}

/// The product on `E^_0`:
/// `a * b = ab + psi(a) psi(b) mu_0 + X_{-1} psi(a) kappa(b)` on `D_0`,
/// `d * m = pi(d) m`, `m * d = m pi(d)`, `m m' = 0`.
pub fn star_product(x: &EHatElt, y: &EHatElt) -> EHatElt {
    let (a, b) = (pi(&x.d0), pi(&y.d0));
    let mut xp = star_correction(&a, &b);
    xp.add_assign(&y.xp.left_act(&a));
    xp.add_assign(&x.xp.right_act(&b));
    EHatElt {
        d0: d0_product(&x.d0, &y.d0),
        xp,
    }
}

/// The projection `E^_0 -> D_0`.
pub fn rho(x: &EHatElt) -> D0Elt {
    x.d0.clone()
}

/// An element of the bimodule `V` on generators `V_k`, `k >= -1`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Debug)]
pub struct VElt {
    terms: BTreeSet<(i32, ExpSeq)>,
}

impl VElt {
    pub fn zero() -> Self {
        VElt::default()
    }

    pub fn basis(k: i32, r: ExpSeq) -> Self {
        let mut v = VElt::zero();
        v.toggle(k, r);
        v
    }

    fn toggle(&mut self, k: i32, r: ExpSeq) {
        let key = (k, r);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    fn toggle_all(&mut self, k: i32, a: &AElt) {
        for r in a.terms() {
            self.toggle(k, r.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &(i32, ExpSeq)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &VElt) -> VElt {
        VElt {
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        }
    }

    /// `a V_k c = sum_i V_{k+i} cont(xi_i^{2^{k+1}}, a) c`.
    pub fn left_act(&self, a: &AElt) -> VElt {
        let mut out = VElt::zero();
        for (k, r) in &self.terms {
            for (i, c) in single_contractions(a, *k) {
                out.toggle_all(k + i, &milnor_product(&c, &AElt::basis(r.clone())));
            }
        }
        out
    }

    pub fn right_act(&self, a: &AElt) -> VElt {
        let mut out = VElt::zero();
        for (k, r) in &self.terms {
            out.toggle_all(*k, &milnor_product(&AElt::basis(r.clone()), a));
        }
        out
    }

    /// `psi(a)` with `X_k` read as `V_k`.
    pub fn from_psi(a: &AElt) -> VElt {
        let mut out = VElt::zero();
        for (k, c) in psi(a) {
            out.toggle_all(k, &c);
        }
        out
    }
}

impl fmt::Display for VElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, r)| format!("V_{k}{}", AElt::basis(r.clone())))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `v + w mu_0` in `V + mu_0 V`, written with a trailing `mu_0`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct VMuElt {
    pub plain: VElt,
    pub trailing: VElt,
}

impl VMuElt {
    pub fn add(&self, other: &VMuElt) -> VMuElt {
        VMuElt {
            plain: self.plain.add(&other.plain),
            trailing: self.trailing.add(&other.trailing),
        }
    }

    pub fn left_act(&self, a: &AElt) -> VMuElt {
        VMuElt {
            plain: self.plain.left_act(a),
            trailing: self.trailing.left_act(a),
        }
    }

    /// `(v + w mu_0) e = v e + w kappa(e) + w e mu_0`.
    pub fn right_act(&self, e: &AElt) -> VMuElt {
        VMuElt {
            plain: self.plain.right_act(e).add(&self.trailing.right_act(&kappa(e))),
            trailing: self.trailing.right_act(e),
        }
    }
}

/// Extracts the `Y_{-1,n} a` terms as `V_n a`.
pub fn theta_d(d: &D0Elt) -> VElt {
    let mut out = VElt::zero();
    for key in d.y_terms().filter(|key| key.k == -1) {
        out.toggle(key.l, key.r.clone());
    }
    out
}

/// Extracts the `X_{-1,k} a` terms as `V_k a`.
pub fn theta_e(x: &EHatElt) -> VElt {
    let mut out = VElt::zero();
    for key in x.xp.x.iter().filter(|key| key.k == -1) {
        out.toggle(key.l, key.r.clone());
    }
    out
}

/// `theta_D(d) + psi(d) mu_0`.
pub fn theta_hat_d(d: &D0Elt) -> VMuElt {
    VMuElt {
        plain: theta_d(d),
        trailing: VElt::from_psi(&pi(d)),
    }
}

/// Membership in `E_0`: no `X_{k,-1}` terms and `theta_D(rho(x)) = theta_E(x)`.
pub fn in_e0(x: &EHatElt) -> bool {
    x.xp.x.iter().all(|key| key.l >= 0)
        && x.xp.mu0x.iter().all(|key| key.k >= 0 && key.l >= 0)
        && theta_d(&x.d0) == theta_e(x)
}

fn binomial_mod2(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && (k & !n) == 0
}

/// The Adem element `[n, m]` for `0 < n < 2m`:
/// `Sq^n * Sq^m + sum_{1 <= k <= n/2} C(m-k-1, n-2k) Sq^{m+n-k} * Sq^k + C(m-1, n) Sq^{m+n}`,
/// with binomials reduced mod 2 and lifted to `1`.
pub fn adem_element(n: u32, m: u32) -> Result<EHatElt> {
    if n == 0 || n >= 2 * m {
        return Err(AlgebraError::InvalidIndex(format!(
            "Adem element [{n},{m}] needs 0 < n < 2m"
        )));
    }
    let sq = |i: u32| EHatElt::from_a(&AElt::sqn(i));
    let mut out = sq(n).star(&sq(m));
    for k in 1..=n / 2 {
        if binomial_mod2(m as i64 - k as i64 - 1, n as i64 - 2 * k as i64) {
            out.add_assign(&sq(m + n - k).star(&sq(k)));
        }
    }
    if binomial_mod2(m as i64 - 1, n as i64) {
        out.add_assign(&sq(m + n));
    }
    Ok(out)
}

/// The Adem relation `<n, m>` as an element of `F^1 (x) F^1`
/// (the single-square term `Sq^{m+n}` is not included).
pub fn adem_tensor(n: u32, m: u32) -> Vec<(u32, u32)> {
    let mut out = vec![(n, m)];
    for k in 1..=n / 2 {
        if binomial_mod2(m as i64 - k as i64 - 1, n as i64 - 2 * k as i64) {
            out.push((m + n - k, k));
        }
    }
    out
}

/// All Adem pairs `(n, m)` with `0 < n < 2m` and `n + m <= bound`, ordered
/// by `n + m`, then by `m`.
pub fn adem_pairs(bound: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for total in 2..=bound {
        for m in 1..total {
            let n = total - m;
            if n < 2 * m {
                out.push((n, m));
            }
        }
    }
    out
}

/// An element of `E^_1 = D_1 + X' + mu_0 X'`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct E1HatElt {
    pub d1: D1Elt,
    pub xp: XPart,
}

impl E1HatElt {
    pub fn add(&self, other: &E1HatElt) -> E1HatElt {
        let mut xp = self.xp.clone();
        xp.add_assign(&other.xp);
        E1HatElt {
            d1: self.d1.add(&other.d1),
            xp,
        }
    }

    pub fn left_act(&self, a: &AElt) -> E1HatElt {
        E1HatElt {
            d1: self.d1.left_act(a),
            xp: self.xp.left_act(a),
        }
    }

    pub fn right_act(&self, a: &AElt) -> E1HatElt {
        E1HatElt {
            d1: self.d1.right_act(a),
            xp: self.xp.right_act(a),
        }
    }
}

/// `d(e) = d(e_D) + e_X`.
pub fn boundary_hat(e: &E1HatElt) -> EHatElt {
    EHatElt {
        d0: boundary(&e.d1),
        xp: e.xp.clone(),
    }
}

/// The projection `E^_1 -> D_1`.
pub fn rho1(e: &E1HatElt) -> D1Elt {
    e.d1.clone()
}

/// `u_E = u_D + id` on `R_E = R_D + X + mu_0 X`.
pub fn u_e(r: &EHatElt) -> Result<E1HatElt> {
    let rd = crate::d0::RDElt::new(r.d0.clone())?;
    Ok(E1HatElt {
        d1: u_split(&rd),
        xp: r.xp.clone(),
    })
}

/// A basis element of `E^_0` over `Z/4`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum EBasis {
    Sq(ExpSeq),
    Y(YKey),
    X(YKey),
    Mu0X(YKey),
}

impl EBasis {
    /// The trailing `Sq(R)`.
    pub fn tail(&self) -> &ExpSeq {
        match self {
            EBasis::Sq(r) => r,
            EBasis::Y(key) | EBasis::X(key) | EBasis::Mu0X(key) => &key.r,
        }
    }

    /// The same generator with the trailing `Sq(R)` replaced.
    pub fn with_tail(&self, r: ExpSeq) -> EBasis {
        match self {
            EBasis::Sq(_) => EBasis::Sq(r),
            EBasis::Y(key) => EBasis::Y(YKey { r, ..key.clone() }),
            EBasis::X(key) => EBasis::X(YKey { r, ..key.clone() }),
            EBasis::Mu0X(key) => EBasis::Mu0X(YKey { r, ..key.clone() }),
        }
    }

    fn is_two_torsion(&self) -> bool {
        !matches!(self, EBasis::Sq(_))
    }

    pub fn to_elt(&self) -> EHatElt {
        let mut e = EHatElt::zero();
        match self {
            EBasis::Sq(r) => e.d0.add_sq(r.clone(), 1),
            EBasis::Y(key) => e.d0.add_y(key.k, key.l, key.r.clone()),
            EBasis::X(key) => toggle(&mut e.xp.x, key.k, key.l, key.r.clone()),
            EBasis::Mu0X(key) => toggle(&mut e.xp.mu0x, key.k, key.l, key.r.clone()),
        }
        e
    }

    /// Counit: `1` on `Sq(0)`, zero elsewhere.
    pub fn counit(&self) -> u8 {
        match self {
            EBasis::Sq(r) if r.is_empty() => 1,
            _ => 0,
        }
    }
}

/// `(basis, coefficient)` expansion of an element.
pub fn basis_terms(x: &EHatElt) -> Vec<(EBasis, u8)> {
    let mut out: Vec<(EBasis, u8)> = x
        .d0
        .sq_terms()
        .map(|(r, c)| (EBasis::Sq(r.clone()), c))
        .collect();
    out.extend(x.d0.y_terms().map(|k| (EBasis::Y(k.clone()), 1)));
    out.extend(x.xp.x.iter().map(|k| (EBasis::X(k.clone()), 1)));
    out.extend(x.xp.mu0x.iter().map(|k| (EBasis::Mu0X(k.clone()), 1)));
    out
}

/// An element of `E^_0 (x) E^_0`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct ETensor {
    terms: BTreeMap<(EBasis, EBasis), u8>,
}

impl ETensor {
    pub fn add_term(&mut self, a: EBasis, b: EBasis, c: u8) {
        let modulus = if a.is_two_torsion() || b.is_two_torsion() { 2 } else { 4 };
        let key = (a, b);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = (*e + c % modulus) % modulus;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(EBasis, EBasis), &u8)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tensor(x: &EHatElt, y: &EHatElt) -> ETensor {
        let mut out = ETensor::default();
        for (a, c) in basis_terms(x) {
            for (b, d) in basis_terms(y) {
                out.add_term(a.clone(), b, c * d % 4);
            }
        }
        out
    }

    pub fn add(&self, other: &ETensor) -> ETensor {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), *c);
        }
        out
    }

    /// Componentwise `*` product.
    pub fn star(&self, other: &ETensor) -> ETensor {
        let mut out = ETensor::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let left = a1.to_elt().star(&a2.to_elt());
                let right = b1.to_elt().star(&b2.to_elt());
                let mut t = ETensor::tensor(&left, &right);
                let c = c1 * c2 % 4;
                if c != 1 {
                    t = t.scaled(c);
                }
                out = out.add(&t);
            }
        }
        out
    }

    fn scaled(&self, c: u8) -> ETensor {
        let mut out = ETensor::default();
        for ((a, b), d) in &self.terms {
            out.add_term(a.clone(), b.clone(), d * c % 4);
        }
        out
    }

    /// Drops the terms with two 2-torsion factors; these pair to zero with
    /// the dual, where `2 xi (x) 2 xi' = 0`.
    pub fn reduced(&self) -> ETensor {
        ETensor {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| !(a.is_two_torsion() && b.is_two_torsion()))
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }

    /// `(counit (x) id)`.
    pub fn counit_left(&self) -> EHatElt {
        let mut out = EHatElt::zero();
        for ((a, b), c) in &self.terms {
            let e = a.counit();
            if e != 0 {
                out.add_assign(&b.to_elt().scale(e * c % 4));
            }
        }
        out
    }

    /// `(id (x) counit)`.
    pub fn counit_right(&self) -> EHatElt {
        let mut out = EHatElt::zero();
        for ((a, b), c) in &self.terms {
            let e = b.counit();
            if e != 0 {
                out.add_assign(&a.to_elt().scale(e * c % 4));
            }
        }
        out
    }

    /// `(pi (x) pi)` into `A (x) A`.
    pub fn project(&self) -> crate::milnor::TensorAA {
        let mut out = crate::milnor::TensorAA::zero();
        for ((a, b), c) in &self.terms {
            if let (EBasis::Sq(r), EBasis::Sq(s)) = (a, b) {
                if c % 2 == 1 {
                    out.add_basis(r.clone(), s.clone());
                }
            }
        }
        out
    }
}

/// The multiplicative coproduct with `Delta_0 Sq(R) = sum Sq(E) (x) Sq(F)` and
/// `Delta_0 Z = Z (x) 1 + 1 (x) Z` for `Z` in `{Y_{k,l}, X_{k,l}, mu_0 X_{k,l}}`.
pub fn delta0(x: &EHatElt) -> ETensor {
    let mut out = ETensor::default();
    for (b, c) in basis_terms(x) {
        let r = b.tail().clone();
        for e in r.sub_sequences() {
            let f = r.checked_sub(&e).expect("sub-sequence");
            match &b {
                EBasis::Sq(_) => out.add_term(EBasis::Sq(e), EBasis::Sq(f), c),
                _ => {
                    out.add_term(b.with_tail(e.clone()), EBasis::Sq(f.clone()), c);
                    out.add_term(EBasis::Sq(e), b.with_tail(f), c);
                }
            }
        }
    }
    out
}

/// Basis of `E^_0` in degree `d` (for property tests and rank counts).
pub fn ehat_basis_of_degree(d: u64, max_index: i32) -> Vec<EBasis> {
    let mut out: Vec<EBasis> = sequences_of_degree(d).iter().cloned().map(EBasis::Sq).collect();
    for k in -1..=max_index {
        for l in -1..=max_index {
            let base = y_degree(k, l);
            if k < l && base <= d {
                for r in sequences_of_degree(d - base).iter() {
                    out.push(EBasis::Y(YKey { k, l, r: r.clone() }));
                }
            }
            if !(k == -1 && l == -1) && base <= d {
                for r in sequences_of_degree(d - base).iter() {
                    out.push(EBasis::X(YKey { k, l, r: r.clone() }));
                }
            }
            if k >= 0 && l >= 0 && base <= d + 1 {
                for r in sequences_of_degree(d + 1 - base).iter() {
                    out.push(EBasis::Mu0X(YKey { k, l, r: r.clone() }));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: &[u32]) -> ExpSeq {
        ExpSeq::from(r)
    }

    fn sq(r: &[u32]) -> EHatElt {
        EHatElt::from_a(&AElt::sq(r))
    }

    fn x(k: i32, l: i32, r: &[u32]) -> EHatElt {
        EHatElt::x(k, l, s(r)).unwrap()
    }

    fn mx(k: i32, l: i32, r: &[u32]) -> EHatElt {
        EHatElt::mu0x(k, l, s(r)).unwrap()
    }

    fn y(k: i32, l: i32, r: &[u32]) -> EHatElt {
        EHatElt::from_d0(D0Elt::y(k, l, s(r)).unwrap())
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&AElt::sq(&[1])), vec![(0, AElt::one())]);
        assert_eq!(psi(&AElt::sq(&[2])), vec![(0, AElt::sq(&[1]))]);
        assert_eq!(psi(&AElt::sq(&[0, 1])), vec![(1, AElt::one())]);
    }

    #[test]
    fn star_row_1_1() {
        let want = EHatElt::from_d0(D0Elt::sq(s(&[2]), 2))
            .add(&y(-1, 0, &[]))
            .add(&x(-1, 0, &[]))
            .add(&mx(0, 0, &[]));
        assert_eq!(sq(&[1]).star(&sq(&[1])), want);
    }

    #[test]
    fn star_row_2_2() {
        let got = sq(&[2]).star(&sq(&[2])).add(&sq(&[3]).star(&sq(&[1])));
        let want = EHatElt::from_d0(D0Elt::sq(s(&[1, 1]), 2).add(&D0Elt::sq(s(&[4]), 2)))
            .add(&y(-1, 0, &[2]))
            .add(&x(-1, 0, &[2]))
            .add(&x(0, 0, &[1]))
            .add(&mx(0, 0, &[2]))
            .add(&mx(0, 1, &[]));
        assert_eq!(got, want);
    }

    #[test]
    fn module_action_on_x() {
        assert_eq!(x(0, 0, &[]).star(&sq(&[1])), x(0, 0, &[1]));
    }

    #[test]
    fn adem_examples() {
        let want = y(-1, 0, &[1]).add(&x(-1, 0, &[1])).add(&mx(0, 0, &[1])).add(&x(0, 0, &[]));
        assert_eq!(adem_element(1, 2).unwrap(), want);
        let want = EHatElt::from_d0(D0Elt::sq(s(&[2, 1]), 2))
            .add(&x(0, 1, &[]))
            .add(&mx(0, 1, &[1]));
        assert_eq!(adem_element(2, 3).unwrap(), want);
        assert!(adem_element(4, 2).is_err());
        assert!(adem_element(0, 2).is_err());
    }

    #[test]
    fn theta_examples() {
        let v = theta_d(&D0Elt::y(-1, 0, s(&[1])).unwrap());
        assert_eq!(v, VElt::basis(0, s(&[1])));
        assert_eq!(theta_e(&x(-1, 0, &[])), VElt::basis(0, s(&[])));
        assert!(theta_e(&mx(0, 0, &[])).is_zero());
        assert!(theta_d(&D0Elt::sq(s(&[3]), 1)).is_zero());
    }

    #[test]
    fn e0_membership() {
        assert!(in_e0(&adem_element(1, 1).unwrap()));
        assert!(!in_e0(&x(-1, 0, &[])));
        assert!(in_e0(&sq(&[2, 1])));
        assert!(!in_e0(&x(0, -1, &[])));
    }

    #[test]
    fn coproduct_examples() {
        let d = delta0(&sq(&[2]));
        let mut want = ETensor::default();
        want.add_term(EBasis::Sq(s(&[2])), EBasis::Sq(s(&[])), 1);
        want.add_term(EBasis::Sq(s(&[1])), EBasis::Sq(s(&[1])), 1);
        want.add_term(EBasis::Sq(s(&[])), EBasis::Sq(s(&[2])), 1);
        assert_eq!(d, want);
        let key = YKey { k: 0, l: 1, r: s(&[]) };
        let mut want = ETensor::default();
        want.add_term(EBasis::Y(key.clone()), EBasis::Sq(s(&[])), 1);
        want.add_term(EBasis::Sq(s(&[])), EBasis::Y(key), 1);
        assert_eq!(delta0(&y(0, 1, &[])), want);
        let a = sq(&[1]);
        assert_eq!(delta0(&a.star(&a)), delta0(&a).star(&delta0(&a)));
        let r = adem_element(1, 1).unwrap();
        let xr = x(0, 0, &[]).star(&r);
        assert!(xr.is_zero());
        let prod = delta0(&x(0, 0, &[])).star(&delta0(&r));
        assert!(!prod.is_zero());
        assert!(prod.reduced().is_zero());
    }

    #[test]
    fn e1_boundary_and_splitting() {
        let e = E1HatElt {
            d1: D1Elt::u(-1, 0, s(&[])).unwrap(),
            xp: x(0, 0, &[]).xp,
        };
        assert_eq!(boundary_hat(&e), y(-1, 0, &[]).add(&x(0, 0, &[])));
        let two = EHatElt::from_d0(D0Elt::sq(s(&[3]), 2));
        assert_eq!(u_e(&two).unwrap().d1, D1Elt::mu0(&AElt::sq(&[3])));
        assert_eq!(u_e(&x(0, 1, &[])).unwrap().xp, x(0, 1, &[]).xp);
        assert!(u_e(&sq(&[1])).is_err());
    }
}
