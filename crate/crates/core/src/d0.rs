//! The `Z/4` algebra `D_0`, its dual, the projection to `A` and the section.
//!
//! An element is a `Z/4` combination of `Sq(R)` plus an `F_2` combination of
//! `Y_{k,l} Sq(R)` with `-1 <= k < l`. The dual `D_0^*` is spanned by the
//! monomials `xi^R` and `2 xi_{k,l} xi^R`; `Y_{k,l}(R)` pairs to `2` with
//! `2 xi_{k+1,l+1} xi^R`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{AlgebraError, Result};
use crate::milnor::{
    contract_monomial, for_each_milnor_matrix, milnor_product, sequences_of_degree, xi_degree,
    AElt, ExpSeq,
};

/// Degree of `Y_{k,l}`, defined for `k, l >= -1`.
pub fn y_degree(k: i32, l: i32) -> u64 {
    (1u64 << (k + 1)) + (1u64 << (l + 1)) - 1
}

/// A basis key `Y_{k,l} Sq(R)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct YKey {
    pub k: i32,
    pub l: i32,
    pub r: ExpSeq,
}

impl YKey {
    pub fn degree(&self) -> u64 {
        y_degree(self.k, self.l) + self.r.degree()
    }
}

impl PartialOrd for YKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for YKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (self.k, self.l).cmp(&(other.k, other.l)))
            .then_with(|| self.r.cmp(&other.r))
    }
}

/// An element of `D_0`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct D0Elt {
    sq: BTreeMap<ExpSeq, u8>,
    y: BTreeSet<YKey>,
}

impl D0Elt {
    pub fn zero() -> Self {
        D0Elt::default()
    }

    pub fn one() -> Self {
        D0Elt::sq(ExpSeq::empty(), 1)
    }

    /// `c Sq(R)` with `c` read mod 4.
    pub fn sq(r: ExpSeq, c: u8) -> Self {
        let mut x = D0Elt::zero();
        x.add_sq(r, c);
        x
    }

    /// `Y_{k,l} Sq(R)`, normalized (so `Y_{l,k} = Y_{k,l}` and
    /// `Y_{k,k} = 2 Sq(Delta_{k+2})`).
    pub fn y(k: i32, l: i32, r: ExpSeq) -> Result<Self> {
        if k < -1 || l < -1 {
            return Err(AlgebraError::InvalidIndex(format!("Y_{{{k},{l}}}")));
        }
        Ok(y_normalized(k, l, &AElt::basis(r)))
    }

    pub fn add_sq(&mut self, r: ExpSeq, c: u8) {
        let e = self.sq.entry(r.clone()).or_insert(0);
        *e = (*e + c) % 4;
        if *e == 0 {
            self.sq.remove(&r);
        }
    }

    /// Adds `Y_{k,l} Sq(R)` for an already normalized index pair `k < l`.
    pub fn add_y(&mut self, k: i32, l: i32, r: ExpSeq) {
        debug_assert!(-1 <= k && k < l);
        let key = YKey { k, l, r };
        if !self.y.remove(&key) {
            self.y.insert(key);
        }
    }

    pub fn sq_terms(&self) -> impl Iterator<Item = (&ExpSeq, u8)> {
        self.sq.iter().map(|(r, &c)| (r, c))
    }

    pub fn y_terms(&self) -> impl Iterator<Item = &YKey> {
        self.y.iter()
    }

    pub fn sq_coefficient(&self, r: &ExpSeq) -> u8 {
        self.sq.get(r).copied().unwrap_or(0)
    }

    pub fn has_y(&self, k: i32, l: i32, r: &ExpSeq) -> bool {
        self.y.contains(&YKey { k, l, r: r.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.sq.is_empty() && self.y.is_empty()
    }

    pub fn add(&self, other: &D0Elt) -> D0Elt {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &D0Elt) {
        for (r, &c) in &other.sq {
            self.add_sq(r.clone(), c);
        }
        for key in &other.y {
            self.add_y(key.k, key.l, key.r.clone());
        }
    }

    pub fn neg(&self) -> D0Elt {
        self.scale(3)
    }

    pub fn sub(&self, other: &D0Elt) -> D0Elt {
        self.add(&other.neg())
    }

    /// Multiplication by an integer, read mod 4.
    pub fn scale(&self, c: u8) -> D0Elt {
        let c = c % 4;
        let mut out = D0Elt::zero();
        for (r, &a) in &self.sq {
            out.add_sq(r.clone(), (a * c) % 4);
        }
        if c % 2 == 1 {
            out.y = self.y.clone();
        }
        out
    }

    pub fn mul(&self, other: &D0Elt) -> D0Elt {
        d0_product(self, other)
    }

    /// The common degree of all terms, if any.
    pub fn degree(&self) -> Option<u64> {
        let mut it = self
            .sq
            .keys()
            .map(ExpSeq::degree)
            .chain(self.y.iter().map(YKey::degree));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `true` if `pi(self) = 0`.
    pub fn is_relation(&self) -> bool {
        self.sq.values().all(|c| c % 2 == 0)
    }
}

impl fmt::Debug for D0Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for D0Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in &self.sq {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "{r}")?;
        }
        for key in &self.y {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "Y_{{{},{}}}", key.k, key.l)?;
            if !key.r.is_empty() {
                write!(f, "{}", key.r)?;
            }
        }
        Ok(())
    }
}

/// `Y_{k,l} a` in normal form, for any `k, l >= -1`.
pub fn y_normalized(k: i32, l: i32, a: &AElt) -> D0Elt {
    let mut out = D0Elt::zero();
    if k == l {
        let d = milnor_product(&AElt::basis(ExpSeq::delta((k + 2) as usize)), a);
        for r in d.terms() {
            out.add_sq(r.clone(), 2);
        }
    } else {
        let (k, l) = (k.min(l), k.max(l));
        for r in a.terms() {
            out.add_y(k, l, r.clone());
        }
    }
    out
}

/// The projection `pi: D_0 -> A`.
pub fn pi(x: &D0Elt) -> AElt {
    AElt::from_terms(x.sq.iter().filter(|(_, &c)| c % 2 == 1).map(|(r, _)| r.clone()))
}

/// The section `sigma: A -> D_0` lifting each coefficient `1` to `1`.
pub fn sigma(a: &AElt) -> D0Elt {
    let mut out = D0Elt::zero();
    for r in a.terms() {
        out.add_sq(r.clone(), 1);
    }
    out
}

/// An element of the relation module `ker pi`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RDElt(D0Elt);

impl RDElt {
    pub fn new(x: D0Elt) -> Result<Self> {
        if x.is_relation() {
            Ok(RDElt(x))
        } else {
            Err(AlgebraError::NotARelation(format!("pi({x}) = {}", pi(&x))))
        }
    }

    pub fn as_d0(&self) -> &D0Elt {
        &self.0
    }

    pub fn into_d0(self) -> D0Elt {
        self.0
    }
}

impl TryFrom<D0Elt> for RDElt {
    type Error = AlgebraError;
    fn try_from(x: D0Elt) -> Result<Self> {
        RDElt::new(x)
    }
}

// Fast product.
//
// The coefficients are read off the dual coproduct directly:
//   Sq(R)Sq(S): Sq(T) coefficient is the mod 4 Milnor matrix count;
//     Y_{a-1,b-1}(T) comes from the `2 xi.. (x) xi_{k+1}` term of the
//     coproduct of `2 xi_{a,b}`.
//   Y(R) Sq(S) = Y (Sq(R)Sq(S)).
//   Sq(R) Y_{K-1,L-1}(S): Sq(T) comes from one `xi_n` contributing its
//     `2 xi.. (x) xi_{K,L}` term; Y terms from the last sum in the coproduct
//     of `2 xi_{a,b}`.

type ProductCache = RwLock<HashMap<(ExpSeq, ExpSeq), Arc<D0Elt>>>;

fn sq_sq_mod4(r: &ExpSeq, s: &ExpSeq) -> Arc<D0Elt> {
    static CACHE: LazyLock<ProductCache> =
        LazyLock::new(Default::default);
    let key = (r.clone(), s.clone());
    if let Some(v) = CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let mut out = D0Elt::zero();
    for_each_milnor_matrix(r, s, |m| {
        let w = m.weight_mod4();
        if w != 0 {
            out.add_sq(m.target(), w);
        }
    });
    for k in 0..s.len() {
        let Some(s2) = s.checked_sub(&ExpSeq::delta(k + 1)) else {
            continue;
        };
        let p = 1u32 << k;
        for beta in 1..=r.len() {
            for alpha in 0..beta {
                let sub = ExpSeq::delta(alpha).scale(p).add(&ExpSeq::delta(beta).scale(p));
                let Some(r2) = r.checked_sub(&sub) else {
                    continue;
                };
                let (a, b) = ((k + alpha) as i32, (k + beta) as i32);
                for t in milnor_product(&AElt::basis(r2), &AElt::basis(s2.clone())).terms() {
                    out.add_y(a - 1, b - 1, t.clone());
                }
            }
        }
    }
    let v = Arc::new(out);
    CACHE.write().unwrap().insert(key, v.clone());
    v
}

/// `xi_i^{p} xi_j^{q}` as an exponent sequence (`xi_0 = 1`).
fn xi_pair(i: usize, p: u32, j: usize, q: u32) -> ExpSeq {
    ExpSeq::delta(i).scale(p).add(&ExpSeq::delta(j).scale(q))
}

fn sq_y(r: &ExpSeq, k: i32, l: i32, s: &ExpSeq) -> D0Elt {
    let big_k = (k + 1) as usize;
    let big_l = (l + 1) as usize;
    let (pk, pl) = (1u32 << big_k, 1u32 << big_l);
    let sb = AElt::basis(s.clone());
    let mut out = D0Elt::zero();
    for n in (big_l + 1)..=(big_l + 1 + r.len()) {
        let Some(r2) = r.checked_sub(&xi_pair(n - 1 - big_k, pk, n - 1 - big_l, pl)) else {
            continue;
        };
        for t in milnor_product(&AElt::basis(r2), &sb).terms() {
            if t.get(n) % 2 == 0 {
                out.add_sq(t.bump(n, 1), 2);
            }
        }
    }
    let add_case = |a: usize, b: usize, sub: ExpSeq, out: &mut D0Elt| {
        if let Some(r2) = r.checked_sub(&sub) {
            for t in milnor_product(&AElt::basis(r2), &sb).terms() {
                out.add_y(a as i32 - 1, b as i32 - 1, t.clone());
            }
        }
    };
    let span = r.len();
    for a in big_k..=(big_k + span) {
        for b in big_l.max(a + 1)..=(big_l + span) {
            add_case(a, b, xi_pair(a - big_k, pk, b - big_l, pl), &mut out);
        }
    }
    for a in big_l..=(big_l + span) {
        for b in big_k.max(a + 1)..=(big_k + span) {
            add_case(a, b, xi_pair(b - big_k, pk, a - big_l, pl), &mut out);
        }
    }
    out
}

/// Product in `D_0`.
pub fn d0_product(x: &D0Elt, y: &D0Elt) -> D0Elt {
    let mut out = D0Elt::zero();
    for (r, c) in &x.sq {
        for (s, d) in &y.sq {
            let p = sq_sq_mod4(r, s);
            out.add_assign(&p.scale(c * d));
        }
        if c % 2 == 1 {
            for key in &y.y {
                out.add_assign(&sq_y(r, key.k, key.l, &key.r));
            }
        }
    }
    for key in &x.y {
        for (s, d) in &y.sq {
            if d % 2 == 1 {
                let p = milnor_product(&AElt::basis(key.r.clone()), &AElt::basis(s.clone()));
                for t in p.terms() {
                    out.add_y(key.k, key.l, t.clone());
                }
            }
        }
    }
    out
}

/// A monomial of the dual `D_0^*`: `xi^R`, or `2 xi_{k,l} xi^R` with `0 <= k < l`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum D0DualMonomial {
    Plain(ExpSeq),
    Two(usize, usize, ExpSeq),
}

impl D0DualMonomial {
    pub fn two(k: usize, l: usize, r: ExpSeq) -> Result<Self> {
        if k >= l {
            return Err(AlgebraError::InvalidIndex(format!("xi_{{{k},{l}}} needs k < l")));
        }
        Ok(D0DualMonomial::Two(k, l, r))
    }

    pub fn degree(&self) -> u64 {
        match self {
            D0DualMonomial::Plain(r) => r.degree(),
            D0DualMonomial::Two(k, l, r) => (1u64 << k) + (1u64 << l) - 1 + r.degree(),
        }
    }

    fn is_two(&self) -> bool {
        matches!(self, D0DualMonomial::Two(..))
    }

    fn mul(&self, other: &D0DualMonomial) -> Option<D0DualMonomial> {
        use D0DualMonomial::*;
        match (self, other) {
            (Plain(r), Plain(s)) => Some(Plain(r.add(s))),
            (Plain(r), Two(k, l, s)) | (Two(k, l, s), Plain(r)) => Some(Two(*k, *l, r.add(s))),
            (Two(..), Two(..)) => None,
        }
    }
}

/// An element of `D_0^* (x) D_0^*` with `Z/4` coefficients.
pub type DualTensor = HashMap<(D0DualMonomial, D0DualMonomial), u8>;

fn tensor_add(t: &mut DualTensor, a: D0DualMonomial, b: D0DualMonomial, c: u8) {
    if a.is_two() && b.is_two() {
        return;
    }
    let modulus = if a.is_two() || b.is_two() { 2 } else { 4 };
    let key = (a, b);
    let e = t.entry(key.clone()).or_insert(0);
    *e = (*e + c) % modulus;
    if *e == 0 {
        t.remove(&key);
    }
}

fn tensor_mul(x: &DualTensor, y: &DualTensor) -> DualTensor {
    let mut out = DualTensor::new();
    for ((a1, b1), c1) in x {
        for ((a2, b2), c2) in y {
            if let (Some(a), Some(b)) = (a1.mul(a2), b1.mul(b2)) {
                tensor_add(&mut out, a, b, c1 * c2 % 4);
            }
        }
    }
    out
}

fn plain(r: ExpSeq) -> D0DualMonomial {
    D0DualMonomial::Plain(r)
}

/// `xi_{i}^{2^e}` where a negative `i` gives `None`.
fn xi_frob(i: i64, e: usize) -> Option<ExpSeq> {
    (i >= 0).then(|| ExpSeq::delta(i as usize).scale(1 << e))
}

fn coproduct_xi(n: usize) -> DualTensor {
    let mut t = DualTensor::new();
    for i in 0..=n {
        let j = n - i;
        tensor_add(
            &mut t,
            plain(ExpSeq::delta(i).scale(1 << j)),
            plain(ExpSeq::delta(j)),
            1,
        );
    }
    for l in 1..n {
        for k in 0..l {
            let (Some(a), Some(b)) = (
                xi_frob(n as i64 - 1 - k as i64, k),
                xi_frob(n as i64 - 1 - l as i64, l),
            ) else {
                continue;
            };
            tensor_add(&mut t, plain(a.add(&b)), D0DualMonomial::Two(k, l, ExpSeq::empty()), 1);
        }
    }
    t
}

fn coproduct_two(n: usize, m: usize) -> DualTensor {
    let mut t = DualTensor::new();
    tensor_add(&mut t, D0DualMonomial::Two(n, m, ExpSeq::empty()), plain(ExpSeq::empty()), 1);
    for k in 0..=n {
        let (Some(a), Some(b)) = (xi_frob((n - k) as i64, k), xi_frob((m - k) as i64, k)) else {
            continue;
        };
        tensor_add(&mut t, plain(a.add(&b)), plain(ExpSeq::delta(k + 1)), 2);
    }
    for l in 1..=m {
        for k in 0..l {
            for (p, q) in [(n as i64, m as i64), (m as i64, n as i64)] {
                if let (Some(a), Some(b)) = (xi_frob(p - k as i64, k), xi_frob(q - l as i64, l)) {
                    tensor_add(&mut t, plain(a.add(&b)), D0DualMonomial::Two(k, l, ExpSeq::empty()), 1);
                }
            }
        }
    }
    t
}

fn unit_tensor() -> DualTensor {
    let mut t = DualTensor::new();
    tensor_add(&mut t, plain(ExpSeq::empty()), plain(ExpSeq::empty()), 1);
    t
}

/// The coproduct of a dual monomial, extending the generator formulas
/// multiplicatively. Cached.
pub fn dual_coproduct(m: &D0DualMonomial) -> Arc<DualTensor> {
    static CACHE: LazyLock<RwLock<HashMap<D0DualMonomial, Arc<DualTensor>>>> =
        LazyLock::new(Default::default);
    if let Some(v) = CACHE.read().unwrap().get(m) {
        return v.clone();
    }
    let (mut t, r) = match m {
        D0DualMonomial::Plain(r) => (unit_tensor(), r),
        D0DualMonomial::Two(k, l, r) => (coproduct_two(*k, *l), r),
    };
    for n in 1..=r.len() {
        let g = coproduct_xi(n);
        for _ in 0..r.get(n) {
            t = tensor_mul(&t, &g);
        }
    }
    let v = Arc::new(t);
    CACHE.write().unwrap().insert(m.clone(), v.clone());
    v
}

/// All dual monomials of degree `d`.
pub fn dual_monomials_of_degree(d: u64) -> Vec<D0DualMonomial> {
    let mut out: Vec<_> = sequences_of_degree(d).iter().cloned().map(plain).collect();
    for l in 1.. {
        if (1u64 << l) > d {
            break;
        }
        for k in 0..l {
            let base = (1u64 << k) + (1u64 << l) - 1;
            if base > d {
                continue;
            }
            for r in sequences_of_degree(d - base).iter() {
                out.push(D0DualMonomial::Two(k, l, r.clone()));
            }
        }
    }
    out
}

/// The value of `x` on a dual monomial, in `Z/4`.
pub fn evaluate(x: &D0Elt, m: &D0DualMonomial) -> u8 {
    match m {
        D0DualMonomial::Plain(r) => x.sq_coefficient(r),
        D0DualMonomial::Two(k, l, r) => {
            if x.has_y(*k as i32 - 1, *l as i32 - 1, r) {
                2
            } else {
                0
            }
        }
    }
}

/// Product computed degree-locally from the dual coproduct: the value of
/// `xy` on each dual monomial `m` of the target degree is the pairing of
/// `x (x) y` with the coproduct of `m`.
pub fn d0_product_by_pairing(x: &D0Elt, y: &D0Elt) -> D0Elt {
    let mut xs: BTreeMap<u64, D0Elt> = BTreeMap::new();
    let mut ys: BTreeMap<u64, D0Elt> = BTreeMap::new();
    for (parts, e) in [(&mut xs, x), (&mut ys, y)] {
        for (r, c) in &e.sq {
            parts.entry(r.degree()).or_default().add_sq(r.clone(), *c);
        }
        for key in &e.y {
            parts.entry(key.degree()).or_default().add_y(key.k, key.l, key.r.clone());
        }
    }
    let mut degrees = BTreeSet::new();
    for dx in xs.keys() {
        for dy in ys.keys() {
            degrees.insert(dx + dy);
        }
    }
    let mut out = D0Elt::zero();
    for d in degrees {
        for m in dual_monomials_of_degree(d) {
            let mut value = 0u32;
            for ((m1, m2), c) in dual_coproduct(&m).iter() {
                let (d1, d2) = (m1.degree(), m2.degree());
                let (Some(xp), Some(yp)) = (xs.get(&d1), ys.get(&d2)) else {
                    continue;
                };
                value += *c as u32 * evaluate(xp, m1) as u32 * evaluate(yp, m2) as u32;
            }
            let value = (value % 4) as u8;
            match m {
                D0DualMonomial::Plain(r) => out.add_sq(r, value),
                D0DualMonomial::Two(k, l, r) => {
                    if value == 2 {
                        out.add_y(k as i32 - 1, l as i32 - 1, r);
                    }
                }
            }
        }
    }
    out
}

/// Closed form for `a Y_{k,l} Sq(R)`:
/// `a Y_{k,l} = sum_{i,j} Y_{k+i,l+j} cont(xi_i^{2^{k+1}} xi_j^{2^{l+1}}, a)`.
pub fn y_left_action(a: &AElt, k: i32, l: i32, r: &ExpSeq) -> Result<D0Elt> {
    if !(-1 <= k && k < l) {
        return Err(AlgebraError::InvalidIndex(format!("Y_{{{k},{l}}} needs -1 <= k < l")));
    }
    let rb = AElt::basis(r.clone());
    let mut out = D0Elt::zero();
    for (i, j, c) in index_contractions(a, k, l) {
        let tail = milnor_product(&c, &rb);
        out.add_assign(&y_normalized(k + i as i32, l + j as i32, &tail));
    }
    Ok(out)
}

/// The nonzero `(i, j, cont(xi_i^{2^{k+1}} xi_j^{2^{l+1}}, a))`.
pub(crate) fn index_contractions(a: &AElt, k: i32, l: i32) -> Vec<(usize, usize, AElt)> {
    let mut out = Vec::new();
    let max_deg = a.terms().map(ExpSeq::degree).max().unwrap_or(0);
    let (pk, pl) = (1u64 << (k + 1), 1u64 << (l + 1));
    for i in 0.. {
        let di = xi_degree(i) * pk;
        if di > max_deg {
            break;
        }
        for j in 0.. {
            let dj = xi_degree(j) * pl;
            if di + dj > max_deg {
                break;
            }
            let mono = xi_pair(i, pk as u32, j, pl as u32);
            let c = contract_monomial(&mono, a);
            if !c.is_zero() {
                out.push((i, j, c));
            }
        }
    }
    out
}

/// The map `phi: U -> D_0` on `U_{k,l} Sq(R)`: `Y_{k,l} Sq(R)` for `k != l`
/// and `2 Sq(Delta_{k+2}) Sq(R)` for `k = l`.
pub fn phi_eff(k: i32, l: i32, r: &ExpSeq) -> Result<D0Elt> {
    if k < -1 || l < -1 {
        return Err(AlgebraError::InvalidIndex(format!("U_{{{k},{l}}}")));
    }
    Ok(y_normalized(k, l, &AElt::basis(r.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: &[u32]) -> ExpSeq {
        ExpSeq::from(r)
    }

    fn sq(r: &[u32]) -> D0Elt {
        D0Elt::sq(s(r), 1)
    }

    fn y(k: i32, l: i32, r: &[u32]) -> D0Elt {
        D0Elt::y(k, l, s(r)).unwrap()
    }

    #[test]
    fn sq1_squared() {
        let want = D0Elt::sq(s(&[2]), 2).add(&y(-1, 0, &[]));
        assert_eq!(sq(&[1]).mul(&sq(&[1])), want);
        assert_eq!(d0_product_by_pairing(&sq(&[1]), &sq(&[1])), want);
    }

    #[test]
    fn sq1_times_y() {
        let want = y(-1, 0, &[1]).add(&D0Elt::sq(s(&[0, 1]), 2));
        assert_eq!(sq(&[1]).mul(&y(-1, 0, &[])), want);
        assert_eq!(d0_product_by_pairing(&sq(&[1]), &y(-1, 0, &[])), want);
        assert_eq!(y_left_action(&AElt::sq(&[1]), -1, 0, &ExpSeq::empty()).unwrap(), want);
    }

    #[test]
    fn p22_squared() {
        let want = D0Elt::sq(s(&[0, 4]), 2).add(&y(0, 2, &[0, 1]));
        assert_eq!(sq(&[0, 2]).mul(&sq(&[0, 2])), want);
    }

    #[test]
    fn dual_coproduct_of_xi1() {
        let t = dual_coproduct(&D0DualMonomial::Plain(ExpSeq::delta(1)));
        assert_eq!(t.len(), 2);
        assert_eq!(t[&(plain(ExpSeq::delta(1)), plain(ExpSeq::empty()))], 1);
        assert_eq!(t[&(plain(ExpSeq::empty()), plain(ExpSeq::delta(1)))], 1);
    }

    #[test]
    fn projection_and_section() {
        let x = D0Elt::sq(s(&[2]), 2).add(&y(-1, 0, &[]));
        assert!(pi(&x).is_zero());
        assert_eq!(pi(&D0Elt::sq(s(&[2]), 3)), AElt::sq(&[2]));
        assert_eq!(pi(&sq(&[3]).add(&y(0, 1, &[1]))), AElt::sq(&[3]));
        assert_eq!(sigma(&AElt::sq(&[3])), sq(&[3]));
        assert!(sigma(&AElt::zero()).is_zero());
    }

    #[test]
    fn y_is_two_torsion() {
        let x = y(0, 2, &[1]).add(&sq(&[5]));
        assert_eq!(x.scale(2), D0Elt::sq(s(&[5]), 2));
        assert!(y(1, 3, &[]).scale(2).is_zero());
    }

    #[test]
    fn y_normalization() {
        assert_eq!(y(2, 0, &[]), y(0, 2, &[]));
        assert_eq!(y(0, 0, &[]), D0Elt::sq(s(&[0, 1]), 2));
        assert!(D0Elt::y(-2, 0, ExpSeq::empty()).is_err());
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_eff(0, 2, &ExpSeq::empty()).unwrap(), y(0, 2, &[]));
        assert_eq!(phi_eff(0, 0, &ExpSeq::empty()).unwrap(), D0Elt::sq(s(&[0, 1]), 2));
    }

    #[test]
    fn relation_type() {
        assert!(RDElt::new(sq(&[1])).is_err());
        assert!(RDElt::new(D0Elt::sq(s(&[1]), 2)).is_ok());
    }
}
