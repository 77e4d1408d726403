//! The cooperation algebroid `E(mu_k) (x) BP_*BP (x) E(tau_k)` with the
//! differential `d mu_k = v_k`, computed with exact rational coefficients.
//!
//! Elements are super-commutative polynomials over `Q`. The left
//! coefficients are written in the logarithm generators `m_k` or in the
//! Araki generators `v_k` (`v_0 = p`); `t_k`, `tau_k` carry a side index so
//! that one type also covers the tensor powers of the algebroid.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

/// A generator. `Mu` and `Tau` are exterior (odd).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    M(u32),
    V(u32),
    T(u8, u32),
    Mu(u32),
    Tau(u8, u32),
}

impl Var {
    pub fn is_odd(self) -> bool {
        matches!(self, Var::Mu(_) | Var::Tau(..))
    }

    /// Topological degree at the prime `p`.
    pub fn degree(self, p: u64) -> u64 {
        let e = |k: u32| 2 * (p.pow(k) - 1);
        match self {
            Var::M(k) | Var::V(k) | Var::T(_, k) => e(k),
            Var::Mu(k) => e(k) + 1,
            Var::Tau(_, k) => 2 * p.pow(k) - 1,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::M(k) => write!(f, "m{k}"),
            Var::V(k) => write!(f, "v{k}"),
            Var::T(s, k) => write!(f, "t{k}{}", "'".repeat(*s as usize - 1)),
            Var::Mu(k) => write!(f, "mu{k}"),
            Var::Tau(s, k) => write!(f, "tau{k}{}", "'".repeat(*s as usize - 1)),
        }
    }
}

/// A monomial: sorted `(variable, exponent)` pairs, exponent 1 on odd variables.
pub type Monomial = Vec<(Var, u32)>;

/// Product of two monomials with the Koszul sign, `None` if it vanishes.
fn mul_monomials(a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
    let mut negative = false;
    for (y, _) in b.iter().filter(|(v, _)| v.is_odd()) {
        let passed = a.iter().filter(|(x, _)| x.is_odd() && x > y).count();
        negative ^= passed % 2 == 1;
    }
    let mut map: BTreeMap<Var, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        let entry = map.entry(*v).or_insert(0);
        if v.is_odd() && *entry > 0 {
            return None;
        }
        *entry += e;
    }
    Some((map.into_iter().collect(), negative))
}

/// A super-commutative polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big_pow(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut out = Poly::zero();
        out.add_term(Monomial::new(), c);
        out
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(rat(c))
    }

    pub fn var(v: Var) -> Self {
        let mut out = Poly::zero();
        out.add_term(vec![(v, 1)], BigRational::one());
        out
    }

    /// `v_k` in the Araki basis, with `v_0 = p`.
    pub fn v(k: u32, p: u64) -> Self {
        if k == 0 {
            Poly::int(p as i64)
        } else {
            Poly::var(Var::V(k))
        }
    }

    /// `t_k` on a side, with `t_0 = 1`.
    pub fn t(side: u8, k: u32) -> Self {
        if k == 0 {
            Poly::one()
        } else {
            Poly::var(Var::T(side, k))
        }
    }

    /// `m_k`, with `m_0 = 1`.
    pub fn m(k: u32) -> Self {
        if k == 0 {
            Poly::one()
        } else {
            Poly::var(Var::M(k))
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&rat(-1))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, negative)) = mul_monomials(m1, m2) {
                    let c = c1 * c2;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// The ring map sending each variable `x` to `f(x)` (or `x` if `None`).
    pub fn substitute(&self, f: &impl Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (v, e) in m {
                let factor = cache
                    .entry((*v, *e))
                    .or_insert_with(|| match f(*v) {
                        Some(image) => image.pow(*e as u64),
                        None => {
                            let mut x = Poly::zero();
                            x.add_term(vec![(*v, *e)], BigRational::one());
                            x
                        }
                    })
                    .clone();
                term = term.mul(&factor);
            }
            out.add_assign(&term);
        }
        out
    }

    /// Moves every `t`/`tau` from side `s` to side `s + shift`.
    pub fn shift_sides(&self, shift: u8) -> Poly {
        self.substitute(&|v| match v {
            Var::T(s, k) => Some(Poly::var(Var::T(s + shift, k))),
            Var::Tau(s, k) => Some(Poly::var(Var::Tau(s + shift, k))),
            _ => None,
        })
    }

    /// The common topological degree of all terms, if any.
    pub fn degree(&self, p: u64) -> Option<u64> {
        let mut it = self
            .terms
            .keys()
            .map(|m| m.iter().map(|(v, e)| v.degree(p) * *e as u64).sum::<u64>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// The coefficient of a monomial.
    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for (v, e) in m {
                    if *e == 1 {
                        s.push_str(&format!("*{v}"));
                    } else {
                        s.push_str(&format!("*{v}^{e}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Phi_{p^k}(x_i) = (sum x_i^{p^k} - (sum x_i)^{p^k}) / p`.
pub fn phi_pk(terms: &[Poly], k: u32, p: u64) -> Poly {
    let q = p.pow(k);
    let mut sum_of_powers = Poly::zero();
    let mut sum = Poly::zero();
    for x in terms {
        sum_of_powers.add_assign(&x.pow(q));
        sum.add_assign(x);
    }
    sum_of_powers
        .sub(&sum.pow(q))
        .scale(&BigRational::new(BigInt::one(), BigInt::from(p)))
}

/// The Araki generator `v_n` in the `m_k`, from
/// `p m_n = sum_{0 <= a <= n} m_a v_{n-a}^{p^a}` with `v_0 = p`, `m_0 = 1`.
pub fn araki_v(n: u32, p: u64) -> Poly {
    if n == 0 {
        return Poly::int(p as i64);
    }
    let mut out = Poly::m(n).scale(&rat(p as i64));
    for a in 1..=n {
        out = out.sub(&Poly::m(a).mul(&araki_v(n - a, p).pow(p.pow(a))));
    }
    out
}

/// `m_n` written in the `v_k`.
pub fn m_in_v(n: u32, p: u64) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let mut num = Poly::var(Var::V(n));
    for a in 1..n {
        num.add_assign(&m_in_v(a, p).mul(&Poly::v(n - a, p).pow(p.pow(a))));
    }
    let den = BigInt::from(p) - big_pow(p, p.pow(n));
    num.scale(&BigRational::new(BigInt::one(), den))
}

/// Rewrites every `m_k` in the `v_k`.
pub fn to_v_basis(x: &Poly, p: u64) -> Poly {
    let max_m = x
        .terms()
        .flat_map(|(m, _)| m.iter())
        .filter_map(|(v, _)| match v {
            Var::M(k) => Some(*k),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let images: Vec<Poly> = (0..=max_m).map(|k| m_in_v(k, p)).collect();
    x.substitute(&|v| match v {
        Var::M(k) => Some(images[k as usize].clone()),
        _ => None,
    })
}

fn p_valuation(c: &BigRational, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let mut val = 0i64;
    let (mut num, mut den) = (c.numer().abs(), c.denom().abs());
    while num.is_multiple_of(&pb) {
        num /= &pb;
        val += 1;
    }
    while den.is_multiple_of(&pb) {
        den /= &pb;
        val -= 1;
    }
    val
}

/// The `I`-adic valuation, `I = (p, v_1, v_2, ...)`: the least
/// `v_p(c) + (total v-exponent)` over the terms after rewriting in the `v_k`.
/// `None` for zero.
pub fn i_adic_valuation(x: &Poly, p: u64) -> Result<Option<u32>> {
    let y = to_v_basis(x, p);
    let mut best: Option<i64> = None;
    for (m, c) in y.terms() {
        let vp = p_valuation(c, p);
        if vp < 0 {
            return Err(AlgebraError::NotPLocal(format!("coefficient {c} of {y}")));
        }
        let weight = vp
            + m.iter()
                .filter(|(v, _)| matches!(v, Var::V(_)))
                .map(|(_, e)| *e as i64)
                .sum::<i64>();
        best = Some(best.map_or(weight, |b| b.min(weight)));
    }
    Ok(best.map(|b| b as u32))
}

/// `eta_R(m_n) = sum_{a+b=n} m_a t_b^{p^a}` on side `side`.
pub fn eta_r_m(n: u32, side: u8, p: u64) -> Poly {
    let mut out = Poly::zero();
    for a in 0..=n {
        out.add_assign(&Poly::m(a).mul(&Poly::t(side, n - a).pow(p.pow(a))));
    }
    out
}

fn eta_r_substitution(side: u8, p: u64) -> impl Fn(Var) -> Option<Poly> {
    move |v| match v {
        Var::M(k) => Some(eta_r_m(k, side, p)),
        Var::Mu(k) => Some(eta_r_mu(k, side, p)),
        Var::V(_) => panic!("eta_R is applied to m-basis coefficients"),
        _ => None,
    }
}

/// `eta_R(v_n)`, exact, in the `m_k` and `t_k`.
pub fn eta_r_v(n: u32, p: u64) -> Poly {
    araki_v(n, p).substitute(&eta_r_substitution(1, p))
}

/// `eta_R(mu_n) = sum_k mu_k t_{n-k}^{p^k} + tau_n` on side `side`.
pub fn eta_r_mu(n: u32, side: u8, p: u64) -> Poly {
    let mut out = Poly::var(Var::Tau(side, n));
    for k in 0..=n {
        out.add_assign(&Poly::var(Var::Mu(k)).mul(&Poly::t(side, n - k).pow(p.pow(k))));
    }
    out
}

/// `w_n = v_n mu_0 - p mu_n` in the `v_k`.
pub fn w(n: u32, p: u64) -> Poly {
    Poly::v(n, p)
        .mul(&Poly::var(Var::Mu(0)))
        .sub(&Poly::var(Var::Mu(n)).scale(&rat(p as i64)))
}

/// `eta_R(w_n)`, exact.
pub fn eta_r_w(n: u32, p: u64) -> Poly {
    eta_r_v(n, p)
        .mul(&eta_r_mu(0, 1, p))
        .sub(&eta_r_mu(n, 1, p).scale(&rat(p as i64)))
}

fn check_bound(n: u32, bound: u32) -> Result<()> {
    if n > bound {
        return Err(AlgebraError::DegreeBound(format!("index {n} exceeds bound {bound}")));
    }
    Ok(())
}

/// `Delta t_n` on sides 1 and 2, exact, from
/// `Delta eta_R(m_n) = (eta_R (x) id) eta_R(m_n)`.
pub fn t_coproduct(n: u32, p: u64, bound: u32) -> Result<Poly> {
    check_bound(n, bound)?;
    let mut memo: Vec<Poly> = Vec::new();
    for j in 0..=n {
        let mut out = Poly::zero();
        for c in 0..=j {
            for d in 0..=(j - c) {
                let b = j - c - d;
                out.add_assign(
                    &Poly::m(c)
                        .mul(&Poly::t(1, d).pow(p.pow(c)))
                        .mul(&Poly::t(2, b).pow(p.pow(c + d))),
                );
            }
        }
        for a in 1..=j {
            out = out.sub(&Poly::m(a).mul(&memo[(j - a) as usize].pow(p.pow(a))));
        }
        memo.push(out);
    }
    Ok(memo.pop().expect("n + 1 entries"))
}

/// `Delta tau_n` on sides 1 and 2, exact:
/// `1 (x) tau_n + sum tau_k (x) t_{n-k}^{p^k}
///  + sum_a mu_a (-Delta t_{n-a}^{p^a} + sum_{b+c=n-a} t_b^{p^a} (x) t_c^{p^{a+b}})`.
pub fn tau_coproduct(n: u32, p: u64, bound: u32) -> Result<Poly> {
    check_bound(n, bound)?;
    let mut out = Poly::var(Var::Tau(2, n));
    for k in 0..=n {
        out.add_assign(&Poly::var(Var::Tau(1, k)).mul(&Poly::t(2, n - k).pow(p.pow(k))));
    }
    for a in 0..=n {
        let mut inner = t_coproduct(n - a, p, bound)?.pow(p.pow(a)).neg();
        for b in 0..=(n - a) {
            let c = n - a - b;
            inner.add_assign(&Poly::t(1, b).pow(p.pow(a)).mul(&Poly::t(2, c).pow(p.pow(a + b))));
        }
        out.add_assign(&Poly::var(Var::Mu(a)).mul(&inner));
    }
    Ok(out)
}

/// `d tau_n = eta_R(v_n) - sum_k v_k t_{n-k}^{p^k}`, in the `v_k`.
pub fn tau_boundary(n: u32, p: u64) -> Poly {
    let mut out = eta_r_v(n, p);
    for k in 0..=n {
        out = out.sub(&araki_v(k, p).mul(&Poly::t(1, n - k).pow(p.pow(k))));
    }
    to_v_basis(&out, p)
}

/// The derivation with `d mu_k = v_k`, `d tau_n` as in [`tau_boundary`],
/// and `d = 0` on `m_k`, `v_k`, `t_k`. Only side-1 `tau` is supported.
pub fn differential(x: &Poly, p: u64) -> Poly {
    let mut tau_cache: BTreeMap<u32, Poly> = BTreeMap::new();
    let mut out = Poly::zero();
    for (m, c) in x.terms() {
        let mut sign_negative = false;
        for (pos, (v, _)) in m.iter().enumerate() {
            if !v.is_odd() {
                continue;
            }
            let image = match v {
                Var::Mu(k) => Poly::v(*k, p),
                Var::Tau(1, k) => tau_cache.entry(*k).or_insert_with(|| tau_boundary(*k, p)).clone(),
                _ => panic!("differential on {v} is not defined"),
            };
            let mut rest = m.clone();
            rest.remove(pos);
            let mut term = Poly::zero();
            term.add_term(rest, if sign_negative { -c.clone() } else { c.clone() });
            out.add_assign(&image.mul(&term));
            sign_negative = !sign_negative;
        }
    }
    out
}

/// The `t_a (x) t_b^{p^a}` with `a + b = j` on sides 1 and 2.
fn diagonal_terms(j: u32, p: u64) -> Vec<Poly> {
    (0..=j)
        .map(|a| Poly::t(1, a).mul(&Poly::t(2, j - a).pow(p.pow(a))))
        .collect()
}

/// `sum_{a+b=n} t_a (x) t_b^{p^a} + sum_{0<k<=n} v_k Phi_{p^k}(t_a (x) t_b^{p^a} | a+b=n-k)`.
pub fn t_coproduct_mod_i2(n: u32, p: u64) -> Poly {
    let mut out = Poly::zero();
    for x in diagonal_terms(n, p) {
        out.add_assign(&x);
    }
    for k in 1..=n {
        out.add_assign(&Poly::v(k, p).mul(&phi_pk(&diagonal_terms(n - k, p), k, p)));
    }
    out
}

/// `1 (x) tau_n + sum_{a+b=n} tau_a (x) t_b^{p^a} + w_sign sum_{0<k<=n} w_k Phi_{p^k}(...)`.
/// The congruence modulo `I^2` holds with `w_sign = -1`.
pub fn tau_coproduct_mod_i2(n: u32, p: u64, w_sign: i64) -> Poly {
    let mut out = Poly::var(Var::Tau(2, n));
    for a in 0..=n {
        out.add_assign(&Poly::var(Var::Tau(1, a)).mul(&Poly::t(2, n - a).pow(p.pow(a))));
    }
    for k in 1..=n {
        out.add_assign(&w(k, p).mul(&phi_pk(&diagonal_terms(n - k, p), k, p)).scale(&rat(w_sign)));
    }
    out
}

/// `sum_{0<=k<=n} v_k t_{n-k}^{p^k}`.
pub fn eta_r_v_mod_i2(n: u32, p: u64) -> Poly {
    let mut out = Poly::zero();
    for k in 0..=n {
        out.add_assign(&Poly::v(k, p).mul(&Poly::t(1, n - k).pow(p.pow(k))));
    }
    out
}

/// `-p tau_n + sum_{1<=k<=last} w_k t_{n-k}^{p^k} + sum_{0<=k<=n} v_k t_{n-k}^{p^k} tau_0`,
/// with `last = n` for the full congruence; `last = n - 1` omits the `w_n` term.
pub fn eta_r_w_mod_i2(n: u32, p: u64, include_top: bool) -> Poly {
    let mut out = Poly::var(Var::Tau(1, n)).scale(&rat(-(p as i64)));
    let last = if include_top { n } else { n.saturating_sub(1) };
    for k in 1..=last {
        out.add_assign(&w(k, p).mul(&Poly::t(1, n - k).pow(p.pow(k))));
    }
    out.add_assign(&eta_r_v_mod_i2(n, p).mul(&Poly::var(Var::Tau(1, 0))));
    out
}

/// `d tau_n` at `p = 2`, which is not a cycle modulo `I^3`; its `t_1`-linear
/// part is `v_{n-1}^2 t_1` modulo `I^3`.
pub fn p2_failure_witness(n: u32) -> Result<Poly> {
    if n == 0 {
        return Err(AlgebraError::InvalidIndex("n must be at least 1".into()));
    }
    Ok(tau_boundary(n, 2))
}

/// The part of `x` that is linear in `t_1` and free of other `t`, `tau`, `mu`.
pub fn t1_linear_part(x: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in x.terms() {
        let t_like: Vec<&(Var, u32)> = m
            .iter()
            .filter(|(v, _)| matches!(v, Var::T(..) | Var::Tau(..) | Var::Mu(_)))
            .collect();
        if t_like.len() == 1 && *t_like[0] == (Var::T(1, 1), 1) {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

/// The images of `t_k` and `tau_k` under `id (x) Delta` on the second factor,
/// with middle coefficients moved across through `eta_R`.
fn right_coproduct_substitution(p: u64, n: u32, bound: u32) -> Result<impl Fn(Var) -> Option<Poly>> {
    let left = eta_r_substitution(1, p);
    let shift = |x: &Poly| x.shift_sides(1).substitute(&left);
    let ts: Vec<Poly> = (0..=n).map(|k| t_coproduct(k, p, bound).map(|x| shift(&x))).collect::<Result<_>>()?;
    let taus: Vec<Poly> = (0..=n).map(|k| tau_coproduct(k, p, bound).map(|x| shift(&x))).collect::<Result<_>>()?;
    Ok(move |v| match v {
        Var::T(2, k) => Some(ts[k as usize].clone()),
        Var::Tau(2, k) => Some(taus[k as usize].clone()),
        _ => None,
    })
}

fn left_coproduct_substitution(p: u64, n: u32, bound: u32) -> Result<impl Fn(Var) -> Option<Poly>> {
    let ts: Vec<Poly> = (0..=n).map(|k| t_coproduct(k, p, bound)).collect::<Result<_>>()?;
    let taus: Vec<Poly> = (0..=n).map(|k| tau_coproduct(k, p, bound)).collect::<Result<_>>()?;
    Ok(move |v| match v {
        Var::T(1, k) => Some(ts[k as usize].clone()),
        Var::Tau(1, k) => Some(taus[k as usize].clone()),
        _ => None,
    })
}

/// `((Delta (x) id) Delta x, (id (x) Delta) Delta x)` for `x = Delta(gen)`
/// given on sides 1 and 2; both land on sides 1, 2, 3.
pub fn coassociativity_sides(delta: &Poly, n: u32, p: u64, bound: u32) -> Result<(Poly, Poly)> {
    let lhs = delta.shift_sides_from(2, 1).substitute(&left_coproduct_substitution(p, n, bound)?);
    let rhs = delta.substitute(&right_coproduct_substitution(p, n, bound)?);
    Ok((lhs, rhs))
}

impl Poly {
    /// Moves `t`/`tau` on sides `>= from` up by `shift`.
    pub fn shift_sides_from(&self, from: u8, shift: u8) -> Poly {
        self.substitute(&|v| match v {
            Var::T(s, k) if s >= from => Some(Poly::var(Var::T(s + shift, k))),
            Var::Tau(s, k) if s >= from => Some(Poly::var(Var::Tau(s + shift, k))),
            _ => None,
        })
    }
}

/// `(eta_R (x) id) eta_R(mu_n)` and `Delta eta_R(mu_n)`, both on sides 1 and 2.
pub fn mu_unit_consistency(n: u32, p: u64, bound: u32) -> Result<(Poly, Poly)> {
    let mut lhs = Poly::var(Var::Tau(2, n));
    for k in 0..=n {
        lhs.add_assign(&eta_r_mu(k, 1, p).mul(&Poly::t(2, n - k).pow(p.pow(k))));
    }
    let mut rhs = tau_coproduct(n, p, bound)?;
    for k in 0..=n {
        rhs.add_assign(&Poly::var(Var::Mu(k)).mul(&t_coproduct(n - k, p, bound)?.pow(p.pow(k))));
    }
    Ok((lhs, rhs))
}

/// The generators of the algebroid (side 1) of degree at most `max_degree`.
fn generators(max_degree: u64, p: u64) -> Vec<Var> {
    let mut out = Vec::new();
    for k in 0.. {
        if 2 * p.pow(k) - 1 > max_degree + 1 {
            break;
        }
        if k > 0 {
            out.extend([Var::V(k), Var::T(1, k)]);
        }
        out.extend([Var::Mu(k), Var::Tau(1, k)]);
    }
    out.retain(|v| v.degree(p) <= max_degree);
    out
}

/// The monomial basis of the algebroid over `Z_(p)` in degree `d`.
pub fn monomial_basis(d: u64, p: u64) -> Vec<Monomial> {
    let gens = generators(d, p);
    let mut out = Vec::new();
    let mut current: Monomial = Vec::new();
    fn rec(gens: &[Var], i: usize, left: u64, p: u64, current: &mut Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            let mut m = current.clone();
            m.sort();
            out.push(m);
            return;
        }
        if i == gens.len() {
            return;
        }
        let v = gens[i];
        let deg = v.degree(p);
        let max_e = if v.is_odd() { 1 } else { left / deg };
        for e in 0..=max_e {
            if e * deg > left {
                break;
            }
            if e > 0 {
                current.push((v, e as u32));
            }
            rec(gens, i + 1, left - e * deg, p, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }
    rec(&gens, 0, d, p, &mut current, &mut out);
    out.sort();
    out
}

/// Count of monomials of `F_p[t_k] (x) E(tau_n)` in degree `d`.
pub fn steenrod_dual_count(d: u64, p: u64) -> usize {
    monomial_basis(d, p)
        .iter()
        .filter(|m| m.iter().all(|(v, _)| matches!(v, Var::T(..) | Var::Tau(..))))
        .count()
}

/// Valuations of the pivots of a Smith reduction over `Z_(p)`.
fn smith_valuations(mut rows: Vec<Vec<BigRational>>, p: u64) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    loop {
        let mut best: Option<(usize, usize, i64)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    let v = p_valuation(c, p);
                    if best.is_none_or(|(_, _, b)| v < b) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        if v < 0 {
            return Err(AlgebraError::NotPLocal("boundary matrix entry".into()));
        }
        out.push(v);
        let pivot_row = rows.swap_remove(pi);
        let pivot = pivot_row[pj].clone();
        for row in rows.iter_mut() {
            if row[pj].is_zero() {
                continue;
            }
            let f = &row[pj] / &pivot;
            for (j, c) in pivot_row.iter().enumerate() {
                if !c.is_zero() {
                    row[j] -= &f * c;
                }
            }
        }
        for row in rows.iter_mut() {
            row.swap_remove(pj);
        }
    }
    Ok(out)
}

/// One degree of the homology of `(E(mu) (x) BP_*BP (x) E(tau), d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDegree {
    pub degree: u64,
    /// Number of cyclic `Z/p^e` summands.
    pub dimension: usize,
    /// Largest `e` among them (1 means an `F_p`-vector space).
    pub max_exponent: i64,
    /// Rank of the free part (zero for a rationally acyclic complex).
    pub free_rank: usize,
    /// `F_p[t_k] (x) E(tau_n)` monomial count in this degree.
    pub expected: usize,
}

fn boundary_matrix(d: u64, p: u64) -> Vec<Vec<BigRational>> {
    let source = monomial_basis(d, p);
    let target: BTreeMap<Monomial, usize> = if d == 0 {
        BTreeMap::new()
    } else {
        monomial_basis(d - 1, p).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    };
    source
        .iter()
        .map(|m| {
            let mut x = Poly::zero();
            x.add_term(m.clone(), BigRational::one());
            let dx = differential(&x, p);
            let mut row = vec![BigRational::zero(); target.len()];
            for (mm, c) in dx.terms() {
                let idx = target.get(mm).expect("boundary stays in the monomial basis");
                row[*idx] = c.clone();
            }
            row
        })
        .collect()
}

/// Degreewise homology for `0 <= d <= max_degree`.
pub fn homology_dimensions(max_degree: u64, p: u64) -> Result<Vec<HomologyDegree>> {
    if p == 2 {
        return Err(AlgebraError::InvalidIndex("homology is computed for odd primes".into()));
    }
    let ranks: Vec<Vec<i64>> = (0..=max_degree + 1)
        .map(|d| smith_valuations(boundary_matrix(d, p), p))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let incoming = &ranks[d as usize + 1];
        let outgoing = ranks[d as usize].len();
        let torsion: Vec<i64> = incoming.iter().copied().filter(|v| *v > 0).collect();
        out.push(HomologyDegree {
            degree: d,
            dimension: torsion.len(),
            max_exponent: torsion.iter().copied().max().unwrap_or(0),
            free_rank: monomial_basis(d, p).len() - outgoing - incoming.len(),
            expected: steenrod_dual_count(d, p),
        });
    }
    Ok(out)
}

/// A rational number as `i64`, if it is one.
pub fn as_integer(c: &BigRational) -> Option<i64> {
    c.is_integer().then(|| c.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn araki_first_generator() {
        let v1 = araki_v(1, 3);
        assert_eq!(v1, Poly::var(Var::M(1)).scale(&rat(-24)));
        assert_eq!(araki_v(0, 3), Poly::int(3));
        assert_eq!(to_v_basis(&v1, 3), Poly::var(Var::V(1)));
        assert_eq!(to_v_basis(&araki_v(2, 3), 3), Poly::var(Var::V(2)));
    }

    #[test]
    fn phi_examples() {
        let (x, y) = (Poly::var(Var::T(1, 1)), Poly::var(Var::T(2, 1)));
        let want = x.pow(2).mul(&y).add(&x.mul(&y.pow(2))).neg();
        assert_eq!(phi_pk(&[x.clone(), y.clone()], 1, 3), want);
        assert!(phi_pk(std::slice::from_ref(&x), 2, 3).is_zero());
        let phi9 = phi_pk(&[x, y], 2, 3);
        assert_eq!(phi9.degree(3), Some(36));
        assert!(phi9.terms().all(|(_, c)| c.is_integer()));
    }

    #[test]
    fn valuations() {
        let v1v2 = Poly::var(Var::V(1)).mul(&Poly::var(Var::V(2)));
        assert_eq!(i_adic_valuation(&v1v2, 3).unwrap(), Some(2));
        assert_eq!(i_adic_valuation(&Poly::int(3), 3).unwrap(), Some(1));
        assert_eq!(i_adic_valuation(&Poly::zero(), 3).unwrap(), None);
        assert!(i_adic_valuation(&Poly::var(Var::M(1)), 3).is_err());
    }

    #[test]
    fn low_coproducts() {
        let t1 = Poly::var(Var::T(1, 1)).add(&Poly::var(Var::T(2, 1)));
        assert_eq!(t_coproduct(1, 3, 3).unwrap(), t1);
        assert_eq!(t_coproduct(0, 3, 3).unwrap(), Poly::one());
        let tau0 = Poly::var(Var::Tau(1, 0)).add(&Poly::var(Var::Tau(2, 0)));
        assert_eq!(tau_coproduct(0, 3, 3).unwrap(), tau0);
        assert!(t_coproduct(4, 3, 3).is_err());
    }

    #[test]
    fn differential_examples() {
        let mu01 = Poly::var(Var::Mu(0)).mul(&Poly::var(Var::Mu(1)));
        assert_eq!(differential(&mu01, 3), w(1, 3).neg());
        assert!(differential(&Poly::var(Var::M(1)), 3).is_zero());
        assert!(differential(&differential(&mu01, 3), 3).is_zero());
        assert_eq!(tau_boundary(1, 3), Poly::var(Var::T(1, 1)).scale(&rat(-27)));
    }

    #[test]
    fn homology_low_degrees() {
        let h = homology_dimensions(4, 3).unwrap();
        assert_eq!(h[0].dimension, 1);
        assert_eq!(h[1].dimension, 1);
        assert_eq!(h[4].dimension, h[4].expected);
        assert!(h.iter().all(|x| x.free_rank == 0));
    }
}
