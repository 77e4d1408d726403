//! The mod 2 Steenrod algebra `A` in the Milnor basis and its dual `A_*`.
//!
//! Elements are sparse `F_2` combinations of exponent sequences. The product
//! is computed from Milnor matrices; [`milnor_product_by_pairing`] computes the
//! same product directly from the coproduct of `A_*` and is kept as an
//! independent route for cross-checking.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::{AlgebraError, Result};

/// Degree of `xi_i`, which is also the degree of `Sq(Delta_i)`.
pub fn xi_degree(i: usize) -> u64 {
    (1u64 << i) - 1
}

/// A finite exponent sequence `(r_1, r_2, ...)` with trailing zeros trimmed.
///
/// Ordered by degree first and lexicographically second, so that ordered
/// containers iterate in the canonical printing order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpSeq(Vec<u32>);

impl ExpSeq {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        ExpSeq(entries)
    }

    pub fn empty() -> Self {
        ExpSeq(Vec::new())
    }

    /// The unit sequence `Delta_k` with `xi^{Delta_k} = xi_k`; `Delta_0` is empty.
    pub fn delta(k: usize) -> Self {
        if k == 0 {
            return ExpSeq::empty();
        }
        let mut v = vec![0; k];
        v[k - 1] = 1;
        ExpSeq(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r_i` for `i >= 1`; zero past the end and at `i = 0`.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.0.get(i - 1).copied().unwrap_or(0)
        }
    }

    pub fn degree(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &r)| r as u64 * xi_degree(i + 1))
            .sum()
    }

    pub fn add(&self, other: &ExpSeq) -> ExpSeq {
        let n = self.len().max(other.len());
        ExpSeq::new((1..=n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// `self - other`, if `other <= self` componentwise.
    pub fn checked_sub(&self, other: &ExpSeq) -> Option<ExpSeq> {
        if other.len() > self.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (i, &s) in other.0.iter().enumerate() {
            v[i] = v[i].checked_sub(s)?;
        }
        Some(ExpSeq::new(v))
    }

    pub fn scale(&self, c: u32) -> ExpSeq {
        ExpSeq::new(self.0.iter().map(|&r| r * c).collect())
    }

    pub fn le(&self, other: &ExpSeq) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Adds `c` to the `i`-th entry (`i >= 1`).
    pub fn bump(&self, i: usize, c: u32) -> ExpSeq {
        if i == 0 || c == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        if v.len() < i {
            v.resize(i, 0);
        }
        v[i - 1] += c;
        ExpSeq::new(v)
    }

    /// All `E` with `E <= self` componentwise.
    pub fn sub_sequences(&self) -> Vec<ExpSeq> {
        let mut out = vec![Vec::new()];
        for &r in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=r).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(ExpSeq::new).collect()
    }
}

impl From<Vec<u32>> for ExpSeq {
    fn from(v: Vec<u32>) -> Self {
        ExpSeq::new(v)
    }
}

impl From<&[u32]> for ExpSeq {
    fn from(v: &[u32]) -> Self {
        ExpSeq::new(v.to_vec())
    }
}

impl PartialOrd for ExpSeq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExpSeq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for ExpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Degree-`d` exponent sequences, in canonical order.
pub fn sequences_of_degree(d: u64) -> Arc<Vec<ExpSeq>> {
    static CACHE: LazyLock<RwLock<HashMap<u64, Arc<Vec<ExpSeq>>>>> =
        LazyLock::new(Default::default);
    if let Some(v) = CACHE.read().unwrap().get(&d) {
        return v.clone();
    }
    let mut top = 0;
    while xi_degree(top + 1) <= d.max(1) {
        top += 1;
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; top];
    fill_sequences(d, top, &mut current, &mut out);
    out.sort();
    let out = Arc::new(out);
    CACHE.write().unwrap().insert(d, out.clone());
    out
}

fn fill_sequences(remaining: u64, index: usize, current: &mut [u32], out: &mut Vec<ExpSeq>) {
    if index == 0 {
        if remaining == 0 {
            out.push(ExpSeq::new(current.to_vec()));
        }
        return;
    }
    let w = xi_degree(index);
    for c in 0..=(remaining / w) {
        current[index - 1] = c as u32;
        fill_sequences(remaining - c * w, index - 1, current, out);
    }
    current[index - 1] = 0;
}

/// `C(n, k) mod 4`, computed exactly through 2-adic valuations.
pub fn binomial_mod4(n: u64, k: u64) -> u8 {
    if k > n {
        return 0;
    }
    let mut val: i64 = 0;
    let mut unit: u64 = 1;
    for i in 1..=k {
        let num = n - k + i;
        let tz = num.trailing_zeros();
        val += tz as i64;
        unit = unit * ((num >> tz) % 4) % 4;
        let tz = i.trailing_zeros();
        val -= tz as i64;
        // odd residues mod 4 are self-inverse
        unit = unit * ((i >> tz) % 4) % 4;
    }
    if val >= 2 {
        0
    } else {
        ((unit << val) % 4) as u8
    }
}

/// Multinomial coefficient of the given parts, mod 4.
pub fn multinomial_mod4(parts: &[u32]) -> u8 {
    let mut total = 0u64;
    let mut acc = 1u8;
    for &p in parts {
        total += p as u64;
        acc = (acc as u16 * binomial_mod4(total, p as u64) as u16 % 4) as u8;
        if acc == 0 {
            return 0;
        }
    }
    acc
}

/// A Milnor matrix `x_{ij}` (`i, j >= 0`, `x_00` unused) with row
/// constraints `r_i = sum_j 2^j x_ij` and column constraints `s_j = sum_i x_ij`.
#[derive(Debug, Clone)]
pub struct MilnorMatrix {
    rows: usize,
    cols: usize,
    x: Vec<Vec<u32>>,
}

impl MilnorMatrix {
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.x[i][j]
    }

    fn diagonal(&self, n: usize) -> Vec<u32> {
        (0..=n)
            .filter(|&i| i <= self.rows && n - i <= self.cols)
            .map(|i| self.x[i][n - i])
            .filter(|&v| v > 0)
            .collect()
    }

    /// The diagonal sums `t_n = sum_{i+j=n} x_ij`.
    pub fn target(&self) -> ExpSeq {
        ExpSeq::new(
            (1..=self.rows + self.cols)
                .map(|n| self.diagonal(n).iter().sum())
                .collect(),
        )
    }

    /// Product over diagonals of the multinomial coefficients, mod 4.
    pub fn weight_mod4(&self) -> u8 {
        let mut acc = 1u8;
        for n in 1..=self.rows + self.cols {
            acc = acc * multinomial_mod4(&self.diagonal(n)) % 4;
            if acc == 0 {
                break;
            }
        }
        acc
    }

    /// As [`Self::weight_mod4`], with one extra summand of size one on
    /// diagonal `n`.
    pub fn weight_with_extra_mod4(&self, n: usize) -> u8 {
        let t_n: u32 = if n <= self.rows + self.cols {
            self.diagonal(n).iter().sum()
        } else {
            0
        };
        ((self.weight_mod4() as u64 * (t_n as u64 + 1)) % 4) as u8
    }
}

/// Calls `f` on every Milnor matrix with row sums `r` and column sums `s`.
pub fn for_each_milnor_matrix(r: &ExpSeq, s: &ExpSeq, mut f: impl FnMut(&MilnorMatrix)) {
    let rows = r.len();
    let cols = s.len();
    let mut m = MilnorMatrix {
        rows,
        cols,
        x: vec![vec![0; cols + 1]; rows + 1],
    };
    let mut row_left: Vec<u64> = (0..=rows).map(|i| r.get(i) as u64).collect();
    let mut col_left: Vec<u32> = (0..=cols).map(|j| s.get(j)).collect();
    fill_matrix(1, 1, &mut m, &mut row_left, &mut col_left, &mut f);
}

fn fill_matrix(
    i: usize,
    j: usize,
    m: &mut MilnorMatrix,
    row_left: &mut [u64],
    col_left: &mut [u32],
    f: &mut impl FnMut(&MilnorMatrix),
) {
    if i > m.rows {
        for (row, left) in m.x.iter_mut().zip(row_left.iter()).take(m.rows + 1).skip(1) {
            row[0] = *left as u32;
        }
        m.x[0][1..=m.cols].copy_from_slice(&col_left[1..=m.cols]);
        f(m);
        return;
    }
    if j > m.cols {
        fill_matrix(i + 1, 1, m, row_left, col_left, f);
        return;
    }
    let w = 1u64 << j;
    let max = (row_left[i] / w).min(col_left[j] as u64) as u32;
    for c in 0..=max {
        m.x[i][j] = c;
        row_left[i] -= c as u64 * w;
        col_left[j] -= c;
        fill_matrix(i, j + 1, m, row_left, col_left, f);
        row_left[i] += c as u64 * w;
        col_left[j] += c;
    }
    m.x[i][j] = 0;
}

type ProductCache = RwLock<HashMap<(ExpSeq, ExpSeq), Arc<Vec<ExpSeq>>>>;

fn basis_product(r: &ExpSeq, s: &ExpSeq) -> Arc<Vec<ExpSeq>> {
    static CACHE: LazyLock<ProductCache> =
        LazyLock::new(Default::default);
    let key = (r.clone(), s.clone());
    if let Some(v) = CACHE.read().unwrap().get(&key) {
        return v.clone();
    }
    let mut acc = BTreeSet::new();
    for_each_milnor_matrix(r, s, |m| {
        if m.weight_mod4() % 2 == 1 {
            let t = m.target();
            if !acc.remove(&t) {
                acc.insert(t);
            }
        }
    });
    let v = Arc::new(acc.into_iter().collect::<Vec<_>>());
    CACHE.write().unwrap().insert(key, v.clone());
    v
}

/// An element of the Steenrod algebra: a finite set of Milnor basis elements.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct AElt {
    terms: BTreeSet<ExpSeq>,
}

impl AElt {
    pub fn zero() -> Self {
        AElt::default()
    }

    pub fn one() -> Self {
        AElt::basis(ExpSeq::empty())
    }

    pub fn basis(r: ExpSeq) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(r);
        AElt { terms }
    }

    /// `Sq(r_1, r_2, ...)`.
    pub fn sq(r: &[u32]) -> Self {
        AElt::basis(ExpSeq::from(r))
    }

    /// The single square `Sq^n = Sq(n)`.
    pub fn sqn(n: u32) -> Self {
        AElt::sq(&[n])
    }

    pub fn from_terms<I: IntoIterator<Item = ExpSeq>>(it: I) -> Self {
        let mut a = AElt::zero();
        for r in it {
            a.add_basis(r);
        }
        a
    }

    pub fn add_basis(&mut self, r: ExpSeq) {
        if !self.terms.remove(&r) {
            self.terms.insert(r);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, r: &ExpSeq) -> bool {
        self.terms.contains(r)
    }

    pub fn terms(&self) -> impl Iterator<Item = &ExpSeq> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if there is one (zero has none).
    pub fn degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(ExpSeq::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u64, AElt> {
        let mut out: BTreeMap<u64, AElt> = BTreeMap::new();
        for r in &self.terms {
            out.entry(r.degree()).or_default().add_basis(r.clone());
        }
        out
    }

    pub fn add(&self, other: &AElt) -> AElt {
        AElt {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &AElt) {
        for r in &other.terms {
            self.add_basis(r.clone());
        }
    }

    pub fn mul(&self, other: &AElt) -> AElt {
        milnor_product(self, other)
    }
}

impl fmt::Debug for AElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, r) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if r.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{r}")?;
            }
        }
        Ok(())
    }
}

/// Product in `A`, through Milnor matrices. Basis products are memoized.
pub fn milnor_product(a: &AElt, b: &AElt) -> AElt {
    let mut out = AElt::zero();
    for r in a.terms() {
        for s in b.terms() {
            for t in basis_product(r, s).iter() {
                out.add_basis(t.clone());
            }
        }
    }
    out
}

/// Coefficient of `xi^R (x) xi^S` in the coproduct of `xi^T` in `A_*`,
/// where `Delta xi_n = sum_{i+j=n} xi_i^{2^j} (x) xi_j`.
///
/// The expansion runs over the binary digits of each exponent (Frobenius)
/// and discards partial products that already exceed `R` or `S`.
pub fn dual_coproduct_coefficient(t: &ExpSeq, r: &ExpSeq, s: &ExpSeq) -> bool {
    let mut states: HashMap<(ExpSeq, ExpSeq), bool> = HashMap::new();
    states.insert((ExpSeq::empty(), ExpSeq::empty()), true);
    for n in 1..=t.len() {
        let tn = t.get(n);
        for e in 0..32 {
            if tn >> e & 1 == 0 {
                continue;
            }
            let mut next: HashMap<(ExpSeq, ExpSeq), bool> = HashMap::new();
            for ((left, right), _) in states.into_iter().filter(|(_, c)| *c) {
                for i in 0..=n {
                    let j = n - i;
                    let l = left.bump(i, 1 << (j + e));
                    let rr = right.bump(j, 1 << e);
                    if l.le(r) && rr.le(s) {
                        let c = next.entry((l, rr)).or_insert(false);
                        *c = !*c;
                    }
                }
            }
            states = next;
        }
    }
    states
        .get(&(r.clone(), s.clone()))
        .copied()
        .unwrap_or(false)
}

/// Product in `A` by duality: the coefficient of `Sq(T)` in `ab` is the
/// pairing of `a (x) b` with the coproduct of `xi^T`, over every `T` of the
/// target degree.
pub fn milnor_product_by_pairing(a: &AElt, b: &AElt) -> AElt {
    let mut out = AElt::zero();
    for r in a.terms() {
        for s in b.terms() {
            for t in sequences_of_degree(r.degree() + s.degree()).iter() {
                if dual_coproduct_coefficient(t, r, s) {
                    out.add_basis(t.clone());
                }
            }
        }
    }
    out
}

/// An element of the dual Steenrod algebra `A_* = F_2[xi_1, xi_2, ...]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ADualElt {
    terms: BTreeSet<ExpSeq>,
}

impl ADualElt {
    pub fn zero() -> Self {
        ADualElt::default()
    }

    pub fn monomial(r: ExpSeq) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(r);
        ADualElt { terms }
    }

    /// `xi_n`; `xi_0 = 1`.
    pub fn xi(n: usize) -> Self {
        ADualElt::monomial(ExpSeq::delta(n))
    }

    /// `xi_n^e`.
    pub fn xi_pow(n: usize, e: u32) -> Self {
        ADualElt::monomial(ExpSeq::delta(n).scale(e))
    }

    pub fn terms(&self) -> impl Iterator<Item = &ExpSeq> {
        self.terms.iter()
    }

    pub fn add_monomial(&mut self, r: ExpSeq) {
        if !self.terms.remove(&r) {
            self.terms.insert(r);
        }
    }

    pub fn add(&self, other: &ADualElt) -> ADualElt {
        ADualElt {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        }
    }

    pub fn mul(&self, other: &ADualElt) -> ADualElt {
        let mut out = ADualElt::zero();
        for r in &self.terms {
            for s in &other.terms {
                out.add_monomial(r.add(s));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for ADualElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<_> = self.terms.iter().collect();
        write!(f, "xi{v:?}")
    }
}

/// `cont(p, a)`, adjoint to multiplication by `p`:
/// `<cont(p, a), q> = <a, pq>`. On basis elements
/// `cont(xi^S, Sq(R)) = Sq(R - S)` when `S <= R`, and zero otherwise.
pub fn contract(p: &ADualElt, a: &AElt) -> AElt {
    let mut out = AElt::zero();
    for s in p.terms() {
        for r in a.terms() {
            if let Some(d) = r.checked_sub(s) {
                out.add_basis(d);
            }
        }
    }
    out
}

/// Contraction by the monomial `xi^S`.
pub fn contract_monomial(s: &ExpSeq, a: &AElt) -> AElt {
    AElt::from_terms(a.terms().filter_map(|r| r.checked_sub(s)))
}

/// The Kristensen derivation `kappa(a) = cont(xi_1, a)`.
pub fn kappa(a: &AElt) -> AElt {
    contract_monomial(&ExpSeq::delta(1), a)
}

/// Kronecker pairing `<Sq(R), xi^S> = delta_{R,S}`.
pub fn pair(a: &AElt, p: &ADualElt) -> bool {
    a.terms().filter(|r| p.terms.contains(*r)).count() % 2 == 1
}

/// `Q_k = Sq(Delta_{k+1})`.
pub fn q_element(k: usize) -> AElt {
    AElt::basis(ExpSeq::delta(k + 1))
}

/// `P_t^s = Sq(2^s Delta_t)`, for `t >= 1`.
pub fn p_element(t: usize, s: u32) -> Result<AElt> {
    if t == 0 {
        return Err(AlgebraError::InvalidIndex("P_t^s needs t >= 1".into()));
    }
    Ok(AElt::basis(ExpSeq::delta(t).scale(1 << s)))
}

/// An element of `A (x) A`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct TensorAA {
    terms: BTreeSet<(ExpSeq, ExpSeq)>,
}

impl TensorAA {
    pub fn zero() -> Self {
        TensorAA::default()
    }

    pub fn basis(r: ExpSeq, s: ExpSeq) -> Self {
        let mut t = TensorAA::zero();
        t.add_basis(r, s);
        t
    }

    /// `a (x) b` for arbitrary elements.
    pub fn tensor(a: &AElt, b: &AElt) -> Self {
        let mut t = TensorAA::zero();
        for r in a.terms() {
            for s in b.terms() {
                t.add_basis(r.clone(), s.clone());
            }
        }
        t
    }

    pub fn add_basis(&mut self, r: ExpSeq, s: ExpSeq) {
        let key = (r, s);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &(ExpSeq, ExpSeq)> {
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

    pub fn add(&self, other: &TensorAA) -> TensorAA {
        TensorAA {
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &TensorAA) {
        for (r, s) in &other.terms {
            self.add_basis(r.clone(), s.clone());
        }
    }

    /// Componentwise product `(x (x) y)(x' (x) y') = xx' (x) yy'`.
    pub fn mul(&self, other: &TensorAA) -> TensorAA {
        let mut out = TensorAA::zero();
        for (r, s) in &self.terms {
            for (r2, s2) in &other.terms {
                let left = milnor_product(&AElt::basis(r.clone()), &AElt::basis(r2.clone()));
                let right = milnor_product(&AElt::basis(s.clone()), &AElt::basis(s2.clone()));
                for a in left.terms() {
                    for b in right.terms() {
                        out.add_basis(a.clone(), b.clone());
                    }
                }
            }
        }
        out
    }

    /// Left action of `A` through the coproduct.
    pub fn left_act(&self, a: &AElt) -> TensorAA {
        coproduct(a).mul(self)
    }

    /// Right action of `A` through the coproduct.
    pub fn right_act(&self, a: &AElt) -> TensorAA {
        self.mul(&coproduct(a))
    }

    /// The twist `T(x (x) y) = y (x) x`.
    pub fn twist(&self) -> TensorAA {
        TensorAA {
            terms: self
                .terms
                .iter()
                .map(|(r, s)| (s.clone(), r.clone()))
                .collect(),
        }
    }

    /// `(1 + T)` applied to `self`.
    pub fn symmetrize(&self) -> TensorAA {
        self.add(&self.twist())
    }

    /// The common total degree of all terms, if any.
    pub fn degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(|(r, s)| r.degree() + s.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl fmt::Debug for TensorAA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TensorAA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} (x) {}", AElt::basis(r.clone()), AElt::basis(s.clone()))?;
        }
        Ok(())
    }
}

/// The coproduct `Delta(Sq(R)) = sum_{E+F=R} Sq(E) (x) Sq(F)`.
pub fn coproduct(a: &AElt) -> TensorAA {
    let mut out = TensorAA::zero();
    for r in a.terms() {
        for e in r.sub_sequences() {
            let f = r.checked_sub(&e).expect("sub-sequence");
            out.add_basis(e, f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(r: &[u32]) -> AElt {
        AElt::sq(r)
    }

    #[test]
    fn degrees() {
        assert_eq!(ExpSeq::empty().degree(), 0);
        assert_eq!(ExpSeq::from(vec![3]).degree(), 3);
        assert_eq!(ExpSeq::from(vec![0, 2]).degree(), 6);
        assert_eq!(ExpSeq::from(vec![0, 2, 0, 0]), ExpSeq::from(vec![0, 2]));
    }

    #[test]
    fn small_products() {
        assert!(sq(&[1]).mul(&sq(&[1])).is_zero());
        assert_eq!(sq(&[1]).mul(&sq(&[2])), sq(&[3]));
        assert_eq!(q_element(0).mul(&q_element(1)), sq(&[1, 1]));
        // Sq(2)Sq(2) = Sq(1,1)
        assert_eq!(sq(&[2]).mul(&sq(&[2])), sq(&[1, 1]));
    }

    #[test]
    fn pairing_route_agrees_on_small_products() {
        for (r, s) in [(vec![1], vec![2]), (vec![2], vec![2]), (vec![3], vec![0, 1])] {
            let a = sq(&r);
            let b = sq(&s);
            assert_eq!(milnor_product(&a, &b), milnor_product_by_pairing(&a, &b));
        }
    }

    #[test]
    fn binomials_mod_4() {
        for n in 0..40u64 {
            let mut row = vec![1u64];
            for k in 1..=n {
                row.push(row[k as usize - 1] * (n - k + 1) / k);
            }
            for k in 0..=n {
                assert_eq!(binomial_mod4(n, k) as u64, row[k as usize] % 4, "C({n},{k})");
            }
        }
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract(&ADualElt::xi(1), &sq(&[3])), sq(&[2]));
        assert_eq!(contract(&ADualElt::xi(2), &sq(&[0, 1])), AElt::one());
        assert!(contract(&ADualElt::xi(1), &AElt::one()).is_zero());
        assert_eq!(kappa(&sq(&[1])), AElt::one());
        assert_eq!(kappa(&sq(&[2])), sq(&[1]));
        assert!(kappa(&sq(&[0, 1])).is_zero());
    }

    #[test]
    fn pairing_examples() {
        assert!(pair(&sq(&[3]), &ADualElt::xi_pow(1, 3)));
        assert!(!pair(&sq(&[3]), &ADualElt::xi(2)));
        assert!(pair(&sq(&[1, 1]), &ADualElt::xi(1).mul(&ADualElt::xi(2))));
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&sq(&[2]));
        let mut want = TensorAA::zero();
        want.add_basis(ExpSeq::from(vec![2]), ExpSeq::empty());
        want.add_basis(ExpSeq::from(vec![1]), ExpSeq::from(vec![1]));
        want.add_basis(ExpSeq::empty(), ExpSeq::from(vec![2]));
        assert_eq!(d, want);
        assert_eq!(
            coproduct(&AElt::one()),
            TensorAA::basis(ExpSeq::empty(), ExpSeq::empty())
        );
        assert_eq!(coproduct(&sq(&[0, 1])).len(), 2);
    }

    #[test]
    fn q_and_p_elements() {
        assert_eq!(q_element(0), sq(&[1]));
        assert_eq!(q_element(1), sq(&[0, 1]));
        assert_eq!(p_element(2, 1).unwrap(), sq(&[0, 2]));
        assert!(p_element(0, 1).is_err());
    }

    #[test]
    fn sequences_enumeration() {
        // degree 7: (7), (4,1), (1,2), (0,0,1)
        let s = sequences_of_degree(7);
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|r| r.degree() == 7));
    }
}
