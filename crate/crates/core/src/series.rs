//! Truncated power series over a small `Z/4` test ring, used to model the
//! group of series `x + sum t_k x^{2^k} + sum t_{k,l} x^{2^k + 2^l}` that
//! `D_0^*` represents.
//!
//! The test ring is `Z/4[xi_n, eta_{k,l}]` on two sets of variables (`side`
//! 0 and 1) with `2 eta = 0` and `eta eta' = 0`; `eta_{k,l}` plays the role
//! of `2 xi_{k,l}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::d0::D0DualMonomial;
use crate::error::{AlgebraError, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Xi(u8, usize),
    Eta(u8, usize, usize),
}

type Monomial = BTreeMap<Var, u32>;

fn eta_count(m: &Monomial) -> u32 {
    m.iter()
        .filter(|(v, _)| matches!(v, Var::Eta(..)))
        .map(|(_, e)| *e)
        .sum()
}

/// An element of the test ring.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TestRing {
    terms: BTreeMap<Monomial, u8>,
}

impl TestRing {
    pub fn zero() -> Self {
        TestRing::default()
    }

    pub fn constant(c: u8) -> Self {
        let mut r = TestRing::zero();
        r.add_term(Monomial::new(), c);
        r
    }

    pub fn var(v: Var) -> Self {
        let mut m = Monomial::new();
        m.insert(v, 1);
        let mut r = TestRing::zero();
        r.add_term(m, 1);
        r
    }

    fn add_term(&mut self, m: Monomial, c: u8) {
        let modulus = match eta_count(&m) {
            0 => 4,
            1 => 2,
            _ => return,
        };
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e = (*e + c) % modulus;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TestRing) -> TestRing {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> TestRing {
        self.scale(3)
    }

    pub fn sub(&self, other: &TestRing) -> TestRing {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u8) -> TestRing {
        let mut out = TestRing::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * (c % 4) % 4);
        }
        out
    }

    pub fn mul(&self, other: &TestRing) -> TestRing {
        let mut out = TestRing::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(*v).or_insert(0) += e;
                }
                out.add_term(m, c1 * c2 % 4);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TestRing {
        let mut out = TestRing::constant(1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Membership in the ideal `J = (2, eta)`.
    pub fn in_j(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| c % 2 == 0 || eta_count(m) > 0)
    }

    /// The value of a dual monomial on the variables of one side.
    pub fn evaluate_monomial(m: &D0DualMonomial, side: u8) -> TestRing {
        let (mut out, r) = match m {
            D0DualMonomial::Plain(r) => (TestRing::constant(1), r),
            D0DualMonomial::Two(k, l, r) => (TestRing::var(Var::Eta(side, *k, *l)), r),
        };
        for n in 1..=r.len() {
            out = out.mul(&TestRing::var(Var::Xi(side, n)).pow(r.get(n)));
        }
        out
    }
}

impl fmt::Debug for TestRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|(v, e)| format!("{v:?}^{e}")).collect();
                format!("{c}*{}", vars.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A power series truncated above `x^{len-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<TestRing>,
}

impl Series {
    pub fn zero(len: usize) -> Self {
        Series {
            coeffs: vec![TestRing::zero(); len],
        }
    }

    pub fn x(len: usize) -> Self {
        let mut s = Series::zero(len);
        if len > 1 {
            s.coeffs[1] = TestRing::constant(1);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<TestRing>) -> Self {
        Series { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> TestRing {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, c: TestRing) {
        if i < self.coeffs.len() {
            self.coeffs[i] = c;
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.len().min(other.len());
        Series::from_coeffs((0..n).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect())
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.len().min(other.len());
        Series::from_coeffs((0..n).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect())
    }

    pub fn scale(&self, c: &TestRing) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.len().min(other.len());
        let mut out = Series::zero(n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..(n - i) {
                if !other.coeffs[j].is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        out
    }

    /// `self(g(x))`, for `g` without constant term.
    pub fn compose(&self, g: &Series) -> Series {
        let n = self.len().min(g.len());
        let mut out = Series::zero(n);
        let mut power = Series::zero(n);
        if n > 0 {
            power.coeffs[0] = TestRing::constant(1);
        }
        for i in 0..self.len() {
            if !self.coeffs[i].is_zero() {
                out = out.add(&power.scale(&self.coeffs[i]));
            }
            power = power.mul(g);
        }
        out
    }

    /// `self(x^2)`.
    pub fn at_square(&self, len: usize) -> Series {
        let mut out = Series::zero(len);
        for (i, c) in self.coeffs.iter().enumerate() {
            if 2 * i < len {
                out.coeffs[2 * i] = c.clone();
            }
        }
        out
    }

    pub fn truncate(&self, len: usize) -> Series {
        Series::from_coeffs((0..len).map(|i| self.coeff(i)).collect())
    }

    /// `f(x) - x`.
    pub fn bar(&self) -> Series {
        self.sub(&Series::x(self.len()))
    }
}

/// The universal series on one side:
/// `sum_k xi_k x^{2^k} + sum_{k<l} eta_{k,l} x^{2^k+2^l}`, with `xi_0 = 1`.
pub fn universal_series(side: u8, len: usize) -> Series {
    let mut s = Series::zero(len);
    for k in 0.. {
        let p = 1usize << k;
        if p >= len {
            break;
        }
        s.coeffs[p] = if k == 0 {
            TestRing::constant(1)
        } else {
            TestRing::var(Var::Xi(side, k))
        };
        for l in (k + 1).. {
            let q = p + (1usize << l);
            if q >= len {
                break;
            }
            s.coeffs[q] = TestRing::var(Var::Eta(side, k, l));
        }
    }
    s
}

/// The decomposition `f(x) = x + tau(x^2) + x theta(x^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesParts {
    pub tau: Series,
    pub theta: Series,
    /// The coefficient of `x^2` in `f`.
    pub xi1: TestRing,
}

/// Splits a series of the required shape into `tau`, `theta` and `xi_1`.
pub fn series_decompose(f: &Series) -> Result<SeriesParts> {
    let n = f.len();
    if !f.coeff(0).is_zero() || (n > 1 && f.coeff(1) != TestRing::constant(1)) {
        return Err(AlgebraError::BadSeries("expected x + higher terms".into()));
    }
    let half = n.div_ceil(2);
    let mut tau = Series::zero(half);
    let mut theta = Series::zero(half);
    for p in 2..n {
        let c = f.coeff(p);
        if c.is_zero() {
            continue;
        }
        let ones = p.count_ones();
        if ones > 2 {
            return Err(AlgebraError::BadSeries(format!("term x^{p} not allowed")));
        }
        if ones == 2 && !c.in_j() {
            return Err(AlgebraError::BadSeries(format!(
                "coefficient of x^{p} is not in J"
            )));
        }
        if p % 2 == 0 {
            tau.set(p / 2, c);
        } else {
            theta.set(p / 2, c);
        }
    }
    let xi1 = f.coeff(2);
    Ok(SeriesParts { tau, theta, xi1 })
}
