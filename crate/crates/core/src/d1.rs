//! The `A`-bimodule `D_1 = (A + mu_0 A + sum U_{k,l} A) / ~`, its boundary to
//! `D_0`, the splitting `u` of the boundary and the multiplication map.
//!
//! Elements are kept in the normal form `iota(a) + mu_0 b + sum U_{k,l} c`
//! with `-1 <= k < l`. `iota(a)` sits in degree `|a| + 1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::d0::{index_contractions, pi, sigma, y_degree, D0Elt, RDElt, YKey};
use crate::error::{AlgebraError, Result};
use crate::milnor::{kappa, milnor_product, AElt, ExpSeq};

/// Basis key `U_{k,l} Sq(R)`; same shape and grading as `Y_{k,l} Sq(R)`.
pub type UKey = YKey;

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct D1Elt {
    iota: AElt,
    mu0: AElt,
    u: BTreeSet<UKey>,
}

impl D1Elt {
    pub fn zero() -> Self {
        D1Elt::default()
    }

    /// The image of `a` under `A -> D_1`.
    pub fn iota(a: &AElt) -> Self {
        D1Elt {
            iota: a.clone(),
            ..Default::default()
        }
    }

    /// `mu_0 a`.
    pub fn mu0(a: &AElt) -> Self {
        D1Elt {
            mu0: a.clone(),
            ..Default::default()
        }
    }

    /// `U_{k,l} Sq(R)` rewritten into normal form.
    pub fn u(k: i32, l: i32, r: ExpSeq) -> Result<Self> {
        normalize_u(k, l, &AElt::basis(r))
    }

    pub fn iota_part(&self) -> &AElt {
        &self.iota
    }

    pub fn mu0_part(&self) -> &AElt {
        &self.mu0
    }

    pub fn u_terms(&self) -> impl Iterator<Item = &UKey> {
        self.u.iter()
    }

    fn add_u(&mut self, k: i32, l: i32, r: ExpSeq) {
        let key = UKey { k, l, r };
        if !self.u.remove(&key) {
            self.u.insert(key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.iota.is_zero() && self.mu0.is_zero() && self.u.is_empty()
    }

    pub fn add(&self, other: &D1Elt) -> D1Elt {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &D1Elt) {
        self.iota.add_assign(&other.iota);
        self.mu0.add_assign(&other.mu0);
        for key in &other.u {
            self.add_u(key.k, key.l, key.r.clone());
        }
    }

    /// The common degree of all terms, if any.
    pub fn degree(&self) -> Option<u64> {
        let mut it = self
            .iota
            .terms()
            .map(|r| r.degree() + 1)
            .chain(self.mu0.terms().map(ExpSeq::degree))
            .chain(self.u.iter().map(UKey::degree));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// `a * self`.
    pub fn left_act(&self, a: &AElt) -> D1Elt {
        let mut out = D1Elt::iota(&milnor_product(a, &self.iota));
        out.mu0 = milnor_product(a, &self.mu0);
        out.iota
            .add_assign(&milnor_product(&kappa(a), &self.mu0));
        for key in &self.u {
            let tail = AElt::basis(key.r.clone());
            for (i, j, c) in index_contractions(a, key.k, key.l) {
                let coeff = milnor_product(&c, &tail);
                let term = normalize_u(key.k + i as i32, key.l + j as i32, &coeff)
                    .expect("indices only grow under the left action");
                out.add_assign(&term);
            }
        }
        out
    }

    /// `self * a`.
    pub fn right_act(&self, a: &AElt) -> D1Elt {
        let mut out = D1Elt {
            iota: milnor_product(&self.iota, a),
            mu0: milnor_product(&self.mu0, a),
            u: BTreeSet::new(),
        };
        for key in &self.u {
            for t in milnor_product(&AElt::basis(key.r.clone()), a).terms() {
                out.add_u(key.k, key.l, t.clone());
            }
        }
        out
    }

    /// Left action of `D_0` through `pi`.
    pub fn left_act_d0(&self, d: &D0Elt) -> D1Elt {
        self.left_act(&pi(d))
    }

    /// Right action of `D_0` through `pi`.
    pub fn right_act_d0(&self, d: &D0Elt) -> D1Elt {
        self.right_act(&pi(d))
    }
}

impl fmt::Debug for D1Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for D1Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.iota.is_zero() {
            parts.push(format!("iota({})", self.iota));
        }
        if !self.mu0.is_zero() {
            parts.push(format!("mu0({})", self.mu0));
        }
        for key in &self.u {
            parts.push(format!("U_{{{},{}}}{}", key.k, key.l, key.r));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `U_{k,l} a` in normal form:
/// `U_{k,l} = U_{l,k} + iota(Sq(Delta_{k+1} + Delta_{l+1}))` for `l < k` and
/// `U_{k,k} = mu_0 Sq(Delta_{k+2}) + iota(Sq(2 Delta_{k+1}))`.
/// The second index must be at least `0`.
pub fn normalize_u(k: i32, l: i32, a: &AElt) -> Result<D1Elt> {
    if k < -1 || l < 0 {
        return Err(AlgebraError::InvalidIndex(format!(
            "U_{{{k},{l}}} is not a generator (need k >= -1, l >= 0)"
        )));
    }
    let mut out = D1Elt::zero();
    if k < l {
        for r in a.terms() {
            out.add_u(k, l, r.clone());
        }
        return Ok(out);
    }
    let (ku, lu) = (k as usize, l as usize);
    if k == l {
        out.mu0 = milnor_product(&AElt::basis(ExpSeq::delta(ku + 2)), a);
        out.iota = milnor_product(&AElt::basis(ExpSeq::delta(ku + 1).scale(2)), a);
    } else {
        for r in a.terms() {
            out.add_u(l, k, r.clone());
        }
        let sq = ExpSeq::delta(ku + 1).add(&ExpSeq::delta(lu + 1));
        out.iota = milnor_product(&AElt::basis(sq), a);
    }
    Ok(out)
}

/// The boundary `D_1 -> D_0`: zero on `iota(A)`, `mu_0 a -> 2a`,
/// `U_{k,l} a -> Y_{k,l} a`.
pub fn boundary(x: &D1Elt) -> D0Elt {
    let mut out = sigma(&x.mu0).scale(2);
    for key in &x.u {
        out.add_y(key.k, key.l, key.r.clone());
    }
    out
}

/// The right-linear splitting `2 Sq(R) -> mu_0 Sq(R)`, `Y_{k,l} Sq(R) -> U_{k,l} Sq(R)`.
pub fn u_split(r: &RDElt) -> D1Elt {
    let d = r.as_d0();
    let mut out = D1Elt::zero();
    for (s, c) in d.sq_terms() {
        debug_assert_eq!(c % 2, 0);
        if c == 2 {
            out.mu0.add_basis(s.clone());
        }
    }
    for key in d.y_terms() {
        out.add_u(key.k, key.l, key.r.clone());
    }
    out
}

/// Checked form of [`u_split`] for an arbitrary element of `D_0`.
pub fn u_split_checked(x: &D0Elt) -> Result<D1Elt> {
    Ok(u_split(&RDElt::new(x.clone())?))
}

/// The multiplication map, defined by `a u(r) = u(a r) + iota(op(a, r))`.
pub fn mult_map_op(a: &AElt, r: &RDElt) -> Result<AElt> {
    let lhs = u_split(r).left_act(a);
    let ar = RDElt::new(sigma(a).mul(r.as_d0()))?;
    let diff = lhs.add(&u_split(&ar));
    if !diff.mu0.is_zero() || !diff.u.is_empty() {
        return Err(AlgebraError::NotARelation(format!(
            "a u(r) - u(a r) = {diff} is not in iota(A)"
        )));
    }
    Ok(diff.iota)
}

/// Closed form of the multiplication map:
/// `op(a, 2d) = kappa(a) pi(d)` and
/// `op(a, Y_{k,l}) = sum_{k+i >= l+j} Sq(Delta_{k+i+1} + Delta_{l+j+1}) cont(xi_i^{2^{k+1}} xi_j^{2^{l+1}}, a)`,
/// extended right-linearly.
pub fn mult_map_op_closed(a: &AElt, r: &RDElt) -> AElt {
    let d = r.as_d0();
    let halves = AElt::from_terms(d.sq_terms().filter(|(_, c)| *c == 2).map(|(s, _)| s.clone()));
    let mut out = milnor_product(&kappa(a), &halves);
    for key in d.y_terms() {
        out.add_assign(&milnor_product(&op_y(a, key.k, key.l), &AElt::basis(key.r.clone())));
    }
    out
}

/// `op(a, Y_{k,l})` from the closed form.
pub fn op_y(a: &AElt, k: i32, l: i32) -> AElt {
    let mut out = AElt::zero();
    for (i, j, c) in index_contractions(a, k, l) {
        let (ki, lj) = (k + i as i32, l + j as i32);
        if ki >= lj {
            let b = ExpSeq::delta((ki + 1) as usize).add(&ExpSeq::delta((lj + 1) as usize));
            out.add_assign(&milnor_product(&AElt::basis(b), &c));
        }
    }
    out
}

/// Degree of the generator `U_{k,l}`.
pub fn u_degree(k: i32, l: i32) -> u64 {
    y_degree(k, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: &[u32]) -> ExpSeq {
        ExpSeq::from(r)
    }

    #[test]
    fn normalization_examples() {
        let u00 = D1Elt::u(0, 0, s(&[])).unwrap();
        assert_eq!(u00, D1Elt::mu0(&AElt::sq(&[0, 1])).add(&D1Elt::iota(&AElt::sq(&[2]))));
        let u10 = D1Elt::u(1, 0, s(&[2])).unwrap();
        let want = D1Elt::u(0, 1, s(&[2]))
            .unwrap()
            .add(&D1Elt::iota(&AElt::sq(&[1, 1]).mul(&AElt::sq(&[2]))));
        assert_eq!(u10, want);
        assert_eq!(D1Elt::u(-1, 0, s(&[])).unwrap().u_terms().count(), 1);
        assert!(D1Elt::u(-1, -1, s(&[])).is_err());
        assert!(D1Elt::u(2, -1, s(&[])).is_err());
    }

    #[test]
    fn action_examples() {
        let sq1 = AElt::sq(&[1]);
        let mu = D1Elt::mu0(&AElt::one()).left_act(&sq1);
        assert_eq!(mu, D1Elt::mu0(&sq1).add(&D1Elt::iota(&AElt::one())));
        let u = D1Elt::u(-1, 0, s(&[])).unwrap().left_act(&sq1);
        let want = D1Elt::u(-1, 0, s(&[1]))
            .unwrap()
            .add(&D1Elt::mu0(&AElt::sq(&[0, 1])))
            .add(&D1Elt::iota(&AElt::sq(&[2])));
        assert_eq!(u, want);
        assert_eq!(
            D1Elt::iota(&sq1).right_act(&AElt::sq(&[2])),
            D1Elt::iota(&AElt::sq(&[3]))
        );
    }

    #[test]
    fn boundary_examples() {
        let t = D1Elt::mu0(&AElt::sq(&[0, 4])).add(&D1Elt::u(0, 2, s(&[0, 1])).unwrap());
        let want = D0Elt::sq(s(&[0, 4]), 2).add(&D0Elt::y(0, 2, s(&[0, 1])).unwrap());
        assert_eq!(boundary(&t), want);
        assert!(boundary(&D1Elt::iota(&AElt::sq(&[3]))).is_zero());
        assert_eq!(
            boundary(&D1Elt::u(-1, 0, s(&[])).unwrap()),
            D0Elt::y(-1, 0, s(&[])).unwrap()
        );
    }

    #[test]
    fn splitting_examples() {
        let r = RDElt::new(D0Elt::sq(s(&[0, 4]), 2)).unwrap();
        assert_eq!(u_split(&r), D1Elt::mu0(&AElt::sq(&[0, 4])));
        let r = RDElt::new(D0Elt::y(0, 2, s(&[0, 1])).unwrap()).unwrap();
        assert_eq!(u_split(&r), D1Elt::u(0, 2, s(&[0, 1])).unwrap());
        assert!(u_split(&RDElt::default()).is_zero());
        assert!(u_split_checked(&D0Elt::sq(s(&[1]), 1)).is_err());
    }

    #[test]
    fn op_examples() {
        let sq1 = AElt::sq(&[1]);
        let two = RDElt::new(D0Elt::sq(s(&[]), 2)).unwrap();
        assert_eq!(mult_map_op(&sq1, &two).unwrap(), AElt::one());
        let y = RDElt::new(D0Elt::y(-1, 0, s(&[])).unwrap()).unwrap();
        assert_eq!(mult_map_op(&sq1, &y).unwrap(), AElt::sq(&[2]));
        assert_eq!(mult_map_op_closed(&sq1, &y), AElt::sq(&[2]));
        let r = RDElt::new(D0Elt::sq(s(&[1]), 2)).unwrap();
        assert!(mult_map_op(&AElt::sq(&[0, 1]), &r).unwrap().is_zero());
    }
}
