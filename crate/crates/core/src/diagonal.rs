//! The operators `nabla`, `coz`, `L`, `S` on relations of `E_0`, the
//! multiplication maps `op` and `op#`, and the linearity defect `Phi`.

use std::fmt;

use crate::d0::{index_contractions, RDElt};
use crate::d1::mult_map_op_closed;
use crate::ehat::{in_e0, EHatElt};
use crate::error::{AlgebraError, Result};
use crate::milnor::{coproduct, kappa, milnor_product, q_element, AElt, ExpSeq, TensorAA};

/// An element `plain + mu_0 mu0` of `A (x) A + mu_0 A (x) A`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct MuTensorAA {
    pub plain: TensorAA,
    pub mu0: TensorAA,
}

impl MuTensorAA {
    pub fn zero() -> Self {
        MuTensorAA::default()
    }

    pub fn from_plain(plain: TensorAA) -> Self {
        MuTensorAA {
            plain,
            mu0: TensorAA::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plain.is_zero() && self.mu0.is_zero()
    }

    pub fn add(&self, other: &MuTensorAA) -> MuTensorAA {
        MuTensorAA {
            plain: self.plain.add(&other.plain),
            mu0: self.mu0.add(&other.mu0),
        }
    }

    pub fn add_assign(&mut self, other: &MuTensorAA) {
        self.plain.add_assign(&other.plain);
        self.mu0.add_assign(&other.mu0);
    }

    /// `a (t + mu_0 s) = Delta(a) t + Delta(kappa a) s + mu_0 Delta(a) s`.
    pub fn left_act(&self, a: &AElt) -> MuTensorAA {
        MuTensorAA {
            plain: self.plain.left_act(a).add(&self.mu0.left_act(&kappa(a))),
            mu0: self.mu0.left_act(a),
        }
    }

    pub fn right_act(&self, a: &AElt) -> MuTensorAA {
        MuTensorAA {
            plain: self.plain.right_act(a),
            mu0: self.mu0.right_act(a),
        }
    }
}

impl fmt::Display for MuTensorAA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.plain.is_zero(), self.mu0.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.plain),
            (true, false) => write!(f, "mu0 ({})", self.mu0),
            (false, false) => write!(f, "{} + mu0 ({})", self.plain, self.mu0),
        }
    }
}

fn q_tensor(l: i32, k: i32) -> TensorAA {
    TensorAA::tensor(&q_element(l as usize), &q_element(k as usize))
}

fn check_relation(r: &EHatElt) -> Result<()> {
    if !r.is_relation() {
        return Err(AlgebraError::NotARelation(format!("{r}")));
    }
    if !in_e0(r) {
        return Err(AlgebraError::NotARelation(format!("{r} is not in E_0")));
    }
    Ok(())
}

/// The right-linear `nabla` on relations of `E_0`: `X_{k,l}` and
/// `Y_{k,l}` (`0 <= k`) go to `Q_l (x) Q_k`, `mu_0 X_{k,l}` to
/// `mu_0 Q_l (x) Q_k`, and `2 D_0`, `X_{-1,k} + Y_{-1,k}` to zero.
pub fn nabla(r: &EHatElt) -> Result<MuTensorAA> {
    check_relation(r)?;
    let mut out = MuTensorAA::zero();
    let tail = |s: &ExpSeq| AElt::basis(s.clone());
    for key in r.d0.y_terms().filter(|key| key.k >= 0) {
        out.plain.add_assign(&q_tensor(key.l, key.k).right_act(&tail(&key.r)));
    }
    for key in r.x_terms().filter(|key| key.k >= 0) {
        out.plain.add_assign(&q_tensor(key.l, key.k).right_act(&tail(&key.r)));
    }
    for key in r.mu0x_terms() {
        out.mu0.add_assign(&q_tensor(key.l, key.k).right_act(&tail(&key.r)));
    }
    Ok(out)
}

/// The plain part of `nabla`.
pub fn coz(r: &EHatElt) -> Result<TensorAA> {
    Ok(nabla(r)?.plain)
}

/// The left action operator: the `mu_0` part of `nabla`.
pub fn left_operator(r: &EHatElt) -> Result<TensorAA> {
    Ok(nabla(r)?.mu0)
}

/// The symmetry operator `(1 + T) coz`.
pub fn symmetry_operator(r: &EHatElt) -> Result<TensorAA> {
    Ok(coz(r)?.symmetrize())
}

/// `op(a, r)` for a relation `r` of `E_0`; it only sees the `D_0` part.
pub fn op_e(a: &AElt, r: &EHatElt) -> Result<AElt> {
    let rd = RDElt::new(r.d0.clone())?;
    Ok(mult_map_op_closed(a, &rd))
}

/// `op#(a, Delta r)`: `Delta(kappa(a) pi(d))` on `2d`,
/// `sum_{k+i >= l+j} (B (x) 1 + 1 (x) B) Delta(cont(xi_i^{2^{k+1}} xi_j^{2^{l+1}}, a))`
/// with `B = Sq(Delta_{k+i+1} + Delta_{l+j+1})` on `Y_{k,l}`, zero on `X + mu_0 X`,
/// extended right-linearly.
pub fn op_sharp(a: &AElt, r: &EHatElt) -> Result<TensorAA> {
    if !r.is_relation() {
        return Err(AlgebraError::NotARelation(format!("{r}")));
    }
    let halves = AElt::from_terms(r.d0.sq_terms().filter(|(_, c)| *c == 2).map(|(s, _)| s.clone()));
    let mut out = coproduct(&milnor_product(&kappa(a), &halves));
    let one = AElt::one();
    for key in r.d0.y_terms() {
        let mut t = TensorAA::zero();
        for (i, j, c) in index_contractions(a, key.k, key.l) {
            let (ki, lj) = (key.k + i as i32, key.l + j as i32);
            if ki >= lj {
                let b = AElt::basis(ExpSeq::delta((ki + 1) as usize).add(&ExpSeq::delta((lj + 1) as usize)));
                let sym = TensorAA::tensor(&b, &one).add(&TensorAA::tensor(&one, &b));
                t.add_assign(&sym.mul(&coproduct(&c)));
            }
        }
        out.add_assign(&t.right_act(&AElt::basis(key.r.clone())));
    }
    Ok(out)
}

/// The left linearity defect `Phi(a, r) = nabla(a r) - a nabla(r)`.
pub fn linearity_defect(a: &AElt, r: &EHatElt) -> Result<MuTensorAA> {
    let ar = EHatElt::from_a(a).star(r);
    Ok(nabla(&ar)?.add(&nabla(r)?.left_act(a)))
}

/// `Delta op(a, r) + op#(a, Delta r)`.
pub fn linearity_defect_closed(a: &AElt, r: &EHatElt) -> Result<TensorAA> {
    Ok(coproduct(&op_e(a, r)?).add(&op_sharp(a, r)?))
}

/// `L_R(Sq^n (x) Sq^m) = sum Sq^{n1} Sq^{m1} (x) Sq^{n2} Sq^{m2}` over
/// `n1 + n2 = n`, `m1 + m2 = m` with `m1`, `n2` odd, summed over `pairs`.
pub fn left_relation_map(pairs: &[(u32, u32)]) -> TensorAA {
    let mut out = TensorAA::zero();
    for &(n, m) in pairs {
        for n2 in (1..=n).step_by(2) {
            for m1 in (1..=m).step_by(2) {
                let left = milnor_product(&AElt::sqn(n - n2), &AElt::sqn(m1));
                let right = milnor_product(&AElt::sqn(n2), &AElt::sqn(m - m1));
                out.add_assign(&TensorAA::tensor(&left, &right));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::d0::D0Elt;
    use crate::ehat::adem_element;

    fn s(r: &[u32]) -> ExpSeq {
        ExpSeq::from(r)
    }

    #[test]
    fn nabla_basis_values() {
        let x01 = EHatElt::x(0, 1, s(&[])).unwrap();
        assert_eq!(coz(&x01).unwrap(), q_tensor(1, 0));
        let two = EHatElt::from_d0(D0Elt::sq(s(&[4]), 2));
        assert!(nabla(&two).unwrap().is_zero());
        let z = EHatElt::x(-1, 0, s(&[])).unwrap().add(&EHatElt::from_d0(D0Elt::y(-1, 0, s(&[])).unwrap()));
        assert!(nabla(&z).unwrap().is_zero());
        assert!(nabla(&EHatElt::from_a(&AElt::sqn(1))).is_err());
        assert!(nabla(&EHatElt::x(-1, 0, s(&[])).unwrap()).is_err());
    }

    #[test]
    fn left_operator_on_first_adem_element() {
        let want = TensorAA::tensor(&AElt::sqn(1), &AElt::sqn(1));
        assert_eq!(left_operator(&adem_element(1, 1).unwrap()).unwrap(), want);
    }

    #[test]
    fn left_relation_map_examples() {
        let want = TensorAA::tensor(&AElt::sqn(1), &AElt::sqn(1));
        assert_eq!(left_relation_map(&[(1, 1)]), want);
        assert!(left_relation_map(&[(2, 2)]).is_zero());
        assert!(left_relation_map(&[(1, 2)]).is_zero());
    }

    #[test]
    fn op_sharp_examples() {
        let y = EHatElt::from_d0(D0Elt::y(-1, 0, s(&[])).unwrap());
        let sq2 = AElt::sqn(2);
        let want = TensorAA::tensor(&sq2, &AElt::one()).add(&TensorAA::tensor(&AElt::one(), &sq2));
        assert_eq!(op_sharp(&AElt::sqn(1), &y).unwrap(), want);
        let x = EHatElt::x(0, 1, s(&[])).unwrap();
        assert!(op_sharp(&AElt::sqn(3), &x).unwrap().is_zero());
        let two = EHatElt::from_d0(D0Elt::sq(s(&[]), 2));
        assert_eq!(op_sharp(&AElt::sqn(1), &two).unwrap(), TensorAA::basis(s(&[]), s(&[])));
    }

    #[test]
    fn phi_vanishes_on_x_and_unit() {
        let x = EHatElt::x(0, 1, s(&[1])).unwrap();
        assert!(linearity_defect(&AElt::sq(&[3, 1]), &x).unwrap().is_zero());
        let r = adem_element(3, 2).unwrap();
        assert!(linearity_defect(&AElt::one(), &r).unwrap().is_zero());
    }
}
