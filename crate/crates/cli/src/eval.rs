//! Ring inference and evaluation of parsed expressions.

use std::fmt;

use clap::ValueEnum;

use secondary::d0::{sigma, D0Elt};
use secondary::d1::D1Elt;
use secondary::ehat::{adem_element, EHatElt};
use secondary::milnor::{milnor_product, p_element, q_element, AElt, ExpSeq};

use crate::error::{CliError, Result};
use crate::expr::{parse, Atom, Expr};

/// The algebra an expression is evaluated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Ring {
    /// The Steenrod algebra over F_2.
    A,
    /// D_0 over Z/4.
    D0,
    /// The bimodule D_1.
    D1,
    /// E^_0 = D_0 + X + mu_0 X.
    #[value(alias = "ehat")]
    E0,
}

impl Ring {
    pub fn tag(self) -> &'static str {
        match self {
            Ring::A => "A",
            Ring::D0 => "D0",
            Ring::D1 => "D1",
            Ring::E0 => "E0",
        }
    }

    /// `true` if elements of `self` can be read in `target`.
    pub fn embeds_in(self, target: Ring) -> bool {
        match (self, target) {
            (a, b) if a == b => true,
            (Ring::A, _) => true,
            (Ring::D0, Ring::D1 | Ring::E0) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An evaluated element together with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    A(AElt),
    D0(D0Elt),
    D1(D1Elt),
    E0(EHatElt),
}

impl Value {
    pub fn ring(&self) -> Ring {
        match self {
            Value::A(_) => Ring::A,
            Value::D0(_) => Ring::D0,
            Value::D1(_) => Ring::D1,
            Value::E0(_) => Ring::E0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::A(x) => x.is_zero(),
            Value::D0(x) => x.is_zero(),
            Value::D1(x) => x.is_zero(),
            Value::E0(x) => x.is_zero(),
        }
    }

    /// Reads `self` in `target`, if it embeds there.
    pub fn lift(self, target: Ring) -> Result<Value> {
        Ok(match (self, target) {
            (v, t) if v.ring() == t => v,
            (Value::A(a), Ring::D0) => Value::D0(sigma(&a)),
            (Value::A(a), Ring::E0) => Value::E0(EHatElt::from_a(&a)),
            (Value::D0(d), Ring::E0) => Value::E0(EHatElt::from_d0(d)),
            (v, t) => {
                return Err(CliError::ring(0, format!("a {} element cannot be read in {t}", v.ring())));
            }
        })
    }

    /// The product `self * other` in the smallest ring holding both factors
    /// (or in `ring` when given).
    pub fn mul(self, other: Value, ring: Option<Ring>) -> Result<Value> {
        let target = match ring {
            Some(r) => r,
            None => common_ring(self.ring(), other.ring())?,
        };
        if target == Ring::D1 {
            let (x, y) = (Mixed::from_value(self, 0)?, Mixed::from_value(other, 0)?);
            return x.mul(y, 0)?.into_d1(0).map(Value::D1);
        }
        Ok(match (self.lift(target)?, other.lift(target)?) {
            (Value::A(x), Value::A(y)) => Value::A(milnor_product(&x, &y)),
            (Value::D0(x), Value::D0(y)) => Value::D0(x.mul(&y)),
            (Value::E0(x), Value::E0(y)) => Value::E0(x.star(&y)),
            _ => unreachable!("both factors were lifted to {target}"),
        })
    }
}

fn common_ring(a: Ring, b: Ring) -> Result<Ring> {
    if a.embeds_in(b) {
        Ok(b)
    } else if b.embeds_in(a) {
        Ok(a)
    } else {
        Err(CliError::ring(0, format!("no common ring for {a} and {b}")))
    }
}

/// The smallest ring containing every atom of `e`.
pub fn infer_ring(e: &Expr) -> Result<Ring> {
    let mut d1_at = None;
    let mut x_at = None;
    let (mut y, mut mu0) = (false, false);
    e.for_each_atom(&mut |atom, pos| match atom {
        Atom::U(..) | Atom::Iota(_) => {
            d1_at.get_or_insert(pos);
        }
        Atom::X(..) | Atom::Adem(..) => {
            x_at.get_or_insert(pos);
        }
        Atom::Y(..) => y = true,
        Atom::Mu0 => mu0 = true,
        _ => {}
    });
    match (d1_at, x_at) {
        (Some(_), Some(x)) => Err(CliError::ring(x, "X terms live in E0, not in D1")),
        (Some(_), None) => Ok(Ring::D1),
        (None, Some(_)) => Ok(Ring::E0),
        (None, None) if mu0 => Ok(Ring::D1),
        (None, None) if y => Ok(Ring::D0),
        (None, None) => Ok(Ring::A),
    }
}

/// The ring to evaluate in: `requested` if the expression fits there,
/// otherwise the inferred ring.
pub fn resolve_ring(e: &Expr, requested: Option<Ring>) -> Result<Ring> {
    let inferred = infer_ring(e)?;
    match requested {
        None => Ok(inferred),
        Some(r) if inferred.embeds_in(r) => Ok(r),
        Some(r) => Err(CliError::ring(e.position(), format!("expression needs {inferred}, not {r}"))),
    }
}

/// Parses and evaluates `input`.
pub fn evaluate(input: &str, ring: Option<Ring>) -> Result<Value> {
    let e = parse(input)?;
    let ring = resolve_ring(&e, ring)?;
    eval(&e, ring)
}

pub fn eval(e: &Expr, ring: Ring) -> Result<Value> {
    Ok(match ring {
        Ring::A => Value::A(eval_a(e)?),
        Ring::D0 => Value::D0(eval_d0(e)?),
        Ring::D1 => Value::D1(eval_mixed(e)?.into_d1(e.position())?),
        Ring::E0 => Value::E0(eval_e0(e)?),
    })
}

fn not_in(atom: &Atom, pos: usize, ring: Ring) -> CliError {
    let what = match atom {
        Atom::Y(..) => "Y",
        Atom::U(..) => "U",
        Atom::X(..) => "X",
        Atom::Mu0 => "u0",
        Atom::Iota(_) => "iota",
        Atom::Adem(..) => "Adem",
        _ => "term",
    };
    CliError::ring(pos, format!("{what} is not available in {ring}"))
}

fn eval_a(e: &Expr) -> Result<AElt> {
    match e {
        Expr::Atom(atom, pos) => match atom {
            Atom::Int(n) => Ok(if n % 2 == 1 { AElt::one() } else { AElt::zero() }),
            Atom::Sq(r) => Ok(AElt::sq(r)),
            Atom::Q(k) => Ok(q_element(*k)),
            Atom::P(t, s) => Ok(p_element(*t, *s)?),
            _ => Err(not_in(atom, *pos, Ring::A)),
        },
        Expr::Sum(xs) => xs.iter().try_fold(AElt::zero(), |acc, x| Ok(acc.add(&eval_a(x)?))),
        Expr::Product(xs) => xs.iter().try_fold(AElt::one(), |acc, x| Ok(milnor_product(&acc, &eval_a(x)?))),
    }
}

fn eval_d0(e: &Expr) -> Result<D0Elt> {
    match e {
        Expr::Atom(atom, pos) => match atom {
            Atom::Int(n) => Ok(D0Elt::one().scale((n % 4) as u8)),
            Atom::Y(k, l) => Ok(D0Elt::y(*k, *l, ExpSeq::empty())?),
            Atom::Sq(_) | Atom::Q(_) | Atom::P(..) => Ok(sigma(&eval_a(e)?)),
            _ => Err(not_in(atom, *pos, Ring::D0)),
        },
        Expr::Sum(xs) => xs.iter().try_fold(D0Elt::zero(), |acc, x| Ok(acc.add(&eval_d0(x)?))),
        Expr::Product(xs) => xs.iter().try_fold(D0Elt::one(), |acc, x| Ok(acc.mul(&eval_d0(x)?))),
    }
}

fn eval_e0(e: &Expr) -> Result<EHatElt> {
    match e {
        Expr::Atom(atom, pos) => match atom {
            Atom::X(k, l) => Ok(EHatElt::x(*k, *l, ExpSeq::empty())?),
            Atom::Adem(n, m) => Ok(adem_element(*n, *m)?),
            Atom::Mu0 => Err(CliError::ring(*pos, "u0 must be followed by an X term in E0")),
            _ => Ok(EHatElt::from_d0(eval_d0(e)?)),
        },
        Expr::Sum(xs) => xs.iter().try_fold(EHatElt::zero(), |acc, x| Ok(acc.add(&eval_e0(x)?))),
        Expr::Product(xs) => product_e0(xs),
    }
}

/// `f_1 * ... * f_n` in `E^_0`, where `u0` turns the product to its right
/// (which must be a sum of `X` terms) into the matching `mu_0 X` terms.
fn product_e0(factors: &[Expr]) -> Result<EHatElt> {
    let Some(i) = factors.iter().position(|f| matches!(f, Expr::Atom(Atom::Mu0, _))) else {
        let one = EHatElt::from_a(&AElt::one());
        return factors.iter().try_fold(one, |acc, x| Ok(acc.star(&eval_e0(x)?)));
    };
    let pos = factors[i].position();
    if i + 1 == factors.len() {
        return Err(CliError::ring(pos, "u0 must be followed by an X term in E0"));
    }
    let rest = product_e0(&factors[i + 1..])?;
    if !rest.d0.is_zero() || !rest.xp.mu0x.is_empty() {
        return Err(CliError::ring(pos, format!("u0 applies to X terms only in E0, got {rest}")));
    }
    let mut mu = EHatElt::zero();
    for key in &rest.xp.x {
        mu.add_assign(&EHatElt::mu0x(key.k, key.l, key.r.clone())?);
    }
    let left = product_e0(&factors[..i])?;
    Ok(left.star(&mu))
}

/// A `D_1` expression in progress: `D_0` factors act on `D_1` through `pi`.
enum Mixed {
    D0(D0Elt),
    D1(D1Elt),
}

impl Mixed {
    fn from_value(v: Value, pos: usize) -> Result<Mixed> {
        Ok(match v {
            Value::A(a) => Mixed::D0(sigma(&a)),
            Value::D0(d) => Mixed::D0(d),
            Value::D1(x) => Mixed::D1(x),
            Value::E0(_) => return Err(CliError::ring(pos, "E0 elements do not act on D1")),
        })
    }

    fn add(self, other: Mixed, pos: usize) -> Result<Mixed> {
        Ok(match (self, other) {
            (Mixed::D0(x), Mixed::D0(y)) => Mixed::D0(x.add(&y)),
            (Mixed::D1(x), Mixed::D1(y)) => Mixed::D1(x.add(&y)),
            (Mixed::D1(x), Mixed::D0(d)) | (Mixed::D0(d), Mixed::D1(x)) => {
                if !d.is_zero() {
                    return Err(CliError::ring(pos, format!("cannot add the D0 term {d} to a D1 element")));
                }
                Mixed::D1(x)
            }
        })
    }

    fn mul(self, other: Mixed, pos: usize) -> Result<Mixed> {
        Ok(match (self, other) {
            (Mixed::D0(x), Mixed::D0(y)) => Mixed::D0(x.mul(&y)),
            (Mixed::D0(d), Mixed::D1(x)) => Mixed::D1(x.left_act_d0(&d)),
            (Mixed::D1(x), Mixed::D0(d)) => Mixed::D1(x.right_act_d0(&d)),
            (Mixed::D1(_), Mixed::D1(_)) => {
                return Err(CliError::ring(pos, "D1 has no product: two D1 factors in one term"));
            }
        })
    }

    fn into_d1(self, pos: usize) -> Result<D1Elt> {
        match self {
            Mixed::D1(x) => Ok(x),
            Mixed::D0(d) if d.is_zero() => Ok(D1Elt::zero()),
            Mixed::D0(d) => Err(CliError::ring(pos, format!("{d} has no D1 factor (u0, U or iota)"))),
        }
    }
}

fn eval_mixed(e: &Expr) -> Result<Mixed> {
    match e {
        Expr::Atom(atom, pos) => match atom {
            Atom::U(k, l) => Ok(Mixed::D1(D1Elt::u(*k, *l, ExpSeq::empty())?)),
            Atom::Mu0 => Ok(Mixed::D1(D1Elt::mu0(&AElt::one()))),
            Atom::Iota(inner) => Ok(Mixed::D1(D1Elt::iota(&eval_a(inner)?))),
            Atom::X(..) | Atom::Adem(..) => Err(not_in(atom, *pos, Ring::D1)),
            _ => Ok(Mixed::D0(eval_d0(e)?)),
        },
        Expr::Sum(xs) => {
            let mut acc = eval_mixed(&xs[0])?;
            for x in &xs[1..] {
                acc = acc.add(eval_mixed(x)?, x.position())?;
            }
            Ok(acc)
        }
        Expr::Product(xs) => {
            let mut acc = eval_mixed(&xs[0])?;
            for x in &xs[1..] {
                acc = acc.mul(eval_mixed(x)?, x.position())?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_inference() {
        let ring = |s: &str| infer_ring(&parse(s).unwrap()).unwrap();
        assert_eq!(ring("Sq(0,2)*Sq(0,2)"), Ring::A);
        assert_eq!(ring("2*Sq(2)+Y[-1,0]"), Ring::D0);
        assert_eq!(ring("Sq^1*u0*Sq(2)"), Ring::D1);
        assert_eq!(ring("u0*X[0,0]"), Ring::E0);
        assert!(infer_ring(&parse("U[0,1] + X[0,1]").unwrap()).is_err());
    }

    #[test]
    fn square_of_sq1() {
        assert!(evaluate("Sq^1*Sq^1", Some(Ring::A)).unwrap().is_zero());
        let d0 = evaluate("Sq^1*Sq^1", Some(Ring::D0)).unwrap();
        assert_eq!(d0, evaluate("2*Sq(2)+Y[-1,0]", None).unwrap());
    }

    #[test]
    fn mu0_in_e0_needs_x() {
        let v = evaluate("u0 X_{0,0}Sq(1)", None).unwrap();
        assert_eq!(v, Value::E0(EHatElt::mu0x(0, 0, ExpSeq::from(vec![1])).unwrap()));
        assert!(evaluate("u0 Sq(1) + X[0,0]", None).is_err());
    }

    #[test]
    fn d1_rejects_two_d1_factors() {
        let err = evaluate("u0*U[0,1]", None).unwrap_err().to_string();
        assert!(err.contains("column 4"), "{err}");
        assert!(evaluate("Sq(2) + u0", None).is_err());
    }
}
