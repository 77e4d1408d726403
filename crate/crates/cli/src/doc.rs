//! The serialized form of an element and its text rendering.

use serde::{Deserialize, Serialize};

use secondary::d0::{y_degree, D0Elt};
use secondary::d1::D1Elt;
use secondary::ehat::{EHatElt, XPart};
use secondary::milnor::{AElt, ExpSeq, TensorAA};

use crate::error::{CliError, Result};
use crate::eval::{Ring, Value};

/// Ring tag used for elements of `A (x) A`.
pub const TENSOR_TAG: &str = "A(x)A";

/// Basis symbols, in their output order within one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sym {
    Sq,
    Y,
    X,
    #[serde(rename = "u0X")]
    Mu0X,
    #[serde(rename = "iota")]
    Iota,
    #[serde(rename = "u0")]
    Mu0,
    U,
    #[serde(rename = "SqSq")]
    Tensor,
}

/// One basis element with its coefficient. `R` is the trailing `Sq(R)`;
/// `S` is the right factor of a tensor term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub sym: Sym,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<i32>,
    #[serde(rename = "R")]
    pub r: Vec<u32>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u32>>,
    pub c: u8,
}

impl Term {
    fn plain(sym: Sym, r: &ExpSeq, c: u8) -> Term {
        Term {
            sym,
            k: None,
            l: None,
            r: r.entries().to_vec(),
            s: None,
            c,
        }
    }

    fn indexed(sym: Sym, k: i32, l: i32, r: &ExpSeq) -> Term {
        Term {
            k: Some(k),
            l: Some(l),
            ..Term::plain(sym, r, 1)
        }
    }

    fn tail(&self) -> ExpSeq {
        ExpSeq::from(self.r.clone())
    }

    fn indices(&self) -> Result<(i32, i32)> {
        match (self.k, self.l) {
            (Some(k), Some(l)) => Ok((k, l)),
            _ => Err(CliError::Document(format!("{:?} term needs k and l", self.sym))),
        }
    }

    pub fn degree(&self) -> u64 {
        let tail = self.tail().degree();
        let pair = || match (self.k, self.l) {
            (Some(k), Some(l)) if k >= -1 && l >= -1 => y_degree(k, l),
            _ => 0,
        };
        match self.sym {
            Sym::Sq | Sym::Mu0 => tail,
            Sym::Iota => tail + 1,
            Sym::Y | Sym::X | Sym::U => pair() + tail,
            Sym::Mu0X => pair() + tail - 1,
            Sym::Tensor => tail + self.s.as_ref().map_or(0, |s| ExpSeq::from(s.clone()).degree()),
        }
    }

    /// Output order: degree, then symbol, indices and exponents.
    fn output_cmp(&self, other: &Term) -> std::cmp::Ordering {
        let key = |t: &Term| (t.degree(), t.sym, t.k, t.l);
        key(self)
            .cmp(&key(other))
            .then_with(|| self.r.cmp(&other.r))
            .then_with(|| self.s.cmp(&other.s))
    }

    /// Text form, e.g. `2 Sq(4,1)`, `Y_{-1,0}Sq(3)`, `u0 X_{0,1}Sq(3)`.
    pub fn render(&self) -> String {
        let tail = sq_text(&self.r);
        let suffix = if self.r.is_empty() { String::new() } else { tail.clone() };
        let pair = format!("{{{},{}}}", self.k.unwrap_or(0), self.l.unwrap_or(0));
        let body = match self.sym {
            Sym::Sq => {
                if self.r.is_empty() {
                    return if self.c == 1 { "1".into() } else { self.c.to_string() };
                }
                tail
            }
            Sym::Y => format!("Y_{pair}{suffix}"),
            Sym::X => format!("X_{pair}{suffix}"),
            Sym::U => format!("U_{pair}{suffix}"),
            Sym::Mu0X => format!("u0 X_{pair}{suffix}"),
            Sym::Mu0 if self.r.is_empty() => "u0".into(),
            Sym::Mu0 => format!("u0 {tail}"),
            Sym::Iota if self.r.is_empty() => "iota(1)".into(),
            Sym::Iota => format!("iota({tail})"),
            Sym::Tensor => {
                let right = self.s.as_deref().map_or_else(|| "1".into(), sq_or_one);
                format!("{} (x) {right}", sq_or_one(&self.r))
            }
        };
        if self.c == 1 {
            body
        } else {
            format!("{} {body}", self.c)
        }
    }
}

fn sq_text(r: &[u32]) -> String {
    let parts: Vec<String> = r.iter().map(u32::to_string).collect();
    format!("Sq({})", parts.join(","))
}

fn sq_or_one(r: &[u32]) -> String {
    if r.is_empty() {
        "1".into()
    } else {
        sq_text(r)
    }
}

/// A single element: ring tag, common degree (`null` if the element is zero
/// or not homogeneous) and terms ordered by degree, then basis symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub ring: String,
    pub degree: Option<u64>,
    pub terms: Vec<Term>,
    /// The command that produced the element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl ElementDoc {
    fn from_terms(ring: &str, mut terms: Vec<Term>) -> ElementDoc {
        terms.sort_by(Term::output_cmp);
        let mut degrees = terms.iter().map(Term::degree);
        let degree = degrees.next().filter(|d| degrees.all(|e| e == *d));
        ElementDoc {
            ring: ring.into(),
            degree,
            terms,
            source: None,
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> ElementDoc {
        self.source = Some(source.into());
        self
    }

    pub fn from_value(v: &Value) -> ElementDoc {
        let tag = v.ring().tag();
        match v {
            Value::A(a) => ElementDoc::from_terms(tag, a_terms(a)),
            Value::D0(d) => ElementDoc::from_terms(tag, d0_terms(d)),
            Value::D1(x) => ElementDoc::from_terms(tag, d1_terms(x)),
            Value::E0(e) => {
                let mut terms = d0_terms(&e.d0);
                terms.extend(x_terms(&e.xp));
                ElementDoc::from_terms(tag, terms)
            }
        }
    }

    pub fn from_tensor(t: &TensorAA) -> ElementDoc {
        let terms = t
            .terms()
            .map(|(r, s)| Term {
                s: Some(s.entries().to_vec()),
                ..Term::plain(Sym::Tensor, r, 1)
            })
            .collect();
        ElementDoc::from_terms(TENSOR_TAG, terms)
    }

    /// Rebuilds the element.
    pub fn to_value(&self) -> Result<Value> {
        let ring = match self.ring.as_str() {
            "A" => Ring::A,
            "D0" => Ring::D0,
            "D1" => Ring::D1,
            "E0" => Ring::E0,
            other => return Err(CliError::Document(format!("ring {other} has no element form"))),
        };
        let bad = |t: &Term| CliError::Document(format!("{:?} term in a {ring} element", t.sym));
        let mut out = match ring {
            Ring::A => Value::A(AElt::zero()),
            Ring::D0 => Value::D0(D0Elt::zero()),
            Ring::D1 => Value::D1(D1Elt::zero()),
            Ring::E0 => Value::E0(EHatElt::zero()),
        };
        for t in &self.terms {
            let r = t.tail();
            match (&mut out, t.sym) {
                (Value::A(a), Sym::Sq) if t.c % 2 == 1 => a.add_assign(&AElt::basis(r)),
                (Value::A(_), Sym::Sq) => {}
                (Value::D0(d), Sym::Sq) => d.add_sq(r, t.c),
                (Value::E0(e), Sym::Sq) => e.d0.add_sq(r, t.c),
                (Value::D0(d), Sym::Y) => {
                    let (k, l) = t.indices()?;
                    d.add_assign(&D0Elt::y(k, l, r)?.scale(t.c));
                }
                (Value::E0(e), Sym::Y) => {
                    let (k, l) = t.indices()?;
                    e.d0.add_assign(&D0Elt::y(k, l, r)?.scale(t.c));
                }
                (Value::E0(e), Sym::X | Sym::Mu0X) => {
                    let (k, l) = t.indices()?;
                    let x = if t.sym == Sym::X { EHatElt::x(k, l, r)? } else { EHatElt::mu0x(k, l, r)? };
                    if t.c % 2 == 1 {
                        e.add_assign(&x);
                    }
                }
                (Value::D1(x), Sym::Iota | Sym::Mu0 | Sym::U) if t.c % 2 == 1 => {
                    let term = match t.sym {
                        Sym::Iota => D1Elt::iota(&AElt::basis(r)),
                        Sym::Mu0 => D1Elt::mu0(&AElt::basis(r)),
                        _ => {
                            let (k, l) = t.indices()?;
                            D1Elt::u(k, l, r)?
                        }
                    };
                    x.add_assign(&term);
                }
                (Value::D1(_), Sym::Iota | Sym::Mu0 | Sym::U) => {}
                _ => return Err(bad(t)),
            }
        }
        Ok(out)
    }

    /// `t_1 + t_2 + ...`, or `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.terms.iter().map(Term::render).collect();
        parts.join(" + ")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<ElementDoc> {
        Ok(serde_json::from_str(text)?)
    }
}

fn a_terms(a: &AElt) -> Vec<Term> {
    a.terms().map(|r| Term::plain(Sym::Sq, r, 1)).collect()
}

fn d0_terms(d: &D0Elt) -> Vec<Term> {
    let mut out: Vec<Term> = d.sq_terms().map(|(r, c)| Term::plain(Sym::Sq, r, c)).collect();
    out.extend(d.y_terms().map(|key| Term::indexed(Sym::Y, key.k, key.l, &key.r)));
    out
}

fn d1_terms(x: &D1Elt) -> Vec<Term> {
    let mut out: Vec<Term> = x.iota_part().terms().map(|r| Term::plain(Sym::Iota, r, 1)).collect();
    out.extend(x.mu0_part().terms().map(|r| Term::plain(Sym::Mu0, r, 1)));
    out.extend(x.u_terms().map(|key| Term::indexed(Sym::U, key.k, key.l, &key.r)));
    out
}

fn x_terms(xp: &XPart) -> Vec<Term> {
    let mut out: Vec<Term> = xp.x.iter().map(|key| Term::indexed(Sym::X, key.k, key.l, &key.r)).collect();
    out.extend(xp.mu0x.iter().map(|key| Term::indexed(Sym::Mu0X, key.k, key.l, &key.r)));
    out
}
