//! Parser for algebra expressions.
//!
//! ```text
//! expr   := term { "+" term }
//! term   := factor { ["*"] factor }
//! factor := INT | atom | "(" expr ")"
//! atom   := "Sq(" [INT {"," INT}] ")" | "Sq^" INT
//!         | ("Y" | "U" | "X") pair | "Q" ["_"] INT | "P(" INT "," INT ")"
//!         | "u0" | "iota(" expr ")" | "Adem" "[" INT "," INT "]"
//! pair   := "[" SINT "," SINT "]" | "_{" SINT "," SINT "}"
//! ```
//!
//! Juxtaposition multiplies, so printed elements such as `2 Sq(2) + Y_{-1,0}Sq(1)`
//! parse back.

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Int(u64),
    Sq(Vec<u32>),
    Y(i32, i32),
    U(i32, i32),
    X(i32, i32),
    Q(usize),
    P(usize, u32),
    Mu0,
    Iota(Box<Expr>),
    Adem(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// An atom and its character index in the input.
    Atom(Atom, usize),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
}

impl Expr {
    /// Character index of the leftmost atom.
    pub fn position(&self) -> usize {
        match self {
            Expr::Atom(_, pos) => *pos,
            Expr::Sum(xs) | Expr::Product(xs) => xs.first().map_or(0, Expr::position),
        }
    }

    /// Visits every atom, including those inside `iota(..)`.
    pub fn for_each_atom(&self, f: &mut impl FnMut(&Atom, usize)) {
        match self {
            Expr::Atom(atom, pos) => {
                f(atom, *pos);
                if let Atom::Iota(inner) = atom {
                    inner.for_each_atom(f);
                }
            }
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().for_each(|x| x.for_each_atom(f)),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr> {
    let mut p = Parser {
        input,
        chars: input.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}'")));
    }
    Ok(e)
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::syntax(self.input, self.pos, message)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.found(&format!("'{c}'")))
        }
    }

    fn found(&self, wanted: &str) -> CliError {
        match self.peek() {
            Some(c) => self.error(format!("expected {wanted}, found '{c}'")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.remove(0) } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.eat('*') {
                factors.push(self.factor()?);
                continue;
            }
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.remove(0) } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Atom(Atom::Int(self.uint()?), start)),
            Some(c) if c.is_ascii_alphabetic() => Ok(Expr::Atom(self.atom()?, start)),
            _ => Err(self.found("a factor")),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let start = self.pos;
        let mut name = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_alphabetic) {
            name.push(c);
            self.pos += 1;
        }
        match name.as_str() {
            "Sq" => self.sq(),
            "Y" => self.pair().map(|(k, l)| Atom::Y(k, l)),
            "U" => self.pair().map(|(k, l)| Atom::U(k, l)),
            "X" => self.pair().map(|(k, l)| Atom::X(k, l)),
            "Q" => {
                self.eat('_');
                let k = self.uint()?;
                usize::try_from(k).map(Atom::Q).map_err(|_| self.error("index too large"))
            }
            "P" => {
                self.expect('(')?;
                let t = self.small()?;
                self.expect(',')?;
                let s = self.small()?;
                self.expect(')')?;
                Ok(Atom::P(t as usize, s))
            }
            "u" | "mu" => {
                if self.peek() == Some('0') {
                    self.pos += 1;
                    Ok(Atom::Mu0)
                } else {
                    Err(self.found("'0'"))
                }
            }
            "iota" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Atom::Iota(Box::new(inner)))
            }
            "Adem" => {
                self.expect('[')?;
                let n = self.small()?;
                self.expect(',')?;
                let m = self.small()?;
                self.expect(']')?;
                Ok(Atom::Adem(n, m))
            }
            _ => {
                self.pos = start;
                Err(self.error(format!("unknown symbol '{name}'")))
            }
        }
    }

    fn sq(&mut self) -> Result<Atom> {
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.small()?;
            return Ok(Atom::Sq(vec![n]));
        }
        self.expect('(')?;
        let mut r = Vec::new();
        if !self.eat(')') {
            loop {
                r.push(self.small()?);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return Err(self.found("',' or ')'"));
                }
            }
        }
        Ok(Atom::Sq(r))
    }

    fn pair(&mut self) -> Result<(i32, i32)> {
        let close = if self.eat('[') {
            ']'
        } else if self.peek() == Some('_') {
            self.pos += 1;
            self.expect('{')?;
            '}'
        } else {
            return Err(self.found("'[' or '_{'"));
        };
        let k = self.sint()?;
        self.expect(',')?;
        let l = self.sint()?;
        self.expect(close)?;
        Ok((k, l))
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.found("an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| CliError::syntax(self.input, start, "integer too large"))
    }

    fn small(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let n = self.uint()?;
        u32::try_from(n).map_err(|_| CliError::syntax(self.input, start, "integer too large"))
    }

    fn sint(&mut self) -> Result<i32> {
        let negative = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        let n = self.uint()?;
        let n = i32::try_from(n).map_err(|_| CliError::syntax(self.input, start, "index too large"))?;
        Ok(if negative { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_two_atoms() {
        let e = parse("Sq(0,2)*Sq(0,2)").unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![
                Expr::Atom(Atom::Sq(vec![0, 2]), 0),
                Expr::Atom(Atom::Sq(vec![0, 2]), 8),
            ])
        );
    }

    #[test]
    fn shorthand_and_pairs() {
        assert_eq!(parse("Sq^3").unwrap(), Expr::Atom(Atom::Sq(vec![3]), 0));
        assert_eq!(parse("Y_{-1,0}").unwrap(), parse("Y[-1,0]").unwrap());
        assert_eq!(parse("Q_2").unwrap(), Expr::Atom(Atom::Q(2), 0));
        assert_eq!(parse("Q2").unwrap(), Expr::Atom(Atom::Q(2), 0));
        assert_eq!(parse("Sq()").unwrap(), Expr::Atom(Atom::Sq(vec![]), 0));
    }

    #[test]
    fn juxtaposition_multiplies() {
        assert_eq!(parse("2 Sq(2)").unwrap(), parse("2*Sq(2)").unwrap());
        assert_eq!(parse("u0 X_{0,0}Sq(5)").unwrap(), parse("u0*X[0,0]*Sq(5)").unwrap());
    }

    #[test]
    fn errors_carry_columns() {
        let err = parse("Sq(1,2").unwrap_err().to_string();
        assert!(err.contains("column 7"), "{err}");
        let err = parse("Sq(1) + Z[0,1]").unwrap_err().to_string();
        assert!(err.contains("unknown symbol 'Z'") && err.contains("column 9"), "{err}");
        let err = parse("Sq(1) +").unwrap_err().to_string();
        assert!(err.contains("end of input"), "{err}");
    }
}
