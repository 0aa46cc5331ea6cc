//! Parser for the plain-text notation used in fixtures: blades `e23`,
//! `e{1,10}`, the idempotent `P1` or `t`, `gi(...)`, the imaginary unit `i`,
//! quaternion units `q1..q3`, matrix units `E21`, coefficients `s4` and
//! dyadic fractions. Juxtaposition is multiplication.

use std::collections::BTreeMap;
use std::str::FromStr;

use ga_core::{Blade, Cx, Dyadic, Quat, Scalar, Signature};
use idempotent_factory::Mv;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unexpected character {0:?} in {1:?}")]
    Char(char, String),
    #[error("unexpected end of {0:?}")]
    End(String),
    #[error("denominator {0} is not a power of two")]
    Denominator(i128),
    #[error("{0} makes no sense here")]
    Misplaced(String),
    #[error("product of two coefficients s_j s_k")]
    NonLinear,
    #[error("bad blade {0:?}")]
    Blade(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Blade(Blade),
    I,
    Q(usize),
    /// 0-based coefficient index.
    Sym(usize),
    /// 0-based matrix unit.
    Unit(usize, usize),
    Idem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Dyadic),
    Atom(Atom),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Gi(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i128),
    Slash,
    Plus,
    Minus,
    Open,
    Close,
    Gi,
    Atom(Atom),
}

fn digits(chars: &[char], i: &mut usize) -> String {
    let start = *i;
    while *i < chars.len() && chars[*i].is_ascii_digit() {
        *i += 1;
    }
    chars[start..*i].iter().collect()
}

fn braced(chars: &[char], i: &mut usize, src: &str) -> Result<String, ExprError> {
    let start = *i;
    while *i < chars.len() && chars[*i] != '}' {
        *i += 1;
    }
    if *i == chars.len() {
        return Err(ExprError::End(src.into()));
    }
    *i += 1;
    Ok(chars[start..*i].iter().collect())
}

fn lex(src: &str) -> Result<Vec<Tok>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let bad = |c: char| ExprError::Char(c, src.to_string());
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                i -= 1;
                let d = digits(&chars, &mut i);
                out.push(Tok::Int(d.parse().map_err(|_| bad(c))?));
            }
            '/' => out.push(Tok::Slash),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            'i' => out.push(Tok::Atom(Atom::I)),
            't' => out.push(Tok::Atom(Atom::Idem)),
            'e' => {
                let text = if chars.get(i) == Some(&'{') {
                    format!("e{}", braced(&chars, &mut i, src)?)
                } else {
                    format!("e{}", digits(&chars, &mut i))
                };
                let b = Blade::from_str(&text).map_err(|_| ExprError::Blade(text.clone()))?;
                out.push(Tok::Atom(Atom::Blade(b)));
            }
            'E' => {
                let (r, c) = if chars.get(i) == Some(&'_') {
                    i += 1;
                    if chars.get(i) != Some(&'{') {
                        return Err(bad('_'));
                    }
                    i += 1;
                    let inner = braced(&chars, &mut i, src)?;
                    let inner = inner.trim_end_matches('}');
                    let (a, b) = inner.split_once(',').ok_or_else(|| bad('E'))?;
                    (a.trim().parse().map_err(|_| bad('E'))?, b.trim().parse().map_err(|_| bad('E'))?)
                } else {
                    let d: Vec<char> = digits(&chars, &mut i).chars().collect();
                    if d.len() != 2 {
                        return Err(bad('E'));
                    }
                    (d[0].to_digit(10).unwrap() as usize, d[1].to_digit(10).unwrap() as usize)
                };
                if r == 0 || c == 0 {
                    return Err(bad('E'));
                }
                out.push(Tok::Atom(Atom::Unit(r - 1, c - 1)));
            }
            's' => {
                let d = digits(&chars, &mut i);
                let j: usize = d.parse().map_err(|_| bad('s'))?;
                if j == 0 {
                    return Err(bad('s'));
                }
                out.push(Tok::Atom(Atom::Sym(j - 1)));
            }
            'q' => {
                let d = digits(&chars, &mut i);
                match d.as_str() {
                    "1" | "2" | "3" => out.push(Tok::Atom(Atom::Q(d.parse().unwrap()))),
                    _ => return Err(bad('q')),
                }
            }
            'P' => {
                if digits(&chars, &mut i) != "1" {
                    return Err(bad('P'));
                }
                out.push(Tok::Atom(Atom::Idem));
            }
            'g' => {
                if chars.get(i) != Some(&'i') {
                    return Err(bad('g'));
                }
                i += 1;
                out.push(Tok::Gi);
            }
            other => return Err(bad(other)),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, ExprError> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| ExprError::End(self.src.into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        match self.next()? {
            Tok::Close => Ok(()),
            _ => Err(ExprError::Misplaced(format!("token in {:?}", self.src))),
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let p = self.product()?;
            terms.push(if neg { Expr::Neg(Box::new(p)) } else { p });
            match self.peek() {
                Some(Tok::Plus) => neg = false,
                Some(Tok::Minus) => neg = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut factors = Vec::new();
        while let Some(t) = self.peek() {
            match t {
                Tok::Int(_) | Tok::Open | Tok::Gi | Tok::Atom(_) => factors.push(self.factor()?),
                _ => break,
            }
        }
        match factors.len() {
            0 => Err(ExprError::End(self.src.into())),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Expr::Prod(factors)),
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        match self.next()? {
            Tok::Int(n) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let Tok::Int(d) = self.next()? else {
                        return Err(ExprError::Misplaced("fraction".into()));
                    };
                    if d <= 0 || d & (d - 1) != 0 {
                        return Err(ExprError::Denominator(d));
                    }
                    Ok(Expr::Num(Dyadic::new(n, d.trailing_zeros())))
                } else {
                    Ok(Expr::Num(Dyadic::new(n, 0)))
                }
            }
            Tok::Open => {
                let e = self.sum()?;
                self.expect_close()?;
                Ok(e)
            }
            Tok::Gi => {
                if self.next()? != Tok::Open {
                    return Err(ExprError::Misplaced("gi without (".into()));
                }
                let e = self.sum()?;
                self.expect_close()?;
                Ok(Expr::Gi(Box::new(e)))
            }
            Tok::Atom(a) => Ok(Expr::Atom(a)),
            t => Err(ExprError::Misplaced(format!("{t:?} in {:?}", self.src))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(src)?, pos: 0, src };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(ExprError::Misplaced(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Where expressions are evaluated.
pub trait Domain {
    type V: Clone + PartialEq;
    fn scalar(&self, c: Quat) -> Result<Self::V, ExprError>;
    fn atom(&self, a: Atom) -> Result<Self::V, ExprError>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn gi(&self, a: &Self::V) -> Result<Self::V, ExprError>;
    fn is_zero(&self, a: &Self::V) -> bool;
}

/// Σ_j s_j V_j + V_0, keyed by `Some(j)` and `None`.
pub type Lin<V> = BTreeMap<Option<usize>, V>;

fn lin_add<D: Domain>(d: &D, acc: &mut Lin<D::V>, k: Option<usize>, v: D::V) {
    let s = match acc.remove(&k) {
        Some(old) => d.add(&old, &v),
        None => v,
    };
    if !d.is_zero(&s) {
        acc.insert(k, s);
    }
}

pub fn eval<D: Domain>(e: &Expr, d: &D) -> Result<Lin<D::V>, ExprError> {
    let mut out = Lin::new();
    match e {
        Expr::Num(n) => lin_add(d, &mut out, None, d.scalar(Quat::real(*n))?),
        Expr::Atom(Atom::Sym(j)) => lin_add(d, &mut out, Some(*j), d.scalar(Quat::one())?),
        Expr::Atom(a) => lin_add(d, &mut out, None, d.atom(*a)?),
        Expr::Neg(x) => {
            let m = d.scalar(Quat::real(-Dyadic::ONE))?;
            for (k, v) in eval(x, d)? {
                lin_add(d, &mut out, k, d.mul(&m, &v));
            }
        }
        Expr::Sum(xs) => {
            for x in xs {
                for (k, v) in eval(x, d)? {
                    lin_add(d, &mut out, k, v);
                }
            }
        }
        Expr::Prod(xs) => {
            let mut acc = eval(&xs[0], d)?;
            for x in &xs[1..] {
                let rhs = eval(x, d)?;
                let mut next = Lin::new();
                for (ka, va) in &acc {
                    for (kb, vb) in &rhs {
                        let k = match (ka, kb) {
                            (None, k) | (k, None) => *k,
                            _ => return Err(ExprError::NonLinear),
                        };
                        lin_add(d, &mut next, k, d.mul(va, vb));
                    }
                }
                acc = next;
            }
            out = acc;
        }
        Expr::Gi(x) => {
            for (k, v) in eval(x, d)? {
                lin_add(d, &mut out, k, d.gi(&v)?);
            }
        }
    }
    Ok(out)
}

/// Multivectors, with `P1`/`t` bound to the primitive idempotent.
pub struct MvDomain {
    pub sig: Signature,
    pub idempotent: Mv,
}

impl Domain for MvDomain {
    type V = Mv;

    fn scalar(&self, c: Quat) -> Result<Mv, ExprError> {
        let c = c.to_cx().ok_or_else(|| ExprError::Misplaced("quaternion scalar".into()))?;
        Ok(Mv::scalar(self.sig, c))
    }

    fn atom(&self, a: Atom) -> Result<Mv, ExprError> {
        match a {
            Atom::Blade(b) => {
                if b.mask() >> self.sig.n() != 0 {
                    return Err(ExprError::Blade(b.to_string()));
                }
                Ok(Mv::blade(self.sig, b))
            }
            Atom::I => Ok(Mv::scalar(self.sig, Cx::I)),
            Atom::Idem => Ok(self.idempotent.clone()),
            Atom::Q(k) => Err(ExprError::Misplaced(format!("q{k}"))),
            Atom::Unit(r, c) => Err(ExprError::Misplaced(format!("E{}{}", r + 1, c + 1))),
            Atom::Sym(_) => unreachable!("symbols are handled by eval"),
        }
    }

    fn add(&self, a: &Mv, b: &Mv) -> Mv {
        a + b
    }

    fn mul(&self, a: &Mv, b: &Mv) -> Mv {
        a * b
    }

    fn gi(&self, a: &Mv) -> Result<Mv, ExprError> {
        Ok(a.grade_involution())
    }

    fn is_zero(&self, a: &Mv) -> bool {
        a.is_zero()
    }
}

/// Matrix entries keyed by unit; `None` is a bare scalar not yet attached to a unit.
pub type MatVal = BTreeMap<Option<(usize, usize)>, Quat>;

/// Matrices over R, C or H with `i` read as q1.
pub struct MatDomain;

impl Domain for MatDomain {
    type V = MatVal;

    fn scalar(&self, c: Quat) -> Result<MatVal, ExprError> {
        Ok(if c.is_zero() { MatVal::new() } else { MatVal::from([(None, c)]) })
    }

    fn atom(&self, a: Atom) -> Result<MatVal, ExprError> {
        match a {
            Atom::I => self.scalar(Quat::unit(1)),
            Atom::Q(k) => self.scalar(Quat::unit(k)),
            Atom::Unit(r, c) => Ok(MatVal::from([(Some((r, c)), Quat::one())])),
            Atom::Blade(b) => Err(ExprError::Misplaced(b.to_string())),
            Atom::Idem => Err(ExprError::Misplaced("idempotent".into())),
            Atom::Sym(_) => unreachable!("symbols are handled by eval"),
        }
    }

    fn add(&self, a: &MatVal, b: &MatVal) -> MatVal {
        let mut out = a.clone();
        for (k, v) in b {
            let s = out.get(k).copied().unwrap_or_else(Quat::zero) + *v;
            if s.is_zero() {
                out.remove(k);
            } else {
                out.insert(*k, s);
            }
        }
        out
    }

    fn mul(&self, a: &MatVal, b: &MatVal) -> MatVal {
        let mut out = MatVal::new();
        for (ka, va) in a {
            for (kb, vb) in b {
                let k = match (ka, kb) {
                    (None, k) | (k, None) => *k,
                    (Some((i, j)), Some((k, l))) if j == k => Some((*i, *l)),
                    _ => continue,
                };
                out = self.add(&out, &MatVal::from([(k, *va * *vb)]));
            }
        }
        out
    }

    fn gi(&self, _: &MatVal) -> Result<MatVal, ExprError> {
        Err(ExprError::Misplaced("gi on a matrix".into()))
    }

    fn is_zero(&self, a: &MatVal) -> bool {
        a.is_empty()
    }
}

/// A multivector without free coefficients.
pub fn eval_mv(src: &str, d: &MvDomain) -> Result<Mv, ExprError> {
    let lin = eval(&parse(src)?, d)?;
    if lin.keys().any(Option::is_some) {
        return Err(ExprError::Misplaced(format!("coefficient in {src:?}")));
    }
    Ok(lin.get(&None).cloned().unwrap_or_else(|| Mv::zero(d.sig)))
}

/// A matrix without free coefficients, as 0-based entries.
pub fn eval_matrix(src: &str) -> Result<BTreeMap<(usize, usize), Quat>, ExprError> {
    let lin = eval(&parse(src)?, &MatDomain)?;
    if lin.keys().any(Option::is_some) {
        return Err(ExprError::Misplaced(format!("coefficient in {src:?}")));
    }
    matrix_entries(lin.get(&None).cloned().unwrap_or_default(), src)
}

/// Coefficient index to its matrix.
pub type MatrixForm = BTreeMap<usize, BTreeMap<(usize, usize), Quat>>;

/// Per-coefficient matrices of a spinor matrix such as `(s1 + is2)E11`.
pub fn eval_matrix_form(src: &str) -> Result<MatrixForm, ExprError> {
    let lin = eval(&parse(src)?, &MatDomain)?;
    let mut out = BTreeMap::new();
    for (k, v) in lin {
        let j = k.ok_or_else(|| ExprError::Misplaced(format!("constant term in {src:?}")))?;
        out.insert(j, matrix_entries(v, src)?);
    }
    Ok(out)
}

fn matrix_entries(v: MatVal, src: &str) -> Result<BTreeMap<(usize, usize), Quat>, ExprError> {
    v.into_iter()
        .map(|(k, q)| Ok((k.ok_or_else(|| ExprError::Misplaced(format!("scalar without E in {src:?}")))?, q)))
        .collect()
}

/// Per-coefficient multivectors of a general spinor.
pub fn eval_spinor(src: &str, d: &MvDomain) -> Result<BTreeMap<usize, Mv>, ExprError> {
    let lin = eval(&parse(src)?, d)?;
    let mut out = BTreeMap::new();
    for (k, v) in lin {
        let j = k.ok_or_else(|| ExprError::Misplaced(format!("constant term in {src:?}")))?;
        out.insert(j, v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(p: usize, q: usize) -> MvDomain {
        let sig = Signature::new(p, q).unwrap();
        let e1 = Mv::blade(sig, Blade::generator(1));
        let idem = (&Mv::one(sig) + &e1).scale_dyadic(Dyadic::new(1, 1));
        MvDomain { sig, idempotent: idem }
    }

    #[test]
    fn idempotent_products() {
        let d = dom(2, 2);
        let a = eval_mv("1/4 (1 + e1)(1 + e23)", &d).unwrap();
        assert_eq!(a.to_string(), "1/4(1 + e1 + e23 + e123)");
        let b = eval_mv("P1 1 P1", &d).unwrap();
        assert_eq!(b, d.idempotent);
        assert_eq!(eval_mv("t1t", &d).unwrap(), d.idempotent);
        let c = eval_mv("gi(e2P1)", &d).unwrap();
        assert_eq!(c, (&Mv::blade(d.sig, Blade::generator(2)) * &d.idempotent).grade_involution());
    }

    #[test]
    fn spinor_coefficients() {
        let d = dom(3, 0);
        let s = eval_spinor("(s1 + i s2e23 + s3e2 - i s4e3) t", &d).unwrap();
        assert_eq!(s.len(), 4);
        let e3t = &Mv::blade(d.sig, Blade::generator(3)) * &d.idempotent;
        assert_eq!(s[&3], e3t.scale(-Cx::I));
        assert!(eval_spinor("1 + s1", &d).is_err());
        assert!(matches!(eval_spinor("s1 s2", &d), Err(ExprError::NonLinear)));
    }

    #[test]
    fn matrices() {
        let m = eval_matrix("q1(E12 - E21 - E34+ E43)").unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m[&(0, 1)], Quat::unit(1));
        assert_eq!(m[&(1, 0)], -Quat::unit(1));
        let f = eval_matrix_form("(s1 + i s2)E11 +(s3 - i s4) E21 + (s1 - i s2)E33").unwrap();
        assert_eq!(f[&0].len(), 2);
        assert_eq!(f[&3][&(1, 0)], -Quat::unit(1));
        let f = eval_matrix_form("(s1 + s2q1 + s3q2 - s4q3)E11").unwrap();
        assert_eq!(f[&3][&(0, 0)], -Quat::unit(3));
        assert!(eval_matrix("E1").is_err());
        assert!(eval_matrix("e1E11").is_err());
    }

    #[test]
    fn lexing_errors() {
        assert!(parse("1/3").is_err());
        assert!(parse("x").is_err());
        assert!(parse("(1 + e1").is_err());
        assert!(parse("P2").is_err());
        assert_eq!(parse("e{1,10}").unwrap(), Expr::Atom(Atom::Blade(Blade::from_indices(&[1, 10]).unwrap())));
    }
}
