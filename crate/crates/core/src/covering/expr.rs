//! Index expressions for custom coverings: sums of terms
//! `c · 2^{a_1 n_1 + … + a_d n_d} · n_1^{e_1} ⋯ n_d^{e_d}`.
//!
//! Variables are `n1, n2, …`; `n`/`k` alias `n1` and `m` aliases `n2`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::exponents::{parse_decimal, rat, Rational};
use crate::numeric::rat_f64;

#[derive(Debug, Clone, PartialEq)]
struct Term {
    coef: f64,
    exp2: Vec<Rational>,
    powers: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexExpr {
    vars: usize,
    terms: Vec<Term>,
}

impl IndexExpr {
    pub fn constant(c: f64, vars: usize) -> Self {
        IndexExpr { vars, terms: vec![Term { coef: c, exp2: vec![Rational::from_integer(0); vars], powers: vec![0; vars] }] }
    }

    pub fn parse(src: &str, vars: usize) -> Result<Self, String> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, pos: 0, vars };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(alloc::format!("unexpected {:?} in {:?}", p.toks[p.pos], src));
        }
        Ok(e)
    }

    pub fn eval(&self, idx: &[i64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let e: f64 = t.exp2.iter().zip(idx).map(|(a, &n)| rat_f64(*a) * n as f64).sum();
                let mono: f64 = t.powers.iter().zip(idx).map(|(&p, &n)| libm::pow(n as f64, p as f64)).product();
                t.coef * libm::exp2(e) * mono
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' | '{' => {
                out.push(Tok::Open);
                i += 1
            }
            ')' | '}' => {
                out.push(Tok::Close);
                i += 1
            }
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                    i += 1;
                }
                let s: String = cs[start..i].iter().collect();
                let v = if s.contains('.') {
                    parse_decimal(&s).ok_or_else(|| alloc::format!("bad number {:?}", s))?
                } else {
                    Rational::from_integer(s.parse::<i128>().map_err(|_| alloc::format!("bad number {:?}", s))?)
                };
                out.push(Tok::Num(v));
            }
            'n' | 'm' | 'k' => {
                i += 1;
                let start = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let var = if start == i {
                    if c == 'm' {
                        1
                    } else {
                        0
                    }
                } else {
                    let s: String = cs[start..i].iter().collect();
                    let k: usize = s.parse().map_err(|_| "bad variable".to_string())?;
                    if k == 0 {
                        return Err("variables are numbered from 1".into());
                    }
                    k - 1
                };
                out.push(Tok::Var(var));
            }
            other => return Err(alloc::format!("unexpected character {:?}", other)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    vars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn var(&self, v: usize) -> Result<usize, String> {
        if v < self.vars {
            Ok(v)
        } else {
            Err(alloc::format!("variable n{} out of range for {} index coordinates", v + 1, self.vars))
        }
    }

    fn expr(&mut self) -> Result<IndexExpr, String> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(&Tok::Minus) { -1.0 } else { 1.0 };
        loop {
            let mut t = self.term()?;
            t.coef *= sign;
            terms.push(t);
            if self.eat(&Tok::Plus) {
                sign = 1.0;
            } else if self.eat(&Tok::Minus) {
                sign = -1.0;
            } else {
                break;
            }
        }
        Ok(IndexExpr { vars: self.vars, terms })
    }

    fn term(&mut self) -> Result<Term, String> {
        let zero = Rational::from_integer(0);
        let mut t = Term { coef: 1.0, exp2: vec![zero; self.vars], powers: vec![0; self.vars] };
        loop {
            self.factor(&mut t)?;
            if !self.eat(&Tok::Star) {
                return Ok(t);
            }
        }
    }

    fn factor(&mut self, t: &mut Term) -> Result<(), String> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                if v == Rational::from_integer(2) && self.eat(&Tok::Caret) {
                    let (lin, c) = self.exponent()?;
                    for (a, b) in t.exp2.iter_mut().zip(lin) {
                        *a += b;
                    }
                    t.coef *= libm::exp2(rat_f64(c));
                    return Ok(());
                }
                let mut v = v;
                if self.eat(&Tok::Slash) {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != Rational::from_integer(0) => {
                            self.pos += 1;
                            v /= d;
                        }
                        _ => return Err("expected a nonzero denominator".into()),
                    }
                }
                t.coef *= rat_f64(v);
                Ok(())
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                let v = self.var(v)?;
                let mut p = 1u32;
                if self.eat(&Tok::Caret) {
                    match self.peek().cloned() {
                        Some(Tok::Num(e)) if e.is_integer() && e >= Rational::from_integer(0) => {
                            self.pos += 1;
                            p = *e.numer() as u32;
                        }
                        _ => return Err("monomial powers must be nonnegative integers".into()),
                    }
                }
                t.powers[v] += p;
                Ok(())
            }
            other => Err(alloc::format!("expected a factor, found {:?}", other)),
        }
    }

    /// Linear form `Σ a_j n_j + c` after `2^`.
    fn exponent(&mut self) -> Result<(Vec<Rational>, Rational), String> {
        let zero = Rational::from_integer(0);
        let mut lin = vec![zero; self.vars];
        let mut c = zero;
        if !self.eat(&Tok::Open) {
            let neg = self.eat(&Tok::Minus);
            let s = if neg { rat(-1, 1) } else { rat(1, 1) };
            match self.peek().cloned() {
                Some(Tok::Num(v)) => {
                    self.pos += 1;
                    c = v * s;
                }
                Some(Tok::Var(v)) => {
                    self.pos += 1;
                    lin[self.var(v)?] = s;
                }
                other => return Err(alloc::format!("bad exponent start {:?}", other)),
            }
            return Ok((lin, c));
        }
        let mut sign = if self.eat(&Tok::Minus) { rat(-1, 1) } else { rat(1, 1) };
        loop {
            let mut coef = rat(1, 1);
            let mut var = None;
            loop {
                match self.peek().cloned() {
                    Some(Tok::Num(v)) => {
                        self.pos += 1;
                        coef *= v;
                        if self.eat(&Tok::Slash) {
                            match self.peek().cloned() {
                                Some(Tok::Num(d)) if d != zero => {
                                    self.pos += 1;
                                    coef /= d;
                                }
                                _ => return Err("expected a nonzero denominator".into()),
                            }
                        }
                    }
                    Some(Tok::Var(v)) => {
                        self.pos += 1;
                        if var.is_some() {
                            return Err("exponents must be linear in the index".into());
                        }
                        var = Some(self.var(v)?);
                    }
                    other => return Err(alloc::format!("bad exponent term {:?}", other)),
                }
                if !self.eat(&Tok::Star) {
                    break;
                }
            }
            match var {
                Some(v) => lin[v] += sign * coef,
                None => c += sign * coef,
            }
            if self.eat(&Tok::Plus) {
                sign = rat(1, 1);
            } else if self.eat(&Tok::Minus) {
                sign = rat(-1, 1);
            } else {
                break;
            }
        }
        if !self.eat(&Tok::Close) {
            return Err("unclosed exponent".into());
        }
        Ok((lin, c))
    }
}
