//! A small term language for loop identities.
//!
//! Syntax: variables are single lowercase letters, `1` is the identity,
//! `*`, `\` and `/` are multiplication, left and right division (one
//! precedence level, left associative), and postfix `^l` / `^r` are the
//! left and right inverses `1/x` and `x\1`.
//!
//! ```
//! use loopkit::term::Identity;
//! let lip = Identity::parse("x^l * (x * y) = y").unwrap();
//! assert_eq!(lip.arity(), 2);
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::table::LoopTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(u8),
    One,
    Mul(Box<Term>, Box<Term>),
    LDiv(Box<Term>, Box<Term>),
    RDiv(Box<Term>, Box<Term>),
    LInv(Box<Term>),
    RInv(Box<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    Var(u8),
    One,
    Mul,
    LDiv,
    RDiv,
    LInv,
    RInv,
}

/// The condition a partial evaluation is waiting on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Blocker {
    /// Cell `(row, col)` is empty.
    Cell(usize, usize),
    /// Value `v` does not yet occur in row `r`.
    RowValue(usize, usize),
    /// Value `v` does not yet occur in column `c`.
    ColValue(usize, usize),
}

/// Table access used by the evaluator; complete tables never block.
pub trait CellSource {
    fn mul(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker>;
    fn ldiv(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker>;
    fn rdiv(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker>;
}

impl CellSource for LoopTable {
    #[inline]
    fn mul(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker> {
        Ok(LoopTable::mul(self, x, y))
    }
    #[inline]
    fn ldiv(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker> {
        Ok(LoopTable::ldiv(self, x, y))
    }
    #[inline]
    fn rdiv(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker> {
        Ok(LoopTable::rdiv(self, x, y))
    }
}

/// A compiled postfix program for one side of an identity.
#[derive(Clone, Debug)]
pub(crate) struct Program(Vec<Op>);

impl Program {
    fn compile(t: &Term) -> Program {
        fn go(t: &Term, out: &mut Vec<Op>) {
            match t {
                Term::Var(v) => out.push(Op::Var(*v)),
                Term::One => out.push(Op::One),
                Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                    go(a, out);
                    go(b, out);
                    out.push(match t {
                        Term::Mul(..) => Op::Mul,
                        Term::LDiv(..) => Op::LDiv,
                        _ => Op::RDiv,
                    });
                }
                Term::LInv(a) | Term::RInv(a) => {
                    go(a, out);
                    out.push(if matches!(t, Term::LInv(_)) { Op::LInv } else { Op::RInv });
                }
            }
        }
        let mut ops = Vec::new();
        go(t, &mut ops);
        Program(ops)
    }

    #[inline]
    pub(crate) fn eval<C: CellSource>(&self, cells: &C, vars: &[usize]) -> std::result::Result<usize, Blocker> {
        let mut stack = [0usize; 32];
        let mut sp = 0;
        for op in &self.0 {
            match *op {
                Op::Var(v) => {
                    stack[sp] = vars[v as usize];
                    sp += 1;
                }
                Op::One => {
                    stack[sp] = 0;
                    sp += 1;
                }
                Op::Mul | Op::LDiv | Op::RDiv => {
                    let (a, b) = (stack[sp - 2], stack[sp - 1]);
                    sp -= 1;
                    stack[sp - 1] = match op {
                        Op::Mul => cells.mul(a, b)?,
                        Op::LDiv => cells.ldiv(a, b)?,
                        _ => cells.rdiv(a, b)?,
                    };
                }
                Op::LInv => stack[sp - 1] = cells.rdiv(0, stack[sp - 1])?,
                Op::RInv => stack[sp - 1] = cells.ldiv(stack[sp - 1], 0)?,
            }
        }
        Ok(stack[0])
    }

    fn depth(&self) -> usize {
        let (mut sp, mut max) = (0usize, 0usize);
        for op in &self.0 {
            match op {
                Op::Var(_) | Op::One => sp += 1,
                Op::Mul | Op::LDiv | Op::RDiv => sp -= 1,
                Op::LInv | Op::RInv => {}
            }
            max = max.max(sp);
        }
        max
    }
}

/// Result of evaluating one ground instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Blocked(Blocker),
}

/// An equation `lhs = rhs`, universally quantified over its variables.
#[derive(Clone)]
pub struct Identity {
    text: String,
    vars: Vec<char>,
    lhs: Term,
    rhs: Term,
    lhs_prog: Program,
    rhs_prog: Program,
}

impl Identity {
    pub fn parse(text: &str) -> Result<Identity> {
        let mut p = Parser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, vars: Vec::new() };
        let lhs = p.expr()?;
        p.expect('=')?;
        let rhs = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::BadIdentity(format!("unexpected `{}` in `{text}`", p.chars[p.pos])));
        }
        let (lhs_prog, rhs_prog) = (Program::compile(&lhs), Program::compile(&rhs));
        if lhs_prog.depth() > 32 || rhs_prog.depth() > 32 {
            return Err(Error::BadIdentity(format!("`{text}` nests too deeply")));
        }
        Ok(Identity { text: text.to_string(), vars: p.vars, lhs, rhs, lhs_prog, rhs_prog })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Number of distinct variables.
    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[char] {
        &self.vars
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// Evaluates one ground instance against a (possibly partial) table.
    #[inline]
    pub fn judge<C: CellSource>(&self, cells: &C, vars: &[usize]) -> Verdict {
        let l = match self.lhs_prog.eval(cells, vars) {
            Ok(v) => v,
            Err(b) => return Verdict::Blocked(b),
        };
        match self.rhs_prog.eval(cells, vars) {
            Ok(r) if r == l => Verdict::Holds,
            Ok(_) => Verdict::Violated,
            Err(b) => Verdict::Blocked(b),
        }
    }

    /// The first assignment (odometer order, last variable fastest) that
    /// falsifies the identity in `q`.
    pub fn counterexample(&self, q: &LoopTable) -> Option<Vec<usize>> {
        let n = q.order();
        let mut vars = vec![0usize; self.arity()];
        loop {
            let l = self.lhs_prog.eval(q, &vars).expect("complete table");
            let r = self.rhs_prog.eval(q, &vars).expect("complete table");
            if l != r {
                return Some(vars);
            }
            if !advance(&mut vars, n) {
                return None;
            }
        }
    }

    pub fn holds_in(&self, q: &LoopTable) -> bool {
        self.counterexample(q).is_none()
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({})", self.text)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Odometer increment over `0..n` per slot; false after the last tuple.
pub(crate) fn advance(vars: &mut [usize], n: usize) -> bool {
    for v in vars.iter_mut().rev() {
        *v += 1;
        if *v < n {
            return true;
        }
        *v = 0;
    }
    false
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    vars: Vec<char>,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::BadIdentity(format!("expected `{c}` at position {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while let Some(c @ ('*' | '\\' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            t = match c {
                '*' => Term::Mul(Box::new(t), Box::new(rhs)),
                '\\' => Term::LDiv(Box::new(t), Box::new(rhs)),
                _ => Term::RDiv(Box::new(t), Box::new(rhs)),
            };
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            t = match self.peek() {
                Some('l') => Term::LInv(Box::new(t)),
                Some('r') => Term::RInv(Box::new(t)),
                _ => return Err(Error::BadIdentity("expected `l` or `r` after `^`".into())),
            };
            self.pos += 1;
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(')')?;
                Ok(t)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                let idx = match self.vars.iter().position(|&v| v == c) {
                    Some(i) => i,
                    None => {
                        self.vars.push(c);
                        self.vars.len() - 1
                    }
                };
                Ok(Term::Var(idx as u8))
            }
            other => Err(Error::BadIdentity(format!("unexpected {other:?} at position {}", self.pos))),
        }
    }
}
