//! An infinite loop `M` on `Z x Z` in which `S = {0} x Z` is invariant
//! under every standard generator of the inner mapping group, yet is not
//! normal.
//!
//! For a prime `p` the first coordinates combine by
//!
//! ```text
//! a ⊕ b = p(⌊a/p²⌋ + ⌊b/p²⌋)   if p | a+b and p ∤ a
//!       = a + b                otherwise
//! ```
//!
//! and the second by ordinary addition, except that in the first case the
//! sum `w` is sent to `π_i(w) = p·w + i` with `i = ((a+b-p)/p) mod p`.
//! The unit is `(0, 0)`. Arithmetic is exact; floors round toward `-∞`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mult::GenKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BKParams {
    p: i64,
    /// Audit and witness window: `|a| <= window_a`, `|x| <= window_x`.
    pub window_a: i64,
    pub window_x: i64,
}

impl BKParams {
    /// Default window `|a| <= p³`, `|x| <= 100`.
    pub fn new(p: i64) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidSpec(format!("{p} is not a prime")));
        }
        Ok(BKParams { p, window_a: p.pow(3), window_x: 100 })
    }

    pub fn with_window(mut self, a: i64, x: i64) -> Result<Self> {
        if a <= 0 || x <= 0 {
            return Err(Error::InvalidSpec("window bounds must be positive".into()));
        }
        self.window_a = a;
        self.window_x = x;
        Ok(self)
    }

    pub fn p(&self) -> i64 {
        self.p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BKElement {
    pub a: i64,
    pub x: i64,
}

impl BKElement {
    pub const UNIT: BKElement = BKElement { a: 0, x: 0 };

    pub fn new(a: i64, x: i64) -> Self {
        BKElement { a, x }
    }

    /// Member of `S = {0} x Z`.
    pub fn in_s(&self) -> bool {
        self.a == 0
    }
}

impl fmt::Display for BKElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.x)
    }
}

impl FromStr for BKElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 1, msg: format!("expected `(a,x)`, got `{s}`") };
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (a, x) = inner.split_once(',').ok_or_else(bad)?;
        Ok(BKElement { a: a.trim().parse().map_err(|_| bad())?, x: x.trim().parse().map_err(|_| bad())? })
    }
}

fn special(p: i64, a: i64, b: i64) -> bool {
    (a + b).rem_euclid(p) == 0 && a.rem_euclid(p) != 0
}

pub fn oplus(p: i64, a: i64, b: i64) -> i64 {
    if special(p, a, b) {
        p * (a.div_euclid(p * p) + b.div_euclid(p * p))
    } else {
        a + b
    }
}

pub fn bk_mul(params: &BKParams, u: BKElement, v: BKElement) -> BKElement {
    let p = params.p;
    let (a, b) = (u.a, v.a);
    if special(p, a, b) {
        let i = ((a + b - p) / p).rem_euclid(p);
        BKElement { a: oplus(p, a, b), x: p * (u.x + v.x) + i }
    } else {
        BKElement { a: a + b, x: u.x + v.x }
    }
}

/// Base-`p` digits `(d0, d1, rest)` with `a = rest·p² + d1·p + d0`.
fn digits(p: i64, a: i64) -> (i64, i64, i64) {
    (a.rem_euclid(p), a.div_euclid(p).rem_euclid(p), a.div_euclid(p * p))
}

/// The unique `v` with `u · v = w`.
pub fn bk_ldiv(params: &BKParams, u: BKElement, w: BKElement) -> Result<BKElement> {
    let p = params.p;
    let (a, c) = (u.a, w.a);
    let v = if c.rem_euclid(p) != 0 || a.rem_euclid(p) == 0 {
        BKElement { a: c - a, x: w.x - u.x }
    } else {
        let (a0, a1, a2) = digits(p, a);
        let i = w.x.rem_euclid(p);
        let b1 = (i - a1).rem_euclid(p);
        let b = (c / p - a2) * p * p + b1 * p + (p - a0);
        BKElement { a: b, x: (w.x - i) / p - u.x }
    };
    if bk_mul(params, u, v) != w {
        return Err(Error::Inconsistent(format!("{u} \\ {w} gave {v}")));
    }
    Ok(v)
}

/// The unique `u` with `u · v = w`.
pub fn bk_rdiv(params: &BKParams, w: BKElement, v: BKElement) -> Result<BKElement> {
    let p = params.p;
    let (b, c) = (v.a, w.a);
    let u = if c.rem_euclid(p) != 0 || b.rem_euclid(p) == 0 {
        BKElement { a: c - b, x: w.x - v.x }
    } else {
        let (b0, b1, b2) = digits(p, b);
        let i = w.x.rem_euclid(p);
        let a1 = (i - b1).rem_euclid(p);
        let a = (c / p - b2) * p * p + a1 * p + (p - b0);
        BKElement { a, x: (w.x - i) / p - v.x }
    };
    if bk_mul(params, u, v) != w {
        return Err(Error::Inconsistent(format!("{w} / {v} gave {u}")));
    }
    Ok(u)
}

/// Applies `L_{xy}^-1 L_x L_y`, `R_{yx}^-1 R_x R_y` or `L_x^-1 R_x` to `s`.
pub fn standard_inner(params: &BKParams, kind: GenKind, x: BKElement, y: BKElement, s: BKElement) -> Result<BKElement> {
    let m = |u, v| bk_mul(params, u, v);
    match kind {
        GenKind::LL => bk_ldiv(params, m(x, y), m(x, m(y, s))),
        GenKind::RR => bk_rdiv(params, m(m(s, y), x), m(y, x)),
        GenKind::TR => bk_ldiv(params, x, m(s, x)),
    }
}

/// `s0 ∈ S` outside `φ(S)` for `φ = L_{xy}^-1 L_x L_y`, with the unique
/// preimage `φ^-1(s0)`, which lies outside `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: BKElement,
    pub y: BKElement,
    pub s0: BKElement,
    pub preimage: BKElement,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} y={} s0={} preimage={}", self.x, self.y, self.s0, self.preimage)
    }
}

/// `0, 1, -1, 2, -2, ...` up to `|t| <= bound`.
fn zigzag(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

/// Window elements ordered by `|a| + |x|`, then `a`, then `x`, both in
/// zigzag order.
fn scan_order(params: &BKParams) -> Vec<BKElement> {
    let rank = |t: i64| if t > 0 { 2 * t - 1 } else { -2 * t };
    let mut out: Vec<BKElement> = (-params.window_a..=params.window_a)
        .flat_map(|a| (-params.window_x..=params.window_x).map(move |x| BKElement { a, x }))
        .collect();
    out.sort_by_key(|e| (e.a.abs() + e.x.abs(), rank(e.a), rank(e.x)));
    out
}

/// Deterministic scan for a [`Witness`]. Pairs with `x` or `y` in `S` are
/// skipped since then `φ` maps `S` onto itself; `x` runs before `y`.
pub fn nonnormal_witness(params: &BKParams) -> Result<Witness> {
    let elems: Vec<BKElement> = scan_order(params).into_iter().filter(|e| !e.in_s()).collect();
    for &x in &elems {
        for &y in &elems {
            let xy = bk_mul(params, x, y);
            for t in zigzag(params.window_x) {
                let s0 = BKElement { a: 0, x: t };
                let pre = bk_ldiv(params, y, bk_ldiv(params, x, bk_mul(params, xy, s0))?)?;
                if !pre.in_s() {
                    // replay forward with multiplication only
                    if bk_mul(params, x, bk_mul(params, y, pre)) != bk_mul(params, xy, s0) {
                        return Err(Error::Inconsistent(format!("witness replay failed for {x} {y} {s0}")));
                    }
                    return Ok(Witness { x, y, s0, preimage: pre });
                }
            }
        }
    }
    Err(Error::WitnessNotFoundInWindow)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: u64,
    pub violations: Vec<String>,
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checks, {} violations", self.checks, self.violations.len())
    }
}

impl AuditReport {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violations.len() < 100 {
            self.violations.push(what());
        }
    }
}

/// Windowed audit of the loop axioms and of the behavior of `S`.
///
/// Pairs `(u, v)` take every first coordinate in `[-A, A]` and `u` every
/// second coordinate in `[-X, X]`; for each `u` and first coordinate of `v`
/// one second coordinate of `v` is picked by a rotation that sweeps
/// `[-X, X]`. Coset and generator checks use a fixed probe set of second
/// coordinates.
pub fn window_audit(params: &BKParams) -> AuditReport {
    let (p, wa, wx) = (params.p, params.window_a, params.window_x);
    let probes: Vec<i64> = {
        let mut v = vec![-wx, -1, 0, 1, 2, wx];
        v.dedup();
        v
    };
    let mut rep = AuditReport::default();
    let sample_s: Vec<BKElement> = probes.iter().map(|&z| BKElement::new(0, z)).collect();

    for a in -wa..=wa {
        for b in -wa..=wa {
            for x in -wx..=wx {
                let u = BKElement::new(a, x);
                // one partner per (u, b), rotating through [-X, X]
                let y = -wx + (x + wx + 37 * (b + wa)).rem_euclid(2 * wx + 1);
                let v = BKElement::new(b, y);
                let w = bk_mul(params, u, v);
                rep.check(bk_mul(params, v, u) == w, || format!("{u}{v} != {v}{u}"));
                let l = bk_ldiv(params, u, w);
                rep.check(l == Ok(v), || format!("{u} \\ {w} = {l:?}, expected {v}"));
                let r = bk_rdiv(params, w, v);
                rep.check(r == Ok(u), || format!("{w} / {v} = {r:?}, expected {u}"));
                // v read as a target
                let l = bk_ldiv(params, u, v).map(|z| bk_mul(params, u, z));
                rep.check(l == Ok(v), || format!("{u}({u} \\ {v}) = {l:?}"));
                let r = bk_rdiv(params, v, u).map(|z| bk_mul(params, z, u));
                rep.check(r == Ok(v), || format!("({v} / {u}){u} = {r:?}"));
            }
        }
    }

    // cosets of S: uS = Su = {a} x Z, and S is a subloop
    for a in -wa..=wa {
        for &x in &probes {
            let u = BKElement::new(a, x);
            for &s in &sample_s {
                rep.check(bk_mul(params, u, s).a == a && bk_mul(params, s, u).a == a, || {
                    format!("{u}, {s} leave the coset")
                });
                let target = BKElement::new(a, s.x);
                let l = bk_ldiv(params, u, target);
                rep.check(l.as_ref().is_ok_and(|z| z.in_s()), || format!("{u} \\ {target} = {l:?} not in S"));
                let r = bk_rdiv(params, target, u);
                rep.check(r.as_ref().is_ok_and(|z| z.in_s()), || format!("{target} / {u} = {r:?} not in S"));
            }
        }
    }
    for &s in &sample_s {
        for &t in &sample_s {
            let ok = bk_mul(params, s, t).in_s()
                && bk_ldiv(params, s, t).as_ref().is_ok_and(|z| z.in_s())
                && bk_rdiv(params, t, s).as_ref().is_ok_and(|z| z.in_s());
            rep.check(ok, || format!("S not closed at {s}, {t}"));
        }
    }

    // standard generators map S into S
    let small: Vec<i64> = vec![-1, 0, 1];
    for a in -wa..=wa {
        for b in -wa..=wa {
            for &xs in &small {
                for &ys in &small {
                    let (x, y) = (BKElement::new(a, xs), BKElement::new(b, ys));
                    for &s in &sample_s {
                        for kind in [GenKind::LL, GenKind::RR, GenKind::TR] {
                            let img = standard_inner(params, kind, x, y, s);
                            rep.check(img.as_ref().is_ok_and(|z| z.in_s()), || {
                                format!("{kind}({x},{y}) sends {s} to {img:?}")
                            });
                        }
                    }
                }
            }
        }
    }

    // the solution set of a ⊕ b = c for p | c, p ∤ a, in parametrized form
    for a in (-wa..=wa).filter(|a| a.rem_euclid(p) != 0) {
        for c in (-wa..=wa).filter(|c| c.rem_euclid(p) == 0) {
            let a1 = a.div_euclid(p).rem_euclid(p);
            let set: Vec<i64> = (0..p).map(|t| c * p - a + p * (a1 + t + 1)).collect();
            for &b in &set {
                rep.check(oplus(p, a, b) == c && special(p, a, b), || format!("{a} ⊕ {b} != {c}"));
            }
            for z in 0..p {
                let v = bk_ldiv(params, BKElement::new(a, 0), BKElement::new(c, z));
                rep.check(v.as_ref().is_ok_and(|v| set.contains(&v.a)), || {
                    format!("({a},0) \\ ({c},{z}) = {v:?} outside the set")
                });
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, x: i64) -> BKElement {
        BKElement::new(a, x)
    }

    #[test]
    fn oplus_values() {
        assert_eq!(oplus(2, 0, 5), 5);
        assert_eq!(oplus(2, 1, 1), 0);
        assert_eq!(oplus(2, 3, 1), 0);
        assert_eq!(oplus(2, 2, 2), 4);
        // floors toward -inf: ⌊-1/4⌋ = -1
        assert_eq!(oplus(2, -1, 1), -2);
    }

    #[test]
    fn products_and_divisions() {
        let p2 = BKParams::new(2).unwrap();
        assert_eq!(bk_mul(&p2, e(0, 3), e(0, 4)), e(0, 7));
        assert_eq!(bk_mul(&p2, e(1, 3), e(1, 4)), e(0, 14));
        assert_eq!(bk_mul(&p2, e(1, 0), e(3, 0)), e(0, 1));
        assert_eq!(bk_ldiv(&p2, e(0, 3), e(0, 7)).unwrap(), e(0, 4));
        assert_eq!(bk_ldiv(&p2, e(1, 3), e(0, 14)).unwrap(), e(1, 4));
        assert_eq!(bk_rdiv(&p2, e(0, 1), e(3, 0)).unwrap(), e(1, 0));
    }

    #[test]
    fn standard_inner_examples() {
        let p2 = BKParams::new(2).unwrap();
        for kind in [GenKind::LL, GenKind::RR, GenKind::TR] {
            assert_eq!(standard_inner(&p2, kind, e(3, 1), e(-5, 2), BKElement::UNIT).unwrap(), BKElement::UNIT);
        }
        for t in -5..=5 {
            assert_eq!(standard_inner(&p2, GenKind::LL, e(1, 0), e(1, 0), e(0, t)).unwrap(), e(0, 2 * t));
        }
    }

    #[test]
    fn witness_for_two() {
        let w = nonnormal_witness(&BKParams::new(2).unwrap()).unwrap();
        assert_eq!((w.x, w.y, w.s0, w.preimage), (e(1, 0), e(1, 0), e(0, 1), e(2, 0)));
        assert_eq!(w.to_string(), "x=(1,0) y=(1,0) s0=(0,1) preimage=(2,0)");
        // (0,2) is in the image: φ((0,1)) = (0,2)
        let p2 = BKParams::new(2).unwrap();
        assert_eq!(standard_inner(&p2, GenKind::LL, e(1, 0), e(1, 0), e(0, 1)).unwrap(), e(0, 2));
    }

    #[test]
    fn small_audit_is_clean() {
        for p in [2, 3] {
            let params = BKParams::new(p).unwrap().with_window(p * p, 6).unwrap();
            let rep = window_audit(&params);
            assert!(rep.violations.is_empty(), "{:?}", rep.violations);
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn params_and_parsing() {
        assert!(BKParams::new(4).is_err());
        assert!(BKParams::new(1).is_err());
        assert!(BKParams::new(7).is_ok());
        assert!(BKParams::new(2).unwrap().with_window(0, 1).is_err());
        assert_eq!(" (-3, 14) ".parse::<BKElement>().unwrap(), e(-3, 14));
        assert!("(1;2)".parse::<BKElement>().is_err());
        assert_eq!(e(-1, 2).to_string(), "(-1,2)");
    }
}
