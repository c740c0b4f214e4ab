//! Structural theorems about LC, Osborn and Buchsteiner loops, evaluated on
//! one finite loop at a time. Every implication is checked only when its
//! antecedent holds; group computations that exceed their cap report N/A.

use std::collections::HashMap;
use std::fmt;

use super::autotopism::{
    companion_of_left_inner, companion_of_right_inner, delta, family_is_autotopic, is_automorphism, is_autotopism,
    is_g_loop_with_budget, is_left_pseudoautomorphism, is_right_pseudoautomorphism, osborn_alpha_audit, phi, psi,
};
use super::catalog::check_variety;
use crate::error::Error;
use crate::mult::{self, commutator_lr, left_inner, right_inner};
use crate::perm::{closure, fixed_points, Perm};
use crate::structure::{self, SubloopSet};
use crate::table::LoopTable;

/// Cap on materialized groups inside the suite.
pub const SUITE_GROUP_CAP: usize = 1 << 16;
/// Isomorphism budget for the G-loop checks.
pub const SUITE_ISO_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: &'static str,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheoremReport {
    pub rows: Vec<CheckResult>,
}

impl TheoremReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.rows.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn outcome(&self, id: &str) -> Option<Outcome> {
        self.rows.iter().find(|r| r.id == id).map(|r| r.outcome)
    }

    /// One `<loop-id> <check-id> PASS|FAIL|N/A` line per check.
    pub fn lines(&self, loop_id: &str) -> String {
        self.rows.iter().map(|r| format!("{loop_id} {} {}\n", r.id, r.outcome)).collect()
    }
}

fn verdict(b: bool) -> Outcome {
    if b {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn implies(ante: bool, cons: impl FnOnce() -> bool) -> Outcome {
    if ante {
        verdict(cons())
    } else {
        Outcome::NotApplicable
    }
}

fn all_equal(flags: &[bool]) -> bool {
    flags.windows(2).all(|w| w[0] == w[1])
}

fn two_of_three(a: bool, b: bool, c: bool) -> Outcome {
    if [a, b, c].iter().filter(|&&t| t).count() >= 2 {
        verdict(a && b && c)
    } else {
        Outcome::NotApplicable
    }
}

struct Ctx<'a> {
    q: &'a LoopTable,
    flags: HashMap<&'static str, bool>,
    nl: SubloopSet,
    nm: SubloopSet,
    nr: SubloopSet,
    n: SubloopSet,
}

impl<'a> Ctx<'a> {
    fn new(q: &'a LoopTable) -> Self {
        let (nl, nm, nr) = (structure::left_nucleus(q), structure::middle_nucleus(q), structure::right_nucleus(q));
        let n = nl.intersection(&nm).intersection(&nr);
        Ctx { q, flags: HashMap::new(), nl, nm, nr, n }
    }

    fn has(&mut self, id: &'static str) -> bool {
        if let Some(&b) = self.flags.get(id) {
            return b;
        }
        let b = check_variety(self.q, id).expect("catalog id");
        self.flags.insert(id, b);
        b
    }

    fn holds(&self, text: &str) -> bool {
        crate::term::Identity::parse(text).expect("identity").holds_in(self.q)
    }

    fn sq(&self, x: usize) -> usize {
        self.q.mul(x, x)
    }

    fn squares_in(&self, s: &SubloopSet) -> bool {
        self.q.elements().all(|x| s.contains(self.sq(x)))
    }

    fn l(&self, x: usize) -> Perm {
        self.q.left_translation(x)
    }

    fn r(&self, x: usize) -> Perm {
        self.q.right_translation(x)
    }

    fn is_left_translation(&self, p: &Perm) -> bool {
        *p == self.l(p.apply(0))
    }

    /// Normality through the materialized inner mapping group, or the
    /// equivalent coset test once the group exceeds the suite cap.
    fn normal(&self, s: &SubloopSet) -> bool {
        match structure::is_normal_subloop_capped(self.q, s, SUITE_GROUP_CAP) {
            Ok(b) => b,
            Err(Error::Capped(_)) => structure::is_normal_by_cosets(self.q, s).unwrap_or(false),
            Err(_) => false,
        }
    }

    fn quotient_by_nucleus(&self) -> Option<LoopTable> {
        structure::quotient(self.q, &self.n).ok().map(|f| f.table)
    }
}

/// Runs every check on `q`.
pub fn verify_theorems(q: &LoopTable) -> TheoremReport {
    let mut c = Ctx::new(q);
    let mut rows = Vec::new();
    let mut push = |id: &'static str, outcome: Outcome| rows.push(CheckResult { id, outcome });
    let n = q.order();

    // ten equivalent descriptions of LC loops
    let lap = c.has("lap");
    let lip = c.has("lip");
    let sq_nl = c.squares_in(&c.nl);
    let sq_nm = c.squares_in(&c.nm);
    let a2 = [
        c.has("lc"),
        c.holds("(x*x)*(y*z) = (x*(x*y))*z"),
        c.holds("((x*x)*y)*z = x*(x*(y*z))"),
        c.holds("y*(x*(x*z)) = (y*(x*x))*z"),
        lap && sq_nl,
        lap && sq_nm,
        lip && sq_nl,
        q.elements().all(|x| {
            let l2 = c.l(x).pow(2);
            is_autotopism(q, &l2, &Perm::identity(n), &l2).unwrap()
        }),
        q.elements().all(|x| q.elements().all(|y| c.is_left_translation(&c.l(x).pow(2).compose(&c.l(y))))),
        q.elements().all(|x| q.elements().all(|y| c.is_left_translation(&c.l(y).compose(&c.l(x).pow(2))))),
    ];
    push("lc-ten-way", verdict(all_equal(&a2)));

    // five equivalent descriptions of C loops
    let a3 = [
        c.has("lc") && c.has("rc"),
        c.has("ip") && c.squares_in(&c.n),
        c.has("ap") && sq_nm,
        c.has("c"),
        q.elements().all(|x| {
            let (l2, r2) = (c.l(x).pow(2), c.r(x).pow(2).inverse());
            is_autotopism(q, &r2, &l2, &Perm::identity(n)).unwrap()
        }),
    ];
    push("c-five-way", verdict(all_equal(&a3)));

    let (lcc, lc, lbol) = (c.has("lcc"), c.has("lc"), c.has("lbol"));
    push("lcc-lc-lbol", two_of_three(lcc, lc, lbol));
    push("lbol-lc-squares", implies(lbol, || lc == sq_nl));

    let extra = c.has("extra");
    let (rbol, rcc, buch, cl) = (c.has("rbol"), c.has("rcc"), c.has("buchsteiner"), c.has("c"));
    push("extra-equivalents", verdict(all_equal(&[extra, lc && rbol, lc && rcc, lc && buch, cl && lbol, cl && lcc])));

    push("lc-nucleus-normal", implies(lc, || lip && c.nl == c.nm && c.normal(&c.nl)));
    push("lip-nuclei", implies(lip, || c.nl == c.nm));
    let rip = c.has("rip");
    push("rip-nuclei", implies(rip, || c.nr == c.nm));

    // Osborn loops
    let osb: Vec<bool> =
        ["osborn-1", "osborn-2", "osborn-3", "osborn-4", "osborn-5", "osborn-6", "osborn-7", "osborn-8"]
            .iter()
            .map(|id| c.has(id))
            .collect();
    let osborn = osb[0];
    push("osborn-eight-way", verdict(all_equal(&osb)));
    push("osborn-opposite", verdict(osborn == check_variety(&q.opposite(), "osborn-1").unwrap()));
    push("osborn-psi", verdict(osborn == family_is_autotopic(q, psi)));
    push("osborn-alpha", implies(osborn, || osborn_alpha_audit(q)));
    push(
        "osborn-psi-inverse",
        implies(osborn, || {
            q.elements().all(|x| {
                let (lx, rx) = (c.l(x), c.r(x));
                is_autotopism(q, &lx, &c.r(q.right_inv(x)).inverse(), &rx.compose(&lx)).unwrap()
            })
        }),
    );

    let moufang = c.has("moufang");
    for (id, prop) in [
        ("osborn-lip-moufang", "lip"),
        ("osborn-rip-moufang", "rip"),
        ("osborn-flx-moufang", "flx"),
        ("osborn-lap-moufang", "lap"),
        ("osborn-rap-moufang", "rap"),
        ("osborn-aaip-moufang", "aaip"),
    ] {
        let p = c.has(prop);
        push(id, implies(osborn && p, || moufang));
    }
    let diassoc = ["lip", "rip", "flx", "lap", "rap", "aaip"].iter().all(|p| c.has(p));
    push("moufang-diassociative-props", implies(moufang, || diassoc));
    push("moufang-osborn", implies(moufang, || osborn));
    let cc = c.has("cc");
    push("cc-osborn", implies(cc, || osborn));
    let vd = c.has("vd");
    push("vd-osborn", implies(vd, || osborn));
    push("osborn-cc-lcc-rcc", implies(osborn, || all_equal(&[cc, lcc, rcc])));

    let (wip, genm) = (c.has("wip"), c.has("gen-moufang"));
    push("gen-moufang-wip-osborn", verdict(genm == (wip && osborn)));
    push("wip-cc-gen-moufang", implies(wip && cc, || genm));
    push("wip-lcc-rcc-cc", implies(wip && (lcc || rcc), || cc));
    push(
        "gen-moufang-quotient-moufang",
        implies(genm, || c.quotient_by_nucleus().is_some_and(|f| check_variety(&f, "moufang").unwrap())),
    );

    let g_loop = |q: &LoopTable| match is_g_loop_with_budget(q, SUITE_ISO_BUDGET) {
        Ok(b) => verdict(b),
        Err(Error::Capped(_)) => Outcome::NotApplicable,
        Err(_) => Outcome::Fail,
    };
    push("cc-g-loop", if cc { g_loop(q) } else { Outcome::NotApplicable });
    push("vd-g-loop", if vd { g_loop(q) } else { Outcome::NotApplicable });
    let fourth_nuclear = q.elements().all(|x| c.n.contains(c.sq(c.sq(x))));
    push("moufang-fourth-powers-vd", implies(moufang && fourth_nuclear, || vd));
    let sq_n = c.squares_in(&c.n);
    push("cc-nuclear-squares-vd", implies(cc && sq_n, || vd));

    // multiplication and inner mapping groups
    push("osborn-mlt-normal", if osborn { mlt_normal(q) } else { Outcome::NotApplicable });
    push(
        "osborn-translation-conjugates",
        implies(osborn, || {
            q.elements().all(|x| {
                let (xl, xr) = (q.left_inv(x), q.right_inv(x));
                let (lx, rx) = (c.l(x), c.r(x));
                q.elements().all(|y| {
                    let (ly, ry) = (c.l(y), c.r(y));
                    rx.inverse().compose(&ly).compose(&rx) == c.l(xl).inverse().compose(&c.l(q.mul(xl, y)))
                        && lx.inverse().compose(&ry).compose(&lx) == c.r(xr).inverse().compose(&c.r(q.mul(y, xr)))
                        && rx.compose(&ly).compose(&rx.inverse()) == lx.inverse().compose(&c.l(q.ldiv(xl, y)))
                        && lx.compose(&ry).compose(&lx.inverse()) == rx.inverse().compose(&c.r(q.rdiv(y, xr)))
                })
            })
        }),
    );
    push(
        "osborn-commutator",
        implies(osborn, || {
            q.elements().all(|x| {
                let xl = q.left_inv(x);
                q.elements().all(|y| {
                    let yr = q.right_inv(y);
                    let k = commutator_lr(q, y, x);
                    k == left_inner(q, xl, y).inverse()
                        && k == c.r(q.mul(x, yr)).inverse().compose(&c.r(yr)).compose(&c.r(x))
                })
            })
        }),
    );
    push("osborn-inner-groups", if osborn { inner_groups(q) } else { Outcome::NotApplicable });
    push("osborn-nuclei", implies(osborn, || c.nl == c.nm && c.nm == c.nr && c.normal(&c.n)));
    push("nuclei-fixed-points", verdict(nuclei_fixed_points(q, &c)));
    push(
        "osborn-pseudo-companions",
        implies(osborn, || {
            q.elements().all(|x| {
                q.elements().all(|y| {
                    is_right_pseudoautomorphism(q, &left_inner(q, x, y), companion_of_left_inner(q, x, y)).unwrap()
                        && is_left_pseudoautomorphism(q, &right_inner(q, x, y), companion_of_right_inner(q, x, y))
                            .unwrap()
                })
            })
        }),
    );
    push(
        "osborn-inverse-automorphisms",
        implies(osborn, || {
            q.elements().all(|x| {
                let (xl, xr) = (q.left_inv(x), q.right_inv(x));
                let l = c.l(xl).compose(&c.l(x));
                let r = c.r(x).compose(&c.r(xl));
                l == c.l(x).compose(&c.l(xr))
                    && r == c.r(xr).compose(&c.r(x))
                    && is_automorphism(q, &l).unwrap()
                    && is_automorphism(q, &r).unwrap()
            })
        }),
    );
    let cip = c.has("cip");
    let comm = c.has("commutative");
    push("osborn-cip-cml", implies(osborn && cip, || comm && moufang));
    let automorphic = c.has("left-a") || c.has("right-a");
    push(
        "osborn-automorphic-quotient-cml",
        implies(osborn && automorphic, || {
            c.quotient_by_nucleus()
                .is_some_and(|f| check_variety(&f, "commutative").unwrap() && check_variety(&f, "moufang").unwrap())
        }),
    );
    push(
        "cc-quotient-abelian",
        implies(cc, || {
            c.quotient_by_nucleus()
                .is_some_and(|f| check_variety(&f, "commutative").unwrap() && check_variety(&f, "associative").unwrap())
        }),
    );

    // translation equalities for Osborn and Buchsteiner loops
    push(
        "buchsteiner-square-translations",
        implies(buch, || {
            q.elements().all(|x| {
                let (lx, rx, x2) = (c.l(x), c.r(x), c.sq(x));
                c.l(x2) == lx.compose(&rx.inverse()).compose(&lx).compose(&rx)
                    && c.r(x2) == rx.compose(&lx.inverse()).compose(&rx).compose(&lx)
            })
        }),
    );
    push(
        "buchsteiner-right-square",
        implies(buch, || {
            q.elements().all(|x| {
                let x2 = c.sq(x);
                c.r(x).pow(2).compose(&c.l(x2).inverse()).compose(&c.l(x).pow(2)) == c.r(x2)
            })
        }),
    );
    push(
        "nuclear-square-left",
        verdict(
            q.elements()
                .filter(|&x| c.n.contains(c.sq(x)))
                .all(|x| c.l(c.sq(x)) == c.l(x).compose(&c.l(q.left_inv(x)).inverse())),
        ),
    );
    push(
        "osborn-nuclear-square-left",
        implies(osborn, || {
            q.elements().filter(|&x| c.n.contains(c.sq(x))).all(|x| {
                let (lx, rx) = (c.l(x), c.r(x));
                c.l(c.sq(x)) == lx.compose(&rx.inverse()).compose(&lx).compose(&rx)
            })
        }),
    );
    push("buchsteiner-phi", verdict(buch == family_is_autotopic(q, phi)));
    let jai = c.has("jaiyeola");
    push("jaiyeola-delta", verdict(jai == family_is_autotopic(q, delta)));
    push("osborn-buchsteiner-squares", two_of_three(osborn, buch, sq_n));
    push("osborn-buchsteiner-jaiyeola", two_of_three(osborn, buch, jai));
    push("gen-moufang-wip-cc-squares", two_of_three(genm, wip && cc, sq_n));
    push("gen-moufang-wip-cc-jaiyeola", two_of_three(genm, wip && cc, jai));

    TheoremReport { rows }
}

fn mlt_normal(q: &LoopTable) -> Outcome {
    let n = q.order();
    let lefts: Vec<Perm> = q.elements().map(|x| q.left_translation(x)).collect();
    let rights: Vec<Perm> = q.elements().map(|x| q.right_translation(x)).collect();
    let all: Vec<Perm> = lefts.iter().chain(&rights).cloned().collect();
    let groups = (|| {
        Ok::<_, Error>((
            closure(n, &all, SUITE_GROUP_CAP)?,
            closure(n, &lefts, SUITE_GROUP_CAP)?,
            closure(n, &rights, SUITE_GROUP_CAP)?,
        ))
    })();
    match groups {
        Ok((m, ml, mr)) => {
            verdict(mult::is_normal_subgroup(&ml, &m).unwrap() && mult::is_normal_subgroup(&mr, &m).unwrap())
        }
        Err(_) => Outcome::NotApplicable,
    }
}

fn inner_groups(q: &LoopTable) -> Outcome {
    let n = q.order();
    let ll: Vec<Perm> = q.elements().flat_map(|x| q.elements().map(move |y| left_inner(q, x, y))).collect();
    let rr: Vec<Perm> = q.elements().flat_map(|x| q.elements().map(move |y| right_inner(q, x, y))).collect();
    let groups = (|| {
        Ok::<_, Error>((
            closure(n, &ll, SUITE_GROUP_CAP)?,
            closure(n, &rr, SUITE_GROUP_CAP)?,
            closure(n, &mult::commutators(q), SUITE_GROUP_CAP)?,
        ))
    })();
    match groups {
        Ok((il, ir, ik)) => verdict(il.same_elements(&ir) && il.same_elements(&ik)),
        Err(_) => Outcome::NotApplicable,
    }
}

/// Left nucleus fixed by the `LL` family, right nucleus by `RR`, middle
/// nucleus by the commutators `[L_y, R_x]`.
fn nuclei_fixed_points(q: &LoopTable, c: &Ctx<'_>) -> bool {
    let n = q.order();
    let ll: Vec<Perm> = q.elements().flat_map(|x| q.elements().map(move |y| left_inner(q, x, y))).collect();
    let rr: Vec<Perm> = q.elements().flat_map(|x| q.elements().map(move |y| right_inner(q, x, y))).collect();
    let as_set = |v: Vec<usize>| SubloopSet::from_elements(n, v);
    // L_{xy}^-1 L_x L_y fixes a iff (xy)a = x(ya): the LL family pins
    // down the right nucleus and the RR family the left one
    as_set(fixed_points(n, &ll)) == c.nr
        && as_set(fixed_points(n, &rr)) == c.nl
        && as_set(fixed_points(n, &mult::commutators(q))) == c.nm
}
