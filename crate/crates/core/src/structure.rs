//! Nuclei, center, subloops, normality, quotients and the upper central
//! series.

use std::fmt;

use crate::error::{Error, Result};
use crate::mult;
use crate::perm::DEFAULT_GROUP_CAP;
use crate::table::LoopTable;

/// A subset of a loop's elements, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubloopSet {
    order: usize,
    members: u128,
}

impl SubloopSet {
    pub fn from_elements(order: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut members = 0u128;
        for e in elems {
            assert!(e < order, "element {e} out of range");
            members |= 1 << e;
        }
        SubloopSet { order, members }
    }

    pub fn from_mask(order: usize, mask: &[bool]) -> Self {
        Self::from_elements(order, mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i))
    }

    pub fn whole(order: usize) -> Self {
        Self::from_elements(order, 0..order)
    }

    pub fn trivial(order: usize) -> Self {
        Self::from_elements(order, [0])
    }

    pub fn parent_order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.members >> x & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    pub fn intersection(&self, other: &SubloopSet) -> SubloopSet {
        SubloopSet { order: self.order, members: self.members & other.members }
    }

    pub fn is_subset(&self, other: &SubloopSet) -> bool {
        self.members & !other.members == 0
    }

    /// Contains 0 and is closed under multiplication and both divisions.
    pub fn is_subloop_of(&self, q: &LoopTable) -> bool {
        self.order == q.order()
            && self.contains(0)
            && self.iter().all(|a| {
                self.iter()
                    .all(|b| self.contains(q.mul(a, b)) && self.contains(q.ldiv(a, b)) && self.contains(q.rdiv(a, b)))
            })
    }
}

impl fmt::Display for SubloopSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", ids.join(", "))
    }
}

impl fmt::Debug for SubloopSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubloopSet{self}")
    }
}

fn scan(q: &LoopTable, pred: impl Fn(usize, usize, usize) -> bool) -> SubloopSet {
    let n = q.order();
    SubloopSet::from_elements(n, (0..n).filter(|&a| (0..n).all(|x| (0..n).all(|y| pred(a, x, y)))))
}

/// `N_λ = {a : a(xy) = (ax)y}`.
pub fn left_nucleus(q: &LoopTable) -> SubloopSet {
    scan(q, |a, x, y| q.mul(a, q.mul(x, y)) == q.mul(q.mul(a, x), y))
}

/// `N_μ = {a : x(ay) = (xa)y}`.
pub fn middle_nucleus(q: &LoopTable) -> SubloopSet {
    scan(q, |a, x, y| q.mul(x, q.mul(a, y)) == q.mul(q.mul(x, a), y))
}

/// `N_ρ = {a : (xy)a = x(ya)}`.
pub fn right_nucleus(q: &LoopTable) -> SubloopSet {
    scan(q, |a, x, y| q.mul(q.mul(x, y), a) == q.mul(x, q.mul(y, a)))
}

/// `N = N_λ ∩ N_μ ∩ N_ρ`.
pub fn nucleus(q: &LoopTable) -> SubloopSet {
    left_nucleus(q).intersection(&middle_nucleus(q)).intersection(&right_nucleus(q))
}

/// Nuclear elements commuting with everything.
pub fn center(q: &LoopTable) -> SubloopSet {
    let n = q.order();
    let nuc = nucleus(q);
    SubloopSet::from_elements(n, nuc.iter().filter(|&a| (0..n).all(|x| q.mul(a, x) == q.mul(x, a))))
}

/// Membership mask of the subloop generated by `seeds` (and 0).
pub(crate) fn generate(q: &LoopTable, seeds: &[usize]) -> Vec<bool> {
    let n = q.order();
    let mut member = vec![false; n];
    let mut list = vec![0usize];
    member[0] = true;
    for &s in seeds {
        if !member[s] {
            member[s] = true;
            list.push(s);
        }
    }
    let mut done = 0;
    while done < list.len() {
        let e = list[done];
        done += 1;
        let mut k = 0;
        while k < done {
            let d = list[k];
            k += 1;
            for (a, b) in [(d, e), (e, d)] {
                for r in [q.mul(a, b), q.ldiv(a, b), q.rdiv(a, b)] {
                    if !member[r] {
                        member[r] = true;
                        list.push(r);
                    }
                }
            }
        }
    }
    member
}

/// The least subloop containing `seed`.
pub fn subloop_generated(q: &LoopTable, seed: &[usize]) -> SubloopSet {
    SubloopSet::from_mask(q.order(), &generate(q, seed))
}

/// The subloop `S` as a standalone loop, elements relabeled in increasing
/// order (`0` stays `0`).
pub fn sub_table(q: &LoopTable, s: &SubloopSet) -> Result<LoopTable> {
    if !s.is_subloop_of(q) {
        return Err(Error::NotASubloop);
    }
    let elems: Vec<usize> = s.iter().collect();
    let mut index = vec![usize::MAX; q.order()];
    for (i, &e) in elems.iter().enumerate() {
        index[e] = i;
    }
    LoopTable::from_fn(elems.len(), |i, j| index[q.mul(elems[i], elems[j])])
}

/// Normality by invariance under every element of the materialized
/// inner mapping group.
pub fn is_normal_subloop(q: &LoopTable, s: &SubloopSet) -> Result<bool> {
    is_normal_subloop_capped(q, s, DEFAULT_GROUP_CAP)
}

pub fn is_normal_subloop_capped(q: &LoopTable, s: &SubloopSet, cap: usize) -> Result<bool> {
    if !s.is_subloop_of(q) {
        return Err(Error::NotASubloop);
    }
    let inn = mult::inn_capped(q, cap)?;
    Ok(inn.elements().iter().all(|phi| s.iter().all(|x| s.contains(phi.apply(x)))))
}

/// `φ(S) ⊆ S` for every standard generator `φ` of the inner mapping group.
pub fn standard_generator_invariant(q: &LoopTable, s: &SubloopSet) -> Result<bool> {
    if !s.is_subloop_of(q) {
        return Err(Error::NotASubloop);
    }
    Ok(mult::standard_generators(q).iter().all(|g| s.iter().all(|x| s.contains(g.perm.apply(x)))))
}

/// Normality through cosets: `xS = Sx`, `x(yS) = (xy)S` and
/// `(Sx)y = S(xy)` as sets, for all `x, y`. Needs no group closure.
pub fn is_normal_by_cosets(q: &LoopTable, s: &SubloopSet) -> Result<bool> {
    if !s.is_subloop_of(q) {
        return Err(Error::NotASubloop);
    }
    let n = q.order();
    let left_coset = |x: usize| SubloopSet::from_elements(n, s.iter().map(|t| q.mul(x, t)));
    let right_coset = |x: usize| SubloopSet::from_elements(n, s.iter().map(|t| q.mul(t, x)));
    for x in 0..n {
        if left_coset(x) != right_coset(x) {
            return Ok(false);
        }
        for y in 0..n {
            let xy = q.mul(x, y);
            let lhs = SubloopSet::from_elements(n, s.iter().map(|t| q.mul(x, q.mul(y, t))));
            let rhs = SubloopSet::from_elements(n, s.iter().map(|t| q.mul(q.mul(t, x), y)));
            if lhs != left_coset(xy) || rhs != right_coset(xy) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A factor loop together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: LoopTable,
    /// `projection[x]` is the id of the coset containing `x`.
    pub projection: Vec<usize>,
    /// Least member of each coset, ascending; the coset of 0 comes first.
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// Preimage of a subset of the factor loop.
    pub fn preimage(&self, t: &SubloopSet) -> SubloopSet {
        SubloopSet::from_elements(
            self.projection.len(),
            (0..self.projection.len()).filter(|&x| t.contains(self.projection[x])),
        )
    }
}

/// `Q/S` for a normal subloop `S`. Normality is decided with
/// [`is_normal_by_cosets`]; the factor operation is verified on every pair.
pub fn quotient(q: &LoopTable, s: &SubloopSet) -> Result<Quotient> {
    if !is_normal_by_cosets(q, s)? {
        return Err(Error::NotNormal);
    }
    let n = q.order();
    let mut projection = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(x);
        for t in s.iter() {
            let y = q.mul(x, t);
            if projection[y] != usize::MAX {
                return Err(Error::IllDefined);
            }
            projection[y] = id;
        }
    }
    let m = representatives.len();
    let mut cells = vec![usize::MAX; m * m];
    for x in 0..n {
        for y in 0..n {
            let (i, j, k) = (projection[x], projection[y], projection[q.mul(x, y)]);
            let cell = &mut cells[i * m + j];
            if *cell == usize::MAX {
                *cell = k;
            } else if *cell != k {
                return Err(Error::IllDefined);
            }
        }
    }
    let table = LoopTable::from_flat(m, cells).map_err(|_| Error::IllDefined)?;
    Ok(Quotient { table, projection, representatives })
}

/// Upper central series `Z_0 = {0} <= Z_1 <= ...`, stopping once it
/// reaches the whole loop or stalls.
pub fn upper_central_series(q: &LoopTable) -> Result<Vec<SubloopSet>> {
    let n = q.order();
    let mut series = vec![SubloopSet::trivial(n)];
    loop {
        let last = *series.last().expect("nonempty");
        if last.is_whole() {
            return Ok(series);
        }
        let factor = quotient(q, &last)?;
        let next = factor.preimage(&center(&factor.table));
        if next == last {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Length of the upper central series, `None` when it never reaches `Q`.
/// The trivial loop has class 0.
pub fn nilpotency_class(q: &LoopTable) -> Result<Option<usize>> {
    let series = upper_central_series(q)?;
    let last = series.last().expect("nonempty");
    Ok(last.is_whole().then(|| series.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_nuclei_are_everything() {
        let d = LoopTable::dihedral(3).unwrap();
        for s in [left_nucleus(&d), middle_nucleus(&d), right_nucleus(&d), nucleus(&d)] {
            assert!(s.is_whole());
        }
        assert_eq!(center(&d), SubloopSet::trivial(6));
    }

    #[test]
    fn center_of_d8_has_order_two() {
        let d8 = LoopTable::dihedral(4).unwrap();
        assert_eq!(center(&d8).len(), 2);
        assert_eq!(nilpotency_class(&d8).unwrap(), Some(2));
    }

    #[test]
    fn generated_subloops() {
        let z6 = LoopTable::cyclic(6).unwrap();
        assert_eq!(subloop_generated(&z6, &[]), SubloopSet::trivial(6));
        assert_eq!(subloop_generated(&z6, &[2]).to_string(), "{0, 2, 4}");
    }

    #[test]
    fn trivial_and_whole_are_normal() {
        let d = LoopTable::dihedral(3).unwrap();
        for s in [SubloopSet::trivial(6), SubloopSet::whole(6)] {
            assert!(is_normal_subloop(&d, &s).unwrap());
            assert!(is_normal_by_cosets(&d, &s).unwrap());
            assert!(standard_generator_invariant(&d, &s).unwrap());
        }
        // a reflection subgroup of S3 is not normal
        let refl = subloop_generated(&d, &[3]);
        assert_eq!(refl.len(), 2);
        assert!(!is_normal_subloop(&d, &refl).unwrap());
        assert!(!is_normal_by_cosets(&d, &refl).unwrap());
        assert_eq!(quotient(&d, &refl).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn not_a_subloop() {
        let z4 = LoopTable::cyclic(4).unwrap();
        let s = SubloopSet::from_elements(4, [0, 1]);
        assert_eq!(is_normal_subloop(&z4, &s), Err(Error::NotASubloop));
        assert_eq!(standard_generator_invariant(&z4, &s), Err(Error::NotASubloop));
    }

    #[test]
    fn trivial_quotients() {
        let d = LoopTable::dihedral(3).unwrap();
        let whole = quotient(&d, &SubloopSet::whole(6)).unwrap();
        assert_eq!(whole.table.order(), 1);
        let same = quotient(&d, &SubloopSet::trivial(6)).unwrap();
        assert_eq!(same.table, d);
        let rot = subloop_generated(&d, &[1]);
        let q = quotient(&d, &rot).unwrap();
        assert_eq!(q.table, LoopTable::cyclic(2).unwrap());
        assert_eq!(q.representatives, vec![0, 3]);
    }

    #[test]
    fn abelian_class_one() {
        assert_eq!(nilpotency_class(&LoopTable::cyclic(5).unwrap()).unwrap(), Some(1));
        assert_eq!(nilpotency_class(&LoopTable::cyclic(1).unwrap()).unwrap(), Some(0));
        assert_eq!(nilpotency_class(&LoopTable::dihedral(3).unwrap()).unwrap(), None);
    }

    #[test]
    fn sub_table_of_d8_rotations() {
        let d8 = LoopTable::dihedral(4).unwrap();
        let rot = subloop_generated(&d8, &[1]);
        assert_eq!(sub_table(&d8, &rot).unwrap(), LoopTable::cyclic(4).unwrap());
    }
}
