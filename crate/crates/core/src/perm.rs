//! Permutations of `0..n` and explicitly materialized permutation groups.
//!
//! Composition follows function notation everywhere in the crate:
//! `p.compose(&q)` is the map `x -> p(q(x))`, so a product written
//! `L_x R_y` applies `R_y` first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of elements materialized by [`closure`].
pub const DEFAULT_GROUP_CAP: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).map(|i| i as u8).collect())
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images.into_iter().map(|i| i as u8).collect()))
    }

    /// Unchecked constructor for images already known to be a bijection.
    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        debug_assert!(Perm::from_images(images.iter().map(|&i| i as usize).collect()).is_some());
        Perm(images)
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                *images.get_mut(a)? = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Commutator `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.apply(x) == x
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// A permutation group with every element materialized.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashSet<Perm>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains(p)
    }

    /// Element-set equality, ignoring generators.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.elements.iter().all(|p| other.contains(p))
    }

    /// Elements fixing the point `x`.
    pub fn stabilizer(&self, x: usize) -> Vec<Perm> {
        self.elements.iter().filter(|p| p.fixes(x)).cloned().collect()
    }

    /// Whether `self` is a normal subgroup of `g`: every generator
    /// of `self` lies in `g`, and `a h a^-1` stays in `self` for generators
    /// `a` of `g` and `h` of `self`.
    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool> {
        if self.degree != g.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree));
        }
        if !self.generators.iter().all(|h| g.contains(h)) {
            return Ok(false);
        }
        for a in &g.generators {
            let a_inv = a.inverse();
            for h in &self.generators {
                if !self.contains(&a.compose(h).compose(&a_inv)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Breadth-first closure of `generators` inside `Sym(degree)`.
///
/// Fails with [`Error::Capped`] once more than `cap` elements would be
/// materialized.
pub fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<PermGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut gens: Vec<Perm> = Vec::new();
    let mut seen_gens = HashSet::new();
    for g in generators {
        if !g.is_identity() && seen_gens.insert(g.clone()) {
            gens.push(g.clone());
        }
    }
    let id = Perm::identity(degree);
    let mut index = HashSet::new();
    let mut elements = vec![id.clone()];
    index.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q = g.compose(&p);
            if !index.contains(&q) {
                if elements.len() >= cap {
                    return Err(Error::Capped(elements.len()));
                }
                index.insert(q.clone());
                elements.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(PermGroup { degree, generators: generators.to_vec(), elements, index })
}

/// Points fixed by every permutation in `perms`.
pub fn fixed_points(degree: usize, perms: &[Perm]) -> Vec<usize> {
    (0..degree).filter(|&x| perms.iter().all(|p| p.fixes(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_function_composition() {
        let p = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let pq = p.compose(&q);
        // q first: 1 -> 2, then p leaves 2 alone
        assert_eq!(pq.apply(1), 2);
        assert_eq!(pq.cycle_type(), vec![3]);
        assert_eq!(pq.compose(&pq.inverse()), Perm::identity(3));
    }

    #[test]
    fn inverse_of_identity() {
        assert_eq!(Perm::identity(5).inverse(), Perm::identity(5));
    }

    #[test]
    fn degree_mismatch() {
        let err = Perm::identity(2).try_compose(&Perm::identity(3)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch(2, 3));
        assert!(matches!(closure(3, &[Perm::identity(2)], 10), Err(Error::DegreeMismatch(3, 2))));
    }

    #[test]
    fn closure_of_transposition() {
        let t = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        assert_eq!(closure(2, &[t], DEFAULT_GROUP_CAP).unwrap().order(), 2);
    }

    #[test]
    fn closure_respects_cap() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(5, &[&[0, 1]]).unwrap();
        assert_eq!(closure(5, &[a.clone(), b.clone()], DEFAULT_GROUP_CAP).unwrap().order(), 120);
        assert!(matches!(closure(5, &[a, b], 50), Err(Error::Capped(_))));
    }

    #[test]
    fn display_cycles() {
        let p = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap();
        assert_eq!(p.to_string(), "(0 2)(1 3)");
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn normality() {
        let a = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let s3 = closure(3, &[a.clone(), b.clone()], 100).unwrap();
        let a3 = closure(3, &[a], 100).unwrap();
        let c2 = closure(3, &[b], 100).unwrap();
        let trivial = closure(3, &[], 100).unwrap();
        assert!(a3.is_normal_in(&s3).unwrap());
        assert!(!c2.is_normal_in(&s3).unwrap());
        assert!(trivial.is_normal_in(&s3).unwrap());
        assert!(s3.is_normal_in(&s3).unwrap());
    }

    #[test]
    fn empty_perm_list_fixes_everything() {
        assert_eq!(fixed_points(4, &[]), vec![0, 1, 2, 3]);
    }
}
