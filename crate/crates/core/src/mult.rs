//! Multiplication groups, inner mapping groups and their standard
//! generators.

use std::fmt;

use crate::error::Result;
use crate::perm::{closure, Perm, PermGroup, DEFAULT_GROUP_CAP};
use crate::table::LoopTable;

/// The three families of standard generators of `Inn(Q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// `L_{xy}^-1 L_x L_y`
    LL,
    /// `R_{yx}^-1 R_x R_y`
    RR,
    /// `L_x^-1 R_x`
    TR,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::LL => "LL",
            GenKind::RR => "RR",
            GenKind::TR => "TR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardGenerator {
    pub kind: GenKind,
    pub x: usize,
    /// Unused (0) for [`GenKind::TR`].
    pub y: usize,
    pub perm: Perm,
}

/// `L_{xy}^-1 L_x L_y`.
pub fn left_inner(q: &LoopTable, x: usize, y: usize) -> Perm {
    let n = q.order();
    let xy = q.mul(x, y);
    Perm::from_raw((0..n).map(|z| q.ldiv(xy, q.mul(x, q.mul(y, z))) as u8).collect())
}

/// `R_{yx}^-1 R_x R_y`.
pub fn right_inner(q: &LoopTable, x: usize, y: usize) -> Perm {
    let n = q.order();
    let yx = q.mul(y, x);
    Perm::from_raw((0..n).map(|z| q.rdiv(q.mul(q.mul(z, y), x), yx) as u8).collect())
}

/// `L_x^-1 R_x`.
pub fn twist(q: &LoopTable, x: usize) -> Perm {
    let n = q.order();
    Perm::from_raw((0..n).map(|z| q.ldiv(x, q.mul(z, x)) as u8).collect())
}

/// `[L_y, R_x] = L_y^-1 R_x^-1 L_y R_x`.
pub fn commutator_lr(q: &LoopTable, y: usize, x: usize) -> Perm {
    Perm::commutator(&q.left_translation(y), &q.right_translation(x))
}

/// All standard generators, `LL` then `RR` over `x, y` row-major, then `TR`.
pub fn standard_generators(q: &LoopTable) -> Vec<StandardGenerator> {
    let n = q.order();
    let mut out = Vec::with_capacity(2 * n * n + n);
    for (kind, f) in [(GenKind::LL, left_inner as fn(&LoopTable, usize, usize) -> Perm), (GenKind::RR, right_inner)] {
        for x in 0..n {
            for y in 0..n {
                out.push(StandardGenerator { kind, x, y, perm: f(q, x, y) });
            }
        }
    }
    for x in 0..n {
        out.push(StandardGenerator { kind: GenKind::TR, x, y: 0, perm: twist(q, x) });
    }
    out
}

fn lefts(q: &LoopTable) -> Vec<Perm> {
    q.elements().map(|x| q.left_translation(x)).collect()
}

fn rights(q: &LoopTable) -> Vec<Perm> {
    q.elements().map(|x| q.right_translation(x)).collect()
}

pub fn mlt(q: &LoopTable) -> Result<PermGroup> {
    mlt_capped(q, DEFAULT_GROUP_CAP)
}

pub fn mlt_capped(q: &LoopTable, cap: usize) -> Result<PermGroup> {
    let mut gens = lefts(q);
    gens.extend(rights(q));
    closure(q.order(), &gens, cap)
}

pub fn mlt_left(q: &LoopTable) -> Result<PermGroup> {
    closure(q.order(), &lefts(q), DEFAULT_GROUP_CAP)
}

pub fn mlt_right(q: &LoopTable) -> Result<PermGroup> {
    closure(q.order(), &rights(q), DEFAULT_GROUP_CAP)
}

/// Stabilizer of 0 in the materialized `Mlt(Q)`.
pub fn inn(q: &LoopTable) -> Result<PermGroup> {
    inn_capped(q, DEFAULT_GROUP_CAP)
}

pub fn inn_capped(q: &LoopTable, cap: usize) -> Result<PermGroup> {
    let m = mlt_capped(q, cap)?;
    let stab = m.stabilizer(0);
    closure(q.order(), &stab, cap)
}

/// Closure of the standard generators.
pub fn inn_standard(q: &LoopTable) -> Result<PermGroup> {
    let gens: Vec<Perm> = standard_generators(q).into_iter().map(|g| g.perm).collect();
    closure(q.order(), &gens, DEFAULT_GROUP_CAP)
}

/// `⟨L_{xy}^-1 L_x L_y⟩`.
pub fn inn_left(q: &LoopTable) -> Result<PermGroup> {
    let n = q.order();
    let gens: Vec<Perm> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| left_inner(q, x, y)).collect();
    closure(n, &gens, DEFAULT_GROUP_CAP)
}

/// `⟨R_{yx}^-1 R_x R_y⟩`.
pub fn inn_right(q: &LoopTable) -> Result<PermGroup> {
    let n = q.order();
    let gens: Vec<Perm> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| right_inner(q, x, y)).collect();
    closure(n, &gens, DEFAULT_GROUP_CAP)
}

/// All commutators `[L_y, R_x]`.
pub fn commutators(q: &LoopTable) -> Vec<Perm> {
    let n = q.order();
    (0..n).flat_map(|y| (0..n).map(move |x| commutator_lr(q, y, x))).collect()
}

/// `H ⊴ G`, see [`PermGroup::is_normal_in`].
pub fn is_normal_subgroup(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    h.is_normal_in(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::fixed_points;

    #[test]
    fn cyclic_groups() {
        let z4 = LoopTable::cyclic(4).unwrap();
        assert_eq!(mlt(&z4).unwrap().order(), 4);
        assert_eq!(mlt_left(&z4).unwrap().order(), 4);
        assert_eq!(inn(&z4).unwrap().order(), 1);
        assert!(standard_generators(&z4).iter().all(|g| g.perm.is_identity()));
        assert_eq!(mlt(&LoopTable::cyclic(2).unwrap()).unwrap().order(), 2);
    }

    #[test]
    fn s3_inner_mappings_are_conjugations() {
        let d = LoopTable::dihedral(3).unwrap();
        assert_eq!(mlt(&d).unwrap().order(), 36);
        let i = inn(&d).unwrap();
        assert_eq!(i.order(), 6);
        assert!(i.same_elements(&inn_standard(&d).unwrap()));
        assert!(i.elements().iter().all(|p| p.fixes(0)));
        // associative: LL and RR families are trivial
        assert_eq!(inn_left(&d).unwrap().order(), 1);
        assert_eq!(fixed_points(6, inn_left(&d).unwrap().elements()).len(), 6);
    }

    #[test]
    fn trivial_commutators() {
        let z5 = LoopTable::cyclic(5).unwrap();
        assert!(commutators(&z5).iter().all(Perm::is_identity));
        let d = LoopTable::dihedral(4).unwrap();
        for x in 0..8 {
            assert!(commutator_lr(&d, 0, x).is_identity());
            assert!(commutator_lr(&d, x, 0).is_identity());
        }
    }

    #[test]
    fn translation_groups_normal_in_group() {
        let d = LoopTable::dihedral(3).unwrap();
        let m = mlt(&d).unwrap();
        assert!(is_normal_subgroup(&mlt_left(&d).unwrap(), &m).unwrap());
        assert!(is_normal_subgroup(&mlt_right(&d).unwrap(), &m).unwrap());
    }
}
