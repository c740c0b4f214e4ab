//! Autotopisms, pseudoautomorphisms and the G-loop test.

use crate::error::{Error, Result};
use crate::iso::{isomorphic_with_budget, DEFAULT_ISO_BUDGET};
use crate::perm::Perm;
use crate::table::LoopTable;

/// A triple `(α, β, γ)` with `α(x)β(y) = γ(xy)` for all `x, y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Autotopism {
    alpha: Perm,
    beta: Perm,
    gamma: Perm,
}

impl Autotopism {
    /// `None` when the triple is not an autotopism of `q`.
    pub fn new(q: &LoopTable, alpha: Perm, beta: Perm, gamma: Perm) -> Result<Option<Self>> {
        Ok(is_autotopism(q, &alpha, &beta, &gamma)?.then_some(Autotopism { alpha, beta, gamma }))
    }

    pub fn alpha(&self) -> &Perm {
        &self.alpha
    }

    pub fn beta(&self) -> &Perm {
        &self.beta
    }

    pub fn gamma(&self) -> &Perm {
        &self.gamma
    }

    /// Componentwise product, `self` applied after `other`.
    pub fn compose(&self, other: &Autotopism) -> Autotopism {
        Autotopism {
            alpha: self.alpha.compose(&other.alpha),
            beta: self.beta.compose(&other.beta),
            gamma: self.gamma.compose(&other.gamma),
        }
    }

    pub fn inverse(&self) -> Autotopism {
        Autotopism { alpha: self.alpha.inverse(), beta: self.beta.inverse(), gamma: self.gamma.inverse() }
    }
}

pub fn is_autotopism(q: &LoopTable, alpha: &Perm, beta: &Perm, gamma: &Perm) -> Result<bool> {
    let n = q.order();
    for p in [alpha, beta, gamma] {
        if p.degree() != n {
            return Err(Error::DegreeMismatch(n, p.degree()));
        }
    }
    Ok((0..n).all(|x| (0..n).all(|y| q.mul(alpha.apply(x), beta.apply(y)) == gamma.apply(q.mul(x, y)))))
}

/// Whether `φ(xy) = φ(x)φ(y)` for all `x, y`.
pub fn is_automorphism(q: &LoopTable, phi: &Perm) -> Result<bool> {
    is_autotopism(q, phi, phi, phi)
}

/// Which nucleus an autotopism of the form `λ_a`, `μ_a` or `ρ_a` tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleusKind {
    Left,
    Middle,
    Right,
}

/// `λ_a = (L_a, id, L_a)`, `μ_a = (R_a^-1, L_a, id)`, `ρ_a = (id, R_a, R_a)`.
pub fn nuclear_triple(q: &LoopTable, a: usize, kind: NucleusKind) -> (Perm, Perm, Perm) {
    let id = Perm::identity(q.order());
    match kind {
        NucleusKind::Left => (q.left_translation(a), id, q.left_translation(a)),
        NucleusKind::Middle => (q.right_translation(a).inverse(), q.left_translation(a), id),
        NucleusKind::Right => (id, q.right_translation(a), q.right_translation(a)),
    }
}

/// Nucleus membership decided by the corresponding autotopism.
pub fn nucleus_membership_from_autotopism(q: &LoopTable, a: usize, kind: NucleusKind) -> bool {
    let (al, be, ga) = nuclear_triple(q, a, kind);
    is_autotopism(q, &al, &be, &ga).expect("degrees agree")
}

/// `(L_c β, β, L_c β)` is an autotopism.
pub fn is_left_pseudoautomorphism(q: &LoopTable, beta: &Perm, c: usize) -> Result<bool> {
    if beta.degree() != q.order() {
        return Err(Error::DegreeMismatch(q.order(), beta.degree()));
    }
    let lc = q.left_translation(c).compose(beta);
    is_autotopism(q, &lc, beta, &lc)
}

/// `(α, R_c α, R_c α)` is an autotopism.
pub fn is_right_pseudoautomorphism(q: &LoopTable, alpha: &Perm, c: usize) -> Result<bool> {
    if alpha.degree() != q.order() {
        return Err(Error::DegreeMismatch(q.order(), alpha.degree()));
    }
    let rc = q.right_translation(c).compose(alpha);
    is_autotopism(q, alpha, &rc, &rc)
}

/// `(y / x^ρ)(xy)^ρ`, the companion of `L_{xy}^-1 L_x L_y` as a right
/// pseudoautomorphism of an Osborn loop.
pub fn companion_of_left_inner(q: &LoopTable, x: usize, y: usize) -> usize {
    q.mul(q.rdiv(y, q.right_inv(x)), q.right_inv(q.mul(x, y)))
}

/// `(yx)^λ (x^λ \ y)`, the companion of `R_{yx}^-1 R_x R_y` as a left
/// pseudoautomorphism of an Osborn loop.
pub fn companion_of_right_inner(q: &LoopTable, x: usize, y: usize) -> usize {
    q.mul(q.left_inv(q.mul(y, x)), q.ldiv(q.left_inv(x), y))
}

/// `u ∘ v = c \ (cu · v)`; isomorphic to `Q` iff some left
/// pseudoautomorphism has companion `c`.
pub fn left_companion_loop(q: &LoopTable, c: usize) -> LoopTable {
    LoopTable::from_fn(q.order(), |u, v| q.ldiv(c, q.mul(q.mul(c, u), v))).expect("isotope of a loop")
}

/// `u ∘ v = (u · vc) / c`; isomorphic to `Q` iff some right
/// pseudoautomorphism has companion `c`.
pub fn right_companion_loop(q: &LoopTable, c: usize) -> LoopTable {
    LoopTable::from_fn(q.order(), |u, v| q.rdiv(q.mul(u, q.mul(v, c)), c)).expect("isotope of a loop")
}

/// Both G-loop routes, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GLoopRoutes {
    /// Every principal isotope is isomorphic to `Q`.
    pub isotopes: bool,
    /// Every element is a left and a right companion.
    pub companions: bool,
}

pub fn g_loop_routes(q: &LoopTable, budget: u64) -> Result<GLoopRoutes> {
    let n = q.order();
    let mut isotopes = true;
    'outer: for a in 0..n {
        for b in 0..n {
            if isomorphic_with_budget(q, &q.principal_isotope(a, b), budget)?.is_none() {
                isotopes = false;
                break 'outer;
            }
        }
    }
    let mut companions = true;
    for c in 0..n {
        let left = isomorphic_with_budget(q, &left_companion_loop(q, c), budget)?;
        let right = isomorphic_with_budget(q, &right_companion_loop(q, c), budget)?;
        if left.is_none() || right.is_none() {
            companions = false;
            break;
        }
    }
    Ok(GLoopRoutes { isotopes, companions })
}

/// G-loop test; the isotope scan and the companion characterization must
/// agree, otherwise [`Error::Inconsistent`].
pub fn is_g_loop(q: &LoopTable) -> Result<bool> {
    is_g_loop_with_budget(q, DEFAULT_ISO_BUDGET)
}

pub fn is_g_loop_with_budget(q: &LoopTable, budget: u64) -> Result<bool> {
    let r = g_loop_routes(q, budget)?;
    if r.isotopes != r.companions {
        return Err(Error::Inconsistent(format!(
            "G-loop routes disagree: isotopes={} companions={}",
            r.isotopes, r.companions
        )));
    }
    Ok(r.isotopes)
}

/// `R_x^-1 L_x R_x = L_x R_x R_{x^λ} = L_{x^λ}^-1` and
/// `R_x R_{x^λ} L_{x^λ} L_x = id` for every `x`.
pub fn osborn_alpha_audit(q: &LoopTable) -> bool {
    q.elements().all(|x| {
        let xl = q.left_inv(x);
        let (lx, rx) = (q.left_translation(x), q.right_translation(x));
        let (lxl, rxl) = (q.left_translation(xl), q.right_translation(xl));
        let a1 = rx.inverse().compose(&lx).compose(&rx);
        let a2 = lx.compose(&rx).compose(&rxl);
        let a3 = lxl.inverse();
        a1 == a2 && a2 == a3 && rx.compose(&rxl).compose(&lxl).compose(&lx).is_identity()
    })
}

/// `ψ_x = (L_{x^λ}^-1, R_x, L_x R_x)`.
pub fn psi(q: &LoopTable, x: usize) -> (Perm, Perm, Perm) {
    let rx = q.right_translation(x);
    (q.left_translation(q.left_inv(x)).inverse(), rx.clone(), q.left_translation(x).compose(&rx))
}

/// `φ_x = (L_x, R_x^-1, L_x R_x^-1)`.
pub fn phi(q: &LoopTable, x: usize) -> (Perm, Perm, Perm) {
    let lx = q.left_translation(x);
    let rxi = q.right_translation(x).inverse();
    (lx.clone(), rxi.clone(), lx.compose(&rxi))
}

/// `δ_x = (L_x^2, L_{x^λ} L_x, L_x^2)`.
pub fn delta(q: &LoopTable, x: usize) -> (Perm, Perm, Perm) {
    let lx = q.left_translation(x);
    let l2 = lx.compose(&lx);
    (l2.clone(), q.left_translation(q.left_inv(x)).compose(&lx), l2)
}

/// Whether the triple family `f(x)` is an autotopism for every `x`.
pub fn family_is_autotopic(q: &LoopTable, f: impl Fn(&LoopTable, usize) -> (Perm, Perm, Perm)) -> bool {
    q.elements().all(|x| {
        let (a, b, c) = f(q, x);
        is_autotopism(q, &a, &b, &c).expect("degrees agree")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult::{left_inner, right_inner};
    use crate::structure::{left_nucleus, middle_nucleus, right_nucleus};

    #[test]
    fn trivial_autotopisms() {
        let d = LoopTable::dihedral(3).unwrap();
        let id = Perm::identity(6);
        assert!(is_autotopism(&d, &id, &id, &id).unwrap());
        for a in 0..6 {
            for kind in [NucleusKind::Left, NucleusKind::Middle, NucleusKind::Right] {
                assert!(nucleus_membership_from_autotopism(&d, a, kind));
            }
        }
        assert!(matches!(is_autotopism(&d, &Perm::identity(2), &id, &id), Err(Error::DegreeMismatch(6, 2))));
    }

    #[test]
    fn autotopism_nuclei_agree_on_nonassociative_loop() {
        let q = LoopTable::validate(
            5,
            &[vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]],
        )
        .unwrap();
        for (kind, nuc) in [
            (NucleusKind::Left, left_nucleus(&q)),
            (NucleusKind::Middle, middle_nucleus(&q)),
            (NucleusKind::Right, right_nucleus(&q)),
        ] {
            for a in 0..5 {
                assert_eq!(nucleus_membership_from_autotopism(&q, a, kind), nuc.contains(a));
            }
        }
        assert!(!is_g_loop(&q).unwrap());
    }

    #[test]
    fn pseudoautomorphisms_of_groups() {
        let d = LoopTable::dihedral(3).unwrap();
        let id = Perm::identity(6);
        assert!(is_left_pseudoautomorphism(&d, &id, 0).unwrap());
        assert!(is_right_pseudoautomorphism(&d, &id, 0).unwrap());
        // conjugation by a reflection is an automorphism
        let conj = Perm::from_images((0..6).map(|y| d.mul(d.mul(3, y), 3)).collect()).unwrap();
        assert!(is_automorphism(&d, &conj).unwrap());
        assert!(is_left_pseudoautomorphism(&d, &conj, 0).unwrap());
        assert_eq!(companion_of_left_inner(&d, 0, 0), 0);
        assert_eq!(companion_of_right_inner(&d, 0, 0), 0);
        for x in 0..6 {
            for y in 0..6 {
                let c = companion_of_left_inner(&d, x, y);
                assert!(is_right_pseudoautomorphism(&d, &left_inner(&d, x, y), c).unwrap());
                let c = companion_of_right_inner(&d, x, y);
                assert!(is_left_pseudoautomorphism(&d, &right_inner(&d, x, y), c).unwrap());
            }
        }
    }

    #[test]
    fn groups_are_g_loops() {
        assert!(is_g_loop(&LoopTable::dihedral(3).unwrap()).unwrap());
        assert!(is_g_loop(&LoopTable::cyclic(4).unwrap()).unwrap());
        assert!(osborn_alpha_audit(&LoopTable::dihedral(4).unwrap()));
    }
}
