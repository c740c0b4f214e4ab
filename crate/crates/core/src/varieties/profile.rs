//! Structural profile of a proper Osborn loop of order 16: G-loop status,
//! dihedral subloops, center and nucleus, factor loops and nilpotency.

use std::collections::HashSet;

use super::autotopism::is_g_loop;
use super::catalog::check_variety;
use crate::error::{Error, Result};
use crate::iso::isomorphic;
use crate::structure::{self, sub_table, subloop_generated};
use crate::table::LoopTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order16Profile {
    pub order: usize,
    pub osborn: bool,
    /// Osborn, but neither CC nor Moufang.
    pub proper: bool,
    /// `None` when the isomorphism budget ran out.
    pub g_loop: Option<bool>,
    /// Some 2-generated subloop is isomorphic to the dihedral group of order 8.
    pub dihedral_subloop: bool,
    pub center_order: usize,
    pub center_is_nucleus: bool,
    pub center_quotient_order: usize,
    pub center_quotient_associative: bool,
    pub center_quotient_wip: bool,
    pub center_quotient_cc: bool,
    pub nilpotency_class: Option<usize>,
    /// Order of `Z_2(Q)`, the second term of the upper central series.
    pub second_center_order: usize,
    /// `Q / Z_2(Q)` is cyclic of order 4.
    pub second_quotient_cyclic4: bool,
    /// `L_x^4 = R_x^4 = id` for every `x`; distinguishes the two loops.
    pub fourth_powers_trivial: bool,
}

impl Order16Profile {
    /// Every listed property except the distinguishing flag.
    pub fn confirms(&self) -> bool {
        self.order == 16
            && self.proper
            && self.g_loop == Some(true)
            && self.dihedral_subloop
            && self.center_order == 2
            && self.center_is_nucleus
            && self.center_quotient_order == 8
            && !self.center_quotient_associative
            && self.center_quotient_wip
            && self.center_quotient_cc
            && self.nilpotency_class == Some(3)
            && self.second_center_order == 4
            && self.second_quotient_cyclic4
    }

    /// `name=value` lines in a fixed order.
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("order={}", self.order),
            format!("osborn={}", self.osborn),
            format!("proper={}", self.proper),
            format!("g-loop={}", self.g_loop.map_or("capped".to_string(), |b| b.to_string())),
            format!("dihedral-8-subloop={}", self.dihedral_subloop),
            format!("center-order={}", self.center_order),
            format!("center-is-nucleus={}", self.center_is_nucleus),
            format!("center-quotient-order={}", self.center_quotient_order),
            format!("center-quotient-associative={}", self.center_quotient_associative),
            format!("center-quotient-wip={}", self.center_quotient_wip),
            format!("center-quotient-cc={}", self.center_quotient_cc),
            format!("nilpotency-class={}", self.nilpotency_class.map_or("none".to_string(), |k| k.to_string())),
            format!("second-center-order={}", self.second_center_order),
            format!("second-quotient-z4={}", self.second_quotient_cyclic4),
            format!("fourth-powers-trivial={}", self.fourth_powers_trivial),
        ]
    }
}

/// Whether some 2-generated subloop is isomorphic to the dihedral group
/// of order 8.
pub fn has_dihedral8_subloop(q: &LoopTable) -> Result<bool> {
    let d8 = LoopTable::dihedral(4)?;
    let mut seen = HashSet::new();
    for x in 1..q.order() {
        for y in x + 1..q.order() {
            let s = subloop_generated(q, &[x, y]);
            if s.len() == 8 && seen.insert(s) && isomorphic(&sub_table(q, &s)?, &d8)?.is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn order16_profile(q: &LoopTable) -> Result<Order16Profile> {
    let osborn = check_variety(q, "osborn-1")?;
    let proper = osborn && !check_variety(q, "cc")? && !check_variety(q, "moufang")?;
    let g_loop = match is_g_loop(q) {
        Ok(b) => Some(b),
        Err(Error::Capped(_)) => None,
        Err(e) => return Err(e),
    };
    let center = structure::center(q);
    let factor = structure::quotient(q, &center)?.table;
    let series = structure::upper_central_series(q)?;
    let (second_center_order, second_quotient_cyclic4) = match series.get(2) {
        Some(z2) => {
            let f = structure::quotient(q, z2)?.table;
            (z2.len(), f.order() == 4 && isomorphic(&f, &LoopTable::cyclic(4)?)?.is_some())
        }
        None => (series.last().map_or(1, |s| s.len()), false),
    };
    let fourth_powers_trivial =
        q.elements().all(|x| q.left_translation(x).pow(4).is_identity() && q.right_translation(x).pow(4).is_identity());
    Ok(Order16Profile {
        order: q.order(),
        osborn,
        proper,
        g_loop,
        dihedral_subloop: has_dihedral8_subloop(q)?,
        center_order: center.len(),
        center_is_nucleus: center == structure::nucleus(q),
        center_quotient_order: factor.order(),
        center_quotient_associative: check_variety(&factor, "associative")?,
        center_quotient_wip: check_variety(&factor, "wip")?,
        center_quotient_cc: check_variety(&factor, "cc")?,
        nilpotency_class: structure::nilpotency_class(q)?,
        second_center_order,
        second_quotient_cyclic4,
        fourth_powers_trivial,
    })
}
