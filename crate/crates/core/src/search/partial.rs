use crate::error::{Error, Result};
use crate::table::LoopTable;
use crate::term::{advance, Blocker, CellSource, Identity, Verdict};
use crate::varieties::catalog::identities_for;

pub const HOLE: u8 = u8::MAX;

/// A reduced Cayley table under construction: row 0 and column 0 hold the
/// identity pattern, other cells may be holes. Inverse indexes make both
/// divisions O(1) whenever the answer is already determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    n: usize,
    cells: Vec<u8>,
    row_free: Vec<u128>,
    col_free: Vec<u128>,
    /// `row_pos[r * n + v]`: column holding `v` in row `r`.
    row_pos: Vec<u8>,
    /// `col_pos[c * n + v]`: row holding `v` in column `c`.
    col_pos: Vec<u8>,
}

impl PartialTable {
    pub fn reduced(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimensions { order: 0 });
        }
        if n > crate::table::MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: crate::table::MAX_ORDER });
        }
        let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        let mut t = PartialTable {
            n,
            cells: vec![HOLE; n * n],
            row_free: vec![full; n],
            col_free: vec![full; n],
            row_pos: vec![HOLE; n * n],
            col_pos: vec![HOLE; n * n],
        };
        for i in 0..n {
            t.place(0, i, i);
            if i > 0 {
                t.place(i, 0, i);
            }
        }
        Ok(t)
    }

    /// A complete partial table holding `q`.
    pub fn from_table(q: &LoopTable) -> Self {
        let mut t = PartialTable::reduced(q.order()).expect("valid order");
        for r in 1..q.order() {
            for c in 1..q.order() {
                t.place(r, c, q.mul(r, c));
            }
        }
        t
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        let v = self.cells[r * self.n + c];
        (v != HOLE).then_some(v as usize)
    }

    /// Values still allowed at `(r, c)` by the Latin constraints.
    #[inline]
    pub fn candidates(&self, r: usize, c: usize) -> u128 {
        if self.cells[r * self.n + c] != HOLE {
            0
        } else {
            self.row_free[r] & self.col_free[c]
        }
    }

    pub fn can_place(&self, r: usize, c: usize, v: usize) -> bool {
        r < self.n && c < self.n && v < self.n && self.candidates(r, c) >> v & 1 == 1
    }

    #[inline]
    pub fn place(&mut self, r: usize, c: usize, v: usize) {
        debug_assert!(self.can_place(r, c, v), "({r},{c}) <- {v}");
        let n = self.n;
        self.cells[r * n + c] = v as u8;
        self.row_free[r] &= !(1 << v);
        self.col_free[c] &= !(1 << v);
        self.row_pos[r * n + v] = c as u8;
        self.col_pos[c * n + v] = r as u8;
    }

    #[inline]
    pub fn clear(&mut self, r: usize, c: usize) {
        let n = self.n;
        let v = self.cells[r * n + c] as usize;
        debug_assert!(v < n);
        self.cells[r * n + c] = HOLE;
        self.row_free[r] |= 1 << v;
        self.col_free[c] |= 1 << v;
        self.row_pos[r * n + v] = HOLE;
        self.col_pos[c * n + v] = HOLE;
    }

    pub fn holes(&self) -> usize {
        self.cells.iter().filter(|&&v| v == HOLE).count()
    }

    pub fn is_complete(&self) -> bool {
        self.holes() == 0
    }

    pub fn to_table(&self) -> Option<LoopTable> {
        self.is_complete().then(|| LoopTable::from_latin_unchecked(self.n, self.cells.clone()))
    }
}

impl CellSource for PartialTable {
    #[inline]
    fn mul(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker> {
        match self.cells[x * self.n + y] {
            HOLE => Err(Blocker::Cell(x, y)),
            v => Ok(v as usize),
        }
    }

    #[inline]
    fn ldiv(&self, x: usize, y: usize) -> std::result::Result<usize, Blocker> {
        match self.row_pos[x * self.n + y] {
            HOLE => Err(Blocker::RowValue(x, y)),
            c => Ok(c as usize),
        }
    }

    #[inline]
    fn rdiv(&self, y: usize, x: usize) -> std::result::Result<usize, Blocker> {
        match self.col_pos[x * self.n + y] {
            HOLE => Err(Blocker::ColValue(x, y)),
            r => Ok(r as usize),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Contradiction,
}

/// Judges every ground instance of the variety's identities whose cells
/// are all filled; instances touching a hole are skipped.
pub fn propagate_identity(partial: &PartialTable, id: &str) -> Result<Consistency> {
    for ident in identities_for(id)? {
        if violated_instance(partial, &ident).is_some() {
            return Ok(Consistency::Contradiction);
        }
    }
    Ok(Consistency::Consistent)
}

/// First fully determined instance of `ident` that fails in `partial`.
pub fn violated_instance(partial: &PartialTable, ident: &Identity) -> Option<Vec<usize>> {
    let mut vars = vec![0usize; ident.arity()];
    loop {
        if ident.judge(partial, &vars) == Verdict::Violated {
            return Some(vars);
        }
        if !advance(&mut vars, partial.order()) {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_pattern() {
        let t = PartialTable::reduced(4).unwrap();
        assert_eq!(t.holes(), 9);
        assert_eq!(t.get(2, 0), Some(2));
        assert_eq!(t.candidates(1, 1), 0b1101);
        assert!(PartialTable::reduced(0).is_err());
        assert_eq!(PartialTable::reduced(1).unwrap().to_table().unwrap().order(), 1);
    }

    #[test]
    fn divisions_block_until_known() {
        let mut t = PartialTable::reduced(3).unwrap();
        assert_eq!(t.ldiv(1, 2), Err(Blocker::RowValue(1, 2)));
        assert_eq!(t.rdiv(2, 1), Err(Blocker::ColValue(1, 2)));
        t.place(1, 1, 2);
        assert_eq!(t.ldiv(1, 2), Ok(1));
        assert_eq!(t.rdiv(2, 1), Ok(1));
        assert_eq!(t.mul(1, 1), Ok(2));
        t.clear(1, 1);
        assert_eq!(t, PartialTable::reduced(3).unwrap());
    }

    #[test]
    fn empty_table_is_consistent() {
        let t = PartialTable::reduced(5).unwrap();
        for id in ["lc", "moufang", "osborn-1", "left-a"] {
            assert_eq!(propagate_identity(&t, id).unwrap(), Consistency::Consistent);
        }
        assert!(propagate_identity(&t, "bogus").is_err());
    }

    #[test]
    fn full_tables_match_check_variety() {
        let q = LoopTable::validate(
            5,
            &[vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]],
        )
        .unwrap();
        for id in ["lc", "lip", "commutative", "flx", "osborn-1"] {
            let expect = if crate::varieties::check_variety(&q, id).unwrap() {
                Consistency::Consistent
            } else {
                Consistency::Contradiction
            };
            assert_eq!(propagate_identity(&PartialTable::from_table(&q), id).unwrap(), expect, "{id}");
        }
        let z4 = PartialTable::from_table(&LoopTable::cyclic(4).unwrap());
        assert_eq!(propagate_identity(&z4, "lc").unwrap(), Consistency::Consistent);
    }

    #[test]
    fn corrupted_cell_contradicts() {
        // 1*2 = 0 but 2*1 = 4
        let mut t = PartialTable::reduced(5).unwrap();
        t.place(1, 1, 3);
        t.place(2, 1, 4);
        t.place(1, 2, 0);
        assert_eq!(propagate_identity(&t, "commutative").unwrap(), Consistency::Contradiction);
        // lip: 1^l is known once column 1 holds 0
        let mut t = PartialTable::reduced(5).unwrap();
        t.place(1, 1, 2);
        t.place(3, 1, 0);
        t.place(3, 2, 4);
        // 3 * (1 * 1) = 3 * 2 = 4, but lip needs 1
        assert_eq!(propagate_identity(&t, "lip").unwrap(), Consistency::Contradiction);
    }
}
