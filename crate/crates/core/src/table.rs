//! Finite loops stored as fully materialized Cayley tables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Line, Result};
use crate::perm::Perm;

/// Largest supported loop order.
pub const MAX_ORDER: usize = 128;

/// A finite loop on `0..n` with identity element `0`.
///
/// Both division tables are precomputed at validation time, so every
/// operation is a single lookup. Tables are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopTable {
    n: usize,
    mul: Vec<u8>,
    ldiv: Vec<u8>,
    rdiv: Vec<u8>,
}

impl LoopTable {
    /// Validates an `order x order` table of element ids.
    pub fn validate(order: usize, rows: &[Vec<usize>]) -> Result<Self> {
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(Error::BadDimensions { order });
        }
        Self::from_flat(order, rows.iter().flatten().copied().collect())
    }

    /// Validates a row-major table.
    pub fn from_flat(order: usize, cells: Vec<usize>) -> Result<Self> {
        if order == 0 || cells.len() != order * order {
            return Err(Error::BadDimensions { order });
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        let n = order;
        for (i, row) in cells.chunks(n).enumerate() {
            if !is_permutation(row.iter().copied(), n) {
                return Err(Error::NotLatin(Line::Row(i)));
            }
        }
        for j in 0..n {
            if !is_permutation((0..n).map(|i| cells[i * n + j]), n) {
                return Err(Error::NotLatin(Line::Col(j)));
            }
        }
        if (0..n).any(|x| cells[x] != x || cells[x * n] != x) {
            return Err(Error::NoIdentity);
        }
        Ok(Self::from_latin_unchecked(n, cells.into_iter().map(|v| v as u8).collect()))
    }

    /// Builds a table from a multiplication function, then validates it.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cells = (0..order * order).map(|k| f(k / order, k % order)).collect();
        Self::from_flat(order, cells)
    }

    /// Caller guarantees a reduced Latin square.
    pub(crate) fn from_latin_unchecked(n: usize, mul: Vec<u8>) -> Self {
        let mut ldiv = vec![0u8; n * n];
        let mut rdiv = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = mul[x * n + y] as usize;
                ldiv[x * n + z] = y as u8;
                rdiv[z * n + y] = x as u8;
            }
        }
        LoopTable { n, mul, ldiv, rdiv }
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_fn(n, |x, y| (x + y) % n)
    }

    /// The dihedral group of order `2m` (`m >= 1`): elements `r^k` are `k`,
    /// reflections `s r^k` are `m + k`.
    pub fn dihedral(m: usize) -> Result<Self> {
        Self::from_fn(2 * m, |a, b| {
            let (sa, ka) = (a / m, a % m);
            let (sb, kb) = (b / m, b % m);
            // s^sa r^ka s^sb r^kb = s^(sa+sb) r^(±ka + kb)
            let k = if sb == 0 { (ka + kb) % m } else { (m - ka + kb) % m };
            ((sa + sb) % 2) * m + k
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// `x * y`.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y] as usize
    }

    /// `x \ y`: the unique `z` with `x * z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y] as usize
    }

    /// `x / y`: the unique `z` with `z * y = x`.
    #[inline]
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.n + y] as usize
    }

    /// Left inverse `x^λ = 1/x`.
    #[inline]
    pub fn left_inv(&self, x: usize) -> usize {
        self.rdiv(0, x)
    }

    /// Right inverse `x^ρ = x\1`.
    #[inline]
    pub fn right_inv(&self, x: usize) -> usize {
        self.ldiv(x, 0)
    }

    pub fn row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.mul[x * self.n..(x + 1) * self.n].iter().map(|&v| v as usize)
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[u8] {
        &self.mul
    }

    /// Left translation `L_x: y -> xy`.
    pub fn left_translation(&self, x: usize) -> Perm {
        Perm::from_raw(self.mul[x * self.n..(x + 1) * self.n].to_vec())
    }

    /// Right translation `R_x: y -> yx`.
    pub fn right_translation(&self, x: usize) -> Perm {
        Perm::from_raw((0..self.n).map(|y| self.mul[y * self.n + x]).collect())
    }

    /// `T_x = R_x^-1 L_x: y -> (xy)/x`.
    pub fn middle_translation(&self, x: usize) -> Perm {
        Perm::from_raw((0..self.n).map(|y| self.rdiv(self.mul(x, y), x) as u8).collect())
    }

    /// The opposite loop `x * y := yx`.
    pub fn opposite(&self) -> LoopTable {
        let n = self.n;
        Self::from_latin_unchecked(n, (0..n * n).map(|k| self.mul[(k % n) * n + k / n]).collect())
    }

    /// Componentwise product; element `(a, b)` has id `a * |other| + b`.
    pub fn direct_product(&self, other: &LoopTable) -> Result<LoopTable> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut cells = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let a = self.mul(u / n2, v / n2);
                let b = other.mul(u % n2, v % n2);
                cells.push((a * n2 + b) as u8);
            }
        }
        Ok(Self::from_latin_unchecked(n, cells))
    }

    /// Principal isotope `x o y = (x/b)(a\y)`, whose identity `ab` is
    /// swapped with `0` so that the result is again identity-at-zero.
    pub fn principal_isotope(&self, a: usize, b: usize) -> LoopTable {
        let e = self.mul(a, b);
        let swap = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = self.mul(self.rdiv(x, b), self.ldiv(a, y));
                cells[swap(x) * n + swap(y)] = swap(z) as u8;
            }
        }
        Self::from_latin_unchecked(n, cells)
    }

    /// Transports the table along `sigma`: the result satisfies
    /// `sigma(x) * sigma(y) = sigma(xy)`. `sigma` must fix `0`.
    pub fn relabel(&self, sigma: &Perm) -> LoopTable {
        assert_eq!(sigma.degree(), self.n);
        assert!(sigma.fixes(0), "relabeling must fix the identity");
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[sigma.apply(x) * n + sigma.apply(y)] = sigma.apply(self.mul(x, y)) as u8;
            }
        }
        Self::from_latin_unchecked(n, cells)
    }

    /// Renders the `.loop` text format.
    pub fn to_loop_string(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).map(|v| v.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the `.loop` text format: the order on the first line, then
    /// one row per line. `#` starts a comment; blank lines are ignored.
    pub fn parse_loop(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse { line: first, msg: format!("expected order, found `{header}`") })?;
        if n == 0 {
            return Err(Error::Parse { line: first, msg: "order must be positive".into() });
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, l) = lines.next().ok_or(Error::Parse { line: first, msg: format!("expected {n} rows") })?;
            let row = l
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse { line: ln, msg: "non-integer entry".into() })?;
            if row.len() != n {
                return Err(Error::Parse { line: ln, msg: format!("expected {n} entries, found {}", row.len()) });
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse { line: ln, msg: "trailing garbage after table".into() });
        }
        Self::validate(n, &rows)
    }
}

impl FromStr for LoopTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_loop(s)
    }
}

impl fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopTable({})", self.to_loop_string().trim_end().replace('\n', " | "))
    }
}

impl fmt::Display for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_loop_string())
    }
}

fn is_permutation(values: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut count = 0;
    for v in values {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
        count += 1;
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(LoopTable::validate(2, &[vec![0, 1], vec![1, 0]]).is_ok());
        assert_eq!(LoopTable::validate(2, &[vec![0, 1], vec![1, 1]]), Err(Error::NotLatin(Line::Row(1))));
        // Z_3 with 1 acting as the identity
        let z3_shifted = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        assert_eq!(LoopTable::validate(3, &z3_shifted), Err(Error::NoIdentity));
        assert_eq!(LoopTable::validate(3, &[vec![0, 1], vec![1, 0]]), Err(Error::BadDimensions { order: 3 }));
    }

    #[test]
    fn column_violation_is_reported() {
        let rows = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert_eq!(LoopTable::validate(3, &rows), Err(Error::NotLatin(Line::Col(1))));
    }

    #[test]
    fn z5_divisions() {
        let z5 = LoopTable::cyclic(5).unwrap();
        assert_eq!(z5.mul(2, 4), 1);
        assert_eq!(z5.ldiv(2, 1), 4);
        assert_eq!(z5.rdiv(1, 4), 2);
        for y in 0..5 {
            assert_eq!(z5.ldiv(0, y), y);
        }
    }

    #[test]
    fn inverses_in_z4() {
        let z4 = LoopTable::cyclic(4).unwrap();
        assert_eq!(z4.left_inv(1), 3);
        assert_eq!(z4.right_inv(1), 3);
    }

    #[test]
    fn translations() {
        let z4 = LoopTable::cyclic(4).unwrap();
        assert!(z4.left_translation(0).is_identity());
        for x in 0..4 {
            assert!(z4.middle_translation(x).is_identity());
            assert_eq!(z4.left_translation(x).apply(0), x);
        }
    }

    #[test]
    fn klein_four_as_product() {
        let z2 = LoopTable::cyclic(2).unwrap();
        let v4 = z2.direct_product(&z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!((0..4).all(|x| v4.mul(x, x) == 0));
        let trivial = LoopTable::cyclic(1).unwrap();
        assert_eq!(z2.direct_product(&trivial).unwrap(), z2);
    }

    #[test]
    fn product_overflow() {
        let big = LoopTable::cyclic(12).unwrap();
        assert!(matches!(big.direct_product(&big), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn dihedral_is_a_group_of_right_order() {
        let d8 = LoopTable::dihedral(4).unwrap();
        assert_eq!(d8.order(), 8);
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    assert_eq!(d8.mul(d8.mul(x, y), z), d8.mul(x, d8.mul(y, z)));
                }
            }
        }
        assert_ne!(d8.mul(1, 4), d8.mul(4, 1));
    }

    #[test]
    fn trivial_isotope() {
        let d = LoopTable::dihedral(3).unwrap();
        assert_eq!(d.principal_isotope(0, 0), d);
    }

    #[test]
    fn loop_format_round_trip() {
        let d = LoopTable::dihedral(3).unwrap();
        assert_eq!(LoopTable::parse_loop(&d.to_loop_string()).unwrap(), d);
        let commented = "# Z2\n2 # order\n0 1\n\n1 0 # last row\n";
        assert_eq!(LoopTable::parse_loop(commented).unwrap(), LoopTable::cyclic(2).unwrap());
    }

    #[test]
    fn loop_format_rejects_garbage() {
        assert!(matches!(LoopTable::parse_loop("2\n0 1\n1 0\n7\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(LoopTable::parse_loop("2\n0 1 1\n1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(LoopTable::parse_loop("2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(LoopTable::parse_loop("x\n"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(LoopTable::parse_loop("2\n0 1\n1 1\n"), Err(Error::NotLatin(Line::Row(1))));
    }
}
