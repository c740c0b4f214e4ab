//! Plain enumeration helpers shared by the integration tests.

#![allow(dead_code)]

/// Every reduced Latin square of order `n`, row by row with column checks
/// only.
pub fn naive_reduced(n: usize) -> Vec<Vec<usize>> {
    fn fill(n: usize, r: usize, c: usize, cells: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == n {
            out.push(cells.clone());
            return;
        }
        if c == n {
            fill(n, r + 1, 1, cells, out);
            return;
        }
        for v in 0..n {
            let row_ok = (0..c).all(|j| cells[r * n + j] != v);
            let col_ok = (0..r).all(|i| cells[i * n + c] != v);
            if row_ok && col_ok {
                cells[r * n + c] = v;
                fill(n, r, c + 1, cells, out);
            }
        }
        cells[r * n + c] = usize::MAX;
    }
    let mut cells = vec![usize::MAX; n * n];
    for i in 0..n {
        cells[i] = i;
        cells[i * n] = i;
    }
    let mut out = Vec::new();
    if n == 1 {
        return vec![cells];
    }
    fill(n, 1, 1, &mut cells, &mut out);
    out
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Least relabeled table over every bijection fixing 0.
pub fn brute_canonical(n: usize, cells: &[usize]) -> Vec<usize> {
    let rest: Vec<usize> = (1..n).collect();
    let mut best: Option<Vec<usize>> = None;
    for p in permutations(&rest) {
        let mut s = vec![0];
        s.extend(p);
        let mut t = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                t[s[x] * n + s[y]] = s[cells[x * n + y]];
            }
        }
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    best.unwrap()
}
