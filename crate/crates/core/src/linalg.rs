//! Exact linear algebra over F₂ and over ℤ/M.

use bitvec::prelude::*;
use num_integer::Integer;

/// Row-reduces `rows` over F₂ in place and returns the pivot columns.
pub fn f2_row_reduce(rows: &mut Vec<BitVec>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] {
                *row ^= &pivot;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{x : A x = 0}` over F₂, each vector of length `ncols`.
pub fn f2_nullspace(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut m = rows.to_vec();
    let pivots = f2_row_reduce(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = bitvec![0; ncols];
        v.set(free, true);
        for (row, &p) in m.iter().zip(&pivots) {
            if row[free] {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of a set of vectors over F₂.
pub fn f2_rank(rows: &[BitVec], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    f2_row_reduce(&mut m, ncols).len()
}

/// Vectors of `extra` that extend a basis of `span(base)`, chosen greedily
/// in order. Returned vectors span a complement of `span(base)` inside
/// `span(base ∪ extra)`.
pub fn f2_complement(base: &[BitVec], extra: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut acc: Vec<BitVec> = base.to_vec();
    let mut rank = f2_rank(&acc, ncols);
    let mut out = Vec::new();
    for v in extra {
        acc.push(v.clone());
        let r = f2_rank(&acc, ncols);
        if r > rank {
            rank = r;
            out.push(v.clone());
        } else {
            acc.pop();
        }
    }
    out
}

/// Sparse linear system over ℤ/M: each row is a list of `(column, coeff)`.
pub struct ModSystem {
    pub modulus: u64,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
    pub rhs: Vec<u64>,
}

/// How to fill the free coordinates of a solution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FreeChoice {
    /// Every free coordinate in the Smith basis is zero.
    #[default]
    Zero,
    /// Every free coordinate is shifted by one step of its ambiguity.
    Shifted,
}

fn md(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// A unit `u` mod `m` with `u·p ≡ gcd(p, m)`.
fn normalizing_unit(p: u64, m: u64) -> u64 {
    let g = p.gcd(&m);
    let (mp, pp) = (m / g, p / g);
    let (_, inv, _) = ext_gcd(pp as i128, mp as i128);
    let u0 = md(inv, mp.max(1));
    (0..g)
        .map(|k| u0 + k * mp)
        .find(|&u| u.gcd(&m) == 1)
        .unwrap_or(1)
}

impl ModSystem {
    /// Solves the system through a Smith normal form over ℤ/M. Returns
    /// `None` when it is inconsistent.
    pub fn solve(&self, choice: FreeChoice) -> Option<Vec<u64>> {
        let m = self.modulus;
        let n = self.ncols;
        if m == 1 {
            return Some(vec![0; n]);
        }
        let mut a: Vec<Vec<u64>> = Vec::with_capacity(self.rows.len());
        let mut b: Vec<u64> = Vec::with_capacity(self.rows.len());
        for (row, &r) in self.rows.iter().zip(&self.rhs) {
            let mut dense = vec![0u64; n];
            for &(c, v) in row {
                dense[c] = md(dense[c] as i128 + v as i128, m);
            }
            if dense.iter().all(|&x| x == 0) {
                if r % m != 0 {
                    return None;
                }
                continue;
            }
            a.push(dense);
            b.push(r % m);
        }
        dedup_rows(&mut a, &mut b)?;
        let rows = a.len();
        // Column transform: x = Q y.
        let mut q: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                e
            })
            .collect();
        let mut diag = Vec::new();
        let mut k = 0;
        while k < rows.min(n) {
            let mut best: Option<(u64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, &v) in row.iter().enumerate().skip(k) {
                    if v != 0 {
                        let g = v.gcd(&m);
                        if best.is_none_or(|(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            a.swap(k, pi);
            b.swap(k, pi);
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(k, pj);
                }
                for row in q.iter_mut() {
                    row.swap(k, pj);
                }
            }
            loop {
                let u = normalizing_unit(a[k][k], m);
                for x in a[k].iter_mut() {
                    *x = md(*x as i128 * u as i128, m);
                }
                b[k] = md(b[k] as i128 * u as i128, m);
                let p = a[k][k];
                let mut changed = false;
                for i in k + 1..rows {
                    let c = a[i][k];
                    if c == 0 {
                        continue;
                    }
                    if c.is_multiple_of(p) {
                        let f = (c / p) as i128;
                        for j in k..n {
                            a[i][j] = md(a[i][j] as i128 - f * a[k][j] as i128, m);
                        }
                        b[i] = md(b[i] as i128 - f * b[k] as i128, m);
                    } else {
                        // Unimodular combination bringing gcd(p, c) to the pivot.
                        let (g, s, t) = ext_gcd(p as i128, c as i128);
                        let (pp, cc) = (p as i128 / g, c as i128 / g);
                        for j in k..n {
                            let (x, y) = (a[k][j] as i128, a[i][j] as i128);
                            a[k][j] = md(s * x + t * y, m);
                            a[i][j] = md(-cc * x + pp * y, m);
                        }
                        let (x, y) = (b[k] as i128, b[i] as i128);
                        b[k] = md(s * x + t * y, m);
                        b[i] = md(-cc * x + pp * y, m);
                        changed = true;
                        break;
                    }
                }
                if changed {
                    continue;
                }
                for j in k + 1..n {
                    let c = a[k][j];
                    if c == 0 {
                        continue;
                    }
                    if c.is_multiple_of(p) {
                        let f = (c / p) as i128;
                        for row in a.iter_mut().skip(k) {
                            row[j] = md(row[j] as i128 - f * row[k] as i128, m);
                        }
                        for row in q.iter_mut() {
                            row[j] = md(row[j] as i128 - f * row[k] as i128, m);
                        }
                    } else {
                        let (g, s, t) = ext_gcd(p as i128, c as i128);
                        let (pp, cc) = (p as i128 / g, c as i128 / g);
                        for row in a.iter_mut().skip(k).chain(q.iter_mut()) {
                            let (x, y) = (row[k] as i128, row[j] as i128);
                            row[k] = md(s * x + t * y, m);
                            row[j] = md(-cc * x + pp * y, m);
                        }
                        changed = true;
                        break;
                    }
                }
                if !changed {
                    break;
                }
            }
            diag.push(a[k][k]);
            k += 1;
        }
        for &r in &b[k..] {
            if r != 0 {
                return None;
            }
        }
        let mut y = vec![0u64; n];
        for (i, &d) in diag.iter().enumerate() {
            if !b[i].is_multiple_of(d) {
                return None;
            }
            // d divides m here, so d·y ≡ b has the solutions b/d + (m/d)·t.
            let step = m / d;
            y[i] = (b[i] / d) % step;
            if choice == FreeChoice::Shifted && step < m {
                y[i] = (y[i] + step) % m;
            }
        }
        if choice == FreeChoice::Shifted {
            for yi in y.iter_mut().skip(diag.len()) {
                *yi = 1;
            }
        }
        let x = (0..n)
            .map(|i| {
                let s: i128 = (0..n).map(|j| q[i][j] as i128 * y[j] as i128).sum();
                md(s, m)
            })
            .collect();
        Some(x)
    }
}

/// Drops repeated rows, failing on rows that repeat with different right
/// hand sides.
fn dedup_rows(a: &mut Vec<Vec<u64>>, b: &mut Vec<u64>) -> Option<()> {
    use std::collections::HashMap;
    let mut seen: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut keep_a = Vec::new();
    let mut keep_b = Vec::new();
    for (row, r) in a.drain(..).zip(b.drain(..)) {
        match seen.get(&row) {
            Some(&prev) if prev != r => return None,
            Some(_) => {}
            None => {
                seen.insert(row.clone(), r);
                keep_a.push(row);
                keep_b.push(r);
            }
        }
    }
    *a = keep_a;
    *b = keep_b;
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nullspace_of_parity_check() {
        let mut row = bitvec![0; 3];
        row.fill(true);
        let basis = f2_nullspace(&[row], 3);
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn non_unit_pivots() {
        // 2x ≡ 2 (mod 6) and 3y ≡ 3 (mod 6).
        let sys = ModSystem {
            modulus: 6,
            ncols: 2,
            rows: vec![vec![(0, 2)], vec![(1, 3)]],
            rhs: vec![2, 3],
        };
        let x = sys.solve(FreeChoice::Zero).unwrap();
        assert_eq!((2 * x[0]) % 6, 2);
        assert_eq!((3 * x[1]) % 6, 3);
        let inconsistent = ModSystem {
            modulus: 6,
            ncols: 1,
            rows: vec![vec![(0, 2)]],
            rhs: vec![3],
        };
        assert!(inconsistent.solve(FreeChoice::Zero).is_none());
    }

    proptest! {
        // A system built from a known solution is solved, by either choice.
        #[test]
        fn solves_consistent_systems(
            m in 2u64..13,
            coeffs in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 1..7),
            sol in proptest::collection::vec(0u64..12, 4),
        ) {
            let rows: Vec<Vec<(usize, i64)>> = coeffs
                .iter()
                .map(|r| r.iter().enumerate().map(|(j, &c)| (j, c)).collect())
                .collect();
            let rhs: Vec<u64> = coeffs
                .iter()
                .map(|r| md(r.iter().zip(&sol).map(|(&c, &s)| c as i128 * s as i128).sum(), m))
                .collect();
            let sys = ModSystem { modulus: m, ncols: 4, rows: rows.clone(), rhs: rhs.clone() };
            for choice in [FreeChoice::Zero, FreeChoice::Shifted] {
                let x = sys.solve(choice).expect("consistent");
                for (row, &r) in rows.iter().zip(&rhs) {
                    let s: i128 = row.iter().map(|&(j, c)| c as i128 * x[j] as i128).sum();
                    prop_assert_eq!(md(s, m), r);
                }
            }
        }
    }
}
