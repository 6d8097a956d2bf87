//! Grothendieck rings of fusion categories and isomorphisms between them.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::report::ValidationReport;

/// Structure constants `N_{ij}^k = n[i][j][k]` of a based ring with a unit
/// label and a duality involution. `dims` are Frobenius–Perron dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionRing {
    pub labels: Vec<String>,
    pub dims: Vec<u64>,
    pub n: Vec<Vec<Vec<u64>>>,
    pub unit: usize,
    pub dual: Vec<usize>,
}

impl FusionRing {
    /// Finds the unit, the duals and the Frobenius–Perron dimensions.
    pub fn new(labels: Vec<String>, n: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let r = labels.len();
        if r == 0 || n.len() != r || n.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r)) {
            return Err(Error::NotFusion(format!("structure constants do not match {r} labels")));
        }
        let is_unit = |u: usize| (0..r).all(|j| (0..r).all(|k| n[u][j][k] == (j == k) as u64));
        let unit = (0..r)
            .find(|&u| is_unit(u))
            .ok_or_else(|| Error::NotFusion("no unit label".into()))?;
        let mut dual = Vec::with_capacity(r);
        for i in 0..r {
            let js: Vec<usize> = (0..r).filter(|&j| n[i][j][unit] > 0).collect();
            match js.as_slice() {
                [j] if n[i][*j][unit] == 1 => dual.push(*j),
                _ => return Err(Error::NotFusion(format!("label {} has no unique dual", labels[i]))),
            }
        }
        let dims = fp_dims(&n, unit)?;
        Ok(FusionRing {
            labels,
            dims,
            n,
            unit,
            dual,
        })
    }

    /// The group ring `ℤ[G]` of a one-object groupoid.
    pub fn group_ring(g: &FiniteGroupoid) -> Self {
        let r = g.n_arrows();
        let mut n = vec![vec![vec![0; r]; r]; r];
        for (a, b) in g.composable_pairs() {
            n[a][b][g.mul(a, b)] = 1;
        }
        FusionRing::new((0..r).map(|a| format!("g{a}")).collect(), n).expect("group rings are fusion rings")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// `Σ_i d_i²`.
    pub fn global_dim(&self) -> u64 {
        self.dims.iter().map(|d| d * d).sum()
    }

    /// Unit laws, associativity, duality and Frobenius reciprocity.
    pub fn validate(&self) -> ValidationReport {
        let r = self.rank();
        let n = &self.n;
        let mut rep = ValidationReport::new();
        for i in 0..r {
            for k in 0..r {
                if n[i][self.unit][k] != (i == k) as u64 {
                    rep.push("right unit", format!("N({i},1,{k}) = {}", n[i][self.unit][k]));
                }
            }
            if self.dual[self.dual[i]] != i {
                rep.push("duality", format!("dual of {i} is not an involution"));
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if n[i][j][k] != n[self.dual[i]][k][j] || n[i][j][k] != n[k][self.dual[j]][i] {
                        rep.push("frobenius", format!("N({i},{j},{k}) breaks reciprocity"));
                    }
                    for l in 0..r {
                        let lhs: u64 = (0..r).map(|m| n[i][j][m] * n[m][k][l]).sum();
                        let rhs: u64 = (0..r).map(|m| n[j][k][m] * n[i][m][l]).sum();
                        if lhs != rhs {
                            rep.push("associativity", format!("({i}{j}){k} and {i}({j}{k}) differ at {l}"));
                        }
                    }
                }
                let lhs: u64 = (0..r).map(|k| n[i][j][k] * self.dims[k]).sum();
                if lhs != self.dims[i] * self.dims[j] {
                    rep.push("dimension", format!("d({i})d({j}) ≠ Σ N d"));
                }
            }
        }
        rep.finish()
    }

    /// Nonzero structure constants as `i j k N` rows with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("i\tj\tk\tN\n");
        for (i, row) in self.n.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, &c) in v.iter().enumerate() {
                    if c > 0 {
                        let _ = writeln!(out, "{}\t{}\t{}\t{c}", self.labels[i], self.labels[j], self.labels[k]);
                    }
                }
            }
        }
        out
    }

    /// Labels invariant under isomorphism: dimension, self-duality and the
    /// sorted multisets of row and column entries.
    fn signature(&self, i: usize) -> (u64, bool, Vec<u64>, Vec<u64>) {
        let r = self.rank();
        let mut row: Vec<u64> = (0..r).flat_map(|j| (0..r).map(move |k| (j, k))).map(|(j, k)| self.n[i][j][k]).collect();
        let mut col: Vec<u64> = (0..r).flat_map(|j| (0..r).map(move |k| (j, k))).map(|(j, k)| self.n[j][k][i]).collect();
        row.sort_unstable();
        col.sort_unstable();
        (self.dims[i], self.dual[i] == i, row, col)
    }
}

/// Frobenius–Perron dimensions by power iteration on `Σ_i N_i`, rounded
/// and then checked exactly against `d_i d_j = Σ_k N_{ij}^k d_k`.
fn fp_dims(n: &[Vec<Vec<u64>>], unit: usize) -> Result<Vec<u64>> {
    let r = n.len();
    let mut m = vec![vec![0.0f64; r]; r];
    for row in n {
        for (j, v) in row.iter().enumerate() {
            for (k, &c) in v.iter().enumerate() {
                m[k][j] += c as f64;
            }
        }
    }
    let mut x = vec![1.0f64; r];
    for _ in 0..500 {
        let mut y: Vec<f64> = (0..r).map(|k| (0..r).map(|j| m[k][j] * x[j]).sum()).collect();
        let s = y[unit];
        if s <= 0.0 {
            return Err(Error::NotFusion("Frobenius–Perron iteration degenerated".into()));
        }
        y.iter_mut().for_each(|v| *v /= s);
        let delta = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if delta < 1e-13 {
            break;
        }
    }
    let dims: Vec<u64> = x.iter().map(|v| v.round().max(0.0) as u64).collect();
    for i in 0..r {
        for j in 0..r {
            let s: u64 = (0..r).map(|k| n[i][j][k] * dims[k]).sum();
            if dims[i] == 0 || s != dims[i] * dims[j] {
                return Err(Error::NotFusion(format!("Frobenius–Perron dimensions {x:?} are not integral")));
            }
        }
    }
    Ok(dims)
}

/// A bijection `π` of labels with `N_{ij}^k = N'_{π(i)π(j)}^{π(k)}` that
/// preserves the unit, dimensions and duals, if one exists.
pub fn fusion_ring_isomorphic(a: &FusionRing, b: &FusionRing) -> Option<Vec<usize>> {
    let r = a.rank();
    if r != b.rank() {
        return None;
    }
    let sa: Vec<_> = (0..r).map(|i| a.signature(i)).collect();
    let sb: Vec<_> = (0..r).map(|i| b.signature(i)).collect();
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    // Assign labels with the rarest signature first.
    let mut order: Vec<usize> = (0..r).filter(|&i| i != a.unit).collect();
    order.sort_by_key(|&i| (sa.iter().filter(|s| **s == sa[i]).count(), i));
    order.insert(0, a.unit);
    let mut map = vec![usize::MAX; r];
    let mut used = vec![false; r];
    if search(a, b, &sa, &sb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &FusionRing,
    b: &FusionRing,
    sa: &[(u64, bool, Vec<u64>, Vec<u64>)],
    sb: &[(u64, bool, Vec<u64>, Vec<u64>)],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let i = order[depth];
    if map[i] != usize::MAX {
        return search(a, b, sa, sb, order, depth + 1, map, used);
    }
    let candidates: Vec<usize> = if i == a.unit {
        vec![b.unit]
    } else {
        (0..b.rank()).filter(|&j| !used[j] && sb[j] == sa[i]).collect()
    };
    for j in candidates {
        let (di, dj) = (a.dual[i], b.dual[j]);
        let dual_free = map[di] == usize::MAX && !used[dj];
        if !(map[di] == dj || (dual_free && (di != i) == (dj != j))) {
            continue;
        }
        let mut assigned = vec![i];
        map[i] = j;
        used[j] = true;
        if di != i && map[di] == usize::MAX {
            map[di] = dj;
            used[dj] = true;
            assigned.push(di);
        }
        if consistent(a, b, map) && search(a, b, sa, sb, order, depth + 1, map, used) {
            return true;
        }
        for x in assigned {
            used[map[x]] = false;
            map[x] = usize::MAX;
        }
    }
    false
}

fn consistent(a: &FusionRing, b: &FusionRing, map: &[usize]) -> bool {
    let done: Vec<usize> = (0..a.rank()).filter(|&i| map[i] != usize::MAX).collect();
    done.iter().all(|&i| {
        done.iter()
            .all(|&j| done.iter().all(|&k| a.n[i][j][k] == b.n[map[i]][map[j]][map[k]]))
    })
}
