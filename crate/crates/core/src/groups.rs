//! A catalog of the groups of order at most 16, up to isomorphism, as
//! one-object groupoids. Element 0 is always the identity.

use crate::groupoid::FiniteGroupoid;

pub fn cyclic(n: usize) -> FiniteGroupoid {
    FiniteGroupoid::group(n, |a, b| (a + b) % n)
}

/// `⟨a, b | a^m, b^n = a^s, b a b⁻¹ = a^r⟩` with elements `a^i b^j` stored
/// as `i + m·j`. Needs `r^n ≡ 1` and `r·s ≡ s` modulo `m`.
pub fn metacyclic(m: usize, n: usize, r: usize, s: usize) -> FiniteGroupoid {
    let pow = |j: usize| (0..j).fold(1usize, |acc, _| acc * r % m);
    FiniteGroupoid::group(m * n, |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let mut e = i + pow(j) * k;
        let mut f = j + l;
        if f >= n {
            f -= n;
            e += s;
        }
        e % m + m * f
    })
}

pub fn dihedral(m: usize) -> FiniteGroupoid {
    metacyclic(m, 2, m - 1, 0)
}

/// `N ⋊ C_k` where the generator of `C_k` acts by the automorphism `phi`,
/// given as a permutation of the elements of `N`. Elements `(x, j)` are
/// stored as `x + |N|·j`.
pub fn semidirect(n: &FiniteGroupoid, k: usize, phi: &[usize]) -> FiniteGroupoid {
    let size = n.n_arrows();
    let apply = |j: usize, x: usize| (0..j).fold(x, |acc, _| phi[acc]);
    FiniteGroupoid::group(size * k, |a, b| {
        let (x, i) = (a % size, a / size);
        let (y, j) = (b % size, b / size);
        n.mul(x, apply(i, y)) + size * ((i + j) % k)
    })
}

fn c2_power(k: u32) -> FiniteGroupoid {
    FiniteGroupoid::group(1 << k, |a, b| a ^ b)
}

/// All 42 groups of order at most 16, named, in order of size.
pub fn small_groups() -> Vec<(String, FiniteGroupoid)> {
    let mut out: Vec<(String, FiniteGroupoid)> = Vec::new();
    let mut add = |name: &str, g: FiniteGroupoid| out.push((name.to_string(), g));
    let c = cyclic;
    add("C1", c(1));
    add("C2", c(2));
    add("C3", c(3));
    add("C4", c(4));
    add("C2xC2", c2_power(2));
    add("C5", c(5));
    add("C6", c(6));
    add("S3", dihedral(3));
    add("C7", c(7));
    add("C8", c(8));
    add("C4xC2", c(4).product(&c(2)));
    add("C2^3", c2_power(3));
    add("D4", dihedral(4));
    add("Q8", metacyclic(4, 2, 3, 2));
    add("C9", c(9));
    add("C3xC3", c(3).product(&c(3)));
    add("C10", c(10));
    add("D5", dihedral(5));
    add("C11", c(11));
    add("C12", c(12));
    add("C6xC2", c(6).product(&c(2)));
    add("D6", dihedral(6));
    add("Dic3", metacyclic(3, 4, 2, 0));
    // C₂² ⋊ C₃ with the generator cycling the three involutions.
    add("A4", semidirect(&c2_power(2), 3, &[0, 2, 3, 1]));
    add("C13", c(13));
    add("C14", c(14));
    add("D7", dihedral(7));
    add("C15", c(15));
    add("C16", c(16));
    add("C4xC4", c(4).product(&c(4)));
    add("C8xC2", c(8).product(&c(2)));
    add("C4xC2^2", c(4).product(&c2_power(2)));
    add("C2^4", c2_power(4));
    add("D8", dihedral(8));
    add("Q16", metacyclic(8, 2, 7, 4));
    add("SD16", metacyclic(8, 2, 3, 0));
    add("M16", metacyclic(8, 2, 5, 0));
    add("C4:C4", metacyclic(4, 4, 3, 0));
    add("D4xC2", dihedral(4).product(&c(2)));
    add("Q8xC2", metacyclic(4, 2, 3, 2).product(&c(2)));
    // (C₄ × C₂) ⋊ C₂ with a^i b^j ↦ a^i b^{i+j}.
    let c4c2 = c(4).product(&c(2));
    let ab: Vec<usize> = (0..8).map(|e| on_exponents(e, |i, j| (i, (i + j) % 2))).collect();
    add("(C4xC2):C2", semidirect(&c4c2, 2, &ab));
    // Central product C₄ ∘ D₄, via a^i b^j ↦ a^{i+2j} b^j.
    let pauli: Vec<usize> = (0..8).map(|e| on_exponents(e, |i, j| ((i + 2 * j) % 4, j))).collect();
    add("C4oD4", semidirect(&c4c2, 2, &pauli));
    out
}

/// Applies a map on exponents `(i, j)` of `a^i b^j ∈ C₄ × C₂`, where the
/// product groupoid stores `a^i b^j` as `2i + j`.
fn on_exponents(e: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> usize {
    let (i, j) = f(e / 2, e % 2);
    2 * i + j
}

/// Element orders, sorted. Used to tell small groups apart.
pub fn order_statistics(g: &FiniteGroupoid) -> Vec<usize> {
    let mut out: Vec<usize> = (0..g.n_arrows())
        .map(|a| {
            let mut k = 1;
            let mut x = a;
            while !g.is_identity(x) {
                x = g.mul(x, a);
                k += 1;
            }
            k
        })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn centre_size(g: &FiniteGroupoid) -> usize {
        (0..g.n_arrows())
            .filter(|&a| (0..g.n_arrows()).all(|b| g.mul(a, b) == g.mul(b, a)))
            .count()
    }

    fn square_count(g: &FiniteGroupoid) -> usize {
        (0..g.n_arrows()).map(|a| g.mul(a, a)).collect::<BTreeSet<_>>().len()
    }

    #[test]
    fn catalog_is_complete_and_irredundant() {
        let groups = small_groups();
        assert_eq!(groups.len(), 42);
        let per_order = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
        for (n, &expected) in per_order.iter().enumerate() {
            let found = groups.iter().filter(|(_, g)| g.n_arrows() == n + 1).count();
            assert_eq!(found, expected, "groups of order {}", n + 1);
        }
        let mut invariants = BTreeSet::new();
        for (name, g) in &groups {
            assert!(g.validate().is_valid(), "{name} is not a group");
            let inv = (order_statistics(g), centre_size(g), square_count(g));
            assert!(invariants.insert(inv), "{name} duplicates an earlier group");
        }
    }
}
