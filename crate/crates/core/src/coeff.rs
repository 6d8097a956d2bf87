//! Coefficient models for structure constants.
//!
//! Every structure constant of a twisted weak Hopf algebra is a single root
//! of unity. Checking an identity therefore means deciding whether an
//! integer combination `Σ c_j·ζ_j` of such phases vanishes. Two models are
//! provided:
//!
//! * [`CyclicPhases`] holds concrete exponents mod N and decides vanishing
//!   exactly in ℤ[ζ_N].
//! * [`CharacterPhases`] holds a sign-valued phase as an affine function on
//!   an F₂ vector space `Z`. Since distinct characters of `Z` are linearly
//!   independent, a combination vanishes for every point of `Z` iff the
//!   coefficients attached to each linear part cancel. One symbolic check
//!   thus covers all `2^dim Z` concrete choices at once.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::cyclotomic::{Cyclo, CycloField};
use crate::phase::Phase;

pub trait PhaseGroup: Clone + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Send + Sync + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;

    /// Decides whether `Σ c·value(e)` vanishes (identically, for symbolic
    /// models).
    fn sum_is_zero(&self, terms: &[(Self::Elem, i64)]) -> bool;

    /// The exact value of `Σ c·value(e)` when it does not depend on any
    /// symbolic parameter.
    fn constant_value(&self, terms: &[(Self::Elem, i64)]) -> Option<Cyclo>;

    fn field(&self) -> &CycloField;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }
}

/// Concrete roots of unity `ζ_N^k`, stored as `k`.
#[derive(Clone, Debug)]
pub struct CyclicPhases {
    n: u32,
    field: CycloField,
}

impl CyclicPhases {
    pub fn new(n: u64) -> Self {
        let n = n.max(1);
        CyclicPhases {
            n: n as u32,
            field: CycloField::new(n),
        }
    }

    pub fn order(&self) -> u64 {
        self.n as u64
    }

    /// Converts a phase whose order divides N.
    pub fn embed(&self, p: Phase) -> u32 {
        p.exponent_mod(self.n as u64)
            .unwrap_or_else(|| panic!("phase {p} does not lie in μ_{}", self.n)) as u32
    }

    pub fn to_phase(&self, k: u32) -> Phase {
        Phase::from_exponent(k as u64, self.n as u64)
    }
}

impl PhaseGroup for CyclicPhases {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.n
    }

    fn neg(&self, a: u32) -> u32 {
        (self.n - a) % self.n
    }

    fn sum_is_zero(&self, terms: &[(u32, i64)]) -> bool {
        let mut v = vec![0i64; self.n as usize];
        for &(k, c) in terms {
            v[k as usize] += c;
        }
        self.field.int_combination_is_zero(&v)
    }

    fn constant_value(&self, terms: &[(u32, i64)]) -> Option<Cyclo> {
        let mut v = vec![0i64; self.n as usize];
        for &(k, c) in terms {
            v[k as usize] += c;
        }
        Some(self.field.from_int_poly(&v))
    }

    fn field(&self) -> &CycloField {
        &self.field
    }
}

/// A sign `(−1)^{flip + ⟨mask, z⟩}` depending on a point `z` of F₂^dim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Character {
    pub mask: u64,
    pub flip: bool,
}

#[derive(Clone, Debug)]
pub struct CharacterPhases {
    dim: usize,
    field: CycloField,
}

impl CharacterPhases {
    pub fn new(dim: usize) -> Self {
        assert!(dim <= 64, "symbolic phases support at most 64 parameters");
        CharacterPhases {
            dim,
            field: CycloField::new(1),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value of a character at the point `z` (bit `i` = coordinate `i`).
    pub fn evaluate(c: Character, z: u64) -> bool {
        c.flip ^ ((c.mask & z).count_ones() % 2 == 1)
    }
}

fn grouped(terms: &[(Character, i64)]) -> HashMap<u64, i64> {
    let mut acc: HashMap<u64, i64> = HashMap::new();
    for &(ch, c) in terms {
        *acc.entry(ch.mask).or_default() += if ch.flip { -c } else { c };
    }
    acc
}

impl PhaseGroup for CharacterPhases {
    type Elem = Character;

    fn zero(&self) -> Character {
        Character::default()
    }

    fn add(&self, a: Character, b: Character) -> Character {
        Character {
            mask: a.mask ^ b.mask,
            flip: a.flip ^ b.flip,
        }
    }

    fn neg(&self, a: Character) -> Character {
        a
    }

    fn sum_is_zero(&self, terms: &[(Character, i64)]) -> bool {
        grouped(terms).values().all(|&c| c == 0)
    }

    fn constant_value(&self, terms: &[(Character, i64)]) -> Option<Cyclo> {
        let g = grouped(terms);
        if g.iter().any(|(&m, &c)| m != 0 && c != 0) {
            return None;
        }
        Some(self.field.from_int(g.get(&0).copied().unwrap_or(0)))
    }

    fn field(&self) -> &CycloField {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclic_cancellation() {
        let g = CyclicPhases::new(4);
        // 1 + ζ² = 0 for ζ = i.
        assert!(g.sum_is_zero(&[(0, 1), (2, 1)]));
        assert!(!g.sum_is_zero(&[(0, 1), (1, 1)]));
        assert_eq!(g.embed(Phase::new(3, 4)), 3);
    }

    proptest! {
        // A symbolic verdict must agree with every concrete evaluation.
        #[test]
        fn characters_agree_with_evaluation(
            terms in proptest::collection::vec((0u64..8, any::<bool>(), -2i64..3), 0..6)
        ) {
            let g = CharacterPhases::new(3);
            let t: Vec<(Character, i64)> = terms
                .iter()
                .map(|&(mask, flip, c)| (Character { mask, flip }, c))
                .collect();
            let all_points = (0..8u64).all(|z| {
                let s: i64 = t
                    .iter()
                    .map(|&(ch, c)| if CharacterPhases::evaluate(ch, z) { -c } else { c })
                    .sum();
                s == 0
            });
            prop_assert_eq!(g.sum_is_zero(&t), all_points);
        }
    }
}
