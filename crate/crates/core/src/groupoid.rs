//! Finite groupoids as validated composition tables.
//!
//! Composition is written in diagrammatic order: `ab` is defined when the
//! target of `a` equals the source of `b`.

use std::collections::{BTreeSet, VecDeque};

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

pub const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    identity: Vec<u32>,
    compose: Vec<u32>,
    inverse: Vec<u32>,
    is_identity: Vec<bool>,
    out_arrows: Vec<Vec<u32>>,
}

/// Serialized form of a groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidSpec {
    pub objects: usize,
    pub arrows: Vec<ArrowSpec>,
    pub compose: Vec<[usize; 3]>,
    pub identities: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub src: usize,
    pub tgt: usize,
}

impl FiniteGroupoid {
    /// Builds a groupoid from a composition function. The function is only
    /// queried on composable pairs.
    pub fn from_fn(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Self {
        let n = src.len();
        let mut table = vec![NONE; n * n];
        for a in 0..n {
            for b in 0..n {
                if tgt[a] == src[b] {
                    table[a * n + b] = compose(a, b) as u32;
                }
            }
        }
        Self::from_parts(n_objects, src, tgt, identities, table)
    }

    fn from_parts(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identities: Vec<usize>,
        compose: Vec<u32>,
    ) -> Self {
        let n = src.len();
        let mut is_identity = vec![false; n];
        for &i in &identities {
            if i < n {
                is_identity[i] = true;
            }
        }
        let mut out_arrows = vec![Vec::new(); n_objects];
        for a in 0..n {
            if src[a] < n_objects {
                out_arrows[src[a]].push(a as u32);
            }
        }
        let mut g = FiniteGroupoid {
            n_objects,
            src: src.iter().map(|&s| s as u32).collect(),
            tgt: tgt.iter().map(|&t| t as u32).collect(),
            identity: identities.iter().map(|&i| i as u32).collect(),
            compose,
            inverse: vec![NONE; n],
            is_identity,
            out_arrows,
        };
        g.inverse = (0..n).map(|a| g.find_inverse(a).map_or(NONE, |b| b as u32)).collect();
        g
    }

    fn find_inverse(&self, a: usize) -> Option<usize> {
        let s = self.src[a] as usize;
        let t = self.tgt[a] as usize;
        let (ids, idt) = (*self.identity.get(s)?, *self.identity.get(t)?);
        self.out_arrows.get(t)?.iter().map(|&b| b as usize).find(|&b| {
            self.tgt[b] as usize == s
                && self.compose[a * self.n_arrows() + b] == ids
                && self.compose[b * self.n_arrows() + a] == idt
        })
    }

    /// A group viewed as a one-object groupoid. Element 0 is the identity.
    pub fn group(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        Self::from_fn(1, vec![0; order], vec![0; order], vec![0], mul)
    }

    /// The pair groupoid on `n` objects: one arrow `i → j` for every pair,
    /// with id `i·n + j`.
    pub fn pair(n: usize) -> Self {
        let src = (0..n * n).map(|a| a / n).collect();
        let tgt = (0..n * n).map(|a| a % n).collect();
        let ids = (0..n).map(|i| i * n + i).collect();
        Self::from_fn(n, src, tgt, ids, |a, b| (a / n) * n + b % n)
    }

    /// Disjoint union; arrows of `other` are shifted after those of `self`.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Self {
        let na = self.n_arrows();
        let no = self.n_objects;
        let mut src: Vec<usize> = self.src.iter().map(|&s| s as usize).collect();
        src.extend(other.src.iter().map(|&s| s as usize + no));
        let mut tgt: Vec<usize> = self.tgt.iter().map(|&s| s as usize).collect();
        tgt.extend(other.tgt.iter().map(|&s| s as usize + no));
        let mut ids: Vec<usize> = self.identity.iter().map(|&s| s as usize).collect();
        ids.extend(other.identity.iter().map(|&s| s as usize + na));
        Self::from_fn(no + other.n_objects, src, tgt, ids, |a, b| {
            if a < na {
                self.mul(a, b)
            } else {
                other.mul(a - na, b - na) + na
            }
        })
    }

    /// Cartesian product; the arrow `(a, b)` has id `a·|other| + b`.
    pub fn product(&self, other: &FiniteGroupoid) -> Self {
        let m = other.n_arrows();
        let mo = other.n_objects;
        let n = self.n_arrows() * m;
        let src = (0..n).map(|c| self.src(c / m) * mo + other.src(c % m)).collect();
        let tgt = (0..n).map(|c| self.tgt(c / m) * mo + other.tgt(c % m)).collect();
        let mut ids = Vec::new();
        for p in 0..self.n_objects {
            for q in 0..mo {
                ids.push(self.identity(p) * m + other.identity(q));
            }
        }
        Self::from_fn(self.n_objects * mo, src, tgt, ids, |a, b| {
            self.mul(a / m, b / m) * m + other.mul(a % m, b % m)
        })
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, a: usize) -> usize {
        self.src[a] as usize
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.tgt[a] as usize
    }

    pub fn identity(&self, p: usize) -> usize {
        self.identity[p] as usize
    }

    pub fn identities(&self) -> impl Iterator<Item = usize> + '_ {
        self.identity.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.is_identity[a]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        match self.compose[a * self.n_arrows() + b] {
            NONE => None,
            c => Some(c as usize),
        }
    }

    /// Composition of a pair known to be composable.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let c = self.compose[a * self.n_arrows() + b];
        debug_assert!(c != NONE, "arrows {a} and {b} are not composable");
        c as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// Arrows with source `p`, in id order.
    pub fn arrows_from(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arrows[p].iter().map(|&a| a as usize)
    }

    pub fn hom(&self, p: usize, q: usize) -> Vec<usize> {
        self.arrows_from(p).filter(|&a| self.tgt(a) == q).collect()
    }

    /// Composable pairs `(a, b)` in lexicographic id order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n_arrows() {
            for b in self.arrows_from(self.tgt(a)) {
                out.push((a, b));
            }
        }
        out
    }

    /// All composable `n`-tuples in lexicographic id order.
    pub fn composable_tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.n_arrows()).map(|a| vec![a]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for t in &out {
                let last = *t.last().unwrap();
                for b in self.arrows_from(self.tgt(last)) {
                    let mut u = t.clone();
                    u.push(b);
                    next.push(u);
                }
            }
            out = next;
        }
        if n == 0 {
            out.clear();
        }
        out
    }

    /// Checks every groupoid axiom instance.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let n = self.n_arrows();
        if self.identity.len() != self.n_objects {
            rep.push(
                "identities",
                format!("{} identities for {} objects", self.identity.len(), self.n_objects),
            );
            return rep;
        }
        for a in 0..n {
            if self.src(a) >= self.n_objects || self.tgt(a) >= self.n_objects {
                rep.push("endpoints", format!("arrow {a} has an endpoint outside the base"));
            }
        }
        if !rep.is_empty() {
            return rep;
        }
        for (p, &i) in self.identity.iter().enumerate() {
            let i = i as usize;
            if i >= n || self.src(i) != p || self.tgt(i) != p {
                rep.push("identities", format!("identity of object {p} is not a loop at {p}"));
            }
        }
        if !rep.is_empty() {
            return rep;
        }
        for a in 0..n {
            for b in 0..n {
                let c = self.compose[a * n + b];
                let composable = self.tgt(a) == self.src(b);
                if composable != (c != NONE) {
                    rep.push("domain", format!("compose({a},{b}) defined iff e(a)=s(b) fails"));
                } else if composable {
                    let c = c as usize;
                    if c >= n || self.src(c) != self.src(a) || self.tgt(c) != self.tgt(b) {
                        rep.push("endpoints", format!("compose({a},{b}) = {c} has wrong endpoints"));
                    }
                }
            }
        }
        if !rep.is_empty() {
            return rep;
        }
        for a in 0..n {
            let (s, t) = (self.src(a), self.tgt(a));
            if self.mul(self.identity(s), a) != a {
                rep.push("left identity", format!("id_{s}·{a} ≠ {a}"));
            }
            if self.mul(a, self.identity(t)) != a {
                rep.push("right identity", format!("{a}·id_{t} ≠ {a}"));
            }
            if self.inverse[a] == NONE {
                rep.push("inverse", format!("arrow {a} has no inverse"));
            }
            for b in self.arrows_from(t) {
                let ab = self.mul(a, b);
                for c in self.arrows_from(self.tgt(b)) {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        rep.push("associativity", format!("({a}·{b})·{c} ≠ {a}·({b}·{c})"));
                    }
                }
            }
        }
        rep.finish()
    }

    /// Partition of the base into connected components, each sorted, ordered
    /// by least element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n_objects];
        let mut blocks = Vec::new();
        for start in 0..self.n_objects {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for a in self.arrows_from(p) {
                    let q = self.tgt(a);
                    if comp[q] == usize::MAX {
                        comp[q] = id;
                        block.push(q);
                        queue.push_back(q);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// The vertex group at `p`, with the embedding of its elements. The
    /// identity of `p` becomes element 0.
    pub fn vertex_group(&self, p: usize) -> (FiniteGroupoid, Vec<usize>) {
        let mut elems = vec![self.identity(p)];
        elems.extend(self.hom(p, p).into_iter().filter(|&a| a != self.identity(p)));
        let pos = |a: usize| elems.iter().position(|&e| e == a).unwrap();
        let g = FiniteGroupoid::group(elems.len(), |i, j| pos(self.mul(elems[i], elems[j])));
        (g, elems)
    }

    /// Renumbered copy of the subgroupoid on the given arrows, in id order.
    /// Returns the groupoid together with the embedding of its arrows.
    pub fn restrict(&self, sub: &Subgroupoid) -> (FiniteGroupoid, Vec<usize>) {
        let arrows = sub.arrows.clone();
        let mut pos = vec![NONE; self.n_arrows()];
        for (i, &a) in arrows.iter().enumerate() {
            pos[a] = i as u32;
        }
        let src = arrows.iter().map(|&a| self.src(a)).collect();
        let tgt = arrows.iter().map(|&a| self.tgt(a)).collect();
        let ids = (0..self.n_objects).map(|p| pos[self.identity(p)] as usize).collect();
        let g = FiniteGroupoid::from_fn(self.n_objects, src, tgt, ids, |i, j| {
            pos[self.mul(arrows[i], arrows[j])] as usize
        });
        (g, arrows)
    }

    pub fn to_spec(&self) -> GroupoidSpec {
        GroupoidSpec {
            objects: self.n_objects,
            arrows: (0..self.n_arrows())
                .map(|a| ArrowSpec {
                    src: self.src(a),
                    tgt: self.tgt(a),
                })
                .collect(),
            compose: self
                .composable_pairs()
                .into_iter()
                .map(|(a, b)| [a, b, self.mul(a, b)])
                .collect(),
            identities: self.identities().collect(),
        }
    }

    /// Builds a groupoid from its serialized form. Structural problems that
    /// prevent building the tables are errors; axiom failures are left for
    /// [`FiniteGroupoid::validate`].
    pub fn from_spec(spec: &GroupoidSpec) -> Result<Self> {
        let n = spec.arrows.len();
        for (i, a) in spec.arrows.iter().enumerate() {
            if a.src >= spec.objects || a.tgt >= spec.objects {
                return Err(Error::InvalidGroupoid(format!("arrow {i} has an endpoint outside the base")));
            }
        }
        if spec.identities.len() != spec.objects || spec.identities.iter().any(|&i| i >= n) {
            return Err(Error::InvalidGroupoid("identity table does not match objects".into()));
        }
        let mut table = vec![NONE; n * n];
        for &[a, b, c] in &spec.compose {
            if a >= n || b >= n || c >= n {
                return Err(Error::InvalidGroupoid(format!("compose entry [{a},{b},{c}] out of range")));
            }
            if table[a * n + b] != NONE && table[a * n + b] != c as u32 {
                return Err(Error::InvalidGroupoid(format!("compose({a},{b}) given twice")));
            }
            table[a * n + b] = c as u32;
        }
        let src: Vec<usize> = spec.arrows.iter().map(|a| a.src).collect();
        let tgt: Vec<usize> = spec.arrows.iter().map(|a| a.tgt).collect();
        Ok(Self::from_parts(spec.objects, src, tgt, spec.identities.clone(), table))
    }

    /// Overwrites one table entry. Intended for building corrupted inputs in
    /// tests of the validators.
    pub fn with_compose_entry(&self, a: usize, b: usize, c: usize) -> Self {
        let mut spec = self.to_spec();
        for e in spec.compose.iter_mut() {
            if e[0] == a && e[1] == b {
                e[2] = c;
            }
        }
        Self::from_spec(&spec).expect("entry in range")
    }

    /// Closure of a set of arrows under composition and inverses, together
    /// with all identities.
    pub fn closure(&self, seed: &BitSlice) -> BitVec {
        let mut set = seed.to_bitvec();
        for i in self.identities() {
            set.set(i, true);
        }
        let mut stack: Vec<usize> = set.iter_ones().collect();
        while let Some(a) = stack.pop() {
            let inv = self.inverse(a);
            if !set[inv] {
                set.set(inv, true);
                stack.push(inv);
            }
            let members: Vec<usize> = set.iter_ones().collect();
            for b in members {
                for (x, y) in [(a, b), (b, a)] {
                    if let Some(c) = self.compose(x, y) {
                        if !set[c] {
                            set.set(c, true);
                            stack.push(c);
                        }
                    }
                }
            }
        }
        set
    }

    /// Every wide subgroupoid, ordered by size and then by arrow list.
    pub fn wide_subgroupoids(&self) -> Vec<Subgroupoid> {
        let n = self.n_arrows();
        let base = self.closure(&bitvec![0; n]);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![base];
        seen.insert(queue[0].iter_ones().collect());
        while let Some(s) = queue.pop() {
            for a in s.iter_zeros() {
                let mut seed = s.clone();
                seed.set(a, true);
                let c = self.closure(&seed);
                let key: Vec<usize> = c.iter_ones().collect();
                if seen.insert(key) {
                    queue.push(c);
                }
            }
        }
        let mut subs: Vec<Subgroupoid> = seen.into_iter().map(|arrows| Subgroupoid { arrows }).collect();
        subs.sort_by(|a, b| (a.len(), &a.arrows).cmp(&(b.len(), &b.arrows)));
        subs
    }
}

/// A set of arrows of an ambient groupoid, sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroupoid {
    pub arrows: Vec<usize>,
}

impl Subgroupoid {
    pub fn new(mut arrows: Vec<usize>) -> Self {
        arrows.sort_unstable();
        arrows.dedup();
        Subgroupoid { arrows }
    }

    pub fn whole(g: &FiniteGroupoid) -> Self {
        Subgroupoid {
            arrows: (0..g.n_arrows()).collect(),
        }
    }

    pub fn identities(g: &FiniteGroupoid) -> Self {
        Self::new(g.identities().collect())
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.arrows.binary_search(&a).is_ok()
    }

    /// Checks that the subset is a wide subgroupoid of `g`.
    pub fn validate_wide(&self, g: &FiniteGroupoid) -> ValidationReport {
        let mut rep = ValidationReport::new();
        if let Some(&a) = self.arrows.iter().find(|&&a| a >= g.n_arrows()) {
            rep.push("range", format!("arrow {a} is not in the ambient groupoid"));
            return rep;
        }
        for p in 0..g.n_objects() {
            if !self.contains(g.identity(p)) {
                rep.push("wide", format!("identity of object {p} missing"));
            }
        }
        for &a in &self.arrows {
            if !self.contains(g.inverse(a)) {
                rep.push("inverse", format!("inverse of {a} missing"));
            }
            for &b in &self.arrows {
                if let Some(c) = g.compose(a, b) {
                    if !self.contains(c) {
                        rep.push("composition", format!("{a}·{b} = {c} missing"));
                    }
                }
            }
        }
        rep.finish()
    }
}

/// Choice among the arrows of a hom-set when building a transversal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransversalRule {
    #[default]
    Smallest,
    Largest,
}

/// Arrows `τ_P : O → P` inside a connected subgroupoid, with `τ_O = id_O`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub base: usize,
    pub tau: Vec<usize>,
}

/// Picks `τ_P ∈ V(O,P)` by id according to `rule`, with `τ_O = id_O`.
pub fn choose_transversal(
    g: &FiniteGroupoid,
    sub: &Subgroupoid,
    base: usize,
    rule: TransversalRule,
) -> Result<Transversal> {
    if base >= g.n_objects() {
        return Err(Error::NotConnected(format!("object {base} is not in the base")));
    }
    let mut tau = Vec::with_capacity(g.n_objects());
    for p in 0..g.n_objects() {
        if p == base {
            tau.push(g.identity(base));
            continue;
        }
        let hom = g.hom(base, p).into_iter().filter(|&a| sub.contains(a));
        let pick = match rule {
            TransversalRule::Smallest => hom.min(),
            TransversalRule::Largest => hom.max(),
        };
        match pick {
            Some(a) => tau.push(a),
            None => return Err(Error::NotConnected(format!("no arrow {base} → {p} in the subgroupoid"))),
        }
    }
    Ok(Transversal { base, tau })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroupoid {
        FiniteGroupoid::group(2, |a, b| a ^ b)
    }

    #[test]
    fn pair_groupoid_is_valid_and_connected() {
        let g = FiniteGroupoid::pair(3);
        assert!(g.validate().is_valid());
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2]]);
        assert_eq!(g.vertex_group(1).0.n_arrows(), 1);
        assert_eq!(g.inverse(1), 3);
    }

    #[test]
    fn disjoint_union_has_two_components() {
        let g = c2().disjoint_union(&FiniteGroupoid::pair(2));
        assert!(g.validate().is_valid());
        assert_eq!(g.connected_components(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn subgroupoids_of_klein_group() {
        let k4 = c2().product(&c2());
        assert!(k4.validate().is_valid());
        // Trivial, three of order two, whole group.
        let subs = k4.wide_subgroupoids();
        assert_eq!(subs.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![1, 2, 2, 2, 4]);
        for s in &subs {
            assert!(s.validate_wide(&k4).is_valid());
        }
    }

    #[test]
    fn spec_round_trip() {
        let g = FiniteGroupoid::pair(2).product(&c2());
        let back = FiniteGroupoid::from_spec(&g.to_spec()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn transversal_rules() {
        let g = FiniteGroupoid::pair(2).product(&c2());
        let all = Subgroupoid::whole(&g);
        let s = choose_transversal(&g, &all, 0, TransversalRule::Smallest).unwrap();
        let l = choose_transversal(&g, &all, 0, TransversalRule::Largest).unwrap();
        assert_eq!(s.tau[0], g.identity(0));
        assert_ne!(s.tau[1], l.tau[1]);
        let ids = Subgroupoid::identities(&g);
        assert!(choose_transversal(&g, &ids, 0, TransversalRule::Smallest).is_err());
    }
}
