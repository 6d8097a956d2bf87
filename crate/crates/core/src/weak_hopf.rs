//! The weak Hopf algebra `k^σ_τ T` spanned by the boxes of a matched pair.
//!
//! * product: `A·B = σ(A,B)·(A over B)` when `bottom(A) = top(B)`, else 0;
//! * coproduct: `Δ(A) = Σ_{A = BC} τ(B,C)·B ⊗ C` over horizontal factorizations;
//! * counit: `ε(A) = 1` iff `top(A)` is an identity;
//! * unit: `1 = Σ_x (x, id)`;
//! * antipode: `S(A) = τ(A, A^h)⁻¹ σ(A⁻¹, A^h)⁻¹ · A⁻¹` with `A^h` the
//!   horizontal inverse and `A⁻¹` the rotation by 180°.
//!
//! The algebra is generic over the coefficient model, so the same code
//! checks one concrete pair or a whole F₂-space of μ₂ pairs at once.

use std::collections::HashMap;

use bitvec::prelude::*;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{Character, CharacterPhases, CyclicPhases, PhaseGroup};
use crate::cohomology::{check_opext_pair, Mu2OpextSpace, OpextPair};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::matched_pair::{Boxes, MatchedPair};
use crate::report::ValidationReport;

/// One term `c·ζ·b` of an element, with `b` a box id.
pub type Term<E> = (E, i64, usize);

/// Tensor keys of up to three box ids; unused slots hold `u32::MAX`.
type Key = [u32; 3];

const PAD: u32 = u32::MAX;

fn k1(a: usize) -> Key {
    [a as u32, PAD, PAD]
}

fn k2(a: usize, b: usize) -> Key {
    [a as u32, b as u32, PAD]
}

fn k3(a: usize, b: usize, c: usize) -> Key {
    [a as u32, b as u32, c as u32]
}

/// Signed sum of tensor terms, grouped by key for the zero test.
struct Balance<E> {
    terms: HashMap<Key, Vec<(E, i64)>>,
}

impl<E: Copy + Eq + std::hash::Hash> Balance<E> {
    fn new() -> Self {
        Balance { terms: HashMap::new() }
    }

    fn add(&mut self, key: Key, e: E, c: i64) {
        self.terms.entry(key).or_default().push((e, c));
    }

    /// First key whose coefficient does not vanish, in key order.
    fn first_nonzero<G: PhaseGroup<Elem = E>>(&self, g: &G) -> Option<Key> {
        let mut bad: Vec<Key> = self
            .terms
            .iter()
            .filter(|(_, t)| !g.sum_is_zero(t))
            .map(|(&k, _)| k)
            .collect();
        bad.sort();
        bad.first().copied()
    }
}

#[derive(Clone, Debug)]
pub struct WeakHopfAlgebra<G: PhaseGroup> {
    pub group: G,
    pub boxes: Boxes,
    n: usize,
    sigma: Vec<G::Elem>,
    tau: Vec<G::Elem>,
    /// For each box `A`, the pairs `(B, C)` with `A = B·C` horizontally.
    splits: Vec<Vec<(usize, usize)>>,
    is_unit_box: Vec<bool>,
    counit: Vec<bool>,
}

impl<G: PhaseGroup> WeakHopfAlgebra<G> {
    /// Builds the algebra from phase tables on vertically and horizontally
    /// composable box pairs. Entries for other pairs are ignored.
    pub fn from_tables(
        group: G,
        boxes: Boxes,
        sigma: impl Fn(usize, usize) -> G::Elem,
        tau: impl Fn(usize, usize) -> G::Elem,
    ) -> Self {
        let n = boxes.len();
        let zero = group.zero();
        let mut s = vec![zero; n * n];
        let mut t = vec![zero; n * n];
        let mut splits = vec![Vec::new(); n];
        for (a, b) in boxes.vertical.composable_pairs() {
            s[a * n + b] = sigma(a, b);
        }
        for (a, b) in boxes.horizontal.composable_pairs() {
            t[a * n + b] = tau(a, b);
            splits[boxes.horizontal.mul(a, b)].push((a, b));
        }
        let is_unit_box = (0..n).map(|a| boxes.vertical.is_identity(a)).collect();
        let counit = (0..n).map(|a| boxes.horizontal.is_identity(a)).collect();
        WeakHopfAlgebra {
            group,
            boxes,
            n,
            sigma: s,
            tau: t,
            splits,
            is_unit_box,
            counit,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, a: usize, b: usize) -> G::Elem {
        self.sigma[a * self.n + b]
    }

    pub fn tau(&self, a: usize, b: usize) -> G::Elem {
        self.tau[a * self.n + b]
    }

    /// `A·B` on basis elements.
    pub fn mul_basis(&self, a: usize, b: usize) -> Option<(G::Elem, usize)> {
        self.boxes
            .vertical
            .compose(a, b)
            .map(|ab| (self.sigma(a, b), ab))
    }

    /// `Δ(A)` as `(τ(B,C), B, C)` triples.
    pub fn comul_basis(&self, a: usize) -> impl Iterator<Item = (G::Elem, usize, usize)> + '_ {
        self.splits[a].iter().map(move |&(b, c)| (self.tau(b, c), b, c))
    }

    pub fn counit_basis(&self, a: usize) -> bool {
        self.counit[a]
    }

    /// `S(A)` as a phase times a box.
    pub fn antipode_basis(&self, a: usize) -> (G::Elem, usize) {
        let bx = &self.boxes;
        let ah = bx.horizontal.inverse(a);
        let inv = bx.vertical.inverse(ah);
        let g = &self.group;
        let phase = g.neg(g.add(self.tau(a, ah), self.sigma(inv, ah)));
        (phase, inv)
    }

    pub fn unit(&self) -> Vec<Term<G::Elem>> {
        let z = self.group.zero();
        (0..self.n).filter(|&a| self.is_unit_box[a]).map(|a| (z, 1, a)).collect()
    }

    pub fn mul(&self, x: &[Term<G::Elem>], y: &[Term<G::Elem>]) -> Vec<Term<G::Elem>> {
        let g = &self.group;
        let mut out = Vec::new();
        for &(e, c, a) in x {
            for &(f, d, b) in y {
                if let Some((s, ab)) = self.mul_basis(a, b) {
                    out.push((g.add(g.add(e, f), s), c * d, ab));
                }
            }
        }
        out
    }

    fn counit_elem(&self, x: &[Term<G::Elem>]) -> Vec<(G::Elem, i64)> {
        x.iter().filter(|t| self.counit[t.2]).map(|&(e, c, _)| (e, c)).collect()
    }

    /// `Δ(1) = Σ 1₁ ⊗ 1₂`.
    fn comul_unit(&self) -> Vec<(G::Elem, i64, usize, usize)> {
        let mut out = Vec::new();
        for (_, _, a) in self.unit() {
            for (t, b, c) in self.comul_basis(a) {
                out.push((t, 1, b, c));
            }
        }
        out
    }

    /// `ε_t(x) = ε(1₁ x) 1₂`.
    pub fn eps_t(&self, x: &[Term<G::Elem>]) -> Vec<Term<G::Elem>> {
        let mut out = Vec::new();
        for (e, c, u1, u2) in self.comul_unit() {
            let prod = self.mul(&[(e, c, u1)], x);
            for (f, d) in self.counit_elem(&prod) {
                out.push((f, d, u2));
            }
        }
        out
    }

    /// `ε_s(x) = 1₁ ε(x 1₂)`.
    pub fn eps_s(&self, x: &[Term<G::Elem>]) -> Vec<Term<G::Elem>> {
        let mut out = Vec::new();
        for (e, c, u1, u2) in self.comul_unit() {
            let prod = self.mul(x, &[(e, c, u2)]);
            for (f, d) in self.counit_elem(&prod) {
                out.push((f, d, u1));
            }
        }
        out
    }

    fn check(&self, rep: &mut ValidationReport, axiom: &str, what: String, bal: Balance<G::Elem>) {
        if let Some(k) = bal.first_nonzero(&self.group) {
            let shown: Vec<u32> = k.iter().copied().filter(|&x| x != PAD).collect();
            rep.push(axiom, format!("{what}: coefficient of {shown:?} differs"));
        }
    }

    /// Verifies every weak Hopf axiom on basis elements.
    pub fn verify_axioms(&self) -> ValidationReport {
        let n = self.n;
        let mut parts: Vec<ValidationReport> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut rep = ValidationReport::new();
                self.check_single(a, &mut rep);
                for b in 0..n {
                    self.check_pair(a, b, &mut rep);
                    for c in 0..n {
                        self.check_triple(a, b, c, &mut rep);
                    }
                }
                rep
            })
            .collect();
        let mut rep = ValidationReport::new();
        self.check_weak_unit(&mut rep);
        for p in parts.drain(..) {
            rep.merge(p);
        }
        rep.finish()
    }

    fn check_single(&self, a: usize, rep: &mut ValidationReport) {
        let g = &self.group;
        let z = g.zero();
        // Unit: 1·a = a = a·1.
        for left in [true, false] {
            let mut bal = Balance::new();
            let prod = if left {
                self.mul(&self.unit(), &[(z, 1, a)])
            } else {
                self.mul(&[(z, 1, a)], &self.unit())
            };
            for (e, c, b) in prod {
                bal.add(k1(b), e, c);
            }
            bal.add(k1(a), z, -1);
            self.check(rep, "unit", format!("box {a}"), bal);
        }
        // Counit: (ε⊗id)Δ(a) = a = (id⊗ε)Δ(a).
        for side in [0, 1] {
            let mut bal = Balance::new();
            for (t, b, c) in self.comul_basis(a) {
                let (kill, keep) = if side == 0 { (b, c) } else { (c, b) };
                if self.counit[kill] {
                    bal.add(k1(keep), t, 1);
                }
            }
            bal.add(k1(a), z, -1);
            self.check(rep, "counit", format!("box {a}"), bal);
        }
        // Coassociativity.
        let mut bal = Balance::new();
        for (t, b, c) in self.comul_basis(a) {
            for (u, d, e) in self.comul_basis(b) {
                bal.add(k3(d, e, c), g.add(t, u), 1);
            }
            for (u, d, e) in self.comul_basis(c) {
                bal.add(k3(b, d, e), g.add(t, u), -1);
            }
        }
        self.check(rep, "coassociativity", format!("box {a}"), bal);
        // Antipode: a₁S(a₂) = ε_t(a), S(a₁)a₂ = ε_s(a), S(a₁)a₂S(a₃) = S(a).
        let mut right = Balance::new();
        let mut left = Balance::new();
        for (t, b, c) in self.comul_basis(a) {
            let (s, sc) = self.antipode_basis(c);
            if let Some((m, bc)) = self.mul_basis(b, sc) {
                right.add(k1(bc), g.add(g.add(t, s), m), 1);
            }
            let (s, sb) = self.antipode_basis(b);
            if let Some((m, bc)) = self.mul_basis(sb, c) {
                left.add(k1(bc), g.add(g.add(t, s), m), 1);
            }
        }
        for (e, c, b) in self.eps_t(&[(z, 1, a)]) {
            right.add(k1(b), e, -c);
        }
        for (e, c, b) in self.eps_s(&[(z, 1, a)]) {
            left.add(k1(b), e, -c);
        }
        self.check(rep, "antipode (target)", format!("box {a}"), right);
        self.check(rep, "antipode (source)", format!("box {a}"), left);
        let mut bal = Balance::new();
        for (t, b, c) in self.comul_basis(a) {
            for (u, d, e) in self.comul_basis(b) {
                let (s1, sd) = self.antipode_basis(d);
                let (s3, sc) = self.antipode_basis(c);
                let Some((m1, x)) = self.mul_basis(sd, e) else { continue };
                let Some((m2, y)) = self.mul_basis(x, sc) else { continue };
                let ph = [t, u, s1, s3, m1, m2].into_iter().fold(z, |acc, p| g.add(acc, p));
                bal.add(k1(y), ph, 1);
            }
        }
        let (s, sa) = self.antipode_basis(a);
        bal.add(k1(sa), s, -1);
        self.check(rep, "antipode (S*id*S)", format!("box {a}"), bal);
    }

    fn check_pair(&self, a: usize, b: usize, rep: &mut ValidationReport) {
        let g = &self.group;
        // Multiplicativity: Δ(ab) = Δ(a)Δ(b).
        let mut bal = Balance::new();
        if let Some((s, ab)) = self.mul_basis(a, b) {
            for (t, c, d) in self.comul_basis(ab) {
                bal.add(k2(c, d), g.add(s, t), 1);
            }
        }
        for (t, a1, a2) in self.comul_basis(a) {
            for (u, b1, b2) in self.comul_basis(b) {
                let (Some((s1, x)), Some((s2, y))) = (self.mul_basis(a1, b1), self.mul_basis(a2, b2)) else {
                    continue;
                };
                let ph = g.add(g.add(t, u), g.add(s1, s2));
                bal.add(k2(x, y), ph, -1);
            }
        }
        self.check(rep, "multiplicativity", format!("boxes ({a},{b})"), bal);
    }

    fn check_triple(&self, a: usize, b: usize, c: usize, rep: &mut ValidationReport) {
        let g = &self.group;
        // Associativity.
        let mut bal = Balance::new();
        if let Some((s, ab)) = self.mul_basis(a, b) {
            if let Some((t, abc)) = self.mul_basis(ab, c) {
                bal.add(k1(abc), g.add(s, t), 1);
            }
        }
        if let Some((s, bc)) = self.mul_basis(b, c) {
            if let Some((t, abc)) = self.mul_basis(a, bc) {
                bal.add(k1(abc), g.add(s, t), -1);
            }
        }
        self.check(rep, "associativity", format!("boxes ({a},{b},{c})"), bal);
        // Weak counit: ε(abc) = ε(a b₁) ε(b₂ c) = ε(a b₂) ε(b₁ c).
        let mut lhs: Vec<(G::Elem, i64)> = Vec::new();
        if let Some((s, ab)) = self.mul_basis(a, b) {
            if let Some((t, abc)) = self.mul_basis(ab, c) {
                if self.counit[abc] {
                    lhs.push((g.add(s, t), 1));
                }
            }
        }
        for swap in [false, true] {
            let mut bal = Balance::new();
            for &(e, x) in &lhs {
                bal.add([PAD; 3], e, x);
            }
            for (t, b1, b2) in self.comul_basis(b) {
                let (l, r) = if swap { (b2, b1) } else { (b1, b2) };
                let (Some((s1, x)), Some((s2, y))) = (self.mul_basis(a, l), self.mul_basis(r, c)) else {
                    continue;
                };
                if self.counit[x] && self.counit[y] {
                    bal.add([PAD; 3], g.add(t, g.add(s1, s2)), -1);
                }
            }
            let form = if swap { "ε(ab₂)ε(b₁c)" } else { "ε(ab₁)ε(b₂c)" };
            self.check(rep, "weak counit", format!("ε(abc) ≠ {form} at ({a},{b},{c})"), bal);
        }
    }

    fn check_weak_unit(&self, rep: &mut ValidationReport) {
        let g = &self.group;
        let d1 = self.comul_unit();
        let mut lhs = Vec::new();
        for &(e, c, u1, u2) in &d1 {
            for (t, x, y) in self.comul_basis(u1) {
                lhs.push((g.add(e, t), c, x, y, u2));
            }
        }
        // (Δ(1) ⊗ 1)(1 ⊗ Δ(1)) and (1 ⊗ Δ(1))(Δ(1) ⊗ 1).
        let unit = self.unit();
        for order in [0, 1] {
            let mut bal = Balance::new();
            for &(e, c, x, y, z) in &lhs {
                bal.add(k3(x, y, z), e, c);
            }
            for &(e, c, a1, a2) in &d1 {
                for &(f, d, b1, b2) in &d1 {
                    for &(_, _, u) in &unit {
                        for &(_, _, w) in &unit {
                            // First factor a1⊗a2⊗u, second w⊗b1⊗b2.
                            let (p, q) = if order == 0 {
                                ([a1, a2, u], [w, b1, b2])
                            } else {
                                ([w, b1, b2], [a1, a2, u])
                            };
                            let mut ph = g.add(e, f);
                            let mut out = [0usize; 3];
                            let mut ok = true;
                            for i in 0..3 {
                                match self.mul_basis(p[i], q[i]) {
                                    Some((s, r)) => {
                                        ph = g.add(ph, s);
                                        out[i] = r;
                                    }
                                    None => ok = false,
                                }
                            }
                            if ok {
                                bal.add(k3(out[0], out[1], out[2]), ph, -(c * d));
                            }
                        }
                    }
                }
            }
            let form = if order == 0 { "(Δ(1)⊗1)(1⊗Δ(1))" } else { "(1⊗Δ(1))(Δ(1)⊗1)" };
            self.check(rep, "weak unit", format!("Δ²(1) ≠ {form}"), bal);
        }
    }

    /// `_P1 = Σ_{l(x) = P} (x, id)` when `by_source` holds, otherwise
    /// `1_P = Σ_{r(x) = P} (x, id)`.
    pub fn partial_units(&self, mp: &MatchedPair, by_source: bool) -> Vec<Vec<usize>> {
        let h = mp.horizontal();
        let mut out = vec![Vec::new(); mp.n_objects()];
        for a in (0..self.n).filter(|&a| self.is_unit_box[a]) {
            let x = self.boxes.top(a);
            out[if by_source { h.src(x) } else { h.tgt(x) }].push(a);
        }
        out
    }

    /// Exact value of a coefficient list that does not depend on symbolic
    /// parameters.
    fn value(&self, terms: &[(G::Elem, i64)]) -> Result<Cyclo> {
        self.group
            .constant_value(terms)
            .ok_or_else(|| Error::Unsupported("coefficient depends on the Opext pair".into()))
    }

    /// Dense coordinates of an element with constant coefficients.
    fn coordinates(&self, x: &[Term<G::Elem>]) -> Result<Vec<Cyclo>> {
        let mut per: Vec<Vec<(G::Elem, i64)>> = vec![Vec::new(); self.n];
        for &(e, c, b) in x {
            per[b].push((e, c));
        }
        per.iter().map(|t| self.value(t)).collect()
    }

    /// Images of `ε_s` and `ε_t`, with their dimensions, commutativity and
    /// the partial units they are spanned by.
    pub fn counital_subalgebras(&self, mp: &MatchedPair) -> Result<CounitalReport> {
        let f = self.group.field().clone();
        let z = self.group.zero();
        let mut out = CounitalReport::default();
        for (source, name) in [(true, "source"), (false, "target")] {
            let images: Vec<Vec<Term<G::Elem>>> = (0..self.n)
                .map(|a| if source { self.eps_s(&[(z, 1, a)]) } else { self.eps_t(&[(z, 1, a)]) })
                .collect();
            let rows: Vec<Vec<Cyclo>> = images.iter().map(|x| self.coordinates(x)).collect::<Result<_>>()?;
            let dim = f.rank(&rows);
            let mut commutative = true;
            for x in &images {
                for y in &images {
                    let mut bal = Balance::new();
                    for (e, c, b) in self.mul(x, y) {
                        bal.add(k1(b), e, c);
                    }
                    for (e, c, b) in self.mul(y, x) {
                        bal.add(k1(b), e, -c);
                    }
                    if bal.first_nonzero(&self.group).is_some() {
                        commutative = false;
                    }
                }
            }
            // Which family of partial units spans the image.
            let mut spanned_by = Vec::new();
            for (by_l, label) in [(true, "l"), (false, "r")] {
                let units = self.partial_units(mp, by_l);
                let unit_rows: Vec<Vec<Cyclo>> = units
                    .iter()
                    .map(|u| {
                        let t: Vec<Term<G::Elem>> = u.iter().map(|&a| (z, 1, a)).collect();
                        self.coordinates(&t)
                    })
                    .collect::<Result<_>>()?;
                let r_units = f.rank(&unit_rows);
                let mut joint = unit_rows.clone();
                joint.extend(rows.iter().cloned());
                if r_units == dim && f.rank(&joint) == dim {
                    spanned_by.push(label.to_string());
                }
            }
            let sub = CounitalSubalgebra {
                dim,
                commutative,
                spanned_by,
            };
            if name == "source" {
                out.source = sub;
            } else {
                out.target = sub;
            }
        }
        Ok(out)
    }

    /// `Tr(L_c)` for every basis element: the number of boxes `d` with
    /// `c·d` a multiple of `d`, with its phase.
    fn trace_terms(&self, c: usize) -> Vec<(G::Elem, i64)> {
        (0..self.n)
            .filter_map(|d| self.mul_basis(c, d).filter(|&(_, cd)| cd == d).map(|(s, _)| (s, 1)))
            .collect()
    }

    /// Nondegeneracy of the trace form `(a, b) ↦ Tr(L_{ab})`.
    pub fn semisimplicity_check(&self) -> Result<bool> {
        let f = self.group.field().clone();
        let g = &self.group;
        let mut gram: Vec<Vec<Vec<(G::Elem, i64)>>> = vec![vec![Vec::new(); self.n]; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                if let Some((s, ab)) = self.mul_basis(a, b) {
                    gram[a][b] = self.trace_terms(ab).into_iter().map(|(e, c)| (g.add(s, e), c)).collect();
                }
            }
        }
        let nonzero = |t: &Vec<(G::Elem, i64)>| !g.sum_is_zero(t);
        let monomial = (0..self.n).all(|i| {
            (0..self.n).filter(|&j| nonzero(&gram[i][j])).count() == 1
                && (0..self.n).filter(|&j| nonzero(&gram[j][i])).count() == 1
        });
        let single_phase = gram
            .iter()
            .flatten()
            .all(|t| t.len() <= 1 || t.iter().all(|&(e, _)| e == t[0].0));
        if monomial && single_phase {
            // Each nonzero entry is c·ζ with c ≠ 0, hence invertible for
            // every value of the parameters.
            return Ok(true);
        }
        let rows: Vec<Vec<Cyclo>> = gram
            .iter()
            .map(|r| r.iter().map(|t| self.value(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(!f.det(&rows).is_zero())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CounitalSubalgebra {
    pub dim: usize,
    pub commutative: bool,
    /// Which of `"l"` and `"r"`, used to group the vertical identity boxes
    /// into partial units, gives a family spanning the subalgebra.
    pub spanned_by: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CounitalReport {
    pub source: CounitalSubalgebra,
    pub target: CounitalSubalgebra,
}

/// Builds `k^σ_τ T` for a concrete pair, with coefficients in `μ_N` for
/// `N` the order of the pair.
pub fn build_weak_hopf(mp: &MatchedPair, p: &OpextPair) -> Result<WeakHopfAlgebra<CyclicPhases>> {
    let boxes = Boxes::new(mp);
    let rep = check_opext_pair(mp, &boxes, p);
    if !rep.is_valid() {
        return Err(Error::InvalidPair(rep.to_string()));
    }
    let g = CyclicPhases::new(p.order());
    let (gs, gt) = (g.clone(), g.clone());
    Ok(WeakHopfAlgebra::from_tables(
        g,
        boxes,
        |a, b| gs.embed(p.sigma.get(&[a, b])),
        |a, b| gt.embed(p.tau.get(&[a, b])),
    ))
}

/// Builds the algebra whose coefficients are affine functions on the span
/// of `vectors` inside the μ₂ Opext space: evaluating at the point `z`
/// gives the algebra of the pair `Σ z_i·vectors_i`.
pub fn build_symbolic(mp: &MatchedPair, space: &Mu2OpextSpace, vectors: &[BitVec]) -> WeakHopfAlgebra<CharacterPhases> {
    let boxes = Boxes::new(mp);
    let ns = space.sigma_vars.len();
    let mask = |col: usize| -> u64 {
        vectors
            .iter()
            .enumerate()
            .filter(|(_, v)| v[col])
            .fold(0u64, |m, (i, _)| m | 1 << i)
    };
    let s_idx: HashMap<(usize, usize), usize> = space.sigma_vars.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let t_idx: HashMap<(usize, usize), usize> = space.tau_vars.iter().enumerate().map(|(i, &k)| (k, i + ns)).collect();
    let ch = |col: Option<&usize>| Character {
        mask: col.map_or(0, |&c| mask(c)),
        flip: false,
    };
    WeakHopfAlgebra::from_tables(
        CharacterPhases::new(vectors.len()),
        boxes,
        |a, b| ch(s_idx.get(&(a, b))),
        |a, b| ch(t_idx.get(&(a, b))),
    )
}

/// Serialized structure constants, coefficients as power-basis coordinates
/// of `ℚ(ζ_N)`.
#[derive(Clone, Debug, Serialize)]
pub struct WhaExport {
    pub cyclotomic_order: u64,
    pub boxes: Vec<[usize; 4]>,
    pub unit: Vec<usize>,
    pub counit: Vec<usize>,
    pub mult: Vec<(usize, usize, usize, Vec<String>)>,
    pub comult: Vec<(usize, usize, usize, Vec<String>)>,
    pub antipode: Vec<(usize, usize, Vec<String>)>,
}

impl WeakHopfAlgebra<CyclicPhases> {
    pub fn export(&self) -> WhaExport {
        let f = self.group.field();
        let coords = |k: u32| f.root(k as u64).to_strings();
        let bx = &self.boxes;
        WhaExport {
            cyclotomic_order: self.group.order(),
            boxes: (0..self.n)
                .map(|a| [bx.top(a), bx.right(a), bx.left[a], bx.bottom[a]])
                .collect(),
            unit: (0..self.n).filter(|&a| self.is_unit_box[a]).collect(),
            counit: (0..self.n).filter(|&a| self.counit[a]).collect(),
            mult: bx
                .vertical
                .composable_pairs()
                .into_iter()
                .map(|(a, b)| (a, b, bx.vertical.mul(a, b), coords(self.sigma(a, b))))
                .collect(),
            comult: (0..self.n)
                .flat_map(|a| self.comul_basis(a).map(move |(t, b, c)| (a, b, c, t)).collect::<Vec<_>>())
                .map(|(a, b, c, t)| (a, b, c, coords(t)))
                .collect(),
            antipode: (0..self.n)
                .map(|a| {
                    let (s, b) = self.antipode_basis(a);
                    (a, b, coords(s))
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_satisfy_axioms_for_every_mu2_pair() {
        let mut all = fixtures::all();
        let d = crate::FiniteGroupoid::pair(2).product(&crate::groups::cyclic(2));
        all.push(fixtures::Fixture::new("swap", d, vec![0, 1, 6, 7], vec![0, 2, 4, 6]).unwrap());
        for f in all {
            let bx = Boxes::new(&f.mp);
            let space = Mu2OpextSpace::new(&f.mp, &bx);
            let wha = build_symbolic(&f.mp, &space, &space.basis);
            let rep = wha.verify_axioms();
            assert!(rep.is_valid(), "{}: {rep}", f.name);
            let c = wha.counital_subalgebras(&f.mp).unwrap();
            for side in [&c.source, &c.target] {
                assert_eq!(side.dim, f.mp.n_objects(), "{}", f.name);
                assert!(side.commutative, "{}", f.name);
            }
            assert!(wha.semisimplicity_check().unwrap());
        }
    }
}
