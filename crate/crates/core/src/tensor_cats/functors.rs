//! The equivalences between the three categories.
//!
//! * `Φ(W) = kV ⊗ W` and `Ψ(M) = ^V M` relate `H`-graded modules with
//!   bimodules over the diagonal groupoid `D`, using the Kac cocycle.
//! * `F` (restriction to a vertex group) and `G` (spreading along a
//!   transversal) relate bimodules over a connected `D` with bimodules over
//!   the vertex group `D(O)`.
//!
//! Every map comes with its stated inverse so that round trips can be
//! checked numerically.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::bimodule::{complement, BimoduleCategory, Tensor};
use super::rep::RepCategory;
use crate::cohomology::{kac_cocycle, transport, transport_on, Cochain};
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Subgroupoid, Transversal};
use crate::matched_pair::Diagonal;
use crate::report::ValidationReport;
use crate::twisted::{max_abs, Mat, Morphism, ProjRep};

/// An element of the groupoid algebra `kV`, keyed by arrow id.
pub type Element = BTreeMap<usize, Rational64>;

fn mul_elements(d: &FiniteGroupoid, a: &Element, b: &Element) -> Element {
    let mut out = Element::new();
    for (&x, &p) in a {
        for (&y, &q) in b {
            if let Some(z) = d.compose(x, y) {
                *out.entry(z).or_insert_with(Rational64::zero) += p * q;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn basis(a: usize) -> Element {
    Element::from([(a, Rational64::one())])
}

/// `Λ_P = θ⁻¹ Σ_{𝔰(g)=P} g`, `Λ̃_P = θ⁻¹ Σ_{𝔢(g)=P} g` and `Λ = Σ_P Λ_P`
/// in `kV`, where `θ(P)` counts the arrows of `V` leaving `P`.
#[derive(Clone, Debug)]
pub struct Symmetrizer {
    pub theta: Vec<i64>,
    pub lambda_p: Vec<Element>,
    pub lambda_tilde_p: Vec<Element>,
    pub lambda: Element,
}

impl Symmetrizer {
    pub fn new(d: &FiniteGroupoid, v: &Subgroupoid) -> Self {
        let np = d.n_objects();
        let theta: Vec<i64> = (0..np)
            .map(|p| v.arrows.iter().filter(|&&g| d.src(g) == p).count() as i64)
            .collect();
        let sum = |f: &dyn Fn(usize) -> bool, p: usize| -> Element {
            v.arrows
                .iter()
                .filter(|&&g| f(g))
                .map(|&g| (g, Rational64::new(1, theta[p])))
                .collect()
        };
        let lambda_p: Vec<Element> = (0..np).map(|p| sum(&|g| d.src(g) == p, p)).collect();
        let lambda_tilde_p: Vec<Element> = (0..np).map(|p| sum(&|g| d.tgt(g) == p, p)).collect();
        let mut lambda = Element::new();
        for l in &lambda_p {
            lambda.extend(l.iter().map(|(&k, &c)| (k, c)));
        }
        Symmetrizer {
            theta,
            lambda_p,
            lambda_tilde_p,
            lambda,
        }
    }

    /// The identities of the integral, checked exactly in `kV`.
    pub fn identities_report(&self, d: &FiniteGroupoid, v: &Subgroupoid) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let zero = Element::new();
        for &h in &v.arrows {
            let bh = basis(h);
            for p in 0..d.n_objects() {
                let want = if d.tgt(h) == p { &self.lambda_p[d.src(h)] } else { &zero };
                if &mul_elements(d, &bh, &self.lambda_p[p]) != want {
                    rep.push("hΛ_P", format!("h={h}, P={p}"));
                }
                let want = if d.src(h) == p { &self.lambda_tilde_p[d.tgt(h)] } else { &zero };
                if &mul_elements(d, &self.lambda_tilde_p[p], &bh) != want {
                    rep.push("Λ̃_P h", format!("h={h}, P={p}"));
                }
            }
            let lhs = mul_elements(d, &bh, &self.lambda);
            if lhs != mul_elements(d, &basis(d.identity(d.src(h))), &self.lambda) {
                rep.push("hΛ", format!("h={h}"));
            }
            let lhs = mul_elements(d, &self.lambda, &bh);
            if lhs != mul_elements(d, &self.lambda, &basis(d.identity(d.tgt(h)))) {
                rep.push("Λh", format!("h={h}"));
            }
        }
        if mul_elements(d, &self.lambda, &self.lambda) != self.lambda {
            rep.push("idempotent", "Λ² ≠ Λ");
        }
        rep.finish()
    }
}

/// Offsets of the graded pieces of a bimodule in `⊕_α M_α`.
fn offsets(dims: &[usize]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(dims.len());
    let mut total = 0;
    for &d in dims {
        off.push(total);
        total += d;
    }
    (off, total)
}

/// `Ψ(M)` together with, for every `x ∈ H`, an isometry `basis[x]` from
/// `Ψ(M)_x` into `⊕_{p(α)=x} M_α` (in the order of `pieces[x]`).
#[derive(Clone, Debug)]
pub struct Invariants {
    pub module: ProjRep,
    pub pieces: Vec<Vec<(usize, usize)>>,
    pub basis: Vec<Mat>,
}

impl Invariants {
    fn local(&self, x: usize, alpha: usize) -> usize {
        self.pieces[x].iter().find(|p| p.0 == alpha).expect("piece of this grade").1
    }
}

/// Φ and Ψ between the right-module category of a matched pair and the
/// bimodule category `C(D, ω, V)` with `ω` the Kac cocycle.
#[derive(Clone, Debug)]
pub struct KacEquivalence {
    pub rep: RepCategory,
    pub bim: BimoduleCategory,
    pub diag: Diagonal,
    pub sym: Symmetrizer,
}

impl KacEquivalence {
    pub fn new(rep: RepCategory, seed: u64) -> Result<Self> {
        if rep.side != super::rep::ModuleSide::Right {
            return Err(Error::IncompatibleData("Φ and Ψ are defined on right modules".into()));
        }
        let diag = Diagonal::new(&rep.mp);
        let omega = kac_cocycle(&rep.mp, &rep.boxes, &diag, &rep.pair);
        let v = diag.vertical_part(&rep.mp);
        let bim = BimoduleCategory::new(&diag.groupoid, &v, &omega, &Cochain::zero(2), seed)?;
        let sym = Symmetrizer::new(&diag.groupoid, &v);
        Ok(KacEquivalence { rep, bim, diag, sym })
    }

    fn h_of(&self, alpha: usize) -> usize {
        self.diag.pairs[alpha].1
    }

    fn v_of(&self, alpha: usize) -> usize {
        self.diag.pairs[alpha].0
    }

    /// The diagonal arrow `(g, id)` of `g ∈ V`.
    fn hat(&self, g: usize) -> usize {
        let h = self.rep.mp.horizontal();
        self.diag.id(g, h.identity(self.rep.mp.vertical().tgt(g)))
    }

    /// `Φ(W) = kV ⊗ W` with `g⇀(h⊗w) = gh⊗w` and
    /// `(h⊗w)↼g = h(|w|▷g) ⊗ w↼g`, graded by `(h, |w|)`.
    pub fn phi(&self, w: &ProjRep) -> ProjRep {
        let bx = &self.rep.boxes;
        let dims: Vec<usize> = (0..self.diag.pairs.len()).map(|a| w.dims[self.h_of(a)]).collect();
        let d2 = dims.clone();
        self.bim.from_actions(
            dims,
            move |_, al| Mat::identity(d2[al], d2[al]),
            |al, g| w.mats[bx.id_of(self.h_of(al), self.v_of(g))].clone(),
        )
    }

    /// `Φ(f)` for a morphism of graded modules.
    pub fn phi_morphism(&self, f: &Morphism) -> Morphism {
        Morphism {
            blocks: (0..self.diag.pairs.len()).map(|a| f.blocks[self.h_of(a)].clone()).collect(),
        }
    }

    /// `g⇀` on `⊕_α M_α` for `g ∈ V`.
    fn left_total(&self, m: &ProjRep, g: usize, off: &[usize], total: usize) -> Mat {
        let d = &self.bim.d;
        let mut out = Mat::zeros(total, total);
        for al in d.arrows_from(d.tgt(g)) {
            let blk = self.bim.left(m, g, al);
            if !blk.is_empty() {
                out.view_mut((off[d.mul(g, al)], off[al]), blk.shape()).copy_from(blk);
            }
        }
        out
    }

    /// `Λ⇀` on `⊕_α M_α`.
    pub fn lambda_total(&self, m: &ProjRep) -> Mat {
        let (off, total) = offsets(&m.dims);
        let mut out = Mat::zeros(total, total);
        for (&g, c) in &self.sym.lambda {
            let c = *c.numer() as f64 / *c.denom() as f64;
            out += self.left_total(m, g, &off, total) * Complex64::new(c, 0.0);
        }
        out
    }

    /// `^V M`: vectors with `g⇀m = id_{𝔰(g)}⇀m` for all `g ∈ V`, split by
    /// `p(|m|)` and carrying the restricted right action.
    pub fn psi(&self, m: &ProjRep) -> Result<Invariants> {
        let d = &self.bim.d;
        let nx = self.rep.mp.horizontal().n_arrows();
        let mut pieces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nx];
        let mut sizes = vec![0; nx];
        for al in 0..d.n_arrows() {
            let x = self.h_of(al);
            pieces[x].push((al, sizes[x]));
            sizes[x] += m.dims[al];
        }
        let local = |x: usize, al: usize| pieces[x].iter().find(|p| p.0 == al).expect("piece").1;
        let one = Complex64::new(1.0, 0.0);
        let mut basis = Vec::with_capacity(nx);
        for x in 0..nx {
            let n = sizes[x];
            let mut gram = Mat::zeros(n, n);
            for &g in &self.bim.v.arrows {
                // g⇀ − id_{𝔰(g)}⇀ on the pieces of grade x.
                let mut c = Mat::zeros(n, n);
                for &(al, off) in &pieces[x] {
                    if m.dims[al] == 0 {
                        continue;
                    }
                    if d.src(al) == d.tgt(g) {
                        let blk = self.bim.left(m, g, al);
                        let mut view = c.view_mut((local(x, d.mul(g, al)), off), blk.shape());
                        view += blk;
                    }
                    if d.src(al) == d.src(g) {
                        for i in 0..m.dims[al] {
                            c[(off + i, off + i)] -= one;
                        }
                    }
                }
                gram += c.adjoint() * c;
            }
            basis.push(complement(gram)?);
        }
        let bx = &self.rep.boxes;
        let dims: Vec<usize> = basis.iter().map(|b| b.ncols()).collect();
        let module = ProjRep::from_fn(&self.rep.tg.groupoid, dims, |a| {
            let (x, k) = (bx.top(a), self.hat(bx.right(a)));
            let y = bx.bottom[a];
            let mut r = Mat::zeros(sizes[y], sizes[x]);
            for &(al, off) in &pieces[x] {
                if m.dims[al] > 0 {
                    let blk = self.bim.right(m, al, k);
                    r.view_mut((local(y, d.mul(al, k)), off), blk.shape()).copy_from(blk);
                }
            }
            basis[y].adjoint() * r * &basis[x]
        });
        Ok(Invariants { module, pieces, basis })
    }

    /// Checks `Λ⇀M = ^V M`: `Λ` fixes invariant vectors, lands in them,
    /// and has rank `dim ^V M`.
    pub fn symmetrizer_report(&self, m: &ProjRep) -> Result<ValidationReport> {
        let mut rep = ValidationReport::new();
        let inv = self.psi(m)?;
        let lam = self.lambda_total(m);
        let (off, total) = offsets(&m.dims);
        let embed = |x: usize| -> Mat {
            let b = &inv.basis[x];
            let mut e = Mat::zeros(total, b.ncols());
            for &(al, lo) in &inv.pieces[x] {
                if m.dims[al] > 0 {
                    e.view_mut((off[al], 0), (m.dims[al], b.ncols())).copy_from(&b.rows(lo, m.dims[al]));
                }
            }
            e
        };
        let mut fixed_dim = 0;
        let mut all = Mat::zeros(total, 0);
        for x in 0..inv.basis.len() {
            let e = embed(x);
            fixed_dim += e.ncols();
            if max_abs(&(&lam * &e - &e)) > 1e-9 {
                rep.push("Λ fixes ^V M", format!("grade x={x}"));
            }
            let mut wide = Mat::zeros(total, all.ncols() + e.ncols());
            wide.columns_mut(0, all.ncols()).copy_from(&all);
            wide.columns_mut(all.ncols(), e.ncols()).copy_from(&e);
            all = wide;
        }
        // Λ⇀M ⊆ ^V M: the projection onto ^V M fixes the image of Λ.
        let proj = &all * all.adjoint();
        if max_abs(&(&proj * &lam - &lam)) > 1e-9 {
            rep.push("Λ⇀M ⊆ ^V M", "image of Λ leaves the invariants");
        }
        let rank = if total == 0 { 0 } else { lam.clone().svd(false, false).rank(1e-9) };
        if rank != fixed_dim {
            rep.push("rank", format!("rank Λ = {rank}, dim ^V M = {fixed_dim}"));
        }
        Ok(rep.finish())
    }

    /// `γ_M: M → Φ(Ψ(M))`, `m ↦ π(|m|) ⊗ Λ⇀m`, and its inverse
    /// `γ̄(g ⊗ Λ⇀m) = gh⁻¹⇀m` for `|m| = (h, x)`.
    pub fn gamma(&self, m: &ProjRep, inv: &Invariants) -> (Morphism, Morphism) {
        let d = &self.bim.d;
        let lam = self.lambda_total(m);
        let (off, _) = offsets(&m.dims);
        let nd = d.n_arrows();
        let mut fwd = Vec::with_capacity(nd);
        let mut back = Vec::with_capacity(nd);
        for al in 0..nd {
            let x = self.h_of(al);
            let b = &inv.basis[x];
            // Rows of Λ⇀ landing in the pieces of grade x, restricted to M_α.
            let mut col = Mat::zeros(b.nrows(), m.dims[al]);
            for &(be, lo) in &inv.pieces[x] {
                if m.dims[be] > 0 && m.dims[al] > 0 {
                    col.view_mut((lo, 0), (m.dims[be], m.dims[al]))
                        .copy_from(&lam.view((off[be], off[al]), (m.dims[be], m.dims[al])));
                }
            }
            fwd.push(b.adjoint() * col);
            let unit = self.diag.id(self.rep.mp.vertical().identity(self.rep.mp.horizontal().src(x)), x);
            let theta = self.sym.theta[d.src(unit)] as f64;
            let lo = inv.local(x, unit);
            let rows = b.rows(lo, m.dims[unit]).into_owned();
            let g = self.hat(self.v_of(al));
            back.push(self.bim.left(m, g, unit) * rows * Complex64::new(theta, 0.0));
        }
        (Morphism { blocks: fwd }, Morphism { blocks: back })
    }

    /// `φ_W: W → Ψ(Φ(W))`, `w ↦ Λ id_{l(|w|)} ⊗ w`, and its inverse,
    /// `θ` times the component at `id ⊗ w`.
    pub fn phi_unit(&self, w: &ProjRep, inv: &Invariants) -> (Morphism, Morphism) {
        let v = self.rep.mp.vertical();
        let h = self.rep.mp.horizontal();
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        for x in 0..h.n_arrows() {
            let b = &inv.basis[x];
            let l = h.src(x);
            let theta = self.sym.theta[l] as f64;
            let mut col = Mat::zeros(b.nrows(), w.dims[x]);
            // Every piece of grade x is some g ⊗ W_x with 𝔢(g) = l(x).
            let e = Mat::identity(w.dims[x], w.dims[x]) * Complex64::new(1.0 / theta, 0.0);
            for &(_, lo) in &inv.pieces[x] {
                col.view_mut((lo, 0), e.shape()).copy_from(&e);
            }
            fwd.push(b.adjoint() * col);
            let unit = self.diag.id(v.identity(l), x);
            let lo = inv.local(x, unit);
            back.push(b.rows(lo, w.dims[x]) * Complex64::new(theta, 0.0));
        }
        (Morphism { blocks: fwd }, Morphism { blocks: back })
    }

    /// `ξ_{W,U}: Φ(W⊗U) → Φ(W)⊗̄Φ(U)`, `h⊗(w⊗u) ↦ (h⊗w)⊗̄(id⊗u)`, and its
    /// inverse. `t` presents `Φ(W)⊗̄Φ(U)`.
    pub fn xi(&self, w: &ProjRep, u: &ProjRep, t: &Tensor) -> (Morphism, Morphism) {
        let d = &self.bim.d;
        let mp = &self.rep.mp;
        let bx = &self.rep.boxes;
        let lay = self.rep.layout(w, u);
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        for gm in 0..d.n_arrows() {
            let (hh, z) = self.diag.pairs[gm];
            let grade = &t.grades[gm];
            let mut e = Mat::zeros(grade.pre_dim, lay.dims[z]);
            for &(x, y, off) in &lay.summands[z] {
                let k = w.dims[x] * u.dims[y];
                if k == 0 {
                    continue;
                }
                let al = self.diag.id(hh, x);
                let (_, be, to) = grade.summands[grade.summands.iter().position(|s| s.0 == al).expect("summand")];
                debug_assert_eq!(self.diag.pairs[be], (mp.vertical().identity(mp.horizontal().tgt(x)), y));
                e.view_mut((to, off), (k, k)).copy_from(&Mat::identity(k, k));
            }
            fwd.push(grade.q.adjoint() * e);
            let mut f = Mat::zeros(lay.dims[z], grade.pre_dim);
            for &(al, be, off) in &grade.summands {
                let ((_, x), (k, y)) = (self.diag.pairs[al], self.diag.pairs[be]);
                if w.dims[x] * u.dims[y] == 0 {
                    continue;
                }
                let bid = bx.id_of(x, k);
                let xk = mp.act_right(x, k);
                let to = lay.summands[z][lay.position(z, xk)].2;
                let unit_y = self.diag.id(mp.vertical().identity(mp.horizontal().src(y)), y);
                let ph = -self.bim.omega.get(&[al, self.hat(k), unit_y]);
                let blk = w.mats[bid].kronecker(&Mat::identity(u.dims[y], u.dims[y])) * ph.to_complex();
                f.view_mut((to, off), blk.shape()).copy_from(&blk);
            }
            back.push(f * &grade.q);
        }
        (Morphism { blocks: fwd }, Morphism { blocks: back })
    }

    /// The associativity isomorphism `(U⊗V)⊗W → U⊗(V⊗W)` of graded modules,
    /// which sends `(u⊗v)⊗w` to `u⊗(v⊗w)`.
    pub fn rep_associator(&self, u: &ProjRep, v: &ProjRep, w: &ProjRep) -> Result<Morphism> {
        let h = self.rep.mp.horizontal();
        let uv = self.rep.tensor(u, v)?;
        let vw = self.rep.tensor(v, w)?;
        let (l_uv, l_uv_w) = (self.rep.layout(u, v), self.rep.layout(&uv, w));
        let (l_vw, l_u_vw) = (self.rep.layout(v, w), self.rep.layout(u, &vw));
        let mut blocks: Vec<Mat> = (0..h.n_arrows()).map(|z| Mat::zeros(l_u_vw.dims[z], l_uv_w.dims[z])).collect();
        for t in h.composable_tuples(3) {
            let (x, y, s) = (t[0], t[1], t[2]);
            let (xy, ys) = (h.mul(x, y), h.mul(y, s));
            let z = h.mul(xy, s);
            let o1 = l_uv_w.summands[z][l_uv_w.position(z, xy)].2;
            let i1 = l_uv.summands[xy][l_uv.position(xy, x)].2;
            let o2 = l_u_vw.summands[z][l_u_vw.position(z, x)].2;
            let i2 = l_vw.summands[ys][l_vw.position(ys, y)].2;
            let (du, dv, dw) = (u.dims[x], v.dims[y], w.dims[s]);
            for i in 0..du {
                for j in 0..dv {
                    for k in 0..dw {
                        let src = o1 + (i1 + i * dv + j) * dw + k;
                        let dst = o2 + i * vw.dims[ys] + i2 + j * dw + k;
                        blocks[z][(dst, src)] = Complex64::new(1.0, 0.0);
                    }
                }
            }
        }
        Ok(Morphism { blocks })
    }

    /// Largest deviation between the two composites
    /// `Φ((U⊗V)⊗W) → ΦU⊗̄(ΦV⊗̄ΦW)` built from `ξ` and the associators.
    pub fn claim_defect(&self, u: &ProjRep, v: &ProjRep, w: &ProjRep) -> Result<f64> {
        let rep = &self.rep;
        let (uv, vw) = (rep.tensor(u, v)?, rep.tensor(v, w)?);
        let (pu, pv, pw) = (self.phi(u), self.phi(v), self.phi(w));
        let b = &self.bim;
        let t_uv = b.tensor_data(&pu, &pv)?;
        let t_vw = b.tensor_data(&pv, &pw)?;
        let t1 = b.tensor_data(&self.phi(&uv), &pw)?;
        let t3 = b.tensor_data(&t_uv.module, &pw)?;
        let t4 = b.tensor_data(&pu, &t_vw.module)?;
        let t5 = b.tensor_data(&pu, &self.phi(&vw))?;
        let id = |m: &ProjRep| Morphism {
            blocks: m.dims.iter().map(|&k| Mat::identity(k, k)).collect(),
        };
        let xi_uv = self.xi(u, v, &t_uv).0;
        let xi_vw = self.xi(v, w, &t_vw).0;
        let lhs = b
            .associator([&pu.dims, &pv.dims, &pw.dims], &t_uv, &t3, &t_vw, &t4)
            .compose(&b.tensor_morphism(&t1, &t3, &xi_uv, &id(&pw)))
            .compose(&self.xi(&uv, w, &t1).0);
        let rhs = b
            .tensor_morphism(&t5, &t4, &id(&pu), &xi_vw)
            .compose(&self.xi(u, &vw, &t5).0)
            .compose(&self.phi_morphism(&self.rep_associator(u, v, w)?));
        Ok(lhs
            .blocks
            .iter()
            .zip(&rhs.blocks)
            .map(|(a, b)| max_abs(&(a - b)))
            .fold(0.0, f64::max))
    }
}

/// `F` and `G` between `C(D, ω̃, V, ψ̃)` and `C(D(O), ω̂, V(O), ψ̂)`, where
/// the tilde data are transported from the vertex group along `t`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub big: BimoduleCategory,
    pub small: BimoduleCategory,
    /// Element `i` of `D(O)` is the arrow `elems[i]` of `D`.
    pub elems: Vec<usize>,
    pub t: Transversal,
    pos: Vec<usize>,
}

impl Restriction {
    /// `omega_hat` and `psi_hat` are cochains on `D(O)` in its own element
    /// numbering, with `ω̂|_{V(O)} = −dψ̂`.
    pub fn new(
        d: &FiniteGroupoid,
        v: &Subgroupoid,
        t: &Transversal,
        omega_hat: &Cochain,
        psi_hat: &Cochain,
        seed: u64,
    ) -> Result<Self> {
        if !d.is_connected() {
            return Err(Error::NotConnected("restriction needs a connected groupoid".into()));
        }
        let (grp, elems) = d.vertex_group(t.base);
        let vo = Subgroupoid::new((0..elems.len()).filter(|&i| v.contains(elems[i])).collect());
        let small = BimoduleCategory::new(&grp, &vo, omega_hat, psi_hat, seed)?;
        let omega_tilde = transport(d, &omega_hat.relabel(&elems), t);
        let psi_tilde = transport_on(d, v, &psi_hat.relabel(&elems), t);
        let big = BimoduleCategory::new(d, v, &omega_tilde, &psi_tilde, seed)?;
        let mut pos = vec![usize::MAX; d.n_arrows()];
        for (i, &a) in elems.iter().enumerate() {
            pos[a] = i;
        }
        Ok(Restriction {
            big,
            small,
            elems,
            t: t.clone(),
            pos,
        })
    }

    /// `τ_P α τ_Q⁻¹` as an element of `D(O)`.
    fn conj(&self, a: usize) -> usize {
        let d = &self.big.d;
        let tau = &self.t.tau;
        self.pos[d.mul(d.mul(tau[d.src(a)], a), d.inverse(tau[d.tgt(a)]))]
    }

    /// `F(M) = ⊕_{z ∈ D(O)} M_z`.
    pub fn functor_f(&self, m: &ProjRep) -> ProjRep {
        let e = &self.elems;
        let dims: Vec<usize> = e.iter().map(|&a| m.dims[a]).collect();
        ProjRep::from_fn(&self.small.gamma.groupoid, dims, |a| {
            let [g, z, h] = self.small.arrows[a];
            m.mats[self.big.arrow(e[g], e[z], e[h])].clone()
        })
    }

    /// `G(W) = ⊕ τ_P⁻¹ ⊗ W ⊗ τ_Q`, graded by `τ_P⁻¹ z τ_Q`.
    pub fn functor_g(&self, w: &ProjRep) -> ProjRep {
        let d = &self.big.d;
        let dims: Vec<usize> = (0..d.n_arrows()).map(|a| w.dims[self.conj(a)]).collect();
        self.big.from_actions(
            dims,
            |g, al| self.small.left(w, self.conj(g), self.conj(al)).clone(),
            |al, h| self.small.right(w, self.conj(al), self.conj(h)).clone(),
        )
    }

    /// `G(F(M)) → M`, `τ_P⁻¹⊗m⊗τ_Q ↦ (τ_P⁻¹⇀m)↼τ_Q`, and the map back,
    /// `m ↦ (τ_P⇀m)↼τ_Q⁻¹`.
    pub fn counit(&self, m: &ProjRep) -> (Morphism, Morphism) {
        let d = &self.big.d;
        let tau = &self.t.tau;
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        for al in 0..d.n_arrows() {
            let (p, q) = (d.src(al), d.tgt(al));
            let z = self.elems[self.conj(al)];
            fwd.push(m.mats[self.big.arrow(d.inverse(tau[p]), z, tau[q])].clone());
            back.push(m.mats[self.big.arrow(tau[p], al, d.inverse(tau[q]))].clone());
        }
        (Morphism { blocks: fwd }, Morphism { blocks: back })
    }

    /// `ζ: G(U)⊗̄G(W) → G(U⊗̄W)` induced by
    /// `(τ_P⁻¹⊗u⊗τ_Q)⊗(τ_Q⁻¹⊗w⊗τ_S) ↦ τ_P⁻¹⊗(u⊗w)⊗τ_S`, and its inverse
    /// `ξ`, which inserts `τ_O = id`. `big_t` presents `G(U)⊗̄G(W)` and
    /// `small_t` presents `U⊗̄W`.
    pub fn zeta(&self, big_t: &Tensor, small_t: &Tensor) -> (Morphism, Morphism) {
        let d = &self.big.d;
        let tau = &self.t.tau;
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        for gm in 0..d.n_arrows() {
            let bg = &big_t.grades[gm];
            let sg = &small_t.grades[self.conj(gm)];
            let mut f = Mat::zeros(sg.pre_dim, bg.pre_dim);
            for &(al, be, off) in &bg.summands {
                let (za, zb) = (self.conj(al), self.conj(be));
                let s = sg.summands.iter().find(|s| s.0 == za && s.1 == zb).expect("summand");
                let k = small_t.size(za, zb);
                if k > 0 {
                    f.view_mut((s.2, off), (k, k)).copy_from(&Mat::identity(k, k));
                }
            }
            fwd.push(sg.q.adjoint() * &f * &bg.q);
            let mut f = Mat::zeros(bg.pre_dim, sg.pre_dim);
            for &(za, zb, off) in &sg.summands {
                let al = d.mul(d.inverse(tau[d.src(gm)]), self.elems[za]);
                let be = d.mul(self.elems[zb], tau[d.tgt(gm)]);
                let s = bg.summands.iter().find(|s| s.0 == al && s.1 == be).expect("summand");
                let k = small_t.size(za, zb);
                if k > 0 {
                    f.view_mut((s.2, off), (k, k)).copy_from(&Mat::identity(k, k));
                }
            }
            back.push(bg.q.adjoint() * f * &sg.q);
        }
        (Morphism { blocks: fwd }, Morphism { blocks: back })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{Mu2OpextSpace, OpextPair};
    use crate::fixtures;
    use crate::groupoid::TransversalRule;
    use crate::matched_pair::Boxes;
    use crate::tensor_cats::fusion::fusion_ring_isomorphic;
    use crate::tensor_cats::rep::ModuleSide;

    const TOL: f64 = 1e-9;

    fn pairs(f: &fixtures::Fixture) -> Vec<OpextPair> {
        Mu2OpextSpace::new(&f.mp, &Boxes::new(&f.mp)).class_representatives()
    }

    fn equivalence(f: &fixtures::Fixture, p: &OpextPair) -> KacEquivalence {
        let rep = RepCategory::new(&f.mp, p, ModuleSide::Right, 5).unwrap();
        KacEquivalence::new(rep, 5).unwrap()
    }

    fn identity(m: &ProjRep) -> Morphism {
        Morphism {
            blocks: m.dims.iter().map(|&k| Mat::identity(k, k)).collect(),
        }
    }

    #[test]
    fn symmetrizer_identities() {
        for f in fixtures::all() {
            let e = equivalence(&f, &OpextPair::trivial());
            assert!(e.sym.identities_report(&e.bim.d, &e.bim.v).is_valid(), "{}", f.name);
        }
        let d = FiniteGroupoid::pair(3).product(&crate::groups::cyclic(2));
        let v = Subgroupoid::whole(&d);
        assert!(Symmetrizer::new(&d, &v).identities_report(&d, &v).is_valid());
    }

    #[test]
    fn phi_and_psi_round_trips() {
        for f in fixtures::all() {
            for p in pairs(&f) {
                let e = equivalence(&f, &p);
                let (g, b) = (&e.rep.tg.groupoid, &e.bim.gamma.groupoid);
                for m in e.bim.simples() {
                    assert!(e.symmetrizer_report(&m).unwrap().is_valid(), "{}", f.name);
                    let inv = e.psi(&m).unwrap();
                    assert!(inv.module.defect(&e.rep.tg) < TOL, "{}", f.name);
                    let back = e.phi(&inv.module);
                    let (gm, gbar) = e.gamma(&m, &inv);
                    assert!(gm.intertwining_defect(b, &m, &back) < TOL, "{}", f.name);
                    assert!(gbar.compose(&gm).identity_defect() < TOL, "{}", f.name);
                    assert!(gm.compose(&gbar).identity_defect() < TOL, "{}", f.name);
                }
                for w in e.rep.simples() {
                    let pw = e.phi(&w);
                    assert!(e.bim.sw_report(&pw).is_valid(), "{}", f.name);
                    assert!(e.symmetrizer_report(&pw).unwrap().is_valid(), "{}", f.name);
                    let inv = e.psi(&pw).unwrap();
                    let (fw, fbar) = e.phi_unit(&w, &inv);
                    assert!(fw.intertwining_defect(g, &w, &inv.module) < TOL, "{}", f.name);
                    assert!(fbar.compose(&fw).identity_defect() < TOL, "{}", f.name);
                    assert!(fw.compose(&fbar).identity_defect() < TOL, "{}", f.name);
                }
            }
        }
    }

    #[test]
    fn phi_sends_unit_to_unit() {
        for f in fixtures::all() {
            let e = equivalence(&f, &OpextPair::trivial());
            let (pu, u) = (e.phi(&e.rep.unit()), e.bim.unit());
            assert_eq!(pu.dims, u.dims);
            assert!(identity(&u).intertwining_defect(&e.bim.gamma.groupoid, &pu, &u) < TOL);
        }
    }

    #[test]
    fn monoidal_structure_of_phi() {
        for f in fixtures::all() {
            for p in pairs(&f).into_iter().take(4) {
                let e = equivalence(&f, &p);
                let s = e.rep.simples();
                for w in &s {
                    for u in &s {
                        let t = e.bim.tensor_data(&e.phi(w), &e.phi(u)).unwrap();
                        let (x, xbar) = e.xi(w, u, &t);
                        let src = e.phi(&e.rep.tensor(w, u).unwrap());
                        assert!(x.intertwining_defect(&e.bim.gamma.groupoid, &src, &t.module) < TOL, "{}", f.name);
                        assert!(xbar.compose(&x).identity_defect() < TOL, "{}", f.name);
                        assert!(x.compose(&xbar).identity_defect() < TOL, "{}", f.name);
                    }
                }
                for a in s.iter().take(3) {
                    for b in s.iter().take(3) {
                        for c in s.iter().take(3) {
                            let assoc = e.rep_associator(a, b, c).unwrap();
                            let (ab_c, a_bc) = (
                                e.rep.tensor(&e.rep.tensor(a, b).unwrap(), c).unwrap(),
                                e.rep.tensor(a, &e.rep.tensor(b, c).unwrap()).unwrap(),
                            );
                            assert!(assoc.intertwining_defect(&e.rep.tg.groupoid, &ab_c, &a_bc) < TOL);
                            assert!(e.claim_defect(a, b, c).unwrap() < TOL, "{}", f.name);
                        }
                    }
                }
            }
        }
    }

    fn restriction(f: &fixtures::Fixture, rule: TransversalRule) -> Restriction {
        let diag = Diagonal::new(&f.mp);
        let d = &diag.groupoid;
        let v = diag.vertical_part(&f.mp);
        let t = crate::groupoid::choose_transversal(d, &v, 0, rule).unwrap();
        Restriction::new(d, &v, &t, &Cochain::zero(3), &Cochain::zero(2), 9).unwrap()
    }

    #[test]
    fn restriction_round_trips() {
        for f in [fixtures::ex_gpd6(), fixtures::ex_s3(), fixtures::ex_pair2()] {
            for rule in [TransversalRule::Smallest, TransversalRule::Largest] {
                let r = restriction(&f, rule);
                let (bg, sg) = (&r.big.gamma.groupoid, &r.small.gamma.groupoid);
                let fu = r.functor_f(&r.big.unit());
                assert_eq!(fu.dims, r.small.unit().dims);
                assert!(identity(&fu).intertwining_defect(sg, &fu, &r.small.unit()) < TOL);
                for w in r.small.simples() {
                    let gw = r.functor_g(&w);
                    assert!(r.big.sw_report(&gw).is_valid(), "{}", f.name);
                    let fgw = r.functor_f(&gw);
                    assert!(identity(&w).intertwining_defect(sg, &fgw, &w) < TOL, "{}", f.name);
                }
                for m in r.big.simples() {
                    let gfm = r.functor_g(&r.functor_f(&m));
                    let (to_m, from_m) = r.counit(&m);
                    assert!(to_m.intertwining_defect(bg, &gfm, &m) < TOL, "{}", f.name);
                    assert!(to_m.compose(&from_m).identity_defect() < TOL, "{}", f.name);
                    assert!(from_m.compose(&to_m).identity_defect() < TOL, "{}", f.name);
                }
                let s = r.small.simples();
                for u in &s {
                    for w in &s {
                        let big_t = r.big.tensor_data(&r.functor_g(u), &r.functor_g(w)).unwrap();
                        let small_t = r.small.tensor_data(u, w).unwrap();
                        let target = r.functor_g(&small_t.module);
                        let (z, x) = r.zeta(&big_t, &small_t);
                        assert!(z.intertwining_defect(bg, &big_t.module, &target) < TOL, "{}", f.name);
                        assert!(x.compose(&z).identity_defect() < TOL, "{}", f.name);
                        assert!(z.compose(&x).identity_defect() < TOL, "{}", f.name);
                    }
                }
                let (a, b) = (r.big.fusion_ring().unwrap(), r.small.fusion_ring().unwrap());
                assert!(fusion_ring_isomorphic(&a, &b).is_some(), "{}", f.name);
            }
        }
    }
}
