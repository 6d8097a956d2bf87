//! The category `C(D, ω, V, ψ)` of `k_ψV`-bimodules in ω-twisted
//! `D`-graded vector spaces.
//!
//! A bimodule `M = ⊕_α M_α` carries maps `g⇀: M_α → M_{gα}` and
//! `↼h: M_α → M_{αh}` for `g, h ∈ V`, subject to
//!
//! * `(gh)⇀m = e(ω(g,h,|m|) − ψ(g,h)) g⇀(h⇀m)`,
//! * `(m↼g)↼h = e(ω(|m|,g,h) + ψ(g,h)) m↼(gh)`,
//! * `(g⇀m)↼h = e(ω(g,|m|,h)) g⇀(m↼h)`,
//!
//! where `ω|_V = −dψ`. Such a bimodule is a projective representation of
//! the action groupoid `Γ` with arrows `(g,α,h): α → gαh`, acting by
//! `ρ(g,α,h) = (↼h)(g⇀)`; simple bimodules are its simple modules.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::fusion::FusionRing;
use super::rep::fusion_from_simples;
use crate::cohomology::{coboundary, is_cocycle, Cochain};
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Subgroupoid, NONE};
use crate::phase::Phase;
use crate::report::ValidationReport;
use crate::twisted::{max_abs, Decomposition, Mat, Morphism, ProjRep, TwistedGroupoid};

/// Below this (relative) eigenvalue a Gram direction counts as a relation;
/// above `GAP` it does not. Anything in between is reported as a failure.
const NULL: f64 = 1e-8;
const GAP: f64 = 1e-4;

#[derive(Clone, Debug)]
pub struct BimoduleCategory {
    pub d: FiniteGroupoid,
    pub v: Subgroupoid,
    pub omega: Cochain,
    pub psi: Cochain,
    pub gamma: TwistedGroupoid,
    /// `(g, α, h)` for every arrow of `Γ`.
    pub arrows: Vec<[usize; 3]>,
    index: HashMap<[usize; 3], usize>,
    /// For every grade `γ`, the pairs `(α, β)` with `αβ = γ`.
    pub pairs: Vec<Vec<(usize, usize)>>,
    slot: Vec<u32>,
    pub dec: Decomposition,
}

/// A tensor product `M ⊗̄ N` with its presentation: per grade `γ`, the
/// summands `(α, β, offset)` of `⊕_{αβ=γ} M_α ⊗ N_β` and an orthonormal
/// basis `q` of the complement of the balancing relations.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: ProjRep,
    pub grades: Vec<Grade>,
    pub left_dims: Vec<usize>,
    pub right_dims: Vec<usize>,
}

impl Tensor {
    /// Dimension of the summand `M_α ⊗ N_β`.
    pub fn size(&self, alpha: usize, beta: usize) -> usize {
        self.left_dims[alpha] * self.right_dims[beta]
    }
}

#[derive(Clone, Debug)]
pub struct Grade {
    pub summands: Vec<(usize, usize, usize)>,
    pub pre_dim: usize,
    pub q: Mat,
}

impl BimoduleCategory {
    pub fn new(d: &FiniteGroupoid, v: &Subgroupoid, omega: &Cochain, psi: &Cochain, seed: u64) -> Result<Self> {
        let wide = v.validate_wide(d);
        if !wide.is_valid() {
            return Err(Error::IncompatibleData(format!("V is not a wide subgroupoid: {wide}")));
        }
        if omega.degree() != 3 || psi.degree() != 2 || !is_cocycle(d, omega) {
            return Err(Error::IncompatibleData("ω must be a 3-cocycle and ψ a 2-cochain".into()));
        }
        let dpsi = coboundary(d, psi).restrict(v);
        if omega.restrict(v) != dpsi.neg() {
            let bad = omega.restrict(v).add(&dpsi).entries();
            return Err(Error::CocycleNotTrivialOnV(format!(
                "ω + dψ is nonzero on {} triples of V, first {:?}",
                bad.len(),
                bad.first()
            )));
        }
        let n = d.n_arrows();
        let into: Vec<Vec<usize>> = (0..d.n_objects())
            .map(|p| v.arrows.iter().copied().filter(|&g| d.tgt(g) == p).collect())
            .collect();
        let from: Vec<Vec<usize>> = (0..d.n_objects())
            .map(|p| v.arrows.iter().copied().filter(|&g| d.src(g) == p).collect())
            .collect();
        let mut arrows = Vec::new();
        for alpha in 0..n {
            for &g in &into[d.src(alpha)] {
                for &h in &from[d.tgt(alpha)] {
                    arrows.push([g, alpha, h]);
                }
            }
        }
        let index: HashMap<[usize; 3], usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let act = |a: [usize; 3]| d.mul(d.mul(a[0], a[1]), a[2]);
        let groupoid = FiniteGroupoid::from_fn(
            n,
            arrows.iter().map(|a| a[1]).collect(),
            arrows.iter().map(|&a| act(a)).collect(),
            (0..n).map(|al| index[&[d.identity(d.src(al)), al, d.identity(d.tgt(al))]]).collect(),
            |x, y| {
                let ([g, al, h], [g2, _, h2]) = (arrows[x], arrows[y]);
                index[&[d.mul(g2, g), al, d.mul(h, h2)]]
            },
        );
        let gamma = TwistedGroupoid::new(groupoid, |x, y| {
            let ([g, al, h], [g2, _, h2]) = (arrows[x], arrows[y]);
            let ga = d.mul(g, al);
            let gga = d.mul(g2, ga);
            -omega.get(&[g2, ga, h]) - omega.get(&[g2, g, al])
                + psi.get(&[g2, g])
                + omega.get(&[gga, h, h2])
                + psi.get(&[h, h2])
        });
        let mut pairs = vec![Vec::new(); n];
        let mut slot = vec![NONE; n * n];
        for (a, b) in d.composable_pairs() {
            let c = d.mul(a, b);
            slot[c * n + a] = pairs[c].len() as u32;
            pairs[c].push((a, b));
        }
        let dec = Decomposition::new(&gamma, seed)?;
        Ok(BimoduleCategory {
            d: d.clone(),
            v: v.clone(),
            omega: omega.clone(),
            psi: psi.clone(),
            gamma,
            arrows,
            index,
            pairs,
            slot,
            dec,
        })
    }

    pub fn arrow(&self, g: usize, alpha: usize, h: usize) -> usize {
        self.index[&[g, alpha, h]]
    }

    /// The map `g⇀: M_α → M_{gα}`.
    pub fn left<'a>(&self, m: &'a ProjRep, g: usize, alpha: usize) -> &'a Mat {
        &m.mats[self.arrow(g, alpha, self.d.identity(self.d.tgt(alpha)))]
    }

    /// The map `↼h: M_α → M_{αh}`.
    pub fn right<'a>(&self, m: &'a ProjRep, alpha: usize, h: usize) -> &'a Mat {
        &m.mats[self.arrow(self.d.identity(self.d.src(alpha)), alpha, h)]
    }

    fn check_carrier(&self, m: &ProjRep) -> Result<()> {
        if m.dims.len() != self.d.n_arrows() || m.mats.len() != self.arrows.len() {
            return Err(Error::MismatchedCarrier);
        }
        Ok(())
    }

    /// Builds a bimodule from its one-sided actions.
    pub fn from_actions(
        &self,
        dims: Vec<usize>,
        left: impl Fn(usize, usize) -> Mat,
        right: impl Fn(usize, usize) -> Mat,
    ) -> ProjRep {
        let d = &self.d;
        ProjRep::from_fn(&self.gamma.groupoid, dims, |a| {
            let [g, al, h] = self.arrows[a];
            right(d.mul(g, al), h) * left(g, al)
        })
    }

    /// `k_ψV` with `g⇀h = ψ(g,h)·gh` and `h↼k = ψ(h,k)·hk`.
    pub fn unit(&self) -> ProjRep {
        let d = &self.d;
        let dims: Vec<usize> = (0..d.n_arrows()).map(|a| self.v.contains(a) as usize).collect();
        let line = |on: bool, p: Phase| {
            if on {
                Mat::from_element(1, 1, p.to_complex())
            } else {
                Mat::zeros(0, 0)
            }
        };
        self.from_actions(
            dims.clone(),
            |g, al| line(dims[al] == 1, self.psi.get(&[g, al])),
            |al, h| line(dims[al] == 1, self.psi.get(&[al, h])),
        )
    }

    /// Checks the three action relations and `ρ(g,α,h) = (↼h)(g⇀)`.
    pub fn sw_report(&self, m: &ProjRep) -> ValidationReport {
        let d = &self.d;
        let mut rep = ValidationReport::new();
        let tol = 1e-9;
        let e = |p: Phase| p.to_complex();
        let vpairs: Vec<(usize, usize)> = d
            .composable_pairs()
            .into_iter()
            .filter(|&(g, h)| self.v.contains(g) && self.v.contains(h))
            .collect();
        for al in 0..d.n_arrows() {
            if m.dims[al] == 0 {
                continue;
            }
            for &(g, h) in &vpairs {
                if d.tgt(h) == d.src(al) {
                    let lhs = self.left(m, d.mul(g, h), al) * e(self.omega.get(&[g, h, al]) - self.psi.get(&[g, h]));
                    let rhs = self.left(m, g, d.mul(h, al)) * self.left(m, h, al);
                    if max_abs(&(lhs - rhs)) > tol {
                        rep.push("left action", format!("(gh)⇀ at g={g}, h={h}, α={al}"));
                    }
                }
                if d.tgt(al) == d.src(g) {
                    let lhs = self.right(m, al, d.mul(g, h)) * e(self.omega.get(&[al, g, h]) + self.psi.get(&[g, h]));
                    let rhs = self.right(m, d.mul(al, g), h) * self.right(m, al, g);
                    if max_abs(&(lhs - rhs)) > tol {
                        rep.push("right action", format!("↼(gh) at α={al}, g={g}, h={h}"));
                    }
                }
            }
        }
        for (a, &[g, al, h]) in self.arrows.iter().enumerate() {
            if m.dims[al] == 0 {
                continue;
            }
            let lr = self.right(m, d.mul(g, al), h) * self.left(m, g, al);
            let rl = self.left(m, g, d.mul(al, h)) * self.right(m, al, h) * e(self.omega.get(&[g, al, h]));
            if max_abs(&(&lr - rl)) > tol {
                rep.push("middle", format!("(g⇀m)↼h at g={g}, α={al}, h={h}"));
            }
            if max_abs(&(&m.mats[a] - lr)) > tol {
                rep.push("factorization", format!("ρ({g},{al},{h}) ≠ (↼h)(g⇀)"));
            }
        }
        rep.finish()
    }

    fn slot(&self, gamma: usize, alpha: usize) -> usize {
        self.slot[gamma * self.d.n_arrows() + alpha] as usize
    }

    /// `M ⊗̄ N`: the quotient of `⊕_{αβ=γ} M_α ⊗ N_β` by the span of
    /// `(m↼g)⊗n − ω(|m|,g,|n|) m⊗(g⇀n)`, with the induced actions
    /// `g⇀(m⊗̄n) = e(−ω(g,|m|,|n|)) (g⇀m)⊗̄n` and
    /// `(m⊗̄n)↼h = e(ω(|m|,|n|,h)) m⊗̄(n↼h)`.
    pub fn tensor_data(&self, m: &ProjRep, n: &ProjRep) -> Result<Tensor> {
        self.check_carrier(m)?;
        self.check_carrier(n)?;
        let d = &self.d;
        let nd = d.n_arrows();
        let mut grades = Vec::with_capacity(nd);
        for gm in 0..nd {
            let mut summands = Vec::new();
            let mut off = 0;
            for &(a, b) in &self.pairs[gm] {
                summands.push((a, b, off));
                off += m.dims[a] * n.dims[b];
            }
            grades.push(Grade {
                summands,
                pre_dim: off,
                q: Mat::zeros(off, 0),
            });
        }
        let mut grams: Vec<Mat> = grades.iter().map(|g| Mat::zeros(g.pre_dim, g.pre_dim)).collect();
        for al in 0..nd {
            if m.dims[al] == 0 {
                continue;
            }
            for &g in self.v.arrows.iter().filter(|&&g| d.src(g) == d.tgt(al) && !d.is_identity(g)) {
                for be in d.arrows_from(d.tgt(g)) {
                    let k = m.dims[al] * n.dims[be];
                    if k == 0 {
                        continue;
                    }
                    let gm = d.mul(d.mul(al, g), be);
                    let grade = &grades[gm];
                    let s1 = grade.summands[self.slot(gm, d.mul(al, g))];
                    let s2 = grade.summands[self.slot(gm, al)];
                    let mut rel = Mat::zeros(grade.pre_dim, k);
                    let b1 = self.right(m, al, g).kronecker(&Mat::identity(n.dims[be], n.dims[be]));
                    let b2 = Mat::identity(m.dims[al], m.dims[al]).kronecker(self.left(n, g, be))
                        * (-self.omega.get(&[al, g, be]).to_complex());
                    add_block(&mut rel, s1.2, &b1);
                    add_block(&mut rel, s2.2, &b2);
                    grams[gm] += &rel * rel.adjoint();
                }
            }
        }
        for (grade, gram) in grades.iter_mut().zip(grams) {
            grade.q = complement(gram)?;
        }
        let dims: Vec<usize> = grades.iter().map(|g| g.q.ncols()).collect();
        let lift_left = |g: usize, gm: usize| -> Mat {
            let (src, tgt) = (&grades[gm], &grades[d.mul(g, gm)]);
            let mut big = Mat::zeros(tgt.pre_dim, src.pre_dim);
            for &(a, b, off) in &src.summands {
                if m.dims[a] * n.dims[b] == 0 {
                    continue;
                }
                let to = tgt.summands[self.slot(d.mul(g, gm), d.mul(g, a))];
                let blk = self.left(m, g, a).kronecker(&Mat::identity(n.dims[b], n.dims[b]))
                    * (-self.omega.get(&[g, a, b])).to_complex();
                big.view_mut((to.2, off), blk.shape()).copy_from(&blk);
            }
            tgt.q.adjoint() * big * &src.q
        };
        let lift_right = |gm: usize, h: usize| -> Mat {
            let (src, tgt) = (&grades[gm], &grades[d.mul(gm, h)]);
            let mut big = Mat::zeros(tgt.pre_dim, src.pre_dim);
            for &(a, b, off) in &src.summands {
                if m.dims[a] * n.dims[b] == 0 {
                    continue;
                }
                let to = tgt.summands[self.slot(d.mul(gm, h), a)];
                let blk = Mat::identity(m.dims[a], m.dims[a]).kronecker(self.right(n, b, h))
                    * self.omega.get(&[a, b, h]).to_complex();
                big.view_mut((to.2, off), blk.shape()).copy_from(&blk);
            }
            tgt.q.adjoint() * big * &src.q
        };
        let module = self.from_actions(dims, lift_left, lift_right);
        Ok(Tensor {
            module,
            grades,
            left_dims: m.dims.clone(),
            right_dims: n.dims.clone(),
        })
    }

    pub fn tensor(&self, m: &ProjRep, n: &ProjRep) -> Result<ProjRep> {
        Ok(self.tensor_data(m, n)?.module)
    }

    /// `f ⊗̄ g` between two presented tensor products.
    pub fn tensor_morphism(&self, src: &Tensor, tgt: &Tensor, f: &Morphism, g: &Morphism) -> Morphism {
        let blocks = src
            .grades
            .iter()
            .zip(&tgt.grades)
            .map(|(s, t)| {
                let mut big = Mat::zeros(t.pre_dim, s.pre_dim);
                for (&(a, b, off), &(_, _, to)) in s.summands.iter().zip(&t.summands) {
                    let blk = f.blocks[a].kronecker(&g.blocks[b]);
                    if !blk.is_empty() {
                        big.view_mut((to, off), blk.shape()).copy_from(&blk);
                    }
                }
                t.q.adjoint() * big * &s.q
            })
            .collect();
        Morphism { blocks }
    }

    /// `a: (X⊗̄Y)⊗̄Z → X⊗̄(Y⊗̄Z)`, `(x⊗y)⊗z ↦ ω(|x|,|y|,|z|) x⊗(y⊗z)`,
    /// given the presentations `xy = X⊗̄Y`, `xy_z = (X⊗̄Y)⊗̄Z`,
    /// `yz = Y⊗̄Z` and `x_yz = X⊗̄(Y⊗̄Z)`.
    pub fn associator(&self, dims: [&[usize]; 3], xy: &Tensor, xy_z: &Tensor, yz: &Tensor, x_yz: &Tensor) -> Morphism {
        let d = &self.d;
        let [dx, dy, dz] = dims;
        let blocks = xy_z
            .grades
            .iter()
            .zip(&x_yz.grades)
            .enumerate()
            .map(|(top, (s, t))| {
                let mut big = Mat::zeros(t.pre_dim, s.pre_dim);
                for &(gm, de, off) in &s.summands {
                    let inner = &xy.grades[gm];
                    let cols = inner.q.ncols() * dz[de];
                    if cols == 0 {
                        continue;
                    }
                    // Lift (X⊗̄Y)_γ ⊗ Z_δ to ⊕ X_α ⊗ Y_β ⊗ Z_δ, then regroup.
                    let lifted = inner.q.kronecker(&Mat::identity(dz[de], dz[de]));
                    for &(al, be, ioff) in &inner.summands {
                        let k = dx[al] * dy[be] * dz[de];
                        if k == 0 {
                            continue;
                        }
                        let piece = lifted.rows(ioff * dz[de], k) * self.omega.get(&[al, be, de]).to_complex();
                        let ep = d.mul(be, de);
                        let outer = &yz.grades[ep];
                        let (_, _, yoff) = outer.summands[self.slot(ep, be)];
                        let proj = outer.q.adjoint().columns(yoff, dy[be] * dz[de]).into_owned();
                        let mapped = Mat::identity(dx[al], dx[al]).kronecker(&proj) * piece;
                        let (_, _, to) = t.summands[self.slot(top, al)];
                        let mut view = big.view_mut((to, off), (mapped.nrows(), cols));
                        view += mapped;
                    }
                }
                t.q.adjoint() * big * &s.q
            })
            .collect();
        Morphism { blocks }
    }

    pub fn simples(&self) -> Vec<ProjRep> {
        self.dec.labels().into_iter().map(|l| self.dec.simple_module(&self.gamma, l)).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.dec
            .labels()
            .into_iter()
            .map(|(c, i)| format!("a{}.{i}", self.dec.components[c].base))
            .collect()
    }

    pub fn unit_is_simple(&self) -> Result<bool> {
        Ok(self.dec.multiplicities(&self.unit())?.iter().sum::<u64>() == 1)
    }

    pub fn fusion_ring(&self) -> Result<FusionRing> {
        if !self.unit_is_simple()? {
            return Err(Error::NotFusion("the unit object k_ψV is not simple".into()));
        }
        let simples = self.simples();
        fusion_from_simples(self.labels(), &simples, |a, b| self.tensor(a, b), |m| self.dec.multiplicities(m))
    }
}

fn add_block(m: &mut Mat, row: usize, b: &Mat) {
    let mut view = m.view_mut((row, 0), b.shape());
    view += b;
}

/// Orthonormal basis of the kernel of a positive semidefinite Gram matrix.
pub(crate) fn complement(gram: Mat) -> Result<Mat> {
    let n = gram.nrows();
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let eig = gram.symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut keep = Vec::new();
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l.abs() <= NULL * scale {
            keep.push(i);
        } else if l < GAP * scale {
            return Err(Error::DecompositionFailed(format!("ambiguous rank: eigenvalue {l:e} of scale {scale:e}")));
        }
    }
    let mut q = DMatrix::<Complex64>::zeros(n, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        q.set_column(c, &eig.eigenvectors.column(i));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{kac_cocycle, OpextPair};
    use crate::fixtures;
    use crate::groups::{cyclic, dihedral};
    use crate::matched_pair::{Boxes, Diagonal};
    use crate::tensor_cats::fusion::fusion_ring_isomorphic;

    fn kac_category(f: &fixtures::Fixture) -> BimoduleCategory {
        let bx = Boxes::new(&f.mp);
        let diag = Diagonal::new(&f.mp);
        let omega = kac_cocycle(&f.mp, &bx, &diag, &OpextPair::trivial());
        BimoduleCategory::new(&diag.groupoid, &diag.vertical_part(&f.mp), &omega, &Cochain::zero(2), 3).unwrap()
    }

    #[test]
    fn action_groupoid_cocycle_and_relations() {
        for f in fixtures::all() {
            let c = kac_category(&f);
            assert!(c.gamma.cocycle_report().is_valid(), "{}", f.name);
            assert!(c.sw_report(&c.unit()).is_valid(), "{}", f.name);
            for s in c.simples() {
                assert!(c.sw_report(&s).is_valid(), "{}", f.name);
            }
        }
    }

    #[test]
    fn tensor_products_satisfy_relations() {
        for f in fixtures::all() {
            let c = kac_category(&f);
            let s = c.simples();
            for a in &s {
                for b in &s {
                    let t = c.tensor(a, b).unwrap();
                    assert!(t.defect(&c.gamma) < 1e-9, "{}", f.name);
                    assert!(c.sw_report(&t).is_valid(), "{}", f.name);
                }
                let u = c.tensor(&c.unit(), a).unwrap();
                assert_eq!(u.dims, a.dims);
            }
        }
    }

    #[test]
    fn gpd6_ring_is_z_c2() {
        let ring = kac_category(&fixtures::ex_gpd6()).fusion_ring().unwrap();
        assert!(fusion_ring_isomorphic(&ring, &FusionRing::group_ring(&cyclic(2))).is_some());
    }

    #[test]
    fn whole_group_gives_representation_ring() {
        let k4 = cyclic(2).product(&cyclic(2));
        let c = BimoduleCategory::new(&k4, &Subgroupoid::whole(&k4), &Cochain::zero(3), &Cochain::zero(2), 1).unwrap();
        let ring = c.fusion_ring().unwrap();
        assert!(fusion_ring_isomorphic(&ring, &FusionRing::group_ring(&k4)).is_some());
        let s3 = dihedral(3);
        let c = BimoduleCategory::new(&s3, &Subgroupoid::whole(&s3), &Cochain::zero(3), &Cochain::zero(2), 1).unwrap();
        assert_eq!(c.fusion_ring().unwrap().dims.iter().copied().collect::<std::collections::BTreeSet<_>>().len(), 2);
    }

    #[test]
    fn trivial_subgroup_gives_pointed_ring() {
        let s3 = dihedral(3);
        let c = BimoduleCategory::new(&s3, &Subgroupoid::identities(&s3), &Cochain::zero(3), &Cochain::zero(2), 1).unwrap();
        let ring = c.fusion_ring().unwrap();
        assert!(fusion_ring_isomorphic(&ring, &FusionRing::group_ring(&s3)).is_some());
    }

    #[test]
    fn rejects_cocycle_nontrivial_on_v() {
        let c2 = cyclic(2);
        // The generator of H³(C₂, ℚ/ℤ): ω(a,b,c) = abc/2 on {0,1}.
        let omega = Cochain::from_fn(&c2, 3, |t| if t == [1, 1, 1] { Phase::half() } else { Phase::ZERO });
        let err = BimoduleCategory::new(&c2, &Subgroupoid::whole(&c2), &omega, &Cochain::zero(2), 1).unwrap_err();
        assert!(matches!(err, Error::CocycleNotTrivialOnV(_)));
    }
}
