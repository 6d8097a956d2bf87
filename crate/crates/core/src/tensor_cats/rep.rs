//! The category of `H`-graded vector spaces with a σ-twisted right action
//! of `V`, equivalently modules over the weak Hopf algebra of boxes.
//!
//! A module is a projective representation of the vertical box groupoid:
//! a space `M_x` for every arrow `x` of `H` and, for every box `A`, a map
//! `M_{top A} → M_{bottom A}`. Left modules use the opposite groupoid.

use rayon::prelude::*;

use super::fusion::FusionRing;
use crate::cohomology::{check_opext_pair, OpextPair};
use crate::error::{Error, Result};
use crate::matched_pair::{Boxes, MatchedPair};
use crate::twisted::{Decomposition, Mat, ProjRep, TwistedGroupoid};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ModuleSide {
    #[default]
    Right,
    Left,
}

/// Summands `(x, y, offset)` of `(M⊗N)_z = ⊕_{xy=z} M_x ⊗ N_y`, per `z`.
#[derive(Clone, Debug)]
pub struct GradedLayout {
    pub summands: Vec<Vec<(usize, usize, usize)>>,
    pub dims: Vec<usize>,
}

impl GradedLayout {
    pub fn position(&self, z: usize, x: usize) -> usize {
        self.summands[z].iter().position(|s| s.0 == x).expect("summand exists")
    }
}

#[derive(Clone, Debug)]
pub struct RepCategory {
    pub side: ModuleSide,
    pub mp: MatchedPair,
    pub boxes: Boxes,
    pub pair: OpextPair,
    pub tg: TwistedGroupoid,
    pub dec: Decomposition,
}

impl RepCategory {
    pub fn new(mp: &MatchedPair, pair: &OpextPair, side: ModuleSide, seed: u64) -> Result<Self> {
        let boxes = Boxes::new(mp);
        let rep = check_opext_pair(mp, &boxes, pair);
        if !rep.is_valid() {
            return Err(Error::InvalidPair(rep.to_string()));
        }
        let right = TwistedGroupoid::new(boxes.vertical.clone(), |a, b| pair.sigma.get(&[a, b]));
        let tg = match side {
            ModuleSide::Right => right,
            ModuleSide::Left => right.opposite(),
        };
        let dec = Decomposition::new(&tg, seed)?;
        Ok(RepCategory {
            side,
            mp: mp.clone(),
            boxes,
            pair: pair.clone(),
            tg,
            dec,
        })
    }

    fn check_carrier(&self, m: &ProjRep) -> Result<()> {
        if m.dims.len() != self.tg.groupoid.n_objects() || m.mats.len() != self.tg.groupoid.n_arrows() {
            return Err(Error::MismatchedCarrier);
        }
        Ok(())
    }

    /// `k𝒫`: a line at every identity of `H`, on which the boxes with
    /// identity edges act trivially.
    pub fn unit(&self) -> ProjRep {
        let h = self.mp.horizontal();
        let g = &self.tg.groupoid;
        let dims: Vec<usize> = (0..h.n_arrows()).map(|x| h.is_identity(x) as usize).collect();
        ProjRep::from_fn(g, dims.clone(), |a| {
            let (p, q) = (g.src(a), g.tgt(a));
            if dims[p] == 1 {
                Mat::identity(dims[q], 1)
            } else {
                Mat::zeros(dims[q], 0)
            }
        })
    }

    pub fn layout(&self, m: &ProjRep, n: &ProjRep) -> GradedLayout {
        let h = self.mp.horizontal();
        let mut summands = vec![Vec::new(); h.n_arrows()];
        let mut dims = vec![0; h.n_arrows()];
        for (x, y) in h.composable_pairs() {
            let z = h.mul(x, y);
            summands[z].push((x, y, dims[z]));
            dims[z] += m.dims[x] * n.dims[y];
        }
        GradedLayout { summands, dims }
    }

    /// `(M⊗N)_z = ⊕_{xy=z} M_x ⊗ N_y`, where a box splitting as `B | C`
    /// acts on `M_x ⊗ N_y` by `τ(B,C)·ρ_M(B) ⊗ ρ_N(C)`.
    pub fn tensor(&self, m: &ProjRep, n: &ProjRep) -> Result<ProjRep> {
        self.check_carrier(m)?;
        self.check_carrier(n)?;
        let lay = self.layout(m, n);
        let g = &self.tg.groupoid;
        let bx = &self.boxes;
        let mp = &self.mp;
        Ok(ProjRep::from_fn(g, lay.dims.clone(), |a| {
            let (zs, zt) = (g.src(a), g.tgt(a));
            let mut out = Mat::zeros(lay.dims[zt], lay.dims[zs]);
            let right = bx.right(a);
            for &(x, y, off) in &lay.summands[zs] {
                let (b, c) = match self.side {
                    ModuleSide::Right => {
                        let c = bx.id_of(y, right);
                        (bx.id_of(x, bx.left[c]), c)
                    }
                    ModuleSide::Left => {
                        let c = bx.id(mp.box_from_bottom_right(y, right));
                        (bx.id(mp.box_from_bottom_right(x, bx.left[c])), c)
                    }
                };
                let (xt, yt) = (g.tgt(b), g.tgt(c));
                let to = lay.summands[zt][lay.position(zt, xt)];
                debug_assert_eq!(to.1, yt);
                let block = m.mats[b].kronecker(&n.mats[c]) * self.pair.tau.get(&[b, c]).to_complex();
                out.view_mut((to.2, off), block.shape()).copy_from(&block);
            }
            out
        }))
    }

    pub fn simples(&self) -> Vec<ProjRep> {
        self.dec.labels().into_iter().map(|l| self.dec.simple_module(&self.tg, l)).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.dec
            .labels()
            .into_iter()
            .map(|(c, i)| format!("x{}.{i}", self.dec.components[c].base))
            .collect()
    }

    pub fn unit_is_simple(&self) -> Result<bool> {
        Ok(self.dec.multiplicities(&self.unit())?.iter().sum::<u64>() == 1)
    }

    /// Decomposes `S_i ⊗ S_j` for all pairs of simples. Fails with
    /// `NotFusion` when the unit is not simple.
    pub fn fusion_ring(&self) -> Result<FusionRing> {
        if !self.unit_is_simple()? {
            return Err(Error::NotFusion("the unit object k𝒫 is not simple".into()));
        }
        let simples = self.simples();
        fusion_from_simples(self.labels(), &simples, |a, b| self.tensor(a, b), |m| self.dec.multiplicities(m))
    }
}

/// Tensors every ordered pair of simples and reads off multiplicities.
pub(crate) fn fusion_from_simples(
    labels: Vec<String>,
    simples: &[ProjRep],
    tensor: impl Fn(&ProjRep, &ProjRep) -> Result<ProjRep> + Sync,
    mult: impl Fn(&ProjRep) -> Result<Vec<u64>> + Sync,
) -> Result<FusionRing> {
    let r = simples.len();
    let rows: Vec<Vec<Vec<u64>>> = (0..r)
        .into_par_iter()
        .map(|i| (0..r).map(|j| mult(&tensor(&simples[i], &simples[j])?)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let ring = FusionRing::new(labels, rows)?;
    let rep = ring.validate();
    if !rep.is_valid() {
        return Err(Error::NotFusion(rep.to_string()));
    }
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tensor_cats::fusion::fusion_ring_isomorphic;
    use crate::groups::cyclic;
    use crate::twisted::Morphism;

    fn cat(f: &fixtures::Fixture, side: ModuleSide) -> RepCategory {
        RepCategory::new(&f.mp, &OpextPair::trivial(), side, 7).unwrap()
    }

    #[test]
    fn tensor_products_are_modules() {
        for f in fixtures::all() {
            for side in [ModuleSide::Right, ModuleSide::Left] {
                let c = cat(&f, side);
                let s = c.simples();
                assert!(c.unit().defect(&c.tg) < 1e-12, "{}", f.name);
                for a in &s {
                    for b in &s {
                        let t = c.tensor(a, b).unwrap();
                        assert!(t.defect(&c.tg) < 1e-9, "{} {side:?}", f.name);
                        assert!(t.total_dim() > 0);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_tensor_is_identity_on_objects() {
        let f = fixtures::ex_s3();
        let c = cat(&f, ModuleSide::Right);
        for s in c.simples() {
            let t = c.tensor(&c.unit(), &s).unwrap();
            assert_eq!(t.dims, s.dims);
            // For this pair k𝒫 ⊗ M is literally M.
            let id = Morphism {
                blocks: s.dims.iter().map(|&d| Mat::identity(d, d)).collect(),
            };
            assert!(id.intertwining_defect(&c.tg.groupoid, &t, &s) < 1e-12);
        }
    }

    #[test]
    fn worked_examples() {
        let k4 = cat(&fixtures::ex_k4(), ModuleSide::Right).fusion_ring().unwrap();
        let target = FusionRing::group_ring(&cyclic(2).product(&cyclic(2)));
        assert!(fusion_ring_isomorphic(&k4, &target).is_some());

        let pair2 = cat(&fixtures::ex_pair2(), ModuleSide::Right);
        let s = pair2.simples();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].total_dim(), 2);

        let gpd6 = cat(&fixtures::ex_gpd6(), ModuleSide::Right);
        let sum: usize = gpd6.simples().iter().map(|m| m.total_dim().pow(2)).sum();
        assert_eq!(sum, 8);
        let ring = gpd6.fusion_ring().unwrap();
        assert!(fusion_ring_isomorphic(&ring, &FusionRing::group_ring(&cyclic(2))).is_some());

        let s3 = cat(&fixtures::ex_s3(), ModuleSide::Right);
        let sum: usize = s3.simples().iter().map(|m| m.total_dim().pow(2)).sum();
        assert_eq!(sum, 6);
    }

    #[test]
    fn regular_module_squared_has_dimension_36() {
        let c = cat(&fixtures::ex_s3(), ModuleSide::Right);
        let reg = c.simples().iter().fold(None::<ProjRep>, |acc, s| {
            let mut m = s.clone();
            for _ in 1..s.total_dim() {
                m = m.direct_sum(s);
            }
            Some(match acc {
                None => m,
                Some(a) => a.direct_sum(&m),
            })
        });
        let reg = reg.unwrap();
        assert_eq!(reg.total_dim(), 6);
        assert_eq!(c.tensor(&reg, &reg).unwrap().total_dim(), 36);
    }
}
