//! Projective representations of finite groupoids.
//!
//! A twisted groupoid is a groupoid with a normalized 2-cocycle `c`. A
//! representation assigns a space to every object and a linear map
//! `ρ(a): M_{src a} → M_{tgt a}` to every arrow, with
//! `ρ(b)ρ(a) = e^{2πi c(a,b)} ρ(ab)` for `a` followed by `b`.
//!
//! Simple modules are read off a vertex group of each component: a
//! generic Hermitian element of the commutant of the regular projective
//! representation splits it into irreducibles, which are then induced
//! along a transversal. Multiplicities come from projective characters.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, NONE};
use crate::phase::Phase;
use crate::report::ValidationReport;

pub type Mat = DMatrix<Complex64>;

/// Tolerance for rank and clustering decisions.
pub const RANK_TOL: f64 = 1e-9;
/// Largest accepted distance of a computed integer from the nearest integer.
pub const ROUND_TOL: f64 = 1e-6;

const ATTEMPTS: u64 = 8;

#[derive(Clone, Debug)]
pub struct TwistedGroupoid {
    pub groupoid: FiniteGroupoid,
    cocycle: Vec<Phase>,
}

impl TwistedGroupoid {
    pub fn new(groupoid: FiniteGroupoid, c: impl Fn(usize, usize) -> Phase) -> Self {
        let n = groupoid.n_arrows();
        let mut cocycle = vec![Phase::default(); n * n];
        for (a, b) in groupoid.composable_pairs() {
            cocycle[a * n + b] = c(a, b);
        }
        TwistedGroupoid { groupoid, cocycle }
    }

    pub fn untwisted(groupoid: FiniteGroupoid) -> Self {
        Self::new(groupoid, |_, _| Phase::default())
    }

    pub fn cocycle(&self, a: usize, b: usize) -> Phase {
        self.cocycle[a * self.groupoid.n_arrows() + b]
    }

    /// Checks normalization and `c(a,b) + c(ab,d) = c(b,d) + c(a,bd)`.
    pub fn cocycle_report(&self) -> ValidationReport {
        let g = &self.groupoid;
        let mut rep = ValidationReport::new();
        for (a, b) in g.composable_pairs() {
            if (g.is_identity(a) || g.is_identity(b)) && !self.cocycle(a, b).is_zero() {
                rep.push("normalized", format!("c({a},{b}) ≠ 0 on an identity"));
            }
        }
        for t in g.composable_tuples(3) {
            let (a, b, d) = (t[0], t[1], t[2]);
            let lhs = self.cocycle(a, b) + self.cocycle(g.mul(a, b), d);
            let rhs = self.cocycle(b, d) + self.cocycle(a, g.mul(b, d));
            if lhs != rhs {
                rep.push("cocycle", format!("dc({a},{b},{d}) = {}", lhs - rhs));
            }
        }
        rep.finish()
    }

    /// The opposite groupoid with `c^op(a,b) = c(b,a)`. Its representations
    /// are the representations of the original algebra acting from the
    /// other side.
    pub fn opposite(&self) -> TwistedGroupoid {
        let g = &self.groupoid;
        let op = FiniteGroupoid::from_fn(
            g.n_objects(),
            (0..g.n_arrows()).map(|a| g.tgt(a)).collect(),
            (0..g.n_arrows()).map(|a| g.src(a)).collect(),
            g.identities().collect(),
            |a, b| g.mul(b, a),
        );
        TwistedGroupoid::new(op, |a, b| self.cocycle(b, a))
    }

    fn phase(&self, a: usize, b: usize) -> Complex64 {
        self.cocycle(a, b).to_complex()
    }
}

/// A representation, with one matrix per arrow.
#[derive(Clone, Debug)]
pub struct ProjRep {
    pub dims: Vec<usize>,
    pub mats: Vec<Mat>,
}

impl ProjRep {
    pub fn from_fn(g: &FiniteGroupoid, dims: Vec<usize>, mut f: impl FnMut(usize) -> Mat) -> Self {
        let mats = (0..g.n_arrows())
            .map(|a| {
                let m = f(a);
                debug_assert_eq!(m.shape(), (dims[g.tgt(a)], dims[g.src(a)]));
                m
            })
            .collect();
        ProjRep { dims, mats }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Largest entry of `ρ(b)ρ(a) − c(a,b)ρ(ab)` and of `ρ(id) − 1`.
    pub fn defect(&self, tg: &TwistedGroupoid) -> f64 {
        let g = &tg.groupoid;
        let mut worst: f64 = 0.0;
        for p in 0..g.n_objects() {
            let i = &self.mats[g.identity(p)];
            worst = worst.max(max_abs(&(i - Mat::identity(self.dims[p], self.dims[p]))));
        }
        for (a, b) in g.composable_pairs() {
            let lhs = &self.mats[b] * &self.mats[a];
            let rhs = &self.mats[g.mul(a, b)] * tg.phase(a, b);
            worst = worst.max(max_abs(&(lhs - rhs)));
        }
        worst
    }

    pub fn direct_sum(&self, other: &ProjRep) -> ProjRep {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        ProjRep { dims, mats }
    }
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let mut m = Mat::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), a.shape()).copy_from(a);
    m.view_mut(a.shape(), b.shape()).copy_from(b);
    m
}

/// A family of maps `f_P: M_P → N_P`, one per object.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub blocks: Vec<Mat>,
}

impl Morphism {
    /// Largest entry of `f ρ_M(a) − ρ_N(a) f` over all arrows.
    pub fn intertwining_defect(&self, g: &FiniteGroupoid, m: &ProjRep, n: &ProjRep) -> f64 {
        (0..g.n_arrows())
            .map(|a| {
                let lhs = &self.blocks[g.tgt(a)] * &m.mats[a];
                let rhs = &n.mats[a] * &self.blocks[g.src(a)];
                max_abs(&(lhs - rhs))
            })
            .fold(0.0, f64::max)
    }

    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism {
            blocks: self.blocks.iter().zip(&first.blocks).map(|(a, b)| a * b).collect(),
        }
    }

    /// Largest entry of `f − 1`.
    pub fn identity_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                if b.nrows() != b.ncols() {
                    return f64::INFINITY;
                }
                max_abs(&(b - Mat::identity(b.nrows(), b.ncols())))
            })
            .fold(0.0, f64::max)
    }
}

/// An irreducible projective representation of a vertex group, given on
/// the elements of [`Component::stabilizer`] in order.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    pub mats: Vec<Mat>,
    pub character: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub base: usize,
    pub objects: Vec<usize>,
    /// For every object of the component an arrow from `base` to it;
    /// `NONE` for objects elsewhere.
    pub transversal: Vec<usize>,
    /// The loops at `base`, identity first.
    pub stabilizer: Vec<usize>,
    pub irreps: Vec<Irrep>,
}

/// Every simple module of a twisted groupoid, indexed by
/// `(component, irrep)` pairs.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub seed: u64,
}

impl Decomposition {
    pub fn new(tg: &TwistedGroupoid, seed: u64) -> Result<Self> {
        let g = &tg.groupoid;
        let mut components = Vec::new();
        for (ci, objects) in g.connected_components().into_iter().enumerate() {
            let base = objects[0];
            let mut transversal = vec![NONE as usize; g.n_objects()];
            for &q in &objects {
                transversal[q] = g.hom(base, q)[0];
            }
            transversal[base] = g.identity(base);
            let mut stabilizer = g.hom(base, base);
            stabilizer.sort_by_key(|&a| (a != g.identity(base), a));
            let mut irreps = None;
            let mut last = String::new();
            for attempt in 0..ATTEMPTS {
                let s = seed ^ (ci as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ attempt;
                match vertex_irreps(tg, &stabilizer, s) {
                    Ok(found) => {
                        irreps = Some(found);
                        break;
                    }
                    Err(e) => last = e.to_string(),
                }
            }
            let irreps = irreps.ok_or_else(|| Error::DecompositionFailed(format!("component of object {base}: {last}")))?;
            let expected = regular_class_count(tg, &stabilizer);
            if irreps.len() != expected {
                return Err(Error::DecompositionFailed(format!(
                    "found {} irreducibles at object {base}, expected {expected} regular classes",
                    irreps.len()
                )));
            }
            let sum: usize = irreps.iter().map(|r: &Irrep| r.dim * r.dim).sum();
            if sum != stabilizer.len() {
                return Err(Error::DecompositionFailed(format!(
                    "Σ d² = {sum} ≠ {} at object {base}",
                    stabilizer.len()
                )));
            }
            components.push(Component {
                base,
                objects,
                transversal,
                stabilizer,
                irreps,
            });
        }
        Ok(Decomposition { components, seed })
    }

    pub fn labels(&self) -> Vec<(usize, usize)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| (0..comp.irreps.len()).map(move |i| (c, i)))
            .collect()
    }

    /// The simple module induced from an irreducible at a base object.
    pub fn simple_module(&self, tg: &TwistedGroupoid, label: (usize, usize)) -> ProjRep {
        let g = &tg.groupoid;
        let comp = &self.components[label.0];
        let irrep = &comp.irreps[label.1];
        let d = irrep.dim;
        let mut dims = vec![0; g.n_objects()];
        for &q in &comp.objects {
            dims[q] = d;
        }
        let pos = |k: usize| comp.stabilizer.iter().position(|&s| s == k).expect("loop at base");
        ProjRep::from_fn(g, dims.clone(), |a| {
            let (p, q) = (g.src(a), g.tgt(a));
            if dims[p] == 0 {
                return Mat::zeros(dims[q], dims[p]);
            }
            let (tp, tq) = (comp.transversal[p], comp.transversal[q]);
            let k = g.mul(g.mul(tp, a), g.inverse(tq));
            let ph = tg.cocycle(tp, a) - tg.cocycle(k, tq);
            &irrep.mats[pos(k)] * ph.to_complex()
        })
    }

    /// Multiplicity of every simple module in `m`, certified integral.
    pub fn multiplicities(&self, m: &ProjRep) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for comp in &self.components {
            let d0 = m.dims[comp.base];
            for &q in &comp.objects {
                if m.dims[q] != d0 {
                    return Err(Error::DecompositionFailed(format!(
                        "module has dimension {} at {q} and {d0} at {} in one component",
                        m.dims[q], comp.base
                    )));
                }
            }
            let chi: Vec<Complex64> = comp.stabilizer.iter().map(|&k| m.mats[k].trace()).collect();
            let mut total = 0;
            for irrep in &comp.irreps {
                let s: Complex64 = chi.iter().zip(&irrep.character).map(|(a, b)| a * b.conj()).sum();
                let k = certify_integer(s / comp.stabilizer.len() as f64, "multiplicity")?;
                total += k as usize * irrep.dim;
                out.push(k);
            }
            if total != d0 {
                return Err(Error::DecompositionFailed(format!(
                    "multiplicities account for {total} of {d0} dimensions at object {}",
                    comp.base
                )));
            }
        }
        Ok(out)
    }
}

pub fn certify_integer(z: Complex64, what: &str) -> Result<u64> {
    let r = z.re.round();
    if (z.re - r).abs() > ROUND_TOL || z.im.abs() > ROUND_TOL || r < 0.0 {
        return Err(Error::DecompositionFailed(format!("{what} {z} is not a non-negative integer")));
    }
    Ok(r as u64)
}

/// Number of conjugacy classes of `c`-regular elements: `k` such that
/// `c(k,l) = c(l,k)` for every `l` commuting with `k`.
fn regular_class_count(tg: &TwistedGroupoid, elems: &[usize]) -> usize {
    let g = &tg.groupoid;
    let regular = |k: usize| {
        elems
            .iter()
            .all(|&l| g.mul(k, l) != g.mul(l, k) || tg.cocycle(k, l) == tg.cocycle(l, k))
    };
    let mut seen = vec![false; g.n_arrows()];
    let mut count = 0;
    for &k in elems {
        if seen[k] {
            continue;
        }
        for &l in elems {
            seen[g.mul(g.mul(g.inverse(l), k), l)] = true;
        }
        if regular(k) {
            count += 1;
        }
    }
    count
}

/// Right regular projective representation `ρ(a) e_k = c(k,a) e_{ka}`.
fn regular(tg: &TwistedGroupoid, elems: &[usize]) -> Vec<Mat> {
    let g = &tg.groupoid;
    let n = elems.len();
    let index = |x: usize| elems.iter().position(|&e| e == x).expect("closed under products");
    elems
        .iter()
        .map(|&a| {
            let mut m = Mat::zeros(n, n);
            for (j, &k) in elems.iter().enumerate() {
                m[(index(g.mul(k, a)), j)] = tg.phase(k, a);
            }
            m
        })
        .collect()
}

fn vertex_irreps(tg: &TwistedGroupoid, elems: &[usize], seed: u64) -> Result<Vec<Irrep>> {
    let n = elems.len();
    let reg = regular(tg, elems);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = if i == j {
                Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
            } else {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            };
            x[(i, j)] = z;
            x[(j, i)] = z.conj();
        }
    }
    let mut y = Mat::zeros(n, n);
    for r in &reg {
        y += r * &x * r.adjoint();
    }
    y /= Complex64::new(n as f64, 0.0);
    let eig = y.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = 1.0 + eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs() < 1e-7 * scale => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    let mut found: Vec<(Irrep, usize)> = Vec::new();
    for cl in clusters {
        let u = Mat::from_fn(n, cl.len(), |r, c| eig.eigenvectors[(r, cl[c])]);
        let ud = u.adjoint();
        let mats: Vec<Mat> = reg.iter().map(|r| &ud * r * &u).collect();
        // The eigenspace must be invariant and irreducible.
        for r in &reg {
            let moved = r * &u - &u * (&ud * r * &u);
            if max_abs(&moved) > 1e-6 {
                return Err(Error::DecompositionFailed("eigenspace is not invariant".into()));
            }
        }
        let character: Vec<Complex64> = mats.iter().map(|m| m.trace()).collect();
        let norm: f64 = character.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        if (norm - 1.0).abs() > ROUND_TOL {
            return Err(Error::DecompositionFailed(format!("eigenspace has character norm {norm}")));
        }
        match found
            .iter_mut()
            .find(|(r, _)| r.character.iter().zip(&character).all(|(a, b)| (a - b).norm() < ROUND_TOL))
        {
            Some((_, count)) => *count += 1,
            None => found.push((
                Irrep {
                    dim: cl.len(),
                    mats,
                    character,
                },
                1,
            )),
        }
    }
    for (r, count) in &found {
        if *count != r.dim {
            return Err(Error::DecompositionFailed(format!(
                "irreducible of dimension {} occurs {count} times in the regular representation",
                r.dim
            )));
        }
    }
    let mut irreps: Vec<Irrep> = found.into_iter().map(|(r, _)| r).collect();
    // Canonical order: by dimension, then by rounded character values.
    irreps.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| character_key(a).cmp(&character_key(b))));
    Ok(irreps)
}

fn character_key(r: &Irrep) -> Vec<(i64, i64)> {
    r.character
        .iter()
        .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, dihedral};

    #[test]
    fn symmetric_group_irreps() {
        let tg = TwistedGroupoid::untwisted(dihedral(3));
        let dec = Decomposition::new(&tg, 7).unwrap();
        let dims: Vec<usize> = dec.components[0].irreps.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        for label in dec.labels() {
            let m = dec.simple_module(&tg, label);
            assert!(m.defect(&tg) < 1e-9);
            let mult = dec.multiplicities(&m).unwrap();
            let expected: Vec<u64> = dec.labels().iter().map(|&l| (l == label) as u64).collect();
            assert_eq!(mult, expected);
        }
    }

    #[test]
    fn nondegenerate_cocycle_on_klein_four() {
        // c(a,b) = a₁b₂/2 is a nontrivial class: one projective irrep of dimension 2.
        let g = FiniteGroupoid::group(4, |a, b| a ^ b);
        let tg = TwistedGroupoid::new(g, |a, b| Phase::new(((a & 1) * (b >> 1)) as i64, 2));
        assert!(tg.cocycle_report().is_valid());
        let dec = Decomposition::new(&tg, 1).unwrap();
        assert_eq!(dec.components[0].irreps.len(), 1);
        assert_eq!(dec.components[0].irreps[0].dim, 2);
        let m = dec.simple_module(&tg, (0, 0));
        assert!(m.defect(&tg) < 1e-9);
    }

    #[test]
    fn pair_groupoid_has_one_simple() {
        let tg = TwistedGroupoid::untwisted(FiniteGroupoid::pair(3));
        let dec = Decomposition::new(&tg, 0).unwrap();
        assert_eq!(dec.labels().len(), 1);
        let m = dec.simple_module(&tg, (0, 0));
        assert_eq!(m.dims, vec![1, 1, 1]);
        assert!(m.defect(&tg) < 1e-12);
    }

    #[test]
    fn opposite_representations() {
        let g = cyclic(4).product(&cyclic(2));
        let tg = TwistedGroupoid::new(g, |a, b| Phase::new(((a & 1) * ((b >> 1) & 1)) as i64, 2));
        let op = tg.opposite();
        assert!(op.cocycle_report().is_valid());
        let dec = Decomposition::new(&op, 3).unwrap();
        for label in dec.labels() {
            assert!(dec.simple_module(&op, label).defect(&op) < 1e-9);
        }
    }
}
