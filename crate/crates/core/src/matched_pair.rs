//! Matched pairs of groupoids, boxes and the diagonal groupoid.
//!
//! `H` is the horizontal groupoid with endpoint maps `l` (source) and `r`
//! (target); `V` is the vertical groupoid with `t` (source) and `b`
//! (target). The actions come from factorizing `x·g = (x▷g)(x◁g)` inside the
//! diagonal groupoid. A box `(x, g)` has top `x`, right `g`, left `x▷g` and
//! bottom `x◁g`:
//!
//! ```text
//!          x
//!      ┌───────┐
//!  x▷g │       │ g
//!      └───────┘
//!         x◁g
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Subgroupoid, NONE};
use crate::report::ValidationReport;

pub const DEFAULT_ENUMERATION_BOUND: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    h: FiniteGroupoid,
    v: FiniteGroupoid,
    act_l: Vec<u32>,
    act_r: Vec<u32>,
}

/// A box, determined by its top and right edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Square {
    pub top: usize,
    pub right: usize,
}

impl MatchedPair {
    /// Builds a matched pair from action functions, queried on every pair
    /// with `r(x) = t(g)`.
    pub fn new(
        h: FiniteGroupoid,
        v: FiniteGroupoid,
        act_l: impl Fn(usize, usize) -> usize,
        act_r: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if h.n_objects() != v.n_objects() {
            return Err(Error::InvalidMatchedPair(format!(
                "horizontal base has {} objects, vertical base has {}",
                h.n_objects(),
                v.n_objects()
            )));
        }
        let nv = v.n_arrows();
        let mut l = vec![NONE; h.n_arrows() * nv];
        let mut r = vec![NONE; h.n_arrows() * nv];
        for x in 0..h.n_arrows() {
            for g in v.arrows_from(h.tgt(x)) {
                l[x * nv + g] = act_l(x, g) as u32;
                r[x * nv + g] = act_r(x, g) as u32;
            }
        }
        Ok(MatchedPair {
            h,
            v,
            act_l: l,
            act_r: r,
        })
    }

    /// Builds a matched pair from explicit `[x, g, result]` tables.
    pub fn from_tables(
        h: FiniteGroupoid,
        v: FiniteGroupoid,
        act_l: &[[usize; 3]],
        act_r: &[[usize; 3]],
    ) -> Result<Self> {
        let nv = v.n_arrows();
        let (nh, nv_) = (h.n_arrows(), v.n_arrows());
        let mut l = vec![NONE; nh * nv];
        let mut r = vec![NONE; nh * nv];
        for (table, out, target) in [(act_l, &mut l, nv_), (act_r, &mut r, nh)] {
            for &[x, g, y] in table {
                if x >= nh || g >= nv_ || y >= target {
                    return Err(Error::InvalidMatchedPair(format!("action entry [{x},{g},{y}] out of range")));
                }
                out[x * nv + g] = y as u32;
            }
        }
        for x in 0..nh {
            for g in v.arrows_from(h.tgt(x)) {
                if l[x * nv + g] == NONE || r[x * nv + g] == NONE {
                    return Err(Error::InvalidMatchedPair(format!("actions missing on ({x},{g})")));
                }
            }
        }
        if h.n_objects() != v.n_objects() {
            return Err(Error::InvalidMatchedPair("bases differ".into()));
        }
        Ok(MatchedPair {
            h,
            v,
            act_l: l,
            act_r: r,
        })
    }

    pub fn horizontal(&self) -> &FiniteGroupoid {
        &self.h
    }

    pub fn vertical(&self) -> &FiniteGroupoid {
        &self.v
    }

    pub fn n_objects(&self) -> usize {
        self.h.n_objects()
    }

    /// `x ▷ g`, defined when `r(x) = t(g)`.
    pub fn act_left(&self, x: usize, g: usize) -> usize {
        let y = self.act_l[x * self.v.n_arrows() + g];
        debug_assert!(y != NONE, "x▷g undefined for ({x},{g})");
        y as usize
    }

    /// `x ◁ g`, defined when `r(x) = t(g)`.
    pub fn act_right(&self, x: usize, g: usize) -> usize {
        let y = self.act_r[x * self.v.n_arrows() + g];
        debug_assert!(y != NONE, "x◁g undefined for ({x},{g})");
        y as usize
    }

    pub fn action_tables(&self) -> (Vec<[usize; 3]>, Vec<[usize; 3]>) {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for x in 0..self.h.n_arrows() {
            for g in self.v.arrows_from(self.h.tgt(x)) {
                l.push([x, g, self.act_left(x, g)]);
                r.push([x, g, self.act_right(x, g)]);
            }
        }
        (l, r)
    }

    /// Checks the action and compatibility axioms on every admissible tuple.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let (h, v) = (&self.h, &self.v);
        rep.merge(h.validate());
        rep.merge(v.validate());
        if !rep.is_empty() {
            return rep;
        }
        let nv = v.n_arrows();
        for x in 0..h.n_arrows() {
            for g in v.arrows_from(h.tgt(x)) {
                let (gl, xr) = (self.act_l[x * nv + g] as usize, self.act_r[x * nv + g] as usize);
                if gl >= nv || xr >= h.n_arrows() {
                    rep.push("range", format!("action result out of range at ({x},{g})"));
                    continue;
                }
                if v.src(gl) != h.src(x) {
                    rep.push("endpoints", format!("t(x▷g) ≠ l(x) at ({x},{g})"));
                }
                if v.tgt(gl) != h.src(xr) {
                    rep.push("endpoints", format!("b(x▷g) ≠ l(x◁g) at ({x},{g})"));
                }
                if h.tgt(xr) != v.tgt(g) {
                    rep.push("endpoints", format!("r(x◁g) ≠ b(g) at ({x},{g})"));
                }
            }
        }
        if !rep.is_empty() {
            return rep.finish();
        }
        for x in 0..h.n_arrows() {
            let rx = h.tgt(x);
            if self.act_left(x, v.identity(rx)) != v.identity(h.src(x)) {
                rep.push("identity", format!("x▷id ≠ id for x = {x}"));
            }
            if self.act_right(x, v.identity(rx)) != x {
                rep.push("identity", format!("x◁id ≠ x for x = {x}"));
            }
        }
        for g in 0..nv {
            let tg = v.src(g);
            if self.act_left(h.identity(tg), g) != g {
                rep.push("identity", format!("id▷g ≠ g for g = {g}"));
            }
            if self.act_right(h.identity(tg), g) != h.identity(v.tgt(g)) {
                rep.push("identity", format!("id◁g ≠ id for g = {g}"));
            }
        }
        for x in 0..h.n_arrows() {
            for y in h.arrows_from(h.tgt(x)) {
                let xy = h.mul(x, y);
                for g in v.arrows_from(h.tgt(y)) {
                    let yg = self.act_left(y, g);
                    if self.act_left(x, yg) != self.act_left(xy, g) {
                        rep.push("left action", format!("x▷(y▷g) ≠ (xy)▷g at ({x},{y},{g})"));
                    }
                    let lhs = self.act_right(xy, g);
                    let rhs = h.mul(self.act_right(x, yg), self.act_right(y, g));
                    if lhs != rhs {
                        rep.push("(xy)◁g", format!("(xy)◁g ≠ (x◁(y▷g))(y◁g) at ({x},{y},{g})"));
                    }
                }
            }
            for g in v.arrows_from(h.tgt(x)) {
                let xg = self.act_right(x, g);
                for k in v.arrows_from(v.tgt(g)) {
                    let gk = v.mul(g, k);
                    if self.act_right(xg, k) != self.act_right(x, gk) {
                        rep.push("right action", format!("(x◁g)◁h ≠ x◁(gh) at ({x},{g},{k})"));
                    }
                    let rhs = v.mul(self.act_left(x, g), self.act_left(xg, k));
                    if self.act_left(x, gk) != rhs {
                        rep.push("x▷(gh)", format!("x▷(gh) ≠ (x▷g)((x◁g)▷h) at ({x},{g},{k})"));
                    }
                }
            }
        }
        rep.finish()
    }

    pub fn fill_box(&self, top: usize, right: usize) -> Result<Square> {
        if top >= self.h.n_arrows() || right >= self.v.n_arrows() || self.h.tgt(top) != self.v.src(right) {
            return Err(Error::NotComposable(format!("r(top) ≠ t(right) for ({top},{right})")));
        }
        Ok(Square { top, right })
    }

    pub fn left(&self, a: Square) -> usize {
        self.act_left(a.top, a.right)
    }

    pub fn bottom(&self, a: Square) -> usize {
        self.act_right(a.top, a.right)
    }

    /// Horizontal composition: `a` to the left of `b`, sharing `right(a) = left(b)`.
    pub fn h_compose(&self, a: Square, b: Square) -> Result<Square> {
        if a.right != self.left(b) {
            return Err(Error::NotComposable(format!("right({a:?}) ≠ left({b:?})")));
        }
        Ok(Square {
            top: self.h.mul(a.top, b.top),
            right: b.right,
        })
    }

    /// Vertical composition: `a` stacked over `b`, sharing `bottom(a) = top(b)`.
    pub fn v_compose(&self, a: Square, b: Square) -> Result<Square> {
        if self.bottom(a) != b.top {
            return Err(Error::NotComposable(format!("bottom({a:?}) ≠ top({b:?})")));
        }
        Ok(Square {
            top: a.top,
            right: self.v.mul(a.right, b.right),
        })
    }

    pub fn h_inverse(&self, a: Square) -> Square {
        Square {
            top: self.h.inverse(a.top),
            right: self.left(a),
        }
    }

    pub fn v_inverse(&self, a: Square) -> Square {
        Square {
            top: self.bottom(a),
            right: self.v.inverse(a.right),
        }
    }

    /// The unique box with the given top and left edges.
    pub fn box_from_top_left(&self, top: usize, left: usize) -> Square {
        Square {
            top,
            right: self.act_left(self.h.inverse(top), left),
        }
    }

    /// The unique box with the given bottom and right edges.
    pub fn box_from_bottom_right(&self, bottom: usize, right: usize) -> Square {
        Square {
            top: self.act_right(bottom, self.v.inverse(right)),
            right,
        }
    }

    /// The unique box with the given bottom and left edges.
    pub fn box_from_bottom_left(&self, bottom: usize, left: usize) -> Square {
        let inv = Square {
            top: bottom,
            right: self.act_left(self.h.inverse(bottom), self.v.inverse(left)),
        };
        self.v_inverse(inv)
    }

    /// `Σ_P #{x : r(x)=P}·#{g : t(g)=P}`.
    pub fn box_count(&self) -> usize {
        let mut into = vec![0usize; self.n_objects()];
        for x in 0..self.h.n_arrows() {
            into[self.h.tgt(x)] += 1;
        }
        (0..self.n_objects())
            .map(|p| into[p] * self.v.arrows_from(p).count())
            .sum()
    }
}

/// All boxes of a matched pair with both box groupoids.
///
/// The vertical groupoid has the arrows of `H` as objects and a box goes
/// from its top to its bottom. The horizontal groupoid has the arrows of
/// `V` as objects and a box goes from its left to its right. Box ids are
/// shared by both groupoids and follow the order of `(top, right)`.
#[derive(Clone, Debug)]
pub struct Boxes {
    pub squares: Vec<Square>,
    pub left: Vec<usize>,
    pub bottom: Vec<usize>,
    index: Vec<u32>,
    n_v: usize,
    pub vertical: FiniteGroupoid,
    pub horizontal: FiniteGroupoid,
}

impl Boxes {
    /// Requires a valid matched pair.
    pub fn new(mp: &MatchedPair) -> Self {
        let (h, v) = (mp.horizontal(), mp.vertical());
        let n_v = v.n_arrows();
        let mut squares = Vec::new();
        let mut index = vec![NONE; h.n_arrows() * n_v];
        for x in 0..h.n_arrows() {
            for g in v.arrows_from(h.tgt(x)) {
                index[x * n_v + g] = squares.len() as u32;
                squares.push(Square { top: x, right: g });
            }
        }
        let left: Vec<usize> = squares.iter().map(|&a| mp.left(a)).collect();
        let bottom: Vec<usize> = squares.iter().map(|&a| mp.bottom(a)).collect();
        let id = |a: Square| index[a.top * n_v + a.right] as usize;

        let vertical = FiniteGroupoid::from_fn(
            h.n_arrows(),
            squares.iter().map(|a| a.top).collect(),
            bottom.clone(),
            (0..h.n_arrows()).map(|x| id(Square { top: x, right: v.identity(h.tgt(x)) })).collect(),
            |a, b| id(mp.v_compose(squares[a], squares[b]).expect("composable")),
        );
        let horizontal = FiniteGroupoid::from_fn(
            n_v,
            left.clone(),
            squares.iter().map(|a| a.right).collect(),
            (0..n_v).map(|g| id(Square { top: h.identity(v.src(g)), right: g })).collect(),
            |a, b| id(mp.h_compose(squares[a], squares[b]).expect("composable")),
        );
        Boxes {
            squares,
            left,
            bottom,
            index,
            n_v,
            vertical,
            horizontal,
        }
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn id(&self, a: Square) -> usize {
        let i = self.index[a.top * self.n_v + a.right];
        debug_assert!(i != NONE, "{a:?} is not a box");
        i as usize
    }

    pub fn id_of(&self, top: usize, right: usize) -> usize {
        self.id(Square { top, right })
    }

    pub fn top(&self, a: usize) -> usize {
        self.squares[a].top
    }

    pub fn right(&self, a: usize) -> usize {
        self.squares[a].right
    }

    /// Box id of the 180° rotation, `v_inverse(h_inverse(a))`.
    pub fn rotate(&self, a: usize) -> usize {
        self.vertical.inverse(self.horizontal.inverse(a))
    }
}

/// The diagonal groupoid `D = V ⋈ H` with arrows `(g, x)`, `b(g) = l(x)`.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub groupoid: FiniteGroupoid,
    pub pairs: Vec<(usize, usize)>,
    index: Vec<u32>,
    n_h: usize,
}

impl Diagonal {
    /// Requires a valid matched pair.
    pub fn new(mp: &MatchedPair) -> Self {
        let (h, v) = (mp.horizontal(), mp.vertical());
        let n_h = h.n_arrows();
        let mut pairs = Vec::new();
        let mut index = vec![NONE; v.n_arrows() * n_h];
        for g in 0..v.n_arrows() {
            for x in h.arrows_from(v.tgt(g)) {
                index[g * n_h + x] = pairs.len() as u32;
                pairs.push((g, x));
            }
        }
        let id = |g: usize, x: usize| index[g * n_h + x] as usize;
        let groupoid = FiniteGroupoid::from_fn(
            mp.n_objects(),
            pairs.iter().map(|&(g, _)| v.src(g)).collect(),
            pairs.iter().map(|&(_, x)| h.tgt(x)).collect(),
            (0..mp.n_objects()).map(|p| id(v.identity(p), h.identity(p))).collect(),
            |a, b| {
                let ((g, x), (k, y)) = (pairs[a], pairs[b]);
                id(v.mul(g, mp.act_left(x, k)), h.mul(mp.act_right(x, k), y))
            },
        );
        Diagonal {
            groupoid,
            pairs,
            index,
            n_h,
        }
    }

    pub fn id(&self, g: usize, x: usize) -> usize {
        let i = self.index[g * self.n_h + x];
        debug_assert!(i != NONE);
        i as usize
    }

    /// `V` as the wide subgroupoid `{(g, id)}`.
    pub fn vertical_part(&self, mp: &MatchedPair) -> Subgroupoid {
        let h = mp.horizontal();
        Subgroupoid::new(
            (0..mp.vertical().n_arrows())
                .map(|g| self.id(g, h.identity(mp.vertical().tgt(g))))
                .collect(),
        )
    }

    /// `H` as the wide subgroupoid `{(id, x)}`.
    pub fn horizontal_part(&self, mp: &MatchedPair) -> Subgroupoid {
        let v = mp.vertical();
        Subgroupoid::new(
            (0..mp.horizontal().n_arrows())
                .map(|x| self.id(v.identity(mp.horizontal().src(x)), x))
                .collect(),
        )
    }

    /// Arrow of `D` that a box represents, `x·g = (x▷g, x◁g)`.
    pub fn of_box(&self, mp: &MatchedPair, a: Square) -> usize {
        self.id(mp.left(a), mp.bottom(a))
    }
}

/// Embeddings of the factors into the ambient groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub v: Vec<usize>,
    pub h: Vec<usize>,
}

/// Recovers the matched pair of an exact factorization `D = V·H`.
pub fn from_exact_factorization(
    d: &FiniteGroupoid,
    v: &Subgroupoid,
    h: &Subgroupoid,
) -> Result<(MatchedPair, Factorization)> {
    for (name, s) in [("V", v), ("H", h)] {
        let rep = s.validate_wide(d);
        if !rep.is_valid() {
            return Err(Error::NotExact(format!("{name} is not a wide subgroupoid: {rep}")));
        }
    }
    let fact = factor_table(d, v, h)?;
    let (vg, emb_v) = d.restrict(v);
    let (hg, emb_h) = d.restrict(h);
    let mut pos_v = vec![usize::MAX; d.n_arrows()];
    let mut pos_h = vec![usize::MAX; d.n_arrows()];
    for (i, &a) in emb_v.iter().enumerate() {
        pos_v[a] = i;
    }
    for (i, &a) in emb_h.iter().enumerate() {
        pos_h[a] = i;
    }
    let split = |x: usize, g: usize| fact[d.mul(emb_h[x], emb_v[g])];
    let mp = MatchedPair::new(
        hg,
        vg,
        |x, g| pos_v[split(x, g).0],
        |x, g| pos_h[split(x, g).1],
    )?;
    Ok((mp, Factorization { v: emb_v, h: emb_h }))
}

/// For every arrow, its unique factorization `(g, x)` with `g ∈ V`, `x ∈ H`.
fn factor_table(d: &FiniteGroupoid, v: &Subgroupoid, h: &Subgroupoid) -> Result<Vec<(usize, usize)>> {
    let mut fact = vec![(usize::MAX, usize::MAX); d.n_arrows()];
    let mut count = vec![0usize; d.n_arrows()];
    for &g in &v.arrows {
        for x in d.arrows_from(d.tgt(g)) {
            if h.contains(x) {
                let a = d.mul(g, x);
                count[a] += 1;
                fact[a] = (g, x);
            }
        }
    }
    if let Some(a) = count.iter().position(|&c| c != 1) {
        return Err(Error::NotExact(format!("arrow {a} has {} factorizations", count[a])));
    }
    Ok(fact)
}

fn is_exact(d: &FiniteGroupoid, v: &Subgroupoid, h: &Subgroupoid) -> bool {
    let mut into = vec![0usize; d.n_objects()];
    for &g in &v.arrows {
        into[d.tgt(g)] += 1;
    }
    let mut total = 0;
    for &x in &h.arrows {
        total += into[d.src(x)];
    }
    total == d.n_arrows() && factor_table(d, v, h).is_ok()
}

/// Every ordered pair `(V, H)` of wide subgroupoids with `D = V·H` exact.
pub fn enumerate_exact_factorizations(
    d: &FiniteGroupoid,
    bound: usize,
) -> Result<Vec<(Subgroupoid, Subgroupoid)>> {
    if d.n_arrows() > bound {
        return Err(Error::BoundExceeded {
            found: d.n_arrows(),
            bound,
        });
    }
    let subs = d.wide_subgroupoids();
    let pairs: Vec<(usize, usize)> = (0..subs.len())
        .flat_map(|i| (0..subs.len()).map(move |j| (i, j)))
        .collect();
    Ok(pairs
        .par_iter()
        .filter(|&&(i, j)| is_exact(d, &subs[i], &subs[j]))
        .map(|&(i, j)| (subs[i].clone(), subs[j].clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_factorizations() {
        let d = FiniteGroupoid::pair(2);
        let f = enumerate_exact_factorizations(&d, 48).unwrap();
        let whole = Subgroupoid::whole(&d);
        let ids = Subgroupoid::identities(&d);
        assert_eq!(f, vec![(ids.clone(), whole.clone()), (whole, ids)]);
    }

    #[test]
    fn bound_is_enforced() {
        let d = FiniteGroupoid::pair(3);
        assert!(matches!(
            enumerate_exact_factorizations(&d, 4),
            Err(Error::BoundExceeded { found: 9, bound: 4 })
        ));
    }
}
