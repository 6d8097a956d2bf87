//! Normalized cochains with values in ℚ/ℤ, written additively.
//!
//! Coboundaries follow the standard simplicial formula, so the 3-cocycle
//! identity reads `ω(b,c,d) − ω(ab,c,d) + ω(a,bc,d) − ω(a,b,cd) + ω(a,b,c) = 0`.

use std::collections::HashMap;

use bitvec::prelude::*;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Subgroupoid, Transversal, NONE};
use crate::linalg::{f2_complement, f2_nullspace, FreeChoice, ModSystem};
use crate::matched_pair::{Boxes, Diagonal, MatchedPair, Square};
use crate::phase::{common_order, Phase};
use crate::report::ValidationReport;

type Key = [u32; 4];

fn key(args: &[usize]) -> Key {
    let mut k = [NONE; 4];
    for (slot, &a) in k.iter_mut().zip(args) {
        *slot = a as u32;
    }
    k
}

/// A cochain of degree 1 to 4 on composable tuples. Absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: HashMap<Key, Phase>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        assert!((1..=4).contains(&degree));
        Cochain {
            degree,
            values: HashMap::new(),
        }
    }

    /// Evaluates `f` on every composable tuple of `g`.
    pub fn from_fn(g: &FiniteGroupoid, degree: usize, f: impl Fn(&[usize]) -> Phase) -> Self {
        let mut c = Cochain::zero(degree);
        for t in g.composable_tuples(degree) {
            c.set(&t, f(&t));
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, args: &[usize]) -> Phase {
        debug_assert_eq!(args.len(), self.degree);
        self.values.get(&key(args)).copied().unwrap_or(Phase::ZERO)
    }

    pub fn set(&mut self, args: &[usize], p: Phase) {
        assert_eq!(args.len(), self.degree);
        if p.is_zero() {
            self.values.remove(&key(args));
        } else {
            self.values.insert(key(args), p);
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero entries in lexicographic order of arguments.
    pub fn entries(&self) -> Vec<(Vec<usize>, Phase)> {
        let mut out: Vec<(Vec<usize>, Phase)> = self
            .values
            .iter()
            .map(|(k, &p)| (k[..self.degree].iter().map(|&a| a as usize).collect(), p))
            .collect();
        out.sort();
        out
    }

    /// Least common multiple of the orders of all values.
    pub fn order(&self) -> u64 {
        common_order(self.values.values().copied())
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, &p) in &other.values {
            let args: Vec<usize> = k[..self.degree].iter().map(|&a| a as usize).collect();
            let v = out.get(&args) + p;
            out.set(&args, v);
        }
        out
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|(&k, &p)| (k, -p)).collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.neg())
    }

    /// Entries whose arguments are not composable in `g`, or that are
    /// nonzero with an identity argument.
    pub fn normalization_report(&self, g: &FiniteGroupoid, name: &str) -> ValidationReport {
        let mut rep = ValidationReport::new();
        for (args, p) in self.entries() {
            if args.iter().any(|&a| a >= g.n_arrows()) {
                rep.push(name, format!("argument out of range in {args:?}"));
                continue;
            }
            if args.windows(2).any(|w| g.tgt(w[0]) != g.src(w[1])) {
                rep.push(name, format!("{args:?} is not composable"));
            } else if args.iter().any(|&a| g.is_identity(a)) {
                rep.push(name, format!("not normalized: value {p} at {args:?}"));
            }
        }
        rep
    }

    /// Keeps only entries whose arguments all lie in `sub`.
    pub fn restrict(&self, sub: &Subgroupoid) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .filter(|(k, _)| k[..self.degree].iter().all(|&a| sub.contains(a as usize)))
                .map(|(&k, &p)| (k, p))
                .collect(),
        }
    }

    /// Relabels arguments through `map`.
    pub fn relabel(&self, map: &[usize]) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        for (args, p) in self.entries() {
            let a: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            out.set(&a, p);
        }
        out
    }

    pub fn to_spec(&self) -> CochainSpec {
        CochainSpec(
            self.entries()
                .into_iter()
                .map(|(args, p)| {
                    let mut row: Vec<serde_json::Value> = args.into_iter().map(serde_json::Value::from).collect();
                    row.push(serde_json::Value::from(p.to_string()));
                    row
                })
                .collect(),
        )
    }

    pub fn from_spec(spec: &CochainSpec, degree: usize) -> Result<Cochain> {
        let bad = |m: String| Error::Parse(crate::error::ParseError::Schema(m));
        let mut c = Cochain::zero(degree);
        for row in &spec.0 {
            if row.len() != degree + 1 {
                return Err(bad(format!("cochain entry {row:?} should have {} fields", degree + 1)));
            }
            let mut args = Vec::with_capacity(degree);
            for v in &row[..degree] {
                args.push(v.as_u64().ok_or_else(|| bad(format!("bad argument {v}")))? as usize);
            }
            let p: Phase = match &row[degree] {
                serde_json::Value::String(s) => s.parse()?,
                serde_json::Value::Number(n) => n.to_string().parse()?,
                other => return Err(bad(format!("bad phase {other}"))),
            };
            c.set(&args, c.get(&args) + p);
        }
        Ok(c)
    }
}

/// Serialized cochain: rows of arguments followed by a `"p/q"` phase.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CochainSpec(pub Vec<Vec<serde_json::Value>>);

/// `dc` for a cochain `c` of degree 1, 2 or 3.
pub fn coboundary(g: &FiniteGroupoid, c: &Cochain) -> Cochain {
    let n = c.degree();
    assert!((1..=3).contains(&n));
    let tuples = g.composable_tuples(n + 1);
    let vals: Vec<Phase> = tuples.par_iter().map(|t| coboundary_at(g, c, t)).collect();
    let mut out = Cochain::zero(n + 1);
    for (t, v) in tuples.iter().zip(vals) {
        out.set(t, v);
    }
    out
}

/// `(dc)(t)` for a composable tuple `t` of length `deg c + 1`.
pub fn coboundary_at(g: &FiniteGroupoid, c: &Cochain, t: &[usize]) -> Phase {
    let n = t.len() - 1;
    let mut total = c.get(&t[1..]);
    let mut buf = Vec::with_capacity(n);
    for i in 0..n {
        buf.clear();
        buf.extend_from_slice(&t[..i]);
        buf.push(g.mul(t[i], t[i + 1]));
        buf.extend_from_slice(&t[i + 2..]);
        let v = c.get(&buf);
        if i % 2 == 0 {
            total -= v;
        } else {
            total += v;
        }
    }
    let last = c.get(&t[..n]);
    if n.is_multiple_of(2) {
        total -= last;
    } else {
        total += last;
    }
    total
}

/// Cochains with at most this many argument tuples are checked against a
/// dense table.
const DENSE_LIMIT: usize = 1 << 22;

pub fn is_cocycle(g: &FiniteGroupoid, c: &Cochain) -> bool {
    let (n, k) = (g.n_arrows(), c.degree());
    match n.checked_pow(k as u32) {
        Some(size) if size <= DENSE_LIMIT => dense_is_cocycle(g, c, size),
        _ => g
            .composable_tuples(k + 1)
            .par_iter()
            .all(|t| coboundary_at(g, c, t).is_zero()),
    }
}

/// `dc = 0`, with `c` unpacked into a table of exponents modulo its order,
/// indexed in base `|g|`.
fn dense_is_cocycle(g: &FiniteGroupoid, c: &Cochain, size: usize) -> bool {
    let (n, k) = (g.n_arrows(), c.degree());
    let m = c.order();
    let mut table = vec![0u64; size];
    let index = |t: &[usize]| t.iter().fold(0, |acc, &a| acc * n + a);
    for (args, p) in c.entries() {
        table[index(&args)] = p.exponent_mod(m).expect("order divides every denominator");
    }
    (0..n).into_par_iter().all(|a0| {
        let mut t = [0usize; 5];
        let mut buf = [0usize; 4];
        t[0] = a0;
        let mut ok = true;
        let mut visit = |t: &[usize]| {
            // Terms with odd index enter with a minus sign.
            let (mut plus, mut minus) = (table[index(&t[1..])], 0);
            for i in 0..k {
                buf[..i].copy_from_slice(&t[..i]);
                buf[i] = g.mul(t[i], t[i + 1]);
                buf[i + 1..k].copy_from_slice(&t[i + 2..]);
                let v = table[index(&buf[..k])];
                if i % 2 == 0 {
                    minus += v;
                } else {
                    plus += v;
                }
            }
            let last = table[index(&t[..k])];
            if k % 2 == 0 {
                minus += last;
            } else {
                plus += last;
            }
            ok &= plus % m == minus % m;
        };
        extend_tuples(g, &mut t, 1, k + 1, &mut visit);
        ok
    })
}

fn extend_tuples(g: &FiniteGroupoid, t: &mut [usize; 5], len: usize, want: usize, visit: &mut impl FnMut(&[usize])) {
    if len == want {
        visit(&t[..want]);
        return;
    }
    for b in g.arrows_from(g.tgt(t[len - 1])) {
        t[len] = b;
        extend_tuples(g, t, len + 1, want, visit);
    }
}

fn cocycle_report(g: &FiniteGroupoid, c: &Cochain, name: &str) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for t in g.composable_tuples(c.degree() + 1) {
        let v = coboundary_at(g, c, &t);
        if !v.is_zero() {
            rep.push(name, format!("coboundary {v} at {t:?}"));
        }
    }
    rep
}

/// A vertical 2-cochain `σ` and a horizontal 2-cochain `τ` on boxes, both
/// indexed by box ids of [`Boxes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpextPair {
    pub sigma: Cochain,
    pub tau: Cochain,
}

impl OpextPair {
    pub fn trivial() -> Self {
        OpextPair {
            sigma: Cochain::zero(2),
            tau: Cochain::zero(2),
        }
    }

    pub fn order(&self) -> u64 {
        self.sigma.order().lcm(&self.tau.order())
    }
}

impl Default for OpextPair {
    fn default() -> Self {
        Self::trivial()
    }
}

/// Every 2×2 grid `[[A, B], [C, D]]` of boxes, in id order of `(A, B, C)`.
pub fn grids(mp: &MatchedPair, bx: &Boxes) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..bx.len() {
        for b in bx.horizontal.arrows_from(bx.horizontal.tgt(a)) {
            for c in bx.vertical.arrows_from(bx.vertical.tgt(a)) {
                let d = bx.id(mp.box_from_top_left(bx.bottom[b], bx.squares[c].right));
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// Checks normalization, both cocycle conditions and the grid condition
/// `σ(AB,CD) + τ(A/C,B/D) = τ(A,B) + τ(C,D) + σ(A,C) + σ(B,D)`.
pub fn check_opext_pair(mp: &MatchedPair, bx: &Boxes, p: &OpextPair) -> ValidationReport {
    let (bv, bh) = (&bx.vertical, &bx.horizontal);
    let mut rep = ValidationReport::new();
    rep.merge(p.sigma.normalization_report(bv, "sigma normalization"));
    rep.merge(p.tau.normalization_report(bh, "tau normalization"));
    if !rep.is_empty() {
        return rep.finish();
    }
    rep.merge(cocycle_report(bv, &p.sigma, "sigma cocycle"));
    rep.merge(cocycle_report(bh, &p.tau, "tau cocycle"));
    for [a, b, c, d] in grids(mp, bx) {
        let ab = bh.mul(a, b);
        let cd = bh.mul(c, d);
        let ac = bv.mul(a, c);
        let bd = bv.mul(b, d);
        let lhs = p.sigma.get(&[ab, cd]) + p.tau.get(&[ac, bd]);
        let rhs = p.tau.get(&[a, b]) + p.tau.get(&[c, d]) + p.sigma.get(&[a, c]) + p.sigma.get(&[b, d]);
        if lhs != rhs {
            rep.push("grid", format!("grid {:?} off by {}", [a, b, c, d], lhs - rhs));
        }
    }
    rep.finish()
}

/// Boxes `(x◁h, y▷f)` and `(y, f)` together with `(x, h)` for a composable
/// triple of the diagonal groupoid.
fn kac_boxes(mp: &MatchedPair, diag: &Diagonal, t: &[usize]) -> (Square, Square, Square) {
    let (_, x) = diag.pairs[t[0]];
    let (h, y) = diag.pairs[t[1]];
    let (f, _) = diag.pairs[t[2]];
    let xh = mp.act_right(x, h);
    let yf = mp.act_left(y, f);
    (
        Square { top: x, right: h },
        Square { top: xh, right: yf },
        Square { top: y, right: f },
    )
}

/// The Kac 3-cocycle
/// `ω((g,x),(h,y),(f,z)) = τ((x◁h, y▷f), (y, f)) + σ((x, h), (x◁h, y▷f))`.
pub fn kac_cocycle(mp: &MatchedPair, bx: &Boxes, diag: &Diagonal, p: &OpextPair) -> Cochain {
    let d = &diag.groupoid;
    Cochain::from_fn(d, 3, |t| {
        let (xh, mid, yf) = kac_boxes(mp, diag, t);
        let (xh, mid, yf) = (bx.id(xh), bx.id(mid), bx.id(yf));
        p.tau.get(&[mid, yf]) + p.sigma.get(&[xh, mid])
    })
}

/// Checks the three structural properties of a Kac cocycle: it vanishes
/// when the first argument lies in `V`, it depends only on `x, h, y, f`,
/// and it reduces to `σ((x,h),(x◁h,f))` on `(id,x),(h,id),(f,id)`.
pub fn kac_properties(mp: &MatchedPair, bx: &Boxes, diag: &Diagonal, p: &OpextPair, omega: &Cochain) -> ValidationReport {
    let (h_gpd, v_gpd) = (mp.horizontal(), mp.vertical());
    let d = &diag.groupoid;
    let mut rep = ValidationReport::new();
    let mut reduced: HashMap<[usize; 4], Phase> = HashMap::new();
    for t in d.composable_tuples(3) {
        let val = omega.get(&t);
        let (_, x) = diag.pairs[t[0]];
        let (h, y) = diag.pairs[t[1]];
        let (f, _) = diag.pairs[t[2]];
        if h_gpd.is_identity(x) && !val.is_zero() {
            rep.push("vanishes on V", format!("ω ≠ 1 at {t:?} with first argument in V"));
        }
        match reduced.insert([x, h, y, f], val) {
            Some(prev) if prev != val => rep.push("depends on (x,h,y,f)", format!("ω at {t:?} depends on more than (x,h,y,f)")),
            _ => {}
        }
        let (g0, _) = diag.pairs[t[0]];
        let (_, z) = diag.pairs[t[2]];
        if v_gpd.is_identity(g0) && h_gpd.is_identity(y) && h_gpd.is_identity(z) {
            let xh = mp.act_right(x, h);
            let s = p.sigma.get(&[bx.id_of(x, h), bx.id_of(xh, f)]);
            if s != val {
                rep.push("reduces to σ", format!("ω((id,x),(h,id),(f,id)) ≠ σ((x,h),(x◁h,f)) at {t:?}"));
            }
        }
    }
    rep.finish()
}

/// Restriction of a cochain on a connected groupoid to the vertex group at
/// `base`, in the element numbering of [`FiniteGroupoid::vertex_group`].
pub fn restrict_to_vertex(d: &FiniteGroupoid, c: &Cochain, base: usize) -> Result<(FiniteGroupoid, Vec<usize>, Cochain)> {
    if !d.is_connected() {
        return Err(Error::NotConnected("restriction to a vertex group needs a connected groupoid".into()));
    }
    let (grp, elems) = d.vertex_group(base);
    let out = Cochain::from_fn(&grp, c.degree(), |t| {
        let args: Vec<usize> = t.iter().map(|&i| elems[i]).collect();
        c.get(&args)
    });
    Ok((grp, elems, out))
}

/// Transports a cochain on the vertex group `D(O)` to `D` along `t`:
/// `c̃(a₁,…,aₙ) = ĉ(τ_{P₀} a₁ τ_{P₁}⁻¹, …)`. The cochain `chat` is indexed
/// by arrows of `D` lying in `D(O)`.
pub fn transport(d: &FiniteGroupoid, chat: &Cochain, t: &Transversal) -> Cochain {
    let conj = |a: usize| d.mul(d.mul(t.tau[d.src(a)], a), d.inverse(t.tau[d.tgt(a)]));
    Cochain::from_fn(d, chat.degree(), |args| {
        let c: Vec<usize> = args.iter().map(|&a| conj(a)).collect();
        chat.get(&c)
    })
}

/// Same as [`transport`], restricted to the tuples of a subgroupoid.
pub fn transport_on(d: &FiniteGroupoid, sub: &Subgroupoid, chat: &Cochain, t: &Transversal) -> Cochain {
    transport(d, chat, t).restrict(sub)
}

/// Finds a normalized `ψ` with `target − reference = dψ` on the tuples of
/// `sub` (all of `g` when `None`).
///
/// The system is solved over ℤ/M where M is the order of the difference
/// times a headroom factor; factors up to the exponent of the vertex groups
/// are tried in turn before giving up.
pub fn solve_coboundary(
    g: &FiniteGroupoid,
    sub: Option<&Subgroupoid>,
    target: &Cochain,
    reference: &Cochain,
    choice: FreeChoice,
) -> Result<Cochain> {
    let n = target.degree();
    if n < 2 || n != reference.degree() {
        return Err(Error::IncompatibleData("solve_coboundary needs two cochains of equal degree ≥ 2".into()));
    }
    let diff = target.sub(reference);
    let inside = |a: usize| sub.is_none_or(|s| s.contains(a));
    let all_tuples: Vec<Vec<usize>> = g
        .composable_tuples(n)
        .into_iter()
        .filter(|t| t.iter().all(|&a| inside(a)))
        .collect();
    let unknowns: Vec<Vec<usize>> = g
        .composable_tuples(n - 1)
        .into_iter()
        .filter(|t| t.iter().all(|&a| inside(a) && !g.is_identity(a)))
        .collect();
    let col: HashMap<Vec<usize>, usize> = unknowns.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let exponent = vertex_exponent(g);
    let base = diff.order();
    let mut tried = Vec::new();
    for factor in divisors(exponent) {
        let m = base * factor;
        tried.push(m);
        let mut rows = Vec::with_capacity(all_tuples.len());
        let mut rhs = Vec::with_capacity(all_tuples.len());
        for t in &all_tuples {
            rows.push(coboundary_row(g, t, &col));
            rhs.push(diff.get(t).exponent_mod(m).expect("order divides modulus"));
        }
        let sys = ModSystem {
            modulus: m,
            ncols: unknowns.len(),
            rows,
            rhs,
        };
        if let Some(x) = sys.solve(choice) {
            let mut psi = Cochain::zero(n - 1);
            for (t, &v) in unknowns.iter().zip(&x) {
                psi.set(t, Phase::from_exponent(v, m));
            }
            return Ok(psi);
        }
    }
    Err(Error::NoSolution(format!("difference is not a coboundary (moduli tried: {tried:?})")))
}

/// Coefficients of `(dψ)(t)` in the unknown values of `ψ`.
fn coboundary_row(g: &FiniteGroupoid, t: &[usize], col: &HashMap<Vec<usize>, usize>) -> Vec<(usize, i64)> {
    let n = t.len() - 1;
    let mut row = Vec::new();
    let mut push = |args: Vec<usize>, sign: i64| {
        if let Some(&c) = col.get(&args) {
            row.push((c, sign));
        }
    };
    push(t[1..].to_vec(), 1);
    for i in 0..n {
        let mut a = t[..i].to_vec();
        a.push(g.mul(t[i], t[i + 1]));
        a.extend_from_slice(&t[i + 2..]);
        push(a, if i % 2 == 0 { -1 } else { 1 });
    }
    push(t[..n].to_vec(), if n.is_multiple_of(2) { -1 } else { 1 });
    row
}

fn vertex_exponent(g: &FiniteGroupoid) -> u64 {
    let mut e = 1u64;
    for p in 0..g.n_objects() {
        e = e.lcm(&(g.hom(p, p).len() as u64));
    }
    e
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `ω̄ = ω̂ + dη` where `η` extends `∓ψ̂` by zero off `V`, the sign chosen
/// so that `ω̄` vanishes on `V`. Requires `ω̂|_V = ±dψ̂`. Returns `ω̄` and
/// `dη`.
pub fn trivialize_subgroup_cocycle(
    d: &FiniteGroupoid,
    ohat: &Cochain,
    v: &Subgroupoid,
    psihat: &Cochain,
) -> Result<(Cochain, Cochain)> {
    let on_v = ohat.restrict(v);
    let dpsi = coboundary(d, psihat).restrict(v);
    let eta = if on_v == dpsi {
        psihat.neg()
    } else if on_v == dpsi.neg() {
        psihat.clone()
    } else {
        return Err(Error::IncompatibleData("dψ̂ differs from ω̂ on V".into()));
    };
    let deta = coboundary(d, &eta);
    let obar = ohat.add(&deta);
    debug_assert!(obar.restrict(v).is_trivial());
    Ok((obar, deta))
}

/// Normalized μ₂-valued Opext pairs, described as an F₂ vector space.
///
/// Coordinates are the values of `σ` on nondegenerate vertically composable
/// pairs followed by those of `τ` on nondegenerate horizontally composable
/// pairs, `1` standing for the phase `1/2`.
#[derive(Clone, Debug)]
pub struct Mu2OpextSpace {
    pub sigma_vars: Vec<(usize, usize)>,
    pub tau_vars: Vec<(usize, usize)>,
    /// Basis of all Opext pairs.
    pub basis: Vec<BitVec>,
    /// Basis of the gauge pairs `(d_v φ, d_h φ)`.
    pub gauge: Vec<BitVec>,
    /// Vectors completing `gauge` to a basis of the whole space.
    pub classes: Vec<BitVec>,
}

impl Mu2OpextSpace {
    pub fn new(mp: &MatchedPair, bx: &Boxes) -> Self {
        let (bv, bh) = (&bx.vertical, &bx.horizontal);
        let nondeg = |g: &FiniteGroupoid| -> Vec<(usize, usize)> {
            g.composable_pairs()
                .into_iter()
                .filter(|&(a, b)| !g.is_identity(a) && !g.is_identity(b))
                .collect()
        };
        let sigma_vars = nondeg(bv);
        let tau_vars = nondeg(bh);
        let ns = sigma_vars.len();
        let ncols = ns + tau_vars.len();
        let s_idx: HashMap<(usize, usize), usize> = sigma_vars.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let t_idx: HashMap<(usize, usize), usize> = tau_vars.iter().enumerate().map(|(i, &k)| (k, i + ns)).collect();
        let mut rows: Vec<BitVec> = Vec::new();
        let flip = |row: &mut BitVec, c: Option<&usize>| {
            if let Some(&c) = c {
                let v = row[c];
                row.set(c, !v);
            }
        };
        for (g, idx) in [(bv, &s_idx), (bh, &t_idx)] {
            for t in g.composable_tuples(3) {
                let (a, b, c) = (t[0], t[1], t[2]);
                let mut row = bitvec![0; ncols];
                flip(&mut row, idx.get(&(b, c)));
                flip(&mut row, idx.get(&(g.mul(a, b), c)));
                flip(&mut row, idx.get(&(a, g.mul(b, c))));
                flip(&mut row, idx.get(&(a, b)));
                if row.any() {
                    rows.push(row);
                }
            }
        }
        for [a, b, c, d] in grids(mp, bx) {
            let mut row = bitvec![0; ncols];
            flip(&mut row, s_idx.get(&(bh.mul(a, b), bh.mul(c, d))));
            flip(&mut row, t_idx.get(&(bv.mul(a, c), bv.mul(b, d))));
            flip(&mut row, t_idx.get(&(a, b)));
            flip(&mut row, t_idx.get(&(c, d)));
            flip(&mut row, s_idx.get(&(a, c)));
            flip(&mut row, s_idx.get(&(b, d)));
            if row.any() {
                rows.push(row);
            }
        }
        let basis = f2_nullspace(&rows, ncols);

        // Gauge pairs from 1-cochains vanishing on both kinds of identity box.
        let mut gauge_gens = Vec::new();
        for a in 0..bx.len() {
            if bv.is_identity(a) || bh.is_identity(a) {
                continue;
            }
            let mut row = bitvec![0; ncols];
            for (g, idx) in [(bv, &s_idx), (bh, &t_idx)] {
                for (x, y) in g.composable_pairs() {
                    let hits = (y == a) as u8 + (g.mul(x, y) == a) as u8 + (x == a) as u8;
                    if hits % 2 == 1 {
                        flip(&mut row, idx.get(&(x, y)));
                    }
                }
            }
            gauge_gens.push(row);
        }
        let gauge = f2_complement(&[], &gauge_gens, ncols);
        let classes = f2_complement(&gauge, &basis, ncols);
        Mu2OpextSpace {
            sigma_vars,
            tau_vars,
            basis,
            gauge,
            classes,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ncols(&self) -> usize {
        self.sigma_vars.len() + self.tau_vars.len()
    }

    /// The concrete pair with coordinate vector `v`.
    pub fn pair(&self, v: &BitSlice) -> OpextPair {
        let mut p = OpextPair::trivial();
        let half = Phase::half();
        for i in v.iter_ones() {
            if i < self.sigma_vars.len() {
                let (a, b) = self.sigma_vars[i];
                p.sigma.set(&[a, b], half);
            } else {
                let (a, b) = self.tau_vars[i - self.sigma_vars.len()];
                p.tau.set(&[a, b], half);
            }
        }
        p
    }

    /// `Σ_i z_i · basis_i` for the bits of `z`.
    pub fn combine(&self, vectors: &[BitVec], z: u64) -> BitVec {
        let mut v = bitvec![0; self.ncols()];
        for (i, b) in vectors.iter().enumerate() {
            if z >> i & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    /// One representative of every gauge class.
    pub fn class_representatives(&self) -> Vec<OpextPair> {
        assert!(self.classes.len() < 24, "too many gauge classes to list");
        (0..1u64 << self.classes.len())
            .map(|z| self.pair(&self.combine(&self.classes, z)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroupoid {
        FiniteGroupoid::group(2, |a, b| a ^ b)
    }

    #[test]
    fn generator_of_h3_of_c2() {
        let g = c2();
        let mut w = Cochain::zero(3);
        w.set(&[1, 1, 1], Phase::half());
        assert!(is_cocycle(&g, &w));
        let r = solve_coboundary(&g, None, &w, &Cochain::zero(3), FreeChoice::Zero);
        assert!(matches!(r, Err(Error::NoSolution(_))));
    }

    #[test]
    fn coboundaries_are_solved() {
        let g = FiniteGroupoid::group(4, |a, b| (a + b) % 4);
        let mut psi = Cochain::zero(2);
        psi.set(&[1, 2], Phase::new(1, 4));
        psi.set(&[3, 3], Phase::new(1, 2));
        let w = coboundary(&g, &psi);
        for choice in [FreeChoice::Zero, FreeChoice::Shifted] {
            let sol = solve_coboundary(&g, None, &w, &Cochain::zero(3), choice).unwrap();
            assert_eq!(coboundary(&g, &sol), w);
        }
    }

    #[test]
    fn degree_one_needs_headroom() {
        // dχ(s,s) = 2χ(s) = 1/2 forces χ(s) of order four.
        let g = c2();
        let mut c = Cochain::zero(2);
        c.set(&[1, 1], Phase::half());
        let chi = solve_coboundary(&g, None, &c, &Cochain::zero(2), FreeChoice::Zero).unwrap();
        assert_eq!(coboundary(&g, &chi), c);
        assert_eq!(chi.get(&[1]).denominator(), 4);
    }
}
