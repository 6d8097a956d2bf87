//! The test sweep: small groupoids, all their exact factorizations and all
//! normalized μ₂-valued Opext pairs, each run through the whole pipeline.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{check_opext_pair, Mu2OpextSpace, OpextPair};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::groups::{cyclic, dihedral};
use crate::matched_pair::{enumerate_exact_factorizations, from_exact_factorization, Boxes, MatchedPair, DEFAULT_ENUMERATION_BOUND};
use crate::tensor_cats::{certify_equivalence, ModuleSide, ReductionChoices, RepCategory};
use crate::weak_hopf::build_weak_hopf;

/// Largest accepted sweep bound, in arrows of the ambient groupoid.
pub const MAX_SWEEP_BOUND: usize = DEFAULT_ENUMERATION_BOUND;

/// The ambient groupoids of the sweep, in canonical order.
pub fn sweep_families() -> Vec<(String, FiniteGroupoid)> {
    let c2 = cyclic(2);
    let mut out = vec![("C2xC2".to_string(), c2.product(&c2)), ("S3".into(), dihedral(3)), ("C6".into(), cyclic(6))];
    for n in 1..=3 {
        out.push((format!("Pair{n}"), FiniteGroupoid::pair(n)));
    }
    out.push(("GPD6".into(), FiniteGroupoid::pair(2).product(&c2)));
    out
}

#[derive(Clone, Debug)]
pub struct SweepCase {
    pub family: String,
    pub factorization: usize,
    pub v: Vec<usize>,
    pub h: Vec<usize>,
    /// Coordinates of the pair in the basis of the μ₂ Opext space, as bits.
    pub pair_index: u64,
    pub mp: MatchedPair,
    pub pair: OpextPair,
}

/// Every case over ambient groupoids with at most `bound` arrows.
pub fn sweep_cases(bound: usize) -> Result<Vec<SweepCase>> {
    if bound > MAX_SWEEP_BOUND {
        return Err(Error::BoundExceeded {
            found: bound,
            bound: MAX_SWEEP_BOUND,
        });
    }
    let mut out = Vec::new();
    for (family, d) in sweep_families() {
        if d.n_arrows() > bound {
            continue;
        }
        for (i, (v, h)) in enumerate_exact_factorizations(&d, bound)?.into_iter().enumerate() {
            let (mp, _) = from_exact_factorization(&d, &v, &h)?;
            let space = Mu2OpextSpace::new(&mp, &Boxes::new(&mp));
            for z in 0..1u64 << space.dim() {
                out.push(SweepCase {
                    family: family.clone(),
                    factorization: i,
                    v: v.arrows.clone(),
                    h: h.arrows.clone(),
                    pair_index: z,
                    pair: space.pair(&space.combine(&space.basis, z)),
                    mp: mp.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub factorization: usize,
    pub v: Vec<usize>,
    pub h: Vec<usize>,
    pub pair: u64,
    pub boxes: usize,
    pub v_connected: bool,
    pub axioms: bool,
    pub counital: bool,
    pub unit_simple: bool,
    /// Ranks of the rep, bimodule and group-side rings when `V` is connected.
    pub ranks: Option<[usize; 3]>,
    pub sum_of_squares: Option<usize>,
    pub certified: Option<bool>,
    pub pass: bool,
    pub detail: String,
}

/// Runs one case. Failures of any stage are reported in the row.
pub fn run_case(case: &SweepCase, seed: u64) -> SweepRow {
    let mut row = SweepRow {
        family: case.family.clone(),
        factorization: case.factorization,
        v: case.v.clone(),
        h: case.h.clone(),
        pair: case.pair_index,
        ..SweepRow::default()
    };
    match evaluate(case, seed, &mut row) {
        Ok(()) => row.pass = row.detail.is_empty(),
        Err(e) => {
            row.pass = false;
            row.detail = e.to_string();
        }
    }
    row
}

fn evaluate(case: &SweepCase, seed: u64, row: &mut SweepRow) -> Result<()> {
    let fail = |row: &mut SweepRow, msg: &str| {
        if !row.detail.is_empty() {
            row.detail.push_str("; ");
        }
        row.detail.push_str(msg);
    };
    let mp_report = case.mp.validate();
    if !mp_report.is_valid() {
        return Err(Error::InvalidMatchedPair(mp_report.to_string()));
    }
    let bx = Boxes::new(&case.mp);
    row.boxes = bx.len();
    let pair_report = check_opext_pair(&case.mp, &bx, &case.pair);
    if !pair_report.is_valid() {
        return Err(Error::InvalidPair(pair_report.to_string()));
    }
    row.v_connected = case.mp.vertical().is_connected();

    let wha = build_weak_hopf(&case.mp, &case.pair)?;
    row.axioms = wha.verify_axioms().is_valid();
    if !row.axioms {
        fail(row, "weak Hopf axioms");
    }
    let c = wha.counital_subalgebras(&case.mp)?;
    let n = case.mp.n_objects();
    row.counital = [&c.source, &c.target].iter().all(|s| s.dim == n && s.commutative);
    if !row.counital {
        fail(row, "counital subalgebras");
    }
    let rep = RepCategory::new(&case.mp, &case.pair, ModuleSide::Right, seed)?;
    row.unit_simple = rep.unit_is_simple()?;
    if row.unit_simple != row.v_connected {
        fail(row, "unit simplicity differs from connectedness of V");
    }
    if row.v_connected {
        let cert = certify_equivalence(&case.mp, &case.pair, ReductionChoices::default(), seed)?;
        row.ranks = Some([cert.rep.rank(), cert.bimodule.rank(), cert.group.rank()]);
        row.sum_of_squares = Some(cert.sum_of_squares);
        row.certified = Some(cert.passed());
        if !cert.passed() {
            fail(row, "fusion rings not certified isomorphic");
        }
    }
    Ok(())
}

/// Runs all cases in parallel and sorts the rows canonically.
pub fn run_sweep(cases: &[SweepCase], seed: u64) -> Vec<SweepRow> {
    let mut rows: Vec<SweepRow> = cases.par_iter().map(|c| run_case(c, seed)).collect();
    rows.sort_by(|a, b| (&a.family, a.factorization, a.pair).cmp(&(&b.family, b.factorization, b.pair)));
    rows
}

fn list(v: &[usize]) -> String {
    v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

pub fn rows_to_tsv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "family\tfactorization\tV\tH\tpair\tboxes\tv_connected\taxioms\tcounital\tunit_simple\tranks\tsum_dim2\tcertified\tstatus\tdetail\n",
    );
    let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.family,
            r.factorization,
            list(&r.v),
            list(&r.h),
            r.pair,
            r.boxes,
            r.v_connected,
            r.axioms,
            r.counital,
            r.unit_simple,
            opt(r.ranks.map(|k| list(&k))),
            opt(r.sum_of_squares.map(|s| s.to_string())),
            opt(r.certified.map(|c| c.to_string())),
            if r.pass { "PASS" } else { "FAIL" },
            r.detail.replace(['\t', '\n'], " "),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_zero_is_empty() {
        assert!(sweep_cases(0).unwrap().is_empty());
        assert!(rows_to_tsv(&run_sweep(&[], 0)).lines().count() == 1);
    }

    #[test]
    fn bound_above_maximum_is_rejected() {
        assert!(matches!(sweep_cases(MAX_SWEEP_BOUND + 1), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn small_sweep_passes() {
        let rows = run_sweep(&sweep_cases(4).unwrap(), 3);
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.pass), "{}", rows_to_tsv(&rows));
        assert!(rows.iter().any(|r| !r.v_connected));
    }

    #[test]
    fn corrupted_cases_fail() {
        let base = sweep_cases(6).unwrap().into_iter().find(|c| c.family == "S3" && c.v.len() == 3).unwrap();
        assert!(run_case(&base, 0).pass);

        let mut bad_pair = base.clone();
        bad_pair.pair.sigma.set(&[0, 0], crate::Phase::half());
        assert!(!run_case(&bad_pair, 0).pass);

        let (mut l, r) = base.mp.action_tables();
        let e = l.iter_mut().find(|e| e[1] != 0).unwrap();
        e[2] = if e[2] == 1 { 2 } else { 1 };
        let mut bad_mp = base.clone();
        bad_mp.mp = MatchedPair::from_tables(base.mp.horizontal().clone(), base.mp.vertical().clone(), &l, &r).unwrap();
        let row = run_case(&bad_mp, 0);
        assert!(!row.pass && row.detail.contains("matched pair"), "{}", row.detail);
    }
}
