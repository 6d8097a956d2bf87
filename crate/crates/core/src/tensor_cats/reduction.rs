//! Reduction of the Rep category of a matched pair with connected `V` to
//! a group-theoretical category `C(D(O), ω̄, V(O))`, and the certificate
//! that all three Grothendieck rings agree.

use serde::Serialize;

use super::bimodule::BimoduleCategory;
use super::fusion::{fusion_ring_isomorphic, FusionRing};
use super::rep::{ModuleSide, RepCategory};
use crate::cohomology::{
    check_opext_pair, coboundary, is_cocycle, kac_cocycle, kac_properties, restrict_to_vertex, solve_coboundary,
    transport, trivialize_subgroup_cocycle, Cochain, CochainSpec, OpextPair,
};
use crate::error::{Error, Result};
use crate::groupoid::{choose_transversal, FiniteGroupoid, Subgroupoid, Transversal, TransversalRule};
use crate::linalg::FreeChoice;
use crate::matched_pair::{Boxes, Diagonal, MatchedPair};

/// The non-canonical choices of the reduction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ReductionChoices {
    pub base: usize,
    pub rule: TransversalRule,
    pub choice: FreeChoice,
}

/// A named check of the pipeline and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

/// Output of the reduction. Cochains on `D` use arrow ids of the diagonal
/// groupoid; cochains on the group use its element numbering, in which
/// element `i` is the arrow `elems[i]` of `D`.
#[derive(Clone, Debug)]
pub struct GroupTheoreticalData {
    pub diagonal: FiniteGroupoid,
    pub v: Subgroupoid,
    pub transversal: Transversal,
    pub group: FiniteGroupoid,
    pub elems: Vec<usize>,
    pub subgroup: Subgroupoid,
    /// Kac cocycle on `D`.
    pub omega: Cochain,
    /// `ω̂ = ω|_{D(O)}`.
    pub omega_hat: Cochain,
    /// `ω̃`, the transport of `ω̂` back to `D`.
    pub omega_tilde: Cochain,
    /// `ψ` on `D` with `ω̃ − ω = dψ`.
    pub psi: Cochain,
    /// `ψ̂ = ψ|_{V(O)}`.
    pub psi_hat: Cochain,
    /// `ω̄`, cohomologous to `ω̂` and trivial on `V(O)`.
    pub omega_bar: Cochain,
    pub checks: Vec<Check>,
}

impl GroupTheoreticalData {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

pub fn group_theoretical_data(mp: &MatchedPair, p: &OpextPair, choices: ReductionChoices) -> Result<GroupTheoreticalData> {
    let bx = Boxes::new(mp);
    let rep = check_opext_pair(mp, &bx, p);
    if !rep.is_valid() {
        return Err(Error::InvalidPair(rep.to_string()));
    }
    let diag = Diagonal::new(mp);
    let d = &diag.groupoid;
    let v = diag.vertical_part(mp);
    if !mp.vertical().is_connected() {
        return Err(Error::NotConnected("the vertical groupoid is not connected".into()));
    }
    let mut checks = Vec::new();
    let mut check = |name: &str, ok: bool| {
        checks.push(Check {
            name: name.to_string(),
            ok,
        })
    };
    let omega = kac_cocycle(mp, &bx, &diag, p);
    check("ω is a 3-cocycle", is_cocycle(d, &omega));
    check("ω satisfies the Kac properties", kac_properties(mp, &bx, &diag, p, &omega).is_valid());
    check("ω vanishes on V", omega.restrict(&v).is_trivial());

    let transversal = choose_transversal(d, &v, choices.base, choices.rule)?;
    let (group, elems, omega_hat) = restrict_to_vertex(d, &omega, choices.base)?;
    check("ω̂ is a 3-cocycle", is_cocycle(&group, &omega_hat));
    let omega_tilde = transport(d, &omega, &transversal);
    check("ω̃ is a 3-cocycle", is_cocycle(d, &omega_tilde));
    let psi = solve_coboundary(d, None, &omega_tilde, &omega, choices.choice)?;
    check("ω̃ − ω = dψ", coboundary(d, &psi) == omega_tilde.sub(&omega));

    let subgroup = Subgroupoid::new((0..elems.len()).filter(|&i| v.contains(elems[i])).collect());
    let mut pos = vec![usize::MAX; d.n_arrows()];
    for (i, &a) in elems.iter().enumerate() {
        pos[a] = i;
    }
    let vo_in_d = Subgroupoid::new(subgroup.arrows.iter().map(|&i| elems[i]).collect());
    let psi_hat = psi.restrict(&vo_in_d).relabel(&pos);
    let (omega_bar, deta) = trivialize_subgroup_cocycle(&group, &omega_hat, &subgroup, &psi_hat)?;
    check("ω̄ is a 3-cocycle", is_cocycle(&group, &omega_bar));
    check("ω̄ vanishes on V(O)", omega_bar.restrict(&subgroup).is_trivial());
    check("ω̄ − ω̂ is a coboundary", omega_bar.sub(&omega_hat) == deta);
    Ok(GroupTheoreticalData {
        diagonal: d.clone(),
        v,
        transversal,
        group,
        elems,
        subgroup,
        omega,
        omega_hat,
        omega_tilde,
        psi,
        psi_hat,
        omega_bar,
        checks,
    })
}

/// The three Grothendieck rings and the bijections between them.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceCertificate {
    pub seed: u64,
    pub choices: ReductionChoices,
    pub rep: FusionRing,
    pub rep_left: FusionRing,
    pub bimodule: FusionRing,
    pub group: FusionRing,
    pub rep_to_left: Option<Vec<usize>>,
    pub rep_to_bimodule: Option<Vec<usize>>,
    pub rep_to_group: Option<Vec<usize>>,
    pub bimodule_to_group: Option<Vec<usize>>,
    /// `Σ dim(S)²` over simple modules, and the number of boxes.
    pub sum_of_squares: usize,
    pub algebra_dim: usize,
    pub cocycles: CertificateCocycles,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateCocycles {
    pub omega: CochainSpec,
    pub omega_hat: CochainSpec,
    pub psi: CochainSpec,
    pub omega_bar: CochainSpec,
    pub transversal: Transversal,
    pub subgroup: Vec<usize>,
}

impl EquivalenceCertificate {
    pub fn passed(&self) -> bool {
        self.rep_to_bimodule.is_some()
            && self.rep_to_group.is_some()
            && self.bimodule_to_group.is_some()
            && self.sum_of_squares == self.algebra_dim
            && self.checks.iter().all(|c| c.ok)
    }
}

/// Computes the rep, bimodule and group-side rings and compares them.
pub fn certify_equivalence(mp: &MatchedPair, p: &OpextPair, choices: ReductionChoices, seed: u64) -> Result<EquivalenceCertificate> {
    let data = group_theoretical_data(mp, p, choices)?;
    let rep = RepCategory::new(mp, p, ModuleSide::Right, seed)?;
    let left = RepCategory::new(mp, p, ModuleSide::Left, seed)?;
    let sum_of_squares = rep.simples().iter().map(|s| s.total_dim().pow(2)).sum();
    let bim = BimoduleCategory::new(&data.diagonal, &data.v, &data.omega, &Cochain::zero(2), seed)?;
    let grp = BimoduleCategory::new(&data.group, &data.subgroup, &data.omega_bar, &Cochain::zero(2), seed)?;
    let (r, l, b, g) = (rep.fusion_ring()?, left.fusion_ring()?, bim.fusion_ring()?, grp.fusion_ring()?);
    Ok(EquivalenceCertificate {
        seed,
        choices,
        rep_to_left: fusion_ring_isomorphic(&r, &l),
        rep_to_bimodule: fusion_ring_isomorphic(&r, &b),
        rep_to_group: fusion_ring_isomorphic(&r, &g),
        bimodule_to_group: fusion_ring_isomorphic(&b, &g),
        rep: r,
        rep_left: l,
        bimodule: b,
        group: g,
        sum_of_squares,
        algebra_dim: rep.boxes.len(),
        cocycles: CertificateCocycles {
            omega: data.omega.to_spec(),
            omega_hat: data.omega_hat.to_spec(),
            psi: data.psi.to_spec(),
            omega_bar: data.omega_bar.to_spec(),
            transversal: data.transversal.clone(),
            subgroup: data.subgroup.arrows.clone(),
        },
        checks: data.checks,
    })
}
