//! `mpkit`: command-line front end for the matched-pair toolkit.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure,
//! 2 on unreadable or malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use mpkit_core::cohomology::{
    check_opext_pair, is_cocycle, kac_cocycle, kac_properties, solve_coboundary, OpextPair,
};
use mpkit_core::fixtures;
use mpkit_core::groupoid::{Subgroupoid, TransversalRule};
use mpkit_core::io::{self, FactorizationFile, MatchedPairFile};
use mpkit_core::linalg::FreeChoice;
use mpkit_core::matched_pair::{enumerate_exact_factorizations, from_exact_factorization, Boxes, Diagonal, MatchedPair};
use mpkit_core::sweep::{rows_to_tsv, run_sweep, sweep_cases, SweepCase};
use mpkit_core::tensor_cats::{
    certify_equivalence, group_theoretical_data, BimoduleCategory, FusionRing, ModuleSide, ReductionChoices,
    RepCategory,
};
use mpkit_core::weak_hopf::build_weak_hopf;
use mpkit_core::{Error, ValidationReport};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Io(_)
            | Error::InvalidGroupoid(_)
            | Error::InvalidMatchedPair(_)
            | Error::BoundExceeded { .. }
            | Error::MismatchedCarrier => CliError::Input(e.to_string()),
            other => CliError::Math(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Whether a command's checks all held.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Parser)]
#[command(name = "mpkit", version, about = "Matched pairs of groupoids, twisted weak Hopf algebras and their fusion rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct PairArgs {
    /// Matched-pair file.
    #[arg(long)]
    mp: PathBuf,
    /// Vertical 2-cocycle on boxes; trivial when omitted.
    #[arg(long)]
    sigma: Option<PathBuf>,
    /// Horizontal 2-cocycle on boxes; trivial when omitted.
    #[arg(long)]
    tau: Option<PathBuf>,
}

#[derive(clap::Args, Clone)]
struct OutArg {
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Side {
    Rep,
    RepLeft,
    Bimodule,
    Group,
}

#[derive(Copy, Clone, ValueEnum)]
enum Rule {
    Smallest,
    Largest,
}

#[derive(Copy, Clone, ValueEnum)]
enum Choice {
    Zero,
    Shifted,
}

#[derive(clap::Args, Clone)]
struct ChoiceArgs {
    /// Base object of the reduction.
    #[arg(long, default_value_t = 0)]
    base: usize,
    /// Transversal rule.
    #[arg(long, value_enum, default_value = "smallest")]
    rule: Rule,
    /// Assignment of free variables in the coboundary solve.
    #[arg(long, value_enum, default_value = "zero")]
    choice: Choice,
}

impl ChoiceArgs {
    fn choices(&self) -> ReductionChoices {
        ReductionChoices {
            base: self.base,
            rule: match self.rule {
                Rule::Smallest => TransversalRule::Smallest,
                Rule::Largest => TransversalRule::Largest,
            },
            choice: free_choice(self.choice),
        }
    }
}

fn free_choice(c: Choice) -> FreeChoice {
    match c {
        Choice::Zero => FreeChoice::Zero,
        Choice::Shifted => FreeChoice::Shifted,
    }
}

#[derive(Subcommand)]
enum Command {
    /// Checks the groupoid axioms, and optionally that a subgroupoid is wide.
    Validate {
        #[arg(long)]
        groupoid: PathBuf,
        /// JSON array of arrow indices.
        #[arg(long)]
        sub: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Checks the matched-pair axioms.
    ValidateMp {
        #[arg(long)]
        mp: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lists the exact factorizations of a groupoid, or recovers the matched
    /// pair of one given factorization.
    Factorize {
        #[arg(long)]
        ambient: PathBuf,
        /// Factorization file with `v` and `h` arrow lists.
        #[arg(long)]
        factorization: Option<PathBuf>,
        #[arg(long, default_value_t = mpkit_core::matched_pair::DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lists the boxes of a matched pair.
    Boxes {
        #[arg(long)]
        mp: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Checks that (σ, τ) is a normalized Opext pair.
    CheckOpext {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Computes the Kac 3-cocycle on the diagonal groupoid.
    Kac {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Finds ψ with target − reference = dψ.
    SolveCoboundary {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Trivial when omitted.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Restrict to the tuples of this subgroupoid (JSON array of arrows).
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "zero")]
        choice: Choice,
        #[command(flatten)]
        out: OutArg,
    },
    /// Builds the weak Hopf algebra and verifies its axioms.
    BuildWha {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Computes one fusion ring.
    Fusion {
        #[arg(long, value_enum)]
        side: Side,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        choices: ChoiceArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the structure constants as TSV.
        #[arg(long)]
        tsv: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Computes the rep, bimodule and group-side rings and certifies that
    /// they are isomorphic.
    CertifyEquivalence {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        choices: ChoiceArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for the four fusion tables as TSV.
        #[arg(long)]
        tsv_dir: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Runs the sweep over small groupoids and all μ₂ Opext pairs.
    Sweep {
        /// Largest ambient groupoid, in arrows.
        #[arg(long, default_value_t = 9)]
        bound: usize,
        /// Extra matched pair to run as a case.
        #[arg(long)]
        inject: Option<PathBuf>,
        #[arg(long, requires = "inject")]
        inject_sigma: Option<PathBuf>,
        #[arg(long, requires = "inject")]
        inject_tau: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Summary TSV path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the worked-example fixture files.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

/// Reproducibility record attached to every JSON output.
#[derive(Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<String>,
    seed: Option<u64>,
    cyclotomic_order: Option<u64>,
    bound: Option<usize>,
    output: Option<String>,
}

impl RunManifest {
    fn new(command: &str, inputs: &[Option<&Path>]) -> Self {
        RunManifest {
            command: command.into(),
            inputs: inputs.iter().flatten().map(|p| p.display().to_string()).collect(),
            seed: None,
            cyclotomic_order: None,
            bound: None,
            output: None,
        }
    }
}

fn emit(manifest: RunManifest, out: &OutArg, result: Value) -> CliResult<()> {
    let mut manifest = manifest;
    manifest.output = out.out.as_ref().map(|p| p.display().to_string());
    let doc = json!({ "manifest": manifest, "result": result });
    let text = io::to_json(&doc);
    match &out.out {
        Some(p) => io::write_file(p, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable value")
}

fn report_value(r: &ValidationReport) -> Value {
    json!({ "valid": r.is_valid(), "violations": r.violations })
}

fn load_valid_mp(path: &Path) -> CliResult<MatchedPair> {
    let mp = io::load_matched_pair(path)?;
    for (name, g) in [("horizontal", mp.horizontal()), ("vertical", mp.vertical())] {
        let r = g.validate();
        if !r.is_valid() {
            return Err(CliError::Math(format!("{name} groupoid is invalid: {r}")));
        }
    }
    let r = mp.validate();
    if !r.is_valid() {
        return Err(CliError::Math(format!("not a matched pair: {r}")));
    }
    Ok(mp)
}

fn load_pair_args(a: &PairArgs) -> CliResult<(MatchedPair, OpextPair)> {
    let mp = load_valid_mp(&a.mp)?;
    let p = io::load_pair(a.sigma.as_deref(), a.tau.as_deref())?;
    let r = check_opext_pair(&mp, &Boxes::new(&mp), &p);
    if !r.is_valid() {
        return Err(CliError::Math(format!("not an Opext pair: {r}")));
    }
    Ok((mp, p))
}

fn pair_manifest(command: &str, a: &PairArgs) -> RunManifest {
    RunManifest::new(command, &[Some(&a.mp), a.sigma.as_deref(), a.tau.as_deref()])
}

fn load_sub(path: &Path) -> CliResult<Subgroupoid> {
    Ok(Subgroupoid::new(io::read_json::<Vec<usize>>(path)?))
}

fn run(cmd: Command) -> CliResult<Status> {
    match cmd {
        Command::Validate { groupoid, sub, out } => {
            let g = io::load_groupoid(&groupoid)?;
            let mut rep = g.validate();
            if let Some(s) = &sub {
                rep.merge(load_sub(s)?.validate_wide(&g));
            }
            let rep = rep.finish();
            let result = json!({
                "report": report_value(&rep),
                "objects": g.n_objects(),
                "arrows": g.n_arrows(),
                "components": g.connected_components(),
            });
            emit(RunManifest::new("validate", &[Some(&groupoid), sub.as_deref()]), &out, result)?;
            Ok(Status::from_bool(rep.is_valid()))
        }
        Command::ValidateMp { mp, out } => {
            let m = io::load_matched_pair(&mp)?;
            let mut rep = m.horizontal().validate();
            rep.merge(m.vertical().validate());
            if rep.is_valid() {
                rep.merge(m.validate());
            }
            let rep = rep.finish();
            let mut result = json!({ "report": report_value(&rep) });
            if rep.is_valid() {
                result["boxes"] = json!(m.box_count());
                result["vertical_connected"] = json!(m.vertical().is_connected());
            }
            emit(RunManifest::new("validate-mp", &[Some(&mp)]), &out, result)?;
            Ok(Status::from_bool(rep.is_valid()))
        }
        Command::Factorize {
            ambient,
            factorization,
            bound,
            out,
        } => {
            let d = io::load_groupoid(&ambient)?;
            let rep = d.validate();
            if !rep.is_valid() {
                return Err(CliError::Math(format!("ambient groupoid is invalid: {rep}")));
            }
            let pairs = match &factorization {
                Some(f) => {
                    let f: FactorizationFile = io::read_json(f)?;
                    vec![(Subgroupoid::new(f.v), Subgroupoid::new(f.h))]
                }
                None => enumerate_exact_factorizations(&d, bound)?,
            };
            let mut list = Vec::new();
            for (v, h) in pairs {
                let (mp, _) = from_exact_factorization(&d, &v, &h)?;
                list.push(json!({ "v": v.arrows, "h": h.arrows, "matched_pair": MatchedPairFile::inline(&mp) }));
            }
            let mut m = RunManifest::new("factorize", &[Some(&ambient), factorization.as_deref()]);
            m.bound = Some(bound);
            emit(m, &out, json!({ "factorizations": list }))?;
            Ok(Status::Pass)
        }
        Command::Boxes { mp, out } => {
            let m = load_valid_mp(&mp)?;
            let bx = Boxes::new(&m);
            let boxes: Vec<Value> = (0..bx.len())
                .map(|a| json!({ "id": a, "top": bx.top(a), "right": bx.right(a), "left": bx.left[a], "bottom": bx.bottom[a] }))
                .collect();
            emit(RunManifest::new("boxes", &[Some(&mp)]), &out, json!({ "count": bx.len(), "boxes": boxes }))?;
            Ok(Status::Pass)
        }
        Command::CheckOpext { pair, out } => {
            let mp = load_valid_mp(&pair.mp)?;
            let p = io::load_pair(pair.sigma.as_deref(), pair.tau.as_deref())?;
            let rep = check_opext_pair(&mp, &Boxes::new(&mp), &p);
            emit(pair_manifest("check-opext", &pair), &out, json!({ "report": report_value(&rep) }))?;
            Ok(Status::from_bool(rep.is_valid()))
        }
        Command::Kac { pair, out } => {
            let (mp, p) = load_pair_args(&pair)?;
            let bx = Boxes::new(&mp);
            let diag = Diagonal::new(&mp);
            let omega = kac_cocycle(&mp, &bx, &diag, &p);
            let cocycle = is_cocycle(&diag.groupoid, &omega);
            let props = kac_properties(&mp, &bx, &diag, &p, &omega);
            let mut m = pair_manifest("kac", &pair);
            m.cyclotomic_order = Some(p.order());
            let result = json!({
                "diagonal": diag.groupoid.to_spec(),
                "diagonal_arrows": diag.pairs,
                "omega": omega.to_spec(),
                "is_cocycle": cocycle,
                "properties": report_value(&props),
            });
            emit(m, &out, result)?;
            Ok(Status::from_bool(cocycle && props.is_valid()))
        }
        Command::SolveCoboundary {
            groupoid,
            target,
            reference,
            degree,
            sub,
            choice,
            out,
        } => {
            let g = io::load_groupoid(&groupoid)?;
            if !g.validate().is_valid() {
                return Err(CliError::Math("groupoid is invalid".into()));
            }
            let t = io::load_cochain(&target, degree)?;
            let r = match &reference {
                Some(p) => io::load_cochain(p, degree)?,
                None => mpkit_core::cohomology::Cochain::zero(degree),
            };
            let s = sub.as_deref().map(load_sub).transpose()?;
            let m = RunManifest::new(
                "solve-coboundary",
                &[Some(&groupoid), Some(&target), reference.as_deref(), sub.as_deref()],
            );
            match solve_coboundary(&g, s.as_ref(), &t, &r, free_choice(choice)) {
                Ok(psi) => {
                    emit(m, &out, json!({ "solved": true, "psi": psi.to_spec() }))?;
                    Ok(Status::Pass)
                }
                Err(Error::NoSolution(why)) => {
                    emit(m, &out, json!({ "solved": false, "reason": why }))?;
                    Ok(Status::Fail)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::BuildWha { pair, out } => {
            let (mp, p) = load_pair_args(&pair)?;
            let wha = build_weak_hopf(&mp, &p)?;
            let rep = wha.verify_axioms();
            let counital = wha.counital_subalgebras(&mp)?;
            let mut m = pair_manifest("build-wha", &pair);
            m.cyclotomic_order = Some(p.order().max(1));
            let result = json!({
                "algebra": to_value(&wha.export()),
                "axioms": report_value(&rep),
                "counital": to_value(&counital),
            });
            emit(m, &out, result)?;
            Ok(Status::from_bool(rep.is_valid()))
        }
        Command::Fusion {
            side,
            pair,
            choices,
            seed,
            tsv,
            out,
        } => {
            let (mp, p) = load_pair_args(&pair)?;
            let ring = fusion_ring(side, &mp, &p, choices.choices(), seed)?;
            if let Some(path) = &tsv {
                io::write_file(path, &ring.to_tsv())?;
            }
            let mut m = pair_manifest("fusion", &pair);
            m.seed = Some(seed);
            m.cyclotomic_order = Some(p.order().max(1));
            emit(m, &out, json!({ "ring": to_value(&ring), "checks": report_value(&ring.validate()) }))?;
            Ok(Status::Pass)
        }
        Command::CertifyEquivalence {
            pair,
            choices,
            seed,
            tsv_dir,
            out,
        } => {
            let (mp, p) = load_pair_args(&pair)?;
            let cert = certify_equivalence(&mp, &p, choices.choices(), seed)?;
            if let Some(dir) = &tsv_dir {
                for (name, ring) in [
                    ("rep", &cert.rep),
                    ("rep_left", &cert.rep_left),
                    ("bimodule", &cert.bimodule),
                    ("group", &cert.group),
                ] {
                    io::write_file(&dir.join(format!("{name}.tsv")), &ring.to_tsv())?;
                }
            }
            let mut m = pair_manifest("certify-equivalence", &pair);
            m.seed = Some(seed);
            m.cyclotomic_order = Some(p.order().max(1));
            let passed = cert.passed();
            emit(m, &out, json!({ "passed": passed, "certificate": to_value(&cert) }))?;
            Ok(Status::from_bool(passed))
        }
        Command::Sweep {
            bound,
            inject,
            inject_sigma,
            inject_tau,
            seed,
            out,
        } => {
            let mut cases = sweep_cases(bound)?;
            if let Some(path) = &inject {
                let name = path.file_stem().map_or("injected".into(), |s| s.to_string_lossy().into_owned());
                let mp = io::load_matched_pair(path)?;
                let pair = io::load_pair(inject_sigma.as_deref(), inject_tau.as_deref())?;
                cases.push(injected_case(&name, mp, pair));
            }
            let rows = run_sweep(&cases, seed);
            let tsv = rows_to_tsv(&rows);
            match &out {
                Some(p) => io::write_file(p, &tsv)?,
                None => print!("{tsv}"),
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            eprintln!("{} case(s), {failed} failed", rows.len());
            Ok(Status::from_bool(failed == 0))
        }
        Command::Fixtures { out } => {
            for f in fixtures::all() {
                for p in io::write_fixture(&out, &f)? {
                    println!("{}", p.display());
                }
            }
            Ok(Status::Pass)
        }
    }
}

fn injected_case(name: &str, mp: MatchedPair, pair: OpextPair) -> SweepCase {
    SweepCase {
        family: format!("injected:{name}"),
        factorization: 0,
        v: (0..mp.vertical().n_arrows()).collect(),
        h: (0..mp.horizontal().n_arrows()).collect(),
        pair_index: 0,
        mp,
        pair,
    }
}

fn fusion_ring(side: Side, mp: &MatchedPair, p: &OpextPair, choices: ReductionChoices, seed: u64) -> CliResult<FusionRing> {
    let ring = match side {
        Side::Rep => RepCategory::new(mp, p, ModuleSide::Right, seed)?.fusion_ring()?,
        Side::RepLeft => RepCategory::new(mp, p, ModuleSide::Left, seed)?.fusion_ring()?,
        Side::Bimodule => {
            let diag = Diagonal::new(mp);
            let omega = kac_cocycle(mp, &Boxes::new(mp), &diag, p);
            let v = diag.vertical_part(mp);
            let zero = mpkit_core::cohomology::Cochain::zero(2);
            BimoduleCategory::new(&diag.groupoid, &v, &omega, &zero, seed)?.fusion_ring()?
        }
        Side::Group => {
            let data = group_theoretical_data(mp, p, choices)?;
            let zero = mpkit_core::cohomology::Cochain::zero(2);
            BimoduleCategory::new(&data.group, &data.subgroup, &data.omega_bar, &zero, seed)?.fusion_ring()?
        }
    };
    Ok(ring)
}

fn configure_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("MPKIT_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Input(format!("MPKIT_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(CliError::Input("MPKIT_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Input(e)) => {
            eprintln!("input error: {e}");
            ExitCode::from(2)
        }
    }
}
