//! File formats: groupoids, matched pairs and cochains as JSON.
//!
//! A matched-pair file names its two groupoids either by a path, resolved
//! relative to the matched-pair file, or inline:
//!
//! ```json
//! {"horizontal": "h.json", "vertical": {"objects": 1, ...},
//!  "act_left": [[x, g, x▷g], ...], "act_right": [[x, g, x◁g], ...]}
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cohomology::{Cochain, CochainSpec, OpextPair};
use crate::error::{Error, ParseError, Result};
use crate::fixtures::Fixture;
use crate::groupoid::{FiniteGroupoid, GroupoidSpec};
use crate::matched_pair::MatchedPair;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidRef {
    Path(String),
    Inline(GroupoidSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPairFile {
    pub horizontal: GroupoidRef,
    pub vertical: GroupoidRef,
    pub act_left: Vec<[usize; 3]>,
    pub act_right: Vec<[usize; 3]>,
}

impl MatchedPairFile {
    pub fn inline(mp: &MatchedPair) -> Self {
        let (act_left, act_right) = mp.action_tables();
        MatchedPairFile {
            horizontal: GroupoidRef::Inline(mp.horizontal().to_spec()),
            vertical: GroupoidRef::Inline(mp.vertical().to_spec()),
            act_left,
            act_right,
        }
    }

    /// Builds the matched pair without checking its axioms.
    pub fn resolve(&self, dir: &Path) -> Result<MatchedPair> {
        let get = |r: &GroupoidRef| match r {
            GroupoidRef::Path(p) => load_groupoid(&dir.join(p)),
            GroupoidRef::Inline(spec) => FiniteGroupoid::from_spec(spec),
        };
        MatchedPair::from_tables(get(&self.horizontal)?, get(&self.vertical)?, &self.act_left, &self.act_right)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ParseError::Schema(format!("{}: {e}", path.display())).into())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_groupoid(path: &Path) -> Result<FiniteGroupoid> {
    FiniteGroupoid::from_spec(&read_json::<GroupoidSpec>(path)?)
}

pub fn load_matched_pair(path: &Path) -> Result<MatchedPair> {
    let file: MatchedPairFile = read_json(path)?;
    file.resolve(path.parent().unwrap_or(Path::new(".")))
}

pub fn load_cochain(path: &Path, degree: usize) -> Result<Cochain> {
    Cochain::from_spec(&read_json::<CochainSpec>(path)?, degree)
}

/// `σ` and `τ` from optional files, missing ones taken trivial.
pub fn load_pair(sigma: Option<&Path>, tau: Option<&Path>) -> Result<OpextPair> {
    let get = |p: Option<&Path>| p.map_or(Ok(Cochain::zero(2)), |p| load_cochain(p, 2));
    Ok(OpextPair {
        sigma: get(sigma)?,
        tau: get(tau)?,
    })
}

/// A subgroupoid file: the factorization `D = V·H` of an ambient groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationFile {
    pub ambient: String,
    pub v: Vec<usize>,
    pub h: Vec<usize>,
}

/// Writes one directory per fixture: the ambient groupoid, both factors,
/// the factorization, the matched pair referencing the factors, and the
/// trivial `σ` and `τ`. Returns the files written.
pub fn write_fixture(dir: &Path, f: &Fixture) -> Result<Vec<PathBuf>> {
    let dir = dir.join(f.name.to_lowercase());
    let (act_left, act_right) = f.mp.action_tables();
    let mp = MatchedPairFile {
        horizontal: GroupoidRef::Path("horizontal.json".into()),
        vertical: GroupoidRef::Path("vertical.json".into()),
        act_left,
        act_right,
    };
    let files = [
        ("ambient.json", to_json(&f.ambient.to_spec())),
        ("horizontal.json", to_json(&f.mp.horizontal().to_spec())),
        ("vertical.json", to_json(&f.mp.vertical().to_spec())),
        (
            "factorization.json",
            to_json(&FactorizationFile {
                ambient: "ambient.json".into(),
                v: f.v.arrows.clone(),
                h: f.h.arrows.clone(),
            }),
        ),
        ("mp.json", to_json(&mp)),
        ("sigma.json", to_json(&Cochain::zero(2).to_spec())),
        ("tau.json", to_json(&Cochain::zero(2).to_spec())),
    ];
    let mut out = Vec::new();
    for (name, text) in files {
        let p = dir.join(name);
        write_file(&p, &text)?;
        out.push(p);
    }
    Ok(out)
}
