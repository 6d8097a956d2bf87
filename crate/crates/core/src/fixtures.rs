//! The worked examples used throughout the tests.

use crate::error::Result;
use crate::groupoid::{FiniteGroupoid, Subgroupoid};
use crate::groups::{cyclic, dihedral};
use crate::matched_pair::{from_exact_factorization, Factorization, MatchedPair};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub ambient: FiniteGroupoid,
    pub v: Subgroupoid,
    pub h: Subgroupoid,
    pub mp: MatchedPair,
    pub embedding: Factorization,
}

impl Fixture {
    pub fn new(name: &'static str, ambient: FiniteGroupoid, v: Vec<usize>, h: Vec<usize>) -> Result<Self> {
        let (v, h) = (Subgroupoid::new(v), Subgroupoid::new(h));
        let (mp, embedding) = from_exact_factorization(&ambient, &v, &h)?;
        Ok(Fixture {
            name,
            ambient,
            v,
            h,
            mp,
            embedding,
        })
    }
}

/// `S₃ = C₃·C₂` with `r^i s^j` stored as `i + 3j`.
pub fn ex_s3() -> Fixture {
    Fixture::new("EX-S3", dihedral(3), vec![0, 1, 2], vec![0, 3]).expect("S₃ factorizes")
}

/// `C₂ × C₂ = (C₂ × 1)·(1 × C₂)` with trivial actions.
pub fn ex_k4() -> Fixture {
    let c2 = cyclic(2);
    Fixture::new("EX-K4", c2.product(&c2), vec![0, 2], vec![0, 1]).expect("K₄ factorizes")
}

/// The pair groupoid on two objects, with `V` everything and `H` trivial.
pub fn ex_pair2() -> Fixture {
    let d = FiniteGroupoid::pair(2);
    Fixture::new("EX-PAIR2", d, vec![0, 1, 2, 3], vec![0, 3]).expect("pair groupoid factorizes")
}

/// `Pair(2) × C₂`: two objects, vertex group C₂. `V` is the pair
/// subgroupoid and `H` the bundle of vertex groups.
pub fn ex_gpd6() -> Fixture {
    let d = FiniteGroupoid::pair(2).product(&cyclic(2));
    Fixture::new("EX-GPD6", d, vec![0, 2, 4, 6], vec![0, 1, 6, 7]).expect("bundle factorization")
}

pub fn all() -> Vec<Fixture> {
    vec![ex_s3(), ex_k4(), ex_pair2(), ex_gpd6()]
}
