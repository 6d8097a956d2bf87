//! Exact arithmetic in the cyclotomic field ℚ(ζ_N).
//!
//! Elements are coordinate vectors in the power basis `1, ζ, …, ζ^{φ(N)−1}`.
//! Integer combinations of roots of unity, which is all the weak Hopf
//! structure constants ever produce, get a cheaper zero test through
//! [`CycloField::int_combination_is_zero`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().unwrap();
    debug_assert_eq!(lead, 1);
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

#[derive(Debug)]
struct FieldData {
    n: u64,
    phi: Vec<i64>,
}

/// The field ℚ(ζ_N) together with its defining polynomial.
#[derive(Clone, Debug)]
pub struct CycloField {
    data: Arc<FieldData>,
}

/// An element of ℚ(ζ_N) in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    pub coords: Vec<BigRational>,
}

impl CycloField {
    pub fn new(n: u64) -> Self {
        let n = n.max(1);
        CycloField {
            data: Arc::new(FieldData {
                n,
                phi: cyclotomic_polynomial(n),
            }),
        }
    }

    pub fn order(&self) -> u64 {
        self.data.n
    }

    pub fn degree(&self) -> usize {
        self.data.phi.len() - 1
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo {
            coords: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> Cyclo {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> Cyclo {
        let mut z = self.zero();
        z.coords[0] = BigRational::from_integer(BigInt::from(k));
        z
    }

    /// `ζ_N^k`.
    pub fn root(&self, k: u64) -> Cyclo {
        let n = self.data.n;
        let mut v = vec![0i64; (k % n) as usize + 1];
        v[(k % n) as usize] = 1;
        self.from_int_poly(&v)
    }

    /// Reduces an integer polynomial in ζ to power-basis coordinates.
    pub fn from_int_poly(&self, poly: &[i64]) -> Cyclo {
        let red = self.reduce_int(poly);
        Cyclo {
            coords: red
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    fn reduce_int(&self, poly: &[i64]) -> Vec<i128> {
        let phi = &self.data.phi;
        let d = self.degree();
        let mut r: Vec<i128> = poly.iter().map(|&c| c as i128).collect();
        if r.len() < d {
            r.resize(d, 0);
        }
        for i in (d..r.len()).rev() {
            let c = r[i];
            if c != 0 {
                for (j, &p) in phi.iter().enumerate() {
                    r[i - d + j] -= c * p as i128;
                }
            }
        }
        r.truncate(d);
        r
    }

    /// Whether `Σ_k v[k] ζ^k` vanishes, for `v` indexed by exponents mod N.
    pub fn int_combination_is_zero(&self, v: &[i64]) -> bool {
        if v.iter().all(|&c| c == 0) {
            return true;
        }
        self.reduce_int(v).iter().all(|&c| c == 0)
    }

    fn reduce(&self, mut r: Vec<BigRational>) -> Cyclo {
        let phi = &self.data.phi;
        let d = self.degree();
        if r.len() < d {
            r.resize(d, BigRational::zero());
        }
        for i in (d..r.len()).rev() {
            let c = r[i].clone();
            if !c.is_zero() {
                for (j, &p) in phi.iter().enumerate() {
                    if p != 0 {
                        r[i - d + j] -= &c * BigRational::from_integer(BigInt::from(p));
                    }
                }
            }
        }
        r.truncate(d);
        Cyclo { coords: r }
    }

    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &Cyclo) -> Cyclo {
        Cyclo {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let d = self.degree();
        let mut r = vec![BigRational::zero(); 2 * d];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    r[i + j] += x * y;
                }
            }
        }
        self.reduce(r)
    }

    /// Multiplicative inverse, by solving the linear system `a·x = 1`.
    pub fn inv(&self, a: &Cyclo) -> Option<Cyclo> {
        if a.is_zero() {
            return None;
        }
        let d = self.degree();
        // Column j holds the coordinates of a·ζ^j.
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.clone();
        let zeta = self.root(1);
        for _ in 0..d {
            cols.push(cur.clone());
            cur = self.mul(&cur, &zeta);
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coords[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=d {
                        let delta = &f * &m[col][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        Some(Cyclo {
            coords: m.into_iter().map(|row| row[d].clone()).collect(),
        })
    }

    /// Rank of a matrix with entries in the field.
    pub fn rank(&self, rows: &[Vec<Cyclo>]) -> usize {
        let mut m: Vec<Vec<Cyclo>> = rows.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..ncols {
            let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = self.inv(&m[rank][col]).expect("nonzero pivot");
            for r in rank + 1..m.len() {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = self.mul(&m[r][col], &inv);
                for c in col..ncols {
                    let delta = self.mul(&f, &m[rank][c]);
                    m[r][c] = self.sub(&m[r][c], &delta);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn det(&self, rows: &[Vec<Cyclo>]) -> Cyclo {
        let n = rows.len();
        let mut m = rows.to_vec();
        let mut det = self.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return self.zero();
            };
            if piv != col {
                m.swap(col, piv);
                det = self.neg(&det);
            }
            det = self.mul(&det, &m[col][col]);
            let inv = self.inv(&m[col][col]).expect("nonzero pivot");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = self.mul(&m[r][col], &inv);
                for c in col..n {
                    let delta = self.mul(&f, &m[col][c]);
                    m[r][c] = self.sub(&m[r][c], &delta);
                }
            }
        }
        det
    }
}

impl Cyclo {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_integer(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
            && self.coords.first().is_none_or(|c| c.is_integer())
    }

    /// Coordinates as `"p/q"` strings, the serialized form used in reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect()
    }

    pub fn abs_is_one_rational(&self) -> bool {
        self.is_integer() && self.coords[0].abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..13u64 {
            let f = CycloField::new(n);
            let all = vec![1i64; n as usize];
            assert!(f.int_combination_is_zero(&all), "n = {n}");
            let mut one = vec![0i64; n as usize];
            one[0] = 1;
            assert!(!f.int_combination_is_zero(&one));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = CycloField::new(12);
        let a = f.add(&f.root(1), &f.from_int(3));
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn determinant_of_vandermonde_like_matrix() {
        let f = CycloField::new(3);
        let z = f.root(1);
        let z2 = f.root(2);
        let one = f.one();
        // Character table of C₃, determinant 3·(ζ − ζ²) which is nonzero.
        let m = vec![
            vec![one.clone(), one.clone(), one.clone()],
            vec![one.clone(), z.clone(), z2.clone()],
            vec![one.clone(), z2.clone(), z.clone()],
        ];
        let d = f.det(&m);
        let sq = f.mul(&d, &d);
        assert_eq!(sq, f.from_int(-27));
        assert_eq!(f.rank(&m), 3);
    }
}
