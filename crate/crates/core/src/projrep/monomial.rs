use crate::arith::{lcm, RootExp};
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A monomial matrix over `μ_N`: column `c` has the single entry `ζ_N^{exps[c]}` in row
/// `perm[c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub exps: Vec<u64>,
    #[serde(rename = "N")]
    pub modulus: u64,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, exps: Vec<u64>, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if perm.len() != exps.len() {
            return Err(Error::Dimension {
                expected: perm.len(),
                found: exps.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid(format!("{perm:?} is not a permutation")));
            }
        }
        let exps = exps.into_iter().map(|e| e % modulus).collect();
        Ok(MonomialMatrix { perm, exps, modulus })
    }

    pub fn identity(dim: usize) -> Self {
        MonomialMatrix {
            perm: (0..dim).collect(),
            exps: vec![0; dim],
            modulus: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Entry `(row, col)`, `None` when it is zero.
    pub fn entry(&self, row: usize, col: usize) -> Option<RootExp> {
        (self.perm[col] == row).then(|| RootExp::new(self.modulus, self.exps[col] as i128))
    }

    /// The same matrix with exponents over a multiple `target` of the modulus.
    pub fn lift(&self, target: u64) -> MonomialMatrix {
        assert!(target % self.modulus == 0, "target must be a multiple of the modulus");
        let f = target / self.modulus;
        MonomialMatrix {
            perm: self.perm.clone(),
            exps: self.exps.iter().map(|e| e * f).collect(),
            modulus: target,
        }
    }

    /// Smallest modulus representing the same matrix.
    pub fn reduced(&self) -> MonomialMatrix {
        let g = self.exps.iter().fold(self.modulus, |g, &e| crate::arith::gcd(g, e));
        MonomialMatrix {
            perm: self.perm.clone(),
            exps: self.exps.iter().map(|e| e / g).collect(),
            modulus: self.modulus / g,
        }
    }

    /// Equality as complex matrices, independent of the modulus used.
    pub fn same_matrix(&self, other: &MonomialMatrix) -> bool {
        self.reduced() == other.reduced()
    }

    pub fn mul(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let m = lcm(self.modulus, other.modulus);
        let (a, b) = (self.lift(m), other.lift(m));
        // A B e_c = ζ^{b_c} A e_{pB(c)} = ζ^{b_c + a_{pB(c)}} e_{pA(pB(c))}
        let perm = b.perm.iter().map(|&p| a.perm[p]).collect();
        let exps = b.perm.iter().zip(&b.exps).map(|(&p, &e)| (e + a.exps[p]) % m).collect();
        Ok(MonomialMatrix { perm, exps, modulus: m })
    }

    pub fn inv(&self) -> MonomialMatrix {
        let d = self.dim();
        let m = self.modulus;
        let mut perm = vec![0; d];
        let mut exps = vec![0; d];
        for c in 0..d {
            let r = self.perm[c];
            perm[r] = c;
            exps[r] = (m - self.exps[c]) % m;
        }
        MonomialMatrix { perm, exps, modulus: m }
    }

    pub fn scale(&self, z: RootExp) -> MonomialMatrix {
        let m = lcm(self.modulus, z.modulus);
        let a = self.lift(m);
        let s = z.lift(m).exp;
        MonomialMatrix {
            perm: a.perm,
            exps: a.exps.iter().map(|e| (e + s) % m).collect(),
            modulus: m,
        }
    }

    /// `Some(z)` when the matrix is the scalar `z · I`.
    pub fn as_scalar(&self) -> Option<RootExp> {
        let first = *self.exps.first()?;
        (self.perm.iter().enumerate().all(|(c, &r)| c == r) && self.exps.iter().all(|&e| e == first))
            .then(|| RootExp::new(self.modulus, first as i128))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim())
            .filter(|&c| self.perm[c] == c)
            .map(|c| RootExp::new(self.modulus, self.exps[c] as i128).to_complex())
            .sum()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for c in 0..d {
            m[(self.perm[c], c)] = RootExp::new(self.modulus, self.exps[c] as i128).to_complex();
        }
        m
    }
}
