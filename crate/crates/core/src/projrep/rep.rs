use super::MonomialMatrix;
use crate::arith::{lcm, RootExp};
use crate::cocycles::{characters_of, is_coboundary, restriction, Cocycle};
use crate::{Error, FiniteGroupTable, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Tolerance for dense relation checks.
pub const DENSE_TOL: f64 = 1e-8;

/// An `α`-representation of a finite group by exact monomial matrices.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    pub alpha: Cocycle,
    pub mats: Vec<MonomialMatrix>,
}

/// An `α`-representation by complex matrices.
#[derive(Clone, Debug)]
pub struct DenseRep {
    pub alpha: Cocycle,
    pub mats: Vec<DMatrix<Complex64>>,
}

#[derive(Clone, Debug)]
pub enum ProjRep {
    Monomial(MonomialRep),
    Dense(DenseRep),
}

/// A one-dimensional `α|_H`-representation `ψ` of a subgroup, `ψ(h) = ζ_N^{exps[h]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjCharacter {
    /// Sorted elements of `H`.
    pub subgroup: Vec<usize>,
    pub modulus: u64,
    pub exps: Vec<u64>,
}

/// Result of [`check_projrep`]: the largest entrywise deviation and the first failing pair.
#[derive(Clone, Debug)]
pub struct ProjCheck {
    pub passed: bool,
    pub max_residual: f64,
    pub witness: Option<(usize, usize)>,
}

impl MonomialRep {
    pub fn new(alpha: Cocycle, mats: Vec<MonomialMatrix>) -> Result<Self> {
        if mats.len() != alpha.group().order() {
            return Err(Error::Dimension {
                expected: alpha.group().order(),
                found: mats.len(),
            });
        }
        let d = mats.first().map_or(0, |m| m.dim());
        if let Some(m) = mats.iter().find(|m| m.dim() != d) {
            return Err(Error::Dimension {
                expected: d,
                found: m.dim(),
            });
        }
        Ok(MonomialRep { alpha, mats })
    }

    pub fn group(&self) -> &FiniteGroupTable {
        self.alpha.group()
    }

    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, |m| m.dim())
    }

    pub fn to_dense(&self) -> DenseRep {
        DenseRep {
            alpha: self.alpha.clone(),
            mats: self.mats.iter().map(|m| m.to_dense()).collect(),
        }
    }

    /// Exact check of `ρ(1) = I` and `ρ(x)ρ(y) = α(x, y)ρ(xy)`.
    pub fn violation(&self) -> Option<(usize, usize)> {
        let g = self.group();
        let e = g.identity();
        if !self.mats[e].same_matrix(&MonomialMatrix::identity(self.dim())) {
            return Some((e, e));
        }
        for x in g.elements() {
            for y in g.elements() {
                let lhs = self.mats[x].mul(&self.mats[y]).expect("equal dimensions");
                let rhs = self.mats[g.mul(x, y)].scale(self.alpha.value(x, y));
                if !lhs.same_matrix(&rhs) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

impl DenseRep {
    pub fn group(&self) -> &FiniteGroupTable {
        self.alpha.group()
    }

    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, |m| m.nrows())
    }

    pub fn trace(&self, g: usize) -> Complex64 {
        self.mats[g].trace()
    }

    /// `ρ(x)ρ(y) - α(x, y)ρ(xy)` and `ρ(1) - I` in the max-entry norm.
    pub fn check(&self) -> ProjCheck {
        let g = self.group();
        let d = self.dim();
        let mut worst = 0.0f64;
        let mut witness = None;
        let e = g.identity();
        let r = (&self.mats[e] - DMatrix::<Complex64>::identity(d, d)).camax();
        if r > DENSE_TOL {
            witness = Some((e, e));
        }
        worst = worst.max(r);
        for x in g.elements() {
            for y in g.elements() {
                let lhs = &self.mats[x] * &self.mats[y];
                let rhs = &self.mats[g.mul(x, y)] * self.alpha.complex(x, y);
                let r = (lhs - rhs).camax();
                if r > DENSE_TOL && witness.is_none() {
                    witness = Some((x, y));
                }
                worst = worst.max(r);
            }
        }
        ProjCheck {
            passed: witness.is_none(),
            max_residual: worst,
            witness,
        }
    }

    /// `dim End_G(ρ) = |G|^{-1} Σ |tr ρ(g)|^2` for unitary `ρ`, as a float.
    pub fn commutant_dim_f64(&self) -> f64 {
        let n = self.group().order() as f64;
        self.mats.iter().map(|m| m.trace().norm_sqr()).sum::<f64>() / n
    }
}

impl ProjRep {
    pub fn dim(&self) -> usize {
        match self {
            ProjRep::Monomial(r) => r.dim(),
            ProjRep::Dense(r) => r.dim(),
        }
    }

    pub fn cocycle(&self) -> &Cocycle {
        match self {
            ProjRep::Monomial(r) => &r.alpha,
            ProjRep::Dense(r) => &r.alpha,
        }
    }

    pub fn to_dense(&self) -> DenseRep {
        match self {
            ProjRep::Monomial(r) => r.to_dense(),
            ProjRep::Dense(r) => r.clone(),
        }
    }
}

/// Exhaustive check of the defining relation: exact for monomial matrices, within
/// [`DENSE_TOL`] for dense ones.
pub fn check_projrep(rho: &ProjRep) -> ProjCheck {
    match rho {
        ProjRep::Monomial(r) => {
            let w = r.violation();
            ProjCheck {
                passed: w.is_none(),
                max_residual: if w.is_none() { 0.0 } else { f64::INFINITY },
                witness: w,
            }
        }
        ProjRep::Dense(r) => r.check(),
    }
}

impl ProjCharacter {
    pub fn new(t: &FiniteGroupTable, subgroup: &[usize], modulus: u64, exps: Vec<u64>) -> Result<Self> {
        let mut pairs: Vec<(usize, u64)> = subgroup.iter().copied().zip(exps).collect();
        if pairs.len() != subgroup.len() {
            return Err(Error::Dimension {
                expected: subgroup.len(),
                found: pairs.len(),
            });
        }
        if !t.is_subgroup(subgroup) {
            return Err(Error::invalid("H is not a subgroup"));
        }
        pairs.sort_unstable();
        Ok(ProjCharacter {
            subgroup: pairs.iter().map(|p| p.0).collect(),
            modulus,
            exps: pairs.iter().map(|p| p.1 % modulus).collect(),
        })
    }

    pub fn exp(&self, h: usize) -> Option<u64> {
        self.subgroup.binary_search(&h).ok().map(|i| self.exps[i])
    }

    pub fn value(&self, h: usize) -> Option<RootExp> {
        self.exp(h).map(|e| RootExp::new(self.modulus, e as i128))
    }

    /// First pair with `ψ(h_1)ψ(h_2) ≠ α(h_1, h_2)ψ(h_1 h_2)`.
    pub fn violation(&self, alpha: &Cocycle) -> Option<(usize, usize)> {
        let t = alpha.group();
        let m = lcm(self.modulus, alpha.modulus());
        let (fp, fa) = (m / self.modulus, m / alpha.modulus());
        for &x in &self.subgroup {
            for &y in &self.subgroup {
                let lhs = (self.exp(x).unwrap() + self.exp(y).unwrap()) * fp % m;
                let rhs = (alpha.exp(x, y) * fa + self.exp(t.mul(x, y))? * fp) % m;
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// All one-dimensional `α|_H`-representations of `H`: empty when `α|_H` is not a
/// coboundary, otherwise `μ^{-1}χ` for a witness `δμ = α|_H` and every character `χ` of `H`.
pub fn alpha_characters(alpha: &Cocycle, subgroup: &[usize]) -> Result<Vec<ProjCharacter>> {
    let t = alpha.group();
    let (res, embed) = restriction(alpha, subgroup)?;
    let Some(mu) = is_coboundary(&res) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for chi in characters_of(t, subgroup) {
        let m = lcm(mu.modulus(), chi.modulus);
        let (fm, fc) = (m / mu.modulus(), m / chi.modulus);
        let exps: Vec<u64> = embed
            .iter()
            .enumerate()
            .map(|(i, &h)| (m - mu.exp(i) * fm % m + chi.exp(h).unwrap() * fc) % m)
            .collect();
        let psi = ProjCharacter::new(t, &embed, m, exps)?;
        debug_assert!(psi.violation(alpha).is_none());
        out.push(psi);
    }
    Ok(out)
}

/// Left multiplication on the twisted group algebra: `ρ(g) e_h = α(g, h) e_{gh}`.
pub fn twisted_regular(alpha: &Cocycle) -> MonomialRep {
    let t = alpha.group();
    let mats = t
        .elements()
        .map(|g| MonomialMatrix {
            perm: t.elements().map(|h| t.mul(g, h)).collect(),
            exps: t.elements().map(|h| alpha.exp(g, h)).collect(),
            modulus: alpha.modulus(),
        })
        .collect();
    MonomialRep {
        alpha: alpha.clone(),
        mats,
    }
}

/// The induced `α`-representation on functions with `f(hg) = α(h, g)^{-1}ψ(h)f(g)` and
/// `(ρ(g)f)(x) = α(x, g)f(xg)`, in the basis `f ↦ (f(x_u))_u` over right-coset
/// representatives ordered by first occurrence.
///
/// Column `u` of `ρ(g)` has its entry in row `v` with `x_v g = h x_u`, equal to
/// `α(x_v, g) α(h, x_u)^{-1} ψ(h)`.
pub fn induce(alpha: &Cocycle, psi: &ProjCharacter) -> Result<MonomialRep> {
    let t = alpha.group();
    if let Some((x, y)) = psi.violation(alpha) {
        return Err(Error::invalid(format!(
            "psi is not an alpha-representation of H: fails at ({x}, {y})"
        )));
    }
    let cos = t.right_cosets(&psi.subgroup);
    let reps = &cos.reps;
    let m = lcm(alpha.modulus(), psi.modulus);
    let (fa, fp) = (m / alpha.modulus(), m / psi.modulus);
    let mut mats = Vec::with_capacity(t.order());
    for g in t.elements() {
        let gi = t.inv(g);
        let mut perm = vec![0; reps.len()];
        let mut exps = vec![0; reps.len()];
        for (u, &xu) in reps.iter().enumerate() {
            let v = cos.coset_of[t.mul(xu, gi)];
            let xv = reps[v];
            let h = t.mul(t.mul(xv, g), t.inv(xu));
            let e = alpha.exp(xv, g) * fa + (m - alpha.exp(h, xu) * fa % m)
                + psi.exp(h).expect("h lies in H") * fp;
            perm[u] = v;
            exps[u] = e % m;
        }
        mats.push(MonomialMatrix { perm, exps, modulus: m });
    }
    MonomialRep::new(alpha.clone(), mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::xi_cocycle;
    use crate::groups::finite_table_of;
    use crate::homology::xi_extract;
    use crate::FinAbDesc;

    fn klein_alpha() -> Cocycle {
        let t = finite_table_of(&FinAbDesc::new(&[2, 2])).unwrap();
        xi_cocycle(&xi_extract(&t).unwrap(), &[1]).unwrap()
    }

    #[test]
    fn twisted_regular_is_projective() {
        let a = klein_alpha();
        let r = twisted_regular(&a);
        assert!(r.violation().is_none());
        assert!(r.to_dense().check().passed);
    }

    #[test]
    fn induced_klein_rep() {
        let a = klein_alpha();
        let t = a.group().clone();
        let h = t.generated_subgroup(&[1]);
        let psis = alpha_characters(&a, &h).unwrap();
        assert_eq!(psis.len(), 2);
        let rho = induce(&a, &psis[0]).unwrap();
        assert_eq!(rho.dim(), 2);
        assert!(rho.violation().is_none());
        // irreducible: commutant dimension 1
        assert!((rho.to_dense().commutant_dim_f64() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn induce_from_whole_group_is_psi() {
        let t = FiniteGroupTable::cyclic(4);
        let a = Cocycle::trivial(&t);
        let all: Vec<usize> = t.elements().collect();
        let psi = ProjCharacter::new(&t, &all, 4, vec![0, 1, 2, 3]).unwrap();
        let r = induce(&a, &psi).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.mats[1].exps, vec![1]);
    }

    #[test]
    fn scaled_dense_matrix_fails() {
        let a = klein_alpha();
        let mut d = twisted_regular(&a).to_dense();
        d.mats[1] *= Complex64::new(1.1, 0.0);
        let c = d.check();
        assert!(!c.passed && c.witness.is_some());
    }

    #[test]
    fn incompatible_psi_is_rejected() {
        let t = FiniteGroupTable::cyclic(2);
        let a = Cocycle::trivial(&t);
        let psi = ProjCharacter::new(&t, &[0, 1], 4, vec![0, 1]).unwrap();
        assert!(induce(&a, &psi).is_err());
    }
}
