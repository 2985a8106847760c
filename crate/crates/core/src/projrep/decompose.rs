use super::{induce, twisted_regular, DenseRep, ProjCharacter};
use crate::cocycles::{CentralExtension, Character, Cocycle};
use crate::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigenvalue clustering tolerance.
pub const CLUSTER_TOL: f64 = 1e-8;
const MAX_RETRIES: u64 = 5;

/// Irreducible constituents with multiplicities, plus bookkeeping of the numerical run.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub constituents: Vec<(DenseRep, usize)>,
    pub commutant_dim: usize,
    /// Seed of the attempt that succeeded.
    pub seed: u64,
    pub max_residual: f64,
}

impl Decomposition {
    /// Constituent dimensions, each listed once, in the order found.
    pub fn dims(&self) -> Vec<usize> {
        self.constituents.iter().map(|(r, _)| r.dim()).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.constituents.iter().map(|(_, m)| *m).collect()
    }
}

/// Splits `ρ` into irreducibles with a random Hermitian element of the commutant.
///
/// The element is the group average `|G|^{-1} Σ ρ(g) M ρ(g)^*` of a random Hermitian `M`;
/// its eigenspaces are invariant and, for a generic draw, irreducible. Each attempt checks
/// that every eigenspace is irreducible and that `Σ dim·mult = dim ρ` and
/// `Σ mult^2 = dim End(ρ)`; a failed attempt is retried with the next seed.
pub fn decompose(rho: &DenseRep, seed: u64) -> Result<Decomposition> {
    if rho.dim() > 256 {
        return Err(Error::invalid("decompose handles dimension at most 256"));
    }
    let mut last = String::new();
    for attempt in 0..MAX_RETRIES {
        match try_decompose(rho, seed.wrapping_add(attempt)) {
            Ok(d) => return Ok(d),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Numerical(format!("decomposition failed after {MAX_RETRIES} attempts: {last}")))
}

fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..d {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn try_decompose(rho: &DenseRep, seed: u64) -> Result<Decomposition> {
    let d = rho.dim();
    let n = rho.group().order() as f64;
    let comm = rho.commutant_dim_f64();
    let commutant_dim = comm.round() as usize;
    if (comm - commutant_dim as f64).abs() > 1e-6 {
        return Err(Error::Numerical(format!("commutant dimension {comm} is not an integer")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_hermitian(d, &mut rng);
    let mut x = DMatrix::<Complex64>::zeros(d, d);
    for r in &rho.mats {
        x += r * &m * r.adjoint();
    }
    x /= Complex64::new(n, 0.0);
    let x = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(x);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs() < CLUSTER_TOL => {
                c.push(i)
            }
            Some(c) => {
                let gap = (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs();
                if gap < 10.0 * CLUSTER_TOL {
                    return Err(Error::Numerical(format!("ambiguous eigenvalue gap {gap:e}")));
                }
                clusters.push(vec![i]);
            }
            None => clusters.push(vec![i]),
        }
    }

    let mut worst = 0.0f64;
    let mut pieces: Vec<DenseRep> = Vec::new();
    for c in &clusters {
        let b = DMatrix::from_fn(d, c.len(), |r, k| eig.eigenvectors[(r, c[k])]);
        let bh = b.adjoint();
        let mats: Vec<DMatrix<Complex64>> = rho.mats.iter().map(|r| &bh * r * &b).collect();
        for (r, s) in rho.mats.iter().zip(&mats) {
            worst = worst.max((r * &b - &b * s).camax());
        }
        let piece = DenseRep {
            alpha: rho.alpha.clone(),
            mats,
        };
        let self_dim = piece.commutant_dim_f64();
        if (self_dim - 1.0).abs() > 1e-6 {
            return Err(Error::Numerical(format!(
                "an eigenspace of dimension {} is reducible",
                c.len()
            )));
        }
        pieces.push(piece);
    }
    if worst > 1e-6 {
        return Err(Error::Numerical(format!("eigenspaces are not invariant (residual {worst:e})")));
    }

    let mut constituents: Vec<(DenseRep, usize)> = Vec::new();
    for p in pieces {
        let found = constituents.iter_mut().find(|(q, _)| {
            let ip: Complex64 = p
                .mats
                .iter()
                .zip(&q.mats)
                .map(|(a, b)| a.trace() * b.trace().conj())
                .sum::<Complex64>()
                / n;
            ip.norm() > 0.5
        });
        match found {
            Some((_, mult)) => *mult += 1,
            None => constituents.push((p, 1)),
        }
    }
    let total: usize = constituents.iter().map(|(r, k)| r.dim() * k).sum();
    let squares: usize = constituents.iter().map(|(_, k)| k * k).sum();
    if total != d || squares != commutant_dim {
        return Err(Error::Numerical(format!(
            "inconsistent accounting: Σ dim·mult = {total} (want {d}), Σ mult² = {squares} (want {commutant_dim})"
        )));
    }
    Ok(Decomposition {
        constituents,
        commutant_dim,
        seed,
        max_residual: worst,
    })
}

/// Number and dimensions of the irreducible `α`-representations, read off the twisted
/// regular representation; checks `Σ d_i^2 = |G|`.
pub fn count_irr_alpha(alpha: &Cocycle, seed: u64) -> Result<(usize, Vec<usize>)> {
    let rho = twisted_regular(alpha).to_dense();
    let dec = decompose(&rho, seed)?;
    let dims = dec.dims();
    let sq: usize = dims.iter().map(|d| d * d).sum();
    if sq != alpha.group().order() {
        return Err(Error::check(format!("Σ d² = {sq} but |G| = {}", alpha.group().order())));
    }
    if dec.constituents.iter().any(|(r, k)| r.dim() != *k) {
        return Err(Error::check("a constituent's multiplicity differs from its dimension"));
    }
    Ok((dims.len(), dims))
}

/// Number and dimensions of the irreducible representations of the total group on which `A`
/// acts by `χ`, read off `Ind_A^{G̃} χ` (the `χ`-isotypic part of the regular representation).
pub fn count_irr_central(ext: &CentralExtension, chi: &Character, seed: u64) -> Result<(usize, Vec<usize>)> {
    let total = &ext.total;
    let psi = ProjCharacter::new(total, &chi.domain, chi.modulus, chi.exps.clone())?;
    let rho = induce(&Cocycle::trivial(total), &psi)?.to_dense();
    let dec = decompose(&rho, seed)?;
    if dec.constituents.iter().any(|(r, k)| r.dim() != *k) {
        return Err(Error::check("a constituent's multiplicity differs from its dimension"));
    }
    Ok((dec.constituents.len(), dec.dims()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::xi_cocycle;
    use crate::groups::finite_table_of;
    use crate::homology::xi_extract;
    use crate::{FinAbDesc, FiniteGroupTable, MetacyclicDesc};

    #[test]
    fn regular_z3() {
        let t = FiniteGroupTable::cyclic(3);
        let (count, dims) = count_irr_alpha(&Cocycle::trivial(&t), 1).unwrap();
        assert_eq!((count, dims), (3, vec![1, 1, 1]));
    }

    #[test]
    fn dihedral_eight() {
        let t = finite_table_of(&MetacyclicDesc::new(4, 2, 3).unwrap()).unwrap();
        let (_, mut dims) = count_irr_alpha(&Cocycle::trivial(&t), 7).unwrap();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn klein_twisted() {
        let t = finite_table_of(&FinAbDesc::new(&[2, 2])).unwrap();
        let a = xi_cocycle(&xi_extract(&t).unwrap(), &[1]).unwrap();
        let dec = decompose(&twisted_regular(&a).to_dense(), crate::DEFAULT_SEED).unwrap();
        assert_eq!(dec.commutant_dim, 4);
        assert_eq!(dec.dims(), vec![2]);
        assert_eq!(dec.multiplicities(), vec![2]);
    }

    #[test]
    fn counts_agree_through_the_cover() {
        let t = finite_table_of(&FinAbDesc::new(&[2, 4])).unwrap();
        let r = crate::repgroup::build_repgroup(&t).unwrap();
        let ext = r.extension().unwrap();
        for chi in crate::cocycles::characters_of(&ext.total, &ext.central) {
            let alpha = crate::cocycles::transgression(&ext, &chi).unwrap();
            let (count, mut dims) = count_irr_alpha(&alpha, 3).unwrap();
            let (count2, mut dims2) = count_irr_central(&ext, &chi, 3).unwrap();
            dims.sort();
            dims2.sort();
            assert_eq!((count, dims), (count2, dims2));
        }
    }
}
