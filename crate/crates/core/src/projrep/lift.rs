use super::{induce, DenseRep, MonomialMatrix, MonomialRep, ProjCharacter, ProjRep, DENSE_TOL};
use crate::arith::{lcm, RootExp};
use crate::cocycles::{transgression, CentralExtension, Character, Cocycle};
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn same_cocycle(a: &Cocycle, b: &Cocycle) -> Option<(usize, usize)> {
    let t = a.group();
    t.elements()
        .flat_map(|x| t.elements().map(move |y| (x, y)))
        .find(|&(x, y)| !a.value(x, y).equals(&b.value(x, y)))
}

/// `ρ̃(a s(g)) = χ(a) ρ(g)`: an ordinary representation of the total group.
///
/// The cocycle of `ρ` must equal `tra(χ)` pointwise.
pub fn lift(rho: &ProjRep, ext: &CentralExtension, chi: &Character) -> Result<ProjRep> {
    let tra = transgression(ext, chi)?;
    if rho.cocycle().group() != &ext.quotient {
        return Err(Error::invalid("the representation does not live on the quotient"));
    }
    if let Some((x, y)) = same_cocycle(rho.cocycle(), &tra) {
        return Err(Error::invalid(format!(
            "the cocycle differs from tra(chi) at ({x}, {y}): {} vs {}",
            rho.cocycle().value(x, y),
            tra.value(x, y)
        )));
    }
    let total = &ext.total;
    let trivial = Cocycle::trivial(total);
    let scalar = |x: usize| chi.value(ext.central_part(x)).expect("a_x lies in A");
    Ok(match rho {
        ProjRep::Monomial(r) => ProjRep::Monomial(MonomialRep::new(
            trivial,
            total.elements().map(|x| r.mats[ext.proj[x]].scale(scalar(x))).collect(),
        )?),
        ProjRep::Dense(r) => ProjRep::Dense(DenseRep {
            alpha: trivial,
            mats: total
                .elements()
                .map(|x| &r.mats[ext.proj[x]] * scalar(x).to_complex())
                .collect(),
        }),
    })
}

/// `ρ(g) = ρ̃(s(g))` for an ordinary representation on which `A` acts by a character `χ`;
/// returns `ρ`, `α = tra(χ)` and `χ`.
pub fn descend(rho: &ProjRep, ext: &CentralExtension) -> Result<(ProjRep, Cocycle, Character)> {
    let total = &ext.total;
    if rho.cocycle().group() != total {
        return Err(Error::invalid("the representation does not live on the total group"));
    }
    if !rho.cocycle().is_trivial_table() {
        return Err(Error::invalid("descend expects an ordinary representation"));
    }
    let e = ext.central.iter().map(|&a| total.element_order(a) as u64).fold(1, lcm);
    let mut exps = Vec::with_capacity(ext.central.len());
    for &a in &ext.central {
        let z = match rho {
            ProjRep::Monomial(r) => r.mats[a].as_scalar().map(|z| z.lift(lcm(z.modulus, e))),
            ProjRep::Dense(r) => dense_scalar(&r.mats[a], e),
        };
        let z = z.ok_or_else(|| {
            Error::invalid(format!("A does not act by scalars: element {}", total.label(a)))
        })?;
        let z = z.reduced();
        if e % z.modulus != 0 {
            return Err(Error::check("central scalar has order not dividing exp(A)"));
        }
        exps.push(z.lift(e).exp);
    }
    let chi = Character {
        modulus: e,
        domain: ext.central.clone(),
        exps,
    };
    chi.check_homomorphism(total)?;
    let alpha = transgression(ext, &chi)?;
    let q = &ext.quotient;
    let out = match rho {
        ProjRep::Monomial(r) => ProjRep::Monomial(MonomialRep::new(
            alpha.clone(),
            q.elements().map(|g| r.mats[ext.section[g]].clone()).collect(),
        )?),
        ProjRep::Dense(r) => ProjRep::Dense(DenseRep {
            alpha: alpha.clone(),
            mats: q.elements().map(|g| r.mats[ext.section[g]].clone()).collect(),
        }),
    };
    Ok((out, alpha, chi))
}

/// `Some(ζ_e^k)` when the matrix is `ζ_e^k I` up to [`DENSE_TOL`].
fn dense_scalar(m: &DMatrix<Complex64>, e: u64) -> Option<RootExp> {
    let d = m.nrows();
    let z = m[(0, 0)];
    if (m - DMatrix::<Complex64>::identity(d, d) * z).camax() > DENSE_TOL {
        return None;
    }
    let k = (z.arg() / (2.0 * std::f64::consts::PI) * e as f64).round() as i128;
    let r = RootExp::new(e, k);
    ((r.to_complex() - z).norm() <= DENSE_TOL).then_some(r)
}

/// Data of the monomial correspondence for `(H, ψ)` and `χ` with `α = tra(χ)`.
#[derive(Clone, Debug)]
pub struct Correspondence {
    /// Preimage `H̃` of `H`, sorted.
    pub h_tilde: Vec<usize>,
    /// `ψ̃(a s(h)) = χ(a) ψ(h)`, a character of `H̃`.
    pub psi_tilde: ProjCharacter,
    /// `Ind_H^G ψ` lifted to the total group.
    pub lifted: MonomialRep,
    /// `Ind_{H̃}^{G̃} ψ̃` with the trivial cocycle.
    pub induced_tilde: MonomialRep,
    /// `f ↦ f̃` with `f̃(a s(g)) = χ(a) f(g)` in the coset-value bases.
    pub intertwiner: MonomialMatrix,
}

impl Correspondence {
    /// First element `x` of the total group with `T ρ̃(x) ≠ ρ₁(x) T`.
    pub fn violation(&self) -> Option<usize> {
        let t = &self.intertwiner;
        (0..self.lifted.mats.len()).find(|&x| {
            let lhs = t.mul(&self.lifted.mats[x]).expect("dimensions");
            let rhs = self.induced_tilde.mats[x].mul(t).expect("dimensions");
            !lhs.same_matrix(&rhs)
        })
    }
}

/// Builds `H̃`, `ψ̃`, both induced representations and the intertwiner between them.
pub fn monomial_correspondence(
    ext: &CentralExtension,
    chi: &Character,
    psi: &ProjCharacter,
) -> Result<Correspondence> {
    let total = &ext.total;
    let alpha = transgression(ext, chi)?;
    let rho = induce(&alpha, psi)?;
    let lifted = match lift(&ProjRep::Monomial(rho.clone()), ext, chi)? {
        ProjRep::Monomial(r) => r,
        ProjRep::Dense(_) => unreachable!("monomial input lifts to a monomial representation"),
    };
    let h_tilde: Vec<usize> = total
        .elements()
        .filter(|&x| psi.subgroup.binary_search(&ext.proj[x]).is_ok())
        .collect();
    let m = lcm(chi.modulus, psi.modulus);
    let (fc, fp) = (m / chi.modulus, m / psi.modulus);
    let exps = h_tilde
        .iter()
        .map(|&x| {
            let a = ext.central_part(x);
            (chi.exp(a).unwrap() * fc + psi.exp(ext.proj[x]).unwrap() * fp) % m
        })
        .collect();
    let psi_tilde = ProjCharacter::new(total, &h_tilde, m, exps)?;
    let trivial = Cocycle::trivial(total);
    if let Some((x, y)) = psi_tilde.violation(&trivial) {
        return Err(Error::check(format!(
            "psi~ is not a character of H~: fails at ({}, {})",
            total.label(x),
            total.label(y)
        )));
    }
    let induced_tilde = induce(&trivial, &psi_tilde)?;

    // (T f_u)(y_w) = χ(a_{y_w}) f_u(π(y_w)), nonzero exactly when π(y_w) = h x_u
    let q = &ext.quotient;
    let cos = q.right_cosets(&psi.subgroup);
    let cos_t = total.right_cosets(&h_tilde);
    let k = cos.reps.len();
    if cos_t.reps.len() != k {
        return Err(Error::check("H and H~ have different indices"));
    }
    let mm = lcm(m, alpha.modulus());
    let (fc, fp, fa) = (mm / chi.modulus, mm / psi.modulus, mm / alpha.modulus());
    let mut perm = vec![usize::MAX; k];
    let mut texps = vec![0; k];
    for (w, &y) in cos_t.reps.iter().enumerate() {
        let g = ext.proj[y];
        let u = cos.coset_of[g];
        let xu = cos.reps[u];
        let h = q.mul(g, q.inv(xu));
        let e = chi.exp(ext.central_part(y)).unwrap() * fc
            + (mm - alpha.exp(h, xu) * fa % mm)
            + psi.exp(h).unwrap() * fp;
        perm[u] = w;
        texps[u] = e % mm;
    }
    let intertwiner = MonomialMatrix::new(perm, texps, mm)?;
    Ok(Correspondence {
        h_tilde,
        psi_tilde,
        lifted,
        induced_tilde,
        intertwiner,
    })
}

/// An orthonormal basis of `V_H(ψ) = {v : ρ(h)v = ψ(h)v for all h ∈ H}`, as columns.
///
/// `ψ` must be an `α|_H`-character for the cocycle `α` of `ρ`; then the conditions on a
/// generating set of `H` imply all the others.
pub fn finite_weight_space(rho: &DenseRep, psi: &ProjCharacter) -> DMatrix<Complex64> {
    let d = rho.dim();
    let hs = rho.group().generating_set_of(&psi.subgroup);
    let mut stacked = DMatrix::<Complex64>::zeros(hs.len() * d, d);
    for (k, &h) in hs.iter().enumerate() {
        let z = psi.value(h).unwrap().to_complex();
        let block = &rho.mats[h] - DMatrix::<Complex64>::identity(d, d) * z;
        stacked.view_mut((k * d, 0), (d, d)).copy_from(&block);
    }
    // null space of the stacked system from the Gram matrix
    let gram = stacked.adjoint() * &stacked;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let cols: Vec<usize> = (0..d).filter(|&i| eig.eigenvalues[i].abs() < 1e-8).collect();
    DMatrix::from_fn(d, cols.len(), |r, c| eig.eigenvectors[(r, cols[c])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::characters_of;
    use crate::groups::finite_table_of;
    use crate::projrep::{alpha_characters, decompose};
    use crate::repgroup::build_repgroup;
    use crate::FinAbDesc;

    fn klein_setup() -> (CentralExtension, Vec<Character>) {
        let t = finite_table_of(&FinAbDesc::new(&[2, 2])).unwrap();
        let ext = build_repgroup(&t).unwrap().extension().unwrap();
        let chars = characters_of(&ext.total, &ext.central);
        (ext, chars)
    }

    #[test]
    fn lift_descend_roundtrip() {
        let (ext, chars) = klein_setup();
        let chi = &chars[1];
        let alpha = transgression(&ext, chi).unwrap();
        let h = ext.quotient.generated_subgroup(&[1]);
        let psi = &alpha_characters(&alpha, &h).unwrap()[0];
        let rho = ProjRep::Monomial(induce(&alpha, psi).unwrap());
        let up = lift(&rho, &ext, chi).unwrap();
        assert!(crate::projrep::check_projrep(&up).passed);
        let (down, a2, chi2) = descend(&up, &ext).unwrap();
        assert_eq!(&chi2, chi);
        assert_eq!(a2, alpha);
        match (&down, &rho) {
            (ProjRep::Monomial(a), ProjRep::Monomial(b)) => {
                assert!(a.mats.iter().zip(&b.mats).all(|(x, y)| x.same_matrix(y)))
            }
            _ => panic!("expected monomial"),
        }
        let c1 = rho.to_dense().commutant_dim_f64();
        let c2 = up.to_dense().commutant_dim_f64();
        assert!((c1 - 1.0).abs() < 1e-9 && (c2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn regular_rep_does_not_descend() {
        let (ext, _) = klein_setup();
        let reg = crate::projrep::twisted_regular(&Cocycle::trivial(&ext.total));
        assert!(descend(&ProjRep::Monomial(reg), &ext).is_err());
    }

    #[test]
    fn correspondence_intertwines() {
        let (ext, chars) = klein_setup();
        for chi in &chars {
            let alpha = transgression(&ext, chi).unwrap();
            for h in ext.quotient.all_subgroups() {
                for psi in alpha_characters(&alpha, &h).unwrap() {
                    let c = monomial_correspondence(&ext, chi, &psi).unwrap();
                    assert!(c.violation().is_none());
                }
            }
        }
    }

    #[test]
    fn weight_spaces() {
        let (ext, chars) = klein_setup();
        let alpha = transgression(&ext, &chars[1]).unwrap();
        let h = ext.quotient.generated_subgroup(&[1]);
        let psis = alpha_characters(&alpha, &h).unwrap();
        let rho = induce(&alpha, &psis[0]).unwrap().to_dense();
        assert_eq!(finite_weight_space(&rho, &psis[0]).ncols(), 1);
        let mut wrong = psis[0].clone();
        wrong.modulus *= 3;
        for e in wrong.exps.iter_mut() {
            *e = (*e * 3 + 1) % wrong.modulus;
        }
        wrong.exps[0] = 0;
        assert_eq!(finite_weight_space(&rho, &wrong).ncols(), 0);
        let all = ProjCharacter::new(&ext.quotient, &[ext.quotient.identity()], 1, vec![0]).unwrap();
        assert_eq!(finite_weight_space(&rho, &all).ncols(), 2);
        let dec = decompose(&rho, 1).unwrap();
        assert_eq!(dec.dims(), vec![2]);
    }
}
