use crate::arith::gcd;
use crate::{Error, FinAbDesc, MetacyclicDesc, Result};

/// `H_2` of a finitely generated abelian group via the exterior square:
/// `⊕_{i<j} Z/gcd(n_i, n_j)` with `gcd(n, 0) = n` and `gcd(0, 0) = 0`.
pub fn multiplier_finab(desc: &FinAbDesc) -> FinAbDesc {
    let f = desc.invariant_factors();
    let mut parts = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            parts.push(gcd(f[i], f[j]));
        }
    }
    FinAbDesc::new(&parts)
}

/// `H_2(G(m, n, r), Z)` for the infinite metacyclic groups: `Z/t` with `t = gcd(m, r - 1)`
/// when `m > 0 = n`, trivial when `m = 0 < n`.
pub fn multiplier_metacyclic(desc: &MetacyclicDesc) -> Result<FinAbDesc> {
    match (desc.m, desc.n) {
        (0, 0) => Err(Error::invalid("G(0,0,r) is outside the infinite metacyclic family")),
        (m, 0) => Ok(FinAbDesc::new(&[gcd(m, desc.r - 1)])),
        (0, _) => Ok(FinAbDesc::trivial()),
        _ => Err(Error::invalid(
            "the closed form covers mn = 0 only; use h2_integral for finite groups",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_formula() {
        assert_eq!(multiplier_finab(&FinAbDesc::new(&[2, 2])).invariant_factors(), &[2]);
        assert_eq!(multiplier_finab(&FinAbDesc::new(&[2, 4])).invariant_factors(), &[2]);
        assert!(multiplier_finab(&FinAbDesc::new(&[12])).is_trivial());
        assert_eq!(multiplier_finab(&FinAbDesc::new(&[0, 0])).invariant_factors(), &[0]);
        assert_eq!(
            multiplier_finab(&FinAbDesc::new(&[2, 2, 2])).invariant_factors(),
            &[2, 2, 2]
        );
        assert_eq!(multiplier_finab(&FinAbDesc::new(&[3, 0, 0])).invariant_factors(), &[3, 3, 0]);
    }

    #[test]
    fn metacyclic_formula() {
        let f = |m, n, r| multiplier_metacyclic(&MetacyclicDesc::new(m, n, r).unwrap());
        assert_eq!(f(8, 0, 3).unwrap().invariant_factors(), &[2]);
        assert!(f(0, 5, 2).unwrap().is_trivial());
        assert_eq!(f(7, 0, 8).unwrap().invariant_factors(), &[7]);
        assert!(f(5, 0, 2).unwrap().is_trivial());
        assert!(f(4, 2, 3).is_err());
    }
}
