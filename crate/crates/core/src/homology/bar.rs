use super::matrix::{IntMatrix, SparseMatrix};
use super::snf::{cokernel, cokernel_factors_dense, snf};
use crate::{Error, FinAbDesc, FiniteGroupTable, Result};
use num_traits::{ToPrimitive, Zero};

/// Default largest group order for which bar matrices are built.
pub const DEFAULT_BAR_CAP: usize = 24;

pub(crate) fn check_cap(t: &FiniteGroupTable, cap: usize) -> Result<()> {
    if t.order() > cap {
        return Err(Error::CapExceeded {
            order: t.order(),
            cap,
        });
    }
    Ok(())
}

/// Index of the pair `(x, y)` in the basis of `C_2`.
pub fn pair_index(n: usize, x: usize, y: usize) -> usize {
    x * n + y
}

/// Matrix of `d̄_2` or `d̄_3` of the bar complex tensored with `Z`, rows indexed by source
/// tuples in lexicographic order:
///
/// `d̄_2[[x,y]] = [[y]] - [[xy]] + [[x]]`,
/// `d̄_3[[x,y,z]] = [[y,z]] - [[xy,z]] + [[x,yz]] - [[x,y]]`.
pub fn bar_boundary(t: &FiniteGroupTable, degree: usize) -> Result<SparseMatrix> {
    bar_boundary_capped(t, degree, DEFAULT_BAR_CAP)
}

pub fn bar_boundary_capped(t: &FiniteGroupTable, degree: usize, cap: usize) -> Result<SparseMatrix> {
    check_cap(t, cap)?;
    let n = t.order();
    match degree {
        2 => {
            let mut m = SparseMatrix::new(n);
            for x in 0..n {
                for y in 0..n {
                    m.push_terms(&[(y, 1), (t.mul(x, y), -1), (x, 1)]);
                }
            }
            Ok(m)
        }
        3 => {
            let mut m = SparseMatrix::new(n * n);
            for x in 0..n {
                for y in 0..n {
                    let xy = t.mul(x, y);
                    for z in 0..n {
                        m.push_terms(&[
                            (pair_index(n, y, z), 1),
                            (pair_index(n, xy, z), -1),
                            (pair_index(n, x, t.mul(y, z)), 1),
                            (pair_index(n, x, y), -1),
                        ]);
                    }
                }
            }
            Ok(m)
        }
        d => Err(Error::invalid(format!("bar_boundary supports degrees 2 and 3, not {d}"))),
    }
}

/// Checks `d̄_2 ∘ d̄_3 = 0`.
pub fn check_boundary_composition(t: &FiniteGroupTable, cap: usize) -> Result<()> {
    let d2 = bar_boundary_capped(t, 2, cap)?;
    let d3 = bar_boundary_capped(t, 3, cap)?;
    let comp = d3.mul(&d2);
    match comp.rows.iter().position(|r| !r.is_empty()) {
        None => Ok(()),
        Some(i) => {
            let n = t.order();
            Err(Error::check(format!(
                "d2 d3 != 0 on the tuple ({}, {}, {})",
                i / (n * n),
                (i / n) % n,
                i % n
            )))
        }
    }
}

fn factors_to_desc(f: &[num_bigint::BigInt]) -> FinAbDesc {
    let v: Vec<u64> = f.iter().map(|d| d.to_u64().expect("factor fits in u64")).collect();
    FinAbDesc::new(&v)
}

/// `H_2(G, Z) = Ker d̄_2 / Im d̄_3` with the default cap.
pub fn h2_integral(t: &FiniteGroupTable) -> Result<FinAbDesc> {
    h2_integral_capped(t, DEFAULT_BAR_CAP)
}

/// `H_2(G, Z)` from the cokernel of `d̄_3`.
///
/// `C_2 / Ker d̄_2 ≅ Im d̄_2` is free, so `coker d̄_3 ≅ H_2 ⊕ Z^{rank d̄_2}`: the torsion of the
/// cokernel is the torsion of `H_2`, and the free ranks differ by `rank d̄_2`.
pub fn h2_integral_capped(t: &FiniteGroupTable, cap: usize) -> Result<FinAbDesc> {
    let d2 = bar_boundary_capped(t, 2, cap)?;
    let d3 = bar_boundary_capped(t, 3, cap)?;
    let c3 = cokernel(&d3);
    let rank_d2 = cokernel(&d2).rank;
    let free = c3.free_rank() - rank_d2;
    let mut f: Vec<num_bigint::BigInt> =
        c3.factors.iter().filter(|d| !d.is_zero()).cloned().collect();
    f.extend(std::iter::repeat_n(num_bigint::BigInt::zero(), free));
    Ok(factors_to_desc(&f))
}

/// The literal two-pass computation: a kernel basis of `d̄_2` from one Smith form, then the
/// Smith form of `Im d̄_3` written in that basis. Dense; meant as an oracle for small groups.
pub fn h2_two_pass(t: &FiniteGroupTable, cap: usize) -> Result<FinAbDesc> {
    let d2 = bar_boundary_capped(t, 2, cap)?.to_dense();
    let d3 = bar_boundary_capped(t, 3, cap)?;
    let first = snf(&d2);
    let n2 = d2.rows();
    let k = n2 - first.rank;
    // rows first.rank.. of U span the left kernel of d̄_2; a vector y in it has U-coordinates
    // y · U^{-1}, supported on those rows
    let mut coords = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for row in &d3.rows {
        if row.is_empty() || !seen.insert(row.clone()) {
            continue;
        }
        let mut c = vec![num_bigint::BigInt::zero(); n2];
        for &(col, v) in row {
            let src = first.u_inv.row(col as usize);
            for (ci, s) in c.iter_mut().zip(src) {
                if !s.is_zero() {
                    *ci += s * v;
                }
            }
        }
        if c[..first.rank].iter().any(|x| !x.is_zero()) {
            return Err(Error::check("an image of d3 is not in the kernel of d2"));
        }
        coords.push(c[first.rank..].to_vec());
    }
    let m = if coords.is_empty() {
        IntMatrix::zeros(0, k)
    } else {
        IntMatrix::from_rows(&coords)?
    };
    Ok(factors_to_desc(&cokernel_factors_dense(&m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite_table_of;

    #[test]
    fn small_boundaries() {
        let triv = FiniteGroupTable::cyclic(1);
        let d2 = bar_boundary(&triv, 2).unwrap();
        assert_eq!(d2.rows, vec![vec![(0, 1)]]);
        let z2 = FiniteGroupTable::cyclic(2);
        let d2 = bar_boundary(&z2, 2).unwrap();
        // (g, g) -> e_g - e_1 + e_g
        assert_eq!(d2.rows[pair_index(2, 1, 1)], vec![(0, -1), (1, 2)]);
        // (g, 1) -> e_1
        assert_eq!(d2.rows[pair_index(2, 1, 0)], vec![(0, 1)]);
    }

    #[test]
    fn composition_vanishes() {
        for t in [
            FiniteGroupTable::cyclic(5),
            FiniteGroupTable::dicyclic(2),
            finite_table_of(&crate::MetacyclicDesc::new(3, 2, 2).unwrap()).unwrap(),
        ] {
            check_boundary_composition(&t, DEFAULT_BAR_CAP).unwrap();
        }
    }

    #[test]
    fn klein_four_multiplier() {
        let t = finite_table_of(&FinAbDesc::new(&[2, 2])).unwrap();
        assert_eq!(h2_integral(&t).unwrap().invariant_factors(), &[2]);
        assert_eq!(h2_two_pass(&t, 8).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn cyclic_multipliers_vanish() {
        for n in 1..=12 {
            let t = FiniteGroupTable::cyclic(n);
            assert!(h2_integral(&t).unwrap().is_trivial(), "Z/{n}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = FiniteGroupTable::cyclic(30);
        assert!(matches!(h2_integral(&t), Err(Error::CapExceeded { order: 30, cap: 24 })));
    }
}
