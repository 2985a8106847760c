use crate::homology::{check_cap, cokernel, h2_integral, SparseMatrix};
use crate::arith::{ext_gcd, gcd};
use crate::{Error, FinAbDesc, FiniteGroupTable, Result};
use num_traits::ToPrimitive;
use std::collections::HashSet;

/// Largest group the cochain solve accepts; the system has `(|G|-1)^2` unknowns.
pub const BRUTEFORCE_CAP: usize = 16;

/// `H^2(G, C^×)` from the cochain complex, compared against the torsion of `H_2(G, Z)`.
pub fn h2_bruteforce(t: &FiniteGroupTable) -> Result<FinAbDesc> {
    let direct = h2_cochain_solve(t)?;
    let homology = h2_integral(t)?;
    let torsion = homology.torsion();
    if direct != torsion {
        return Err(Error::check(format!(
            "cochain solve gives {direct} but H_2 has torsion {torsion}"
        )));
    }
    Ok(direct)
}

/// Normalized `μ_N`-valued cocycles modulo `C^×`-coboundaries, `N = |G|`, without the
/// homology comparison.
///
/// Every class has a representative with values in `μ_N`. A normalized `μ_N`-valued
/// coboundary `δν` has `ν^N = χ` a character, so it is `δν'·k_χ` with `ν'` valued in `μ_N`
/// and `k_χ = δ(χ^{1/N})` for the branch of the root with exponents in `[0, e)`.
pub fn h2_cochain_solve(t: &FiniteGroupTable) -> Result<FinAbDesc> {
    check_cap(t, BRUTEFORCE_CAP)?;
    let n = t.order();
    let big_n = n as i64;
    if n == 1 {
        return Ok(FinAbDesc::trivial());
    }
    let id = t.identity();
    let nonid: Vec<usize> = t.elements().filter(|&g| g != id).collect();
    let mut pos = vec![usize::MAX; n];
    for (k, &g) in nonid.iter().enumerate() {
        pos[g] = k;
    }
    let w = nonid.len();
    let var = |x: usize, y: usize| -> Option<usize> {
        (x != id && y != id).then(|| pos[x] * w + pos[y])
    };
    let unknowns = w * w;

    let mut seen = HashSet::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for &x in &nonid {
        for &y in &nonid {
            let xy = t.mul(x, y);
            for &z in &nonid {
                let mut row = vec![0i64; unknowns];
                let terms = [
                    (var(x, y), 1),
                    (var(xy, z), 1),
                    (var(x, t.mul(y, z)), -1),
                    (var(y, z), -1),
                ];
                for (v, s) in terms {
                    if let Some(v) = v {
                        row[v] = (row[v] + s).rem_euclid(big_n);
                    }
                }
                if row.iter().any(|&v| v != 0) && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    let d = ModDiag::run(rows, unknowns, big_n);
    // cocycles: a = P b with b_j ∈ (N / g_j) Z, so Z ≅ ⊕ Z/g_j
    let g: Vec<i64> = (0..unknowns).map(|j| gcd(d.diag_at(j) as u64, n as u64) as i64).collect();

    let mut generators: Vec<Vec<i64>> = Vec::new();
    for &h in &nonid {
        // δe_h: μ = ζ_N at h only
        let mut v = vec![0i64; unknowns];
        for &x in &nonid {
            for &y in &nonid {
                let xy = t.mul(x, y);
                let mut e = 0;
                if xy == h {
                    e += 1;
                }
                if x == h {
                    e -= 1;
                }
                if y == h {
                    e -= 1;
                }
                v[var(x, y).unwrap()] = (e as i64).rem_euclid(big_n);
            }
        }
        generators.push(v);
    }
    let exponent = t.exponent() as i64;
    for chi in super::characters_of(t, &t.elements().collect::<Vec<_>>()) {
        let scale = exponent / chi.modulus as i64;
        let c = |u: usize| chi.exp(u).unwrap() as i64 * scale;
        let mut v = vec![0i64; unknowns];
        for &x in &nonid {
            for &y in &nonid {
                let diff = c(t.mul(x, y)) - c(x) - c(y);
                debug_assert_eq!(diff % exponent, 0);
                v[var(x, y).unwrap()] = (diff / exponent).rem_euclid(big_n);
            }
        }
        generators.push(v);
    }

    let mut rel = SparseMatrix::new(unknowns);
    for v in &generators {
        let b = d.to_b_coords(v);
        let mut terms = Vec::new();
        for (j, &bj) in b.iter().enumerate() {
            let step = big_n / g[j];
            if bj % step != 0 {
                return Err(Error::check("a coboundary failed the cocycle equations"));
            }
            let c = (bj / step) % g[j];
            if c != 0 {
                terms.push((j, c));
            }
        }
        rel.push_terms(&terms);
    }
    for (j, &gj) in g.iter().enumerate() {
        rel.push_terms(&[(j, gj)]);
    }
    let co = cokernel(&rel);
    if co.free_rank() != 0 {
        return Err(Error::check("cochain quotient has a free part"));
    }
    let factors: Vec<u64> = co.factors.iter().map(|f| f.to_u64().expect("divides |G|")).collect();
    FinAbDesc::from_invariant_factors(&factors)
}

/// Diagonalization `A·P ≡ D` (after row operations) over `Z/N` with the column transform
/// and its inverse tracked.
struct ModDiag {
    modulus: i64,
    diag: Vec<i64>,
    p_inv: Vec<Vec<i64>>,
}

impl ModDiag {
    fn run(mut a: Vec<Vec<i64>>, cols: usize, m: i64) -> ModDiag {
        let mut p_inv: Vec<Vec<i64>> = (0..cols)
            .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut diag = Vec::new();
        let md = |x: i64| x.rem_euclid(m);
        let gn = |x: i64| gcd(x as u64, m as u64) as i64;
        for k in 0..cols {
            a.retain(|r| r.iter().any(|&v| v != 0));
            if a.len() <= k {
                break;
            }
            // pivot: least gcd with N, then lowest row and column
            let mut best: Option<(i64, usize, usize)> = None;
            'scan: for (i, row) in a.iter().enumerate().skip(k) {
                for (j, &v) in row.iter().enumerate().skip(k) {
                    if v != 0 && best.is_none_or(|(bg, _, _)| gn(v) < bg) {
                        best = Some((gn(v), i, j));
                        if gn(v) == 1 {
                            break 'scan;
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            a.swap(k, pi);
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(k, pj);
                }
                p_inv.swap(k, pj);
            }
            loop {
                let mut dirty = false;
                for i in k + 1..a.len() {
                    let (p, q) = (a[k][k], a[i][k]);
                    if q == 0 {
                        continue;
                    }
                    if let Some(c) = solve(p, q, m) {
                        let (rk, ri) = (a[k].clone(), &mut a[i]);
                        for (x, y) in ri.iter_mut().zip(&rk) {
                            *x = md(*x - c * y);
                        }
                    } else {
                        let (gg, x, y) = ext_gcd(p as i128, q as i128);
                        let (gg, x, y) = (gg as i64, x as i64, y as i64);
                        let (pg, qg) = (p / gg, q / gg);
                        let rk = a[k].clone();
                        let ri = a[i].clone();
                        for j in 0..a[k].len() {
                            a[k][j] = md(x * rk[j] + y * ri[j]);
                            a[i][j] = md(-qg * rk[j] + pg * ri[j]);
                        }
                    }
                }
                for j in k + 1..cols {
                    let (p, q) = (a[k][k], a[k][j]);
                    if q == 0 {
                        continue;
                    }
                    dirty = true;
                    if let Some(c) = solve(p, q, m) {
                        for row in a.iter_mut() {
                            row[j] = md(row[j] - c * row[k]);
                        }
                        let rj = p_inv[j].clone();
                        for (x, y) in p_inv[k].iter_mut().zip(&rj) {
                            *x = md(*x + c * y);
                        }
                    } else {
                        let (gg, x, y) = ext_gcd(p as i128, q as i128);
                        let (gg, x, y) = (gg as i64, x as i64, y as i64);
                        let (pg, qg) = (p / gg, q / gg);
                        for row in a.iter_mut() {
                            let (ck, cj) = (row[k], row[j]);
                            row[k] = md(x * ck + y * cj);
                            row[j] = md(-qg * ck + pg * cj);
                        }
                        let (rk, rj) = (p_inv[k].clone(), p_inv[j].clone());
                        for c in 0..cols {
                            p_inv[k][c] = md(pg * rk[c] + qg * rj[c]);
                            p_inv[j][c] = md(-y * rk[c] + x * rj[c]);
                        }
                    }
                }
                if !dirty && (k + 1..a.len()).all(|i| a[i][k] == 0) {
                    break;
                }
            }
            diag.push(a[k][k]);
        }
        ModDiag {
            modulus: m,
            diag,
            p_inv,
        }
    }

    fn diag_at(&self, j: usize) -> i64 {
        self.diag.get(j).copied().unwrap_or(0)
    }

    fn to_b_coords(&self, v: &[i64]) -> Vec<i64> {
        self.p_inv
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(self.modulus))
            .collect()
    }
}

/// `c` with `c·p ≡ q (mod m)`, if one exists.
fn solve(p: i64, q: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(p as i128, m as i128);
    let g = g as i64;
    (q % g == 0).then(|| ((x as i64 % m) * (q / g)).rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite_table_of;

    fn fab(f: &[u64]) -> FiniteGroupTable {
        finite_table_of(&FinAbDesc::new(f)).unwrap()
    }

    #[test]
    fn small_abelian_groups() {
        assert!(h2_bruteforce(&FiniteGroupTable::cyclic(6)).unwrap().is_trivial());
        assert_eq!(h2_bruteforce(&fab(&[2, 2])).unwrap().invariant_factors(), &[2]);
        assert_eq!(h2_bruteforce(&fab(&[2, 4])).unwrap().invariant_factors(), &[2]);
        assert_eq!(h2_cochain_solve(&fab(&[3, 3])).unwrap().invariant_factors(), &[3]);
    }

    #[test]
    fn quaternion_and_dihedral() {
        assert!(h2_cochain_solve(&FiniteGroupTable::dicyclic(2)).unwrap().is_trivial());
        let d8 = finite_table_of(&crate::MetacyclicDesc::new(4, 2, 3).unwrap()).unwrap();
        assert_eq!(h2_cochain_solve(&d8).unwrap().invariant_factors(), &[2]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            h2_cochain_solve(&FiniteGroupTable::cyclic(17)),
            Err(Error::CapExceeded { .. })
        ));
    }
}
