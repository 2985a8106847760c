use crate::arith::{divisors, lcm, RootExp};
use crate::homology::{RowEchelon, XiData};
use crate::{Error, FiniteGroupTable, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

/// A 2-cocycle on a finite group with values `ζ_N^{e(x,y)}`, stored as exponents mod `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    group: FiniteGroupTable,
    modulus: u64,
    /// Row-major exponents; empty when `N = 1`.
    exps: Arc<[u64]>,
}

/// A 1-cochain `μ : G → μ_N` with `μ(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    group: FiniteGroupTable,
    modulus: u64,
    values: Vec<u64>,
}

impl Cochain1 {
    pub fn new(group: &FiniteGroupTable, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if values.len() != group.order() {
            return Err(Error::Dimension {
                expected: group.order(),
                found: values.len(),
            });
        }
        let values: Vec<u64> = values.into_iter().map(|v| v % modulus).collect();
        if values[group.identity()] != 0 {
            return Err(Error::invalid("a cochain must send the identity to 1"));
        }
        Ok(Cochain1 {
            group: group.clone(),
            modulus,
            values,
        })
    }

    pub fn trivial(group: &FiniteGroupTable) -> Self {
        Cochain1 {
            group: group.clone(),
            modulus: 1,
            values: vec![0; group.order()],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exp(&self, g: usize) -> u64 {
        self.values[g]
    }

    pub fn value(&self, g: usize) -> RootExp {
        RootExp::new(self.modulus, self.values[g] as i128)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }
}

impl Cocycle {
    /// Validated constructor; the table is `exps[x][y]` over element indices.
    pub fn from_table(group: &FiniteGroupTable, modulus: u64, table: &[Vec<u64>]) -> Result<Self> {
        let n = group.order();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension {
                expected: n,
                found: table.len(),
            });
        }
        let c = Cocycle::from_fn(group, modulus, |x, y| table[x][y])?;
        if let Some((x, y, z)) = c.violation() {
            return Err(Error::invalid(format!("not a cocycle: identity fails at ({x}, {y}, {z})")));
        }
        Ok(c)
    }

    /// Builds the table from a closure without checking the cocycle identity.
    pub fn from_fn<F: Fn(usize, usize) -> u64>(
        group: &FiniteGroupTable,
        modulus: u64,
        f: F,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if modulus == 1 {
            return Ok(Cocycle {
                group: group.clone(),
                modulus,
                exps: Arc::from([]),
            });
        }
        let n = group.order();
        let mut exps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                exps.push(f(x, y) % modulus);
            }
        }
        Ok(Cocycle {
            group: group.clone(),
            modulus,
            exps: exps.into(),
        })
    }

    pub fn trivial(group: &FiniteGroupTable) -> Self {
        Cocycle::from_fn(group, 1, |_, _| 0).expect("modulus 1")
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exp(&self, x: usize, y: usize) -> u64 {
        if self.exps.is_empty() {
            return 0;
        }
        self.exps[x * self.group.order() + y]
    }

    pub fn value(&self, x: usize, y: usize) -> RootExp {
        RootExp::new(self.modulus, self.exp(x, y) as i128)
    }

    pub fn table(&self) -> Vec<Vec<u64>> {
        let n = self.group.order();
        if self.exps.is_empty() {
            return vec![vec![0; n]; n];
        }
        self.exps.chunks(n).map(|c| c.to_vec()).collect()
    }

    /// Overwrites one exponent; used for negative controls.
    pub fn set_exp(&mut self, x: usize, y: usize, e: u64) {
        let n = self.group.order();
        if self.modulus > 1 {
            Arc::make_mut(&mut self.exps)[x * n + y] = e % self.modulus;
        }
    }

    /// Same cocycle written over the modulus `target`, a multiple of the current one.
    pub fn lift(&self, target: u64) -> Cocycle {
        assert!(target % self.modulus == 0, "target must be a multiple of the modulus");
        let f = target / self.modulus;
        if self.exps.is_empty() {
            return Cocycle::from_fn(&self.group, target, |_, _| 0).expect("positive modulus");
        }
        Cocycle {
            group: self.group.clone(),
            modulus: target,
            exps: self.exps.iter().map(|e| e * f).collect(),
        }
    }

    /// Pointwise product, moduli merged to their lcm.
    pub fn mul(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.group != other.group {
            return Err(Error::invalid("cocycles live on different groups"));
        }
        let m = lcm(self.modulus, other.modulus);
        let (a, b) = (self.lift(m), other.lift(m));
        Ok(Cocycle {
            group: self.group.clone(),
            modulus: m,
            exps: a.exps.iter().zip(b.exps.iter()).map(|(x, y)| (x + y) % m).collect(),
        })
    }

    pub fn inv(&self) -> Cocycle {
        let m = self.modulus;
        Cocycle {
            group: self.group.clone(),
            modulus: m,
            exps: self.exps.iter().map(|x| (m - x) % m).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Cocycle {
        let m = self.modulus;
        Cocycle {
            group: self.group.clone(),
            modulus: m,
            exps: self.exps.iter().map(|x| ((*x as u128 * k as u128) % m as u128) as u64).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        let e = self.group.identity();
        self.group.elements().all(|g| self.exp(e, g) == 0 && self.exp(g, e) == 0)
    }

    /// Shifts by the constant `α(1,1)`, which makes `α(1,g) = α(g,1) = 1` for a cocycle.
    pub fn normalized(&self) -> Cocycle {
        let e = self.group.identity();
        let c = self.exp(e, e);
        let m = self.modulus;
        Cocycle {
            group: self.group.clone(),
            modulus: m,
            exps: self.exps.iter().map(|x| (x + m - c) % m).collect(),
        }
    }

    /// A triple where `α(x,y)α(xy,z) = α(x,yz)α(y,z)` fails, if any.
    pub fn violation(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        let m = self.modulus;
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.mul(x, y);
                let a = self.exp(x, y);
                for z in g.elements() {
                    let lhs = (a + self.exp(xy, z)) % m;
                    let rhs = (self.exp(x, g.mul(y, z)) + self.exp(y, z)) % m;
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Exhaustive check of the cocycle identity.
    pub fn is_cocycle(&self) -> bool {
        self.violation().is_none()
    }
}

/// `δμ(x, y) = μ(x)^{-1} μ(y)^{-1} μ(xy)`.
pub fn coboundary(mu: &Cochain1) -> Cocycle {
    let g = &mu.group;
    let m = mu.modulus;
    Cocycle::from_fn(g, m, |x, y| {
        (mu.values[g.mul(x, y)] + 2 * m - mu.values[x] - mu.values[y]) % m
    })
    .expect("positive modulus")
}

/// Decides whether `α` is a `C^×`-coboundary and returns a witness.
///
/// If `α = δν` with `α^N = 1`, then `δ(ν^N) = 1`, so `ν^N` is a homomorphism `G → C^×` and
/// `ν^{N|G|} = 1`. Hence it suffices to search `ν` with values in `μ_{N|G|}`. The values on a
/// generating set determine `ν` along a breadth-first spanning tree of the Cayley graph; the
/// remaining equations form a linear system over `Z/(N|G|)` in those few unknowns.
pub fn is_coboundary(alpha: &Cocycle) -> Option<Cochain1> {
    let g = &alpha.group;
    let n = g.order();
    let big_m = alpha.modulus * n as u64;
    let a = |x: usize, y: usize| -> u64 { alpha.exp(x, y) * n as u64 };
    let gens = g.generating_set();
    let k = gens.len();
    // ν(h) = coef(h) · ν(gens) + cst(h)
    let mut coef: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut cst = vec![0u64; n];
    let e = g.identity();
    coef[e] = Some(vec![0; k]);
    let mut queue = VecDeque::from([e]);
    for (i, &s) in gens.iter().enumerate() {
        if coef[s].is_none() {
            let mut c = vec![0; k];
            c[i] = 1;
            coef[s] = Some(c);
            queue.push_back(s);
        }
    }
    while let Some(h) = queue.pop_front() {
        for &s in &gens {
            let hs = g.mul(h, s);
            if coef[hs].is_some() {
                continue;
            }
            let ch = coef[h].as_ref().unwrap();
            let cs = coef[s].as_ref().unwrap();
            let c: Vec<i64> =
                ch.iter().zip(cs).map(|(p, q)| (p + q).rem_euclid(big_m as i64)).collect();
            cst[hs] = (cst[h] + cst[s] + a(h, s)) % big_m;
            coef[hs] = Some(c);
            queue.push_back(hs);
        }
    }
    let coef: Vec<Vec<i64>> = coef.into_iter().map(|c| c.expect("generators reach every element")).collect();

    // equations coef(xy) - coef(x) - coef(y) ≡ a(x,y) - cst(xy) + cst(x) + cst(y)
    let mut ech = RowEchelon::new(k + 1, None);
    let mut seen = HashSet::new();
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            let mut row: Vec<i64> = (0..k)
                .map(|i| (coef[xy][i] - coef[x][i] - coef[y][i]).rem_euclid(big_m as i64))
                .collect();
            let rhs = (a(x, y) as i128 - cst[xy] as i128 + cst[x] as i128 + cst[y] as i128)
                .rem_euclid(big_m as i128) as i64;
            row.push(rhs);
            if row.iter().all(|&v| v == 0) || !seen.insert(row.clone()) {
                continue;
            }
            ech.insert(row.into_iter().map(BigInt::from).collect(), None);
        }
    }
    let mbig = BigInt::from(big_m);
    let mut coeff_rows = Vec::new();
    let mut rhs = Vec::new();
    for row in ech.basis() {
        if row[..k].iter().all(|v| v.is_zero()) {
            if !row[k].is_multiple_of(&mbig) {
                return None;
            }
            continue;
        }
        coeff_rows.push(row[..k].to_vec());
        rhs.push(row[k].clone());
    }
    let mut z = vec![BigInt::zero(); k];
    let mut v_mat = crate::homology::IntMatrix::identity(k);
    if !coeff_rows.is_empty() {
        let a_mat = crate::homology::IntMatrix::from_rows(&coeff_rows).expect("rectangular");
        let res = crate::homology::snf(&a_mat);
        let c: Vec<BigInt> = (0..coeff_rows.len())
            .map(|i| (0..rhs.len()).map(|j| res.u.get(i, j) * &rhs[j]).sum())
            .collect();
        for (i, ci) in c.iter().enumerate() {
            let s = if i < k { res.s.get(i, i).clone() } else { BigInt::zero() };
            let gcd = s.gcd(&mbig);
            if !ci.is_multiple_of(&gcd) {
                return None;
            }
            if i < k && !s.is_zero() {
                let modg = &mbig / &gcd;
                let sg = (&s / &gcd).mod_floor(&modg);
                let inv = crate::arith::mod_inv(
                    sg.to_i128().expect("small"),
                    modg.to_u64().expect("small"),
                )
                .expect("coprime after dividing out the gcd");
                z[i] = ((ci / &gcd) * BigInt::from(inv)).mod_floor(&modg);
            }
        }
        v_mat = res.v;
    }
    let nu_gens: Vec<BigInt> = (0..k)
        .map(|i| (0..k).map(|j| v_mat.get(i, j) * &z[j]).sum::<BigInt>().mod_floor(&mbig))
        .collect();
    let values: Vec<u64> = (0..n)
        .map(|h| {
            let mut v = BigInt::from(cst[h]);
            for i in 0..k {
                v += &nu_gens[i] * coef[h][i];
            }
            v.mod_floor(&mbig).to_u64().unwrap()
        })
        .collect();
    let mu = Cochain1::new(g, big_m, values).ok()?;
    let check = coboundary(&mu);
    (check.lift(big_m) == alpha.lift(big_m)).then_some(mu)
}

/// Whether `[α] = [β]` in `H^2(G, C^×)`.
pub fn cohomologous(alpha: &Cocycle, beta: &Cocycle) -> Result<bool> {
    Ok(is_coboundary(&alpha.mul(&beta.inv())?).is_some())
}

/// Order of `[α]` in `H^2(G, C^×)`: the least `k` with `α^k` a coboundary. It divides `N`.
pub fn class_order(alpha: &Cocycle, cap: usize) -> Result<u64> {
    crate::homology::check_cap(&alpha.group, cap)?;
    for k in divisors(alpha.modulus) {
        if is_coboundary(&alpha.pow(k)).is_some() {
            return Ok(k);
        }
    }
    unreachable!("α^N is trivial")
}

/// `α(g_1, g_2) = Π_i ζ_{r_i}^{λ_i t_i(g_1, g_2)}` for exponents `λ_i mod r_i`.
pub fn xi_cocycle(xi: &XiData, lambda_exps: &[u64]) -> Result<Cocycle> {
    if lambda_exps.len() != xi.t.len() {
        return Err(Error::Dimension {
            expected: xi.t.len(),
            found: lambda_exps.len(),
        });
    }
    let m = xi.t.iter().map(|t| t.modulus).fold(1, lcm);
    Cocycle::from_fn(&xi.group, m, |x, y| {
        xi.t.iter()
            .zip(lambda_exps)
            .map(|(t, &l)| (m / t.modulus) * ((l % t.modulus) * t.get(x, y) % t.modulus))
            .sum::<u64>()
    })
}

/// Restriction to a subgroup, returned on the subgroup's own table together with the
/// embedding of its indices.
pub fn restriction(alpha: &Cocycle, subgroup: &[usize]) -> Result<(Cocycle, Vec<usize>)> {
    let (sub, embed) = alpha.group.subtable(subgroup)?;
    let c = Cocycle::from_fn(&sub, alpha.modulus, |x, y| alpha.exp(embed[x], embed[y]))?;
    Ok((c, embed))
}

impl Cocycle {
    /// `ζ_N^e` as a complex number, for dense representations.
    pub fn complex(&self, x: usize, y: usize) -> num_complex::Complex64 {
        self.value(x, y).to_complex()
    }

    pub fn is_trivial_table(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl Cochain1 {
    /// Pointwise root-of-unity product with another cochain on the same group.
    pub fn mul(&self, other: &Cochain1) -> Result<Cochain1> {
        if self.group != other.group {
            return Err(Error::invalid("cochains live on different groups"));
        }
        let m = lcm(self.modulus, other.modulus);
        let (fa, fb) = (m / self.modulus, m / other.modulus);
        Cochain1::new(
            &self.group,
            m,
            self.values.iter().zip(&other.values).map(|(a, b)| (a * fa + b * fb) % m).collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite_table_of;
    use crate::homology::xi_extract;
    use crate::FinAbDesc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn klein() -> FiniteGroupTable {
        finite_table_of(&FinAbDesc::new(&[2, 2])).unwrap()
    }

    #[test]
    fn z2_sign_cochain_has_trivial_coboundary() {
        let g = FiniteGroupTable::cyclic(2);
        let mu = Cochain1::new(&g, 2, vec![0, 1]).unwrap();
        assert!(coboundary(&mu).is_trivial_table());
    }

    #[test]
    fn klein_class_is_nontrivial_of_order_two() {
        let g = klein();
        let xi = xi_extract(&g).unwrap();
        let alpha = xi_cocycle(&xi, &[1]).unwrap();
        assert!(alpha.is_cocycle() && alpha.is_normalized());
        assert!(is_coboundary(&alpha).is_none());
        assert_eq!(class_order(&alpha, 24).unwrap(), 2);
        assert_eq!(class_order(&Cocycle::trivial(&g), 24).unwrap(), 1);
        let mut bad = alpha.clone();
        bad.set_exp(1, 2, alpha.exp(1, 2) + 1);
        assert!(!bad.is_cocycle());
    }

    #[test]
    fn random_coboundaries_are_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [FiniteGroupTable::cyclic(6), klein(), FiniteGroupTable::dicyclic(2)] {
            for _ in 0..20 {
                let mut vals: Vec<u64> = (0..g.order()).map(|_| rng.random_range(0..12)).collect();
                vals[g.identity()] = 0;
                let mu = Cochain1::new(&g, 12, vals).unwrap();
                let beta = coboundary(&mu);
                assert!(beta.is_cocycle());
                let w = is_coboundary(&beta).expect("coboundary must be recognized");
                assert_eq!(coboundary(&w).lift(w.modulus()), beta.lift(w.modulus()));
            }
        }
    }

    #[test]
    fn restriction_to_trivial_subgroup() {
        let g = klein();
        let alpha = xi_cocycle(&xi_extract(&g).unwrap(), &[1]).unwrap();
        let (r, _) = restriction(&alpha, &[g.identity()]).unwrap();
        assert!(r.is_trivial_table());
    }
}
