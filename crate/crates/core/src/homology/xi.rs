use super::bar::{bar_boundary_capped, pair_index, DEFAULT_BAR_CAP};
use super::snf::{cokernel, RowEchelon};
use crate::{Error, FinAbDesc, FiniteGroupTable, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// One coordinate `t_i : G × G → Z/r_i` of the map into `H_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TTable {
    pub modulus: u64,
    n: usize,
    values: Vec<u64>,
}

impl TTable {
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.values[x * self.n + y]
    }

    /// Overwrites one entry (reduced mod the modulus); used to build negative controls.
    pub fn set(&mut self, x: usize, y: usize, v: u64) {
        self.values[x * self.n + y] = v % self.modulus;
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.values.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }
}

/// Splitting data of the bar complex: the invariant factors of `H_2` and the normalized
/// coordinate tables of the map `ξ`.
#[derive(Clone, Debug)]
pub struct XiData {
    pub group: FiniteGroupTable,
    pub h2_factors: FinAbDesc,
    pub t: Vec<TTable>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TTableJson {
    pub i: usize,
    #[serde(rename = "mod")]
    pub modulus: u64,
    pub table: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XiJson {
    pub h2: Vec<u64>,
    pub t: Vec<TTableJson>,
}

impl XiData {
    pub fn to_json(&self) -> XiJson {
        XiJson {
            h2: self.h2_factors.invariant_factors().to_vec(),
            t: self
                .t
                .iter()
                .enumerate()
                .map(|(i, tt)| TTableJson {
                    i,
                    modulus: tt.modulus,
                    table: tt.to_rows(),
                })
                .collect(),
        }
    }

    /// `t(g, 1) = t(1, g) = 0` and the additive cocycle identity, exhaustively.
    pub fn check_invariants(&self) -> Result<()> {
        let g = &self.group;
        let e = g.identity();
        for (i, tt) in self.t.iter().enumerate() {
            for x in g.elements() {
                if tt.get(x, e) != 0 || tt.get(e, x) != 0 {
                    return Err(Error::check(format!("t_{i} is not normalized at {x}")));
                }
            }
            let m = tt.modulus;
            for x in g.elements() {
                for y in g.elements() {
                    let xy = g.mul(x, y);
                    for z in g.elements() {
                        let lhs = (tt.get(x, y) + tt.get(xy, z)) % m;
                        let rhs = (tt.get(x, g.mul(y, z)) + tt.get(y, z)) % m;
                        if lhs != rhs {
                            return Err(Error::check(format!(
                                "t_{i} breaks the cocycle identity at ({x}, {y}, {z})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn xi_extract(t: &FiniteGroupTable) -> Result<XiData> {
    xi_extract_capped(t, DEFAULT_BAR_CAP)
}

/// Computes `t_i` from `x_1 = e - s_2(d̄_2 e)` projected to the torsion of `coker d̄_3`.
///
/// `s_2` is defined on an echelon basis `b_k` of `Im d̄_2` by remembering, for each `b_k`, an
/// integer combination of pair generators mapping onto it.
pub fn xi_extract_capped(t: &FiniteGroupTable, cap: usize) -> Result<XiData> {
    let n = t.order();
    let d2 = bar_boundary_capped(t, 2, cap)?;
    let d3 = bar_boundary_capped(t, 3, cap)?;
    let co = cokernel(&d3);
    let slots = co.torsion_slots();
    let mods: Vec<BigInt> = slots.iter().map(|&k| co.factors[k].clone()).collect();
    let proj = |c: usize| -> Vec<BigInt> { slots.iter().map(|&k| co.proj[c][k].clone()).collect() };

    let dense_row = |r: &[(u32, i64)]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        for &(c, x) in r {
            v[c as usize] = BigInt::from(x);
        }
        v
    };
    let mut ech = RowEchelon::new(n, Some(n * n));
    for (idx, r) in d2.rows.iter().enumerate() {
        ech.insert(dense_row(r), Some(idx));
    }
    let basis = ech.basis();
    let combos = ech.combos();
    // images of the s_2-lifts of the basis rows in the torsion coordinates
    let mut lifted = Vec::with_capacity(combos.len());
    for (b, combo) in basis.iter().zip(&combos) {
        let mut image = vec![BigInt::zero(); n];
        let mut q = vec![BigInt::zero(); slots.len()];
        for (idx, f) in combo.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for &(c, x) in &d2.rows[idx] {
                image[c as usize] += f * x;
            }
            for (qi, p) in q.iter_mut().zip(proj(idx)) {
                *qi += f * p;
            }
        }
        if &image != b {
            return Err(Error::check("s_2 lift does not map onto its basis vector"));
        }
        lifted.push(q);
    }

    let mut raw: Vec<Vec<BigInt>> = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let idx = pair_index(n, x, y);
            let coords = ech
                .coordinates(&dense_row(&d2.rows[idx]))
                .ok_or_else(|| Error::check("d2 image outside its own echelon lattice"))?;
            let mut v = proj(idx);
            for (c, q) in coords.iter().zip(&lifted) {
                if c.is_zero() {
                    continue;
                }
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
            raw.push(v);
        }
    }
    let e = t.identity();
    let base = raw[pair_index(n, e, e)].clone();
    let mut tables = Vec::with_capacity(slots.len());
    for (i, m) in mods.iter().enumerate() {
        let values = raw
            .iter()
            .map(|v| (&v[i] - &base[i]).mod_floor(m).to_u64().expect("residue fits"))
            .collect();
        tables.push(TTable {
            modulus: m.to_u64().expect("factor fits in u64"),
            n,
            values,
        });
    }
    let factors: Vec<u64> = tables.iter().map(|tt| tt.modulus).collect();
    let data = XiData {
        group: t.clone(),
        h2_factors: FinAbDesc::from_invariant_factors(&factors)?,
        t: tables,
    };
    data.check_invariants()?;
    Ok(data)
}
