//! Smith normal form, row-echelon lattice bases and sparse cokernel reduction.

use super::matrix::{IntMatrix, SparseMatrix};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashSet;

/// `S = U · A · V` with `U`, `V` unimodular and `S` diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, kept so that row-space coordinates can be recovered.
    pub u_inv: IntMatrix,
    pub rank: usize,
}

impl SnfResult {
    /// The diagonal of `S` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }
}

type Mat = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_matrix(m: Mat, rows: usize, cols: usize) -> IntMatrix {
    if rows == 0 || cols == 0 {
        return IntMatrix::zeros(rows, cols);
    }
    IntMatrix::from_rows(&m).expect("rectangular")
}

/// Working state of the elimination. Transforms are only tracked when requested.
struct Elim {
    a: Mat,
    rows: usize,
    cols: usize,
    u: Option<Mat>,
    u_inv: Option<Mat>,
    v: Option<Mat>,
}

impl Elim {
    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        let (ri, rj) = pair_mut(&mut self.a, i, j);
        axpy(ri, rj, q);
        if let Some(u) = &mut self.u {
            let (ui, uj) = pair_mut(u, i, j);
            axpy(ui, uj, q);
        }
        if let Some(w) = &mut self.u_inv {
            // column_j -= q · column_i
            for row in w.iter_mut() {
                let t = &row[i] * q;
                row[j] -= t;
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if let Some(w) = &mut self.u_inv {
            for row in w.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    /// col_j += q · col_i
    fn add_col(&mut self, j: usize, i: usize, q: &BigInt) {
        for row in self.a.iter_mut() {
            if !row[i].is_zero() {
                let t = &row[i] * q;
                row[j] += t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[i].is_zero() {
                    let t = &row[i] * q;
                    row[j] += t;
                }
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// Smallest nonzero entry of the trailing block, ties to lowest row then column.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let k = self.rows.min(self.cols);
        let mut t = 0;
        while t < k {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[i][t] / &self.a[t][t]);
                    self.add_row(i, t, &q);
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[t][j] / &self.a[t][t]);
                    self.add_col(j, t, &q);
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    // move the smallest remainder in row/column t onto the diagonal
                    let mut best: Option<(usize, usize)> = None;
                    let mut best_abs = self.a[t][t].abs();
                    for i in t + 1..self.rows {
                        let x = self.a[i][t].abs();
                        if !x.is_zero() && x < best_abs {
                            best_abs = x;
                            best = Some((i, t));
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = self.a[t][j].abs();
                        if !x.is_zero() && x < best_abs {
                            best_abs = x;
                            best = Some((t, j));
                        }
                    }
                    match best {
                        Some((i, j)) if j == t => self.swap_rows(t, i),
                        Some((_, j)) => self.swap_cols(t, j),
                        None => {}
                    }
                    continue;
                }
                let d = self.a[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&d))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = v.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

fn axpy(dst: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s * q;
        }
    }
}

/// Smith normal form with both transforms (and `U^{-1}`).
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (r, c) = (a.rows(), a.cols());
    let mut e = Elim {
        a: a.to_rows(),
        rows: r,
        cols: c,
        u: Some(identity(r)),
        u_inv: Some(identity(r)),
        v: Some(identity(c)),
    };
    let rank = e.run();
    SnfResult {
        s: to_matrix(e.a, r, c),
        u: to_matrix(e.u.unwrap(), r, r),
        v: to_matrix(e.v.unwrap(), c, c),
        u_inv: to_matrix(e.u_inv.unwrap(), r, r),
        rank,
    }
}

/// Diagonal of the Smith form only, without transforms.
pub fn snf_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = (a.rows(), a.cols());
    let mut e = Elim {
        a: a.to_rows(),
        rows: r,
        cols: c,
        u: None,
        u_inv: None,
        v: None,
    };
    e.run();
    (0..r.min(c)).map(|i| e.a[i][i].clone()).collect()
}

/// Invariant factors of `Z^cols / rowspace(a)`: diagonal entries other than 1, with a zero
/// for every free generator.
pub fn cokernel_factors_dense(a: &IntMatrix) -> Vec<BigInt> {
    let diag = snf_diagonal(a);
    let mut out: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let zeros_in_diag = diag.len() - nonzero;
    out.retain(|d| !d.is_zero());
    out.extend(std::iter::repeat_n(BigInt::zero(), zeros_in_diag + a.cols() - diag.len()));
    out
}

/// A lattice basis in row-echelon form, optionally tracking each basis row as a
/// combination of the inserted generators.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    width: usize,
    track: Option<usize>,
    rows: Vec<EchelonRow>,
}

#[derive(Clone, Debug)]
struct EchelonRow {
    pivot: usize,
    v: Vec<BigInt>,
    combo: Vec<BigInt>,
}

fn lead(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl RowEchelon {
    /// `track = Some(k)` records combinations over `k` generators.
    pub fn new(width: usize, track: Option<usize>) -> Self {
        RowEchelon {
            width,
            track,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.v.clone()).collect()
    }

    pub fn combos(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.combo.clone()).collect()
    }

    /// Adds a generator; `index` names it in tracked combinations.
    pub fn insert(&mut self, mut v: Vec<BigInt>, index: Option<usize>) {
        assert_eq!(v.len(), self.width);
        let mut combo = match self.track {
            Some(k) => {
                let mut c = vec![BigInt::zero(); k];
                c[index.expect("tracked insertion needs an index")] = BigInt::one();
                c
            }
            None => Vec::new(),
        };
        loop {
            let Some(p) = lead(&v) else { return };
            let pos = self.rows.partition_point(|r| r.pivot < p);
            if pos == self.rows.len() || self.rows[pos].pivot != p {
                if v[p].is_negative() {
                    v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    combo.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                self.rows.insert(pos, EchelonRow { pivot: p, v, combo });
                return;
            }
            let row = &mut self.rows[pos];
            let (a, b) = (row.v[p].clone(), v[p].clone());
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                axpy(&mut v, &row.v, &-&q);
                axpy(&mut combo, &row.combo, &-&q);
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_row: Vec<BigInt> =
                row.v.iter().zip(&v).map(|(r, w)| &x * r + &y * w).collect();
            let new_v: Vec<BigInt> = row.v.iter().zip(&v).map(|(r, w)| &ag * w - &bg * r).collect();
            let new_rc: Vec<BigInt> =
                row.combo.iter().zip(&combo).map(|(r, w)| &x * r + &y * w).collect();
            let new_c: Vec<BigInt> =
                row.combo.iter().zip(&combo).map(|(r, w)| &ag * w - &bg * r).collect();
            row.v = new_row;
            row.combo = new_rc;
            v = new_v;
            combo = new_c;
        }
    }

    /// Coefficients of `v` in the basis, or `None` if `v` is outside the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut w = v.to_vec();
        let mut coef = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let x = &w[row.pivot];
            if x.is_zero() {
                coef.push(BigInt::zero());
                continue;
            }
            if !x.is_multiple_of(&row.v[row.pivot]) {
                return None;
            }
            let q = x / &row.v[row.pivot];
            axpy(&mut w, &row.v, &-&q);
            coef.push(q);
        }
        w.iter().all(|x| x.is_zero()).then_some(coef)
    }
}

/// The cokernel `Z^cols / rowspace(R)` written as `⊕ Z/d_k`, with the quotient map.
#[derive(Clone, Debug)]
pub struct Cokernel {
    /// Invariant factors `d_k != 1` (zeros for free summands), in Smith order.
    pub factors: Vec<BigInt>,
    /// Image of each standard generator `e_c`, one coordinate per factor, reduced mod `d_k`
    /// when `d_k > 0`.
    pub proj: Vec<Vec<BigInt>>,
    /// Rank of the relation matrix.
    pub rank: usize,
}

impl Cokernel {
    pub fn torsion_slots(&self) -> Vec<usize> {
        (0..self.factors.len()).filter(|&k| !self.factors[k].is_zero()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }
}

/// Merges `row - f · piv` into a fresh sorted row; `None` on overflow.
fn sparse_axpy(row: &[(u32, i64)], piv: &[(u32, i64)], f: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take = match (row.get(i), piv.get(j)) {
            (Some(a), Some(b)) => a.0.cmp(&b.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match take {
            Ordering::Less => {
                out.push(row[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((piv[j].0, piv[j].1.checked_mul(f)?.checked_neg()?));
                j += 1;
            }
            Ordering::Equal => {
                let v = row[i].1.checked_sub(piv[j].1.checked_mul(f)?)?;
                if v != 0 {
                    out.push((row[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Some(out)
}

fn entry(row: &[(u32, i64)], c: u32) -> Option<i64> {
    row.binary_search_by_key(&c, |&(k, _)| k).ok().map(|p| row[p].1)
}

/// Cokernel of a sparse relation matrix.
///
/// Generators with a `±1` coefficient in some relation are eliminated first (each such
/// relation expresses the generator through the others); the remaining relations are
/// brought to row-echelon form and finished with a dense Smith form.
pub fn cokernel(rel: &SparseMatrix) -> Cokernel {
    let ncols = rel.cols;
    let mut seen = HashSet::new();
    let mut rows: Vec<Option<Vec<(u32, i64)>>> = Vec::new();
    for r in &rel.rows {
        if !r.is_empty() && seen.insert(r.clone()) {
            rows.push(Some(r.clone()));
        }
    }
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r.as_ref().unwrap() {
            col_rows[c as usize].push(i);
        }
    }
    let mut alive = vec![true; ncols];
    let mut stuck = vec![false; ncols];
    let mut eliminated: Vec<(u32, Vec<(u32, i64)>)> = Vec::new();

    let mut progress = true;
    while progress {
        progress = false;
        for ri in 0..rows.len() {
            let Some(prow) = rows[ri].as_ref() else { continue };
            let pick = prow
                .iter()
                .filter(|&&(c, v)| v.abs() == 1 && !stuck[c as usize])
                .min_by_key(|&&(c, _)| (col_rows[c as usize].len(), c))
                .copied();
            let Some((c, u)) = pick else { continue };
            let prow = prow.clone();
            let mut updates = Vec::new();
            let mut visited = HashSet::new();
            let mut overflow = false;
            for &oi in &col_rows[c as usize] {
                if oi == ri || !visited.insert(oi) {
                    continue;
                }
                let Some(orow) = rows[oi].as_ref() else { continue };
                let Some(f) = entry(orow, c) else { continue };
                match sparse_axpy(orow, &prow, f * u) {
                    Some(nr) => updates.push((oi, nr)),
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if overflow {
                stuck[c as usize] = true;
                continue;
            }
            for (oi, nr) in updates {
                for &(k, _) in &nr {
                    if entry(rows[oi].as_ref().unwrap(), k).is_none() {
                        col_rows[k as usize].push(oi);
                    }
                }
                rows[oi] = if nr.is_empty() { None } else { Some(nr) };
            }
            let expr: Vec<(u32, i64)> =
                prow.iter().filter(|&&(k, _)| k != c).map(|&(k, v)| (k, -u * v)).collect();
            eliminated.push((c, expr));
            alive[c as usize] = false;
            col_rows[c as usize].clear();
            rows[ri] = None;
            progress = true;
        }
    }

    let alive_cols: Vec<usize> = (0..ncols).filter(|&c| alive[c]).collect();
    let mut local = vec![usize::MAX; ncols];
    for (j, &c) in alive_cols.iter().enumerate() {
        local[c] = j;
    }
    let width = alive_cols.len();
    let mut ech = RowEchelon::new(width, None);
    let mut seen = HashSet::new();
    for r in rows.iter().flatten() {
        if !seen.insert(r.clone()) {
            continue;
        }
        let mut v = vec![BigInt::zero(); width];
        for &(c, x) in r {
            v[local[c as usize]] = BigInt::from(x);
        }
        ech.insert(v, None);
    }
    let basis = ech.basis();
    let dense = if basis.is_empty() {
        IntMatrix::zeros(0, width)
    } else {
        IntMatrix::from_rows(&basis).expect("rectangular")
    };
    let res = snf(&dense);
    let diag = res.diagonal();
    let slot_mod = |k: usize| -> BigInt { diag.get(k).cloned().unwrap_or_else(BigInt::zero) };
    let slots: Vec<usize> = (0..width).filter(|&k| !slot_mod(k).is_one()).collect();
    let factors: Vec<BigInt> = slots.iter().map(|&k| slot_mod(k)).collect();

    let reduce = |mut x: Vec<BigInt>| -> Vec<BigInt> {
        for (xi, d) in x.iter_mut().zip(&factors) {
            if !d.is_zero() {
                *xi = xi.mod_floor(d);
            }
        }
        x
    };
    let mut proj: Vec<Option<Vec<BigInt>>> = vec![None; ncols];
    for (j, &c) in alive_cols.iter().enumerate() {
        proj[c] = Some(reduce(slots.iter().map(|&k| res.v.get(j, k).clone()).collect()));
    }
    for (c, expr) in eliminated.iter().rev() {
        let mut acc = vec![BigInt::zero(); slots.len()];
        for &(k, f) in expr {
            let pk = proj[k as usize].as_ref().expect("later eliminations resolve first");
            axpy(&mut acc, pk, &BigInt::from(f));
        }
        proj[*c as usize] = Some(reduce(acc));
    }
    Cokernel {
        factors,
        proj: proj.into_iter().map(|p| p.expect("every column resolved")).collect(),
        rank: eliminated.len() + res.rank,
    }
}

/// Checks `U · A · V = S` and the Smith-form shape; used by tests and the CLI self-check.
pub fn verify_snf(a: &IntMatrix, r: &SnfResult) -> Result<()> {
    let uav = r.u.mul(a)?.mul(&r.v)?;
    if uav != r.s {
        return Err(Error::check("U·A·V differs from S"));
    }
    for i in 0..r.s.rows() {
        for j in 0..r.s.cols() {
            if i != j && !r.s.get(i, j).is_zero() {
                return Err(Error::check(format!("S has off-diagonal entry at ({i},{j})")));
            }
        }
    }
    let d = r.diagonal();
    for w in d.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok || w[0].is_negative() {
            return Err(Error::check(format!("diagonal breaks the divisibility chain: {w:?}")));
        }
    }
    for m in [&r.u, &r.v] {
        if !m.det()?.abs().is_one() {
            return Err(Error::check("transform is not unimodular"));
        }
    }
    if r.u.mul(&r.u_inv)? != IntMatrix::identity(r.u.rows()) {
        return Err(Error::check("u_inv is not the inverse of u"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn two_by_two() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let r = snf(&a);
        verify_snf(&a, &r).unwrap();
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(3, 2);
        let r = snf(&z);
        assert_eq!(r.s, z);
        assert_eq!(r.u, IntMatrix::identity(3));
        assert_eq!(r.v, IntMatrix::identity(2));
        let i = IntMatrix::identity(4);
        assert_eq!(snf(&i).s, i);
    }

    #[test]
    fn divisibility_fix() {
        // diag(2, 3) is not in Smith form; the answer is diag(1, 6)
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let r = snf(&a);
        verify_snf(&a, &r).unwrap();
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = RowEchelon::new(2, Some(2));
        e.insert(vec![BigInt::from(4), BigInt::from(2)], Some(0));
        e.insert(vec![BigInt::from(6), BigInt::from(0)], Some(1));
        let target = vec![BigInt::from(10), BigInt::from(2)];
        let c = e.coordinates(&target).unwrap();
        let mut back = vec![BigInt::zero(); 2];
        for (k, b) in e.basis().iter().enumerate() {
            axpy(&mut back, b, &c[k]);
        }
        assert_eq!(back, target);
        assert!(e.coordinates(&[BigInt::from(1), BigInt::from(0)]).is_none());
        // combos reproduce basis rows from the generators
        let gens = [[4i64, 2], [6, 0]];
        for (row, combo) in e.basis().iter().zip(e.combos()) {
            for col in 0..2 {
                let s: BigInt = (0..2).map(|g| &combo[g] * BigInt::from(gens[g][col])).sum();
                assert_eq!(s, row[col]);
            }
        }
    }

    #[test]
    fn sparse_cokernel_matches_dense() {
        let mut s = SparseMatrix::new(4);
        s.push_terms(&[(0, 1), (1, 2)]);
        s.push_terms(&[(1, 4), (2, 6)]);
        s.push_terms(&[(2, 4)]);
        let co = cokernel(&s);
        let dense = cokernel_factors_dense(&s.to_dense());
        assert_eq!(co.factors, dense);
        assert_eq!(co.factors, vec![BigInt::from(2), BigInt::from(8), BigInt::zero()]);
        assert_eq!(co.rank, 3);
        // relations map to zero under the quotient map
        for row in &s.rows {
            for (k, d) in co.factors.iter().enumerate() {
                let v: BigInt = row.iter().map(|&(c, x)| &co.proj[c as usize][k] * x).sum();
                if d.is_zero() {
                    assert!(v.is_zero());
                } else {
                    assert!(v.is_multiple_of(d));
                }
            }
        }
    }
}
