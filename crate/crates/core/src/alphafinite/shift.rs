use crate::groups::{FinAbElement, SampleGroup};
use crate::report::{all_passed, CheckResult};
use crate::{Error, FinAbDesc, Result, RootExp};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const PAIRS: usize = 10_000;
const SAMPLE_BOUND: i64 = 1_000;
const MAX_FINITE_ORDER: u32 = 24;

/// The scalar `λ` of the shift construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftLambda {
    /// Not a root of unity; characters are compared through their exponents of `λ`.
    Transcendental,
    Root(RootExp),
}

/// `C ⋊ ⟨z⟩` with `z c z^{-1} = φ(c)`, acting on `span{v_h}` by `z v_h = v_{h+1}` and
/// `c v_h = λ^{β(φ^{-h} c)} v_h`.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftWindowData {
    pub base: FinAbDesc,
    /// `φ(e_j) = Σ_i phi[i][j] e_i`.
    pub phi: Vec<Vec<i64>>,
    /// Coordinate read off by `β`.
    pub beta: usize,
    pub lambda: ShiftLambda,
    /// Indices `|h| < window` are kept.
    pub window: i64,
}

impl ShiftWindowData {
    /// `C = Z^2`, `φ = [[2, 1], [1, 1]]`, `β` the first coordinate, `λ` transcendental, `W = 8`.
    pub fn demo() -> Self {
        ShiftWindowData {
            base: FinAbDesc::new(&[0, 0]),
            phi: vec![vec![2, 1], vec![1, 1]],
            beta: 0,
            lambda: ShiftLambda::Transcendental,
            window: 8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftWindowReport {
    pub indices: Vec<i64>,
    /// Indices `h` with `h + 1` in the window, on which covariance is checked.
    pub interior: Vec<i64>,
    /// Boundary indices left out of the covariance check.
    pub excluded: Vec<i64>,
    /// Order of `φ` when it is at most 24.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_order: Option<u32>,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    pub passed: bool,
}

type Mat = Vec<Vec<i128>>;

fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat> {
    let k = a.len();
    let mut out = vec![vec![0i128; k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut s = 0i128;
            for l in 0..k {
                s = a[i][l]
                    .checked_mul(b[l][j])
                    .and_then(|p| s.checked_add(p))
                    .ok_or_else(|| Error::invalid("matrix powers overflow; shrink the window"))?;
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

fn identity(k: usize) -> Mat {
    (0..k).map(|i| (0..k).map(|j| (i == j) as i128).collect()).collect()
}

fn det(a: &Mat) -> i128 {
    let k = a.len();
    if k == 0 {
        return 1;
    }
    (0..k)
        .map(|j| {
            let minor: Mat = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * a[0][j] * det(&minor)
        })
        .sum()
}

/// Inverse of a unimodular integer matrix through its adjugate.
fn unimodular_inverse(a: &Mat) -> Result<Mat> {
    let k = a.len();
    let d = det(a);
    if d.abs() != 1 {
        return Err(Error::invalid(format!("phi has determinant {d}, not +-1")));
    }
    let mut inv = vec![vec![0i128; k]; k];
    for i in 0..k {
        for j in 0..k {
            let minor: Mat = (0..k)
                .filter(|&r| r != i)
                .map(|r| (0..k).filter(|&c| c != j).map(|c| a[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[j][i] = s * det(&minor) * d;
        }
    }
    Ok(inv)
}

fn apply(a: &Mat, c: &[i64]) -> Vec<i128> {
    a.iter().map(|row| row.iter().zip(c).map(|(x, &y)| x * y as i128).sum()).collect()
}

struct Characters<'a> {
    data: &'a ShiftWindowData,
    /// `φ^{-h}` for `h` in the window, offset by `window - 1`.
    inv_powers: Vec<Mat>,
    phi: Mat,
}

impl Characters<'_> {
    fn beta_order(&self) -> u64 {
        self.data.base.invariant_factors()[self.data.beta]
    }

    /// Exponent of `λ` in `ρ_h(c)`.
    fn exp(&self, h: i64, c: &[i64]) -> i128 {
        let p = &self.inv_powers[(h + self.data.window - 1) as usize];
        let row = &p[self.data.beta];
        let v: i128 = row.iter().zip(c).map(|(x, &y)| x * y as i128).sum();
        match self.beta_order() {
            0 => v,
            n => v.rem_euclid(n as i128),
        }
    }

    fn same(&self, e1: i128, e2: i128) -> bool {
        match &self.data.lambda {
            ShiftLambda::Transcendental => e1 == e2,
            ShiftLambda::Root(l) => {
                let n = l.modulus as i128;
                (e1 - e2).rem_euclid(n) * l.exp as i128 % n == 0
            }
        }
    }
}

fn validate(data: &ShiftWindowData) -> Result<Mat> {
    let k = data.base.len();
    if data.phi.len() != k || data.phi.iter().any(|r| r.len() != k) {
        return Err(Error::Dimension {
            expected: k,
            found: data.phi.len(),
        });
    }
    if data.window < 1 {
        return Err(Error::invalid("the window half-width must be at least 1"));
    }
    if data.beta >= k {
        return Err(Error::invalid(format!("beta reads coordinate {} of a rank-{k} group", data.beta)));
    }
    let factors = data.base.invariant_factors();
    let phi: Mat = data.phi.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // φ must send n_j e_j to 0 for every finite factor n_j
    for (j, &nj) in factors.iter().enumerate() {
        if nj == 0 {
            continue;
        }
        for (i, &ni) in factors.iter().enumerate() {
            let v = phi[i][j] * nj as i128;
            if ni == 0 && v != 0 || ni > 0 && v % ni as i128 != 0 {
                return Err(Error::invalid(format!("phi is not well defined on generator {j}")));
            }
        }
    }
    let nb = factors[data.beta];
    match &data.lambda {
        ShiftLambda::Transcendental if nb != 0 => {
            return Err(Error::invalid("a transcendental lambda needs beta on a free coordinate"))
        }
        ShiftLambda::Root(l) if nb != 0 && !l.pow(nb as i128).is_one() => {
            return Err(Error::invalid(format!("lambda^{nb} != 1, so beta is not well defined")))
        }
        _ => {}
    }
    Ok(phi)
}

/// Checks the shift representation on the window `|h| < W`: multiplicativity of every `ρ_h`
/// on random pairs, covariance `z (c v_h) = φ(c) (z v_h)` where both sides stay in the
/// window, and pairwise distinctness of the `ρ_h`.
pub fn shift_window_verify(data: &ShiftWindowData, seed: u64) -> Result<ShiftWindowReport> {
    let phi = validate(data)?;
    let k = data.base.len();
    let w = data.window;
    let phi_inv = unimodular_inverse(&phi)?;
    let mut inv_powers = Vec::with_capacity(2 * w as usize - 1);
    for h in -(w - 1)..w {
        let (base, e) = if h >= 0 { (&phi_inv, h) } else { (&phi, -h) };
        let mut p = identity(k);
        for _ in 0..e {
            p = mat_mul(&p, base)?;
        }
        inv_powers.push(p);
    }
    let chars = Characters {
        data,
        inv_powers,
        phi: phi.clone(),
    };
    let indices: Vec<i64> = (-(w - 1)..w).collect();
    let interior: Vec<i64> = indices.iter().copied().filter(|&h| h + 1 < w).collect();
    let excluded: Vec<i64> = indices.iter().copied().filter(|&h| h + 1 >= w).collect();
    let mut notes = Vec::new();
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut bad = None;
    'mult: for &h in &indices {
        for _ in 0..PAIRS {
            let c1 = data.base.sample(&mut rng, SAMPLE_BOUND);
            let c2 = data.base.sample(&mut rng, SAMPLE_BOUND);
            let sum = data.base.reduce(&FinAbElement(c1.0.iter().zip(&c2.0).map(|(a, b)| a + b).collect()));
            if !chars.same(chars.exp(h, &sum.0), chars.exp(h, &c1.0) + chars.exp(h, &c2.0)) {
                bad = Some(format!("rho_{h} fails on {:?}, {:?}", c1.0, c2.0));
                break 'mult;
            }
        }
    }
    checks.push(CheckResult::from_witness("multiplicativity", bad));

    // vectors are (index, exponent of λ) pairs
    let z = |(h, e): (i64, i128)| (h + 1, e);
    let act = |c: &[i64], (h, e): (i64, i128)| (h, e + chars.exp(h, c));
    let mut bad = None;
    if interior.is_empty() {
        notes.push("the window has no interior index; covariance is vacuous".into());
    }
    'cov: for &h in &interior {
        let mut cs: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        cs.extend((0..PAIRS / 10).map(|_| data.base.sample(&mut rng, SAMPLE_BOUND).0));
        for c in cs {
            let fc = data.base.reduce(&FinAbElement(
                apply(&chars.phi, &c).into_iter().map(|x| x as i64).collect(),
            ));
            let lhs = z(act(&c, (h, 0)));
            let rhs = act(&fc.0, z((h, 0)));
            if lhs.0 != rhs.0 || !chars.same(lhs.1, rhs.1) {
                bad = Some(format!("z (c v_{h}) != phi(c) (z v_{h}) for c = {c:?}"));
                break 'cov;
            }
        }
    }
    checks.push(CheckResult::from_witness("covariance", bad));
    if !excluded.is_empty() {
        notes.push(format!("boundary indices {excluded:?} excluded from the covariance check"));
    }

    // characters are determined by their values on the generators
    let gens: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
    let mut bad = None;
    'dist: for (p, &h1) in indices.iter().enumerate() {
        for &h2 in &indices[p + 1..] {
            if gens.iter().all(|c| chars.same(chars.exp(h1, c), chars.exp(h2, c))) {
                bad = Some(format!("rho_{h1} = rho_{h2}"));
                break 'dist;
            }
        }
    }
    if indices.len() == 1 {
        notes.push("a single index; distinctness is vacuous".into());
    }
    checks.push(CheckResult::from_witness("distinct characters", bad));

    let mut finite_order = None;
    let mut p = identity(k);
    for e in 1..=MAX_FINITE_ORDER {
        p = mat_mul(&p, &phi)?;
        if p == identity(k) {
            finite_order = Some(e);
            notes.push(format!("phi has finite order {e}: the construction degenerates"));
            break;
        }
    }
    let passed = all_passed(&checks);
    Ok(ShiftWindowReport {
        indices,
        interior,
        excluded,
        finite_order,
        checks,
        notes,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_window_passes() {
        let rep = shift_window_verify(&ShiftWindowData::demo(), 1).unwrap();
        assert!(rep.passed, "{:?}", rep.checks);
        assert_eq!(rep.indices.len(), 15);
        assert_eq!(rep.excluded, vec![7]);
        assert!(rep.finite_order.is_none());
    }

    #[test]
    fn identity_degenerates() {
        let mut data = ShiftWindowData::demo();
        data.phi = vec![vec![1, 0], vec![0, 1]];
        let rep = shift_window_verify(&data, 1).unwrap();
        assert!(!rep.passed);
        assert!(!rep.checks[2].passed);
        assert!(rep.checks[0].passed && rep.checks[1].passed);
        assert_eq!(rep.finite_order, Some(1));
    }

    #[test]
    fn unit_window_is_vacuous() {
        let mut data = ShiftWindowData::demo();
        data.window = 1;
        let rep = shift_window_verify(&data, 1).unwrap();
        assert!(rep.passed);
        assert!(rep.interior.is_empty());
        assert_eq!(rep.notes.len(), 3);
    }

    #[test]
    fn wrong_direction_fails_covariance() {
        // ρ_h(c) = λ^{β(φ^h c)} runs the shift backwards
        let data = ShiftWindowData::demo();
        let phi: Mat = vec![vec![2, 1], vec![1, 1]];
        let chars = Characters {
            data: &data,
            inv_powers: (-7..8)
                .map(|h: i64| {
                    let base = if h >= 0 { phi.clone() } else { unimodular_inverse(&phi).unwrap() };
                    (0..h.abs()).fold(identity(2), |p, _| mat_mul(&p, &base).unwrap())
                })
                .collect(),
            phi: phi.clone(),
        };
        let c = [1, 0];
        let fc: Vec<i64> = apply(&phi, &c).into_iter().map(|x| x as i64).collect();
        assert_ne!(chars.exp(0, &c), chars.exp(1, &fc));
    }

    #[test]
    fn root_of_unity_lambda() {
        let mut data = ShiftWindowData::demo();
        data.lambda = ShiftLambda::Root(RootExp::new(5, 1));
        let rep = shift_window_verify(&data, 3).unwrap();
        assert!(rep.checks[0].passed && rep.checks[1].passed);
        // φ mod 5 has finite order, so some characters repeat on a wide window
        assert!(!rep.checks[2].passed);
    }
}
