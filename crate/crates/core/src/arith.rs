//! Small number-theoretic helpers and exact roots of unity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if it exists. `m = 1` yields `Some(0)`.
pub fn mod_inv(a: i128, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let m128 = m as i128;
    let (g, x, _) = ext_gcd(a.rem_euclid(m128), m128);
    if g != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(x.rem_euclid(m128) as u64)
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` for a non-negative machine exponent.
pub fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    a %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, a, m);
        }
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    acc
}

/// `r^j mod m` for any integer `j`; negative exponents use the inverse of `r`.
///
/// Returns `None` when `j < 0` and `r` is not invertible modulo `m`.
pub fn mod_pow_signed(r: u64, j: &BigInt, m: u64) -> Option<u64> {
    assert!(m > 0, "modulus must be positive");
    if m == 1 {
        return Some(0);
    }
    let base = if j.is_negative() {
        mod_inv(r as i128, m)?
    } else {
        r % m
    };
    let e = j.abs();
    let v = BigInt::from(base).modpow(&e, &BigInt::from(m));
    Some(v.to_u64().expect("residue fits in u64"))
}

/// Reduce a big integer into `[0, m)`.
pub fn big_mod(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Multiplicative order of `r` modulo `m` (requires `gcd(r, m) = 1`).
pub fn multiplicative_order(r: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some(1);
    }
    if gcd(r % m, m) != 1 {
        return None;
    }
    let mut x = r % m;
    let mut k = 1u64;
    while x != 1 {
        x = mod_mul(x, r, m);
        k += 1;
    }
    Some(k)
}

/// Additive order of `e` in `Z/n`.
pub fn additive_order(e: u64, n: u64) -> u64 {
    if n == 0 {
        return if e == 0 { 1 } else { 0 };
    }
    n / gcd(e % n, n)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Power of a big integer by a machine exponent.
pub fn big_pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

pub fn big_one() -> BigInt {
    BigInt::one()
}

pub fn big_zero() -> BigInt {
    BigInt::zero()
}

/// The root of unity `ζ_N^e` stored as the residue `e mod N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootExp {
    #[serde(rename = "N")]
    pub modulus: u64,
    #[serde(rename = "e")]
    pub exp: u64,
}

impl RootExp {
    pub fn new(modulus: u64, exp: i128) -> Self {
        assert!(modulus > 0, "root of unity modulus must be positive");
        RootExp {
            modulus,
            exp: exp.rem_euclid(modulus as i128) as u64,
        }
    }

    pub fn one(modulus: u64) -> Self {
        RootExp::new(modulus, 0)
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    /// The same root written over the modulus `target`, which must be a multiple.
    pub fn lift(&self, target: u64) -> RootExp {
        assert!(
            target % self.modulus == 0,
            "cannot lift ζ_{} to modulus {target}",
            self.modulus
        );
        RootExp {
            modulus: target,
            exp: self.exp * (target / self.modulus),
        }
    }

    pub fn mul(&self, other: &RootExp) -> RootExp {
        let n = lcm(self.modulus, other.modulus);
        let a = self.lift(n);
        let b = other.lift(n);
        RootExp::new(n, a.exp as i128 + b.exp as i128)
    }

    pub fn inv(&self) -> RootExp {
        RootExp::new(self.modulus, -(self.exp as i128))
    }

    pub fn pow(&self, k: i128) -> RootExp {
        RootExp::new(self.modulus, (self.exp as i128) * k)
    }

    /// Multiplicative order of the root.
    pub fn order(&self) -> u64 {
        additive_order(self.exp, self.modulus)
    }

    /// Canonical form with the smallest modulus.
    pub fn reduced(&self) -> RootExp {
        let g = gcd(self.exp, self.modulus);
        if self.exp == 0 {
            return RootExp::one(1);
        }
        RootExp {
            modulus: self.modulus / g,
            exp: self.exp / g,
        }
    }

    pub fn equals(&self, other: &RootExp) -> bool {
        self.reduced() == other.reduced()
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let theta = 2.0 * std::f64::consts::PI * (self.exp as f64) / (self.modulus as f64);
        num_complex::Complex64::from_polar(1.0, theta)
    }
}

impl fmt::Display for RootExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ_{}^{}", self.modulus, self.exp)
    }
}
