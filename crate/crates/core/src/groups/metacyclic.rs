use super::{Group, Presentation, SampleGroup, ToTable};
use crate::arith::{big_mod, big_pow, gcd, mod_pow, mod_pow_signed};
use crate::{Error, FiniteGroupTable, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Parameters of `G(m, n, r) = <a, b | a^m = b^n = 1, [a, b] = a^{1-r}>`.
///
/// A zero `m` or `n` means the corresponding generator has infinite order.
/// Elements are kept in the normal form `a^i b^j`, multiplied with
/// `b^j a^i = a^{i r^j} b^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MetacyclicDesc {
    pub m: u64,
    pub n: u64,
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetacyclicElement {
    pub i: BigInt,
    pub j: BigInt,
}

impl MetacyclicElement {
    pub fn new(i: impl Into<BigInt>, j: impl Into<BigInt>) -> Self {
        MetacyclicElement {
            i: i.into(),
            j: j.into(),
        }
    }
}

impl fmt::Display for MetacyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{}", self.i, self.j)
    }
}

impl MetacyclicDesc {
    /// Checks `gcd(r, m) = 1` (for `m > 0`) and, for finite instances, `r^n ≡ 1 (mod m)`.
    ///
    /// The classification places no further constraint on `r`; any positive `r` with
    /// `gcd(r, m) = 1` is accepted.
    pub fn new(m: u64, n: u64, r: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("r must be a positive integer"));
        }
        if m > 0 && gcd(r, m) != 1 {
            return Err(Error::invalid(format!("gcd(r, m) = gcd({r}, {m}) != 1")));
        }
        if m > 0 && n > 0 && mod_pow(r, n, m) != 1 % m {
            return Err(Error::invalid(format!(
                "inconsistent finite metacyclic parameters: {r}^{n} != 1 mod {m}"
            )));
        }
        if m == 0 && n == 0 && r != 1 {
            return Err(Error::invalid(
                "m = n = 0 only admits the normal form a^i b^j when r = 1",
            ));
        }
        Ok(MetacyclicDesc { m, n, r })
    }

    pub fn is_finite(&self) -> bool {
        self.m > 0 && self.n > 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.m * self.n)
    }

    /// Whether `a^i b^j` multiplied by the normal-form rule is a group law.
    ///
    /// Fails only for `m = 0 < n` with `r != 1`: there `b^n = 1` forces `a^{r^n - 1} = 1`,
    /// so the presentation collapses and the pair `(i, j)` is not a normal form.
    pub fn normal_form_is_group_law(&self) -> bool {
        !(self.m == 0 && self.n > 0 && self.r != 1)
    }

    pub fn reduce(&self, x: &MetacyclicElement) -> MetacyclicElement {
        let i = if self.m > 0 {
            x.i.mod_floor(&BigInt::from(self.m))
        } else {
            x.i.clone()
        };
        let j = if self.n > 0 {
            x.j.mod_floor(&BigInt::from(self.n))
        } else {
            x.j.clone()
        };
        MetacyclicElement { i, j }
    }

    pub fn a_pow(&self, i: impl Into<BigInt>) -> MetacyclicElement {
        self.reduce(&MetacyclicElement::new(i, 0))
    }

    pub fn b_pow(&self, j: impl Into<BigInt>) -> MetacyclicElement {
        self.reduce(&MetacyclicElement::new(0, j))
    }

    /// `r^j` acting on the exponent of `a`, reduced mod `m` when `m > 0`.
    fn twist(&self, j: &BigInt) -> BigInt {
        if self.m > 0 {
            BigInt::from(mod_pow_signed(self.r, j, self.m).expect("gcd(r, m) = 1"))
        } else if self.r == 1 {
            BigInt::one()
        } else {
            let e = j.to_u64().expect("non-negative b-exponent when m = 0");
            big_pow(self.r, e)
        }
    }

    pub fn presentation(&self) -> Presentation {
        let mut rels = Vec::new();
        if self.m > 0 {
            rels.push(vec![(1i32, self.m as i64)]);
        }
        if self.n > 0 {
            rels.push(vec![(2, self.n as i64)]);
        }
        // [a, b] a^{r-1}
        rels.push(vec![(1, 1), (2, 1), (1, -1), (2, -1), (1, self.r as i64 - 1)]);
        Presentation::from_syllables(vec!["a".into(), "b".into()], rels)
    }

    /// Index of a reduced element in the table of a finite instance.
    pub fn index_of(&self, x: &MetacyclicElement) -> usize {
        let y = self.reduce(x);
        (y.j.to_u64().unwrap() * self.m + y.i.to_u64().unwrap()) as usize
    }

    pub fn element_at(&self, idx: usize) -> MetacyclicElement {
        let idx = idx as u64;
        MetacyclicElement::new(idx % self.m, idx / self.m)
    }
}

impl fmt::Display for MetacyclicDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.m, self.n, self.r)
    }
}

/// Product of two normal forms: `a^i b^j · a^{i1} b^{j1} = a^{i + i1 r^j} b^{j + j1}`.
pub fn mc_mul(desc: &MetacyclicDesc, x: &MetacyclicElement, y: &MetacyclicElement) -> MetacyclicElement {
    let x = desc.reduce(x);
    let y = desc.reduce(y);
    let i = &x.i + &y.i * desc.twist(&x.j);
    let j = &x.j + &y.j;
    desc.reduce(&MetacyclicElement { i, j })
}

/// The `a`-exponent of `[a^i, b^j] = a^{i (1 - r^j)}`, reduced mod `m` when `m > 0`.
pub fn mc_commutator_power(desc: &MetacyclicDesc, i: &BigInt, j: &BigInt) -> BigInt {
    if desc.m > 0 {
        let rj = mod_pow_signed(desc.r, j, desc.m).expect("gcd(r, m) = 1");
        let v = i * (BigInt::one() - BigInt::from(rj));
        BigInt::from(big_mod(&v, desc.m))
    } else {
        let j = if desc.n > 0 {
            j.mod_floor(&BigInt::from(desc.n))
        } else {
            j.clone()
        };
        if desc.r == 1 || j.is_zero() {
            return BigInt::zero();
        }
        assert!(!j.is_negative(), "r^j is not integral for j < 0 when m = 0 and r != 1");
        i * (BigInt::one() - desc.twist(&j))
    }
}

impl Group for MetacyclicDesc {
    type Elem = MetacyclicElement;

    fn identity(&self) -> MetacyclicElement {
        MetacyclicElement::new(0, 0)
    }

    fn mul(&self, x: &MetacyclicElement, y: &MetacyclicElement) -> MetacyclicElement {
        mc_mul(self, x, y)
    }

    fn inv(&self, x: &MetacyclicElement) -> MetacyclicElement {
        // (a^i b^j)^{-1} = b^{-j} a^{-i}
        let b = self.b_pow(-&x.j);
        let a = self.a_pow(-&x.i);
        mc_mul(self, &b, &a)
    }
}

impl SampleGroup for MetacyclicDesc {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> MetacyclicElement {
        assert!(
            self.normal_form_is_group_law(),
            "{self} has no normal-form group law to sample from"
        );
        let i = if self.m > 0 {
            BigInt::from(rng.random_range(0..self.m))
        } else {
            BigInt::from(rng.random_range(-bound..=bound))
        };
        let j = if self.n > 0 {
            BigInt::from(rng.random_range(0..self.n))
        } else {
            BigInt::from(rng.random_range(-bound..=bound))
        };
        MetacyclicElement { i, j }
    }
}

impl ToTable for MetacyclicDesc {
    fn finite_table(&self) -> Result<FiniteGroupTable> {
        if !self.is_finite() {
            return Err(Error::Infinite(self.to_string()));
        }
        let order = (self.m * self.n) as usize;
        let elems: Vec<MetacyclicElement> = (0..order).map(|k| self.element_at(k)).collect();
        let labels = elems.iter().map(|e| format!("a^{} b^{}", e.i, e.j)).collect();
        FiniteGroupTable::from_fn(order, 0, Some(labels), |p, q| {
            self.index_of(&mc_mul(self, &elems[p], &elems[q]))
        })
    }
}
