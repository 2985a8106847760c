use super::{Group, SampleGroup, ToTable};
use crate::{Error, FiniteGroupTable, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Generalized discrete Heisenberg group on triples `(a, b, c)` with `b, c ∈ Z^n` and
/// `(a, b, c)(a', b', c') = (a + a' + Σ d_i b'_i c_i, b + b', c + c')`.
///
/// `modulus > 0` reduces the central coordinate mod `modulus`. With `d = [1]` and
/// `modulus = n` this is `(Z/n × Z) ⋊ Z` written as `(m, n, p)` triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergDesc {
    pub d: Vec<u64>,
    pub modulus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub a: BigInt,
    pub b: Vec<BigInt>,
    pub c: Vec<BigInt>,
}

impl HeisenbergElement {
    pub fn new(a: i64, b: &[i64], c: &[i64]) -> Self {
        HeisenbergElement {
            a: a.into(),
            b: b.iter().map(|&x| x.into()).collect(),
            c: c.iter().map(|&x| x.into()).collect(),
        }
    }
}

impl HeisenbergDesc {
    pub fn new(d: Vec<u64>, modulus: u64) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::invalid("Heisenberg group needs at least one d_i"));
        }
        if d.contains(&0) {
            return Err(Error::invalid("every d_i must be positive"));
        }
        if d.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid(format!("{d:?} is not a divisibility chain")));
        }
        Ok(HeisenbergDesc { d, modulus })
    }

    /// The group `(Z/n × Z) ⋊ Z` of the three-generator example.
    pub fn example1(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        HeisenbergDesc::new(vec![1], n)
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    fn reduce_central(&self, a: BigInt) -> BigInt {
        if self.modulus > 0 {
            a.mod_floor(&BigInt::from(self.modulus))
        } else {
            a
        }
    }

    fn check_dims(&self, x: &HeisenbergElement) -> Result<()> {
        for len in [x.b.len(), x.c.len()] {
            if len != self.dim() {
                return Err(Error::Dimension {
                    expected: self.dim(),
                    found: len,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for HeisenbergDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({:?};{})", self.d, self.modulus)
    }
}

/// Product under the Heisenberg law; errors if coordinate lengths do not match `desc`.
pub fn heis_mul(
    desc: &HeisenbergDesc,
    x: &HeisenbergElement,
    y: &HeisenbergElement,
) -> Result<HeisenbergElement> {
    desc.check_dims(x)?;
    desc.check_dims(y)?;
    let mut a = &x.a + &y.a;
    for ((di, bi), ci) in desc.d.iter().zip(&y.b).zip(&x.c) {
        a += BigInt::from(*di) * bi * ci;
    }
    Ok(HeisenbergElement {
        a: desc.reduce_central(a),
        b: x.b.iter().zip(&y.b).map(|(p, q)| p + q).collect(),
        c: x.c.iter().zip(&y.c).map(|(p, q)| p + q).collect(),
    })
}

impl Group for HeisenbergDesc {
    type Elem = HeisenbergElement;

    fn identity(&self) -> HeisenbergElement {
        HeisenbergElement {
            a: BigInt::zero(),
            b: vec![BigInt::zero(); self.dim()],
            c: vec![BigInt::zero(); self.dim()],
        }
    }

    fn mul(&self, x: &HeisenbergElement, y: &HeisenbergElement) -> HeisenbergElement {
        heis_mul(self, x, y).expect("element dimensions match the group")
    }

    fn inv(&self, x: &HeisenbergElement) -> HeisenbergElement {
        // (a, b, c)^{-1} = (-a + Σ d_i b_i c_i, -b, -c)
        let mut a = -&x.a;
        for ((di, bi), ci) in self.d.iter().zip(&x.b).zip(&x.c) {
            a += BigInt::from(*di) * bi * ci;
        }
        HeisenbergElement {
            a: self.reduce_central(a),
            b: x.b.iter().map(|v| -v).collect(),
            c: x.c.iter().map(|v| -v).collect(),
        }
    }
}

impl SampleGroup for HeisenbergDesc {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> HeisenbergElement {
        let a = if self.modulus > 0 {
            BigInt::from(rng.random_range(0..self.modulus))
        } else {
            BigInt::from(rng.random_range(-bound..=bound))
        };
        let mut coord = || -> Vec<BigInt> {
            (0..self.dim())
                .map(|_| BigInt::from(rng.random_range(-bound..=bound)))
                .collect()
        };
        let b = coord();
        let c = coord();
        HeisenbergElement { a, b, c }
    }
}

impl ToTable for HeisenbergDesc {
    fn finite_table(&self) -> Result<FiniteGroupTable> {
        Err(Error::Infinite(self.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn example1_product() {
        let g = HeisenbergDesc::example1(4).unwrap();
        let x = HeisenbergElement::new(1, &[0], &[1]);
        let y = HeisenbergElement::new(0, &[1], &[0]);
        assert_eq!(heis_mul(&g, &x, &y).unwrap(), HeisenbergElement::new(2, &[1], &[1]));
        assert_eq!(g.mul(&g.identity(), &x), x);
    }

    #[test]
    fn non_commuting_pair() {
        let g = HeisenbergDesc::new(vec![1, 2], 0).unwrap();
        let x = HeisenbergElement::new(0, &[1, 0], &[0, 0]);
        let y = HeisenbergElement::new(0, &[0, 0], &[1, 0]);
        let xy = g.mul(&x, &y);
        let yx = g.mul(&y, &x);
        assert_eq!(&yx.a - &xy.a, BigInt::from(1));
    }

    #[test]
    fn commutator_is_central_bilinear_form() {
        let g = HeisenbergDesc::new(vec![1, 3], 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let x = g.sample(&mut rng, 1000);
            let y = g.sample(&mut rng, 1000);
            let c = g.commutator(&x, &y);
            let mut expect = BigInt::zero();
            for i in 0..2 {
                expect += BigInt::from(g.d[i]) * (&y.b[i] * &x.c[i] - &x.b[i] * &y.c[i]);
            }
            assert_eq!(c.a, expect);
            assert!(c.b.iter().chain(&c.c).all(|v| v.is_zero()));
            assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = HeisenbergDesc::new(vec![1, 2], 0).unwrap();
        let x = HeisenbergElement::new(0, &[1], &[0]);
        assert!(matches!(
            heis_mul(&g, &x, &g.identity()),
            Err(Error::Dimension { expected: 2, found: 1 })
        ));
        assert!(HeisenbergDesc::new(vec![2, 3], 0).is_err());
    }
}
