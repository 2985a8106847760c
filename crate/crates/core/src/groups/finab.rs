use super::{Group, SampleGroup, ToTable};
use crate::arith::{gcd, lcm};
use crate::{Error, FiniteGroupTable, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finitely generated abelian group `Z/n_1 ⊕ Z/n_2 ⊕ ...` in invariant-factor form.
///
/// Nonzero factors are `> 1` and form a divisibility chain; zeros (free factors) are listed
/// last. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinAbDesc {
    invariant_factors: Vec<u64>,
}

/// An element of a [`FinAbDesc`]: one coordinate per factor, reduced on finite factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinAbElement(pub Vec<i64>);

impl FinAbDesc {
    /// Normalizes any list of cyclic orders into invariant-factor form.
    pub fn new(factors: &[u64]) -> Self {
        let mut finite: Vec<u64> = factors.iter().copied().filter(|&f| f != 0).collect();
        let free = factors.len() - finite.len();
        let k = finite.len();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (finite[i], finite[j]);
                finite[i] = gcd(a, b);
                finite[j] = lcm(a, b);
            }
        }
        finite.retain(|&f| f != 1);
        finite.extend(std::iter::repeat_n(0, free));
        FinAbDesc {
            invariant_factors: finite,
        }
    }

    /// Accepts a list only if it already is in invariant-factor form.
    pub fn from_invariant_factors(factors: &[u64]) -> Result<Self> {
        let norm = FinAbDesc::new(factors);
        if norm.invariant_factors != factors {
            return Err(Error::invalid(format!(
                "{factors:?} is not an invariant-factor list (normal form {:?})",
                norm.invariant_factors
            )));
        }
        Ok(norm)
    }

    pub fn trivial() -> Self {
        FinAbDesc {
            invariant_factors: Vec::new(),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|&&f| f == 0).count()
    }

    pub fn torsion(&self) -> FinAbDesc {
        FinAbDesc {
            invariant_factors: self.invariant_factors.iter().copied().filter(|&f| f != 0).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> Option<u64> {
        if self.rank() > 0 {
            None
        } else {
            Some(self.invariant_factors.iter().product())
        }
    }

    /// Exponent of the torsion part (1 for torsion-free groups).
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.iter().copied().filter(|&f| f != 0).fold(1, lcm)
    }

    pub fn len(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn reduce(&self, x: &FinAbElement) -> FinAbElement {
        FinAbElement(
            x.0.iter()
                .zip(&self.invariant_factors)
                .map(|(&v, &n)| if n == 0 { v } else { v.rem_euclid(n as i64) })
                .collect(),
        )
    }

    fn element_at(&self, mut idx: usize) -> FinAbElement {
        let mut coords = Vec::with_capacity(self.len());
        for &n in &self.invariant_factors {
            coords.push((idx % n as usize) as i64);
            idx /= n as usize;
        }
        FinAbElement(coords)
    }

    fn index_of(&self, x: &FinAbElement) -> usize {
        let mut idx = 0usize;
        for (&v, &n) in x.0.iter().zip(&self.invariant_factors).rev() {
            idx = idx * n as usize + v as usize;
        }
        idx
    }
}

impl fmt::Display for FinAbDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&n| if n == 0 { "Z".to_string() } else { format!("Z/{n}") })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Group for FinAbDesc {
    type Elem = FinAbElement;

    fn identity(&self) -> FinAbElement {
        FinAbElement(vec![0; self.len()])
    }

    fn mul(&self, x: &FinAbElement, y: &FinAbElement) -> FinAbElement {
        self.reduce(&FinAbElement(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect()))
    }

    fn inv(&self, x: &FinAbElement) -> FinAbElement {
        self.reduce(&FinAbElement(x.0.iter().map(|a| -a).collect()))
    }
}

impl SampleGroup for FinAbDesc {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FinAbElement {
        FinAbElement(
            self.invariant_factors
                .iter()
                .map(|&n| {
                    if n == 0 {
                        rng.random_range(-bound..=bound)
                    } else {
                        rng.random_range(0..n as i64)
                    }
                })
                .collect(),
        )
    }
}

impl ToTable for FinAbDesc {
    fn finite_table(&self) -> Result<FiniteGroupTable> {
        let order = self
            .order()
            .ok_or_else(|| Error::Infinite(self.to_string()))? as usize;
        let elems: Vec<FinAbElement> = (0..order).map(|k| self.element_at(k)).collect();
        let labels = elems.iter().map(|e| format!("{:?}", e.0)).collect();
        FiniteGroupTable::from_fn(order, 0, Some(labels), |p, q| {
            self.index_of(&self.mul(&elems[p], &elems[q]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite_table_of;

    #[test]
    fn normalization() {
        assert_eq!(FinAbDesc::new(&[6, 4]).invariant_factors(), &[2, 12]);
        assert_eq!(FinAbDesc::new(&[0, 3, 1, 2]).invariant_factors(), &[6, 0]);
        assert_eq!(FinAbDesc::new(&[2, 3, 5]).invariant_factors(), &[30]);
        assert!(FinAbDesc::new(&[1, 1]).is_trivial());
        assert!(FinAbDesc::from_invariant_factors(&[4, 2]).is_err());
        assert!(FinAbDesc::from_invariant_factors(&[2, 4, 0]).is_ok());
    }

    #[test]
    fn klein_four_table() {
        let t = finite_table_of(&FinAbDesc::new(&[2, 2])).unwrap();
        assert_eq!(t.order(), 4);
        assert!(t.elements().all(|g| t.inv(g) == g));
        assert!(t.is_abelian());
    }

    #[test]
    fn free_part_is_infinite() {
        assert!(matches!(
            finite_table_of(&FinAbDesc::new(&[2, 0])),
            Err(Error::Infinite(_))
        ));
    }
}
