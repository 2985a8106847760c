use super::finite::Cocycle;
use crate::arith::{lcm, RootExp};
use crate::{Error, FiniteGroupTable, Result};
use std::collections::VecDeque;

/// A central extension `1 → A → total → quotient → 1` with an explicit section.
#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub total: FiniteGroupTable,
    /// Elements of `A`, sorted.
    pub central: Vec<usize>,
    pub quotient: FiniteGroupTable,
    /// The projection `total → quotient`.
    pub proj: Vec<usize>,
    /// The section `quotient → total` with `section(1) = 1`.
    pub section: Vec<usize>,
}

impl CentralExtension {
    pub fn new(
        total: FiniteGroupTable,
        mut central: Vec<usize>,
        quotient: FiniteGroupTable,
        proj: Vec<usize>,
        section: Vec<usize>,
    ) -> Result<Self> {
        central.sort_unstable();
        central.dedup();
        if proj.len() != total.order() || section.len() != quotient.order() {
            return Err(Error::invalid("projection or section has the wrong length"));
        }
        if !total.is_subgroup(&central) {
            return Err(Error::invalid("A is not a subgroup"));
        }
        for &a in &central {
            if let Some(g) = total.elements().find(|&g| total.mul(a, g) != total.mul(g, a)) {
                return Err(Error::invalid(format!("A is not central: {a} and {g} do not commute")));
            }
        }
        for x in total.elements() {
            for y in total.elements() {
                if proj[total.mul(x, y)] != quotient.mul(proj[x], proj[y]) {
                    return Err(Error::invalid(format!(
                        "projection is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        let kernel: Vec<usize> =
            total.elements().filter(|&g| proj[g] == quotient.identity()).collect();
        if kernel != central {
            return Err(Error::invalid("the kernel of the projection is not A"));
        }
        if section[quotient.identity()] != total.identity() {
            return Err(Error::invalid("the section must send 1 to 1"));
        }
        if quotient.elements().any(|q| proj[section[q]] != q) {
            return Err(Error::invalid("the section is not a right inverse of the projection"));
        }
        Ok(CentralExtension {
            total,
            central,
            quotient,
            proj,
            section,
        })
    }

    /// Builds `total / A` from cosets ordered by first occurrence, with the identity as
    /// representative of `A` itself.
    pub fn from_central_subgroup(total: &FiniteGroupTable, central: &[usize]) -> Result<Self> {
        let cos = total.right_cosets(central);
        let mut reps = cos.reps.clone();
        let id_coset = cos.coset_of[total.identity()];
        reps[id_coset] = total.identity();
        let k = reps.len();
        let quotient = FiniteGroupTable::from_fn(k, id_coset, None, |p, q| {
            cos.coset_of[total.mul(reps[p], reps[q])]
        })?;
        CentralExtension::new(total.clone(), central.to_vec(), quotient, cos.coset_of.clone(), reps)
    }

    /// `a_g` with `g = a_g · s(π(g))`.
    pub fn central_part(&self, g: usize) -> usize {
        let s = self.section[self.proj[g]];
        self.total.mul(g, self.total.inv(s))
    }
}

/// A homomorphism from a finite abelian subgroup to `μ_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub modulus: u64,
    /// Sorted elements of the domain.
    pub domain: Vec<usize>,
    pub exps: Vec<u64>,
}

impl Character {
    pub fn exp(&self, g: usize) -> Option<u64> {
        self.domain.binary_search(&g).ok().map(|i| self.exps[i])
    }

    pub fn value(&self, g: usize) -> Option<RootExp> {
        self.exp(g).map(|e| RootExp::new(self.modulus, e as i128))
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.domain != other.domain {
            return Err(Error::invalid("characters have different domains"));
        }
        let m = lcm(self.modulus, other.modulus);
        let (fa, fb) = (m / self.modulus, m / other.modulus);
        Ok(Character {
            modulus: m,
            domain: self.domain.clone(),
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| (a * fa + b * fb) % m).collect(),
        })
    }

    pub fn check_homomorphism(&self, t: &FiniteGroupTable) -> Result<()> {
        for &x in &self.domain {
            for &y in &self.domain {
                let xy = t.mul(x, y);
                let v = self
                    .exp(xy)
                    .ok_or_else(|| Error::invalid("character domain is not closed"))?;
                if (self.exp(x).unwrap() + self.exp(y).unwrap()) % self.modulus != v {
                    return Err(Error::invalid(format!(
                        "not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All homomorphisms from a subgroup (abelianized through its generators) to `μ_e`,
/// `e` the exponent of the subgroup, in lexicographic order of generator values.
pub fn characters_of(t: &FiniteGroupTable, subgroup: &[usize]) -> Vec<Character> {
    let mut domain = subgroup.to_vec();
    domain.sort_unstable();
    let gens = t.generating_set_of(&domain);
    let e = domain.iter().map(|&g| t.element_order(g) as u64).fold(1, lcm);
    let mut out = Vec::new();
    let mut assign = vec![0u64; gens.len()];
    loop {
        if let Some(c) = extend_character(t, &domain, &gens, &assign, e) {
            out.push(c);
        }
        // next assignment in base e
        let mut i = 0;
        loop {
            if i == assign.len() {
                return out;
            }
            assign[i] += 1;
            if assign[i] < e {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

fn extend_character(
    t: &FiniteGroupTable,
    domain: &[usize],
    gens: &[usize],
    assign: &[u64],
    e: u64,
) -> Option<Character> {
    let mut val = vec![None; t.order()];
    val[t.identity()] = Some(0u64);
    let mut queue = VecDeque::from([t.identity()]);
    while let Some(h) = queue.pop_front() {
        for (&s, &a) in gens.iter().zip(assign) {
            let hs = t.mul(h, s);
            let v = (val[h].unwrap() + a) % e;
            match val[hs] {
                None => {
                    val[hs] = Some(v);
                    queue.push_back(hs);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    let c = Character {
        modulus: e,
        domain: domain.to_vec(),
        exps: domain.iter().map(|&g| val[g].expect("generated")).collect(),
    };
    c.check_homomorphism(t).ok().map(|_| c)
}

/// `α(x̄, ȳ) = χ(s(x̄) s(ȳ) s(x̄ȳ)^{-1})`.
pub fn transgression(ext: &CentralExtension, chi: &Character) -> Result<Cocycle> {
    if chi.domain != ext.central {
        return Err(Error::invalid("the character is not defined on the central subgroup"));
    }
    chi.check_homomorphism(&ext.total)?;
    let t = &ext.total;
    let q = &ext.quotient;
    let s = &ext.section;
    Cocycle::from_fn(q, chi.modulus, |x, y| {
        let a = t.mul(t.mul(s[x], s[y]), t.inv(s[q.mul(x, y)]));
        chi.exp(a).expect("s(x)s(y)s(xy)^-1 lies in A")
    })
}

/// `β(x, y) = α(xA, yA)` on the total group.
pub fn inflation(alpha: &Cocycle, ext: &CentralExtension) -> Result<Cocycle> {
    if alpha.group() != &ext.quotient {
        return Err(Error::invalid("the cocycle does not live on the quotient"));
    }
    Cocycle::from_fn(&ext.total, alpha.modulus(), |x, y| alpha.exp(ext.proj[x], ext.proj[y]))
}
