use super::{Group, SampleGroup};
use crate::{Error, Result, DEFAULT_SEED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::Arc;

/// Orders above this get sampled associativity checks instead of exhaustive ones.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

/// A finite group as a multiplication table on `0..order`.
///
/// The table is shared, so clones are cheap.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    order: usize,
    mult: Arc<[u32]>,
    identity: usize,
    inv: Arc<[u32]>,
    labels: Option<Arc<[String]>>,
}

impl PartialEq for FiniteGroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.identity == other.identity
            && (Arc::ptr_eq(&self.mult, &other.mult) || self.mult == other.mult)
            && self.labels == other.labels
    }
}

impl Eq for FiniteGroupTable {}

/// Wire format: `{"order":k,"identity":0,"mult":[[...]],"labels":[...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    #[serde(default)]
    pub identity: usize,
    pub mult: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Right cosets `H x` of a subgroup, representatives ordered by first occurrence.
#[derive(Clone, Debug)]
pub struct RightCosets {
    pub reps: Vec<usize>,
    /// Index into `reps` of the coset containing each element.
    pub coset_of: Vec<usize>,
}

impl FiniteGroupTable {
    /// Validated constructor from a full table.
    pub fn new(mult: Vec<Vec<usize>>, identity: usize, labels: Option<Vec<String>>) -> Result<Self> {
        let order = mult.len();
        if order == 0 {
            return Err(Error::invalid("a group table must have at least one element"));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in mult.iter().enumerate() {
            if row.len() != order {
                return Err(Error::invalid(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::invalid(format!("entry {v} out of range in row {i}")));
                }
                flat.push(v as u32);
            }
        }
        if identity >= order {
            return Err(Error::invalid("identity index out of range"));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::invalid("label count does not match the order"));
            }
        }
        let t = Self::assemble(order, flat, identity, labels)?;
        t.check_associativity()?;
        Ok(t)
    }

    /// Validated constructor from a multiplication closure on indices.
    pub fn from_fn<F>(order: usize, identity: usize, labels: Option<Vec<String>>, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        let mult = (0..order).map(|a| (0..order).map(|b| f(a, b)).collect()).collect();
        Self::new(mult, identity, labels)
    }

    /// Builds a table whose group law is known to be associative (e.g. derived from a
    /// verified element model). Latin-square, identity and inverse structure is still
    /// checked; associativity is left to the caller.
    pub(crate) fn from_fn_trusted<F>(
        order: usize,
        identity: usize,
        labels: Option<Vec<String>>,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        let mut flat = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = f(a, b);
                if v >= order {
                    return Err(Error::invalid(format!("product {a}*{b} out of range")));
                }
                flat.push(v as u32);
            }
        }
        Self::assemble(order, flat, identity, labels)
    }

    fn assemble(order: usize, flat: Vec<u32>, identity: usize, labels: Option<Vec<String>>) -> Result<Self> {
        let mut seen = vec![usize::MAX; order];
        for r in 0..order {
            for c in 0..order {
                let v = flat[r * order + c] as usize;
                if seen[v] == r {
                    return Err(Error::invalid(format!("row {r} repeats element {v}")));
                }
                seen[v] = r;
            }
        }
        let mut seen = vec![usize::MAX; order];
        for c in 0..order {
            for r in 0..order {
                let v = flat[r * order + c] as usize;
                if seen[v] == c {
                    return Err(Error::invalid(format!("column {c} repeats element {v}")));
                }
                seen[v] = c;
            }
        }
        for g in 0..order {
            if flat[identity * order + g] as usize != g || flat[g * order + identity] as usize != g {
                return Err(Error::invalid(format!(
                    "element {identity} is not a two-sided identity (fails at {g})"
                )));
            }
        }
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let row = &flat[g * order..(g + 1) * order];
            let h = row
                .iter()
                .position(|&v| v as usize == identity)
                .expect("Latin rows contain the identity");
            if flat[h * order + g] as usize != identity {
                return Err(Error::invalid(format!("element {g} has no two-sided inverse")));
            }
            inv[g] = h as u32;
        }
        Ok(FiniteGroupTable {
            order,
            mult: flat.into(),
            identity,
            inv: inv.into(),
            labels: labels.map(Into::into),
        })
    }

    /// Exhaustive for small orders, 10^5 seeded random triples above.
    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::invalid(format!(
                    "table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
                )))
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn from_json(j: &TableJson) -> Result<Self> {
        if j.mult.len() != j.order {
            return Err(Error::invalid(format!(
                "declared order {} but table has {} rows",
                j.order,
                j.mult.len()
            )));
        }
        Self::new(j.mult.clone(), j.identity, j.labels.clone())
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            order: self.order,
            identity: self.identity,
            mult: (0..self.order)
                .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
                .collect(),
            labels: self.labels.as_ref().map(|l| l.to_vec()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.mul(x, y), self.inv(x)), self.inv(y))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, |acc, o| acc / num_integer::gcd(acc, o) * o)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of `gens` under multiplication, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// Greedy generating set: scan elements in index order, keep those not yet generated.
    pub fn generating_set(&self) -> Vec<usize> {
        self.generating_set_of(&(0..self.order).collect::<Vec<_>>())
    }

    /// Greedy generating set of the subgroup with the given (sorted) elements.
    pub fn generating_set_of(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        for &g in subgroup {
            if !member[g] {
                gens.push(g);
                for x in self.generated_subgroup(&gens) {
                    member[x] = true;
                }
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[self.identity]
            && set.iter().all(|&x| member[self.inv(x)])
            && set.iter().all(|&x| set.iter().all(|&y| member[self.mul(x, y)]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        self.elements().all(|g| {
            let gi = self.inv(g);
            set.iter().all(|&x| member[self.mul(self.mul(g, x), gi)])
        })
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// The subgroup generated by all commutators, computed as the normal closure of the
    /// commutators of a generating set.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let gens = self.generating_set();
        let mut seeds = Vec::new();
        for &x in &gens {
            for &y in &gens {
                let c = self.commutator(x, y);
                if c != self.identity {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds, &gens)
    }

    /// Smallest subgroup containing `seeds` and closed under conjugation by `conj`.
    pub fn normal_closure(&self, seeds: &[usize], conj: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = seeds.to_vec();
        loop {
            let sub = self.generated_subgroup(&gens);
            let mut member = vec![false; self.order];
            for &x in &sub {
                member[x] = true;
            }
            let mut grew = false;
            for &x in &gens.clone() {
                for &g in conj {
                    let c = self.mul(self.mul(g, x), self.inv(g));
                    if !member[c] {
                        member[c] = true;
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// Right cosets `H x`, representatives chosen as the first element of each coset
    /// in index order.
    pub fn right_cosets(&self, h: &[usize]) -> RightCosets {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] == usize::MAX {
                let idx = reps.len();
                reps.push(g);
                for &x in h {
                    coset_of[self.mul(x, g)] = idx;
                }
            }
        }
        RightCosets { reps, coset_of }
    }

    /// The subgroup `h` as a table of its own, plus the embedding of its indices.
    pub fn subtable(&self, h: &[usize]) -> Result<(FiniteGroupTable, Vec<usize>)> {
        if !self.is_subgroup(h) {
            return Err(Error::invalid("the given subset is not a subgroup"));
        }
        let mut embed: Vec<usize> = h.to_vec();
        embed.sort_unstable();
        // keep the identity at index 0 of the subgroup
        let pos_id = embed.iter().position(|&x| x == self.identity).unwrap();
        embed.remove(pos_id);
        embed.insert(0, self.identity);
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in embed.iter().enumerate() {
            index[x] = i;
        }
        let labels = self.labels.as_ref().map(|l| embed.iter().map(|&x| l[x].clone()).collect());
        let sub = FiniteGroupTable::from_fn_trusted(embed.len(), 0, labels, |a, b| {
            index[self.mul(embed[a], embed[b])]
        })?;
        Ok((sub, embed))
    }

    /// All subgroups, each as a sorted element list, ordered by size then lexicographically.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![vec![self.identity]];
        let mut keys: std::collections::HashSet<Vec<usize>> = found.iter().cloned().collect();
        let mut i = 0;
        while i < found.len() {
            let k = found[i].clone();
            let mut member = vec![false; self.order];
            for &x in &k {
                member[x] = true;
            }
            let gens = self.generating_set_of(&k);
            for g in 0..self.order {
                if member[g] {
                    continue;
                }
                let mut gs = gens.clone();
                gs.push(g);
                let s = self.generated_subgroup(&gs);
                if keys.insert(s.clone()) {
                    found.push(s);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        found
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("a^{i}")).collect();
        Self::from_fn_trusted(n, 0, Some(labels), |a, b| (a + b) % n).expect("cyclic table")
    }

    /// The dicyclic group `<a, x | a^{2k}, x^2 = a^k, x a x^{-1} = a^{-1}>` of order `4k`.
    /// `k = 2` gives the quaternion group, `k = 4` the generalized quaternion group of order 16.
    pub fn dicyclic(k: usize) -> Self {
        assert!(k >= 1);
        let m = 2 * k;
        // element (i, j) = a^i x^j with index j*m + i
        let mulf = |p: usize, q: usize| -> usize {
            let (i1, j1) = (p % m, p / m);
            let (i2, j2) = (q % m, q / m);
            // x a^i = a^{-i} x
            let i2t = if j1 == 1 { (m - i2) % m } else { i2 };
            let mut i = (i1 + i2t) % m;
            let mut j = j1 + j2;
            if j == 2 {
                j = 0;
                i = (i + k) % m;
            }
            j * m + i
        };
        let labels = (0..2 * m)
            .map(|p| format!("a^{}x^{}", p % m, p / m))
            .collect();
        Self::from_fn_trusted(2 * m, 0, Some(labels), mulf).expect("dicyclic table")
    }

    pub fn direct_product(a: &FiniteGroupTable, b: &FiniteGroupTable) -> Self {
        let nb = b.order;
        let labels = Some(
            (0..a.order * nb)
                .map(|p| format!("({},{})", a.label(p / nb), b.label(p % nb)))
                .collect(),
        );
        Self::from_fn_trusted(a.order * nb, a.identity * nb + b.identity, labels, |p, q| {
            a.mul(p / nb, q / nb) * nb + b.mul(p % nb, q % nb)
        })
        .expect("direct product table")
    }
}

impl Group for FiniteGroupTable {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, x: &usize, y: &usize) -> usize {
        FiniteGroupTable::mul(self, *x, *y)
    }

    fn inv(&self, x: &usize) -> usize {
        FiniteGroupTable::inv(self, *x)
    }
}

impl SampleGroup for FiniteGroupTable {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _bound: i64) -> usize {
        rng.random_range(0..self.order)
    }
}
