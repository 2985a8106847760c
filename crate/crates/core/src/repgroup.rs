//! Representation groups: the twisted product `G × H_2` built from the splitting data of the
//! bar complex, and the explicit Schur cover `G(mt, 0, r)` of the infinite metacyclic groups.

use crate::arith::{big_mod, gcd};
use crate::cocycles::{
    characters_of, cohomologous, h2_bruteforce, metacyclic_bezout, metacyclic_cocycle,
    transgression, CentralExtension, ClosedCochain, ClosedCocycle, BRUTEFORCE_CAP,
};
use crate::groups::{Group, SampleGroup};
use crate::homology::{xi_extract_capped, XiData, DEFAULT_BAR_CAP};
use crate::report::CheckResult;
use crate::{
    Error, FinAbDesc, FiniteGroupTable, MetacyclicDesc, MetacyclicElement, Presentation, Result,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G̃ = G × H_2` with `(g, a)(g', a') = (gg', a + a' + t(g, g'))`.
#[derive(Clone, Debug)]
pub struct RepGroup {
    xi: XiData,
}

/// An element `(g, a)` of a [`RepGroup`].
pub type RepElem = (usize, Vec<u64>);

const EXHAUSTIVE_TRIPLES_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 100_000;

impl RepGroup {
    /// Wraps splitting data without re-checking it, so that corrupted tables can be
    /// exercised by [`verify_repgroup`].
    pub fn from_xi(xi: XiData) -> Self {
        RepGroup { xi }
    }

    pub fn base(&self) -> &FiniteGroupTable {
        &self.xi.group
    }

    pub fn h2(&self) -> &FinAbDesc {
        &self.xi.h2_factors
    }

    pub fn xi(&self) -> &XiData {
        &self.xi
    }

    pub fn central_order(&self) -> usize {
        self.xi.t.iter().map(|t| t.modulus as usize).product()
    }

    pub fn order(&self) -> usize {
        self.base().order() * self.central_order()
    }

    pub fn identity(&self) -> RepElem {
        (self.base().identity(), vec![0; self.xi.t.len()])
    }

    pub fn mul(&self, x: &RepElem, y: &RepElem) -> RepElem {
        let g = self.base().mul(x.0, y.0);
        let a = self
            .xi
            .t
            .iter()
            .enumerate()
            .map(|(i, t)| (x.1[i] + y.1[i] + t.get(x.0, y.0)) % t.modulus)
            .collect();
        (g, a)
    }

    /// `g · |A| + a` with `a` read in mixed radix, first coordinate fastest.
    pub fn index_of(&self, x: &RepElem) -> usize {
        let mut idx = 0;
        for (t, &v) in self.xi.t.iter().zip(&x.1).rev() {
            idx = idx * t.modulus as usize + v as usize;
        }
        x.0 * self.central_order() + idx
    }

    pub fn element_at(&self, idx: usize) -> RepElem {
        let k = self.central_order();
        let mut rest = idx % k;
        let mut a = Vec::with_capacity(self.xi.t.len());
        for t in &self.xi.t {
            let m = t.modulus as usize;
            a.push((rest % m) as u64);
            rest /= m;
        }
        (idx / k, a)
    }

    pub fn label(&self, x: &RepElem) -> String {
        let a: Vec<String> = x.1.iter().map(|v| v.to_string()).collect();
        format!("({};{})", self.base().label(x.0), a.join(","))
    }

    /// Indices of the central subgroup `A = {(1, a)}`.
    pub fn central_subgroup(&self) -> Vec<usize> {
        let start = self.base().identity() * self.central_order();
        (start..start + self.central_order()).collect()
    }

    /// The multiplication table, with full validation.
    pub fn to_table(&self) -> Result<FiniteGroupTable> {
        let n = self.order();
        let labels = (0..n).map(|i| self.label(&self.element_at(i))).collect();
        FiniteGroupTable::from_fn(n, self.index_of(&self.identity()), Some(labels), |p, q| {
            self.index_of(&self.mul(&self.element_at(p), &self.element_at(q)))
        })
    }

    fn to_table_trusted(&self) -> Result<FiniteGroupTable> {
        let n = self.order();
        let labels = (0..n).map(|i| self.label(&self.element_at(i))).collect();
        FiniteGroupTable::from_fn_trusted(n, self.index_of(&self.identity()), Some(labels), |p, q| {
            self.index_of(&self.mul(&self.element_at(p), &self.element_at(q)))
        })
    }

    /// `1 → A → G̃ → G → 1` with section `s(g) = (g, 0)`.
    pub fn extension(&self) -> Result<CentralExtension> {
        self.extension_of(self.to_table()?)
    }

    fn extension_of(&self, total: FiniteGroupTable) -> Result<CentralExtension> {
        let k = self.central_order();
        let proj = (0..total.order()).map(|i| i / k).collect();
        let section = self
            .base()
            .elements()
            .map(|g| self.index_of(&(g, vec![0; self.xi.t.len()])))
            .collect();
        CentralExtension::new(total, self.central_subgroup(), self.base().clone(), proj, section)
    }

    /// First triple breaking associativity: exhaustive up to order 64, else sampled.
    pub fn associativity_violation(&self, seed: u64) -> Option<(RepElem, RepElem, RepElem)> {
        let n = self.order();
        let check = |p: usize, q: usize, r: usize| {
            let (x, y, z) = (self.element_at(p), self.element_at(q), self.element_at(r));
            let lhs = self.mul(&self.mul(&x, &y), &z);
            let rhs = self.mul(&x, &self.mul(&y, &z));
            (lhs != rhs).then_some((x, y, z))
        };
        if n <= EXHAUSTIVE_TRIPLES_LIMIT {
            for p in 0..n {
                for q in 0..n {
                    for r in 0..n {
                        if let Some(w) = check(p, q, r) {
                            return Some(w);
                        }
                    }
                }
            }
            None
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..SAMPLED_TRIPLES).find_map(|_| {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))
            })
        }
    }
}

pub fn build_repgroup(t: &FiniteGroupTable) -> Result<RepGroup> {
    build_repgroup_capped(t, DEFAULT_BAR_CAP)
}

pub fn build_repgroup_capped(t: &FiniteGroupTable, cap: usize) -> Result<RepGroup> {
    Ok(RepGroup::from_xi(xi_extract_capped(t, cap)?))
}

/// Outcome of [`verify_repgroup`].
#[derive(Clone, Debug)]
pub struct RepGroupReport {
    pub order: usize,
    pub central_order: usize,
    pub h2_order: usize,
    pub checks: Vec<CheckResult>,
}

impl RepGroupReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// Checks associativity, centrality of `A`, `A ⊆ [G̃, G̃]` and that transgression maps the
/// characters of `A` onto pairwise distinct classes, as many as `|H^2(G, C^×)|`.
pub fn verify_repgroup(r: &RepGroup, seed: u64) -> Result<RepGroupReport> {
    let mut checks = Vec::new();
    let witness = r.associativity_violation(seed).map(|(x, y, z)| {
        format!("({} {}) {} != {} ({} {})", r.label(&x), r.label(&y), r.label(&z), r.label(&x), r.label(&y), r.label(&z))
    });
    let assoc_ok = witness.is_none();
    checks.push(CheckResult::from_witness("associativity", witness));
    checks.push(CheckResult::from_witness(
        "t cocycle identity",
        r.xi.check_invariants().err().map(|e| e.to_string()),
    ));
    let h2_order = if r.base().order() <= BRUTEFORCE_CAP {
        h2_bruteforce(r.base())?
    } else {
        crate::homology::h2_integral_capped(r.base(), r.base().order())?.torsion()
    }
    .order()
    .expect("torsion is finite") as usize;
    let report = |checks| RepGroupReport {
        order: r.order(),
        central_order: r.central_order(),
        h2_order,
        checks,
    };
    if !assoc_ok {
        for name in ["A central", "A in derived subgroup", "transgression bijective"] {
            checks.push(CheckResult::fail(name, "not checked: the product is not associative"));
        }
        return Ok(report(checks));
    }
    let total = r.to_table_trusted()?;
    let a = r.central_subgroup();
    let noncentral = a.iter().find_map(|&x| {
        total.elements().find(|&g| total.mul(x, g) != total.mul(g, x)).map(|g| {
            format!("{} does not commute with {}", total.label(x), total.label(g))
        })
    });
    checks.push(CheckResult::from_witness("A central", noncentral));
    let derived = total.derived_subgroup();
    let outside = a
        .iter()
        .find(|x| derived.binary_search(x).is_err())
        .map(|&x| format!("{} is not a product of commutators", total.label(x)));
    checks.push(CheckResult::from_witness("A in derived subgroup", outside));

    let ext = r.extension_of(total)?;
    let chars = characters_of(&ext.total, &ext.central);
    let classes: Vec<_> = chars.iter().map(|c| transgression(&ext, c)).collect::<Result<_>>()?;
    let mut bad = None;
    'pairs: for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if cohomologous(&classes[i], &classes[j])? {
                bad = Some(format!("characters {:?} and {:?} transgress to the same class", chars[i].exps, chars[j].exps));
                break 'pairs;
            }
        }
    }
    if bad.is_none() && classes.len() != h2_order {
        bad = Some(format!("{} characters of A but |H^2| = {h2_order}", classes.len()));
    }
    checks.push(CheckResult::from_witness("transgression bijective", bad));
    Ok(report(checks))
}

/// The Schur cover `G* = G(mt, 0, r)` of `G(m, 0, r)` with `A = ⟨ā^m⟩`, `t = gcd(m, r - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetacoverDesc {
    pub m: u64,
    pub r: u64,
    pub t: u64,
    pub base: MetacyclicDesc,
    pub cover: MetacyclicDesc,
}

pub fn metacover(m: u64, r: u64) -> Result<MetacoverDesc> {
    if m == 0 {
        return Err(Error::invalid("the metacover needs m > 0"));
    }
    let base = MetacyclicDesc::new(m, 0, r)?;
    let t = gcd(m, r - 1);
    // t | r - 1 gives gcd(r, t) = 1, hence gcd(r, mt) = 1
    if gcd(r, m * t) != 1 {
        return Err(Error::check(format!("gcd({r}, {}) != 1", m * t)));
    }
    let cover = MetacyclicDesc::new(m * t, 0, r)?;
    Ok(MetacoverDesc { m, r, t, base, cover })
}

impl MetacoverDesc {
    /// `ā^{mt} = 1, [ā, b̄] = ā^{1 - r}`.
    pub fn presentation(&self) -> Presentation {
        self.cover.presentation()
    }

    pub fn central_generator(&self) -> MetacyclicElement {
        MetacyclicElement::new(self.m, 0)
    }

    /// `ā^i b̄^j ↦ a^{i mod m} b^j`.
    pub fn project(&self, x: &MetacyclicElement) -> MetacyclicElement {
        self.base.reduce(x)
    }

    /// Centrality of `ā^m`, the kernel `A` of order `t`, and the projection being a
    /// homomorphism on sampled pairs.
    pub fn verify<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize, bound: i64) -> Vec<CheckResult> {
        let mut checks = Vec::new();
        let c = crate::groups::mc_commutator_power(&self.cover, &BigInt::from(self.m), &BigInt::from(1));
        checks.push(CheckResult::from_witness(
            "[a^m, b] = 1",
            (c != BigInt::from(0)).then(|| format!("commutator exponent {c}")),
        ));
        let z = self.central_generator();
        let a_elems: Vec<MetacyclicElement> =
            (0..self.t).map(|k| self.cover.pow(&z, k as i64)).collect();
        let kernel_ok = a_elems.iter().all(|x| self.project(x) == self.base.identity())
            && self.cover.pow(&z, self.t as i64) == self.cover.identity()
            && (1..self.t).all(|k| a_elems[k as usize] != self.cover.identity());
        checks.push(CheckResult::from_witness(
            "A = <a^m> has order t and lies in the kernel",
            (!kernel_ok).then(|| format!("<a^{}> in G({},0,{})", self.m, self.m * self.t, self.r)),
        ));
        let mut bad = None;
        for _ in 0..samples {
            let x = self.cover.sample(rng, bound);
            let y = self.cover.sample(rng, bound);
            if self.project(&self.cover.mul(&x, &y)) != self.base.mul(&self.project(&x), &self.project(&y)) {
                bad = Some(format!("projection fails on {x} * {y}"));
                break;
            }
            if self.cover.mul(&z, &x) != self.cover.mul(&x, &z) {
                bad = Some(format!("a^m does not commute with {x}"));
                break;
            }
        }
        checks.push(CheckResult::from_witness("projection is a homomorphism", bad));
        checks
    }

    /// Exponent `e` of `δ = ζ_{mt}^e` with `δ^t = ζ_t^{λ_exp}`: the least non-negative one,
    /// `e = λ_exp · m/t`.
    pub fn delta_exp(&self, lambda_exp: u64) -> u64 {
        (lambda_exp % self.t) * (self.m / self.t) % self.m
    }

    /// The metacyclic cocycle pulled back along the projection `G* → G`.
    pub fn inflated_cocycle(&self, lambda_exp: u64) -> Result<ClosedCocycle<MetacyclicDesc>> {
        let alpha = metacyclic_cocycle(self.m, self.r, lambda_exp)?;
        let base = self.base.clone();
        Ok(alpha.pull_back(
            self.cover.clone(),
            move |x: &MetacyclicElement| base.reduce(x),
            format!("inflation of metacyclic(m={}, r={}, lambda_exp={lambda_exp})", self.m, self.r),
        ))
    }
}

/// `μ(ā^i b̄^j) = δ^{iy}` on `G*`, whose coboundary is the inflated metacyclic cocycle.
pub fn inflation_witness(m: u64, r: u64, lambda_exp: u64) -> Result<ClosedCochain<MetacyclicDesc>> {
    let mc = metacover(m, r)?;
    if lambda_exp >= mc.t {
        return Err(Error::invalid(format!("lambda_exp {lambda_exp} is not reduced mod t = {}", mc.t)));
    }
    let (_, y) = metacyclic_bezout(m, r);
    let mt = m * mc.t;
    let e = mc.delta_exp(lambda_exp);
    let ey = (e as i128 * y as i128).rem_euclid(mt as i128) as u64;
    ClosedCochain::new(mc.cover.clone(), mt, move |x: &MetacyclicElement| {
        (big_mod(&x.i, mt) as u128 * ey as u128 % mt as u128) as u64
    })
}
