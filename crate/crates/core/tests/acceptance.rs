//! Acceptance suite: prints one `[PASS]` or `[FAIL]` line per criterion and exits nonzero
//! when any criterion fails.
//!
//! Expected values come from oracles written here (known multiplier tables, Schur's formula
//! for abelian groups, a direct lower central series computation) rather than from the
//! library under test; identities are rechecked with arithmetic local to this file.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schurcover_core::alphafinite::{
    heisenberg_report, mc_abelian_by_finite_witness, mc_is_nilpotent, mc_alpha_finite_report, shift_window_verify,
    ShiftWindowData, Verdict,
};
use schurcover_core::cocycles::{
    characters_of, closed_coboundary, coboundary, example1_cocycle, h2_bruteforce, metacyclic_cocycle,
    restriction, transgression, inflation, xi_cocycle, ClosedCocycle,
};
use schurcover_core::corpus::{corpus, CorpusGroup};
use schurcover_core::groups::SampleGroup;
use schurcover_core::homology::{h2_integral, multiplier_finab, multiplier_metacyclic, xi_extract};
use schurcover_core::projrep::{
    alpha_characters, count_irr_alpha, descend, finite_weight_space, induce, lift, monomial_correspondence,
    twisted_regular, ProjRep,
};
use schurcover_core::repgroup::{build_repgroup, inflation_witness, metacover, verify_repgroup, RepGroup};
use schurcover_core::{Cochain1, Cocycle, FinAbDesc, MetacyclicDesc, DEFAULT_SEED};
use std::cell::OnceCell;
use std::rc::Rc;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

const SAMPLES: usize = 100_000;
const BOUND: i64 = 1_000_000;
const DENSE_TOL: f64 = 1e-8;
/// Covers up to this order get the cocycle identity checked on all triples.
const EXHAUSTIVE_COVER: usize = 128;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn groups() -> Vec<CorpusGroup> {
    corpus(16)
}

/// Prime-power elementary divisors, sorted; a torsion-free rank is kept as zeros.
fn elementary_divisors(factors: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for &f in factors {
        if f == 0 {
            out.push(0);
            continue;
        }
        let mut n = f;
        let mut p = 2;
        while n > 1 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            if q > 1 {
                out.push(q);
            }
            p += 1;
        }
    }
    out.sort();
    out
}

/// `M(Z/n_1 × ... × Z/n_k) = ⊕_{i<j} Z/gcd(n_i, n_j)`.
fn schur_abelian(factors: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            out.push(factors[i].gcd(&factors[j]));
        }
    }
    elementary_divisors(&out)
}

/// Multipliers of the nonabelian corpus groups from the standard tables.
fn known_multiplier(name: &str) -> Option<Vec<u64>> {
    if let Some(k) = name.strip_prefix('D').and_then(|s| s.parse::<u64>().ok()) {
        return Some(if (k / 2) % 2 == 0 { vec![2] } else { vec![] });
    }
    if name.starts_with('Q') {
        return Some(vec![]);
    }
    match name {
        "Z3:Z4" | "SD16" | "M16" => Some(vec![]),
        "Z4:Z4" => Some(vec![2]),
        _ => None,
    }
}

fn expected_multiplier(g: &CorpusGroup) -> Option<Vec<u64>> {
    match &g.abelian {
        Some(d) => Some(schur_abelian(d.invariant_factors())),
        None => known_multiplier(&g.name),
    }
}

fn multiplier_order(g: &CorpusGroup) -> u64 {
    expected_multiplier(g).expect("every corpus group has a known multiplier").iter().product()
}

/// First triple of a finite cocycle violating the identity, checked here directly.
fn finite_violation(a: &Cocycle) -> Option<(usize, usize, usize)> {
    let t = a.group();
    let n = a.modulus();
    let bad = |x: usize, y: usize, z: usize| {
        (a.exp(x, y) + a.exp(t.mul(x, y), z)) % n != (a.exp(x, t.mul(y, z)) + a.exp(y, z)) % n
    };
    for x in t.elements() {
        for y in t.elements() {
            for z in t.elements() {
                if bad(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn finite_violation_sampled(a: &Cocycle, rng: &mut ChaCha8Rng) -> Option<(usize, usize, usize)> {
    let t = a.group();
    let n = a.modulus();
    let k = t.order();
    (0..SAMPLES).find_map(|_| {
        let (x, y, z) = (rng.random_range(0..k), rng.random_range(0..k), rng.random_range(0..k));
        ((a.exp(x, y) + a.exp(t.mul(x, y), z)) % n != (a.exp(x, t.mul(y, z)) + a.exp(y, z)) % n)
            .then_some((x, y, z))
    })
}

fn closed_violation<G: SampleGroup + Clone>(c: &ClosedCocycle<G>, rng: &mut ChaCha8Rng) -> Option<String> {
    let g = &c.group;
    let n = c.modulus;
    (0..SAMPLES).find_map(|_| {
        let (x, y, z) = (g.sample(rng, BOUND), g.sample(rng, BOUND), g.sample(rng, BOUND));
        let lhs = (c.exp(&x, &y) + c.exp(&g.mul(&x, &y), &z)) % n;
        let rhs = (c.exp(&x, &g.mul(&y, &z)) + c.exp(&y, &z)) % n;
        (lhs != rhs).then(|| format!("{} at {x:?}, {y:?}, {z:?}", c.label))
    })
}

fn class_vectors(mods: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &m in mods {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                (0..m).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

fn c1_multiplier_agreement() -> Outcome {
    let start = Instant::now();
    let gs = groups();
    for g in &gs {
        let want = expected_multiplier(g).ok_or_else(|| format!("no oracle for {}", g.name))?;
        let bar = h2_integral(&g.table).map_err(|e| e.to_string())?;
        let brute = h2_bruteforce(&g.table).map_err(|e| e.to_string())?;
        ensure(bar == brute, || format!("{}: bar complex {bar} vs cochain solve {brute}", g.name))?;
        if let Some(d) = &g.abelian {
            let closed = multiplier_finab(d);
            ensure(closed == bar, || format!("{}: closed form {closed} vs bar complex {bar}", g.name))?;
        }
        let got = elementary_divisors(bar.invariant_factors());
        ensure(got == want, || format!("{}: computed {got:?}, expected {want:?}", g.name))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{} groups, {took:.1?}", gs.len()))
}

fn c2_metacyclic_multiplier() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut params = vec![(2, 1), (8, 3), (5, 2), (12, 1)];
    while params.len() < 50 {
        let m: u64 = rng.random_range(2..=200);
        let r = rng.random_range(0..m);
        if r.gcd(&m) == 1 && !params.contains(&(m, r)) {
            params.push((m, r));
        }
    }
    for &(m, r) in &params {
        let t = m.gcd(&(r + m - 1));
        let want = if t == 1 { vec![] } else { vec![t] };
        let got = multiplier_metacyclic(&MetacyclicDesc::new(m, 0, r).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(got.invariant_factors() == want.as_slice(), || {
            format!("G({m},0,{r}): {got} instead of Z/{t}")
        })?;
    }
    Ok(format!("{} parameter choices", params.len()))
}

fn c3_cocycle_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut exhaustive, mut sampled) = (0usize, 0usize);
    let mut check = |a: &Cocycle, what: &str, rng: &mut ChaCha8Rng| -> Result<(), String> {
        let v = if a.group().order() <= EXHAUSTIVE_COVER {
            exhaustive += 1;
            finite_violation(a)
        } else {
            sampled += 1;
            finite_violation_sampled(a, rng)
        };
        ensure(v.is_none(), || format!("{what} fails at {v:?}"))
    };
    for g in &groups() {
        let t = &g.table;
        let xi = xi_extract(t).map_err(|e| e.to_string())?;
        let mods: Vec<u64> = xi.t.iter().map(|x| x.modulus).collect();
        for lambda in class_vectors(&mods) {
            let a = xi_cocycle(&xi, &lambda).map_err(|e| e.to_string())?;
            check(&a, &format!("{} class {lambda:?}", g.name), &mut rng)?;
            for h in t.all_subgroups() {
                let (res, _) = restriction(&a, &h).map_err(|e| e.to_string())?;
                check(&res, &format!("{} class {lambda:?} restricted to {h:?}", g.name), &mut rng)?;
            }
        }
        for modulus in [2, 3, 4, 12] {
            let e = t.identity();
            let values = t.elements().map(|x| if x == e { 0 } else { rng.random_range(0..modulus) }).collect();
            let mu = Cochain1::new(t, modulus, values).map_err(|e| e.to_string())?;
            check(&coboundary(&mu), &format!("{} coboundary", g.name), &mut rng)?;
        }
        let ext = build_repgroup(t).and_then(|r| r.extension()).map_err(|e| e.to_string())?;
        for chi in characters_of(&ext.total, &ext.central) {
            let a = transgression(&ext, &chi).map_err(|e| e.to_string())?;
            check(&a, &format!("{} transgression of {:?}", g.name, chi.exps), &mut rng)?;
            let inf = inflation(&a, &ext).map_err(|e| e.to_string())?;
            check(&inf, &format!("{} inflation of tra {:?}", g.name, chi.exps), &mut rng)?;
        }
    }

    let mut closed = 0;
    for (m, r, l) in [(8, 3, 1), (7, 8, 5), (12, 7, 3), (9, 4, 2), (16, 5, 3), (5, 2, 0), (6, 1, 5)] {
        let a = metacyclic_cocycle(m, r, l).map_err(|e| e.to_string())?;
        ensure(closed_violation(&a, &mut rng).is_none(), || format!("metacyclic ({m},{r},{l})"))?;
        let mc = metacover(m, r).map_err(|e| e.to_string())?;
        let inf = mc.inflated_cocycle(l).map_err(|e| e.to_string())?;
        ensure(closed_violation(&inf, &mut rng).is_none(), || format!("inflated ({m},{r},{l})"))?;
        let w = closed_coboundary(&inflation_witness(m, r, l).map_err(|e| e.to_string())?);
        ensure(closed_violation(&w, &mut rng).is_none(), || format!("witness coboundary ({m},{r},{l})"))?;
        closed += 3;
    }
    for (n, l, u) in [(1, 0, 0), (2, 1, 1), (4, 1, 3), (5, 2, 4), (6, 5, 1)] {
        let a = example1_cocycle(n, l, u).map_err(|e| e.to_string())?;
        ensure(closed_violation(&a, &mut rng).is_none(), || format!("Heisenberg ({n},{l},{u})"))?;
        closed += 1;
    }
    Ok(format!(
        "{exhaustive} finite cocycles on all triples, {sampled} covers on {SAMPLES} triples, {closed} closed forms on {SAMPLES} triples"
    ))
}

fn c4_repgroup() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut verified, mut corrupted) = (0, 0);
    for g in groups().iter().filter(|g| multiplier_order(g) > 1) {
        let t = &g.table;
        let r = build_repgroup(t).map_err(|e| e.to_string())?;
        ensure(r.order() as u64 == t.order() as u64 * multiplier_order(g), || {
            format!("{}: cover of order {}", g.name, r.order())
        })?;
        let rep = verify_repgroup(&r, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(rep.checks.len() >= 4 && rep.passed(), || format!("{}: {:?}", g.name, rep.checks))?;
        verified += 1;

        let e = t.identity();
        let others: Vec<usize> = t.elements().filter(|&x| x != e).collect();
        for _ in 0..3 {
            let mut xi = r.xi().clone();
            let i = rng.random_range(0..xi.t.len());
            let x = others[rng.random_range(0..others.len())];
            let y = others[rng.random_range(0..others.len())];
            let v = xi.t[i].get(x, y);
            xi.t[i].set(x, y, v + 1);
            let bad = verify_repgroup(&RepGroup::from_xi(xi), DEFAULT_SEED).map_err(|e| e.to_string())?;
            let failed: Vec<_> = bad.checks.iter().filter(|c| !c.passed).collect();
            ensure(!failed.is_empty() && failed.iter().all(|c| c.witness.is_some()), || {
                format!("{}: corrupting t_{i}({x},{y}) went unnoticed", g.name)
            })?;
            corrupted += 1;
        }
    }
    Ok(format!("{verified} covers verified, {corrupted} corrupted tables rejected"))
}

fn c5_metacover_witness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut choices = Vec::new();
    'outer: for m in 2u64..40 {
        for r in 2..m {
            let t = m.gcd(&(r - 1));
            if r.gcd(&m) == 1 && t > 1 {
                choices.push((m, r, (m + r) % t));
                if choices.len() == 20 {
                    break 'outer;
                }
            }
        }
    }
    ensure(choices.len() == 20, || "not enough parameter choices".into())?;
    for &(m, r, l) in &choices {
        let mc = metacover(m, r).map_err(|e| e.to_string())?;
        let inf = mc.inflated_cocycle(l).map_err(|e| e.to_string())?;
        let w = closed_coboundary(&inflation_witness(m, r, l).map_err(|e| e.to_string())?);
        let g = &inf.group;
        for _ in 0..SAMPLES {
            let (x, y) = (g.sample(&mut rng, BOUND), g.sample(&mut rng, BOUND));
            let a = inf.exp(&x, &y) as u128 * w.modulus as u128;
            let b = w.exp(&x, &y) as u128 * inf.modulus as u128;
            let n = inf.modulus as u128 * w.modulus as u128;
            ensure(a % n == b % n, || format!("({m},{r},{l}) differs at {x:?}, {y:?}"))?;
        }
    }
    Ok(format!("{} choices, {SAMPLES} pairs each", choices.len()))
}

struct Instance {
    group: String,
    ext: Rc<schurcover_core::CentralExtension>,
    chi: schurcover_core::Character,
    alpha: Cocycle,
    psi: schurcover_core::projrep::ProjCharacter,
}

/// Every `(G, χ, H, ψ)`: `χ` a character of `A` in the representation group, `H ≤ G` and `ψ`
/// an `α|_H`-character for `α = tra(χ)`.
fn instances() -> Result<Vec<Instance>, String> {
    let mut out = Vec::new();
    for g in groups() {
        let t = &g.table;
        let ext = Rc::new(build_repgroup(t).and_then(|r| r.extension()).map_err(|e| e.to_string())?);
        let subgroups = t.all_subgroups();
        for chi in characters_of(&ext.total, &ext.central) {
            let alpha = transgression(&ext, &chi).map_err(|e| e.to_string())?;
            for h in &subgroups {
                for psi in alpha_characters(&alpha, h).map_err(|e| e.to_string())? {
                    out.push(Instance {
                        group: g.name.clone(),
                        ext: Rc::clone(&ext),
                        chi: chi.clone(),
                        alpha: alpha.clone(),
                        psi,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn max_dense_diff(a: &[nalgebra::DMatrix<num_complex::Complex64>], b: &[nalgebra::DMatrix<num_complex::Complex64>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).iter().map(|z| z.norm()).fold(0.0, f64::max)).fold(0.0, f64::max)
}

fn c6_lift_descend(all: &[Instance]) -> Outcome {
    let mut worst = 0.0f64;
    for inst in all {
        let tag = || format!("{} chi {:?} H {:?} psi {:?}", inst.group, inst.chi.exps, inst.psi.subgroup, inst.psi.exps);
        let rho = induce(&inst.alpha, &inst.psi).map_err(|e| e.to_string())?;
        let lifted = lift(&ProjRep::Monomial(rho.clone()), &inst.ext, &inst.chi).map_err(|e| e.to_string())?;
        let (back, beta, chi) = descend(&lifted, &inst.ext).map_err(|e| e.to_string())?;
        let ProjRep::Monomial(back) = back else {
            return Err(format!("{}: monomial input descended to a dense representation", tag()));
        };
        ensure(back.mats.iter().zip(&rho.mats).all(|(a, b)| a.same_matrix(b)), || {
            format!("{}: descend(lift(rho)) != rho", tag())
        })?;
        ensure(finite_violation(&beta).is_none() && beta == inst.alpha, || format!("{}: cocycle changed", tag()))?;
        ensure(chi.exps.iter().zip(&inst.chi.exps).all(|(&a, &b)| a * inst.chi.modulus == b * chi.modulus), || {
            format!("{}: character changed", tag())
        })?;
        let (c1, c2) = (rho.to_dense().commutant_dim_f64(), lifted.to_dense().commutant_dim_f64());
        ensure((c1 - c2).abs() < 1e-6 && (c1 - c1.round()).abs() < 1e-6, || {
            format!("{}: commutant dimensions {c1} vs {c2}", tag())
        })?;

        let dense = rho.to_dense();
        let dl = lift(&ProjRep::Dense(dense.clone()), &inst.ext, &inst.chi).map_err(|e| e.to_string())?;
        let ProjRep::Dense(dl) = dl else { unreachable!() };
        let expected = lifted.to_dense();
        worst = worst.max(max_dense_diff(&dl.mats, &expected.mats));
        let (db, _, _) = descend(&ProjRep::Dense(dl), &inst.ext).map_err(|e| e.to_string())?;
        let ProjRep::Dense(db) = db else { unreachable!() };
        worst = worst.max(max_dense_diff(&db.mats, &dense.mats));
        ensure(worst <= DENSE_TOL, || format!("{}: dense residual {worst:e}", tag()))?;
    }
    Ok(format!("{} instances, dense residual {worst:.1e}", all.len()))
}

fn c7_intertwiner(all: &[Instance]) -> Outcome {
    let mut worst = 0.0f64;
    // floating-point cross-check on the first instance of each group
    let mut dense_checked = std::collections::HashSet::new();
    for inst in all {
        let c = monomial_correspondence(&inst.ext, &inst.chi, &inst.psi).map_err(|e| e.to_string())?;
        let t = &c.intertwiner;
        let cross = dense_checked.insert(inst.group.clone());
        let td = t.to_dense();
        for (x, (l, i)) in c.lifted.mats.iter().zip(&c.induced_tilde.mats).enumerate() {
            let lhs = t.mul(l).map_err(|e| e.to_string())?;
            let rhs = i.mul(t).map_err(|e| e.to_string())?;
            ensure(lhs.same_matrix(&rhs), || {
                format!("{} chi {:?} H {:?}: T rho~({x}) != rho_1({x}) T", inst.group, inst.chi.exps, inst.psi.subgroup)
            })?;
            if cross {
                let d = &td * l.to_dense() - i.to_dense() * &td;
                worst = worst.max(d.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
    }
    ensure(worst <= 1e-9, || format!("dense cross-check residual {worst:e}"))?;
    Ok(format!("{} instances", all.len()))
}

fn c8_twisted_algebra() -> Outcome {
    let mut pairs = 0;
    for g in &groups() {
        let t = &g.table;
        let xi = xi_extract(t).map_err(|e| e.to_string())?;
        let mods: Vec<u64> = xi.t.iter().map(|x| x.modulus).collect();
        for lambda in class_vectors(&mods) {
            let a = xi_cocycle(&xi, &lambda).map_err(|e| e.to_string())?;
            let dec = schurcover_core::projrep::decompose(&twisted_regular(&a).to_dense(), DEFAULT_SEED)
                .map_err(|e| format!("{} class {lambda:?}: {e}", g.name))?;
            let sq: usize = dec.dims().iter().map(|d| d * d).sum();
            ensure(sq == t.order(), || format!("{} class {lambda:?}: sum of squares {sq}", g.name))?;
            ensure(dec.dims() == dec.multiplicities(), || format!("{} class {lambda:?}: multiplicity != dim", g.name))?;
            pairs += 1;
        }
    }
    let klein = schurcover_core::groups::finite_table_of(&FinAbDesc::new(&[2, 2])).map_err(|e| e.to_string())?;
    let a = xi_cocycle(&xi_extract(&klein).map_err(|e| e.to_string())?, &[1]).map_err(|e| e.to_string())?;
    let (count, dims) = count_irr_alpha(&a, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure((count, dims.clone()) == (1, vec![2]), || format!("Klein four nontrivial class: {count} irreducibles {dims:?}"))?;
    Ok(format!("{pairs} (group, class) pairs; Klein four twisted: one irreducible of dimension 2"))
}

fn c9_finite_weight(all: &[Instance]) -> Outcome {
    for inst in all {
        let c = monomial_correspondence(&inst.ext, &inst.chi, &inst.psi).map_err(|e| e.to_string())?;
        let rho = induce(&inst.alpha, &inst.psi).map_err(|e| e.to_string())?;
        let w1 = finite_weight_space(&rho.to_dense(), &inst.psi).ncols();
        let w2 = finite_weight_space(&c.lifted.to_dense(), &c.psi_tilde).ncols();
        ensure(w1 == w2 && w1 > 0, || {
            format!("{} chi {:?} H {:?}: dim V_H(psi) = {w1}, dim V_H~(psi~) = {w2}", inst.group, inst.chi.exps, inst.psi.subgroup)
        })?;
    }
    Ok(format!("{} instances", all.len()))
}

/// `m | (r - 1)^k` for some `k`, by computing the lower central series `γ_k = ⟨a^{(r-1)^{k-1}}⟩`.
fn nilpotent_oracle(m: u64, r: u64) -> bool {
    let s = (r + m - 1) % m;
    let mut p = s % m;
    for _ in 0..64 {
        if p == 0 {
            return true;
        }
        p = p * s % m;
    }
    false
}

fn c10_alpha_finite() -> Outcome {
    for n in 1..=8u64 {
        for (l, u) in [(0, 0), (1, 0), (1, 1), (n.saturating_sub(1), 2 % n.max(1))] {
            let rep = heisenberg_report(n, l, u).map_err(|e| e.to_string())?;
            ensure(rep.checks_passed() && rep.verdict == Verdict::AlphaFinite, || format!("Heisenberg n={n}: {rep:?}"))?;
            ensure(rep.index == Some(n), || format!("Heisenberg n={n}: index {:?}", rep.index))?;
            let k = rep.class_order.ok_or("no class order")?;
            ensure(n % k == 0, || format!("Heisenberg n={n}: class order {k} does not divide n"))?;
        }
    }
    for (n, r) in [(2, 3), (3, 2), (4, 3), (5, 2), (6, 5), (8, 3)] {
        let rep = mc_alpha_finite_report(0, n, r, 0).map_err(|e| e.to_string())?;
        ensure(rep.verdict == Verdict::NotAlphaFinite, || format!("G(0,{n},{r}) reported {:?}", rep.verdict))?;
    }
    let split = mc_alpha_finite_report(5, 0, 2, 0).map_err(|e| e.to_string())?;
    ensure(split.equivalence_flag == Some(false), || format!("G(5,0,2) flag {:?}", split.equivalence_flag))?;
    ensure(split.nilpotent == Some(false) && split.sufficient_condition_met, || format!("G(5,0,2): {split:?}"))?;
    let w = mc_abelian_by_finite_witness(5, 2).map_err(|e| e.to_string())?;
    ensure(w.d == 4 && w.index == 4 && w.checks.iter().all(|c| c.passed), || format!("witness {w:?}"))?;
    ensure(split.index == Some(4), || format!("G(5,0,2) index {:?}", split.index))?;
    let mut checked = 0;
    for m in 1..=100u64 {
        for r in 1..m.max(2) {
            if r.gcd(&m) == 1 {
                let oracle = nilpotent_oracle(m, r);
                ensure(mc_is_nilpotent(m, r) == oracle, || format!("G({m},0,{r}): nilpotency test disagrees with γ_k"))?;
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..30 {
        let m = rng.random_range(2..=60u64);
        let r = rng.random_range(1..m);
        if r.gcd(&m) != 1 {
            continue;
        }
        let lambda = 1 % m.gcd(&(r - 1));
        let rep = mc_alpha_finite_report(m, 0, r, lambda).map_err(|e| e.to_string())?;
        let oracle = nilpotent_oracle(m, r);
        ensure(rep.nilpotent == Some(oracle), || format!("G({m},0,{r}) nilpotent {:?} vs {oracle}", rep.nilpotent))?;
        ensure(rep.checks_passed(), || format!("G({m},0,{r}) checks {:?}", rep.checks))?;
        ensure(rep.equivalence_flag == Some(oracle == rep.sufficient_condition_met), || format!("G({m},0,{r}) flag"))?;
    }
    Ok(format!("Heisenberg n <= 8, six m = 0 groups, G(5,0,2) flag false with <a, b^4>, {checked} nilpotency tests against the lower central series"))
}

fn c11_shift_window() -> Outcome {
    let start = Instant::now();
    let rep = shift_window_verify(&ShiftWindowData::demo(), DEFAULT_SEED).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(rep.checks.len() == 3 && rep.passed && rep.checks.iter().all(|c| c.passed), || format!("{:?}", rep.checks))?;
    ensure(took < Duration::from_secs(5), || format!("took {took:?}"))?;
    Ok(format!("{} indices, 3 checks, {took:.1?}", rep.indices.len()))
}

fn main() {
    let cell = OnceCell::new();
    let all = &cell;
    let with_instances = |f: fn(&[Instance]) -> Outcome| -> Box<dyn Fn() -> Outcome + '_> {
        Box::new(move || match all.get_or_init(instances) {
            Ok(v) => f(v),
            Err(e) => Err(e.clone()),
        })
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 multiplier agreement", Box::new(c1_multiplier_agreement)),
        ("2 infinite metacyclic multiplier", Box::new(c2_metacyclic_multiplier)),
        ("3 cocycle identity", Box::new(c3_cocycle_identity)),
        ("4 representation-group verification", Box::new(c4_repgroup)),
        ("5 metacover witness", Box::new(c5_metacover_witness)),
        ("6 lift/descend roundtrip", with_instances(c6_lift_descend)),
        ("7 monomial correspondence", with_instances(c7_intertwiner)),
        ("8 twisted algebra accounting", Box::new(c8_twisted_algebra)),
        ("9 finite-weight equality", with_instances(c9_finite_weight)),
        ("10 alpha-finiteness reports", Box::new(c10_alpha_finite)),
        ("11 shift-window construction", Box::new(c11_shift_window)),
    ];
    // `cargo test --test acceptance -- 3 7` runs criteria 3 and 7 only
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: Vec<_> = criteria
        .into_iter()
        .filter(|(name, _)| only.is_empty() || only.iter().any(|o| name.split(' ').next() == Some(o.as_str())))
        .collect();
    let mut failed = 0;
    for (name, f) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({took:.1?})"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({took:.1?})");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
