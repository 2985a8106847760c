use crate::spec::{parse_group_spec, GroupSpec};
use crate::{Failure, GlobalOpts, Method, Payload};
use schurcover_core::alphafinite::{
    heisenberg_report, mc_alpha_finite_report, shift_window_verify, ShiftLambda, ShiftWindowData,
    Verdict,
};
use schurcover_core::arith::lcm;
use schurcover_core::cocycles::{
    class_order, closed_coboundary, example1_cocycle, h2_bruteforce, is_coboundary, metacyclic_cocycle,
    transgression, xi_cocycle, CentralExtension, Character, Cocycle, BRUTEFORCE_CAP,
};
use schurcover_core::corpus::corpus;
use schurcover_core::homology::{h2_integral_capped, multiplier_finab, multiplier_metacyclic, xi_extract_capped, XiData};
use schurcover_core::projrep::{
    alpha_characters, check_projrep, count_irr_alpha, count_irr_central, descend, finite_weight_space,
    induce as induce_rep, monomial_correspondence, MonomialRep, ProjRep,
};
use schurcover_core::repgroup::{build_repgroup_capped, inflation_witness, metacover, verify_repgroup, RepGroup};
use schurcover_core::report::CheckResult;
use schurcover_core::{FinAbDesc, FiniteGroupTable, MetacyclicDesc, RootExp};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const SAMPLES: usize = 100_000;
const SAMPLE_BOUND: i64 = 1_000_000;

fn parse(group: &str) -> Result<GroupSpec, Failure> {
    Ok(parse_group_spec(group)?)
}

fn finite(spec: &GroupSpec, g: &GlobalOpts) -> Result<FiniteGroupTable, Failure> {
    Ok(spec.table(g.table_cap())?)
}

fn rng(g: &GlobalOpts) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(g.seed)
}

fn class_exps(xi: &XiData, class: &[u64]) -> Result<Vec<u64>, Failure> {
    if class.is_empty() {
        return Ok(vec![0; xi.t.len()]);
    }
    if class.len() != xi.t.len() {
        return Err(Failure::invalid(format!(
            "--class needs {} exponents, one per invariant factor of H_2 = {:?}",
            xi.t.len(),
            xi.h2_factors.invariant_factors()
        )));
    }
    Ok(class.iter().zip(&xi.t).map(|(&l, t)| l % t.modulus).collect())
}

/// `χ(1, a) = Π ζ_{r_i}^{λ_i a_i}`, so that `tra(χ)` is the cocycle of class `λ`.
fn class_character(r: &RepGroup, ext: &CentralExtension, lambda: &[u64]) -> Character {
    let mods: Vec<u64> = r.xi().t.iter().map(|t| t.modulus).collect();
    let m = mods.iter().copied().fold(1, lcm);
    let exps = ext
        .central
        .iter()
        .map(|&x| {
            let (_, a) = r.element_at(x);
            a.iter().zip(&mods).zip(lambda).map(|((&ai, &ri), &l)| (m / ri) * (l * ai % ri)).sum::<u64>() % m
        })
        .collect();
    Character {
        modulus: m,
        domain: ext.central.clone(),
        exps,
    }
}

fn sorted_subgroup(t: &FiniteGroupTable, subgroup: &[usize]) -> Result<Vec<usize>, Failure> {
    let mut h: Vec<usize> = if subgroup.is_empty() { vec![t.identity()] } else { subgroup.to_vec() };
    h.sort_unstable();
    h.dedup();
    if h.iter().any(|&x| x >= t.order()) || !t.is_subgroup(&h) {
        return Err(Failure::invalid(format!("{h:?} is not a subgroup")));
    }
    Ok(h)
}

fn dense_json(m: &DMatrix<Complex64>) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    json!(rows)
}

fn factors(d: &FinAbDesc) -> Value {
    json!(d.invariant_factors())
}

pub(crate) fn multiplier(group: &str, g: &GlobalOpts) -> Result<Payload, Failure> {
    let spec = parse(group)?;
    let (h2, method) = match &spec {
        GroupSpec::FinAb(f) => (multiplier_finab(&FinAbDesc::new(f)), "exterior square"),
        GroupSpec::Metacyclic { m, n, r } if m * n == 0 => {
            (multiplier_metacyclic(&MetacyclicDesc::new(*m, *n, *r)?)?, "closed form")
        }
        GroupSpec::Heisenberg { .. } => {
            return Err(Failure::invalid("no multiplier formula is available for Heisenberg groups"))
        }
        _ => (h2_integral_capped(&finite(&spec, g)?, g.bar_cap())?, "bar complex"),
    };
    Ok(Payload {
        input: json!({ "group": spec.to_string() }),
        result: json!({ "invariant_factors": factors(&h2), "method": method }),
        checks: Vec::new(),
    })
}

pub(crate) fn h2(group: &str, method: Method, xi: bool, g: &GlobalOpts) -> Result<Payload, Failure> {
    let spec = parse(group)?;
    let t = finite(&spec, g)?;
    let mut result = serde_json::Map::new();
    let mut checks = Vec::new();
    let bar = matches!(method, Method::Bar | Method::Both)
        .then(|| h2_integral_capped(&t, g.bar_cap()))
        .transpose()?;
    let brute = matches!(method, Method::Bruteforce | Method::Both)
        .then(|| h2_bruteforce(&t))
        .transpose()?;
    if let Some(b) = &bar {
        result.insert("invariant_factors".into(), factors(b));
    } else if let Some(b) = &brute {
        result.insert("invariant_factors".into(), factors(b));
    }
    if let (Some(a), Some(b)) = (&bar, &brute) {
        result.insert("bruteforce".into(), factors(b));
        checks.push(CheckResult::from_witness(
            "bar complex and cochain solve agree",
            (a != b).then(|| format!("bar {a} vs cochain solve {b}")),
        ));
    }
    if xi {
        let data = xi_extract_capped(&t, g.bar_cap())?;
        result.insert("xi".into(), serde_json::to_value(data.to_json()).expect("serializable"));
    }
    Ok(Payload {
        input: json!({ "group": spec.to_string(), "method": format!("{method:?}").to_lowercase() }),
        result: Value::Object(result),
        checks,
    })
}

pub(crate) fn repgroup(group: &str, verify: bool, table: bool, g: &GlobalOpts) -> Result<Payload, Failure> {
    let spec = parse(group)?;
    let input = json!({ "group": spec.to_string(), "verify": verify });
    if let GroupSpec::Metacyclic { m, n: 0, r } = spec {
        if m > 0 {
            let mc = metacover(m, r)?;
            let checks = if verify {
                mc.verify(&mut rng(g), SAMPLES / 10, SAMPLE_BOUND)
            } else {
                Vec::new()
            };
            return Ok(Payload {
                input,
                result: json!({
                    "cover": format!("mc:{},0,{}", m * mc.t, r),
                    "t": mc.t,
                    "presentation": mc.presentation().to_string(),
                    "central_subgroup": format!("<a^{m}>"),
                    "projection": format!("a^i b^j -> a^(i mod {m}) b^j"),
                }),
                checks,
            });
        }
    }
    let t = finite(&spec, g)?;
    let r = build_repgroup_capped(&t, g.bar_cap())?;
    let mut result = json!({
        "order": r.order(),
        "central_order": r.central_order(),
        "h2": factors(r.h2()),
        "central_subgroup": r.central_subgroup(),
    });
    if table {
        result["table"] = serde_json::to_value(r.to_table()?.to_json()).expect("serializable");
    }
    let checks = if verify { verify_repgroup(&r, g.seed)?.checks } else { Vec::new() };
    Ok(Payload { input, result, checks })
}

fn sampled_checks<Gr>(alpha: &schurcover_core::cocycles::ClosedCocycle<Gr>, g: &GlobalOpts) -> Vec<CheckResult>
where
    Gr: schurcover_core::groups::SampleGroup + Clone,
{
    let mut rng = rng(g);
    vec![
        CheckResult::from_witness(
            "cocycle identity",
            alpha
                .violation_sampled(&mut rng, SAMPLES, SAMPLE_BOUND)
                .map(|(x, y, z)| format!("fails at ({x:?}, {y:?}, {z:?})")),
        ),
        CheckResult::from_witness(
            "normalized",
            (!alpha.is_normalized_sampled(&mut rng, SAMPLES / 10, SAMPLE_BOUND)).then(|| "alpha(1, g) != 1".into()),
        ),
    ]
}

pub(crate) fn cocycle(
    group: &str,
    class: &[u64],
    lambda: u64,
    mu: u64,
    witness: bool,
    g: &GlobalOpts,
) -> Result<Payload, Failure> {
    let spec = parse(group)?;
    match &spec {
        GroupSpec::Metacyclic { m, n: 0, r } if *m > 0 => {
            let alpha = metacyclic_cocycle(*m, *r, lambda)?;
            let mut checks = sampled_checks(&alpha, g);
            let mut result = json!({
                "closed_form": "metacyclic", "m": m, "r": r, "lambda_exp": lambda, "N": alpha.modulus,
            });
            if witness {
                let mc = metacover(*m, *r)?;
                let w = inflation_witness(*m, *r, lambda)?;
                let bad = closed_coboundary(&w).disagreement_sampled(
                    &mc.inflated_cocycle(lambda)?,
                    &mut rng(g),
                    SAMPLES,
                    SAMPLE_BOUND,
                );
                checks.push(CheckResult::from_witness(
                    "coboundary of the witness equals the inflation",
                    bad.map(|(x, y)| format!("differs at ({x}, {y})")),
                ));
                result["witness"] = json!({
                    "cover": format!("mc:{},0,{}", m * mc.t, r),
                    "N": m * mc.t,
                    "delta_exp": mc.delta_exp(lambda),
                    "mu": "mu(a^i b^j) = delta^(i y)",
                    "y": schurcover_core::cocycles::metacyclic_bezout(*m, *r).1,
                });
            }
            Ok(Payload {
                input: json!({ "group": spec.to_string(), "lambda": lambda }),
                result,
                checks,
            })
        }
        GroupSpec::Heisenberg { d, modulus } if d == &[1] && *modulus > 0 => {
            let alpha = example1_cocycle(*modulus, lambda, mu)?;
            Ok(Payload {
                input: json!({ "group": spec.to_string(), "lambda": lambda, "mu": mu }),
                result: json!({
                    "closed_form": "example1", "n": modulus, "lambda_exp": lambda % modulus,
                    "mu_exp": mu % modulus, "N": modulus,
                }),
                checks: sampled_checks(&alpha, g),
            })
        }
        GroupSpec::Metacyclic { .. } | GroupSpec::FinAb(_) | GroupSpec::Table(_) => {
            let t = finite(&spec, g)?;
            let xi = xi_extract_capped(&t, g.bar_cap())?;
            let lambda = class_exps(&xi, class)?;
            let alpha = xi_cocycle(&xi, &lambda)?;
            let checks = vec![
                CheckResult::from_witness(
                    "cocycle identity",
                    alpha.violation().map(|(x, y, z)| format!("fails at ({x}, {y}, {z})")),
                ),
                CheckResult::from_witness("normalized", (!alpha.is_normalized()).then(|| "alpha(1, g) != 1".into())),
            ];
            let mut result = json!({
                "group": spec.to_string(),
                "N": alpha.modulus(),
                "table": alpha.table(),
                "class": lambda,
                "h2": factors(&xi.h2_factors),
                "class_order": class_order(&alpha, g.table_cap())?,
            });
            if witness {
                result["coboundary_witness"] = match is_coboundary(&alpha) {
                    Some(mu) => json!({ "N": mu.modulus(), "values": mu.values() }),
                    None => Value::Null,
                };
            }
            Ok(Payload {
                input: json!({ "group": spec.to_string(), "class": lambda }),
                result,
                checks,
            })
        }
        _ => Err(Failure::invalid(format!("no cocycle model for {spec}"))),
    }
}

struct Setup {
    table: FiniteGroupTable,
    lambda: Vec<u64>,
    alpha: Cocycle,
}

fn setup(group: &str, class: &[u64], g: &GlobalOpts) -> Result<(GroupSpec, Setup, XiData), Failure> {
    let spec = parse(group)?;
    let table = finite(&spec, g)?;
    let xi = xi_extract_capped(&table, g.bar_cap())?;
    let lambda = class_exps(&xi, class)?;
    let alpha = xi_cocycle(&xi, &lambda)?;
    Ok((spec, Setup { table, lambda, alpha }, xi))
}

pub(crate) fn irr(group: &str, class: &[u64], g: &GlobalOpts) -> Result<Payload, Failure> {
    let (spec, s, xi) = setup(group, class, g)?;
    let (count, mut dims) = count_irr_alpha(&s.alpha, g.seed)?;
    dims.sort_unstable();
    let r = RepGroup::from_xi(xi);
    let ext = r.extension()?;
    let chi = class_character(&r, &ext, &s.lambda);
    let (count2, mut dims2) = count_irr_central(&ext, &chi, g.seed)?;
    dims2.sort_unstable();
    let sq: usize = dims.iter().map(|d| d * d).sum();
    let checks = vec![
        CheckResult::from_witness(
            "sum of squared dimensions is |G|",
            (sq != s.table.order()).then(|| format!("{sq} != {}", s.table.order())),
        ),
        CheckResult::from_witness(
            "irreducibles of the cover with central character chi",
            (count != count2 || dims != dims2).then(|| format!("cover gives {count2} with dims {dims2:?}")),
        ),
    ];
    Ok(Payload {
        input: json!({ "group": spec.to_string(), "class": s.lambda }),
        result: json!({ "count": count, "dims": dims, "order": s.table.order() }),
        checks,
    })
}

fn monomial_json(r: &MonomialRep) -> Value {
    serde_json::to_value(&r.mats).expect("serializable")
}

pub(crate) fn induce(
    group: &str,
    class: &[u64],
    subgroup: &[usize],
    psi: usize,
    dense: bool,
    g: &GlobalOpts,
) -> Result<Payload, Failure> {
    let (spec, s, _) = setup(group, class, g)?;
    let h = sorted_subgroup(&s.table, subgroup)?;
    let psis = alpha_characters(&s.alpha, &h)?;
    if psis.is_empty() {
        return Err(Failure::invalid("alpha restricted to the subgroup is not a coboundary"));
    }
    let p = psis.get(psi).ok_or_else(|| {
        Failure::invalid(format!("--psi {psi} out of range: the subgroup has {} alpha-characters", psis.len()))
    })?;
    let rho = induce_rep(&s.alpha, p)?;
    let check = check_projrep(&ProjRep::Monomial(rho.clone()));
    let mut result = json!({
        "dim": rho.dim(),
        "subgroup": h,
        "psi": { "N": p.modulus, "exps": p.exps },
        "coset_representatives": s.table.right_cosets(&h).reps,
        "matrices": monomial_json(&rho),
        "commutant_dim": rho.to_dense().commutant_dim_f64(),
    });
    if dense {
        result["dense"] = Value::Array(rho.to_dense().mats.iter().map(dense_json).collect());
    }
    Ok(Payload {
        input: json!({ "group": spec.to_string(), "class": s.lambda, "subgroup": h, "psi": psi }),
        result,
        checks: vec![CheckResult::from_witness(
            "projective relation",
            check.witness.map(|(x, y)| format!("fails at ({x}, {y})")),
        )],
    })
}

pub(crate) fn lift(group: &str, class: &[u64], subgroup: &[usize], psi: usize, g: &GlobalOpts) -> Result<Payload, Failure> {
    let (spec, s, xi) = setup(group, class, g)?;
    let r = RepGroup::from_xi(xi);
    let ext = r.extension()?;
    let chi = class_character(&r, &ext, &s.lambda);
    let tra = transgression(&ext, &chi)?;
    let h = sorted_subgroup(&s.table, subgroup)?;
    let psis = alpha_characters(&tra, &h)?;
    let p = psis
        .get(psi)
        .ok_or_else(|| Failure::invalid(format!("--psi {psi} out of range: {} alpha-characters", psis.len())))?;
    let corr = monomial_correspondence(&ext, &chi, p)?;
    let rho = induce_rep(&tra, p)?;
    let mut checks = vec![CheckResult::from_witness(
        "tra(chi) equals the class cocycle",
        (tra != s.alpha).then(|| "transgression differs from the H_2-coordinate cocycle".into()),
    )];
    checks.push(CheckResult::from_witness(
        "lift is an ordinary representation",
        corr.lifted.violation().map(|(x, y)| format!("fails at ({x}, {y})")),
    ));
    let (back, _, _) = descend(&ProjRep::Monomial(corr.lifted.clone()), &ext)?;
    let same = match &back {
        ProjRep::Monomial(b) => b.mats.iter().zip(&rho.mats).all(|(a, b)| a.same_matrix(b)),
        ProjRep::Dense(_) => false,
    };
    checks.push(CheckResult::from_witness(
        "descend(lift(rho)) = rho",
        (!same).then(|| "matrices differ".into()),
    ));
    let (c1, c2) = (rho.to_dense().commutant_dim_f64(), corr.lifted.to_dense().commutant_dim_f64());
    checks.push(CheckResult::from_witness(
        "commutant dimensions agree",
        ((c1 - c2).abs() > 1e-6).then(|| format!("{c1} vs {c2}")),
    ));
    checks.push(CheckResult::from_witness(
        "intertwiner",
        corr.violation().map(|x| format!("T rho~({x}) != rho_1({x}) T")),
    ));
    let w1 = finite_weight_space(&rho.to_dense(), p).ncols();
    let w2 = finite_weight_space(&corr.lifted.to_dense(), &corr.psi_tilde).ncols();
    checks.push(CheckResult::from_witness(
        "finite-weight dimensions agree",
        (w1 != w2).then(|| format!("{w1} vs {w2}")),
    ));
    Ok(Payload {
        input: json!({ "group": spec.to_string(), "class": s.lambda, "subgroup": h, "psi": psi }),
        result: json!({
            "cover_order": ext.total.order(),
            "central_subgroup": ext.central,
            "chi": { "N": chi.modulus, "exps": chi.exps },
            "dim": rho.dim(),
            "h_tilde": corr.h_tilde,
            "psi_tilde": { "N": corr.psi_tilde.modulus, "exps": corr.psi_tilde.exps },
            "intertwiner": corr.intertwiner,
            "lifted": monomial_json(&corr.lifted),
            "commutant_dim": c1,
            "weight_space_dim": w1,
        }),
        checks,
    })
}

pub(crate) fn alpha_finite(
    metacyclic: Option<&[u64]>,
    heisenberg: Option<u64>,
    lambda: u64,
    mu: u64,
    shift: bool,
    g: &GlobalOpts,
) -> Result<Payload, Failure> {
    let chosen = metacyclic.is_some() as u8 + heisenberg.is_some() as u8 + shift as u8;
    if chosen != 1 {
        return Err(Failure::invalid("give exactly one of --metacyclic, --heisenberg, --shift-demo"));
    }
    if shift {
        return shift_demo(8, None, None, g);
    }
    let (input, report) = if let Some(v) = metacyclic {
        let [m, n, r] = v else {
            return Err(Failure::invalid("--metacyclic takes m,n,r"));
        };
        (
            json!({ "metacyclic": [m, n, r], "lambda": lambda }),
            mc_alpha_finite_report(*m, *n, *r, lambda)?,
        )
    } else {
        let n = heisenberg.expect("one option is set");
        (json!({ "heisenberg": n, "lambda": lambda, "mu": mu }), heisenberg_report(n, lambda, mu)?)
    };
    let checks = report.checks.clone();
    let mut result = serde_json::to_value(&report).expect("serializable");
    result.as_object_mut().unwrap().remove("checks");
    result["alpha_finite"] = json!(report.verdict == Verdict::AlphaFinite);
    Ok(Payload { input, result, checks })
}

pub(crate) fn shift_demo(
    window: i64,
    phi: Option<&[i64]>,
    lambda_root: Option<&[u64]>,
    g: &GlobalOpts,
) -> Result<Payload, Failure> {
    let mut data = ShiftWindowData::demo();
    data.window = window;
    if let Some(p) = phi {
        let [a, b, c, d] = p else {
            return Err(Failure::invalid("--phi takes four integers a,b,c,d"));
        };
        data.phi = vec![vec![*a, *b], vec![*c, *d]];
    }
    if let Some(l) = lambda_root {
        let [n, k] = l else {
            return Err(Failure::invalid("--lambda-root takes N,k"));
        };
        if *n == 0 {
            return Err(Failure::invalid("N must be positive"));
        }
        data.lambda = ShiftLambda::Root(RootExp::new(*n, *k as i128));
    }
    let report = shift_window_verify(&data, g.seed)?;
    let checks = report.checks.clone();
    let mut result = serde_json::to_value(&report).expect("serializable");
    result.as_object_mut().unwrap().remove("checks");
    Ok(Payload {
        input: serde_json::to_value(&data).expect("serializable"),
        result,
        checks,
    })
}

fn first_failure(checks: &[CheckResult]) -> Option<String> {
    checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))
}

pub(crate) fn selftest(up_to: usize, g: &GlobalOpts) -> Result<Payload, Failure> {
    let cap = g.bar_cap();
    if up_to > cap {
        return Err(schurcover_core::Error::CapExceeded { order: up_to, cap }.into());
    }
    let mut checks = Vec::new();
    let groups = corpus(up_to);
    for cg in &groups {
        let t = &cg.table;
        let bar = h2_integral_capped(t, cap)?;
        let mut bad = Vec::new();
        if t.order() <= BRUTEFORCE_CAP {
            let b = h2_bruteforce(t)?;
            if b != bar {
                bad.push(format!("cochain solve {b}"));
            }
        }
        if let Some(desc) = &cg.abelian {
            let c = multiplier_finab(desc);
            if c != bar {
                bad.push(format!("closed form {c}"));
            }
        }
        checks.push(CheckResult::from_witness(
            format!("multiplier {}", cg.name),
            (!bad.is_empty()).then(|| format!("bar complex {bar} vs {}", bad.join(", "))),
        ));

        let xi = xi_extract_capped(t, cap)?;
        let k = xi.t.len();
        let mut classes = vec![vec![0; k]];
        classes.extend((0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()));
        let mut bad = None;
        for lambda in &classes {
            let alpha = xi_cocycle(&xi, lambda)?;
            if let Some(v) = alpha.violation() {
                bad = Some(format!("class {lambda:?} fails the cocycle identity at {v:?}"));
                break;
            }
            match count_irr_alpha(&alpha, g.seed) {
                Ok(_) => {}
                Err(e) => {
                    bad = Some(format!("class {lambda:?}: {e}"));
                    break;
                }
            }
        }
        checks.push(CheckResult::from_witness(format!("cocycles and twisted algebras {}", cg.name), bad));

        if !bar.is_trivial() {
            let r = RepGroup::from_xi(xi);
            let rep = verify_repgroup(&r, g.seed)?;
            checks.push(CheckResult::from_witness(
                format!("representation group {}", cg.name),
                first_failure(&rep.checks),
            ));
        }
    }

    let mut rng = rng(g);
    let mut bad = None;
    for (m, r, l) in [(8, 3, 1), (7, 8, 3), (12, 7, 5), (9, 4, 2), (5, 2, 0)] {
        let alpha = metacyclic_cocycle(m, r, l)?;
        if let Some(v) = alpha.violation_sampled(&mut rng, 10_000, SAMPLE_BOUND) {
            bad = Some(format!("metacyclic({m},{r},{l}) fails at {v:?}"));
            break;
        }
        let mc = metacover(m, r)?;
        let w = closed_coboundary(&inflation_witness(m, r, l)?);
        if let Some(v) = w.disagreement_sampled(&mc.inflated_cocycle(l)?, &mut rng, 10_000, SAMPLE_BOUND) {
            bad = Some(format!("inflation witness for ({m},{r},{l}) fails at {v:?}"));
            break;
        }
    }
    checks.push(CheckResult::from_witness("metacyclic cocycles and metacover witnesses", bad));
    let e1 = example1_cocycle(4, 1, 3)?;
    checks.push(CheckResult::from_witness(
        "two-parameter Heisenberg cocycle",
        e1.violation_sampled(&mut rng, 10_000, SAMPLE_BOUND).map(|v| format!("fails at {v:?}")),
    ));

    let heis = heisenberg_report(4, 1, 0)?;
    let remark = mc_alpha_finite_report(0, 5, 2, 0)?;
    let split = mc_alpha_finite_report(5, 0, 2, 0)?;
    let mut bad = first_failure(&heis.checks);
    if remark.verdict != Verdict::NotAlphaFinite {
        bad.get_or_insert_with(|| "G(0,5,2) is not reported as not alpha-finite".into());
    }
    if split.equivalence_flag != Some(false) {
        bad.get_or_insert_with(|| "G(5,0,2) does not flag the nilpotency disagreement".into());
    }
    checks.push(CheckResult::from_witness("alpha-finiteness reports", bad));
    let shift = shift_window_verify(&ShiftWindowData::demo(), g.seed)?;
    checks.push(CheckResult::from_witness("shift window", first_failure(&shift.checks)));

    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(Payload {
        input: json!({ "up_to": up_to }),
        result: json!({ "groups": groups.len(), "checks": checks.len(), "failed": failed }),
        checks,
    })
}
