//! Named verification suites, one per acceptance criterion. Each suite
//! returns a pass flag, a one-line summary and a deterministic JSON artifact.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, UniversalAlgebra};
use crate::building::{
    attach_mpod, census_against_prering, construct_semistable, find_antipodal_tuple, girth_at_least, ChamberGraph,
};
use crate::chevalley::iso_check_default;
use crate::cones::{
    a1_oracle, cone_equal, gen_bk, gen_km, gen_sti, gen_wti, is_member, redundancy_audit, AuditStatus, ConeEqualReport,
    DominantWeight, InequalitySystem, KmAlgebra, DEFAULT_BUDGET,
};
use crate::dihedral::{Side, WeylElement};
use crate::error::Result;
use crate::field::Field;
use crate::filtration::{concavity_audit, limit_agreement, superadditivity_audit, ConcaveWeighting};

pub const SUITES: [&str; 10] = [
    "chevalley",
    "algebra",
    "concavity",
    "limits",
    "cones",
    "irredundancy",
    "classical",
    "census",
    "semistability",
    "determinism",
];

/// Seed used by suites that sample.
pub const SUITE_SEED: u64 = 20_240_611;

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub criterion: usize,
    pub passed: bool,
    pub summary: String,
    pub artifact: Value,
}

impl SuiteOutcome {
    fn new(name: &'static str, passed: bool, summary: String, artifact: Value) -> SuiteOutcome {
        let criterion = SUITES.iter().position(|s| *s == name).expect("known suite") + 1;
        SuiteOutcome { name, criterion, passed, summary, artifact }
    }

    /// Canonical bytes of the artifact.
    pub fn artifact_bytes(&self) -> String {
        serde_json::to_string(&self.artifact).expect("json")
    }
}

pub fn run_suite(name: &str) -> Result<Option<SuiteOutcome>> {
    Ok(Some(match name {
        "chevalley" => chevalley()?,
        "algebra" => algebra()?,
        "concavity" => concavity()?,
        "limits" => limits()?,
        "cones" => cones()?,
        "irredundancy" => irredundancy()?,
        "classical" => classical()?,
        "census" => census()?,
        "semistability" => semistability()?,
        "determinism" => determinism(&SUITES[..9])?,
        _ => return Ok(None),
    }))
}

pub fn chevalley() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    for (a12, a21) in [(0, 0), (1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (2, 2)] {
        let r = iso_check_default(a12, a21)?;
        passed &= r.passed;
        rows.push(json!({
            "cartan": [a12, a21],
            "passed": r.passed,
            "pairs": r.pairs_checked,
            "generators": r.generators_checked,
            "counterexample": r.counterexample,
        }));
    }
    let summary = format!("{} Cartan pairs checked", rows.len());
    Ok(SuiteOutcome::new("chevalley", passed, summary, json!(rows)))
}

fn power(alg: &UniversalAlgebra, x: &AlgebraElement, k: u32) -> Result<AlgebraElement> {
    let mut acc = alg.one();
    for _ in 0..k {
        acc = alg.mul(&acc, x)?;
    }
    Ok(acc)
}

/// Laws of `A_t` for one `n`; returns the list of failed checks.
pub fn algebra_laws(n: u32, seed: u64) -> Result<(usize, Vec<String>)> {
    let field = Field::cyclotomic(n)?;
    let alg = UniversalAlgebra::new(&field);
    let group = alg.group().clone();
    let basis = alg.basis();
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut table = std::collections::HashMap::new();
    for u in &basis {
        for v in &basis {
            table.insert((*u, *v), alg.mul_basis(u, v)?);
        }
    }
    for u in &basis {
        for v in &basis {
            checks += 1;
            let uv = &table[&(*u, *v)];
            if uv != &table[&(*v, *u)] {
                failures.push(format!("n={n}: σ_{u}σ_{v} not commutative"));
            }
            for (_, c) in uv.terms() {
                if c.sign() < 0 {
                    failures.push(format!("n={n}: negative constant in σ_{u}σ_{v}"));
                }
            }
            for w in &basis {
                checks += 1;
                let left = alg.mul(uv, &alg.sigma(*w))?;
                let right = alg.mul(&alg.sigma(*u), &table[&(*v, *w)])?;
                if left != right {
                    failures.push(format!("n={n}: associativity fails at ({u}, {v}, {w})"));
                }
            }
        }
    }
    // divided powers σ_i^[k] = σ_{ending(k, i)}
    for i in Side::BOTH {
        for k in 1..=n {
            for l in 1..=n {
                checks += 1;
                let got = alg.mul(&alg.divided_power(i, k), &alg.divided_power(i, l))?;
                let expected = if k + l < n {
                    alg.divided_power(i, k + l).scale(&alg.binomial(k + l, k))
                } else {
                    AlgebraElement::zero()
                };
                if got != expected {
                    failures.push(format!("n={n}: σ_{}^[{k}] σ_{}^[{l}]", i.number(), i.number()));
                }
            }
        }
    }
    // quadratic relation and nilpotency
    let s1 = alg.sigma(WeylElement::generator(Side::One));
    let s2 = alg.sigma(WeylElement::generator(Side::Two));
    let lhs = alg.mul(&s1, &s2)?.scale(&field.t_int(2));
    let rhs = alg.mul(&s1, &s1)?.add(&alg.mul(&s2, &s2)?);
    checks += 3;
    if lhs != rhs {
        failures.push(format!("n={n}: quadratic relation"));
    }
    if !power(&alg, &s1, n)?.is_zero() || !power(&alg, &s2, n)?.is_zero() {
        failures.push(format!("n={n}: σ_i^n ≠ 0"));
    }
    // top-degree pairing of opposite sides
    for k in 1..n {
        checks += 1;
        let p = alg.mul_basis(&WeylElement::ending(k, Side::One), &WeylElement::ending(n - k, Side::Two))?;
        if p != alg.sigma(group.longest().expect("finite")) {
            failures.push(format!("n={n}: top pairing at k={k}"));
        }
    }
    // W-action: involutive automorphism
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
    let random_element = |rng: &mut ChaCha8Rng| -> AlgebraElement {
        let mut a = AlgebraElement::zero();
        for w in &basis {
            if rng.gen_bool(0.5) {
                a.add_term(*w, field.int(rng.gen_range(-3..=3)));
            }
        }
        a
    };
    for _ in 0..8 {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        for i in Side::BOTH {
            checks += 2;
            if alg.weyl_action(i, &alg.weyl_action(i, &a)?)? != a {
                failures.push(format!("n={n}: s_{} not an involution", i.number()));
            }
            let ab = alg.weyl_action(i, &alg.mul(&a, &b)?)?;
            let sa_sb = alg.mul(&alg.weyl_action(i, &a)?, &alg.weyl_action(i, &b)?)?;
            if ab != sa_sb {
                failures.push(format!("n={n}: s_{} not multiplicative", i.number()));
            }
        }
    }
    // Grassmannian subalgebras are closed
    for i in Side::BOTH {
        let sub = alg.grassmannian_basis(i);
        for u in &sub {
            for v in &sub {
                checks += 1;
                if table[&(*u, *v)].terms().any(|(w, _)| !sub.contains(w)) {
                    failures.push(format!("n={n}: B^({}) not closed at ({u}, {v})", i.number()));
                }
            }
        }
    }
    Ok((checks, failures))
}

pub fn algebra() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut all = Vec::new();
    for n in 2..=8 {
        let (checks, failures) = algebra_laws(n, SUITE_SEED)?;
        rows.push(json!({"n": n, "checks": checks, "failures": failures}));
        all.extend(failures);
    }
    let summary = match all.first() {
        None => "associativity, commutativity, positivity, divided powers, coinvariant relations for n <= 8".into(),
        Some(f) => format!("{} failures, first: {f}", all.len()),
    };
    Ok(SuiteOutcome::new("algebra", all.is_empty(), summary, json!(rows)))
}

fn weightings(alg: &UniversalAlgebra) -> Vec<(String, ConcaveWeighting)> {
    vec![
        ("phi".into(), ConcaveWeighting::full(alg)),
        ("phi_1".into(), ConcaveWeighting::side(alg, Side::One)),
        ("phi_2".into(), ConcaveWeighting::side(alg, Side::Two)),
    ]
}

pub fn concavity() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut first = None;
    for n in 2..=12 {
        let field = Field::cyclotomic(n)?;
        let alg = UniversalAlgebra::new(&field);
        for (name, wt) in weightings(&alg) {
            let r = concavity_audit(&wt)?;
            let ok = r.passed && r.matches_theorem;
            if !ok && first.is_none() {
                first = Some(format!("n={n} {name}"));
            }
            passed &= ok;
            rows.push(json!({"n": n, "weighting": name, "checked": r.checked, "equalities": r.equality_set.len(), "passed": ok}));
        }
        let s = superadditivity_audit(&field, n as usize)?;
        if !s.passed() && first.is_none() {
            first = Some(format!("n={n} superadditivity {:?}", s.failures[0]));
        }
        passed &= s.passed();
        rows.push(json!({"n": n, "superadditivity": s.checked, "failures": s.failures.len()}));
    }
    let summary = first.unwrap_or_else(|| "φ, φ_1, φ_2 concave with the predicted equality sets; F, G superadditive, n <= 12".into());
    Ok(SuiteOutcome::new("concavity", passed, summary, json!(rows)))
}

pub fn limits() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut first = None;
    for n in 2..=12 {
        let alg = UniversalAlgebra::new(&Field::cyclotomic(n)?);
        for (name, wt) in weightings(&alg) {
            let r = limit_agreement(&wt)?;
            if !r.passed() && first.is_none() {
                first = Some(format!("n={n} {name}: {:?}", r.mismatches[0]));
            }
            passed &= r.passed();
            rows.push(json!({"n": n, "weighting": name, "pairs": r.pairs_checked, "mismatches": r.mismatches.len()}));
        }
    }
    let summary = first.unwrap_or_else(|| "τ → ∞ tables equal the flag and Grassmannian pre-ring tables, n <= 12".into());
    Ok(SuiteOutcome::new("limits", passed, summary, json!(rows)))
}

fn equal_row(label: &str, n: u32, m: usize, a: &InequalitySystem, b: &InequalitySystem, r: &ConeEqualReport) -> Value {
    json!({
        "check": label,
        "n": n,
        "m": m,
        "sizes": [a.len(), b.len()],
        "equal": r.equal(),
        "first_failure": r.first_failure().map(|e| e.to_json()),
    })
}

pub fn cones() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut first = None;
    let mut record = |row: Value, ok: bool, label: String| {
        if !ok && first.is_none() {
            first = Some(label);
        }
        passed &= ok;
        rows.push(row);
    };
    for n in 2..=6 {
        for m in [3usize, 4] {
            let wti = gen_wti(n, m)?;
            record(json!({"check": "wti forms", "n": n, "m": m, "agree": wti.forms_agree}), wti.forms_agree, format!("WTI forms n={n} m={m}"));
            let sti = gen_sti(n, m, DEFAULT_BUDGET)?;
            let subset = wti.system.scalar_set().is_subset(&sti.scalar_set());
            record(json!({"check": "wti in sti", "n": n, "m": m, "subset": subset}), subset, format!("WTI ⊆ STI n={n} m={m}"));
            let r = cone_equal(&wti.system, &sti)?;
            record(equal_row("wti = sti", n, m, &wti.system, &sti, &r), r.equal(), format!("WTI = STI n={n} m={m}"));
            let target = gen_wti(n, m + 1)?.system;
            for (label, kind) in [
                ("theta K(A_t)", KmAlgebra::At),
                ("theta K(gr A_t)", KmAlgebra::GrAt),
                ("theta K(B)", KmAlgebra::BIntersection),
                ("theta K(gr B)", KmAlgebra::GrBIntersection),
            ] {
                let km = gen_km(kind, n, m, DEFAULT_BUDGET)?.pushforward_theta();
                let r = cone_equal(&km, &target)?;
                record(equal_row(label, n, m, &km, &target, &r), r.equal(), format!("{label} n={n} m={m}"));
            }
            let bk = gen_bk(n, m, DEFAULT_BUDGET)?.pushforward_theta();
            let same = bk.scalar_set() == target.scalar_set();
            record(json!({"check": "theta BK = WTI scalar set", "n": n, "m": m, "equal": same}), same, format!("BK set n={n} m={m}"));
        }
    }
    let summary = first.map_or_else(
        || format!("{} certified checks over n in 2..=6, m in {{3, 4}}", rows.len()),
        |f| format!("failed: {f}"),
    );
    Ok(SuiteOutcome::new("cones", passed, summary, json!(rows)))
}

pub fn irredundancy() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut first = None;
    for n in 2..=6 {
        for m in [3usize, 4] {
            let wti = gen_wti(n, m)?;
            let audit = redundancy_audit(&wti.system)?;
            let redundant: Vec<Value> =
                audit.iter().filter(|e| e.status != AuditStatus::Facet).map(|e| e.to_json()).collect();
            if !redundant.is_empty() && first.is_none() {
                first = Some(format!("n={n} m={m}: {}", audit.iter().find(|e| e.status != AuditStatus::Facet).unwrap().tag));
            }
            passed &= redundant.is_empty();
            rows.push(json!({
                "n": n,
                "m": m,
                "generated": wti.tuple_count,
                "deduplicated": wti.system.len(),
                "facets": audit.len() - redundant.len(),
                "redundant": redundant,
            }));
        }
    }
    let summary = first.map_or_else(
        || "every deduplicated WTI inequality is a facet, n <= 6, m <= 4".into(),
        |f| format!("redundant inequality at {f}"),
    );
    Ok(SuiteOutcome::new("irredundancy", passed, summary, json!(rows)))
}

pub fn classical() -> Result<SuiteOutcome> {
    let wti = gen_wti(2, 3)?.system;
    let oracle = a1_oracle(3)?;
    let r = cone_equal(&wti, &oracle)?;
    let bad = vec![DominantWeight::ints(3, 0), DominantWeight::ints(1, 0), DominantWeight::ints(1, 0)];
    let outside = !is_member(&bad, &wti)?.member;
    let passed = r.equal() && outside;
    let artifact = json!({"cone_equal": r.to_json(), "triangle_violation_rejected": outside, "wti": wti.to_json()});
    Ok(SuiteOutcome::new("classical", passed, "n = 2, m = 3 cone equals two A1 triangle cones".into(), artifact))
}

/// Seeded base graph: an apartment, a few random pods and an antipodal triple.
pub fn census_base(n: u32, seed: u64) -> Result<ChamberGraph> {
    let mut g = ChamberGraph::apartment(n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..2 {
        let c = g.chambers();
        let a = c[rng.gen_range(0..2 * n as usize)];
        let b = c.iter().copied().find(|b| g.antipodal(&a, b)).expect("apartment has an opposite chamber");
        let r1 = rng.gen_range(1..n);
        let r2 = rng.gen_range(n - r1..n);
        let t = if rng.gen_bool(0.5) { Side::One } else { Side::Two };
        attach_mpod(&mut g, &[a, b], &[r1, r2], t)?;
    }
    find_antipodal_tuple(&mut g, 3)?;
    Ok(g)
}

/// All pairwise antipodal pairs and triples among the chambers of `g`.
pub fn antipodal_pairs_and_triples(g: &ChamberGraph) -> (Vec<[usize; 2]>, Vec<[usize; 3]>) {
    let chambers = g.chambers();
    let k = chambers.len();
    let anti: Vec<Vec<bool>> = chambers
        .iter()
        .map(|a| {
            let d = g.chamber_distances(a);
            chambers.iter().map(|b| d[b.one].min(d[b.two]) == g.n() - 1).collect()
        })
        .collect();
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !anti[i][j] {
                continue;
            }
            pairs.push([i, j]);
            for l in j + 1..k {
                if anti[i][l] && anti[j][l] {
                    triples.push([i, j, l]);
                }
            }
        }
    }
    (pairs, triples)
}

pub fn census() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut first = None;
    for n in 3..=5 {
        for seed in 0..2u64 {
            let g = census_base(n, SUITE_SEED + seed)?;
            let girth_ok = girth_at_least(&g, 2 * n);
            passed &= girth_ok;
            let chambers = g.chambers();
            let (pairs, triples) = antipodal_pairs_and_triples(&g);
            let tuples: Vec<Vec<usize>> =
                pairs.iter().map(|p| p.to_vec()).chain(triples.iter().map(|t| t.to_vec())).collect();
            let (mut compared, mut mismatched, mut lemma_pairs) = (0, 0, 0);
            for t in &tuples {
                let sub: Vec<_> = t.iter().map(|&i| chambers[i]).collect();
                for c in census_against_prering(&g, &sub, 3)? {
                    compared += 1;
                    if !c.matched {
                        mismatched += 1;
                        if first.is_none() {
                            first = Some(format!("n={n} tuple {t:?} radii {:?}: {:?}", c.radii, c.report.counts));
                        }
                    }
                    // two chambers, r1 + r2 = n − 1: exactly one vertex of each type
                    if sub.len() == 2 && c.radii.iter().sum::<u32>() == n - 1 {
                        lemma_pairs += 1;
                        if c.report.counts.iter().any(|x| *x != [1, 1]) {
                            mismatched += 1;
                        }
                    }
                }
            }
            passed &= mismatched == 0;
            rows.push(json!({
                "n": n,
                "seed": SUITE_SEED + seed,
                "vertices": g.vertex_count(),
                "pairs": pairs.len(),
                "triples": triples.len(),
                "comparisons": compared,
                "two_point_checks": lemma_pairs,
                "mismatches": mismatched,
                "girth_ok": girth_ok,
            }));
        }
    }
    let summary = first.map_or_else(
        || "ball-intersection classes match pre-ring coefficients; girth >= 2n throughout".into(),
        |f| format!("mismatch at {f}"),
    );
    Ok(SuiteOutcome::new("census", passed, summary, json!(rows)))
}

fn random_weight(rng: &mut ChaCha8Rng) -> DominantWeight {
    let den = rng.gen_range(1..=4i64);
    DominantWeight::new(
        BigRational::new(rng.gen_range(1..=12i64).into(), den.into()),
        BigRational::new(rng.gen_range(1..=12i64).into(), den.into()),
    )
}

/// Seeded points strictly inside the cone and points violating exactly one
/// scalar inequality.
pub fn sample_points(n: u32, m: usize, count: usize, seed: u64) -> Result<(Vec<Vec<DominantWeight>>, Vec<Vec<DominantWeight>>)> {
    let wti = gen_wti(n, m)?.system;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    let mut attempts = 0;
    while (inside.len() < count || outside.len() < count) && attempts < 200_000 {
        attempts += 1;
        let p: Vec<DominantWeight> = (0..m).map(|_| random_weight(&mut rng)).collect();
        let r = is_member(&p, &wti)?;
        if r.member && r.tight == 0 && inside.len() < count {
            inside.push(p);
        } else if r.violations == 1 && outside.len() < count {
            outside.push(p);
        }
    }
    Ok((inside, outside))
}

pub fn semistability() -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut first = None;
    for n in 2..=4 {
        let (inside, outside) = sample_points(n, 3, 25, SUITE_SEED + n as u64)?;
        let enough = inside.len() == 25 && outside.len() == 25;
        passed &= enough;
        let (mut stable, mut witnessed) = (0, 0);
        for (k, p) in inside.iter().enumerate() {
            let r = construct_semistable(n, p, SUITE_SEED + k as u64, 3)?;
            if r.member && r.semistable() {
                stable += 1;
            } else if first.is_none() {
                first = Some(format!("n={n}: interior point {k} has a negative slope"));
            }
        }
        for (k, p) in outside.iter().enumerate() {
            let r = construct_semistable(n, p, SUITE_SEED + k as u64, 3)?;
            if !r.member && r.witness.as_ref().is_some_and(|w| w.1.sign() < 0) {
                witnessed += 1;
            } else if first.is_none() {
                first = Some(format!("n={n}: no negative witness for point {k}"));
            }
        }
        passed &= stable == inside.len() && witnessed == outside.len();
        rows.push(json!({
            "n": n,
            "interior": inside.len(),
            "semistable": stable,
            "violating": outside.len(),
            "negative_witnesses": witnessed,
        }));
    }
    let summary = first.map_or_else(
        || "interior points semistable at every growth round; violators have negative-slope witnesses".into(),
        |f| format!("failed: {f}"),
    );
    Ok(SuiteOutcome::new("semistability", passed, summary, json!(rows)))
}

/// Runs each suite twice and compares artifacts byte for byte.
pub fn determinism(names: &[&str]) -> Result<SuiteOutcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    for name in names {
        let a = run_suite(name)?.expect("suite");
        let b = run_suite(name)?.expect("suite");
        let same = a.artifact_bytes() == b.artifact_bytes();
        passed &= same;
        rows.push(json!({"suite": name, "identical": same, "bytes": a.artifact_bytes().len()}));
    }
    Ok(determinism_outcome(passed, rows))
}

/// Compares artifacts of two runs already in hand.
pub fn determinism_from_runs(first: &[SuiteOutcome], second: &[SuiteOutcome]) -> SuiteOutcome {
    let mut rows = Vec::new();
    let mut passed = first.len() == second.len();
    for (a, b) in first.iter().zip(second) {
        let same = a.name == b.name && a.artifact_bytes() == b.artifact_bytes();
        passed &= same;
        rows.push(json!({"suite": a.name, "identical": same, "bytes": a.artifact_bytes().len()}));
    }
    determinism_outcome(passed, rows)
}

fn determinism_outcome(passed: bool, rows: Vec<Value>) -> SuiteOutcome {
    let summary = format!("{} suites rerun with byte-identical artifacts", rows.len());
    SuiteOutcome::new("determinism", passed, summary, json!(rows))
}
