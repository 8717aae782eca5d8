//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! straight to stdout so the verdicts show up even when output is captured.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;
use loopsmith::catalog;
use loopsmith::halfmorph::{self, make_half_map, HalfKind};
use loopsmith::inner::{self, InnerGenerator};
use loopsmith::subloops;
use loopsmith::suites::{self, Subject, SuiteResult, DEFAULT_MAX_HALF_ORDER};
use loopsmith::{LoopTable, Perm};

fn report(criterion: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let line = format!("criterion {criterion:>2}: {verdict}  {detail}\n");
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn finish(criterion: u32, failures: Vec<String>, detail: String) {
    report(criterion, failures.is_empty(), &detail);
    assert!(failures.is_empty(), "criterion {criterion}: {failures:#?}");
}

fn require(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn time_limit(failures: &mut Vec<String>, start: Instant, limit: Duration) -> Duration {
    let elapsed = start.elapsed();
    require(
        failures,
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    );
    elapsed
}

fn catalog_subjects(filter: impl Fn(&LoopTable) -> bool) -> Vec<Subject> {
    catalog::all()
        .into_iter()
        .filter(|e| filter(&e.table))
        .map(|e| Subject::new(e.table, DEFAULT_MAX_HALF_ORDER))
        .collect()
}

fn suite_failures(results: &[SuiteResult]) -> Vec<String> {
    results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            format!(
                "{}: {} violations over {} instances, carriers {:?}, e.g. {:?}",
                r.name, r.violation_count, r.instances, r.carriers, r.violations
            )
        })
        .collect()
}

fn suite_summary(results: &[SuiteResult]) -> String {
    results
        .iter()
        .map(|r| {
            format!(
                "{} {}/{}",
                r.name,
                r.instances - r.violation_count,
                r.instances
            )
        })
        .join(", ")
}

#[test]
fn criterion_01_q1_golden() {
    let start = Instant::now();
    let mut f = Vec::new();
    let q1 = Arc::new(catalog::q1());
    require(&mut f, q1.order() == 16, "order");
    let m = q1.moufang();
    require(&mut f, m.left && m.right && m.middle, "Moufang identities");
    require(&mut f, inner::is_left_automorphic(&q1), "left automorphic");
    let witness = inner::non_automorphic_witness(&q1, false);
    require(
        &mut f,
        witness == Some(InnerGenerator::T(2)),
        format!("witness {witness:?}"),
    );
    let phi = Perm::parse_cycles(16, "(5,8)").unwrap();
    match halfmorph::HalfMap::on(&q1, phi) {
        Ok(map) => {
            require(&mut f, map.classify().kind == HalfKind::ProperHalf, "class");
            let p27 = map.pair(2, 7);
            require(
                &mut f,
                (p27.image, p27.hom, p27.anti) == (8, 5, 8),
                format!("{p27:?}"),
            );
            let p39 = map.pair(3, 9);
            require(
                &mut f,
                (p39.image, p39.hom, p39.anti) == (15, 15, 11),
                format!("{p39:?}"),
            );
        }
        Err(e) => f.push(format!("(5,8) rejected: {e}")),
    }
    let elapsed = time_limit(&mut f, start, Duration::from_secs(1));
    let w = witness.map_or("none".to_string(), |g| g.to_string());
    finish(1, f, format!("Q1 Moufang, left automorphic, not automorphic (witness {w}), (5,8) ProperHalf [{elapsed:.2?}]"));
}

#[test]
fn criterion_02_q2_golden() {
    let start = Instant::now();
    let mut f = Vec::new();
    let q2 = Arc::new(catalog::q2());
    require(&mut f, q2.order() == 8, "order");
    require(&mut f, inner::is_automorphic(&q2), "automorphic");
    require(&mut f, !q2.is_moufang(), "not Moufang");
    match make_half_map(q2.clone(), q2.clone(), &[1, 2, 5, 6, 3, 4, 8, 7]) {
        Ok(map) => {
            require(
                &mut f,
                map.perm().to_string() == "(3,5)(4,6)(7,8)",
                "cycle form",
            );
            require(&mut f, map.classify().kind == HalfKind::ProperHalf, "class");
            let p46 = map.pair(4, 6);
            require(
                &mut f,
                (p46.image, p46.hom, p46.anti) == (8, 8, 7),
                format!("{p46:?}"),
            );
            let p48 = map.pair(4, 8);
            require(
                &mut f,
                (p48.image, p48.anti, p48.hom) == (4, 4, 3),
                format!("{p48:?}"),
            );
        }
        Err(e) => f.push(format!("(3,5)(4,6)(7,8) rejected: {e}")),
    }
    let elapsed = time_limit(&mut f, start, Duration::from_secs(1));
    finish(
        2,
        f,
        format!("Q2 automorphic, not Moufang, (3,5)(4,6)(7,8) ProperHalf [{elapsed:.2?}]"),
    );
}

#[test]
fn criterion_03_groups_and_automorphic_moufang_have_no_proper_half_maps() {
    let start = Instant::now();
    let mut f = Vec::new();
    let mut checked = Vec::new();
    for entry in catalog::all() {
        let t = &entry.table;
        let is_group = t.is_associative() && t.order() <= 16;
        let automorphic_moufang = t.is_moufang() && inner::is_automorphic(t);
        if !is_group && !automorphic_moufang {
            continue;
        }
        let l = Arc::new(entry.table);
        match halfmorph::verify_main_theorem(&l) {
            Ok(r) => {
                require(&mut f, r.complete, format!("{}: incomplete", entry.key));
                require(
                    &mut f,
                    r.census.proper == 0,
                    format!("{}: {:?}", entry.key, r.census),
                );
            }
            Err(e) => f.push(format!("{}: {e}", entry.key)),
        }
        checked.push(entry.key);
    }
    for key in (1..=16)
        .map(|n| format!("Z{n}"))
        .chain(["D6", "D8", "D10", "D12", "D14", "D16", "Q8", "S3"].map(String::from))
    {
        require(&mut f, checked.contains(&key), format!("{key} not covered"));
    }
    let elapsed = time_limit(&mut f, start, Duration::from_secs(300));
    finish(
        3,
        f,
        format!(
            "{} loops, zero proper half-automorphisms [{elapsed:.2?}]",
            checked.len()
        ),
    );
}

fn brute_force(l: &Arc<LoopTable>) -> BTreeSet<Vec<usize>> {
    let n = l.order();
    let mut out = BTreeSet::new();
    for rest in (2..=n).permutations(n - 1) {
        let mut tau = vec![0, 1];
        tau.extend(rest);
        let ok = (1..=n).all(|x| {
            (1..=n).all(|y| {
                let image = tau[l.mul(x, y)];
                image == l.mul(tau[x], tau[y]) || image == l.mul(tau[y], tau[x])
            })
        });
        if ok {
            out.insert(tau[1..].to_vec());
        }
    }
    out
}

#[test]
fn criterion_04_enumerator_matches_brute_force() {
    let start = Instant::now();
    let mut f = Vec::new();
    let mut count = 0;
    for entry in catalog::all().into_iter().filter(|e| e.table.order() <= 8) {
        let l = Arc::new(entry.table);
        let fast: BTreeSet<Vec<usize>> = halfmorph::enumerate_half_automorphisms(&l, None)
            .perms()
            .iter()
            .map(|p| p.images().to_vec())
            .collect();
        require(
            &mut f,
            fast == brute_force(&l),
            format!("{}: sets differ", entry.key),
        );
        count += 1;
    }
    let elapsed = time_limit(&mut f, start, Duration::from_secs(60));
    finish(
        4,
        f,
        format!("{count} loops of order <= 8, exact set equality [{elapsed:.2?}]"),
    );
}

#[test]
fn criterion_05_half_maps_form_a_group() {
    let subjects = catalog_subjects(|_| true);
    let r = suites::half_maps_form_group(&subjects);
    let detail = format!("{} loops closed under composition and inverse", r.instances);
    finish(5, suite_failures(&[r]), detail);
}

#[test]
fn criterion_06_semi_isomorphism_sweep() {
    let subjects = catalog_subjects(LoopTable::is_moufang);
    let r = suites::semi_isomorphism(&subjects);
    let detail = format!(
        "{} half-automorphisms over {} Moufang loops",
        r.instances,
        r.carriers.len()
    );
    finish(6, suite_failures(&[r]), detail);
}

#[test]
fn criterion_07_gg_triples_exist() {
    let subjects = catalog_subjects(LoopTable::is_moufang);
    let r = suites::gg_triples_exist(&subjects);
    let mut f = suite_failures(std::slice::from_ref(&r));
    require(
        &mut f,
        r.carriers.iter().any(|c| c == "Q1"),
        "Q1 not a carrier",
    );
    let detail = format!(
        "{} proper maps on {:?}, all with GG-triples",
        r.instances, r.carriers
    );
    finish(7, f, detail);
}

#[test]
fn criterion_08_bruck_suites() {
    let start = Instant::now();
    let subjects = catalog_subjects(|t| t.is_moufang());
    let results = vec![
        suites::bruck_commutators_nuclear(&subjects),
        suites::bruck_commutator_expansion(&subjects),
        suites::bruck_nucleus_absorption(&subjects),
        suites::bruck_cubes_nuclear(&subjects),
        suites::bruck_associators_central(&subjects),
    ];
    let mut f = suite_failures(&results);
    let left: &SuiteResult = &results[0];
    require(
        &mut f,
        left.carriers.iter().any(|c| c == "Q1"),
        "Q1 not a left automorphic carrier",
    );
    let elapsed = time_limit(&mut f, start, Duration::from_secs(120));
    finish(8, f, format!("{} [{elapsed:.2?}]", suite_summary(&results)));
}

#[test]
fn criterion_09_structural_suites() {
    let subjects = catalog_subjects(|_| true);
    let results = vec![
        suites::nuclei_coincide(&subjects),
        suites::moufang_flags_agree(&subjects),
        suites::lagrange(&subjects),
        suites::quotient_homomorphism(&subjects),
        suites::sylow_nucleus_factorization(&subjects),
    ];
    finish(9, suite_failures(&results), suite_summary(&results));
}

#[test]
fn criterion_10_induced_map_on_q1_is_trivial() {
    let mut f = Vec::new();
    let q1 = Arc::new(catalog::q1());
    let a = subloops::associator_subloop(&q1);
    require(
        &mut f,
        a.elements() == [1, 4],
        format!("associator subloop {:?}", a.elements()),
    );
    let phi = halfmorph::HalfMap::on(&q1, Perm::parse_cycles(16, "(5,8)").unwrap()).unwrap();
    let detail = match phi.induced_on_quotient() {
        Ok(induced) => {
            let class = induced.map.classify();
            require(
                &mut f,
                induced.domain_quotient.table.order() == 8,
                "quotient order",
            );
            require(
                &mut f,
                induced.domain_quotient.table.is_associative(),
                "quotient not a group",
            );
            require(&mut f, class.is_trivial(), format!("{class:?}"));
            format!(
                "induced map {} on Q1/(Q1,Q1,Q1) is {}",
                induced.map, class.kind
            )
        }
        Err(e) => {
            f.push(e.to_string());
            "no induced map".into()
        }
    };
    finish(10, f, detail);
}
