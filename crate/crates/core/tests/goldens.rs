//! Golden values for the two embedded example loops and the constructed
//! catalog, each checked against a small independent oracle where the value
//! is not read straight off a table.

use std::collections::BTreeSet;
use std::sync::Arc;

use loopsmith::catalog::{self, ExpectedValue, Provenance};
use loopsmith::halfmorph::{self, make_half_map, HalfKind, HalfMap};
use loopsmith::inner;
use loopsmith::subloops;
use loopsmith::{LoopTable, Perm};

const Q1_RETYPED: [&str; 16] = [
    "1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16",
    "2 4 8 6 3 1 5 7 14 9 16 10 11 12 13 15",
    "3 5 4 7 6 8 1 2 15 13 9 11 14 16 12 10",
    "4 6 7 1 8 2 3 5 12 14 15 9 16 10 11 13",
    "5 7 2 8 4 3 6 1 13 11 14 16 12 15 10 9",
    "6 1 5 2 7 4 8 3 10 12 13 14 15 9 16 11",
    "7 8 1 3 2 5 4 6 11 16 12 15 10 13 9 14",
    "8 3 6 5 1 7 2 4 16 15 10 13 9 11 14 12",
    "9 10 11 12 16 14 15 13 4 6 7 1 5 2 3 8",
    "10 12 16 14 15 9 13 11 2 4 5 6 3 1 8 7",
    "11 13 12 15 10 16 9 14 3 8 4 7 6 5 1 2",
    "12 14 15 9 13 10 11 16 1 2 3 4 8 6 7 5",
    "13 15 10 16 9 11 14 12 8 7 2 5 4 3 6 1",
    "14 9 13 10 11 12 16 15 6 1 8 2 7 4 5 3",
    "15 16 9 11 14 13 12 10 7 5 1 3 2 8 4 6",
    "16 11 14 13 12 15 10 9 5 3 6 8 1 7 2 4",
];

const Q2_RETYPED: [&str; 8] = [
    "1 2 3 4 5 6 7 8",
    "2 1 4 3 6 5 8 7",
    "3 4 1 2 7 8 6 5",
    "4 3 2 1 8 7 5 6",
    "5 6 8 7 1 2 4 3",
    "6 5 7 8 2 1 3 4",
    "7 8 5 6 3 4 2 1",
    "8 7 6 5 4 3 1 2",
];

fn parse_rows(rows: &[&str]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| r.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect()
}

/// Position-weighted sum, sensitive to swapped cells.
fn checksum(rows: &[Vec<usize>]) -> usize {
    let n = rows.len();
    rows.iter()
        .enumerate()
        .flat_map(|(x, r)| r.iter().enumerate().map(move |(y, &v)| (x * n + y) * v))
        .sum()
}

fn q1() -> Arc<LoopTable> {
    Arc::new(catalog::q1())
}

fn q2() -> Arc<LoopTable> {
    Arc::new(catalog::q2())
}

fn phi_q1() -> HalfMap {
    HalfMap::on(&q1(), Perm::parse_cycles(16, "(5,8)").unwrap()).unwrap()
}

fn phi_q2() -> HalfMap {
    HalfMap::on(&q2(), Perm::parse_cycles(8, "(3,5)(4,6)(7,8)").unwrap()).unwrap()
}

#[test]
fn transcriptions_match_retyped_copies() {
    let q1_rows = parse_rows(&Q1_RETYPED);
    assert_eq!(catalog::q1().rows(), q1_rows);
    assert_eq!(checksum(&catalog::q1().rows()), 277_440);
    assert_eq!(checksum(&q1_rows), 277_440);
    let q2_rows = parse_rows(&Q2_RETYPED);
    assert_eq!(catalog::q2().rows(), q2_rows);
    assert_eq!(checksum(&catalog::q2().rows()), 9_072);
}

#[test]
fn table_lookups() {
    let (q1, q2) = (q1(), q2());
    assert_eq!(q1.mul(2, 7), 5);
    assert_eq!(q1.mul(1, 9), 9);
    assert_eq!(q2.mul(4, 6), 7);
    assert_eq!(q1.ldiv(2, 5), 7);
    assert_eq!(q2.ldiv(4, 8), 5);
    assert_eq!(q1.rdiv(5, 7), 2);
    assert_eq!(q2.rdiv(7, 6), 4);
    for y in q1.elements() {
        assert_eq!(q1.ldiv(1, y), y);
        assert_eq!(q1.rdiv(y, 1), y);
    }
    assert_eq!(q2.left_inverse(2), 2);
    assert_eq!(q1.right_inverse(2), 6);
    assert_eq!(q1.left_inverse(1), 1);
    let o = q2.element_order(2);
    assert_eq!((o.order, o.ambiguous), (2, false));
    assert_eq!(q1.element_order(1).order, 1);
}

#[test]
fn element_orders_divide_generated_subloop() {
    let q1 = q1();
    for x in q1.elements() {
        let k = q1.element_order(x).order;
        let h = subloops::generate_subloop(&q1, &[x]);
        assert_eq!(h.order() % k, 0, "element {x}");
    }
}

#[test]
fn validation_reports() {
    let report = loopsmith::table::validate(&catalog::q1().rows());
    assert!(report.is_loop());
    assert_eq!(report.identity_index, Some(1));
    assert!(loopsmith::table::validate(&[vec![1, 2], vec![2, 1]]).is_loop());
    let bad = loopsmith::table::validate(&[vec![1, 2], vec![2, 2]]);
    assert!(!bad.is_quasigroup);
    assert_eq!(bad.violations[0].cells[0].1, 2);
}

#[test]
fn q1_structure() {
    let q1 = q1();
    assert!(q1.is_moufang());
    assert!(q1.is_diassociative());
    assert!(!q1.is_associative());
    assert!(!q1.is_commutative());
    assert!(inner::is_left_automorphic(&q1));
    assert!(!inner::is_automorphic(&q1));
    assert!(inner::moufang_l_iff_r_check(&q1).unwrap());
    let c = q1.commutator(2, 7);
    assert_ne!(c, 1);
    // [2,7] = 2⁻¹7⁻¹·2·7, computed through the inverse table.
    let oracle = q1.mul(q1.mul(q1.mul(6, 3), 2), 7);
    assert_eq!(c, oracle);
    assert_eq!(subloops::generate_subloop(&q1, &[2, 3, 9]).order(), 16);
    let a = subloops::associator_subloop(&q1);
    assert_eq!(a.elements(), [1, 4]);
    assert!(a.is_normal());
    let quotient = subloops::quotient(&q1, &a).unwrap();
    assert!(quotient.table.is_associative());
    assert_eq!(subloops::commutator_subloop(&q1).elements(), [1, 4]);
    let n = subloops::nucleus(&q1).unwrap();
    let center = subloops::center(&q1).unwrap();
    assert!(center.contains(1) && center.is_subset_of(&n));
    assert_eq!(subloops::sylow_subloop(&q1, 2).unwrap().best.order(), 16);
    assert_eq!(
        subloops::hall_3prime_subgroup(&q1).unwrap().closure.order(),
        16
    );
    let l23 = inner::inner_l(&q1, 2, 3);
    assert_eq!(l23.apply(1), 1);
    for z in q1.elements() {
        assert_eq!(l23.apply(z), q1.ldiv(q1.mul(2, 3), q1.mul(2, q1.mul(3, z))));
    }
    let row2 = inner::left_translation(&q1, 2);
    assert_eq!(&row2.images()[..3], &[2, 4, 8]);
}

#[test]
fn q2_structure() {
    let q2 = q2();
    assert!(inner::is_automorphic(&q2));
    assert!(!q2.is_moufang());
    let m = q2.moufang();
    assert!(!m.left && !m.right && !m.middle);
    // Q2 is not associative: (3·3)·5 = 5 but 3·(3·5) = 6.
    assert!(!q2.is_associative());
    assert_eq!(q2.mul(q2.mul(3, 3), 5), 5);
    assert_eq!(q2.mul(3, q2.mul(3, 5)), 6);
    assert_eq!(q2.associator(3, 3, 5), 2);
    assert_eq!(subloops::associator_subloop(&q2).elements(), [1, 2]);
    assert_eq!(subloops::generate_subloop(&q2, &[2]).elements(), [1, 2]);
    let scan: Vec<usize> = q2
        .elements()
        .filter(|&x| q2.elements().all(|a| q2.mul(x, a) == q2.mul(a, x)))
        .collect();
    assert_eq!(scan, [1, 2]);
    assert_eq!(subloops::commutant(&q2).elements, scan);
    let column5 = inner::right_translation(&q2, 5);
    let oracle: Vec<usize> = q2.elements().map(|x| q2.mul(x, 5)).collect();
    assert_eq!(column5.images(), oracle);
    let phi = Perm::parse_cycles(8, "(3,5)(4,6)(7,8)").unwrap();
    assert!(!inner::is_automorphism(&q2, &phi));
    let inn = inner::inner_mapping_group(&q2, inner::DEFAULT_CLOSURE_CAP);
    let elements = inn.elements.unwrap();
    assert!(elements.iter().all(|p| inner::is_automorphism(&q2, p)));
    assert_eq!(inn.order, Some(elements.len()));
}

#[test]
fn q1_half_automorphism() {
    let phi = phi_q1();
    let class = phi.classify();
    assert_eq!(class.kind, HalfKind::ProperHalf);
    assert_eq!(class.witness_hom, Some((2, 9)));
    assert_eq!(class.witness_anti, Some((2, 3)));
    let p = phi.pair(2, 7);
    assert!(p.anti_only());
    assert_eq!((p.image, p.anti, p.hom), (8, 8, 5));
    let p = phi.pair(3, 9);
    assert!(p.hom_only());
    assert_eq!((p.image, p.hom, p.anti), (15, 15, 11));
    assert!(phi.is_semi_isomorphism());
    assert!(!phi.find_gg_triples().is_empty());
    assert_eq!(phi.inverse().unwrap().perm(), phi.perm());
    let d = phi.d_set().unwrap();
    let oracle: BTreeSet<usize> = (1..=16)
        .filter(|&g| {
            (1..=16).any(|h| {
                let image = phi.apply(q1_mul(g, h));
                image == q1_mul(phi.apply(h), phi.apply(g))
                    && image != q1_mul(phi.apply(g), phi.apply(h))
            })
        })
        .collect();
    assert_eq!(d, oracle);
    let induced = phi.induced_on_quotient().unwrap();
    assert!(induced.map.classify().is_trivial());
    let report = halfmorph::verify_main_theorem(&q1()).unwrap();
    assert!(!report.hypotheses_hold());
    assert!(report.census.proper > 0);
}

fn q1_mul(x: usize, y: usize) -> usize {
    parse_rows(&Q1_RETYPED)[x - 1][y - 1]
}

#[test]
fn q2_half_automorphism() {
    let phi = phi_q2();
    let class = phi.classify();
    assert_eq!(class.kind, HalfKind::ProperHalf);
    let p = phi.pair(4, 6);
    assert!(p.hom_only());
    assert_eq!((p.image, p.hom, p.anti), (8, 8, 7));
    let p = phi.pair(4, 8);
    assert!(p.anti_only());
    assert_eq!((p.image, p.anti, p.hom), (4, 4, 3));
    assert!(phi.d_set().unwrap().contains(&4));
    let induced = phi.induced_on_quotient().unwrap();
    assert_eq!(induced.domain_quotient.table.order(), 4);
    assert!(induced.map.classify().is_trivial());
    let report = halfmorph::verify_main_theorem(&q2()).unwrap();
    assert!(report.is_automorphic && !report.is_moufang);
    assert!(report.census.proper > 0);
    let maps = halfmorph::enumerate_half_automorphisms(&q2(), None);
    assert!(halfmorph::half_maps_form_group_check(&maps).unwrap());
}

#[test]
fn trivial_half_maps() {
    for key in ["Z1", "Z4", "S3", "Q8"] {
        let l = Arc::new(catalog::builtin(key).unwrap().table);
        let id = HalfMap::identity(&l);
        assert!(id.classify().is_trivial());
        assert!(id.is_semi_isomorphism());
        assert!(id.find_gg_triples().is_empty());
        assert!(id.d_set().unwrap().is_empty());
        assert!(id.inverse().unwrap().perm().is_identity());
        assert!(id.induced_on_quotient().unwrap().map.perm().is_identity());
    }
    let z1 = Arc::new(catalog::make_cyclic(1));
    let e = halfmorph::enumerate_half_automorphisms(&z1, None);
    assert_eq!(e.maps.len(), 1);
    let z2 = Arc::new(catalog::make_cyclic(2));
    let e = halfmorph::enumerate_half_automorphisms(&z2, None);
    assert!(halfmorph::half_maps_form_group_check(&e).unwrap());
    let z4 = Arc::new(catalog::make_cyclic(4));
    let e = halfmorph::enumerate_half_automorphisms(&z4, None);
    assert_eq!(e.perms().len(), 2);
    let s3 = Arc::new(catalog::make_symmetric3());
    let report = halfmorph::verify_main_theorem(&s3).unwrap();
    assert!(report.hypotheses_hold());
    assert_eq!(report.census.proper, 0);
    assert!(make_half_map(s3.clone(), s3, &[1, 2, 3, 4, 5, 6]).is_ok());
}

#[test]
fn half_automorphism_census() {
    let cases: [(&str, [usize; 5]); 8] = [
        ("S3", [12, 6, 6, 0, 0]),
        ("M(S3,2)", [216, 108, 108, 0, 0]),
        ("M(D8,2)", [384, 192, 192, 0, 0]),
        ("M(Q8,2)", [3072, 192, 192, 0, 2688]),
        ("Q2", [16, 4, 4, 0, 8]),
        ("Q1", [21504, 1344, 1344, 0, 18816]),
        ("D8", [16, 8, 8, 0, 0]),
        ("Q8", [48, 24, 24, 0, 0]),
    ];
    for (key, want) in cases {
        let l = Arc::new(catalog::builtin(key).unwrap().table);
        let c = halfmorph::enumerate_half_automorphisms(&l, None).census();
        assert_eq!([c.total, c.iso, c.anti, c.both, c.proper], want, "{key}");
    }
}

#[test]
fn anti_automorphisms_compose_to_automorphisms() {
    for key in ["S3", "Q8", "M(S3,2)", "Q1"] {
        let l = Arc::new(catalog::builtin(key).unwrap().table);
        for m in halfmorph::enumerate_half_automorphisms(&l, None).maps {
            if m.classify().kind == HalfKind::AntiIsomorphism {
                assert!(
                    m.compose_with_inversion().unwrap().is_homomorphism,
                    "{key}: {m}"
                );
            }
        }
    }
}

#[test]
fn constructed_groups() {
    let z4 = catalog::make_cyclic(4);
    assert_eq!(z4.mul(2, 2), 3);
    assert_eq!(catalog::make_cyclic(1).order(), 1);
    let s3 = catalog::make_symmetric3();
    assert!(!s3.is_commutative());
    assert_eq!(subloops::commutator_subloop(&s3).order(), 3);
    assert_eq!(subloops::commutative_nilpotency_class(&s3), None);
    assert_eq!(
        subloops::commutative_nilpotency_class(&catalog::make_dihedral(8)),
        Some(2)
    );
    assert_eq!(
        subloops::commutative_nilpotency_class(&catalog::make_cyclic(7)),
        Some(1)
    );
    let z12 = catalog::make_cyclic(12);
    assert_eq!(subloops::sylow_subloop(&z12, 2).unwrap().best.order(), 4);
    let z6 = catalog::make_cyclic(6);
    assert_eq!(subloops::sylow_subloop(&z6, 3).unwrap().best.order(), 3);
    assert_eq!(
        subloops::hall_3prime_subgroup(&z6).unwrap().closure.order(),
        2
    );
    let z9 = catalog::make_cyclic(9);
    assert_eq!(
        subloops::hall_3prime_subgroup(&z9).unwrap().closure.order(),
        1
    );
    let two = subloops::generate_subloop(&z6, &[4]);
    let three = subloops::generate_subloop(&z6, &[3]);
    assert_eq!((two.order(), three.order()), (2, 3));
    assert!(subloops::is_direct_product(&z6, &two, &three));
    let s3_two = subloops::generate_subloop(&s3, &[2]);
    let s3_three = subloops::commutator_subloop(&s3);
    assert_eq!(s3_two.order(), 2);
    assert!(!subloops::is_direct_product(&s3, &s3_two, &s3_three));
    assert!(subloops::is_direct_product(
        &s3,
        &subloops::Subloop::trivial(&s3),
        &subloops::Subloop::whole(&s3)
    ));
    assert!(inner::moufang_l_iff_r_check(&catalog::make_chein(&s3).unwrap()).unwrap());
}

#[test]
fn chein_doubling() {
    let m3 = catalog::make_chein(&catalog::make_cyclic(3)).unwrap();
    assert!(m3.is_associative());
    let ms3 = catalog::make_chein(&catalog::make_symmetric3()).unwrap();
    assert_eq!(ms3.order(), 12);
    assert!(ms3.is_moufang() && !ms3.is_associative());
    assert!(!inner::is_left_automorphic(&ms3));
    let m1 = catalog::make_chein(&catalog::make_cyclic(1)).unwrap();
    assert_eq!(m1.rows(), catalog::make_cyclic(2).rows());
    for g in [catalog::make_dihedral(8), catalog::make_quaternion8()] {
        let m = catalog::make_chein(&g).unwrap();
        assert!(inner::is_left_automorphic(&m));
        assert!(!inner::is_automorphic(&m));
    }
    assert!(catalog::make_chein(&catalog::q2()).is_err());
}

#[test]
fn catalog_entries_carry_provenance() {
    let q1 = catalog::builtin("Q1").unwrap();
    assert_eq!(q1.table.order(), 16);
    let m = &q1.expected["moufang"];
    assert_eq!(
        (m.value, m.provenance),
        (ExpectedValue::Bool(true), Provenance::Paper)
    );
    let a = &q1.expected["automorphic"];
    assert_eq!(
        (a.value, a.provenance),
        (ExpectedValue::Bool(false), Provenance::Derived)
    );
    let q2 = catalog::builtin("Q2").unwrap();
    assert_eq!(q2.expected["associative"].value, ExpectedValue::Bool(false));
    assert_eq!(catalog::builtin("Z1").unwrap().table.order(), 1);
    assert!(catalog::builtin("Q3").is_err());
    for entry in catalog::all() {
        entry.verify().unwrap();
    }
}

#[test]
fn loop_file_round_trips() {
    let q1 = catalog::builtin("Q1").unwrap();
    let text = catalog::write_loop_file(&q1);
    let back = catalog::parse_loop_file(&text).unwrap();
    assert_eq!(back.table.rows(), q1.table.rows());
    assert_eq!(catalog::write_loop_file(&back), text);
    let q2_text = catalog::write_loop_file(&catalog::builtin("Q2").unwrap());
    let body: Vec<&str> = q2_text.lines().skip(2).collect();
    assert_eq!(body, Q2_RETYPED);
    let broken = "3\n1 2 3\n2 3 1\n3 1 1\n";
    let err = catalog::parse_loop_file(broken).unwrap_err().to_string();
    assert!(err.contains("line 4"), "{err}");
}
