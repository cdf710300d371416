//! End-to-end acceptance checks, one test per headline claim. Each test
//! prints a single pass/fail line under `cargo test --test acceptance`.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use clfree::addel::{certify, infer, make_triple, quasihomogeneous_triple, Inference, Side, StepRule};
use clfree::arrangement::{Arrangement, CurveKind};
use clfree::clusters::{geometric_point_count, singular_clusters, Cluster, ShearStream};
use clfree::combinatorics::{combinatorially_equal, combinatorics, poincare_matches_exponents, EqualityMode};
use clfree::error::Error;
use clfree::freeness::{analyze_freeness, jacobian_degree, saito_basis, saito_check};
use clfree::local::{
    cluster_colength, cluster_colength_m_adic, intersection_multiplicity_cluster, milnor_cluster,
    singular_table, SingularPoint,
};
use clfree::multirestrict::{multi_exponents, multirestrict};
use clfree::poly::Poly;
use clfree::q::qi;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(name: &str) -> Arrangement {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    Arrangement::load(&path).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}

fn clusters_of(arr: &Arrangement) -> Vec<Cluster> {
    let mut shear = ShearStream::deterministic();
    singular_clusters(arr, &mut shear).unwrap()
}

fn table_of(arr: &Arrangement) -> Vec<SingularPoint> {
    singular_table(arr, &clusters_of(arr)).unwrap()
}

fn exponents(arr: &Arrangement) -> Option<Vec<i64>> {
    analyze_freeness(arr).1.exponents
}

fn row_at<'t>(table: &'t [SingularPoint], point: [i64; 3]) -> &'t SingularPoint {
    let hom = [qi(point[0]), qi(point[1]), qi(point[2])];
    table
        .iter()
        .find(|r| r.cluster.is_point(&hom))
        .unwrap_or_else(|| panic!("no singular cluster at ({}:{}:{})", point[0], point[1], point[2]))
}

#[test]
fn c01_four_lines_and_a_conic_local_invariants() {
    let a = corpus("ex1_8.json");
    assert_eq!(jacobian_degree(&a.defining_polynomial()), 19);
    let table = table_of(&a);
    let milnor_sum: u64 = table.iter().map(|r| r.invariants.milnor_cluster).sum();
    assert_eq!(milnor_sum, 20);
    let origin = row_at(&table, [0, 0, 1]);
    assert_eq!(origin.invariants.milnor_point, 16);
    assert_eq!(origin.invariants.tjurina_point, 15);
}

#[test]
fn c02_two_conics_three_lines_free_with_restrictions() {
    let a = corpus("ex2_1.json");
    assert_eq!(exponents(&a), Some(vec![1, 2, 4]));
    let degj = jacobian_degree(&a.defining_polynomial());
    assert_eq!(degj, 28);
    let milnor_sum: u64 = table_of(&a).iter().map(|r| r.invariants.milnor_cluster).sum();
    assert_eq!(milnor_sum, 28);
    // The three lines sit at indices 2, 3, 4 (after the two conics).
    for line in 2..5 {
        let multi = multirestrict(&a, line).unwrap();
        assert_eq!(multi.point_count(), 2, "restriction to line {line}");
        for (_, m) in multi.points() {
            assert_eq!(*m, 3, "restriction to line {line}");
        }
        assert_eq!(multi_exponents(&multi).unwrap(), (3, 3));
    }
}

#[test]
fn c03_added_line_certificate_builds_on_the_smaller_arrangement() {
    let a = corpus("ex2_2.json");
    assert_eq!(exponents(&a), Some(vec![1, 2, 5]));
    assert_eq!(jacobian_degree(&a.defining_polynomial()), 39);
    let mut shear = ShearStream::deterministic();
    let cert = certify(&a, &mut shear).unwrap();
    assert!(cert.free);
    assert_eq!(cert.exponents, Some(vec![1, 2, 5]));
    let last = cert.steps.last().unwrap();
    assert_eq!(last.rule, StepRule::LineAddition);
    assert_eq!(last.k, Some(3));
    assert_eq!(last.from_exponents, Some(vec![1, 2, 4]));
    assert_eq!(last.exponents, Some(vec![1, 2, 5]));
    let smaller = corpus("ex2_1.json");
    assert!(
        cert.steps
            .iter()
            .any(|s| s.arrangement == smaller.key() && s.exponents == Some(vec![1, 2, 4])),
        "certificate routes through the five-member subarrangement"
    );
}

#[test]
fn c04_free_despite_one_non_quasihomogeneous_point() {
    let a = corpus("ex2_3.json");
    assert_eq!(exponents(&a), Some(vec![1, 3, 4]));
    assert_eq!(jacobian_degree(&a.defining_polynomial()), 37);
    let table = table_of(&a);
    let milnor_sum: u64 = table.iter().map(|r| r.invariants.milnor_cluster).sum();
    assert_eq!(milnor_sum, 38);
    let bad: Vec<&SingularPoint> = table.iter().filter(|r| !r.quasihomogeneous).collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0].cluster.is_point(&[qi(0), qi(0), qi(1)]));
}

#[test]
fn c05_multirestriction_exponents_depend_on_the_added_line() {
    for (file, expected) in [
        ("cor2_15_alpha_minus1.json", (3, 5)),
        ("cor2_15_alpha3.json", (4, 4)),
    ] {
        let a = corpus(file);
        // L3 = x + y - z sits at index 4.
        let multi = multirestrict(&a, 4).unwrap();
        let mut mults: Vec<u32> = multi.points().iter().map(|(_, m)| *m).collect();
        mults.sort_unstable();
        assert_eq!(mults, vec![1, 1, 3, 3], "{file}");
        assert_eq!(multi_exponents(&multi).unwrap(), expected, "{file}");
    }
}

#[test]
fn c06_conic_deletion_inference_agrees_with_direct_resolutions() {
    let mut shear = ShearStream::deterministic();

    let small = corpus("ex3_3.json");
    assert_eq!(exponents(&small), Some(vec![1, 2, 2]));
    let small_deleted = corpus("ex3_3_deleted.json");
    assert_eq!(exponents(&small_deleted), Some(vec![1, 1, 1]));
    let t = make_triple(&small, 0, &mut shear).unwrap();
    assert_eq!(t.deleted.key(), small_deleted.key());
    let qh = quasihomogeneous_triple(&t, &mut shear).unwrap();
    assert!(qh);
    assert_eq!(
        infer(&t, qh, Side::Deleted, &[1, 1, 1]),
        Inference::Free(vec![1, 2, 2])
    );
    assert_eq!(
        infer(&t, qh, Side::Full, &[1, 2, 2]),
        Inference::Free(vec![1, 1, 1])
    );

    let big = corpus("ex2_2.json");
    let big_deleted = corpus("ex3_1.json");
    assert_eq!(exponents(&big_deleted), Some(vec![1, 2, 3]));
    let t = make_triple(&big, 0, &mut shear).unwrap();
    assert_eq!(t.deleted.key(), big_deleted.key());
    let qh = quasihomogeneous_triple(&t, &mut shear).unwrap();
    assert!(qh);
    assert_eq!(
        infer(&t, qh, Side::Deleted, &[1, 2, 3]),
        Inference::Free(vec![1, 2, 5])
    );
    assert_eq!(
        infer(&t, qh, Side::Full, &[1, 2, 5]),
        Inference::Free(vec![1, 2, 3])
    );
}

#[test]
fn c07_braid_plus_conic_is_not_free_by_the_odd_case() {
    let braid = corpus("ex3_2_braid.json");
    assert_eq!(exponents(&braid), Some(vec![1, 2, 3]));
    let a = corpus("ex3_2.json");
    let (_, verdict) = analyze_freeness(&a);
    assert!(!verdict.free);
    let mut shear = ShearStream::deterministic();
    // The conic is the last member.
    let t = make_triple(&a, 6, &mut shear).unwrap();
    assert_eq!(t.k, 7);
    let qh = quasihomogeneous_triple(&t, &mut shear).unwrap();
    assert!(qh);
    assert_eq!(infer(&t, qh, Side::Deleted, &[1, 2, 3]), Inference::NotFree);
}

#[test]
fn c08_tangent_conic_pair_equal_combinatorics_different_freeness() {
    let c = corpus("ex4_1_C.json");
    let cp = corpus("ex4_1_Cprime.json");
    let mut shear = ShearStream::deterministic();
    assert!(combinatorially_equal(&c, &cp, EqualityMode::Strict, &mut shear).unwrap());
    assert!(combinatorially_equal(&c, &cp, EqualityMode::Incidence, &mut shear).unwrap());

    let (module, verdict) = analyze_freeness(&c);
    assert!(verdict.free);
    assert_eq!(module.resolution.generator_degrees, vec![2, 3]);
    assert_eq!(verdict.exponents, Some(vec![1, 2, 3]));

    let (module, verdict) = analyze_freeness(&cp);
    assert!(!verdict.free);
    assert_eq!(module.resolution.generator_degrees, vec![3, 3, 3]);
    assert_eq!(module.resolution.relation_degrees, vec![4]);
    // Graded as syzygies of the three degree-5 partials (elements of
    // S(-5)^3), the same resolution reads 0 -> S(-9) -> S(-8)^3 -> D0.
    let shift = i64::from(cp.degree()) - 1;
    let gens: Vec<i64> = module
        .resolution
        .generator_degrees
        .iter()
        .map(|d| d + shift)
        .collect();
    assert_eq!(gens, vec![8, 8, 8]);
    let rels: Vec<i64> = module
        .resolution
        .relation_degrees
        .iter()
        .map(|d| d + shift)
        .collect();
    assert_eq!(rels, vec![9]);
}

#[test]
fn c09_conic_quintets_equal_combinatorics_different_freeness() {
    let mut shear = ShearStream::deterministic();

    // The two five-conic arrangements carry the same combinatorics:
    // thirteen ordinary singular points, ten nodes and three points
    // where all five conics meet.
    let a = corpus("ex4_2_A.json");
    let ap = corpus("ex4_2_Aprime.json");
    assert!(combinatorially_equal(&a, &ap, EqualityMode::Strict, &mut shear).unwrap());

    let table = table_of(&a);
    assert_eq!(geometric_point_count(&clusters_of(&a)), 13);
    assert!(table.iter().all(|r| r.ordinary));
    for row in &table {
        assert!(row.branches == 2 || row.branches == 5);
        if row.branches == 5 {
            assert_eq!(row.invariants.milnor_point, 16);
        }
        let origin = row.cluster.is_point(&[qi(0), qi(0), qi(1)]);
        assert_eq!(row.invariants.tjurina_point == row.invariants.milnor_point, !origin);
        if origin {
            assert_eq!(row.invariants.tjurina_point, 15);
        }
    }

    let table = table_of(&ap);
    assert_eq!(geometric_point_count(&clusters_of(&ap)), 13);
    for point in [[0, 0, 1], [1, 0, 1], [0, 1, 1]] {
        let row = row_at(&table, point);
        assert_eq!(row.branches, 5);
        assert_eq!(row.invariants.milnor_point, 16);
        assert_eq!(row.invariants.tjurina_point, 15);
    }

    // Adding the three connecting lines to each keeps the combinatorics
    // equal but separates freeness.
    let c = corpus("ex4_2_C.json");
    let cp = corpus("ex4_2_Cprime.json");
    assert!(combinatorially_equal(&c, &cp, EqualityMode::Strict, &mut shear).unwrap());
    assert!(combinatorially_equal(&c, &cp, EqualityMode::Incidence, &mut shear).unwrap());

    let (module, verdict) = analyze_freeness(&c);
    assert!(verdict.free);
    assert_eq!(module.resolution.generator_degrees, vec![6, 6]);
    assert_eq!(verdict.exponents, Some(vec![1, 6, 6]));

    let (module, verdict) = analyze_freeness(&cp);
    assert!(!verdict.free);
    assert_eq!(module.resolution.generator_degrees, vec![7, 7, 7, 7]);
    assert_eq!(module.resolution.relation_degrees, vec![8, 8]);
}

/// One arrangement's worth of invariant checks: global Tjurina count,
/// Bezout, Milnor additivity over member splits, triple identities on
/// quasihomogeneous triples, the Saito criterion against the resolution
/// verdict, and Poincare factorization for free line arrangements.
fn property_suite(arr: &Arrangement, tag: &str) {
    let f = arr.defining_polynomial();
    let mut shear = ShearStream::deterministic();
    let clusters = singular_clusters(arr, &mut shear).unwrap();
    let table = singular_table(arr, &clusters).unwrap();
    let degj = jacobian_degree(&f);

    let tjurina_sum: u64 = table.iter().map(|r| r.invariants.tjurina_cluster).sum();
    assert_eq!(tjurina_sum, degj, "global Tjurina count for {tag}");

    let curves = arr.curves();
    for i in 0..curves.len() {
        for j in (i + 1)..curves.len() {
            let mut total = 0;
            for cl in &clusters {
                total +=
                    intersection_multiplicity_cluster(&curves[i].form, &curves[j].form, cl)
                        .unwrap();
            }
            let expected = u64::from(
                curves[i].form.degree().unwrap() * curves[j].form.degree().unwrap(),
            );
            assert_eq!(total, expected, "Bezout for members {i},{j} of {tag}");
        }
    }

    for row in &table {
        let through: Vec<&Poly> = curves
            .iter()
            .filter(|c| row.cluster.components_through(c) > 0)
            .map(|c| &c.form)
            .collect();
        if through.len() < 2 {
            continue;
        }
        let x = through[0];
        let y = through[1..]
            .iter()
            .fold(Poly::one(arr.ring()), |acc, g| &acc * *g);
        let mx = milnor_cluster(x, &row.cluster).unwrap();
        let my = milnor_cluster(&y, &row.cluster).unwrap();
        let meet = intersection_multiplicity_cluster(x, &y, &row.cluster).unwrap();
        let e = u64::from(row.cluster.residue_degree());
        assert_eq!(
            row.invariants.milnor_cluster,
            mx + my + 2 * meet - e,
            "Milnor additivity at {} of {tag}",
            row.cluster.describe()
        );
    }

    if curves.len() >= 2 {
        for idx in 0..curves.len() {
            if curves[idx].kind == CurveKind::LinePair {
                continue;
            }
            let t = match make_triple(arr, idx, &mut shear) {
                Ok(t) => t,
                Err(Error::Unsupported(_)) => continue,
                Err(e) => panic!("triple at member {idx} of {tag}: {e}"),
            };
            if !quasihomogeneous_triple(&t, &mut shear).unwrap() {
                continue;
            }
            let degj_deleted = jacobian_degree(&t.deleted.defining_polynomial());
            let d = i64::from(arr.degree()) - 1;
            let expected = match curves[idx].kind {
                CurveKind::Line => 2 * d - i64::from(t.k),
                CurveKind::Conic => 4 * d - 4 - i64::from(t.k),
                CurveKind::LinePair => unreachable!(),
            };
            assert_eq!(
                degj as i64 - degj_deleted as i64,
                expected,
                "triple identity at member {idx} of {tag}"
            );
        }
    }

    let (module, verdict) = analyze_freeness(arr);
    match saito_basis(&module, &f) {
        Some(basis) => {
            assert!(verdict.free, "Saito basis for non-free {tag}");
            assert!(saito_check(&basis, arr), "Saito determinant for {tag}");
        }
        None => assert!(!verdict.free, "no Saito basis for free {tag}"),
    }

    if verdict.free && curves.iter().all(|c| c.kind == CurveKind::Line) {
        let comb = combinatorics(arr, &clusters);
        assert!(
            poincare_matches_exponents(&comb, verdict.exponents.as_ref().unwrap()),
            "Poincare factorization for {tag}"
        );
    }
}

const CORPUS: [&str; 17] = [
    "cor2_15_alpha3.json",
    "cor2_15_alpha_minus1.json",
    "ex1_8.json",
    "ex2_1.json",
    "ex2_2.json",
    "ex2_3.json",
    "ex3_1.json",
    "ex3_2.json",
    "ex3_2_braid.json",
    "ex3_3.json",
    "ex3_3_deleted.json",
    "ex4_1_C.json",
    "ex4_1_Cprime.json",
    "ex4_2_A.json",
    "ex4_2_Aprime.json",
    "ex4_2_C.json",
    "ex4_2_Cprime.json",
];

/// Signed sum like "2x - y + 3z" from coefficient/name pairs.
fn signed_sum(terms: &[(i64, &str)]) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        if *c == 0 {
            continue;
        }
        if out.is_empty() {
            if *c < 0 {
                out.push_str("- ");
            }
        } else {
            out.push_str(if *c < 0 { " - " } else { " + " });
        }
        let a = c.abs();
        if a != 1 {
            out.push_str(&a.to_string());
        }
        out.push_str(name);
    }
    out
}

fn random_arrangements(count: usize) -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c1f0ee);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let lines = rng.gen_range(0..=4usize);
        let conics = rng.gen_range(0..=2usize);
        if lines + conics == 0 {
            continue;
        }
        let mut forms: Vec<(CurveKind, String)> = Vec::new();
        for _ in 0..lines {
            let c: [i64; 3] = [
                rng.gen_range(-2..=2),
                rng.gen_range(-2..=2),
                rng.gen_range(-2..=2),
            ];
            forms.push((
                CurveKind::Line,
                signed_sum(&[(c[0], "x"), (c[1], "y"), (c[2], "z")]),
            ));
        }
        for _ in 0..conics {
            let c: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-2..=2));
            forms.push((
                CurveKind::Conic,
                signed_sum(&[
                    (c[0], "x^2"),
                    (c[1], "y^2"),
                    (c[2], "z^2"),
                    (c[3], "xy"),
                    (c[4], "xz"),
                    (c[5], "yz"),
                ]),
            ));
        }
        if forms.iter().any(|(_, s)| s.is_empty()) {
            continue;
        }
        let specs: Vec<(CurveKind, &str)> =
            forms.iter().map(|(k, s)| (*k, s.as_str())).collect();
        if let Ok(arr) = Arrangement::from_forms(&specs) {
            out.push(arr);
        }
    }
    out
}

#[test]
fn c10_invariants_hold_on_corpus_and_random_arrangements() {
    let mut jobs: Vec<(String, Arrangement)> = CORPUS
        .iter()
        .map(|name| (name.to_string(), corpus(name)))
        .collect();
    for (i, arr) in random_arrangements(50).into_iter().enumerate() {
        jobs.push((format!("random #{i} [{}]", arr.key()), arr));
    }

    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get().min(8));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((tag, arr)) = jobs.get(i) else { break };
                property_suite(arr, tag);
            });
        }
    });
}

#[test]
fn c11_local_multiplicity_oracles_agree_on_the_corpus() {
    let jobs: Vec<Arrangement> = CORPUS.iter().map(|name| corpus(name)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get().min(8));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(arr) = jobs.get(i) else { break };
                let f = arr.defining_polynomial();
                for cl in clusters_of(arr) {
                    let fc = cl.chart().dehomogenize(&f);
                    let gens = vec![fc.partial(0), fc.partial(1), fc];
                    let by_saturation = cluster_colength(&gens, &cl).unwrap();
                    let by_madic = cluster_colength_m_adic(&gens, &cl).unwrap();
                    assert_eq!(
                        by_saturation,
                        by_madic,
                        "oracles disagree at {} of {}",
                        cl.describe(),
                        arr.name().unwrap_or("?")
                    );
                }
            });
        }
    });
}
