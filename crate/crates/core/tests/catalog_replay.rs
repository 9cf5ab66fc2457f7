//! Catalog-wide checks: the three defining graphs survive with the right
//! unique non-extremal fibration, every intermediate diagram reproduces its
//! stated violation, and the fiber enumeration agrees with brute force.

use num_bigint::BigInt;
use num_traits::Zero;
use zeroent_core::dualgraph::{
    builtin_catalog, catalog_entry, classify_all, enumerate_fibers, fibration_profile,
    recognize_affine, span_is_e10, unique_nonextremal, AffineType, CatalogOutcome, DualGraph,
    GraphModel, Halfness, NonExtremalResult,
};
use zeroent_core::lattice::{AdeFamily, RootSystemType};

fn brute_force_supports(g: &DualGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if support.len() >= 2 && recognize_affine(g, &support).is_some() {
            out.push(support);
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force_on_all_catalog_graphs() {
    for entry in builtin_catalog() {
        let fast: Vec<Vec<usize>> =
            enumerate_fibers(&entry.graph).into_iter().map(|f| f.support).collect();
        let mut brute = brute_force_supports(&entry.graph);
        brute.sort();
        let mut fast_sorted = fast.clone();
        fast_sorted.sort();
        assert_eq!(fast_sorted, brute, "graph {}", entry.name);
    }
}

#[test]
fn defining_graphs_span_e10() {
    for name in ["A7~", "E6~", "D6+A1~"] {
        let e = catalog_entry(name).unwrap();
        assert!(span_is_e10(&e.graph), "{name}");
    }
    // a single vertex does not
    let g = DualGraph::from_edges(&["a"], &[]).unwrap();
    assert!(!span_is_e10(&g));
    // nor do the 9-vertex intermediates
    let e = catalog_entry("A7~-partial").unwrap();
    assert!(!span_is_e10(&e.graph));
}

#[test]
fn fiber_inventory_of_the_defining_graphs() {
    // A7~: one I8 cycle (half-fiber via E1.F0 = 1), two D8~ (I4*), two E7~,
    // four E8~
    let e = catalog_entry("A7~").unwrap();
    let fibers = enumerate_fibers(&e.graph);
    assert_eq!(fibers.len(), 9);
    let count = |t: AffineType| fibers.iter().filter(|f| f.affine == t).count();
    assert_eq!(count(AffineType::A(7)), 1);
    assert_eq!(count(AffineType::D(8)), 2);
    assert_eq!(count(AffineType::E(7)), 2);
    assert_eq!(count(AffineType::E(8)), 4);
    let i8 = fibers.iter().find(|f| f.affine == AffineType::A(7)).unwrap();
    assert_eq!(i8.halfness, Halfness::HalfFiber);
    // E1 pairs with the cycle once
    let e1 = e.graph.index_of("E1").unwrap();
    let pairing = i8.outside_pairings.iter().find(|(i, _)| *i == e1).unwrap();
    assert_eq!(pairing.1, BigInt::from(1));
    // the I4* classes are simple fibers: their halves lie in the saturation
    for f in fibers.iter().filter(|f| f.affine == AffineType::D(8)) {
        assert_eq!(f.halfness, Halfness::SimpleFiberCandidate, "{:?}", f.support);
    }

    // E6~: one E6~ half-fiber and three extremal E7~ classes
    let e = catalog_entry("E6~").unwrap();
    let fibers = enumerate_fibers(&e.graph);
    assert_eq!(fibers.len(), 4);
    let e6 = fibers.iter().find(|f| f.affine == AffineType::E(6)).unwrap();
    assert_eq!(e6.halfness, Halfness::HalfFiber);

    // D6+A1~: the double-edge pair, two D6~ halves, four E7~, one D8~
    let e = catalog_entry("D6+A1~").unwrap();
    let fibers = enumerate_fibers(&e.graph);
    assert_eq!(fibers.len(), 8);
    assert_eq!(fibers.iter().filter(|f| f.affine == AffineType::A1Double).count(), 1);
    assert_eq!(fibers.iter().filter(|f| f.affine == AffineType::D(6)).count(), 2);
    assert_eq!(fibers.iter().filter(|f| f.affine == AffineType::E(7)).count(), 4);
    let a1 = fibers.iter().find(|f| f.affine == AffineType::A1Double).unwrap();
    assert_eq!(a1.halfness, Halfness::HalfFiber);
    // the A1~ pair and the D6~ half-fiber of the same quasi-elliptic
    // fibration have the same class in the reduced lattice
    let model = GraphModel::build(&e.graph);
    let d6_same = fibers
        .iter()
        .filter(|f| f.affine == AffineType::D(6))
        .find(|f| {
            zeroent_core::lattice::primitive_vector(&model.reduce_class(&f.marks))
                == zeroent_core::lattice::primitive_vector(&model.reduce_class(&a1.marks))
        });
    assert!(d6_same.is_some());
}

#[test]
fn unique_nonextremal_of_defining_graphs() {
    // A7~ -> the I8 class
    let e = catalog_entry("A7~").unwrap();
    let NonExtremalResult::Unique(f) = unique_nonextremal(&e.graph).unwrap() else {
        panic!("A7~ must have a unique non-extremal class");
    };
    assert_eq!(f.affine, AffineType::A(7));
    let model = GraphModel::build(&e.graph);
    let profile = fibration_profile(&e.graph, &model, &f).unwrap();
    assert_eq!(profile.orthogonal_root_rank, 7);
    assert!(!profile.extremal_compatible);

    // E6~ -> the IV* pencil class
    let e = catalog_entry("E6~").unwrap();
    let NonExtremalResult::Unique(f) = unique_nonextremal(&e.graph).unwrap() else {
        panic!("E6~ must have a unique non-extremal class");
    };
    assert_eq!(f.affine, AffineType::E(6));
    let model = GraphModel::build(&e.graph);
    let profile = fibration_profile(&e.graph, &model, &f).unwrap();
    assert_eq!(profile.orthogonal_root_rank, 6);

    // D6+A1~ -> the III*-profile class (E7~), canonical representative on
    // the R2 side; orthogonal root lattice is E7 of rank 7
    let e = catalog_entry("D6+A1~").unwrap();
    let NonExtremalResult::Unique(f) = unique_nonextremal(&e.graph).unwrap() else {
        panic!("D6+A1~ must have a unique non-extremal class up to symmetry");
    };
    assert_eq!(f.affine, AffineType::E(7));
    let labels = f.support_labels(&e.graph);
    assert_eq!(labels, vec!["R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"]);
    let model = GraphModel::build(&e.graph);
    let profile = fibration_profile(&e.graph, &model, &f).unwrap();
    assert_eq!(profile.orthogonal_root_rank, 7);
    assert_eq!(
        profile.orthogonal_root_type,
        Some(RootSystemType::single(AdeFamily::E, 7))
    );
    assert!(!profile.extremal_compatible);
}

#[test]
fn extremal_profiles_have_rank_eight() {
    // in A7~ every fiber other than the I8 cycle is extremal-compatible
    let e = catalog_entry("A7~").unwrap();
    let model = GraphModel::build(&e.graph);
    for f in enumerate_fibers(&e.graph) {
        let p = fibration_profile(&e.graph, &model, &f).unwrap();
        if f.affine == AffineType::A(7) {
            assert!(!p.extremal_compatible);
        } else {
            assert!(p.extremal_compatible, "{:?}", f.support);
            assert_eq!(p.orthogonal_root_rank, 8);
        }
    }
}

#[test]
fn classification_replay_matches_the_case_tree() {
    let reports = classify_all().unwrap();
    assert_eq!(reports.len(), 14);
    let mut survivors = Vec::new();
    for r in &reports {
        assert!(r.matches_expected, "graph {} diverged: {:?}", r.name, r.outcome);
        if let CatalogOutcome::Survives { surface, .. } = &r.outcome {
            survivors.push((r.name, *surface));
        }
    }
    // exactly the three defining types survive
    assert_eq!(survivors.len(), 3);
    let names: Vec<&str> = survivors.iter().map(|(n, _)| *n).collect();
    assert_eq!(names, vec!["A7~", "E6~", "D6+A1~"]);
    // survivors report the right non-extremal profile
    for r in &reports {
        if let CatalogOutcome::Survives { surface, nonextremal } = &r.outcome {
            match surface {
                zeroent_core::dualgraph::SurfaceType::A7 => assert_eq!(nonextremal, "I8"),
                zeroent_core::dualgraph::SurfaceType::E6 => assert_eq!(nonextremal, "IV*"),
                zeroent_core::dualgraph::SurfaceType::D6A1 => assert_eq!(nonextremal, "III*"),
            }
        }
    }
}

#[test]
fn stated_violations_appear() {
    let expected: Vec<(&str, &str)> = vec![
        ("I4star-crossed-bisections", "I4"),
        ("I8-double-bisection", "I6"),
        ("E6-closed-arms", "I6"),
        ("I2star-interleaved-I8", "I6"),
        ("I2star-double-I4-extended", "I0*"),
        ("I2star-simple-I4", "I4"),
    ];
    let reports = classify_all().unwrap();
    for (name, kind) in expected {
        let r = reports.iter().find(|r| r.name == name).unwrap();
        match &r.outcome {
            CatalogOutcome::Rejected { violations } => {
                assert!(
                    violations.iter().any(|v| v.kind().split('/').any(|k| k == kind)),
                    "{name}: wanted {kind}, got {:?}",
                    violations.iter().map(|v| v.kind()).collect::<Vec<_>>()
                );
                // normalized pairing is 1 in every recorded violation
                for v in violations {
                    assert!(v.pairing == num_rational::BigRational::from_integer(1.into()));
                }
            }
            other => panic!("{name}: expected rejection, got {other:?}"),
        }
    }
    // the two precursors route to the D6+A1 type via the I2* signature
    for name in ["D6+A1~-precursor", "IIIstar-shared-E7"] {
        let r = reports.iter().find(|r| r.name == name).unwrap();
        match &r.outcome {
            CatalogOutcome::RoutesToD6A1 { violations } => {
                assert!(violations.iter().any(|v| v.kind() == "I2*"), "{name}");
            }
            other => panic!("{name}: expected D6+A1 route, got {other:?}"),
        }
    }
    // the extension diagrams stay violation-free
    for name in ["A7~-partial", "E6~-partial", "I2star-double-I4"] {
        let r = reports.iter().find(|r| r.name == name).unwrap();
        assert!(matches!(r.outcome, CatalogOutcome::Consistent), "{name}");
    }
}

#[test]
fn conductrix_metadata_on_d6a1() {
    let e = catalog_entry("D6+A1~").unwrap();
    let c = e.conductrix.unwrap();
    // multiplicities 1,1,2,1,1,1 on the marked vertices
    let mut mults: Vec<u32> = c.iter().map(|(_, m)| *m).collect();
    mults.sort_unstable();
    assert_eq!(mults, vec![1, 1, 1, 1, 1, 2]);
    let two: Vec<&str> = c.iter().filter(|(_, m)| *m == 2).map(|(v, _)| *v).collect();
    assert_eq!(two, vec!["R6"]);
    // all marked vertices exist in the graph
    for (v, _) in &c {
        assert!(e.graph.index_of(v).is_some());
    }
}

#[test]
fn dot_export_mentions_double_edge_and_dashing() {
    let e = catalog_entry("D6+A1~").unwrap();
    let fibers = enumerate_fibers(&e.graph);
    let a1 = fibers.iter().find(|f| f.affine == AffineType::A1Double).unwrap();
    let dot = e.graph.to_dot(Some(a1));
    assert!(dot.contains("label=\"2\""));
    assert!(dot.contains("style=dashed"));
    assert!(dot.contains("\"R9\" -- \"RXX\""));
}

#[test]
fn degenerate_gram_handled_via_radical() {
    // the D6+A1~ graph has 11 vertices and rank 10
    let e = catalog_entry("D6+A1~").unwrap();
    let lat = e.graph.gram();
    assert_eq!(lat.rank(), 11);
    assert!(lat.det().is_zero());
    let (q, _) = lat.mod_radical();
    assert_eq!(q.rank(), 10);
    assert_eq!(q.signature(), (1, 9, 0));
    assert_eq!(q.det(), BigInt::from(-16));
}

#[test]
fn half_fibers_are_primitive_in_the_saturation() {
    // halfness = HalfFiber must imply a primitive class in the saturated
    // lattice (primitivity read off the gcd of the saturation coordinates)
    use zeroent_core::arith::ratmat::int_vec_to_rat;
    for entry in builtin_catalog() {
        let model = GraphModel::build(&entry.graph);
        let Some(s) = &model.e10 else { continue };
        for f in enumerate_fibers(&entry.graph) {
            if f.halfness != Halfness::HalfFiber {
                continue;
            }
            let c = model.reduce_class(&f.marks);
            let coords = s
                .coordinates(&int_vec_to_rat(&c))
                .expect("fiber class lies in the saturation");
            let primitive = zeroent_core::lattice::primitive_vector(&coords) == coords;
            assert!(primitive, "{}: {:?}", entry.name, f.support_labels(&entry.graph));
        }
    }
}

#[test]
fn default_scan_entry_point_matches_the_catalog_results() {
    use zeroent_core::dualgraph::contradiction_scan_auto;
    // A7~ with its I8 class: empty under the widest list
    let e = catalog_entry("A7~").unwrap();
    let fibers = enumerate_fibers(&e.graph);
    let f0 = fibers.iter().find(|f| f.affine == AffineType::A(7)).unwrap();
    assert!(contradiction_scan_auto(&e.graph, f0).unwrap().is_empty());
    // the crossed-bisection graph with the same cycle: I4 violations appear
    let e = catalog_entry("I4star-crossed-bisections").unwrap();
    let fibers = enumerate_fibers(&e.graph);
    let f0 = fibers
        .iter()
        .find(|f| f.affine == AffineType::A(7) && f.support_labels(&e.graph)[0] == "R1")
        .unwrap();
    let violations = contradiction_scan_auto(&e.graph, f0).unwrap();
    assert!(violations.iter().any(|v| v.kind() == "I4"));
}
