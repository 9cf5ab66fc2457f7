//! Built-in catalog: the three defining dual graphs, the intermediate
//! diagrams of the classification case analysis, and the full replay of that
//! case tree.

use super::analysis::{
    contradiction_scan_with_model, f0_branches_for, unique_nonextremal, GraphModel,
    NonExtremalResult, ScanRule, Violation,
};
use super::{enumerate_fibers_with_model, DualGraph, GraphError, GraphFiber};
use crate::fibration::KodairaType;

/// Hypothesis for the designated base fibration class F0 of a catalog graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F0Hypothesis {
    /// the configuration class is itself the half-fiber (double fiber case)
    Half,
    /// the configuration is a simple fiber; the half-fiber is class/2
    SimpleFiber,
    /// derive branches from parity and the saturated model
    Auto,
}

/// Which of the three surface types a surviving graph belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceType {
    A7,
    E6,
    D6A1,
}

impl SurfaceType {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceType::A7 => "A7~",
            SurfaceType::E6 => "E6~",
            SurfaceType::D6A1 => "D6+A1~",
        }
    }
}

/// Expected outcome of a catalog graph under the classification replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedOutcome {
    /// spans E10 and survives every scan: one of the three defining types
    Survives(SurfaceType),
    /// a scan yields the stated violated fiber kind (e.g. "I4", "I6", "I0*")
    Violation(&'static str),
    /// the lemma-stage I2* signature: the surface is of type D6~+A1~
    RoutesToD6A1,
    /// no violation; the diagram completes to the named catalog graph
    ExtendsTo(&'static str),
}

/// One catalog entry with the data needed to replay its case.
pub struct CatalogEntry {
    pub name: &'static str,
    pub graph: DualGraph,
    /// support labels of the designated F0 configuration
    pub f0_support: Vec<&'static str>,
    pub f0_hypothesis: F0Hypothesis,
    /// scan stages applied to this graph (in order)
    pub stages: Vec<ScanRule>,
    pub expected: ExpectedOutcome,
    /// conductrix multiplicities on marked vertices, when the catalog
    /// carries recorded multiplicities for this graph
    pub conductrix: Option<Vec<(&'static str, u32)>>,
}

fn cycle8() -> Vec<(&'static str, &'static str, i64)> {
    vec![
        ("R1", "R2", 1),
        ("R2", "R3", 1),
        ("R3", "R4", 1),
        ("R4", "R5", 1),
        ("R5", "R6", 1),
        ("R6", "R7", 1),
        ("R7", "R8", 1),
        ("R8", "R1", 1),
    ]
}

fn graph_a7() -> DualGraph {
    let mut edges = cycle8();
    edges.push(("E1", "R1", 1));
    edges.push(("E2", "R5", 1));
    DualGraph::from_edges(
        &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "E1", "E2"],
        &edges,
    )
    .expect("catalog graph valid")
}

fn graph_e6() -> DualGraph {
    DualGraph::from_edges(
        &["R0", "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
        &[
            ("R0", "R1", 1),
            ("R1", "R2", 1),
            ("R2", "R3", 1),
            ("R3", "R4", 1),
            ("R4", "R5", 1),
            ("R5", "R6", 1),
            ("R3", "R7", 1),
            ("R7", "R8", 1),
            ("R8", "R9", 1),
        ],
    )
    .expect("catalog graph valid")
}

fn d6a1_core_edges() -> Vec<(&'static str, &'static str, i64)> {
    vec![
        ("R2", "R3", 1),
        ("R3", "R4", 1),
        ("R4", "R6", 1),
        ("R5", "R6", 1),
        ("R6", "R7", 1),
        ("R7", "R8", 1),
        ("R8", "R9", 1),
        ("R1", "R8", 1),
        ("R3", "RX", 1),
    ]
}

fn graph_d6a1() -> DualGraph {
    let mut edges = d6a1_core_edges();
    edges.push(("R9", "RXX", 2));
    DualGraph::from_edges(
        &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "RX", "RXX"],
        &edges,
    )
    .expect("catalog graph valid")
}

fn graph_d6a1_precursor() -> DualGraph {
    DualGraph::from_edges(
        &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "RX"],
        &d6a1_core_edges(),
    )
    .expect("catalog graph valid")
}

/// The defining graphs plus the intermediate diagrams of the case analysis.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    use ExpectedOutcome::*;
    use F0Hypothesis::*;
    use ScanRule::*;
    let all_stages = vec![PropAlternative, CorAlternative, LemmaExcludeXx];
    let pre_lemma = vec![PropAlternative, CorAlternative];
    let mut entries = Vec::new();

    entries.push(CatalogEntry {
        name: "A7~",
        graph: graph_a7(),
        f0_support: vec!["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"],
        f0_hypothesis: Half,
        stages: all_stages.clone(),
        expected: Survives(SurfaceType::A7),
        conductrix: None,
    });
    entries.push(CatalogEntry {
        name: "E6~",
        graph: graph_e6(),
        f0_support: vec!["R1", "R2", "R3", "R4", "R5", "R7", "R8"],
        f0_hypothesis: Half,
        stages: all_stages.clone(),
        expected: Survives(SurfaceType::E6),
        conductrix: None,
    });
    entries.push(CatalogEntry {
        name: "D6+A1~",
        graph: graph_d6a1(),
        f0_support: vec!["R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
        f0_hypothesis: Auto,
        stages: all_stages.clone(),
        expected: Survives(SurfaceType::D6A1),
        conductrix: Some(vec![
            ("R3", 1),
            ("R4", 1),
            ("R5", 1),
            ("R6", 2),
            ("R7", 1),
            ("R8", 1),
        ]),
    });

    // I4* case with both bisections meeting R3
    let mut edges = cycle8();
    edges.extend([("E1", "R1", 1), ("E1", "R3", 1), ("E2", "R5", 1), ("E2", "R3", 1)]);
    entries.push(CatalogEntry {
        name: "I4star-crossed-bisections",
        graph: DualGraph::from_edges(
            &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "E1", "E2"],
            &edges,
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"],
        f0_hypothesis: SimpleFiber,
        stages: all_stages.clone(),
        expected: Violation("I4"),
        conductrix: None,
    });

    // the D6+A1~ diagram without the double-edge vertex
    entries.push(CatalogEntry {
        name: "D6+A1~-precursor",
        graph: graph_d6a1_precursor(),
        f0_support: vec!["R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
        f0_hypothesis: SimpleFiber,
        stages: all_stages.clone(),
        expected: RoutesToD6A1,
        conductrix: None,
    });

    // a double III* fiber: the E7~ chain plus the extra leg
    entries.push(CatalogEntry {
        name: "IIIstar-shared-E7",
        graph: DualGraph::from_edges(
            &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
            &[
                ("R2", "R3", 1),
                ("R3", "R4", 1),
                ("R4", "R6", 1),
                ("R5", "R6", 1),
                ("R6", "R7", 1),
                ("R7", "R8", 1),
                ("R8", "R9", 1),
                ("R1", "R8", 1),
            ],
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
        f0_hypothesis: SimpleFiber,
        stages: all_stages.clone(),
        expected: RoutesToD6A1,
        conductrix: None,
    });

    // simple III* against an I8: the 8-cycle with one bisection
    let mut edges = cycle8();
    edges.push(("E1", "R1", 1));
    entries.push(CatalogEntry {
        name: "A7~-partial",
        graph: DualGraph::from_edges(
            &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "E1"],
            &edges,
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"],
        f0_hypothesis: Half,
        stages: all_stages.clone(),
        expected: ExtendsTo("A7~"),
        conductrix: None,
    });

    // the same cycle with a bisection meeting R1 and R5
    let mut edges = cycle8();
    edges.extend([("R9", "R1", 1), ("R9", "R5", 1)]);
    entries.push(CatalogEntry {
        name: "I8-double-bisection",
        graph: DualGraph::from_edges(
            &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
            &edges,
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"],
        f0_hypothesis: SimpleFiber,
        stages: all_stages.clone(),
        expected: Violation("I6"),
        conductrix: None,
    });

    // simple III* against an IV*: star with arms 2,3,3
    let star_edges = vec![
        ("R1", "R2", 1),
        ("R2", "R3", 1),
        ("R3", "R4", 1),
        ("R4", "R5", 1),
        ("R5", "R6", 1),
        ("R3", "R7", 1),
        ("R7", "R8", 1),
        ("R8", "R9", 1),
    ];
    entries.push(CatalogEntry {
        name: "E6~-partial",
        graph: DualGraph::from_edges(
            &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
            &star_edges,
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R1", "R2", "R3", "R4", "R5", "R7", "R8"],
        f0_hypothesis: Half,
        stages: all_stages.clone(),
        expected: ExtendsTo("E6~"),
        conductrix: None,
    });

    // with the two closing edges: half-fibers of type I6 appear
    let mut edges = star_edges.clone();
    edges.extend([("R1", "R9", 1), ("R1", "R6", 1)]);
    entries.push(CatalogEntry {
        name: "E6-closed-arms",
        graph: DualGraph::from_edges(
            &["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9"],
            &edges,
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R1", "R2", "R3", "R4", "R5", "R7", "R8"],
        f0_hypothesis: SimpleFiber,
        stages: all_stages.clone(),
        expected: Violation("I6"),
        conductrix: None,
    });

    // I2* exclusion, first diagram: an I8 cycle interleaving the two A3
    // pieces, central component attached across
    entries.push(CatalogEntry {
        name: "I2star-interleaved-I8",
        graph: DualGraph::from_edges(
            &["R1", "RX", "R3", "R4", "R5", "RXX", "R7", "R8", "R9"],
            &[
                ("R1", "RX", 1),
                ("RX", "R3", 1),
                ("R3", "R4", 1),
                ("R4", "R5", 1),
                ("R5", "RXX", 1),
                ("RXX", "R7", 1),
                ("R7", "R8", 1),
                ("R8", "R1", 1),
                ("R9", "R8", 1),
                ("R9", "R4", 1),
            ],
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R1", "RX", "R3", "R4", "R5", "RXX", "R7", "R8"],
        f0_hypothesis: SimpleFiber,
        stages: pre_lemma.clone(),
        expected: Violation("I6"),
        conductrix: None,
    });

    // I2* exclusion, second diagram: G0 double of type I4
    let diagram2_edges = vec![
        ("R9", "R8", 1),
        ("R9", "R4", 1),
        ("R3", "R4", 1),
        ("R4", "R5", 1),
        ("R7", "R8", 1),
        ("R8", "R1", 1),
        ("R1", "R", 1),
        ("R", "R7", 1),
    ];
    entries.push(CatalogEntry {
        name: "I2star-double-I4",
        graph: DualGraph::from_edges(
            &["R1", "R3", "R4", "R5", "R7", "R8", "R9", "R"],
            &diagram2_edges,
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R", "R1", "R7", "R8"],
        f0_hypothesis: Half,
        stages: pre_lemma.clone(),
        expected: ExtendsTo("I2star-double-I4-extended"),
        conductrix: None,
    });

    // the same diagram extended by the two deduced curves on the bisection
    let mut edges = diagram2_edges.clone();
    edges.extend([("R", "R3p", 1), ("R", "R4p", 1)]);
    entries.push(CatalogEntry {
        name: "I2star-double-I4-extended",
        graph: DualGraph::from_edges(
            &["R1", "R3", "R4", "R5", "R7", "R8", "R9", "R", "R3p", "R4p"],
            &edges,
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R", "R1", "R7", "R8"],
        f0_hypothesis: Half,
        stages: pre_lemma.clone(),
        expected: Violation("I0*"),
        conductrix: None,
    });

    // I2* exclusion, third diagram: G0 simple of type I4 via the curve RXX
    entries.push(CatalogEntry {
        name: "I2star-simple-I4",
        graph: DualGraph::from_edges(
            &["R1", "R3", "R4", "R5", "R7", "R8", "R9", "RXX"],
            &[
                ("R9", "R8", 1),
                ("R9", "R4", 1),
                ("R3", "R4", 1),
                ("R4", "R5", 1),
                ("R7", "R8", 1),
                ("R8", "R1", 1),
                ("R1", "RXX", 1),
                ("RXX", "R7", 1),
                ("RXX", "R9", 1),
            ],
        )
        .expect("catalog graph valid"),
        f0_support: vec!["R1", "R7", "R8", "RXX"],
        f0_hypothesis: SimpleFiber,
        stages: pre_lemma.clone(),
        expected: Violation("I4"),
        conductrix: None,
    });

    entries
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    builtin_catalog().into_iter().find(|e| e.name == name)
}

/// Computed outcome of one catalog graph.
#[derive(Clone, Debug)]
pub enum CatalogOutcome {
    Survives { surface: SurfaceType, nonextremal: String },
    Rejected { violations: Vec<Violation> },
    RoutesToD6A1 { violations: Vec<Violation> },
    /// no violation derivable, vertex span smaller than E10: the diagram is
    /// consistent and completes (per the case analysis) to a larger graph
    Consistent,
}

pub struct CatalogReport {
    pub name: &'static str,
    pub spans_e10: bool,
    pub outcome: CatalogOutcome,
    pub matches_expected: bool,
}

fn find_f0<'a>(
    g: &DualGraph,
    fibers: &'a [GraphFiber],
    support: &[&str],
) -> Option<&'a GraphFiber> {
    let want: Vec<usize> = support.iter().filter_map(|l| g.index_of(l)).collect();
    let mut want = want;
    want.sort();
    fibers.iter().find(|f| f.support == want)
}

/// Replay one catalog entry.
pub fn classify_entry(entry: &CatalogEntry) -> Result<CatalogReport, GraphError> {
    let g = &entry.graph;
    let model = GraphModel::build(g);
    let spans = model.e10.is_some();
    let fibers = enumerate_fibers_with_model(g, &model);
    let f0 = find_f0(g, &fibers, &entry.f0_support).ok_or(GraphError::BadFiberIndex)?;
    let branches = f0_branches_for(&model, f0, entry.f0_hypothesis);
    let mut rejected: Vec<Violation> = Vec::new();
    let mut lemma_hits: Vec<Violation> = Vec::new();
    for &rule in &entry.stages {
        let v = contradiction_scan_with_model(g, &model, f0, &branches, rule)?;
        if v.is_empty() {
            continue;
        }
        if rule == ScanRule::LemmaExcludeXx {
            lemma_hits = v;
        } else {
            rejected = v;
            break;
        }
    }
    let outcome = if !rejected.is_empty() {
        CatalogOutcome::Rejected { violations: rejected }
    } else if !lemma_hits.is_empty() {
        // the I2* signature: type D6~ + A1~ (the defining graph included)
        if spans && entry.name == "D6+A1~" {
            CatalogOutcome::Survives {
                surface: SurfaceType::D6A1,
                nonextremal: nonextremal_label(g)?,
            }
        } else {
            CatalogOutcome::RoutesToD6A1 { violations: lemma_hits }
        }
    } else if spans {
        let label = nonextremal_label(g)?;
        let surface = if label.starts_with("I8") {
            SurfaceType::A7
        } else {
            SurfaceType::E6
        };
        CatalogOutcome::Survives { surface, nonextremal: label }
    } else {
        CatalogOutcome::Consistent
    };
    let matches_expected = match (&entry.expected, &outcome) {
        (ExpectedOutcome::Survives(t), CatalogOutcome::Survives { surface, .. }) => t == surface,
        (ExpectedOutcome::Violation(kind), CatalogOutcome::Rejected { violations }) => {
            violations.iter().any(|v| v.kind().split('/').any(|k| k == *kind))
        }
        (ExpectedOutcome::RoutesToD6A1, CatalogOutcome::RoutesToD6A1 { .. }) => true,
        (ExpectedOutcome::ExtendsTo(_), CatalogOutcome::Consistent) => true,
        _ => false,
    };
    Ok(CatalogReport { name: entry.name, spans_e10: spans, outcome, matches_expected })
}

fn nonextremal_label(g: &DualGraph) -> Result<String, GraphError> {
    match unique_nonextremal(g)? {
        NonExtremalResult::Unique(f) => Ok(f
            .kodaira_candidates()
            .iter()
            .map(KodairaType::label)
            .collect::<Vec<_>>()
            .join("/")),
        NonExtremalResult::NotUnique(_) => Ok("(not unique)".into()),
    }
}

/// Replay the whole catalog.
pub fn classify_all() -> Result<Vec<CatalogReport>, GraphError> {
    builtin_catalog().iter().map(classify_entry).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn catalog_shapes() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 14);
        let a7 = catalog_entry("A7~").unwrap();
        assert_eq!(a7.graph.len(), 10);
        // 11 edges: 8-cycle + two legs... plus none; count off-diagonal pairs
        let mut edges = 0;
        for i in 0..10 {
            for j in i + 1..10 {
                if !a7.graph.weight(i, j).is_zero() {
                    edges += 1;
                }
            }
        }
        assert_eq!(edges, 10);
        let d = catalog_entry("D6+A1~").unwrap();
        assert_eq!(d.graph.len(), 11);
        let i = d.graph.index_of("R9").unwrap();
        let j = d.graph.index_of("RXX").unwrap();
        assert_eq!(d.graph.weight(i, j), &num_bigint::BigInt::from(2));
        let e6 = catalog_entry("E6~").unwrap();
        assert_eq!(e6.graph.len(), 10);
        assert!(d.conductrix.is_some());
    }
}
