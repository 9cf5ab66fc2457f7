//! Dual graphs of (-2)-curves: affine Dynkin fiber enumeration, half-fiber
//! detection, fibration profiles, the unique-non-extremal search and the
//! classification case scan, plus the built-in catalog of graphs.

mod analysis;
mod catalog;

pub use analysis::{
    contradiction_scan, contradiction_scan_auto, f0_branches_for, fibration_profile, profile_configuration, span_is_e10,
    unique_nonextremal, FibrationProfile, GraphModel, NonExtremalResult, ScanRule, Violation,
    VisibleFiber,
};
pub use catalog::{
    builtin_catalog, catalog_entry, classify_all, classify_entry, CatalogEntry, CatalogOutcome,
    CatalogReport, ExpectedOutcome, F0Hypothesis, SurfaceType,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::IntMatrix;
use crate::fibration::KodairaType;
use crate::lattice::Lattice;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("intersection matrix must be symmetric with diagonal -2 and non-negative off-diagonal entries")]
    BadIntersectionMatrix,
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("graph JSON: {0}")]
    Json(String),
    #[error("fiber index out of range")]
    BadFiberIndex,
    #[error("the designated class is not isotropic")]
    NotIsotropic,
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Weighted dual graph of (-2)-curves. Off-diagonal weight 2 encodes the
/// double edge (tangent or two-point intersections).
#[derive(Clone, Debug)]
pub struct DualGraph {
    labels: Vec<String>,
    gram: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String, i64)>,
}

impl DualGraph {
    pub fn new(labels: Vec<String>, gram: IntMatrix) -> Result<Self, GraphError> {
        let n = labels.len();
        if gram.rows() != n || !gram.is_symmetric() {
            return Err(GraphError::BadIntersectionMatrix);
        }
        for i in 0..n {
            if gram[(i, i)] != BigInt::from(-2) {
                return Err(GraphError::BadIntersectionMatrix);
            }
            for j in 0..n {
                if i != j && gram[(i, j)].is_negative() {
                    return Err(GraphError::BadIntersectionMatrix);
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        Ok(DualGraph { labels, gram })
    }

    pub fn from_edges(labels: &[&str], edges: &[(&str, &str, i64)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let n = labels.len();
        let index = |l: &str| -> Result<usize, GraphError> {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| GraphError::UnknownVertex(l.to_string()))
        };
        let mut gram = IntMatrix::zero(n, n);
        for i in 0..n {
            gram[(i, i)] = BigInt::from(-2);
        }
        for &(a, b, w) in edges {
            let (i, j) = (index(a)?, index(b)?);
            gram[(i, j)] = BigInt::from(w);
            gram[(j, i)] = BigInt::from(w);
        }
        Self::new(labels, gram)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let labels: Vec<&str> = parsed.vertices.iter().map(|s| s.as_str()).collect();
        let edges: Vec<(&str, &str, i64)> = parsed
            .edges
            .iter()
            .map(|(a, b, w)| (a.as_str(), b.as_str(), *w))
            .collect();
        Self::from_edges(&labels, &edges)
    }

    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let w = &self.gram[(i, j)];
                if !w.is_zero() {
                    edges.push((
                        self.labels[i].clone(),
                        self.labels[j].clone(),
                        w.to_string().parse::<i64>().unwrap_or(1),
                    ));
                }
            }
        }
        serde_json::to_string_pretty(&GraphJson { vertices: self.labels.clone(), edges })
            .expect("graph serializes")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weight(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[(i, j)]
    }

    /// The intersection matrix as a Lattice.
    pub fn gram(&self) -> Lattice {
        Lattice::new(self.gram.clone()).expect("graph gram symmetric")
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| j != i && !self.gram[(i, j)].is_zero())
            .collect()
    }

    fn neighbors_in(&self, i: usize, support: &[usize]) -> Vec<usize> {
        support
            .iter()
            .copied()
            .filter(|&j| j != i && !self.gram[(i, j)].is_zero())
            .collect()
    }

    /// DOT rendering; double edges labeled "2"; when a fiber is given, its
    /// support is drawn dashed.
    pub fn to_dot(&self, highlight: Option<&GraphFiber>) -> String {
        let in_support = |i: usize| {
            highlight
                .map(|f| f.support.contains(&i))
                .unwrap_or(false)
        };
        let mut out = String::from("graph dualgraph {\n  node [shape=circle];\n");
        for i in 0..self.len() {
            let style = if in_support(i) { " [style=dashed]" } else { "" };
            out.push_str(&format!("  \"{}\"{};\n", self.labels[i], style));
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let w = &self.gram[(i, j)];
                if w.is_zero() {
                    continue;
                }
                let mut attrs = Vec::new();
                if *w >= BigInt::from(2) {
                    attrs.push(format!("label=\"{w}\""));
                }
                if in_support(i) && in_support(j) {
                    attrs.push("style=dashed".into());
                }
                let attr = if attrs.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", attrs.join(", "))
                };
                out.push_str(&format!(
                    "  \"{}\" -- \"{}\"{};\n",
                    self.labels[i], self.labels[j], attr
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Automorphism group (vertex permutations preserving the weighted
    /// adjacency), by backtracking.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        // invariant per vertex: multiset of incident weights
        let sig: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut s: Vec<BigInt> =
                    (0..n).filter(|&j| j != i).map(|j| self.gram[(i, j)].clone()).collect();
                s.sort();
                s
            })
            .collect();
        let mut out = Vec::new();
        let mut perm: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        fn bt(
            g: &DualGraph,
            sig: &[Vec<BigInt>],
            i: usize,
            perm: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = g.len();
            if i == n {
                out.push(perm.iter().map(|p| p.unwrap()).collect());
                return;
            }
            for t in 0..n {
                if used[t] || sig[i] != sig[t] {
                    continue;
                }
                // adjacency consistency with already-assigned vertices
                let ok = (0..i).all(|j| {
                    let pj = perm[j].unwrap();
                    g.gram[(i, j)] == g.gram[(t, pj)]
                });
                if !ok {
                    continue;
                }
                perm[i] = Some(t);
                used[t] = true;
                bt(g, sig, i + 1, perm, used, out);
                perm[i] = None;
                used[t] = false;
            }
        }
        bt(self, &sig, 0, &mut perm, &mut used, &mut out);
        out
    }
}

/// Affine Dynkin shapes recognized as fiber configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffineType {
    /// cycle on n+1 >= 3 vertices (A~n, n >= 2)
    A(usize),
    /// two vertices joined by a double edge (A~1)
    A1Double,
    /// D~n, n >= 4 (n+1 vertices)
    D(usize),
    /// E~6, E~7, E~8
    E(usize),
}

impl AffineType {
    pub fn name(&self) -> String {
        match self {
            AffineType::A(n) => format!("A{n}~"),
            AffineType::A1Double => "A1~".into(),
            AffineType::D(n) => format!("D{n}~"),
            AffineType::E(n) => format!("E{n}~"),
        }
    }

    /// Kodaira types compatible with this configuration at Gram level.
    pub fn kodaira_candidates(&self) -> Vec<KodairaType> {
        match self {
            AffineType::A1Double => vec![KodairaType::I(2), KodairaType::III],
            AffineType::A(2) => vec![KodairaType::I(3), KodairaType::IV],
            AffineType::A(n) => vec![KodairaType::I(n + 1)],
            AffineType::D(n) => vec![KodairaType::IStar(n - 4)],
            AffineType::E(6) => vec![KodairaType::IVStar],
            AffineType::E(7) => vec![KodairaType::IIIStar],
            AffineType::E(8) => vec![KodairaType::IIStar],
            AffineType::E(_) => unreachable!(),
        }
    }
}

/// Half-fiber status of a fiber class, relative to the saturated (E10) model
/// when one exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halfness {
    /// some outside vertex pairs oddly: the class is primitive, a half-fiber
    HalfFiber,
    /// all pairings even and class/2 lies in the saturated lattice
    SimpleFiberCandidate,
    /// all pairings even, class/2 not realizable (or no model to decide)
    Ambiguous,
}

/// A fiber configuration found in the graph: an induced affine Dynkin
/// subdiagram with its canonical marks.
#[derive(Clone, Debug)]
pub struct GraphFiber {
    pub affine: AffineType,
    /// vertex indices, sorted
    pub support: Vec<usize>,
    /// full-length multiplicity vector over the graph vertices
    pub marks: Vec<BigInt>,
    pub halfness: Halfness,
    /// pairings marks.v for vertices outside the support (label, value)
    pub outside_pairings: Vec<(usize, BigInt)>,
}

impl GraphFiber {
    pub fn kodaira_candidates(&self) -> Vec<KodairaType> {
        self.affine.kodaira_candidates()
    }

    pub fn has_odd_pairing(&self) -> bool {
        self.outside_pairings
            .iter()
            .any(|(_, v)| !(v % BigInt::from(2)).is_zero())
    }

    pub fn support_labels(&self, g: &DualGraph) -> Vec<String> {
        self.support.iter().map(|&i| g.label(i).to_string()).collect()
    }
}

/// Recognize the induced subgraph on `support` as an affine Dynkin diagram;
/// returns type and marks on success.
pub fn recognize_affine(g: &DualGraph, support: &[usize]) -> Option<(AffineType, Vec<BigInt>)> {
    let k = support.len();
    if k < 2 {
        return None;
    }
    // connectivity
    let mut seen = vec![support[0]];
    let mut stack = vec![support[0]];
    while let Some(v) = stack.pop() {
        for w in g.neighbors_in(v, support) {
            if !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    if seen.len() != k {
        return None;
    }
    let heavy: Vec<(usize, usize)> = support
        .iter()
        .flat_map(|&i| {
            support
                .iter()
                .filter(move |&&j| j > i)
                .map(move |&j| (i, j))
        })
        .filter(|&(i, j)| g.weight(i, j) >= &BigInt::from(2))
        .collect();
    let mut marks = vec![BigInt::zero(); g.len()];
    if !heavy.is_empty() {
        if k == 2 && heavy.len() == 1 && g.weight(support[0], support[1]) == &BigInt::from(2) {
            marks[support[0]] = BigInt::one();
            marks[support[1]] = BigInt::one();
            return Some((AffineType::A1Double, marks));
        }
        return None;
    }
    let deg = |i: usize| g.neighbors_in(i, support).len();
    let degs: Vec<usize> = support.iter().map(|&i| deg(i)).collect();
    let dmax = *degs.iter().max().unwrap();
    if dmax == 2 && degs.iter().all(|&d| d == 2) {
        // cycle: A~(k-1), k >= 3
        for &i in support {
            marks[i] = BigInt::one();
        }
        return Some((AffineType::A(k - 1), marks));
    }
    if dmax > 4 || degs.iter().filter(|&&d| d >= 3).count() > 2 {
        return None;
    }
    let deg4: Vec<usize> = support.iter().copied().filter(|&i| deg(i) == 4).collect();
    let deg3: Vec<usize> = support.iter().copied().filter(|&i| deg(i) == 3).collect();
    if deg4.len() == 1 && deg3.is_empty() {
        // D~4: star with four leaves
        if k == 5 && support.iter().all(|&i| i == deg4[0] || deg(i) == 1) {
            marks[deg4[0]] = BigInt::from(2);
            for &i in support {
                if i != deg4[0] {
                    marks[i] = BigInt::one();
                }
            }
            return Some((AffineType::D(4), marks));
        }
        return None;
    }
    if !deg4.is_empty() {
        return None;
    }
    match deg3.len() {
        2 => {
            // D~n, n >= 5: two fork vertices, each with two leaves, joined by a chain
            let (a, b) = (deg3[0], deg3[1]);
            let leaves_a: Vec<usize> = g
                .neighbors_in(a, support)
                .into_iter()
                .filter(|&x| deg(x) == 1)
                .collect();
            let leaves_b: Vec<usize> = g
                .neighbors_in(b, support)
                .into_iter()
                .filter(|&x| deg(x) == 1)
                .collect();
            if leaves_a.len() != 2 || leaves_b.len() != 2 {
                return None;
            }
            let chain: Vec<usize> = support
                .iter()
                .copied()
                .filter(|i| !leaves_a.contains(i) && !leaves_b.contains(i))
                .collect();
            if chain.iter().any(|&i| i != a && i != b && deg(i) != 2) {
                return None;
            }
            for &i in &leaves_a {
                marks[i] = BigInt::one();
            }
            for &i in &leaves_b {
                marks[i] = BigInt::one();
            }
            for &i in &chain {
                marks[i] = BigInt::from(2);
            }
            Some((AffineType::D(k - 1), marks))
        }
        1 => {
            // star with three arms: E~6 (2,2,2), E~7 (1,3,3), E~8 (1,2,5)
            let c = deg3[0];
            let mut arms: Vec<Vec<usize>> = Vec::new();
            for s in g.neighbors_in(c, support) {
                let mut arm = vec![s];
                let mut prev = c;
                let mut cur = s;
                loop {
                    let next: Vec<usize> = g
                        .neighbors_in(cur, support)
                        .into_iter()
                        .filter(|&x| x != prev)
                        .collect();
                    match next.len() {
                        0 => break,
                        1 => {
                            prev = cur;
                            cur = next[0];
                            arm.push(cur);
                        }
                        _ => return None,
                    }
                }
                arms.push(arm);
            }
            if arms.len() != 3 || arms.iter().map(|a| a.len()).sum::<usize>() + 1 != k {
                return None;
            }
            arms.sort_by_key(|a| a.len());
            let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            match lens.as_slice() {
                [2, 2, 2] => {
                    marks[c] = BigInt::from(3);
                    for arm in &arms {
                        marks[arm[0]] = BigInt::from(2);
                        marks[arm[1]] = BigInt::one();
                    }
                    Some((AffineType::E(6), marks))
                }
                [1, 3, 3] => {
                    marks[c] = BigInt::from(4);
                    marks[arms[0][0]] = BigInt::from(2);
                    for arm in &arms[1..] {
                        marks[arm[0]] = BigInt::from(3);
                        marks[arm[1]] = BigInt::from(2);
                        marks[arm[2]] = BigInt::one();
                    }
                    Some((AffineType::E(7), marks))
                }
                [1, 2, 5] => {
                    marks[c] = BigInt::from(6);
                    marks[arms[0][0]] = BigInt::from(3);
                    marks[arms[1][0]] = BigInt::from(4);
                    marks[arms[1][1]] = BigInt::from(2);
                    for (t, m) in arms[2].iter().zip([5i64, 4, 3, 2, 1]) {
                        marks[*t] = BigInt::from(m);
                    }
                    Some((AffineType::E(8), marks))
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// All affine-Dynkin fiber configurations of the graph, by a connected-subset
/// search pruned on degrees and heavy edges. Halfness is computed against
/// the graph model (see `GraphModel`). Deterministic sorted output.
pub fn enumerate_fibers(g: &DualGraph) -> Vec<GraphFiber> {
    let model = GraphModel::build(g);
    enumerate_fibers_with_model(g, &model)
}

pub(crate) fn enumerate_fibers_with_model(g: &DualGraph, model: &GraphModel) -> Vec<GraphFiber> {
    let mut fibers = Vec::new();
    for support in connected_subsets(g) {
        if let Some((affine, marks)) = recognize_affine(g, &support) {
            // invariant checks: iso class isotropic and orthogonal to support
            let lat = g.gram();
            debug_assert!(lat.norm(&marks).is_zero());
            let pair = lat.gram().mul_vec(&marks);
            debug_assert!(support.iter().all(|&i| pair[i].is_zero()));
            let outside_pairings: Vec<(usize, BigInt)> = (0..g.len())
                .filter(|i| !support.contains(i))
                .map(|i| (i, pair[i].clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let odd = outside_pairings
                .iter()
                .any(|(_, v)| !(v % BigInt::from(2)).is_zero());
            let halfness = if odd {
                Halfness::HalfFiber
            } else {
                match model.half_in_saturation(&marks) {
                    Some(true) => Halfness::SimpleFiberCandidate,
                    _ => Halfness::Ambiguous,
                }
            };
            fibers.push(GraphFiber { affine, support, marks, halfness, outside_pairings });
        }
    }
    fibers.sort_by(|a, b| {
        a.support
            .len()
            .cmp(&b.support.len())
            .then_with(|| a.support.cmp(&b.support))
    });
    fibers
}

/// Enumerate connected vertex subsets of size >= 2, pruned: no vertex of
/// induced degree > 4 (no affine diagram has one). Each subset is generated
/// exactly once, rooted at its minimal vertex.
pub(crate) fn connected_subsets(g: &DualGraph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut out = Vec::new();
    for start in 0..n {
        let mut current = vec![start];
        let frontier: Vec<usize> =
            g.neighbors(start).into_iter().filter(|&x| x > start).collect();
        let banned: Vec<usize> = Vec::new();
        grow(g, start, &mut current, frontier, banned, &mut out);
    }
    out
}

fn grow(
    g: &DualGraph,
    start: usize,
    current: &mut Vec<usize>,
    frontier: Vec<usize>,
    mut banned: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() >= 2 {
        let mut s = current.clone();
        s.sort();
        out.push(s);
    }
    for (idx, &v) in frontier.iter().enumerate() {
        current.push(v);
        // degree pruning: adding v must keep every induced degree <= 4
        let ok = current.iter().all(|&x| g.neighbors_in(x, current).len() <= 4);
        if ok {
            let mut next: Vec<usize> = frontier[idx + 1..].to_vec();
            for w in g.neighbors(v) {
                if w > start
                    && !current.contains(&w)
                    && !frontier.contains(&w)
                    && !banned.contains(&w)
                {
                    next.push(w);
                }
            }
            grow(g, start, current, next, banned.clone(), out);
        }
        current.pop();
        banned.push(v);
    }
}
