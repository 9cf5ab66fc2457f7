//! Saturated lattice model of a dual graph, fibration profiles, the unique
//! non-extremal fibration search, and the classification contradiction scan.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{enumerate_fibers_with_model, AffineType, DualGraph, GraphError, GraphFiber};
use crate::arith::ratmat::{int_vec_to_rat, RatVec};
use crate::arith::IntMatrix;
use crate::fibration::{FiberConfiguration, KodairaType};
use crate::lattice::{
    primitive_closure, primitive_vector, Lattice, Overlattice, RootSystemType,
};

/// Lattice-side model of a dual graph: the non-degenerate quotient of the
/// vertex span and, when the graph spans a copy of E10, a distinguished even
/// unimodular overlattice.
pub struct GraphModel {
    /// Z^V modulo the radical of the intersection form.
    pub reduced: Lattice,
    /// Image of each vertex in the reduced lattice.
    pub vertex_classes: Vec<Vec<BigInt>>,
    /// Even unimodular overlattice of signature (1, 9), when one exists.
    pub e10: Option<Overlattice>,
}

impl GraphModel {
    pub fn build(g: &DualGraph) -> GraphModel {
        let lat = g.gram();
        let (reduced, vertex_classes) = lat.mod_radical();
        let e10 = Self::find_e10(g, &reduced, &vertex_classes);
        GraphModel { reduced, vertex_classes, e10 }
    }

    /// Reduce a full-length Z^V class to reduced coordinates.
    pub fn reduce_class(&self, marks: &[BigInt]) -> Vec<BigInt> {
        let n = self.reduced.rank();
        let mut out = vec![BigInt::zero(); n];
        for (v, cls) in marks.iter().zip(self.vertex_classes.iter()) {
            if v.is_zero() {
                continue;
            }
            for i in 0..n {
                out[i] += v * &cls[i];
            }
        }
        out
    }

    /// Does marks/2 lie in the saturated lattice? None when no model exists.
    pub fn half_in_saturation(&self, marks: &[BigInt]) -> Option<bool> {
        let s = self.e10.as_ref()?;
        let c = self.reduce_class(marks);
        let half: RatVec = c
            .iter()
            .map(|x| BigRational::new(x.clone(), BigInt::from(2)))
            .collect();
        Some(s.contains(&half))
    }

    /// Is marks/2 dual-integral (pairs integrally with every vertex)? This is
    /// the model-independent necessary condition for the simple-fiber branch.
    pub fn half_is_dual_integral(&self, marks: &[BigInt]) -> bool {
        let c = self.reduce_class(marks);
        let pair = self.reduced.gram().mul_vec(&c);
        pair.iter().all(|x| (x % BigInt::from(2)).is_zero())
    }

    fn find_e10(
        g: &DualGraph,
        reduced: &Lattice,
        classes: &[Vec<BigInt>],
    ) -> Option<Overlattice> {
        if reduced.rank() != 10 || reduced.signature() != (1, 9, 0) || !reduced.is_even() {
            return None;
        }
        let det = reduced.det();
        if det.abs() == BigInt::one() {
            // already unimodular
            let disc = reduced.discriminant_group().ok()?;
            return reduced
                .overlattice_from_glue(&disc, &[vec![0u64; disc.invariant_factors.len()]])
                .ok();
        }
        // canonical glue: generated by the half-classes of even-pairing fibers
        let candidates: Vec<Overlattice> = reduced
            .even_overlattices()
            .ok()?
            .into_iter()
            .filter(|m| m.lattice.det().abs() == BigInt::one())
            .collect();
        if candidates.is_empty() {
            return None;
        }
        // fiber half-classes that are dual-integral
        let mut halves: Vec<RatVec> = Vec::new();
        for support in super::connected_subsets(g) {
            if let Some((_, marks)) = super::recognize_affine(g, &support) {
                let mut c = vec![BigInt::zero(); reduced.rank()];
                for (v, cls) in marks.iter().zip(classes.iter()) {
                    if v.is_zero() {
                        continue;
                    }
                    for i in 0..reduced.rank() {
                        c[i] += v * &cls[i];
                    }
                }
                let pair = reduced.gram().mul_vec(&c);
                if pair.iter().all(|x| (x % BigInt::from(2)).is_zero()) {
                    halves.push(
                        c.iter()
                            .map(|x| BigRational::new(x.clone(), BigInt::from(2)))
                            .collect(),
                    );
                }
            }
        }
        // pick the candidate containing all fiber half-classes when one
        // exists (the geometric saturation), otherwise the first candidate
        if let Some(m) = candidates.iter().find(|m| halves.iter().all(|h| m.contains(h))) {
            return Some(m.clone());
        }
        candidates.into_iter().next()
    }
}

/// True iff the graph's vertex span saturates to a copy of E10: the reduced
/// lattice has signature (1, 9), is even, and admits an even unimodular
/// overlattice.
pub fn span_is_e10(g: &DualGraph) -> bool {
    GraphModel::build(g).e10.is_some()
}

/// One visible component of the set of vertices orthogonal to a fiber class.
#[derive(Clone, Debug)]
pub struct VisibleFiber {
    pub vertices: Vec<usize>,
    /// complete affine diagram, when the component is one
    pub affine: Option<AffineType>,
    /// Kodaira candidates (empty unless complete affine)
    pub kodaira_candidates: Vec<KodairaType>,
    /// finite ADE type of the component's root span (for incomplete pieces)
    pub finite_type: Option<RootSystemType>,
}

/// Lattice-visible data of the genus-1 fibration induced by a fiber class.
#[derive(Clone, Debug)]
pub struct FibrationProfile {
    pub visible: Vec<VisibleFiber>,
    pub orthogonal_root_rank: usize,
    pub orthogonal_root_type: Option<RootSystemType>,
    pub extremal_compatible: bool,
}

/// Profile of |2F| for the fiber class `f`: components of the vertices
/// orthogonal to f, the rank of their span modulo f, and the induced root
/// type.
pub fn fibration_profile(
    g: &DualGraph,
    model: &GraphModel,
    fiber: &GraphFiber,
) -> Result<FibrationProfile, GraphError> {
    let lat = g.gram();
    if !lat.norm(&fiber.marks).is_zero() {
        return Err(GraphError::NotIsotropic);
    }
    let pair = lat.gram().mul_vec(&fiber.marks);
    let perp: Vec<usize> = (0..g.len()).filter(|&i| pair[i].is_zero()).collect();
    // connected components of the perp set
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut left: Vec<usize> = perp.clone();
    while let Some(start) = left.first().copied() {
        let mut comp = vec![start];
        left.retain(|&x| x != start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let adj: Vec<usize> = left
                .iter()
                .copied()
                .filter(|&w| !g.weight(v, w).is_zero())
                .collect();
            for w in adj {
                left.retain(|&x| x != w);
                comp.push(w);
                stack.push(w);
            }
        }
        comp.sort();
        comps.push(comp);
    }
    comps.sort();
    let mut visible = Vec::new();
    for comp in &comps {
        let rec = super::recognize_affine(g, comp);
        let (affine, kodaira_candidates, finite_type) = match rec {
            Some((t, _)) => (Some(t), t.kodaira_candidates(), None),
            None => {
                let vecs: Vec<Vec<BigInt>> =
                    comp.iter().map(|&i| model.vertex_classes[i].clone()).collect();
                let gram = crate::lattice::sublattice_gram(&model.reduced, &vecs);
                let ft = Lattice::new(gram)
                    .ok()
                    .and_then(|l| l.ade_type().ok());
                (None, vec![], ft)
            }
        };
        visible.push(VisibleFiber {
            vertices: comp.clone(),
            affine,
            kodaira_candidates,
            finite_type,
        });
    }
    // rank of the perp span modulo the fiber ray
    let perp_classes: Vec<Vec<BigInt>> =
        perp.iter().map(|&i| model.vertex_classes[i].clone()).collect();
    let rank = if perp_classes.is_empty() {
        0
    } else {
        IntMatrix::from_columns(&perp_classes).rank()
    };
    debug_assert!(rank >= 1);
    let orthogonal_root_rank = rank.saturating_sub(1);
    // induced root type of the quotient (saturation of the span, mod radical)
    let orthogonal_root_type = if perp_classes.is_empty() {
        None
    } else {
        primitive_closure(&model.reduced, &perp_classes)
            .ok()
            .map(|(w, _)| w.mod_radical().0)
            .and_then(|q| q.ade_type().ok())
    };
    Ok(FibrationProfile {
        visible,
        orthogonal_root_rank,
        orthogonal_root_type,
        extremal_compatible: orthogonal_root_rank == 8,
    })
}

/// Result of the unique-non-extremal search.
#[derive(Debug)]
pub enum NonExtremalResult {
    /// exactly one non-extremal fiber ray (up to graph symmetry); the
    /// canonical representative is returned
    Unique(GraphFiber),
    NotUnique(Vec<GraphFiber>),
}

/// The fibers whose profile has orthogonal root rank < 8, deduplicated by
/// ray and by graph automorphism; Unique when a single class remains.
pub fn unique_nonextremal(g: &DualGraph) -> Result<NonExtremalResult, GraphError> {
    let model = GraphModel::build(g);
    let fibers = enumerate_fibers_with_model(g, &model);
    let mut nonextremal: Vec<(Vec<BigInt>, GraphFiber)> = Vec::new();
    let mut seen_rays: Vec<Vec<BigInt>> = Vec::new();
    for f in fibers {
        let ray = primitive_vector(&model.reduce_class(&f.marks));
        if seen_rays.contains(&ray) {
            continue;
        }
        let profile = fibration_profile(g, &model, &f)?;
        if !profile.extremal_compatible {
            nonextremal.push((ray.clone(), f));
        }
        seen_rays.push(ray);
    }
    if nonextremal.len() <= 1 {
        return Ok(match nonextremal.into_iter().next() {
            Some((_, f)) => NonExtremalResult::Unique(f),
            None => NonExtremalResult::NotUnique(vec![]),
        });
    }
    // quotient by graph automorphisms acting on ray representatives
    let autos = g.automorphisms();
    let ray_of = |marks: &[BigInt]| -> Vec<BigInt> {
        primitive_vector(&model.reduce_class(marks))
    };
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let rays: Vec<Vec<BigInt>> = nonextremal.iter().map(|(r, _)| r.clone()).collect();
    let mut assigned = vec![false; nonextremal.len()];
    for i in 0..nonextremal.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit = vec![i];
        assigned[i] = true;
        for perm in &autos {
            // permute the marks vector of fiber i
            let marks = &nonextremal[i].1.marks;
            let mut permuted = vec![BigInt::zero(); marks.len()];
            for (v, &t) in perm.iter().enumerate() {
                permuted[t] = marks[v].clone();
            }
            let r = ray_of(&permuted);
            for (j, rj) in rays.iter().enumerate() {
                if !assigned[j] && *rj == r {
                    assigned[j] = true;
                    orbit.push(j);
                }
            }
        }
        orbits.push(orbit);
    }
    if orbits.len() == 1 {
        // canonical representative: lexicographically smallest support labels
        let mut best: Option<&GraphFiber> = None;
        for &i in &orbits[0] {
            let f = &nonextremal[i].1;
            let better = match best {
                None => true,
                Some(b) => f.support_labels(g) < b.support_labels(g),
            };
            if better {
                best = Some(f);
            }
        }
        return Ok(NonExtremalResult::Unique(best.unwrap().clone()));
    }
    Ok(NonExtremalResult::NotUnique(
        nonextremal.into_iter().map(|(_, f)| f).collect(),
    ))
}

/// Which allowed-configuration list a scan checks against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanRule {
    PropAlternative,
    CorAlternative,
    LemmaExcludeXx,
}

impl ScanRule {
    pub fn configs(&self) -> &'static [&'static [KodairaType]] {
        match self {
            ScanRule::PropAlternative => crate::fibration::PROP_ALTERNATIVE_CONFIGS,
            ScanRule::CorAlternative => crate::fibration::COR_ALTERNATIVE_CONFIGS,
            ScanRule::LemmaExcludeXx => crate::fibration::LEMMA_EXCLUDE_XX_CONFIGS,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScanRule::PropAlternative => "prop-alternative",
            ScanRule::CorAlternative => "cor-alternative",
            ScanRule::LemmaExcludeXx => "lemma-exclude-xx",
        }
    }
}

/// A fiber class F2 admitting a half-fiber interpretation with F0.F2 = 1
/// whose visible profile cannot be completed to an allowed configuration.
#[derive(Clone, Debug)]
pub struct Violation {
    pub fiber_support: Vec<String>,
    pub affine: AffineType,
    pub kodaira_candidates: Vec<KodairaType>,
    /// normalized pairing F0.F2 (always 1 for a recorded violation)
    pub pairing: BigRational,
    /// whether the F0 resp. F2 branch used class/2
    pub f0_halved: bool,
    pub f2_halved: bool,
    pub rule: ScanRule,
    pub visible_affine: Vec<AffineType>,
}

impl Violation {
    pub fn kind(&self) -> String {
        self.kodaira_candidates
            .iter()
            .map(|k| k.label())
            .collect::<Vec<_>>()
            .join("/")
    }
}

/// Half-fiber branch classes of a fiber (rational, reduced coordinates).
fn half_fiber_branches(model: &GraphModel, f: &GraphFiber) -> Vec<(RatVec, bool)> {
    let c = model.reduce_class(&f.marks);
    let full: RatVec = int_vec_to_rat(&c);
    if f.has_odd_pairing() {
        // odd pairing certifies primitivity: the class is the half-fiber
        return vec![(full, false)];
    }
    let mut out = vec![(full.clone(), false)];
    // the class/2 branch: requires dual integrality; when an E10 model exists
    // membership in the saturation is also checked, but the branch is still
    // explored whenever it is consistent with some completion
    if model.half_is_dual_integral(&f.marks) {
        let half: RatVec = full
            .iter()
            .map(|x| x / BigRational::from_integer(BigInt::from(2)))
            .collect();
        out.push((half, true));
    }
    out
}

/// Can the visible affine fibers be completed to one of the allowed
/// configurations? Each complete affine component must match a distinct slot.
fn profile_compatible(visible: &[VisibleFiber], configs: &[&[KodairaType]]) -> bool {
    let affine_sets: Vec<&Vec<KodairaType>> = visible
        .iter()
        .filter(|v| v.affine.is_some())
        .map(|v| &v.kodaira_candidates)
        .collect();
    configs.iter().any(|cfg| {
        fn assign(
            sets: &[&Vec<KodairaType>],
            cfg: &[KodairaType],
            used: &mut Vec<bool>,
            i: usize,
        ) -> bool {
            if i == sets.len() {
                return true;
            }
            for (j, slot) in cfg.iter().enumerate() {
                if !used[j] && sets[i].contains(slot) {
                    used[j] = true;
                    if assign(sets, cfg, used, i + 1) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        let mut used = vec![false; cfg.len()];
        assign(&affine_sets, cfg, &mut used, 0)
    })
}

/// Scan with the default branch derivation and the widest allowed list.
pub fn contradiction_scan_auto(
    g: &DualGraph,
    f0: &GraphFiber,
) -> Result<Vec<Violation>, GraphError> {
    let model = GraphModel::build(g);
    let branches = half_fiber_branches(&model, f0);
    contradiction_scan_with_model(g, &model, f0, &branches, ScanRule::PropAlternative)
}

/// Scan for violations: fibers F2 with a half-fiber interpretation pairing
/// F0.F2 = 1 whose visible profile fails the rule's allowed list.
pub fn contradiction_scan(
    g: &DualGraph,
    f0: &GraphFiber,
    f0_branches: &[(RatVec, bool)],
    rule: ScanRule,
) -> Result<Vec<Violation>, GraphError> {
    let model = GraphModel::build(g);
    contradiction_scan_with_model(g, &model, f0, f0_branches, rule)
}

pub(crate) fn contradiction_scan_with_model(
    g: &DualGraph,
    model: &GraphModel,
    f0: &GraphFiber,
    f0_branches: &[(RatVec, bool)],
    rule: ScanRule,
) -> Result<Vec<Violation>, GraphError> {
    let fibers = enumerate_fibers_with_model(g, model);
    let f0_ray = primitive_vector(&model.reduce_class(&f0.marks));
    let gram = crate::arith::ratmat::RatMatrix::from_int(model.reduced.gram());
    let mut out = Vec::new();
    for f2 in &fibers {
        let ray = primitive_vector(&model.reduce_class(&f2.marks));
        if ray == f0_ray {
            continue;
        }
        for (c2, f2_halved) in half_fiber_branches(model, f2) {
            for (c0, f0_halved) in f0_branches {
                let pairing: BigRational = {
                    let gy = gram.mul_vec(&c2);
                    c0.iter().zip(gy.iter()).map(|(a, b)| a * b).sum()
                };
                if pairing != BigRational::one() {
                    continue;
                }
                let profile = fibration_profile(g, model, f2)?;
                if !profile_compatible(&profile.visible, rule.configs()) {
                    out.push(Violation {
                        fiber_support: f2.support_labels(g),
                        affine: f2.affine,
                        kodaira_candidates: f2.kodaira_candidates(),
                        pairing: pairing.clone(),
                        f0_halved: *f0_halved,
                        f2_halved,
                        rule,
                        visible_affine: profile
                            .visible
                            .iter()
                            .filter_map(|v| v.affine)
                            .collect(),
                    });
                }
            }
        }
    }
    // deterministic order, deduplicated by (support, branches)
    out.sort_by(|a, b| {
        a.fiber_support
            .cmp(&b.fiber_support)
            .then(a.f0_halved.cmp(&b.f0_halved))
            .then(a.f2_halved.cmp(&b.f2_halved))
    });
    out.dedup_by(|a, b| {
        a.fiber_support == b.fiber_support && a.f0_halved == b.f0_halved && a.f2_halved == b.f2_halved
    });
    Ok(out)
}

/// Branches of a designated F0 per hypothesis.
pub fn f0_branches_for(
    model: &GraphModel,
    f0: &GraphFiber,
    hypothesis: super::catalog::F0Hypothesis,
) -> Vec<(RatVec, bool)> {
    use super::catalog::F0Hypothesis::*;
    let c = model.reduce_class(&f0.marks);
    let full: RatVec = int_vec_to_rat(&c);
    let half: RatVec = full
        .iter()
        .map(|x| x / BigRational::from_integer(BigInt::from(2)))
        .collect();
    match hypothesis {
        Half => vec![(full, false)],
        SimpleFiber => vec![(half, true)],
        Auto => half_fiber_branches(model, f0),
    }
}

/// The visible reducible fibers of a profile as a FiberConfiguration using
/// the first Kodaira candidate of each complete affine component.
pub fn profile_configuration(profile: &FibrationProfile) -> FiberConfiguration {
    let types: Vec<KodairaType> = profile
        .visible
        .iter()
        .filter_map(|v| v.kodaira_candidates.first().copied())
        .collect();
    FiberConfiguration::simple(&types)
}
