//! Exact homogeneous polynomial arithmetic over Q, Q(i) and F_{2^k}; the
//! discriminant analysis of the torsion-section Weierstrass family
//! y^2 = x^3 + 2 a2(s,t) x^2 + t^4 x; brute-force verification of the
//! isotrivial characteristic-2 automorphism computation.

pub mod char2;
pub mod fields;

pub use char2::{char2_isotrivial_auts, Char2Solution};
pub use fields::{Field, FieldElem, FieldError, GaussRat, Rat, F2k};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeierstrassError {
    #[error("the family is degenerate: a = 0 or c^2 = 1 or repeated discriminant root")]
    InfiniteAutBroken,
    #[error("roots must be four distinct non-zero values")]
    BadRoots,
    #[error("degree mismatch in homogeneous arithmetic")]
    DegreeMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Homogeneous bivariate polynomial of fixed degree d: coefficients
/// c0..cd of s^d, s^(d-1) t, ..., t^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly<F: Field> {
    pub coeffs: Vec<F>,
}

impl<F: Field> HomPoly<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty());
        HomPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, WeierstrassError> {
        if self.degree() != other.degree() {
            return Err(WeierstrassError::DegreeMismatch);
        }
        Ok(HomPoly::new(
            self.coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree() + other.degree();
        let zero = self.coeffs[0].zero();
        let mut out = vec![zero; d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        HomPoly::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        HomPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Evaluate at (s, t) = (x, 1): the dehomogenization as a coefficient
    /// list lowest degree (in x) first.
    pub fn dehomogenize(&self) -> Vec<F> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }

    /// P(lambda s, t).
    pub fn scale_s(&self, lambda: &F) -> Self {
        let d = self.degree();
        let mut pw = self.coeffs[0].one();
        let mut out = self.coeffs.clone();
        // coefficient of s^(d-i) t^i picks up lambda^(d-i)
        for i in (0..=d).rev() {
            out[i] = out[i].mul(&pw);
            pw = pw.mul(lambda);
        }
        HomPoly::new(out)
    }

    /// Substitute (s, t) -> (s^2, t^2): degree doubles, odd slots vanish.
    pub fn square_substitution(&self) -> Self {
        let d = self.degree();
        let zero = self.coeffs[0].zero();
        let mut out = vec![zero; 2 * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        HomPoly::new(out)
    }

    pub fn eval(&self, s: &F, t: &F) -> F {
        let d = self.degree();
        let mut acc = self.coeffs[0].zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..(d - i) {
                term = term.mul(s);
            }
            for _ in 0..i {
                term = term.mul(t);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Proportionality test: self = c * other for some non-zero c.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let pairs: Vec<(&F, &F)> = self.coeffs.iter().zip(other.coeffs.iter()).collect();
        let mut ratio: Option<F> = None;
        for (a, b) in &pairs {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let r = a.mul(&b.inv().expect("non-zero"));
                    match &ratio {
                        None => ratio = Some(r),
                        Some(r0) => {
                            if *r0 != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// The a2 = a s^2 + b s t + c t^2 family of extremal-with-torsion Jacobians
/// (characteristic != 2).
#[derive(Clone, Debug)]
pub struct BPFamily<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: Field> BPFamily<F> {
    pub fn new(a: F, b: F, c: F) -> Self {
        assert!(!a.char_two(), "family requires characteristic != 2");
        BPFamily { a, b, c }
    }

    fn two(&self) -> F {
        let one = self.a.one();
        one.add(&one)
    }

    /// Does the proof's normalization hold: a != 0 and c^2 != 1?
    pub fn normalized(&self) -> bool {
        let one = self.a.one();
        !self.a.is_zero() && self.c.mul(&self.c) != one
    }
}

/// Delta0 = a2^2 - t^4 with coefficient vector
/// [a^2, 2ab, 2ac + b^2, 2bc, c^2 - 1].
pub fn delta0<F: Field>(f: &BPFamily<F>) -> HomPoly<F> {
    let two = f.two();
    let one = f.a.one();
    let c0 = f.a.mul(&f.a);
    let c1 = two.mul(&f.a).mul(&f.b);
    let c2 = two.mul(&f.a).mul(&f.c).add(&f.b.mul(&f.b));
    let c3 = two.mul(&f.b).mul(&f.c);
    let c4 = f.c.mul(&f.c).sub(&one);
    let out = HomPoly::new(vec![c0, c1, c2, c3, c4]);
    // cross-check against the defining expansion (a s^2 + b s t + c t^2)^2 - t^4
    debug_assert!({
        let a2 = HomPoly::new(vec![f.a.clone(), f.b.clone(), f.c.clone()]);
        let mut t4 = vec![f.a.zero(); 5];
        t4[4] = one;
        let direct = a2.mul(&a2).add(&HomPoly::new(t4).scale(&f.a.one().neg())).unwrap();
        direct == out
    });
    out
}

/// gcd of univariate coefficient lists over a field (monic result).
fn poly_gcd_field<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    fn trim<F: Field>(v: &mut Vec<F>) {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    }
    fn rem<F: Field>(f: &[F], g: &[F]) -> Vec<F> {
        let mut r = f.to_vec();
        trim(&mut r);
        let dg = g.len() - 1;
        let lead_inv = g.last().unwrap().inv().expect("non-zero lead");
        while r.len() >= g.len() && !r.is_empty() {
            let c = r.last().unwrap().mul(&lead_inv);
            let dr = r.len() - 1;
            for (j, gc) in g.iter().enumerate() {
                let t = c.mul(gc);
                r[dr - dg + j] = r[dr - dg + j].sub(&t);
            }
            trim(&mut r);
        }
        r
    }
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    trim(&mut f);
    trim(&mut g);
    if f.is_empty() {
        return g;
    }
    while !g.is_empty() {
        let r = rem(&f, &g);
        f = g;
        g = r;
    }
    // make monic
    let li = f.last().unwrap().inv().expect("non-zero");
    f.iter().map(|c| c.mul(&li)).collect()
}

fn derivative_field<F: Field>(p: &[F]) -> Vec<F> {
    if p.len() <= 1 {
        return vec![];
    }
    let one = p[0].one();
    let mut k = one.zero();
    let mut out = Vec::with_capacity(p.len() - 1);
    for c in p.iter().skip(1) {
        k = k.add(&one);
        out.push(c.mul(&k));
    }
    out
}

/// Root multiplicities of the full discriminant Delta = -64 t^8 Delta0:
/// the multiset {8} plus the multiplicities of Delta0. Errors when the
/// normalization a != 0, c^2 != 1 fails or Delta0 has a repeated root.
pub fn full_discriminant_degrees<F: Field>(
    f: &BPFamily<F>,
) -> Result<Vec<usize>, WeierstrassError> {
    if !f.normalized() {
        return Err(WeierstrassError::InfiniteAutBroken);
    }
    let d0 = delta0(f);
    // a != 0 and c^2 != 1 guarantee no roots at [1:0] or [0:1]; dehomogenize
    let p = d0.dehomogenize();
    // square-free iff gcd(p, p') constant
    let g = poly_gcd_field(&p, &derivative_field(&p));
    if g.len() > 1 {
        return Err(WeierstrassError::InfiniteAutBroken);
    }
    // four simple roots of Delta0 plus the multiplicity-8 locus at t = 0
    let mut out = vec![8, 1, 1, 1, 1];
    out.sort_unstable_by(|x, y| y.cmp(x));
    debug_assert_eq!(out.iter().sum::<usize>(), 12);
    Ok(out)
}

/// Subgroup of mu_4 preserving the roots of Delta0, found by exact
/// coefficient comparison of Delta0(lambda s, t) against Delta0 over Q(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSymmetries {
    /// order n of the subgroup: 1, 2 or 4
    pub n: usize,
    /// the lambda values, as Gaussian rationals
    pub subgroup: Vec<GaussRat>,
}

pub fn lambda_symmetries(f: &BPFamily<GaussRat>) -> Result<LambdaSymmetries, WeierstrassError> {
    if !f.normalized() {
        return Err(WeierstrassError::InfiniteAutBroken);
    }
    let d0 = delta0(f);
    let one = GaussRat::from_int(1);
    let i = GaussRat::i();
    let minus_one = one.neg();
    let minus_i = i.neg();
    let candidates = [one.clone(), i.clone(), minus_one, minus_i];
    let mut subgroup = Vec::new();
    for lam in &candidates {
        if d0.scale_s(lam).proportional_to(&d0) {
            subgroup.push(lam.clone());
        }
    }
    let n = subgroup.len();
    // the vanishing-pattern prediction n = 4 <=> b = c = 0, etc.
    let predicted = if !f.b.is_zero() {
        1
    } else if !f.c.is_zero() {
        2
    } else {
        4
    };
    debug_assert_eq!(n, predicted);
    Ok(LambdaSymmetries { n, subgroup })
}

pub fn lambda_symmetries_rational(f: &BPFamily<Rat>) -> Result<LambdaSymmetries, WeierstrassError> {
    let g = BPFamily::new(
        GaussRat::from_rat(&f.a),
        GaussRat::from_rat(&f.b),
        GaussRat::from_rat(&f.c),
    );
    lambda_symmetries(&g)
}

/// The three root-configuration cases of the family's nodal fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BPCase {
    A,
    B,
    C,
}

impl BPCase {
    /// Automorphism group description attached to each case.
    pub fn aut_description(&self) -> &'static str {
        match self {
            BPCase::A => "non-split extension of Z/2Z by Z/4Z x D_inf",
            BPCase::B => "Z/4Z x D_inf",
            BPCase::C => "Z/2Z x D_inf",
        }
    }
}

/// Classify a multiset of four distinct non-zero nodal-fiber positions
/// (normalized so 1 is in the set; when it is not, the whole set is divided
/// by its canonically-first element).
pub fn classify_bp_case<F: Field + Ord>(roots: &[F]) -> Result<(BPCase, &'static str), WeierstrassError> {
    if roots.len() != 4 {
        return Err(WeierstrassError::BadRoots);
    }
    if roots.iter().any(|r| r.is_zero()) {
        return Err(WeierstrassError::BadRoots);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if roots[i] == roots[j] {
                return Err(WeierstrassError::BadRoots);
            }
        }
    }
    let one = roots[0].one();
    let set: Vec<F> = if roots.contains(&one) {
        roots.to_vec()
    } else {
        // normalize by the canonically first element
        let mut sorted = roots.to_vec();
        sorted.sort();
        let pivot_inv = sorted[0].inv()?;
        roots.iter().map(|r| r.mul(&pivot_inv)).collect()
    };
    let case = classify_normalized(&set);
    Ok((case, case.aut_description()))
}

fn classify_normalized<F: Field>(set: &[F]) -> BPCase {
    let one = set[0].one();
    // case (a): {1, z, z^2, z^3} for z of multiplicative order 4
    for z in set {
        let z2 = z.mul(z);
        let z4 = z2.mul(&z2);
        if z4 == one && z2 != one {
            let orbit = [one.clone(), z.clone(), z2.clone(), z.mul(&z2)];
            if orbit.iter().all(|x| set.contains(x)) {
                return BPCase::A;
            }
        }
    }
    // case (b): {1, -1, a, -a} with a^4 != 1
    let minus_one = one.neg();
    if set.contains(&minus_one) {
        let others: Vec<&F> = set.iter().filter(|x| **x != one && **x != minus_one).collect();
        if others.len() == 2 && *others[0] == others[1].neg() {
            let a = others[0];
            let a2 = a.mul(a);
            if a2.mul(&a2) != one {
                return BPCase::B;
            }
        }
    }
    BPCase::C
}

/// Coefficients of the double-cover substitution (s,t) -> (s^2,t^2):
/// y^2 = x^3 + 2 a2(s^2,t^2) x^2 + t^8 x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCoefficients<F: Field> {
    /// a2(s^2, t^2), degree 4
    pub a2_sub: HomPoly<F>,
    /// the x-coefficient t^8, degree 8
    pub x_coeff: HomPoly<F>,
}

pub fn k3_cover_substitution<F: Field>(f: &BPFamily<F>) -> CoverCoefficients<F> {
    let a2 = HomPoly::new(vec![f.a.clone(), f.b.clone(), f.c.clone()]);
    let a2_sub = a2.square_substitution();
    let zero = f.a.zero();
    let mut x = vec![zero; 9];
    x[8] = f.a.one();
    CoverCoefficients { a2_sub, x_coeff: HomPoly::new(x) }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}
impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GaussRat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}
impl PartialOrd for GaussRat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
