//! Integral lattices given by Gram matrices: standard constructors,
//! signatures, discriminant groups, even overlattices, root enumeration and
//! ADE recognition, primitive closure.
//!
//! Convention: root lattices are negative definite (diagonal -2), matching
//! the (-2)-curve geometry; U = [[0,1],[1,0]] and E10 = U + E8 has signature
//! (1, 9).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

use crate::arith::ratmat::{clear_denominators, RatMatrix, RatVec};
use crate::arith::{column_span_saturation, kernel_basis, smith_normal_form, IntMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix must be symmetric")]
    NotSymmetric,
    #[error("unknown standard lattice `{0}`")]
    UnknownName(String),
    #[error("lattice is degenerate (det = 0)")]
    Degenerate,
    #[error("operation requires an even lattice")]
    NotEven,
    #[error("operation requires a negative definite lattice")]
    NotDefinite,
    #[error("discriminant group too large for overlattice enumeration (order {0})")]
    DiscriminantTooLarge(BigInt),
    #[error("vector has wrong dimension")]
    DimensionMismatch,
}

/// Integral symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Lattice { gram })
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_rows_i64(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[(i, i)] % 2u8).is_zero())
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { gram: self.gram.direct_sum(&other.gram) }
    }

    /// Rank-1 lattice (n).
    pub fn rank1(n: i64) -> Lattice {
        Lattice { gram: IntMatrix::from_rows_i64(&[vec![n]]) }
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        assert_eq!(x.len(), self.rank());
        assert_eq!(y.len(), self.rank());
        let gy = self.gram.mul_vec(y);
        x.iter().zip(gy.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn inner_rational(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let g = RatMatrix::from_int(&self.gram);
        let gy = g.mul_vec(y);
        x.iter().zip(gy.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.inner(x, x)
    }
}

/// Standard lattice names accepted by `standard_lattice`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardName {
    U,
    A(usize),
    D(usize),
    E(usize),
    E10,
}

/// Standard constructors: hyperbolic plane U, negative definite ADE root
/// lattices, and E10 = U + E8.
pub fn standard_lattice(name: StandardName) -> Result<Lattice, LatticeError> {
    let adjacency_gram = |n: usize, edges: &[(usize, usize)]| {
        let mut g = IntMatrix::zero(n, n);
        for i in 0..n {
            g[(i, i)] = BigInt::from(-2);
        }
        for &(a, b) in edges {
            g[(a, b)] = BigInt::one();
            g[(b, a)] = BigInt::one();
        }
        Lattice { gram: g }
    };
    match name {
        StandardName::U => Ok(Lattice { gram: IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]) }),
        StandardName::A(n) => {
            if n == 0 {
                return Err(LatticeError::UnknownName("A0".into()));
            }
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Ok(adjacency_gram(n, &edges))
        }
        StandardName::D(n) => {
            if n < 4 {
                return Err(LatticeError::UnknownName(format!("D{n}")));
            }
            // chain 0..n-2 with fork: vertex n-1 attached to n-3
            let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            edges.push((n - 3, n - 1));
            Ok(adjacency_gram(n, &edges))
        }
        StandardName::E(n) => {
            if !(6..=8).contains(&n) {
                return Err(LatticeError::UnknownName(format!("E{n}")));
            }
            // Bourbaki: chain 1-3-4-5-...-n with 2 attached to 4
            // indices 0-based: chain 0,2,3,...,n-1 and 1 attached to 3
            let mut edges = vec![(0, 2), (1, 3)];
            for i in 2..n - 1 {
                edges.push((i, i + 1));
            }
            Ok(adjacency_gram(n, &edges))
        }
        StandardName::E10 => {
            let u = standard_lattice(StandardName::U)?;
            let e8 = standard_lattice(StandardName::E(8))?;
            Ok(u.direct_sum(&e8))
        }
    }
}

impl Lattice {
    /// Exact Sylvester signature (positive, negative, zero) by symmetric
    /// Gaussian reduction over Q.
    pub fn signature(&self) -> (usize, usize, usize) {
        let (p, n, z, _) = self.diagonalize();
        (p, n, z)
    }

    /// Congruence diagonalization: returns (pos, neg, zero, basis) where
    /// basis columns b_i satisfy b_i^T G b_j = 0 for i != j.
    pub(crate) fn diagonalize(&self) -> (usize, usize, usize, Vec<RatVec>) {
        let n = self.rank();
        let mut a = RatMatrix::from_int(&self.gram);
        let mut basis = RatMatrix::identity(n);
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        let mut done = vec![false; n];
        for step in 0..n {
            // find a non-zero diagonal pivot among remaining indices
            let rem: Vec<usize> = (0..n).filter(|&i| !done[i]).collect();
            if rem.is_empty() {
                break;
            }
            let pivot = rem.iter().copied().find(|&i| !a[(i, i)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => {
                    // all remaining diagonal entries zero: find off-diagonal
                    let mut found = None;
                    'outer: for &i in &rem {
                        for &j in &rem {
                            if i != j && !a[(i, j)].is_zero() {
                                found = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    match found {
                        None => {
                            // what remains is the radical
                            zero += rem.len();
                            break;
                        }
                        Some((i, j)) => {
                            // add row/col j to i: new a_ii = 2 a_ij != 0
                            for k in 0..n {
                                let t = a[(j, k)].clone();
                                a[(i, k)] += t;
                            }
                            for k in 0..n {
                                let t = a[(k, j)].clone();
                                a[(k, i)] += t;
                            }
                            for k in 0..n {
                                let t = basis[(k, j)].clone();
                                basis[(k, i)] += t;
                            }
                            i
                        }
                    }
                }
            };
            let _ = step;
            done[pivot] = true;
            let d = a[(pivot, pivot)].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            // clear row/column pivot against remaining indices
            for i in 0..n {
                if done[i] || a[(i, pivot)].is_zero() {
                    continue;
                }
                let f = &a[(i, pivot)] / &d;
                for k in 0..n {
                    let t = &f * &a[(pivot, k)];
                    a[(i, k)] -= t;
                }
                for k in 0..n {
                    let t = &f * &a[(k, pivot)];
                    a[(k, i)] -= t;
                }
                for k in 0..n {
                    let t = &f * &basis[(k, pivot)];
                    basis[(k, i)] -= t;
                }
            }
        }
        let cols = (0..n).map(|j| basis.column(j)).collect();
        (pos, neg, zero, cols)
    }

    /// Some primitive integer vector of positive norm (hyperbolic lattices);
    /// used to orient isotropic rays deterministically.
    pub fn positive_norm_vector(&self) -> Option<Vec<BigInt>> {
        let (_, _, _, basis) = self.diagonalize();
        for col in &basis {
            let norm = self.inner_rational(col, col);
            if norm.is_positive() {
                let (iv, _) = clear_denominators(col);
                return Some(primitive_vector(&iv));
            }
        }
        None
    }

    /// Radical = saturated kernel of the Gram matrix.
    pub fn radical_basis(&self) -> Vec<Vec<BigInt>> {
        kernel_basis(&self.gram)
    }

    /// Quotient by the radical: returns the induced non-degenerate lattice
    /// and the images of the standard basis vectors in quotient coordinates.
    pub fn mod_radical(&self) -> (Lattice, Vec<Vec<BigInt>>) {
        let n = self.rank();
        let rad = self.radical_basis();
        if rad.is_empty() {
            let classes = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect();
            return (self.clone(), classes);
        }
        let k = rad.len();
        let radm = IntMatrix::from_columns(&rad);
        let d = smith_normal_form(&radm);
        // rad is saturated so s = diag(1..1); u maps rad onto first k coords;
        // quotient coordinates = last n-k coords of u*x, lifts = u_inv cols k..
        let lift_cols: Vec<Vec<BigInt>> = (k..n).map(|j| d.u_inv.column(j)).collect();
        let lift = IntMatrix::from_columns(&lift_cols);
        let q_gram = lift.transpose().mul(&self.gram).mul(&lift);
        let classes = (0..n)
            .map(|i| {
                let e: Vec<BigInt> = (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect();
                let ux = d.u.mul_vec(&e);
                ux[k..].to_vec()
            })
            .collect();
        (Lattice { gram: q_gram }, classes)
    }
}

/// Discriminant group L*/L of a non-degenerate lattice, with its Q/2Z-valued
/// quadratic form on the chosen generators.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Invariant factors d1 | d2 | ... (each > 1).
    pub invariant_factors: Vec<BigInt>,
    /// Generator vectors in lattice-basis coordinates (rational).
    pub generators: Vec<RatVec>,
    /// q(g) = g.g reduced into (-2, 0] as a representative mod 2Z.
    pub qvalues: Vec<BigRational>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_p_elementary(&self, p: &BigInt) -> bool {
        self.invariant_factors.iter().all(|d| (p % d).is_zero())
    }
}

/// Reduce a rational into the representative interval (-2, 0] mod 2Z.
pub fn reduce_mod_2z(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut r = x.clone();
    // r - 2*ceil(r/2) lands in (-2, 0]
    let q = (&r / &two).ceil();
    r -= q * &two;
    r
}

impl Lattice {
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup, LatticeError> {
        if self.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let d = smith_normal_form(&self.gram);
        let n = self.rank();
        let mut invariant_factors = Vec::new();
        let mut generators = Vec::new();
        let mut qvalues = Vec::new();
        for i in 0..n {
            let di = d.s[(i, i)].abs();
            if di <= BigInt::one() {
                continue;
            }
            // generator: (1/d_i) * column i of v
            let col = d.v.column(i);
            let g: RatVec = col
                .iter()
                .map(|x| BigRational::new(x.clone(), di.clone()))
                .collect();
            let q = reduce_mod_2z(&self.inner_rational(&g, &g));
            invariant_factors.push(di);
            generators.push(g);
            qvalues.push(q);
        }
        Ok(DiscriminantGroup { invariant_factors, generators, qvalues })
    }

    pub fn is_p_elementary(&self, p: &BigInt) -> Result<bool, LatticeError> {
        Ok(self.discriminant_group()?.is_p_elementary(p))
    }
}

/// An even overlattice M of L, recorded by a basis of M in L-coordinates.
#[derive(Clone, Debug)]
pub struct Overlattice {
    /// Basis columns of M expressed in L's basis (rational coordinates).
    pub basis: Vec<RatVec>,
    /// Gram matrix of M in that basis.
    pub lattice: Lattice,
    /// Index [M : L].
    pub index: BigInt,
}

impl Overlattice {
    /// Whether a rational vector (in L-coordinates) lies in M.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        let b = RatMatrix::from_columns(&self.basis);
        match b.solve(v) {
            Some(x) => x.iter().all(|c| c.denom().is_one()),
            None => false,
        }
    }

    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let b = RatMatrix::from_columns(&self.basis);
        let x = b.solve(v)?;
        crate::arith::ratmat::rat_to_int_vec(&x)
    }
}

/// Internal: elements of the discriminant group as coefficient tuples over
/// the invariant-factor generators.
struct DiscElements {
    orders: Vec<u64>,
    /// all elements as coefficient vectors
    elems: Vec<Vec<u64>>,
}

fn disc_elements(disc: &DiscriminantGroup, cap: u64) -> Result<DiscElements, LatticeError> {
    use num_traits::ToPrimitive;
    let mut order = 1u64;
    let mut orders = Vec::new();
    for f in &disc.invariant_factors {
        let v = f.to_u64().ok_or_else(|| LatticeError::DiscriminantTooLarge(disc.order()))?;
        order = order
            .checked_mul(v)
            .ok_or_else(|| LatticeError::DiscriminantTooLarge(disc.order()))?;
        orders.push(v);
    }
    if order > cap {
        return Err(LatticeError::DiscriminantTooLarge(disc.order()));
    }
    let mut elems = vec![vec![]];
    for &o in &orders {
        let mut next = Vec::with_capacity(elems.len() * o as usize);
        for e in &elems {
            for c in 0..o {
                let mut e2 = e.clone();
                e2.push(c);
                next.push(e2);
            }
        }
        elems = next;
    }
    Ok(DiscElements { orders, elems })
}

impl Lattice {
    /// q value (mod 2Z, representative in (-2, 0]) of a disc-group element
    /// given by coefficients over the generators.
    fn disc_q(&self, disc: &DiscriminantGroup, coeffs: &[u64]) -> BigRational {
        let v = self.disc_vector(disc, coeffs);
        reduce_mod_2z(&self.inner_rational(&v, &v))
    }

    fn disc_vector(&self, disc: &DiscriminantGroup, coeffs: &[u64]) -> RatVec {
        let n = self.rank();
        let mut v = vec![BigRational::zero(); n];
        for (c, g) in coeffs.iter().zip(disc.generators.iter()) {
            let c = BigRational::from_integer(BigInt::from(*c));
            for i in 0..n {
                v[i] += &c * &g[i];
            }
        }
        v
    }

    /// All even overlattices of finite index, enumerated via totally
    /// isotropic subgroups of the discriminant group. Includes L itself
    /// (index 1). Deterministic order: by index, then by Gram entries.
    pub fn even_overlattices(&self) -> Result<Vec<Overlattice>, LatticeError> {
        if !self.is_even() {
            return Err(LatticeError::NotEven);
        }
        let disc = self.discriminant_group()?;
        let de = disc_elements(&disc, 1 << 16)?;
        let orders = de.orders.clone();
        let order = de.elems.len();
        // element index <-> coefficient tuple (mixed radix)
        let index_of = |e: &[u64]| -> usize {
            let mut idx = 0usize;
            for (c, o) in e.iter().zip(orders.iter()) {
                idx = idx * (*o as usize) + *c as usize;
            }
            idx
        };
        // addition table over indices (order <= 2^16 but tiny in practice)
        let mut is_iso = vec![false; order.max(1)];
        for e in &de.elems {
            is_iso[index_of(e)] = self.disc_q(&disc, e).is_zero();
        }
        let add_idx = |a: usize, b: usize| -> usize {
            // decode both, add componentwise, re-encode
            let mut x = a;
            let mut y = b;
            let mut sum = vec![0u64; orders.len()];
            for i in (0..orders.len()).rev() {
                let o = orders[i] as usize;
                sum[i] = ((x % o + y % o) % o) as u64;
                x /= o;
                y /= o;
            }
            index_of(&sum)
        };
        let words = order.div_ceil(64).max(1);
        let bit = |set: &[u64], i: usize| set[i / 64] >> (i % 64) & 1 == 1;
        let set_bit = |set: &mut [u64], i: usize| set[i / 64] |= 1 << (i % 64);
        let iso_indices: Vec<usize> = (0..order).filter(|&i| is_iso[i]).collect();
        let mut trivial = vec![0u64; words];
        set_bit(&mut trivial, 0);
        let mut subgroups: HashSet<Vec<u64>> = HashSet::new();
        subgroups.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for &g in &iso_indices {
                if bit(&h, g) {
                    continue;
                }
                // close under addition; reject on a non-isotropic element
                let mut closed = h.clone();
                let mut stack = vec![g];
                let mut ok = true;
                while let Some(x) = stack.pop() {
                    if bit(&closed, x) {
                        continue;
                    }
                    if !is_iso[x] {
                        ok = false;
                        break;
                    }
                    let members: Vec<usize> = (0..order).filter(|&i| bit(&closed, i)).collect();
                    set_bit(&mut closed, x);
                    for y in members {
                        let s = add_idx(x, y);
                        if !bit(&closed, s) {
                            stack.push(s);
                        }
                    }
                }
                if !ok {
                    continue;
                }
                if subgroups.insert(closed.clone()) {
                    frontier.push(closed);
                }
            }
        }
        let mut out = Vec::new();
        for h in &subgroups {
            let members: Vec<Vec<u64>> = de
                .elems
                .iter()
                .filter(|e| bit(h, index_of(e)))
                .cloned()
                .collect();
            out.push(self.overlattice_from_glue(&disc, &members)?);
        }
        out.sort_by(|a, b| {
            a.index.cmp(&b.index).then_with(|| {
                let ga: Vec<BigInt> = flatten_gram(&a.lattice);
                let gb: Vec<BigInt> = flatten_gram(&b.lattice);
                ga.cmp(&gb)
            })
        });
        Ok(out)
    }

    /// Build the overlattice L + <glue vectors>.
    pub(crate) fn overlattice_from_glue(
        &self,
        disc: &DiscriminantGroup,
        glue: &[Vec<u64>],
    ) -> Result<Overlattice, LatticeError> {
        let n = self.rank();
        let mut gens: Vec<RatVec> = Vec::new();
        for e in glue {
            if e.iter().all(|&c| c == 0) {
                continue;
            }
            gens.push(self.disc_vector(disc, e));
        }
        // columns: identity + generators, cleared to integers at scale den
        let mut cols: Vec<RatVec> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j { BigRational::one() } else { BigRational::zero() }
                    })
                    .collect()
            })
            .collect();
        cols.extend(gens);
        let mut den = BigInt::one();
        for c in &cols {
            for x in c {
                den = num_integer::lcm(den, x.denom().clone());
            }
        }
        let int_cols: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|c| c.iter().map(|x| x.numer() * (&den / x.denom())).collect())
            .collect();
        let m = IntMatrix::from_columns(&int_cols);
        let image = crate::arith::column_span_basis(&m);
        debug_assert_eq!(image.len(), n);
        let basis: Vec<RatVec> = image
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| BigRational::new(x.clone(), den.clone()))
                    .collect()
            })
            .collect();
        let bmat = RatMatrix::from_columns(&basis);
        let gram_m = bmat.transpose().mul(&RatMatrix::from_int(&self.gram)).mul(&bmat);
        let mut gram = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let e = &gram_m[(i, j)];
                if !e.denom().is_one() {
                    return Err(LatticeError::NotEven);
                }
                gram[(i, j)] = e.numer().clone();
            }
        }
        let index = BigInt::from(glue.len() as u64);
        Ok(Overlattice { basis, lattice: Lattice { gram }, index })
    }

    /// True iff some even overlattice of L (including L itself) is
    /// 2-elementary.
    pub fn has_2elementary_overlattice(&self) -> Result<bool, LatticeError> {
        let two = BigInt::from(2);
        for m in self.even_overlattices()? {
            if m.lattice.is_p_elementary(&two)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn flatten_gram(l: &Lattice) -> Vec<BigInt> {
    let n = l.rank();
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            v.push(l.gram()[(i, j)].clone());
        }
    }
    v
}

/// Divide out the gcd of the coordinates.
pub fn primitive_vector(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = num_integer::gcd(g, x.clone());
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

impl Lattice {
    /// All roots (vectors of norm -2) of a negative definite lattice, by
    /// exact Fincke-Pohst enumeration on -gram. Sorted lexicographically.
    pub fn roots(&self) -> Result<Vec<Vec<BigInt>>, LatticeError> {
        let n = self.rank();
        let (pos, _, zero) = self.signature();
        if pos > 0 || zero > 0 {
            return Err(LatticeError::NotDefinite);
        }
        // q = -gram positive definite; decompose q = U^T D U, U unit upper
        let q = RatMatrix::from_int(&self.gram.scale(&BigInt::from(-1)));
        let mut d = vec![BigRational::zero(); n];
        let mut u = RatMatrix::identity(n);
        for i in 0..n {
            let mut di = q[(i, i)].clone();
            for k in 0..i {
                let t = &d[k] * &u[(k, i)] * &u[(k, i)];
                di -= t;
            }
            if !di.is_positive() {
                return Err(LatticeError::NotDefinite);
            }
            for j in i + 1..n {
                let mut e = q[(i, j)].clone();
                for k in 0..i {
                    let t = &d[k] * &u[(k, i)] * &u[(k, j)];
                    e -= t;
                }
                u[(i, j)] = e / &di;
            }
            d[i] = di;
        }
        // enumerate x with sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 = 2
        let target = BigRational::from_integer(BigInt::from(2));
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        let mut x = vec![BigInt::zero(); n];
        enumerate_level(&d, &u, n, &target, &mut x, &mut out);
        out.sort();
        Ok(out)
    }

    /// ADE type of the root sublattice: connected components of the root
    /// graph, each identified by (rank, root count).
    pub fn ade_type(&self) -> Result<RootSystemType, LatticeError> {
        let roots = self.roots()?;
        let m = roots.len();
        let mut seen = vec![false; m];
        let mut comps: Vec<(usize, usize)> = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..m {
                    if !seen[j] && !self.inner(&roots[i], &roots[j]).is_zero() {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            let cols: Vec<Vec<BigInt>> = comp.iter().map(|&i| roots[i].clone()).collect();
            let rank = IntMatrix::from_columns(&cols).rank();
            comps.push((rank, comp.len()));
        }
        let mut components = Vec::new();
        for (rank, count) in comps {
            components.push(classify_ade_component(rank, count)?);
        }
        components.sort();
        Ok(RootSystemType { components })
    }
}

fn enumerate_level(
    d: &[BigRational],
    u: &RatMatrix,
    n: usize,
    target: &BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    // recursive over i = n-1 down to 0; track remaining budget
    fn rec(
        i: isize,
        rem: &BigRational,
        d: &[BigRational],
        u: &RatMatrix,
        x: &mut Vec<BigInt>,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if i < 0 {
            if rem.is_zero() {
                out.push(x.clone());
            }
            return;
        }
        let i = i as usize;
        // c = sum_{j>i} u_ij x_j
        let n = x.len();
        let mut c = BigRational::zero();
        for j in i + 1..n {
            c += &u[(i, j)] * BigRational::from_integer(x[j].clone());
        }
        // d_i (x_i + c)^2 <= rem
        let bound2 = rem / &d[i];
        // |x_i + c| <= sqrt(bound2); widen the integer scan range by one to
        // cover the fractional part, each candidate is tested exactly below
        let s = floor_sqrt_rational(&bound2) + BigRational::one();
        let lo = ceil_rational(&(-&c - &s));
        let hi = floor_rational(&(-&c + &s));
        let mut xi = lo;
        while xi <= hi {
            let y = BigRational::from_integer(xi.clone()) + &c;
            let used = &d[i] * &y * &y;
            if &used <= rem {
                x[i] = xi.clone();
                let next = rem - used;
                rec(i as isize - 1, &next, d, u, x, out);
                x[i] = BigInt::zero();
            }
            xi += 1;
        }
    }
    rec(n as isize - 1, target, d, u, x, out);
}

/// floor(sqrt(r)) for r >= 0 rational, returned as a rational (integer value
/// is not enough: we only need it for bounds, so floor of the real sqrt).
fn floor_sqrt_rational(r: &BigRational) -> BigRational {
    if r.is_negative() {
        return BigRational::from_integer(BigInt::from(-1));
    }
    // floor(sqrt(p/q)) = floor(floor(sqrt(p*q))/q)
    let pq = r.numer() * r.denom();
    let s = pq.sqrt();
    BigRational::from_integer(s / r.denom())
}

fn floor_rational(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn ceil_rational(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// A multiset of irreducible ADE components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootSystemType {
    /// sorted (family, rank)
    pub components: Vec<(AdeFamily, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeFamily {
    A,
    D,
    E,
}

impl std::fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(fam, r)| format!("{fam:?}{r}"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl RootSystemType {
    pub fn empty() -> Self {
        RootSystemType { components: vec![] }
    }

    pub fn single(fam: AdeFamily, rank: usize) -> Self {
        RootSystemType { components: vec![(fam, rank)] }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        components.sort();
        RootSystemType { components }
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|(_, r)| r).sum()
    }
}

/// (rank, root count) is a complete invariant for irreducible ADE systems.
fn classify_ade_component(rank: usize, count: usize) -> Result<(AdeFamily, usize), LatticeError> {
    // A_n: n(n+1); D_n (n>=4): 2n(n-1); E6/7/8: 72/126/240
    if count == rank * (rank + 1) {
        return Ok((AdeFamily::A, rank));
    }
    if rank >= 4 && count == 2 * rank * (rank - 1) {
        return Ok((AdeFamily::D, rank));
    }
    match (rank, count) {
        (6, 72) => Ok((AdeFamily::E, 6)),
        (7, 126) => Ok((AdeFamily::E, 7)),
        (8, 240) => Ok((AdeFamily::E, 8)),
        _ => Err(LatticeError::NotDefinite),
    }
}

/// Saturation (Q-span intersect ambient) of a set of vectors, with the
/// induced Gram matrix. Returns the saturated sublattice and its basis.
pub fn primitive_closure(
    ambient: &Lattice,
    span: &[Vec<BigInt>],
) -> Result<(Lattice, Vec<Vec<BigInt>>), LatticeError> {
    let n = ambient.rank();
    for v in span {
        if v.len() != n {
            return Err(LatticeError::DimensionMismatch);
        }
    }
    if span.is_empty() {
        return Ok((Lattice { gram: IntMatrix::zero(0, 0) }, vec![]));
    }
    let m = IntMatrix::from_columns(span);
    let basis = column_span_saturation(&m);
    let b = IntMatrix::from_columns(&basis);
    let gram = b.transpose().mul(ambient.gram()).mul(&b);
    Ok((Lattice { gram }, basis))
}

/// Saturated orthogonal complement of a set of vectors inside the ambient
/// lattice, with its basis.
pub fn orthogonal_complement(
    ambient: &Lattice,
    vectors: &[Vec<BigInt>],
) -> Result<(Lattice, Vec<Vec<BigInt>>), LatticeError> {
    let n = ambient.rank();
    if vectors.is_empty() {
        let basis: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        return Ok((ambient.clone(), basis));
    }
    // rows: v^T G for each v; kernel = complement
    let rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            if v.len() != n {
                return vec![];
            }
            ambient.gram.mul_vec(v)
        })
        .collect();
    if rows.iter().any(|r| r.len() != n) {
        return Err(LatticeError::DimensionMismatch);
    }
    let m = IntMatrix::from_fn(vectors.len(), n, |i, j| rows[i][j].clone());
    let basis = kernel_basis(&m);
    let b = IntMatrix::from_columns_with_rows(n, &basis);
    let gram = b.transpose().mul(ambient.gram()).mul(&b);
    Ok((Lattice { gram }, basis))
}

/// Induced Gram matrix on a list of vectors (not saturated).
pub fn sublattice_gram(ambient: &Lattice, vectors: &[Vec<BigInt>]) -> IntMatrix {
    let k = vectors.len();
    IntMatrix::from_fn(k, k, |i, j| ambient.inner(&vectors[i], &vectors[j]))
}
