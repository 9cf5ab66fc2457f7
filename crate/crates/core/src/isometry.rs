//! Isometries of hyperbolic lattices: the elliptic/parabolic/hyperbolic
//! trichotomy, exact entropy via Salem-factor root isolation, Eichler
//! transvections, invariant and coinvariant lattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{
    char_poly, cyclotomic, euler_phi, isolate_real_roots_above_one_width, kernel_basis,
    rational_to_f64, IntMatrix, IntPoly, RootInterval,
};
use crate::lattice::{primitive_vector, Lattice, LatticeError};

#[derive(Debug, Error)]
pub enum IsometryError {
    #[error("matrix does not preserve the gram form")]
    NotAnIsometry,
    #[error("matrix/lattice dimension mismatch")]
    DimensionMismatch,
    #[error("classification requires signature (1, n), got ({0}, {1}, {2})")]
    NotHyperbolic(usize, usize, usize),
    #[error("transvection preconditions violated: need f isotropic, e.f = 0, even lattice")]
    BadTransvection,
    #[error("non-cyclotomic remainder of the characteristic polynomial is not reciprocal; input is not an isometry of a hyperbolic lattice")]
    NonReciprocalRemainder,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An integer matrix preserving a Gram form: g^T G g = G, acting on column
/// vectors.
#[derive(Clone, Debug)]
pub struct LatticeIsometry {
    lattice: Lattice,
    matrix: IntMatrix,
}

impl LatticeIsometry {
    pub fn new(lattice: Lattice, matrix: IntMatrix) -> Result<Self, IsometryError> {
        if matrix.rows() != lattice.rank() || matrix.cols() != lattice.rank() {
            return Err(IsometryError::DimensionMismatch);
        }
        let g = lattice.gram();
        if matrix.transpose().mul(g).mul(&matrix) != *g {
            return Err(IsometryError::NotAnIsometry);
        }
        Ok(LatticeIsometry { lattice, matrix })
    }

    pub fn identity(lattice: Lattice) -> Self {
        let n = lattice.rank();
        LatticeIsometry { lattice, matrix: IntMatrix::identity(n) }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn compose(&self, other: &LatticeIsometry) -> Result<LatticeIsometry, IsometryError> {
        if self.lattice != other.lattice {
            return Err(IsometryError::DimensionMismatch);
        }
        Ok(LatticeIsometry {
            lattice: self.lattice.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn inverse(&self) -> LatticeIsometry {
        // g^-1 = G^-1 g^T G for an isometry; stay integral via the identity
        // g^-1 = adj-free: solve g X = I over Q and round (entries integral
        // since det g = +-1). Cheapest: use the isometry identity.
        let g = self.lattice.gram();
        let rat_g = crate::arith::ratmat::RatMatrix::from_int(g);
        let ginv = rat_g.inverse().expect("gram of classified lattice invertible");
        let m = crate::arith::ratmat::RatMatrix::from_int(&self.matrix);
        let out = ginv.mul(&m.transpose()).mul(&rat_g);
        let n = self.matrix.rows();
        let mut res = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let e = &out[(i, j)];
                debug_assert!(e.denom().is_one());
                res[(i, j)] = e.numer().clone();
            }
        }
        LatticeIsometry { lattice: self.lattice.clone(), matrix: res }
    }

    pub fn pow(&self, e: usize) -> LatticeIsometry {
        let mut acc = IntMatrix::identity(self.matrix.rows());
        let mut base = self.matrix.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        LatticeIsometry { lattice: self.lattice.clone(), matrix: acc }
    }
}

/// Trichotomy of a hyperbolic-lattice isometry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Exact entropy data: zero, or log of a Salem-type spectral radius given by
/// its minimal polynomial and an isolating interval.
#[derive(Clone, Debug)]
pub struct EntropyValue {
    /// Minimal polynomial of the spectral radius (x - 1 when entropy is 0).
    pub min_poly: IntPoly,
    /// Isolating interval for the spectral radius lambda.
    pub lambda_interval: RootInterval,
    /// Display-only approximations.
    pub lambda_approx: f64,
    pub entropy_approx: f64,
}

impl EntropyValue {
    pub fn zero() -> Self {
        let one = BigRational::one();
        EntropyValue {
            min_poly: IntPoly::from_coeffs_i64(&[-1, 1]),
            lambda_interval: RootInterval { lo: one.clone(), hi: one },
            lambda_approx: 1.0,
            entropy_approx: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entropy_approx == 0.0 && self.lambda_interval.lo == BigRational::one()
    }
}

/// Classification record for an isometry of a signature-(1, n) lattice.
#[derive(Clone, Debug)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    /// Exact order for elliptic isometries, None for infinite order.
    pub order: Option<u64>,
    pub entropy: EntropyValue,
    /// Primitive fixed isotropic vector (parabolic case only).
    pub fixed_isotropic: Option<Vec<BigInt>>,
}

/// Split the characteristic polynomial into its cyclotomic part and the
/// non-cyclotomic remainder; returns (occurring cyclotomic indices with
/// multiplicity, remainder).
fn peel_cyclotomic(p: &IntPoly, rank: usize) -> (Vec<(u64, usize)>, IntPoly) {
    let mut rem = p.clone();
    let mut orders = Vec::new();
    let mut m = 1u64;
    // phi(m) <= rank bounds the candidate indices; phi(m) >= sqrt(m/2)
    // gives m <= 2 rank^2 + 2 as a safe scan bound
    let bound = 2 * (rank as u64) * (rank as u64) + 2;
    while m <= bound {
        if euler_phi(m) <= rank as u64 {
            let phi = cyclotomic(m);
            let mut mult = 0;
            while let Some(q) = rem.exact_div(&phi) {
                rem = q;
                mult += 1;
            }
            if mult > 0 {
                orders.push((m, mult));
            }
        }
        m += 1;
    }
    (orders, rem)
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Classify an isometry of a hyperbolic (signature (1, n)) lattice.
pub fn classify(g: &LatticeIsometry) -> Result<IsometryClass, IsometryError> {
    let (pos, _neg, zero) = g.lattice().signature();
    if pos != 1 || zero != 0 {
        let (p, n, z) = g.lattice().signature();
        return Err(IsometryError::NotHyperbolic(p, n, z));
    }
    let rank = g.lattice().rank();
    let cp = char_poly(g.matrix()).expect("isometry matrix is square");
    let (orders, rem) = peel_cyclotomic(&cp, rank);
    if rem.degree().unwrap_or(0) > 0 {
        // hyperbolic: remainder carries the Salem-type spectral radius
        if !rem.is_reciprocal() {
            return Err(IsometryError::NonReciprocalRemainder);
        }
        let entropy = entropy_from_salem_factor(&rem);
        return Ok(IsometryClass {
            kind: IsometryKind::Hyperbolic,
            order: None,
            entropy,
            fixed_isotropic: None,
        });
    }
    // all eigenvalues are roots of unity: elliptic iff g^N = 1
    let n_lcm = orders.iter().fold(1u64, |acc, (m, _)| lcm_u64(acc, *m));
    let gn = g.pow(n_lcm as usize);
    if gn.matrix().is_identity() {
        // exact order: smallest divisor k of N with g^k = 1
        let mut order = n_lcm;
        for k in 1..=n_lcm {
            if n_lcm % k == 0 && g.pow(k as usize).matrix().is_identity() {
                order = k;
                break;
            }
        }
        return Ok(IsometryClass {
            kind: IsometryKind::Elliptic,
            order: Some(order),
            entropy: EntropyValue::zero(),
            fixed_isotropic: None,
        });
    }
    // parabolic: fixed ray = radical of the form on the invariant sublattice
    let (inv_lattice, inv_basis) = invariant_lattice(g);
    let rad = inv_lattice.radical_basis();
    debug_assert_eq!(rad.len(), 1, "parabolic isometry has a rank-1 invariant radical");
    // map back to ambient coordinates
    let b = IntMatrix::from_columns(&inv_basis);
    let ray = b.mul_vec(&rad[0]);
    let mut ray = primitive_vector(&ray);
    // orient against a stored positive-norm reference vector
    if let Some(refv) = g.lattice().positive_norm_vector() {
        if g.lattice().inner(&ray, &refv).is_negative() {
            ray = ray.iter().map(|x| -x).collect();
        }
    }
    debug_assert!(g.lattice().norm(&ray).is_zero());
    Ok(IsometryClass {
        kind: IsometryKind::Parabolic,
        order: None,
        entropy: EntropyValue::zero(),
        fixed_isotropic: Some(ray),
    })
}

fn entropy_from_salem_factor(rem: &IntPoly) -> EntropyValue {
    let width = crate::arith::default_width();
    let roots = isolate_real_roots_above_one_width(rem, &width);
    let (iv, _) = roots
        .last()
        .expect("a non-cyclotomic reciprocal factor of an isometry has a root > 1")
        .clone();
    let lambda_approx = iv.to_f64();
    EntropyValue {
        min_poly: rem.clone(),
        lambda_interval: iv,
        lambda_approx,
        entropy_approx: lambda_approx.ln(),
    }
}

/// Entropy of an arbitrary isometry of a hyperbolic lattice: zero unless
/// hyperbolic, in which case log of the spectral radius with exact data.
pub fn entropy(g: &LatticeIsometry) -> Result<EntropyValue, IsometryError> {
    Ok(classify(g)?.entropy)
}

/// Eichler-type transvection x -> x + (x.f) e - (x.e) f - (e.e)/2 (x.f) f
/// for an isotropic f and e with e.f = 0 on an even lattice. Fixes f.
pub fn eichler_transvection(
    lattice: &Lattice,
    f: &[BigInt],
    e: &[BigInt],
) -> Result<LatticeIsometry, IsometryError> {
    let n = lattice.rank();
    if f.len() != n || e.len() != n {
        return Err(IsometryError::DimensionMismatch);
    }
    if !lattice.norm(f).is_zero() || !lattice.inner(e, f).is_zero() || !lattice.is_even() {
        return Err(IsometryError::BadTransvection);
    }
    let ee = lattice.norm(e);
    let half_ee = &ee / BigInt::from(2);
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = vec![BigInt::zero(); n];
        x[i] = BigInt::one();
        let xf = lattice.inner(&x, f);
        let xe = lattice.inner(&x, e);
        let col: Vec<BigInt> = (0..n)
            .map(|j| &x[j] + &xf * &e[j] - &xe * &f[j] - &half_ee * &xf * &f[j])
            .collect();
        cols.push(col);
    }
    LatticeIsometry::new(lattice.clone(), IntMatrix::from_columns(&cols))
}

/// Saturated fixed sublattice ker(g - 1) with induced form; also returns its
/// basis in ambient coordinates.
pub fn invariant_lattice(g: &LatticeIsometry) -> (Lattice, Vec<Vec<BigInt>>) {
    let n = g.lattice().rank();
    let m = g.matrix().sub(&IntMatrix::identity(n));
    let basis = kernel_basis(&m);
    let b = IntMatrix::from_columns_with_rows(n, &basis);
    let gram = b.transpose().mul(g.lattice().gram()).mul(&b);
    (Lattice::new(gram).expect("induced gram symmetric"), basis)
}

/// Orthogonal complement of the invariant sublattice, with induced form.
pub fn coinvariant_lattice(g: &LatticeIsometry) -> (Lattice, Vec<Vec<BigInt>>) {
    let (_, inv_basis) = invariant_lattice(g);
    let (l, basis) =
        crate::lattice::orthogonal_complement(g.lattice(), &inv_basis).expect("dimensions agree");
    (l, basis)
}

/// Convenience display of an entropy value.
pub fn entropy_interval_strings(e: &EntropyValue) -> (String, String, String) {
    let lo = e.lambda_interval.lo.to_string();
    let hi = e.lambda_interval.hi.to_string();
    let poly = format!("{:?}", e.min_poly);
    (poly, lo, hi)
}

pub fn rational_approx(x: &BigRational) -> f64 {
    rational_to_f64(x)
}
