//! Property suites: Cayley-Hamilton, SNF transform identities against an
//! independent minor-gcd oracle, the cyclotomic product identity up to 60,
//! root-count and overlattice invariants, Sturm/Descartes agreement, and the
//! discriminant-form consistency of even overlattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use zeroent_core::arith::{
    char_poly, cyclotomic, isolate_real_roots_above_one, smith_normal_form, sturm_count, IntMatrix,
    IntPoly,
};
use zeroent_core::lattice::{standard_lattice, Lattice, StandardName};

fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-6i64..=6, n * n).prop_map(move |v| {
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j]))
    })
}

fn small_symmetric(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |v| {
        let mut m = IntMatrix::zero(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = BigInt::from(v[k]);
                m[(j, i)] = BigInt::from(v[k]);
                k += 1;
            }
        }
        m
    })
}

/// Product of the nonzero elementary divisors via gcds of k x k minors
/// (independent of the SNF reduction path). Only for small matrices.
fn minor_gcd_divisor_product(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut prev = BigInt::one();
    let mut product = BigInt::one();
    for k in 1..=n {
        // gcd of all k x k minors
        let mut g = BigInt::zero();
        let rows: Vec<Vec<usize>> = combinations(n, k);
        for r in &rows {
            for c in &rows {
                let sub = IntMatrix::from_fn(k, k, |i, j| m[(r[i], c[j])].clone());
                g = num_integer::gcd(g, sub.det());
            }
        }
        if g.is_zero() {
            break;
        }
        // d_k = g_k / g_{k-1}
        product = g.clone();
        prev = g;
    }
    let _ = prev;
    product.abs()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cayley_hamilton_up_to_6(m in (2usize..=6).prop_flat_map(small_matrix)) {
        let p = char_poly(&m).unwrap();
        // evaluate p at m
        let n = m.rows();
        let mut acc = IntMatrix::zero(n, n);
        let mut power = IntMatrix::identity(n);
        for c in p.coeffs() {
            acc = acc.add(&power.scale(c));
            power = power.mul(&m);
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn snf_transform_identity_and_divisor_product(m in (1usize..=6).prop_flat_map(small_matrix)) {
        let d = smith_normal_form(&m);
        prop_assert_eq!(d.u.mul(&m).mul(&d.v), d.s.clone());
        prop_assert_eq!(d.u.det().abs(), BigInt::one());
        prop_assert_eq!(d.v.det().abs(), BigInt::one());
        prop_assert!(d.u.mul(&d.u_inv).is_identity());
        prop_assert!(d.v.mul(&d.v_inv).is_identity());
        // divisibility chain
        let diag = d.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() && !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            }
        }
        // product of nonzero divisors equals the independent minor-gcd oracle
        let prod: BigInt = diag.iter().filter(|x| !x.is_zero()).product();
        prop_assert_eq!(prod.abs(), minor_gcd_divisor_product(&m));
    }

    #[test]
    fn discriminant_order_is_det(m in (1usize..=4).prop_flat_map(small_symmetric)) {
        let l = Lattice::new(m).unwrap();
        if !l.det().is_zero() {
            let dg = l.discriminant_group().unwrap();
            prop_assert_eq!(dg.order(), l.det().abs());
        }
    }

    #[test]
    fn sturm_counts_isolated_roots(coeffs in proptest::collection::vec(-9i64..=9, 3..=7)) {
        let p = IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect());
        if p.degree().unwrap_or(0) >= 1 {
            let isolated = isolate_real_roots_above_one(&p);
            let bound = BigRational::from_integer(BigInt::from(1_000_000_000i64));
            let count = sturm_count(&p, &BigRational::one(), &bound);
            prop_assert_eq!(isolated.len(), count);
            // intervals are disjoint and sorted
            for w in isolated.windows(2) {
                prop_assert!(w[0].0.hi < w[1].0.lo || (w[0].0.hi == w[1].0.lo && w[0].0.hi == w[0].0.lo));
            }
        }
    }
}

#[test]
fn cyclotomic_product_identity_to_60() {
    for n in 1..=60u64 {
        let mut prod = IntPoly::one();
        for d in 1..=n {
            if n % d == 0 {
                prod = prod.mul(&cyclotomic(d));
            }
        }
        assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
    }
}

#[test]
fn classical_root_counts() {
    for n in 1..=8 {
        let l = standard_lattice(StandardName::A(n)).unwrap();
        assert_eq!(l.roots().unwrap().len(), n * (n + 1), "A{n}");
    }
    for n in 4..=8 {
        let l = standard_lattice(StandardName::D(n)).unwrap();
        assert_eq!(l.roots().unwrap().len(), 2 * n * (n - 1), "D{n}");
    }
    for (n, count) in [(6, 72), (7, 126), (8, 240)] {
        let l = standard_lattice(StandardName::E(n)).unwrap();
        assert_eq!(l.roots().unwrap().len(), count, "E{n}");
    }
}

#[test]
fn overlattice_index_det_relation() {
    // [M:L]^2 det M = det L on assorted small even lattices
    let a1 = standard_lattice(StandardName::A(1)).unwrap();
    let a2 = standard_lattice(StandardName::A(2)).unwrap();
    let cases = vec![
        a1.direct_sum(&a1),
        a1.direct_sum(&a1).direct_sum(&a1).direct_sum(&a1),
        a2.direct_sum(&a2),
        Lattice::rank1(-4).direct_sum(&Lattice::rank1(-8)),
        Lattice::rank1(-6).direct_sum(&Lattice::rank1(-2)),
    ];
    for l in cases {
        for m in l.even_overlattices().unwrap() {
            assert_eq!(&m.index * &m.index * m.lattice.det(), l.det());
            assert!(m.lattice.is_even());
        }
    }
}

/// Brute-force check of has_2elementary_overlattice against a scan over all
/// subgroup chains of the discriminant group, for small diagonal lattices.
#[test]
fn two_elementary_overlattice_brute_force_agreement() {
    let diag = |entries: &[i64]| {
        entries
            .iter()
            .fold(None::<Lattice>, |acc, &d| {
                let r = Lattice::rank1(d);
                Some(match acc {
                    None => r,
                    Some(l) => l.direct_sum(&r),
                })
            })
            .unwrap()
    };
    let cases: Vec<Vec<i64>> = vec![
        vec![-2, -2],
        vec![-4, -8],
        vec![-4, -4],
        vec![-2, -6],
        vec![-4, -8, -8],
        vec![-2, -4, -4],
        vec![-6, -6],
    ];
    for entries in cases {
        let l = diag(&entries);
        let fast = l.has_2elementary_overlattice().unwrap();
        // oracle: every even overlattice, checked directly on invariant
        // factors computed through an independent SNF of its gram
        let slow = l.even_overlattices().unwrap().iter().any(|m| {
            let d = smith_normal_form(m.lattice.gram());
            d.invariant_factors().iter().all(|f| *f == BigInt::from(2))
        });
        assert_eq!(fast, slow, "{entries:?}");
    }
}

#[test]
fn ade_union_additivity() {
    let e6 = standard_lattice(StandardName::E(6)).unwrap();
    let a3 = standard_lattice(StandardName::A(3)).unwrap();
    let d5 = standard_lattice(StandardName::D(5)).unwrap();
    let x = e6.direct_sum(&a3);
    let y = d5.direct_sum(&a3).direct_sum(&a3);
    assert_eq!(
        x.ade_type().unwrap(),
        e6.ade_type().unwrap().union(&a3.ade_type().unwrap())
    );
    assert_eq!(
        y.ade_type().unwrap(),
        d5.ade_type()
            .unwrap()
            .union(&a3.ade_type().unwrap())
            .union(&a3.ade_type().unwrap())
    );
}
