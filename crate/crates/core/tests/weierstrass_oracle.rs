//! Agreement between the lambda-symmetry order and the nodal-root case
//! classification, on families whose discriminant roots come from an
//! independent quartic oracle: Delta0 = (a2 - t^2)(a2 + t^2), so the four
//! roots are the roots of two explicit quadratics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use zeroent_core::weierstrass::{
    classify_bp_case, delta0, lambda_symmetries, BPCase, BPFamily, Field, GaussRat,
};

fn gr(n: i64, d: i64) -> GaussRat {
    GaussRat::new(BigRational::new(BigInt::from(n), BigInt::from(d)), BigRational::zero())
}

fn gri(n: i64, d: i64) -> GaussRat {
    GaussRat::new(BigRational::zero(), BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Families with Gaussian-rational nodal positions, each paired with its
/// four roots obtained by factoring the two quadratics by hand (the
/// independent oracle), and the expected case.
fn oracle_families() -> Vec<(BPFamily<GaussRat>, Vec<GaussRat>, BPCase, usize)> {
    vec![
        // a2 = s^2: Delta0 = (s^2 - t^2)(s^2 + t^2): roots 1, -1, i, -i
        (
            BPFamily::new(gr(1, 1), gr(0, 1), gr(0, 1)),
            vec![gr(1, 1), gr(-1, 1), gri(1, 1), gri(-1, 1)],
            BPCase::A,
            4,
        ),
        // a2 = s^2 - 5/4 t^2: factors s^2 - 9/4 t^2 and s^2 - 1/4 t^2:
        // roots 3/2, -3/2, 1/2, -1/2
        (
            BPFamily::new(gr(1, 1), gr(0, 1), gr(-5, 4)),
            vec![gr(3, 2), gr(-3, 2), gr(1, 2), gr(-1, 2)],
            BPCase::B,
            2,
        ),
        // a2 = s^2 + 5st + 5t^2: factors (s + t)(s + 4t) and (s + 2t)(s + 3t):
        // roots -1, -4, -2, -3
        (
            BPFamily::new(gr(1, 1), gr(5, 1), gr(5, 1)),
            vec![gr(-1, 1), gr(-4, 1), gr(-2, 1), gr(-3, 1)],
            BPCase::C,
            1,
        ),
    ]
}

#[test]
fn roots_vanish_on_delta0() {
    let one = gr(1, 1);
    for (fam, roots, _, _) in oracle_families() {
        let d0 = delta0(&fam);
        for r in &roots {
            assert!(d0.eval(r, &one).is_zero(), "Delta0({r:?}, 1) = 0");
        }
    }
}

#[test]
fn case_agrees_with_symmetry_order() {
    for (fam, roots, case, n) in oracle_families() {
        let sym = lambda_symmetries(&fam).unwrap();
        assert_eq!(sym.n, n);
        let (got, _) = classify_bp_case(&roots).unwrap();
        assert_eq!(got, case);
        // the documented mapping n = 4/2/1 <-> (a)/(b)/(c)
        let from_n = match sym.n {
            4 => BPCase::A,
            2 => BPCase::B,
            _ => BPCase::C,
        };
        assert_eq!(from_n, got);
    }
}

#[test]
fn symmetry_subgroup_elements_fix_delta0_projectively() {
    for (fam, _, _, _) in oracle_families() {
        let d0 = delta0(&fam);
        let sym = lambda_symmetries(&fam).unwrap();
        for lam in &sym.subgroup {
            assert!(d0.scale_s(lam).proportional_to(&d0));
        }
        assert!(4 % sym.n == 0, "order divides 4");
    }
}
