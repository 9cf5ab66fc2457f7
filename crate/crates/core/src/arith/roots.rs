//! Exact real-root isolation.
//!
//! Isolation runs on the square-free part by Descartes' rule of signs with
//! interval bisection (Vincent–Collins–Akritas style); `sturm_count` provides
//! an independent Sturm-sequence count used as a cross-check by the test
//! suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{poly_gcd, squarefree_decomposition, IntPoly};

/// Closed rational interval [lo, hi] isolating exactly one real root.
/// A point interval (lo = hi) means the root is exactly that rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    // good enough for display: scale to keep precision on moderate magnitudes
    let num = x.numer();
    let den = x.denom();
    let fnum = bigint_to_f64(num);
    let fden = bigint_to_f64(den);
    fnum / fden
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // BigInt -> f64 via string round-trip only for huge values
    if let Some(v) = to_i128(x) {
        v as f64
    } else {
        x.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
    }
}

fn to_i128(x: &BigInt) -> Option<i128> {
    use num_traits::ToPrimitive;
    x.to_i128()
}

/// Isolate all real roots > 1 of `p`, with multiplicities.
///
/// Output intervals are disjoint, each containing exactly one root of the
/// square-free part, ordered increasingly; multiplicity comes from the
/// square-free decomposition. Default isolation width 2^-32 (point intervals
/// for rational roots).
pub fn isolate_real_roots_above_one(p: &IntPoly) -> Vec<(RootInterval, usize)> {
    isolate_real_roots_above_one_width(p, &default_width())
}

pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1u64 << 32))
}

pub fn isolate_real_roots_above_one_width(
    p: &IntPoly,
    width: &BigRational,
) -> Vec<(RootInterval, usize)> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    let mut out = Vec::new();
    for (factor, mult) in squarefree_decomposition(p) {
        for iv in isolate_squarefree_above(&factor, &BigRational::one()) {
            let refined = refine_interval(&factor, iv, width);
            out.push((refined, mult));
        }
    }
    out.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    out
}

/// Isolating intervals for the roots of square-free `q` in (bound, +inf).
fn isolate_squarefree_above(q: &IntPoly, above: &BigRational) -> Vec<RootInterval> {
    let Some(deg) = q.degree() else { return vec![] };
    if deg == 0 {
        return vec![];
    }
    // Cauchy bound: all roots have |x| <= 1 + max |c_i| / |lead|
    let lead = q.leading().abs();
    let maxc = q
        .coeffs()
        .iter()
        .take(deg)
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let bound = BigRational::one() + BigRational::new(maxc, lead);
    let hi = if &bound > above { bound } else { above + BigRational::one() };
    let mut out = Vec::new();
    let mut stack = vec![(above.clone(), hi)];
    while let Some((a, b)) = stack.pop() {
        let n = descartes_bound(q, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo: a, hi: b });
            continue;
        }
        let m = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        if q.eval_rational(&m).is_zero() {
            out.push(RootInterval { lo: m.clone(), hi: m.clone() });
        }
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Descartes bound for the number of roots of q in the open interval (a, b):
/// sign variations of (1+x)^deg * q((a + b x)/(1 + x)) cleared of denominators.
fn descartes_bound(q: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    // substitute x -> (a + b t)/(1 + t), clear (1+t)^deg:
    // sum_i c_i (a + b t)^i (1 + t)^(deg - i)
    let deg = q.degree().unwrap();
    // work over integers: a = pa/qa, b = pb/qb; scale by (qa*qb)^deg
    let (pa, qa) = (a.numer().clone(), a.denom().clone());
    let (pb, qb) = (b.numer().clone(), b.denom().clone());
    // (a + b t) -> (pa*qb + pb*qa t) / (qa qb)
    let lin_a = IntPoly::from_coeffs(vec![&pa * &qb, &pb * &qa]);
    let lin_1 = IntPoly::from_coeffs_i64(&[1, 1]);
    let mut acc = IntPoly::zero();
    let scale = &qa * &qb;
    let mut scale_pow = vec![BigInt::one()];
    for _ in 0..deg {
        let last = scale_pow.last().unwrap().clone();
        scale_pow.push(last * &scale);
    }
    for (i, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // c * (scale)^(deg - i) * lin_a^i * lin_1^(deg - i)
        let term = lin_a
            .pow(i)
            .mul(&lin_1.pow(deg - i))
            .mul(&IntPoly::from_coeffs(vec![c * &scale_pow[deg - i]]));
        acc = acc.add(&term);
    }
    acc.sign_variations()
}

/// Shrink an isolating interval of square-free `q` to the requested width by
/// sign-change bisection. Point intervals pass through unchanged. The input
/// must contain exactly one root of `q` strictly inside (endpoints may be
/// other roots of `q`, e.g. the lower cutoff 1).
pub fn refine_interval(q: &IntPoly, iv: RootInterval, width: &BigRational) -> RootInterval {
    if iv.lo == iv.hi {
        return iv;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = iv.lo;
    let mut hi = iv.hi;
    // peel off endpoint roots: decide the half containing the interior root
    // by Descartes parity, until both endpoint values are non-zero
    loop {
        let flo = q.eval_rational(&lo);
        let fhi = q.eval_rational(&hi);
        if !flo.is_zero() && !fhi.is_zero() {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let fmid = q.eval_rational(&mid);
        if fmid.is_zero() {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if descartes_bound(q, &lo, &mid) % 2 == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut flo = q.eval_rational(&lo);
    debug_assert!(
        flo.is_positive() != q.eval_rational(&hi).is_positive(),
        "isolating interval must bracket a sign change for a square-free factor"
    );
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let fmid = q.eval_rational(&mid);
        if fmid.is_zero() {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if fmid.is_positive() == flo.is_positive() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    RootInterval { lo, hi }
}

/// Number of distinct real roots of `p` in the half-open interval (a, b],
/// by Sturm's theorem. Independent of the Descartes isolation path.
pub fn sturm_count(p: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    let sf = squarefree_part(p);
    let chain = sturm_chain(&sf);
    let va = sign_variations_at(&chain, a);
    let vb = sign_variations_at(&chain, b);
    va.saturating_sub(vb)
}

fn squarefree_part(p: &IntPoly) -> IntPoly {
    let g = poly_gcd(p, &p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return p.primitive_part();
    }
    // exact over Q after scaling
    let sd = p.degree().unwrap();
    let gd = g.degree().unwrap();
    let scale = g.leading().pow((sd - gd + 1) as u32);
    let scaled = IntPoly::from_coeffs(p.coeffs().iter().map(|c| c * &scale).collect());
    scaled.exact_div(&g).expect("gcd divides").primitive_part()
}

fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = neg_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

/// -(f mod g), computed over Q and rescaled to a primitive integer poly with
/// the correct sign.
fn neg_rem(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(df), Some(dg)) => (df, dg),
        _ => return IntPoly::zero(),
    };
    if df < dg {
        return f.neg();
    }
    // pseudo-remainder has sign lead(g)^(df-dg+1) * rem; fix so the result is
    // a positive multiple of -(f mod g)
    let lead = g.leading();
    let e = (df - dg + 1) as u32;
    let mut rem = IntPoly::from_coeffs(f.coeffs().iter().map(|c| c * lead.pow(e)).collect());
    while let Some(dr) = rem.degree() {
        if dr < dg {
            break;
        }
        let c = rem.leading();
        let q = &c / &lead;
        debug_assert_eq!(&q * &lead, c);
        let mut shifted = vec![BigInt::zero(); dr - dg];
        shifted.extend(g.coeffs().iter().map(|x| x * &q));
        rem = rem.sub(&IntPoly::from_coeffs(shifted));
    }
    let mut r = rem.neg();
    if lead.is_negative() && e % 2 == 1 {
        r = r.neg();
    }
    let content = r.content();
    if content > BigInt::one() {
        r = IntPoly::from_coeffs(r.coeffs().iter().map(|c| c / &content).collect());
    }
    r
}

fn sign_variations_at(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let v = p.eval_rational(x);
        let s = if v.is_zero() {
            continue;
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}
