//! Univariate integer polynomials, exact division, cyclotomic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients lowest degree first, leading coefficient
/// non-zero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_coeffs_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::from_coeffs(c)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() { None } else { Some(self.coeffs.len() - 1) }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; None when the remainder is non-zero or a coefficient
    /// division fails over Z.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dn, dd) = (self.degree()?, divisor.degree()?);
        if dn < dd {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// gcd of the coefficients (non-negative); 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Palindrome test: p(x) = x^deg p(1/x).
    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// x -> x + 1 (Taylor shift).
    pub fn shift_by_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division by (x - (-1))
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        Self::from_coeffs(c)
    }

    /// Reverse coefficients: x^deg * p(1/x).
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }

    /// p(c * x) for integer c.
    pub fn scale_arg(&self, c: &BigInt) -> Self {
        let mut pw = BigInt::one();
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| {
                    let r = a * &pw;
                    pw = &pw * c;
                    r
                })
                .collect(),
        )
    }

    /// Number of sign variations in the coefficient sequence (zeros skipped).
    pub fn sign_variations(&self) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for c in &self.coeffs {
            let s = if c.is_zero() {
                continue;
            } else if c.is_positive() {
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
}

/// Polynomial gcd over Q, returned as a primitive integer polynomial with
/// positive leading coefficient (monic-equivalent content-normalized form).
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut f = a.primitive_part();
    let mut g = b.primitive_part();
    if f.is_zero() {
        return g;
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g).primitive_part();
        f = g;
        g = r;
    }
    if f.leading().is_negative() {
        f = f.neg();
    }
    f
}

/// Pseudo-remainder of f by g (f, g non-zero, deg f >= deg g not required).
fn pseudo_rem(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(df), Some(dg)) => (df, dg),
        _ => return IntPoly::zero(),
    };
    if df < dg {
        return f.clone();
    }
    let lead = g.leading();
    let mut rem = f.clone();
    while let Some(dr) = rem.degree() {
        if dr < dg {
            break;
        }
        let c = rem.leading();
        // rem = lead*rem - c * x^(dr-dg) * g
        let mut shifted = vec![BigInt::zero(); dr - dg];
        shifted.extend(g.coeffs().iter().map(|x| x * &c));
        let shifted = IntPoly::from_coeffs(shifted);
        rem = IntPoly::from_coeffs(rem.coeffs().iter().map(|x| x * &lead).collect()).sub(&shifted);
    }
    rem
}

/// Square-free decomposition (Yun, run over Q): returns
/// [(factor, multiplicity)] with factors primitive integer polynomials,
/// pairwise coprime, and product of factor^mult = p up to a constant.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let f = RatPoly::from_int(p);
    let df = f.derivative();
    let g = RatPoly::gcd(&f, &df);
    let mut b = f.div_exact(&g);
    let mut c = df.div_exact(&g);
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let d = c.sub(&b.derivative());
        let a = RatPoly::gcd(&b, &d);
        if a.degree() > 0 {
            out.push((a.to_primitive_int(), i));
        }
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        i += 1;
        if b.degree() == 0 {
            break;
        }
    }
    out
}

/// Rational-coefficient polynomial, internal helper for Yun's algorithm.
struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn from_int(p: &IntPoly) -> Self {
        RatPoly {
            coeffs: p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RatPoly { coeffs: vec![] };
        }
        RatPoly {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i + 1)))
                .collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<BigRational>, i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
        let mut p = RatPoly {
            coeffs: (0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect(),
        };
        p.trim();
        p
    }

    /// Remainder of self by g (g non-zero).
    fn rem(&self, g: &Self) -> Self {
        let mut r = RatPoly { coeffs: self.coeffs.clone() };
        r.trim();
        let dg = g.coeffs.len() - 1;
        let lead = g.coeffs.last().unwrap().clone();
        while !r.is_zero() && r.coeffs.len() - 1 >= dg {
            let dr = r.coeffs.len() - 1;
            let q = r.coeffs.last().unwrap() / &lead;
            for (j, gc) in g.coeffs.iter().enumerate() {
                let t = &q * gc;
                r.coeffs[dr - dg + j] -= t;
            }
            r.trim();
        }
        r
    }

    /// Exact quotient (panics when not exact, per Yun's invariants).
    fn div_exact(&self, g: &Self) -> Self {
        if self.is_zero() {
            return RatPoly { coeffs: vec![] };
        }
        let dg = g.coeffs.len() - 1;
        let lead = g.coeffs.last().unwrap().clone();
        let mut r = RatPoly { coeffs: self.coeffs.clone() };
        r.trim();
        let dr = r.coeffs.len() - 1;
        assert!(dr >= dg, "division not exact");
        let mut q = vec![BigRational::zero(); dr - dg + 1];
        for k in (0..=dr - dg).rev() {
            let c = r.coeffs.get(k + dg).cloned().unwrap_or_else(BigRational::zero);
            if c.is_zero() {
                continue;
            }
            let qc = &c / &lead;
            q[k] = qc.clone();
            for (j, gc) in g.coeffs.iter().enumerate() {
                let t = &qc * gc;
                r.coeffs[k + j] -= t;
            }
        }
        assert!(r.coeffs.iter().all(|c| c.is_zero()), "division not exact");
        let mut out = RatPoly { coeffs: q };
        out.trim();
        out
    }

    /// Monic gcd by Euclid.
    fn gcd(a: &Self, b: &Self) -> Self {
        let mut f = RatPoly { coeffs: a.coeffs.clone() };
        let mut g = RatPoly { coeffs: b.coeffs.clone() };
        f.trim();
        g.trim();
        while !g.is_zero() {
            let r = f.rem(&g);
            f = g;
            g = r;
        }
        if f.is_zero() {
            return f;
        }
        let lead = f.coeffs.last().unwrap().clone();
        RatPoly { coeffs: f.coeffs.iter().map(|c| c / &lead).collect() }
    }

    /// Clear denominators and divide by content.
    fn to_primitive_int(&self) -> IntPoly {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut p = IntPoly::from_coeffs(ints).primitive_part();
        if p.leading().is_negative() {
            p = p.neg();
        }
        p
    }
}

/// n-th cyclotomic polynomial, by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors (computed iteratively in
/// divisor order).
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    let mut table: Vec<(u64, IntPoly)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let phi = if d == 1 {
            IntPoly::from_coeffs_i64(&[-1, 1])
        } else {
            let mut p = IntPoly::x_pow_minus_one(d as usize);
            for (e, q) in &table {
                if d % e == 0 {
                    p = p.exact_div(q).expect("cyclotomic division is exact");
                }
            }
            p
        };
        table.push((d, phi));
    }
    table.pop().expect("n divides n").1
}

/// Euler totient, by trial factorization (arguments stay small here).
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
