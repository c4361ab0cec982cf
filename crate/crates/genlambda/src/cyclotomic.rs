//! Exact arithmetic in the cyclotomic field Q(ζ_N) and its ring of integers.
//!
//! Elements are stored on the power basis ζ^0, …, ζ^{φ(N)−1}, fully reduced
//! modulo the N-th cyclotomic polynomial, with arbitrary-precision rational
//! coefficients. The representation is canonical: two elements are equal iff
//! their coefficient vectors are equal, and an element lies in Z[ζ] iff every
//! coefficient has denominator one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;
use crate::numeric::{BigComplex, NumCtx};
use crate::numtheory::{gcd, totient};
use crate::Result;

/// Exact division of integer polynomials, `num / den` with `den` monic.
/// Panics if the remainder is nonzero (callers only divide exactly).
fn poly_div_exact(mut num: Vec<BigInt>, den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let dd = den.len() - 1;
    assert!(num.len() >= den.len());
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        let c = std::mem::replace(&mut num[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den[..dd].iter().enumerate() {
            let t = &c * dj;
            num[i - dd + j] -= t;
        }
        quot[i - dd] = c;
    }
    assert!(num.iter().all(BigInt::is_zero), "non-exact polynomial division");
    quot
}

/// Coefficients of the n-th cyclotomic polynomial, ascending degree, monic.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // Φ_n = (x^n − 1) / ∏_{d|n, d<n} Φ_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in crate::numtheory::divisors(n as i64) {
        if (d as u32) < n {
            num = poly_div_exact(num, &cyclotomic_poly(d as u32));
        }
    }
    num
}

struct Inner {
    n: u32,
    phi: usize,
    /// Monic Φ_N, ascending, length `phi + 1`.
    cyclo: Vec<BigInt>,
    /// ζ^j reduced mod Φ_N for 0 ≤ j < max(N, 2φ−1); rows of length `phi`.
    pow_table: Vec<Vec<BigRational>>,
    /// Residues in \[1, N\) coprime to N.
    units: Vec<i64>,
}

/// Shared per-level data for Q(ζ_N): the cyclotomic polynomial, reduction
/// tables for powers of ζ, and the unit group of Z/N.
///
/// Cloning is cheap (reference-counted). Levels below 7 are rejected.
#[derive(Clone)]
pub struct CycloContext(Arc<Inner>);

impl fmt::Debug for CycloContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloContext(N={})", self.0.n)
    }
}

impl PartialEq for CycloContext {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n
    }
}

impl Eq for CycloContext {}

impl CycloContext {
    pub fn new(n: u32) -> Result<Self> {
        if n < 7 {
            return Err(Error::LevelTooSmall(n));
        }
        let phi = totient(n as i64) as usize;
        let cyclo = cyclotomic_poly(n);
        debug_assert_eq!(cyclo.len(), phi + 1);

        // Build x^j mod Φ_N by repeated multiplication by x.
        let rows = (n as usize).max(2 * phi - 1);
        let mut pow_table: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        pow_table.push(cur.clone());
        for _ in 1..rows {
            // multiply by x
            let lead = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !lead.is_zero() {
                for (i, c) in cyclo[..phi].iter().enumerate() {
                    cur[i] -= &lead * BigRational::from(c.clone());
                }
            }
            pow_table.push(cur.clone());
        }

        let units = (1..n as i64).filter(|h| gcd(*h, n as i64) == 1).collect();

        Ok(CycloContext(Arc::new(Inner { n, phi, cyclo, pow_table, units })))
    }

    pub fn level(&self) -> u32 {
        self.0.n
    }

    /// Degree φ(N) of Q(ζ_N) over Q.
    pub fn degree(&self) -> usize {
        self.0.phi
    }

    /// Monic minimal polynomial of ζ_N, ascending coefficients.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.0.cyclo
    }

    /// Residues in \[1, N\) coprime to N, ascending.
    pub fn units(&self) -> &[i64] {
        &self.0.units
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            ctx: self.clone(),
            coeffs: vec![BigRational::zero(); self.0.phi],
        }
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> CyclotomicNumber {
        let mut z = self.zero();
        z.coeffs[0] = BigRational::from_integer(BigInt::from(v));
        z
    }

    pub fn from_ratio(&self, v: BigRational) -> CyclotomicNumber {
        let mut z = self.zero();
        z.coeffs[0] = v;
        z
    }

    /// ζ^k with k taken modulo N; `zeta_pow(0)` is the multiplicative identity.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicNumber {
        let k = k.rem_euclid(self.0.n as i64) as usize;
        CyclotomicNumber {
            ctx: self.clone(),
            coeffs: self.0.pow_table[k].clone(),
        }
    }

    /// 1 − ζ^k.
    pub fn one_minus_zeta(&self, k: i64) -> CyclotomicNumber {
        &self.one() - &self.zeta_pow(k)
    }

    /// Element from explicit power-basis coefficients (at most φ(N) of them).
    pub fn from_coeffs(&self, coeffs: &[BigRational]) -> CyclotomicNumber {
        assert!(coeffs.len() <= self.0.phi, "coefficient vector too long");
        let mut z = self.zero();
        z.coeffs[..coeffs.len()].clone_from_slice(coeffs);
        z
    }
}

/// An exact element of Q(ζ_N) in canonical power-basis form.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    ctx: CycloContext,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn context(&self) -> &CycloContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_zero)
    }

    /// `true` iff the element lies in Z[ζ].
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// The rational value if the element lies in Q, i.e. only the ζ^0
    /// coordinate is populated.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(BigRational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// `true` iff the element is a rational integer.
    pub fn is_rational_integer(&self) -> bool {
        self.as_rational().map(|c| c.denom().is_one()).unwrap_or(false)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        CyclotomicNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the (irreducible) cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("cyclotomic inverse of zero"));
        }
        let phi = self.ctx.0.phi;
        let modulus: Vec<BigRational> = self
            .ctx
            .0
            .cyclo
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        // (r0, s0), (r1, s1) with invariant r_i ≡ s_i * self (mod Φ)
        let mut r0 = modulus;
        let mut r1: Vec<BigRational> = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s_new = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            s0 = s1;
            r1 = r;
            s1 = s_new;
        }
        // Φ is irreducible, so the gcd with a nonzero element is a constant
        assert_eq!(r0.len(), 1, "cyclotomic polynomial must be coprime to nonzero element");
        debug_assert!(s0.len() <= phi);
        let c = r0[0].clone();
        let mut coeffs = vec![BigRational::zero(); phi];
        for (i, v) in s0.iter().enumerate() {
            coeffs[i] = v / &c;
        }
        let result = CyclotomicNumber { ctx: self.ctx.clone(), coeffs };
        debug_assert!((&result * self) == self.ctx.one());
        Ok(result)
    }

    /// Galois automorphism σ_h : ζ ↦ ζ^h, for h coprime to N.
    pub fn galois(&self, h: i64) -> Result<Self> {
        let n = self.ctx.0.n as i64;
        if gcd(h, n) != 1 {
            return Err(Error::NotCoprime(h, self.ctx.0.n));
        }
        let mut out = self.ctx.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.ctx.0.pow_table[((h * i as i64).rem_euclid(n)) as usize];
            for (o, r) in out.coeffs.iter_mut().zip(row) {
                *o += c * r;
            }
        }
        Ok(out)
    }

    /// Field norm: the product of all Galois conjugates, a rational number.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.ctx.one();
        for h in self.ctx.units() {
            acc = &acc * &self.galois(*h).expect("unit is coprime");
        }
        acc.as_rational()
            .expect("norm must be rational")
            .clone()
    }

    /// `true` iff the element is a unit of Z[ζ]; requires an integral input.
    pub fn is_unit_in_ring(&self) -> Result<bool> {
        if !self.is_integral() {
            return Err(Error::NonIntegral("unit test needs an element of Z[zeta]"));
        }
        let n = self.norm();
        Ok(n.abs() == BigRational::one())
    }

    /// Whether `self` divides `rhs` in Z[ζ]; returns the witness quotient.
    /// Both operands must be integral and `self` nonzero.
    pub fn divides_in_ring(&self, rhs: &Self) -> Result<Option<Self>> {
        if !self.is_integral() || !rhs.is_integral() {
            return Err(Error::NonIntegral("divisibility is tested in Z[zeta]"));
        }
        if self.is_zero() {
            return Err(Error::DivisionByZero("divisibility by zero"));
        }
        let q = rhs * &self.inv()?;
        Ok(if q.is_integral() { Some(q) } else { None })
    }

    /// Numeric embedding at ζ = exp(2πi/N).
    ///
    /// Works internally at `bits` plus the numeric guard; the result error is
    /// below 2^{−bits+g} with g = 10 + ceil(log2(φ(N)·max|c_i|)).
    pub fn embed(&self, bits: u32) -> BigComplex {
        let mut nc = NumCtx::new(bits);
        self.embed_in(&mut nc)
    }

    /// Same as [`embed`](Self::embed) but reusing a numeric context.
    pub fn embed_in(&self, nc: &mut NumCtx) -> BigComplex {
        let n = self.ctx.0.n;
        let pi = nc.pi();
        let two = nc.from_i64(2);
        let two_pi = nc.mul(&pi, &two);
        let level = nc.from_i64(n as i64);
        let mut acc = BigComplex::zero(nc);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let num = nc.mul(&two_pi, &nc.from_i64(i as i64));
            let theta = nc.div(&num, &level);
            let root = nc.exp_i(&theta);
            acc = acc.add(&root.scale(&nc.from_ratio(c), nc), nc);
        }
        acc
    }
}

fn same_ctx(a: &CyclotomicNumber, b: &CyclotomicNumber) {
    assert_eq!(
        a.ctx.0.n, b.ctx.0.n,
        "cyclotomic context mismatch: N={} vs N={}",
        a.ctx.0.n, b.ctx.0.n
    );
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        same_ctx(self, rhs);
        CyclotomicNumber {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        same_ctx(self, rhs);
        CyclotomicNumber {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        same_ctx(self, rhs);
        let phi = self.ctx.0.phi;
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut out: Vec<BigRational> = conv[..phi].to_vec();
        for (j, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            let row = &self.ctx.0.pow_table[j];
            for (o, r) in out.iter_mut().zip(row) {
                *o += c * r;
            }
        }
        CyclotomicNumber { ctx: self.ctx.clone(), coeffs: out }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "z")?;
            } else if i > 1 {
                write!(f, "z^{i}")?;
            }
        }
        Ok(())
    }
}

// -- small dense polynomial helpers over Q (for the inverse) --

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map(BigRational::is_zero).unwrap_or(false) {
        p.pop();
    }
    if p.len() == 1 && p[0].is_zero() {
        p.clear();
    }
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem: Vec<BigRational> = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for i in (b.len() - 1..rem.len()).rev() {
        let c = &rem[i] / lead;
        if c.is_zero() {
            continue;
        }
        quot[i - (b.len() - 1)] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            rem[i - (b.len() - 1) + j] -= t;
        }
    }
    trim(&mut rem);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: u32) -> CycloContext {
        CycloContext::new(n).unwrap()
    }

    fn random_elem(ctx: &CycloContext, rng: &mut ChaCha8Rng) -> CyclotomicNumber {
        let coeffs: Vec<BigRational> = (0..ctx.degree())
            .map(|_| {
                BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4)))
            })
            .collect();
        ctx.from_coeffs(&coeffs)
    }

    #[test]
    fn level_below_seven_rejected() {
        assert!(matches!(CycloContext::new(6), Err(Error::LevelTooSmall(6))));
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Φ_7 = 1 + x + ... + x^6, Φ_8 = x^4 + 1, Φ_12 = x^4 - x^2 + 1
        assert_eq!(cyclotomic_poly(7), (0..=6).map(|_| BigInt::one()).collect::<Vec<_>>());
        let p8 = cyclotomic_poly(8);
        assert_eq!(p8, vec![1, 0, 0, 0, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        let p12 = cyclotomic_poly(12);
        assert_eq!(p12, vec![1, 0, -1, 0, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn zeta_pow_wraps() {
        let c = ctx(7);
        assert_eq!(c.zeta_pow(7), c.one());
        assert_eq!(c.zeta_pow(-1), c.zeta_pow(6));
    }

    #[test]
    fn zeta8_fourth_power_is_minus_one() {
        // reduce x^4 mod Φ_8 = x^4 + 1
        let c = ctx(8);
        assert_eq!(c.zeta_pow(4), c.from_i64(-1));
        assert_eq!(c.zeta_pow(4).coeffs()[0], BigRational::from_integer((-1).into()));
    }

    #[test]
    fn additive_identity_and_inverse_pair() {
        let c = ctx(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_elem(&c, &mut rng);
        assert_eq!(&a + &c.zero(), a);
        assert_eq!(&c.zeta_pow(1) * &c.zeta_pow(6), c.one());
    }

    #[test]
    fn product_of_units_is_seven() {
        // ∏_{a=1..6} (1 − ζ_7^a) = Φ_7(1) = 7
        let c = ctx(7);
        let mut acc = c.one();
        for a in 1..=6 {
            acc = &acc * &c.one_minus_zeta(a);
        }
        assert_eq!(acc, c.from_i64(7));
    }

    #[test]
    fn inverse_examples() {
        let c = ctx(7);
        assert_eq!(c.one().inv().unwrap(), c.one());
        assert_eq!(c.zeta_pow(1).inv().unwrap(), c.zeta_pow(6));
        let a = c.one_minus_zeta(1);
        let v = a.inv().unwrap();
        assert_eq!(&a * &v, c.one());
        assert!(matches!(c.zero().inv(), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn galois_basics_and_composition() {
        let c = ctx(7);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_elem(&c, &mut rng);
        assert_eq!(a.galois(1).unwrap(), a);
        assert_eq!(c.zeta_pow(1).galois(3).unwrap(), c.zeta_pow(3));
        assert!(matches!(a.galois(7), Err(Error::NotCoprime(7, 7))));
        for n in [7u32, 8, 9, 10, 11, 12] {
            let c = ctx(n);
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..100 {
                let a = random_elem(&c, &mut rng);
                for &h in c.units() {
                    for &h2 in c.units() {
                        let lhs = a.galois(h).unwrap().galois(h2).unwrap();
                        let rhs = a.galois((h * h2).rem_euclid(n as i64)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        let c7 = ctx(7);
        assert_eq!(c7.one().norm(), BigRational::one());
        assert_eq!(c7.one_minus_zeta(1).norm(), BigRational::from_integer(7.into()));
        // N/δ = 12/2 = 6 has two distinct primes, so 1 − ζ² is a unit
        let c12 = ctx(12);
        let n = c12.one_minus_zeta(2).norm();
        assert_eq!(n.abs(), BigRational::one());
        // direct conjugate product agrees
        let direct: BigRational = {
            let mut acc = c12.one();
            for &h in c12.units() {
                acc = &acc * &c12.one_minus_zeta(2).galois(h).unwrap();
            }
            acc.as_rational().unwrap().clone()
        };
        assert_eq!(n, direct);
    }

    #[test]
    fn unit_tests_in_ring() {
        let c7 = ctx(7);
        assert!(c7.one().is_unit_in_ring().unwrap());
        assert!(!c7.one_minus_zeta(1).is_unit_in_ring().unwrap());
        let c12 = ctx(12);
        assert!(c12.one_minus_zeta(2).is_unit_in_ring().unwrap());
        let half = c7.from_ratio(BigRational::new(1.into(), 2.into()));
        assert!(matches!(half.is_unit_in_ring(), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn divisibility_examples() {
        // geometric-sum identity: (1 − ζ⁴)/(1 − ζ²) = 1 + ζ² at N = 10
        let c10 = ctx(10);
        let q = c10
            .one_minus_zeta(2)
            .divides_in_ring(&c10.one_minus_zeta(4))
            .unwrap()
            .expect("divides");
        assert_eq!(q, &c10.one() + &c10.zeta_pow(2));
        // δ = gcd(1,7) = 1 divides 3: quotient 1 + ζ + ζ²
        let c7 = ctx(7);
        let q = c7
            .one_minus_zeta(1)
            .divides_in_ring(&c7.one_minus_zeta(3))
            .unwrap()
            .expect("divides");
        assert_eq!(q, &(&c7.one() + &c7.zeta_pow(1)) + &c7.zeta_pow(2));
        // everything divides zero, with witness zero
        assert_eq!(
            c7.one_minus_zeta(1).divides_in_ring(&c7.zero()).unwrap(),
            Some(c7.zero())
        );
        assert!(c7.zero().divides_in_ring(&c7.one()).is_err());
    }

    #[test]
    fn embedding_examples() {
        let c8 = ctx(8);
        let mut nc = NumCtx::new(128);
        let v = c8.zeta_pow(2).embed_in(&mut nc); // ζ_8² = i
        assert!(nc.abs_lt(&v.re, &nc.pow2(-120)));
        assert!(nc.abs_lt(&nc.sub(&v.im, &nc.from_i64(1)), &nc.pow2(-120)));

        let c7 = ctx(7);
        let v = c7.one_minus_zeta(1).embed_in(&mut nc);
        let mag = v.abs(&nc);
        // |1 − ζ_7| = 2 sin(π/7)
        let pi = nc.pi();
        let expected = {
            let arg = nc.div(&pi, &nc.from_i64(7));
            let mut t = nc.exp_i(&arg).im;
            t = nc.mul(&t, &nc.from_i64(2));
            t
        };
        assert!(nc.abs_lt(&nc.sub(&mag, &expected), &nc.pow2(-118)));

        assert_eq!(
            to_f64(&c7.one().embed(64).re),
            1.0
        );
    }

    fn to_f64(x: &astro_float::BigFloat) -> f64 {
        // test-only crude conversion via decimal string
        crate::numeric::to_decimal_string(x, 17).parse::<f64>().unwrap_or(f64::NAN)
    }

    #[test]
    fn canonical_form_soundness() {
        for n in [7u32, 9, 12] {
            let c = ctx(n);
            let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
            for _ in 0..50 {
                let a = random_elem(&c, &mut rng);
                let b = random_elem(&c, &mut rng);
                let equal_vec = a.coeffs() == b.coeffs();
                assert_eq!((&a - &b).is_zero(), equal_vec);
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        for n in [7u32, 8, 10, 12] {
            let c = ctx(n);
            let mut rng = ChaCha8Rng::seed_from_u64(300 + n as u64);
            for _ in 0..25 {
                let a = random_elem(&c, &mut rng);
                let b = random_elem(&c, &mut rng);
                let d = random_elem(&c, &mut rng);
                assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
                assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
                if !a.is_zero() {
                    assert_eq!(&a.inv().unwrap() * &a, c.one());
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "context mismatch")]
    fn context_mismatch_panics() {
        let a = ctx(7).one();
        let b = ctx(8).one();
        let _ = &a + &b;
    }

    #[test]
    fn norm_is_multiplicative() {
        let c = ctx(9);
        assert_eq!(c.degree(), totient(9) as usize);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let a = random_elem(&c, &mut rng);
            let b = random_elem(&c, &mut rng);
            let lhs = (&a * &b).norm();
            let rhs = a.norm() * b.norm();
            assert_eq!(lhs, rhs);
        }
    }
}
