//! High-precision evaluation of φ_s, Λ_{k,ℓ} and j at points of the upper
//! half plane, and certification that Λ_{k,ℓ}(α) is an algebraic integer at
//! class-number-one imaginary quadratic points.
//!
//! Evaluation uses the same q-expansions as the exact layer, summed
//! numerically with tail bounds; certification evaluates the exact modular
//! equation at the rounded j(α) and verifies that the resulting monic
//! integer polynomial annihilates the computed Λ(α) to within 2^{−bits/4}.

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::modpoly::{ModularEquation, ModularEquationFile};
use crate::numeric::{
    horner_bigint, to_bigint_round, to_decimal_string, to_f64_lossy, BigComplex, NumCtx,
};
use crate::numtheory::modn;
use crate::phiexp::{LambdaParams, UnimodularMatrix};
use crate::Result;

/// Anything that can produce the monic integer annihilator Φ(X, j₀):
/// an in-memory [`ModularEquation`] or its serialized file form.
pub trait AnnihilatorSource {
    fn is_verified(&self) -> bool;
    /// (level, k, ℓ) the equation was built for.
    fn meta(&self) -> (u32, i64, i64);
    fn annihilator_at(&self, j0: &BigInt) -> Result<Vec<BigInt>>;
}

impl AnnihilatorSource for ModularEquation {
    fn is_verified(&self) -> bool {
        self.verified_integer()
    }

    fn meta(&self) -> (u32, i64, i64) {
        let (k, l) = self.params();
        (self.level(), k, l)
    }

    fn annihilator_at(&self, j0: &BigInt) -> Result<Vec<BigInt>> {
        self.evaluate_at_j(j0)
    }
}

impl AnnihilatorSource for ModularEquationFile {
    fn is_verified(&self) -> bool {
        self.verified_integer
    }

    fn meta(&self) -> (u32, i64, i64) {
        (self.level, self.k, self.l)
    }

    fn annihilator_at(&self, j0: &BigInt) -> Result<Vec<BigInt>> {
        Ok(self.evaluate_at_j(j0))
    }
}

/// An imaginary quadratic point: the root α = (−b + √(b²−4ac))/(2a) of
/// a·x² + b·x + c with negative discriminant, taken in the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CmPoint {
    a: i64,
    b: i64,
    c: i64,
}

impl CmPoint {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 {
            return Err(Error::InvalidParameter(format!(
                "leading quadratic coefficient must be positive, got {a}"
            )));
        }
        let disc = b * b - 4 * a * c;
        if disc >= 0 {
            return Err(Error::InvalidParameter(format!(
                "discriminant {disc} is not negative"
            )));
        }
        Ok(CmPoint { a, b, c })
    }

    /// Canonical point α = (D + √D)/2 for a negative discriminant
    /// D ≡ 0, 1 (mod 4); α satisfies α² − Dα + (D²−D)/4 = 0.
    pub fn from_discriminant(d: i64) -> Result<Self> {
        if d >= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
            return Err(Error::InvalidParameter(format!(
                "need a negative discriminant congruent to 0 or 1 mod 4, got {d}"
            )));
        }
        CmPoint::new(1, -d, (d * d - d) / 4)
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    ///√D on the principal branch (positive imaginary part), so the
    /// embedding always lands in the upper half plane.
    pub fn embed(&self, nc: &mut NumCtx) -> BigComplex {
        let disc = self.discriminant();
        let root = nc.sqrt(&nc.from_i64(-disc));
        let two_a = nc.from_i64(2 * self.a);
        BigComplex {
            re: nc.div(&nc.from_i64(-self.b), &two_a),
            im: nc.div(&root, &two_a),
        }
    }
}

fn require_upper_half(tau: &BigComplex) -> Result<()> {
    if !tau.im.is_positive() {
        return Err(Error::InvalidParameter(
            "evaluation point must lie in the upper half plane".into(),
        ));
    }
    Ok(())
}

/// Number of q̃-terms so the dropped tail (with coefficients growing like
/// exp(growth·√n) times a fixed power) stays below 2^{−bits−margin}.
fn term_count(im_tau: f64, bits: u32, growth: f64) -> usize {
    let a = ((bits as f64) + 48.0) * std::f64::consts::LN_2;
    let rate = 2.0 * std::f64::consts::PI * im_tau;
    let mut n = (a / rate).max(2.0);
    for _ in 0..4 {
        n = (a + growth * n.sqrt() + 3.0 * n.ln().max(1.0)) / rate;
    }
    n.ceil() as usize + 8
}

/// Q = e^{2πiτ} at working precision.
fn nome(tau: &BigComplex, nc: &mut NumCtx) -> BigComplex {
    let pi = nc.pi();
    let two_pi = nc.mul(&pi, &nc.from_i64(2));
    let mag = {
        let e = nc.mul(&two_pi, &tau.im);
        let e = nc.sub(&nc.zero(), &e);
        nc.exp(&e)
    };
    let phase = nc.mul(&two_pi, &tau.re);
    nc.exp_i(&phase).scale(&mag, nc)
}

/// φ_s(τ) = ℘(s/N; Z+Zτ)/(2πi)² − 1/12, summed from its q̃-expansion:
/// u/(1−u)² − Σ_{e≥1} (Σ_{n|e} n(2−2Re u^n)) Q^e with u = e^{2πis/N}.
pub fn eval_phi(s: i64, tau: &BigComplex, n: u32, nc: &mut NumCtx) -> Result<BigComplex> {
    require_upper_half(tau)?;
    let ni = n as i64;
    if modn(s, ni) == 0 {
        return Err(Error::InvalidParameter(format!(
            "phi_s needs s not divisible by N, got s={s}"
        )));
    }
    let im = to_f64_lossy(&tau.im);
    let e_max = term_count(im, (nc.working_bits()) as u32, 0.0);

    let pi = nc.pi();
    let theta = {
        let t = nc.mul(&pi, &nc.from_i64(2 * modn(s, ni)));
        nc.div(&t, &nc.from_i64(ni))
    };
    let u = nc.exp_i(&theta);

    // u^n real parts for the divisor-sum coefficients
    let mut re_pows = Vec::with_capacity(e_max + 1);
    re_pows.push(nc.from_i64(1));
    let mut upow = BigComplex::from_re(nc.from_i64(1), nc);
    for _ in 1..=e_max {
        upow = upow.mul(&u, nc);
        re_pows.push(upow.re.clone());
    }

    let q = nome(tau, nc);
    let one = nc.from_i64(1);
    let head = {
        let denom = BigComplex {
            re: nc.sub(&one, &u.re),
            im: nc.sub(&nc.zero(), &u.im),
        };
        u.div(&denom.mul(&denom, nc), nc)
    };

    let mut acc = head;
    let mut qe = BigComplex::from_re(nc.from_i64(1), nc);
    for e in 1..=e_max {
        qe = qe.mul(&q, nc);
        // c_e = Σ_{n|e} n · (2 − 2·Re u^n), a real number
        let mut ce = nc.zero();
        let mut d = 1;
        while d * d <= e {
            if e % d == 0 {
                let mut add_term = |nn: usize| {
                    let two_minus = nc.sub(&nc.from_i64(2), &nc.mul(&nc.from_i64(2), &re_pows[nn]));
                    ce = nc.add(&ce, &nc.mul(&nc.from_i64(nn as i64), &two_minus));
                };
                add_term(d);
                if d != e / d {
                    add_term(e / d);
                }
            }
            d += 1;
        }
        acc = acc.sub(&qe.scale(&ce, nc), nc);
    }
    Ok(acc)
}

/// Λ_{k,ℓ}(τ) = (φ_k − φ_1)/(φ_ℓ − φ_1) at τ.
pub fn eval_lambda_at(p: &LambdaParams, tau: &BigComplex, nc: &mut NumCtx) -> Result<BigComplex> {
    let n = p.level();
    let pk = eval_phi(p.k(), tau, n, nc)?;
    let pl = eval_phi(p.l(), tau, n, nc)?;
    let p1 = eval_phi(1, tau, n, nc)?;
    let num = pk.sub(&p1, nc);
    let den = pl.sub(&p1, nc);
    let floor = nc.pow2(-(nc.working_bits() as i64) / 2);
    if !nc.abs_lt(&floor, &den.abs(nc)) {
        return Err(Error::PrecisionExhausted(
            "lambda denominator is numerically indistinguishable from zero".into(),
        ));
    }
    Ok(num.div(&den, nc))
}

/// Λ_{k,ℓ}(α) at a CM point.
pub fn eval_lambda(p: &LambdaParams, pt: &CmPoint, bits: u32) -> Result<BigComplex> {
    let mut nc = NumCtx::new(bits);
    let tau = pt.embed(&mut nc);
    eval_lambda_at(p, &tau, &mut nc)
}

/// j(τ) via E₄³/Δ, with Δ = Q·(pentagonal η-sum)²⁴.
pub fn eval_j(tau: &BigComplex, nc: &mut NumCtx) -> Result<BigComplex> {
    require_upper_half(tau)?;
    let im = to_f64_lossy(&tau.im);
    // j-coefficients grow like exp(4π√n)
    let e_max = term_count(im, nc.working_bits() as u32, 4.0 * std::f64::consts::PI);
    let q = nome(tau, nc);

    // σ₃ sieve in machine integers (e_max stays small at desk scale)
    let mut sigma3 = vec![0i64; e_max + 1];
    for d in 1..=e_max {
        let cube = (d * d * d) as i64;
        let mut m = d;
        while m <= e_max {
            sigma3[m] += cube;
            m += d;
        }
    }

    let mut e4 = BigComplex::from_re(nc.from_i64(1), nc);
    let mut qe = BigComplex::from_re(nc.from_i64(1), nc);
    for s3 in sigma3.iter().skip(1) {
        qe = qe.mul(&q, nc);
        e4 = e4.add(&qe.scale(&nc.from_i64(240 * s3), nc), nc);
    }

    // pentagonal sum Σ (−1)^k Q^{k(3k−1)/2}
    let mut eta_sum = BigComplex::from_re(nc.from_i64(1), nc);
    let mut k = 1i64;
    loop {
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 as usize > e_max && p2 as usize > e_max {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for p in [p1, p2] {
            if (p as usize) <= e_max {
                let qp = q.powi(p as u64, nc);
                eta_sum = eta_sum.add(&qp.scale(&nc.from_i64(sign), nc), nc);
            }
        }
        k += 1;
    }
    let delta = q.mul(&eta_sum.powi(24, nc), nc);
    let e4_cubed = e4.powi(3, nc);
    Ok(e4_cubed.div(&delta, nc))
}

/// W_{[a₁,a₂,a₃]}∘A evaluated at τ, i.e. the φ-quotient at A(τ).
pub fn eval_w_slash_at(
    a1: i64,
    a2: i64,
    a3: i64,
    a: &UnimodularMatrix,
    tau: &BigComplex,
    n: u32,
    nc: &mut NumCtx,
) -> Result<BigComplex> {
    require_upper_half(tau)?;
    let t2 = moebius(a, tau, nc);
    let f1 = eval_phi(a1, &t2, n, nc)?;
    let f2 = eval_phi(a2, &t2, n, nc)?;
    let f3 = eval_phi(a3, &t2, n, nc)?;
    let num = f1.sub(&f3, nc);
    let den = f2.sub(&f3, nc);
    let floor = nc.pow2(-(nc.working_bits() as i64) / 2);
    if !nc.abs_lt(&floor, &den.abs(nc)) {
        return Err(Error::PrecisionExhausted(
            "W denominator is numerically indistinguishable from zero".into(),
        ));
    }
    Ok(num.div(&den, nc))
}

/// A(τ) = (aτ + b)/(cτ + d).
pub fn moebius(a: &UnimodularMatrix, tau: &BigComplex, nc: &NumCtx) -> BigComplex {
    let num = BigComplex {
        re: nc.add(&nc.mul(&nc.from_i64(a.a), &tau.re), &nc.from_i64(a.b)),
        im: nc.mul(&nc.from_i64(a.a), &tau.im),
    };
    let den = BigComplex {
        re: nc.add(&nc.mul(&nc.from_i64(a.c), &tau.re), &nc.from_i64(a.d)),
        im: nc.mul(&nc.from_i64(a.c), &tau.im),
    };
    num.div(&den, nc)
}

/// How j(α) was rounded to an exact integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundingReport {
    /// Decimal rendering of the computed j(α).
    pub j_value: String,
    /// The rounded integer j₀.
    pub j_rounded: String,
    /// |j(α) − j₀|, decimal.
    pub distance: String,
    /// Upper bound for the numeric uncertainty of j(α) at this precision.
    pub resolution: String,
}

/// A numeric witness that Λ_{k,ℓ}(α) is an algebraic integer: a monic
/// integer polynomial (the modular equation at J = j₀) whose value at the
/// computed Λ(α) is below the declared tolerance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntegralityCertificate {
    pub level: u32,
    pub k: i64,
    pub l: i64,
    pub discriminant: i64,
    pub precision_bits: u32,
    /// Λ(α), decimal real/imaginary parts.
    pub value_re: String,
    pub value_im: String,
    /// Monic integer annihilator, ascending coefficients as decimal strings.
    pub annihilator: Vec<String>,
    /// |annihilator(Λ(α))|, decimal.
    pub residual: String,
    /// Residual tolerance 2^{−bits/4}, decimal.
    pub tolerance: String,
    pub j_rounding: RoundingReport,
}

/// Discriminants with class number one whose j-invariants this tool will
/// round and certify (non-maximal orders of small conductor included where
/// j is still a rational integer).
pub const CERTIFIABLE_DISCRIMINANTS: &[i64] =
    &[-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163];

/// Certify that Λ_{k,ℓ}(α) is an algebraic integer using a verified modular
/// equation. Only class-number-one j-values (rational integers) are
/// supported: j(α) must round to an integer within 10⁻⁶ at adequate
/// numeric resolution.
pub fn certify_integral(
    p: &LambdaParams,
    pt: &CmPoint,
    me: &impl AnnihilatorSource,
    bits: u32,
) -> Result<IntegralityCertificate> {
    if !me.is_verified() {
        return Err(Error::NotIntegerVerified);
    }
    if me.meta() != (p.level(), p.k(), p.l()) {
        return Err(Error::InvalidParameter(
            "modular equation was built for different parameters".into(),
        ));
    }
    if !CERTIFIABLE_DISCRIMINANTS.contains(&pt.discriminant()) {
        return Err(Error::UnsupportedClassNumber(pt.discriminant()));
    }
    let mut nc = NumCtx::new(bits);
    let tau = pt.embed(&mut nc);
    let jv = eval_j(&tau, &mut nc)?;

    // j(α) is real for CM points; a large imaginary part means a numerics bug
    let im_tol = nc.pow2(-(bits as i64) / 2);
    if !nc.abs_lt(&jv.im, &im_tol) {
        return Err(Error::NonIntegerJ(format!(
            "imaginary part {} of j(alpha) is not negligible",
            to_decimal_string(&jv.im, 8)
        )));
    }

    // resolution check: with |j| ~ 2^e, the value must still resolve
    // integers to far better than the acceptance distance
    let resolution = {
        let scale = jv.re.abs().max(&nc.from_i64(1));
        nc.mul(&scale, &nc.pow2(-(bits as i64)))
    };
    let resolution_limit = nc.pow10(-9);
    if !nc.abs_lt(&resolution, &resolution_limit) {
        return Err(Error::NonIntegerJ(format!(
            "numeric resolution {} at {} bits cannot distinguish integers near j(alpha)",
            to_decimal_string(&resolution, 8),
            bits
        )));
    }

    let j0 = to_bigint_round(&jv.re);
    let j0f = nc.from_bigint(&j0);
    let distance = nc.sub(&jv.re, &j0f).abs();
    let dist_limit = nc.pow10(-6);
    if !nc.abs_lt(&distance, &dist_limit) {
        return Err(Error::NonIntegerJ(format!(
            "j(alpha) = {} is {} away from the nearest integer",
            to_decimal_string(&jv.re, 30),
            to_decimal_string(&distance, 8)
        )));
    }

    let annihilator = me.annihilator_at(&j0)?;
    let value = eval_lambda_at(p, &tau, &mut nc)?;
    let residual = horner_bigint(&annihilator, &value, &nc).abs(&nc);
    let tolerance = nc.pow2(-(bits as i64) / 4);
    if !nc.abs_lt(&residual, &tolerance) {
        return Err(Error::ResidualTooLarge {
            residual: to_decimal_string(&residual, 10),
            tolerance: to_decimal_string(&tolerance, 10),
        });
    }

    Ok(IntegralityCertificate {
        level: p.level(),
        k: p.k(),
        l: p.l(),
        discriminant: pt.discriminant(),
        precision_bits: bits,
        value_re: to_decimal_string(&value.re, 50),
        value_im: to_decimal_string(&value.im, 50),
        annihilator: annihilator.iter().map(BigInt::to_string).collect(),
        residual: to_decimal_string(&residual, 10),
        tolerance: to_decimal_string(&tolerance, 10),
        j_rounding: RoundingReport {
            j_value: to_decimal_string(&jv.re, 40),
            j_rounded: j0.to_string(),
            distance: to_decimal_string(&distance, 8),
            resolution: to_decimal_string(&resolution, 8),
        },
    })
}

/// All roots of a monic integer polynomial by Durand–Kerner iteration.
fn polynomial_roots(coeffs: &[BigInt], nc: &NumCtx) -> Vec<BigComplex> {
    let deg = coeffs.len() - 1;
    // deterministic non-real starting points 0.4+0.9i times powers
    let base = BigComplex {
        re: nc.div(&nc.from_i64(2), &nc.from_i64(5)),
        im: nc.div(&nc.from_i64(9), &nc.from_i64(10)),
    };
    let mut roots: Vec<BigComplex> = (0..deg).map(|i| base.powi(i as u64 + 1, nc)).collect();
    let tol = nc.pow2(-(nc.working_bits() as i64) + 48);
    for _ in 0..200 {
        let mut max_delta = nc.zero();
        for i in 0..deg {
            let val = horner_bigint(coeffs, &roots[i], nc);
            let mut denom = BigComplex::from_re(nc.from_i64(1), nc);
            for j in 0..deg {
                if i != j {
                    denom = denom.mul(&roots[i].sub(&roots[j], nc), nc);
                }
            }
            let delta = val.div(&denom, nc);
            roots[i] = roots[i].sub(&delta, nc);
            let da = delta.abs(nc);
            if nc.abs_lt(&max_delta, &da) {
                max_delta = da;
            }
        }
        if nc.abs_lt(&max_delta, &tol) {
            break;
        }
    }
    roots
}

/// Exact division of monic integer polynomials; `None` if not a divisor.
fn exact_poly_divide(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    use num::Zero;
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den[..dd].iter().enumerate() {
            let t = &c * dj;
            rem[i - dd + j] -= t;
        }
        quot[i - dd] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(quot)
    } else {
        None
    }
}

/// Expand ∏ (X − roots\[i\]) over a subset and round to integers; `None`
/// when some coefficient is not within `tol` of an integer.
fn round_subset_product(
    roots: &[BigComplex],
    subset: &[usize],
    tol: &astro_float::BigFloat,
    nc: &NumCtx,
) -> Option<Vec<BigInt>> {
    let mut poly: Vec<BigComplex> = vec![BigComplex::from_re(nc.from_i64(1), nc)];
    for &i in subset {
        let mut next = vec![BigComplex::zero(nc); poly.len() + 1];
        for (t, coeff) in poly.iter().enumerate() {
            next[t + 1] = next[t + 1].add(coeff, nc);
            let m = coeff.mul(&roots[i], nc);
            next[t] = next[t].sub(&m, nc);
        }
        poly = next;
    }
    let mut rounded = Vec::with_capacity(poly.len());
    for coeff in &poly {
        if !nc.abs_lt(&coeff.im.abs(), tol) {
            return None;
        }
        let r = to_bigint_round(&coeff.re);
        let dist = nc.sub(&coeff.re, &nc.from_bigint(&r)).abs();
        if !nc.abs_lt(&dist, tol) {
            return None;
        }
        rounded.push(r);
    }
    Some(rounded)
}

/// Advisory extraction of the minimal polynomial of the certified value: a
/// monic integer factor of the annihilator whose root cluster contains it.
///
/// Roots are found numerically; subsets containing the nearest root are
/// enumerated by size (and by complement size for high-degree factors), each
/// candidate is rounded to integers, and a candidate is accepted only when
/// it divides the annihilator exactly over Z. Falls back to the full
/// annihilator — which certifies integrality on its own — when no factor
/// with at most [`SUBSET_SEARCH_WIDTH`] roots on either side is detected.
pub fn minimal_polynomial_advisory(
    annihilator: &[BigInt],
    value: &BigComplex,
    nc: &NumCtx,
    max_degree: usize,
) -> Option<Vec<BigInt>> {
    let deg = annihilator.len() - 1;
    if deg == 0 || deg > max_degree {
        return None;
    }
    let roots = polynomial_roots(annihilator, nc);
    let mut order: Vec<usize> = (0..deg).collect();
    let dist_to_value: Vec<_> = roots.iter().map(|r| r.sub(value, nc).abs(nc)).collect();
    order.sort_by(|&a, &b| {
        if nc.abs_lt(&dist_to_value[a], &dist_to_value[b]) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let nearest = order[0];
    let others: Vec<usize> = order[1..].to_vec();
    let tol = nc.pow10(-10);

    // subsets of `others` of size up to the search width, joined with the
    // nearest root
    let mut small_first: Vec<Vec<usize>> = Vec::new();
    for pick in 0..=SUBSET_SEARCH_WIDTH.min(others.len()) {
        for combo in combinations(others.len(), pick) {
            let mut subset: Vec<usize> = combo.iter().map(|&i| others[i]).collect();
            subset.push(nearest);
            subset.sort_unstable();
            small_first.push(subset);
        }
    }
    for subset in &small_first {
        if let Some(cand) = round_subset_product(&roots, subset, &tol, nc) {
            if exact_poly_divide(annihilator, &cand).is_some() {
                return Some(cand);
            }
        }
        // complement candidate: everything except a small set avoiding the value
        let complement: Vec<usize> = (0..deg)
            .filter(|i| *i == nearest || !subset.contains(i))
            .collect();
        if complement.len() < deg {
            if let Some(cand) = round_subset_product(&roots, &complement, &tol, nc) {
                if exact_poly_divide(annihilator, &cand).is_some() {
                    return Some(cand);
                }
            }
        }
    }
    // the annihilator itself is always a valid (unrefined) answer
    Some(annihilator.to_vec())
}

/// Width of the advisory subset search on each side of the factorization.
pub const SUBSET_SEARCH_WIDTH: usize = 3;

/// All k-element index combinations from 0..n, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        if k == 0 {
            break;
        }
        // advance
        let mut i = k;
        let mut moved = false;
        while i > 0 {
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloContext;
    use crate::phiexp;

    fn close_pow10(nc: &NumCtx, a: &BigComplex, re: i64, tol10: i64) -> bool {
        let d = a.sub(&BigComplex::from_re(nc.from_i64(re), nc), nc).abs(nc);
        nc.abs_lt(&d, &nc.pow10(tol10))
    }

    #[test]
    fn classical_j_values() {
        let mut nc = NumCtx::new(256);
        // j(i) = 1728
        let tau = BigComplex { re: nc.zero(), im: nc.from_i64(1) };
        let j = eval_j(&tau, &mut nc).unwrap();
        assert!(close_pow10(&nc, &j, 1728, -15));
        // j((1+i√3)/2) = 0
        let half = nc.div(&nc.from_i64(1), &nc.from_i64(2));
        let tau = BigComplex {
            re: half.clone(),
            im: nc.div(&nc.sqrt(&nc.from_i64(3)), &nc.from_i64(2)),
        };
        let j = eval_j(&tau, &mut nc).unwrap();
        assert!(close_pow10(&nc, &j, 0, -15));
        // j((1+i√7)/2) = −3375
        let tau = BigComplex {
            re: half,
            im: nc.div(&nc.sqrt(&nc.from_i64(7)), &nc.from_i64(2)),
        };
        let j = eval_j(&tau, &mut nc).unwrap();
        assert!(close_pow10(&nc, &j, -3375, -12));
        // j(√−2) = 8000
        let tau = BigComplex { re: nc.zero(), im: nc.sqrt(&nc.from_i64(2)) };
        let j = eval_j(&tau, &mut nc).unwrap();
        assert!(close_pow10(&nc, &j, 8000, -12));
    }

    #[test]
    fn phi_lattice_symmetry() {
        // φ_s = φ_{N−s} (the underlying elliptic function is even)
        let mut nc = NumCtx::new(160);
        let tau = BigComplex {
            re: nc.div(&nc.from_i64(1), &nc.from_i64(2)),
            im: nc.div(&nc.sqrt(&nc.from_i64(7)), &nc.from_i64(2)),
        };
        for s in 1..=3i64 {
            let a = eval_phi(s, &tau, 7, &mut nc).unwrap();
            let b = eval_phi(7 - s, &tau, 7, &mut nc).unwrap();
            let d = a.sub(&b, &nc).abs(&nc);
            assert!(nc.abs_lt(&d, &nc.pow2(-140)));
        }
    }

    #[test]
    fn phi_matches_embedded_symbolic_series() {
        // summing the exact expansion coefficients numerically must agree
        // with the direct evaluation
        let ctx = CycloContext::new(7).unwrap();
        let mut nc = NumCtx::new(192);
        let tau = BigComplex {
            re: nc.div(&nc.from_i64(1), &nc.from_i64(3)),
            im: nc.div(&nc.from_i64(6), &nc.from_i64(5)),
        };
        let e = phiexp::UnimodularMatrix::identity();
        // q = e^{2πiτ/7}
        let tau7 = BigComplex {
            re: nc.div(&tau.re, &nc.from_i64(7)),
            im: nc.div(&tau.im, &nc.from_i64(7)),
        };
        let q = super::nome(&tau7, &mut nc);
        for s in 1..=3i64 {
            let series = phiexp::phi_slash(s, &e, 120, &ctx).unwrap();
            let mut acc = BigComplex::zero(&nc);
            for (m, c) in series.terms() {
                let cv = c.embed_in(&mut nc);
                let qm = q.powi(m as u64, &nc);
                acc = acc.add(&cv.mul(&qm, &nc), &nc);
            }
            let direct = eval_phi(s, &tau, 7, &mut nc).unwrap();
            let d = acc.sub(&direct, &nc).abs(&nc);
            assert!(nc.abs_lt(&d, &nc.pow10(-12)), "s={s}");
        }
    }

    #[test]
    fn lambda_inverse_relation_and_cusp_limit() {
        let mut nc = NumCtx::new(192);
        let p = LambdaParams::new(7, 3, 2).unwrap();
        let tau = BigComplex {
            re: nc.div(&nc.from_i64(-7), &nc.from_i64(2)),
            im: nc.div(&nc.sqrt(&nc.from_i64(7)), &nc.from_i64(2)),
        };
        let a = eval_lambda_at(&p, &tau, &mut nc).unwrap();
        let b = eval_lambda_at(&p.swapped(), &tau, &mut nc).unwrap();
        let prod = a.mul(&b, &nc);
        let d = prod.sub(&BigComplex::from_re(nc.from_i64(1), &nc), &nc).abs(&nc);
        assert!(nc.abs_lt(&d, &nc.pow2(-150)));

        // as Im τ → ∞ the value approaches the constant term of the
        // q-expansion at the identity
        let ctx = CycloContext::new(7).unwrap();
        let tau_high = BigComplex { re: nc.zero(), im: nc.from_i64(50) };
        let at_cusp = eval_lambda_at(&p, &tau_high, &mut nc).unwrap();
        let series = phiexp::lambda_slash(&p, &phiexp::UnimodularMatrix::identity(), 14, &ctx).unwrap();
        let c0 = series.coeff_at(0).unwrap().embed_in(&mut nc);
        let d = at_cusp.sub(&c0, &nc).abs(&nc);
        assert!(nc.abs_lt(&d, &nc.pow10(-20)));
    }

    #[test]
    fn moebius_preserves_j() {
        let mut nc = NumCtx::new(160);
        let tau = BigComplex {
            re: nc.div(&nc.from_i64(1), &nc.from_i64(5)),
            im: nc.div(&nc.from_i64(11), &nc.from_i64(10)),
        };
        for mat in [
            UnimodularMatrix::s_inversion(),
            UnimodularMatrix::t_lower(),
            UnimodularMatrix::new(2, 1, 1, 1).unwrap(),
        ] {
            let t2 = moebius(&mat, &tau, &nc);
            let j1 = eval_j(&tau, &mut nc).unwrap();
            let j2 = eval_j(&t2, &mut nc).unwrap();
            let d = j1.sub(&j2, &nc).abs(&nc);
            assert!(nc.abs_lt(&d, &nc.pow10(-20)), "{mat:?}");
        }
    }

    #[test]
    fn advisory_minimal_polynomial_small() {
        use num::BigInt;
        // (X² − 2)(X − 3): the factor containing each root is recovered
        let nc = NumCtx::new(128);
        let coeffs: Vec<BigInt> = [6i64, -2, -3, 1].iter().map(|&v| BigInt::from(v)).collect();
        let value = BigComplex { re: nc.sqrt(&nc.from_i64(2)), im: nc.zero() };
        let min = minimal_polynomial_advisory(&coeffs, &value, &nc, 48).unwrap();
        assert_eq!(min, vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]);
        let value = BigComplex { re: nc.from_i64(3), im: nc.zero() };
        let min = minimal_polynomial_advisory(&coeffs, &value, &nc, 48).unwrap();
        assert_eq!(min, vec![BigInt::from(-3), BigInt::from(1)]);
    }

    #[test]
    fn certificate_preconditions() {
        use crate::error::Error;
        use crate::modpoly::ModularEquationFile;
        let p = LambdaParams::new(7, 3, 2).unwrap();
        let dummy = ModularEquationFile {
            schema: 1,
            tool_version: "test".into(),
            level: 7,
            k: 3,
            l: 2,
            degree: 1,
            guard_terms: 14,
            verified_integer: true,
            coefficients: vec![vec!["0".into()], vec!["1".into()]],
        };
        // certificates are restricted to the class-number-one list
        let pt = CmPoint::from_discriminant(-15).unwrap();
        assert!(matches!(
            certify_integral(&p, &pt, &dummy, 128),
            Err(Error::UnsupportedClassNumber(-15))
        ));
        // j(alpha) ≈ −2.6e17 for D=−163: 64 bits cannot resolve integers
        // near it, so the rounding precondition must reject
        let pt = CmPoint::from_discriminant(-163).unwrap();
        assert!(matches!(
            certify_integral(&p, &pt, &dummy, 64),
            Err(Error::NonIntegerJ(_))
        ));
        // parameter mismatch and unverified input are refused outright
        let mut fake = dummy.clone();
        fake.level = 8;
        assert!(matches!(
            certify_integral(&p, &pt, &fake, 128),
            Err(Error::InvalidParameter(_))
        ));
        let mut fake = dummy.clone();
        fake.verified_integer = false;
        assert!(matches!(
            certify_integral(&p, &pt, &fake, 128),
            Err(Error::NotIntegerVerified)
        ));
    }

    #[test]
    fn cm_point_construction() {
        let pt = CmPoint::from_discriminant(-7).unwrap();
        assert_eq!(pt.discriminant(), -7);
        let mut nc = NumCtx::new(96);
        let tau = pt.embed(&mut nc);
        assert!(tau.im.is_positive());
        // α = (−7 + i√7)/2
        let re2 = nc.mul(&tau.re, &nc.from_i64(2));
        let d = nc.sub(&re2, &nc.from_i64(-7));
        assert!(nc.abs_lt(&d, &nc.pow2(-80)));
        assert!(CmPoint::from_discriminant(-5).is_err());
        assert!(CmPoint::from_discriminant(4).is_err());
        assert!(CmPoint::new(1, 0, -1).is_err());
    }
}
