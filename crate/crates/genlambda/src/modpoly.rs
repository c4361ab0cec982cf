//! The modular equation Φ(X, j) = ∏_{A∈R} (X − Λ_{k,ℓ}∘A) over Z[j].
//!
//! Every factor is an exact q-Laurent series; the product is a monic
//! polynomial in X whose coefficients are SL₂(Z)-invariant series supported
//! on exponents divisible by N. Each coefficient is reduced to a polynomial
//! in J by principal-part elimination against the j-series, with all guard
//! coefficients of the residual required to vanish exactly. The coefficients
//! are kept as cyclotomic numbers until the end; `verified_integer` records
//! whether every one of them is a rational integer.

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::cosets::{build_transversal, Transversal};
use crate::cyclotomic::{CycloContext, CyclotomicNumber};
use crate::error::Error;
use crate::phiexp::{lambda_order, lambda_slash, LambdaParams};
use crate::qlaurent::QLaurentSeries;
use crate::Result;

/// q-expansion of the modular invariant j in q̃ = q^N: starts at q̃^{-1} with
/// integer coefficients 1, 744, 196884, …; as a q-series it is supported on
/// exponents divisible by N.
#[derive(Clone, Debug)]
pub struct JSeries {
    series: QLaurentSeries,
}

impl JSeries {
    pub fn as_series(&self) -> &QLaurentSeries {
        &self.series
    }

    /// Integer coefficient at q̃^m (i.e. q^{N·m}).
    pub fn coeff_tilde(&self, m: i64) -> Option<BigInt> {
        let n = self.series.context().level() as i64;
        self.series.coeff_at(n * m).map(|c| {
            let r = c.as_rational().expect("j-series coefficients are integers").clone();
            assert!(r.denom().is_one());
            r.numer().clone()
        })
    }
}

/// σ₃ sieve: sums of cubes of divisors for 1..=t.
fn sigma3_table(t: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); t + 1];
    for d in 1..=t {
        let cube = BigInt::from(d).pow(3);
        let mut m = d;
        while m <= t {
            out[m] += &cube;
            m += d;
        }
    }
    out
}

fn poly_mul_trunc(a: &[BigInt], b: &[BigInt], t: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); t + 1];
    for (i, x) in a.iter().enumerate().take(t + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(t + 1 - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of a power series with constant term 1, truncated at t.
fn invert_unit_series(u: &[BigInt], t: usize) -> Vec<BigInt> {
    assert!(u[0].is_one());
    let mut out = vec![BigInt::zero(); t + 1];
    out[0] = BigInt::one();
    for m in 1..=t {
        let mut acc = BigInt::zero();
        for i in 1..=m.min(u.len() - 1) {
            if u[i].is_zero() {
                continue;
            }
            acc += &u[i] * &out[m - i];
        }
        out[m] = -acc;
    }
    out
}

/// Coefficients c_{-1}, c_0, c_1, … of j in q̃, computed from E₄³/Δ with
/// Δ = q̃·(η-product)²⁴ via the pentagonal-number expansion. Exact integers.
fn j_tilde_coeffs(t: usize) -> Vec<BigInt> {
    // E4 = 1 + 240 Σ σ₃(n) q̃^n
    let sig = sigma3_table(t);
    let mut e4 = vec![BigInt::zero(); t + 1];
    e4[0] = BigInt::one();
    for m in 1..=t {
        e4[m] = 240 * &sig[m];
    }
    let e4_cubed = poly_mul_trunc(&poly_mul_trunc(&e4, &e4, t), &e4, t);

    // ∏ (1 − q̃^n) = Σ_k (−1)^k q̃^{k(3k−1)/2} (pentagonal numbers)
    let mut eta = vec![BigInt::zero(); t + 1];
    eta[0] = BigInt::one();
    let mut k: i64 = 1;
    loop {
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 as usize > t && p2 as usize > t {
            break;
        }
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        if (p1 as usize) <= t {
            eta[p1 as usize] += &sign;
        }
        if (p2 as usize) <= t {
            eta[p2 as usize] += &sign;
        }
        k += 1;
    }
    // eta^24 by 16·8 squarings
    let e2 = poly_mul_trunc(&eta, &eta, t);
    let e4p = poly_mul_trunc(&e2, &e2, t);
    let e8 = poly_mul_trunc(&e4p, &e4p, t);
    let e16 = poly_mul_trunc(&e8, &e8, t);
    let eta24 = poly_mul_trunc(&e16, &e8, t);

    // j = E4³ / (q̃ · eta24): coefficient of q̃^{m} of E4³·eta24^{-1} is c_{m-1}
    let inv = invert_unit_series(&eta24, t);
    poly_mul_trunc(&e4_cubed, &inv, t)
}

/// The j-series at level N with q-coefficients known below `prec`.
pub fn j_series(ctx: &CycloContext, prec: i64) -> Result<JSeries> {
    let n = ctx.level() as i64;
    if prec < n + 1 {
        return Err(Error::InvalidParameter(format!(
            "j-series needs prec >= N+1 = {}",
            n + 1
        )));
    }
    // q̃-coefficients for exponents −1 .. floor((prec−1)/N)
    let t_max = (prec - 1).div_euclid(n) + 1;
    let coeffs = j_tilde_coeffs(t_max as usize);
    let mut w = vec![ctx.zero(); (prec + n) as usize];
    for (i, c) in coeffs.iter().enumerate() {
        let e = (i as i64 - 1) * n; // q-exponent
        if e < prec {
            w[(e + n) as usize] = ctx.from_ratio(num::BigRational::from(c.clone()));
        }
    }
    let series = QLaurentSeries::from_window(ctx, -n, w);
    debug_assert_eq!(series.order().ok(), Some(-n));
    Ok(JSeries { series })
}

/// Working q-precision for the modular equation: N·(D_j + 2) with
/// D_j = −Σ_A min(0, ord(Λ∘A)), the orders read off brace data without
/// expanding anything. The 2N surplus serves as guard terms.
pub fn required_precision(p: &LambdaParams, r: &Transversal) -> i64 {
    let n = p.level() as i64;
    let d_j: i64 = r
        .elements()
        .iter()
        .map(|e| (-lambda_order(p, &e.matrix)).max(0))
        .sum();
    n * (d_j + 2)
}

/// Exact bivariate polynomial Φ(X, J), monic of degree |R| in X, with each
/// X-coefficient a polynomial in J (ascending powers) over Q(ζ) — rational
/// integers once `verified_integer` is set.
#[derive(Clone, Debug)]
pub struct ModularEquation {
    n: u32,
    k: i64,
    l: i64,
    /// `coeffs[i]` is the J-polynomial multiplying X^i, 0 ≤ i ≤ degree.
    coeffs: Vec<Vec<CyclotomicNumber>>,
    verified_integer: bool,
    /// q-exponent through which every residual was verified to vanish.
    guard_terms: i64,
}

/// Serialized form: big integers as decimal strings, index = X-power.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModularEquationFile {
    pub schema: u32,
    pub tool_version: String,
    pub level: u32,
    pub k: i64,
    pub l: i64,
    pub degree: usize,
    pub guard_terms: i64,
    pub verified_integer: bool,
    /// coefficients\[i\]\[j\] = coefficient of X^i J^j, decimal string.
    pub coefficients: Vec<Vec<String>>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl ModularEquation {
    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn params(&self) -> (i64, i64) {
        (self.k, self.l)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn verified_integer(&self) -> bool {
        self.verified_integer
    }

    pub fn guard_terms(&self) -> i64 {
        self.guard_terms
    }

    /// J-polynomial (ascending) multiplying X^i.
    pub fn coefficient(&self, i: usize) -> &[CyclotomicNumber] {
        &self.coeffs[i]
    }

    /// Substitute an exact integer for J: the monic annihilator Φ(X, j₀).
    /// Requires integer-verified coefficients.
    pub fn evaluate_at_j(&self, j0: &BigInt) -> Result<Vec<BigInt>> {
        if !self.verified_integer {
            return Err(Error::NotIntegerVerified);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            // Horner in j0
            let mut acc = BigInt::zero();
            for coeff in c.iter().rev() {
                let v = coeff.as_rational().expect("verified integer").numer().clone();
                acc = acc * j0 + v;
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn to_file(&self) -> Result<ModularEquationFile> {
        if !self.verified_integer {
            return Err(Error::NotIntegerVerified);
        }
        let coefficients = self
            .coeffs
            .iter()
            .map(|poly| {
                poly.iter()
                    .map(|c| c.as_rational().expect("verified integer").numer().to_string())
                    .collect()
            })
            .collect();
        Ok(ModularEquationFile {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            level: self.n,
            k: self.k,
            l: self.l,
            degree: self.degree(),
            guard_terms: self.guard_terms,
            verified_integer: true,
            coefficients,
        })
    }
}

impl ModularEquationFile {
    /// Parse the integer coefficient of X^i J^j.
    pub fn coefficient_int(&self, i: usize, j: usize) -> BigInt {
        self.coefficients[i][j].parse().expect("decimal integer")
    }

    /// Monic annihilator Φ(X, j₀) from the serialized coefficients.
    pub fn evaluate_at_j(&self, j0: &BigInt) -> Vec<BigInt> {
        self.coefficients
            .iter()
            .map(|poly| {
                let mut acc = BigInt::zero();
                for c in poly.iter().rev() {
                    let v: BigInt = c.parse().expect("decimal integer");
                    acc = acc * j0 + v;
                }
                acc
            })
            .collect()
    }
}

/// Polynomials in X with series coefficients, ascending; used by the
/// balanced product tree.
fn xpoly_mul(a: &[QLaurentSeries], b: &[QLaurentSeries], ctx: &CycloContext) -> Vec<QLaurentSeries> {
    let mut out: Vec<Option<QLaurentSeries>> = vec![None; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = x.mul(y);
            out[i + j] = Some(match out[i + j].take() {
                None => p,
                Some(acc) => acc.add(&p),
            });
        }
    }
    let _ = ctx;
    out.into_iter().map(|o| o.expect("dense product")).collect()
}

fn product_tree(factors: &[Vec<QLaurentSeries>], ctx: &CycloContext) -> Vec<QLaurentSeries> {
    match factors.len() {
        0 => unreachable!("empty product"),
        1 => factors[0].clone(),
        _ => {
            let mid = factors.len() / 2;
            let left = product_tree(&factors[..mid], ctx);
            let right = product_tree(&factors[mid..], ctx);
            xpoly_mul(&left, &right, ctx)
        }
    }
}

/// Principal-part elimination of a series supported on N·Z against the
/// j-series. Returns the J-polynomial (ascending) and the q-exponent through
/// which the residual was verified to be exactly zero.
pub fn reduce_to_j(
    s: &QLaurentSeries,
    js: &JSeries,
) -> Result<(Vec<CyclotomicNumber>, i64)> {
    let ctx = s.context().clone();
    let n = ctx.level() as i64;
    for (m, _) in s.terms() {
        if m.rem_euclid(n) != 0 {
            return Err(Error::ReductionFailure(format!(
                "series has a term at q^{m}, not a multiple of N={n}"
            )));
        }
    }
    let mut pows: Vec<QLaurentSeries> = vec![js.as_series().clone()];
    let mut cur = s.clone();
    let mut coeffs: Vec<CyclotomicNumber> = vec![ctx.zero()];
    while !cur.is_zero() {
        let m = cur.order()?;
        if m > 0 {
            break;
        }
        let lead = cur.leading()?.clone();
        if m == 0 {
            coeffs[0] = &coeffs[0] + &lead;
            cur = cur.sub(&QLaurentSeries::monomial(&ctx, lead, 0, cur.prec()));
            continue;
        }
        if (-m) % n != 0 {
            return Err(Error::ReductionFailure(format!(
                "principal part at q^{m} is not a multiple of N={n}"
            )));
        }
        let deg = ((-m) / n) as usize;
        while pows.len() < deg {
            let next = pows.last().unwrap().mul(js.as_series());
            pows.push(next);
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, ctx.zero());
        }
        coeffs[deg] = &coeffs[deg] + &lead;
        cur = cur.sub(&pows[deg - 1].scale(&lead));
    }
    // guard: everything that remains within the known window must vanish
    if !cur.is_zero() {
        return Err(Error::ReductionFailure(format!(
            "residual has a nonzero term at q^{}",
            cur.order()?
        )));
    }
    Ok((coeffs, cur.prec()))
}

/// Compute Φ(X, j) = ∏_{A∈R}(X − Λ_{k,ℓ}∘A) with exact arithmetic.
///
/// Outside the integrality regimes the construction still runs; it then
/// reports `verified_integer = false` as data rather than an error.
pub fn modular_equation(p: &LambdaParams, ctx: &CycloContext) -> Result<ModularEquation> {
    assert_eq!(p.level(), ctx.level());
    let r = build_transversal(p.level())?;
    modular_equation_with(p, ctx, &r)
}

/// Same as [`modular_equation`] with a caller-provided transversal.
pub fn modular_equation_with(
    p: &LambdaParams,
    ctx: &CycloContext,
    r: &Transversal,
) -> Result<ModularEquation> {
    let n = ctx.level() as i64;
    let prec = required_precision(p, r);
    // exact polynomial coefficients (like the X-monic 1) must never be the
    // precision bottleneck
    let exact_prec = 4 * prec + 4 * n;

    let factors: Vec<Vec<QLaurentSeries>> = r
        .elements()
        .iter()
        .map(|e| -> Result<Vec<QLaurentSeries>> {
            let f = lambda_slash(p, &e.matrix, prec, ctx)?;
            Ok(vec![f.neg(), QLaurentSeries::one(ctx, exact_prec)])
        })
        .collect::<Result<Vec<_>>>()?;

    let coeffs_series = product_tree(&factors, ctx);
    debug_assert_eq!(coeffs_series.len(), r.len() + 1);

    // Galois stability of every X-coefficient before integer verification
    for h in ctx.units() {
        for (i, s) in coeffs_series.iter().enumerate() {
            let mapped = s.galois_series(*h)?;
            if mapped != *s {
                return Err(Error::ReductionFailure(format!(
                    "X^{i} coefficient is not fixed by the Galois action σ_{h}"
                )));
            }
        }
    }

    let js = j_series(ctx, prec)?;
    let mut coeffs = Vec::with_capacity(coeffs_series.len());
    let mut guard = i64::MAX;
    for s in &coeffs_series {
        let (poly, verified_through) = reduce_to_j(s, &js)?;
        guard = guard.min(verified_through);
        coeffs.push(poly);
    }
    // monic in X
    let top = coeffs.last().expect("nonempty");
    assert!(top.len() == 1 && top[0] == ctx.one(), "product of monic factors is monic");
    assert!(guard >= 2 * n, "guard window too small: {guard}");

    let verified_integer = coeffs
        .iter()
        .all(|poly| poly.iter().all(CyclotomicNumber::is_rational_integer));
    Ok(ModularEquation {
        n: p.level(),
        k: p.k(),
        l: p.l(),
        coeffs,
        verified_integer,
        guard_terms: guard,
    })
}
