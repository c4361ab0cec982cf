//! Symbolic q-expansions of the slashed Weierstrass values φ_s[A]₂, their
//! leading coefficients θ_{r,s}(A), and the generalized λ quotients.
//!
//! For `A = [[a,b],[c,d]] ∈ SL₂(Z)` put `s* = μ(sc)·s·d` and
//! `u_s = ζ^{s*} q^{{sc}}`. Then
//!
//! ```text
//! φ_s[A]₂ = ζ^{s*}/(1−ζ^{s*})² − Σ_{m,n≥1} n(1−ζ^{s*n})(1−ζ^{−s*n}) q^{mnN}   if {sc} = 0,
//! φ_s[A]₂ = Σ_{n≥1} n·u_s^n − Σ_{m,n≥1} n(1−u_s^n)(1−u_s^{−n}) q^{mnN}        otherwise,
//! ```
//!
//! which places every expansion in Q(ζ)[[q]] with all non-constant
//! coefficients in Z[ζ]. The quotient
//! `Λ_{k,ℓ}∘A = (φ_k−φ_1)[A]₂ / (φ_ℓ−φ_1)[A]₂` and its generalization
//! `W_{[a₁,a₂,a₃]}` are assembled from these series exactly.

use std::fmt;

use num::BigRational;

use crate::cyclotomic::{CycloContext, CyclotomicNumber};
use crate::error::Error;
use crate::numtheory::{gcd, modn};
use crate::qlaurent::QLaurentSeries;
use crate::Result;

/// The folded residue `{x} ∈ [0, N/2]` and sign `μ(x) ∈ {±1}`:
/// `x ≡ μ(x)·{x} (mod N)`, with `μ(x) = +1` when `x ≡ 0` or `N/2 (mod N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraceValue {
    pub brace: i64,
    pub mu: i64,
}

/// Compute `{x}` and `μ(x)` at level `n`.
pub fn brace(x: i64, n: i64) -> BraceValue {
    let r = modn(x, n);
    if 2 * r <= n {
        // covers x ≡ 0 and x ≡ N/2, where μ is fixed to +1
        BraceValue { brace: r, mu: 1 }
    } else {
        BraceValue { brace: n - r, mu: -1 }
    }
}

/// An element of SL₂(Z).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::InvalidParameter(format!(
                "matrix [[{a},{b}],[{c},{d}]] has determinant {}, need 1",
                a * d - b * c
            )));
        }
        Ok(UnimodularMatrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        UnimodularMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// T = [[1,0],[1,1]].
    pub fn t_lower() -> Self {
        UnimodularMatrix { a: 1, b: 0, c: 1, d: 1 }
    }

    /// S = [[0,−1],[1,0]].
    pub fn s_inversion() -> Self {
        UnimodularMatrix { a: 0, b: -1, c: 1, d: 0 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        UnimodularMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> Self {
        UnimodularMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        UnimodularMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl fmt::Debug for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which parameter regime a [`LambdaParams`] was constructed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamRegime {
    /// `1 < ℓ ≠ k < N/2`: the generator regime.
    Strict,
    /// `1 < ℓ ≠ k ≤ N/2` with at least one of k, ℓ equal to N/2:
    /// still valid for integrality statements.
    Boundary,
}

/// Parameters (N, k, ℓ) of a generalized λ function Λ_{k,ℓ} = W_{[k,ℓ,1]}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaParams {
    n: u32,
    k: i64,
    l: i64,
    regime: ParamRegime,
}

impl LambdaParams {
    pub fn new(n: u32, k: i64, l: i64) -> Result<Self> {
        if n < 7 {
            return Err(Error::LevelTooSmall(n));
        }
        let ni = n as i64;
        if !(1 < k && 2 * k <= ni && 1 < l && 2 * l <= ni && k != l) {
            return Err(Error::InvalidParameter(format!(
                "lambda parameters require 1 < l != k <= N/2, got N={n}, k={k}, l={l}"
            )));
        }
        let regime = if 2 * k < ni && 2 * l < ni {
            ParamRegime::Strict
        } else {
            ParamRegime::Boundary
        };
        Ok(LambdaParams { n, k, l, regime })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn regime(&self) -> ParamRegime {
        self.regime
    }

    /// δ = gcd(k, N).
    pub fn delta(&self) -> i64 {
        gcd(self.k, self.n as i64)
    }

    /// Swapped parameters (ℓ, k); Λ_{ℓ,k} = 1/Λ_{k,ℓ}.
    pub fn swapped(&self) -> Self {
        LambdaParams { n: self.n, k: self.l, l: self.k, regime: self.regime }
    }

    /// Hypothesis `(k(ℓ±1), N) = 1` under which every Λ_{k,ℓ}∘A expands
    /// integrally over Z[ζ].
    pub fn integral_hypothesis_general(&self) -> bool {
        let n = self.n as i64;
        gcd(self.k * (self.l + 1), n) == 1 && gcd(self.k * (self.l - 1), n) == 1
    }

    /// The weakened hypothesis available at ℓ = 2: either δ = 1, or δ > 1,
    /// (δ,3) = 1 and N/δ is not a prime power.
    pub fn integral_hypothesis_l2(&self) -> bool {
        if self.l != 2 || !(2 < self.k && 2 * self.k < self.n as i64) {
            return false;
        }
        let delta = self.delta();
        if delta == 1 {
            return true;
        }
        let nd = self.n as i64 / delta;
        gcd(delta, 3) == 1 && crate::numtheory::prime_factors(nd).len() >= 2
    }

    /// Whether integrality of all Λ∘A expansions is guaranteed by hypothesis.
    pub fn integrality_guaranteed(&self) -> bool {
        self.integral_hypothesis_general() || self.integral_hypothesis_l2()
    }
}

/// (`{s·c}`, `s* mod N`) for the slash data of `A`.
fn star(s: i64, a: &UnimodularMatrix, n: i64) -> (i64, i64) {
    let bv = brace(s * a.c, n);
    (bv.brace, modn(bv.mu * s * a.d, n))
}

/// q-expansion of φ_s[A]₂ with coefficients known for exponents `< prec`.
///
/// The order is `{sc}` except in one degenerate family: when `{sc} = N/2`
/// and `2s* ≡ N/2 (mod N)` the leading candidate `ζ^{s*}+ζ^{−s*}` vanishes
/// and the true order is larger (possible only for 4 | N).
pub fn phi_slash(
    s: i64,
    a: &UnimodularMatrix,
    prec: i64,
    ctx: &CycloContext,
) -> Result<QLaurentSeries> {
    let n = ctx.level() as i64;
    if modn(s, n) == 0 {
        return Err(Error::InvalidParameter(format!(
            "phi_s needs s not divisible by the level, got s={s}, N={n}"
        )));
    }
    if prec < 1 {
        return Err(Error::InvalidParameter("phi expansion needs prec >= 1".into()));
    }
    let (lam, sstar) = star(s, a, n);
    let int = |v: i64| BigRational::from_integer(v.into());

    if lam == 0 {
        // constant ζ^{s*}/(1−ζ^{s*})², double sum supported on multiples of N
        let mut w = vec![ctx.zero(); prec as usize];
        let z = ctx.zeta_pow(sstar);
        let dmem = ctx.one_minus_zeta(sstar);
        w[0] = &z * &(&dmem * &dmem).inv()?;
        let mut nn = 1;
        while nn * n < prec {
            let factor = (&ctx.one_minus_zeta(sstar * nn) * &ctx.one_minus_zeta(-sstar * nn))
                .scale(&int(nn));
            if !factor.is_zero() {
                let mut m = 1;
                while m * nn * n < prec {
                    let e = (m * nn * n) as usize;
                    w[e] = &w[e] - &factor;
                    m += 1;
                }
            }
            nn += 1;
        }
        Ok(QLaurentSeries::from_window(ctx, 0, w))
    } else {
        // order-{sc} branch: Σ n·u^n − Σ n(2 − u^n − u^{−n}) q^{mnN}
        let len = (prec - lam) as usize;
        let mut w = vec![ctx.zero(); len];
        let mut add = |e: i64, c: CyclotomicNumber| {
            debug_assert!(e >= lam);
            if e < prec {
                let i = (e - lam) as usize;
                w[i] = &w[i] + &c;
            }
        };
        let mut nn = 1;
        while lam * nn < prec {
            add(lam * nn, ctx.zeta_pow(sstar * nn).scale(&int(nn)));
            nn += 1;
        }
        nn = 1;
        while nn * (n - lam) < prec {
            let mut m = 1;
            while nn * (m * n - lam) < prec {
                let base = m * nn * n;
                add(base - lam * nn, ctx.zeta_pow(-sstar * nn).scale(&int(nn)));
                if base < prec {
                    add(base, ctx.from_i64(-2 * nn));
                }
                if base + lam * nn < prec {
                    add(base + lam * nn, ctx.zeta_pow(sstar * nn).scale(&int(nn)));
                }
                m += 1;
            }
            nn += 1;
        }
        Ok(QLaurentSeries::from_window(ctx, lam, w))
    }
}

/// Case labels for the closed-form leading coefficient θ_{r,s}(A).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaCase {
    EqualOrdersGeneric,
    EqualOrdersHalf,
    EqualOrdersZero,
    DistinctOrdersPositive,
    DistinctOrdersZero,
}

/// Leading coefficient of `(φ_r − φ_s)[A]₂` together with the case that
/// produced it. Always nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaValue {
    pub value: CyclotomicNumber,
    pub case_tag: ThetaCase,
}

/// Closed-form leading coefficient of `(φ_r − φ_s)[A]₂` at its order
/// `min({rc}, {sc})`.
///
/// Sign convention for distinct orders: the case formulas apply to the
/// parameter with the smaller order; when that is `s` rather than `r`, the
/// value for the ordered pair `(r, s)` is `−θ_{s,r}(A)`.
///
/// In the equal-orders case at `{rc} = {sc} = N/2` the factor fixed here is
/// `(1 − ζ^{−(r*+s*)})`; expanding the series shows the leading coefficient
/// is `(ζ^{r*} − ζ^{s*})(1 − ζ^{−(r*+s*)})`, which the congruence for
/// `(φ_r−φ_s)[A]₂ mod q^N` independently confirms.
pub fn theta(
    r: i64,
    s: i64,
    a: &UnimodularMatrix,
    ctx: &CycloContext,
) -> Result<ThetaValue> {
    let n = ctx.level() as i64;
    if !(0 < r && r <= n / 2 && 0 < s && s <= n / 2 && r != s) {
        return Err(Error::InvalidParameter(format!(
            "theta requires 0 < r != s <= N/2, got r={r}, s={s}, N={n}"
        )));
    }
    let (lr, rstar) = star(r, a, n);
    let (ls, sstar) = star(s, a, n);

    let (value, case_tag) = if lr == ls {
        let lead = ctx
            .zeta_pow(sstar)
            .scale(&BigRational::from_integer((-1).into()));
        let diff = ctx.one_minus_zeta(rstar - sstar);
        if lr != 0 && 2 * lr != n {
            (&lead * &diff, ThetaCase::EqualOrdersGeneric)
        } else if 2 * lr == n {
            let extra = ctx.one_minus_zeta(-(rstar + sstar));
            (&(&lead * &diff) * &extra, ThetaCase::EqualOrdersHalf)
        } else {
            let extra = ctx.one_minus_zeta(rstar + sstar);
            let den_r = ctx.one_minus_zeta(rstar);
            let den_s = ctx.one_minus_zeta(sstar);
            let den = &(&den_r * &den_r) * &(&den_s * &den_s);
            (&(&(&lead * &diff) * &extra) * &den.inv()?, ThetaCase::EqualOrdersZero)
        }
    } else {
        // apply the small-order formula, negating if it belongs to s
        let (lmin, mstar, negate) = if lr < ls { (lr, rstar, false) } else { (ls, sstar, true) };
        let mut v = if lmin != 0 {
            ctx.zeta_pow(mstar)
        } else {
            let den = ctx.one_minus_zeta(mstar);
            &ctx.zeta_pow(mstar) * &(&den * &den).inv()?
        };
        if negate {
            v = -&v;
        }
        let tag = if lmin != 0 {
            ThetaCase::DistinctOrdersPositive
        } else {
            ThetaCase::DistinctOrdersZero
        };
        (v, tag)
    };
    assert!(!value.is_zero(), "theta must be nonzero");
    Ok(ThetaValue { value, case_tag })
}

/// Order of `Λ_{k,ℓ}∘A` read off brace data: min({kc},{c}) − min({ℓc},{c}).
pub fn lambda_order(p: &LambdaParams, a: &UnimodularMatrix) -> i64 {
    let n = p.n as i64;
    let b1 = brace(a.c, n).brace;
    let bk = brace(p.k * a.c, n).brace;
    let bl = brace(p.l * a.c, n).brace;
    bk.min(b1) - bl.min(b1)
}

/// q-expansion of `Λ_{k,ℓ}∘A = (φ_k−φ_1)[A]₂ / (φ_ℓ−φ_1)[A]₂`, with
/// coefficients known for exponents `< prec`.
pub fn lambda_slash(
    p: &LambdaParams,
    a: &UnimodularMatrix,
    prec: i64,
    ctx: &CycloContext,
) -> Result<QLaurentSeries> {
    assert_eq!(p.n, ctx.level(), "lambda parameters and context disagree on N");
    let n = p.n as i64;
    let b1 = brace(a.c, n).brace;
    let o_num = brace(p.k * a.c, n).brace.min(b1);
    let o_den = brace(p.l * a.c, n).brace.min(b1);
    let o = o_num - o_den;
    // inner precision so the quotient still knows everything below `prec`
    let inner = (prec + o_den + 0.max(-o) + 1).max(o_den + 2).max(o_num + 2);
    let num = phi_slash(p.k, a, inner, ctx)?.sub(&phi_slash(1, a, inner, ctx)?);
    let den = phi_slash(p.l, a, inner, ctx)?.sub(&phi_slash(1, a, inner, ctx)?);
    debug_assert_eq!(den.order()?, o_den);
    let quot = num.mul(&den.invert()?);
    debug_assert!(quot.order()? == o);
    if quot.prec() < prec {
        return Err(Error::PrecisionExhausted(format!(
            "lambda expansion reached q^{} of requested q^{prec}",
            quot.prec()
        )));
    }
    Ok(quot.truncate(prec))
}

/// q-expansion of `W_{[a₁,a₂,a₃]}∘A = (φ_{a₁}−φ_{a₃})[A]₂/(φ_{a₂}−φ_{a₃})[A]₂`.
pub fn w_slash(
    a1: i64,
    a2: i64,
    a3: i64,
    a: &UnimodularMatrix,
    prec: i64,
    ctx: &CycloContext,
) -> Result<QLaurentSeries> {
    let n = ctx.level() as i64;
    for v in [a1, a2, a3] {
        if !(0 < v && 2 * v <= n) {
            return Err(Error::InvalidParameter(format!(
                "triple entries must satisfy 0 < a_i <= N/2, got {v} at N={n}"
            )));
        }
    }
    if a1 == a2 || a1 == a3 || a2 == a3 {
        return Err(Error::InvalidParameter(format!(
            "triple entries must be pairwise distinct, got [{a1},{a2},{a3}]"
        )));
    }
    let bc = |x: i64| brace(x * a.c, n).brace;
    let o_num = bc(a1).min(bc(a3));
    let o_den = bc(a2).min(bc(a3));
    let o = o_num - o_den;
    let inner = (prec + o_den + 0.max(-o) + 1).max(o_den + 2).max(o_num + 2);
    let num = phi_slash(a1, a, inner, ctx)?.sub(&phi_slash(a3, a, inner, ctx)?);
    let den = phi_slash(a2, a, inner, ctx)?.sub(&phi_slash(a3, a, inner, ctx)?);
    let quot = num.mul(&den.invert()?);
    if quot.prec() < prec {
        return Err(Error::PrecisionExhausted(format!(
            "W expansion reached q^{} of requested q^{prec}",
            quot.prec()
        )));
    }
    Ok(quot.truncate(prec))
}

/// Reduce a triple with gcd(a₃, N) = 1 to λ parameters and the transport
/// matrix congruent to diag(a₃⁻¹, a₃) mod N: `W_a∘A = Λ_{k,ℓ}∘(M·A)`.
pub fn w_transport(a1: i64, a2: i64, a3: i64, n: u32) -> Result<(LambdaParams, UnimodularMatrix)> {
    let ni = n as i64;
    if gcd(a3, ni) != 1 {
        return Err(Error::NotCoprime(a3, n));
    }
    let inv3 = crate::numtheory::modinv(a3, ni).expect("coprime");
    let k = brace(a1 * inv3, ni).brace;
    let l = brace(a2 * inv3, ni).brace;
    let p = LambdaParams::new(n, k, l)?;
    let m = crate::cosets::lift_diag(a3, n)?;
    Ok((p, m))
}

/// The closed-form truncation of `(φ_r − φ_s)[A]₂` modulo q^N.
///
/// Three cases by the vanishing pattern of ({rc}, {sc}); compare against the
/// direct series difference with [`QLaurentSeries::eq_to_precision`] at N.
pub fn prop1_truncation(
    r: i64,
    s: i64,
    a: &UnimodularMatrix,
    ctx: &CycloContext,
) -> Result<QLaurentSeries> {
    let n = ctx.level() as i64;
    if !(0 < r && r <= n / 2 && 0 < s && s <= n / 2 && r != s) {
        return Err(Error::InvalidParameter(format!(
            "truncation requires 0 < r != s <= N/2, got r={r}, s={s}"
        )));
    }
    let (lr, rstar) = star(r, a, n);
    let (ls, sstar) = star(s, a, n);
    let int = |v: i64| BigRational::from_integer(v.into());

    let mut w = vec![ctx.zero(); n as usize];
    let mut add = |e: i64, c: CyclotomicNumber| {
        debug_assert!((0..n).contains(&e));
        w[e as usize] = &w[e as usize] + &c;
    };

    match (lr == 0, ls == 0) {
        (false, false) => {
            // Σ n(u_r^n − u_s^n) + u_r^{-1} q^N − u_s^{-1} q^N
            let mut nn = 1;
            while lr * nn < n {
                add(lr * nn, ctx.zeta_pow(rstar * nn).scale(&int(nn)));
                nn += 1;
            }
            nn = 1;
            while ls * nn < n {
                add(ls * nn, ctx.zeta_pow(sstar * nn).scale(&int(-nn)));
                nn += 1;
            }
            add(n - lr, ctx.zeta_pow(-rstar));
            add(n - ls, -&ctx.zeta_pow(-sstar));
        }
        (true, false) => {
            // ζ^{rd}/(1−ζ^{rd})² − Σ n u_s^n − u_s^{-1} q^N
            let den = ctx.one_minus_zeta(rstar);
            add(0, &ctx.zeta_pow(rstar) * &(&den * &den).inv()?);
            let mut nn = 1;
            while ls * nn < n {
                add(ls * nn, ctx.zeta_pow(sstar * nn).scale(&int(-nn)));
                nn += 1;
            }
            add(n - ls, -&ctx.zeta_pow(-sstar));
        }
        (false, true) => {
            return Ok(prop1_truncation(s, r, a, ctx)?.neg());
        }
        (true, true) => {
            // −ζ^{sd}(1−ζ^{(r−s)d})(1−ζ^{(r+s)d}) / ((1−ζ^{rd})²(1−ζ^{sd})²)
            let num = &(&(-&ctx.zeta_pow(sstar)) * &ctx.one_minus_zeta(rstar - sstar))
                * &ctx.one_minus_zeta(rstar + sstar);
            let dr = ctx.one_minus_zeta(rstar);
            let ds = ctx.one_minus_zeta(sstar);
            let den = &(&dr * &dr) * &(&ds * &ds);
            add(0, &num * &den.inv()?);
        }
    }
    Ok(QLaurentSeries::from_window(ctx, 0, w))
}
