//! Arbitrary-precision real and complex numerics for the evaluation layer.
//!
//! Thin deterministic wrapper around `astro-float`: all operations run at a
//! fixed working precision (requested bits plus [`GUARD_BITS`]) with a fixed
//! rounding mode, so results are bit-identical for identical inputs and
//! precision. The exact modules never come through here; only `embed`,
//! [`crate::cmeval`], and cross-checking tests do.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num::bigint::{BigInt, Sign as IntSign};
use num::{BigRational, Signed, Zero};

/// Extra bits carried beyond the requested precision.
pub const GUARD_BITS: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working-precision context: precision in bits plus a constants cache
/// (π and friends are computed once per context and reused).
pub struct NumCtx {
    p: usize,
    cc: Consts,
}

impl NumCtx {
    /// `bits` is the caller-visible precision; internal operations carry
    /// [`GUARD_BITS`] more.
    pub fn new(bits: u32) -> Self {
        let p = bits as usize + GUARD_BITS;
        NumCtx {
            p,
            cc: Consts::new().expect("constants cache allocation"),
        }
    }

    pub fn working_bits(&self) -> usize {
        self.p
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i64(0, self.p)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.p)
    }

    /// Exact conversion of a big integer: the digit words become the
    /// mantissa directly, so no precision is lost.
    pub fn from_bigint(&self, v: &BigInt) -> BigFloat {
        let (sign, digits) = v.to_u64_digits();
        if digits.is_empty() {
            return self.zero();
        }
        let bits = digits.len() * WORD_BIT_SIZE;
        let mut f = BigFloat::from_words(
            &digits,
            if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos },
            bits as astro_float::Exponent,
        );
        // pad up to working precision so later ops keep full accuracy
        if bits < self.p {
            f.set_precision(self.p, RM).expect("precision extension");
        }
        f
    }

    pub fn from_ratio(&self, v: &BigRational) -> BigFloat {
        let n = self.from_bigint(v.numer());
        let d = self.from_bigint(v.denom());
        n.div(&d, self.p, RM)
    }

    /// 2^e as a float.
    pub fn pow2(&self, e: i64) -> BigFloat {
        let mut one = BigFloat::from_i64(1, self.p);
        one.set_exponent((1 + e) as astro_float::Exponent);
        one
    }

    /// 10^e as a float.
    pub fn pow10(&self, e: i64) -> BigFloat {
        let ten = BigFloat::from_i64(10, self.p);
        let mag = ten.powi(e.unsigned_abs() as usize, self.p, RM);
        if e >= 0 {
            mag
        } else {
            BigFloat::from_i64(1, self.p).div(&mag, self.p, RM)
        }
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.p, RM, &mut self.cc)
    }

    /// e^{iθ} = (cos θ, sin θ).
    pub fn exp_i(&mut self, theta: &BigFloat) -> BigComplex {
        BigComplex {
            re: theta.cos(self.p, RM, &mut self.cc),
            im: theta.sin(self.p, RM, &mut self.cc),
        }
    }

    /// `true` iff |a| < |b|.
    pub fn abs_lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.abs_cmp(b), Some(c) if c < 0)
    }
}

/// Crude f64 view of a float, for sizing loops (never for results).
pub fn to_f64_lossy(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    to_decimal_string(x, 17).parse().unwrap_or(0.0)
}

/// Floor of a finite float as a big integer.
pub fn to_bigint_floor(x: &BigFloat) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let (words, _n, sign, e, _inexact) = x.as_raw_parts().expect("finite value");
    let mut bytes = Vec::with_capacity(words.len() * 8);
    for w in words {
        bytes.extend_from_slice(&w.to_le_bytes()[..WORD_BIT_SIZE / 8]);
    }
    let isign = if sign == Sign::Neg { IntSign::Minus } else { IntSign::Plus };
    let mant = BigInt::from_bytes_le(isign, &bytes);
    let total_bits = (words.len() * WORD_BIT_SIZE) as i64;
    let shift = e as i64 - total_bits;
    if shift >= 0 {
        mant << shift
    } else {
        // BigInt shr rounds toward -inf, which is exactly floor
        mant >> (-shift)
    }
}

/// Nearest integer (ties toward +inf, irrelevant in practice).
pub fn to_bigint_round(x: &BigFloat) -> BigInt {
    let p = x.mantissa_max_bit_len().unwrap_or(128);
    let half = {
        let mut h = BigFloat::from_i64(1, p);
        h.set_exponent(0); // 0.5
        h
    };
    to_bigint_floor(&x.add(&half, p, RM))
}

/// Decimal rendering with roughly `digits` significant digits, scientific
/// form, suitable for JSON output.
pub fn to_decimal_string(x: &BigFloat, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let p = x.mantissa_max_bit_len().unwrap_or(128).max(64);
    // exponent in base 10 of |x|: e10 ≈ floor(e2 * log10(2))
    let e2 = x.exponent().expect("finite") as i64;
    let e10 = ((e2 as f64 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
    // m = round(x / 10^{e10 - digits + 1}) has about `digits` digits
    let shift10 = e10 - digits as i64 + 1;
    let ten = BigFloat::from_i64(10, p);
    let mut scaled = x.clone();
    let mut k = shift10.unsigned_abs() as usize;
    // apply 10^{|shift10|} by squaring
    let mut power = ten;
    let mut factor = BigFloat::from_i64(1, p);
    while k > 0 {
        if k & 1 == 1 {
            factor = factor.mul(&power, p, RM);
        }
        power = power.mul(&power, p, RM);
        k >>= 1;
    }
    if shift10 >= 0 {
        scaled = scaled.div(&factor, p, RM);
    } else {
        scaled = scaled.mul(&factor, p, RM);
    }
    let m = to_bigint_round(&scaled);
    if m.is_zero() {
        return "0".into();
    }
    let neg = m.is_negative();
    let digits_str = m.abs().to_string();
    let point_exp = shift10 + digits_str.len() as i64 - 1;
    let mantissa = if digits_str.len() > 1 {
        format!("{}.{}", &digits_str[..1], &digits_str[1..])
    } else {
        digits_str.clone()
    };
    format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, point_exp)
}

/// Complex number over [`BigFloat`]; all operations take the working
/// precision from the supplied context.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn zero(ctx: &NumCtx) -> Self {
        BigComplex { re: ctx.zero(), im: ctx.zero() }
    }

    pub fn from_re(re: BigFloat, ctx: &NumCtx) -> Self {
        BigComplex { re, im: ctx.zero() }
    }

    pub fn add(&self, o: &Self, ctx: &NumCtx) -> Self {
        BigComplex { re: ctx.add(&self.re, &o.re), im: ctx.add(&self.im, &o.im) }
    }

    pub fn sub(&self, o: &Self, ctx: &NumCtx) -> Self {
        BigComplex { re: ctx.sub(&self.re, &o.re), im: ctx.sub(&self.im, &o.im) }
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.re.inv_sign();
        r.im.inv_sign();
        r
    }

    pub fn mul(&self, o: &Self, ctx: &NumCtx) -> Self {
        let ac = ctx.mul(&self.re, &o.re);
        let bd = ctx.mul(&self.im, &o.im);
        let ad = ctx.mul(&self.re, &o.im);
        let bc = ctx.mul(&self.im, &o.re);
        BigComplex { re: ctx.sub(&ac, &bd), im: ctx.add(&ad, &bc) }
    }

    pub fn scale(&self, s: &BigFloat, ctx: &NumCtx) -> Self {
        BigComplex { re: ctx.mul(&self.re, s), im: ctx.mul(&self.im, s) }
    }

    pub fn div(&self, o: &Self, ctx: &NumCtx) -> Self {
        let d = o.abs2(ctx);
        let num = self.mul(&o.conj(), ctx);
        BigComplex { re: ctx.div(&num.re, &d), im: ctx.div(&num.im, &d) }
    }

    pub fn conj(&self) -> Self {
        let mut r = self.clone();
        r.im.inv_sign();
        r
    }

    pub fn abs2(&self, ctx: &NumCtx) -> BigFloat {
        ctx.add(&ctx.mul(&self.re, &self.re), &ctx.mul(&self.im, &self.im))
    }

    pub fn abs(&self, ctx: &NumCtx) -> BigFloat {
        ctx.sqrt(&self.abs2(ctx))
    }

    /// Non-negative integer power by binary exponentiation.
    pub fn powi(&self, mut n: u64, ctx: &NumCtx) -> Self {
        let mut base = self.clone();
        let mut acc = BigComplex::from_re(ctx.from_i64(1), ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            base = base.mul(&base, ctx);
            n >>= 1;
        }
        acc
    }

    pub fn recip(&self, ctx: &NumCtx) -> Self {
        let one = BigComplex::from_re(ctx.from_i64(1), ctx);
        one.div(self, ctx)
    }
}

/// Horner evaluation of Σ coeffs[i]·z^i (coefficients exact integers).
pub fn horner_bigint(coeffs: &[BigInt], z: &BigComplex, ctx: &NumCtx) -> BigComplex {
    let mut acc = BigComplex::zero(ctx);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, ctx);
        acc.re = ctx.add(&acc.re, &ctx.from_bigint(c));
    }
    acc
}
