//! Truncated Laurent series in q = exp(2πiτ/N) with coefficients in Q(ζ_N).
//!
//! A series stores a window of exponents `[ord, prec)`: coefficients below
//! `ord` are exactly zero, coefficients at or above `prec` are unknown.
//! Precision bookkeeping is pessimistic — an operation that cannot guarantee
//! a coefficient drops it, so a stored coefficient is always exact. A series
//! whose window contains only zeros is stored with an empty window
//! (`ord == prec`): asking such a series for its order is an error rather
//! than a silent zero, since the callers that need an order (leading-term
//! extraction, inversion) rely on the leading coefficient being real.

use std::fmt;

use num::BigRational;
use serde_json::json;

use crate::cyclotomic::{CycloContext, CyclotomicNumber};
use crate::error::Error;
use crate::Result;

#[derive(Clone, PartialEq, Eq)]
pub struct QLaurentSeries {
    ctx: CycloContext,
    /// Exponent of the first stored coefficient; equals `prec` for a series
    /// that is zero on its whole window.
    ord: i64,
    /// Coefficients for exponents `ord..ord+len`; `prec = ord + len`.
    coeffs: Vec<CyclotomicNumber>,
}

impl QLaurentSeries {
    /// The zero series, known to vanish for all exponents below `prec`.
    pub fn zero(ctx: &CycloContext, prec: i64) -> Self {
        QLaurentSeries { ctx: ctx.clone(), ord: prec, coeffs: vec![] }
    }

    /// c·q^m, known through `prec` (exclusive).
    pub fn monomial(ctx: &CycloContext, c: CyclotomicNumber, m: i64, prec: i64) -> Self {
        assert!(m < prec, "monomial exponent must lie below the precision");
        let mut s = QLaurentSeries { ctx: ctx.clone(), ord: m, coeffs: vec![c] };
        s.coeffs
            .extend(std::iter::repeat_with(|| ctx.zero()).take((prec - m - 1) as usize));
        s.trim();
        s
    }

    pub fn one(ctx: &CycloContext, prec: i64) -> Self {
        Self::monomial(ctx, ctx.one(), 0, prec)
    }

    /// Series from a dense coefficient window starting at `ord`.
    pub fn from_window(ctx: &CycloContext, ord: i64, coeffs: Vec<CyclotomicNumber>) -> Self {
        let mut s = QLaurentSeries { ctx: ctx.clone(), ord, coeffs };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.ord += k as i64;
                self.coeffs.drain(..k);
            }
            None => {
                self.ord += self.coeffs.len() as i64;
                self.coeffs.clear();
            }
        }
    }

    pub fn context(&self) -> &CycloContext {
        &self.ctx
    }

    /// First exponent that is no longer guaranteed.
    pub fn prec(&self) -> i64 {
        self.ord + self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero coefficient.
    ///
    /// A series indistinguishable from zero at the stored precision is an
    /// error ("precision exhausted"): the caller must re-expand deeper.
    pub fn order(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::PrecisionExhausted(format!(
                "series is zero through q^{}; order unknown",
                self.prec()
            )))
        } else {
            Ok(self.ord)
        }
    }

    /// Leading (lowest-order) coefficient.
    pub fn leading(&self) -> Result<&CyclotomicNumber> {
        self.order()?;
        Ok(&self.coeffs[0])
    }

    /// Coefficient at exponent `m`: `None` when `m >= prec` (unknown),
    /// an exact value (possibly zero) otherwise.
    pub fn coeff_at(&self, m: i64) -> Option<CyclotomicNumber> {
        if m >= self.prec() {
            None
        } else if m < self.ord {
            Some(self.ctx.zero())
        } else {
            Some(self.coeffs[(m - self.ord) as usize].clone())
        }
    }

    /// Known terms, ascending, skipping zero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CyclotomicNumber)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.ord + i as i64, c))
    }

    fn same_ctx(&self, rhs: &Self) {
        assert_eq!(
            self.ctx.level(),
            rhs.ctx.level(),
            "series context mismatch: N={} vs N={}",
            self.ctx.level(),
            rhs.ctx.level()
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.same_ctx(rhs);
        let prec = self.prec().min(rhs.prec());
        let ord = self.ord.min(rhs.ord).min(prec);
        let mut coeffs = Vec::with_capacity((prec - ord) as usize);
        for m in ord..prec {
            let a = self.coeff_at(m).unwrap_or_else(|| self.ctx.zero());
            let b = rhs.coeff_at(m).unwrap_or_else(|| self.ctx.zero());
            coeffs.push(&a + &b);
        }
        QLaurentSeries::from_window(&self.ctx, ord, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QLaurentSeries {
            ctx: self.ctx.clone(),
            ord: self.ord,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Truncated product. The result's precision is the best that both
    /// operands support: min(prec_a + ord_b, prec_b + ord_a).
    pub fn mul(&self, rhs: &Self) -> Self {
        self.same_ctx(rhs);
        let prec = (self.prec() + rhs.ord).min(rhs.prec() + self.ord);
        let ord = self.ord + rhs.ord;
        if self.is_zero() || rhs.is_zero() {
            return QLaurentSeries::zero(&self.ctx, prec);
        }
        let len = (prec - ord).max(0) as usize;
        let mut coeffs = vec![self.ctx.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        QLaurentSeries::from_window(&self.ctx, ord, coeffs)
    }

    /// Multiply by an exact scalar (does not cost precision).
    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        if c.is_zero() {
            return QLaurentSeries { ctx: self.ctx.clone(), ord: self.prec(), coeffs: vec![] };
        }
        QLaurentSeries {
            ctx: self.ctx.clone(),
            ord: self.ord,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by q^m (exact shift).
    pub fn shift(&self, m: i64) -> Self {
        QLaurentSeries {
            ctx: self.ctx.clone(),
            ord: self.ord + m,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Restrict the window to exponents below `new_prec`.
    pub fn truncate(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec() {
            return self.clone();
        }
        let keep = (new_prec - self.ord).max(0) as usize;
        QLaurentSeries::from_window(&self.ctx, self.ord.min(new_prec), self.coeffs[..keep].to_vec())
    }

    /// Multiplicative inverse: requires a nonzero leading coefficient.
    /// The relative window length is preserved.
    pub fn invert(&self) -> Result<Self> {
        let m = self.order()?;
        let c_inv = self.coeffs[0].inv()?;
        let len = self.coeffs.len();
        let mut out: Vec<CyclotomicNumber> = Vec::with_capacity(len);
        out.push(c_inv.clone());
        for t in 1..len {
            // b_t = -c^{-1} Σ_{i=1..t} a_i b_{t-i}
            let mut acc = self.ctx.zero();
            for i in 1..=t {
                if self.coeffs[i].is_zero() || out[t - i].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[i] * &out[t - i]);
            }
            out.push(&(-&acc) * &c_inv);
        }
        Ok(QLaurentSeries::from_window(&self.ctx, -m, out))
    }

    /// Coefficientwise Galois action σ_h (h coprime to N). Commutes with
    /// addition and multiplication.
    pub fn galois_series(&self, h: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.galois(h))
            .collect::<Result<Vec<_>>>()?;
        Ok(QLaurentSeries::from_window(&self.ctx, self.ord, coeffs))
    }

    /// Exact agreement of all coefficients below exponent `m`.
    /// Errors if either side does not actually know that window.
    pub fn eq_to_precision(&self, rhs: &Self, m: i64) -> Result<bool> {
        self.same_ctx(rhs);
        if self.prec() < m || rhs.prec() < m {
            return Err(Error::PrecisionExhausted(format!(
                "comparison through q^{m} needs precision {m}, have {} and {}",
                self.prec(),
                rhs.prec()
            )));
        }
        for e in self.ord.min(rhs.ord)..m {
            if self.coeff_at(e) != rhs.coeff_at(e) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// JSON rendering: ascending (exponent, coefficient-vector) pairs, with
    /// rational coefficients as strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(m, c)| {
                let coeffs: Vec<String> = c.coeffs().iter().map(ratio_string).collect();
                json!([m, coeffs])
            })
            .collect();
        json!({
            "level": self.ctx.level(),
            "prec": self.prec(),
            "terms": terms,
        })
    }
}

pub(crate) fn ratio_string(r: &BigRational) -> String {
    if num::One::is_one(r.denom()) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Debug for QLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (m, c) in self.terms() {
            if any {
                write!(f, " + ")?;
            }
            any = true;
            match m {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{m}")?,
            }
        }
        if !any {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloContext;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> CycloContext {
        CycloContext::new(7).unwrap()
    }

    fn random_series(c: &CycloContext, rng: &mut ChaCha8Rng, ord: i64, prec: i64) -> QLaurentSeries {
        let coeffs = (ord..prec)
            .map(|_| {
                let k = rng.gen_range(0..c.level() as i64);
                if rng.gen_bool(0.3) {
                    c.zero()
                } else {
                    c.zeta_pow(k).scale(&BigRational::from_integer(rng.gen_range(-4i64..=4).into()))
                }
            })
            .collect();
        QLaurentSeries::from_window(c, ord, coeffs)
    }

    #[test]
    fn identity_and_monomial_inverse() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_series(&c, &mut rng, -2, 10);
        assert_eq!(a.add(&QLaurentSeries::zero(&c, 10)), a.truncate(10));

        // q * q^{-1} = 1
        let q = QLaurentSeries::monomial(&c, c.one(), 1, 12);
        let qinv = QLaurentSeries::monomial(&c, c.one(), -1, 12);
        let p = q.mul(&qinv);
        assert_eq!(p.order().unwrap(), 0);
        assert_eq!(*p.leading().unwrap(), c.one());
    }

    #[test]
    fn geometric_identity() {
        // (1 - q) * (1 + q + q^2 + ...) = 1 + O(q^10)
        let c = ctx();
        let prec = 10;
        let one_minus_q = QLaurentSeries::from_window(&c, 0, {
            let mut v = vec![c.one(), c.from_i64(-1)];
            v.extend(std::iter::repeat_with(|| c.zero()).take((prec - 2) as usize));
            v
        });
        let geom = QLaurentSeries::from_window(
            &c,
            0,
            (0..prec).map(|_| c.one()).collect::<Vec<_>>(),
        );
        let p = one_minus_q.mul(&geom);
        assert!(p.eq_to_precision(&QLaurentSeries::one(&c, prec), prec).unwrap());
    }

    #[test]
    fn inversion_examples() {
        let c = ctx();
        let one = QLaurentSeries::one(&c, 8);
        assert_eq!(one.invert().unwrap(), one);

        // invert(q(1+q)) = q^{-1}(1 - q + q^2 - ...)
        let mut w = vec![c.one(), c.one()];
        w.extend(std::iter::repeat_with(|| c.zero()).take(6));
        let s = QLaurentSeries::from_window(&c, 1, w);
        let inv = s.invert().unwrap();
        assert_eq!(inv.order().unwrap(), -1);
        for t in 0..6 {
            let expect = c.from_i64(if t % 2 == 0 { 1 } else { -1 });
            assert_eq!(inv.coeff_at(-1 + t).unwrap(), expect);
        }
        assert!(s.mul(&inv).eq_to_precision(&QLaurentSeries::one(&c, 6), 6).unwrap());

        // invert(c q^m) = c^{-1} q^{-m}
        let mono = QLaurentSeries::monomial(&c, c.one_minus_zeta(1), 3, 9);
        let mono_inv = mono.invert().unwrap();
        assert_eq!(mono_inv.order().unwrap(), -3);
        assert_eq!(*mono_inv.leading().unwrap(), c.one_minus_zeta(1).inv().unwrap());

        assert!(QLaurentSeries::zero(&c, 5).invert().is_err());
    }

    #[test]
    fn order_and_leading() {
        let c = ctx();
        let mut w = vec![c.one(), c.from_i64(2)];
        w.extend(std::iter::repeat_with(|| c.zero()).take(4));
        let s = QLaurentSeries::from_window(&c, 3, w);
        assert_eq!(s.order().unwrap(), 3);
        assert_eq!(*s.leading().unwrap(), c.one());
        assert!(matches!(
            QLaurentSeries::zero(&c, 4).order(),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn congruence_mod_qn() {
        let c = ctx();
        let n = 7;
        let qn = QLaurentSeries::monomial(&c, c.one(), n, n + 3);
        let zero = QLaurentSeries::zero(&c, n + 3);
        assert!(qn.eq_to_precision(&zero, n).unwrap());
        assert!(!qn.eq_to_precision(&zero, n + 1).unwrap());
    }

    #[test]
    fn galois_acts_coefficientwise_and_multiplicatively() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_series(&c, &mut rng, 0, 9);
        let b = random_series(&c, &mut rng, -1, 8);
        assert_eq!(a.galois_series(1).unwrap(), a);
        let zq = QLaurentSeries::monomial(&c, c.zeta_pow(1), 1, 5);
        for h in [2i64, 3] {
            assert_eq!(
                *zq.galois_series(h).unwrap().leading().unwrap(),
                c.zeta_pow(h)
            );
            let lhs = a.mul(&b).galois_series(h).unwrap();
            let rhs = a.galois_series(h).unwrap().mul(&b.galois_series(h).unwrap());
            assert_eq!(lhs, rhs);
            let lhs = a.add(&b).galois_series(h).unwrap();
            let rhs = a.galois_series(h).unwrap().add(&b.galois_series(h).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn precision_honesty_under_deepening() {
        // recomputing a product with deeper inputs never changes previously
        // reported coefficients
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let deep_a = random_series(&c, &mut rng, -2, 20);
            let deep_b = random_series(&c, &mut rng, 0, 22);
            let shallow = deep_a.truncate(9).mul(&deep_b.truncate(9));
            let deep = deep_a.mul(&deep_b);
            for m in shallow.ord.min(deep.ord)..shallow.prec() {
                assert_eq!(shallow.coeff_at(m), deep.coeff_at(m));
            }
        }
    }

    #[test]
    fn ring_axioms_sampled() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..15 {
            let a = random_series(&c, &mut rng, -1, 10);
            let b = random_series(&c, &mut rng, 0, 11);
            let d = random_series(&c, &mut rng, 1, 12);
            let lhs = a.mul(&b).mul(&d);
            let rhs = a.mul(&b.mul(&d));
            let m = lhs.prec().min(rhs.prec());
            assert!(lhs.eq_to_precision(&rhs, m).unwrap());
            let lhs = a.mul(&b.add(&d));
            let rhs = a.mul(&b).add(&a.mul(&d));
            let m = lhs.prec().min(rhs.prec());
            assert!(lhs.eq_to_precision(&rhs, m).unwrap());
        }
    }

    #[test]
    fn json_rendering_shape() {
        let c = ctx();
        let s = QLaurentSeries::monomial(&c, c.one_minus_zeta(2), -1, 3);
        let v = s.to_json();
        assert_eq!(v["level"], 7);
        assert_eq!(v["prec"], 3);
        assert_eq!(v["terms"][0][0], -1);
        assert_eq!(v["terms"][0][1][0], "1");
        assert_eq!(v["terms"][0][1][2], "-1");
    }
}
