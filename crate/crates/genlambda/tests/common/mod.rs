#![allow(dead_code)] // helpers are shared across several test binaries

//! Shared test oracles, independent of the library's evaluation paths.
//!
//! The Weierstrass oracle computes ℘(z; Z+Zτ) purely from lattice sums:
//! the Laurent expansion ℘(z) = z⁻² + Σ_{k≥1} (2k+1) G_{2k+2} z^{2k} with
//! the Eisenstein values G₈ and G₁₀ summed directly over the lattice (their
//! tails decay like K⁻⁶ and K⁻⁸), G₄ and G₆ recovered through the exact
//! relations G₈ = 3/7·G₄² and G₁₀ = 5/11·G₄·G₆, and all higher weights
//! produced by the classical quadratic recursion. No q-series anywhere.

use astro_float::BigFloat;
use genlambda::numeric::{to_f64_lossy, BigComplex, NumCtx};

/// Direct lattice sum Σ'_{|a|,|b| ≤ k} (a + bτ)^{−m} for even m ≥ 4.
fn eisenstein_direct(m: u32, tau: &BigComplex, k: i64, nc: &NumCtx) -> BigComplex {
    assert!(m.is_multiple_of(2) && m >= 4);
    let mut acc = BigComplex::zero(nc);
    for a in -k..=k {
        for b in -k..=k {
            if a == 0 && b == 0 {
                continue;
            }
            let omega = BigComplex {
                re: nc.add(&nc.from_i64(a), &nc.mul(&nc.from_i64(b), &tau.re)),
                im: nc.mul(&nc.from_i64(b), &tau.im),
            };
            let p = omega.powi(m as u64, nc);
            acc = acc.add(&p.recip(nc), nc);
        }
    }
    acc
}

fn complex_sqrt(w: &BigComplex, nc: &NumCtx) -> BigComplex {
    // u = sqrt((|w|+re)/2), v = sign(im)*sqrt((|w|-re)/2)
    let r = w.abs(nc);
    let two = nc.from_i64(2);
    let u = nc.sqrt(&nc.div(&nc.add(&r, &w.re), &two));
    let mut v = nc.sqrt(&nc.div(&nc.sub(&r, &w.re), &two));
    if w.im.is_negative() {
        v.inv_sign();
    }
    BigComplex { re: u, im: v }
}

fn dist(a: &BigComplex, b: &BigComplex, nc: &NumCtx) -> BigFloat {
    a.sub(b, nc).abs(nc)
}

/// Eisenstein values G₄, G₆, G₈, … G_{2·max_k} for the lattice Z + Zτ.
pub struct EisensteinTable {
    /// g\[i\] = G_{2i+4}, i.e. g\[0\] = G₄.
    g: Vec<BigComplex>,
}

impl EisensteinTable {
    pub fn compute(tau: &BigComplex, max_weight: usize, nc: &NumCtx) -> Self {
        let g8 = eisenstein_direct(8, tau, 200, nc);
        let g10 = eisenstein_direct(10, tau, 80, nc);
        // branch of sqrt fixed against a rough direct estimate of G₄
        let g4_rough = eisenstein_direct(4, tau, 30, nc);
        let g4_sq = {
            let seven_thirds = nc.div(&nc.from_i64(7), &nc.from_i64(3));
            g8.scale(&seven_thirds, nc)
        };
        let cand = complex_sqrt(&g4_sq, nc);
        let g4 = if nc.abs_lt(&dist(&cand, &g4_rough, nc), &dist(&cand.neg(), &g4_rough, nc)) {
            cand
        } else {
            cand.neg()
        };
        let g6 = {
            let eleven_fifths = nc.div(&nc.from_i64(11), &nc.from_i64(5));
            g10.div(&g4, nc).scale(&eleven_fifths, nc)
        };

        let mut g = vec![g4, g6, g8, g10];
        // (2k+1)(k−3)(2k−1) G_{2k} = 3 Σ_{m=2}^{k−2} (2m−1)(2k−2m−1) G_{2m} G_{2k−2m}
        while 4 + 2 * (g.len() - 1) < max_weight {
            let two_k = 4 + 2 * g.len(); // weight being produced
            let k = (two_k / 2) as i64;
            let mut acc = BigComplex::zero(nc);
            for m in 2..=(k - 2) {
                let a = &g[(m - 2) as usize];
                let b = &g[(k - m - 2) as usize];
                let w = nc.from_i64((2 * m - 1) * (2 * (k - m) - 1));
                acc = acc.add(&a.mul(b, nc).scale(&w, nc), nc);
            }
            let denom = nc.from_i64((2 * k + 1) * (k - 3) * (2 * k - 1));
            let val = acc.scale(&nc.div(&nc.from_i64(3), &denom), nc);
            g.push(val);
        }
        EisensteinTable { g }
    }

    fn get(&self, weight: usize) -> &BigComplex {
        &self.g[(weight - 4) / 2]
    }
}

/// ℘(z; Z + Zτ) by Laurent expansion around 0 after reducing z to the
/// centered fundamental cell. Purely lattice-sum based.
pub fn wp_lattice(z: &BigComplex, tau: &BigComplex, table: &EisensteinTable, nc: &NumCtx) -> BigComplex {
    // coordinates z = x·1 + y·τ, then recenter
    let y = nc.div(&z.im, &tau.im);
    let x = nc.sub(&z.re, &nc.mul(&y, &tau.re));
    let xr = to_f64_lossy(&x).round() as i64;
    let yr = to_f64_lossy(&y).round() as i64;
    let zc = BigComplex {
        re: nc.sub(
            &nc.sub(&z.re, &nc.from_i64(xr)),
            &nc.mul(&nc.from_i64(yr), &tau.re),
        ),
        im: nc.sub(&z.im, &nc.mul(&nc.from_i64(yr), &tau.im)),
    };
    let z2 = zc.mul(&zc, nc);
    let mut acc = zc.mul(&zc, nc).recip(nc);
    let mut zpow = z2.clone(); // z^{2k}
    let max_weight = 4 + 2 * (table.g.len() - 1);
    let mut k = 1usize;
    // single terms can vanish (G₆ = G₁₀ = … = 0 on the square lattice), so
    // only stop after several consecutive negligible terms
    let mut consecutive_small = 0;
    loop {
        let weight = 2 * k + 2;
        if weight > max_weight {
            panic!("Eisenstein table too small: z too close to the lattice");
        }
        let term = zpow
            .mul(table.get(weight), nc)
            .scale(&nc.from_i64((2 * k + 1) as i64), nc);
        acc = acc.add(&term, nc);
        // the direct G₈/G₁₀ sums limit the oracle to ~1e−19 anyway,
        // so 2^{−100} is well below the noise floor
        let bound = nc.pow2(-100);
        if nc.abs_lt(&term.abs(nc), &bound) && k > 4 {
            consecutive_small += 1;
            if consecutive_small >= 3 {
                break;
            }
        } else {
            consecutive_small = 0;
        }
        zpow = zpow.mul(&z2, nc);
        k += 1;
    }
    acc
}

/// φ_s(τ) from the lattice oracle: ℘(s/N)/(2πi)² − 1/12.
pub fn phi_oracle(
    s: i64,
    n: u32,
    tau: &BigComplex,
    table: &EisensteinTable,
    nc: &mut NumCtx,
) -> BigComplex {
    let z = BigComplex {
        re: nc.div(&nc.from_i64(s), &nc.from_i64(n as i64)),
        im: nc.zero(),
    };
    let wp = wp_lattice(&z, tau, table, nc);
    normalize_wp(&wp, nc)
}

/// ℘-value to φ-normalization: divide by (2πi)² = −4π² and subtract 1/12.
pub fn normalize_wp(wp: &BigComplex, nc: &mut NumCtx) -> BigComplex {
    let pi = nc.pi();
    let minus_four_pi2 = {
        let p2 = nc.mul(&pi, &pi);
        nc.mul(&p2, &nc.from_i64(-4))
    };
    let scaled = BigComplex {
        re: nc.div(&wp.re, &minus_four_pi2),
        im: nc.div(&wp.im, &minus_four_pi2),
    };
    let twelfth = nc.div(&nc.from_i64(1), &nc.from_i64(12));
    BigComplex {
        re: nc.sub(&scaled.re, &twelfth),
        im: scaled.im,
    }
}
