//! Cross-checks of the numeric evaluation layer against an independent
//! Weierstrass lattice-sum oracle (see `common/mod.rs`).

mod common;

use common::{normalize_wp, phi_oracle, wp_lattice, EisensteinTable};
use genlambda::cmeval::{eval_phi, eval_w_slash_at};
use genlambda::numeric::{BigComplex, NumCtx};
use genlambda::phiexp::UnimodularMatrix;

#[test]
fn eval_phi_matches_lattice_sums() {
    // τ = (1 + i√7)/2, N = 7, s = 1..3, agreement to 1e−12
    let mut nc = NumCtx::new(192);
    let tau = BigComplex {
        re: nc.div(&nc.from_i64(1), &nc.from_i64(2)),
        im: nc.div(&nc.sqrt(&nc.from_i64(7)), &nc.from_i64(2)),
    };
    let table = EisensteinTable::compute(&tau, 260, &nc);
    for s in 1..=3 {
        let direct = eval_phi(s, &tau, 7, &mut nc).unwrap();
        let oracle = phi_oracle(s, 7, &tau, &table, &mut nc);
        let d = direct.sub(&oracle, &nc).abs(&nc);
        assert!(nc.abs_lt(&d, &nc.pow10(-12)), "s={s}");
    }
}

#[test]
fn eval_w_slash_matches_wp_quotient_at_inversion() {
    // For A = [[0,−1],[1,0]] the value W∘A(τ) equals the quotient
    // (℘(kτ/N) − ℘(τ/N)) / (℘(ℓτ/N) − ℘(τ/N)) of plain lattice sums.
    let mut nc = NumCtx::new(192);
    let tau = BigComplex { re: nc.zero(), im: nc.from_i64(1) };
    let a = UnimodularMatrix::s_inversion();
    let (n, k, l) = (7u32, 3i64, 2i64);

    let direct = eval_w_slash_at(k, l, 1, &a, &tau, n, &mut nc).unwrap();

    let table = EisensteinTable::compute(&tau, 260, &nc);
    let torsion = |m: i64, nc: &mut NumCtx| {
        let z = BigComplex {
            re: nc.div(&nc.mul(&tau.re, &nc.from_i64(m)), &nc.from_i64(n as i64)),
            im: nc.div(&nc.mul(&tau.im, &nc.from_i64(m)), &nc.from_i64(n as i64)),
        };
        wp_lattice(&z, &tau, &table, nc)
    };
    let wk = torsion(k, &mut nc);
    let wl = torsion(l, &mut nc);
    let w1 = torsion(1, &mut nc);
    let oracle = wk.sub(&w1, &nc).div(&wl.sub(&w1, &nc), &nc);

    let d = direct.sub(&oracle, &nc).abs(&nc);
    assert!(nc.abs_lt(&d, &nc.pow10(-10)));
}

#[test]
fn normalized_wp_matches_phi_at_cm_point() {
    // same comparison at a CM point with a shift, touching the reduction
    // into the fundamental cell
    let mut nc = NumCtx::new(160);
    let tau = BigComplex {
        re: nc.div(&nc.from_i64(-7), &nc.from_i64(2)),
        im: nc.div(&nc.sqrt(&nc.from_i64(7)), &nc.from_i64(2)),
    };
    let table = EisensteinTable::compute(&tau, 260, &nc);
    // z = 2/7 shifted by a full lattice vector 3 + 2τ
    let z = BigComplex {
        re: nc.add(
            &nc.div(&nc.from_i64(2), &nc.from_i64(7)),
            &nc.add(&nc.from_i64(3), &nc.mul(&nc.from_i64(2), &tau.re)),
        ),
        im: nc.mul(&nc.from_i64(2), &tau.im),
    };
    let wp = wp_lattice(&z, &tau, &table, &nc);
    let lhs = normalize_wp(&wp, &mut nc);
    let rhs = eval_phi(2, &tau, 7, &mut nc).unwrap();
    let d = lhs.sub(&rhs, &nc).abs(&nc);
    assert!(nc.abs_lt(&d, &nc.pow10(-12)));
}
