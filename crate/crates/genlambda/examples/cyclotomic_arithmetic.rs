//! Exact arithmetic in Q(ζ_N): canonical forms, Galois action, norms, and
//! the divisibility/unit structure of the numbers 1 − ζ^k.
//!
//! ```sh
//! cargo run --example cyclotomic_arithmetic
//! ```

use genlambda::cyclotomic::CycloContext;
use genlambda::numtheory::gcd;

fn main() -> genlambda::Result<()> {
    let ctx = CycloContext::new(12)?;
    println!("Q(zeta_12): degree {} over Q", ctx.degree());
    println!(
        "minimal polynomial of zeta: {:?} (ascending)",
        ctx.minimal_polynomial().iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );

    // canonical power-basis forms
    let z = ctx.zeta_pow(1);
    println!("\nzeta^7 reduced: {}", ctx.zeta_pow(7));
    println!("zeta * zeta^11 = {}", &z * &ctx.zeta_pow(11));

    // Galois orbit and norm of 1 - zeta^k
    println!("\nk | N/(k,N) | norm(1 - zeta^k) | unit in Z[zeta]?");
    for k in 1..12 {
        let e = ctx.one_minus_zeta(k);
        let norm = e.norm();
        println!(
            "{k} | {:8} | {:16} | {}",
            12 / gcd(k, 12),
            norm.to_string(),
            e.is_unit_in_ring()?
        );
    }

    // divisibility with a witness quotient: (1 - z^4)/(1 - z^2) = 1 + z^2
    let q = ctx
        .one_minus_zeta(2)
        .divides_in_ring(&ctx.one_minus_zeta(4))?
        .expect("divides");
    println!("\n(1 - z^4) / (1 - z^2) = {q}");

    // exact inverse
    let a = ctx.one_minus_zeta(1);
    let inv = a.inv()?;
    println!("(1 - z)^(-1) = {inv}");
    println!("check: (1 - z) * (1 - z)^(-1) = {}", &a * &inv);
    Ok(())
}
