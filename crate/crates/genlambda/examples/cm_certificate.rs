//! Algebraic-integer certificate for Λ_{3,2}((−7+√−7)/2): evaluate the
//! function and j at the CM point to 384 bits, round j to −3375, and verify
//! that the monic integer polynomial Φ(X, −3375) annihilates the value.
//! Building the modular equation dominates the runtime (~half a minute).
//!
//! ```sh
//! cargo run --example cm_certificate
//! ```

use genlambda::cmeval::{certify_integral, eval_lambda, minimal_polynomial_advisory, CmPoint};
use genlambda::cyclotomic::CycloContext;
use genlambda::modpoly::modular_equation;
use genlambda::numeric::NumCtx;
use genlambda::phiexp::LambdaParams;

fn main() -> genlambda::Result<()> {
    let n = 7u32;
    let ctx = CycloContext::new(n)?;
    let p = LambdaParams::new(n, 3, 2)?;
    println!("building the modular equation ...");
    let me = modular_equation(&p, &ctx)?;

    for d in [-7i64, -8] {
        let pt = CmPoint::from_discriminant(d)?;
        let cert = certify_integral(&p, &pt, &me, 384)?;
        println!("\nD = {d}:");
        println!("  j(alpha) rounds to {} (distance {})", cert.j_rounding.j_rounded, cert.j_rounding.distance);
        println!("  Lambda(alpha) = {}", cert.value_re);
        println!("                + {} i", cert.value_im);
        println!("  annihilator: monic, degree {}", cert.annihilator.len() - 1);
        println!("  |Phi(Lambda(alpha), j0)| = {} < {}", cert.residual, cert.tolerance);

        // advisory refinement: a smaller exact divisor through the value
        let nc = NumCtx::new(256);
        let lam = eval_lambda(&p, &pt, 256)?;
        let annihilator: Vec<num::BigInt> = cert
            .annihilator
            .iter()
            .map(|s| s.parse().expect("integer"))
            .collect();
        if let Some(min) = minimal_polynomial_advisory(&annihilator, &lam, &nc, 48) {
            println!(
                "  advisory factor through the value: degree {}",
                min.len() - 1
            );
        }
    }
    Ok(())
}
