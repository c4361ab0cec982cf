//! q-expansions of the slashed Weierstrass values φ_s[A]₂ and their
//! closed-form leading coefficients θ_{r,s}(A).
//!
//! ```sh
//! cargo run --example phi_expansions
//! ```

use genlambda::cyclotomic::CycloContext;
use genlambda::phiexp::{brace, phi_slash, theta, UnimodularMatrix};

fn main() -> genlambda::Result<()> {
    let n = 7u32;
    let ctx = CycloContext::new(n)?;

    // at the identity, the expansion is supported on exponents divisible by N
    let e2 = UnimodularMatrix::identity();
    println!("phi_1[E2]_2 = {}", phi_slash(1, &e2, 16, &ctx)?);

    // at T = [[1,0],[1,1]] the order is {s·1} = s
    let t = UnimodularMatrix::t_lower();
    for s in 1..=3 {
        let f = phi_slash(s, &t, 9, &ctx)?;
        println!("\nphi_{s}[T]_2 = {f}");
        println!("  order {} = brace({s}*c) = {}", f.order()?, brace(s, n as i64).brace);
    }

    // leading coefficients of differences, against the case table
    println!("\nleading coefficient of (phi_r - phi_s)[A]_2 vs theta(r,s,A):");
    for (r, s, a, label) in [
        (3i64, 1i64, e2, "A = E2"),
        (2, 1, e2, "A = E2"),
        (1, 3, t, "A = T"),
        (3, 1, t, "A = T"),
    ] {
        let tv = theta(r, s, &a, &ctx)?;
        let diff = phi_slash(r, &a, 10, &ctx)?.sub(&phi_slash(s, &a, 10, &ctx)?);
        println!(
            "  r={r}, s={s}, {label}: case {:?}, theta = {}, series leading = {}",
            tv.case_tag,
            tv.value,
            diff.leading()?
        );
    }
    Ok(())
}
