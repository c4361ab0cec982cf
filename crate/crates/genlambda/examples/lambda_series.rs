//! The generalized λ function Λ_{k,ℓ} = (φ_k − φ_1)/(φ_ℓ − φ_1): exact
//! q-expansions of Λ∘A, the order formula, and coefficient integrality.
//!
//! ```sh
//! cargo run --example lambda_series
//! ```

use genlambda::cyclotomic::CycloContext;
use genlambda::phiexp::{lambda_order, lambda_slash, LambdaParams, UnimodularMatrix};
use genlambda::qlaurent::QLaurentSeries;

fn main() -> genlambda::Result<()> {
    let n = 7u32;
    let ctx = CycloContext::new(n)?;
    let p = LambdaParams::new(n, 3, 2)?;
    println!(
        "Lambda_{{3,2}} at level 7; integrality hypothesis holds: {}",
        p.integrality_guaranteed()
    );

    let matrices = [
        ("E2", UnimodularMatrix::identity()),
        ("T", UnimodularMatrix::t_lower()),
        ("S", UnimodularMatrix::s_inversion()),
        ("[[2,1],[1,1]]", UnimodularMatrix::new(2, 1, 1, 1)?),
        ("[[1,0],[2,1]]", UnimodularMatrix::new(1, 0, 2, 1)?),
    ];
    for (name, a) in matrices {
        let f = lambda_slash(&p, &a, 15, &ctx)?;
        println!("\nLambda o {name}:");
        println!("  predicted order min({{kc}},{{c}}) - min({{lc}},{{c}}) = {}", lambda_order(&p, &a));
        println!("  series = {f}");
        let integral = f.terms().all(|(_, c)| c.is_integral());
        println!("  all coefficients in Z[zeta]: {integral}");
    }

    // 1/Lambda_{k,l} = Lambda_{l,k}
    let a = UnimodularMatrix::new(2, 1, 1, 1)?;
    let f = lambda_slash(&p, &a, 15, &ctx)?;
    let g = lambda_slash(&p.swapped(), &a, 15, &ctx)?;
    let product = f.mul(&g);
    let m = product.prec();
    println!(
        "\nLambda_{{3,2}} * Lambda_{{2,3}} = 1 + O(q^{m}): {}",
        product.eq_to_precision(&QLaurentSeries::one(&ctx, m), m)?
    );
    Ok(())
}
