//! The modular equation Φ(X, j) = ∏_{A∈R} (X − Λ_{3,2}∘A) at level 7:
//! a monic degree-24 polynomial over Z[j], computed entirely in exact
//! arithmetic. Takes around half a minute.
//!
//! ```sh
//! cargo run --example modular_equation
//! ```

use genlambda::cyclotomic::CycloContext;
use genlambda::modpoly::{modular_equation, required_precision};
use genlambda::cosets::build_transversal;
use genlambda::phiexp::LambdaParams;

fn main() -> genlambda::Result<()> {
    let n = 7u32;
    let ctx = CycloContext::new(n)?;
    let p = LambdaParams::new(n, 3, 2)?;
    let tr = build_transversal(n)?;
    println!(
        "building Phi(X,j) from {} factors at q-precision {} ...",
        tr.len(),
        required_precision(&p, &tr)
    );

    let t0 = std::time::Instant::now();
    let me = modular_equation(&p, &ctx)?;
    println!("done in {:.1?}", t0.elapsed());
    println!("degree in X:        {}", me.degree());
    println!("verified integer:   {}", me.verified_integer());
    println!("guard coefficients: {} (all exactly zero)", me.guard_terms());

    println!("\nPhi(X, J) =");
    for i in (0..=me.degree()).rev() {
        let poly = me.coefficient(i);
        let rendered: Vec<String> = poly
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("({c})*J"),
                _ => format!("({c})*J^{j}"),
            })
            .collect();
        if !rendered.is_empty() {
            println!("  X^{i} * [{}]", rendered.join(" + "));
        }
    }

    // the annihilator of Lambda(alpha) for any alpha with j(alpha) = -3375
    let annihilator = me.evaluate_at_j(&(-3375).into())?;
    println!("\nPhi(X, -3375) coefficients (ascending):");
    println!("  {:?}", annihilator.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    Ok(())
}
