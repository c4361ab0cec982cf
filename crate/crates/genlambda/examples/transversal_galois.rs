//! The coset transversal of SL₂(Z) modulo Γ₁(N){±E₂} and the Galois
//! permutation σ_h acting on the Λ orbit.
//!
//! ```sh
//! cargo run --example transversal_galois
//! ```

use genlambda::cosets::build_transversal;
use genlambda::cyclotomic::CycloContext;
use genlambda::numtheory::gamma1_pm_index;
use genlambda::phiexp::{lambda_slash, LambdaParams};

fn main() -> genlambda::Result<()> {
    for n in 7u32..=12 {
        let tr = build_transversal(n)?;
        println!(
            "N={n}: {} coset representatives (index formula gives {})",
            tr.len(),
            gamma1_pm_index(n as i64)
        );
    }

    let n = 7u32;
    let tr = build_transversal(n)?;
    println!("\nfirst representatives at N=7 (v, t, u, k, matrix):");
    for e in tr.elements().iter().take(6) {
        println!("  v={}, t={}, u={}, k={}: {}", e.v, e.t, e.u, e.k, e.matrix);
    }

    // sigma_h permutes the orbit {Lambda o A}: series witness for h = 3
    let ctx = CycloContext::new(n)?;
    let p = LambdaParams::new(n, 3, 2)?;
    let h = 3i64;
    println!("\nGalois action sigma_{h} as a permutation of the transversal:");
    let mut cycle = vec![0usize];
    loop {
        let next = tr.galois_step(*cycle.last().unwrap(), h)?;
        if next == cycle[0] {
            break;
        }
        cycle.push(next);
    }
    println!("  orbit of element 0: {cycle:?}");

    let idx = 5usize;
    let jdx = tr.galois_step(idx, h)?;
    let prec = 2 * n as i64;
    let lhs = lambda_slash(&p, &tr.elements()[idx].matrix, prec, &ctx)?.galois_series(h)?;
    let rhs = lambda_slash(&p, &tr.elements()[jdx].matrix, prec, &ctx)?;
    println!(
        "  (Lambda o A_{idx})^sigma_{h} = Lambda o A_{jdx} to q^{prec}: {}",
        lhs.eq_to_precision(&rhs, prec)?
    );
    Ok(())
}
