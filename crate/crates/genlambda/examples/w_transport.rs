//! The general W_{[a₁,a₂,a₃]} quotient and its reduction, for gcd(a₃,N)=1,
//! to Λ_{k,ℓ}∘M with M ≡ diag(a₃⁻¹, a₃) (mod N).
//!
//! ```sh
//! cargo run --example w_transport
//! ```

use genlambda::cyclotomic::CycloContext;
use genlambda::phiexp::{lambda_slash, w_slash, w_transport, UnimodularMatrix};

fn main() -> genlambda::Result<()> {
    let n = 7u32;
    let ctx = CycloContext::new(n)?;

    // W_{[3,2,1]} is Lambda_{3,2} by definition
    let e2 = UnimodularMatrix::identity();
    let w = w_slash(3, 2, 1, &e2, 12, &ctx)?;
    println!("W_[3,2,1] = {w}");

    // a triple with a_3 = 2: reduces through M ≡ diag(4, 2) mod 7
    let (a1, a2, a3) = (1i64, 3, 2);
    let (p, m) = w_transport(a1, a2, a3, n)?;
    println!("\nW_[{a1},{a2},{a3}] transports to Lambda_{{{},{}}} o M", p.k(), p.l());
    println!("M = {m} (congruent to diag(4,2) mod 7)");

    let via_w = w_slash(a1, a2, a3, &e2, 12, &ctx)?;
    let via_lambda = lambda_slash(&p, &m, 12, &ctx)?;
    println!("\ndirect quotient:   {via_w}");
    println!("transported form:  {via_lambda}");
    println!("equal to q^12:     {}", via_w.eq_to_precision(&via_lambda, 12)?);

    // the same identity composed with an arbitrary slash matrix
    let a = UnimodularMatrix::new(2, 1, 1, 1)?;
    let via_w = w_slash(a1, a2, a3, &a, 12, &ctx)?;
    let via_lambda = lambda_slash(&p, &m.mul(&a), 12, &ctx)?;
    println!("\ncomposed with A = {a}: equal = {}", via_w.eq_to_precision(&via_lambda, 12)?);
    Ok(())
}
