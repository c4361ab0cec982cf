//! Coset transversal of SL₂(Z) modulo Γ₁(N){±E₂}.
//!
//! Representatives are the products `M_v · B(t,u,k)` where `v` runs over
//! (Z/N)^×/±1, `t` over the positive divisors of N, `u` over a canonical set
//! Θ_t of residues coprime to t representing (Z/(t, N/t))^×, and `k` over the
//! residues mod N/t compatible with `uk ≡ 1 (mod t)`. Here
//! `B(t,u,k) = [[u, (uk−1)/t], [t, k]]` and `M_v ≡ diag(v⁻¹, v) (mod N)`.
//!
//! The Galois automorphism σ_h permutes the representatives:
//! `(Λ_{k,ℓ} ∘ M_v B(t,u,k))^{σ_h} = Λ_{k,ℓ} ∘ M_v B(t, h*u, hk)` with
//! `h h* ≡ 1 (mod N)`, realized here as [`Transversal::galois_step`].

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::numtheory::{crt, divisors, gamma1_pm_index, gcd, modinv, modn, totient};
use crate::phiexp::UnimodularMatrix;
use crate::Result;

/// One coset representative `M_v · B(t,u,k)` with its construction data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransversalElement {
    /// Class representative in (Z/N)^×/±1, taken in \[1, N/2\].
    pub v: i64,
    /// Positive divisor of N (the lower-left entry of B).
    pub t: i64,
    /// Canonical Θ_t representative, coprime to t.
    pub u: i64,
    /// Lower-right entry of B; satisfies `u·k ≡ 1 (mod t)`.
    pub k: i64,
    /// The product matrix `M_v · B(t,u,k)`.
    #[serde(with = "matrix_rows")]
    pub matrix: UnimodularMatrix,
}

mod matrix_rows {
    use super::UnimodularMatrix;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &UnimodularMatrix, s: S) -> Result<S::Ok, S::Error> {
        [[m.a, m.b], [m.c, m.d]].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<UnimodularMatrix, D::Error> {
        let rows = <[[i64; 2]; 2]>::deserialize(d)?;
        UnimodularMatrix::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
            .map_err(serde::de::Error::custom)
    }
}

/// A complete, validated set of coset representatives.
#[derive(Clone, Debug)]
pub struct Transversal {
    n: u32,
    elements: Vec<TransversalElement>,
}

/// Canonical Θ_t: for each class w of (Z/(t, N/t))^×, the least positive
/// integer `u ≡ w` with gcd(u, t) = 1.
pub fn theta_set(t: i64, n: i64) -> Result<Vec<i64>> {
    if t <= 0 || n % t != 0 {
        return Err(Error::InvalidParameter(format!("{t} does not divide the level {n}")));
    }
    let g = gcd(t, n / t);
    let mut out = Vec::with_capacity(totient(g) as usize);
    for w in 1..=g {
        if gcd(w, g) != 1 {
            continue;
        }
        let mut u = w;
        while gcd(u, t) != 1 {
            u += g;
            assert!(u <= t * g, "no representative coprime to t below the search bound");
        }
        out.push(u);
    }
    debug_assert_eq!(out.len() as i64, totient(g));
    Ok(out)
}

/// A deterministic lift `M ∈ SL₂(Z)` with `M ≡ diag(v⁻¹, v) (mod N)`.
///
/// For v ≡ 1 the lift is the identity. Otherwise, with `a ≡ v⁻¹`, `d ≡ v`
/// lifted to \[0, N\) and `ad = 1 + mN`, the matrix
/// `[[a, yN], [N, d + wN]]` has determinant one for `w ≡ −m·d (mod N)` and
/// `y = (m + aw)/N`.
pub fn lift_diag(v: i64, n: u32) -> Result<UnimodularMatrix> {
    let ni = n as i64;
    let Some(a) = modinv(v, ni) else {
        return Err(Error::NotCoprime(v, n));
    };
    let d = modn(v, ni);
    if d == 1 {
        return Ok(UnimodularMatrix::identity());
    }
    let m = (a * d - 1) / ni;
    let w = modn(-m * d, ni);
    let y = (m + a * w) / ni;
    debug_assert_eq!((m + a * w) % ni, 0);
    let mat = UnimodularMatrix::new(a, y * ni, ni, d + w * ni)?;
    Ok(mat)
}

/// Membership test for Γ₁(N){±E₂}: `A` or `−A` has a ≡ d ≡ 1, c ≡ 0 mod N.
fn in_gamma1_pm(m: &UnimodularMatrix, n: i64) -> bool {
    let plus = modn(m.a - 1, n) == 0 && modn(m.c, n) == 0 && modn(m.d - 1, n) == 0;
    let minus = modn(m.a + 1, n) == 0 && modn(m.c, n) == 0 && modn(m.d + 1, n) == 0;
    plus || minus
}

/// Whether A and B represent the same coset, i.e. `A·B⁻¹ ∈ Γ₁(N){±E₂}`.
pub fn same_coset(a: &UnimodularMatrix, b: &UnimodularMatrix, n: u32) -> bool {
    in_gamma1_pm(&a.mul(&b.inv()), n as i64)
}

/// Enumerate the full transversal for level N, validating the element count
/// against ½·N²·∏_{p|N}(1−1/p²) and pairwise coset inequivalence.
pub fn build_transversal(n: u32) -> Result<Transversal> {
    if n < 7 {
        return Err(Error::LevelTooSmall(n));
    }
    let ni = n as i64;
    let mut elements = Vec::new();
    for v in 1..=ni / 2 {
        if gcd(v, ni) != 1 {
            continue;
        }
        let mv = lift_diag(v, n)?;
        for t in divisors(ni) {
            for u in theta_set(t, ni)? {
                let u_inv = modinv(u, t).expect("u coprime to t");
                for kappa in 0..ni / t {
                    let Some(k) = crt(kappa, ni / t, u_inv, t) else {
                        continue;
                    };
                    debug_assert_eq!(modn(u * k - 1, t), 0);
                    let b = UnimodularMatrix::new(u, (u * k - 1) / t, t, k)?;
                    elements.push(TransversalElement { v, t, u, k, matrix: mv.mul(&b) });
                }
            }
        }
    }
    let expected = gamma1_pm_index(ni);
    assert_eq!(
        elements.len() as i64,
        expected,
        "transversal for N={n} has wrong size"
    );
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            assert!(
                !same_coset(&elements[i].matrix, &elements[j].matrix, n),
                "transversal elements {i} and {j} are coset-equivalent"
            );
        }
    }
    Ok(Transversal { n, elements })
}

impl Transversal {
    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> &[TransversalElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the unique representative coset-equivalent to `m`.
    pub fn index_of_coset(&self, m: &UnimodularMatrix) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.elements.iter().enumerate() {
            if same_coset(m, &e.matrix, self.n) {
                assert!(found.is_none(), "matrix matches two transversal elements");
                found = Some(i);
            }
        }
        found
    }

    /// The Galois permutation step: index of the canonical representative of
    /// the coset of `M_v · B(t, h*u, hk)`, where `h h* ≡ 1 (mod N)`.
    ///
    /// For fixed h this map is a permutation of the transversal.
    pub fn galois_step(&self, idx: usize, h: i64) -> Result<usize> {
        let ni = self.n as i64;
        let Some(h_star) = modinv(h, ni) else {
            return Err(Error::NotCoprime(h, self.n));
        };
        let e = &self.elements[idx];
        let u2 = h_star * e.u;
        let k2 = h * e.k;
        debug_assert_eq!(modn(u2 * k2 - 1, e.t), 0);
        let b2 = UnimodularMatrix::new(u2, (u2 * k2 - 1) / e.t, e.t, k2)?;
        let mv = lift_diag(e.v, self.n)?;
        let target = mv.mul(&b2);
        Ok(self
            .index_of_coset(&target)
            .expect("transversal must contain every coset"))
    }

    /// Convenience wrapper returning the element itself.
    pub fn galois_step_elem(&self, elem: &TransversalElement, h: i64) -> Result<&TransversalElement> {
        let idx = self
            .elements
            .iter()
            .position(|e| e.matrix == elem.matrix)
            .ok_or_else(|| Error::InvalidParameter("element is not part of this transversal".into()))?;
        Ok(&self.elements[self.galois_step(idx, h)?])
    }
}
