//! Small elementary number-theory helpers shared by the exact modules.

/// Greatest common divisor, always non-negative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, x, y) = egcd(b, a.rem_euclid(b));
    (g, y, x - (a.div_euclid(b)) * y)
}

/// Least non-negative residue of `a` modulo `m > 0`.
pub fn modn(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn modinv(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = egcd(modn(a, m), m);
    if g == 1 {
        Some(modn(x, m))
    } else {
        None
    }
}

/// Least non-negative `x` with `x ≡ r1 mod m1` and `x ≡ r2 mod m2`,
/// when the congruences are compatible.
pub fn crt(r1: i64, m1: i64, r2: i64, m2: i64) -> Option<i64> {
    let (g, p, _) = egcd(m1, m2);
    if (r2 - r1) % g != 0 {
        return None;
    }
    let lcm = m1 / g * m2;
    // x = r1 + m1 * p * (r2 - r1)/g  mod lcm
    let diff = (r2 - r1) / g;
    let x = r1 + m1 * modn(p * modn(diff, m2 / g), m2 / g);
    Some(modn(x, lcm))
}

/// Euler totient.
pub fn totient(n: i64) -> i64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: i64) -> Vec<i64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Distinct prime factors of `n > 0`, ascending.
pub fn prime_factors(n: i64) -> Vec<i64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Index of Γ₁(N){±E₂} in SL₂(Z): ½·N²·∏_{p|N}(1 − 1/p²), exact for N > 2.
pub fn gamma1_pm_index(n: i64) -> i64 {
    let mut num = n * n;
    let mut den = 2;
    for p in prime_factors(n) {
        num *= p * p - 1;
        den *= p * p;
    }
    debug_assert_eq!(num % den, 0);
    num / den
}
