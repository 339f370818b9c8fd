//! Small number-theory helpers over `u64`.

pub use num_integer::{gcd, lcm};

/// Euler's totient. `euler_phi(0)` is defined as 0.
pub fn euler_phi(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    prime_factors(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct primes dividing `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    prime_factors(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n` (the `p`-part).
pub fn p_part(mut n: u64, p: u64) -> u64 {
    debug_assert!(p >= 2);
    if n == 0 {
        return 0;
    }
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `Some(p)` when `n = p^k` with `k >= 1`. `n = 1` yields `None`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_factors(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

pub fn divides(d: u64, n: u64) -> bool {
    d != 0 && n.is_multiple_of(d)
}
