//! Small integer helpers: factorization, pi-numbers, p-parts.

/// Prime factorization by trial division, returned as (prime, exponent)
/// pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The set of primes dividing n (empty for n = 1).
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// p-part of n: the largest power of p dividing n.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// True iff n is a power of p (1 counts as p^0).
pub fn is_p_power(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

/// True iff every prime divisor of n lies in `pi`.
pub fn is_pi_number(n: u64, pi: &[u64]) -> bool {
    prime_divisors(n).iter().all(|p| pi.contains(p))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_basics() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn pi_numbers() {
        // 1 is a pi-number for every pi, including the empty set.
        assert!(is_pi_number(1, &[]));
        assert!(is_pi_number(12, &[2, 3]));
        assert!(!is_pi_number(3, &[2]));
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(24, 2), 8);
        assert_eq!(p_part(24, 3), 3);
        assert_eq!(p_part(24, 5), 1);
        assert!(is_p_power(8, 2));
        assert!(!is_p_power(12, 2));
    }
}
