//! Integer helpers: divisor counts, factorization, squarefree tests.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Distinct primes in increasing order with their exponents.
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, k)| p.pow(k)).product()
    }

    /// `Some((p, k))` when the factored number is `p^k` with `k ≥ 1`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match self.pairs.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }
}

/// Trial division up to √n.
pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut pairs = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            pairs.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Factorization { pairs }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).pairs == [(n, 1)]
}

/// Number of positive divisors.
pub fn tau(n: u64) -> u64 {
    factorize(n).pairs.iter().map(|&(_, k)| k as u64 + 1).product()
}

/// Sum of positive divisors.
pub fn sigma(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).sum()
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).pairs.iter().all(|&(_, k)| k == 1)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(tau(1), 1);
        assert_eq!(tau(12), 6);
        assert_eq!(tau(60), 12);
        assert_eq!(sigma(6), 12);
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert_eq!(factorize(30).pairs, vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(factorize(1).pairs, vec![]);
        assert_eq!(factorize(243).prime_power(), Some((3, 5)));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn tau_matches_divisor_enumeration() {
        for n in 1..2000u64 {
            assert_eq!(tau(n), divisors(n).len() as u64, "n = {n}");
            assert_eq!(factorize(n).value(), n);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(2, 15), Some(8));
        assert_eq!(mod_inverse(3, 15), None);
        assert_eq!(pow_mod(2, 4, 15), 1);
        for m in 2..50 {
            for a in 1..m {
                if let Some(b) = mod_inverse(a, m) {
                    assert_eq!(a * b % m, 1);
                }
            }
        }
    }
}
