//! Elementary multiplicative number theory: factorization, divisors,
//! sigma_3, Euler phi and the Dedekind psi function.
//!
//! All levels N handled by this crate are small (a few thousand at most),
//! so trial division is enough everywhere. Values such as sigma_3(n) stay
//! far below 2^63 for every n in range, so the API works in u64; callers
//! that need big integers convert at the boundary.

/// Prime factorization of a positive integer as (prime, exponent) pairs
/// with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored pairs (p, e), primes strictly increasing, exponents >= 1.
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Reconstruct the integer n = prod p^e.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }

    /// Distinct prime divisors.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Factor n >= 1 by trial division. factor(1) has no factors.
pub fn factor(n: u64) -> Factorization {
    assert!(n >= 1, "factor: n must be >= 1, got {}", n);
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Factorization { factors }
}

/// All positive divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be >= 1, got {}", n);
    let mut divs = vec![1u64];
    for &(p, e) in factor(n).pairs() {
        let prev = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// gcd of two non-negative integers.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// sigma_3(n) = sum of d^3 over the divisors d of n.
pub fn sigma3(n: u64) -> u64 {
    divisors(n).iter().map(|&d| d * d * d).sum()
}

/// Euler totient phi(n), via the product formula over prime divisors.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    for p in factor(n).primes() {
        result = result / p * (p - 1);
    }
    result
}

/// Dedekind psi(n) = n * prod_{p | n} (1 + 1/p), the index of Gamma_0(n)
/// in SL_2(Z). Computed exactly as prod p^(e-1) * (p + 1).
pub fn dedekind_psi(n: u64) -> u64 {
    let mut result = n;
    for p in factor(n).primes() {
        result = result / p * (p + 1);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        assert!(factor(1).pairs().is_empty());
        assert_eq!(factor(12).pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factor(97).pairs(), &[(97, 1)]);
        assert_eq!(factor(360).value(), 360);
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(4), vec![1, 2, 4]);
    }

    #[test]
    fn sigma3_examples() {
        assert_eq!(sigma3(1), 1);
        // direct divisor-sum evaluation: 1 + 8, and 1 + 8 + 27 + 216
        assert_eq!(sigma3(2), 9);
        assert_eq!(sigma3(6), 252);
    }

    #[test]
    fn sigma3_matches_brute_force() {
        for n in 1..=500u64 {
            let brute: u64 = (1..=n).filter(|d| n % d == 0).map(|d| d * d * d).sum();
            assert_eq!(sigma3(n), brute, "sigma3({})", n);
        }
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn euler_phi_matches_unit_count() {
        for n in 1..=2000u64 {
            let count = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), count, "phi({})", n);
        }
    }

    #[test]
    fn dedekind_psi_examples() {
        assert_eq!(dedekind_psi(2), 3);
        assert_eq!(dedekind_psi(5), 6);
        assert_eq!(dedekind_psi(12), 24);
    }

    /// psi(n) must equal the cusp-divisor degree sum
    /// sum_{d | n} (n/d) * phi(gcd(d, n/d)) / gcd(d, n/d).
    #[test]
    fn dedekind_psi_matches_cusp_degree_sum() {
        for n in 1..=10_000u64 {
            let mut sum = 0u64;
            for d in divisors(n) {
                let g = gcd(d, n / d);
                // g divides n/d, so the division below is exact
                sum += (n / d) / g * euler_phi(g);
            }
            assert_eq!(dedekind_psi(n), sum, "psi({})", n);
        }
    }

    #[test]
    fn multiplicative_on_coprime_pairs() {
        // fixed-seed sample of coprime pairs below 1000
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut rand = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut checked = 0;
        while checked < 300 {
            let m = rand() % 999 + 1;
            let n = rand() % 999 + 1;
            if gcd(m, n) != 1 {
                continue;
            }
            checked += 1;
            assert_eq!(sigma3(m * n), sigma3(m) * sigma3(n));
            assert_eq!(euler_phi(m * n), euler_phi(m) * euler_phi(n));
            assert_eq!(dedekind_psi(m * n), dedekind_psi(m) * dedekind_psi(n));
        }
    }
}
