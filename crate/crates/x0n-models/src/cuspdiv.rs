//! Cusps of Gamma_0(N), the divisors of Delta and Delta(N.) supported on
//! them, pole divisors of f = Delta(N.)/Delta, and the degree bookkeeping
//! that certifies the plane model is birational to X_0(N).
//!
//! Cusps are handled as denominator classes: the cusps c/d with a fixed
//! denominator d | N all carry the same order of Delta and Delta(N.),
//! and there are phi(gcd(d, N/d)) of them, so no numerators are ever
//! materialized. Orders are kept as exact rationals and converted to
//! integers with a loud assertion where integrality is required.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ntarith::{dedekind_psi, divisors, euler_phi, gcd};

/// One denominator class of cusps c/d of Gamma_0(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspClass {
    /// Cusp denominator, a positive divisor of N.
    pub denominator: u64,
    /// Number of inequivalent cusps with this denominator,
    /// phi(gcd(d, N/d)).
    pub multiplicity: u64,
    /// Order of vanishing of Delta at each such cusp:
    /// (N/d) / gcd(d, N/d).
    pub ord_delta: BigRational,
    /// Order of vanishing of Delta(N.) at each such cusp:
    /// d / gcd(d, N/d).
    pub ord_delta_n: BigRational,
}

impl CuspClass {
    /// ord_delta as an integer; panics if it is not integral.
    pub fn ord_delta_int(&self) -> u64 {
        rational_to_u64(&self.ord_delta, "ord_delta")
    }

    /// ord_delta_n as an integer; panics if it is not integral.
    pub fn ord_delta_n_int(&self) -> u64 {
        rational_to_u64(&self.ord_delta_n, "ord_delta_n")
    }
}

fn rational_to_u64(r: &BigRational, what: &str) -> u64 {
    assert!(
        r.is_integer() && !r.is_negative(),
        "{} = {} is not a non-negative integer",
        what,
        r
    );
    r.to_integer().to_u64().expect("order fits in u64")
}

/// Degrees of the pole divisors of f_1 = j and
/// f_2 = j^(N-2) + (Delta(N.)/Delta)^(N-1), with the coprimality verdict
/// that certifies birationality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub level: u64,
    /// d(f_1) = psi(N).
    pub d_f1: u64,
    /// d(f_2) = (N-2) psi(N) + 1.
    pub d_f2: u64,
    pub gcd_value: u64,
    /// True iff gcd(d(f_1), d(f_2)) = 1.
    pub birational: bool,
}

/// The cusp classes of Gamma_0(N), one per divisor d of N, with the
/// orders of Delta and Delta(N.):
///
/// ```text
/// div(Delta)     = sum_{d | N} (N/d) / gcd(d, N/d) * [c/d]
/// div(Delta(N.)) = sum_{d | N}   d   / gcd(d, N/d) * [c/d]
/// ```
///
/// Both divisors have total degree psi(N), the common degree of divisors
/// of weight-12 forms on Gamma_0(N).
pub fn cusp_classes(n: u64) -> Vec<CuspClass> {
    assert!(n >= 2, "cusp_classes: N must be >= 2");
    divisors(n)
        .into_iter()
        .map(|d| {
            let g = gcd(d, n / d);
            CuspClass {
                denominator: d,
                multiplicity: euler_phi(g),
                ord_delta: BigRational::new(BigInt::from(n / d), BigInt::from(g)),
                ord_delta_n: BigRational::new(BigInt::from(d), BigInt::from(g)),
            }
        })
        .collect()
}

/// Pole divisor of f = Delta(N.)/Delta. The poles sit at the cusps c/d
/// with d < sqrt(N), with order (N/d - d) / gcd(d, N/d); every class
/// with d^2 >= N contributes nothing.
pub fn div_inf_f(n: u64) -> Vec<(CuspClass, u64)> {
    assert!(n >= 2, "div_inf_f: N must be >= 2");
    cusp_classes(n)
        .into_iter()
        .filter(|class| class.denominator * class.denominator < n)
        .map(|class| {
            let d = class.denominator;
            let g = gcd(d, n / d);
            let num = n / d - d; // positive since d^2 < n
            assert_eq!(num % g, 0, "pole order must be integral");
            let order = num / g;
            (class, order)
        })
        .collect()
}

/// deg div_inf(f), the degree of the subfield C(f) inside C(X_0(N)).
/// This is the x-degree bound of the plane model.
pub fn degree_f(n: u64) -> u64 {
    div_inf_f(n)
        .iter()
        .map(|(class, order)| class.multiplicity * order)
        .sum()
}

/// d(f_1) for f_1 = j: the cusp sum
/// sum_{d | N} (N/d) phi(gcd(d, N/d)) / gcd(d, N/d), which must equal
/// psi(N). Panics on disagreement (implementation bug, not data error).
pub fn degree_f1(n: u64) -> u64 {
    assert!(n >= 2, "degree_f1: N must be >= 2");
    let sum: u64 = divisors(n)
        .into_iter()
        .map(|d| {
            let g = gcd(d, n / d);
            // g divides N/d, so this is exact
            (n / d) / g * euler_phi(g)
        })
        .sum();
    let psi = dedekind_psi(n);
    assert_eq!(
        sum, psi,
        "internal inconsistency: cusp sum {} != psi({}) = {}",
        sum, n, psi
    );
    sum
}

/// d(f_2) for f_2 = j^(N-2) + (Delta(N.)/Delta)^(N-1), evaluated both as
/// the per-cusp max sum
///
/// ```text
/// sum_{d | N} phi(g)/g * max( (N/d)(N-2), (N/d - d)(N-1) ),  g = gcd(d, N/d)
/// ```
///
/// and as the closed form (N-2) psi(N) + 1. Panics if the two disagree.
pub fn degree_f2(n: u64) -> u64 {
    assert!(n >= 2, "degree_f2: N must be >= 2");
    let n_i = n as i64;
    let max_sum: u64 = divisors(n)
        .into_iter()
        .map(|d| {
            let g = gcd(d, n / d) as i64;
            let d_i = d as i64;
            let pole_j = (n_i / d_i) * (n_i - 2);
            let pole_f = (n_i / d_i - d_i) * (n_i - 1); // negative for d > sqrt(N)
            let m = pole_j.max(pole_f);
            debug_assert!(m >= 0);
            assert_eq!(m % g, 0, "max term must be divisible by gcd");
            euler_phi(gcd(d, n / d)) * (m / g) as u64
        })
        .sum();
    let closed = (n - 2) * dedekind_psi(n) + 1;
    assert_eq!(
        max_sum, closed,
        "internal inconsistency: max-sum {} != (N-2)psi+1 = {} at N={}",
        max_sum, closed, n
    );
    closed
}

/// Assemble d(f_1), d(f_2) and their gcd. Since f_1 and f_2 both lie in
/// C(j, Delta(N.)/Delta), gcd 1 proves that field is all of C(X_0(N)),
/// i.e. the plane model map is birational.
pub fn birational_certificate(n: u64) -> DegreeReport {
    let d_f1 = degree_f1(n);
    let d_f2 = degree_f2(n);
    let g = gcd(d_f1, d_f2);
    DegreeReport {
        level: n,
        d_f1,
        d_f2,
        gcd_value: g,
        birational: g == 1,
    }
}
