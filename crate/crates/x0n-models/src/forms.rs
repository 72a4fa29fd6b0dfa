//! q-expansions of the weight-12 forms and the modular functions built
//! from them: Delta, E_4, E_4^3, Delta(N.), j = E_4^3/Delta and
//! f = Delta(N.)/Delta.
//!
//! Precision arguments are absolute q-exponents: `delta(prec)` is exact
//! for every exponent <= prec. Each constructor picks its internal
//! sub-precisions so that the declared validity honors the q-series
//! propagation rules (division by Delta costs two orders, and so on).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ntarith::sigma3;
use crate::qseries::QSeries;

/// Which expansion a [`FormExpansion`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormLabel {
    /// Ramanujan Delta = q prod (1 - q^n)^24, weight 12.
    Delta,
    /// Eisenstein series E_4 = 1 + 240 sum sigma_3(n) q^n, weight 4.
    E4,
    /// E_4^3, weight 12.
    E4Cubed,
    /// Delta(N z), weight 12 on Gamma_0(N).
    DeltaN,
    /// j = E_4^3 / Delta, the modular function of level 1.
    J,
    /// f = Delta(N.)/Delta, a modular function on Gamma_0(N).
    F,
}

/// A labelled q-expansion. `level` is 1 for the SL_2(Z) objects and N
/// for DeltaN / F.
#[derive(Clone, Debug)]
pub struct FormExpansion {
    pub label: FormLabel,
    pub level: u32,
    pub series: QSeries,
}

impl FormExpansion {
    fn checked(label: FormLabel, level: u32, series: QSeries) -> Self {
        let one = BigInt::one();
        match label {
            FormLabel::Delta => {
                assert_eq!(series.valuation(), Some(1), "Delta has valuation 1");
                assert_eq!(series.leading_coefficient(), Some(&one));
            }
            FormLabel::E4 | FormLabel::E4Cubed => {
                assert_eq!(series.valuation(), Some(0));
                assert_eq!(series.leading_coefficient(), Some(&one));
            }
            FormLabel::DeltaN => {
                assert_eq!(series.valuation(), Some(level as i64));
                assert_eq!(series.leading_coefficient(), Some(&one));
            }
            FormLabel::J => {
                assert_eq!(series.valuation(), Some(-1), "j has valuation -1");
                assert_eq!(series.leading_coefficient(), Some(&one));
            }
            FormLabel::F => {
                assert_eq!(series.valuation(), Some(level as i64 - 1));
                assert_eq!(series.leading_coefficient(), Some(&one));
            }
        }
        FormExpansion {
            label,
            level,
            series,
        }
    }
}

/// Euler product prod_{n>=1} (1 - q^n), exact through q^prec, by the
/// pentagonal number theorem: sum_k (-1)^k q^(k(3k-1)/2) over all k in Z.
fn euler_product(prec: i64) -> QSeries {
    assert!(prec >= 0);
    let len = prec as usize + 1;
    let mut coeffs = vec![BigInt::zero(); len];
    coeffs[0] = BigInt::one();
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut hit = false;
        for g in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if g <= prec {
                coeffs[g as usize] = BigInt::from(sign);
                hit = true;
            }
        }
        if !hit {
            break;
        }
        k += 1;
    }
    QSeries::from_coeffs(0, coeffs)
}

/// Ramanujan Delta = q * (prod (1 - q^n))^24, exact through q^prec.
pub fn delta(prec: i64) -> FormExpansion {
    assert!(prec >= 1, "delta: prec must be >= 1");
    let base = euler_product(prec - 1).pow(24);
    let series = base.scaled_shift(&BigInt::one(), 1);
    debug_assert!(series.validity() >= prec);
    FormExpansion::checked(FormLabel::Delta, 1, series.truncated(prec))
}

/// E_4 = 1 + 240 sum_{n>=1} sigma_3(n) q^n, exact through q^prec.
pub fn e4(prec: i64) -> FormExpansion {
    assert!(prec >= 0, "e4: prec must be >= 0");
    let mut coeffs = Vec::with_capacity(prec as usize + 1);
    coeffs.push(BigInt::one());
    for n in 1..=prec as u64 {
        coeffs.push(BigInt::from(240u64 * sigma3(n)));
    }
    FormExpansion::checked(FormLabel::E4, 1, QSeries::from_coeffs(0, coeffs))
}

/// E_4^3, the weight-12 Eisenstein cube, exact through q^prec.
pub fn e4_cubed(prec: i64) -> FormExpansion {
    let series = e4(prec).series.pow(3);
    debug_assert!(series.validity() >= prec);
    FormExpansion::checked(FormLabel::E4Cubed, 1, series.truncated(prec))
}

/// Delta(N z): the level-raising substitution q -> q^N applied to Delta.
/// Exact through q^prec, valuation N.
pub fn delta_n(n: u32, prec: i64) -> FormExpansion {
    assert!(n >= 1);
    let inner = (prec / n as i64).max(1) + 1;
    let series = delta(inner).series.substitute_q_pow(n);
    debug_assert!(series.validity() >= prec);
    FormExpansion::checked(FormLabel::DeltaN, n, series.truncated(prec))
}

/// j = E_4^3 / Delta = q^-1 + 744 + 196884 q + ..., exact through q^prec.
pub fn j_invariant(prec: i64) -> FormExpansion {
    assert!(prec >= -1, "j_invariant: prec must be >= -1");
    // dividing by Delta (valuation 1) costs two orders of validity
    let delta_inv = delta(prec + 2)
        .series
        .invert()
        .expect("Delta has leading coefficient 1");
    let series = e4_cubed(prec + 1).series.mul(&delta_inv);
    debug_assert!(series.validity() >= prec);
    FormExpansion::checked(FormLabel::J, 1, series.truncated(prec))
}

/// f = Delta(N.)/Delta = q^(N-1) (1 + ...), exact through q^prec.
/// Integer coefficients, leading coefficient 1.
pub fn f_function(n: u32, prec: i64) -> FormExpansion {
    assert!(n >= 2, "f_function: N must be >= 2");
    let n64 = n as i64;
    assert!(prec >= n64 - 1, "f_function: prec must be >= N-1");
    // product validity = min(N*p1 + N - 2, p2 + N - 2) per the mul rule
    let p1 = (prec - n64 + 2 + n64 - 1) / n64; // ceil((prec - N + 2)/N)
    let p2 = prec - n64 + 2;
    let numerator = delta(p1.max(1)).series.substitute_q_pow(n);
    let delta_inv = delta(p2.max(1))
        .series
        .invert()
        .expect("Delta has leading coefficient 1");
    let series = numerator.mul(&delta_inv);
    debug_assert!(series.validity() >= prec, "f validity {} < {}", series.validity(), prec);
    FormExpansion::checked(FormLabel::F, n, series.truncated(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    /// Independent Ramanujan tau oracle (Niebur's identity):
    /// tau(n) = n^4 sigma(n) - 24 sum_{i<n} i^2 (35 i^2 - 52 i n + 18 n^2)
    ///          sigma(i) sigma(n-i), with sigma the divisor sum.
    fn tau_oracle(n: i64) -> i128 {
        let sigma = |m: i64| -> i128 {
            (1..=m).filter(|d| m % d == 0).map(|d| d as i128).sum()
        };
        let n128 = n as i128;
        let mut acc: i128 = 0;
        for i in 1..n {
            let i128v = i as i128;
            acc += i128v * i128v
                * (35 * i128v * i128v - 52 * i128v * n128 + 18 * n128 * n128)
                * sigma(i)
                * sigma(n - i);
        }
        n128 * n128 * n128 * n128 * sigma(n) - 24 * acc
    }

    #[test]
    fn delta_leading_terms() {
        let d = delta(10);
        assert_eq!(d.series.coeff(1), BigInt::one());
        assert_eq!(d.series.coeff(2), BigInt::from(-24));
        assert_eq!(d.series.coeff(3), BigInt::from(252));
    }

    #[test]
    fn delta_matches_tau_oracle() {
        let d = delta(40);
        for n in 1..=40i64 {
            assert_eq!(
                d.series.coeff(n),
                BigInt::from(tau_oracle(n)),
                "tau({})",
                n
            );
        }
    }

    #[test]
    fn e4_leading_terms() {
        let e = e4(10);
        assert_eq!(e.series.coeff(0), BigInt::one());
        assert_eq!(e.series.coeff(1), BigInt::from(240));
        assert_eq!(e.series.coeff(2), BigInt::from(2160));
    }

    #[test]
    fn j_leading_terms() {
        let j = j_invariant(5);
        assert_eq!(j.series.valuation(), Some(-1));
        assert_eq!(j.series.coeff(-1), BigInt::one());
        assert_eq!(j.series.coeff(0), BigInt::from(744));
        assert_eq!(j.series.coeff(1), BigInt::from(196884));
    }

    /// Triangular series division oracle: solve Delta * x = E4^3 for x
    /// coefficient by coefficient, independently of QSeries::invert.
    #[test]
    fn j_matches_division_oracle() {
        let prec = 30i64;
        let d = delta(prec + 2).series;
        let e = e4_cubed(prec + 1).series;
        // x has valuation -1; x_k (coefficient of q^k) satisfies
        // sum_{i>=1} d_i x_{k+1-i} = e_k with d_1 = 1
        let mut x = Vec::new(); // x[-1], x[0], ...
        for k in -1..=prec {
            let mut acc = e.coeff(k);
            for (idx, xe) in x.iter().enumerate() {
                let exp = idx as i64 - 1; // exponent of this x entry
                let di = k + 1 - exp;
                if di >= 2 {
                    acc -= d.coeff(di) * xe;
                }
            }
            x.push(acc); // d_1 = 1
        }
        let j = j_invariant(prec).series;
        for k in -1..=prec {
            assert_eq!(j.coeff(k), x[(k + 1) as usize], "j coeff q^{}", k);
        }
    }

    #[test]
    fn f_valuation_and_leading() {
        assert_eq!(f_function(2, 10).series.valuation(), Some(1));
        assert_eq!(f_function(5, 10).series.valuation(), Some(4));
        for n in 2..=8 {
            let f = f_function(n, 20);
            assert_eq!(f.series.leading_coefficient(), Some(&BigInt::one()));
        }
    }

    /// Independent oracle for f: Delta(N.) times the triangular inverse
    /// of Delta computed directly from the Cauchy product.
    #[test]
    fn f_matches_division_oracle() {
        let prec = 25i64;
        for n in 2..=8u32 {
            let d = delta(prec + 2).series;
            // triangular inverse: d * b = 1, b valuation -1
            let len = (prec + 2) as usize;
            let mut b = vec![BigInt::zero(); len]; // b[k] = coeff of q^(k-1)
            b[0] = BigInt::one();
            for k in 1..len {
                let mut acc = BigInt::zero();
                for i in 1..=k {
                    acc += d.coeff(i as i64 + 1) * &b[k - i];
                }
                b[k] = -acc;
            }
            let dn = delta_n(n, prec).series;
            let f = f_function(n, prec - 1).series;
            for e in (n as i64 - 1)..=(prec - 1) {
                let mut acc = BigInt::zero();
                for (k, bk) in b.iter().enumerate() {
                    let be = k as i64 - 1;
                    if e - be >= n as i64 && e - be <= prec {
                        acc += dn.coeff(e - be) * bk;
                    }
                }
                assert_eq!(f.coeff(e), acc, "f_{} coeff q^{}", n, e);
            }
        }
    }

    #[test]
    fn exact_identities_within_validity() {
        let d = delta(60).series;
        let prod = d.mul(&d.invert().unwrap());
        assert!(prod.is_one_on_window());

        let j = j_invariant(40).series;
        let lhs = j.mul(&delta(60).series);
        let rhs = e4_cubed(39).series;
        for e in 0..=lhs.validity().min(rhs.validity()) {
            assert_eq!(lhs.coeff(e), rhs.coeff(e), "j*Delta = E4^3 at q^{}", e);
        }
    }

    #[test]
    fn precision_stability() {
        let pairs = [
            (delta(30).series, delta(90).series),
            (e4(30).series, e4(90).series),
            (j_invariant(30).series, j_invariant(90).series),
            (f_function(6, 30).series, f_function(6, 90).series),
        ];
        for (low, high) in pairs {
            for e in low.valuation().unwrap()..=low.validity() {
                assert_eq!(low.coeff(e), high.coeff(e));
            }
        }
    }
}
