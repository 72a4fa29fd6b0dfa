//! Sparse bivariate polynomials over Z: the container for the plane
//! model P_N(x, y), where x stands for j and y for Delta(N.)/Delta.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cuspdiv::degree_f;
use crate::ntarith::dedekind_psi;
use crate::qseries::QSeries;

/// One monomial c * x^a * y^b with a nonzero integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub x_exp: u32,
    pub y_exp: u32,
    pub coeff: BigInt,
}

/// How the sign/scale of the polynomial was fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Content 1 and constant term +1 (every observed model).
    ConstantOne,
    /// Constant term vanished; content 1 and the leading coefficient in
    /// (y, x)-graded order made positive instead. Flagged as unusual.
    LeadingYPositive,
}

/// A nonzero primitive bivariate polynomial over Z attached to a level N.
///
/// Terms are stored sorted by (y_exp, x_exp) descending. The constructor
/// divides out the content and fixes the sign: constant term +1 when a
/// constant term is present, positive leading y-term otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    level: u32,
    terms: Vec<Term>,
    normalization: Normalization,
}

impl BivariatePoly {
    /// Build from raw (x_exp, y_exp, coeff) triples. Zero coefficients
    /// are dropped; duplicate exponent pairs are rejected; the result is
    /// normalized as described on the type.
    pub fn new(level: u32, raw: Vec<(u32, u32, BigInt)>) -> Self {
        let mut terms: Vec<Term> = raw
            .into_iter()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(x_exp, y_exp, coeff)| Term {
                x_exp,
                y_exp,
                coeff,
            })
            .collect();
        assert!(!terms.is_empty(), "polynomial must be nonzero");
        terms.sort_by(|s, t| (t.y_exp, t.x_exp).cmp(&(s.y_exp, s.x_exp)));
        for w in terms.windows(2) {
            assert!(
                (w[0].y_exp, w[0].x_exp) != (w[1].y_exp, w[1].x_exp),
                "duplicate monomial x^{} y^{}",
                w[0].x_exp,
                w[0].y_exp
            );
        }

        // primitive part
        let mut content = BigInt::zero();
        for t in &terms {
            content = content.gcd(&t.coeff);
        }
        if !content.is_one() {
            for t in &mut terms {
                t.coeff = &t.coeff / &content;
            }
        }

        // sign convention
        let constant_sign = terms
            .iter()
            .find(|t| t.x_exp == 0 && t.y_exp == 0)
            .map(|t| t.coeff.sign());
        let (flip, normalization) = match constant_sign {
            Some(s) => (s == num_bigint::Sign::Minus, Normalization::ConstantOne),
            None => (
                terms[0].coeff.is_negative(),
                Normalization::LeadingYPositive,
            ),
        };
        if flip {
            for t in &mut terms {
                t.coeff = -&t.coeff;
            }
        }

        BivariatePoly {
            level,
            terms,
            normalization,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Terms sorted by (y_exp, x_exp) descending.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn coefficient(&self, x_exp: u32, y_exp: u32) -> BigInt {
        self.terms
            .iter()
            .find(|t| t.x_exp == x_exp && t.y_exp == y_exp)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.x_exp).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.y_exp).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.x_exp + t.y_exp).max().unwrap_or(0)
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .iter()
            .map(|t| t.coeff.abs())
            .max()
            .expect("nonzero polynomial")
    }

    /// Substitute q-series for x and y, reusing a precomputed ladder of
    /// x-powers: x_powers[a] must be x^a. Horner evaluation in y keeps
    /// the series multiplications to y_degree of them.
    pub fn substitute_with_ladder(&self, x_powers: &[QSeries], y: &QSeries) -> QSeries {
        assert!(x_powers.len() > self.x_degree() as usize);
        let dy = self.y_degree();
        // row polynomial A_b(x) = sum_a c_{a,b} x^a as a series
        let row = |b: u32| -> Option<QSeries> {
            let mut acc: Option<QSeries> = None;
            for t in self.terms.iter().filter(|t| t.y_exp == b) {
                let scaled = x_powers[t.x_exp as usize].scaled_shift(&t.coeff, 0);
                acc = Some(match acc {
                    None => scaled,
                    Some(s) => s.add(&scaled),
                });
            }
            acc
        };
        let mut acc = row(dy).expect("leading y-row is nonempty");
        for b in (0..dy).rev() {
            acc = acc.mul(y);
            if let Some(r) = row(b) {
                acc = acc.add(&r);
            }
        }
        acc
    }

    /// Substitute q-series for x and y (builds the x-power ladder itself).
    pub fn substitute(&self, x: &QSeries, y: &QSeries) -> QSeries {
        let ladder = power_ladder(x, self.x_degree());
        self.substitute_with_ladder(&ladder, y)
    }

    /// Model sanity report: the constraints the plane model of level N is
    /// expected to satisfy. Returns human-readable findings; empty means
    /// all constraints hold.
    pub fn validate_model(&self) -> Vec<String> {
        let n = self.level as u64;
        let mut findings = Vec::new();
        let psi = dedekind_psi(n);
        if self.y_degree() as u64 != psi {
            findings.push(format!(
                "y-degree {} != psi(N) = {}",
                self.y_degree(),
                psi
            ));
        }
        if self.total_degree() as u64 != psi {
            findings.push(format!(
                "total degree {} != psi(N) = {}",
                self.total_degree(),
                psi
            ));
        }
        let dx = degree_f(n);
        if self.x_degree() as u64 != dx {
            findings.push(format!(
                "x-degree {} != deg div_inf(f) = {}",
                self.x_degree(),
                dx
            ));
        }
        if !self.coefficient(0, 0).is_one() {
            findings.push(format!(
                "constant term is {}, not +1",
                self.coefficient(0, 0)
            ));
        }
        for t in &self.terms {
            if t.y_exp == 0 && t.x_exp > 0 {
                findings.push(format!(
                    "unexpected pure-x term {} x^{}",
                    t.coeff, t.x_exp
                ));
            }
        }
        findings
    }
}

/// x^0 .. x^max_pow as a ladder of series products.
pub fn power_ladder(x: &QSeries, max_pow: u32) -> Vec<QSeries> {
    let mut ladder = Vec::with_capacity(max_pow as usize + 1);
    ladder.push(QSeries::one());
    for a in 1..=max_pow as usize {
        let next = ladder[a - 1].mul(x);
        ladder.push(next);
    }
    ladder
}

/// Natural log of |x| for a nonzero big integer, robust for values far
/// beyond f64 range.
pub fn ln_abs(x: &BigInt) -> f64 {
    assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().expect("finite").ln();
    }
    // ln(x) = ln(top 64 bits) + (bits - 64) * ln 2
    let shifted: BigInt = x.abs() >> (bits - 64);
    shifted.to_f64().expect("finite").ln() + (bits - 64) as f64 * std::f64::consts::LN_2
}

impl fmt::Display for BivariatePoly {
    /// Graded order: total degree descending, then x-exponent descending;
    /// coefficients of magnitude 1 are suppressed next to variables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<&Term> = self.terms.iter().collect();
        terms.sort_by(|s, t| {
            (t.x_exp + t.y_exp, t.x_exp).cmp(&(s.x_exp + s.y_exp, s.x_exp))
        });
        for (i, t) in terms.iter().enumerate() {
            let mag = t.coeff.magnitude();
            if i == 0 {
                if t.coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if t.coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed_coeff = false;
            if !mag.is_one() || (t.x_exp == 0 && t.y_exp == 0) {
                write!(f, "{}", mag)?;
                printed_coeff = true;
            }
            for (sym, e) in [("x", t.x_exp), ("y", t.y_exp)] {
                if e == 0 {
                    continue;
                }
                if printed_coeff {
                    write!(f, "*")?;
                }
                printed_coeff = true;
                if e == 1 {
                    write!(f, "{}", sym)?;
                } else {
                    write!(f, "{}^{}", sym, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> BivariatePoly {
        BivariatePoly::new(
            2,
            vec![
                (0, 3, BigInt::from(16777216i64)),
                (1, 1, BigInt::from(-1)),
                (0, 2, BigInt::from(196608)),
                (0, 1, BigInt::from(768)),
                (0, 0, BigInt::from(1)),
            ],
        )
    }

    #[test]
    fn normalization_makes_constant_positive_and_primitive() {
        let p = BivariatePoly::new(
            2,
            vec![
                (0, 1, BigInt::from(-6)),
                (0, 0, BigInt::from(-3)),
            ],
        );
        assert_eq!(p.coefficient(0, 0), BigInt::from(1));
        assert_eq!(p.coefficient(0, 1), BigInt::from(2));
        assert_eq!(p.normalization(), Normalization::ConstantOne);

        let q = BivariatePoly::new(
            2,
            vec![(0, 2, BigInt::from(-4)), (1, 1, BigInt::from(2))],
        );
        assert_eq!(q.coefficient(0, 2), BigInt::from(2));
        assert_eq!(q.normalization(), Normalization::LeadingYPositive);
    }

    #[test]
    fn degrees_and_term_order() {
        let p = p2();
        assert_eq!(p.x_degree(), 1);
        assert_eq!(p.y_degree(), 3);
        assert_eq!(p.total_degree(), 3);
        let order: Vec<(u32, u32)> = p.terms().iter().map(|t| (t.y_exp, t.x_exp)).collect();
        assert_eq!(order, vec![(3, 0), (2, 0), (1, 1), (1, 0), (0, 0)]);
    }

    #[test]
    fn display_matches_graded_convention() {
        assert_eq!(
            p2().to_string(),
            "16777216*y^3 - x*y + 196608*y^2 + 768*y + 1"
        );
    }

    #[test]
    fn validate_model_accepts_p2() {
        assert!(p2().validate_model().is_empty());
    }

    #[test]
    fn ln_abs_handles_huge_values() {
        let small = BigInt::from(16777216u64);
        assert!((ln_abs(&small) - 16.635532).abs() < 1e-5);
        let huge = BigInt::from(3u32).pow(5000);
        let expected = 5000.0 * 3.0f64.ln();
        assert!((ln_abs(&huge) - expected).abs() < 1e-6 * expected);
    }
}
