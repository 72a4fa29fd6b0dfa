//! Truncated Laurent series in q with exact integer coefficients.
//!
//! A [`QSeries`] stores the coefficients of q^e for e in the window
//! [valuation, validity]. `validity` is the largest exponent whose
//! coefficient is guaranteed exact; every arithmetic operation propagates
//! it pessimistically, so a coefficient read inside the window is always
//! correct and a read above it is a hard error, never a silent zero.
//!
//! Coefficients live in Z, not Q: every series this crate manipulates
//! (Delta, E_4, their powers, j, Delta(N.)/Delta and monomials in them)
//! has integer coefficients, and inversion is restricted to series whose
//! leading coefficient is +1 or -1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Stand-in for "exact at every order" (the constant 1, for example).
/// Kept well below i64::MAX so validity arithmetic cannot overflow.
pub const UNBOUNDED_VALIDITY: i64 = i64::MAX / 8;

/// Series length above which multiplication switches from the schoolbook
/// triangle to a Karatsuba full product. Tuning knob, not a contract.
const KARATSUBA_THRESHOLD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// Inversion over Z requires the leading coefficient to be a unit.
    #[error("cannot invert: leading coefficient is not +1 or -1")]
    NonUnitLeading,
    /// A coefficient beyond the exactness bound was requested.
    #[error("coefficient of q^{requested} requested, series exact only through q^{validity}")]
    PrecisionExceeded { requested: i64, validity: i64 },
}

/// Truncated Laurent series over Z with tracked valuation and validity.
///
/// Invariants:
/// - `coeffs` covers exponents `valuation ..= validity` densely;
/// - if `coeffs` is nonempty its first entry is nonzero;
/// - a series that is zero on its whole window stores no coefficients and
///   `valuation == validity + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    valuation: i64,
    validity: i64,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// Series from dense coefficients for exponents `valuation ..` with
    /// every supplied coefficient exact; validity = valuation + len - 1.
    pub fn from_coeffs(valuation: i64, coeffs: Vec<BigInt>) -> Self {
        let validity = valuation + coeffs.len() as i64 - 1;
        Self::normalized(valuation, coeffs, validity)
    }

    /// Convenience constructor from i64 coefficients.
    pub fn from_i64(valuation: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(valuation, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero series, known to vanish through exponent `validity`.
    pub fn zero(validity: i64) -> Self {
        QSeries {
            valuation: validity + 1,
            validity,
            coeffs: Vec::new(),
        }
    }

    /// The constant 1 with unbounded validity.
    pub fn one() -> Self {
        QSeries {
            valuation: 0,
            validity: UNBOUNDED_VALIDITY,
            coeffs: vec![BigInt::one()],
        }
    }

    /// c * q^e with unbounded validity; zero c gives the zero series.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero(UNBOUNDED_VALIDITY);
        }
        QSeries {
            valuation: e,
            validity: UNBOUNDED_VALIDITY,
            coeffs: vec![c],
        }
    }

    fn normalized(valuation: i64, mut coeffs: Vec<BigInt>, validity: i64) -> Self {
        debug_assert_eq!(coeffs.len() as i64, validity - valuation + 1);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(validity),
            Some(k) => {
                coeffs.drain(..k);
                QSeries {
                    valuation: valuation + k as i64,
                    validity,
                    coeffs,
                }
            }
        }
    }

    /// Lowest exponent with a (nonzero) stored coefficient; None for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.valuation)
        }
    }

    /// Largest exponent whose coefficient is guaranteed exact.
    pub fn validity(&self) -> i64 {
        self.validity
    }

    /// True if the series vanishes identically on its valid window.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact coefficient of q^e. Zero below the valuation, error above
    /// the validity bound.
    pub fn coefficient(&self, e: i64) -> Result<BigInt, SeriesError> {
        if e > self.validity {
            return Err(SeriesError::PrecisionExceeded {
                requested: e,
                validity: self.validity,
            });
        }
        if e < self.valuation {
            return Ok(BigInt::zero());
        }
        Ok(self.coeffs[(e - self.valuation) as usize].clone())
    }

    /// Coefficient of q^e, panicking when e exceeds the validity bound.
    pub fn coeff(&self, e: i64) -> BigInt {
        self.coefficient(e)
            .unwrap_or_else(|err| panic!("{}", err))
    }

    /// Leading (lowest-exponent) coefficient, if the series is nonzero.
    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Borrow of the dense coefficient window starting at the valuation.
    pub fn coeff_window(&self) -> (&[BigInt], i64) {
        (&self.coeffs, self.valuation)
    }

    /// Same series with the validity bound lowered to `validity`
    /// (coefficients above it are dropped). Raising is not possible.
    pub fn truncated(&self, validity: i64) -> Self {
        if validity >= self.validity {
            return self.clone();
        }
        if self.coeffs.is_empty() || validity < self.valuation {
            return Self::zero(validity);
        }
        let keep = (validity - self.valuation + 1) as usize;
        Self::normalized(self.valuation, self.coeffs[..keep].to_vec(), validity)
    }

    /// Coefficientwise sum. Validity is the min of the operands'.
    pub fn add(&self, other: &QSeries) -> QSeries {
        let validity = self.validity.min(other.validity);
        let start = self.valuation.min(other.valuation);
        if start > validity {
            return Self::zero(validity);
        }
        let len = (validity - start + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (series, out) in [(self, &mut coeffs), (other, &mut coeffs)] {
            let lo = series.valuation.max(start);
            let hi = series.validity.min(validity);
            for e in lo..=hi {
                let src = (e - series.valuation) as usize;
                if src < series.coeffs.len() {
                    out[(e - start) as usize] += &series.coeffs[src];
                }
            }
        }
        Self::normalized(start, coeffs, validity)
    }

    /// Negation (validity unchanged).
    pub fn neg(&self) -> QSeries {
        QSeries {
            valuation: self.valuation,
            validity: self.validity,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Difference, self - other.
    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    /// Multiply by the monomial c * q^k.
    pub fn scaled_shift(&self, c: &BigInt, k: i64) -> QSeries {
        if c.is_zero() {
            return Self::zero(self.validity + k);
        }
        QSeries {
            valuation: self.valuation + k,
            validity: self.validity + k,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product with pessimistic validity propagation:
    /// the coefficient of q^e in a*b is exact iff
    /// e <= min(a.validity + b.valuation, b.validity + a.valuation).
    pub fn mul(&self, other: &QSeries) -> QSeries {
        // raw valuation is validity+1 for a zero series, which makes the
        // min-rule below correct in the zero cases as well
        let validity = (self.validity.saturating_add(other.valuation))
            .min(other.validity.saturating_add(self.valuation));
        if self.is_zero() || other.is_zero() {
            return Self::zero(validity);
        }
        let valuation = self.valuation + other.valuation;
        let out_len = (validity - valuation + 1) as usize;
        debug_assert_eq!(out_len, self.coeffs.len().min(other.coeffs.len()));
        let coeffs = mul_coeffs(&self.coeffs, &other.coeffs, out_len);
        Self::normalized(valuation, coeffs, validity)
    }

    /// k-th power by binary exponentiation; pow(a, 0) is the constant 1
    /// with unbounded validity.
    pub fn pow(&self, k: u32) -> QSeries {
        if k == 0 {
            return Self::one();
        }
        let mut base = self.clone();
        let mut acc: Option<QSeries> = None;
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.expect("k >= 1")
    }

    /// Multiplicative inverse. Requires leading coefficient +1 or -1;
    /// the result has valuation -v and validity V - 2v where (v, V) are
    /// the valuation and validity of self.
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        let lead = self.coeffs.first().ok_or(SeriesError::NonUnitLeading)?;
        if !lead.is_one() && !(-lead).is_one() {
            return Err(SeriesError::NonUnitLeading);
        }
        let v = self.valuation;
        let validity = self.validity - 2 * v;
        let n = self.coeffs.len();
        // u = self / q^v has constant term +-1; solve u * b = 1 triangularly
        let mut inv = Vec::with_capacity(n);
        inv.push(lead.clone()); // (+-1)^-1 = +-1
        for k in 1..n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv.push(if lead.is_one() { -acc } else { acc });
        }
        Ok(Self::normalized(-v, inv, validity))
    }

    /// Substitute q -> q^n: coefficient of q^(n*e) is the coefficient of
    /// q^e in self. Validity becomes n*validity + (n-1), since the gaps
    /// just above the last known multiple of n are exact zeros.
    pub fn substitute_q_pow(&self, n: u32) -> QSeries {
        assert!(n >= 1, "substitute_q_pow: n must be >= 1");
        let n64 = n as i64;
        let validity = n64 * self.validity + (n64 - 1);
        if self.coeffs.is_empty() {
            return Self::zero(validity);
        }
        let valuation = n64 * self.valuation;
        let len = (validity - valuation + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n as usize] = c.clone();
        }
        Self::normalized(valuation, coeffs, validity)
    }

    /// True if the series equals 1 at every exponent of its valid window.
    pub fn is_one_on_window(&self) -> bool {
        self.valuation == 0
            && self.coeffs.first().map_or(false, |c| c.is_one())
            && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

/// Truncated coefficient product: the first `out_len` coefficients of the
/// full convolution of `a` and `b`. Requires out_len <= min(len a, len b).
fn mul_coeffs(a: &[BigInt], b: &[BigInt], out_len: usize) -> Vec<BigInt> {
    debug_assert!(out_len <= a.len().min(b.len()));
    if a.len().min(b.len()) >= KARATSUBA_THRESHOLD {
        let mut full = karatsuba_full(a, b);
        full.truncate(out_len);
        return full;
    }
    let mut out = vec![BigInt::zero(); out_len];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for i in 0..=k {
            acc += &a[i] * &b[k - i];
        }
        *slot = acc;
    }
    out
}

/// Full convolution of two coefficient slices (length la + lb - 1).
fn karatsuba_full(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        // iterate the shorter operand outermost
        let (s, l) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        for (i, si) in s.iter().enumerate() {
            if si.is_zero() {
                continue;
            }
            for (j, lj) in l.iter().enumerate() {
                out[i + j] += si * lj;
            }
        }
        return out;
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = karatsuba_full(a0, b0);
    let z2 = karatsuba_full(a1, b1);
    let asum = slice_add(a0, a1);
    let bsum = slice_add(b0, b1);
    let mut z1 = karatsuba_full(&asum, &bsum);
    for (i, v) in z0.iter().enumerate() {
        z1[i] -= v;
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] -= v;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, v) in z0.into_iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in z1.into_iter().enumerate() {
        out[i + m] += v;
    }
    for (i, v) in z2.into_iter().enumerate() {
        out[i + 2 * m] += v;
    }
    out
}

fn slice_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (s, l) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = l.to_vec();
    for (i, v) in s.iter().enumerate() {
        out[i] += v;
    }
    out
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}..{}]{{{}}}", self.valuation, self.validity, self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O(q^{})", self.validity + 1);
        }
        let mut first = true;
        let shown = self.coeffs.iter().take(12);
        for (i, c) in shown.enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + i as i64;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mag = c.magnitude();
            match e {
                0 => write!(f, "{}", mag)?,
                1 if mag.is_one() => write!(f, "q")?,
                1 => write!(f, "{}*q", mag)?,
                _ if mag.is_one() => write!(f, "q^{}", e)?,
                _ => write!(f, "{}*q^{}", mag, e)?,
            }
        }
        if self.coeffs.len() > 12 || self.validity < UNBOUNDED_VALIDITY {
            write!(f, " + O(q^{})", (self.valuation + 12.min(self.coeffs.len() as i64)).min(self.validity + 1))?;
        }
        Ok(())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}
