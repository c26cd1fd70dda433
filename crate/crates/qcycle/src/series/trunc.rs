//! Dense truncated power series with exact rational coefficients.
//!
//! A `TruncSeries` holds coefficients of u^0 .. u^N; every operation is exact
//! and closed under truncation at N (multiplication drops degrees above N).

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    /// The zero series truncated at degree `trunc`.
    pub fn zero(trunc: usize) -> TruncSeries {
        TruncSeries { coeffs: vec![BigRational::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(trunc);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// c * u^k, truncated.
    pub fn monomial(coeff: BigRational, k: usize, trunc: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = coeff;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> TruncSeries {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    /// Truncation degree N (coefficients are exact for u^0..u^N).
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: BigRational) {
        self.coeffs[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.trunc(), other.trunc());
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.trunc(), other.trunc());
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.trunc(), other.trunc());
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Self to an arbitrary (possibly astronomically large) power; the slot
    /// counts in cycle indices can be on the order of q^N / N.
    pub fn pow_big(&self, e: &BigUint) -> TruncSeries {
        let trunc = self.trunc();
        let mut acc = TruncSeries::one(trunc);
        if e.is_zero() {
            return acc;
        }
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc);
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    pub fn pow(&self, e: u64) -> TruncSeries {
        self.pow_big(&BigUint::from(e))
    }

    /// Multiplicative inverse of a series with unit constant term.
    pub fn invert(&self) -> TruncSeries {
        assert!(!self.coeffs[0].is_zero(), "series must have a unit constant term");
        let n = self.coeffs.len();
        let c0 = self.coeffs[0].recip();
        let mut out = vec![BigRational::zero(); n];
        out[0] = c0.clone();
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -acc * &c0;
        }
        TruncSeries { coeffs: out }
    }

    /// Substitute u -> u^m (spread coefficients), same truncation.
    pub fn spread(&self, m: usize) -> TruncSeries {
        assert!(m >= 1);
        let trunc = self.trunc();
        let mut out = TruncSeries::zero(trunc);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * m > trunc {
                break;
            }
            out.coeffs[k * m] = c.clone();
        }
        out
    }

    /// Geometric series 1/(1 - c u^m), truncated.
    pub fn geometric(c: &BigRational, m: usize, trunc: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(trunc);
        let mut acc = BigRational::one();
        let mut k = 0;
        while k <= trunc {
            s.coeffs[k] = acc.clone();
            acc *= c;
            k += m;
        }
        s
    }

    /// Largest absolute coefficient difference against another series.
    pub fn max_abs_diff(&self, other: &TruncSeries) -> BigRational {
        assert_eq!(self.trunc(), other.trunc());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap()
    }

    /// Serialize as the documented JSON array of "numerator/denominator" strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    serde_json::Value::String(format!("{}/{}", c.numer(), c.denom()))
                })
                .collect(),
        )
    }
}
