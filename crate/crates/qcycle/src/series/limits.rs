//! Limiting probabilities as the dimension grows, with certified enclosures.
//!
//! The six closed forms:
//! - semisimple, Mat:   prod over r = 0, ±2 mod 5 of (1 - q^{-(r-1)})
//! - semisimple, GL:    same product of (1 - q^{-(r-1)})/(1 - q^{-r})
//! - regular semisimple, Mat: prod_{r>=1} (1 - q^{-r})
//! - regular, Mat:      (1 - q^{-5}) prod_{r>=3} (1 - q^{-r})
//! - regular semisimple, GL:   1 - 1/q          (exact)
//! - regular, GL:       (1 - q^{-5})/(1 + q^{-3})  (exact)
//!
//! Infinite products are evaluated as rational partial products with an
//! explicit tail enclosure: for 0 <= a_r < 1 with sum T = sum_{r>R} a_r < 1,
//! `partial * (1 - T) <= full product <= partial`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    SsMat,
    SsGl,
    RssMat,
    RegMat,
    RssGl,
    RegGl,
}

impl LimitKind {
    pub fn parse(s: &str) -> Result<LimitKind> {
        match s {
            "ss-Mat" | "ss-mat" => Ok(LimitKind::SsMat),
            "ss-GL" | "ss-gl" => Ok(LimitKind::SsGl),
            "rss-Mat" | "rss-mat" => Ok(LimitKind::RssMat),
            "reg-Mat" | "reg-mat" => Ok(LimitKind::RegMat),
            "rss-GL" | "rss-gl" => Ok(LimitKind::RssGl),
            "reg-GL" | "reg-gl" => Ok(LimitKind::RegGl),
            _ => Err(Error::domain(format!("unknown limit kind '{s}'"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LimitKind::SsMat => "ss-Mat",
            LimitKind::SsGl => "ss-GL",
            LimitKind::RssMat => "rss-Mat",
            LimitKind::RegMat => "reg-Mat",
            LimitKind::RssGl => "rss-GL",
            LimitKind::RegGl => "reg-GL",
        }
    }

    pub fn all() -> [LimitKind; 6] {
        [
            LimitKind::SsMat,
            LimitKind::SsGl,
            LimitKind::RssMat,
            LimitKind::RegMat,
            LimitKind::RssGl,
            LimitKind::RegGl,
        ]
    }
}

/// A certified rational enclosure `lo <= x <= hi`.
#[derive(Debug, Clone)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(v: BigRational) -> Interval {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    /// Enclosure of |x - p| for a point p.
    pub fn abs_distance(&self, p: &BigRational) -> Interval {
        let d_lo = if *p < self.lo {
            &self.lo - p
        } else if *p > self.hi {
            p - &self.hi
        } else {
            BigRational::zero()
        };
        let d_hi = (p - &self.lo).abs().max((p - &self.hi).abs());
        Interval { lo: d_lo, hi: d_hi }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

/// Approximate a rational for display; exact values stay rational everywhere else.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let scale = BigInt::from(1u64 << 60);
    let scaled = (r * BigRational::from(scale)).round();
    let as_f = scaled.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    as_f / (1u64 << 60) as f64
}

fn inv_pow(q: u32, e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(q).pow(e))
}

/// Does r lie in {0, ±2} mod 5?
fn in_residue_set(r: u32) -> bool {
    matches!(r % 5, 0 | 2 | 3)
}

/// `prod (1 - q^{-e(r)})` over the r in [1, R] accepted by `keep`, paired
/// with a bound on the tail sum `sum_{r > R, keep(r)} q^{-e(r)}`.
fn partial_product(
    q: u32,
    keep: impl Fn(u32) -> bool,
    exp: impl Fn(u32) -> u32,
    upto: u32,
) -> (BigRational, BigRational) {
    let mut acc = BigRational::one();
    for r in 1..=upto {
        if keep(r) && exp(r) >= 1 {
            acc *= BigRational::one() - inv_pow(q, exp(r));
        }
    }
    // the exponents grow by at least one per step, so the tail sum is at most
    // the full geometric series starting at the smallest exponent beyond R
    let next_exp = (upto + 1..=upto + 20)
        .filter(|&r| keep(r))
        .map(&exp)
        .min()
        .unwrap_or(upto + 1);
    let tail = inv_pow(q, next_exp)
        * BigRational::new(BigInt::from(q), BigInt::from(q) - BigInt::one());
    (acc, tail)
}

fn enclose(partial: BigRational, tail: BigRational) -> Interval {
    let lo = &partial * (BigRational::one() - &tail);
    Interval { lo: lo.min(partial.clone()), hi: partial }
}

/// The limiting probability, enclosed to width below `eps`.
pub fn limit_probability(kind: LimitKind, q: u32, eps: &BigRational) -> Result<Interval> {
    if q < 2 {
        return Err(Error::domain("q must be at least 2"));
    }
    if !eps.is_positive() {
        return Err(Error::domain("eps must be positive"));
    }
    match kind {
        LimitKind::RssGl => {
            return Ok(Interval::exact(BigRational::one() - inv_pow(q, 1)));
        }
        LimitKind::RegGl => {
            let v =
                (BigRational::one() - inv_pow(q, 5)) / (BigRational::one() + inv_pow(q, 3));
            return Ok(Interval::exact(v));
        }
        _ => {}
    }
    let mut upto = 8u32;
    loop {
        let interval = match kind {
            LimitKind::SsMat => {
                let (p, t) = partial_product(q, in_residue_set, |r| r - 1, upto);
                enclose(p, t)
            }
            LimitKind::SsGl => {
                // enclose numerator and denominator products separately
                let (pn, tn) = partial_product(q, in_residue_set, |r| r - 1, upto);
                let (pd, td) = partial_product(q, in_residue_set, |r| r, upto);
                let num = enclose(pn, tn);
                let den = enclose(pd, td);
                Interval { lo: &num.lo / &den.hi, hi: &num.hi / &den.lo }
            }
            LimitKind::RssMat => {
                let (p, t) = partial_product(q, |_| true, |r| r, upto);
                enclose(p, t)
            }
            LimitKind::RegMat => {
                let (p, t) = partial_product(q, |r| r >= 3, |r| r, upto);
                let head = BigRational::one() - inv_pow(q, 5);
                let e = enclose(p, t);
                Interval { lo: e.lo * &head, hi: e.hi * head }
            }
            LimitKind::RssGl | LimitKind::RegGl => unreachable!(),
        };
        if &interval.width() < eps {
            return Ok(interval);
        }
        upto *= 2;
        if upto > 1 << 20 {
            return Err(Error::budget("limit evaluation did not reach the requested eps"));
        }
    }
}
