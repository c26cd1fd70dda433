//! Certified lower bounds for the mean order of a uniform random element.
//!
//! Each bound counts only the elements whose characteristic polynomial comes
//! from a primitive-order generator in the relevant extension:
//!
//! - U(n,q), n odd: the Phi(q^n+1)/n self-tilde irreducibles of degree n with
//!   roots of order q^n+1 each contribute |U|/(q^n+1) elements of that order,
//!   so the mean order is at least Phi(q^n+1)/n.
//! - U(n,q), n even: the Phi(q^n-1)/n tilde-pairs built from degree-n/2
//!   irreducibles with roots of order q^n-1 give the bound Phi(q^n-1)/n.
//! - Sp(2l,q): the Phi(q^l+1)/(2l) self-bar irreducibles of degree 2l give
//!   the bound Phi(q^l+1)/(2l).
//! - O(n,q) averaged: the same degree-2*floor(n/2) construction (with a z±1
//!   factor absorbing one dimension when n is odd) yields at least
//!   Phi(q^{floor(n/2)}+1)/(2n); for odd n the true ingredient has n-1 in the
//!   denominator, so this is a slightly conservative valid bound.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::num_util::euler_phi;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AvgOrderFamily {
    U,
    Sp,
    OAvg,
}

impl AvgOrderFamily {
    pub fn parse(s: &str) -> Result<AvgOrderFamily> {
        match s {
            "U" | "u" => Ok(AvgOrderFamily::U),
            "Sp" | "sp" => Ok(AvgOrderFamily::Sp),
            "O" | "o" | "O-avg" | "Oavg" => Ok(AvgOrderFamily::OAvg),
            _ => Err(Error::domain(format!("unknown average-order family '{s}'"))),
        }
    }
}

fn checked_pow(q: u32, n: u32) -> Result<u128> {
    if n as f64 * (q as f64).log2() > 48.0 {
        return Err(Error::budget(
            "q^n too large to factor for the totient within the trial-division budget",
        ));
    }
    Ok((q as u128).pow(n))
}

/// The certified lower bound for the mean element order.
pub fn avg_order_lower_bound(fam: AvgOrderFamily, n: u32, q: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::domain("dimension must be positive"));
    }
    match fam {
        AvgOrderFamily::U => {
            if n % 2 == 1 {
                let target = checked_pow(q, n)? + 1;
                Ok(BigRational::new(
                    BigInt::from(euler_phi(target)),
                    BigInt::from(n),
                ))
            } else {
                let target = checked_pow(q, n)? - 1;
                Ok(BigRational::new(
                    BigInt::from(euler_phi(target)),
                    BigInt::from(n),
                ))
            }
        }
        AvgOrderFamily::Sp => {
            if n % 2 != 0 {
                return Err(Error::domain("symplectic dimension must be even"));
            }
            if q % 2 == 0 {
                return Err(Error::domain("Sp needs odd characteristic"));
            }
            let target = checked_pow(q, n / 2)? + 1;
            Ok(BigRational::new(BigInt::from(euler_phi(target)), BigInt::from(n)))
        }
        AvgOrderFamily::OAvg => {
            if q % 2 == 0 {
                return Err(Error::domain("O needs odd characteristic"));
            }
            if n < 2 {
                // O(1,q) = {±1}: mean order (1+2)/2, bounded below by 1
                return Ok(BigRational::from(BigInt::from(1)));
            }
            let target = checked_pow(q, n / 2)? + 1;
            Ok(BigRational::new(
                BigInt::from(euler_phi(target)),
                BigInt::from(2 * n),
            ))
        }
    }
}
