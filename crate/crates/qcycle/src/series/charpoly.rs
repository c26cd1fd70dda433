//! Counting elements with a fixed characteristic polynomial.
//!
//! For a monic phi of full degree with the factorization compatible with the
//! family's involution pairing:
//!
//! - GL: `|GL(n,q)| prod_i q^{m_i j_i (j_i - 1)} / |GL(j_i, q^{m_i})|`
//! - U:  self-tilde factors contribute `q^{m j(j-1)}/|U(j, q^m)|`, tilde
//!   pairs `q^{2m j(j-1)}/|GL(j, q^{2m})|`
//! - Sp: `(z-1)^{2a}(z+1)^{2b}` contribute `q^{2a^2}/|Sp(2a,q)|` and
//!   `q^{2b^2}/|Sp(2b,q)|`; self-bar factors `q^{m j(j-1)/2}/|U(j, q^{m/2})|`;
//!   bar pairs `q^{m j(j-1)}/|GL(j, q^m)|`
//! - O (averaged): `(F(a) F(b)/2) * (same self-bar and pair factors)` with
//!   `F(n) = q^{n^2/2}/|Sp(n,q)|` for even n and `q^{(n-1)^2/2}/|Sp(n-1,q)|`
//!   for odd n; this is half the sum of the O^+ and O^- proportions.
//!
//! Incompatible factorizations (odd z∓1 powers for Sp, unpaired non-self-dual
//! factors) yield a count of zero rather than an error.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groups::{gl_order, sp_order, u_order};
use crate::partition::u_order_at;
use crate::poly::{bar, factor, tilde, MonicPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharpolyFamily {
    Gl,
    U,
    Sp,
    OAvg,
}

impl CharpolyFamily {
    pub fn parse(s: &str) -> Result<CharpolyFamily> {
        match s {
            "GL" | "gl" => Ok(CharpolyFamily::Gl),
            "U" | "u" => Ok(CharpolyFamily::U),
            "Sp" | "sp" => Ok(CharpolyFamily::Sp),
            "O" | "o" | "O-avg" | "Oavg" => Ok(CharpolyFamily::OAvg),
            _ => Err(Error::domain(format!("unknown charpoly family '{s}'"))),
        }
    }

    /// Field the polynomial must live over.
    pub fn field(self, q: u32) -> Result<Field> {
        let size = match self {
            CharpolyFamily::U => q as u64 * q as u64,
            _ => q as u64,
        };
        let mut p = 2;
        while size % p != 0 {
            p += 1;
        }
        let mut k = 0;
        let mut rest = size;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::domain("q must be a prime power"));
        }
        Field::new(p as u32, k, &Budget::default())
    }
}

fn big(q: u32) -> BigInt {
    BigInt::from(q)
}

/// `|GL(j, q^m)|`.
fn gl_order_at_base(q: u32, m: u32, j: u32) -> BigInt {
    crate::groups::gl_order_at(j, &big(q).pow(m))
}

/// Number of elements (exact count for GL/U/Sp; averaged proportion
/// `(P_+ + P_-)/2` for the orthogonal family) with characteristic polynomial
/// `phi`. The polynomial must be monic of full degree; for the group families
/// it must have nonzero constant term.
pub fn charpoly_count(
    fam: CharpolyFamily,
    q: u32,
    phi: &MonicPoly,
    budget: &Budget,
) -> Result<BigRational> {
    if matches!(fam, CharpolyFamily::Sp | CharpolyFamily::OAvg) && q % 2 == 0 {
        return Err(Error::domain("Sp and O need odd characteristic"));
    }
    let field = fam.field(q)?;
    let n = phi.degree() as u32;
    if n == 0 {
        return Err(Error::domain("characteristic polynomial must have positive degree"));
    }
    if phi.constant_term() == 0 {
        return Err(Error::domain("phi(0) = 0 never occurs in an invertible group"));
    }
    let factors: BTreeMap<MonicPoly, u32> = factor(&field, phi, budget)?;
    match fam {
        CharpolyFamily::Gl => {
            let mut acc = BigRational::from(gl_order(n, q));
            for (p, &j) in &factors {
                let m = p.degree() as u32;
                acc *= BigRational::new(
                    big(q).pow(m * j * (j - 1)),
                    gl_order_at_base(q, m, j),
                );
            }
            Ok(acc)
        }
        CharpolyFamily::U => {
            let mut acc = BigRational::from(u_order(n, q));
            let mut seen: BTreeMap<MonicPoly, u32> = BTreeMap::new();
            for (p, &j) in &factors {
                let m = p.degree() as u32;
                let partner = tilde(&field, q as u64, p)?;
                if partner == *p {
                    acc *= BigRational::new(
                        big(q).pow(m * j * (j - 1)),
                        u_order_at(j, &big(q).pow(m)),
                    );
                } else {
                    match factors.get(&partner) {
                        Some(&jp) if jp == j => {}
                        _ => return Ok(BigRational::zero()), // unpaired factor
                    }
                    if seen.contains_key(&partner) {
                        continue; // the pair was handled at the partner
                    }
                    seen.insert(p.clone(), j);
                    acc *= BigRational::new(
                        big(q).pow(2 * m * j * (j - 1)),
                        gl_order_at_base(q, 2 * m, j),
                    );
                }
            }
            Ok(acc)
        }
        CharpolyFamily::Sp | CharpolyFamily::OAvg => {
            let zm = MonicPoly::z_minus_one(&field);
            let zp = MonicPoly::z_plus_one(&field);
            let a_exp = factors.get(&zm).copied().unwrap_or(0);
            let b_exp = factors.get(&zp).copied().unwrap_or(0);
            let mut acc = if fam == CharpolyFamily::Sp {
                if n % 2 != 0 {
                    return Err(Error::domain("symplectic dimension must be even"));
                }
                if a_exp % 2 != 0 || b_exp % 2 != 0 {
                    return Ok(BigRational::zero()); // z∓1 must appear to even powers
                }
                let (a, b) = (a_exp / 2, b_exp / 2);
                BigRational::from(sp_order(n, q))
                    * BigRational::new(big(q).pow(2 * a * a), sp_order(2 * a, q))
                    * BigRational::new(big(q).pow(2 * b * b), sp_order(2 * b, q))
            } else {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                half * f_factor(q, a_exp) * f_factor(q, b_exp)
            };
            let mut seen: BTreeMap<MonicPoly, u32> = BTreeMap::new();
            for (p, &j) in &factors {
                if *p == zm || *p == zp {
                    continue;
                }
                let m = p.degree() as u32;
                let partner = bar(&field, p)?;
                if partner == *p {
                    assert!(m % 2 == 0);
                    acc *= BigRational::new(
                        big(q).pow(m / 2 * j * (j - 1)),
                        u_order_at(j, &big(q).pow(m / 2)),
                    );
                } else {
                    match factors.get(&partner) {
                        Some(&jp) if jp == j => {}
                        _ => return Ok(BigRational::zero()),
                    }
                    if seen.contains_key(&partner) {
                        continue;
                    }
                    seen.insert(p.clone(), j);
                    acc *= BigRational::new(
                        big(q).pow(m * j * (j - 1)),
                        gl_order_at_base(q, m, j),
                    );
                }
            }
            Ok(acc)
        }
    }
}

/// `F(n)` of the averaged orthogonal count.
fn f_factor(q: u32, n: u32) -> BigRational {
    if n % 2 == 0 {
        BigRational::new(big(q).pow(n * n / 2), sp_order(n, q))
    } else {
        BigRational::new(big(q).pow((n - 1) * (n - 1) / 2), sp_order(n - 1, q))
    }
}
