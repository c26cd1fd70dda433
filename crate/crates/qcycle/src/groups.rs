//! Group families, identities, and exact order formulas.
//!
//! Orders:
//! - `|GL(n,q)| = prod_{i=0}^{n-1} (q^n - q^i)`
//! - `|Mat(n,q)| = q^{n^2}` (conjugation orbits of `GL(n,q)` on all matrices)
//! - `|U(n,q)| = q^{n(n-1)/2} prod_{i=1}^{n} (q^i - (-1)^i)` (matrices over `F_{q^2}`)
//! - `|Sp(2l,q)| = q^{l^2} prod_{i=1}^{l} (q^{2i} - 1)`
//! - `|O^±(2l+1,q)| = 2 q^{l^2} prod_{i=1}^{l} (q^{2i} - 1)` (both signs)
//! - `|O^±(2l,q)| = 2 q^{l^2-l} (q^l ∓ 1) prod_{i=1}^{l-1} (q^{2i} - 1)`
//!
//! `gl_order_at` accepts a *signed* base, which makes `|GL(n,-q)|` a
//! well-defined signed integer satisfying `|GL(n,-q)| = (-1)^n |U(n,q)|`; the
//! unitary and symplectic cycle-index factorizations are substitutions of
//! negated bases into general-linear quantities.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign label for orthogonal groups and signed partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The families handled by the library. `OPlus`/`OMinus` are tracked as
/// distinct groups even in odd dimension, where they are isomorphic (the class
/// data of an element depends on the invariant form, not just the matrix group).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gl,
    Mat,
    U,
    Sp,
    OPlus,
    OMinus,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gl => "GL",
            Family::Mat => "Mat",
            Family::U => "U",
            Family::Sp => "Sp",
            Family::OPlus => "O+",
            Family::OMinus => "O-",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "GL" | "gl" => Ok(Family::Gl),
            "Mat" | "mat" => Ok(Family::Mat),
            "U" | "u" => Ok(Family::U),
            "Sp" | "sp" => Ok(Family::Sp),
            "O+" | "o+" | "Oplus" => Ok(Family::OPlus),
            "O-" | "o-" | "Ominus" => Ok(Family::OMinus),
            _ => Err(Error::domain(format!("unknown family '{s}'"))),
        }
    }
}

/// One concrete group: family, dimension, field parameter. For `U(n,q)` the
/// matrices live over `F_{q^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupId {
    pub family: Family,
    pub n: u32,
    pub q: u32,
}

impl GroupId {
    pub fn new(family: Family, n: u32, q: u32) -> Result<GroupId> {
        let g = GroupId { family, n, q };
        g.check()?;
        Ok(g)
    }

    /// Validate the parity and characteristic constraints.
    pub fn check(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::domain("q must be a prime power >= 2"));
        }
        match self.family {
            Family::Sp => {
                if self.n % 2 != 0 {
                    return Err(Error::domain("Sp requires even dimension"));
                }
                if self.q % 2 == 0 {
                    return Err(Error::domain("Sp is supported only in odd characteristic"));
                }
            }
            Family::OPlus | Family::OMinus => {
                if self.q % 2 == 0 {
                    return Err(Error::domain("O is supported only in odd characteristic"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Field size the matrices live over (`q^2` for unitary groups).
    pub fn matrix_field_size(&self) -> u64 {
        match self.family {
            Family::U => self.q as u64 * self.q as u64,
            _ => self.q as u64,
        }
    }

    pub fn order(&self) -> BigInt {
        group_order(self)
    }
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({},{})", self.family.name(), self.n, self.q)
    }
}

fn big(q: u32) -> BigInt {
    BigInt::from(q)
}

/// `prod_{i=0}^{n-1} (Q^n - Q^i)` for a signed integer base `Q`.
pub fn gl_order_at(n: u32, base: &BigInt) -> BigInt {
    let mut acc = BigInt::one();
    let qn = base.pow(n);
    for i in 0..n {
        acc *= &qn - base.pow(i);
    }
    acc
}

pub fn gl_order(n: u32, q: u32) -> BigInt {
    gl_order_at(n, &big(q))
}

pub fn mat_order(n: u32, q: u32) -> BigInt {
    big(q).pow(n * n)
}

pub fn u_order(n: u32, q: u32) -> BigInt {
    let q = big(q);
    let mut acc = q.pow(n * (n.saturating_sub(1)) / 2);
    for i in 1..=n {
        let s = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        acc *= q.pow(i) - s;
    }
    acc
}

/// `|Sp(m,q)|` for even `m` (so `m = 2l`); `Sp(0,q)` is trivial.
pub fn sp_order(m: u32, q: u32) -> BigInt {
    assert!(m % 2 == 0, "symplectic groups need even dimension");
    let l = m / 2;
    let q = big(q);
    let mut acc = q.pow(l * l);
    for i in 1..=l {
        acc *= q.pow(2 * i) - BigInt::one();
    }
    acc
}

/// `|O^sign(m,q)|` for odd `q`. `O^+(0,q)` is the trivial group.
pub fn o_order(sign: Sign, m: u32, q: u32) -> BigInt {
    let q = big(q);
    if m == 0 {
        assert!(sign == Sign::Plus, "O^-(0,q) does not exist");
        return BigInt::one();
    }
    if m % 2 == 1 {
        let l = m / 2;
        let mut acc = BigInt::from(2) * q.pow(l * l);
        for i in 1..=l {
            acc *= q.pow(2 * i) - BigInt::one();
        }
        acc
    } else {
        let l = m / 2;
        let eps = match sign {
            Sign::Plus => BigInt::one(),
            Sign::Minus => -BigInt::one(),
        };
        let mut acc = BigInt::from(2) * q.pow(l * l - l) * (q.pow(l) - eps);
        for i in 1..l {
            acc *= q.pow(2 * i) - BigInt::one();
        }
        acc
    }
}

pub fn group_order(g: &GroupId) -> BigInt {
    match g.family {
        Family::Gl => gl_order(g.n, g.q),
        Family::Mat => mat_order(g.n, g.q),
        Family::U => u_order(g.n, g.q),
        Family::Sp => sp_order(g.n, g.q),
        Family::OPlus => o_order(Sign::Plus, g.n, g.q),
        Family::OMinus => o_order(Sign::Minus, g.n, g.q),
    }
}

/// Order of a p-Sylow subgroup, p the defining characteristic: the full power
/// of q dividing the group order.
pub fn p_sylow_order(g: &GroupId) -> BigInt {
    let q = big(g.q);
    match g.family {
        Family::Gl | Family::Mat => q.pow(g.n * g.n.saturating_sub(1) / 2),
        Family::U => q.pow(g.n * g.n.saturating_sub(1) / 2),
        Family::Sp => {
            let l = g.n / 2;
            q.pow(l * l)
        }
        Family::OPlus | Family::OMinus => {
            let l = g.n / 2;
            if g.n % 2 == 1 {
                q.pow(l * l)
            } else {
                q.pow(l * l - l)
            }
        }
    }
}
