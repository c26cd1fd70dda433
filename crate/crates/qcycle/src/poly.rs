//! Monic polynomials over finite fields: arithmetic, irreducibility,
//! enumeration, the conjugate-reciprocal involutions, and counting formulas.
//!
//! Counting formulas (Moebius sums):
//! - irreducibles of degree m, excluding z:
//!   `I_{m,q} = (1/m) sum_{k|m} mu(k) (q^{m/k} - 1)`
//! - self-tilde irreducibles over `F_{q^2}` (tilde is conjugate-reciprocal
//!   with coefficient conjugation x -> x^q): 0 for even m,
//!   `(1/m) sum_{d|m} mu(d) (q^{m/d} + 1)` for odd m
//! - self-bar irreducibles over `F_q` (bar is the normalized reciprocal):
//!   2 for m = 1 (z - 1 and z + 1), 0 for odd m > 1, and for even
//!   m = 2^r m0: `(1/m) sum_{d|m0} mu(d) (q^{m/(2d)} - 1)`
//!
//! Polynomials serialize as coefficient lists low-to-high, e.g. "1,1,1" is
//! z^2 + z + 1 over a prime field; extension-field elements render as
//! dot-joined coordinate vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::num_util::{divisors, euler_phi, moebius, mult_order};

/// A monic polynomial; `coeffs` stores all coefficients low-to-high including
/// the leading 1, so `coeffs.len() - 1` is the degree. The constant monic
/// polynomial 1 has `coeffs == [1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    coeffs: Vec<Fq>,
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonicPoly {
    /// Degree-major, then lexicographic on the coefficient vector low-to-high.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl MonicPoly {
    pub fn from_coeffs(coeffs: Vec<Fq>) -> MonicPoly {
        assert!(
            coeffs.last() == Some(&1),
            "monic polynomial needs leading coefficient 1"
        );
        MonicPoly { coeffs }
    }

    /// The polynomial z.
    pub fn z() -> MonicPoly {
        MonicPoly { coeffs: vec![0, 1] }
    }

    /// z - 1 over the given field.
    pub fn z_minus_one(f: &Field) -> MonicPoly {
        MonicPoly { coeffs: vec![f.neg(f.one()), 1] }
    }

    /// z + 1 over the given field (equals z - 1 in characteristic 2).
    pub fn z_plus_one(f: &Field) -> MonicPoly {
        MonicPoly { coeffs: vec![f.one(), 1] }
    }

    /// z - a.
    pub fn linear(f: &Field, a: Fq) -> MonicPoly {
        MonicPoly { coeffs: vec![f.neg(a), 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Fq {
        self.coeffs[0]
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn eval(&self, f: &Field, x: Fq) -> Fq {
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn mul(&self, f: &Field, other: &MonicPoly) -> MonicPoly {
        MonicPoly { coeffs: vec_mul(f, &self.coeffs, &other.coeffs) }
    }

    pub fn pow(&self, f: &Field, e: u32) -> MonicPoly {
        let mut acc = MonicPoly { coeffs: vec![1] };
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Remainder of `self` modulo the monic `other`.
    pub fn rem(&self, f: &Field, other: &MonicPoly) -> Vec<Fq> {
        vec_rem(f, &self.coeffs, &other.coeffs)
    }

    /// Exact division by a monic divisor; returns None if it does not divide.
    pub fn div_exact(&self, f: &Field, other: &MonicPoly) -> Option<MonicPoly> {
        if other.degree() > self.degree() {
            return None;
        }
        let (quot, rem) = vec_divmod(f, &self.coeffs, &other.coeffs);
        if rem.iter().all(|&c| c == 0) {
            Some(MonicPoly { coeffs: quot })
        } else {
            None
        }
    }

    /// Rabin irreducibility test: monic f of degree m is irreducible over F_q
    /// iff z^{q^m} = z (mod f) and gcd(z^{q^{m/l}} - z, f) = 1 for every
    /// prime l dividing m.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let m = self.degree();
        if m == 0 {
            return false;
        }
        if m == 1 {
            return true;
        }
        if self.coeffs[0] == 0 {
            return false; // divisible by z
        }
        let checkpoints: Vec<usize> = {
            let mut pts = Vec::new();
            let mut rest = m;
            let mut l = 2;
            while l * l <= rest {
                if rest % l == 0 {
                    pts.push(m / l);
                    while rest % l == 0 {
                        rest /= l;
                    }
                }
                l += 1;
            }
            if rest > 1 {
                pts.push(m / rest);
            }
            pts
        };
        let z_res = vec![f.zero(), f.one()];
        let mut x = z_res.clone();
        for i in 1..=m {
            x = res_pow(f, &x, f.q(), &self.coeffs);
            if checkpoints.contains(&i) {
                let diff = vec_sub(f, &x, &z_res);
                let g = vec_gcd(f, &diff, &self.coeffs);
                if g.len() != 1 {
                    return false;
                }
            }
        }
        res_trim(&vec_sub(f, &x, &z_res)).is_empty()
    }

    /// Coefficient list low-to-high, e.g. "1,1,1" for z^2 + z + 1.
    pub fn render(&self, f: &Field) -> String {
        self.coeffs
            .iter()
            .map(|&c| f.render(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(f: &Field, s: &str) -> Result<MonicPoly> {
        let coeffs: Vec<Fq> =
            s.split(',').map(|t| f.parse(t.trim())).collect::<Result<_>>()?;
        if coeffs.last() != Some(&1) {
            return Err(Error::domain(format!("'{s}' is not monic")));
        }
        Ok(MonicPoly { coeffs })
    }
}

// --- dense coefficient-vector helpers (not necessarily monic) ---

fn res_trim(v: &[Fq]) -> &[Fq] {
    let mut n = v.len();
    while n > 0 && v[n - 1] == 0 {
        n -= 1;
    }
    &v[..n]
}

fn vec_mul(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn vec_sub(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            f.sub(x, y)
        })
        .collect()
}

/// Quotient and remainder by a *monic* divisor.
fn vec_divmod(f: &Field, a: &[Fq], m: &[Fq]) -> (Vec<Fq>, Vec<Fq>) {
    let d = m.len() - 1;
    let mut rem: Vec<Fq> = a.to_vec();
    if rem.len() <= d {
        return (vec![1], rem); // caller only uses this path via div_exact guards
    }
    let mut quot = vec![f.zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - d] = c;
        rem[i] = 0;
        for (j, &mc) in m.iter().take(d).enumerate() {
            rem[i - d + j] = f.sub(rem[i - d + j], f.mul(c, mc));
        }
    }
    rem.truncate(d.max(1));
    (quot, rem)
}

fn vec_rem(f: &Field, a: &[Fq], m: &[Fq]) -> Vec<Fq> {
    vec_divmod(f, a, m).1
}

/// Monic gcd of two coefficient vectors (either may be zero).
fn vec_gcd(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut a = res_trim(a).to_vec();
    let mut b = res_trim(b).to_vec();
    while !b.is_empty() {
        // reduce a mod b after normalizing b to monic
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = f.inv(lead);
            for c in b.iter_mut() {
                *c = f.mul(*c, inv);
            }
        }
        let r = if a.len() >= b.len() { vec_rem(f, &a, &b) } else { a.clone() };
        a = b;
        b = res_trim(&r).to_vec();
    }
    if a.is_empty() {
        return a;
    }
    let lead = *a.last().unwrap();
    if lead != 1 {
        let inv = f.inv(lead);
        for c in a.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    a
}

/// Multiply residues mod the monic `m`.
fn res_mul(f: &Field, a: &[Fq], b: &[Fq], m: &[Fq]) -> Vec<Fq> {
    vec_rem(f, &vec_mul(f, a, b), m)
}

/// Raise a residue to the power `e` mod the monic `m`.
fn res_pow(f: &Field, a: &[Fq], mut e: u64, m: &[Fq]) -> Vec<Fq> {
    let mut base = a.to_vec();
    let mut acc = vec![f.one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = res_mul(f, &acc, &base, m);
        }
        base = res_mul(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

// --- enumeration ---

fn index_to_poly(f: &Field, m: usize, idx: u64) -> MonicPoly {
    let q = f.q();
    let mut coeffs = vec![0 as Fq; m + 1];
    let mut idx = idx;
    for c in coeffs.iter_mut().take(m) {
        *c = (idx % q) as Fq;
        idx /= q;
    }
    coeffs[m] = 1;
    MonicPoly { coeffs }
}

fn poly_to_index(f: &Field, p: &MonicPoly) -> u64 {
    let q = f.q();
    let mut idx: u64 = 0;
    for &c in p.coeffs.iter().take(p.degree()).rev() {
        idx = idx * q + c as u64;
    }
    idx
}

/// All monic irreducibles of degrees `1..=max_deg`, grouped by degree
/// (`out[d-1]` is the degree-d list, sorted). Sieve of Eratosthenes on the
/// q^d coefficient tuples per degree.
pub fn irreducibles_up_to(f: &Field, max_deg: usize, budget: &Budget) -> Result<Vec<Vec<MonicPoly>>> {
    let q = f.q();
    let mut total: u64 = 0;
    let mut sizes = Vec::new();
    for d in 1..=max_deg {
        let s = q
            .checked_pow(d as u32)
            .ok_or_else(|| Error::budget("polynomial enumeration overflow"))?;
        total = total.saturating_add(s);
        sizes.push(s);
    }
    if total > budget.max_poly_scan {
        return Err(Error::budget(format!(
            "enumerating {total} monic polynomials exceeds the scan budget {}",
            budget.max_poly_scan
        )));
    }
    let mut composite: Vec<Vec<bool>> =
        sizes.iter().map(|&s| vec![false; s as usize]).collect();
    let mut out: Vec<Vec<MonicPoly>> = vec![Vec::new(); max_deg];
    for d in 1..=max_deg {
        for idx in 0..sizes[d - 1] {
            if composite[d - 1][idx as usize] {
                continue;
            }
            let p = index_to_poly(f, d, idx);
            // mark every multiple p*g with deg g in 1..=max_deg-d
            for e in 1..=max_deg - d {
                for gidx in 0..sizes[e - 1] {
                    let g = index_to_poly(f, e, gidx);
                    let prod = p.mul(f, &g);
                    let pi = poly_to_index(f, &prod);
                    composite[d + e - 1][pi as usize] = true;
                }
            }
            out[d - 1].push(p);
        }
    }
    for list in out.iter_mut() {
        list.sort();
    }
    Ok(out)
}

/// The monic irreducibles of degree exactly `m`, sorted; includes z at m = 1.
pub fn enumerate_monic_irreducibles(f: &Field, m: usize, budget: &Budget) -> Result<Vec<MonicPoly>> {
    if m == 0 {
        return Err(Error::domain("degree must be >= 1"));
    }
    Ok(irreducibles_up_to(f, m, budget)?.pop().unwrap())
}

// --- counting formulas ---

fn moebius_sum(m: u32, term: impl Fn(u32) -> BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for k in divisors(m as u64) {
        let mu = moebius(k);
        if mu == 0 {
            continue;
        }
        acc += BigInt::from(mu) * term((m as u64 / k) as u32);
    }
    let (quot, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(m));
    assert!(rem.is_zero(), "Moebius count must be integral");
    quot
}

/// Number of monic irreducibles of degree m over F_q. With `exclude_z` this is
/// I_{m,q} (only relevant at m = 1, where z is dropped).
pub fn irreducible_count(q: u64, m: u32, exclude_z: bool) -> BigInt {
    assert!(m >= 1);
    if exclude_z {
        moebius_sum(m, |e| BigInt::from(q).pow(e) - 1)
    } else {
        moebius_sum(m, |e| BigInt::from(q).pow(e))
    }
}

/// Number of monic irreducibles of degree m over F_{q^2} fixed by tilde
/// (q is the subfield size). Zero for even m.
pub fn self_tilde_count(q: u64, m: u32) -> BigInt {
    assert!(m >= 1);
    if m % 2 == 0 {
        return BigInt::zero();
    }
    moebius_sum(m, |e| BigInt::from(q).pow(e) + 1)
}

/// Number of monic irreducibles of degree m over F_q fixed by bar. The
/// closed form assumes odd q (in characteristic 2 the two linears z±1
/// coincide); the symplectic/orthogonal machinery that consumes it only
/// runs in odd characteristic.
pub fn self_bar_count(q: u64, m: u32) -> BigInt {
    assert!(m >= 1);
    if m == 1 {
        return BigInt::from(2); // z - 1 and z + 1
    }
    if m % 2 == 1 {
        return BigInt::zero();
    }
    // m = 2^r m0 with m0 odd; sum over divisors of m0 only
    let mut m0 = m as u64;
    while m0 % 2 == 0 {
        m0 /= 2;
    }
    let mut acc = BigInt::zero();
    for d in divisors(m0) {
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        acc += BigInt::from(mu) * BigInt::from(q).pow((m as u64 / (2 * d)) as u32);
        acc -= BigInt::from(mu);
    }
    let (quot, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(m));
    assert!(rem.is_zero());
    quot
}

// --- involutions ---

/// The conjugate-reciprocal involution with coefficient map x -> x^sigma_pow:
/// phi -> z^m phi^sigma(1/z) / phi(0)^sigma. With sigma_pow = q (the subfield
/// size, on a field of order q^2) this is tilde; with sigma_pow = |F| it is
/// bar, the plain normalized reciprocal.
fn conj_reciprocal(f: &Field, sigma_pow: u64, poly: &MonicPoly) -> Result<MonicPoly> {
    if poly.constant_term() == 0 {
        return Err(Error::domain(
            "conjugate-reciprocal involution needs a nonvanishing constant term",
        ));
    }
    let m = poly.degree();
    let a0_sigma = f.pow(poly.constant_term(), sigma_pow);
    let inv_a0 = f.inv(a0_sigma);
    let coeffs: Vec<Fq> = (0..=m)
        .map(|i| {
            let src = f.pow(poly.coeffs[m - i], sigma_pow);
            f.mul(src, inv_a0)
        })
        .collect();
    debug_assert_eq!(*coeffs.last().unwrap(), 1);
    Ok(MonicPoly { coeffs })
}

/// tilde involution on polynomials over a field of order q^2, where `q_sub`
/// is the subfield size.
pub fn tilde(f: &Field, q_sub: u64, poly: &MonicPoly) -> Result<MonicPoly> {
    assert_eq!(q_sub * q_sub, f.q(), "tilde lives on a quadratic extension");
    conj_reciprocal(f, q_sub, poly)
}

/// bar involution on polynomials over F_q: the normalized reciprocal
/// (the coefficient map x -> x^q is the identity on F_q).
pub fn bar(f: &Field, poly: &MonicPoly) -> Result<MonicPoly> {
    conj_reciprocal(f, f.q(), poly)
}

/// Enumerate the monic *irreducible* self-conjugate-reciprocal polynomials of
/// degree m, scanning only the z^{m} .. z^{ceil(m/2)} coefficients that
/// determine such a polynomial (the scan space is about q^{m/2}, not q^m).
pub fn enumerate_self_involutive(
    f: &Field,
    sigma_pow: u64,
    m: usize,
    budget: &Budget,
) -> Result<Vec<MonicPoly>> {
    assert!(m >= 1);
    let q = f.q();
    // constant terms: solutions of a^(sigma+1) = 1
    let a0s: Vec<Fq> = f
        .elements()
        .filter(|&a| a != 0 && f.mul(f.pow(a, sigma_pow), a) == f.one())
        .collect();
    let n_free = (m - 1) / 2;
    let scan = (a0s.len() as u64)
        .saturating_mul(q.saturating_pow(n_free as u32))
        .saturating_mul(if m % 2 == 0 { q } else { 1 });
    if scan > budget.max_poly_scan {
        return Err(Error::budget(format!(
            "self-involutive scan of {scan} candidates exceeds budget"
        )));
    }
    let mut out = Vec::new();
    for &a0 in &a0s {
        let a0_sigma_inv = f.inv(f.pow(a0, sigma_pow));
        // free high coefficients a_{m-1} .. a_{m-n_free}
        let mut free = vec![0 as Fq; n_free];
        loop {
            // middle coefficient constraint for even m: a = (a / a0)^sigma
            let middles: Vec<Fq> = if m % 2 == 0 {
                f.elements()
                    .filter(|&a| f.mul(f.pow(a, sigma_pow), a0_sigma_inv) == a)
                    .collect()
            } else {
                vec![0]
            };
            for &mid in &middles {
                let mut coeffs = vec![0 as Fq; m + 1];
                coeffs[m] = 1;
                coeffs[0] = a0;
                for (t, &c) in free.iter().enumerate() {
                    let hi = m - 1 - t;
                    coeffs[hi] = c;
                    // determined partner: a_j = (a_{m-j}/a0)^sigma at j = m - hi
                    coeffs[m - hi] = f.mul(f.pow(c, sigma_pow), a0_sigma_inv);
                }
                if m % 2 == 0 {
                    coeffs[m / 2] = mid;
                }
                let p = MonicPoly { coeffs };
                debug_assert_eq!(conj_reciprocal(f, sigma_pow, &p).unwrap(), p);
                if p.is_irreducible(f) {
                    out.push(p);
                }
            }
            // advance the free-coefficient counter
            let mut i = 0;
            while i < n_free {
                free[i] += 1;
                if (free[i] as u64) < q {
                    break;
                }
                free[i] = 0;
                i += 1;
            }
            if i == n_free {
                break;
            }
            if n_free == 0 {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

// --- factorization ---

/// Factor a monic polynomial into irreducibles with multiplicities, by trial
/// division against sieved irreducibles (desk scale only).
pub fn factor(f: &Field, poly: &MonicPoly, budget: &Budget) -> Result<BTreeMap<MonicPoly, u32>> {
    assert!(poly.degree() >= 1);
    let mut out: BTreeMap<MonicPoly, u32> = BTreeMap::new();
    let mut rest = poly.clone();
    // peel off z factors first
    while rest.degree() >= 1 && rest.constant_term() == 0 {
        let q = rest
            .div_exact(f, &MonicPoly::z())
            .expect("constant term 0 means divisible by z");
        *out.entry(MonicPoly::z()).or_insert(0) += 1;
        rest = q;
    }
    if rest.degree() == 0 {
        return Ok(out);
    }
    let half = rest.degree() / 2;
    let lists = if half >= 1 {
        irreducibles_up_to(f, half, budget)?
    } else {
        Vec::new()
    };
    for list in &lists {
        for p in list {
            if p.coeffs == [0, 1] {
                continue; // z already handled
            }
            while rest.degree() >= p.degree() {
                match rest.div_exact(f, p) {
                    Some(q) => {
                        *out.entry(p.clone()).or_insert(0) += 1;
                        rest = q;
                    }
                    None => break,
                }
            }
        }
    }
    if rest.degree() >= 1 {
        debug_assert!(rest.is_irreducible(f));
        *out.entry(rest).or_insert(0) += 1;
    }
    Ok(out)
}

// --- root orders ---

/// Number of monic irreducible polynomials over F_q whose roots have
/// multiplicative order exactly `target` in `F_{q^n}`: Phi(target)/d, where d
/// is the common degree of those polynomials (the order of q mod target).
/// Requires `target | q^n - 1`.
pub fn polys_with_root_order(q: u64, n: u32, target: u128) -> Result<u128> {
    if target == 0 {
        return Err(Error::domain("target order must be positive"));
    }
    let qn = (q as u128)
        .checked_pow(n)
        .ok_or_else(|| Error::budget("q^n overflows the supported range"))?;
    if (qn - 1) % target != 0 {
        return Err(Error::domain(format!(
            "{target} does not divide q^n - 1 = {}",
            qn - 1
        )));
    }
    let d = mult_order(q as u128 % target.max(1), target);
    let phi = euler_phi(target);
    debug_assert_eq!(phi % d, 0);
    Ok(phi / d)
}
