//! Finite fields `F_q`, `q = p^k`, with a fixed deterministic realization.
//!
//! Elements are indices `0..q` encoding coefficient vectors over `F_p` in
//! base `p` (index = sum of `c_i * p^i`), relative to a fixed monic
//! irreducible modulus of degree `k`. The modulus is the lexicographically
//! smallest irreducible (comparing constant coefficient first), so element
//! order and every enumeration built on it are reproducible across runs.

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Index of a field element; interpretation depends on the owning [`Field`].
pub type Fq = u32;

/// A concrete finite field `F_{p^k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    k: u32,
    q: u64,
    /// Modulus coefficients c_0..c_{k-1} (the leading 1 is implicit); empty for k = 1.
    modulus: Vec<u32>,
    /// Flat q*q multiplication table, built for small fields; hot loops in the
    /// polynomial sieve and the matrix oracle reduce to a single lookup.
    mul_table: Vec<Fq>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Construct `F_{p^k}`. Fails if `p` is not prime or `p^k` exceeds the budget.
    pub fn new(p: u32, k: u32, budget: &Budget) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::domain("extension degree must be >= 1"));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p as u64).ok_or_else(|| Error::budget("field size overflow"))?;
            if q > budget.max_field_size {
                return Err(Error::budget(format!(
                    "field size {q}+ exceeds configured maximum {}",
                    budget.max_field_size
                )));
            }
        }
        let modulus = if k == 1 { Vec::new() } else { find_modulus(p, k) };
        let mut field = Field { p, k, q, modulus, mul_table: Vec::new() };
        if q <= 256 {
            let n = q as usize;
            let mut table = vec![0 as Fq; n * n];
            for a in 0..n {
                for b in a..n {
                    let v = field.mul_slow(a as Fq, b as Fq);
                    table[a * n + b] = v;
                    table[b * n + a] = v;
                }
            }
            field.mul_table = table;
        }
        Ok(field)
    }

    /// Prime-field shorthand used throughout the tests.
    pub fn prime(p: u32) -> Field {
        Field::new(p, 1, &Budget::default()).expect("prime field")
    }

    /// The field `F_{p^k}` with default budget.
    pub fn extension(p: u32, k: u32) -> Result<Field> {
        Field::new(p, k, &Budget::default())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients c_0..c_{k-1} (leading 1 implicit). Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        0
    }

    pub fn one(&self) -> Fq {
        1
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    fn coords(&self, a: Fq) -> Vec<u32> {
        let mut v = vec![0u32; self.k as usize];
        let mut a = a;
        for c in v.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        v
    }

    fn pack(&self, v: &[u32]) -> Fq {
        let mut a: u64 = 0;
        for &c in v.iter().rev() {
            a = a * self.p as u64 + c as u64;
        }
        a as Fq
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as Fq;
        }
        let (va, vb) = (self.coords(a), self.coords(b));
        let v: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&v)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let v: Vec<u32> = self.coords(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&v)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if !self.mul_table.is_empty() {
            return self.mul_table[a as usize * self.q as usize + b as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return (a as u64 * b as u64 % self.p as u64) as Fq;
        }
        let (va, vb) = (self.coords(a), self.coords(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in va.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in vb.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        // Reduce modulo the monic modulus z^k + m_{k-1} z^{k-1} + ... + m_0.
        for i in (k..prod.len()).rev() {
            let c = prod[i] % self.p as u64;
            prod[i] = 0;
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate() {
                let sub = c * m as u64 % self.p as u64;
                let idx = i - k + j;
                prod[idx] = (prod[idx] + self.p as u64 - sub) % self.p as u64;
            }
        }
        let v: Vec<u32> = prod[..k].iter().map(|&x| (x % self.p as u64) as u32).collect();
        self.pack(&v)
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "zero has no inverse");
        self.pow(a, self.q - 2)
    }

    /// The Frobenius automorphism x -> x^p.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u64)
    }

    /// Whether a nonzero element is a square. For `q` odd this is the
    /// quadratic character; every element of a characteristic-2 field is a square.
    pub fn is_square(&self, a: Fq) -> bool {
        assert!(a != 0);
        if self.p == 2 {
            return true;
        }
        self.pow(a, (self.q - 1) / 2) == self.one()
    }

    /// Smallest non-square element, for odd `q`.
    pub fn nonsquare(&self) -> Fq {
        assert!(self.p != 2, "every element of a binary field is a square");
        self.elements()
            .filter(|&a| a != 0)
            .find(|&a| !self.is_square(a))
            .expect("odd field has a non-square")
    }

    /// Integer representative for display; prime fields render as the residue,
    /// extensions as dot-joined F_p coordinates low-to-high ("0.1" is the
    /// degree-1 generator).
    pub fn render(&self, a: Fq) -> String {
        if self.k == 1 {
            a.to_string()
        } else {
            self.coords(a)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Inverse of [`Field::render`].
    pub fn parse(&self, s: &str) -> Result<Fq> {
        let bad = || Error::domain(format!("cannot parse field element '{s}'"));
        if self.k == 1 {
            let v: u64 = s.parse().map_err(|_| bad())?;
            if v >= self.q {
                return Err(bad());
            }
            return Ok(v as Fq);
        }
        let coords: Vec<u32> = s
            .split('.')
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if coords.len() != self.k as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(bad());
        }
        Ok(self.pack(&coords))
    }
}

/// Lexicographically smallest monic irreducible of degree `k` over `F_p`,
/// comparing coefficient vectors (c_0, c_1, ...) ascending.
fn find_modulus(p: u32, k: u32) -> Vec<u32> {
    let prime = Field { p, k: 1, q: p as u64, modulus: Vec::new(), mul_table: Vec::new() };
    let k = k as usize;
    let mut coeffs = vec![0u32; k];
    loop {
        if poly_irreducible_over_prime(&prime, &coeffs) {
            return coeffs;
        }
        // advance in lexicographic order on (c_0, c_1, ...): last coordinate fastest
        let mut i = k;
        loop {
            assert!(i > 0, "no irreducible of degree {k} over F_{p}?");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

/// Irreducibility of the monic polynomial z^k + sum c_i z^i over the prime
/// field, by checking it has no root in any proper subfield reachable by
/// trial division against low-degree factors. Used only for modulus search
/// (k small), so plain trial division over all monic polys of degree <= k/2.
fn poly_irreducible_over_prime(f: &Field, coeffs: &[u32]) -> bool {
    let k = coeffs.len();
    if k == 1 {
        return true;
    }
    // z | f iff constant term 0
    if coeffs[0] == 0 {
        return false;
    }
    let p = f.p();
    for d in 1..=k / 2 {
        // all monic divisor candidates of degree d
        let mut cand = vec![0u32; d];
        loop {
            if poly_divides(f, &cand, coeffs, k) {
                return false;
            }
            let mut i = 0;
            loop {
                cand[i] += 1;
                if cand[i] < p {
                    break;
                }
                cand[i] = 0;
                i += 1;
                if i == d {
                    break;
                }
            }
            if i == d {
                break;
            }
        }
    }
    true
}

/// Does the monic poly z^d + cand divide z^k + coeffs over the prime field?
fn poly_divides(f: &Field, cand: &[u32], coeffs: &[u32], k: usize) -> bool {
    let d = cand.len();
    let mut rem: Vec<u32> = coeffs.to_vec();
    rem.push(1); // degree k, monic
    for i in (d..=k).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for (j, &m) in cand.iter().enumerate() {
            rem[i - d + j] = f.sub(rem[i - d + j], f.mul(c, m));
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7);
        assert_eq!(f.add(3, 5), 1);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.pow(3, 6), 1);
    }

    #[test]
    fn f4_realization() {
        let f = Field::extension(2, 2).unwrap();
        // modulus must be z^2 + z + 1, the only irreducible quadratic over F_2
        assert_eq!(f.modulus(), &[1, 1]);
        // the generator w = index 2 satisfies w^2 = w + 1 = index 3, w^3 = 1
        let w = 2;
        assert_eq!(f.mul(w, w), 3);
        assert_eq!(f.pow(w, 3), 1);
        // field axioms sampled exhaustively at this size
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn f9_and_f25_moduli() {
        let f9 = Field::extension(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0]); // z^2 + 1, since -1 is not a square mod 3
        let f25 = Field::extension(5, 2).unwrap();
        assert_eq!(f25.modulus(), &[1, 1]); // z^2 + z + 1; z^2 + 1 splits as (z-2)(z+2)
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        let f = Field::extension(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
            }
            // x -> x^q is an involution on the quadratic extension
            let c = f.pow(a, 3);
            assert_eq!(f.pow(c, 3), a);
        }
    }

    #[test]
    fn nonsquare_detection() {
        let f = Field::prime(3);
        assert_eq!(f.nonsquare(), 2);
        let f5 = Field::prime(5);
        assert_eq!(f5.nonsquare(), 2);
        assert!(f5.is_square(4));
    }

    #[test]
    fn budget_and_domain_errors() {
        assert!(Field::new(4, 1, &Budget::default()).is_err());
        let tiny = Budget { max_field_size: 8, ..Budget::default() };
        assert!(Field::new(3, 2, &tiny).is_err());
        assert!(Field::new(2, 3, &tiny).is_ok());
    }

    #[test]
    fn render_parse_roundtrip() {
        let f = Field::extension(2, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.render(a)).unwrap(), a);
        }
        assert_eq!(f.render(2), "0.1");
        let p = Field::prime(5);
        assert_eq!(p.render(3), "3");
        assert_eq!(p.parse("3").unwrap(), 3);
    }
}
