//! Partitions, signed partitions, and the centralizer-order quantities they
//! parameterize.
//!
//! For a partition with `m_i` parts of size i, write
//! `d_i = m_1*1 + ... + m_{i-1}(i-1) + (m_i + m_{i+1} + ...)*i`
//! (the number of cells in the first i columns of the diagram). The
//! general-linear centralizer quantity at a base Q is
//!
//! `c_GL(lambda, Q) = prod_i prod_{k=1}^{m_i} (Q^{d_i} - Q^{d_i - k})`
//!
//! with two rewritings used heavily downstream:
//!
//! `c_GL = Q^{2 sum_{h<i} h m_h m_i + sum_i (i-1) m_i^2} prod_i |GL(m_i, Q)|`
//! `c_GL = Q^{sum_t (lambda'_t)^2} prod_i (1/Q)_{m_i}`
//!
//! The base may be a *negative* integer; `|GL(n,-q)| = (-1)^n |U(n,q)|` turns
//! those evaluations into unitary centralizer quantities, which is how the
//! unitary/symplectic cycle indices reduce to general-linear data.
//!
//! Signed partitions carry the extra sign data of symplectic and orthogonal
//! class parameterizations: symplectic signed partitions have all odd parts
//! with even multiplicity and a sign on each even part size present;
//! orthogonal signed partitions have all even parts with even multiplicity
//! and a sign on each odd part size present.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{gl_order_at, o_order, sp_order, Sign};

/// An integer partition; parts weakly decreasing, empty allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Partition {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "parts must be weakly decreasing and positive"
        );
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn single(part: u32) -> Partition {
        Partition { parts: vec![part] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Multiplicities m_i keyed by part size, ascending.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// The dual partition (columns of the diagram).
    pub fn dual(&self) -> Partition {
        let max = self.largest() as usize;
        let mut cols = vec![0u32; max];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition { parts: cols }
    }

    /// `d_i` for 1 <= i <= largest part: cells in the first i columns,
    /// equivalently `sum_{h<i} h m_h + i lambda'_i`.
    pub fn d_seq(&self) -> Vec<u64> {
        let dual = self.dual();
        let mut acc = 0u64;
        dual.parts.iter().map(|&c| {
            acc += c as u64;
            acc
        }).collect()
    }

    /// `n(lambda) = sum_i (i-1) lambda_i`.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// All partitions of n, largest-part-first order.
    pub fn enumerate(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            let top = max.min(n);
            for p in (1..=top).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn render(&self) -> String {
        let inner = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("[{inner}]")
    }

    pub fn parse(s: &str) -> Result<Partition> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::domain(format!("partition '{s}' needs [..]")))?;
        if body.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<u32> = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::domain(format!("bad part '{t}'")))
            })
            .collect::<Result<_>>()?;
        if !parts.windows(2).all(|w| w[0] >= w[1]) || parts.iter().any(|&p| p == 0) {
            return Err(Error::domain(format!("'{s}' is not weakly decreasing positive")));
        }
        Ok(Partition { parts })
    }
}

// --- centralizer quantities ---

fn check_base(base: &BigInt) {
    assert!(
        !base.is_zero() && *base != BigInt::one() && *base != -BigInt::one(),
        "centralizer quantities need a base with |Q| >= 2"
    );
}

/// The defining product `prod_i prod_{k=1}^{m_i} (Q^{d_i} - Q^{d_i-k})`.
/// Signed bases are allowed and yield signed values.
pub fn c_gl(lambda: &Partition, base: &BigInt) -> BigInt {
    check_base(base);
    if lambda.is_empty() {
        return BigInt::one();
    }
    let mults = lambda.multiplicities();
    let d = lambda.d_seq();
    let mut acc = BigInt::one();
    for (&i, &mi) in &mults {
        let di = d[i as usize - 1];
        let qdi = base.pow(di as u32);
        for k in 1..=mi {
            acc *= &qdi - base.pow((di - k as u64) as u32);
        }
    }
    acc
}

/// The cross and square exponent pieces of the rewritings:
/// `cross = sum_{h<i} h m_h m_i`, `sq = sum_i (i-1) m_i^2`.
fn wall_exponents(mults: &BTreeMap<u32, u32>) -> (u64, u64) {
    let mut cross = 0u64;
    let mut sq = 0u64;
    let entries: Vec<(u64, u64)> = mults.iter().map(|(&i, &m)| (i as u64, m as u64)).collect();
    for (a, &(i, mi)) in entries.iter().enumerate() {
        sq += (i - 1) * mi * mi;
        for &(h, mh) in &entries[..a] {
            cross += h * mh * mi;
        }
    }
    (cross, sq)
}

/// All three expressions for c_GL: the defining product, the
/// `Q^{2 cross + sq} prod |GL(m_i, Q)|` form, and the
/// `Q^{sum (lambda'_t)^2} prod (1/Q)_{m_i}` form (as an exact rational).
pub fn c_gl_rewrites(lambda: &Partition, base: &BigInt) -> (BigInt, BigInt, BigRational) {
    check_base(base);
    let defining = c_gl(lambda, base);

    let mults = lambda.multiplicities();
    let (cross, sq) = wall_exponents(&mults);
    let mut first = base.pow((2 * cross + sq) as u32);
    for (_, &mi) in &mults {
        first *= gl_order_at(mi, base);
    }

    let dual_sq: u64 = lambda
        .dual()
        .parts()
        .iter()
        .map(|&c| c as u64 * c as u64)
        .sum();
    let mut second = BigRational::from(base.pow(dual_sq as u32));
    let inv_base = BigRational::new(BigInt::one(), base.clone());
    for (_, &mi) in &mults {
        for j in 1..=mi {
            second *= BigRational::one() - inv_base.pow(j as i32);
        }
    }
    (defining, first, second)
}

/// Unitary centralizer quantity at a positive base:
/// `base^{2 cross + sq} prod_i |U(m_i, base)|`. Satisfies
/// `c_U(lambda, Q) = (-1)^{|lambda|} c_GL(lambda, -Q)`.
pub fn c_unitary(lambda: &Partition, base: &BigInt) -> BigInt {
    check_base(base);
    assert!(base.is_positive());
    let mults = lambda.multiplicities();
    let (cross, sq) = wall_exponents(&mults);
    let mut acc = base.pow((2 * cross + sq) as u32);
    for (_, &mi) in &mults {
        acc *= u_order_at(mi, base);
    }
    acc
}

/// `|U(n, base)| = base^{n(n-1)/2} prod_{i=1}^n (base^i - (-1)^i)` at an
/// arbitrary positive integer base.
pub fn u_order_at(n: u32, base: &BigInt) -> BigInt {
    let mut acc = base.pow(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        let s = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        acc *= base.pow(i) - s;
    }
    acc
}

// --- signed partitions ---

/// Symplectic signed partition: odd parts have even multiplicity; each even
/// part size present carries a sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpSignedPartition {
    partition: Partition,
    signs: BTreeMap<u32, Sign>,
}

/// Orthogonal signed partition: even parts have even multiplicity; each odd
/// part size present carries a sign.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OSignedPartition {
    partition: Partition,
    signs: BTreeMap<u32, Sign>,
}

fn signed_parity_ok(parity_constrained: impl Fn(u32) -> bool, mults: &BTreeMap<u32, u32>) -> bool {
    mults
        .iter()
        .all(|(&i, &m)| !parity_constrained(i) || m % 2 == 0)
}

impl SpSignedPartition {
    pub fn new(partition: Partition, signs: BTreeMap<u32, Sign>) -> Result<SpSignedPartition> {
        let mults = partition.multiplicities();
        if !signed_parity_ok(|i| i % 2 == 1, &mults) {
            return Err(Error::domain("symplectic signed partition: odd parts need even multiplicity"));
        }
        let expected: Vec<u32> = mults.keys().copied().filter(|i| i % 2 == 0).collect();
        if signs.keys().copied().collect::<Vec<_>>() != expected {
            return Err(Error::domain("signs must be exactly on the even part sizes present"));
        }
        Ok(SpSignedPartition { partition, signs })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn signs(&self) -> &BTreeMap<u32, Sign> {
        &self.signs
    }

    pub fn size(&self) -> u64 {
        self.partition.size()
    }

    /// All symplectic signed partitions of n, all sign choices.
    pub fn enumerate(n: u32) -> Vec<SpSignedPartition> {
        enumerate_signed(n, |i| i % 2 == 1, |i| i % 2 == 0)
            .into_iter()
            .map(|(partition, signs)| SpSignedPartition { partition, signs })
            .collect()
    }

    pub fn render(&self) -> String {
        render_signed(&self.partition, &self.signs)
    }

    pub fn parse(s: &str) -> Result<SpSignedPartition> {
        let (partition, signs) = parse_signed(s, |i| i % 2 == 0)?;
        SpSignedPartition::new(partition, signs)
    }
}

impl OSignedPartition {
    pub fn new(partition: Partition, signs: BTreeMap<u32, Sign>) -> Result<OSignedPartition> {
        let mults = partition.multiplicities();
        if !signed_parity_ok(|i| i % 2 == 0, &mults) {
            return Err(Error::domain("orthogonal signed partition: even parts need even multiplicity"));
        }
        let expected: Vec<u32> = mults.keys().copied().filter(|i| i % 2 == 1).collect();
        if signs.keys().copied().collect::<Vec<_>>() != expected {
            return Err(Error::domain("signs must be exactly on the odd part sizes present"));
        }
        Ok(OSignedPartition { partition, signs })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn signs(&self) -> &BTreeMap<u32, Sign> {
        &self.signs
    }

    pub fn size(&self) -> u64 {
        self.partition.size()
    }

    /// All orthogonal signed partitions of n, all sign choices.
    pub fn enumerate(n: u32) -> Vec<OSignedPartition> {
        enumerate_signed(n, |i| i % 2 == 0, |i| i % 2 == 1)
            .into_iter()
            .map(|(partition, signs)| OSignedPartition { partition, signs })
            .collect()
    }

    pub fn render(&self) -> String {
        render_signed(&self.partition, &self.signs)
    }

    pub fn parse(s: &str) -> Result<OSignedPartition> {
        let (partition, signs) = parse_signed(s, |i| i % 2 == 1)?;
        OSignedPartition::new(partition, signs)
    }
}

fn enumerate_signed(
    n: u32,
    even_mult_required: impl Fn(u32) -> bool,
    signed_size: impl Fn(u32) -> bool,
) -> Vec<(Partition, BTreeMap<u32, Sign>)> {
    let mut out = Vec::new();
    for p in Partition::enumerate(n) {
        let mults = p.multiplicities();
        if !signed_parity_ok(&even_mult_required, &mults) {
            continue;
        }
        let signed_sizes: Vec<u32> = mults.keys().copied().filter(|&i| signed_size(i)).collect();
        let combos = 1usize << signed_sizes.len();
        for mask in 0..combos {
            let signs: BTreeMap<u32, Sign> = signed_sizes
                .iter()
                .enumerate()
                .map(|(b, &i)| {
                    (i, if mask >> b & 1 == 0 { Sign::Plus } else { Sign::Minus })
                })
                .collect();
            out.push((p.clone(), signs));
        }
    }
    out
}

fn render_signed(p: &Partition, signs: &BTreeMap<u32, Sign>) -> String {
    let inner = p
        .parts()
        .iter()
        .map(|&part| match signs.get(&part) {
            Some(s) => format!("{}{}", s.symbol(), part),
            None => part.to_string(),
        })
        .collect::<Vec<_>>()
        .join(",");
    format!("[{inner}]")
}

fn parse_signed(
    s: &str,
    signed_size: impl Fn(u32) -> bool,
) -> Result<(Partition, BTreeMap<u32, Sign>)> {
    let body = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::domain(format!("signed partition '{s}' needs [..]")))?;
    let mut parts = Vec::new();
    let mut signs: BTreeMap<u32, Sign> = BTreeMap::new();
    if !body.trim().is_empty() {
        for tok in body.split(',') {
            let tok = tok.trim();
            let (sign, num) = match tok.chars().next() {
                Some('+') => (Some(Sign::Plus), &tok[1..]),
                Some('-') => (Some(Sign::Minus), &tok[1..]),
                _ => (None, tok),
            };
            let part: u32 = num
                .parse()
                .map_err(|_| Error::domain(format!("bad part '{tok}'")))?;
            if let Some(sg) = sign {
                match signs.get(&part) {
                    Some(&prev) if prev != sg => {
                        return Err(Error::domain(format!("conflicting signs for size {part}")));
                    }
                    _ => {
                        signs.insert(part, sg);
                    }
                }
            }
            parts.push(part);
        }
    }
    if !parts.windows(2).all(|w| w[0] >= w[1]) || parts.iter().any(|&p| p == 0) {
        return Err(Error::domain(format!("'{s}' is not weakly decreasing positive")));
    }
    let p = Partition::new(parts);
    for (&size, _) in &signs {
        if !signed_size(size) {
            return Err(Error::domain(format!("size {size} cannot carry a sign here")));
        }
    }
    // every signed-eligible size present must have received a sign
    for (&i, _) in p.multiplicities().iter() {
        if signed_size(i) && !signs.contains_key(&i) {
            return Err(Error::domain(format!("size {i} needs a sign")));
        }
    }
    Ok((p, signs))
}

/// Wall's symplectic centralizer factor B at z±1 for an odd prime power q:
/// `q^{cross + sq/2} * prod_{i odd} |Sp(m_i, q)| * prod_{i even} q^{m_i/2} |O^{s_i}(m_i, q)|`.
pub fn c_sp_signed(sp: &SpSignedPartition, q: u32) -> BigInt {
    assert!(q % 2 == 1, "symplectic signed quantities need odd q");
    let mults = sp.partition.multiplicities();
    let (cross, sq) = wall_exponents(&mults);
    let even_sum: u64 = mults
        .iter()
        .filter(|(&i, _)| i % 2 == 0)
        .map(|(_, &m)| m as u64)
        .sum();
    let twice_exp = 2 * cross + sq + even_sum;
    assert!(twice_exp % 2 == 0, "symplectic exponent must be integral");
    let mut acc = BigInt::from(q).pow((twice_exp / 2) as u32);
    for (&i, &mi) in &mults {
        if i % 2 == 1 {
            acc *= sp_order(mi, q);
        } else {
            acc *= o_order(sp.signs[&i], mi, q);
        }
    }
    acc
}

/// Wall's orthogonal centralizer factor B at z±1 for odd q:
/// `q^{cross + sq/2} * prod_{i odd} |O^{s_i}(m_i, q)| * prod_{i even} q^{-m_i/2} |Sp(m_i, q)|`.
pub fn c_o_signed(o: &OSignedPartition, q: u32) -> BigInt {
    assert!(q % 2 == 1, "orthogonal signed quantities need odd q");
    let mults = o.partition.multiplicities();
    let (cross, sq) = wall_exponents(&mults);
    let even_sum: u64 = mults
        .iter()
        .filter(|(&i, _)| i % 2 == 0)
        .map(|(_, &m)| m as u64)
        .sum();
    let twice_exp = (2 * cross + sq)
        .checked_sub(even_sum)
        .expect("orthogonal exponent is nonnegative");
    assert!(twice_exp % 2 == 0, "orthogonal exponent must be integral");
    let mut acc = BigInt::from(q).pow((twice_exp / 2) as u32);
    for (&i, &mi) in &mults {
        if i % 2 == 1 {
            acc *= o_order(o.signs[&i], mi, q);
        } else {
            acc *= sp_order(mi, q);
        }
    }
    acc
}

// --- Stong sums ---

/// `A_Q(j) = sum over partitions of j of 1/c_GL(lambda, Q)`, for j = 0..=max.
pub fn inverse_c_sums(base: &BigInt, max: u32) -> Vec<BigRational> {
    (0..=max)
        .map(|j| {
            Partition::enumerate(j)
                .iter()
                .map(|lam| BigRational::new(BigInt::one(), c_gl(lam, base)))
                .sum()
        })
        .collect()
}

/// Closed form for the same coefficients from the infinite-product side:
/// `[v^j] prod_{r>=1} 1/(1 - v/Q^r) = Q^{-j} / prod_{t=1}^{j} (1 - Q^{-t})`.
pub fn inverse_c_closed(base: &BigInt, max: u32) -> Vec<BigRational> {
    check_base(base);
    let inv = BigRational::new(BigInt::one(), base.clone());
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut denom = BigRational::one();
    let mut num = BigRational::one();
    out.push(BigRational::one());
    for j in 1..=max {
        num *= &inv;
        denom *= BigRational::one() - inv.pow(j as i32);
        out.push(&num / &denom);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::gl_order;
    use proptest::prelude::*;

    #[test]
    fn enumerate_counts() {
        assert_eq!(Partition::enumerate(0), vec![Partition::empty()]);
        assert_eq!(Partition::enumerate(4).len(), 5);
        assert_eq!(Partition::enumerate(10).len(), 42);
    }

    #[test]
    fn dual_and_stats() {
        let lam = Partition::new(vec![4, 2, 1]);
        assert_eq!(lam.dual().parts(), &[3, 2, 1, 1]);
        assert_eq!(lam.dual().dual(), lam);
        assert_eq!(lam.n_stat(), 0 * 4 + 1 * 2 + 2 * 1);
        // n(lambda) = sum_i C(lambda'_i, 2)
        let alt: u64 = lam
            .dual()
            .parts()
            .iter()
            .map(|&c| (c as u64) * (c as u64 - 1) / 2)
            .sum();
        assert_eq!(lam.n_stat(), alt);
        // d_i = cells in first i columns
        assert_eq!(lam.d_seq(), vec![3, 5, 6, 7]);
    }

    #[test]
    fn c_gl_basics() {
        let q = BigInt::from(2);
        assert_eq!(c_gl(&Partition::empty(), &q), BigInt::one());
        assert_eq!(c_gl(&Partition::single(1), &q), BigInt::one()); // q - 1
        assert_eq!(c_gl(&Partition::single(2), &q), BigInt::from(2)); // q^2 - q
        // identity class: c_gl(1^n, q) = |GL(n, q)|
        for n in 1..=5u32 {
            for qq in [2u32, 3] {
                let lam = Partition::new(vec![1; n as usize]);
                assert_eq!(c_gl(&lam, &BigInt::from(qq)), gl_order(n, qq));
            }
        }
    }

    #[test]
    fn rewrite_examples() {
        for (lam, q) in [
            (Partition::new(vec![2, 1]), 2),
            (Partition::empty(), 3),
            (Partition::new(vec![3, 3, 1]), 4),
        ] {
            let (a, bb, c) = c_gl_rewrites(&lam, &BigInt::from(q));
            assert_eq!(a, bb, "lambda={lam:?} q={q}");
            assert_eq!(BigRational::from(a), c);
        }
    }

    #[test]
    fn rewrites_agree_up_to_size_8() {
        for q in [2i64, 3, 4, 5, -2, -3] {
            let base = BigInt::from(q);
            for n in 0..=8u32 {
                for lam in Partition::enumerate(n) {
                    let (a, bb, c) = c_gl_rewrites(&lam, &base);
                    assert_eq!(a, bb, "lambda={lam:?} Q={q}");
                    assert_eq!(BigRational::from(a), c, "lambda={lam:?} Q={q}");
                }
            }
        }
    }

    #[test]
    fn unitary_base_identity() {
        // c_U(lambda, Q) = (-1)^{|lambda|} c_GL(lambda, -Q)
        for q in [2u32, 3, 9] {
            let base = BigInt::from(q);
            for n in 0..=6u32 {
                for lam in Partition::enumerate(n) {
                    let cu = c_unitary(&lam, &base);
                    let cgl_neg = c_gl(&lam, &-&base);
                    let sign = if lam.size() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    assert_eq!(cu, sign * cgl_neg, "lambda={lam:?} q={q}");
                    assert!(cu.is_positive());
                }
            }
        }
    }

    #[test]
    fn signed_enumeration_examples() {
        assert_eq!(SpSignedPartition::enumerate(2).len(), 3); // (1,1); (+2); (-2)
        assert_eq!(OSignedPartition::enumerate(1).len(), 2); // (+1); (-1)
        assert_eq!(SpSignedPartition::enumerate(1).len(), 0);
    }

    #[test]
    fn signed_enumeration_small_by_hand() {
        // O-signed of 2: the partition (2) is out (even part, odd multiplicity),
        // leaving (1,1) with a sign on size 1.
        let o2 = OSignedPartition::enumerate(2);
        let rendered: Vec<String> = o2.iter().map(|s| s.render()).collect();
        assert_eq!(rendered, vec!["[+1,+1]", "[-1,-1]"]);
        // Sp-signed of 4: (3,1) is out (odd parts with odd multiplicity).
        let sp4 = SpSignedPartition::enumerate(4);
        let rendered: Vec<String> = sp4.iter().map(|s| s.render()).collect();
        assert_eq!(
            rendered,
            vec![
                "[+4]", "[-4]", "[+2,+2]", "[-2,-2]", "[+2,1,1]", "[-2,1,1]",
                "[1,1,1,1]"
            ]
        );
    }

    #[test]
    fn symplectic_transvection_factor() {
        // lambda^pm = (+2) at q=3: B = 2q, class size |Sp(2,3)|/B = 4
        let sp = SpSignedPartition::parse("[+2]").unwrap();
        assert_eq!(c_sp_signed(&sp, 3), BigInt::from(6));
        let total = sp_order(2, 3);
        assert_eq!(total / c_sp_signed(&sp, 3), BigInt::from(4));
        let spm = SpSignedPartition::parse("[-2]").unwrap();
        assert_eq!(c_sp_signed(&spm, 3), BigInt::from(6));
        // empty datum
        let empty = SpSignedPartition::new(Partition::empty(), BTreeMap::new()).unwrap();
        assert_eq!(c_sp_signed(&empty, 3), BigInt::one());
    }

    #[test]
    fn orthogonal_symmetry_factors() {
        // O^+(3,3): reflection data (+1^2) at z-1 and (+1) at z+1 give
        // B = |O^+(2,3)| * |O^+(1,3)| = 4*2; class size 48/8 = 6;
        // the (-,-) pair gives 48/(8*2) = 3; 6 + 3 = 9 = q^{n-1}.
        let a = OSignedPartition::parse("[+1,+1]").unwrap();
        let b = OSignedPartition::parse("[+1]").unwrap();
        let am = OSignedPartition::parse("[-1,-1]").unwrap();
        let bm = OSignedPartition::parse("[-1]").unwrap();
        let oplus3 = o_order(Sign::Plus, 3, 3);
        let size_pp = &oplus3 / (c_o_signed(&a, 3) * c_o_signed(&b, 3));
        let size_mm = &oplus3 / (c_o_signed(&am, 3) * c_o_signed(&bm, 3));
        assert_eq!(size_pp, BigInt::from(6));
        assert_eq!(size_mm, BigInt::from(3));
        assert_eq!(size_pp + size_mm, BigInt::from(9));
    }

    #[test]
    fn stong_sums_match_closed_form() {
        for q in [2i64, 3, -2] {
            let base = BigInt::from(q);
            let lhs = inverse_c_sums(&base, 8);
            let rhs = inverse_c_closed(&base, 8);
            assert_eq!(lhs, rhs, "Q={q}");
        }
        // explicit: coefficient of u^1 at q=2 is 1/(q-1) = 1
        let s = inverse_c_sums(&BigInt::from(2), 1);
        assert_eq!(s[1], BigRational::one());
    }

    #[test]
    fn unipotent_mass_is_steinberg_count() {
        // sum over lambda of |GL(n,q)| / c_gl(lambda, q) = q^{n(n-1)}
        for q in [2u32, 3] {
            for n in 1..=5u32 {
                let total: BigRational = Partition::enumerate(n)
                    .iter()
                    .map(|lam| {
                        BigRational::new(gl_order(n, q), c_gl(lam, &BigInt::from(q)))
                    })
                    .sum();
                let expect = BigRational::from(BigInt::from(q).pow(n * (n - 1)));
                assert_eq!(total, expect, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn render_parse_signed() {
        let sp = SpSignedPartition::parse("[+2,1,1]").unwrap();
        assert_eq!(sp.render(), "[+2,1,1]");
        let o = OSignedPartition::parse("[-3,-3,+1]").unwrap();
        assert_eq!(o.render(), "[-3,-3,+1]");
        assert!(OSignedPartition::parse("[-2]").is_err()); // even part, odd mult
        assert!(SpSignedPartition::parse("[2]").is_err()); // missing sign
        assert!(SpSignedPartition::parse("[+1,1]").is_err()); // sign on odd size
        let e = SpSignedPartition::parse("[]").unwrap();
        assert_eq!(e.size(), 0);
    }

    proptest! {
        #[test]
        fn dual_involution_random(parts in proptest::collection::vec(1u32..12, 0..12)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts);
            prop_assert_eq!(lam.dual().dual(), lam);
        }

        #[test]
        fn d_seq_bookkeeping_random(parts in proptest::collection::vec(1u32..10, 0..14)) {
            // multiplicity-weighted column-count identity used in the proof of
            // the rewritings: sum_i m_i d_i = sum_i [i m_i^2 + 2 sum_{h<i} h m_h m_i]
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts);
            let mults = lam.multiplicities();
            let d = lam.d_seq();
            let lhs: u64 = mults
                .iter()
                .map(|(&i, &mi)| mi as u64 * d[i as usize - 1])
                .sum();
            let mut rhs = 0u64;
            for (&i, &mi) in &mults {
                let mut inner = i as u64 * mi as u64 * mi as u64;
                for (&h, &mh) in mults.range(..i) {
                    inner += 2 * h as u64 * mh as u64 * mi as u64;
                }
                rhs += inner;
            }
            prop_assert_eq!(lhs, rhs);
            // and the per-size decomposition of d_i itself
            for (&i, _) in &mults {
                let mut v = 0u64;
                for (&h, &mh) in &mults {
                    v += h.min(i) as u64 * mh as u64;
                }
                prop_assert_eq!(v, d[i as usize - 1]);
            }
        }

        #[test]
        fn rewrites_agree_random(parts in proptest::collection::vec(1u32..8, 0..8), q in 2i64..6) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts);
            let (a, b, c) = c_gl_rewrites(&lam, &BigInt::from(q));
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(BigRational::from(a), c);
        }
    }
}
