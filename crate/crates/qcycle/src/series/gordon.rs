//! Gordon's generalization of the Rogers-Ramanujan identities, checked
//! coefficientwise as truncated series in x, plus its centralizer-sum
//! corollary.
//!
//! Gordon (1 <= i <= k, k >= 2):
//!
//! `sum_{n_1..n_{k-1} >= 0} x^{N_1^2+..+N_{k-1}^2 + N_i+..+N_{k-1}}
//!     / ((x)_{n_1} ... (x)_{n_{k-1}})
//!   = prod_{r >= 1, r != 0, ±i mod 2k+1} 1/(1 - x^r)`
//!
//! with `N_j = n_j + ... + n_{k-1}` and `(x)_n = (1-x)...(1-x^n)`.
//!
//! Corollary (the i = k case rewritten through the centralizer quantity, with
//! x = 1/q):
//!
//! `prod_{r>=1} (1 - x^r) * sum_{lambda: lambda_1 < k} [1/c_GL(lambda, 1/x)]
//!   = prod_{r = 0, ±k mod 2k+1} (1 - x^r)`
//!
//! where `1/c_GL(lambda, 1/x) = x^{sum_i m_i d_i} prod_i 1/(x)_{m_i}` comes
//! straight from the defining product (each factor `Q^{d_i} - Q^{d_i-t}` is
//! `Q^{d_i}(1 - Q^{-t})`). The corollary is checked both as a series identity
//! and numerically at q in {2, 3} against the exact rational c_GL values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::{c_gl, Partition};
use crate::series::trunc::TruncSeries;

/// Both sides of the identity plus the verdict.
#[derive(Debug, Clone)]
pub struct GordonReport {
    pub lhs: TruncSeries,
    pub rhs: TruncSeries,
    pub equal: bool,
}

/// `1/(x)_n` truncated: product of geometric series for t = 1..n.
fn inv_pochhammer(n: u32, trunc: usize) -> TruncSeries {
    let mut acc = TruncSeries::one(trunc);
    for t in 1..=n {
        acc = acc.mul(&TruncSeries::geometric(&BigRational::one(), t as usize, trunc));
    }
    acc
}

fn gordon_lhs(k: u32, i: u32, trunc: usize) -> TruncSeries {
    // Enumerate (n_1, ..., n_{k-1}); N_1 = sum n_j satisfies N_1^2 <= trunc.
    let mut acc = TruncSeries::zero(trunc);
    let vars = (k - 1) as usize;
    let max_sum = (trunc as f64).sqrt() as u32 + 1;
    let mut ns = vec![0u32; vars];
    loop {
        // suffix sums N_j and the exponent
        let mut suffix = vec![0u32; vars + 1];
        for j in (0..vars).rev() {
            suffix[j] = suffix[j + 1] + ns[j];
        }
        if suffix[0] <= max_sum {
            let mut e: u64 = 0;
            for j in 0..vars {
                e += suffix[j] as u64 * suffix[j] as u64;
            }
            for j in (i as usize - 1)..vars {
                e += suffix[j] as u64;
            }
            if e <= trunc as u64 {
                let mut term = TruncSeries::monomial(BigRational::one(), e as usize, trunc);
                for &n in &ns {
                    if n > 0 {
                        term = term.mul(&inv_pochhammer(n, trunc));
                    }
                }
                acc = acc.add(&term);
            }
        }
        // advance the tuple; prune when the running sum is already too large
        let mut pos = 0;
        loop {
            if pos == vars {
                return acc;
            }
            ns[pos] += 1;
            if ns.iter().sum::<u32>() <= max_sum {
                break;
            }
            ns[pos] = 0;
            pos += 1;
        }
    }
}

fn gordon_rhs(k: u32, i: u32, trunc: usize) -> TruncSeries {
    let modulus = 2 * k + 1;
    let mut acc = TruncSeries::one(trunc);
    for r in 1..=trunc as u32 {
        let rm = r % modulus;
        if rm == 0 || rm == i % modulus || rm == (modulus - i % modulus) % modulus {
            continue;
        }
        acc = acc.mul(&TruncSeries::geometric(&BigRational::one(), r as usize, trunc));
    }
    acc
}

/// Check Gordon's identity for the given (k, i) to order x^trunc.
pub fn gordon_check(k: u32, i: u32, trunc: usize) -> Result<GordonReport> {
    if k < 2 || i == 0 || i > k {
        return Err(Error::domain("need k >= 2 and 1 <= i <= k"));
    }
    let lhs = gordon_lhs(k, i, trunc);
    let rhs = gordon_rhs(k, i, trunc);
    let equal = lhs == rhs;
    Ok(GordonReport { lhs, rhs, equal })
}

/// The x-series of `1/c_GL(lambda, 1/x)` from the defining product:
/// `x^{sum m_i d_i} prod_i 1/(x)_{m_i}`. Returns None when the leading
/// exponent already exceeds the truncation.
fn inv_c_series(lam: &Partition, trunc: usize) -> Option<TruncSeries> {
    let mults = lam.multiplicities();
    let d = lam.d_seq();
    let mut e: u64 = 0;
    for (&i, &mi) in &mults {
        e += mi as u64 * d[i as usize - 1];
    }
    if e > trunc as u64 {
        return None;
    }
    let mut acc = TruncSeries::monomial(BigRational::one(), e as usize, trunc);
    for (_, &mi) in &mults {
        acc = acc.mul(&inv_pochhammer(mi, trunc));
    }
    Some(acc)
}

/// Partitions with all parts < k whose series contribution can reach x^trunc:
/// the leading exponent is at least (number of parts)^2.
fn bounded_partitions(k: u32, trunc: usize) -> Vec<Partition> {
    let max_parts = (trunc as f64).sqrt() as u32 + 1;
    let mut out = Vec::new();
    // multiplicity vectors for sizes 1..k-1 with total parts <= max_parts
    let sizes: Vec<u32> = (1..k).collect();
    let mut mults = vec![0u32; sizes.len()];
    loop {
        let mut parts = Vec::new();
        for (idx, &size) in sizes.iter().enumerate().rev() {
            for _ in 0..mults[idx] {
                parts.push(size);
            }
        }
        out.push(Partition::new(parts));
        let mut pos = 0;
        loop {
            if pos == mults.len() {
                return out;
            }
            mults[pos] += 1;
            if mults.iter().sum::<u32>() <= max_parts {
                break;
            }
            mults[pos] = 0;
            pos += 1;
        }
    }
}

/// The corollary in centralizer form, verified two ways: as an exact series
/// identity to x^trunc, and numerically at the given q values using the
/// rational c_GL itself (both sides then agree to within the truncation tail,
/// bounded by 8 q^{-trunc}).
pub fn gordon_corollary_check(k: u32, trunc: usize, qs: &[u32]) -> Result<bool> {
    if k < 2 {
        return Err(Error::domain("need k >= 2"));
    }
    let lams = bounded_partitions(k, trunc);
    // series route
    let mut sum = TruncSeries::zero(trunc);
    for lam in &lams {
        if let Some(s) = inv_c_series(lam, trunc) {
            sum = sum.add(&s);
        }
    }
    let mut all_poch = TruncSeries::one(trunc);
    for r in 1..=trunc as u32 {
        let mut f = TruncSeries::one(trunc);
        f.set_coeff(r as usize, -BigRational::one());
        all_poch = all_poch.mul(&f);
    }
    let lhs = all_poch.mul(&sum);
    let modulus = 2 * k + 1;
    let mut rhs = TruncSeries::one(trunc);
    for r in 1..=trunc as u32 {
        let rm = r % modulus;
        if rm == 0 || rm == k || rm == modulus - k {
            let mut f = TruncSeries::one(trunc);
            f.set_coeff(r as usize, -BigRational::one());
            rhs = rhs.mul(&f);
        }
    }
    if lhs != rhs {
        return Ok(false);
    }
    // numeric route at x = 1/q through the actual c_GL values
    for &q in qs {
        let base = BigInt::from(q);
        let mut num_sum = BigRational::zero();
        for lam in &lams {
            num_sum += BigRational::new(BigInt::one(), c_gl(lam, &base));
        }
        let inv_q = BigRational::new(BigInt::one(), base.clone());
        let mut head = BigRational::one();
        for r in 1..=trunc as u32 {
            head *= BigRational::one() - inv_q.pow(r as i32);
        }
        let lhs_num = head * num_sum;
        let mut rhs_num = BigRational::one();
        for r in 1..=trunc as u32 {
            let rm = r % modulus;
            if rm == 0 || rm == k || rm == modulus - k {
                rhs_num *= BigRational::one() - inv_q.pow(r as i32);
            }
        }
        let tol = inv_q.pow(trunc as i32) * BigRational::from(BigInt::from(8));
        if (lhs_num - rhs_num).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(x)_n = (1-x)(1-x^2)...(1-x^n)` truncated.
    fn pochhammer(n: u32, trunc: usize) -> TruncSeries {
        let mut acc = TruncSeries::one(trunc);
        for t in 1..=n.min(trunc as u32) {
            let mut f = TruncSeries::one(trunc);
            f.set_coeff(t as usize, -BigRational::one());
            acc = acc.mul(&f);
        }
        acc
    }

    #[test]
    fn pochhammer_inverse_roundtrip() {
        let t = 12;
        for n in 0..=4u32 {
            let prod = pochhammer(n, t).mul(&inv_pochhammer(n, t));
            assert_eq!(prod, TruncSeries::one(t));
        }
    }

    #[test]
    fn rogers_ramanujan_classic() {
        // k = 2, i = 2: partitions counted by parts != 0, ±2 mod 5
        let rep = gordon_check(2, 2, 20).unwrap();
        assert!(rep.equal);
        // coefficient of x^5 on both sides is 2: {1^5} and {4,1}
        assert_eq!(rep.rhs.coeff(5), &BigRational::from(BigInt::from(2)));
        assert_eq!(rep.lhs.coeff(5), &BigRational::from(BigInt::from(2)));
        // k = 2, i = 1: constant term 1
        let rep = gordon_check(2, 1, 15).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.lhs.coeff(0), &BigRational::one());
    }

    #[test]
    fn gordon_family_small() {
        for k in [2u32, 3] {
            for i in 1..=k {
                let rep = gordon_check(k, i, 20).unwrap();
                assert!(rep.equal, "k={k} i={i}");
            }
        }
        let rep = gordon_check(3, 3, 20).unwrap();
        assert!(rep.equal);
    }

    #[test]
    fn corollary_small() {
        for k in [2u32, 3] {
            assert!(gordon_corollary_check(k, 20, &[2, 3]).unwrap(), "k={k}");
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(gordon_check(1, 1, 10).is_err());
        assert!(gordon_check(3, 4, 10).is_err());
        assert!(gordon_check(3, 0, 10).is_err());
    }
}
