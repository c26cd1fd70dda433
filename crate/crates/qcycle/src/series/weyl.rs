//! Factorization-type distributions and the comparison with symmetric-group
//! cycle types.
//!
//! The factorization type of a matrix records a_m = number of degree-m
//! irreducible factors of its characteristic polynomial, counted with
//! multiplicity; types at dimension n are partitions of n. For a uniform
//! element of GL(n,q) the probability of a type factors over degrees:
//!
//! `P(type) = prod_m [v^{a_m}] ( sum_j A_m(j) v^j )^{I_{m,q}}`
//!
//! where `A_m(j) = sum over partitions of j of 1/c_GL(lambda, q^m)` is the
//! mass a single degree-m slot puts on multiplicity j. As q grows this
//! distribution approaches the cycle-type distribution of a uniform
//! permutation, `1/prod_m (a_m! m^{a_m})`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::partition::{inverse_c_sums, Partition};
use crate::poly::irreducible_count;

/// `[v^a] (sum_j A(j) v^j)^count` for a = 0..=max, dense exact arithmetic.
fn slot_power_coeffs(sums: &[BigRational], count: &BigInt, max: usize) -> Vec<BigRational> {
    let count = count.to_biguint().expect("counts are nonnegative");
    let mut acc = vec![BigRational::zero(); max + 1];
    acc[0] = BigRational::one();
    if count.is_zero() {
        return acc;
    }
    let mul = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); max + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().take(max + 1 - i).enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    };
    let base: Vec<BigRational> = sums[..=max.min(sums.len() - 1)].to_vec();
    for i in (0..count.bits()).rev() {
        acc = mul(&acc, &acc);
        if count.bit(i) {
            acc = mul(&acc, &base);
        }
    }
    acc
}

/// Exact distribution of factorization types for GL(n,q): one entry per
/// partition of n (the partition with a_m parts of size m), probabilities
/// summing to one.
pub fn factorization_type_distribution(
    n: u32,
    q: u32,
) -> Result<Vec<(Partition, BigRational)>> {
    // per-degree slot coefficients B_m(a)
    let mut per_degree: BTreeMap<u32, Vec<BigRational>> = BTreeMap::new();
    for m in 1..=n {
        let base = BigInt::from(q).pow(m);
        let sums = inverse_c_sums(&base, n / m);
        let count = irreducible_count(q as u64, m, true);
        per_degree.insert(m, slot_power_coeffs(&sums, &count, (n / m) as usize));
    }
    let mut out = Vec::new();
    for typ in Partition::enumerate(n) {
        let mults = typ.multiplicities();
        let mut p = BigRational::one();
        for (&m, &am) in &mults {
            p *= per_degree[&m][am as usize].clone();
        }
        // degrees not present contribute their a_m = 0 coefficient, which is 1
        out.push((typ, p));
    }
    Ok(out)
}

/// Probability that a uniform permutation has the given cycle type:
/// `1 / prod_m (a_m! m^{a_m})`.
pub fn symmetric_cycle_type_prob(typ: &Partition) -> BigRational {
    let mut denom = BigInt::one();
    for (&m, &am) in typ.multiplicities().iter() {
        let mut fact = BigInt::one();
        for t in 1..=am as u64 {
            fact *= BigInt::from(t);
        }
        denom *= fact * BigInt::from(m).pow(am);
    }
    BigRational::new(BigInt::one(), denom)
}

/// Total-variation distance between the GL(n,q) factorization-type
/// distribution and the S_n cycle-type distribution.
pub fn weyl_limit_distance(n: u32, q: u32) -> Result<BigRational> {
    let dist = factorization_type_distribution(n, q)?;
    let mut tv = BigRational::zero();
    for (typ, p) in &dist {
        let s = symmetric_cycle_type_prob(typ);
        let d = p - &s;
        tv += if d < BigRational::zero() { -d } else { d };
    }
    Ok(tv / BigRational::from(BigInt::from(2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_sums_to_one() {
        for (n, q) in [(1u32, 2u32), (2, 2), (3, 2), (2, 3), (3, 3), (4, 3)] {
            let dist = factorization_type_distribution(n, q).unwrap();
            let total: BigRational = dist.iter().map(|(_, p)| p.clone()).sum();
            assert_eq!(total, BigRational::one(), "n={n} q={q}");
        }
    }

    #[test]
    fn irreducible_quadratic_mass_at_n2_q3() {
        // P(characteristic polynomial irreducible) = 3/8 for GL(2,3)
        let dist = factorization_type_distribution(2, 3).unwrap();
        let p = dist
            .iter()
            .find(|(t, _)| t.parts() == [2])
            .map(|(_, p)| p.clone())
            .unwrap();
        assert_eq!(p, BigRational::new(BigInt::from(3), BigInt::from(8)));
        // against the S_2 value 1/2
        assert_eq!(
            symmetric_cycle_type_prob(&Partition::new(vec![2])),
            BigRational::new(BigInt::one(), BigInt::from(2))
        );
    }

    #[test]
    fn s_n_cycle_types_sum_to_one() {
        for n in 1..=7u32 {
            let total: BigRational = Partition::enumerate(n)
                .iter()
                .map(symmetric_cycle_type_prob)
                .sum();
            assert_eq!(total, BigRational::one(), "n={n}");
        }
    }

    #[test]
    fn single_type_at_n1() {
        assert!(weyl_limit_distance(1, 2).unwrap().is_zero());
        assert!(weyl_limit_distance(1, 101).unwrap().is_zero());
    }

    #[test]
    fn distance_decreases_in_q() {
        let d3 = weyl_limit_distance(2, 3).unwrap();
        let d101 = weyl_limit_distance(2, 101).unwrap();
        assert!(d101 < d3);
    }
}
