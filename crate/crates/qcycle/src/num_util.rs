//! Small number-theoretic helpers: Moebius function, divisors, Euler totient,
//! multiplicative orders.

/// Moebius function of `n >= 1`.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut mu = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// All positive divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Prime factorization of `n >= 1` by trial division, as (prime, exponent) pairs.
pub fn factorize(n: u128) -> Vec<(u128, u32)> {
    assert!(n >= 1);
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler totient of `n >= 1`.
pub fn euler_phi(n: u128) -> u128 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Multiplicative order of `a` modulo `n`, for `gcd(a, n) = 1`, `n >= 1`.
pub fn mult_order(a: u128, n: u128) -> u128 {
    assert!(n >= 1);
    if n == 1 {
        return 1;
    }
    assert!(gcd(a % n, n) == 1, "a and n must be coprime");
    let phi = euler_phi(n);
    // The order divides phi(n); scan divisors of phi ascending.
    let mut divs = Vec::new();
    let mut d = 1u128;
    while d * d <= phi {
        if phi % d == 0 {
            divs.push(d);
            divs.push(phi / d);
        }
        d += 1;
    }
    divs.sort_unstable();
    for d in divs {
        if pow_mod(a % n, d, n) == 1 {
            return d;
        }
    }
    unreachable!("order must divide phi(n)")
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(mut base: u128, mut exp: u128, modulus: u128) -> u128 {
    let mut acc = 1u128;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Exact harmonic number `H_n` as a rational.
pub fn harmonic(n: u64) -> num_rational::BigRational {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let mut h = num_rational::BigRational::zero();
    for r in 1..=n {
        h += num_rational::BigRational::new(BigInt::from(1), BigInt::from(r));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_small() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(moebius(i as u64 + 1), m, "mu({})", i + 1);
        }
    }

    #[test]
    fn divisors_small() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(7), vec![1, 7]);
    }

    #[test]
    fn phi_small() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(10), 4);
        // phi(q^n + 1) shapes used by the average-order bounds
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(2u128.pow(4) + 1), 16);
        assert_eq!(euler_phi(2u128.pow(10) + 1), 800);
    }

    #[test]
    fn mult_order_small() {
        assert_eq!(mult_order(4, 3), 1);
        assert_eq!(mult_order(3, 4), 2);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(3, 7), 6);
        assert_eq!(mult_order(5, 1), 1);
    }
}
