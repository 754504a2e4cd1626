//! Prime fields F_p for odd primes below 2^63.

use std::fmt;

use super::poly::{add_mod, inv_mod, mul_mod, pow_mod, rat_mod};
use super::{Field, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: u64, p: u64) -> Self {
        Fp { value: value % p, p }
    }

    pub fn from_i64(n: i64, p: u64) -> Self {
        let r = n.rem_euclid(p as i64) as u64;
        Fp { value: r, p }
    }

    pub fn from_rational(c: &Rational, p: u64) -> Result<Self> {
        Ok(Fp { value: rat_mod(c, p)?, p })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn pow(self, e: u64) -> Self {
        Fp { value: pow_mod(self.value, e, self.p), p: self.p }
    }

    /// Legendre symbol of the element.
    pub fn legendre(self) -> i8 {
        legendre(self.value, self.p)
    }

    /// A square root, if one exists (Tonelli–Shanks).
    pub fn sqrt(self) -> Option<Self> {
        sqrt_mod(self.value, self.p).map(|v| Fp { value: v, p: self.p })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1, p: self.p }
    }
    fn int_like(&self, n: i64) -> Self {
        Fp::from_i64(n, self.p)
    }
    fn is_zero_elt(&self) -> bool {
        self.value == 0
    }
    fn plus(&self, o: &Self) -> Result<Self> {
        Ok(Fp { value: add_mod(self.value, o.value, self.p), p: self.p })
    }
    fn minus(&self, o: &Self) -> Result<Self> {
        Ok(Fp { value: add_mod(self.value, self.p - o.value, self.p), p: self.p })
    }
    fn times(&self, o: &Self) -> Result<Self> {
        Ok(Fp { value: mul_mod(self.value, o.value, self.p), p: self.p })
    }
    fn negated(&self) -> Self {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }
    fn inverse(&self) -> Result<Self> {
        inv_mod(self.value, self.p).map(|v| Fp { value: v, p: self.p }).ok_or(Error::DivisionByZero)
    }
}

/// Legendre symbol (a | p) for an odd prime p, via Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli–Shanks square root modulo an odd prime.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&n| is_prime(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_small() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(0, 5), 0);
    }

    #[test]
    fn square_roots_by_exhaustion() {
        for p in [5u64, 13, 17, 97, 101] {
            for a in 0..p {
                let brute = (0..p).any(|x| x * x % p == a);
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(r * r % p, a),
                    None => assert!(!brute, "{a} mod {p}"),
                }
            }
        }
    }

    #[test]
    fn inverse_and_zero() {
        let x = Fp::new(3, 7);
        assert_eq!(x.inverse().unwrap().value(), 5);
        assert_eq!(Fp::new(0, 7).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn primes() {
        assert_eq!(odd_primes(1, 20), vec![3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime((1u64 << 61) - 1));
    }
}
