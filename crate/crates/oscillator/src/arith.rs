//! Exact arithmetic in `F_p` and its quadratic extension, plus the small
//! number-theoretic searches the rest of the crate leans on: Legendre symbols,
//! primitive roots, square roots of `-1`, and discrete-log tables.
//!
//! Moduli are odd primes `p >= 5` below `2^31`, so every product of reduced
//! residues fits in a `u64` without overflow.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A validated odd prime modulus `5 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p >= 1 << 31 {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::PrimeTooSmall(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// The residue `(p+1)/2`, i.e. the inverse of 2 mod p.
    #[inline]
    pub fn half(self) -> u64 {
        (self.0 + 1) / 2
    }

    pub fn elem(self, value: u64) -> FpElem {
        FpElem::new(value, self)
    }

    pub fn elem_i64(self, value: i64) -> FpElem {
        FpElem::from_i64(value, self)
    }
}

impl core::fmt::Display for Prime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin; the witness set {2, 3, 5, 7} is exact for all
/// n < 3_215_031_751, which covers the 2^31 modulus cap.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
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

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    // a, b < 2^31 ensures the product fits in u64.
    (a * b) % m
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An element of `F_p`, stored as its least non-negative residue.
///
/// Arithmetic between elements of different fields panics; that is a
/// programming error, not an input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpElem {
    value: u64,
    prime: Prime,
}

impl FpElem {
    pub fn new(value: u64, prime: Prime) -> FpElem {
        FpElem { value: value % prime.get(), prime }
    }

    pub fn from_i64(value: i64, prime: Prime) -> FpElem {
        let p = prime.get() as i64;
        FpElem { value: value.rem_euclid(p) as u64, prime }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn zero(prime: Prime) -> FpElem {
        FpElem { value: 0, prime }
    }

    pub fn one(prime: Prime) -> FpElem {
        FpElem { value: 1, prime }
    }

    pub fn pow(self, exp: u64) -> FpElem {
        FpElem { value: pow_mod(self.value, exp, self.prime.get()), prime: self.prime }
    }

    pub fn inv(self) -> Result<FpElem> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.prime.get() - 2))
    }

    /// `self / 2`, always defined since p is odd.
    pub fn half(self) -> FpElem {
        self * FpElem::new(self.prime.half(), self.prime)
    }

    /// Signed representative in `(-p/2, p/2]`; handy for display and tests.
    pub fn signed(self) -> i64 {
        let p = self.prime.get();
        if self.value > p / 2 {
            self.value as i64 - p as i64
        } else {
            self.value as i64
        }
    }
}

impl core::ops::Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        FpElem::new(self.value + rhs.value, self.prime)
    }
}

impl core::ops::Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        FpElem::new(self.value + self.prime.get() - rhs.value, self.prime)
    }
}

impl core::ops::Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        FpElem { value: mul_mod(self.value, rhs.value, self.prime.get()), prime: self.prime }
    }
}

impl core::ops::Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem::new(self.prime.get() - self.value, self.prime)
    }
}

impl core::fmt::Display for FpElem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Legendre symbol `(a/p)` as `-1, 0, 1`, via Euler's criterion.
pub fn legendre(a: FpElem) -> i32 {
    if a.is_zero() {
        return 0;
    }
    let e = a.pow((a.prime().get() - 1) / 2);
    if e.value() == 1 {
        1
    } else {
        -1
    }
}

/// Distinct prime factors of `n`, by trial division (n stays below 2^32).
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

/// The inverse of `a` mod `n` (any modulus, not just prime) by extended
/// Euclid; `None` when `gcd(a, n) != 1`.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    assert!(n > 1, "modulus must exceed 1");
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

/// True when `x^order = 1` and no proper divisor of `order` kills `x`.
/// `one` and `mul`-closure are supplied by the caller through `pow`.
pub(crate) fn has_full_order<T, F>(pow: F, order: u64, is_identity: impl Fn(&T) -> bool) -> bool
where
    F: Fn(u64) -> T,
{
    if !is_identity(&pow(order)) {
        return false;
    }
    prime_factors(order).into_iter().all(|q| !is_identity(&pow(order / q)))
}

/// Smallest primitive root mod p.
pub fn primitive_root(p: Prime) -> FpElem {
    let order = p.get() - 1;
    for g in 2..p.get() {
        let g = p.elem(g);
        if has_full_order(|e| g.pow(e), order, |x: &FpElem| x.value() == 1) {
            return g;
        }
    }
    unreachable!("every prime field has a primitive root")
}

/// Smallest quadratic non-residue mod p.
pub fn quadratic_nonresidue(p: Prime) -> FpElem {
    for d in 2..p.get() {
        let d = p.elem(d);
        if legendre(d) == -1 {
            return d;
        }
    }
    unreachable!("half of F_p^x are non-residues")
}

/// The square root of `-1 (mod p)` with the smaller representative, for
/// `p = 1 (mod 4)`.
pub fn sqrt_minus_one(p: Prime) -> Result<FpElem> {
    if p.get() % 4 != 1 {
        return Err(Error::NoSquareRootOfMinusOne(p.get()));
    }
    let i = primitive_root(p).pow((p.get() - 1) / 4);
    let other = -i;
    Ok(if i.value() <= other.value() { i } else { other })
}

/// `a + b sqrt(delta)` with `delta` a fixed non-square; enough structure to
/// enumerate norm-one elements and check orders in `F_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2Elem {
    pub a: FpElem,
    pub b: FpElem,
    delta: FpElem,
}

impl Fp2Elem {
    pub fn new(a: FpElem, b: FpElem, delta: FpElem) -> Fp2Elem {
        Fp2Elem { a, b, delta }
    }

    pub fn one(p: Prime, delta: FpElem) -> Fp2Elem {
        Fp2Elem { a: FpElem::one(p), b: FpElem::zero(p), delta }
    }

    pub fn is_one(self) -> bool {
        self.a.value() == 1 && self.b.is_zero()
    }

    /// The Galois norm `a^2 - delta b^2`.
    pub fn norm(self) -> FpElem {
        self.a * self.a - self.delta * self.b * self.b
    }

    pub fn mul(self, rhs: Fp2Elem) -> Fp2Elem {
        debug_assert_eq!(self.delta, rhs.delta);
        Fp2Elem {
            a: self.a * rhs.a + self.delta * self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a,
            delta: self.delta,
        }
    }

    pub fn pow(self, mut exp: u64) -> Fp2Elem {
        let mut base = self;
        let mut acc = Fp2Elem::one(self.a.prime(), self.delta);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            exp >>= 1;
        }
        acc
    }
}

/// Full discrete-log table for `F_p^x` with respect to the smallest
/// primitive root. Memory is `O(p)`; the build walks the cyclic group once.
#[derive(Debug, Clone)]
pub struct DlogTable {
    generator: FpElem,
    log: Vec<u64>,
}

impl DlogTable {
    pub fn build(p: Prime) -> DlogTable {
        let g = primitive_root(p);
        let mut log = alloc::vec![0u64; p.as_usize()];
        let mut x = FpElem::one(p);
        for m in 0..p.get() - 1 {
            log[x.value() as usize] = m;
            x = x * g;
        }
        DlogTable { generator: g, log }
    }

    pub fn generator(&self) -> FpElem {
        self.generator
    }

    /// Exponent `m` with `generator^m = x`; errors on `x = 0`.
    pub fn log_of(&self, x: FpElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[x.value() as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(5).is_ok());
        assert!(Prime::new(10009).is_ok());
        assert_eq!(Prime::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Prime::new(3), Err(Error::PrimeTooSmall(3)));
        assert_eq!(Prime::new(2), Err(Error::PrimeTooSmall(2)));
        assert_eq!(Prime::new(1 << 31), Err(Error::PrimeTooLarge(1 << 31)));
        assert_eq!(Prime::new(91), Err(Error::NotPrime(91))); // 7 * 13
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime(n), slow(n), "n = {n}");
        }
        // A few larger known cases.
        assert!(is_prime(10007));
        assert!(is_prime(10009));
        assert!(is_prime(2147483647)); // 2^31 - 1
        assert!(!is_prime(10007 * 3));
        assert!(!is_prime(65537 * 641));
    }

    #[test]
    fn field_ops_small_cases() {
        let p5 = p(5);
        let a = p5.elem(3);
        let b = p5.elem(4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((a * b).value(), 2);
        assert_eq!((-a).value(), 2);
        assert_eq!(a.inv().unwrap().value(), 2);
        assert_eq!(FpElem::zero(p5).inv(), Err(Error::DivisionByZero));
        assert_eq!(p5.elem_i64(-1).value(), 4);
        assert_eq!(p5.elem(3).half().value(), 4); // 4 * 2 = 8 = 3
    }

    #[test]
    fn half_and_quarter_scalars() {
        for q in [5u64, 7, 13, 17, 19, 101] {
            let pq = p(q);
            let two = pq.elem(2);
            let four = pq.elem(4);
            assert_eq!((pq.elem(1).half() * two).value(), 1);
            assert_eq!((pq.elem(1).half().half() * four).value(), 1);
        }
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for q in [5u64, 7, 11, 13, 17, 19, 23] {
            let pq = p(q);
            let squares: alloc::collections::BTreeSet<u64> =
                (1..q).map(|x| (x * x) % q).collect();
            for a in 0..q {
                let expect = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(pq.elem(a)), expect, "a = {a} mod {q}");
            }
        }
    }

    #[test]
    fn primitive_root_known_values() {
        assert_eq!(primitive_root(p(5)).value(), 2);
        assert_eq!(primitive_root(p(7)).value(), 3);
        assert_eq!(primitive_root(p(13)).value(), 2);
        assert_eq!(primitive_root(p(41)).value(), 6);
        assert_eq!(primitive_root(p(10009)).value(), 11);
    }

    #[test]
    fn primitive_root_generates_everything() {
        for q in [5u64, 7, 13, 29, 101] {
            let pq = p(q);
            let g = primitive_root(pq);
            let mut seen = alloc::collections::BTreeSet::new();
            let mut x = FpElem::one(pq);
            for _ in 0..q - 1 {
                seen.insert(x.value());
                x = x * g;
            }
            assert_eq!(seen.len() as u64, q - 1);
        }
    }

    #[test]
    fn sqrt_minus_one_squares_to_minus_one() {
        assert_eq!(sqrt_minus_one(p(5)).unwrap().value(), 2);
        assert_eq!(sqrt_minus_one(p(13)).unwrap().value(), 5);
        assert_eq!(sqrt_minus_one(p(17)).unwrap().value(), 4);
        for q in [5u64, 13, 17, 29, 101, 10009] {
            let pq = p(q);
            let i = sqrt_minus_one(pq).unwrap();
            assert_eq!((i * i).value(), q - 1);
            assert!(i.value() <= (-i).value());
        }
        assert_eq!(sqrt_minus_one(p(7)), Err(Error::NoSquareRootOfMinusOne(7)));
        assert_eq!(sqrt_minus_one(p(11)), Err(Error::NoSquareRootOfMinusOne(11)));
    }

    #[test]
    fn nonresidue_is_smallest() {
        assert_eq!(quadratic_nonresidue(p(5)).value(), 2);
        assert_eq!(quadratic_nonresidue(p(7)).value(), 3);
        assert_eq!(quadratic_nonresidue(p(17)).value(), 3);
        for q in [5u64, 7, 13, 17, 29] {
            let pq = p(q);
            let d = quadratic_nonresidue(pq);
            assert_eq!(legendre(d), -1);
            for smaller in 2..d.value() {
                assert_eq!(legendre(pq.elem(smaller)), 1);
            }
        }
    }

    #[test]
    fn fp2_norm_is_multiplicative() {
        let pq = p(7);
        let delta = quadratic_nonresidue(pq);
        let x = Fp2Elem::new(pq.elem(2), pq.elem(5), delta);
        let y = Fp2Elem::new(pq.elem(3), pq.elem(1), delta);
        assert_eq!(x.mul(y).norm(), x.norm() * y.norm());
        assert_eq!(x.pow(3).norm(), x.norm().pow(3));
        assert!(Fp2Elem::one(pq, delta).is_one());
    }

    #[test]
    fn dlog_round_trips() {
        for q in [5u64, 13, 101] {
            let pq = p(q);
            let table = DlogTable::build(pq);
            let g = table.generator();
            assert_eq!(g, primitive_root(pq));
            for x in 1..q {
                let m = table.log_of(pq.elem(x)).unwrap();
                assert_eq!(g.pow(m).value(), x);
            }
            assert_eq!(table.log_of(FpElem::zero(pq)), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn inverses_mod_composite() {
        for n in [4u64, 12, 100, 2310] {
            for a in 1..n {
                match inv_mod(a, n) {
                    Some(inv) => {
                        assert_eq!(a * inv % n, 1, "a={a}, n={n}");
                        assert!(inv < n);
                    }
                    None => assert_ne!(gcd(a, n), 1, "a={a}, n={n}"),
                }
            }
        }
        assert_eq!(inv_mod(0, 5), None);
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}
