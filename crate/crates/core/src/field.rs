//! Scalar fields for the relation computations: exact rationals, or a prime
//! field `F_p` with a runtime modulus.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default modulus, the Mersenne prime `2⁶¹ − 1`.
pub const DEFAULT_MODULUS: u64 = (1 << 61) - 1;
/// Second modulus used for reproducibility runs, `2³¹ − 1`.
pub const SECOND_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must exceed 2^30 and be below 2^63")]
    ModulusOutOfRange(u64),
}

/// Field operations with an explicit context, so a prime modulus can be
/// chosen at runtime.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Send + Sync + Debug {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mode(&self) -> ScalarMode;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a - c·b`, the elimination step.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

/// How relation ranks are computed; serialized into certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarMode {
    Exact,
    Prime(u64),
}

impl ScalarMode {
    /// `"exact"` or the decimal modulus, as used in cache keys.
    pub fn tag(self) -> String {
        match self {
            ScalarMode::Exact => "exact".to_string(),
            ScalarMode::Prime(p) => p.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, FieldError> {
        if p <= 1 << 30 || p >= 1 << 63 {
            return Err(FieldError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric lift into `(−p/2, p/2]`, handy for reading small results.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_MODULUS }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
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

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| pow_mod(*a, self.p - 2, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mode(&self) -> ScalarMode {
        ScalarMode::Prime(self.p)
    }
}

/// Exact arithmetic over `Q`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mode(&self) -> ScalarMode {
        ScalarMode::Exact
    }
}

/// Renders a rational as `"n"` or `"n/d"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_MODULUS));
        assert!(is_prime(SECOND_MODULUS));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1 << 31));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(!is_prime(1));
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(
            PrimeField::new(1_000_000_007),
            Err(FieldError::ModulusOutOfRange(1_000_000_007))
        );
        assert_eq!(PrimeField::new((1 << 31) + 1), Err(FieldError::NotPrime((1 << 31) + 1)));
        assert!(PrimeField::new(SECOND_MODULUS).is_ok());
    }

    #[test]
    fn rational_formatting() {
        let f = Rationals;
        let half = f.inv(&f.from_i64(2)).unwrap();
        assert_eq!(format_rational(&half), "1/2");
        assert_eq!(format_rational(&f.from_i64(-3)), "-3");
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u64..DEFAULT_MODULUS, b in 0u64..DEFAULT_MODULUS, c in 0u64..DEFAULT_MODULUS) {
            let f = PrimeField::default();
            prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn from_i64_is_a_ring_map(x in -1_000_000i64..1_000_000, y in -1_000_000i64..1_000_000) {
            let f = PrimeField::new(SECOND_MODULUS).unwrap();
            prop_assert_eq!(f.from_i64(x * y), f.mul(&f.from_i64(x), &f.from_i64(y)));
            prop_assert_eq!(f.lift(f.from_i64(x)), x);
        }
    }
}
