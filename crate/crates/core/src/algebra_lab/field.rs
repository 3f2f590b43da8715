use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// The prime field `F_p`; elements are residues `0 ≤ v < p` stored as `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|k: &u32| k * k <= p).all(|k| p % k != 0)
}

impl Fp {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if is_prime(p) && p < 1 << 16 {
            Ok(Fp { p })
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    /// `a + b·c`.
    pub fn mul_add(&self, a: u32, b: u32, c: u32) -> u32 {
        (a + b * c) % self.p
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "zero has no inverse");
        let egcd = i64::from(a % self.p).extended_gcd(&i64::from(self.p));
        self.reduce(egcd.x)
    }

    pub fn scalar(&self, v: i64) -> FieldScalar {
        FieldScalar { value: self.reduce(v), p: self.p }
    }

    /// `p^n`, or `None` on overflow.
    pub fn count(&self, n: usize) -> Option<u64> {
        (self.p as u64).checked_pow(n.try_into().ok()?)
    }

    /// The vector of `F_p^n` with base-`p` digits of `index` (first
    /// coordinate least significant).
    pub fn vector(&self, n: usize, mut index: u64) -> Vec<u32> {
        let p = self.p as u64;
        (0..n)
            .map(|_| {
                let d = (index % p) as u32;
                index /= p;
                d
            })
            .collect()
    }
}

/// A residue modulo a prime, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldScalar {
    value: u32,
    p: u32,
}

impl FieldScalar {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> Fp {
        Fp { p: self.p }
    }

    pub fn inv(&self) -> FieldScalar {
        FieldScalar { value: self.field().inv(self.value), p: self.p }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldScalar {
            type Output = FieldScalar;

            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                assert_eq!(self.p, rhs.p, "scalars from different fields");
                FieldScalar { value: self.field().$method(self.value, rhs.value), p: self.p }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for FieldScalar {
    type Output = FieldScalar;

    fn neg(self) -> FieldScalar {
        FieldScalar { value: self.field().neg(self.value), p: self.p }
    }
}
