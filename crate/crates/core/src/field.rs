//! Prime field arithmetic.
//!
//! Every value in the engine is an element of F_p for a prime p. Arithmetic
//! is exact; there is no floating point anywhere in this crate. `Fp` is a
//! lightweight field descriptor passed by copy; element values are `u32`
//! residues kept in `0..p` by construction.

use crate::error::{Error, Result};

/// A prime field F_p, 2 <= p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p > (1 << 31) - 1 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(self, x: i64) -> u32 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat: a^(p-2). Panics on zero.
    #[inline]
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn scalar(self, value: u32) -> Scalar {
        Scalar {
            value: value % self.p,
            field: self,
        }
    }

    /// All field elements, in order. Only sensible for small p.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

/// A residue together with its field. Convenience wrapper for public
/// interfaces and axiom tests; inner loops work on raw `u32` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: Fp,
}

impl Scalar {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Fp {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Scalar) -> Fp {
        assert_eq!(
            self.field, other.field,
            "scalar arithmetic across different prime fields"
        );
        self.field
    }

    pub fn inv(self) -> Scalar {
        self.field.scalar(self.field.inv(self.value))
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        let f = self.same_field(rhs);
        f.scalar(f.add(self.value, rhs.value))
    }
}

impl std::ops::Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        let f = self.same_field(rhs);
        f.scalar(f.sub(self.value, rhs.value))
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let f = self.same_field(rhs);
        f.scalar(f.mul(self.value, rhs.value))
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.field.scalar(self.field.neg(self.value))
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        for n in [0u32, 1, 4, 6, 9, 15, 2147483647 - 1] {
            assert!(Fp::new(n).is_err(), "{n} accepted");
        }
        for n in [2u32, 3, 5, 7, 31, 2147483647] {
            assert!(Fp::new(n).is_ok(), "{n} rejected");
        }
    }

    #[test]
    fn field_axioms_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3, 5, 65521] {
            let f = Fp::new(p).unwrap();
            for _ in 0..200 {
                let a = f.scalar(rng.gen_range(0..p));
                let b = f.scalar(rng.gen_range(0..p));
                let c = f.scalar(rng.gen_range(0..p));
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * (b + c), a * b + a * c);
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!(a + (-a), f.scalar(0));
                assert_eq!(a * f.scalar(1), a);
                if !b.is_zero() {
                    assert_eq!(b * b.inv(), f.scalar(1));
                }
            }
        }
    }
}
