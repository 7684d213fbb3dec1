//! Exact ground fields: prime fields `F_p` and the rationals.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A field whose elements are manipulated through a (cheap, copyable) context value.
///
/// Every algorithm in the crate is generic over this trait; arithmetic is always exact.
pub trait Field: Copy + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// A pseudo-random element; for infinite fields a small integer.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Short human-readable name (`F_2`, `Q`).
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Number of elements, when finite.
    fn order(&self) -> Option<u64> {
        match self.characteristic() {
            0 => None,
            p => Some(p),
        }
    }
}

/// The prime field `F_p`, `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    /// `F_2`, the default field of the enumerable test oracles.
    pub fn gf2() -> Self {
        PrimeField { p: 2 }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `F_p`, stored reduced in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fp(pub u32);

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    #[inline]
    fn zero(&self) -> Fp {
        Fp(0)
    }
    #[inline]
    fn one(&self) -> Fp {
        Fp(1)
    }
    #[inline]
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }
    #[inline]
    fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }
    #[inline]
    fn neg(&self, a: &Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }
    #[inline]
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }
    fn inv(&self, a: &Fp) -> Option<Fp> {
        if a.0 == 0 {
            return None;
        }
        // a^(p-2)
        let mut base = a.0 as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        let m = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Some(Fp(acc as u32))
    }
    #[inline]
    fn is_zero(&self, a: &Fp) -> bool {
        a.0 == 0
    }
    fn from_i64(&self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.p as i64) as u32)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn elements(&self) -> Option<Vec<Fp>> {
        Some((0..self.p).map(Fp).collect())
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp {
        Fp(rng.gen_range(0..self.p))
    }
    fn name(&self) -> String {
        alloc::format!("F_{}", self.p)
    }
}

/// The field of rationals with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Rationals;

/// Element of `Q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rat(pub BigRational);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat(BigRational::zero())
    }
    fn one(&self) -> Rat {
        Rat(BigRational::one())
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        Rat(&a.0 + &b.0)
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        Rat(&a.0 - &b.0)
    }
    fn neg(&self, a: &Rat) -> Rat {
        Rat(-&a.0)
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        Rat(&a.0 * &b.0)
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.0.is_zero() {
            None
        } else {
            Some(Rat(a.0.recip()))
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.0.is_zero()
    }
    fn from_i64(&self, v: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn elements(&self) -> Option<Vec<Rat>> {
        None
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rat {
        self.from_i64(rng.gen_range(-3i64..=3))
    }
    fn name(&self) -> String {
        String::from("Q")
    }
}

impl Rat {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_moduli() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let x = Fp(a);
            let y = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &y), f.one());
        }
        assert!(f.inv(&Fp(0)).is_none());
        assert_eq!(f.from_i64(-1), Fp(6));
    }

    #[test]
    fn rationals_are_exact() {
        let q = Rationals;
        let third = Rat::new(1, 3);
        let sum = q.add(&q.add(&third, &third), &third);
        assert!(q.is_one(&sum));
        assert_eq!(alloc::format!("{}", Rat::new(-2, 4)), "-1/2");
    }
}
