use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Which coefficient ring a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    PrimeField(u64),
    Integers,
}

impl RingSpec {
    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Checks the invariant that a prime field really has prime order.
    pub fn validate(&self) -> Result<(), ExactError> {
        if let RingSpec::PrimeField(p) = self {
            if !is_prime(*p) {
                return Err(ExactError::NotPrime(*p));
            }
            if *p >= 1 << 31 {
                return Err(ExactError::PrimeTooLarge(*p));
            }
        }
        Ok(())
    }

    /// Runs `v` with the concrete ring named by this spec.
    pub fn visit<V: RingVisitor>(&self, v: V) -> V::Output {
        match *self {
            RingSpec::Rationals => v.visit(Rationals),
            RingSpec::Integers => v.visit(Integers),
            RingSpec::PrimeField(p) => v.visit(PrimeField::new(p)),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = ExactError;

    /// Accepts `Q`, `Z`, and `F<p>` (also `Fp`-style with a prime `p`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let spec = match t {
            "Q" | "q" => RingSpec::Rationals,
            "Z" | "z" => RingSpec::Integers,
            _ => {
                let digits = t
                    .strip_prefix('F')
                    .or_else(|| t.strip_prefix('f'))
                    .ok_or_else(|| ExactError::UnknownRing(t.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| ExactError::UnknownRing(t.to_string()))?;
                RingSpec::PrimeField(p)
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Callback used by [`RingSpec::visit`] to monomorphize over the active ring.
pub trait RingVisitor {
    type Output;
    fn visit<R: Ring>(self, ring: R) -> Self::Output;
}

/// An exact commutative ring: ℚ, 𝔽_p, or ℤ.
pub trait Ring: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> RingSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `None` when the denominator is not invertible in the ring.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Inverse of a unit, `None` otherwise.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Lift to ℚ (ℤ and ℚ only).
    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational>;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_field(&self) -> bool {
        self.spec().is_field()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += c * x`
    fn add_mul_assign(&self, acc: &mut Self::Elem, c: &Self::Elem, x: &Self::Elem) {
        let t = self.mul(c, x);
        *acc = self.add(acc, &t);
    }

    fn sign(&self, negative: bool) -> Self::Elem {
        if negative {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Integers;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < 1 << 31);
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = v.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits")
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return None;
        }
        let num = self.reduce_bigint(q.numer());
        Some(num * self.pow(den, self.p - 2) % self.p)
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
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn to_rational(&self, _a: &u64) -> Option<BigRational> {
        None
    }
    fn render(&self, a: &u64) -> String {
        // Balanced representative reads better in dumps: p-1 prints as -1.
        if self.p > 2 && *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn add_mul_assign(&self, acc: &mut u64, c: &u64, x: &u64) {
        *acc = (*acc + c * x % self.p) % self.p;
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
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
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigInt> {
        if q.is_integer() {
            Some(q.to_integer())
        } else {
            None
        }
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn to_rational(&self, a: &BigInt) -> Option<BigRational> {
        Some(BigRational::from_integer(a.clone()))
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn add_mul_assign(&self, acc: &mut BigInt, c: &BigInt, x: &BigInt) {
        *acc += c * x;
    }
}
