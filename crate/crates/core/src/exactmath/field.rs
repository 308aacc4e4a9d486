//! Exact scalars: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field: Q or F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// `0` selects Q, anything else must be a prime below 2^31.
    pub fn from_characteristic(p: u64) -> Result<Field> {
        if p == 0 {
            return Ok(Field::Rational);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElem::Modular {
                residue: n.rem_euclid(p as i64) as u64,
                prime: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElem::Modular {
                    residue: r.to_u64().expect("residue fits"),
                    prime: p,
                }
            }
        }
    }

    /// Maps a rational into the field. Fails in F_p when p divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Option<FieldElem> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        den.inv().map(|d| &num * &d)
    }

    pub fn vector_from_ints(self, v: &[BigInt]) -> Vec<FieldElem> {
        v.iter().map(|x| self.from_bigint(x)).collect()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of Q (always in lowest terms) or of F_p (residue in `0..p`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Modular { residue: u64, prime: u64 },
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Modular { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Modular { residue, .. } => *residue == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Modular { residue, prime } => FieldElem::Modular {
                residue: mod_pow(*residue, prime - 2, *prime),
                prime: *prime,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> FieldElem {
        let mut acc = self.field().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            FieldElem::Modular { .. } => None,
        }
    }

    /// The integer value, when the element is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            FieldElem::Rational(q) if q.is_integer() => Some(q.to_integer()),
            FieldElem::Rational(_) => None,
            FieldElem::Modular { residue, .. } => Some(BigInt::from(*residue)),
        }
    }

    /// Symmetric representative for F_p (`-p/2 < r <= p/2`), the value itself for Q.
    /// Used only for display.
    pub fn signed_display(&self) -> String {
        match self {
            FieldElem::Modular { residue, prime } if *residue > prime / 2 => {
                format!("-{}", prime - residue)
            }
            _ => self.to_string(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_negative(),
            FieldElem::Modular { residue, prime } => *residue > prime / 2,
        }
    }

    fn check(&self, other: &FieldElem) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic on elements of different fields"
        );
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (
                FieldElem::Modular { residue: a, prime },
                FieldElem::Modular { residue: b, .. },
            ) => FieldElem::Modular {
                residue: (a + b) % prime,
                prime: *prime,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (
                FieldElem::Modular { residue: a, prime },
                FieldElem::Modular { residue: b, .. },
            ) => FieldElem::Modular {
                residue: a * b % prime,
                prime: *prime,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Modular { residue, prime } => FieldElem::Modular {
                residue: (prime - residue) % prime,
                prime: *prime,
            },
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_one_mod_five() {
        let f = Field::from_characteristic(5).unwrap();
        assert_eq!(
            f.from_i64(-1),
            FieldElem::Modular {
                residue: 4,
                prime: 5
            }
        );
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(Field::from_characteristic(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::from_characteristic(1), Err(Error::NotPrime(1)));
        assert!(Field::from_characteristic(2).is_ok());
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.from_i64(2) / q.from_i64(4);
        let b = q.one() / q.from_i64(2);
        assert_eq!(a, b);
        if let FieldElem::Rational(r) = &a {
            assert_eq!(r.denom(), &BigInt::from(2));
        }
    }

    #[test]
    fn modular_inverse() {
        let f = Field::Prime(7);
        for n in 1..7 {
            let x = f.from_i64(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_into_prime_field() {
        let f = Field::Prime(5);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half), Some(f.from_i64(3)));
        let fifth = BigRational::new(1.into(), 5.into());
        assert_eq!(f.from_rational(&fifth), None);
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = Field::Prime(5).one() + Field::Rational.one();
    }
}
