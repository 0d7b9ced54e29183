//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! Every scalar is stored as a [`BigRational`]. Over a prime field the value is
//! kept normalized to an integer in `[0, p)`, so structural equality of scalars
//! (and of matrices built from them) is equality in the field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field of characteristic `p`; `p` must be a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p >= (1u64 << 31) || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.reduce_int(BigInt::from(n))
    }

    fn reduce_int(&self, n: BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(n),
            Field::Prime(p) => Scalar::from_integer(n.mod_floor(&BigInt::from(*p))),
        }
    }

    /// Maps an arbitrary rational into the field. Fails over `F_p` when the
    /// denominator is divisible by `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, Error> {
        match self {
            Field::Rationals => Ok(q.clone()),
            Field::Prime(p) => {
                let num = self.reduce_int(q.numer().clone());
                let den = self.reduce_int(q.denom().clone());
                let inv = self.inv(&den).ok_or_else(|| Error::NotInvertible {
                    value: q.to_string(),
                    characteristic: *p,
                })?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(_) => self.reduce_int(a.to_integer() + b.to_integer()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(_) => self.reduce_int(a.to_integer() - b.to_integer()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(_) => self.reduce_int(-a.to_integer()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(_) => self.reduce_int(a.to_integer() * b.to_integer()),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let a = a.to_integer().mod_floor(&p);
                if a.is_zero() {
                    return None;
                }
                // Fermat: a^(p-2)
                let e = &p - BigInt::from(2u32);
                Some(Scalar::from_integer(a.modpow(&e, &p)))
            }
        }
    }

    /// `(-1)^k` as a field element.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_int(-1)
        }
    }

    /// Renders a scalar the way the text format reads it back.
    pub fn render(&self, a: &Scalar) -> String {
        match self {
            Field::Rationals => {
                if a.is_integer() {
                    a.to_integer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                }
            }
            Field::Prime(_) => a.to_integer().to_string(),
        }
    }

    /// True when the scalar is "negative" for display purposes. Over `F_p`
    /// the representative `p - 1` is displayed as `-1`, nothing else is.
    pub(crate) fn display_negative(&self, a: &Scalar) -> bool {
        match self {
            Field::Rationals => a.is_negative(),
            Field::Prime(p) => a.to_integer().to_u64() == Some(*p as u64 - 1) && *p > 2,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_large_characteristic() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(0).is_err());
        assert!(Field::prime(1u64 << 31).is_err());
        assert_eq!(Field::prime(2).unwrap(), Field::Prime(2));
        assert_eq!(Field::prime(2147483647).unwrap(), Field::Prime(2147483647));
    }

    #[test]
    fn prime_field_arithmetic_is_normalized() {
        let f = Field::prime(7).unwrap();
        let a = f.from_int(-1);
        assert_eq!(a, Scalar::from_integer(6.into()));
        assert_eq!(f.mul(&f.from_int(3), &f.from_int(5)), f.from_int(1));
        let inv3 = f.inv(&f.from_int(3)).unwrap();
        assert_eq!(f.mul(&inv3, &f.from_int(3)), f.one());
        let half = f
            .from_rational(&BigRational::new(1.into(), 2.into()))
            .unwrap();
        assert_eq!(half, f.from_int(4));
        assert!(f
            .from_rational(&BigRational::new(1.into(), 14.into()))
            .is_err());
    }

    #[test]
    fn rationals_are_exact() {
        let q = Field::Rationals;
        let third = BigRational::new(1.into(), 3.into());
        let sum = q.add(&q.add(&third, &third), &third);
        assert_eq!(sum, q.one());
        assert_eq!(q.render(&third), "1/3");
        assert!(q.inv(&q.zero()).is_none());
    }
}
