//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.
//!
//! Every value carries its field; arithmetic between scalars of different
//! fields is a programming error and panics. Operations that accept
//! user-supplied data check field agreement up front and return errors
//! instead.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use super::ExactError;

/// The coefficient field of a bundle: the rationals or a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// A prime field F_p. The modulus is checked for primality and must fit
    /// in 32 bits so products stay inside u64.
    pub fn prime(p: u64) -> Result<Field, ExactError> {
        if p >= (1 << 32) {
            return Err(ExactError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(Field::Fp(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Fp(p) => Scalar::Mod { p: *p, val: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Fp(p) => Scalar::Mod { p: *p, val: 1 % *p },
        }
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Fp(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { p: *p, val: r }
            }
        }
    }

    /// Parses "a", "-a" or "a/b". Over F_p a denominator is accepted when
    /// invertible.
    pub fn parse(&self, s: &str) -> Result<Scalar, ExactError> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        match self {
            Field::Rationals => {
                let n =
                    BigInt::from_str(num_str).map_err(|_| ExactError::Parse(s.to_string()))?;
                let d = match den_str {
                    Some(d) => {
                        BigInt::from_str(d).map_err(|_| ExactError::Parse(s.to_string()))?
                    }
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(ExactError::DivisionByZero);
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            Field::Fp(_) => {
                let n = i64::from_str(num_str).map_err(|_| ExactError::Parse(s.to_string()))?;
                let num = self.from_integer(n);
                match den_str {
                    None => Ok(num),
                    Some(d) => {
                        let d = i64::from_str(d).map_err(|_| ExactError::Parse(s.to_string()))?;
                        let den = self.from_integer(d);
                        let inv = den.inv().ok_or(ExactError::DivisionByZero)?;
                        Ok(&num * &inv)
                    }
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of the ambient field: a reduced fraction or a residue in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { p, val } => *val == 1 % *p,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Mod { p, val } => {
                if *val == 0 {
                    None
                } else {
                    Some(Scalar::Mod {
                        p: *p,
                        val: mod_inverse(*val, *p),
                    })
                }
            }
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on signed 128-bit temporaries
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i128) as u64
}

fn check_same_field(a: &Scalar, b: &Scalar) {
    assert!(
        a.field() == b.field(),
        "scalar field mismatch: {} vs {}",
        a.field(),
        b.field()
    );
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { p, val: a }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                p: *p,
                val: (a + b) % p,
            },
            _ => unreachable!(),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { p, val: a }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                p: *p,
                val: (a + p - b) % p,
            },
            _ => unreachable!(),
        }
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { p, val: a }, Scalar::Mod { val: b, .. }) => Scalar::Mod {
                p: *p,
                val: (a * b) % p,
            },
            _ => unreachable!(),
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { p, val } => Scalar::Mod {
                p: *p,
                val: (p - val) % p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Mod { val, .. } => write!(f, "{val}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check_accepts_primes_only() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(97).is_ok());
        assert!(matches!(Field::prime(1), Err(ExactError::NotPrime(1))));
        assert!(matches!(Field::prime(91), Err(ExactError::NotPrime(91))));
        assert!(matches!(
            Field::prime(1 << 33),
            Err(ExactError::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn rational_parse_reduces() {
        let f = Field::Rationals;
        let x = f.parse("6/4").unwrap();
        assert_eq!(x, f.parse("3/2").unwrap());
        let y = f.parse("-2/-4").unwrap();
        assert_eq!(y, f.parse("1/2").unwrap());
        assert!(f.parse("1/0").is_err());
    }

    #[test]
    fn fp_inverse_roundtrip() {
        let f = Field::prime(7).unwrap();
        for n in 1..7 {
            let x = f.from_integer(n);
            let inv = x.inv().unwrap();
            assert!((&x * &inv).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn negative_integers_reduce_into_range() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_integer(-1), f.from_integer(4));
        assert_eq!(f.parse("-3").unwrap(), f.from_integer(2));
    }
}
