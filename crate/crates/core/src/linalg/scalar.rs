//! Exact scalars: reduced rationals or residues modulo a word-sized prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Smallest modulus accepted for prime-field computations.
pub const MIN_PRIME: u64 = 1 << 30;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Builds a prime field, checking primality and the size floor.
    pub fn prime(p: u64) -> Result<Field> {
        if p <= MIN_PRIME {
            return Err(Error::InvalidParameter(format!(
                "prime modulus {p} must exceed 2^30"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    pub fn from_rational(self, q: &BigRational) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(q.clone()),
            Field::Prime(_) => self.from_bigint(q.numer()).div(&self.from_bigint(q.denom())),
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Parses "p/q" (or "p") for rationals and "r mod p" / "r" for residues.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Field::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num)
                    .map_err(|_| Error::Input(format!("bad rational numerator in {s:?}")))?;
                let den = BigInt::from_str(den)
                    .map_err(|_| Error::Input(format!("bad rational denominator in {s:?}")))?;
                if den.is_zero() {
                    return Err(Error::Input(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let (value, modulus) = match s.split_once("mod") {
                    Some((v, m)) => {
                        let m: u64 = m
                            .trim()
                            .parse()
                            .map_err(|_| Error::Input(format!("bad modulus in {s:?}")))?;
                        (v.trim(), m)
                    }
                    None => (s, p),
                };
                if modulus != p {
                    return Err(Error::FieldMismatch(format!(
                        "scalar {s:?} is not in the field mod {p}"
                    )));
                }
                let v = BigInt::from_str(value)
                    .map_err(|_| Error::Input(format!("bad residue in {s:?}")))?;
                Ok(self.from_bigint(&v))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        if let Some(p) = t.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Input(format!("bad prime in field {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::Input(format!("unknown field {s:?} (expected q or fp:PRIME)")))
    }
}

/// An element of a [`Field`]. Values of different fields never meet in one
/// operation; doing so is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                Scalar::Rational(q.recip())
            }
            Scalar::Residue { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Residue {
                    value: pow_mod(*value, modulus - 2, *modulus),
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self * &other.inv()
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalars from different prime fields");
    a
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => panic!("mixed field kinds"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue {
                    value: ((*a as u128 + p as u128 - *b as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => panic!("mixed field kinds"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => panic!("mixed field kinds"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rationals;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        let y = &x + &q.from_ratio(3, 2);
        assert!(y.is_zero());
        assert_eq!(q.parse("7").unwrap().to_string(), "7");
    }

    #[test]
    fn residues_wrap() {
        let f = Field::prime(2147483647).unwrap();
        let x = f.from_i64(-1);
        assert_eq!(x.to_string(), "2147483646 mod 2147483647");
        assert!((&x * &x).is_one());
        let y = f.from_i64(12345);
        assert!((&y * &y.inv()).is_one());
        assert_eq!(f.parse("5 mod 2147483647").unwrap(), f.from_i64(5));
        assert!(f.parse("5 mod 7").is_err());
    }

    #[test]
    fn small_primes_rejected() {
        assert!(Field::prime(101).is_err());
        assert!(Field::prime((1 << 31) + 1).is_err());
        assert!("fp:2147483647".parse::<Field>().is_ok());
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rationals);
    }
}
