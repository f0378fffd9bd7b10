//! Exact coefficient fields.
//!
//! A [`Field`] value is a lightweight descriptor (the prime for `F_p`), and all
//! arithmetic goes through it, in the style of ring-store APIs: `f.add(&a, &b)`.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` only for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }
}

/// Which field a computation runs over; echoed in every JSON artifact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") || s.eq_ignore_ascii_case("q") {
            return Ok(FieldKind::Rational);
        }
        let digits = s
            .strip_prefix("prime:")
            .or_else(|| s.strip_prefix("p="))
            .or_else(|| s.strip_prefix("F"))
            .unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field `{s}`")))?;
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::Parse(format!("prime {p} exceeds 2^32")));
        }
        Ok(FieldKind::Prime(p))
    }
}

impl From<FieldKind> for String {
    fn from(k: FieldKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for FieldKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn format(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `F_p` for a prime `p < 2^32`; residues are kept in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        match FieldKind::from_str(&p.to_string())? {
            FieldKind::Prime(p) => Ok(PrimeField { p }),
            FieldKind::Rational => unreachable!(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        u64::try_from(r).expect("residue fits")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_int(&self, n: i64) -> u64 {
        self.reduce_int(&BigInt::from(n))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let q = parse_rational(s)?;
        let num = self.reduce_int(q.numer());
        let den = self.reduce_int(q.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::Parse(format!("`{s}` has denominator divisible by {}", self.p)))?;
        Ok(self.mul(&num, &inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let q = Rationals;
        let a = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&a), "-3/2");
        assert_eq!(q.format(&q.one()), "1/1");
        assert_eq!(q.parse("7").unwrap(), q.from_int(7));
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u64, 2, 17, 32002] {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.from_int(-1), 32002);
        assert_eq!(f.parse("1/2").unwrap(), f.inv(&2).unwrap());
        assert!(PrimeField::new(32001).is_err());
    }

    #[test]
    fn field_kind_parse() {
        assert_eq!("rational".parse::<FieldKind>().unwrap(), FieldKind::Rational);
        assert_eq!("prime:2".parse::<FieldKind>().unwrap(), FieldKind::Prime(2));
        assert_eq!("32003".parse::<FieldKind>().unwrap(), FieldKind::Prime(32003));
        assert!("prime:4".parse::<FieldKind>().is_err());
        assert_eq!(FieldKind::Prime(7).to_string(), "prime:7");
    }
}
