//! Scalars: canonical residues mod a prime, or rationals in lowest terms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which field a scalar lives in.
///
/// Prime moduli are restricted to `2 <= p < 2^31` so residue arithmetic fits
/// native words with a widening multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    /// A prime field `GF(p)`. Primality is checked by trial division.
    pub fn prime(p: u32) -> Result<Self> {
        if !(2..(1 << 31)).contains(&p) {
            return Err(Error::Invalid(format!(
                "prime modulus must satisfy 2 <= p < 2^31, got {p}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub const fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Prime { p, value: 0 },
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Prime { p, value: 1 % p },
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
        }
    }

    /// The canonical image of an integer in this field.
    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let m = n.rem_euclid(i64::from(p));
                Scalar::Prime { p, value: m as u32 }
            }
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub(crate) fn check(self, other: FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self, other))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "QQ"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element in canonical form.
///
/// `Prime` values are residues in `[0, p)`; `Rational` values are kept in
/// lowest terms with a positive denominator (zero is `0/1`). Equality is
/// structural equality of canonical forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Prime { p: u32, value: u32 },
    Rational(BigRational),
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
            Scalar::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Prime { p, value } => *value == 1 % p,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    /// An exact rational `n/d`.
    pub fn rational(numer: i64, denom: i64) -> Result<Scalar> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.spec().check(rhs.spec())?;
        Ok(match (self, rhs) {
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                let s = (u64::from(*a) + u64::from(*b)) % u64::from(*p);
                Scalar::Prime { p: *p, value: s as u32 }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => unreachable!("spec checked"),
        })
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.spec().check(rhs.spec())?;
        Ok(match (self, rhs) {
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => {
                // p < 2^31, so the widening product fits in u64.
                let m = (u64::from(*a) * u64::from(*b)) % u64::from(*p);
                Scalar::Prime { p: *p, value: m as u32 }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => unreachable!("spec checked"),
        })
    }

    /// Multiplicative inverse. `scalar_mul(a, a.inv()) == 1`.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: pow_mod(*value, u64::from(*p) - 2, *p),
            },
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.mul(&rhs.inv()?)
    }

    /// Parses the text syntax used by the file formats: decimal residues for
    /// `GF(p)`, `n` or `n/d` with an optional leading `-` for rationals.
    /// Rationals are canonicalized; prime residues must already be canonical.
    pub fn parse(spec: FieldSpec, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match spec {
            FieldSpec::Prime(p) => {
                let value: u32 = s
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad GF({p}) residue {s:?}")))?;
                if value >= p {
                    return Err(Error::Invalid(format!(
                        "residue {value} not canonical in GF({p})"
                    )));
                }
                Ok(Scalar::Prime { p, value })
            }
            FieldSpec::Rationals => {
                let (numer_str, denom_str) = match s.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (s, None),
                };
                let numer = parse_bigint(numer_str)?;
                let denom = match denom_str {
                    Some(d) => {
                        let d = parse_bigint(d)?;
                        if !d.is_positive() {
                            return Err(Error::Invalid(format!(
                                "denominator must be positive in {s:?}"
                            )));
                        }
                        d
                    }
                    None => BigInt::one(),
                };
                Ok(Scalar::Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    if s.is_empty() || s.starts_with('+') {
        return Err(Error::Invalid(format!("bad integer {s:?}")));
    }
    BigInt::from_str(s).map_err(|_| Error::Invalid(format!("bad integer {s:?}")))
}

fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let p = u64::from(p);
    let mut base = u64::from(base) % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}
