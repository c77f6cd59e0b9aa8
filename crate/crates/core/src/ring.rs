//! Ground rings: the rationals, prime fields and the integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// A unital commutative ground ring. All arithmetic is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Rationals,
    PrimeField(u64),
    Integers,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) && p < (1 << 31) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// Canonical representative of `x` in this ring: unchanged over the
    /// rationals, an integer in `0..p` over `F_p`, and `x` itself over the
    /// integers (which must then be integral).
    pub fn reduce(&self, x: &Rat) -> Result<Rat> {
        match self {
            Ring::Rationals => Ok(x.clone()),
            Ring::PrimeField(p) => x
                .mod_p(*p)
                .map(|r| Rat::from_int(r as i64))
                .ok_or_else(|| Error::NotInRing { value: x.to_string(), ring: *self }),
            Ring::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::NotInRing { value: x.to_string(), ring: *self })
                }
            }
        }
    }

    /// `reduce` for values already known to lie in the ring.
    pub fn norm(&self, x: Rat) -> Rat {
        match self {
            Ring::PrimeField(_) => self.reduce(&x).expect("value outside ring"),
            _ => x,
        }
    }

    pub fn add(&self, a: &Rat, b: &Rat) -> Rat {
        self.norm(a + b)
    }

    pub fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        self.norm(a * b)
    }

    pub fn equal(&self, a: &Rat, b: &Rat) -> bool {
        match self {
            Ring::PrimeField(p) => a.mod_p(*p) == b.mod_p(*p),
            _ => a == b,
        }
    }

    pub fn is_unit(&self, a: &Rat) -> bool {
        match self {
            Ring::Rationals => !a.is_zero(),
            Ring::PrimeField(p) => matches!(a.mod_p(*p), Some(r) if r != 0),
            Ring::Integers => a.to_i64().map(|v| v == 1 || v == -1).unwrap_or(false),
        }
    }

    pub fn inverse(&self, a: &Rat) -> Option<Rat> {
        if !self.is_unit(a) {
            return None;
        }
        Some(self.norm(a.recip()))
    }

    /// Short name used on the command line and in reports.
    pub fn tag(&self) -> String {
        match self {
            Ring::Rationals => "q".into(),
            Ring::PrimeField(p) => format!("f{p}"),
            Ring::Integers => "z".into(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F_{p}"),
            Ring::Integers => write!(f, "Z"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "rationals" => Ok(Ring::Rationals),
            "z" | "integers" => Ok(Ring::Integers),
            other => {
                let digits = other.strip_prefix('f').ok_or_else(|| Error::Parse(format!("unknown ring '{s}'")))?;
                let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown ring '{s}'")))?;
                Ring::prime_field(p)
            }
        }
    }
}
