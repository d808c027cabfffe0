use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::RngCore;

use super::field::{Field, FieldSpec, SquareClass};
use crate::error::{Error, Result};

/// Bound on the numerators produced by [`Rationals::random`].
pub const RANDOM_RANGE: i64 = 50;

/// The field Q with arbitrary precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
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
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn square_class(&self, a: &BigRational) -> SquareClass {
        if a.is_zero() {
            SquareClass::Zero
        } else if self.sqrt(a).is_some() {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        // BigRational is kept in lowest terms with a positive denominator
        let n = exact_sqrt(a.numer())?;
        let d = exact_sqrt(a.denom())?;
        Some(BigRational::new(n, d))
    }
    /// Enumerates the integers 0, 1, -1, 2, -2, ...
    fn element(&self, i: u64) -> BigRational {
        let k = i.div_ceil(2) as i64;
        self.from_i64(if i % 2 == 1 { k } else { -k })
    }
    /// Uniform integer in `[-RANDOM_RANGE, RANDOM_RANGE]`.
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let span = (2 * RANDOM_RANGE + 1) as u64;
        let zone = u64::MAX - u64::MAX % span;
        loop {
            let x = rng.next_u64();
            if x < zone {
                return self.from_i64((x % span) as i64 - RANDOM_RANGE);
            }
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad rational '{s}'"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
        }
    }
    fn describe(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
}
