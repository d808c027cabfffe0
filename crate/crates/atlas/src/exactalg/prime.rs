use rand::RngCore;

use super::field::{Field, FieldSpec, SquareClass};
use crate::error::{Error, Result};

/// Largest admitted prime. Keeps every product of two reduced residues
/// inside a `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field F_p for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not supported".into(),
            ));
        }
        if p > MAX_PRIME {
            return Err(Error::SizeError(format!("prime {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce(t0))
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn square_class(&self, a: &u64) -> SquareClass {
        if *a == 0 {
            return SquareClass::Zero;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        match self.square_class(a) {
            SquareClass::Zero => return Some(0),
            SquareClass::NonSquare => return None,
            SquareClass::Square => {}
        }
        // Tonelli-Shanks
        let p = self.p;
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.square_class(&z) != SquareClass::NonSquare {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
    fn element(&self, i: u64) -> u64 {
        i % self.p
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        // rejection sampling keeps the distribution uniform
        let zone = u64::MAX - u64::MAX % self.p;
        loop {
            let x = rng.next_u64();
            if x < zone {
                return x % self.p;
            }
        }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: i128 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad element '{s}' for F_{}", self.p)))?;
        Ok(n.rem_euclid(self.p as i128) as u64)
    }
    fn describe(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(PrimeField::new(2), Err(Error::InvalidField(_))));
        assert!(matches!(PrimeField::new(9), Err(Error::InvalidField(_))));
        assert!(matches!(
            PrimeField::new((1 << 32) + 15),
            Err(Error::SizeError(_))
        ));
    }

    #[test]
    fn sqrt_roundtrip() {
        for p in [3u64, 5, 7, 13, 17, 41, 101, 257] {
            let f = PrimeField::new(p).unwrap();
            for x in 0..p {
                match f.sqrt(&x) {
                    Some(r) => assert_eq!(f.mul(&r, &r), x),
                    None => assert_eq!(f.square_class(&x), SquareClass::NonSquare),
                }
            }
        }
    }

    #[test]
    fn inverse() {
        let f = PrimeField::new(101).unwrap();
        for x in 1..101 {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
    }
}
