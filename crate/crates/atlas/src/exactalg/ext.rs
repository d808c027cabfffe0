use std::sync::Arc;

use rand::RngCore;

use super::field::{Field, FieldSpec, SquareClass};
use super::prime::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Largest field order the table representation accepts.
pub const MAX_EXT_ORDER: u64 = 1 << 22;

#[derive(Debug)]
struct Tables {
    /// exp[i] = g^i as an encoding, for 0 <= i < q - 1.
    exp: Vec<u32>,
    /// log[x] for nonzero encodings x; log[0] is unused.
    log: Vec<u32>,
    /// p^i for i < r.
    place: Vec<u32>,
}

/// The finite field F_{p^r} = F_p[x]/(f).
///
/// Elements are encoded as integers `sum c_i p^i` where `c_i` is the
/// coefficient of `x^i`. Multiplication goes through discrete log tables
/// built from a primitive element. The modulus `f` is the monic irreducible
/// of degree `r` whose lower coefficients have the smallest encoding.
#[derive(Debug, Clone)]
pub struct ExtField {
    p: u64,
    r: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Arc<Tables>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // m is monic
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + (p - lead) * c % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn monic_from_code(code: u64, deg: u32, p: u64) -> Vec<u64> {
    let mut c = code;
    let mut v = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        v.push(c % p);
        c /= p;
    }
    v.push(1);
    v
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let g = monic_from_code(code, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl ExtField {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not supported".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidField(
                "extension degree must be positive".into(),
            ));
        }
        let q = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if q > MAX_EXT_ORDER as u128 {
            return Err(Error::SizeError(format!(
                "{p}^{r} exceeds the table budget {MAX_EXT_ORDER}"
            )));
        }
        let q = q as u64;
        let modulus = (0..p.pow(r))
            .map(|code| monic_from_code(code, r, p))
            .find(|f| is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");

        let place: Vec<u32> = (0..r).map(|i| p.pow(i) as u32).collect();
        let decode = |x: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(r as usize);
            let mut x = x;
            for _ in 0..r {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u64]| -> u64 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let mulmod = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut prod = vec![0u64; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut rem = poly_rem(&prod, &modulus, p);
            rem.resize(r as usize, 0);
            rem
        };
        let order_factors = prime_factors(q - 1);
        let powmod = |a: &[u64], mut e: u64| -> Vec<u64> {
            let mut acc = decode(1);
            let mut base = a.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base);
                }
                base = mulmod(&base, &base);
                e >>= 1;
            }
            acc
        };
        let one = decode(1);
        let gen = (1..q)
            .map(decode)
            .find(|g| order_factors.iter().all(|&l| powmod(g, (q - 1) / l) != one))
            .expect("multiplicative group is cyclic");

        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = one.clone();
        for i in 0..q - 1 {
            let c = encode(&cur);
            exp.push(c as u32);
            log[c as usize] = i as u32;
            cur = mulmod(&cur, &gen);
        }
        Ok(ExtField {
            p,
            r,
            q,
            modulus,
            tables: Arc::new(Tables { exp, log, place }),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    /// Coefficients of the modulus, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> u32 {
        self.tables.exp.get(1).copied().unwrap_or(1)
    }

    #[inline]
    fn exp(&self, i: u64) -> u32 {
        self.tables.exp[(i % (self.q - 1)) as usize]
    }

    #[inline]
    fn log(&self, a: u32) -> u64 {
        self.tables.log[a as usize] as u64
    }
}

impl Field for ExtField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.r == 1 {
            return ((*a as u64 + *b as u64) % self.p) as u32;
        }
        let p = self.p as u32;
        let (mut x, mut y, mut out) = (*a, *b, 0u32);
        for &w in &self.tables.place {
            let d = (x % p + y % p) % p;
            out += d * w;
            x /= p;
            y /= p;
        }
        out
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &u32) -> u32 {
        let p = self.p as u32;
        let (mut x, mut out) = (*a, 0u32);
        for &w in &self.tables.place {
            let d = x % p;
            out += ((p - d) % p) * w;
            x /= p;
        }
        out
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        self.exp(self.log(*a) + self.log(*b))
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(self.exp(self.q - 1 - self.log(*a)))
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if *a == 0 {
            return 0;
        }
        let l = (self.log(*a) as u128 * e as u128 % (self.q - 1) as u128) as u64;
        self.exp(l)
    }
    fn order(&self) -> Option<u64> {
        Some(self.q)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn square_class(&self, a: &u32) -> SquareClass {
        if *a == 0 {
            SquareClass::Zero
        } else if self.log(*a) % 2 == 0 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }
    fn sqrt(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return Some(0);
        }
        let l = self.log(*a);
        (l % 2 == 0).then(|| self.exp(l / 2))
    }
    fn element(&self, i: u64) -> u32 {
        (i % self.q) as u32
    }
    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        let zone = u64::MAX - u64::MAX % self.q;
        loop {
            let x = rng.next_u64();
            if x < zone {
                return (x % self.q) as u32;
            }
        }
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let n: u64 = body
            .parse()
            .map_err(|_| Error::Parse(format!("bad element '{s}' for F_{}^{}", self.p, self.r)))?;
        if n >= self.q {
            return Err(Error::Parse(format!("encoding {n} out of range")));
        }
        let x = n as u32;
        Ok(if neg { self.neg(&x) } else { x })
    }
    fn describe(&self) -> FieldSpec {
        FieldSpec::Ext {
            p: self.p,
            r: self.r,
        }
    }
}
