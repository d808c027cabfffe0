use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Square class of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SquareClass {
    Zero,
    Square,
    NonSquare,
}

impl SquareClass {
    /// Class of a product, given the classes of the factors. Only valid
    /// when the nonzero square classes form a group of order two, as over a
    /// finite field of odd characteristic; over the rationals multiply the
    /// elements instead.
    pub fn mul(self, other: SquareClass) -> SquareClass {
        use SquareClass::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (a, b) if a == b => Square,
            _ => NonSquare,
        }
    }
}

/// Runtime description of a field, used for reports and dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Prime { p: u64 },
    Ext { p: u64, r: u32 },
    Rationals,
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Ext { p, r } => write!(f, "F_{p}^{r}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// A field with an explicit element type.
///
/// Field values are cheap handles; elements are plain values that only make
/// sense together with the field that produced them.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// Zero for the rationals.
    fn characteristic(&self) -> u64;
    fn square_class(&self, a: &Self::Elem) -> SquareClass;
    /// Some square root when `a` is a square.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// The i-th element of a fixed enumeration. For finite fields the
    /// elements `0..order` are pairwise distinct and cover the field, and
    /// element 0 is zero.
    fn element(&self, i: u64) -> Self::Elem;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn describe(&self) -> FieldSpec;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Random nonzero element.
    fn random_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Iterator over all elements of a finite field, `None` for infinite ones.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        self.order()
            .map(|q| (0..q).map(|i| self.element(i)).collect())
    }
}
