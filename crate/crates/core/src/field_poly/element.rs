use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::modulus::Modulus;
use crate::error::{Error, Result};

/// An element of Z_d or GF(p^r), always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    modulus: Modulus,
    value: u32,
}

impl FieldElement {
    pub fn new(modulus: &Modulus, value: u32) -> Result<Self> {
        if value >= modulus.d() {
            return Err(Error::OutOfRange(format!(
                "{value} is not below {}",
                modulus.d()
            )));
        }
        Ok(FieldElement {
            modulus: modulus.clone(),
            value,
        })
    }

    pub fn zero(modulus: &Modulus) -> Self {
        FieldElement {
            modulus: modulus.clone(),
            value: 0,
        }
    }

    pub fn one(modulus: &Modulus) -> Self {
        FieldElement {
            modulus: modulus.clone(),
            value: 1,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.modulus.coefficients(self.value)
    }

    pub fn inverse(&self) -> Option<Self> {
        self.modulus.inv(self.value).map(|value| FieldElement {
            modulus: self.modulus.clone(),
            value,
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        FieldElement {
            modulus: self.modulus.clone(),
            value: self.modulus.pow(self.value, e),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in field arithmetic"
        );
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.check(rhs);
        FieldElement {
            modulus: self.modulus.clone(),
            value: self.modulus.add(self.value, rhs.value),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.check(rhs);
        FieldElement {
            modulus: self.modulus.clone(),
            value: self.modulus.sub(self.value, rhs.value),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.check(rhs);
        FieldElement {
            modulus: self.modulus.clone(),
            value: self.modulus.mul(self.value, rhs.value),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            modulus: self.modulus.clone(),
            value: self.modulus.neg(self.value),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
