//! Arithmetic over Z_d and GF(p^r).
//!
//! Elements are plain `u32` indices. For Z_d the index is the canonical
//! representative `0..d`; for GF(p^r) it encodes the coefficient vector
//! `(c_0, .., c_{r-1})` of the residue polynomial as `sum c_i p^i`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModulusKind {
    PrimeField,
    /// `irreducible` holds the monic modulus polynomial, lowest coefficient first
    /// (length `r + 1`, last entry 1).
    PrimePowerField {
        p: u32,
        r: u32,
        irreducible: Vec<u32>,
    },
    CompositeRing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    d: u32,
    kind: ModulusKind,
}

/// Classify `d` and build the matching arithmetic.
pub fn make_field(d: u32) -> Result<Modulus> {
    Modulus::new(d)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Prime factorisation as `(p, e)` pairs in ascending order of `p`.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

// Polynomials over Z_p, lowest coefficient first, trailing zeros trimmed.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = ((a[idx] as u64 + (p - lead) as u64 * c as u64) % p as u64) as u32;
            }
        }
        a.pop();
    }
    poly_trim(a)
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for dd in 1..=deg / 2 {
        let count = (p as u64).pow(dd as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(dd + 1);
            let mut c = code;
            for _ in 0..dd {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `r` over Z_p,
/// ordering by `(c_{r-1}, .., c_0)`.
pub fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = (p as u64).pow(r);
    for code in 0..count {
        // code enumerates (c_{r-1}, .., c_0) in lexicographic order
        let mut coeffs = vec![0u32; r as usize + 1];
        let mut c = code;
        for i in 0..r as usize {
            coeffs[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        coeffs[r as usize] = 1;
        if coeffs[0] == 0 && r > 1 {
            continue;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

impl Modulus {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        let factors = factorize(d);
        let kind = if factors.len() == 1 && factors[0].1 == 1 {
            ModulusKind::PrimeField
        } else if factors.len() == 1 {
            let (p, r) = factors[0];
            ModulusKind::PrimePowerField {
                p,
                r,
                irreducible: smallest_irreducible(p, r),
            }
        } else {
            ModulusKind::CompositeRing
        };
        Ok(Modulus { d, kind })
    }

    /// Plain ring Z_d, even when d is a prime power.
    pub fn ring(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        let kind = if is_prime(d) {
            ModulusKind::PrimeField
        } else {
            ModulusKind::CompositeRing
        };
        Ok(Modulus { d, kind })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kind(&self) -> &ModulusKind {
        &self.kind
    }

    pub fn is_field(&self) -> bool {
        !matches!(self.kind, ModulusKind::CompositeRing)
    }

    pub fn characteristic(&self) -> u32 {
        match &self.kind {
            ModulusKind::PrimePowerField { p, .. } => *p,
            _ => self.d,
        }
    }

    pub fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::UnsupportedModulus(format!(
                "Z_{} is not a field",
                self.d
            )))
        }
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        match &self.kind {
            ModulusKind::PrimePowerField { p, r, .. } => {
                let mut v = Vec::with_capacity(*r as usize);
                let mut a = a;
                for _ in 0..*r {
                    v.push(a % p);
                    a /= p;
                }
                v
            }
            _ => vec![a],
        }
    }

    fn undigits(&self, v: &[u32]) -> u32 {
        match &self.kind {
            ModulusKind::PrimePowerField { p, .. } => v.iter().rev().fold(0, |acc, &c| acc * p + c),
            _ => v[0],
        }
    }

    /// Coefficient vector of an element (length r for GF(p^r), length 1 otherwise).
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        self.digits(a)
    }

    /// Image of an integer under the canonical ring map Z -> R.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.characteristic() as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            ModulusKind::PrimePowerField { p, .. } => {
                let (x, y) = (self.digits(a), self.digits(b));
                let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
                self.undigits(&s)
            }
            _ => ((a as u64 + b as u64) % self.d as u64) as u32,
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match &self.kind {
            ModulusKind::PrimePowerField { p, .. } => {
                let s: Vec<u32> = self.digits(a).iter().map(|u| (p - u) % p).collect();
                self.undigits(&s)
            }
            _ => (self.d - a % self.d) % self.d,
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.kind {
            ModulusKind::PrimePowerField { p, irreducible, .. } => {
                let (x, y) = (self.digits(a), self.digits(b));
                let mut prod = vec![0u32; x.len() + y.len() - 1];
                for (i, &u) in x.iter().enumerate() {
                    for (j, &v) in y.iter().enumerate() {
                        prod[i + j] =
                            ((prod[i + j] as u64 + u as u64 * v as u64) % *p as u64) as u32;
                    }
                }
                let mut rem = poly_rem(&prod, irreducible, *p);
                rem.resize(x.len(), 0);
                self.undigits(&rem)
            }
            _ => ((a as u64 * b as u64) % self.d as u64) as u32,
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        match &self.kind {
            ModulusKind::PrimePowerField { .. } => {
                if a == 0 {
                    None
                } else {
                    Some(self.pow(a, self.d as u64 - 2))
                }
            }
            _ => mod_inverse(a as u64, self.d as u64).map(|x| x as u32),
        }
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.inv(a).is_some()
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.d
    }
}

impl PartialOrd for Modulus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Modulus {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d()
            .cmp(&other.d())
            .then_with(|| self.is_field().cmp(&other.is_field()))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ModulusKind::PrimeField => write!(f, "prime-field({})", self.d),
            ModulusKind::PrimePowerField { p, r, .. } => write!(f, "prime-power-field({p},{r})"),
            ModulusKind::CompositeRing => write!(f, "composite-ring({})", self.d),
        }
    }
}
