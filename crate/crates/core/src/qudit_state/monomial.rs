//! Single-site generalised permutation matrices with τ-power entries.

use crate::error::{Error, Result};
use crate::weyl::{canonical_tau, WeylLabel};

/// `M|z⟩ = τ^{phase[z]} |perm[z]⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    pub d: u32,
    pub perm: Vec<u32>,
    pub phase: Vec<u32>,
}

impl MonomialMatrix {
    pub fn new(d: u32, perm: Vec<u32>, phase: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; d as usize];
        if perm.len() != d as usize || phase.len() != d as usize {
            return Err(Error::InvalidObservable(format!("expected {d} columns")));
        }
        for &p in &perm {
            if p >= d || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::InvalidObservable("not a permutation".into()));
            }
        }
        let phase = phase
            .into_iter()
            .map(|t| canonical_tau(d, t as i64))
            .collect();
        Ok(MonomialMatrix { d, perm, phase })
    }

    pub fn identity(d: u32) -> Self {
        MonomialMatrix {
            d,
            perm: (0..d).collect(),
            phase: vec![0; d as usize],
        }
    }

    /// The matrix of `ω^{omega_exp} τ^t W_{a,b}`.
    pub fn from_weyl(omega_exp: u32, w: &WeylLabel) -> Self {
        let d = w.d;
        let [a, b] = w.v.map(|x| x as i64);
        let base = w.tau_exp as i64 + 2 * omega_exp as i64 - a * b;
        let perm: Vec<u32> = (0..d).map(|z| (z + w.v[1]) % d).collect();
        let phase = perm
            .iter()
            .map(|&row| canonical_tau(d, base + 2 * a * row as i64))
            .collect();
        MonomialMatrix { d, perm, phase }
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.d;
        let (perm, phase) = (0..d as usize)
            .map(|z| {
                let mid = other.perm[z] as usize;
                (
                    self.perm[mid],
                    canonical_tau(d, other.phase[z] as i64 + self.phase[mid] as i64),
                )
            })
            .unzip();
        MonomialMatrix { d, perm, phase }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.d), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.d)
    }

    /// A measurement must satisfy `M^d = 1`, so its eigenvalues are powers of ω.
    pub fn validate(&self) -> Result<()> {
        if self.pow(self.d).is_identity() {
            Ok(())
        } else {
            Err(Error::InvalidObservable("M^d is not the identity".into()))
        }
    }
}

/// The tensor product of per-site measurements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalObservable {
    pub sites: Vec<MonomialMatrix>,
}

impl GlobalObservable {
    pub fn new(sites: Vec<MonomialMatrix>) -> Result<Self> {
        for s in &sites {
            s.validate()?;
        }
        Ok(GlobalObservable { sites })
    }

    pub fn identity(d: u32, n: usize) -> Self {
        GlobalObservable {
            sites: vec![MonomialMatrix::identity(d); n],
        }
    }

    pub fn from_weyl(labels: &[(u32, WeylLabel)]) -> Self {
        GlobalObservable {
            sites: labels
                .iter()
                .map(|(p, w)| MonomialMatrix::from_weyl(*p, w))
                .collect(),
        }
    }
}
