//! States `Σ_k τ^{t_k} |ket_k⟩ / √T` with distinct kets.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::cyclotomic::CyclotomicRing;
use super::monomial::{GlobalObservable, MonomialMatrix};
use crate::error::{Error, Result};
use crate::weyl::{canonical_tau, tau_to_omega};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub tau_exp: u32,
    pub ket: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct SparseState {
    pub d: u32,
    #[serde(rename = "N")]
    pub n_sites: usize,
    pub terms: Vec<Term>,
}

#[derive(Deserialize)]
struct RawState {
    d: u32,
    #[serde(rename = "N")]
    n_sites: usize,
    terms: Vec<Term>,
}

impl TryFrom<RawState> for SparseState {
    type Error = Error;
    fn try_from(raw: RawState) -> Result<Self> {
        SparseState::new(
            raw.d,
            raw.n_sites,
            raw.terms.into_iter().map(|t| (t.tau_exp, t.ket)).collect(),
        )
    }
}

/// One possible result of a local measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub outcome: u32,
    pub probability: BigRational,
    pub state: SparseState,
}

impl SparseState {
    pub fn new(d: u32, n_sites: usize, terms: Vec<(u32, Vec<u32>)>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        if terms.is_empty() {
            return Err(Error::NotSparseRepresentable("state has no terms".into()));
        }
        let mut map = BTreeMap::new();
        for (t, ket) in terms {
            if ket.len() != n_sites || ket.iter().any(|&z| z >= d) {
                return Err(Error::OutOfRange(format!(
                    "ket {ket:?} for {n_sites} qudits of dimension {d}"
                )));
            }
            if map
                .insert(ket.clone(), canonical_tau(d, t as i64))
                .is_some()
            {
                return Err(Error::NotSparseRepresentable(format!(
                    "repeated ket {ket:?}"
                )));
            }
        }
        let terms = map
            .into_iter()
            .map(|(ket, tau_exp)| Term { tau_exp, ket })
            .collect();
        Ok(SparseState { d, n_sites, terms })
    }

    pub fn basis(d: u32, ket: Vec<u32>) -> Result<Self> {
        let n = ket.len();
        Self::new(d, n, vec![(0, ket)])
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(
                "tensor of different dimensions".into(),
            ));
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let ket = a.ket.iter().chain(&b.ket).copied().collect();
                terms.push((a.tau_exp + b.tau_exp, ket));
            }
        }
        Self::new(self.d, self.n_sites + other.n_sites, terms)
    }

    /// Equal up to a global phase.
    pub fn same_ray(&self, other: &Self) -> bool {
        self.d == other.d
            && self.len() == other.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|(a, b)| a.ket == b.ket)
            && {
                let shift =
                    |a: &Term, b: &Term| canonical_tau(self.d, b.tau_exp as i64 - a.tau_exp as i64);
                let s0 = shift(&self.terms[0], &other.terms[0]);
                self.terms
                    .iter()
                    .zip(&other.terms)
                    .all(|(a, b)| shift(a, b) == s0)
            }
    }
}

/// `Σ_z |z⟩^{⊗N} / √d`, or for `anders_browne` (d = 2, N = 3 only) the
/// state `(|001⟩ - |110⟩)/√2`.
pub fn make_ghz(d: u32, n_sites: usize, anders_browne: bool) -> Result<SparseState> {
    if anders_browne {
        if d != 2 || n_sites != 3 {
            return Err(Error::Unsupported(
                "the Anders-Browne state has d = 2 and N = 3".into(),
            ));
        }
        return SparseState::new(2, 3, vec![(0, vec![0, 0, 1]), (2, vec![1, 1, 0])]);
    }
    SparseState::new(d, n_sites, (0..d).map(|z| (0, vec![z; n_sites])).collect())
}

/// `Σ_z |z⟩^{⊗2} |z+1⟩^{⊗2} ⋯ |z+d-1⟩^{⊗2} / √d` on `2d` qudits.
pub fn make_example2_state(d: u32) -> Result<SparseState> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "this state needs odd d >= 3, got {d}"
        )));
    }
    let terms = (0..d)
        .map(|z| (0, (0..2 * d).map(|k| (z + k / 2) % d).collect()))
        .collect();
    SparseState::new(d, 2 * d as usize, terms)
}

/// Exact `M|ψ⟩`; the result keeps the same number of terms.
pub fn apply_observable(m: &GlobalObservable, psi: &SparseState) -> Result<SparseState> {
    if m.sites.len() != psi.n_sites {
        return Err(Error::DimensionMismatch(format!(
            "{} site observable on {} qudits",
            m.sites.len(),
            psi.n_sites
        )));
    }
    if m.sites.iter().any(|s| s.d != psi.d) {
        return Err(Error::DimensionMismatch(
            "observable and state dimensions differ".into(),
        ));
    }
    let terms = psi
        .terms
        .iter()
        .map(|t| {
            let mut tau = t.tau_exp as i64;
            let ket = t
                .ket
                .iter()
                .zip(&m.sites)
                .map(|(&z, s)| {
                    tau += s.phase[z as usize] as i64;
                    s.perm[z as usize]
                })
                .collect();
            (tau.rem_euclid(2 * psi.d as i64) as u32, ket)
        })
        .collect();
    SparseState::new(psi.d, psi.n_sites, terms)
}

/// `o` with `M|ψ⟩ = ω^o |ψ⟩`, or `None` if ψ is not an eigenvector.
pub fn eigenphase_of(m: &GlobalObservable, psi: &SparseState) -> Result<Option<u32>> {
    let image = apply_observable(m, psi)?;
    if !image.same_ray(psi) {
        return Ok(None);
    }
    let shift = image.terms[0].tau_exp as i64 - psi.terms[0].tau_exp as i64;
    tau_to_omega(psi.d, canonical_tau(psi.d, shift)).map(Some)
}

/// Exact distribution of outcomes when `site` is measured with `m`, using
/// the spectral projectors `P_k = (1/d) Σ_j ω^{-jk} M^j`.
pub fn outcome_branches(psi: &SparseState, site: usize, m: &MonomialMatrix) -> Result<Vec<Branch>> {
    let d = psi.d;
    if site >= psi.n_sites || m.d != d {
        return Err(Error::DimensionMismatch(format!(
            "site {site} of {} qudits",
            psi.n_sites
        )));
    }
    m.validate()?;
    // amplitudes are sums of powers of ρ: ρ = ω for odd d, ρ = τ for even d
    let order = if d % 2 == 1 { d } else { 2 * d } as usize;
    let to_rho = |tau: i64| -> usize {
        let t = canonical_tau(d, tau);
        if d % 2 == 1 {
            tau_to_omega(d, t).expect("odd d") as usize
        } else {
            t as usize
        }
    };
    let ring = CyclotomicRing::new(order);
    let powers: Vec<MonomialMatrix> = (0..d).map(|j| m.pow(j)).collect();
    let total = BigInt::from(psi.len());
    let mut branches = Vec::new();
    for k in 0..d {
        let mut amps: BTreeMap<Vec<u32>, Vec<i64>> = BTreeMap::new();
        for t in &psi.terms {
            let z = t.ket[site] as usize;
            for (j, mj) in powers.iter().enumerate() {
                let mut ket = t.ket.clone();
                ket[site] = mj.perm[z];
                let tau = t.tau_exp as i64 + mj.phase[z] as i64 - 2 * j as i64 * k as i64;
                amps.entry(ket).or_insert_with(|| vec![0; order])[to_rho(tau)] += 1;
            }
        }
        let mut common: Option<i64> = None;
        let mut terms = Vec::new();
        for (ket, coeffs) in amps {
            let reduced = ring.reduce(&coeffs);
            if reduced.iter().all(|&x| x == 0) {
                continue;
            }
            let (n, r) = ring
                .as_scaled_root(&reduced)
                .filter(|(n, _)| common.map_or(true, |c| c == *n))
                .ok_or_else(|| {
                    Error::NotSparseRepresentable(format!("outcome {k} at site {site}"))
                })?;
            common = Some(n);
            let tau = if d % 2 == 1 { 2 * r as u32 } else { r as u32 };
            terms.push((tau, ket));
        }
        if let Some(n) = common {
            let kept = BigInt::from(terms.len());
            let probability =
                BigRational::new(kept * BigInt::from(n * n), BigInt::from(d * d) * &total);
            let state = SparseState::new(d, psi.n_sites, terms)?;
            branches.push(Branch {
                outcome: k,
                probability,
                state,
            });
        }
    }
    Ok(branches)
}

/// Sample one local measurement outcome and the post-measurement state.
pub fn measure_local<R: Rng + ?Sized>(
    psi: &SparseState,
    site: usize,
    m: &MonomialMatrix,
    rng: &mut R,
) -> Result<(u32, SparseState)> {
    let mut branches = outcome_branches(psi, site, m)?;
    let index = sample_index(branches.iter().map(|b| &b.probability), rng);
    let b = branches.swap_remove(index);
    Ok((b.outcome, b.state))
}

/// Draw an index with the given exact weights, which must sum to one.
pub fn sample_index<'a, R: Rng + ?Sized>(
    weights: impl Iterator<Item = &'a BigRational>,
    rng: &mut R,
) -> usize {
    use num_traits::ToPrimitive;
    let weights: Vec<f64> = weights.map(|w| w.to_f64().unwrap_or(0.0)).collect();
    let x: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if x < acc {
            return i;
        }
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}
