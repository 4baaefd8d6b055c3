//! The distance ν to low-degree functions and the probabilistic thresholds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field_poly::{all_inputs, monomials_up_to, FunctionTable, Modulus, MultiPoly};

/// Largest number of candidate polynomials `nu_distance` will enumerate.
pub const NU_LIMIT: u64 = 1 << 24;

/// `Δ(q) = min(q, d - q)` on canonical representatives.
pub fn delta_distance(q: u32, d: u32) -> u32 {
    let q = q % d;
    q.min(d - q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuResult {
    pub nu: u64,
    /// Lexicographically first minimiser (coefficient vectors ordered with
    /// the monomials of [`monomials_up_to`]).
    pub minimizer: MultiPoly,
}

/// `ν(o) = min_{p ∈ Ω_n(d-1)} Σ_i Δ(o(i) - p(i))`, by exhaustive enumeration
/// over Z_d.
pub fn nu_distance(o: &FunctionTable) -> Result<NuResult> {
    let d = o.d;
    let ring = Modulus::ring(d)?;
    let monos = monomials_up_to(d, o.n, d - 1);
    let count = (d as u64)
        .checked_pow(monos.len() as u32)
        .filter(|&c| c <= NU_LIMIT)
        .ok_or_else(|| Error::SizeGuard(format!("{d}^{} candidate polynomials", monos.len())))?;
    let inputs: Vec<Vec<u32>> = all_inputs(d, o.n).collect();
    let eval: Vec<Vec<u32>> = inputs
        .iter()
        .map(|x| {
            monos
                .iter()
                .map(|e| {
                    e.iter()
                        .zip(x)
                        .fold(1, |acc, (&a, &xi)| ring.mul(acc, ring.pow(xi, a as u64)))
                })
                .collect()
        })
        .collect();
    let mut coeffs = vec![0u32; monos.len()];
    let mut best: Option<(u64, Vec<u32>)> = None;
    for _ in 0..count {
        let dist: u64 = eval
            .iter()
            .zip(&o.values)
            .map(|(row, &target)| {
                let p = row
                    .iter()
                    .zip(&coeffs)
                    .fold(0u64, |acc, (&m, &c)| acc + m as u64 * c as u64)
                    % d as u64;
                delta_distance((target + d - p as u32) % d, d) as u64
            })
            .sum();
        if best.as_ref().is_none_or(|(b, _)| dist < *b) {
            best = Some((dist, coeffs.clone()));
        }
        // next coefficient vector, last monomial fastest
        for c in coeffs.iter_mut().rev() {
            *c += 1;
            if *c < d {
                break;
            }
            *c = 0;
        }
    }
    let (nu, c) = best.expect("at least one candidate");
    let minimizer = MultiPoly::from_terms(&ring, o.n, monos.into_iter().zip(c))?;
    Ok(NuResult { nu, minimizer })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    /// `1 - 2ν / ((d-1) d^n)`.
    pub threshold: BigRational,
    /// `p_S` strictly above the threshold proves strong non-locality.
    pub exceeded: bool,
    /// `NCF(e) ≤ (1 - p̄_S) / ν`, when `ν > 0`.
    pub ncf_bound: Option<BigRational>,
}

pub fn threshold_check(
    p_s: &BigRational,
    p_bar: &BigRational,
    nu: u64,
    d: u32,
    n: usize,
) -> Result<ThresholdReport> {
    let unit = |p: &BigRational| *p >= BigRational::zero() && *p <= BigRational::one();
    if !unit(p_s) || !unit(p_bar) {
        return Err(Error::OutOfRange("probabilities must lie in [0, 1]".into()));
    }
    let dn = BigInt::from(d).pow(n as u32);
    let threshold =
        BigRational::one() - BigRational::new(BigInt::from(2 * nu), BigInt::from(d - 1) * dn);
    let exceeded = *p_s > threshold;
    let ncf_bound = (nu > 0)
        .then(|| (BigRational::one() - p_bar) / BigRational::from_integer(BigInt::from(nu)));
    Ok(ThresholdReport {
        threshold,
        exceeded,
        ncf_bound,
    })
}
