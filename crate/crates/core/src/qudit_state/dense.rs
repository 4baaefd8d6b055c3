//! Dense complex state vectors. Slow, tolerance based, and independent of
//! the exact sparse arithmetic.

use num_complex::Complex64;

use super::{GlobalObservable, MonomialMatrix, SparseState};
use crate::error::{Error, Result};
use crate::weyl::dense::{omega, tau_pow, DenseMatrix};

/// Largest state vector the dense backend will allocate.
pub const DENSE_LIMIT: usize = 1_000_000;
/// Default proportionality tolerance.
pub const TOLERANCE: f64 = 1e-9;
/// Phase mismatch beyond which snapping is refused.
pub const ALARM: f64 = 1e-6;

fn dimension(d: u32, n: usize) -> Result<usize> {
    (0..n)
        .try_fold(1usize, |acc, _| {
            acc.checked_mul(d as usize).filter(|&x| x <= DENSE_LIMIT)
        })
        .ok_or_else(|| Error::SizeGuard(format!("{d}^{n} amplitudes exceeds {DENSE_LIMIT}")))
}

/// Amplitudes indexed with the first qudit most significant.
pub fn to_dense(psi: &SparseState) -> Result<Vec<Complex64>> {
    let dim = dimension(psi.d, psi.n_sites)?;
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    let norm = (psi.len() as f64).sqrt();
    for t in &psi.terms {
        let index = t
            .ket
            .iter()
            .fold(0usize, |acc, &z| acc * psi.d as usize + z as usize);
        out[index] = tau_pow(psi.d, t.tau_exp as i64) / norm;
    }
    Ok(out)
}

pub fn monomial_to_dense(m: &MonomialMatrix) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(m.d as usize);
    for z in 0..m.d as usize {
        out.set(m.perm[z] as usize, z, tau_pow(m.d, m.phase[z] as i64));
    }
    out
}

/// Apply `⊗_k sites[k]` to a dense vector, one site at a time.
pub fn apply_sites(d: u32, sites: &[DenseMatrix], psi: &[Complex64]) -> Result<Vec<Complex64>> {
    let dim = dimension(d, sites.len())?;
    if psi.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for {dim}",
            psi.len()
        )));
    }
    let d = d as usize;
    let mut cur = psi.to_vec();
    for (k, m) in sites.iter().enumerate() {
        let stride = d.pow((sites.len() - 1 - k) as u32);
        let mut next = vec![Complex64::new(0.0, 0.0); dim];
        for (idx, amp) in cur.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let z = (idx / stride) % d;
            let base = idx - z * stride;
            for r in 0..d {
                let e = m.get(r, z);
                if e.norm_sqr() != 0.0 {
                    next[base + r * stride] += e * amp;
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `o` with `M ψ = ω^o ψ` within `tolerance`, or `None`.
pub fn dense_eigenphase(
    d: u32,
    sites: &[DenseMatrix],
    psi: &[Complex64],
    tolerance: f64,
) -> Result<Option<u32>> {
    let image = apply_sites(d, sites, psi)?;
    let overlap: Complex64 = psi.iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
    let residual: f64 = psi
        .iter()
        .zip(&image)
        .map(|(a, b)| (b - overlap * a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > tolerance || (overlap.norm() - 1.0).abs() > tolerance {
        return Ok(None);
    }
    let turns = overlap.arg() / (2.0 * std::f64::consts::PI) * d as f64;
    let k = (turns.round() as i64).rem_euclid(d as i64) as u32;
    let miss = (overlap - omega(d).powu(k)).norm();
    if miss > ALARM {
        return Err(Error::Inconsistency(format!(
            "eigenvalue {overlap} is not a power of omega"
        )));
    }
    Ok(Some(k))
}

/// Dense cross-check of [`super::eigenphase_of`].
pub fn dense_oracle(
    m: &GlobalObservable,
    psi: &SparseState,
    tolerance: f64,
) -> Result<Option<u32>> {
    if m.sites.len() != psi.n_sites {
        return Err(Error::DimensionMismatch(
            "observable and state sizes differ".into(),
        ));
    }
    let vec = to_dense(psi)?;
    let sites: Vec<DenseMatrix> = m.sites.iter().map(monomial_to_dense).collect();
    dense_eigenphase(psi.d, &sites, &vec, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit_state::{eigenphase_of, make_example2_state, make_ghz};
    use crate::weyl::WeylLabel;

    #[test]
    fn agrees_with_sparse() {
        let psi = make_ghz(2, 3, true).unwrap();
        let x = MonomialMatrix::from_weyl(0, &WeylLabel::x(2));
        let y = MonomialMatrix::from_weyl(0, &WeylLabel::new(2, [1, 1], 0));
        for sites in [
            vec![x.clone(), x.clone(), x.clone()],
            vec![y.clone(), y.clone(), x.clone()],
            vec![x.clone(), y, x],
        ] {
            let m = GlobalObservable::new(sites).unwrap();
            assert_eq!(
                dense_oracle(&m, &psi, TOLERANCE).unwrap(),
                eigenphase_of(&m, &psi).unwrap()
            );
        }
        let psi = make_example2_state(3).unwrap();
        let id = GlobalObservable::identity(3, 6);
        assert_eq!(dense_oracle(&id, &psi, TOLERANCE).unwrap(), Some(0));
    }

    #[test]
    fn non_eigenstate() {
        let zero = SparseState::basis(3, vec![0]).unwrap();
        let x =
            GlobalObservable::new(vec![MonomialMatrix::from_weyl(0, &WeylLabel::x(3))]).unwrap();
        assert_eq!(dense_oracle(&x, &zero, TOLERANCE).unwrap(), None);
    }

    #[test]
    fn guard() {
        let psi = make_ghz(2, 21, false).unwrap();
        assert!(matches!(to_dense(&psi), Err(Error::SizeGuard(_))));
    }
}
