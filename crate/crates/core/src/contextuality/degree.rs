//! Degree-based witnesses and the temporal-ordering bound.

use super::witness::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::field_poly::{
    interpolate, is_prime, min_degree_representation, FunctionTable, ModulusKind, MultiPoly,
};
use crate::mbqc_engine::{longest_path, temporal_graph, MbqcPlan};

/// Strongly non-local if some monomial of `o` has combined degree at least
/// `d`; otherwise inconclusive.
pub fn degree_witness(o: &MultiPoly) -> Result<Witness> {
    let d = o.modulus().d();
    if let ModulusKind::PrimePowerField { .. } = o.modulus().kind() {
        return Err(Error::UnsupportedModulus(format!(
            "degree witness over GF({d})"
        )));
    }
    let top = o
        .terms()
        .keys()
        .map(|e| (e.iter().sum::<u32>(), e))
        .filter(|(deg, _)| *deg >= d)
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(a.1)));
    Ok(match top {
        Some((degree, e)) => Witness {
            verdict: Verdict::StronglyNonlocal,
            certificate: Certificate::Degree {
                monomial: e.clone(),
                degree,
            },
            search_size: None,
        },
        None => Witness {
            verdict: Verdict::Inconclusive,
            certificate: Certificate::None,
            search_size: None,
        },
    })
}

/// [`degree_witness`] for a table: interpolated for prime `d`, through a
/// least-degree representative over Z_d for composite `d`.
pub fn degree_witness_table(table: &FunctionTable) -> Result<Witness> {
    let d = table.d;
    let poly = if is_prime(d) {
        interpolate(&crate::field_poly::make_field(d)?, table)?
    } else {
        min_degree_representation(table)?
            .ok_or_else(|| Error::Unsupported(format!("table is not a polynomial over Z_{d}")))?
    };
    degree_witness(&poly)
}

/// `(d-1)^{|l|}` with `|l|` the longest dependency chain of the plan.
pub fn temporal_degree_bound(plan: &MbqcPlan) -> Result<u64> {
    let l = longest_path(&temporal_graph(plan))?;
    Ok((plan.d as u64 - 1).pow(l as u32))
}

/// Whether an output of `degree` exceeds the temporal bound of the plan,
/// which proves strong contextuality.
pub fn exceeds_temporal_bound(plan: &MbqcPlan, degree: u32) -> Result<bool> {
    Ok(degree as u64 > temporal_degree_bound(plan)?)
}
