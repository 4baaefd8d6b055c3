//! Abstract correlated resources given as tables of outcome distributions.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// For each setting vector `q`, a distribution over outcome vectors `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableResource {
    pub d: u32,
    pub n_sites: usize,
    pub entries: BTreeMap<Vec<u32>, Vec<(Vec<u32>, BigRational)>>,
}

#[derive(Serialize, Deserialize)]
struct RawOutcome {
    m: Vec<u32>,
    p: String,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    q: Vec<u32>,
    outcomes: Vec<RawOutcome>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct RawTable {
    d: u32,
    #[serde(rename = "N")]
    n_sites: usize,
    entries: Vec<RawEntry>,
}

impl TableResource {
    pub fn new(
        d: u32,
        n_sites: usize,
        entries: BTreeMap<Vec<u32>, Vec<(Vec<u32>, BigRational)>>,
    ) -> Result<Self> {
        for (q, dist) in &entries {
            check_vector(d, n_sites, q)?;
            let mut total = BigRational::zero();
            for (m, p) in dist {
                check_vector(d, n_sites, m)?;
                if *p < BigRational::zero() {
                    return Err(Error::InvalidPlan(format!(
                        "negative probability for setting {q:?}"
                    )));
                }
                total += p;
            }
            if !total.is_one() {
                return Err(Error::InvalidPlan(format!(
                    "distribution for setting {q:?} sums to {total}"
                )));
            }
        }
        Ok(TableResource {
            d,
            n_sites,
            entries,
        })
    }

    /// A resource with one deterministic outcome vector per setting vector.
    pub fn deterministic(d: u32, n_sites: usize, f: impl Fn(&[u32]) -> Vec<u32>) -> Result<Self> {
        let entries = crate::field_poly::all_inputs(d, n_sites)
            .map(|q| {
                let m = f(&q);
                (q, vec![(m, BigRational::one())])
            })
            .collect();
        Self::new(d, n_sites, entries)
    }

    pub fn distribution(&self, q: &[u32]) -> Result<&[(Vec<u32>, BigRational)]> {
        self.entries.get(q).map(Vec::as_slice).ok_or_else(|| {
            Error::InvalidPlan(format!("table resource has no entry for setting {q:?}"))
        })
    }

    /// Probability that the first `prefix.len()` outcomes equal `prefix`
    /// when the settings are `q`.
    pub fn marginal(&self, q: &[u32], prefix: &[u32]) -> Result<BigRational> {
        Ok(self
            .distribution(q)?
            .iter()
            .filter(|(m, _)| m.starts_with(prefix))
            .fold(BigRational::zero(), |acc, (_, p)| acc + p))
    }

    pub(crate) fn to_raw(&self) -> RawTable {
        RawTable {
            d: self.d,
            n_sites: self.n_sites,
            entries: self
                .entries
                .iter()
                .map(|(q, dist)| RawEntry {
                    q: q.clone(),
                    outcomes: dist
                        .iter()
                        .map(|(m, p)| RawOutcome {
                            m: m.clone(),
                            p: p.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub(crate) fn from_raw(raw: RawTable) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for e in raw.entries {
            let dist = e
                .outcomes
                .into_iter()
                .map(|o| {
                    let p =
                        o.p.parse::<BigRational>()
                            .map_err(|_| Error::Parse(format!("bad probability {:?}", o.p)))?;
                    Ok((o.m, p))
                })
                .collect::<Result<Vec<_>>>()?;
            if entries.insert(e.q.clone(), dist).is_some() {
                return Err(Error::InvalidPlan(format!(
                    "setting {:?} listed twice",
                    e.q
                )));
            }
        }
        Self::new(raw.d, raw.n_sites, entries)
    }
}

fn check_vector(d: u32, n: usize, v: &[u32]) -> Result<()> {
    if v.len() != n || v.iter().any(|&x| x >= d) {
        return Err(Error::InvalidPlan(format!(
            "vector {v:?} is not in Z_{d}^{n}"
        )));
    }
    Ok(())
}
