//! Plans and their JSON form.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::resource::{RawTable, TableResource};
use crate::error::{Error, Result};
use crate::qudit_state::{MonomialMatrix, SparseState};
use crate::weyl::{named_clifford, CliffordSpec, NamedClifford, WeylLabel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resource {
    State(SparseState),
    Table(TableResource),
}

impl Resource {
    pub fn d(&self) -> u32 {
        match self {
            Resource::State(s) => s.d,
            Resource::Table(t) => t.d,
        }
    }

    pub fn n_sites(&self) -> usize {
        match self {
            Resource::State(s) => s.n_sites,
            Resource::Table(t) => t.n_sites,
        }
    }
}

/// One party: measures `V^q M(0) V^{-q}` where `M(0)` is the fiducial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Party {
    pub fiducial: WeylLabel,
    pub control: CliffordSpec,
}

/// Settings `q = T m + Q i + q0`, output `o = z·m + s0`, all mod `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbqcPlan {
    pub d: u32,
    pub n: usize,
    pub n_parties: usize,
    pub resource: Resource,
    pub parties: Vec<Party>,
    pub q: Vec<Vec<u32>>,
    pub q0: Vec<u32>,
    pub t: Vec<Vec<u32>>,
    pub z: Vec<u32>,
    pub s0: u32,
}

impl MbqcPlan {
    /// A flat plan with no affine offsets.
    pub fn flat(
        d: u32,
        n: usize,
        resource: Resource,
        parties: Vec<Party>,
        q: Vec<Vec<u32>>,
        z: Vec<u32>,
        s0: u32,
    ) -> Result<Self> {
        let n_parties = parties.len();
        Self {
            d,
            n,
            n_parties,
            resource,
            parties,
            q,
            q0: vec![0; n_parties],
            t: vec![vec![0; n_parties]; n_parties],
            z,
            s0,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let (d, n, big_n) = (self.d, self.n, self.n_parties);
        let bad = |msg: String| Err(Error::InvalidPlan(msg));
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        if self.resource.d() != d || self.resource.n_sites() != big_n {
            return bad(format!(
                "resource is over Z_{} with {} sites, plan has d = {d} and N = {big_n}",
                self.resource.d(),
                self.resource.n_sites()
            ));
        }
        if self.parties.len() != big_n {
            return bad(format!(
                "{} parties listed, N = {big_n}",
                self.parties.len()
            ));
        }
        if self.q.len() != big_n || self.q.iter().any(|r| r.len() != n) {
            return bad(format!("Q must be {big_n}x{n}"));
        }
        if self.t.len() != big_n || self.t.iter().any(|r| r.len() != big_n) {
            return bad(format!("T must be {big_n}x{big_n}"));
        }
        if self.q0.len() != big_n || self.z.len() != big_n {
            return bad(format!("q0 and z must have length {big_n}"));
        }
        let entries = self
            .q
            .iter()
            .chain(&self.t)
            .flatten()
            .chain(&self.q0)
            .chain(&self.z)
            .chain(std::iter::once(&self.s0));
        if entries.into_iter().any(|&x| x >= d) {
            return bad("entries must be canonical representatives 0..d-1".into());
        }
        for (k, row) in self.t.iter().enumerate() {
            if row[k..].iter().any(|&x| x != 0) {
                return bad(format!("T must be strictly lower triangular (row {k})"));
            }
        }
        for (k, p) in self.parties.iter().enumerate() {
            if p.fiducial.d != d || p.control.d() != d {
                return bad(format!("party {k} is not over Z_{d}"));
            }
            MonomialMatrix::from_weyl(0, &p.fiducial)
                .validate()
                .map_err(|e| Error::InvalidPlan(format!("party {k} fiducial: {e}")))?;
        }
        Ok(())
    }

    pub fn is_flat(&self) -> bool {
        self.t.iter().flatten().all(|&x| x == 0)
    }

    /// `Q i + q0 + T m` for party `k`, with `m` the outcomes so far.
    pub fn setting(&self, k: usize, input: &[u32], outcomes: &[u32]) -> u32 {
        let d = self.d as u64;
        let lin = self.q[k]
            .iter()
            .zip(input)
            .map(|(&a, &x)| a as u64 * x as u64)
            .sum::<u64>();
        let adapt = self.t[k]
            .iter()
            .zip(outcomes)
            .map(|(&a, &m)| a as u64 * m as u64)
            .sum::<u64>();
        ((lin + adapt + self.q0[k] as u64) % d) as u32
    }

    pub fn output(&self, outcomes: &[u32]) -> u32 {
        let d = self.d as u64;
        let s = self
            .z
            .iter()
            .zip(outcomes)
            .map(|(&a, &m)| a as u64 * m as u64)
            .sum::<u64>();
        ((s + self.s0 as u64) % d) as u32
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("plan serialises")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("plan serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawPlan = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_plan()
    }

    fn to_raw(&self) -> RawPlan {
        let resource = match &self.resource {
            Resource::State(s) => serde_json::to_value(s),
            Resource::Table(t) => serde_json::to_value(t.to_raw()),
        }
        .expect("resource serialises");
        RawPlan {
            d: self.d,
            n: self.n,
            n_parties: self.n_parties,
            resource,
            parties: self
                .parties
                .iter()
                .map(|p| RawParty {
                    fiducial: RawLabel {
                        v: p.fiducial.v,
                        tau_exp: p.fiducial.tau_exp,
                    },
                    control: RawControl {
                        c: Some(p.control.c.c),
                        x: Some(p.control.x),
                        tau_exp: Some(p.control.tau_exp),
                        named: None,
                        u: None,
                    },
                })
                .collect(),
            q: self.q.clone(),
            q0: if self.q0.iter().any(|&x| x != 0) {
                Some(self.q0.clone())
            } else {
                None
            },
            t: self.t.clone(),
            z: self.z.clone(),
            s0: self.s0,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabel {
    v: [u32; 2],
    #[serde(default)]
    tau_exp: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawControl {
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    c: Option<[[u32; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_exp: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    named: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParty {
    fiducial: RawLabel,
    control: RawControl,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlan {
    d: u32,
    n: usize,
    #[serde(rename = "N")]
    n_parties: usize,
    resource: Value,
    parties: Vec<RawParty>,
    #[serde(rename = "Q")]
    q: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q0: Option<Vec<u32>>,
    #[serde(rename = "T")]
    t: Vec<Vec<u32>>,
    z: Vec<u32>,
    #[serde(default)]
    s0: u32,
}

impl RawControl {
    fn into_spec(self, d: u32, k: usize) -> Result<CliffordSpec> {
        let ctx = |e: Error| Error::InvalidPlan(format!("party {k} control: {e}"));
        let x = self.x.unwrap_or([0, 0]);
        let spec = match (self.named.as_deref(), self.c) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidPlan(format!(
                    "party {k} control has both \"named\" and \"C\""
                )))
            }
            (Some("S"), None) => named_clifford(NamedClifford::S, d).map_err(ctx)?,
            (Some("Mu"), None) => {
                let u = self.u.ok_or_else(|| {
                    Error::InvalidPlan(format!("party {k} control Mu needs \"u\""))
                })?;
                named_clifford(NamedClifford::Mu(u), d).map_err(ctx)?
            }
            (Some(other), None) => {
                return Err(Error::InvalidPlan(format!(
                    "party {k}: unknown Clifford {other:?}"
                )))
            }
            (None, Some(c)) => CliffordSpec::new(d, c, [0, 0], 0).map_err(ctx)?,
            (None, None) => {
                return Err(Error::InvalidPlan(format!(
                    "party {k} control needs \"C\" or \"named\""
                )))
            }
        };
        if x.iter().any(|&a| a >= d) {
            return Err(Error::InvalidPlan(format!(
                "party {k} displacement out of range"
            )));
        }
        Ok(CliffordSpec {
            x,
            tau_exp: crate::weyl::canonical_tau(d, self.tau_exp.unwrap_or(0) as i64),
            ..spec
        })
    }
}

impl RawPlan {
    fn into_plan(self) -> Result<MbqcPlan> {
        let d = self.d;
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        let resource = if self.resource.get("terms").is_some() {
            Resource::State(
                serde_json::from_value(self.resource)
                    .map_err(|e| Error::Parse(format!("resource: {e}")))?,
            )
        } else if self.resource.get("entries").is_some() {
            let raw: RawTable = serde_json::from_value(self.resource)
                .map_err(|e| Error::Parse(format!("resource: {e}")))?;
            Resource::Table(TableResource::from_raw(raw)?)
        } else {
            return Err(Error::Parse(
                "resource needs \"terms\" (state) or \"entries\" (table)".into(),
            ));
        };
        let parties = self
            .parties
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                if p.fiducial.v.iter().any(|&a| a >= d) || p.fiducial.tau_exp >= 2 * d {
                    return Err(Error::InvalidPlan(format!(
                        "party {k} fiducial out of range"
                    )));
                }
                Ok(Party {
                    fiducial: WeylLabel::new(d, p.fiducial.v, p.fiducial.tau_exp),
                    control: p.control.into_spec(d, k)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MbqcPlan {
            d,
            n: self.n,
            n_parties: self.n_parties,
            resource,
            q0: self.q0.unwrap_or_else(|| vec![0; self.n_parties]),
            parties,
            q: self.q,
            t: self.t,
            z: self.z,
            s0: self.s0,
        }
        .validated()
    }
}
