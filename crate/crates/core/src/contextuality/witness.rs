//! Verdicts and their certificates.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    StronglyNonlocal,
    NcvaFound,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::StronglyNonlocal => "strongly-nonlocal",
            Verdict::NcvaFound => "ncva-found",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// `tables[k][q]` is the value assigned to party `k` at setting `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalAssignment {
    pub tables: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Assignment(LocalAssignment),
    Exhausted { nodes: u64 },
    Degree { monomial: Vec<u32>, degree: u32 },
    BudgetExceeded { nodes: u64 },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// Number of joint local assignments, for searches.
    pub search_size: Option<u128>,
}

impl Witness {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "verdict: {}", self.verdict.as_str()).unwrap();
        match &self.certificate {
            Certificate::Assignment(a) => {
                writeln!(s, "certificate: local assignment").unwrap();
                for (k, t) in a.tables.iter().enumerate() {
                    let row: Vec<String> = t.iter().map(u32::to_string).collect();
                    writeln!(s, "  s{}: {}", k + 1, row.join(",")).unwrap();
                }
            }
            Certificate::Exhausted { nodes } => {
                writeln!(s, "certificate: exhaustive search ({nodes} nodes)").unwrap()
            }
            Certificate::Degree { monomial, degree } => {
                let e: Vec<String> = monomial.iter().map(u32::to_string).collect();
                writeln!(
                    s,
                    "certificate: monomial ({}) of degree {degree}",
                    e.join(",")
                )
                .unwrap();
            }
            Certificate::BudgetExceeded { nodes } => {
                writeln!(s, "certificate: search stopped after {nodes} nodes").unwrap()
            }
            Certificate::None => writeln!(s, "certificate: none").unwrap(),
        }
        if let Some(size) = self.search_size {
            writeln!(s, "search-size: {size}").unwrap();
        }
        s
    }
}
