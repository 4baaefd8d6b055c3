//! Compilation of target functions into measurement plans.

mod examples;
mod single_variable;

pub use examples::{compile_exponential, compile_nand, compile_quadratic};
pub use single_variable::{
    compile_general_prime, compile_odd_ring, exponential_rows, exponential_sum, exponential_table,
    primitive_element, sigma_plan, sigma_table, TABLE_PRIME_LIMIT,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field_poly::{all_inputs, FunctionTable};
use crate::mbqc_engine::{extract_output_function, MbqcPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    NandGhz,
    Quadratic,
    Exponential,
    PrimeGeneral,
    OddRing,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::NandGhz => "nand-ghz",
            Construction::Quadratic => "quadratic",
            Construction::Exponential => "exponential",
            Construction::PrimeGeneral => "prime-general",
            Construction::OddRing => "odd-ring",
        }
    }
}

/// An affine map `f(i) = Σ_j coeffs[j] i_j + offset` over Z_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub coeffs: Vec<u32>,
    pub offset: u32,
}

impl LinearMap {
    /// `f(i) = i` on a single input.
    pub fn identity() -> Self {
        LinearMap {
            coeffs: vec![1],
            offset: 0,
        }
    }

    pub fn constant(n: usize, c: u32) -> Self {
        LinearMap {
            coeffs: vec![0; n],
            offset: c,
        }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, input: &[u32], d: u32) -> u32 {
        let s: u64 = self
            .coeffs
            .iter()
            .zip(input)
            .map(|(&a, &x)| a as u64 * x as u64)
            .sum();
        ((s + self.offset as u64) % d as u64) as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompileReport {
    pub plan: MbqcPlan,
    pub target: FunctionTable,
    pub qudit_count: usize,
    pub construction: Construction,
    pub verified: bool,
}

impl CompileReport {
    fn new(plan: MbqcPlan, target: FunctionTable, construction: Construction) -> Result<Self> {
        let mut report = CompileReport {
            qudit_count: plan.n_parties,
            plan,
            target,
            construction,
            verified: false,
        };
        verify(&mut report)?;
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        let plan: serde_json::Value =
            serde_json::from_str(&self.plan.to_json()).expect("plan serializes");
        serde_json::json!({
            "construction": self.construction,
            "qudit_count": self.qudit_count,
            "verified": self.verified,
            "target": self.target.values,
            "plan": plan,
        })
        .to_string()
    }
}

/// Compare the plan's extracted output with the target on every input.
/// Sets `verified` or fails with the first differing input.
pub fn verify(report: &mut CompileReport) -> Result<()> {
    report.verified = false;
    let got = extract_output_function(&report.plan)?.table;
    if got.d != report.target.d || got.n != report.target.n {
        return Err(Error::DimensionMismatch(format!(
            "plan computes a function Z_{}^{} but the target is on Z_{}^{}",
            got.d, got.n, report.target.d, report.target.n
        )));
    }
    for input in all_inputs(got.d, got.n) {
        let (expected, value) = (report.target.get(&input), got.get(&input));
        if expected != value {
            return Err(Error::VerificationFailed {
                input,
                expected,
                got: value,
            });
        }
    }
    report.verified = true;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tampered_plans_fail() {
        let mut r = compile_exponential(5, 2, &LinearMap::identity()).unwrap();
        assert!(r.verified);
        r.plan.z[0] = 2;
        assert_eq!(
            verify(&mut r),
            Err(Error::VerificationFailed {
                input: vec![0],
                expected: 1,
                got: 2
            })
        );
        assert!(!r.verified);
    }

    #[test]
    fn no_inputs() {
        let r = compile_exponential(3, 2, &LinearMap::constant(0, 1)).unwrap();
        assert!(r.verified);
        assert_eq!(r.target.values, vec![2]);
    }

    #[test]
    fn report_json() {
        let r = compile_nand().unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["construction"], "nand-ghz");
        assert_eq!(v["qudit_count"], 3);
        assert_eq!(v["plan"]["N"], 3);
    }
}
