//! Exhaustive search for local value assignments.

use super::witness::{Certificate, LocalAssignment, Verdict, Witness};
use crate::error::{Error, Result};
use crate::field_poly::{all_inputs, FunctionTable};
use crate::mbqc_engine::{extract_output_function, MbqcPlan};

/// Nodes visited before a search reports "inconclusive".
pub const NODE_BUDGET: u64 = 20_000_000;

/// A flat instance: find `s_k` with `Σ_k z_k s_k(q_k(i)) + s0 = target(i)`,
/// where `q(i) = Q i + q0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcvaInstance {
    pub d: u32,
    pub n: usize,
    pub n_parties: usize,
    pub q: Vec<Vec<u32>>,
    pub q0: Vec<u32>,
    pub z: Vec<u32>,
    pub s0: u32,
    pub target: FunctionTable,
}

impl NcvaInstance {
    /// The instance of a flat, deterministic plan with its own output table.
    pub fn from_plan(plan: &MbqcPlan) -> Result<Self> {
        if !plan.is_flat() {
            return Err(Error::Unsupported(
                "value-assignment search needs a temporally flat plan".into(),
            ));
        }
        let target = extract_output_function(plan)?.table;
        Ok(NcvaInstance {
            d: plan.d,
            n: plan.n,
            n_parties: plan.n_parties,
            q: plan.q.clone(),
            q0: plan.q0.clone(),
            z: plan.z.clone(),
            s0: plan.s0,
            target,
        })
    }

    fn setting(&self, k: usize, input: &[u32]) -> u32 {
        let lin: u64 = self.q[k]
            .iter()
            .zip(input)
            .map(|(&a, &x)| a as u64 * x as u64)
            .sum();
        ((lin + self.q0[k] as u64) % self.d as u64) as u32
    }

    /// `(coefficients over variables k*d + q, right-hand side)` per input.
    pub fn constraints(&self) -> Vec<(Vec<(usize, u32)>, u32)> {
        let d = self.d;
        all_inputs(d, self.n)
            .map(|input| {
                let vars = (0..self.n_parties)
                    .filter(|&k| self.z[k] % d != 0)
                    .map(|k| {
                        (
                            k * d as usize + self.setting(k, &input) as usize,
                            self.z[k] % d,
                        )
                    })
                    .collect();
                let rhs = (self.target.get(&input) + d - self.s0 % d) % d;
                (vars, rhs)
            })
            .collect()
    }

    /// `d^{N·d}`, the number of joint local assignments.
    pub fn search_size(&self) -> Option<u128> {
        (self.d as u128).checked_pow((self.n_parties * self.d as usize) as u32)
    }
}

/// Depth-first search over `s_k(q)` in party order, settings and values
/// ascending. A variable whose constraint has all other variables fixed is
/// restricted to the values satisfying it.
pub fn ncva_search(instance: &NcvaInstance) -> Result<Witness> {
    ncva_search_with_budget(instance, NODE_BUDGET)
}

pub fn ncva_search_with_budget(instance: &NcvaInstance, budget: u64) -> Result<Witness> {
    let d = instance.d;
    let size = instance
        .search_size()
        .filter(|&s| s <= 1u128 << 64)
        .ok_or_else(|| {
            Error::SizeGuard(format!(
                "{d}^({}*{d}) local assignments",
                instance.n_parties
            ))
        })?;
    let n_vars = instance.n_parties * d as usize;
    let constraints = instance.constraints();
    let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); n_vars];
    for (c, (vars, _)) in constraints.iter().enumerate() {
        for &(v, _) in vars {
            by_var[v].push(c);
        }
    }
    let mut search = Search {
        d,
        constraints: &constraints,
        by_var: &by_var,
        values: vec![None; n_vars],
        nodes: 0,
        budget,
    };
    // constraints without variables are fixed by the plan alone
    let trivial_ok = constraints
        .iter()
        .all(|(vars, rhs)| !vars.is_empty() || *rhs == 0);
    let found = if trivial_ok {
        search.descend(0)
    } else {
        Some(false)
    };
    let nodes = search.nodes;
    Ok(match found {
        Some(true) => {
            let tables = search
                .values
                .chunks(d as usize)
                .map(|c| c.iter().map(|v| v.expect("all assigned")).collect())
                .collect();
            Witness {
                verdict: Verdict::NcvaFound,
                certificate: Certificate::Assignment(LocalAssignment { tables }),
                search_size: Some(size),
            }
        }
        Some(false) => Witness {
            verdict: Verdict::StronglyNonlocal,
            certificate: Certificate::Exhausted { nodes },
            search_size: Some(size),
        },
        None => Witness {
            verdict: Verdict::Inconclusive,
            certificate: Certificate::BudgetExceeded { nodes },
            search_size: Some(size),
        },
    })
}

struct Search<'a> {
    d: u32,
    constraints: &'a [(Vec<(usize, u32)>, u32)],
    by_var: &'a [Vec<usize>],
    values: Vec<Option<u32>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `Some(found)`, or `None` when the budget ran out.
    fn descend(&mut self, var: usize) -> Option<bool> {
        if var == self.values.len() {
            return Some(true);
        }
        for x in self.candidates(var) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.values[var] = Some(x);
            if self.consistent(var) {
                match self.descend(var + 1) {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        self.values[var] = None;
        Some(false)
    }

    /// Values for `var` allowed by constraints where it is the last free variable.
    fn candidates(&self, var: usize) -> Vec<u32> {
        let d = self.d as u64;
        let mut allowed: Vec<u32> = (0..self.d).collect();
        for &c in &self.by_var[var] {
            let (vars, rhs) = &self.constraints[c];
            let mut partial = 0u64;
            let mut coeff = 0u64;
            let mut free = false;
            for &(v, a) in vars {
                if v == var {
                    coeff = a as u64;
                } else if let Some(x) = self.values[v] {
                    partial += a as u64 * x as u64;
                } else {
                    free = true;
                }
            }
            if !free {
                let need = (*rhs as u64 + d * d - partial % d) % d;
                allowed.retain(|&x| (coeff * x as u64) % d == need);
            }
        }
        allowed
    }

    fn consistent(&self, var: usize) -> bool {
        let d = self.d as u64;
        self.by_var[var].iter().all(|&c| {
            let (vars, rhs) = &self.constraints[c];
            let mut sum = 0u64;
            for &(v, a) in vars {
                match self.values[v] {
                    Some(x) => sum += a as u64 * x as u64,
                    None => return true,
                }
            }
            sum % d == *rhs as u64
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(d: u32, n: usize, q: Vec<Vec<u32>>, z: Vec<u32>, target: Vec<u32>) -> NcvaInstance {
        let n_parties = q.len();
        NcvaInstance {
            d,
            n,
            n_parties,
            q,
            q0: vec![0; n_parties],
            z,
            s0: 0,
            target: FunctionTable::new(d, n, target).unwrap(),
        }
    }

    #[test]
    fn nand_has_no_local_model() {
        let inst = instance(
            2,
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![1, 1, 1],
            vec![1, 1, 1, 0],
        );
        let w = ncva_search(&inst).unwrap();
        assert_eq!(w.verdict, Verdict::StronglyNonlocal);
        assert_eq!(w.search_size, Some(64));
    }

    #[test]
    fn exponential_has_one() {
        let inst = instance(5, 1, vec![vec![1]], vec![1], vec![1, 3, 4, 2, 1]);
        let w = ncva_search(&inst).unwrap();
        assert_eq!(w.verdict, Verdict::NcvaFound);
        assert_eq!(
            w.certificate,
            Certificate::Assignment(LocalAssignment {
                tables: vec![vec![1, 3, 4, 2, 1]]
            })
        );
        let constant = instance(3, 2, vec![vec![1, 1], vec![2, 0]], vec![1, 1], vec![2; 9]);
        assert_eq!(ncva_search(&constant).unwrap().verdict, Verdict::NcvaFound);
    }

    #[test]
    fn budget_and_guard() {
        let inst = instance(
            2,
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            vec![1, 1, 1],
            vec![1, 1, 1, 0],
        );
        assert_eq!(
            ncva_search_with_budget(&inst, 3).unwrap().verdict,
            Verdict::Inconclusive
        );
        let big = instance(5, 1, vec![vec![1]; 6], vec![1; 6], vec![0; 5]);
        assert!(matches!(ncva_search(&big), Err(Error::SizeGuard(_))));
    }
}
