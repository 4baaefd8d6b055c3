//! Executing plans: sampled runs, exact outcome distributions and output
//! functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::plan::{MbqcPlan, Resource};
use super::resource::TableResource;
use crate::error::{Error, Result};
use crate::field_poly::{all_inputs, interpolate, make_field, FunctionTable, MultiPoly};
use crate::qudit_state::{
    eigenphase_of, measure_local, outcome_branches, sample_index, GlobalObservable, MonomialMatrix,
};
use crate::weyl::conjugate_weyl;

/// Nodes explored by exact branch enumeration before giving up.
pub const BRANCH_BUDGET: usize = 200_000;
/// Seeds used when an output can only be checked by sampling.
pub const SAMPLING_SEEDS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub input: Vec<u32>,
    pub settings: Vec<u32>,
    pub outcomes: Vec<u32>,
    pub output: u32,
}

/// Output table of a deterministic plan, with its polynomial over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFunction {
    pub table: FunctionTable,
    pub poly: Option<MultiPoly>,
}

pub type Distribution = BTreeMap<u32, BigRational>;

fn check_input(plan: &MbqcPlan, input: &[u32]) -> Result<()> {
    if input.len() != plan.n || input.iter().any(|&x| x >= plan.d) {
        return Err(Error::DimensionMismatch(format!(
            "input {input:?} is not in Z_{}^{}",
            plan.d, plan.n
        )));
    }
    Ok(())
}

/// The measurement of party `k` at setting `q`.
pub fn local_observable(plan: &MbqcPlan, k: usize, q: u32) -> Result<MonomialMatrix> {
    let p = &plan.parties[k];
    let (phase, label) = conjugate_weyl(&p.control, &p.fiducial, q)?;
    Ok(MonomialMatrix::from_weyl(phase, &label))
}

/// Settings used for the table lookup at party `k`: the true settings for
/// a flat plan, otherwise the known ones with later parties at 0.
fn lookup_settings(plan: &MbqcPlan, input: &[u32], settings: &[u32]) -> Vec<u32> {
    if plan.is_flat() {
        (0..plan.n_parties)
            .map(|j| plan.setting(j, input, &[]))
            .collect()
    } else {
        let mut q = settings.to_vec();
        q.resize(plan.n_parties, 0);
        q
    }
}

fn table_conditional(
    table: &TableResource,
    q: &[u32],
    prefix: &[u32],
) -> Result<Vec<(u32, BigRational)>> {
    let before = table.marginal(q, prefix)?;
    if before.is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut ext = prefix.to_vec();
    ext.push(0);
    for m in 0..table.d {
        *ext.last_mut().expect("nonempty") = m;
        let joint = table.marginal(q, &ext)?;
        if !joint.is_zero() {
            out.push((m, joint / &before));
        }
    }
    Ok(out)
}

/// One seeded execution, party by party in index order.
pub fn run(plan: &MbqcPlan, input: &[u32], seed: u64) -> Result<RunTrace> {
    check_input(plan, input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut settings = Vec::with_capacity(plan.n_parties);
    let mut outcomes = Vec::with_capacity(plan.n_parties);
    let mut state = match &plan.resource {
        Resource::State(s) => Some(s.clone()),
        Resource::Table(_) => None,
    };
    for k in 0..plan.n_parties {
        let q = plan.setting(k, input, &outcomes);
        settings.push(q);
        let m = match (&plan.resource, state.as_mut()) {
            (Resource::State(_), Some(psi)) => {
                let (m, next) = measure_local(psi, k, &local_observable(plan, k, q)?, &mut rng)?;
                *psi = next;
                m
            }
            (Resource::Table(table), _) => {
                let cond =
                    table_conditional(table, &lookup_settings(plan, input, &settings), &outcomes)?;
                let probs: Vec<BigRational> = cond.iter().map(|(_, p)| p.clone()).collect();
                if cond.is_empty() {
                    return Err(Error::InvalidPlan(format!(
                        "table resource gives party {k} no outcome"
                    )));
                }
                cond[sample_index(probs.iter(), &mut rng)].0
            }
            _ => unreachable!("state resource always has a state"),
        };
        outcomes.push(m);
    }
    let output = plan.output(&outcomes);
    Ok(RunTrace {
        input: input.to_vec(),
        settings,
        outcomes,
        output,
    })
}

/// `o(i)` from the eigenvalue of `⊗_k M_k(q_k)^{z_k}`, for flat plans on a
/// state resource. `None` if the resource is not an eigenvector.
pub fn analytic_output(plan: &MbqcPlan, input: &[u32]) -> Result<Option<u32>> {
    check_input(plan, input)?;
    let Resource::State(psi) = &plan.resource else {
        return Err(Error::Unsupported(
            "analytic outputs need a state resource".into(),
        ));
    };
    if !plan.is_flat() {
        return Err(Error::Unsupported(
            "analytic outputs need a temporally flat plan".into(),
        ));
    }
    let sites = (0..plan.n_parties)
        .map(|k| Ok(local_observable(plan, k, plan.setting(k, input, &[]))?.pow(plan.z[k])))
        .collect::<Result<Vec<_>>>()?;
    let global = GlobalObservable { sites };
    Ok(eigenphase_of(&global, psi)?.map(|o| (o + plan.s0) % plan.d))
}

/// Exact distribution of `o(i)`, or `None` if enumerating the branches
/// would exceed [`BRANCH_BUDGET`].
pub fn output_distribution(plan: &MbqcPlan, input: &[u32]) -> Result<Option<Distribution>> {
    check_input(plan, input)?;
    if plan.is_flat() && matches!(plan.resource, Resource::State(_)) {
        if let Some(o) = analytic_output(plan, input)? {
            return Ok(Some(BTreeMap::from([(o, BigRational::one())])));
        }
    }
    let mut dist = Distribution::new();
    let mut nodes = 0usize;
    match &plan.resource {
        Resource::State(psi) => {
            let mut stack = vec![(psi.clone(), Vec::<u32>::new(), BigRational::one())];
            while let Some((state, outcomes, prob)) = stack.pop() {
                nodes += 1;
                if nodes > BRANCH_BUDGET {
                    return Ok(None);
                }
                let k = outcomes.len();
                if k == plan.n_parties {
                    *dist
                        .entry(plan.output(&outcomes))
                        .or_insert_with(BigRational::zero) += prob;
                    continue;
                }
                let m = local_observable(plan, k, plan.setting(k, input, &outcomes))?;
                for b in outcome_branches(&state, k, &m)? {
                    let mut next = outcomes.clone();
                    next.push(b.outcome);
                    stack.push((b.state, next, &prob * &b.probability));
                }
            }
        }
        Resource::Table(table) => {
            let mut stack = vec![(Vec::<u32>::new(), Vec::<u32>::new(), BigRational::one())];
            while let Some((settings, outcomes, prob)) = stack.pop() {
                nodes += 1;
                if nodes > BRANCH_BUDGET {
                    return Ok(None);
                }
                let k = outcomes.len();
                if k == plan.n_parties {
                    *dist
                        .entry(plan.output(&outcomes))
                        .or_insert_with(BigRational::zero) += prob;
                    continue;
                }
                let mut settings = settings;
                settings.push(plan.setting(k, input, &outcomes));
                for (m, p) in
                    table_conditional(table, &lookup_settings(plan, input, &settings), &outcomes)?
                {
                    let mut next = outcomes.clone();
                    next.push(m);
                    stack.push((settings.clone(), next, &prob * p));
                }
            }
        }
    }
    Ok(Some(dist))
}

/// The single output value for `input`, if the plan is deterministic there.
fn deterministic_output(plan: &MbqcPlan, input: &[u32]) -> Result<Option<u32>> {
    if let Some(dist) = output_distribution(plan, input)? {
        return Ok((dist.len() == 1).then(|| *dist.keys().next().expect("one entry")));
    }
    let first = run(plan, input, 0)?.output;
    for seed in 1..SAMPLING_SEEDS {
        if run(plan, input, seed)?.output != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

/// The full output table, plus its interpolating polynomial when `d` is a
/// prime power.
pub fn extract_output_function(plan: &MbqcPlan) -> Result<OutputFunction> {
    let mut values = Vec::new();
    for input in all_inputs(plan.d, plan.n) {
        match deterministic_output(plan, &input)? {
            Some(o) => values.push(o),
            None => {
                return Err(Error::NonDeterministic(format!(
                    "output at input {input:?} varies between runs; use empirical_success"
                )))
            }
        }
    }
    let table = FunctionTable::new(plan.d, plan.n, values)?;
    let modulus = make_field(plan.d)?;
    let poly = if modulus.is_field() {
        Some(interpolate(&modulus, &table)?)
    } else {
        None
    };
    Ok(OutputFunction { table, poly })
}

/// Whether the output is fixed for every input. Exact where the branches
/// can be enumerated; otherwise checked on the given seeds.
pub fn is_deterministic(plan: &MbqcPlan, seeds: &[u64]) -> Result<bool> {
    if plan.z.iter().all(|&z| z == 0) {
        return Ok(true);
    }
    for input in all_inputs(plan.d, plan.n) {
        if let Some(dist) = output_distribution(plan, &input)? {
            if dist.len() != 1 {
                return Ok(false);
            }
            continue;
        }
        let mut outputs = seeds
            .iter()
            .map(|&s| run(plan, &input, s).map(|t| t.output));
        if let Some(first) = outputs.next().transpose()? {
            for o in outputs {
                if o? != first {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Worst-case and average success probability against a target table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessEstimate {
    pub p_s: BigRational,
    pub p_bar: BigRational,
    pub exact: bool,
}

fn summarise(per_input: Vec<BigRational>, exact: bool) -> SuccessEstimate {
    let count = BigInt::from(per_input.len());
    let p_s = per_input
        .iter()
        .min()
        .cloned()
        .unwrap_or_else(BigRational::one);
    let p_bar = per_input
        .into_iter()
        .fold(BigRational::zero(), |a, b| a + b)
        / BigRational::from_integer(count);
    SuccessEstimate { p_s, p_bar, exact }
}

/// `p_S = min_i Prob(o(i) = target(i))` and the average `p̄_S`. Exact when
/// every output distribution can be enumerated, sampled otherwise.
pub fn empirical_success(
    plan: &MbqcPlan,
    target: &FunctionTable,
    trials: u32,
    seed: u64,
) -> Result<SuccessEstimate> {
    check_target(plan, target)?;
    let mut per_input = Vec::new();
    for input in all_inputs(plan.d, plan.n) {
        match output_distribution(plan, &input)? {
            Some(dist) => per_input.push(
                dist.get(&target.get(&input))
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            ),
            None => return monte_carlo_success(plan, target, trials, seed),
        }
    }
    Ok(summarise(per_input, true))
}

/// Sampled version of [`empirical_success`] with `trials` runs per input.
pub fn monte_carlo_success(
    plan: &MbqcPlan,
    target: &FunctionTable,
    trials: u32,
    seed: u64,
) -> Result<SuccessEstimate> {
    check_target(plan, target)?;
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1".into()));
    }
    let mut per_input = Vec::new();
    for (index, input) in all_inputs(plan.d, plan.n).enumerate() {
        let mut hits = 0u32;
        for t in 0..trials {
            let s = seed ^ ((index as u64) << 32) ^ t as u64;
            if run(plan, &input, s)?.output == target.get(&input) {
                hits += 1;
            }
        }
        per_input.push(BigRational::new(hits.into(), trials.into()));
    }
    Ok(summarise(per_input, false))
}

fn check_target(plan: &MbqcPlan, target: &FunctionTable) -> Result<()> {
    if target.d != plan.d || target.n != plan.n {
        return Err(Error::DimensionMismatch(
            "target table does not match the plan".into(),
        ));
    }
    Ok(())
}
