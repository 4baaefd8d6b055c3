//! Exponential sums, the indicator σ_p, and compilation of arbitrary
//! single-variable functions.

use super::{CompileReport, Construction};
use crate::error::{Error, Result};
use crate::field_poly::{is_prime, mod_inverse, mod_pow, FunctionTable};
use crate::mbqc_engine::{extract_output_function, MbqcPlan, Party, Resource};
use crate::qudit_state::SparseState;
use crate::weyl::{named_clifford, CliffordSpec, NamedClifford, WeylLabel};

/// Largest prime accepted by [`exponential_table`].
pub const TABLE_PRIME_LIMIT: u32 = 13;

/// Smallest generator of Z_p^×.
pub fn primitive_element(p: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::UnsupportedModulus(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let order = |g: u64| {
        (1..p as u64)
            .find(|&k| mod_pow(g, k, p as u64) == 1)
            .expect("Fermat")
    };
    Ok((2..p)
        .find(|&g| order(g as u64) == p as u64 - 1)
        .expect("Z_p^x is cyclic"))
}

/// `Σ_{k=1}^{p-1} (u^x)^k mod p`.
pub fn exponential_sum(p: u32, u: u32, x: u32) -> u32 {
    let base = mod_pow(u as u64, x as u64, p as u64);
    ((1..p as u64)
        .map(|k| mod_pow(base, k, p as u64))
        .sum::<u64>()
        % p as u64) as u32
}

/// Rows `u^{rx}` for `r = 1..p-1` and `x = 0..p-1`, with `u` the smallest
/// primitive element.
pub fn exponential_rows(p: u32) -> Result<Vec<Vec<u32>>> {
    let u = primitive_element(p)? as u64;
    Ok((1..p as u64)
        .map(|r| {
            (0..p as u64)
                .map(|x| mod_pow(u, r * x, p as u64) as u32)
                .collect()
        })
        .collect())
}

/// The exponentials and σ_p as a text table.
pub fn exponential_table(p: u32) -> Result<String> {
    if !(3..=TABLE_PRIME_LIMIT).contains(&p) || !is_prime(p) {
        return Err(Error::Unsupported(format!(
            "tables are printed for odd primes up to {TABLE_PRIME_LIMIT}, got {p}"
        )));
    }
    let u = primitive_element(p)?;
    let rows = exponential_rows(p)?;
    let sigma = sigma_table(p)?;
    let mut labelled = vec![("x".to_string(), (0..p).collect::<Vec<_>>())];
    for (r, row) in rows.into_iter().enumerate() {
        let label = if r == 0 {
            format!("{u}^x")
        } else {
            format!("{u}^{}x", r + 1)
        };
        labelled.push((label, row));
    }
    labelled.push((format!("sigma_{p}"), sigma));
    let label_width = labelled.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let cell = (p - 1).to_string().len();
    let mut out = String::new();
    for (i, (label, row)) in labelled.iter().enumerate() {
        if i == 1 || i == labelled.len() - 1 {
            out.push_str(&"-".repeat(label_width + 2 + p as usize * (cell + 1)));
            out.push('\n');
        }
        out.push_str(&format!("{label:<label_width$} |"));
        for v in row {
            out.push_str(&format!(" {v:>cell$}"));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Party whose outcome is `base^{-q}` at setting `q`.
fn exponential_party(d: u32, base: u32) -> Result<Party> {
    Ok(Party {
        fiducial: WeylLabel::z(d),
        control: named_clifford(NamedClifford::Mu(base), d)?,
    })
}

fn ones(d: u32, n: usize) -> Result<Resource> {
    Ok(Resource::State(SparseState::basis(d, vec![1; n])?))
}

/// Single-input plan with party `k` at setting `a_k x + b_k`.
fn affine_plan(
    d: u32,
    parties: Vec<Party>,
    settings: Vec<(u32, u32)>,
    z: Vec<u32>,
    s0: u32,
) -> Result<MbqcPlan> {
    let n_parties = parties.len();
    let (q, q0): (Vec<Vec<u32>>, Vec<u32>) = settings
        .into_iter()
        .map(|(a, b)| (vec![a % d], b % d))
        .unzip();
    let mut plan = MbqcPlan::flat(d, 1, ones(d, n_parties)?, parties, q, z, s0)?;
    plan.q0 = q0;
    plan.validated()
}

/// `σ_p(x) = (p-1)^{-1} Σ_l (u^x)^l` from `p - 1` parties.
pub fn sigma_plan(p: u32) -> Result<MbqcPlan> {
    if p < 3 || !is_prime(p) {
        return Err(Error::UnsupportedModulus(format!(
            "sigma needs an odd prime, got {p}"
        )));
    }
    let u = primitive_element(p)? as u64;
    let parties = (1..p as u64)
        .map(|l| {
            exponential_party(
                p,
                mod_inverse(mod_pow(u, l, p as u64), p as u64).expect("unit") as u32,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    // (p-1)^{-1} = -1
    affine_plan(
        p,
        parties,
        vec![(1, 0); p as usize - 1],
        vec![p - 1; p as usize - 1],
        0,
    )
}

pub fn sigma_table(p: u32) -> Result<Vec<u32>> {
    Ok(extract_output_function(&sigma_plan(p)?)?.table.values)
}

fn single_variable(m: &FunctionTable) -> Result<()> {
    if m.n != 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected a function of one variable, got n = {}",
            m.n
        )));
    }
    Ok(())
}

/// `m(x) = ½ Σ_j m_j (1 + Σ_k Σ_l u^{lk(x-j)})` with one party per
/// `(j, k, l)`, `p(p-1)²` in total. Over Z_2 every function is affine and
/// one party suffices.
pub fn compile_general_prime(m: &FunctionTable) -> Result<CompileReport> {
    single_variable(m)?;
    let p = m.d;
    if !is_prime(p) {
        return Err(Error::Unsupported(format!("{p} is not prime")));
    }
    if p == 2 {
        return compile_binary(m);
    }
    let u = primitive_element(p)? as u64;
    let pp = p as u64;
    let half = (pp + 1) / 2;
    let mut parties = Vec::new();
    let mut settings = Vec::new();
    let mut z = Vec::new();
    let mut s0 = 0u64;
    for j in 0..pp {
        let coeff = m.values[j as usize] as u64 * half % pp;
        s0 += coeff;
        for k in 1..pp {
            for l in 1..pp {
                // outcome (u^{-l})^{-k(x-j)} = u^{lk(x-j)}
                let base = mod_inverse(mod_pow(u, l, pp), pp).expect("unit") as u32;
                parties.push(exponential_party(p, base)?);
                settings.push((k as u32, ((pp - j) * k % pp) as u32));
                z.push(coeff as u32);
            }
        }
    }
    let plan = affine_plan(p, parties, settings, z, (s0 % pp) as u32)?;
    CompileReport::new(plan, m.clone(), Construction::PrimeGeneral)
}

/// `m(x) = m_0 + (m_1 - m_0) x`, reading `x` off `Z^x X Z^{-x}` on `|+⟩`.
fn compile_binary(m: &FunctionTable) -> Result<CompileReport> {
    let party = Party {
        fiducial: WeylLabel::x(2),
        control: CliffordSpec {
            x: [1, 0],
            ..CliffordSpec::identity(2)
        },
    };
    let plus = SparseState::new(2, 1, vec![(0, vec![0]), (0, vec![1])])?;
    let (m0, m1) = (m.values[0], m.values[1]);
    let plan = MbqcPlan::flat(
        2,
        1,
        Resource::State(plus),
        vec![party],
        vec![vec![1]],
        vec![(m1 + m0) % 2],
        m0,
    )?;
    CompileReport::new(plan, m.clone(), Construction::PrimeGeneral)
}

/// `m(x) = Σ_j m_j δ(x-j)` over Z_d, `d` odd, with
/// `δ(y) = ½ Σ_{k=±1} (d-1)^{ky}`; two `M_{d-1}` parties per `j`.
pub fn compile_odd_ring(m: &FunctionTable) -> Result<CompileReport> {
    single_variable(m)?;
    let d = m.d;
    if d < 3 || d % 2 == 0 {
        return Err(Error::UnsupportedModulus(format!(
            "2 is not a unit modulo {d}"
        )));
    }
    let half = (d + 1) / 2;
    let mut parties = Vec::new();
    let mut settings = Vec::new();
    let mut z = Vec::new();
    for j in 0..d {
        let coeff = (m.values[j as usize] as u64 * half as u64 % d as u64) as u32;
        // settings x - j and j - x
        for (a, b) in [(1, d - j), (d - 1, j)] {
            parties.push(exponential_party(d, d - 1)?);
            settings.push((a, b));
            z.push(coeff);
        }
    }
    let plan = affine_plan(d, parties, settings, z, 0)?;
    CompileReport::new(plan, m.clone(), Construction::OddRing)
}
