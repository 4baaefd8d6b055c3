//! The checks run by `verify-all`.

use std::collections::BTreeMap;

use ldmbqc::compiler::{
    compile_exponential, compile_general_prime, compile_nand, compile_odd_ring, compile_quadratic,
    exponential_table, LinearMap,
};
use ldmbqc::contextuality::{
    ncva_search, nu_distance, temporal_degree_bound, threshold_check, NcvaInstance, Verdict,
};
use ldmbqc::field_poly::{
    all_inputs, closure_generate, enumerate_subspace, interpolate, make_field, FunctionTable,
    MultiPoly,
};
use ldmbqc::mbqc_engine::{
    analytic_output, empirical_success, extract_output_function, local_observable, run, MbqcPlan,
    Party, Resource, TableResource,
};
use ldmbqc::qudit_state::dense::{dense_oracle, TOLERANCE};
use ldmbqc::qudit_state::{GlobalObservable, SparseState};
use ldmbqc::weyl::dense::{clifford_matrix, label_matrix, omega};
use ldmbqc::weyl::{check_symplectic, conjugate_weyl, CliffordSpec, WeylLabel};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXPONENTIAL_TABLE_P5: &str = include_str!("../tests/golden/exponential_table_p5.txt");

pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub tolerance: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(u64) -> Result<String, String>;

const CHECKS: [(u32, &str, &str, Check); 12] = [
    (1, "NAND reproduction", "exact", nand),
    (2, "Mermin strong non-locality", "exact", mermin),
    (3, "quadratic output", "exact; dense snap 1e-9", quadratic),
    (4, "exponential output", "exact", exponential),
    (
        5,
        "exponential table",
        "byte-exact",
        exponential_table_check,
    ),
    (6, "local universality", "exact", universality),
    (7, "finite-field interpolation", "exact", interpolation),
    (8, "monomial closure", "exact", closure),
    (9, "degree witness consistency", "exact", degree_consistency),
    (10, "temporal bound", "exact", temporal),
    (11, "probabilistic thresholds", "exact rational", thresholds),
    (
        12,
        "phase formula against dense conjugation",
        "1e-9",
        phase_formula,
    ),
];

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CHECKS
        .iter()
        .map(|&(id, name, tolerance, check)| {
            let (passed, detail) = match check(seed) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome {
                id,
                name,
                tolerance,
                passed,
                detail,
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: ldmbqc::error::Error) -> String {
    e.to_string()
}

fn nand(seed: u64) -> Result<String, String> {
    let r = compile_nand().map_err(err)?;
    let expected = [1, 1, 1, 0];
    for (input, &o) in all_inputs(2, 2).zip(&expected) {
        let a = analytic_output(&r.plan, &input).map_err(err)?;
        ensure(a == Some(o), || {
            format!("analytic output {a:?} at {input:?}")
        })?;
        for s in 0..100 {
            let got = run(&r.plan, &input, seed.wrapping_add(s))
                .map_err(err)?
                .output;
            ensure(got == o, || format!("run {s} gave {got} at {input:?}"))?;
        }
    }
    Ok("table 1,1,1,0; analytic and 100 runs per input".into())
}

fn nand_instance() -> Result<NcvaInstance, String> {
    NcvaInstance::from_plan(&compile_nand().map_err(err)?.plan).map_err(err)
}

fn mermin(_: u64) -> Result<String, String> {
    let w = ncva_search(&nand_instance()?).map_err(err)?;
    ensure(w.verdict == Verdict::StronglyNonlocal, || {
        format!("verdict {}", w.verdict.as_str())
    })?;
    ensure(w.search_size == Some(64), || {
        format!("search size {:?}", w.search_size)
    })?;
    Ok("strongly-nonlocal after exhausting 2^6 assignments".into())
}

fn quadratic(_: u64) -> Result<String, String> {
    for d in [3u32, 5] {
        let r = compile_quadratic(d, &LinearMap::identity()).map_err(err)?;
        let got = extract_output_function(&r.plan).map_err(err)?.table.values;
        let expected: Vec<u32> = (0..d)
            .map(|i| i * (i + d - 1) % d * ((d + 1) / 2) % d)
            .collect();
        ensure(got == expected, || format!("d={d}: {got:?}"))?;
    }
    let r = compile_quadratic(3, &LinearMap::identity()).map_err(err)?;
    let Resource::State(psi) = &r.plan.resource else {
        return Err("no state resource".into());
    };
    for i in 0..3 {
        let sites = (0..r.plan.n_parties)
            .map(|k| local_observable(&r.plan, k, i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let dense = dense_oracle(&GlobalObservable::new(sites).map_err(err)?, psi, TOLERANCE)
            .map_err(err)?;
        ensure(dense == Some(r.target.values[i as usize]), || {
            format!("dense backend gives {dense:?} at {i}")
        })?;
    }
    Ok("d=3: 0,0,1; d=5: 0,0,1,3,1; dense agrees on 3^6 amplitudes".into())
}

fn exponential(_: u64) -> Result<String, String> {
    let r = compile_exponential(5, 2, &LinearMap::identity()).map_err(err)?;
    let got = extract_output_function(&r.plan).map_err(err)?.table.values;
    ensure(got == [1, 3, 4, 2, 1], || format!("table {got:?}"))?;
    let w = ncva_search(&NcvaInstance::from_plan(&r.plan).map_err(err)?).map_err(err)?;
    ensure(w.verdict == Verdict::NcvaFound, || {
        format!("verdict {}", w.verdict.as_str())
    })?;
    Ok("table 1,3,4,2,1; ncva-found".into())
}

fn exponential_table_check(_: u64) -> Result<String, String> {
    let text = exponential_table(5).map_err(err)?;
    ensure(text == EXPONENTIAL_TABLE_P5, || {
        format!("table differs:\n{text}")
    })?;
    Ok("p=5 table matches golden file".into())
}

fn universality(seed: u64) -> Result<String, String> {
    for index in 0..27u32 {
        let m = FunctionTable::new(3, 1, vec![index % 3, index / 3 % 3, index / 9]).map_err(err)?;
        ensure(compile_general_prime(&m).map_err(err)?.verified, || {
            format!("p=3 table {index}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let m =
            FunctionTable::new(5, 1, (0..5).map(|_| rng.gen_range(0..5)).collect()).map_err(err)?;
        let r = compile_general_prime(&m).map_err(err)?;
        ensure(r.verified && r.qudit_count == 80, || {
            format!("p=5 table {:?}", m.values)
        })?;
    }
    Ok("27 tables for p=3, 50 random tables for p=5 on 80 qudits".into())
}

fn interpolation(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in [2u32, 3, 5, 4] {
        let m = make_field(d).map_err(err)?;
        for trial in 0..200 {
            let n = 1 + trial % 2;
            let t = FunctionTable::new(
                d,
                n,
                (0..d.pow(n as u32)).map(|_| rng.gen_range(0..d)).collect(),
            )
            .map_err(err)?;
            let p = interpolate(&m, &t).map_err(err)?;
            ensure(p.to_table() == t, || {
                format!("d={d}: round trip failed for {:?}", t.values)
            })?;
            ensure(p.terms().keys().all(|e| e.iter().all(|&a| a < d)), || {
                format!("d={d}: partial degree too high")
            })?;
        }
    }
    Ok("200 tables each for d=2,3,5 and GF(4)".into())
}

fn closure(_: u64) -> Result<String, String> {
    let m = make_field(3).map_err(err)?;
    for delta in 1..=2u32 {
        let g = MultiPoly::from_terms(&m, 1, [(vec![delta], 1)]).map_err(err)?;
        let generated = closure_generate(&g).map_err(err)?;
        let expected: std::collections::BTreeSet<_> = enumerate_subspace(&m, 1, delta, 1 << 20)
            .map_err(err)?
            .into_iter()
            .collect();
        ensure(generated == expected, || {
            format!("delta={delta}: {} vs {}", generated.len(), expected.len())
        })?;
    }
    Ok("closures of x and x^2 equal the degree-1 and degree-2 classes".into())
}

/// Two parties whose outcomes always add up to `i1 i2` over Z_2.
pub fn pr_box_plan() -> ldmbqc::error::Result<MbqcPlan> {
    let half = BigRational::new(1.into(), 2.into());
    let entries: BTreeMap<_, _> = all_inputs(2, 2)
        .map(|q| {
            let o = q[0] * q[1];
            (
                q,
                (0..2)
                    .map(|r| (vec![r, (o + r) % 2], half.clone()))
                    .collect(),
            )
        })
        .collect();
    let table = TableResource::new(2, 2, entries)?;
    let party = Party {
        fiducial: WeylLabel::z(2),
        control: CliffordSpec::identity(2),
    };
    MbqcPlan::flat(
        2,
        2,
        Resource::Table(table),
        vec![party; 2],
        vec![vec![1, 0], vec![0, 1]],
        vec![1, 1],
        0,
    )
}

fn degree_consistency(_: u64) -> Result<String, String> {
    let mut plans = vec![
        compile_exponential(5, 2, &LinearMap::identity()).map_err(err)?,
        compile_quadratic(3, &LinearMap::identity()).map_err(err)?,
        compile_odd_ring(&FunctionTable::new(3, 1, vec![1, 0, 0]).map_err(err)?).map_err(err)?,
    ];
    for values in [vec![0, 1, 0], vec![2, 0, 1]] {
        plans.push(
            compile_general_prime(&FunctionTable::new(3, 1, values).map_err(err)?).map_err(err)?,
        );
    }
    let mut searched = 0;
    for r in &plans {
        let table = extract_output_function(&r.plan).map_err(err)?.table;
        let degree = interpolate(&make_field(r.plan.d).map_err(err)?, &table)
            .map_err(err)?
            .combined_degree();
        ensure(degree < r.plan.d, || {
            format!("{} plan has degree {degree}", r.construction.as_str())
        })?;
        let w = ncva_search(&NcvaInstance::from_plan(&r.plan).map_err(err)?).map_err(err)?;
        ensure(w.verdict == Verdict::NcvaFound, || {
            format!("{} plan: {}", r.construction.as_str(), w.verdict.as_str())
        })?;
        searched += 1;
    }
    let pr = pr_box_plan().map_err(err)?;
    let w = ncva_search(&NcvaInstance::from_plan(&pr).map_err(err)?).map_err(err)?;
    ensure(w.verdict == Verdict::StronglyNonlocal, || {
        format!("table resource: {}", w.verdict.as_str())
    })?;
    Ok(format!(
        "{searched} compiled plans ncva-found; i1 i2 table strongly-nonlocal"
    ))
}

/// Two qutrit parties, the second setting fed by the first outcome.
pub fn chain_plan() -> ldmbqc::error::Result<MbqcPlan> {
    let party = Party {
        fiducial: WeylLabel::z(3),
        control: CliffordSpec::identity(3),
    };
    MbqcPlan {
        d: 3,
        n: 1,
        n_parties: 2,
        resource: Resource::State(SparseState::basis(3, vec![0, 0])?),
        parties: vec![party; 2],
        q: vec![vec![1], vec![1]],
        q0: vec![0, 0],
        t: vec![vec![0, 0], vec![1, 0]],
        z: vec![1, 1],
        s0: 0,
    }
    .validated()
}

fn temporal(_: u64) -> Result<String, String> {
    let chain = temporal_degree_bound(&chain_plan().map_err(err)?).map_err(err)?;
    ensure(chain == 4, || format!("chain bound {chain}"))?;
    let flat = temporal_degree_bound(&compile_nand().map_err(err)?.plan).map_err(err)?;
    ensure(flat == 1, || format!("flat qubit bound {flat}"))?;
    Ok("chain |l|=2, d=3: 4; flat qubit: 1".into())
}

/// Per setting: the sum of outcomes is `q1² q2` with probability 9/10 and
/// one more with probability 1/10.
pub fn noisy_plan() -> ldmbqc::error::Result<MbqcPlan> {
    let good = BigRational::new(9.into(), 30.into());
    let bad = BigRational::new(1.into(), 30.into());
    let entries: BTreeMap<_, _> = all_inputs(3, 2)
        .map(|q| {
            let o = q[0] * q[0] * q[1] % 3;
            let mut outcomes: Vec<_> = (0..3)
                .map(|r| (vec![r, (o + 3 - r) % 3], good.clone()))
                .collect();
            outcomes.extend((0..3).map(|r| (vec![r, (o + 4 - r) % 3], bad.clone())));
            (q, outcomes)
        })
        .collect();
    let table = TableResource::new(3, 2, entries)?;
    let party = Party {
        fiducial: WeylLabel::z(3),
        control: CliffordSpec::identity(3),
    };
    MbqcPlan::flat(
        3,
        2,
        Resource::Table(table),
        vec![party; 2],
        vec![vec![1, 0], vec![0, 1]],
        vec![1, 1],
        0,
    )
}

fn thresholds(seed: u64) -> Result<String, String> {
    let nand = compile_nand().map_err(err)?;
    let s = empirical_success(&nand.plan, &nand.target, 10, seed).map_err(err)?;
    let nu = nu_distance(&nand.target).map_err(err)?.nu;
    let r = threshold_check(&s.p_s, &s.p_bar, nu, 2, 2).map_err(err)?;
    ensure(r.exceeded && nu == 1, || {
        format!("NAND: nu={nu}, exceeded={}", r.exceeded)
    })?;
    let target = FunctionTable::from_fn(3, 2, |x| x[0] * x[0] * x[1] % 3);
    let nu = nu_distance(&target).map_err(err)?.nu;
    ensure(nu == 2, || format!("nu = {nu}"))?;
    let s = empirical_success(&noisy_plan().map_err(err)?, &target, 10, seed).map_err(err)?;
    let nine_tenths = BigRational::new(9.into(), 10.into());
    ensure(s.exact && s.p_bar == nine_tenths, || {
        format!("p_bar = {}", s.p_bar)
    })?;
    let r = threshold_check(&s.p_s, &s.p_bar, nu, 3, 2).map_err(err)?;
    let bound = BigRational::new(1.into(), 20.into());
    ensure(r.ncf_bound.as_ref() == Some(&bound), || {
        format!("bound {:?}", r.ncf_bound)
    })?;
    ensure(BigRational::one() > r.threshold, || "threshold".into())?;
    Ok(format!(
        "NAND exceeds 1/2; noisy table p_bar = 9/10, nu = 2, NCF <= {bound}"
    ))
}

fn phase_formula(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    let mut count = 0;
    while count < 500 {
        let d = [2u32, 3, 5][rng.gen_range(0..3)];
        let c = [
            [rng.gen_range(0..d), rng.gen_range(0..d)],
            [rng.gen_range(0..d), rng.gen_range(0..d)],
        ];
        if !check_symplectic(c, d) {
            continue;
        }
        let x = [rng.gen_range(0..d), rng.gen_range(0..d)];
        let v_op = CliffordSpec::new(d, c, x, rng.gen_range(0..2 * d)).map_err(err)?;
        let v = WeylLabel::new(
            d,
            [rng.gen_range(0..d), rng.gen_range(0..d)],
            rng.gen_range(0..2 * d),
        );
        let f = rng.gen_range(0..2 * d);
        let vm = clifford_matrix(&v_op);
        let lhs = vm.pow(f).mul(&label_matrix(&v)).mul(&vm.adjoint().pow(f));
        let (phase, label) = conjugate_weyl(&v_op, &v, f).map_err(err)?;
        let rhs = label_matrix(&label).scale(omega(d).powu(phase));
        worst = worst.max(lhs.max_distance(&rhs));
        count += 1;
    }
    ensure(worst < 1e-9, || format!("max deviation {worst:e}"))?;
    Ok(format!("500 triples, max deviation {worst:.1e}"))
}
