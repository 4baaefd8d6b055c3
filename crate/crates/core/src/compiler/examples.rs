//! The three worked constructions: NAND on the GHZ state, the quadratic
//! output and the exponential output.

use super::{CompileReport, Construction, LinearMap};
use crate::error::{Error, Result};
use crate::field_poly::{is_prime, FunctionTable};
use crate::mbqc_engine::{MbqcPlan, Party, Resource};
use crate::qudit_state::{make_example2_state, make_ghz, SparseState};
use crate::weyl::{named_clifford, NamedClifford, WeylLabel};

/// Three qubits on the state `|001⟩ - |110⟩`, measuring `X` or `Y`.
pub fn compile_nand() -> Result<CompileReport> {
    // S W_(0,1) maps X to Y up to phase
    let control = named_clifford(NamedClifford::S, 2)?.then_displace([0, 1]);
    let party = Party {
        fiducial: WeylLabel::x(2),
        control,
    };
    let resource = Resource::State(make_ghz(2, 3, true)?);
    let plan = MbqcPlan::flat(
        2,
        2,
        resource,
        vec![party; 3],
        vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        vec![1; 3],
        0,
    )?;
    let target = FunctionTable::new(2, 2, vec![1, 1, 1, 0])?;
    CompileReport::new(plan, target, Construction::NandGhz)
}

fn linear_plan(
    d: u32,
    f: &LinearMap,
    resource: Resource,
    parties: Vec<Party>,
    z: Vec<u32>,
) -> Result<MbqcPlan> {
    let n_parties = parties.len();
    let q = vec![f.coeffs.iter().map(|c| c % d).collect(); n_parties];
    let mut plan = MbqcPlan::flat(d, f.n(), resource, parties, q, z, 0)?;
    plan.q0 = vec![f.offset % d; n_parties];
    plan.validated()
}

/// `o(i) = f(i)(f(i)-1)/2` on `2d` qudits, every party measuring
/// `S^f X S^{-f}` except the first, whose control carries `W_(0,-1)`.
pub fn compile_quadratic(d: u32, f: &LinearMap) -> Result<CompileReport> {
    if d < 3 || !is_prime(d) {
        return Err(Error::Unsupported(format!(
            "the quadratic construction needs an odd prime, got {d}"
        )));
    }
    let s = named_clifford(NamedClifford::S, d)?;
    let mut parties = vec![
        Party {
            fiducial: WeylLabel::x(d),
            control: s
        };
        2 * d as usize
    ];
    parties[0].control = s.then_displace([0, d - 1]);
    let plan = linear_plan(
        d,
        f,
        Resource::State(make_example2_state(d)?),
        parties,
        vec![1; 2 * d as usize],
    )?;
    let half = (d as u64 + 1) / 2;
    let target = FunctionTable::from_fn(d, f.n(), |i| {
        let v = f.eval(i, d) as u64;
        (v * ((v + d as u64 - 1) % d as u64) % d as u64 * half % d as u64) as u32
    });
    CompileReport::new(plan, target, Construction::Quadratic)
}

/// `o(i) = u^{-f(i)}` on the single qudit `|1⟩`, measuring
/// `M_u^f Z M_u^{-f}`.
pub fn compile_exponential(d: u32, u: u32, f: &LinearMap) -> Result<CompileReport> {
    if !is_prime(d) {
        return Err(Error::Unsupported(format!(
            "the exponential construction needs a prime, got {d}"
        )));
    }
    let control = named_clifford(NamedClifford::Mu(u), d)?;
    let party = Party {
        fiducial: WeylLabel::z(d),
        control,
    };
    let plan = linear_plan(
        d,
        f,
        Resource::State(SparseState::basis(d, vec![1])?),
        vec![party],
        vec![1],
    )?;
    let inv = crate::field_poly::mod_inverse(u as u64, d as u64).expect("checked unit");
    let target = FunctionTable::from_fn(d, f.n(), |i| {
        crate::field_poly::mod_pow(inv, f.eval(i, d) as u64, d as u64) as u32
    });
    CompileReport::new(plan, target, Construction::Exponential)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mbqc_engine::local_observable;
    use crate::qudit_state::dense::{dense_oracle, TOLERANCE};
    use crate::qudit_state::{eigenphase_of, GlobalObservable};

    #[test]
    fn nand() {
        let r = compile_nand().unwrap();
        assert!(r.verified);
        assert_eq!(r.qudit_count, 3);
        // Y X Y at input (1, 0)
        let sites: Vec<_> = [1, 0, 1]
            .iter()
            .enumerate()
            .map(|(k, &q)| local_observable(&r.plan, k, q).unwrap())
            .collect();
        let y = crate::qudit_state::MonomialMatrix::from_weyl(0, &WeylLabel::new(2, [1, 1], 0));
        let x = crate::qudit_state::MonomialMatrix::from_weyl(0, &WeylLabel::x(2));
        assert_eq!(sites, vec![y.clone(), x, y]);
    }

    #[test]
    fn quadratic() {
        let r = compile_quadratic(3, &LinearMap::identity()).unwrap();
        assert_eq!(r.target.values, vec![0, 0, 1]);
        assert_eq!(r.qudit_count, 6);
        let r = compile_quadratic(5, &LinearMap::identity()).unwrap();
        assert_eq!(r.target.values, vec![0, 0, 1, 3, 1]);
        let r = compile_quadratic(
            3,
            &LinearMap {
                coeffs: vec![1, 2],
                offset: 1,
            },
        )
        .unwrap();
        assert!(r.verified);
        assert_eq!(
            compile_quadratic(5, &LinearMap::constant(1, 0))
                .unwrap()
                .target
                .values,
            vec![0; 5]
        );
        assert!(matches!(
            compile_quadratic(9, &LinearMap::identity()),
            Err(Error::Unsupported(_))
        ));
        assert!(compile_quadratic(2, &LinearMap::identity()).is_err());
    }

    #[test]
    fn quadratic_stabilizer_relation() {
        // every party measuring S^f X S^{-f} stabilizes the state
        let d = 5;
        let psi = make_example2_state(d).unwrap();
        let s = named_clifford(NamedClifford::S, d).unwrap();
        for f in 0..d {
            let (phase, label) = crate::weyl::conjugate_weyl(&s, &WeylLabel::x(d), f).unwrap();
            let m = crate::qudit_state::MonomialMatrix::from_weyl(phase, &label);
            let global = GlobalObservable::new(vec![m; 2 * d as usize]).unwrap();
            assert_eq!(eigenphase_of(&global, &psi).unwrap(), Some(0));
        }
    }

    #[test]
    fn quadratic_dense_agrees() {
        let r = compile_quadratic(3, &LinearMap::identity()).unwrap();
        let Resource::State(psi) = &r.plan.resource else {
            unreachable!()
        };
        for i in 0..3 {
            let sites = (0..6)
                .map(|k| local_observable(&r.plan, k, i).unwrap())
                .collect();
            let global = GlobalObservable::new(sites).unwrap();
            assert_eq!(
                dense_oracle(&global, psi, TOLERANCE).unwrap(),
                Some(r.target.values[i as usize])
            );
        }
    }

    #[test]
    fn exponential() {
        assert_eq!(
            compile_exponential(5, 2, &LinearMap::identity())
                .unwrap()
                .target
                .values,
            vec![1, 3, 4, 2, 1]
        );
        assert_eq!(
            compile_exponential(3, 2, &LinearMap::identity())
                .unwrap()
                .target
                .values,
            vec![1, 2, 1]
        );
        assert_eq!(
            compile_exponential(5, 2, &LinearMap::constant(1, 0))
                .unwrap()
                .target
                .values,
            vec![1; 5]
        );
        assert!(matches!(
            compile_exponential(5, 5, &LinearMap::identity()),
            Err(Error::NotUnit { .. })
        ));
    }
}
