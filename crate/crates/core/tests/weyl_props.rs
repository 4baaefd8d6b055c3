use ldmbqc::weyl::dense::{clifford_matrix, label_matrix, omega};
use ldmbqc::weyl::{
    check_symplectic, conjugate_weyl, symplectic_product, CliffordSpec, SymplecticMatrix, WeylLabel,
};
use proptest::prelude::*;

fn clifford_strategy() -> impl Strategy<Value = CliffordSpec> {
    prop::sample::select(vec![2u32, 3, 5])
        .prop_flat_map(|d| {
            (
                Just(d),
                prop::array::uniform4(0..d),
                prop::array::uniform2(0..d),
                0..2 * d,
            )
        })
        .prop_filter("det 1", |(d, c, _, _)| {
            check_symplectic([[c[0], c[1]], [c[2], c[3]]], *d)
        })
        .prop_map(|(d, c, x, t)| CliffordSpec::new(d, [[c[0], c[1]], [c[2], c[3]]], x, t).unwrap())
}

fn case_strategy() -> impl Strategy<Value = (CliffordSpec, WeylLabel, u32)> {
    clifford_strategy().prop_flat_map(|v_op| {
        let d = v_op.d();
        (Just(v_op), prop::array::uniform2(0..d), 0..2 * d, 0..2 * d)
            .prop_map(move |(v_op, v, t, f)| (v_op, WeylLabel::new(d, v, t), f))
    })
}

proptest! {
    #[test]
    fn antisymmetry(d in 2u32..12, v in prop::array::uniform2(0u32..12), w in prop::array::uniform2(0u32..12)) {
        let v = v.map(|x| x % d);
        let w = w.map(|x| x % d);
        prop_assert_eq!((symplectic_product(v, w, d) + symplectic_product(w, v, d)) % d, 0);
    }

    #[test]
    fn symplectic_invariance(v_op in clifford_strategy(), v in prop::array::uniform2(0u32..5), w in prop::array::uniform2(0u32..5)) {
        let d = v_op.d();
        let (v, w) = (v.map(|x| x % d), w.map(|x| x % d));
        let c = v_op.c;
        prop_assert_eq!(symplectic_product(c.apply(v), c.apply(w), d), symplectic_product(v, w, d));
    }

    #[test]
    fn group_law((v_op, v, f1) in case_strategy(), f2 in 0u32..10) {
        let d = v_op.d();
        let (p1, l1) = conjugate_weyl(&v_op, &v, f1).unwrap();
        let (p2, l2) = conjugate_weyl(&v_op, &l1, f2).unwrap();
        let (p, l) = conjugate_weyl(&v_op, &v, f1 + f2).unwrap();
        prop_assert_eq!((p1 + p2) % d, p);
        prop_assert_eq!(l2, l);
    }

    #[test]
    fn reindexed_phase_sum((v_op, v, f) in case_strategy()) {
        // Σ_{k=1}^{f} [C^k x, C^f v] = Σ_{k=0}^{f-1} [x, C^k v]
        let d = v_op.d();
        let pow = |mut w: [u32; 2], k: u32| { for _ in 0..k { w = v_op.c.apply(w); } w };
        let lhs = (1..=f).fold(0, |acc, k| (acc + symplectic_product(pow(v_op.x, k), pow(v.v, f), d)) % d);
        let rhs = (0..f).fold(0, |acc, k| (acc + symplectic_product(v_op.x, pow(v.v, k), d)) % d);
        prop_assert_eq!(lhs, rhs);
        if d % 2 == 1 && v.tau_exp == 0 {
            prop_assert_eq!(conjugate_weyl(&v_op, &v, f).unwrap().0, rhs);
        }
    }

    #[test]
    fn matches_dense_conjugation((v_op, v, f) in case_strategy()) {
        let d = v_op.d();
        let vm = clifford_matrix(&v_op);
        let lhs = vm.pow(f).mul(&label_matrix(&v)).mul(&vm.adjoint().pow(f));
        let (phase, label) = conjugate_weyl(&v_op, &v, f).unwrap();
        let rhs = label_matrix(&label).scale(omega(d).powu(phase));
        prop_assert!(lhs.max_distance(&rhs) < 1e-9, "d={} f={} dist={}", d, f, lhs.max_distance(&rhs));
    }
}

#[test]
fn symplectic_matrix_rejects_bad_determinant() {
    assert!(SymplecticMatrix::new(3, [[1, 0], [0, 2]]).is_err());
}
