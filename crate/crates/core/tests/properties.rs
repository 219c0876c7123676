use matconvex::dilation::{cube_to_diamond_dilation, flip_dilation, flip_joint_spectrum, nonsa_flip_dilation};
use matconvex::json::{DilationJson, TupleJson};
use matconvex::linalg::{herm_eig, kron, opnorm, simultaneous_diagonalize};
use matconvex::random::{
    random_ball_member, random_complex, random_contraction_tuple, random_general_contraction_tuple, random_hermitian,
    rng_from_seed,
};
use matconvex::sets::{ball_member, selfdual_norm};
use matconvex::witnesses::clifford_tuple;
use matconvex::{CMatrix, HermTuple};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eig_reconstructs(seed in any::<u64>(), n in 1usize..8) {
        let m = random_hermitian(&mut rng_from_seed(seed), n);
        let e = herm_eig(&m).unwrap();
        let scale = 1.0 + opnorm(&m).unwrap();
        prop_assert!((e.reconstruct().as_cmatrix() - m.as_cmatrix()).max_abs() <= 1e-10 * scale);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let q = &e.eigenvectors;
        prop_assert!((&q.adjoint().matmul(q) - &CMatrix::identity(n)).max_abs() <= 1e-10);
    }

    #[test]
    fn kron_norm_is_multiplicative(seed in any::<u64>(), a in 1usize..4, b in 1usize..4) {
        let mut rng = rng_from_seed(seed);
        let (x, y) = (random_complex(&mut rng, a, a), random_complex(&mut rng, b, b));
        let lhs = opnorm(&kron(&x, &y)).unwrap();
        let rhs = opnorm(&x).unwrap() * opnorm(&y).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn flip_dilation_certificates(seed in any::<u64>(), d in 1usize..5, n in 1usize..5) {
        let x = random_contraction_tuple(&mut rng_from_seed(seed), d, n);
        let dil = flip_dilation(&x).unwrap();
        prop_assert_eq!(dil.dim(), n << (d - 1));
        prop_assert!(dil.residuals.commutator <= 1e-9 && dil.residuals.compression <= 1e-9);
        prop_assert!(dil.residuals.isometry <= 1e-12);
        let (_, js) = simultaneous_diagonalize(dil.hermitian().unwrap().matrices(), 1e-9).unwrap();
        prop_assert!(js.multiset_eq(&flip_joint_spectrum(&x).unwrap(), 1e-8));
    }

    #[test]
    fn nonsa_flip_is_normal(seed in any::<u64>(), d in 1usize..4, n in 1usize..4) {
        let x = random_general_contraction_tuple(&mut rng_from_seed(seed), d, n);
        let r = nonsa_flip_dilation(&x).unwrap().residuals;
        prop_assert!(r.commutator <= 1e-9 && r.normality <= 1e-9 && r.compression <= 1e-9);
    }

    #[test]
    fn cube_sign_sums_bounded_by_d(seed in any::<u64>(), d in 1usize..5, n in 1usize..4) {
        let x = random_contraction_tuple(&mut rng_from_seed(seed), d, n);
        let dil = cube_to_diamond_dilation(&x).unwrap();
        prop_assert!(dil.sign_sum_margin(d as f64).unwrap() >= -1e-9);
        prop_assert!(dil.residuals.compression <= 1e-9);
    }

    #[test]
    fn ball_lies_in_selfdual_ball(seed in any::<u64>(), d in 1usize..5, n in 1usize..5) {
        let x = random_ball_member(&mut rng_from_seed(seed), d, n);
        prop_assert!(ball_member(&x, 1e-12).unwrap());
        prop_assert!(selfdual_norm(&x).unwrap() <= 1.0 + 1e-10);
    }

    #[test]
    fn tuple_json_is_a_fixpoint(seed in any::<u64>(), d in 1usize..4, n in 1usize..4) {
        let mut rng = rng_from_seed(seed);
        let x = HermTuple::new((0..d).map(|_| random_hermitian(&mut rng, n)).collect()).unwrap();
        let text = serde_json::to_string(&TupleJson::from_herm(&x)).unwrap();
        let parsed: TupleJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&parsed.to_herm().unwrap(), &x);
        prop_assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
    }

    #[test]
    fn dilation_json_is_a_fixpoint(seed in any::<u64>(), d in 1usize..3, n in 1usize..3) {
        let x = random_contraction_tuple(&mut rng_from_seed(seed), d, n);
        let dil = flip_dilation(&x).unwrap();
        let text = serde_json::to_string(&DilationJson::from_dilation(&dil)).unwrap();
        let back: DilationJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_dilation(&x.to_general()).unwrap(), dil);
    }

    #[test]
    fn clifford_anticommutes(d in 1usize..=12) {
        let b = clifford_tuple(d).unwrap();
        prop_assert_eq!(b.anticommutation_violations(), 0);
        prop_assert_eq!(b.size(), 1 << (d - 1));
    }
}
