//! Randomised invariants.

#[path = "../src/oracle.rs"]
mod oracle;

use num_complex::Complex64;
use proptest::prelude::*;

use hopf_fhn::linalg::solve_tridiagonal;
use hopf_fhn::model::{c_profile, stationary_state, HeterogeneityProfile, ModelParams};
use hopf_fhn::pde_sim::laplacian_neumann;
use hopf_fhn::quadrature::trapezoid;
use hopf_fhn::spectral::{quadratic_residual, sign_changes, spectrum, temporal_eigs};

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn profile_between_minus_p_and_zero(p in 0.0f64..20.0, a in 0.1f64..5.0, s in -1.0f64..=1.0) {
        let c = c_profile(s * a, &HeterogeneityProfile::polynomial(p, a)).unwrap();
        prop_assert!(c <= 0.0 && c >= -p * (1.0 + 1e-12));
    }

    #[test]
    fn temporal_roots_solve_the_quadratic(nu in -50.0f64..50.0, eps in 0.01f64..2.0) {
        let (a, b) = temporal_eigs(nu, eps);
        prop_assert!(quadratic_residual(a, nu, eps) < 1e-12);
        prop_assert!(quadratic_residual(b, nu, eps) < 1e-12);
        prop_assert!(a.re >= b.re);
    }

    #[test]
    fn neumann_laplacian_integrates_to_zero(u in prop::collection::vec(-10.0f64..10.0, 5..60)) {
        let dx = 0.1;
        let lap = laplacian_neumann(&u, dx);
        let scale = lap.iter().map(|v| v.abs()).fold(1.0, f64::max);
        prop_assert!(trapezoid(&lap, dx).abs() < 1e-12 * scale * u.len() as f64);
    }

    #[test]
    fn thomas_matches_dense(
        diag in prop::collection::vec(4.0f64..8.0, 3..30),
        seed in 0u64..1000,
    ) {
        let n = diag.len();
        let z = |k: usize| Complex64::new(((seed as usize + 7 * k) % 13) as f64 / 13.0 - 0.5, ((seed as usize + 3 * k) % 11) as f64 / 11.0 - 0.5);
        let lower: Vec<Complex64> = (0..n).map(z).collect();
        let upper: Vec<Complex64> = (0..n).map(|k| z(k + 100)).collect();
        let d: Vec<Complex64> = diag.iter().map(|&v| Complex64::from(v)).collect();
        let rhs: Vec<Complex64> = (0..n).map(|k| z(k + 200)).collect();
        let x = solve_tridiagonal(&lower, &d, &upper, &rhs).unwrap();
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for i in 0..n {
            m[i][i] = d[i];
            if i > 0 { m[i][i - 1] = lower[i]; }
            if i + 1 < n { m[i][i + 1] = upper[i]; }
        }
        let y = oracle::dense_solve(m, rhs);
        for (a, b) in x.iter().zip(&y) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn spectrum_is_ordered_with_oscillation_count(p in 0.0f64..5.0, d in 0.2f64..2.0) {
        let params = ModelParams::new(0.1, d, 1.0, p, 101).unwrap();
        let st = stationary_state(&params, &HeterogeneityProfile::polynomial(p, 1.0)).unwrap();
        let pairs = spectrum(4, &st, &params).unwrap();
        for (n, e) in pairs.iter().enumerate() {
            prop_assert_eq!(sign_changes(&e.u_n), n);
            prop_assert!((trapezoid(&e.u_n.iter().map(|v| v * v).collect::<Vec<_>>(), st.dx()) - 1.0).abs() < 1e-10);
        }
        prop_assert!(pairs.windows(2).all(|w| w[0].nu_n < w[1].nu_n));
    }
}
