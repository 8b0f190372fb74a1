use proptest::prelude::*;

use qdot::model::{classify_regime, ground_state_spin, DotParams, Parity, SpinMode};
use qdot::qfi::{qfi_from_comb, qfi_low_t_closed, Convention};
use qdot::susceptibility::{
    ising_im_chi, low_t_ground_state_comb, merge_peaks, AnisoSusceptibility, Peak, EPS_MERGE,
};

fn params(jz: f64, jperp: f64, t: f64) -> DotParams {
    DotParams {
        jz,
        jperp,
        temperature: t,
        ..DotParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ising_matches_direct_formula(jz in 0.01f64..0.9, t in 2.0f64..60.0, w in 1e-3f64..10.0) {
        let p = params(jz, 0.0, t);
        let (d, b) = (p.delta, 1.0 / t);
        let direct = |w: f64| {
            (std::f64::consts::PI * b * (d - jz)).sqrt() / (2.0 * jz)
                * (b / 4.0 * (d + jz - (d - jz) * (w / jz).powi(2))).exp()
                * (1.0 + w / jz)
                * (b * w / 2.0).sinh()
                / (b * d / 2.0 * (1.0 + w / jz)).sinh()
        };
        for v in [w, -w] {
            let got = ising_im_chi(v, &p).unwrap();
            let want = direct(v);
            prop_assert!(got * v >= 0.0);
            prop_assert!((got - want).abs() <= 1e-10 * want.abs() + 1e-300, "{} vs {}", got, want);
        }
    }

    #[test]
    fn aniso_is_odd(jz in 0.05f64..0.9, jperp in 0.05f64..0.95, t in 3.0f64..30.0, w in 0.01f64..5.0) {
        prop_assume!((jz - jperp).abs() > 0.02);
        let chi = AnisoSusceptibility::new(&params(jz, jperp, t)).unwrap();
        let (ln_plus, s_plus) = chi.ln_im_chi(w).unwrap();
        let (ln_minus, s_minus) = chi.ln_im_chi(-w).unwrap();
        prop_assert!((ln_plus - ln_minus).abs() <= 1e-9 * ln_plus.abs().max(1.0));
        prop_assert_eq!(s_plus, -s_minus);
    }

    #[test]
    fn ground_state_spin_is_nonnegative_and_monotone(
        jz in 0.0f64..0.95,
        jperp in 0.0f64..0.9,
        bump in 0.0f64..0.05,
        odd in any::<bool>(),
    ) {
        let parity = if odd { Parity::Odd } else { Parity::Even };
        let base = params(jz, jperp, 1.0);
        let more = params(jz, (jperp + bump).min(0.99), 1.0);
        for mode in [SpinMode::Continuous, SpinMode::Discrete] {
            let s0 = ground_state_spin(&base, mode, parity).unwrap();
            let s1 = ground_state_spin(&more, mode, parity).unwrap();
            prop_assert!(s0 >= 0.0);
            if jperp > 0.0 {
                prop_assert!(s1 + 1e-12 >= s0);
            }
            if mode == SpinMode::Discrete {
                let offset = if odd { 0.5 } else { 0.0 };
                prop_assert_eq!((s0 - offset).fract(), 0.0);
            }
        }
    }

    #[test]
    fn low_t_qfi_is_bounded_by_four_s(
        jz in 0.5f64..0.98,
        jperp in 0.0f64..0.98,
        t in 1e-3f64..2.0,
    ) {
        let p = params(jz, jperp, t);
        for mode in [SpinMode::Continuous, SpinMode::Discrete] {
            let s = ground_state_spin(&p, mode, Parity::Even).unwrap();
            let q = qfi_low_t_closed(&p, mode, Parity::Even).unwrap().value;
            prop_assert!(q >= 0.0);
            prop_assert!(q <= 4.0 * s * (1.0 + 1e-15));
            let comb = low_t_ground_state_comb(&p, mode, Parity::Even).unwrap();
            let from_comb = qfi_from_comb(&comb, &p).unwrap().value;
            prop_assert!((q - from_comb).abs() <= 1e-12 * q.max(1e-300));
            prop_assert!(comb.oddness_residual() == 0.0);
        }
    }

    #[test]
    fn hermitian_convention_is_half(v in 0.0f64..1e3) {
        let r = qdot::qfi::QfiResult {
            value: v,
            method: qdot::qfi::QfiMethod::ClosedForm,
            integral_error: 0.0,
        };
        prop_assert_eq!(r.in_convention(Convention::Hermitian).value, v / 2.0);
        prop_assert_eq!(r.in_convention(Convention::Paper).value, v);
    }

    #[test]
    fn merging_preserves_total_weight(
        raw in prop::collection::vec((-5i32..5, -1.0f64..1.0), 0..40),
        jitter in 0.0f64..1e-10,
    ) {
        let peaks: Vec<Peak> = raw
            .iter()
            .enumerate()
            .map(|(i, &(k, w))| Peak { omega: k as f64 * 0.5 + jitter * (i % 3) as f64, weight: w })
            .collect();
        let total: f64 = peaks.iter().map(|p| p.weight).sum();
        let scale: f64 = peaks.iter().map(|p| p.weight.abs()).sum();
        let merged = merge_peaks(peaks, EPS_MERGE);
        let merged_total: f64 = merged.iter().map(|p| p.weight).sum();
        prop_assert!((total - merged_total).abs() <= 1e-12 * scale.max(1.0));
        prop_assert!(merged.windows(2).all(|w| w[1].omega - w[0].omega > EPS_MERGE));
        prop_assert!(merged.len() <= 10);
    }

    #[test]
    fn regime_flags_follow_their_definitions(
        jz in 0.0f64..1.5,
        jperp in 0.0f64..1.5,
        t in 1e-3f64..100.0,
        ec in 0.0f64..1e3,
    ) {
        let p = DotParams { ec, ..params(jz, jperp, t) };
        let r = classify_regime(&p);
        prop_assert_eq!(r.low_t_valid, t <= 0.2);
        prop_assert_eq!(r.high_t_ising_valid, jz < 1.0 && t >= 5.0 && t <= ec / 5.0);
        prop_assert_eq!(r.high_t_aniso_valid, t >= 5.0 && jperp - jz < 1.0);
    }
}
