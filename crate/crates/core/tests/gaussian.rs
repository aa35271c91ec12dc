//! Properties of the Gaussian models and bounds over random parameter draws.

use approx::assert_relative_eq;
use nalgebra::DMatrix;
use proptest::prelude::*;

use qillum::bounds::{
    gamma1, gamma2, q_s, qb_bound, qc_bound, tms_qb_asymptotic, tss_qb_asymptotic, S_MAX, S_MIN,
};
use qillum::models::{hypotheses, reassemble, tms_williamson_data, tss_williamson_data, ScenarioParams};
use qillum::symplectic::{
    apply_symplectic, single_mode_squeeze_symplectic, symplectic_eigenvalues, two_mode_squeeze_symplectic,
    williamson, CovarianceMatrix, SymplecticMatrix,
};

fn scenario() -> impl Strategy<Value = ScenarioParams> {
    let base = (1e-3..1.0f64, 1e-2..100.0f64, 1e-3..0.5f64);
    prop_oneof![
        base.clone().prop_map(|(ns, nb, k)| ScenarioParams::tmsv(ns, nb, k, 1).unwrap()),
        (base.clone(), 0.0..1.0f64, 0.0..1.0f64)
            .prop_map(|((ns, nb, k), r1, r2)| ScenarioParams::tss(ns, nb, k, r1, r2, 1).unwrap()),
        (base, 0.0..1.0f64).prop_map(|((ns, nb, k), r)| ScenarioParams::tms(ns, nb, k, r, 1).unwrap()),
    ]
}

fn random_symplectic(r: [f64; 3]) -> SymplecticMatrix {
    let a = single_mode_squeeze_symplectic(r[0], r[1]).unwrap();
    let b = two_mode_squeeze_symplectic(r[2]).unwrap();
    // a swap of modes is symplectic too
    let mut swap = DMatrix::zeros(4, 4);
    for (i, j) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
        swap[(i, j)] = 1.0;
    }
    SymplecticMatrix::new(a.entries() * b.entries() * swap * a.entries().transpose()).unwrap()
}

fn rel(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).norm() / b.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symplectic_maps_preserve_the_spectrum(
        nu1 in 1.0..20.0f64, nu2 in 1.0..20.0f64,
        r in prop::array::uniform3(-1.0..1.0f64),
    ) {
        let v = CovarianceMatrix::thermal(&[(nu1 - 1.0) / 2.0, (nu2 - 1.0) / 2.0]).unwrap();
        let w = apply_symplectic(&random_symplectic(r), &v).unwrap();
        let mut expect = vec![nu1, nu2];
        expect.sort_by(f64::total_cmp);
        let got = symplectic_eigenvalues(&w).unwrap();
        for (g, e) in got.iter().zip(&expect) {
            prop_assert!((g - e).abs() < 1e-9 * e.max(1.0), "{got:?} vs {expect:?}");
        }
        let d = williamson(&w).unwrap();
        prop_assert!(d.relative_residual(&w) < 1e-9);
        prop_assert!(d.transform.residual() < 1e-8);
    }

    #[test]
    fn hypotheses_are_physical(p in scenario()) {
        let pair = hypotheses(&p).unwrap();
        for v in [&pair.v0, &pair.v1] {
            let nu = symplectic_eigenvalues(v).unwrap();
            prop_assert!(nu.iter().all(|&x| x >= 1.0 - 1e-9), "{p}: {nu:?}");
        }
        prop_assert!(pair.w0.relative_residual(&pair.v0) < 1e-8);
        prop_assert!(pair.w1.relative_residual(&pair.v1) < 1e-8);
    }

    #[test]
    fn chernoff_never_exceeds_bhattacharyya(p in scenario(), m in 1u64..1_000_000) {
        let p = p.with_field("m", m as f64).unwrap();
        let pair = hypotheses(&p).unwrap();
        let qb = qb_bound(&pair, m).unwrap();
        let qc = qc_bound(&pair, m).unwrap();
        prop_assert!(qc.value <= qb.value * (1.0 + 1e-12), "{p}: {} > {}", qc.value, qb.value);
        prop_assert!(qc.exponent_per_copy >= qb.exponent_per_copy * (1.0 - 1e-12));
    }

    #[test]
    fn overlap_is_independent_of_the_decomposition(p in scenario(), s in 0.05..0.95f64) {
        let pair = hypotheses(&p).unwrap();
        let closed = q_s(&pair, s).unwrap().q_s;
        let generic = q_s(&pair.with_generic_williamson().unwrap(), s).unwrap().q_s;
        prop_assert!((closed / generic - 1.0).abs() < 1e-9, "{p} s={s}: {closed} {generic}");
    }

    #[test]
    fn bhattacharyya_overlap_is_symmetric(p in scenario()) {
        let pair = hypotheses(&p).unwrap().with_generic_williamson().unwrap();
        let a = q_s(&pair, 0.5).unwrap().q_s;
        let b = q_s(&pair.swapped(), 0.5).unwrap().q_s;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn overlap_tends_to_one_at_the_endpoints(p in scenario()) {
        let pair = hypotheses(&p).unwrap();
        for s in [1e-6, 1.0 - 1e-6, S_MIN, S_MAX] {
            let q = q_s(&pair, s).unwrap().q_s;
            prop_assert!((q - 1.0).abs() < 1e-4, "{p} s={s}: {q}");
        }
    }

    #[test]
    fn closed_form_williamson_agrees_with_generic(
        ns in 1e-3..1.0f64, nb in 1e-2..100.0f64, k in 1e-3..0.5f64,
        r1 in 0.0..1.0f64, r2 in 0.0..1.0f64, r in 0.0..1.0f64,
    ) {
        let tss = ScenarioParams::tss(ns, nb, k, r1, r2, 1).unwrap();
        let pair = hypotheses(&tss).unwrap();
        let data = tss_williamson_data(&tss).unwrap();
        let nu = symplectic_eigenvalues(&pair.v1).unwrap();
        let mut beta = [data.beta1, data.beta2];
        beta.sort_by(f64::total_cmp);
        for (a, b) in beta.iter().zip(&nu) {
            prop_assert!((a / b - 1.0).abs() < 1e-9, "{tss}: {beta:?} {nu:?}");
        }
        prop_assert!(rel(&reassemble(&pair.w1), pair.v1.entries()) < 1e-8);

        let tms = ScenarioParams::tms(ns, nb, k, r, 1).unwrap();
        let pair = hypotheses(&tms).unwrap();
        let data = tms_williamson_data(&tms).unwrap();
        let nu = symplectic_eigenvalues(&pair.v1).unwrap();
        let mut beta = [data.beta1, data.beta2];
        beta.sort_by(f64::total_cmp);
        for (a, b) in beta.iter().zip(&nu) {
            prop_assert!((a / b - 1.0).abs() < 1e-9, "{tms}: {beta:?} {nu:?}");
        }
        prop_assert!(rel(&reassemble(&pair.w1), pair.v1.entries()) < 1e-8);
    }
}

#[test]
fn zero_reflectivity_makes_the_hypotheses_equal() {
    for p in [
        ScenarioParams::tmsv(0.3, 5.0, 0.0, 1).unwrap(),
        ScenarioParams::tss(0.3, 5.0, 0.0, 0.4, 0.2, 1).unwrap(),
        ScenarioParams::tms(0.3, 5.0, 0.0, 0.4, 1).unwrap(),
    ] {
        let pair = hypotheses(&p).unwrap();
        assert_eq!(pair.v0, pair.v1, "{p}");
        assert_eq!(q_s(&pair, 0.5).unwrap().q_s, 1.0);
        assert_eq!(qb_bound(&pair, 10).unwrap().value, 0.5);
    }
}

fn exponent_gaps(params: impl Fn(f64) -> ScenarioParams, asym: impl Fn(&ScenarioParams) -> f64) -> Vec<f64> {
    [1e2, 1e3, 1e4]
        .into_iter()
        .map(|nb| {
            let p = params(nb);
            let exact = qb_bound(&hypotheses(&p).unwrap(), 1).unwrap().exponent_per_copy;
            (exact / asym(&p) - 1.0).abs()
        })
        .collect()
}

#[test]
fn squeezed_exponents_converge_to_their_asymptotes() {
    let tss = exponent_gaps(
        |nb| ScenarioParams::tss(0.01, nb, 0.01, 0.3, 0.0, 1).unwrap(),
        |p| tss_qb_asymptotic(p).unwrap().bound.exponent_per_copy,
    );
    let tms = exponent_gaps(
        |nb| ScenarioParams::tms(0.01, nb, 0.01, 0.3, 1).unwrap(),
        |p| tms_qb_asymptotic(p).unwrap().bound.exponent_per_copy,
    );
    for gaps in [tss, tms] {
        assert!(gaps[0] < 0.05, "{gaps:?}");
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        assert!(gaps[2] < 0.01, "{gaps:?}");
    }
}

#[test]
fn squeezed_asymptotes_at_the_reference_point() {
    for p in [
        ScenarioParams::tss(0.01, 100.0, 0.01, 0.3, 0.0, 1_000_000).unwrap(),
        ScenarioParams::tms(0.01, 100.0, 0.01, 0.3, 1_000_000).unwrap(),
    ] {
        let exact = qb_bound(&hypotheses(&p).unwrap(), p.m).unwrap();
        let asym = qillum::bounds::qb_asymptotic(&p).unwrap();
        assert_relative_eq!(exact.total_exponent(), asym.total_exponent(), max_relative = 0.05);
    }
}

#[test]
fn local_squeezing_on_the_idler_does_not_change_the_bound() {
    let base = ScenarioParams::tss(0.1, 10.0, 0.05, 0.4, 0.0, 1000).unwrap();
    let reference = qb_bound(&hypotheses(&base).unwrap(), 1000).unwrap().exponent_per_copy;
    for r2 in [0.5, 1.0] {
        let p = base.with_field("r2", r2).unwrap();
        let e = qb_bound(&hypotheses(&p).unwrap(), 1000).unwrap().exponent_per_copy;
        assert!((e / reference - 1.0).abs() < 1e-10, "r2={r2}: {e} vs {reference}");
    }
}

#[test]
fn both_advantages_reduce_to_the_entangled_probe_value() {
    for ns in [1e-6, 1e-3, 0.01, 0.1, 1.0, 10.0] {
        let a = gamma1(ns, 0.0).unwrap().gamma;
        let b = gamma2(ns, 0.0).unwrap().gamma;
        assert!((a - b).abs() < 1e-12 * a, "{ns}: {a} {b}");
    }
}
