use shishkin_rk::convergence::{build_mesh, SweepSpec};
use shishkin_rk::prelude::*;

fn eps(k: f64) -> f64 {
    2f64.powf(-k)
}

#[test]
fn heun_layer1_first_cell() {
    let problem = Problem::builtin(BuiltinName::Layer1, 0.25).unwrap();
    let mesh = Mesh::shishkin(&ShishkinParams::new(1 << 10, 0.25)).unwrap();
    let traj = integrate(SchemeName::Heun, &problem, &mesh).unwrap();
    let err = max_error(&traj, &problem).unwrap();
    // σ saturates at 1/2 for ε = 1/4, so this is a uniform-mesh error.
    assert_eq!(mesh.sigma(), Some(0.5));
    assert!(err > 4.9e-7 && err < 5.0e-7, "{err}");
}

#[test]
fn heun_is_second_order_in_the_layer_regime() {
    let spec = SweepSpec::new(SchemeName::Heun, BuiltinName::Layer1, vec![eps(6.0)], 11, 15);
    let table = run_sweep(&spec).unwrap();
    for k in 11..=14 {
        let ord = table.cell(0, k).unwrap().order.unwrap();
        assert!((1.9..=2.1).contains(&ord), "k={k}: {ord}");
    }
}

#[test]
fn saturated_mesh_order_reads_above_classical() {
    // On a uniform mesh E_N ~ N^-2, and the Shishkin-adjusted estimate is
    // 2 ln 2 / ln(2k/(k+1)).
    let spec = SweepSpec::new(SchemeName::Heun, BuiltinName::Layer1, vec![eps(4.0)], 11, 13);
    let table = run_sweep(&spec).unwrap();
    for k in 11..=12u32 {
        let ord = table.cell(0, k).unwrap().order.unwrap();
        let kf = k as f64;
        let expected = 2.0 * 2f64.ln() / (2.0 * kf / (kf + 1.0)).ln();
        assert!((ord - expected).abs() < 0.01, "k={k}: {ord} vs {expected}");
    }
}

#[test]
fn gauss2_error_decreases_until_roundoff() {
    for e in [2.0, 6.0, 10.0] {
        let spec = SweepSpec::new(SchemeName::Gauss2, BuiltinName::Layer1, vec![eps(e)], 6, 14);
        let table = run_sweep(&spec).unwrap();
        let errors: Vec<f64> = table.cells[0].iter().map(|c| c.error).collect();
        for w in errors.windows(2) {
            if w[0] <= 1e-12 {
                break;
            }
            assert!(w[1] < w[0], "eps=2^-{e}: {errors:?}");
        }
        assert!(errors.iter().any(|&v| v <= 1e-12), "eps=2^-{e}: {errors:?}");
    }
}

#[test]
fn heun_error_is_epsilon_uniform() {
    let epsilons: Vec<f64> = [2.0, 4.0, 6.0, 8.0, 10.0].iter().map(|&e| eps(e)).collect();
    let spec = SweepSpec::new(SchemeName::Heun, BuiltinName::Layer1, epsilons, 12, 13);
    let table = run_sweep(&spec).unwrap();
    let worst = (0..5).map(|i| table.cell(i, 12).unwrap().error).fold(0.0, f64::max);
    assert!(worst <= 1e-5, "{worst}");
}

#[test]
fn gauss2_does_not_oscillate_on_coarse_uniform_mesh() {
    let epsilon = eps(7.225);
    let problem = Problem::builtin(BuiltinName::Layer1, epsilon).unwrap();
    let mesh = build_mesh(MeshKind::Uniform, 32, epsilon, MeshSettings::default()).unwrap();
    let gauss = integrate(SchemeName::Gauss2, &problem, &mesh).unwrap();
    let heun = integrate(SchemeName::Heun, &problem, &mesh).unwrap();
    assert_eq!(oscillation_count(&gauss), 0);
    assert!(max_error(&gauss, &problem).unwrap() < max_error(&heun, &problem).unwrap());
    // Heun's amplification factor 1 + z + z²/2 is positive for every real z,
    // so its error grows without alternating.
    assert!(max_error(&heun, &problem).unwrap() > 1e3);
}

#[test]
fn rk3_oscillates_where_its_factor_turns_negative() {
    let epsilon = eps(7.225);
    let problem = Problem::builtin(BuiltinName::Layer1, epsilon).unwrap();
    let mesh = Mesh::uniform(32, 0.0, 1.0).unwrap();
    let traj = integrate(SchemeName::Rk3A, &problem, &mesh).unwrap();
    assert!(oscillation_count(&traj) >= 3);
}

#[test]
fn sweep_is_order_independent() {
    let epsilons = vec![eps(2.0), eps(5.0), eps(9.0)];
    let spec = SweepSpec::new(SchemeName::Rk3Kutta, BuiltinName::Layer1, epsilons.clone(), 5, 8);
    let forward = run_sweep(&spec).unwrap();
    let mut reversed_spec = spec.clone();
    reversed_spec.epsilons = epsilons.into_iter().rev().collect();
    let reversed = run_sweep(&reversed_spec).unwrap();
    for (e, row) in forward.cells.iter().enumerate() {
        let mirrored = &reversed.cells[forward.epsilons.len() - 1 - e];
        assert_eq!(row, mirrored);
    }
    assert_eq!(run_sweep(&spec).unwrap(), forward);
}

#[test]
fn decay_on_uniform_mesh_converges_at_classical_rates() {
    let problem = Problem::builtin(BuiltinName::Decay, 1.0).unwrap();
    let errs: Vec<f64> = [64usize, 128]
        .iter()
        .map(|&n| {
            let mesh = Mesh::uniform(n, 0.0, 1.0).unwrap();
            let traj = integrate(SchemeName::Rk3Kutta, &problem, &mesh).unwrap();
            max_error(&traj, &problem).unwrap()
        })
        .collect();
    let rate = (errs[0] / errs[1]).log2();
    assert!((rate - 3.0).abs() < 0.05, "{rate}");
}
