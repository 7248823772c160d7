//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers (visible with `--nocapture`). Tolerances
//! are pinned in code next to each assertion.

use std::time::Instant;

use qreduce_core::brackets::{dirac_bracket_at, poisson_bracket, systems, PhasePoly, PhaseVar};
use qreduce_core::geometry::{
    arc_length_reparam, curvatures, fundamental_forms, surface_jet, CurveSpec, GeometrySpec,
    LayerEmbedding, SurfaceSpec, Tangential,
};
use qreduce_core::layersim::{
    circle_band_spectrum, curve_band_spectrum_2d, latitude_band_spectrum, Confinement, LayerConfig,
};
use qreduce_core::numeric::SplitMix64;
use qreduce_core::potential::{
    vq_curve, vq_latitude_on_sphere, vq_normal_profile, vq_surface, NormalProfile, PhysicsParams,
};
use qreduce_core::spectral::{
    build_curve_hamiltonian, eigensolve_symmetric, recipe_table, Recipe, RecipeGeometry,
};

fn params() -> PhysicsParams {
    PhysicsParams::default()
}

/// Step for profile operators on sampled numeric metrics: large enough
/// that the second difference sits above the rounding floor of the
/// Jacobian samples, small enough that the Richardson-refined truncation
/// error stays far below the acceptance tolerances.
fn numeric_profile_step(validity: f64) -> f64 {
    1e-2 * validity
}

#[test]
fn criterion_1_curve_potential_from_numeric_layer_metric() {
    let started = Instant::now();
    let p = params();
    let curves = [
        CurveSpec::circle(0.5).unwrap(),
        CurveSpec::circle(1.0).unwrap(),
        CurveSpec::circle(2.0).unwrap(),
        CurveSpec::ellipse(1.5, 1.0).unwrap(),
        CurveSpec::parabola(1.0, -2.0, 2.0).unwrap(),
    ];
    let mut rng = SplitMix64::new(0xacce_0001);
    let mut worst: f64 = 0.0;
    for curve in &curves {
        let arc = arc_length_reparam(curve, 1e-9).unwrap();
        let embedding = LayerEmbedding::new(&GeometrySpec::Curve(*curve)).unwrap();
        for _ in 0..10 {
            let s = rng.range(0.05, 0.95) * arc.total_length();
            let k = arc.curvature_at_s(s).unwrap();
            let expect = vq_curve(k, &p).value;
            let validity = 0.9 / k.abs().max(0.1);
            let profile = NormalProfile::from_numeric_metric(
                &embedding,
                Tangential::Curve { s },
                1e-4 / k.abs().max(0.1),
                validity,
            );
            let got = vq_normal_profile(&profile, &p, Some(numeric_profile_step(validity)))
                .unwrap()
                .value;
            let rel = (got - expect).abs() / expect.abs();
            worst = worst.max(rel);
            assert!(
                rel <= 1e-4,
                "{}: s = {s}, profile {got} vs closed form {expect} (rel {rel})",
                curve.describe()
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("PASS criterion 1: curve V_q profile-vs-closed worst rel {worst:.2e} in {elapsed:?}");
}

#[test]
fn criterion_2_surface_potential_from_profile_operator() {
    let started = Instant::now();
    let p = params();
    let surfaces = [
        SurfaceSpec::sphere(1.0).unwrap(),
        SurfaceSpec::cylinder(1.0).unwrap(),
        SurfaceSpec::torus(3.0, 1.0).unwrap(),
    ];
    let mut rng = SplitMix64::new(0xacce_0002);
    let mut worst: f64 = 0.0;
    let mut sphere_worst: f64 = 0.0;
    for surface in &surfaces {
        let embedding = LayerEmbedding::new(&GeometrySpec::Surface(*surface)).unwrap();
        let is_sphere = matches!(surface.kind, qreduce_core::geometry::SurfaceKind::Sphere { .. });
        for _ in 0..10 {
            let span_u = surface.u_range.1 - surface.u_range.0;
            let u = rng.range(
                surface.u_range.0 + 0.1 * span_u,
                surface.u_range.1 - 0.1 * span_u,
            );
            let v = rng.range(surface.v_range.0, surface.v_range.1);
            let c = curvatures(&fundamental_forms(&surface_jet(surface, u, v).unwrap()).unwrap())
                .unwrap();
            let expect = vq_surface(&c, &p).value;
            let kmax = c.k1.abs().max(c.k2.abs()).max(0.1);
            let validity = 0.9 / kmax;
            let profile = NormalProfile::from_numeric_metric(
                &embedding,
                Tangential::Surface { u, v },
                1e-4 / kmax,
                validity,
            );
            let got = vq_normal_profile(&profile, &p, Some(numeric_profile_step(validity)))
                .unwrap()
                .value;
            if is_sphere {
                // H^2 = K: the potential vanishes identically. The
                // Jacobian-sampled route carries rounding noise of order
                // noise/h^2, so it gets a floor well below the physical
                // scale hbar^2/(8R^2); the tight 1e-10 bound is checked
                // on the layer-factor profile, where the fourth root of
                // the determinant is exactly linear.
                sphere_worst = sphere_worst.max(got.abs());
                assert!(got.abs() <= 1e-6, "sphere V_q (numeric metric) = {got}");
                let factor_profile = NormalProfile::surface_closed_form(c);
                let tight =
                    vq_normal_profile(&factor_profile, &p, Some(numeric_profile_step(validity)))
                        .unwrap()
                        .value;
                assert!(tight.abs() <= 1e-10, "sphere V_q (layer factor) = {tight}");
            } else {
                let rel = (got - expect).abs() / expect.abs();
                worst = worst.max(rel);
                assert!(rel <= 1e-4, "surface profile {got} vs {expect} (rel {rel})");
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!(
        "PASS criterion 2: surface V_q worst rel {worst:.2e}, sphere |V_q| <= {sphere_worst:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_3_embedding_dependence() {
    let started = Instant::now();
    let p = params();
    // Algebraic part: latitude value minus plane value is -hbar^2/(8R^2).
    let radius = 1.0;
    let expect = -1.0 / (8.0 * radius * radius);
    let mut worst: f64 = 0.0;
    for i in 1..=50 {
        let theta = std::f64::consts::PI * (0.06 + 0.88 * i as f64 / 50.0);
        let v = vq_latitude_on_sphere(radius, theta, &p).unwrap();
        let diff = v.on_sphere.value - v.plane_circle.value;
        worst = worst.max((diff - expect).abs());
        assert!(
            (diff - expect).abs() <= 1e-12,
            "theta {theta}: difference {diff} vs {expect}"
        );
    }
    // Simulation part: the latitude band at theta0 = pi/3 extrapolates to
    // -(1/8)(1 + 1/sin^2) = -7/24.
    let cfg = LayerConfig { m_max: 0, ..LayerConfig::default() };
    let band = latitude_band_spectrum(1.0, std::f64::consts::PI / 3.0, &cfg, &p).unwrap();
    let limit = band.bands[0].extrapolation.unwrap().limit;
    let target = -7.0 / 24.0;
    let rel = (limit - target).abs() / target.abs();
    assert!(rel <= 0.02, "latitude band limit {limit} vs {target} (rel {rel})");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!(
        "PASS criterion 3: identity worst dev {worst:.2e}, band limit {limit:.6} vs {target:.6} (rel {rel:.2e}) in {elapsed:?}"
    );
}

#[test]
fn criterion_4_thin_layer_circle_limit() {
    let started = Instant::now();
    let p = params();
    let cfg = LayerConfig {
        eps: vec![0.1, 0.05, 0.025],
        confinement: Confinement::Dirichlet,
        n_transverse: 128,
        m_max: 2,
        n_tangential: 21,
    };
    let dirichlet = circle_band_spectrum(1.0, &cfg, &p).unwrap();
    let m0 = dirichlet.bands[0].extrapolation.unwrap().limit;
    let m2 = dirichlet.bands[2].extrapolation.unwrap().limit;
    let rel_m0 = (m0 - (-0.125)).abs() / 0.125;
    assert!(rel_m0 <= 0.01, "m=0 limit {m0} (rel {rel_m0})");
    let spacing = m2 - m0;
    let rel_spacing = (spacing - 2.0).abs() / 2.0;
    assert!(rel_spacing <= 0.005, "m=2 - m=0 spacing {spacing} (rel {rel_spacing})");

    let harmonic_cfg = LayerConfig { confinement: Confinement::Harmonic, ..cfg };
    let harmonic = circle_band_spectrum(1.0, &harmonic_cfg, &p).unwrap();
    let m0_h = harmonic.bands[0].extrapolation.unwrap().limit;
    let agree = (m0_h - m0).abs() / m0.abs();
    assert!(agree <= 0.02, "harmonic m=0 limit {m0_h} vs dirichlet {m0} (rel {agree})");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!(
        "PASS criterion 4: m0 {m0:.6} (rel {rel_m0:.2e}), spacing {spacing:.6} (rel {rel_spacing:.2e}), harmonic agree {agree:.2e} in {elapsed:?}"
    );
}

#[test]
fn criterion_5_general_curve_bands() {
    let started = Instant::now();
    let p = params();
    let ellipse = CurveSpec::ellipse(1.5, 1.0).unwrap();

    let with_vq = build_curve_hamiltonian(&ellipse, 512, &p, true).unwrap();
    let reference = eigensolve_symmetric(&with_vq, 4).unwrap();
    let without_vq = build_curve_hamiltonian(&ellipse, 512, &p, false).unwrap();
    let control = eigensolve_symmetric(&without_vq, 1).unwrap();

    let cfg = LayerConfig {
        eps: vec![0.1, 0.05, 0.025],
        confinement: Confinement::Dirichlet,
        n_transverse: 32,
        m_max: 2,
        n_tangential: 17,
    };
    let bands = curve_band_spectrum_2d(&ellipse, &cfg, &p).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        let limit = bands.bands[i].extrapolation.unwrap().limit;
        let want = reference.eigenvalues[i];
        let rel = (limit - want).abs() / want.abs();
        worst = worst.max(rel);
        assert!(rel <= 0.02, "band {i}: 2d {limit} vs 1d {want} (rel {rel})");
    }
    // Negative control: without the quantum potential the 1D reference
    // misses the measured ground band by far more than 5%.
    let ground_2d = bands.bands[0]
        .samples
        .iter()
        .find(|s| (s.eps - 0.05).abs() < 1e-12)
        .unwrap()
        .e_renormalized;
    let mismatch = (ground_2d - control.eigenvalues[0]).abs() / ground_2d.abs();
    assert!(mismatch > 0.05, "negative control too close: {mismatch}");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 120 s");
    println!(
        "PASS criterion 5: four bands within rel {worst:.2e} of the reduced spectrum; no-V_q mismatch {mismatch:.2} in {elapsed:?}"
    );
}

#[test]
fn criterion_6_recipe_table_sphere() {
    let p = params();
    let table = recipe_table(
        &RecipeGeometry::Sphere { ambient_dim: 3, radius: 1.0 },
        4,
        &p,
    )
    .unwrap();
    let expected_constants = [
        (Recipe::Dirac, 9.0 / 8.0),
        (Recipe::AbelianConversion, 0.0),
        (Recipe::ThinLayer, 0.0),
        (Recipe::DeWittPathIntegral, 1.0 / 6.0),
    ];
    for (row, (recipe, want)) in table.rows.iter().zip(&expected_constants) {
        assert_eq!(row.recipe, *recipe);
        let got = row.constant.unwrap();
        assert!((got - want).abs() <= 1e-12, "{recipe:?} constant {got} vs {want}");
        for level in &row.levels {
            let lf = level.index as f64;
            let expect = lf * (lf + 1.0) / 2.0 + want;
            assert!(
                (level.energy - expect).abs() <= 1e-12,
                "{recipe:?} level {} energy {} vs {expect}",
                level.index,
                level.energy
            );
            assert_eq!(level.degeneracy, 2 * level.index + 1);
        }
    }
    println!("PASS criterion 6: recipe constants {{9/8, 0, 0, 1/6}} and levels l(l+1)/2 + c exact");
}

#[test]
fn criterion_7_bracket_algebra() {
    let n = 3;
    let radius = systems::rational_from_f64(1.0);
    let (phi1, phi2) = systems::sphere_constraints(n, &radius);

    // {phi1, phi2} = 2 sum x_i^2, exactly.
    let bracket = poisson_bracket(&phi1, &phi2);
    let mut expect = PhasePoly::zero(n);
    for i in 1..=n {
        let xi = PhasePoly::var(n, PhaseVar::X(i));
        let sq = &xi * &xi;
        expect = &expect + &(&sq + &sq);
    }
    assert_eq!(bracket, expect);

    // {sigma1, sigma2} = 0, exactly.
    let (s1, s2) = systems::abelian_constraints(n, &radius);
    assert!(poisson_bracket(&s1, &s2).is_zero());

    // Dirac brackets of both constraints with random cubics vanish on
    // shell.
    let constraints = [phi1.clone(), phi2.clone()];
    let mut rng = SplitMix64::new(0xacce_0007);
    let cubics: Vec<PhasePoly> =
        (0..20).map(|_| random_poly(&mut rng, n, 3, 4)).collect();
    let points: Vec<_> =
        (0..100).map(|_| systems::random_onshell_point(&mut rng, n, 1.0)).collect();
    let mut worst: f64 = 0.0;
    for (ci, cubic) in cubics.iter().enumerate() {
        // 5 points per cubic covers all 100 points across the 20 cubics.
        for pt in points.iter().skip(5 * ci).take(5) {
            for phi in &constraints {
                let v = dirac_bracket_at(cubic, phi, &constraints, pt).unwrap();
                worst = worst.max(v.abs());
                assert!(v.abs() <= 1e-10, "cubic {ci}: residual {v}");
            }
        }
    }

    // Antisymmetry, Jacobi and Leibniz hold exactly.
    let mut rng = SplitMix64::new(0xacce_0008);
    for _ in 0..50 {
        let f = random_poly(&mut rng, 2, 3, 3);
        let g = random_poly(&mut rng, 2, 3, 3);
        assert_eq!(poisson_bracket(&f, &g), -&poisson_bracket(&g, &f));
    }
    for _ in 0..20 {
        let f = random_poly(&mut rng, 2, 3, 3);
        let g = random_poly(&mut rng, 2, 3, 3);
        let h = random_poly(&mut rng, 2, 3, 3);
        let jacobi = &(&poisson_bracket(&f, &poisson_bracket(&g, &h))
            + &poisson_bracket(&g, &poisson_bracket(&h, &f)))
            + &poisson_bracket(&h, &poisson_bracket(&f, &g));
        assert!(jacobi.is_zero());
        let leibniz_lhs = poisson_bracket(&f, &(&g * &h));
        let leibniz_rhs =
            &(&poisson_bracket(&f, &g) * &h) + &(&g * &poisson_bracket(&f, &h));
        assert_eq!(leibniz_lhs, leibniz_rhs);
    }
    println!("PASS criterion 7: bracket algebra exact; worst on-shell Dirac residual {worst:.2e}");
}

#[test]
fn criterion_8_numerics_hygiene() {
    let p = params();
    let circle = CurveSpec::circle(1.0).unwrap();

    // Convergence order of the 1D circle spectrum toward m^2/2 - 1/8,
    // measured on the m = 2 level.
    let mut logs = Vec::new();
    for n in [32usize, 64, 128, 256] {
        let op = build_curve_hamiltonian(&circle, n, &p, true).unwrap();
        let spec = eigensolve_symmetric(&op, 4).unwrap();
        assert!(
            spec.residual_bound <= 1e-10 * op.frobenius_norm(),
            "residual {} vs norm {}",
            spec.residual_bound,
            op.frobenius_norm()
        );
        let err = (spec.eigenvalues[3] - 1.875).abs();
        logs.push(((op.grid_step).ln(), err.ln()));
    }
    let mean_x: f64 = logs.iter().map(|l| l.0).sum::<f64>() / logs.len() as f64;
    let mean_y: f64 = logs.iter().map(|l| l.1).sum::<f64>() / logs.len() as f64;
    let slope: f64 = logs.iter().map(|l| (l.0 - mean_x) * (l.1 - mean_y)).sum::<f64>()
        / logs.iter().map(|l| (l.0 - mean_x) * (l.0 - mean_x)).sum::<f64>();
    assert!(
        (1.8..=2.2).contains(&slope),
        "measured convergence order {slope} outside [1.8, 2.2]"
    );

    // Factorization residual of the normal momentum condition on the
    // factorized state, 64-point grids.
    let circle_profile = NormalProfile::curve_closed_form(1.0);
    let r1 = qreduce_core::potential::factorization_residual(&circle_profile, 0.2, 64, &p).unwrap();
    assert!(r1 <= 1e-4, "circle profile residual {r1}");
    let latitude_profile = NormalProfile::sphere_latitude(1.0, std::f64::consts::PI / 3.0).unwrap();
    let r2 =
        qreduce_core::potential::factorization_residual(&latitude_profile, 0.2, 64, &p).unwrap();
    assert!(r2 <= 1e-4, "latitude profile residual {r2}");
    println!(
        "PASS criterion 8: convergence order {slope:.3}, factorization residuals {r1:.2e} / {r2:.2e}"
    );
}

// Deterministic random polynomial with small rational coefficients,
// mirroring the generator used by the unit suites.
fn random_poly(rng: &mut SplitMix64, n: usize, max_degree: u32, terms: usize) -> PhasePoly {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let vars: Vec<PhaseVar> = (1..=n)
        .map(PhaseVar::X)
        .chain((1..=n).map(PhaseVar::P))
        .chain([PhaseVar::AuxQ, PhaseVar::AuxP])
        .collect();
    let mut poly = PhasePoly::zero(n);
    for _ in 0..terms {
        let deg = rng.below(max_degree as u64 + 1) as u32;
        let mut term = PhasePoly::constant(
            n,
            BigRational::new(
                BigInt::from(rng.below(19) as i64 - 9),
                BigInt::from(rng.below(4) as i64 + 1),
            ),
        );
        for _ in 0..deg {
            let v = vars[rng.below(vars.len() as u64) as usize];
            term = &term * &PhasePoly::var(n, v);
        }
        poly = &poly + &term;
    }
    poly
}
