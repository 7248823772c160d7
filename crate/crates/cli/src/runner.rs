//! Dispatch a resolved `RunConfig` into the workbench and collect the
//! results into a `ResultRecord`.

use std::time::Instant;

use qreduce_core::brackets::{classify_constraints, constraint_matrix, poisson_bracket, systems};
use qreduce_core::geometry::{
    arc_length_reparam, curvatures, curve_jet, fundamental_forms, plane_curvature, surface_jet,
    CurveSpec, GeometrySpec, LayerEmbedding, SurfaceSpec, Tangential,
};
use qreduce_core::layersim::{
    circle_band_spectrum, curve_band_spectrum_2d, latitude_band_spectrum, strip_band_spectrum,
    BandResult, Confinement, LayerConfig,
};
use qreduce_core::numeric::SplitMix64;
use qreduce_core::potential::{
    vq_curve, vq_latitude_on_sphere, vq_normal_profile, vq_surface, NormalProfile, PhysicsParams,
};
use qreduce_core::spectral::{
    build_curve_hamiltonian, eigensolve_symmetric, recipe_table, RecipeGeometry,
};

use crate::args::{
    BracketSystem, CommandConfig, ConfinementArg, CurveShape, LayersimGeometry, RecipeGeometryArg,
    RunConfig, SurfaceShape, VqMethod,
};
use crate::record::{Cell, ResultRecord, Table};
use crate::CliError;

fn curve_spec(shape: CurveShape) -> Result<CurveSpec, CliError> {
    let spec = match shape {
        CurveShape::Line => CurveSpec::line(0.0, 3.0)?,
        CurveShape::Circle { radius } => CurveSpec::circle(radius)?,
        CurveShape::Ellipse { a, b } => CurveSpec::ellipse(a, b)?,
        CurveShape::Parabola { scale } => CurveSpec::parabola(scale, -2.0, 2.0)?,
    };
    Ok(spec)
}

fn surface_spec(shape: SurfaceShape) -> Result<SurfaceSpec, CliError> {
    let spec = match shape {
        SurfaceShape::Plane => SurfaceSpec::plane(),
        SurfaceShape::Sphere { radius } => SurfaceSpec::sphere(radius)?,
        SurfaceShape::Cylinder { radius } => SurfaceSpec::cylinder(radius)?,
        SurfaceShape::Torus { big_r, small_r } => SurfaceSpec::torus(big_r, small_r)?,
    };
    Ok(spec)
}

fn jacobian_step(max_abs_curvature: f64) -> f64 {
    let radius = if max_abs_curvature > 1e-12 { 1.0 / max_abs_curvature } else { 1.0 };
    1e-4 * radius.min(10.0)
}

// Profile step for Jacobian-sampled metrics: the second difference of a
// sampled profile sits on a rounding floor that scales like noise/h^2,
// so a step this size beats the module default for display purposes.
fn profile_step(validity: f64) -> f64 {
    1e-2 * validity.min(10.0)
}

fn run_vq_curve(
    record: &mut ResultRecord,
    shape: CurveShape,
    t: f64,
    hbar: f64,
    method: VqMethod,
) -> Result<(), CliError> {
    let params = PhysicsParams::new(hbar)?;
    let spec = curve_spec(shape)?;
    let jet = curve_jet(&spec, t)?;
    let k = plane_curvature(&jet)?;
    record.push_note(format!("geometry: {} at t = {t}", spec.describe()));
    record.push_scalar("curvature", k);
    if matches!(method, VqMethod::Closed | VqMethod::Both) {
        let v = vq_curve(k, &params);
        record.push_scalar("vq_closed", v.value);
        record.push_note(format!("vq_closed provenance: {}", v.provenance));
    }
    if matches!(method, VqMethod::Profile | VqMethod::Both) {
        let arc = arc_length_reparam(&spec, 1e-9)?;
        let s = arc.s_at(t)?;
        let embedding = LayerEmbedding::new(&GeometrySpec::Curve(spec))?;
        let validity = if k.abs() > 1e-12 { 0.9 / k.abs() } else { f64::INFINITY };
        let profile = NormalProfile::from_numeric_metric(
            &embedding,
            Tangential::Curve { s },
            jacobian_step(k.abs()),
            validity,
        );
        let v = vq_normal_profile(&profile, &params, Some(profile_step(validity)))?;
        record.push_scalar("vq_profile", v.value);
        record.push_note(format!("vq_profile provenance: {}", v.provenance));
    }
    Ok(())
}

fn run_vq_surface(
    record: &mut ResultRecord,
    shape: SurfaceShape,
    u: f64,
    v: f64,
    hbar: f64,
    method: VqMethod,
) -> Result<(), CliError> {
    let params = PhysicsParams::new(hbar)?;
    let spec = surface_spec(shape)?;
    let jet = surface_jet(&spec, u, v)?;
    let c = curvatures(&fundamental_forms(&jet)?)?;
    record.push_note(format!("geometry: {} at (u, v) = ({u}, {v})", shape.describe()));
    record.push_scalar("mean_curvature", c.mean);
    record.push_scalar("gauss_curvature", c.gauss);
    record.push_scalar("k1", c.k1);
    record.push_scalar("k2", c.k2);
    if matches!(method, VqMethod::Closed | VqMethod::Both) {
        let val = vq_surface(&c, &params);
        record.push_scalar("vq_closed", val.value);
        record.push_note(format!("vq_closed provenance: {}", val.provenance));
    }
    if matches!(method, VqMethod::Profile | VqMethod::Both) {
        let kmax = c.k1.abs().max(c.k2.abs());
        let validity = if kmax > 1e-12 { 0.9 / kmax } else { f64::INFINITY };
        let embedding = LayerEmbedding::new(&GeometrySpec::Surface(spec))?;
        let profile = NormalProfile::from_numeric_metric(
            &embedding,
            Tangential::Surface { u, v },
            jacobian_step(kmax),
            validity,
        );
        let val = vq_normal_profile(&profile, &params, Some(profile_step(validity)))?;
        record.push_scalar("vq_profile", val.value);
        record.push_note(format!("vq_profile provenance: {}", val.provenance));
    }
    Ok(())
}

fn run_vq_latitude(
    record: &mut ResultRecord,
    radius: f64,
    theta: f64,
    hbar: f64,
    method: VqMethod,
) -> Result<(), CliError> {
    let params = PhysicsParams::new(hbar)?;
    record.push_note(format!("geometry: latitude theta = {theta} on a sphere of radius {radius}"));
    let v = vq_latitude_on_sphere(radius, theta, &params)?;
    record.push_scalar("vq_on_sphere", v.on_sphere.value);
    record.push_scalar("vq_plane_circle", v.plane_circle.value);
    record.push_scalar("embedding_difference", v.on_sphere.value - v.plane_circle.value);
    record.push_note(format!("vq_on_sphere provenance: {}", v.on_sphere.provenance));
    if matches!(method, VqMethod::Profile | VqMethod::Both) {
        let profile = NormalProfile::sphere_latitude(radius, theta)?;
        let val = vq_normal_profile(&profile, &params, None)?;
        record.push_scalar("vq_profile", val.value);
        record.push_note(format!(
            "vq_profile provenance: {} (polar-angle lapse {radius})",
            val.provenance
        ));
    }
    Ok(())
}

fn run_brackets(
    record: &mut ResultRecord,
    system: BracketSystem,
    dim: usize,
    radius: f64,
    samples: usize,
) -> Result<(), CliError> {
    let r = systems::rational_from_f64(radius);
    let (c1, c2, name1, name2) = match system {
        BracketSystem::Sphere => {
            let (a, b) = systems::sphere_constraints(dim, &r);
            (a, b, "phi1", "phi2")
        }
        BracketSystem::SphereAbelian => {
            let (a, b) = systems::abelian_constraints(dim, &r);
            (a, b, "sigma1", "sigma2")
        }
    };
    record.push_note(format!("{name1} = {c1}"));
    record.push_note(format!("{name2} = {c2}"));
    let bracket = poisson_bracket(&c1, &c2);
    record.push_note(format!("{{{name1}, {name2}}} = {bracket}"));
    let mut rng = SplitMix64::new(0x9b4c_1d3a);
    let points: Vec<_> = (0..samples)
        .map(|_| {
            let mut pt = systems::random_onshell_point(&mut rng, dim, radius);
            pt.aux_q = rng.range(-1.0, 1.0);
            pt.aux_p = rng.range(-1.0, 1.0);
            pt
        })
        .collect();
    let constraints = vec![c1, c2];
    let matrix = constraint_matrix(&constraints, &points[0])?;
    record.push_scalar("constraint_matrix_det_at_sample", matrix.det);
    let classification = classify_constraints(&constraints, &points)?;
    record.push_note(format!(
        "classification: {} ({} on-shell samples, tolerance {:.0e})",
        classification.class, samples, classification.tolerance
    ));
    let mut rows = Vec::new();
    for (i, a) in constraints.iter().enumerate() {
        for (j, b) in constraints.iter().enumerate().skip(i + 1) {
            rows.push(vec![
                Cell::Int((i + 1) as i64),
                Cell::Int((j + 1) as i64),
                Cell::Text(poisson_bracket(a, b).to_string()),
            ]);
        }
    }
    record.table = Some(Table {
        headers: vec!["i".into(), "j".into(), "poisson_bracket".into()],
        rows,
    });
    Ok(())
}

fn run_spectrum_circle(
    record: &mut ResultRecord,
    radius: f64,
    n_grid: usize,
    modes: usize,
    with_vq: bool,
    hbar: f64,
) -> Result<(), CliError> {
    let params = PhysicsParams::new(hbar)?;
    let spec = CurveSpec::circle(radius)?;
    let op = build_curve_hamiltonian(&spec, n_grid, &params, with_vq)?;
    let spectrum = eigensolve_symmetric(&op, modes)?;
    record.push_note(format!(
        "periodic arc-length grid, N = {n_grid}, h = {:.6e}, with_vq = {with_vq}",
        op.grid_step
    ));
    record.push_scalar("residual_bound", spectrum.residual_bound);
    let rows = spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &e)| vec![Cell::Int(i as i64), Cell::Num(crate::record::round_sig12(e))])
        .collect();
    record.table = Some(Table { headers: vec!["level".into(), "energy".into()], rows });
    Ok(())
}

fn run_recipes(
    record: &mut ResultRecord,
    geometry: RecipeGeometryArg,
    radius: f64,
    lmax: u32,
    ambient_dim: u32,
    hbar: f64,
) -> Result<(), CliError> {
    let params = PhysicsParams::new(hbar)?;
    let geom = match geometry {
        RecipeGeometryArg::Sphere => RecipeGeometry::Sphere { ambient_dim, radius },
        RecipeGeometryArg::Circle => RecipeGeometry::Circle { radius },
    };
    let table = recipe_table(&geom, lmax, &params)?;
    let mut rows = Vec::new();
    for row in &table.rows {
        match row.constant {
            Some(c) => record.push_scalar(format!("constant_{}", row.recipe.name()), c),
            None => record.push_note(format!(
                "{}: no constant given for this geometry; reported as absent",
                row.recipe.name()
            )),
        }
        for level in &row.levels {
            rows.push(vec![
                Cell::Text(row.recipe.name().into()),
                Cell::Int(level.index as i64),
                Cell::Int(level.degeneracy as i64),
                Cell::Num(crate::record::round_sig12(level.energy)),
            ]);
        }
    }
    record.table = Some(Table {
        headers: vec!["recipe".into(), "level".into(), "degeneracy".into(), "energy".into()],
        rows,
    });
    Ok(())
}

fn layer_config(knobs: &crate::args::LayersimKnobs, n_tangential: usize) -> LayerConfig {
    LayerConfig {
        eps: knobs.eps.clone(),
        confinement: match knobs.confinement {
            ConfinementArg::Dirichlet => Confinement::Dirichlet,
            ConfinementArg::Harmonic => Confinement::Harmonic,
        },
        n_transverse: knobs.n_transverse,
        m_max: knobs.m_max,
        n_tangential,
    }
}

fn band_table(result: &BandResult, extrapolate: bool) -> Table {
    let headers = vec![
        "geometry".into(),
        "m".into(),
        "eps".into(),
        "E_raw".into(),
        "E_perp".into(),
        "E_renormalized".into(),
        "E_extrapolated".into(),
        "fit_residual".into(),
    ];
    let mut rows = Vec::new();
    for band in &result.bands {
        for sample in &band.samples {
            let mut row = vec![
                Cell::Text(result.geometry.clone()),
                Cell::Int(band.mode as i64),
                Cell::Num(crate::record::round_sig12(sample.eps)),
                Cell::Num(crate::record::round_sig12(sample.e_raw)),
                Cell::Num(crate::record::round_sig12(sample.e_perp)),
                Cell::Num(crate::record::round_sig12(sample.e_renormalized)),
            ];
            match (extrapolate, band.extrapolation) {
                (true, Some(fit)) => {
                    row.push(Cell::Num(crate::record::round_sig12(fit.limit)));
                    row.push(Cell::Num(crate::record::round_sig12(fit.residual)));
                }
                _ => {
                    row.push(Cell::Text(String::new()));
                    row.push(Cell::Text(String::new()));
                }
            }
            rows.push(row);
        }
    }
    Table { headers, rows }
}

fn run_layersim(
    record: &mut ResultRecord,
    geometry: LayersimGeometry,
    knobs: &crate::args::LayersimKnobs,
) -> Result<(), CliError> {
    let params = PhysicsParams::new(knobs.hbar)?;
    let result = match geometry {
        LayersimGeometry::Circle { radius } => {
            circle_band_spectrum(radius, &layer_config(knobs, 21), &params)?
        }
        LayersimGeometry::Strip => strip_band_spectrum(&layer_config(knobs, 21), &params)?,
        LayersimGeometry::Latitude { radius, theta0 } => {
            latitude_band_spectrum(radius, theta0, &layer_config(knobs, 21), &params)?
        }
        LayersimGeometry::Curve2d { shape, n_tangential } => {
            let spec = curve_spec(shape)?;
            curve_band_spectrum_2d(&spec, &layer_config(knobs, n_tangential), &params)?
        }
    };
    record.push_note(format!(
        "geometry: {}; confinement: {}; transverse basis {}",
        result.geometry,
        knobs.confinement_name(),
        knobs.n_transverse
    ));
    if knobs.extrapolate {
        for band in &result.bands {
            if let Some(fit) = band.extrapolation {
                record.push_scalar(format!("band{}_limit", band.mode), fit.limit);
            }
        }
    }
    for &(eps, count) in &result.first_band_counts {
        record.push_note(format!(
            "eps {eps}: {count} eigenvalues below the second transverse level"
        ));
    }
    record.table = Some(band_table(&result, knobs.extrapolate));
    Ok(())
}

impl crate::args::LayersimKnobs {
    fn confinement_name(&self) -> &'static str {
        match self.confinement {
            ConfinementArg::Dirichlet => "dirichlet",
            ConfinementArg::Harmonic => "harmonic",
        }
    }
}

/// Execute a resolved run and return the record (duration included).
pub fn run(config: &RunConfig) -> Result<ResultRecord, CliError> {
    let started = Instant::now();
    let mut record = ResultRecord::new(config.clone());
    match &config.command {
        CommandConfig::VqCurve { shape, t, hbar, method } => {
            run_vq_curve(&mut record, *shape, *t, *hbar, *method)?
        }
        CommandConfig::VqSurface { shape, u, v, hbar, method } => {
            run_vq_surface(&mut record, *shape, *u, *v, *hbar, *method)?
        }
        CommandConfig::VqLatitude { radius, theta, hbar, method } => {
            run_vq_latitude(&mut record, *radius, *theta, *hbar, *method)?
        }
        CommandConfig::Brackets { system, dim, radius, samples } => {
            run_brackets(&mut record, *system, *dim, *radius, *samples)?
        }
        CommandConfig::SpectrumCircle { radius, n_grid, modes, with_vq, hbar } => {
            run_spectrum_circle(&mut record, *radius, *n_grid, *modes, *with_vq, *hbar)?
        }
        CommandConfig::RecipesCompare { geometry, radius, lmax, ambient_dim, hbar } => {
            run_recipes(&mut record, *geometry, *radius, *lmax, *ambient_dim, *hbar)?
        }
        CommandConfig::Layersim { geometry, knobs } => {
            run_layersim(&mut record, *geometry, knobs)?
        }
    }
    record.duration_ms = Some(started.elapsed().as_millis() as u64);
    Ok(record)
}
