//! Cross-path agreement: the normal-profile operator applied to the
//! numeric layer metric must reproduce the closed-form quantum potential
//! on every catalog geometry.

use qreduce_core::geometry::{
    arc_length_reparam, curvatures, fundamental_forms, surface_jet, CurveSpec, GeometrySpec,
    LayerEmbedding, SurfaceSpec, Tangential,
};
use qreduce_core::numeric::SplitMix64;
use qreduce_core::potential::{
    vq_curve, vq_normal_profile, vq_surface, NormalProfile, PhysicsParams,
};

/// |got - want| <= 1e-4 * max(|want|, floor); the floor covers the
/// flat geometries whose potential is exactly zero.
fn assert_agree(got: f64, want: f64, context: &str) {
    let tol = 1e-4 * want.abs().max(1e-2);
    assert!(
        (got - want).abs() <= tol,
        "{context}: profile {got} vs closed form {want}"
    );
}

fn profile_step(validity: f64) -> f64 {
    1e-2 * validity.min(10.0)
}

#[test]
fn curves_agree_along_the_catalog() {
    let p = PhysicsParams::default();
    let curves = [
        CurveSpec::line(0.0, 3.0).unwrap(),
        CurveSpec::circle(0.8).unwrap(),
        CurveSpec::ellipse(1.5, 1.0).unwrap(),
        CurveSpec::parabola(1.0, -2.0, 2.0).unwrap(),
    ];
    let mut rng = SplitMix64::new(0xcafe_0001);
    for curve in &curves {
        let arc = arc_length_reparam(curve, 1e-9).unwrap();
        let embedding = LayerEmbedding::new(&GeometrySpec::Curve(*curve)).unwrap();
        for _ in 0..10 {
            let s = rng.range(0.05, 0.95) * arc.total_length();
            let k = arc.curvature_at_s(s).unwrap();
            let want = vq_curve(k, &p).value;
            let validity = 0.9 / k.abs().max(0.09);
            let profile = NormalProfile::from_numeric_metric(
                &embedding,
                Tangential::Curve { s },
                1e-4 / k.abs().max(0.1),
                validity,
            );
            let got = vq_normal_profile(&profile, &p, Some(profile_step(validity)))
                .unwrap()
                .value;
            assert_agree(got, want, &format!("{} at s = {s}", curve.describe()));
        }
    }
}

#[test]
fn surfaces_agree_along_the_catalog() {
    let p = PhysicsParams::default();
    let surfaces = [
        SurfaceSpec::plane(),
        SurfaceSpec::sphere(1.3).unwrap(),
        SurfaceSpec::cylinder(0.9).unwrap(),
        SurfaceSpec::torus(2.2, 0.7).unwrap(),
    ];
    let mut rng = SplitMix64::new(0xcafe_0002);
    for surface in &surfaces {
        let embedding = LayerEmbedding::new(&GeometrySpec::Surface(*surface)).unwrap();
        for _ in 0..10 {
            let span_u = surface.u_range.1 - surface.u_range.0;
            let u = rng.range(
                surface.u_range.0 + 0.1 * span_u,
                surface.u_range.1 - 0.1 * span_u,
            );
            let v = rng.range(surface.v_range.0, surface.v_range.1);
            let c = curvatures(&fundamental_forms(&surface_jet(surface, u, v).unwrap()).unwrap())
                .unwrap();
            let want = vq_surface(&c, &p).value;
            let kmax = c.k1.abs().max(c.k2.abs()).max(0.1);
            let validity = 0.9 / kmax;
            let profile = NormalProfile::from_numeric_metric(
                &embedding,
                Tangential::Surface { u, v },
                1e-4 / kmax,
                validity,
            );
            let got = vq_normal_profile(&profile, &p, Some(profile_step(validity)))
                .unwrap()
                .value;
            assert_agree(got, want, &format!("{:?} at ({u}, {v})", surface.kind));
        }
    }
}
