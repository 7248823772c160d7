//! Parametrized plane curves and surfaces in 3-space: derivative jets,
//! fundamental forms, curvatures, arc-length reparametrization and
//! thin-layer metric factors with an independent numeric Jacobian oracle.
//!
//! Catalog parametrizations are chosen so that the unit normal
//! `r_u x r_v` points toward the center of curvature; principal
//! curvatures of the curved catalog surfaces then come out positive and
//! the normal-offset metric factor is `(1 - q_n k_1)(1 - q_n k_2)`.

mod arclength;
mod curve;
mod layer;
mod surface;

pub use arclength::{arc_length_reparam, ArcLengthMap};
pub use curve::{curvature_t_derivative, curve_jet, plane_curvature, CurveJet, CurveKind, CurveSpec};
pub use layer::{
    layer_metric_curve, layer_metric_numeric, layer_metric_surface, GeometrySpec, LayerEmbedding,
    LayerPoint, Tangential,
};
pub use surface::{
    curvatures, fundamental_forms, surface_jet, Curvatures, Forms, SurfaceJet, SurfaceKind,
    SurfaceSpec,
};

pub(crate) fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(crate) fn norm2(a: [f64; 2]) -> f64 {
    dot2(a, a).sqrt()
}

pub(crate) fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
