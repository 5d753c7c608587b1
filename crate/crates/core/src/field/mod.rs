//! Reconstruction of the physical flow from a solved state: the conformal
//! map of the strip onto the fluid domain, the stream function, the velocity
//! field, the surface curve and its stagnation points.

mod reconstruct;
mod series;
mod stagnation;
mod surface;

pub use reconstruct::{conformal_map, reconstruct, stream_function, GridSpec, PointSample, StripField};
pub use series::{harmonic_extension, ExtensionField, HarmonicSample, HarmonicSeries, StripGrid};
pub use stagnation::{find_stagnation, StagnationKind, StagnationPoint, StagnationReport};
pub use surface::{
    check_geometry, find_self_intersection, flux_term_forms, surface_geometry, surface_speed_sides, validity_flags,
    SurfaceCurve, Validity,
};
