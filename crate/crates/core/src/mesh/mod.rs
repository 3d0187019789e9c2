//! Patch sampling of the surfaces, geometric diagnostics and mesh output.

mod export;
mod patch;
mod sample;
mod source;
mod stencil;

pub use export::{
    export_diagnostics, export_obj, format_significant, write_diagnostics_csv, write_obj, CSV_HEADER,
};
pub use patch::{end_direction, patch_map, PatchConfig, SpherePoint, MIN_EPS, MIN_SAMPLES};
pub use sample::{
    revolution_defect, sample_point, sample_surface, seam_agreement, summarize, DiagnosticsRow, DiagnosticsSummary,
    SamplePoint, SeamReport, SurfacePatch, CONFORMAL_TOL, CURVATURE_TOL, DET_TOL,
};
pub use source::ImmersionSource;
pub use stencil::{mean_curvature_fd, Stencil, FIRST_STEP, SECOND_STEP};
