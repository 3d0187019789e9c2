use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuchsian::Branch;
use crate::linalg::{hyperbolic_distance, lorentz_of, to_poincare_ball};
use crate::{Complex, Herm2};

use super::patch::PatchConfig;
use super::source::{ImmersionSource, LocalFrame};
use super::stencil::{Stencil, FIRST_STEP, SECOND_STEP};

pub const DET_TOL: f64 = 1e-7;
pub const CONFORMAL_TOL: f64 = 1e-3;
pub const CURVATURE_TOL: f64 = 1e-3;

/// Per-point geometric checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRow {
    pub re_z: f64,
    pub im_z: f64,
    pub end: Branch,
    /// `|det F − 1|`
    pub det_f_err: f64,
    pub conformal_resid: f64,
    /// `||H| − 1|`
    pub h_abs_err: f64,
    /// Relative finite-difference residual of `Ψ' = AΨ`.
    pub psi_residual: f64,
}

impl DiagnosticsRow {
    pub fn passes(&self) -> bool {
        self.det_f_err <= DET_TOL && self.conformal_resid <= CONFORMAL_TOL && self.h_abs_err <= CURVATURE_TOL
    }

    pub fn is_finite(&self) -> bool {
        [self.det_f_err, self.conformal_resid, self.h_abs_err, self.psi_residual].iter().all(|x| x.is_finite())
    }
}

#[derive(Debug, Clone)]
pub struct SamplePoint {
    pub wt: Complex,
    pub z: Complex,
    pub f: Herm2,
    pub ball: [f64; 3],
    pub diag: DiagnosticsRow,
}

/// Samples of one end; `points[i * n_theta + k]` is grid node `(i, k)`, failed nodes are holes.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    pub config: PatchConfig,
    pub points: Vec<Result<SamplePoint>>,
}

impl SurfacePatch {
    pub fn group_name(&self) -> String {
        format!("end{}", self.config.end.label())
    }

    pub fn interior(&self) -> impl Iterator<Item = &Result<SamplePoint>> {
        let n = self.config.n_theta;
        self.points.iter().enumerate().filter(move |(j, _)| self.config.is_interior(j / n)).map(|(_, p)| p)
    }
}

/// Length scale for finite-difference steps at `z`.
fn step_scale<S: ImmersionSource>(src: &S, z: Complex) -> f64 {
    src.puncture_distance(z).min(1.0)
}

/// `F(z)`, its ball image and diagnostics.
pub fn sample_point<S: ImmersionSource>(src: &S, end: Branch, wt: Complex) -> Result<SamplePoint> {
    let z = src
        .chart(end, wt)
        .finite()
        .ok_or_else(|| Error::NotRepresentable(format!("disk point {wt} maps to infinity")))?;
    let frame = LocalFrame::new(src, z, src.route(z))?;
    let f = frame.immersion(z)?;
    let ball = to_poincare_ball(&lorentz_of(&f))?;
    if !(ball.iter().map(|x| x * x).sum::<f64>() < 1.0) {
        return Err(Error::NotRepresentable(format!("z = {z} lies on the ideal boundary in double precision")));
    }
    let s = step_scale(src, z);
    let (h1, h2) = (FIRST_STEP * s, SECOND_STEP * s);
    let st = Stencil::sample(|x| frame.immersion(x), z, h1, h2)?;
    let psi = frame.centre_psi();
    let a = src.coefficient(z);
    let dpsi = (frame.psi(z + h1)? - frame.psi(z - h1)?).scale_re(0.5 / h1);
    let psi_residual = (dpsi - a * psi).max_abs() / (a.max_abs() * psi.max_abs()).max(f64::MIN_POSITIVE);
    let diag = DiagnosticsRow {
        re_z: z.re,
        im_z: z.im,
        end,
        det_f_err: (f.det() - 1.0).abs(),
        conformal_resid: st.conformal_residual(),
        h_abs_err: (st.mean_curvature()? - 1.0).abs(),
        psi_residual,
    };
    if !diag.is_finite() {
        return Err(Error::NotRepresentable(format!("non-finite diagnostics at z = {z}")));
    }
    Ok(SamplePoint { wt, z, f, ball, diag })
}

/// Samples every configured patch; grid nodes are evaluated in parallel.
pub fn sample_surface<S: ImmersionSource>(src: &S, configs: &[PatchConfig]) -> Vec<SurfacePatch> {
    configs
        .iter()
        .map(|cfg| {
            let points = (0..cfg.len())
                .into_par_iter()
                .map(|j| sample_point(src, cfg.end, cfg.node(j / cfg.n_theta, j % cfg.n_theta)))
                .collect();
            SurfacePatch { config: *cfg, points }
        })
        .collect()
}

/// Pass counts over interior nodes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiagnosticsSummary {
    pub interior: usize,
    pub holes: usize,
    pub det_pass: usize,
    pub conformal_pass: usize,
    pub curvature_pass: usize,
    pub all_pass: usize,
}

impl DiagnosticsSummary {
    pub fn pass_fraction(&self) -> f64 {
        if self.interior == 0 {
            0.0
        } else {
            self.all_pass as f64 / self.interior as f64
        }
    }
}

pub fn summarize(patches: &[SurfacePatch]) -> DiagnosticsSummary {
    let mut s = DiagnosticsSummary::default();
    for p in patches.iter().flat_map(|p| p.interior()) {
        s.interior += 1;
        match p {
            Ok(p) => {
                let d = &p.diag;
                s.det_pass += (d.det_f_err <= DET_TOL) as usize;
                s.conformal_pass += (d.conformal_resid <= CONFORMAL_TOL) as usize;
                s.curvature_pass += (d.h_abs_err <= CURVATURE_TOL) as usize;
                s.all_pass += d.passes() as usize;
            }
            Err(_) => s.holes += 1,
        }
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeamReport {
    pub pairs: usize,
    /// Largest hyperbolic distance between the two patches' values of `F`.
    pub max_distance: f64,
}

/// Compares `F` on shared outer boundary nodes, each side using its own end's representation.
pub fn seam_agreement<S: ImmersionSource>(src: &S, patches: &[SurfacePatch]) -> Result<SeamReport> {
    let mut pairs = Vec::new();
    for (a, pa) in patches.iter().enumerate() {
        let ca = &pa.config;
        for k in 0..ca.n_theta {
            let wt = ca.node(ca.n_r - 1, k);
            let Some(z) = src.chart(ca.end, wt).finite() else { continue };
            for pb in &patches[a + 1..] {
                let Some(zb) = src.chart(pb.config.end, wt.conj()).finite() else { continue };
                if (zb - z).norm() <= 1e-9 * z.norm().max(1.0) {
                    pairs.push((z, ca.end, pb.config.end));
                }
            }
        }
    }
    let dists: Vec<f64> = pairs
        .par_iter()
        .map(|&(z, ea, eb)| {
            let fa = LocalFrame::new(src, z, src.home_route(ea))?.immersion(z)?;
            let fb = LocalFrame::new(src, z, src.home_route(eb))?.immersion(z)?;
            Ok(hyperbolic_distance(&lorentz_of(&fa), &lorentz_of(&fb)))
        })
        .collect::<Result<_>>()?;
    Ok(SeamReport { pairs: dists.len(), max_distance: dists.iter().fold(0.0, |m, d| m.max(*d)) })
}

/// Largest spread of the height `x₃` and the axial radius `√(x₁² + x₂²)` over each grid ring.
pub fn revolution_defect(patch: &SurfacePatch) -> f64 {
    let n = patch.config.n_theta;
    patch
        .points
        .chunks(n)
        .map(|ring| {
            let pts: Vec<[f64; 2]> =
                ring.iter().flatten().map(|p| [p.ball[2], p.ball[0].hypot(p.ball[1])]).collect();
            let spread = |c: usize| {
                let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| (l.min(p[c]), h.max(p[c])));
                if pts.is_empty() {
                    0.0
                } else {
                    hi - lo
                }
            };
            spread(0).max(spread(1))
        })
        .fold(0.0, f64::max)
}
