use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use super::sample::SurfacePatch;

/// Shortest decimal with `digits` significant digits, in the style of C's `%g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    }
}

/// Wavefront OBJ text: one group per patch, ball-model vertices, quad faces.
pub fn write_obj<W: Write>(patches: &[SurfacePatch], mut out: W) -> io::Result<()> {
    let mut text = String::new();
    let mut base = 1usize;
    for p in patches {
        let cfg = &p.config;
        let (nr, nt) = (cfg.n_r, cfg.n_theta);
        writeln!(text, "g {}", p.group_name()).unwrap();
        let mut index = vec![None; p.points.len()];
        for (j, pt) in p.points.iter().enumerate() {
            if let Ok(pt) = pt {
                let [x, y, z] = pt.ball.map(|v| format_significant(v, 9));
                writeln!(text, "v {x} {y} {z}").unwrap();
                index[j] = Some(base);
                base += 1;
            }
        }
        let wrap = nt >= 3;
        let columns = if wrap { nt } else { nt.saturating_sub(1) };
        for i in 0..nr.saturating_sub(1) {
            for k in 0..columns {
                let k1 = (k + 1) % nt;
                let quad = [i * nt + k, i * nt + k1, (i + 1) * nt + k1, (i + 1) * nt + k];
                if let [Some(a), Some(b), Some(c), Some(d)] = quad.map(|j| index[j]) {
                    writeln!(text, "f {a} {b} {c} {d}").unwrap();
                }
            }
        }
    }
    out.write_all(text.as_bytes())
}

pub fn export_obj(patches: &[SurfacePatch], path: impl AsRef<Path>) -> io::Result<()> {
    let mut buf = Vec::new();
    write_obj(patches, &mut buf)?;
    std::fs::write(path, buf)
}

pub const CSV_HEADER: &str = "re_z,im_z,end,detF_err,conformal_resid,H_abs_err,psi_residual";

/// Diagnostics of every sampled node, one row each, holes omitted.
pub fn write_diagnostics_csv<W: Write>(patches: &[SurfacePatch], mut out: W) -> io::Result<()> {
    let mut text = String::new();
    writeln!(text, "{CSV_HEADER}").unwrap();
    for d in patches.iter().flat_map(|p| p.points.iter().flatten()).map(|p| &p.diag) {
        writeln!(
            text,
            "{:e},{:e},{},{:e},{:e},{:e},{:e}",
            d.re_z,
            d.im_z,
            d.end.label(),
            d.det_f_err,
            d.conformal_resid,
            d.h_abs_err,
            d.psi_residual
        )
        .unwrap();
    }
    out.write_all(text.as_bytes())
}

pub fn export_diagnostics(patches: &[SurfacePatch], path: impl AsRef<Path>) -> io::Result<()> {
    let mut buf = Vec::new();
    write_diagnostics_csv(patches, &mut buf)?;
    std::fs::write(path, buf)
}
