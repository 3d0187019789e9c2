use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trinoid_core::cmc1::{
    from_moduli, gauge_constants, pairings, symmetric_family, unitarizable, unitarizer_r, Trinoid, TwonoidData,
    WeierstrassData,
};
use trinoid_core::fuchsian::Branch;
use trinoid_core::mesh::{
    export_diagnostics, export_obj, sample_surface, seam_agreement, summarize, ImmersionSource, PatchConfig,
};
use trinoid_core::{Complex, Error};

mod config;
mod validate;

#[derive(Parser)]
#[command(name = "trinoid", version, about = "CMC-1 trinoids and twonoids in hyperbolic space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct MeshOpts {
    /// Radial samples per patch
    #[arg(long, default_value_t = config::DEFAULT_SAMPLES)]
    n_r: usize,
    /// Angular samples per patch
    #[arg(long, default_value_t = config::DEFAULT_SAMPLES)]
    n_theta: usize,
    /// Inner radius of the patch disks
    #[arg(long, default_value_t = config::DEFAULT_EPS)]
    eps: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Trinoid mesh from a JSON config
    Trinoid {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        diagnostics: Option<PathBuf>,
    },
    /// Twonoid mesh; residues as `re` or `re,im`
    Twonoid {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        q0: Complex,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        qinf: Complex,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        p0: Complex,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        pinf: Complex,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        diagnostics: Option<PathBuf>,
        #[command(flatten)]
        mesh: MeshOpts,
    },
    /// Unitarizability of a moduli point
    Moduli {
        #[arg(long, allow_hyphen_values = true)]
        d0: f64,
        #[arg(long, allow_hyphen_values = true)]
        d1: f64,
        #[arg(long, allow_hyphen_values = true)]
        dinf: f64,
    },
    /// Symmetric trinoid with d0 = d1 = dinf
    Symmetric {
        #[arg(long, allow_hyphen_values = true)]
        d0: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        diagnostics: Option<PathBuf>,
        #[command(flatten)]
        mesh: MeshOpts,
    },
    /// Randomized oracle cross-checks
    Validate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Core(Error),
    Config(config::ConfigError),
    Io(PathBuf, std::io::Error),
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::NotUnitarizable(_)) => 2,
            Failure::Core(Error::DegenerateData(_) | Error::ResonantParameters(_)) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Config(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Checks(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got {s:?}")),
    }
}

fn write_mesh<S: ImmersionSource>(
    src: &S,
    patches: &[PatchConfig],
    out: &PathBuf,
    diagnostics: Option<&PathBuf>,
) -> Result<(), Failure> {
    let sampled = sample_surface(src, patches);
    export_obj(&sampled, out).map_err(|e| Failure::Io(out.clone(), e))?;
    if let Some(path) = diagnostics {
        export_diagnostics(&sampled, path).map_err(|e| Failure::Io(path.clone(), e))?;
    }
    let s = summarize(&sampled);
    let seam = seam_agreement(src, &sampled)?;
    let vertices: usize = sampled.iter().map(|p| p.points.iter().flatten().count()).sum();
    println!("wrote {} ({} patches, {} vertices, {} holes)", out.display(), sampled.len(), vertices, s.holes);
    println!(
        "interior points passing det F / conformal / |H| checks: {}/{} ({:.2}%)",
        s.all_pass,
        s.interior,
        100.0 * s.pass_fraction()
    );
    println!("seam pairs {}, max hyperbolic distance {:e}", seam.pairs, seam.max_distance);
    Ok(())
}

fn trinoid_mesh(w: WeierstrassData<f64>, patches: &[PatchConfig], out: &PathBuf, diag: Option<&PathBuf>) -> Result<(), Failure> {
    let t = Trinoid::new(w)?;
    let [d0, d1, di] = t.report.moduli.d();
    println!("d = ({d0}, {d1}, {di}), r = {}, unitarity defect {:e}", t.r, t.unitarity_defect());
    write_mesh(&t, patches, out, diag)
}

fn moduli(d: [f64; 3]) -> Result<(), Failure> {
    println!("d = ({}, {}, {})", d[0], d[1], d[2]);
    let w = from_moduli(d)?;
    let rep = unitarizable(&w)?;
    match rep.moduli.reduced {
        Some([x, y, z]) => {
            println!("reduced = ({x:.9}, {y:.9}, {z:.9})");
            println!("margin x+y+z-1/2 = {:.9}", x + y + z - 0.5);
            println!("margin 1/2-(x+y-z) = {:.9}", 0.5 - (x + y - z));
            println!("margin 1/2-(x-y+z) = {:.9}", 0.5 - (x - y + z));
            println!("margin 1/2-(-x+y+z) = {:.9}", 0.5 - (-x + y + z));
        }
        None => println!("reduced = none (some d is negative or not real)"),
    }
    if let Some(t) = rep.trig_product {
        println!("sign test product = {t:.9e}");
    }
    if !rep.unitarizable {
        println!("NOT UNITARIZABLE");
        return Err(Error::NotUnitarizable("moduli point outside the region".into()).into());
    }
    println!("UNITARIZABLE");
    let fp = gauge_constants(&w, &pairings(&w)?)?.fuchsian();
    fp.check_generic()?;
    println!("r = {:.12}", unitarizer_r(&fp)?);
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Trinoid { config, out, diagnostics } => {
            let text = std::fs::read_to_string(&config).map_err(|e| Failure::Io(config.clone(), e))?;
            let cfg = config::parse(&text).map_err(Failure::Config)?;
            trinoid_mesh(WeierstrassData::trinoid(cfg.p, cfg.q), &cfg.patches, &out, diagnostics.as_ref())
        }
        Command::Twonoid { q0, qinf, p0, pinf, out, diagnostics, mesh } => {
            let t = TwonoidData::new(p0, pinf, q0, qinf)?;
            if t.lambda.im.abs() > 1e-10 {
                return Err(Error::NotUnitarizable(format!("lambda = {} is not real", t.lambda)).into());
            }
            println!("lambda = {}", t.lambda.re);
            let patches = config::uniform_patches(&[Branch::Zero, Branch::Infinity], mesh.n_r, mesh.n_theta, mesh.eps)?;
            write_mesh(&t, &patches, &out, diagnostics.as_ref())
        }
        Command::Moduli { d0, d1, dinf } => moduli([d0, d1, dinf]),
        Command::Symmetric { d0, out, diagnostics, mesh } => {
            let patches = config::uniform_patches(&Branch::ALL, mesh.n_r, mesh.n_theta, mesh.eps)?;
            trinoid_mesh(symmetric_family(d0)?, &patches, &out, diagnostics.as_ref())
        }
        Command::Validate { seed } => {
            let checks = validate::run(seed);
            println!("{:<44} {:>7} {:>12} {:>9}  result", "check", "samples", "worst", "tol");
            for c in &checks {
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                println!("{:<44} {:>7} {:>12.3e} {:>9.0e}  {verdict}", c.name, c.samples, c.worst, c.tol);
            }
            match checks.iter().filter(|c| !c.passed()).count() {
                0 => Ok(()),
                n => Err(Failure::Checks(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
