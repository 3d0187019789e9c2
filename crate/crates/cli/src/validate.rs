//! Randomized oracle cross-checks printed as a pass/fail table.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trinoid_core::cmc1::{from_moduli, gauge_constants, pairings, unitarizable, unitarizer_r, brute_force_r, Trinoid, TwonoidData};
use trinoid_core::fuchsian::{monodromy_bundle, FuchsianParams};
use trinoid_core::specfun::{gamma_complex, hyp2f1, hyp2f1_planned, EvalSettings, HypParams, Representation};
use trinoid_core::{Complex, Error, Mat2C};

pub struct Check {
    pub name: &'static str,
    pub samples: usize,
    pub worst: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.samples > 0 && self.worst <= self.tol
    }
}

struct Acc {
    samples: usize,
    worst: f64,
}

impl Acc {
    fn new() -> Self {
        Self { samples: 0, worst: 0.0 }
    }

    fn push(&mut self, v: Result<f64, Error>) {
        self.samples += 1;
        self.worst = self.worst.max(v.unwrap_or(f64::INFINITY));
    }

    fn done(self, name: &'static str, tol: f64) -> Check {
        Check { name, samples: self.samples, worst: self.worst, tol }
    }
}

fn cplx(rng: &mut ChaCha8Rng, r: f64) -> Complex {
    Complex::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn gamma_recurrence(rng: &mut ChaCha8Rng) -> Check {
    let mut acc = Acc::new();
    while acc.samples < 50 {
        let z = cplx(rng, 4.0);
        if (z.re - z.re.round()).hypot(z.im) < 0.05 {
            continue;
        }
        acc.push((|| Ok(rel(z * gamma_complex(z)?, gamma_complex(z + 1.0)?)))());
    }
    acc.done("gamma recurrence", 1e-12)
}

fn hypergeometric_routes(rng: &mut ChaCha8Rng) -> Check {
    let s = EvalSettings::default();
    let mut acc = Acc::new();
    for _ in 0..20 {
        let p = HypParams::real(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5), rng.gen_range(0.3..2.5));
        let z = Complex::from_polar(rng.gen_range(0.1..2.5), rng.gen_range(0.2..3.0));
        acc.push((|| Ok(rel(hyp2f1(&p, z)?, hyp2f1_planned(&p, z, None, Representation::OdeFallback, &s)?)))());
    }
    acc.done("2F1 closed form vs ODE transport", 1e-9)
}

fn random_fuchsian(rng: &mut ChaCha8Rng) -> FuchsianParams<f64> {
    loop {
        let p = FuchsianParams::real(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        if p.check_generic().is_ok() {
            return p;
        }
    }
}

fn fuchsian_checks(rng: &mut ChaCha8Rng) -> [Check; 2] {
    let (mut transport, mut cyclic) = (Acc::new(), Acc::new());
    for _ in 0..10 {
        let p = random_fuchsian(rng);
        match monodromy_bundle(&p) {
            Ok(b) => {
                transport.push(Ok(b.transport_defect.iter().fold(0.0f64, |m, d| m.max(*d))));
                cyclic.push(Ok(b.cyclic_defect()));
            }
            Err(e) => {
                transport.push(Err(e.clone()));
                cyclic.push(Err(e));
            }
        }
    }
    [transport.done("monodromy closed form vs transport", 1e-6), cyclic.done("cyclic monodromy relation", 1e-8)]
}

fn random_d(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [(); 3].map(|_| rng.gen_range(0.02..1.2))
}

fn moduli_vs_trig(rng: &mut ChaCha8Rng) -> Check {
    let mut acc = Acc::new();
    for _ in 0..200 {
        let Ok(w) = from_moduli(random_d(rng)) else { continue };
        acc.push(match unitarizable(&w) {
            Err(Error::InconsistentCriteria { .. }) => Ok(1.0),
            _ => Ok(0.0),
        });
    }
    acc.done("moduli region vs sign test (disagreements)", 0.0)
}

fn unitarizer_vs_scan(rng: &mut ChaCha8Rng) -> Check {
    let mut acc = Acc::new();
    let mut tries = 0;
    while acc.samples < 5 && tries < 500 {
        tries += 1;
        let Ok(w) = from_moduli(random_d(rng)) else { continue };
        if !unitarizable(&w).is_ok_and(|r| r.unitarizable && r.margin.unwrap_or(0.0) > 1e-3) {
            continue;
        }
        let Ok(fp) = pairings(&w).and_then(|pr| gauge_constants(&w, &pr)).map(|g| g.fuchsian()) else { continue };
        if fp.check_generic().is_err() {
            continue;
        }
        acc.push((|| {
            let b = monodromy_bundle(&fp)?;
            let r = unitarizer_r(&fp)?;
            let (rb, _) = brute_force_r(&[b.m0, b.m1, b.minf]);
            Ok((r - rb).abs() / r)
        })());
    }
    acc.done("unitarizer r vs brute-force scan", 1e-8)
}

fn twonoid_residual(rng: &mut ChaCha8Rng) -> Check {
    let mut acc = Acc::new();
    while acc.samples < 20 {
        let Ok(t) = TwonoidData::new(cplx(rng, 1.0), cplx(rng, 1.0), cplx(rng, 1.0), cplx(rng, 1.0)) else { continue };
        let z = Complex::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(-3.0..3.0));
        let wd = t.weierstrass();
        acc.push((|| {
            let h = 1e-5 * z.norm().min(1.0);
            let d = (t.psi(z + h)? - t.psi(z - h)?).scale_re(0.5 / h);
            let a = wd.coefficient(z) * t.psi(z)?;
            Ok((d - a).max_abs() / a.max_abs().max(1.0))
        })());
    }
    acc.done("twonoid frame ODE residual", 1e-7)
}

fn trinoid_frames(rng: &mut ChaCha8Rng) -> Check {
    let mut acc = Acc::new();
    let mut tries = 0;
    while acc.samples < 20 && tries < 500 {
        tries += 1;
        let Ok(w) = from_moduli(random_d(rng)) else { continue };
        let Ok(t) = Trinoid::new(w) else { continue };
        for _ in 0..5 {
            let z = cplx(rng, 2.5);
            if t.data.puncture_distance(z) < 0.1 {
                continue;
            }
            acc.push((|| {
                let psi: Mat2C = t.psi(z)?;
                let f = t.immersion(z)?;
                Ok((psi.det() - 1.0).norm().max((f.det() - 1.0).abs()))
            })());
        }
    }
    acc.done("trinoid frame det and det F", 1e-8)
}

pub fn run(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![gamma_recurrence(&mut rng), hypergeometric_routes(&mut rng)];
    out.extend(fuchsian_checks(&mut rng));
    out.push(moduli_vs_trig(&mut rng));
    out.push(unitarizer_vs_scan(&mut rng));
    out.push(twonoid_residual(&mut rng));
    out.push(trinoid_frames(&mut rng));
    out
}
