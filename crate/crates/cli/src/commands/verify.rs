//! Verification suites. Each check reports its residual, threshold and verdict.

use std::f64::consts::PI;

use monopole_core::currents::{current_of_field, current_of_mode, total_charge, Normalization};
use monopole_core::field::{Gauge, ModeTerm, SpinorField};
use monopole_core::gauge::{eigen_triple, gauge_transform, maxwell_residual, periodicity_defect, potential_shift};
use monopole_core::harmonics::MonopoleMode;
use monopole_core::ops::{
    apply_K, apply_parity, apply_sigma, casimir, k_commutator_residual, random_band_limited, su2_residual, ParityOp, ParityVerdict,
};
use monopole_core::pauli::{annihilation_residual, is_allowed, j_min, spinor_quantization};
use monopole_core::quadrature::SphereGrid;
use monopole_core::radial::{jmin_first_order_residual, jmin_solve, jmin_solve_with_kappa, JminBranch, MetricProfile};
use monopole_core::wigner::{inv_sqrt_pi, little_d, phi_exact, recursion_residual};
use monopole_core::HalfInt;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::params;
use crate::commands::radial::Regime;
use crate::report::{sci, Bound, Check, Report, Table};
use crate::{CliError, RunConfig, Suite};

type C = Complex<f64>;
type Job<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

const DISALLOWED: [(i64, i64); 10] = [(1, 2), (1, 0), (0, 1), (2, 1), (-1, 2), (3, 2), (0, 3), (4, 2), (-3, 4), (2, 5)];
const RANDOM_SPINORS: usize = 3;

fn hi(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn ks(cfg: &RunConfig, default: &[i64]) -> Vec<HalfInt> {
    match cfg.k {
        Some(k) => vec![k],
        None => default.iter().map(|&t| hi(t)).collect(),
    }
}

/// `(j, m)` for `j_min(k) <= j <= j_min(k) + extra`, honoring `--m-num`.
fn states(cfg: &RunConfig, k: HalfInt, extra: i64) -> Vec<(HalfInt, HalfInt)> {
    let mut out = Vec::new();
    let jm = j_min(k);
    for s in 0..=extra {
        let j = jm + HalfInt::int(s);
        for tm in (-j.twice_value()..=j.twice_value()).step_by(2) {
            let m = hi(tm);
            if cfg.m.is_none_or(|want| want == m) {
                out.push((j, m));
            }
        }
    }
    out
}

fn amplitudes(j: HalfInt, m: HalfInt, k: HalfInt, delta: Option<i8>) -> [C; 4] {
    let probe = ModeTerm::<f64> { j, m, k, f: [C::new(0.0, 0.0); 4] };
    let (a, b) = (C::new(0.6, 0.2), C::new(-0.3, 0.7));
    let vals = match delta {
        Some(d) => [a, b, b * d as f64, a * d as f64],
        None => [a, b, C::new(0.5, -0.4), C::new(0.2, 0.9)],
    };
    let mut f = [C::new(0.0, 0.0); 4];
    for i in 0..4 {
        if probe.populated(i) {
            f[i] = vals[i];
        }
    }
    f
}

fn field(j: HalfInt, m: HalfInt, k: HalfInt, delta: Option<i8>) -> monopole_core::Result<SpinorField<f64>> {
    SpinorField::from_mode(ModeTerm::new(j, m, k, amplitudes(j, m, k, delta))?)
}

/// Runs a fallible measurement as a single check.
fn measure<F>(name: String, tol: f64, bound: Bound, f: F) -> Check
where
    F: FnOnce() -> monopole_core::Result<f64>,
{
    match f() {
        Ok(r) => Check::new(name, r, tol, bound),
        Err(e) => Check::errored(name, e, tol, bound),
    }
}

fn wigner_jobs<'a>(cfg: &'a RunConfig, grid: &'a SphereGrid<f64>) -> Vec<Job<'a>> {
    let tol = cfg.tol;
    let mut jobs: Vec<Job<'a>> = Vec::new();
    jobs.push(Box::new(move || {
        vec![measure("d_unitarity 2j<=12".into(), tol, Bound::Max, || {
            let mut worst = 0f64;
            for tj in 0..=12i64 {
                for ta in (-tj..=tj).step_by(2) {
                    let row: Vec<_> =
                        (-tj..=tj).step_by(2).map(|tb| little_d(hi(tj), hi(ta), hi(tb)).map(|d| d.compile::<f64>())).collect::<Result<_, _>>()?;
                    for i in 0..7 {
                        let th = 0.1 + 0.45 * i as f64;
                        let s: f64 = row.iter().map(|d| d.eval(th).powi(2)).sum();
                        worst = worst.max((s - 1.0).abs());
                    }
                }
            }
            Ok(worst)
        })]
    }));
    jobs.push(Box::new(move || {
        let mut mismatches = 0;
        for tl in -8i64..=8 {
            for tj in 0i64..=12 {
                match is_allowed(hi(tl), hi(tj)) {
                    Ok(v) if v.allowed == v.derivative_is_zero => {}
                    _ => mismatches += 1,
                }
            }
        }
        vec![Check::new("oracle_equivalence 2|lam|<=8 2j<=12", mismatches as f64, 0.0, Bound::Max)]
    }));
    jobs.push(Box::new(move || {
        let mut mismatches = 0;
        for tk in -10i64..=10 {
            let q = spinor_quantization(hi(tk), 6);
            let want = if tk == 0 { hi(1) } else { hi(tk.abs() - 1) };
            let list_ok = q.j_list.iter().enumerate().all(|(i, &j)| j == want + HalfInt::int(i as i64));
            if q.j_min != want || !list_ok {
                mismatches += 1;
            }
        }
        vec![Check::new("quantization 2|k|<=10", mismatches as f64, 0.0, Bound::Max)]
    }));
    for k in ks(cfg, &[0, 1, -1, 2, -2, 3, -3, 4, -4]) {
        jobs.push(Box::new(move || {
            vec![measure(format!("recursions k={k}"), tol, Bound::Max, || {
                let thetas: Vec<f64> = (1..16).map(|i| PI * i as f64 / 16.0).collect();
                let mut worst = 0f64;
                for (j, m) in states(cfg, k, 3) {
                    worst = worst.max(recursion_residual(j, m, k, &thetas)?);
                }
                Ok(worst)
            })]
        }));
    }
    for tl in -4i64..=4 {
        jobs.push(Box::new(move || vec![measure(format!("orthonormality lam={}", hi(tl)), tol, Bound::Max, || gram_defect(hi(tl), grid))]));
    }
    jobs.push(Box::new(move || {
        let allowed = measure("annihilation_allowed 2|lam|<=4 2j<=8".into(), tol, Bound::Max, || {
            let mut worst = 0f64;
            for tl in -4i64..=4 {
                for tj in 0i64..=8 {
                    if is_allowed(hi(tl), hi(tj))?.allowed {
                        worst = worst.max(annihilation_residual(hi(tl), hi(tj), grid)?);
                    }
                }
            }
            Ok(worst)
        });
        let disallowed = measure("annihilation_disallowed corpus".into(), 1e-3, Bound::Min, || {
            let mut least = f64::INFINITY;
            for (tl, tj) in DISALLOWED {
                least = least.min(annihilation_residual(hi(tl), hi(tj), grid)?);
            }
            Ok(least)
        });
        vec![allowed, disallowed]
    }));
    jobs
}

/// `max |G - I|` for the Gram matrix of `Phi^lam_{jm}`, `j <= 7/2`, on the grid.
fn gram_defect(lam: HalfInt, grid: &SphereGrid<f64>) -> monopole_core::Result<f64> {
    let pts: Vec<(f64, f64)> = grid.points().collect();
    let w: Vec<f64> =
        grid.theta_weights().iter().flat_map(|&wt| std::iter::repeat_n(wt * grid.phi_weight(), grid.n_phi())).collect();
    let mut modes = Vec::new();
    let mut tj = lam.twice_value().abs();
    while tj <= 7 {
        for tm in (-tj..=tj).step_by(2) {
            let m = hi(tm);
            let f = phi_exact(lam, hi(tj), m)?.theta.compile::<f64>();
            let s = inv_sqrt_pi::<f64>();
            modes.push(pts.iter().map(|&(t, p)| C::from_polar(1.0, m.to_f64() * p) * (f.eval(t) * s)).collect::<Vec<_>>());
        }
        tj += 2;
    }
    let mut worst = 0f64;
    for (a, fa) in modes.iter().enumerate() {
        for (b, fb) in modes.iter().enumerate() {
            let g: C = fa.iter().zip(fb).zip(&w).map(|((x, y), &wi)| x.conj() * y * wi).sum();
            worst = worst.max((g - if a == b { 1.0 } else { 0.0 }).norm());
        }
    }
    Ok(worst)
}

fn algebra_jobs<'a>(cfg: &'a RunConfig, grid: &'a SphereGrid<f64>) -> Vec<Job<'a>> {
    let tol = cfg.tol;
    let mut jobs: Vec<Job<'a>> = Vec::new();
    for (idx, k) in ks(cfg, &[0, 1, -1, 2, -2, 3]).into_iter().enumerate() {
        let seed = cfg.seed.wrapping_add(idx as u64);
        jobs.push(Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let randoms: monopole_core::Result<Vec<_>> =
                (0..RANDOM_SPINORS).map(|_| random_band_limited::<f64, _>(k, 3, 2, &mut rng)).collect();
            let su2 = measure(format!("su2_commutators k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for psi in randoms.as_ref().map_err(Clone::clone)? {
                    worst = worst.max(su2_residual(psi, grid)?);
                }
                Ok(worst)
            });
            let kj = measure(format!("k_commutes_with_j k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for psi in randoms.as_ref().map_err(Clone::clone)? {
                    worst = worst.max(k_commutator_residual(psi, grid)?);
                }
                Ok(worst)
            });
            vec![su2, kj]
        }));
        jobs.push(Box::new(move || {
            let cas = measure(format!("casimir k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for (j, m) in states(cfg, k, 1) {
                    let psi = field(j, m, k, None)?;
                    let jj = j.to_f64();
                    let want = psi.scale(C::new(jj * (jj + 1.0), 0.0));
                    worst = worst.max(casimir(&psi)?.distance(&want, grid)?);
                }
                Ok(worst)
            });
            let sig = measure(format!("sigma_pattern k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for (j, m) in states(cfg, k, 2) {
                    worst = worst.max(apply_sigma(k, &field(j, m, k, None)?, grid)?.residual);
                }
                Ok(worst)
            });
            vec![cas, sig]
        }));
    }
    jobs
}

fn jmin_jobs<'a>(cfg: &'a RunConfig, grid: &'a SphereGrid<f64>) -> Vec<Job<'a>> {
    let tol = cfg.tol;
    let mut jobs: Vec<Job<'a>> = Vec::new();
    for k in ks(cfg, &[1, -1, 2, -2, 3, -3, 4, -4]) {
        if k.is_zero() {
            continue;
        }
        jobs.push(Box::new(move || {
            let minimal = || states(cfg, k, 0);
            let sigma = measure(format!("sigma_annihilation k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for (j, m) in minimal() {
                    worst = worst.max(apply_sigma(k, &field(j, m, k, None)?, grid)?.field.max_abs(grid));
                }
                Ok(worst)
            });
            let kop = measure(format!("k_annihilation k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for (j, m) in minimal() {
                    worst = worst.max(apply_K(k, &field(j, m, k, None)?, grid)?.field.max_abs(grid));
                }
                Ok(worst)
            });
            let n = measure(format!("n_no_eigenvector k={k}"), 0.0, Bound::Max, || {
                let mut bad = 0;
                for (j, m) in minimal() {
                    if apply_parity(ParityOp::N, &field(j, m, k, None)?, grid)?.verdict != ParityVerdict::NoEigenvector {
                        bad += 1;
                    }
                }
                Ok(bad as f64)
            });
            let radial = measure(format!("radial_closed_form k={k}"), tol, Bound::Max, || {
                let rs: Vec<f64> = (1..=40).map(|i| 0.1 * i as f64).collect();
                let sol = match Regime::of(cfg.eps, cfg.mass) {
                    Regime::Decaying => jmin_solve(k, cfg.eps, cfg.mass, &rs, JminBranch::Decaying)?,
                    _ => jmin_solve_with_kappa(k, cfg.eps, cfg.mass, &rs, 1)?,
                };
                Ok(jmin_first_order_residual(&sol, &rs))
            });
            vec![sigma, kop, n, radial]
        }));
    }
    jobs
}

const GAUGES: [Gauge; 3] = [Gauge::D, Gauge::WyN, Gauge::WyS];

fn gauge_jobs<'a>(cfg: &'a RunConfig, grid: &'a SphereGrid<f64>) -> Vec<Job<'a>> {
    let tol = cfg.tol;
    let mut jobs: Vec<Job<'a>> = Vec::new();
    let charges = ks(cfg, &[0, 1, -1, 2, -2]);
    {
        let charges = charges.clone();
        jobs.push(Box::new(move || {
            charges
                .iter()
                .filter(|k| !k.is_zero())
                .map(|&k| {
                    measure(format!("potential_shift S->D k={k}"), tol, Bound::Max, || {
                        let g = k.to_f64();
                        Ok((potential_shift(g, Gauge::S, Gauge::D, 0.9)? + g).abs())
                    })
                })
                .collect()
        }));
    }
    for k in charges {
        for (j, m) in states(cfg, k, 1) {
            for delta in [1i8, -1] {
                jobs.push(Box::new(move || eigen_table(k, j, m, delta, tol, grid)));
            }
        }
    }
    jobs.push(Box::new(move || {
        let mut worst = 0f64;
        for tk in -20i64..=20 {
            worst = worst.max(periodicity_defect(tk as f64 / 2.0, Gauge::WyN, Gauge::WyS, 64));
        }
        let mut least = f64::INFINITY;
        for i in 0..40 {
            let x = -10.0 + 0.5 * i as f64 + 0.13;
            least = least.min(periodicity_defect(x, Gauge::WyN, Gauge::WyS, 64));
        }
        vec![
            Check::new("wy_single_valued 2k integer", worst, tol, Bound::Max),
            Check::new("wy_multivalued 2k non-integer", least, 1e-6, Bound::Min),
        ]
    }));
    jobs.push(Box::new(move || {
        let fine = SphereGrid::<f64>::new(64, 4);
        [MetricProfile::flat(), MetricProfile::spherical(), MetricProfile::lobachevski()]
            .into_iter()
            .map(|metric| {
                measure(format!("maxwell {}", metric.name), tol, Bound::Max, || maxwell_residual(&metric, 1.0, fine.as_ref().map_err(Clone::clone)?))
            })
            .collect()
    }));
    jobs
}

/// One row per gauge: spread of `(m, K, N)` against the Schwinger gauge.
fn eigen_table(k: HalfInt, j: HalfInt, m: HalfInt, delta: i8, tol: f64, grid: &SphereGrid<f64>) -> Vec<Check> {
    let sign = if delta > 0 { "+1" } else { "-1" };
    let label = |g: Gauge| format!("eigen_invariance j={j} m={m} k={k} delta={sign} S->{}", g.name());
    let base = field(j, m, k, Some(delta)).and_then(|psi| Ok((eigen_triple(&psi, grid)?, psi)));
    let (base, psi) = match base {
        Ok(b) => b,
        Err(e) => return GAUGES.iter().map(|&g| Check::errored(label(g), &e, tol, Bound::Max)).collect(),
    };
    let n_parts = |v: ParityVerdict<f64>| match v {
        ParityVerdict::Eigen(l) => (l.re, l.im, 1.0),
        ParityVerdict::NoEigenvector => (f64::NAN, f64::NAN, 0.0),
    };
    GAUGES
        .iter()
        .map(|&g| {
            let t = match gauge_transform(&psi, g).and_then(|moved| eigen_triple(&moved, grid)) {
                Ok(t) => t,
                Err(e) => return Check::errored(label(g), e, tol, Bound::Max),
            };
            let (a, b) = (n_parts(t.n), n_parts(base.n));
            let n_diff = if a.2 != b.2 {
                f64::INFINITY
            } else if a.2 == 0.0 {
                0.0
            } else {
                C::new(a.0 - b.0, a.1 - b.1).norm()
            };
            let spread = (t.m - base.m).norm().max((t.k_value - base.k_value).norm()).max(n_diff);
            Check::new(label(g), spread, tol, Bound::Max).with_values(&[
                ("m", t.m.re),
                ("K", t.k_value.re),
                ("N_re", a.0),
                ("N_im", a.1),
            ])
        })
        .collect()
}

fn currents_jobs<'a>(cfg: &'a RunConfig, grid: &'a SphereGrid<f64>) -> Vec<Job<'a>> {
    let tol = cfg.tol;
    let mut jobs: Vec<Job<'a>> = Vec::new();
    let metric = MetricProfile::<f64>::flat();
    for k in ks(cfg, &[0, 1, -1, 2, -2, 3, -3]) {
        let metric = metric.clone();
        jobs.push(Box::new(move || {
            let thetas = grid.theta();
            let jtheta = measure(format!("jtheta_fixed_parity k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for (j, m) in states(cfg, k, 2) {
                    if !k.is_zero() && j == j_min(k) {
                        continue;
                    }
                    for d in [1i8, -1] {
                        let mode = MonopoleMode::with_parity(j, m, k, C::new(0.6, 0.2), C::new(-0.3, 0.7), d)?;
                        for &t in thetas {
                            worst = worst.max(current_of_mode(&mode, &metric, 1.0, t, Normalization::Stripped)?.jtheta.abs());
                        }
                    }
                }
                Ok(worst)
            });
            let mut out = vec![jtheta];
            if !k.is_zero() {
                out.push(measure(format!("jphi_jmin k={k}"), tol, Bound::Max, || {
                    let mut worst = 0f64;
                    for (j, m) in states(cfg, k, 0) {
                        let mode = MonopoleMode::new(j, m, k, amplitudes(j, m, k, None))?;
                        for &t in thetas {
                            worst = worst.max(current_of_mode(&mode, &metric, 1.0, t, Normalization::Stripped)?.jphi.abs());
                        }
                    }
                    Ok(worst)
                }));
            }
            out.push(measure(format!("gauge_invariance k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for (j, m) in states(cfg, k, 1) {
                    let psi = field(j, m, k, None)?;
                    for g in GAUGES {
                        let moved = gauge_transform(&psi, g)?;
                        for &t in thetas.iter().step_by(8) {
                            for &p in grid.phi().iter().step_by(8) {
                                let a = current_of_field(&psi, &metric, 1.0, t, p, Normalization::Stripped)?;
                                let b = current_of_field(&moved, &metric, 1.0, t, p, Normalization::Stripped)?;
                                worst = worst.max(a.max_diff(&b));
                            }
                        }
                    }
                }
                Ok(worst)
            }));
            out.push(measure(format!("charge_integral k={k}"), tol, Bound::Max, || {
                let mut worst = 0f64;
                for (j, m) in states(cfg, k, 1) {
                    let mode = if !k.is_zero() && j == j_min(k) {
                        MonopoleMode::new(j, m, k, amplitudes(j, m, k, None))?
                    } else {
                        MonopoleMode::with_parity(j, m, k, C::new(0.6, 0.2), C::new(-0.3, 0.7), 1)?
                    };
                    let amp: f64 = mode.f.iter().map(|x| x.norm_sqr()).sum();
                    let want = 4.0 * PI / (2.0 * j.to_f64() + 1.0) * amp;
                    let q = total_charge(&mode, &metric, 1.0, grid)?;
                    worst = worst.max((q - want).abs() / want);
                }
                Ok(worst)
            }));
            out
        }));
    }
    jobs.push(Box::new(move || {
        let metric = MetricProfile::<f64>::flat();
        vec![measure("jphi_control j=3/2 m=1/2 k=1".into(), 1e-3, Bound::Min, || {
            let mode = MonopoleMode::with_parity(hi(3), hi(1), hi(2), C::new(0.6, 0.2), C::new(-0.3, 0.7), 1)?;
            let mut best = 0f64;
            for &t in grid.theta() {
                best = best.max(current_of_mode(&mode, &metric, 1.0, t, Normalization::Stripped)?.jphi.abs());
            }
            Ok(best)
        })]
    }));
    jobs
}

/// Runs the jobs on worker threads; results keep the job order.
fn run_jobs(jobs: Vec<Job<'_>>) -> Vec<Check> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    let mut slots: Vec<Option<Vec<Check>>> = (0..jobs.len()).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let done = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = jobs[i]();
                done.lock().unwrap().push((i, r));
            });
        }
    });
    for (i, r) in done.into_inner().unwrap() {
        slots[i] = Some(r);
    }
    slots.into_iter().flatten().flatten().collect()
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.suite == Suite::Jmin && cfg.k.is_some_and(|k| k.is_zero()) {
        return Err(CliError::Config("k = 0 has no j_min state; pick |k| >= 1/2 for the jmin suite".into()));
    }
    if let (Some(k), Some(m)) = (cfg.k, cfg.m) {
        if !(m - j_min(k)).is_integer() {
            return Err(CliError::Config(format!("m = {m} is not compatible with k = {k} (j - m must be an integer)")));
        }
    }
    let grid = SphereGrid::<f64>::new(cfg.grid_theta, cfg.grid_phi).map_err(|e| CliError::Config(e.to_string()))?;
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => vec![Suite::Wigner, Suite::Algebra, Suite::Jmin, Suite::Gauge, Suite::Currents],
        s => vec![s],
    };
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for s in &suites {
        jobs.extend(match s {
            Suite::Wigner => wigner_jobs(cfg, &grid),
            Suite::Algebra => algebra_jobs(cfg, &grid),
            Suite::Jmin => jmin_jobs(cfg, &grid),
            Suite::Gauge => gauge_jobs(cfg, &grid),
            Suite::Currents => currents_jobs(cfg, &grid),
            Suite::All => unreachable!(),
        });
    }
    let checks = run_jobs(jobs);
    let mut p = vec![
        ("suite", json!(cfg.suite.name())),
        ("grid_theta", json!(cfg.grid_theta)),
        ("grid_phi", json!(cfg.grid_phi)),
        ("tol", json!(cfg.tol)),
        ("seed", json!(cfg.seed)),
        ("eps", json!(cfg.eps)),
        ("mass", json!(cfg.mass)),
    ];
    if let Some(k) = cfg.k {
        p.push(("k", json!(k.to_string())));
    }
    if let Some(m) = cfg.m {
        p.push(("m", json!(m.to_string())));
    }
    let mut report = Report::new("verify", params(p), Table::new(&["check", "residual", "tolerance", "bound", "pass"]));
    for c in &checks {
        let bound = match c.bound {
            Bound::Max => "max",
            Bound::Min => "min",
        };
        report.table.rows.push(vec![c.name.clone(), sci(c.residual), sci(c.tolerance), bound.into(), c.pass.to_string()]);
        report.residuals.insert(c.name.clone(), c.residual);
        report.results.push(serde_json::to_value(c).expect("check serializes"));
    }
    report.pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
    Ok(report)
}
