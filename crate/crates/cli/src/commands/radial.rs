//! Radial amplitudes: the `j_min` closed form, or an RK4 solve of the reduced pair.

use monopole_core::error::Error;
use monopole_core::ops::nu;
use monopole_core::pauli::j_min;
use monopole_core::radial::{
    convergence_order, jmin_first_order_residual, jmin_solve, jmin_solve_with_kappa, reduced_rhs, rk4, JminBranch, State2,
};
use monopole_core::HalfInt;
use num_complex::Complex;
use serde_json::json;

use super::params;
use crate::report::{sci, Report, Table};
use crate::{CliError, RunConfig};

/// Largest RK4 step; near the origin it is also capped at a fraction of `r / nu`.
const MAX_STEP: f64 = 2e-3;
/// Where the regular series start is placed when the table begins further out.
const R_START: f64 = 1e-2;

/// Exponent regime of `f = exp(kappa r)` at `j_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Decaying,
    Degenerate,
    Oscillatory,
}

impl Regime {
    pub fn of(eps: f64, mass: f64) -> Self {
        let disc = mass * mass - eps * eps;
        if disc.abs() <= 1e-14 * mass * mass {
            Regime::Degenerate
        } else if disc > 0.0 {
            Regime::Decaying
        } else {
            Regime::Oscillatory
        }
    }

    fn name(self) -> &'static str {
        match self {
            Regime::Decaying => "decaying",
            Regime::Degenerate => "degenerate",
            Regime::Oscillatory => "oscillatory",
        }
    }
}

fn core_err(e: Error) -> CliError {
    CliError::Config(e.to_string())
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let k = cfg.k.unwrap_or(HalfInt::HALF);
    let jm = j_min(k);
    let j = cfg.j.unwrap_or(jm);
    if j < jm {
        return Err(core_err(Error::BelowJmin { j, j_min: jm, k }));
    }
    if !(j - jm).is_integer() {
        return Err(CliError::Config(format!("j = {j} is not in the ladder j_min + n with j_min = {jm} for k = {k}")));
    }
    let rs: Vec<f64> = (1..=cfg.n).map(|i| cfg.r_max * i as f64 / cfg.n as f64).collect();
    if !k.is_zero() && j == jm {
        closed_form(cfg, k, j, &rs)
    } else {
        reduced(cfg, k, j, &rs)
    }
}

fn closed_form(cfg: &RunConfig, k: HalfInt, j: HalfInt, rs: &[f64]) -> Result<Report, CliError> {
    let regime = Regime::of(cfg.eps, cfg.mass);
    let sol = match regime {
        Regime::Decaying => jmin_solve(k, cfg.eps, cfg.mass, rs, JminBranch::Decaying),
        _ => jmin_solve_with_kappa(k, cfg.eps, cfg.mass, rs, 1),
    }
    .map_err(core_err)?;
    if regime == Regime::Degenerate {
        eprintln!("note: eps = m, the exponent vanishes and f is constant");
    }
    let (primary, partner) = if k.is_negative() { ("f4", "f2") } else { ("f1", "f3") };
    let mut report = Report::new(
        "radial",
        params(vec![
            ("k", json!(k.to_string())),
            ("j", json!(j.to_string())),
            ("eps", json!(cfg.eps)),
            ("mass", json!(cfg.mass)),
            ("r_max", json!(cfg.r_max)),
            ("n", json!(cfg.n)),
            ("system", json!("j_min closed form")),
            ("regime", json!(regime.name())),
            ("degenerate", json!(regime == Regime::Degenerate)),
            ("kappa_re", json!(sol.kappa.re)),
            ("kappa_im", json!(sol.kappa.im)),
            ("components", json!([primary, partner])),
        ]),
        Table::new(&["r", "closed_form_re", "closed_form_im", "partner_re", "partner_im", "residual", "regime"]),
    );
    let mut worst = 0f64;
    for &r in rs {
        let [p, q] = sol.pair(r);
        let res = jmin_first_order_residual(&sol, &[r]);
        worst = worst.max(res);
        report.table.rows.push(vec![sci(r), sci(p.re), sci(p.im), sci(q.re), sci(q.im), sci(res), regime.name().into()]);
        report.results.push(json!({
            "r": r,
            "closed_form": [p.re, p.im],
            "partner": [q.re, q.im],
            "residual": res,
        }));
    }
    report.residuals.insert("first_order_max".into(), worst);
    report.pass = worst <= cfg.tol;
    Ok(report)
}

/// Regular start `g = r^nu`, `f = -(eps + delta m) r^{nu+1} / (2 nu + 1)`.
fn series_start(nu_v: f64, delta: i8, eps: f64, mass: f64, r0: f64) -> State2<f64> {
    let g = r0.powf(nu_v);
    let f = -(eps + delta as f64 * mass) * r0 * g / (2.0 * nu_v + 1.0);
    [Complex::new(f, 0.0), Complex::new(g, 0.0)]
}

/// RK4 through consecutive sample radii, with the step refined by `refine`.
fn march<F>(rhs: F, nu_v: f64, r_start: f64, rs: &[f64], y0: State2<f64>, refine: usize) -> Result<Vec<State2<f64>>, CliError>
where
    F: Fn(f64, &State2<f64>) -> monopole_core::Result<State2<f64>>,
{
    let mut out = Vec::with_capacity(rs.len());
    let (mut r, mut y) = (r_start, y0);
    for &target in rs {
        // geometric sub-segments keep h / r small close to the origin
        while target > r {
            let next = target.min(2.0 * r);
            let h = MAX_STEP.min(0.01 * r / nu_v.max(1.0));
            let steps = ((next - r) / h).ceil() as usize * refine;
            y = *rk4(&rhs, r, next, steps.max(1), y).map_err(core_err)?.1.last().unwrap();
            r = next;
        }
        out.push(y);
    }
    Ok(out)
}

fn reduced(cfg: &RunConfig, k: HalfInt, j: HalfInt, rs: &[f64]) -> Result<Report, CliError> {
    let nu_v = nu::<f64>(j, k);
    let (delta, eps, mass) = (cfg.delta, cfg.eps, cfg.mass);
    let r_start = rs[0].min(R_START);
    let y0 = series_start(nu_v, delta, eps, mass, r_start);
    let rhs = |r: f64, y: &State2<f64>| reduced_rhs(nu_v, delta, eps, mass, r, y);
    let coarse = march(rhs, nu_v, r_start, rs, y0, 1)?;
    let fine = march(rhs, nu_v, r_start, rs, y0, 2)?;
    let (a, b) = (rs[rs.len() / 2], *rs.last().unwrap());
    let mid = coarse[rs.len() / 2];
    let order = convergence_order(rhs, a, b, 16, mid).map_err(core_err)?;
    let free = k.is_zero();
    let mut report = Report::new(
        "radial",
        params(vec![
            ("k", json!(k.to_string())),
            ("j", json!(j.to_string())),
            ("eps", json!(eps)),
            ("mass", json!(mass)),
            ("delta", json!(delta)),
            ("r_max", json!(cfg.r_max)),
            ("n", json!(cfg.n)),
            ("r_start", json!(r_start)),
            ("nu", json!(nu_v)),
            ("system", json!(if free { "free electron" } else { "reduced pair" })),
            ("free", json!(free)),
        ]),
        Table::new(&["r", "f_re", "f_im", "g_re", "g_im", "residual"]),
    );
    let mut worst = 0f64;
    for (i, &r) in rs.iter().enumerate() {
        let (a, b) = (coarse[i], fine[i]);
        let scale = a[0].norm().max(a[1].norm()).max(1.0);
        let res = ((a[0] - b[0]).norm().max((a[1] - b[1]).norm())) / scale;
        worst = worst.max(res);
        report.table.rows.push(vec![sci(r), sci(a[0].re), sci(a[0].im), sci(a[1].re), sci(a[1].im), sci(res)]);
        report.results.push(json!({
            "r": r,
            "f": [a[0].re, a[0].im],
            "g": [a[1].re, a[1].im],
            "residual": res,
        }));
    }
    report.residuals.insert("step_halving_max".into(), worst);
    report.residuals.insert("rk4_order".into(), order);
    report.pass = worst <= cfg.tol;
    Ok(report)
}
