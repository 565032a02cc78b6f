//! Command implementations producing result tables.

use crate::output::{digits_for_bits, Cell, Table};
use crate::parallel::parallel_map;
use fig8::aef::{
    aef_fixed_a, aef_fixed_a_u0, aef_kashaev, aef_murakami, aef_s_near_1, aef_tv,
    aef_upper_bound_half, AsymptoticEstimate, TheoremTag,
};
use fig8::error::{Error, Result};
use fig8::jones::{colored_jones_exact, RootSpec};
use fig8::potentials::{
    solve_saddle_half, solve_saddle_quadratic, Branch, FamilyKind, SaddleSolution,
};
use fig8::prec::cabs;
use fig8::qdilog::{cr_integral_inv_t_sinh, gamma_for, QuantumDilog};
use fig8::reference::rel_dev;
use fig8::rug::{Complex, Float};
use fig8::verify::{contour_jones, riemann_vs_integral};
use fig8::{fig8_volume, tv_invariant, PrecisionContext};

/// Validated run settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub ctx: PrecisionContext,
    pub zeta: f64,
    pub delta: f64,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(bits: u32, quad_tol: f64, zeta: f64, delta: f64, workers: usize) -> Result<Self> {
        let ctx = PrecisionContext::new(bits, quad_tol)?;
        if !(zeta > 0.0 && zeta < 0.5) || !(delta > 0.0 && delta < 0.25) {
            return Err(Error::Config(format!(
                "window widths out of range: zeta = {zeta}, delta = {delta}"
            )));
        }
        if 0.5 + delta >= 1.0 - zeta {
            return Err(Error::Config(
                "windows overlap: need 1/2 + delta < 1 - zeta".into(),
            ));
        }
        if workers == 0 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        Ok(Self {
            ctx,
            zeta,
            delta,
            workers,
        })
    }

    fn digits(&self) -> usize {
        digits_for_bits(self.ctx.bits())
    }
}

/// Which root-of-unity convention the jones command evaluates at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// q = e^{2 pi i / N} (a = N - M).
    Kashaev,
    /// q = e^{2 pi i / (N + 1/2)} (a = N - M + 1/2).
    Half,
}

pub fn run_jones(
    cfg: &RunConfig,
    m: u32,
    n: Option<u32>,
    root: RootKind,
    a: Option<f64>,
    u: f64,
) -> Result<Table> {
    let spec = match (n, a) {
        (Some(n), None) => match root {
            RootKind::Kashaev => RootSpec::kashaev(m, n)?,
            RootKind::Half => RootSpec::half_odd(m, n)?,
        },
        (None, Some(a)) => RootSpec::new(m, a, u)?,
        (None, None) => RootSpec::kashaev(m, m)?,
        (Some(_), Some(_)) => return Err(Error::Config("pass either --n or --a, not both".into())),
    };
    let ctx = &cfg.ctx;
    let j = colored_jones_exact(&spec, ctx)?;
    let ord = spec.order(ctx);
    let growth = j.log_form.log_mag().clone() * ctx.two_pi() / &ord;
    let table = Table {
        command: "jones".into(),
        columns: vec![
            "m".into(),
            "a".into(),
            "u".into(),
            "re".into(),
            "im".into(),
            "abs".into(),
            "log_abs".into(),
            "arg".into(),
            "growth_rate".into(),
            "terms".into(),
        ],
        rows: vec![vec![
            Cell::Int(m as i64),
            Cell::Real(ctx.float(spec.a())),
            Cell::Real(ctx.float(spec.u())),
            Cell::Real(Float::with_val(ctx.bits(), j.value.real())),
            Cell::Real(Float::with_val(ctx.bits(), j.value.imag())),
            Cell::Real(cabs(&j.value)),
            Cell::Real(j.log_form.log_mag().clone()),
            Cell::Real(j.log_form.arg().clone()),
            Cell::Real(growth),
            Cell::Int(j.term_count as i64),
        ]],
        digits: cfg.digits(),
    };
    Ok(table)
}

pub fn run_tv(cfg: &RunConfig, r_list: &[u64]) -> Result<Table> {
    let ctx = &cfg.ctx;
    let vol = fig8_volume(ctx);
    let results = parallel_map(r_list, cfg.workers, |&r| {
        tv_invariant(r, cfg.zeta, cfg.delta, ctx)
    })?;
    let rows = results
        .into_iter()
        .map(|tv| {
            vec![
                Cell::Int(tv.r as i64),
                Cell::LogC(tv.value.clone()),
                Cell::Real(tv.growth_rate.clone()),
                Cell::Real(tv.growth_rate.clone() - &vol),
                Cell::Real(tv.window_sums.s_near_one.log_mag().clone()),
                Cell::Real(tv.window_sums.s_near_half.log_mag().clone()),
                Cell::Real(tv.window_sums.bulk.log_mag().clone()),
            ]
        })
        .collect();
    Ok(Table {
        command: "tv".into(),
        columns: vec![
            "r".into(),
            "tv".into(),
            "growth_rate".into(),
            "growth_dev_from_vol".into(),
            "log_window_s1".into(),
            "log_window_half".into(),
            "log_bulk".into(),
        ],
        rows,
        digits: cfg.digits(),
    })
}

fn estimate_row(label: String, est: &AsymptoticEstimate, ctx: &PrecisionContext) -> Vec<Cell> {
    vec![
        Cell::Text(label),
        Cell::Real(Float::with_val(ctx.bits(), est.prefactor.real())),
        Cell::Real(Float::with_val(ctx.bits(), est.prefactor.imag())),
        Cell::Real(Float::with_val(ctx.bits(), est.exponent.real())),
        Cell::Real(Float::with_val(ctx.bits(), est.exponent.imag())),
        Cell::LogC(est.value.clone()),
    ]
}

#[allow(clippy::too_many_arguments)]
pub fn run_aef(
    cfg: &RunConfig,
    theorem: &str,
    n: Option<u32>,
    m: Option<u32>,
    a: Option<f64>,
    u: Option<f64>,
    r: Option<u64>,
) -> Result<Table> {
    let ctx = &cfg.ctx;
    let missing = |what: &str| Error::Config(format!("theorem {theorem} needs {what}"));
    let (label, est) = match theorem {
        "cvc2" => {
            let n = n.ok_or_else(|| missing("--n"))?;
            (format!("N={n}"), aef_kashaev(n, ctx)?)
        }
        "asymsu2" => {
            let n = n.ok_or_else(|| missing("--n"))?;
            let u = u.ok_or_else(|| missing("--u"))?;
            (format!("u={u},N={n}"), aef_murakami(u, n, ctx)?)
        }
        "mainthm1" => {
            let m = m.ok_or_else(|| missing("--m"))?;
            let a = a.ok_or_else(|| missing("--a"))?;
            let u = u.ok_or_else(|| missing("--u"))?;
            (format!("u={u},a={a},M={m}"), aef_fixed_a(u, a, m, ctx)?)
        }
        "mainthm1.5" => {
            let m = m.ok_or_else(|| missing("--m"))?;
            let a = a.ok_or_else(|| missing("--a"))?;
            (format!("a={a},M={m}"), aef_fixed_a_u0(a, m, ctx)?)
        }
        "mainthm2" => {
            let m = m.ok_or_else(|| missing("--m"))?;
            let n = n.ok_or_else(|| missing("--n"))?;
            (format!("M={m},N={n}"), aef_s_near_1(m, n, cfg.zeta, ctx)?)
        }
        "mainthm3" => {
            let m = m.ok_or_else(|| missing("--m"))?;
            let n = n.ok_or_else(|| missing("--n"))?;
            (
                format!("M={m},N={n}"),
                aef_upper_bound_half(m, n, cfg.delta, ctx)?,
            )
        }
        "mainthm4" => {
            let r = r.ok_or_else(|| missing("--r"))?;
            (format!("r={r}"), aef_tv(r, ctx)?)
        }
        other => return Err(Error::Config(format!("unknown theorem tag: {other}"))),
    };
    Ok(Table {
        command: "aef".into(),
        columns: vec![
            "label".into(),
            "prefactor_re".into(),
            "prefactor_im".into(),
            "exponent_re".into(),
            "exponent_im".into(),
            "value".into(),
        ],
        rows: vec![estimate_row(label, &est, ctx)],
        digits: cfg.digits(),
    })
}

fn saddle_row(label: String, sol: &SaddleSolution, ctx: &PrecisionContext) -> Vec<Cell> {
    let branch = match sol.branch {
        Branch::MinusRoot => "growth",
        Branch::PlusRoot => "mirror",
        Branch::HalfReal => "real",
    };
    vec![
        Cell::Text(label),
        Cell::Real(Float::with_val(ctx.bits(), sol.z.real())),
        Cell::Real(Float::with_val(ctx.bits(), sol.z.imag())),
        Cell::Real(Float::with_val(ctx.bits(), sol.omega.real())),
        Cell::Real(Float::with_val(ctx.bits(), sol.omega.imag())),
        Cell::Real(Float::with_val(ctx.bits(), sol.potential_value.real())),
        Cell::Real(Float::with_val(ctx.bits(), sol.potential_value.imag())),
        Cell::Real(Float::with_val(ctx.bits(), sol.second_derivative.real())),
        Cell::Real(Float::with_val(ctx.bits(), sol.second_derivative.imag())),
        Cell::Real(sol.residual.clone()),
        Cell::Text(branch.into()),
    ]
}

pub fn run_saddle(
    cfg: &RunConfig,
    family: &str,
    s: Option<f64>,
    m: Option<u32>,
    n: Option<u32>,
    a: Option<f64>,
    u: Option<f64>,
) -> Result<Table> {
    let ctx = &cfg.ctx;
    let missing = |what: &str| Error::Config(format!("family {family} needs {what}"));
    let (label, sol) = match family {
        "limit-s" => {
            let s = s.ok_or_else(|| missing("--s"))?;
            (
                format!("s={s}"),
                solve_saddle_quadratic(FamilyKind::LimitS { s }, ctx)?,
            )
        }
        "s" => {
            let m = m.ok_or_else(|| missing("--m"))?;
            let n = n.ok_or_else(|| missing("--n"))?;
            (
                format!("M={m},N={n}"),
                solve_saddle_quadratic(FamilyKind::SFamily { m, n }, ctx)?,
            )
        }
        "half" => {
            let m = m.ok_or_else(|| missing("--m"))?;
            let n = n.ok_or_else(|| missing("--n"))?;
            (
                format!("M={m},N={n}"),
                solve_saddle_half(FamilyKind::HalfFamily { m, n }, ctx)?,
            )
        }
        "limit-half" => {
            let s = s.ok_or_else(|| missing("--s"))?;
            (
                format!("s={s}"),
                solve_saddle_half(FamilyKind::LimitHalf { s }, ctx)?,
            )
        }
        "fixed-a" => {
            let m = m.ok_or_else(|| missing("--m"))?;
            let a = a.ok_or_else(|| missing("--a"))?;
            let u = u.ok_or_else(|| missing("--u"))?;
            (
                format!("u={u},a={a},M={m}"),
                solve_saddle_quadratic(FamilyKind::FixedA { u, a, m }, ctx)?,
            )
        }
        other => return Err(Error::Config(format!("unknown family: {other}"))),
    };
    Ok(Table {
        command: "saddle".into(),
        columns: vec![
            "label".into(),
            "z_re".into(),
            "z_im".into(),
            "omega_re".into(),
            "omega_im".into(),
            "value_re".into(),
            "value_im".into(),
            "d2_re".into(),
            "d2_im".into(),
            "residual".into(),
            "branch".into(),
        ],
        rows: vec![saddle_row(label, &sol, ctx)],
        digits: cfg.digits(),
    })
}

pub fn run_verify_contour(cfg: &RunConfig, m: u32, a: f64, u: f64) -> Result<Table> {
    let ctx = &cfg.ctx;
    let spec = RootSpec::new(m, a, u)?;
    let exact = colored_jones_exact(&spec, ctx)?;
    let via = contour_jones(&spec, ctx)?;
    let rel = rel_dev(&via, &exact.value);
    Ok(Table {
        command: "verify-contour".into(),
        columns: vec![
            "m".into(),
            "a".into(),
            "u".into(),
            "exact_re".into(),
            "exact_im".into(),
            "contour_re".into(),
            "contour_im".into(),
            "rel_dev".into(),
        ],
        rows: vec![vec![
            Cell::Int(m as i64),
            Cell::Real(ctx.float(a)),
            Cell::Real(ctx.float(u)),
            Cell::Real(Float::with_val(ctx.bits(), exact.value.real())),
            Cell::Real(Float::with_val(ctx.bits(), exact.value.imag())),
            Cell::Real(Float::with_val(ctx.bits(), via.real())),
            Cell::Real(Float::with_val(ctx.bits(), via.imag())),
            Cell::Real(ctx.float(rel)),
        ]],
        digits: cfg.digits(),
    })
}

pub fn run_verify_identities(cfg: &RunConfig) -> Result<Table> {
    let ctx = &cfg.ctx;
    let p = ctx.bits();
    let mut rows = Vec::new();

    // functional equation at a representative point
    let gamma = gamma_for(0.5, 0.0, 10, ctx);
    let qd = QuantumDilog::new(&gamma, ctx)?;
    let res = qd.functional_equation_residual(&ctx.complex(0.3, 0.1))?;
    rows.push(vec![
        Cell::Text("functional_equation_residual".into()),
        Cell::Real(res),
        Cell::Real(ctx.float(0)),
    ]);

    // S(gamma)/S(-gamma) = 1/2
    let g7 = {
        let denom = Float::with_val(p, 7.5f64);
        Complex::with_val(p, (ctx.pi() / denom, Float::new(p)))
    };
    let qd7 = QuantumDilog::new(&g7, ctx)?;
    let half = qd7.ratio(&g7, &Complex::with_val(p, -g7.clone()))?;
    rows.push(vec![
        Cell::Text("ratio_half_dev".into()),
        Cell::Real(cabs(&Complex::with_val(
            p,
            half - Complex::with_val(p, (0.5, 0.0)),
        ))),
        Cell::Real(ctx.float(0)),
    ]);

    // S(-pi+gamma)/S(pi-gamma) = N + 1/2 at N = 5
    let g5 = {
        let denom = Float::with_val(p, 5.5f64);
        Complex::with_val(p, (ctx.pi() / denom, Float::new(p)))
    };
    let qd5 = QuantumDilog::new(&g5, ctx)?;
    let zp = Complex::with_val(p, -fig8::prec::creal(ctx.pi()) + &g5);
    let zm = Complex::with_val(p, fig8::prec::creal(ctx.pi()) - &g5);
    let big = qd5.ratio(&zp, &zm)?;
    rows.push(vec![
        Cell::Text("ratio_n_plus_half_dev".into()),
        Cell::Real(cabs(&Complex::with_val(
            p,
            big - Complex::with_val(p, (5.5, 0.0)),
        ))),
        Cell::Real(ctx.float(0)),
    ]);

    // residue constant
    let c = cr_integral_inv_t_sinh(ctx)?;
    let target = -(ctx.float(2).ln() * 2u32);
    rows.push(vec![
        Cell::Text("residue_integral_dev".into()),
        Cell::Real((Float::with_val(p, c.real()) - target).abs()),
        Cell::Real(ctx.float(0)),
    ]);

    Ok(Table {
        command: "verify-identities".into(),
        columns: vec!["check".into(), "abs_dev".into(), "target".into()],
        rows,
        digits: cfg.digits(),
    })
}

pub fn run_verify_riemann(cfg: &RunConfig, n_list: &[u32]) -> Result<Table> {
    let ctx = &cfg.ctx;
    let f = |x: &Float| -> Result<Complex> {
        let d = x.clone() - Float::with_val(ctx.bits(), 0.4f64);
        Ok(fig8::prec::creal(-(d.clone() * d)))
    };
    let h = |_x: &Float| -> Result<Float> { Ok(ctx.float(1)) };
    let mut rows = Vec::new();
    for &n in n_list {
        let (sum, integral, ratio) = riemann_vs_integral(&f, &h, 0.0, 1.0, n, false, ctx)?;
        rows.push(vec![
            Cell::Int(n as i64),
            Cell::Real(sum),
            Cell::Real(integral),
            Cell::Real(ratio),
        ]);
    }
    Ok(Table {
        command: "verify-riemann".into(),
        columns: vec!["n".into(), "sum".into(), "integral".into(), "ratio".into()],
        rows,
        digits: cfg.digits(),
    })
}

/// Sweep grid parsed from the CLI.
#[derive(Clone, Debug)]
pub enum SweepGrid {
    NList(Vec<u32>),
    RList(Vec<u64>),
    Pairs(Vec<(u32, u32)>),
    FixedA { u: f64, a: f64, m_list: Vec<u32> },
}

pub fn run_sweep(cfg: &RunConfig, theorem: &str, grid: &SweepGrid) -> Result<Table> {
    use fig8::aef::{ratio_sweep, SweepPoint};
    let tag = match theorem {
        "cvc2" => TheoremTag::Cvc2,
        "asymsu2" => TheoremTag::AsymSu2,
        "mainthm1" => TheoremTag::MainThm1,
        "mainthm1.5" => TheoremTag::MainThm1_5,
        "mainthm2" => TheoremTag::MainThm2,
        "mainthm4" => TheoremTag::MainThm4,
        other => return Err(Error::Config(format!("unknown theorem tag: {other}"))),
    };
    let points: Vec<SweepPoint> = match (tag, grid) {
        (TheoremTag::Cvc2, SweepGrid::NList(ns)) => {
            ns.iter().map(|&n| SweepPoint::Kashaev { n }).collect()
        }
        (TheoremTag::MainThm1_5, SweepGrid::FixedA { a, m_list, .. }) => m_list
            .iter()
            .map(|&m| SweepPoint::FixedAZero { a: *a, m })
            .collect(),
        (TheoremTag::MainThm1, SweepGrid::FixedA { u, a, m_list })
        | (TheoremTag::AsymSu2, SweepGrid::FixedA { u, a, m_list }) => m_list
            .iter()
            .map(|&m| SweepPoint::FixedA { u: *u, a: *a, m })
            .collect(),
        (TheoremTag::MainThm2, SweepGrid::Pairs(ps)) => ps
            .iter()
            .map(|&(m, n)| SweepPoint::SNearOne { m, n })
            .collect(),
        (TheoremTag::MainThm4, SweepGrid::RList(rs)) => {
            rs.iter().map(|&r| SweepPoint::Tv { r }).collect()
        }
        _ => {
            return Err(Error::Config(format!(
                "grid does not match theorem {theorem}"
            )))
        }
    };
    let ctx = &cfg.ctx;
    let rows_nested = parallel_map(&points, cfg.workers, |pt| {
        ratio_sweep(tag, std::slice::from_ref(pt), cfg.zeta, cfg.delta, ctx)
    })?;
    let mut rows = Vec::new();
    for chunk in rows_nested {
        for row in chunk {
            rows.push(vec![
                Cell::Text(row.label.clone()),
                Cell::LogC(row.exact.clone()),
                Cell::LogC(row.aef.clone()),
                Cell::Real(row.log_mag_ratio.clone()),
                Cell::Real(row.growth_rate.clone()),
            ]);
        }
    }
    Ok(Table {
        command: "sweep".into(),
        columns: vec![
            "label".into(),
            "exact".into(),
            "aef".into(),
            "log_mag_ratio".into(),
            "growth_rate".into(),
        ],
        rows,
        digits: cfg.digits(),
    })
}
