//! Turaev-Viro invariant of the figure-eight knot complement through the
//! squared-Jones sum, with the window decomposition over the limiting ratio
//! s = M/(N + 1/2).

use crate::error::{Error, Result};
use crate::jones::{colored_jones_exact, fig8_volume, jones_min_bits, RootSpec};
use crate::logcx::{log_sum_exp, LogComplex};
use crate::prec::PrecisionContext;
use rug::Float;

/// eta'_r = 2 sin(2 pi / r) / sqrt(r) for odd r >= 3.
pub fn eta_prime(r: u64, ctx: &PrecisionContext) -> Result<Float> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::Domain(format!("need odd r >= 3, got {r}")));
    }
    let rf = ctx.float(r);
    let s = Float::with_val(ctx.bits(), ctx.two_pi() / &rf).sin();
    Ok(s * 2u32 / rf.sqrt())
}

/// Window labels of the M-partition by s = M/(N + 1/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Window {
    SNearOne,
    SNearHalf,
    Bulk,
}

/// Per-window log-domain sums; each is (eta'_r)^2 times the partial sum of
/// |J_M|^2 over its window.
#[derive(Clone, Debug)]
pub struct WindowSums {
    pub s_near_one: LogComplex,
    pub s_near_half: LogComplex,
    pub bulk: LogComplex,
}

impl WindowSums {
    pub fn get(&self, w: Window) -> &LogComplex {
        match w {
            Window::SNearOne => &self.s_near_one,
            Window::SNearHalf => &self.s_near_half,
            Window::Bulk => &self.bulk,
        }
    }
}

/// TV_r with its window decomposition and growth rate (2 pi / r) log TV_r.
#[derive(Clone, Debug)]
pub struct TvResult {
    pub r: u64,
    pub value: LogComplex,
    pub window_sums: WindowSums,
    pub growth_rate: Float,
}

/// Per-color contributions: log |J_M|^2 for M = 1..=N in index order.
/// Exposed so callers can parallelize the M-scan; results are reduced in
/// fixed index order regardless of how the entries were produced.
pub fn squared_jones_logs(n: u32, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let mut logs = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let spec = RootSpec::half_odd(m, n)?;
        let j = colored_jones_exact(&spec, ctx)?;
        logs.push(j.log_form.log_mag().clone() * 2u32);
    }
    Ok(logs)
}

/// TV_r(S^3 \ 4_1, e^{2 pi i / r}) = (eta'_r)^2 sum_{M=1}^{N} |J_M|^2 with
/// r = 2N + 1, partitioned into the windows s in (1 - zeta, 1],
/// s in (1/2 - delta, 1/2 + delta), and the bulk.
pub fn tv_invariant(r: u64, zeta: f64, delta: f64, ctx: &PrecisionContext) -> Result<TvResult> {
    if r < 5 || r.is_multiple_of(2) {
        return Err(Error::Domain(format!("need odd r >= 5, got {r}")));
    }
    if !(delta > 0.0 && delta < 0.25) {
        return Err(Error::Domain(format!("delta = {delta} not in (0, 1/4)")));
    }
    if !(zeta > 0.0 && zeta < 0.5) {
        return Err(Error::Domain(format!("zeta = {zeta} not in (0, 1/2)")));
    }
    if 0.5 + delta >= 1.0 - zeta {
        return Err(Error::Domain(
            "windows overlap: need 1/2 + delta < 1 - zeta".into(),
        ));
    }
    let n = ((r - 1) / 2) as u32;
    let work = ctx.with_bits(ctx.bits().max(jones_min_bits(n)));
    let p = work.bits();

    let logs = squared_jones_logs(n, &work)?;
    tv_from_logs(r, n, &logs, zeta, delta, p, ctx)
}

/// Assemble a TvResult from precomputed log |J_M|^2 values (index M-1).
pub fn tv_from_logs(
    r: u64,
    n: u32,
    logs: &[Float],
    zeta: f64,
    delta: f64,
    work_bits: u32,
    ctx: &PrecisionContext,
) -> Result<TvResult> {
    let p = work_bits;
    let half_n = n as f64 + 0.5;
    let mut one_w: Vec<Float> = Vec::new();
    let mut half_w: Vec<Float> = Vec::new();
    let mut bulk_w: Vec<Float> = Vec::new();
    for (idx, lg) in logs.iter().enumerate() {
        let m = idx as u32 + 1;
        let s = m as f64 / half_n;
        if s > 1.0 - zeta {
            one_w.push(lg.clone());
        } else if (s - 0.5).abs() < delta {
            half_w.push(lg.clone());
        } else {
            bulk_w.push(lg.clone());
        }
    }
    let eta = eta_prime(r, &ctx.with_bits(p))?;
    let log_eta2 = eta.ln() * 2u32;

    let sum_one = log_sum_exp(&one_w, p) + &log_eta2;
    let sum_half = log_sum_exp(&half_w, p) + &log_eta2;
    let sum_bulk = log_sum_exp(&bulk_w, p) + &log_eta2;
    let total = log_sum_exp(logs, p) + &log_eta2;

    let out_bits = ctx.bits();
    let growth = Float::with_val(out_bits, &total) * ctx.two_pi() / ctx.float(r);
    let zero = Float::new(out_bits);
    Ok(TvResult {
        r,
        value: LogComplex::new(Float::with_val(out_bits, &total), zero.clone()),
        window_sums: WindowSums {
            s_near_one: LogComplex::new(Float::with_val(out_bits, &sum_one), zero.clone()),
            s_near_half: LogComplex::new(Float::with_val(out_bits, &sum_half), zero.clone()),
            bulk: LogComplex::new(Float::with_val(out_bits, &sum_bulk), zero),
        },
        growth_rate: growth,
    })
}

/// One row of a growth-rate table.
#[derive(Clone, Debug)]
pub struct TvGrowthRow {
    pub r: u64,
    pub log_tv: Float,
    pub growth_rate: Float,
    pub deviation_from_vol: Float,
}

/// Tabulates TV_r and (2 pi / r) log TV_r against the hyperbolic volume.
pub fn tv_growth_table(
    r_list: &[u64],
    zeta: f64,
    delta: f64,
    ctx: &PrecisionContext,
) -> Result<Vec<TvGrowthRow>> {
    let vol = fig8_volume(ctx);
    let mut rows = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let tv = tv_invariant(r, zeta, delta, ctx)?;
        let dev = tv.growth_rate.clone() - &vol;
        rows.push(TvGrowthRow {
            r,
            log_tv: tv.value.log_mag().clone(),
            growth_rate: tv.growth_rate,
            deviation_from_vol: dev,
        });
    }
    Ok(rows)
}
