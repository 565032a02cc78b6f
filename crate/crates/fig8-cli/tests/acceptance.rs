//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N [PASS|FAIL]` line with the measured numbers.
//!
//! Run with `cargo test -p fig8-cli --test acceptance -- --nocapture` to see
//! every line. Three sub-clauses are known to be unattainable as stated and
//! fail honestly with the measured values in the message; see the test
//! bodies for what the exact computations actually show.

use fig8::aef::{aef_kashaev, aef_tv};
use fig8::jones::{colored_jones_exact, g_maximizer, growth_rate_bound, RootSpec};
use fig8::potentials::{
    psi_s, solve_saddle_half, solve_saddle_quadratic, theta_s, upsilon_s, xi_s, FamilyKind,
    Potential,
};
use fig8::prec::{cabs, creal};
use fig8::qdilog::{cr_integral_inv_t_sinh, QuantumDilog};
use fig8::reference::rel_dev;
use fig8::rug::{Complex, Float};
use fig8::verify::{contour_jones, window_dominance_report};
use fig8::{clausen, fig8_volume, lobachevsky, tv_invariant, PrecisionContext};
use std::time::Instant;

struct Clause {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn report(criterion: u32, title: &str, clauses: &[Clause]) {
    let all = clauses.iter().all(|c| c.pass);
    let status = if all { "PASS" } else { "FAIL" };
    println!("criterion {criterion} [{status}]: {title}");
    for c in clauses {
        let mark = if c.pass { "ok " } else { "FAIL" };
        println!("  [{mark}] {} - {}", c.name, c.detail);
    }
    assert!(
        all,
        "criterion {criterion} has failing clauses: {:?}",
        clauses
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect::<Vec<_>>()
    );
}

fn ctx256() -> PrecisionContext {
    PrecisionContext::new(256, 1e-30).unwrap()
}

#[test]
fn criterion_1_kashaev_volume_convergence() {
    let ctx = ctx256();
    let t0 = Instant::now();
    let vol = fig8_volume(&ctx);
    let mut values = Vec::new();
    for n in [50u32, 100, 200] {
        let j = colored_jones_exact(&RootSpec::kashaev(n, n).unwrap(), &ctx).unwrap();
        values.push((j.log_form.log_mag().clone() * ctx.two_pi() / ctx.float(n)).to_f64());
    }
    let elapsed = t0.elapsed();
    let volf = vol.to_f64();
    let increasing = values[0] < values[1] && values[1] < values[2];
    let within8 = (values[2] - volf).abs() <= 0.08 * volf;
    let devs: Vec<f64> = values.iter().map(|v| (v - volf).abs()).collect();
    let converging = devs[0] > devs[1] && devs[1] > devs[2];
    report(
        1,
        "Kashaev growth rate (2 pi/N) log J_N toward Vol",
        &[
            Clause {
                name: "strictly increasing toward Vol",
                pass: increasing,
                detail: format!(
                    "values = {values:?} (the exact sequence decreases toward Vol from above)"
                ),
            },
            Clause {
                name: "N=200 within 8% of Vol",
                pass: within8,
                detail: format!(
                    "dev = {:.2}% (the N^(3/2) prefactor contributes ~11.9% at N=200)",
                    (values[2] / volf - 1.0) * 100.0
                ),
            },
            Clause {
                name: "deviation |value - Vol| strictly decreasing (observed trend)",
                pass: converging,
                detail: format!("devs = {devs:?}"),
            },
            Clause {
                name: "runtime < 2 s",
                pass: elapsed.as_secs_f64() < 2.0,
                detail: format!("{elapsed:?}"),
            },
        ],
    );
}

#[test]
fn criterion_2_kashaev_aef_ratio() {
    let ctx = ctx256();
    let t0 = Instant::now();
    let mut devs = Vec::new();
    for n in [50u32, 200] {
        let j = colored_jones_exact(&RootSpec::kashaev(n, n).unwrap(), &ctx).unwrap();
        let est = aef_kashaev(n, &ctx).unwrap();
        let ratio = j.log_form.div(&est.value).to_complex();
        let dev = cabs(&Complex::with_val(
            256,
            ratio - Complex::with_val(256, (1, 0)),
        ))
        .to_f64();
        devs.push(dev);
    }
    let elapsed = t0.elapsed();
    report(
        2,
        "Kashaev-point expansion ratio",
        &[
            Clause {
                name: "|J_200/AEF - 1| < 0.1",
                pass: devs[1] < 0.1,
                detail: format!("dev = {:.4e}", devs[1]),
            },
            Clause {
                name: "smaller than at N=50",
                pass: devs[1] < devs[0],
                detail: format!("N=50: {:.4e}, N=200: {:.4e}", devs[0], devs[1]),
            },
            Clause {
                name: "runtime < 2 s",
                pass: elapsed.as_secs_f64() < 2.0,
                detail: format!("{elapsed:?}"),
            },
        ],
    );
}

#[test]
fn criterion_3_tv_exact_vs_aef() {
    let ctx = ctx256();
    let t0 = Instant::now();
    let vol = fig8_volume(&ctx).to_f64();
    let mut log_ratios = Vec::new();
    let mut growth_401 = 0.0;
    for r in [101u64, 201, 401] {
        let tv = tv_invariant(r, 0.05, 0.05, &ctx).unwrap();
        let est = aef_tv(r, &ctx).unwrap();
        log_ratios.push((tv.value.log_mag().clone() - est.value.log_mag()).to_f64());
        if r == 401 {
            growth_401 = tv.growth_rate.to_f64();
        }
    }
    let elapsed = t0.elapsed();
    let abs: Vec<f64> = log_ratios.iter().map(|x| x.abs()).collect();
    let decreasing = abs[0] > abs[1] && abs[1] > abs[2];
    let within5 = (growth_401 / vol - 1.0).abs() < 0.05;
    report(
        3,
        "Turaev-Viro exact vs stated expansion",
        &[
            Clause {
                name: "|log(TV/AEF)| strictly decreasing over r = 101, 201, 401",
                pass: decreasing,
                detail: format!(
                    "log-ratios = {log_ratios:?} (the stated constant is off by sqrt((N+1/2)/(2 sqrt 3)), so the gap grows)"
                ),
            },
            Clause {
                name: "(2 pi/r) log TV at r=401 within 5% of Vol",
                pass: within5,
                detail: format!("dev = {:+.2}%", (growth_401 / vol - 1.0) * 100.0),
            },
            Clause {
                name: "runtime < 60 s",
                pass: elapsed.as_secs_f64() < 60.0,
                detail: format!("{elapsed:?}"),
            },
        ],
    );
}

#[test]
fn criterion_4_contour_oracle_matrix() {
    let combos: Vec<(u32, f64, f64)> = {
        let mut v = Vec::new();
        for &m in &[3u32, 5, 8] {
            for &a in &[0.5f64, 1.5] {
                for &u in &[0.0f64, 0.3] {
                    v.push((m, a, u));
                }
            }
        }
        v
    };
    let results: Vec<(String, f64)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in combos.chunks(combos.len().div_ceil(2)) {
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for &(m, a, u) in chunk {
                    let ctx = PrecisionContext::new(96, 1e-8).unwrap();
                    let spec = RootSpec::new(m, a, u).unwrap();
                    let exact = colored_jones_exact(&spec, &ctx).unwrap();
                    let via = contour_jones(&spec, &ctx).unwrap();
                    out.push((format!("({m},{a},{u})"), rel_dev(&via, &exact.value)));
                }
                out
            }));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    });
    let clauses: Vec<Clause> = results
        .iter()
        .map(|(label, rel)| Clause {
            name: "contour vs exact <= 1e-5",
            pass: *rel <= 1e-5,
            detail: format!("{label}: rel = {rel:.2e}"),
        })
        .collect();
    report(4, "contour-integral representation matrix", &clauses);
}

#[test]
fn criterion_5_quantum_dilog_identities() {
    let ctx = PrecisionContext::new(160, 1e-14).unwrap();
    let p = ctx.bits();

    // functional equation on a 10 x 10 grid
    let mut worst_feq = 0f64;
    for j in 0..10u32 {
        let n = 5 + 3 * j;
        let gamma = Complex::with_val(
            p,
            (ctx.pi() / Float::with_val(p, n as f64 + 0.5), Float::new(p)),
        );
        let qd = QuantumDilog::new(&gamma, &ctx).unwrap();
        for i in 0..10 {
            let re = -2.2 + 4.4 * i as f64 / 9.0;
            let im = if i % 2 == 0 { 0.25 } else { -0.35 };
            let res = qd
                .functional_equation_residual(&ctx.complex(re, im))
                .unwrap()
                .to_f64();
            worst_feq = worst_feq.max(res);
        }
    }

    // S(gamma)/S(-gamma) = 1/2
    let g7 = Complex::with_val(p, (ctx.pi() / Float::with_val(p, 7.5f64), Float::new(p)));
    let qd7 = QuantumDilog::new(&g7, &ctx).unwrap();
    let half_dev = cabs(&Complex::with_val(
        p,
        qd7.ratio(&g7, &Complex::with_val(p, -g7.clone())).unwrap()
            - Complex::with_val(p, (0.5, 0.0)),
    ))
    .to_f64();

    // S(-pi+gamma)/S(pi-gamma) = N + 1/2 for N in {5, 10, 20}
    let mut worst_sr1 = 0f64;
    for n in [5u32, 10, 20] {
        let g = Complex::with_val(
            p,
            (ctx.pi() / Float::with_val(p, n as f64 + 0.5), Float::new(p)),
        );
        let qd = QuantumDilog::new(&g, &ctx).unwrap();
        let zp = Complex::with_val(p, -creal(ctx.pi()) + &g);
        let zm = Complex::with_val(p, creal(ctx.pi()) - &g);
        let r = qd.ratio(&zp, &zm).unwrap();
        let expect = ctx.float(n as f64 + 0.5);
        let rel = (cabs(&Complex::with_val(p, r - creal(expect.clone()))) / expect).to_f64();
        worst_sr1 = worst_sr1.max(rel);
    }

    // residue integral
    let c = cr_integral_inv_t_sinh(&ctx).unwrap();
    let target = -(ctx.float(2).ln() * 2u32);
    let res_dev = (Float::with_val(p, c.real()) - target).abs().to_f64()
        + Float::with_val(p, c.imag()).abs().to_f64();

    report(
        5,
        "quantum dilogarithm identity suite",
        &[
            Clause {
                name: "functional-equation residual < 1e-10 on 10x10 grid",
                pass: worst_feq < 1e-10,
                detail: format!("worst = {worst_feq:.2e}"),
            },
            Clause {
                name: "S(gamma)/S(-gamma) = 1/2 to 1e-8",
                pass: half_dev < 1e-8,
                detail: format!("dev = {half_dev:.2e}"),
            },
            Clause {
                name: "S(-pi+gamma)/S(pi-gamma) = N+1/2 to rel 1e-6, N in {5,10,20}",
                pass: worst_sr1 < 1e-6,
                detail: format!("worst rel = {worst_sr1:.2e}"),
            },
            Clause {
                name: "contour integral of 1/(t sinh pi t) = -2 ln 2 to 1e-8",
                pass: res_dev < 1e-8,
                detail: format!("dev = {res_dev:.2e}"),
            },
        ],
    );
}

#[test]
fn criterion_6_saddle_potential_constants() {
    let ctx = ctx256();
    let p = 256;
    let vol = fig8_volume(&ctx);
    let vol_2pi = creal(vol.clone() / ctx.two_pi());
    let two_pi_sqrt3 = ctx.two_pi() * ctx.float(3).sqrt();

    let mut clauses = Vec::new();
    let mut abs_check = |name: &'static str, got: Complex, expect: Complex, tol: f64| {
        let dev = cabs(&Complex::with_val(p, got - expect)).to_f64();
        clauses.push(Clause {
            name,
            pass: dev < tol,
            detail: format!("abs dev = {dev:.2e}"),
        });
    };

    let s_fam = Potential::new(FamilyKind::LimitS { s: 1.0 }).unwrap();
    let five_sixth = creal(ctx.float(5) / 6u32);
    abs_check(
        "limit potential at 5/6 = Vol/2pi",
        s_fam.value(&five_sixth, &ctx).unwrap(),
        vol_2pi.clone(),
        1e-10,
    );
    abs_check(
        "Xi(1) = 2 pi sqrt 3",
        xi_s(1.0, &ctx).unwrap(),
        creal(two_pi_sqrt3.clone()),
        1e-10,
    );
    let half_fam = Potential::new(FamilyKind::LimitHalf { s: 0.5 }).unwrap();
    let third = creal(ctx.float(1) / 3u32);
    abs_check(
        "window potential at 1/3 = Vol/2pi",
        half_fam.value(&third, &ctx).unwrap(),
        vol_2pi.clone(),
        1e-10,
    );
    abs_check(
        "Psi(1/2) = Vol/2pi",
        creal(psi_s(0.5, &ctx).unwrap()),
        vol_2pi,
        1e-10,
    );
    abs_check(
        "Upsilon(1/2) = 2 pi sqrt 3",
        upsilon_s(0.5, &ctx).unwrap(),
        creal(two_pi_sqrt3.clone()),
        1e-10,
    );

    // Theta derivatives by central differences, step 1e-4
    let h = 1e-4;
    let tp = theta_s(1.0 + h, &ctx).unwrap();
    let t0 = theta_s(1.0, &ctx).unwrap();
    let tm = theta_s(1.0 - h, &ctx).unwrap();
    let d1 = Complex::with_val(p, &tp - &tm) / creal(ctx.float(2.0 * h));
    let d2 = (Complex::with_val(p, &tp + &tm) - Complex::with_val(p, &t0 * &creal(ctx.float(2))))
        / creal(ctx.float(h * h));
    let re_d1 = Float::with_val(p, d1.real()).to_f64().abs();
    clauses.push(Clause {
        name: "Re Theta'(1) = 0 to 1e-6",
        pass: re_d1 < 1e-6,
        detail: format!("|Re Theta'(1)| = {re_d1:.2e}"),
    });
    let d2_dev = (Float::with_val(p, d2.real()).abs() - two_pi_sqrt3)
        .abs()
        .to_f64();
    clauses.push(Clause {
        name: "|Re Theta''(1)| = 2 sqrt3 pi to 1e-5",
        pass: d2_dev < 1e-5,
        detail: format!("abs dev = {d2_dev:.2e}"),
    });

    // saddle residuals
    let saddles = [
        solve_saddle_quadratic(FamilyKind::LimitS { s: 1.0 }, &ctx).unwrap(),
        solve_saddle_quadratic(FamilyKind::LimitS { s: 0.97 }, &ctx).unwrap(),
        solve_saddle_quadratic(FamilyKind::SFamily { m: 190, n: 199 }, &ctx).unwrap(),
        solve_saddle_quadratic(
            FamilyKind::FixedA {
                u: 0.3,
                a: 0.5,
                m: 75,
            },
            &ctx,
        )
        .unwrap(),
        solve_saddle_half(FamilyKind::HalfFamily { m: 100, n: 199 }, &ctx).unwrap(),
        solve_saddle_half(FamilyKind::LimitHalf { s: 0.5 }, &ctx).unwrap(),
    ];
    let worst_res = saddles
        .iter()
        .map(|s| s.residual.to_f64())
        .fold(0.0, f64::max);
    clauses.push(Clause {
        name: "all saddle residuals < 1e-12",
        pass: worst_res < 1e-12,
        detail: format!("worst = {worst_res:.2e}"),
    });

    report(6, "saddle and potential constants", &clauses);
}

#[test]
fn criterion_7_term_maximizer() {
    let ctx = ctx256();
    let vol = fig8_volume(&ctx);
    let target = vol / (ctx.two_pi() * 2u32);

    let (k1, _) = g_maximizer(&RootSpec::half_odd(200, 200).unwrap(), &ctx).unwrap();
    let dev1 = (k1 as f64 / 401.0 - 5.0 / 12.0).abs();
    let (k2, _) = g_maximizer(&RootSpec::half_odd(100, 200).unwrap(), &ctx).unwrap();
    let dev2 = (k2 as f64 / 401.0 - 1.0 / 6.0).abs();

    let b1 = (growth_rate_bound(0.5, 5.0 / 12.0, &ctx).unwrap() - &target)
        .abs()
        .to_f64();
    let b2 = (growth_rate_bound(0.25, 1.0 / 6.0, &ctx).unwrap() - &target)
        .abs()
        .to_f64();

    report(
        7,
        "term-magnitude maximizer and Lobachevsky bound",
        &[
            Clause {
                name: "(M,N) = (200,200): k/(2N+1) within 0.01 of 5/12",
                pass: dev1 < 0.01,
                detail: format!("k = {k1}, dev = {dev1:.4}"),
            },
            Clause {
                name: "(M,N) = (100,200): k/(2N+1) within 0.01 of 1/6",
                pass: dev2 < 0.01,
                detail: format!("k = {k2}, dev = {dev2:.4}"),
            },
            Clause {
                name: "bound at the equality points = Vol/(4 pi) to 1e-10",
                pass: b1 < 1e-10 && b2 < 1e-10,
                detail: format!("devs = {b1:.2e}, {b2:.2e}"),
            },
        ],
    );
}

#[test]
fn criterion_8_window_dominance() {
    let ctx = ctx256();
    let rep = window_dominance_report(201, 0.05, 0.05, &ctx).unwrap();
    let one = rep.sum_one_log.to_f64();
    let half = rep.sum_half_log.to_f64();
    let bulk = rep.bulk_log.to_f64();
    let emp = rep.empirical_ratio_log.to_f64();
    let four_nsq = rep.four_n_sq_log.to_f64();
    let within3 = (emp - four_nsq).abs() <= 3f64.ln();
    report(
        8,
        "window dominance at r = 201",
        &[
            Clause {
                name: "s~1 window exceeds s~1/2 window",
                pass: one > half,
                detail: format!("log sums: {one:.2} vs {half:.2}"),
            },
            Clause {
                name: "bulk smaller than both windows",
                pass: bulk < one && bulk < half,
                detail: format!(
                    "log bulk = {bulk:.2} (the exact s~1/2 window sum cancels to polynomial size, so the bulk dwarfs it)"
                ),
            },
            Clause {
                name: "empirical window ratio within x3 of 4(N+1/2)^2",
                pass: within3,
                detail: format!(
                    "ln ratio = {emp:.2} vs ln 4(N+1/2)^2 = {four_nsq:.2} (the envelope-based prediction does not describe the cancelled exact sums)"
                ),
            },
        ],
    );
}

#[test]
fn criterion_9_property_suite() {
    let ctx = ctx256();
    let p = 256;
    let mut clauses = Vec::new();

    // dilog derivative against finite differences at 20 points
    let mut seed = 0x7a11_5eedu64;
    let mut rnd = || {
        seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (seed >> 11) as f64 / (1u64 << 53) as f64
    };
    let h = ctx.float(1e-26);
    let mut worst_fd = 0f64;
    let mut count = 0;
    while count < 20 {
        let re = 2.0 * rnd() - 1.0;
        let im = 0.4 + 1.8 * rnd();
        let mu = ctx.complex(re, im);
        let up = Complex::with_val(p, &mu + &creal(h.clone())).exp();
        let dn = Complex::with_val(p, &mu - &creal(h.clone())).exp();
        let fd = Complex::with_val(
            p,
            fig8::dilog_fn(&up, &ctx).unwrap() - fig8::dilog_fn(&dn, &ctx).unwrap(),
        ) / creal(h.clone() * 2u32);
        let exact = -(Complex::with_val(p, Complex::with_val(p, (1, 0)) - mu.exp()).ln());
        worst_fd = worst_fd.max(rel_dev(&fd, &exact));
        count += 1;
    }
    clauses.push(Clause {
        name: "dilog derivative vs finite differences (20 points)",
        pass: worst_fd < 10.0 * ctx.quad_tol(),
        detail: format!("worst rel = {worst_fd:.2e}"),
    });

    // clausen oddness and periodicity
    let mut worst_sym = 0f64;
    for theta in [0.3f64, 1.1, 2.9, 4.2] {
        let v = clausen(&ctx.float(theta), &ctx).unwrap();
        let odd = (v.clone() + clausen(&ctx.float(-theta), &ctx).unwrap()).abs();
        let per = (v - clausen(&(ctx.float(theta) + ctx.two_pi()), &ctx).unwrap()).abs();
        worst_sym = worst_sym.max(odd.to_f64()).max(per.to_f64());
    }
    clauses.push(Clause {
        name: "clausen oddness and 2 pi periodicity",
        pass: worst_sym < 1e-60,
        detail: format!("worst = {worst_sym:.2e}"),
    });

    // Cl2(theta) = 2 L(theta/2)
    let mut worst_fac = 0f64;
    for theta in [0.5f64, 1.0471975511965977, 2.6, -1.3] {
        let cl = clausen(&ctx.float(theta), &ctx).unwrap();
        let lb = lobachevsky(&ctx.float(theta / 2.0), &ctx).unwrap();
        worst_fac = worst_fac.max((cl - lb * 2u32).abs().to_f64());
    }
    clauses.push(Clause {
        name: "Cl2(theta) = 2 L(theta/2) to 1e-12",
        pass: worst_fac < 1e-12,
        detail: format!("worst = {worst_fac:.2e}"),
    });

    // conjugation symmetry of the exact Jones value
    let mut worst_conj = 0f64;
    for (m, n) in [(7u32, 11u32), (12, 15)] {
        let spec = RootSpec::half_odd(m, n).unwrap();
        let j = colored_jones_exact(&spec, &ctx).unwrap();
        let q = spec.q(&ctx);
        let qbar = Complex::with_val(
            p,
            (Float::with_val(p, q.real()), -Float::with_val(p, q.imag())),
        );
        let brute = fig8::reference::jones_bruteforce(m, &qbar, &ctx);
        worst_conj = worst_conj.max((cabs(&j.value) - cabs(&brute)).abs().to_f64());
    }
    clauses.push(Clause {
        name: "|J(q)| = |J(conj q)|",
        pass: worst_conj < 1e-50,
        detail: format!("worst = {worst_conj:.2e}"),
    });

    // byte-identical CLI output at 1 and 8 workers
    let bin = env!("CARGO_BIN_EXE_fig8");
    let run = |workers: &str| {
        std::process::Command::new(bin)
            .args([
                "--precision-bits",
                "192",
                "--workers",
                workers,
                "sweep",
                "--theorem",
                "cvc2",
                "--n-list",
                "20,30,40,50",
            ])
            .output()
            .expect("CLI run")
    };
    let out1 = run("1");
    let out8 = run("8");
    let identical = out1.status.success()
        && out8.status.success()
        && out1.stdout == out8.stdout
        && !out1.stdout.is_empty();
    clauses.push(Clause {
        name: "byte-identical sweep output at 1 and 8 workers",
        pass: identical,
        detail: format!(
            "status: {} / {}, bytes: {} / {}",
            out1.status,
            out8.status,
            out1.stdout.len(),
            out8.stdout.len()
        ),
    });

    report(9, "property suite", &clauses);
}
