//! Acceptance run: every criterion at its stated tolerance, one PASS/FAIL line each.
//!
//! `COCYCLE_TRIALS` and `COCYCLE_SEED` override the default 10^4 trials and seed 42.

use std::process::ExitCode;
use std::time::Instant;

use sl2_cocycles::harness::{run_suite, run_suite_with, Mutation, VerificationReport};
use sl2_cocycles::kernel::{omega_a, omega_n, AFunctional, NFunctional};
use sl2_cocycles::sampling::SamplerConfig;
use sl2_cocycles::sl2::project_n;
use sl2_cocycles::{Field, Mat2, PairGA, ProjPoint, Vec2};

struct Criterion {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn env_u64(name: &str, default: u64) -> u64 {
    std::env::var(name).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn suites(cfg: &SamplerConfig, runs: &[(&str, Field, f64)]) -> (bool, String) {
    let mut ok = true;
    let mut lines = Vec::new();
    for &(name, field, tol) in runs {
        let cfg = SamplerConfig { tol: Some(tol), ..cfg.clone() };
        match run_suite(name, &cfg, field) {
            Ok(r) => {
                ok &= r.passed();
                lines.push(describe(&r));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{name} [{field}]: error: {e}"));
            }
        }
    }
    (ok, lines.join("; "))
}

fn describe(r: &VerificationReport) -> String {
    format!(
        "{} [{}] max_residual={:.3e} tol={:.0e} failures={} rejected={}",
        r.suite,
        r.field,
        r.max_residual,
        r.tolerance,
        r.failures.len(),
        r.rejected
    )
}

fn golden() -> (bool, String) {
    let mut ok = true;
    let mut lines = Vec::new();
    let mut check = |label: &str, got: Option<f64>, want: f64, tol: f64| {
        let pass = got.is_some_and(|g| (g - want).abs() <= tol);
        ok &= pass;
        lines.push(format!(
            "{label}={} (want {want}, tol {tol:.0e})",
            got.map_or("error".into(), |g| format!("{g:.16}"))
        ));
    };
    let g = Mat2::real(1.0, 1.0, 1.0, 2.0).ok();
    check("project_N", g.map(|g| project_n(&g).re()), 0.6, 1e-12);

    let v = |a, b| Vec2::real(a, b).unwrap();
    check("omega_N", omega_n(&NFunctional::real(1.0), &v(1.0, 0.0), &v(0.0, 1.0), &v(1.0, 1.0)).ok(), 3.0, 1e-10);

    let x = PairGA::new(ProjPoint::infinity(), ProjPoint::zero()).unwrap();
    let (y, z) = (PairGA::finite(1.0, 2.0).unwrap(), PairGA::finite(3.0, 4.0).unwrap());
    check("omega_A", omega_a(&AFunctional { c: 1.0 }, &x, &y, &z).ok(), 0.5 * 3f64.ln(), 1e-10);
    (ok, lines.join("; "))
}

fn mutation_detected(cfg: &SamplerConfig, mutation: Mutation) -> (bool, String) {
    let caught: Vec<String> = sl2_cocycles::harness::suites_for(Field::Real)
        .filter_map(|info| {
            let r = run_suite_with(info.name, cfg, Field::Real, mutation).ok()?;
            (!r.passed()).then(|| format!("{} ({} failures)", info.name, r.failures.len()))
        })
        .collect();
    let detail =
        if caught.is_empty() { "no suite failed".to_string() } else { format!("caught by {}", caught.join(", ")) };
    (!caught.is_empty(), format!("{mutation}: {detail}"))
}

fn main() -> ExitCode {
    let cfg = SamplerConfig {
        trials: env_u64("COCYCLE_TRIALS", 10_000),
        seed: env_u64("COCYCLE_SEED", 42),
        ..SamplerConfig::default()
    };
    let start = Instant::now();
    let (r, c) = (Field::Real, Field::Complex);
    let mut results = Vec::new();
    let mut push = |id, title, (passed, detail): (bool, String)| results.push(Criterion { id, title, passed, detail });

    push(1, "Iwasawa round-trip", suites(&cfg, &[("iwasawa_roundtrip", r, 1e-10), ("iwasawa_roundtrip", c, 1e-10)]));
    push(
        2,
        "projection closed forms match the Iwasawa oracle",
        suites(
            &cfg,
            &[("projection_match_N", r, 1e-10), ("projection_match_N", c, 1e-10), ("projection_match_A", r, 1e-10)],
        ),
    );
    // actions at 1e-9 and determinants at 1e-10: the suite holds both to the stricter bound
    push(3, "transporter correctness", suites(&cfg, &[("transporters", r, 1e-10), ("transporters", c, 1e-10)]));
    push(
        4,
        "differential identities d_up beta = d_right alpha_G",
        suites(
            &cfg,
            &[
                ("differential_identity_N", r, 1e-9),
                ("differential_identity_N", c, 1e-9),
                ("differential_identity_A", r, 1e-9),
            ],
        ),
    );
    push(
        5,
        "closed form vs chase, with branch agreement",
        suites(&cfg, &[("closed_vs_chase_N", r, 1e-9), ("closed_vs_chase_N", c, 1e-9), ("closed_vs_chase_A", r, 1e-9)]),
    );
    push(
        6,
        "omega_N cocycle and G-invariance",
        suites(
            &cfg,
            &[("cocycle_N", r, 1e-8), ("cocycle_N", c, 1e-8), ("g_invariance_N", r, 1e-8), ("g_invariance_N", c, 1e-8)],
        ),
    );
    push(
        7,
        "omega_A cocycle, G-invariance, and exact global-sign relation",
        suites(&cfg, &[("cocycle_A", r, 1e-8), ("g_invariance_A", r, 1e-8), ("sign_flip_thm15", r, 0.0)]),
    );
    push(8, "golden values", golden());
    let (a_ok, a) = mutation_detected(&cfg, Mutation::FlipRightSign);
    let (b_ok, b) = mutation_detected(&cfg, Mutation::DropBetaAHalf);
    push(9, "mutation sensitivity", (a_ok && b_ok, format!("{a}; {b}")));

    let mut all = true;
    for c in &results {
        all &= c.passed;
        println!("{} criterion {}: {} | {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title, c.detail);
    }
    println!("{} trials per suite, seed {}, {:.1} s", cfg.trials, cfg.seed, start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
