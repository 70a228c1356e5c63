//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::BTreeMap;
use std::f64::consts::{E, FRAC_PI_2, PI};
use std::process::ExitCode;

use meanlab::characteristics::{comparison_exponent, phi_series, sigma};
use meanlab::lab::{
    best_constant, cancelling_verdict, compare, default_ladder, holder2_gini_curvature,
    left_cancelling_verdict, monotone_in_param, stolarsky_lehmer_residual, BoundDirection,
    CancelVerdict, OrderingReport, Side, Verdict,
};
use meanlab::{
    gen_log, holder, k_mean, lambda_mean, lehmer, parse_mean_expr, stolarsky, Elementary, Family,
    GridSpec, Mean,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

type Outcome = Result<String, String>;

const TOL: f64 = 1e-11;

/// A mean with its characteristic function in closed form.
type ClosedForm = (Elementary, fn(f64) -> f64);

fn el(e: Elementary) -> Mean {
    Mean::elementary(e)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn near(what: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure(
        (got - want).abs() <= tol,
        format!("{what}: got {got}, want {want} +- {tol:e}"),
    )
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn grid() -> GridSpec {
    GridSpec::default()
}

/// `m <= n` everywhere, strictly once the tied near-diagonal prefix ends.
fn strict_le(r: &OrderingReport) -> Result<(), String> {
    ensure(
        r.verdict == Verdict::Le && r.strict,
        format!(
            "{} vs {}: {} strict={} ties up to {:?}",
            r.lhs, r.rhs, r.verdict, r.strict, r.tied_up_to
        ),
    )
}

fn best(
    family: Family,
    target: &Mean,
    dir: BoundDirection,
    bracket: (f64, f64),
) -> Result<f64, String> {
    best_constant(&family, target, dir, bracket, 1e-6, &grid(), TOL)
        .map(|r| r.parameter)
        .map_err(err)
}

fn criterion_1() -> Outcome {
    use Elementary::*;
    let g = grid();
    ensure(g.len() == 256, "default grid has 256 points")?;
    let mut smallest = f64::INFINITY;
    for w in [H, G, L, I, A, S].windows(2) {
        let r = compare(&el(w[0]), &el(w[1]), &g, TOL).map_err(err)?;
        ensure(
            r.verdict == Verdict::Le,
            format!("{} vs {}: {}", r.lhs, r.rhs, r.verdict),
        )?;
        for s in &r.samples {
            ensure(
                s.diff < 0.0,
                format!("{} not below {} at t = {}", r.lhs, r.rhs, s.t),
            )?;
            if s.t >= 1e-5 {
                smallest = smallest.min(-s.rel_diff());
            }
        }
        ensure(
            r.tied_up_to.is_none_or(|t| t < 1e-5),
            format!("{} vs {} tied up to {:?}", r.lhs, r.rhs, r.tied_up_to),
        )?;
    }
    ensure(smallest >= TOL, format!("margin {smallest:e} below 1e-11"))?;
    Ok(format!(
        "five strict links at 256 points; relative margin >= {smallest:.2e} for t >= 1e-5"
    ))
}

fn criterion_2() -> Outcome {
    use Elementary::*;
    for e in [H, G, L] {
        let r = sigma(&el(e)).map_err(err)?;
        ensure(
            r.value < 0.05,
            format!("sigma({}) = {}", e.symbol(), r.value),
        )?;
    }
    let l = sigma(&el(L)).map_err(err)?;
    ensure(
        !l.converged,
        "sigma(L) should be flagged as slowly convergent",
    )?;
    let i = sigma(&el(I)).map_err(err)?;
    let a = sigma(&el(A)).map_err(err)?;
    let s = sigma(&el(S)).map_err(err)?;
    ensure(
        i.converged && a.converged && s.converged,
        "I, A, S converge",
    )?;
    near("sigma(I)", i.value, 2.0 / E, 1e-6)?;
    near("sigma(A)", a.value, 1.0, 1e-9)?;
    near("sigma(S)", s.value, 2.0, 1e-6)?;
    Ok(format!(
        "sigma(L) = {:.4} flagged; sigma(I) = {:.9}, sigma(A) = {}, sigma(S) = {:.9}",
        l.value, i.value, a.value, s.value
    ))
}

fn criterion_3() -> Outcome {
    use Elementary::*;
    let forms: [ClosedForm; 5] = [
        (H, |t| 1.0 - t * t),
        (G, |t| (1.0 - t * t).sqrt()),
        (L, |t| 2.0 * t / ((1.0 + t).ln() - (1.0 - t).ln())),
        (I, |t| {
            (((1.0 + t) * (1.0 + t).ln() - (1.0 - t) * (1.0 - t).ln()) / (2.0 * t) - 1.0).exp()
        }),
        (S, |t| {
            (0.5 * ((1.0 + t) * (1.0 + t).ln() + (1.0 - t) * (1.0 - t).ln())).exp()
        }),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ts: Vec<f64> = (0..50).map(|_| rng.gen_range(0.01..0.99)).collect();
    let mut worst: f64 = 0.0;
    for (e, f) in forms {
        for &t in &ts {
            let got = el(e).phi(t).map_err(err)?;
            let rel = (got - f(t)).abs() / f(t);
            ensure(
                rel <= 1e-12,
                format!("phi_{} at {t}: relative error {rel:e}", e.symbol()),
            )?;
            worst = worst.max(rel);
        }
    }
    Ok(format!(
        "5 closed forms at 50 sampled t, worst relative error {worst:.1e}"
    ))
}

fn criterion_4() -> Outcome {
    let a = el(Elementary::A);
    let h = el(Elementary::H);
    strict_le(&compare(&gen_log(3.0).map_err(err)?, &a, &grid(), TOL).map_err(err)?)?;
    let up = best(Family::gen_log(), &a, BoundDirection::SupLe, (1.0, 6.0))?;
    near("sup p with L_p <= A", up, 3.0, 1e-4)?;
    let r = compare(&gen_log(3.01).map_err(err)?, &a, &grid(), TOL).map_err(err)?;
    ensure(
        r.verdict == Verdict::Crossing,
        format!("L_3.01 vs A: {}", r.verdict),
    )?;
    let w = r
        .witnesses
        .iter()
        .filter(|w| w.side == Side::Above && w.t < 0.2)
        .count();
    ensure(w > 0, "no witness of L_3.01 > A at t < 0.2")?;
    let down = best(Family::gen_log(), &h, BoundDirection::InfGe, (-6.0, -1.0))?;
    near("inf p with L_p >= H", down, -3.0, 1e-4)?;
    for p in [1.0, 2.0, 4.0] {
        let x = comparison_exponent(&gen_log(p).map_err(err)?, &a).map_err(err)?;
        near(
            &format!("exponent at p = {p}"),
            x.value,
            p * (p - 3.0) / 6.0 / p,
            1e-5,
        )?;
    }
    Ok(format!(
        "L_3 < A strict; upper constant {up:.6}; L_3.01 crosses ({w} small-t witnesses); lower constant {down:.6}; exponents match"
    ))
}

fn criterion_5() -> Outcome {
    let s = el(Elementary::S);
    let r = compare(&holder(2.0).map_err(err)?, &s, &grid(), TOL).map_err(err)?;
    ensure(r.verdict == Verdict::Le, format!("A_2 vs S: {}", r.verdict))?;
    let up = best(Family::holder(), &s, BoundDirection::SupLe, (1.0, 4.0))?;
    near("sup r with A_r <= S", up, 2.0, 1e-4)?;
    let down = best(
        Family::holder(),
        &s.dual(),
        BoundDirection::InfGe,
        (-4.0, -1.0),
    )?;
    near("inf r with A_r >= ab/S", down, -2.0, 1e-4)?;
    let mut worst: f64 = 0.0;
    for k in 1..=20 {
        let c = holder2_gini_curvature(k as f64 / 21.0, 1e-5).map_err(err)?;
        ensure(c.finite_difference < 0.0, "g'' must be negative")?;
        worst = worst.max(c.relative_error);
    }
    ensure(worst <= 1e-5, format!("g'' relative error {worst:e}"))?;
    Ok(format!(
        "A_2 <= S; upper constant {up:.6}; dual lower constant {down:.6}; g'' worst relative error {worst:.1e}"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = 10f64.powf(rng.gen_range(-3.0..3.0));
        let b = 10f64.powf(rng.gen_range(-3.0..3.0));
        let s = loop {
            let s: f64 = rng.gen_range(-6.0..6.0);
            if s.abs() >= 0.1 {
                break s;
            }
        };
        let r = stolarsky_lehmer_residual(a, b, s).map_err(err)?;
        ensure(
            r.relative <= 1e-10,
            format!("residual {:e} at ({a}, {b}, {s})", r.relative),
        )?;
        worst = worst.max(r.relative);
    }
    let s = el(Elementary::S);
    let r = compare(&stolarsky(3.0, 3.0).map_err(err)?, &s, &grid(), TOL).map_err(err)?;
    ensure(
        r.verdict == Verdict::Le,
        format!("I_3,3 vs S: {}", r.verdict),
    )?;
    let diag = best(
        Family::stolarsky_diagonal(),
        &s,
        BoundDirection::SupLe,
        (1.0, 6.0),
    )?;
    near("sup s with I_s,s <= S", diag, 3.0, 1e-4)?;
    let l = el(Elementary::L);
    strict_le(&compare(&lehmer(-1.0 / 3.0).map_err(err)?, &l, &grid(), TOL).map_err(err)?)?;
    let lehm = best(Family::lehmer(), &l, BoundDirection::SupLe, (-1.0, 0.5))?;
    near("sup r with l_r <= L", lehm, -1.0 / 3.0, 1e-3)?;
    Ok(format!(
        "identity residual <= {worst:.1e} at 100 points; I_3,3 <= S; diagonal constant {diag:.6}; Lehmer constant {lehm:.6}"
    ))
}

fn criterion_7() -> Outcome {
    use Elementary::*;
    let g = grid();
    let holder_f = Family::holder();
    let diag = Family::stolarsky_diagonal();
    let genlog = Family::gen_log();
    let supported = |what: &str, v: &meanlab::lab::CancellationVerdict| {
        ensure(
            v.verdict == CancelVerdict::Supported && v.dominates_some_member && v.dominated_by_none,
            format!("{what}: {}", v.verdict.as_str()),
        )
    };
    let v = cancelling_verdict(&holder_f, &el(S), &default_ladder(&holder_f), &g).map_err(err)?;
    supported("S over power means", &v)?;
    let v = cancelling_verdict(&diag, &el(S), &default_ladder(&diag), &g).map_err(err)?;
    supported("S over Stolarsky diagonal", &v)?;
    ensure(
        v.sigma_argument_used,
        "sigma argument not used for the Stolarsky diagonal",
    )?;
    for r in [0.5, 1.0, 2.0] {
        let k = k_mean(r).map_err(err)?;
        let v = cancelling_verdict(&holder_f, &k, &default_ladder(&holder_f), &g).map_err(err)?;
        supported(&format!("K_{r} over power means"), &v)?;
    }
    let v = left_cancelling_verdict(&genlog, &el(H), &default_ladder(&genlog), &g).map_err(err)?;
    supported("H under generalized logarithmic means", &v)?;
    let v = left_cancelling_verdict(&holder_f, &el(S).dual(), &default_ladder(&holder_f), &g)
        .map_err(err)?;
    supported("ab/S under power means", &v)?;
    ensure(
        v.note.contains("not a proof"),
        "verdict note must disclaim proof",
    )?;
    Ok("7 verdicts SUPPORTED (S twice, K_0.5, K_1, K_2, H left, ab/S left)".into())
}

fn criterion_8() -> Outcome {
    use Elementary::*;
    let g = grid();
    let lam = |s: f64| lambda_mean(s).map_err(err);
    let pairs = [
        (lam(-4.0)?, el(H)),
        (el(H), lam(-3.0)?),
        (lam(-1.0)?, el(G)),
        (el(G), lam(-0.5)?),
        (lam(0.0)?, el(L)),
        (el(L), lam(1.0)?),
        (lam(1.0)?, el(I)),
        (el(I), lam(2.0)?),
        (lam(5.0)?, el(S)),
    ];
    for (m, n) in &pairs {
        strict_le(&compare(m, n, &g, TOL).map_err(err)?)?;
    }
    let eq = compare(&lam(2.0)?, &el(A), &g, TOL).map_err(err)?;
    ensure(
        eq.verdict == Verdict::Equal,
        format!("lambda(2) vs A: {}", eq.verdict),
    )?;
    let ladder = [-4.0, -3.0, -1.0, -0.5, 0.0, 1.0, 2.0, 5.0, 10.0];
    let m = monotone_in_param(&Family::lambda(), &ladder, &g, TOL).map_err(err)?;
    ensure(m.passed, "lambda not monotone on the ladder")?;
    let r = compare(&lam(10.0)?, &el(S), &g, TOL).map_err(err)?;
    let w = r
        .strongest(Side::Below)
        .ok_or("no point with lambda(10) < S")?;
    ensure(w.t >= 0.5, format!("lambda(10) < S only at t = {}", w.t))?;
    Ok(format!(
        "{} sandwich links strict, lambda(2) = A, monotone on 9 rungs; lambda(10) vs S {} with lambda(10) < S at 1 - t = {:.1e}",
        pairs.len(),
        r.verdict,
        1.0 - w.t
    ))
}

fn criterion_9() -> Outcome {
    use Elementary::*;
    for (e, want) in [
        (H, -1.0),
        (G, -0.5),
        (L, -1.0 / 3.0),
        (I, -1.0 / 6.0),
        (A, 0.0),
        (S, 0.5),
    ] {
        let p = phi_series(&el(e), 4).map_err(err)?;
        near(
            &format!("a_1 of {}", e.symbol()),
            p.coefficients[1],
            want,
            1e-6,
        )?;
    }
    for (r, s) in [(1.0, 2.0), (0.0, 1.0), (1.0, 1.0), (-2.0, -1.0)] {
        let p = phi_series(&stolarsky(r, s).map_err(err)?, 4).map_err(err)?;
        near(
            &format!("a_1 of I_{r},{s}"),
            p.coefficients[1],
            (r + s - 3.0) / 6.0,
            1e-6,
        )?;
    }
    Ok("a_1 for H, G, L, I, A, S and four Stolarsky pairs within 1e-6".into())
}

fn criterion_10() -> Outcome {
    use Elementary::*;
    let g = grid();
    let lo_p = 2f64.ln() / PI.ln();
    let lo_t = 2f64.ln() / FRAC_PI_2.ln();
    let h = |s: f64| holder(s).map_err(err);
    for (m, n) in [
        (h(lo_p)?, el(P)),
        (el(P), h(2.0 / 3.0)?),
        (h(lo_t)?, el(T)),
        (el(T), h(5.0 / 3.0)?),
    ] {
        strict_le(&compare(&m, &n, &g, TOL).map_err(err)?)?;
    }
    let up = best(Family::holder(), &el(P), BoundDirection::InfGe, (0.5, 1.0))?;
    near("upper power-mean constant for P", up, 2.0 / 3.0, 1e-3)?;
    let down = best(Family::holder(), &el(P), BoundDirection::SupLe, (0.3, 0.65))?;
    near("lower power-mean constant for P", down, lo_p, 1e-3)?;
    Ok(format!(
        "four bounds strict; P constants {down:.6} and {up:.6}"
    ))
}

#[derive(Deserialize)]
struct Oracle {
    values: BTreeMap<String, f64>,
}

/// Example values with their printed approximations: expression, a, b,
/// printed value, oracle key.
const EXAMPLES: [(&str, f64, f64, f64, &str); 20] = [
    ("S", 1.0, 3.0, 2.2795071, "eval S 1 3"),
    ("L", 1.0, 3.0, 1.8204785, "eval L 1 3"),
    ("P", 1.0, 3.0, 1.9098593, "eval P 1 3"),
    ("dual(S)", 1.0, 3.0, 1.3160740, "dual S 1 3"),
    ("holder(2)", 1.0, 3.0, 2.2360680, "holder 2 1 3"),
    ("holder(1/3)", 1.0, 3.0, 1.8208984, "holder 1/3 1 3"),
    ("lehmer(-1/3)", 1.0, 3.0, 1.8189254, "lehmer -1/3 1 3"),
    ("genlog(3)", 1.0, 3.0, 1.9906800, "genlog 3 1 3"),
    ("genlog(-3)", 1.0, 3.0, 1.5070231, "genlog -3 1 3"),
    ("stolarsky(1,1)", 1.0, 3.0, 1.9115577, "stolarsky 1 1 1 3"),
    ("stolarsky(3,3)", 1.0, 3.0, 2.2423697, "stolarsky 3 3 1 3"),
    ("lambda(1)", 1.0, 3.0, 1.9111381, "lambda 1 1 3"),
    ("lambda(0)", 1.0, 3.0, 1.8188446, "lambda 0 1 3"),
    ("k(1)", 1.0, 3.0, 2.5, "k 1 1 3"),
    ("k(-1)", 1.0, 3.0, 2.0, "k -1 1 3"),
    ("pow(A, 2)", 1.0, 3.0, 2.2360680, "power A 2 1 3"),
    ("pow(S, 3)", 2.0, 5.0, f64::NAN, "power S 3 2 5"),
    ("pow(S, -3)", 2.0, 5.0, f64::NAN, "power S -3 2 5"),
    ("pow(I, -3)", 2.0, 5.0, f64::NAN, "power I -3 2 5"),
    ("pow(L, -3)", 2.0, 5.0, f64::NAN, "power L -3 2 5"),
];

fn criterion_11() -> Outcome {
    let oracle: Oracle = serde_json::from_str(include_str!("data/oracle.json")).map_err(err)?;
    let mut worst: f64 = 0.0;
    let mut printed_off = Vec::new();
    for (expr, a, b, printed, key) in EXAMPLES {
        let want = *oracle
            .values
            .get(key)
            .ok_or(format!("oracle lacks {key}"))?;
        let got = parse_mean_expr(expr)
            .map_err(err)?
            .value(a, b)
            .map_err(err)?;
        let rel = (got - want).abs() / want;
        ensure(
            rel <= 1e-12,
            format!("{expr}({a}, {b}) = {got}, oracle {want}"),
        )?;
        worst = worst.max(rel);
        // Printed approximations carry 8 significant digits.
        if printed.is_finite() && (printed - want).abs() > 5e-8 * want.abs().max(1.0) {
            printed_off.push(expr);
        }
    }
    let phi_s = el(Elementary::S).phi(0.5).map_err(err)?;
    let want = oracle.values["phi S 0.5"];
    ensure(
        (phi_s - want).abs() <= 1e-12 * want,
        format!("phi_S(0.5) = {phi_s}, oracle {want}"),
    )?;
    if (1.1398806f64 - want).abs() > 5e-8 {
        printed_off.push("phi_S(0.5)");
    }
    Ok(format!(
        "{} example points match the oracle (worst {worst:.1e}); printed approximations superseded by the oracle: {}",
        EXAMPLES.len() + 1,
        if printed_off.is_empty() { "none".to_string() } else { printed_off.join(", ") }
    ))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut failed = 0;
    for (i, f) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS criterion {:>2}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
