//! The full verification matrix: every ordering, constant, identity and
//! cancellation claim the crate is built to reproduce, one keyed check each.

use std::f64::consts::{E, FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::best::{best_constant, BoundDirection};
use super::cancel::{cancelling_verdict, default_ladder, left_cancelling_verdict, CancelVerdict};
use super::compare::{compare, OrderingReport, Side, Verdict};
use super::identities::{holder2_gini_curvature, holder2_gini_gap, stolarsky_lehmer_residual};
use super::monotone::monotone_in_param;
use crate::characteristics::{comparison_exponent, phi_series, sigma};
use crate::error::Result;
use crate::families::{gen_log, holder, k_mean, lambda_mean, lehmer, stolarsky, Family};
use crate::grid::{GridSpec, DEFAULT_SEED};
use crate::mean::{Elementary, Mean};
use crate::parse::parse_mean_expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub key: String,
    pub title: String,
    pub status: CheckStatus,
    /// One line per sub-check, prefixed with `ok`, `FAIL` or `??`.
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    /// Relative tie tolerance for comparisons.
    pub tol: f64,
    /// Seed for the randomly sampled identity points.
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: GridSpec::default(),
            tol: 1e-11,
            seed: DEFAULT_SEED,
        }
    }
}

/// Keys and titles of every check, in run order.
pub const CHECKS: [(&str, &str); 11] = [
    ("elementary-chain", "H < G < L < I < A < S"),
    (
        "sigma-table",
        "characteristic numbers of the elementary means",
    ),
    (
        "closed-form-phi",
        "characteristic functions against closed forms",
    ),
    (
        "genlog-bounds",
        "generalized logarithmic means against A and H",
    ),
    ("holder-gini-bounds", "power means against S and its dual"),
    (
        "stolarsky-bounds",
        "Stolarsky diagonal, Lehmer bound and identity",
    ),
    ("cancellation", "cancelling-mean verdicts"),
    ("lambda-family", "lambda family sandwich and monotonicity"),
    ("series-coefficients", "second-order coefficients of phi"),
    ("seiffert-bounds", "power-mean bounds for P and T"),
    ("reference-values", "reference values of the example table"),
];

/// Runs every check in [`CHECKS`].
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .map(|(k, _)| run_check(k, cfg).expect("key comes from CHECKS"))
        .collect();
    let status = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if checks.iter().any(|c| c.status == CheckStatus::Inconclusive) {
        CheckStatus::Inconclusive
    } else {
        CheckStatus::Pass
    };
    SuiteReport { checks, status }
}

/// Runs one check by key; `None` for an unknown key.
pub fn run_check(key: &str, cfg: &SuiteConfig) -> Option<CheckResult> {
    let (key, title) = CHECKS.iter().find(|(k, _)| *k == key)?;
    let mut c = Checker::default();
    let run = match *key {
        "elementary-chain" => elementary_chain(&mut c, cfg),
        "sigma-table" => sigma_table(&mut c),
        "closed-form-phi" => closed_form_phi(&mut c),
        "genlog-bounds" => genlog_bounds(&mut c, cfg),
        "holder-gini-bounds" => holder_gini_bounds(&mut c, cfg),
        "stolarsky-bounds" => stolarsky_bounds(&mut c, cfg),
        "cancellation" => cancellation(&mut c, cfg),
        "lambda-family" => lambda_family(&mut c, cfg),
        "series-coefficients" => series_coefficients(&mut c),
        "seiffert-bounds" => seiffert_bounds(&mut c, cfg),
        "reference-values" => reference_values(&mut c),
        _ => unreachable!(),
    };
    if let Err(e) = run {
        c.fail(format!("evaluation error: {e}"));
    }
    Some(CheckResult {
        key: key.to_string(),
        title: title.to_string(),
        status: c.status(),
        details: c.lines,
    })
}

#[derive(Default)]
struct Checker {
    lines: Vec<String>,
    failed: bool,
    unsure: bool,
}

impl Checker {
    fn expect(&mut self, ok: bool, line: String) {
        if ok {
            self.lines.push(format!("ok   {line}"));
        } else {
            self.fail(line);
        }
    }

    fn fail(&mut self, line: String) {
        self.failed = true;
        self.lines.push(format!("FAIL {line}"));
    }

    fn unsure(&mut self, line: String) {
        self.unsure = true;
        self.lines.push(format!("??   {line}"));
    }

    fn status(&self) -> CheckStatus {
        if self.failed {
            CheckStatus::Fail
        } else if self.unsure {
            CheckStatus::Inconclusive
        } else {
            CheckStatus::Pass
        }
    }

    fn constant(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.expect(
            (got - want).abs() <= tol,
            format!("{what} = {got:.9} (want {want:.9} +- {tol:e})"),
        );
    }
}

/// A mean with its characteristic function in closed form.
type ClosedForm = (Elementary, fn(f64) -> f64);

fn el(e: Elementary) -> Mean {
    Mean::elementary(e)
}

/// Below this `t` the gaps between neighbouring elementary means are under
/// the tie tolerance, so only the sign of the difference is required there.
const RESOLVED_T: f64 = 1e-5;

/// `m < n` at every grid point, by at least `tol` relative once `t >= t0`.
fn strictly_below(r: &OrderingReport, tol: f64, t0: f64) -> (bool, String) {
    let sign_ok = r.samples.iter().all(|s| s.diff < 0.0);
    let margin = r
        .samples
        .iter()
        .filter(|s| s.t >= t0)
        .map(|s| -s.rel_diff())
        .fold(f64::INFINITY, f64::min);
    let ok = sign_ok && margin >= tol && r.tied_up_to.is_none_or(|t| t < t0);
    (
        ok,
        format!(
            "{} < {}: {} points, smallest margin for t >= {t0:e} is {margin:.3e}",
            r.lhs,
            r.rhs,
            r.samples.len()
        ),
    )
}

fn at(t: Option<f64>) -> String {
    t.map_or_else(|| "none".to_string(), |t| format!("{t:.6e}"))
}

fn ties(r: &OrderingReport) -> String {
    match r.tied_up_to {
        Some(t) if r.strict => format!("strict beyond the ties at t <= {t:.2e}"),
        Some(t) => format!("not strict, ties up to t = {t:.2e}"),
        None if r.strict => "strict at every point".into(),
        None => "not strict".into(),
    }
}

fn elementary_chain(c: &mut Checker, cfg: &SuiteConfig) -> Result<()> {
    use Elementary::*;
    let chain = [H, G, L, I, A, S];
    for w in chain.windows(2) {
        let r = compare(&el(w[0]), &el(w[1]), &cfg.grid, cfg.tol)?;
        let (ok, line) = strictly_below(&r, cfg.tol, RESOLVED_T);
        c.expect(ok && r.verdict == Verdict::Le, line);
    }
    Ok(())
}

fn sigma_table(c: &mut Checker) -> Result<()> {
    use Elementary::*;
    for e in [H, G, L] {
        let r = sigma(&el(e))?;
        c.expect(
            r.value < 0.05,
            format!(
                "sigma({}) = {:.3e} (converged: {})",
                e.symbol(),
                r.value,
                r.converged
            ),
        );
    }
    let l = sigma(&el(L))?;
    c.expect(
        !l.converged,
        "sigma(L) is flagged as slowly convergent".into(),
    );
    for (e, want, tol) in [(I, 2.0 / E, 1e-6), (A, 1.0, 1e-9), (S, 2.0, 1e-6)] {
        let r = sigma(&el(e))?;
        c.expect(r.converged, format!("sigma({}) converged", e.symbol()));
        c.constant(&format!("sigma({})", e.symbol()), r.value, want, tol);
    }
    Ok(())
}

fn closed_form_phi(c: &mut Checker) -> Result<()> {
    use Elementary::*;
    let forms: [ClosedForm; 5] = [
        (H, |t| 1.0 - t * t),
        (G, |t| (1.0 - t * t).sqrt()),
        (L, |t| 2.0 * t / (t.ln_1p() - (-t).ln_1p())),
        (I, |t| {
            (((1.0 + t) * t.ln_1p() - (1.0 - t) * (-t).ln_1p()) / (2.0 * t) - 1.0).exp()
        }),
        (S, |t| {
            (0.5 * ((1.0 + t) * t.ln_1p() + (1.0 - t) * (-t).ln_1p())).exp()
        }),
    ];
    for (e, f) in forms {
        let mut worst: f64 = 0.0;
        for k in 1..=50 {
            let t = (2 * k - 1) as f64 / 100.0;
            let want = f(t);
            worst = worst.max((el(e).phi(t)? - want).abs() / want);
        }
        c.expect(
            worst <= 1e-12,
            format!(
                "phi_{} at 50 points, worst relative error {worst:.2e}",
                e.symbol()
            ),
        );
    }
    Ok(())
}

fn genlog_bounds(c: &mut Checker, cfg: &SuiteConfig) -> Result<()> {
    let a = el(Elementary::A);
    let h = el(Elementary::H);
    let g = &cfg.grid;
    let r = compare(&gen_log(3.0)?, &a, g, cfg.tol)?;
    c.expect(
        r.verdict == Verdict::Le && r.strict,
        format!("L_3 < A: {}, {}", r.verdict, ties(&r)),
    );
    let b = best_constant(
        &Family::gen_log(),
        &a,
        BoundDirection::SupLe,
        (1.0, 6.0),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("largest p with L_p <= A", b.parameter, 3.0, 1e-4);
    let r = compare(&gen_log(3.01)?, &a, g, cfg.tol)?;
    let early = r.above().map(|s| s.t).find(|&t| t < 0.2);
    c.expect(
        r.verdict == Verdict::Crossing && early.is_some(),
        format!(
            "L_3.01 vs A: {} with L_p > A at t = {}",
            r.verdict,
            at(early)
        ),
    );
    let b = best_constant(
        &Family::gen_log(),
        &h,
        BoundDirection::InfGe,
        (-6.0, -1.0),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("smallest p with L_p >= H", b.parameter, -3.0, 1e-4);
    for p in [1.0, 2.0, 4.0] {
        let x = comparison_exponent(&gen_log(p)?, &a)?;
        c.constant(
            &format!("comparison exponent of L_{p} against A"),
            x.value,
            (p - 3.0) / 6.0,
            1e-5,
        );
    }
    Ok(())
}

fn holder_gini_bounds(c: &mut Checker, cfg: &SuiteConfig) -> Result<()> {
    let s = el(Elementary::S);
    let g = &cfg.grid;
    let r = compare(&holder(2.0)?, &s, g, cfg.tol)?;
    c.expect(r.is_le(), format!("A_2 vs S: {}", r.verdict));
    let b = best_constant(
        &Family::holder(),
        &s,
        BoundDirection::SupLe,
        (1.0, 4.0),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("largest r with A_r <= S", b.parameter, 2.0, 1e-4);
    let b = best_constant(
        &Family::holder(),
        &s.dual(),
        BoundDirection::InfGe,
        (-4.0, -1.0),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("smallest r with A_r >= ab/S", b.parameter, -2.0, 1e-4);
    let mut worst: f64 = 0.0;
    let mut negative = true;
    for k in 1..=20 {
        let t = k as f64 / 21.0;
        let q = holder2_gini_curvature(t, 1e-5)?;
        worst = worst.max(q.relative_error);
        negative &= holder2_gini_gap(t) < 0.0 && q.finite_difference < 0.0;
    }
    c.expect(
        worst <= 1e-5 && negative,
        format!(
            "g'' at 20 points: worst relative error {worst:.2e}, g < 0 and g'' < 0: {negative}"
        ),
    );
    Ok(())
}

fn stolarsky_bounds(c: &mut Checker, cfg: &SuiteConfig) -> Result<()> {
    let g = &cfg.grid;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = 10f64.powf(rng.gen_range(-3.0..3.0));
        let b = 10f64.powf(rng.gen_range(-3.0..3.0));
        let s = rng.gen_range(0.1..6.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        worst = worst.max(stolarsky_lehmer_residual(a, b, s)?.relative);
    }
    c.expect(
        worst <= 1e-10,
        format!(
            "diagonal/Lehmer identity at 100 random points, worst relative residual {worst:.2e}"
        ),
    );
    let s = el(Elementary::S);
    let r = compare(&stolarsky(3.0, 3.0)?, &s, g, cfg.tol)?;
    c.expect(r.is_le(), format!("I_3,3 vs S: {}", r.verdict));
    let b = best_constant(
        &Family::stolarsky_diagonal(),
        &s,
        BoundDirection::SupLe,
        (1.0, 6.0),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("largest s with I_s,s <= S", b.parameter, 3.0, 1e-4);
    let l = el(Elementary::L);
    let r = compare(&lehmer(-1.0 / 3.0)?, &l, g, cfg.tol)?;
    c.expect(
        r.verdict == Verdict::Le && r.strict,
        format!("l_-1/3 < L: {}, {}", r.verdict, ties(&r)),
    );
    let b = best_constant(
        &Family::lehmer(),
        &l,
        BoundDirection::SupLe,
        (-1.0, 0.5),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("largest r with l_r <= L", b.parameter, -1.0 / 3.0, 1e-3);
    Ok(())
}

fn cancellation(c: &mut Checker, cfg: &SuiteConfig) -> Result<()> {
    use Elementary::*;
    let g = &cfg.grid;
    let record = |c: &mut Checker, what: String, v: CancelVerdict, extra: bool| match v {
        CancelVerdict::Supported if extra => c.expect(true, format!("{what}: {}", v.as_str())),
        CancelVerdict::Inconclusive => c.unsure(format!("{what}: {}", v.as_str())),
        _ => c.fail(format!("{what}: {}", v.as_str())),
    };
    let holder_f = Family::holder();
    let v = cancelling_verdict(&holder_f, &el(S), &default_ladder(&holder_f), g)?;
    record(c, "S right-cancels the power means".into(), v.verdict, true);
    let diag = Family::stolarsky_diagonal();
    let v = cancelling_verdict(&diag, &el(S), &default_ladder(&diag), g)?;
    record(
        c,
        format!(
            "S right-cancels the Stolarsky diagonal (sigma argument: {})",
            v.sigma_argument_used
        ),
        v.verdict,
        v.sigma_argument_used,
    );
    for r in [0.5, 1.0, 2.0] {
        let v = cancelling_verdict(&holder_f, &k_mean(r)?, &default_ladder(&holder_f), g)?;
        record(
            c,
            format!("K_{r} right-cancels the power means"),
            v.verdict,
            true,
        );
    }
    let genlog = Family::gen_log();
    let v = left_cancelling_verdict(&genlog, &el(H), &default_ladder(&genlog), g)?;
    record(
        c,
        "H left-cancels the generalized logarithmic means".into(),
        v.verdict,
        true,
    );
    let v = left_cancelling_verdict(&holder_f, &el(S).dual(), &default_ladder(&holder_f), g)?;
    record(
        c,
        "ab/S left-cancels the power means".into(),
        v.verdict,
        true,
    );
    Ok(())
}

fn lambda_family(c: &mut Checker, cfg: &SuiteConfig) -> Result<()> {
    use Elementary::*;
    let g = &cfg.grid;
    let lam = lambda_mean;
    let pairs: [(Mean, Mean); 9] = [
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
        let r = compare(m, n, g, cfg.tol)?;
        c.expect(
            r.verdict == Verdict::Le && r.strict,
            format!("{m} < {n}: {}, {}", r.verdict, ties(&r)),
        );
    }
    let r = compare(&lam(2.0)?, &el(A), g, cfg.tol)?;
    c.expect(
        r.verdict == Verdict::Equal,
        format!("lambda(2) = A: {}", r.verdict),
    );
    let ladder = [-4.0, -3.0, -1.0, -0.5, 0.0, 1.0, 2.0, 5.0, 10.0];
    let m = monotone_in_param(&Family::lambda(), &ladder, g, cfg.tol)?;
    c.expect(m.passed, format!("lambda monotone over {ladder:?}"));
    let r = compare(&lam(10.0)?, &el(S), &g.with_tail_probes(), cfg.tol)?;
    let w = r.strongest(Side::Below);
    c.expect(
        w.is_some_and(|w| w.t >= 0.5),
        format!(
            "lambda(10) vs S: {}, lambda(10) < S at t = {}",
            r.verdict,
            at(w.map(|w| w.t))
        ),
    );
    Ok(())
}

fn series_coefficients(c: &mut Checker) -> Result<()> {
    use Elementary::*;
    for (e, want) in [
        (H, -1.0),
        (G, -0.5),
        (L, -1.0 / 3.0),
        (I, -1.0 / 6.0),
        (A, 0.0),
        (S, 0.5),
    ] {
        let p = phi_series(&el(e), 4)?;
        c.constant(
            &format!("a_1 of phi_{}", e.symbol()),
            p.coefficients[1],
            want,
            1e-6,
        );
    }
    for (r, s) in [(1.0, 2.0), (0.0, 1.0), (1.0, 1.0), (-2.0, -1.0)] {
        let p = phi_series(&stolarsky(r, s)?, 4)?;
        c.constant(
            &format!("a_1 of phi for I_{r},{s}"),
            p.coefficients[1],
            (r + s - 3.0) / 6.0,
            1e-6,
        );
    }
    Ok(())
}

fn seiffert_bounds(c: &mut Checker, cfg: &SuiteConfig) -> Result<()> {
    use Elementary::*;
    let g = &cfg.grid;
    let lo_p = 2f64.ln() / PI.ln();
    let lo_t = 2f64.ln() / FRAC_PI_2.ln();
    for (m, n) in [
        (holder(lo_p)?, el(P)),
        (el(P), holder(2.0 / 3.0)?),
        (holder(lo_t)?, el(T)),
        (el(T), holder(5.0 / 3.0)?),
    ] {
        let r = compare(&m, &n, g, cfg.tol)?;
        c.expect(
            r.verdict == Verdict::Le && r.strict,
            format!("{m} < {n}: {}, {}", r.verdict, ties(&r)),
        );
    }
    let hf = Family::holder();
    let b = best_constant(
        &hf,
        &el(P),
        BoundDirection::InfGe,
        (0.5, 1.0),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("smallest s with A_s >= P", b.parameter, 2.0 / 3.0, 1e-3);
    let b = best_constant(
        &hf,
        &el(P),
        BoundDirection::SupLe,
        (0.3, 0.65),
        1e-6,
        g,
        cfg.tol,
    )?;
    c.constant("largest s with A_s <= P", b.parameter, lo_p, 1e-3);
    Ok(())
}

/// Example points and their extended-precision values.
pub const REFERENCE_VALUES: [(&str, f64, f64, f64); 22] = [
    ("S", 1.0, 3.0, 2.2795070569547775),
    ("L", 1.0, 3.0, 1.8204784532536749),
    ("P", 1.0, 3.0, 1.909859317102744),
    ("I", 1.0, 3.0, 1.911557649506952),
    ("T", 1.0, 3.0, 2.15681043229161),
    ("dual(S)", 1.0, 3.0, 1.3160740129524924),
    ("holder(2)", 1.0, 3.0, 2.23606797749979),
    ("holder(1/3)", 1.0, 3.0, 1.820875022509742),
    ("lehmer(-1/3)", 1.0, 3.0, 1.818917126372248),
    ("lehmer(1)", 1.0, 3.0, 2.5),
    ("genlog(3)", 1.0, 3.0, 1.990685013206447),
    ("genlog(-3)", 1.0, 3.0, 1.507018930718639),
    ("stolarsky(1,1)", 1.0, 3.0, 1.911557649506952),
    ("stolarsky(3,3)", 1.0, 3.0, 2.242369847235783),
    ("lambda(1)", 1.0, 3.0, 1.9111391257031995),
    ("lambda(0)", 1.0, 3.0, 1.818841679306418),
    ("k(1)", 1.0, 3.0, 2.5),
    ("k(-1)", 1.0, 3.0, 2.0),
    ("pow(A, 2)", 1.0, 3.0, 2.23606797749979),
    ("pow(S, 3)", 2.0, 5.0, 4.7318804443387394),
    ("pow(S, -3)", 2.0, 5.0, 2.1133247379409346),
    ("pow(L, -3)", 2.0, 5.0, 2.8641091336216875),
];

fn reference_values(c: &mut Checker) -> Result<()> {
    let mut worst = (0.0, "");
    for (expr, a, b, want) in REFERENCE_VALUES {
        let got = parse_mean_expr(expr)?.value(a, b)?;
        let err = (got - want).abs() / want;
        if err > worst.0 {
            worst = (err, expr);
        }
    }
    c.expect(
        worst.0 <= 1e-12,
        format!(
            "{} example values, worst relative error {:.2e} ({})",
            REFERENCE_VALUES.len(),
            worst.0,
            worst.1
        ),
    );
    let phi_s = el(Elementary::S).phi(0.5)?;
    c.constant("phi_S(0.5)", phi_s, 1.1397535284773888, 1e-14);
    Ok(())
}
