use anyhow::{bail, Context, Result};
use meanlab::characteristics::{phi_series, sigma};
use meanlab::lab::{
    best_constant, cancelling_verdict, chain_holds, compare, default_ladder,
    left_cancelling_verdict, run_suite, stolarsky_lehmer_residual, verify_chain, CancelSide,
    CancelVerdict, CheckStatus, OrderingReport, SuiteConfig, DEFAULT_TOL,
};
use meanlab::{parse_family, parse_mean_expr, Mean};
use serde::Serialize;

use crate::config::{Command, IdentityName, RunConfig};
use crate::report::{Cell, Report, Status, Table};

/// Relative residual below which the identity counts as reproduced.
pub const IDENTITY_TOL: f64 = 1e-10;

fn mean(text: &str) -> Result<Mean> {
    parse_mean_expr(text).with_context(|| format!("in mean expression '{text}'"))
}

/// The serde name of a unit enum value.
fn tag<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn witness_table(reports: &[&OrderingReport]) -> Table {
    let mut w = Table::new(&["lhs_mean", "rhs_mean", "t", "a", "b", "lhs", "rhs", "side"]);
    for r in reports {
        for x in &r.witnesses {
            w.push(vec![
                r.lhs.clone().into(),
                r.rhs.clone().into(),
                x.t.into(),
                x.a.into(),
                x.b.into(),
                x.lhs.into(),
                x.rhs.into(),
                tag(&x.side).into(),
            ]);
        }
    }
    w
}

pub fn execute(cfg: &RunConfig) -> Result<Report> {
    let tol = cfg.tol.unwrap_or(DEFAULT_TOL);
    let grid = || cfg.grid.build().context("building the grid");
    let report = match &cfg.command {
        Command::Eval { mean: m, a, b } => {
            let v = mean(m)?.value(*a, *b)?;
            let mut t = Table::new(&["mean", "a", "b", "value"]);
            t.push(vec![m.as_str().into(), (*a).into(), (*b).into(), v.into()]);
            Report::new("eval", t, "OK")
                .input("mean", m)
                .input("a", a)
                .input("b", b)
        }
        Command::Phi { mean: m, t } => {
            let v = mean(m)?.phi(*t)?;
            let mut r = Table::new(&["mean", "t", "phi"]);
            r.push(vec![m.as_str().into(), (*t).into(), v.into()]);
            Report::new("phi", r, "OK").input("mean", m).input("t", t)
        }
        Command::Sigma { mean: m } => {
            let s = sigma(&mean(m)?)?;
            let mut r = Table::new(&["mean", "sigma", "converged", "method"]);
            r.push(vec![
                m.as_str().into(),
                s.value.into(),
                s.converged.into(),
                tag(&s.method).into(),
            ]);
            let mut w = Table::new(&["epsilon", "estimate", "accelerated"]);
            for (i, (eps, v)) in s.tail.iter().enumerate() {
                let acc = i.checked_sub(2).and_then(|j| s.accelerated.get(j).copied());
                w.push(vec![(*eps).into(), (*v).into(), acc.into()]);
            }
            let mut rep = Report::new(
                "sigma",
                r,
                if s.converged {
                    "CONVERGED"
                } else {
                    "SLOW_CONVERGENCE"
                },
            )
            .input("mean", m);
            rep.witnesses = w;
            if !s.converged {
                rep.status = Status::Inconclusive;
            }
            rep
        }
        Command::Series { mean: m, order } => {
            let p = phi_series(&mean(m)?, *order)?;
            let mut r = Table::new(&["k", "coefficient", "fit_residual"]);
            for (k, a) in p.coefficients.iter().enumerate() {
                r.push(vec![k.into(), (*a).into(), p.fit_residual.into()]);
            }
            let mut rep = Report::new("series", r, if p.flagged { "FLAGGED" } else { "OK" })
                .input("mean", m)
                .input("order", order)
                .input("fit_window", p.fit_window);
            if p.flagged {
                rep.status = Status::Inconclusive;
            }
            rep
        }
        Command::Compare { lhs, rhs } => {
            let g = grid()?;
            let r = compare(&mean(lhs)?, &mean(rhs)?, &g, tol)?;
            let mut t = Table::new(&["t", "a", "b", "lhs", "rhs", "diff"]);
            for s in &r.samples {
                t.push(vec![
                    s.t.into(),
                    s.a.into(),
                    s.b.into(),
                    s.lhs.into(),
                    s.rhs.into(),
                    s.diff.into(),
                ]);
            }
            let mut rep = Report::new("compare", t, r.verdict.as_str())
                .input("lhs", lhs)
                .input("rhs", rhs)
                .input("tol", tol)
                .input("grid_points", g.len())
                .input("strict", r.strict)
                .input("max_violation", r.max_violation)
                .input("tied_up_to", r.tied_up_to);
            rep.witnesses = witness_table(&[&r]);
            rep.notes.push(format!(
                "{} {} {}{}",
                r.lhs,
                r.verdict,
                r.rhs,
                if r.strict { " (strict)" } else { "" }
            ));
            rep
        }
        Command::Chain { means } => {
            if means.len() < 2 {
                bail!("a chain needs at least two means");
            }
            let g = grid()?;
            let ms = means.iter().map(|m| mean(m)).collect::<Result<Vec<_>>>()?;
            let links = verify_chain(&ms, &g, tol)?;
            let mut t = Table::new(&[
                "lhs",
                "rhs",
                "verdict",
                "strict",
                "max_violation",
                "tied_up_to",
            ]);
            for l in &links {
                t.push(vec![
                    l.lhs.clone().into(),
                    l.rhs.clone().into(),
                    l.verdict.as_str().into(),
                    l.strict.into(),
                    l.max_violation.into(),
                    l.tied_up_to.into(),
                ]);
            }
            let ok = chain_holds(&links);
            let mut rep = Report::new("chain", t, if ok { "PASS" } else { "FAIL" })
                .input("means", means)
                .input("tol", tol)
                .input("grid_points", g.len());
            let failing: Vec<&OrderingReport> = links.iter().filter(|l| !l.is_le()).collect();
            rep.witnesses = witness_table(&failing);
            if !ok {
                rep.status = Status::Fail;
            }
            rep
        }
        Command::BestConstant {
            family,
            target,
            direction,
            lo,
            hi,
            precision,
        } => {
            let g = grid()?;
            let f = parse_family(family).with_context(|| format!("in family '{family}'"))?;
            let b = best_constant(
                &f,
                &mean(target)?,
                *direction,
                (*lo, *hi),
                *precision,
                &g,
                tol,
            )?;
            let mut t = Table::new(&["iter", "lo", "hi", "trial", "verdict"]);
            for s in &b.trace {
                t.push(vec![
                    s.iter.into(),
                    s.lo.into(),
                    s.hi.into(),
                    s.trial.into(),
                    s.verdict.as_str().into(),
                ]);
            }
            let mut w = Table::new(&["parameter", "satisfied", "violated", "violating_t"]);
            w.push(vec![
                b.parameter.into(),
                b.satisfied.into(),
                b.violated.into(),
                b.violating_t.into(),
            ]);
            let mut rep = Report::new("best-constant", t, "FOUND")
                .input("family", family)
                .input("target", target)
                .input("direction", direction)
                .input("bracket", (lo, hi))
                .input("precision", precision)
                .input("tol", tol)
                .input("grid_points", g.len());
            rep.witnesses = w;
            rep.notes.push(format!(
                "parameter = {} +- {}",
                crate::report::sig9(b.parameter),
                crate::report::sig9((b.bracket.1 - b.bracket.0) / 2.0)
            ));
            rep
        }
        Command::Cancel {
            family,
            candidate,
            side,
            ladder,
        } => {
            let g = grid()?;
            let f = parse_family(family).with_context(|| format!("in family '{family}'"))?;
            let c = mean(candidate)?;
            let ladder = ladder.clone().unwrap_or_else(|| default_ladder(&f));
            let v = match side {
                CancelSide::Right => cancelling_verdict(&f, &c, &ladder, &g)?,
                CancelSide::Left => left_cancelling_verdict(&f, &c, &ladder, &g)?,
            };
            let mut t = Table::new(&[
                "param",
                "mean",
                "relation",
                "bounded_by_candidate",
                "outcome",
                "sigma_member",
                "sigma_candidate",
            ]);
            let mut w = Table::new(&["param", "t", "ln_ratio", "ln_gap", "source", "sigma_backed"]);
            for m in &v.members {
                t.push(vec![
                    m.param.into(),
                    m.mean.clone().into(),
                    m.verdict.as_str().into(),
                    m.bounded_by_candidate.into(),
                    tag(&m.outcome).into(),
                    m.sigma_member.into(),
                    m.sigma_candidate.into(),
                ]);
                if let Some(x) = &m.witness {
                    w.push(vec![
                        m.param.into(),
                        x.t.into(),
                        x.ln_ratio.into(),
                        x.ln_gap.into(),
                        tag(&x.source).into(),
                        m.sigma_backed.into(),
                    ]);
                }
            }
            let mut rep = Report::new("cancel", t, v.verdict.as_str())
                .input("family", family)
                .input("candidate", candidate)
                .input("side", side)
                .input("ladder", &ladder)
                .input("grid_points", g.len())
                .input("dominates_some_member", v.dominates_some_member)
                .input("dominated_by_none", v.dominated_by_none)
                .input("sigma_argument_used", v.sigma_argument_used)
                .input("scope", &v.note);
            rep.witnesses = w;
            rep.status = match v.verdict {
                CancelVerdict::Supported => Status::Pass,
                CancelVerdict::Refuted => Status::Fail,
                CancelVerdict::Inconclusive => Status::Inconclusive,
            };
            rep
        }
        Command::Identity { identity, a, b, s } => {
            let IdentityName::StolarskyLehmer = identity;
            let r = stolarsky_lehmer_residual(*a, *b, *s)?;
            let mut t = Table::new(&["a", "b", "s", "lhs", "rhs", "residual", "relative"]);
            t.push(vec![
                (*a).into(),
                (*b).into(),
                (*s).into(),
                r.lhs.into(),
                r.rhs.into(),
                r.residual.into(),
                r.relative.into(),
            ]);
            let ok = r.relative <= IDENTITY_TOL;
            let mut rep = Report::new("identity", t, if ok { "PASS" } else { "FAIL" })
                .input("identity", identity)
                .input("a", a)
                .input("b", b)
                .input("s", s)
                .input("tol", IDENTITY_TOL);
            if !ok {
                rep.status = Status::Fail;
            }
            rep
        }
        Command::Suite { suite } => {
            let cfg_s = SuiteConfig {
                grid: grid()?,
                tol,
                seed: cfg.grid.options().seed,
            };
            let s = run_suite(&cfg_s);
            let mut t = Table::new(&["check", "title", "status"]);
            let mut w = Table::new(&["check", "detail"]);
            for c in &s.checks {
                t.push(vec![
                    c.key.clone().into(),
                    c.title.clone().into(),
                    c.status.as_str().into(),
                ]);
                for d in &c.details {
                    w.push(vec![c.key.clone().into(), Cell::Text(d.clone())]);
                }
            }
            let mut rep = Report::new("suite", t, s.status.as_str())
                .input("suite", suite)
                .input("tol", tol)
                .input("grid_points", cfg_s.grid.len())
                .input("seed", cfg_s.seed);
            rep.witnesses = w;
            rep.status = match s.status {
                CheckStatus::Pass => Status::Pass,
                CheckStatus::Fail => Status::Fail,
                CheckStatus::Inconclusive => Status::Inconclusive,
            };
            rep
        }
    };
    Ok(report)
}
