//! Parametric families of means.
//!
//! All kernels return `ln phi` in the canonical coordinates of
//! [`crate::canonical`]. Two identities do most of the work:
//!
//! * `((1+t)^n + (1-t)^n) / 2 = (1-t^2)^(n/2) cosh(n z)`, so the log of the
//!   power sum is `g(n) = n l2 / 2 + ln cosh(n z)`;
//! * `((1+t)^s - (1-t)^s) / (2 s t) = (1-t^2)^(s/2) sinh(s z) / (s t)`, which
//!   turns every Stolarsky branch into a divided difference of
//!   `ln(sinh x / x)`.
//!
//! Neither identity forms a power of the arguments, so large parameters and
//! extreme ratios do not overflow.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canonical::{
    check_positive, half_l2_plus_langevin, ln_abs_expm1, ln_cosh, ln_sinhc, ln_sinhc_excess, Canon,
};
use crate::error::{Error, Result};
use crate::mean::{check_param, Elementary, Mean, MeanKind, BRANCH_EPS};

/// Hölder (power) mean `A_s = ((a^s + b^s) / 2)^(1/s)`, `A_0 = G`.
pub fn holder(s: f64) -> Result<Mean> {
    Ok(Mean::from_kind(MeanKind::Holder(check_param("s", s)?)))
}

/// Lehmer mean `(a^(r+1) + b^(r+1)) / (a^r + b^r)`.
pub fn lehmer(r: f64) -> Result<Mean> {
    Ok(Mean::from_kind(MeanKind::Lehmer(check_param("r", r)?)))
}

/// Generalized logarithmic mean `L_p`, with `L_0 = G` and `L_1 = L`.
pub fn gen_log(p: f64) -> Result<Mean> {
    Ok(Mean::from_kind(MeanKind::GenLog(check_param("p", p)?)))
}

/// Stolarsky's two-parameter extended mean `I_{r,s}`.
///
/// The parameters are stored sorted, so `stolarsky(r, s)` and
/// `stolarsky(s, r)` are the same descriptor.
pub fn stolarsky(r: f64, s: f64) -> Result<Mean> {
    let r = check_param("r", r)?;
    let s = check_param("s", s)?;
    let (lo, hi) = if r <= s { (r, s) } else { (s, r) };
    Ok(Mean::from_kind(MeanKind::Stolarsky(lo, hi)))
}

/// The `lambda_s` family, increasing in `s`, with `lambda_2 = A`.
pub fn lambda_mean(s: f64) -> Result<Mean> {
    Ok(Mean::from_kind(MeanKind::Lambda(check_param("s", s)?)))
}

/// `K_r = ((a^(r+1) + b^(r+1)) / (a + b))^(1/r)`, `K_0 = S`, `K_{-1} = A`.
pub fn k_mean(r: f64) -> Result<Mean> {
    Ok(Mean::from_kind(MeanKind::K(check_param("r", r)?)))
}

/// `M_s(a, b) = M(a^s, b^s)^(1/s)`, `M_0 = G`.
pub fn power_transform(m: &Mean, s: f64) -> Result<Mean> {
    m.power(s)
}

/// Weighted power mean `(p a^r + q b^r)^(1/r)` with `q = 1 - p`.
///
/// Not symmetric, hence not a [`Mean`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedPower {
    p: f64,
    r: f64,
}

pub fn weighted_holder(p: f64, r: f64) -> Result<WeightedPower> {
    WeightedPower::new(p, r)
}

impl WeightedPower {
    pub fn new(p: f64, r: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("weight must lie in (0, 1), got {p}")));
        }
        Ok(WeightedPower {
            p,
            r: check_param("r", r)?,
        })
    }

    pub fn eval(&self, a: f64, b: f64) -> Result<f64> {
        check_positive(a, b)?;
        let q = 1.0 - self.p;
        if self.r.abs() < BRANCH_EPS {
            return Ok((self.p * a.ln() + q * b.ln()).exp());
        }
        let x = self.p.ln() + self.r * a.ln();
        let y = q.ln() + self.r * b.ln();
        let (big, small) = if x >= y { (x, y) } else { (y, x) };
        let lse = big + (small - big).exp().ln_1p();
        Ok((lse / self.r).exp())
    }
}

/// `ln(((1 + t)^n + (1 - t)^n) / 2)`.
fn power_sum_log(n: f64, c: &Canon) -> f64 {
    let x = n * c.z;
    if x.abs() <= 1.0 {
        0.5 * n * c.l2 + ln_cosh(x)
    } else {
        let ln_big = if n > 0.0 { c.ln_hi } else { c.ln_lo };
        n * ln_big + (-2.0 * x.abs()).exp().ln_1p() - std::f64::consts::LN_2
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() < BRANCH_EPS {
        0.0
    } else {
        x
    }
}

pub(crate) fn holder_log_phi(s: f64, c: &Canon) -> f64 {
    if s.abs() < BRANCH_EPS {
        0.5 * c.l2
    } else {
        power_sum_log(s, c) / s
    }
}

pub(crate) fn lehmer_log_phi(r: f64, c: &Canon) -> f64 {
    power_sum_log(r + 1.0, c) - power_sum_log(r, c)
}

pub(crate) fn stolarsky_log_phi(r: f64, s: f64, c: &Canon) -> f64 {
    let (r, s) = if r <= s { (r, s) } else { (s, r) };
    let (r, s) = (snap(r), snap(s));
    if r == 0.0 && s == 0.0 {
        return 0.5 * c.l2;
    }
    if s - r < BRANCH_EPS {
        return half_l2_plus_langevin(0.5 * (r + s), c);
    }
    if r.abs().max(s.abs()) * c.z <= 1.0 {
        return 0.5 * c.l2 + (ln_sinhc(s.abs() * c.z) - ln_sinhc(r.abs() * c.z)) / (s - r);
    }
    // Split ln sinhc(x) = x + excess(x) so the linear parts combine exactly.
    let k = (s.abs() - r.abs()) / (s - r);
    let linear = 0.5 * ((1.0 + k) * c.ln_hi + (1.0 - k) * c.ln_lo);
    linear + (ln_sinhc_excess(s.abs() * c.z) - ln_sinhc_excess(r.abs() * c.z)) / (s - r)
}

pub(crate) fn lambda_log_phi(s: f64, c: &Canon) -> f64 {
    let (t, l2) = (c.t, c.l2);
    if (s + 1.0).abs() < BRANCH_EPS {
        // -ln(1-t^2) (1-t^2) / t^2
        (-l2).ln() + l2 - 2.0 * t.ln()
    } else if s.abs() < BRANCH_EPS {
        c.entropy().ln() - (-l2).ln()
    } else if (s - 1.0).abs() < BRANCH_EPS {
        2.0 * t.ln() - c.entropy().ln()
    } else {
        let num = power_sum_log(s + 1.0, c);
        let den = power_sum_log(s, c);
        ((s - 1.0) / (s + 1.0)).abs().ln() + ln_abs_expm1(num) - ln_abs_expm1(den)
    }
}

pub(crate) fn k_log_phi(r: f64, c: &Canon) -> f64 {
    if r.abs() < BRANCH_EPS {
        0.5 * c.entropy()
    } else if (r + 1.0).abs() < BRANCH_EPS {
        0.0
    } else {
        power_sum_log(r + 1.0, c) / r
    }
}

pub(crate) fn power_log_phi(m: &Mean, s: f64, c: &Canon) -> f64 {
    if s.abs() < BRANCH_EPS {
        return 0.5 * c.l2;
    }
    match m.kind() {
        MeanKind::Elementary(Elementary::A) => holder_log_phi(s, c),
        MeanKind::Elementary(Elementary::G) => 0.5 * c.l2,
        _ => holder_log_phi(s, c) + m.log_phi(&Canon::from_z(s.abs() * c.z)) / s,
    }
}

// Near-diagonal coefficients (c1, c2) of ln phi = c1 t^2 + c2 t^4.

pub(crate) fn holder_series(s: f64) -> (f64, f64) {
    ((s - 1.0) / 2.0, -(s - 1.0) * (s * s + s - 3.0) / 12.0)
}

fn power_sum_quartic(n: f64) -> f64 {
    -n * (n - 1.0) * (n * n + n - 3.0) / 12.0
}

pub(crate) fn lehmer_series(r: f64) -> (f64, f64) {
    (r, power_sum_quartic(r + 1.0) - power_sum_quartic(r))
}

pub(crate) fn stolarsky_series(r: f64, s: f64) -> (f64, f64) {
    let sum = r + s;
    let c1 = (sum - 3.0) / 6.0;
    let c2 = -(sum * (r * r + s * s) - 20.0 * sum + 45.0) / 180.0;
    (c1, c2)
}

pub(crate) fn lambda_series(s: f64) -> (f64, f64) {
    let u1 = (s - 1.0) * (s - 2.0) / 12.0;
    let v1 = (s - 2.0) * (s - 3.0) / 12.0;
    let u2 = (s - 1.0) * (s - 2.0) * (s - 3.0) * (s - 4.0) / 360.0;
    let v2 = (s - 2.0) * (s - 3.0) * (s - 4.0) * (s - 5.0) / 360.0;
    (u1 - v1, u2 - 0.5 * u1 * u1 - v2 + 0.5 * v1 * v1)
}

pub(crate) fn k_series(r: f64) -> (f64, f64) {
    ((r + 1.0) / 2.0, -(r + 1.0) * (r * r + 3.0 * r - 1.0) / 12.0)
}

pub(crate) fn power_series(m: &Mean, s: f64) -> (f64, f64) {
    if s.abs() < BRANCH_EPS {
        return (-0.5, -0.25);
    }
    let (h1, h2) = holder_series(s);
    let (m1, m2) = m.log_series();
    (
        h1 + m1 * s,
        h2 + 2.0 * m1 * s * (1.0 - s * s) / 3.0 + m2 * s * s * s,
    )
}

/// One-parameter ordered family of means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FamilyKind {
    Holder,
    Lehmer,
    GenLog,
    /// The diagonal `s -> I_{s,s}` of the Stolarsky family.
    StolarskyDiagonal,
    /// `s -> I_{r,s}` for a fixed first parameter.
    StolarskyRow(f64),
    Lambda,
    K,
    PowerTransform(Box<Mean>),
    /// A finite chain of means indexed `0, 1, ...`.
    Finite(Vec<Mean>),
}

/// Family tag plus the metadata the order lab relies on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Family {
    kind: FamilyKind,
    ordered: bool,
}

impl Family {
    pub fn new(kind: FamilyKind) -> Self {
        Family {
            kind,
            ordered: true,
        }
    }

    pub fn holder() -> Self {
        Family::new(FamilyKind::Holder)
    }

    pub fn lehmer() -> Self {
        Family::new(FamilyKind::Lehmer)
    }

    pub fn gen_log() -> Self {
        Family::new(FamilyKind::GenLog)
    }

    pub fn stolarsky_diagonal() -> Self {
        Family::new(FamilyKind::StolarskyDiagonal)
    }

    pub fn stolarsky_row(r: f64) -> Self {
        Family::new(FamilyKind::StolarskyRow(r))
    }

    pub fn lambda() -> Self {
        Family::new(FamilyKind::Lambda)
    }

    pub fn k() -> Self {
        Family::new(FamilyKind::K)
    }

    pub fn power_transform(base: Mean) -> Self {
        Family::new(FamilyKind::PowerTransform(Box::new(base)))
    }

    /// `H <= G <= L <= I <= A <= S`.
    pub fn delta0() -> Self {
        use Elementary::*;
        Family::finite(
            [H, G, L, I, A, S]
                .into_iter()
                .map(Mean::elementary)
                .collect(),
        )
    }

    /// A finite chain, listed from smallest to largest.
    pub fn finite(members: Vec<Mean>) -> Self {
        Family::new(FamilyKind::Finite(members))
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    /// Whether members increase with the parameter. Set for every family
    /// constructed here.
    pub fn ordered(&self) -> bool {
        self.ordered
    }

    pub fn param_arity(&self) -> usize {
        match self.kind {
            FamilyKind::StolarskyDiagonal => 2,
            _ => 1,
        }
    }

    pub fn base_mean(&self) -> Option<&Mean> {
        match &self.kind {
            FamilyKind::PowerTransform(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FamilyKind::Finite(_))
    }

    /// Member parameters of a finite family.
    pub fn finite_params(&self) -> Option<Vec<f64>> {
        match &self.kind {
            FamilyKind::Finite(v) => Some((0..v.len()).map(|i| i as f64).collect()),
            _ => None,
        }
    }

    pub fn instance(&self, p: f64) -> Result<Mean> {
        match &self.kind {
            FamilyKind::Holder => holder(p),
            FamilyKind::Lehmer => lehmer(p),
            FamilyKind::GenLog => gen_log(p),
            FamilyKind::StolarskyDiagonal => stolarsky(p, p),
            FamilyKind::StolarskyRow(r) => stolarsky(*r, p),
            FamilyKind::Lambda => lambda_mean(p),
            FamilyKind::K => k_mean(p),
            FamilyKind::PowerTransform(m) => m.power(p),
            FamilyKind::Finite(v) => {
                let i = p.round();
                if (p - i).abs() > 1e-9 || i < 0.0 || i as usize >= v.len() {
                    return Err(Error::Invalid(format!(
                        "finite family has members 0..{}, got index {p}",
                        v.len()
                    )));
                }
                Ok(v[i as usize].clone())
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Holder => f.write_str("holder"),
            FamilyKind::Lehmer => f.write_str("lehmer"),
            FamilyKind::GenLog => f.write_str("genlog"),
            FamilyKind::StolarskyDiagonal => f.write_str("stolarsky"),
            FamilyKind::StolarskyRow(r) => write!(f, "stolarsky-row({r})"),
            FamilyKind::Lambda => f.write_str("lambda"),
            FamilyKind::K => f.write_str("k"),
            FamilyKind::PowerTransform(m) => write!(f, "pow({m})"),
            FamilyKind::Finite(v) => {
                f.write_str("[")?;
                for (i, m) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mean::Stabilization;

    fn at13(m: &Mean) -> f64 {
        m.value(1.0, 3.0).unwrap()
    }

    fn close(x: f64, y: f64, rel: f64) -> bool {
        (x - y).abs() <= rel * y.abs()
    }

    #[test]
    fn holder_special_values() {
        assert!(close(at13(&holder(1.0).unwrap()), 2.0, 1e-15));
        assert!(close(
            holder(0.0).unwrap().value(4.0, 9.0).unwrap(),
            6.0,
            1e-15
        ));
        assert!(close(
            holder(3e-9).unwrap().value(4.0, 9.0).unwrap(),
            6.0,
            1e-15
        ));
        assert!(close(at13(&holder(-1.0).unwrap()), 1.5, 1e-15));
    }

    #[test]
    fn lehmer_special_values() {
        assert!(close(at13(&lehmer(0.0).unwrap()), 2.0, 1e-15));
        assert!(close(at13(&lehmer(1.0).unwrap()), 2.5, 1e-15));
        assert!(close(
            lehmer(-0.5).unwrap().value(4.0, 9.0).unwrap(),
            6.0,
            1e-15
        ));
    }

    #[test]
    fn stolarsky_branches() {
        let a = stolarsky(1.0, 2.0).unwrap();
        assert!(close(at13(&a), 2.0, 1e-15));
        assert!(close(
            stolarsky(-1.0, 1.0).unwrap().value(4.0, 9.0).unwrap(),
            6.0,
            1e-15
        ));
        assert!(close(
            stolarsky(0.0, 0.0).unwrap().value(4.0, 9.0).unwrap(),
            6.0,
            1e-15
        ));
        assert!(close(at13(&stolarsky(-2.0, -1.0).unwrap()), 1.5, 1e-14));
        assert!(close(
            at13(&stolarsky(0.0, 1.0).unwrap()),
            2.0 / 3f64.ln(),
            1e-15
        ));
        let identric = (-1.0 + 1.5 * 3f64.ln()).exp();
        assert!(close(at13(&stolarsky(1.0, 1.0).unwrap()), identric, 1e-15));
        // Within the branch tolerance of r = s.
        assert!(close(
            at13(&stolarsky(1.0, 1.0 + 5e-9).unwrap()),
            identric,
            1e-8
        ));
    }

    #[test]
    fn stolarsky_parameter_order_is_irrelevant() {
        assert_eq!(stolarsky(0.3, -2.0).unwrap(), stolarsky(-2.0, 0.3).unwrap());
        let x = at13(&stolarsky(0.3, -2.0).unwrap());
        let y = at13(&stolarsky(-2.0, 0.3).unwrap());
        assert_eq!(x.to_bits(), y.to_bits());
    }

    #[test]
    fn lambda_two_is_arithmetic() {
        assert!(close(at13(&lambda_mean(2.0).unwrap()), 2.0, 1e-15));
    }

    #[test]
    fn lambda_s1_closed_form() {
        let expected = 1.0 / (3.0 * 3f64.ln() - 4.0 * 2f64.ln());
        assert!(close(at13(&lambda_mean(1.0).unwrap()), expected, 1e-14));
    }

    #[test]
    fn lambda_branches_are_continuous() {
        for s in [-1.0, 0.0, 1.0] {
            let exact = at13(&lambda_mean(s).unwrap());
            for d in [1e-6, -1e-6] {
                let near = at13(&lambda_mean(s + d).unwrap());
                assert!(close(near, exact, 1e-5), "s={s} d={d}: {near} vs {exact}");
            }
        }
    }

    #[test]
    fn k_special_values() {
        assert!(close(at13(&k_mean(0.0).unwrap()), 3f64.powf(0.75), 1e-15));
        assert!(close(at13(&k_mean(1.0).unwrap()), 2.5, 1e-15));
        assert!(close(at13(&k_mean(-1.0).unwrap()), 2.0, 1e-15));
    }

    #[test]
    fn weighted_holder_values() {
        let w = weighted_holder(0.5, 2.0).unwrap();
        assert!(close(w.eval(1.0, 3.0).unwrap(), 5f64.sqrt(), 1e-15));
        let w = weighted_holder(0.25, 1.0).unwrap();
        assert!(close(w.eval(1.0, 3.0).unwrap(), 2.5, 1e-15));
        let w = weighted_holder(0.25, 1.0).unwrap();
        assert!(close(
            w.eval(1.0, 3.0).unwrap(),
            at13(&k_mean(1.0).unwrap()),
            1e-15
        ));
        assert!(weighted_holder(0.0, 1.0).is_err());
        assert!(weighted_holder(1.0, 1.0).is_err());
        // Not symmetric.
        assert!(w.eval(3.0, 1.0).unwrap() != w.eval(1.0, 3.0).unwrap());
    }

    #[test]
    fn weighted_holder_increasing_in_r() {
        let mut prev = 0.0;
        for r in [-5.0, -1.0, -0.1, 0.0, 0.1, 1.0, 5.0] {
            let v = weighted_holder(0.3, r).unwrap().eval(2.0, 11.0).unwrap();
            assert!(v > prev, "r={r}");
            prev = v;
        }
    }

    #[test]
    fn power_transform_values() {
        let a = Mean::elementary(Elementary::A);
        assert!(close(at13(&power_transform(&a, -1.0).unwrap()), 1.5, 1e-15));
        assert!(close(
            at13(&power_transform(&a, 2.0).unwrap()),
            5f64.sqrt(),
            1e-15
        ));
        let g = Mean::elementary(Elementary::G);
        assert!(close(
            at13(&power_transform(&g, 7.0).unwrap()),
            3f64.sqrt(),
            1e-15
        ));
        let l = Mean::elementary(Elementary::L);
        assert!(close(
            at13(&power_transform(&l, 0.0).unwrap()),
            3f64.sqrt(),
            1e-15
        ));
    }

    #[test]
    fn power_transform_duality() {
        for m in [Elementary::S, Elementary::L, Elementary::I, Elementary::P] {
            let m = Mean::elementary(m);
            let plus = m.power(3.0).unwrap().value(2.0, 5.0).unwrap();
            let minus = m.power(-3.0).unwrap().value(2.0, 5.0).unwrap();
            assert!(close(minus, 10.0 / plus, 1e-14));
        }
    }

    #[test]
    fn parameters_are_clamped() {
        assert!(matches!(
            holder(65.0),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(stolarsky(1.0, f64::NAN).is_err());
        assert!(holder(64.0).is_ok());
        assert!(holder(-64.0).is_ok());
    }

    #[test]
    fn large_parameters_do_not_overflow() {
        for m in [
            holder(64.0),
            holder(-64.0),
            k_mean(64.0),
            lambda_mean(-64.0),
            lehmer(63.0),
        ] {
            let m = m.unwrap();
            let v = m.value(1e-8, 1e8).unwrap();
            assert!((1e-8..=1e8).contains(&v), "{m}: {v}");
        }
        let h = holder(10.0).unwrap().value(1.0, 1e8).unwrap();
        assert!(close(h, 1e8 * 0.5f64.powf(0.1), 1e-14));
    }

    #[test]
    fn near_diagonal_paths_agree_for_families() {
        let means = [
            holder(2.0),
            holder(-3.5),
            lehmer(-1.0 / 3.0),
            gen_log(4.0),
            stolarsky(-1.0, 2.5),
            stolarsky(3.0, 3.0),
            lambda_mean(5.0),
            lambda_mean(-0.5),
            lambda_mean(0.0),
            k_mean(2.0),
            Ok(Mean::elementary(Elementary::S).dual()),
            Mean::elementary(Elementary::I).power(0.5),
        ];
        for m in means {
            let m = m.unwrap();
            let direct = m.clone().with_stabilization(Stabilization::off());
            for t in [1e-5, 5e-5, 1e-4, 5e-4, 1e-3] {
                let x = m.phi(t).unwrap();
                let y = direct.phi(t).unwrap();
                assert!(close(x, y, 1e-9), "{m} t={t}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn family_instances() {
        assert_eq!(
            Family::holder().instance(2.0).unwrap(),
            holder(2.0).unwrap()
        );
        assert_eq!(
            Family::stolarsky_diagonal().instance(3.0).unwrap(),
            stolarsky(3.0, 3.0).unwrap()
        );
        let d0 = Family::delta0();
        assert_eq!(d0.instance(5.0).unwrap(), Mean::elementary(Elementary::S));
        assert!(d0.instance(6.0).is_err());
        assert!(d0.instance(0.5).is_err());
        assert_eq!(d0.to_string(), "[H,G,L,I,A,S]");
        assert!(Family::k().ordered());
        assert_eq!(Family::stolarsky_diagonal().param_arity(), 2);
    }
}
