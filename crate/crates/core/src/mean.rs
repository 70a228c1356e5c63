//! The mean abstraction and the elementary means.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canonical::{check_positive, half_l2_plus_langevin, Canon};
use crate::error::{Error, Result};
use crate::families;

/// Parameters closer than this to a singular configuration are routed to
/// the limit branch.
pub const BRANCH_EPS: f64 = 1e-8;

/// Largest admissible absolute value of a family parameter.
pub const PARAM_LIMIT: f64 = 64.0;

/// Anything that maps two positive reals to a positive real.
///
/// [`Mean`] is the implementation used throughout the crate; the trait exists
/// so that axiom checks and comparisons also accept ad hoc evaluators.
pub trait BivariateMean {
    fn value(&self, a: f64, b: f64) -> Result<f64>;

    /// Characteristic function `phi(t) = M(1 - t, 1 + t)`.
    fn phi(&self, t: f64) -> Result<f64> {
        if !(t.abs() < 1.0) {
            return Err(Error::Domain(format!("|t| must be < 1, got {t}")));
        }
        self.value(1.0 - t, 1.0 + t)
    }

    fn label(&self) -> String;
}

/// Wraps a closure as a [`BivariateMean`]. No axioms are assumed.
pub struct FnMean<F> {
    label: String,
    f: F,
}

impl<F: Fn(f64, f64) -> f64> FnMean<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        FnMean {
            label: label.into(),
            f,
        }
    }
}

impl<F: Fn(f64, f64) -> f64> BivariateMean for FnMean<F> {
    fn value(&self, a: f64, b: f64) -> Result<f64> {
        check_positive(a, b)?;
        Ok((self.f)(a, b))
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// The eight named means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Elementary {
    /// Harmonic.
    H,
    /// Geometric.
    G,
    /// Logarithmic.
    L,
    /// Identric.
    I,
    /// Arithmetic.
    A,
    /// Gini mean `a^(a/(a+b)) b^(b/(a+b))`.
    S,
    /// First Seiffert mean.
    P,
    /// Second Seiffert mean.
    T,
}

impl Elementary {
    pub const ALL: [Elementary; 8] = [
        Elementary::H,
        Elementary::G,
        Elementary::L,
        Elementary::I,
        Elementary::A,
        Elementary::S,
        Elementary::P,
        Elementary::T,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Elementary::H => "H",
            Elementary::G => "G",
            Elementary::L => "L",
            Elementary::I => "I",
            Elementary::A => "A",
            Elementary::S => "S",
            Elementary::P => "P",
            Elementary::T => "T",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Elementary::ALL.into_iter().find(|e| e.symbol() == s)
    }

    fn log_phi(self, c: &Canon) -> f64 {
        let Canon { t, z, l2, .. } = *c;
        match self {
            Elementary::H => l2,
            Elementary::G => 0.5 * l2,
            Elementary::L => (t / z).ln(),
            Elementary::I => half_l2_plus_langevin(1.0, c),
            Elementary::A => 0.0,
            Elementary::S => 0.5 * c.entropy(),
            Elementary::P => (t / t.asin()).ln(),
            // atan is evaluated at |t|; symmetry restores the sign.
            Elementary::T => (t / t.atan()).ln(),
        }
    }

    fn log_series(self) -> (f64, f64) {
        match self {
            Elementary::H => (-1.0, -0.5),
            Elementary::G => (-0.5, -0.25),
            Elementary::L => (-1.0 / 3.0, -13.0 / 90.0),
            Elementary::I => (-1.0 / 6.0, -1.0 / 20.0),
            Elementary::A => (0.0, 0.0),
            Elementary::S => (0.5, 1.0 / 12.0),
            Elementary::P => (-1.0 / 6.0, -11.0 / 180.0),
            Elementary::T => (1.0 / 3.0, -13.0 / 90.0),
        }
    }
}

/// Near-diagonal evaluation policy.
///
/// For `|t| < threshold` the mean is evaluated from the even expansion
/// `ln phi(t) = c1 t^2 + c2 t^4`, truncated after `order` terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stabilization {
    pub threshold: f64,
    pub order: u8,
}

impl Default for Stabilization {
    fn default() -> Self {
        Stabilization {
            threshold: 1e-4,
            order: 2,
        }
    }
}

impl Stabilization {
    /// Direct formulas everywhere except exactly on the diagonal.
    pub fn off() -> Self {
        Stabilization {
            threshold: 0.0,
            order: 2,
        }
    }
}

/// Family tag plus parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MeanKind {
    Elementary(Elementary),
    Holder(f64),
    Lehmer(f64),
    GenLog(f64),
    /// Stored with `r <= s`.
    Stolarsky(f64, f64),
    Lambda(f64),
    K(f64),
    Dual(Box<Mean>),
    Power(Box<Mean>, f64),
}

/// A concrete symmetric, homogeneous mean.
///
/// ```
/// use meanlab::{Elementary, Mean};
///
/// let s = Mean::elementary(Elementary::S);
/// assert!((s.value(1.0, 3.0).unwrap() - 3f64.powf(0.75)).abs() < 1e-15);
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mean {
    kind: MeanKind,
    stabilization: Stabilization,
}

impl From<Elementary> for Mean {
    fn from(e: Elementary) -> Self {
        Mean::elementary(e)
    }
}

pub(crate) fn check_param(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value.abs() <= PARAM_LIMIT {
        Ok(value)
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value,
            limit: PARAM_LIMIT,
        })
    }
}

impl Mean {
    pub(crate) fn from_kind(kind: MeanKind) -> Self {
        Mean {
            kind,
            stabilization: Stabilization::default(),
        }
    }

    pub fn elementary(e: Elementary) -> Self {
        Mean::from_kind(MeanKind::Elementary(e))
    }

    pub fn kind(&self) -> &MeanKind {
        &self.kind
    }

    pub fn stabilization(&self) -> Stabilization {
        self.stabilization
    }

    pub fn with_stabilization(mut self, stabilization: Stabilization) -> Self {
        self.stabilization = stabilization;
        self
    }

    /// The dual mean `ab / M(a, b)`.
    ///
    /// Families closed under duality map to the matching member, e.g. the
    /// dual of `holder(s)` is `holder(-s)` and the dual of `A` is `H`.
    pub fn dual(&self) -> Mean {
        use Elementary::{A, G, H};
        let kind = match &self.kind {
            MeanKind::Dual(m) => return (**m).clone(),
            MeanKind::Elementary(H) => MeanKind::Elementary(A),
            MeanKind::Elementary(A) => MeanKind::Elementary(H),
            MeanKind::Elementary(G) => MeanKind::Elementary(G),
            MeanKind::Holder(s) => MeanKind::Holder(-s),
            MeanKind::GenLog(p) => MeanKind::GenLog(-p),
            MeanKind::Stolarsky(r, s) => MeanKind::Stolarsky(-s, -r),
            MeanKind::Lehmer(r) if (r + 1.0).abs() <= PARAM_LIMIT => MeanKind::Lehmer(-r - 1.0),
            MeanKind::Power(m, s) => MeanKind::Power(m.clone(), -s),
            _ => MeanKind::Dual(Box::new(self.clone())),
        };
        Mean {
            kind,
            stabilization: self.stabilization,
        }
    }

    /// The power transform `M_s(a, b) = M(a^s, b^s)^(1/s)`.
    pub fn power(&self, s: f64) -> Result<Mean> {
        let s = check_param("s", s)?;
        Ok(Mean::from_kind(MeanKind::Power(Box::new(self.clone()), s)))
    }

    /// `M(a, b)` for positive `a`, `b`.
    pub fn value(&self, a: f64, b: f64) -> Result<f64> {
        check_positive(a, b)?;
        if a == b {
            return Ok(a);
        }
        let (canon, c) = Canon::from_pair(a, b);
        let v = c * self.log_phi(&canon).exp();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Ok(v.clamp(lo, hi))
    }

    /// `phi(t) = M(1 - t, 1 + t)` for `|t| < 1`.
    pub fn phi(&self, t: f64) -> Result<f64> {
        Ok(self.ln_phi(t)?.exp().clamp(1.0 - t.abs(), 1.0 + t.abs()))
    }

    /// `ln phi(t)`, accurate in absolute terms even where `phi` is close to one.
    pub fn ln_phi(&self, t: f64) -> Result<f64> {
        if !(t.abs() < 1.0) {
            return Err(Error::Domain(format!("|t| must be < 1, got {t}")));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(self.log_phi(&Canon::from_t(t)))
    }

    /// `ln phi` at the point with `atanh t = z`, i.e. `b / a = e^(2z)`.
    ///
    /// Unlike [`Mean::ln_phi`] this reaches ratios whose `t` rounds to one.
    pub fn ln_phi_at_z(&self, z: f64) -> Result<f64> {
        if !(z.is_finite() && z >= 0.0) {
            return Err(Error::Domain(format!("z must be finite and >= 0, got {z}")));
        }
        if z == 0.0 {
            return Ok(0.0);
        }
        Ok(self.log_phi(&Canon::from_z(z)))
    }

    /// Coefficients `(a1, a2)` of `phi(t) = 1 + a1 t^2 + a2 t^4 + O(t^6)` used
    /// by the near-diagonal path.
    pub fn series_coefficients(&self) -> (f64, f64) {
        let (c1, c2) = self.log_series();
        (c1, c2 + 0.5 * c1 * c1)
    }

    pub(crate) fn log_phi(&self, c: &Canon) -> f64 {
        if c.t == 0.0 {
            return 0.0;
        }
        if c.t < self.stabilization.threshold {
            let (c1, c2) = self.log_series();
            let t2 = c.t * c.t;
            return if self.stabilization.order >= 2 {
                t2 * (c1 + c2 * t2)
            } else {
                c1 * t2
            };
        }
        self.log_phi_direct(c)
    }

    fn log_phi_direct(&self, c: &Canon) -> f64 {
        match &self.kind {
            MeanKind::Elementary(e) => e.log_phi(c),
            MeanKind::Holder(s) => families::holder_log_phi(*s, c),
            MeanKind::Lehmer(r) => families::lehmer_log_phi(*r, c),
            MeanKind::GenLog(p) => families::stolarsky_log_phi(0.0, *p, c),
            MeanKind::Stolarsky(r, s) => families::stolarsky_log_phi(*r, *s, c),
            MeanKind::Lambda(s) => families::lambda_log_phi(*s, c),
            MeanKind::K(r) => families::k_log_phi(*r, c),
            MeanKind::Dual(m) => c.l2 - m.log_phi(c),
            MeanKind::Power(m, s) => families::power_log_phi(m, *s, c),
        }
    }

    /// `(c1, c2)` with `ln phi(t) = c1 t^2 + c2 t^4 + O(t^6)`.
    pub(crate) fn log_series(&self) -> (f64, f64) {
        match &self.kind {
            MeanKind::Elementary(e) => e.log_series(),
            MeanKind::Holder(s) => families::holder_series(*s),
            MeanKind::Lehmer(r) => families::lehmer_series(*r),
            MeanKind::GenLog(p) => families::stolarsky_series(0.0, *p),
            MeanKind::Stolarsky(r, s) => families::stolarsky_series(*r, *s),
            MeanKind::Lambda(s) => families::lambda_series(*s),
            MeanKind::K(r) => families::k_series(*r),
            MeanKind::Dual(m) => {
                let (c1, c2) = m.log_series();
                (-1.0 - c1, -0.5 - c2)
            }
            MeanKind::Power(m, s) => families::power_series(m, *s),
        }
    }
}

impl BivariateMean for Mean {
    fn value(&self, a: f64, b: f64) -> Result<f64> {
        Mean::value(self, a, b)
    }

    fn phi(&self, t: f64) -> Result<f64> {
        Mean::phi(self, t)
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Mean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MeanKind::Elementary(e) => f.write_str(e.symbol()),
            MeanKind::Holder(s) => write!(f, "holder({s})"),
            MeanKind::Lehmer(r) => write!(f, "lehmer({r})"),
            MeanKind::GenLog(p) => write!(f, "genlog({p})"),
            MeanKind::Stolarsky(r, s) => write!(f, "stolarsky({r},{s})"),
            MeanKind::Lambda(s) => write!(f, "lambda({s})"),
            MeanKind::K(r) => write!(f, "k({r})"),
            MeanKind::Dual(m) => write!(f, "dual({m})"),
            MeanKind::Power(m, s) => write!(f, "pow({m}, {s})"),
        }
    }
}

/// Evaluates one of the elementary means at `(a, b)`.
pub fn eval_elementary(kind: Elementary, a: f64, b: f64) -> Result<f64> {
    Mean::elementary(kind).value(a, b)
}

/// `ab / m(a, b)`.
pub fn dual(m: &Mean) -> Mean {
    m.dual()
}

/// `m(1 - t, 1 + t)`.
pub fn phi(m: &Mean, t: f64) -> Result<f64> {
    m.phi(t)
}
