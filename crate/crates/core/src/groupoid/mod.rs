//! The three explicit symplectic groupoid models and their numerical checks.
//!
//! All three share one shape. A base point is `(r, θ)` (called `(x, y)` for
//! the plane), the Poisson structure is `f(r) ∂_r ∧ ∂_θ`, and `φ(r, p)` is the
//! time-`p` flow of `f ∂_r`. An arrow is `(r, θ, p, q)` with
//!
//! ```text
//! s(r, θ, p, q) = (r, θ)
//! t(r, θ, p, q) = (φ(r, p), θ + q f(r))
//! (r, θ, p, q)(r', θ', p', q') = (r, θ, p + p', q + q' ∂_r φ(r, p))
//! (r, θ, p, q)^-1 = (φ(r, p), θ + q f(r), -p, -q / ∂_r φ(r, p))
//! ```
//!
//! | model        | f(r)      | φ(r, p)   | chart            |
//! |--------------|-----------|-----------|------------------|
//! | affine       | r         | r e^p     | plane            |
//! | cylinder-one | r         | r e^p     | r in (-1, 1), θ mod 2π |
//! | cylinder-two | r^2 - 1   | α(r, p)   | r in (-2, 2), θ mod 2π |
//!
//! The product rule is forced by `t(g g') = t(g')` and the flow identity
//! `∂_r φ(r, p) f(r) = f(φ(r, p))`.

mod twist;
mod verify;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::Real;

pub use twist::{ramp, DehnTwist};
pub use verify::{
    verify_alpha_group_law, verify_groupoid_axioms, verify_isotropy, verify_modular_lift,
    verify_symplectic_compatibility, Check, LiftVector, VerificationReport, VerifyOptions,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupoidError {
    #[error("arrows are not composable: |t(g) - s(h)| = {residual:e}")]
    NotComposable { residual: f64 },
    #[error("point with r = {r} lies outside the chart")]
    OutOfDomain { r: f64 },
    #[error("flow leaves the chart: |denominator| = {denominator:e}")]
    DenominatorBlowUp { denominator: f64 },
    #[error("f(r0) = {value:e} is not zero")]
    NotAZero { value: f64 },
    #[error("degenerate zero: |f'(r0)| = {derivative:e}")]
    DegenerateZero { derivative: f64 },
    #[error("profile is not a ramp: {0}")]
    BadRamp(String),
    #[error("unknown model {0:?}; expected affine, cylinder-one or cylinder-two")]
    UnknownModel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    AffinePlane,
    CylinderOne,
    CylinderTwo,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::AffinePlane => "affine",
            ModelKind::CylinderOne => "cylinder-one",
            ModelKind::CylinderTwo => "cylinder-two",
        }
    }

    pub fn all() -> [ModelKind; 3] {
        [ModelKind::AffinePlane, ModelKind::CylinderOne, ModelKind::CylinderTwo]
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = GroupoidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelKind::all()
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GroupoidError::UnknownModel(s.to_string()))
    }
}

/// Deliberate breakage of the product, for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Perturbation {
    #[default]
    None,
    /// `q'' = q`: forget the second arrow's `q`.
    DropQPrime,
    /// Rescale `q'` by `∂_r φ(r', p')` instead of `∂_r φ(r, p)`.
    WrongFlowFactor,
}

/// An arrow `(r, θ, p, q)`.
pub type Arrow<F> = [F; 4];
/// A base point `(r, θ)`.
pub type Base<F> = [F; 2];
pub type Mat4<F> = [[F; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupoidModel<F> {
    pub kind: ModelKind,
    pub perturbation: Perturbation,
    _scalar: std::marker::PhantomData<F>,
}

fn c<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("representable constant")
}

/// Guard on the denominator of `α`.
pub const ALPHA_GUARD: f64 = 1e-9;

/// `α(r, p) = ((r + 1) + (r - 1) e^{2p}) / ((r + 1) - (r - 1) e^{2p})`,
/// the time-`p` flow of `(r^2 - 1) ∂_r`.
pub fn alpha_flow<F: Real>(r: F, p: F) -> Result<F, GroupoidError> {
    let one = F::one();
    let e = (p + p).exp();
    let den = (r + one) - (r - one) * e;
    if den.abs() <= c(ALPHA_GUARD) || !den.is_finite() {
        return Err(GroupoidError::DenominatorBlowUp {
            denominator: den.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(((r + one) + (r - one) * e) / den)
}

/// `∂_r α(r, p) = 4 e^{2p} / D^2`.
fn alpha_dr<F: Real>(r: F, p: F) -> F {
    let one = F::one();
    let e = (p + p).exp();
    let den = (r + one) - (r - one) * e;
    c::<F>(4.0) * e / (den * den)
}

/// Representative of `x` in `(-π, π]`, for comparing angles.
pub fn angle_diff<F: Real>(x: F) -> F {
    let two_pi = F::TAU();
    let mut y = x - two_pi * (x / two_pi).round();
    if y <= -F::PI() {
        y = y + two_pi;
    }
    y
}

/// Representative of `x` in `[0, 2π)`.
pub fn wrap_angle<F: Real>(x: F) -> F {
    let two_pi = F::TAU();
    let y = x - two_pi * (x / two_pi).floor();
    if y >= two_pi {
        F::zero()
    } else {
        y
    }
}

impl<F: Real> GroupoidModel<F> {
    pub fn new(kind: ModelKind) -> Self {
        GroupoidModel {
            kind,
            perturbation: Perturbation::None,
            _scalar: std::marker::PhantomData,
        }
    }

    pub fn affine() -> Self {
        Self::new(ModelKind::AffinePlane)
    }

    pub fn cylinder_one() -> Self {
        Self::new(ModelKind::CylinderOne)
    }

    pub fn cylinder_two() -> Self {
        Self::new(ModelKind::CylinderTwo)
    }

    pub fn perturbed(kind: ModelKind, perturbation: Perturbation) -> Self {
        GroupoidModel {
            perturbation,
            ..Self::new(kind)
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Coordinate names of an arrow.
    pub fn coordinates(&self) -> [&'static str; 4] {
        match self.kind {
            ModelKind::AffinePlane => ["x", "y", "p", "q"],
            _ => ["r", "θ", "p", "q"],
        }
    }

    /// Whether the second base coordinate is an angle.
    pub fn periodic(&self) -> bool {
        self.kind != ModelKind::AffinePlane
    }

    pub fn profile(&self, r: F) -> F {
        match self.kind {
            ModelKind::CylinderTwo => r * r - F::one(),
            _ => r,
        }
    }

    pub fn profile_dr(&self, r: F) -> F {
        match self.kind {
            ModelKind::CylinderTwo => r + r,
            _ => F::one(),
        }
    }

    pub fn in_chart(&self, r: F) -> bool {
        let bound = match self.kind {
            ModelKind::AffinePlane => return r.is_finite(),
            ModelKind::CylinderOne => F::one(),
            ModelKind::CylinderTwo => c(2.0),
        };
        r.abs() < bound
    }

    fn check_chart(&self, r: F) -> Result<(), GroupoidError> {
        if self.in_chart(r) {
            Ok(())
        } else {
            Err(GroupoidError::OutOfDomain {
                r: r.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    /// `φ(r, p)`.
    pub fn flow(&self, r: F, p: F) -> Result<F, GroupoidError> {
        match self.kind {
            ModelKind::CylinderTwo => alpha_flow(r, p),
            _ => Ok(r * p.exp()),
        }
    }

    /// `∂_r φ(r, p)`.
    pub fn flow_dr(&self, r: F, p: F) -> F {
        match self.kind {
            ModelKind::CylinderTwo => alpha_dr(r, p),
            _ => p.exp(),
        }
    }

    fn wrap(&self, theta: F) -> F {
        if self.periodic() {
            wrap_angle(theta)
        } else {
            theta
        }
    }

    pub fn source(&self, g: &Arrow<F>) -> Base<F> {
        [g[0], g[1]]
    }

    pub fn target(&self, g: &Arrow<F>) -> Result<Base<F>, GroupoidError> {
        let [r, theta, p, q] = *g;
        let r1 = self.flow(r, p)?;
        self.check_chart(r1)?;
        Ok([r1, self.wrap(theta + q * self.profile(r))])
    }

    pub fn unit(&self, b: &Base<F>) -> Arrow<F> {
        [b[0], b[1], F::zero(), F::zero()]
    }

    /// Distance between base points, angle-aware on the cylinders.
    pub fn base_distance(&self, a: &Base<F>, b: &Base<F>) -> F {
        let d1 = if self.periodic() {
            angle_diff(a[1] - b[1])
        } else {
            a[1] - b[1]
        };
        (a[0] - b[0]).abs().max(d1.abs())
    }

    /// Largest coordinate difference, angle-aware on the cylinders.
    pub fn arrow_distance(&self, a: &Arrow<F>, b: &Arrow<F>) -> F {
        let base = self.base_distance(&[a[0], a[1]], &[b[0], b[1]]);
        base.max((a[2] - b[2]).abs()).max((a[3] - b[3]).abs())
    }

    /// Product `g h` (first `g`, then `h`), requiring `t(g) = s(h)` to 1e-12.
    pub fn multiply(&self, g: &Arrow<F>, h: &Arrow<F>) -> Result<Arrow<F>, GroupoidError> {
        self.check_chart(g[0])?;
        self.check_chart(h[0])?;
        let tg = self.target(g)?;
        let residual = self.base_distance(&tg, &self.source(h));
        if !(residual <= c(1e-12)) {
            return Err(GroupoidError::NotComposable {
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.multiply_snapped(g, h))
    }

    /// Product with `h`'s base replaced by `t(g)`; only `h`'s `(p, q)` are read.
    pub fn multiply_snapped(&self, g: &Arrow<F>, h: &Arrow<F>) -> Arrow<F> {
        let [r, theta, p, q] = *g;
        let [r1, _, p1, q1] = *h;
        let q2 = match self.perturbation {
            Perturbation::None => q + q1 * self.flow_dr(r, p),
            Perturbation::DropQPrime => q,
            Perturbation::WrongFlowFactor => q + q1 * self.flow_dr(r1, p1),
        };
        [r, theta, p + p1, q2]
    }

    pub fn inverse(&self, g: &Arrow<F>) -> Result<Arrow<F>, GroupoidError> {
        let [r, _, p, q] = *g;
        let [r1, theta1] = self.target(g)?;
        Ok([r1, theta1, -p, -q / self.flow_dr(r, p)])
    }

    /// Poisson matrix of the base, `[[0, f], [-f, 0]]`.
    pub fn base_poisson(&self, b: &Base<F>) -> [[F; 2]; 2] {
        let f = self.profile(b[0]);
        [[F::zero(), f], [-f, F::zero()]]
    }

    /// `Ω = -q f' dr∧dp + dr∧dq - dθ∧dp + f dp∧dq` as `Ω(∂_i, ∂_j)`.
    pub fn omega(&self, g: &Arrow<F>) -> Mat4<F> {
        let [r, _, _, q] = *g;
        let (f, fr) = (self.profile(r), self.profile_dr(r));
        let (o, one) = (F::zero(), F::one());
        let a = q * fr;
        [
            [o, o, -a, one],
            [o, o, -one, o],
            [a, one, o, f],
            [-one, o, -f, o],
        ]
    }

    /// `Π = -f ∂_r∧∂_θ + ∂_r∧∂_q - ∂_θ∧∂_p - q f' ∂_θ∧∂_q` as `Π(dx_i, dx_j)`.
    pub fn pi(&self, g: &Arrow<F>) -> Mat4<F> {
        let [r, _, _, q] = *g;
        let (f, fr) = (self.profile(r), self.profile_dr(r));
        let (o, one) = (F::zero(), F::one());
        let a = q * fr;
        [
            [o, -f, o, one],
            [f, o, -one, -a],
            [o, one, o, o],
            [-one, a, o, o],
        ]
    }

    /// Jacobian of `s`, rows `(r, θ)`.
    pub fn jac_source(&self, _g: &Arrow<F>) -> [[F; 4]; 2] {
        let (o, one) = (F::zero(), F::one());
        [[one, o, o, o], [o, one, o, o]]
    }

    /// Jacobian of `t`: `∂φ/∂p = f(φ)`, `∂(θ + q f)/∂r = q f'`.
    pub fn jac_target(&self, g: &Arrow<F>) -> Result<[[F; 4]; 2], GroupoidError> {
        let [r, _, p, q] = *g;
        let phi = self.flow(r, p)?;
        let o = F::zero();
        Ok([
            [self.flow_dr(r, p), o, self.profile(phi), o],
            [q * self.profile_dr(r), F::one(), o, self.profile(r)],
        ])
    }
}

/// `2π / |f'(r0)|`, with `f'` by central difference of step `h`.
pub fn modular_period_numeric<F: Real>(
    f: impl Fn(F) -> F,
    r0: F,
    h: F,
) -> Result<F, GroupoidError> {
    let value = f(r0);
    if !(value.abs() <= c(1e-10)) {
        return Err(GroupoidError::NotAZero {
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    let d = (f(r0 + h) - f(r0 - h)) / (h + h);
    if !(d.abs() >= c(1e-8)) {
        return Err(GroupoidError::DegenerateZero {
            derivative: d.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(F::TAU() / d.abs())
}
