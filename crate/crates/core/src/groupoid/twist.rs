//! The Dehn twist `Φ(r, θ) = (r, θ + f(r))` of the annulus `1 <= r <= 2`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::verify::{rng_for, Check, VerificationReport, VerifyOptions};
use super::{angle_diff, wrap_angle, GroupoidError};
use crate::Real;

fn c<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("representable constant")
}

fn psi<F: Real>(t: F) -> F {
    if t > F::zero() {
        (-t.recip()).exp()
    } else {
        F::zero()
    }
}

/// Smooth monotone ramp: `0` for `x <= 1`, `2π` for `x >= 2`.
pub fn ramp<F: Real>(x: F) -> F {
    let t = x - F::one();
    let (a, b) = (psi(t), psi(F::one() - t));
    F::TAU() * a / (a + b)
}

type Profile<F> = Arc<dyn Fn(F) -> F + Send + Sync>;

#[derive(Clone)]
pub struct DehnTwist<F> {
    profile: Profile<F>,
    power: i32,
}

impl<F> fmt::Debug for DehnTwist<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DehnTwist").field("power", &self.power).finish()
    }
}

impl<F: Real> DehnTwist<F> {
    /// The twist built from [`ramp`].
    pub fn standard() -> Self {
        DehnTwist {
            profile: Arc::new(ramp),
            power: 1,
        }
    }

    /// Checks `f = 0` on `x <= 1`, `f = 2π` on `x >= 2` and `f' >= 0` on a grid.
    pub fn new(profile: impl Fn(F) -> F + Send + Sync + 'static) -> Result<Self, GroupoidError> {
        let eps: F = c(1e-12);
        let mut prev = F::neg_infinity();
        for i in 0..=600 {
            let x: F = c(i as f64 * 0.005);
            let y = profile(x);
            if x <= F::one() && y.abs() > eps {
                return Err(GroupoidError::BadRamp(format!("f({x}) = {y}, expected 0")));
            }
            if x >= c(2.0) && (y - F::TAU()).abs() > eps {
                return Err(GroupoidError::BadRamp(format!("f({x}) = {y}, expected 2π")));
            }
            if y < prev - eps {
                return Err(GroupoidError::BadRamp(format!("decreasing near {x}")));
            }
            prev = y;
        }
        Ok(DehnTwist {
            profile: Arc::new(profile),
            power: 1,
        })
    }

    /// The twist with profile `k f`.
    pub fn power(&self, k: i32) -> Self {
        DehnTwist {
            profile: self.profile.clone(),
            power: self.power * k,
        }
    }

    pub fn profile(&self, r: F) -> F {
        c::<F>(self.power as f64) * (self.profile)(r)
    }

    /// Unwrapped angle, for differentiation.
    pub fn apply_lift(&self, r: F, theta: F) -> (F, F) {
        (r, theta + self.profile(r))
    }

    /// `(r, θ + f(r) mod 2π)`.
    pub fn apply(&self, r: F, theta: F) -> (F, F) {
        let (r, t) = self.apply_lift(r, theta);
        (r, wrap_angle(t))
    }

    /// Boundary triviality and `Φ^k = twist(k f)` to `opts.tol`; unit
    /// Jacobian determinant by central differences of step `opts.fd_step`
    /// to `opts.fd_tol`.
    pub fn verify_twist(&self, opts: &VerifyOptions) -> VerificationReport {
        let h: F = c(opts.fd_step);
        let mut maxima = [0f64; 3];
        let to64 = |x: F| x.to_f64().filter(|v| !v.is_nan()).unwrap_or(f64::INFINITY);
        let per_sample: Vec<[f64; 3]> = (0..opts.samples)
            .map(|i| {
                let mut rng = rng_for(opts.seed, i);
                let theta: F = c(rng.gen_range(0.0..std::f64::consts::TAU));

                let rb: F = if rng.gen_bool(0.5) {
                    c(rng.gen_range(0.5..=1.0))
                } else {
                    c(rng.gen_range(2.0..=2.5))
                };
                let (r1, t1) = self.apply(rb, theta);
                let boundary = to64((r1 - rb).abs().max(angle_diff(t1 - theta).abs()));

                let r: F = c(rng.gen_range(0.5..2.5));
                let d_r = |dr: F, dt: F| self.apply_lift(r + dr, theta + dt);
                let (ru, tu) = d_r(h, F::zero());
                let (rd, td) = d_r(-h, F::zero());
                let (rv, tv) = d_r(F::zero(), h);
                let (rw, tw) = d_r(F::zero(), -h);
                let two_h = h + h;
                let det = ((ru - rd) / two_h) * ((tv - tw) / two_h)
                    - ((rv - rw) / two_h) * ((tu - td) / two_h);
                let jac = to64((det - F::one()).abs());

                let k = rng.gen_range(2..=4);
                let (mut rk, mut tk) = (r, theta);
                for _ in 0..k {
                    (rk, tk) = self.apply(rk, tk);
                }
                let (re, te) = self.power(k).apply(r, theta);
                let power = to64((rk - re).abs().max(angle_diff(tk - te).abs()));
                [boundary, jac, power]
            })
            .collect();
        for s in per_sample {
            for (m, x) in maxima.iter_mut().zip(s) {
                *m = m.max(x);
            }
        }
        let mut report = VerificationReport {
            model: "dehn-twist".into(),
            checks: Vec::new(),
            conventions: Default::default(),
        };
        for (name, (value, tol)) in ["boundary_identity", "unit_jacobian", "power_additivity"]
            .iter()
            .zip([(maxima[0], opts.tol), (maxima[1], opts.fd_tol), (maxima[2], opts.tol)])
        {
            report.checks.push(Check {
                name: name.to_string(),
                samples: opts.samples,
                max_residual: value,
                tol,
                pass: value <= tol,
            });
        }
        report
    }
}
