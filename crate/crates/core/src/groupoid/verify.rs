//! Randomized checks of the groupoid models.
//!
//! Sample `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so
//! a report depends only on the options, never on the thread schedule.
//! Residuals are reduced by taking maxima, with NaN counted as infinite.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{alpha_flow, angle_diff, Arrow, Base, GroupoidModel, Mat4, ModelKind};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub tol: f64,
    /// Tolerance for the finite difference `dΩ = 0` check.
    pub fd_tol: f64,
    pub fd_step: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 1000,
            tol: 1e-9,
            fd_tol: 1e-6,
            fd_step: 1e-5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub model: String,
    pub checks: Vec<Check>,
    /// Signs fixed empirically during the run, e.g. `sigma` in `Ω Π = σ I`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub conventions: BTreeMap<String, i32>,
}

impl VerificationReport {
    fn new(model: &str) -> Self {
        VerificationReport {
            model: model.to_string(),
            checks: Vec::new(),
            conventions: BTreeMap::new(),
        }
    }

    fn push(&mut self, name: &str, samples: usize, max_residual: f64, tol: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            samples,
            max_residual,
            tol,
            pass: max_residual <= tol,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends the checks of `other`.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.checks.extend(other.checks);
        self.conventions.extend(other.conventions);
        self
    }
}

pub(super) fn rng_for(seed: u64, sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample as u64);
    rng
}

fn to_f64<F: Real>(x: F) -> f64 {
    match x.to_f64() {
        Some(v) if !v.is_nan() => v,
        _ => f64::INFINITY,
    }
}

fn c<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("representable constant")
}

/// Runs `f` on every sample and returns the per-slot maxima.
fn max_over_samples<Fn_>(samples: usize, slots: usize, seed: u64, f: Fn_) -> Vec<f64>
where
    Fn_: Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
{
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let mut v = f(&mut rng);
            for x in &mut v {
                if x.is_nan() {
                    *x = f64::INFINITY;
                }
            }
            v
        })
        .reduce(
            || vec![0.0; slots],
            |a, b| a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect(),
        )
}

/// Open leaves (2-dimensional symplectic leaves) and zero curves, with margins.
fn leaves(kind: ModelKind) -> (&'static [(f64, f64)], &'static [f64]) {
    match kind {
        ModelKind::AffinePlane => (&[(-2.0, -0.1), (0.1, 2.0)], &[0.0]),
        ModelKind::CylinderOne => (&[(-0.95, -0.05), (0.05, 0.95)], &[0.0]),
        ModelKind::CylinderTwo => (&[(-1.95, -1.05), (-0.95, 0.95), (1.05, 1.95)], &[-1.0, 1.0]),
    }
}

/// Flow time from `r` to `r1`, both in the same open leaf.
fn flow_time(kind: ModelKind, r: f64, r1: f64) -> f64 {
    match kind {
        ModelKind::CylinderTwo => 0.5 * (((r1 - 1.0) * (r + 1.0)) / ((r1 + 1.0) * (r - 1.0))).ln(),
        _ => (r1 / r).ln(),
    }
}

/// Where in the base a chain of arrows lives.
#[derive(Debug, Clone, Copy)]
enum Stratum {
    Leaf(f64, f64),
    Zero(f64),
}

struct Sampler<'a, F> {
    m: &'a GroupoidModel<F>,
}

impl<'a, F: Real> Sampler<'a, F> {
    fn stratum(&self, rng: &mut ChaCha8Rng, allow_zero: bool) -> Stratum {
        let (open, zeros) = leaves(self.m.kind);
        if allow_zero && rng.gen_bool(0.1) {
            Stratum::Zero(zeros[rng.gen_range(0..zeros.len())])
        } else {
            let (a, b) = open[rng.gen_range(0..open.len())];
            Stratum::Leaf(a, b)
        }
    }

    fn start(&self, rng: &mut ChaCha8Rng, stratum: Stratum) -> Base<F> {
        let r = match stratum {
            Stratum::Leaf(a, b) => rng.gen_range(a..b),
            Stratum::Zero(z) => z,
        };
        let theta = if self.m.periodic() {
            rng.gen_range(0.0..std::f64::consts::TAU)
        } else {
            rng.gen_range(-3.0..3.0)
        };
        [c(r), c(theta)]
    }

    /// An arrow out of `b` landing in the same stratum.
    fn arrow(&self, rng: &mut ChaCha8Rng, stratum: Stratum, b: Base<F>) -> Arrow<F> {
        let p = match stratum {
            Stratum::Leaf(lo, hi) => {
                let r = to_f64(b[0]).clamp(lo, hi);
                flow_time(self.m.kind, r, rng.gen_range(lo..hi))
            }
            Stratum::Zero(_) => rng.gen_range(-1.0..1.0),
        };
        let q = rng.gen_range(-2.0..2.0);
        [b[0], b[1], c(p), c(q)]
    }

    /// `n` composable arrows.
    fn chain(&self, rng: &mut ChaCha8Rng, n: usize, allow_zero: bool) -> Vec<Arrow<F>> {
        let stratum = self.stratum(rng, allow_zero);
        let mut b = self.start(rng, stratum);
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let g = self.arrow(rng, stratum, b);
            b = self.m.target(&g).expect("sampled arrows stay in the chart");
            out.push(g);
        }
        out
    }
}

/// Associativity, source/target of products, unit and inverse laws on
/// random composable triples.
pub fn verify_groupoid_axioms<F: Real>(m: &GroupoidModel<F>, opts: &VerifyOptions) -> VerificationReport {
    const NAMES: [&str; 8] = [
        "composability",
        "associativity",
        "source_of_product",
        "target_of_product",
        "left_unit",
        "right_unit",
        "right_inverse",
        "left_inverse",
    ];
    let sampler = Sampler { m };
    let inf = f64::INFINITY;
    let maxima = max_over_samples(opts.samples, NAMES.len(), opts.seed, |rng| {
        let g = sampler.chain(rng, 3, true);
        let (g1, g2, g3) = (&g[0], &g[1], &g[2]);
        let mul = |a: &Arrow<F>, b: &Arrow<F>| m.multiply_snapped(a, b);
        let t = |a: &Arrow<F>| m.target(a).ok();
        let comp = [t(g1).map(|b| m.base_distance(&b, &m.source(g2))), t(g2).map(|b| m.base_distance(&b, &m.source(g3)))];
        let comp = comp.iter().map(|x| x.map_or(inf, to_f64)).fold(0.0, f64::max);

        let g12 = mul(g1, g2);
        let assoc = m.arrow_distance(&mul(&g12, g3), &mul(g1, &mul(g2, g3)));
        let src = m.base_distance(&m.source(&g12), &m.source(g1));
        let tgt = match (t(&g12), t(g2)) {
            (Some(a), Some(b)) => to_f64(m.base_distance(&a, &b)),
            _ => inf,
        };
        let left = m.arrow_distance(&mul(&m.unit(&m.source(g1)), g1), g1);
        let right = match t(g1) {
            Some(b) => to_f64(m.arrow_distance(&mul(g1, &m.unit(&b)), g1)),
            None => inf,
        };
        let (rinv, linv) = match (m.inverse(g1), t(g1)) {
            (Ok(inv), Some(b)) => (
                to_f64(m.arrow_distance(&mul(g1, &inv), &m.unit(&m.source(g1)))),
                to_f64(m.arrow_distance(&mul(&inv, g1), &m.unit(&b))),
            ),
            _ => (inf, inf),
        };
        vec![comp, to_f64(assoc), to_f64(src), tgt, to_f64(left), right, rinv, linv]
    });
    let mut report = VerificationReport::new(m.name());
    for (name, r) in NAMES.iter().zip(maxima) {
        let tol = if *name == "composability" { 1e-12 } else { opts.tol };
        report.push(name, opts.samples, r, tol);
    }
    report
}

fn mat_mul<F: Real>(a: &Mat4<F>, b: &Mat4<F>) -> Mat4<F> {
    let mut out = [[F::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).fold(F::zero(), |acc, k| acc + a[i][k] * b[k][j]);
        }
    }
    out
}

/// `J A J^T` for a 2x4 Jacobian.
fn push_bivector<F: Real>(j: &[[F; 4]; 2], a: &Mat4<F>) -> [[F; 2]; 2] {
    let mut out = [[F::zero(); 2]; 2];
    for (x, row) in out.iter_mut().enumerate() {
        for (y, v) in row.iter_mut().enumerate() {
            for k in 0..4 {
                for l in 0..4 {
                    *v = *v + j[x][k] * a[k][l] * j[y][l];
                }
            }
        }
    }
    out
}

/// `J^T W J` for a 2x4 Jacobian and a 2-form `W` on the base.
fn pull_form<F: Real>(j: &[[F; 4]; 2], w: &[[F; 2]; 2]) -> Mat4<F> {
    let mut out = [[F::zero(); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            for a in 0..2 {
                for b in 0..2 {
                    *v = *v + j[a][i] * w[a][b] * j[b][k];
                }
            }
        }
    }
    out
}

fn max_abs<F: Real, const N: usize>(rows: &[[F; N]]) -> F {
    rows.iter()
        .flat_map(|r| r.iter())
        .fold(F::zero(), |m, x| if x.is_nan() { F::infinity() } else { m.max(x.abs()) })
}

/// Leaf form `ω = dr ∧ dθ / f(r)`.
fn leaf_form<F: Real>(m: &GroupoidModel<F>, b: &Base<F>) -> [[F; 2]; 2] {
    let w = F::one() / m.profile(b[0]);
    [[F::zero(), w], [-w, F::zero()]]
}

fn sign_of<F: Real>(x: F) -> i32 {
    if x < F::zero() {
        -1
    } else {
        1
    }
}

/// (a) `Ω Π = σ I`; (b) `Ω = t*ω - s*ω` on the leaves; (c) `dΩ = 0` by
/// central differences; (d) `s` and `t` push `Π` to `±π` with opposite signs.
pub fn verify_symplectic_compatibility<F: Real>(
    m: &GroupoidModel<F>,
    opts: &VerifyOptions,
) -> VerificationReport {
    let sampler = Sampler { m };
    // signs fixed once, at a leaf point drawn from sample 0
    let reference = sampler.chain(&mut rng_for(opts.seed, 0), 1, false)[0];
    let sigma = sign_of(mat_mul(&m.omega(&reference), &m.pi(&reference))[0][0]);
    let pushed = push_bivector(&m.jac_source(&reference), &m.pi(&reference));
    let source_sign = sign_of(pushed[0][1] / m.base_poisson(&m.source(&reference))[0][1]);

    let h: F = c(opts.fd_step);
    let inf = f64::INFINITY;
    let maxima = max_over_samples(opts.samples, 5, opts.seed, |rng| {
        let g = sampler.chain(rng, 1, true)[0];
        let (s, sg) = (c::<F>(sigma as f64), c::<F>(source_sign as f64));

        let mut prod = mat_mul(&m.omega(&g), &m.pi(&g));
        for (i, row) in prod.iter_mut().enumerate() {
            row[i] = row[i] - s;
        }
        let a = to_f64(max_abs(&prod));

        let b = if m.profile(g[0]).abs() > c(1e-3) {
            match (m.target(&g), m.jac_target(&g)) {
                (Ok(tb), Ok(jt)) => {
                    let js = m.jac_source(&g);
                    let pt = pull_form(&jt, &leaf_form(m, &tb));
                    let ps = pull_form(&js, &leaf_form(m, &m.source(&g)));
                    let w = m.omega(&g);
                    let mut d = [[F::zero(); 4]; 4];
                    for i in 0..4 {
                        for j in 0..4 {
                            d[i][j] = pt[i][j] - ps[i][j] - w[i][j];
                        }
                    }
                    to_f64(max_abs(&d))
                }
                _ => inf,
            }
        } else {
            0.0
        };

        // ∂_k Ω_ij by central differences
        let mut grad = [[[F::zero(); 4]; 4]; 4];
        for (k, slot) in grad.iter_mut().enumerate() {
            let (mut up, mut down) = (g, g);
            up[k] = up[k] + h;
            down[k] = down[k] - h;
            let (wu, wd) = (m.omega(&up), m.omega(&down));
            for i in 0..4 {
                for j in 0..4 {
                    slot[i][j] = (wu[i][j] - wd[i][j]) / (h + h);
                }
            }
        }
        let mut dw = F::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    let v = grad[i][j][k] + grad[j][k][i] + grad[k][i][j];
                    dw = dw.max(v.abs());
                }
            }
        }

        let pi = m.pi(&g);
        let ps = push_bivector(&m.jac_source(&g), &pi);
        let base_s = m.base_poisson(&m.source(&g));
        let ds = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .fold(F::zero(), |acc, (i, j)| acc.max((ps[i][j] - sg * base_s[i][j]).abs()));
        let dt = match (m.target(&g), m.jac_target(&g)) {
            (Ok(tb), Ok(jt)) => {
                let pt = push_bivector(&jt, &pi);
                let base_t = m.base_poisson(&tb);
                to_f64(
                    (0..2)
                        .flat_map(|i| (0..2).map(move |j| (i, j)))
                        .fold(F::zero(), |acc, (i, j)| acc.max((pt[i][j] + sg * base_t[i][j]).abs())),
                )
            }
            _ => inf,
        };
        vec![a, b, to_f64(dw), to_f64(ds), dt]
    });
    let mut report = VerificationReport::new(m.name());
    report.push("omega_pi_inverse", opts.samples, maxima[0], opts.tol);
    report.push("pullback", opts.samples, maxima[1], opts.tol);
    report.push("d_omega_closed", opts.samples, maxima[2], opts.fd_tol);
    report.push("source_poisson", opts.samples, maxima[3], opts.tol);
    report.push("target_anti_poisson", opts.samples, maxima[4], opts.tol);
    report.conventions.insert("sigma".into(), sigma);
    report.conventions.insert("source_sign".into(), source_sign);
    report
}

/// Which Hamiltonian vector field to push down to the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftVector {
    /// `H_p = Π(dp, ·)`.
    Hp,
    /// `H_q = Π(dq, ·)`, which does not project to the modular field.
    Hq,
}

/// Both moment maps send `H_p` to `∂_θ` (`∂_y` on the plane).
pub fn verify_modular_lift<F: Real>(
    m: &GroupoidModel<F>,
    lift: LiftVector,
    opts: &VerifyOptions,
) -> VerificationReport {
    let sampler = Sampler { m };
    let row = match lift {
        LiftVector::Hp => 2,
        LiftVector::Hq => 3,
    };
    let maxima = max_over_samples(opts.samples, 2, opts.seed, |rng| {
        let g = sampler.chain(rng, 1, true)[0];
        let hv = m.pi(&g)[row];
        let expect = [F::zero(), F::one()];
        let push = |j: &[[F; 4]; 2]| {
            (0..2).fold(F::zero(), |acc, a| {
                let v = (0..4).fold(F::zero(), |s, k| s + j[a][k] * hv[k]);
                acc.max((v - expect[a]).abs())
            })
        };
        let s = push(&m.jac_source(&g));
        let t = m.jac_target(&g).map_or(f64::INFINITY, |j| to_f64(push(&j)));
        vec![to_f64(s), t]
    });
    let mut report = VerificationReport::new(m.name());
    report.push("source_pushforward", opts.samples, maxima[0], opts.tol);
    report.push("target_pushforward", opts.samples, maxima[1], opts.tol);
    report
}

/// `α(α(r, p), p') = α(r, p + p')`, `α(r, 0) = r` and `α(±1, p) = ±1`.
pub fn verify_alpha_group_law<F: Real>(opts: &VerifyOptions) -> VerificationReport {
    let m = GroupoidModel::<F>::cylinder_two();
    let (open, _) = leaves(ModelKind::CylinderTwo);
    let inf = f64::INFINITY;
    let maxima = max_over_samples(opts.samples, 3, opts.seed, |rng| {
        let (lo, hi) = open[rng.gen_range(0..open.len())];
        let r: f64 = rng.gen_range(lo..hi);
        let r1: f64 = rng.gen_range(lo..hi);
        let r2: f64 = rng.gen_range(lo..hi);
        let (p, p1) = (
            c::<F>(flow_time(ModelKind::CylinderTwo, r, r1)),
            c::<F>(flow_time(ModelKind::CylinderTwo, r1, r2)),
        );
        let r = c::<F>(r);
        let law = match (alpha_flow(r, p).and_then(|x| alpha_flow(x, p1)), alpha_flow(r, p + p1)) {
            (Ok(a), Ok(b)) => to_f64((a - b).abs()),
            _ => inf,
        };
        let id = alpha_flow(r, F::zero()).map_or(inf, |a| to_f64((a - r).abs()));
        let q: F = c(rng.gen_range(-3.0..3.0));
        let fixed = [F::one(), -F::one()]
            .iter()
            .map(|&z| alpha_flow(z, q).map_or(inf, |a| to_f64((a - z).abs())))
            .fold(0.0, f64::max);
        vec![law, id, fixed]
    });
    let mut report = VerificationReport::new(m.name());
    report.push("alpha_group_law", opts.samples, maxima[0], opts.tol);
    report.push("alpha_identity", opts.samples, maxima[1], opts.tol);
    report.push("alpha_fixed_points", opts.samples, maxima[2], opts.tol);
    report
}

/// Isotropy of the one-curve cylinder off the zero curve: the arrows
/// `(r, θ, 0, 2πk/r)` fix their base point, and an arrow with `p = 0` moves
/// its base point exactly by `q r` mod `2π`.
pub fn verify_isotropy<F: Real>(opts: &VerifyOptions) -> VerificationReport {
    let m = GroupoidModel::<F>::cylinder_one();
    let sampler = Sampler { m: &m };
    let inf = f64::INFINITY;
    let maxima = max_over_samples(opts.samples, 2, opts.seed, |rng| {
        let stratum = sampler.stratum(rng, false);
        let b = sampler.start(rng, stratum);
        let k: i32 = rng.gen_range(-5..=5);
        let g = [b[0], b[1], F::zero(), c::<F>(k as f64) * F::TAU() / b[0]];
        let fixes = m.target(&g).map_or(inf, |t| to_f64(m.base_distance(&t, &b)));
        let q: F = c(rng.gen_range(-20.0..20.0));
        let h = [b[0], b[1], F::zero(), q];
        let moves = m.target(&h).map_or(inf, |t| {
            to_f64((m.base_distance(&t, &b) - angle_diff(q * b[0]).abs()).abs())
        });
        vec![fixes, moves]
    });
    let mut report = VerificationReport::new(m.name());
    report.push("isotropy_fixes_base", opts.samples, maxima[0], opts.tol);
    report.push("isotropy_is_quantized", opts.samples, maxima[1], opts.tol);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::Perturbation;

    fn opts(samples: usize) -> VerifyOptions {
        VerifyOptions {
            samples,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn all_models_pass_axioms() {
        for kind in ModelKind::all() {
            let r = verify_groupoid_axioms(&GroupoidModel::<f64>::new(kind), &opts(300));
            assert!(r.passed(), "{r:#?}");
        }
    }

    #[test]
    fn all_models_pass_symplectic_checks() {
        for kind in ModelKind::all() {
            let r = verify_symplectic_compatibility(&GroupoidModel::<f64>::new(kind), &opts(300));
            assert!(r.passed(), "{r:#?}");
            assert_eq!(r.conventions["sigma"], -1);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let m = GroupoidModel::<f64>::cylinder_two();
        let a = verify_groupoid_axioms(&m, &opts(200));
        let b = verify_groupoid_axioms(&m, &opts(200));
        assert_eq!(a, b);
        let c = verify_groupoid_axioms(&m, &VerifyOptions { seed: 1, ..opts(200) });
        assert_ne!(a.checks[1].max_residual, c.checks[1].max_residual);
    }

    #[test]
    fn perturbations_are_caught() {
        let m = GroupoidModel::<f64>::perturbed(ModelKind::AffinePlane, Perturbation::WrongFlowFactor);
        let r = verify_groupoid_axioms(&m, &opts(100));
        assert!(!r.check("associativity").unwrap().pass);
        let m = GroupoidModel::<f64>::perturbed(ModelKind::AffinePlane, Perturbation::DropQPrime);
        let r = verify_groupoid_axioms(&m, &opts(100));
        assert!(!r.passed());
        assert!(!r.check("target_of_product").unwrap().pass);
    }

    #[test]
    fn modular_lift_and_control() {
        let m = GroupoidModel::<f64>::affine();
        assert!(verify_modular_lift(&m, LiftVector::Hp, &opts(200)).passed());
        assert!(!verify_modular_lift(&m, LiftVector::Hq, &opts(200)).passed());
    }

    #[test]
    fn alpha_and_isotropy() {
        assert!(verify_alpha_group_law::<f64>(&VerifyOptions { tol: 1e-12, ..opts(500) }).passed());
        assert!(verify_isotropy::<f64>(&opts(300)).passed());
    }
}
