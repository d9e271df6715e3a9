//! Numeric layer: the integral forms of the star-triangle identities and
//! the Fourier/chain-rule constants, checked against closed-form Gamma
//! expressions. Monte-Carlo integrals use a seeded, sharded, importance-
//! sampled estimator; the oscillatory Fourier integral and the plane
//! star-triangle use deterministic quadrature.

use num_complex::Complex64;

use crate::error::CheckError;
use crate::gammafn::gamma;
use crate::rng::SeededRng;
use crate::startriangle::NilpotentA;

pub type FloatComplex = Complex64;

/// Monte-Carlo configuration. Shard count is fixed so results depend only
/// on (seed, samples), not on thread scheduling.
#[derive(Clone, Copy, Debug)]
pub struct MCConfig {
    pub samples: u64,
    pub seed: u64,
}

impl MCConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self { samples, seed }
    }
}

pub const SHARDS: u64 = 64;

/// Numeric integral estimate with statistical (or numerical) error.
#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub estimate: FloatComplex,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Outcome of a numeric identity check.
#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub result: QuadratureResult,
    pub target: FloatComplex,
    pub rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn finish_check(result: QuadratureResult, target: FloatComplex, tol: f64) -> NumericCheck {
    let rel_error = (result.estimate - target).norm() / target.norm();
    // A pass demands both closeness and an error bar smaller than half the
    // tolerance.
    let passed = rel_error <= tol && result.std_error < 0.5 * tol * target.norm();
    NumericCheck { result, target, rel_error, tolerance: tol, passed }
}

// ---------------------------------------------------------------------
// Importance-sampling mixture
// ---------------------------------------------------------------------

/// One radially symmetric heavy-tailed proposal: density ~ r^(d-1-s) inside
/// radius `scale`, ~ r^(-1-t) outside, around `center`.
#[derive(Clone, Debug)]
pub struct RadialComponent {
    pub center: Vec<f64>,
    pub near_exp: f64,
    pub far_exp: f64,
    pub scale: f64,
    pub weight: f64,
}

pub struct Mixture {
    pub dim: usize,
    pub components: Vec<RadialComponent>,
}

fn sphere_area(d: usize) -> f64 {
    match d {
        2 => 2.0 * std::f64::consts::PI,
        4 => 2.0 * std::f64::consts::PI * std::f64::consts::PI,
        _ => panic!("unsupported dimension {d}"),
    }
}

impl Mixture {
    pub fn new(dim: usize, components: Vec<RadialComponent>) -> Self {
        let total: f64 = components.iter().map(|c| c.weight).sum();
        assert!((total - 1.0).abs() < 1e-12, "weights must sum to 1");
        for c in &components {
            assert!(c.near_exp < dim as f64, "near exponent must be < d");
            assert!(c.far_exp > 0.0, "far exponent must be positive");
        }
        Self { dim, components }
    }

    fn component_norms(&self, c: &RadialComponent) -> (f64, f64) {
        let d = self.dim as f64;
        let z1 = c.scale.powf(d - c.near_exp) / (d - c.near_exp);
        let z2 = c.scale.powf(d - c.near_exp) / c.far_exp;
        (z1, z2)
    }

    pub fn sample(&self, rng: &mut SeededRng, out: &mut [f64]) {
        // pick a component
        let mut pick = rng.uniform();
        let mut idx = 0;
        for (i, c) in self.components.iter().enumerate() {
            if pick < c.weight || i == self.components.len() - 1 {
                idx = i;
                break;
            }
            pick -= c.weight;
        }
        let c = &self.components[idx];
        let (z1, z2) = self.component_norms(c);
        let d = self.dim as f64;
        let u = rng.uniform().max(1e-300);
        let r = if rng.uniform() < z1 / (z1 + z2) {
            c.scale * u.powf(1.0 / (d - c.near_exp))
        } else {
            c.scale * u.powf(-1.0 / c.far_exp)
        };
        // uniform direction
        let mut norm2 = 0.0;
        for o in out.iter_mut() {
            *o = rng.normal();
            norm2 += *o * *o;
        }
        let norm = norm2.sqrt().max(1e-300);
        for (o, cc) in out.iter_mut().zip(&c.center) {
            *o = cc + r * (*o / norm);
        }
    }

    pub fn pdf(&self, z: &[f64]) -> f64 {
        let d = self.dim as f64;
        let area = sphere_area(self.dim);
        let mut q = 0.0;
        for c in &self.components {
            let (z1, z2) = self.component_norms(c);
            let mut r2 = 0.0;
            for (zi, ci) in z.iter().zip(&c.center) {
                r2 += (zi - ci) * (zi - ci);
            }
            let r = r2.sqrt().max(1e-300);
            let f = if r <= c.scale {
                r.powf(d - 1.0 - c.near_exp)
            } else {
                c.scale.powf(d - 1.0 - c.near_exp) * (r / c.scale).powf(-1.0 - c.far_exp)
            } / (z1 + z2);
            q += c.weight * f / (area * r.powf(d - 1.0));
        }
        q
    }
}

/// Importance-sampled Monte-Carlo integral over R^d with fixed sharding and
/// inverse-variance shard combination; deterministic given (seed, samples).
pub fn integrate_mc(
    mixture: &Mixture,
    f: &dyn Fn(&[f64]) -> Complex64,
    cfg: &MCConfig,
) -> QuadratureResult {
    let per_shard = (cfg.samples / SHARDS).max(1);
    let mut means = Vec::with_capacity(SHARDS as usize);
    let mut vars = Vec::with_capacity(SHARDS as usize);
    let mut z = vec![0.0; mixture.dim];
    for shard in 0..SHARDS {
        let mut rng = SeededRng::new(SeededRng::shard_seed(cfg.seed, shard));
        let mut sum = Complex64::new(0.0, 0.0);
        let mut sum_re2 = 0.0;
        let mut sum_im2 = 0.0;
        for _ in 0..per_shard {
            mixture.sample(&mut rng, &mut z);
            let q = mixture.pdf(&z);
            let w = if q > 0.0 { f(&z) / q } else { Complex64::new(0.0, 0.0) };
            sum += w;
            sum_re2 += w.re * w.re;
            sum_im2 += w.im * w.im;
        }
        let nn = per_shard as f64;
        let mean = sum / nn;
        let var_re = (sum_re2 / nn - mean.re * mean.re).max(0.0);
        let var_im = (sum_im2 / nn - mean.im * mean.im).max(0.0);
        means.push(mean);
        vars.push((var_re + var_im) / nn);
    }
    // Inverse-variance weighting across shards.
    let mut wsum = 0.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, v) in means.iter().zip(&vars) {
        let w = 1.0 / (v + 1e-300);
        wsum += w;
        acc += *m * w;
    }
    QuadratureResult {
        estimate: acc / wsum,
        std_error: (1.0 / wsum).sqrt(),
        samples: per_shard * SHARDS,
        seed: cfg.seed,
    }
}

// ---------------------------------------------------------------------
// Gauss-Legendre and Bessel helpers
// ---------------------------------------------------------------------

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            // Legendre P_n(x) and derivative by recurrence.
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                let dpf = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                nodes[i] = -x;
                nodes[n - 1 - i] = x;
                let w = 2.0 / ((1.0 - x * x) * dpf * dpf);
                weights[i] = w;
                weights[n - 1 - i] = w;
                break;
            }
        }
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre integral of f over [a, b] with `panels` panels
/// of `order` nodes.
pub fn integrate_panels(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (x, w) in nodes.iter().zip(&weights) {
            acc += w * f(mid + 0.5 * h * x);
        }
    }
    acc * 0.5 * h
}

/// Bessel J0, classic rational approximations (|error| < 2e-8).
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 8.0 {
        let y = x * x;
        let p1 = 57568490574.0 + y * (-13362590354.0 + y * (651619640.7 + y * (-11214424.18 + y * (77392.33017 + y * (-184.9052456)))));
        let p2 = 57568490411.0 + y * (1029532985.0 + y * (9494680.718 + y * (59272.64853 + y * (267.8532712 + y))));
        p1 / p2
    } else {
        let z = 8.0 / ax;
        let y = z * z;
        let xx = ax - 0.785398164;
        let p1 = 1.0 + y * (-0.1098628627e-2 + y * (0.2734510407e-4 + y * (-0.2073370639e-5 + y * 0.2093887211e-6)));
        let p2 = -0.1562499995e-1 + y * (0.1430488765e-3 + y * (-0.6911147651e-5 + y * (0.7621095161e-6 + y * (-0.934935152e-7))));
        (2.0 / (std::f64::consts::PI * ax)).sqrt() * (xx.cos() * p1 - z * xx.sin() * p2)
    }
}

/// Bessel J1, classic rational approximations (|error| < 2e-8).
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let val = if ax < 8.0 {
        let y = x * x;
        let p1 = x * (72362614232.0 + y * (-7895059235.0 + y * (242396853.1 + y * (-2972611.439 + y * (15704.48260 + y * (-30.16036606))))));
        let p2 = 144725228442.0 + y * (2300535178.0 + y * (18583304.74 + y * (99447.43394 + y * (376.9991397 + y))));
        return p1 / p2;
    } else {
        let z = 8.0 / ax;
        let y = z * z;
        let xx = ax - 2.356194491;
        let p1 = 1.0 + y * (0.183105e-2 + y * (-0.3516396496e-4 + y * (0.2457520174e-5 + y * (-0.240337019e-6))));
        let p2 = 0.04687499995 + y * (-0.2002690873e-3 + y * (0.8449199096e-5 + y * (-0.88228987e-6 + y * 0.105787412e-6)));
        (2.0 / (std::f64::consts::PI * ax)).sqrt() * (xx.cos() * p1 - z * xx.sin() * p2)
    };
    if x < 0.0 {
        -val
    } else {
        val
    }
}

// ---------------------------------------------------------------------
// Fourier constant
// ---------------------------------------------------------------------

/// Numeric check of the Fourier transform of a pure power:
/// integral over R^n of exp(-i y.p) / y^(2(n/2 - alpha)) at |p| = 1 equals
/// a(alpha) = pi^(n/2) 4^alpha Gamma(alpha)/Gamma(n/2 - alpha).
///
/// The angular integral is exact (Bessel kernel); the conditionally
/// convergent radial integral is Abel-regularized with exp(-eps r) and
/// extrapolated to eps = 0 (the regularized integral is analytic in eps).
pub fn fourier_constant_check(n: usize, alpha: f64, tol: f64) -> Result<NumericCheck, CheckError> {
    if !(n == 2 || n == 4) {
        return Err(CheckError::Unsupported("fourier check runs at n in {2,4}".into()));
    }
    if !(alpha > 0.0 && alpha < n as f64 / 2.0) {
        return Err(CheckError::Contract(format!(
            "alpha = {alpha} outside the convergence window (0, n/2)"
        )));
    }
    let pi = std::f64::consts::PI;
    let target = pi.powf(n as f64 / 2.0) * 4f64.powf(alpha) * gamma(alpha)?
        / gamma(n as f64 / 2.0 - alpha)?;

    let radial = |r: f64| -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        match n {
            2 => 2.0 * pi * r.powf(2.0 * alpha - 1.0) * bessel_j0(r),
            _ => 4.0 * pi * pi * r.powf(2.0 * alpha - 2.0) * bessel_j1(r),
        }
    };
    let damped = |eps: f64, panels_per_unit: f64| -> f64 {
        let rmax = (40.0 / eps).min(4000.0);
        let panels = (rmax * panels_per_unit).ceil() as usize;
        integrate_panels(&|r| radial(r) * (-eps * r).exp(), 0.0, rmax, panels, 8)
    };
    let eps_set = [0.16, 0.08, 0.04, 0.02, 0.01];
    let coarse: Vec<f64> = eps_set.iter().map(|&e| damped(e, 2.0)).collect();
    let fine: Vec<f64> = eps_set.iter().map(|&e| damped(e, 4.0)).collect();
    let quad_err = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    // Neville extrapolation to eps = 0.
    let extrapolate = |vals: &[f64], k: usize| -> f64 {
        let mut t: Vec<f64> = vals[..k].to_vec();
        let e = &eps_set[..k];
        for j in 1..k {
            for i in (j..k).rev() {
                t[i] = (e[i - j] * t[i] - e[i] * t[i - 1]) / (e[i - j] - e[i]);
            }
        }
        t[k - 1]
    };
    let full = extrapolate(&fine, eps_set.len());
    let prev = extrapolate(&fine, eps_set.len() - 1);
    let estimate = Complex64::new(full, 0.0);
    let std_error = (full - prev).abs() + quad_err;
    let samples = (eps_set.len() * 2) as u64 * 4000 * 8;
    Ok(finish_check(
        QuadratureResult { estimate, std_error, samples, seed: 0 },
        Complex64::new(target, 0.0),
        tol,
    ))
}

// ---------------------------------------------------------------------
// Chain rule (propagator convolution)
// ---------------------------------------------------------------------

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Convolution of two powers in four dimensions:
/// integral d^4 z |x-z|^(-2a) |z-y|^(-2b) =
/// pi^2 G(2-a) G(2-b) G(a+b-2) / (G(a) G(b) G(4-a-b)) |x-y|^(-2(a+b-2)).
pub fn chain_rule_check(
    alpha: f64,
    beta: f64,
    x: &[f64; 4],
    y: &[f64; 4],
    cfg: &MCConfig,
    tol: f64,
) -> Result<NumericCheck, CheckError> {
    if !(alpha + beta > 2.0 && alpha < 2.0 && beta < 2.0 && alpha > 0.0 && beta > 0.0) {
        return Err(CheckError::Contract(
            "chain rule needs 0 < alpha, beta < 2 and alpha + beta > 2".into(),
        ));
    }
    let pi = std::f64::consts::PI;
    let sep = dist(x, y);
    if sep <= 0.0 {
        return Err(CheckError::Contract("x and y must be distinct".into()));
    }
    let constant = pi * pi * gamma(2.0 - alpha)? * gamma(2.0 - beta)? * gamma(alpha + beta - 2.0)?
        / (gamma(alpha)? * gamma(beta)? * gamma(4.0 - alpha - beta)?);
    let target = constant * sep.powf(-2.0 * (alpha + beta - 2.0));

    let far = 0.9 * (2.0 * (alpha + beta) - 4.0);
    let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| 0.5 * (a + b)).collect();
    let mixture = Mixture::new(
        4,
        vec![
            RadialComponent { center: x.to_vec(), near_exp: 2.0 * alpha, far_exp: 2.0, scale: 0.5 * sep, weight: 0.4 },
            RadialComponent { center: y.to_vec(), near_exp: 2.0 * beta, far_exp: 2.0, scale: 0.5 * sep, weight: 0.4 },
            RadialComponent { center: mid, near_exp: 0.0, far_exp: far, scale: 2.0 * sep, weight: 0.2 },
        ],
    );
    let f = |z: &[f64]| -> Complex64 {
        let rx = dist(z, x);
        let ry = dist(z, y);
        Complex64::new(rx.powf(-2.0 * alpha) * ry.powf(-2.0 * beta), 0.0)
    };
    let result = integrate_mc(&mixture, &f, cfg);
    Ok(finish_check(result, Complex64::new(target, 0.0), tol))
}

// ---------------------------------------------------------------------
// Scalar star-triangle
// ---------------------------------------------------------------------

pub struct ScalarStrParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_e: f64,
}

impl ScalarStrParams {
    pub fn new(n: usize, alpha: f64, beta: f64, gamma_e: f64) -> Result<Self, CheckError> {
        if (alpha + beta + gamma_e - n as f64).abs() > 1e-14 {
            return Err(CheckError::Contract(
                "uniqueness alpha + beta + gamma = n violated".into(),
            ));
        }
        let h = n as f64 / 2.0;
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma_e)] {
            if !(v > 0.0 && v < h) {
                return Err(CheckError::Contract(format!(
                    "{name} = {v} outside the convergence window (0, n/2)"
                )));
            }
        }
        Ok(Self { n, alpha, beta, gamma_e })
    }

    pub fn v_constant(&self) -> Result<f64, CheckError> {
        let h = self.n as f64 / 2.0;
        let pi = std::f64::consts::PI;
        Ok(pi.powf(h) * gamma(h - self.alpha)? * gamma(h - self.beta)? * gamma(h - self.gamma_e)?
            / (gamma(self.alpha)? * gamma(self.beta)? * gamma(self.gamma_e)?))
    }

    pub fn target(&self, x: &[f64], y: &[f64], z: &[f64]) -> Result<f64, CheckError> {
        let h = self.n as f64 / 2.0;
        Ok(self.v_constant()?
            * dist(y, z).powf(-2.0 * (h - self.alpha))
            * dist(x, z).powf(-2.0 * (h - self.beta))
            * dist(x, y).powf(-2.0 * (h - self.gamma_e)))
    }
}

/// n = 4: Monte Carlo with singular-point importance mixture.
pub fn scalar_str_mc(
    params: &ScalarStrParams,
    x: &[f64; 4],
    y: &[f64; 4],
    z: &[f64; 4],
    cfg: &MCConfig,
    tol: f64,
) -> Result<NumericCheck, CheckError> {
    if params.n != 4 {
        return Err(CheckError::Unsupported("MC form of the scalar star-triangle runs at n = 4".into()));
    }
    if dist(x, y) <= 0.0 || dist(x, z) <= 0.0 || dist(y, z) <= 0.0 {
        return Err(CheckError::Contract("external points must be pairwise distinct".into()));
    }
    let target = params.target(x, y, z)?;
    let min_sep = dist(x, y).min(dist(x, z)).min(dist(y, z));
    let centroid: Vec<f64> = (0..4).map(|i| (x[i] + y[i] + z[i]) / 3.0).collect();
    let mixture = Mixture::new(
        4,
        vec![
            RadialComponent { center: x.to_vec(), near_exp: 2.0 * params.alpha, far_exp: 2.0, scale: 0.5 * min_sep, weight: 0.3 },
            RadialComponent { center: y.to_vec(), near_exp: 2.0 * params.beta, far_exp: 2.0, scale: 0.5 * min_sep, weight: 0.3 },
            RadialComponent { center: z.to_vec(), near_exp: 2.0 * params.gamma_e, far_exp: 2.0, scale: 0.5 * min_sep, weight: 0.3 },
            RadialComponent { center: centroid, near_exp: 0.0, far_exp: 3.6, scale: 3.0, weight: 0.1 },
        ],
    );
    let (a, b, g) = (params.alpha, params.beta, params.gamma_e);
    let f = |w: &[f64]| -> Complex64 {
        Complex64::new(
            dist(w, x).powf(-2.0 * a) * dist(w, y).powf(-2.0 * b) * dist(w, z).powf(-2.0 * g),
            0.0,
        )
    };
    let result = integrate_mc(&mixture, &f, cfg);
    Ok(finish_check(result, Complex64::new(target, 0.0), tol))
}

/// n = 2: deterministic quadrature via a smooth partition of unity around
/// the three singular points plus a polar far-field patch.
pub fn scalar_str_quadrature(
    params: &ScalarStrParams,
    x: &[f64; 2],
    y: &[f64; 2],
    z: &[f64; 2],
    tol: f64,
) -> Result<NumericCheck, CheckError> {
    if params.n != 2 {
        return Err(CheckError::Unsupported("quadrature form runs at n = 2".into()));
    }
    let pts = [x.to_vec(), y.to_vec(), z.to_vec()];
    let exps = [params.alpha, params.beta, params.gamma_e];
    let target = params.target(x, y, z)?;

    // smoothstep cutoff: 1 inside r < d/2, 0 outside r > d, C^2 join.
    let cutoff = |r: f64, delta: f64| -> f64 {
        if r <= 0.5 * delta {
            1.0
        } else if r >= delta {
            0.0
        } else {
            let t = (r - 0.5 * delta) / (0.5 * delta);
            1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
        }
    };
    let min_sep = dist(x, y).min(dist(x, z)).min(dist(y, z));
    let delta = 0.8 * 0.5 * min_sep;
    let f = |w: &[f64]| -> f64 {
        let mut v = 1.0;
        for (p, e) in pts.iter().zip(&exps) {
            v *= dist(w, p).powf(-2.0 * e);
        }
        v
    };

    let run = |n_r: usize, n_t: usize| -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut total = 0.0;
        // singular patches in polar coordinates with the power substitution
        // q = r^(2 - 2 e).
        for (i, (p, e)) in pts.iter().zip(&exps).enumerate() {
            let pow = 2.0 - 2.0 * e;
            let qmax = delta.powf(pow);
            let mut patch = 0.0;
            for it in 0..n_t {
                let theta = two_pi * (it as f64 + 0.5) / n_t as f64;
                let (c, s) = (theta.cos(), theta.sin());
                let g = |q: f64| -> f64 {
                    if q <= 0.0 {
                        return 0.0;
                    }
                    let r = q.powf(1.0 / pow);
                    let w = [p[0] + r * c, p[1] + r * s];
                    // f without the local kernel, which the substitution
                    // absorbed exactly.
                    let mut v = cutoff(r, delta) / pow;
                    for (j, (pj, ej)) in pts.iter().zip(&exps).enumerate() {
                        if j != i {
                            v *= dist(&w, pj).powf(-2.0 * ej);
                        }
                    }
                    v
                };
                patch += integrate_panels(&g, 0.0, qmax, n_r, 8);
            }
            total += patch * two_pi / n_t as f64;
        }
        // remainder: smooth everywhere, integrated in polar around the
        // centroid, with an inverted-radius tail patch.
        let c0 = [(x[0] + y[0] + z[0]) / 3.0, (x[1] + y[1] + z[1]) / 3.0];
        let rem = |w: &[f64]| -> f64 {
            let mut chi = 0.0;
            for (p, _) in pts.iter().zip(&exps) {
                chi += cutoff(dist(w, p), delta);
            }
            (1.0 - chi) * f(w)
        };
        let rmax = 4.0 * (1.0 + dist(&c0, x).max(dist(&c0, y)).max(dist(&c0, z)));
        let mut mid = 0.0;
        for it in 0..(4 * n_t) {
            let theta = two_pi * (it as f64 + 0.5) / (4 * n_t) as f64;
            let (c, s) = (theta.cos(), theta.sin());
            let g = |r: f64| -> f64 { r * rem(&[c0[0] + r * c, c0[1] + r * s]) };
            mid += integrate_panels(&g, 0.0, rmax, 4 * n_r, 8);
        }
        mid *= two_pi / (4 * n_t) as f64;
        // tail r in [rmax, inf): substitute r = rmax / t.
        let mut tail = 0.0;
        for it in 0..n_t {
            let theta = two_pi * (it as f64 + 0.5) / n_t as f64;
            let (c, s) = (theta.cos(), theta.sin());
            // r = rmax / t turns the tail into a finite integral:
            // f r dr = f rmax^2 t^(-3) dt.
            let g = |t: f64| -> f64 {
                if t <= 0.0 {
                    return 0.0;
                }
                let r = rmax / t;
                (rmax * rmax / (t * t * t)) * rem(&[c0[0] + r * c, c0[1] + r * s])
            };
            tail += integrate_panels(&g, 0.0, 1.0, n_r, 8);
        }
        tail *= two_pi / n_t as f64;
        total + mid + tail
    };
    let coarse = run(24, 48);
    let fine = run(48, 96);
    let estimate = Complex64::new(fine, 0.0);
    let std_error = (fine - coarse).abs();
    Ok(finish_check(
        QuadratureResult { estimate, std_error, samples: 0, seed: 0 },
        Complex64::new(target, 0.0),
        tol,
    ))
}

// ---------------------------------------------------------------------
// Spinorial star-triangle
// ---------------------------------------------------------------------

pub struct SpinStrParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub m: u32,
}

impl SpinStrParams {
    /// Uniqueness a + c - b = 2 + m; local integrability (numerator
    /// vanishing credited at the external points): 2a - m < 4, 2c - m < 4,
    /// 0 < b (so the kernel at the origin is integrable); and the
    /// documented sufficient condition 2(a + b' + c) - m > 4.
    pub fn new(a: f64, b: f64, c: f64, m: u32) -> Result<Self, CheckError> {
        if (a + c - b - 2.0 - m as f64).abs() > 1e-12 {
            return Err(CheckError::Contract("uniqueness a + c - b = 2 + m violated".into()));
        }
        let mf = m as f64;
        if !(2.0 * a - mf < 4.0) {
            return Err(CheckError::Contract(format!("a = {a} too singular (needs 2a - m < 4)")));
        }
        if !(2.0 * c - mf < 4.0) {
            return Err(CheckError::Contract(format!("c = {c} too singular (needs 2c - m < 4)")));
        }
        let bprime = 2.0 - b;
        if !(bprime < 2.0 && bprime > -2.0) {
            return Err(CheckError::Contract(format!("b = {b} outside the window (0 < b, b' < 2)")));
        }
        if !(b > 0.0) {
            return Err(CheckError::Contract(format!("b = {b} must be positive")));
        }
        if !(2.0 * (a + bprime + c) - mf > 4.0) {
            return Err(CheckError::Contract("documented convergence condition violated".into()));
        }
        Ok(Self { a, b, c, m })
    }
}

fn pair_a_f64(x: &[f64], a: &[[Complex64; 4]; 4], y: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for mu in 0..4 {
        for nu in 0..4 {
            acc += a[mu][nu] * x[mu] * y[nu];
        }
    }
    acc
}

/// Convert the exact nilpotent matrix to floating point.
pub fn nilpotent_to_f64(a: &NilpotentA) -> [[Complex64; 4]; 4] {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let (re, im) = a.a[(mu, nu)].to_f64_pair();
            out[mu][nu] = Complex64::new(re, im);
        }
    }
    out
}

/// Spinorial star-triangle integral against its closed form:
/// integral d^4 Z <(Z-X) A (Z-Y)>^m / (|X-Z|^{2a} |Z|^{2b'} |Z-Y|^{2c}) =
/// pi^2 G(a'+m) G(b) G(c'+m) / (G(a) G(b') G(c)) *
/// <X A Y>^m / (|X|^{2(c'+m)} |X-Y|^{2b} |Y|^{2(a'+m)}).
pub fn spinorial_str_check(
    params: &SpinStrParams,
    a_mat: &NilpotentA,
    x: &[f64; 4],
    y: &[f64; 4],
    cfg: &MCConfig,
    tol: f64,
) -> Result<NumericCheck, CheckError> {
    let (a, b, c, m) = (params.a, params.b, params.c, params.m as f64);
    let (ap, bp, cp) = (2.0 - a, 2.0 - b, 2.0 - c);
    let origin = [0.0f64; 4];
    let xn = dist(x, &origin);
    let yn = dist(y, &origin);
    let sep = dist(x, y);
    if xn <= 0.0 || yn <= 0.0 || sep <= 0.0 {
        return Err(CheckError::Contract("X, Y must be distinct and away from the origin".into()));
    }
    let af = nilpotent_to_f64(a_mat);
    let pi = std::f64::consts::PI;
    let constant = pi * pi * gamma(ap + m)? * gamma(b)? * gamma(cp + m)?
        / (gamma(a)? * gamma(bp)? * gamma(c)?);
    let xay = pair_a_f64(x, &af, y);
    let target = xay.powf(m) * constant
        / (xn.powf(2.0 * (cp + m)) * sep.powf(2.0 * b) * yn.powf(2.0 * (ap + m)));

    let min_sep = sep.min(xn).min(yn);
    let centroid: Vec<f64> = (0..4).map(|i| (x[i] + y[i]) / 3.0).collect();
    let mixture = Mixture::new(
        4,
        vec![
            RadialComponent {
                center: x.to_vec(),
                near_exp: (2.0 * a - m).clamp(0.0, 3.6),
                far_exp: 2.0,
                scale: 0.5 * min_sep,
                weight: 0.3,
            },
            RadialComponent {
                center: y.to_vec(),
                near_exp: (2.0 * c - m).clamp(0.0, 3.6),
                far_exp: 2.0,
                scale: 0.5 * min_sep,
                weight: 0.3,
            },
            RadialComponent {
                center: origin.to_vec(),
                near_exp: (2.0 * bp).clamp(0.0, 3.6),
                far_exp: 2.0,
                scale: 0.5 * min_sep,
                weight: 0.3,
            },
            RadialComponent { center: centroid, near_exp: 0.0, far_exp: 3.6, scale: 3.0, weight: 0.1 },
        ],
    );
    let f = |zz: &[f64]| -> Complex64 {
        let zmx: Vec<f64> = zz.iter().zip(x).map(|(p, q)| p - q).collect();
        let zmy: Vec<f64> = zz.iter().zip(y).map(|(p, q)| p - q).collect();
        let num = pair_a_f64(&zmx, &af, &zmy).powf(m);
        let rz = dist(zz, &origin);
        num / (dist(zz, x).powf(2.0 * a) * rz.powf(2.0 * bp) * dist(zz, y).powf(2.0 * c))
    };
    let result = integrate_mc(&mixture, &f, cfg);
    Ok(finish_check(result, target, tol))
}

/// The m = 0 spinorial identity is the scalar star-triangle with relabeled
/// exponents and points (X, 0, Y): verify the constants and exponent
/// dictionary coincide to near machine precision.
pub fn spinorial_m0_reduction_check(a: f64, b: f64, c: f64) -> Result<(), CheckError> {
    let params = SpinStrParams::new(a, b, c, 0)?;
    let _ = &params;
    let bp = 2.0 - b;
    let scalar = ScalarStrParams::new(4, a, bp, c)?;
    let pi = std::f64::consts::PI;
    let spin_const = pi * pi * gamma(2.0 - a)? * gamma(b)? * gamma(2.0 - c)?
        / (gamma(a)? * gamma(bp)? * gamma(c)?);
    let v = scalar.v_constant()?;
    if ((spin_const - v) / v).abs() > 1e-12 {
        return Err(CheckError::Structural("m = 0 constant does not reduce to V(a, b', c)".into()));
    }
    Ok(())
}
