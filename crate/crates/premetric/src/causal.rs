//! Causal structure induced by the Fresnel tensor: hyperbolicity certification,
//! hyperbolicity cones and their duals, causal membership, real-principal-type
//! checks and bicharacteristic rays.
//!
//! A covector n is a hyperbolicity direction when τ ↦ 𝓖(k + τn) has only real
//! roots for every real k. Certification is sampling based: quartic roots come
//! from 4×4 companion-matrix eigenvalues (stable near the double roots that
//! dominate the Maxwell case), with realness tolerance |Im τ| ≤ 1e−7·(1+|Re τ|).
//! The cone Γ(n) is the connected component of {𝓖 ≠ 0} containing n; its
//! boundary is located along rays from n toward a sampled sphere of spatial
//! directions.

use crate::linalg::{cluster_roots, poly_roots, C64};
use crate::symbol::FresnelTensor;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Realness tolerance for root certification: |Im τ| ≤ REALNESS_TOL·(1+|Re τ|).
pub const REALNESS_TOL: f64 = 1e-7;
/// Leading coefficients below this (relative) threshold degenerate the quartic.
const DEGENERATE_LEAD_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct HyperbolicityReport {
    pub hyperbolic: bool,
    pub witness_n: [f64; 4],
    /// Worst normalized imaginary part max_i |Im τ_i|/(1+|Re τ_i|) over all samples.
    pub max_imag_root: f64,
    pub samples: usize,
    /// Sample covector realizing the worst residual (complex-root witness on refutation).
    pub worst_k: [f64; 4],
    pub worst_roots: Vec<C64>,
}

fn normalize4(v: &[f64; 4]) -> [f64; 4] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    [v[0] / n, v[1] / n, v[2] / n, v[3] / n]
}

fn unit_sphere_covectors(count: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        // Box-Muller pairs give an isotropic Gaussian on R^4
        let mut v = [0.0; 4];
        for pair in 0..2 {
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (-2.0 * u1.ln()).sqrt();
            v[2 * pair] = r * u2.cos();
            v[2 * pair + 1] = r * u2.sin();
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            out.push(normalize4(&v));
        }
    }
    out
}

/// Deterministic golden-spiral grid on the unit 2-sphere.
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

fn max_normalized_imag(roots: &[C64]) -> f64 {
    roots
        .iter()
        .map(|t| t.im.abs() / (1.0 + t.re.abs()))
        .fold(0.0, f64::max)
}

/// Certify or refute hyperbolicity of 𝓖 with respect to n by sampling covectors.
pub fn is_hyperbolic(
    g4: &FresnelTensor,
    n: &[f64; 4],
    n_samples: usize,
) -> Result<HyperbolicityReport> {
    let n_norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n_norm == 0.0 {
        return Err(Error::InvalidCone("zero direction".into()));
    }
    if g4.norm() == 0.0 {
        return Err(Error::NotHyperbolic("zero Fresnel tensor".into()));
    }
    let n_unit = normalize4(n);
    if g4.eval_real(&n_unit).abs() < DEGENERATE_LEAD_TOL * g4.norm() {
        return Ok(HyperbolicityReport {
            hyperbolic: false,
            witness_n: n_unit,
            max_imag_root: f64::INFINITY,
            samples: 0,
            worst_k: n_unit,
            worst_roots: Vec::new(),
        });
    }
    let ks = unit_sphere_covectors(n_samples, 0x5eed_0001);
    let results: Vec<(f64, [f64; 4], Vec<C64>)> = ks
        .par_iter()
        .map(|k| {
            let coeffs = g4.direction_polynomial(k, &n_unit);
            let roots = poly_roots(&coeffs, DEGENERATE_LEAD_TOL);
            (max_normalized_imag(&roots), *k, roots)
        })
        .collect();
    let mut worst = (0.0f64, n_unit, Vec::new());
    for r in results {
        if r.0 > worst.0 {
            worst = r;
        }
    }
    Ok(HyperbolicityReport {
        hyperbolic: worst.0 <= REALNESS_TOL,
        witness_n: n_unit,
        max_imag_root: worst.0,
        samples: n_samples,
        worst_k: worst.1,
        worst_roots: worst.2,
    })
}

/// An open convex hyperbolicity cone with sampled boundary.
#[derive(Debug, Clone)]
pub struct Cone {
    /// Unit interior representative.
    pub representative: [f64; 4],
    /// Unit covectors sampling ∂Γ.
    pub boundary_rays: Vec<[f64; 4]>,
    /// Γ vs −Γ.
    pub opposite: bool,
    /// Multiple disjoint hyperbolicity double cones were detected while sampling.
    pub second_cone_detected: bool,
    fresnel: FresnelTensor,
}

impl Cone {
    /// The mirror cone −Γ.
    pub fn opposite(&self) -> Cone {
        Cone {
            representative: neg4(&self.representative),
            boundary_rays: self.boundary_rays.iter().map(neg4).collect(),
            opposite: !self.opposite,
            second_cone_detected: self.second_cone_detected,
            fresnel: self.fresnel.clone(),
        }
    }

    /// Membership of a covector in the open cone: the segment from the
    /// representative must stay inside {𝓖 ≠ 0}.
    pub fn contains_covector(&self, m: &[f64; 4]) -> bool {
        let norm = m.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return false;
        }
        let mu = normalize4(m);
        if self.fresnel.eval_real(&mu).abs() < DEGENERATE_LEAD_TOL * self.fresnel.norm() {
            return false;
        }
        first_zero_on_segment(&self.fresnel, &self.representative, &mu).is_none()
    }

    /// Largest ray speed |v⃗|/v⁰ over the sampled dual cone; bounds signal
    /// propagation for window validation.
    pub fn max_ray_speed(&self) -> f64 {
        let dual = dual_cone(self);
        dual.boundary_rays
            .iter()
            .filter(|v| v[0] > 1e-12)
            .map(|v| (v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt() / v[0])
            .fold(0.0, f64::max)
    }
}

fn neg4(v: &[f64; 4]) -> [f64; 4] {
    [-v[0], -v[1], -v[2], -v[3]]
}

/// First s ∈ (0, 1) with 𝓖((1−s)a + s b) = 0 along the segment, if any.
fn first_zero_on_segment(g4: &FresnelTensor, a: &[f64; 4], b: &[f64; 4]) -> Option<f64> {
    // 𝓖((1−s)a + sb) = 𝓖(a + s(b−a)) is a quartic in s.
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]];
    let coeffs = g4.direction_polynomial(a, &d);
    let roots = poly_roots(&coeffs, 0.0);
    let mut best: Option<f64> = None;
    for r in roots {
        if r.im.abs() <= 1e-9 * (1.0 + r.re.abs()) && r.re > 1e-9 && r.re < 1.0 - 1e-9 {
            best = Some(best.map_or(r.re, |b: f64| b.min(r.re)));
        }
    }
    best
}

/// Extract the hyperbolicity cone Γ(n) by locating the first Fresnel zero along
/// rays from n toward a golden-spiral grid of "spatial" directions (the
/// orthogonal complement of n).
pub fn hyperbolicity_cone(g4: &FresnelTensor, n: &[f64; 4], n_dirs: usize) -> Result<Cone> {
    let report = is_hyperbolic(g4, n, 400)?;
    if !report.hyperbolic {
        return Err(Error::NotHyperbolic(format!(
            "direction not hyperbolic: worst normalized Im root {:.3e}",
            report.max_imag_root
        )));
    }
    let n_unit = report.witness_n;
    let frame = orthonormal_complement(&n_unit);
    let dirs = fibonacci_sphere(n_dirs);
    let results: Vec<([f64; 4], bool)> = dirs
        .par_iter()
        .map(|d| {
            let mut target = [0.0; 4];
            for i in 0..4 {
                target[i] = d[0] * frame[0][i] + d[1] * frame[1][i] + d[2] * frame[2][i];
            }
            match first_zero_on_segment(g4, &n_unit, &target) {
                Some(s) => {
                    let mut b = [0.0; 4];
                    for i in 0..4 {
                        b[i] = (1.0 - s) * n_unit[i] + s * target[i];
                    }
                    let second = second_component_on_segment(g4, &n_unit, &target, s);
                    (normalize4(&b), second)
                }
                // no zero toward the sphere: the target itself bounds the sampling
                None => (target, false),
            }
        })
        .collect();
    let boundary_rays: Vec<[f64; 4]> = results.iter().map(|r| r.0).collect();
    let second_cone_detected = results.iter().any(|r| r.1);

    let cone = Cone {
        representative: n_unit,
        boundary_rays,
        opposite: false,
        second_cone_detected,
        fresnel: g4.clone(),
    };
    validate_convexity(&cone)?;
    Ok(cone)
}

/// Orthonormal triple spanning the complement of n.
fn orthonormal_complement(n: &[f64; 4]) -> [[f64; 4]; 3] {
    let mut basis: Vec<[f64; 4]> = Vec::new();
    for seed in 0..4 {
        if basis.len() == 3 {
            break;
        }
        let mut w = [0.0; 4];
        w[seed] = 1.0;
        let dot_n: f64 = (0..4).map(|i| w[i] * n[i]).sum();
        for i in 0..4 {
            w[i] -= dot_n * n[i];
        }
        for b in &basis {
            let dot: f64 = (0..4).map(|i| w[i] * b[i]).sum();
            for i in 0..4 {
                w[i] -= dot * b[i];
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for x in w.iter_mut() {
                *x /= norm;
            }
            basis.push(w);
        }
    }
    [basis[0], basis[1], basis[2]]
}

/// After the first boundary crossing at s1, look for a further stretch of the
/// segment where 𝓖 ≠ 0 and hyperbolicity certifies again: a disjoint second
/// hyperbolicity cone.
fn second_component_on_segment(g4: &FresnelTensor, a: &[f64; 4], b: &[f64; 4], s1: f64) -> bool {
    let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3]];
    let coeffs = g4.direction_polynomial(a, &d);
    let mut zeros: Vec<f64> = poly_roots(&coeffs, 0.0)
        .into_iter()
        .filter(|r| r.im.abs() <= 1e-9 * (1.0 + r.re.abs()) && r.re > s1 + 1e-6 && r.re < 1.0)
        .map(|r| r.re)
        .collect();
    zeros.sort_by(|x, y| x.partial_cmp(y).unwrap());
    zeros.dedup_by(|x, y| (*x - *y).abs() < 1e-8);
    if zeros.is_empty() {
        return false;
    }
    let mut probes = Vec::new();
    for w in zeros.windows(2) {
        probes.push(0.5 * (w[0] + w[1]));
    }
    probes.push(0.5 * (zeros[zeros.len() - 1] + 1.0));
    for s in probes {
        let mut m = [0.0; 4];
        for i in 0..4 {
            m[i] = (1.0 - s) * a[i] + s * b[i];
        }
        if g4.eval_real(&m).abs() < 1e-10 * g4.norm() {
            continue;
        }
        if let Ok(rep) = is_hyperbolic(g4, &m, 60) {
            if rep.hyperbolic {
                return true;
            }
        }
    }
    false
}

fn validate_convexity(cone: &Cone) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let nrays = cone.boundary_rays.len();
    if nrays < 2 {
        return Err(Error::InvalidCone("not enough boundary samples".into()));
    }
    for _ in 0..64 {
        let i = rng.gen_range(0..nrays);
        let j = rng.gen_range(0..nrays);
        let shrink = 0.98;
        let mut mid = [0.0; 4];
        for a in 0..4 {
            let pi = shrink * cone.boundary_rays[i][a] + (1.0 - shrink) * cone.representative[a];
            let pj = shrink * cone.boundary_rays[j][a] + (1.0 - shrink) * cone.representative[a];
            mid[a] = 0.5 * (pi + pj);
        }
        if !cone.contains_covector(&mid) {
            return Err(Error::InvalidCone(format!(
                "sampled convexity violated between rays {i} and {j}"
            )));
        }
    }
    Ok(())
}

/// Closed dual cone Γ° = { X | X(n) ≥ 0 ∀ n ∈ Γ }, sampled.
#[derive(Debug, Clone)]
pub struct DualCone {
    /// Unit vectors sampling ∂Γ°.
    pub boundary_rays: Vec<[f64; 4]>,
    /// An interior vector (the Fresnel gradient direction at the representative).
    pub interior: [f64; 4],
    primal_boundary: Vec<[f64; 4]>,
    primal_representative: [f64; 4],
}

impl DualCone {
    /// X ∈ Γ° up to a tolerance margin (relative to |X|).
    pub fn contains_vector(&self, x: &[f64; 4], tol: f64) -> bool {
        let scale = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if scale == 0.0 {
            return true; // vertex
        }
        let pair = |n: &[f64; 4]| (0..4).map(|i| n[i] * x[i]).sum::<f64>();
        if pair(&self.primal_representative) < -tol * scale {
            return false;
        }
        self.primal_boundary.iter().all(|n| pair(n) >= -tol * scale)
    }
}

/// Sample the dual cone of Γ.
pub fn dual_cone(cone: &Cone) -> DualCone {
    // The Fresnel gradient at an interior covector lies in the dual interior.
    let grad = cone.fresnel.gradient_real(&cone.representative);
    let mut interior = grad;
    let sign = if (0..4)
        .map(|i| grad[i] * cone.representative[i])
        .sum::<f64>()
        < 0.0
    {
        -1.0
    } else {
        1.0
    };
    for v in interior.iter_mut() {
        *v *= sign;
    }
    let interior = normalize4(&interior);

    let frame = orthonormal_complement(&interior);
    let dirs = fibonacci_sphere(256.max(cone.boundary_rays.len() / 4));
    let mut boundary = Vec::with_capacity(dirs.len());
    for d in dirs {
        let mut dir = [0.0; 4];
        for i in 0..4 {
            dir[i] = d[0] * frame[0][i] + d[1] * frame[1][i] + d[2] * frame[2][i];
        }
        // largest c with (interior + c·dir)·m ≥ 0 over the sampled boundary of Γ
        let mut c_max = f64::INFINITY;
        for m in cone
            .boundary_rays
            .iter()
            .chain(std::iter::once(&cone.representative))
        {
            let base: f64 = (0..4).map(|i| interior[i] * m[i]).sum();
            let slope: f64 = (0..4).map(|i| dir[i] * m[i]).sum();
            if slope < -1e-14 {
                c_max = c_max.min(-base / slope);
            }
        }
        if c_max.is_finite() {
            let mut b = [0.0; 4];
            for i in 0..4 {
                b[i] = interior[i] + c_max * dir[i];
            }
            boundary.push(normalize4(&b));
        }
    }
    DualCone {
        boundary_rays: boundary,
        interior,
        primal_boundary: cone.boundary_rays.clone(),
        primal_representative: cone.representative,
    }
}

/// Straight-line causal membership: y ∈ J_Γ(x) ⇔ y − x ∈ Γ°.
pub fn in_causal_future(x: &[f64; 4], y: &[f64; 4], cone: &Cone, tol: f64) -> bool {
    let diff = [y[0] - x[0], y[1] - x[1], y[2] - x[2], y[3] - x[3]];
    let scale = diff.iter().map(|v| v * v).sum::<f64>().sqrt();
    if scale == 0.0 {
        return true;
    }
    let pair = |n: &[f64; 4]| (0..4).map(|i| n[i] * diff[i]).sum::<f64>();
    if pair(&cone.representative) < -tol * scale {
        return false;
    }
    cone.boundary_rays.iter().all(|n| pair(n) >= -tol * scale)
}

/// Outcome of the real-principal-type analysis.
#[derive(Debug, Clone)]
pub struct PrincipalTypeReport {
    /// 𝓖 factored as a perfect square of a quadratic (Maxwell case).
    pub reducible: bool,
    /// The quadratic factor q^{ab} when reducible (𝓖 = sym(q⊗q)).
    pub quadratic_factor: Option<[[f64; 4]; 4]>,
    /// Smallest normalized gradient over the sampled characteristic set
    /// (of the reduced polynomial when reducible).
    pub min_gradient: f64,
    pub passed: bool,
    pub samples: usize,
}

/// Try to write 𝓖^{abcd} = sym(q ⊗ q) for a symmetric quadratic q.
pub fn reduce_to_quadratic(g4: &FresnelTensor, n: &[f64; 4]) -> Option<[[f64; 4]; 4]> {
    let gn = g4.eval_real(n);
    if gn.abs() < 1e-14 * g4.norm() {
        return None;
    }
    for sign in [1.0, -1.0] {
        let s_sq = sign * gn;
        if s_sq <= 0.0 {
            continue;
        }
        let s = s_sq.sqrt() * sign;
        // u^a = 𝓖^{abcd} n_b n_c n_d / s = q(n)·q^{a·}n;  q = (3 𝓖(n,n,·,·) − 2 u⊗u)/s
        let grad = g4.gradient_real(n);
        let mut u = [0.0; 4];
        for a in 0..4 {
            u[a] = grad[a] / (4.0 * s);
        }
        let mut q = [[0.0; 4]; 4];
        let comps = g4.components();
        for a in 0..4 {
            for b in 0..4 {
                let mut mn = 0.0;
                for c in 0..4 {
                    for d in 0..4 {
                        mn += comps[a][b][c][d] * n[c] * n[d];
                    }
                }
                q[a][b] = (3.0 * mn - 2.0 * u[a] * u[b]) / s;
            }
        }
        let mut ok = true;
        'outer: for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let sym = (q[a][b] * q[c][d] + q[a][c] * q[b][d] + q[a][d] * q[b][c]) / 3.0;
                        if (sym - comps[a][b][c][d]).abs() > 1e-8 * g4.norm().max(1.0) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if ok {
            return Some(q);
        }
    }
    None
}

/// Sample characteristic covectors and verify the (possibly reduced) symbol has
/// nonvanishing gradient there.
pub fn real_principal_type_check(
    g4: &FresnelTensor,
    n: &[f64; 4],
    samples: usize,
) -> PrincipalTypeReport {
    let quad = reduce_to_quadratic(g4, n);
    let ks = unit_sphere_covectors(samples, 0x5eed_0003);
    let mut min_gradient = f64::INFINITY;
    let mut used = 0;
    for k in &ks {
        let roots: Vec<f64> = match &quad {
            Some(q) => {
                let qq = |a: &[f64; 4], b: &[f64; 4]| {
                    let mut acc = 0.0;
                    for i in 0..4 {
                        for j in 0..4 {
                            acc += q[i][j] * a[i] * b[j];
                        }
                    }
                    acc
                };
                poly_roots(&[qq(k, k), 2.0 * qq(k, n), qq(n, n)], 0.0)
                    .into_iter()
                    .filter(|r| r.im.abs() < 1e-7 * (1.0 + r.re.abs()))
                    .map(|r| r.re)
                    .collect()
            }
            None => {
                let coeffs = g4.direction_polynomial(k, n);
                let roots = poly_roots(&coeffs, DEGENERATE_LEAD_TOL);
                cluster_roots(&roots, 1e-6)
                    .into_iter()
                    .filter(|(r, _)| r.im.abs() < 1e-6 * (1.0 + r.re.abs()))
                    .map(|(r, _)| r.re)
                    .collect()
            }
        };
        for tau in roots {
            let kc = [
                k[0] + tau * n[0],
                k[1] + tau * n[1],
                k[2] + tau * n[2],
                k[3] + tau * n[3],
            ];
            let kn = norm4(&kc);
            if kn < 1e-8 {
                continue;
            }
            used += 1;
            let gnorm = match &quad {
                Some(q) => {
                    let mut grad = [0.0; 4];
                    for a in 0..4 {
                        for b in 0..4 {
                            grad[a] += 2.0 * q[a][b] * kc[b];
                        }
                    }
                    let qs = q.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
                    norm4(&grad) / (qs * kn)
                }
                None => norm4(&g4.gradient_real(&kc)) / (g4.norm() * kn.powi(3)),
            };
            min_gradient = min_gradient.min(gnorm);
        }
    }
    PrincipalTypeReport {
        reducible: quad.is_some(),
        quadratic_factor: quad,
        min_gradient,
        passed: min_gradient > 1e-6,
        samples: used,
    }
}

fn norm4(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Bicharacteristic curve data: (x, k) states along the Hamiltonian flow of 𝓖.
#[derive(Debug, Clone)]
pub struct BicharacteristicCurve {
    pub states: Vec<([f64; 4], [f64; 4])>,
    pub step: f64,
    /// Max drift of the conserved dispersion function along the curve.
    pub dispersion_drift: f64,
}

/// Integrate the Hamilton vector field ẋ = ∂𝓢/∂k, k̇ = −∂𝓢/∂x = 0 (constant
/// coefficients) with RK4, 𝓢 = 𝓖 or the reduced quadratic when 𝓖 is a perfect
/// square (the Maxwell gradient vanishes on the characteristic set otherwise).
pub fn bicharacteristic_flow(
    g4: &FresnelTensor,
    x0: &[f64; 4],
    k0: &[f64; 4],
    steps: usize,
    dt: f64,
) -> Result<BicharacteristicCurve> {
    let scale = g4.norm() * norm4(k0).powi(4);
    let g_start = g4.eval_real(k0);
    if g_start.abs() > 1e-8 * scale.max(1e-300) {
        return Err(Error::NotCharacteristic(g_start.abs() / scale));
    }
    let quad = reduce_to_quadratic(g4, &[1.0, 0.0, 0.0, 0.0]);
    let hamiltonian_grad = |k: &[f64; 4]| -> [f64; 4] {
        match &quad {
            Some(q) => {
                let mut grad = [0.0; 4];
                for a in 0..4 {
                    for b in 0..4 {
                        grad[a] += 2.0 * q[a][b] * k[b];
                    }
                }
                grad
            }
            None => g4.gradient_real(k),
        }
    };
    let dispersion = |k: &[f64; 4]| -> f64 {
        match &quad {
            Some(q) => {
                let mut s = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        s += q[a][b] * k[a] * k[b];
                    }
                }
                s
            }
            None => g4.eval_real(k),
        }
    };
    let d0 = dispersion(k0);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = *x0;
    let mut k = *k0;
    states.push((x, k));
    let mut drift = 0.0f64;
    for _ in 0..steps {
        // RK4; k̇ = 0 keeps k frozen but the staging stays generic
        let f = |k: &[f64; 4]| (hamiltonian_grad(k), [0.0f64; 4]);
        let (k1x, k1k) = f(&k);
        let (k2x, k2k) = f(&add_scaled(&k, &k1k, dt / 2.0));
        let (k3x, k3k) = f(&add_scaled(&k, &k2k, dt / 2.0));
        let (k4x, k4k) = f(&add_scaled(&k, &k3k, dt));
        for i in 0..4 {
            x[i] += dt / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
            k[i] += dt / 6.0 * (k1k[i] + 2.0 * k2k[i] + 2.0 * k3k[i] + k4k[i]);
        }
        drift = drift.max((dispersion(&k) - d0).abs());
        states.push((x, k));
    }
    Ok(BicharacteristicCurve {
        states,
        step: dt,
        dispersion_drift: drift,
    })
}

fn add_scaled(a: &[f64; 4], b: &[f64; 4], s: f64) -> [f64; 4] {
    [
        a[0] + s * b[0],
        a[1] + s * b[1],
        a[2] + s * b[2],
        a[3] + s * b[3],
    ]
}
