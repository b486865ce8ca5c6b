//! Constitutive tensors and densities: construction, conversion, validation.
//!
//! The constitutive law `H = #F` is stored through the density components
//! `χ^{abcd}` (antisymmetric in both index pairs, pair symmetric, weight 1) in
//! the canonical 6×6 bivector basis
//! `E₁=(01), E₂=(02), E₃=(03), E₄=(23), E₅=(31), E₆=(12)`.
//! The Levi-Civita convention is fixed globally to ε_0123 = +1 in the active
//! coordinate basis; twisted forms are represented untwisted under this fixed
//! orientation.

use crate::linalg::{epsilon_nonzeros, Tensor4};
use crate::{Error, Result};
use nalgebra::{Matrix4, Matrix6, SymmetricEigen};

/// Canonical ordering of antisymmetric index pairs for the bivector basis.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Map an ordered index pair to its bivector slot and sign; `None` on a == b.
pub fn pair_slot(a: usize, b: usize) -> Option<(usize, f64)> {
    for (slot, &(p, q)) in PAIRS.iter().enumerate() {
        if (a, b) == (p, q) {
            return Some((slot, 1.0));
        }
        if (a, b) == (q, p) {
            return Some((slot, -1.0));
        }
    }
    None
}

/// Expected eigenvalue signature of a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    /// (−,+,+,+)
    Lorentzian,
    /// (+,+,+,+)
    Euclidean,
}

/// Symmetric nondegenerate metric with a stated signature.
#[derive(Debug, Clone)]
pub struct SpacetimeMetric {
    g: [[f64; 4]; 4],
    inv: [[f64; 4]; 4],
    sqrt_abs_det: f64,
    signature: Signature,
}

impl SpacetimeMetric {
    pub fn new(g: [[f64; 4]; 4], signature: Signature) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if (g[i][j] - g[j][i]).abs() > 1e-12 {
                    return Err(Error::DegenerateMetric("components not symmetric".into()));
                }
            }
        }
        let m = Matrix4::from_fn(|i, j| g[i][j]);
        let det = m.determinant();
        if det.abs() < 1e-12 {
            return Err(Error::DegenerateMetric(format!("|det g| = {:.3e}", det.abs())));
        }
        let eig = SymmetricEigen::new(m);
        let negatives = eig.eigenvalues.iter().filter(|&&l| l < 0.0).count();
        let expected = match signature {
            Signature::Lorentzian => 1,
            Signature::Euclidean => 0,
        };
        if negatives != expected {
            return Err(Error::DegenerateMetric(format!(
                "signature mismatch: {negatives} negative eigenvalues, expected {expected}"
            )));
        }
        let inv_m = m
            .try_inverse()
            .ok_or_else(|| Error::DegenerateMetric("not invertible".into()))?;
        let mut inv = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                inv[i][j] = inv_m[(i, j)];
            }
        }
        Ok(Self {
            g,
            inv,
            sqrt_abs_det: det.abs().sqrt(),
            signature,
        })
    }

    pub fn minkowski() -> Self {
        let mut g = [[0.0; 4]; 4];
        g[0][0] = -1.0;
        for i in 1..4 {
            g[i][i] = 1.0;
        }
        Self::new(g, Signature::Lorentzian).expect("minkowski metric is valid")
    }

    pub fn euclidean() -> Self {
        let mut g = [[0.0; 4]; 4];
        for i in 0..4 {
            g[i][i] = 1.0;
        }
        Self::new(g, Signature::Euclidean).expect("euclidean metric is valid")
    }

    pub fn components(&self) -> &[[f64; 4]; 4] {
        &self.g
    }

    pub fn inverse(&self) -> &[[f64; 4]; 4] {
        &self.inv
    }

    pub fn sqrt_abs_det(&self) -> f64 {
        self.sqrt_abs_det
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// g(u, v) on vectors.
    pub fn dot(&self, u: &[f64; 4], v: &[f64; 4]) -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                s += self.g[a][b] * u[a] * v[b];
            }
        }
        s
    }

    /// g⁻¹(k, k) on real covectors.
    pub fn inv_dot(&self, k: &[f64; 4], l: &[f64; 4]) -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                s += self.inv[a][b] * k[a] * l[b];
            }
        }
        s
    }

    /// Lower an index: (g v)_a.
    pub fn lower(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for a in 0..4 {
            for b in 0..4 {
                out[a] += self.g[a][b] * v[b];
            }
        }
        out
    }
}

/// Observer frame: covector n, basis vectors e_0..e_3 with e_0 = N, n(N) = 1
/// and the spatial legs annihilated by n.
#[derive(Debug, Clone)]
pub struct ObserverFrame {
    /// Hyperbolicity covector defining the time direction.
    pub n: [f64; 4],
    /// Basis vectors as rows: `basis[A][a]` is the a-th component of e_A.
    pub basis: [[f64; 4]; 4],
}

impl ObserverFrame {
    pub fn new(n: [f64; 4], basis: [[f64; 4]; 4]) -> Result<Self> {
        let pair = |v: &[f64; 4]| v.iter().zip(n.iter()).map(|(a, b)| a * b).sum::<f64>();
        if (pair(&basis[0]) - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidFrame("n(e_0) must equal 1".into()));
        }
        for alpha in 1..4 {
            if pair(&basis[alpha]).abs() > 1e-10 {
                return Err(Error::InvalidFrame(format!("n(e_{alpha}) must vanish")));
            }
        }
        let m = Matrix4::from_fn(|i, j| basis[i][j]);
        if m.determinant().abs() < 1e-12 {
            return Err(Error::InvalidFrame("basis not complete".into()));
        }
        Ok(Self { n, basis })
    }

    /// Frame adapted to the coordinate axes: n = dt, e_A the coordinate basis.
    pub fn standard() -> Self {
        let mut basis = [[0.0; 4]; 4];
        for (i, row) in basis.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self {
            n: [1.0, 0.0, 0.0, 0.0],
            basis,
        }
    }

    /// The dual vector N = e_0.
    pub fn time_leg(&self) -> [f64; 4] {
        self.basis[0]
    }

    /// Coframe θ^A_a with θ^A(e_B) = δ and the basis determinant.
    fn coframe(&self) -> Result<([[f64; 4]; 4], f64)> {
        let m = Matrix4::from_fn(|i, j| self.basis[j][i]); // columns are e_A
        let det = m.determinant();
        let inv = m
            .try_inverse()
            .ok_or_else(|| Error::InvalidFrame("basis not invertible".into()))?;
        let mut theta = [[0.0; 4]; 4];
        for a_slot in 0..4 {
            for a in 0..4 {
                theta[a_slot][a] = inv[(a_slot, a)];
            }
        }
        Ok((theta, det))
    }
}

/// Constitutive density χ^{abcd} in 6×6 bivector storage (weight-1, pair symmetric).
#[derive(Debug, Clone)]
pub struct ConstitutiveDensity {
    six: [[f64; 6]; 6],
}

impl ConstitutiveDensity {
    /// Build from the 6×6 bivector matrix; validates symmetry and invertibility.
    pub fn from_six(six: [[f64; 6]; 6]) -> Result<Self> {
        let scale = six
            .iter()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return Err(Error::InvalidConstitutive("zero constitutive matrix".into()));
        }
        for i in 0..6 {
            for j in 0..6 {
                if (six[i][j] - six[j][i]).abs() > 1e-12 * scale {
                    return Err(Error::InvalidConstitutive(format!(
                        "pair symmetry violated at ({i},{j}): {} vs {}",
                        six[i][j], six[j][i]
                    )));
                }
            }
        }
        let m = Matrix6::from_fn(|i, j| six[i][j] / scale);
        let eig = SymmetricEigen::new(m);
        let max = eig.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
        let min = eig
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |m, l| m.min(l.abs()));
        if min == 0.0 || max / min > 1e10 {
            return Err(Error::InvalidConstitutive(format!(
                "constitutive map not invertible (condition {:.3e})",
                if min == 0.0 { f64::INFINITY } else { max / min }
            )));
        }
        Ok(Self { six })
    }

    /// Build from a full 4-index array, validating the index symmetries.
    pub fn from_full(full: &Tensor4) -> Result<Self> {
        let scale = full
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return Err(Error::InvalidConstitutive("zero constitutive tensor".into()));
        }
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let v = full[a][b][c][d];
                        if (v + full[b][a][c][d]).abs() > 1e-12 * scale
                            || (v + full[a][b][d][c]).abs() > 1e-12 * scale
                        {
                            return Err(Error::InvalidConstitutive(
                                "index antisymmetry violated".into(),
                            ));
                        }
                    }
                }
            }
        }
        let mut six = [[0.0; 6]; 6];
        for (ai, &(a, b)) in PAIRS.iter().enumerate() {
            for (bi, &(c, d)) in PAIRS.iter().enumerate() {
                six[ai][bi] = full[a][b][c][d];
            }
        }
        Self::from_six(six)
    }

    pub fn six(&self) -> &[[f64; 6]; 6] {
        &self.six
    }

    /// Materialize the full 4-index array (used by oracles and contractions).
    pub fn full(&self) -> Tensor4 {
        let mut full = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let (ai, sa) = pair_slot(a, b).unwrap();
                for c in 0..4 {
                    for d in 0..4 {
                        if c == d {
                            continue;
                        }
                        let (bi, sb) = pair_slot(c, d).unwrap();
                        full[a][b][c][d] = sa * sb * self.six[ai][bi];
                    }
                }
            }
        }
        full
    }

    pub fn scale(&self) -> f64 {
        self.six
            .iter()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

/// Constitutive map κ_{ab}{}^{cd} (twisted-form map) in 6×6 pair storage:
/// `kappa_six[A][B] = κ_{(pair A)}{}^{(pair B)}`.
#[derive(Debug, Clone)]
pub struct ConstitutiveMap {
    six: [[f64; 6]; 6],
}

impl ConstitutiveMap {
    pub fn from_six(six: [[f64; 6]; 6]) -> Self {
        Self { six }
    }

    /// Build from a full array κ_{ab}{}^{cd}; errors when the required pair
    /// antisymmetries are violated.
    pub fn from_full(full: &Tensor4) -> Result<Self> {
        let scale = full
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let v = full[a][b][c][d];
                        if (v + full[b][a][c][d]).abs() > 1e-12 * scale
                            || (v + full[a][b][d][c]).abs() > 1e-12 * scale
                        {
                            return Err(Error::InvalidConstitutive(
                                "kappa pair antisymmetry violated".into(),
                            ));
                        }
                    }
                }
            }
        }
        let mut six = [[0.0; 6]; 6];
        for (ai, &(a, b)) in PAIRS.iter().enumerate() {
            for (bi, &(c, d)) in PAIRS.iter().enumerate() {
                six[ai][bi] = full[a][b][c][d];
            }
        }
        Ok(Self { six })
    }

    pub fn six(&self) -> &[[f64; 6]; 6] {
        &self.six
    }

    pub fn full(&self) -> Tensor4 {
        let mut full = [[[[0.0; 4]; 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let (ai, sa) = pair_slot(a, b).unwrap();
                for c in 0..4 {
                    for d in 0..4 {
                        if c == d {
                            continue;
                        }
                        let (bi, sb) = pair_slot(c, d).unwrap();
                        full[a][b][c][d] = sa * sb * self.six[ai][bi];
                    }
                }
            }
        }
        full
    }
}

/// χ^{abef} = ½ ε^{abcd} κ_{cd}{}^{ef}.
pub fn chi_from_kappa(kappa: &ConstitutiveMap) -> Result<ConstitutiveDensity> {
    let kf = kappa.full();
    let mut full = [[[[0.0; 4]; 4]; 4]; 4];
    for &([a, b, c, d], sign) in epsilon_nonzeros() {
        for e in 0..4 {
            for f in 0..4 {
                full[a][b][e][f] += 0.5 * sign * kf[c][d][e][f];
            }
        }
    }
    ConstitutiveDensity::from_full(&full)
}

/// κ_{ab}{}^{ef} = ½ ε_{abcd} χ^{cdef}.
pub fn kappa_from_chi(chi: &ConstitutiveDensity) -> ConstitutiveMap {
    let cf = chi.full();
    let mut full = [[[[0.0; 4]; 4]; 4]; 4];
    for &([a, b, c, d], sign) in epsilon_nonzeros() {
        for e in 0..4 {
            for f in 0..4 {
                full[a][b][e][f] += 0.5 * sign * cf[c][d][e][f];
            }
        }
    }
    ConstitutiveMap::from_full(&full).expect("epsilon contraction preserves antisymmetry")
}

/// Hodge-induced constitutive density χ^{abcd} = 2 |g|^{1/2} g^{a[c} g^{d]b}.
pub fn maxwell_chi(g: &SpacetimeMetric) -> ConstitutiveDensity {
    let w = g.sqrt_abs_det();
    let gi = g.inverse();
    let mut full = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    full[a][b][c][d] = w * (gi[a][c] * gi[d][b] - gi[a][d] * gi[c][b]);
                }
            }
        }
    }
    ConstitutiveDensity::from_full(&full).expect("hodge density is admissible")
}

/// Uniaxial crystal density
/// χ^{abcd} = |g|^{1/2} (2 g^{c[a} g^{b]d} + 4 X^{[a} U^{b]} X^{[d} U^{c]}).
///
/// U must be unit timelike and X orthogonal to U (X = 0 reduces to Maxwell).
pub fn uniaxial_chi(
    g: &SpacetimeMetric,
    u: &[f64; 4],
    x: &[f64; 4],
) -> Result<ConstitutiveDensity> {
    if (g.dot(u, u) + 1.0).abs() > 1e-10 {
        return Err(Error::InvalidFrame(format!(
            "observer not normalized: g(U,U) = {}",
            g.dot(u, u)
        )));
    }
    if g.dot(u, x).abs() > 1e-10 {
        return Err(Error::InvalidFrame(format!(
            "optic axis not orthogonal to observer: g(U,X) = {}",
            g.dot(u, x)
        )));
    }
    let xx = g.dot(x, x);
    if xx < -1e-12 {
        return Err(Error::InvalidFrame(format!(
            "optic axis not spacelike: g(X,X) = {xx}"
        )));
    }
    let w = g.sqrt_abs_det();
    let gi = g.inverse();
    let anti = |v: &[f64; 4], w_: &[f64; 4], a: usize, b: usize| 0.5 * (v[a] * w_[b] - v[b] * w_[a]);
    let mut full = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let metric_part = gi[c][a] * gi[b][d] - gi[c][b] * gi[a][d];
                    let axis_part = 4.0 * anti(x, u, a, b) * anti(x, u, d, c);
                    full[a][b][c][d] = w * (metric_part + axis_part);
                }
            }
        }
    }
    ConstitutiveDensity::from_full(&full)
}

/// Constitutive density of a linear dielectric/permeable medium given the
/// matrices ε^a{}_b and μ^a{}_b measured by the observer U:
/// κ_{ab}{}^{cd} = 2|g|^{1/2} (ε_{abfg} ϵ^{[c}{}_e U^{d]} U^f g^{eg}
///                − ε_{efgh} μ^e{}_{[a} U_{b]} U^f g^{cg} g^{dh}).
pub fn chi_from_eps_mu(
    g: &SpacetimeMetric,
    u: &[f64; 4],
    eps: &[[f64; 4]; 4],
    mu: &[[f64; 4]; 4],
) -> Result<ConstitutiveDensity> {
    if (g.dot(u, u) + 1.0).abs() > 1e-10 {
        return Err(Error::InvalidFrame("observer not normalized".into()));
    }
    for (name, m) in [("eps", eps), ("mu", mu)] {
        for a in 0..4 {
            let contraction: f64 = (0..4).map(|b| m[a][b] * u[b]).sum();
            if contraction.abs() > 1e-10 {
                return Err(Error::InvalidConstitutive(format!(
                    "{name} U must vanish (component {a}: {contraction})"
                )));
            }
        }
    }
    let w = g.sqrt_abs_det();
    let gi = g.inverse();
    let u_low = g.lower(u);
    let mut kappa = [[[[0.0; 4]; 4]; 4]; 4];
    // first term: ε_{abfg} ϵ^{[c}{}_e U^{d]} U^f g^{eg}
    for &([a, b, f, gg], sign) in epsilon_nonzeros() {
        for c in 0..4 {
            for d in 0..4 {
                let mut term = 0.0;
                for e in 0..4 {
                    term += 0.5 * (eps[c][e] * u[d] - eps[d][e] * u[c]) * gi[e][gg];
                }
                kappa[a][b][c][d] += 2.0 * w * sign * term * u[f];
            }
        }
    }
    // second term: −ε_{efgh} μ^e{}_{[a} U_{b]} U^f g^{cg} g^{dh}
    for &([e, f, gg, h], sign) in epsilon_nonzeros() {
        for a in 0..4 {
            for b in 0..4 {
                let mu_part = 0.5 * (mu[e][a] * u_low[b] - mu[e][b] * u_low[a]);
                if mu_part == 0.0 {
                    continue;
                }
                for c in 0..4 {
                    for d in 0..4 {
                        kappa[a][b][c][d] -= 2.0 * w * sign * mu_part * u[f] * gi[c][gg] * gi[d][h];
                    }
                }
            }
        }
    }
    let map = ConstitutiveMap::from_full(&kappa)?;
    chi_from_kappa(&map)
}

/// Spatial projector δ^a_b + U^a U_b (the "identity" dielectric matrix).
pub fn spatial_projector(g: &SpacetimeMetric, u: &[f64; 4]) -> [[f64; 4]; 4] {
    let u_low = g.lower(u);
    let mut p = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            p[a][b] = if a == b { 1.0 } else { 0.0 };
            p[a][b] += u[a] * u_low[b];
        }
    }
    p
}

/// The three 3×3 blocks of χ in the bivector basis adapted to `frame`:
/// X^{αβ} = χ^{0α0β}, Z^{α𝔟}, Y^{𝔞𝔟} (frame indices).
pub fn six_matrix_blocks(
    chi: &ConstitutiveDensity,
    frame: &ObserverFrame,
) -> Result<([[f64; 3]; 3], [[f64; 3]; 3], [[f64; 3]; 3])> {
    let (theta, det) = frame.coframe()?;
    let full = chi.full();
    // weight-1 density transform: χ' = det(e) θθθθ χ
    let mut six = [[0.0; 6]; 6];
    for (ai, &(a, b)) in PAIRS.iter().enumerate() {
        for (bi, &(c, d)) in PAIRS.iter().enumerate() {
            let mut v = 0.0;
            for p in 0..4 {
                for q in 0..4 {
                    let tp = theta[a][p] * theta[b][q] - theta[a][q] * theta[b][p];
                    if tp == 0.0 {
                        continue;
                    }
                    for r in 0..4 {
                        for s in 0..4 {
                            let tq = theta[c][r] * theta[d][s];
                            if tq == 0.0 {
                                continue;
                            }
                            v += 0.5 * tp * tq * full[p][q][r][s];
                        }
                    }
                }
            }
            six[ai][bi] = det * v;
        }
    }
    let mut x = [[0.0; 3]; 3];
    let mut y = [[0.0; 3]; 3];
    let mut z = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            x[i][j] = six[i][j];
            z[i][j] = six[i][j + 3];
            y[i][j] = six[i + 3][j + 3];
        }
    }
    Ok((x, y, z))
}

/// Named presets used throughout tests and the CLI.
pub mod presets {
    use super::*;

    pub fn maxwell_minkowski() -> ConstitutiveDensity {
        maxwell_chi(&SpacetimeMetric::minkowski())
    }

    pub fn euclidean() -> ConstitutiveDensity {
        maxwell_chi(&SpacetimeMetric::euclidean())
    }

    /// Uniaxial crystal in Minkowski space with optic axis along x.
    pub fn uniaxial(strength: f64) -> ConstitutiveDensity {
        let g = SpacetimeMetric::minkowski();
        let u = [1.0, 0.0, 0.0, 0.0];
        let x = [0.0, strength, 0.0, 0.0];
        uniaxial_chi(&g, &u, &x).expect("axis-aligned uniaxial preset is valid")
    }
}
