//! Pointwise symbol algebra of the field operator `P = d#d`.
//!
//! For a covector k the principal symbol is the symmetric matrix
//! `𝓜^{ab}(k) = χ^{acbd} k_c k_d`, degenerate along k. Its adjugate factors as
//! `adj(𝓜) = 𝓖(k) k⊗k`, which defines the quartic Fresnel tensor density
//! `𝓖^{abcd}`. Together with the bilinear tensor `𝓠_{ab}(k)` and a gauge dual
//! κ(k) (κ·k = 1) one obtains the quasi-inverse
//! `Ê_{ab} = 𝓖(k)⁻¹ 𝓠_{cd} π^c_a π^d_b`, `π = id − κ⊗k`, which inverts 𝓜 on
//! the gauge-fixed subspace: `𝓜 Ê = π`.
//!
//! All ε-contractions run over precomputed sparse index tables (24 nonzeros per
//! ε); covectors may be complex throughout.

use crate::constitutive::{ConstitutiveDensity, SpacetimeMetric};
use crate::linalg::{
    epsilon_nonzeros, mat_zero, Mat4c, Tensor4, C64, ONE_C, ZERO_C,
};
use crate::{Error, Result};

/// Covector with complex components (small imaginary parts are used by
/// contour-shifted evaluations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Covector(pub [C64; 4]);

impl Covector {
    pub fn real(k: [f64; 4]) -> Self {
        Covector([
            C64::new(k[0], 0.0),
            C64::new(k[1], 0.0),
            C64::new(k[2], 0.0),
            C64::new(k[3], 0.0),
        ])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.0;
        for c in out.iter_mut() {
            *c *= s;
        }
        Covector(out)
    }
}

/// Totally symmetric Fresnel tensor density 𝓖^{abcd}.
#[derive(Debug, Clone)]
pub struct FresnelTensor {
    g4: Tensor4,
    norm: f64,
}

impl FresnelTensor {
    pub fn components(&self) -> &Tensor4 {
        &self.g4
    }

    /// Max-norm of the components, used for relative tolerances.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// 𝓖(k) = 𝓖^{abcd} k_a k_b k_c k_d.
    pub fn eval(&self, k: &Covector) -> C64 {
        let mut acc = ZERO_C;
        for a in 0..4 {
            for b in 0..4 {
                let kab = k.0[a] * k.0[b];
                for c in 0..4 {
                    for d in 0..4 {
                        acc += C64::new(self.g4[a][b][c][d], 0.0) * kab * k.0[c] * k.0[d];
                    }
                }
            }
        }
        acc
    }

    pub fn eval_real(&self, k: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let kab = k[a] * k[b];
                for c in 0..4 {
                    for d in 0..4 {
                        acc += self.g4[a][b][c][d] * kab * k[c] * k[d];
                    }
                }
            }
        }
        acc
    }

    /// Symmetric multilinear evaluation 𝓖(a, b, c, d).
    pub fn eval_multi(&self, a: &[f64; 4], b: &[f64; 4], c: &[f64; 4], d: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                for p in 0..4 {
                    for q in 0..4 {
                        acc += self.g4[i][j][p][q] * a[i] * b[j] * c[p] * d[q];
                    }
                }
            }
        }
        acc
    }

    /// Gradient ∂𝓖/∂k_a = 4 𝓖^{abcd} k_b k_c k_d.
    pub fn gradient(&self, k: &Covector) -> [C64; 4] {
        let mut out = [ZERO_C; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        out[a] += C64::new(4.0 * self.g4[a][b][c][d], 0.0)
                            * k.0[b]
                            * k.0[c]
                            * k.0[d];
                    }
                }
            }
        }
        out
    }

    pub fn gradient_real(&self, k: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        out[a] += 4.0 * self.g4[a][b][c][d] * k[b] * k[c] * k[d];
                    }
                }
            }
        }
        out
    }

    /// Coefficients of the quartic τ ↦ 𝓖(k + τ n), low order first.
    pub fn direction_polynomial(&self, k: &[f64; 4], n: &[f64; 4]) -> [f64; 5] {
        let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
        let mut coeffs = [0.0; 5];
        for (m, c) in coeffs.iter_mut().enumerate() {
            let args: Vec<&[f64; 4]> = (0..4).map(|i| if i < m { n } else { k }).collect();
            *c = binom[m] * self.eval_multi(args[0], args[1], args[2], args[3]);
        }
        coeffs
    }

    /// Mode polynomial ω ↦ 𝓖((ω, k⃗)), low order first.
    pub fn mode_polynomial(&self, kvec: &[f64; 3]) -> [f64; 5] {
        let k = [0.0, kvec[0], kvec[1], kvec[2]];
        let n = [1.0, 0.0, 0.0, 0.0];
        self.direction_polynomial(&k, &n)
    }

    /// Relative tolerance below which a covector counts as characteristic.
    pub fn characteristic_scale(&self, k: &Covector) -> f64 {
        let kn = k.norm();
        self.norm * kn.powi(4)
    }
}

/// Principal symbol 𝓜^{ab}(k) = χ^{acbd} k_c k_d (symmetric, 𝓜 k = 0).
pub fn principal_symbol(chi: &ConstitutiveDensity, k: &Covector) -> Mat4c {
    let full = chi.full();
    let mut m = mat_zero();
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO_C;
            for c in 0..4 {
                for d in 0..4 {
                    let x = full[a][c][b][d];
                    if x != 0.0 {
                        acc += C64::new(x, 0.0) * k.0[c] * k.0[d];
                    }
                }
            }
            m[a][b] = acc;
        }
    }
    m
}

/// Bilinear coefficients of the principal symbol:
/// `𝓜^{ab}(k) = out[a][b][c][d] k_c k_d`.
pub fn principal_symbol_bilinear(chi: &ConstitutiveDensity) -> Tensor4 {
    let full = chi.full();
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    out[a][b][c][d] = full[a][c][b][d];
                }
            }
        }
    }
    out
}

/// Fresnel tensor density via the sparse double-ε triple-χ contraction,
/// explicitly symmetrized.
///
/// Normalized so that the Maxwell density is `𝓖(k) = |g|^{1/2} g⁻¹(k,k)²`
/// (Tamm–Rubilar convention); the adjugate of the principal symbol then
/// factors as `adj(𝓜) = −𝓖(k) k⊗k`.
pub fn fresnel_tensor(chi: &ConstitutiveDensity) -> FresnelTensor {
    let full = chi.full();
    let eps = epsilon_nonzeros();
    let mut raw = [[[[0.0; 4]; 4]; 4]; 4];
    for &([c1, a1, a2, a3], s1) in eps {
        for &([d3, b1, b2, b3], s2) in eps {
            let factor = -s1 * s2 / 24.0;
            for d1 in 0..4 {
                let x1 = full[a1][c1][b1][d1];
                if x1 == 0.0 {
                    continue;
                }
                for c2 in 0..4 {
                    for d2 in 0..4 {
                        let x2 = full[a2][c2][b2][d2];
                        if x2 == 0.0 {
                            continue;
                        }
                        for c3 in 0..4 {
                            let x3 = full[a3][c3][b3][d3];
                            if x3 != 0.0 {
                                raw[d1][c2][d2][c3] += factor * x1 * x2 * x3;
                            }
                        }
                    }
                }
            }
        }
    }
    // total symmetrization over the four free slots
    let perms = permutations4();
    let mut g4 = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut acc = 0.0;
                    for p in &perms {
                        acc += raw[idx[p[0]]][idx[p[1]]][idx[p[2]]][idx[p[3]]];
                    }
                    g4[a][b][c][d] = acc / 24.0;
                }
            }
        }
    }
    let norm = g4
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    FresnelTensor { g4, norm }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    if crate::linalg::permutation_sign(idx) != 0.0 {
                        out.push(idx);
                    }
                }
            }
        }
    }
    out
}

/// Bilinear coefficients of 𝓠:
/// `𝓠_{ab}(k) = out[a][b][c][d] k_c k_d` with
/// `out[a][b][d1][c2] = (1/8) ε_{b c₁ a₁ a₂} ε_{a d₂ b₁ b₂} χ^{a₁c₁b₁d₁} χ^{a₂c₂b₂d₂}`.
pub fn q_bilinear(chi: &ConstitutiveDensity) -> Tensor4 {
    let full = chi.full();
    let eps = epsilon_nonzeros();
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    // sign matches the Fresnel normalization: M Q π = G π stays exact
    for &([b, c1, a1, a2], s1) in eps {
        for &([a, d2, b1, b2], s2) in eps {
            let factor = -0.125 * s1 * s2;
            for d1 in 0..4 {
                let x1 = full[a1][c1][b1][d1];
                if x1 == 0.0 {
                    continue;
                }
                for c2 in 0..4 {
                    let x2 = full[a2][c2][b2][d2];
                    if x2 != 0.0 {
                        out[a][b][d1][c2] += factor * x1 * x2;
                    }
                }
            }
        }
    }
    out
}

/// 𝓠_{ab}(k), symmetric under the pair symmetry of χ.
pub fn q_matrix(chi: &ConstitutiveDensity, k: &Covector) -> Mat4c {
    let table = q_bilinear(chi);
    q_matrix_from_bilinear(&table, k)
}

pub fn q_matrix_from_bilinear(table: &Tensor4, k: &Covector) -> Mat4c {
    let mut q = mat_zero();
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO_C;
            for c in 0..4 {
                for d in 0..4 {
                    let x = table[a][b][c][d];
                    if x != 0.0 {
                        acc += C64::new(x, 0.0) * k.0[c] * k.0[d];
                    }
                }
            }
            q[a][b] = acc;
        }
    }
    q
}

/// How the gauge dual κ(k) is chosen.
#[derive(Debug, Clone)]
pub enum GaugeChoice {
    /// κ^a = g^{ab} k_b / g⁻¹(k,k)
    Metric(SpacetimeMetric),
    /// κ^a = 𝓖^{abcd} k_b k_c k_d / 𝓖(k) — the canonical choice
    Fresnel,
    /// Externally supplied dual vector (must satisfy κ·k = 1)
    Explicit([C64; 4]),
}

/// A dual vector κ with κ^a k_a = 1 at the covector it was built for.
#[derive(Debug, Clone)]
pub struct GaugeDual {
    pub value: [C64; 4],
}

impl GaugeDual {
    pub fn pairing(&self, k: &Covector) -> C64 {
        self.value
            .iter()
            .zip(k.0.iter())
            .map(|(a, b)| a * b)
            .sum()
    }
}

const SINGULAR_REL_TOL: f64 = 1e-9;

/// Evaluate the gauge dual for `choice` at k.
pub fn gauge_dual(
    choice: &GaugeChoice,
    fresnel: &FresnelTensor,
    k: &Covector,
) -> Result<GaugeDual> {
    let value = match choice {
        GaugeChoice::Metric(g) => {
            let gi = g.inverse();
            let mut raised = [ZERO_C; 4];
            let mut denom = ZERO_C;
            for a in 0..4 {
                for b in 0..4 {
                    raised[a] += C64::new(gi[a][b], 0.0) * k.0[b];
                }
            }
            for a in 0..4 {
                denom += raised[a] * k.0[a];
            }
            let scale = {
                let gn = gi
                    .iter()
                    .flatten()
                    .fold(0.0f64, |m, x| m.max(x.abs()));
                gn * k.norm().powi(2)
            };
            if denom.norm() < SINGULAR_REL_TOL * scale {
                return Err(Error::SingularGauge(format!(
                    "metric dual undefined: g⁻¹(k,k) = {denom}"
                )));
            }
            let mut out = raised;
            for c in out.iter_mut() {
                *c /= denom;
            }
            out
        }
        GaugeChoice::Fresnel => {
            let grad = fresnel.gradient(k);
            let denom = fresnel.eval(k);
            if denom.norm() < SINGULAR_REL_TOL * fresnel.characteristic_scale(k) {
                return Err(Error::SingularGauge(format!(
                    "fresnel dual undefined: G(k) = {denom}"
                )));
            }
            let mut out = grad;
            for c in out.iter_mut() {
                *c /= C64::new(4.0, 0.0) * denom;
            }
            out
        }
        GaugeChoice::Explicit(v) => *v,
    };
    let dual = GaugeDual { value };
    let pairing = dual.pairing(k);
    if (pairing - ONE_C).norm() > 1e-10 {
        return Err(Error::SingularGauge(format!(
            "dual not normalized: κ·k = {pairing}"
        )));
    }
    Ok(dual)
}

/// Projector π^a_b = δ^a_b − κ^a k_b.
pub fn gauge_projector(kappa: &GaugeDual, k: &Covector) -> Mat4c {
    let mut p = crate::linalg::mat_identity();
    for a in 0..4 {
        for b in 0..4 {
            p[a][b] -= kappa.value[a] * k.0[b];
        }
    }
    p
}

/// Quasi-inverse of the principal symbol at a non-characteristic covector.
#[derive(Debug, Clone)]
pub struct QuasiInverse {
    /// Ê_{ab} = 𝓖⁻¹ 𝓠_{cd} π^c_a π^d_b
    pub e: Mat4c,
    /// The dual vector used to build the projector.
    pub kappa: GaugeDual,
    /// The covector the inverse was built at.
    pub k: Covector,
}

pub fn quasi_inverse(
    chi: &ConstitutiveDensity,
    fresnel: &FresnelTensor,
    k: &Covector,
    kappa: GaugeDual,
) -> Result<QuasiInverse> {
    let g = fresnel.eval(k);
    let tol = SINGULAR_REL_TOL * fresnel.characteristic_scale(k);
    if g.norm() < tol {
        return Err(Error::CharacteristicCovector {
            value: g.norm(),
            tol,
        });
    }
    let q = q_matrix(chi, k);
    let pi = gauge_projector(&kappa, k);
    let mut e = mat_zero();
    for a in 0..4 {
        for b in 0..4 {
            let mut acc = ZERO_C;
            for c in 0..4 {
                for d in 0..4 {
                    acc += q[c][d] * pi[c][a] * pi[d][b];
                }
            }
            e[a][b] = acc / g;
        }
    }
    Ok(QuasiInverse { e, kappa, k: *k })
}

/// Recover the shift covector m relating two quasi-inverses at the same k:
/// `Ê = Ê' − m⊗k − k⊗m` with `m_a = Ê'_{ab} κ^b − ½ Ê'_{bc} κ^b κ^c k_a`,
/// κ the dual of the first argument. Also satisfies `𝓜 m = κ − κ'`.
pub fn gauge_shift(e1: &QuasiInverse, e2: &QuasiInverse, k: &Covector) -> Result<[C64; 4]> {
    if e1.k != *k || e2.k != *k {
        return Err(Error::GaugeShiftMismatch(f64::NAN));
    }
    let kappa = &e1.kappa.value;
    let ep = &e2.e;
    let mut m = [ZERO_C; 4];
    let mut quad = ZERO_C;
    for b in 0..4 {
        for c in 0..4 {
            quad += ep[b][c] * kappa[b] * kappa[c];
        }
    }
    for a in 0..4 {
        let mut lin = ZERO_C;
        for b in 0..4 {
            lin += ep[a][b] * kappa[b];
        }
        m[a] = lin - quad * k.0[a] / C64::new(2.0, 0.0);
    }
    // consistency: Ê = Ê' − m k − k m
    let mut resid = 0.0f64;
    let mut scale = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            let predicted = ep[a][b] - m[b] * k.0[a] - m[a] * k.0[b];
            resid = resid.max((e1.e[a][b] - predicted).norm());
            scale = scale.max(e1.e[a][b].norm());
        }
    }
    if resid > 1e-8 * scale.max(1e-300) {
        return Err(Error::GaugeShiftMismatch(resid / scale));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::presets;
    use crate::linalg::{adjugate, mat_mul, mat_norm, mat_sub};

    fn maxwell_k0() -> (ConstitutiveDensity, FresnelTensor, Covector) {
        let chi = presets::maxwell_minkowski();
        let fresnel = fresnel_tensor(&chi);
        let k = Covector::real([1.0, 0.0, 0.0, 0.0]);
        (chi, fresnel, k)
    }

    #[test]
    fn maxwell_principal_symbol_at_dt() {
        let (chi, _, k) = maxwell_k0();
        let m = principal_symbol(&chi, &k);
        let expect = [0.0, -1.0, -1.0, -1.0];
        for a in 0..4 {
            for b in 0..4 {
                let e = if a == b { expect[a] } else { 0.0 };
                assert!((m[a][b] - C64::new(e, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn symbol_annihilates_k() {
        let chi = presets::uniaxial(0.8);
        let k = Covector::real([0.3, -1.2, 0.7, 2.1]);
        let m = principal_symbol(&chi, &k);
        let norm = mat_norm(&m);
        for a in 0..4 {
            let mut left = ZERO_C;
            let mut right = ZERO_C;
            for b in 0..4 {
                left += m[a][b] * k.0[b];
                right += m[b][a] * k.0[b];
            }
            assert!(left.norm() < 1e-13 * norm);
            assert!(right.norm() < 1e-13 * norm);
        }
    }

    #[test]
    fn symbol_vanishes_at_zero_covector() {
        let chi = presets::maxwell_minkowski();
        let m = principal_symbol(&chi, &Covector::real([0.0; 4]));
        assert_eq!(mat_norm(&m), 0.0);
    }

    #[test]
    fn maxwell_fresnel_scalar() {
        let (_, fresnel, k) = maxwell_k0();
        assert!((fresnel.eval(&k) - ONE_C).norm() < 1e-13);
        // closed form |g|^{1/2} g⁻¹(k,k)² at a generic covector
        let k2 = Covector::real([0.4, 1.3, -0.2, 0.9]);
        let g = SpacetimeMetric::minkowski();
        let kk = g.inv_dot(&[0.4, 1.3, -0.2, 0.9], &[0.4, 1.3, -0.2, 0.9]);
        assert!((fresnel.eval(&k2) - C64::new(kk * kk, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn uniaxial_fresnel_bimetric_factorization() {
        let strength = 0.6;
        let chi = presets::uniaxial(strength);
        let fresnel = fresnel_tensor(&chi);
        let g = SpacetimeMetric::minkowski();
        let u = [1.0, 0.0, 0.0, 0.0];
        let x = [0.0, strength, 0.0, 0.0];
        let k = [0.7, -0.4, 1.1, 0.3];
        let kk = g.inv_dot(&k, &k);
        let uk: f64 = u.iter().zip(k.iter()).map(|(a, b)| a * b).sum();
        let xk: f64 = x.iter().zip(k.iter()).map(|(a, b)| a * b).sum();
        let expect = kk * (kk - uk * uk * g.dot(&x, &x) + xk * xk);
        assert!((fresnel.eval_real(&k) - expect).abs() < 1e-12);
    }

    #[test]
    fn fresnel_quartic_homogeneity() {
        let chi = presets::uniaxial(0.5);
        let fresnel = fresnel_tensor(&chi);
        let k = Covector::real([0.2, 0.9, -0.5, 0.4]);
        let lambda = C64::new(1.7, 0.0);
        let scaled = k.scaled(lambda);
        let lhs = fresnel.eval(&scaled);
        let rhs = lambda.powi(4) * fresnel.eval(&k);
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }

    #[test]
    fn maxwell_q_matrix_closed_form() {
        let (chi, _, k) = maxwell_k0();
        let q = q_matrix(&chi, &k);
        let expect = [0.0, -1.0, -1.0, -1.0];
        for a in 0..4 {
            for b in 0..4 {
                let e = if a == b { expect[a] } else { 0.0 };
                assert!(
                    (q[a][b] - C64::new(e, 0.0)).norm() < 1e-13,
                    "Q[{a}][{b}] = {}",
                    q[a][b]
                );
            }
        }
        // general k: Q_ab = g_ab g⁻¹(k,k) − k_a k_b
        let g = SpacetimeMetric::minkowski();
        let kr = [0.3, 1.1, -0.7, 0.5];
        let q2 = q_matrix(&chi, &Covector::real(kr));
        let kk = g.inv_dot(&kr, &kr);
        for a in 0..4 {
            for b in 0..4 {
                let e = g.components()[a][b] * kk - kr[a] * kr[b];
                assert!((q2[a][b] - C64::new(e, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn mq_identity_on_gauge_fixed_subspace() {
        let chi = presets::uniaxial(0.45);
        let fresnel = fresnel_tensor(&chi);
        let k = Covector::real([0.9, 0.2, -0.4, 0.6]);
        let m = principal_symbol(&chi, &k);
        let q = q_matrix(&chi, &k);
        let g = fresnel.eval(&k);
        let kappa = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &k).unwrap();
        let pi = gauge_projector(&kappa, &k);
        // 𝓜^{ac} 𝓠_{cd} π^d_b = 𝓖 π^a_b
        let mut mq = mat_zero();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    mq[a][b] += m[a][c] * q[c][b];
                }
            }
        }
        let mqpi = mat_mul(&mq, &pi);
        let gpi = crate::linalg::mat_scale(&pi, g);
        let resid = mat_norm(&mat_sub(&mqpi, &gpi));
        assert!(resid < 1e-12 * mat_norm(&gpi));
    }

    #[test]
    fn maxwell_quasi_inverse_at_dt() {
        let (chi, fresnel, k) = maxwell_k0();
        let g = SpacetimeMetric::minkowski();
        let kappa = gauge_dual(&GaugeChoice::Metric(g), &fresnel, &k).unwrap();
        for (a, v) in kappa.value.iter().enumerate() {
            let e = if a == 0 { 1.0 } else { 0.0 };
            assert!((v - C64::new(e, 0.0)).norm() < 1e-13);
        }
        let qi = quasi_inverse(&chi, &fresnel, &k, kappa).unwrap();
        let expect = [0.0, -1.0, -1.0, -1.0];
        for a in 0..4 {
            for b in 0..4 {
                let e = if a == b { expect[a] } else { 0.0 };
                assert!((qi.e[a][b] - C64::new(e, 0.0)).norm() < 1e-13);
            }
        }
        // 𝓜 Ê = π = diag(0,1,1,1)
        let m = principal_symbol(&chi, &k);
        let me = mat_mul(&m, &qi.e);
        for a in 0..4 {
            for b in 0..4 {
                let e = if a == b && a > 0 { 1.0 } else { 0.0 };
                assert!((me[a][b] - C64::new(e, 0.0)).norm() < 1e-13);
            }
        }
        // Ê κ = 0
        for a in 0..4 {
            let mut acc = ZERO_C;
            for b in 0..4 {
                acc += qi.e[a][b] * qi.kappa.value[b];
            }
            assert!(acc.norm() < 1e-13);
        }
    }

    #[test]
    fn quasi_inverse_rejects_characteristic_covector() {
        let (chi, fresnel, _) = maxwell_k0();
        let k = Covector::real([1.0, 1.0, 0.0, 0.0]); // null covector
        let err = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &k);
        assert!(err.is_err());
        let kappa = GaugeDual {
            value: [C64::new(1.0, 0.0), ZERO_C, ZERO_C, ZERO_C],
        };
        assert!(quasi_inverse(&chi, &fresnel, &k, kappa).is_err());
    }

    #[test]
    fn maxwell_metric_and_fresnel_gauges_coincide() {
        let (chi, fresnel, _) = maxwell_k0();
        let k = Covector::real([1.3, 0.4, -0.2, 0.7]);
        let km = gauge_dual(
            &GaugeChoice::Metric(SpacetimeMetric::minkowski()),
            &fresnel,
            &k,
        )
        .unwrap();
        let kf = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &k).unwrap();
        for a in 0..4 {
            assert!((km.value[a] - kf.value[a]).norm() < 1e-12);
        }
        let e1 = quasi_inverse(&chi, &fresnel, &k, km).unwrap();
        let e2 = quasi_inverse(&chi, &fresnel, &k, kf).unwrap();
        let m = gauge_shift(&e1, &e2, &k).unwrap();
        for c in m.iter() {
            assert!(c.norm() < 1e-11);
        }
    }

    #[test]
    fn uniaxial_fresnel_gauge_is_mean_of_metric_gauges() {
        let strength = 0.5;
        let chi = presets::uniaxial(strength);
        let fresnel = fresnel_tensor(&chi);
        let g = SpacetimeMetric::minkowski();
        let u = [1.0, 0.0, 0.0, 0.0];
        let x = [0.0, strength, 0.0, 0.0];
        let kr = [1.1, 0.3, -0.6, 0.2];
        let k = Covector::real(kr);

        let kappa1 = gauge_dual(&GaugeChoice::Metric(g.clone()), &fresnel, &k).unwrap();
        // second metric factor: g⁻¹ − g(X,X) U⊗U + X⊗X
        let xx = g.dot(&x, &x);
        let uk: f64 = u.iter().zip(kr.iter()).map(|(a, b)| a * b).sum();
        let xk: f64 = x.iter().zip(kr.iter()).map(|(a, b)| a * b).sum();
        let denom = g.inv_dot(&kr, &kr) - uk * uk * xx + xk * xk;
        let mut kappa2 = [ZERO_C; 4];
        for a in 0..4 {
            let mut num = 0.0;
            for b in 0..4 {
                num += g.inverse()[a][b] * kr[b];
            }
            num += -uk * xx * u[a] + xk * x[a];
            kappa2[a] = C64::new(num / denom, 0.0);
        }
        let kappa3 = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &k).unwrap();
        for a in 0..4 {
            let mean = (kappa1.value[a] + kappa2[a]) / C64::new(2.0, 0.0);
            assert!(
                (kappa3.value[a] - mean).norm() < 1e-12,
                "component {a}: {} vs {}",
                kappa3.value[a],
                mean
            );
        }
    }

    #[test]
    fn gauge_shift_recovers_kappa_difference() {
        let strength = 0.5;
        let chi = presets::uniaxial(strength);
        let fresnel = fresnel_tensor(&chi);
        let g = SpacetimeMetric::minkowski();
        let kr = [1.1, 0.3, -0.6, 0.2];
        let k = Covector::real(kr);
        let kappa1 = gauge_dual(&GaugeChoice::Metric(g), &fresnel, &k).unwrap();
        let kappa3 = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &k).unwrap();
        let e1 = quasi_inverse(&chi, &fresnel, &k, kappa1.clone()).unwrap();
        let e3 = quasi_inverse(&chi, &fresnel, &k, kappa3.clone()).unwrap();
        let m_shift = gauge_shift(&e1, &e3, &k).unwrap();
        let msym = principal_symbol(&chi, &k);
        for a in 0..4 {
            let mut lhs = ZERO_C;
            for b in 0..4 {
                lhs += msym[a][b] * m_shift[b];
            }
            let rhs = kappa1.value[a] - kappa3.value[a];
            assert!(
                (lhs - rhs).norm() < 1e-10,
                "component {a}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn adjugate_factorization_yields_fresnel() {
        let chi = presets::uniaxial(0.7);
        let fresnel = fresnel_tensor(&chi);
        let k = Covector::real([0.8, 0.5, -0.3, 0.9]);
        let m = principal_symbol(&chi, &k);
        let adj = adjugate(&m);
        let g = fresnel.eval(&k);
        let mut scale = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                scale = scale.max(adj[a][b].norm());
            }
        }
        // adj(𝓜) = −𝓖(k) k⊗k in the Tamm–Rubilar normalization
        for a in 0..4 {
            for b in 0..4 {
                let expect = -g * k.0[a] * k.0[b];
                assert!(
                    (adj[a][b] - expect).norm() < 1e-10 * scale,
                    "adj[{a}][{b}] = {} vs {}",
                    adj[a][b],
                    expect
                );
            }
        }
    }

    #[test]
    fn quasi_inverse_scaling_degree() {
        let chi = presets::uniaxial(0.4);
        let fresnel = fresnel_tensor(&chi);
        let k = Covector::real([1.0, 0.2, 0.5, -0.3]);
        let lambda = 2.5;
        let kl = k.scaled(C64::new(lambda, 0.0));
        let kappa = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &k).unwrap();
        let kappal = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &kl).unwrap();
        // homogeneity of the fresnel dual: κ(λk) = κ(k)/λ
        for a in 0..4 {
            assert!((kappal.value[a] - kappa.value[a] / C64::new(lambda, 0.0)).norm() < 1e-12);
        }
        let e = quasi_inverse(&chi, &fresnel, &k, kappa).unwrap();
        let el = quasi_inverse(&chi, &fresnel, &kl, kappal).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let expect = e.e[a][b] / C64::new(lambda * lambda, 0.0);
                assert!((el.e[a][b] - expect).norm() < 1e-12 * expect.norm().max(1e-12));
            }
        }
    }

    #[test]
    fn complex_covector_support() {
        let chi = presets::uniaxial(0.3);
        let fresnel = fresnel_tensor(&chi);
        let k = Covector([
            C64::new(1.2, -0.1),
            C64::new(0.3, 0.05),
            C64::new(-0.4, 0.0),
            C64::new(0.6, 0.02),
        ]);
        let kappa = gauge_dual(&GaugeChoice::Fresnel, &fresnel, &k).unwrap();
        let qi = quasi_inverse(&chi, &fresnel, &k, kappa.clone()).unwrap();
        let m = principal_symbol(&chi, &k);
        let me = mat_mul(&m, &qi.e);
        let pi = gauge_projector(&kappa, &k);
        let resid = mat_norm(&mat_sub(&me, &pi));
        assert!(resid < 1e-10 * mat_norm(&pi));
    }
}
