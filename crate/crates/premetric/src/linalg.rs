//! Small dense helpers shared across the crate: the Levi-Civita symbol as a
//! sparse table, 4×4 complex matrix algebra (determinant, adjugate, second
//! adjugate) and polynomial root extraction via companion matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::sync::OnceLock;

pub type C64 = Complex64;

/// 4×4 complex matrix in plain storage, row index first.
pub type Mat4c = [[C64; 4]; 4];

/// Rank-4 real tensor with all indices running 0..4.
pub type Tensor4 = [[[[f64; 4]; 4]; 4]; 4];

pub const ZERO_C: C64 = C64::new(0.0, 0.0);
pub const ONE_C: C64 = C64::new(1.0, 0.0);

/// Nonzero entries of the Levi-Civita symbol with ε_0123 = +1.
///
/// The same table serves ε with upper and lower indices: both are permutation
/// symbols with unit normalization, the density weight is bookkeeping.
pub fn epsilon_nonzeros() -> &'static [([usize; 4], f64)] {
    static TABLE: OnceLock<Vec<([usize; 4], f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut entries = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let sign = permutation_sign([a, b, c, d]);
                        if sign != 0.0 {
                            entries.push(([a, b, c, d], sign));
                        }
                    }
                }
            }
        }
        entries
    })
}

/// Sign of the permutation (+1/-1), 0.0 on repeated indices.
pub fn permutation_sign(idx: [usize; 4]) -> f64 {
    let mut seen = [false; 4];
    for &i in &idx {
        if i >= 4 || seen[i] {
            return 0.0;
        }
        seen[i] = true;
    }
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Value of ε_{abcd} (or ε^{abcd}).
pub fn epsilon(a: usize, b: usize, c: usize, d: usize) -> f64 {
    permutation_sign([a, b, c, d])
}

pub fn mat_zero() -> Mat4c {
    [[ZERO_C; 4]; 4]
}

pub fn mat_identity() -> Mat4c {
    let mut m = mat_zero();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE_C;
    }
    m
}

pub fn mat_mul(a: &Mat4c, b: &Mat4c) -> Mat4c {
    let mut out = mat_zero();
    for i in 0..4 {
        for k in 0..4 {
            let aik = a[i][k];
            if aik == ZERO_C {
                continue;
            }
            for j in 0..4 {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat4c, v: &[C64; 4]) -> [C64; 4] {
    let mut out = [ZERO_C; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i] += a[i][j] * v[j];
        }
    }
    out
}

pub fn mat_scale(a: &Mat4c, s: C64) -> Mat4c {
    let mut out = *a;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x *= s;
        }
    }
    out
}

pub fn mat_sub(a: &Mat4c, b: &Mat4c) -> Mat4c {
    let mut out = *a;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn mat_norm(a: &Mat4c) -> f64 {
    a.iter()
        .flatten()
        .map(|x| x.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn det3(m: [[C64; 3]; 3]) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn minor3(m: &Mat4c, skip_row: usize, skip_col: usize) -> C64 {
    let mut sub = [[ZERO_C; 3]; 3];
    let mut r = 0;
    for i in 0..4 {
        if i == skip_row {
            continue;
        }
        let mut c = 0;
        for j in 0..4 {
            if j == skip_col {
                continue;
            }
            sub[r][c] = m[i][j];
            c += 1;
        }
        r += 1;
    }
    det3(sub)
}

pub fn det4(m: &Mat4c) -> C64 {
    let mut det = ZERO_C;
    for j in 0..4 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += m[0][j] * minor3(m, 0, j) * C64::new(sign, 0.0);
    }
    det
}

/// Classical adjugate: `adj(M) · M = det(M) · I`.
///
/// Index convention matches `adj(M)_{ab} M^{bc} = det(M) δ_a^c` for the
/// upper-index symbol matrices used throughout.
pub fn adjugate(m: &Mat4c) -> Mat4c {
    let mut adj = mat_zero();
    for i in 0..4 {
        for j in 0..4 {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            // transpose of the cofactor matrix
            adj[j][i] = minor3(m, i, j) * C64::new(sign, 0.0);
        }
    }
    adj
}

/// Second adjugate, `adj2(M)_{cdef} = ½ ε_{de a₁a₂} ε_{cf b₁b₂} M^{a₁b₁} M^{a₂b₂}`.
///
/// Satisfies `M^{ae} adj2(M)_{ebcd} = δ^a_b adj(M)_{cd} − δ^a_d adj(M)_{cb}`.
pub fn second_adjugate(m: &Mat4c) -> [[[[C64; 4]; 4]; 4]; 4] {
    let eps = epsilon_nonzeros();
    let mut out = [[[[ZERO_C; 4]; 4]; 4]; 4];
    for &(e1, s1) in eps {
        let [d, e, a1, a2] = e1;
        for &(e2, s2) in eps {
            let [c, f, b1, b2] = e2;
            out[c][d][e][f] += C64::new(0.5 * s1 * s2, 0.0) * m[a1][b1] * m[a2][b2];
        }
    }
    out
}

/// Roots of a real-coefficient polynomial, low-order coefficients first,
/// computed as the eigenvalues of the companion matrix.
///
/// Leading coefficients below `lead_tol` relative to the max coefficient are
/// dropped (the polynomial degenerates to lower degree). Returns an empty
/// vector for (near-)constant polynomials.
pub fn poly_roots(coeffs: &[f64], lead_tol: f64) -> Vec<C64> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() < lead_tol * scale {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut companion = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -coeffs[i] / lead;
    }
    companion.complex_eigenvalues().iter().copied().collect()
}

/// Greedy clustering of near-coincident roots; the cluster center is the mean.
///
/// Roots closer than `tol` are treated as a single confluent root whose
/// multiplicity is the cluster size.
pub fn cluster_roots(roots: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut remaining: Vec<C64> = roots.to_vec();
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    while let Some(seed) = remaining.pop() {
        let mut members = vec![seed];
        let mut changed = true;
        while changed {
            changed = false;
            let center = mean(&members);
            let mut i = 0;
            while i < remaining.len() {
                if (remaining[i] - center).norm() < tol {
                    members.push(remaining.remove(i));
                    changed = true;
                } else {
                    i += 1;
                }
            }
        }
        clusters.push((mean(&members), members.len()));
    }
    clusters.sort_by(|a, b| a.0.re.partial_cmp(&b.0.re).unwrap());
    clusters
}

fn mean(v: &[C64]) -> C64 {
    v.iter().sum::<C64>() / C64::new(v.len() as f64, 0.0)
}

/// Evaluate a polynomial given low-first coefficients.
pub fn poly_eval(coeffs: &[f64], x: C64) -> C64 {
    let mut acc = ZERO_C;
    for &c in coeffs.iter().rev() {
        acc = acc * x + C64::new(c, 0.0);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_has_24_nonzeros() {
        assert_eq!(epsilon_nonzeros().len(), 24);
        assert_eq!(epsilon(0, 1, 2, 3), 1.0);
        assert_eq!(epsilon(1, 0, 2, 3), -1.0);
        assert_eq!(epsilon(2, 3, 0, 1), 1.0);
        assert_eq!(epsilon(0, 0, 2, 3), 0.0);
    }

    #[test]
    fn adjugate_of_identity() {
        let id = mat_identity();
        let adj = adjugate(&id);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { ONE_C } else { ZERO_C };
                assert_eq!(adj[i][j], expect);
            }
        }
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let mut m = mat_zero();
        let vals = [
            2.0, -1.0, 0.5, 3.0, 1.0, 4.0, -2.0, 0.0, 0.0, 1.0, 1.0, -1.0, 5.0, 0.0, 2.0, 1.0,
        ];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = C64::new(vals[4 * i + j], 0.1 * (i as f64 - j as f64));
            }
        }
        let det = det4(&m);
        let adj = adjugate(&m);
        // adj(M)_{ab} M^{bc} = det δ
        let mut prod = mat_zero();
        for a in 0..4 {
            for c in 0..4 {
                for b in 0..4 {
                    prod[a][c] += adj[a][b] * m[b][c];
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { det } else { ZERO_C };
                assert!((prod[i][j] - expect).norm() < 1e-12 * det.norm().max(1.0));
            }
        }
    }

    #[test]
    fn quartic_roots_with_multiplicity() {
        // (x-1)^2 (x+2)^2 = x^4 + 2x^3 -3x^2 -4x + 4
        let coeffs = [4.0, -4.0, -3.0, 2.0, 1.0];
        let roots = poly_roots(&coeffs, 1e-12);
        assert_eq!(roots.len(), 4);
        let clusters = cluster_roots(&roots, 1e-5);
        assert_eq!(clusters.len(), 2);
        assert_eq!(clusters[0].1, 2);
        assert_eq!(clusters[1].1, 2);
        assert!((clusters[0].0 - C64::new(-2.0, 0.0)).norm() < 1e-10);
        assert!((clusters[1].0 - C64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn degenerate_leading_coefficient_drops_degree() {
        // effectively quadratic: x^2 - 1
        let coeffs = [-1.0, 0.0, 1.0, 0.0, 1e-18];
        let roots = poly_roots(&coeffs, 1e-12);
        assert_eq!(roots.len(), 2);
    }
}
