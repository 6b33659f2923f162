//! Fixed-dimension tensor kernel for 3-space.
//!
//! Dense rank-1..4 arrays (at most 81 components), the Levi-Civita symbol,
//! (anti)symmetrization without numerical factors, and metric index
//! transport. Indices are 0-based in storage; all public contracts are
//! index-value based.

use std::array::from_fn;

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];
pub type Rank3 = [[[f64; 3]; 3]; 3];
pub type Rank4 = [[[[f64; 3]; 3]; 3]; 3];

pub fn vec3(f: impl FnMut(usize) -> f64) -> Vec3 {
    from_fn(f)
}

pub fn mat3(mut f: impl FnMut(usize, usize) -> f64) -> Mat3 {
    from_fn(|i| from_fn(|j| f(i, j)))
}

pub fn rank3(mut f: impl FnMut(usize, usize, usize) -> f64) -> Rank3 {
    from_fn(|i| from_fn(|j| from_fn(|k| f(i, j, k))))
}

pub fn rank4(mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Rank4 {
    from_fn(|i| from_fn(|j| from_fn(|k| from_fn(|l| f(i, j, k, l)))))
}

pub fn sum1(mut f: impl FnMut(usize) -> f64) -> f64 {
    f(0) + f(1) + f(2)
}

pub fn sum2(mut f: impl FnMut(usize, usize) -> f64) -> f64 {
    sum1(|i| sum1(|j| f(i, j)))
}

pub fn sum3(mut f: impl FnMut(usize, usize, usize) -> f64) -> f64 {
    sum1(|i| sum1(|j| sum1(|k| f(i, j, k))))
}

pub fn sum4(mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> f64 {
    sum1(|i| sum1(|j| sum1(|k| sum1(|l| f(i, j, k, l)))))
}

/// Totally antisymmetric symbol, ε(0,1,2) = +1.
///
/// Total on 0-based index triples; repeated indices give 0.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    debug_assert!(i < 3 && j < 3 && k < 3);
    let (i, j, k) = (i as i64, j as i64, k as i64);
    (((j - i) * (k - j) * (k - i)) / 2) as f64
}

pub fn identity() -> Mat3 {
    mat3(|i, j| if i == j { 1.0 } else { 0.0 })
}

pub fn kronecker(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    sum1(|i| a[i] * b[i])
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    vec3(|i| sum2(|j, k| levi_civita(i, j, k) * a[j] * b[k]))
}

pub fn mat_vec(m: Mat3, v: Vec3) -> Vec3 {
    vec3(|i| sum1(|j| m[i][j] * v[j]))
}

pub fn mat_mul(a: Mat3, b: Mat3) -> Mat3 {
    mat3(|i, j| sum1(|k| a[i][k] * b[k][j]))
}

pub fn transpose(m: Mat3) -> Mat3 {
    mat3(|i, j| m[j][i])
}

pub fn det3(m: Mat3) -> f64 {
    sum3(|i, j, k| levi_civita(i, j, k) * m[0][i] * m[1][j] * m[2][k])
}

/// Inverse of a 3×3 matrix via the adjugate.
///
/// Fails with a condition-number report when the determinant is negligible
/// against the matrix scale.
pub fn inv3(m: Mat3) -> Result<Mat3> {
    let det = det3(m);
    let scale = Linear::max_abs(&m).max(f64::MIN_POSITIVE);
    if !det.is_finite() || det.abs() < 1e-14 * scale * scale * scale {
        return Err(Error::SingularMatrix {
            det,
            cond: f64::INFINITY,
        });
    }
    let cof = mat3(|i, j| {
        0.5 * sum4(|a, b, c, d| levi_civita(i, a, b) * levi_civita(j, c, d) * m[c][a] * m[d][b])
    });
    Ok(mat3(|i, j| cof[i][j] / det))
}

/// Rough condition estimate ‖m‖∞ · ‖m⁻¹‖∞.
pub fn cond3(m: Mat3) -> f64 {
    match inv3(m) {
        Ok(inv) => Linear::max_abs(&m) * Linear::max_abs(&inv) * 9.0,
        Err(_) => f64::INFINITY,
    }
}

/// Antisymmetrized index pair without numerical factor: out = m − mᵀ.
pub fn antisym2(m: Mat3) -> Mat3 {
    mat3(|i, j| m[i][j] - m[j][i])
}

/// Symmetrized index pair without numerical factor: out = m + mᵀ.
pub fn sym2(m: Mat3) -> Mat3 {
    mat3(|i, j| m[i][j] + m[j][i])
}

/// Antisymmetrization of the last two slots of a rank-3 tensor, no factor.
pub fn antisym_last2(t: Rank3) -> Rank3 {
    rank3(|k, i, j| t[k][i][j] - t[k][j][i])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexMove {
    Raise,
    Lower,
}

fn transport_matrix(g: Mat3, dir: IndexMove) -> Result<Mat3> {
    match dir {
        IndexMove::Lower => Ok(g),
        IndexMove::Raise => inv3(g),
    }
}

/// Metric transport of the single slot of a covector/vector.
pub fn raise_lower_vec(v: Vec3, g: Mat3, dir: IndexMove) -> Result<Vec3> {
    let t = transport_matrix(g, dir)?;
    Ok(vec3(|i| sum1(|m| t[i][m] * v[m])))
}

/// Metric transport of one slot of a rank-2 tensor.
pub fn raise_lower_mat(a: Mat3, g: Mat3, slot: usize, dir: IndexMove) -> Result<Mat3> {
    assert!(slot < 2, "rank-2 tensor has slots 0..2");
    let t = transport_matrix(g, dir)?;
    Ok(match slot {
        0 => mat3(|i, j| sum1(|m| t[i][m] * a[m][j])),
        _ => mat3(|i, j| sum1(|m| t[j][m] * a[i][m])),
    })
}

/// Metric transport of one slot of a rank-3 tensor.
pub fn raise_lower_rank3(a: Rank3, g: Mat3, slot: usize, dir: IndexMove) -> Result<Rank3> {
    assert!(slot < 3, "rank-3 tensor has slots 0..3");
    let t = transport_matrix(g, dir)?;
    Ok(match slot {
        0 => rank3(|i, j, k| sum1(|m| t[i][m] * a[m][j][k])),
        1 => rank3(|i, j, k| sum1(|m| t[j][m] * a[i][m][k])),
        _ => rank3(|i, j, k| sum1(|m| t[k][m] * a[i][j][m])),
    })
}

/// Metric transport of one slot of a rank-4 tensor.
pub fn raise_lower_rank4(a: Rank4, g: Mat3, slot: usize, dir: IndexMove) -> Result<Rank4> {
    assert!(slot < 4, "rank-4 tensor has slots 0..4");
    let t = transport_matrix(g, dir)?;
    Ok(match slot {
        0 => rank4(|i, j, k, l| sum1(|m| t[i][m] * a[m][j][k][l])),
        1 => rank4(|i, j, k, l| sum1(|m| t[j][m] * a[i][m][k][l])),
        2 => rank4(|i, j, k, l| sum1(|m| t[k][m] * a[i][j][m][l])),
        _ => rank4(|i, j, k, l| sum1(|m| t[l][m] * a[i][j][k][m])),
    })
}

/// Eigenvalues of a symmetric 3×3 matrix by cyclic Jacobi sweeps
/// (machine-precision even at degenerate roots, where closed forms lose
/// half the digits). Unsorted.
pub fn sym3_eigenvalues(s: Mat3) -> [f64; 3] {
    let mut a = s;
    let scale = Linear::max_abs(&a).max(f64::MIN_POSITIVE);
    for _ in 0..30 {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off <= (1e-16 * scale) * (1e-16 * scale) {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = if theta.abs() > 1e150 {
                1.0 / (2.0 * theta)
            } else {
                theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let sn = t * c;
            let app = a[p][p];
            let aqq = a[q][q];
            a[p][p] = app - t * apq;
            a[q][q] = aqq + t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q;
            let arp = a[r][p];
            let arq = a[r][q];
            a[r][p] = c * arp - sn * arq;
            a[p][r] = a[r][p];
            a[r][q] = sn * arp + c * arq;
            a[q][r] = a[r][q];
        }
    }
    [a[0][0], a[1][1], a[2][2]]
}

/// Largest eigenvalue of a symmetric 3×3 matrix.
pub fn sym3_max_eigenvalue(s: Mat3) -> f64 {
    let ev = sym3_eigenvalues(s);
    ev[0].max(ev[1]).max(ev[2])
}

/// Operator 2-norm of a 3×3 matrix: √λmax(m mᵀ).
pub fn opnorm3(m: Mat3) -> f64 {
    let mmt = mat3(|i, j| sum1(|k| m[i][k] * m[j][k]));
    sym3_max_eigenvalue(mmt).max(0.0).sqrt()
}

/// Component containers that form a vector space, with a max-abs norm.
///
/// Implemented for f64 and the dense rank-1..4 arrays; this is what the
/// finite-difference machinery in [`crate::field`] is generic over.
pub trait Linear: Copy + Send + Sync + 'static {
    fn zero() -> Self;
    fn scale(&self, c: f64) -> Self;
    fn add_scaled(&self, c: f64, rhs: &Self) -> Self;
    fn max_abs(&self) -> f64;
    fn is_finite(&self) -> bool;
}

impl Linear for f64 {
    fn zero() -> Self {
        0.0
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
    fn add_scaled(&self, c: f64, rhs: &Self) -> Self {
        self + c * rhs
    }
    fn max_abs(&self) -> f64 {
        self.abs()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl<T: Linear, const N: usize> Linear for [T; N] {
    fn zero() -> Self {
        from_fn(|_| T::zero())
    }
    fn scale(&self, c: f64) -> Self {
        from_fn(|i| self[i].scale(c))
    }
    fn add_scaled(&self, c: f64, rhs: &Self) -> Self {
        from_fn(|i| self[i].add_scaled(c, &rhs[i]))
    }
    fn max_abs(&self) -> f64 {
        self.iter().map(Linear::max_abs).fold(0.0, f64::max)
    }
    fn is_finite(&self) -> bool {
        self.iter().all(Linear::is_finite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn levi_civita_normalization() {
        assert_eq!(levi_civita(0, 1, 2), 1.0);
        assert_eq!(levi_civita(1, 0, 2), -1.0);
        assert_eq!(levi_civita(0, 0, 1), 0.0);
        // total antisymmetry, exhaustive
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(levi_civita(i, j, k), -levi_civita(j, i, k));
                    assert_eq!(levi_civita(i, j, k), -levi_civita(i, k, j));
                }
            }
        }
    }

    #[test]
    fn epsilon_contraction_identity() {
        // Σ_k ε_{ijk} ε_{mnk} = δ_im δ_jn − δ_in δ_jm, all index tuples
        for i in 0..3 {
            for j in 0..3 {
                for m in 0..3 {
                    for n in 0..3 {
                        let lhs = sum1(|k| levi_civita(i, j, k) * levi_civita(m, n, k));
                        let rhs =
                            kronecker(i, m) * kronecker(j, n) - kronecker(i, n) * kronecker(j, m);
                        assert_eq!(lhs, rhs, "i={i} j={j} m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn antisymmetrization_applied_twice_doubles() {
        let m = mat3(|i, j| (i * 3 + j) as f64 * 0.7 - 1.3);
        let once = antisym2(m);
        let twice = antisym2(once);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(twice[i][j], 2.0 * once[i][j]);
            }
        }
    }

    #[test]
    fn raise_lower_euclidean_and_conformal() {
        let e1 = [1.0, 0.0, 0.0];
        let up = raise_lower_vec(e1, identity(), IndexMove::Raise).unwrap();
        assert_eq!(up, e1);

        // g = n²δ with n = 2: raising divides by 4
        let g = mat3(|i, j| 4.0 * kronecker(i, j));
        let up = raise_lower_vec(e1, g, IndexMove::Raise).unwrap();
        assert!((up[0] - 0.25).abs() < 1e-15);
        assert_eq!(up[1], 0.0);
    }

    #[test]
    fn singular_metric_rejected() {
        let g = mat3(|i, j| {
            if i == 0 && j == 0 {
                0.0
            } else {
                kronecker(i, j)
            }
        });
        let g = mat3(|i, j| g[i][j] * if i == 0 || j == 0 { 0.0 } else { 1.0 });
        match raise_lower_vec([1.0, 0.0, 0.0], g, IndexMove::Raise) {
            Err(Error::SingularMatrix { .. }) => {}
            other => panic!("expected SingularMatrix, got {other:?}"),
        }
    }

    #[test]
    fn opnorm_of_diagonal() {
        let m = mat3(|i, j| {
            if i == j {
                [(3.0), (-5.0), (2.0)][i]
            } else {
                0.0
            }
        });
        assert!((opnorm3(m) - 5.0).abs() < 1e-12);
    }

    fn spd_strategy() -> impl Strategy<Value = Mat3> {
        proptest::array::uniform3(proptest::array::uniform3(-1.0f64..1.0)).prop_map(|a| {
            // aᵀa + δ is symmetric positive-definite
            mat3(|i, j| sum1(|k| a[k][i] * a[k][j]) + kronecker(i, j))
        })
    }

    proptest! {
        #[test]
        fn raise_then_lower_is_identity(
            g in spd_strategy(),
            t in proptest::array::uniform3(proptest::array::uniform3(
                proptest::array::uniform3(-10.0f64..10.0))),
            slot in 0usize..3,
        ) {
            let up = raise_lower_rank3(t, g, slot, IndexMove::Raise).unwrap();
            let back = raise_lower_rank3(up, g, slot, IndexMove::Lower).unwrap();
            let diff = back.add_scaled(-1.0, &t);
            prop_assert!(Linear::max_abs(&diff) < 1e-12 * (1.0 + Linear::max_abs(&t)));
        }
    }
}
