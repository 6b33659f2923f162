//! Transcription of gauge configurations into 3-space geometry.
//!
//! A dreibein field h^a_i identifies the algebra with the tangent space at
//! each point. The gauge potential dualizes into a spin connection,
//! transcribes into a linear connection, and the connection splits into the
//! Levi-Civita part of the induced metric plus a contorsion fixed by its
//! torsion:
//!
//!   ω^a_{ck} = ε^a_{bc} A^b_k
//!   Γ^i_{jk} = h^i_a ω^a_{bk} h^b_j + h^i_c ∂_k h^c_j
//!   g_ij     = δ_ab h^a_i h^b_j
//!   T^k_{ij} = −Γ^k_\[ij\]
//!   K_{kij}  = ½ (T_{kij} + T_{ijk} + T_{jik})     (indices moved by g)
//!   Γ        = Γ̊ − K,    R = R̊ − M
//!
//! Connections are represented as fields (closures over the point), with the
//! derivative index last, so curvature can be taken by differentiating the
//! connection itself:
//!
//!   R^r_{sij} = ∂_i Γ^r_{sj} − ∂_j Γ^r_{si} + Γ^r_{ki} Γ^k_{sj} − Γ^r_{kj} Γ^k_{si}
//!
//! Storage layout for a connection value is `gamma[upper][acted][derivative]`.

use crate::error::{Error, Result};
use crate::field::{Domain, MatrixField, Rank3Field};
use crate::gauge::GaugePotential;
use crate::tensor3::{
    inv3, levi_civita, mat3, rank3, rank4, sum1, sum2, Linear, Mat3, Rank3, Rank4, Vec3,
};

/// Frame field h^a_i (algebra index first, space index second), invertible
/// on its domain.
#[derive(Clone)]
pub struct Dreibein {
    field: MatrixField,
}

impl Dreibein {
    pub fn new(field: MatrixField) -> Self {
        Dreibein { field }
    }

    /// The trivial frame h^a_i = δ^a_i.
    pub fn trivial() -> Self {
        Dreibein::new(MatrixField::constant(crate::tensor3::identity()))
    }

    /// Isotropic frame h^a_i = δ^a_i f(x) from a scalar field.
    pub fn isotropic(f: crate::field::ScalarField) -> Self {
        let val = f.clone();
        let grad = f.clone();
        let mut field = MatrixField::try_new(move |x| {
            let s = val.at(x)?;
            Ok(mat3(|a, i| if a == i { s } else { 0.0 }))
        })
        .with_domain(f.domain().clone())
        .with_step(f.step());
        if f.has_grad() {
            field = field.try_with_grad(move |x, dir| {
                let ds = grad.partial(x, dir)?;
                Ok(mat3(|a, i| if a == i { ds } else { 0.0 }))
            });
        }
        Dreibein::new(field)
    }

    pub fn field(&self) -> &MatrixField {
        &self.field
    }

    pub fn domain(&self) -> &Domain {
        self.field.domain()
    }

    pub fn at(&self, x: Vec3) -> Result<Mat3> {
        self.field.at(x)
    }

    pub fn partial(&self, x: Vec3, dir: usize) -> Result<Mat3> {
        self.field.partial(x, dir)
    }

    /// Inverse frame h_a^i, stored as inv[space i][algebra a].
    pub fn inverse_at(&self, x: Vec3) -> Result<Mat3> {
        inv3(self.at(x)?)
    }

    /// Induced metric g_ij = δ_ab h^a_i h^b_j at a point.
    pub fn metric_at(&self, x: Vec3) -> Result<Mat3> {
        let h = self.at(x)?;
        Ok(mat3(|i, j| sum1(|a| h[a][i] * h[a][j])))
    }

    /// Induced metric as a field; carries an analytic derivative whenever
    /// the frame does (∂_k g_ij = Σ_a ∂_k h^a_i · h^a_j + h^a_i · ∂_k h^a_j).
    pub fn metric_field(&self) -> MatrixField {
        let h = self.field.clone();
        let mut g = MatrixField::try_new({
            let h = h.clone();
            move |x| {
                let hv = h.at(x)?;
                Ok(mat3(|i, j| sum1(|a| hv[a][i] * hv[a][j])))
            }
        })
        .with_domain(h.domain().clone())
        .with_step(h.step());
        if h.has_grad() {
            g = g.try_with_grad(move |x, dir| {
                let hv = h.at(x)?;
                let dh = h.partial(x, dir)?;
                Ok(mat3(|i, j| {
                    sum1(|a| dh[a][i] * hv[a][j] + hv[a][i] * dh[a][j])
                }))
            });
        }
        g
    }

    pub fn without_grad(&self) -> Self {
        Dreibein::new(self.field.without_grad())
    }
}

/// Spin connection ω^a_{ck} = ε^a_{bc} A^b_k; antisymmetric in (a, c).
pub fn spin_connection(a: &GaugePotential, x: Vec3) -> Result<Rank3> {
    let av = a.at(x)?;
    Ok(rank3(|au, c, k| sum1(|b| levi_civita(au, b, c) * av[b][k])))
}

/// The spin connection as a field; analytic whenever A is.
pub fn spin_connection_field(a: &GaugePotential) -> Rank3Field {
    let av = a.clone();
    let mut f = Rank3Field::try_new({
        let av = av.clone();
        move |x| spin_connection(&av, x)
    })
    .with_domain(a.domain().clone())
    .with_step(a.field().step());
    if a.field().has_grad() {
        f = f.try_with_grad(move |x, dir| {
            let da = av.partial(x, dir)?;
            Ok(rank3(|au, c, k| sum1(|b| levi_civita(au, b, c) * da[b][k])))
        });
    }
    f
}

/// Transcription Γ^i_{jk} = h^i_a ω^a_{bk} h^b_j + h^i_c ∂_k h^c_j.
///
/// With the trivial frame this is the dualized potential itself.
pub fn transcribe_connection(a: &GaugePotential, h: &Dreibein, x: Vec3) -> Result<Rank3> {
    let omega = spin_connection(a, x)?;
    let hv = h.at(x)?;
    let hinv = h.inverse_at(x)?;
    let dh = [h.partial(x, 0)?, h.partial(x, 1)?, h.partial(x, 2)?];
    Ok(rank3(|i, j, k| {
        sum2(|av, b| hinv[i][av] * omega[av][b][k] * hv[b][j]) + sum1(|c| hinv[i][c] * dh[k][c][j])
    }))
}

/// The transcribed connection as a field.
pub fn transcribed_connection_field(a: &GaugePotential, h: &Dreibein) -> Rank3Field {
    let (a, h2) = (a.clone(), h.clone());
    let domain = a.domain().merged(h.domain());
    let step = h.field().step();
    Rank3Field::try_new(move |x| transcribe_connection(&a, &h2, x))
        .with_domain(domain)
        .with_step(step)
}

/// Curvature of a connection-valued field at a point.
///
/// Also valid for spin connections (algebra indices in the first two slots),
/// where it reproduces the dualized magnetic field.
pub fn curvature(conn: &Rank3Field, x: Vec3) -> Result<Rank4> {
    let g0 = conn.at(x)?;
    let d = conn.partials(x)?;
    Ok(rank4(|r, s, i, j| {
        d[i][r][s][j] - d[j][r][s][i]
            + sum1(|k| g0[r][k][i] * g0[k][s][j] - g0[r][k][j] * g0[k][s][i])
    }))
}

/// Torsion of a connection value: T^k_{ij} = −Γ^k_\[ij\].
pub fn torsion_of(gamma: Rank3) -> Rank3 {
    rank3(|k, i, j| -(gamma[k][i][j] - gamma[k][j][i]))
}

/// Torsion as a field over a connection field.
pub fn torsion_field(conn: &Rank3Field) -> Rank3Field {
    let c = conn.clone();
    let mut f = Rank3Field::try_new({
        let c = c.clone();
        move |x| Ok(torsion_of(c.at(x)?))
    })
    .with_domain(conn.domain().clone())
    .with_step(conn.step());
    if conn.has_grad() {
        f = f.try_with_grad(move |x, dir| Ok(torsion_of(c.partial(x, dir)?)));
    }
    f
}

/// Frame-side torsion T^a_{ij} = ∂_i h^a_j − ∂_j h^a_i + ω^a_{ci} h^c_j − ω^a_{cj} h^c_i.
pub fn frame_torsion(a: &GaugePotential, h: &Dreibein, x: Vec3) -> Result<Rank3> {
    let omega = spin_connection(a, x)?;
    let hv = h.at(x)?;
    let dh = [h.partial(x, 0)?, h.partial(x, 1)?, h.partial(x, 2)?];
    Ok(rank3(|av, i, j| {
        dh[i][av][j] - dh[j][av][i]
            + sum1(|c| omega[av][c][i] * hv[c][j] - omega[av][c][j] * hv[c][i])
    }))
}

/// Christoffel symbols Γ̊^k_{ij} = ½ g^{kr} (∂_i g_{jr} + ∂_j g_{ir} − ∂_r g_{ij}).
pub fn christoffel(g: &MatrixField, x: Vec3) -> Result<Rank3> {
    let gv = g.at(x)?;
    let ginv = inv3(gv)?;
    let dg = g.partials(x)?;
    Ok(rank3(|k, i, j| {
        0.5 * sum1(|r| ginv[k][r] * (dg[i][j][r] + dg[j][i][r] - dg[r][i][j]))
    }))
}

/// The Levi-Civita connection of a metric field, as a field.
pub fn christoffel_field(g: &MatrixField) -> Rank3Field {
    let g2 = g.clone();
    Rank3Field::try_new(move |x| christoffel(&g2, x))
        .with_domain(g.domain().clone())
        .with_step(g.step())
}

/// Contorsion from torsion: K_{kij} = ½ (T_{kij} + T_{ijk} + T_{jik}) with
/// all indices lowered by g, then the first raised back.
///
/// Rejects input that is not antisymmetric in its lower pair; the result
/// satisfies K_{(ki)j} = 0 identically.
pub fn contorsion_from_torsion(t: Rank3, g: Mat3) -> Result<Rank3> {
    let scale = Linear::max_abs(&t).max(1.0);
    let mut violation: f64 = 0.0;
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                violation = violation.max((t[k][i][j] + t[k][j][i]).abs());
            }
        }
    }
    if violation > 1e-9 * scale {
        return Err(Error::NotAntisymmetric(violation));
    }
    let ginv = inv3(g)?;
    // fully lowered, slot order (vector, form, form)
    let tl = rank3(|k, i, j| sum1(|m| g[k][m] * t[m][i][j]));
    let kl = rank3(|k, i, j| 0.5 * (tl[k][i][j] + tl[i][j][k] + tl[j][i][k]));
    Ok(rank3(|k, i, j| sum1(|m| ginv[k][m] * kl[m][i][j])))
}

/// Contorsion of a connection field's torsion, as a field.
pub fn contorsion_field(g: &MatrixField, t: &Rank3Field) -> Rank3Field {
    let (g2, t2) = (g.clone(), t.clone());
    Rank3Field::try_new(move |x| contorsion_from_torsion(t2.at(x)?, g2.at(x)?))
        .with_domain(g.domain().merged(t.domain()))
        .with_step(g.step())
}

/// The unique metric-preserving connection with prescribed torsion:
/// Γ = Γ̊ − K.
pub fn reconstruct_connection(g: &MatrixField, t: &Rank3Field) -> Rank3Field {
    let (g2, t2) = (g.clone(), t.clone());
    Rank3Field::try_new(move |x| {
        let gamma0 = christoffel(&g2, x)?;
        let k = contorsion_from_torsion(t2.at(x)?, g2.at(x)?)?;
        Ok(gamma0.add_scaled(-1.0, &k))
    })
    .with_domain(g.domain().merged(t.domain()))
    .with_step(g.step())
}

/// Metric-compatibility residual ∂_k g_ij − Γ_{ijk} − Γ_{jik}, returned with
/// the derivative index last: `res[i][j][k]`.
pub fn compatibility_residual(g: &MatrixField, conn: &Rank3Field, x: Vec3) -> Result<Rank3> {
    let gv = g.at(x)?;
    let dg = g.partials(x)?;
    let gamma = conn.at(x)?;
    let lowered = rank3(|i, j, k| sum1(|m| gv[i][m] * gamma[m][j][k]));
    Ok(rank3(|i, j, k| {
        dg[k][i][j] - lowered[i][j][k] - lowered[j][i][k]
    }))
}

/// The curvature split R = R̊ − M.
#[derive(Clone, Copy, Debug)]
pub struct CurvatureSplit {
    /// Strictly metric (Levi-Civita) curvature R̊.
    pub metric: Rank4,
    /// Contorsion contribution M.
    pub contorsion: Rank4,
    /// Total R = R̊ − M.
    pub total: Rank4,
}

/// Split the curvature of Γ = Γ̊ − K into its metric and contorsion parts:
///
///   M^r_{sij} = ∂_i K^r_{sj} − ∂_j K^r_{si}
///             + Γ̊^r_{ni} K^n_{sj} + K^r_{ni} Γ̊^n_{sj}
///             − Γ̊^r_{nj} K^n_{si} − K^r_{nj} Γ̊^n_{si}
///             − K^r_{ni} K^n_{sj} + K^r_{nj} K^n_{si}
pub fn curvature_split(g: &MatrixField, k: &Rank3Field, x: Vec3) -> Result<CurvatureSplit> {
    let gamma0_field = christoffel_field(g);
    let metric = curvature(&gamma0_field, x)?;
    let gamma0 = gamma0_field.at(x)?;
    let kv = k.at(x)?;
    let dk = k.partials(x)?;
    let contorsion = rank4(|r, s, i, j| {
        dk[i][r][s][j] - dk[j][r][s][i]
            + sum1(|n| {
                gamma0[r][n][i] * kv[n][s][j] + kv[r][n][i] * gamma0[n][s][j]
                    - gamma0[r][n][j] * kv[n][s][i]
                    - kv[r][n][j] * gamma0[n][s][i]
                    - kv[r][n][i] * kv[n][s][j]
                    + kv[r][n][j] * kv[n][s][i]
            })
    });
    let total = metric.add_scaled(-1.0, &contorsion);
    Ok(CurvatureSplit {
        metric,
        contorsion,
        total,
    })
}

/// Torsion Bianchi residual D_\[i T^a_{jk\]} − R^a_\[ijk\], cyclic
/// antisymmetrization without numerical factor; zero for any smooth
/// configuration. Returned as `res[a][i][j][k]`.
pub fn bianchi_residual(h: &Dreibein, a: &GaugePotential, x: Vec3) -> Result<Rank4> {
    let omega_field = spin_connection_field(a);
    let omega = omega_field.at(x)?;

    let t_field = {
        let (a2, h2) = (a.clone(), h.clone());
        Rank3Field::try_new(move |y| frame_torsion(&a2, &h2, y))
            .with_domain(a.domain().merged(h.domain()))
            .with_step(h.field().step())
    };
    let tv = t_field.at(x)?;
    let dt = t_field.partials(x)?;

    let hv = h.at(x)?;
    let riem = curvature(&omega_field, x)?; // R^a_{bij} of the spin connection

    // D_i T^a_{jk} = ∂_i T^a_{jk} + ω^a_{ci} T^c_{jk}
    let cov = |i: usize, j: usize, k: usize, av: usize| {
        dt[i][av][j][k] + sum1(|c| omega[av][c][i] * tv[c][j][k])
    };
    // R^a_{bij} h^b_k, cyclic in (i, j, k)
    let rh = |i: usize, j: usize, k: usize, av: usize| sum1(|b| riem[av][b][i][j] * hv[b][k]);

    Ok(rank4(|av, i, j, k| {
        cov(i, j, k, av) + cov(j, k, i, av) + cov(k, i, j, av)
            - (rh(i, j, k, av) + rh(j, k, i, av) + rh(k, i, j, av))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ScalarField;
    use crate::gauge::{magnetic_field, GaugePotential};
    use crate::radial;
    use crate::rng::Lcg64;
    use crate::tensor3::{det3, kronecker, norm};

    fn monopole_frame() -> Dreibein {
        // h^a_i = δ^a_i / r
        Dreibein::isotropic(
            ScalarField::new(|x| 1.0 / norm(x))
                .with_grad(|x, dir| -x[dir] / norm(x).powi(3))
                .with_domain(Domain::excluding_point([0.0; 3])),
        )
    }

    #[test]
    fn spin_connection_examples() {
        let a = GaugePotential::zero();
        let w = spin_connection(&a, [1.0, 2.0, 3.0]).unwrap();
        assert_eq!(Linear::max_abs(&w), 0.0);

        // A¹₁ = 1 only: ω²₃₁ = −1, ω³₂₁ = +1
        let a = GaugePotential::new(
            "unit",
            MatrixField::constant(mat3(|a, i| if a == 0 && i == 0 { 1.0 } else { 0.0 })),
        );
        let w = spin_connection(&a, [0.0; 3]).unwrap();
        assert_eq!(w[1][2][0], -1.0);
        assert_eq!(w[2][1][0], 1.0);
        let mut nonzero = 0;
        for au in 0..3 {
            for c in 0..3 {
                for k in 0..3 {
                    if w[au][c][k] != 0.0 {
                        nonzero += 1;
                    }
                }
            }
        }
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn spin_connection_is_antisymmetric() {
        let a = radial::wu_yang_monopole();
        let x = [1.0, 0.0, 0.0];
        let w = spin_connection(&a, x).unwrap();
        // brute-force contraction oracle for the spot value ω¹₂₂
        let av = a.at(x).unwrap();
        let mut oracle = 0.0;
        for b in 0..3 {
            oracle += levi_civita(0, b, 1) * av[b][1];
        }
        assert_eq!(w[0][1][1], oracle);
        for au in 0..3 {
            for c in 0..3 {
                for k in 0..3 {
                    assert_eq!(w[au][c][k], -w[c][au][k]);
                }
            }
        }
    }

    #[test]
    fn trivial_transcription_vanishes() {
        let gamma = transcribe_connection(
            &GaugePotential::zero(),
            &Dreibein::trivial(),
            [0.5, 1.0, -2.0],
        )
        .unwrap();
        assert_eq!(Linear::max_abs(&gamma), 0.0);
    }

    #[test]
    fn pure_frame_transcription_is_logarithmic() {
        // A = 0, h = δ f: Γ^i_{jk} = δ^i_j ∂_k ln f, with f = 1 + 0.3 x¹
        let f = ScalarField::new(|x| 1.0 + 0.3 * x[0])
            .with_grad(|_, dir| if dir == 0 { 0.3 } else { 0.0 });
        let h = Dreibein::isotropic(f);
        let x = [0.7, -0.1, 0.4];
        let gamma = transcribe_connection(&GaugePotential::zero(), &h, x).unwrap();
        let dlnf = 0.3 / (1.0 + 0.3 * x[0]);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let expect = kronecker(i, j) * if k == 0 { dlnf } else { 0.0 };
                    assert!(
                        (gamma[i][j][k] - expect).abs() < 1e-12,
                        "Γ[{i}][{j}][{k}] = {}",
                        gamma[i][j][k]
                    );
                }
            }
        }
    }

    #[test]
    fn monopole_through_inverse_radius_frame_is_levi_civita() {
        // transcript of the monopole through h = δ/r equals the Christoffel
        // connection of g = δ/r²: Γ^i_{jk} = −(δ^i_k x_j + δ^i_j x_k − δ_{jk} x^i)/r²
        let a = radial::wu_yang_monopole();
        let h = monopole_frame();
        for x in [[1.0, 0.0, 0.0], [0.6, -0.8, 1.2], [0.0, 2.0, 0.0]] {
            let gamma = transcribe_connection(&a, &h, x).unwrap();
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            let closed = rank3(|i, j, k| {
                -(kronecker(i, k) * x[j] + kronecker(i, j) * x[k] - kronecker(j, k) * x[i]) / r2
            });
            let dev = gamma.add_scaled(-1.0, &closed);
            assert!(
                Linear::max_abs(&dev) < 1e-10,
                "dev {}",
                Linear::max_abs(&dev)
            );

            // torsion-free: the gauge field is fully absorbed in the metric
            let t = torsion_of(gamma);
            assert!(Linear::max_abs(&t) < 1e-10);
        }
    }

    #[test]
    fn curvature_of_spin_connection_dualizes_magnetic_field() {
        // R^a_{bij} = ε^a_{cb} ε_{ijk} B^{ck}
        let a = radial::wu_yang_monopole();
        let x = [1.0, 0.0, 0.0];
        let riem = curvature(&spin_connection_field(&a), x).unwrap();
        let b = magnetic_field(&a, x).unwrap();
        let expect = rank4(|au, bv, i, j| {
            sum2(|c, k| levi_civita(au, c, bv) * levi_civita(i, j, k) * b[c][k])
        });
        let dev = riem.add_scaled(-1.0, &expect);
        assert!(
            Linear::max_abs(&dev) < 1e-9,
            "dev {}",
            Linear::max_abs(&dev)
        );
    }

    #[test]
    fn curvature_matches_covariant_commutator() {
        // R^r_{sij} = h_a^r [D_i, D_j] h^a_s on a configuration with torsion
        let a = radial::wu_yang_monopole();
        let h = Dreibein::trivial();
        let x = [0.9, 0.4, -0.7];

        let omega_field = spin_connection_field(&a);
        // C[a][s][j] = D_j h^a_s = ∂_j h^a_s + ω^a_{cj} h^c_s
        let dcov = {
            let h = h.clone();
            Rank3Field::try_new(move |y| {
                let omega = omega_field.at(y)?;
                let hv = h.at(y)?;
                let dh = [h.partial(y, 0)?, h.partial(y, 1)?, h.partial(y, 2)?];
                Ok(rank3(|av, s, j| {
                    dh[j][av][s] + sum1(|c| omega[av][c][j] * hv[c][s])
                }))
            })
            .with_domain(a.domain().clone())
        };
        let omega = spin_connection(&a, x).unwrap();
        let c0 = dcov.at(x).unwrap();
        let dc = dcov.partials(x).unwrap();
        // E[a][s][i][j] = D_i (D h)^a_{sj} − D_j (D h)^a_{si}, algebra slot covariant
        let commut = rank4(|av, s, i, j| {
            dc[i][av][s][j] + sum1(|c| omega[av][c][i] * c0[c][s][j])
                - dc[j][av][s][i]
                - sum1(|c| omega[av][c][j] * c0[c][s][i])
        });
        let hinv = h.inverse_at(x).unwrap();
        let via_commutator = rank4(|r, s, i, j| sum1(|av| hinv[r][av] * commut[av][s][i][j]));

        let direct = curvature(&transcribed_connection_field(&a, &h), x).unwrap();
        let dev = direct.add_scaled(-1.0, &via_commutator);
        assert!(
            Linear::max_abs(&dev) < 1e-6,
            "dev {}",
            Linear::max_abs(&dev)
        );
    }

    #[test]
    fn torsion_examples() {
        let sym = rank3(|_, i, j| (i + j) as f64);
        assert_eq!(Linear::max_abs(&torsion_of(sym)), 0.0);

        let mut gamma = [[[0.0; 3]; 3]; 3];
        gamma[0][1][2] = 1.0;
        let t = torsion_of(gamma);
        assert_eq!(t[0][1][2], -1.0);
        assert_eq!(t[0][2][1], 1.0);
    }

    #[test]
    fn frame_and_space_torsion_agree() {
        // T^k_{ij} = h_a^k T^a_{ij} for the monopole with h = δ/r
        let a = radial::wu_yang_monopole();
        let h = monopole_frame();
        let x = [0.5, 1.1, -0.6];
        let tf = frame_torsion(&a, &h, x).unwrap();
        let hinv = h.inverse_at(x).unwrap();
        let t_space_from_frame = rank3(|k, i, j| sum1(|av| hinv[k][av] * tf[av][i][j]));
        let gamma = transcribe_connection(&a, &h, x).unwrap();
        let t_space = torsion_of(gamma);
        let dev = t_space_from_frame.add_scaled(-1.0, &t_space);
        assert!(Linear::max_abs(&dev) < 1e-10);
    }

    #[test]
    fn metric_examples() {
        let h = Dreibein::trivial();
        let g = h.metric_at([1.0, 2.0, 3.0]).unwrap();
        let dev = g.add_scaled(-1.0, &crate::tensor3::identity());
        assert_eq!(Linear::max_abs(&dev), 0.0);

        // h = δ f → g = f² δ
        let f = ScalarField::new(|x| 1.0 / (1.0 + norm(x) * norm(x)));
        let h = Dreibein::isotropic(f);
        let x = [0.5, -0.5, 1.0];
        let n = 1.0 / (1.0 + norm(x) * norm(x));
        let g = h.metric_at(x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = n * n * kronecker(i, j);
                assert!((g[i][j] - expect).abs() < 1e-14);
            }
        }

        // random invertible frame: g SPD, det g = (det h)², h·h⁻¹ = id
        let mut rng = Lcg64::new(5);
        for _ in 0..10 {
            let mut m = crate::tensor3::identity();
            for r in m.iter_mut() {
                for v in r.iter_mut() {
                    *v += rng.range(-0.3, 0.3);
                }
            }
            let h = Dreibein::new(MatrixField::constant(m));
            let x = [0.0; 3];
            let g = h.metric_at(x).unwrap();
            assert!((det3(g) - det3(m) * det3(m)).abs() < 1e-12);
            let prod = crate::tensor3::mat_mul(m, h.inverse_at(x).unwrap());
            let dev = prod.add_scaled(-1.0, &crate::tensor3::identity());
            assert!(
                Linear::max_abs(&dev) < 1e-12,
                "h·h⁻¹ off by {}",
                Linear::max_abs(&dev)
            );
            // SPD via a few quadratic forms
            for _ in 0..5 {
                let v = rng.unit_vector();
                let q = sum2(|i, j| v[i] * g[i][j] * v[j]);
                assert!(q > 0.0);
            }
        }
    }

    #[test]
    fn christoffel_examples() {
        let g = MatrixField::constant(crate::tensor3::identity());
        let gamma = christoffel(&g, [1.0, -2.0, 0.3]).unwrap();
        assert_eq!(Linear::max_abs(&gamma), 0.0);

        // g = δ/r²: Γ̊^k_{ij} = −(δ^k_j x_i + δ^k_i x_j − δ_ij x^k)/r²; Γ̊¹₁₁ = −1 at (1,0,0)
        let h = monopole_frame();
        let gm = h.metric_field();
        let x = [1.0, 0.0, 0.0];
        let gamma = christoffel(&gm, x).unwrap();
        assert!(
            (gamma[0][0][0] + 1.0).abs() < 1e-10,
            "Γ̊¹₁₁ = {}",
            gamma[0][0][0]
        );
        let r2 = 1.0;
        let closed = rank3(|k, i, j| {
            -(kronecker(k, j) * x[i] + kronecker(k, i) * x[j] - kronecker(i, j) * x[k]) / r2
        });
        let dev = gamma.add_scaled(-1.0, &closed);
        assert!(Linear::max_abs(&dev) < 1e-10);

        // symmetry in the lower pair for a generic conformal metric
        let f = ScalarField::new(|x| 1.0 / (1.0 + norm(x) * norm(x)));
        let gm = Dreibein::isotropic(f).metric_field();
        let mut rng = Lcg64::new(9);
        for _ in 0..5 {
            let x = rng.point_in_box(1.0);
            let gamma = christoffel(&gm, x).unwrap();
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        assert!((gamma[k][i][j] - gamma[k][j][i]).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn christoffel_is_torsion_free() {
        let h = monopole_frame();
        let gm = h.metric_field();
        let gamma = christoffel(&gm, [0.7, 0.2, -0.4]).unwrap();
        assert!(Linear::max_abs(&torsion_of(gamma)) < 1e-12);
    }

    #[test]
    fn contorsion_examples() {
        let g = crate::tensor3::identity();
        assert_eq!(
            Linear::max_abs(&contorsion_from_torsion([[[0.0; 3]; 3]; 3], g).unwrap()),
            0.0
        );

        // T¹₂₃ = −T¹₃₂ = 1, flat metric: K from the half-sum
        let mut t = [[[0.0; 3]; 3]; 3];
        t[0][1][2] = 1.0;
        t[0][2][1] = -1.0;
        let k = contorsion_from_torsion(t, g).unwrap();
        // direct half-sum oracle (flat metric: lowered = stored)
        let oracle = rank3(|kk, i, j| 0.5 * (t[kk][i][j] + t[i][j][kk] + t[j][i][kk]));
        let dev = k.add_scaled(-1.0, &oracle);
        assert!(Linear::max_abs(&dev) < 1e-15);

        // first-pair antisymmetry of the lowered tensor is exact
        for kk in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(k[kk][i][j] + k[i][kk][j], 0.0);
                }
            }
        }

        // torsion round trip: K^k_{[ij]} reproduces T
        let recovered = rank3(|kk, i, j| k[kk][i][j] - k[kk][j][i]);
        let dev = recovered.add_scaled(-1.0, &t);
        assert!(Linear::max_abs(&dev) < 1e-15);

        // non-antisymmetric input is rejected
        let mut bad = [[[0.0; 3]; 3]; 3];
        bad[0][1][2] = 1.0;
        match contorsion_from_torsion(bad, g) {
            Err(Error::NotAntisymmetric(_)) => {}
            other => panic!("expected NotAntisymmetric, got {other:?}"),
        }
    }

    #[test]
    fn zero_torsion_reconstructs_to_levi_civita() {
        let h = monopole_frame();
        let g = h.metric_field();
        let zero_t = Rank3Field::constant([[[0.0; 3]; 3]; 3]);
        let rebuilt = reconstruct_connection(&g, &zero_t);
        let x = [0.9, -0.4, 1.3];
        let dev = rebuilt
            .at(x)
            .unwrap()
            .add_scaled(-1.0, &christoffel(&g, x).unwrap());
        assert_eq!(Linear::max_abs(&dev), 0.0);
    }

    #[test]
    fn ricci_lemma_round_trip_on_monopole_transcription() {
        // Γ → (g, T) → Γ̊ − K recovers Γ, through the torsionful flat-frame
        // transcription of the monopole
        let a = radial::wu_yang_monopole();
        let h = Dreibein::trivial();
        let conn = transcribed_connection_field(&a, &h);
        let g = h.metric_field();
        let t = torsion_field(&conn);
        let rebuilt = reconstruct_connection(&g, &t);

        let mut rng = Lcg64::new(17);
        for _ in 0..10 {
            let x = rng.point_in_shell(0.5, 3.0);
            let orig = conn.at(x).unwrap();
            let back = rebuilt.at(x).unwrap();
            let dev = back.add_scaled(-1.0, &orig);
            assert!(
                Linear::max_abs(&dev) < 1e-10,
                "round-trip deviation {} at {x:?}",
                Linear::max_abs(&dev)
            );
        }
    }

    #[test]
    fn transcribed_connection_preserves_the_metric() {
        let a = radial::wu_yang_monopole();
        for h in [Dreibein::trivial(), monopole_frame()] {
            let conn = transcribed_connection_field(&a, &h);
            let g = h.metric_field();
            let mut rng = Lcg64::new(23);
            for _ in 0..10 {
                let x = rng.point_in_shell(0.5, 3.0);
                let res = compatibility_residual(&g, &conn, x).unwrap();
                assert!(
                    Linear::max_abs(&res) < 1e-9,
                    "compatibility residual {} at {x:?}",
                    Linear::max_abs(&res)
                );
            }
        }
    }

    #[test]
    fn compatibility_direct_example() {
        // g = δ, Γ¹₁₁ = 1: residual −2 in the (1,1,1) slot
        let g = MatrixField::constant(crate::tensor3::identity());
        let mut gamma = [[[0.0; 3]; 3]; 3];
        gamma[0][0][0] = 1.0;
        let conn = Rank3Field::constant(gamma);
        let res = compatibility_residual(&g, &conn, [0.0; 3]).unwrap();
        assert_eq!(res[0][0][0], -2.0);
    }

    #[test]
    fn curvature_split_consistency() {
        // zero contorsion: M = 0, R = R̊
        let h = monopole_frame();
        let g = h.metric_field();
        let zero_k = Rank3Field::constant([[[0.0; 3]; 3]; 3]);
        let x = [0.8, -0.3, 0.5];
        let split = curvature_split(&g, &zero_k, x).unwrap();
        assert_eq!(Linear::max_abs(&split.contorsion), 0.0);
        let dev = split.total.add_scaled(-1.0, &split.metric);
        assert_eq!(Linear::max_abs(&dev), 0.0);

        // flat host: monopole through the trivial frame; R from the split
        // equals both the direct curvature of Γ̊ − K and the dualized B
        let a = radial::wu_yang_monopole();
        let h = Dreibein::trivial();
        let g = h.metric_field();
        let conn = transcribed_connection_field(&a, &h);
        let t = torsion_field(&conn);
        let k = contorsion_field(&g, &t);

        let split = curvature_split(&g, &k, x).unwrap();
        // flat host has no metric curvature
        assert!(Linear::max_abs(&split.metric) < 1e-9);

        let direct = curvature(&reconstruct_connection(&g, &t), x).unwrap();
        let dev = split.total.add_scaled(-1.0, &direct);
        assert!(
            Linear::max_abs(&dev) < 2e-6,
            "split vs direct deviation {}",
            Linear::max_abs(&dev)
        );

        let b = magnetic_field(&a, x).unwrap();
        let dualized = rank4(|r, s, i, j| {
            sum2(|c, kk| levi_civita(r, c, s) * levi_civita(i, j, kk) * b[c][kk])
        });
        let dev = split.total.add_scaled(-1.0, &dualized);
        assert!(
            Linear::max_abs(&dev) < 1e-6,
            "split vs dualized-B deviation {}",
            Linear::max_abs(&dev)
        );
    }

    #[test]
    fn curvature_antisymmetry_is_exact() {
        let a = radial::wu_yang_monopole();
        let conn = transcribed_connection_field(&a, &Dreibein::trivial());
        let riem = curvature(&conn, [0.6, 0.9, -1.2]).unwrap();
        for r in 0..3 {
            for s in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        assert_eq!(riem[r][s][i][j], -riem[r][s][j][i]);
                        // [ij] without factor doubles the tensor
                        let anti = riem[r][s][i][j] - riem[r][s][j][i];
                        assert_eq!(anti, 2.0 * riem[r][s][i][j]);
                    }
                }
            }
        }
    }

    #[test]
    fn bianchi_identity_holds() {
        let x = [0.7, -0.5, 0.9];
        // trivial configuration
        let res = bianchi_residual(&Dreibein::trivial(), &GaugePotential::zero(), x).unwrap();
        assert_eq!(Linear::max_abs(&res), 0.0);

        // monopole with the inverse-radius frame
        let res = bianchi_residual(&monopole_frame(), &radial::wu_yang_monopole(), x).unwrap();
        assert!(
            Linear::max_abs(&res) < 1e-6,
            "residual {}",
            Linear::max_abs(&res)
        );

        // monopole with the trivial frame (torsionful transcription)
        let res = bianchi_residual(&Dreibein::trivial(), &radial::wu_yang_monopole(), x).unwrap();
        assert!(
            Linear::max_abs(&res) < 1e-6,
            "residual {}",
            Linear::max_abs(&res)
        );
    }
}
