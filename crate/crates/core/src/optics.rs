//! Gradient-index media and the curved-space field equations.
//!
//! An isotropic medium with index n(x) is the conformally flat metric
//! g_ij = n² δ_ij. Two constant-curvature media arise by stereographic
//! projection, each in two normalizations:
//!
//! - spherical: the textbook fish-eye n = 1/(1+r²), and the embedding form
//!   n = 4/(4+r²) induced from the unit 3-sphere under x^k = 2ξ^k/(1−ξ⁴)
//!   (scalar curvature +6; all rays from a point refocus at −4x/r² after
//!   arc length π);
//! - hyperbolic: the textbook n = 1/(1−r²) (singular at r = 1), and the
//!   embedding form n = 4/(4−r²) from the unit two-sheeted hyperboloid
//!   (scalar curvature −6). The lower branch fills the ball r < 2, the
//!   upper branch its exterior; the bounding sphere is an energy barrier on
//!   which the metric and the associated field strength diverge.
//!
//! The two normalizations are NOT rescalings of one another in the same
//! coordinates, so solution certificates (the curved sourceless field
//! equation, the constant-curvature checks) run against the embedding
//! forms, whose construction is unambiguous. Both are exposed.
//!
//! Christoffel connections of these media are torsionless solutions of the
//! curved sourceless equation
//!
//!   (1/√|g|) ∂_j(√|g| R^r_s{}^{ij}) + Γ^r_{kj} R^k_s{}^{ij} − Γ^k_{sj} R^r_k{}^{ij} = 0,
//!
//! the component form used throughout (both 2-form indices of the
//! curvature raised by g).

use std::sync::Arc;

use crate::error::Result;
use crate::field::{Domain, Field, MatrixField, Rank3Field, ScalarField};
use crate::gauge::GaugePotential;
use crate::radial::{conformal_family, conformal_family_with_log_hessian};
use crate::tensor3::{
    det3, inv3, kronecker, mat3, norm, rank3, rank4, sum1, sum2, Linear, Mat3, Rank3, Rank4, Vec3,
};
use crate::transcribe::{christoffel_field, curvature, Dreibein};

type PointMap<T> = Arc<dyn Fn(Vec3) -> T + Send + Sync>;

struct IndexData {
    n: ScalarField,
    /// ∇ ln n, when available in closed form.
    grad_ln: Option<PointMap<Vec3>>,
    /// ∇∇ ln n, when available in closed form.
    hess_ln: Option<PointMap<Mat3>>,
}

/// An isotropic refractive medium or a general metric on 3-space.
pub struct OpticalMedium {
    name: String,
    index: Option<IndexData>,
    metric: MatrixField,
    singular_radius: Option<f64>,
    focal: Option<(PointMap<Vec3>, f64)>,
}

impl OpticalMedium {
    pub fn euclidean() -> Self {
        OpticalMedium {
            name: "euclidean".into(),
            index: Some(IndexData {
                n: ScalarField::constant(1.0),
                grad_ln: Some(Arc::new(|_| [0.0; 3])),
                hess_ln: Some(Arc::new(|_| [[0.0; 3]; 3])),
            }),
            metric: MatrixField::constant(crate::tensor3::identity()),
            singular_radius: None,
            focal: None,
        }
    }

    /// Unit-sphere stereographic medium, n = 4/(4+r²).
    pub fn fish_eye() -> Self {
        Self::isotropic_closed_form(
            "fisheye",
            |r2| 4.0 / (4.0 + r2),
            |x, r2| {
                let c = -2.0 / (4.0 + r2);
                [c * x[0], c * x[1], c * x[2]]
            },
            |x, r2| {
                let d = 4.0 + r2;
                mat3(|i, j| -2.0 * kronecker(i, j) / d + 4.0 * x[i] * x[j] / (d * d))
            },
            Domain::unrestricted(),
            None,
            Some((
                Arc::new(|x: Vec3| {
                    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                    [-4.0 * x[0] / r2, -4.0 * x[1] / r2, -4.0 * x[2] / r2]
                }) as PointMap<Vec3>,
                std::f64::consts::PI,
            )),
        )
    }

    /// Textbook fish-eye, n = 1/(1+r²) (quarter-scale sphere, curvature +24).
    pub fn fish_eye_textbook() -> Self {
        Self::isotropic_closed_form(
            "fisheye-textbook",
            |r2| 1.0 / (1.0 + r2),
            |x, r2| {
                let c = -2.0 / (1.0 + r2);
                [c * x[0], c * x[1], c * x[2]]
            },
            |x, r2| {
                let d = 1.0 + r2;
                mat3(|i, j| -2.0 * kronecker(i, j) / d + 4.0 * x[i] * x[j] / (d * d))
            },
            Domain::unrestricted(),
            None,
            Some((
                Arc::new(|x: Vec3| {
                    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                    [-x[0] / r2, -x[1] / r2, -x[2] / r2]
                }) as PointMap<Vec3>,
                std::f64::consts::FRAC_PI_2,
            )),
        )
    }

    /// Hyperboloid stereographic medium, n = 4/(4−r²): the lower branch
    /// fills the ball r < 2, the upper branch its exterior; the bounding
    /// sphere r = 2 is the declared singular locus.
    pub fn poincare_ball() -> Self {
        Self::hyperboloid_embedding("poincare-ball")
    }

    /// Same metric on the exterior region r > 2 (upper branch image).
    pub fn poincare_ball_exterior() -> Self {
        Self::hyperboloid_embedding("poincare-ball-exterior")
    }

    fn hyperboloid_embedding(name: &str) -> Self {
        Self::isotropic_closed_form(
            name,
            |r2| (4.0 / (4.0 - r2)).abs(),
            |x, r2| {
                let c = 2.0 / (4.0 - r2);
                [c * x[0], c * x[1], c * x[2]]
            },
            |x, r2| {
                let d = 4.0 - r2;
                mat3(|i, j| 2.0 * kronecker(i, j) / d + 4.0 * x[i] * x[j] / (d * d))
            },
            Domain::excluding_sphere([0.0; 3], 2.0),
            Some(2.0),
            None,
        )
    }

    /// Textbook hyperbolic index n = 1/(1−r²), singular where it diverges
    /// (r = 1).
    pub fn hyperbolic_textbook() -> Self {
        Self::isotropic_closed_form(
            "hyperbolic-textbook",
            |r2| (1.0 / (1.0 - r2)).abs(),
            |x, r2| {
                let c = 2.0 / (1.0 - r2);
                [c * x[0], c * x[1], c * x[2]]
            },
            |x, r2| {
                let d = 1.0 - r2;
                mat3(|i, j| 2.0 * kronecker(i, j) / d + 4.0 * x[i] * x[j] / (d * d))
            },
            Domain::excluding_sphere([0.0; 3], 1.0),
            Some(1.0),
            None,
        )
    }

    fn isotropic_closed_form(
        name: &str,
        n_of_r2: impl Fn(f64) -> f64 + Send + Sync + Copy + 'static,
        grad_ln: impl Fn(Vec3, f64) -> Vec3 + Send + Sync + 'static,
        hess_ln: impl Fn(Vec3, f64) -> Mat3 + Send + Sync + 'static,
        domain: Domain,
        singular_radius: Option<f64>,
        focal: Option<(PointMap<Vec3>, f64)>,
    ) -> Self {
        let r2 = |x: Vec3| x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        let n_field = ScalarField::new(move |x| n_of_r2(r2(x))).with_domain(domain.clone());
        let grad: PointMap<Vec3> = Arc::new(move |x| grad_ln(x, r2(x)));
        let hess: PointMap<Mat3> = Arc::new(move |x| hess_ln(x, r2(x)));
        // attach ∂n = n ∇ln n so the scalar field itself is analytic
        let n_field = {
            let g = Arc::clone(&grad);
            n_field.with_grad(move |x, dir| n_of_r2(r2(x)) * g(x)[dir])
        };
        OpticalMedium::isotropic(
            name,
            n_field,
            Some(grad),
            Some(hess),
            singular_radius,
            focal,
        )
    }

    /// General isotropic medium from an index field with optional closed-form
    /// log-gradient and log-Hessian.
    pub fn isotropic(
        name: &str,
        n: ScalarField,
        grad_ln: Option<PointMap<Vec3>>,
        hess_ln: Option<PointMap<Mat3>>,
        singular_radius: Option<f64>,
        focal: Option<(PointMap<Vec3>, f64)>,
    ) -> Self {
        let metric = {
            let nf = n.clone();
            let mut m = MatrixField::try_new(move |x| {
                let nv = nf.at(x)?;
                Ok(mat3(|i, j| nv * nv * kronecker(i, j)))
            })
            .with_domain(n.domain().clone())
            .with_step(n.step());
            if let Some(g) = &grad_ln {
                let nf = n.clone();
                let g = Arc::clone(g);
                m = m.try_with_grad(move |x, dir| {
                    let nv = nf.at(x)?;
                    let phi = g(x);
                    Ok(mat3(|i, j| 2.0 * nv * nv * phi[dir] * kronecker(i, j)))
                });
            } else if n.has_grad() {
                let nf = n.clone();
                m = m.try_with_grad(move |x, dir| {
                    let nv = nf.at(x)?;
                    let dn = nf.partial(x, dir)?;
                    Ok(mat3(|i, j| 2.0 * nv * dn * kronecker(i, j)))
                });
            }
            m
        };
        OpticalMedium {
            name: name.into(),
            index: Some(IndexData {
                n,
                grad_ln,
                hess_ln,
            }),
            metric,
            singular_radius,
            focal,
        }
    }

    /// Medium defined directly by a metric field (no isotropic index).
    pub fn from_metric(name: &str, metric: MatrixField) -> Self {
        OpticalMedium {
            name: name.into(),
            index: None,
            metric,
            singular_radius: None,
            focal: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_isotropic(&self) -> bool {
        self.index.is_some()
    }

    /// Refractive index at a point (isotropic media only).
    pub fn index_at(&self, x: Vec3) -> Result<f64> {
        match &self.index {
            Some(d) => d.n.at(x),
            None => Err(crate::error::Error::InvalidArgument(format!(
                "medium '{}' has no isotropic index",
                self.name
            ))),
        }
    }

    pub fn metric_field(&self) -> &MatrixField {
        &self.metric
    }

    pub fn domain(&self) -> &Domain {
        self.metric.domain()
    }

    pub fn singular_radius(&self) -> Option<f64> {
        self.singular_radius
    }

    /// Levi-Civita connection as a field, analytic when the medium carries
    /// closed-form log-derivatives (Γ̊^k_{ij} = δ^k_i φ_j + δ^k_j φ_i − δ_ij φ^k
    /// with φ = ln n).
    pub fn christoffel_field(&self) -> Rank3Field {
        if let Some(IndexData {
            grad_ln: Some(grad),
            hess_ln,
            ..
        }) = &self.index
        {
            let g = Arc::clone(grad);
            let mut f = Rank3Field::new(move |x| {
                let phi = g(x);
                rank3(|k, i, j| {
                    kronecker(k, i) * phi[j] + kronecker(k, j) * phi[i] - kronecker(i, j) * phi[k]
                })
            })
            .with_domain(self.metric.domain().clone())
            .with_step(self.metric.step());
            if let Some(hess) = hess_ln {
                let h = Arc::clone(hess);
                f = f.with_grad(move |x, dir| {
                    let hm = h(x);
                    rank3(|k, i, j| {
                        kronecker(k, i) * hm[j][dir] + kronecker(k, j) * hm[i][dir]
                            - kronecker(i, j) * hm[k][dir]
                    })
                });
            }
            return f;
        }
        christoffel_field(&self.metric)
    }

    /// The gauge configuration this medium absorbs: A^a_j = −ε^a_{jk} ∂^k ln n.
    pub fn gauge_potential(&self) -> Option<GaugePotential> {
        let data = self.index.as_ref()?;
        let a = match (&data.grad_ln, &data.hess_ln) {
            (Some(g), Some(h)) => {
                let (g, h) = (Arc::clone(g), Arc::clone(h));
                conformal_family_with_log_hessian(&data.n, move |x| g(x), move |x| h(x))
            }
            _ => conformal_family(&data.n),
        };
        Some(GaugePotential::new(
            format!("conformal[{}]", self.name),
            a.field().clone(),
        ))
    }

    /// The isotropic frame h^a_i = δ^a_i n that transcribes the medium's
    /// gauge potential into its Christoffel connection.
    pub fn frame(&self) -> Option<Dreibein> {
        let data = self.index.as_ref()?;
        let n = match &data.grad_ln {
            Some(g) => {
                let nf = data.n.clone();
                let g = Arc::clone(g);
                let base = data.n.clone();
                base.try_with_grad(move |x, dir| Ok(nf.at(x)? * g(x)[dir]))
            }
            None => data.n.clone(),
        };
        Some(Dreibein::isotropic(n))
    }

    /// Ricci scalar of the medium's Levi-Civita connection.
    pub fn scalar_curvature(&self, x: Vec3) -> Result<f64> {
        scalar_curvature_of(&self.metric, &self.christoffel_field(), x)
    }

    /// Sourceless field-equation residual of the medium's own Christoffel
    /// connection.
    pub fn yang_mills_residual(&self, x: Vec3) -> Result<Rank3> {
        curved_ampere_residual(&self.metric, &self.christoffel_field(), x)
    }

    /// Image point and unit-speed arc length of the perfect-focusing map,
    /// for media that have one.
    pub fn focal_image(&self, x0: Vec3) -> Option<(Vec3, f64)> {
        let (map, arc) = self.focal.as_ref()?;
        if norm(x0) == 0.0 {
            return None;
        }
        Some((map(x0), *arc))
    }
}

/// Spherical/hyperbolic media come in two normalizations; physics
/// certificates run on the embedding form.
pub struct MediumPair {
    pub textbook: OpticalMedium,
    pub embedding: OpticalMedium,
}

/// Which branch of the two-sheeted hyperboloid (lower fills the ball,
/// upper its exterior).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Upper,
    Lower,
}

/// The stereographic spherical medium in both normalizations.
pub fn spherical_medium() -> MediumPair {
    MediumPair {
        textbook: OpticalMedium::fish_eye_textbook(),
        embedding: OpticalMedium::fish_eye(),
    }
}

/// The stereographic hyperbolic medium in both normalizations.
pub fn hyperbolic_medium(branch: Branch) -> MediumPair {
    MediumPair {
        textbook: OpticalMedium::hyperbolic_textbook(),
        embedding: match branch {
            Branch::Lower => OpticalMedium::poincare_ball(),
            Branch::Upper => OpticalMedium::poincare_ball_exterior(),
        },
    }
}

/// Ricci scalar of the Levi-Civita connection of a metric field.
pub fn scalar_curvature(g: &MatrixField, x: Vec3) -> Result<f64> {
    scalar_curvature_of(g, &christoffel_field(g), x)
}

fn scalar_curvature_of(g: &MatrixField, conn: &Rank3Field, x: Vec3) -> Result<f64> {
    let riem = curvature(conn, x)?;
    let ginv = inv3(g.at(x)?)?;
    Ok(sum2(|s, j| ginv[s][j] * sum1(|i| riem[i][s][i][j])))
}

/// Sourceless curved-space field-equation residual of a connection:
///
///   (1/√|g|) ∂_j(√|g| R^r_s{}^{ij}) + Γ^r_{kj} R^k_s{}^{ij} − Γ^k_{sj} R^r_k{}^{ij}
///
/// with both 2-form indices of the curvature raised by g (the free index of
/// the result is a vector index). Raising the antisymmetric pair is what
/// lets the density factor absorb every Christoffel correction on the form
/// indices, so this is the covariant coderivative statement in components;
/// with g = δ it reduces index-for-index to the flat transcribed field
/// equation.
pub fn curved_ampere_residual(g: &MatrixField, conn: &Rank3Field, x: Vec3) -> Result<Rank3> {
    let raised = |gv: Mat3, riem: Rank4| -> Result<Rank4> {
        let ginv = inv3(gv)?;
        Ok(rank4(|r, s, i, j| {
            sum2(|m, n| riem[r][s][m][n] * ginv[m][i] * ginv[n][j])
        }))
    };
    let weighted: Field<Rank4> = {
        let (g2, c2) = (g.clone(), conn.clone());
        let raised2 = raised;
        Field::try_new(move |y| {
            let gv = g2.at(y)?;
            let sq = det3(gv).abs().sqrt();
            let r_up = raised2(gv, curvature(&c2, y)?)?;
            Ok(r_up.scale(sq))
        })
        .with_domain(g.domain().merged(conn.domain()))
        .with_step(g.step())
    };
    let gv = g.at(x)?;
    let sq = det3(gv).abs().sqrt();
    let gamma = conn.at(x)?;
    let r_up = raised(gv, curvature(conn, x)?)?;
    let dw = weighted.partials(x)?;
    Ok(rank3(|r, s, i| {
        sum1(|j| dw[j][r][s][i][j]) / sq
            + sum2(|k, j| gamma[r][k][j] * r_up[k][s][i][j] - gamma[k][s][j] * r_up[r][k][i][j])
    }))
}
