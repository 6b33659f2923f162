//! Radial-conformal ansatz and its solutions.
//!
//! Frames of the form h^a_i = δ^a_i f(r) turn the static field equations
//! into a third-order radial equation,
//!
//!   f‴ + (1/(rf)) f′² − (5/f) f′ f″ + (5/f²) f′³ = 0,
//!
//! whose power-law profiles f = r^(−q) reduce it to the root polynomial
//! q(2−q)(1−q). The ansatz potential is A^d_j = −(f′/(rf)) ε^d_{jk} x^k;
//! q = 1 is the monopole configuration A^a_j = ε^a_{jk} x^k / r² with
//! magnetic field B^a_j = −x^a x_j / r⁴, and q = 2 gives a non-vanishing
//! potential with zero curvature. More generally, every configuration
//! A^a_j = −ε^a_{jk} ∂^k ln n transcribes through h = δ·n into the
//! Levi-Civita connection of g = n²δ: an isotropic medium with index n.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Domain, MatrixField, ScalarField};
use crate::gauge::{self, GaugePotential};
use crate::tensor3::{levi_civita, mat3, norm, sum1, Linear, Mat3, Vec3};

type ProfileFn = dyn Fn(f64) -> f64 + Send + Sync;
type ProfileDerivs = dyn Fn(f64) -> (f64, f64, f64) + Send + Sync;

/// Scalar profile f(r) for r > 0 with first three radial derivatives,
/// analytic for power laws and finite-difference for generic profiles.
#[derive(Clone)]
pub struct RadialProfile {
    name: String,
    f: Arc<ProfileFn>,
    derivs: Option<Arc<ProfileDerivs>>,
    dr: f64,
}

/// Radial FD step for profiles without analytic derivatives. The scan over
/// candidate profiles needs residual signs, not high precision.
const PROFILE_FD_STEP: f64 = 1e-3;

impl RadialProfile {
    /// f(r) = r^(−q), with analytic derivatives.
    pub fn power_law(q: f64) -> Self {
        RadialProfile {
            name: format!("r^-({q})"),
            f: Arc::new(move |r: f64| r.powf(-q)),
            derivs: Some(Arc::new(move |r: f64| {
                (
                    -q * r.powf(-q - 1.0),
                    q * (q + 1.0) * r.powf(-q - 2.0),
                    -q * (q + 1.0) * (q + 2.0) * r.powf(-q - 3.0),
                )
            })),
            dr: PROFILE_FD_STEP,
        }
    }

    pub fn constant(c: f64) -> Self {
        RadialProfile {
            name: format!("const({c})"),
            f: Arc::new(move |_| c),
            derivs: Some(Arc::new(|_| (0.0, 0.0, 0.0))),
            dr: PROFILE_FD_STEP,
        }
    }

    /// Generic profile; derivatives fall back to central differences on r.
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RadialProfile {
            name: name.into(),
            f: Arc::new(f),
            derivs: None,
            dr: PROFILE_FD_STEP,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    pub fn has_analytic_derivs(&self) -> bool {
        self.derivs.is_some()
    }

    /// (f′, f″, f‴) at r.
    pub fn derivatives(&self, r: f64) -> (f64, f64, f64) {
        if let Some(d) = &self.derivs {
            return d(r);
        }
        let h = self.dr.min(r / 4.0);
        let f = |c: f64| (self.f)(r + c * h);
        let (fm2, fm1, f0, fp1, fp2) = (f(-2.0), f(-1.0), f(0.0), f(1.0), f(2.0));
        let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        let d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h);
        (d1, d2, d3)
    }
}

/// Residual of the radial equation f‴ + (1/(rf)) f′² − (5/f) f′ f″ + (5/f²) f′³.
pub fn ode_residual(p: &RadialProfile, r: f64) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::NonPositiveRadius(r));
    }
    let f = p.eval(r);
    if f == 0.0 || !f.is_finite() {
        return Err(Error::ProfileZero(r));
    }
    let (f1, f2, f3) = p.derivatives(r);
    Ok(f3 + f1 * f1 / (r * f) - 5.0 * f1 * f2 / f + 5.0 * f1 * f1 * f1 / (f * f))
}

/// Root polynomial q(2−q)(1−q) for power-law profiles; roots exactly {0, 1, 2}.
pub fn power_law_residual(q: f64) -> f64 {
    q * (2.0 - q) * (1.0 - q)
}

/// Ansatz potential A^d_j = −(f′/(rf)) ε^d_{jk} x^k, singular at the origin.
///
/// Power-law profiles give A^d_j = q ε^d_{jk} x^k / r² and carry analytic
/// derivatives; generic profiles use the radial FD fallback.
pub fn ansatz_potential(p: &RadialProfile) -> GaugePotential {
    let coeff = {
        let p = p.clone();
        move |r: f64| -> f64 {
            let (f1, _, _) = p.derivatives(r);
            -f1 / (r * p.eval(r))
        }
    };
    let name = format!("ansatz[{}]", p.name);
    let value = {
        let coeff = coeff.clone();
        move |x: Vec3| {
            let c = coeff(norm(x));
            mat3(|a, j| c * sum1(|k| levi_civita(a, j, k) * x[k]))
        }
    };
    let mut field = MatrixField::new(value).with_domain(Domain::excluding_point([0.0; 3]));
    if p.has_analytic_derivs() {
        let p = p.clone();
        field = field.with_grad(move |x, dir| {
            let r = norm(x);
            let f = p.eval(r);
            let (f1, f2, _) = p.derivatives(r);
            let c = -f1 / (r * f);
            // c′ = −f″/(rf) + f′/(r²f) + f′²/(rf²)
            let cp = -f2 / (r * f) + f1 / (r * r * f) + f1 * f1 / (r * f * f);
            mat3(|a, j| {
                cp * (x[dir] / r) * sum1(|k| levi_civita(a, j, k) * x[k])
                    + c * levi_civita(a, j, dir)
            })
        });
    }
    GaugePotential::new(name, field)
}

/// The monopole configuration A^a_j = ε^a_{jk} x^k / r² (the q = 1 ansatz),
/// with analytic derivatives and the origin as declared singular locus.
pub fn wu_yang_monopole() -> GaugePotential {
    let a = ansatz_potential(&RadialProfile::power_law(1.0));
    GaugePotential::new("wu_yang_monopole", a.field().clone())
}

/// Closed-form monopole magnetic field B^a_j = −x^a x_j / r⁴, for oracle use.
pub fn monopole_magnetic(x: Vec3) -> Mat3 {
    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    mat3(|a, j| -x[a] * x[j] / (r2 * r2))
}

/// Closed-form magnetic field of the power-law ansatz: B^a_j = q(q−2) x^a x_j / r⁴.
pub fn power_law_magnetic(q: f64, x: Vec3) -> Mat3 {
    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    mat3(|a, j| q * (q - 2.0) * x[a] * x[j] / (r2 * r2))
}

/// Ansatz magnetic field, computed authoritatively from the potential via
/// the curl-plus-commutator definition.
pub fn ansatz_magnetic(p: &RadialProfile, x: Vec3) -> Result<Mat3> {
    gauge::magnetic_field(&ansatz_potential(p), x)
}

/// An alternative closed-form radial expression for the ansatz field:
///
///   B^d_j = δ^d_j [2f′/(rf) + 4f′²/f² − f″/f]
///         + (x_j x^d / (r²f)) [f″ − f′/r − 2f′²/f]
///
/// This does NOT agree with the field computed from the potential (for
/// power laws its isotropic part is 3q(q−1)/r² and its outer part has the
/// opposite sign); it is retained as a cross-check target and the verify
/// report records the deviation. See [`radial_form_deviation`].
pub fn ansatz_magnetic_radial_form(p: &RadialProfile, x: Vec3) -> Result<Mat3> {
    let r = norm(x);
    if r <= 0.0 {
        return Err(Error::NonPositiveRadius(r));
    }
    let f = p.eval(r);
    if f == 0.0 || !f.is_finite() {
        return Err(Error::ProfileZero(r));
    }
    let (f1, f2, _) = p.derivatives(r);
    let iso = 2.0 * f1 / (r * f) + 4.0 * f1 * f1 / (f * f) - f2 / f;
    let outer = (f2 - f1 / r - 2.0 * f1 * f1 / f) / (r * r * f);
    Ok(mat3(|d, j| {
        iso * crate::tensor3::kronecker(d, j) + outer * x[j] * x[d]
    }))
}

/// Deviation of the radial closed form from the authoritative field, split
/// into isotropic (coefficient of δ) and outer (coefficient of x x) parts.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct RadialFormDeviation {
    pub radius: f64,
    pub isotropic: f64,
    pub outer: f64,
    pub max_abs: f64,
}

pub fn radial_form_deviation(p: &RadialProfile, x: Vec3) -> Result<RadialFormDeviation> {
    let authoritative = ansatz_magnetic(p, x)?;
    let radial_form = ansatz_magnetic_radial_form(p, x)?;
    let d = radial_form.add_scaled(-1.0, &authoritative);
    let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    // D = α δ + β x x  ⇒  α = (tr D − xDx/r²)/2, β = (xDx/r² − α)/r²
    let tr = d[0][0] + d[1][1] + d[2][2];
    let xdx = crate::tensor3::sum2(|i, j| x[i] * d[i][j] * x[j]);
    let alpha = (tr - xdx / r2) / 2.0;
    let beta = (xdx / r2 - alpha) / r2;
    Ok(RadialFormDeviation {
        radius: r2.sqrt(),
        isotropic: alpha,
        outer: beta,
        max_abs: Linear::max_abs(&d),
    })
}

/// Conformally-flat family A^a_j = −ε^a_{jk} ∂^k ln n for a positive index
/// field n. The transcription through h^a_i = δ^a_i n coincides with the
/// Christoffel connection of g = n² δ and has zero torsion.
pub fn conformal_family(n: &ScalarField) -> GaugePotential {
    let nf = n.clone();
    let field = MatrixField::try_new(move |x| {
        let nv = nf.at(x)?;
        if nv <= 0.0 {
            return Err(Error::NonPositiveIndex { x, n: nv });
        }
        let dn = nf.partials(x)?;
        Ok(mat3(|a, j| -sum1(|k| levi_civita(a, j, k) * dn[k]) / nv))
    })
    .with_domain(n.domain().clone())
    .with_step(n.step());
    GaugePotential::new("conformal", field)
}

/// Same family with an analytic Hessian of ln n attached, so the potential
/// itself carries analytic derivatives.
pub fn conformal_family_with_log_hessian(
    n: &ScalarField,
    grad_ln: impl Fn(Vec3) -> Vec3 + Send + Sync + 'static,
    hess_ln: impl Fn(Vec3) -> Mat3 + Send + Sync + 'static,
) -> GaugePotential {
    let base = conformal_family(n);
    let domain = n.domain().clone();
    let field = MatrixField::new(move |x| {
        let g = grad_ln(x);
        mat3(|a, j| -sum1(|k| levi_civita(a, j, k) * g[k]))
    })
    .with_grad(move |x, dir| {
        let h = hess_ln(x);
        mat3(|a, j| -sum1(|k| levi_civita(a, j, k) * h[k][dir]))
    })
    .with_domain(domain)
    .with_step(n.step());
    GaugePotential::new(base.name().to_string(), field)
}

/// One row of the candidate-profile scan.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScanRow {
    pub profile: String,
    pub q: f64,
    /// Residual of the radial equation at each requested radius; None where
    /// the profile is undefined or vanishes.
    pub residuals: Vec<Option<f64>>,
    pub is_root: bool,
}

/// Residual magnitude below which a scan row counts as a vanishing row.
pub const SCAN_ROOT_TOLERANCE: f64 = 1e-8;

/// Candidate profile families for the scan, by name.
pub fn scan_profile(family: &str, q: f64) -> Option<RadialProfile> {
    match family {
        "power" => Some(RadialProfile::power_law(q)),
        "exp(+r^q)" => Some(RadialProfile::from_fn(
            format!("exp(+r^{q})"),
            move |r: f64| r.powf(q).exp(),
        )),
        "exp(-r^q)" => Some(RadialProfile::from_fn(
            format!("exp(-r^{q})"),
            move |r: f64| (-r.powf(q)).exp(),
        )),
        "exp(1/(1-qr))" => Some(RadialProfile::from_fn(
            format!("exp(1/(1-{q}r))"),
            move |r: f64| (1.0 / (1.0 - q * r)).exp(),
        )),
        "exp(1/(1-r^q))" => Some(RadialProfile::from_fn(
            format!("exp(1/(1-r^{q}))"),
            move |r: f64| (1.0 / (1.0 - r.powf(q))).exp(),
        )),
        "exp(+qr^2)" => Some(RadialProfile::from_fn(
            format!("exp(+{q}r^2)"),
            move |r: f64| (q * r * r).exp(),
        )),
        "exp(-qr^2)" => Some(RadialProfile::from_fn(
            format!("exp(-{q}r^2)"),
            move |r: f64| (-q * r * r).exp(),
        )),
        "r/(1-qr)" => Some(RadialProfile::from_fn(
            format!("r/(1-{q}r)"),
            move |r: f64| r / (1.0 - q * r),
        )),
        "r/(1-qr^2)" => Some(RadialProfile::from_fn(
            format!("r/(1-{q}r^2)"),
            move |r: f64| r / (1.0 - q * r * r),
        )),
        _ => None,
    }
}

pub const SCAN_FAMILIES: [&str; 9] = [
    "power",
    "exp(+r^q)",
    "exp(-r^q)",
    "exp(1/(1-qr))",
    "exp(1/(1-r^q))",
    "exp(+qr^2)",
    "exp(-qr^2)",
    "r/(1-qr)",
    "r/(1-qr^2)",
];

/// Scan candidate profiles over exponents and radii. Rows with every
/// evaluable residual below [`SCAN_ROOT_TOLERANCE`] are flagged as roots.
pub fn ansatz_scan(q_values: &[f64], radii: &[f64]) -> Vec<ScanRow> {
    let mut rows = Vec::new();
    for family in SCAN_FAMILIES {
        for &q in q_values {
            let Some(profile) = scan_profile(family, q) else {
                continue;
            };
            let residuals: Vec<Option<f64>> = radii
                .iter()
                .map(|&r| ode_residual(&profile, r).ok().filter(|v| v.is_finite()))
                .collect();
            let evaluable = residuals.iter().flatten().count();
            let is_root = evaluable == radii.len()
                && residuals
                    .iter()
                    .flatten()
                    .all(|v| v.abs() < SCAN_ROOT_TOLERANCE);
            rows.push(ScanRow {
                profile: family.to_string(),
                q,
                residuals,
                is_root,
            });
        }
    }
    rows
}
