//! Static SU(2) gauge configurations in the temporal gauge and their
//! flat-space residuals.
//!
//! A configuration is the spatial potential A^a_i alone (the temporal
//! component is gauged away and static fields carry no electric field).
//! Structure constants are fixed to f^a_bc = ε_abc. The operations here are
//!
//!   B^{ai}  = ε^{ijk} (∂_j A^a_k + ½ ε^a_{bc} A^b_j A^c_k)
//!   G^a     = ∂_k E^{ak} + ε^a_{bc} A^b_k E^{ck}
//!   res^{ai} = (∇×B)^{ai} + ε^i_{jk} ε^a_{bc} A^{bj} B^{ck}
//!   u       = ½ Σ_{a,i} (E^a_i² + B^a_i²)
//!
//! and a configuration solves the static sourceless equations at x exactly
//! when the third expression vanishes there.

use crate::error::Result;
use crate::field::{Domain, MatrixField};
use crate::tensor3::{levi_civita, mat3, rank3, sum1, sum2, sum3, vec3, Mat3, Rank3, Vec3};

/// Algebra-valued covector field A^a_i (first index algebra, second space).
#[derive(Clone)]
pub struct GaugePotential {
    field: MatrixField,
    name: String,
}

impl GaugePotential {
    pub fn new(name: impl Into<String>, field: MatrixField) -> Self {
        GaugePotential {
            field,
            name: name.into(),
        }
    }

    pub fn zero() -> Self {
        GaugePotential::new("zero", MatrixField::constant([[0.0; 3]; 3]))
    }

    pub fn name(&self) -> &str {
        &self.name
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

    /// Same configuration scaled by a constant (not a gauge transformation;
    /// scaling a solution by s ≠ 0, 1 breaks it).
    pub fn scaled(&self, s: f64) -> Self {
        GaugePotential::new(format!("{}*{s}", self.name), self.field.scaled(s))
    }

    /// Copy with analytic derivatives stripped (forces the FD path).
    pub fn without_grad(&self) -> Self {
        GaugePotential::new(self.name.clone(), self.field.without_grad())
    }
}

/// Algebra-valued vector field V^a_i, used for electric and magnetic fields.
#[derive(Clone)]
pub struct ColorVectorField {
    field: MatrixField,
}

impl ColorVectorField {
    pub fn new(field: MatrixField) -> Self {
        ColorVectorField { field }
    }

    pub fn zero() -> Self {
        ColorVectorField::new(MatrixField::constant([[0.0; 3]; 3]))
    }

    pub fn field(&self) -> &MatrixField {
        &self.field
    }

    pub fn at(&self, x: Vec3) -> Result<Mat3> {
        self.field.at(x)
    }
}

/// B^{ai} = ε^{ijk} (∂_j A^a_k + ½ ε^a_{bc} A^b_j A^c_k).
pub fn magnetic_field(a: &GaugePotential, x: Vec3) -> Result<Mat3> {
    let v = a.at(x)?;
    let d = [a.partial(x, 0)?, a.partial(x, 1)?, a.partial(x, 2)?];
    Ok(mat3(|ai, i| {
        sum2(|j, k| {
            levi_civita(i, j, k)
                * (d[j][ai][k] + 0.5 * sum2(|b, c| levi_civita(ai, b, c) * v[b][j] * v[c][k]))
        })
    }))
}

/// The magnetic field as a field (values analytic whenever A's derivatives
/// are; its own derivatives go through the FD stencil).
pub fn magnetic_field_field(a: &GaugePotential) -> ColorVectorField {
    let a = a.clone();
    let domain = a.domain().clone();
    let step = a.field().step();
    ColorVectorField::new(
        MatrixField::try_new(move |x| magnetic_field(&a, x))
            .with_domain(domain)
            .with_step(step),
    )
}

/// Dual form F^a_{ij} = ε_{ijk} B^{ak}, produced on demand.
pub fn field_strength(b: Mat3) -> Rank3 {
    rank3(|a, i, j| sum1(|k| levi_civita(i, j, k) * b[a][k]))
}

/// Gauss-law residual G^a = ∂_k E^{ak} + ε^a_{bc} A^b_k E^{ck}.
pub fn gauss_residual(a: &GaugePotential, e: &ColorVectorField, x: Vec3) -> Result<Vec3> {
    let av = a.at(x)?;
    let ev = e.at(x)?;
    let de = [
        e.field().partial(x, 0)?,
        e.field().partial(x, 1)?,
        e.field().partial(x, 2)?,
    ];
    Ok(vec3(|ai| {
        let div: f64 = (0..3).map(|k| de[k][ai][k]).sum();
        div + sum3(|b, c, k| levi_civita(ai, b, c) * av[b][k] * ev[c][k])
    }))
}

/// Static Ampère residual (∇×B)^{ai} + ε^i_{jk} ε^a_{bc} A^{bj} B^{ck}.
///
/// Zero iff A solves the static sourceless equations at x.
pub fn ampere_residual(a: &GaugePotential, x: Vec3) -> Result<Mat3> {
    let b = magnetic_field_field(a);
    let av = a.at(x)?;
    let bv = b.at(x)?;
    let db = [
        b.field().partial(x, 0)?,
        b.field().partial(x, 1)?,
        b.field().partial(x, 2)?,
    ];
    Ok(mat3(|ai, i| {
        sum2(|j, k| {
            levi_civita(i, j, k)
                * (db[j][ai][k] + sum2(|b_, c| levi_civita(ai, b_, c) * av[b_][j] * bv[c][k]))
        })
    }))
}

/// Energy density ½ Σ_{a,i} (E^a_i² + B^a_i²); non-negative, zero iff both
/// vanish at x.
pub fn energy_density(e: &ColorVectorField, b: &ColorVectorField, x: Vec3) -> Result<f64> {
    let ev = e.at(x)?;
    let bv = b.at(x)?;
    Ok(energy_density_values(ev, bv))
}

pub fn energy_density_values(e: Mat3, b: Mat3) -> f64 {
    0.5 * sum2(|a, i| e[a][i] * e[a][i] + b[a][i] * b[a][i])
}
