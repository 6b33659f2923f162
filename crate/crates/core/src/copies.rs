//! Curvature-equal potential pairs and their torsion fingerprints.
//!
//! Distinct potentials with the same magnetic field cannot be told apart by
//! curvature. Transcribed through the SAME dreibein they share the induced
//! metric and its Levi-Civita connection, so their whole difference sits in
//! the contorsion: torsion distinguishes them. The flat-host exhibit is the
//! pair (A = 0, A^a_j = 2 ε^a_{jk} x^k/r²), both curvature-free, with
//! clearly different transcribed torsions.
//!
//! No search for new pairs is attempted here; given pairs are verified and
//! fingerprinted.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauge::{magnetic_field, GaugePotential};
use crate::tensor3::{Linear, Rank3, Vec3};
use crate::transcribe::{
    contorsion_field, curvature_split, torsion_field, transcribed_connection_field, Dreibein,
};

/// Result of a pointwise curvature comparison.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurvatureComparison {
    pub equal: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

/// True iff the magnetic fields of the two potentials agree within `tol`
/// at every sample point.
pub fn curvature_equal(
    a1: &GaugePotential,
    a2: &GaugePotential,
    points: &[Vec3],
    tol: f64,
) -> Result<CurvatureComparison> {
    if points.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut max_deviation: f64 = 0.0;
    for &x in points {
        let b1 = magnetic_field(a1, x)?;
        let b2 = magnetic_field(a2, x)?;
        max_deviation = max_deviation.max(Linear::max_abs(&b1.add_scaled(-1.0, &b2)));
    }
    Ok(CurvatureComparison {
        equal: max_deviation <= tol,
        max_deviation,
        tolerance: tol,
    })
}

/// Transcribed torsion at each sample point: two potentials pushed through
/// the same frame share (g, Γ̊) and differ exactly in contorsion, so this is
/// the fingerprint that separates curvature-equal pairs.
pub fn torsion_fingerprint(
    a: &GaugePotential,
    h: &Dreibein,
    points: &[Vec3],
) -> Result<Vec<(Vec3, Rank3)>> {
    if points.is_empty() {
        return Err(Error::EmptySamples);
    }
    let t = torsion_field(&transcribed_connection_field(a, h));
    points.iter().map(|&x| Ok((x, t.at(x)?))).collect()
}

/// Structured comparison of a candidate pair.
#[derive(Clone, Debug, Serialize)]
pub struct CopyReport {
    pub first: String,
    pub second: String,
    /// Max |B(A1) − B(A2)| over the samples.
    pub curvature_deviation: f64,
    /// Max |T(A1) − T(A2)| of the transcribed torsions.
    pub torsion_difference: f64,
    /// Max |M(K1) − M(K2)| at the samples: the two contorsions produce the
    /// same curvature correction in the host's split system iff this
    /// vanishes (M is quadratic, so the difference of the M values is the
    /// meaningful residual, not M of the difference). When one potential is
    /// the host representative (K = 0), this is literally whether the other
    /// contorsion solves the host's M = 0 system.
    pub contorsion_difference_residual: f64,
    pub samples: usize,
    pub are_copies: bool,
}

/// Compare two potentials through a common frame.
pub fn copy_report(
    a1: &GaugePotential,
    a2: &GaugePotential,
    h: &Dreibein,
    points: &[Vec3],
    tol: f64,
) -> Result<CopyReport> {
    if points.is_empty() {
        return Err(Error::EmptySamples);
    }
    let comparison = curvature_equal(a1, a2, points, tol)?;

    let g = h.metric_field();
    let conn1 = transcribed_connection_field(a1, h);
    let conn2 = transcribed_connection_field(a2, h);
    let t1 = torsion_field(&conn1);
    let t2 = torsion_field(&conn2);
    let k1 = contorsion_field(&g, &t1);
    let k2 = contorsion_field(&g, &t2);

    let mut torsion_difference: f64 = 0.0;
    let mut m_residual: f64 = 0.0;
    for &x in points {
        let dt = t1.at(x)?.add_scaled(-1.0, &t2.at(x)?);
        torsion_difference = torsion_difference.max(Linear::max_abs(&dt));
        let m1 = curvature_split(&g, &k1, x)?.contorsion;
        let m2 = curvature_split(&g, &k2, x)?.contorsion;
        m_residual = m_residual.max(Linear::max_abs(&m1.add_scaled(-1.0, &m2)));
    }

    Ok(CopyReport {
        first: a1.name().to_string(),
        second: a2.name().to_string(),
        curvature_deviation: comparison.max_deviation,
        torsion_difference,
        contorsion_difference_residual: m_residual,
        samples: points.len(),
        are_copies: comparison.equal,
    })
}
