//! C ABI for the gauge-optics toolkit.
//!
//! Opaque handles own the Rust objects; every evaluation writes through
//! out-pointers and returns a status code. All functions are re-entrant;
//! handles are immutable after creation and may be shared across threads,
//! but each handle must be freed exactly once with its matching `_free`.
//!
//! Point arguments are `double[3]`, matrix outputs are row-major
//! `double[9]` indexed `[algebra][space]`, trajectory samples are
//! `double[10]` laid out `s, x1..x3, v1..v3, I1..I3`.

// index loops mirror the tensor-index notation
#![allow(clippy::needless_range_loop)]

use gauge_optics::dynamics::{
    conserved_report, integrate, ConservedDrifts, GeodesicSystem, PhaseState, Termination,
    Trajectory, WongForce, WongSystem,
};
use gauge_optics::gauge::{ampere_residual, energy_density_values, magnetic_field, GaugePotential};
use gauge_optics::optics::OpticalMedium;
use gauge_optics::radial::{self, RadialProfile};
use gauge_optics::tensor3::Linear;
use gauge_optics::transcribe::Dreibein;

use std::os::raw::c_char;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoptStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    /// Evaluation hit a declared singular locus or a singular matrix.
    DomainError = 3,
    NonFinite = 4,
}

/// Built-in media selectable through the C surface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoptMediumKind {
    Euclidean = 0,
    /// Unit-sphere stereographic medium, n = 4/(4+r²).
    FishEye = 1,
    /// Textbook fish-eye, n = 1/(1+r²).
    FishEyeTextbook = 2,
    /// Hyperboloid stereographic medium inside the ball r < 2.
    PoincareBall = 3,
    /// Same metric on the exterior r > 2.
    PoincareBallExterior = 4,
    /// Textbook hyperbolic index, n = 1/(1−r²).
    HyperbolicTextbook = 5,
}

/// Why a trace ended.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoptTermination {
    SpanComplete = 0,
    SingularLocus = 1,
    DomainExit = 2,
}

/// Opaque gauge configuration handle.
pub struct GoptField {
    inner: GaugePotential,
}

/// Opaque medium handle.
pub struct GoptMedium {
    inner: OpticalMedium,
}

/// Opaque trajectory handle (samples plus drift report).
pub struct GoptTrajectory {
    inner: Trajectory,
    drifts: ConservedDrifts,
}

fn status_of(err: &gauge_optics::Error) -> GoptStatus {
    if err.is_domain() {
        GoptStatus::DomainError
    } else {
        GoptStatus::InvalidArgument
    }
}

/// Stable, NUL-terminated name for a status code.
#[no_mangle]
pub extern "C" fn gopt_status_name(status: GoptStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        GoptStatus::Ok => b"ok\0",
        GoptStatus::NullArgument => b"null argument\0",
        GoptStatus::InvalidArgument => b"invalid argument\0",
        GoptStatus::DomainError => b"domain error\0",
        GoptStatus::NonFinite => b"non-finite state\0",
    };
    name.as_ptr() as *const c_char
}

/// The monopole configuration A^a_j = ε^a_{jk} x^k / r².
#[no_mangle]
pub extern "C" fn gopt_field_monopole() -> *mut GoptField {
    Box::into_raw(Box::new(GoptField {
        inner: radial::wu_yang_monopole(),
    }))
}

/// Radial power-law ansatz potential A^a_j = q ε^a_{jk} x^k / r².
#[no_mangle]
pub extern "C" fn gopt_field_power_law(q: f64) -> *mut GoptField {
    if !q.is_finite() {
        return std::ptr::null_mut();
    }
    Box::into_raw(Box::new(GoptField {
        inner: radial::ansatz_potential(&RadialProfile::power_law(q)),
    }))
}

#[no_mangle]
pub extern "C" fn gopt_field_zero() -> *mut GoptField {
    Box::into_raw(Box::new(GoptField {
        inner: GaugePotential::zero(),
    }))
}

/// The conformal potential a medium absorbs (NULL for non-isotropic media).
///
/// # Safety
/// `medium` must be a live handle from `gopt_medium_new` or NULL.
#[no_mangle]
pub unsafe extern "C" fn gopt_field_from_medium(medium: *const GoptMedium) -> *mut GoptField {
    let Some(medium) = medium.as_ref() else {
        return std::ptr::null_mut();
    };
    match medium.inner.gauge_potential() {
        Some(inner) => Box::into_raw(Box::new(GoptField { inner })),
        None => std::ptr::null_mut(),
    }
}

/// # Safety
/// `field` must be a handle returned by a `gopt_field_*` constructor, not
/// yet freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gopt_field_free(field: *mut GoptField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

unsafe fn read3(p: *const f64) -> Option<[f64; 3]> {
    if p.is_null() {
        None
    } else {
        Some([*p, *p.add(1), *p.add(2)])
    }
}

/// Magnetic field B^{ai} at a point, written row-major into `out[9]`.
///
/// # Safety
/// `field` must be a live field handle; `xyz` must point to 3 readable
/// doubles and `out` to 9 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn gopt_field_magnetic(
    field: *const GoptField,
    xyz: *const f64,
    out: *mut f64,
) -> GoptStatus {
    let (Some(field), Some(x)) = (field.as_ref(), read3(xyz)) else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    match magnetic_field(&field.inner, x) {
        Ok(b) => {
            for a in 0..3 {
                for i in 0..3 {
                    *out.add(a * 3 + i) = b[a][i];
                }
            }
            GoptStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Max-abs residual of the static sourceless field equation at a point.
///
/// # Safety
/// `field` must be a live field handle; `xyz` 3 readable and `out` 1
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn gopt_field_equation_residual(
    field: *const GoptField,
    xyz: *const f64,
    out: *mut f64,
) -> GoptStatus {
    let (Some(field), Some(x)) = (field.as_ref(), read3(xyz)) else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    match ampere_residual(&field.inner, x) {
        Ok(r) => {
            *out = Linear::max_abs(&r);
            GoptStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Energy density ½ Σ (B^a_i)² of the static configuration at a point.
///
/// # Safety
/// `field` must be a live field handle; `xyz` 3 readable and `out` 1
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn gopt_field_energy_density(
    field: *const GoptField,
    xyz: *const f64,
    out: *mut f64,
) -> GoptStatus {
    let (Some(field), Some(x)) = (field.as_ref(), read3(xyz)) else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    match magnetic_field(&field.inner, x) {
        Ok(b) => {
            *out = energy_density_values([[0.0; 3]; 3], b);
            GoptStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub extern "C" fn gopt_medium_new(kind: GoptMediumKind) -> *mut GoptMedium {
    let inner = match kind {
        GoptMediumKind::Euclidean => OpticalMedium::euclidean(),
        GoptMediumKind::FishEye => OpticalMedium::fish_eye(),
        GoptMediumKind::FishEyeTextbook => OpticalMedium::fish_eye_textbook(),
        GoptMediumKind::PoincareBall => OpticalMedium::poincare_ball(),
        GoptMediumKind::PoincareBallExterior => OpticalMedium::poincare_ball_exterior(),
        GoptMediumKind::HyperbolicTextbook => OpticalMedium::hyperbolic_textbook(),
    };
    Box::into_raw(Box::new(GoptMedium { inner }))
}

/// # Safety
/// `medium` must be a handle returned by `gopt_medium_new`, not yet freed;
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gopt_medium_free(medium: *mut GoptMedium) {
    if !medium.is_null() {
        drop(Box::from_raw(medium));
    }
}

/// Refractive index at a point.
///
/// # Safety
/// `medium` must be a live medium handle; `xyz` 3 readable and `out` 1
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn gopt_medium_index(
    medium: *const GoptMedium,
    xyz: *const f64,
    out: *mut f64,
) -> GoptStatus {
    let (Some(medium), Some(x)) = (medium.as_ref(), read3(xyz)) else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    match medium.inner.index_at(x) {
        Ok(n) => {
            *out = n;
            GoptStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Ricci scalar of the medium's Levi-Civita connection at a point.
///
/// # Safety
/// `medium` must be a live medium handle; `xyz` 3 readable and `out` 1
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn gopt_medium_scalar_curvature(
    medium: *const GoptMedium,
    xyz: *const f64,
    out: *mut f64,
) -> GoptStatus {
    let (Some(medium), Some(x)) = (medium.as_ref(), read3(xyz)) else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    match medium.inner.scalar_curvature(x) {
        Ok(r) => {
            *out = r;
            GoptStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Max-abs residual of the curved sourceless field equation for the
/// medium's own Christoffel connection.
///
/// # Safety
/// `medium` must be a live medium handle; `xyz` 3 readable and `out` 1
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn gopt_medium_field_equation_residual(
    medium: *const GoptMedium,
    xyz: *const f64,
    out: *mut f64,
) -> GoptStatus {
    let (Some(medium), Some(x)) = (medium.as_ref(), read3(xyz)) else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    match medium.inner.yang_mills_residual(x) {
        Ok(r) => {
            *out = Linear::max_abs(&r);
            GoptStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

fn finish_trace(
    result: gauge_optics::Result<Trajectory>,
    drifts_of: impl Fn(&Trajectory) -> gauge_optics::Result<ConservedDrifts>,
    out: *mut *mut GoptTrajectory,
) -> GoptStatus {
    match result {
        Ok(traj) => match drifts_of(&traj) {
            Ok(drifts) => {
                let handle = Box::new(GoptTrajectory {
                    inner: traj,
                    drifts,
                });
                unsafe { *out = Box::into_raw(handle) };
                GoptStatus::Ok
            }
            Err(e) => status_of(&e),
        },
        Err(gauge_optics::Error::NonFiniteState { .. }) => GoptStatus::NonFinite,
        Err(e) => status_of(&e),
    }
}

/// Integrate a geodesic of a medium with fixed-step RK4 from s = 0 to
/// `s_end`; the new trajectory handle is written to `out`.
///
/// # Safety
/// `medium` must be a live medium handle; `x0`, `v0` must point to 3
/// readable doubles each; `out` must be a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn gopt_trace_geodesic(
    medium: *const GoptMedium,
    x0: *const f64,
    v0: *const f64,
    s_end: f64,
    step: f64,
    out: *mut *mut GoptTrajectory,
) -> GoptStatus {
    let (Some(medium), Some(x), Some(v)) = (medium.as_ref(), read3(x0), read3(v0)) else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    let system = GeodesicSystem::from_medium(&medium.inner);
    let result = integrate(&system, PhaseState::geodesic(x, v), (0.0, s_end), step);
    finish_trace(result, |t| conserved_report(t, &system), out)
}

/// Integrate an isospin probe in a gauge configuration (trivial frame).
/// Nonzero `lorentz` selects the generalized Lorentz force; zero selects
/// joint parallel transport, which conserves |I|², |v|²_g, and I·v.
///
/// # Safety
/// `field` must be a live field handle; `x0`, `v0`, `i0` must point to 3
/// readable doubles each; `out` must be a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn gopt_trace_charged(
    field: *const GoptField,
    x0: *const f64,
    v0: *const f64,
    i0: *const f64,
    s_end: f64,
    step: f64,
    lorentz: u8,
    out: *mut *mut GoptTrajectory,
) -> GoptStatus {
    let (Some(field), Some(x), Some(v), Some(i)) =
        (field.as_ref(), read3(x0), read3(v0), read3(i0))
    else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    let force = if lorentz != 0 {
        WongForce::Lorentz
    } else {
        WongForce::ParallelTransport
    };
    let system = WongSystem::new(field.inner.clone(), Dreibein::trivial(), force);
    let result = integrate(&system, PhaseState::new(x, v, i), (0.0, s_end), step);
    finish_trace(result, |t| conserved_report(t, &system), out)
}

/// Number of samples in a trajectory (0 for NULL).
///
/// # Safety
/// `trajectory` must be a live trajectory handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn gopt_trajectory_len(trajectory: *const GoptTrajectory) -> usize {
    trajectory.as_ref().map_or(0, |t| t.inner.len())
}

/// Copy sample `index` into `out[10]` as s, x1..x3, v1..v3, I1..I3.
///
/// # Safety
/// `trajectory` must be a live trajectory handle; `out` must point to 10
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn gopt_trajectory_sample(
    trajectory: *const GoptTrajectory,
    index: usize,
    out: *mut f64,
) -> GoptStatus {
    let Some(t) = trajectory.as_ref() else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    let Some(sample) = t.inner.samples.get(index) else {
        return GoptStatus::InvalidArgument;
    };
    *out = sample.s;
    for k in 0..3 {
        *out.add(1 + k) = sample.state.x[k];
        *out.add(4 + k) = sample.state.v[k];
        *out.add(7 + k) = sample.state.i[k];
    }
    GoptStatus::Ok
}

/// # Safety
/// `trajectory` must be a live trajectory handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn gopt_trajectory_termination(
    trajectory: *const GoptTrajectory,
) -> GoptTermination {
    match trajectory.as_ref().map(|t| t.inner.termination) {
        Some(Termination::SingularLocus { .. }) => GoptTermination::SingularLocus,
        Some(Termination::DomainExit { .. }) => GoptTermination::DomainExit,
        _ => GoptTermination::SpanComplete,
    }
}

/// Copy the max relative drifts of |I|², |v|²_g, I·v into `out[3]`.
///
/// # Safety
/// `trajectory` must be a live trajectory handle; `out` must point to 3
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn gopt_trajectory_drifts(
    trajectory: *const GoptTrajectory,
    out: *mut f64,
) -> GoptStatus {
    let Some(t) = trajectory.as_ref() else {
        return GoptStatus::NullArgument;
    };
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    *out = t.drifts.isospin_norm;
    *out.add(1) = t.drifts.velocity_norm;
    *out.add(2) = t.drifts.isospin_velocity;
    GoptStatus::Ok
}

/// # Safety
/// `trajectory` must be a handle from a `gopt_trace_*` call, not yet freed;
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gopt_trajectory_free(trajectory: *mut GoptTrajectory) {
    if !trajectory.is_null() {
        drop(Box::from_raw(trajectory));
    }
}

/// Root polynomial q(2−q)(1−q) of the power-law ansatz.
#[no_mangle]
pub extern "C" fn gopt_root_polynomial(q: f64) -> f64 {
    radial::power_law_residual(q)
}

/// Residual of the third-order radial equation for f = r^(−q).
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn gopt_ode_residual_power_law(q: f64, r: f64, out: *mut f64) -> GoptStatus {
    if out.is_null() {
        return GoptStatus::NullArgument;
    }
    match radial::ode_residual(&RadialProfile::power_law(q), r) {
        Ok(v) => {
            *out = v;
            GoptStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
