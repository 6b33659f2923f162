//! Geometric probes: geodesics with torsion force terms, isospin transport,
//! and fixed-step integration with conserved-quantity monitoring.
//!
//! The affine parameter is dimensionless and carries no physics; trajectories
//! are geometric probes, not kinematics. Probe forms:
//!
//!   geodesic:            dv^i/ds = −Γ̊^i_{jk} v^j v^k + T_{jk}{}^i v^j v^k
//!   charge precession:   dI^a/ds = −ε^a_{bc} A^b_k I^c v^k
//!   generalized Lorentz: dv^i/ds = ½ I^s_r R^r_s{}^{ij} v_j
//!
//! The geodesic form is self-parallel transport by the full transcribed
//! connection (the symmetric contorsion contribution is the torsion force),
//! and the precession transcribes to parallel transport of the space-side
//! isospin I^i = h^i_a I^a by the same connection. Transporting both v and I
//! that way conserves |v|²_g, |I|², and I·v exactly; the Lorentz form
//! conserves |I|² and the flat-metric |v|² but not I·v.
//!
//! The mixed-tensor isospin in the Lorentz form is fixed by the same
//! dualization as the spin connection: I^s_r = h^s_a ε^a_{bc} I^b h^c_r.
//!
//! Integration is classical fixed-step RK4 (halving the step cuts
//! conserved-quantity drift by ≈ 16×). A trajectory stops early, with an
//! explicit reason, when it comes within 10 steps of a declared singular
//! locus; there is no extrapolation through energy barriers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{MatrixField, Rank3Field};
use crate::gauge::{magnetic_field, GaugePotential};
use crate::optics::OpticalMedium;
use crate::tensor3::{
    identity, inv3, levi_civita, mat3, rank3, rank4, sum1, sum2, vec3, Linear, Mat3, Vec3,
};
use crate::transcribe::{christoffel_field, torsion_field, transcribed_connection_field, Dreibein};

/// Probe state: position, affine-parameter tangent, isospin.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PhaseState {
    pub x: Vec3,
    pub v: Vec3,
    pub i: Vec3,
}

impl PhaseState {
    pub fn new(x: Vec3, v: Vec3, i: Vec3) -> Self {
        PhaseState { x, v, i }
    }

    pub fn geodesic(x: Vec3, v: Vec3) -> Self {
        PhaseState { x, v, i: [0.0; 3] }
    }

    fn add_scaled(&self, c: f64, d: &PhaseDeriv) -> PhaseState {
        PhaseState {
            x: self.x.add_scaled(c, &d.dx),
            v: self.v.add_scaled(c, &d.dv),
            i: self.i.add_scaled(c, &d.di),
        }
    }

    fn is_finite(&self) -> bool {
        Linear::is_finite(&self.x) && Linear::is_finite(&self.v) && Linear::is_finite(&self.i)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PhaseDeriv {
    pub dx: Vec3,
    pub dv: Vec3,
    pub di: Vec3,
}

impl PhaseDeriv {
    fn zero() -> Self {
        PhaseDeriv {
            dx: [0.0; 3],
            dv: [0.0; 3],
            di: [0.0; 3],
        }
    }

    fn add_scaled(&self, c: f64, o: &PhaseDeriv) -> PhaseDeriv {
        PhaseDeriv {
            dx: self.dx.add_scaled(c, &o.dx),
            dv: self.dv.add_scaled(c, &o.dv),
            di: self.di.add_scaled(c, &o.di),
        }
    }
}

/// Why an integration ended.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Termination {
    SpanComplete,
    SingularLocus { s: f64 },
    DomainExit { s: f64 },
}

impl Termination {
    pub fn label(&self) -> &'static str {
        match self {
            Termination::SpanComplete => "span complete",
            Termination::SingularLocus { .. } => "singular locus",
            Termination::DomainExit { .. } => "domain exit",
        }
    }
}

impl Serialize for Termination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrajectorySample {
    pub s: f64,
    #[serde(flatten)]
    pub state: PhaseState,
}

/// Ordered samples of one integrated probe.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub step: f64,
    pub termination: Termination,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectory has initial sample")
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// A probe system: right-hand side plus the geometric context needed for
/// domain checks and conserved-quantity monitoring.
pub trait PhaseSystem {
    fn rhs(&self, state: &PhaseState) -> Result<PhaseDeriv>;

    /// Distance from x to the nearest declared singular locus (∞ when none).
    fn clearance(&self, _x: Vec3) -> f64 {
        f64::INFINITY
    }

    fn metric_at(&self, _x: Vec3) -> Result<Mat3> {
        Ok(identity())
    }

    /// Space-side isospin I^i = h^i_a I^a (identity map by default).
    fn isospin_space(&self, _x: Vec3, i: Vec3) -> Result<Vec3> {
        Ok(i)
    }
}

/// Geodesic flow of a medium or connection, with optional torsion force.
pub struct GeodesicSystem {
    christoffel: Rank3Field,
    torsion: Option<Rank3Field>,
    metric: MatrixField,
}

impl GeodesicSystem {
    pub fn from_medium(medium: &OpticalMedium) -> Self {
        GeodesicSystem {
            christoffel: medium.christoffel_field(),
            torsion: None,
            metric: medium.metric_field().clone(),
        }
    }

    /// Levi-Civita flow of a bare metric field.
    pub fn from_metric(g: MatrixField) -> Self {
        GeodesicSystem {
            christoffel: christoffel_field(&g),
            torsion: None,
            metric: g,
        }
    }

    /// Flow of a metric-compatible connection with torsion: the force term
    /// T_{jk}{}^i v^j v^k makes self-parallel curves deviate from
    /// shortest-length ones.
    pub fn from_connection(g: MatrixField, conn: &Rank3Field) -> Self {
        GeodesicSystem {
            christoffel: christoffel_field(&g),
            torsion: Some(torsion_field(conn)),
            metric: g,
        }
    }
}

impl PhaseSystem for GeodesicSystem {
    fn rhs(&self, state: &PhaseState) -> Result<PhaseDeriv> {
        let x = state.x;
        let v = state.v;
        let gamma0 = self.christoffel.at(x)?;
        let mut dv = vec3(|i| -sum2(|j, k| gamma0[i][j][k] * v[j] * v[k]));
        if let Some(t) = &self.torsion {
            let tv = t.at(x)?;
            let g = self.metric.at(x)?;
            let ginv = inv3(g)?;
            // T_{jk}{}^i v^j v^k, indices moved by g
            let lowered = rank3(|a, b, c| sum1(|m| g[a][m] * tv[m][b][c]));
            let force =
                vec3(|i| sum2(|j, k| sum1(|m| ginv[i][m] * lowered[j][k][m]) * v[j] * v[k]));
            dv = dv.add_scaled(1.0, &force);
        }
        Ok(PhaseDeriv {
            dx: v,
            dv,
            di: [0.0; 3],
        })
    }

    fn clearance(&self, x: Vec3) -> f64 {
        self.metric.domain().clearance(x)
    }

    fn metric_at(&self, x: Vec3) -> Result<Mat3> {
        self.metric.at(x)
    }
}

/// Velocity force law for an isospin-carrying probe.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WongForce {
    /// Generalized Lorentz force dv^i/ds = ½ I^s_r R^r_s{}^{ij} v_j.
    Lorentz,
    /// Self-parallel transport by the full transcribed connection,
    /// dv^i/ds = −Γ^i_{jk} v^j v^k; together with precession this conserves
    /// |v|²_g, |I|², and I·v exactly.
    ParallelTransport,
}

/// Isospin probe in a gauge configuration transcribed through a frame.
pub struct WongSystem {
    potential: GaugePotential,
    frame: Dreibein,
    connection: Rank3Field,
    metric: MatrixField,
    force: WongForce,
}

impl WongSystem {
    pub fn new(potential: GaugePotential, frame: Dreibein, force: WongForce) -> Self {
        let connection = transcribed_connection_field(&potential, &frame);
        let metric = frame.metric_field();
        WongSystem {
            potential,
            frame,
            connection,
            metric,
            force,
        }
    }

    /// Lorentz-force probe on the flat ambient frame.
    pub fn lorentz(potential: GaugePotential) -> Self {
        WongSystem::new(potential, Dreibein::trivial(), WongForce::Lorentz)
    }

    /// Parallel-transport probe on the flat ambient frame.
    pub fn parallel(potential: GaugePotential) -> Self {
        WongSystem::new(potential, Dreibein::trivial(), WongForce::ParallelTransport)
    }

    /// dI^a/ds = −ε^a_{bc} A^b_k I^c v^k.
    fn precession(&self, state: &PhaseState) -> Result<Vec3> {
        let a = self.potential.at(state.x)?;
        Ok(vec3(|ai| {
            -sum2(|b, c| levi_civita(ai, b, c) * sum1(|k| a[b][k] * state.i[c] * state.v[k]))
        }))
    }

    fn lorentz_force(&self, state: &PhaseState) -> Result<Vec3> {
        let x = state.x;
        let b = magnetic_field(&self.potential, x)?;
        let h = self.frame.at(x)?;
        let hinv = self.frame.inverse_at(x)?;
        let g = self.metric.at(x)?;
        let ginv = inv3(g)?;

        // frame-side curvature R^a_{bij} = ε^a_{cb} ε_{ijk} B^{ck}
        let r_frame = rank4(|a, bb, i, j| {
            sum2(|c, k| levi_civita(a, c, bb) * levi_civita(i, j, k) * b[c][k])
        });
        // space-side R^r_{sij} = h_a^r h^b_s R^a_{bij}
        let r_space =
            rank4(|r, s, i, j| sum2(|a, bb| hinv[r][a] * h[bb][s] * r_frame[a][bb][i][j]));
        // I^s_r = h^s_a ε^a_{bc} I^b h^c_r
        let imix = mat3(|s, r| {
            sum1(|a| hinv[s][a] * sum2(|bb, c| levi_civita(a, bb, c) * state.i[bb] * h[c][r]))
        });
        let vlow = vec3(|j| sum1(|k| g[j][k] * state.v[k]));
        Ok(vec3(|i| {
            0.5 * sum2(|s, r| {
                imix[s][r]
                    * sum2(|m, j| r_space[r][s][m][j] * ginv[m][i] * sum1(|n| ginv[j][n] * vlow[n]))
            })
        }))
    }
}

impl PhaseSystem for WongSystem {
    fn rhs(&self, state: &PhaseState) -> Result<PhaseDeriv> {
        let dv = match self.force {
            WongForce::Lorentz => self.lorentz_force(state)?,
            WongForce::ParallelTransport => {
                let gamma = self.connection.at(state.x)?;
                vec3(|i| -sum2(|j, k| gamma[i][j][k] * state.v[j] * state.v[k]))
            }
        };
        Ok(PhaseDeriv {
            dx: state.v,
            dv,
            di: self.precession(state)?,
        })
    }

    fn clearance(&self, x: Vec3) -> f64 {
        self.potential
            .domain()
            .clearance(x)
            .min(self.frame.domain().clearance(x))
    }

    fn metric_at(&self, x: Vec3) -> Result<Mat3> {
        self.metric.at(x)
    }

    fn isospin_space(&self, x: Vec3, i: Vec3) -> Result<Vec3> {
        let hinv = self.frame.inverse_at(x)?;
        Ok(vec3(|idx| sum1(|a| hinv[idx][a] * i[a])))
    }
}

/// Geodesic flow of a medium with isospin precession in a gauge potential
/// along the curve (the "charged probe along a geodesic" configuration).
pub struct GeodesicWithPrecession {
    pub geodesic: GeodesicSystem,
    pub potential: GaugePotential,
    pub frame: Dreibein,
}

impl PhaseSystem for GeodesicWithPrecession {
    fn rhs(&self, state: &PhaseState) -> Result<PhaseDeriv> {
        let base = self.geodesic.rhs(state)?;
        let a = self.potential.at(state.x)?;
        let di = vec3(|ai| {
            -sum2(|b, c| levi_civita(ai, b, c) * sum1(|k| a[b][k] * state.i[c] * state.v[k]))
        });
        Ok(PhaseDeriv {
            dx: base.dx,
            dv: base.dv,
            di,
        })
    }

    fn clearance(&self, x: Vec3) -> f64 {
        self.geodesic
            .clearance(x)
            .min(self.potential.domain().clearance(x))
    }

    fn metric_at(&self, x: Vec3) -> Result<Mat3> {
        self.geodesic.metric_at(x)
    }

    fn isospin_space(&self, x: Vec3, i: Vec3) -> Result<Vec3> {
        let hinv = self.frame.inverse_at(x)?;
        Ok(vec3(|idx| sum1(|a| hinv[idx][a] * i[a])))
    }
}

/// Integration options beyond the basic span/step contract.
#[derive(Clone, Copy, Debug, Default)]
pub struct TraceOptions {
    /// Terminate with a domain-exit reason when |x| exceeds this radius.
    pub exit_radius: Option<f64>,
}

/// Classical fixed-step 4th-order Runge-Kutta integration.
///
/// Stops early with an explicit reason when the state comes within 10 steps
/// of a declared singular locus or leaves the configured region; a
/// non-finite state is an error carrying the partial trajectory.
pub fn integrate(
    system: &impl PhaseSystem,
    state0: PhaseState,
    span: (f64, f64),
    step: f64,
) -> Result<Trajectory> {
    integrate_with(system, state0, span, step, &TraceOptions::default())
}

pub fn integrate_with(
    system: &impl PhaseSystem,
    state0: PhaseState,
    span: (f64, f64),
    step: f64,
    options: &TraceOptions,
) -> Result<Trajectory> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "step must be positive (got {step})"
        )));
    }
    let (s_start, s_end) = span;
    if !s_start.is_finite() || !s_end.is_finite() || s_end <= s_start {
        return Err(Error::InvalidArgument(format!(
            "span must be finite and increasing (got [{s_start}, {s_end}])"
        )));
    }

    let guard = 10.0 * step;
    let n_steps = ((s_end - s_start) / step).ceil() as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut state = state0;
    let mut s = s_start;
    samples.push(TrajectorySample { s, state });

    let finish = |samples: Vec<TrajectorySample>, termination| {
        Ok(Trajectory {
            samples,
            step,
            termination,
        })
    };

    loop {
        if s >= s_end - 1e-12 * (s_end - s_start) {
            return finish(samples, Termination::SpanComplete);
        }
        if system.clearance(state.x) < guard {
            return finish(samples, Termination::SingularLocus { s });
        }
        if let Some(r_exit) = options.exit_radius {
            if crate::tensor3::norm(state.x) > r_exit {
                return finish(samples, Termination::DomainExit { s });
            }
        }

        let h = step.min(s_end - s);
        let next = match rk4_step(system, &state, h) {
            Ok(next) => next,
            // a domain violation inside a stage counts as locus approach
            Err(e) if e.is_domain() => {
                return finish(samples, Termination::SingularLocus { s });
            }
            Err(e) => return Err(e),
        };
        if !next.is_finite() {
            // the partial trajectory rides inside the error; its termination
            // field is a placeholder (the abort reason is the error itself)
            let partial = Trajectory {
                samples,
                step,
                termination: Termination::SpanComplete,
            };
            return Err(Error::NonFiniteState {
                s,
                partial: Box::new(partial),
            });
        }
        state = next;
        s += h;
        samples.push(TrajectorySample { s, state });
    }
}

fn rk4_step(system: &impl PhaseSystem, state: &PhaseState, h: f64) -> Result<PhaseState> {
    let k1 = system.rhs(state)?;
    let k2 = system.rhs(&state.add_scaled(0.5 * h, &k1))?;
    let k3 = system.rhs(&state.add_scaled(0.5 * h, &k2))?;
    let k4 = system.rhs(&state.add_scaled(h, &k3))?;
    let mut blend = PhaseDeriv::zero();
    blend = blend.add_scaled(1.0, &k1);
    blend = blend.add_scaled(2.0, &k2);
    blend = blend.add_scaled(2.0, &k3);
    blend = blend.add_scaled(1.0, &k4);
    Ok(state.add_scaled(h / 6.0, &blend))
}

/// Maximum relative drifts of the monitored quantities over a trajectory.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConservedDrifts {
    /// |I|² against its initial value.
    pub isospin_norm: f64,
    /// Metric norm g_ij v^i v^j against its initial value.
    pub velocity_norm: f64,
    /// g_ij I^i v^j, normalized by the initial |I|_g |v|_g scale.
    pub isospin_velocity: f64,
}

/// Drift report for a trajectory under the system that produced it.
pub fn conserved_report(
    trajectory: &Trajectory,
    system: &impl PhaseSystem,
) -> Result<ConservedDrifts> {
    if trajectory.samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let quantities = |sample: &TrajectorySample| -> Result<(f64, f64, f64)> {
        let st = &sample.state;
        let g = system.metric_at(st.x)?;
        let i_space = system.isospin_space(st.x, st.i)?;
        let i2: f64 = sum1(|a| st.i[a] * st.i[a]);
        let v2 = sum2(|i, j| g[i][j] * st.v[i] * st.v[j]);
        let iv = sum2(|i, j| g[i][j] * i_space[i] * st.v[j]);
        Ok((i2, v2, iv))
    };
    let (i2_0, v2_0, iv_0) = quantities(&trajectory.samples[0])?;
    let iv_scale = (i2_0.abs() * v2_0.abs()).sqrt().max(f64::MIN_POSITIVE);
    let mut drifts = ConservedDrifts {
        isospin_norm: 0.0,
        velocity_norm: 0.0,
        isospin_velocity: 0.0,
    };
    for sample in &trajectory.samples[1..] {
        let (i2, v2, iv) = quantities(sample)?;
        drifts.isospin_norm = drifts
            .isospin_norm
            .max((i2 - i2_0).abs() / i2_0.abs().max(f64::MIN_POSITIVE));
        drifts.velocity_norm = drifts
            .velocity_norm
            .max((v2 - v2_0).abs() / v2_0.abs().max(f64::MIN_POSITIVE));
        drifts.isospin_velocity = drifts.isospin_velocity.max((iv - iv_0).abs() / iv_scale);
    }
    Ok(drifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics;
    use crate::radial;
    use crate::tensor3::{cross, dot, norm};

    #[test]
    fn flat_medium_straight_lines() {
        let sys = GeodesicSystem::from_medium(&optics::OpticalMedium::euclidean());
        let state = PhaseState::geodesic([0.5, -1.0, 2.0], [1.0, 0.0, 0.0]);
        let traj = integrate(&sys, state, (0.0, 1.0), 1e-2).unwrap();
        assert_eq!(traj.termination, Termination::SpanComplete);
        let end = traj.last().state;
        assert!((end.x[0] - 1.5).abs() < 1e-12);
        assert!((end.x[1] + 1.0).abs() < 1e-12);
        let drifts = conserved_report(&traj, &sys).unwrap();
        assert_eq!(drifts.velocity_norm, 0.0);

        // s strictly increasing, position jumps bounded by step · max |v|
        for pair in traj.samples.windows(2) {
            assert!(pair[1].s > pair[0].s);
            let jump = norm(pair[1].state.x.add_scaled(-1.0, &pair[0].state.x));
            assert!(jump <= traj.step * 1.0 * (1.0 + 1e-12), "jump {jump}");
        }
    }

    #[test]
    fn fisheye_flow_preserves_metric_norm() {
        let medium = optics::OpticalMedium::fish_eye();
        let sys = GeodesicSystem::from_medium(&medium);
        // unit g-speed launch from r = 1
        let x0 = [1.0, 0.0, 0.0];
        let n0 = medium.index_at(x0).unwrap();
        let state = PhaseState::geodesic(x0, [0.0, 1.0 / n0, 0.0]);
        let traj = integrate(&sys, state, (0.0, 2.0), 1e-3).unwrap();
        let drifts = conserved_report(&traj, &sys).unwrap();
        assert!(
            drifts.velocity_norm < 2.0 * 1e-7,
            "|v|_g drift {} over 2 affine units",
            drifts.velocity_norm
        );
    }

    #[test]
    fn geodesic_rhs_equals_full_connection_transport() {
        // dv = −Γ̊vv + Tvv is self-parallel transport by the full Γ
        let a = radial::wu_yang_monopole();
        let h = Dreibein::trivial();
        let conn = transcribed_connection_field(&a, &h);
        let g = h.metric_field();
        let sys = GeodesicSystem::from_connection(g, &conn);

        let state = PhaseState::geodesic([1.2, -0.4, 0.8], [0.3, 0.9, -0.2]);
        let d = sys.rhs(&state).unwrap();
        let gamma = conn.at(state.x).unwrap();
        let direct = vec3(|i| -sum2(|j, k| gamma[i][j][k] * state.v[j] * state.v[k]));
        let dev = d.dv.add_scaled(-1.0, &direct);
        assert!(
            Linear::max_abs(&dev) < 1e-9,
            "dev {}",
            Linear::max_abs(&dev)
        );
    }

    #[test]
    fn torsion_force_sample_value() {
        // regression for the symmetric torsion contribution: monopole
        // through the trivial frame at a fixed state
        let a = radial::wu_yang_monopole();
        let h = Dreibein::trivial();
        let conn = transcribed_connection_field(&a, &h);
        let g = h.metric_field();
        let sys_full = GeodesicSystem::from_connection(g.clone(), &conn);
        let sys_metric = GeodesicSystem::from_metric(g);

        let state = PhaseState::geodesic([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let full = sys_full.rhs(&state).unwrap().dv;
        let metric_only = sys_metric.rhs(&state).unwrap().dv;
        let force = full.add_scaled(-1.0, &metric_only);

        // independent contraction oracle: with g = δ the lowered torsion is
        // the stored tensor, so T_{jk}{}^i v^j v^k = Σ T^j_{ki} v^j v^k
        let gamma = conn.at(state.x).unwrap();
        let torsion = rank3(|k, i, j| -(gamma[k][i][j] - gamma[k][j][i]));
        let oracle = vec3(|i| sum2(|j, k| torsion[j][k][i] * state.v[j] * state.v[k]));
        let dev = force.add_scaled(-1.0, &oracle);
        assert!(
            Linear::max_abs(&dev) < 1e-9,
            "force {force:?} vs oracle {oracle:?}"
        );
        // frozen value: at this state the torsion force is (−1, 0, 0)
        assert!(
            Linear::max_abs(&force.add_scaled(-1.0, &[-1.0, 0.0, 0.0])) < 1e-9,
            "force {force:?}"
        );
    }

    #[test]
    fn wong_zero_potential_is_free_motion() {
        let sys = WongSystem::lorentz(GaugePotential::zero());
        let state = PhaseState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
        let d = sys.rhs(&state).unwrap();
        assert_eq!(Linear::max_abs(&d.dv), 0.0);
        assert_eq!(Linear::max_abs(&d.di), 0.0);
    }

    #[test]
    fn precession_conserves_isospin_norm() {
        let sys = WongSystem::lorentz(radial::wu_yang_monopole());
        let state = PhaseState::new([2.0, 0.0, 0.0], [0.0, 0.6, 0.3], [0.5, -0.4, 0.8]);
        let traj = integrate(&sys, state, (0.0, 2.0), 1e-3).unwrap();
        let drifts = conserved_report(&traj, &sys).unwrap();
        assert!(
            drifts.isospin_norm < 1e-9,
            "|I|² drift {}",
            drifts.isospin_norm
        );
        assert!(
            drifts.velocity_norm < 1e-9,
            "|v|² drift {}",
            drifts.velocity_norm
        );
    }

    #[test]
    fn parallel_probe_conserves_all_three() {
        let sys = WongSystem::parallel(radial::wu_yang_monopole());
        let state = PhaseState::new([2.0, 0.0, 0.0], [0.0, 0.7, 0.2], [0.3, -1.0, 0.7]);
        let traj = integrate(&sys, state, (0.0, 2.0), 1e-3).unwrap();
        let drifts = conserved_report(&traj, &sys).unwrap();
        assert!(drifts.isospin_norm < 1e-10, "{drifts:?}");
        assert!(drifts.velocity_norm < 1e-10, "{drifts:?}");
        assert!(drifts.isospin_velocity < 1e-10, "{drifts:?}");
    }

    #[test]
    fn lorentz_force_flat_frame_reduction() {
        // with the trivial frame the velocity force reduces to
        // dv^i = −I_c ε^{ijk} B^c_k v_j; at x = (1,0,0) the monopole has
        // B⁰₀ = −1 only, so I = e₀, v = e₁ gives dv = (0, 0, −1)
        let sys = WongSystem::lorentz(radial::wu_yang_monopole());
        let state = PhaseState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]);
        let d = sys.rhs(&state).unwrap();
        let dev = d.dv.add_scaled(-1.0, &[0.0, 0.0, -1.0]);
        assert!(Linear::max_abs(&dev) < 1e-12, "dv = {:?}", d.dv);

        // and against the contraction oracle at a generic state
        let state = PhaseState::new([0.9, -0.4, 1.2], [0.3, 0.8, -0.1], [0.5, 0.2, -0.7]);
        let d = sys.rhs(&state).unwrap();
        let b = magnetic_field(&radial::wu_yang_monopole(), state.x).unwrap();
        let oracle = vec3(|i| {
            -sum2(|c, j| state.i[c] * sum1(|k| levi_civita(i, j, k) * b[c][k]) * state.v[j])
        });
        let dev = d.dv.add_scaled(-1.0, &oracle);
        assert!(
            Linear::max_abs(&dev) < 1e-12,
            "dv {:?} vs {:?}",
            d.dv,
            oracle
        );
    }

    #[test]
    fn lorentz_force_is_orthogonal_to_velocity() {
        let sys = WongSystem::lorentz(radial::wu_yang_monopole());
        let state = PhaseState::new([1.3, 0.4, -0.8], [0.2, -0.5, 0.9], [1.0, 0.3, -0.2]);
        let d = sys.rhs(&state).unwrap();
        assert!(dot(d.dv, state.v).abs() < 1e-12);
        // and the precession is orthogonal to I
        assert!(dot(d.di, state.i).abs() < 1e-12);
    }

    #[test]
    fn step_halving_reduces_drift_sixteen_fold() {
        // run the order check on the Lorentz probe, whose invariant drift is
        // a clean h⁴ (the parallel-transport probe's norm errors
        // superconverge at h⁵ and halve by ~32 instead)
        let sys = WongSystem::lorentz(radial::wu_yang_monopole());
        let state = PhaseState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.3], [0.8, -0.5, 0.4]);
        let drift_at = |h: f64| {
            let traj = integrate(&sys, state, (0.0, 5.0), h).unwrap();
            conserved_report(&traj, &sys).unwrap().isospin_norm
        };
        let d1 = drift_at(0.02);
        let d2 = drift_at(0.01);
        let ratio = d1 / d2;
        assert!(
            (11.0..=21.0).contains(&ratio),
            "drift ratio {ratio} (d1={d1:.3e}, d2={d2:.3e})"
        );
    }

    #[test]
    fn singular_locus_stops_integration() {
        // aim a ray straight at the monopole's origin
        let sys = WongSystem::parallel(radial::wu_yang_monopole());
        let state = PhaseState::new([1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]);
        let traj = integrate(&sys, state, (0.0, 5.0), 1e-3).unwrap();
        match traj.termination {
            Termination::SingularLocus { s } => assert!(s < 1.1, "stopped at s = {s}"),
            other => panic!("expected singular-locus stop, got {other:?}"),
        }
        // every sample keeps the 10-step clearance
        for sample in &traj.samples {
            assert!(norm(sample.state.x) >= 10.0 * traj.step - 1e-12);
        }
    }

    #[test]
    fn finite_time_blowup_is_an_error_with_partial_trajectory() {
        struct Blowup;
        impl PhaseSystem for Blowup {
            fn rhs(&self, state: &PhaseState) -> crate::error::Result<PhaseDeriv> {
                let v2 = dot(state.v, state.v);
                Ok(PhaseDeriv {
                    dx: state.v,
                    dv: state.v.scale(v2),
                    di: [0.0; 3],
                })
            }
        }
        let state = PhaseState::geodesic([0.0; 3], [10.0, 0.0, 0.0]);
        match integrate(&Blowup, state, (0.0, 1.0), 1e-2) {
            Err(crate::error::Error::NonFiniteState { s, partial }) => {
                assert!(s < 1.0);
                assert!(!partial.samples.is_empty());
                assert!(partial.samples.iter().all(|smp| smp.state.is_finite()));
            }
            other => panic!("expected NonFiniteState, got {other:?}"),
        }
    }

    #[test]
    fn domain_exit_reason() {
        let sys = GeodesicSystem::from_medium(&optics::OpticalMedium::euclidean());
        let state = PhaseState::geodesic([0.0; 3], [1.0, 0.0, 0.0]);
        let traj = integrate_with(
            &sys,
            state,
            (0.0, 10.0),
            1e-2,
            &TraceOptions {
                exit_radius: Some(2.0),
            },
        )
        .unwrap();
        assert!(matches!(traj.termination, Termination::DomainExit { .. }));
    }

    #[test]
    fn precession_along_geodesic_keeps_isospin_component() {
        // I = k v stays k v under joint transport on a torsionless medium
        let medium = optics::OpticalMedium::fish_eye();
        let a = medium.gauge_potential().unwrap();
        let h = medium.frame().unwrap();
        let sys = GeodesicWithPrecession {
            geodesic: GeodesicSystem::from_medium(&medium),
            potential: a,
            frame: h,
        };
        let x0 = [1.0, 0.0, 0.0];
        let v0 = [0.0, 2.0, 0.0];
        let k = 0.7;
        // I^a = k h^a_i v^i at launch
        let hv = sys.frame.at(x0).unwrap();
        let i0 = vec3(|a| k * sum1(|i| hv[a][i] * v0[i]));
        let state = PhaseState::new(x0, v0, i0);
        let traj = integrate(&sys, state, (0.0, 2.0), 1e-3).unwrap();
        let mut worst: f64 = 0.0;
        for sample in &traj.samples {
            let i_space = sys.isospin_space(sample.state.x, sample.state.i).unwrap();
            let dev = i_space.add_scaled(-k, &sample.state.v);
            worst = worst.max(Linear::max_abs(&dev));
        }
        assert!(worst < 1e-8, "max |I_space − k v| = {worst}");
        let drifts = conserved_report(&traj, &sys).unwrap();
        assert!(drifts.isospin_velocity < 1e-9, "{drifts:?}");
    }

    #[test]
    fn cross_product_orientation() {
        assert_eq!(cross([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), [0.0, 0.0, 1.0]);
    }
}
