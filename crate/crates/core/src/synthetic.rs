//! Seeded synthetic configurations for identity sweeps.
//!
//! Quadratic polynomial potentials and near-identity frames with analytic
//! derivatives, generated from the reproducible LCG stream. These drive the
//! identity verification suite (metric compatibility, Bianchi, Ricci-lemma
//! round trip, curvature split) on generic smooth data, sampled inside the
//! unit box where the frames stay safely invertible.

use crate::field::MatrixField;
use crate::gauge::{ColorVectorField, GaugePotential};
use crate::rng::Lcg64;
use crate::tensor3::{mat3, Vec3};
use crate::transcribe::Dreibein;

/// Per-component quadratic c0 + c1·x + x·c2·x with analytic gradient.
#[derive(Clone, Copy)]
struct Quad {
    c0: f64,
    c1: [f64; 3],
    c2: [[f64; 3]; 3],
}

impl Quad {
    fn random(rng: &mut Lcg64, amplitude: f64) -> Self {
        let mut q = Quad {
            c0: rng.range(-amplitude, amplitude),
            c1: [0.0; 3],
            c2: [[0.0; 3]; 3],
        };
        for k in 0..3 {
            q.c1[k] = rng.range(-amplitude, amplitude) / 3.0;
        }
        for k in 0..3 {
            for l in k..3 {
                let c = rng.range(-amplitude, amplitude) / 6.0;
                q.c2[k][l] = c;
                q.c2[l][k] = c;
            }
        }
        q
    }

    fn eval(&self, x: Vec3) -> f64 {
        let mut v = self.c0;
        for k in 0..3 {
            v += self.c1[k] * x[k];
            for l in 0..3 {
                v += self.c2[k][l] * x[k] * x[l];
            }
        }
        v
    }

    fn grad(&self, x: Vec3, dir: usize) -> f64 {
        let mut d = self.c1[dir];
        for l in 0..3 {
            d += 2.0 * self.c2[dir][l] * x[l];
        }
        d
    }
}

fn quad_matrix_field(rng: &mut Lcg64, amplitude: f64, offset_identity: bool) -> MatrixField {
    let mut comps = [[Quad {
        c0: 0.0,
        c1: [0.0; 3],
        c2: [[0.0; 3]; 3],
    }; 3]; 3];
    for row in comps.iter_mut() {
        for q in row.iter_mut() {
            *q = Quad::random(rng, amplitude);
        }
    }
    let id = if offset_identity { 1.0 } else { 0.0 };
    let comps2 = comps;
    MatrixField::new(move |x| mat3(|a, i| comps2[a][i].eval(x) + if a == i { id } else { 0.0 }))
        .with_grad(move |x, dir| mat3(|a, i| comps2[a][i].grad(x, dir)))
}

/// Random quadratic potential with analytic derivatives.
pub fn random_potential(seed: u64, amplitude: f64) -> GaugePotential {
    let mut rng = Lcg64::new(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1));
    GaugePotential::new(
        format!("poly[{seed}]"),
        quad_matrix_field(&mut rng, amplitude, false),
    )
}

/// Random near-identity frame, invertible on the unit box for the default
/// amplitude (perturbation bounded by 3·amplitude there).
pub fn random_dreibein(seed: u64, amplitude: f64) -> Dreibein {
    let mut rng = Lcg64::new(seed.wrapping_mul(0xbf58476d1ce4e5b9).wrapping_add(2));
    Dreibein::new(quad_matrix_field(&mut rng, amplitude, true))
}

/// Random quadratic color-vector field (for Gauss-law sweeps).
pub fn random_color_field(seed: u64, amplitude: f64) -> ColorVectorField {
    let mut rng = Lcg64::new(seed.wrapping_mul(0x94d049bb133111eb).wrapping_add(3));
    ColorVectorField::new(quad_matrix_field(&mut rng, amplitude, false))
}

/// Default amplitudes used by the verification sweeps.
pub const POTENTIAL_AMPLITUDE: f64 = 0.4;
pub const FRAME_AMPLITUDE: f64 = 0.1;
