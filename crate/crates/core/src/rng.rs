//! Seeded 64-bit linear congruential generator for reproducible sample points.
//!
//! The recurrence is fixed so that reports are reproducible across
//! implementations and languages:
//!
//!   x_{n+1} = 6364136223846793005 · x_n + 1442695040888963407   (mod 2⁶⁴)
//!
//! Uniform doubles take the top 53 bits of the state: u = (x >> 11) / 2⁵³.

#[derive(Clone, Debug)]
pub struct Lcg64 {
    state: u64,
}

const MULT: u64 = 6364136223846793005;
const INC: u64 = 1442695040888963407;

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULT).wrapping_add(INC);
        self.state
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform direction on the unit sphere.
    pub fn unit_vector(&mut self) -> [f64; 3] {
        let z = self.range(-1.0, 1.0);
        let phi = self.range(0.0, std::f64::consts::TAU);
        let s = (1.0 - z * z).max(0.0).sqrt();
        [s * phi.cos(), s * phi.sin(), z]
    }

    /// Point with uniform radius in [r_min, r_max) and uniform direction.
    pub fn point_in_shell(&mut self, r_min: f64, r_max: f64) -> [f64; 3] {
        let r = self.range(r_min, r_max);
        let u = self.unit_vector();
        [r * u[0], r * u[1], r * u[2]]
    }

    /// Point uniform in the cube [-half, half]³.
    pub fn point_in_box(&mut self, half: f64) -> [f64; 3] {
        [
            self.range(-half, half),
            self.range(-half, half),
            self.range(-half, half),
        ]
    }
}
