//! Smooth fields on 3-space.
//!
//! A field is a closure-backed evaluation map with an optional analytic
//! partial-derivative map and a set of declared singular loci. Numeric
//! differentiation is the 4th-order central stencil
//!
//!   ∂f ≈ (f(x−2h) − 8 f(x−h) + 8 f(x+h) − f(x+2h)) / (12 h)
//!
//! Loci are declared, not detected: evaluation requires a minimum clearance
//! of 10·h from every declared locus, so stencils of width 2h never come
//! near one. Composite fields (built from other fields) propagate domain
//! errors instead of producing silent garbage; a stencil point that lands in
//! another field's clearance band surfaces as a stencil error.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tensor3::{Linear, Vec3};

/// Default finite-difference step, in coordinate units.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Clearance from a singular locus required for evaluation, in FD steps.
pub const LOCUS_CLEARANCE_STEPS: f64 = 10.0;

#[derive(Clone, Debug)]
pub enum Exclusion {
    /// An excluded point (e.g. a field singular at the origin).
    Point(Vec3),
    /// An excluded sphere surface; both sides of it remain valid domain.
    Sphere { center: Vec3, radius: f64 },
}

impl Exclusion {
    fn distance(&self, x: Vec3) -> f64 {
        match self {
            Exclusion::Point(p) => {
                let d = [x[0] - p[0], x[1] - p[1], x[2] - p[2]];
                (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
            }
            Exclusion::Sphere { center, radius } => {
                let d = [x[0] - center[0], x[1] - center[1], x[2] - center[2]];
                ((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() - radius).abs()
            }
        }
    }
}

/// Declared singular loci of a field.
#[derive(Clone, Debug, Default)]
pub struct Domain {
    exclusions: Vec<Exclusion>,
}

impl Domain {
    pub fn unrestricted() -> Self {
        Domain::default()
    }

    pub fn excluding_point(p: Vec3) -> Self {
        Domain {
            exclusions: vec![Exclusion::Point(p)],
        }
    }

    pub fn excluding_sphere(center: Vec3, radius: f64) -> Self {
        Domain {
            exclusions: vec![Exclusion::Sphere { center, radius }],
        }
    }

    pub fn is_unrestricted(&self) -> bool {
        self.exclusions.is_empty()
    }

    /// Distance from x to the nearest declared locus (∞ when none).
    pub fn clearance(&self, x: Vec3) -> f64 {
        self.exclusions
            .iter()
            .map(|e| e.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn check(&self, x: Vec3, required: f64) -> Result<()> {
        let clearance = self.clearance(x);
        if clearance < required {
            Err(Error::SingularLocus {
                x,
                clearance,
                required,
            })
        } else {
            Ok(())
        }
    }

    /// Union of the exclusions of two domains.
    pub fn merged(&self, other: &Domain) -> Domain {
        let mut exclusions = self.exclusions.clone();
        exclusions.extend(other.exclusions.iter().cloned());
        Domain { exclusions }
    }
}

type EvalFn<T> = dyn Fn(Vec3) -> Result<T> + Send + Sync;
type GradFn<T> = dyn Fn(Vec3, usize) -> Result<T> + Send + Sync;

/// A smooth map from 3-space into a component container `T`.
///
/// Evaluation maps must be re-entrant; all methods take `&self` and the
/// field is safe to evaluate from several threads at once.
pub struct Field<T: Linear> {
    eval: Arc<EvalFn<T>>,
    grad: Option<Arc<GradFn<T>>>,
    step: f64,
    domain: Domain,
}

impl<T: Linear> Clone for Field<T> {
    fn clone(&self) -> Self {
        Field {
            eval: Arc::clone(&self.eval),
            grad: self.grad.as_ref().map(Arc::clone),
            step: self.step,
            domain: self.domain.clone(),
        }
    }
}

impl<T: Linear> Field<T> {
    pub fn new(eval: impl Fn(Vec3) -> T + Send + Sync + 'static) -> Self {
        Field::try_new(move |x| Ok(eval(x)))
    }

    /// Field backed by a fallible closure (composites over other fields).
    pub fn try_new(eval: impl Fn(Vec3) -> Result<T> + Send + Sync + 'static) -> Self {
        Field {
            eval: Arc::new(eval),
            grad: None,
            step: DEFAULT_FD_STEP,
            domain: Domain::unrestricted(),
        }
    }

    pub fn constant(value: T) -> Self {
        Field::new(move |_| value).with_grad(|_, _| T::zero())
    }

    /// Attach an analytic partial-derivative map (point, direction) → ∂f.
    pub fn with_grad(mut self, grad: impl Fn(Vec3, usize) -> T + Send + Sync + 'static) -> Self {
        self.grad = Some(Arc::new(move |x, dir| Ok(grad(x, dir))));
        self
    }

    pub fn try_with_grad(
        mut self,
        grad: impl Fn(Vec3, usize) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        self.grad = Some(Arc::new(grad));
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_step(mut self, step: f64) -> Self {
        assert!(step > 0.0, "FD step must be positive");
        self.step = step;
        self
    }

    /// Copy of this field with the analytic derivative stripped, forcing the
    /// finite-difference path.
    pub fn without_grad(&self) -> Self {
        let mut f = self.clone();
        f.grad = None;
        f
    }

    /// Pointwise scaling c·f, preserving domain, step, and analytic data.
    pub fn scaled(&self, c: f64) -> Self {
        let eval = Arc::clone(&self.eval);
        Field {
            eval: Arc::new(move |x| eval(x).map(|v| v.scale(c))),
            grad: self.grad.as_ref().map(|g| {
                let g = Arc::clone(g);
                Arc::new(move |x: Vec3, dir: usize| g(x, dir).map(|v| v.scale(c))) as Arc<GradFn<T>>
            }),
            step: self.step,
            domain: self.domain.clone(),
        }
    }

    pub fn has_grad(&self) -> bool {
        self.grad.is_some()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    fn required_clearance(&self) -> f64 {
        LOCUS_CLEARANCE_STEPS * self.step
    }

    /// Evaluate at x, enforcing locus clearance.
    pub fn at(&self, x: Vec3) -> Result<T> {
        self.domain.check(x, self.required_clearance())?;
        (self.eval)(x)
    }

    /// Partial derivative along coordinate `dir` (0..3).
    ///
    /// Uses the analytic map when present, otherwise the 4th-order central
    /// difference. The clearance policy guarantees stencil points of this
    /// field stay off its own loci; a stencil point rejected by an inner
    /// composite field surfaces as a stencil error.
    pub fn partial(&self, x: Vec3, dir: usize) -> Result<T> {
        assert!(dir < 3, "direction index out of range");
        self.domain.check(x, self.required_clearance())?;
        if let Some(grad) = &self.grad {
            return grad(x, dir);
        }
        let h = self.step;
        let shifted = |c: f64| -> Result<T> {
            let mut y = x;
            y[dir] += c * h;
            // own-locus floor only; full clearance was established at x
            self.domain
                .check(y, h)
                .map_err(|_| Error::StencilCrossesLocus { x })?;
            (self.eval)(y).map_err(|e| match e {
                Error::SingularLocus { .. } | Error::StencilCrossesLocus { .. } => {
                    Error::StencilCrossesLocus { x }
                }
                other => other,
            })
        };
        let fm2 = shifted(-2.0)?;
        let fm1 = shifted(-1.0)?;
        let fp1 = shifted(1.0)?;
        let fp2 = shifted(2.0)?;
        let mut acc = T::zero();
        acc = acc.add_scaled(1.0, &fm2);
        acc = acc.add_scaled(-8.0, &fm1);
        acc = acc.add_scaled(8.0, &fp1);
        acc = acc.add_scaled(-1.0, &fp2);
        Ok(acc.scale(1.0 / (12.0 * h)))
    }

    /// All three partials at once.
    pub fn partials(&self, x: Vec3) -> Result<[T; 3]> {
        Ok([
            self.partial(x, 0)?,
            self.partial(x, 1)?,
            self.partial(x, 2)?,
        ])
    }
}

pub type ScalarField = Field<f64>;
pub type VectorField = Field<Vec3>;
pub type MatrixField = Field<crate::tensor3::Mat3>;
pub type Rank3Field = Field<crate::tensor3::Rank3>;
