#ifndef GAUGE_OPTICS_H
#define GAUGE_OPTICS_H

/* Generated by cbindgen from gauge-optics-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum GoptStatus {
  GOPT_STATUS_OK = 0,
  GOPT_STATUS_NULL_ARGUMENT = 1,
  GOPT_STATUS_INVALID_ARGUMENT = 2,
  // Evaluation hit a declared singular locus or a singular matrix.
  GOPT_STATUS_DOMAIN_ERROR = 3,
  GOPT_STATUS_NON_FINITE = 4,
} GoptStatus;

// Built-in media selectable through the C surface.
typedef enum GoptMediumKind {
  GOPT_MEDIUM_KIND_EUCLIDEAN = 0,
  // Unit-sphere stereographic medium, n = 4/(4+r²).
  GOPT_MEDIUM_KIND_FISH_EYE = 1,
  // Textbook fish-eye, n = 1/(1+r²).
  GOPT_MEDIUM_KIND_FISH_EYE_TEXTBOOK = 2,
  // Hyperboloid stereographic medium inside the ball r < 2.
  GOPT_MEDIUM_KIND_POINCARE_BALL = 3,
  // Same metric on the exterior r > 2.
  GOPT_MEDIUM_KIND_POINCARE_BALL_EXTERIOR = 4,
  // Textbook hyperbolic index, n = 1/(1−r²).
  GOPT_MEDIUM_KIND_HYPERBOLIC_TEXTBOOK = 5,
} GoptMediumKind;

// Why a trace ended.
typedef enum GoptTermination {
  GOPT_TERMINATION_SPAN_COMPLETE = 0,
  GOPT_TERMINATION_SINGULAR_LOCUS = 1,
  GOPT_TERMINATION_DOMAIN_EXIT = 2,
} GoptTermination;

// Opaque gauge configuration handle.
typedef struct GoptField GoptField;

// Opaque medium handle.
typedef struct GoptMedium GoptMedium;

// Opaque trajectory handle (samples plus drift report).
typedef struct GoptTrajectory GoptTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Stable, NUL-terminated name for a status code.
const char *gopt_status_name(enum GoptStatus status);

// The monopole configuration A^a_j = ε^a_{jk} x^k / r².
struct GoptField *gopt_field_monopole(void);

// Radial power-law ansatz potential A^a_j = q ε^a_{jk} x^k / r².
struct GoptField *gopt_field_power_law(double q);

struct GoptField *gopt_field_zero(void);

// The conformal potential a medium absorbs (NULL for non-isotropic media).
//
// # Safety
// `medium` must be a live handle from `gopt_medium_new` or NULL.
struct GoptField *gopt_field_from_medium(const struct GoptMedium *medium);

// # Safety
// `field` must be a handle returned by a `gopt_field_*` constructor, not
// yet freed; NULL is ignored.
void gopt_field_free(struct GoptField *field);

// Magnetic field B^{ai} at a point, written row-major into `out[9]`.
//
// # Safety
// `field` must be a live field handle; `xyz` must point to 3 readable
// doubles and `out` to 9 writable doubles.
enum GoptStatus gopt_field_magnetic(const struct GoptField *field, const double *xyz, double *out);

// Max-abs residual of the static sourceless field equation at a point.
//
// # Safety
// `field` must be a live field handle; `xyz` 3 readable and `out` 1
// writable double.
enum GoptStatus gopt_field_equation_residual(const struct GoptField *field,
                                             const double *xyz,
                                             double *out);

// Energy density ½ Σ (B^a_i)² of the static configuration at a point.
//
// # Safety
// `field` must be a live field handle; `xyz` 3 readable and `out` 1
// writable double.
enum GoptStatus gopt_field_energy_density(const struct GoptField *field,
                                          const double *xyz,
                                          double *out);

struct GoptMedium *gopt_medium_new(enum GoptMediumKind kind);

// # Safety
// `medium` must be a handle returned by `gopt_medium_new`, not yet freed;
// NULL is ignored.
void gopt_medium_free(struct GoptMedium *medium);

// Refractive index at a point.
//
// # Safety
// `medium` must be a live medium handle; `xyz` 3 readable and `out` 1
// writable double.
enum GoptStatus gopt_medium_index(const struct GoptMedium *medium, const double *xyz, double *out);

// Ricci scalar of the medium's Levi-Civita connection at a point.
//
// # Safety
// `medium` must be a live medium handle; `xyz` 3 readable and `out` 1
// writable double.
enum GoptStatus gopt_medium_scalar_curvature(const struct GoptMedium *medium,
                                             const double *xyz,
                                             double *out);

// Max-abs residual of the curved sourceless field equation for the
// medium's own Christoffel connection.
//
// # Safety
// `medium` must be a live medium handle; `xyz` 3 readable and `out` 1
// writable double.
enum GoptStatus gopt_medium_field_equation_residual(const struct GoptMedium *medium,
                                                    const double *xyz,
                                                    double *out);

// Integrate a geodesic of a medium with fixed-step RK4 from s = 0 to
// `s_end`; the new trajectory handle is written to `out`.
//
// # Safety
// `medium` must be a live medium handle; `x0`, `v0` must point to 3
// readable doubles each; `out` must be a writable handle slot.
enum GoptStatus gopt_trace_geodesic(const struct GoptMedium *medium,
                                    const double *x0,
                                    const double *v0,
                                    double s_end,
                                    double step,
                                    struct GoptTrajectory **out);

// Integrate an isospin probe in a gauge configuration (trivial frame).
// Nonzero `lorentz` selects the generalized Lorentz force; zero selects
// joint parallel transport, which conserves |I|², |v|²_g, and I·v.
//
// # Safety
// `field` must be a live field handle; `x0`, `v0`, `i0` must point to 3
// readable doubles each; `out` must be a writable handle slot.
enum GoptStatus gopt_trace_charged(const struct GoptField *field,
                                   const double *x0,
                                   const double *v0,
                                   const double *i0,
                                   double s_end,
                                   double step,
                                   uint8_t lorentz,
                                   struct GoptTrajectory **out);

// Number of samples in a trajectory (0 for NULL).
//
// # Safety
// `trajectory` must be a live trajectory handle or NULL.
size_t gopt_trajectory_len(const struct GoptTrajectory *trajectory);

// Copy sample `index` into `out[10]` as s, x1..x3, v1..v3, I1..I3.
//
// # Safety
// `trajectory` must be a live trajectory handle; `out` must point to 10
// writable doubles.
enum GoptStatus gopt_trajectory_sample(const struct GoptTrajectory *trajectory,
                                       size_t index,
                                       double *out);

// # Safety
// `trajectory` must be a live trajectory handle or NULL.
enum GoptTermination gopt_trajectory_termination(const struct GoptTrajectory *trajectory);

// Copy the max relative drifts of |I|², |v|²_g, I·v into `out[3]`.
//
// # Safety
// `trajectory` must be a live trajectory handle; `out` must point to 3
// writable doubles.
enum GoptStatus gopt_trajectory_drifts(const struct GoptTrajectory *trajectory, double *out);

// # Safety
// `trajectory` must be a handle from a `gopt_trace_*` call, not yet freed;
// NULL is ignored.
void gopt_trajectory_free(struct GoptTrajectory *trajectory);

// Root polynomial q(2−q)(1−q) of the power-law ansatz.
double gopt_root_polynomial(double q);

// Residual of the third-order radial equation for f = r^(−q).
//
// # Safety
// `out` must point to a writable double.
enum GoptStatus gopt_ode_residual_power_law(double q, double r, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAUGE_OPTICS_H */
