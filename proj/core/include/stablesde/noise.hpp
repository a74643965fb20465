#pragma once

#include <span>
#include <vector>

#include "stablesde/rng.hpp"

namespace stablesde {

// Parameters of the driving noise.  alpha is the stability index, restricted
// to (1,2); levy_constant is the normalisation that makes exp(-t|xi|^alpha)
// the characteristic function of the process; pareto_scale is the sigma with
// sigma^alpha = alpha / (surface_area * levy_constant), so that the rescaled
// Pareto increments mimic the stable increments to leading order.
struct NoiseSpec {
    double alpha = 0;
    int dim = 0;
    double surface_area = 0;  // |S^{d-1}|
    double levy_constant = 0; // C_{d,alpha} in the Levy measure C |z|^{-d-alpha} dz
    double pareto_scale = 0;  // sigma
};

// Throws std::domain_error unless alpha in (1,2) and dim >= 1.
NoiseSpec make_noise_spec(double alpha, int dim);

// Surface area of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2).  d=1 gives 2.
double surface_area(int dim);

// Closed form: alpha 2^{alpha-1} pi^{-d/2} Gamma((d+alpha)/2) / Gamma(1-alpha/2).
double levy_constant(int dim, double alpha);

// Independent route: inverse of the principal-value integral
// int_{R^d} (1 - cos<e1,y>) |y|^{-d-alpha} dy, reduced to 1-d quadratures
// (series head + panel Gauss-Legendre + integration-by-parts tail for the
// oscillatory part; sphere moment by graded-panel quadrature).  abs_tol is the
// target absolute error of the integral.
double levy_constant_quadrature(int dim, double alpha, double abs_tol = 1e-10);

// Symmetric 1-d alpha-stable variate at time t (CF exp(-t|xi|^alpha)),
// Chambers-Mallows-Stuck.  Consumes exactly 2 uniforms.
double sample_sym_stable_1d(const NoiseSpec& spec, double t, RngStream& rng);

// One-sided stable subordinator at time t with Laplace transform
// exp(-t lambda^{alpha_half}), alpha_half in (0,1).  Consumes 2 uniforms.
double sample_pos_stable(double alpha_half, double t, RngStream& rng);

// Rotationally invariant alpha-stable increment at time t via subordination:
// S with Laplace exponent t lambda^{alpha/2}, then sqrt(2 S) G with G a
// standard d-dim Gaussian, so the CF is exactly exp(-t|xi|^alpha).
void sample_isotropic_stable(const NoiseSpec& spec, double t, RngStream& rng,
                             std::span<double> out);
std::vector<double> sample_isotropic_stable(const NoiseSpec& spec, double t, RngStream& rng);

// Vector with density alpha / (surface_area |z|^{alpha+d}) on |z| > 1:
// radius (1-U)^{-1/alpha}-style inverse transform, direction a normalised
// Gaussian.
void sample_pareto_vec(const NoiseSpec& spec, RngStream& rng, std::span<double> out);
std::vector<double> sample_pareto_vec(const NoiseSpec& spec, RngStream& rng);

} // namespace stablesde
