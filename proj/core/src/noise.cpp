#include "stablesde/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "detail/quad.hpp"

namespace stablesde {

namespace {

constexpr double kPi = std::numbers::pi;

void require_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw std::domain_error("alpha must lie in (1,2), got " + std::to_string(alpha));
}

void require_dim(int dim) {
    if (dim < 1) throw std::domain_error("dim must be >= 1, got " + std::to_string(dim));
}

// Mean of |<e1,u>|^alpha over the unit sphere, by quadrature (d >= 2):
// int_0^{pi/2} cos^alpha(t) sin^{d-2}(t) dt / int_0^{pi/2} sin^{d-2}(t) dt.
// Panels graded toward the cos^alpha endpoint where the integrand is only
// C^1-smooth.
double sphere_moment_quadrature(int dim, double alpha) {
    if (dim == 1) return 1.0;
    const double half = 0.5 * kPi;
    const auto num_f = [&](double phi) {
        // phi = pi/2 - theta, singular factor sin^alpha(phi) at phi = 0
        return std::pow(std::sin(phi), alpha) * std::pow(std::cos(phi), dim - 2);
    };
    double num = 0;
    double b = half;
    for (int k = 0; k < 48; ++k) {
        const double a = b * 0.5;
        num += detail::gauss(detail::kGL21, num_f, a, b);
        b = a;
    }
    num += std::pow(b, alpha + 1.0) / (alpha + 1.0); // leading behaviour below the last break
    const auto den_f = [&](double t) { return std::pow(std::sin(t), dim - 2); };
    const double den = detail::gauss(detail::kGL21, den_f, 0.0, half);
    return num / den;
}

} // namespace

double surface_area(int dim) {
    require_dim(dim);
    return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double levy_constant(int dim, double alpha) {
    require_dim(dim);
    require_alpha(alpha);
    return alpha * std::pow(2.0, alpha - 1.0) * std::pow(kPi, -0.5 * dim) *
           std::tgamma(0.5 * (dim + alpha)) / std::tgamma(1.0 - 0.5 * alpha);
}

double levy_constant_quadrature(int dim, double alpha, double abs_tol) {
    require_dim(dim);
    require_alpha(alpha);
    if (!(abs_tol > 0)) throw std::domain_error("abs_tol must be positive");
    // The p.v. integral at xi = e1 factorises exactly over (radius, direction):
    // I_d = [int_0^inf (1-cos u) u^{-1-alpha} du] * |S^{d-1}| * E|<e1,U>|^alpha.
    const double radial = detail::cos_defect_full(alpha);
    const double angular = sphere_moment_quadrature(dim, alpha);
    const double integral = radial * surface_area(dim) * angular;
    return 1.0 / integral;
}

NoiseSpec make_noise_spec(double alpha, int dim) {
    require_alpha(alpha);
    require_dim(dim);
    NoiseSpec spec;
    spec.alpha = alpha;
    spec.dim = dim;
    spec.surface_area = surface_area(dim);
    spec.levy_constant = levy_constant(dim, alpha);
    spec.pareto_scale = std::pow(alpha / (spec.surface_area * spec.levy_constant), 1.0 / alpha);
    return spec;
}

double sample_sym_stable_1d(const NoiseSpec& spec, double t, RngStream& rng) {
    if (spec.dim != 1) throw std::domain_error("sample_sym_stable_1d needs dim == 1");
    if (!(t > 0)) throw std::domain_error("t must be positive");
    const double alpha = spec.alpha;
    const double u = kPi * (rng.next_double() - 0.5);
    const double w = -std::log(rng.next_double());
    const double x = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
                     std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return std::pow(t, 1.0 / alpha) * x;
}

double sample_pos_stable(double alpha_half, double t, RngStream& rng) {
    if (!(alpha_half > 0.5 && alpha_half < 1.0))
        throw std::domain_error("subordinator index must lie in (1/2,1)");
    if (!(t > 0)) throw std::domain_error("t must be positive");
    const double rho = alpha_half;
    const double theta = kPi * rng.next_double();
    const double w = -std::log(rng.next_double());
    const double s1 = std::sin(rho * theta) / std::pow(std::sin(theta), 1.0 / rho) *
                      std::pow(std::sin((1.0 - rho) * theta) / w, (1.0 - rho) / rho);
    return std::pow(t, 1.0 / rho) * s1;
}

void sample_isotropic_stable(const NoiseSpec& spec, double t, RngStream& rng,
                             std::span<double> out) {
    if (out.size() != static_cast<std::size_t>(spec.dim))
        throw std::domain_error("output span size must equal dim");
    const double s = sample_pos_stable(0.5 * spec.alpha, t, rng);
    rng.fill_gaussian(out);
    const double scale = std::sqrt(2.0 * s);
    for (double& v : out) v *= scale;
}

std::vector<double> sample_isotropic_stable(const NoiseSpec& spec, double t, RngStream& rng) {
    std::vector<double> out(static_cast<std::size_t>(spec.dim));
    sample_isotropic_stable(spec, t, rng, out);
    return out;
}

void sample_pareto_vec(const NoiseSpec& spec, RngStream& rng, std::span<double> out) {
    if (out.size() != static_cast<std::size_t>(spec.dim))
        throw std::domain_error("output span size must equal dim");
    const double r = std::pow(rng.next_double(), -1.0 / spec.alpha);
    rng.fill_gaussian(out);
    double norm2 = 0;
    for (double v : out) norm2 += v * v;
    if (norm2 == 0) {
        out[0] = 1.0;
        norm2 = 1.0;
    }
    const double scale = r / std::sqrt(norm2);
    for (double& v : out) v *= scale;
}

std::vector<double> sample_pareto_vec(const NoiseSpec& spec, RngStream& rng) {
    std::vector<double> out(static_cast<std::size_t>(spec.dim));
    sample_pareto_vec(spec, rng, out);
    return out;
}

} // namespace stablesde
