#include "stablesde/drift.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stablesde/errors.hpp"
#include "stablesde/rng.hpp"

namespace stablesde {

namespace {

void require_dim(int dim) {
    if (dim < 1) throw std::domain_error("drift dim must be >= 1");
}

DriftModel make_ou(int dim) {
    DriftModel m;
    m.name = "ou";
    m.dim = dim;
    m.theta1 = 1;
    m.theta2 = 1;
    m.theta3 = 0;
    m.bound_k = 0;
    m.eval = [](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = -x[i];
    };
    return m;
}

DriftModel make_linear(int dim, std::span<const double> params) {
    const std::size_t d = static_cast<std::size_t>(dim);
    if (params.size() != d * d)
        throw std::domain_error("linear drift needs dim*dim row-major matrix entries");
    Eigen::MatrixXd a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = params[static_cast<std::size_t>(r) * d + c];

    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym_eig(sym);
    const double lambda_min = sym_eig.eigenvalues().minCoeff();
    if (!(lambda_min > 0))
        throw std::domain_error("linear drift matrix must have positive definite symmetric part");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_eig(a.transpose() * a);
    const double op_norm = std::sqrt(gram_eig.eigenvalues().maxCoeff());

    DriftModel m;
    m.name = "linear";
    m.dim = dim;
    m.theta1 = lambda_min;
    m.theta2 = op_norm;
    m.theta3 = 0;
    m.bound_k = 0;
    std::vector<double> mat(params.begin(), params.end());
    m.eval = [mat, d](std::span<const double> x, std::span<double> out) {
        for (std::size_t r = 0; r < d; ++r) {
            double acc = 0;
            for (std::size_t c = 0; c < d; ++c) acc += mat[r * d + c] * x[c];
            out[r] = -acc;
        }
    };
    return m;
}

DriftModel make_ou_sine(int dim, std::span<const double> params) {
    if (params.size() != 1) throw std::domain_error("ou-sine drift needs one parameter c");
    const double c = params[0];
    if (!(c >= 0 && c < 1)) throw std::domain_error("ou-sine parameter c must lie in [0,1)");
    DriftModel m;
    m.name = "ou-sine";
    m.dim = dim;
    m.theta1 = 1 - c;
    m.theta2 = 1 + c;
    m.theta3 = c;
    m.bound_k = 0;
    m.eval = [c](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = -x[i] + c * std::sin(x[i]);
    };
    return m;
}

} // namespace

DriftModel builtin_drift(const std::string& name, int dim, std::span<const double> params) {
    require_dim(dim);
    if (name == "ou") {
        if (!params.empty()) throw std::domain_error("ou drift takes no parameters");
        return make_ou(dim);
    }
    if (name == "linear") return make_linear(dim, params);
    if (name == "ou-sine") return make_ou_sine(dim, params);
    throw std::domain_error("unknown drift '" + name + "' (builtins: ou, linear, ou-sine)");
}

DriftModel parse_drift_spec(const std::string& text, int dim) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string tok =
                rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                std::size_t used = 0;
                params.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::domain_error("bad drift parameter '" + tok + "' in '" + text + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return builtin_drift(name, dim, params);
}

double step_size_threshold(const DriftModel& drift) {
    double bound = 1.0;
    if (drift.theta2 > 0) bound = std::min(bound, drift.theta1 / (8 * drift.theta2 * drift.theta2));
    if (drift.theta1 > 0) bound = std::min(bound, 1.0 / drift.theta1);
    return bound;
}

namespace {

void eval_checked(const DriftModel& drift, std::span<const double> x, std::span<double> out) {
    drift.eval(x, out);
    for (double v : out)
        if (!std::isfinite(v)) throw NumericalFailure("drift returned a non-finite value");
}

void sample_in_ball(RngStream& rng, double radius, std::span<double> out) {
    rng.fill_gaussian(out);
    double norm2 = 0;
    for (double v : out) norm2 += v * v;
    if (norm2 == 0) norm2 = 1;
    const double r =
        radius * std::pow(rng.next_double(), 1.0 / static_cast<double>(out.size()));
    const double s = r / std::sqrt(norm2);
    for (double& v : out) v *= s;
}

void unit_vector(RngStream& rng, std::span<double> out) {
    rng.fill_gaussian(out);
    double norm2 = 0;
    for (double v : out) norm2 += v * v;
    if (norm2 == 0) {
        out[0] = 1;
        return;
    }
    const double s = 1.0 / std::sqrt(norm2);
    for (double& v : out) v *= s;
}

} // namespace

DriftCheckReport check_assumption_a(const DriftModel& drift, std::size_t n_pairs, double radius,
                                    std::uint64_t seed) {
    if (n_pairs == 0) throw std::domain_error("n_pairs must be >= 1");
    if (!(radius > 0)) throw std::domain_error("radius must be positive");
    const int d = drift.dim;
    const std::size_t dd = static_cast<std::size_t>(d);

    RngStream rng(seed, 0);
    std::vector<double> x(dd), y(dd), bx(dd), by(dd), v(dd), w(dd), p(dd), q(dd);

    // Tolerances: gradient probes use central differences with step h1 (error
    // O(h1^2 theta3) plus rounding |b| eps / h1); the cross second difference
    // uses the larger h2 to keep the eps/h2^2 rounding term small.
    const double h1 = 1e-5;
    const double h2 = 1e-3;
    const double tol_diss = 1e-8 * (1 + radius * radius) * (1 + drift.theta1);
    const double tol_grad = 1e-6 * (1 + drift.theta2);
    const double tol_second = 2e-4 * (1 + drift.theta3);

    double worst_diss = -std::numeric_limits<double>::infinity();
    double worst_grad = worst_diss;
    double worst_second = worst_diss;

    for (std::size_t i = 0; i < n_pairs; ++i) {
        sample_in_ball(rng, radius, x);
        sample_in_ball(rng, radius, y);
        eval_checked(drift, x, bx);
        eval_checked(drift, y, by);
        double inner = 0, dist2 = 0;
        for (std::size_t k = 0; k < dd; ++k) {
            inner += (bx[k] - by[k]) * (x[k] - y[k]);
            dist2 += (x[k] - y[k]) * (x[k] - y[k]);
        }
        worst_diss = std::max(worst_diss, inner + drift.theta1 * dist2 - drift.bound_k);

        // |D_v b(x)| vs theta2 along a random unit direction
        unit_vector(rng, v);
        for (std::size_t k = 0; k < dd; ++k) {
            p[k] = x[k] + h1 * v[k];
            q[k] = x[k] - h1 * v[k];
        }
        eval_checked(drift, p, bx);
        eval_checked(drift, q, by);
        double g2 = 0;
        for (std::size_t k = 0; k < dd; ++k) {
            const double g = (bx[k] - by[k]) / (2 * h1);
            g2 += g * g;
        }
        worst_grad = std::max(worst_grad, std::sqrt(g2) - drift.theta2);

        // |D_v D_w b(x)| vs theta3 by a cross difference
        unit_vector(rng, w);
        double s2 = 0;
        for (std::size_t k = 0; k < dd; ++k) p[k] = x[k] + h2 * v[k] + h2 * w[k];
        eval_checked(drift, p, bx);
        for (std::size_t k = 0; k < dd; ++k) q[k] = bx[k];
        for (std::size_t k = 0; k < dd; ++k) p[k] = x[k] + h2 * v[k] - h2 * w[k];
        eval_checked(drift, p, bx);
        for (std::size_t k = 0; k < dd; ++k) q[k] -= bx[k];
        for (std::size_t k = 0; k < dd; ++k) p[k] = x[k] - h2 * v[k] + h2 * w[k];
        eval_checked(drift, p, bx);
        for (std::size_t k = 0; k < dd; ++k) q[k] -= bx[k];
        for (std::size_t k = 0; k < dd; ++k) p[k] = x[k] - h2 * v[k] - h2 * w[k];
        eval_checked(drift, p, bx);
        for (std::size_t k = 0; k < dd; ++k) {
            const double s = (q[k] + bx[k]) / (4 * h2 * h2);
            s2 += s * s;
        }
        worst_second = std::max(worst_second, std::sqrt(s2) - drift.theta3);
    }

    DriftCheckReport rep;
    rep.dissipativity_margin = worst_diss;
    rep.gradient_margin = worst_grad;
    rep.second_derivative_margin = worst_second;
    rep.dissipativity_ok = worst_diss <= tol_diss;
    rep.gradient_ok = worst_grad <= tol_grad;
    rep.second_derivative_ok = worst_second <= tol_second;
    return rep;
}

} // namespace stablesde
