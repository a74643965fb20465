#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace stablesde {

// Drift field b together with its declared one-sided dissipativity and
// derivative bounds:
//   <b(x)-b(y), x-y>  <= -theta1 |x-y|^2 + bound_k
//   |grad_v b|        <=  theta2 |v|
//   |grad_v grad_w b| <=  theta3 |v||w|
// theta1 > 0 is required; bound_k >= 0.
struct DriftModel {
    std::string name;
    int dim = 1;
    double theta1 = 0;
    double theta2 = 0;
    double theta3 = 0;
    double bound_k = 0;
    std::function<void(std::span<const double>, std::span<double>)> eval;

    void operator()(std::span<const double> x, std::span<double> out) const { eval(x, out); }
};

// Built-in families:
//   "ou"             b(x) = -x                      (1, 1, 0, 0)
//   "linear"         b(x) = -A x, params = A row-major d*d entries;
//                    theta1 = lambda_min(sym A) (must be > 0), theta2 = ||A||_2
//   "ou-sine"        b(x) = -x + c sin(x) componentwise, params = {c}, 0 <= c < 1;
//                    (1-c, 1+c, c, 0)
DriftModel builtin_drift(const std::string& name, int dim, std::span<const double> params);

// "name" or "name:p1,p2,..." as accepted on the command line.
DriftModel parse_drift_spec(const std::string& text, int dim);

// Warning threshold for the step size: min{1, theta1/(8 theta2^2), 1/theta1}.
double step_size_threshold(const DriftModel& drift);

struct DriftCheckReport {
    bool dissipativity_ok = false;
    bool gradient_ok = false;
    bool second_derivative_ok = false;
    // Worst observed violations (positive numbers would mean a falsified bound).
    double dissipativity_margin = 0;
    double gradient_margin = 0;
    double second_derivative_margin = 0;

    bool ok() const { return dissipativity_ok && gradient_ok && second_derivative_ok; }
};

// Randomised falsification check of the declared bounds on pairs drawn
// uniformly from the ball of the given radius.  Derivatives are probed with
// central finite differences.  Throws NumericalFailure when the drift returns
// a non-finite value.
DriftCheckReport check_assumption_a(const DriftModel& drift, std::size_t n_pairs, double radius,
                                    std::uint64_t seed);

} // namespace stablesde
