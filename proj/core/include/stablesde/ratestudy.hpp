#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stablesde/drift.hpp"
#include "stablesde/oubench.hpp"
#include "stablesde/scheme.hpp"

namespace stablesde {

enum class RateMethod { MCW1, CFGap };

struct RateReport {
    SchemeKind scheme = SchemeKind::ParetoNoise;
    RateMethod method = RateMethod::MCW1;
    double alpha = 0;
    std::vector<double> eta_grid;
    std::vector<double> distances;
    double fitted_slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double theoretical_slope = 0;
};

// Predicted W1 convergence exponent in eta: 2/alpha - 1 for the Pareto
// scheme; 1 + 1/alpha - 1/beta (beta in [1, alpha)) for the stable scheme,
// which therefore requires beta.
double theoretical_rate(double alpha, SchemeKind scheme, std::optional<double> beta = {});

struct LoglogFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

// Least squares of log(y) on log(x); needs >= 2 points, all positive.
LoglogFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct RateStudyConfig {
    double alpha = 1.5;
    SchemeKind scheme = SchemeKind::ParetoNoise;
    RateMethod method = RateMethod::MCW1;
    DriftModel drift;              // MCW1 only; CFGap is specific to "ou", dim 1
    std::vector<double> eta_grid;  // strictly decreasing
    std::uint64_t ensemble = 10000;
    double horizon = 0;            // simulated time per eta; 0 -> 20/theta1
    std::uint64_t seed = 1;
    std::uint64_t exact_samples = 0; // comparison cloud size; 0 -> 4*ensemble
    int refinement = 16;           // reference scheme refinement for non-"ou" drifts
    int n_dirs = 64;               // sliced W1 directions when dim >= 2
    double quad_tol = 1e-10;       // CFGap only
    double tail_tol = 1e-12;       // CFGap only
    std::optional<double> beta;    // theory exponent input for the stable scheme under MCW1
};

// MCW1: runs the ensemble to the horizon for each eta and measures W1 against
// exact invariant samples (law of alpha^{-1/alpha} Z_1) for the "ou" drift,
// or against a refined stable-scheme reference otherwise.  CFGap: integrates
// the deterministic CF gap.  Fits a log-log line and attaches the predicted
// exponent (for CFGap with the stable scheme the closed-form expansion gives
// exponent 1).
RateReport run_rate_study(const RateStudyConfig& config, int workers = 0);

} // namespace stablesde
