#pragma once

#include <vector>

#include "stablesde/scheme.hpp"

namespace stablesde {

// Fully deterministic benchmark for the linear drift b(x) = -x in one
// dimension, where every invariant characteristic function is known in
// closed or product form.

struct OUBenchConfig {
    double alpha = 1.5;
    std::vector<double> eta_grid; // strictly decreasing, each in (0,1)
    double quad_tol = 1e-10;
    double tail_tol = 1e-12;
};

// CF of the exact invariant law: exp(-|xi|^alpha / alpha).
double exact_inv_cf(double alpha, double xi);

// CF of the unit Pareto variate in one dimension,
// phi(xi) = 1 - alpha * int_1^inf (1 - cos(xi z)) z^{-1-alpha} dz,
// evaluated through the rearrangement
// phi(xi) = 1 - sigma^alpha |xi|^alpha + alpha |xi|^alpha int_0^{|xi|} (1-cos u) u^{-1-alpha} du.
double pareto_cf(double alpha, double xi, double quad_tol = 1e-10);

// CF of the Pareto-scheme invariant law: the infinite product
// prod_{i>=0} phi((eta^{1/alpha}/sigma) (1-eta)^i xi), truncated where the
// analytic tail bound falls below tail_tol and corrected by the leading tail
// factor.  Throws NumericalFailure if a retained factor is <= 0.
double pareto_scheme_inv_cf(double alpha, double eta, double xi, double tail_tol = 1e-12);

// CF of the stable-scheme invariant law: exp(-|xi|^alpha eta / (1-(1-eta)^alpha)).
double stable_scheme_inv_cf(double alpha, double eta, double xi);

// Signed integral over xi in [-1,1] of (scheme invariant CF - exact CF).
// Positive for the Pareto scheme at small eta, negative for the stable
// scheme.  Throws NumericalFailure if two quadrature refinements disagree by
// more than quad_tol.
double cf_gap(double alpha, double eta, SchemeKind scheme, double quad_tol = 1e-10,
              double tail_tol = 1e-12);

// M = sup_x |x cos x - sin x| / x^2, the Lipschitz normaliser of the witness
// h(x) = sin(x)/(M x) used to turn a CF gap into a W1 lower bound.
double lipschitz_witness_scale();

// |cf_gap| / (2 M): a lower bound for W1(scheme invariant, exact invariant).
double lipschitz_witness_bound(double alpha, double eta, SchemeKind scheme,
                               double quad_tol = 1e-10, double tail_tol = 1e-12);

struct CfGapRow {
    double eta = 0;
    double gap = 0;
    double w1_lower = 0;
};

// cf_gap over the grid; rows keep the grid order.  Grid entries are
// independent, so workers only affect wall time.
std::vector<CfGapRow> run_ou_benchmark(const OUBenchConfig& config, SchemeKind scheme,
                                       int workers = 0);

} // namespace stablesde
