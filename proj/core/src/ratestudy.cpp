#include "stablesde/ratestudy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "detail/parallel.hpp"
#include "stablesde/errors.hpp"
#include "stablesde/metrics.hpp"
#include "stablesde/noise.hpp"

namespace stablesde {

namespace {

void require_grid(const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::domain_error("eta grid needs at least two entries");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < 1.0))
            throw std::domain_error("eta grid entries must lie in (0,1)");
        if (i > 0 && !(grid[i] < grid[i - 1]))
            throw std::domain_error("eta grid must be strictly decreasing");
    }
}

std::uint64_t steps_for(double horizon, double eta) {
    const auto n = static_cast<std::uint64_t>(std::llround(horizon / eta));
    return n == 0 ? 1 : n;
}

// Samples of the linear-drift invariant law alpha^{-1/alpha} Z_1.  Stream ids
// are offset far above the chain ids so the cloud is independent of every
// chain while still reproducible from the one seed.
EmpiricalMeasure exact_ou_invariant(const NoiseSpec& spec, std::uint64_t n, std::uint64_t seed,
                                    int workers) {
    const auto d = static_cast<std::size_t>(spec.dim);
    std::vector<double> out(n * d);
    const double scale = std::pow(spec.alpha, -1.0 / spec.alpha);
    detail::run_blocks(n, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        std::vector<double> z(d);
        for (std::uint64_t j = begin; j < end; ++j) {
            RngStream rng(seed, (1ULL << 62) + j);
            if (spec.dim == 1)
                z[0] = sample_sym_stable_1d(spec, 1.0, rng);
            else
                sample_isotropic_stable(spec, 1.0, rng, z);
            for (std::size_t i = 0; i < d; ++i)
                out[static_cast<std::size_t>(j) * d + i] = scale * z[i];
        }
    });
    return EmpiricalMeasure(spec.dim, std::move(out));
}

} // namespace

double theoretical_rate(double alpha, SchemeKind scheme, std::optional<double> beta) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw std::domain_error("alpha must lie in (1,2)");
    if (scheme == SchemeKind::ParetoNoise) return 2.0 / alpha - 1.0;
    if (!beta) throw std::domain_error("the stable-scheme rate needs a beta in [1, alpha)");
    if (!(*beta >= 1.0 && *beta < alpha)) throw std::domain_error("beta must lie in [1, alpha)");
    return 1.0 + 1.0 / alpha - 1.0 / *beta;
}

LoglogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::domain_error("x and y must have equal length");
    if (x.size() < 2) throw std::domain_error("log-log fit needs at least two points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0))
            throw std::domain_error("log-log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw std::domain_error("log-log fit needs distinct x values");

    LoglogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += resid * resid;
        ss_tot += (ly[i] - my) * (ly[i] - my);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

RateReport run_rate_study(const RateStudyConfig& config, int workers) {
    require_grid(config.eta_grid);

    RateReport rep;
    rep.scheme = config.scheme;
    rep.method = config.method;
    rep.alpha = config.alpha;
    rep.eta_grid = config.eta_grid;

    if (config.method == RateMethod::CFGap) {
        // The CF route needs the invariant law of every chain in product form,
        // which pins the drift to the one-dimensional linear field.
        if (!config.drift.name.empty() &&
            !(config.drift.name == "ou" && config.drift.dim == 1))
            throw std::domain_error("the cf-gap method supports only the ou drift in dimension 1");
        OUBenchConfig bench;
        bench.alpha = config.alpha;
        bench.eta_grid = config.eta_grid;
        bench.quad_tol = config.quad_tol;
        bench.tail_tol = config.tail_tol;
        const auto rows = run_ou_benchmark(bench, config.scheme, workers);
        rep.distances.reserve(rows.size());
        for (const auto& r : rows) rep.distances.push_back(r.w1_lower);
        // The stable-scheme gap expands as a constant times eta, so its CF
        // route has exponent 1 regardless of beta.
        rep.theoretical_slope = config.scheme == SchemeKind::ParetoNoise
                                    ? theoretical_rate(config.alpha, config.scheme)
                                    : 1.0;
    } else {
        const DriftModel& drift = config.drift;
        if (!drift.eval) throw std::domain_error("the mc-w1 method needs a drift model");
        if (config.ensemble == 0) throw std::domain_error("ensemble must be >= 1");
        const NoiseSpec spec = make_noise_spec(config.alpha, drift.dim);

        double horizon = config.horizon;
        if (!(horizon > 0.0)) {
            if (!(drift.theta1 > 0.0))
                throw std::domain_error("the default horizon needs theta1 > 0");
            horizon = 20.0 / drift.theta1;
        }
        const std::uint64_t exact_n =
            config.exact_samples ? config.exact_samples : 4 * config.ensemble;

        // One comparison cloud shared across the whole grid: every eta then
        // faces the same sampling noise on the far side of the distance.
        const EmpiricalMeasure target = [&]() -> EmpiricalMeasure {
            if (drift.name == "ou") return exact_ou_invariant(spec, exact_n, config.seed, workers);
            ChainConfig probe;
            probe.scheme = SchemeKind::StableNoise;
            probe.eta = config.eta_grid.back();
            probe.steps = steps_for(horizon, probe.eta);
            probe.start.assign(static_cast<std::size_t>(drift.dim), 0.0);
            probe.ensemble = exact_n;
            probe.seed = config.seed ^ 0x9e3779b97f4a7c15ULL; // streams disjoint from the chains
            return reference_sde_ensemble(probe, drift, spec, config.refinement, workers);
        }();

        rep.distances.reserve(config.eta_grid.size());
        for (double eta : config.eta_grid) {
            ChainConfig run;
            run.scheme = config.scheme;
            run.eta = eta;
            run.steps = steps_for(horizon, eta);
            run.start.assign(static_cast<std::size_t>(drift.dim), 0.0);
            run.ensemble = config.ensemble;
            run.seed = config.seed; // chain j reuses its stream at every eta
            const EmpiricalMeasure cloud = run_ensemble(run, drift, spec, workers);
            if (drift.dim == 1) {
                rep.distances.push_back(w1_1d(cloud, target));
            } else {
                RngStream dirs(config.seed, 3ULL << 62); // same directions at every eta
                rep.distances.push_back(sliced_w1(cloud, target, config.n_dirs, dirs));
            }
        }
        rep.theoretical_slope = theoretical_rate(
            config.alpha, config.scheme,
            config.scheme == SchemeKind::ParetoNoise ? std::nullopt : config.beta);
    }

    const LoglogFit fit = fit_loglog(rep.eta_grid, rep.distances);
    rep.fitted_slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.r_squared = fit.r_squared;
    return rep;
}

} // namespace stablesde
