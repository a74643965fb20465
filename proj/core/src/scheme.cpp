#include "stablesde/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/parallel.hpp"
#include "stablesde/errors.hpp"

namespace stablesde {

namespace {

void require_state(const ChainConfig& config, const DriftModel& drift) {
    if (!(config.eta > 0 && config.eta < 1))
        throw std::domain_error("eta must lie in (0,1)");
    if (config.ensemble == 0) throw std::domain_error("ensemble must be >= 1");
    if (config.start.size() != static_cast<std::size_t>(drift.dim))
        throw std::domain_error("start vector must have the drift's dimension");
    for (double v : config.start)
        if (!std::isfinite(v)) throw std::domain_error("start vector must be finite");
}

inline void step_inplace(std::vector<double>& y, std::vector<double>& by,
                         const DriftModel& drift, double eta, std::span<const double> dz,
                         std::uint64_t chain, std::uint64_t step) {
    drift.eval(y, by);
    bool finite = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += eta * by[i] + dz[i];
        finite = finite && std::isfinite(y[i]);
    }
    if (!finite) throw NumericalFailure("non-finite chain state", chain, step);
}

} // namespace

std::vector<double> em_step_stable(std::span<const double> y, const DriftModel& drift, double eta,
                                   std::span<const double> dz) {
    if (y.size() != static_cast<std::size_t>(drift.dim) || dz.size() != y.size())
        throw std::domain_error("state and increment must have the drift's dimension");
    std::vector<double> out(y.size()), by(y.size());
    drift.eval(y, by);
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + eta * by[i] + dz[i];
    return out;
}

std::vector<double> em_step_pareto(std::span<const double> y, const DriftModel& drift, double eta,
                                   std::span<const double> ztilde, const NoiseSpec& spec) {
    if (!(spec.pareto_scale > 0)) throw std::domain_error("noise spec has no valid sigma");
    std::vector<double> dz(ztilde.begin(), ztilde.end());
    const double scale = std::pow(eta, 1.0 / spec.alpha) / spec.pareto_scale;
    for (double& v : dz) v *= scale;
    return em_step_stable(y, drift, eta, dz);
}

IncrementFn stable_increment(const NoiseSpec& spec) {
    if (spec.dim == 1) {
        return [spec](RngStream& rng, double eta, std::span<double> out) {
            out[0] = sample_sym_stable_1d(spec, eta, rng);
        };
    }
    return [spec](RngStream& rng, double eta, std::span<double> out) {
        sample_isotropic_stable(spec, eta, rng, out);
    };
}

IncrementFn pareto_increment(const NoiseSpec& spec) {
    return [spec](RngStream& rng, double eta, std::span<double> out) {
        sample_pareto_vec(spec, rng, out);
        const double scale = std::pow(eta, 1.0 / spec.alpha) / spec.pareto_scale;
        for (double& v : out) v *= scale;
    };
}

EmpiricalMeasure run_ensemble_with(const ChainConfig& config, const DriftModel& drift,
                                   const IncrementFn& increment, int workers) {
    require_state(config, drift);
    const std::size_t d = static_cast<std::size_t>(drift.dim);
    const std::uint64_t m = config.ensemble;
    std::vector<double> out(m * d);

    detail::run_blocks(m, workers, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        std::vector<double> y(d), by(d), dz(d);
        for (std::uint64_t j = begin; j < end; ++j) {
            RngStream rng(config.seed, j);
            std::copy(config.start.begin(), config.start.end(), y.begin());
            for (std::uint64_t k = 0; k < config.steps; ++k) {
                increment(rng, config.eta, dz);
                step_inplace(y, by, drift, config.eta, dz, j, k + 1);
            }
            std::copy(y.begin(), y.end(), out.begin() + static_cast<std::size_t>(j) * d);
        }
    });
    return EmpiricalMeasure(drift.dim, std::move(out));
}

EmpiricalMeasure run_ensemble(const ChainConfig& config, const DriftModel& drift,
                              const NoiseSpec& spec, int workers) {
    if (spec.dim != drift.dim) throw std::domain_error("noise and drift dimension mismatch");
    const IncrementFn incr = config.scheme == SchemeKind::StableNoise ? stable_increment(spec)
                                                                      : pareto_increment(spec);
    return run_ensemble_with(config, drift, incr, workers);
}

EmpiricalMeasure reference_sde_ensemble(const ChainConfig& config, const DriftModel& drift,
                                        const NoiseSpec& spec, int refinement, int workers) {
    if (refinement < 1) throw std::domain_error("refinement must be >= 1");
    ChainConfig fine = config;
    fine.scheme = SchemeKind::StableNoise;
    fine.eta = config.eta / refinement;
    fine.steps = config.steps * static_cast<std::uint64_t>(refinement);
    return run_ensemble(fine, drift, spec, workers);
}

std::vector<double> coupled_pair_decay(const ChainConfig& config, const DriftModel& drift,
                                       const NoiseSpec& spec, std::span<const double> x0,
                                       std::span<const double> y0, int workers) {
    ChainConfig probe = config;
    probe.start.assign(x0.begin(), x0.end());
    require_state(probe, drift);
    if (y0.size() != x0.size()) throw std::domain_error("x0 and y0 must share the dimension");
    if (spec.dim != drift.dim) throw std::domain_error("noise and drift dimension mismatch");
    for (double v : y0)
        if (!std::isfinite(v)) throw std::domain_error("y0 must be finite");

    const std::size_t d = static_cast<std::size_t>(drift.dim);
    const std::uint64_t m = config.ensemble;
    const std::uint64_t nsteps = config.steps;
    const IncrementFn incr = config.scheme == SchemeKind::StableNoise ? stable_increment(spec)
                                                                      : pareto_increment(spec);

    const std::uint64_t nblocks = detail::block_count_for(m);
    std::vector<std::vector<double>> acc(nblocks, std::vector<double>(nsteps + 1, 0.0));

    detail::run_blocks(m, workers, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        std::vector<double> x(d), y(d), bx(d), by(d), dz(d);
        auto& local = acc[b];
        for (std::uint64_t j = begin; j < end; ++j) {
            RngStream rng(config.seed, j);
            std::copy(x0.begin(), x0.end(), x.begin());
            std::copy(y0.begin(), y0.end(), y.begin());
            double dist2 = 0;
            for (std::size_t i = 0; i < d; ++i) dist2 += (x[i] - y[i]) * (x[i] - y[i]);
            local[0] += std::sqrt(dist2);
            for (std::uint64_t k = 0; k < nsteps; ++k) {
                incr(rng, config.eta, dz);
                step_inplace(x, bx, drift, config.eta, dz, j, k + 1);
                step_inplace(y, by, drift, config.eta, dz, j, k + 1);
                dist2 = 0;
                for (std::size_t i = 0; i < d; ++i) dist2 += (x[i] - y[i]) * (x[i] - y[i]);
                local[k + 1] += std::sqrt(dist2);
            }
        }
    });

    std::vector<double> mean(nsteps + 1, 0.0);
    for (std::uint64_t b = 0; b < nblocks; ++b)
        for (std::uint64_t k = 0; k <= nsteps; ++k) mean[k] += acc[b][k];
    for (double& v : mean) v /= static_cast<double>(m);
    return mean;
}

MomentReport moment_track(const ChainConfig& config, const DriftModel& drift,
                          const NoiseSpec& spec, double beta, int workers) {
    require_state(config, drift);
    if (spec.dim != drift.dim) throw std::domain_error("noise and drift dimension mismatch");
    if (!(beta >= 1.0 && beta < spec.alpha))
        throw std::domain_error("beta must lie in [1, alpha)");

    const std::size_t d = static_cast<std::size_t>(drift.dim);
    const std::uint64_t m = config.ensemble;
    const std::uint64_t nsteps = config.steps;
    const IncrementFn incr = config.scheme == SchemeKind::StableNoise ? stable_increment(spec)
                                                                      : pareto_increment(spec);

    const std::uint64_t nblocks = detail::block_count_for(m);
    std::vector<std::vector<double>> acc(nblocks, std::vector<double>(nsteps + 1, 0.0));

    detail::run_blocks(m, workers, [&](std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        std::vector<double> y(d), by(d), dz(d);
        auto& local = acc[b];
        for (std::uint64_t j = begin; j < end; ++j) {
            RngStream rng(config.seed, j);
            std::copy(config.start.begin(), config.start.end(), y.begin());
            double norm2 = 0;
            for (double v : y) norm2 += v * v;
            local[0] += std::pow(norm2, 0.5 * beta);
            for (std::uint64_t k = 0; k < nsteps; ++k) {
                incr(rng, config.eta, dz);
                step_inplace(y, by, drift, config.eta, dz, j, k + 1);
                norm2 = 0;
                for (double v : y) norm2 += v * v;
                local[k + 1] += std::pow(norm2, 0.5 * beta);
            }
        }
    });

    MomentReport rep;
    rep.beta = beta;
    rep.per_step.assign(nsteps + 1, 0.0);
    for (std::uint64_t b = 0; b < nblocks; ++b)
        for (std::uint64_t k = 0; k <= nsteps; ++k) rep.per_step[k] += acc[b][k];
    for (double& v : rep.per_step) v /= static_cast<double>(m);
    rep.sup_moment = *std::max_element(rep.per_step.begin(), rep.per_step.end());
    double norm2 = 0;
    for (double v : config.start) norm2 += v * v;
    rep.start_weight = std::pow(1.0 + norm2, 0.5 * beta);
    return rep;
}

} // namespace stablesde
