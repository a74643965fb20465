#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stablesde/drift.hpp"
#include "stablesde/metrics.hpp"
#include "stablesde/noise.hpp"

namespace stablesde {

// StableNoise: Y' = Y + eta b(Y) + dZ with dZ an exact stable increment over
// time eta.  ParetoNoise: Y' = Y + eta b(Y) + (eta^{1/alpha}/sigma) Ztilde
// with Ztilde a unit Pareto vector.
enum class SchemeKind { StableNoise, ParetoNoise };

struct ChainConfig {
    SchemeKind scheme = SchemeKind::StableNoise;
    double eta = 0.1;
    std::uint64_t steps = 0;
    std::vector<double> start;
    std::uint64_t ensemble = 1;
    std::uint64_t seed = 0;
};

// One explicit Euler step with a supplied increment.
std::vector<double> em_step_stable(std::span<const double> y, const DriftModel& drift, double eta,
                                   std::span<const double> dz);

// One step of the Pareto scheme with a supplied raw Pareto vector, scaled by
// eta^{1/alpha}/sigma with alpha and sigma taken from the noise spec.
std::vector<double> em_step_pareto(std::span<const double> y, const DriftModel& drift, double eta,
                                   std::span<const double> ztilde, const NoiseSpec& spec);

// Draws one per-step increment into `out`; the test hook for forcing
// deterministic noise.
using IncrementFn = std::function<void(RngStream&, double /*eta*/, std::span<double>)>;

IncrementFn stable_increment(const NoiseSpec& spec);
IncrementFn pareto_increment(const NoiseSpec& spec);

// Runs `ensemble` independent chains for `steps` steps and returns the final
// states.  Chain j always uses RngStream(seed, j), so results are independent
// of `workers` (0 = all hardware threads).  Throws NumericalFailure with the
// lowest failing chain when a state becomes non-finite.
EmpiricalMeasure run_ensemble(const ChainConfig& config, const DriftModel& drift,
                              const NoiseSpec& spec, int workers = 0);
EmpiricalMeasure run_ensemble_with(const ChainConfig& config, const DriftModel& drift,
                                   const IncrementFn& increment, int workers = 0);

// Proxy for the exact law at time steps*eta: the stable-noise scheme run at
// step eta/refinement for steps*refinement steps.
EmpiricalMeasure reference_sde_ensemble(const ChainConfig& config, const DriftModel& drift,
                                        const NoiseSpec& spec, int refinement, int workers = 0);

// Mean distance per step of two chains driven by the same noise, started at
// x0 and y0.  Returns steps+1 values beginning with |x0-y0|.
std::vector<double> coupled_pair_decay(const ChainConfig& config, const DriftModel& drift,
                                       const NoiseSpec& spec, std::span<const double> x0,
                                       std::span<const double> y0, int workers = 0);

struct MomentReport {
    double beta = 0;
    std::vector<double> per_step; // E|Y_k|^beta, k = 0..steps
    double sup_moment = 0;
    double start_weight = 0; // (1+|x|^2)^{beta/2}
};

// Tracks E|Y_k|^beta along the run; requires 1 <= beta < alpha.
MomentReport moment_track(const ChainConfig& config, const DriftModel& drift,
                          const NoiseSpec& spec, double beta, int workers = 0);

} // namespace stablesde
