// Command line harness around the stablesde library.  Every subcommand that
// writes an output file also drops "<out>.manifest", a key=value file that
// reproduces the run via --config.
#include <CLI11.hpp>

#include <stablesde/drift.hpp>
#include <stablesde/errors.hpp>
#include <stablesde/io.hpp>
#include <stablesde/metrics.hpp>
#include <stablesde/noise.hpp>
#include <stablesde/oubench.hpp>
#include <stablesde/ratestudy.hpp>
#include <stablesde/rng.hpp>
#include <stablesde/scheme.hpp>

#include <charconv>
#include <cmath>
#include <span>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifndef _WIN32
#include <unistd.h>
#endif

#ifndef STABLESDE_VERSION
#define STABLESDE_VERSION "0.0.0"
#endif

namespace {

using namespace stablesde;

using KvList = std::vector<std::pair<std::string, std::string>>;

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

bool stderr_wants_color() {
#ifdef _WIN32
    return false;
#else
    return ::isatty(2) != 0 && std::getenv("NO_COLOR") == nullptr;
#endif
}

void warn(const std::string& message) {
    if (stderr_wants_color())
        std::cerr << "\x1b[33mwarning:\x1b[0m " << message << "\n";
    else
        std::cerr << "warning: " << message << "\n";
}

void warn_step_size(const DriftModel& drift, double eta) {
    const double threshold = step_size_threshold(drift);
    if (eta >= threshold) {
        std::ostringstream ss;
        ss << "step size " << eta << " is at or above the stability threshold " << threshold
           << " for drift '" << drift.name << "'; the chain may diverge";
        warn(ss.str());
    }
}

double parse_number(const std::string& tok) {
    double v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    const auto res = std::from_chars(b, e, v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != e)
        throw std::domain_error("bad number '" + tok + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        out.push_back(parse_number(text.substr(pos, comma - pos)));
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    return out;
}

int parse_exponent(const std::string& tok) {
    int v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    const auto res = std::from_chars(b, e, v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != e)
        throw std::domain_error("bad dyadic exponent '" + tok + "'");
    return v;
}

// "2^-A..2^-B" expands to {2^-A, ..., 2^-B}; anything else is a comma list.
std::vector<double> parse_eta_grid(const std::string& text) {
    if (text.rfind("2^-", 0) == 0) {
        const std::size_t dots = text.find("..");
        if (dots == std::string::npos || text.compare(dots + 2, 3, "2^-") != 0)
            throw std::domain_error("dyadic grid must look like 2^-3..2^-10");
        const int a = parse_exponent(text.substr(3, dots - 3));
        const int b = parse_exponent(text.substr(dots + 5));
        if (a < 1 || b > 62 || a > b)
            throw std::domain_error("dyadic grid 2^-A..2^-B needs 1 <= A <= B <= 62");
        std::vector<double> grid;
        for (int k = a; k <= b; ++k) grid.push_back(std::ldexp(1.0, -k));
        return grid;
    }
    return parse_list(text);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << content;
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

std::string iso_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
#ifdef _WIN32
    gmtime_s(&tm, &now);
#else
    gmtime_r(&now, &tm);
#endif
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& out_path, const std::string& subcommand, const KvList& params) {
    std::ostringstream ss;
    ss << "# stablesde " << STABLESDE_VERSION << " " << subcommand << " manifest\n";
    ss << "# written " << iso_utc_now() << "\n";
    ss << "# reproduce with: stablesde --config " << out_path << ".manifest\n";
    ss << "[" << subcommand << "]\n";
    for (const auto& [key, value] : params) ss << key << " = " << value << "\n";
    write_text_file(out_path + ".manifest", ss.str());
}

// stdout when no --out; otherwise the file plus its manifest.
void emit(const std::string& content, const std::string& out_path, const std::string& subcommand,
          const KvList& params) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    write_text_file(out_path, content);
    write_manifest(out_path, subcommand, params);
}

struct ConstantsOpts {
    int d = 1;
    double alpha = 1.5;
    std::string out;
};

int run_constants(const ConstantsOpts& o) {
    const NoiseSpec spec = make_noise_spec(o.alpha, o.d);
    const double quad = levy_constant_quadrature(o.d, o.alpha);
    const double residual = std::fabs(spec.levy_constant - quad) / spec.levy_constant;
    std::ostringstream ss;
    ss << "d,alpha,surface_area,c_d_alpha,sigma,quad_residual\n";
    ss << o.d << ',' << g17(o.alpha) << ',' << g17(spec.surface_area) << ','
       << g17(spec.levy_constant) << ',' << g17(spec.pareto_scale) << ',' << g17(residual) << '\n';
    emit(ss.str(), o.out, "constants",
         {{"d", std::to_string(o.d)}, {"alpha", g17(o.alpha)}, {"out", quoted(o.out)}});
    return 0;
}

struct SampleOpts {
    std::string kind;
    std::uint64_t n = 1;
    int d = 1;
    double alpha = 1.5;
    double t = 1.0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_sample(const SampleOpts& o) {
    if (o.n == 0) throw std::domain_error("--n must be >= 1");
    if (!(o.t > 0)) throw std::domain_error("--t must be positive");
    const NoiseSpec spec = make_noise_spec(o.alpha, o.d);
    if (o.kind == "stable1d" && o.d != 1)
        throw std::domain_error("--kind stable1d is one dimensional; use --kind isotropic for d > 1");
    std::vector<double> rows(o.n * static_cast<std::size_t>(o.d));
    for (std::uint64_t j = 0; j < o.n; ++j) {
        RngStream rng(o.seed, j);
        std::span<double> row(rows.data() + j * static_cast<std::size_t>(o.d),
                              static_cast<std::size_t>(o.d));
        if (o.kind == "stable1d")
            row[0] = sample_sym_stable_1d(spec, o.t, rng);
        else if (o.kind == "isotropic")
            sample_isotropic_stable(spec, o.t, rng, row);
        else
            sample_pareto_vec(spec, rng, row);
    }
    std::ostringstream ss;
    write_samples_csv(ss, EmpiricalMeasure(o.d, std::move(rows)));
    emit(ss.str(), o.out, "sample",
         {{"kind", quoted(o.kind)},
          {"n", std::to_string(o.n)},
          {"d", std::to_string(o.d)},
          {"alpha", g17(o.alpha)},
          {"t", g17(o.t)},
          {"seed", std::to_string(o.seed)},
          {"out", quoted(o.out)}});
    return 0;
}

struct SimulateOpts {
    std::string scheme = "stable";
    std::string drift = "ou";
    double eta = 0.1;
    std::uint64_t steps = 1;
    std::uint64_t ensemble = 1;
    std::string x0;
    int d = 1;
    double alpha = 1.5;
    std::uint64_t seed = 1;
    std::string out;
};

int run_simulate(const SimulateOpts& o, int workers) {
    const DriftModel drift = parse_drift_spec(o.drift, o.d);
    const NoiseSpec spec = make_noise_spec(o.alpha, o.d);
    ChainConfig config;
    config.scheme = parse_scheme_token(o.scheme);
    config.eta = o.eta;
    config.steps = o.steps;
    config.start = o.x0.empty() ? std::vector<double>(static_cast<std::size_t>(o.d), 0.0)
                                : parse_list(o.x0);
    config.ensemble = o.ensemble;
    config.seed = o.seed;
    warn_step_size(drift, o.eta);
    const EmpiricalMeasure finals = run_ensemble(config, drift, spec, workers);
    std::ostringstream ss;
    write_samples_csv(ss, finals);
    emit(ss.str(), o.out, "simulate",
         {{"scheme", quoted(o.scheme)},
          {"drift", quoted(o.drift)},
          {"eta", g17(o.eta)},
          {"steps", std::to_string(o.steps)},
          {"ensemble", std::to_string(o.ensemble)},
          {"x0", quoted(o.x0)},
          {"d", std::to_string(o.d)},
          {"alpha", g17(o.alpha)},
          {"seed", std::to_string(o.seed)},
          {"out", quoted(o.out)}});
    return 0;
}

struct CfGapOpts {
    double alpha = 1.5;
    std::string scheme = "pareto";
    std::string eta_grid;
    double quad_tol = 1e-10;
    double tail_tol = 1e-12;
    std::string out;
};

int run_cf_gap(const CfGapOpts& o, int workers) {
    OUBenchConfig config;
    config.alpha = o.alpha;
    config.eta_grid = parse_eta_grid(o.eta_grid);
    config.quad_tol = o.quad_tol;
    config.tail_tol = o.tail_tol;
    const SchemeKind scheme = parse_scheme_token(o.scheme);
    const std::vector<CfGapRow> rows = run_ou_benchmark(config, scheme, workers);

    std::ostringstream ss;
    ss << "eta,gap,w1_lower\n";
    for (const CfGapRow& r : rows)
        ss << g17(r.eta) << ',' << g17(r.gap) << ',' << g17(r.w1_lower) << '\n';

    std::string slope_text;
    if (rows.size() >= 2) {
        std::vector<double> abs_gap;
        for (const CfGapRow& r : rows) abs_gap.push_back(std::fabs(r.gap));
        const LoglogFit fit = fit_loglog(config.eta_grid, abs_gap);
        const double theory =
            scheme == SchemeKind::ParetoNoise ? theoretical_rate(o.alpha, scheme) : 1.0;
        std::ostringstream st;
        st << "slope = " << g17(fit.slope) << "\n";
        st << "intercept = " << g17(fit.intercept) << "\n";
        st << "r2 = " << g17(fit.r_squared) << "\n";
        st << "theory = " << g17(theory) << "\n";
        slope_text = st.str();
    }

    const KvList params = {{"alpha", g17(o.alpha)},
                           {"scheme", quoted(o.scheme)},
                           {"eta-grid", quoted(o.eta_grid)},
                           {"quad-tol", g17(o.quad_tol)},
                           {"tail-tol", g17(o.tail_tol)},
                           {"out", quoted(o.out)}};
    if (o.out.empty()) {
        std::cout << ss.str();
        std::istringstream lines(slope_text);
        for (std::string line; std::getline(lines, line);) std::cout << "# " << line << "\n";
    } else {
        write_text_file(o.out, ss.str());
        if (!slope_text.empty()) write_text_file(o.out + ".slope", slope_text);
        write_manifest(o.out, "cf-gap", params);
    }
    return 0;
}

struct RateStudyOpts {
    std::string method = "mc-w1";
    std::string scheme = "pareto";
    std::string drift = "ou";
    double alpha = 1.5;
    std::string eta_grid;
    std::uint64_t ensemble = 10000;
    double horizon = 0;
    std::uint64_t exact_samples = 0;
    int refinement = 16;
    int n_dirs = 64;
    double beta = 0;
    double quad_tol = 1e-10;
    double tail_tol = 1e-12;
    int d = 1;
    std::uint64_t seed = 1;
    std::string out;
};

int run_rate_study_cmd(const RateStudyOpts& o, int workers) {
    RateStudyConfig config;
    config.alpha = o.alpha;
    config.scheme = parse_scheme_token(o.scheme);
    config.method = parse_method_token(o.method);
    config.eta_grid = parse_eta_grid(o.eta_grid);
    config.ensemble = o.ensemble;
    config.horizon = o.horizon;
    config.seed = o.seed;
    config.exact_samples = o.exact_samples;
    config.refinement = o.refinement;
    config.n_dirs = o.n_dirs;
    config.quad_tol = o.quad_tol;
    config.tail_tol = o.tail_tol;
    if (o.beta > 0) config.beta = o.beta;
    config.drift = parse_drift_spec(o.drift, o.d);
    if (config.method == RateMethod::MCW1 && !config.eta_grid.empty())
        warn_step_size(config.drift, config.eta_grid.front());

    const RateReport report = run_rate_study(config, workers);
    std::ostringstream ss;
    write_rate_csv(ss, report);
    emit(ss.str(), o.out, "rate-study",
         {{"method", quoted(o.method)},
          {"scheme", quoted(o.scheme)},
          {"drift", quoted(o.drift)},
          {"alpha", g17(o.alpha)},
          {"eta-grid", quoted(o.eta_grid)},
          {"ensemble", std::to_string(o.ensemble)},
          {"horizon", g17(o.horizon)},
          {"exact-samples", std::to_string(o.exact_samples)},
          {"refinement", std::to_string(o.refinement)},
          {"n-dirs", std::to_string(o.n_dirs)},
          {"beta", g17(o.beta)},
          {"quad-tol", g17(o.quad_tol)},
          {"tail-tol", g17(o.tail_tol)},
          {"d", std::to_string(o.d)},
          {"seed", std::to_string(o.seed)},
          {"out", quoted(o.out)}});
    return 0;
}

struct CouplingOpts {
    std::string scheme = "stable";
    std::string drift = "ou";
    double eta = 0.1;
    std::uint64_t steps = 1;
    std::uint64_t ensemble = 1;
    std::string x0;
    std::string y0;
    int d = 1;
    double alpha = 1.5;
    std::uint64_t seed = 1;
    std::string out;
};

int run_coupling(const CouplingOpts& o, int workers) {
    const DriftModel drift = parse_drift_spec(o.drift, o.d);
    const NoiseSpec spec = make_noise_spec(o.alpha, o.d);
    const std::vector<double> x0 = parse_list(o.x0);
    const std::vector<double> y0 = parse_list(o.y0);
    ChainConfig config;
    config.scheme = parse_scheme_token(o.scheme);
    config.eta = o.eta;
    config.steps = o.steps;
    config.start = x0;
    config.ensemble = o.ensemble;
    config.seed = o.seed;
    warn_step_size(drift, o.eta);
    const std::vector<double> decay = coupled_pair_decay(config, drift, spec, x0, y0, workers);
    std::ostringstream ss;
    ss << "k,mean_distance\n";
    for (std::size_t k = 0; k < decay.size(); ++k) ss << k << ',' << g17(decay[k]) << '\n';
    emit(ss.str(), o.out, "coupling-decay",
         {{"scheme", quoted(o.scheme)},
          {"drift", quoted(o.drift)},
          {"eta", g17(o.eta)},
          {"steps", std::to_string(o.steps)},
          {"ensemble", std::to_string(o.ensemble)},
          {"x0", quoted(o.x0)},
          {"y0", quoted(o.y0)},
          {"d", std::to_string(o.d)},
          {"alpha", g17(o.alpha)},
          {"seed", std::to_string(o.seed)},
          {"out", quoted(o.out)}});
    return 0;
}

struct CheckDriftOpts {
    std::string drift;
    int d = 1;
    std::uint64_t n_pairs = 10000;
    double radius = 10;
    std::uint64_t seed = 1;
    std::optional<double> theta1, theta2, theta3, bound_k;
    std::string out;
};

int run_check_drift(const CheckDriftOpts& o) {
    DriftModel drift = parse_drift_spec(o.drift, o.d);
    if (o.theta1) drift.theta1 = *o.theta1;
    if (o.theta2) drift.theta2 = *o.theta2;
    if (o.theta3) drift.theta3 = *o.theta3;
    if (o.bound_k) drift.bound_k = *o.bound_k;
    const DriftCheckReport report = check_assumption_a(drift, o.n_pairs, o.radius, o.seed);

    std::ostringstream ss;
    ss << "drift: " << drift.name << " (dim " << o.d << ")\n";
    ss << "declared: theta1 " << g17(drift.theta1) << ", theta2 " << g17(drift.theta2)
       << ", theta3 " << g17(drift.theta3) << ", k " << g17(drift.bound_k) << "\n";
    ss << "pairs: " << o.n_pairs << ", radius: " << g17(o.radius) << ", seed: " << o.seed << "\n";
    const auto line = [&ss](const char* label, bool ok, double margin) {
        ss << label << ": " << (ok ? "ok" : "FALSIFIED") << " (worst margin " << g17(margin)
           << ")\n";
    };
    line("dissipativity", report.dissipativity_ok, report.dissipativity_margin);
    line("gradient bound", report.gradient_ok, report.gradient_margin);
    line("second derivative bound", report.second_derivative_ok, report.second_derivative_margin);

    KvList params = {{"drift", quoted(o.drift)},
                     {"d", std::to_string(o.d)},
                     {"n-pairs", std::to_string(o.n_pairs)},
                     {"radius", g17(o.radius)},
                     {"seed", std::to_string(o.seed)},
                     {"out", quoted(o.out)}};
    if (o.theta1) params.emplace_back("theta1", g17(*o.theta1));
    if (o.theta2) params.emplace_back("theta2", g17(*o.theta2));
    if (o.theta3) params.emplace_back("theta3", g17(*o.theta3));
    if (o.bound_k) params.emplace_back("bound-k", g17(*o.bound_k));
    emit(ss.str(), o.out, "check-drift", params);
    if (!report.ok()) {
        std::cerr << "check-drift: declared bounds falsified\n";
        return 3;
    }
    return 0;
}

struct MomentsOpts {
    std::string scheme = "pareto";
    std::string drift = "ou";
    double beta = 1.0;
    double eta = 0.1;
    std::uint64_t steps = 1;
    std::uint64_t ensemble = 1000;
    std::string x0;
    int d = 1;
    double alpha = 1.5;
    std::uint64_t seed = 1;
    std::string out;
};

int run_moments(const MomentsOpts& o, int workers) {
    const DriftModel drift = parse_drift_spec(o.drift, o.d);
    const NoiseSpec spec = make_noise_spec(o.alpha, o.d);
    ChainConfig config;
    config.scheme = parse_scheme_token(o.scheme);
    config.eta = o.eta;
    config.steps = o.steps;
    config.start = o.x0.empty() ? std::vector<double>(static_cast<std::size_t>(o.d), 0.0)
                                : parse_list(o.x0);
    config.ensemble = o.ensemble;
    config.seed = o.seed;
    warn_step_size(drift, o.eta);
    const MomentReport report = moment_track(config, drift, spec, o.beta, workers);
    std::ostringstream ss;
    ss << "k,moment_beta\n";
    for (std::size_t k = 0; k < report.per_step.size(); ++k)
        ss << k << ',' << g17(report.per_step[k]) << '\n';
    emit(ss.str(), o.out, "moments",
         {{"scheme", quoted(o.scheme)},
          {"drift", quoted(o.drift)},
          {"beta", g17(o.beta)},
          {"eta", g17(o.eta)},
          {"steps", std::to_string(o.steps)},
          {"ensemble", std::to_string(o.ensemble)},
          {"x0", quoted(o.x0)},
          {"d", std::to_string(o.d)},
          {"alpha", g17(o.alpha)},
          {"seed", std::to_string(o.seed)},
          {"out", quoted(o.out)}});
    return 0;
}

// Subcommands are configurable so a run manifest can both select the
// subcommand and supply its options via the top-level --config.
void setup_sub(CLI::App* sub) {
    sub->configurable(true);
    sub->fallthrough(true);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euler approximation of invariant measures of stable-noise SDEs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read a run manifest / config file");
    int workers = 1;
    app.add_option("--workers", workers, "worker threads (0 = hardware)");
    int rc = 0;

    auto constants = std::make_shared<ConstantsOpts>();
    {
        CLI::App* sub = app.add_subcommand("constants", "noise normalisation constants for (d, alpha)");
        sub->add_option("--d", constants->d, "dimension");
        sub->add_option("--alpha", constants->alpha, "stability index in (1,2)");
        sub->add_option("--out", constants->out, "output csv (stdout when omitted)");
        setup_sub(sub);
        sub->callback([constants, &rc] { rc = run_constants(*constants); });
    }

    auto sample = std::make_shared<SampleOpts>();
    {
        CLI::App* sub = app.add_subcommand("sample", "draw noise variates");
        sub->add_option("--kind", sample->kind, "stable1d, isotropic or pareto")
            ->required()
            ->check(CLI::IsMember({"stable1d", "isotropic", "pareto"}));
        sub->add_option("--n", sample->n, "number of samples");
        sub->add_option("--d", sample->d, "dimension");
        sub->add_option("--alpha", sample->alpha, "stability index in (1,2)");
        sub->add_option("--t", sample->t, "time increment for the stable kinds");
        sub->add_option("--seed", sample->seed, "rng seed");
        sub->add_option("--out", sample->out, "output csv (stdout when omitted)");
        setup_sub(sub);
        sub->callback([sample, &rc] { rc = run_sample(*sample); });
    }

    auto simulate = std::make_shared<SimulateOpts>();
    {
        CLI::App* sub = app.add_subcommand("simulate", "run chains and write final states");
        sub->add_option("--scheme", simulate->scheme, "stable or pareto")
            ->check(CLI::IsMember({"stable", "pareto"}));
        sub->add_option("--drift", simulate->drift, "drift spec, e.g. ou or ou-sine:0.5");
        sub->add_option("--eta", simulate->eta, "step size in (0,1)");
        sub->add_option("--steps", simulate->steps, "steps per chain");
        sub->add_option("--ensemble", simulate->ensemble, "number of chains");
        sub->add_option("--x0", simulate->x0, "start point, comma separated (default origin)");
        sub->add_option("--d", simulate->d, "dimension");
        sub->add_option("--alpha", simulate->alpha, "stability index in (1,2)");
        sub->add_option("--seed", simulate->seed, "rng seed");
        sub->add_option("--out", simulate->out, "output csv (stdout when omitted)");
        setup_sub(sub);
        sub->callback([simulate, &rc, &workers] { rc = run_simulate(*simulate, workers); });
    }

    auto cfgap = std::make_shared<CfGapOpts>();
    {
        CLI::App* sub = app.add_subcommand("cf-gap", "deterministic invariant-CF gap benchmark");
        sub->add_option("--alpha", cfgap->alpha, "stability index in (1,2)");
        sub->add_option("--scheme", cfgap->scheme, "stable or pareto")
            ->check(CLI::IsMember({"stable", "pareto"}));
        sub->add_option("--eta-grid", cfgap->eta_grid, "2^-A..2^-B or comma list, decreasing")
            ->required();
        sub->add_option("--quad-tol", cfgap->quad_tol, "quadrature agreement tolerance");
        sub->add_option("--tail-tol", cfgap->tail_tol, "product tail tolerance");
        sub->add_option("--out", cfgap->out, "output csv; also writes <out>.slope");
        setup_sub(sub);
        sub->callback([cfgap, &rc, &workers] { rc = run_cf_gap(*cfgap, workers); });
    }

    auto rate = std::make_shared<RateStudyOpts>();
    {
        CLI::App* sub = app.add_subcommand("rate-study", "convergence rate over a step grid");
        sub->add_option("--method", rate->method, "mc-w1 or cf-gap")
            ->check(CLI::IsMember({"mc-w1", "cf-gap"}));
        sub->add_option("--scheme", rate->scheme, "stable or pareto")
            ->check(CLI::IsMember({"stable", "pareto"}));
        sub->add_option("--drift", rate->drift, "drift spec (mc-w1; cf-gap needs ou)");
        sub->add_option("--alpha", rate->alpha, "stability index in (1,2)");
        sub->add_option("--eta-grid", rate->eta_grid, "2^-A..2^-B or comma list, decreasing")
            ->required();
        sub->add_option("--ensemble", rate->ensemble, "chains per eta (mc-w1)");
        sub->add_option("--horizon", rate->horizon, "simulated time; 0 picks 20/theta1");
        sub->add_option("--exact-samples", rate->exact_samples, "reference cloud size; 0 picks 4x ensemble");
        sub->add_option("--refinement", rate->refinement, "reference refinement for non-ou drifts");
        sub->add_option("--n-dirs", rate->n_dirs, "sliced W1 directions for d >= 2");
        sub->add_option("--beta", rate->beta, "moment order for the stable-scheme theory slope");
        sub->add_option("--quad-tol", rate->quad_tol, "cf-gap quadrature tolerance");
        sub->add_option("--tail-tol", rate->tail_tol, "cf-gap product tail tolerance");
        sub->add_option("--d", rate->d, "dimension");
        sub->add_option("--seed", rate->seed, "rng seed");
        sub->add_option("--out", rate->out, "output csv (stdout when omitted)");
        setup_sub(sub);
        sub->callback([rate, &rc, &workers] { rc = run_rate_study_cmd(*rate, workers); });
    }

    auto coupling = std::make_shared<CouplingOpts>();
    {
        CLI::App* sub = app.add_subcommand("coupling-decay", "mean distance of synchronously coupled chains");
        sub->add_option("--scheme", coupling->scheme, "stable or pareto")
            ->check(CLI::IsMember({"stable", "pareto"}));
        sub->add_option("--drift", coupling->drift, "drift spec");
        sub->add_option("--eta", coupling->eta, "step size in (0,1)");
        sub->add_option("--steps", coupling->steps, "steps");
        sub->add_option("--ensemble", coupling->ensemble, "coupled pairs to average");
        sub->add_option("--x0", coupling->x0, "first start, comma separated")->required();
        sub->add_option("--y0", coupling->y0, "second start, comma separated")->required();
        sub->add_option("--d", coupling->d, "dimension");
        sub->add_option("--alpha", coupling->alpha, "stability index in (1,2)");
        sub->add_option("--seed", coupling->seed, "rng seed");
        sub->add_option("--out", coupling->out, "output csv (stdout when omitted)");
        setup_sub(sub);
        sub->callback([coupling, &rc, &workers] { rc = run_coupling(*coupling, workers); });
    }

    auto check = std::make_shared<CheckDriftOpts>();
    {
        CLI::App* sub = app.add_subcommand("check-drift", "falsification check of declared drift bounds");
        sub->add_option("--drift", check->drift, "drift spec")->required();
        sub->add_option("--d", check->d, "dimension");
        sub->add_option("--n-pairs", check->n_pairs, "random pairs to probe");
        sub->add_option("--radius", check->radius, "probe ball radius");
        sub->add_option("--seed", check->seed, "rng seed");
        sub->add_option("--theta1", check->theta1, "override declared theta1");
        sub->add_option("--theta2", check->theta2, "override declared theta2");
        sub->add_option("--theta3", check->theta3, "override declared theta3");
        sub->add_option("--bound-k", check->bound_k, "override declared slack k");
        sub->add_option("--out", check->out, "report file (stdout when omitted)");
        setup_sub(sub);
        sub->callback([check, &rc] { rc = run_check_drift(*check); });
    }

    auto moments = std::make_shared<MomentsOpts>();
    {
        CLI::App* sub = app.add_subcommand("moments", "track E|Y_k|^beta along the chain");
        sub->add_option("--scheme", moments->scheme, "stable or pareto")
            ->check(CLI::IsMember({"stable", "pareto"}));
        sub->add_option("--drift", moments->drift, "drift spec");
        sub->add_option("--beta", moments->beta, "moment order in [1, alpha)")->required();
        sub->add_option("--eta", moments->eta, "step size in (0,1)");
        sub->add_option("--steps", moments->steps, "steps");
        sub->add_option("--ensemble", moments->ensemble, "chains to average");
        sub->add_option("--x0", moments->x0, "start point, comma separated (default origin)");
        sub->add_option("--d", moments->d, "dimension");
        sub->add_option("--alpha", moments->alpha, "stability index in (1,2)");
        sub->add_option("--seed", moments->seed, "rng seed");
        sub->add_option("--out", moments->out, "output csv (stdout when omitted)");
        setup_sub(sub);
        sub->callback([moments, &rc, &workers] { rc = run_moments(*moments, workers); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const stablesde::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
