#include "stablesde/io.hpp"

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stablesde {

namespace {

void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double(std::string_view tok, const char* what) {
    double v = 0;
    const char* last = tok.data() + tok.size();
    const auto [p, ec] = std::from_chars(tok.data(), last, v);
    if (ec != std::errc{} || p != last)
        throw std::runtime_error(std::string("malformed number in ") + what);
    return v;
}

std::uint64_t parse_index(std::string_view tok, const char* what) {
    std::uint64_t v = 0;
    const char* last = tok.data() + tok.size();
    const auto [p, ec] = std::from_chars(tok.data(), last, v);
    if (ec != std::errc{} || p != last)
        throw std::runtime_error(std::string("malformed index in ") + what);
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

std::string g17(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string scheme_token(SchemeKind scheme) {
    return scheme == SchemeKind::StableNoise ? "stable" : "pareto";
}

SchemeKind parse_scheme_token(const std::string& text) {
    if (text == "stable") return SchemeKind::StableNoise;
    if (text == "pareto") return SchemeKind::ParetoNoise;
    throw std::domain_error("scheme must be \"stable\" or \"pareto\"");
}

std::string method_token(RateMethod method) {
    return method == RateMethod::MCW1 ? "mc-w1" : "cf-gap";
}

RateMethod parse_method_token(const std::string& text) {
    if (text == "mc-w1") return RateMethod::MCW1;
    if (text == "cf-gap") return RateMethod::CFGap;
    throw std::domain_error("method must be \"mc-w1\" or \"cf-gap\"");
}

void write_samples_csv(std::ostream& os, const EmpiricalMeasure& m) {
    os << "idx";
    for (int i = 1; i <= m.dim(); ++i) os << ",x" << i;
    os << "\n";
    for (std::size_t r = 0; r < m.size(); ++r) {
        os << r;
        for (double v : m.row(r)) os << ',' << g17(v);
        os << "\n";
    }
}

EmpiricalMeasure read_samples_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("sample csv is empty");
    chomp(line);
    const auto head = split_csv(line);
    if (head.size() < 2 || head[0] != "idx")
        throw std::runtime_error("sample csv header must be idx,x1,...");
    const int dim = static_cast<int>(head.size()) - 1;
    for (int i = 1; i <= dim; ++i)
        if (head[static_cast<std::size_t>(i)] != "x" + std::to_string(i))
            throw std::runtime_error("sample csv header must be idx,x1,...");

    std::vector<double> data;
    while (std::getline(is, line)) {
        chomp(line);
        if (line.empty()) continue;
        const auto toks = split_csv(line);
        if (toks.size() != head.size())
            throw std::runtime_error("sample csv row has the wrong arity");
        parse_index(toks[0], "sample csv");
        for (int i = 1; i <= dim; ++i)
            data.push_back(parse_double(toks[static_cast<std::size_t>(i)], "sample csv"));
    }
    return EmpiricalMeasure(dim, std::move(data));
}

void write_rate_csv(std::ostream& os, const RateReport& report) {
    if (report.eta_grid.size() != report.distances.size())
        throw std::invalid_argument("rate report grid and distances differ in length");
    os << "eta,distance\n";
    for (std::size_t i = 0; i < report.eta_grid.size(); ++i)
        os << g17(report.eta_grid[i]) << ',' << g17(report.distances[i]) << "\n";
    os << "# slope=" << g17(report.fitted_slope) << " intercept=" << g17(report.intercept)
       << " r2=" << g17(report.r_squared) << " theory=" << g17(report.theoretical_slope) << "\n";
    os << "# scheme=" << scheme_token(report.scheme) << " method=" << method_token(report.method)
       << " alpha=" << g17(report.alpha) << "\n";
}

RateReport read_rate_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("rate csv is empty");
    chomp(line);
    if (line != "eta,distance") throw std::runtime_error("rate csv header must be eta,distance");

    RateReport rep;
    unsigned seen = 0; // one bit per footer key
    while (std::getline(is, line)) {
        chomp(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos)
                    throw std::runtime_error("rate csv footer entries must be key=value");
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "slope") {
                    rep.fitted_slope = parse_double(val, "rate csv footer");
                    seen |= 1u;
                } else if (key == "intercept") {
                    rep.intercept = parse_double(val, "rate csv footer");
                    seen |= 2u;
                } else if (key == "r2") {
                    rep.r_squared = parse_double(val, "rate csv footer");
                    seen |= 4u;
                } else if (key == "theory") {
                    rep.theoretical_slope = parse_double(val, "rate csv footer");
                    seen |= 8u;
                } else if (key == "scheme") {
                    rep.scheme = parse_scheme_token(val);
                    seen |= 16u;
                } else if (key == "method") {
                    rep.method = parse_method_token(val);
                    seen |= 32u;
                } else if (key == "alpha") {
                    rep.alpha = parse_double(val, "rate csv footer");
                    seen |= 64u;
                } else {
                    throw std::runtime_error("unknown rate csv footer key: " + key);
                }
            }
        } else {
            const auto toks = split_csv(line);
            if (toks.size() != 2) throw std::runtime_error("rate csv rows must be eta,distance");
            rep.eta_grid.push_back(parse_double(toks[0], "rate csv"));
            rep.distances.push_back(parse_double(toks[1], "rate csv"));
        }
    }
    if (seen != 127u) throw std::runtime_error("rate csv footer is incomplete");
    return rep;
}

} // namespace stablesde
