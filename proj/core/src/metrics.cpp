#include "stablesde/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stablesde {

EmpiricalMeasure::EmpiricalMeasure(int dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (dim_ < 1) throw std::domain_error("measure dim must be >= 1");
    if (data_.empty() || data_.size() % static_cast<std::size_t>(dim_) != 0)
        throw std::domain_error("sample data size must be a positive multiple of dim");
    n_ = data_.size() / static_cast<std::size_t>(dim_);
    for (double v : data_)
        if (!std::isfinite(v)) throw std::domain_error("samples must be finite");
    if (dim_ == 1) {
        sorted_ = data_;
        std::sort(sorted_.begin(), sorted_.end());
    }
}

const std::vector<double>& EmpiricalMeasure::sorted() const {
    if (dim_ != 1) throw std::domain_error("sorted order is only defined for dim == 1");
    return sorted_;
}

namespace {

double w1_sorted(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == m) {
        double acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += std::abs(a[i] - b[i]);
        return acc / static_cast<double>(n);
    }
    // Quantile functions are step functions with breaks at i/n and j/m; both
    // are constant between consecutive breaks, so the integral is an exact
    // finite sum.  Positions are tracked as integers in units of 1/(n m).
    double acc = 0;
    std::size_t i = 0, j = 0;
    std::uint64_t pos = 0;
    const std::uint64_t total = static_cast<std::uint64_t>(n) * m;
    while (i < n && j < m) {
        const std::uint64_t next_a = static_cast<std::uint64_t>(i + 1) * m;
        const std::uint64_t next_b = static_cast<std::uint64_t>(j + 1) * n;
        const std::uint64_t next = std::min(next_a, next_b);
        acc += std::abs(a[i] - b[j]) * static_cast<double>(next - pos);
        pos = next;
        if (next == next_a) ++i;
        if (next == next_b) ++j;
    }
    return acc / static_cast<double>(total);
}

void check_pair(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int need_dim) {
    if (a.dim() != b.dim()) throw std::domain_error("measures must share the dimension");
    if (need_dim > 0 && a.dim() != need_dim)
        throw std::domain_error("metric needs dim == " + std::to_string(need_dim));
}

} // namespace

double w1_1d(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    check_pair(a, b, 1);
    return w1_sorted(a.sorted(), b.sorted());
}

double sliced_w1(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int n_dirs, RngStream& rng) {
    check_pair(a, b, 0);
    if (a.dim() < 2) throw std::domain_error("sliced_w1 needs dim >= 2; use w1_1d");
    if (n_dirs < 1) throw std::domain_error("n_dirs must be >= 1");
    const std::size_t d = static_cast<std::size_t>(a.dim());
    std::vector<double> dir(d), pa(a.size()), pb(b.size());
    double acc = 0;
    for (int k = 0; k < n_dirs; ++k) {
        rng.fill_gaussian(dir);
        double norm2 = 0;
        for (double v : dir) norm2 += v * v;
        if (norm2 == 0) {
            dir[0] = 1;
            norm2 = 1;
        }
        const double s = 1.0 / std::sqrt(norm2);
        for (double& v : dir) v *= s;

        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto row = a.row(i);
            double dot = 0;
            for (std::size_t c = 0; c < d; ++c) dot += row[c] * dir[c];
            pa[i] = dot;
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            const auto row = b.row(i);
            double dot = 0;
            for (std::size_t c = 0; c < d; ++c) dot += row[c] * dir[c];
            pb[i] = dot;
        }
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        acc += w1_sorted(pa, pb);
    }
    return acc / n_dirs;
}

std::complex<double> empirical_cf(const EmpiricalMeasure& a, std::span<const double> xi) {
    if (xi.size() != static_cast<std::size_t>(a.dim()))
        throw std::domain_error("xi must have the measure's dimension");
    double re = 0, im = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto row = a.row(i);
        double dot = 0;
        for (std::size_t c = 0; c < xi.size(); ++c) dot += row[c] * xi[c];
        re += std::cos(dot);
        im += std::sin(dot);
    }
    const double n = static_cast<double>(a.size());
    return {re / n, im / n};
}

} // namespace stablesde
