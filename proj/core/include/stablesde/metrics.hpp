#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stablesde/rng.hpp"

namespace stablesde {

// A finite sample cloud in R^d with equal weights, stored row-major.
// Construction validates that every entry is finite; in one dimension a
// sorted copy is cached for quantile work.
class EmpiricalMeasure {
public:
    EmpiricalMeasure(int dim, std::vector<double> row_major);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return n_; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    const std::vector<double>& data() const noexcept { return data_; }
    // Only available when dim == 1.
    const std::vector<double>& sorted() const;

private:
    int dim_ = 0;
    std::size_t n_ = 0;
    std::vector<double> data_;
    std::vector<double> sorted_;
};

// Exact 1-d Wasserstein-1 distance between two equal-weight sample clouds.
// Equal sizes reduce to the mean absolute difference of order statistics;
// unequal sizes use the exact quantile-function integral.
double w1_1d(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

// Sliced Wasserstein-1 proxy for dim >= 2: average of the 1-d distance over
// n_dirs random directions (normalised Gaussians from the supplied stream).
double sliced_w1(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int n_dirs, RngStream& rng);

// Mean of exp(i <xi, x>) over the cloud.
std::complex<double> empirical_cf(const EmpiricalMeasure& a, std::span<const double> xi);

} // namespace stablesde
