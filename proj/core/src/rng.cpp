#include "stablesde/rng.hpp"

#include <cmath>
#include <numbers>

namespace stablesde {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) noexcept {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline std::array<std::uint64_t, 4> round_once(const std::array<std::uint64_t, 4>& c,
                                               const std::array<std::uint64_t, 2>& k) noexcept {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint64_t, 4> RngStream::block(const std::array<std::uint64_t, 4>& counter,
                                              const std::array<std::uint64_t, 2>& key) noexcept {
    std::array<std::uint64_t, 4> c = round_once(counter, key);
    std::array<std::uint64_t, 2> k = key;
    for (int r = 1; r < 10; ++r) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
        c = round_once(c, k);
    }
    return c;
}

std::pair<double, double> RngStream::gaussian_pair() noexcept {
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

void RngStream::fill_gaussian(std::span<double> out) noexcept {
    std::size_t i = 0;
    for (; i + 1 < out.size(); i += 2) {
        const auto [g0, g1] = gaussian_pair();
        out[i] = g0;
        out[i + 1] = g1;
    }
    if (i < out.size()) out[i] = next_gaussian();
}

} // namespace stablesde
