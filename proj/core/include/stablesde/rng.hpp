#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace stablesde {

// Counter-based splittable stream: Philox4x64-10 keyed by (seed, stream_id).
// Streams with distinct ids are statistically independent, and the n-th draw
// of a given (seed, stream_id) pair is the same on every platform.  The block
// function matches numpy.random.Philox bit for bit (see tests/test_rng.cpp).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key_{seed, stream_id} {}

    std::uint64_t seed() const noexcept { return key_[0]; }
    std::uint64_t stream_id() const noexcept { return key_[1]; }

    std::uint64_t next_u64() noexcept {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    // Uniform on the open interval (0,1); never returns an endpoint, so it is
    // safe under log() and negative powers.
    double next_double() noexcept {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    // Standard normal pair (Box-Muller); consumes exactly two uniforms.
    std::pair<double, double> gaussian_pair() noexcept;

    double next_gaussian() noexcept { return gaussian_pair().first; }

    void fill_gaussian(std::span<double> out) noexcept;

    static std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& counter,
                                              const std::array<std::uint64_t, 2>& key) noexcept;

private:
    void refill() noexcept {
        buf_ = block({block_index_, 0, 0, 0}, key_);
        ++block_index_;
        pos_ = 0;
    }

    std::array<std::uint64_t, 2> key_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace stablesde
