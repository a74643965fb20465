#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stablesde {

// Non-finite state or a quadrature that failed to converge.  Carries the
// chain/step location when the failure happened inside an ensemble run.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
    NumericalFailure(const std::string& what, std::uint64_t chain, std::uint64_t step)
        : std::runtime_error(what + " (chain " + std::to_string(chain) + ", step " +
                             std::to_string(step) + ")"),
          chain_(chain), step_(step), located_(true) {}

    bool located() const noexcept { return located_; }
    std::uint64_t chain() const noexcept { return chain_; }
    std::uint64_t step() const noexcept { return step_; }

private:
    std::uint64_t chain_ = 0;
    std::uint64_t step_ = 0;
    bool located_ = false;
};

} // namespace stablesde
