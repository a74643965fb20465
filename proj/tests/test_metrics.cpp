#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stablesde/metrics.hpp>

#include "support/testutil.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

using namespace stablesde;

namespace {

EmpiricalMeasure cloud1d(std::vector<double> xs) { return EmpiricalMeasure(1, std::move(xs)); }

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("equal-size distance equals the assignment optimum") {
    for (std::uint64_t inst = 0; inst < 100; ++inst) {
        const auto x = testutil::uniform_cloud(41, 2 * inst, 7, -5.0, 5.0);
        const auto y = testutil::uniform_cloud(41, 2 * inst + 1, 7, -3.0, 8.0);
        const double lp = testutil::w1_assignment_oracle(x, y);
        const double fast = w1_1d(cloud1d(x), cloud1d(y));
        CHECK(fast == doctest::Approx(lp).epsilon(1e-12));
    }
}

TEST_CASE("unequal sizes agree with replication to a common denominator") {
    for (std::uint64_t inst = 0; inst < 50; ++inst) {
        const auto x = testutil::uniform_cloud(43, 2 * inst, 6, -4.0, 4.0);
        const auto y = testutil::uniform_cloud(43, 2 * inst + 1, 9, -4.0, 4.0);
        const double oracle = testutil::w1_replication_oracle(x, y);
        const double fast = w1_1d(cloud1d(x), cloud1d(y));
        CHECK(fast == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("metric properties") {
    const auto xs = testutil::uniform_cloud(47, 0, 12, -2.0, 2.0);
    const auto ys = testutil::uniform_cloud(47, 1, 12, -2.0, 2.0);
    const auto zs = testutil::uniform_cloud(47, 2, 8, -2.0, 2.0);
    const auto a = cloud1d(xs), b = cloud1d(ys), c = cloud1d(zs);
    CHECK(w1_1d(a, a) == 0.0);
    CHECK(w1_1d(a, b) == w1_1d(b, a));
    CHECK(w1_1d(a, b) >= 0.0);
    CHECK(w1_1d(a, c) <= w1_1d(a, b) + w1_1d(b, c) + 1e-12);
}

TEST_CASE("translation moves the distance by exactly the shift") {
    const auto xs = testutil::uniform_cloud(53, 0, 11, -1.0, 1.0);
    std::vector<double> shifted = xs;
    for (double& v : shifted) v += 2.5;
    CHECK(w1_1d(cloud1d(xs), cloud1d(shifted)) == doctest::Approx(2.5).epsilon(1e-13));
    std::vector<double> down = xs;
    for (double& v : down) v -= 0.75;
    CHECK(w1_1d(cloud1d(xs), cloud1d(down)) == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("sliced distance of two point masses is the mean projected gap") {
    const EmpiricalMeasure a(2, {0.0, 0.0});
    const EmpiricalMeasure b(2, {3.0, 4.0}); // |v| = 5
    RngStream rng(57, 0);
    const double est = sliced_w1(a, b, 4096, rng);
    // E|<u, v>| = |v| * 2/pi for a uniform direction in the plane
    CHECK(est == doctest::Approx(5.0 * 2.0 / std::numbers::pi).epsilon(0.04));
    RngStream rng2(57, 0);
    CHECK(sliced_w1(a, a, 64, rng2) == 0.0);
}

TEST_CASE("empirical cf") {
    const EmpiricalMeasure single(1, {0.7});
    const auto cf = empirical_cf(single, std::vector<double>{1.0});
    CHECK(cf.real() == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
    CHECK(cf.imag() == doctest::Approx(std::sin(0.7)).epsilon(1e-15));

    const EmpiricalMeasure pair(1, {0.0, std::numbers::pi});
    CHECK(std::abs(empirical_cf(pair, std::vector<double>{1.0})) < 1e-15);

    const EmpiricalMeasure plane(2, {1.0, 2.0});
    const auto cf2 = empirical_cf(plane, std::vector<double>{0.5, -0.25});
    CHECK(cf2.real() == doctest::Approx(std::cos(0.0)).epsilon(1e-15));
}

TEST_CASE("construction validates the data") {
    CHECK_THROWS_AS(EmpiricalMeasure(1, {1.0, std::numeric_limits<double>::quiet_NaN()}),
                    std::domain_error);
    CHECK_THROWS_AS(EmpiricalMeasure(2, {1.0, 2.0, 3.0}), std::domain_error);
    CHECK_THROWS_AS(EmpiricalMeasure(0, {}), std::domain_error);
    const EmpiricalMeasure m(2, {1.0, 2.0, 3.0, 4.0});
    CHECK(m.size() == 2);
    CHECK_THROWS(m.sorted()); // quantile cache is one dimensional only
}

} // TEST_SUITE
