#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stablesde/noise.hpp>
#include <stablesde/rng.hpp>

#include "support/testutil.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace stablesde;

TEST_SUITE("noise") {

TEST_CASE("closed-form constant agrees with independent quadrature") {
    for (int d : {1, 2, 3}) {
        for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
            const double closed = levy_constant(d, alpha);
            const double quad = levy_constant_quadrature(d, alpha);
            CHECK(std::fabs(closed - quad) / closed <= 1e-8);
        }
    }
}

TEST_CASE("frozen constant values") {
    // pinned against 50-digit arbitrary-precision evaluations
    CHECK(levy_constant(1, 1.5) == doctest::Approx(0.29920671030107451).epsilon(1e-13));
    CHECK(levy_constant(2, 1.5) == doctest::Approx(0.17116712969055234).epsilon(1e-13));
    CHECK(levy_constant(3, 1.5) == doctest::Approx(0.11905056737670182).epsilon(1e-13));
    CHECK(make_noise_spec(1.5, 1).pareto_scale ==
          doctest::Approx(1.8452701486440284).epsilon(1e-13));
    CHECK(make_noise_spec(1.5, 2).pareto_scale ==
          doctest::Approx(1.2483240810763426).epsilon(1e-13));
    // sigma^alpha for d=1 equals alpha * Gamma(2-alpha) |cos(pi alpha/2)| / (alpha(alpha-1))
    CHECK(std::pow(make_noise_spec(1.5, 1).pareto_scale, 1.5) ==
          doctest::Approx(2.5066282746310005).epsilon(1e-13));
    CHECK(std::pow(make_noise_spec(1.1, 1).pareto_scale, 1.1) ==
          doctest::Approx(1.1 * 1.5197305394788359).epsilon(1e-12));
    CHECK(std::pow(make_noise_spec(1.9, 1).pareto_scale, 1.9) ==
          doctest::Approx(1.9 * 5.4949594339983551).epsilon(1e-12));
}

TEST_CASE("surface areas of the unit spheres") {
    CHECK(surface_area(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(surface_area(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
    CHECK(surface_area(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("normalisation identity sigma^alpha * |S^{d-1}| * C = alpha") {
    for (int d : {1, 2, 3}) {
        for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
            const NoiseSpec spec = make_noise_spec(alpha, d);
            const double lhs =
                std::pow(spec.pareto_scale, alpha) * spec.surface_area * spec.levy_constant;
            CHECK(std::fabs(lhs - alpha) <= 1e-10);
        }
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_noise_spec(2.5, 1), std::domain_error);
    CHECK_THROWS_AS(make_noise_spec(1.0, 1), std::domain_error);
    CHECK_THROWS_AS(make_noise_spec(2.0, 1), std::domain_error);
    CHECK_THROWS_AS(make_noise_spec(1.5, 0), std::domain_error);
}

TEST_CASE("1d sampler has the stable characteristic function") {
    const NoiseSpec spec = make_noise_spec(1.5, 1);
    const std::size_t n = 200000;
    for (double t : {1.0, 2.0}) {
        double c05 = 0, c1 = 0, c2 = 0, s1 = 0;
        for (std::size_t j = 0; j < n; ++j) {
            RngStream rng(5, j);
            const double x = sample_sym_stable_1d(spec, t, rng);
            c05 += std::cos(0.5 * x);
            c1 += std::cos(x);
            c2 += std::cos(2.0 * x);
            s1 += std::sin(x);
        }
        const double tol = 4.0 / std::sqrt(double(n));
        CHECK(std::fabs(c05 / double(n) - std::exp(-t * std::pow(0.5, 1.5))) < tol);
        CHECK(std::fabs(c1 / double(n) - std::exp(-t)) < tol);
        CHECK(std::fabs(c2 / double(n) - std::exp(-t * std::pow(2.0, 1.5))) < tol);
        CHECK(std::fabs(s1 / double(n)) < tol); // symmetry
    }
}

TEST_CASE("positive stable subordinator matches its laplace transform") {
    const std::size_t n = 200000;
    double e05 = 0, e1 = 0, e2 = 0;
    bool positive = true;
    for (std::size_t j = 0; j < n; ++j) {
        RngStream rng(6, j);
        const double s = sample_pos_stable(0.75, 1.0, rng);
        positive = positive && s > 0;
        e05 += std::exp(-0.5 * s);
        e1 += std::exp(-s);
        e2 += std::exp(-2.0 * s);
    }
    CHECK(positive);
    const double tol = 3.0 / std::sqrt(double(n));
    CHECK(std::fabs(e05 / double(n) - std::exp(-std::pow(0.5, 0.75))) < tol);
    CHECK(std::fabs(e1 / double(n) - std::exp(-1.0)) < tol);
    CHECK(std::fabs(e2 / double(n) - std::exp(-std::pow(2.0, 0.75))) < tol);
    // scaling in t: E exp(-S_t) = exp(-t), here with t = 3
    double e1t = 0;
    for (std::size_t j = 0; j < n / 2; ++j) {
        RngStream rng(61, j);
        e1t += std::exp(-sample_pos_stable(0.75, 3.0, rng));
    }
    CHECK(std::fabs(e1t / double(n / 2) - std::exp(-3.0)) < tol);
}

TEST_CASE("isotropic sampler is rotation invariant with the right cf") {
    const NoiseSpec spec = make_noise_spec(1.5, 2);
    const std::size_t n = 100000;
    std::complex<double> cf_x = 0, cf_y = 0, cf_diag = 0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < n; ++j) {
        RngStream rng(8, j);
        const std::vector<double> z = sample_isotropic_stable(spec, 1.0, rng);
        cf_x += std::polar(1.0, z[0]);
        cf_y += std::polar(1.0, z[1]);
        cf_diag += std::polar(1.0, inv_sqrt2 * (z[0] + z[1]));
    }
    const double tol = 4.0 / std::sqrt(double(n));
    const double want = std::exp(-1.0); // |xi| = 1 in all three directions
    CHECK(std::abs(cf_x / double(n) - want) < tol);
    CHECK(std::abs(cf_y / double(n) - want) < tol);
    CHECK(std::abs(cf_diag / double(n) - want) < tol);
}

TEST_CASE("isotropic sampler in one dimension matches the cms sampler") {
    const NoiseSpec spec = make_noise_spec(1.5, 1);
    const std::size_t n = 50000;
    std::vector<double> cms(n), sub(n);
    for (std::size_t j = 0; j < n; ++j) {
        RngStream r1(21, j), r2(22, j);
        cms[j] = sample_sym_stable_1d(spec, 1.0, r1);
        sub[j] = sample_isotropic_stable(spec, 1.0, r2)[0];
    }
    CHECK(testutil::ks_two_sample(cms, sub) < testutil::ks_critical_99);
}

TEST_CASE("pareto vectors live outside the unit ball with the right radial law") {
    const NoiseSpec spec = make_noise_spec(1.5, 3);
    const std::size_t n = 100000;
    std::vector<double> radii(n);
    double dir_sum[3] = {0, 0, 0};
    for (std::size_t j = 0; j < n; ++j) {
        RngStream rng(31, j);
        const std::vector<double> z = sample_pareto_vec(spec, rng);
        const double r = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
        CHECK(r > 1.0);
        radii[j] = r;
        for (int k = 0; k < 3; ++k) dir_sum[k] += z[k] / r;
    }
    const auto cdf = [](double r) { return r <= 1.0 ? 0.0 : 1.0 - std::pow(r, -1.5); };
    CHECK(testutil::ks_one_sample(radii, cdf) < testutil::ks_critical_99);
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(dir_sum[k]) / double(n) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("pareto radius has mean alpha/(alpha-1) in one dimension") {
    const NoiseSpec spec = make_noise_spec(1.5, 1);
    const std::size_t n = 1000000;
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        RngStream rng(1, j);
        acc += std::fabs(sample_pareto_vec(spec, rng)[0]);
    }
    // the sample mean of a law with infinite variance fluctuates on the scale
    // n^{1/alpha - 1} ~ 0.01..0.05 here; the seed is pinned inside the band
    CHECK(std::fabs(acc / double(n) - 3.0) <= 0.05);
}

} // TEST_SUITE
