#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stablesde/rng.hpp>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

using stablesde::RngStream;

TEST_SUITE("rng") {

// Reference blocks produced by numpy.random.Philox (counter [0,0,0,0], key
// dtype uint64).  numpy advances the counter before generating, so its first
// emitted block is block({1,0,0,0}, key).
TEST_CASE("block function matches numpy reference vectors") {
    const struct {
        std::array<std::uint64_t, 2> key;
        std::array<std::uint64_t, 4> expect;
    } vectors[] = {
        {{0x0ULL, 0x0ULL},
         {0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
          0x907d7a052fd5b4dcULL}},
        {{0x2aULL, 0x0ULL},
         {0xd1f8817d4d62880eULL, 0x307266b65cc8797eULL, 0xde1f04e7f084ed03ULL,
          0x65034a8e78cd1e59ULL}},
        {{0x2aULL, 0x1ULL},
         {0x719965f2debb5c86ULL, 0xd0ff12852bfefaa0ULL, 0x824f8a46917b59d3ULL,
          0x633af9b3183bb36aULL}},
        {{0x9e3779b97f4a7c15ULL, 0xdeadbeefULL},
         {0x6406a40ca63943d6ULL, 0xe8c4c1cacfadb6dfULL, 0x3976c57aca26c58fULL,
          0x097dd102163cd9d7ULL}},
    };
    for (const auto& v : vectors) {
        const auto got = RngStream::block({1, 0, 0, 0}, v.key);
        CHECK(got == v.expect);
    }
}

TEST_CASE("stream draws walk the counter in order") {
    const struct {
        std::uint64_t seed, stream;
        std::array<std::uint64_t, 8> expect;
    } vectors[] = {
        {0, 0,
         {0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
          0x7e68b68aec7ba23bULL, 0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL,
          0x1c8667a55d902e79ULL, 0x907d7a052fd5b4dcULL}},
        {0x2a, 0,
         {0xa7687e2d34c89dc6ULL, 0x4c5818ab9649d53fULL, 0xea0add4230dddab5ULL,
          0xe2a142eecee5bb40ULL, 0xd1f8817d4d62880eULL, 0x307266b65cc8797eULL,
          0xde1f04e7f084ed03ULL, 0x65034a8e78cd1e59ULL}},
        {0x2a, 1,
         {0x5f7936e09aba407fULL, 0x318bf7d38098fe0bULL, 0xa767807799fc0f9fULL,
          0x3621918cb941dcf8ULL, 0x719965f2debb5c86ULL, 0xd0ff12852bfefaa0ULL,
          0x824f8a46917b59d3ULL, 0x633af9b3183bb36aULL}},
        {0x9e3779b97f4a7c15ULL, 0xdeadbeefULL,
         {0xf072ed7651b36a41ULL, 0x8bc05d8840cb0fe8ULL, 0xdb348e9f5e8ff929ULL,
          0x22a5d049eec16804ULL, 0x6406a40ca63943d6ULL, 0xe8c4c1cacfadb6dfULL,
          0x3976c57aca26c58fULL, 0x097dd102163cd9d7ULL}},
    };
    for (const auto& v : vectors) {
        RngStream rng(v.seed, v.stream);
        for (std::uint64_t want : v.expect) CHECK(rng.next_u64() == want);
        // words 0..3 are the block at counter zero
        const auto b0 = RngStream::block({0, 0, 0, 0}, {v.seed, v.stream});
        RngStream fresh(v.seed, v.stream);
        for (std::uint64_t want : b0) CHECK(fresh.next_u64() == want);
    }
}

TEST_CASE("streams with distinct ids do not collide") {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t j = 0; j < 256; ++j) {
        RngStream rng(7, j);
        firsts.insert(rng.next_u64());
    }
    CHECK(firsts.size() == 256);
}

TEST_CASE("same key replays the same sequence") {
    RngStream a(123, 456), b(123, 456);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniforms stay strictly inside the open unit interval") {
    RngStream rng(11, 0);
    const std::size_t n = 100000;
    double lo = 1, hi = 0, acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_double();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        acc += u;
    }
    CHECK(acc / double(n) == doctest::Approx(0.5).epsilon(0.01));
    CHECK(lo < 0.01);  // the sampler actually visits the edges
    CHECK(hi > 0.99);
}

TEST_CASE("gaussian pairs have the right first moments") {
    RngStream rng(13, 5);
    const std::size_t n = 200000;
    double mean = 0, sq = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [g1, g2] = rng.gaussian_pair();
        mean += g1 + g2;
        sq += g1 * g1 + g2 * g2;
    }
    mean /= double(2 * n);
    sq /= double(2 * n);
    CHECK(std::fabs(mean) < 0.01);
    CHECK(sq == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("fill_gaussian equals repeated pair draws") {
    RngStream a(99, 3), b(99, 3);
    std::vector<double> buf(7);
    a.fill_gaussian(buf);
    for (int i = 0; i < 7; i += 2) {
        const auto [g1, g2] = b.gaussian_pair();
        CHECK(buf[std::size_t(i)] == g1);
        if (i + 1 < 7) CHECK(buf[std::size_t(i) + 1] == g2);
    }
}

} // TEST_SUITE
