#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "lhp/rng.hpp"

using namespace lhp;

TEST_SUITE("rng") {

TEST_CASE("Philox4x32-10 known-answer vectors") {
    // Published Random123 test vectors.
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxBlock{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          PhiloxBlock{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          PhiloxBlock{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("the bijection is usable at compile time") {
    constexpr PhiloxBlock b = philox4x32_10({1, 2, 3, 4}, {5, 6});
    static_assert(b[0] != 0 || b[1] != 0);
    CHECK(b == philox4x32_10({1, 2, 3, 4}, {5, 6}));
}

TEST_CASE("streams are reproducible and distinct") {
    PhiloxEngine a(42, 7, Substream::positions);
    PhiloxEngine b(42, 7, Substream::positions);
    PhiloxEngine c(42, 7, Substream::directions);
    PhiloxEngine e(43, 7, Substream::positions);
    std::vector<std::uint32_t> va, vb, vc, ve;
    for (int i = 0; i < 64; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        ve.push_back(e());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != ve);
    CHECK(stream_id(3, Substream::gaussian) == ((3u << 8) | 3u));
}

TEST_CASE("uniform_open stays strictly inside (0, 1) with the right moments") {
    PhiloxEngine g(1, 0);
    const int n = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = g.uniform_open();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::fabs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::fabs(var - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("block counter advances once per four outputs") {
    PhiloxEngine g(9, 1);
    for (int i = 0; i < 9; ++i) g();
    CHECK(g.blocks_used() == 3);
}

}  // TEST_SUITE
