#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <linresp/jump.hpp>
#include <linresp/map.hpp>

#include "test_maps.hpp"

using namespace linresp;
using Catch::Approx;

namespace {

/// Exact invariant density of the full tent as a jump-space element:
/// indicator of (0,1), i.e. -H_1 + H_0 with zero regular part.
JumpFunction tent2_density(int N = 64, double eta = 0.05) {
    return JumpFunction(GridFunction(0.0, 1.0, N), {-1.0, 1.0}, {1.0, 0.0}, eta);
}

} // namespace

TEST_CASE("materialize with the step convention") {
    auto rho = tent2_density();
    CHECK(rho.value(0.5) == Approx(1.0));
    CHECK(rho.value(1.5) == Approx(0.0).margin(0.0));
    CHECK(rho.value(1.0) == Approx(0.5)); // H convention at the jump
    CHECK(rho.value(0.0) == Approx(0.5));
    CHECK(rho.value(1.0, -1) == Approx(1.0));
    CHECK(rho.value(1.0, +1) == Approx(0.0).margin(0.0));
}

TEST_CASE("jump-space norms") {
    JumpFunction phi(GridFunction(0.0, 1.0, 32), {-1.0, 1.0}, {1.0, 0.0}, 0.1);
    CHECK(phi.jump_norm() == Approx(1.21));
    CHECK(phi.b0_norm() == Approx(1.21));

    auto zero = JumpFunction::zero(0.0, 1.0, 32, {1.0, 0.0});
    CHECK(zero.b0_norm() == 0.0);

    auto f = tent_map(2.0);
    CHECK(weak_norm(phi, 0, f) == Approx(1.21)); // regular part vanishes
    CHECK(weak_norm(phi, -1, f) == Approx(1.21));
}

TEST_CASE("relocation is an exact isometry") {
    auto rho = tent2_density(128, 0.05);
    SECTION("own anchors: identity") {
        auto moved = relocate_jumps(rho, rho.anchors);
        CHECK(moved.b0_norm() == rho.b0_norm());
        CHECK(moved.value(0.3) == rho.value(0.3));
    }
    SECTION("anchors of a nearby map") {
        auto moved = relocate_jumps(rho, {0.99, 0.0198});
        CHECK(moved.b0_norm() == rho.b0_norm()); // bit-exact
        CHECK(moved.anchors[0] == 0.99);
    }
    SECTION("length mismatch throws") {
        CHECK_THROWS_AS(relocate_jumps(rho, {0.5}), LengthMismatch);
    }
}

TEST_CASE("envelope expansion and compression") {
    SECTION("single fixed-point jump") {
        auto v = expand_jumps({1.0}, 1, 1, {2.0}, 12);
        CHECK(v[0] == Approx(0.5));
        CHECK(v[1] == Approx(0.25));
        CHECK(v[2] == Approx(0.125));
        auto w = compress_jumps(v, 1, 1);
        CHECK(w[0] == Approx(1.0).margin(1e-3)); // truncated tail of the geometric series
    }
    SECTION("full-tent saltus") {
        auto v = expand_jumps({-1.0, 1.0}, 2, 1, {2.0}, 64);
        CHECK(v[0] == Approx(-1.0));
        CHECK(v[1] == Approx(0.5));
        CHECK(v[2] == Approx(0.25));
        auto w = compress_jumps(v, 2, 1);
        CHECK(w[0] == Approx(-1.0));
        CHECK(w[1] == Approx(1.0).epsilon(1e-12));
    }
    SECTION("zero vector") {
        auto v = expand_jumps({0.0, 0.0, 0.0}, 2, 2, {4.0, -3.0}, 32);
        for (double x : v) CHECK(x == 0.0);
    }
    SECTION("compress after expand recovers random vectors") {
        std::mt19937 rng(99u);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            int n0 = 1 + static_cast<int>(rng() % 4);
            int n1 = 1 + static_cast<int>(rng() % 3);
            std::vector<double> w(static_cast<std::size_t>(n0 + n1 - 1));
            for (double& x : w) x = u(rng);
            std::vector<double> mults(static_cast<std::size_t>(n1));
            for (double& m : mults) m = (u(rng) > 0 ? 1 : -1) * (2.0 + std::abs(u(rng)));
            int length = n0 + n1 * 60;
            auto back = compress_jumps(expand_jumps(w, n0, n1, mults, length), n0, n1);
            for (std::size_t i = 0; i < w.size(); ++i)
                CHECK(back[i] == Approx(w[i]).margin(1e-12 * (1.0 + std::abs(w[i]))));
        }
    }
    SECTION("non-expanding multiplier is rejected") {
        CHECK_THROWS_AS(expand_jumps({1.0}, 1, 1, {0.5}, 8), NonExpandingMultiplier);
    }
}

TEST_CASE("pairings") {
    auto rho = tent2_density(256);
    CHECK(pair(rho, [](double) { return 1.0; }) == Approx(1.0).margin(1e-12));
    CHECK(pair(rho, [](double x) { return x; }) == Approx(0.5).margin(1e-12));

    AtomicMeasure mu;
    mu.atoms = {{0.5, -2.0}};
    CHECK(pair(mu, [](double x) { return x; }) == Approx(-1.0));
}

TEST_CASE("multiplying by a continuous factor") {
    auto rho = tent2_density(512);
    auto xrho = multiply([](double x) { return x / 2.0; }, rho);
    CHECK(xrho.jumps[0] == Approx(-0.5)); // X(c_1) s_1
    CHECK(xrho.jumps[1] == Approx(0.0).margin(0.0));
    CHECK(xrho.value(0.6) == Approx(0.3).margin(1e-12));
    // int x/2 over (0,1) = 1/4
    CHECK(pair(xrho, [](double) { return 1.0; }) == Approx(0.25).margin(1e-9));
}

TEST_CASE("compatibility defect flags elements leaving the space") {
    auto rho = tent2_density();
    CHECK(std::abs(rho.compat_defect()) < 1e-15);
    JumpFunction bad(GridFunction(0.0, 1.0, 16), {-1.0}, {1.0}, 0.05);
    CHECK(std::abs(bad.compat_defect()) == Approx(1.0));
}
