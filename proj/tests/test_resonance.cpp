#include <doctest.h>

#include <cmath>

#include "vkg/resonance.hpp"

using namespace vkg;

namespace {

const SystemParams kDefault{1.0, 1.0, 1.0};

} // namespace

TEST_CASE("quadratic phases at the origin are exact sign combinations") {
    for (const SignTuple2& j : all_sign_tuples2()) {
        Complex v = phi2(kDefault, j, 0.0, 0.0);
        CHECK(v == Complex(0.0, static_cast<double>(j.j0 - j.j1 - j.j2)));
    }
}

TEST_CASE("cubic phases at the origin are exact sign combinations") {
    for (const SignTuple3& j : all_sign_tuples3()) {
        Complex v = phi3(kDefault, j, 0.0, 0.0, 0.0);
        CHECK(v == Complex(0.0, static_cast<double>(j.j0 - j.j1 - j.j2 - j.j3)));
    }
}

TEST_CASE("resonant set is the six zero-sum tuples") {
    const std::vector<SignTuple3>& res = resonant_set();
    CHECK(res.size() == 6);
    int matched = 0;
    for (const SignTuple3& j : all_sign_tuples3()) {
        bool zero_sum = j.j0 - j.j1 - j.j2 - j.j3 == 0;
        CHECK(is_resonant(j) == zero_sum);
        bool listed = false;
        for (const SignTuple3& r : res)
            if (r == j) listed = true;
        CHECK(listed == zero_sum);
        if (listed) ++matched;
    }
    CHECK(matched == 6);
}

TEST_CASE("phases conjugate under a global sign flip below the collision") {
    // lambda_{-j}(k) = conj(lambda_j(k)) for |k| < k1, so flipping every sign
    // conjugates the phase.
    for (const SignTuple2& j : all_sign_tuples2()) {
        for (double k : {0.1, 0.6, -0.4}) {
            for (double l : {0.05, -0.3}) {
                Complex v = phi2(kDefault, j, k, l);
                Complex w = phi2(kDefault, j.flipped(), k, l);
                CHECK(std::abs(w - std::conj(v)) < 1e-14);
            }
        }
    }
    for (const SignTuple3& j : all_sign_tuples3()) {
        Complex v = phi3(kDefault, j, 0.2, -0.1, 0.15);
        Complex w = phi3(kDefault, j.flipped(), 0.2, -0.1, 0.15);
        CHECK(std::abs(w - std::conj(v)) < 1e-14);
    }
}

TEST_CASE("quadratic phase floor stays near its origin value") {
    PhaseFloorReport report = phase_floor(kDefault, 2, 0.05, 0.01);
    CHECK(report.floor >= 0.9);
    CHECK(report.floor <= 1.0);  // some tuple reaches |j0 - j1 - j2| = 1 at 0
    CHECK(report.order == 2);
}

TEST_CASE("cubic phase floor depends on the resonant tuples") {
    PhaseFloorReport without = phase_floor(kDefault, 3, 0.05, 0.025);
    CHECK(without.floor >= 1.9);  // non-resonant origin values are 2 or 4
    PhaseFloorReport with = phase_floor(kDefault, 3, 0.05, 0.025, true);
    CHECK(with.floor <= 1e-2);    // resonant tuples vanish at the origin
}

TEST_CASE("resonant cubic phase vanishes to second order along the axes") {
    SignTuple3 j{1, -1, 1, 1};
    std::vector<double> scales = {0.1, 0.05, 0.025, 0.0125};
    for (const std::array<double, 3>& axis :
         {std::array<double, 3>{1.0, 0.0, 0.0}, std::array<double, 3>{0.0, 1.0, 0.0},
          std::array<double, 3>{0.0, 0.0, 1.0}}) {
        double order = vanishing_order(kDefault, j, axis, scales);
        CHECK(order == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("vanishing order rejects rays with no usable samples") {
    SignTuple3 j{1, -1, 1, 1};
    CHECK_THROWS_AS(
        vanishing_order(kDefault, j, {1.0, 0.0, 0.0}, {1e-8, 5e-9, 2e-9}),
        RankDeficientFit);
}

TEST_CASE("least-squares slope recovers an exact line") {
    std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
    std::vector<double> y = {1.0, 0.25, -0.5, -1.25};
    CHECK(ols_slope(x, y) == doctest::Approx(-0.75).epsilon(1e-12));
}
