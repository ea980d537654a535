#ifndef VKG_RESONANCE_HPP
#define VKG_RESONANCE_HPP

#include <array>
#include <vector>

#include "vkg/spectral_core.hpp"

namespace vkg {

// Sign branches (j0, j1, j2) in {-1, +1}^3 naming a quadratic phase.
struct SignTuple2 {
    int j0, j1, j2;

    bool operator==(const SignTuple2&) const = default;
    SignTuple2 flipped() const { return {-j0, -j1, -j2}; }
};

// Sign branches (j0, j1, j2, j3) in {-1, +1}^4 naming a cubic phase.
struct SignTuple3 {
    int j0, j1, j2, j3;

    bool operator==(const SignTuple3&) const = default;
    SignTuple3 flipped() const { return {-j0, -j1, -j2, -j3}; }
};

std::array<SignTuple2, 8> all_sign_tuples2();
std::array<SignTuple3, 16> all_sign_tuples3();

// phi2_j(k, l) = lambda_{j0}(k) - lambda_{j1}(k - l) - lambda_{j2}(l).
Complex phi2(const SystemParams& params, const SignTuple2& j, double k, double l);

// phi3_j(k, l1, l2) = lambda_{j0}(k) - lambda_{j1}(k - l1)
//                     - lambda_{j2}(l1 - l2) - lambda_{j3}(l2).
Complex phi3(const SystemParams& params, const SignTuple3& j, double k, double l1,
             double l2);

// The six cubic sign tuples whose phase vanishes at the origin; each satisfies
// j0 - j1 - j2 - j3 = 0.
const std::vector<SignTuple3>& resonant_set();

bool is_resonant(const SignTuple3& j);

struct PhaseFloorReport {
    int order = 2;            // 2 or 3
    double radius = 0.0;
    double grid_step = 0.0;
    double floor = 0.0;       // min |phi| over grid and sign tuples
    std::array<double, 3> argmin{0.0, 0.0, 0.0};  // (k, l1, l2); l2 unused for order 2
};

// Brute-force minimum of |phi| over a uniform grid in [-radius, radius]^d
// including the origin, taken over all sign tuples for order 2 and over the
// non-resonant tuples for order 3 (include_resonant widens to all 16).
PhaseFloorReport phase_floor(const SystemParams& params, int order, double radius,
                             double grid_step, bool include_resonant = false);

// Least-squares slope of log|phi3_j(s * direction)| against log s over the
// given scale ladder. Throws RankDeficientFit if all samples are below 1e-14.
double vanishing_order(const SystemParams& params, const SignTuple3& j,
                       const std::array<double, 3>& direction,
                       const std::vector<double>& scales);

// Ordinary least-squares slope of y against x. Shared by the fit-style
// operations; exposed for reuse in diagnostics.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace vkg

#endif
