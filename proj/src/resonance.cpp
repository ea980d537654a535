#include "vkg/resonance.hpp"

#include <cmath>
#include <limits>

namespace vkg {

std::array<SignTuple2, 8> all_sign_tuples2() {
    std::array<SignTuple2, 8> out;
    int idx = 0;
    for (int j0 : {1, -1})
        for (int j1 : {1, -1})
            for (int j2 : {1, -1}) out[idx++] = {j0, j1, j2};
    return out;
}

std::array<SignTuple3, 16> all_sign_tuples3() {
    std::array<SignTuple3, 16> out;
    int idx = 0;
    for (int j0 : {1, -1})
        for (int j1 : {1, -1})
            for (int j2 : {1, -1})
                for (int j3 : {1, -1}) out[idx++] = {j0, j1, j2, j3};
    return out;
}

Complex phi2(const SystemParams& params, const SignTuple2& j, double k, double l) {
    return eigenvalue_signed(params, k, j.j0) - eigenvalue_signed(params, k - l, j.j1) -
           eigenvalue_signed(params, l, j.j2);
}

Complex phi3(const SystemParams& params, const SignTuple3& j, double k, double l1,
             double l2) {
    return eigenvalue_signed(params, k, j.j0) - eigenvalue_signed(params, k - l1, j.j1) -
           eigenvalue_signed(params, l1 - l2, j.j2) - eigenvalue_signed(params, l2, j.j3);
}

const std::vector<SignTuple3>& resonant_set() {
    static const std::vector<SignTuple3> tuples = {
        {+1, -1, +1, +1}, {+1, +1, -1, +1}, {+1, +1, +1, -1},
        {-1, +1, -1, -1}, {-1, -1, +1, -1}, {-1, -1, -1, +1},
    };
    return tuples;
}

bool is_resonant(const SignTuple3& j) { return j.j0 - j.j1 - j.j2 - j.j3 == 0; }

namespace {

std::vector<double> scan_axis(double radius, double step) {
    // Symmetric grid through the origin, deterministic order.
    int n = static_cast<int>(std::floor(radius / step + 1e-9));
    std::vector<double> axis;
    axis.reserve(2 * n + 1);
    for (int i = -n; i <= n; ++i) axis.push_back(i * step);
    return axis;
}

} // namespace

PhaseFloorReport phase_floor(const SystemParams& params, int order, double radius,
                             double grid_step, bool include_resonant) {
    PhaseFloorReport report;
    report.order = order;
    report.radius = radius;
    report.grid_step = grid_step;
    report.floor = std::numeric_limits<double>::infinity();

    std::vector<double> axis = scan_axis(radius, grid_step);
    if (order == 2) {
        for (double k : axis) {
            for (double l : axis) {
                for (const SignTuple2& j : all_sign_tuples2()) {
                    double v = std::abs(phi2(params, j, k, l));
                    if (v < report.floor) {
                        report.floor = v;
                        report.argmin = {k, l, 0.0};
                    }
                }
            }
        }
    } else {
        for (double k : axis) {
            for (double l1 : axis) {
                for (double l2 : axis) {
                    for (const SignTuple3& j : all_sign_tuples3()) {
                        if (!include_resonant && is_resonant(j)) continue;
                        double v = std::abs(phi3(params, j, k, l1, l2));
                        if (v < report.floor) {
                            report.floor = v;
                            report.argmin = {k, l1, l2};
                        }
                    }
                }
            }
        }
    }
    return report;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double vanishing_order(const SystemParams& params, const SignTuple3& j,
                       const std::array<double, 3>& direction,
                       const std::vector<double>& scales) {
    std::vector<double> log_s, log_phi;
    for (double s : scales) {
        double v = std::abs(
            phi3(params, j, s * direction[0], s * direction[1], s * direction[2]));
        if (v < 1e-14) continue;
        log_s.push_back(std::log(s));
        log_phi.push_back(std::log(v));
    }
    if (log_s.size() < 2)
        throw RankDeficientFit("phase values below 1e-14 along the sampled ray");
    return ols_slope(log_s, log_phi);
}

} // namespace vkg
