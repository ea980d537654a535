#include "vkg/spectral_core.hpp"

#include <algorithm>
#include <cmath>

namespace vkg {

void SystemParams::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ValidationError("alpha > 0 required");
    if (!std::isfinite(kappa) || !std::isfinite(beta))
        throw ValidationError("kappa and beta must be finite");
}

Mat2 symbol(const SystemParams& params, double k) {
    double k2 = k * k;
    double diag = -0.5 * params.alpha * k2;
    double a21 = -1.0 + 0.25 * params.alpha * params.alpha * k2 * k2 / (1.0 + k2);
    return {Complex(diag, 0.0), Complex(1.0 + k2, 0.0), Complex(a21, 0.0), Complex(diag, 0.0)};
}

EigenData eigenvalues(const SystemParams& params, double k) {
    double k2 = k * k;
    double disc = 0.25 * params.alpha * params.alpha * k2 * k2 - 1.0 - k2;
    // Principal branch: purely imaginary below the collision, real above.
    Complex mu = disc >= 0.0 ? Complex(std::sqrt(disc), 0.0)
                             : Complex(0.0, std::sqrt(-disc));
    Complex half_trace(-0.5 * params.alpha * k2, 0.0);
    return EigenData{k, half_trace + mu, half_trace - mu, mu};
}

Complex eigenvalue_signed(const SystemParams& params, double k, int sign) {
    EigenData e = eigenvalues(params, k);
    return sign > 0 ? e.lambda_plus : e.lambda_minus;
}

double collision_threshold(const SystemParams& params) {
    double a2 = params.alpha * params.alpha;
    return std::sqrt((2.0 + 2.0 * std::sqrt(1.0 + a2)) / a2);
}

ProjectionPair projections(const SystemParams& params, double k) {
    double k1 = collision_threshold(params);
    if (std::abs(std::abs(k) - k1) < kCollisionMargin)
        throw DegenerateSymbol("eigenvalue collision near |k| = k1");
    Mat2 m = symbol(params, k);
    EigenData e = eigenvalues(params, k);
    Complex gap = e.lambda_plus - e.lambda_minus;
    Mat2 id = Mat2::identity();
    Mat2 p_plus = (m - id * e.lambda_minus) * (1.0 / gap);
    Mat2 p_minus = (m - id * e.lambda_plus) * (1.0 / (-gap));
    return {p_plus, p_minus};
}

Mat2 propagator(const SystemParams& params, double k, double t) {
    double k1 = collision_threshold(params);
    if (std::abs(std::abs(k) - k1) < kCollisionMargin)
        return expm(symbol(params, k) * Complex(t, 0.0));
    EigenData e = eigenvalues(params, k);
    ProjectionPair p = projections(params, k);
    return std::exp(e.lambda_plus * t) * p.p_plus + std::exp(e.lambda_minus * t) * p.p_minus;
}

DecayScanResult decay_scan(const SystemParams& params, double k0,
                           const std::vector<double>& k_grid,
                           const std::vector<double>& t_grid, double c_cap) {
    for (double k : k_grid) {
        if (std::abs(k) < 0.5 * k0)
            throw ScanFailed("k grid intersects the critical band (-k0/2, k0/2)");
    }
    std::vector<double> norms;
    norms.reserve(k_grid.size() * t_grid.size());
    std::vector<double> ts;
    ts.reserve(norms.capacity());
    for (double k : k_grid) {
        for (double t : t_grid) {
            norms.push_back(propagator(params, k, t).opnorm());
            ts.push_back(t);
        }
    }
    for (int m = 0; m <= 10; ++m) {
        double theta = std::ldexp(1.0, -m) / params.alpha;
        double c = 0.0;
        for (std::size_t i = 0; i < norms.size(); ++i)
            c = std::max(c, norms[i] * std::exp(theta * ts[i]));
        if (c <= c_cap) return {theta, c};
    }
    throw ScanFailed("no positive rate admits a prefactor below the cap");
}

double ModeFilter::chi(double k) const {
    double ak = std::abs(k);
    if (ak <= 0.5 * k0) return 1.0;
    if (ak >= k0) return 0.0;
    // s runs 1 -> 0 across the band [k0/2, k0].
    double s = (k0 - ak) / (0.5 * k0);
    double f = std::exp(-1.0 / s);
    double g = std::exp(-1.0 / (1.0 - s));
    return f / (f + g);
}

Complex to_diffusive(const SystemParams& params, double k, Complex u_hat, Complex w_hat) {
    double k2 = k * k;
    return (w_hat + 0.5 * params.alpha * k2 * u_hat) / (1.0 + k2);
}

Complex from_diffusive(const SystemParams& params, double k, Complex u_hat, Complex v_hat) {
    double k2 = k * k;
    return (1.0 + k2) * v_hat - 0.5 * params.alpha * k2 * u_hat;
}

} // namespace vkg
