#ifndef VKG_SPECTRAL_CORE_HPP
#define VKG_SPECTRAL_CORE_HPP

#include <vector>

#include "vkg/errors.hpp"
#include "vkg/mat2.hpp"

namespace vkg {

// Parameters of the PDE instance u_tt + u - u_xx - alpha*u_xxt = kappa*u^2 + beta*u^3.
struct SystemParams {
    double alpha = 1.0;  // viscosity, must be > 0
    double kappa = 1.0;  // quadratic coefficient
    double beta = 1.0;   // cubic coefficient

    void validate() const;
};

// Exclusion margin around the eigenvalue collision |k| = k1 inside which
// spectral projections are refused.
inline constexpr double kCollisionMargin = 1e-3;

struct EigenData {
    double k = 0.0;
    Complex lambda_plus;
    Complex lambda_minus;
    Complex mu;  // principal branch root of alpha^2 k^4 / 4 - 1 - k^2
};

struct ProjectionPair {
    Mat2 p_plus;
    Mat2 p_minus;
};

// Fourier symbol of the linear operator at frequency k.
Mat2 symbol(const SystemParams& params, double k);

// lambda_pm(k) = -alpha k^2 / 2 +- mu(k), mu the principal complex square root.
EigenData eigenvalues(const SystemParams& params, double k);

// lambda_{+1} resp. lambda_{-1} selected by a sign index.
Complex eigenvalue_signed(const SystemParams& params, double k, int sign);

// k1, the frequency at which the two eigenvalue branches collide.
double collision_threshold(const SystemParams& params);

// Rank-1 spectral projections P_pm = (symbol - lambda_mp I) / (lambda_pm - lambda_mp).
// Throws DegenerateSymbol within kCollisionMargin of |k| = k1.
ProjectionPair projections(const SystemParams& params, double k);

// e^{symbol(k) t}. Uses the eigen-decomposition away from the collision and
// falls back to scaling-and-squaring near it, so it is defined for every k.
Mat2 propagator(const SystemParams& params, double k, double t);

struct DecayScanResult {
    double theta0 = 0.0;  // certified exponential rate
    double C = 0.0;       // smallest prefactor observed for that rate
};

// Scans ||e^{symbol(k) t}|| over the given grids and certifies the largest
// rate theta0 from the ladder {2^-m / alpha, m = 0..10} whose prefactor stays
// below c_cap. Throws ScanFailed if no candidate qualifies.
DecayScanResult decay_scan(const SystemParams& params, double k0,
                           const std::vector<double>& k_grid,
                           const std::vector<double>& t_grid,
                           double c_cap = 100.0);

// Smooth frequency cutoff: 1 on [-k0/2, k0/2], 0 outside (-k0, k0),
// exp(-1/s) smooth step across the transition bands.
struct ModeFilter {
    double k0;

    explicit ModeFilter(double cutoff) : k0(cutoff) {}
    double chi(double k) const;
};

// Diffusive change of variables, per frequency:
// v_hat = (w_hat + (alpha/2) k^2 u_hat) / (1 + k^2), and its inverse.
Complex to_diffusive(const SystemParams& params, double k, Complex u_hat, Complex w_hat);
Complex from_diffusive(const SystemParams& params, double k, Complex u_hat, Complex v_hat);

} // namespace vkg

#endif
