#ifndef VKG_NORMAL_FORM_HPP
#define VKG_NORMAL_FORM_HPP

#include <vector>

#include "vkg/resonance.hpp"

namespace vkg {

// Eigenvectors of the symbol at k = 0 and their duals under the bilinear
// pairing <u, v> = u1 v1 + u2 v2 (the unique normalization with
// <rho_a, rho_star_b> = delta_ab).
struct EigenBasisOrigin {
    Vec2 rho_plus{Complex(1, 0), Complex(0, 1)};
    Vec2 rho_minus{Complex(1, 0), Complex(0, -1)};
    Vec2 rho_star_plus{Complex(0.5, 0), Complex(0, -0.5)};
    Vec2 rho_star_minus{Complex(0.5, 0), Complex(0, 0.5)};

    Vec2 rho(int sign) const { return sign > 0 ? rho_plus : rho_minus; }
    Vec2 rho_star(int sign) const { return sign > 0 ? rho_star_plus : rho_star_minus; }
};

// Bilinear pairing u1 v1 + u2 v2 (no conjugation).
inline Complex pair_bilinear(const Vec2& u, const Vec2& v) {
    return u.a * v.a + u.b * v.b;
}

// Quadratic Fourier kernel: (kappa / (1 + k^2)) u1_at_kml * v1_at_l * e2.
Vec2 n2_kernel(const SystemParams& params, double k, double l, Complex u1_at_kml,
               Complex v1_at_l);

// Cubic Fourier kernel with prefactor beta / (1 + k^2).
Vec2 n3_kernel(const SystemParams& params, double k, double l1, double l2,
               Complex u1_at_kml1, Complex v1_at_l1ml2, Complex w1_at_l2);

// Transformed quadratic kernel Q2(k, l): the eight-branch sum weighted by
// 1 / phi2. Inputs are the 2-vector field values at k - l and l.
// Throws OutOfSupport if |k|, |l| or |k - l| exceeds k0.
Vec2 q2_kernel(const SystemParams& params, double k0, double k, double l,
               const Vec2& u_at_kml, const Vec2& v_at_l);

// Transformed cubic kernel Q3(k, l1, l2): the two-summand expression with
// inner quadratic insertions. Inputs are the field values at k - l1,
// l1 - l2 and l2.
Vec2 q3_kernel(const SystemParams& params, double k0, double k, double l1, double l2,
               const Vec2& u_at_kml1, const Vec2& v_at_l1ml2, const Vec2& w_at_l2);

struct CubicCoefficientRow {
    SignTuple3 j;
    Complex n3;
    Complex q3;
};

struct CubicCoefficientTable {
    std::vector<CubicCoefficientRow> rows;  // one per resonant tuple

    const CubicCoefficientRow& row(const SignTuple3& j) const;
};

// Origin coefficients of the resonant cubic interactions:
//   n3(j) = beta * j0 / (2i)
//   q3(j) = kappa^2 * (j0 / (2i)) * sum_h (h / (2i)) *
//           (1 / phi2_{j0 h j3}(0,0) + 1 / phi2_{j0 j1 h}(0,0))
CubicCoefficientTable cubic_coefficients_at_origin(const SystemParams& params);

struct CancellationVerdict {
    // Rows of the linear system n3(j) + q3(j) = 0 in the unknowns (beta, kappa^2),
    // with the common j0 / (2i) factor divided out.
    std::vector<std::array<double, 2>> system_rows;
    double determinant = 0.0;  // of the representative 2x2 subsystem
    int rank = 0;
    bool only_trivial_cancellation = false;
};

// Assembles the cancellation system over the resonant set and reports whether
// any nonzero (kappa^2, beta) zeroes every resonant coefficient. The table
// must be built with unit coefficients (kappa = beta = 1) so its entries are
// the basis coefficients themselves.
CancellationVerdict cancellation_verdict(const CubicCoefficientTable& table);

} // namespace vkg

#endif
