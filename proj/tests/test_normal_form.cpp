#include <doctest.h>

#include <cmath>

#include "vkg/normal_form.hpp"

using namespace vkg;

namespace {

const SystemParams kDefault{1.0, 1.0, 1.0};
const Complex kHalfOverI(0.0, -0.5);  // 1 / (2i)

} // namespace

TEST_CASE("eigenbasis at the origin diagonalizes the pairing") {
    EigenBasisOrigin basis;
    CHECK(std::abs(pair_bilinear(basis.rho_plus, basis.rho_star_plus) - 1.0) < 1e-15);
    CHECK(std::abs(pair_bilinear(basis.rho_minus, basis.rho_star_minus) - 1.0) < 1e-15);
    CHECK(std::abs(pair_bilinear(basis.rho_plus, basis.rho_star_minus)) < 1e-15);
    CHECK(std::abs(pair_bilinear(basis.rho_minus, basis.rho_star_plus)) < 1e-15);
}

TEST_CASE("quadratic and cubic kernels have the stated closed form") {
    Complex u(0.4, -0.2), v(-1.1, 0.3), w(0.9, 0.7);
    double k = 1.3;
    Vec2 n2 = n2_kernel(kDefault, k, 0.2, u, v);
    CHECK(std::abs(n2.a) == 0.0);
    CHECK(std::abs(n2.b - u * v / (1.0 + k * k)) < 1e-15);

    Vec2 n3 = n3_kernel(kDefault, k, 0.2, -0.1, u, v, w);
    CHECK(std::abs(n3.a) == 0.0);
    CHECK(std::abs(n3.b - u * v * w / (1.0 + k * k)) < 1e-15);

    SystemParams scaled{1.0, 2.0, -3.0};
    CHECK(std::abs(n2_kernel(scaled, k, 0.2, u, v).b - 2.0 * n2.b) < 1e-15);
    CHECK(std::abs(n3_kernel(scaled, k, 0.2, -0.1, u, v, w).b + 3.0 * n3.b) < 1e-15);
}

TEST_CASE("transformed quadratic kernel solves the homological equation") {
    // Q2 is built so that symbol(k) Q2(u, v) - Q2(symbol(k-l) u, v)
    // - Q2(u, symbol(l) v) recovers N2(u, v).
    double k0 = 1.5;
    Vec2 u(Complex(0.7, 0.1), Complex(-0.2, 0.5));
    Vec2 v(Complex(-0.4, 0.9), Complex(0.3, 0.3));
    for (double k : {0.3, -0.5, 0.8}) {
        for (double l : {0.1, -0.25}) {
            Vec2 q = q2_kernel(kDefault, k0, k, l, u, v);
            Vec2 lhs = symbol(kDefault, k) * q -
                       q2_kernel(kDefault, k0, k, l, symbol(kDefault, k - l) * u, v) -
                       q2_kernel(kDefault, k0, k, l, u, symbol(kDefault, l) * v);
            Vec2 rhs = n2_kernel(kDefault, k, l, u.a, v.a);
            CHECK((lhs - rhs).norm() < 1e-12);
        }
    }
}

TEST_CASE("transformed kernels enforce the frequency support") {
    Vec2 u(Complex(1, 0), Complex(0, 0));
    CHECK_THROWS_AS(q2_kernel(kDefault, 0.5, 0.6, 0.1, u, u), OutOfSupport);
    CHECK_THROWS_AS(q2_kernel(kDefault, 0.5, 0.2, -0.4, u, u), OutOfSupport);
    CHECK_THROWS_AS(q3_kernel(kDefault, 0.5, 0.2, 0.1, 0.8, u, u, u), OutOfSupport);
    CHECK_NOTHROW(q2_kernel(kDefault, 0.5, 0.2, 0.1, u, u));
}

TEST_CASE("origin coefficients match direct kernel evaluations") {
    EigenBasisOrigin basis;
    CubicCoefficientTable table = cubic_coefficients_at_origin(kDefault);
    CHECK(table.rows.size() == 6);
    for (const CubicCoefficientRow& row : table.rows) {
        const SignTuple3& j = row.j;
        // Cubic part: project N3 on eigen-direction inputs.
        Vec2 n3 = n3_kernel(kDefault, 0.0, 0.0, 0.0, basis.rho(j.j1).a,
                            basis.rho(j.j2).a, basis.rho(j.j3).a);
        Complex n3_coeff = pair_bilinear(basis.rho_star(j.j0), n3);
        CHECK(std::abs(n3_coeff - row.n3) < 1e-14);

        // Transformed part: the full kernel at zero frequency on the same inputs.
        Vec2 q3 = q3_kernel(kDefault, 1.0, 0.0, 0.0, 0.0, basis.rho(j.j1),
                            basis.rho(j.j2), basis.rho(j.j3));
        Complex q3_coeff = pair_bilinear(basis.rho_star(j.j0), q3);
        CHECK(std::abs(q3_coeff - row.q3) < 1e-13);
    }
}

TEST_CASE("origin coefficient table has the known values and symmetry") {
    CubicCoefficientTable table = cubic_coefficients_at_origin(kDefault);
    CHECK(std::abs(table.row({1, -1, 1, 1}).n3 - kHalfOverI) < 1e-15);
    CHECK(std::abs(table.row({1, -1, 1, 1}).q3 - 2.0 / 3.0 * kHalfOverI) < 1e-15);
    CHECK(std::abs(table.row({1, 1, -1, 1}).q3 - 2.0 * kHalfOverI) < 1e-15);
    CHECK(std::abs(table.row({1, 1, 1, -1}).q3 - 2.0 / 3.0 * kHalfOverI) < 1e-15);
    for (const CubicCoefficientRow& row : table.rows) {
        const CubicCoefficientRow& flipped = table.row(row.j.flipped());
        CHECK(std::abs(flipped.n3 + row.n3) < 1e-15);
        CHECK(std::abs(flipped.q3 + row.q3) < 1e-15);
    }
}

TEST_CASE("coefficients scale with the nonlinearity parameters") {
    SystemParams scaled{1.0, 3.0, -2.0};
    CubicCoefficientTable unit = cubic_coefficients_at_origin(kDefault);
    CubicCoefficientTable table = cubic_coefficients_at_origin(scaled);
    for (const CubicCoefficientRow& row : table.rows) {
        const CubicCoefficientRow& base = unit.row(row.j);
        CHECK(std::abs(row.n3 + 2.0 * base.n3) < 1e-14);  // beta-linear
        CHECK(std::abs(row.q3 - 9.0 * base.q3) < 1e-14);  // kappa-squared
    }
}

TEST_CASE("cancellation system only admits the trivial solution") {
    CancellationVerdict verdict =
        cancellation_verdict(cubic_coefficients_at_origin(kDefault));
    CHECK(verdict.rank == 2);
    CHECK(verdict.only_trivial_cancellation);
    CHECK(std::abs(std::abs(verdict.determinant) - 4.0 / 3.0) < 1e-13);
    CHECK(verdict.system_rows.size() == 6);
    bool saw_23 = false, saw_2 = false;
    for (const std::array<double, 2>& row : verdict.system_rows) {
        CHECK(std::abs(row[0] - 1.0) < 1e-14);  // unit beta coefficient
        if (std::abs(row[1] - 2.0 / 3.0) < 1e-14) saw_23 = true;
        if (std::abs(row[1] - 2.0) < 1e-14) saw_2 = true;
    }
    CHECK(saw_23);
    CHECK(saw_2);
}
