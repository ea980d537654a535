#include "vkg/normal_form.hpp"

#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace vkg {

namespace {

const Complex kImag(0.0, 1.0);

// phi2 at the origin is exactly (j0 - j1 - j2) i.
Complex phi2_origin(int j0, int j1, int j2) {
    return Complex(0.0, static_cast<double>(j0 - j1 - j2));
}

void require_in_support(double k0, std::initializer_list<double> freqs) {
    for (double f : freqs) {
        if (std::abs(f) > k0)
            throw OutOfSupport("frequency outside the mode-filter support [-k0, k0]");
    }
}

} // namespace

Vec2 n2_kernel(const SystemParams& params, double k, double l, Complex u1_at_kml,
               Complex v1_at_l) {
    (void)l;
    Complex s = params.kappa / (1.0 + k * k) * u1_at_kml * v1_at_l;
    return {Complex(0.0, 0.0), s};
}

Vec2 n3_kernel(const SystemParams& params, double k, double l1, double l2,
               Complex u1_at_kml1, Complex v1_at_l1ml2, Complex w1_at_l2) {
    (void)l1;
    (void)l2;
    Complex s = params.beta / (1.0 + k * k) * u1_at_kml1 * v1_at_l1ml2 * w1_at_l2;
    return {Complex(0.0, 0.0), s};
}

Vec2 q2_kernel(const SystemParams& params, double k0, double k, double l,
               const Vec2& u_at_kml, const Vec2& v_at_l) {
    require_in_support(k0, {k, l, k - l});
    ProjectionPair pk = projections(params, k);
    ProjectionPair pkml = projections(params, k - l);
    ProjectionPair pl = projections(params, l);
    Vec2 out;
    for (const SignTuple2& j : all_sign_tuples2()) {
        const Mat2& p0 = j.j0 > 0 ? pk.p_plus : pk.p_minus;
        const Mat2& p1 = j.j1 > 0 ? pkml.p_plus : pkml.p_minus;
        const Mat2& p2 = j.j2 > 0 ? pl.p_plus : pl.p_minus;
        Vec2 n2 = n2_kernel(params, k, l, (p1 * u_at_kml).a, (p2 * v_at_l).a);
        out += (1.0 / phi2(params, j, k, l)) * (p0 * n2);
    }
    return out;
}

Vec2 q3_kernel(const SystemParams& params, double k0, double k, double l1, double l2,
               const Vec2& u_at_kml1, const Vec2& v_at_l1ml2, const Vec2& w_at_l2) {
    require_in_support(k0, {k, l1, l2, k - l1, l1 - l2});
    ProjectionPair pk = projections(params, k);
    ProjectionPair pkml2 = projections(params, k - l2);
    ProjectionPair pl2 = projections(params, l2);
    ProjectionPair pkml1 = projections(params, k - l1);
    ProjectionPair pl1 = projections(params, l1);

    // Inner quadratic insertions: output frequencies k - l2 and l1.
    Vec2 inner_first = n2_kernel(params, k - l2, l1 - l2, u_at_kml1.a, v_at_l1ml2.a);
    Vec2 inner_second = n2_kernel(params, l1, l2, v_at_l1ml2.a, w_at_l2.a);

    Vec2 out;
    for (const SignTuple2& j : all_sign_tuples2()) {
        const Mat2& p0 = j.j0 > 0 ? pk.p_plus : pk.p_minus;
        {
            const Mat2& p1 = j.j1 > 0 ? pkml2.p_plus : pkml2.p_minus;
            const Mat2& p2 = j.j2 > 0 ? pl2.p_plus : pl2.p_minus;
            Vec2 n2 = n2_kernel(params, k, l2, (p1 * inner_first).a, (p2 * w_at_l2).a);
            out += (1.0 / phi2(params, j, k, l2)) * (p0 * n2);
        }
        {
            const Mat2& p1 = j.j1 > 0 ? pkml1.p_plus : pkml1.p_minus;
            const Mat2& p2 = j.j2 > 0 ? pl1.p_plus : pl1.p_minus;
            Vec2 n2 = n2_kernel(params, k, l1, (p1 * u_at_kml1).a, (p2 * inner_second).a);
            out += (1.0 / phi2(params, j, k, l1)) * (p0 * n2);
        }
    }
    return out;
}

const CubicCoefficientRow& CubicCoefficientTable::row(const SignTuple3& j) const {
    for (const CubicCoefficientRow& r : rows) {
        if (r.j == j) return r;
    }
    throw std::out_of_range("sign tuple not in the resonant coefficient table");
}

CubicCoefficientTable cubic_coefficients_at_origin(const SystemParams& params) {
    CubicCoefficientTable table;
    for (const SignTuple3& j : resonant_set()) {
        Complex j0_half = Complex(j.j0, 0.0) / (2.0 * kImag);
        Complex n3 = params.beta * j0_half;
        Complex weight_sum(0.0, 0.0);
        for (int h : {1, -1}) {
            weight_sum += Complex(h, 0.0) / (2.0 * kImag) *
                          (1.0 / phi2_origin(j.j0, h, j.j3) +
                           1.0 / phi2_origin(j.j0, j.j1, h));
        }
        Complex q3 = params.kappa * params.kappa * j0_half * weight_sum;
        table.rows.push_back({j, n3, q3});
    }
    return table;
}

CancellationVerdict cancellation_verdict(const CubicCoefficientTable& table) {
    CancellationVerdict verdict;
    for (const CubicCoefficientRow& r : table.rows) {
        // Divide out the common j0 / (2i) factor; the remaining coefficients
        // of (beta, kappa^2) are real.
        Complex scale = 2.0 * kImag / Complex(r.j.j0, 0.0);
        verdict.system_rows.push_back(
            {(r.n3 * scale).real(), (r.q3 * scale).real()});
    }
    // Rank of the n x 2 system: 2 as soon as two rows are independent.
    double best = 0.0;
    for (std::size_t i = 0; i < verdict.system_rows.size(); ++i) {
        for (std::size_t m = i + 1; m < verdict.system_rows.size(); ++m) {
            double det = verdict.system_rows[i][0] * verdict.system_rows[m][1] -
                         verdict.system_rows[i][1] * verdict.system_rows[m][0];
            if (std::abs(det) > std::abs(best)) best = det;
        }
    }
    verdict.determinant = best;
    bool any_nonzero = false;
    for (const auto& row : verdict.system_rows)
        if (row[0] != 0.0 || row[1] != 0.0) any_nonzero = true;
    verdict.rank = best != 0.0 ? 2 : (any_nonzero ? 1 : 0);
    verdict.only_trivial_cancellation = verdict.rank == 2;
    return verdict;
}

} // namespace vkg
