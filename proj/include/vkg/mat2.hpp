#ifndef VKG_MAT2_HPP
#define VKG_MAT2_HPP

#include <cmath>
#include <complex>

namespace vkg {

using Complex = std::complex<double>;

// 2-component complex vector (one frequency slot of the first-order system).
struct Vec2 {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};

    Vec2() = default;
    Vec2(Complex a_, Complex b_) : a(a_), b(b_) {}

    Vec2 operator+(const Vec2& o) const { return {a + o.a, b + o.b}; }
    Vec2 operator-(const Vec2& o) const { return {a - o.a, b - o.b}; }
    Vec2 operator*(Complex s) const { return {a * s, b * s}; }
    Vec2& operator+=(const Vec2& o) { a += o.a; b += o.b; return *this; }

    double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};

inline Vec2 operator*(Complex s, const Vec2& v) { return v * s; }

// Dense 2x2 complex matrix; the Fourier symbol, projections and propagators
// all live here.
struct Mat2 {
    Complex a11{0.0, 0.0}, a12{0.0, 0.0};
    Complex a21{0.0, 0.0}, a22{0.0, 0.0};

    Mat2() = default;
    Mat2(Complex m11, Complex m12, Complex m21, Complex m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {}

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator+(const Mat2& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    Mat2 operator*(Complex s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Vec2 operator*(const Vec2& v) const {
        return {a11 * v.a + a12 * v.b, a21 * v.a + a22 * v.b};
    }

    Complex trace() const { return a11 + a22; }
    Complex det() const { return a11 * a22 - a12 * a21; }

    double max_abs() const {
        return std::max(std::max(std::abs(a11), std::abs(a12)),
                        std::max(std::abs(a21), std::abs(a22)));
    }

    // Operator 2-norm (largest singular value), closed form via A^H A.
    double opnorm() const {
        double g11 = std::norm(a11) + std::norm(a21);
        double g22 = std::norm(a12) + std::norm(a22);
        Complex g12 = std::conj(a11) * a12 + std::conj(a21) * a22;
        double tr = g11 + g22;
        double disc = (g11 - g22) * (g11 - g22) + 4.0 * std::norm(g12);
        double lmax = 0.5 * (tr + std::sqrt(std::max(disc, 0.0)));
        return std::sqrt(std::max(lmax, 0.0));
    }
};

inline Mat2 operator*(Complex s, const Mat2& m) { return m * s; }

// Matrix exponential by scaling and squaring with a Taylor core. Robust at
// eigenvalue collisions where diagonalization breaks down.
inline Mat2 expm(const Mat2& m) {
    double scale = m.max_abs();
    int squarings = 0;
    Mat2 a = m;
    if (scale > 0.25) {
        squarings = static_cast<int>(std::ceil(std::log2(scale / 0.25)));
        a = m * Complex(std::ldexp(1.0, -squarings), 0.0);
    }
    Mat2 result = Mat2::identity();
    Mat2 term = Mat2::identity();
    for (int n = 1; n <= 20; ++n) {
        term = term * a * Complex(1.0 / n, 0.0);
        result = result + term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

} // namespace vkg

#endif
