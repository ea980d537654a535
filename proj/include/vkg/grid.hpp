#ifndef VKG_GRID_HPP
#define VKG_GRID_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "vkg/spectral_core.hpp"

namespace vkg {

// Uniform periodic grid on [-L, L) with N modes; dk = pi / L.
// Frequencies follow FFT ordering: k_m = m*dk for m < N/2, (m - N)*dk above.
struct GridSpec {
    double half_length = 200.0;
    int n_modes = 4096;

    double dk() const { return M_PI / half_length; }
    double dx() const { return 2.0 * half_length / n_modes; }
    double nyquist() const { return 0.5 * n_modes * dk(); }
    double freq(int m) const {
        return dk() * (m < n_modes / 2 ? m : m - n_modes);
    }
    double x(int n) const { return -half_length + n * dx(); }

    // Validates the discretization against the PDE instance: the grid must
    // resolve well past the eigenvalue collision.
    void validate(const SystemParams& params) const;
};

// Two-component complex field sampled on the frequency grid: the transform
// of the first-order system state U = (u, v).
struct SpectralField {
    GridSpec grid;
    std::vector<Complex> c1;  // first component, FFT order
    std::vector<Complex> c2;  // second component

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g)
        : grid(g), c1(g.n_modes, Complex(0, 0)), c2(g.n_modes, Complex(0, 0)) {}

    Vec2 at(int m) const { return {c1[m], c2[m]}; }
    void set(int m, const Vec2& v) { c1[m] = v.a; c2[m] = v.b; }
    double max_abs() const;
};

// Critical/stable splitting: Uc = chi * field, Us = field - Uc (exact sum).
// Throws GridTooCoarse if fewer than 16 grid points fall inside [-k0, k0].
std::pair<SpectralField, SpectralField> split_modes(const SpectralField& field,
                                                    const ModeFilter& filter);

} // namespace vkg

#endif
