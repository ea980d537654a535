#include "vkg/grid.hpp"

namespace vkg {

void GridSpec::validate(const SystemParams& params) const {
    if (n_modes < 64) throw ValidationError("n_modes >= 64 required");
    if ((n_modes & (n_modes - 1)) != 0)
        throw ValidationError("n_modes must be a power of two");
    if (half_length < 20.0) throw ValidationError("L >= 20 required");
    double k1 = collision_threshold(params);
    if (nyquist() < 4.0 * k1)
        throw ValidationError("Nyquist frequency below 4*k1; grid too coarse");
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        m = std::max(m, std::abs(c1[i]));
        m = std::max(m, std::abs(c2[i]));
    }
    return m;
}

std::pair<SpectralField, SpectralField> split_modes(const SpectralField& field,
                                                    const ModeFilter& filter) {
    int inside = 0;
    for (int m = 0; m < field.grid.n_modes; ++m)
        if (std::abs(field.grid.freq(m)) <= filter.k0) ++inside;
    if (inside < 16)
        throw GridTooCoarse("fewer than 16 grid points inside [-k0, k0]");

    SpectralField uc(field.grid);
    SpectralField us(field.grid);
    for (int m = 0; m < field.grid.n_modes; ++m) {
        double c = filter.chi(field.grid.freq(m));
        uc.c1[m] = c * field.c1[m];
        uc.c2[m] = c * field.c2[m];
        us.c1[m] = field.c1[m] - uc.c1[m];
        us.c2[m] = field.c2[m] - uc.c2[m];
    }
    return {std::move(uc), std::move(us)};
}

} // namespace vkg
