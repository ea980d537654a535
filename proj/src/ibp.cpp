#include <algorithm>
#include <cmath>
#include <limits>

#include "vkg/normal_form.hpp"
#include "vkg/simulator.hpp"

namespace vkg {

namespace {

// Band of retained frequencies m*dk with |m*dk| <= k0, stored by offset
// m + half_width so that frequency-index arithmetic stays exact.
struct Band {
    int half_width = 0;
    double dk = 0.0;

    int size() const { return 2 * half_width + 1; }
    bool contains(int m) const { return std::abs(m) <= half_width; }
    double freq(int m) const { return m * dk; }
};

using BandValues = std::vector<Vec2>;  // indexed by m + half_width

Vec2 band_at(const Band& band, const BandValues& values, int m) {
    return values[m + band.half_width];
}

// dk * sum_l N2(k, l)(Uc, Uc) over the band.
Vec2 n2_convolution(const SystemParams& params, const Band& band,
                    const BandValues& uc, int mk) {
    Vec2 acc;
    for (int ml = -band.half_width; ml <= band.half_width; ++ml) {
        if (!band.contains(mk - ml)) continue;
        acc += n2_kernel(params, band.freq(mk), band.freq(ml),
                         band_at(band, uc, mk - ml).a, band_at(band, uc, ml).a);
    }
    return band.dk * Complex(1.0, 0.0) * acc;
}

Vec2 q2_convolution(const SystemParams& params, double k0, const Band& band,
                    const BandValues& uc, int mk) {
    Vec2 acc;
    for (int ml = -band.half_width; ml <= band.half_width; ++ml) {
        if (!band.contains(mk - ml)) continue;
        acc += q2_kernel(params, k0, band.freq(mk), band.freq(ml),
                         band_at(band, uc, mk - ml), band_at(band, uc, ml));
    }
    return band.dk * Complex(1.0, 0.0) * acc;
}

Vec2 q3_convolution(const SystemParams& params, double k0, const Band& band,
                    const BandValues& uc, int mk) {
    Vec2 acc;
    for (int ml1 = -band.half_width; ml1 <= band.half_width; ++ml1) {
        if (!band.contains(mk - ml1)) continue;
        const Vec2 u = band_at(band, uc, mk - ml1);
        if (u.norm() == 0.0) continue;
        for (int ml2 = -band.half_width; ml2 <= band.half_width; ++ml2) {
            if (!band.contains(ml1 - ml2)) continue;
            acc += q3_kernel(params, k0, band.freq(mk), band.freq(ml1),
                             band.freq(ml2), u, band_at(band, uc, ml1 - ml2),
                             band_at(band, uc, ml2));
        }
    }
    return band.dk * band.dk * Complex(1.0, 0.0) * acc;
}

// Simpson weights for an even number of uniform intervals.
std::vector<double> simpson_weights(int n_points, double h) {
    std::vector<double> w(n_points, 0.0);
    for (int i = 0; i < n_points; ++i) {
        if (i == 0 || i == n_points - 1)
            w[i] = h / 3.0;
        else
            w[i] = (i % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
    }
    return w;
}

double fit_order(const std::vector<double>& eps, const std::vector<double>& norms) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (norms[i] > 1e-30) {
            x.push_back(std::log(eps[i]));
            y.push_back(std::log(norms[i]));
        }
    }
    if (x.size() < 2) return std::numeric_limits<double>::infinity();
    return ols_slope(x, y);
}

} // namespace

IbpScalingResult ibp_residual_scaling(const RunConfig& config_template,
                                      const std::vector<double>& epsilon_ladder) {
    if (epsilon_ladder.size() < 3)
        throw ValidationError("epsilon ladder needs at least 3 entries");

    RunConfig base = config_template;
    base.validate();
    const SystemParams& params = base.params;
    double k0 = base.cutoff();
    double dk = base.grid.dk();
    double horizon = base.t_end;

    Band band;
    band.dk = dk;
    band.half_width = static_cast<int>(std::floor(k0 / dk));

    // Probe output frequencies well inside the filter plateau.
    std::vector<int> probes = {0, static_cast<int>(std::lround(0.25 * k0 / dk)),
                               static_cast<int>(std::lround(0.5 * k0 / dk))};

    long n_steps = std::lround(horizon / base.dt);
    int snap_stride = 2;
    while (snap_stride > 1 &&
           (n_steps % snap_stride != 0 || (n_steps / snap_stride) % 2 != 0))
        --snap_stride;
    if (n_steps % snap_stride != 0 || (n_steps / snap_stride) % 2 != 0)
        throw ValidationError("ibp experiment needs an even number of snapshot intervals");
    int n_snaps = static_cast<int>(n_steps / snap_stride) + 1;
    double h = base.dt * snap_stride;
    std::vector<double> weights = simpson_weights(n_snaps, h);
    std::vector<double> coarse = simpson_weights((n_snaps - 1) / 2 + 1, 2.0 * h);

    ModeFilter filter(k0);

    IbpScalingResult result;
    std::vector<double> eps_list, lhs_list, res_list;

    for (double eps : epsilon_ladder) {
        RunConfig cfg = base;
        cfg.epsilon = eps;
        Simulator sim(cfg);

        // Trajectory snapshots of the critical part restricted to the band.
        std::vector<BandValues> snaps;
        snaps.reserve(n_snaps);
        SpectralField state = sim.init_field();
        auto capture = [&]() {
            BandValues uc(band.size());
            for (int m = -band.half_width; m <= band.half_width; ++m) {
                int idx = m >= 0 ? m : cfg.grid.n_modes + m;
                double c = filter.chi(band.freq(m));
                uc[m + band.half_width] = c * Complex(1.0, 0.0) * state.at(idx);
            }
            snaps.push_back(std::move(uc));
        };
        capture();
        for (long s = 1; s <= n_steps; ++s) {
            state = sim.step(state, cfg.dt);
            if (s % snap_stride == 0) capture();
        }

        IbpLadderPoint point;
        point.epsilon = eps;
        double quad_err_est = 0.0;

        for (int mk : probes) {
            double k = band.freq(mk);
            // Per-snapshot semigroup factors e^{(T - tau) symbol(k)}.
            std::vector<Mat2> props(n_snaps);
            for (int i = 0; i < n_snaps; ++i)
                props[i] = propagator(params, k, horizon - i * h);

            Vec2 lhs, lhs_coarse, q3_int;
            for (int i = 0; i < n_snaps; ++i) {
                Vec2 n2 = props[i] * n2_convolution(params, band, snaps[i], mk);
                lhs += weights[i] * Complex(1.0, 0.0) * n2;
                if (i % 2 == 0)
                    lhs_coarse += coarse[i / 2] * Complex(1.0, 0.0) * n2;
                q3_int += weights[i] * Complex(1.0, 0.0) *
                          (props[i] * q3_convolution(params, k0, band, snaps[i], mk));
            }
            Vec2 boundary = props.front() * q2_convolution(params, k0, band, snaps.front(), mk) -
                            q2_convolution(params, k0, band, snaps.back(), mk);
            Vec2 residual = lhs - boundary - q3_int;

            point.lhs_norm = std::max(point.lhs_norm, lhs.norm());
            point.boundary_norm = std::max(point.boundary_norm, boundary.norm());
            point.residual_norm = std::max(point.residual_norm, residual.norm());
            quad_err_est = std::max(quad_err_est, (lhs - lhs_coarse).norm());
        }

        if (point.boundary_norm > 0.0 && point.boundary_norm < 10.0 * quad_err_est)
            throw QuadratureTooCoarse("boundary terms below 10x the quadrature error");

        eps_list.push_back(eps);
        lhs_list.push_back(point.lhs_norm);
        res_list.push_back(point.residual_norm);
        result.points.push_back(point);
    }

    result.quadratic_order = fit_order(eps_list, lhs_list);
    result.residual_order = fit_order(eps_list, res_list);
    return result;
}

} // namespace vkg
