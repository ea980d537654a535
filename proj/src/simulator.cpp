#include "vkg/simulator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <mutex>
#include <thread>

namespace vkg {

double RunConfig::cutoff() const {
    return k0 > 0.0 ? k0 : 0.5 * collision_threshold(params);
}

void RunConfig::validate() const {
    params.validate();
    grid.validate(params);
    if (!(dt > 0.0)) throw ValidationError("dt > 0 required");
    if (dt > 0.1) throw ValidationError("dt <= 0.1 required");
    if (!(t_end >= dt)) throw ValidationError("t_end >= dt required");
    if (!(epsilon >= 0.0)) throw ValidationError("epsilon >= 0 required");
    if (!(ic_width > 0.0)) throw ValidationError("ic_width > 0 required");
    if (stride < 1) throw ValidationError("stride >= 1 required");
    double k1 = collision_threshold(params);
    if (k0 != 0.0 && (k0 <= 0.0 || k0 >= k1))
        throw ValidationError("k0 must lie in (0, k1)");
}

double NormRecord::eta_instant() const {
    double w = std::sqrt(1.0 + t);
    return uc_linfhat + w * uc_l1hat + w * us_linfhat + (1.0 + t) * us_l1hat;
}

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

struct Simulator::Impl {
    int n;        // retained modes
    int m;        // dealiased transform size (2n)
    double dk;
    double dx_fine;

    std::vector<double> freq;     // per retained mode
    std::vector<double> chi;      // mode-filter values
    std::vector<double> inv_1pk2;
    std::vector<Mat2> prop_full;  // e^{symbol * dt}
    std::vector<Mat2> prop_half;  // e^{symbol * dt/2}
    std::vector<int> sign;        // (-1)^m phase per padded index

    fftw_complex* buf_m = nullptr;
    fftw_plan fwd_m = nullptr, bwd_m = nullptr;
    fftw_complex* buf_n = nullptr;
    fftw_plan fwd_n = nullptr, bwd_n = nullptr;

    explicit Impl(const RunConfig& cfg) {
        n = cfg.grid.n_modes;
        m = 2 * n;
        dk = cfg.grid.dk();
        dx_fine = cfg.grid.dx() / 2.0;

        freq.resize(n);
        chi.resize(n);
        inv_1pk2.resize(n);
        prop_full.resize(n);
        prop_half.resize(n);
        ModeFilter filter(cfg.cutoff());
        for (int i = 0; i < n; ++i) {
            double k = cfg.grid.freq(i);
            freq[i] = k;
            chi[i] = filter.chi(k);
            inv_1pk2[i] = 1.0 / (1.0 + k * k);
            prop_full[i] = propagator(cfg.params, k, cfg.dt);
            prop_half[i] = propagator(cfg.params, k, 0.5 * cfg.dt);
        }
        sign.resize(m);
        for (int i = 0; i < m; ++i) sign[i] = (i % 2 == 0) ? 1 : -1;

        std::lock_guard<std::mutex> lock(plan_mutex());
        buf_m = fftw_alloc_complex(m);
        fwd_m = fftw_plan_dft_1d(m, buf_m, buf_m, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_m = fftw_plan_dft_1d(m, buf_m, buf_m, FFTW_BACKWARD, FFTW_ESTIMATE);
        buf_n = fftw_alloc_complex(n);
        fwd_n = fftw_plan_dft_1d(n, buf_n, buf_n, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_n = fftw_plan_dft_1d(n, buf_n, buf_n, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd_m);
        fftw_destroy_plan(bwd_m);
        fftw_destroy_plan(fwd_n);
        fftw_destroy_plan(bwd_n);
        fftw_free(buf_m);
        fftw_free(buf_n);
    }

    // Spectral (n modes) -> physical on the fine 2n grid, into buf_m.
    void to_fine_physical(const std::vector<Complex>& hat) const {
        for (int i = 0; i < m; ++i) buf_m[i][0] = buf_m[i][1] = 0.0;
        for (int i = 0; i < n; ++i) {
            int idx = i < n / 2 ? i : m - n + i;
            Complex v = hat[i] * static_cast<double>(sign[idx]);
            buf_m[idx][0] = v.real();
            buf_m[idx][1] = v.imag();
        }
        fftw_execute(bwd_m);
        for (int i = 0; i < m; ++i) {
            buf_m[i][0] *= dk;
            buf_m[i][1] *= dk;
        }
    }

    // Physical fine grid in buf_m -> retained spectral modes.
    void from_fine_physical(std::vector<Complex>& hat) const {
        fftw_execute(fwd_m);
        double scale = dx_fine / (2.0 * M_PI);
        for (int i = 0; i < n; ++i) {
            int idx = i < n / 2 ? i : m - n + i;
            hat[i] = scale * static_cast<double>(sign[idx]) *
                     Complex(buf_m[idx][0], buf_m[idx][1]);
        }
    }
};

Simulator::Simulator(const RunConfig& config) : config_(config) {
    config_.validate();
    impl_ = std::make_unique<Impl>(config_);
}

Simulator::~Simulator() = default;

SpectralField Simulator::init_field() const {
    const GridSpec& g = config_.grid;
    std::vector<double> u0(g.n_modes, 0.0), w0(g.n_modes, 0.0);
    if (config_.ic_kind == IcKind::gaussian) {
        double s2 = config_.ic_width * config_.ic_width;
        for (int i = 0; i < g.n_modes; ++i) {
            double x = g.x(i);
            u0[i] = config_.epsilon * std::exp(-x * x / s2);
        }
    } else {
        std::ifstream in(config_.ic_file);
        if (!in) throw BadInitialData("cannot open initial data file " + config_.ic_file);
        for (int i = 0; i < g.n_modes; ++i) {
            if (!(in >> u0[i] >> w0[i]))
                throw BadInitialData("initial data file too short");
        }
        for (int i = 0; i < g.n_modes; ++i) {
            if (!std::isfinite(u0[i]) || !std::isfinite(w0[i]))
                throw BadInitialData("non-finite initial data");
        }
        for (double& v : u0) v *= config_.epsilon;
        for (double& v : w0) v *= config_.epsilon;
    }

    // Coarse-grid transform of (u0, w0), then the diffusive change of variables.
    auto transform = [&](const std::vector<double>& phys, std::vector<Complex>& hat) {
        for (int i = 0; i < g.n_modes; ++i) {
            impl_->buf_n[i][0] = phys[i];
            impl_->buf_n[i][1] = 0.0;
        }
        fftw_execute(impl_->fwd_n);
        double scale = g.dx() / (2.0 * M_PI);
        hat.resize(g.n_modes);
        for (int i = 0; i < g.n_modes; ++i) {
            double s = (i % 2 == 0) ? 1.0 : -1.0;
            hat[i] = scale * s * Complex(impl_->buf_n[i][0], impl_->buf_n[i][1]);
        }
    };
    std::vector<Complex> u_hat, w_hat;
    transform(u0, u_hat);
    transform(w0, w_hat);

    SpectralField field(g);
    for (int i = 0; i < g.n_modes; ++i) {
        field.c1[i] = u_hat[i];
        field.c2[i] = to_diffusive(config_.params, impl_->freq[i], u_hat[i], w_hat[i]);
    }
    return field;
}

SpectralField Simulator::rhs_nonlinear(const SpectralField& field) const {
    SpectralField out(field.grid);
    double kappa = config_.params.kappa;
    double beta = config_.params.beta;
    if (kappa == 0.0 && beta == 0.0) return out;

    impl_->to_fine_physical(field.c1);
    for (int i = 0; i < impl_->m; ++i) {
        Complex u(impl_->buf_m[i][0], impl_->buf_m[i][1]);
        Complex nl = kappa * u * u + beta * u * u * u;
        impl_->buf_m[i][0] = nl.real();
        impl_->buf_m[i][1] = nl.imag();
    }
    impl_->from_fine_physical(out.c2);
    for (int i = 0; i < impl_->n; ++i) out.c2[i] *= impl_->inv_1pk2[i];
    return out;
}

SpectralField Simulator::step(const SpectralField& state, double dt) const {
    bool cached = dt == config_.dt;
    auto prop = [&](int i, bool half) -> Mat2 {
        if (cached) return half ? impl_->prop_half[i] : impl_->prop_full[i];
        return propagator(config_.params, impl_->freq[i], half ? 0.5 * dt : dt);
    };

    // Lawson midpoint: exact linear flow composed with an RK2 stage.
    SpectralField k1 = rhs_nonlinear(state);
    SpectralField mid(state.grid);
    for (int i = 0; i < impl_->n; ++i) {
        Vec2 v = state.at(i) + 0.5 * dt * k1.at(i);
        mid.set(i, prop(i, true) * v);
    }
    SpectralField k2 = rhs_nonlinear(mid);
    SpectralField next(state.grid);
    for (int i = 0; i < impl_->n; ++i) {
        Vec2 v = prop(i, false) * state.at(i) + dt * (prop(i, true) * k2.at(i));
        next.set(i, v);
    }
    if (next.max_abs() > kOverflowThreshold)
        throw Overflow("spectral amplitude exceeded the blow-up sentinel", -1.0);
    return next;
}

std::vector<double> Simulator::physical_u(const SpectralField& field) const {
    const GridSpec& g = field.grid;
    for (int i = 0; i < g.n_modes; ++i) {
        double s = (i % 2 == 0) ? 1.0 : -1.0;
        Complex v = field.c1[i] * s;
        impl_->buf_n[i][0] = v.real();
        impl_->buf_n[i][1] = v.imag();
    }
    fftw_execute(impl_->bwd_n);
    std::vector<double> u(g.n_modes);
    for (int i = 0; i < g.n_modes; ++i) u[i] = impl_->dk * impl_->buf_n[i][0];
    return u;
}

double Simulator::physical_imag_max(const SpectralField& field) const {
    const GridSpec& g = field.grid;
    for (int i = 0; i < g.n_modes; ++i) {
        double s = (i % 2 == 0) ? 1.0 : -1.0;
        Complex v = field.c1[i] * s;
        impl_->buf_n[i][0] = v.real();
        impl_->buf_n[i][1] = v.imag();
    }
    fftw_execute(impl_->bwd_n);
    double m = 0.0;
    for (int i = 0; i < g.n_modes; ++i)
        m = std::max(m, std::abs(impl_->dk * impl_->buf_n[i][1]));
    return m;
}

NormRecord Simulator::measure(const SpectralField& field, double t) const {
    NormRecord rec;
    rec.t = t;
    double dk = impl_->dk;
    for (int i = 0; i < impl_->n; ++i) {
        Vec2 v = field.at(i);
        double mag = v.norm();
        double c = impl_->chi[i];
        double mc = c * mag;
        double ms = (1.0 - c) * mag;
        rec.uc_l1hat += dk * mc;
        rec.us_l1hat += dk * ms;
        rec.uc_linfhat = std::max(rec.uc_linfhat, mc);
        rec.us_linfhat = std::max(rec.us_linfhat, ms);
        rec.u_linf_proxy += dk * mag;
    }
    rec.eta = rec.eta_instant();
    return rec;
}

RunResult Simulator::run() const { return run(init_field()); }

RunResult Simulator::run(const SpectralField& initial) const {
    RunResult result;
    SpectralField state = initial;
    long n_steps = std::lround(config_.t_end / config_.dt);
    double eta_sup = 0.0;

    auto record = [&](double t) {
        NormRecord rec = measure(state, t);
        eta_sup = std::max(eta_sup, rec.eta);
        rec.eta = eta_sup;
        result.records.push_back(rec);

        std::vector<double> u = physical_u(state);
        double total = 0.0, outer = 0.0;
        int n = static_cast<int>(u.size());
        int margin = n / 10;
        for (int i = 0; i < n; ++i) {
            double e = u[i] * u[i];
            total += e;
            if (i < margin / 2 || i >= n - margin / 2) outer += e;
        }
        if (total > 0.0)
            result.boundary_energy_frac =
                std::max(result.boundary_energy_frac, outer / total);
    };

    record(0.0);
    for (long s = 1; s <= n_steps; ++s) {
        try {
            state = step(state, config_.dt);
        } catch (const Overflow&) {
            result.overflowed = true;
            result.blowup_time = s * config_.dt;
            return result;
        }
        if (s % config_.stride == 0 || s == n_steps) record(s * config_.dt);
    }
    return result;
}

double decay_fit(const std::vector<NormRecord>& records, double t_min, double t_max) {
    if (!(t_min > 0.0) || t_max / t_min < 10.0)
        throw InsufficientWindow("decay fit needs at least one decade in t");
    std::vector<double> x, y;
    for (const NormRecord& r : records) {
        if (r.t < t_min || r.t > t_max || r.u_linf_proxy <= 0.0) continue;
        x.push_back(std::log1p(r.t));
        y.push_back(std::log(r.u_linf_proxy));
    }
    if (x.size() < 2)
        throw InsufficientWindow("fewer than two usable records in the fit window");
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

unsigned thread_budget() {
    const char* env = std::getenv("VKG_THREADS");
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (!env) return hw;
    long v = std::strtol(env, nullptr, 10);
    if (v <= 0) return hw;
    return static_cast<unsigned>(v);
}

LifespanTable lifespan_probe(const RunConfig& config_template,
                             const std::vector<double>& epsilon_ladder,
                             double horizon_budget, double growth_factor) {
    auto probe_one = [&](double eps) -> LifespanEntry {
        RunConfig cfg = config_template;
        cfg.epsilon = eps;
        cfg.t_end = horizon_budget;
        Simulator sim(cfg);
        RunResult res = sim.run();
        LifespanEntry entry;
        entry.epsilon = eps;
        entry.overflowed = res.overflowed;
        entry.bounded_until = res.overflowed ? res.blowup_time : horizon_budget;
        double plateau = res.records.empty() ? 0.0 : res.records.front().eta;
        for (const NormRecord& r : res.records) {
            if (r.eta > growth_factor * plateau) {
                entry.bounded_until = r.t;
                break;
            }
        }
        return entry;
    };

    LifespanTable table;
    unsigned budget = std::min<unsigned>(thread_budget(),
                                         static_cast<unsigned>(epsilon_ladder.size()));
    if (budget > 1) {
        std::vector<std::future<LifespanEntry>> futures;
        for (double eps : epsilon_ladder)
            futures.push_back(std::async(std::launch::async, probe_one, eps));
        for (auto& f : futures) table.entries.push_back(f.get());
    } else {
        for (double eps : epsilon_ladder) table.entries.push_back(probe_one(eps));
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const LifespanEntry& a, const LifespanEntry& b) {
                  return a.epsilon > b.epsilon;
              });
    table.note =
        "note: the exponential lifespan law T_eps = exp(eps0/eps) - 2 is not "
        "verifiable at desk scale; this table only probes monotonicity of the "
        "bounded horizon";
    return table;
}

} // namespace vkg
