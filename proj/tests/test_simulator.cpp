#include <doctest.h>

#include <cmath>
#include <vector>

#include "vkg/simulator.hpp"

using namespace vkg;

namespace {

RunConfig small_config() {
    RunConfig cfg;
    cfg.params = SystemParams{1.0, 1.0, 1.0};
    cfg.grid = GridSpec{40.0, 256};
    cfg.dt = 0.05;
    cfg.t_end = 2.0;
    cfg.epsilon = 0.1;
    cfg.ic_width = 4.0;
    cfg.stride = 10;
    return cfg;
}

} // namespace

TEST_CASE("grid invariants are enforced") {
    SystemParams p{1.0, 1.0, 1.0};
    CHECK_NOTHROW((GridSpec{40.0, 256}.validate(p)));
    CHECK_THROWS_AS((GridSpec{40.0, 200}.validate(p)), ValidationError);  // not 2^m
    CHECK_THROWS_AS((GridSpec{40.0, 32}.validate(p)), ValidationError);   // N < 64
    CHECK_THROWS_AS((GridSpec{10.0, 256}.validate(p)), ValidationError);  // L < 20
    CHECK_THROWS_AS((GridSpec{200.0, 256}.validate(p)), ValidationError); // Nyquist
    GridSpec g{40.0, 256};
    CHECK(g.dk() == doctest::Approx(M_PI / 40.0));
    CHECK(g.freq(0) == 0.0);
    CHECK(g.freq(1) == doctest::Approx(g.dk()));
    CHECK(g.freq(255) == doctest::Approx(-g.dk()));
    CHECK(g.x(0) == -40.0);
}

TEST_CASE("run config validation") {
    RunConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    RunConfig bad = cfg;
    bad.dt = 0.2;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.k0 = 5.0;  // beyond the collision
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.stride = 0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    CHECK(cfg.cutoff() ==
          doctest::Approx(0.5 * collision_threshold(cfg.params)));
}

TEST_CASE("mode splitting is an exact partition with limited support") {
    RunConfig cfg = small_config();
    Simulator sim(cfg);
    SpectralField field = sim.init_field();
    ModeFilter filter(cfg.cutoff());
    auto [uc, us] = split_modes(field, filter);
    for (int m = 0; m < cfg.grid.n_modes; ++m) {
        CHECK((uc.at(m) + us.at(m) - field.at(m)).norm() < 1e-15);
        if (std::abs(cfg.grid.freq(m)) >= cfg.cutoff())
            CHECK(uc.at(m).norm() == 0.0);
    }
    CHECK_THROWS_AS(split_modes(field, ModeFilter(0.2)), GridTooCoarse);
}

TEST_CASE("gaussian initial data matches the analytic transform") {
    RunConfig cfg = small_config();
    Simulator sim(cfg);
    SpectralField field = sim.init_field();
    double sigma = cfg.ic_width;
    double amp = cfg.epsilon * sigma / (2.0 * std::sqrt(M_PI));
    for (int m = 0; m < cfg.grid.n_modes; ++m) {
        double k = cfg.grid.freq(m);
        double expected = amp * std::exp(-k * k * sigma * sigma / 4.0);
        CHECK(std::abs(field.c1[m] - Complex(expected, 0.0)) < 1e-8);
        // w0 = 0 puts the second slot on the diffusive image of u alone.
        Complex v = to_diffusive(cfg.params, k, field.c1[m], Complex(0.0, 0.0));
        CHECK(std::abs(field.c2[m] - v) < 1e-12);
    }
}

TEST_CASE("initial data scales linearly and vanishes at epsilon zero") {
    RunConfig cfg = small_config();
    Simulator sim_full(cfg);
    RunConfig half_cfg = cfg;
    half_cfg.epsilon = 0.5 * cfg.epsilon;
    Simulator sim_half(half_cfg);
    SpectralField full = sim_full.init_field();
    SpectralField half = sim_half.init_field();
    double proxy_full = 0.0, proxy_half = 0.0, linf_full = 0.0, linf_half = 0.0;
    for (int m = 0; m < cfg.grid.n_modes; ++m) {
        proxy_full += full.at(m).norm();
        proxy_half += half.at(m).norm();
        linf_full = std::max(linf_full, full.at(m).norm());
        linf_half = std::max(linf_half, half.at(m).norm());
        CHECK((full.at(m) - half.at(m) * Complex(2.0, 0.0)).norm() <
              1e-12 * cfg.epsilon);
    }
    CHECK(proxy_half * 2.0 == doctest::Approx(proxy_full).epsilon(1e-12));
    CHECK(linf_half * 2.0 == doctest::Approx(linf_full).epsilon(1e-12));

    RunConfig zero_cfg = cfg;
    zero_cfg.epsilon = 0.0;
    Simulator sim_zero(zero_cfg);
    CHECK(sim_zero.init_field().max_abs() == 0.0);
}

TEST_CASE("initial data is conjugate-symmetric") {
    RunConfig cfg = small_config();
    Simulator sim(cfg);
    SpectralField field = sim.init_field();
    int n = cfg.grid.n_modes;
    for (int m = 1; m < n / 2; ++m) {
        CHECK(std::abs(field.c1[n - m] - std::conj(field.c1[m])) < 1e-15);
        CHECK(std::abs(field.c2[n - m] - std::conj(field.c2[m])) < 1e-15);
    }
}

TEST_CASE("custom initial data validation") {
    RunConfig cfg = small_config();
    cfg.ic_kind = IcKind::custom;
    cfg.ic_file = "definitely_missing.dat";
    Simulator sim(cfg);
    CHECK_THROWS_AS(sim.init_field(), BadInitialData);
}

TEST_CASE("nonlinear right-hand side matches a direct convolution") {
    RunConfig cfg = small_config();
    int n = cfg.grid.n_modes;
    double dk = cfg.grid.dk();

    // A real field with a handful of populated modes.
    SpectralField field((cfg.grid));
    auto put = [&](int m, Complex v) {
        field.c1[(m % n + n) % n] = v;
        field.c1[((-m) % n + n) % n] = std::conj(v);
    };
    put(0, Complex(0.31, 0.0));
    put(1, Complex(0.2, -0.1));
    put(2, Complex(-0.05, 0.07));
    put(3, Complex(0.01, 0.02));

    auto hat = [&](int m) -> Complex {
        if (std::abs(m) > 3) return Complex(0.0, 0.0);
        return field.c1[(m % n + n) % n];
    };

    SUBCASE("quadratic term") {
        RunConfig quad = cfg;
        quad.params.beta = 0.0;
        Simulator sim(quad);
        SpectralField out = sim.rhs_nonlinear(field);
        for (int m = -7; m <= 7; ++m) {
            Complex conv(0.0, 0.0);
            for (int l = -3; l <= 3; ++l) conv += hat(m - l) * hat(l);
            double k = m * dk;
            Complex expected = quad.params.kappa * dk * conv / (1.0 + k * k);
            int idx = (m % n + n) % n;
            CHECK(std::abs(out.c2[idx] - expected) < 1e-13);
            CHECK(std::abs(out.c1[idx]) == 0.0);
        }
    }

    SUBCASE("cubic term") {
        RunConfig cub = cfg;
        cub.params.kappa = 0.0;
        Simulator sim(cub);
        SpectralField out = sim.rhs_nonlinear(field);
        for (int m = -5; m <= 5; ++m) {
            Complex conv(0.0, 0.0);
            for (int l1 = -6; l1 <= 6; ++l1)
                for (int l2 = -3; l2 <= 3; ++l2)
                    conv += hat(m - l1) * hat(l1 - l2) * hat(l2);
            double k = m * dk;
            Complex expected = cub.params.beta * dk * dk * conv / (1.0 + k * k);
            int idx = (m % n + n) % n;
            CHECK(std::abs(out.c2[idx] - expected) < 1e-13);
        }
    }

    SUBCASE("zero field maps to zero") {
        Simulator sim(cfg);
        SpectralField zero((cfg.grid));
        CHECK(sim.rhs_nonlinear(zero).max_abs() == 0.0);
    }
}

TEST_CASE("single-mode quadratic input lands on the doubled frequency") {
    RunConfig cfg = small_config();
    cfg.params.beta = 0.0;
    int n = cfg.grid.n_modes;
    double dk = cfg.grid.dk();
    SpectralField field((cfg.grid));
    int m0 = 4;
    Complex a(0.3, 0.0);
    field.c1[m0] = a;
    field.c1[n - m0] = std::conj(a);
    Simulator sim(cfg);
    SpectralField out = sim.rhs_nonlinear(field);
    // Hand convolution: modes 0 and +-2 m0 only.
    double k2 = 2.0 * m0 * dk;
    CHECK(std::abs(out.c2[2 * m0] - dk * a * a / (1.0 + k2 * k2)) < 1e-14);
    CHECK(std::abs(out.c2[0] - dk * 2.0 * a * std::conj(a)) < 1e-14);
    for (int m = 1; m < n / 2; ++m) {
        if (m == 2 * m0) continue;
        CHECK(std::abs(out.c2[m]) < 1e-14);
    }
}

TEST_CASE("linear steps reproduce the exact propagator") {
    RunConfig cfg = small_config();
    cfg.params = SystemParams{1.0, 0.0, 0.0};
    Simulator sim(cfg);
    SpectralField state = sim.init_field();
    SpectralField initial = state;
    state = sim.step(state, cfg.dt);
    double scale = initial.max_abs();
    for (int m = 0; m < cfg.grid.n_modes; ++m) {
        Vec2 exact = propagator(cfg.params, cfg.grid.freq(m), cfg.dt) * initial.at(m);
        CHECK((state.at(m) - exact).norm() <= 1e-12 * scale);
    }
}

TEST_CASE("linear zero mode is a norm-preserving rotation") {
    RunConfig cfg = small_config();
    cfg.params = SystemParams{1.0, 0.0, 0.0};
    Simulator sim(cfg);
    SpectralField state = sim.init_field();
    double initial = state.at(0).norm();
    for (int s = 0; s < 50; ++s) {
        state = sim.step(state, cfg.dt);
        CHECK(std::abs(state.at(0).norm() - initial) < 1e-12 * initial);
    }
}

TEST_CASE("linear per-mode envelope bound") {
    RunConfig cfg = small_config();
    cfg.params = SystemParams{1.0, 0.0, 0.0};
    Simulator sim(cfg);
    SpectralField state = sim.init_field();
    SpectralField initial = state;
    long steps = std::lround(cfg.t_end / cfg.dt);
    for (long s = 0; s < steps; ++s) state = sim.step(state, cfg.dt);
    for (int m = 0; m < cfg.grid.n_modes; ++m) {
        double bound = (1.0 + 1e-8) *
                       propagator(cfg.params, cfg.grid.freq(m), cfg.t_end).opnorm() *
                       initial.at(m).norm();
        CHECK(state.at(m).norm() <= bound + 1e-300);
    }
}

TEST_CASE("physical field stays real under nonlinear evolution") {
    RunConfig cfg = small_config();
    Simulator sim(cfg);
    SpectralField state = sim.init_field();
    for (int s = 0; s < 20; ++s) state = sim.step(state, cfg.dt);
    CHECK(sim.physical_imag_max(state) < 1e-10);
}

TEST_CASE("splitting and recombination commute with the step") {
    RunConfig cfg = small_config();
    Simulator sim(cfg);
    SpectralField state = sim.init_field();
    ModeFilter filter(cfg.cutoff());
    auto [uc, us] = split_modes(state, filter);
    SpectralField recombined((cfg.grid));
    for (int m = 0; m < cfg.grid.n_modes; ++m)
        recombined.set(m, uc.at(m) + us.at(m));
    SpectralField a = sim.step(state, cfg.dt);
    SpectralField b = sim.step(recombined, cfg.dt);
    for (int m = 0; m < cfg.grid.n_modes; ++m)
        CHECK((a.at(m) - b.at(m)).norm() < 1e-13);
}

TEST_CASE("overflow sentinel aborts the step and the run reports it") {
    RunConfig cfg = small_config();
    Simulator sim(cfg);
    SpectralField huge((cfg.grid));
    huge.c1[0] = Complex(9e5, 0.0);
    huge.c1[1] = Complex(9e5, 0.0);
    huge.c1[cfg.grid.n_modes - 1] = Complex(9e5, 0.0);
    CHECK_THROWS_AS(sim.step(huge, cfg.dt), Overflow);
    RunResult res = sim.run(huge);
    CHECK(res.overflowed);
    CHECK(res.blowup_time > 0.0);
}

TEST_CASE("norm records and the template value") {
    RunConfig cfg = small_config();
    Simulator sim(cfg);
    SpectralField field = sim.init_field();
    NormRecord rec = sim.measure(field, 3.0);
    double w = std::sqrt(4.0);
    CHECK(rec.eta ==
          doctest::Approx(rec.uc_linfhat + w * rec.uc_l1hat + w * rec.us_linfhat +
                          4.0 * rec.us_l1hat));
    CHECK(rec.uc_l1hat > 0.0);
    CHECK(rec.u_linf_proxy >=
          rec.uc_l1hat + rec.us_l1hat - 1e-12 * rec.u_linf_proxy);
}

TEST_CASE("zero data runs stay identically zero") {
    RunConfig cfg = small_config();
    cfg.epsilon = 0.0;
    Simulator sim(cfg);
    RunResult res = sim.run();
    CHECK(!res.overflowed);
    for (const NormRecord& r : res.records) {
        CHECK(r.u_linf_proxy == 0.0);
        CHECK(r.eta == 0.0);
    }
}

TEST_CASE("linear critical norms never grow") {
    RunConfig cfg = small_config();
    cfg.params = SystemParams{1.0, 0.0, 0.0};
    cfg.t_end = 20.0;
    Simulator sim(cfg);
    RunResult res = sim.run();
    for (std::size_t i = 1; i < res.records.size(); ++i)
        CHECK(res.records[i].uc_linfhat <=
              res.records[i - 1].uc_linfhat + 1e-10);
}

TEST_CASE("recorded eta is a running supremum") {
    RunConfig cfg = small_config();
    cfg.t_end = 20.0;
    Simulator sim(cfg);
    RunResult res = sim.run();
    for (std::size_t i = 1; i < res.records.size(); ++i)
        CHECK(res.records[i].eta >= res.records[i - 1].eta);
}

TEST_CASE("small data keeps the template value within twice its start") {
    RunConfig cfg = small_config();
    cfg.epsilon = 0.01;
    cfg.t_end = 40.0;
    Simulator sim(cfg);
    RunResult res = sim.run();
    REQUIRE(!res.records.empty());
    double eta0 = res.records.front().eta;
    CHECK(res.records.back().eta <= 2.0 * eta0);
}

TEST_CASE("stable norms track the square of the critical norms late in a run") {
    RunConfig cfg = small_config();
    cfg.epsilon = 0.1;
    cfg.t_end = 60.0;
    cfg.stride = 40;
    Simulator sim(cfg);
    RunResult res = sim.run();
    REQUIRE(!res.overflowed);
    double c0 = 1e300;
    int late = 0;
    for (const NormRecord& r : res.records) {
        if (r.t < 30.0) continue;
        ++late;
        CHECK(r.us_l1hat > 0.0);
        c0 = std::min(c0, r.us_l1hat / (r.uc_l1hat * r.uc_l1hat));
    }
    CHECK(late >= 5);
    // Quadratic forcing keeps the stable band from decaying exponentially.
    CHECK(c0 > 1e-6);
}

TEST_CASE("decay fit on synthetic and simulated records") {
    std::vector<NormRecord> synth;
    for (double t = 0.0; t <= 200.0; t += 1.0) {
        NormRecord r;
        r.t = t;
        r.u_linf_proxy = 3.0 / std::sqrt(1.0 + t);
        synth.push_back(r);
    }
    CHECK(decay_fit(synth, 1.0, 200.0) == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK_THROWS_AS(decay_fit(synth, 30.0, 200.0), InsufficientWindow);

    RunConfig cfg;
    cfg.params = SystemParams{1.0, 0.0, 0.0};
    cfg.grid = GridSpec{200.0, 2048};
    cfg.dt = 0.05;
    cfg.t_end = 200.0;
    cfg.epsilon = 0.01;
    cfg.ic_width = 2.0;  // broadband data; the critical band dominates late
    cfg.stride = 20;
    Simulator sim(cfg);
    RunResult res = sim.run();
    CHECK(decay_fit(res.records, 20.0, 200.0) <= -0.45);
}

TEST_CASE("residual scaling vanishes identically without a quadratic term") {
    RunConfig cfg = small_config();
    cfg.params = SystemParams{1.0, 0.0, 1.0};
    cfg.grid = GridSpec{100.0, 1024};
    cfg.dt = 0.01;
    cfg.t_end = 0.2;
    cfg.ic_width = 20.0;
    IbpScalingResult res = ibp_residual_scaling(cfg, {2e-2, 1e-2, 5e-3});
    for (const IbpLadderPoint& p : res.points) {
        CHECK(p.lhs_norm == 0.0);
        CHECK(p.boundary_norm == 0.0);
        CHECK(p.residual_norm == 0.0);
    }
}

TEST_CASE("lifespan probe reports a budget-bounded monotone table") {
    RunConfig cfg = small_config();
    cfg.epsilon = 0.0;
    LifespanTable zero = lifespan_probe(cfg, {0.0}, 5.0);
    REQUIRE(zero.entries.size() == 1);
    CHECK(zero.entries[0].bounded_until == 5.0);
    CHECK(!zero.entries[0].overflowed);
    CHECK(zero.note.find("exponential") != std::string::npos);
}
