#include "vkg/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "vkg/config.hpp"
#include "vkg/normal_form.hpp"
#include "vkg/simulator.hpp"

namespace vkg {

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

CheckResult timed(const std::string& name, double limit_seconds,
                  const std::function<void(Outcome&)>& body) {
    CheckResult r;
    r.name = name;
    r.limit_seconds = limit_seconds;
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail << "exception: " << e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    if (r.seconds > limit_seconds) {
        out.ok = false;
        if (out.detail.tellp() > 0) out.detail << "; ";
        out.detail << "over the " << fmt(limit_seconds, 3) << " s budget";
    }
    r.passed = out.ok;
    r.detail = out.detail.str();
    if (r.passed && r.detail.empty()) r.detail = "ok";
    return r;
}

// Trace and determinant of the symbol recovered from the two eigenvalue
// branches, compared against the closed forms -alpha k^2 and 1 + k^2.
void check_eigenvalue_algebra(Outcome& out) {
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 2.0}) {
        SystemParams p{alpha, 1.0, 1.0};
        for (int i = 0; i < 10000; ++i) {
            double k = -10.0 + 20.0 * i / 9999.0;
            EigenData e = eigenvalues(p, k);
            double tr = std::abs(e.lambda_plus + e.lambda_minus + alpha * k * k) /
                        std::max(1.0, alpha * k * k);
            double det = std::abs(e.lambda_plus * e.lambda_minus -
                                  Complex(1.0 + k * k, 0.0)) /
                         (1.0 + k * k);
            worst = std::max(worst, std::max(tr, det));
        }
    }
    out.require(worst <= 1e-12, "trace/determinant defect " + fmt(worst));
    out.detail << "worst relative defect " << fmt(worst, 3);
}

void check_critical_real_part(Outcome& out) {
    SystemParams p{1.0, 1.0, 1.0};
    double k1 = collision_threshold(p);
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        double k = -0.9 * k1 + 1.8 * k1 * i / 4000.0;
        EigenData e = eigenvalues(p, k);
        double target = -0.5 * p.alpha * k * k;
        worst = std::max(worst, std::abs(e.lambda_plus.real() - target));
        worst = std::max(worst, std::abs(e.lambda_minus.real() - target));
    }
    out.require(worst <= 1e-14, "real-part defect " + fmt(worst));
    out.detail << "max |Re lambda + alpha k^2/2| = " << fmt(worst, 3)
               << " below the collision";
}

void check_semigroup_decay(Outcome& out) {
    SystemParams p{1.0, 1.0, 1.0};
    double k0 = 0.5 * collision_threshold(p);
    std::vector<double> k_grid, t_grid;
    for (double k = 0.5 * k0; k <= 10.0; k += 0.02) k_grid.push_back(k);
    for (double t = 0.0; t <= 50.0; t += 0.1) t_grid.push_back(t);
    DecayScanResult scan = decay_scan(p, k0, k_grid, t_grid);
    out.require(scan.theta0 >= 0.05, "rate " + fmt(scan.theta0) + " below 0.05");
    out.require(scan.C <= 100.0, "prefactor " + fmt(scan.C) + " above 100");
    out.detail << "certified rate " << fmt(scan.theta0, 4) << " with prefactor "
               << fmt(scan.C, 4);
}

void check_quadratic_phase_floor(Outcome& out) {
    SystemParams p{1.0, 1.0, 1.0};
    PhaseFloorReport report = phase_floor(p, 2, 0.1, 0.005);
    out.require(report.floor >= 0.9, "floor " + fmt(report.floor) + " below 0.9");
    for (const SignTuple2& j : all_sign_tuples2()) {
        double origin = std::abs(phi2(p, j, 0.0, 0.0));
        out.require(origin == 1.0 || origin == 3.0,
                    "origin value " + fmt(origin, 17) + " not in {1, 3}");
    }
    out.detail << "min |phi2| = " << fmt(report.floor, 4)
               << " over the grid, origin values exact";
}

void check_cubic_phase_origin(Outcome& out) {
    SystemParams p{1.0, 1.0, 1.0};
    int resonant = 0;
    for (const SignTuple3& j : all_sign_tuples3()) {
        double origin = std::abs(phi3(p, j, 0.0, 0.0, 0.0));
        if (is_resonant(j)) {
            ++resonant;
            out.require(origin <= 1e-15, "resonant origin phase " + fmt(origin));
        } else {
            out.require(origin == 2.0 || origin == 4.0,
                        "non-resonant origin value " + fmt(origin, 17) +
                            " not in {2, 4}");
        }
    }
    out.require(resonant == 6, "resonant tuple count " + fmt(resonant));
    out.detail << "6 vanishing and 10 non-vanishing origin phases";
}

void check_cubic_coefficient_table(Outcome& out) {
    SystemParams p{1.0, 1.0, 1.0};
    CubicCoefficientTable table = cubic_coefficients_at_origin(p);
    const Complex half_over_i(0.0, -0.5);  // 1 / (2i)
    struct Expected {
        SignTuple3 j;
        double q3_scale;
    };
    std::vector<Expected> expected = {
        {{1, -1, 1, 1}, 2.0 / 3.0}, {{1, 1, -1, 1}, 2.0}, {{1, 1, 1, -1}, 2.0 / 3.0}};
    for (const Expected& e : expected) {
        const CubicCoefficientRow& row = table.row(e.j);
        out.require(std::abs(row.n3 - half_over_i) <= 1e-14, "n3 mismatch");
        out.require(std::abs(row.q3 - e.q3_scale * half_over_i) <= 1e-14,
                    "q3 mismatch " + fmt(std::abs(row.q3 - e.q3_scale * half_over_i)));
        const CubicCoefficientRow& flipped = table.row(e.j.flipped());
        out.require(std::abs(flipped.n3 + row.n3) <= 1e-14 &&
                        std::abs(flipped.q3 + row.q3) <= 1e-14,
                    "sign-flip antisymmetry violated");
    }
    CancellationVerdict verdict = cancellation_verdict(table);
    out.require(std::abs(std::abs(verdict.determinant) - 4.0 / 3.0) <= 1e-12,
                "determinant " + fmt(verdict.determinant));
    out.require(verdict.rank == 2, "rank " + fmt(verdict.rank));
    out.require(verdict.only_trivial_cancellation, "nontrivial cancellation reported");
    bool saw_23 = false, saw_2 = false;
    for (const auto& row : verdict.system_rows) {
        if (std::abs(row[0] - 1.0) > 1e-14) continue;
        if (std::abs(row[1] - 2.0 / 3.0) <= 1e-14) saw_23 = true;
        if (std::abs(row[1] - 2.0) <= 1e-14) saw_2 = true;
    }
    out.require(saw_23 && saw_2, "system rows (1, 2/3), (1, 2) not both present");
    out.detail << "coefficient rows match, cancellation determinant "
               << fmt(std::abs(verdict.determinant), 10);
}

void check_integrator_order(Outcome& out) {
    RunConfig cfg;
    cfg.grid = GridSpec{40.0, 256};
    cfg.dt = 0.05;
    cfg.t_end = 2.0;
    cfg.epsilon = 0.5;
    cfg.stride = 40;

    // Linear flow must match the per-mode propagators exactly.
    {
        RunConfig lin = cfg;
        lin.params = SystemParams{1.0, 0.0, 0.0};
        Simulator sim(lin);
        SpectralField state = sim.init_field();
        SpectralField initial = state;
        long steps = std::lround(lin.t_end / lin.dt);
        for (long s = 0; s < steps; ++s) state = sim.step(state, lin.dt);
        double scale = initial.max_abs();
        double worst = 0.0;
        for (int m = 0; m < lin.grid.n_modes; ++m) {
            Vec2 exact = propagator(lin.params, lin.grid.freq(m), lin.t_end) *
                         initial.at(m);
            worst = std::max(worst, (state.at(m) - exact).norm());
        }
        out.require(worst <= 1e-12 * scale,
                    "linear defect " + fmt(worst / scale) + " relative");
        out.detail << "linear flow defect " << fmt(worst / scale, 3) << " relative";
    }

    // Richardson ratio on a nonlinear run: successive solution differences
    // shrink by ~2^order when dt halves.
    {
        RunConfig nl = cfg;
        nl.params = SystemParams{1.0, 1.0, 1.0};
        nl.t_end = 1.0;
        auto solve = [&](double dt) {
            RunConfig c = nl;
            c.dt = dt;
            Simulator sim(c);
            SpectralField state = sim.init_field();
            long steps = std::lround(c.t_end / dt);
            for (long s = 0; s < steps; ++s) state = sim.step(state, dt);
            return state;
        };
        SpectralField a = solve(0.05), b = solve(0.025), c = solve(0.0125);
        double d1 = 0.0, d2 = 0.0;
        for (int m = 0; m < nl.grid.n_modes; ++m) {
            d1 = std::max(d1, (a.at(m) - b.at(m)).norm());
            d2 = std::max(d2, (b.at(m) - c.at(m)).norm());
        }
        double ratio = d1 / d2;
        out.require(ratio >= 3.4 && ratio <= 4.6,
                    "Richardson ratio " + fmt(ratio) + " outside [3.4, 4.6]");
        out.detail << ", Richardson ratio " << fmt(ratio, 4);
    }
}

void check_long_run_decay(Outcome& out) {
    RunConfig cfg;
    cfg.params = SystemParams{1.0, 1.0, 1.0};
    cfg.grid = GridSpec{200.0, 4096};
    cfg.dt = 0.01;
    cfg.t_end = 500.0;
    cfg.epsilon = 0.05;
    cfg.stride = 100;
    Simulator sim(cfg);
    RunResult result = sim.run();
    out.require(!result.overflowed, "run overflowed at t = " + fmt(result.blowup_time));
    out.require(result.boundary_energy_frac < 1e-6,
                "boundary energy fraction " + fmt(result.boundary_energy_frac));
    double slope = decay_fit(result.records, 20.0, 500.0);
    out.require(slope >= -0.65 && slope <= -0.35,
                "decay exponent " + fmt(slope) + " outside [-0.65, -0.35]");
    out.detail << "fitted decay exponent " << fmt(slope, 4);
}

void check_duhamel_residual(Outcome& out) {
    RunConfig cfg;
    cfg.params = SystemParams{1.0, 1.0, 1.0};
    cfg.grid = GridSpec{100.0, 1024};
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    cfg.ic_width = 20.0;
    cfg.stride = 100;
    IbpScalingResult result = ibp_residual_scaling(cfg, {2e-2, 1e-2, 5e-3});
    out.require(result.residual_order >= 3.5,
                "residual order " + fmt(result.residual_order) + " below 3.5");
    out.require(std::abs(result.quadratic_order - 2.0) <= 0.2,
                "quadratic order " + fmt(result.quadratic_order) +
                    " outside 2.0 +- 0.2");
    out.detail << "residual order " << fmt(result.residual_order, 4)
               << ", quadratic order " << fmt(result.quadratic_order, 4);
}

void check_phase_vanishing_order(Outcome& out) {
    SystemParams p{1.0, 1.0, 1.0};
    SignTuple3 j{1, -1, 1, 1};
    std::vector<double> scales = {0.1, 0.05, 0.025, 0.0125};
    std::vector<std::array<double, 3>> axes = {
        {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    for (const auto& axis : axes) {
        double order = vanishing_order(p, j, axis, scales);
        out.require(std::abs(order - 2.0) <= 0.1,
                    "axis order " + fmt(order) + " outside 2.0 +- 0.1");
        out.detail << (out.detail.tellp() > 0 ? ", " : "order along axes: ")
                   << fmt(order, 4);
    }
}

void check_lifespan_monotonicity(Outcome& out) {
    RunConfig cfg;
    cfg.params = SystemParams{1.0, 1.0, 1.0};
    cfg.grid = GridSpec{100.0, 1024};
    cfg.dt = 0.01;
    cfg.epsilon = 0.1;
    cfg.stride = 10;
    LifespanTable table = lifespan_probe(cfg, {0.4, 0.2, 0.1}, 200.0);
    out.require(table.entries.size() == 3, "expected 3 ladder entries");
    for (std::size_t i = 1; i < table.entries.size(); ++i) {
        out.require(table.entries[i].epsilon < table.entries[i - 1].epsilon,
                    "entries not sorted by decreasing epsilon");
        out.require(table.entries[i].bounded_until >=
                        table.entries[i - 1].bounded_until,
                    "bounded_until decreased from epsilon " +
                        fmt(table.entries[i - 1].epsilon) + " to " +
                        fmt(table.entries[i].epsilon));
    }
    out.require(table.note.find("exponential") != std::string::npos,
                "report note missing the exponential-law disclaimer");
    out.detail << "bounded_until:";
    for (const LifespanEntry& e : table.entries)
        out.detail << " " << fmt(e.bounded_until, 4) << "@" << fmt(e.epsilon, 3);
}

void check_zero_mode_conservation(Outcome& out) {
    RunConfig cfg;
    cfg.params = SystemParams{1.0, 0.0, 0.0};
    cfg.grid = GridSpec{40.0, 256};
    cfg.dt = 0.05;
    cfg.t_end = 100.0;
    cfg.epsilon = 0.5;
    Simulator sim(cfg);
    SpectralField state = sim.init_field();
    double initial = state.at(0).norm();
    long steps = std::lround(cfg.t_end / cfg.dt);
    double worst = 0.0;
    for (long s = 0; s < steps; ++s) {
        state = sim.step(state, cfg.dt);
        worst = std::max(worst, std::abs(state.at(0).norm() - initial));
    }
    out.require(worst <= 1e-10 * initial,
                "zero-mode amplitude drift " + fmt(worst / initial) + " relative");
    out.detail << "max relative drift " << fmt(worst / initial, 3);
}

} // namespace

std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> results;
    results.push_back(timed("eigenvalue_algebra", 1.0, check_eigenvalue_algebra));
    results.push_back(timed("critical_real_part", 1.0, check_critical_real_part));
    results.push_back(timed("semigroup_decay", 30.0, check_semigroup_decay));
    results.push_back(timed("quadratic_phase_floor", 10.0, check_quadratic_phase_floor));
    results.push_back(timed("cubic_phase_origin", 1.0, check_cubic_phase_origin));
    results.push_back(
        timed("cubic_coefficient_table", 1.0, check_cubic_coefficient_table));
    results.push_back(timed("integrator_order", 60.0, check_integrator_order));
    results.push_back(timed("long_run_decay", 600.0, check_long_run_decay));
    results.push_back(timed("duhamel_residual_scaling", 600.0, check_duhamel_residual));
    results.push_back(
        timed("phase_vanishing_order", 5.0, check_phase_vanishing_order));
    results.push_back(
        timed("lifespan_monotonicity", 900.0, check_lifespan_monotonicity));
    results.push_back(
        timed("zero_mode_conservation", 10.0, check_zero_mode_conservation));
    return results;
}

int report_verification(const std::vector<CheckResult>& results, std::ostream& out) {
    int failures = 0;
    for (const CheckResult& r : results) {
        if (!r.passed) ++failures;
        out << (r.passed ? "PASS" : "FAIL") << " " << r.name << " ["
            << fmt(r.seconds, 3) << " s / " << fmt(r.limit_seconds, 3)
            << " s]: " << r.detail << "\n";
    }
    out << (failures == 0 ? "all checks passed"
                          : std::to_string(failures) + " check(s) failed")
        << "\n";
    return failures;
}

} // namespace vkg
