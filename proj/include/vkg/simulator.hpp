#ifndef VKG_SIMULATOR_HPP
#define VKG_SIMULATOR_HPP

#include <memory>
#include <string>
#include <vector>

#include "vkg/grid.hpp"

namespace vkg {

// Blow-up sentinel: a step that pushes any |U_hat| beyond this aborts the run.
inline constexpr double kOverflowThreshold = 1e6;

enum class IcKind { gaussian, custom };

struct RunConfig {
    SystemParams params;
    GridSpec grid;
    double dt = 0.01;
    double t_end = 500.0;
    double epsilon = 0.05;
    IcKind ic_kind = IcKind::gaussian;
    std::string ic_file;      // for IcKind::custom: one "u0 w0" pair per grid point
    double ic_width = 6.0;    // gaussian width sigma in u0(x) = eps * exp(-x^2/sigma^2)
    double k0 = 0.0;          // mode-filter cutoff; 0 means default k1/2
    int stride = 100;         // record every this many steps
    std::string out_dir = "out";
    unsigned long seed = 0;

    double cutoff() const;    // k0 with the default applied
    void validate() const;
};

// Time-stamped discrete norms of the critical/stable split. The hat-norms
// discretize L1 as dk * sum and Linf as the grid max.
struct NormRecord {
    double t = 0.0;
    double uc_l1hat = 0.0;
    double uc_linfhat = 0.0;
    double us_l1hat = 0.0;
    double us_linfhat = 0.0;
    double u_linf_proxy = 0.0;  // dk * sum |U_hat|, bounds ||u||_inf
    double eta = 0.0;           // running supremum of the template value

    // Instantaneous template value before the running-supremum wrapper.
    double eta_instant() const;
};

struct RunResult {
    std::vector<NormRecord> records;
    bool overflowed = false;
    double blowup_time = 0.0;
    double boundary_energy_frac = 0.0;  // max observed fraction in the outer 10%
};

class Simulator {
  public:
    explicit Simulator(const RunConfig& config);
    ~Simulator();
    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    const RunConfig& config() const { return config_; }

    // Initial data in diffusive variables. Throws BadInitialData for
    // non-finite custom input.
    SpectralField init_field() const;

    // Nonlinearity in Fourier space: second component (1+k^2)^{-1} times the
    // transform of kappa u^2 + beta u^3, dealiased by zero padding.
    SpectralField rhs_nonlinear(const SpectralField& field) const;

    // One step of the exponential midpoint rule (order 2; exact linear flow).
    // Throws Overflow when the blow-up sentinel trips.
    SpectralField step(const SpectralField& state, double dt) const;

    // Integrates to t_end recording norms every stride steps. An Overflow is
    // reported in the result instead of propagating.
    RunResult run() const;
    RunResult run(const SpectralField& initial) const;

    // Physical-space samples of the first component (real part after the
    // inverse transform).
    std::vector<double> physical_u(const SpectralField& field) const;

    // Largest |Im u(x)| after the inverse transform; reality diagnostic.
    double physical_imag_max(const SpectralField& field) const;

    NormRecord measure(const SpectralField& field, double t) const;

  private:
    struct Impl;
    RunConfig config_;
    std::unique_ptr<Impl> impl_;
};

// Least-squares slope of log(u_linf_proxy) against log(1+t) over records with
// t in [t_min, t_max]. Throws InsufficientWindow below one decade.
double decay_fit(const std::vector<NormRecord>& records, double t_min, double t_max);

struct IbpLadderPoint {
    double epsilon = 0.0;
    double lhs_norm = 0.0;       // quadratic Duhamel integral over the probe set
    double boundary_norm = 0.0;  // transformed-kernel boundary terms
    double residual_norm = 0.0;  // identity defect (quartic remainder)
};

struct IbpScalingResult {
    std::vector<IbpLadderPoint> points;
    double quadratic_order = 0.0;  // fitted eps-order of the LHS itself
    double residual_order = 0.0;   // fitted eps-order of the residual
};

// Runs a short trajectory per epsilon and checks the time integration by
// parts identity: quadratic Duhamel integral against boundary terms plus the
// transformed cubic integral. Throws QuadratureTooCoarse when the boundary
// terms drown in quadrature error.
IbpScalingResult ibp_residual_scaling(const RunConfig& config_template,
                                      const std::vector<double>& epsilon_ladder);

struct LifespanEntry {
    double epsilon = 0.0;
    double bounded_until = 0.0;
    bool overflowed = false;
};

struct LifespanTable {
    std::vector<LifespanEntry> entries;  // sorted by epsilon, descending
    std::string note;
};

// For each epsilon, the first time the running template value exceeds
// growth_factor times its initial plateau, capped at the horizon budget.
LifespanTable lifespan_probe(const RunConfig& config_template,
                             const std::vector<double>& epsilon_ladder,
                             double horizon_budget, double growth_factor = 4.0);

// Parallelism cap from the VKG_THREADS environment variable (0 or unset: auto).
unsigned thread_budget();

} // namespace vkg

#endif
