#ifndef VKG_REPORT_HPP
#define VKG_REPORT_HPP

#include <string>
#include <vector>

#include "vkg/normal_form.hpp"
#include "vkg/simulator.hpp"

namespace vkg {

// Trajectory CSV with the fixed header
// t,uc_l1hat,uc_linfhat,us_l1hat,us_linfhat,u_linf_proxy,eta
// at 14 significant digits.
void write_trajectory_csv(const std::vector<NormRecord>& records,
                          const std::string& path);

// Eigenvalue / propagator-norm table over a symmetric k grid.
void write_spectrum_csv(const SystemParams& params, const std::string& path,
                        double k_max = 10.0, int n_points = 2001,
                        double probe_time = 1.0);

// Quadratic and cubic phase surfaces; shared header j,k,l1,l2,re,im,abs
// (the l2 column is 0 for the quadratic phase).
void write_phi2_csv(const SystemParams& params, const std::string& path,
                    double radius = 0.5, double step = 0.05);
void write_phi3_csv(const SystemParams& params, const std::string& path,
                    double radius = 0.5, double step = 0.1);

// Origin coefficient table rows: j, re_n3, im_n3, re_q3, im_q3.
void write_coeffs_csv(const CubicCoefficientTable& table, const std::string& path);

// One-line cancellation summary with the 2x2 determinant.
std::string cancellation_summary(const CancellationVerdict& verdict);

void write_lifespan_csv(const LifespanTable& table, const std::string& path);

// Deterministic log-log SVG of u_linf_proxy against 1 + t, with a reference
// slope -1/2 line. Needs at least 10 records.
void emit_plot(const std::vector<NormRecord>& records, const std::string& path);

std::string format_sign_tuple(const SignTuple3& j);

} // namespace vkg

#endif
