#include "vkg/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vkg {

namespace {

std::string fmt(double v, int digits = 14) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

std::string format_sign_tuple2(const SignTuple2& j) {
    std::string s;
    s += j.j0 > 0 ? '+' : '-';
    s += j.j1 > 0 ? '+' : '-';
    s += j.j2 > 0 ? '+' : '-';
    return s;
}

} // namespace

std::string format_sign_tuple(const SignTuple3& j) {
    std::string s;
    s += j.j0 > 0 ? '+' : '-';
    s += j.j1 > 0 ? '+' : '-';
    s += j.j2 > 0 ? '+' : '-';
    s += j.j3 > 0 ? '+' : '-';
    return s;
}

void write_trajectory_csv(const std::vector<NormRecord>& records,
                          const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,uc_l1hat,uc_linfhat,us_l1hat,us_linfhat,u_linf_proxy,eta\n";
    for (const NormRecord& r : records) {
        out << fmt(r.t) << ',' << fmt(r.uc_l1hat) << ',' << fmt(r.uc_linfhat) << ','
            << fmt(r.us_l1hat) << ',' << fmt(r.us_linfhat) << ','
            << fmt(r.u_linf_proxy) << ',' << fmt(r.eta) << '\n';
    }
}

void write_spectrum_csv(const SystemParams& params, const std::string& path,
                        double k_max, int n_points, double probe_time) {
    std::ofstream out = open_out(path);
    out << "k,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus,"
           "prop_norm\n";
    for (int i = 0; i < n_points; ++i) {
        double k = -k_max + 2.0 * k_max * i / (n_points - 1);
        EigenData e = eigenvalues(params, k);
        double norm = propagator(params, k, probe_time).opnorm();
        out << fmt(k) << ',' << fmt(e.lambda_plus.real()) << ','
            << fmt(e.lambda_plus.imag()) << ',' << fmt(e.lambda_minus.real()) << ','
            << fmt(e.lambda_minus.imag()) << ',' << fmt(norm) << '\n';
    }
}

void write_phi2_csv(const SystemParams& params, const std::string& path,
                    double radius, double step) {
    std::ofstream out = open_out(path);
    out << "j,k,l1,l2,re,im,abs\n";
    int n = static_cast<int>(std::floor(radius / step + 1e-9));
    for (const SignTuple2& j : all_sign_tuples2()) {
        for (int a = -n; a <= n; ++a) {
            for (int b = -n; b <= n; ++b) {
                double k = a * step, l = b * step;
                Complex v = phi2(params, j, k, l);
                out << format_sign_tuple2(j) << ',' << fmt(k) << ',' << fmt(l)
                    << ",0," << fmt(v.real()) << ',' << fmt(v.imag()) << ','
                    << fmt(std::abs(v)) << '\n';
            }
        }
    }
}

void write_phi3_csv(const SystemParams& params, const std::string& path,
                    double radius, double step) {
    std::ofstream out = open_out(path);
    out << "j,k,l1,l2,re,im,abs\n";
    int n = static_cast<int>(std::floor(radius / step + 1e-9));
    for (const SignTuple3& j : all_sign_tuples3()) {
        for (int a = -n; a <= n; ++a) {
            for (int b = -n; b <= n; ++b) {
                for (int c = -n; c <= n; ++c) {
                    double k = a * step, l1 = b * step, l2 = c * step;
                    Complex v = phi3(params, j, k, l1, l2);
                    out << format_sign_tuple(j) << ',' << fmt(k) << ',' << fmt(l1)
                        << ',' << fmt(l2) << ',' << fmt(v.real()) << ','
                        << fmt(v.imag()) << ',' << fmt(std::abs(v)) << '\n';
                }
            }
        }
    }
}

void write_coeffs_csv(const CubicCoefficientTable& table, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "j, re_n3, im_n3, re_q3, im_q3\n";
    for (const CubicCoefficientRow& r : table.rows) {
        out << format_sign_tuple(r.j) << ", " << fmt(r.n3.real(), 12) << ", "
            << fmt(r.n3.imag(), 12) << ", " << fmt(r.q3.real(), 12) << ", "
            << fmt(r.q3.imag(), 12) << '\n';
    }
}

std::string cancellation_summary(const CancellationVerdict& verdict) {
    std::ostringstream out;
    out << "cancellation system rank " << verdict.rank << ", determinant "
        << fmt(verdict.determinant, 12) << ": "
        << (verdict.only_trivial_cancellation
                ? "only (kappa, beta) = (0, 0) cancels all resonant coefficients"
                : "nontrivial cancellation exists");
    return out.str();
}

void write_lifespan_csv(const LifespanTable& table, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "# " << table.note << '\n';
    out << "epsilon,bounded_until,overflowed\n";
    for (const LifespanEntry& e : table.entries) {
        out << fmt(e.epsilon) << ',' << fmt(e.bounded_until) << ','
            << (e.overflowed ? 1 : 0) << '\n';
    }
}

void emit_plot(const std::vector<NormRecord>& records, const std::string& path) {
    std::vector<std::pair<double, double>> pts;
    for (const NormRecord& r : records) {
        if (r.u_linf_proxy > 0.0)
            pts.push_back({std::log10(1.0 + r.t), std::log10(r.u_linf_proxy)});
    }
    if (pts.size() < 10)
        throw ValidationError("decay plot needs at least 10 positive records");

    double x0 = pts.front().first, x1 = pts.front().first;
    double y0 = pts.front().second, y1 = pts.front().second;
    for (const auto& [x, y] : pts) {
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    // Include the reference line endpoints in the vertical range.
    double ref0 = pts.front().second;
    double ref1 = ref0 - 0.5 * (x1 - x0);
    y0 = std::min(y0, std::min(ref0, ref1));
    y1 = std::max(y1, std::max(ref0, ref1));
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;

    const double w = 640.0, h = 480.0, margin = 50.0;
    auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (w - 2 * margin); };
    auto py = [&](double y) { return h - margin - (y - y0) / (y1 - y0) * (h - 2 * margin); };

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    out << "<line x1=\"" << fmt(margin, 6) << "\" y1=\"" << fmt(h - margin, 6)
        << "\" x2=\"" << fmt(w - margin, 6) << "\" y2=\"" << fmt(h - margin, 6)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(margin, 6) << "\" y1=\"" << fmt(margin, 6)
        << "\" x2=\"" << fmt(margin, 6) << "\" y2=\"" << fmt(h - margin, 6)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(w / 2, 6) << "\" y=\"" << fmt(h - 10, 6)
        << "\" font-size=\"14\" text-anchor=\"middle\">log10(1 + t)</text>\n";
    out << "<text x=\"15\" y=\"" << fmt(h / 2, 6)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << fmt(h / 2, 6) << ")\">log10 u_linf_proxy</text>\n";
    out << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out << fmt(px(x), 6) << ',' << fmt(py(y), 6) << ' ';
    out << "\"/>\n";
    out << "<line x1=\"" << fmt(px(x0), 6) << "\" y1=\"" << fmt(py(ref0), 6)
        << "\" x2=\"" << fmt(px(x1), 6) << "\" y2=\"" << fmt(py(ref1), 6)
        << "\" stroke=\"steelblue\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << fmt(w - margin - 120, 6) << "\" y=\"" << fmt(margin + 15, 6)
        << "\" font-size=\"12\" fill=\"steelblue\">reference slope -1/2</text>\n";
    out << "</svg>\n";
}

} // namespace vkg
