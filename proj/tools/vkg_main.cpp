#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vkg/checks.hpp"
#include "vkg/config.hpp"
#include "vkg/report.hpp"

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw vkg::IoError("cannot write " + path.string());
    out << text;
}

// Effective-config echo so every artifact directory records how it was made.
void echo_config(const vkg::RunConfig& cfg, const fs::path& out_dir) {
    write_text(out_dir / "effective_config.txt", vkg::format_config(cfg));
}

int run_subcommand(const std::string& cmd, const vkg::RunConfig& cfg,
                   const fs::path& out_dir, bool quiet) {
    if (cmd == "spectrum") {
        vkg::write_spectrum_csv(cfg.params, (out_dir / "spectrum.csv").string());
        if (!quiet) std::cout << "wrote " << (out_dir / "spectrum.csv").string() << "\n";
        return 0;
    }
    if (cmd == "phases") {
        vkg::write_phi2_csv(cfg.params, (out_dir / "phi2.csv").string());
        vkg::write_phi3_csv(cfg.params, (out_dir / "phi3.csv").string());
        if (!quiet)
            std::cout << "wrote " << (out_dir / "phi2.csv").string() << " and "
                      << (out_dir / "phi3.csv").string() << "\n";
        return 0;
    }
    if (cmd == "coeffs") {
        vkg::CubicCoefficientTable table =
            vkg::cubic_coefficients_at_origin(cfg.params);
        vkg::write_coeffs_csv(table, (out_dir / "coeffs.csv").string());
        vkg::SystemParams unit{cfg.params.alpha, 1.0, 1.0};
        std::string verdict = vkg::cancellation_summary(
            vkg::cancellation_verdict(vkg::cubic_coefficients_at_origin(unit)));
        write_text(out_dir / "cancellation.txt", verdict + "\n");
        if (!quiet) std::cout << verdict << "\n";
        return 0;
    }
    if (cmd == "simulate") {
        vkg::Simulator sim(cfg);
        vkg::RunResult result = sim.run();
        vkg::write_trajectory_csv(result.records,
                                  (out_dir / "trajectory.csv").string());
        if (result.records.size() >= 10)
            vkg::emit_plot(result.records, (out_dir / "decay.svg").string());
        if (result.overflowed) {
            std::cerr << "solution blew up at t = " << result.blowup_time << "\n";
            return 3;
        }
        if (!quiet)
            std::cout << "wrote " << (out_dir / "trajectory.csv").string()
                      << " (final eta " << result.records.back().eta << ")\n";
        return 0;
    }
    if (cmd == "lifespan") {
        vkg::LifespanTable table =
            vkg::lifespan_probe(cfg, {4.0 * cfg.epsilon, 2.0 * cfg.epsilon,
                                      cfg.epsilon},
                                cfg.t_end);
        vkg::write_lifespan_csv(table, (out_dir / "lifespan.csv").string());
        if (!quiet) std::cout << "wrote " << (out_dir / "lifespan.csv").string() << "\n";
        return 0;
    }
    if (cmd == "verify") {
        std::vector<vkg::CheckResult> results = vkg::run_verification();
        int failures = vkg::report_verification(results, std::cout);
        return failures == 0 ? 0 : 1;
    }
    std::cerr << "unknown subcommand: " << cmd << "\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit and simulator for the viscous Klein-Gordon equation"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    bool quiet = false;
    for (const char* name :
         {"spectrum", "phases", "coeffs", "simulate", "lifespan", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--out", out_override, "output directory override");
        sub->add_flag("--quiet", quiet, "suppress progress output");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    std::string cmd = app.get_subcommands().front()->get_name();

    vkg::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = vkg::parse_config(config_path);
        else cfg.validate();
        if (!out_override.empty()) cfg.out_dir = out_override;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        fs::path out_dir(cfg.out_dir);
        fs::create_directories(out_dir);
        echo_config(cfg, out_dir);
        return run_subcommand(cmd, cfg, out_dir, quiet);
    } catch (const vkg::Overflow& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const vkg::ScanFailed& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
