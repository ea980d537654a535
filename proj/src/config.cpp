#include "vkg/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace vkg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ValidationError("key '" + key + "': not a number: " + value);
    }
    if (pos != value.size() || !std::isfinite(v))
        throw ValidationError("key '" + key + "': not a finite number: " + value);
    return v;
}

long parse_integer(const std::string& key, const std::string& value) {
    double v = parse_number(key, value);
    long n = std::lround(v);
    if (static_cast<double>(n) != v)
        throw ValidationError("key '" + key + "': expected an integer: " + value);
    return n;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("missing '=' in config line", line_no);
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
        kv[key] = value;
    }

    RunConfig cfg;
    for (const auto& [key, value] : kv) {
        if (key == "alpha") cfg.params.alpha = parse_number(key, value);
        else if (key == "kappa") cfg.params.kappa = parse_number(key, value);
        else if (key == "beta") cfg.params.beta = parse_number(key, value);
        else if (key == "L") cfg.grid.half_length = parse_number(key, value);
        else if (key == "n_modes") cfg.grid.n_modes = static_cast<int>(parse_integer(key, value));
        else if (key == "dt") cfg.dt = parse_number(key, value);
        else if (key == "t_end") cfg.t_end = parse_number(key, value);
        else if (key == "epsilon") cfg.epsilon = parse_number(key, value);
        else if (key == "ic_kind") {
            if (value == "gaussian") cfg.ic_kind = IcKind::gaussian;
            else if (value == "custom") cfg.ic_kind = IcKind::custom;
            else throw ValidationError("key 'ic_kind': expected gaussian or custom");
        }
        else if (key == "ic_file") cfg.ic_file = value;
        else if (key == "ic_width") cfg.ic_width = parse_number(key, value);
        else if (key == "k0") cfg.k0 = parse_number(key, value);
        else if (key == "stride") cfg.stride = static_cast<int>(parse_integer(key, value));
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_integer(key, value));
        else throw ValidationError("unknown key '" + key + "'");
    }
    if (cfg.ic_kind == IcKind::custom && cfg.ic_file.empty())
        throw ValidationError("key 'ic_file' required for ic_kind = custom");
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string format_config(const RunConfig& config) {
    std::ostringstream out;
    out.precision(17);
    out << "alpha = " << config.params.alpha << "\n";
    out << "kappa = " << config.params.kappa << "\n";
    out << "beta = " << config.params.beta << "\n";
    out << "L = " << config.grid.half_length << "\n";
    out << "n_modes = " << config.grid.n_modes << "\n";
    out << "dt = " << config.dt << "\n";
    out << "t_end = " << config.t_end << "\n";
    out << "epsilon = " << config.epsilon << "\n";
    out << "ic_kind = " << (config.ic_kind == IcKind::gaussian ? "gaussian" : "custom")
        << "\n";
    if (!config.ic_file.empty()) out << "ic_file = " << config.ic_file << "\n";
    out << "ic_width = " << config.ic_width << "\n";
    out << "k0 = " << config.k0 << "\n";
    out << "stride = " << config.stride << "\n";
    out << "out_dir = " << config.out_dir << "\n";
    out << "seed = " << config.seed << "\n";
    return out.str();
}

} // namespace vkg
