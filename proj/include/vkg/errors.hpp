#ifndef VKG_ERRORS_HPP
#define VKG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vkg {

struct DegenerateSymbol : std::runtime_error {
    explicit DegenerateSymbol(const std::string& msg) : std::runtime_error(msg) {}
};

struct ScanFailed : std::runtime_error {
    explicit ScanFailed(const std::string& msg) : std::runtime_error(msg) {}
};

struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutOfSupport : std::runtime_error {
    explicit OutOfSupport(const std::string& msg) : std::runtime_error(msg) {}
};

struct RankDeficientFit : std::runtime_error {
    explicit RankDeficientFit(const std::string& msg) : std::runtime_error(msg) {}
};

struct Overflow : std::runtime_error {
    Overflow(const std::string& msg, double t) : std::runtime_error(msg), blowup_time(t) {}
    double blowup_time;
};

struct BadInitialData : std::runtime_error {
    explicit BadInitialData(const std::string& msg) : std::runtime_error(msg) {}
};

struct InsufficientWindow : std::runtime_error {
    explicit InsufficientWindow(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureTooCoarse : std::runtime_error {
    explicit QuadratureTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    int line;
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace vkg

#endif
