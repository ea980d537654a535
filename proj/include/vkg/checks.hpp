#ifndef VKG_CHECKS_HPP
#define VKG_CHECKS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace vkg {

struct CheckResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;        // measured wall time
    double limit_seconds = 0.0;  // budget the check must stay under
    std::string detail;
};

// The full verification suite; each entry is an independent invariant check
// with its own runtime budget. Order is fixed and deterministic.
std::vector<CheckResult> run_verification();

// Prints one PASS/FAIL line per check and returns the number of failures.
int report_verification(const std::vector<CheckResult>& results, std::ostream& out);

} // namespace vkg

#endif
