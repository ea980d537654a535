#include <iostream>

#include "vkg/checks.hpp"

int main() {
    std::vector<vkg::CheckResult> results = vkg::run_verification();
    int failures = vkg::report_verification(results, std::cout);
    return failures == 0 ? 0 : 1;
}
