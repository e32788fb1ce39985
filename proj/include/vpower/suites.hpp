#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vpower {

struct SuiteOptions {
    int max_n = 0;  // 0 picks the suite's default
    int threads = 1;
    std::ostream* log = nullptr;
};

struct SuiteResult {
    std::string name;
    bool ok = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    std::string summary;
};

// examples, identities, sweep, lower-bound, parametric, negative, preservation, ilp,
// incremental, baseline, properties
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace vpower
