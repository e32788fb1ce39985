// One PASS/FAIL line per acceptance criterion. Exit status is 0 when the failing
// criteria are exactly the ones passed with --expect-fail (none by default).

#include "vpower/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> suites;
    double limit_seconds;
    std::string tolerance;
    std::string note;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> c{
        {1, "worked examples", {"examples"}, 1, "exact", ""},
        {2, "identities on all simple games n=3,4", {"identities"}, 10, "exact", ""},
        {3, "shortening bounds for n<=5, local inequalities for n<=4", {"sweep"}, 600, "exact", ""},
        {4, "lower bounds 1/8 and 3/80, exhaustive optimum at n=4,5", {"lower-bound"}, 300, "exact", ""},
        {5, "closed forms match brute force for k+n<=9", {"parametric"}, 300, "exact", ""},
        {6, "negative results at finite size", {"negative"}, 60, "exact, certified enclosures", ""},
        {7, "class preservation under k-rounding for n<=4", {"preservation"}, 60, "exact", ""},
        {8, "ILP semantics n<=3 and bisection battery", {"ilp"}, 600, "exact, bisection tol 1/1024", ""},
        {9, "incremental updates for nine indices n<=4", {"incremental"}, 120, "exact", ""},
        {10, "scope disclosure", {"baseline"}, 60, "exact",
         "not reproduced: the 11-voter bound 0.37846 and the limit theorems; "
         "finite baseline inequality checked at n=3,4,5"},
    };
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> expect_fail;
    std::vector<int> only;
    int threads = 1;
    bool verbose = false;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail");
    app.add_option("--only", only, "run a subset");
    app.add_option("--threads", threads);
    app.add_flag("-v,--verbose", verbose);
    CLI11_PARSE(app, argc, argv);

    std::set<int> failed;
    for (const auto& c : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        vpower::SuiteOptions opt;
        opt.threads = threads;
        if (verbose) opt.log = &std::cerr;
        bool ok = true;
        std::size_t checks = 0;
        std::vector<std::string> failures;
        auto start = std::chrono::steady_clock::now();
        for (const auto& name : c.suites) {
            auto r = vpower::run_suite(name, opt);
            ok = ok && r.ok;
            checks += r.checks;
            failures.insert(failures.end(), r.failures.begin(), r.failures.end());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs <= c.limit_seconds;
        bool pass = ok && in_time;
        if (!pass) failed.insert(c.id);

        char timing[96];
        std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit_seconds);
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << checks
                  << " checks, " << timing << ", " << c.tolerance << "]";
        if (!c.note.empty()) std::cout << " " << c.note;
        if (!in_time) std::cout << " over time limit";
        if (!failures.empty()) std::cout << " first failure: " << failures.front();
        std::cout << std::endl;
    }

    std::set<int> expected(expect_fail.begin(), expect_fail.end());
    if (only.empty() && failed != expected) {
        std::cout << "unexpected result: failing set differs from --expect-fail" << std::endl;
        return 1;
    }
    return failed.empty() || failed == expected ? 0 : 1;
}
