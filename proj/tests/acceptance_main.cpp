// Acceptance gate: runs the ten verification suites in order and prints one
// line per criterion. Exit status is the number of failed criteria.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <padic/padic.hpp>

int main() {
    // A worker-count override would perturb the timing checks; the library
    // default (hardware concurrency) is what the budgets were set against.
    ::unsetenv("PADIC_COUNT_THREADS");

    padic::RunConfig cfg;
    int failed = 0;
    int index = 0;
    for (const auto& spec : padic::all_suites()) {
        ++index;
        padic::SuiteReport report;
        std::string error;
        bool pass = false;
        try {
            report = spec.run(cfg);
            pass = report.all_pass();
        } catch (const std::exception& e) {
            error = e.what();
        }
        if (spec.name == "grid" && report.elapsedSeconds >= 300.0) {
            report.checks.push_back({"grid finishes under five minutes", false,
                                     padic::detail::cat(report.elapsedSeconds, " s")});
            pass = false;
        }
        std::printf("criterion %2d (%s): %s (%.2fs)\n", index, spec.name.c_str(),
                    pass ? "PASS" : "FAIL", report.elapsedSeconds);
        if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
        for (const auto& check : report.checks)
            if (!check.pass)
                std::printf("    failed: %s (%s)\n", check.name.c_str(), check.details.c_str());
        std::fflush(stdout);
        if (!pass) ++failed;
    }
    return failed;
}
