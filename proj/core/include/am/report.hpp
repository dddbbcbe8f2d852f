#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "am/killing.hpp"
#include "am/specfile.hpp"

namespace am {

struct SuiteConfig {
    std::string target;                 // zoo name, counterexample name, or file path
    std::set<std::string> suites;       // empty = all applicable
    bool exact_tier = true;
    int samples = 50;
    uint64_t seed = kDefaultSeed;
    double tolerance = -1.0;            // < 0: tier default

    static const std::set<std::string>& all_suites();
    double tol() const { return tolerance > 0.0 ? tolerance : (exact_tier ? 1e-8 : 1e-4); }
};

struct CounterexampleOutcome {
    std::string name;
    std::string check;                  // what the entry must fail
    bool expected_failure_observed = false;
    double residual = 0.0;
};

struct RunReport {
    SuiteConfig config;
    std::string target_kind;            // chart | bundle | counterexample
    std::vector<ResidualReport> reports;
    std::set<std::string> labels;
    std::set<std::string> expected_labels;
    bool labels_checked = false;
    std::vector<CounterexampleOutcome> counterexamples;
    std::vector<std::pair<std::string, double>> timings;  // seconds; text output only
    bool overall_pass = true;
};

// Runs the configured suites.  Deterministic for fixed (target, suites, tier,
// samples, seed, tolerance).  Unknown targets and bad configs throw SpecError.
RunReport run(const SuiteConfig& config);

std::string to_text(const RunReport& report);
// Stable versioned document; timings excluded so identical configs produce
// byte-identical output.
std::string to_structured(const RunReport& report);

}  // namespace am
