#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "am/report.hpp"

using namespace am;

TEST_CASE("structured reports are deterministic") {
    SuiteConfig cfg;
    cfg.target = "round_s2";
    cfg.samples = 12;
    std::string a = to_structured(run(cfg));
    std::string b = to_structured(run(cfg));
    CHECK(a == b);
    CHECK(a.find("\"schema\": \"amver-report/1\"") != std::string::npos);
}

TEST_CASE("config validation") {
    SuiteConfig cfg;
    cfg.target = "round_s2";
    cfg.samples = 5;
    CHECK_THROWS_AS(run(cfg), SpecError);  // samples >= 10

    cfg.samples = 10;
    cfg.suites = {"nope"};
    CHECK_THROWS_AS(run(cfg), SpecError);

    cfg.suites.clear();
    cfg.target = "no_such_target";
    CHECK_THROWS_AS(run(cfg), SpecError);
}

TEST_CASE("tolerance override can force a failure") {
    SuiteConfig cfg;
    cfg.target = "round_s2";
    cfg.samples = 10;
    cfg.suites = {"geometry"};
    cfg.tolerance = 1e-18;
    RunReport rep = run(cfg);
    CHECK(!rep.overall_pass);
}

TEST_CASE("counterexample battery target") {
    SuiteConfig cfg;
    cfg.target = "counterexamples";
    cfg.samples = 12;
    RunReport rep = run(cfg);
    CHECK(rep.counterexamples.size() == 3);
    CHECK(rep.overall_pass);

    cfg.target = "counterexample:dxdx-lift";
    rep = run(cfg);
    CHECK(rep.counterexamples.size() == 1);
    CHECK(rep.counterexamples[0].expected_failure_observed);
    CHECK(rep.counterexamples[0].residual >= 0.01);

    cfg.target = "counterexample:bogus";
    CHECK_THROWS_AS(run(cfg), SpecError);
}

TEST_CASE("finite-difference tier relaxes tolerances and still passes") {
    SuiteConfig cfg;
    cfg.target = "round_s2";
    cfg.samples = 10;
    cfg.exact_tier = false;
    cfg.suites = {"geometry", "killing", "classify"};
    RunReport rep = run(cfg);
    CHECK(rep.config.tol() == 1e-4);
    CHECK(rep.overall_pass);
    CHECK(rep.labels == rep.expected_labels);
}
