#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "am/report.hpp"

namespace {

struct Options {
    std::string target;
    std::vector<std::string> suites;
    std::string tier = "exact";
    int samples = 50;
    uint64_t seed = am::kDefaultSeed;
    double tolerance = -1.0;
    std::string output;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("target", opt.target, "zoo name, counterexample name, or spec file path")
        ->required();
    cmd->add_option("--samples", opt.samples, "sample points per check (>= 10)");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--tier", opt.tier, "derivative tier")
        ->check(CLI::IsMember({"exact", "fd", "finite-difference"}));
    cmd->add_option("--tolerance", opt.tolerance, "residual tolerance override");
}

am::SuiteConfig to_config(const Options& opt) {
    am::SuiteConfig cfg;
    cfg.target = opt.target;
    cfg.suites.insert(opt.suites.begin(), opt.suites.end());
    cfg.exact_tier = opt.tier == "exact";
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.tolerance = opt.tolerance;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chart-based verification of torus-bundle metrics and Killing tensors"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* verify = app.add_subcommand("verify", "run verification suites and report pass/fail");
    add_common(verify, opt);
    verify->add_option("--suites", opt.suites,
                       "subset of geometry,killing,bundle,classify,counterexample")
        ->delimiter(',');

    CLI::App* classify = app.add_subcommand("classify", "print the classification labels");
    add_common(classify, opt);

    CLI::App* report = app.add_subcommand("report", "write the structured report document");
    add_common(report, opt);
    report->add_option("--output,-o", opt.output, "output path (default: stdout)");
    report->add_option("--suites", opt.suites, "subset of suites")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        am::SuiteConfig cfg = to_config(opt);
        if (classify->parsed()) cfg.suites = {"classify"};
        am::RunReport rep = am::run(cfg);

        if (classify->parsed()) {
            for (const std::string& l : rep.labels) std::cout << l << "\n";
            bool ok = !rep.labels_checked || rep.labels == rep.expected_labels;
            return ok ? 0 : 1;
        }
        if (report->parsed()) {
            std::string doc = am::to_structured(rep);
            if (opt.output.empty()) {
                std::cout << doc;
            } else {
                std::ofstream out(opt.output);
                if (!out) {
                    std::cerr << "error: cannot write '" << opt.output << "'\n";
                    return 2;
                }
                out << doc;
            }
            return rep.overall_pass ? 0 : 1;
        }
        std::cout << am::to_text(rep);
        return rep.overall_pass ? 0 : 1;
    } catch (const am::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
