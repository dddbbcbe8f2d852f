#include "am/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "am/zoo.hpp"

namespace am {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void run_geometry(const Chart& chart, const SuiteConfig& cfg, RunReport& out) {
    const double tol = cfg.tol();
    const double tight = cfg.exact_tier ? 1e-10 : tol;
    PointSampler sampler(chart, cfg.seed);
    TensorField g = metric_field(chart);
    ResidualAccum compat, symm, bianchi;
    for (int s = 0; s < cfg.samples; ++s) {
        Point p = sampler.next();
        compat.add(covariant_derivative(g, p).max_abs());
        RicciData rd = ricci_data(chart, p);
        symm.add((rd.ric - rd.ric.transpose()).cwiseAbs().maxCoeff(), rd.ric.cwiseAbs().maxCoeff());
        TensorField ric = ricci_field(chart);
        DivTrace dt = divergence_and_trace(ric, p);
        Mat frame = orthonormal_frame(chart, p);
        for (int a = 0; a < chart.dim(); ++a)
            bianchi.add(frame.col(a).dot(dt.div - 0.5 * rd.dscal), rd.scal);
    }
    out.reports.push_back(compat.report("geometry:metric-compatibility", tight));
    out.reports.push_back(symm.report("geometry:ricci-symmetry", tight));
    out.reports.push_back(bianchi.report("geometry:contracted-bianchi", tol));
}

void run_killing_suite(const Chart& chart, const SuiteConfig& cfg, RunReport& out) {
    const double tol = cfg.tol();
    PointSampler sampler(chart, cfg.seed);
    TensorField g = metric_field(chart);
    ResidualAccum killing, forced_p;
    for (int s = 0; s < cfg.samples; ++s) {
        Point p = sampler.next();
        killing.add(cyclic_residual_frame(g, p));
        forced_p.add(conformal_P_covector(g, p).cwiseAbs().maxCoeff());
    }
    out.reports.push_back(killing.report("killing:metric-is-killing", tol));
    out.reports.push_back(forced_p.report("killing:metric-forced-P", tol));
}

void run_classify_suite(const Chart& chart, const SuiteConfig& cfg, RunReport& out) {
    Tolerances tols{cfg.tol(), 100.0};
    ClassifyResult res = classify(chart, cfg.samples, cfg.seed, tols);
    for (ResidualReport r : res.reports) {
        // informational: these residuals decide labels, not overall pass/fail
        r.name = "classify:test-" + r.name;
        out.reports.push_back(r);
    }
    out.labels = res.labels;
    if (res.labels.count("ACperp")) {
        // the conformal label must never be earned through a nonzero forced P
        ResidualAccum p;
        p.add(res.max_forced_P);
        out.reports.push_back(p.report("classify:acperp-forced-P", std::max(cfg.tol(), 1e-8)));
    }
}

void run_bundle_suite(const TotalBundle& tb, const SuiteConfig& cfg, RunReport& out) {
    const double tol = cfg.tol();
    const double tight = cfg.exact_tier ? 1e-10 : tol;
    const int m = tb.m, r = tb.r;
    const int dim = m + r;

    for (const FactorSpec& f : tb.spec.factors)
        for (ResidualReport rep : validate_factor(f, cfg.samples, cfg.seed, tight)) {
            rep.name = "bundle:factor-" + rep.name;
            out.reports.push_back(rep);
        }

    auto xis = fundamental_fields(tb);
    PointSampler sampler(tb.chart, cfg.seed);
    ResidualAccum lie, dual, t_fiber, t_anti, t_closed, extheta, oneill_a, oneill_t;
    ResidualAccum ric_v, ric_m, ric_h, c_const;
    Mat C0;
    const int heavy = std::max(5, cfg.samples / 5);
    for (int s = 0; s < cfg.samples; ++s) {
        Point p = sampler.next();
        Mat g = tb.chart.metric_value(p);
        for (int i = 0; i < r; ++i) {
            lie.add(lie_derivative_metric(xis[i], p).cwiseAbs().maxCoeff());
            TensorValue th = theta_form(tb, i).value_at(p);
            for (int j = 0; j < r; ++j)
                dual.add(th.at({m + j}) - (i == j ? 1.0 : 0.0));

            Mat T = t_tensor(tb, i, p);
            t_anti.add((g * T + T.transpose() * g).cwiseAbs().maxCoeff(), T.cwiseAbs().maxCoeff());
            for (int j = 0; j < r; ++j) t_fiber.add(T.col(m + j).cwiseAbs().maxCoeff());

            Mat PV = vertical_projector(tb, p);
            Mat Tt = t_tilde_predicted(tb, i, tb.base_point(p));
            for (int a = 0; a < m; ++a) {
                Vec e = Vec::Zero(dim);
                e[a] = 1.0;
                Vec u = T * (e - PV * e);
                t_closed.add((u.head(m) - Tt.col(a)).cwiseAbs().maxCoeff(),
                             Tt.cwiseAbs().maxCoeff());
            }

            TensorValue dth = exterior_derivative_value(theta_form(tb, i), p);
            TensorValue curv = lifted_curvature_form(tb, i).value_at(p);
            for (size_t k = 0; k < dth.c.size(); ++k)
                extheta.add(dth.c[k] - curv.c[k], curv.max_abs());
        }

        if (s < heavy) {
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    Vec E = Vec::Zero(dim), F = Vec::Zero(dim);
                    E[a] = 1.0;
                    F[b] = 1.0;
                    OneillValue A = oneill_A(tb, E, F, p);
                    oneill_a.add((A.closed - A.geometric).cwiseAbs().maxCoeff(),
                                 A.closed.cwiseAbs().maxCoeff());
                    oneill_t.add(oneill_T(tb, E, F, p).cwiseAbs().maxCoeff());
                }

            RicciDecomposition rd = ricci_decomposition(tb, p);
            ric_v.add((rd.vert_direct - rd.vert_closed).cwiseAbs().maxCoeff(),
                      rd.vert_direct.cwiseAbs().maxCoeff());
            ric_m.add(rd.mixed_direct.cwiseAbs().maxCoeff(), 1.0);
            ric_h.add((rd.horiz_direct - rd.horiz_closed).cwiseAbs().maxCoeff(),
                      rd.horiz_direct.cwiseAbs().maxCoeff());
            if (C0.size() == 0)
                C0 = rd.C;
            else
                c_const.add((rd.C - C0).cwiseAbs().maxCoeff(), C0.cwiseAbs().maxCoeff());
        }
    }
    out.reports.push_back(lie.report("bundle:fundamental-killing", tight));
    out.reports.push_back(dual.report("bundle:theta-duality", 0.0));
    out.reports.push_back(t_anti.report("bundle:t-antisymmetry", tol));
    out.reports.push_back(t_fiber.report("bundle:t-fiber-vanishing", tight));
    out.reports.push_back(t_closed.report("bundle:t-closed-form", tol));
    out.reports.push_back(extheta.report("bundle:curvature-form", tol));
    out.reports.push_back(oneill_a.report("bundle:oneill-a", tol));
    out.reports.push_back(oneill_t.report("bundle:oneill-t", tol));
    out.reports.push_back(ric_v.report("bundle:ricci-vertical", tol));
    out.reports.push_back(ric_m.report("bundle:ricci-mixed", tol));
    out.reports.push_back(ric_h.report("bundle:ricci-horizontal", tol));
    out.reports.push_back(c_const.report("bundle:c-constancy", tol));

    TensorField ric = ricci_field(tb.chart);
    PointSampler msampler(tb.chart, cfg.seed + 1);
    ResidualAccum main_thm;
    for (int s = 0; s < heavy; ++s) main_thm.add(cyclic_residual_frame(ric, msampler.next()));
    out.reports.push_back(main_thm.report("bundle:main-theorem", tol));

    // Horizontal lift of the factor metrics: Killing upstairs, P forced to 0.
    std::vector<EvalFn> gs;
    for (const FactorSpec& f : tb.spec.factors) gs.push_back(f.metric);
    LiftResult lifted = lift_killing(tb, gs, cfg.samples, cfg.seed);
    ResidualAccum jdef, lift_res;
    for (double d : lifted.j_invariance_defect) jdef.add(d);
    PointSampler lsampler(tb.chart, cfg.seed + 2);
    for (int s = 0; s < heavy; ++s)
        lift_res.add(cyclic_residual_frame(lifted.lifted, lsampler.next()));
    out.reports.push_back(jdef.report("bundle:lift-j-invariance", tight));
    out.reports.push_back(lift_res.report("bundle:lift-killing", tol));

    ForcedPReport fp = no_conformal_lift_check(tb, lifted.lifted, heavy, cfg.seed, 1e-10);
    fp.vertical.name = "bundle:" + fp.vertical.name;
    fp.mixed.name = "bundle:" + fp.mixed.name;
    out.reports.push_back(fp.vertical);
    out.reports.push_back(fp.mixed);
}

void run_counterexamples(const SuiteConfig& cfg, const std::string& only, RunReport& out) {
    const int samples = std::min(cfg.samples, 25);
    if (only.empty() || only == "dxdx-lift") {
        TotalBundle tb = build_total_bundle(zoo::heisenberg());
        LiftResult bad = lift_killing(tb, {zoo::dxdx_tensor()}, samples, cfg.seed);
        PointSampler sampler(tb.chart, cfg.seed);
        double worst = 0.0;
        for (int s = 0; s < samples; ++s)
            worst = std::max(worst, cyclic_residual_frame(bad.lifted, sampler.next()));
        bool observed = worst >= 0.01 && bad.j_invariance_defect[0] >= 0.9;
        out.counterexamples.push_back(
            {"dxdx-lift", "killing residual of a non-J-invariant lift", observed, worst});
    }
    if (only.empty() || only == "perturbed-flat") {
        Chart c = zoo::perturbed_flat();
        ClassifyResult res = classify(c, std::max(10, samples), cfg.seed, Tolerances{cfg.tol(), 100.0});
        double worst = 0.0;
        for (const ResidualReport& r : res.reports)
            if (r.name == "cyclic-parallel") worst = r.max_residual;
        out.counterexamples.push_back({"perturbed-flat", "classification is exactly {none}",
                                       res.labels == std::set<std::string>{"none"}, worst});
    }
    if (only.empty() || only == "non-spd-b") {
        bool observed = false;
        try {
            build_total_bundle(zoo::non_spd_bundle());
        } catch (const DegenerateMetricError&) {
            observed = true;
        }
        out.counterexamples.push_back({"non-spd-b", "build rejects a non-SPD matrix b", observed,
                                       observed ? 1.0 : 0.0});
    }
}

Chart numeric_shadow(const Chart& exact) {
    MetricJetFn fn = exact.metric_fn();
    const int n = exact.dim();
    return Chart::from_numeric(n, exact.domain(), [fn, n](const Vec& x, Mat& g) {
        JetVec xj;
        for (int i = 0; i < n; ++i) xj.push_back(Jet::constant(n, x[i]));
        JetVec gj(static_cast<size_t>(n) * n, Jet(n));
        fn(xj, gj);
        g.resize(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) g(a, b) = gj[a * n + b].value();
    });
}

}  // namespace

const std::set<std::string>& SuiteConfig::all_suites() {
    static const std::set<std::string> s = {"geometry", "killing", "bundle", "classify",
                                            "counterexample"};
    return s;
}

RunReport run(const SuiteConfig& config) {
    if (config.samples < 10) throw SpecError("config error: samples must be >= 10");
    for (const std::string& s : config.suites)
        if (!SuiteConfig::all_suites().count(s))
            throw SpecError("config error: unknown suite '" + s + "'");

    RunReport out;
    out.config = config;
    std::set<std::string> suites =
        config.suites.empty() ? SuiteConfig::all_suites() : config.suites;
    auto want = [&suites](const std::string& s) { return suites.count(s) > 0; };

    // Resolve the target.
    std::string cx_only;
    const zoo::ZooEntry* entry = zoo::find(config.target);
    ParsedTarget parsed;
    TotalBundle tb;
    Chart chart;
    if (config.target.rfind("counterexample", 0) == 0) {
        out.target_kind = "counterexample";
        if (config.target.size() > 15 && config.target[14] == ':')
            cx_only = config.target.substr(15);
        if (!cx_only.empty() && cx_only != "dxdx-lift" && cx_only != "perturbed-flat" &&
            cx_only != "non-spd-b")
            throw SpecError("unknown counterexample '" + cx_only + "'");
        suites = {"counterexample"};
    } else if (entry != nullptr) {
        out.expected_labels = entry->expected_labels;
        out.labels_checked = true;
        if (entry->is_bundle) {
            tb = build_total_bundle(entry->bundle());
            out.target_kind = "bundle";
        } else {
            chart = entry->chart();
            out.target_kind = "chart";
        }
    } else if (config.target.find('.') != std::string::npos ||
               config.target.find('/') != std::string::npos) {
        parsed = load_spec_file(config.target);
        if (parsed.is_bundle) {
            tb = build_total_bundle(parsed.bundle);
            out.target_kind = "bundle";
        } else {
            chart = parsed.chart;
            out.target_kind = "chart";
        }
    } else {
        throw SpecError("unknown target '" + config.target + "'");
    }

    const bool is_bundle = out.target_kind == "bundle";
    if (out.target_kind != "counterexample") {
        const Chart& primary = is_bundle ? tb.chart : chart;
        Chart shadow;
        const Chart* level = &primary;
        if (!config.exact_tier) {
            shadow = numeric_shadow(primary);
            level = &shadow;
        }
        auto timed = [&out](const char* name, auto&& fn) {
            auto t0 = Clock::now();
            fn();
            out.timings.push_back({name, seconds_since(t0)});
        };
        if (want("geometry")) timed("geometry", [&] { run_geometry(*level, config, out); });
        if (want("killing")) timed("killing", [&] { run_killing_suite(*level, config, out); });
        if (want("bundle") && is_bundle && config.exact_tier)
            timed("bundle", [&] { run_bundle_suite(tb, config, out); });
        if (want("classify")) timed("classify", [&] { run_classify_suite(*level, config, out); });
    }
    if (want("counterexample")) {
        auto t0 = Clock::now();
        run_counterexamples(config, cx_only, out);
        out.timings.push_back({"counterexample", seconds_since(t0)});
    }

    out.overall_pass = true;
    for (const ResidualReport& r : out.reports) {
        if (r.name.rfind("classify:test-", 0) == 0) continue;  // informational
        if (!r.vacuous && !r.passed) out.overall_pass = false;
    }
    for (const CounterexampleOutcome& c : out.counterexamples)
        if (!c.expected_failure_observed) out.overall_pass = false;
    if (out.labels_checked && want("classify") && out.target_kind != "counterexample" &&
        out.labels != out.expected_labels)
        out.overall_pass = false;
    return out;
}

std::string to_text(const RunReport& rep) {
    std::ostringstream os;
    os << "target: " << rep.config.target << " (" << rep.target_kind << ")\n";
    os << "tier: " << (rep.config.exact_tier ? "exact" : "finite-difference")
       << "  samples: " << rep.config.samples << "  seed: " << rep.config.seed
       << "  tolerance: " << rep.config.tol() << "\n\n";
    for (const ResidualReport& r : rep.reports) {
        const bool info = r.name.rfind("classify:test-", 0) == 0;
        os << (info ? "  [info] " : r.vacuous ? "  [vac ] " : r.passed ? "  [ ok ] " : "  [FAIL] ")
           << r.name
           << "  max=" << r.max_residual << " mean=" << r.mean_residual << " tol=" << r.tolerance
           << "\n";
    }
    for (const CounterexampleOutcome& c : rep.counterexamples)
        os << (c.expected_failure_observed ? "  [ ok ] " : "  [FAIL] ") << "counterexample:"
           << c.name << "  expected failure " << (c.expected_failure_observed ? "observed" : "NOT observed")
           << " (residual " << c.residual << ", " << c.check << ")\n";
    if (!rep.labels.empty() || rep.labels_checked) {
        os << "\nlabels:";
        for (const std::string& l : rep.labels) os << " " << l;
        if (rep.labels_checked) {
            os << "   expected:";
            for (const std::string& l : rep.expected_labels) os << " " << l;
            os << (rep.labels == rep.expected_labels ? "  (match)" : "  (MISMATCH)");
        }
        os << "\n";
    }
    os << "\ntimings:";
    for (const auto& [name, sec] : rep.timings) os << " " << name << "=" << sec << "s";
    os << "\noverall: " << (rep.overall_pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string to_structured(const RunReport& rep) {
    nlohmann::json doc;
    doc["schema"] = "amver-report/1";
    doc["config"] = {{"target", rep.config.target},
                     {"suites", rep.config.suites.empty()
                                    ? std::vector<std::string>(SuiteConfig::all_suites().begin(),
                                                               SuiteConfig::all_suites().end())
                                    : std::vector<std::string>(rep.config.suites.begin(),
                                                               rep.config.suites.end())},
                     {"tier", rep.config.exact_tier ? "exact" : "finite-difference"},
                     {"samples", rep.config.samples},
                     {"seed", rep.config.seed},
                     {"tolerance", rep.config.tol()}};
    doc["target_kind"] = rep.target_kind;
    doc["reports"] = nlohmann::json::array();
    for (const ResidualReport& r : rep.reports)
        doc["reports"].push_back({{"name", r.name},
                                  {"samples", r.samples},
                                  {"max_residual", r.max_residual},
                                  {"mean_residual", r.mean_residual},
                                  {"tolerance", r.tolerance},
                                  {"scale", r.scale},
                                  {"passed", r.passed},
                                  {"vacuous", r.vacuous}});
    doc["counterexamples"] = nlohmann::json::array();
    for (const CounterexampleOutcome& c : rep.counterexamples)
        doc["counterexamples"].push_back({{"name", c.name},
                                          {"check", c.check},
                                          {"expected_failure_observed", c.expected_failure_observed},
                                          {"residual", c.residual}});
    doc["labels"] = std::vector<std::string>(rep.labels.begin(), rep.labels.end());
    if (rep.labels_checked)
        doc["expected_labels"] =
            std::vector<std::string>(rep.expected_labels.begin(), rep.expected_labels.end());
    doc["overall_pass"] = rep.overall_pass;
    return doc.dump(2) + "\n";
}

}  // namespace am
