// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "am/report.hpp"
#include "am/zoo.hpp"

using namespace am;

namespace {

int failures = 0;

void criterion(int number, const char* summary, bool passed, const std::string& detail = "") {
    std::printf("criterion %2d: %s  %s%s%s\n", number, passed ? "PASS" : "FAIL", summary,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!passed) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Chart> all_charts() {
    std::vector<Chart> charts;
    for (const auto& e : zoo::entries()) {
        if (e.is_bundle)
            charts.push_back(build_total_bundle(e.bundle()).chart);
        else
            charts.push_back(e.chart());
    }
    return charts;
}

// 1. Geometry core soundness at 200 points per chart, <= 60 s.
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    double compat = 0.0, torsion = 0.0, symm = 0.0, bianchi = 0.0;
    for (const Chart& chart : all_charts()) {
        PointSampler sampler(chart, kDefaultSeed);
        TensorField g = metric_field(chart);
        TensorField ric = ricci_field(chart);
        for (int s = 0; s < 200; ++s) {
            Point p = sampler.next();
            compat = std::max(compat, covariant_derivative(g, p).max_abs());
            ChristoffelData cd = christoffel_data(metric_data(chart, p));
            for (int c = 0; c < chart.dim(); ++c)
                for (int a = 0; a < chart.dim(); ++a)
                    for (int b = 0; b < a; ++b)
                        torsion = std::max(torsion,
                                           std::abs(cd.gamma(c, a, b) - cd.gamma(c, b, a)));
            RicciData rd = ricci_data(chart, p);
            symm = std::max(symm, (rd.ric - rd.ric.transpose()).cwiseAbs().maxCoeff());
            DivTrace dt = divergence_and_trace(ric, p);
            Mat frame = orthonormal_frame(chart, p);
            for (int a = 0; a < chart.dim(); ++a)
                bianchi = std::max(bianchi, std::abs(frame.col(a).dot(dt.div - 0.5 * rd.dscal)));
        }
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << "compat " << compat << ", torsion " << torsion << ", ricci-symm " << symm << ", bianchi "
      << bianchi << ", " << secs << "s";
    criterion(1, "geometry core soundness on all zoo charts",
              compat <= 1e-10 && torsion <= 1e-10 && symm <= 1e-10 && bianchi <= 1e-8 &&
                  secs <= 60.0,
              d.str());
}

// 2. Quadratic-form vs cyclic conformal-Killing condition: polarization identity.
void criterion_2() {
    Chart chart = zoo::perturbed_flat();
    const int n = chart.dim();
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        // random symmetric (0,2) field with quadratic-polynomial components
        std::vector<double> c0(n * n), c1(n * n * n), c2(n * n * n * n);
        for (auto& v : c0) v = coeff(rng);
        for (auto& v : c1) v = coeff(rng);
        for (auto& v : c2) v = coeff(rng);
        TensorField K(&chart, 0, 2, [n, c0, c1, c2](const JetVec& x, JetVec& out) {
            const int nv = x[0].nvars();
            for (int a = 0; a < n; ++a)
                for (int b = 0; b <= a; ++b) {
                    Jet v = Jet::constant(nv, c0[a * n + b]);
                    for (int i = 0; i < n; ++i) {
                        v += c1[(a * n + b) * n + i] * x[i];
                        for (int j = 0; j < n; ++j)
                            v += c2[((a * n + b) * n + i) * n + j] * x[i] * x[j];
                    }
                    out[a * n + b] = v;
                    out[b * n + a] = v;
                }
        });
        PointSampler sampler(chart, kDefaultSeed + trial);
        Point p = sampler.next();
        TensorValue dK = covariant_derivative(K, p);
        Vec P = conformal_P_covector(K, p);
        Mat g = chart.metric_value(p);

        Vec X(n), Y(n), Z(n);
        for (int i = 0; i < n; ++i) {
            X[i] = coeff(rng);
            Y[i] = coeff(rng);
            Z[i] = coeff(rng);
        }
        auto T = [&](const Vec& u, const Vec& v, const Vec& w) {
            double s = 0.0;
            for (int c = 0; c < n; ++c)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) s += u[c] * v[a] * w[b] * dK.at({c, a, b});
            return s;
        };
        auto S = [&](const Vec& v) { return T(v, v, v) - P.dot(v) * v.dot(g * v); };
        double lhs = T(X, Y, Z) + T(Y, Z, X) + T(Z, X, Y) -
                     (P.dot(X) * Y.dot(g * Z) +
                      P.dot(Y) * Z.dot(g * X) +
                      P.dot(Z) * X.dot(g * Y));
        double rhs = 0.5 * (S(X + Y + Z) - S(X + Y) - S(X + Z) - S(Y + Z) + S(X) + S(Y) + S(Z));
        worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    criterion(2, "quadratic-form and cyclic conditions agree by polarization", worst <= 1e-10,
              "max relative defect " + std::to_string(worst));
}

// 3. Conformal Killing 1-forms on the round sphere and their pair tensor.
void criterion_3() {
    Chart s2 = zoo::round_s2(1.0);
    PForm rot = make_form(s2, 1, [](const JetVec& x, JetVec& out) {
        Jet s = sin(x[0]);
        out[0] = Jet::constant(x[0].nvars(), 0.0);
        out[1] = s * s;  // dual of the rotation field d/dphi
    });
    PForm grad = make_form(s2, 1, [](const JetVec& x, JetVec& out) {
        out[0] = -1.0 * sin(x[0]);  // d(cos theta)
        out[1] = Jet::constant(x[0].nvars(), 0.0);
    });

    double form_res = 0.0, pair_res = 0.0, coclosed_p = 0.0;
    PointSampler sampler(s2, kDefaultSeed);
    PairTensor mixed = pair_tensor(rot, grad);
    PairTensor pure = pair_tensor(rot, rot);
    for (int s = 0; s < 100; ++s) {
        Point p = sampler.next();
        Mat F = orthonormal_frame(s2, p);
        for (int a = 0; a < 2; ++a) {
            form_res = std::max(form_res, conformal_form_residual(rot, p, F.col(a)));
            form_res = std::max(form_res, conformal_form_residual(grad, p, F.col(a)));
        }
        TensorValue pv = mixed.predicted_P.value_at(p);
        Vec P{{pv.at({0}), pv.at({1})}};
        pair_res = std::max(pair_res, cyclic_residual_frame(mixed.K, p, &P));
        coclosed_p = std::max(coclosed_p, pure.predicted_P.value_at(p).max_abs());
    }
    std::ostringstream d;
    d << "twistor " << form_res << ", pair cyclic " << pair_res << ", co-closed P " << coclosed_p;
    criterion(3, "pair tensors of conformal Killing 1-forms on the sphere",
              form_res <= 1e-8 && pair_res <= 1e-8 && coclosed_p <= 1e-10, d.str());
}

// 4. Bundle structure tensors on all three bundles at 100 points.
void criterion_4() {
    double worst_exact = 0.0, worst = 0.0;
    for (const BundleSpec& spec : zoo::bundles()) {
        TotalBundle tb = build_total_bundle(spec);
        const int m = tb.m, r = tb.r, dim = m + r;
        auto xis = fundamental_fields(tb);
        PointSampler sampler(tb.chart, kDefaultSeed);
        for (int s = 0; s < 100; ++s) {
            Point p = sampler.next();
            for (int i = 0; i < r; ++i) {
                worst_exact =
                    std::max(worst_exact, lie_derivative_metric(xis[i], p).cwiseAbs().maxCoeff());
                TensorValue th = theta_form(tb, i).value_at(p);
                for (int j = 0; j < r; ++j)
                    if (th.at({m + j}) != (i == j ? 1.0 : 0.0)) worst_exact = 1.0;
                Mat T = t_tensor(tb, i, p);
                for (int j = 0; j < r; ++j)
                    worst_exact = std::max(worst_exact, T.col(m + j).cwiseAbs().maxCoeff());
                TensorValue dth = exterior_derivative_value(theta_form(tb, i), p);
                TensorValue curv = lifted_curvature_form(tb, i).value_at(p);
                for (size_t k = 0; k < dth.c.size(); ++k)
                    worst = std::max(worst, std::abs(dth.c[k] - curv.c[k]));
            }
            if (s % 10 == 0) {  // frame pairs are dim^2 evaluations
                Mat F = orthonormal_frame(tb.chart, p);
                for (int a = 0; a < dim; ++a)
                    for (int b = 0; b < dim; ++b) {
                        OneillValue A = oneill_A(tb, F.col(a), F.col(b), p);
                        worst = std::max(worst, (A.closed - A.geometric).cwiseAbs().maxCoeff());
                        worst = std::max(worst,
                                         oneill_T(tb, F.col(a), F.col(b), p).cwiseAbs().maxCoeff());
                    }
            }
        }
    }
    std::ostringstream d;
    d << "exact-tier max " << worst_exact << ", structure max " << worst;
    criterion(4, "submersion structure on all zoo bundles",
              worst_exact <= 1e-10 && worst <= 1e-8, d.str());
}

// 5. Ricci decomposition blocks, C constancy, runtime bound for dim 6.
void criterion_5() {
    double worst = 0.0;
    double t2_secs = 0.0;
    for (const BundleSpec& spec : zoo::bundles()) {
        auto t0 = std::chrono::steady_clock::now();
        TotalBundle tb = build_total_bundle(spec);
        PointSampler sampler(tb.chart, kDefaultSeed);
        Mat C0;
        for (int s = 0; s < 20; ++s) {
            Point p = sampler.next();
            RicciDecomposition rd = ricci_decomposition(tb, p);
            worst = std::max(worst, (rd.vert_direct - rd.vert_closed).cwiseAbs().maxCoeff());
            worst = std::max(worst, rd.mixed_direct.cwiseAbs().maxCoeff());
            worst = std::max(worst, (rd.horiz_direct - rd.horiz_closed).cwiseAbs().maxCoeff());
            if (s == 0)
                C0 = rd.C;
            else
                worst = std::max(worst, (rd.C - C0).cwiseAbs().maxCoeff());
        }
        if (spec.name == "t2_over_s2xs2") t2_secs = seconds_since(t0);
    }
    std::ostringstream d;
    d << "max block defect " << worst << ", dim-6 case " << t2_secs << "s";
    criterion(5, "Ricci decomposition matches the closed forms", worst <= 1e-8 && t2_secs <= 300.0,
              d.str());
}

// 6. Main theorem plus strictness on heisenberg.
void criterion_6() {
    double worst = 0.0, grad = 0.0;
    for (const BundleSpec& spec : zoo::bundles()) {
        TotalBundle tb = build_total_bundle(spec);
        TensorField ric = ricci_field(tb.chart);
        PointSampler sampler(tb.chart, kDefaultSeed);
        for (int s = 0; s < 20; ++s) {
            Point p = sampler.next();
            worst = std::max(worst, cyclic_residual_frame(ric, p));
            if (spec.name == "heisenberg")
                grad = std::max(grad, covariant_derivative(ric, p).max_abs());
        }
    }
    std::ostringstream d;
    d << "max cyclic " << worst << ", heisenberg max |nabla Ric| " << grad;
    criterion(6, "total-space Ricci is a Killing tensor (strict on heisenberg)",
              worst <= 1e-8 && grad >= 0.1, d.str());
}

// 7. Killing lift, both directions.
void criterion_7() {
    double good_res = 0.0, good_defect = 0.0;
    for (const BundleSpec& spec : zoo::bundles()) {
        TotalBundle tb = build_total_bundle(spec);
        std::vector<EvalFn> gs;
        for (const FactorSpec& f : tb.spec.factors) gs.push_back(f.metric);
        LiftResult lifted = lift_killing(tb, gs, 25, kDefaultSeed);
        for (double dft : lifted.j_invariance_defect) good_defect = std::max(good_defect, dft);
        PointSampler sampler(tb.chart, kDefaultSeed);
        for (int s = 0; s < 15; ++s)
            good_res = std::max(good_res, cyclic_residual_frame(lifted.lifted, sampler.next()));
    }
    TotalBundle tb = build_total_bundle(zoo::heisenberg());
    LiftResult bad = lift_killing(tb, {zoo::dxdx_tensor()}, 25, kDefaultSeed);
    double bad_res = 0.0;
    PointSampler sampler(tb.chart, kDefaultSeed);
    for (int s = 0; s < 15; ++s)
        bad_res = std::max(bad_res, cyclic_residual_frame(bad.lifted, sampler.next()));
    std::ostringstream d;
    d << "J-invariant lifts " << good_res << "; dxdx residual " << bad_res << ", defect "
      << bad.j_invariance_defect[0];
    criterion(7, "Killing lift passes iff the factor tensors are J-invariant",
              good_res <= 1e-8 && good_defect <= 1e-10 && bad_res >= 0.01 &&
                  bad.j_invariance_defect[0] > 0.0,
              d.str());
}

// 8. Forced-P obstruction and the conformal label on bundles.
void criterion_8() {
    TotalBundle tb = build_total_bundle(zoo::heisenberg());
    std::vector<EvalFn> gs = {tb.spec.factors[0].metric};
    LiftResult lifted = lift_killing(tb, gs, 25, kDefaultSeed);
    ForcedPReport fp = no_conformal_lift_check(tb, lifted.lifted, 15, kDefaultSeed, 1e-10);

    bool nonzero_p_fired = false;
    for (const BundleSpec& spec : zoo::bundles()) {
        TotalBundle b = build_total_bundle(spec);
        ClassifyResult res = classify(b.chart, 15, kDefaultSeed, Tolerances::exact());
        if (res.labels.count("ACperp") && res.max_forced_P > 1e-8) nonzero_p_fired = true;
    }
    std::ostringstream d;
    d << "forced P vertical " << fp.vertical.max_residual << ", mixed " << fp.mixed.max_residual
      << ", nonzero-P conformal label fired: " << (nonzero_p_fired ? "yes" : "no");
    criterion(8, "no conformal freedom for lifted tensors",
              fp.vertical.max_residual <= 1e-10 && fp.mixed.max_residual <= 1e-10 &&
                  !nonzero_p_fired,
              d.str());
}

// 9. Negative controls.
void criterion_9() {
    SuiteConfig cfg;
    cfg.target = "counterexamples";
    cfg.samples = 20;
    RunReport rep = run(cfg);
    bool ok = rep.counterexamples.size() == 3 && rep.overall_pass;
    std::ostringstream d;
    for (const CounterexampleOutcome& c : rep.counterexamples) {
        d << c.name << (c.expected_failure_observed ? " ok" : " MISSED") << " (" << c.residual
          << ") ";
        ok = ok && c.expected_failure_observed;
    }
    criterion(9, "every counterexample fails exactly its named check", ok, d.str());
}

// 10. CLI determinism and exit codes.
void criterion_10() {
    const std::string bin = AMVER_BIN;
    auto code = [&bin](const std::string& args) {
        int status = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    auto slurp = [](const char* path) {
        std::ifstream in(path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    int pass_code = code("verify round_s2 --samples 10");
    int fail_code = code("verify round_s2 --samples 10 --tolerance 1e-18");
    std::ofstream("/tmp/amver_acc_bad.json") << "{ nope";
    int parse_code = code("verify /tmp/amver_acc_bad.json");
    code("report heisenberg --samples 10 --output /tmp/amver_acc_1.json");
    code("report heisenberg --samples 10 --output /tmp/amver_acc_2.json");
    std::string a = slurp("/tmp/amver_acc_1.json"), b = slurp("/tmp/amver_acc_2.json");
    std::ostringstream d;
    d << "exit codes " << pass_code << "/" << fail_code << "/" << parse_code
      << ", reports identical: " << (a == b && !a.empty() ? "yes" : "no");
    criterion(10, "CLI determinism and exit-code contract",
              pass_code == 0 && fail_code == 1 && parse_code == 2 && !a.empty() && a == b,
              d.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("acceptance: %s\n", failures == 0 ? "PASS" : "FAIL");
    return failures == 0 ? 0 : 1;
}
