#include "am/zoo.hpp"

#include <numbers>

namespace am::zoo {

namespace {

constexpr double kPi = std::numbers::pi;

MetricJetFn flat_metric(int n) {
    return [n](const JetVec& x, JetVec& g) {
        const int nv = x[0].nvars();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) g[a * n + b] = Jet::constant(nv, a == b ? 1.0 : 0.0);
    };
}

MetricJetFn round_s2_metric(double r) {
    const double r2 = r * r;
    return [r2](const JetVec& x, JetVec& g) {
        const int nv = x[0].nvars();
        Jet s = sin(x[0]);
        g[0] = Jet::constant(nv, r2);
        g[1] = Jet::constant(nv, 0.0);
        g[2] = Jet::constant(nv, 0.0);
        g[3] = r2 * s * s;
    };
}

MetricJetFn fubini_study_metric() {
    return [](const JetVec& x, JetVec& g) {
        const int nv = x[0].nvars();
        Jet u = 1.0 + x[0] * x[0] + x[1] * x[1];
        Jet w = Jet::constant(nv, 1.0) / (u * u);
        g[0] = w;
        g[1] = Jet::constant(nv, 0.0);
        g[2] = Jet::constant(nv, 0.0);
        g[3] = w;
    };
}

Box square(double lo, double hi, int n) {
    Box b;
    for (int i = 0; i < n; ++i) b.bounds.push_back({lo, hi});
    return b;
}

EvalFn rotation_J() {
    return [](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        out[0] = Jet::constant(nv, 0.0);
        out[1] = Jet::constant(nv, -1.0);
        out[2] = Jet::constant(nv, 1.0);
        out[3] = Jet::constant(nv, 0.0);
    };
}

EvalFn sphere_J() {
    // J d_theta = (1/sin theta) d_phi, J d_phi = -sin theta d_theta.
    return [](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        Jet s = sin(x[0]);
        out[0] = Jet::constant(nv, 0.0);
        out[1] = -1.0 * s;
        out[2] = Jet::constant(nv, 1.0) / s;
        out[3] = Jet::constant(nv, 0.0);
    };
}

// A_j = -pi sum_k a_jk cos(theta_k) dphi_k on a product of unit round spheres.
EvalFn sphere_product_potential(const Eigen::MatrixXi& a, int j, int nfac) {
    Eigen::VectorXi row = a.row(j);
    return [row, nfac](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        for (int k = 0; k < nfac; ++k) {
            out[2 * k] = Jet::constant(nv, 0.0);
            out[2 * k + 1] = (-kPi * row[k]) * cos(x[2 * k]);
        }
    };
}

}  // namespace

Chart flat_r2() { return Chart(2, square(-1.0, 1.0, 2), flat_metric(2)); }

Chart flat_torus2() { return Chart(2, square(0.0, 1.0, 2), flat_metric(2)); }

Chart round_s2(double radius) {
    Box b{{{0.1, kPi - 0.1}, {0.0, 2.0 * kPi}}};
    return Chart(2, b, round_s2_metric(radius));
}

Chart fubini_study_cp1() { return Chart(2, square(-1.0, 1.0, 2), fubini_study_metric()); }

Chart perturbed_flat() {
    return Chart(3, square(-1.0, 1.0, 3), [](const JetVec& x, JetVec& g) {
        const int nv = x[0].nvars();
        for (auto& j : g) j = Jet::constant(nv, 0.0);
        g[0] = Jet::constant(nv, 1.0);
        g[4] = 1.0 + 0.1 * x[0] * x[0];
        g[8] = Jet::constant(nv, 1.0);
    });
}

FactorSpec flat_torus2_factor() {
    FactorSpec f;
    f.name = "flat_torus2";
    f.dim = 2;
    f.domain = square(0.0, 1.0, 2);
    f.metric = flat_metric(2);
    f.J = rotation_J();
    f.kahler_scale = 2.0 * kPi;
    return f;
}

FactorSpec round_s2_factor(double radius) {
    FactorSpec f;
    f.name = "round_s2";
    f.dim = 2;
    f.domain = Box{{{0.1, kPi - 0.1}, {0.0, 2.0 * kPi}}};
    f.metric = round_s2_metric(radius);
    f.J = sphere_J();
    f.kahler_scale = 2.0 * radius * radius;
    return f;
}

FactorSpec fubini_study_cp1_factor() {
    FactorSpec f;
    f.name = "fubini_study_cp1";
    f.dim = 2;
    f.domain = square(-1.0, 1.0, 2);
    f.metric = fubini_study_metric();
    f.J = rotation_J();
    f.kahler_scale = 0.5;
    return f;
}

std::vector<FactorSpec> base_factors() {
    return {flat_torus2_factor(), round_s2_factor(1.0), fubini_study_cp1_factor()};
}

BundleSpec heisenberg() {
    BundleSpec s;
    s.name = "heisenberg";
    s.factors = {flat_torus2_factor()};
    s.rank = 1;
    s.b = Mat::Constant(1, 1, 1.0);
    s.a = Eigen::MatrixXi::Constant(1, 1, 1);
    s.potentials = {[](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        out[0] = Jet::constant(nv, 0.0);
        out[1] = x[0];
    }};
    return s;
}

BundleSpec hopf_berger(double b11) {
    BundleSpec s;
    s.name = "hopf_berger";
    s.factors = {round_s2_factor(1.0)};
    s.rank = 1;
    s.b = Mat::Constant(1, 1, b11);
    s.a = Eigen::MatrixXi::Constant(1, 1, 1);
    s.potentials = {sphere_product_potential(s.a, 0, 1)};
    return s;
}

BundleSpec t2_over_s2xs2(const Mat& b, const Eigen::MatrixXi& a) {
    BundleSpec s;
    s.name = "t2_over_s2xs2";
    s.factors = {round_s2_factor(1.0), round_s2_factor(1.0)};
    s.rank = 2;
    s.b = b;
    s.a = a;
    s.potentials = {sphere_product_potential(a, 0, 2), sphere_product_potential(a, 1, 2)};
    return s;
}

BundleSpec t2_over_s2xs2() {
    Mat b(2, 2);
    b << 1.0, 0.0, 0.0, 2.0;
    return t2_over_s2xs2(b, Eigen::MatrixXi::Identity(2, 2));
}

std::vector<BundleSpec> bundles() {
    return {heisenberg(), hopf_berger(1.0), t2_over_s2xs2()};
}

double hopf_einstein_b11() { return 1.0 / (kPi * kPi); }

EvalFn dxdx_tensor() {
    return [](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        out[0] = Jet::constant(nv, 1.0);
        out[1] = Jet::constant(nv, 0.0);
        out[2] = Jet::constant(nv, 0.0);
        out[3] = Jet::constant(nv, 0.0);
    };
}

BundleSpec non_spd_bundle() {
    Mat b(2, 2);
    b << 1.0, 2.0, 2.0, 1.0;
    BundleSpec s = t2_over_s2xs2(b, Eigen::MatrixXi::Identity(2, 2));
    s.name = "non_spd";
    return s;
}

const std::vector<ZooEntry>& entries() {
    static const std::vector<ZooEntry> list = [] {
        const std::set<std::string> space_form = {"einstein", "parallel-ricci", "A", "ACperp"};
        const std::set<std::string> strict = {"A", "strict-A", "ACperp"};
        std::vector<ZooEntry> v;
        v.push_back({"flat_r2", false, flat_r2, {}, space_form});
        v.push_back({"flat_torus2", false, flat_torus2, {}, space_form});
        v.push_back({"round_s2", false, [] { return round_s2(1.0); }, {}, space_form});
        v.push_back({"fubini_study_cp1", false, fubini_study_cp1, {}, space_form});
        v.push_back({"perturbed_flat", false, perturbed_flat, {}, {"none"}});
        v.push_back({"heisenberg", true, {}, heisenberg, strict});
        v.push_back({"hopf_berger_1", true, {}, [] { return hopf_berger(1.0); }, strict});
        v.push_back({"hopf_einstein", true, {}, [] { return hopf_berger(hopf_einstein_b11()); },
                     space_form});
        v.push_back({"t2_over_s2xs2", true, {}, [] { return t2_over_s2xs2(); }, strict});
        return v;
    }();
    return list;
}

const ZooEntry* find(const std::string& name) {
    for (const ZooEntry& e : entries())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace am::zoo
