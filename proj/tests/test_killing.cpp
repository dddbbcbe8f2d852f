#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "am/killing.hpp"
#include "am/product.hpp"
#include "am/zoo.hpp"

#include <cmath>

using namespace am;

TEST_CASE("conformal P of a conformally scaled flat metric") {
    Chart r2 = zoo::flat_r2();
    // K = x * g: conformal Killing with P = dx.
    TensorField K(&r2, 0, 2, [](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        out[0] = x[0];
        out[1] = Jet::constant(nv, 0.0);
        out[2] = Jet::constant(nv, 0.0);
        out[3] = x[0];
    });
    PointSampler sampler(r2, kDefaultSeed);
    for (int s = 0; s < 10; ++s) {
        Point p = sampler.next();
        Vec P = conformal_P_covector(K, p);
        CHECK(P[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(P[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(cyclic_residual_frame(K, p, &P) <= 1e-10);
        // without P the Killing defect is the full forced term
        CHECK(cyclic_residual_frame(K, p) >= 0.5);
    }
}

TEST_CASE("Ricci of heisenberg is a strict Killing tensor") {
    TotalBundle tb = build_total_bundle(zoo::heisenberg());
    TensorField ric = ricci_field(tb.chart);
    PointSampler sampler(tb.chart, kDefaultSeed);
    double max_grad = 0.0;
    for (int s = 0; s < 25; ++s) {
        Point p = sampler.next();
        CHECK(cyclic_residual_frame(ric, p) <= 1e-8);
        max_grad = std::max(max_grad, covariant_derivative(ric, p).max_abs());
        // constant-trace Killing tensor: conformal P must vanish too
        CHECK(conformal_P_covector(ric, p).cwiseAbs().maxCoeff() <= 1e-8);
    }
    CHECK(max_grad >= 0.1);
}

TEST_CASE("pair tensor of the sphere volume form") {
    Chart s2 = zoo::round_s2(1.0);
    PForm omega = make_form(s2, 2, [](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        Jet s = sin(x[0]);
        out[0] = out[3] = Jet::constant(nv, 0.0);
        out[1] = s;
        out[2] = -1.0 * s;
    });
    PointSampler sampler(s2, kDefaultSeed);
    // volume form of an Einstein surface is a conformal Killing 2-form
    for (int s = 0; s < 10; ++s) {
        Point p = sampler.next();
        Mat F = orthonormal_frame(s2, p);
        for (int a = 0; a < 2; ++a) CHECK(conformal_form_residual(omega, p, F.col(a)) <= 1e-9);
    }

    PairTensor pt = pair_tensor(omega, omega);
    for (int s = 0; s < 10; ++s) {
        Point p = sampler.next();
        Mat K = Mat::Zero(2, 2);
        TensorValue kv = pt.K.value_at(p);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) K(a, b) = kv.at({a, b});
        Mat g = s2.metric_value(p);
        CHECK((K - 2.0 * g).cwiseAbs().maxCoeff() <= 1e-9);

        TensorValue pv = pt.predicted_P.value_at(p);
        Vec P{{pv.at({0}), pv.at({1})}};
        CHECK(P.cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(cyclic_residual_frame(pt.K, p, &P) <= 1e-8);
    }
}

TEST_CASE("block sums of factor metrics are Killing on products") {
    std::vector<Chart> factors = {zoo::round_s2(1.0), zoo::flat_torus2()};
    ProductChart prod = make_product_chart(factors);
    TensorField g1 = metric_field(prod.factors[0]);
    TensorField g2 = metric_field(prod.factors[1]);
    // weighted block sum g1 (+) 3 g2 is parallel, hence Killing
    TensorField K = block_sum(prod, {g1, TensorField(&prod.factors[1], 0, 2,
                                                     [g2](const JetVec& x, JetVec& out) {
                                                         g2.eval(x, out);
                                                         for (auto& j : out) j = 3.0 * j;
                                                     })});
    PointSampler sampler(prod.chart, kDefaultSeed);
    for (int s = 0; s < 10; ++s) {
        Point p = sampler.next();
        CHECK(covariant_derivative(K, p).max_abs() <= 1e-10);
        CHECK(cyclic_residual_frame(K, p) <= 1e-10);
    }
}

TEST_CASE("classification of model charts") {
    Tolerances tol = Tolerances::exact();
    auto labels = [&](const Chart& c) { return classify(c, 30, kDefaultSeed, tol).labels; };

    std::set<std::string> space_form = {"einstein", "parallel-ricci", "A", "ACperp"};
    CHECK(labels(zoo::flat_r2()) == space_form);
    CHECK(labels(zoo::round_s2(1.0)) == space_form);
    CHECK(labels(zoo::fubini_study_cp1()) == space_form);
    CHECK(labels(zoo::perturbed_flat()) == std::set<std::string>{"none"});
}
