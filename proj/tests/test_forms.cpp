#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "am/forms.hpp"
#include "am/zoo.hpp"

#include <cmath>

using namespace am;

namespace {

PForm poly_one_form(const Chart& chart) {
    const int n = chart.dim();
    return make_form(chart, 1, [n](const JetVec& x, JetVec& out) {
        for (int a = 0; a < n; ++a) {
            Jet v = x[a] * x[(a + 1) % n];
            out[a] = v * v + x[(a + 2) % n];
        }
    });
}

}  // namespace

TEST_CASE("d of d vanishes") {
    for (Chart chart : {zoo::perturbed_flat(), zoo::round_s2(1.0)}) {
        PForm phi = poly_one_form(chart);
        PForm dphi = exterior_derivative(phi);
        PointSampler sampler(chart, kDefaultSeed);
        for (int s = 0; s < 25; ++s) {
            Point p = sampler.next();
            CHECK(exterior_derivative_value(dphi, p).max_abs() <= 1e-10);
            CHECK(antisymmetry_defect(dphi.value_at(p)) <= 1e-10);
        }
    }
}

TEST_CASE("top-degree d overflows to the zero form") {
    Chart r2 = zoo::flat_r2();
    PForm vol = make_form(r2, 2, [](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        out[0] = out[3] = Jet::constant(nv, 0.0);
        out[1] = Jet::constant(nv, 1.0);
        out[2] = Jet::constant(nv, -1.0);
    });
    bool overflow = false;
    TensorValue d = exterior_derivative_value(vol, Point{Vec{{0.1, 0.2}}}, &overflow);
    CHECK(overflow);
    CHECK(d.max_abs() == 0.0);
}

TEST_CASE("interior product is an antiderivation for the shuffle wedge") {
    Chart chart = zoo::perturbed_flat();
    Point p{Vec{{0.2, -0.3, 0.5}}};
    PForm alpha = poly_one_form(chart);
    PForm dbeta = exterior_derivative(poly_one_form(chart));
    TensorValue a = alpha.value_at(p);
    TensorValue b = dbeta.value_at(p);
    Vec X{{0.7, -0.2, 1.1}};

    TensorValue lhs = interior_product(X, wedge(a, b));
    TensorValue iab = wedge(interior_product(X, a), b);
    TensorValue aib = wedge(a, interior_product(X, b));
    for (size_t i = 0; i < lhs.c.size(); ++i)
        CHECK(lhs.c[i] == doctest::Approx(iab.c[i] - aib.c[i]).epsilon(1e-12));
}

TEST_CASE("codifferential on flat space") {
    Chart r2 = zoo::flat_r2();
    PForm xdx = make_form(r2, 1, [](const JetVec& x, JetVec& out) {
        out[0] = x[0];
        out[1] = Jet::constant(x[0].nvars(), 0.0);
    });
    Point p{Vec{{0.3, 0.4}}};
    TensorValue d = codifferential_value(xdx, p);
    CHECK(d.rank == 0);
    CHECK(d.c[0] == doctest::Approx(-1.0));
}

TEST_CASE("form inner product normalization") {
    Mat ginv = Mat::Identity(2, 2);
    TensorValue vol(2, 2);
    vol.c = {0.0, 1.0, -1.0, 0.0};
    CHECK(form_inner(ginv, vol, vol) == doctest::Approx(1.0));
}

TEST_CASE("Kahler forms of every factor are closed and co-closed") {
    for (const FactorSpec& f : zoo::base_factors()) {
        auto reports = validate_factor(f, 40, kDefaultSeed, 1e-10);
        for (const ResidualReport& r : reports) {
            INFO(r.name);
            CHECK(r.passed);
        }
    }
}
