#pragma once

#include <set>
#include <string>
#include <vector>

#include "am/forms.hpp"
#include "am/geometry.hpp"

namespace am {

struct ResidualReport {
    std::string name;
    int samples = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double scale = 0.0;    // max magnitude of terms entering the residual
    bool vacuous = false;  // check carried no information (all terms ~ 0)
};

class ResidualAccum {
public:
    void add(double residual, double scale = 1.0) {
        residual = std::abs(residual);
        max_ = std::max(max_, residual);
        sum_ += residual;
        scale_ = std::max(scale_, std::abs(scale));
        ++count_;
    }
    ResidualReport report(std::string name, double tolerance, double vacuous_below = -1.0) const;

private:
    double max_ = 0.0, sum_ = 0.0, scale_ = 0.0;
    long count_ = 0;
};

// Tolerance tiers: exact derivative oracle vs finite-difference fallback.
struct Tolerances {
    double tol = 1e-8;
    double strictness_factor = 100.0;  // strict-A needs |nabla Ric| >= factor*tol

    static Tolerances exact() { return Tolerances{1e-8, 100.0}; }
    static Tolerances finite_difference() { return Tolerances{1e-4, 100.0}; }
};

// P(X) = (2 div K(X) + d tr K(X)) / (n + 2), as a covector at the point.
Vec conformal_P_covector(const TensorField& K, const Point& p);
double conformal_P(const TensorField& K, const Vec& X, const Point& p);

// |C_{X,Y,Z} nabla_X K(Y,Z) - C_{X,Y,Z} P(X) g(Y,Z)|; P covector optional
// (nullptr = Killing defect).  `scale` receives the largest single term.
double cyclic_residual(const TensorField& K, const Point& p, const Vec& X, const Vec& Y,
                       const Vec& Z, const Vec* P = nullptr, double* scale = nullptr);

// Max cyclic residual over all orthonormal-frame triples at a point.
double cyclic_residual_frame(const TensorField& K, const Point& p, const Vec* P = nullptr,
                             double* scale = nullptr);

// Conformal Killing form defect of Eq-type
// nabla_X phi - X -| d phi/(p+1) + X^flat ^ delta phi/(n-p+1),
// maximized over orthonormal frame p-tuples.
double conformal_form_residual(const PForm& phi, const Point& p, const Vec& X);

struct PairTensor {
    TensorField K;      // K(X,Y) = g(X -| phi, Y -| psi) + g(Y -| phi, X -| psi)
    PForm predicted_P;  // the 1-form forced by the twistor equation
};

PairTensor pair_tensor(const PForm& phi, const PForm& psi);

struct ClassifyResult {
    std::set<std::string> labels;  // of {einstein, parallel, A, strict-A, ACperp}
    std::vector<ResidualReport> reports;
    double max_forced_P = 0.0;  // largest |conformal P of Ric| seen
};

// Residual-threshold classification with label monotonicity
// einstein <= parallel <= A <= ACperp enforced.
ClassifyResult classify(const Chart& chart, int samples, uint64_t seed, const Tolerances& tols);

}  // namespace am
