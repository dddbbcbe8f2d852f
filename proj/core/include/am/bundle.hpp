#pragma once

#include <string>
#include <vector>

#include "am/forms.hpp"
#include "am/killing.hpp"
#include "am/product.hpp"

namespace am {

using EvalFn = std::function<void(const JetVec&, JetVec&)>;

// One almost Hodge factor (M_k, g_k, J_k) with Kahler form omega_k = c_k alpha_k.
struct FactorSpec {
    std::string name;
    int dim = 0;
    Box domain;
    MetricJetFn metric;
    EvalFn J;  // (1,1) components J^a_b, row-major [a][b], factor coordinates
    double kahler_scale = 1.0;  // c_k > 0
};

// Kahler form omega_ab = g(J e_a, e_b) derived from metric and J.
EvalFn kahler_form_eval(const FactorSpec& f);

// Everything Eq-of-the-bundle-metric needs, in one local trivialization.
struct BundleSpec {
    std::string name;
    std::vector<FactorSpec> factors;
    int rank = 0;                 // r
    Mat b;                        // r x r, symmetric positive definite
    Eigen::MatrixXi a;            // r x n integer matrix
    std::vector<EvalFn> potentials;  // r local 1-forms A_j on the base (m comps)
};

struct TotalBundle {
    BundleSpec spec;
    ProductChart base;  // product of the factor charts
    Chart chart;        // dim m + r, coordinates (base, t_1..t_r)
    int m = 0;          // base dimension
    int r = 0;          // torus rank
    Mat binv;

    Point base_point(const Point& p) const { return Point{p.x.head(m)}; }
};

// Validation reports for one factor: J^2 = -id, Hermitian metric, closed and
// co-closed Kahler form.
std::vector<ResidualReport> validate_factor(const FactorSpec& f, int samples, uint64_t seed,
                                            double tol);

// Builds the trivialized total space and verifies the curvature equation
// dA_j = 2 pi sum_i (a_ji / c_i) omega_i at sample points.
TotalBundle build_total_bundle(const BundleSpec& spec, int check_samples = 25,
                               uint64_t seed = kDefaultSeed, double tol = 1e-8);

// Fundamental fields xi^i = d/dt_i.
std::vector<VectorField> fundamental_fields(const TotalBundle& tb);

// Connection form theta_i = dt_i + A_i on the total chart.
PForm theta_form(const TotalBundle& tb, int i);

// Lift of 2 pi sum_i (a_ji / c_i) omega_i to the total chart (equals d theta_j).
PForm lifted_curvature_form(const TotalBundle& tb, int j);

// (T_i)^c_a = Gamma^c_{a,t_i}: the (1,1) tensor T_i X = nabla_X xi^i.
Mat t_tensor(const TotalBundle& tb, int i, const Point& p);

// Closed form on the base: pi sum_j b_ij sum_k (a_jk / c_k) J_k^*.
Mat t_tilde_predicted(const TotalBundle& tb, int i, const Point& base_pt);

// Metric-orthogonal projector onto span{xi^i}.
Mat vertical_projector(const TotalBundle& tb, const Point& p);

struct OneillValue {
    Vec closed;     // sum b^{ij} (g(E,T_iF) xi^j + g(xi^i,F) T_jE)
    Vec geometric;  // V nabla_{HE}(HF) + H nabla_{HE}(VF)
};

OneillValue oneill_A(const TotalBundle& tb, const Vec& E, const Vec& F, const Point& p);

// The other O'Neill tensor (fiber second fundamental form); zero for this
// construction.
Vec oneill_T(const TotalBundle& tb, const Vec& E, const Vec& F, const Point& p);

struct RicciDecomposition {
    Mat direct;                         // full Ricci of the total chart
    Mat vert_direct, vert_closed;       // r x r on (xi^s, xi^l)
    Mat mixed_direct;                   // m x r on (H e_a, xi^l); closed form is 0
    Mat horiz_direct, horiz_closed;     // m x m on (H e_a, H e_b)
    Mat C;                              // the vertical constants C_sl
    Mat horiz_closed_half_coeff;        // closed horizontal block with the 1/2
                                        // coefficient as printed; kept so the
                                        // report can show both candidates
};

RicciDecomposition ricci_decomposition(const TotalBundle& tb, const Point& p);

struct LiftResult {
    TensorField lifted;                       // horizontal lift on the total chart
    std::vector<double> j_invariance_defect;  // per factor
};

// Horizontal lift of block-diagonal factor tensors K_1 (+) ... (+) K_n, with
// the per-factor J-invariance defect max |K_k(J_k X, Y) + K_k(X, J_k Y)|.
LiftResult lift_killing(const TotalBundle& tb, const std::vector<EvalFn>& factor_tensors,
                        int samples, uint64_t seed);

struct ForcedPReport {
    ResidualReport vertical;  // P solved from all-vertical cyclic sums
    ResidualReport mixed;     // P solved from (horizontal, vertical, vertical)
};

// The obstruction behind the no-conformal-lift remark: both slot patterns
// force P to vanish for a horizontal lift.
ForcedPReport no_conformal_lift_check(const TotalBundle& tb, const TensorField& K, int samples,
                                      uint64_t seed, double tol);

}  // namespace am
