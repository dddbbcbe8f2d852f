#pragma once

#include <vector>

#include "am/chart.hpp"
#include "am/tensor.hpp"

namespace am {

// Metric, its inverse and their coordinate derivatives at a point, assembled
// from the order-3 jet of the components.
struct MetricData {
    int n = 0;
    Mat g, ginv;
    std::vector<Mat> dg;      // dg[c](a,b)    = d_c g_ab
    std::vector<Mat> d2g;     // d2g[c*n+d]    = d_c d_d g
    std::vector<Mat> d3g;     // d3g[(c*n+d)*n+e]
    std::vector<Mat> dginv;   // d_c g^{-1}
    std::vector<Mat> d2ginv;  // d_c d_d g^{-1}

    const Mat& d2(int c, int d) const { return d2g[c * n + d]; }
    const Mat& d3(int c, int d, int e) const { return d3g[(c * n + d) * n + e]; }
};

MetricData metric_data(const Chart& chart, const Point& p);

// Christoffel symbols with first and second coordinate derivatives.
struct ChristoffelData {
    int n = 0;
    std::vector<double> G;    // [c][a][b]
    std::vector<double> dG;   // [e][c][a][b]
    std::vector<double> d2G;  // [f][e][c][a][b]

    double gamma(int c, int a, int b) const { return G[(c * n + a) * n + b]; }
    double dgamma(int e, int c, int a, int b) const { return dG[((e * n + c) * n + a) * n + b]; }
    double d2gamma(int f, int e, int c, int a, int b) const {
        return d2G[(((f * n + e) * n + c) * n + a) * n + b];
    }
};

ChristoffelData christoffel_data(const MetricData& m);

struct RicciData {
    int n = 0;
    Mat ric;
    std::vector<Mat> dric;   // coordinate derivative d_c Ric_ab
    std::vector<Mat> covd;   // covariant derivative (nabla_c Ric)_ab
    double scal = 0.0;
    Vec dscal;               // coordinate gradient of the scalar curvature
};

RicciData ricci_data(const Chart& chart, const Point& p);
Mat ricci(const Chart& chart, const Point& p);

// The Ricci tensor as a (0,2) field; component jets valid to order 1.
TensorField ricci_field(const Chart& chart);

// Covariant derivative, the new covariant index first:
// out[c][i...][a...] = (nabla_c T)^{i...}_{a...}.
TensorValue covariant_derivative(const TensorField& field, const Point& p);

// (L_X g)_ab.
Mat lie_derivative_metric(const VectorField& X, const Point& p);

struct DivTrace {
    Vec div;      // (div K)_c = g^{ab} nabla_a K_bc
    double trace; // g^{ab} K_ab
    Vec dtrace;   // (d tr K)_c = g^{ab} nabla_c K_ab
};

DivTrace divergence_and_trace(const TensorField& K, const Point& p);

// Gram-Schmidt of the coordinate frame in coordinate order; columns are the
// frame vectors.
Mat orthonormal_frame(const Chart& chart, const Point& p);
Mat orthonormal_frame(const Mat& g);

}  // namespace am
