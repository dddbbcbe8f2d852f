#pragma once

#include <Eigen/Dense>

#include <vector>

namespace am {

// Truncated Taylor expansion of a scalar function of n variables: value plus
// exact partial derivatives up to order 3.  Arithmetic on Jet propagates
// derivatives without truncation error, which is what lets third derivatives
// of metric components come out at machine precision.
class Jet {
public:
    Jet() = default;
    explicit Jet(int n);

    static Jet constant(int n, double c);
    static Jet variable(int n, int index, double x);

    int nvars() const { return n_; }
    double value() const { return v_; }
    double d1(int a) const { return g_[a]; }
    double d2(int a, int b) const { return h_(a, b); }
    double d3(int a, int b, int c) const { return t_[(a * n_ + b) * n_ + c]; }

    double& value() { return v_; }
    double& d1(int a) { return g_[a]; }
    double& d2(int a, int b) { return h_(a, b); }
    double& d3(int a, int b, int c) { return t_[(a * n_ + b) * n_ + c]; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator+=(double c) { v_ += c; return *this; }
    Jet& operator-=(double c) { v_ -= c; return *this; }
    Jet& operator*=(double c);

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator+(Jet a, double c) { a += c; return a; }
    friend Jet operator+(double c, Jet a) { a += c; return a; }
    friend Jet operator-(Jet a, double c) { a -= c; return a; }
    friend Jet operator*(Jet a, double c) { a *= c; return a; }
    friend Jet operator*(double c, Jet a) { a *= c; return a; }
    friend Jet operator/(Jet a, double c) { a *= 1.0 / c; return a; }
    friend Jet operator-(double c, const Jet& a);
    friend Jet operator-(const Jet& a);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator/(double c, const Jet& b);

    // Composition with a univariate function given by its derivatives at
    // value(): third-order Faa di Bruno.
    Jet compose(double f0, double f1, double f2, double f3) const;

private:
    int n_ = 0;
    double v_ = 0.0;
    Eigen::VectorXd g_;
    Eigen::MatrixXd h_;
    std::vector<double> t_;
};

Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sqrt(const Jet& u);
Jet pow(const Jet& u, int k);

using JetVec = std::vector<Jet>;

// Coordinates of `x` seeded as independent variables.
JetVec seed_jets(const Eigen::VectorXd& x);

// The jet of the partial derivative d_a f, one order shallower than f
// (its own third derivatives are zeroed).
Jet partial(const Jet& f, int a);

// Gauss-Jordan inverse of a row-major n*n matrix of jets.
JetVec jet_matrix_inverse(const JetVec& m, int n);

}  // namespace am
