#include "am/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace am {

Jet::Jet(int n)
    : n_(n),
      v_(0.0),
      g_(Eigen::VectorXd::Zero(n)),
      h_(Eigen::MatrixXd::Zero(n, n)),
      t_(static_cast<size_t>(n) * n * n, 0.0) {}

Jet Jet::constant(int n, double c) {
    Jet j(n);
    j.v_ = c;
    return j;
}

Jet Jet::variable(int n, int index, double x) {
    Jet j(n);
    j.v_ = x;
    j.g_[index] = 1.0;
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    v_ += o.v_;
    g_ += o.g_;
    h_ += o.h_;
    for (size_t i = 0; i < t_.size(); ++i) t_[i] += o.t_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    v_ -= o.v_;
    g_ -= o.g_;
    h_ -= o.h_;
    for (size_t i = 0; i < t_.size(); ++i) t_[i] -= o.t_[i];
    return *this;
}

Jet& Jet::operator*=(double c) {
    v_ *= c;
    g_ *= c;
    h_ *= c;
    for (double& x : t_) x *= c;
    return *this;
}

Jet operator-(const Jet& a) {
    Jet r = a;
    r *= -1.0;
    return r;
}

Jet operator-(double c, const Jet& a) {
    Jet r = -a;
    r += c;
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    const int n = a.n_;
    Jet r(n);
    r.v_ = a.v_ * b.v_;
    r.g_ = a.g_ * b.v_ + b.g_ * a.v_;
    r.h_ = a.h_ * b.v_ + b.h_ * a.v_ + a.g_ * b.g_.transpose() + b.g_ * a.g_.transpose();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                r.d3(i, j, k) = a.d3(i, j, k) * b.v_ + b.d3(i, j, k) * a.v_
                              + a.h_(i, j) * b.g_[k] + a.h_(i, k) * b.g_[j] + a.h_(j, k) * b.g_[i]
                              + b.h_(i, j) * a.g_[k] + b.h_(i, k) * a.g_[j] + b.h_(j, k) * a.g_[i];
            }
    return r;
}

Jet Jet::compose(double f0, double f1, double f2, double f3) const {
    const int n = n_;
    Jet r(n);
    r.v_ = f0;
    r.g_ = f1 * g_;
    r.h_ = f1 * h_ + f2 * g_ * g_.transpose();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                r.d3(i, j, k) = f3 * g_[i] * g_[j] * g_[k]
                              + f2 * (h_(i, j) * g_[k] + h_(i, k) * g_[j] + h_(j, k) * g_[i])
                              + f1 * d3(i, j, k);
            }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * (1.0 / b); }

Jet operator/(double c, const Jet& b) {
    const double x = b.value();
    if (x == 0.0) throw std::domain_error("Jet: division by zero value");
    const double ix = 1.0 / x;
    return c * b.compose(ix, -ix * ix, 2.0 * ix * ix * ix, -6.0 * ix * ix * ix * ix);
}

Jet sin(const Jet& u) {
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return u.compose(s, c, -s, -c);
}

Jet cos(const Jet& u) {
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return u.compose(c, -s, -c, s);
}

Jet exp(const Jet& u) {
    const double e = std::exp(u.value());
    return u.compose(e, e, e, e);
}

Jet log(const Jet& u) {
    const double x = u.value();
    if (x <= 0.0) throw std::domain_error("Jet: log of non-positive value");
    return u.compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

Jet sqrt(const Jet& u) {
    const double x = u.value();
    if (x <= 0.0) throw std::domain_error("Jet: sqrt of non-positive value");
    const double s = std::sqrt(x);
    return u.compose(s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x));
}

Jet pow(const Jet& u, int k) {
    if (k == 0) return Jet::constant(u.nvars(), 1.0);
    if (k < 0) return 1.0 / pow(u, -k);
    const double x = u.value();
    const double f0 = std::pow(x, k);
    const double f1 = k * std::pow(x, k - 1);
    const double f2 = (k >= 2) ? k * (k - 1) * std::pow(x, k - 2) : 0.0;
    const double f3 = (k >= 3) ? k * (k - 1) * (k - 2) * std::pow(x, k - 3) : 0.0;
    return u.compose(f0, f1, f2, f3);
}

Jet partial(const Jet& f, int a) {
    const int n = f.nvars();
    Jet r(n);
    r.value() = f.d1(a);
    for (int i = 0; i < n; ++i) {
        r.d1(i) = f.d2(a, i);
        for (int j = 0; j < n; ++j) r.d2(i, j) = f.d3(a, i, j);
    }
    return r;
}

JetVec jet_matrix_inverse(const JetVec& m, int n) {
    JetVec a = m;
    JetVec inv(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv[i * n + j] = Jet::constant(a[0].nvars(), i == j ? 1.0 : 0.0);

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col].value()) > std::abs(a[piv * n + col].value())) piv = r;
        if (a[piv * n + col].value() == 0.0)
            throw std::domain_error("jet_matrix_inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a[piv * n + j], a[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
        const Jet d = 1.0 / a[col * n + col];
        for (int j = 0; j < n; ++j) {
            a[col * n + j] = a[col * n + j] * d;
            inv[col * n + j] = inv[col * n + j] * d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Jet f = a[r * n + col];
            for (int j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[col * n + j];
                inv[r * n + j] -= f * inv[col * n + j];
            }
        }
    }
    return inv;
}

JetVec seed_jets(const Eigen::VectorXd& x) {
    JetVec out;
    out.reserve(x.size());
    for (int i = 0; i < x.size(); ++i)
        out.push_back(Jet::variable(static_cast<int>(x.size()), i, x[i]));
    return out;
}

}  // namespace am
