#include "am/chart.hpp"

namespace am {

namespace {

// Richardson-extrapolated central difference of a scalar callback.
double central_d1(const std::function<double(double)>& f, double h) {
    auto d = [&](double s) { return (f(s) - f(-s)) / (2.0 * s); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

}  // namespace

Chart Chart::from_numeric(int dim, Box domain, MetricValueFn metric, double fd_step) {
    Chart c;
    c.dim_ = dim;
    c.domain_ = std::move(domain);
    c.value_fn_ = std::move(metric);
    c.fd_step_ = fd_step;
    return c;
}

JetVec Chart::metric_jets(const Point& p) const {
    check_point(p);
    const int n = dim_;
    if (jet_fn_) {
        JetVec x = seed_jets(p.x);
        JetVec g(static_cast<size_t>(n) * n, Jet(n));
        jet_fn_(x, g);
        return g;
    }

    // Finite-difference tier.  Fill the jet component-wise: first and second
    // derivatives Richardson-extrapolated, third derivatives as differences
    // of second ones.
    auto comp = [&](const Vec& x, int a, int b) {
        Mat g;
        value_fn_(x, g);
        return g(a, b);
    };
    const double h = fd_step_;
    JetVec g(static_cast<size_t>(n) * n, Jet(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Jet& j = g[a * n + b];
            j = Jet::constant(n, comp(p.x, a, b));
            for (int c = 0; c < n; ++c) {
                auto along_c = [&](double s) {
                    Vec x = p.x;
                    x[c] += s;
                    return comp(x, a, b);
                };
                j.d1(c) = central_d1(along_c, h);
            }
            for (int c = 0; c < n; ++c)
                for (int d = c; d < n; ++d) {
                    auto d1_at = [&](double s) {
                        Vec x = p.x;
                        x[d] += s;
                        auto along_c = [&](double t) {
                            Vec y = x;
                            y[c] += t;
                            return comp(y, a, b);
                        };
                        return central_d1(along_c, h);
                    };
                    const double v = central_d1(d1_at, h);
                    j.d2(c, d) = v;
                    j.d2(d, c) = v;
                }
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    for (int e = d; e < n; ++e) {
                        auto d2_at = [&](double s) {
                            Vec x = p.x;
                            x[e] += s;
                            auto d1_at = [&](double t) {
                                Vec y = x;
                                y[d] += t;
                                auto along_c = [&](double u) {
                                    Vec z = y;
                                    z[c] += u;
                                    return comp(z, a, b);
                                };
                                return central_d1(along_c, h);
                            };
                            return central_d1(d1_at, h);
                        };
                        const double v = central_d1(d2_at, h * 2.0);
                        j.d3(c, d, e) = v;
                        j.d3(c, e, d) = v;
                    }
        }
    return g;
}

Mat Chart::metric_value(const Point& p) const {
    check_point(p);
    const int n = dim_;
    if (!jet_fn_) {
        Mat g;
        value_fn_(p.x, g);
        return g;
    }
    JetVec x;
    x.reserve(n);
    for (int i = 0; i < n; ++i) x.push_back(Jet::constant(n, p.x[i]));
    JetVec g(static_cast<size_t>(n) * n, Jet(n));
    jet_fn_(x, g);
    Mat m(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m(a, b) = g[a * n + b].value();
    return m;
}

Point PointSampler::next() {
    const Box& box = chart_->domain();
    const int n = box.dim();
    Vec x(n);
    for (int i = 0; i < n; ++i) {
        const double lo = box.bounds[i].first;
        const double hi = box.bounds[i].second;
        const double w = hi - lo;
        std::uniform_real_distribution<double> u(lo + margin_ * w, hi - margin_ * w);
        x[i] = u(rng_);
    }
    return Point{x};
}

std::vector<Point> PointSampler::take(int count) {
    std::vector<Point> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) pts.push_back(next());
    return pts;
}

}  // namespace am
