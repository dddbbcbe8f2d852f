#include "am/geometry.hpp"

#include <cmath>

namespace am {

MetricData metric_data(const Chart& chart, const Point& p) {
    const int n = chart.dim();
    JetVec jets = chart.metric_jets(p);

    MetricData m;
    m.n = n;
    m.g = Mat::Zero(n, n);
    m.dg.assign(n, Mat::Zero(n, n));
    m.d2g.assign(static_cast<size_t>(n) * n, Mat::Zero(n, n));
    m.d3g.assign(static_cast<size_t>(n) * n * n, Mat::Zero(n, n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Jet& j = jets[a * n + b];
            m.g(a, b) = j.value();
            for (int c = 0; c < n; ++c) {
                m.dg[c](a, b) = j.d1(c);
                for (int d = 0; d < n; ++d) {
                    m.d2g[c * n + d](a, b) = j.d2(c, d);
                    for (int e = 0; e < n; ++e)
                        m.d3g[(c * n + d) * n + e](a, b) = j.d3(c, d, e);
                }
            }
        }

    Eigen::LLT<Mat> llt(m.g);
    if (llt.info() != Eigen::Success)
        throw DegenerateMetricError("metric is not positive definite at the sample point");
    m.ginv = llt.solve(Mat::Identity(n, n));

    m.dginv.assign(n, Mat());
    for (int c = 0; c < n; ++c) m.dginv[c] = -m.ginv * m.dg[c] * m.ginv;
    m.d2ginv.assign(static_cast<size_t>(n) * n, Mat());
    for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
            m.d2ginv[c * n + d] = -(m.dginv[d] * m.dg[c] * m.ginv + m.ginv * m.d2(c, d) * m.ginv +
                                    m.ginv * m.dg[c] * m.dginv[d]);
    return m;
}

ChristoffelData christoffel_data(const MetricData& m) {
    const int n = m.n;
    ChristoffelData cd;
    cd.n = n;
    const size_t n3 = static_cast<size_t>(n) * n * n;
    cd.G.assign(n3, 0.0);
    cd.dG.assign(n3 * n, 0.0);
    cd.d2G.assign(n3 * n * n, 0.0);

    // Christoffel symbols of the first kind and their derivatives.
    auto F = [&](int d, int a, int b) {
        return 0.5 * (m.dg[a](d, b) + m.dg[b](d, a) - m.dg[d](a, b));
    };
    auto dF = [&](int e, int d, int a, int b) {
        return 0.5 * (m.d2(e, a)(d, b) + m.d2(e, b)(d, a) - m.d2(e, d)(a, b));
    };
    auto d2F = [&](int f, int e, int d, int a, int b) {
        return 0.5 * (m.d3(f, e, a)(d, b) + m.d3(f, e, b)(d, a) - m.d3(f, e, d)(a, b));
    };

    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double s = 0.0;
                for (int d = 0; d < n; ++d) s += m.ginv(c, d) * F(d, a, b);
                cd.G[(c * n + a) * n + b] = s;
                for (int e = 0; e < n; ++e) {
                    double se = 0.0;
                    for (int d = 0; d < n; ++d)
                        se += m.dginv[e](c, d) * F(d, a, b) + m.ginv(c, d) * dF(e, d, a, b);
                    cd.dG[((e * n + c) * n + a) * n + b] = se;
                    for (int f = 0; f < n; ++f) {
                        double sf = 0.0;
                        for (int d = 0; d < n; ++d)
                            sf += m.d2ginv[f * n + e](c, d) * F(d, a, b) +
                                  m.dginv[e](c, d) * dF(f, d, a, b) +
                                  m.dginv[f](c, d) * dF(e, d, a, b) +
                                  m.ginv(c, d) * d2F(f, e, d, a, b);
                        cd.d2G[(((f * n + e) * n + c) * n + a) * n + b] = sf;
                    }
                }
            }
    return cd;
}

RicciData ricci_data(const Chart& chart, const Point& p) {
    const MetricData m = metric_data(chart, p);
    const ChristoffelData cd = christoffel_data(m);
    const int n = m.n;

    RicciData r;
    r.n = n;
    r.ric = Mat::Zero(n, n);
    r.dric.assign(n, Mat::Zero(n, n));
    r.covd.assign(n, Mat::Zero(n, n));

    // Ric_ab = d_c G^c_ab - d_a G^c_cb + G^c_cd G^d_ab - G^c_ad G^d_cb.
    // The sign makes Ric of the round sphere positive.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double v = 0.0;
            for (int c = 0; c < n; ++c) {
                v += cd.dgamma(c, c, a, b) - cd.dgamma(a, c, c, b);
                for (int d = 0; d < n; ++d)
                    v += cd.gamma(c, c, d) * cd.gamma(d, a, b) -
                         cd.gamma(c, a, d) * cd.gamma(d, c, b);
            }
            r.ric(a, b) = v;
            for (int e = 0; e < n; ++e) {
                double ve = 0.0;
                for (int c = 0; c < n; ++c) {
                    ve += cd.d2gamma(e, c, c, a, b) - cd.d2gamma(e, a, c, c, b);
                    for (int d = 0; d < n; ++d)
                        ve += cd.dgamma(e, c, c, d) * cd.gamma(d, a, b) +
                              cd.gamma(c, c, d) * cd.dgamma(e, d, a, b) -
                              cd.dgamma(e, c, a, d) * cd.gamma(d, c, b) -
                              cd.gamma(c, a, d) * cd.dgamma(e, d, c, b);
                }
                r.dric[e](a, b) = ve;
            }
        }

    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double v = r.dric[c](a, b);
                for (int d = 0; d < n; ++d)
                    v -= cd.gamma(d, c, a) * r.ric(d, b) + cd.gamma(d, c, b) * r.ric(a, d);
                r.covd[c](a, b) = v;
            }

    r.scal = (m.ginv.array() * r.ric.array()).sum();
    r.dscal = Vec::Zero(n);
    for (int e = 0; e < n; ++e)
        r.dscal[e] = (m.dginv[e].array() * r.ric.array()).sum() +
                     (m.ginv.array() * r.dric[e].array()).sum();
    return r;
}

Mat ricci(const Chart& chart, const Point& p) { return ricci_data(chart, p).ric; }

TensorField ricci_field(const Chart& chart) {
    const Chart* ch = &chart;
    const int n = chart.dim();
    return TensorField(ch, 0, 2, [ch, n](const JetVec& x, JetVec& out) {
        Vec pv(n);
        for (int i = 0; i < n; ++i) pv[i] = x[i].value();
        RicciData rd = ricci_data(*ch, Point{pv});
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Jet j(n);
                j.value() = rd.ric(a, b);
                for (int k = 0; k < n; ++k) {
                    double d = 0.0;
                    for (int c = 0; c < n; ++c) d += rd.dric[c](a, b) * x[c].d1(k);
                    j.d1(k) = d;
                }
                out[a * n + b] = j;
            }
    });
}

TensorValue covariant_derivative(const TensorField& field, const Point& p) {
    const Chart& chart = *field.chart();
    const int n = chart.dim();
    const int pr = field.contravariant_rank();
    const int r = field.rank();
    JetVec jets = field.jets_at(p);
    const ChristoffelData cd = christoffel_data(metric_data(chart, p));

    TensorValue out(n, r + 1);
    std::vector<int> idx(r, 0);
    const size_t count = jets.size();
    for (size_t flat = 0; flat < count; ++flat) {
        // decode
        size_t rem = flat;
        for (int i = r - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(rem % n);
            rem /= n;
        }
        for (int c = 0; c < n; ++c) {
            double v = jets[flat].d1(c);
            for (int slot = 0; slot < r; ++slot) {
                const int i = idx[slot];
                size_t stride = 1;
                for (int k = slot + 1; k < r; ++k) stride *= n;
                const size_t base = flat - static_cast<size_t>(i) * stride;
                for (int d = 0; d < n; ++d) {
                    const double Td = jets[base + static_cast<size_t>(d) * stride].value();
                    if (slot < pr)
                        v += cd.gamma(i, c, d) * Td;
                    else
                        v -= cd.gamma(d, c, i) * Td;
                }
            }
            out.c[static_cast<size_t>(c) * count + flat] = v;
        }
    }
    return out;
}

Mat lie_derivative_metric(const VectorField& X, const Point& p) {
    const Chart& chart = *X.chart();
    const int n = chart.dim();
    if (X.contravariant_rank() != 1 || X.covariant_rank() != 0)
        throw RankError("lie_derivative_metric expects a vector field");
    const MetricData m = metric_data(chart, p);
    const ChristoffelData cd = christoffel_data(m);
    JetVec xj = X.jets_at(p);

    // nabla_a X^c (coordinate components)
    Mat nab(n, n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            double v = xj[c].d1(a);
            for (int d = 0; d < n; ++d) v += cd.gamma(c, a, d) * xj[d].value();
            nab(a, c) = v;
        }
    Mat lowered(n, n);  // nabla_a X_b
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double v = 0.0;
            for (int c = 0; c < n; ++c) v += m.g(b, c) * nab(a, c);
            lowered(a, b) = v;
        }
    return lowered + lowered.transpose();
}

DivTrace divergence_and_trace(const TensorField& K, const Point& p) {
    const Chart& chart = *K.chart();
    const int n = chart.dim();
    if (K.contravariant_rank() != 0 || K.covariant_rank() != 2)
        throw RankError("divergence_and_trace expects a (0,2) tensor");
    const TensorValue kv = K.value_at(p);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (std::abs(kv.at({a, b}) - kv.at({b, a})) > 1e-9 * (1.0 + kv.max_abs()))
                throw RankError("divergence_and_trace expects a symmetric tensor");

    const MetricData m = metric_data(chart, p);
    const TensorValue dk = covariant_derivative(K, p);  // [c][a][b]

    DivTrace out;
    out.div = Vec::Zero(n);
    out.dtrace = Vec::Zero(n);
    out.trace = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            out.trace += m.ginv(a, b) * kv.at({a, b});
            for (int c = 0; c < n; ++c) {
                out.div[c] += m.ginv(a, b) * dk.at({a, b, c});
                out.dtrace[c] += m.ginv(a, b) * dk.at({c, a, b});
            }
        }
    return out;
}

Mat orthonormal_frame(const Mat& g) {
    const int n = static_cast<int>(g.rows());
    Mat f = Mat::Identity(n, n);
    for (int a = 0; a < n; ++a) {
        Vec v = f.col(a);
        for (int b = 0; b < a; ++b) {
            const double proj = f.col(b).transpose() * g * v;
            v -= proj * f.col(b);
        }
        const double nrm = std::sqrt(double(v.transpose() * g * v));
        if (!(nrm > 0.0)) throw DegenerateMetricError("orthonormal_frame: degenerate metric");
        f.col(a) = v / nrm;
    }
    return f;
}

Mat orthonormal_frame(const Chart& chart, const Point& p) {
    return orthonormal_frame(chart.metric_value(p));
}

}  // namespace am
