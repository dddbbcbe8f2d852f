#include "am/forms.hpp"

#include <cmath>

namespace am {

namespace {

size_t ipow(int n, int r) {
    size_t s = 1;
    for (int i = 0; i < r; ++i) s *= n;
    return s;
}

void decode(size_t flat, int n, int r, std::vector<int>& idx) {
    idx.resize(r);
    for (int i = r - 1; i >= 0; --i) {
        idx[i] = static_cast<int>(flat % n);
        flat /= n;
    }
}

}  // namespace

double antisymmetry_defect(const TensorValue& phi) {
    const int n = phi.n, r = phi.rank;
    if (r < 2) return 0.0;
    double worst = 0.0;
    std::vector<int> idx;
    for (size_t f = 0; f < phi.c.size(); ++f) {
        decode(f, n, r, idx);
        for (int s = 0; s + 1 < r; ++s) {
            std::vector<int> sw = idx;
            std::swap(sw[s], sw[s + 1]);
            worst = std::max(worst, std::abs(phi.c[f] + phi.at(sw)));
        }
    }
    return worst;
}

TensorValue exterior_derivative_value(const PForm& phi, const Point& pt, bool* overflow) {
    const int n = phi.chart()->dim();
    const int p = form_degree(phi);
    if (overflow) *overflow = false;
    if (p >= n) {
        if (overflow) *overflow = true;
        return TensorValue(n, p + 1);
    }
    JetVec jets = phi.jets_at(pt);
    TensorValue out(n, p + 1);
    std::vector<int> idx, sub;
    for (size_t f = 0; f < out.c.size(); ++f) {
        decode(f, n, p + 1, idx);
        double v = 0.0;
        for (int k = 0; k <= p; ++k) {
            sub.clear();
            for (int i = 0; i <= p; ++i)
                if (i != k) sub.push_back(idx[i]);
            size_t sf = 0;
            for (int i : sub) sf = sf * n + i;
            const double term = jets[sf].d1(idx[k]);
            v += (k % 2 == 0) ? term : -term;
        }
        out.c[f] = v;
    }
    return out;
}

PForm exterior_derivative(const PForm& phi) {
    const Chart* ch = phi.chart();
    const int n = ch->dim();
    const int p = form_degree(phi);
    if (p >= n) {
        return make_form(*ch, p + 1, [n, p](const JetVec& x, JetVec& out) {
            for (auto& j : out) j = Jet::constant(x[0].nvars(), 0.0);
        });
    }
    auto inner = phi;
    return make_form(*ch, p + 1, [inner, n, p](const JetVec& x, JetVec& out) {
        JetVec jets(ipow(n, p), Jet(x[0].nvars()));
        inner.eval(x, jets);
        std::vector<int> idx, sub;
        for (size_t f = 0; f < out.size(); ++f) {
            decode(f, n, p + 1, idx);
            Jet v(x[0].nvars());
            for (int k = 0; k <= p; ++k) {
                sub.clear();
                for (int i = 0; i <= p; ++i)
                    if (i != k) sub.push_back(idx[i]);
                size_t sf = 0;
                for (int i : sub) sf = sf * n + i;
                Jet term = partial(jets[sf], idx[k]);
                if (k % 2 == 0)
                    v += term;
                else
                    v -= term;
            }
            out[f] = v;
        }
    });
}

TensorValue codifferential_value(const PForm& phi, const Point& pt) {
    const int p = form_degree(phi);
    if (p < 1) throw RankError("codifferential of a 0-form");
    const Chart& chart = *phi.chart();
    const int n = chart.dim();
    const MetricData m = metric_data(chart, pt);
    const TensorValue dk = covariant_derivative(phi, pt);  // [a][b][B...]
    TensorValue out(n, p - 1);
    std::vector<int> idx;
    for (size_t f = 0; f < out.c.size(); ++f) {
        decode(f, n, p - 1, idx);
        double v = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::vector<int> full{a, b};
                full.insert(full.end(), idx.begin(), idx.end());
                v -= m.ginv(a, b) * dk.at(full);
            }
        out.c[f] = v;
    }
    return out;
}

TensorValue interior_product(const Vec& X, const TensorValue& phi) {
    const int n = phi.n, p = phi.rank;
    if (p < 1) throw RankError("interior product with a 0-form");
    TensorValue out(n, p - 1);
    const size_t stride = ipow(n, p - 1);
    for (size_t f = 0; f < out.c.size(); ++f) {
        double v = 0.0;
        for (int a = 0; a < n; ++a) v += X[a] * phi.c[a * stride + f];
        out.c[f] = v;
    }
    return out;
}

void jet_interior_product(const JetVec& X, const JetVec& phi, int n, int degree, JetVec& out) {
    if (degree < 1) throw RankError("interior product with a 0-form");
    const size_t stride = ipow(n, degree - 1);
    out.assign(stride, Jet(X[0].nvars()));
    for (size_t f = 0; f < stride; ++f) {
        Jet v(X[0].nvars());
        for (int a = 0; a < n; ++a) v += X[a] * phi[a * stride + f];
        out[f] = v;
    }
}

TensorValue wedge(const TensorValue& a, const TensorValue& b, bool* overflow) {
    const int n = a.n, p = a.rank, q = b.rank;
    if (overflow) *overflow = false;
    if (p + q > n) {
        if (overflow) *overflow = true;
        return TensorValue(n, std::min(p + q, n));
    }
    TensorValue out(n, p + q);
    const int r = p + q;
    std::vector<int> idx, ia, ib;
    for (size_t f = 0; f < out.c.size(); ++f) {
        decode(f, n, r, idx);
        double v = 0.0;
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            if (__builtin_popcount(mask) != p) continue;
            ia.clear();
            ib.clear();
            int sign_exp = 0, seen = 0;
            for (int pos = 0; pos < r; ++pos) {
                if (mask & (1u << pos)) {
                    ia.push_back(idx[pos]);
                    sign_exp += pos - seen;
                    ++seen;
                } else {
                    ib.push_back(idx[pos]);
                }
            }
            const double s = (sign_exp % 2 == 0) ? 1.0 : -1.0;
            v += s * a.at(ia) * b.at(ib);
        }
        out.c[f] = v;
    }
    return out;
}

double form_inner(const Mat& ginv, const TensorValue& a, const TensorValue& b) {
    const int n = a.n, p = a.rank;
    if (b.rank != p) throw RankError("form_inner: degree mismatch");
    if (p == 0) return a.c[0] * b.c[0];
    double fact = 1.0;
    for (int k = 2; k <= p; ++k) fact *= k;
    double v = 0.0;
    std::vector<int> ai, bi;
    const size_t cnt = a.c.size();
    for (size_t fa = 0; fa < cnt; ++fa) {
        if (a.c[fa] == 0.0) continue;
        decode(fa, n, p, ai);
        for (size_t fb = 0; fb < cnt; ++fb) {
            if (b.c[fb] == 0.0) continue;
            decode(fb, n, p, bi);
            double w = a.c[fa] * b.c[fb];
            for (int k = 0; k < p; ++k) w *= ginv(ai[k], bi[k]);
            v += w;
        }
    }
    return v / fact;
}

TensorValue nabla_along(const TensorField& phi, const Vec& X, const Point& pt) {
    const int n = phi.chart()->dim();
    const TensorValue dk = covariant_derivative(phi, pt);
    const size_t stride = dk.c.size() / n;
    TensorValue out(n, phi.rank());
    for (size_t f = 0; f < stride; ++f) {
        double v = 0.0;
        for (int a = 0; a < n; ++a) v += X[a] * dk.c[a * stride + f];
        out.c[f] = v;
    }
    return out;
}

TensorValue lower_index(const Mat& g, const Vec& X) {
    const int n = static_cast<int>(g.rows());
    TensorValue out(n, 1);
    for (int b = 0; b < n; ++b) {
        double v = 0.0;
        for (int c = 0; c < n; ++c) v += g(b, c) * X[c];
        out.c[b] = v;
    }
    return out;
}

JetVec jet_christoffel(const JetVec& g, const JetVec& ginv, int n) {
    JetVec gamma(ipow(n, 3), Jet(g[0].nvars()));
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Jet v(g[0].nvars());
                for (int d = 0; d < n; ++d) {
                    Jet f = partial(g[d * n + b], a) + partial(g[d * n + a], b) -
                            partial(g[a * n + b], d);
                    v += ginv[c * n + d] * f;
                }
                gamma[(c * n + a) * n + b] = 0.5 * v;
            }
    return gamma;
}

JetVec jet_covariant_derivative(const JetVec& comps, int rank, const JetVec& gamma, int n) {
    const int nv = comps.empty() ? 0 : comps[0].nvars();
    const size_t cnt = comps.size();
    JetVec out(cnt * n, Jet(nv));
    std::vector<int> idx;
    for (size_t f = 0; f < cnt; ++f) {
        decode(f, n, rank, idx);
        for (int a = 0; a < n; ++a) {
            Jet v = partial(comps[f], a);
            for (int slot = 0; slot < rank; ++slot) {
                size_t stride = ipow(n, rank - 1 - slot);
                const size_t base = f - static_cast<size_t>(idx[slot]) * stride;
                for (int d = 0; d < n; ++d)
                    v -= gamma[(d * n + a) * n + idx[slot]] * comps[base + d * stride];
            }
            out[a * cnt + f] = v;
        }
    }
    return out;
}

}  // namespace am
