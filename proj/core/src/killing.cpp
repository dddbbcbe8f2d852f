#include "am/killing.hpp"

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

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Inner product of (deg)-form component jets in the determinant convention.
Jet jet_form_inner(const JetVec& A, const JetVec& B, const JetVec& ginv, int n, int deg) {
    const int nv = ginv[0].nvars();
    if (deg == 0) return A[0] * B[0];
    Jet v(nv);
    std::vector<int> ai, bi;
    const size_t cnt = ipow(n, deg);
    for (size_t fa = 0; fa < cnt; ++fa) {
        decode(fa, n, deg, ai);
        for (size_t fb = 0; fb < cnt; ++fb) {
            decode(fb, n, deg, bi);
            Jet w = A[fa] * B[fb];
            for (int k = 0; k < deg; ++k) w = w * ginv[ai[k] * n + bi[k]];
            v += w;
        }
    }
    return v * (1.0 / factorial(deg));
}

// Contract all slots of a frame: out_{abc..} = T(F_a, F_b, ...).
TensorValue to_frame(const TensorValue& t, const Mat& F) {
    const int n = t.n, r = t.rank;
    TensorValue cur = t;
    for (int slot = 0; slot < r; ++slot) {
        TensorValue next(n, r);
        std::vector<int> idx;
        for (size_t f = 0; f < next.c.size(); ++f) {
            decode(f, n, r, idx);
            double v = 0.0;
            std::vector<int> src = idx;
            for (int a = 0; a < n; ++a) {
                src[slot] = a;
                v += cur.at(src) * F(a, idx[slot]);
            }
            next.c[f] = v;
        }
        cur = next;
    }
    return cur;
}

}  // namespace

ResidualReport ResidualAccum::report(std::string name, double tolerance,
                                     double vacuous_below) const {
    ResidualReport r;
    r.name = std::move(name);
    r.samples = static_cast<int>(count_);
    r.max_residual = max_;
    r.mean_residual = count_ > 0 ? sum_ / count_ : 0.0;
    r.tolerance = tolerance;
    r.scale = scale_;
    r.passed = max_ <= tolerance;
    r.vacuous = vacuous_below >= 0.0 && scale_ <= vacuous_below;
    return r;
}

Vec conformal_P_covector(const TensorField& K, const Point& p) {
    const int n = K.chart()->dim();
    const DivTrace dt = divergence_and_trace(K, p);
    return (2.0 * dt.div + dt.dtrace) / (n + 2.0);
}

double conformal_P(const TensorField& K, const Vec& X, const Point& p) {
    return conformal_P_covector(K, p).dot(X);
}

double cyclic_residual(const TensorField& K, const Point& p, const Vec& X, const Vec& Y,
                       const Vec& Z, const Vec* P, double* scale) {
    if (K.contravariant_rank() != 0 || K.covariant_rank() != 2)
        throw RankError("cyclic_residual expects a (0,2) tensor");
    const int n = K.chart()->dim();
    const TensorValue dk = covariant_derivative(K, p);  // [c][a][b]
    const Mat g = K.chart()->metric_value(p);

    auto nab = [&](const Vec& A, const Vec& B, const Vec& C) {
        double v = 0.0;
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) v += dk.at({c, a, b}) * A[c] * B[a] * C[b];
        return v;
    };
    const double t1 = nab(X, Y, Z), t2 = nab(Y, Z, X), t3 = nab(Z, X, Y);
    double lhs = t1 + t2 + t3;
    double sc = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    double rhs = 0.0;
    if (P) {
        const double p1 = P->dot(X) * double(Y.transpose() * g * Z);
        const double p2 = P->dot(Y) * double(Z.transpose() * g * X);
        const double p3 = P->dot(Z) * double(X.transpose() * g * Y);
        rhs = p1 + p2 + p3;
        sc = std::max({sc, std::abs(p1), std::abs(p2), std::abs(p3)});
    }
    if (scale) *scale = sc;
    return std::abs(lhs - rhs);
}

double cyclic_residual_frame(const TensorField& K, const Point& p, const Vec* P, double* scale) {
    const int n = K.chart()->dim();
    const TensorValue dk = covariant_derivative(K, p);
    const Mat F = orthonormal_frame(*K.chart(), p);
    const TensorValue dkf = to_frame(dk, F);
    Vec Pf = Vec::Zero(n);
    if (P)
        for (int a = 0; a < n; ++a) Pf[a] = P->dot(F.col(a));

    double worst = 0.0, sc = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double t1 = dkf.at({a, b, c});
                const double t2 = dkf.at({b, c, a});
                const double t3 = dkf.at({c, a, b});
                double rhs = 0.0;
                if (P) rhs = Pf[a] * (b == c) + Pf[b] * (c == a) + Pf[c] * (a == b);
                worst = std::max(worst, std::abs(t1 + t2 + t3 - rhs));
                sc = std::max({sc, std::abs(t1), std::abs(t2), std::abs(t3), std::abs(rhs)});
            }
    if (scale) *scale = sc;
    return worst;
}

double conformal_form_residual(const PForm& phi, const Point& p, const Vec& X) {
    const Chart& chart = *phi.chart();
    const int n = chart.dim();
    const int deg = form_degree(phi);
    if (deg < 1 || deg > n) throw RankError("conformal_form_residual: degree out of range");

    const Mat g = chart.metric_value(p);
    TensorValue defect = nabla_along(phi, X, p);

    const TensorValue dphi = exterior_derivative_value(phi, p);
    const TensorValue xd = interior_product(X, dphi);
    for (size_t i = 0; i < defect.c.size(); ++i) defect.c[i] -= xd.c[i] / (deg + 1.0);

    const TensorValue dphi_co = codifferential_value(phi, p);
    const TensorValue xw = wedge(lower_index(g, X), dphi_co);
    for (size_t i = 0; i < defect.c.size(); ++i) defect.c[i] += xw.c[i] / (n - deg + 1.0);

    const Mat F = orthonormal_frame(g);
    return to_frame(defect, F).max_abs();
}

PairTensor pair_tensor(const PForm& phi, const PForm& psi) {
    if (form_degree(phi) != form_degree(psi))
        throw RankError("pair_tensor: forms must have equal degree");
    if (form_degree(phi) < 1) throw RankError("pair_tensor: degree must be >= 1");
    if (phi.chart() != psi.chart()) throw RankError("pair_tensor: forms live on different charts");
    const Chart* ch = phi.chart();
    const int n = ch->dim();
    const int deg = form_degree(phi);
    const MetricJetFn gfn = ch->metric_fn();
    if (!gfn) throw RankError("pair_tensor requires an exact-tier chart");

    auto ph = phi, ps = psi;
    const size_t stride = ipow(n, deg - 1);

    TensorField K(ch, 0, 2, [=](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        JetVec g(static_cast<size_t>(n) * n, Jet(nv));
        gfn(x, g);
        JetVec ginv = jet_matrix_inverse(g, n);
        JetVec a(ipow(n, deg), Jet(nv)), b(ipow(n, deg), Jet(nv));
        ph.eval(x, a);
        ps.eval(x, b);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                JetVec ai(a.begin() + i * stride, a.begin() + (i + 1) * stride);
                JetVec bj(b.begin() + j * stride, b.begin() + (j + 1) * stride);
                JetVec aj(a.begin() + j * stride, a.begin() + (j + 1) * stride);
                JetVec bi(b.begin() + i * stride, b.begin() + (i + 1) * stride);
                out[i * n + j] = jet_form_inner(ai, bj, ginv, n, deg - 1) +
                                 jet_form_inner(aj, bi, ginv, n, deg - 1);
            }
    });

    PForm P = make_form(*ch, 1, [=](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        JetVec g(static_cast<size_t>(n) * n, Jet(nv));
        gfn(x, g);
        JetVec ginv = jet_matrix_inverse(g, n);
        JetVec gamma = jet_christoffel(g, ginv, n);
        JetVec a(ipow(n, deg), Jet(nv)), b(ipow(n, deg), Jet(nv));
        ph.eval(x, a);
        ps.eval(x, b);
        JetVec da = jet_covariant_derivative(a, deg, gamma, n);
        JetVec db = jet_covariant_derivative(b, deg, gamma, n);
        // codifferentials
        JetVec delta_a(stride, Jet(nv)), delta_b(stride, Jet(nv));
        const size_t cnt = ipow(n, deg);
        for (size_t f = 0; f < stride; ++f) {
            Jet va(nv), vb(nv);
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    va -= ginv[c * n + d] * da[c * cnt + d * stride + f];
                    vb -= ginv[c * n + d] * db[c * cnt + d * stride + f];
                }
            delta_a[f] = va;
            delta_b[f] = vb;
        }
        const double coeff = -2.0 / (n - deg + 1.0);
        for (int c = 0; c < n; ++c) {
            JetVec bc(b.begin() + c * stride, b.begin() + (c + 1) * stride);
            JetVec ac(a.begin() + c * stride, a.begin() + (c + 1) * stride);
            out[c] = coeff * (jet_form_inner(delta_a, bc, ginv, n, deg - 1) +
                              jet_form_inner(delta_b, ac, ginv, n, deg - 1));
        }
    });

    return PairTensor{std::move(K), std::move(P)};
}

ClassifyResult classify(const Chart& chart, int samples, uint64_t seed, const Tolerances& tols) {
    const int n = chart.dim();
    PointSampler sampler(chart, seed);
    const double tol = tols.tol;

    ResidualAccum einstein, parallel, cyclicA, cyclicAC;
    double lambda = 0.0;
    bool have_lambda = false;
    double max_grad_ric = 0.0;
    double max_P = 0.0;

    for (int s = 0; s < samples; ++s) {
        const Point p = sampler.next();
        const MetricData m = metric_data(chart, p);
        const RicciData rd = ricci_data(chart, p);
        const Mat F = orthonormal_frame(m.g);

        // Einstein constant pinned at the first sample; a pointwise
        // Ric = (Scal/n) g holds identically on surfaces, so the constancy of
        // Scal is part of the test.
        if (!have_lambda) {
            lambda = rd.scal / n;
            have_lambda = true;
        }
        const Mat eres = F.transpose() * (rd.ric - lambda * m.g) * F;
        einstein.add(eres.cwiseAbs().maxCoeff(), rd.ric.cwiseAbs().maxCoeff());

        TensorValue covd(n, 3);
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) covd.at({c, a, b}) = rd.covd[c](a, b);
        const TensorValue covdF = to_frame(covd, F);
        const double grad = covdF.max_abs();
        parallel.add(grad, std::max(1.0, rd.ric.cwiseAbs().maxCoeff()));
        max_grad_ric = std::max(max_grad_ric, grad);

        // P forced on the Ricci tensor.
        Vec P = Vec::Zero(n);
        Vec divric = Vec::Zero(n);
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) divric[c] += m.ginv(a, b) * rd.covd[a](b, c);
        P = (2.0 * divric + rd.dscal) / (n + 2.0);
        Vec Pf = Vec::Zero(n);
        for (int a = 0; a < n; ++a) Pf[a] = P.dot(F.col(a));
        max_P = std::max(max_P, Pf.cwiseAbs().maxCoeff());

        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    const double cyc =
                        covdF.at({a, b, c}) + covdF.at({b, c, a}) + covdF.at({c, a, b});
                    cyclicA.add(cyc, grad);
                    const double rhs = Pf[a] * (b == c) + Pf[b] * (c == a) + Pf[c] * (a == b);
                    cyclicAC.add(cyc - rhs, std::max(grad, std::abs(rhs)));
                }
    }

    ClassifyResult res;
    res.max_forced_P = max_P;
    res.reports.push_back(einstein.report("einstein", tol));
    res.reports.push_back(parallel.report("parallel-ricci", tol));
    res.reports.push_back(cyclicA.report("cyclic-parallel", tol));
    res.reports.push_back(cyclicAC.report("conformal-cyclic", tol));

    const bool is_einstein = res.reports[0].passed;
    const bool is_parallel = res.reports[1].passed;
    const bool is_A = res.reports[2].passed;
    const bool is_AC = res.reports[3].passed;
    if ((is_einstein && !is_parallel) || (is_parallel && !is_A) || (is_A && !is_AC))
        throw InconsistencyError("classification monotonicity violated");

    if (is_einstein) res.labels.insert("einstein");
    if (is_parallel) res.labels.insert("parallel-ricci");
    if (is_A) res.labels.insert("A");
    if (is_A && max_grad_ric >= tols.strictness_factor * tol) res.labels.insert("strict-A");
    if (is_AC) res.labels.insert("ACperp");
    if (res.labels.empty()) res.labels.insert("none");
    return res;
}

}  // namespace am
