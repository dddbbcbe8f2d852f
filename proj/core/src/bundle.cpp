#include "am/bundle.hpp"

#include <cmath>
#include <numbers>

namespace am {

namespace {

constexpr double kPi = std::numbers::pi;

size_t ipow(int n, int r) {
    size_t s = 1;
    for (int i = 0; i < r; ++i) s *= n;
    return s;
}

// Value-level evaluation of an EvalFn at plain coordinates.
std::vector<double> eval_values(const EvalFn& fn, const Vec& x, size_t count) {
    const int n = static_cast<int>(x.size());
    JetVec xj;
    xj.reserve(n);
    for (int i = 0; i < n; ++i) xj.push_back(Jet::constant(n, x[i]));
    JetVec out(count, Jet(n));
    fn(xj, out);
    std::vector<double> v(count);
    for (size_t i = 0; i < count; ++i) v[i] = out[i].value();
    return v;
}

// nabla_X Y at p for a vector field Y given by jets, X a tangent vector.
Vec covd_along(const ChristoffelData& cd, const JetVec& yj, const Vec& X) {
    const int n = cd.n;
    Vec out = Vec::Zero(n);
    for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (int a = 0; a < n; ++a) {
            v += X[a] * yj[c].d1(a);
            for (int b = 0; b < n; ++b) v += X[a] * cd.gamma(c, a, b) * yj[b].value();
        }
        out[c] = v;
    }
    return out;
}

// Vertical part of the constant field F0 as a vector field on the total chart.
VectorField vertical_part_field(const TotalBundle& tb, const Vec& F0) {
    const int m = tb.m, r = tb.r;
    std::vector<EvalFn> pots = tb.spec.potentials;
    Vec f0 = F0;
    return VectorField(&tb.chart, 1, 0, [m, r, pots, f0](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        for (int c = 0; c < m + r; ++c) out[c] = Jet::constant(nv, 0.0);
        JetVec xb(x.begin(), x.begin() + m);
        for (int i = 0; i < r; ++i) {
            JetVec A(m, Jet(nv));
            pots[i](xb, A);
            Jet theta = Jet::constant(nv, f0[m + i]);
            for (int a = 0; a < m; ++a) theta += A[a] * f0[a];
            out[m + i] = theta;
        }
    });
}

VectorField horizontal_part_field(const TotalBundle& tb, const Vec& F0) {
    VectorField vert = vertical_part_field(tb, F0);
    const int dim = tb.m + tb.r;
    Vec f0 = F0;
    return VectorField(&tb.chart, 1, 0, [vert, f0, dim](const JetVec& x, JetVec& out) {
        vert.eval(x, out);
        for (int c = 0; c < dim; ++c) out[c] = f0[c] - out[c];
    });
}

// J_k^*: factor-k almost complex structure acting on base tangent vectors.
Mat lifted_J(const TotalBundle& tb, int k, const Point& base_pt) {
    const int m = tb.m;
    const FactorSpec& f = tb.spec.factors[k];
    const int nk = f.dim;
    const int off = tb.base.offsets[k];
    const auto jv = eval_values(f.J, base_pt.x.segment(off, nk), ipow(nk, 2));
    Mat J = Mat::Zero(m, m);
    for (int a = 0; a < nk; ++a)
        for (int b = 0; b < nk; ++b) J(off + a, off + b) = jv[a * nk + b];
    return J;
}

// Factor-k block of the base metric, padded to m x m.
Mat factor_block_metric(const TotalBundle& tb, int k, const Mat& h) {
    const int m = tb.m;
    const int nk = tb.spec.factors[k].dim;
    const int off = tb.base.offsets[k];
    Mat g = Mat::Zero(m, m);
    g.block(off, off, nk, nk) = h.block(off, off, nk, nk);
    return g;
}

}  // namespace

EvalFn kahler_form_eval(const FactorSpec& f) {
    const int n = f.dim;
    MetricJetFn gfn = f.metric;
    EvalFn jfn = f.J;
    return [n, gfn, jfn](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        JetVec g(static_cast<size_t>(n) * n, Jet(nv));
        JetVec J(static_cast<size_t>(n) * n, Jet(nv));
        gfn(x, g);
        jfn(x, J);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Jet v(nv);
                for (int c = 0; c < n; ++c) v += J[c * n + a] * g[c * n + b];
                out[a * n + b] = v;
            }
    };
}

std::vector<ResidualReport> validate_factor(const FactorSpec& f, int samples, uint64_t seed,
                                            double tol) {
    const int n = f.dim;
    Chart chart(n, f.domain, f.metric);
    PForm omega = make_form(chart, 2, kahler_form_eval(f));
    PointSampler sampler(chart, seed);

    ResidualAccum jsq, herm, closed, coclosed;
    for (int s = 0; s < samples; ++s) {
        const Point p = sampler.next();
        const Mat g = chart.metric_value(p);
        const auto jv = eval_values(f.J, p.x, ipow(n, 2));
        Mat J(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) J(a, b) = jv[a * n + b];
        jsq.add((J * J + Mat::Identity(n, n)).cwiseAbs().maxCoeff(), 1.0);
        herm.add((J.transpose() * g * J - g).cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff());
        closed.add(exterior_derivative_value(omega, p).max_abs(), 1.0);
        coclosed.add(codifferential_value(omega, p).max_abs(), 1.0);
    }
    return {jsq.report(f.name + ":J-squared", tol), herm.report(f.name + ":hermitian", tol),
            closed.report(f.name + ":kahler-closed", tol),
            coclosed.report(f.name + ":kahler-coclosed", tol)};
}

TotalBundle build_total_bundle(const BundleSpec& spec, int check_samples, uint64_t seed,
                               double tol) {
    const int r = spec.rank;
    if (spec.b.rows() != r || spec.b.cols() != r)
        throw RankError("bundle matrix b has wrong shape");
    if ((spec.b - spec.b.transpose()).cwiseAbs().maxCoeff() > 0.0)
        throw DegenerateMetricError("bundle matrix b must be symmetric");
    Eigen::LLT<Mat> llt(spec.b);
    if (llt.info() != Eigen::Success)
        throw DegenerateMetricError("bundle matrix b must be positive definite");
    if (spec.a.rows() != r || spec.a.cols() != static_cast<int>(spec.factors.size()))
        throw RankError("bundle matrix a has wrong shape");
    if (static_cast<int>(spec.potentials.size()) != r)
        throw RankError("one connection potential per torus factor required");

    TotalBundle tb;
    tb.spec = spec;
    tb.r = r;
    tb.binv = llt.solve(Mat::Identity(r, r));

    std::vector<Chart> fcharts;
    for (const FactorSpec& f : spec.factors) fcharts.emplace_back(f.dim, f.domain, f.metric);
    tb.base = make_product_chart(fcharts);
    const int m = tb.base.chart.dim();
    tb.m = m;

    // Curvature equation dA_j = 2 pi sum_i (a_ji/c_i) omega_i, checked on the
    // base before the total metric is trusted.
    {
        PointSampler sampler(tb.base.chart, seed);
        double worst = 0.0;
        std::vector<PForm> pot_forms;
        for (int j = 0; j < r; ++j)
            pot_forms.push_back(make_form(tb.base.chart, 1, spec.potentials[j]));
        for (int s = 0; s < check_samples; ++s) {
            const Point p = sampler.next();
            for (int j = 0; j < r; ++j) {
                TensorValue dA = exterior_derivative_value(pot_forms[j], p);
                for (size_t k = 0; k < spec.factors.size(); ++k) {
                    const FactorSpec& f = spec.factors[k];
                    const int nk = f.dim, off = tb.base.offsets[k];
                    const auto ov = eval_values(kahler_form_eval(f), p.x.segment(off, nk),
                                                ipow(nk, 2));
                    const double coeff = 2.0 * kPi * spec.a(j, static_cast<int>(k)) /
                                         f.kahler_scale;
                    for (int aa = 0; aa < nk; ++aa)
                        for (int bb = 0; bb < nk; ++bb)
                            dA.at({off + aa, off + bb}) -= coeff * ov[aa * nk + bb];
                }
                worst = std::max(worst, dA.max_abs());
            }
        }
        if (worst > tol)
            throw InconsistencyError("curvature equation violated: max defect " +
                                     std::to_string(worst));
    }

    Box total_box = tb.base.chart.domain();
    for (int i = 0; i < r; ++i) total_box.bounds.push_back({0.0, 1.0});

    MetricJetFn base_metric = tb.base.chart.metric_fn();
    std::vector<EvalFn> pots = spec.potentials;
    Mat bmat = spec.b;
    tb.chart = Chart(m + r, total_box, [m, r, base_metric, pots, bmat](const JetVec& x,
                                                                       JetVec& g) {
        const int nv = x[0].nvars();
        const int dim = m + r;
        JetVec xb(x.begin(), x.begin() + m);
        JetVec h(static_cast<size_t>(m) * m, Jet(nv));
        base_metric(xb, h);
        std::vector<JetVec> A(r);
        for (int i = 0; i < r; ++i) {
            A[i].assign(m, Jet(nv));
            pots[i](xb, A[i]);
        }
        for (auto& j : g) j = Jet::constant(nv, 0.0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                g[(m + i) * dim + (m + j)] = Jet::constant(nv, bmat(i, j));
        for (int a = 0; a < m; ++a)
            for (int j = 0; j < r; ++j) {
                Jet v(nv);
                for (int i = 0; i < r; ++i) v += bmat(i, j) * A[i][a];
                g[a * dim + (m + j)] = v;
                g[(m + j) * dim + a] = v;
            }
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                Jet v = h[a * m + b];
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) v += bmat(i, j) * A[i][a] * A[j][b];
                g[a * dim + b] = v;
            }
    });
    return tb;
}

std::vector<VectorField> fundamental_fields(const TotalBundle& tb) {
    std::vector<VectorField> out;
    for (int i = 0; i < tb.r; ++i) out.push_back(coordinate_field(tb.chart, tb.m + i));
    return out;
}

PForm theta_form(const TotalBundle& tb, int i) {
    const int m = tb.m, r = tb.r;
    EvalFn pot = tb.spec.potentials[i];
    return make_form(tb.chart, 1, [m, r, i, pot](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        JetVec xb(x.begin(), x.begin() + m);
        JetVec A(m, Jet(nv));
        pot(xb, A);
        for (int a = 0; a < m; ++a) out[a] = A[a];
        for (int j = 0; j < r; ++j) out[m + j] = Jet::constant(nv, i == j ? 1.0 : 0.0);
    });
}

PForm lifted_curvature_form(const TotalBundle& tb, int j) {
    const int m = tb.m, r = tb.r;
    const int dim = m + r;
    std::vector<EvalFn> omegas;
    std::vector<int> dims, offs;
    std::vector<double> coeffs;
    for (size_t k = 0; k < tb.spec.factors.size(); ++k) {
        const FactorSpec& f = tb.spec.factors[k];
        omegas.push_back(kahler_form_eval(f));
        dims.push_back(f.dim);
        offs.push_back(tb.base.offsets[k]);
        coeffs.push_back(2.0 * kPi * tb.spec.a(j, static_cast<int>(k)) / f.kahler_scale);
    }
    return make_form(tb.chart, 2, [dim, omegas, dims, offs, coeffs](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        for (auto& jv : out) jv = Jet::constant(nv, 0.0);
        for (size_t k = 0; k < omegas.size(); ++k) {
            const int nk = dims[k], off = offs[k];
            JetVec xs(x.begin() + off, x.begin() + off + nk);
            JetVec ov(ipow(nk, 2), Jet(nv));
            omegas[k](xs, ov);
            for (int a = 0; a < nk; ++a)
                for (int b = 0; b < nk; ++b)
                    out[(off + a) * dim + (off + b)] = coeffs[k] * ov[a * nk + b];
        }
    });
}

Mat t_tensor(const TotalBundle& tb, int i, const Point& p) {
    const int dim = tb.m + tb.r;
    const ChristoffelData cd = christoffel_data(metric_data(tb.chart, p));
    Mat T(dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int a = 0; a < dim; ++a) T(c, a) = cd.gamma(c, a, tb.m + i);
    return T;
}

Mat t_tilde_predicted(const TotalBundle& tb, int i, const Point& base_pt) {
    const int m = tb.m;
    Mat T = Mat::Zero(m, m);
    for (size_t k = 0; k < tb.spec.factors.size(); ++k) {
        double coeff = 0.0;
        for (int j = 0; j < tb.r; ++j)
            coeff += tb.spec.b(i, j) * tb.spec.a(j, static_cast<int>(k));
        coeff *= kPi / tb.spec.factors[k].kahler_scale;
        T += coeff * lifted_J(tb, static_cast<int>(k), base_pt);
    }
    return T;
}

Mat vertical_projector(const TotalBundle& tb, const Point& p) {
    const int m = tb.m, r = tb.r;
    const Mat g = tb.chart.metric_value(p);
    Mat PV = Mat::Zero(m + r, m + r);
    PV.bottomRows(r) = tb.binv * g.bottomRows(r);
    return PV;
}

OneillValue oneill_A(const TotalBundle& tb, const Vec& E, const Vec& F, const Point& p) {
    const int m = tb.m, r = tb.r;
    const int dim = m + r;
    const MetricData md = metric_data(tb.chart, p);
    const ChristoffelData cd = christoffel_data(md);
    const Mat& g = md.g;

    OneillValue out;
    out.closed = Vec::Zero(dim);
    std::vector<Mat> T(r);
    for (int i = 0; i < r; ++i) T[i] = t_tensor(tb, i, p);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const double gETF = E.transpose() * g * (T[i] * F);
            const double gxiF = (g * F)(m + i);
            Vec xi_j = Vec::Zero(dim);
            xi_j[m + j] = 1.0;
            out.closed += tb.binv(i, j) * (gETF * xi_j + gxiF * (T[j] * E));
        }

    const Mat PV = vertical_projector(tb, p);
    const Mat PH = Mat::Identity(dim, dim) - PV;
    const Vec HE = PH * E;
    VectorField HF = horizontal_part_field(tb, F);
    VectorField VF = vertical_part_field(tb, F);
    const Vec dHF = covd_along(cd, HF.jets_at(p), HE);
    const Vec dVF = covd_along(cd, VF.jets_at(p), HE);
    out.geometric = PV * dHF + PH * dVF;
    return out;
}

Vec oneill_T(const TotalBundle& tb, const Vec& E, const Vec& F, const Point& p) {
    const int dim = tb.m + tb.r;
    const ChristoffelData cd = christoffel_data(metric_data(tb.chart, p));
    const Mat PV = vertical_projector(tb, p);
    const Mat PH = Mat::Identity(dim, dim) - PV;
    const Vec VE = PV * E;
    VectorField HF = horizontal_part_field(tb, F);
    VectorField VF = vertical_part_field(tb, F);
    const Vec dVF = covd_along(cd, VF.jets_at(p), VE);
    const Vec dHF = covd_along(cd, HF.jets_at(p), VE);
    return PH * dVF + PV * dHF;
}

RicciDecomposition ricci_decomposition(const TotalBundle& tb, const Point& p) {
    const int m = tb.m, r = tb.r;
    const int dim = m + r;
    const Point pb = tb.base_point(p);
    const int nfac = static_cast<int>(tb.spec.factors.size());

    RicciDecomposition out;
    out.direct = ricci(tb.chart, p);

    const Mat PV = vertical_projector(tb, p);
    const Mat PH = Mat::Identity(dim, dim) - PV;

    out.vert_direct = out.direct.block(m, m, r, r);

    // Vertical constants C_sl over an orthonormal basis of the base.
    const Mat h = tb.base.chart.metric_value(pb);
    const Mat Fb = orthonormal_frame(h);
    std::vector<Mat> J(nfac);
    for (int k = 0; k < nfac; ++k) J[k] = lifted_J(tb, k, pb);
    out.C = Mat::Zero(r, r);
    for (int i = 0; i < m; ++i) {
        std::vector<Vec> w(r, Vec::Zero(m));
        for (int s = 0; s < r; ++s)
            for (int k = 0; k < nfac; ++k)
                w[s] += (tb.spec.a(s, k) / tb.spec.factors[k].kahler_scale) * (J[k] * Fb.col(i));
        for (int s = 0; s < r; ++s)
            for (int l = 0; l < r; ++l) out.C(s, l) += w[s].transpose() * h * w[l];
    }
    out.vert_closed = kPi * kPi * tb.spec.b * out.C * tb.spec.b;

    out.mixed_direct = Mat::Zero(m, r);
    out.horiz_direct = Mat::Zero(m, m);
    std::vector<Vec> HE(m);
    for (int a = 0; a < m; ++a) {
        Vec e = Vec::Zero(dim);
        e[a] = 1.0;
        HE[a] = PH * e;
    }
    for (int a = 0; a < m; ++a) {
        for (int l = 0; l < r; ++l) out.mixed_direct(a, l) = (HE[a].transpose() * out.direct)(m + l);
        for (int b = 0; b < m; ++b)
            out.horiz_direct(a, b) = HE[a].transpose() * out.direct * HE[b];
    }

    const Mat ric_base = ricci(tb.base.chart, pb);
    Mat M2 = Mat::Zero(m, m);
    for (int k = 0; k < nfac; ++k) {
        double wk = 0.0;
        const double ck = tb.spec.factors[k].kahler_scale;
        for (int j = 0; j < r; ++j)
            for (int l = 0; l < r; ++l)
                wk += tb.spec.b(j, l) * tb.spec.a(j, k) * tb.spec.a(l, k) / (ck * ck);
        M2 += wk * factor_block_metric(tb, k, h);
    }
    out.horiz_closed = ric_base - 2.0 * kPi * kPi * M2;
    out.horiz_closed_half_coeff = ric_base - 0.5 * kPi * kPi * M2;
    return out;
}

LiftResult lift_killing(const TotalBundle& tb, const std::vector<EvalFn>& factor_tensors,
                        int samples, uint64_t seed) {
    const int m = tb.m, r = tb.r;
    const int dim = m + r;
    const int nfac = static_cast<int>(tb.spec.factors.size());
    if (static_cast<int>(factor_tensors.size()) != nfac)
        throw RankError("lift_killing: one tensor per factor required");

    std::vector<int> dims, offs;
    for (int k = 0; k < nfac; ++k) {
        dims.push_back(tb.spec.factors[k].dim);
        offs.push_back(tb.base.offsets[k]);
    }
    std::vector<EvalFn> ks = factor_tensors;
    LiftResult res;
    res.lifted = TensorField(&tb.chart, 0, 2, [dim, dims, offs, ks](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        for (auto& j : out) j = Jet::constant(nv, 0.0);
        for (size_t k = 0; k < ks.size(); ++k) {
            const int nk = dims[k], off = offs[k];
            JetVec xs(x.begin() + off, x.begin() + off + nk);
            JetVec kv(ipow(nk, 2), Jet(nv));
            ks[k](xs, kv);
            for (int a = 0; a < nk; ++a)
                for (int b = 0; b < nk; ++b) out[(off + a) * dim + (off + b)] = kv[a * nk + b];
        }
    });

    for (int k = 0; k < nfac; ++k) {
        const FactorSpec& f = tb.spec.factors[k];
        Chart chart(f.dim, f.domain, f.metric);
        PointSampler sampler(chart, seed);
        double worst = 0.0;
        const int nk = f.dim;
        for (int s = 0; s < samples; ++s) {
            const Point p = sampler.next();
            const auto jv = eval_values(f.J, p.x, ipow(nk, 2));
            const auto kv = eval_values(factor_tensors[k], p.x, ipow(nk, 2));
            for (int a = 0; a < nk; ++a)
                for (int b = 0; b < nk; ++b) {
                    double d = 0.0;
                    for (int c = 0; c < nk; ++c)
                        d += jv[c * nk + a] * kv[c * nk + b] + jv[c * nk + b] * kv[a * nk + c];
                    worst = std::max(worst, std::abs(d));
                }
        }
        res.j_invariance_defect.push_back(worst);
    }
    return res;
}

ForcedPReport no_conformal_lift_check(const TotalBundle& tb, const TensorField& K, int samples,
                                      uint64_t seed, double tol) {
    const int m = tb.m, r = tb.r;
    const int dim = m + r;
    PointSampler sampler(tb.chart, seed);
    ResidualAccum vert, mixed;
    for (int s = 0; s < samples; ++s) {
        const Point p = sampler.next();
        const Mat PV = vertical_projector(tb, p);
        const Mat PH = Mat::Identity(dim, dim) - PV;
        for (int i = 0; i < r; ++i) {
            Vec xi = Vec::Zero(dim);
            xi[m + i] = 1.0;
            double scale = 0.0;
            const double cyc = cyclic_residual(K, p, xi, xi, xi, nullptr, &scale);
            vert.add(cyc / (3.0 * tb.spec.b(i, i)), scale);
        }
        for (int a = 0; a < m; ++a) {
            Vec e = Vec::Zero(dim);
            e[a] = 1.0;
            const Vec X = PH * e;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    if (std::abs(tb.spec.b(i, j)) < 1e-12) continue;
                    Vec u = Vec::Zero(dim), v = Vec::Zero(dim);
                    u[m + i] = 1.0;
                    v[m + j] = 1.0;
                    double scale = 0.0;
                    const double cyc = cyclic_residual(K, p, X, u, v, nullptr, &scale);
                    mixed.add(cyc / std::abs(tb.spec.b(i, j)), scale);
                }
        }
    }
    ForcedPReport rep;
    rep.vertical = vert.report("forced-P-vertical", tol, tol);
    rep.mixed = mixed.report("forced-P-mixed", tol, tol);
    return rep;
}

}  // namespace am
