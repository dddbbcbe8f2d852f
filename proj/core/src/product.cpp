#include "am/product.hpp"

namespace am {

namespace {

size_t ipow(int n, int r) {
    size_t s = 1;
    for (int i = 0; i < r; ++i) s *= n;
    return s;
}

}  // namespace

ProductChart make_product_chart(const std::vector<Chart>& factors) {
    ProductChart prod;
    prod.factors = factors;
    int dim = 0;
    Box box;
    for (const Chart& f : factors) {
        prod.offsets.push_back(dim);
        dim += f.dim();
        for (const auto& b : f.domain().bounds) box.bounds.push_back(b);
    }
    std::vector<MetricJetFn> fns;
    std::vector<int> dims, offs = prod.offsets;
    for (const Chart& f : factors) {
        fns.push_back(f.metric_fn());
        dims.push_back(f.dim());
    }
    const int m = dim;
    prod.chart = Chart(dim, box, [fns, dims, offs, m](const JetVec& x, JetVec& g) {
        const int nv = x[0].nvars();
        for (auto& j : g) j = Jet::constant(nv, 0.0);
        for (size_t k = 0; k < fns.size(); ++k) {
            const int nk = dims[k], off = offs[k];
            JetVec xs(x.begin() + off, x.begin() + off + nk);
            JetVec gk(static_cast<size_t>(nk) * nk, Jet(nv));
            fns[k](xs, gk);
            for (int a = 0; a < nk; ++a)
                for (int b = 0; b < nk; ++b) g[(off + a) * m + (off + b)] = gk[a * nk + b];
        }
    });
    return prod;
}

TensorField lift_factor_tensor(const ProductChart& prod, int factor_index,
                               const TensorField& field) {
    const int m = prod.chart.dim();
    const int nk = prod.factors[factor_index].dim();
    const int off = prod.offsets[factor_index];
    const int r = field.rank();
    if (field.contravariant_rank() != 0)
        throw RankError("lift_factor_tensor expects an all-covariant field");
    auto inner = field;
    return TensorField(&prod.chart, 0, r, [inner, m, nk, off, r](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        JetVec xs(x.begin() + off, x.begin() + off + nk);
        JetVec comps(ipow(nk, r), Jet(nv));
        inner.eval(xs, comps);
        for (auto& j : out) j = Jet::constant(nv, 0.0);
        std::vector<int> idx(r, 0);
        for (size_t f = 0; f < comps.size(); ++f) {
            size_t rem = f;
            for (int i = r - 1; i >= 0; --i) {
                idx[i] = static_cast<int>(rem % nk);
                rem /= nk;
            }
            size_t of = 0;
            for (int i = 0; i < r; ++i) of = of * m + (off + idx[i]);
            out[of] = comps[f];
        }
    });
}

TensorField block_sum(const ProductChart& prod, const std::vector<TensorField>& factor_fields) {
    std::vector<TensorField> lifted;
    for (size_t k = 0; k < factor_fields.size(); ++k)
        lifted.push_back(lift_factor_tensor(prod, static_cast<int>(k), factor_fields[k]));
    const int m = prod.chart.dim();
    const int r = factor_fields.front().rank();
    return TensorField(&prod.chart, 0, r, [lifted, m](const JetVec& x, JetVec& out) {
        const int nv = x[0].nvars();
        JetVec tmp(out.size(), Jet(nv));
        for (auto& j : out) j = Jet::constant(nv, 0.0);
        for (const TensorField& f : lifted) {
            f.eval(x, tmp);
            for (size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
        }
    });
}

}  // namespace am
