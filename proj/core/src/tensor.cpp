#include "am/tensor.hpp"

namespace am {

JetVec TensorField::jets_at(const Point& pt) const {
    chart_->check_point(pt);
    const int n = chart_->dim();
    JetVec x = seed_jets(pt.x);
    size_t sz = 1;
    for (int i = 0; i < rank(); ++i) sz *= n;
    JetVec out(sz, Jet(n));
    eval_(x, out);
    return out;
}

TensorValue TensorField::value_at(const Point& pt) const {
    JetVec j = jets_at(pt);
    TensorValue t(chart_->dim(), rank());
    for (size_t i = 0; i < j.size(); ++i) t.c[i] = j[i].value();
    return t;
}

VectorField coordinate_field(const Chart& chart, int index) {
    Vec v = Vec::Zero(chart.dim());
    v[index] = 1.0;
    return constant_field(chart, v);
}

VectorField constant_field(const Chart& chart, const Vec& components) {
    const int n = chart.dim();
    Vec comp = components;
    return VectorField(&chart, 1, 0, [n, comp](const JetVec&, JetVec& out) {
        for (int i = 0; i < n; ++i) out[i] = Jet::constant(n, comp[i]);
    });
}

TensorField metric_field(const Chart& chart) {
    if (chart.exact())
        return TensorField(&chart, 0, 2,
                           [fn = chart.metric_fn()](const JetVec& x, JetVec& out) { fn(x, out); });
    // finite-difference tier: jets come from the chart's numeric fallback
    const Chart* ch = &chart;
    return TensorField(&chart, 0, 2, [ch](const JetVec& x, JetVec& out) {
        Vec v(x.size());
        for (size_t i = 0; i < x.size(); ++i) v[i] = x[i].value();
        out = ch->metric_jets(Point{v});
    });
}

}  // namespace am
