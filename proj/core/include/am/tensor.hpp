#pragma once

#include <functional>
#include <vector>

#include "am/chart.hpp"

namespace am {

// Dense rank-r array with every axis of length n.
struct TensorValue {
    int n = 0;
    int rank = 0;
    std::vector<double> c;

    TensorValue() = default;
    TensorValue(int n_, int rank_) : n(n_), rank(rank_) {
        size_t sz = 1;
        for (int i = 0; i < rank_; ++i) sz *= n_;
        c.assign(sz, 0.0);
    }

    size_t flat(const std::vector<int>& idx) const {
        size_t f = 0;
        for (int i : idx) f = f * n + i;
        return f;
    }
    double at(const std::vector<int>& idx) const { return c[flat(idx)]; }
    double& at(const std::vector<int>& idx) { return c[flat(idx)]; }

    double max_abs() const {
        double m = 0.0;
        for (double v : c) m = std::max(m, std::abs(v));
        return m;
    }
};

// Type-(p,q) tensor field on a chart.  Components are produced in jet
// arithmetic so one covariant derivative is always available; fields whose
// evaluator only fills value and first derivatives (e.g. the Ricci field)
// must not be differentiated twice.
class TensorField {
public:
    TensorField() = default;
    TensorField(const Chart* chart, int p, int q,
                std::function<void(const JetVec&, JetVec&)> eval)
        : chart_(chart), p_(p), q_(q), eval_(std::move(eval)) {}

    const Chart* chart() const { return chart_; }
    int contravariant_rank() const { return p_; }
    int covariant_rank() const { return q_; }
    int rank() const { return p_ + q_; }

    // Component jets at a point, coordinates seeded as variables.
    JetVec jets_at(const Point& pt) const;

    TensorValue value_at(const Point& pt) const;

    void eval(const JetVec& x, JetVec& out) const { eval_(x, out); }

private:
    const Chart* chart_ = nullptr;
    int p_ = 0, q_ = 0;
    std::function<void(const JetVec&, JetVec&)> eval_;
};

using VectorField = TensorField;  // p=1, q=0

// Constant-coefficient coordinate vector field e_index.
VectorField coordinate_field(const Chart& chart, int index);
VectorField constant_field(const Chart& chart, const Vec& components);

// The metric as a (0,2) field (exact-tier charts only).
TensorField metric_field(const Chart& chart);

}  // namespace am
