#pragma once

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "am/jet.hpp"

namespace am {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Point {
    Vec x;
};

// Open coordinate box.
struct Box {
    std::vector<std::pair<double, double>> bounds;

    int dim() const { return static_cast<int>(bounds.size()); }
    bool contains(const Vec& x) const {
        if (x.size() != dim()) return false;
        for (int i = 0; i < dim(); ++i)
            if (!(x[i] > bounds[i].first && x[i] < bounds[i].second)) return false;
        return true;
    }
};

// Metric components evaluated in jet arithmetic: fills `g` (row-major n*n)
// with order-3 jets of g_ab at the seeded coordinates.
using MetricJetFn = std::function<void(const JetVec& x, JetVec& g)>;

// Opaque numeric metric for the finite-difference fallback tier.
using MetricValueFn = std::function<void(const Vec& x, Mat& g)>;

class Chart {
public:
    Chart() = default;
    Chart(int dim, Box domain, MetricJetFn metric)
        : dim_(dim), domain_(std::move(domain)), jet_fn_(std::move(metric)) {}

    static Chart from_numeric(int dim, Box domain, MetricValueFn metric, double fd_step = 1e-3);

    int dim() const { return dim_; }
    const Box& domain() const { return domain_; }
    bool exact() const { return static_cast<bool>(jet_fn_); }

    void check_point(const Point& p) const {
        if (!domain_.contains(p.x)) throw DomainError("point outside chart domain");
    }

    // Row-major n*n jets of the metric components.  Exact for jet-backed
    // charts, Richardson-extrapolated finite differences otherwise.
    JetVec metric_jets(const Point& p) const;

    // Value-only evaluation.
    Mat metric_value(const Point& p) const;

    const MetricJetFn& metric_fn() const { return jet_fn_; }

private:
    int dim_ = 0;
    Box domain_;
    MetricJetFn jet_fn_;
    MetricValueFn value_fn_;
    double fd_step_ = 1e-3;
};

// Seeded rejection sampler keeping points at least `margin` (fraction of box
// width) away from the boundary; coordinate singularities of the zoo charts
// all sit on chart boundaries.
class PointSampler {
public:
    PointSampler(const Chart& chart, uint64_t seed, double margin = 0.05)
        : chart_(&chart), rng_(seed), margin_(margin) {}

    Point next();
    std::vector<Point> take(int count);

private:
    const Chart* chart_;
    std::mt19937_64 rng_;
    double margin_;
};

constexpr uint64_t kDefaultSeed = 20240817ull;

}  // namespace am
