#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "am/bundle.hpp"

namespace am::zoo {

// Charts.
Chart flat_r2();
Chart flat_torus2();
Chart round_s2(double radius = 1.0);
Chart fubini_study_cp1();
// Flat 3-space with a 0.1 x^2 bump on g_yy; curved, generic, classifies {none}.
Chart perturbed_flat();

// Almost Hodge factors, Kahler scales recorded with each.
FactorSpec flat_torus2_factor();          // c = 2 pi,  omega = dx ^ dy
FactorSpec round_s2_factor(double radius = 1.0);  // c = 2 r^2
FactorSpec fubini_study_cp1_factor();     // c = 1/2
std::vector<FactorSpec> base_factors();

// Bundles.
BundleSpec heisenberg();                  // r=1 over flat T^2, A = x dy, b = [1]
BundleSpec hopf_berger(double b11);       // r=1 over round S^2(1)
BundleSpec t2_over_s2xs2(const Mat& b, const Eigen::MatrixXi& a);
BundleSpec t2_over_s2xs2();               // b = diag(1,2), a = id
std::vector<BundleSpec> bundles();

// b11 making the Hopf total space Einstein (1/pi^2 in these conventions).
double hopf_einstein_b11();

// Counterexamples.
EvalFn dxdx_tensor();        // dx (x) dx on a 2d factor; not J-invariant
BundleSpec non_spd_bundle(); // b = [[1,2],[2,1]]; build_total_bundle must reject

struct ZooEntry {
    std::string name;
    bool is_bundle = false;
    std::function<Chart()> chart;        // when !is_bundle
    std::function<BundleSpec()> bundle;  // when is_bundle
    std::set<std::string> expected_labels;
};

const std::vector<ZooEntry>& entries();
const ZooEntry* find(const std::string& name);

}  // namespace am::zoo
