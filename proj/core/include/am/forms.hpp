#pragma once

#include "am/geometry.hpp"
#include "am/tensor.hpp"

namespace am {

// Differential p-forms are all-covariant TensorFields with antisymmetric
// components, stored as full index arrays (n <= 7 throughout the zoo).
using PForm = TensorField;

inline PForm make_form(const Chart& chart, int degree,
                       std::function<void(const JetVec&, JetVec&)> eval) {
    return PForm(&chart, 0, degree, std::move(eval));
}

inline int form_degree(const PForm& f) { return f.covariant_rank(); }

// Largest antisymmetry violation over all index transpositions.
double antisymmetry_defect(const TensorValue& phi);

// (d phi)_{a0..ap} = sum_k (-1)^k d_{a_k} phi_{a0..^a_k..ap}.  For p = n the
// zero (n+1)-form is returned and *overflow set.
TensorValue exterior_derivative_value(const PForm& phi, const Point& p, bool* overflow = nullptr);

// d as a form field (component jets valid to order 2).
PForm exterior_derivative(const PForm& phi);

// delta phi = -g^{ab} (nabla_a phi)_{b ...}; errors on 0-forms.
TensorValue codifferential_value(const PForm& phi, const Point& p);

// First-slot contraction X -| phi.
TensorValue interior_product(const Vec& X, const TensorValue& phi);
void jet_interior_product(const JetVec& X, const JetVec& phi, int n, int degree, JetVec& out);

// Wedge with the shuffle normalization (interior_product is then an
// antiderivation).  Degrees summing past n give the zero form and *overflow.
TensorValue wedge(const TensorValue& a, const TensorValue& b, bool* overflow = nullptr);

// p-form inner product in the determinant convention: an orthonormal coframe
// basis {dx^{i1} ^ ... ^ dx^{ip}} (i1 < ... < ip) is orthonormal.
double form_inner(const Mat& ginv, const TensorValue& a, const TensorValue& b);

// (nabla_X phi) at a point, X given by coordinate components.
TensorValue nabla_along(const TensorField& phi, const Vec& X, const Point& p);

// Index lowering of a vector value.
TensorValue lower_index(const Mat& g, const Vec& X);

// Jet-level Christoffel symbols [(c*n+a)*n+b], valid to order 2.
JetVec jet_christoffel(const JetVec& g, const JetVec& ginv, int n);

// Jet-level covariant derivative of an all-covariant rank-r field,
// out[(a, A)] = (nabla_a T)_A; one jet order is consumed.
JetVec jet_covariant_derivative(const JetVec& comps, int rank, const JetVec& gamma, int n);

}  // namespace am
