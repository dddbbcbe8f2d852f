#pragma once

#include <vector>

#include "am/tensor.hpp"

namespace am {

// Riemannian product of charts: block-diagonal metric on the concatenated
// coordinate box.  Owns copies of the factor charts so lifted fields stay
// valid as long as the product does.
struct ProductChart {
    Chart chart;
    std::vector<Chart> factors;
    std::vector<int> offsets;  // coordinate offset of each factor block

    int factor_of(int coord) const {
        int k = 0;
        while (k + 1 < static_cast<int>(offsets.size()) && coord >= offsets[k + 1]) ++k;
        return k;
    }
};

ProductChart make_product_chart(const std::vector<Chart>& factors);

// Lift of an all-covariant factor field: components equal the factor's on the
// factor's coordinate block, zero whenever any index leaves it.
TensorField lift_factor_tensor(const ProductChart& prod, int factor_index,
                               const TensorField& field);

// Block-diagonal sum of one all-covariant tensor per factor.
TensorField block_sum(const ProductChart& prod, const std::vector<TensorField>& factor_fields);

}  // namespace am
