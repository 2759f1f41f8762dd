#pragma once

#include <vector>

namespace jumplab {

/// Grid function with separately stored boundary values.
struct ScalarField {
    std::vector<double> interior;
    double left = 0.0;
    double right = 0.0;

    ScalarField() = default;
    ScalarField(std::vector<double> vals, double l, double r)
        : interior(std::move(vals)), left(l), right(r) {}

    int size() const { return static_cast<int>(interior.size()); }

    /// Value by full index 0..n+1.
    double value(int full_index) const {
        if (full_index == 0) return left;
        if (full_index == size() + 1) return right;
        return interior[static_cast<size_t>(full_index) - 1];
    }
};

}  // namespace jumplab
