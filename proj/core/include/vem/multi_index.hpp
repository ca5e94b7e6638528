#pragma once

#include <array>
#include <vector>

namespace vem {

/// Dimension of the space of polynomials of total degree <= k in d variables.
/// Returns 0 for k < 0.
int poly_dim(int d, int k);

using Exponent = std::array<int, 3>;

/// Graded bijection between linear monomial indices (0-based here) and
/// exponent tuples. Within one total degree the tuples are ordered
/// lexicographically descending: (2,0),(1,1),(0,2) and
/// (2,0,0),(1,1,0),(1,0,1),(0,2,0),(0,1,1),(0,0,2).
class MultiIndexMap {
public:
    MultiIndexMap(int dim, int degree);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(exps_.size()); }

    const Exponent& exponent(int index) const { return exps_[static_cast<std::size_t>(index)]; }
    int total_degree(int index) const;

    /// Linear index of an exponent tuple; -1 if the tuple exceeds the degree.
    int index(const Exponent& e) const;

private:
    int dim_;
    int degree_;
    std::vector<Exponent> exps_;
};

} // namespace vem
