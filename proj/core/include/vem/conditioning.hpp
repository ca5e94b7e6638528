#pragma once

#include "vem/system.hpp"

#include <vector>

namespace vem {

/// sigma_max / sigma_min of a (possibly rectangular) dense matrix; +inf when
/// sigma_min vanishes.
double condition_number(const Mat& M);

/// Worst condition numbers over the elements (and faces, in 3D).
struct ProjectorConditions {
    double pinabla = 1.0;
    double pi0km1 = 1.0;
    std::vector<double> pi0x;  // one per direction
    double face_pinabla = 0.0; // 0 in 2D
    double face_pi0 = 0.0;
};

ProjectorConditions projector_conditions(const Discretization& disc);

struct MatrixCondition {
    double value = 1.0;
    bool exact = true;
};

/// Dense singular values up to `dense_cap` rows; above it a power /
/// inverse-power estimate of the extreme singular values (exact = false).
MatrixCondition matrix_condition(const SparseMatrix& A, int dense_cap);

} // namespace vem
