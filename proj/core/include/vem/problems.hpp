#pragma once

#include "vem/local_vem.hpp"
#include "vem/system.hpp"

#include <string>

namespace vem {

/// Manufactured ADR problem with its exact solution; the exact solution is
/// also the Dirichlet datum.
struct Problem {
    std::string id;
    int dim = 2;
    AdrCoefficients coeffs;
    ScalarField u;
    VectorField grad;
};

/// "test1" (quartic on (0, eps)^2, Laplacian), "test2" (2D variable
/// coefficients, sine solution), "test3" (degree-6 polynomial on the unit
/// cube, Laplacian), "test4" (3D variable coefficients, sine solution).
/// `epsilon` is only read by test1. Throws UnknownProblem.
Problem make_problem(const std::string& id, double epsilon = 1.0);

} // namespace vem
