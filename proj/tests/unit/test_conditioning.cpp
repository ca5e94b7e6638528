#include <doctest.h>

#include "vem/conditioning.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace vem;

TEST_CASE("dense condition numbers")
{
    CHECK(condition_number(Mat::Identity(4, 4)) == doctest::Approx(1.0));
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 10.0;
    D(1, 1) = 1.0;
    CHECK(condition_number(D) == doctest::Approx(10.0).epsilon(1e-14));
    Mat S = Mat::Zero(2, 2);
    S(0, 0) = 1.0;
    CHECK(condition_number(S) == std::numeric_limits<double>::infinity());

    std::mt19937_64 rng(3);
    std::normal_distribution<double> N;
    Mat M(6, 12);
    for (Index i = 0; i < M.size(); ++i) M.data()[i] = N(rng);
    Eigen::SelfAdjointEigenSolver<Mat> es(M * M.transpose());
    const double oracle = std::sqrt(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff());
    CHECK(condition_number(M) == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(condition_number(M.transpose()) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("sparse condition estimate above the dense cap")
{
    const int n = 300;
    SparseMatrix L(n, n);
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < n; ++i) {
        t.emplace_back(i, i, 2.0);
        if (i > 0) t.emplace_back(i, i - 1, -1.0);
        if (i + 1 < n) t.emplace_back(i, i + 1, -1.0);
    }
    L.setFromTriplets(t.begin(), t.end());
    const double h = std::numbers::pi / (n + 1);
    const double exact = (2 - 2 * std::cos(n * h)) / (2 - 2 * std::cos(h));

    const auto dense = matrix_condition(L, 1000);
    CHECK(dense.exact);
    CHECK(dense.value == doctest::Approx(exact).epsilon(1e-9));
    const auto est = matrix_condition(L, 100);
    CHECK_FALSE(est.exact);
    CHECK(est.value == doctest::Approx(exact).epsilon(1e-3));
}
