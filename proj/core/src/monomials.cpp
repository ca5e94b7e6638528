#include "vem/monomials.hpp"

#include <vector>

namespace vem {

namespace {

// powers(i, p, q) = ((x_i(q) - c_i)/h)^p for p = 0..k
std::vector<Mat> coordinate_powers(int dim, int k, const Vec& center, double h, const Mat& points)
{
    const Index np = points.cols();
    std::vector<Mat> pw(static_cast<std::size_t>(dim), Mat::Ones(k + 1, np));
    for (int i = 0; i < dim; ++i) {
        Mat& P = pw[static_cast<std::size_t>(i)];
        for (Index q = 0; q < np; ++q) {
            const double t = (points(i, q) - center(i)) / h;
            for (int p = 1; p <= k; ++p) P(p, q) = P(p - 1, q) * t;
        }
    }
    return pw;
}

} // namespace

Mat eval_monomials(const MultiIndexMap& map, const Vec& center, double h, const Mat& points)
{
    const int dim = map.dim();
    const int k = map.degree();
    const auto pw = coordinate_powers(dim, k, center, h, points);
    Mat V(map.size(), points.cols());
    for (int a = 0; a < map.size(); ++a) {
        const auto& e = map.exponent(a);
        auto row = V.row(a);
        row = pw[0].row(e[0]);
        for (int i = 1; i < dim; ++i)
            row.array() *= pw[static_cast<std::size_t>(i)].row(e[static_cast<std::size_t>(i)]).array();
    }
    return V;
}

Mat eval_monomial_derivative(const MultiIndexMap& map, const Vec& center, double h, const Mat& points,
                             int j)
{
    const int dim = map.dim();
    const int k = map.degree();
    const auto pw = coordinate_powers(dim, k, center, h, points);
    Mat V = Mat::Zero(map.size(), points.cols());
    for (int a = 0; a < map.size(); ++a) {
        const auto& e = map.exponent(a);
        const int ej = e[static_cast<std::size_t>(j)];
        if (ej == 0) continue;
        auto row = V.row(a);
        row.setConstant(ej / h);
        for (int i = 0; i < dim; ++i) {
            const int p = e[static_cast<std::size_t>(i)] - (i == j ? 1 : 0);
            row.array() *= pw[static_cast<std::size_t>(i)].row(p).array();
        }
    }
    return V;
}

SpMat monomial_gradient(int dim, int k, int j, double h)
{
    const MultiIndexMap hi(dim, k);
    const MultiIndexMap lo(dim, k - 1);
    SpMat G(std::max(lo.size(), 0), hi.size());
    std::vector<Eigen::Triplet<double>> trip;
    for (int b = 0; b < hi.size(); ++b) {
        Exponent e = hi.exponent(b);
        const int ej = e[static_cast<std::size_t>(j)];
        if (ej == 0) continue;
        e[static_cast<std::size_t>(j)] -= 1;
        trip.emplace_back(lo.index(e), b, ej / h);
    }
    G.setFromTriplets(trip.begin(), trip.end());
    return G;
}

SpMat monomial_laplacian(int dim, int k, double h)
{
    const MultiIndexMap hi(dim, k);
    const MultiIndexMap lo(dim, k - 2);
    SpMat L(std::max(lo.size(), 0), hi.size());
    std::vector<Eigen::Triplet<double>> trip;
    for (int b = 0; b < hi.size(); ++b) {
        for (int j = 0; j < dim; ++j) {
            Exponent e = hi.exponent(b);
            const int ej = e[static_cast<std::size_t>(j)];
            if (ej < 2) continue;
            e[static_cast<std::size_t>(j)] -= 2;
            trip.emplace_back(lo.index(e), b, ej * (ej - 1) / (h * h));
        }
    }
    L.setFromTriplets(trip.begin(), trip.end());
    return L;
}

} // namespace vem
