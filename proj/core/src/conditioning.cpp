#include "vem/conditioning.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace vem {

double condition_number(const Mat& M)
{
    if (M.size() == 0) return 1.0;
    Vec s;
    if (std::min(M.rows(), M.cols()) > 64)
        s = Eigen::BDCSVD<Mat>(M).singularValues();
    else
        s = Eigen::JacobiSVD<Mat>(M).singularValues();
    const double smin = s(s.size() - 1);
    if (!(smin > 0)) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

ProjectorConditions projector_conditions(const Discretization& disc)
{
    ProjectorConditions pc;
    const int d = disc.mesh->dimension;
    pc.pi0x.assign(static_cast<std::size_t>(d), 1.0);
    for (const LocalVem& lv : disc.locals) {
        pc.pinabla = std::max(pc.pinabla, condition_number(lv.proj.pinabla));
        pc.pi0km1 = std::max(pc.pi0km1, condition_number(lv.proj.pi0km1));
        for (int j = 0; j < d; ++j)
            pc.pi0x[static_cast<std::size_t>(j)] = std::max(pc.pi0x[static_cast<std::size_t>(j)], condition_number(lv.pi0x(j)));
    }
    if (d == 3) {
        pc.face_pinabla = 1.0;
        pc.face_pi0 = 1.0;
        for (const FaceData& fd : disc.faces) {
            pc.face_pinabla = std::max(pc.face_pinabla, condition_number(fd.proj.pinabla));
            pc.face_pi0 = std::max(pc.face_pi0, condition_number(fd.proj.pi0k));
        }
    }
    return pc;
}

namespace {

Vec start_vector(Index n)
{
    Vec v(n);
    for (Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    return v.normalized();
}

} // namespace

MatrixCondition matrix_condition(const SparseMatrix& A, int dense_cap)
{
    MatrixCondition mc;
    if (A.rows() == 0) return mc;
    if (A.rows() <= dense_cap) {
        mc.value = condition_number(Mat(A));
        return mc;
    }
    mc.exact = false;
    const SparseMatrix At = A.transpose();
    Vec v = start_vector(A.rows());
    double smax = 0.0;
    for (int it = 0; it < 500; ++it) {
        Vec w = At * (A * v);
        const double lam = w.norm();
        v = w / lam;
        const bool done = std::abs(lam - smax * smax) <= 1e-10 * lam;
        smax = std::sqrt(lam);
        if (done) break;
    }
    Eigen::SparseLU<SparseMatrix> lu(A);
    Eigen::SparseLU<SparseMatrix> lut(At);
    if (lu.info() != Eigen::Success || lut.info() != Eigen::Success) {
        mc.value = std::numeric_limits<double>::infinity();
        return mc;
    }
    v = start_vector(A.rows());
    double inv = 0.0;
    for (int it = 0; it < 500; ++it) {
        Vec w = lut.solve(Vec(lu.solve(v)));
        const double lam = w.norm();
        v = w / lam;
        const bool done = std::abs(lam - inv * inv) <= 1e-10 * lam;
        inv = std::sqrt(lam);
        if (done) break;
    }
    mc.value = smax * inv;
    return mc;
}

} // namespace vem
