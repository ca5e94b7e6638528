#include "vem/multi_index.hpp"

#include "vem/common.hpp"

namespace vem {

int poly_dim(int d, int k)
{
    if (k < 0) return 0;
    if (d == 1) return k + 1;
    if (d == 2) return (k + 1) * (k + 2) / 2;
    if (d == 3) return (k + 1) * (k + 2) * (k + 3) / 6;
    throw SpecError("poly_dim: dimension must be 1, 2 or 3");
}

MultiIndexMap::MultiIndexMap(int dim, int degree) : dim_(dim), degree_(degree)
{
    if (dim < 1 || dim > 3) throw SpecError("MultiIndexMap: dimension must be 1, 2 or 3");
    if (degree < 0) return;
    exps_.reserve(static_cast<std::size_t>(poly_dim(dim, degree)));
    for (int p = 0; p <= degree; ++p) {
        if (dim == 1) {
            exps_.push_back({p, 0, 0});
        } else if (dim == 2) {
            for (int a = p; a >= 0; --a) exps_.push_back({a, p - a, 0});
        } else {
            for (int a = p; a >= 0; --a)
                for (int b = p - a; b >= 0; --b) exps_.push_back({a, b, p - a - b});
        }
    }
}

int MultiIndexMap::total_degree(int index) const
{
    const auto& e = exponent(index);
    return e[0] + e[1] + e[2];
}

int MultiIndexMap::index(const Exponent& e) const
{
    for (int i = dim_; i < 3; ++i)
        if (e[static_cast<std::size_t>(i)] != 0) return -1;
    int p = 0;
    for (int i = 0; i < dim_; ++i) {
        if (e[static_cast<std::size_t>(i)] < 0) return -1;
        p += e[static_cast<std::size_t>(i)];
    }
    if (p > degree_) return -1;
    // offset of degree block p, then position inside it
    int offset = poly_dim(dim_, p - 1);
    if (dim_ == 1) return offset;
    if (dim_ == 2) return offset + (p - e[0]);
    // 3D: blocks by a descending, each of size (p - a + 1), b descending inside
    int pos = 0;
    for (int a = p; a > e[0]; --a) pos += p - a + 1;
    pos += (p - e[0]) - e[1];
    return offset + pos;
}

} // namespace vem
