#pragma once

#include <vector>

#include <nclf/projective.hpp>

namespace nclf::test {

inline RingValue mat(int rows, int cols, std::vector<mpq_class> e)
{
    return RingValue(RatMatrix::from_entries(rows, cols, e));
}

inline QMatrix random_qmatrix(Sampler &s, int n, Backend b, int d)
{
    std::vector<std::vector<RingValue>> rows(n);
    for (auto &r : rows)
        for (int j = 0; j < n; j++)
            r.push_back(random_generic(s, d, b));
    return QMatrix::from_rows(rows);
}

inline CoordMatrix random_points(Sampler &s, int n, Backend b, int d)
{
    std::vector<PointP1> p;
    for (int i = 0; i < n; i++)
        p.push_back({random_generic(s, d, b), random_generic(s, d, b)});
    return CoordMatrix(std::move(p));
}

inline QMatrix random_gl2(Sampler &s, Backend b, int d)
{
    for (;;) {
        QMatrix g = random_qmatrix(s, 2, b, d);
        if (g.flat_rank() == 2 * d)
            return g;
    }
}

}
