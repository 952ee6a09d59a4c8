#include "nclf/projective.hpp"

namespace nclf {

PointP1 operator*(const QMatrix &g, const PointP1 &p)
{
    return {g(0, 0) * p.x1 + g(0, 1) * p.x2, g(1, 0) * p.x1 + g(1, 1) * p.x2};
}

CoordMatrix CoordMatrix::left(const QMatrix &g) const
{
    std::vector<PointP1> c;
    for (auto &p : cols_)
        c.push_back(g * p);
    return CoordMatrix(std::move(c));
}

CoordMatrix CoordMatrix::right(const std::vector<RingValue> &lambdas) const
{
    std::vector<PointP1> c;
    for (size_t i = 0; i < cols_.size(); i++)
        c.push_back(cols_[i] * lambdas.at(i));
    return CoordMatrix(std::move(c));
}

RingValue boxed12(const CoordMatrix &a, int i, int j)
{
    const PointP1 &p = a[i], &q = a[j];
    if (!p.x2.is_invertible())
        throw DegenerateConfiguration(i, j, "boxed quasi-determinant undefined");
    return q.x1 - p.x1 * p.x2.inv() * q.x2;
}

RingValue qpluecker(const CoordMatrix &a, int i, int j, int k)
{
    if (i == j)
        throw DegenerateConfiguration(i, j, "repeated column");
    RingValue den = boxed12(a, i, j);
    if (!den.is_invertible())
        throw DegenerateConfiguration(i, j, "boxed quasi-determinant not invertible");
    if (j == k)
        return RingValue::one(den.backend(), den.dim());
    return den.inv() * boxed12(a, i, k);
}

RingValue qpluecker_alt(const CoordMatrix &a, int i, int j, int k)
{
    if (i == j)
        throw DegenerateConfiguration(i, j, "repeated column");
    const RingValue &s = a[i].x1;
    RingValue zero = RingValue::zero(s.backend(), s.dim()), one = RingValue::one(s.backend(), s.dim());
    QMatrix m = QMatrix::from_rows({{a[i].x1, a[k].x1, a[j].x1}, {a[i].x2, a[k].x2, a[j].x2}, {zero, zero, one}});
    try {
        return -quasi_det(m, 2, 1);
    } catch (const SingularSubmatrix &) {
        throw DegenerateConfiguration(i, j, "boxed quasi-determinant not invertible");
    }
}

bool distinct_points(const PointP1 &p, const PointP1 &q)
{
    if (auto s = p.x2.try_inv())
        return (q.x1 - p.x1 * *s * q.x2).is_invertible();
    QMatrix m = QMatrix::from_rows({{p.x1, q.x1}, {p.x2, q.x2}});
    return m.flat_rank() == 2 * m.dim();
}

RingValue cross_ratio(const PointP1 &x, const PointP1 &y, const PointP1 &z, const PointP1 &t)
{
    CoordMatrix m({x, y, z, t});
    for (int p = 0; p < 4; p++)
        for (int q = p + 1; q < 4; q++)
            if (!distinct_points(m[p], m[q]))
                throw DegenerateConfiguration(p, q, "coincident points");
    return qpluecker(m, 1, 2, 3) * qpluecker(m, 0, 3, 2);
}

static RingValue kappa(const CoordMatrix &m, int x, int y, int z, int t)
{
    return cross_ratio(m[x], m[y], m[z], m[t]);
}

RingValue verify_relative_invariance(const CoordMatrix &x, const QMatrix &g, const std::array<RingValue, 4> &lambdas)
{
    CoordMatrix y = x.left(g).right({lambdas.begin(), lambdas.end()});
    return kappa(y, 0, 1, 2, 3) - lambdas[2].inv() * kappa(x, 0, 1, 2, 3) * lambdas[2];
}

CrResiduals verify_cr_identities(const CoordMatrix &pts, const PointP1 &w)
{
    enum { X, Y, Z, T, W };
    CoordMatrix m({pts[0], pts[1], pts[2], pts[3], w});
    RingValue k = kappa(m, X, Y, Z, T);
    RingValue one = RingValue::one(k.backend(), k.dim());
    CrResiduals r;
    r.eq3 = k - kappa(m, W, Y, Z, T) * kappa(m, X, W, Z, T);
    r.eq1m = k - (one - kappa(m, T, Y, Z, X));
    RingValue target = kappa(m, Y, X, T, Z);
    r.eqper = qpluecker(m, X, T, Z) * k * qpluecker(m, X, Z, T) - target;
    r.eqper_mid = qpluecker(m, Y, T, Z) * k * qpluecker(m, Y, Z, T) - target;
    return r;
}

std::pair<RingValue, RingValue> verify_skew_pluecker(const CoordMatrix &a, int i, int j, int k, int l)
{
    int idx[4] = {i, j, k, l};
    for (int p = 0; p < 4; p++)
        for (int q = p + 1; q < 4; q++)
            if (idx[p] == idx[q] || !distinct_points(a[idx[p]], a[idx[q]]))
                throw DegenerateConfiguration(idx[p], idx[q], "repeated column");
    RingValue skew = qpluecker(a, k, i, j) * qpluecker(a, i, j, k) * qpluecker(a, j, k, i);
    RingValue one = RingValue::one(skew.backend(), skew.dim());
    RingValue pl = qpluecker(a, k, i, j) * qpluecker(a, l, j, i) + qpluecker(a, k, i, l) * qpluecker(a, j, l, i) - one;
    return {skew + one, pl};
}

}
