#pragma once

#include <array>
#include <vector>

#include "quasidet.hpp"

namespace nclf {

struct PointP1 {
    RingValue x1, x2;

    static PointP1 affine(const RingValue &v) { return {v, RingValue::one(v.backend(), v.dim())}; }
    PointP1 operator*(const RingValue &lambda) const { return {x1 * lambda, x2 * lambda}; }
};

PointP1 operator*(const QMatrix &g, const PointP1 &p);

class CoordMatrix {
public:
    CoordMatrix() = default;
    explicit CoordMatrix(std::vector<PointP1> cols) : cols_(std::move(cols)) {}

    int size() const { return int(cols_.size()); }
    const PointP1 &operator[](int i) const { return cols_.at(i); }
    CoordMatrix left(const QMatrix &g) const;
    CoordMatrix right(const std::vector<RingValue> &lambdas) const;

private:
    std::vector<PointP1> cols_;
};

// a_{1j} - a_{1i} a_{2i}^{-1} a_{2j}
RingValue boxed12(const CoordMatrix &a, int i, int j);
RingValue qpluecker(const CoordMatrix &a, int i, int j, int k);
// -|[a_i a_k a_j; 0 0 1]| boxed at (1,2)
RingValue qpluecker_alt(const CoordMatrix &a, int i, int j, int k);

bool distinct_points(const PointP1 &p, const PointP1 &q);
RingValue cross_ratio(const PointP1 &x, const PointP1 &y, const PointP1 &z, const PointP1 &t);

RingValue verify_relative_invariance(const CoordMatrix &x, const QMatrix &g, const std::array<RingValue, 4> &lambdas);

struct CrResiduals {
    RingValue eq3, eq1m, eqper, eqper_mid;
};
// x holds (x, y, z, t)
CrResiduals verify_cr_identities(const CoordMatrix &x, const PointP1 &w);

std::pair<RingValue, RingValue> verify_skew_pluecker(const CoordMatrix &a, int i = 0, int j = 1, int k = 2, int l = 3);

}
