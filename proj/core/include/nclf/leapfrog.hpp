#pragma once

#include <functional>
#include <vector>

#include "projective.hpp"

namespace nclf {

enum class Mode { Periodic, Windowed };

// Integer-indexed sequence: N-periodic, or defined on a window [lo, hi).
class Seq {
public:
    Seq() = default;
    static Seq periodic(std::vector<RingValue> v);
    static Seq window(int lo, std::vector<RingValue> v);

    Mode mode() const { return mode_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + int(v_.size()); }
    int size() const { return int(v_.size()); }
    bool has(int i) const { return mode_ == Mode::Periodic || (i >= lo() && i < hi()); }
    const RingValue &operator[](int i) const;
    RingValue &operator[](int i);
    const std::vector<RingValue> &values() const { return v_; }
    std::vector<int> indices() const;
    bool operator==(const Seq &o) const { return mode_ == o.mode_ && lo_ == o.lo_ && v_ == o.v_; }
    double max_norm() const;

private:
    Mode mode_ = Mode::Windowed;
    int lo_ = 0;
    std::vector<RingValue> v_;
};

// Output range for a local rule needing neighbours i-l..i+r.
std::vector<int> active(const Seq &s, int l, int r);
Seq make_like(const Seq &s, int l, int r, const std::function<RingValue(int)> &f);

struct LeapfrogState {
    Seq v_minus, v;
    Mode mode() const { return v.mode(); }
};

LeapfrogState random_state(Sampler &s, Backend b, int d, int n, Mode mode, int w = 0);

struct PQCoords {
    Seq p, q;
};

struct ABCoords {
    Seq a, b;
};

// V_i^-, V_i with u_i^- = (v_i^-, 1) (V_i^-)^{-1}, u_i = (v_i, 1) V_i^{-1}
struct Scalings {
    Seq v_minus, v;
};

struct ABResult {
    ABCoords ab;
    Scalings scal;
};

PQCoords pq_from_vertices(const LeapfrogState &s);
LeapfrogState step_vertices(const LeapfrogState &s);
LeapfrogState step_vertices(const LeapfrogState &s, const PQCoords &pq);
QMatrix g_matrix(const LeapfrogState &s, int i);
// residual lifts of g_i v_{i-1} - v_{i+1} p^{-1}, g_i v_i + v_i, g_i v_{i+1} - v_{i-1} p, g_i v_i^- eta^{-1} - v_i^+
std::vector<PointP1> g_contract_residuals(const LeapfrogState &s, int i);
PQCoords step_pq(const PQCoords &pq);

struct LaxResidual {
    RingValue spatial, temporal;
};
std::vector<std::pair<int, LaxResidual>> lax_residual(const PQCoords &pq, const LeapfrogState &s, const CentralScalar &z);
RingValue lax_coefficient(const PQCoords &pq, const LeapfrogState &s, int i);

Scalings initial_scalings(const LeapfrogState &s);
Scalings step_scalings(const LeapfrogState &s, const Scalings &scal);
Scalings step_scalings(const LeapfrogState &s, const Scalings &scal, const LeapfrogState &next);
ABCoords ab_with_scalings(const LeapfrogState &s, const Scalings &scal);
ABResult ab_from_vertices(const LeapfrogState &s);
ABResult ab_from_vertices(const LeapfrogState &s, const Scalings &scal);
std::vector<PointP1> u_lifts(const Seq &v, const Seq &scal);
ABCoords ab_cross_ratio(const LeapfrogState &s, const Scalings &scal);
Seq c_coords(const LeapfrogState &s, const Scalings &scal);
// the two differences in the boxed quasi-determinant constraints
std::vector<std::pair<int, std::pair<RingValue, RingValue>>> con_det_residuals(const LeapfrogState &s, const Scalings &scal);
ABCoords step_ab(const ABCoords &ab);

Seq y_from_ab(const ABCoords &ab);
Seq y_cross_ratio(const LeapfrogState &s, const Scalings &scal, const ABCoords &ab);
// layers j-1, j, j+1 of an (a,b) trajectory
Seq y_system_residual(const std::vector<ABCoords> &layers);
Seq y_commutative_residual(const std::vector<ABCoords> &layers);
std::pair<Seq, Seq> aij_residuals(const std::vector<ABCoords> &layers);

RingValue eq_k_residual(const LeapfrogState &s, const LeapfrogState &next, int i);

}
