#pragma once

#include <vector>

#include "leapfrog.hpp"
#include "quasidet.hpp"

namespace nclf {

// Squares are indexed 0..N-1; square i carries weights a_{i+1}, b_{i+1}, c_{i+1}, d_{i+1}.
struct NetworkWeights {
    std::vector<RingValue> a, b, c, d;
    int size() const { return int(a.size()); }
};

NetworkWeights random_weights(Sampler &s, Backend b, int d, int n);

// f_i = b_i + a_i d_i c_i
RingValue square_f(const NetworkWeights &w, int i);
NetworkWeights square_move(const NetworkWeights &w, int i);
NetworkWeights square_move_all(const NetworkWeights &w);

// path sums from the (bottom, top) sources to the (bottom, top) sinks of one square,
// in the layout before and after the move
QMatrix square_boundary(const RingValue &a, const RingValue &b, const RingValue &c, const RingValue &d);
QMatrix moved_square_boundary(const RingValue &a, const RingValue &b, const RingValue &c, const RingValue &d);

struct XYWeights {
    std::vector<RingValue> X, Y;
    RingValue Z;
    int size() const { return int(X.size()); }
    // any integer index, with X_{i+N} = Z X_i Z^-1
    RingValue x(int i) const;
    RingValue y(int i) const;
    bool operator==(const XYWeights &o) const { return X == o.X && Y == o.Y && Z == o.Z; }
};

XYWeights xy_weights(const NetworkWeights &w);
// gauge of the network after square_move_all, given its weights
XYWeights moved_xy_weights(const NetworkWeights &moved);
XYWeights step_xy(const XYWeights &xy);
RingValue twist_residual(const NetworkWeights &w);

// X <-> a, Y <-> b on an untwisted (Z = 1) configuration
XYWeights xy_from_ab(const ABCoords &ab);
ABCoords ab_from_xy(const XYWeights &xy);

QMatrix elementary_boundary(const XYWeights &xy, int i, const CentralScalar &mu);
// B_1(mu) ... B_N(mu)
QMatrix boundary_matrix(const XYWeights &xy, const CentralScalar &mu);
// boundary_matrix times diag(Z, Z)
QMatrix monodromy(const XYWeights &xy, const CentralScalar &mu);
QMatrix lax_factorization_residual(const XYWeights &xy, int i, const CentralScalar &mu);

// t[i-1][j] = coefficient of mu^j in tr(monodromy(mu)^i), i = 1..imax
std::vector<std::vector<mpq_class>> spectral_invariants(const XYWeights &xy, int imax);

struct ConservationReport {
    int steps_done = 0;
    int changed = 0;             // invariants differing from the initial ones, summed over steps
    int degenerate_step = -1;    // step at which step_xy failed, or -1
    int degenerate_index = -1;
    std::vector<std::vector<mpq_class>> initial;
};

// checks invariants after every `every` steps
ConservationReport invariants_conservation(const XYWeights &xy, int steps, int imax, int every = 1);

}
