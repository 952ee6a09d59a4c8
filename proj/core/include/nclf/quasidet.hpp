#pragma once

#include <utility>
#include <vector>

#include "algebra.hpp"

namespace nclf {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols, const RingValue &fill);
    static QMatrix identity(int n, Backend b, int d);
    static QMatrix from_rows(const std::vector<std::vector<RingValue>> &rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    RingValue &operator()(int r, int c) { return a_[r * cols_ + c]; }
    const RingValue &operator()(int r, int c) const { return a_[r * cols_ + c]; }
    Backend backend() const { return a_.front().backend(); }
    int dim() const { return a_.front().dim(); }

    QMatrix operator+(const QMatrix &o) const;
    QMatrix operator-(const QMatrix &o) const;
    QMatrix operator*(const QMatrix &o) const;
    bool operator==(const QMatrix &o) const;
    bool is_zero() const;

    QMatrix without(int i, int j) const;
    QMatrix select(const std::vector<int> &rows, const std::vector<int> &cols) const;
    std::vector<RingValue> row(int i) const;
    std::vector<RingValue> col(int j) const;
    std::vector<RingValue> apply(const std::vector<RingValue> &x) const;
    std::vector<RingValue> apply_left(const std::vector<RingValue> &x) const;
    double norm() const;

    // rank of the nd x nd block-flattened matrix (float: numerical rank)
    int flat_rank() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<RingValue> a_;
};

// Indices are 0-based throughout.
RingValue quasi_det(const QMatrix &a, int i, int j);
QMatrix nc_inverse(const QMatrix &a);
// solves A x = xi
std::vector<RingValue> nc_solve(const QMatrix &a, const std::vector<RingValue> &xi);
// solves x A = xi
std::vector<RingValue> nc_solve_left(const QMatrix &a, const std::vector<RingValue> &xi);

// m is (k+2)x(k+2) with blocks [[A, B, C], [D, f, g], [E, h, i]], A of size k.
RingValue jacobi_residual(const QMatrix &m);
std::pair<RingValue, RingValue> homological_residuals(const QMatrix &m);

bool row_dependence_check(const QMatrix &a, int i, int j);

}
