#include "nclf/quasidet.hpp"

#include <cmath>

namespace nclf {

QMatrix::QMatrix(int rows, int cols, const RingValue &fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

QMatrix QMatrix::identity(int n, Backend b, int d)
{
    QMatrix m(n, n, RingValue::zero(b, d));
    for (int i = 0; i < n; i++)
        m(i, i) = RingValue::one(b, d);
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<RingValue>> &rows)
{
    QMatrix m(int(rows.size()), int(rows.front().size()), rows.front().front());
    for (int i = 0; i < m.rows_; i++)
        for (int j = 0; j < m.cols_; j++)
            m(i, j) = rows[i][j];
    return m;
}

QMatrix QMatrix::operator+(const QMatrix &o) const
{
    QMatrix r = *this;
    for (size_t k = 0; k < a_.size(); k++)
        r.a_[k] += o.a_[k];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix &o) const
{
    QMatrix r = *this;
    for (size_t k = 0; k < a_.size(); k++)
        r.a_[k] -= o.a_[k];
    return r;
}

QMatrix QMatrix::operator*(const QMatrix &o) const
{
    if (cols_ != o.rows_)
        throw BackendMismatch();
    QMatrix r(rows_, o.cols_, RingValue::zero(backend(), dim()));
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < o.cols_; j++)
            for (int k = 0; k < cols_; k++)
                r(i, j) += (*this)(i, k) * o(k, j);
    return r;
}

bool QMatrix::operator==(const QMatrix &o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool QMatrix::is_zero() const
{
    for (auto &x : a_)
        if (!x.is_zero())
            return false;
    return true;
}

QMatrix QMatrix::without(int i, int j) const
{
    std::vector<int> rs, cs;
    for (int r = 0; r < rows_; r++)
        if (r != i)
            rs.push_back(r);
    for (int c = 0; c < cols_; c++)
        if (c != j)
            cs.push_back(c);
    return select(rs, cs);
}

QMatrix QMatrix::select(const std::vector<int> &rs, const std::vector<int> &cs) const
{
    QMatrix m(int(rs.size()), int(cs.size()), a_.front());
    for (size_t i = 0; i < rs.size(); i++)
        for (size_t j = 0; j < cs.size(); j++)
            m(int(i), int(j)) = (*this)(rs[i], cs[j]);
    return m;
}

std::vector<RingValue> QMatrix::row(int i) const
{
    return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_};
}

std::vector<RingValue> QMatrix::col(int j) const
{
    std::vector<RingValue> c;
    for (int i = 0; i < rows_; i++)
        c.push_back((*this)(i, j));
    return c;
}

std::vector<RingValue> QMatrix::apply(const std::vector<RingValue> &x) const
{
    std::vector<RingValue> y(rows_, RingValue::zero(backend(), dim()));
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++)
            y[i] += (*this)(i, j) * x[j];
    return y;
}

std::vector<RingValue> QMatrix::apply_left(const std::vector<RingValue> &x) const
{
    std::vector<RingValue> y(cols_, RingValue::zero(backend(), dim()));
    for (int j = 0; j < cols_; j++)
        for (int i = 0; i < rows_; i++)
            y[j] += x[i] * (*this)(i, j);
    return y;
}

double QMatrix::norm() const
{
    double s = 0;
    for (auto &x : a_) {
        double t = x.norm();
        s += t * t;
    }
    return std::sqrt(s);
}

int QMatrix::flat_rank() const
{
    int d = dim();
    switch (backend()) {
    case Backend::Rational: {
        std::vector<mpq_class> e(rows_ * d * cols_ * d);
        for (int i = 0; i < rows_; i++)
            for (int j = 0; j < cols_; j++)
                for (int p = 0; p < d; p++)
                    for (int q = 0; q < d; q++)
                        e[(i * d + p) * cols_ * d + j * d + q] = (*this)(i, j).rat()(p, q);
        return RatMatrix::from_entries(rows_ * d, cols_ * d, e).rank();
    }
    case Backend::Float: {
        Eigen::MatrixXd f(rows_ * d, cols_ * d);
        for (int i = 0; i < rows_; i++)
            for (int j = 0; j < cols_; j++)
                f.block(i * d, j * d, d, d) = (*this)(i, j).flt();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(f);
        lu.setThreshold(1e-12);
        return int(lu.rank());
    }
    case Backend::Scalar: {
        std::vector<mpq_class> e;
        for (auto &x : a_)
            e.push_back(x.sca());
        return RatMatrix::from_entries(rows_, cols_, e).rank();
    }
    }
    return 0;
}

QMatrix nc_inverse(const QMatrix &a)
{
    int n = a.rows();
    if (n != a.cols())
        throw SingularMatrix();
    Backend b = a.backend();
    int d = a.dim();
    QMatrix m = a, r = QMatrix::identity(n, b, d);
    for (int c = 0; c < n; c++) {
        int p = -1;
        for (int i = c; i < n; i++)
            if (m(i, c).is_invertible()) {
                p = i;
                break;
            }
        if (p < 0) {
            if (a.flat_rank() < n * d)
                throw SingularMatrix();
            throw NoInvertiblePivot(c);
        }
        if (p != c)
            for (int j = 0; j < n; j++) {
                std::swap(m(p, j), m(c, j));
                std::swap(r(p, j), r(c, j));
            }
        RingValue pinv = m(c, c).inv();
        for (int j = 0; j < n; j++) {
            m(c, j) = pinv * m(c, j);
            r(c, j) = pinv * r(c, j);
        }
        for (int i = 0; i < n; i++) {
            if (i == c || m(i, c).is_zero())
                continue;
            RingValue f = m(i, c);
            for (int j = 0; j < n; j++) {
                m(i, j) -= f * m(c, j);
                r(i, j) -= f * r(c, j);
            }
        }
    }
    return r;
}

RingValue quasi_det(const QMatrix &a, int i, int j)
{
    int n = a.rows();
    if (n != a.cols())
        throw Error("quasi_det: matrix not square");
    if (n == 1)
        return a(0, 0);
    QMatrix sub = a.without(i, j), inv;
    try {
        inv = nc_inverse(sub);
    } catch (const SingularMatrix &) {
        throw SingularSubmatrix(i, j);
    } catch (const NoInvertiblePivot &) {
        throw SingularSubmatrix(i, j);
    }
    std::vector<RingValue> r, c;
    for (int k = 0; k < n; k++) {
        if (k != j)
            r.push_back(a(i, k));
        if (k != i)
            c.push_back(a(k, j));
    }
    RingValue acc = a(i, j);
    auto ic = inv.apply(c);
    for (int k = 0; k < n - 1; k++)
        acc -= r[k] * ic[k];
    return acc;
}

static bool residual_ok(const std::vector<RingValue> &lhs, const std::vector<RingValue> &rhs)
{
    if (lhs.front().backend() != Backend::Float) {
        for (size_t k = 0; k < lhs.size(); k++)
            if (lhs[k] != rhs[k])
                return false;
        return true;
    }
    double num = 0, den = 0;
    for (size_t k = 0; k < lhs.size(); k++) {
        num += std::pow((lhs[k] - rhs[k]).norm(), 2);
        den += std::pow(rhs[k].norm(), 2);
    }
    return std::sqrt(num) <= 1e-8 * (1 + std::sqrt(den));
}

// Quasi-determinant route when every |A|_{p,q} is invertible, else nullopt.
static std::optional<std::vector<RingValue>> qd_inverses(const QMatrix &a)
{
    int n = a.rows();
    std::vector<RingValue> q;
    try {
        for (int p = 0; p < n; p++)
            for (int s = 0; s < n; s++) {
                RingValue v = quasi_det(a, p, s);
                if (!v.is_invertible())
                    return std::nullopt;
                q.push_back(v.inv());
            }
    } catch (const SingularSubmatrix &) {
        return std::nullopt;
    }
    return q;
}

std::vector<RingValue> nc_solve(const QMatrix &a, const std::vector<RingValue> &xi)
{
    int n = a.rows();
    std::vector<RingValue> x;
    if (auto q = qd_inverses(a)) {
        x.assign(n, RingValue::zero(a.backend(), a.dim()));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                x[i] += (*q)[j * n + i] * xi[j];
    } else {
        x = nc_inverse(a).apply(xi);
    }
    if (!residual_ok(a.apply(x), xi))
        throw InconsistentSystem();
    return x;
}

std::vector<RingValue> nc_solve_left(const QMatrix &a, const std::vector<RingValue> &xi)
{
    int n = a.rows();
    std::vector<RingValue> x;
    if (auto q = qd_inverses(a)) {
        x.assign(n, RingValue::zero(a.backend(), a.dim()));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                x[i] += xi[j] * (*q)[i * n + j];
    } else {
        x = nc_inverse(a).apply_left(xi);
    }
    if (!residual_ok(a.apply_left(x), xi))
        throw InconsistentSystem();
    return x;
}

static std::vector<int> upto(int k, int extra)
{
    std::vector<int> v;
    for (int i = 0; i < k; i++)
        v.push_back(i);
    v.push_back(extra);
    return v;
}

static int inner_size(const QMatrix &m)
{
    if (m.rows() != m.cols() || m.rows() < 2)
        throw Error("block matrix must be square of size at least 2");
    return m.rows() - 2;
}

RingValue jacobi_residual(const QMatrix &m)
{
    int k = inner_size(m);
    auto corner = [&](int r, int c) {
        QMatrix s = m.select(upto(k, r), upto(k, c));
        return quasi_det(s, k, k);
    };
    RingValue lhs = quasi_det(m, k + 1, k + 1);
    RingValue mid = corner(k, k);
    if (!mid.is_invertible())
        throw SingularSubmatrix(k, k);
    RingValue rhs = corner(k + 1, k + 1) - corner(k + 1, k) * mid.inv() * corner(k, k + 1);
    return lhs - rhs;
}

std::pair<RingValue, RingValue> homological_residuals(const QMatrix &m)
{
    int k = inner_size(m);
    RingValue zero = RingValue::zero(m.backend(), m.dim()), one = RingValue::one(m.backend(), m.dim());
    QMatrix row_cut = m, col_cut = m;
    for (int c = 0; c < k + 2; c++)
        row_cut(k + 1, c) = c == k + 1 ? one : zero;
    for (int r = 0; r < k + 2; r++)
        col_cut(r, k + 1) = r == k + 1 ? one : zero;
    RingValue corner = quasi_det(m, k + 1, k + 1);
    RingValue r1 = quasi_det(m, k + 1, k) - corner * quasi_det(row_cut, k + 1, k);
    RingValue r2 = quasi_det(m, k, k + 1) - quasi_det(col_cut, k, k + 1) * corner;
    return {r1, r2};
}

bool row_dependence_check(const QMatrix &a, int i, int j)
{
    return quasi_det(a, i, j).is_zero();
}

}
