#include "nclf/algebra.hpp"

#include <cmath>
#include <sstream>

namespace nclf {

std::string to_string(Backend b)
{
    switch (b) {
    case Backend::Rational: return "rational";
    case Backend::Float: return "float";
    case Backend::Scalar: return "scalar";
    }
    return "?";
}

Backend parse_backend(const std::string &s)
{
    if (s == "rational") return Backend::Rational;
    if (s == "float") return Backend::Float;
    if (s == "scalar") return Backend::Scalar;
    throw std::invalid_argument("unknown backend: " + s);
}

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), n_(rows * cols) {}

RatMatrix RatMatrix::identity(int n)
{
    RatMatrix m(n, n);
    for (int i = 0; i < n; i++)
        m.n_[i * n + i] = 1;
    return m;
}

RatMatrix RatMatrix::from_entries(int rows, int cols, const std::vector<mpq_class> &e)
{
    RatMatrix m(rows, cols);
    mpz_class l = 1;
    for (auto &x : e)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (size_t k = 0; k < e.size(); k++)
        m.n_[k] = e[k].get_num() * (l / e[k].get_den());
    m.d_ = l;
    m.normalize();
    return m;
}

void RatMatrix::normalize()
{
    if (d_ == 1)
        return;
    mpz_class g = d_;
    for (auto &x : n_) {
        if (g == 1)
            return;
        if (sgn(x) != 0)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    if (g == d_ && is_zero()) {
        d_ = 1;
        return;
    }
    if (g == 1)
        return;
    for (auto &x : n_)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(d_.get_mpz_t(), d_.get_mpz_t(), g.get_mpz_t());
}

mpq_class RatMatrix::operator()(int r, int c) const
{
    mpq_class q(num(r, c), d_);
    q.canonicalize();
    return q;
}

RatMatrix RatMatrix::operator+(const RatMatrix &o) const
{
    RatMatrix r(rows_, cols_);
    if (d_ == o.d_) {
        for (size_t k = 0; k < n_.size(); k++)
            r.n_[k] = n_[k] + o.n_[k];
        r.d_ = d_;
    } else {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), d_.get_mpz_t(), o.d_.get_mpz_t());
        mpz_class fa = o.d_ / g, fb = d_ / g;
        for (size_t k = 0; k < n_.size(); k++)
            r.n_[k] = n_[k] * fa + o.n_[k] * fb;
        r.d_ = d_ * fa;
    }
    r.normalize();
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix &o) const
{
    return *this + (-o);
}

RatMatrix RatMatrix::operator*(const RatMatrix &o) const
{
    RatMatrix r(rows_, o.cols_);
    mpz_class t;
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            const mpz_class &x = n_[i * cols_ + k];
            if (sgn(x) == 0)
                continue;
            for (int j = 0; j < o.cols_; j++)
                mpz_addmul(r.n_[i * o.cols_ + j].get_mpz_t(), x.get_mpz_t(), o.n_[k * o.cols_ + j].get_mpz_t());
        }
    r.d_ = d_ * o.d_;
    r.normalize();
    return r;
}

RatMatrix RatMatrix::operator-() const
{
    RatMatrix r = *this;
    for (auto &x : r.n_)
        x = -x;
    return r;
}

RatMatrix RatMatrix::scaled(const mpq_class &c) const
{
    RatMatrix r(rows_, cols_);
    for (size_t k = 0; k < n_.size(); k++)
        r.n_[k] = n_[k] * c.get_num();
    r.d_ = d_ * c.get_den();
    if (sgn(c) == 0)
        r.d_ = 1;
    r.normalize();
    return r;
}

bool RatMatrix::operator==(const RatMatrix &o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_ && n_ == o.n_;
}

bool RatMatrix::is_zero() const
{
    for (auto &x : n_)
        if (sgn(x) != 0)
            return false;
    return true;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++)
            r.n_[j * rows_ + i] = n_[i * cols_ + j];
    r.d_ = d_;
    return r;
}

namespace {

// Fraction-free elimination on integer entries; returns rank and, when square, the determinant.
std::pair<int, mpz_class> bareiss(std::vector<mpz_class> m, int rows, int cols)
{
    auto at = [&](int r, int c) -> mpz_class & { return m[r * cols + c]; };
    mpz_class prev = 1;
    int rank = 0, sign = 1;
    for (int c = 0; c < cols && rank < rows; c++) {
        int p = -1;
        for (int r = rank; r < rows; r++)
            if (sgn(at(r, c)) != 0) {
                p = r;
                break;
            }
        if (p < 0)
            continue;
        if (p != rank) {
            for (int j = 0; j < cols; j++)
                std::swap(at(p, j), at(rank, j));
            sign = -sign;
        }
        for (int r = rank + 1; r < rows; r++) {
            for (int j = c + 1; j < cols; j++) {
                at(r, j) = at(r, j) * at(rank, c) - at(r, c) * at(rank, j);
                mpz_divexact(at(r, j).get_mpz_t(), at(r, j).get_mpz_t(), prev.get_mpz_t());
            }
            at(r, c) = 0;
        }
        prev = at(rank, c);
        rank++;
    }
    mpz_class det = 0;
    if (rows == cols && rank == rows)
        det = sign * prev;
    return {rank, det};
}

}

int RatMatrix::rank() const
{
    return bareiss(n_, rows_, cols_).first;
}

bool RatMatrix::invertible() const
{
    if (rows_ != cols_)
        return false;
    return rows_ <= 3 ? sgn(int_det()) != 0 : rank() == rows_;
}

mpz_class RatMatrix::int_det() const
{
    const auto &a = n_;
    switch (rows_) {
    case 1: return a[0];
    case 2: return a[0] * a[3] - a[1] * a[2];
    case 3:
        return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) + a[2] * (a[3] * a[7] - a[4] * a[6]);
    default: return bareiss(n_, rows_, cols_).second;
    }
}

mpq_class RatMatrix::det() const
{
    mpz_class dn = 1;
    for (int i = 0; i < rows_; i++)
        dn *= d_;
    mpq_class q(int_det(), dn);
    q.canonicalize();
    return q;
}

std::optional<RatMatrix> RatMatrix::inverse() const
{
    int n = rows_;
    if (n != cols_)
        return std::nullopt;
    if (n <= 3) {
        // A = N/D, A^{-1} = D adj(N) / det(N)
        mpz_class det = int_det();
        if (sgn(det) == 0)
            return std::nullopt;
        const auto &a = n_;
        RatMatrix r(n, n);
        if (n == 1) {
            r.n_[0] = 1;
        } else if (n == 2) {
            r.n_ = {a[3], -a[1], -a[2], a[0]};
        } else {
            for (int i = 0; i < 3; i++)
                for (int j = 0; j < 3; j++) {
                    int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                    r.n_[i * 3 + j] = a[r0 * 3 + c0] * a[r1 * 3 + c1] - a[r0 * 3 + c1] * a[r1 * 3 + c0];
                }
        }
        for (auto &x : r.n_)
            x *= d_;
        if (sgn(det) < 0) {
            det = -det;
            for (auto &x : r.n_)
                x = -x;
        }
        r.d_ = det;
        r.normalize();
        return r;
    }
    std::vector<mpq_class> m(n_.size()), e(n_.size());
    for (size_t k = 0; k < n_.size(); k++)
        m[k] = mpq_class(n_[k]);
    for (int i = 0; i < n; i++)
        e[i * n + i] = 1;
    auto at = [&](std::vector<mpq_class> &v, int r, int c) -> mpq_class & { return v[r * n + c]; };
    for (int c = 0; c < n; c++) {
        int p = -1;
        for (int i = c; i < n; i++)
            if (sgn(at(m, i, c)) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            return std::nullopt;
        if (p != c)
            for (int j = 0; j < n; j++) {
                std::swap(at(m, p, j), at(m, c, j));
                std::swap(at(e, p, j), at(e, c, j));
            }
        mpq_class piv = at(m, c, c);
        for (int j = 0; j < n; j++) {
            at(m, c, j) /= piv;
            at(e, c, j) /= piv;
        }
        for (int i = 0; i < n; i++) {
            if (i == c || sgn(at(m, i, c)) == 0)
                continue;
            mpq_class f = at(m, i, c);
            for (int j = 0; j < n; j++) {
                at(m, i, j) -= f * at(m, c, j);
                at(e, i, j) -= f * at(e, c, j);
            }
        }
    }
    return from_entries(n, n, e).scaled(mpq_class(d_));
}

RatMatrix RatMatrix::kron(const RatMatrix &o) const
{
    RatMatrix r(rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++) {
            const mpz_class &x = num(i, j);
            if (sgn(x) == 0)
                continue;
            for (int k = 0; k < o.rows_; k++)
                for (int l = 0; l < o.cols_; l++)
                    r.n_[(i * o.rows_ + k) * r.cols_ + j * o.cols_ + l] = x * o.num(k, l);
        }
    r.d_ = d_ * o.d_;
    r.normalize();
    return r;
}

mpq_class RatMatrix::trace() const
{
    mpz_class t = 0;
    for (int i = 0; i < std::min(rows_, cols_); i++)
        t += num(i, i);
    mpq_class q(t, d_);
    q.canonicalize();
    return q;
}

Eigen::MatrixXd RatMatrix::to_double() const
{
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++)
            m(i, j) = (*this)(i, j).get_d();
    return m;
}

RingValue::RingValue(RatMatrix m) : v_(std::move(m)) {}
RingValue::RingValue(Eigen::MatrixXd m) : v_(std::move(m)) {}
RingValue::RingValue(mpq_class x) : v_(std::move(x)) {}

RingValue RingValue::zero(Backend b, int d)
{
    return constant(0, b, d);
}

RingValue RingValue::one(Backend b, int d)
{
    return constant(1, b, d);
}

RingValue RingValue::constant(const mpq_class &c, Backend b, int d)
{
    switch (b) {
    case Backend::Rational:
        return RingValue(RatMatrix::identity(d).scaled(c));
    case Backend::Float:
        return RingValue(Eigen::MatrixXd(Eigen::MatrixXd::Identity(d, d) * c.get_d()));
    case Backend::Scalar:
        return RingValue(c);
    }
    throw BackendMismatch();
}

Backend RingValue::backend() const
{
    switch (v_.index()) {
    case 0: return Backend::Rational;
    case 1: return Backend::Float;
    default: return Backend::Scalar;
    }
}

int RingValue::dim() const
{
    switch (v_.index()) {
    case 0: return rat().rows();
    case 1: return int(flt().rows());
    default: return 1;
    }
}

bool RingValue::same_space(const RingValue &o) const
{
    return v_.index() == o.v_.index() && dim() == o.dim();
}

static void check(const RingValue &a, const RingValue &b)
{
    if (!a.same_space(b))
        throw BackendMismatch();
}

RingValue RingValue::operator+(const RingValue &o) const
{
    check(*this, o);
    switch (v_.index()) {
    case 0: return RingValue(rat() + o.rat());
    case 1: return RingValue(Eigen::MatrixXd(flt() + o.flt()));
    default: return RingValue(mpq_class(sca() + o.sca()));
    }
}

RingValue RingValue::operator-(const RingValue &o) const
{
    check(*this, o);
    switch (v_.index()) {
    case 0: return RingValue(rat() - o.rat());
    case 1: return RingValue(Eigen::MatrixXd(flt() - o.flt()));
    default: return RingValue(mpq_class(sca() - o.sca()));
    }
}

RingValue RingValue::operator*(const RingValue &o) const
{
    check(*this, o);
    switch (v_.index()) {
    case 0: return RingValue(rat() * o.rat());
    case 1: return RingValue(Eigen::MatrixXd(flt() * o.flt()));
    default: return RingValue(mpq_class(sca() * o.sca()));
    }
}

RingValue RingValue::operator-() const
{
    switch (v_.index()) {
    case 0: return RingValue(-rat());
    case 1: return RingValue(Eigen::MatrixXd(-flt()));
    default: return RingValue(mpq_class(-sca()));
    }
}

RingValue RingValue::scaled(const mpq_class &c) const
{
    switch (v_.index()) {
    case 0: return RingValue(rat().scaled(c));
    case 1: return RingValue(Eigen::MatrixXd(flt() * c.get_d()));
    default: return RingValue(mpq_class(sca() * c));
    }
}

bool RingValue::operator==(const RingValue &o) const
{
    check(*this, o);
    switch (v_.index()) {
    case 0: return rat() == o.rat();
    case 1: return flt() == o.flt();
    default: return sca() == o.sca();
    }
}

bool RingValue::is_zero() const
{
    switch (v_.index()) {
    case 0: return rat().is_zero();
    case 1: return flt().isZero(0.0);
    default: return sgn(sca()) == 0;
    }
}

bool RingValue::is_invertible() const
{
    switch (v_.index()) {
    case 0: return rat().invertible();
    case 1: {
        if (!flt().allFinite())
            return false;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(flt());
        return lu.rcond() > float_rcond_threshold;
    }
    default: return sgn(sca()) != 0;
    }
}

std::optional<RingValue> RingValue::try_inv() const
{
    switch (v_.index()) {
    case 0: {
        auto r = rat().inverse();
        if (!r)
            return std::nullopt;
        return RingValue(std::move(*r));
    }
    case 1:
        if (!is_invertible())
            return std::nullopt;
        return RingValue(Eigen::MatrixXd(flt().partialPivLu().inverse()));
    default:
        if (sgn(sca()) == 0)
            return std::nullopt;
        return RingValue(mpq_class(1 / sca()));
    }
}

RingValue RingValue::inv() const
{
    if (auto r = try_inv())
        return std::move(*r);
    throw NotInvertible();
}

RingValue RingValue::star() const
{
    switch (v_.index()) {
    case 0: return RingValue(rat().transpose());
    case 1: return RingValue(Eigen::MatrixXd(flt().transpose()));
    default: return *this;
    }
}

double RingValue::norm() const
{
    switch (v_.index()) {
    case 0: {
        mpq_class s = 0;
        for (int i = 0; i < rat().rows(); i++)
            for (int j = 0; j < rat().cols(); j++)
                s += rat()(i, j) * rat()(i, j);
        return std::sqrt(s.get_d());
    }
    case 1: return flt().norm();
    default: return std::abs(sca().get_d());
    }
}

mpq_class RingValue::trace() const
{
    switch (v_.index()) {
    case 0: return rat().trace();
    case 1: throw Error("exact trace requested on float backend");
    default: return sca();
    }
}

double RingValue::trace_double() const
{
    if (v_.index() == 1)
        return flt().trace();
    return trace().get_d();
}

RingValue RingValue::kron(const RingValue &o) const
{
    if (backend() != o.backend())
        throw BackendMismatch();
    switch (v_.index()) {
    case 0: return RingValue(rat().kron(o.rat()));
    case 1: {
        const auto &a = flt(), &b = o.flt();
        Eigen::MatrixXd r(a.rows() * b.rows(), a.cols() * b.cols());
        for (int i = 0; i < a.rows(); i++)
            for (int j = 0; j < a.cols(); j++)
                r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return RingValue(std::move(r));
    }
    default: return RingValue(mpq_class(sca() * o.sca()));
    }
}

static std::string fmt_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> RingValue::entries() const
{
    std::vector<std::string> out;
    switch (v_.index()) {
    case 0:
        for (int i = 0; i < rat().rows(); i++)
            for (int j = 0; j < rat().cols(); j++)
                out.push_back(rat()(i, j).get_str());
        break;
    case 1:
        for (int i = 0; i < flt().rows(); i++)
            for (int j = 0; j < flt().cols(); j++)
                out.push_back(fmt_double(flt()(i, j)));
        break;
    default:
        out.push_back(sca().get_str());
    }
    return out;
}

std::string RingValue::str() const
{
    auto e = entries();
    if (backend() == Backend::Scalar)
        return e[0];
    int d = dim();
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < d; i++) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < d; j++)
            os << (j ? "," : "") << e[i * d + j];
        os << "]";
    }
    os << "]";
    return os.str();
}

RingValue ring_inv(const RingValue &a)
{
    return a.inv();
}

RingValue ring_star(const RingValue &a)
{
    return a.star();
}

RingValue operator*(const CentralScalar &c, const RingValue &a)
{
    return a.scaled(c.c);
}

RingValue operator*(const RingValue &a, const CentralScalar &c)
{
    return a.scaled(c.c);
}

std::int64_t Sampler::uniform(std::int64_t lo, std::int64_t hi)
{
    std::uint64_t span = std::uint64_t(hi - lo) + 1;
    return lo + std::int64_t(rng_() % span);
}

double Sampler::uniform01()
{
    return double(rng_() >> 11) * 0x1.0p-53;
}

mpq_class Sampler::small_rational()
{
    mpq_class q(mpz_class(long(uniform(-30, 30))), mpz_class(long(uniform(1, 8))));
    q.canonicalize();
    return q;
}

RingValue random_generic(Sampler &s, int d, Backend b, bool invertible)
{
    for (int attempt = 0; attempt < 100; attempt++) {
        RingValue v;
        if (b == Backend::Scalar) {
            v = RingValue(s.small_rational());
        } else {
            std::vector<mpq_class> e(d * d);
            for (auto &x : e)
                x = s.small_rational();
            RatMatrix m = RatMatrix::from_entries(d, d, e);
            v = b == Backend::Rational ? RingValue(std::move(m)) : RingValue(m.to_double());
        }
        if (!invertible || v.is_invertible())
            return v;
    }
    throw Error("random_generic: no invertible sample in 100 attempts");
}

RingValue random_generic(std::uint64_t seed, int d, Backend b, bool invertible)
{
    Sampler s(seed);
    return random_generic(s, d, b, invertible);
}

}
