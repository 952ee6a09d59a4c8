#include "nclf/biortho.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "nclf/errors.hpp"

namespace nclf {

const RingValue &MomentWindow::operator[](int k) const
{
    if (k < kmin_ || k > kmax())
        throw MomentOutOfWindow(k);
    return m_[k - kmin_];
}

MomentWindow random_moments(Sampler &s, Backend b, int d, int kmin, int kmax)
{
    std::vector<RingValue> m;
    for (int k = kmin; k <= kmax; ++k)
        m.push_back(random_generic(s, d, b));
    return MomentWindow(kmin, std::move(m));
}

LaurentPoly LaurentPoly::monomial(int e, const RingValue &c)
{
    LaurentPoly p;
    p.set(e, c);
    return p;
}

RingValue LaurentPoly::coeff(int e) const
{
    auto it = c_.find(e);
    if (it != c_.end())
        return it->second;
    const RingValue &any = c_.begin()->second;
    return RingValue::zero(any.backend(), any.dim());
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly &o) const
{
    LaurentPoly r = *this;
    for (auto &[e, c] : o.c_) {
        auto it = r.c_.find(e);
        if (it == r.c_.end())
            r.c_.emplace(e, c);
        else
            it->second += c;
    }
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly &o) const
{
    LaurentPoly r = *this;
    for (auto &[e, c] : o.c_) {
        auto it = r.c_.find(e);
        if (it == r.c_.end())
            r.c_.emplace(e, -c);
        else
            it->second -= c;
    }
    return r;
}

LaurentPoly LaurentPoly::operator*(const RingValue &x) const
{
    LaurentPoly r;
    for (auto &[e, c] : c_)
        r.c_.emplace(e, c * x);
    return r;
}

LaurentPoly LaurentPoly::shift(int s) const
{
    LaurentPoly r;
    for (auto &[e, c] : c_)
        r.c_.emplace(e + s, c);
    return r;
}

bool LaurentPoly::is_zero() const
{
    for (auto &[e, c] : c_)
        if (!c.is_zero())
            return false;
    return true;
}

double LaurentPoly::norm() const
{
    double s = 0;
    for (auto &[e, c] : c_) {
        double n = c.norm();
        s += n * n;
    }
    return std::sqrt(s);
}

RingValue pair_starred(const LaurentPoly &f, const LaurentPoly &gstar, int k, const MomentWindow &m)
{
    std::optional<RingValue> acc;
    for (auto &[i, a] : f.coeffs())
        for (auto &[e, s] : gstar.coeffs()) {
            RingValue t = a * m[i + e + k] * s;
            acc = acc ? *acc + t : t;
        }
    return acc ? *acc : RingValue::zero(m.backend(), m.dim());
}

RingValue inner_product(const LaurentPoly &f, const LaurentPoly &g, int k, const MomentWindow &m)
{
    LaurentPoly gs;
    for (auto &[j, b] : g.coeffs())
        gs.set(-j, b.star());
    return pair_starred(f, gs, k, m);
}

QMatrix Biortho::toeplitz(int k, int size) const
{
    QMatrix t(size, size, RingValue::zero(m_.backend(), m_.dim()));
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            t(r, c) = m_[k + r - c];
    return t;
}

RingValue Biortho::qd(int k, int n, int i, int j) const
{
    try {
        return quasi_det(toeplitz(k, n + 1), i, j);
    } catch (const MomentOutOfWindow &) {
        throw;
    } catch (const Error &) {
        throw SingularToeplitz(n, k);
    }
}

const LaurentPoly &Biortho::P(int k, int n)
{
    auto key = std::make_pair(k, n);
    if (auto it = p_.find(key); it != p_.end())
        return it->second;
    RingValue one = RingValue::one(m_.backend(), m_.dim());
    LaurentPoly p = LaurentPoly::monomial(n, one);
    if (n > 0) {
        std::vector<RingValue> row;
        for (int c = 0; c < n; ++c)
            row.push_back(-m_[k + n - c]);
        std::vector<RingValue> x;
        try {
            x = nc_solve_left(toeplitz(k, n), row);
        } catch (const MomentOutOfWindow &) {
            throw;
        } catch (const Error &) {
            throw SingularToeplitz(n, k);
        }
        for (int c = 0; c < n; ++c)
            p.set(c, x[c]);
    }
    return p_.emplace(key, std::move(p)).first->second;
}

const LaurentPoly &Biortho::Qstar(int k, int n)
{
    auto key = std::make_pair(k, n);
    if (auto it = q_.find(key); it != q_.end())
        return it->second;
    RingValue one = RingValue::one(m_.backend(), m_.dim());
    LaurentPoly q = LaurentPoly::monomial(-n, one);
    if (n > 0) {
        std::vector<RingValue> col;
        for (int r = 0; r < n; ++r)
            col.push_back(-m_[k + r - n]);
        std::vector<RingValue> x;
        try {
            x = nc_solve(toeplitz(k, n), col);
        } catch (const MomentOutOfWindow &) {
            throw;
        } catch (const Error &) {
            throw SingularToeplitz(n, k);
        }
        for (int c = 0; c < n; ++c)
            q.set(-c, x[c]);
    }
    return q_.emplace(key, std::move(q)).first->second;
}

LaurentPoly Biortho::P_by_quasidet(int k, int n) const
{
    RingValue zero = RingValue::zero(m_.backend(), m_.dim());
    RingValue one = RingValue::one(m_.backend(), m_.dim());
    LaurentPoly p;
    for (int e = 0; e <= n; ++e) {
        QMatrix a(n + 1, n + 1, zero);
        for (int r = 0; r <= n; ++r) {
            for (int c = 0; c < n; ++c)
                a(r, c) = m_[k + r - c];
            a(r, n) = r == e ? one : zero;
        }
        try {
            p.set(e, quasi_det(a, n, n));
        } catch (const Error &) {
            throw SingularToeplitz(n, k);
        }
    }
    return p;
}

LaurentPoly Biortho::Qstar_by_quasidet(int k, int n) const
{
    RingValue zero = RingValue::zero(m_.backend(), m_.dim());
    RingValue one = RingValue::one(m_.backend(), m_.dim());
    LaurentPoly q;
    for (int e = 0; e <= n; ++e) {
        QMatrix a(n + 1, n + 1, zero);
        for (int c = 0; c <= n; ++c) {
            for (int r = 0; r < n; ++r)
                a(r, c) = m_[k + r - c];
            a(n, c) = c == e ? one : zero;
        }
        try {
            q.set(-e, quasi_det(a, n, n));
        } catch (const Error &) {
            throw SingularToeplitz(n, k);
        }
    }
    return q;
}

const RingValue &Biortho::H(int k, int n)
{
    auto key = std::make_pair(k, n);
    if (auto it = h_.find(key); it != h_.end())
        return it->second;
    return h_.emplace(key, qd(k, n, n, n)).first->second;
}

const RingValue &Biortho::corner(int k, int n)
{
    auto key = std::make_pair(k, n);
    if (auto it = c_.find(key); it != c_.end())
        return it->second;
    return c_.emplace(key, qd(k, n, 0, n)).first->second;
}

RingValue Biortho::phi(int k, int n)
{
    auto inv = corner(k, n).try_inv();
    if (!inv)
        throw SingularToeplitz(n, k);
    return *inv * corner(k - 1, n);
}

RingValue Biortho::psi(int k, int n)
{
    auto inv = H(k, n).try_inv();
    if (!inv)
        throw SingularToeplitz(n, k);
    return *inv * H(k - 1, n);
}

RingValue Biortho::xi(int k, int n)
{
    return psi(k, n) - phi(k - 1, n);
}

RingValue Biortho::zeta(int k, int n)
{
    RingValue prev = n > 0 ? xi(k, n - 1) : RingValue::zero(m_.backend(), m_.dim());
    return (psi(k, n) - prev) * xi(k, n);
}

BiorthoSystem build_family(const MomentWindow &m, int k, int n_max)
{
    Biortho b(m);
    BiorthoSystem s;
    s.k = k;
    for (int n = 0; n <= n_max; ++n) {
        s.P.push_back(b.P(k, n));
        s.Qstar.push_back(b.Qstar(k, n));
        s.H.push_back(b.H(k, n));
        s.phi.push_back(b.phi(k, n));
        s.psi.push_back(b.psi(k, n));
        s.xi.push_back(b.xi(k, n));
    }
    return s;
}

QMatrix orthogonality_defect(Biortho &b, int k, int n_max)
{
    const MomentWindow &m = b.moments();
    QMatrix t(n_max + 1, n_max + 1, RingValue::zero(m.backend(), m.dim()));
    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; j <= n_max; ++j) {
            RingValue v = pair_starred(b.P(k, i), b.Qstar(k, j), k, m);
            t(i, j) = i == j ? v - b.H(k, i) : v;
        }
    return t;
}

LaurentPoly christoffel_residual(Biortho &b, int k, int n)
{
    return b.Qstar(k, n + 1) - b.Qstar(k, n).shift(-1) + b.Qstar(k + 1, n) * b.phi(k, n);
}

LaurentPoly geronimus_residual(Biortho &b, int k, int n)
{
    return b.Qstar(k - 1, n).shift(-1) - b.Qstar(k, n + 1) - b.Qstar(k, n) * b.psi(k, n);
}

LaurentPoly recurrence_residual(Biortho &b, int k, int n)
{
    LaurentPoly r = (b.Qstar(k, n + 1) + b.Qstar(k, n) * b.psi(k, n)).shift(1) - b.Qstar(k, n);
    if (n > 0)
        r = r - b.Qstar(k, n - 1) * b.xi(k, n - 1);
    return r;
}

std::pair<RingValue, RingValue> discrete_toda_residual(Biortho &b, int k, int i)
{
    RingValue first = (b.psi(k + 1, i) - b.phi(k, i)) * b.psi(k, i + 1) - b.psi(k + 1, i) * b.xi(k, i);
    RingValue second = b.psi(k, i) - b.phi(k, i);
    if (i > 0)
        second -= b.xi(k, i - 1);
    return {first, second};
}

std::pair<RingValue, RingValue> leapfrog_correspondence(Biortho &b, int k, int i)
{
    auto a = [&](int j) { return b.psi(k, j); };
    auto bb = [&](int j) { return b.phi(k - 1, j) - b.psi(k, j); };
    RingValue ap = b.psi(k - 1, i);
    RingValue bp = b.phi(k - 2, i) - b.psi(k - 1, i);
    auto inv = [&](const RingValue &x, int j) {
        auto r = x.try_inv();
        if (!r)
            throw SingularToeplitz(j, k);
        return *r;
    };
    RingValue la = ap - inv(a(i - 1) + bb(i - 1), i - 1) * a(i - 1) * (a(i) + bb(i));
    RingValue lb = bp - inv(a(i) + bb(i), i) * bb(i) * (a(i + 1) + bb(i + 1));
    return {la, lb};
}

FlowModel rotation_flow_model(Sampler &s, int d, int blocks)
{
    const double pi = std::acos(-1.0);
    int n = 2 * blocks;
    FlowModel f;
    f.V = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < blocks; ++j) {
        double th = (j + 0.25 + 0.5 * s.uniform01()) * pi / blocks;
        f.V(2 * j, 2 * j) = std::cos(th);
        f.V(2 * j, 2 * j + 1) = -std::sin(th);
        f.V(2 * j + 1, 2 * j) = std::sin(th);
        f.V(2 * j + 1, 2 * j + 1) = std::cos(th);
    }
    std::mt19937_64 eng(s.next());
    std::normal_distribution<double> nd;
    f.U.resize(d, n);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < n; ++c)
            f.U(r, c) = nd(eng);
    f.W = f.U.transpose();
    return f;
}

double flow_family_bound(const FlowModel &f, double t, Flow flow, int n_max)
{
    MomentWindow m = flow_moments(f, t, flow, -2 * n_max - 4, 2 * n_max + 4);
    Biortho b(m);
    double worst = 0;
    for (int n = 0; n <= n_max + 1; ++n)
        worst = std::max({worst, b.psi(0, n).norm(), b.xi(0, n).norm()});
    return worst;
}

FlowModel admissible_flow_model(Sampler &s, int d, int blocks, double t, int n_max, double bound)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        FlowModel f = rotation_flow_model(s, d, blocks);
        try {
            if (flow_family_bound(f, t, Flow::Negative, n_max) <= bound &&
                flow_family_bound(f, t, Flow::Positive, n_max) <= bound)
                return f;
        } catch (const SingularToeplitz &) {
        }
    }
    throw Error("no admissible flow model in 100 draws");
}

MomentWindow flow_moments(const FlowModel &f, double t, Flow flow, int kmin, int kmax)
{
    Eigen::MatrixXd vinv = f.V.inverse();
    Eigen::MatrixXd e = flow == Flow::Negative ? Eigen::MatrixXd(t * vinv).exp() : Eigen::MatrixXd(t * f.V).exp();
    std::vector<RingValue> m;
    for (int k = kmin; k <= kmax; ++k) {
        Eigen::MatrixXd p = Eigen::MatrixXd::Identity(f.V.rows(), f.V.cols());
        for (int j = 0; j < std::abs(k); ++j)
            p = p * (k < 0 ? vinv : f.V);
        m.emplace_back(Eigen::MatrixXd(f.U * p * e * f.W));
    }
    return MomentWindow(kmin, std::move(m));
}

double moment_derivative_residual(const FlowModel &f, double t, double h, Flow flow)
{
    MomentWindow a = flow_moments(f, t - h, flow, -3, 3);
    MomentWindow b = flow_moments(f, t + h, flow, -3, 3);
    MomentWindow c = flow_moments(f, t, flow, -3, 3);
    int s = flow == Flow::Negative ? -1 : 1;
    double worst = 0;
    for (int k = -2; k <= 2; ++k) {
        Eigen::MatrixXd r = (b[k].flt() - a[k].flt()) / (2 * h) - c[k + s].flt();
        worst = std::max(worst, r.norm());
    }
    return worst;
}

namespace {

struct Snapshots {
    MomentWindow lo, mid, hi;
    Biortho blo, bmid, bhi;
    double h;

    Snapshots(const FlowModel &f, double t, double hh, Flow flow, int n_max)
        : lo(flow_moments(f, t - hh, flow, -2 * n_max - 4, 2 * n_max + 4)),
          mid(flow_moments(f, t, flow, -2 * n_max - 4, 2 * n_max + 4)),
          hi(flow_moments(f, t + hh, flow, -2 * n_max - 4, 2 * n_max + 4)),
          blo(lo), bmid(mid), bhi(hi), h(hh)
    {
    }

    LaurentPoly dQ(int n) { return (bhi.Qstar(0, n) - blo.Qstar(0, n)) * RingValue(Eigen::MatrixXd(Eigen::MatrixXd::Identity(mid.dim(), mid.dim()) / (2 * h))); }
    RingValue dxi(int n) { return RingValue(Eigen::MatrixXd((bhi.xi(0, n).flt() - blo.xi(0, n).flt()) / (2 * h))); }
    RingValue dpsi(int n) { return RingValue(Eigen::MatrixXd((bhi.psi(0, n).flt() - blo.psi(0, n).flt()) / (2 * h))); }
};

void accumulate(FlowResidual &r, const std::string &key, double v)
{
    r[key] += v * v;
}

void finish(FlowResidual &r)
{
    for (auto &[k, v] : r)
        v = std::sqrt(v);
}

}

FlowResidual negative_flow_residual(const FlowModel &f, double t, double h, int n_max)
{
    Snapshots s(f, t, h, Flow::Negative, n_max);
    Biortho &b = s.bmid;
    FlowResidual r;
    for (int n = 1; n <= n_max; ++n) {
        LaurentPoly tw2 = s.dQ(n) - (b.Qstar(0, n - 1).shift(-1) - b.Qstar(0, n)) * b.xi(0, n - 1);
        accumulate(r, "qstar", tw2.norm());
        RingValue x = s.dxi(n) + (b.psi(0, n) - b.xi(0, n - 1)) * b.xi(0, n) + b.xi(0, n) * (b.xi(0, n + 1) - b.psi(0, n + 1));
        accumulate(r, "xi", x.norm());
        RingValue p = s.dpsi(n) - (b.xi(0, n - 1) * b.psi(0, n) - b.psi(0, n) * b.xi(0, n));
        accumulate(r, "psi", p.norm());
        LaurentPoly tw = s.dQ(n + 1) + s.dQ(n) * b.xi(0, n) - b.Qstar(0, n) * b.zeta(0, n);
        accumulate(r, "tw", tw.norm());
    }
    finish(r);
    return r;
}

FlowResidual positive_flow_residual(const FlowModel &f, double t, double h, int n_max)
{
    Snapshots s(f, t, h, Flow::Positive, n_max);
    Biortho &b = s.bmid;
    FlowResidual r;
    for (int n = 1; n <= n_max; ++n) {
        RingValue eta = -(b.xi(0, n - 1) * b.psi(0, n).inv());
        LaurentPoly te = s.dQ(n) - b.Qstar(0, n - 1) * eta;
        accumulate(r, "qstar", te.norm());
        RingValue x = s.dxi(n) - (b.xi(0, n) * b.psi(0, n + 1).inv() - b.psi(0, n).inv() * b.xi(0, n));
        accumulate(r, "xi", x.norm());
        RingValue p = s.dpsi(n) - (b.xi(0, n) * b.psi(0, n + 1).inv() - b.psi(0, n - 1).inv() * b.xi(0, n - 1));
        accumulate(r, "psi", p.norm());
    }
    finish(r);
    return r;
}

FlowOrder flow_convergence(const FlowModel &f, Flow flow, double t, double h1, double h2, int n_max)
{
    FlowOrder o;
    auto run = flow == Flow::Negative ? negative_flow_residual : positive_flow_residual;
    o.coarse = run(f, t, h1, n_max);
    o.fine = run(f, t, h2, n_max);
    for (auto &[k, v] : o.coarse)
        o.slope[k] = std::log10(v / o.fine.at(k)) / std::log10(h1 / h2);
    return o;
}

}
