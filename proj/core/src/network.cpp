#include "nclf/network.hpp"

#include "nclf/errors.hpp"

namespace nclf {

NetworkWeights random_weights(Sampler &s, Backend b, int d, int n)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        NetworkWeights w;
        for (int i = 0; i < n; ++i) {
            w.a.push_back(random_generic(s, d, b));
            w.b.push_back(random_generic(s, d, b));
            w.c.push_back(random_generic(s, d, b));
            w.d.push_back(random_generic(s, d, b));
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            ok = square_f(w, i).is_invertible();
        if (ok)
            return w;
    }
    throw NotInvertible();
}

RingValue square_f(const NetworkWeights &w, int i)
{
    return w.b[i] + w.a[i] * w.d[i] * w.c[i];
}

NetworkWeights square_move(const NetworkWeights &w, int i)
{
    auto finv = square_f(w, i).try_inv();
    if (!finv)
        throw SingularF(i);
    NetworkWeights r = w;
    RingValue dc = w.d[i] * w.c[i];
    r.a[i] = dc * *finv;
    r.b[i] = square_f(w, i);
    r.c[i] = *finv * w.a[i] * w.d[i];
    r.d[i] = dc * *finv * w.b[i] * w.c[i].inv();
    return r;
}

NetworkWeights square_move_all(const NetworkWeights &w)
{
    NetworkWeights r = w;
    for (int i = 0; i < w.size(); ++i)
        r = square_move(r, i);
    return r;
}

QMatrix square_boundary(const RingValue &a, const RingValue &b, const RingValue &c, const RingValue &d)
{
    return QMatrix::from_rows({{b + a * d * c, a * d}, {d * c, d}});
}

QMatrix moved_square_boundary(const RingValue &a, const RingValue &b, const RingValue &c, const RingValue &d)
{
    return QMatrix::from_rows({{b, b * c}, {a * b, d + a * b * c}});
}

static int wrap(int i, int n, int &turns)
{
    turns = 0;
    while (i < 0) {
        i += n;
        --turns;
    }
    while (i >= n) {
        i -= n;
        ++turns;
    }
    return i;
}

static RingValue twisted(const std::vector<RingValue> &v, const RingValue &z, int i)
{
    int turns;
    RingValue r = v[wrap(i, int(v.size()), turns)];
    if (turns == 0)
        return r;
    RingValue zi = z.inv();
    for (; turns > 0; --turns)
        r = z * r * zi;
    for (; turns < 0; ++turns)
        r = zi * r * z;
    return r;
}

RingValue XYWeights::x(int i) const
{
    return twisted(X, Z, i);
}

RingValue XYWeights::y(int i) const
{
    return twisted(Y, Z, i);
}

XYWeights xy_weights(const NetworkWeights &w)
{
    int n = w.size();
    Backend b = w.a[0].backend();
    int dim = w.a[0].dim();
    std::vector<RingValue> z(n);
    RingValue acc = RingValue::one(b, dim);
    for (int i = 0; i < n; ++i) {
        z[i] = acc * w.d[i];
        acc = z[i] * w.c[i];
    }
    XYWeights r;
    r.Z = acc;
    RingValue cn = w.c[n - 1].inv();
    r.X.push_back(cn * w.a[0]);
    r.Y.push_back(cn * w.b[0] * w.c[0].inv() * w.d[0].inv());
    for (int i = 1; i < n; ++i) {
        RingValue l = z[i - 1], li = z[i - 1].inv(), cp = w.c[i - 1].inv();
        r.X.push_back(l * w.a[i] * cp * li);
        r.Y.push_back(l * w.b[i] * w.c[i].inv() * w.d[i].inv() * cp * li);
    }
    return r;
}

XYWeights moved_xy_weights(const NetworkWeights &m)
{
    int n = m.size();
    Backend b = m.a[0].backend();
    int dim = m.a[0].dim();
    std::vector<RingValue> xi{RingValue::one(b, dim)};
    for (int i = 0; i < n; ++i)
        xi.push_back(xi.back() * m.a[i] * m.b[i]);
    XYWeights r;
    for (int i = 0; i < n; ++i) {
        RingValue l = xi[i], li = xi[i].inv();
        RingValue ai = m.a[i].inv();
        r.X.push_back(l * m.c[(i + n - 1) % n] * ai * li);
        r.Y.push_back(l * m.d[i] * m.a[(i + 1) % n].inv() * m.b[i].inv() * ai * li);
    }
    r.Z = xi[n];
    return r;
}

XYWeights step_xy(const XYWeights &xy)
{
    int n = xy.size();
    auto s = [&](int i) { return xy.x(i) + xy.y(i); };
    auto sinv = [&](int i) {
        auto r = s(i).try_inv();
        if (!r)
            throw DegenerateConfiguration(i, i, "X+Y singular");
        return *r;
    };
    XYWeights r;
    r.Z = xy.Z;
    for (int i = 0; i < n; ++i) {
        r.X.push_back(sinv(i - 1) * xy.x(i - 1) * s(i));
        r.Y.push_back(sinv(i) * xy.Y[i] * s(i + 1));
    }
    return r;
}

RingValue twist_residual(const NetworkWeights &w)
{
    int n = w.size();
    XYWeights xy = xy_weights(w);
    RingValue zn = xy.Z * w.c[n - 1].inv();
    return zn * w.a[0] * w.c[n - 1].inv() * zn.inv() - xy.x(n);
}

XYWeights xy_from_ab(const ABCoords &ab)
{
    XYWeights r;
    r.X = ab.a.values();
    r.Y = ab.b.values();
    r.Z = RingValue::one(r.X[0].backend(), r.X[0].dim());
    return r;
}

ABCoords ab_from_xy(const XYWeights &xy)
{
    return {Seq::periodic(xy.X), Seq::periodic(xy.Y)};
}

QMatrix elementary_boundary(const XYWeights &xy, int i, const CentralScalar &mu)
{
    Backend b = xy.Z.backend();
    int d = xy.Z.dim();
    RingValue m = mu.promote(b, d);
    return QMatrix::from_rows({{xy.X[i], m * (xy.X[i] + xy.Y[i])}, {m, m * m}});
}

QMatrix boundary_matrix(const XYWeights &xy, const CentralScalar &mu)
{
    QMatrix r = elementary_boundary(xy, 0, mu);
    for (int i = 1; i < xy.size(); ++i)
        r = r * elementary_boundary(xy, i, mu);
    return r;
}

QMatrix monodromy(const XYWeights &xy, const CentralScalar &mu)
{
    RingValue zero = RingValue::zero(xy.Z.backend(), xy.Z.dim());
    return boundary_matrix(xy, mu) * QMatrix::from_rows({{xy.Z, zero}, {zero, xy.Z}});
}

QMatrix lax_factorization_residual(const XYWeights &xy, int i, const CentralScalar &mu)
{
    if (mu.c == 0)
        throw Error("mu must be nonzero");
    Backend b = xy.Z.backend();
    int d = xy.Z.dim();
    mpq_class lam = mu.c * mu.c;
    RingValue one = RingValue::one(b, d), zero = RingValue::zero(b, d);
    RingValue L = RingValue::constant(lam, b, d);
    RingValue ai = RingValue::constant(1 / lam, b, d);
    QMatrix A = QMatrix::from_rows({{ai, ai * xy.x(i)}, {zero, RingValue::constant(1 / mu.c, b, d)}});
    QMatrix Lax = QMatrix::from_rows({{zero, L * xy.y(i)}, {one, L + xy.x(i + 1)}});
    RingValue m = mu.promote(b, d);
    QMatrix Anext_inv = QMatrix::from_rows({{L, -(m * xy.x(i + 1))}, {zero, m}});
    return elementary_boundary(xy, i, mu) - A * Lax * Anext_inv;
}

namespace {

// 2x2 matrix whose entries are polynomials in mu with ring coefficients
struct PolyMat {
    std::array<std::vector<RingValue>, 4> e;

    static void add(std::vector<RingValue> &p, size_t k, const RingValue &v)
    {
        if (p.size() <= k)
            p.resize(k + 1, RingValue::zero(v.backend(), v.dim()));
        p[k] += v;
    }

    PolyMat operator*(const PolyMat &o) const
    {
        PolyMat r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    const auto &p = e[2 * i + k], &q = o.e[2 * k + j];
                    for (size_t s = 0; s < p.size(); ++s) {
                        if (p[s].is_zero())
                            continue;
                        for (size_t t = 0; t < q.size(); ++t)
                            if (!q[t].is_zero())
                                add(r.e[2 * i + j], s + t, p[s] * q[t]);
                    }
                }
        return r;
    }
};

}

std::vector<std::vector<mpq_class>> spectral_invariants(const XYWeights &xy, int imax)
{
    Backend b = xy.Z.backend();
    int d = xy.Z.dim();
    RingValue one = RingValue::one(b, d), zero = RingValue::zero(b, d);
    PolyMat m;
    m.e = {std::vector<RingValue>{xy.Z}, {}, {}, std::vector<RingValue>{xy.Z}};
    PolyMat acc;
    acc.e = {std::vector<RingValue>{one}, {}, {}, std::vector<RingValue>{one}};
    for (int i = 0; i < xy.size(); ++i) {
        PolyMat e;
        e.e = {std::vector<RingValue>{xy.X[i]}, std::vector<RingValue>{zero, xy.X[i] + xy.Y[i]},
               std::vector<RingValue>{zero, one}, std::vector<RingValue>{zero, zero, one}};
        acc = acc * e;
    }
    acc = acc * m;
    std::vector<std::vector<mpq_class>> t;
    PolyMat p = acc;
    for (int i = 1; i <= imax; ++i) {
        if (i > 1)
            p = p * acc;
        size_t deg = std::max(p.e[0].size(), p.e[3].size());
        std::vector<mpq_class> row(deg, 0);
        for (int k : {0, 3})
            for (size_t j = 0; j < p.e[k].size(); ++j)
                row[j] += p.e[k][j].trace();
        t.push_back(std::move(row));
    }
    return t;
}

ConservationReport invariants_conservation(const XYWeights &xy, int steps, int imax, int every)
{
    ConservationReport r;
    r.initial = spectral_invariants(xy, imax);
    XYWeights cur = xy;
    for (int s = 1; s <= steps; ++s) {
        try {
            cur = step_xy(cur);
        } catch (const DegenerateConfiguration &e) {
            r.degenerate_step = s;
            r.degenerate_index = e.first;
            return r;
        }
        r.steps_done = s;
        if (s % every != 0 && s != steps)
            continue;
        auto t = spectral_invariants(cur, imax);
        for (size_t i = 0; i < t.size(); ++i) {
            size_t len = std::max(t[i].size(), r.initial[i].size());
            for (size_t j = 0; j < len; ++j) {
                mpq_class a = j < t[i].size() ? t[i][j] : 0, b = j < r.initial[i].size() ? r.initial[i][j] : 0;
                if (a != b)
                    ++r.changed;
            }
        }
    }
    return r;
}

}
