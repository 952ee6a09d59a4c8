#include "nclf/leapfrog.hpp"

#include <algorithm>

namespace nclf {

Seq Seq::periodic(std::vector<RingValue> v)
{
    Seq s;
    s.mode_ = Mode::Periodic;
    s.v_ = std::move(v);
    return s;
}

Seq Seq::window(int lo, std::vector<RingValue> v)
{
    Seq s;
    s.mode_ = Mode::Windowed;
    s.lo_ = lo;
    s.v_ = std::move(v);
    return s;
}

const RingValue &Seq::operator[](int i) const
{
    return const_cast<Seq &>(*this)[i];
}

RingValue &Seq::operator[](int i)
{
    int n = size();
    if (mode_ == Mode::Periodic)
        return v_[((i % n) + n) % n];
    if (!has(i))
        throw std::out_of_range("sequence index " + std::to_string(i) + " outside window");
    return v_[i - lo_];
}

std::vector<int> Seq::indices() const
{
    std::vector<int> r;
    for (int i = lo(); i < hi(); i++)
        r.push_back(i);
    return r;
}

double Seq::max_norm() const
{
    double m = 0;
    for (auto &x : v_)
        m = std::max(m, x.norm());
    return m;
}

std::vector<int> active(const Seq &s, int l, int r)
{
    std::vector<int> out;
    if (s.mode() == Mode::Periodic) {
        for (int i = 0; i < s.size(); i++)
            out.push_back(i);
    } else {
        for (int i = s.lo() + l; i < s.hi() - r; i++)
            out.push_back(i);
    }
    return out;
}

Seq make_like(const Seq &s, int l, int r, const std::function<RingValue(int)> &f)
{
    std::vector<RingValue> v;
    auto idx = active(s, l, r);
    for (int i : idx)
        v.push_back(f(i));
    if (s.mode() == Mode::Periodic)
        return Seq::periodic(std::move(v));
    if (idx.empty())
        throw Error("window exhausted");
    return Seq::window(idx.front(), std::move(v));
}

static RingValue inv_at(const RingValue &x, int i, const char *what)
{
    if (auto r = x.try_inv())
        return std::move(*r);
    throw DegenerateConfiguration(i, i, what);
}

static RingValue one_like(const RingValue &x)
{
    return RingValue::one(x.backend(), x.dim());
}

LeapfrogState random_state(Sampler &s, Backend b, int d, int n, Mode mode, int w)
{
    int len = mode == Mode::Periodic ? n : n + 2 * w;
    std::vector<RingValue> pts;
    while (int(pts.size()) < 2 * len) {
        RingValue x = random_generic(s, d, b);
        bool ok = true;
        for (auto &y : pts)
            if (!(x - y).is_invertible()) {
                ok = false;
                break;
            }
        if (ok)
            pts.push_back(x);
    }
    std::vector<RingValue> vm(pts.begin(), pts.begin() + len), v(pts.begin() + len, pts.end());
    if (mode == Mode::Periodic)
        return {Seq::periodic(std::move(vm)), Seq::periodic(std::move(v))};
    return {Seq::window(-w, std::move(vm)), Seq::window(-w, std::move(v))};
}

static RingValue p_at(const LeapfrogState &s, int i)
{
    const Seq &v = s.v;
    RingValue p = inv_at(v[i - 1] - v[i], i, "v_{i-1} = v_i") * (v[i + 1] - v[i]);
    if (!p.is_invertible())
        throw DegenerateConfiguration(i, i, "p_i not invertible");
    return p;
}

static RingValue q_at(const LeapfrogState &s, int i)
{
    const Seq &v = s.v, &vm = s.v_minus;
    RingValue q = inv_at(v[i] - vm[i], i, "v_i = v_i^-") * (v[i + 1] - vm[i]);
    if (!q.is_invertible())
        throw DegenerateConfiguration(i, i, "v_{i+1} = v_i^-");
    return q;
}

PQCoords pq_from_vertices(const LeapfrogState &s)
{
    return {make_like(s.v, 1, 1, [&](int i) { return p_at(s, i); }),
            make_like(s.v, 1, 1, [&](int i) { return q_at(s, i); })};
}

static RingValue vplus_at(const LeapfrogState &s, const PQCoords &pq, int i)
{
    const Seq &v = s.v;
    const RingValue &p = pq.p[i], &q = pq.q[i];
    return (v[i - 1] * p + v[i] * q) * inv_at(p + q, i, "p_i + q_i singular");
}

LeapfrogState step_vertices(const LeapfrogState &s)
{
    return step_vertices(s, pq_from_vertices(s));
}

LeapfrogState step_vertices(const LeapfrogState &s, const PQCoords &pq)
{
    return {make_like(s.v, 1, 1, [&](int i) { return s.v[i]; }),
            make_like(s.v, 1, 1, [&](int i) { return vplus_at(s, pq, i); })};
}

QMatrix g_matrix(const LeapfrogState &s, int i)
{
    const Seq &v = s.v;
    RingValue r = inv_at(v[i - 1] - v[i], i, "v_{i-1} = v_i") + inv_at(v[i + 1] - v[i], i, "v_{i+1} = v_i");
    RingValue one = one_like(r), two = one + one;
    const RingValue &x = v[i];
    return QMatrix::from_rows({{x * r + one, -((x * r + two) * x)}, {r, -(r * x + one)}});
}

static PointP1 diff(const PointP1 &a, const PointP1 &b)
{
    return {a.x1 - b.x1, a.x2 - b.x2};
}

std::vector<PointP1> g_contract_residuals(const LeapfrogState &s, int i)
{
    QMatrix g = g_matrix(s, i);
    const Seq &v = s.v;
    RingValue p = p_at(s, i), q = q_at(s, i);
    RingValue one = one_like(p);
    RingValue eta_inv = (one - q) * inv_at(p + q, i, "p_i + q_i singular");
    RingValue vplus = (v[i - 1] * p + v[i] * q) * (p + q).inv();
    auto lift = [](const RingValue &x) { return PointP1::affine(x); };
    return {diff(g * lift(v[i - 1]), lift(v[i + 1]) * p.inv()),
            diff(g * lift(v[i]), lift(v[i]) * (-one)),
            diff(g * lift(v[i + 1]), lift(v[i - 1]) * p),
            diff((g * lift(s.v_minus[i])) * eta_inv, lift(vplus))};
}

static RingValue h_at(const PQCoords &pq, int i)
{
    const RingValue &p0 = pq.p[i - 1], &q0 = pq.q[i - 1], &p1 = pq.p[i], &q1 = pq.q[i];
    return inv_at(p0 + q0, i - 1, "p_i + q_i singular") - q1 * inv_at(p1 + q1, i, "p_i + q_i singular");
}

PQCoords step_pq(const PQCoords &pq)
{
    auto hinv = [&](int i) {
        RingValue h = h_at(pq, i);
        if (!h.is_invertible())
            throw SingularH(i);
        return h.inv();
    };
    Seq q = make_like(pq.p, 1, 1, [&](int i) {
        const RingValue &pn = pq.p[i + 1], &qn = pq.q[i + 1];
        return (pq.p[i] + pq.q[i]) * qn * inv_at(pn + qn, i + 1, "p_i + q_i singular");
    });
    Seq p = make_like(pq.p, 1, 1, [&](int i) { return hinv(i) * pq.p[i] * h_at(pq, i + 1); });
    return {p, q};
}

std::vector<std::pair<int, LaxResidual>> lax_residual(const PQCoords &pq, const LeapfrogState &s, const CentralScalar &z)
{
    LeapfrogState next = step_vertices(s);
    std::vector<std::pair<int, LaxResidual>> out;
    const Seq &v = s.v;
    for (int i : active(pq.p, 0, 0)) {
        const RingValue &p = pq.p[i], &q = pq.q[i];
        RingValue one = one_like(p);
        RingValue m = v[i - 1] * p + v[i] * q;
        RingValue spatial = v[i + 1] + v[i] * (p + q - one) - z * m;
        RingValue temporal = next.v[i] - m * inv_at(p + q, i, "p_i + q_i singular");
        out.push_back({i, {spatial, temporal}});
    }
    return out;
}

RingValue lax_coefficient(const PQCoords &pq, const LeapfrogState &s, int i)
{
    return s.v[i - 1] * pq.p[i] + s.v[i] * pq.q[i];
}

static void need_window(const LeapfrogState &s)
{
    if (s.mode() != Mode::Windowed)
        throw Error("(a,b) coordinates need windowed mode");
}

// x = b1 alpha + b0 beta with alpha + beta = 1
static std::pair<RingValue, RingValue> coeffs(const RingValue &x, const RingValue &b1, const RingValue &b0, int i)
{
    RingValue beta = inv_at(b0 - b1, i, "v_i^- = v_{i+1}^-") * (x - b1);
    return {one_like(x) - beta, beta};
}

Scalings initial_scalings(const LeapfrogState &s)
{
    need_window(s);
    const Seq &v = s.v, &vm = s.v_minus;
    int lo = v.lo(), hi = v.hi();
    RingValue one = one_like(v[lo]);
    std::vector<RingValue> Vm(hi - lo, one), V(hi - lo, one);
    for (int i = lo; i + 1 < hi; i++) {
        auto [al, be] = coeffs(v[i], vm[i + 1], vm[i], i);
        Vm[i + 1 - lo] = V[i - lo] * inv_at(al, i, "scaling singular");
        auto [al2, be2] = coeffs(v[i + 1], vm[i + 1], vm[i], i);
        V[i + 1 - lo] = Vm[i + 1 - lo] * al2;
    }
    return {Seq::window(lo, std::move(Vm)), Seq::window(lo, std::move(V))};
}

Scalings step_scalings(const LeapfrogState &s, const Scalings &scal)
{
    return step_scalings(s, scal, step_vertices(s));
}

Scalings step_scalings(const LeapfrogState &s, const Scalings &scal, const LeapfrogState &next)
{
    need_window(s);
    const Seq &nv = next.v, &nvm = next.v_minus;
    int lo = nv.lo(), hi = nv.hi();
    Seq Vm = make_like(s.v, 1, 1, [&](int i) { return scal.v[i]; });
    std::vector<RingValue> V;
    for (int i = lo; i < hi; i++) {
        if (i + 1 < hi) {
            auto [al, be] = coeffs(nv[i], nvm[i + 1], nvm[i], i);
            V.push_back(Vm[i + 1] * al);
        } else {
            auto [al, be] = coeffs(nv[i], nvm[i], nvm[i - 1], i);
            V.push_back(Vm[i] * al);
        }
    }
    return {Vm, Seq::window(lo, std::move(V))};
}

ABCoords ab_with_scalings(const LeapfrogState &s, const Scalings &scal)
{
    need_window(s);
    const Seq &v = s.v, &vm = s.v_minus;
    Seq a = make_like(v, 0, 1, [&](int i) {
        auto [al, be] = coeffs(v[i], vm[i + 1], vm[i], i);
        return scal.v_minus[i] * be * inv_at(scal.v[i], i, "scaling singular");
    });
    Seq b = make_like(v, 0, 1, [&](int i) {
        auto [al, be] = coeffs(v[i + 1], vm[i + 1], vm[i], i);
        return -(scal.v_minus[i] * be * inv_at(scal.v[i + 1], i + 1, "scaling singular"));
    });
    return {a, b};
}

ABResult ab_from_vertices(const LeapfrogState &s)
{
    return ab_from_vertices(s, initial_scalings(s));
}

ABResult ab_from_vertices(const LeapfrogState &s, const Scalings &scal)
{
    return {ab_with_scalings(s, scal), scal};
}

std::vector<PointP1> u_lifts(const Seq &v, const Seq &scal)
{
    std::vector<PointP1> out;
    for (int i : v.indices())
        out.push_back(PointP1::affine(v[i]) * inv_at(scal[i], i, "scaling singular"));
    return out;
}

namespace {

struct Lifts {
    std::vector<PointP1> um, u;
    int lo;
    const PointP1 &minus(int i) const { return um.at(i - lo); }
    const PointP1 &plain(int i) const { return u.at(i - lo); }
};

Lifts lifts(const LeapfrogState &s, const Scalings &scal)
{
    need_window(s);
    return {u_lifts(s.v_minus, scal.v_minus), u_lifts(s.v, scal.v), s.v.lo()};
}

}

ABCoords ab_cross_ratio(const LeapfrogState &s, const Scalings &scal)
{
    Lifts L = lifts(s, scal);
    Seq a = make_like(s.v, 1, 1, [&](int i) { return cross_ratio(L.minus(i - 1), L.minus(i + 1), L.minus(i), L.plain(i)); });
    Seq b = make_like(s.v, 1, 1, [&](int i) {
        return -(cross_ratio(L.plain(i), L.plain(i + 1), L.minus(i), L.minus(i + 1)) * a[i]);
    });
    return {a, b};
}

Seq c_coords(const LeapfrogState &s, const Scalings &scal)
{
    Lifts L = lifts(s, scal);
    return make_like(s.v, 0, 1, [&](int i) {
        const PointP1 &um = L.minus(i);
        return inv_at(um.x1, i, "u_{i,1}^- singular") * (L.plain(i + 1).x1 - L.plain(i).x1);
    });
}

std::vector<std::pair<int, std::pair<RingValue, RingValue>>> con_det_residuals(const LeapfrogState &s, const Scalings &scal)
{
    Lifts L = lifts(s, scal);
    auto boxed = [](const PointP1 &p, const PointP1 &q, int i) {
        return q.x2 - p.x2 * inv_at(p.x1, i, "u_{i,1}^- singular") * q.x1;
    };
    std::vector<std::pair<int, std::pair<RingValue, RingValue>>> out;
    for (int i : active(s.v, 0, 1)) {
        RingValue ref = boxed(L.minus(i), L.minus(i + 1), i);
        out.push_back({i, {ref - boxed(L.minus(i), L.plain(i), i), ref - boxed(L.minus(i), L.plain(i + 1), i)}});
    }
    return out;
}

ABCoords step_ab(const ABCoords &ab)
{
    auto sum_inv = [&](int i) { return inv_at(ab.a[i] + ab.b[i], i, "a_i + b_i singular"); };
    Seq a = make_like(ab.a, 1, 1, [&](int i) { return sum_inv(i - 1) * ab.a[i - 1] * (ab.a[i] + ab.b[i]); });
    Seq b = make_like(ab.a, 1, 1, [&](int i) { return sum_inv(i) * ab.b[i] * (ab.a[i + 1] + ab.b[i + 1]); });
    return {a, b};
}

Seq y_from_ab(const ABCoords &ab)
{
    return make_like(ab.a, 0, 0, [&](int i) { return inv_at(ab.a[i], i, "a_i singular") * ab.b[i]; });
}

Seq y_cross_ratio(const LeapfrogState &s, const Scalings &scal, const ABCoords &ab)
{
    Lifts L = lifts(s, scal);
    std::vector<RingValue> out;
    std::vector<int> idx;
    for (int i : active(s.v, 0, 1))
        if (ab.a.has(i)) {
            idx.push_back(i);
            out.push_back(-cross_ratio(L.plain(i), L.plain(i + 1), L.minus(i) * ab.a[i], L.minus(i + 1)));
        }
    if (idx.empty())
        throw Error("window exhausted");
    return Seq::window(idx.front(), std::move(out));
}

namespace {

Seq collect(const Seq &base, const std::function<bool(int)> &ok, const std::function<RingValue(int)> &f)
{
    std::vector<RingValue> out;
    std::vector<int> idx;
    for (int i : active(base, 0, 0))
        if (ok(i)) {
            idx.push_back(i);
            out.push_back(f(i));
        }
    if (base.mode() == Mode::Periodic)
        return Seq::periodic(std::move(out));
    if (idx.empty())
        throw Error("window exhausted");
    return Seq::window(idx.front(), std::move(out));
}

struct YLayers {
    Seq y0, y1, y2;
    const ABCoords &mid;
};

YLayers ylayers(const std::vector<ABCoords> &layers)
{
    if (layers.size() != 3)
        throw Error("need three time layers");
    return {y_from_ab(layers[0]), y_from_ab(layers[1]), y_from_ab(layers[2]), layers[1]};
}

}

Seq y_system_residual(const std::vector<ABCoords> &layers)
{
    YLayers Y = ylayers(layers);
    auto ok = [&](int i) { return Y.y1.has(i - 1) && Y.y1.has(i + 1) && Y.y0.has(i) && Y.y2.has(i); };
    return collect(Y.y1, ok, [&](int i) {
        const RingValue &b = Y.mid.b[i];
        RingValue one = one_like(b);
        RingValue yi_inv = inv_at(Y.y1[i], i, "y singular");
        RingValue lhs = inv_at(b, i, "b_i singular") * (one + Y.y1[i - 1]) * inv_at(one + yi_inv, i, "1 + y^-1 singular") *
                        inv_at(Y.y0[i], i, "y singular") * b;
        RingValue rhs = (one + yi_inv) * Y.y2[i] * inv_at(one + Y.y1[i + 1], i + 1, "1 + y singular");
        return lhs - rhs;
    });
}

Seq y_commutative_residual(const std::vector<ABCoords> &layers)
{
    YLayers Y = ylayers(layers);
    auto ok = [&](int i) { return Y.y1.has(i - 1) && Y.y1.has(i + 1) && Y.y0.has(i) && Y.y2.has(i); };
    return collect(Y.y1, ok, [&](int i) {
        RingValue one = one_like(Y.y1[i]);
        RingValue den = one + inv_at(Y.y1[i], i, "y singular");
        return Y.y2[i] * Y.y0[i] - (one + Y.y1[i + 1]) * (one + Y.y1[i - 1]) * inv_at(den * den, i, "1 + y^-1 singular");
    });
}

std::pair<Seq, Seq> aij_residuals(const std::vector<ABCoords> &layers)
{
    YLayers Y = ylayers(layers);
    const Seq &a1 = layers[1].a, &a2 = layers[2].a;
    Seq r1 = collect(a1, [&](int i) { return a1.has(i + 1) && Y.y0.has(i); },
                     [&](int i) { return a1[i + 1] - inv_at(Y.y0[i], i, "y singular") * a1[i] * Y.y1[i]; });
    Seq r2 = collect(a1, [&](int i) { return a2.has(i) && a1.has(i - 1); }, [&](int i) {
        RingValue one = one_like(a1[i]);
        return a2[i] - inv_at(one + Y.y1[i - 1], i - 1, "1 + y singular") * a1[i] * (one + Y.y1[i]);
    });
    return {r1, r2};
}

RingValue eq_k_residual(const LeapfrogState &s, const LeapfrogState &next, int i)
{
    auto A = [](const RingValue &x) { return PointP1::affine(x); };
    const Seq &v = s.v;
    return cross_ratio(A(v[i - 1]), A(v[i + 1]), A(v[i]), A(s.v_minus[i])) -
           cross_ratio(A(v[i + 1]), A(v[i - 1]), A(v[i]), A(next.v[i]));
}

}
