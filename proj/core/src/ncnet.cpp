#include "nclf/ncnet.hpp"

#include <algorithm>
#include <cmath>

#include "nclf/errors.hpp"

namespace nclf {

Word reduce(Word w)
{
    Word out;
    out.reserve(w.size());
    for (const Letter &l : w) {
        if (!out.empty() && out.back().sym == l.sym && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word inverse(const Word &w)
{
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back({it->sym, -it->exp});
    return out;
}

static Word cat(const Word &a, const Word &b)
{
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return reduce(std::move(w));
}

static Word cat(const Word &a, const Word &b, const Word &c)
{
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), c.begin(), c.end());
    return reduce(std::move(w));
}

NCExpr NCExpr::one()
{
    return word({});
}

NCExpr NCExpr::word(Word w, const mpq_class &c)
{
    NCExpr e;
    e.add(reduce(std::move(w)), c);
    return e;
}

NCExpr NCExpr::letter(int sym, int exp)
{
    return word({{sym, exp}});
}

void NCExpr::add(const Word &w, const mpq_class &c)
{
    if (c == 0)
        return;
    auto [it, fresh] = t_.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            t_.erase(it);
    }
}

NCExpr NCExpr::operator+(const NCExpr &o) const
{
    NCExpr r = *this;
    for (auto &[w, c] : o.t_)
        r.add(w, c);
    return r;
}

NCExpr NCExpr::operator-(const NCExpr &o) const
{
    NCExpr r = *this;
    for (auto &[w, c] : o.t_)
        r.add(w, -c);
    return r;
}

NCExpr NCExpr::operator*(const NCExpr &o) const
{
    NCExpr r;
    for (auto &[u, a] : t_)
        for (auto &[v, b] : o.t_)
            r.add(cat(u, v), a * b);
    return r;
}

NCExpr NCExpr::scaled(const mpq_class &c) const
{
    NCExpr r;
    for (auto &[w, a] : t_)
        r.add(w, a * c);
    return r;
}

void TensorExpr::add(const Word &u, const Word &v, const mpq_class &c)
{
    if (c == 0)
        return;
    auto [it, fresh] = t_.emplace(TensorKey{u, v}, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            t_.erase(it);
    }
}

TensorExpr TensorExpr::operator+(const TensorExpr &o) const
{
    TensorExpr r = *this;
    for (auto &[k, c] : o.t_)
        r.add(k.first, k.second, c);
    return r;
}

TensorExpr TensorExpr::operator-(const TensorExpr &o) const
{
    TensorExpr r = *this;
    for (auto &[k, c] : o.t_)
        r.add(k.first, k.second, -c);
    return r;
}

TensorExpr TensorExpr::scaled(const mpq_class &c) const
{
    TensorExpr r;
    for (auto &[k, a] : t_)
        r.add(k.first, k.second, a * c);
    return r;
}

TensorExpr TensorExpr::flip() const
{
    TensorExpr r;
    for (auto &[k, c] : t_)
        r.add(k.second, k.first, c);
    return r;
}

TensorExpr TensorExpr::outer(const Word &l, const Word &r) const
{
    TensorExpr o;
    for (auto &[k, c] : t_)
        o.add(cat(l, k.first), cat(k.second, r), c);
    return o;
}

TensorExpr TensorExpr::inner(const Word &l, const Word &r) const
{
    TensorExpr o;
    for (auto &[k, c] : t_)
        o.add(cat(k.first, r), cat(l, k.second), c);
    return o;
}

void TripleExpr::add(const TripleKey &k, const mpq_class &c)
{
    if (c == 0)
        return;
    auto [it, fresh] = t_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            t_.erase(it);
    }
}

TripleExpr TripleExpr::operator+(const TripleExpr &o) const
{
    TripleExpr r = *this;
    for (auto &[k, c] : o.t_)
        r.add(k, c);
    return r;
}

TripleExpr TripleExpr::cycled() const
{
    TripleExpr r;
    for (auto &[k, c] : t_)
        r.add({k[2], k[0], k[1]}, c);
    return r;
}

NCExpr multiply(const TensorExpr &t)
{
    NCExpr r;
    for (auto &[k, c] : t.terms())
        r.add(cat(k.first, k.second), c);
    return r;
}

static Word necklace(Word w)
{
    while (w.size() >= 2 && w.front().sym == w.back().sym && w.front().exp == -w.back().exp)
        w = Word(w.begin() + 1, w.end() - 1);
    Word best = w;
    for (size_t s = 1; s < w.size(); ++s) {
        std::rotate(w.begin(), w.begin() + 1, w.end());
        if (w < best)
            best = w;
    }
    return best;
}

NCExpr natural_form(const NCExpr &e)
{
    NCExpr r;
    for (auto &[w, c] : e.terms())
        r.add(necklace(w), c);
    return r;
}

NCExpr tensor_left(const NCExpr &x, const TensorExpr &t)
{
    NCExpr r;
    for (auto &[k, c] : t.terms())
        for (auto &[w, a] : x.terms())
            r.add(cat(w, k.first, k.second), a * c);
    return r;
}

NCContext::NCContext(int n) : n_(n)
{
    for (int i = 1; i <= n; ++i)
        for (char k : {'a', 'b', 'c', 'd'}) {
            names_.push_back(std::string(1, k) + std::to_string(i));
            def_.push_back(nullptr);
        }
    for (int i = 1; i <= n; ++i) {
        names_.push_back("F" + std::to_string(i));
        def_.push_back(std::make_unique<NCExpr>(g('b', i) + g('a', i) * g('d', i) * g('c', i)));
    }
    mpq_class h(1, 2);
    auto set = [&](int x, int y, const TensorExpr &t) {
        base_[{x, y}] = t;
        base_[{y, x}] = t.flip().scaled(-1);
    };
    for (int i = 1; i <= n; ++i) {
        Letter a{gen('a', i), 1}, b{gen('b', i), 1}, c{gen('c', i), 1}, d{gen('d', i), 1};
        TensorExpr t;
        t.add({b}, {a}, h);
        set(b.sym, a.sym, t);
        t = {};
        t.add({c}, {b}, h);
        set(b.sym, c.sym, t);
        t = {};
        t.add({}, {a, d}, h);
        set(a.sym, d.sym, t);
        t = {};
        t.add({d, c}, {}, h);
        set(c.sym, d.sym, t);
    }
}

int NCContext::gen(char kind, int i) const
{
    return 4 * (i - 1) + int(std::string("abcd").find(kind));
}

int NCContext::atom(int i) const
{
    return 4 * n_ + i - 1;
}

NCExpr NCContext::g(char kind, int i, int exp) const
{
    return NCExpr::letter(gen(kind, i), exp);
}

NCExpr NCContext::F(int i, int exp) const
{
    return NCExpr::letter(atom(i), exp);
}

const NCExpr &NCContext::definition(int sym) const
{
    if (!def_[sym])
        throw UnregisteredInverse(names_[sym]);
    return *def_[sym];
}

NCExpr NCContext::inv(const NCExpr &e) const
{
    if (e.terms().size() != 1)
        throw UnregisteredInverse(str(e));
    auto &[w, c] = *e.terms().begin();
    return NCExpr::word(inverse(w), 1 / c);
}

const TensorExpr &NCContext::letters(const Letter &l, const Letter &r)
{
    auto key = std::make_pair(l, r);
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;
    TensorExpr t;
    NCExpr left = NCExpr::letter(l.sym, l.exp), right = NCExpr::letter(r.sym, r.exp);
    if (is_atom(l.sym)) {
        TensorExpr inner_t = bracket(definition(l.sym), right);
        if (l.exp < 0)
            t = inner_t;
        else
            t = inner_t.inner({{l.sym, 1}}, {{l.sym, 1}}).scaled(-1);
    } else if (is_atom(r.sym)) {
        TensorExpr inner_t = bracket(left, definition(r.sym));
        if (r.exp < 0)
            t = inner_t;
        else
            t = inner_t.outer({{r.sym, 1}}, {{r.sym, 1}}).scaled(-1);
    } else if (r.exp < 0) {
        t = letters(l, {r.sym, 1}).outer({{r.sym, -1}}, {{r.sym, -1}}).scaled(-1);
    } else if (l.exp < 0) {
        t = letters({l.sym, 1}, r).inner({{l.sym, -1}}, {{l.sym, -1}}).scaled(-1);
    } else if (auto it = base_.find({l.sym, r.sym}); it != base_.end()) {
        t = it->second;
    }
    return memo_.emplace(key, std::move(t)).first->second;
}

TensorExpr NCContext::words(const Word &u, const Word &v)
{
    TensorExpr out;
    for (size_t j = 0; j < u.size(); ++j) {
        Word pre1(u.begin(), u.begin() + j), post1(u.begin() + j + 1, u.end());
        for (size_t k = 0; k < v.size(); ++k) {
            const TensorExpr &t = letters(u[j], v[k]);
            if (t.is_zero())
                continue;
            Word pre(v.begin(), v.begin() + k), post(v.begin() + k + 1, v.end());
            for (auto &[key, c] : t.terms())
                out.add(cat(pre, key.first, post1), cat(pre1, key.second, post), c);
        }
    }
    return out;
}

TensorExpr NCContext::bracket(const NCExpr &x, const NCExpr &y)
{
    TensorExpr out;
    for (auto &[u, a] : x.terms())
        for (auto &[v, b] : y.terms())
            out = out + words(u, v).scaled(a * b);
    return out;
}

TripleExpr NCContext::bracket_left(const NCExpr &x, const TensorExpr &t)
{
    TripleExpr out;
    for (auto &[k, c] : t.terms()) {
        TensorExpr b = bracket(x, NCExpr::word(k.first));
        for (auto &[kb, cb] : b.terms())
            out.add({kb.first, kb.second, k.second}, c * cb);
    }
    return out;
}

TripleExpr NCContext::jacobi(const NCExpr &x, const NCExpr &y, const NCExpr &z)
{
    return bracket_left(x, bracket(y, z)) + bracket_left(y, bracket(z, x)).cycled() +
           bracket_left(z, bracket(x, y)).cycled().cycled();
}

std::string NCContext::str(const Word &w) const
{
    if (w.empty())
        return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += "*";
        s += names_[w[i].sym];
        if (w[i].exp < 0)
            s += "^-1";
    }
    return s;
}

std::string NCContext::str(const NCExpr &e) const
{
    if (e.is_zero())
        return "0";
    std::string s;
    for (auto &[w, c] : e.terms()) {
        if (!s.empty())
            s += " + ";
        s += c.get_str() + " " + str(w);
    }
    return s;
}

std::string NCContext::str(const TensorExpr &t) const
{
    if (t.is_zero())
        return "0";
    std::string s;
    for (auto &[k, c] : t.terms()) {
        if (!s.empty())
            s += " + ";
        s += c.get_str() + " " + str(k.first) + " (x) " + str(k.second);
    }
    return s;
}

Evaluator::Evaluator(const NCContext &ctx, std::vector<RingValue> gens)
    : ctx_(ctx), gens_(std::move(gens)), d_(gens_.front().dim())
{
}

const RingValue &Evaluator::letter(const Letter &l)
{
    if (auto it = letters_.find(l); it != letters_.end())
        return it->second;
    RingValue v;
    if (ctx_.is_atom(l.sym)) {
        RingValue f = expr(ctx_.definition(l.sym));
        v = l.exp < 0 ? f : f.inv();
    } else {
        v = l.exp < 0 ? gens_[l.sym].inv() : gens_[l.sym];
    }
    return letters_.emplace(l, std::move(v)).first->second;
}

const RingValue &Evaluator::word(const Word &w)
{
    if (auto it = words_.find(w); it != words_.end())
        return it->second;
    RingValue v;
    if (w.empty())
        v = RingValue::one(gens_.front().backend(), d_);
    else if (w.size() == 1)
        v = letter(w[0]);
    else
        v = word(Word(w.begin(), w.end() - 1)) * letter(w.back());
    return words_.emplace(w, std::move(v)).first->second;
}

RingValue Evaluator::expr(const NCExpr &e)
{
    RingValue acc = RingValue::zero(gens_.front().backend(), d_);
    for (auto &[w, c] : e.terms())
        acc += word(w).scaled(c);
    return acc;
}

RingValue Evaluator::tensor(const TensorExpr &t)
{
    Backend b = gens_.front().backend();
    RingValue acc = RingValue::zero(b, d_).kron(RingValue::zero(b, d_));
    for (auto &[k, c] : t.terms())
        acc += word(k.first).kron(word(k.second)).scaled(c);
    return acc;
}

RingValue Evaluator::triple(const TripleExpr &t)
{
    Backend b = gens_.front().backend();
    RingValue z = RingValue::zero(b, d_);
    RingValue acc = z.kron(z).kron(z);
    for (auto &[k, c] : t.terms())
        acc += word(k[0]).kron(word(k[1])).kron(word(k[2])).scaled(c);
    return acc;
}

std::vector<RingValue> random_point(const NCContext &ctx, Sampler &s, int d)
{
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<RingValue> g;
        for (int k = 0; k < 4 * ctx.size(); ++k)
            g.push_back(random_generic(s, d, Backend::Rational));
        Evaluator ev(ctx, g);
        bool ok = true;
        for (int i = 1; i <= ctx.size() && ok; ++i)
            ok = ev.expr(ctx.definition(ctx.atom(i))).is_invertible();
        if (ok)
            return g;
    }
    throw NotInvertible();
}

NetworkWords network_words(const NCContext &ctx)
{
    int n = ctx.size();
    NetworkWords w;
    std::vector<NCExpr> z(n + 1);
    NCExpr acc = NCExpr::one();
    for (int i = 1; i <= n; ++i) {
        z[i] = acc * ctx.g('d', i);
        acc = z[i] * ctx.g('c', i);
    }
    w.Z = acc;
    w.Zinv = ctx.inv(acc);
    w.X.push_back(ctx.g('c', n, -1) * ctx.g('a', 1));
    w.Y.push_back(ctx.g('c', n, -1) * ctx.g('b', 1) * ctx.g('c', 1, -1) * ctx.g('d', 1, -1));
    for (int i = 2; i <= n; ++i) {
        NCExpr zi = z[i - 1], zinv = ctx.inv(z[i - 1]);
        w.X.push_back(zi * ctx.g('a', i) * ctx.g('c', i - 1, -1) * zinv);
        w.Y.push_back(zi * ctx.g('b', i) * ctx.g('c', i, -1) * ctx.g('d', i, -1) * ctx.g('c', i - 1, -1) * zinv);
    }
    return w;
}

NetworkWords moved_network_words(const NCContext &ctx)
{
    int n = ctx.size();
    auto nx = [n](int k) { return (k - 1 + n) % n + 1; };
    auto at = [&](int i) { return ctx.g('d', i) * ctx.g('c', i) * ctx.F(i); };
    auto bt = [&](int i) { return ctx.F(i, -1); };
    auto ct = [&](int i) { return ctx.F(i) * ctx.g('a', i) * ctx.g('d', i); };
    auto dt = [&](int i) { return ctx.g('d', i) * ctx.g('c', i) * ctx.F(i) * ctx.g('b', i) * ctx.g('c', i, -1); };
    std::vector<NCExpr> xi{NCExpr::one()};
    for (int i = 1; i <= n; ++i)
        xi.push_back(xi.back() * at(i) * bt(i));
    NetworkWords w;
    for (int i = 1; i <= n; ++i) {
        NCExpr l = xi[i - 1], r = ctx.inv(xi[i - 1]);
        w.X.push_back(l * ct(nx(i - 1)) * ctx.inv(at(i)) * r);
        w.Y.push_back(l * dt(i) * ctx.inv(at(nx(i + 1))) * ctx.inv(bt(i)) * ctx.inv(at(i)) * r);
    }
    w.Z = xi[n];
    w.Zinv = ctx.inv(xi[n]);
    return w;
}

NCExpr expected_relation(const NetworkWords &w, const std::string &kind, int i, int j)
{
    int n = int(w.X.size());
    auto nx = [n](int k) { return k % n + 1; };
    auto X = [&](int k) { return w.X[k - 1]; };
    auto Y = [&](int k) { return w.Y[k - 1]; };
    auto sh = [&](const NCExpr &v) { return w.Z * v * w.Zinv; };
    NCExpr out;
    if (kind == "YX") {
        if (i == j)
            out = out + Y(i) * X(j);
        if (j == nx(i))
            out = out - (j == 1 ? sh(X(j)) : X(j)) * Y(i);
    } else if (kind == "YY") {
        if (i == nx(j))
            out = out + (i == 1 ? sh(Y(i)) : Y(i)) * Y(j);
        if (j == nx(i))
            out = out - (j == 1 ? sh(Y(j)) : Y(j)) * Y(i);
    }
    return out;
}

namespace {

struct Check {
    std::string id;
    enum { Cyclic, Tensor, Symbolic } kind;
    NCExpr lhs, rhs;
    TensorExpr tl, tr;
    bool symbolic_pass = true;
};

void relation_checks(NCContext &ctx, const NetworkWords &w, const std::string &prefix, std::vector<Check> &out)
{
    int n = ctx.size();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            std::string ij = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            out.push_back({prefix + "<Y,X>" + ij, Check::Cyclic, ctx.induced(w.Y[i - 1], w.X[j - 1]),
                           expected_relation(w, "YX", i, j), {}, {}});
            out.push_back({prefix + "<Y,Y>" + ij, Check::Cyclic, ctx.induced(w.Y[i - 1], w.Y[j - 1]),
                           expected_relation(w, "YY", i, j), {}, {}});
            out.push_back({prefix + "<X,X>" + ij, Check::Cyclic, ctx.induced(w.X[i - 1], w.X[j - 1]), {}, {}, {}});
        }
    out.push_back({prefix + "<X1,YN>", Check::Cyclic, ctx.induced(w.X[0], w.Y[n - 1]),
                   w.X[0] * w.Zinv * w.Y[n - 1] * w.Z, {}, {}});
    if (n >= 3)
        out.push_back({prefix + "<Y1,YN>", Check::Cyclic, ctx.induced(w.Y[0], w.Y[n - 1]),
                       w.Y[0] * w.Zinv * w.Y[n - 1] * w.Z, {}, {}});
}

}

std::vector<RelationResult> bracket_relation_suite(int n, const SuiteOptions &opt)
{
    NCContext ctx(n);
    std::vector<Check> checks;
    mpq_class h(1, 2);
    for (int i = 1; i <= n; ++i) {
        std::string s = std::to_string(i);
        for (char x : {'a', 'b', 'c', 'd'})
            for (char y : {'a', 'b', 'c', 'd'}) {
                Check c{std::string("antisym{{") + x + s + "," + y + s + "}}", Check::Symbolic, {}, {}, {}, {}};
                c.symbolic_pass = ctx.bracket(ctx.g(x, i), ctx.g(y, i)) ==
                                  ctx.bracket(ctx.g(y, i), ctx.g(x, i)).flip().scaled(-1);
                checks.push_back(c);
            }
        auto tensor_of = [](const NCExpr &l, const NCExpr &r, const mpq_class &c) {
            TensorExpr t;
            for (auto &[u, a] : l.terms())
                for (auto &[v, b] : r.terms())
                    t.add(u, v, a * b * c);
            return t;
        };
        NCExpr a = ctx.g('a', i), b = ctx.g('b', i), c = ctx.g('c', i), d = ctx.g('d', i), one = NCExpr::one();
        checks.push_back({"abcd{{b" + s + ",a" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(b, a), tensor_of(b, a, h)});
        checks.push_back({"abcd{{b" + s + ",c" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(b, c), tensor_of(c, b, h)});
        checks.push_back({"abcd{{a" + s + ",d" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(a, d), tensor_of(one, a * d, h)});
        checks.push_back({"abcd{{c" + s + ",d" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(c, d), tensor_of(d * c, one, h)});
        NCExpr at = d * c * ctx.F(i), bt = ctx.F(i, -1), ct = ctx.F(i) * a * d, dt = d * c * ctx.F(i) * b * ctx.g('c', i, -1);
        checks.push_back({"abcd1{{b~" + s + ",a~" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(bt, at), tensor_of(at * bt, one, h)});
        checks.push_back({"abcd1{{a~" + s + ",d~" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(at, dt), tensor_of(at, dt, h)});
        checks.push_back({"abcd1{{b~" + s + ",c~" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(bt, ct), tensor_of(one, bt * ct, h)});
        checks.push_back({"abcd1{{c~" + s + ",d~" + s + "}}", Check::Tensor, {}, {}, ctx.bracket(ct, dt), tensor_of(dt, ct, h)});
    }
    relation_checks(ctx, network_words(ctx), "poi", checks);
    relation_checks(ctx, moved_network_words(ctx), "T.poi", checks);

    std::vector<RelationResult> out;
    for (auto &c : checks)
        out.push_back({c.id, c.symbolic_pass, opt.seed, c.symbolic_pass ? 0.0 : 1.0});
    for (int p = 0; p < opt.points; ++p) {
        std::uint64_t seed = opt.seed + std::uint64_t(p);
        Sampler s(seed);
        Evaluator ev(ctx, random_point(ctx, s, opt.d));
        for (size_t k = 0; k < checks.size(); ++k) {
            const Check &c = checks[k];
            double drift = 0;
            bool ok = true;
            if (c.kind == Check::Cyclic) {
                mpq_class t = ev.trace(c.lhs - c.rhs);
                ok = t == 0;
                drift = std::abs(t.get_d());
            } else if (c.kind == Check::Tensor) {
                RingValue t = ev.tensor(c.tl - c.tr);
                ok = t.is_zero();
                drift = t.norm();
            }
            out[k].max_drift = std::max(out[k].max_drift, drift);
            if (!ok && out[k].pass) {
                out[k].pass = false;
                out[k].witness_seed = seed;
            }
        }
    }
    return out;
}

}
