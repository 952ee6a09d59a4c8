#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace nclf {

struct Letter {
    int sym;
    int exp;
    auto operator<=>(const Letter &) const = default;
};

using Word = std::vector<Letter>;

// cancels adjacent g g^-1 pairs
Word reduce(Word w);
Word inverse(const Word &w);

class NCExpr {
public:
    NCExpr() = default;
    static NCExpr one();
    static NCExpr word(Word w, const mpq_class &c = 1);
    static NCExpr letter(int sym, int exp = 1);

    const std::map<Word, mpq_class> &terms() const { return t_; }
    void add(const Word &w, const mpq_class &c);

    NCExpr operator+(const NCExpr &o) const;
    NCExpr operator-(const NCExpr &o) const;
    NCExpr operator*(const NCExpr &o) const;
    NCExpr scaled(const mpq_class &c) const;
    bool is_zero() const { return t_.empty(); }
    bool operator==(const NCExpr &o) const { return t_ == o.t_; }

private:
    std::map<Word, mpq_class> t_;
};

using TensorKey = std::pair<Word, Word>;

class TensorExpr {
public:
    const std::map<TensorKey, mpq_class> &terms() const { return t_; }
    void add(const Word &u, const Word &v, const mpq_class &c);
    TensorExpr operator+(const TensorExpr &o) const;
    TensorExpr operator-(const TensorExpr &o) const;
    TensorExpr scaled(const mpq_class &c) const;
    // u (x) v -> v (x) u
    TensorExpr flip() const;
    // (l (x) 1) t (1 (x) r) on the outer bimodule structure
    TensorExpr outer(const Word &l, const Word &r) const;
    // (1 (x) l) t (r (x) 1)
    TensorExpr inner(const Word &l, const Word &r) const;
    bool is_zero() const { return t_.empty(); }
    bool operator==(const TensorExpr &o) const { return t_ == o.t_; }

private:
    std::map<TensorKey, mpq_class> t_;
};

using TripleKey = std::array<Word, 3>;

class TripleExpr {
public:
    const std::map<TripleKey, mpq_class> &terms() const { return t_; }
    void add(const TripleKey &k, const mpq_class &c);
    TripleExpr operator+(const TripleExpr &o) const;
    // x (x) y (x) z -> z (x) x (x) y
    TripleExpr cycled() const;
    bool is_zero() const { return t_.empty(); }

private:
    std::map<TripleKey, mpq_class> t_;
};

NCExpr multiply(const TensorExpr &t);
NCExpr natural_form(const NCExpr &e);
NCExpr tensor_left(const NCExpr &x, const TensorExpr &t);

// Free algebra on a_i, b_i, c_i, d_i (i = 1..N) with atoms F_i = f_i^-1, f_i = b_i + a_i d_i c_i.
// The letter F_i^-1 stands for f_i itself, so the moved weights stay monomial.
class NCContext {
public:
    explicit NCContext(int n);

    int size() const { return n_; }
    int symbols() const { return int(names_.size()); }
    int gen(char kind, int i) const;
    int atom(int i) const;
    NCExpr g(char kind, int i, int exp = 1) const;
    NCExpr F(int i, int exp = 1) const;
    bool is_atom(int sym) const { return def_[sym] != nullptr; }
    const NCExpr &definition(int sym) const;
    const std::string &name(int sym) const { return names_[sym]; }

    // inverse of a single-term expression
    NCExpr inv(const NCExpr &e) const;

    TensorExpr bracket(const NCExpr &x, const NCExpr &y);
    NCExpr induced(const NCExpr &x, const NCExpr &y) { return multiply(bracket(x, y)); }
    TripleExpr bracket_left(const NCExpr &x, const TensorExpr &t);
    TripleExpr jacobi(const NCExpr &x, const NCExpr &y, const NCExpr &z);

    std::string str(const Word &w) const;
    std::string str(const NCExpr &e) const;
    std::string str(const TensorExpr &t) const;

private:
    const TensorExpr &letters(const Letter &l, const Letter &r);
    TensorExpr words(const Word &u, const Word &v);

    int n_;
    std::vector<std::string> names_;
    std::vector<std::unique_ptr<NCExpr>> def_;
    std::map<std::pair<int, int>, TensorExpr> base_;
    std::map<std::pair<Letter, Letter>, TensorExpr> memo_;
};

class Evaluator {
public:
    Evaluator(const NCContext &ctx, std::vector<RingValue> gens);

    const RingValue &letter(const Letter &l);
    const RingValue &word(const Word &w);
    RingValue expr(const NCExpr &e);
    RingValue tensor(const TensorExpr &t);
    RingValue triple(const TripleExpr &t);
    mpq_class trace(const NCExpr &e) { return expr(e).trace(); }

private:
    const NCContext &ctx_;
    std::vector<RingValue> gens_;
    std::map<Letter, RingValue> letters_;
    std::map<Word, RingValue> words_;
    int d_;
};

// generic rational d x d point with every generator and every f_i invertible
std::vector<RingValue> random_point(const NCContext &ctx, Sampler &s, int d);

struct NetworkWords {
    std::vector<NCExpr> X, Y;
    NCExpr Z, Zinv;
};

// gauge-fixed weights of the cylinder network, before and after the square moves
NetworkWords network_words(const NCContext &ctx);
NetworkWords moved_network_words(const NCContext &ctx);

// right-hand sides of the H0-Poisson relations: kind is "YX", "YY" or "XX", indices 1-based
NCExpr expected_relation(const NetworkWords &w, const std::string &kind, int i, int j);

struct RelationResult {
    std::string id;
    bool pass;
    // first failing point, or the suite seed
    std::uint64_t witness_seed;
    double max_drift;
};

struct SuiteOptions {
    int points = 20;
    int d = 3;
    std::uint64_t seed = 1;
};

std::vector<RelationResult> bracket_relation_suite(int n, const SuiteOptions &opt);

}
