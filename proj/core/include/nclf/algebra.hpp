#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace nclf {

enum class Backend { Rational, Float, Scalar };

std::string to_string(Backend b);
Backend parse_backend(const std::string &s);

// Integer numerators over one positive denominator, kept in lowest terms.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols);
    static RatMatrix identity(int n);
    static RatMatrix from_entries(int rows, int cols, const std::vector<mpq_class> &e);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpq_class operator()(int r, int c) const;
    const mpz_class &num(int r, int c) const { return n_[r * cols_ + c]; }
    const mpz_class &den() const { return d_; }

    RatMatrix operator+(const RatMatrix &o) const;
    RatMatrix operator-(const RatMatrix &o) const;
    RatMatrix operator*(const RatMatrix &o) const;
    RatMatrix operator-() const;
    RatMatrix scaled(const mpq_class &c) const;
    bool operator==(const RatMatrix &o) const;

    bool is_zero() const;
    RatMatrix transpose() const;
    int rank() const;
    bool invertible() const;
    mpq_class det() const;
    std::optional<RatMatrix> inverse() const;
    RatMatrix kron(const RatMatrix &o) const;
    mpq_class trace() const;
    Eigen::MatrixXd to_double() const;

private:
    void normalize();
    mpz_class int_det() const;

    int rows_ = 0, cols_ = 0;
    std::vector<mpz_class> n_;
    mpz_class d_ = 1;
};

// An element of one concrete model of the skew field.
class RingValue {
public:
    RingValue() : v_(mpq_class(0)) {}
    explicit RingValue(RatMatrix m);
    explicit RingValue(Eigen::MatrixXd m);
    explicit RingValue(mpq_class x);

    static RingValue zero(Backend b, int d);
    static RingValue one(Backend b, int d);
    static RingValue constant(const mpq_class &c, Backend b, int d);

    Backend backend() const;
    int dim() const;
    bool same_space(const RingValue &o) const;

    const RatMatrix &rat() const { return std::get<RatMatrix>(v_); }
    const Eigen::MatrixXd &flt() const { return std::get<Eigen::MatrixXd>(v_); }
    const mpq_class &sca() const { return std::get<mpq_class>(v_); }

    RingValue operator+(const RingValue &o) const;
    RingValue operator-(const RingValue &o) const;
    RingValue operator*(const RingValue &o) const;
    RingValue operator-() const;
    RingValue &operator+=(const RingValue &o) { return *this = *this + o; }
    RingValue &operator-=(const RingValue &o) { return *this = *this - o; }
    RingValue &operator*=(const RingValue &o) { return *this = *this * o; }
    RingValue scaled(const mpq_class &c) const;

    // exact comparison; float values compare entrywise
    bool operator==(const RingValue &o) const;
    bool operator!=(const RingValue &o) const { return !(*this == o); }
    bool is_zero() const;
    bool is_invertible() const;
    RingValue inv() const;
    std::optional<RingValue> try_inv() const;
    RingValue star() const;

    double norm() const;
    mpq_class trace() const;
    double trace_double() const;
    RingValue kron(const RingValue &o) const;
    std::vector<std::string> entries() const;
    std::string str() const;

private:
    std::variant<RatMatrix, Eigen::MatrixXd, mpq_class> v_;
};

RingValue ring_inv(const RingValue &a);
RingValue ring_star(const RingValue &a);

// c * one, multiplied in from either side.
struct CentralScalar {
    mpq_class c;
    RingValue promote(Backend b, int d) const { return RingValue::constant(c, b, d); }
};

RingValue operator*(const CentralScalar &c, const RingValue &a);
RingValue operator*(const RingValue &a, const CentralScalar &c);

constexpr double float_rcond_threshold = 1e-10;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    double uniform01();
    mpq_class small_rational();
    std::uint64_t next() { return rng_(); }

private:
    std::mt19937_64 rng_;
};

RingValue random_generic(Sampler &s, int d, Backend b, bool invertible = true);
RingValue random_generic(std::uint64_t seed, int d, Backend b, bool invertible = true);

}
