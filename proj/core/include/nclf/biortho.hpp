#pragma once

#include <map>
#include <string>
#include <vector>

#include "quasidet.hpp"

namespace nclf {

class MomentWindow {
public:
    MomentWindow(int kmin, std::vector<RingValue> m) : kmin_(kmin), m_(std::move(m)) {}
    int kmin() const { return kmin_; }
    int kmax() const { return kmin_ + int(m_.size()) - 1; }
    const RingValue &operator[](int k) const;
    Backend backend() const { return m_.front().backend(); }
    int dim() const { return m_.front().dim(); }

private:
    int kmin_;
    std::vector<RingValue> m_;
};

MomentWindow random_moments(Sampler &s, Backend b, int d, int kmin, int kmax);

class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(int e, const RingValue &c);

    const std::map<int, RingValue> &coeffs() const { return c_; }
    RingValue coeff(int e) const;
    void set(int e, const RingValue &c) { c_.insert_or_assign(e, c); }
    int min_power() const { return c_.begin()->first; }
    int max_power() const { return c_.rbegin()->first; }

    LaurentPoly operator+(const LaurentPoly &o) const;
    LaurentPoly operator-(const LaurentPoly &o) const;
    LaurentPoly operator*(const RingValue &x) const;
    LaurentPoly shift(int s) const;
    bool is_zero() const;
    double norm() const;

private:
    std::map<int, RingValue> c_;
};

// sum a_i m_{i-j+k} b_j^*
RingValue inner_product(const LaurentPoly &f, const LaurentPoly &g, int k, const MomentWindow &m);
// same pairing with the second argument already starred
RingValue pair_starred(const LaurentPoly &f, const LaurentPoly &gstar, int k, const MomentWindow &m);

// Memoised families over one moment window.
class Biortho {
public:
    explicit Biortho(const MomentWindow &m) : m_(m) {}
    const MomentWindow &moments() const { return m_; }

    QMatrix toeplitz(int k, int size) const;
    const LaurentPoly &P(int k, int n);
    const LaurentPoly &Qstar(int k, int n);
    LaurentPoly P_by_quasidet(int k, int n) const;
    LaurentPoly Qstar_by_quasidet(int k, int n) const;
    const RingValue &H(int k, int n);
    RingValue phi(int k, int n);
    RingValue psi(int k, int n);
    RingValue xi(int k, int n);
    RingValue zeta(int k, int n);

private:
    const RingValue &corner(int k, int n);
    RingValue qd(int k, int n, int i, int j) const;

    const MomentWindow &m_;
    std::map<std::pair<int, int>, LaurentPoly> p_, q_;
    std::map<std::pair<int, int>, RingValue> h_, c_;
};

struct BiorthoSystem {
    int k;
    std::vector<LaurentPoly> P, Qstar;
    std::vector<RingValue> H, phi, psi, xi;
};

BiorthoSystem build_family(const MomentWindow &m, int k, int n_max);
// entry (n, m) is <P_n, Q_m>_k - H_n delta_{nm}
QMatrix orthogonality_defect(Biortho &b, int k, int n_max);

LaurentPoly christoffel_residual(Biortho &b, int k, int n);
LaurentPoly geronimus_residual(Biortho &b, int k, int n);
LaurentPoly recurrence_residual(Biortho &b, int k, int n);
std::pair<RingValue, RingValue> discrete_toda_residual(Biortho &b, int k, int i);
std::pair<RingValue, RingValue> leapfrog_correspondence(Biortho &b, int k, int i);

enum class Flow { Negative, Positive };

// m_k(t) = U V^k exp(t V^{-1}) W (negative) or U V^k exp(t V) W (positive)
struct FlowModel {
    Eigen::MatrixXd U, V, W;
};

FlowModel rotation_flow_model(Sampler &s, int d, int blocks);
// max norm of psi_n, xi_n at shift 0 over n <= n_max + 1
double flow_family_bound(const FlowModel &f, double t, Flow flow, int n_max);
// redraws until both flows stay below bound at t
FlowModel admissible_flow_model(Sampler &s, int d, int blocks, double t, int n_max, double bound = 10);
MomentWindow flow_moments(const FlowModel &f, double t, Flow flow, int kmin, int kmax);

// Residual norms per family ("qstar", "xi", "psi", and "tw" for the negative flow),
// each aggregated over n = 1..n_max.
using FlowResidual = std::map<std::string, double>;

FlowResidual negative_flow_residual(const FlowModel &f, double t, double h, int n_max);
FlowResidual positive_flow_residual(const FlowModel &f, double t, double h, int n_max);
// central difference of m_k against m_{k-1} (negative) or m_{k+1} (positive), max over k in [-2, 2]
double moment_derivative_residual(const FlowModel &f, double t, double h, Flow flow);

struct FlowOrder {
    FlowResidual coarse, fine;
    // log10(coarse / fine) per family
    FlowResidual slope;
};

FlowOrder flow_convergence(const FlowModel &f, Flow flow, double t, double h1, double h2, int n_max);

}
