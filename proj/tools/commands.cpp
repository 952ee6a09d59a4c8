#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nclf/biortho.hpp>
#include <nclf/errors.hpp>
#include <nclf/ncnet.hpp>
#include <nclf/network.hpp>

#include "json_io.hpp"

namespace nclf::cli {

namespace {

json config_json(const RunConfig &c)
{
    json j;
    j["backend"] = to_string(c.backend);
    j["d"] = c.d;
    j["N"] = c.N;
    j["mode"] = c.mode == Mode::Periodic ? "periodic" : "windowed";
    j["W"] = c.W;
    j["seed"] = c.seed;
    j["steps"] = c.steps;
    return j;
}

void require(bool ok, const std::string &msg)
{
    if (!ok)
        throw BadConfig(msg);
}

void check_dim(const RunConfig &c)
{
    require(c.d >= 1 && c.d <= 8, "--d must be between 1 and 8");
    require(c.backend != Backend::Scalar || c.d == 1, "--d must be 1 for the scalar backend");
}

double seq_diff(const Seq &a, const Seq &b)
{
    double m = 0;
    for (int i : a.indices())
        if (b.has(i))
            m = std::max(m, (a[i] - b[i]).norm());
    return m;
}

std::ostream &open_out(const std::string &path, std::ofstream &f, std::ostream &fallback)
{
    if (path.empty())
        return fallback;
    f.open(path, std::ios::binary);
    if (!f)
        throw BadConfig("--out: cannot open " + path);
    return f;
}

}

int cmd_simulate(const RunConfig &c, std::ostream &os)
{
    check_dim(c);
    require(c.N >= 3, "--N must be at least 3: the map needs v_{i-1}, v_i, v_{i+1} distinct");
    require(c.steps >= 0, "--steps must be non-negative");
    require(c.W >= 0, "--W must be non-negative");

    Sampler s(c.seed);
    LeapfrogState st = random_state(s, c.backend, c.d, c.N, c.mode, c.W + c.steps + 1);
    bool windowed = c.mode == Mode::Windowed;
    Scalings scal;
    if (windowed)
        scal = initial_scalings(st);
    json traj = json::array();
    std::string csv = "step,pq_route,ab_route,eq_k,lax_spatial,lax_temporal\n";
    int step = 0;
    try {
        for (; step < c.steps; ++step) {
            PQCoords pq = pq_from_vertices(st);
            LeapfrogState next = step_vertices(st, pq);
            double r_pq = seq_diff(step_pq(pq).p, pq_from_vertices(next).p);
            r_pq = std::max(r_pq, seq_diff(step_pq(pq).q, pq_from_vertices(next).q));
            std::string r_ab;
            if (windowed) {
                ABCoords ab = ab_with_scalings(st, scal);
                Scalings nscal = step_scalings(st, scal, next);
                ABCoords ab_next = ab_with_scalings(next, nscal);
                ABCoords ab_step = step_ab(ab);
                r_ab = fmt(std::max(seq_diff(ab_step.a, ab_next.a), seq_diff(ab_step.b, ab_next.b)));
                scal = std::move(nscal);
            }
            double r_k = 0;
            for (int i : active(st.v, 1, 1))
                r_k = std::max(r_k, eq_k_residual(st, next, i).norm());
            double r_sp = 0, r_tm = 0;
            for (auto &[i, r] : lax_residual(pq, st, CentralScalar{1})) {
                r_sp = std::max(r_sp, r.spatial.norm());
                r_tm = std::max(r_tm, r.temporal.norm());
            }
            traj.push_back({{"step", step}, {"v_minus", to_json(st.v_minus)}, {"v", to_json(st.v)}});
            csv += std::to_string(step) + "," + fmt(r_pq) + "," + r_ab + "," + fmt(r_k) + "," + fmt(r_sp) + "," +
                   fmt(r_tm) + "\n";
            st = std::move(next);
        }
    } catch (const Error &e) {
        std::cerr << "degenerate at step " << step << ": " << e.what() << "\n";
        return Degenerate;
    }
    traj.push_back({{"step", step}, {"v_minus", to_json(st.v_minus)}, {"v", to_json(st.v)}});

    if (c.out.empty()) {
        os << csv;
        return Ok;
    }
    std::filesystem::create_directories(c.out);
    std::ofstream(std::filesystem::path(c.out) / "residuals.csv", std::ios::binary) << csv;
    json doc;
    doc["config"] = config_json(c);
    doc["states"] = traj;
    std::ofstream(std::filesystem::path(c.out) / "trajectory.json", std::ios::binary) << doc.dump(1) << "\n";
    return Ok;
}

int cmd_invariants(const RunConfig &c, std::ostream &os)
{
    check_dim(c);
    require(c.backend != Backend::Float, "--backend must be rational or scalar: invariants are compared exactly");
    require(c.N >= 1, "--N must be positive");
    require(c.steps >= 0, "--steps must be non-negative");

    Sampler s(c.seed);
    XYWeights xy = xy_weights(random_weights(s, c.backend, c.d, c.N));
    std::ofstream f;
    std::ostream &o = open_out(c.out, f, os);
    o << "step,i,j,value,drift\n";
    auto t0 = spectral_invariants(xy, 2 * c.N);
    bool drifted = false;
    int step = 0;
    try {
        for (; step <= c.steps; ++step) {
            auto t = step == 0 ? t0 : spectral_invariants(xy, 2 * c.N);
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = 0; j < t[i].size(); ++j) {
                    mpq_class base = j < t0[i].size() ? t0[i][j] : mpq_class(0);
                    mpq_class drift = t[i][j] - base;
                    drifted |= drift != 0;
                    o << step << "," << i + 1 << "," << j << "," << t[i][j].get_str() << "," << drift.get_str() << "\n";
                }
            if (step < c.steps)
                xy = step_xy(xy);
        }
    } catch (const Error &e) {
        std::cerr << "degenerate at step " << step + 1 << ": " << e.what() << "\n";
        return Degenerate;
    }
    return drifted ? CheckFailed : Ok;
}

namespace {

json check_entry(const std::string &id, bool pass, double residual)
{
    return {{"id", id}, {"status", pass ? "pass" : "fail"}, {"max_residual", fmt(residual)}};
}

int exact_biortho(const RunConfig &c, json &checks)
{
    int span = 2 * c.n_max + 6;
    Sampler s(c.seed);
    MomentWindow m = random_moments(s, c.backend, c.d, c.k - span, c.k + span);
    Biortho b(m);
    bool all = true;
    auto add = [&](const std::string &id, bool pass, double r) {
        all &= pass;
        checks.push_back(check_entry(id, pass, r));
    };
    QMatrix od = orthogonality_defect(b, c.k, c.n_max);
    add("orthogonality", od.is_zero(), od.norm());
    for (int n = 0; n <= std::min(c.n_max, 3); ++n) {
        LaurentPoly dp = b.P_by_quasidet(c.k, n) - b.P(c.k, n);
        add("P_quasidet(n=" + std::to_string(n) + ")", dp.is_zero(), dp.norm());
        LaurentPoly dq = b.Qstar_by_quasidet(c.k, n) - b.Qstar(c.k, n);
        add("Qstar_quasidet(n=" + std::to_string(n) + ")", dq.is_zero(), dq.norm());
    }
    for (int n = 0; n <= c.n_max; ++n) {
        std::string tag = "(n=" + std::to_string(n) + ")";
        LaurentPoly ct = christoffel_residual(b, c.k, n);
        add("christoffel" + tag, ct.is_zero(), ct.norm());
        LaurentPoly gt = geronimus_residual(b, c.k, n);
        add("geronimus" + tag, gt.is_zero(), gt.norm());
        LaurentPoly rr = recurrence_residual(b, c.k, n);
        add("recurrence" + tag, rr.is_zero(), rr.norm());
        auto [t1, t2] = discrete_toda_residual(b, c.k, n);
        add("toda" + tag, t1.is_zero() && t2.is_zero(), std::max(t1.norm(), t2.norm()));
        if (n >= 1) {
            auto [la, lb] = leapfrog_correspondence(b, c.k, n);
            add("correspondence" + tag, la.is_zero() && lb.is_zero(), std::max(la.norm(), lb.norm()));
        }
    }
    return all ? Ok : CheckFailed;
}

int flow_biortho(const RunConfig &c, json &checks)
{
    Sampler s(c.seed);
    const double t = 0.3;
    FlowModel f = admissible_flow_model(s, c.d, 6, t, c.n_max);
    bool all = true;
    for (Flow fl : {Flow::Negative, Flow::Positive}) {
        std::string name = fl == Flow::Negative ? "negative" : "positive";
        FlowOrder o = flow_convergence(f, fl, t, 1e-2, 1e-3, c.n_max);
        for (auto &[fam, slope] : o.slope) {
            bool pass = std::abs(slope - 2.0) <= 0.3;
            all &= pass;
            checks.push_back({{"id", name + "." + fam},
                              {"status", pass ? "pass" : "fail"},
                              {"residual_coarse", fmt(o.coarse.at(fam))},
                              {"residual_fine", fmt(o.fine.at(fam))},
                              {"order", fmt(slope)}});
        }
    }
    return all ? Ok : CheckFailed;
}

}

int cmd_biortho(const RunConfig &c, std::ostream &os)
{
    check_dim(c);
    require(c.n_max >= 0 && c.n_max <= 8, "--n must be between 0 and 8");
    if (c.backend == Backend::Float)
        require(c.n_max >= 1 && c.n_max <= 3, "--n must be between 1 and 3 for the flows");
    if (c.suite != "all" && c.suite != "exact" && c.suite != "flows")
        throw BadConfig("--suite must be all, exact or flows");
    json checks = json::array();
    int rc = Ok;
    try {
        if (c.backend == Backend::Float) {
            if (c.suite != "exact")
                rc = flow_biortho(c, checks);
        } else if (c.suite != "flows") {
            rc = exact_biortho(c, checks);
        }
    } catch (const Error &e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return Degenerate;
    }
    json doc;
    doc["config"] = {{"backend", to_string(c.backend)}, {"d", c.d}, {"seed", c.seed}, {"k", c.k}, {"n", c.n_max}};
    doc["checks"] = checks;
    std::ofstream f;
    open_out(c.out, f, os) << doc.dump(1) << "\n";
    return rc;
}

int cmd_brackets(const RunConfig &c, std::ostream &os)
{
    require(c.N >= 2 && c.N <= 4, "--N must be between 2 and 4");
    require(c.backend == Backend::Rational, "--backend must be rational: relations are compared exactly");
    require(c.d >= 1 && c.d <= 4, "--d must be between 1 and 4");
    require(c.points >= 1, "--points must be positive");
    auto res = bracket_relation_suite(c.N, {c.points, c.d, c.seed});
    json rel = json::array();
    bool all = true;
    for (auto &r : res) {
        all &= r.pass;
        rel.push_back({{"id", r.id},
                       {"status", r.pass ? "pass" : "fail"},
                       {"witness_seed", r.witness_seed},
                       {"max_drift", fmt(r.max_drift)}});
    }
    json doc;
    doc["config"] = {{"N", c.N}, {"d", c.d}, {"points", c.points}, {"seed", c.seed}};
    doc["relations"] = rel;
    std::ofstream f;
    open_out(c.out, f, os) << doc.dump(1) << "\n";
    return all ? Ok : CheckFailed;
}

}
