#include <iostream>

#include <CLI11.hpp>

#include <nclf/errors.hpp>

#include "commands.hpp"

using namespace nclf::cli;

namespace {

void common(CLI::App *sub, RunConfig &c, std::string &backend)
{
    sub->add_option("--backend", backend, "rational | float | scalar")->check(CLI::IsMember({"rational", "float", "scalar"}));
    sub->add_option("--d", c.d, "matrix size of the ring model");
    sub->add_option("--N", c.N, "period or core size");
    sub->add_option("--seed", c.seed, "random seed")->required();
    sub->add_option("--steps", c.steps, "number of steps");
    sub->add_option("--out", c.out, "output path");
}

}

int main(int argc, char **argv)
{
    CLI::App app{"non-commutative leapfrog map toolkit"};
    app.require_subcommand(1);
    RunConfig c;
    std::string backend = "rational", mode = "periodic";

    auto *sim = app.add_subcommand("simulate", "run a trajectory and report residuals per step");
    common(sim, c, backend);
    sim->add_option("--mode", mode, "periodic | windowed")->check(CLI::IsMember({"periodic", "windowed"}));
    sim->add_option("--W", c.W, "window half-width beyond the core");

    auto *inv = app.add_subcommand("invariants", "track the spectral invariants t_ij under step_xy");
    common(inv, c, backend);

    auto *bio = app.add_subcommand("biortho", "bi-orthogonal polynomial suites");
    common(bio, c, backend);
    bio->add_option("--n", c.n_max, "largest polynomial degree");
    bio->add_option("--k", c.k, "moment shift");
    bio->add_option("--suite", c.suite, "all | exact | flows");

    auto *br = app.add_subcommand("brackets", "double bracket relation suite");
    common(br, c, backend);
    br->add_option("--points", c.points, "evaluation points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n";
        return ConfigError;
    }

    c.backend = nclf::parse_backend(backend);
    c.mode = mode == "windowed" ? nclf::Mode::Windowed : nclf::Mode::Periodic;
    CLI::App *active = app.get_subcommands().front();
    if (active->count("--d") == 0)
        c.d = active == br ? 3 : c.backend == nclf::Backend::Scalar ? 1 : 2;
    if (active->count("--N") == 0)
        c.N = active == br ? 2 : active == inv ? 3 : 5;
    if (active == bio && c.backend == nclf::Backend::Float && bio->count("--n") == 0)
        c.n_max = 3;

    try {
        if (*sim)
            return cmd_simulate(c, std::cout);
        if (*inv)
            return cmd_invariants(c, std::cout);
        if (*bio)
            return cmd_biortho(c, std::cout);
        return cmd_brackets(c, std::cout);
    } catch (const nclf::cli::BadConfig &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ConfigError;
    } catch (const nclf::Error &e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return Degenerate;
    }
}
