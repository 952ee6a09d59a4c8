#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <nclf/algebra.hpp>
#include <nclf/leapfrog.hpp>

namespace nclf::cli {

enum Exit { Ok = 0, CheckFailed = 1, ConfigError = 2, Degenerate = 3 };

struct RunConfig {
    Backend backend = Backend::Rational;
    int d = 2;
    int N = 5;
    Mode mode = Mode::Periodic;
    int W = 4;
    std::uint64_t seed = 0;
    int steps = 10;
    int n_max = 5;
    int k = 1;
    int points = 20;
    std::string suite = "all";
    std::string out;
};

struct BadConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int cmd_simulate(const RunConfig &c, std::ostream &os);
int cmd_invariants(const RunConfig &c, std::ostream &os);
int cmd_biortho(const RunConfig &c, std::ostream &os);
int cmd_brackets(const RunConfig &c, std::ostream &os);

}
