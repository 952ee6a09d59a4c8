#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"

using namespace nclf;
using namespace nclf::cli;

namespace {

int run(const std::string &args)
{
    std::string cmd = std::string(NCLF_BINARY) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<std::vector<std::string>> csv(const std::string &s)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::istringstream l(line);
        std::string cell;
        while (std::getline(l, cell, ','))
            row.push_back(cell);
        if (!line.empty() && line.back() == ',')
            row.push_back("");
        rows.push_back(row);
    }
    return rows;
}

RunConfig sim(Backend b, std::uint64_t seed)
{
    RunConfig c;
    c.backend = b;
    c.d = 2;
    c.N = 5;
    c.steps = 4;
    c.seed = seed;
    return c;
}

}

TEST(Cli, SimulateRationalResidualsZero)
{
    std::ostringstream os;
    ASSERT_EQ(cmd_simulate(sim(Backend::Rational, 7), os), Ok);
    auto rows = csv(os.str());
    ASSERT_EQ(rows.size(), 5u);
    for (size_t r = 1; r < rows.size(); r++)
        for (size_t k = 1; k < rows[r].size(); k++)
            if (!rows[r][k].empty())
                EXPECT_EQ(std::stod(rows[r][k]), 0.0) << rows[0][k] << " step " << rows[r][0];
}

TEST(Cli, SimulateWindowed)
{
    RunConfig c = sim(Backend::Rational, 3);
    c.mode = Mode::Windowed;
    c.N = 6;
    std::ostringstream os;
    ASSERT_EQ(cmd_simulate(c, os), Ok);
    auto rows = csv(os.str());
    EXPECT_EQ(rows[0][2], "ab_route");
    EXPECT_EQ(std::stod(rows[1][2]), 0.0);
}

TEST(Cli, SimulateFloatFirstStep)
{
    std::ostringstream os;
    ASSERT_EQ(cmd_simulate(sim(Backend::Float, 7), os), Ok);
    auto rows = csv(os.str());
    for (size_t k = 1; k < rows[1].size(); k++)
        if (!rows[1][k].empty())
            EXPECT_LE(std::stod(rows[1][k]), 1e-10) << rows[0][k];
}

TEST(Cli, Deterministic)
{
    std::ostringstream a, b;
    cmd_simulate(sim(Backend::Rational, 11), a);
    cmd_simulate(sim(Backend::Rational, 11), b);
    EXPECT_EQ(a.str(), b.str());

    RunConfig c;
    c.seed = 5;
    c.N = 2;
    c.steps = 2;
    std::ostringstream x, y;
    EXPECT_EQ(cmd_invariants(c, x), Ok);
    cmd_invariants(c, y);
    EXPECT_EQ(x.str(), y.str());
}

TEST(Cli, BadConfigThrows)
{
    RunConfig c = sim(Backend::Rational, 1);
    c.N = 1;
    std::ostringstream os;
    EXPECT_THROW(cmd_simulate(c, os), BadConfig);
    RunConfig f = sim(Backend::Float, 1);
    EXPECT_THROW(cmd_invariants(f, os), BadConfig);
    RunConfig b;
    b.N = 5;
    EXPECT_THROW(cmd_brackets(b, os), BadConfig);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("simulate --seed 7 --steps 2"), 0);
    EXPECT_EQ(run("simulate --seed 7 --N 1"), 2);
    EXPECT_EQ(run("simulate --N 5"), 2);
    EXPECT_EQ(run("simulate --seed 1 --backend complex"), 2);
    EXPECT_EQ(run("brackets --seed 1 --N 5"), 2);
    EXPECT_EQ(run("biortho --seed 1 --n 2"), 0);
    EXPECT_EQ(run("invariants --seed 1 --N 2 --steps 2"), 0);
    EXPECT_EQ(run("frobnicate --seed 1"), 2);
}
