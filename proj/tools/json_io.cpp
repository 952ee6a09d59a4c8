#include "json_io.hpp"

#include <cstdio>

namespace nclf::cli {

json to_json(const RingValue &v)
{
    std::vector<std::string> e = v.entries();
    if (v.backend() == Backend::Scalar)
        return e.front();
    int d = v.dim();
    json rows = json::array();
    for (int r = 0; r < d; ++r) {
        json row = json::array();
        for (int c = 0; c < d; ++c)
            row.push_back(e[r * d + c]);
        rows.push_back(row);
    }
    return rows;
}

json to_json(const Seq &s)
{
    json out = json::object();
    for (int i : s.indices())
        out[std::to_string(i)] = to_json(s[i]);
    return out;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}
