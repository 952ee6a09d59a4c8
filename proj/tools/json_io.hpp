#pragma once

#include <json.hpp>

#include <nclf/algebra.hpp>
#include <nclf/leapfrog.hpp>

namespace nclf::cli {

using json = nlohmann::ordered_json;

json to_json(const RingValue &v);
json to_json(const Seq &s);
std::string fmt(double x);

}
